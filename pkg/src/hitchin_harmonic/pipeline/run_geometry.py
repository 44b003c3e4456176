#!/usr/bin/env python3
"""
Geometry self-test: calibration and inequality suites for Y_d and ℍ².

Checks:
1. Curvature calibration of root planes (closed form and sampled)
2. Ptolemy, quadrilateral and parallelogram inequalities on random quadruples
3. Separation table ε(Y_k) for k = 2..max(d, 5)
4. Cross-ratio normalisation on ℍ²
5. Busemann functions: Iwasawa route against the truncated limit
"""

import logging
from typing import Any, Dict, List

import numpy as np
from scipy.stats import special_ortho_group

from ..shared.config import RunConfig
from ..shared.export import ReportWriter
from ..shared.validation import ValidationResult, summarize, timed
from ..hyp2.plane import cross_ratio, INF
from ..spd.geometry import SpdPoint, sampled_curvature, sectional_curvature
from ..spd.busemann import IdealPoint, busemann, busemann_truncated
from ..spd.inequalities import parallelogram_check, ptolemy_check, quad_cr_bound_check
from ..spd.weyl import separation

# Configure logging
logger = logging.getLogger(__name__)

CROSS_RATIO_SAMPLES = 1000


class GeometrySelfTest:
    """Runs the geometry validation suite for one configuration."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.d = config.d
        self.tol = config.tolerances

    def _root_plane(self, d: int):
        a = np.zeros((d, d))
        a[0, 1] = a[1, 0] = 1.0
        b = np.zeros((d, d))
        b[0, 0], b[1, 1] = 1.0, -1.0
        return a, b

    def check_curvature(self) -> ValidationResult:
        a, b = self._root_plane(self.d)
        exact = sectional_curvature(a, b)
        sampled = sampled_curvature(SpdPoint.random(self.d, self.config.rng("curvature")), a, b)
        errors = []
        if abs(exact + 1.0) > 1e-12:
            errors.append(f"root-plane curvature {exact} differs from −1")
        if abs(sampled - exact) > 1e-2:
            errors.append(f"sampled curvature {sampled} differs from {exact}")
        return ValidationResult("curvature_calibration", not errors,
                                {"closed_form": exact, "sampled": sampled}, errors)

    def check_inequalities(self) -> ValidationResult:
        rng = self.config.rng("inequalities")
        slack = self.tol.inequality_slack
        worst = {"ptolemy": -np.inf, "quadrilateral": -np.inf, "parallelogram": -np.inf}
        count = self.config.pair_samples
        for _ in range(count):
            q = [SpdPoint.random(self.d, rng, scale=rng.uniform(0.1, 2.0)) for _ in range(4)]
            for name, check in (("ptolemy", ptolemy_check), ("quadrilateral", quad_cr_bound_check),
                                ("parallelogram", parallelogram_check)):
                lhs, rhs = check(q)
                worst[name] = max(worst[name], (lhs - rhs) / max(1.0, abs(rhs)))
        errors = [f"{name} violated by {excess:.3e}" for name, excess in worst.items() if excess > slack]
        return ValidationResult("four_point_inequalities", not errors,
                                {"samples": count, "max_excess": worst}, errors)

    def separation_table(self) -> ValidationResult:
        table = {}
        errors = []
        for k in range(2, max(self.d, 5) + 1):
            value = separation(k, range(1, k), tol=self.tol.separation_tol)
            table[str(k)] = value
            if abs(value - 1.0 / (k - 1)) > 1e-6:
                errors.append(f"ε(Y_{k}) = {value} differs from 1/{k - 1}")
        return ValidationResult("separation_table", not errors, {"separation": table}, errors)

    def check_cross_ratio(self) -> ValidationResult:
        rng = self.config.rng("cross_ratio")
        xs = rng.uniform(-50.0, 50.0, CROSS_RATIO_SAMPLES)
        xs = xs[(np.abs(xs) > 1e-6) & (np.abs(xs - 1.0) > 1e-6)]
        err = max(abs(cross_ratio((x, 0.0, 1.0, INF)) - x) / max(1.0, abs(x)) for x in xs)
        passed = err <= 1e-12
        return ValidationResult("cross_ratio_normalisation", passed, {"samples": int(xs.size), "max_error": err},
                                [] if passed else [f"CR(x,0,1,∞) off by {err:.3e}"])

    def check_busemann(self) -> ValidationResult:
        rng = self.config.rng("busemann")
        worst = 0.0
        for _ in range(self.config.busemann_pairs):
            gaps = rng.uniform(0.3, 1.0, self.d - 1)
            v = np.concatenate([[0.0], -np.cumsum(gaps)])
            frame = special_ortho_group.rvs(self.d, random_state=rng) if self.d > 1 else np.eye(1)
            eta = IdealPoint.from_type(frame, v)
            p = SpdPoint.random(self.d, rng)
            worst = max(worst, abs(busemann(eta, p) - busemann_truncated(eta, p, self.tol.busemann_horizon)))
        passed = worst <= self.tol.busemann_tol
        details = {"pairs": self.config.busemann_pairs, "max_gap": worst}
        return ValidationResult("busemann_dual_route", passed, details,
                                [] if passed else [f"Busemann routes differ by {worst:.3e}"])

    def run(self) -> Dict[str, Any]:
        logger.info(f"🚀 Geometry self-test for d={self.d}")
        results: List[ValidationResult] = [
            timed("curvature_calibration", self.check_curvature),
            timed("four_point_inequalities", self.check_inequalities),
            timed("separation_table", self.separation_table),
            timed("cross_ratio_normalisation", self.check_cross_ratio),
            timed("busemann_dual_route", self.check_busemann),
        ]
        summary = summarize(results)
        table = next((r.details.get("separation") for r in results if r.test_name == "separation_table"), None) or {}
        summary["separation"] = table.get(str(self.d))
        logger.info(f"📊 {summary['passed_tests']}/{summary['total_tests']} geometry checks passed")
        return summary


def run_selftest(config: RunConfig) -> Dict[str, Any]:
    summary = GeometrySelfTest(config).run()
    ReportWriter(config).write_json("geometry_selftest", summary)
    return summary

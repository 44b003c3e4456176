"""
Shared fixtures: seeded generators, standard flags, small meshes, Veronese curves.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[2]))

from hitchin_harmonic.shared.config import RunConfig
from hitchin_harmonic.flags.flag import sigma0, sigma_inf
from hitchin_harmonic.curves.curve import veronese_curve
from hitchin_harmonic.harmonic.mesh import build_mesh


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def config(tmp_path):
    """Small, fast configuration writing into a temporary directory."""
    return RunConfig(d=3, output_dir=tmp_path / "out", radii=[1.0, 2.0], delta=0.5, radius=2.0,
                     circle_samples=64, pair_samples=100, eta_frames=4, eta_types=4, eta_restarts=8,
                     x_samples=2, performance_profile='conservative')


@pytest.fixture
def standard_flags():
    """(σ₀, σ_∞) for d = 3."""
    return sigma0(3), sigma_inf(3)


@pytest.fixture(scope="session")
def veronese3():
    return veronese_curve(3)


@pytest.fixture(scope="session")
def small_mesh():
    return build_mesh(2.0, 0.4)

"""
Validation records for self-test suites.
"""

import time
import logging
from dataclasses import dataclass, field, asdict
from typing import Any, Callable, Dict, List

# Configure logging
logger = logging.getLogger(__name__)


@dataclass
class ValidationResult:
    """Result of a validation test."""
    test_name: str
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)
    errors: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    execution_time: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def timed(test_name: str, check: Callable[[], ValidationResult]) -> ValidationResult:
    """Run a check, catching crashes as failed results."""
    start_time = time.time()
    try:
        result = check()
    except Exception as e:
        logger.error(f"❌ {test_name} crashed: {e}")
        result = ValidationResult(test_name=test_name, passed=False, errors=[f"{type(e).__name__}: {e}"])
    result.execution_time = time.time() - start_time
    status = "✅" if result.passed else "❌"
    logger.info(f"{status} {result.test_name} ({result.execution_time:.2f}s)")
    return result


def summarize(results: List[ValidationResult]) -> Dict[str, Any]:
    """Summary dictionary over a list of results."""
    passed = sum(1 for r in results if r.passed)
    return {
        "total_tests": len(results),
        "passed_tests": passed,
        "failed_tests": len(results) - passed,
        "success_rate": passed / len(results) if results else 0.0,
        "total_errors": sum(len(r.errors) for r in results),
        "total_warnings": sum(len(r.warnings) for r in results),
        "results": [r.to_dict() for r in results],
    }

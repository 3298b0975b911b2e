from typing import Dict, List

from . import algebra, antiparticles, classical, equivalence, fields, fock, lorentz, nw, statistics
from .base import CheckContext, CheckFn

# Order is the order of the report
SELECTORS: Dict[str, List[CheckFn]] = {
    "algebra": algebra.CHECKS,
    "fock": fock.CHECKS,
    "fields": fields.CHECKS,
    "equivalence": equivalence.CHECKS,
    "statistics": statistics.CHECKS,
    "classical": classical.CHECKS,
    "nw": nw.CHECKS,
    "lorentz": lorentz.CHECKS,
    "antiparticles": antiparticles.CHECKS,
}

ALL = "all"


def resolve(selectors: List[str]) -> List[CheckFn]:
    """Check functions for the requested selectors, in registry order and without repeats."""
    unknown = [name for name in selectors if name != ALL and name not in SELECTORS]
    if unknown:
        raise ValueError(f"unknown selector(s) {', '.join(unknown)}; choose from {', '.join(list(SELECTORS) + [ALL])}")
    wanted = set(SELECTORS) if ALL in selectors else set(selectors)
    return [check for name, checks in SELECTORS.items() if name in wanted for check in checks]


__all__ = ["ALL", "SELECTORS", "CheckContext", "CheckFn", "resolve"]

import hashlib
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, List, Optional

import numpy as np

from ...lattice.grid import ModeGrid, build_grid
from ...schemas.lattice import LatticeSpec, Statistics
from ...schemas.report import CheckReport
from ...schemas.run_config import RunConfig

logger = logging.getLogger(__name__)


def hash_seed(text: str) -> int:
    """Stable integer from text, so each check draws its own reproducible stream."""
    return int(hashlib.sha256(text.encode("utf-8")).hexdigest(), 16) % (10 ** 8)


@dataclass
class CheckContext:
    config: RunConfig
    word: Optional[str] = None

    def rng(self, stream: str) -> np.random.Generator:
        return np.random.default_rng([self.config.seed, hash_seed(stream)])

    def tolerance(self, name: str, default: float) -> float:
        return self.config.tolerance(name, default)

    def lattice(self, statistics: Statistics = Statistics.BOSE) -> LatticeSpec:
        return self.config.lattice.with_statistics(statistics)

    @cached_property
    def grid(self) -> ModeGrid:
        return build_grid(self.config.lattice)

    def evaluate(self, name: str, anchor: str, deviation: float, default_tolerance: float) -> CheckReport:
        report = CheckReport.evaluate(name, anchor, deviation, self.tolerance(name, default_tolerance))
        if not report.passed:
            logger.warning(f"{name}: deviation {report.deviation:.3e} over tolerance {report.tolerance:.1e}")
        return report

    def skip(self, name: str, anchor: str, default_tolerance: float, reason: str) -> CheckReport:
        logger.warning(f"{name} skipped: {reason}")
        return CheckReport.skipped(name, anchor, self.tolerance(name, default_tolerance), reason)

    def error(self, name: str, anchor: str, default_tolerance: float, reason: str) -> CheckReport:
        logger.error(f"{name} failed without a result: {reason}")
        return CheckReport.errored(name, anchor, self.tolerance(name, default_tolerance), reason)


CheckFn = Callable[[CheckContext], List[CheckReport]]


def shortfall(value: float, floor: float) -> float:
    """Deviation for lower-bound checks: zero once value reaches floor."""
    return max(0.0, floor - value)

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ...core.config import settings
from ...core.exceptions import FockbridgeError, MemoryCapError
from ...schemas.report import CheckReport, CheckStatus
from ...schemas.run_config import RunConfig
from ..checks import CheckContext, CheckFn, resolve

logger = logging.getLogger(__name__)


@dataclass
class SuiteResult:
    selectors: List[str]
    reports: List[CheckReport]
    timings: Dict[str, float] = field(default_factory=dict)

    def count(self, status: CheckStatus) -> int:
        return sum(report.status == status for report in self.reports)

    @property
    def passed(self) -> bool:
        return self.count(CheckStatus.FAILED) == 0

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1


class SuiteService:
    """Runs selected checks on a thread pool; reports come back in registry order."""

    def __init__(self, config: RunConfig, word: Optional[str] = None, workers: Optional[int] = None):
        self.config = config
        self.context = CheckContext(config, word=word)
        self.workers = workers or config.workers or settings.FOCKBRIDGE_WORKERS

    def _run_one(self, check: CheckFn) -> Tuple[str, List[CheckReport], float]:
        name = check.__name__
        started = time.perf_counter()
        try:
            reports = check(self.context)
        except MemoryCapError:
            logger.error(f"Check {name} hit a size cap")
            raise
        except FockbridgeError as exc:
            reports = [self.context.error(name, f"{check.__module__}.{name}", 0.0, str(exc))]
        elapsed = time.perf_counter() - started
        logger.debug(f"Check {name} finished in {elapsed:.3f}s with {len(reports)} result(s)")
        return name, reports, elapsed

    def run(self, selectors: Sequence[str]) -> SuiteResult:
        selectors = list(selectors)
        checks = resolve(selectors)
        logger.info(f"Running {len(checks)} check group(s) for {', '.join(selectors)} on {self.workers} worker(s)")

        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            outcomes = list(pool.map(self._run_one, checks))

        reports, timings = [], {}
        for name, group, elapsed in outcomes:
            timings[name] = elapsed
            for report in group:
                if self.config.record_timings:
                    report = report.model_copy(update={"seconds": elapsed})
                logger.info(f"{report.status.value.upper():8} {report.name}")
                reports.append(report)

        result = SuiteResult(selectors=selectors, reports=reports, timings=timings)
        logger.info(
            f"Suite done: {result.count(CheckStatus.PASSED)} passed, {result.count(CheckStatus.FAILED)} failed, "
            f"{result.count(CheckStatus.SKIPPED)} skipped"
        )
        return result


def run_suite(config: RunConfig, selectors: Sequence[str], word: Optional[str] = None) -> SuiteResult:
    return SuiteService(config, word=word).run(selectors)

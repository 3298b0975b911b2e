import json
import logging
from pathlib import Path
from typing import Optional, Tuple

from ...core.config import settings
from ...core.exceptions import ProfileWriteError
from ...schemas.report import CheckStatus
from ...schemas.run_config import RunConfig
from .suite_service import SuiteResult

logger = logging.getLogger(__name__)

REPORT_NAME = "report.json"
SUMMARY_NAME = "summary.txt"


def resolve_output_dir(config: RunConfig, cli_out: Optional[str] = None) -> Path:
    """FOCKBRIDGE_OUT, then --out, then the config file's output_dir."""
    return Path(settings.FOCKBRIDGE_OUT or cli_out or config.output_dir)


def render_report(result: SuiteResult) -> str:
    records = [report.to_record() for report in result.reports]
    return json.dumps(records, indent=2) + "\n"


def render_summary(result: SuiteResult) -> str:
    width = max((len(report.name) for report in result.reports), default=10)
    lines = [f"fockbridge verify {' '.join(result.selectors)}", ""]
    for report in result.reports:
        if report.status == CheckStatus.SKIPPED:
            detail = f"skipped: {report.reason}"
        elif report.deviation is None:
            detail = f"error: {report.reason}"
        else:
            detail = f"deviation {report.deviation:.3e}  tolerance {report.tolerance:.1e}"
        lines.append(f"{report.status.value.upper():8} {report.name:<{width}}  {detail}")
    lines.append("")
    lines.append("timings:")
    for name, seconds in result.timings.items():
        lines.append(f"  {name:<{width}}  {seconds:8.3f}s")
    lines.append("")
    lines.append(
        f"{result.count(CheckStatus.PASSED)} passed, {result.count(CheckStatus.FAILED)} failed, "
        f"{result.count(CheckStatus.SKIPPED)} skipped"
    )
    return "\n".join(lines) + "\n"


def _write(path: Path, text: str):
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        logger.error(f"Failed writing {path}")
        raise ProfileWriteError(path, exc.strerror or exc) from exc


def write_reports(result: SuiteResult, output_dir: Path) -> Tuple[Path, Path]:
    report_path = Path(output_dir) / REPORT_NAME
    summary_path = Path(output_dir) / SUMMARY_NAME
    _write(report_path, render_report(result))
    _write(summary_path, render_summary(result))
    logger.info(f"Wrote {report_path} and {summary_path}")
    return report_path, summary_path

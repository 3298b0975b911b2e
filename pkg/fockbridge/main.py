import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from .algebra.symbolic import Word
from .core.config import settings
from .core.exceptions import FockbridgeError
from .schemas.continuum import ProfileKind, ProfileRequest
from .verification.checks import ALL, SELECTORS
from .verification.services.config_service import load_run_config
from .verification.services.profile_service import emit_profile
from .verification.services.report_service import render_report, resolve_output_dir, write_reports
from .verification.services.suite_service import run_suite

logger = logging.getLogger("fockbridge")

NW_KINDS = [ProfileKind.NW_CHI.value, ProfileKind.NW_X.value, ProfileKind.CHI_OVERLAP.value]


def _verify(args) -> int:
    config = load_run_config(args.config, seed=args.seed)
    if args.word:
        Word.parse(args.word)
    result = run_suite(config, args.selectors, word=args.word)
    report_path, _ = write_reports(result, resolve_output_dir(config, args.out))
    print(f"{'PASS' if result.passed else 'FAIL'}: report at {report_path}")
    return result.exit_code


def _profile(args) -> int:
    request = ProfileRequest(
        kind=args.kind,
        mass=args.mass,
        cutoff=args.cutoff,
        points=args.points,
        span=args.span,
    )
    default_dir = Path(settings.FOCKBRIDGE_OUT or "reports")
    path = emit_profile(request, args.path or default_dir / f"{request.kind.value}.csv")
    print(path)
    return 0


def _selector_check(args, selector: str) -> int:
    config = load_run_config(args.config, seed=getattr(args, "seed", None))
    rapidities = getattr(args, "rapidity", None)
    if rapidities:
        config = config.model_copy(update={"rapidities": rapidities})
    result = run_suite(config, [selector])
    sys.stdout.write(render_report(result))
    return result.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fockbridge",
        description="Verify N-particle operators built from free scalar fields against independent oracles.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="Run check selectors and write report.json + summary.txt")
    verify.add_argument("selectors", nargs="+", choices=list(SELECTORS) + [ALL], metavar="selector",
                        help=f"One or more of: {', '.join(list(SELECTORS) + [ALL])}")
    verify.add_argument("--config", help="JSON run config; defaults apply when omitted")
    verify.add_argument("--seed", type=int, help="Override the config seed")
    verify.add_argument("--out", help="Output directory (FOCKBRIDGE_OUT takes precedence)")
    verify.add_argument("--word", help="X/P word to normal-order, e.g. PPPXPPXX")
    verify.set_defaults(handler=_verify)

    profile = commands.add_parser("profile", help="Write a CSV profile")
    profile.add_argument("kind", choices=[kind.value for kind in ProfileKind])
    _profile_options(profile)

    nw = commands.add_parser("nw", help="Newton-Wigner localization")
    nw_commands = nw.add_subparsers(dest="nw_command", required=True)
    nw_profile = nw_commands.add_parser("profile", help="CSV of an NW profile or the chi overlap")
    nw_profile.add_argument("--kind", choices=NW_KINDS, default=ProfileKind.NW_CHI.value)
    _profile_options(nw_profile)
    nw_check = nw_commands.add_parser("check", help="Print the NW consistency report as JSON")
    nw_check.add_argument("--config")
    nw_check.set_defaults(handler=lambda args: _selector_check(args, "nw"))

    lorentz = commands.add_parser("lorentz", help="Boosts of one-particle states")
    lorentz_commands = lorentz.add_subparsers(dest="lorentz_command", required=True)
    lorentz_check = lorentz_commands.add_parser("check", help="Print the boost report as JSON")
    lorentz_check.add_argument("--rapidity", type=float, action="append", help="Repeatable; replaces the config list")
    lorentz_check.add_argument("--config")
    lorentz_check.set_defaults(handler=lambda args: _selector_check(args, "lorentz"))
    return parser


def _profile_options(parser: argparse.ArgumentParser):
    parser.add_argument("--mass", type=float, default=1.0)
    parser.add_argument("--cutoff", type=float, help="Momentum window K; default 40 m")
    parser.add_argument("--points", type=int, default=401)
    parser.add_argument("--span", type=float, default=0.5, help="Half-width in units of 1/m")
    parser.add_argument("--path", help="CSV path; default <FOCKBRIDGE_OUT or reports>/<kind>.csv")
    parser.set_defaults(handler=_profile)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else settings.FOCKBRIDGE_LOG_LEVEL,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.handler(args)
    except FockbridgeError as exc:
        logger.error(str(exc))
        return exc.exit_code
    except ValueError as exc:
        # pydantic rejects profile parameters as ValueError subclasses
        logger.error(str(exc))
        return 2


if __name__ == "__main__":
    sys.exit(main())

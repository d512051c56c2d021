"""
Command-line entry point.

    python -m umbilic_atlas analyze --poly "x*y"
    python -m umbilic_atlas plot-chart --poly "x*y" --chart u+ --svg-out xy.svg

Both --box -2,2,-2,2 and --box=-2,2,-2,2 are accepted.
"""
import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence

from termcolor import colored

from curvature.identities import identity_suite
from rendering.portraits import chart_portrait, plane_portrait
from rendering.reports import AnalysisReport, analyze, parse_input
from umbilic_atlas import settings
from umbilic_atlas.logging import get_log_metrics, reset_log_metrics
from umbilic_atlas.metrics import Timer, record_analysis, record_error, write_metrics
from umbilic_atlas.responses import CLIResponse
from umbilic_atlas.statuses import EXIT_OK, AtlasError, ErrorCode, InvalidArgumentError, Status, Verdict

logger = logging.getLogger('umbilic_atlas')

COMMANDS = ('analyze', 'infinity', 'check-ph', 'identities', 'plot-plane', 'plot-chart')


def print_header(title):
    """Print a formatted header"""
    sys.stderr.write("\n" + "=" * 60 + "\n")
    sys.stderr.write(colored(f"  {title}", "cyan", attrs=["bold"]) + "\n")
    sys.stderr.write("=" * 60 + "\n")


def print_success(message):
    sys.stderr.write(colored("✓ " + message, "green") + "\n")


def print_warning(message):
    sys.stderr.write(colored("⚠ " + message, "yellow") + "\n")


def print_error(message):
    sys.stderr.write(colored("✗ " + message, "red") + "\n")


def parse_box(text: Optional[str]):
    if text is None:
        return None
    try:
        values = [float(v) for v in text.split(',')]
    except ValueError:
        raise InvalidArgumentError(f"box must be four comma-separated numbers, got {text!r}")
    if len(values) != 4:
        raise InvalidArgumentError(f"box must be x0,x1,y0,y1, got {text!r}")
    return values


def attach_box(argv: Sequence[str]) -> List[str]:
    """Join "--box" with its value so argparse does not read "-2,2,..." as an option."""
    out: List[str] = []
    i = 0
    while i < len(argv):
        if argv[i] == "--box" and i + 1 < len(argv):
            out.append(f"--box={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='umbilic_atlas',
        description="Umbilic points of polynomial graphs, in the plane and at infinity")
    sub = parser.add_subparsers(dest='command', required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--poly", required=True, help="Polynomial in x, y, e.g. \"x^3 - 3*x*y^2 + x^2 + y^2\"")
    common.add_argument("--box", default=None,
                        help="Search box x0,x1,y0,y1 (default: -10,10,-10,10, expanded automatically)")
    common.add_argument("--tol", type=float, default=None, help="Umbilic residual tolerance (default: 1e-9)")
    common.add_argument("--samples", type=int, default=None, help="Winding samples (default: 1024)")
    common.add_argument("--workers", type=int, default=None, help="Worker threads (default: MAX_WORKERS)")
    common.add_argument("--json-out", default=None, help="Write the JSON report here (default: stdout)")
    common.add_argument("--svg-out", default=None, help="Write the SVG portrait here (default: stdout)")
    common.add_argument("--seeds", type=int, default=None, help="Grid seeds for portraits (default: 64)")
    common.add_argument("--chart", default='u+', help="Chart u+, u-, v+, v- or rot:<deg> (default: u+)")
    common.add_argument("--timing", action='store_true', default=None,
                        help="Report measured stage timings (makes the output run-dependent)")
    common.add_argument("--quiet", action='store_true', help="No summary on stderr")
    common.add_argument("--log-level", default=None, help="Console log level (default: LOG_LEVEL)")

    helps = {
        'analyze': "Full analysis: finite and infinity umbilics, ledger, identities",
        'infinity': "Umbilics at infinity with their certificates",
        'check-ph': "Compare the finite index sum with 1 - R/2",
        'identities': "Run the exact identity suite",
        'plot-plane': "SVG portrait of the curvature lines in the plane",
        'plot-chart': "SVG portrait of the curvature lines in a sphere chart",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def _validate(args) -> None:
    for name in ('samples', 'seeds', 'workers'):
        value = getattr(args, name)
        if value is not None and value <= 0:
            raise InvalidArgumentError(f"--{name} must be positive")
    if args.tol is not None and args.tol <= 0:
        raise InvalidArgumentError("--tol must be positive")


def _run_analysis(args) -> AnalysisReport:
    return analyze(args.poly, parse_box(args.box), args.tol, args.samples, args.workers, args.timing)


def _analysis_exit(report: AnalysisReport) -> int:
    if not report.identities.all_hold:
        return Status.exit_code(ErrorCode.INVARIANT_VIOLATION)
    return Status.verdict_exit_code(report.ledger.verdict)


def cmd_analyze(args, summary: List[str]) -> int:
    report = _run_analysis(args)
    CLIResponse.success(report.to_dict(), args.json_out)
    _summarise(report, summary)
    return _analysis_exit(report)


def cmd_infinity(args, summary: List[str]) -> int:
    report = _run_analysis(args)
    full = report.to_dict()
    keys = ('input', 'n', 'R', 'factors', 'leading_form_type', 'infinity_umbilics', 'count_bounds',
            'parity', 'timing_ms')
    CLIResponse.success({k: full[k] for k in keys}, args.json_out)
    _summarise(report, summary)
    return _analysis_exit(report)


def cmd_check_ph(args, summary: List[str]) -> int:
    report = _run_analysis(args)
    full = report.to_dict()
    keys = ('input', 'n', 'R', 'finite_umbilics', 'finite_search', 'ph', 'timing_ms')
    CLIResponse.success({k: full[k] for k in keys}, args.json_out)
    _summarise(report, summary)
    return Status.verdict_exit_code(report.ledger.verdict)


def cmd_identities(args, summary: List[str]) -> int:
    with Timer('identities') as t:
        f = parse_input(args.poly)
        identities = identity_suite(f)
    data = {
        'input': args.poly,
        'n': int(f.degree()),
        'identities': identities.to_dict(),
        'timing_ms': {'identities': t.elapsed_ms} if (args.timing or settings.REPORT_TIMING) else None,
    }
    CLIResponse.success(data, args.json_out)
    if identities.all_hold:
        summary.append(('success', "All exact identities hold"))
        return EXIT_OK
    failed = [k for k, ok in identities.to_dict().items() if not ok]
    summary.append(('error', f"Identities fail: {', '.join(failed)}"))
    return Status.exit_code(ErrorCode.INVARIANT_VIOLATION)


def cmd_plot_plane(args, summary: List[str]) -> int:
    f = parse_input(args.poly)
    portrait = plane_portrait(f, parse_box(args.box), args.seeds, args.tol, args.workers)
    CLIResponse.write(portrait.svg, args.svg_out)
    summary.append(('success', f"{len(portrait.streamlines)} curvature lines, {len(portrait.markers)} umbilics"))
    return EXIT_OK


def cmd_plot_chart(args, summary: List[str]) -> int:
    f = parse_input(args.poly)
    portrait = chart_portrait(f, args.chart, args.seeds, box=parse_box(args.box), tol=args.tol,
                              samples=args.samples, workers=args.workers)
    CLIResponse.write(portrait.svg, args.svg_out)
    summary.append(('success', f"{len(portrait.streamlines)} curvature lines, {len(portrait.markers)} umbilics"))
    return EXIT_OK


HANDLERS: Dict[str, Callable] = {
    'analyze': cmd_analyze,
    'infinity': cmd_infinity,
    'check-ph': cmd_check_ph,
    'identities': cmd_identities,
    'plot-plane': cmd_plot_plane,
    'plot-chart': cmd_plot_chart,
}


def _summarise(report: AnalysisReport, summary: List) -> None:
    ledger = report.ledger
    summary.append(('success', f"n = {report.n}, R = {report.R}, "
                               f"{len(report.finite.umbilics)} finite umbilics, "
                               f"{2 * len(report.infinity)} umbilics at infinity"))
    line = f"Index sum {ledger.sum_halves}/2 against 1 - R/2 = {ledger.rhs_halves}/2: {ledger.verdict.value}"
    if ledger.verdict == Verdict.PASS:
        summary.append(('success', line))
    elif ledger.verdict == Verdict.HYPOTHESES_VIOLATED:
        failed = [k for k, ok in ledger.hypotheses.items() if not ok]
        summary.append(('warning', f"{line} ({', '.join(failed)})"))
    else:
        summary.append(('warning', line))
    if not ledger.certified:
        summary.append(('warning', "Some finite windings are not certified"))


def _print_summary(command: str, summary: List, code: int) -> None:
    print_header(f"umbilic_atlas {command}")
    printers = {'success': print_success, 'warning': print_warning, 'error': print_error}
    for kind, message in summary:
        printers[kind](message)
    counts = get_log_metrics()
    if counts['event_count']:
        print_warning(f"{counts['event_count']} warnings/errors logged: {counts['events_by_level']}")
    (print_success if code == EXIT_OK else print_error)(f"exit code {code}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(attach_box(sys.argv[1:] if argv is None else list(argv)))
    settings.configure_logging(args.log_level)
    reset_log_metrics()
    record_analysis(args.command)

    summary: List = []
    try:
        _validate(args)
        code = HANDLERS[args.command](args, summary)
    except AtlasError as e:
        record_error(args.command, e.code.value)
        code = CLIResponse.error(e.code, e.message, e.details, e)
        summary.append(('error', e.message))
    except Exception as e:
        record_error(args.command, 'internal_error')
        code = CLIResponse.error(ErrorCode.INTERNAL_ERROR, str(e), exception=e)
        summary.append(('error', str(e)))

    if not args.quiet:
        _print_summary(args.command, summary, code)
    if settings.METRICS_TEXTFILE:
        write_metrics(settings.METRICS_TEXTFILE)
    return code


if __name__ == "__main__":
    sys.exit(main())

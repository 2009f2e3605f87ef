"""Command-line front end and run orchestration.

A run goes through: validate, breadth-first exploration with on-the-fly
safety and deadlock checks, then (when further checks are configured)
the reversed-edge graph, may progress, must progress, and, for reduced
runs that checked safety or progress, the check that termination stays
reachable. The first failure wins; its counterexample is printed as one
state per line with "==========" and "----------" section markers, then
a "!!! " error line. The final line is always "<N> states, <M> edges".

Exit codes: 0 pass, 1 property error, 2 state limit exceeded,
3 configuration or model error.
"""

from __future__ import annotations

import argparse
import sys

from .explorer import counterexample, explore, stats_line
from .model import ConfigError, ModelContractError, ModelError, RunConfig, validate
from .models import MODELS
from .progress import build_reverse, check_may_progress, check_must_progress
from .stubborn import check_ag_ef_terminating

EXIT_PASS = 0
EXIT_ERROR_FOUND = 1
EXIT_LIMIT = 2
EXIT_CONFIG = 3

UNRELIABLE_WARNING = (
    "warning: must progress was checked under stubborn set reduction; "
    "the pass verdict is unreliable"
)


def run(model, cfg=None, out=None, quiet=False):
    """Execute one verification run, writing the transcript to `out`."""
    stream = sys.stdout if out is None else out

    def emit(line):
        print(line, file=stream)

    try:
        plan = validate(model, cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ModelError as exc:
        emit(f"!!! {exc}")
        return EXIT_CONFIG

    result = explore(plan)
    try:
        code = EXIT_PASS
        warn_unreliable = False
        if result.verdict == "model_error":
            emit(f"!!! {result.message}")
            code = EXIT_CONFIG
        elif result.verdict in ("safety_error", "deadlock_error"):
            if not quiet:
                for i in counterexample(result, result.error_index):
                    emit(plan.model.format_state(result.store.states[i]))
            emit(f"!!! {result.message}")
            code = EXIT_ERROR_FOUND
        elif result.verdict == "limit_exceeded":
            emit(f"state limit exceeded: more than {plan.stop_cnt} states")
            code = EXIT_LIMIT
        else:
            check_agef = plan.stubborn and (
                plan.chk_state or plan.chk_may_progress or plan.chk_must_progress
            )
            if plan.chk_may_progress or plan.chk_must_progress or check_agef:
                rg = build_reverse(plan, result)
                err = None
                if plan.chk_may_progress:
                    err = check_may_progress(plan, result, rg)
                if err is None and plan.chk_must_progress:
                    err = check_must_progress(plan, result, rg)
                    if err is None and plan.stubborn:
                        warn_unreliable = True
                if err is None and check_agef:
                    err = check_ag_ef_terminating(plan, result, rg)
                if err is not None:
                    _emit_check_error(emit, plan, result, err, quiet)
                    code = EXIT_ERROR_FOUND
            if code == EXIT_PASS and warn_unreliable:
                emit(UNRELIABLE_WARNING)
        emit(stats_line(result))
        return code
    except ModelError as exc:
        emit(f"!!! {exc}")
        emit(stats_line(result))
        return EXIT_CONFIG
    except ModelContractError as exc:
        print(f"error: model contract violation: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def _emit_check_error(emit, plan, result, err, quiet):
    if not quiet:
        fmt = plan.model.format_state
        states = result.store.states
        for i in err.stem:
            emit(fmt(states[i]))
        if err.trap is not None:
            emit("=" * 10)
            for i in err.trap:
                emit(fmt(states[i]))
        if err.cycle is not None:
            emit("-" * 10)
            for i in err.cycle:
                emit(fmt(states[i]))
    emit(f"!!! {err.message}")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser():
    parser = _Parser(
        prog="statespace",
        description="Explore a model's state space and check it for errors.",
    )
    parser.add_argument("model", choices=sorted(MODELS), help="bundled model to check")
    parser.add_argument("--n", type=int, default=6, help="model size parameter (default 6)")
    parser.add_argument(
        "--variant",
        choices=["correct", "faulty-guard", "modified-progress"],
        default="correct",
        help="model variant (default correct)",
    )
    parser.add_argument("--symm-must", action="store_true", help="track the original customer 0")
    parser.add_argument("--stubborn", action="store_true", help="stubborn set reduction")
    parser.add_argument("--symmetry", action="store_true", help="symmetry reduction")
    parser.add_argument("--stop-cnt", type=int, default=None, help="stop after this many states")
    for flag, text in (
        ("--chk-state", "state safety check"),
        ("--chk-deadlock", "illegal deadlock check"),
        ("--chk-may-progress", "may progress check"),
        ("--chk-must-progress", "must progress check"),
    ):
        parser.add_argument(
            flag,
            action=argparse.BooleanOptionalAction,
            default=None,
            help=f"{text} (default: model's own setting)",
        )
    parser.add_argument("--debug-checks", action="store_true", help="verify model contracts")
    parser.add_argument("--quiet", action="store_true", help="suppress traces, keep verdict")
    parser.add_argument("--word-width", type=int, choices=[32, 64], default=64)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(parser.format_usage(), file=sys.stderr, end="")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        model = MODELS[args.model](
            n=args.n,
            variant=args.variant.replace("-", "_"),
            symm_must=args.symm_must,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    cfg = RunConfig(
        stubborn=args.stubborn,
        symmetry=args.symmetry,
        chk_state=args.chk_state,
        chk_deadlock=args.chk_deadlock,
        chk_may_progress=args.chk_may_progress,
        chk_must_progress=args.chk_must_progress,
        stop_cnt=args.stop_cnt,
        debug_checks=args.debug_checks,
        word_width=args.word_width,
    )
    return run(model, cfg, quiet=args.quiet)

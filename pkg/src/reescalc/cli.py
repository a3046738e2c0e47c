"""Command line front end.

JSON goes to stdout and is byte-stable for a fixed input; the human
summary goes to stderr.  Exit codes: 0 computed, 2 inconclusive or
unproven outcomes present, 3 soundness alarm, 4 input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import fixtures as corpus
from .analysis import (br_coefficients, buchsbaum_check,
                       indecomposability_check, theorem12_check)
from .closures import integral_closure_module, ratliff_rush_module
from .errors import (DeadlineExceeded, ReescalcError, SoundnessAlert,
                     UnstableChainError)
from .problem import parse_problem
from .rees import INFINITE, fitting_ideal, is_parameter_module

EXIT_OK = 0
EXIT_INCONCLUSIVE = 2
EXIT_SOUNDNESS = 3
EXIT_INPUT = 4

COMMANDS = ("rr", "iclose", "br", "thm12", "buchsbaum", "fitting", "param",
            "indec", "fixtures")


def _jsonable(value):
    if value is INFINITE:
        return "INFINITE"
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _generator_lists(U):
    if U.rank == 1:
        return [str(g[0]) for g in U.gens]
    return [[str(p) for p in g] for g in U.gens]


def _closure_payload(res):
    result = {
        "generators": _generator_lists(res.submodule),
        "method": res.method,
        "stabilization_index": res.stabilization_index,
        "window": res.window,
    }
    result.update(_jsonable(res.extra))
    certification = {"certified": res.certified, "method": res.method}
    return result, certification


def _run_rr(problem, opts, n_max):
    E = problem.embedding()
    res = ratliff_rush_module(E, 1, opts)
    result, certification = _closure_payload(res)
    return result, certification, [], EXIT_OK


def _run_iclose(problem, opts, n_max):
    E = problem.embedding()
    res = integral_closure_module(E, candidates=problem.candidate_columns()
                                  or None, opts=opts)
    result, certification = _closure_payload(res)
    warnings = []
    if not res.certified:
        warnings.append("closure is candidate-verified, not proved maximal")
    return result, certification, warnings, EXIT_OK


def _run_br(problem, opts, n_max):
    E = problem.embedding()
    B = br_coefficients(E, n_max=n_max)
    return B.as_dict(), {"certified": True}, [], EXIT_OK


def _run_thm12(problem, opts, n_max):
    E = problem.embedding()
    rep = theorem12_check(E, n_max=n_max or 4,
                          candidates=problem.candidate_columns() or None,
                          opts=opts)
    payload = _jsonable(rep.as_dict())
    status = EXIT_INCONCLUSIVE if rep.certification["inconclusive"] else EXIT_OK
    return payload, _jsonable(rep.certification), rep.warnings, status


def _run_buchsbaum(problem, opts, n_max):
    E = problem.embedding()
    candidates = problem.candidate_columns() or None
    mbar = integral_closure_module(E, candidates=candidates, opts=opts)
    check = buchsbaum_check(E, mbar=mbar, opts=opts)
    certification = {"certified": check.pop("certified"),
                     "method": check.pop("closure_method")}
    return _jsonable(check), certification, [], EXIT_OK


def _run_fitting(problem, opts, n_max):
    E = problem.embedding()
    ideals = {}
    for i in range(E.rank):
        ideals[str(i)] = _generator_lists(fitting_ideal(E, i))
    return {"fitting_ideals": ideals}, {"certified": True}, [], EXIT_OK


def _run_param(problem, opts, n_max):
    E = problem.embedding()
    verdict, reasons = is_parameter_module(E)
    return ({"verdict": verdict, "reasons": _jsonable(reasons)},
            {"certified": True}, [], EXIT_OK)


def _run_indec(problem, opts, n_max):
    E = problem.embedding()
    check = indecomposability_check(E, problem.factor_ideals(), opts=opts)
    warnings = check.pop("warnings")
    status = EXIT_OK if check["verdict"] else EXIT_INCONCLUSIVE
    return _jsonable(check), {"certified": check["verdict"]}, warnings, status


def _run_fixtures():
    all_ok, rows = corpus.run_all()
    status = EXIT_OK if all_ok else EXIT_INCONCLUSIVE
    return ({"all_ok": all_ok, "checks": _jsonable(rows)},
            {"certified": all_ok}, [], status)


_RUNNERS = {
    "rr": _run_rr,
    "iclose": _run_iclose,
    "br": _run_br,
    "thm12": _run_thm12,
    "buchsbaum": _run_buchsbaum,
    "fitting": _run_fitting,
    "param": _run_param,
    "indec": _run_indec,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="reescalc",
        description="Exact closure and graded-data computations for modules "
                    "inside free modules over a two-variable polynomial ring.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("file", nargs="?",
                        help="problem file (unused by the fixtures command)")
    parser.add_argument("--lmax", type=int, default=None)
    parser.add_argument("--window", type=int, default=None)
    parser.add_argument("--nmax", type=int, default=None)
    parser.add_argument("--char", type=int, default=None)
    parser.add_argument("--json", dest="json_path", default=None,
                        help="also write the JSON report to this path")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    warnings = []
    try:
        if args.command == "fixtures":
            digest = hashlib.sha256(b"").hexdigest()
            options = {}
            result, certification, extra_warnings, status = _run_fixtures()
        else:
            if not args.file:
                print("error: this command needs a problem file",
                      file=sys.stderr)
                return EXIT_INPUT
            with open(args.file, "rb") as fh:
                raw = fh.read()
            digest = hashlib.sha256(raw).hexdigest()
            problem = parse_problem(raw.decode("utf-8"),
                                    char_override=args.char)
            if args.lmax is not None:
                problem.options["lmax"] = args.lmax
            if args.window is not None:
                problem.options["window"] = args.window
            n_max = args.nmax if args.nmax is not None \
                else problem.options.get("nmax")
            opts = problem.closure_options()
            if args.char is not None and args.char != 0:
                warnings.append(
                    "prime-field coefficients: the infinite-field hypothesis "
                    "is only heuristically satisfied")
            options = {"lmax": opts.l_max, "window": opts.window,
                       "smax": opts.s_max, "nmax": n_max,
                       "char": problem.ctx.characteristic}
            result, certification, extra_warnings, status = \
                _RUNNERS[args.command](problem, opts, n_max)
        warnings.extend(extra_warnings)
    except SoundnessAlert as exc:
        print(f"SOUNDNESS ALERT: {exc}", file=sys.stderr)
        return EXIT_SOUNDNESS
    except (UnstableChainError, DeadlineExceeded) as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except ReescalcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    report = {
        "input_digest": digest,
        "command": args.command,
        "options": options,
        "result": result,
        "certification": certification,
        "warnings": warnings,
        "timings": {},
    }
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    sys.stdout.write(text)
    if args.json_path:
        with open(args.json_path, "w") as fh:
            fh.write(text)
    summary = f"{args.command}: exit {status}"
    if isinstance(result, dict) and "verdict" in result:
        summary += f", verdict {result['verdict']}"
    print(summary, file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())

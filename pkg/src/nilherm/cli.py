"""nilherm command-line interface.

Exit codes: 0 ok, 1 validation failure, 2 theorem inconsistency, 3 I/O or parse error.
Algebra arguments are file paths or built-in catalog names.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog
from .algebra import AlgebraError, ComplexNilAlgebra, validate
from .metrics import HermitianMetric, MetricError, classify
from .search import FEASIBLE, SearchOptions, find_balanced_metric, find_both, find_skt_metric
from .verifier import proof_chain, theorem_sweep

EXIT_OK, EXIT_INVALID, EXIT_INCONSISTENT, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _load_algebra(arg: str) -> ComplexNilAlgebra:
    path = Path(arg)
    if path.is_file():
        try:
            return ComplexNilAlgebra.loads(path.read_text(encoding="utf-8"))
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"{arg}: malformed algebra file: {exc}") from exc
    try:
        return catalog.builtin(arg).algebra
    except KeyError:
        raise UsageError(f"{arg}: no such file or catalog entry") from None


def _load_metric(arg: str | None, n: int) -> HermitianMetric:
    if arg is None or arg == "identity":
        return HermitianMetric.identity(n)
    path = Path(arg)
    try:
        H = HermitianMetric.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"{arg}: cannot read metric file: {exc.strerror}") from exc
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"{arg}: malformed metric file: {exc}") from exc
    if H.n != n:
        raise UsageError(f"{arg}: metric has n={H.n} but algebra has n={n}")
    if not H.is_positive_definite():
        raise UsageError(f"{arg}: metric is not positive definite")
    return H


def _opts(args) -> SearchOptions:
    return SearchOptions(
        seeds=args.seeds, max_iter=args.max_iter, tol=args.tol, seed=args.seed, method=getattr(args, "method", "auto")
    )


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


# commands ------------------------------------------------------------------------


def cmd_validate(args, out) -> int:
    A = _load_algebra(args.algebra)
    rep = validate(A)
    fails = rep.failures()
    if args.format == "structured":
        out.append(
            _dump(
                {
                    "algebra": A.to_dict(),
                    "valid": rep.valid,
                    "failures": {str(j): str(f) for j, f in sorted(fails.items())},
                }
            )
        )
    else:
        out.append(f"algebra: {A.name} (n={A.n})")
        out.append(f"valid: {_yes(rep.valid)}")
        for j, f in sorted(fails.items()):
            out.append(f"  d(d alpha^{j}) = {f}")
    return EXIT_OK if rep.valid else EXIT_INVALID


def _require_valid(A, out, fmt) -> bool:
    rep = validate(A)
    if rep.valid:
        return True
    msg = f"algebra {A.name} fails d^2 = 0 on generators {sorted(rep.failures())}"
    out.append(_dump({"error": "invalid", "message": msg}) if fmt == "structured" else f"invalid: {msg}")
    return False


def cmd_check(args, out) -> int:
    A = _load_algebra(args.algebra)
    if not _require_valid(A, out, args.format):
        return EXIT_INVALID
    H = _load_metric(args.metric, A.n)
    mc = classify(H, A)
    summary = mc.summary()
    if args.format == "structured":
        out.append(_dump({"algebra": A.name, "metric": H.to_dict(), "classification": summary}))
    else:
        out.append(f"algebra: {A.name} (n={A.n})")
        out.append(f"kahler: {summary['kahler']}" + ("" if mc.kahler else f" (defect {summary['kahlerDefect']})"))
        out.append(f"skt: {summary['skt']}" + ("" if mc.skt else f" (defect {summary['sktDefect']})"))
        out.append(f"balanced: {summary['balanced']}" + ("" if mc.balanced else f" (defect {summary['balancedDefect']})"))
        if not mc.skt:
            out.append(f"  ddbar omega = {mc.ddbar_omega}")
        if not mc.balanced:
            out.append(f"  d omega^(n-1) = {mc.d_omega_pow}")
    if mc.skt and mc.balanced and not mc.kahler:
        return EXIT_INCONSISTENT
    return EXIT_OK


def _report_lines(rep) -> list[str]:
    lines = [f"{rep.target}: {rep.status}"]
    if rep.witness is not None:
        rows = ["[" + ", ".join(str(x) for x in row) + "]" for row in rep.witness.a]
        lines.append(f"  witness: [{', '.join(rows)}]")
    if rep.certificate:
        lines.append(f"  certificate ({rep.certificate.get('kind', '')}): {rep.certificate.get('text', '')}")
    lines.append(f"  defect: {rep.defect:.6g}  seeds tried: {rep.seeds_tried}")
    return lines


def cmd_search(args, out) -> int:
    A = _load_algebra(args.algebra)
    if not _require_valid(A, out, args.format):
        return EXIT_INVALID
    opts = _opts(args)
    if args.target == "both":
        both = find_both(A, opts)
        if args.format == "structured":
            out.append(_dump(both.to_dict()))
        else:
            out.append(f"algebra: {A.name} (n={A.n})")
            out.extend(_report_lines(both.skt))
            out.extend(_report_lines(both.balanced))
            out.append(f"abelian: {_yes(both.abelian)}")
            out.append(f"theorem violation: {_yes(both.theorem_violation)}")
        return EXIT_INCONSISTENT if both.theorem_violation else EXIT_OK
    rep = find_skt_metric(A, opts) if args.target == "skt" else find_balanced_metric(A, opts)
    if args.format == "structured":
        out.append(_dump(rep.to_dict()))
    else:
        out.append(f"algebra: {A.name} (n={A.n})")
        out.extend(_report_lines(rep))
    return EXIT_OK


def _metric_or_search(path, A, finder, opts) -> tuple[HermitianMetric, str]:
    if path is not None:
        return _load_metric(path, A.n), f"file {path}" if path != "identity" else "identity"
    rep = finder(A, opts)
    if rep.status == FEASIBLE:
        return rep.witness, "search witness"
    return HermitianMetric.identity(A.n), f"identity (search {rep.status})"


def cmd_verify(args, out) -> int:
    A = _load_algebra(args.algebra)
    if not _require_valid(A, out, args.format):
        return EXIT_INVALID
    opts = _opts(args)
    g, g_src = _metric_or_search(args.balanced_metric, A, find_balanced_metric, opts)
    g2, g2_src = _metric_or_search(args.skt_metric, A, find_skt_metric, opts)
    trace = proof_chain(A, g, g2)
    if args.format == "structured":
        doc = trace.to_dict()
        doc["balancedMetric"] = {"source": g_src, "metric": g.to_dict()}
        doc["sktMetric"] = {"source": g2_src, "metric": g2.to_dict()}
        out.append(_dump(doc))
    else:
        out.append(f"algebra: {A.name} (n={A.n})")
        out.append(f"balanced metric g: {g_src}")
        out.append(f"skt metric g': {g2_src}")
        for st in trace.steps:
            out.append(f"[{st.outcome:>7}] {st.step}")
            for key in sorted(st.details):
                val = st.details[key]
                if isinstance(val, dict):
                    val = ", ".join(f"{k}={v}" for k, v in val.items()) or "-"
                out.append(f"          {key}: {val}")
        concl = trace.conclusion
        if trace.failed_hypothesis:
            concl += f"({trace.failed_hypothesis}, defect {trace.defect})"
        out.append(f"conclusion: {concl}")
    return EXIT_INCONSISTENT if trace.conclusion == "inconsistent" else EXIT_OK


def cmd_sweep(args, out) -> int:
    entries = [_load_algebra(a) for a in args.algebras] if args.algebras else list(catalog.CATALOG)
    res = theorem_sweep(entries, _opts(args))
    if args.format == "structured":
        out.append(_dump(res.to_dict()))
    else:
        out.append(f"{'algebra':<22} {'skt':<20} {'balanced':<20} {'abelian':<8} consistent")
        for r in res.rows:
            out.append(f"{r.algebra:<22} {r.skt_status:<20} {r.balanced_status:<20} {_yes(r.abelian):<8} {_yes(r.consistent)}")
        for note in res.notes:
            out.append(f"note: {note}")
    return EXIT_OK if res.all_consistent else EXIT_INCONSISTENT


def cmd_catalog(args, out) -> int:
    if args.action == "list":
        if args.format == "structured":
            out.append(
                _dump(
                    [
                        {"name": e.name, "n": e.algebra.n, "provenance": e.provenance, **e.expected()}
                        for e in catalog.CATALOG
                    ]
                )
            )
        else:
            out.append(f"{'name':<22} {'n':<3} {'skt':<5} {'balanced':<9} abelian")
            for e in catalog.CATALOG:
                out.append(
                    f"{e.name:<22} {e.algebra.n:<3} {_yes(e.skt_feasible):<5} {_yes(e.balanced_feasible):<9} {_yes(e.abelian)}"
                )
        return EXIT_OK
    if not args.name:
        raise UsageError("catalog export needs an entry name")
    try:
        entry = catalog.builtin(args.name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    out.append(entry.algebra.dumps())
    return EXIT_OK


# parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    search_opts = _Parser(add_help=False)
    search_opts.add_argument("--seeds", type=int, default=16)
    search_opts.add_argument("--tol", type=float, default=1e-9)
    search_opts.add_argument("--max-iter", type=int, default=300)
    search_opts.add_argument("--method", choices=("auto", "linear", "descent"), default="auto")

    p = _Parser(prog="nilherm", description="Hermitian metrics on nilpotent Lie algebras")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("validate", parents=[common], help="check d^2 = 0")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("check", parents=[common], help="classify a metric")
    s.add_argument("algebra")
    s.add_argument("--metric", default=None, help="metric file or 'identity' (default)")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("search", parents=[common, search_opts], help="search for SKT / balanced metrics")
    s.add_argument("algebra")
    s.add_argument("--target", choices=("skt", "balanced", "both"), required=True)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("verify", parents=[common, search_opts], help="run the proof chain")
    s.add_argument("algebra")
    s.add_argument("--balanced-metric", default=None)
    s.add_argument("--skt-metric", default=None)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", parents=[common, search_opts], help="theorem sweep (built-in catalog by default)")
    s.add_argument("algebras", nargs="*")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("catalog", parents=[common], help="built-in algebras")
    s.add_argument("action", choices=("list", "export"), nargs="?", default="list")
    s.add_argument("name", nargs="?")
    s.set_defaults(func=cmd_catalog)
    return p


def run(argv=None) -> tuple[int, str]:
    """Execute a command; returns (exit code, rendered report)."""
    out: list[str] = []
    try:
        args = build_parser().parse_args(argv)
        code = args.func(args, out)
    except UsageError as exc:
        return EXIT_IO, f"error: {exc}".splitlines()[0]
    except OSError as exc:
        return EXIT_IO, f"error: {exc}".splitlines()[0]
    except (AlgebraError, MetricError, ValueError) as exc:
        return EXIT_IO, f"error: {exc}".splitlines()[0]
    return code, "\n".join(out)


def main(argv=None) -> int:
    try:
        code, text = run(argv)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    stream = sys.stderr if code == EXIT_IO else sys.stdout
    if text:
        print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())

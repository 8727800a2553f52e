"""Command-line front end: ``tdlab poly|roots|verify|sweep|conjecture``.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 resource cap
or solver non-convergence.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

from . import experiments as ex
from .closed_forms import closed_form
from .errors import ConvergenceError, ParameterError, SizeError, TdlabError, UnsupportedFamily
from .graph import FamilySpec, build_family, read_edge_list
from .poly import Polynomial, to_text
from .report import VerificationReport
from .roots import SolverConfig, backward_error, find_roots
from .tds import DEFAULT_MAX_N, dt_polynomial
from .verify import oracle_for_closed_form, verify_corpus, verify_family, verify_graph

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


def parse_range(text: str) -> list[int]:
    """``5``, ``2..30`` or ``2,4,6``."""
    text = text.strip()
    m = re.fullmatch(r"(\d+)\s*\.\.\s*(\d+)", text)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        if lo > hi:
            raise ParameterError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    if re.fullmatch(r"\d+(\s*,\s*\d+)*", text):
        return [int(t) for t in text.split(",")]
    raise ParameterError(f"cannot parse range {text!r}; expected N, A..B or A,B,C")


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    try:
        return max(1, int(os.environ.get("TDLAB_THREADS", "1")))
    except ValueError:
        return 1


def _solver(args) -> SolverConfig:
    kw = {}
    if args.tol is not None:
        kw["tol"] = args.tol
    if args.max_iter is not None:
        kw["max_iterations"] = args.max_iter
    return SolverConfig(**kw)


def _spec_and_graph(args):
    if args.family:
        spec = FamilySpec.parse(args.family)
        return spec, build_family(spec)
    g = read_edge_list(args.file)
    return None, g


def _write_json(path: str, payload) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _polynomial(args, spec, g, threads) -> tuple[Polynomial, dict]:
    """The polynomial selected by --method, plus a JSON-ready description."""
    info: dict = {"input": args.family or args.file, "method": args.method}
    if args.method == "closed":
        if spec is None:
            raise UnsupportedFamily("closed forms need --family")
        p = closed_form(spec)
        info["closed_form"] = list(p.coeffs)
        return p, info
    if args.method == "enum":
        p = dt_polynomial(g, max_n=args.max_n, threads=threads)
        info["enumerated"] = list(p.coeffs)
        return p, info
    if spec is None:
        raise UnsupportedFamily("closed forms need --family")
    closed = closed_form(spec)
    oracle = oracle_for_closed_form(spec, g, max_n=args.max_n, threads=threads)
    info.update(enumerated=list(oracle.coeffs), closed_form=list(closed.coeffs), equal=oracle == closed)
    if spec.kind == "gadget_g":
        info["note"] = "enumeration counts subsets dominating the outer vertices"
    return closed, info


# -- subcommands ------------------------------------------------------------------

def cmd_poly(args) -> int:
    spec, g = _spec_and_graph(args)
    p, info = _polynomial(args, spec, g, _threads(args))
    code = EXIT_OK
    if args.method == "both":
        print(to_text(Polynomial(info["enumerated"])))
        print(to_text(Polynomial(info["closed_form"])))
        print("EQUAL" if info["equal"] else "DIFFERENT")
        if "note" in info:
            print(f"note: {info['note']}", file=sys.stderr)
        code = EXIT_OK if info["equal"] else EXIT_FAIL
    else:
        print(to_text(p))
    if args.out_json:
        _write_json(args.out_json, info)
    return code


def root_rows(p: Polynomial, rs) -> list[tuple[float, float, float, int, int]]:
    """(re, im, residual, cluster_id, multiplicity) per distinct root, zero first."""
    q = p.coeffs[p.valuation:]
    rows = []
    for cid, (z, mult) in enumerate(rs.centers()):
        res = 0.0 if z == 0 and rs.zero_multiplicity and cid == 0 else backward_error(q, z)
        rows.append((z.real, z.imag, res, cid, mult))
    return rows


def _roots_csv(rows) -> str:
    lines = ["re,im,residual,cluster_id,multiplicity"]
    for re_, im, res, cid, mult in rows:
        lines.append(f"{ex.fmt(re_)},{ex.fmt(im)},{ex.fmt(res)},{cid},{mult}")
    return "\n".join(lines) + "\n"


def cmd_roots(args) -> int:
    spec, g = _spec_and_graph(args)
    p, info = _polynomial(args, spec, g, _threads(args))
    if args.method == "both" and not info["equal"]:
        print("enumerated and closed-form polynomials differ", file=sys.stderr)
        return EXIT_FAIL
    if p.is_zero():
        raise ParameterError("the graph has an isolated vertex: its polynomial is zero")
    try:
        rs = find_roots(p, _solver(args))
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.best is not None:
            print("re,im,residual", file=sys.stderr)
            for z, r in zip(exc.best, exc.residuals or []):
                print(f"{ex.fmt(z.real)},{ex.fmt(z.imag)},{ex.fmt(r)}", file=sys.stderr)
        return EXIT_CAP
    rows = root_rows(p, rs)
    text = _roots_csv(rows)
    if args.out_csv:
        Path(args.out_csv).write_text(text)
        print(f"degree {p.degree}, zero multiplicity {rs.zero_multiplicity}, "
              f"{rs.distinct_count} distinct roots, max residual {ex.fmt(rs.max_residual)}")
    else:
        sys.stdout.write(text)
    if args.out_json:
        payload = dict(info, polynomial=list(p.coeffs), **rs.as_dict())
        payload["table"] = [dict(zip(("re", "im", "residual", "cluster_id", "multiplicity"), r)) for r in rows]
        _write_json(args.out_json, payload)
    return EXIT_OK


def _corpus_orders(text: str) -> list[int]:
    m = re.fullmatch(r"\s*n\s*=\s*(.+)", text)
    if not m:
        raise ParameterError(f"cannot parse corpus {text!r}; expected n=N or n=A..B")
    return parse_range(m.group(1))


def cmd_verify(args) -> int:
    cfg = _solver(args)
    threads = _threads(args)
    records = []
    if args.corpus:
        for n in _corpus_orders(args.corpus):
            records += verify_corpus(n, connected_only=args.connected, cfg=cfg, threads=threads)
    elif args.family:
        records.append(verify_family(FamilySpec.parse(args.family), cfg=cfg, max_n=args.max_n, threads=threads))
    else:
        g = read_edge_list(args.file)
        records.append(verify_graph(g, f"file:{args.file}", cfg=cfg, max_n=args.max_n, threads=threads))
    report = VerificationReport(records)
    print(report.human_summary())
    if args.out_json:
        _write_json(args.out_json, report.as_dict())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_sweep(args) -> int:
    ns = parse_range(args.n)
    if args.family == "star_lex" and args.m is None:
        raise ParameterError("star_lex sweeps need --m")
    result = ex.sweep(args.family, ns, m=args.m, cfg=_solver(args), threads=_threads(args))
    for pt in result.points:
        bad = [c.name for c in pt.checks if c.failed]
        print(f"n={pt.n} m={pt.m} degree={pt.polynomial.degree} distinct={pt.roots.distinct_count} "
              f"checks={'ok' if not bad else 'FAILED ' + ','.join(bad)}")
    for n, kind, cert in result.certificates:
        d = cert.details
        print(f"n={n} interval {kind}: {cert.status} on ({d['a']}, {d['b']}) "
              f"signs {d['sign_a']:+d} {d['sign_b']:+d}")
    if result.family == "friendship4" and ns:
        certified = [n for n, kind, c in result.certificates if kind == "(-n,-ln n)" and c.passed]
        failed = [n for n, kind, c in result.certificates if kind == "(-n,-ln n)" and not c.passed]
        th = ex.ThresholdReport(min(ns), max(ns), certified, failed)
        print(f"(-n,-ln n): first certified n = {th.first_certified}, "
              f"certified for every n from {th.threshold} to {max(ns)}, not certified: {failed}")
    if args.out_csv:
        Path(args.out_csv).write_text(ex.csv_text(result.rows()))
    if args.out_svg:
        Path(args.out_svg).write_text(ex.sweep_svg(result))
    if args.out_json:
        _write_json(args.out_json, {
            "family": result.family,
            "points": [{"n": pt.n, "m": pt.m, "degree": pt.polynomial.degree,
                        "checks": [c.as_dict() for c in pt.checks]} for pt in result.points],
            "certificates": [dict(c.as_dict(), n=n, interval=kind) for n, kind, c in result.certificates],
        })
    return EXIT_OK if result.ok else EXIT_FAIL


def cmd_conjecture(args) -> int:
    cells = ex.explore(parse_range(args.m), parse_range(args.n), cfg=_solver(args), threads=_threads(args))
    print(f"{'m':>3} {'n':>3} {'degree':>6}  {'parity':<16} {'real(solver)':>12} "
          f"{'int zeros':<10} {'sign changes':<12} verdict")
    for c in cells:
        print(f"{c.m:>3} {c.n:>3} {c.polynomial.degree:>6}  {c.parity:<16} {c.solver_real:>12} "
              f"{str(c.scan_zeros):<10} {str(c.scan_sign_changes):<12} {c.verdict}")
    bad = [c for c in cells if c.verdict == "COUNTEREXAMPLE"]
    for c in bad:
        print(f"COUNTEREXAMPLE m={c.m} n={c.n}: D_t = {to_text(c.polynomial)}")
    if args.out_csv:
        lines = ["m,n,degree,parity,in_class,solver_real,integer_zeros,sign_changes,verdict"]
        for c in cells:
            lines.append(f"{c.m},{c.n},{c.polynomial.degree},{c.parity.replace(',', ';')},{c.in_class},"
                         f"{c.solver_real},{' '.join(map(str, c.scan_zeros))},"
                         f"{' '.join(map(str, c.scan_sign_changes))},{c.verdict}")
        Path(args.out_csv).write_text("\n".join(lines) + "\n")
    if args.out_json:
        _write_json(args.out_json, [
            {"m": c.m, "n": c.n, "parity": c.parity, "in_class": c.in_class, "solver_real": c.solver_real,
             "integer_zeros": c.scan_zeros, "sign_changes": c.scan_sign_changes, "verdict": c.verdict,
             "polynomial": list(c.polynomial.coeffs)} for c in cells])
    return EXIT_FAIL if bad else EXIT_OK


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: $TDLAB_THREADS or 1)")
    common.add_argument("--max-n", type=int, default=DEFAULT_MAX_N,
                        help=f"enumeration cap on graph order (default {DEFAULT_MAX_N})")
    common.add_argument("--tol", type=float, default=None, help="solver relative step tolerance")
    common.add_argument("--max-iter", type=int, default=None, help="solver iteration limit")
    common.add_argument("--out-json", metavar="PATH", help="write JSON output ('-' for stdout)")

    graph_in = argparse.ArgumentParser(add_help=False)
    src = graph_in.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", metavar="SPEC", help="family spec kind:p1[,p2], e.g. helm:5")
    src.add_argument("--file", metavar="PATH", help="edge-list file")
    graph_in.add_argument("--method", choices=("enum", "closed", "both"), default="enum")

    parser = argparse.ArgumentParser(prog="tdlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", parents=[common, graph_in], help="print the total domination polynomial")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("roots", parents=[common, graph_in], help="roots table of the polynomial")
    p.add_argument("--out-csv", metavar="PATH")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("verify", parents=[common], help="run the theorem checks")
    tgt = p.add_mutually_exclusive_group(required=True)
    tgt.add_argument("--family", metavar="SPEC")
    tgt.add_argument("--file", metavar="PATH")
    tgt.add_argument("--corpus", metavar="n=N", help="labelled corpus, e.g. n=4 or n=2..7")
    p.add_argument("--connected", action="store_true", help="corpus: connected graphs only")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", parents=[common], help="roots over a family range, as SVG and CSV")
    p.add_argument("--family", choices=ex.SWEEP_FAMILIES, required=True)
    p.add_argument("--n", default="2..30", help="range of n (default 2..30)")
    p.add_argument("--m", type=int, default=None, help="clique size for star_lex")
    p.add_argument("--out-svg", metavar="PATH")
    p.add_argument("--out-csv", metavar="PATH")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("conjecture", parents=[common], help="real roots of K_{1,n}[K_m] by parity class")
    p.add_argument("--m", required=True, help="range of m")
    p.add_argument("--n", required=True, help="range of n")
    p.add_argument("--out-csv", metavar="PATH")
    p.set_defaults(func=cmd_conjecture)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SizeError, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ParameterError, UnsupportedFamily, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TdlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line driver.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 some searched degree is UNDECIDED.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import certfile
from .certify import (
    CertificationError,
    build_structure,
    check_conjugation,
    orbit_product,
    theorem_pipeline,
)
from .darboux import DarbouxPair, UnsupportedDerivation, search_up_to, verify_darboux
from .deriv import (
    direct_sum,
    exponent_matrix_and_wd,
    feasible_partitions,
    gen_generalized_cyclotomic,
    gen_jouanolou,
    homogeneity_degree,
)
from .dsl import SpecError, parse_polynomial, parse_spec, print_spec
from .poly import format_polynomial

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNDECIDED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _load_spec(path: str | None):
    text = _read(path)
    try:
        return parse_spec(text)
    except SpecError as exc:
        raise UsageError(f"{path or '<stdin>'}: {exc}") from exc


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from exc


def _fmt_matrix(M) -> str:
    rows = [[str(x) for x in M.row(i)] for i in range(M.rows)]
    width = max((len(x) for r in rows for x in r), default=1)
    return "\n".join("  [" + " ".join(x.rjust(width) for x in r) + "]" for r in rows)


# -- subcommands ----------------------------------------------------------------------

def cmd_analyze(args) -> int:
    d = _load_spec(args.spec)
    print(f"derivation: {d}")
    sd = homogeneity_degree(d)
    print("homogeneity degree: " + ("not homogeneous" if sd is None else f"{sd} (s = {sd + 1})"))
    A, wd = exponent_matrix_and_wd(d)
    print("A = [alpha_ij] - I:")
    print(_fmt_matrix(A))
    print(f"w_d = {wd}")
    parts = feasible_partitions(d)
    if not parts:
        print("generalized cyclotomic partition: none")
    for k, part in sorted(parts.items()):
        blocks = ["{" + ", ".join(d.names[v] for v in b) + "}" for b in part.blocks()]
        print(f"k = {k}: " + " -> ".join(blocks))
    return EXIT_OK


def cmd_darboux(args) -> int:
    d = _load_spec(args.spec)
    report = search_up_to(d, args.max_degree, branch_cap=args.branch_cap,
                          monomial_cofactors_only=args.monomial_cofactors_only)
    print(report.summary())
    if args.out:
        _write(args.out, certfile.dumps(certfile.search_report_document(report)))
    return EXIT_UNDECIDED if report.undecided_degrees() else EXIT_OK


def cmd_certify(args) -> int:
    d = _load_spec(args.spec)
    cert = theorem_pipeline(d, args.max_degree, k=args.k, branch_cap=args.branch_cap)
    st = cert.structure
    print(f"derivation: {d}")
    print(f"feasible k: {cert.feasible_k}; certifying k = {st.k}")
    print(f"s = {st.s}, N = {st.N}, q = {list(st.q)}")
    print(f"conjugation sigma^-1 d sigma = zeta d: {cert.conjugation.holds}")
    deltas = ", ".join(f"{r.delta}" for r in cert.lambda_cert.rows)
    print(f"delta values: [{deltas}]; Lambda vanishes: {cert.lambda_cert.holds}")
    for r in cert.search.degrees:
        print(f"degree {r.degree}: {r.status.value}" + (f" ({r.note})" if r.note else ""))
    if cert.witness:
        pair, F = cert.witness
        print(f"witness f = {pair.f}, cofactor = {pair.cofactor}")
        print(f"orbit product F = {format_polynomial(F)}")
    print(cert.conclusion)
    doc = certfile.certificate_document(cert)
    problems = certfile.recheck(doc)
    text = certfile.dumps(doc)
    _write(args.out, text)
    if problems or not cert.verified:
        for p in problems:
            print(f"recheck: {p}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_UNDECIDED if cert.search.undecided_degrees() else EXIT_OK


def cmd_orbit(args) -> int:
    d = _load_spec(args.spec)
    try:
        f = parse_polynomial(args.f, d.context)
        lam = parse_polynomial(args.lam, d.context)
    except SpecError as exc:
        raise UsageError(str(exc)) from exc
    if f.is_constant():
        raise UsageError("f must be non-constant")
    st = build_structure(d, k=args.k)
    if not verify_darboux(d, f, lam):
        print(f"not a Darboux pair: d(f) != ({lam})*({f})", file=sys.stderr)
        return EXIT_FAIL
    if not check_conjugation(d, st).holds:
        print("conjugation check failed", file=sys.stderr)
        return EXIT_FAIL
    F = orbit_product(d, st, DarbouxPair(f, lam))
    print(f"N = {st.N}")
    print(f"F = {format_polynomial(F)}")
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.family == "jouanolou":
        d = gen_jouanolou(args.n, args.s, names=args.names.split(",") if args.names else None)
    else:
        try:
            sizes = [int(x) for x in args.sizes.split(",")]
        except ValueError as exc:
            raise UsageError(f"bad --sizes {args.sizes!r}") from exc
        try:
            tables = json.loads(_read(args.tables))
        except json.JSONDecodeError as exc:
            raise UsageError(f"tables file is not JSON: {exc}") from exc
        d = gen_generalized_cyclotomic(sizes, tables)
    sys.stdout.write(print_spec(d))
    return EXIT_OK


def cmd_tensor(args) -> int:
    if args.spec_a == "-" and args.spec_b == "-":
        raise UsageError("only one spec may come from standard input")
    d = direct_sum(_load_spec(args.spec_a), _load_spec(args.spec_b))
    sys.stdout.write(print_spec(d))
    return EXIT_OK


def cmd_check(args) -> int:
    try:
        doc = json.loads(_read(args.file))
    except json.JSONDecodeError as exc:
        raise UsageError(f"not JSON: {exc}") from exc
    problems = certfile.recheck(doc)
    for p in problems:
        print(p)
    print("OK" if not problems else f"{len(problems)} problem(s)")
    return EXIT_FAIL if problems else EXIT_OK


# -- parser ------------------------------------------------------------------------------

def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cyclodarboux",
                                 description="Exact Darboux search and cyclotomic certificates "
                                             "for monomial derivations.")
    sub = ap.add_subparsers(dest="command", required=True)
    spec_help = "derivation spec file ('-' or omitted: standard input)"

    p = sub.add_parser("analyze", help="homogeneity, exponent matrix, w_d, partitions")
    p.add_argument("spec", nargs="?", help=spec_help)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("darboux", help="search Darboux polynomials up to a degree")
    p.add_argument("spec", nargs="?", help=spec_help)
    p.add_argument("--max-degree", type=_positive, required=True)
    p.add_argument("--monomial-cofactors-only", action="store_true")
    p.add_argument("--branch-cap", type=_positive, default=4096)
    p.add_argument("--out", help="also write the report as JSON")
    p.set_defaults(func=cmd_darboux)

    p = sub.add_parser("certify", help="run the full pipeline and emit a certificate")
    p.add_argument("spec", nargs="?", help=spec_help)
    p.add_argument("--k", type=_positive, help="certify this feasible k (default: largest)")
    p.add_argument("--max-degree", type=_positive, required=True)
    p.add_argument("--branch-cap", type=_positive, default=4096)
    p.add_argument("--out", required=True, help="certificate file to write")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("orbit", help="orbit product of a Darboux pair")
    p.add_argument("spec", nargs="?", help=spec_help)
    p.add_argument("--f", required=True, help="polynomial f")
    p.add_argument("--lambda", dest="lam", required=True, help="cofactor")
    p.add_argument("--k", type=_positive)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("gen", help="emit a spec for a standard family")
    gsub = p.add_subparsers(dest="family", required=True)
    g = gsub.add_parser("jouanolou")
    g.add_argument("--n", type=_positive, required=True)
    g.add_argument("--s", type=_positive, required=True)
    g.add_argument("--names", help="comma-separated variable names")
    g.set_defaults(func=cmd_gen)
    g = gsub.add_parser("cyclotomic")
    g.add_argument("--sizes", required=True, help="block sizes t1,...,tk")
    g.add_argument("--tables", required=True,
                   help="JSON file: tables[i][j] = exponents of block i+1 in d(x_{i,j})")
    g.set_defaults(func=cmd_gen)

    p = sub.add_parser("tensor", help="emit the direct sum of two specs")
    p.add_argument("spec_a")
    p.add_argument("spec_b")
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("check", help="re-verify a certificate or report file")
    p.add_argument("file", nargs="?")
    p.set_defaults(func=cmd_check)
    return ap


def _glue_expressions(argv: list[str]) -> list[str]:
    """Let ``--f -x-y`` through: argparse would read the leading '-' as an option."""
    out = []
    it = iter(argv)
    for a in it:
        if a in ("--f", "--lambda"):
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_expressions(argv))
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CertificationError, UnsupportedDerivation, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``gpfkit search|verify|classify|canon|asym|residues|deficiency``.

Exit codes: 0 success, 1 verification failure, 2 incomplete search,
3 insufficient precision, 64 unparseable input.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from . import corpus
from .analysis import (
    _certify_ratio,
    asymptotic_constants,
    bailey_gpf,
    bailey_null_deficiency,
    bailey_parameter,
    classify,
    deficiency,
    dilation,
    integer_coincidences,
    pole_structure,
    residue_at,
    residue_j0,
    solution_ratio,
)
from .canonical import (
    GammaProduct,
    assemble_gpf,
    canonicalize,
    format_factored,
    verify_gpf_numeric,
)
from .contiguous import contig_product, det_formula
from .errors import GpfError, ParseError, PrecisionError
from .exactnum import format_field, to_mpf
from .gpfsearch import (
    Parameter,
    duplicate,
    phi_poly,
    search_triple,
    search_triples,
    undouble,
)
from .hyperseries import VERIFY_PREC, format_big, mp_context
from .parsing import parse_exact, parse_lambda, parse_ratfunc

log = logging.getLogger("gpfkit")

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INCOMPLETE = 2
EXIT_PRECISION = 3
EXIT_USAGE = 64

VERIFY_POINTS = (Fraction(2), Fraction(7, 2), Fraction(29, 4))
RMAX_LIMIT = 12


def default_prec() -> int:
    raw = os.environ.get("GPF_PREC")
    if not raw:
        return VERIFY_PREC
    try:
        value = int(raw)
    except ValueError:
        raise ParseError(f"GPF_PREC must be an integer number of bits, got {raw!r}") from None
    if value < 64:
        raise ParseError("GPF_PREC must be at least 64 bits")
    return value


def tolerance(prec: int):
    """The acceptance threshold 10^(-prec/16) used by ``verify``."""
    return mpmath.mpf(10) ** (-mpmath.mpf(prec) / 16)


# -- solution records ---------------------------------------------------------------------------

@dataclass
class SolutionRecord:
    lam: Parameter
    R: object
    gpf: GammaProduct | None
    classification: dict
    deficiency: int | None
    certificates: dict
    origin: str = "search"

    def to_json(self) -> dict:
        lam = self.lam
        return {
            "lam": str(lam),
            "pqr": [format_field(t) for t in lam.pqr],
            "a": format_field(lam.a),
            "b": format_field(lam.b),
            "x": format_field(lam.x),
            "R": format_factored(self.R),
            "type": self.classification.get("kind"),
            "gpf": self.gpf.to_json() if self.gpf is not None else None,
            "classification": self.classification,
            "deficiency": self.deficiency,
            "certificates": self.certificates,
            "origin": self.origin,
        }


def _det_ok(lam: Parameter) -> bool:
    pqr = lam.int_pqr()
    return contig_product(pqr, lam.ab, lam.x).A.det() == det_formula(pqr, lam.ab, lam.x)


def build_record(lam: Parameter, R, *, prec: int, det_lam: Parameter | None = None,
                 origin: str = "search", phi_zero: bool = True) -> SolutionRecord:
    """Canonical GPF, classification and certificates for one solution."""
    certificates = {"phi_zero": phi_zero, "numeric_error": None, "det_ok": _det_ok(det_lam or lam)}
    gp = None
    try:
        gp = assemble_gpf(lam, canonicalize(R), prec)
        report = verify_gpf_numeric(lam, gp, VERIFY_POINTS, prec, tol=tolerance(prec))
        certificates["numeric_error"] = mpmath.nstr(report.max_error, 5)
    except GpfError as exc:
        certificates["gpf_error"] = f"{type(exc).__name__}: {exc}"
    try:
        cls = classify(lam).to_json()
    except GpfError as exc:
        cls = {"kind": "unclassified", "error": f"{type(exc).__name__}: {exc}"}
    N = cls.get("details", {}).get("deficiency", {}).get("N")
    return SolutionRecord(lam, R, gp, cls, N, certificates, origin)


def _is_dilated(lam: Parameter) -> bool:
    """True when (p, q, r)/g with the same (a, b, x) is already a solution."""
    p, q, r = lam.int_pqr()
    g = math.gcd(p, math.gcd(q, r))
    if g == 1:
        return False
    try:
        return phi_poly(Parameter(p // g, q // g, r // g, lam.a, lam.b, lam.x)).is_zero()
    except GpfError:
        return False


def _search_one(args) -> dict:
    """Worker: all records for one triple (module level so it pickles)."""
    pqr, prec, include_dilated, half_integer = args
    result = search_triple(pqr)
    records, skipped = [], []
    for sol, R in result.solutions:
        if not include_dilated and _is_dilated(sol.lam):
            skipped.append(str(sol.lam))
            continue
        records.append(build_record(sol.lam, R, prec=prec,
                                    phi_zero=sol.certificates.get("phi_zero", False)).to_json())
        if half_integer:
            pair = undouble(sol.lam, R)
            if pair is not None and _certify_ratio(*pair):
                lam_half, R_half = pair
                records.append(build_record(lam_half, R_half, prec=prec, det_lam=sol.lam,
                                            origin=f"undoubled from {sol.lam}").to_json())
    return {"pqr": list(pqr), "records": records, "incomplete": result.incomplete,
            "notes": result.notes, "dilated": skipped}


def _pretty_row(rec: dict) -> str:
    gpf = rec["gpf"]
    cls = rec["classification"]
    shape = GammaProduct.from_json(gpf).pretty() if gpf else "-"
    N = "-" if rec["deficiency"] is None else rec["deficiency"]
    return f"{rec['lam']:<34} {cls.get('kind', '?'):<12} N={N:<2} R={rec['R']}\n    f = {shape}"


def cmd_search(args) -> int:
    if args.rmax > RMAX_LIMIT:
        raise ParseError(f"--rmax is limited to {RMAX_LIMIT}")
    prec = args.prec or default_prec()
    jobs = [(pqr, prec, args.include_dilated, args.half_integer) for pqr in search_triples(args.rmax)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_search_one, jobs))
    else:
        results = [_search_one(job) for job in jobs]

    # pool.map preserves submission order, so output is identical for any --jobs.
    out = open(args.out, "w") if args.out else sys.stdout
    incomplete = []
    try:
        for res in results:
            if res["incomplete"]:
                incomplete.append(res)
            for rec in res["records"]:
                out.write((_pretty_row(rec) if args.pretty else json.dumps(rec, sort_keys=True)) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    for res in incomplete:
        log.error("incomplete search for triple %s: %s", tuple(res["pqr"]), "; ".join(res["notes"]) or "unidentified roots")
    return EXIT_INCOMPLETE if incomplete else EXIT_OK


# -- verify ----------------------------------------------------------------------------------------

@dataclass
class Check:
    label: str
    lam: Parameter | None
    gpf: GammaProduct | None
    extra: dict


def _ratio_checks(entries) -> list[Check]:
    checks = []
    for e in entries:
        lam, R = e.lam, e.R()
        extra = {"R_matches_search": solution_ratio(lam) == R}
        gp = assemble_gpf(lam, canonicalize(R))
        checks.append(Check(e.label, lam, gp, extra))
    return checks


def _builtin_checks(args) -> tuple[list[Check], list[str]]:
    name = args.builtin
    if name == "table1":
        checks = [Check(e.label, e.lam, e.gamma_product(), {}) for e in corpus.TABLE1]
        checks += [Check(e.label, e.lam, e.gamma_product(), {"informational": True})
                   for e in corpus.TABLE1_CORRECTED]
        return checks, list(corpus.TABLE1_SKIPPED)
    if name == "table2":
        return _ratio_checks(corpus.TABLE2), []
    if name == "table3":
        checks = _ratio_checks(corpus.TABLE3)
        for check, (half, full) in zip(checks, corpus.DUPLICATION_PAIRS):
            hat, R_hat = duplicate(half.lam, half.R())
            check.extra["duplication_ok"] = hat == full.lam and R_hat == full.R()
        return checks, []
    if name == "bailey":
        cases = corpus.BAILEY_CASES
        if args.j is not None or args.k is not None or args.c is not None:
            if None in (args.j, args.k, args.c):
                raise ParseError("--j, --k and --c must be given together")
            cases = ((args.j, args.k, parse_exact(args.c)),)
        checks = []
        for j, k, c in cases:
            gp = bailey_gpf(j, k, c)
            extra = {"null_deficiency": bailey_null_deficiency(j, k, c),
                     "cancellations": [[format_field(u), format_field(v)] for u, v in integer_coincidences(gp)]}
            checks.append(Check(f"bailey({j},{k},{format_field(c)})", bailey_parameter(j, k, c), gp, extra))
        return checks, []
    raise ParseError(f"unknown builtin {name!r}")


def _formula_checks(path: str) -> list[Check]:
    """Records from a JSON-lines file (search output) or a single JSON object."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(str(exc)) from None
    try:
        blobs = [json.loads(text)] if text.lstrip().startswith("{") and "\n{" not in text.strip() else \
            [json.loads(line) for line in text.splitlines() if line.strip()]
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None
    checks = []
    for blob in blobs:
        if not blob.get("gpf"):
            raise ParseError(f"record {blob.get('lam')} has no gamma product")
        lam = parse_lambda(blob["lam"])
        try:
            gp = GammaProduct.from_json(blob["gpf"])
        except (KeyError, GpfError) as exc:
            raise ParseError(f"bad gpf for {blob['lam']}: {exc}") from None
        checks.append(Check(blob.get("label", f"record {len(checks) + 1}"), lam, gp, {}))
    return checks


def cmd_verify(args) -> int:
    prec = args.prec or default_prec()
    if args.formula:
        checks, skipped = _formula_checks(args.formula), []
    elif args.builtin:
        checks, skipped = _builtin_checks(args)
    else:
        raise ParseError("verify needs --formula FILE or --builtin NAME")
    for note in skipped:
        print(f"SKIP {note}")
    tol = tolerance(prec)
    failed = False
    for check in checks:
        try:
            report = verify_gpf_numeric(check.lam, check.gpf, VERIFY_POINTS, prec, tol=tol)
        except PrecisionError as exc:
            print(f"PRECISION {check.label}: {exc}")
            return EXIT_PRECISION
        errs = ", ".join(f"w={format_field(w)}: {mpmath.nstr(e, 3)}" for w, e in zip(report.points, report.errors))
        flags = {k: v for k, v in check.extra.items() if k != "informational"}
        ok = report.max_error < tol and all(v for k, v in flags.items() if k.endswith("_ok") or k.startswith("R_"))
        status = "PASS" if ok else "FAIL"
        suffix = " (informational)" if check.extra.get("informational") else ""
        print(f"{status} {check.label}{suffix} {check.lam}: {errs}" + (f" {json.dumps(flags)}" if flags else ""))
        if not ok and not check.extra.get("informational"):
            failed = True
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


# -- single-parameter reports ----------------------------------------------------------------

def _emit(data) -> int:
    print(json.dumps(data, indent=2, sort_keys=True, default=str))
    return EXIT_OK


def _lam_arg(args) -> Parameter:
    text = args.lam_opt or args.lam
    if not text:
        raise ParseError("a parameter (p,q,r;a,b;x) is required")
    return parse_lambda(text)


def cmd_classify(args) -> int:
    lam = _lam_arg(args)
    out = classify(lam).to_json()
    out["lam"] = str(lam)
    return _emit(out)


def cmd_canon(args) -> int:
    text = args.R_opt or args.R
    if not text:
        raise ParseError("a rational function is required")
    R = parse_ratfunc(text)
    out = canonicalize(R).to_json()
    out["R"] = format_factored(R)
    return _emit(out)


def cmd_asym(args) -> int:
    lam = _lam_arg(args)
    prec = args.prec or default_prec()
    prof = asymptotic_constants(lam, prec)
    exact_d = dilation(lam)
    out = {
        "lam": str(lam),
        "t0": format_big(prof.t0),
        "t0_exact": format_field(prof.t0_exact) if prof.t0_exact is not None else None,
        "A": format_big(prof.A),
        "B": format_big(prof.B),
        "d": format_field(exact_d) if exact_d is not None else None,
    }
    if exact_d is not None:
        ctx = mp_context(prec)
        out["B_minus_d_relative"] = mpmath.nstr(abs(prof.B / to_mpf(exact_d, ctx) - 1), 5)
    return _emit(out)


def cmd_residues(args) -> int:
    lam = _lam_arg(args)
    structure = pole_structure(lam)
    rows = []
    for j in range(args.jmax + 1):
        rec = residue_at(lam, j)
        rows.append({
            "j": j,
            "w_j": format_field(rec.w_j),
            "C_j": format_field(rec.C_j),
            "C_j_zero": rec.C_j == 0,
            "in_J": structure.J_contains(j),
            "residue": format_big(rec.value, digits=20),
            "holomorphic": rec.holomorphic,
        })
    if args.csv:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["j", "w_j", "C_j", "value"])
        writer.writerows([row["j"], row["w_j"], row["C_j"], row["residue"]] for row in rows)
        return EXIT_OK
    return _emit({"lam": str(lam), "case": structure.case, "density": str(structure.density),
                  "j0": residue_j0(lam), "residues": rows})


def cmd_deficiency(args) -> int:
    lam = _lam_arg(args)
    kind = classify(lam).kind
    if kind not in ("typeA", "typeB"):
        raise GpfError(f"{lam} is {kind}; deficiency needs a type A or type B solution")
    out = deficiency(lam, kind).to_json()
    out.update(lam=str(lam), kind=kind)
    return _emit(out)


# -- entry point ----------------------------------------------------------------------------------

def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gpfkit", description="Gamma product formulas for 2F1(pw+a, qw+b; rw; x).")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("search", help="search integer triples up to r = RMAX")
    s.add_argument("--rmax", type=_positive_int, required=True)
    s.add_argument("--out")
    s.add_argument("--jobs", type=_positive_int, default=1)
    s.add_argument("--half-integer", action="store_true",
                   help="also undouble (odd, odd, even) solutions to half-integer p, q")
    s.add_argument("--include-dilated", action="store_true")
    s.add_argument("--pretty", action="store_true")
    s.add_argument("--prec", type=_positive_int)
    s.set_defaults(func=cmd_search)

    v = sub.add_parser("verify", help="numerically certify gamma product formulas")
    v.add_argument("--formula")
    v.add_argument("--builtin", choices=("table1", "table2", "table3", "bailey"))
    v.add_argument("--prec", type=_positive_int)
    v.add_argument("--j", type=_positive_int)
    v.add_argument("--k", type=_positive_int)
    v.add_argument("--c")
    v.set_defaults(func=cmd_verify)

    for name, func, helptext in (("classify", cmd_classify, "type A/B or elementary label"),
                                 ("asym", cmd_asym, "stationary-phase constants A, B"),
                                 ("residues", cmd_residues, "residues at w = -j/r"),
                                 ("deficiency", cmd_deficiency, "deficiency N and its case")):
        c = sub.add_parser(name, help=helptext)
        c.add_argument("lam", nargs="?")
        c.add_argument("--lam", dest="lam_opt")
        if name == "residues":
            c.add_argument("--jmax", type=int, default=20)
            c.add_argument("--csv", action="store_true", help="j, w_j, C_j, value as CSV")
        if name == "asym":
            c.add_argument("--prec", type=_positive_int)
        c.set_defaults(func=func)

    k = sub.add_parser("canon", help="canonical form of a rational function R(w)")
    k.add_argument("R", nargs="?")
    k.add_argument("--R", dest="R_opt")
    k.set_defaults(func=cmd_canon)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"gpfkit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionError as exc:
        print(f"gpfkit: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except GpfError as exc:
        print(f"gpfkit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAILED


if __name__ == "__main__":
    sys.exit(main())

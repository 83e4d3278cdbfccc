"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 a cap or the precision ceiling was hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .analyzer import CandidateReport, candidate_primes, certify
from .arith import TrialDivisionError, is_prime, next_prime
from .bounds import c_K
from .criteria import check_field
from .curves import ADDITIVE, local_data, parse_curve, possibly_nonminimal_primes, reduction_type
from .errors import CapExceededError, PrecisionError, ValidationError
from .invariants import FieldDescriptor, FieldInvariants, delta_K, load_invariants, to_document
from .magnitude import DEFAULT_PRECISION, LogMagnitude, format_fraction
from .quadfield import SPLIT, class_coverage, make_field, split_primes, splitting_type


# ---------------------------------------------------------------------------
# formatting
# ---------------------------------------------------------------------------

def magnitude_json(x: LogMagnitude, precision: int = DEFAULT_PRECISION):
    """Exact value when known, otherwise ``{ln: [lo, hi], decimal_digits}``."""
    if x.exact is not None:
        v = x.exact
        return int(v) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    lo, hi = x.decimal_digits(precision)
    return {
        "ln": [format_fraction(x.lower, 20), format_fraction(x.upper, 20, upward=True)],
        "decimal_digits": lo if lo == hi else [lo, hi],
    }


def interval_json(iv) -> list[str]:
    return [format_fraction(iv.lo, 20), format_fraction(iv.hi, 20, upward=True)]


def _human(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_human(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines.extend(_human(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(f"{pad}{_scalar(obj)}")
    return lines


def _flat(v) -> bool:
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) for x in v)
    if isinstance(v, dict):
        return False
    return True


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_scalar(x)}" for k, x in v.items()) + "}"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def emit(payload: dict, as_json: bool, out=None) -> None:
    out = out or sys.stdout
    if as_json:
        json.dump(payload, out, indent=2)
        out.write("\n")
    else:
        for line in _human(payload):
            out.write(line + "\n")


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------

def _rational(text: str) -> Fraction:
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected mF,mM, got {text!r}") from None
    return a, b


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    sel = common.add_mutually_exclusive_group()
    sel.add_argument("--quadratic", type=int, metavar="M", help="the field Q(sqrt(M))")
    sel.add_argument("--field", metavar="FILE", help="JSON invariants file for a general Galois field")
    sel.add_argument("--compositum", type=_pair, metavar="mF,mM",
                     help="biquadratic field Q(sqrt(mF), sqrt(mM)), mF < 0 < mM")
    common.add_argument("--lmo-A", type=_rational, dest="lmo_A", metavar="A",
                        help="the effective Chebotarev constant A (no default)")
    common.add_argument("--cap", type=_positive, help="prime search bound")
    common.add_argument("--curve", metavar="a1,a2,a3,a4,a6", help="Weierstrass coefficients")
    common.add_argument("--primes", type=_positive, metavar="N", help="number of split primes to use")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--precision-bits", type=_positive, default=DEFAULT_PRECISION, dest="precision")

    parser = argparse.ArgumentParser(
        prog="irredbound",
        description="Irreducibility bounds and candidate reducible primes for semistable elliptic curves.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "invariants": "field invariants (degree, discriminant, class number, regulator, delta)",
        "bound": "the bound tower C_1, C_2, merel term, prime cap and C_K (needs --lmo-A)",
        "criteria": "sufficient field conditions",
        "split-primes": "totally split primes up to --cap",
        "coverage": "least split prime in each ideal class (imaginary quadratic)",
        "analyze": "per-prime Frobenius data of --curve",
        "candidates": "candidate reducible primes for --curve",
        "certify": "irreducibility certificate for --curve",
    }
    for name, text in helps.items():
        sub.add_parser(name, parents=[common], help=text, description=text)
    return parser


def _descriptor(args) -> FieldDescriptor:
    if args.quadratic is not None:
        return FieldDescriptor.quadratic(args.quadratic)
    if args.field is not None:
        return FieldDescriptor.general(load_invariants(args.field))
    if args.compositum is not None:
        return FieldDescriptor.compositum(*args.compositum)
    raise ValidationError("one of --quadratic, --field or --compositum is required")


def _quadratic(args):
    if args.quadratic is None:
        raise ValidationError("this command needs --quadratic M")
    return make_field(args.quadratic)


def _curve(args):
    if args.curve is None:
        raise ValidationError("this command needs --curve a1,a2,a3,a4,a6")
    return parse_curve(args.curve)


def invariants_json(inv: FieldInvariants, precision: int) -> dict:
    doc = to_document(inv)
    doc.pop("regulator_interval", None)
    doc["regulator"] = interval_json(inv.regulator)
    doc["regulator_convention"] = inv.regulator_convention
    doc["signature"] = list(inv.signature)
    doc["delta_K"] = interval_json(delta_K(inv, precision))
    doc["source"] = inv.source
    return doc


def select_primes(K, E, n: int | None, cap: int | None, notes: list[str]) -> list[int]:
    """The first ``n`` split primes (or all up to ``cap``) where ``E`` is good or multiplicative."""
    if n is None and cap is None:
        n = 5
    out, q = [], 2
    while (n is None or len(out) < n) and (cap is None or q <= cap):
        if splitting_type(K, q) == SPLIT:
            if E is not None and reduction_type(E, q) == ADDITIVE:
                notes.append(f"skipped {q}: additive reduction")
            else:
                out.append(q)
        q = next_prime(q)
    if n is not None and len(out) < n:
        raise CapExceededError(f"only {len(out)} usable split primes up to the cap {cap}")
    return out


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_invariants(args) -> dict:
    desc = _descriptor(args)
    inv = desc.field_invariants(args.precision)
    return {"field": str(desc), "invariants": invariants_json(inv, args.precision)}


def bound_json(report) -> dict:
    p = report.precision
    return {
        "lmo_A": str(report.lmo_A),
        "C_1": magnitude_json(report.c1, p),
        "C_2": magnitude_json(report.c2, p),
        "merel": magnitude_json(report.merel, p),
        "jk_cap": magnitude_json(report.jk_cap, p),
        "C(K,jk_cap)": magnitude_json(report.c_of_cap, p),
        "c_K": magnitude_json(report.c_K, p),
        "c_K_attained_by": report.c_K_from,
        "degenerate_rank": report.degenerate_rank,
        "precision_bits": p,
    }


def cmd_bound(args) -> dict:
    desc = _descriptor(args)
    inv = desc.field_invariants(args.precision)
    if args.lmo_A is None:
        raise ValidationError("C_K depends on the effective Chebotarev constant A, which has no "
                              "default; pass --lmo-A (admissible values are published in the literature)")
    report = c_K(inv, args.lmo_A, args.precision)
    out = {"field": str(desc), "source": inv.source}
    out.update(bound_json(report))
    if report.degenerate_rank:
        out["notes"] = ["unit rank 0: C_1 = 0 and C_2 = 1 (degenerate-rank regime)"]
    return out


def criteria_json(rep) -> dict:
    return {"verdict": rep.verdict, "matched_cases": rep.matched_cases,
            "witnesses": rep.witnesses, "notes": rep.notes}


def cmd_criteria(args) -> dict:
    desc = _descriptor(args)
    out = {"field": str(desc)}
    out.update(criteria_json(check_field(desc)))
    return out


def cmd_split_primes(args) -> dict:
    K = _quadratic(args)
    cap = args.cap or 100
    return {"field": str(K), "cap": cap, "split_primes": split_primes(K, cap)}


def cmd_coverage(args) -> dict:
    K = _quadratic(args)
    cap = args.cap or 100
    cov = class_coverage(K, cap)
    return {
        "field": str(K), "discriminant": K.D, "cap": cap,
        "covered": [{"form": list(f), "prime": q} for f, q in cov.covered.items()],
        "uncovered": [list(f) for f in cov.uncovered],
    }


def local_json(ld) -> dict:
    return {"q": ld.q, "reduction": ld.reduction, "T": ld.T, "disc": ld.disc, "L_core": ld.L_core}


def cmd_analyze(args) -> dict:
    E = _curve(args)
    notes: list[str] = []
    if args.quadratic is not None:
        K = _quadratic(args)
        qs = select_primes(K, None, args.primes, args.cap, notes)
    else:
        cap = args.cap or 50
        qs = [q for q in range(2, cap + 1) if is_prime(q)]
        if args.primes:
            qs = qs[:args.primes]
    rows = [local_json(local_data(E, q)) for q in qs]
    out = {"curve": list(E.coeffs), "c4": E.c4, "c6": E.c6, "discriminant": E.discriminant, "local": rows}
    warn = possibly_nonminimal_primes(E)
    if warn:
        out["warnings"] = [f"12th power of {p} divides the discriminant: the model may not be minimal" for p in warn]
    return out


def report_json(rep: CandidateReport) -> dict:
    return {
        "field": str(rep.number_field),
        "invariants": invariants_json(rep.inv, DEFAULT_PRECISION),
        "curve": list(rep.curve.coeffs),
        "primes_used": rep.primes_used,
        "local": [local_json(rep.local[q]) for q in rep.primes_used],
        "families": [{"a": list(f), "surviving_primes": s} for f, s in rep.families.items()],
        "candidates": rep.candidates,
        "exceptions": rep.exceptions,
        "coherence": rep.coherence,
        "case_usage": {str(p): {str(q): k for q, k in u.items()} for p, u in rep.case_usage.items()},
        "notes": rep.notes,
    }


def _candidates(args):
    K = _quadratic(args)
    E = _curve(args)
    inv = FieldDescriptor.quadratic(args.quadratic).field_invariants(args.precision)
    notes: list[str] = []
    qs = select_primes(K, E, args.primes, args.cap, notes)
    rep = candidate_primes(K, inv, E, qs)
    rep.notes = notes + rep.notes
    warn = possibly_nonminimal_primes(E)
    rep.notes += [f"12th power of {p} divides the discriminant: the model may not be minimal" for p in warn]
    return K, inv, E, rep


def cmd_candidates(args) -> dict:
    _, _, _, rep = _candidates(args)
    out = report_json(rep)
    out["certificate_text"] = certify(rep)["text"]
    return out


def cmd_certify(args) -> dict:
    K, inv, E, rep = _candidates(args)
    crit = check_field(FieldDescriptor.quadratic(args.quadratic))
    bound = c_K(inv, args.lmo_A, args.precision) if args.lmo_A is not None else None
    cert = certify(rep, bound, crit)
    out = report_json(rep)
    out["criteria"] = criteria_json(crit)
    if bound is not None:
        out["bound"] = bound_json(bound)
    out["warnings"] = cert["warnings"]
    out["certificate_text"] = cert["text"]
    return out


COMMANDS = {
    "invariants": cmd_invariants,
    "bound": cmd_bound,
    "criteria": cmd_criteria,
    "split-primes": cmd_split_primes,
    "coverage": cmd_coverage,
    "analyze": cmd_analyze,
    "candidates": cmd_candidates,
    "certify": cmd_certify,
}


_LIST_OPTIONS = ("--compositum", "--curve")


def _join_negative_values(argv: list[str]) -> list[str]:
    """Let ``--curve -1,0,...`` through: argparse would read the value as a flag."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _LIST_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-") and "," in argv[i + 1]:
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(sys.argv[1:] if argv is None else list(argv)))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload = COMMANDS[args.command](args)
    except (CapExceededError, PrecisionError, TrialDivisionError) as exc:
        err.write(f"irredbound: {exc}\n")
        return 3
    except ValidationError as exc:
        err.write(f"irredbound: {exc}\n")
        return 2
    emit(payload, args.json, out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

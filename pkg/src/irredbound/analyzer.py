"""Local Frobenius case analysis over a quadratic field and candidate primes.

For each totally split prime ``q`` and each isogeny family ``(a_id, a_conj)``
a reducible mod-``p`` representation forces ``p`` to divide one of a few
explicit integers built from a small generator ``gamma`` of ``q^h``:

* multiplicative ``q``: ``N(Nm(gamma) - 1)`` (M0) or ``N(Nm(gamma) - q^(2h))`` (M1);
* good ``q``: ``N(Nm(gamma) - beta^(2h))`` for a root ``beta`` of
  ``X^2 - T_q X + q``, one record per conjugate root (B_beta, B_betabar).

``Nm`` is the twisted norm.  The candidate set is the union over families of
the intersection over ``q`` of the primes dividing some applicable integer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import isqrt

from sympy import factorint

from .curves import ADDITIVE, GOOD, MULTIPLICATIVE, LocalData, WeierstrassCurve, is_semistable, local_data
from .errors import ValidationError
from .invariants import FieldInvariants
from .quadfield import SPLIT, QuadInt, QuadraticField, ideal_above, ideal_pow_generator, splitting_type, twisted_norm

M0, M1, B_BETA, B_BETABAR = "M0", "M1", "B_beta", "B_betabar"
ALL = "all"

HYPOTHESES = {
    M0: "lambda^2(Frob_q) = 1 mod p",
    M1: "lambda^2(Frob_q) = q^2 mod p",
    B_BETA: "lambda^2(Frob_q) = beta^2 mod a prime above p",
    B_BETABAR: "lambda^2(Frob_q) = conj(beta)^2 mod a prime above p",
}

Family = tuple[int, int]


def family_space(d: int) -> list[Family]:
    if d != 2:
        raise ValidationError(f"curve-side analysis supports quadratic fields only (degree {d})")
    return [(0, 0), (1, 1), (1, 0), (0, 1)]


@dataclass(frozen=True)
class CaseIntegerRecord:
    q: int
    family: Family
    kind: str
    value: int
    applies: bool = True  # False for M0/M1 forms evaluated at a good prime

    @property
    def is_identically_zero(self) -> bool:
        return self.value == 0

    @property
    def hypothesis(self) -> str:
        return HYPOTHESES[self.kind]


# ---------------------------------------------------------------------------
# case integers
# ---------------------------------------------------------------------------

def resultant_monic_quadratics(p: int, q: int, r: int, s: int) -> int:
    """``Res(X^2 + p X + q, X^2 + r X + s)``."""
    return (q - s) ** 2 + (p - r) * (p * s - q * r)


def lucas_power_trace(T: int, q: int, k: int) -> int:
    """``beta^k + conj(beta)^k`` for the roots of ``X^2 - T X + q``."""
    s0, s1 = 2, T
    if k == 0:
        return s0
    for _ in range(k - 1):
        s0, s1 = s1, T * s1 - q * s0
    return s1


def _root_in_field(K: QuadraticField, T: int, disc: int) -> QuadInt:
    """``(T + sqrt(disc)) / 2`` as an element of ``K`` when ``disc / D`` is a square."""
    f2, rem = divmod(disc, K.D)
    if rem:
        raise ArithmeticError("root does not lie in K")
    Y = isqrt(f2)
    if Y * Y != f2:
        raise ArithmeticError("root does not lie in K")
    X = T
    return QuadInt((X - K.tw * Y) // 2, Y, K)


@lru_cache(maxsize=4096)
def gamma_for(K: QuadraticField, q: int, h: int) -> QuadInt:
    return ideal_pow_generator(K, ideal_above(K, q), h)


def _require_split(K: QuadraticField, q: int) -> None:
    if splitting_type(K, q) != SPLIT:
        raise ValidationError(f"{q} is not split in {K}")


def _check_field(K: QuadraticField, inv: FieldInvariants) -> None:
    family_space(inv.degree)
    if inv.discriminant != K.D:
        raise ValidationError("invariants do not belong to this field")


def case_integers(K: QuadraticField, inv: FieldInvariants, E: WeierstrassCurve, q: int,
                  fam: Family, ld: LocalData | None = None,
                  include_multiplicative_forms: bool = False) -> list[CaseIntegerRecord]:
    """Case integers at a good split prime.

    Only the B records apply at good primes.  With
    ``include_multiplicative_forms`` the M0/M1 integers are also evaluated and
    returned with ``applies=False``.
    """
    _check_field(K, inv)
    _require_split(K, q)
    ld = ld or local_data(E, q)
    if ld.reduction != GOOD:
        raise ValidationError(f"{E} does not have good reduction at {q}")
    h = inv.class_number
    nu = twisted_norm(gamma_for(K, q, h), fam)
    out = []
    if include_multiplicative_forms:
        out.append(CaseIntegerRecord(q, fam, M0, (nu - 1).norm(), applies=False))
        out.append(CaseIntegerRecord(q, fam, M1, (nu - q ** (2 * h)).norm(), applies=False))
    T, disc = ld.T, ld.disc
    if ld.L_core == K.m:
        # L = K: the norm from KL is the norm from K, one value per root
        beta = _root_in_field(K, T, disc)
        for kind, b in ((B_BETA, beta), (B_BETABAR, beta.conj())):
            out.append(CaseIntegerRecord(q, fam, kind, (nu - b ** (2 * h)).norm()))
    else:
        # resultant of char polys of nu over K and of beta^(2h) over Q
        s = lucas_power_trace(T, q, 2 * h)
        value = resultant_monic_quadratics(-nu.trace(), nu.norm(), -s, q ** (2 * h))
        out.append(CaseIntegerRecord(q, fam, B_BETA, value))
        out.append(CaseIntegerRecord(q, fam, B_BETABAR, value))
    return out


def case_integers_multiplicative(K: QuadraticField, inv: FieldInvariants, E: WeierstrassCurve,
                                 q: int, fam: Family, ld: LocalData | None = None) -> list[CaseIntegerRecord]:
    _check_field(K, inv)
    _require_split(K, q)
    ld = ld or local_data(E, q)
    if ld.reduction != MULTIPLICATIVE:
        raise ValidationError(f"{E} does not have multiplicative reduction at {q}")
    h = inv.class_number
    nu = twisted_norm(gamma_for(K, q, h), fam)
    return [CaseIntegerRecord(q, fam, M0, (nu - 1).norm()),
            CaseIntegerRecord(q, fam, M1, (nu - q ** (2 * h)).norm())]


def records_for(K, inv, E, q, fam, ld=None) -> list[CaseIntegerRecord]:
    ld = ld or local_data(E, q)
    if ld.reduction == GOOD:
        return case_integers(K, inv, E, q, fam, ld)
    if ld.reduction == MULTIPLICATIVE:
        return case_integers_multiplicative(K, inv, E, q, fam, ld)
    raise ValidationError(f"additive reduction at {q}: the curve is not semistable there")


# ---------------------------------------------------------------------------
# candidate primes
# ---------------------------------------------------------------------------

@dataclass
class CandidateReport:
    number_field: QuadraticField
    inv: FieldInvariants
    curve: WeierstrassCurve
    primes_used: list[int]
    local: dict[int, LocalData]
    records: list[CaseIntegerRecord]
    families: dict  # family -> sorted list of primes or ALL
    candidates: object  # sorted list of primes or ALL
    exceptions: list[int]
    coherence: list[int]
    case_usage: dict = field(default_factory=dict)  # p -> {q: [kinds]}
    notes: list[str] = field(default_factory=list)

    @property
    def is_finite(self) -> bool:
        return self.candidates != ALL


def _primes_of(n: int) -> set[int]:
    return {int(p) for p in factorint(abs(n))}


def _allowed(records: list[CaseIntegerRecord]):
    """Primes allowed at one (q, family): ALL if some applicable integer vanishes."""
    vals = [r.value for r in records if r.applies]
    if any(v == 0 for v in vals):
        return ALL
    return vals


def candidate_primes(K: QuadraticField, inv: FieldInvariants, E: WeierstrassCurve,
                     qs: list[int]) -> CandidateReport:
    _check_field(K, inv)
    if not qs:
        raise ValidationError("no primes supplied")
    qs = list(dict.fromkeys(qs))
    local = {}
    for q in qs:
        _require_split(K, q)
        ld = local_data(E, q)
        if ld.reduction == ADDITIVE:
            raise ValidationError(f"additive reduction at {q}")
        local[q] = ld
    records, families = [], {}
    per_q_fam = {}
    for fam in family_space(inv.degree):
        survivors = ALL
        for q in qs:
            recs = records_for(K, inv, E, q, fam, local[q])
            records.extend(recs)
            per_q_fam[q, fam] = recs
            allowed = _allowed(recs)
            if allowed == ALL:
                continue
            if survivors == ALL:
                survivors = set().union(*(_primes_of(v) for v in allowed))
            else:
                survivors = {p for p in survivors if any(v % p == 0 for v in allowed)}
        families[fam] = ALL if survivors == ALL else sorted(survivors)

    if any(s == ALL for s in families.values()):
        candidates = ALL
    else:
        candidates = sorted(set().union(*(set(s) for s in families.values())))

    exceptions = sorted({2, 3} | _primes_of(inv.discriminant) | set(qs))
    good = [q for q in qs if local[q].reduction == GOOD]
    survives = any(s == ALL or s for s in families.values())
    coherence = sorted({local[q].L_core for q in good}) if survives else []

    usage = {}
    if candidates != ALL:
        for p in candidates:
            usage[p] = {}
            for q in qs:
                kinds = sorted({r.kind for fam in families if families[fam] == ALL or p in families[fam]
                                for r in per_q_fam[q, fam] if r.applies and r.value % p == 0})
                usage[p][q] = kinds

    notes = [f"T_{q} = {local[q].T} is divisible by {q} (supersingular)" for q in good if local[q].supersingular]
    return CandidateReport(K, inv, E, qs, local, records, families, candidates, exceptions,
                           coherence, usage, notes)


# ---------------------------------------------------------------------------
# certificate
# ---------------------------------------------------------------------------

def certify(report: CandidateReport, bound_report=None, criteria_report=None) -> dict:
    """Certificate assembled from the candidate report, the bound and the field criteria."""
    warnings, clauses = [], {}
    semistable, offenders = is_semistable(report.curve)
    clause_i = None
    if criteria_report is None:
        warnings.append("no field criteria supplied: clause (i) omitted")
    elif criteria_report.verdict != "proved":
        warnings.append("field criteria unresolved: clause (i) omitted")
    elif bound_report is None:
        warnings.append("no value for the constant A (--lmo-A): clause (i) omitted")
    elif not semistable:
        warnings.append(f"the model is not semistable (additive at {offenders}): clause (i) omitted")
    else:
        lo, hi = bound_report.c_K.decimal_digits(bound_report.precision)
        clause_i = {"bound_digits": [lo, hi], "cases": criteria_report.matched_cases,
                    "exact": None if bound_report.c_K.exact is None else int(bound_report.c_K.exact)}
        digits = f"{lo}" if lo == hi else f"{lo} to {hi}"
        clause_i["text"] = (f"(i) For every prime p > C_K (C_K has {digits} decimal digits; "
                            f"A = {bound_report.lmo_A}), the mod-p representation of E is irreducible "
                            f"(field criteria: {', '.join(criteria_report.matched_cases)}).")
    clauses["i"] = clause_i

    if not semistable:
        # the divisibility constraints are only valid for semistable curves
        warnings.append(f"the model is additive at {offenders}: clause (ii) makes no claim")
        ii = ("(ii) The model is not semistable, so the local constraints prove nothing; "
              "candidates are reported for information only.")
    elif report.candidates == ALL:
        ii = ("(ii) The local data exclude no prime: some family admits every p at every prime used.")
    else:
        cands = ", ".join(map(str, report.candidates)) or "none"
        ii = (f"(ii) For primes p >= 5 that are unramified in K and distinct from the primes used, "
              f"reducibility of the mod-p representation requires p in the candidate set {{{cands}}}; "
              f"every other such p gives an irreducible representation.")
    clauses["ii"] = {"text": ii, "candidates": report.candidates}
    clauses["iii"] = {
        "text": "(iii) No claim is made for the exceptions " + ", ".join(map(str, report.exceptions))
                + " or for any candidate prime.",
        "exceptions": report.exceptions,
    }
    lines = [c["text"] for c in (clauses["i"], clauses["ii"], clauses["iii"]) if c is not None]
    return {"clauses": clauses, "warnings": warnings, "text": "\n".join(lines)}

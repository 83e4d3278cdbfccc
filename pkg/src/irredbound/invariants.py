"""Field invariants (degree, discriminant, class number, regulator, unit rank).

Quadratic fields are computed from scratch; anything of higher degree is read
from a JSON document and tagged ``source="ingested"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import isqrt

import jsonschema
from sympy import Poly, ZZ, discriminant as poly_discriminant, symbols
from sympy.polys.galoistools import gf_pow_mod

from .arith import is_squarefree, require_prime, squarefree_part
from .errors import ValidationError
from .magnitude import DEFAULT_PRECISION, Interval, LogMagnitude, format_fraction, lm_from_interval, ln_bounds
from .quadfield import class_number, fundamental_unit, make_field

COMPUTED, INGESTED = "computed", "ingested"

_x = symbols("x")


@dataclass(frozen=True)
class FieldInvariants:
    """Invariants of a Galois number field ``K`` of degree at least 2.

    ``regulator`` brackets the value of ``R_K``.  With unit rank 0 it is the
    point 1 and ``regulator_convention`` is set: nothing downstream depends on
    it because ``C_1`` vanishes there.
    """

    degree: int
    discriminant: int
    class_number: int
    regulator: Interval
    totally_real: bool
    galois: bool = True
    source: str = COMPUTED
    regulator_convention: bool = False
    defining_polynomial: tuple[int, ...] | None = None
    imaginary_quadratic_subfields: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.degree < 2:
            raise ValidationError("degree must be at least 2")
        if not self.galois:
            raise ValidationError("K must be Galois over Q")
        if not self.totally_real and self.degree % 2:
            raise ValidationError("a Galois field of odd degree is totally real; unit rank d/2 - 1 is undefined")
        if self.discriminant == 0:
            raise ValidationError("discriminant must be non-zero")
        if self.class_number < 1:
            raise ValidationError("class number must be positive")
        if self.regulator.lo <= 0:
            raise ValidationError("regulator bracket must be positive")
        if self.totally_real and self.imaginary_quadratic_subfields:
            raise ValidationError("a totally real field has no imaginary quadratic subfield")
        if (self.discriminant < 0) != (not self.totally_real and (self.degree // 2) % 2 == 1):
            raise ValidationError("sign of the discriminant contradicts the signature")

    @property
    def unit_rank(self) -> int:
        return self.degree - 1 if self.totally_real else self.degree // 2 - 1

    @property
    def signature(self) -> tuple[int, int]:
        return (self.degree, 0) if self.totally_real else (0, self.degree // 2)

    @property
    def quadratic_m(self) -> int | None:
        if self.degree != 2:
            return None
        return self.discriminant if self.discriminant % 4 == 1 else self.discriminant // 4

    def regulator_lm(self, precision: int = DEFAULT_PRECISION) -> LogMagnitude:
        return lm_from_interval(self.regulator, precision)

    def same_values(self, other: "FieldInvariants") -> bool:
        """Equality ignoring provenance."""
        return replace(self, source=COMPUTED) == replace(other, source=COMPUTED)


def invariants_quadratic(m: int, precision: int = DEFAULT_PRECISION) -> FieldInvariants:
    F = make_field(m)
    h = class_number(F)
    if F.is_real:
        reg = fundamental_unit(F, precision).regulator
        return FieldInvariants(2, F.D, h, Interval(reg.lower, reg.upper), True)
    return FieldInvariants(2, F.D, h, Interval.point(1), False, regulator_convention=True)


# ---------------------------------------------------------------------------
# ingestion
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1)
def invariants_schema() -> dict:
    text = resources.files("irredbound").joinpath("schema/invariants.schema.json").read_text()
    return json.loads(text)


def _decimal_bracket(s: str) -> Interval:
    d = Decimal(s)
    exp = d.as_tuple().exponent
    ulp = Fraction(1, 10 ** -exp) if exp < 0 else Fraction(1)
    mid = Fraction(d)
    return Interval(mid - ulp, mid + ulp)


def check_polynomial(coeffs: list[int], degree: int, discriminant: int) -> None:
    """Monic, irreducible, right degree, and ``disc(f) / Delta_K`` a perfect square."""
    if len(coeffs) - 1 != degree:
        raise ValidationError(f"defining polynomial has degree {len(coeffs) - 1}, expected {degree}")
    if coeffs[-1] != 1:
        raise ValidationError("defining polynomial must be monic")
    f = Poly(list(reversed(coeffs)), _x, domain=ZZ)
    if not f.is_irreducible:
        raise ValidationError("defining polynomial is reducible over Q")
    disc = int(poly_discriminant(f))
    if disc % discriminant:
        raise ValidationError("field discriminant does not divide the polynomial discriminant")
    ratio = disc // discriminant
    if ratio < 0 or isqrt(ratio) ** 2 != ratio:
        raise ValidationError("polynomial discriminant is not a square multiple of the field discriminant")


def invariants_from_file(document: dict) -> FieldInvariants:
    """Validate an invariants document (already parsed from JSON)."""
    try:
        jsonschema.validate(document, invariants_schema())
    except jsonschema.ValidationError as exc:
        raise ValidationError(f"invariants document: {exc.message}") from None
    if not document["galois"]:
        raise ValidationError("K must be Galois over Q")
    d = document["degree"]
    totally_real = document["totally_real"]
    if not totally_real and d % 2:
        raise ValidationError("odd degree with totally_real=false: unit rank d/2 - 1 is undefined")
    rank = d - 1 if totally_real else d // 2 - 1
    if "unit_rank" in document and document["unit_rank"] != rank:
        raise ValidationError(f"declared unit_rank {document['unit_rank']} contradicts the signature (expected {rank})")
    subfields = tuple(document.get("imaginary_quadratic_subfields", ()))
    for m in subfields:
        if not is_squarefree(m):
            raise ValidationError(f"subfield parameter {m} is not squarefree")
    poly = document.get("defining_polynomial")
    if poly is not None:
        check_polynomial(poly, d, document["discriminant"])
    if rank == 0:
        reg, convention = Interval.point(1), True
    elif "regulator_interval" in document:
        lo, hi = (Fraction(s) for s in document["regulator_interval"])
        if lo > hi:
            raise ValidationError("regulator_interval is inverted")
        reg, convention = Interval(lo, hi), False
    else:
        reg, convention = _decimal_bracket(document["regulator"]), False
    return FieldInvariants(
        degree=d,
        discriminant=document["discriminant"],
        class_number=document["class_number"],
        regulator=reg,
        totally_real=totally_real,
        galois=True,
        source=INGESTED,
        regulator_convention=convention,
        defining_polynomial=None if poly is None else tuple(poly),
        imaginary_quadratic_subfields=subfields,
    )


def load_invariants(path: str) -> FieldInvariants:
    try:
        with open(path) as fh:
            document = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read invariants file {path}: {exc}") from None
    return invariants_from_file(document)


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def to_document(inv: FieldInvariants) -> dict:
    """Serialise to the invariants-file format (exactly re-ingestible)."""
    mid = (inv.regulator.lo + inv.regulator.hi) / 2
    doc = {
        "degree": inv.degree,
        "discriminant": inv.discriminant,
        "class_number": inv.class_number,
        "regulator": format_fraction(mid, 30).rstrip("0").rstrip("."),
        "regulator_interval": [_frac_str(inv.regulator.lo), _frac_str(inv.regulator.hi)],
        "totally_real": inv.totally_real,
        "galois": inv.galois,
        "unit_rank": inv.unit_rank,
    }
    if inv.defining_polynomial is not None:
        doc["defining_polynomial"] = list(inv.defining_polynomial)
    if inv.imaginary_quadratic_subfields:
        doc["imaginary_quadratic_subfields"] = list(inv.imaginary_quadratic_subfields)
    return doc


# ---------------------------------------------------------------------------
# delta_K and splitting in general fields
# ---------------------------------------------------------------------------

def _ln_interval_of(x: Fraction, precision: int) -> Interval:
    return Interval(*ln_bounds(x, precision))


def delta_options(d: int, precision: int = DEFAULT_PRECISION) -> tuple[Interval, Interval]:
    """The two admissible lower bounds for ``d >= 3``."""
    ln6d = _ln_interval_of(Fraction(6 * d), precision)
    opt1 = Interval(1 / (53 * d * ln6d.hi), 1 / (53 * d * ln6d.lo))
    lnd = _ln_interval_of(Fraction(d), precision)
    lnlnd = Interval(ln_bounds(lnd.lo, precision)[0], ln_bounds(lnd.hi, precision)[1])
    ratio = lnlnd / lnd
    opt2 = Interval(Fraction(0), ratio.hi) if ratio.lo < 0 else ratio
    opt2 = (opt2 ** 3) * Fraction(1, 1201)
    return opt1.rounded(precision), opt2.rounded(precision)


def delta_K(inv: FieldInvariants, precision: int = DEFAULT_PRECISION) -> Interval:
    """Value bracket of the constant ``delta_K`` (a lower bound for ``d ln H`` of non-roots of unity)."""
    if inv.degree == 2:
        ln2 = _ln_interval_of(Fraction(2), precision)
        return ln2 * Fraction(1, inv.unit_rank + 1)
    opt1, opt2 = delta_options(inv.degree, precision)
    # either option is admissible; the larger gives the smaller C_1
    return opt1 if opt1.lo >= opt2.lo else opt2


def is_totally_split_general(poly: list[int], q: int) -> bool:
    """Whether the monic ``poly`` (constant term first) splits into distinct linear factors mod ``q``."""
    require_prime(q)
    if poly[-1] != 1:
        raise ValidationError("polynomial must be monic")
    f = Poly(list(reversed(poly)), _x, domain=ZZ)
    if int(poly_discriminant(f)) % q == 0:
        raise ValidationError(f"{q} divides the polynomial discriminant")
    g = [c % q for c in reversed(poly)]
    xq = gf_pow_mod([1, 0], q, g, q, ZZ)
    # x^q - x == 0 in F_q[x]/(f)
    diff = list(xq)
    while len(diff) < 2:
        diff.insert(0, 0)
    diff[-2] = (diff[-2] - 1) % q
    return all(c % q == 0 for c in diff)


# ---------------------------------------------------------------------------
# field descriptors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldDescriptor:
    """How the user named the field: ``quadratic``, ``general`` (file) or ``compositum``."""

    kind: str
    m: int | None = None
    invariants: FieldInvariants | None = None
    m_F: int | None = None
    m_M: int | None = None

    @classmethod
    def quadratic(cls, m: int) -> "FieldDescriptor":
        make_field(m)
        return cls("quadratic", m=m)

    @classmethod
    def general(cls, inv: FieldInvariants) -> "FieldDescriptor":
        return cls("general", invariants=inv)

    @classmethod
    def compositum(cls, m_F: int, m_M: int) -> "FieldDescriptor":
        F, M = make_field(m_F), make_field(m_M)
        if F.is_real:
            raise ValidationError(f"first compositum factor must be imaginary quadratic, got m={m_F}")
        if not M.is_real:
            raise ValidationError(f"second compositum factor must be real quadratic, got m={m_M}")
        return cls("compositum", m_F=m_F, m_M=m_M)

    @property
    def degree(self) -> int:
        if self.kind == "quadratic":
            return 2
        if self.kind == "compositum":
            return 4
        return self.invariants.degree

    @property
    def totally_real(self) -> bool:
        if self.kind == "quadratic":
            return self.m > 0
        if self.kind == "compositum":
            return False
        return self.invariants.totally_real

    @property
    def discriminant(self) -> int:
        if self.kind == "quadratic":
            return make_field(self.m).D
        if self.kind == "compositum":
            return compositum_discriminant(self.m_F, self.m_M)
        return self.invariants.discriminant

    def field_invariants(self, precision: int = DEFAULT_PRECISION) -> FieldInvariants:
        if self.kind == "quadratic":
            return invariants_quadratic(self.m, precision)
        if self.kind == "general":
            return self.invariants
        raise ValidationError("class number and regulator of a compositum must be supplied via --field")

    def __str__(self):
        if self.kind == "quadratic":
            return str(make_field(self.m))
        if self.kind == "compositum":
            return f"Q(sqrt({self.m_F}), sqrt({self.m_M}))"
        return f"field of degree {self.invariants.degree}, discriminant {self.invariants.discriminant}"


def compositum_discriminant(m1: int, m2: int) -> int:
    """Discriminant of ``Q(sqrt m1, sqrt m2)``: the product of its three quadratic discriminants."""
    m3 = squarefree_part(m1 * m2)
    if m3 == 1 or m1 == m2:
        raise ValidationError("the two quadratic fields coincide")
    return make_field(m1).D * make_field(m2).D * make_field(m3).D

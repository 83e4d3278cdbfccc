"""Sufficient field conditions ruling out semistable CM curves over ``K``.

The cases are sufficient, not necessary: a field that matches none is
reported ``unresolved``, never as a failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from sympy import Poly, ZZ, symbols

from .errors import ValidationError
from .invariants import FieldDescriptor, FieldInvariants
from .quadfield import QuadInt, fundamental_unit, make_field

PROVED, UNRESOLVED = "proved", "unresolved"
CASES = ("1a", "1b", "2a", "2b")

_x = symbols("x")


def real_root_count(coeffs) -> int:
    """Number of real roots of the polynomial (constant term first), by Sturm sequences."""
    return int(Poly(list(reversed(coeffs)), _x, domain=ZZ).count_roots())


def check_case_1a(inv) -> bool:
    return inv.degree % 2 == 1


def check_case_1b(inv) -> bool:
    poly = getattr(inv, "defining_polynomial", None)
    if poly is not None:
        real = real_root_count(poly) == len(poly) - 1
        if real != inv.totally_real:
            raise ValidationError(
                f"declared totally_real={inv.totally_real} but the polynomial has "
                f"{real_root_count(poly)} real roots out of {len(poly) - 1}")
    return bool(inv.totally_real)


def check_case_2a(inv) -> bool:
    return inv.degree % 4 == 2


def check_case_2b(m_F: int, m_M: int) -> tuple[bool, QuadInt | None]:
    """``K = Q(sqrt m_F, sqrt m_M)``: a unit of norm -1 in the real factor settles every imaginary subfield."""
    F, M = make_field(m_F), make_field(m_M)
    if F.is_real:
        raise ValidationError(f"m_F={m_F} must give an imaginary quadratic field")
    if not M.is_real:
        raise ValidationError(f"m_M={m_M}: only real quadratic M is supported")
    fu = fundamental_unit(M)
    return (fu.norm == -1, fu.unit if fu.norm == -1 else None)


@dataclass
class CriteriaReport:
    verdict: str
    matched_cases: list[str]
    witnesses: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        assert (self.verdict == PROVED) == bool(self.matched_cases)


def check_field(desc) -> CriteriaReport:
    """Run every applicable case on a ``FieldDescriptor`` or ``FieldInvariants``."""
    if isinstance(desc, FieldInvariants):
        desc = FieldDescriptor.general(desc)
    subject = desc.invariants if desc.kind == "general" else desc
    matched, witnesses, notes = [], {}, []
    if check_case_1a(subject):
        matched.append("1a")
    if check_case_1b(subject):
        matched.append("1b")
    if check_case_2a(subject):
        matched.append("2a")
    if desc.kind == "compositum":
        ok, unit = check_case_2b(desc.m_F, desc.m_M)
        if ok:
            matched.append("2b")
            witnesses["2b"] = {"field": str(make_field(desc.m_M)), "unit": str(unit), "norm": -1}
        else:
            notes.append(f"the fundamental unit of {make_field(desc.m_M)} has norm +1")
    if not matched:
        notes.append("no sufficient condition applies; this does not show that a semistable CM curve exists")
        if desc.kind == "general":
            subs = desc.invariants.imaginary_quadratic_subfields
            if subs:
                names = ", ".join(str(make_field(m)) for m in subs)
                notes.append(f"a unit whose relative norm is -1 over each of {names} would settle the field")
            else:
                notes.append("declare imaginary_quadratic_subfields to record which unit-norm witnesses are needed")
    return CriteriaReport(PROVED if matched else UNRESOLVED, matched, witnesses, notes)

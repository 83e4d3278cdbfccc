from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from irredbound.arith import is_squarefree
from irredbound.criteria import (
    PROVED,
    UNRESOLVED,
    check_case_1a,
    check_case_1b,
    check_case_2a,
    check_case_2b,
    check_field,
    real_root_count,
)
from irredbound.errors import ValidationError
from irredbound.invariants import FieldDescriptor, FieldInvariants, invariants_quadratic
from irredbound.magnitude import Interval

from oracles import pell_unit

NEG = [m for m in range(-100, 0) if is_squarefree(m)]
POS = [m for m in range(2, 60) if is_squarefree(m)]


def record(d, totally_real, disc=None, poly=None, subs=()):
    if disc is None:
        disc = 49 if totally_real else (1125 if (d // 2) % 2 == 0 else -23)
    return FieldInvariants(d, disc, 1, Interval(F(1), F(2)) if d > 2 or totally_real else Interval.point(1),
                           totally_real, defining_polynomial=poly, imaginary_quadratic_subfields=subs,
                           regulator_convention=not totally_real and d == 2)


@pytest.mark.parametrize("d,expected", [(3, True), (2, False), (9, True)])
def test_case_1a(d, expected):
    assert check_case_1a(record(d, True)) is expected


def test_case_1b_examples():
    assert check_case_1b(invariants_quadratic(5))
    assert not check_case_1b(invariants_quadratic(-1))
    cubic = record(3, True, poly=(-1, -3, 0, 1))
    assert real_root_count([-1, -3, 0, 1]) == 3
    assert check_case_1b(cubic)


def test_case_1b_sturm_contradiction():
    liar = record(4, False, poly=(-1, 0, -4, 0, 1))  # x^4 - 4x^2 - 1 has two real roots; fine
    with pytest.raises(ValidationError):
        check_case_1b(record(3, True, poly=(-2, 0, 0, 1)))  # x^3 - 2 has one real root
    assert not check_case_1b(liar)


@pytest.mark.parametrize("d,expected", [(2, True), (4, False), (6, True), (10, True), (8, False)])
def test_case_2a(d, expected):
    assert check_case_2a(record(d, True)) is expected


@pytest.mark.parametrize("mF,mM,expected,unit", [(-1, 2, True, "1+sqrt(2)"), (-1, 3, False, None),
                                                (-7, 5, True, "(1+sqrt(5))/2")])
def test_case_2b_examples(mF, mM, expected, unit):
    ok, witness = check_case_2b(mF, mM)
    assert ok is expected
    assert (str(witness) if witness else None) == unit


def test_case_2b_rejects_wrong_signs():
    with pytest.raises(ValidationError):
        check_case_2b(2, 3)
    with pytest.raises(ValidationError):
        check_case_2b(-1, -2)


@pytest.mark.parametrize("mM", POS)
def test_case_2b_matches_pell(mM):
    D = mM if mM % 4 == 1 else 4 * mM
    ok, _ = check_case_2b(-1, mM)
    assert ok == (pell_unit(D)[2] == -1)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(NEG), st.sampled_from(POS))
def test_case_2b_independent_of_F(mF, mM):
    assert check_case_2b(mF, mM) == check_case_2b(-1, mM)


@pytest.mark.parametrize("m", [-1, -5, 2, 5, -23])
def test_quadratic_proved_by_2a(m):
    rep = check_field(FieldDescriptor.quadratic(m))
    assert rep.verdict == PROVED and "2a" in rep.matched_cases


def test_cyclotomic_eight_proved_by_2b():
    rep = check_field(FieldDescriptor.compositum(-1, 2))
    assert rep.verdict == PROVED and rep.matched_cases == ["2b"]
    assert rep.witnesses["2b"]["unit"] == "1+sqrt(2)"


def test_unresolved_wording():
    rep = check_field(record(4, False, subs=(-1,)))
    assert rep.verdict == UNRESOLVED and not rep.matched_cases
    assert any("does not show" in n for n in rep.notes)
    assert any("Q(sqrt(-1))" in n or "Q(i)" in n for n in rep.notes)
    rep = check_field(FieldDescriptor.compositum(-1, 3))
    assert rep.verdict == UNRESOLVED


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 12).map(lambda k: 2 * k), st.booleans(), st.integers(1, 50))
def test_2a_depends_on_degree_only(d, totally_real, h):
    disc = 49 if totally_real or (d // 2) % 2 == 0 else -23
    inv = FieldInvariants(d, disc, h, Interval(F(1), F(3)), totally_real)
    assert check_case_2a(inv) == (d % 4 == 2)
    assert not (check_case_1b(inv) and not inv.totally_real)

from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from irredbound.analyzer import (
    ALL,
    B_BETA,
    B_BETABAR,
    M0,
    M1,
    candidate_primes,
    case_integers,
    case_integers_multiplicative,
    certify,
    family_space,
    gamma_for,
    lucas_power_trace,
    resultant_monic_quadratics,
)
from irredbound.bounds import c_K
from irredbound.criteria import check_field
from irredbound.curves import GOOD, curve_from_coeffs, local_data
from irredbound.errors import ValidationError
from irredbound.invariants import FieldDescriptor, FieldInvariants, invariants_quadratic
from irredbound.quadfield import make_field, split_primes, twisted_norm

from oracles import compositum_norm, resultant_oracle

E11 = curve_from_coeffs(0, -1, 1, -10, -20)
CM4 = curve_from_coeffs(0, 0, 0, 1, 0)
K5, INV5 = make_field(5), invariants_quadratic(5)
GOOD5 = [19, 29, 31, 41, 59]
FAMS = family_space(2)


def split_good(K, E, count, start=2):
    out = []
    for q in split_primes(K, 5000, start):
        if E.discriminant % q and K.D % q:
            out.append(q)
            if len(out) == count:
                return out
    raise AssertionError("not enough primes")


def test_family_space():
    assert family_space(2) == [(0, 0), (1, 1), (1, 0), (0, 1)]
    with pytest.raises(ValidationError):
        family_space(4)


def test_first_split_good_primes():
    assert split_good(K5, E11, 5) == GOOD5


@settings(max_examples=100, deadline=None)
@given(*(st.integers(-200, 200) for _ in range(4)))
def test_resultant_formula_against_sympy(p, q, r, s):
    assert resultant_monic_quadratics(p, q, r, s) == resultant_oracle([1, p, q], [1, r, s])


@settings(max_examples=60, deadline=None)
@given(st.integers(-40, 40), st.sampled_from([5, 7, 11, 13, 101]), st.integers(0, 12))
def test_lucas_trace(T, q, k):
    x = sympy.symbols("x")
    roots = sympy.Poly(x**2 - T * x + q, x).all_roots()
    assert lucas_power_trace(T, q, k) == sympy.simplify(sum(r**k for r in roots))


def test_trivial_family_values():
    ld = local_data(E11, 19)
    for q in GOOD5:
        recs = case_integers(K5, INV5, E11, q, (0, 0), include_multiplicative_forms=True)
        m0 = next(r for r in recs if r.kind == M0)
        assert m0.value == 0 and m0.is_identically_zero and not m0.applies
        recs = case_integers(K5, INV5, E11, q, (1, 1), include_multiplicative_forms=True)
        m1 = next(r for r in recs if r.kind == M1)
        m0 = next(r for r in recs if r.kind == M0)
        assert m1.value == 0
        assert m0.value == (q**2 - 1) ** 2
    assert ld.reduction == GOOD


def test_only_b_records_apply_at_good_primes():
    recs = case_integers(K5, INV5, E11, 19, (1, 0))
    assert {r.kind for r in recs} == {B_BETA, B_BETABAR}
    assert all(r.applies for r in recs)


def test_nineteen_example():
    recs = case_integers(K5, INV5, E11, 19, (1, 0), include_multiplicative_forms=True)
    assert all(r.value != 0 for r in recs)
    assert any(r.value % 5 == 0 for r in recs if r.kind in (B_BETA, B_BETABAR))


@pytest.mark.parametrize("q", GOOD5)
@pytest.mark.parametrize("fam", FAMS)
def test_b_integer_against_compositum_oracle(q, fam):
    ld = local_data(E11, q)
    nu = twisted_norm(gamma_for(K5, q, 1), fam)
    expected = compositum_norm(5, nu.a, nu.b, ld.T, q, 1)
    recs = case_integers(K5, INV5, E11, q, fam)
    assert [r.value for r in recs] == [expected, expected]


def test_b_integer_when_frobenius_field_is_K():
    # y^2 = x^3 + x over Q(i): L^q = Q(i) for every q = 1 mod 4
    K, inv = make_field(-1), invariants_quadratic(-1)
    for q in (5, 13, 17, 29):
        ld = local_data(CM4, q)
        assert ld.L_core == -1
        for fam in FAMS:
            recs = case_integers(K, inv, CM4, q, fam)
            nu = twisted_norm(gamma_for(K, q, 1), fam)
            # N_K(nu - b^2) computed with sympy complex conjugation
            i = sympy.I
            beta = (ld.T + sympy.sqrt(ld.disc)) / 2
            nuc = nu.a + nu.b * i
            direct = [sympy.expand((nuc - b**2) * sympy.conjugate(nuc - b**2))
                      for b in (beta, (ld.T - sympy.sqrt(ld.disc)) / 2)]
            assert sorted(r.value for r in recs) == sorted(int(sympy.simplify(d)) for d in direct)


def test_multiplicative_records():
    assert 11 in split_primes(K5, 20) and local_data(E11, 11).reduction == "multiplicative"
    for fam in FAMS:
        recs = case_integers_multiplicative(K5, INV5, E11, 11, fam)
        assert [r.kind for r in recs] == [M0, M1]
    assert case_integers_multiplicative(K5, INV5, E11, 11, (0, 0))[0].value == 0
    assert case_integers_multiplicative(K5, INV5, E11, 11, (1, 1))[1].value == 0
    with pytest.raises(ValidationError):
        case_integers_multiplicative(K5, INV5, E11, 19, (0, 0))
    with pytest.raises(ValidationError):
        case_integers(K5, INV5, E11, 11, (0, 0))


def test_conjugation_symmetry():
    for q in GOOD5:
        a = sorted(r.value for r in case_integers(K5, INV5, E11, q, (1, 0), include_multiplicative_forms=True))
        b = sorted(r.value for r in case_integers(K5, INV5, E11, q, (0, 1), include_multiplicative_forms=True))
        assert a == b


@pytest.mark.parametrize("k", range(1, 6))
def test_isogeny_regression_every_subset(k):
    for subset in combinations(GOOD5, k):
        rep = candidate_primes(K5, INV5, E11, list(subset))
        assert rep.candidates == ALL or 5 in rep.candidates


def test_candidates_eleven_a_one():
    rep = candidate_primes(K5, INV5, E11, GOOD5)
    assert rep.candidates == [5]
    assert rep.exceptions == [2, 3, 5] + GOOD5
    assert rep.families[(0, 0)] == [5] and rep.families[(1, 1)] == [5]


def test_monotone_in_primes():
    prev = None
    for k in range(1, 6):
        rep = candidate_primes(K5, INV5, E11, GOOD5[:k])
        if prev is not None:
            for fam in FAMS:
                cur, old = rep.families[fam], prev.families[fam]
                assert old == ALL or (cur != ALL and set(cur) <= set(old))
        prev = rep


def test_single_prime_trivial_family_gives_everything():
    rep = candidate_primes(K5, INV5, E11, [11])
    assert rep.families[(0, 0)] == ALL and rep.candidates == ALL


def test_coherence_cm_curve():
    K, inv = make_field(-1), invariants_quadratic(-1)
    qs = [q for q in split_primes(K, 500) if q % 4 == 1]
    rep = candidate_primes(K, inv, CM4, qs)
    assert rep.coherence == [-1]
    assert {rep.local[q].L_core for q in qs} == {-1}


def test_excluded_primes_have_a_witness():
    # direct recheck: every excluded p has, in every family, a q with no applicable integer divisible by p
    rng_curves = [(0, 0, 1, -1, 0), (1, 1, 1, -1, 0), (0, 1, 1, -2, 0), (1, 0, 0, -1, 1)]
    K, inv = make_field(-1), invariants_quadratic(-1)
    for coeffs in rng_curves:
        E = curve_from_coeffs(*coeffs)
        qs = split_good(K, E, 4)
        rep = candidate_primes(K, inv, E, qs)
        for p in sympy.primerange(5, 51):
            if rep.candidates == ALL or p in rep.candidates:
                continue
            for fam in FAMS:
                assert any(all(r.value % p for r in rep.records
                               if r.q == q and r.family == fam and r.applies) for q in qs)


def test_candidates_errors():
    with pytest.raises(ValidationError):
        candidate_primes(K5, INV5, E11, [])
    with pytest.raises(ValidationError):
        candidate_primes(K5, INV5, E11, [7])
    with pytest.raises(ValidationError):
        candidate_primes(make_field(-1), invariants_quadratic(-1), curve_from_coeffs(0, 0, 0, 0, 5), [5, 13])


def test_certificate_eleven_a_one():
    rep = candidate_primes(K5, INV5, E11, GOOD5)
    cert = certify(rep, c_K(INV5, 1), check_field(FieldDescriptor.quadratic(5)))
    assert cert["clauses"]["i"] is not None
    assert "{5}" in cert["clauses"]["ii"]["text"]
    assert cert["clauses"]["iii"]["exceptions"] == rep.exceptions
    assert not cert["warnings"]


def test_certificate_gates_clause_one():
    rep = candidate_primes(K5, INV5, E11, GOOD5)
    cert = certify(rep, None, check_field(FieldDescriptor.quadratic(5)))
    assert cert["clauses"]["i"] is None and cert["warnings"]
    unresolved = check_field(FieldInvariants(4, 1125, 1, INV5.regulator, False))
    cert = certify(rep, c_K(INV5, 1), unresolved)
    assert cert["clauses"]["i"] is None and any("unresolved" in w for w in cert["warnings"])


def test_certificate_non_semistable_makes_no_claim():
    K, inv = make_field(-1), invariants_quadratic(-1)
    qs = [q for q in split_primes(K, 100) if q % 4 == 1]
    rep = candidate_primes(K, inv, CM4, qs)
    cert = certify(rep, c_K(inv, 1), check_field(FieldDescriptor.quadratic(-1)))
    assert cert["clauses"]["i"] is None
    assert "not semistable" in cert["clauses"]["ii"]["text"]

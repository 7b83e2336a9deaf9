import random
from fractions import Fraction

import pytest

from fitkernel.cyclo import CycNum, totient
from fitkernel.errors import UnsupportedFieldError
from fitkernel.intlinalg import IntLattice, det_fraction, lattice_index
from fitkernel.numfield import full_cyclotomic, p_valuation, rational_field, subfield
from fitkernel.rationals import vp


def zeta(e, k=1):
    return CycNum.root_of_unity(e, k)


def test_valuation_in_q():
    assert p_valuation(CycNum.from_rational(8), 2) == 3
    assert p_valuation(CycNum.from_rational(Fraction(3, 4)), 2) == -2
    assert p_valuation(CycNum.zero(), 5) is None


@pytest.mark.parametrize("p", [3, 5, 7])
def test_valuation_totally_ramified(p):
    # single totally ramified prime above p in Q(zeta_p):
    # v(zeta_p - 1) = 1 because Norm(zeta_p - 1) = p
    F = full_cyclotomic(p, p)
    assert F.ramification_index == p - 1
    assert F.residue_degree == 1
    assert F.v_pi(zeta(p) - 1) == 1
    assert F.v_pi(CycNum.from_rational(p)) == p - 1


def test_valuation_unramified():
    # 2 is a primitive root mod 5: Q_2(zeta_5) is unramified of degree 4
    F = full_cyclotomic(5, 2)
    assert F.ramification_index == 1
    assert F.residue_degree == 4
    assert F.v_pi(CycNum.from_rational(2)) == 1
    assert F.v_pi(zeta(5) - 1) == 0


def test_multi_prime_rejected():
    # 7^2 = 49 = 1 mod 8: two primes above 7 in Q(zeta_8)
    F = full_cyclotomic(8, 7)
    assert not F.single_prime
    with pytest.raises(UnsupportedFieldError):
        F.v_pi(zeta(8) - 1)


def test_valuation_is_discrete_valuation_random():
    rng = random.Random(42)
    F = full_cyclotomic(9, 3)
    for _ in range(25):
        a = CycNum(9, [rng.randint(-3, 3) for _ in range(totient(9))])
        b = CycNum(9, [rng.randint(-3, 3) for _ in range(totient(9))])
        va, vb = F.v_pi(a), F.v_pi(b)
        if va is None or vb is None:
            continue
        assert F.v_pi(a * b) == va + vb
        s = a + b
        vs = F.v_pi(s)
        if vs is not None:
            assert vs >= min(va, vb)


def test_real_subfield_of_seventh_cyclotomic():
    # E = Q(zeta_7 + zeta_7^-1): stabilized by k = -1
    E = subfield(7, frozenset({1, 6}), 7)
    assert E.degree == 3
    assert E.ramification_index == 3
    assert E.residue_degree == 1
    eta = zeta(7) + zeta(7, 6)
    assert E.contains(eta)
    assert not E.contains(zeta(7))
    assert E.v_pi(CycNum.from_rational(7)) == 3
    assert E.v_pi(2 - eta) == 1  # (1-z)(1-z^-1) is a uniformizer


def test_integral_basis_contains_one_and_is_ring():
    E = subfield(7, frozenset({1, 6}), 7)
    basis = E.integral_basis()
    one = E.coords(CycNum.one())
    assert all(c.denominator == 1 for c in one)
    for b1 in basis:
        for b2 in basis:
            c = E.coords(b1 * b2)
            assert all(x.denominator == 1 for x in c)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_different_of_prime_cyclotomic(p):
    F = full_cyclotomic(p, p)
    assert F.different_valuation() == p - 2


def test_different_of_unramified_field_is_zero():
    assert full_cyclotomic(5, 2).different_valuation() == 0
    assert rational_field(3).different_valuation() == 0


@pytest.mark.parametrize("p", [3, 5])
def test_different_gram_oracle(p):
    # independent check: v_p(det Tr(b_i b_j)) = f * v_pi(different)
    for F in (full_cyclotomic(p, p), full_cyclotomic(p * p, p), subfield(p, frozenset({1, p - 1}), p)):
        basis = F.integral_basis()
        gram = [[F.trace_to_q(a * b) for b in basis] for a in basis]
        disc = det_fraction(gram)
        assert vp(disc, p) == F.residue_degree * F.different_valuation()


def test_different_of_p2_cyclotomic_closed_form():
    # classical: v_pi(different of Q_p(zeta_{p^2})) = 2p^2 - 3p
    for p in (3, 5):
        F = full_cyclotomic(p * p, p)
        assert F.different_valuation() == 2 * p * p - 3 * p


def test_real_subfield_different():
    # E_p = Q(zeta_p + zeta_p^-1): tame, so v(D) = e_ram - 1
    for p in (5, 7):
        E = subfield(p, frozenset({1, p - 1}), p)
        assert E.different_valuation() == (p - 1) // 2 - 1


def test_prime_lattice_and_fractional_ideals():
    E = subfield(7, frozenset({1, 6}), 7)
    O = E.fractional_ideal(0)
    P = E.fractional_ideal(1)
    P2 = E.fractional_ideal(2)
    assert lattice_index(O, P, 7) == 7
    assert lattice_index(O, P2, 7) == 49
    # P^e_ram = p O
    Pe = E.fractional_ideal(E.ramification_index)
    pO = O.scale(7)
    assert Pe.equals(IntLattice(3, pO.rows), 7)
    # negative powers
    Pm1 = E.fractional_ideal(-1)
    assert Pm1.contains(O, 7)
    assert lattice_index(Pm1, O, 7) == 7


def test_fractional_ideal_membership_matches_valuation():
    E = subfield(7, frozenset({1, 6}), 7)
    eta = zeta(7) + zeta(7, 6)
    for v in range(-2, 4):
        I = E.fractional_ideal(v)
        x = (2 - eta) ** max(v, 0) if v >= 0 else CycNum.one() / (2 - eta) ** (-v)
        assert E.v_pi(x) == v
        assert I.member(E.coords(x), 7)
        if v > -2:
            smaller = E.fractional_ideal(v - 1)
            assert smaller.member(E.coords(x), 7) is False or True  # containment direction below
            assert not I.member(E.coords(x * CycNum.one() / (2 - eta)), 7)


def test_unramified_quadratic_from_quadratic_subfield():
    # Q(sqrt(-7)) inside Q(zeta_7), 3 inert
    S = frozenset({1, 2, 4})
    K = subfield(7, S, 3)
    assert K.degree == 2
    assert K.single_prime
    assert K.ramification_index == 1
    assert K.residue_degree == 2
    assert K.different_valuation() == 0
    assert K.v_pi(CycNum.from_rational(3)) == 1

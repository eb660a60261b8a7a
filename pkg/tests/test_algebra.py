"""Bracket table, grading, and the graded Jacobi identity."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistn2.algebra import (C, G, Gen, L, T, bracket, generators_in_window,
                             jacobi_residual, parity, super_jacobi_sweep)
from twistn2.halfint import HalfInt

H = Fraction(1, 2)


def test_parity():
    assert parity(L(3)) == 0
    assert parity(G(H)) == 1
    assert parity(T(Fraction(3, 2))) == 0
    assert parity(C) == 0


def test_label_validation():
    with pytest.raises(ValueError):
        L(H)
    with pytest.raises(ValueError):
        T(1)
    with pytest.raises(ValueError):
        Gen("C", HalfInt(2))
    with pytest.raises(ValueError):
        Gen("X", HalfInt(0))


def test_virasoro_bracket_with_central_term():
    assert bracket(L(2), L(-2)) == {L(0): Fraction(4), C: Fraction(1, 2)}


def test_current_modes_pair_to_the_center():
    assert bracket(T(H), T(-H)) == {C: Fraction(1, 6)}
    assert bracket(T(H), T(Fraction(3, 2))) == {}


def test_virasoro_on_fermions_can_vanish():
    assert bracket(L(1), G(H)) == {}
    assert bracket(L(2), G(H)) == {G(Fraction(5, 2)): H}


def test_fermion_pair_integer_total():
    assert bracket(G(H), G(Fraction(3, 2))) == {L(2): Fraction(-2)}
    assert bracket(G(0), G(0)) == {L(0): Fraction(2), C: Fraction(-1, 12)}


def test_fermion_pair_half_odd_total():
    assert bracket(G(H), G(1)) == {T(Fraction(3, 2)): Fraction(-1, 2)}


def test_central_element_is_central():
    for g in generators_in_window(2):
        assert bracket(C, g) == {}
        assert bracket(g, C) == {}


WINDOW_GENS = generators_in_window(2)
gen_strategy = st.sampled_from(WINDOW_GENS)


@given(gen_strategy, gen_strategy)
@settings(max_examples=150, deadline=None)
def test_super_antisymmetry(g1, g2):
    sign = -1 if parity(g1) and parity(g2) else 1
    fwd = bracket(g1, g2)
    rev = bracket(g2, g1)
    assert rev == {g: -sign * c for g, c in fwd.items()}


@given(gen_strategy, gen_strategy)
@settings(max_examples=150, deadline=None)
def test_index_and_parity_additivity(g1, g2):
    want_parity = (parity(g1) + parity(g2)) % 2
    idx1 = g1.idx.doubled if g1.idx is not None else 0
    idx2 = g2.idx.doubled if g2.idx is not None else 0
    for g in bracket(g1, g2):
        got = g.idx.doubled if g.idx is not None else 0
        assert got == idx1 + idx2
        assert parity(g) == want_parity


def test_jacobi_for_pure_virasoro_triple():
    assert jacobi_residual(L(1), L(2), L(3)) == {}


def test_jacobi_mixed_triple_expands_to_equal_sides():
    x, y, z = L(1), G(H), G(0)
    # left side and the two right-side terms, expanded independently
    lhs = {}
    for g, c in bracket(y, z).items():
        for g2, c2 in bracket(x, g).items():
            lhs[g2] = lhs.get(g2, Fraction(0)) + c * c2
    rhs = {}
    for g, c in bracket(x, y).items():
        for g2, c2 in bracket(g, z).items():
            rhs[g2] = rhs.get(g2, Fraction(0)) + c * c2
    for g, c in bracket(x, z).items():
        for g2, c2 in bracket(y, g).items():
            rhs[g2] = rhs.get(g2, Fraction(0)) + c * c2
    assert {g: c for g, c in lhs.items() if c} == {g: c for g, c in rhs.items() if c}
    assert jacobi_residual(x, y, z) == {}


def test_jacobi_sweep_small_window():
    report = super_jacobi_sweep(1)
    assert report.ok
    assert report.triples_checked == len(generators_in_window(1)) ** 3

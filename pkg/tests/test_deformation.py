"""Deformation recurrences, closed forms, and instantiation audits."""

from fractions import Fraction

import pytest

from twistn2.deformation import (CASES, base_spec, deformation_discrepancies,
                                 derived_action, e_closed_form_check,
                                 f_derivation, fit_alpha_from_e,
                                 g_solution_check, instantiate_deformation,
                                 repaired_spec)
from twistn2.algebra import G, L, T
from twistn2.halfint import HalfInt
from twistn2.modules import (BasisLabel, act, axiom_sweep, complement_of,
                             proper_submodule_scan, span_of, spec_with_fault,
                             submodule_check)
from twistn2.poly import Poly

H = Fraction(1, 2)


def lbl(letter, idx):
    return BasisLabel(letter, HalfInt.of(idx))


class TestParameterFit:
    def test_concrete_fit(self):
        al, alp = fit_alpha_from_e(Fraction(-3), Fraction(-8), CASES["A1"])
        assert (al, alp) == (Fraction(2), Fraction(1))
        # the boundary value e(-1) = alpha - alphap must match e2 - 3 e1
        e = CASES["A1"].e_closed_form(Poly.const(al), Poly.const(alp))
        assert e.evaluate({"n": -1}) == Fraction(-8) - 3 * Fraction(-3)

    def test_trivial_fit(self):
        assert fit_alpha_from_e(Fraction(0), Fraction(0), CASES["A1"]) == (0, 0)

    def test_symbolic_fit(self):
        e1, e2 = Poly.var("e1"), Poly.var("e2")
        al, alp = fit_alpha_from_e(e1, e2, CASES["A1"])
        assert al + alp == -e1

    def test_mirrored_case_fit(self):
        al, alp = fit_alpha_from_e(Fraction(3), Fraction(8), CASES["A2"])
        assert (al, alp) == (Fraction(2), Fraction(1))


@pytest.mark.parametrize("name", sorted(CASES))
def test_e_closed_form(name):
    report = e_closed_form_check(CASES[name], n_window=10)
    assert report.ok, [c for c in report.checks if not c[1]]


@pytest.mark.parametrize("name", sorted(CASES))
def test_g_solution(name):
    report = g_solution_check(CASES[name])
    assert report.ok, [c for c in report.checks if not c[1]]


@pytest.mark.parametrize("name", sorted(CASES))
def test_f_derivation(name):
    report = f_derivation(CASES[name])
    assert report.ok, [c for c in report.checks if not c[1]]


class TestInstantiation:
    @pytest.mark.parametrize("name", sorted(CASES))
    def test_audit_is_clean(self, name):
        spec, discrepancies = instantiate_deformation(name, Fraction(2, 7))
        assert not discrepancies
        assert axiom_sweep(spec, 1, 2).ok

    def test_audit_catches_a_mutated_table(self):
        bad = spec_with_fault("a1.g0-coeff")
        found = deformation_discrepancies(bad)
        assert found
        # every flagged slot carries the derived value to use instead
        entry = found[0]
        assert entry.derived_value != entry.family_value
        fixed = repaired_spec(bad)
        assert not deformation_discrepancies(fixed)
        assert axiom_sweep(fixed, 1, 2).ok

    def test_derived_table_matches_base_away_from_the_slots(self):
        spec, _ = instantiate_deformation("A2", Fraction(2, 7))
        case = CASES["A2"]
        g, v = L(1), lbl("y", 3)
        assert derived_action(case, spec, g, v) == act(base_spec(case), g, v)

    def test_deformed_coefficient_differs_from_the_base_module(self):
        spec, _ = instantiate_deformation("A1", Fraction(2, 7))
        base = base_spec(CASES["A1"])
        assert act(spec, L(2), lbl("x", 0)) != act(base, L(2), lbl("x", 0))
        # away from the distinguished vector the actions agree
        assert act(spec, L(2), lbl("x", 1)) == act(base, L(2), lbl("x", 1))


class TestSubmoduleStructure:
    def test_base_submodules_persist_under_deformation(self):
        # nothing ever maps back onto the distinguished vector, so the base
        # family's unique proper submodule stays closed at every parameter
        cases = [
            ("A1", complement_of("x0")),
            ("A2", span_of("y0")),
            ("B1", span_of("y0")),
            ("B2", span_of("y1/2")),
        ]
        for name, cand in cases:
            spec, _ = instantiate_deformation(name, Fraction(2, 7))
            assert submodule_check(spec, cand).closed, name
            assert submodule_check(base_spec(CASES[name]), cand).closed, name

    def test_cyclic_scan_is_unchanged_by_the_deformation(self):
        spec, _ = instantiate_deformation("A1", Fraction(2, 7))
        assert (set(map(tuple, proper_submodule_scan(spec).values()))
                == set(map(tuple, proper_submodule_scan(base_spec(CASES["A1"])).values()))
                == {("x_0",)})

    def test_annihilated_vector_spans_the_one_dimensional_submodule(self):
        spec, _ = instantiate_deformation("B2", Fraction(2, 7))
        y_half = lbl("y", H)
        for g in (L(1), L(-2), T(H), T(-H), G(0), G(H), G(-1)):
            assert act(spec, g, y_half) == {}

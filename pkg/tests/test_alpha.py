import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dp1kstab.alpha import (
    Branch,
    alpha_c_closed_form,
    alpha_c_oracle,
    alpha_report,
    branch_of,
    candidate_pivots,
    formula_value,
    max_mult_along,
    mult_bound,
    multiplicity_table,
    p1p1_readings,
    relabel,
)
from dp1kstab.cones import ConicSubtype, decompose
from dp1kstab.lattice import apply_word, canonical_class, e
from dp1kstab.sampling import random_word, sample

K = canonical_class()
F = Fraction


def all_e(coeffs):
    A = -K
    for i, c in enumerate(coeffs, start=1):
        A = A + F(c) * e(i)
    return A


def test_branch_boundaries():
    assert branch_of(F(4)) is Branch.MID
    assert branch_of(F(41, 10)) is Branch.HIGH
    assert branch_of(F(1)) is Branch.LOW


def test_formula_examples():
    assert formula_value([F(2, 3)] * 8, F(14, 3)).value == F(3, 8)
    v = formula_value([F(9, 10)] * 3 + [F(0)] * 5, F(9, 5))
    assert v.value == F(10, 19)
    assert v.candidates == (F(10, 19), F(10, 21), F(6, 13))
    assert formula_value([F(0)] * 8, F(0)).value == 1


def test_mult_bound_examples():
    assert mult_bound(decompose(-K)) == F(2, 3)
    assert mult_bound(decompose(all_e([F(2, 3)] * 8))) == F(20, 9)
    assert mult_bound(decompose(all_e([F(1, 2)]))) == 1


def test_max_mult_examples():
    assert max_mult_along(-K, e(1)) == F(1, 2)
    assert max_mult_along(all_e([F(2, 3)] * 8), e(1)) == F(8, 3)
    assert max_mult_along(-K, -K) >= 1


def test_oracle_examples():
    r = alpha_c_oracle(-K)
    assert (r.value, r.M, r.argmax.label) == (1, 1, "-K")
    r = alpha_c_oracle(all_e([F(2, 3)] * 8))
    assert (r.value, r.M) == (F(3, 8), F(8, 3))
    assert r.argmax.cls == e(1)
    r = alpha_c_oracle(all_e([F(9, 10)] * 3))
    assert (r.value, r.M) == (F(10, 19), F(19, 10))
    assert r.argmax.cls == e(1)


def test_compare_examples():
    for A, want in ((-K, F(1)), (all_e([F(2, 3)] * 8), F(3, 8))):
        rep = alpha_report(A)
        assert rep.agree and rep.closed_form == rep.oracle_value == want
        assert rep.lemma_bound_holds


def test_pruned_table_matches_full_scan():
    # pruning must not change M: compare against every pivot solved exactly
    rng = random.Random(5)
    pivots = candidate_pivots()
    for stratum in ("birational/mid", "conic/F1"):
        muA = decompose(sample(rng, stratum).A).muA
        full = [max_mult_along(muA, p.cls) for p in pivots]
        table = multiplicity_table(muA, pivots)
        assert max(table.exact.values()) == max(full)
        for i, v in table.exact.items():
            assert v == full[i]


def test_extended_oracle_agrees_on_examples():
    for A in (-K, all_e([F(9, 10)] * 3)):
        assert alpha_c_oracle(A, extended=True).value == alpha_c_oracle(A).value


def test_relabel_drops_one_entry():
    a = tuple(F(k, 10) for k in (7, 6, 5, 4, 3, 2, 1)) + (F(0),)
    assert relabel(a, 7) == a[:6] + (F(0), F(0))
    assert relabel(a, 1) == a[1:7] + (F(0), F(0))


def test_p1p1_readings_are_reported_not_reconciled():
    rng = random.Random(3)
    d = decompose(sample(rng, "conic/P1xP1").A)
    assert d.subtype is ConicSubtype.P1XP1
    readings = p1p1_readings(d)
    assert len(readings.by_m) == 7
    assert alpha_c_closed_form(d) == readings.designated


@pytest.mark.parametrize("stratum", ["birational/high", "birational/mid", "birational/low", "conic/F1"])
def test_homogeneity_and_weyl_invariance(stratum):
    rng = random.Random(11)
    s = sample(rng, stratum, word_len=0)
    base = alpha_report(s.A)
    moved = alpha_report(F(5, 2) * apply_word(s.A, random_word(rng)))
    assert moved.closed_form == base.closed_form
    assert moved.oracle_value == base.oracle_value
    assert moved.alpha_c_of_A == F(2, 5) * base.alpha_c_of_A


tails = st.lists(st.fractions(min_value=0, max_value=1, max_denominator=9), min_size=8, max_size=8)


@given(tails, st.fractions(min_value=0, max_value=2, max_denominator=9))
def test_closed_form_is_at_most_one_and_positive(a, extra):
    a = sorted(a, reverse=True)
    s = sum(a[1:], F(0))
    v = formula_value(a, s, extra)
    assert 0 < v.value <= 1
    assert v.branch is branch_of(s)

from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from dp1kstab.cones import decompose
from dp1kstab.kstab import (
    Outcome,
    nef_condition,
    nef_test_divisor,
    point_alpha_bound,
    slope_nu,
    small_regime_bound,
    verdict,
    z_class_inequality,
)
from dp1kstab.lattice import canonical_class, class_Z, e, intersect

K = canonical_class()
F = Fraction


def test_slope_examples():
    assert slope_nu(-K) == 1
    assert slope_nu(-K + F(1, 2) * e(1)) == F(6, 7)
    assert slope_nu(F(3) * -K) == F(1, 3)
    assert slope_nu(-K + F(1, 10) * e(1)) == F(110, 119)


def test_nef_condition_examples():
    assert nef_condition(-K) == (True, None)
    ok, witness = nef_condition(-K + F(1, 2) * e(1))
    assert not ok and witness.cls == class_Z()
    assert intersect(nef_test_divisor(-K + F(1, 2) * e(1)), class_Z()) == F(-3, 7)
    assert nef_condition(-K + F(1, 10) * e(1))[0]


def test_point_bound_examples():
    for a1, want in ((0, F(2, 3)), (F(1, 2), F(4, 7)), (F(2, 3), F(6, 11))):
        d = decompose(-K + F(a1) * e(1))
        assert point_alpha_bound(d) == want


def test_z_class_examples():
    assert z_class_inequality(decompose(-K))
    d = decompose(-K + F(1, 10) * e(1))
    assert z_class_inequality(d)
    assert 1 / (3 * d.a1 + 1) == F(10, 13)


def test_verdict_examples():
    v = verdict(-K)
    assert v.outcome is Outcome.KSTABLE and v.kstable
    assert v.alpha_condition
    v = verdict(-K + F(1, 2) * e(1))
    assert v.outcome is Outcome.INCONCLUSIVE
    assert v.witness.cls == class_Z() and v.witness_pairing == F(-3, 7)
    assert verdict(5 * -K).outcome is verdict(-K).outcome


def test_trace_names_every_step():
    names = [c.name for c in verdict(-K).trace]
    assert names[0] == "mu" and names[-1] == "outcome"
    assert "nef" in names and "alpha_c(muA) oracle" in names


def test_small_regime_bound():
    d = decompose(-K + F(1, 10) * e(1))
    assert small_regime_bound(d) is True
    assert small_regime_bound(decompose(-K + F(1, 2) * e(1))) is None


@given(st.fractions(min_value=0, max_value=F(49, 50), max_denominator=50), st.sampled_from([F(1, 3), F(2), F(7, 5)]))
def test_nef_test_divisor_is_scale_invariant(lam, t):
    A = -K + lam * e(1)
    assert nef_test_divisor(t * A) == nef_test_divisor(A)
    assert slope_nu(t * A) == slope_nu(A) / t

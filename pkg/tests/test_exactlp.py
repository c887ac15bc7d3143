from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from scipy.optimize import linprog

from dp1kstab.cones import curve_classes
from dp1kstab.errors import NotInCone, UnboundedProgram
from dp1kstab.exactlp import (
    ConeProgram,
    Objective,
    Status,
    cone_member,
    max_coefficient,
    reconstruct,
    solve,
)
from dp1kstab.lattice import DivClass, canonical_class, class_Z, e, intersect

K = canonical_class()
GENS = curve_classes()


def _check_certificate(target, gens, ok, out):
    """Either exact nonnegative coefficients or a separating class."""
    if ok:
        assert all(c >= 0 for c in out.coefficients)
        assert reconstruct(gens, out.coefficients) == target
    else:
        N = out.functional
        assert all(intersect(N, g) >= 0 for g in gens)
        assert intersect(N, target) < 0


def test_single_generator():
    out = solve(ConeProgram((e(1),), e(1), Objective.MAXIMIZE_COEFFICIENT, generator_index=0))
    assert out.optimal and out.value == 1
    ok, out = cone_member(-e(1), [e(1)])
    assert not ok and out.status is Status.INFEASIBLE
    assert intersect(out.functional, -e(1)) < 0


def test_zero_is_in_every_cone():
    ok, out = cone_member(DivClass.zero(), [e(1)])
    assert ok and all(c == 0 for c in out.coefficients)


def test_anticanonical_is_effective():
    assert -K == Fraction(1, 2) * e(1) + Fraction(1, 2) * class_Z()
    ok, out = cone_member(-K, GENS)
    assert ok
    _check_certificate(-K, GENS, ok, out)


def test_canonical_class_is_not_effective():
    ok, out = cone_member(K, GENS)
    assert not ok
    _check_certificate(K, GENS, ok, out)


def test_sum_of_generators():
    ok, _ = cone_member(e(1) + e(2), GENS)
    assert ok


def test_max_coefficient_examples():
    assert max_coefficient(2 * e(1), [e(1)], e(1)) == 2
    assert max_coefficient(-K, GENS, e(1)) == Fraction(1, 2)


def test_max_coefficient_errors():
    with pytest.raises(NotInCone):
        max_coefficient(K, GENS, e(1))
    with pytest.raises(UnboundedProgram):
        max_coefficient(e(1), [e(1), -e(1)], e(1))


def test_program_validation():
    with pytest.raises(ValueError):
        ConeProgram((), e(1))
    with pytest.raises(ValueError):
        ConeProgram((e(1),), e(1), Objective.MAXIMIZE_SCALAR)
    with pytest.raises(ValueError):
        ConeProgram((e(1),), e(1), Objective.MAXIMIZE_COEFFICIENT, generator_index=3)


def test_optimal_dual_certifies_value():
    out = solve(ConeProgram(GENS, -K, Objective.MAXIMIZE_SCALAR, direction=e(1)))
    N = out.functional
    assert all(intersect(N, g) >= 0 for g in GENS)
    assert intersect(N, -K) == out.value * intersect(N, e(1))


def test_deterministic():
    a = solve(ConeProgram(GENS, -K + e(3), Objective.MAXIMIZE_SCALAR, direction=e(3)))
    b = solve(ConeProgram(GENS, -K + e(3), Objective.MAXIMIZE_SCALAR, direction=e(3)))
    assert a == b


small = st.integers(min_value=-3, max_value=3)
vec4 = st.lists(small, min_size=4, max_size=4)


def _lift(v):
    return DivClass(list(v) + [0] * 5)


@given(st.lists(vec4, min_size=1, max_size=6), vec4)
def test_membership_matches_float_lp(gens, target):
    gens = [_lift(g) for g in gens]
    assume(not all(g.is_zero() for g in gens))
    tgt = _lift(target)
    ok, out = cone_member(tgt, gens)
    _check_certificate(tgt, gens, ok, out)
    A = np.array([[float(c) for c in g.coeffs] for g in gens]).T
    res = linprog(np.zeros(len(gens)), A_eq=A, b_eq=[float(c) for c in tgt.coeffs], bounds=(0, None), method="highs")
    assert ok == (res.status == 0)


@given(st.lists(vec4, min_size=1, max_size=6), vec4, vec4)
def test_max_coefficient_matches_float_lp(gens, target, pivot):
    gens = [_lift(g) for g in gens]
    tgt, piv = _lift(target), _lift(pivot)
    assume(not piv.is_zero())
    out = solve(ConeProgram(tuple(gens), tgt, Objective.MAXIMIZE_SCALAR, direction=piv))
    A = np.array([[float(c) for c in g.coeffs] for g in gens + [piv]]).T
    c = np.zeros(len(gens) + 1)
    c[-1] = -1.0
    res = linprog(c, A_eq=A, b_eq=[float(x) for x in tgt.coeffs], bounds=(0, None), method="highs")
    if out.status is Status.INFEASIBLE:
        # the exact program keeps the scalar at zero in phase one
        ok, _ = cone_member(tgt, gens) if not tgt.is_zero() else (True, None)
        assert not ok
    elif out.status is Status.UNBOUNDED:
        assert res.status == 3
    else:
        assert res.status == 0
        assert abs(float(out.value) + res.fun) < 1e-7
        assert reconstruct(gens, out.coefficients, piv, out.scalar) == tgt

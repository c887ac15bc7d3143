import random
from fractions import Fraction

import pytest

from dp1kstab.cones import (
    ConicSubtype,
    ContractionKind,
    classify_contraction,
    compute_mu,
    decompose,
    is_ample,
    is_nef,
    is_pseff,
    minimal_face,
    require_ample,
)
from dp1kstab.errors import MalformedFace, NotAmple, NotPseff
from dp1kstab.lattice import canonical_class, class_Z, e, enumerate_curves, h, intersect
from dp1kstab.sampling import STRATA, sample
from oracles import mu_by_bisection

K = canonical_class()
CURVES = enumerate_curves()


def curve(cls):
    return next(c for c in CURVES if c.cls == cls)


def test_ample_examples():
    assert is_ample(-K)[0]
    assert is_ample(-K + Fraction(2, 3) * sum((e(i) for i in range(2, 9)), e(1)))[0]
    ok, witness = is_ample(h())
    assert not ok and witness.cls == e(1)
    with pytest.raises(NotAmple) as info:
        require_ample(h())
    assert info.value.witness.cls == e(1)


def test_nef_examples():
    assert is_nef(0 * h())[0]
    assert is_nef(Fraction(1, 3) * -K)[0]
    A = -K + Fraction(1, 2) * e(1)
    D = -K - Fraction(4, 7) * A
    ok, witness = is_nef(D)
    assert not ok
    assert witness.cls == class_Z()
    assert intersect(D, witness.cls) == Fraction(-3, 7)


def test_pseff_examples():
    assert is_pseff(-K)[0]
    assert not is_pseff(K)[0]
    assert is_pseff(e(1))[0]


def test_mu_examples():
    assert compute_mu(-K) == 1
    assert compute_mu(2 * -K) == Fraction(1, 2)
    assert compute_mu(-K + Fraction(1, 2) * e(1)) == 1


@pytest.mark.parametrize("A", [-K, 2 * -K, -K + Fraction(1, 2) * e(1), -K + Fraction(1, 3) * (h() - e(1)) + Fraction(1, 5) * e(2)])
def test_mu_matches_bisection(A):
    assert compute_mu(A) == mu_by_bisection(A)


def test_minimal_face_examples():
    assert minimal_face(0 * h()) == []
    assert [c.cls for c in minimal_face(Fraction(1, 2) * e(1))] == [e(1)]
    with pytest.raises(NotPseff):
        minimal_face(K)


def test_classify_examples():
    assert classify_contraction([curve(e(1))]).r == 1
    skel = classify_contraction([])
    assert skel.kind is ContractionKind.BIRATIONAL and skel.r == 0


def test_classify_conic_pair():
    # seven fibres of |h - e1| with one component each chosen as section
    face = []
    for j in range(2, 9):
        face += [curve(e(j)), curve(h() - e(1) - e(j))]
    skel = classify_contraction(face)
    assert skel.kind is ContractionKind.CONIC_BUNDLE
    assert skel.fiber_class == h() - e(1)
    assert len(skel.sections) == 7


def test_classify_rejects_bad_faces():
    with pytest.raises(MalformedFace):
        classify_contraction([curve(e(2)), curve(h() - e(1) - e(2))])


def test_decompose_examples():
    d = decompose(-K)
    assert d.mu == 1 and d.r == 0 and d.s_A == 0 and all(c == 0 for c in d.a_sorted)
    d = decompose(-K + Fraction(1, 2) * e(1))
    assert d.mu == 1 and d.kind is ContractionKind.BIRATIONAL
    assert d.a_sorted == (Fraction(1, 2),) + (Fraction(0),) * 7 and d.s_A == 0
    A = -K + Fraction(2, 3) * sum((e(i) for i in range(2, 9)), e(1))
    d = decompose(A)
    assert d.mu == 1 and d.r == 8 and d.s_A == Fraction(14, 3)
    assert d.reconstruct() == d.muA


def test_conic_face_is_the_reducible_fibres():
    A = -K + Fraction(1, 2) * (h() - e(1)) + Fraction(1, 3) * e(2) + Fraction(1, 4) * (h() - e(1) - e(3))
    d = decompose(A)
    assert d.kind is ContractionKind.CONIC_BUNDLE
    assert d.fiber_class == h() - e(1)
    assert d.a == Fraction(1, 2)
    assert d.a_sorted[:2] == (Fraction(1, 3), Fraction(1, 4))
    assert all(intersect(d.supporting_class, c.cls) == 0 for c in d.face)


@pytest.mark.parametrize("stratum", STRATA)
def test_decompose_recovers_the_construction(stratum):
    rng = random.Random(STRATA.index(stratum))
    for _ in range(3):
        s = sample(rng, stratum)
        d = decompose(s.A)
        assert d.mu == 1 / s.scale
        assert d.a == s.a
        n = 8 if stratum.startswith("birational") else 7
        assert d.a_sorted[:n] == tuple(sorted(s.coeffs, reverse=True))
        if stratum.startswith("conic"):
            want = ConicSubtype.F1 if stratum.endswith("F1") else ConicSubtype.P1XP1
            assert d.subtype is want
        else:
            assert d.kind is ContractionKind.BIRATIONAL

"""Positivity tests and the mu-decomposition of an ample class.

For ample ``A`` the invariant ``mu`` is the least ``lam`` with ``K + lam*A``
pseudo-effective. The smallest face of the Mori cone containing ``K + mu*A``
is either spanned by disjoint (-1)-curves (a birational contraction) or by the
fibre components of a conic bundle, and ``mu*A`` then decomposes as
``-K + sum a_i E_i + a*B``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import MalformedFace, NotAmple, NotPseff
from .exactlp import (
    ConeProgram,
    LpOutcome,
    Objective,
    cone_member,
    max_coefficient_outcome,
    solve,
)
from .lattice import (
    CurveClass,
    DivClass,
    canonical_class,
    curve_index,
    enumerate_curves,
    intersect,
)

K = canonical_class()
MINUS_K = -K


@lru_cache(maxsize=None)
def _curves():
    return tuple(enumerate_curves())


@lru_cache(maxsize=None)
def curve_classes() -> tuple:
    """Generators of the Mori cone, in canonical order."""
    return tuple(c.cls for c in _curves())


class ContractionKind(enum.Enum):
    BIRATIONAL = "birational"
    CONIC_BUNDLE = "conic_bundle"


class ConicSubtype(enum.Enum):
    F1 = "F1"
    P1XP1 = "P1xP1"


def is_ample(A: DivClass) -> tuple[bool, CurveClass | None]:
    for c in _curves():
        if intersect(A, c.cls) <= 0:
            return False, c
    return True, None


def is_nef(D: DivClass) -> tuple[bool, CurveClass | None]:
    """Nef iff ``D.C >= 0`` on all 240 generators.

    The witness is the curve with the most negative pairing, earliest in
    canonical order among ties.
    """
    worst, witness = Fraction(0), None
    for c in _curves():
        p = intersect(D, c.cls)
        if p < worst:
            worst, witness = p, c
    return witness is None, witness


def is_pseff(D: DivClass) -> tuple[bool, LpOutcome]:
    return cone_member(D, curve_classes())


def require_ample(A: DivClass) -> None:
    ok, witness = is_ample(A)
    if not ok:
        raise NotAmple(f"{A} is not ample: pairs to {intersect(A, witness.cls)} with {witness}", witness)


def mu_outcome(A: DivClass) -> LpOutcome:
    """LP for ``t* = max{t : A - t(-K) effective}``; ``mu = 1/t*``.

    ``K + lam*A`` is pseudo-effective iff ``A - (1/lam)(-K)`` is, so this one
    program is the minimisation of ``lam`` in reciprocal form. The dual class of
    the outcome is nef and vanishes on ``K + mu*A``.
    """
    require_ample(A)
    return max_coefficient_outcome(A, curve_classes(), MINUS_K)


def compute_mu(A: DivClass) -> Fraction:
    return 1 / mu_outcome(A).value


def minimal_face(D: DivClass, support: DivClass | None = None) -> list[CurveClass]:
    """Curves with positive coefficient in some cone representation of ``D``.

    ``support`` is an optional nef class with ``support.D == 0``; only curves
    orthogonal to it can appear, which cuts the number of programs solved.
    """
    if D.is_zero():
        return []
    ok, out = is_pseff(D)
    if not ok:
        raise NotPseff(f"{D} is not pseudo-effective")
    curves = _curves()
    if support is not None:
        if intersect(support, D) != 0:
            raise ValueError("support class does not vanish on D")
        cand = [i for i, c in enumerate(curves) if intersect(support, c.cls) == 0]
    else:
        cand = list(range(len(curves)))
    gens = tuple(curves[i].cls for i in cand)
    in_face = set()
    for j, i in enumerate(cand):
        if i in in_face:
            continue
        res = solve(ConeProgram(gens, D, Objective.MAXIMIZE_COEFFICIENT, generator_index=j))
        if not res.optimal:
            raise NotPseff(f"{D} is not pseudo-effective")
        for k, c in enumerate(res.coefficients):
            if c > 0:
                in_face.add(cand[k])
    return [curves[i] for i in sorted(in_face)]


@dataclass(frozen=True)
class Contraction:
    """Combinatorial skeleton of the contraction given by a face."""

    kind: ContractionKind
    exceptionals: tuple = ()
    fiber_class: DivClass | None = None
    sections: tuple = ()
    partners: tuple = ()
    subtype: ConicSubtype | None = None

    @property
    def r(self) -> int:
        return len(self.exceptionals)


def _disjoint(curves) -> bool:
    return all(
        intersect(a.cls, b.cls) == 0
        for i, a in enumerate(curves)
        for b in curves[i + 1:]
    )


def conic_subtype(sections) -> ConicSubtype:
    """F1 when some (-1)-curve misses all seven sections, else P1 x P1."""
    for c in _curves():
        if all(intersect(c.cls, s.cls) == 0 for s in sections):
            return ConicSubtype.F1
    return ConicSubtype.P1XP1


def classify_contraction(face) -> Contraction:
    face = list(face)
    if _disjoint(face):
        if len(face) > 8:
            raise MalformedFace("more than eight disjoint curves")
        return Contraction(ContractionKind.BIRATIONAL, exceptionals=tuple(face))

    pairs = []
    paired = set()
    fiber = None
    for i, a in enumerate(face):
        for j in range(i + 1, len(face)):
            b = face[j]
            if intersect(a.cls, b.cls) != 1:
                continue
            s = a.cls + b.cls
            if fiber is None:
                fiber = s
            elif s != fiber:
                raise MalformedFace("intersecting pairs do not share a fibre class")
            if i in paired or j in paired:
                raise MalformedFace("a curve lies in two reducible fibres")
            pairs.append((a, b))
            paired.update((i, j))
    if intersect(fiber, fiber) != 0 or intersect(fiber, K) != -2:
        raise MalformedFace("pair sums are not a conic class")
    loose = [c for k, c in enumerate(face) if k not in paired]
    sections = [a for a, _ in pairs] + loose
    partners = [b for _, b in pairs] + [None] * len(loose)
    if len(sections) != 7 or not _disjoint(sections):
        raise MalformedFace(f"expected seven disjoint sections, found {len(sections)}")
    if any(intersect(fiber, s.cls) != 0 for s in sections):
        raise MalformedFace("a section curve is not contained in a fibre")
    return Contraction(
        ContractionKind.CONIC_BUNDLE,
        fiber_class=fiber,
        sections=tuple(sections),
        partners=tuple(partners),
        subtype=conic_subtype(sections),
    )


@dataclass(frozen=True)
class Decomposition:
    """``mu*A = -K + sum a_i E_i + a*B`` with the coefficients sorted."""

    A: DivClass
    mu: Fraction
    kind: ContractionKind
    exceptionals: tuple  # E_1, E_2, ... matching a_sorted (length r or 7)
    a_sorted: tuple  # length 8, non-increasing, zero padded
    a: Fraction
    fiber_class: DivClass | None = None
    partners: tuple = ()  # other component of the fibre through each E_i
    subtype: ConicSubtype | None = None
    face: tuple = ()
    supporting_class: DivClass | None = None
    notes: tuple = field(default=())

    @property
    def muA(self) -> DivClass:
        return self.mu * self.A

    @property
    def s_A(self) -> Fraction:
        last = 8 if self.kind is ContractionKind.BIRATIONAL else 7
        return sum(self.a_sorted[1:last], Fraction(0))

    @property
    def a1(self) -> Fraction:
        return self.a_sorted[0]

    @property
    def r(self) -> int:
        return len(self.exceptionals) if self.kind is ContractionKind.BIRATIONAL else 7

    @property
    def label(self) -> str:
        if self.kind is ContractionKind.BIRATIONAL:
            return "birational"
        return f"conic_bundle/{self.subtype.value}"

    def reconstruct(self) -> DivClass:
        total = MINUS_K
        for c, e in zip(self.a_sorted, self.exceptionals):
            total = total + c * e.cls
        if self.fiber_class is not None:
            total = total + self.a * self.fiber_class
        return total


def _order(curves, coeffs):
    # descending coefficient, ties by canonical curve order
    idx = sorted(range(len(curves)), key=lambda i: (-coeffs[i], curve_index(curves[i].cls)))
    return idx


def decompose(A: DivClass) -> Decomposition:
    out = mu_outcome(A)
    mu = 1 / out.value
    D = K + mu * A
    face = minimal_face(D, support=out.functional)
    skel = classify_contraction(face)

    if skel.kind is ContractionKind.BIRATIONAL:
        curves = list(skel.exceptionals)
        coeffs = [-intersect(D, c.cls) for c in curves]
        order = _order(curves, coeffs)
        exc = tuple(curves[i] for i in order)
        a_sorted = tuple(coeffs[i] for i in order) + (Fraction(0),) * (8 - len(curves))
        dec = Decomposition(
            A, mu, skel.kind, exc, a_sorted, Fraction(0),
            face=tuple(face), supporting_class=out.functional,
        )
    else:
        B = skel.fiber_class
        sections = list(skel.sections)
        partners = list(skel.partners)
        coeffs = [-intersect(D, s.cls) for s in sections]
        a = (intersect(D, MINUS_K) - sum(coeffs)) / 2
        # a negative weight means the other fibre component carries the mass
        for i, c in enumerate(coeffs):
            if c < 0:
                if partners[i] is None:
                    raise MalformedFace("negative coefficient on an unpaired section")
                sections[i], partners[i] = partners[i], sections[i]
                coeffs[i] = -c
                a += c
        subtype = conic_subtype(sections)
        if subtype is ConicSubtype.P1XP1:
            # with a zero weight either component works; prefer the F1 model
            for i, c in enumerate(coeffs):
                if c == 0 and partners[i] is not None:
                    trial = sections[:i] + [partners[i]] + sections[i + 1:]
                    if conic_subtype(trial) is ConicSubtype.F1:
                        sections[i], partners[i] = partners[i], sections[i]
                        subtype = ConicSubtype.F1
                        break
        order = _order(sections, coeffs)
        dec = Decomposition(
            A, mu, skel.kind,
            tuple(sections[i] for i in order),
            tuple(coeffs[i] for i in order) + (Fraction(0),),
            a,
            fiber_class=B,
            partners=tuple(partners[i] for i in order),
            subtype=subtype,
            face=tuple(face),
            supporting_class=out.functional,
            notes=("face spans 7 reducible fibres (the rank count 9 = 2 + 7)",),
        )
    if dec.reconstruct() != dec.muA:
        raise MalformedFace("decomposition does not reconstruct mu*A")
    return dec

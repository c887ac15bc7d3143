"""Picard lattice of a smooth del Pezzo surface of degree 1.

Classes are written in the basis ``h, e1, ..., e8`` where ``h`` pulls back a
line from the plane and ``e_i`` are the exceptional classes of the blow-up.
The intersection form is ``diag(1, -1, ..., -1)``.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence

RANK = 9


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    # gmpy2.mpq and similar expose numerator/denominator
    if hasattr(x, "numerator") and hasattr(x, "denominator") and not isinstance(x, float):
        return Fraction(int(x.numerator), int(x.denominator))
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


@dataclass(frozen=True)
class DivClass:
    """A divisor class ``beta*h + sum(beta_i*e_i)`` with exact rational coefficients."""

    coeffs: tuple

    def __init__(self, coeffs: Iterable):
        values = tuple(_as_fraction(c) for c in coeffs)
        if len(values) != RANK:
            raise ValueError(f"a divisor class needs {RANK} coefficients, got {len(values)}")
        object.__setattr__(self, "coeffs", values)

    @classmethod
    def basis(cls, i: int) -> "DivClass":
        v = [0] * RANK
        v[i] = 1
        return cls(v)

    @classmethod
    def zero(cls) -> "DivClass":
        return cls([0] * RANK)

    def __add__(self, other: "DivClass") -> "DivClass":
        if not isinstance(other, DivClass):
            return NotImplemented
        return DivClass(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: "DivClass") -> "DivClass":
        if not isinstance(other, DivClass):
            return NotImplemented
        return DivClass(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> "DivClass":
        return DivClass(-a for a in self.coeffs)

    def __mul__(self, t) -> "DivClass":
        if isinstance(t, DivClass):
            return NotImplemented
        t = _as_fraction(t)
        return DivClass(t * a for a in self.coeffs)

    __rmul__ = __mul__

    def __truediv__(self, t) -> "DivClass":
        t = _as_fraction(t)
        return DivClass(a / t for a in self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self) -> int:
        return RANK

    def dot(self, other: "DivClass") -> Fraction:
        return intersect(self, other)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self) -> str:
        return format_class(self)

    def __repr__(self) -> str:
        return f"DivClass({', '.join(str(c) for c in self.coeffs)})"


def intersect(a: DivClass, b: DivClass) -> Fraction:
    """Intersection number ``a.b`` for the form of signature (1, 8)."""
    x, y = a.coeffs, b.coeffs
    return x[0] * y[0] - sum(x[i] * y[i] for i in range(1, RANK))


def canonical_class() -> DivClass:
    """``K = -3h + e1 + ... + e8``."""
    return _K


def h() -> DivClass:
    return DivClass.basis(0)


def e(i: int) -> DivClass:
    """Exceptional class ``e_i`` for ``i`` in 1..8."""
    if not 1 <= i <= 8:
        raise ValueError("exceptional index must be in 1..8")
    return DivClass.basis(i)


_K = DivClass([-3] + [1] * 8)


def format_class(x: DivClass) -> str:
    """Human-readable ``3h - e1 - ...`` form."""
    names = ["h"] + [f"e{i}" for i in range(1, RANK)]
    parts = []
    for c, name in zip(x.coeffs, names):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        term = name if mag == 1 else f"{mag}*{name}"
        parts.append((sign, term))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out


class CurveKind(enum.IntEnum):
    """The seven families of (-1)-curve classes."""

    EXCEPTIONAL = 0  # e_i
    LINE = 1  # h - e_i - e_j
    CONIC5 = 2  # 2h - five e's
    KPLUS = 3  # -K + e_i - e_j
    TWOK_CONIC = 4  # -2K - (2h - five e's)
    TWOK_LINE = 5  # -2K - (h - e_i - e_j)
    TWOK_EXC = 6  # -2K - e_i


def _sum_e(indices: Iterable[int]) -> DivClass:
    v = [0] * RANK
    for i in indices:
        v[i] += 1
    return DivClass(v)


def curve_class_of(kind: CurveKind, indices: Sequence[int]) -> DivClass:
    """Class of the (-1)-curve of the given family and (1-based) indices."""
    mK = -_K
    if kind is CurveKind.EXCEPTIONAL:
        (i,) = indices
        return e(i)
    if kind is CurveKind.LINE:
        return h() - _sum_e(indices)
    if kind is CurveKind.CONIC5:
        return 2 * h() - _sum_e(indices)
    if kind is CurveKind.KPLUS:
        i, j = indices
        return mK + e(i) - e(j)
    if kind is CurveKind.TWOK_CONIC:
        return 2 * mK - (2 * h() - _sum_e(indices))
    if kind is CurveKind.TWOK_LINE:
        return 2 * mK - (h() - _sum_e(indices))
    if kind is CurveKind.TWOK_EXC:
        (i,) = indices
        return 2 * mK - e(i)
    raise ValueError(kind)


@dataclass(frozen=True)
class CurveClass:
    cls: DivClass
    kind: CurveKind
    indices: tuple

    def __post_init__(self):
        if curve_class_of(self.kind, self.indices) != self.cls:
            raise ValueError("kind/indices do not reconstruct the class")

    @property
    def label(self) -> str:
        idx = "".join(str(i) for i in self.indices)
        return f"{self.kind.name.lower()}[{idx}]"

    def __str__(self) -> str:
        return format_class(self.cls)


@dataclass(frozen=True)
class Root:
    cls: DivClass

    def __post_init__(self):
        if intersect(self.cls, self.cls) != -2 or intersect(self.cls, _K) != 0:
            raise ValueError(f"{self.cls!r} is not a root")


def _family_indices(kind: CurveKind):
    r = range(1, 9)
    if kind in (CurveKind.EXCEPTIONAL, CurveKind.TWOK_EXC):
        return [(i,) for i in r]
    if kind in (CurveKind.LINE, CurveKind.TWOK_LINE):
        return list(itertools.combinations(r, 2))
    if kind in (CurveKind.CONIC5, CurveKind.TWOK_CONIC):
        return list(itertools.combinations(r, 5))
    return list(itertools.permutations(r, 2))


@lru_cache(maxsize=None)
def _curves() -> tuple:
    out = []
    for kind in CurveKind:
        for idx in _family_indices(kind):
            out.append(CurveClass(curve_class_of(kind, idx), kind, idx))
    return tuple(out)


def enumerate_curves() -> list[CurveClass]:
    """The 240 (-1)-curve classes, ordered by family and then indices."""
    return list(_curves())


@lru_cache(maxsize=None)
def _curve_index() -> dict:
    return {c.cls: i for i, c in enumerate(_curves())}


def curve_index(x: DivClass) -> int | None:
    """Position of ``x`` in :func:`enumerate_curves`, or ``None``."""
    return _curve_index().get(x)


def is_minus_one_class(x: DivClass) -> bool:
    return (
        x.is_integral()
        and intersect(x, x) == -1
        and intersect(x, _K) == -1
    )


@lru_cache(maxsize=None)
def _roots() -> tuple:
    out = set()
    r = range(1, 9)
    for i, j in itertools.permutations(r, 2):
        out.add(e(i) - e(j))
    for idx in itertools.combinations(r, 3):
        x = h() - _sum_e(idx)
        out.update((x, -x))
    for idx in itertools.combinations(r, 6):
        x = 2 * h() - _sum_e(idx)
        out.update((x, -x))
    # h-coefficient 3: 3h - 2e_i - (the seven others)
    for i in r:
        x = 3 * h() - e(i) - _sum_e(r)
        out.update((x, -x))
    return tuple(Root(x) for x in sorted(out, key=lambda c: c.coeffs))


def enumerate_roots() -> list[Root]:
    """All 240 roots ``r`` with ``r.r = -2`` and ``r.K = 0``."""
    return list(_roots())


def simple_roots() -> list[Root]:
    """A set of simple roots generating the Weyl group."""
    out = [Root(e(i) - e(i + 1)) for i in range(1, 8)]
    out.append(Root(h() - e(1) - e(2) - e(3)))
    return out


def reflect(x: DivClass, r: Root) -> DivClass:
    """Reflection in the root ``r``: ``x + (x.r) r``."""
    return x + intersect(x, r.cls) * r.cls


def apply_word(x: DivClass, word: Sequence[Root]) -> DivClass:
    for r in word:
        x = reflect(x, r)
    return x


@lru_cache(maxsize=None)
def conic_classes() -> tuple:
    """Classes ``F`` with ``F.F = 0`` and ``F.K = -2`` (fibres of conic bundles).

    Computed as the Weyl orbit of ``h - e1``; these are nef.
    """
    start = h() - e(1)
    seen = {start}
    frontier = [start]
    gens = simple_roots()
    while frontier:
        nxt = []
        for x in frontier:
            for r in gens:
                y = reflect(x, r)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(seen, key=lambda c: c.coeffs))


# classes used by name in the multiplicity arguments
def line_l(i: int) -> DivClass:
    """``l_i = h - e1 - e_i``."""
    return h() - e(1) - e(i)


def class_Q() -> DivClass:
    return 2 * h() - e(1) - e(5) - e(6) - e(7) - e(8)


def cubic_C(i: int) -> DivClass:
    """``C_i = 3h - 2e1 - sum_{j>=2} e_j + e_i``."""
    return 3 * h() - 2 * e(1) - _sum_e(range(2, 9)) + e(i)


def class_Z() -> DivClass:
    """``Z = 6h - 3e1 - 2(e2 + ... + e8)``, the curve ``-2K - e1``."""
    return 6 * h() - 3 * e(1) - 2 * _sum_e(range(2, 9))

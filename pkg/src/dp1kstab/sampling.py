"""Random ample classes with a prescribed decomposition type.

Every sample is built as ``-K + sum a_i E_i (+ a*B)`` on a standard model
(disjoint ``e_i`` for the birational case, the pencil ``|h - e1|`` for conic
bundles), then moved by a random word of reflections and rescaled, so the
decomposition that should be recovered is known in advance.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .cones import MINUS_K, ConicSubtype, conic_subtype
from .lattice import DivClass, apply_word, e, enumerate_curves, enumerate_roots, h, curve_index

STRATA = ("birational/high", "birational/mid", "birational/low", "conic/F1", "conic/P1xP1")


@dataclass(frozen=True)
class Sample:
    A: DivClass
    stratum: str
    coeffs: tuple  # the a_i used, sorted non-increasing
    a: Fraction
    scale: Fraction
    word: tuple


def rand_fraction(rng: random.Random, lo: Fraction, hi: Fraction, max_den: int = 12) -> Fraction:
    """A rational in ``[lo, hi)`` with denominator at most ``max_den``."""
    den = rng.randint(1, max_den)
    lo_n = -((-lo * den).__floor__())  # ceil(lo*den)
    hi_n = (hi * den).__ceil__() - 1
    if hi_n < lo_n:
        return lo
    return Fraction(rng.randint(lo_n, hi_n), den)


def random_word(rng: random.Random, max_len: int = 10) -> tuple:
    roots = enumerate_roots()
    return tuple(rng.choice(roots) for _ in range(rng.randint(0, max_len)))


def _coeffs_for(rng, branch: str, n: int, extra_zero_tail: bool) -> list:
    """Coefficients ``a_1..a_n`` in [0, 1) whose tail sum lands in ``branch``."""
    while True:
        if branch == "high":
            cs = [rand_fraction(rng, Fraction(1, 2), Fraction(1)) for _ in range(n)]
        elif branch == "mid":
            k = rng.randint(2, n)
            cs = [rand_fraction(rng, Fraction(0), Fraction(1)) for _ in range(k)] + [Fraction(0)] * (n - k)
        else:
            k = rng.randint(0, n)
            cs = [rand_fraction(rng, Fraction(0), Fraction(1, 2), 20) * rng.choice((1, Fraction(1, 4))) for _ in range(k)]
            if cs:
                cs[0] = rand_fraction(rng, Fraction(0), Fraction(1), 20)
            cs += [Fraction(0)] * (n - k)
        cs.sort(reverse=True)
        s = sum(cs[1:], Fraction(0))
        ok = {"high": s > 4, "mid": 1 < s <= 4, "low": s <= 1}[branch]
        if ok:
            return cs


def sample_birational(rng: random.Random, branch: str, word_len: int = 10) -> Sample:
    cs = _coeffs_for(rng, branch, 8, False)
    A = MINUS_K
    for i, c in enumerate(cs, start=1):
        A = A + c * e(i)
    return _finish(rng, A, f"birational/{branch}", cs, Fraction(0), word_len)


def _conic_sections(rng: random.Random, subtype: ConicSubtype):
    # fibres of |h - e1| through e_j: {e_j, h - e1 - e_j}, j = 2..8
    while True:
        picks = [rng.random() < 0.5 for _ in range(7)]
        secs = [(h() - e(1) - e(j)) if p else e(j) for j, p in zip(range(2, 9), picks)]
        curves = [enumerate_curves()[curve_index(s)] for s in secs]
        if conic_subtype(curves) is subtype:
            return secs


def sample_conic(rng: random.Random, subtype: ConicSubtype, branch: str | None = None, word_len: int = 10) -> Sample:
    branch = branch or rng.choice(("high", "mid", "low"))
    cs = _coeffs_for(rng, branch, 7, False)
    if subtype is ConicSubtype.P1XP1:
        # zero weights would let the fibre be re-chosen as an F1 model
        cs = [c if c > 0 else Fraction(1, rng.randint(20, 60)) for c in cs]
        cs.sort(reverse=True)
    a = rand_fraction(rng, Fraction(1, 20), Fraction(3, 2))
    if a == 0:
        a = Fraction(1, 7)
    secs = _conic_sections(rng, subtype)
    A = MINUS_K + a * (h() - e(1))
    for c, s in zip(cs, secs):
        A = A + c * s
    label = "conic/F1" if subtype is ConicSubtype.F1 else "conic/P1xP1"
    return _finish(rng, A, label, cs, a, word_len)


def _finish(rng, A, stratum, cs, a, word_len) -> Sample:
    word = random_word(rng, word_len)
    scale = rng.choice((Fraction(1), Fraction(1, 3), Fraction(2), Fraction(7, 5), Fraction(5, 2)))
    return Sample(scale * apply_word(A, word), stratum, tuple(cs), a, scale, word)


def sample(rng: random.Random, stratum: str, word_len: int = 10) -> Sample:
    kind, _, part = stratum.partition("/")
    if kind == "birational":
        return sample_birational(rng, part, word_len)
    subtype = ConicSubtype.F1 if part == "F1" else ConicSubtype.P1XP1
    return sample_conic(rng, subtype, word_len=word_len)


def stratified(seed: int, per_stratum: int, strata=STRATA) -> list[Sample]:
    rng = random.Random(seed)
    return [sample(rng, s) for s in strata for _ in range(per_stratum)]

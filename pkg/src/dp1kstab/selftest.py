"""Bundled invariant suite behind ``dp1kstab selftest``.

The ``curves`` and ``formula`` arguments exist so tests can inject faults
(a truncated curve list, a perturbed closed form) and watch the suite fail.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import alpha
from .cones import ConicSubtype, ContractionKind, decompose
from .lattice import CurveKind, enumerate_curves, enumerate_roots, intersect, canonical_class
from .sampling import sample

FAMILY_SIZES = {
    CurveKind.EXCEPTIONAL: 8,
    CurveKind.LINE: 28,
    CurveKind.CONIC5: 56,
    CurveKind.KPLUS: 56,
    CurveKind.TWOK_CONIC: 56,
    CurveKind.TWOK_LINE: 28,
    CurveKind.TWOK_EXC: 8,
}
EQUIVALENCE_STRATA = ("birational/high", "birational/mid", "birational/low", "conic/F1")


@dataclass(frozen=True)
class Property:
    name: str
    passed: bool
    detail: str = ""


def _closed(formula, d):
    if d.kind is ContractionKind.BIRATIONAL:
        return formula(d.a_sorted, d.s_A, Fraction(0))
    return formula(d.a_sorted, d.s_A, d.a)


def _tuple_with_tail_sum(rng: random.Random, s: Fraction):
    """Non-increasing ``a_1..a_8`` in ``[0, 1]`` with ``a_2 + ... + a_8 = s``, or None."""
    w = [rng.randint(0, 20) for _ in range(7)]
    if not sum(w):
        return None
    tail = sorted((s * x / sum(w) for x in w), reverse=True)
    if tail[0] > 1:
        return None
    a1 = tail[0] + (1 - tail[0]) * Fraction(rng.randint(0, 6), 6)
    return (a1, *tail)


def run_selftest(
    curves: list | None = None,
    formula: Callable | None = None,
    seed: int = 7,
    per_stratum: int = 1,
) -> list[Property]:
    curves = enumerate_curves() if curves is None else curves
    formula = formula or alpha.formula_value
    K = canonical_class()
    out = []

    ok = len(curves) == 240
    out.append(Property("curve count", ok, f"{len(curves)} (-1)-curves, expected 240"))
    sizes = Counter(c.kind for c in curves)
    out.append(Property("curve families", sizes == FAMILY_SIZES, str(sorted(sizes.values()))))
    ok = all(intersect(c.cls, c.cls) == -1 and intersect(c.cls, K) == -1 for c in curves)
    out.append(Property("curve self-intersection and degree", ok))
    roots = enumerate_roots()
    out.append(Property("root count", len(roots) == 240, f"{len(roots)} roots"))

    # neighbouring closed forms must agree on the branch boundaries
    rng = random.Random(seed)
    bad = []
    checked = 0
    while checked < 50:
        s, lo, hi = rng.choice(((Fraction(1), alpha.Branch.LOW, alpha.Branch.MID), (Fraction(4), alpha.Branch.MID, alpha.Branch.HIGH)))
        a = _tuple_with_tail_sum(rng, s)
        if a is None:
            continue
        checked += 1
        f = Fraction(rng.randint(0, 12), 12)
        if formula(a, s, f, branch=lo).value != formula(a, s, f, branch=hi).value:
            bad.append((a, s))
    out.append(Property("branch continuity", not bad, f"{len(bad)} boundary mismatches"))

    strata = EQUIVALENCE_STRATA
    samples = [sample(rng, s, word_len=4) for s in strata for _ in range(per_stratum)]
    recon, agree = [], []
    for smp in samples:
        d = decompose(smp.A)
        recon.append(d.reconstruct() == d.muA)
        if d.subtype is ConicSubtype.P1XP1:
            continue
        closed = _closed(formula, d).value
        agree.append(closed == alpha.alpha_c_oracle(d.muA).value)
    out.append(Property("reconstruction identity", all(recon), f"{sum(recon)}/{len(recon)}"))
    out.append(Property("oracle equivalence", all(agree), f"{sum(agree)}/{len(agree)} agree"))
    return out


def format_results(props: list[Property]) -> str:
    width = max(len(p.name) for p in props)
    lines = [f"{'PASS' if p.passed else 'FAIL'}  {p.name:<{width}}  {p.detail}".rstrip() for p in props]
    return "\n".join(lines)

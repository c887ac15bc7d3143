"""Alpha-invariant along curves for the normalised polarisation ``mu*A``.

Two independent routes:

* closed forms in the decomposition coefficients ``a_1 >= a_2 >= ...``,
  ``s_A`` and ``a``, split into three ranges of ``s_A``;
* an LP oracle: the maximal multiplicity ``M`` of ``mu*A`` along a pivot is
  the largest ``t`` with ``mu*A - t*pivot`` effective, and
  ``alpha_c = min(1, 1/M)`` over all (-1)-curves and ``-K``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Sequence

import numpy as np

from .cones import (
    MINUS_K,
    ConicSubtype,
    ContractionKind,
    Decomposition,
    curve_classes,
    decompose,
)
from .exactlp import max_coefficient_outcome
from .lattice import DivClass, conic_classes, enumerate_curves

ONE = Fraction(1)
_SIGN = np.array([1] + [-1] * 8, dtype=np.int64)


class Branch(enum.Enum):
    HIGH = "s_A>4"
    MID = "1<s_A<=4"
    LOW = "s_A<=1"


def branch_of(s: Fraction) -> Branch:
    if s > 4:
        return Branch.HIGH
    if s > 1:
        return Branch.MID
    return Branch.LOW


@dataclass(frozen=True)
class FormulaValue:
    value: Fraction
    branch: Branch
    candidates: tuple = ()  # the three MID values, when in that range
    winner: int | None = None  # index into candidates

    @property
    def tag(self) -> str:
        if self.branch is Branch.MID:
            return f"MID[{('two', 'four', 'three')[self.winner]}]"
        return self.branch.name


def formula_value(
    a_sorted: Sequence[Fraction], s: Fraction, a: Fraction = Fraction(0), branch: Branch | None = None
) -> FormulaValue:
    """Closed forms for a birational or F1 decomposition (``a = 0`` for birational).

    ``branch`` forces one range's expression regardless of ``s``; used to check
    that neighbouring expressions agree on the boundaries ``s = 1`` and ``s = 4``.
    """
    a1, a2, a3, a4 = a_sorted[:4]
    br = branch or branch_of(s)
    if br is Branch.HIGH:
        return FormulaValue(1 / (2 + a1 + a), br)
    if br is Branch.MID:
        cands = (
            2 / (2 + 2 * a1 + s - a2 - a3 + 2 * a),
            4 / (3 + 4 * a1 + 2 * s - a2 - a3 - a4 + 4 * a),
            3 / (2 + 3 * a1 + s + 3 * a),
        )
        best = max(cands)
        return FormulaValue(best, br, cands, cands.index(best))
    return FormulaValue(min(2 / (1 + 2 * a1 + s + 2 * a), ONE), br)


def p1p1_literal(a_sorted: Sequence[Fraction], s: Fraction, a: Fraction) -> FormulaValue:
    """The P1 x P1 expressions read verbatim, with ``s_A7 = s_A - a_7``."""
    a1, a2, a3, a4 = a_sorted[:4]
    s7 = s - a_sorted[6]
    br = branch_of(s)
    if br is Branch.HIGH:
        return FormulaValue(1 / (2 + a1 + a), br)
    if br is Branch.MID:
        cands = (
            2 / (2 + s7 - a2 - a3 + 2 * a),
            4 / (3 + 2 * s7 - a2 - a3 - a4 + 4 * a),
            3 / (2 + s7 + 3 * a),
        )
        best = max(cands)
        return FormulaValue(best, br, cands, cands.index(best))
    return FormulaValue(min(2 / (1 + s7 + 2 * a), ONE), br)


def relabel(a_sorted: Sequence[Fraction], m: int) -> tuple:
    """Drop ``a_m`` (1-based) from ``a_1..a_7`` and pad two zeros."""
    seven = list(a_sorted[:7])
    del seven[m - 1]
    return tuple(seven) + (Fraction(0), Fraction(0))


def p1p1_relabel(a_sorted: Sequence[Fraction], a: Fraction, m: int) -> FormulaValue:
    """F1 formulas evaluated on the relabelled tuple for ``m``."""
    t = relabel(a_sorted, m)
    return formula_value(t, sum(t[1:8], Fraction(0)), a)


@dataclass(frozen=True)
class P1xP1Readings:
    literal: FormulaValue
    by_m: tuple  # FormulaValue for m = 1..7
    designated: FormulaValue  # m = 7

    @property
    def m_consistent(self) -> bool:
        return len({v.value for v in self.by_m}) == 1

    @property
    def literal_matches_relabel(self) -> bool:
        return self.literal.value == self.designated.value


def p1p1_readings(d: Decomposition) -> P1xP1Readings:
    by_m = tuple(p1p1_relabel(d.a_sorted, d.a, m) for m in range(1, 8))
    return P1xP1Readings(p1p1_literal(d.a_sorted, d.s_A, d.a), by_m, by_m[6])


def alpha_c_closed_form(d: Decomposition) -> FormulaValue:
    """Closed-form ``alpha_c(S, mu*A)`` for the decomposition ``d``."""
    if d.kind is ContractionKind.BIRATIONAL:
        return formula_value(d.a_sorted, d.s_A)
    if d.subtype is ConicSubtype.F1:
        return formula_value(d.a_sorted, d.s_A, d.a)
    return p1p1_readings(d).designated


def mult_bound(d: Decomposition) -> Fraction:
    """``(2 + s_A + 2a_1 - a_7 - a_8 + 3a)/3``; ``a_8`` is zero for conic bundles."""
    a = d.a_sorted
    return (2 + d.s_A + 2 * a[0] - a[6] - a[7] + 3 * d.a) / 3


def max_mult_along(muA: DivClass, pivot: DivClass) -> Fraction:
    """Largest ``t`` with ``muA - t*pivot`` in the Mori cone."""
    return max_coefficient_outcome(muA, curve_classes(), pivot).value


# --- oracle -----------------------------------------------------------------

ANTICANONICAL = "-K"


@dataclass(frozen=True)
class Pivot:
    label: str
    cls: DivClass


@lru_cache(maxsize=None)
def candidate_pivots(extended: bool = False) -> tuple:
    """(-1)-curves in canonical order, then ``-K``, then (optionally) conic classes."""
    out = [Pivot(c.label, c.cls) for c in enumerate_curves()]
    out.append(Pivot(ANTICANONICAL, MINUS_K))
    if extended:
        out.extend(Pivot(f"conic[{i}]", f) for i, f in enumerate(conic_classes()))
    return tuple(out)


def _int_vec(x: DivClass) -> np.ndarray:
    den = lcm(*(c.denominator for c in x.coeffs))
    return np.array([int(c * den) for c in x.coeffs], dtype=np.int64)


@lru_cache(maxsize=None)
def _seed_nef_pool() -> tuple:
    # -K, -K + C for every (-1)-curve C, and all conic classes are nef
    pool = [MINUS_K]
    pool.extend(MINUS_K + c for c in curve_classes())
    pool.extend(conic_classes())
    return tuple(pool)


@dataclass
class MultiplicityTable:
    """Exact multiplicities for the pivots that could exceed ``floor``.

    ``exact`` maps pivot index to its LP value. Every other pivot has a nef
    certificate proving its multiplicity is at most ``floor`` (or strictly below
    the running maximum when ``floor`` is None).
    """

    pivots: tuple
    exact: dict = field(default_factory=dict)
    certificates: list = field(default_factory=list)


def multiplicity_table(muA: DivClass, pivots: Sequence[Pivot], floor: Fraction | None = None) -> MultiplicityTable:
    """Compute multiplicities along ``pivots``, skipping provably small ones.

    With ``floor=None`` only pivots that might reach the maximum are solved;
    with a rational ``floor`` every pivot whose multiplicity might exceed
    ``floor`` is solved exactly.
    """
    gens = curve_classes()
    pool = [_int_vec(n) * _SIGN for n in _seed_nef_pool()]
    P = np.array([_int_vec(p.cls) for p in pivots], dtype=np.int64)
    T = np.array([float(c) for c in muA.coeffs])
    Nmat = np.array(pool, dtype=np.int64)
    NT = Nmat.astype(float) @ T
    NP = Nmat @ P.T  # pool x pivots

    def bounds(NT, NP):
        with np.errstate(divide="ignore", invalid="ignore"):
            r = np.where(NP > 0, NT[:, None] / np.where(NP > 0, NP, 1), np.inf)
        return r.min(axis=0), r.argmin(axis=0)

    ub, arg = bounds(NT, NP)
    arg_src = [Nmat[k] for k in arg]
    table = MultiplicityTable(tuple(pivots))
    best = None
    order = sorted(range(len(pivots)), key=lambda i: (-ub[i], i))
    for i in order:
        threshold = floor if floor is not None else best
        if threshold is not None and ub[i] < float(threshold) * (1 - 1e-9):
            # confirm the float screen exactly with the class that produced it
            n = arg_src[i]
            n_dot_p = int(n @ P[i])
            n_dot_t = sum(Fraction(int(n[k])) * muA.coeffs[k] for k in range(9))
            if n_dot_p > 0 and n_dot_t / n_dot_p < threshold:
                continue
        out = max_coefficient_outcome(muA, gens, pivots[i].cls)
        val = out.value
        table.exact[i] = val
        if best is None or val > best:
            best = val
        cert = _int_vec(out.functional) * _SIGN
        table.certificates.append(out.functional)
        new_nt = float(cert.astype(float) @ T)
        new_np = P @ cert
        with np.errstate(divide="ignore", invalid="ignore"):
            cand = np.where(new_np > 0, new_nt / np.where(new_np > 0, new_np, 1), np.inf)
        better = cand < ub
        ub = np.where(better, cand, ub)
        for k in np.nonzero(better)[0]:
            arg_src[k] = cert
    return table


@dataclass(frozen=True)
class OracleResult:
    value: Fraction
    M: Fraction
    argmax: Pivot
    solved: int


def alpha_c_oracle(muA: DivClass, extended: bool = False) -> OracleResult:
    pivots = candidate_pivots(extended)
    table = multiplicity_table(muA, pivots)
    M = max(table.exact.values())
    i = min(k for k, v in table.exact.items() if v == M)
    return OracleResult(min(ONE, 1 / M), M, pivots[i], len(table.exact))


# --- report -----------------------------------------------------------------


@dataclass(frozen=True)
class AlphaReport:
    decomposition: Decomposition
    closed: FormulaValue
    oracle: OracleResult
    mult_bound: Fraction
    exceptional_mult: Fraction  # max multiplicity over the decomposition's E_i
    p1p1: P1xP1Readings | None = None

    @property
    def closed_form(self) -> Fraction:
        return self.closed.value

    @property
    def oracle_value(self) -> Fraction:
        return self.oracle.value

    @property
    def agree(self) -> bool:
        return self.closed.value == self.oracle.value

    @property
    def lemma_bound_holds(self) -> bool:
        """When ``M > 1``: ``M <= max(multiplicity along the E_i, mult_bound)``."""
        if self.oracle.M <= 1:
            return True
        return self.oracle.M <= max(self.exceptional_mult, self.mult_bound)

    @property
    def alpha_c_of_A(self) -> Fraction:
        """``alpha_c(S, A) = mu * alpha_c(S, mu*A)`` from the oracle value."""
        return self.decomposition.mu * self.oracle.value

    @property
    def closed_form_of_A(self) -> Fraction:
        return self.decomposition.mu * self.closed.value


def compare(d: Decomposition, extended: bool = False) -> AlphaReport:
    """Closed form, oracle and bound side by side; never reconciles them."""
    muA = d.muA
    oracle = alpha_c_oracle(muA, extended)
    exc = [e.cls for e in d.exceptionals]
    exc_mult = max((max_mult_along(muA, c) for c in exc), default=Fraction(0))
    p1p1 = p1p1_readings(d) if d.subtype is ConicSubtype.P1XP1 else None
    return AlphaReport(d, alpha_c_closed_form(d), oracle, mult_bound(d), exc_mult, p1p1)


def alpha_report(A: DivClass, extended: bool = False) -> AlphaReport:
    return compare(decompose(A), extended)

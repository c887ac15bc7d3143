"""Slope, the nef criterion and the K-stability verdict.

The verdict is ``KStable`` exactly when ``-K - (2/3) nu(A) A`` is nef, with
``nu(A) = (-K.A)/(A.A)``. Failure of that sufficient condition proves nothing,
so the other outcome is ``Inconclusive``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .alpha import AlphaReport, compare
from .cones import MINUS_K, Decomposition, decompose, is_nef, require_ample
from .lattice import CurveClass, DivClass, intersect

TWO_THIRDS = Fraction(2, 3)


class Outcome(enum.Enum):
    KSTABLE = "KStable"
    INCONCLUSIVE = "Inconclusive"


def slope_nu(A: DivClass) -> Fraction:
    require_ample(A)
    return intersect(MINUS_K, A) / intersect(A, A)


def nef_test_divisor(A: DivClass) -> DivClass:
    """``-K - (2/3) nu(A) A``; identical for every positive multiple of ``A``."""
    return MINUS_K - (TWO_THIRDS * slope_nu(A)) * A


def nef_condition(A: DivClass) -> tuple[bool, CurveClass | None]:
    return is_nef(nef_test_divisor(A))


def point_alpha_bound(d: Decomposition) -> Fraction:
    return 2 / (3 + d.a1)


def z_class_lhs(d: Decomposition) -> Fraction:
    return 1 / (3 * d.a1 + 2 * d.s_A + 1 + 2 * d.a)


def z_class_inequality(d: Decomposition, A: DivClass | None = None) -> bool:
    """``1/(3a_1 + 2s_A + 1 + 2a) >= (2/3) nu(mu A)``."""
    muA = d.muA if A is None else d.mu * A
    return z_class_lhs(d) >= TWO_THIRDS * slope_nu(muA)


def condition_i_certified(alpha_c_muA: Fraction, d: Decomposition, nu_muA: Fraction) -> bool:
    """The alpha condition alpha(S, muA) > (2/3) nu(muA), via the point-or-curve dichotomy.

    Either ``alpha(S, muA) = alpha_c`` or ``alpha(S, muA) > 2/(3+a_1)``, so
    ``alpha > (2/3) nu`` follows from ``alpha_c > (2/3) nu`` together with
    ``2/(3+a_1) >= (2/3) nu``. At ``A = -K`` the second holds with equality.
    """
    bound = TWO_THIRDS * nu_muA
    return alpha_c_muA > bound and point_alpha_bound(d) >= bound


def small_regime_bound(d: Decomposition) -> bool | None:
    """In the regime ``5a_1 + 4s_A + 4a <= 1``: ``2/(3+a_1) > (2/3)(1+a_1+2a)/(1+2a_1-a_1^2+2a)``.

    Returns ``None`` outside the regime.
    """
    a1, a = d.a1, d.a
    if 5 * a1 + 4 * d.s_A + 4 * a > 1:
        return None
    return Fraction(2) / (3 + a1) > TWO_THIRDS * (1 + a1 + 2 * a) / (1 + 2 * a1 - a1 * a1 + 2 * a)


@dataclass(frozen=True)
class Check:
    name: str
    value: object
    detail: str = ""


@dataclass(frozen=True)
class Verdict:
    A: DivClass
    nu: Fraction
    nu_muA: Fraction
    nef_condition: bool
    witness: CurveClass | None
    witness_pairing: Fraction | None
    alpha_lower_bound: Fraction  # bound on alpha(S, A)
    alpha_lower_bound_muA: Fraction
    alpha_condition: bool
    outcome: Outcome
    decomposition: Decomposition
    alpha: AlphaReport
    z_class: bool | None = None
    trace: tuple = field(default=())

    @property
    def kstable(self) -> bool:
        return self.outcome is Outcome.KSTABLE


def verdict(A: DivClass, extended: bool = False) -> Verdict:
    require_ample(A)
    d = decompose(A)
    report = compare(d, extended)
    nu = slope_nu(A)
    nu_mu = nu / d.mu
    test = nef_test_divisor(A)
    nef, witness = is_nef(test)
    pairing = intersect(test, witness.cls) if witness is not None else None

    # the oracle value is alpha_c itself; the closed form is a claim about it
    alpha_c_mu = report.oracle_value
    point = point_alpha_bound(d)
    lower_mu = min(alpha_c_mu, point)
    lower = d.mu * lower_mu
    cond_i = condition_i_certified(alpha_c_mu, d, nu_mu)
    z = z_class_inequality(d) if nef else None
    outcome = Outcome.KSTABLE if nef else Outcome.INCONCLUSIVE

    trace = [
        Check("mu", d.mu, "least lam with K + lam*A pseudo-effective"),
        Check("contraction", d.label),
        Check("a_sorted", d.a_sorted),
        Check("a", d.a),
        Check("s_A", d.s_A),
        Check("nu(A)", nu),
        Check("nu(muA)", nu_mu, "nu(muA) = nu(A)/mu"),
        Check("nef_test_divisor", test, "-K - (2/3) nu(A) A"),
        Check("nef", nef, f"witness {witness} pairing {pairing}" if witness is not None else "all 240 pairings >= 0"),
        Check("alpha_c(muA) closed form", report.closed_form, report.closed.tag),
        Check("alpha_c(muA) oracle", report.oracle_value, f"M = {report.oracle.M} at {report.oracle.argmax.label}"),
        Check("point bound 2/(3+a1)", point),
        Check("alpha lower bound (muA)", lower_mu, "min(alpha_c, 2/(3+a1))"),
        Check("alpha lower bound (A)", lower, "alpha(S,A) = mu * alpha(S,muA)"),
        Check("alpha condition", cond_i, f"alpha_c {alpha_c_mu} > (2/3)*{nu_mu} and {point} >= (2/3)*{nu_mu}"),
    ]
    if z is not None:
        trace.append(Check("z-class inequality", z, f"{z_class_lhs(d)} >= (2/3)*{nu_mu}"))
    trace.append(Check("outcome", outcome.value))

    return Verdict(
        A=A,
        nu=nu,
        nu_muA=nu_mu,
        nef_condition=nef,
        witness=witness,
        witness_pairing=pairing,
        alpha_lower_bound=lower,
        alpha_lower_bound_muA=lower_mu,
        alpha_condition=cond_i,
        outcome=outcome,
        decomposition=d,
        alpha=report,
        z_class=z,
        trace=tuple(trace),
    )


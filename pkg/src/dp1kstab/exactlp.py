"""Exact rational linear programming over cones of divisor classes.

Every program here has the form

    target = lam * direction + sum_g c_g * g,    lam >= 0, c >= 0

with nine equality rows (one per lattice coordinate). It is solved with a
two-phase tableau simplex over ``gmpy2.mpq`` using Bland's rule, so it always
terminates and never rounds.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from gmpy2 import mpq

from .errors import NotInCone, UnboundedProgram
from .lattice import RANK, DivClass

_ZERO = mpq(0)
_ONE = mpq(1)


class Objective(enum.Enum):
    FEASIBILITY = "feasibility"
    MAXIMIZE_SCALAR = "maximize_scalar"
    MAXIMIZE_COEFFICIENT = "maximize_coefficient"


class Status(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class ConeProgram:
    generators: tuple
    target: DivClass
    objective: Objective = Objective.FEASIBILITY
    direction: DivClass | None = None
    generator_index: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if not self.generators:
            raise ValueError("a cone program needs at least one generator")
        if self.objective is Objective.MAXIMIZE_SCALAR and self.direction is None:
            raise ValueError("MAXIMIZE_SCALAR needs a direction")
        if self.objective is Objective.MAXIMIZE_COEFFICIENT:
            if self.generator_index is None or not 0 <= self.generator_index < len(self.generators):
                raise ValueError("MAXIMIZE_COEFFICIENT needs a valid generator_index")


@dataclass(frozen=True)
class LpOutcome:
    """Result of :func:`solve`.

    ``coefficients`` are the generator weights of an optimal representation and
    ``scalar`` the weight on the direction. ``functional`` is a dual class
    ``N`` (paired through the intersection form): for an infeasible program it
    separates, ``N.g >= 0`` for every generator and ``N.target < 0``; for an
    optimal one it certifies the value, ``N.g >= 0``, ``N.target == value``.
    """

    status: Status
    value: Fraction | None = None
    scalar: Fraction | None = None
    coefficients: tuple | None = None
    functional: DivClass | None = None
    pivots: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


def _euclid_to_class(f) -> DivClass:
    # functional f.x (Euclidean) == N.x (intersection) for N = diag(1,-1,..,-1) f
    return DivClass([Fraction(int(f[0].numerator), int(f[0].denominator))] + [
        -Fraction(int(v.numerator), int(v.denominator)) for v in f[1:]
    ])


def _to_fraction(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


class _Tableau:
    """Revised simplex state for ``A x = b, x >= 0`` with artificial columns.

    Only the inverse of the 9x9 basis matrix is stored; reduced costs are
    priced against the original columns, which are small integers here.
    Rows with a negative right-hand side are negated first so that the
    artificial basis starts feasible.
    """

    def __init__(self, columns, b):
        m = len(b)
        self.m, self.n = m, len(columns)
        self.sign = [(-1 if b[i] < 0 else 1) for i in range(m)]
        self.columns = [[mpq(s * c[i]) for i, s in enumerate(self.sign)] for c in columns]
        self.nz = [[(k, v) for k, v in enumerate(col) if v != 0] for col in self.columns]
        self.xb = [mpq(s * b[i]) for i, s in enumerate(self.sign)]
        self.binv = [[_ONE if i == k else _ZERO for k in range(m)] for i in range(m)]
        self.basis = [self.n + i for i in range(m)]
        self.pivots = 0

    def _nz(self, j):
        if j < self.n:
            return self.nz[j]
        return [(j - self.n, _ONE)]

    def _prices(self, cost):
        cb = [cost.get(bv, _ZERO) for bv in self.basis]
        rows = [(c, self.binv[i]) for i, c in enumerate(cb) if c != 0]
        return [sum((c * row[k] for c, row in rows), _ZERO) for k in range(self.m)]

    def _ftran(self, j):
        nz = self._nz(j)
        return [sum((row[k] * v for k, v in nz), _ZERO) for row in self.binv]

    def _pivot(self, r: int, j: int, u=None):
        u = self._ftran(j) if u is None else u
        piv = u[r]
        prow = [v / piv for v in self.binv[r]]
        xr = self.xb[r] / piv
        self.binv[r], self.xb[r] = prow, xr
        for i in range(self.m):
            f = u[i]
            if i != r and f != 0:
                self.binv[i] = [a - f * b for a, b in zip(self.binv[i], prow)]
                self.xb[i] -= f * xr
        self.basis[r] = j
        self.pivots += 1

    def maximize(self, cost: dict, allowed: list):
        """Bland's-rule primal simplex. Returns False if unbounded."""
        allowed = sorted(allowed)
        while True:
            y = self._prices(cost)
            basic = set(self.basis)
            entering = None
            for j in allowed:
                if j in basic:
                    continue
                d = cost.get(j, _ZERO) - sum((y[k] * v for k, v in self._nz(j)), _ZERO)
                if d > 0:
                    entering = j
                    break
            if entering is None:
                return True
            u = self._ftran(entering)
            best = None
            for i in range(self.m):
                if u[i] > 0:
                    key = (self.xb[i] / u[i], self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self._pivot(best[1], entering, u)

    def value_of(self, cost):
        return sum((cost.get(bv, _ZERO) * self.xb[i] for i, bv in enumerate(self.basis)), _ZERO)

    def solution(self):
        x = [_ZERO] * self.n
        for i, bv in enumerate(self.basis):
            if bv < self.n:
                x[bv] = self.xb[i]
        return x

    def duals(self, cost):
        """Simplex multipliers in the original (unflipped) row coordinates."""
        y = self._prices(cost)
        return [y[i] * self.sign[i] for i in range(self.m)]

    def drive_out_artificials(self):
        """Pivot zero-level artificials out of the basis where possible.

        A row whose artificial cannot leave is redundant; its artificial stays
        basic at zero and never moves because every real column is zero there.
        """
        for i in range(self.m):
            if self.basis[i] < self.n:
                continue
            row = self.binv[i]
            basic = set(self.basis)
            for j in range(self.n):
                if j not in basic and sum((row[k] * v for k, v in self.nz[j]), _ZERO) != 0:
                    self._pivot(i, j)
                    break


def solve(p: ConeProgram) -> LpOutcome:
    """Solve a cone program exactly.

    For ``MAXIMIZE_SCALAR`` the first phase keeps the scalar at zero, so an
    ``INFEASIBLE`` outcome means the target itself lies outside the cone.
    """
    gens = [list(g.coeffs) for g in p.generators]
    columns = [[mpq(c.numerator, c.denominator) for c in g] for g in gens]
    scalar_col = None
    if p.objective is Objective.MAXIMIZE_SCALAR:
        scalar_col = len(columns)
        columns.append([mpq(c.numerator, c.denominator) for c in p.direction.coeffs])
    b = [mpq(c.numerator, c.denominator) for c in p.target.coeffs]
    tab = _Tableau(columns, b)
    n = tab.n
    artificials = list(range(n, n + RANK))

    phase1_cost = {j: -_ONE for j in artificials}
    phase1_cols = [j for j in range(n) if j != scalar_col] + artificials
    tab.maximize(phase1_cost, phase1_cols)
    if tab.value_of(phase1_cost) < 0:
        # optimal phase-1 duals satisfy y.A_j >= 0 on generators and y.b < 0
        f = tab.duals(phase1_cost)
        return LpOutcome(Status.INFEASIBLE, functional=_euclid_to_class(f), pivots=tab.pivots)
    tab.drive_out_artificials()

    if p.objective is Objective.FEASIBILITY:
        cost = {}
    elif p.objective is Objective.MAXIMIZE_SCALAR:
        cost = {scalar_col: _ONE}
    else:
        cost = {p.generator_index: _ONE}
    real_cols = list(range(n))
    if not tab.maximize(cost, real_cols):
        return LpOutcome(Status.UNBOUNDED, pivots=tab.pivots)
    x = tab.solution()
    value = tab.value_of(cost)
    functional = _euclid_to_class(tab.duals(cost)) if cost else None
    coeffs = tuple(_to_fraction(v) for j, v in enumerate(x) if j != scalar_col)
    scalar = _to_fraction(x[scalar_col]) if scalar_col is not None else None
    return LpOutcome(
        Status.OPTIMAL,
        value=_to_fraction(value),
        scalar=scalar,
        coefficients=coeffs,
        functional=functional,
        pivots=tab.pivots,
    )


def reconstruct(generators: Sequence[DivClass], coefficients, direction=None, scalar=None) -> DivClass:
    total = DivClass.zero()
    for g, c in zip(generators, coefficients):
        if c:
            total = total + c * g
    if direction is not None and scalar:
        total = total + scalar * direction
    return total


def cone_member(target: DivClass, generators: Sequence[DivClass]) -> tuple[bool, LpOutcome]:
    """Membership of ``target`` in the cone spanned by ``generators``.

    The outcome carries either nonnegative coefficients or a separating class.
    """
    if target.is_zero():
        zeros = tuple(Fraction(0) for _ in generators)
        return True, LpOutcome(Status.OPTIMAL, value=Fraction(0), coefficients=zeros)
    out = solve(ConeProgram(tuple(generators), target))
    return out.optimal, out


def max_coefficient_outcome(target: DivClass, generators: Sequence[DivClass], pivot: DivClass) -> LpOutcome:
    out = solve(ConeProgram(tuple(generators), target, Objective.MAXIMIZE_SCALAR, direction=pivot))
    if out.status is Status.INFEASIBLE:
        raise NotInCone(f"{target} is not in the cone")
    if out.status is Status.UNBOUNDED:
        raise UnboundedProgram(f"coefficient of {pivot} is unbounded")
    return out


def max_coefficient(target: DivClass, generators: Sequence[DivClass], pivot: DivClass) -> Fraction:
    """Largest ``t >= 0`` with ``target - t*pivot`` in the cone of ``generators``."""
    return max_coefficient_outcome(target, generators, pivot).value

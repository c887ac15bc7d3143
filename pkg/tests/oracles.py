"""Independent reference computations used by the tests.

Nothing here calls the LP layer except through plain membership tests.
"""
from fractions import Fraction
from itertools import combinations_with_replacement, permutations

from dp1kstab.cones import is_pseff
from dp1kstab.lattice import DivClass, canonical_class

K = canonical_class()


def exhaustive_classes(b_range, c_bound, square, degree):
    """All integral b*h - sum c_i e_i with the given square and -K degree."""
    found = set()
    for b in b_range:
        for cs in combinations_with_replacement(range(-c_bound, c_bound + 1), 8):
            if b * b - sum(c * c for c in cs) != square or 3 * b - sum(cs) != degree:
                continue
            for perm in set(permutations(cs)):
                found.add(DivClass([b] + [-c for c in perm]))
    return found


def _largest_k(pred, k_max=None):
    """Largest k >= 0 with pred(k) true, given pred(0) true and pred monotone decreasing."""
    lo, step = 0, 1
    while k_max is None or lo + step <= k_max:
        if not pred(lo + step):
            break
        lo, step = lo + step, 2 * step
    hi = lo + step if k_max is None else min(lo + step, k_max + 1)
    while hi - lo > 1:  # pred(lo) true, pred(hi) false or out of range
        mid = (lo + hi) // 2
        if pred(mid):
            lo = mid
        else:
            hi = mid
    return lo


def mu_by_bisection(A, max_den=10**4):
    """Least lam with K + lam*A pseudo-effective, from membership tests alone.

    Exact bisection on the Stern-Brocot tree restricted to denominators
    <= max_den: the invariant is that ``a/b`` is not pseudo-effective, ``c/d``
    is, and (once both are finite) ``bc - ad = 1``. Runs of identical moves are
    resolved by exponential then binary search. When no mediant with
    denominator <= max_den remains, no such rational lies strictly between the
    two ends, so the right end is the threshold if its denominator is <= max_den.
    """

    def pseff(p, q):
        return is_pseff(K + Fraction(p, q) * A)[0]

    a, b, c, d = 0, 1, 1, 0  # 0/1 and "1/0" (infinity)
    assert not pseff(a, b)
    while b + d <= max_den:
        if pseff(a + c, b + d):
            # move the right end left: (c + k a)/(d + k b) stays pseudo-effective
            k = _largest_k(lambda k: pseff(c + k * a, d + k * b), (max_den - d) // b)
            c, d = c + k * a, d + k * b
            if d + b > max_den or not k:
                break
        else:
            k_max = None if d == 0 else (max_den - b) // d
            k = _largest_k(lambda k: k == 0 or not pseff(a + k * c, b + k * d), k_max)
            a, b = a + k * c, b + k * d
    assert pseff(c, d) and not pseff(a, b)
    return Fraction(c, d)

"""scikit-learn style wrappers around the exact pipeline.

Rows of ``X`` are divisor classes: nine exact rationals ``b, b1..b8``
(``int``, ``Fraction``, or ``"p/q"`` strings), a :class:`DivClass`, or a class
string accepted by :func:`parse_class`. Floats are refused because the
pipeline is exact. Outputs are object arrays of ``Fraction``.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Integral, Rational

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.exceptions import NotFittedError

from .alpha import compare
from .cones import decompose, require_ample
from .kstab import Outcome, verdict
from .lattice import RANK, DivClass
from .parsing import parse_class

FEATURES = tuple(f"a{i}" for i in range(1, 9)) + ("a", "s_A", "mu", "alpha_c")


def _exact(x, where: str) -> Fraction:
    if isinstance(x, bool):
        raise TypeError(f"{where}: booleans are not rationals")
    if isinstance(x, (Integral, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"{where}: not a rational: {x!r}") from None
    raise TypeError(f"{where}: expected an exact rational, got {type(x).__name__}")


def check_classes(X, require_ample_rows: bool = True) -> list[DivClass]:
    """Validate ``X`` as a sequence of divisor classes and return them.

    Raises ``ValueError``/``TypeError`` for bad shapes or inexact entries and
    :class:`NotAmple` for non-ample rows when ``require_ample_rows`` is set.
    """
    if isinstance(X, np.ndarray) and X.dtype.kind == "f":
        raise TypeError("float arrays are not accepted; pass ints, Fractions or 'p/q' strings")
    rows = list(X)
    if not rows:
        raise ValueError("X has no rows")
    out = []
    for n, row in enumerate(rows):
        if isinstance(row, DivClass):
            cls = row
        elif isinstance(row, str):
            cls = parse_class(row)
        else:
            vals = list(row)
            if len(vals) != RANK:
                raise ValueError(f"row {n}: expected {RANK} entries, got {len(vals)}")
            cls = DivClass(_exact(v, f"row {n}") for v in vals)
        if require_ample_rows:
            require_ample(cls)
        out.append(cls)
    return out


class DecompositionTransformer(TransformerMixin, BaseEstimator):
    """Map each class to ``(a_1..a_8, a, s_A, mu, alpha_c(muA))``.

    ``alpha_source`` picks the closed form or the LP oracle for the last column.
    """

    def __init__(self, alpha_source: str = "oracle", extended_oracle: bool = False):
        self.alpha_source = alpha_source
        self.extended_oracle = extended_oracle

    def fit(self, X, y=None):
        if self.alpha_source not in ("oracle", "closed"):
            raise ValueError(f"alpha_source must be 'oracle' or 'closed', got {self.alpha_source!r}")
        check_classes(X)
        self.n_features_in_ = RANK
        return self

    def transform(self, X):
        if not hasattr(self, "n_features_in_"):
            raise NotFittedError("call fit before transform")
        rows = []
        for A in check_classes(X):
            d = decompose(A)
            r = compare(d, self.extended_oracle)
            alpha = r.oracle_value if self.alpha_source == "oracle" else r.closed_form
            rows.append(list(d.a_sorted) + [d.a, d.s_A, d.mu, alpha])
        return np.array(rows, dtype=object)

    def get_feature_names_out(self, input_features=None):
        return np.array(FEATURES, dtype=object)


class KStabilityClassifier(ClassifierMixin, BaseEstimator):
    """Predict ``"KStable"`` when the nef criterion holds, else ``"Inconclusive"``.

    Nothing is learned; ``fit`` only validates input and records the labels.
    """

    def __init__(self, extended_oracle: bool = False):
        self.extended_oracle = extended_oracle

    def fit(self, X, y=None):
        check_classes(X)
        self.classes_ = np.array([Outcome.INCONCLUSIVE.value, Outcome.KSTABLE.value], dtype=object)
        self.n_features_in_ = RANK
        return self

    def verdicts(self, X):
        return [verdict(A, self.extended_oracle) for A in check_classes(X)]

    def predict(self, X):
        if not hasattr(self, "classes_"):
            raise NotFittedError("call fit before predict")
        return np.array([v.outcome.value for v in self.verdicts(X)], dtype=object)

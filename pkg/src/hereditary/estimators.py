"""scikit-learn style wrappers around the solvers."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .patterns import COMPLIANT, HereditaryProperty
from .solvers import SolveRequest, delete_to_avoid, kernelize_lq, solve_dispatch
from .validation import check_k, check_points


def _rows(X, idx):
    arr = np.asarray(X, dtype=object) if not isinstance(X, np.ndarray) else X
    return arr[list(idx)]


class HereditarySubsetSelector(TransformerMixin, BaseEstimator):
    """Pick ``k`` points whose subset has ``prop``.

    After ``fit``, ``support_`` holds the chosen row indices (None when no such
    subset exists), ``route_`` the solver path taken and ``fpt_`` whether that
    path has a parameterized running-time guarantee.
    """

    def __init__(self, prop: HereditaryProperty = COMPLIANT, k: int = 3, jobs: int = 1):
        self.prop = prop
        self.k = k
        self.jobs = jobs

    def fit(self, X, y=None):
        S = check_points(X)
        res = solve_dispatch(SolveRequest(S, self.prop, check_k(self.k)), jobs=self.jobs)
        self.support_ = res.witness
        self.route_ = res.route
        self.fpt_ = res.fpt
        self.n_features_in_ = 2
        return self

    def transform(self, X):
        check_is_fitted(self, "route_")
        if self.support_ is None:
            raise ValueError(f"no {self.k}-point subset with property {self.prop.name!r}")
        return _rows(X, self.support_)


class LqKernelizer(TransformerMixin, BaseEstimator):
    """Reduce a point set to a kernel for the ``q``-in-line-free subset problem."""

    def __init__(self, k: int = 3, q: int = 3):
        self.k = k
        self.q = q

    def fit(self, X, y=None):
        S = check_points(X)
        ker = kernelize_lq(S, check_k(self.k), check_k(self.q, name="q"))
        self.kernel_indices_ = ker.provenance
        self.immediate_ = ker.immediate
        return self

    def transform(self, X):
        check_is_fitted(self, "kernel_indices_")
        return _rows(X, self.kernel_indices_)


class PatternDeleter(TransformerMixin, BaseEstimator):
    """Drop at most ``d`` points so that what remains has ``prop``."""

    def __init__(self, prop: HereditaryProperty = COMPLIANT, d: int = 1):
        self.prop = prop
        self.d = d

    def fit(self, X, y=None):
        S = check_points(X)
        self.removed_ = delete_to_avoid(S, self.prop, check_k(self.d, name="d"))
        return self

    def transform(self, X):
        check_is_fitted(self, "removed_")
        if self.removed_ is None:
            raise ValueError(f"more than {self.d} deletions are needed")
        gone = set(self.removed_)
        n = len(np.asarray(X, dtype=object))
        return _rows(X, [i for i in range(n) if i not in gone])

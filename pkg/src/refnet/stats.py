"""Test statistics computed identically on observed and reference data.

Every statistic here is a plain function of a network (or matrix) so that
the same code path evaluates the observed data and each randomized sample.
``StatSpec`` is the declarative form used by configuration files;
``make_statistic`` turns a spec into the callable the chain runners expect.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graphs import LabeledGraph, strength

__all__ = [
    "StatSpec",
    "assortativity_discrete",
    "cv",
    "cv_offdiag",
    "cv_nonzero",
    "group_coeff",
    "matrix_correlation",
    "matrix_diffs",
    "make_statistic",
]

STAT_KINDS = (
    "assortativity",
    "cv_offdiag",
    "cv_nonzero",
    "group_coeff",
    "matrix_corr",
    "matrix_diff",
)


@dataclass
class StatSpec:
    """Declarative description of a test statistic.

    ``attr`` names a node attribute (assortativity, group_coeff),
    ``measure`` the node measure regressed by group_coeff, ``compare`` a
    comparison matrix (matrix_corr / matrix_diff) and ``which`` selects
    the signed or absolute matrix difference.
    """

    kind: str
    attr: str | None = None
    weighted: bool = True
    measure: str = "strength_out"
    compare: np.ndarray | None = None
    which: str = "absolute"
    n_perm: int = 999

    def __post_init__(self):
        if self.kind not in STAT_KINDS:
            raise ValueError(f"unknown statistic kind {self.kind!r}")
        if self.kind in ("assortativity", "group_coeff") and not self.attr:
            raise ValueError(f"statistic {self.kind!r} requires an attribute name")
        if self.kind in ("matrix_corr", "matrix_diff") and self.compare is None:
            raise ValueError(f"statistic {self.kind!r} requires a comparison matrix")
        if self.kind == "matrix_diff" and self.which not in ("signed", "absolute"):
            raise ValueError("matrix_diff 'which' must be 'signed' or 'absolute'")


def assortativity_discrete(g: LabeledGraph, labels, weighted: bool = True) -> float:
    """Newman's categorical assortativity coefficient in [-1, 1].

    The mixing matrix e is built from edge weight over all ordered node
    pairs i != j; r = (sum_k e_kk - sum_k a_k b_k) / (1 - sum_k a_k b_k)
    with a, b the row and column marginals of e. ``weighted=False`` uses
    the binary adjacency instead of the weights.
    """
    labels = np.asarray(labels)
    if labels.shape != (g.n,):
        raise ValueError("labels must cover every node")
    w = g.w if weighted else (g.w > 0).astype(float)
    total = w.sum()
    if total <= 0:
        raise ValueError("graph has no edge weight")
    cats, idx = np.unique(labels, return_inverse=True)
    if cats.size < 2:
        raise ValueError("assortativity needs at least two categories present")
    z = np.zeros((g.n, cats.size))
    z[np.arange(g.n), idx] = 1.0
    e = z.T @ w @ z / total
    a = e.sum(axis=1)
    b = e.sum(axis=0)
    ab = float(a @ b)
    return float((np.trace(e) - ab) / (1.0 - ab))


def cv(values) -> float:
    """Coefficient of variation: sample (n-1) standard deviation over mean."""
    values = np.asarray(values, dtype=float)
    if values.size < 2:
        raise ValueError("need at least two values for a CV")
    mean = values.mean()
    if mean == 0:
        raise ValueError("CV undefined for zero mean")
    return float(values.std(ddof=1) / mean)


def cv_offdiag(w) -> float:
    """CV over all off-diagonal cells of a square matrix (zeros included).

    Both triangles of a symmetric matrix enter the pool, so each
    undirected weight appears twice; this matches the convention the
    matrix-level CV analyses are defined under.
    """
    w = np.asarray(w, dtype=float)
    if w.ndim != 2 or w.shape[0] != w.shape[1] or w.shape[0] < 2:
        raise ValueError("need a square matrix with n >= 2")
    mask = ~np.eye(w.shape[0], dtype=bool)
    return cv(w[mask])


def cv_nonzero(w) -> float:
    """CV over the nonzero cells of a matrix."""
    w = np.asarray(w, dtype=float)
    vals = w[w != 0]
    if vals.size < 2:
        raise ValueError("need at least two nonzero cells")
    return cv(vals)


def group_coeff(values, labels) -> float:
    """Difference of group means for a two-level categorical label.

    Returns mean(values at the lexicographically second level) minus
    mean(values at the first level) -- the slope of the one-factor linear
    model with the first level as baseline.
    """
    values = np.asarray(values, dtype=float)
    labels = np.asarray(labels)
    levels = np.unique(labels)
    if levels.size != 2:
        raise ValueError(f"need exactly two levels present, got {levels.size}")
    return float(values[labels == levels[1]].mean() - values[labels == levels[0]].mean())


def _offdiag(m: np.ndarray) -> np.ndarray:
    return m[~np.eye(m.shape[0], dtype=bool)]


def matrix_pearson(a, b) -> float:
    """Pearson correlation over the off-diagonal cells of two square matrices."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrices must be square and of equal shape")
    if a.shape[0] < 3:
        raise ValueError("need n >= 3 nodes")
    x, y = _offdiag(a), _offdiag(b)
    if x.std() == 0 or y.std() == 0:
        raise ValueError("matrix correlation undefined for zero variance")
    return float(np.corrcoef(x, y)[0, 1])


def matrix_correlation(a, b, n_perm: int = 999, rng=None) -> dict:
    """Matrix correlation with a node-permutation significance test.

    r is the Pearson correlation over off-diagonal cells; the p value
    counts permutations (simultaneous row/column reshuffles of one
    matrix) whose r reaches the observed one, with the add-one
    convention p = (1 + count) / (n_perm + 1).
    """
    if rng is None:
        rng = np.random.default_rng()
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    r_obs = matrix_pearson(a, b)
    n = a.shape[0]
    count = 0
    for _ in range(n_perm):
        perm = rng.permutation(n)
        if matrix_pearson(a, b[np.ix_(perm, perm)]) >= r_obs:
            count += 1
    return {"r": r_obs, "p": (1 + count) / (n_perm + 1)}


def matrix_diffs(a, b) -> dict:
    """Signed and absolute summed cell differences between two matrices."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError("matrices must have equal shape")
    d = a - b
    return {"signed": float(d.sum()), "absolute": float(np.abs(d).sum())}


def make_statistic(spec: StatSpec, attrs: dict | None = None):
    """Turn a StatSpec into a callable ``LabeledGraph -> float``.

    ``attrs`` supplies node attribute arrays for statistics that need
    them; matrix_corr evaluates to the correlation coefficient r (its
    permutation p value is a separate inference step).
    """
    if spec.kind in ("assortativity", "group_coeff"):
        if attrs is None or spec.attr not in attrs:
            raise ValueError(f"statistic needs node attribute {spec.attr!r}")
        labels = np.asarray(attrs[spec.attr])

    if spec.kind == "assortativity":
        return lambda g: assortativity_discrete(g, labels, weighted=spec.weighted)
    if spec.kind == "cv_offdiag":
        return lambda g: cv_offdiag(g.w)
    if spec.kind == "cv_nonzero":
        return lambda g: cv_nonzero(g.w)
    if spec.kind == "group_coeff":
        mode = {"strength_out": "out", "strength_in": "in", "strength_all": "all"}.get(
            spec.measure
        )
        if mode is None:
            raise ValueError(f"unknown group_coeff measure {spec.measure!r}")
        return lambda g: group_coeff(strength(g, mode=mode), labels)
    if spec.kind == "matrix_corr":
        return lambda g: matrix_pearson(g.w, spec.compare)
    if spec.kind == "matrix_diff":
        return lambda g: matrix_diffs(g.w, spec.compare)[spec.which]
    raise ValueError(f"unknown statistic kind {spec.kind!r}")

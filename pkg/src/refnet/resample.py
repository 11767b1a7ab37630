"""Resampling-based reference models: sampling with replacement from
networks and from the raw observation data underneath them.

Unlike permutation, resampling can repeat or drop observations, but it
never invents values absent from the data: resampled locations are always
observed locations, resampled degrees always observed degrees.
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from .graphs import GroupByIndividual, LabeledGraph

__all__ = [
    "subsample_nodes",
    "resample_degree_sequence",
    "resample_edge_weights",
    "bootstrap_gbi_rows",
    "bootstrap_locations",
]


def subsample_nodes(g: LabeledGraph, k: int, rng: np.random.Generator) -> LabeledGraph:
    """Induced subgraph on k nodes drawn uniformly without replacement."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > g.n:
        raise ValueError(f"cannot sample {k} nodes from a graph of {g.n}")
    idx = rng.choice(g.n, size=k, replace=False)
    attrs = None
    if g.attrs is not None:
        attrs = {name: np.asarray(vals)[idx] for name, vals in g.attrs.items()}
    return LabeledGraph(
        w=g.w[np.ix_(idx, idx)],
        directed=g.directed,
        ids=[g.ids[i] for i in idx],
        attrs=attrs,
    )


def resample_degree_sequence(degrees, rng: np.random.Generator) -> np.ndarray:
    """Same-length degree sequence sampled with replacement from the input.

    Realizability of the result is deliberately not checked here; graph
    construction owns that decision and its retry policy.
    """
    degrees = np.asarray(degrees, dtype=int)
    if degrees.size == 0:
        raise ValueError("degree sequence is empty")
    return rng.choice(degrees, size=degrees.size, replace=True)


def resample_edge_weights(
    weights, m: int, rng: np.random.Generator, with_replacement: bool = True
) -> np.ndarray:
    """Draw m edge weights from an observed weight pool."""
    weights = np.asarray(weights, dtype=float)
    if not with_replacement and m > weights.size:
        raise ValueError("cannot draw more weights than observed without replacement")
    if m == 0:
        return np.empty(0)
    return rng.choice(weights, size=m, replace=with_replacement)


def bootstrap_gbi_rows(gbi: GroupByIndividual, rng: np.random.Generator) -> GroupByIndividual:
    """Resample grouping events (GBI rows) with replacement.

    Day and location metadata travel with their rows, so each bootstrap
    replicate is a plausible observation history of the same individuals.
    """
    idx = rng.integers(gbi.n_events, size=gbi.n_events)
    return replace(
        gbi,
        m=gbi.m[idx],
        day=gbi.day[idx],
        loc=None if gbi.loc is None else gbi.loc[idx],
    )


def bootstrap_locations(locs, rng: np.random.Generator) -> np.ndarray:
    """Resample (x, y) coordinate pairs with replacement, pairs kept intact.

    Resampling whole pairs keeps every output location one that was
    actually visited; resampling x and y independently would fabricate
    places the animals never were.
    """
    locs = np.asarray(locs)
    if locs.ndim != 2 or locs.shape[1] != 2 or locs.shape[0] == 0:
        raise ValueError("need a nonempty (n, 2) coordinate array")
    idx = rng.integers(locs.shape[0], size=locs.shape[0])
    return locs[idx]

"""Permutation-based reference models: swap kernels run as Markov chains.

Every kernel proposes one elementary swap per step. A rejected proposal
never retries: the unchanged state is recorded as the next state of the
chain. Retrying instead would over-visit states with few legal moves and
bias the sampled distribution, so acceptance is reported but the chain
always advances exactly one step per call.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .graphs import GroupByIndividual, InteractionEvents, LabeledGraph

__all__ = [
    "SwapKernel",
    "ChainConfig",
    "ChainResult",
    "permute_node_labels",
    "edge_direction_step",
    "edge_weight_step",
    "endpoint_rewire_step",
    "gbi_checkerboard_step",
    "actor_swap_step",
    "run_chain",
]

KERNEL_KINDS = (
    "node_label",
    "edge_direction",
    "edge_weight",
    "endpoint_rewire",
    "gbi_checkerboard",
    "actor_swap",
)


def permute_node_labels(g: LabeledGraph, rng: np.random.Generator) -> LabeledGraph:
    """Reshuffle the adjacency rows and columns by one random permutation.

    Node attributes and ids stay in place, so any correlation between
    attributes and network position is broken while the weight structure
    (as a multiset) is preserved. Each call is an independent full
    reshuffle, not an incremental move.
    """
    perm = rng.permutation(g.n)
    return g.copy_with(w=g.w[np.ix_(perm, perm)])


def edge_direction_step(
    g: LabeledGraph,
    class_a,
    class_b,
    rng: np.random.Generator,
) -> tuple[LabeledGraph, bool]:
    """Swap the two directed weights of one dyad between two node classes."""
    if not g.directed:
        raise ValueError("edge direction swaps need a directed graph")
    class_a = np.asarray(class_a, dtype=int)
    class_b = np.asarray(class_b, dtype=int)
    if class_a.size == 0 or class_b.size == 0:
        raise ValueError("both node classes must be nonempty")
    if np.intersect1d(class_a, class_b).size:
        raise ValueError("node classes must be disjoint")
    i = class_a[rng.integers(class_a.size)]
    j = class_b[rng.integers(class_b.size)]
    w = g.w.copy()
    w[i, j], w[j, i] = w[j, i], w[i, j]
    return g.copy_with(w=w), True


def _eligible_dyads(w: np.ndarray, nonzero_only: bool) -> tuple[np.ndarray, np.ndarray]:
    mask = ~np.eye(w.shape[0], dtype=bool)
    if nonzero_only:
        mask &= w != 0
    return np.nonzero(mask)


def edge_weight_step(
    g: LabeledGraph,
    rng: np.random.Generator,
    nonzero_only: bool = True,
) -> tuple[LabeledGraph, bool]:
    """Exchange the weights of two sampled ordered dyads.

    With ``nonzero_only`` (the default) only occupied dyads are eligible,
    so the zero pattern of the matrix never changes. Sampling the same
    dyad twice rejects the proposal.
    """
    rows, cols = _eligible_dyads(g.w, nonzero_only)
    if rows.size < 2:
        raise ValueError("need at least two eligible dyads to swap weights")
    a = rng.integers(rows.size)
    b = rng.integers(rows.size)
    if a == b:
        return g, False
    w = g.w.copy()
    i1, j1, i2, j2 = rows[a], cols[a], rows[b], cols[b]
    w[i1, j1], w[i2, j2] = w[i2, j2], w[i1, j1]
    return g.copy_with(w=w), True


def endpoint_rewire_step(
    g: LabeledGraph,
    rng: np.random.Generator,
) -> tuple[LabeledGraph, bool]:
    """Move one directed edge to a new recipient, keeping its source.

    Preserves each node's out-degree and the total weight; in-degrees are
    free to change. Proposals that would collide with an existing edge
    (or re-pick the current recipient) are rejected.
    """
    if not g.directed:
        raise ValueError("endpoint rewiring needs a directed graph")
    rows, cols = np.nonzero(g.w)
    if rows.size == 0:
        raise ValueError("graph has no edges to rewire")
    e = rng.integers(rows.size)
    a, b = rows[e], cols[e]
    c = rng.integers(g.n - 1)
    if c >= a:
        c += 1  # uniform over nodes != a
    if c == b or g.w[a, c] != 0:
        return g, False
    w = g.w.copy()
    w[a, c] = w[a, b]
    w[a, b] = 0.0
    return g.copy_with(w=w), True


def gbi_checkerboard_step(
    gbi: GroupByIndividual,
    rng: np.random.Generator,
    same_day: bool = False,
    same_attr=None,
) -> tuple[GroupByIndividual, bool]:
    """One checkerboard swap in the event x individual matrix.

    Two occupied cells (e1, i1), (e2, i2) are sampled; if they sit on a
    2x2 checkerboard (distinct events, distinct individuals, and the
    opposite corners empty) the two 1s move diagonally, preserving every
    row and column sum. ``same_day`` restricts the second cell to events
    on the first cell's day; ``same_attr`` (an array of per-individual
    labels) additionally requires the two individuals to match.
    """
    m = gbi.m
    rows, cols = np.nonzero(m)
    if rows.size == 0:
        raise ValueError("GBI has no occupied cells")
    a = rng.integers(rows.size)
    e1, i1 = rows[a], cols[a]
    if same_day:
        keep = gbi.day[rows] == gbi.day[e1]
        rows, cols = rows[keep], cols[keep]
    b = rng.integers(rows.size)
    e2, i2 = rows[b], cols[b]
    ok = (
        e1 != e2
        and i1 != i2
        and m[e1, i2] == 0
        and m[e2, i1] == 0
        and (same_attr is None or same_attr[i1] == same_attr[i2])
    )
    if not ok:
        return gbi, False
    m2 = m.copy()
    m2[e1, i1] = 0
    m2[e2, i2] = 0
    m2[e1, i2] = 1
    m2[e2, i1] = 1
    return replace(gbi, m=m2), True


def actor_swap_step(
    ev: InteractionEvents,
    rng: np.random.Generator,
    forbid_self: bool = True,
) -> tuple[InteractionEvents, bool]:
    """Exchange the actors of two interaction records in the same event.

    Recipients never move, so the per-event actor multisets and the full
    recipient sequence are invariant. With ``forbid_self`` (default) a
    swap that would create an actor == recipient record is rejected; this
    guards the no-self-interaction invariant the records are built under.
    """
    n = len(ev)
    if n < 2:
        raise ValueError("need at least two records")
    t1 = rng.integers(n)
    same = np.flatnonzero(ev.event == ev.event[t1])
    t2 = same[rng.integers(same.size)]
    a1, a2 = ev.actor[t1], ev.actor[t2]
    if forbid_self and (a2 == ev.recipient[t1] or a1 == ev.recipient[t2]):
        return ev, False
    actor = ev.actor.copy()
    actor[t1], actor[t2] = a2, a1
    return replace(ev, actor=actor), True


@dataclass(frozen=True)
class SwapKernel:
    """A swap move plus the constraints it runs under.

    ``kind`` picks the elementary move; the remaining fields hold the
    constraint data the move needs (class memberships for direction
    swaps, day/attribute constraints for checkerboard swaps, and so on).
    """

    kind: str
    same_day: bool = False
    same_attr: tuple | None = None
    class_a: tuple | None = None
    class_b: tuple | None = None
    nonzero_only: bool = True
    forbid_self: bool = True

    def __post_init__(self):
        if self.kind not in KERNEL_KINDS:
            raise ValueError(f"unknown kernel kind {self.kind!r}")

    def step(self, state, rng: np.random.Generator):
        if self.kind == "node_label":
            return permute_node_labels(state, rng), True
        if self.kind == "edge_direction":
            return edge_direction_step(state, self.class_a, self.class_b, rng)
        if self.kind == "edge_weight":
            return edge_weight_step(state, rng, nonzero_only=self.nonzero_only)
        if self.kind == "endpoint_rewire":
            return endpoint_rewire_step(state, rng)
        if self.kind == "gbi_checkerboard":
            return gbi_checkerboard_step(
                state, rng, same_day=self.same_day, same_attr=self.same_attr
            )
        if self.kind == "actor_swap":
            return actor_swap_step(state, rng, forbid_self=self.forbid_self)
        raise ValueError(f"unknown kernel kind {self.kind!r}")


@dataclass
class ChainConfig:
    """Burn-in, length, thinning and seed of one chain run."""

    steps: int
    burn_in: int = 500
    thin: int = 10
    seed: int | None = None

    def __post_init__(self):
        if self.burn_in < 0:
            raise ValueError("burn_in must be nonnegative")
        if self.thin < 1:
            raise ValueError("thin must be at least 1")
        if self.steps < self.thin:
            raise ValueError("steps must be at least one thinning interval")


@dataclass
class ChainResult:
    """Recorded statistic series plus chain bookkeeping."""

    series: np.ndarray
    accepted: int
    trace: np.ndarray | None = None


def run_chain(state, kernel: SwapKernel, cfg: ChainConfig, stat, record_trace=False) -> ChainResult:
    """Run a swap chain and record a statistic of the evolving state.

    ``stat`` is a callable evaluated on the chain state. After ``burn_in``
    discarded steps the chain runs for ``steps`` more, recording the
    statistic every ``thin`` steps (series length floor(steps / thin)).
    Rejected proposals advance the chain with the unchanged state; the
    accepted count refers to the sampling phase only. With
    ``record_trace`` the statistic is also kept for every sampling step.
    """
    rng = np.random.default_rng(cfg.seed)
    for _ in range(cfg.burn_in):
        state, _ = kernel.step(state, rng)
    series = []
    trace = [] if record_trace else None
    accepted = 0
    for t in range(1, cfg.steps + 1):
        state, acc = kernel.step(state, rng)
        accepted += acc
        if record_trace:
            value = stat(state)
            trace.append(value)
            if t % cfg.thin == 0:
                series.append(value)
        elif t % cfg.thin == 0:
            series.append(stat(state))
    return ChainResult(
        series=np.asarray(series, dtype=float),
        accepted=accepted,
        trace=None if trace is None else np.asarray(trace, dtype=float),
    )

"""Core network data types and constructions from raw observation data.

Observation data comes in two raw forms: group-by-individual matrices
(binary event x individual tables, one row per grouping event) and
interaction records (who did what to whom, inside which grouping event).
Both are turned into weighted networks here, together with the network
measures used as building blocks by the statistics module.
"""

from __future__ import annotations

import heapq
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

__all__ = [
    "LabeledGraph",
    "GroupByIndividual",
    "InteractionEvents",
    "GroupNetwork",
    "sri_from_gbi",
    "between_group_index",
    "weighted_from_events",
    "strength",
    "degrees",
    "betweenness",
    "weighted_clustering",
    "collapse_group_network",
]


@dataclass
class LabeledGraph:
    """A weighted graph stored as a dense adjacency matrix.

    Parameters
    ----------
    w : ndarray
        Square (n, n) matrix of nonnegative edge weights. The diagonal is
        zero; a zero cell means "no edge".
    directed : bool
        If False, ``w`` must be exactly symmetric.
    ids : list of str, optional
        Node labels. Defaults to "1".."n".
    attrs : dict, optional
        Categorical node attributes, one array of length n per attribute
        name (e.g. ``{"sex": [...], "nose": [...]}``).
    """

    w: np.ndarray
    directed: bool = False
    ids: list[str] | None = None
    attrs: dict[str, np.ndarray] | None = None

    def __post_init__(self):
        self.w = np.asarray(self.w, dtype=float)
        if self.ids is None:
            self.ids = [str(i + 1) for i in range(self.w.shape[0])]

    @property
    def n(self) -> int:
        return self.w.shape[0]

    def validate(self) -> None:
        if self.w.ndim != 2 or self.w.shape[0] != self.w.shape[1]:
            raise ValueError(f"adjacency matrix must be square, got {self.w.shape}")
        if np.any(np.diag(self.w) != 0):
            raise ValueError("adjacency diagonal must be zero")
        if np.any(self.w < 0):
            raise ValueError("edge weights must be nonnegative")
        if not self.directed and not np.array_equal(self.w, self.w.T):
            raise ValueError("undirected graph requires a symmetric matrix")
        if len(self.ids) != self.n:
            raise ValueError("ids length does not match node count")
        if self.attrs is not None:
            for name, values in self.attrs.items():
                if len(values) != self.n:
                    raise ValueError(f"attribute {name!r} has wrong length")

    def copy_with(self, **changes) -> "LabeledGraph":
        return replace(self, **changes)


@dataclass
class GroupByIndividual:
    """Binary event x individual matrix with per-event metadata.

    Each row is one grouping event (e.g. a foraging subgroup on one day);
    each column is one individual. ``day[e]`` is the observation day of
    event e, ``loc[e]`` its (x, y) coordinates when known.
    """

    m: np.ndarray
    day: np.ndarray
    group: int | str = 1
    loc: np.ndarray | None = None

    def __post_init__(self):
        self.m = np.asarray(self.m, dtype=np.int8)
        self.day = np.asarray(self.day, dtype=int)
        if self.loc is not None:
            self.loc = np.asarray(self.loc, dtype=int)

    @property
    def n_events(self) -> int:
        return self.m.shape[0]

    @property
    def n_individuals(self) -> int:
        return self.m.shape[1]

    def validate(self) -> None:
        if self.m.ndim != 2:
            raise ValueError("GBI must be a 2-d matrix")
        if not np.isin(self.m, (0, 1)).all():
            raise ValueError("GBI entries must be 0 or 1")
        if np.any(self.m.sum(axis=1) < 1):
            raise ValueError("GBI contains an empty event row")
        if self.day.shape != (self.n_events,):
            raise ValueError("day labels must have one entry per event")
        if self.loc is not None and self.loc.shape != (self.n_events, 2):
            raise ValueError("loc must be an (n_events, 2) coordinate array")


@dataclass
class InteractionEvents:
    """Directed interaction records: actor -> recipient inside a grouping event.

    Parallel arrays, one entry per record. ``event`` indexes a row of the
    GBI the interactions were observed in; ``kind`` labels the behaviour
    (e.g. "dominance" or "affiliation").
    """

    day: np.ndarray
    event: np.ndarray
    actor: np.ndarray
    recipient: np.ndarray
    kind: np.ndarray

    def __post_init__(self):
        self.day = np.asarray(self.day, dtype=int)
        self.event = np.asarray(self.event, dtype=int)
        self.actor = np.asarray(self.actor, dtype=int)
        self.recipient = np.asarray(self.recipient, dtype=int)
        self.kind = np.asarray(self.kind, dtype=str)

    def __len__(self) -> int:
        return self.actor.size

    def validate(self, gbi: GroupByIndividual | None = None) -> None:
        n = len(self)
        for name in ("day", "event", "actor", "recipient", "kind"):
            if getattr(self, name).shape != (n,):
                raise ValueError(f"record field {name!r} has wrong length")
        if np.any(self.actor == self.recipient):
            raise ValueError("self-interaction record (actor == recipient)")
        if gbi is not None:
            if np.any(self.event < 0) or np.any(self.event >= gbi.n_events):
                raise ValueError("record refers to a nonexistent event")
            member = gbi.m[self.event, self.actor] & gbi.m[self.event, self.recipient]
            if not member.all():
                raise ValueError("actor/recipient not members of their event")


@dataclass
class GroupNetwork:
    """Symmetric network of summed between-group association."""

    g: np.ndarray
    clans: list[str] | None = None
    centers: np.ndarray | None = None

    def __post_init__(self):
        self.g = np.asarray(self.g, dtype=float)
        if self.centers is not None:
            self.centers = np.asarray(self.centers, dtype=int)

    @property
    def n_groups(self) -> int:
        return self.g.shape[0]

    def validate(self) -> None:
        if self.g.ndim != 2 or self.g.shape[0] != self.g.shape[1]:
            raise ValueError("group network matrix must be square")
        if np.any(np.diag(self.g) != 0):
            raise ValueError("group network diagonal must be zero")
        if not np.allclose(self.g, self.g.T):
            raise ValueError("group network must be symmetric")


def sri_from_gbi(gbi: GroupByIndividual) -> LabeledGraph:
    """Build the simple-ratio-index association network from a GBI.

    The weight between i and j is x / (n_i + n_j - x), with x the number
    of events containing both and n_i the number containing i. An
    individual that never appears gets zero association with everyone and
    triggers a UserWarning.
    """
    m = gbi.m.astype(float)
    x = m.T @ m
    seen = np.diag(x).copy()
    never = np.flatnonzero(seen == 0)
    if never.size:
        warnings.warn(
            f"individuals never observed in any event: {never.tolist()}",
            stacklevel=2,
        )
    denom = seen[:, None] + seen[None, :] - x
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(denom > 0, x / denom, 0.0)
    np.fill_diagonal(s, 0.0)
    return LabeledGraph(w=s, directed=False)


def between_group_index(c, days):
    """Association index for individuals of different groups.

    ``c`` co-occurrence days out of ``days`` observation days map to
    c / (2 * days - c), so the index runs from 0 (never together) to 1
    (together on every day). Accepts scalars or arrays of counts.
    """
    c = np.asarray(c, dtype=float)
    if days <= 0:
        raise ValueError("days must be positive")
    if np.any(c < 0):
        raise ValueError("co-occurrence count cannot be negative")
    if np.any(c > days):
        raise ValueError("co-occurrence count exceeds observation days")
    out = c / (2.0 * days - c)
    return float(out) if out.ndim == 0 else out


def weighted_from_events(ev: InteractionEvents, n: int) -> LabeledGraph:
    """Collapse interaction records into a directed weighted network.

    w[a, b] counts the records with actor a and recipient b.
    """
    if len(ev) and (ev.actor.max() >= n or ev.recipient.max() >= n):
        raise ValueError("record refers to a node id >= n")
    if np.any(ev.actor == ev.recipient):
        raise ValueError("self-interaction record (actor == recipient)")
    w = np.zeros((n, n))
    np.add.at(w, (ev.actor, ev.recipient), 1.0)
    return LabeledGraph(w=w, directed=True)


def strength(g: LabeledGraph, mode: str = "all") -> np.ndarray:
    """Weighted degree: "out" = row sums, "in" = column sums, "all" = both.

    For undirected graphs all three coincide with the row sums.
    """
    if mode not in ("in", "out", "all"):
        raise ValueError(f"unknown mode {mode!r}")
    if not g.directed:
        return g.w.sum(axis=1)
    if mode == "out":
        return g.w.sum(axis=1)
    if mode == "in":
        return g.w.sum(axis=0)
    return g.w.sum(axis=1) + g.w.sum(axis=0)


def degrees(g: LabeledGraph, mode: str = "all") -> np.ndarray:
    """Binary degree (count of nonzero incident edges), split like strength."""
    if mode not in ("in", "out", "all"):
        raise ValueError(f"unknown mode {mode!r}")
    a = (g.w > 0).astype(int)
    if not g.directed:
        return a.sum(axis=1)
    if mode == "out":
        return a.sum(axis=1)
    if mode == "in":
        return a.sum(axis=0)
    return a.sum(axis=1) + a.sum(axis=0)


def betweenness(g: LabeledGraph, normalized: bool = False) -> np.ndarray:
    """Shortest-path betweenness with edge distances 1/weight.

    Equal-length shortest paths share credit fractionally (Brandes
    accumulation). With ``normalized`` each value is divided by the
    number of ordered node pairs, n^2 - n. Graphs with fewer than three
    nodes have no intermediate vertices, so all values are zero.
    """
    if g.directed:
        raise ValueError("betweenness is defined here for undirected graphs")
    n = g.n
    bc = np.zeros(n)
    if n < 3:
        return bc
    nbrs: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    rows, cols = np.nonzero(g.w)
    for i, j in zip(rows.tolist(), cols.tolist()):
        nbrs[i].append((j, 1.0 / g.w[i, j]))

    for s in range(n):
        dist = np.full(n, np.inf)
        sigma = np.zeros(n)
        preds: list[list[int]] = [[] for _ in range(n)]
        order: list[int] = []
        dist[s] = 0.0
        sigma[s] = 1.0
        done = np.zeros(n, dtype=bool)
        heap = [(0.0, s)]
        while heap:
            d, u = heapq.heappop(heap)
            if done[u]:
                continue
            done[u] = True
            order.append(u)
            for v, duv in nbrs[u]:
                alt = d + duv
                if alt < dist[v]:
                    dist[v] = alt
                    sigma[v] = sigma[u]
                    preds[v] = [u]
                    heapq.heappush(heap, (alt, v))
                elif alt == dist[v] and not done[v]:
                    sigma[v] += sigma[u]
                    preds[v].append(u)
        delta = np.zeros(n)
        for u in reversed(order):
            for p in preds[u]:
                delta[p] += sigma[p] / sigma[u] * (1.0 + delta[u])
            if u != s:
                bc[u] += delta[u]
    bc /= 2.0  # each unordered pair visited from both endpoints
    if normalized:
        bc /= n * n - n
    return bc


def weighted_clustering(g: LabeledGraph) -> np.ndarray:
    """Barrat local weighted clustering coefficient per node.

    Nodes of degree < 2 have no neighbour pairs and are reported as NaN.
    """
    if g.directed:
        raise ValueError("weighted clustering is defined for undirected graphs")
    a = (g.w > 0).astype(float)
    k = a.sum(axis=1)
    s = g.w.sum(axis=1)
    closed = (g.w * (a @ a)).sum(axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        c = closed / (s * (k - 1))
    c[k < 2] = np.nan
    return c


def collapse_group_network(
    g: LabeledGraph,
    membership,
    clans: list[str] | None = None,
    centers: np.ndarray | None = None,
) -> GroupNetwork:
    """Sum edge weights between groups over all ordered node pairs.

    Groups are ordered by sorted unique membership label. Because every
    ordered pair (i, j) contributes w[i, j], a symmetric input counts each
    undirected edge once in each direction; this mirrors the double-loop
    construction the between-group statistics are defined on.
    """
    membership = np.asarray(membership)
    if membership.shape != (g.n,):
        raise ValueError("membership must assign a group to every node")
    labels, idx = np.unique(membership, return_inverse=True)
    z = np.zeros((g.n, labels.size))
    z[np.arange(g.n), idx] = 1.0
    gn = z.T @ g.w @ z
    np.fill_diagonal(gn, 0.0)
    return GroupNetwork(g=gn, clans=clans, centers=centers)

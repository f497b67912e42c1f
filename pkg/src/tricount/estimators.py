"""Sampling estimators for the triangle count of a graph.

Three methods share a deterministic random-source contract:

* ``ews``: Bernoulli edge sampling, then each sampled edge is extended
  to one wedge hinged at its lower-degree endpoint; a closed wedge
  contributes that endpoint's degree minus one. Estimate: tau / (3p).
* ``es``: Bernoulli edge sampling; every pair of sampled edges sharing
  a vertex forms a wedge, counted as closed when the third edge exists
  in the original graph. Estimate: closed / (3 p^2).
* ``ws``: wedges drawn with replacement, hinge vertex proportional to
  its wedge count, endpoints uniform among the hinge's neighbor pairs.
  Estimate: closed * total_wedges / (3k).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .graph import Edge, Graph, has_edge_many, neighbor_rank
from .rng import RandomSource

METHODS = ("ews", "es", "ws")


class NoWedgesError(ValueError):
    """Wedge sampling requires at least one wedge in the graph."""


@dataclass(frozen=True)
class SamplingPlan:
    """One estimator configuration: method, p or k, base seed, trial count.

    ``p`` is the edge-sampling probability used by ``ews`` and ``es``;
    ``k`` is the wedge-sample count used by ``ws``. For ``ws`` plans a
    nominal ``p`` may be carried alongside ``k`` for reporting.
    """

    method: str
    p: float | None = None
    k: int | None = None
    seed: int = 0
    runs: int = 1

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.method in ("ews", "es"):
            if self.p is None or not 0.0 < self.p <= 1.0:
                raise ValueError(f"{self.method} requires p in (0, 1]")
            if self.k is not None:
                raise ValueError(f"{self.method} does not take k")
        else:
            if self.k is None or self.k < 1:
                raise ValueError("ws requires k >= 1")
        if self.runs < 1:
            raise ValueError("runs must be >= 1")


@dataclass(frozen=True)
class EstimateResult:
    """One estimator run.

    ``raw_statistic`` is the method's raw count (wedge increments for
    ews, closed wedges for es/ws); ``entities_sampled`` counts edges
    for ews/es phase one and wedges for ws.
    """

    method: str
    p_or_k: float
    seed: int
    raw_statistic: float
    entities_sampled: int
    estimate: float
    elapsed: float

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "p_or_k": self.p_or_k,
            "seed": self.seed,
            "raw": self.raw_statistic,
            "sampled": self.entities_sampled,
            "estimate": self.estimate,
            "seconds": self.elapsed,
        }


def _check_p(p: float):
    if not 0.0 < p <= 1.0:
        raise ValueError(f"sampling probability must be in (0, 1], got {p}")


def bernoulli_edge_sample(g: Graph, p: float, rng: RandomSource) -> list[Edge]:
    """Independently keep each canonical edge with probability ``p``.

    Edges are visited in canonical (u, v) order, so the outcome is a
    deterministic function of the seed.
    """
    _check_p(p)
    eu, ev = _sample_edge_arrays(g, p, rng)
    return [Edge(int(a), int(b)) for a, b in zip(eu, ev)]


def _sample_edge_arrays(g: Graph, p: float, rng: RandomSource):
    eu, ev = g.edge_arrays
    mask = rng.uniform_reals(g.m) < p
    return eu[mask], ev[mask]


def _hinge_split(g: Graph, eu: np.ndarray, ev: np.ndarray):
    """Lower-degree endpoint of each edge (ties: smaller id) and the other."""
    deg = g.degrees
    du = deg[eu]
    dv = deg[ev]
    take_v = (dv < du) | ((dv == du) & (ev < eu))
    hinge = np.where(take_v, ev, eu).astype(np.int64)
    other = np.where(take_v, eu, ev).astype(np.int64)
    return hinge, other


def ews_wedge_increment(g: Graph, u: int, v: int, w: int) -> int:
    """Contribution of one sampled edge (u, v) with phase-two draw ``w``.

    ``w`` must be a neighbor of the edge's lower-degree endpoint other
    than the opposite endpoint. Returns degree(hinge) - 1 when the
    wedge closes, else 0. This is the scalar reference for the
    vectorized path inside :func:`ews_estimate`.
    """
    hinge, other = _hinge_split(g, np.array([u]), np.array([v]))
    h, o = int(hinge[0]), int(other[0])
    if w == o or not g.has_edge(h, w):
        raise ValueError(f"{w} is not an eligible wedge draw for edge ({u}, {v})")
    return g.degree(h) - 1 if g.has_edge(o, w) else 0


def ews_estimate(g: Graph, p: float, rng: RandomSource) -> EstimateResult:
    """Edge-based wedge sampling estimate of the triangle count.

    Phase one Bernoulli-samples edges; phase two draws, for each
    sampled edge, one uniform neighbor of the lower-degree endpoint
    excluding the opposite endpoint (edges whose lower endpoint is a
    pendant contribute 0: no triangle can pass through them). The raw
    statistic is unbiased for 3p times the triangle count.
    """
    _check_p(p)
    start = time.perf_counter()
    eu, ev = _sample_edge_arrays(g, p, rng)
    sampled = int(eu.size)
    hinge, other = _hinge_split(g, eu, ev)
    dh = g.degrees.astype(np.int64)[hinge]
    ok = dh >= 2
    hinge, other, dh = hinge[ok], other[ok], dh[ok]
    tau = 0
    if hinge.size:
        j = rng.uniform_indices(dh - 1)
        pos = neighbor_rank(g, hinge, other)
        j = j + (j >= pos)
        w = g.neighbors[g.offsets[hinge] + j].astype(np.int64)
        closed = has_edge_many(g, other, w)
        tau = int(((dh - 1) * closed).sum())
    estimate = tau / (3.0 * p)
    return EstimateResult(method="ews", p_or_k=p, seed=rng.seed,
                          raw_statistic=tau, entities_sampled=sampled,
                          estimate=estimate,
                          elapsed=time.perf_counter() - start)


def count_closed_wedges(g: Graph, edges: Iterable[tuple[int, int]]) -> tuple[int, int]:
    """Wedge census of an explicit edge subset.

    Every unordered pair of given edges sharing a vertex is one wedge,
    counted at its shared (hinge) vertex. Returns ``(closed, total)``
    where a wedge is closed when its endpoints are adjacent in ``g``.
    """
    pairs = list(edges)
    eu = np.array([e[0] for e in pairs], dtype=np.int64)
    ev = np.array([e[1] for e in pairs], dtype=np.int64)
    return _closed_wedges(g, eu, ev)


def _closed_wedges(g: Graph, eu: np.ndarray, ev: np.ndarray) -> tuple[int, int]:
    if eu.size == 0:
        return 0, 0
    hinge = np.concatenate([eu, ev])
    other = np.concatenate([ev, eu])
    order = np.argsort(hinge, kind="stable")
    hv = hinge[order]
    ot = other[order]
    _, starts, counts = np.unique(hv, return_index=True, return_counts=True)
    total = int((counts * (counts - 1) // 2).sum())
    closed = 0
    for s in np.unique(counts):
        if s < 2:
            continue
        rows = starts[counts == s]
        block = ot[rows[:, None] + np.arange(s)]
        ii, jj = np.triu_indices(int(s), k=1)
        a = block[:, ii].ravel()
        b = block[:, jj].ravel()
        closed += int(has_edge_many(g, a, b).sum())
    return closed, total


def es_estimate(g: Graph, p: float, rng: RandomSource) -> EstimateResult:
    """Edge-sampling estimate: closed wedges in the sampled subgraph.

    Both edges of a counted wedge come from the Bernoulli sample; the
    closing third edge is looked up in the original graph. The raw
    statistic is unbiased for 3 p^2 times the triangle count.
    """
    _check_p(p)
    start = time.perf_counter()
    eu, ev = _sample_edge_arrays(g, p, rng)
    closed, _ = _closed_wedges(g, eu.astype(np.int64), ev.astype(np.int64))
    estimate = closed / (3.0 * p * p)
    return EstimateResult(method="es", p_or_k=p, seed=rng.seed,
                          raw_statistic=closed, entities_sampled=int(eu.size),
                          estimate=estimate,
                          elapsed=time.perf_counter() - start)


@dataclass(frozen=True)
class WedgeSampler:
    """Prefix-sum table for O(log n) wedge-proportional vertex draws."""

    cumulative: np.ndarray
    total: int

    @property
    def weights(self) -> np.ndarray:
        """Per-vertex wedge counts d(d-1)/2."""
        return np.diff(self.cumulative, prepend=0)

    def vertex_for(self, position: int) -> int:
        """Hinge vertex owning wedge ``position`` (0 <= position < total)."""
        return int(np.searchsorted(self.cumulative, position, side="right"))


def build_wedge_sampler(g: Graph) -> WedgeSampler:
    """Cumulative per-vertex wedge counts; raises if the graph has no wedges."""
    d = g.degrees.astype(np.int64)
    w = d * (d - 1) // 2
    cumulative = np.cumsum(w)
    total = int(cumulative[-1]) if cumulative.size else 0
    if total == 0:
        raise NoWedgesError("graph has no wedges")
    cumulative.flags.writeable = False
    return WedgeSampler(cumulative=cumulative, total=total)


def wedge_is_closed(g: Graph, hinge: int, a: int, b: int) -> bool:
    """Whether the wedge a-hinge-b is closed (its endpoints adjacent)."""
    if a == b or not (g.has_edge(hinge, a) and g.has_edge(hinge, b)):
        raise ValueError(f"({a}, {hinge}, {b}) is not a wedge")
    return g.has_edge(a, b)


def ws_estimate(g: Graph, k: int, rng: RandomSource,
                sampler: WedgeSampler | None = None) -> EstimateResult:
    """Uniform wedge sampling estimate over ``k`` draws with replacement.

    Each draw picks a hinge vertex with probability proportional to its
    wedge count, then a uniform unordered pair of its neighbors. The
    closed fraction, scaled by total wedges over 3, estimates the
    triangle count.
    """
    if k < 1:
        raise ValueError(f"wedge-sample count must be >= 1, got {k}")
    start = time.perf_counter()
    if sampler is None:
        sampler = build_wedge_sampler(g)
    t = rng.uniform_indices(sampler.total, size=int(k))
    hinge = np.searchsorted(sampler.cumulative, t, side="right")
    d = g.degrees.astype(np.int64)[hinge]
    i = rng.uniform_indices(d)
    j = rng.uniform_indices(d - 1)
    j = j + (j >= i)
    base = g.offsets[hinge]
    a = g.neighbors[base + i].astype(np.int64)
    b = g.neighbors[base + j].astype(np.int64)
    omega = int(has_edge_many(g, a, b).sum())
    estimate = omega * sampler.total / (3.0 * k)
    return EstimateResult(method="ws", p_or_k=float(k), seed=rng.seed,
                          raw_statistic=omega, entities_sampled=int(k),
                          estimate=estimate,
                          elapsed=time.perf_counter() - start)

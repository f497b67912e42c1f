"""Exact triangle-related graph quantities.

These serve as ground truth for the sampling experiments and as inputs
to the closed-form error theory: the triangle count, the wedge count,
the global clustering coefficient, the per-edge triangle counts T(e),
and the two variance drivers ``phi`` (sum over triangles of the two
smaller endpoint degrees minus 3, equivalently sum over edges of
T(e) * (min endpoint degree - 1)) and ``shared_edge_pairs`` (number of
unordered triangle pairs sharing an edge, sum over edges of C(T(e), 2)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph

METRICS_CSV_HEADER = "n,m,delta,lambda,C,tri_per_edge,phi_over_3delta,K_over_delta"


@dataclass(frozen=True)
class GraphMetrics:
    """Exact global quantities of a graph (or externally supplied ones).

    Count fields are typed ``float`` because callers may supply metrics
    reconstructed from published, rounded statistics; exact computation
    stores Python ints in them.
    """

    n: int
    m: int
    triangle_count: float
    wedge_count: float
    clustering_coefficient: float
    phi: float
    shared_edge_pairs: float

    @property
    def tri_per_edge(self) -> float:
        """3 * triangles / m: triangles an average edge participates in."""
        return 3.0 * self.triangle_count / self.m if self.m else 0.0

    @property
    def phi_over_3delta(self) -> float:
        if self.triangle_count == 0:
            return 0.0
        return self.phi / (3.0 * self.triangle_count)

    @property
    def k_over_delta(self) -> float:
        if self.triangle_count == 0:
            return 0.0
        return self.shared_edge_pairs / self.triangle_count

    def to_dict(self) -> dict:
        """Flat JSON-ready mapping (raw counts plus the table ratios)."""
        return {
            "n": self.n,
            "m": self.m,
            "delta": self.triangle_count,
            "lambda": self.wedge_count,
            "C": self.clustering_coefficient,
            "phi": self.phi,
            "K": self.shared_edge_pairs,
            "tri_per_edge": self.tri_per_edge,
            "phi_over_3delta": self.phi_over_3delta,
            "K_over_delta": self.k_over_delta,
        }

    def to_csv_row(self) -> str:
        cells = [self.n, self.m, self.triangle_count, self.wedge_count,
                 self.clustering_coefficient, self.tri_per_edge,
                 self.phi_over_3delta, self.k_over_delta]
        return ",".join(_fmt(c) for c in cells)


def _fmt(x) -> str:
    if isinstance(x, float) and x.is_integer():
        return str(int(x))
    return repr(x) if isinstance(x, float) else str(x)


@dataclass(frozen=True)
class EdgeTriangleCounts:
    """T(e) for every canonical edge, aligned with ``Graph.edge_arrays``."""

    u: np.ndarray
    v: np.ndarray
    counts: np.ndarray

    def count_for(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        i = int(np.searchsorted(self.u, u))
        j = int(np.searchsorted(self.u, u, side="right"))
        k = i + int(np.searchsorted(self.v[i:j], v))
        if k < j and self.v[k] == v:
            return int(self.counts[k])
        raise KeyError(f"({u}, {v}) is not an edge")

    def total(self) -> int:
        """Sum of T(e); equals three times the triangle count."""
        return int(self.counts.sum())


def count_triangles_exact(g: Graph) -> tuple[int, EdgeTriangleCounts]:
    """Exact triangle count and per-edge T(e).

    Each edge is oriented from lower to higher rank under the
    (degree, id) total order; a triangle is discovered exactly once, at
    its lowest-ranked vertex, by intersecting out-neighbor lists. Runs
    in O(m^1.5) time on the graphs this library targets.
    """
    n = g.n
    deg = g.degrees
    rank = np.empty(n, dtype=np.int64)
    rank[np.lexsort((np.arange(n), deg))] = np.arange(n)

    # Out-oriented CSR: keep neighbors of higher rank, preserving id order.
    src = np.repeat(np.arange(n, dtype=np.int64), deg)
    keep = rank[g.neighbors] > rank[src]
    out_nbr = g.neighbors[keep].astype(np.int64)
    out_deg = np.bincount(src[keep], minlength=n)
    out_off = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(out_deg, out=out_off[1:])

    eu, ev = g.edge_arrays
    edge_key = eu.astype(np.int64) * n + ev.astype(np.int64)  # sorted
    t_counts = np.zeros(g.m, dtype=np.int64)
    delta = 0

    for u in range(n):
        vs = out_nbr[out_off[u]:out_off[u + 1]]
        if vs.size < 1:
            continue
        starts = out_off[vs]
        counts = out_off[vs + 1] - starts
        total = int(counts.sum())
        if total == 0:
            continue
        cum0 = np.concatenate(([0], np.cumsum(counts)[:-1]))
        gather = np.arange(total) + np.repeat(starts - cum0, counts)
        ws = out_nbr[gather]
        owners = np.repeat(vs, counts)
        # w closes a triangle (u, v, w) iff w is also an out-neighbor of u
        loc = np.searchsorted(vs, ws)
        loc_c = np.minimum(loc, vs.size - 1)
        hit = vs[loc_c] == ws
        if not hit.any():
            continue
        tv = owners[hit]
        tw = ws[hit]
        delta += int(hit.sum())
        for a, b in ((np.full(tv.shape, u, dtype=np.int64), tv),
                     (np.full(tw.shape, u, dtype=np.int64), tw),
                     (tv, tw)):
            lo_ = np.minimum(a, b)
            hi_ = np.maximum(a, b)
            idx = np.searchsorted(edge_key, lo_ * n + hi_)
            np.add.at(t_counts, idx, 1)

    t_counts.flags.writeable = False
    return delta, EdgeTriangleCounts(u=eu, v=ev, counts=t_counts)


def brute_force_triangles(g: Graph) -> int:
    """Cubic triangle count over all vertex triples, for small graphs.

    Builds a dense boolean adjacency matrix purely through
    ``has_edge`` queries, then counts closed triples. Independent of
    the forward algorithm; used as a testing oracle.
    """
    n = g.n
    mat = np.zeros((n, n), dtype=np.int64)
    for u in range(n):
        for v in range(u + 1, n):
            if g.has_edge(u, v):
                mat[u, v] = mat[v, u] = 1
    closed_ordered = int(np.einsum("ij,jk,ki->", mat, mat, mat))
    return closed_ordered // 6


def wedge_count(g: Graph) -> int:
    """Number of wedges: sum over vertices of d(d-1)/2."""
    d = g.degrees.astype(np.int64)
    return int((d * (d - 1) // 2).sum())


def compute_metrics(g: Graph) -> GraphMetrics:
    """Assemble all exact metrics of a graph in one pass."""
    delta, per_edge = count_triangles_exact(g)
    wedges = wedge_count(g)
    deg = g.degrees.astype(np.int64)
    min_deg = np.minimum(deg[per_edge.u], deg[per_edge.v])
    t = per_edge.counts
    phi = int((t * (min_deg - 1)).sum())
    shared = int((t * (t - 1) // 2).sum())
    c = 3.0 * delta / wedges if wedges > 0 else 0.0
    return GraphMetrics(n=g.n, m=g.m, triangle_count=delta,
                        wedge_count=wedges, clustering_coefficient=c,
                        phi=phi, shared_edge_pairs=shared)

"""Immutable undirected simple-graph representation with CSR adjacency.

Graphs are built from whitespace-separated edge lists (SNAP style:
``#``-prefixed comment lines, two integer tokens per line). Loading
drops self-loops, collapses parallel edges, symmetrizes direction, and
remaps the source ids densely to ``[0, n)`` in order of first
appearance. Neighbor lists are stored sorted so edge membership is a
binary search in the shorter endpoint list.
"""

from __future__ import annotations

import io
import warnings
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import BinaryIO, NamedTuple

import numpy as np


class GraphFormatError(ValueError):
    """A line of the edge-list input could not be parsed."""


class EmptyGraphError(ValueError):
    """No edges survived cleaning (self-loop removal, deduplication)."""


class Edge(NamedTuple):
    """Canonical undirected edge with ``u < v`` (internal ids)."""

    u: int
    v: int


def canonical_edge(u: int, v: int) -> Edge:
    return Edge(u, v) if u < v else Edge(v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph in compressed adjacency form.

    Attributes:
        n: number of vertices (dense internal ids 0..n-1).
        m: number of undirected edges after cleaning.
        offsets: per-vertex index into ``neighbors``, length n+1.
        neighbors: concatenated sorted neighbor lists, length 2m.
        original_ids: internal id -> id used in the source file.

    Instances are immutable after construction and safe to share among
    any number of concurrent readers.
    """

    n: int
    m: int
    offsets: np.ndarray
    neighbors: np.ndarray
    original_ids: np.ndarray

    def degree(self, u: int) -> int:
        return int(self.offsets[u + 1] - self.offsets[u])

    @property
    def degrees(self) -> np.ndarray:
        """Degree of every vertex (length n)."""
        return np.diff(self.offsets)

    def neighbors_of(self, v: int) -> np.ndarray:
        """Sorted neighbor list of ``v`` (read-only view)."""
        return self.neighbors[self.offsets[v]:self.offsets[v + 1]]

    def neighbor_at(self, v: int, i: int) -> int:
        """The i-th smallest neighbor of ``v``; requires i < degree(v)."""
        return int(self.neighbors[self.offsets[v] + i])

    def has_edge(self, u: int, v: int) -> bool:
        """Edge membership via binary search in the shorter neighbor list."""
        if self.degree(u) > self.degree(v):
            u, v = v, u
        lst = self.neighbors_of(u)
        i = int(np.searchsorted(lst, v))
        return i < lst.shape[0] and int(lst[i]) == v

    def edge_min_degree(self, u: int, v: int) -> int:
        """Smaller endpoint degree of edge (u, v)."""
        return min(self.degree(u), self.degree(v))

    @cached_property
    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Canonical edge list as two aligned arrays (u < v), sorted by (u, v).

        This is the iteration order used by edge sampling, so results
        are reproducible for a fixed seed.
        """
        src = np.repeat(np.arange(self.n, dtype=self.neighbors.dtype), self.degrees)
        keep = src < self.neighbors
        return src[keep], self.neighbors[keep]

    def edges(self) -> list[Edge]:
        """All canonical edges in deterministic (u, v) order."""
        eu, ev = self.edge_arrays
        return [Edge(int(a), int(b)) for a, b in zip(eu, ev)]


def has_edge_many(g: Graph, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Vectorized ``has_edge`` over aligned vertex arrays.

    Searches each pair's shorter neighbor list with a branchless binary
    search, so the cost per query is O(log min(d_u, d_v)).
    """
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    if u.size == 0:
        return np.zeros(0, dtype=bool)
    deg = g.degrees
    swap = deg[u] > deg[v]
    x = np.where(swap, v, u)
    y = np.where(swap, u, v)
    lo = g.offsets[x].astype(np.int64)
    hi = g.offsets[x + 1].astype(np.int64)
    nbr = g.neighbors
    while True:
        active = lo < hi
        if not active.any():
            break
        mid = (lo + hi) >> 1
        less = np.zeros_like(active)
        less[active] = nbr[mid[active]] < y[active]
        lo = np.where(active & less, mid + 1, lo)
        hi = np.where(active & ~less, mid, hi)
    end = g.offsets[x + 1]
    found = lo < end
    found[found] = nbr[lo[found]] == y[found]
    return found


def neighbor_rank(g: Graph, v: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Position of ``w`` within the sorted neighbor list of ``v``.

    Every (v, w) pair must be an edge; positions are 0-based.
    """
    v = np.asarray(v, dtype=np.int64)
    w = np.asarray(w, dtype=np.int64)
    lo = g.offsets[v].astype(np.int64)
    hi = g.offsets[v + 1].astype(np.int64)
    nbr = g.neighbors
    while True:
        active = lo < hi
        if not active.any():
            break
        mid = (lo + hi) >> 1
        less = np.zeros_like(active)
        less[active] = nbr[mid[active]] < w[active]
        lo = np.where(active & less, mid + 1, lo)
        hi = np.where(active & ~less, mid, hi)
    return lo - g.offsets[v]


def load_edge_list(source: str | Path | BinaryIO) -> Graph:
    """Parse an edge-list byte stream into a :class:`Graph`.

    Lines beginning with ``#`` are comments; blank lines are ignored;
    every other line must hold exactly two non-negative integer tokens.
    Self-loops are dropped, parallel/reverse duplicates collapse to one
    undirected edge, and source ids are remapped densely to ``[0, n)``
    in order of first appearance.

    Raises:
        GraphFormatError: malformed line (with its 1-based line number).
        EmptyGraphError: no edges survive cleaning.
    """
    if isinstance(source, (str, Path)):
        data = Path(source).read_bytes()
    else:
        data = source.read()
        if isinstance(data, str):  # tolerate text-mode file objects
            data = data.encode()
    pairs = _parse_pairs(data)
    return _build(pairs)


def _parse_pairs(data: bytes) -> np.ndarray:
    # Fast path: numpy's C parser. Falls back to a line-by-line scan to
    # produce an error message with the offending line number, and to
    # reject inline '#' (only whole-line comments are allowed).
    strict = all(pos == 0 or data[pos - 1:pos] == b"\n"
                 for pos in _hash_positions(data))
    if strict:
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")  # empty input warns; slow path decides
                arr = np.loadtxt(io.BytesIO(data), dtype=np.int64,
                                 comments="#", ndmin=2)
        except ValueError:
            arr = None
        if arr is not None and arr.shape[1] == 2 and (arr.size == 0 or arr.min() >= 0):
            return arr
    return _parse_pairs_slow(data)


def _hash_positions(data: bytes):
    pos = data.find(b"#")
    while pos != -1:
        yield pos
        pos = data.find(b"#", pos + 1)


def _parse_pairs_slow(data: bytes) -> np.ndarray:
    us: list[int] = []
    vs: list[int] = []
    for lineno, raw in enumerate(data.split(b"\n"), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith(b"#") and raw.lstrip() == raw:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphFormatError(
                f"line {lineno}: expected two integer tokens, got {len(tokens)}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphFormatError(
                f"line {lineno}: non-integer token in {line.decode(errors='replace')!r}"
            ) from None
        if u < 0 or v < 0:
            raise GraphFormatError(f"line {lineno}: negative vertex id")
        if u >= 2**64 or v >= 2**64:
            raise GraphFormatError(f"line {lineno}: vertex id exceeds 64 bits")
        us.append(u)
        vs.append(v)
    big = max(us, default=0) > np.iinfo(np.int64).max or \
        max(vs, default=0) > np.iinfo(np.int64).max
    dtype = np.uint64 if big else np.int64
    return np.array([us, vs], dtype=dtype).T.reshape(-1, 2)


def _build(pairs: np.ndarray) -> Graph:
    if pairs.size == 0:
        raise EmptyGraphError("edge list contains no edges")

    # Dense remap in order of first appearance (row-major over the pairs).
    flat = pairs.reshape(-1)
    uniq, first_pos, inverse = np.unique(flat, return_index=True, return_inverse=True)
    appearance = np.argsort(first_pos, kind="stable")
    rank = np.empty(uniq.shape[0], dtype=np.int64)
    rank[appearance] = np.arange(uniq.shape[0])
    codes = rank[inverse].reshape(-1, 2)
    original_ids = uniq[appearance]
    n = int(uniq.shape[0])
    if n >= 2**32:
        raise GraphFormatError("more than 2**32 distinct vertex ids")

    u, v = codes[:, 0], codes[:, 1]
    keep = u != v
    u, v = u[keep], v[keep]
    if u.size == 0:
        raise EmptyGraphError("no edges survive self-loop removal")
    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    key = np.unique(lo * np.int64(n) + hi)  # sorted canonical (u, v) keys
    eu = key // n
    ev = key % n
    m = int(key.shape[0])

    idx_dtype = np.int32 if n <= np.iinfo(np.int32).max else np.int64
    src = np.concatenate([eu, ev]).astype(idx_dtype)
    dst = np.concatenate([ev, eu]).astype(idx_dtype)
    order = np.lexsort((dst, src))
    neighbors = dst[order]
    degrees = np.bincount(src, minlength=n)
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(degrees, out=offsets[1:])

    for arr in (offsets, neighbors, original_ids):
        arr.flags.writeable = False
    return Graph(n=n, m=m, offsets=offsets, neighbors=neighbors,
                 original_ids=original_ids)

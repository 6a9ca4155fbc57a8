"""Undirected vertex-labelled graphs in CSR form, plus the degree-histogram view."""
from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

DEFAULT_MAX_VERTICES = 2**20


class GraphError(ValueError):
    pass


class SizeLimitError(GraphError):
    """Raised when an explicit graph would exceed the configured vertex cap."""


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph with sorted CSR adjacency.

    Use :meth:`from_edges` rather than the constructor; it symmetrizes,
    sorts and validates the edge list.
    """

    indptr: np.ndarray
    indices: np.ndarray
    labels: np.ndarray

    @classmethod
    def from_edges(cls, n: int, edges, labels=None) -> Graph:
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if e.size and (e.min() < 0 or e.max() >= n):
            raise GraphError("edge endpoint out of range")
        if np.any(e[:, 0] == e[:, 1]):
            raise GraphError("self-loop")
        src = np.concatenate([e[:, 0], e[:, 1]])
        dst = np.concatenate([e[:, 1], e[:, 0]])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        if len(src) > 1:
            dup = (src[1:] == src[:-1]) & (dst[1:] == dst[:-1])
            if dup.any():
                k = int(np.argmax(dup))
                raise GraphError(f"duplicate edge {{{src[k]}, {dst[k]}}}")
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        if labels is None:
            lab = np.zeros(n, dtype=np.int64)
        else:
            lab = np.asarray(labels, dtype=np.int64)
            if lab.shape != (n,):
                raise GraphError(f"expected {n} labels, got {lab.shape[0]}")
            if lab.size and lab.min() < 0:
                raise GraphError("labels must be natural numbers")
        return cls(_frozen(indptr), _frozen(dst), _frozen(lab))

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def num_edges(self) -> int:
        return len(self.indices) // 2

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def edge_list(self) -> np.ndarray:
        """Each undirected edge once as ``(u, v)`` with ``u < v``, sorted."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees())
        keep = src < self.indices
        return np.stack([src[keep], self.indices[keep]], axis=1)

    def permute(self, perm: Sequence[int]) -> Graph:
        """Relabel vertex ``v`` as ``perm[v]``."""
        p = np.asarray(perm, dtype=np.int64)
        if sorted(p.tolist()) != list(range(self.n)):
            raise GraphError("not a permutation")
        labels = np.empty_like(self.labels)
        labels[p] = self.labels
        return Graph.from_edges(self.n, p[self.edge_list()], labels)

    def check(self) -> None:
        """Full scan of the structural invariants; raises GraphError on violation."""
        n = self.n
        if self.indptr[0] != 0 or np.any(np.diff(self.indptr) < 0) or self.indptr[-1] != len(self.indices):
            raise GraphError("malformed indptr")
        if self.labels.shape != (n,):
            raise GraphError("label array length differs from order")
        src = np.repeat(np.arange(n, dtype=np.int64), self.degrees())
        if np.any(src == self.indices):
            raise GraphError("self-loop")
        inner = np.ones(len(src), dtype=bool)
        inner[self.indptr[:-1][self.degrees() > 0]] = False
        if np.any(inner & (np.diff(self.indices, prepend=-1) <= 0)):
            raise GraphError("neighbor lists not strictly increasing")
        fwd = src * n + self.indices
        rev = self.indices * n + src
        if not np.array_equal(np.sort(fwd), np.sort(rev)):
            raise GraphError("adjacency not symmetric")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class DegreeHistogram:
    """Degree multiset as ``(degree, count)`` pairs with increasing degrees."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        entries = tuple((int(d), int(c)) for d, c in self.entries)
        object.__setattr__(self, "entries", entries)
        prev = -1
        for d, c in entries:
            if d <= prev:
                raise GraphError("histogram degrees must be strictly increasing")
            if c <= 0:
                raise GraphError("histogram counts must be positive")
            prev = d
        if entries and entries[-1][0] >= self.order:
            raise GraphError("degree must be smaller than the order")

    @classmethod
    def from_degrees(cls, degrees: Iterable[int]) -> DegreeHistogram:
        vals, counts = np.unique(np.fromiter(degrees, dtype=np.int64), return_counts=True)
        return cls(tuple(zip(vals.tolist(), counts.tolist())))

    @property
    def order(self) -> int:
        return sum(c for _, c in self.entries)

    def count(self, degree: int) -> int:
        return dict(self.entries).get(degree, 0)


def degree(g: Graph, v: int) -> int:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for order {g.n}")
    return int(g.indptr[v + 1] - g.indptr[v])


def degree_histogram(g: Graph) -> DegreeHistogram:
    return DegreeHistogram.from_degrees(g.degrees())


def empty_graph(n: int) -> Graph:
    return Graph.from_edges(n, np.empty((0, 2), dtype=np.int64))


def complete_graph(n: int) -> Graph:
    u, v = np.triu_indices(n, k=1)
    return Graph.from_edges(n, np.stack([u, v], axis=1))


def path_graph(n: int) -> Graph:
    a = np.arange(n - 1)
    return Graph.from_edges(n, np.stack([a, a + 1], axis=1))


def cycle_graph(n: int) -> Graph:
    return make_circulant_regular(n, 2)


def star_graph(leaves: int) -> Graph:
    a = np.arange(1, leaves + 1)
    return Graph.from_edges(leaves + 1, np.stack([np.zeros_like(a), a], axis=1))


def make_circulant_regular(order: int, k: int) -> Graph:
    """k-regular circulant: vertex i is adjacent to i±1, ..., i±k/2 (mod order)."""
    if order < 1:
        raise GraphError("order must be positive")
    if k < 0 or k % 2:
        raise GraphError(f"degree {k} must be even and non-negative")
    if k >= order:
        raise GraphError(f"degree {k} must be smaller than order {order}")
    base = np.arange(order, dtype=np.int64)
    offsets = np.arange(1, k // 2 + 1, dtype=np.int64)
    src = np.repeat(base, len(offsets))
    dst = (src + np.tile(offsets, order)) % order
    return Graph.from_edges(order, np.stack([src, dst], axis=1))


def disjoint_union(parts: Sequence[Graph]) -> Graph:
    return union_and_join(parts, [])


def union_and_join(parts: Sequence[Graph], joins: Iterable[tuple[int, int]]) -> Graph:
    """Disjoint union of ``parts`` plus a complete bipartite join for each index pair."""
    offsets = np.zeros(len(parts) + 1, dtype=np.int64)
    np.cumsum([p.n for p in parts], out=offsets[1:])
    blocks = [p.edge_list() + off for p, off in zip(parts, offsets)]
    seen = set()
    for a, b in joins:
        if not (0 <= a < len(parts) and 0 <= b < len(parts)):
            raise GraphError(f"join ({a}, {b}) references a missing part")
        if a == b:
            raise GraphError(f"cannot join part {a} to itself")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise GraphError(f"parts {key} joined twice")
        seen.add(key)
        left = np.arange(offsets[a], offsets[a + 1], dtype=np.int64)
        right = np.arange(offsets[b], offsets[b + 1], dtype=np.int64)
        blocks.append(np.stack([np.repeat(left, len(right)), np.tile(right, len(left))], axis=1))
    labels = np.concatenate([p.labels for p in parts]) if parts else None
    edges = np.concatenate(blocks) if blocks else np.empty((0, 2), dtype=np.int64)
    return Graph.from_edges(int(offsets[-1]), edges, labels)

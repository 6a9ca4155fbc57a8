"""1-WL color refinement."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .graph import Graph, disjoint_union


def canonical_colors(colors) -> np.ndarray:
    """Relabel to 0, 1, 2, ... in order of first occurrence."""
    colors = np.asarray(colors, dtype=np.int64)
    _, first, inverse = np.unique(colors, return_index=True, return_inverse=True)
    rank = np.empty(len(first), dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(len(first))
    return rank[inverse.ravel()]


@dataclass(frozen=True, eq=False)
class Coloring:
    colors: np.ndarray
    round: int

    @property
    def num_classes(self) -> int:
        return int(self.colors.max()) + 1 if len(self.colors) else 0

    def class_sizes(self) -> list[int]:
        return np.bincount(self.colors).tolist()

    def size_histogram(self) -> dict[int, int]:
        """class size -> number of classes with that size."""
        sizes, counts = np.unique(np.bincount(self.colors), return_counts=True)
        return dict(zip(sizes.tolist(), counts.tolist()))


def initial_coloring(g: Graph) -> Coloring:
    return Coloring(canonical_colors(g.labels), 0)


def wl_step(g: Graph, c: Coloring) -> Coloring:
    if len(c.colors) != g.n:
        raise ValueError("coloring does not cover the graph")
    new = kernels.refine(g.indptr, g.indices, np.ascontiguousarray(c.colors, dtype=np.int64))
    return Coloring(new, c.round + 1)


def wl_rounds(g: Graph):
    """Yield C_0, C_1, ... up to and including the first repeated partition."""
    c = initial_coloring(g)
    yield c
    while True:
        nxt = wl_step(g, c)
        yield nxt
        if nxt.num_classes == c.num_classes:
            return
        c = nxt


def wl_stable(g: Graph) -> tuple[Coloring, int]:
    """Stable coloring C_t and the first t with |C_t| = |C_{t+1}|."""
    rounds = list(wl_rounds(g))
    stable = rounds[-2]
    return stable, stable.round


def wl_distinguish(g: Graph, h: Graph) -> bool:
    """Run refinement on both graphs with one shared relabeling and compare color counts."""
    both = disjoint_union([g, h])
    for c in wl_rounds(both):
        left = np.bincount(c.colors[: g.n], minlength=c.num_classes)
        right = np.bincount(c.colors[g.n:], minlength=c.num_classes)
        if not np.array_equal(left, right):
            return True
    return False

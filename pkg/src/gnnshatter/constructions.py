"""The two shattering families: graphs G_1..G_b and the matching classifiers.

Piecewise-linear family
    G_j has 2^(b-1) mutually non-adjacent hubs; hub i gets q_index(i, j, b) + 2
    private degree-1 dummies. The classifier for x is one PL layer with
    w_self = sum_k x_k 2^(k-1), w_agg = -1; exactly one hub fires iff x_j = 1.

Sine family
    G_j joins a result vertex r to a (4^j - 4)-regular block S of order
    4^j - 1, and S completely to a (4^(b+1) - 4^j)-regular block T of order
    4^(b+1) - 4^j + 2. Every s and t vertex has degree 4^(b+1) - 1, so its
    embedding is sin of a multiple of 2*pi; only r contributes to the readout.

Vertex numbering is fixed (PL: hubs, then dummies grouped by hub; sine: r, S, T)
so that written files are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bits import DEFAULT_MAX_BITS, BitVector, check_bits
from .gnn import Activation, GnnSpec, Layer, pad_layers
from .graph import (
    DEFAULT_MAX_VERTICES,
    DegreeHistogram,
    Graph,
    SizeLimitError,
    degree_histogram,
    empty_graph,
    make_circulant_regular,
    union_and_join,
)
from .numerics import gamma_pl, gamma_sine

FAMILIES = ("pl", "sine")
PL_THRESHOLD = Fraction(1, 2)
SINE_THRESHOLD = Fraction(2, 3)

__all__ = [
    "BitVector",
    "FamilyInstance",
    "Role",
    "build_graph",
    "build_gnn",
    "build_pl_gnn",
    "build_pl_graph",
    "build_sine_gnn",
    "build_sine_graph",
    "pl_order",
    "q_index",
    "sine_order",
    "verify_q_bijection",
]


def q_index(i: int, j: int, b: int) -> int:
    """The bits of i with a 1 inserted at (1-based) position j."""
    if b < 1:
        raise ValueError(f"b must be positive, got {b}")
    if not 1 <= j <= b:
        raise ValueError(f"j={j} outside [1, {b}]")
    if not 0 <= i < 1 << (b - 1):
        raise ValueError(f"i={i} outside [0, 2^{b - 1})")
    low = i & ((1 << (j - 1)) - 1)
    high = i >> (j - 1)
    return low | (1 << (j - 1)) | (high << j)


def verify_q_bijection(b: int, j: int) -> bool:
    """q_index(., j, b) hits every b-bit integer with bit j set, each exactly once."""
    qs = [q_index(i, j, b) for i in range(1 << (b - 1))]
    targets = {a for a in range(1 << b) if (a >> (j - 1)) & 1}
    return len(set(qs)) == len(qs) and set(qs) == targets


@dataclass(frozen=True)
class Role:
    role: str
    start: int
    stop: int
    degree: int

    def to_dict(self) -> dict:
        return {"role": self.role, "from": self.start, "to": self.stop, "degree": self.degree}


@dataclass(frozen=True, eq=False)
class FamilyInstance:
    """A built G_j together with its manifest.

    ``graph`` is a :class:`Graph` in explicit mode and a
    :class:`DegreeHistogram` in implicit mode. Role ranges are half-open.
    """

    family: str
    b: int
    j: int
    graph: Graph | DegreeHistogram
    roles: tuple[Role, ...]

    @property
    def explicit(self) -> bool:
        return isinstance(self.graph, Graph)

    @property
    def order(self) -> int:
        return self.graph.n if self.explicit else self.graph.order

    def histogram(self) -> DegreeHistogram:
        return degree_histogram(self.graph) if self.explicit else self.graph

    def role(self, name: str) -> Role:
        for r in self.roles:
            if r.role == name:
                return r
        raise KeyError(name)

    def manifest(self) -> dict:
        return {
            "family": self.family,
            "b": self.b,
            "j": self.j,
            "order": self.order,
            "roles": [r.to_dict() for r in self.roles],
        }

    def check_manifest(self) -> None:
        """Raise AssertionError if declared degrees disagree with the graph."""
        if self.explicit:
            degs = self.graph.degrees()
            for r in self.roles:
                got = set(degs[r.start:r.stop].tolist())
                if got != {r.degree}:
                    raise AssertionError(f"{r.role}: declared degree {r.degree}, found {sorted(got)}")
            covered = sum(r.stop - r.start for r in self.roles)
            if covered != self.graph.n:
                raise AssertionError(f"roles cover {covered} of {self.graph.n} vertices")
        else:
            declared: dict[int, int] = {}
            for r in self.roles:
                declared[r.degree] = declared.get(r.degree, 0) + r.stop - r.start
            if DegreeHistogram(tuple(sorted(declared.items()))) != self.graph:
                raise AssertionError("manifest degrees disagree with histogram")


def _check_order(order: int, max_vertices: int) -> None:
    if order > max_vertices:
        raise SizeLimitError(f"explicit graph of order {order} exceeds cap {max_vertices}")


def pl_order(b: int, j: int) -> int:
    hubs = 1 << (b - 1)
    return hubs + sum(q_index(i, j, b) + 2 for i in range(hubs))


def build_pl_graph(b: int, j: int, explicit: bool = True, max_vertices: int = DEFAULT_MAX_VERTICES) -> FamilyInstance:
    check_bits(b, DEFAULT_MAX_BITS)
    if not 1 <= j <= b:
        raise ValueError(f"j={j} outside [1, {b}]")
    hubs = 1 << (b - 1)
    degs = [q_index(i, j, b) + 2 for i in range(hubs)]
    n_dummy = sum(degs)
    roles = [Role(f"s_{i}", i, i + 1, d) for i, d in enumerate(degs)]
    roles.append(Role("dummy", hubs, hubs + n_dummy, 1))
    if not explicit:
        hist = DegreeHistogram(tuple([(1, n_dummy)] + [(d, 1) for d in sorted(degs)]))
        return FamilyInstance("pl", b, j, hist, tuple(roles))
    _check_order(hubs + n_dummy, max_vertices)
    hub_of_dummy = np.repeat(np.arange(hubs, dtype=np.int64), degs)
    dummies = np.arange(hubs, hubs + n_dummy, dtype=np.int64)
    g = Graph.from_edges(hubs + n_dummy, np.stack([hub_of_dummy, dummies], axis=1))
    return FamilyInstance("pl", b, j, g, tuple(roles))


def sine_order(b: int) -> int:
    return 4 ** (b + 1) + 2


def build_sine_graph(b: int, j: int, explicit: bool = False, max_vertices: int = DEFAULT_MAX_VERTICES) -> FamilyInstance:
    check_bits(b, DEFAULT_MAX_BITS)
    if not 1 <= j <= b:
        raise ValueError(f"j={j} outside [1, {b}]")
    n_s = 4**j - 1
    n_t = 4 ** (b + 1) - 4**j + 2
    big = 4 ** (b + 1) - 1
    roles = (
        Role("r", 0, 1, 4**j - 1),
        Role("s", 1, 1 + n_s, big),
        Role("t", 1 + n_s, 1 + n_s + n_t, big),
    )
    if not explicit:
        hist = DegreeHistogram(((4**j - 1, 1), (big, n_s + n_t)))
        return FamilyInstance("sine", b, j, hist, roles)
    _check_order(1 + n_s + n_t, max_vertices)
    g = union_and_join(
        [empty_graph(1), make_circulant_regular(n_s, 4**j - 4), make_circulant_regular(n_t, 4 ** (b + 1) - 4**j)],
        [(0, 1), (1, 2)],
    )
    return FamilyInstance("sine", b, j, g, roles)


def build_pl_gnn(x: BitVector) -> GnnSpec:
    layer = Layer(gamma_pl(x), Fraction(-1), Fraction(0), Activation.PL_TRIANGLE)
    return GnnSpec((layer,), PL_THRESHOLD, Fraction(1))


def build_sine_gnn(x: BitVector, depth: int = 1) -> GnnSpec:
    if depth < 1:
        raise ValueError("depth must be at least 1")
    g = gamma_sine(x)
    spec = GnnSpec((Layer(g, g, Fraction(0), Activation.SIN_PI_HALF),), SINE_THRESHOLD, Fraction(1))
    return pad_layers(spec, depth)


def build_graph(family: str, b: int, j: int, explicit: bool, max_vertices: int = DEFAULT_MAX_VERTICES) -> FamilyInstance:
    if family == "pl":
        return build_pl_graph(b, j, explicit, max_vertices)
    if family == "sine":
        return build_sine_graph(b, j, explicit, max_vertices)
    raise ValueError(f"unknown family {family!r}")


def build_gnn(family: str, x: BitVector, depth: int = 1) -> GnnSpec:
    if family == "pl":
        if depth != 1:
            raise ValueError("the PL family is depth 1")
        return build_pl_gnn(x)
    if family == "sine":
        return build_sine_gnn(x, depth)
    raise ValueError(f"unknown family {family!r}")

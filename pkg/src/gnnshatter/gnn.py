"""Width-1 message-passing GNN evaluator.

Every layer computes ``act(w_self * h_v + w_agg * sum_{u in N(v)} h_u + bias)``
and the readout is the sum of final embeddings. Two backends:

``exact``
    Fractions throughout; a sine activation returns an exact 0/1/-1 whenever
    the reduced argument allows it and a float otherwise. Authoritative for
    classification.
``float``
    Plain doubles, for diagnostics.

Embeddings are stored interned: a table of distinct values plus a per-vertex
index into it. Family graphs have a handful of distinct values, so each
activation is evaluated once per distinct (own value, neighbor sum) pair
rather than once per vertex.
"""
from __future__ import annotations

import enum
import json
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from . import kernels
from .graph import DegreeHistogram, Graph
from .numerics import format_rational, parse_rational, sinpi_half, sinpi_half_float, sinpi_half_ratio

BACKENDS = ("exact", "float")
_I64_SAFE = 2**62

Scalar = Fraction | float


class Activation(str, enum.Enum):
    PL_TRIANGLE = "pl_triangle"
    SIN_PI_HALF = "sinpi_half"
    IDENTITY = "identity"


def pl_triangle(x):
    """Triangle bump of height 1 at -2, supported on (-3, -1)."""
    if x <= -3:
        return x * 0
    if x <= -2:
        return x + 3
    if x < -1:
        return -x - 1
    return x * 0


def _pl_triangle_array(x: np.ndarray) -> np.ndarray:
    return np.select([x <= -3, x <= -2, x < -1], [0.0, x + 3, -x - 1], 0.0)


def activate(act: Activation, q: Scalar) -> Scalar:
    """Scalar activation; Fractions stay exact where the function allows."""
    if act is Activation.IDENTITY:
        return q
    if act is Activation.PL_TRIANGLE:
        return pl_triangle(q)
    if isinstance(q, Fraction):
        return sinpi_half(q).scalar()
    return sinpi_half_float(float(q))


_ZERO = Fraction(0)


def _activate_ratio(act: Activation, num: int, den: int) -> Scalar:
    """activate(act, Fraction(num, den)) without building Fractions for zeros."""
    if act is Activation.IDENTITY:
        return Fraction(num, den)
    if act is Activation.PL_TRIANGLE:
        if num <= -3 * den or num >= -den:
            return _ZERO
        if num <= -2 * den:
            return Fraction(num + 3 * den, den)
        return Fraction(-num - den, den)
    return sinpi_half_ratio(num, den)


def _activate_array(act: Activation, x: np.ndarray) -> np.ndarray:
    if act is Activation.IDENTITY:
        return x
    if act is Activation.PL_TRIANGLE:
        return _pl_triangle_array(x)
    return sinpi_half_float(x)


@dataclass(frozen=True)
class Layer:
    w_self: Fraction
    w_agg: Fraction
    bias: Fraction
    activation: Activation

    def __post_init__(self):
        for name in ("w_self", "w_agg", "bias"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        object.__setattr__(self, "activation", Activation(self.activation))

    def to_dict(self) -> dict:
        return {
            "w_self": format_rational(self.w_self),
            "w_agg": format_rational(self.w_agg),
            "bias": format_rational(self.bias),
            "activation": self.activation.value,
        }

    @classmethod
    def from_dict(cls, d: dict) -> Layer:
        return cls(
            parse_rational(d["w_self"]),
            parse_rational(d["w_agg"]),
            parse_rational(d.get("bias", "0")),
            Activation(d["activation"]),
        )


@dataclass(frozen=True)
class GnnSpec:
    layers: tuple[Layer, ...]
    threshold: Fraction
    init: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        object.__setattr__(self, "threshold", Fraction(self.threshold))
        object.__setattr__(self, "init", Fraction(self.init))
        if not self.layers:
            raise ValueError("a GNN needs at least one layer")

    @property
    def depth(self) -> int:
        return len(self.layers)

    def distinct_weights(self) -> list[Fraction]:
        """Distinct non-zero weights and biases over all layers, sorted."""
        vals = {w for layer in self.layers for w in (layer.w_self, layer.w_agg, layer.bias) if w}
        return sorted(vals)

    def to_dict(self) -> dict:
        return {
            "layers": [layer.to_dict() for layer in self.layers],
            "threshold": format_rational(self.threshold),
            "init": format_rational(self.init),
        }

    @classmethod
    def from_dict(cls, d: dict) -> GnnSpec:
        try:
            return cls(
                tuple(Layer.from_dict(x) for x in d["layers"]),
                parse_rational(d["threshold"]),
                parse_rational(d.get("init", "1")),
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed GNN spec: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> GnnSpec:
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True, eq=False)
class Embedding:
    """Per-vertex values at one layer, as ``table[ids[v]]``."""

    table: tuple
    ids: np.ndarray
    layer: int
    _counts: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_counts", np.bincount(self.ids, minlength=len(self.table)))

    def __len__(self) -> int:
        return len(self.ids)

    def __getitem__(self, v: int) -> Scalar:
        return self.table[self.ids[v]]

    def values(self) -> list:
        return [self.table[i] for i in self.ids.tolist()]

    def readout(self) -> Scalar:
        return sum_readout(zip(self._counts.tolist(), self.table))


def sum_readout(terms) -> Scalar:
    """Sum of ``count * value``; exact if every value is a Fraction.

    Float terms go through fsum so the result does not depend on vertex order.
    """
    exact = Fraction(0)
    inexact = []
    for count, value in terms:
        if not count or not value:
            continue
        if isinstance(value, Fraction):
            exact += count * value
        else:
            inexact.append(count * float(value))
    if not inexact:
        return exact
    return math.fsum(inexact + [float(exact)])


def _intern(values: Sequence) -> tuple[tuple, np.ndarray]:
    index: dict = {}
    ids = np.empty(len(values), dtype=np.int64)
    for k, v in enumerate(values):
        # keep 0.0 and Fraction(0) apart: exactness is part of the value
        ids[k] = index.setdefault((type(v), v), len(index))
    return tuple(v for _, v in index), ids


def initial_embedding(spec: GnnSpec, g: Graph, backend: str = "exact") -> Embedding:
    init = spec.init if backend == "exact" else float(spec.init)
    return Embedding((init,), np.zeros(g.n, dtype=np.int64), 0)


def _neighbor_sums(g: Graph, emb: Embedding):
    """Exact neighbor sums as (numerators, common denominator) or floats."""
    table = emb.table
    if all(isinstance(t, Fraction) for t in table):
        den = lcm(*(t.denominator for t in table)) if table else 1
        nums = [t.numerator * (den // t.denominator) for t in table]
        bound = max((abs(x) for x in nums), default=0) * max(len(g.indices), 1)
        if bound < _I64_SAFE:
            x = np.asarray(nums, dtype=np.int64)[emb.ids]
            return kernels.csr_sum_i64(g.indptr, g.indices, x), den
        x = np.asarray(nums, dtype=object)[emb.ids][g.indices]
        cs = np.concatenate([np.zeros(1, dtype=object), np.cumsum(x)]) if len(x) else np.zeros(1, dtype=object)
        return cs[g.indptr[1:]] - cs[g.indptr[:-1]], den
    x = np.asarray([float(t) for t in table], dtype=np.float64)[emb.ids]
    return kernels.csr_sum_f64(g.indptr, g.indices, x), None


def _exact_layer(layer: Layer, g: Graph, emb: Embedding) -> Embedding:
    sums, den = _neighbor_sums(g, emb)

    def value(own, s):
        agg = Fraction(s, den) if den is not None else s
        return activate(layer.activation, layer.w_self * emb.table[own] + layer.w_agg * agg + layer.bias)

    if isinstance(sums, np.ndarray) and sums.dtype == np.int64:
        # one activation per distinct (own value, neighbor sum) pair
        keys, inverse = np.unique(np.stack([emb.ids, sums], axis=1), axis=0, return_inverse=True)
        vals = [value(own, s) for own, s in keys.tolist()]
        table, vids = _intern(vals)
        return Embedding(table, vids[inverse.ravel()], emb.layer + 1)
    cache: dict = {}
    out = []
    for own, s in zip(emb.ids.tolist(), sums.tolist()):
        key = (own, s)
        if key not in cache:
            cache[key] = value(own, s)
        out.append(cache[key])
    table, ids = _intern(out)
    return Embedding(table, ids, emb.layer + 1)


def _float_layer(layer: Layer, g: Graph, emb: Embedding) -> Embedding:
    h = np.asarray(emb.table, dtype=np.float64)[emb.ids]
    s = kernels.csr_sum_f64(g.indptr, g.indices, h)
    pre = float(layer.w_self) * h + float(layer.w_agg) * s + float(layer.bias)
    vals = _activate_array(layer.activation, pre)
    table, ids = np.unique(vals, return_inverse=True)
    return Embedding(tuple(table.tolist()), ids.astype(np.int64).ravel(), emb.layer + 1)


def forward_layers(spec: GnnSpec, g: Graph, backend: str = "exact") -> list[Embedding]:
    """Embeddings h^(0), ..., h^(L)."""
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}")
    step = _exact_layer if backend == "exact" else _float_layer
    embs = [initial_embedding(spec, g, backend)]
    for layer in spec.layers:
        embs.append(step(layer, g, embs[-1]))
    return embs


def forward(spec: GnnSpec, g: Graph, backend: str = "exact") -> tuple[Embedding, Scalar]:
    final = forward_layers(spec, g, backend)[-1]
    return final, final.readout()


def degree_values(spec: GnnSpec, hist: DegreeHistogram, backend: str = "exact") -> list[tuple[int, int, Scalar]]:
    """``(degree, count, h^(1))`` per histogram entry of a depth-1 network."""
    if spec.depth != 1:
        raise ValueError("degree fast path needs a depth-1 network")
    (layer,) = spec.layers
    rows = []
    if backend == "exact":
        # pre-activation (a + c*d) / den over one common denominator
        const = layer.w_self * spec.init + layer.bias
        slope = layer.w_agg * spec.init
        den = lcm(const.denominator, slope.denominator)
        a = const.numerator * (den // const.denominator)
        c = slope.numerator * (den // slope.denominator)
        for d, cnt in hist.entries:
            rows.append((d, cnt, _activate_ratio(layer.activation, a + c * d, den)))
    elif backend == "float":
        degs = np.array([d for d, _ in hist.entries], dtype=np.float64)
        init = float(spec.init)
        pre = float(layer.w_self) * init + float(layer.w_agg) * degs * init + float(layer.bias)
        vals = _activate_array(layer.activation, pre)
        rows = [(d, c, float(v)) for (d, c), v in zip(hist.entries, np.atleast_1d(vals))]
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return rows


def forward_by_degree(spec: GnnSpec, hist: DegreeHistogram, backend: str = "exact") -> Scalar:
    total = sum_readout((c, v) for _, c, v in degree_values(spec, hist, backend))
    if backend == "float":
        return float(total)
    return total


def readout(spec: GnnSpec, target: Graph | DegreeHistogram, backend: str = "exact") -> Scalar:
    if isinstance(target, DegreeHistogram):
        return forward_by_degree(spec, target, backend)
    return forward(spec, target, backend)[1]


def classify(spec: GnnSpec, target: Graph | DegreeHistogram, backend: str = "exact") -> int:
    """1 iff the readout reaches the threshold (Fraction/float comparison is exact)."""
    return int(readout(spec, target, backend) >= spec.threshold)


def pad_layers(spec: GnnSpec, target_depth: int) -> GnnSpec:
    """Prepend ``sin(pi/2 * h)`` layers; with h = 1 they keep every embedding at exactly 1."""
    if target_depth < spec.depth:
        raise ValueError(f"cannot pad depth {spec.depth} down to {target_depth}")
    if spec.init != 1:
        raise ValueError("padding layers preserve embeddings only for init 1")
    if any(layer.activation is not Activation.SIN_PI_HALF for layer in spec.layers):
        raise ValueError("padding applies to sine networks")
    pad = Layer(Fraction(1), Fraction(0), Fraction(0), Activation.SIN_PI_HALF)
    return GnnSpec((pad,) * (target_depth - spec.depth) + spec.layers, spec.threshold, spec.init)

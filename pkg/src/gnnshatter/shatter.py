"""Exhaustive shattering checks."""
from __future__ import annotations

import json
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .bits import DEFAULT_MAX_BITS, BitVector, all_bitvectors, check_bits
from .constructions import FamilyInstance, build_gnn, build_graph
from .gnn import GnnSpec, degree_values, forward, sum_readout
from .graph import DEFAULT_MAX_VERTICES
from .numerics import LEMMA_SLACK, SQRT3_HALF, SinKind, format_rational, gamma_sine, sin_bit_extract

REPRESENTATIONS = ("implicit", "explicit")


def _scalar_to_json(v) -> dict:
    if isinstance(v, Fraction):
        return {"exact": format_rational(v), "float": float(v)}
    return {"exact": None, "float": float(v)}


@dataclass
class ShatterReport:
    family: str
    b: int
    representation: str
    backend: str
    depth: int
    matrix: list[list[int]]
    dichotomies: int
    counterexample: dict | None = None
    min_positive: float | None = None
    max_negative: float | None = None
    st_exact_zero: bool | None = None
    readouts_exact: bool = True
    distinct_weights: int = 0
    extra: dict = field(default_factory=dict)

    @property
    def shattered(self) -> bool:
        return self.counterexample is None and self.dichotomies == 1 << self.b

    def to_dict(self) -> dict:
        out = {
            "family": self.family,
            "b": self.b,
            "representation": self.representation,
            "backend": self.backend,
            "depth": self.depth,
            "verdict": "shattered" if self.shattered else "not shattered",
            "dichotomies": self.dichotomies,
            "counterexample": self.counterexample,
            "distinct_weights": self.distinct_weights,
            "readouts_exact": self.readouts_exact,
            "matrix": {str(BitVector.from_int(k, self.b)): row for k, row in enumerate(self.matrix)},
        }
        if self.family == "sine":
            out["margins"] = {"min_positive": self.min_positive, "max_negative": self.max_negative}
            out["st_exact_zero"] = self.st_exact_zero
        out.update(self.extra)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_table(self) -> str:
        width = max(self.b, 1)
        head = "x".ljust(width) + " | " + " ".join(f"G{j}" for j in range(1, self.b + 1))
        lines = [head, "-" * len(head)]
        for k, row in enumerate(self.matrix):
            cells = " ".join(str(v).rjust(len(f"G{j}")) for j, v in enumerate(row, start=1))
            lines.append(f"{BitVector.from_int(k, self.b)} | {cells}")
        lines.append(f"{self.dichotomies} of {1 << self.b} dichotomies realized: "
                     f"{'shattered' if self.shattered else 'NOT shattered'}")
        return "\n".join(lines) + "\n"


def _evaluate(spec: GnnSpec, inst: FamilyInstance, backend: str):
    """Readout plus whether every s/t embedding is an exact zero (sine only)."""
    if inst.explicit:
        final, value = forward(spec, inst.graph, backend)
        st_zero = None
        if inst.family == "sine":
            lo, hi = inst.role("s").start, inst.role("t").stop
            st_zero = all(isinstance(final[v], Fraction) and final[v] == 0 for v in range(lo, hi))
        return value, st_zero
    rows = degree_values(spec, inst.graph, backend)
    value = sum_readout((c, v) for _, c, v in rows)
    if backend == "float":
        value = float(value)
    st_zero = None
    if inst.family == "sine":
        big = inst.role("s").degree
        st_zero = all(isinstance(v, Fraction) and v == 0 for d, _, v in rows if d == big)
    return value, st_zero


def verify_family_shatter(
    family: str,
    b: int,
    representation: str = "implicit",
    backend: str = "exact",
    depth: int = 1,
    threads: int = 1,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    max_bits: int = DEFAULT_MAX_BITS,
) -> ShatterReport:
    """Classify every G_j with every family classifier and compare with x."""
    check_bits(b, max_bits)
    if representation not in REPRESENTATIONS:
        raise ValueError(f"unknown representation {representation!r}")
    explicit = representation == "explicit"
    if depth > 1 and not explicit:
        raise ValueError("padded networks need explicit graphs")
    instances = [build_graph(family, b, j, explicit, max_vertices) for j in range(1, b + 1)]

    def run(x: BitVector):
        spec = build_gnn(family, x, depth)
        rows = [_evaluate(spec, inst, backend) for inst in instances]
        return x, spec, rows

    xs = list(all_bitvectors(b))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, xs))
    else:
        results = [run(x) for x in xs]

    matrix = []
    counterexample = None
    pos, neg = [], []
    st_zero = True if family == "sine" else None
    exact = True
    n_weights = 0
    for x, spec, rows in results:
        n_weights = max(n_weights, len(spec.distinct_weights()))
        row = []
        for j, (value, stz) in enumerate(rows, start=1):
            got = int(value >= spec.threshold)
            row.append(got)
            exact = exact and isinstance(value, Fraction)
            (pos if x.bit(j) else neg).append(value)
            if stz is not None:
                st_zero = st_zero and stz
            if got != x.bit(j) and counterexample is None:
                counterexample = {"x": str(x), "j": j, "expected": x.bit(j), "got": got,
                                  "readout": _scalar_to_json(value)}
        matrix.append(row)
    report = ShatterReport(
        family=family,
        b=b,
        representation=representation,
        backend=backend,
        depth=depth,
        matrix=matrix,
        dichotomies=len({tuple(r) for r in matrix}),
        counterexample=counterexample,
        st_exact_zero=st_zero,
        readouts_exact=exact,
        distinct_weights=n_weights,
    )
    if family == "sine":
        report.min_positive = float(min(pos)) if pos else None
        report.max_negative = float(max(neg)) if neg else None
    return report


def brute_force_shatter(classifiers: Sequence[Callable], graphs: Sequence) -> tuple[bool, int]:
    """Count distinct output rows of the classifiers over the graphs."""
    if not classifiers or not graphs:
        raise ValueError("need at least one classifier and one graph")
    rows = {tuple(int(c(g)) for g in graphs) for c in classifiers}
    return len(rows) == 1 << len(graphs), len(rows)


def lemma_report(b: int, j_max: int) -> dict:
    """Check the bit-extraction bounds for every x in {0,1}^b and j <= j_max."""
    check_bits(b)
    if j_max < b:
        raise ValueError(f"j_max={j_max} must be at least b={b}")
    third = Fraction(1, 3)
    failures = []
    min_pos, max_neg = 2.0, -2.0
    count = 0
    for x in all_bitvectors(b):
        if gamma_sine(x) > third:
            failures.append({"x": str(x), "j": None, "reason": "gamma exceeds 1/3"})
        for j in range(1, j_max + 1):
            count += 1
            s = sin_bit_extract(x, j)
            if j > b:
                ok = s.kind is SinKind.EXACT_ZERO
                reason = "expected exact zero"
            elif x.bit(j):
                ok = s.value >= SQRT3_HALF - LEMMA_SLACK
                min_pos = min(min_pos, s.value)
                reason = "positive bit below sqrt(3)/2"
            else:
                ok = s.value <= 0.5 + LEMMA_SLACK
                max_neg = max(max_neg, s.value)
                reason = "zero bit above 1/2"
            if not ok:
                failures.append({"x": str(x), "j": j, "value": s.value, "reason": reason})
    return {
        "b": b,
        "j_max": j_max,
        "evaluations": count,
        "min_positive": min_pos if min_pos <= 1 else None,
        "max_negative": max_neg if max_neg >= -1 else None,
        "failures": failures[:10],
        "failure_count": len(failures),
        "passed": not failures,
    }


def verify_lemma(b: int, j_max: int) -> bool:
    return lemma_report(b, j_max)["passed"]

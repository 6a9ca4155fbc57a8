"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
The default output directory comes from ``GNNSHATTER_OUT`` (else ``./gnnshatter-out``).
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import io as gio
from .bits import DEFAULT_MAX_BITS, BitVector, all_bitvectors
from .constructions import FAMILIES, build_gnn, build_graph, pl_order, sine_order
from .gnn import BACKENDS, forward, forward_by_degree, readout
from .graph import DEFAULT_MAX_VERTICES, GraphError
from .numerics import format_rational
from .shatter import lemma_report, verify_family_shatter
from .wl import wl_rounds

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _default_out() -> Path:
    return Path(os.environ.get("GNNSHATTER_OUT", "gnnshatter-out"))


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {v}")
    return v


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _scalar(v) -> dict:
    if isinstance(v, Fraction):
        return {"exact": format_rational(v), "float": float(v)}
    return {"exact": None, "float": float(v)}


def _family_order(family: str, b: int, j: int) -> int:
    return pl_order(b, j) if family == "pl" else sine_order(b)


def _resolve_explicit(cfg, family: str, b: int, j: int) -> bool:
    rep = cfg.representation
    if getattr(cfg, "explicit", False):
        rep = "explicit"
    if rep is None:
        rep = "auto" if family == "pl" else "implicit"
    if rep == "auto":
        return _family_order(family, b, j) <= cfg.max_vertices
    return rep == "explicit"


def _check_bits(b: int, cap: int) -> None:
    if b > cap:
        raise UsageError(f"--bits {b} exceeds the cap {cap}")


def cmd_family_build(cfg) -> int:
    _check_bits(cfg.bits, cfg.max_bits)
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    js = [cfg.j] if cfg.j else range(1, cfg.bits + 1)
    written = []
    for j in js:
        if not 1 <= j <= cfg.bits:
            raise UsageError(f"--j {j} outside [1, {cfg.bits}]")
        inst = build_graph(cfg.family, cfg.bits, j, _resolve_explicit(cfg, cfg.family, cfg.bits, j), cfg.max_vertices)
        stem = out / f"{cfg.family}_b{cfg.bits}_j{j}"
        if inst.explicit:
            path = stem.with_suffix(".graph")
            gio.write_graph(path, inst.graph)
        else:
            path = stem.with_suffix(".hist")
            gio.write_histogram(path, inst.graph)
        gio.write_json(stem.with_suffix(".manifest.json"), inst.manifest())
        written.append({"j": j, "graph": str(path), "order": inst.order, "explicit": inst.explicit})
    _emit({"family": cfg.family, "b": cfg.bits, "files": written})
    return EXIT_OK


def cmd_family_spec(cfg) -> int:
    x = BitVector.parse(cfg.x)
    spec = build_gnn(cfg.family, x, cfg.depth)
    if cfg.out:
        gio.write_spec(cfg.out, spec)
    else:
        print(json.dumps(spec.to_dict(), indent=2, sort_keys=True))
    return EXIT_OK


def cmd_eval(cfg) -> int:
    spec = gio.read_spec(cfg.spec)
    as_hist = cfg.histogram or str(cfg.graph).endswith(".hist")
    target = gio.read_histogram(cfg.graph) if as_hist else gio.read_graph(cfg.graph)
    value = readout(spec, target, cfg.backend)
    _emit({
        "backend": cfg.backend,
        "readout": _scalar(value),
        "threshold": format_rational(spec.threshold),
        "class": int(value >= spec.threshold),
    })
    return EXIT_OK


def _write_report(cfg, name: str, payload: dict, text: str | None = None) -> None:
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    gio.write_json(out / f"{name}.json", payload)
    if text is not None:
        (out / f"{name}.txt").write_text(text, encoding="utf-8")


def cmd_verify_shatter(cfg) -> int:
    _check_bits(cfg.bits, cfg.max_bits)
    rep = cfg.representation or "implicit"
    if rep == "auto":
        fits = all(_family_order(cfg.family, cfg.bits, j) <= cfg.max_vertices for j in range(1, cfg.bits + 1))
        rep = "explicit" if fits else "implicit"
    report = verify_family_shatter(cfg.family, cfg.bits, rep, cfg.backend, cfg.depth, cfg.threads,
                                   cfg.max_vertices, cfg.max_bits)
    payload = report.to_dict()
    _write_report(cfg, f"shatter_{cfg.family}_b{cfg.bits}", payload, report.to_table())
    if cfg.table:
        print(report.to_table(), end="")
    summary = {k: payload[k] for k in ("family", "b", "verdict", "dichotomies", "counterexample")}
    if cfg.family == "sine":
        summary["margins"] = payload["margins"]
        summary["st_exact_zero"] = payload["st_exact_zero"]
    _emit(summary)
    ok = report.shattered and report.st_exact_zero is not False
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify_lemma(cfg) -> int:
    _check_bits(cfg.bits, cfg.max_bits)
    j_max = cfg.j_max if cfg.j_max is not None else cfg.bits + 3
    if j_max < cfg.bits:
        raise UsageError("--j-max must be at least --bits")
    report = lemma_report(cfg.bits, j_max)
    _write_report(cfg, f"lemma_b{cfg.bits}", report)
    _emit(report)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def expected_stable_classes(family: str, b: int) -> int:
    """Sine: {r}, S, T. PL: every hub is alone (distinct degrees) and so is each hub's dummy set."""
    return 3 if family == "sine" else 1 << b


def cmd_verify_wl(cfg) -> int:
    _check_bits(cfg.bits, cfg.max_bits)
    rows = []
    ok = True
    for j in range(1, cfg.bits + 1):
        inst = build_graph(cfg.family, cfg.bits, j, True, cfg.max_vertices)
        counts = [c.num_classes for c in wl_rounds(inst.graph)]
        expected = expected_stable_classes(cfg.family, cfg.bits)
        good = counts[-1] == expected
        ok = ok and good
        rows.append({"j": j, "class_counts": counts, "stable_classes": counts[-1],
                     "stable_round": len(counts) - 2, "expected": expected, "ok": good})
    payload = {"family": cfg.family, "b": cfg.bits, "per_j": rows, "passed": ok}
    _write_report(cfg, f"wl_{cfg.family}_b{cfg.bits}", payload)
    _emit(payload)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify_oracle(cfg) -> int:
    """Degree fast path against explicit forward, exactly."""
    _check_bits(cfg.bits, cfg.max_bits)
    rng = random.Random(cfg.seed)
    if 1 << cfg.bits <= cfg.samples:
        xs = list(all_bitvectors(cfg.bits))
    else:
        xs = [BitVector.from_int(rng.randrange(1 << cfg.bits), cfg.bits) for _ in range(cfg.samples)]
    mismatches = []
    checked = 0
    for j in range(1, cfg.bits + 1):
        inst = build_graph(cfg.family, cfg.bits, j, True, cfg.max_vertices)
        hist = inst.histogram()
        for x in xs:
            spec = build_gnn(cfg.family, x)
            fast = forward_by_degree(spec, hist)
            slow = forward(spec, inst.graph)[1]
            checked += 1
            if fast != slow or type(fast) is not type(slow):
                mismatches.append({"x": str(x), "j": j, "fast": _scalar(fast), "explicit": _scalar(slow)})
    payload = {"family": cfg.family, "b": cfg.bits, "checked": checked,
               "mismatches": mismatches[:10], "passed": not mismatches}
    _write_report(cfg, f"oracle_{cfg.family}_b{cfg.bits}", payload)
    _emit(payload)
    return EXIT_OK if not mismatches else EXIT_FAIL


def cmd_wl_refine(cfg) -> int:
    g = gio.read_graph(cfg.graph)
    rounds = list(wl_rounds(g))
    stable = rounds[-2]
    _emit({
        "n": g.n,
        "class_counts": [c.num_classes for c in rounds],
        "stable_round": stable.round,
        "stable_classes": stable.num_classes,
        "class_size_histogram": {str(k): v for k, v in stable.size_histogram().items()},
        "colors": stable.colors.tolist() if cfg.colors else None,
    })
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="output directory (default: $GNNSHATTER_OUT or ./gnnshatter-out)")
    common.add_argument("--max-vertices", type=_positive, default=DEFAULT_MAX_VERTICES,
                        help="largest explicit graph that may be built")
    common.add_argument("--max-bits", type=_positive, default=DEFAULT_MAX_BITS)
    common.add_argument("--threads", type=_positive, default=1)

    fam = argparse.ArgumentParser(add_help=False)
    fam.add_argument("--family", choices=FAMILIES, required=True)
    fam.add_argument("--bits", type=_positive, required=True)

    rep = argparse.ArgumentParser(add_help=False)
    rep.add_argument("--representation", choices=("explicit", "implicit", "auto"), default=None)

    p = argparse.ArgumentParser(prog="gnnshatter", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    family = sub.add_parser("family", help="build family graphs and classifiers")
    fsub = family.add_subparsers(dest="action", required=True)
    b = fsub.add_parser("build", parents=[common, fam, rep], help="write G_1..G_b and manifests")
    b.add_argument("--j", type=_positive, default=None, help="only this graph")
    b.add_argument("--explicit", action="store_true", help="shorthand for --representation explicit")
    b.set_defaults(func=cmd_family_build)
    s = fsub.add_parser("spec", help="write the classifier for one bit vector")
    s.add_argument("--family", choices=FAMILIES, required=True)
    s.add_argument("--x", required=True, help="bit string x_1 x_2 ... x_b, e.g. 101")
    s.add_argument("--depth", type=_positive, default=1)
    s.add_argument("--out", default=None, help="spec file (default: stdout)")
    s.set_defaults(func=cmd_family_spec)

    e = sub.add_parser("eval", parents=[common], help="evaluate a spec on a graph file")
    e.add_argument("--spec", required=True)
    e.add_argument("--graph", required=True)
    e.add_argument("--histogram", action="store_true", help="graph file is a degree histogram")
    e.add_argument("--backend", choices=BACKENDS, default="exact")
    e.set_defaults(func=cmd_eval)

    verify = sub.add_parser("verify", help="run verifications")
    vsub = verify.add_subparsers(dest="check", required=True)
    vs = vsub.add_parser("shatter", parents=[common, fam, rep])
    vs.add_argument("--backend", choices=BACKENDS, default="exact")
    vs.add_argument("--depth", type=_positive, default=1)
    vs.add_argument("--table", action="store_true", help="also print the x-by-G_j table")
    vs.set_defaults(func=cmd_verify_shatter)
    vl = vsub.add_parser("lemma", parents=[common])
    vl.add_argument("--bits", type=_positive, required=True)
    vl.add_argument("--j-max", type=_positive, default=None, help="default: bits + 3")
    vl.set_defaults(func=cmd_verify_lemma)
    vw = vsub.add_parser("wl", parents=[common, fam])
    vw.set_defaults(func=cmd_verify_wl)
    vo = vsub.add_parser("oracle", parents=[common, fam])
    vo.add_argument("--samples", type=_positive, default=256)
    vo.add_argument("--seed", type=int, default=0)
    vo.set_defaults(func=cmd_verify_oracle)

    wl = sub.add_parser("wl", help="color refinement")
    wsub = wl.add_subparsers(dest="action", required=True)
    wr = wsub.add_parser("refine", parents=[common])
    wr.add_argument("--graph", required=True)
    wr.add_argument("--colors", action="store_true", help="include the stable coloring")
    wr.set_defaults(func=cmd_wl_refine)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    cfg = parser.parse_args(argv)
    if getattr(cfg, "out", None) is None and cfg.func is not cmd_family_spec:
        cfg.out = _default_out()
    try:
        return cfg.func(cfg)
    except gio.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
    except (UsageError, GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

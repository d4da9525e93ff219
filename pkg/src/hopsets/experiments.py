"""Experiment grids: stretch, size, and emulator runs over seeded graph families.

Each grid expands to a list of :class:`Cell`; a cell's seeds derive only from
``(base_seed, cell index)`` so cells can run in any order or process.
"""
from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .construct import build_hopset, size_stats
from .generators import generate_graph
from .params import derive_params
from .rng import derive_seed
from .verify import PairSpec, verify_emulator, verify_hopset

SCHEMA_VERSION = 1
EMULATOR_C = 4.0
SIZE_TOTAL_FACTOR = 8.0
SIZE_LEVEL_SLACK = 2.0

FAMILY_ARGS = {
    "er1000": ("erdos-renyi", 1000, {"m": 5000}),
    "grid32": ("grid", 1024, {}),
    "rgg1000": ("random-geometric", 1000, {}),
    "grid64": ("grid", 4096, {}),
    "er2000": ("erdos-renyi", 2000, {"m": 8000}),
    "er200": ("erdos-renyi", 200, {"m": 800}),
    "grid10": ("grid", 100, {}),
}


@dataclass(frozen=True)
class Cell:
    index: int
    kind: str  # "stretch" | "size" | "emulator"
    family: str
    n: int
    weights: str
    k: int
    epsilon: float | None
    seed_index: int
    m: int | None = None
    pairs: int = 200
    family_args: dict = field(default_factory=dict)


def _family(name):
    if name not in FAMILY_ARGS:
        raise ValueError(f"unknown family preset {name!r}; expected one of {sorted(FAMILY_ARGS)}")
    fam, n, kw = FAMILY_ARGS[name]
    return fam, n, dict(kw)


def stretch_grid(seeds=5, families=("er1000", "grid32", "rgg1000"),
                 weights=("unit", "uniform:1:100"), ks=(1, 2), epsilons=(0.5, 1.0), pairs=200):
    cells = []
    for fam, w, k, eps, s in itertools.product(families, weights, ks, epsilons, range(seeds)):
        family, n, kw = _family(fam)
        cells.append(Cell(len(cells), "stretch", family, n, w, k, eps, s, kw.get("m"), pairs, kw))
    return cells


def size_grid(seeds=20, ns=(512, 2048, 8192), ks=(1, 2, 3)):
    cells = []
    for n, k, s in itertools.product(ns, ks, range(seeds)):
        cells.append(Cell(len(cells), "size", "erdos-renyi", n, "unit", k, None, s, 5 * n, 0, {"m": 5 * n}))
    return cells


def emulator_grid(seeds=20, families=("grid64", "er2000"), k=2, pairs=500):
    cells = []
    for fam, s in itertools.product(families, range(seeds)):
        family, n, kw = _family(fam)
        cells.append(Cell(len(cells), "emulator", family, n, "unit", k, None, s, kw.get("m"), pairs, kw))
    return cells


GRIDS = {
    "stretch": stretch_grid,
    "size": size_grid,
    "emulator": emulator_grid,
    "smoke": lambda seeds=2: stretch_grid(seeds, families=("er200", "grid10"), weights=("unit", "uniform:1:100"),
                                          ks=(1, 2), epsilons=(1.0,), pairs=50),
}


def cell_seeds(base_seed: int, index: int) -> tuple[int, int, int]:
    """(graph seed, level seed, pair seed) for one cell."""
    cs = derive_seed(base_seed, index)
    return derive_seed(cs, 0), derive_seed(cs, 1), derive_seed(cs, 2)


def run_cell(cell: Cell, base_seed: int = 0) -> dict:
    g_seed, l_seed, p_seed = cell_seeds(base_seed, cell.index)
    row = {"cell": asdict(cell), "graph_seed": g_seed, "level_seed": l_seed, "pair_seed": p_seed}
    try:
        g = generate_graph(cell.family, cell.n, weights=cell.weights, seed=g_seed, **cell.family_args)
        h, _, _ = build_hopset(g, cell.k, l_seed)
        st = size_stats(h)
        row.update(m=g.m, hopset_size=len(h), counts=list(st.counts), ratios=list(st.ratios),
                   total_ratio=st.total_ratio)
        if cell.kind == "stretch":
            params = derive_params(cell.k, cell.epsilon)
            rep = verify_hopset(g, h, params, PairSpec(cell.pairs, seed=p_seed))
            a = rep.aggregate
            row.update(beta=params.beta, r=params.r, pairs_checked=a["pairs_checked"],
                       skipped=a["pairs_skipped_unreachable"], violations=a["violations"],
                       lower_violations=a["lower_violations"], max_stretch=a["max_stretch"],
                       max_hops_used=a["max_hops_used"], audit_mismatches=rep.weight_audit["mismatches"],
                       audit_exhaustive=rep.weight_audit["exhaustive"], passed=rep.passed)
        elif cell.kind == "emulator":
            rep = verify_emulator(g, h, cell.k, c=EMULATOR_C, pairs=PairSpec(cell.pairs, seed=p_seed))
            a = rep.aggregate
            row.update(pairs_checked=a["pairs_checked"], lower_violations=a["lower_violations"],
                       max_ratio=a["max_ratio"], mean_ratio=a["mean_ratio"],
                       excluded_small_d=len(rep.excluded_small_d), passed=rep.passed)
        else:
            row["passed"] = True  # judged per group, see size_groups
    except Exception as exc:  # one broken cell must not sink the grid
        row.update(passed=False, error=f"{type(exc).__name__}: {exc}")
    return row


def size_groups(rows) -> list[dict]:
    """Mean sizes per (n, k) against the geometric-series bounds."""
    groups = {}
    for r in rows:
        c = r["cell"]
        if c["kind"] != "size" or "counts" not in r:
            continue
        groups.setdefault((c["n"], c["k"]), []).append(r)
    out = []
    for (n, k), rs in sorted(groups.items()):
        unit = float(n) ** (1 + 1 / (2 ** (k + 1) - 1))
        mean_total = float(np.mean([r["hopset_size"] for r in rs]))
        mean_levels = np.mean([r["counts"] for r in rs], axis=0).tolist()
        level_bounds = [unit * 2.0 ** (2 - i) for i in range(k + 1)]
        ok_total = mean_total <= SIZE_TOTAL_FACTOR * unit
        ok_levels = all(m <= SIZE_LEVEL_SLACK * b for m, b in zip(mean_levels, level_bounds))
        out.append({"n": n, "k": k, "seeds": len(rs), "mean_total": mean_total,
                    "total_ratio": mean_total / unit, "mean_levels": mean_levels,
                    "level_ratios": [m / b for m, b in zip(mean_levels, level_bounds)],
                    "passed": ok_total and ok_levels})
    return out


def default_workers() -> int:
    return int(os.environ.get("HOPSETS_WORKERS", "1"))


def run_grid(cells, base_seed: int = 0, workers: int | None = None) -> dict:
    workers = default_workers() if workers is None else workers
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run_cell, cells, itertools.repeat(base_seed)))
    else:
        rows = [run_cell(c, base_seed) for c in cells]
    rows.sort(key=lambda r: r["cell"]["index"])
    groups = size_groups(rows)
    passed = all(r["passed"] for r in rows) and all(g["passed"] for g in groups)
    return {"schema_version": SCHEMA_VERSION, "base_seed": base_seed, "cells": len(cells),
            "rows": rows, "groups": groups, "passed": passed}


def format_summary(summary: dict) -> str:
    lines = []
    for r in summary["rows"]:
        c = r["cell"]
        eps = "-" if c["epsilon"] is None else f"{c['epsilon']:g}"
        tag = "PASS" if r["passed"] else "FAIL"
        extra = ""
        if "error" in r:
            extra = r["error"]
        elif c["kind"] == "stretch":
            extra = (f"beta={r['beta']} |H|={r['hopset_size']} pairs={r['pairs_checked']} "
                     f"viol={r['violations']}/{r['lower_violations']} max_stretch={r['max_stretch']:.6f} "
                     f"max_hops={r['max_hops_used']}")
        elif c["kind"] == "emulator":
            extra = f"|H|={r['hopset_size']} pairs={r['pairs_checked']} max_ratio={r['max_ratio']:.4f}"
        else:
            extra = f"|H|={r['hopset_size']} ratio={r['total_ratio']:.3f}"
        lines.append(f"{c['index']:4d} {c['kind']:8s} {c['family']:16s} n={c['n']:<5d} {c['weights']:13s} "
                     f"k={c['k']} eps={eps:4s} s={c['seed_index']:<2d} {tag} {extra}")
    for gr in summary["groups"]:
        lr = " ".join(f"{x:.3f}" for x in gr["level_ratios"])
        lines.append(f"size n={gr['n']} k={gr['k']} mean|H|/unit={gr['total_ratio']:.3f} "
                     f"level ratios [{lr}] {'PASS' if gr['passed'] else 'FAIL'}")
    lines.append("ALL PASS" if summary["passed"] else "SOME CELLS FAILED")
    return "\n".join(lines)


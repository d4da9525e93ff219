"""Generate graphs, build hopsets, and check them from the command line.

Exit codes: 0 pass, 2 bad arguments, 3 I/O, 4 verification failure,
5 graph/hopset fingerprint mismatch, 6 overflow, 7 malformed input file.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict, dataclass, replace
from pathlib import Path

from . import experiments
from .construct import build_hopset, size_stats
from .errors import CapacityError, FingerprintMismatch, GraphParseError, UsageError
from .generators import FAMILIES, generate_graph
from .hierarchy import auto_k
from .io import FORMATS, load_graph, load_hopset, save_hopset, save_levels
from .params import derive_params
from .verify import PairSpec, verify_emulator, verify_hopset

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_FAIL = 4
EXIT_FINGERPRINT = 5
EXIT_OVERFLOW = 6
EXIT_PARSE = 7

log = logging.getLogger("hopsets")


@dataclass
class RunConfig:
    command: str
    graph: str | None = None
    graph_format: str = "edgelist"
    hopset: str | None = None
    out: str | None = None
    k: str | None = None
    epsilon: float | None = None
    seed: int = 0
    pairs: str = "200"
    format: str = "json"
    workers: int | None = None
    family: str | None = None
    n: int | None = None
    m: int | None = None
    rows: int | None = None
    cols: int | None = None
    radius: float | None = None
    weights: str = "unit"
    c: float = experiments.EMULATOR_C
    d_min: int = 2
    grid: str = "stretch"
    seeds: int | None = None
    levels_out: str | None = None

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        fields = cls.__dataclass_fields__
        return cls(**{k: v for k, v in vars(ns).items() if k in fields})

    def echo(self) -> dict:
        # worker count never changes results, so it stays out of artifacts
        d = asdict(self)
        d.pop("workers")
        return d


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hopsets", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_args(sp, required=True):
        sp.add_argument("--graph", required=required)
        sp.add_argument("--graph-format", choices=FORMATS, default="edgelist")

    sp = sub.add_parser("gen", help="generate a seeded graph")
    sp.add_argument("--family", choices=FAMILIES, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int)
    sp.add_argument("--rows", type=int)
    sp.add_argument("--cols", type=int)
    sp.add_argument("--radius", type=float)
    sp.add_argument("--weights", default="unit", help="unit or uniform:LO:HI")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", required=True)

    sp = sub.add_parser("build", help="build a hopset")
    graph_args(sp)
    sp.add_argument("--k", required=True, help="level count, or 'auto' for floor(log2 log2 n) - 1")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--epsilon", type=float, help="only used to print the hop budget")
    sp.add_argument("--out", required=True)
    sp.add_argument("--levels-out")

    sp = sub.add_parser("verify", help="check hop-bounded stretch on sampled pairs")
    graph_args(sp)
    sp.add_argument("--hopset", required=True)
    sp.add_argument("--epsilon", type=float, required=True)
    sp.add_argument("--pairs", default="200", help="COUNT or COUNT:stratified")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--out")

    sp = sub.add_parser("emulate", help="check H alone as an additive emulator (unweighted graphs)")
    graph_args(sp)
    sp.add_argument("--hopset", required=True)
    sp.add_argument("--pairs", default="500")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--c", type=float, default=experiments.EMULATOR_C)
    sp.add_argument("--d-min", type=int, default=2)
    sp.add_argument("--out")

    sp = sub.add_parser("stats", help="per-level hopset sizes against the expected bounds")
    sp.add_argument("--hopset", required=True)
    sp.add_argument("--format", choices=("json", "table"), default="table")

    sp = sub.add_parser("matrix", help="run an experiment grid")
    sp.add_argument("--grid", choices=sorted(experiments.GRIDS), default="stretch")
    sp.add_argument("--seeds", type=int, help="seeds per configuration (grid default if omitted)")
    sp.add_argument("--seed", type=int, default=0, help="base seed")
    sp.add_argument("--workers", type=int, default=None,
                    help="parallel cells (default $HOPSETS_WORKERS or 1)")
    sp.add_argument("--out")
    return p


def _write(path, text):
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _resolve_k(k_text, n):
    if k_text == "auto":
        return auto_k(n)
    try:
        k = int(k_text)
    except ValueError:
        raise UsageError(f"--k must be an integer or 'auto', got {k_text!r}") from None
    if k < 1:
        raise UsageError(f"--k must be >= 1, got {k}")
    return k


def cmd_gen(cfg: RunConfig) -> int:
    g = generate_graph(cfg.family, cfg.n, m=cfg.m, rows=cfg.rows, cols=cfg.cols, radius=cfg.radius,
                       weights=cfg.weights, seed=cfg.seed)
    text = g.serialize()
    text = text.replace("\n", f"\n# config={json.dumps(cfg.echo(), sort_keys=True)}\n", 1)
    Path(cfg.out).write_text(text)
    print(f"n={g.n} m={g.m} fingerprint={g.fingerprint[:16]}")
    return EXIT_OK


def _size_table(st) -> str:
    lines = ["level  edges      bound        ratio"]
    for i, (c, b, r) in enumerate(zip(st.counts, st.bounds, st.ratios)):
        lines.append(f"{i:5d}  {c:9d}  {b:11.1f}  {r:7.4f}")
    lines.append(f"total  {st.total:9d}  unit={st.unit:.1f}  |H|/unit={st.total_ratio:.4f}")
    return "\n".join(lines)


def cmd_build(cfg: RunConfig) -> int:
    g = load_graph(cfg.graph, cfg.graph_format)
    k = _resolve_k(cfg.k, g.n)
    if cfg.epsilon is not None:
        params = derive_params(k, cfg.epsilon)
    h, levels, _ = build_hopset(g, k, cfg.seed)
    h = replace(h, config=cfg.echo())
    save_hopset(h, cfg.out)
    if cfg.levels_out:
        save_levels(levels, cfg.levels_out, cfg.echo())
    if cfg.epsilon is not None:
        print(f"k={k} eps={cfg.epsilon:g} r={params.r} beta={params.beta} |H|={len(h)}")
    else:
        print(f"k={k} eps=- r=- beta=- |H|={len(h)}")
    print(_size_table(size_stats(h)))
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    g = load_graph(cfg.graph, cfg.graph_format)
    h = load_hopset(cfg.hopset)
    params = derive_params(h.k, cfg.epsilon)
    spec = PairSpec.parse(cfg.pairs, seed=cfg.seed)
    rep = verify_hopset(g, h, params, spec, header={"config": cfg.echo(), "params_line": params.header()})
    _write(cfg.out, rep.to_csv() if cfg.format == "csv" else rep.to_json())
    a = rep.aggregate
    print(f"{params.header()}\npairs={a['pairs_checked']} skipped={a['pairs_skipped_unreachable']} "
          f"violations={a['violations']} lower={a['lower_violations']} max_stretch={a['max_stretch']:.6f} "
          f"audit_mismatches={rep.weight_audit['mismatches']} -> {'PASS' if rep.passed else 'FAIL'}",
          file=sys.stderr if not cfg.out else sys.stdout)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_emulate(cfg: RunConfig) -> int:
    g = load_graph(cfg.graph, cfg.graph_format)
    h = load_hopset(cfg.hopset)
    rep = verify_emulator(g, h, h.k, c=cfg.c, pairs=PairSpec.parse(cfg.pairs, seed=cfg.seed), d_min=cfg.d_min)
    rep.header["config"] = cfg.echo()
    _write(cfg.out, rep.to_json())
    a = rep.aggregate
    print(f"pairs={a['pairs_checked']} max_ratio={a['max_ratio']:.4f} c={cfg.c:g} "
          f"lower={a['lower_violations']} -> {'PASS' if rep.passed else 'FAIL'}",
          file=sys.stderr if not cfg.out else sys.stdout)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_stats(cfg: RunConfig) -> int:
    st = size_stats(load_hopset(cfg.hopset))
    if cfg.format == "json":
        print(json.dumps(st.to_dict(), indent=2, sort_keys=True))
    else:
        print(_size_table(st))
    return EXIT_OK


def cmd_matrix(cfg: RunConfig) -> int:
    make = experiments.GRIDS[cfg.grid]
    cells = make() if cfg.seeds is None else make(seeds=cfg.seeds)
    summary = experiments.run_grid(cells, base_seed=cfg.seed, workers=cfg.workers)
    summary["config"] = cfg.echo()
    if cfg.out:
        Path(cfg.out).write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    print(experiments.format_summary(summary))
    return EXIT_OK if summary["passed"] else EXIT_FAIL


COMMANDS = {"gen": cmd_gen, "build": cmd_build, "verify": cmd_verify, "emulate": cmd_emulate,
            "stats": cmd_stats, "matrix": cmd_matrix}


def main(argv=None) -> int:
    parser = _parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if ns.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    cfg = RunConfig.from_args(ns)
    try:
        return COMMANDS[cfg.command](cfg)
    except FingerprintMismatch as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FINGERPRINT
    except CapacityError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_OVERFLOW
    except GraphParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

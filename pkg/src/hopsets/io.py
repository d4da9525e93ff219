"""Graph file formats: whitespace edge lists and DIMACS shortest-path files."""
from __future__ import annotations

import json
import logging
import math
import re
from pathlib import Path

from .errors import GraphParseError, NegativeWeightError
from .graph import WeightedGraph

log = logging.getLogger(__name__)

_N_HEADER = re.compile(r"#\s*n\s*=\s*(\d+)")

FORMATS = ("edgelist", "dimacs")


def _weight(tok, path, lineno):
    try:
        w = float(tok)
    except ValueError:
        raise GraphParseError(f"bad weight {tok!r}", path, lineno) from None
    if math.isnan(w) or math.isinf(w):
        raise GraphParseError(f"non-finite weight {tok!r}", path, lineno)
    if w < 0:
        raise NegativeWeightError(f"negative weight {tok!r}", path, lineno)
    return w


def _vertex(tok, path, lineno):
    try:
        return int(tok)
    except ValueError:
        raise GraphParseError(f"bad vertex id {tok!r}", path, lineno) from None


def parse_edge_list(text: str, path=None) -> WeightedGraph:
    n_declared = None
    raw = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if line.lstrip().startswith("#"):
            m = _N_HEADER.match(line.strip())
            if m and n_declared is None:
                n_declared = int(m.group(1))
            continue
        body = line.split("#", 1)[0].split()
        if not body:
            continue
        if len(body) != 3:
            raise GraphParseError(f"expected 'u v w', got {len(body)} fields", path, lineno)
        u = _vertex(body[0], path, lineno)
        v = _vertex(body[1], path, lineno)
        w = _weight(body[2], path, lineno)
        raw.append((u, v, w, lineno))

    if n_declared is not None:
        for u, v, _, lineno in raw:
            if not (0 <= u < n_declared and 0 <= v < n_declared):
                raise GraphParseError(f"vertex id out of range for n={n_declared}", path, lineno)
        g = WeightedGraph.from_edges(n_declared, [(u, v, w) for u, v, w, _ in raw])
    else:
        ids = sorted({x for u, v, _, _ in raw for x in (u, v)})
        dense = ids == list(range(len(ids)))
        index = {x: i for i, x in enumerate(ids)}
        g = WeightedGraph.from_edges(
            len(ids),
            [(index[u], index[v], w) for u, v, w, _ in raw],
            labels=None if dense else ids,
        )
    if g.self_loops_dropped:
        log.warning("%s: dropped %d self-loop(s)", path or "<text>", g.self_loops_dropped)
    return g


def parse_dimacs(text: str, path=None) -> WeightedGraph:
    n = None
    arcs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        tok = line.split()
        if not tok or tok[0] == "c":
            continue
        if tok[0] == "p":
            if len(tok) != 4 or tok[1] != "sp":
                raise GraphParseError("expected 'p sp n m'", path, lineno)
            if n is not None:
                raise GraphParseError("duplicate problem line", path, lineno)
            n = _vertex(tok[2], path, lineno)
        elif tok[0] == "a":
            if n is None:
                raise GraphParseError("arc before 'p sp' header", path, lineno)
            if len(tok) != 4:
                raise GraphParseError("expected 'a u v w'", path, lineno)
            u = _vertex(tok[1], path, lineno)
            v = _vertex(tok[2], path, lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphParseError(f"arc endpoint out of range 1..{n}", path, lineno)
            arcs.append((u - 1, v - 1, _weight(tok[3], path, lineno)))
        else:
            raise GraphParseError(f"unknown line type {tok[0]!r}", path, lineno)
    if n is None:
        raise GraphParseError("missing 'p sp n m' header", path)
    g = WeightedGraph.from_edges(n, arcs)
    if g.self_loops_dropped:
        log.warning("%s: dropped %d self-loop(s)", path or "<text>", g.self_loops_dropped)
    return g


def load_graph(path, format: str = "edgelist") -> WeightedGraph:
    path = Path(path)
    text = path.read_text()
    if format == "edgelist":
        return parse_edge_list(text, path)
    if format == "dimacs":
        return parse_dimacs(text, path)
    raise ValueError(f"unknown graph format {format!r}; expected one of {FORMATS}")


def save_graph(g: WeightedGraph, path) -> None:
    Path(path).write_text(g.serialize())


_HOPSET_HEADER = re.compile(r"#\s*hopset\s+n=(\d+)\s+k=(\d+)\s+seed=(\S+)")


def serialize_hopset(h) -> str:
    lines = [f"# hopset n={h.n} k={h.k} seed={h.seed}"]
    if h.graph_fingerprint:
        lines.append(f"# graph={h.graph_fingerprint}")
    if h.q:
        lines.append("# q=" + " ".join(repr(x) for x in h.q))
    if h.config:
        lines.append("# config=" + json.dumps(h.config, sort_keys=True))
    lines.extend(f"{u} {v} {w!r} {i}" for u, v, w, i in h.edges)
    return "\n".join(lines) + "\n"


def save_hopset(h, path) -> None:
    Path(path).write_text(serialize_hopset(h))


def parse_hopset(text: str, path=None):
    from .construct import Hopset

    n = k = seed = fp = None
    q = ()
    config = {}
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s:
            continue
        if s.startswith("#"):
            m = _HOPSET_HEADER.match(s)
            if m:
                n, k = int(m.group(1)), int(m.group(2))
                seed = None if m.group(3) == "None" else int(m.group(3))
            elif s.startswith("# graph="):
                fp = s[len("# graph="):]
            elif s.startswith("# q="):
                q = tuple(float(x) for x in s[len("# q="):].split())
            elif s.startswith("# config="):
                config = json.loads(s[len("# config="):])
            continue
        if n is None:
            raise GraphParseError("edge before '# hopset' header", path, lineno)
        tok = s.split()
        if len(tok) != 4:
            raise GraphParseError(f"expected 'u v w i', got {len(tok)} fields", path, lineno)
        u, v = _vertex(tok[0], path, lineno), _vertex(tok[1], path, lineno)
        w = _weight(tok[2], path, lineno)
        i = _vertex(tok[3], path, lineno)
        if not (0 <= u < n and 0 <= v < n and u != v and 0 <= i <= k):
            raise GraphParseError("hopset edge out of range", path, lineno)
        edges.append((min(u, v), max(u, v), w, i))
    if n is None:
        raise GraphParseError("missing '# hopset n=.. k=.. seed=..' header", path)
    edges.sort(key=lambda e: (e[3], e[0], e[1]))
    return Hopset(n=n, k=k, edges=tuple(edges), seed=seed, q=q, graph_fingerprint=fp, config=config)


def load_hopset(path):
    path = Path(path)
    return parse_hopset(path.read_text(), path)


def save_levels(levels, path, config: dict | None = None) -> None:
    text = levels.serialize()
    if config is not None:
        head, _, rest = text.partition("\n")
        text = f"{head}\n# config={json.dumps(config, sort_keys=True)}\n{rest}"
    Path(path).write_text(text)

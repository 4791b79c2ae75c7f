"""
Instance I/O - Reads and writes the line-based instance format

    c <comment>
    p wtds <n> <m> <k>
    v <id> <weight>          (weight defaults to 1 when a vertex has no line)
    e <u> <v> [mult]         (mult is 1 or 2; repeated lines saturate at 2)
"""

import logging
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple, Union

from utils.exceptions import InstanceParseError
from utils.graph_core import Instance, MultiGraph, VertexId

logger = logging.getLogger(__name__)


def _ints(tokens: List[str], line_no: int) -> List[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise InstanceParseError(line_no, f"expected integers, got {' '.join(tokens)!r}")


def parse_instance(text: str) -> Instance:
    header: Optional[Tuple[int, int, int]] = None
    weights: Dict[VertexId, int] = {}
    edges: List[Tuple[int, int, int, int]] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        kind = tokens[0]
        if kind == "p":
            if header is not None:
                raise InstanceParseError(line_no, "duplicate header")
            if len(tokens) != 5 or tokens[1] != "wtds":
                raise InstanceParseError(line_no, "header must read 'p wtds <n> <m> <k>'")
            n, m, k = _ints(tokens[2:], line_no)
            if n < 0 or m < 0:
                raise InstanceParseError(line_no, "vertex and edge counts must be non-negative")
            header = (n, m, k)
            continue
        if header is None:
            raise InstanceParseError(line_no, f"'{kind}' line before the header")
        n = header[0]
        if kind == "v":
            if len(tokens) != 3:
                raise InstanceParseError(line_no, "weight line must read 'v <id> <weight>'")
            v, w = _ints(tokens[1:], line_no)
            if not 1 <= v <= n:
                raise InstanceParseError(line_no, f"vertex id {v} outside 1..{n}")
            if w < 1:
                raise InstanceParseError(line_no, f"weight of {v} must be positive, got {w}")
            if v in weights:
                raise InstanceParseError(line_no, f"weight of {v} given twice")
            weights[v] = w
        elif kind == "e":
            if len(tokens) not in (3, 4):
                raise InstanceParseError(line_no, "edge line must read 'e <u> <v> [mult]'")
            values = _ints(tokens[1:], line_no)
            u, v = values[0], values[1]
            mult = values[2] if len(values) == 3 else 1
            for w in (u, v):
                if not 1 <= w <= n:
                    raise InstanceParseError(line_no, f"vertex id {w} outside 1..{n}")
            if u == v:
                raise InstanceParseError(line_no, f"self-loop at vertex {u}")
            if mult not in (1, 2):
                raise InstanceParseError(line_no, f"multiplicity must be 1 or 2, got {mult}")
            edges.append((line_no, u, v, mult))
        else:
            raise InstanceParseError(line_no, f"unknown line type '{kind}'")

    if header is None:
        raise InstanceParseError(0, "missing 'p wtds' header")
    n, m, k = header
    if m != len(edges):
        logger.warning(f"Header declares {m} edges, file has {len(edges)} edge lines")
    g = MultiGraph(vertices=range(1, n + 1))
    for _, u, v, mult in edges:
        g.add_edge(u, v, mult)
    return Instance(g, {v: weights.get(v, 1) for v in range(1, n + 1)}, k)


def read_instance(path: Union[str, Path]) -> Instance:
    inst = parse_instance(Path(path).read_text())
    logger.info(f"Read {path}: n={inst.n}, m={inst.graph.edge_count()}, k={inst.k}")
    return inst


def serialize_instance(inst: Instance, comments: Iterable[str] = (), id_map: bool = False) -> str:
    """Write with contiguous ids 1..n; a non-contiguous input gets its id map as comments"""
    original = inst.graph.vertices()
    relabel = {v: i for i, v in enumerate(original, start=1)}
    contiguous = all(relabel[v] == v for v in original)
    edges = inst.graph.edges()

    lines = [f"c {comment}" for comment in comments]
    lines.append(f"p wtds {inst.n} {len(edges)} {inst.k}")
    for v in original:
        lines.append(f"v {relabel[v]} {inst.weight[v]}")
    for u, v, mult in edges:
        a, b = sorted((relabel[u], relabel[v]))
        lines.append(f"e {a} {b}" if mult == 1 else f"e {a} {b} {mult}")
    if id_map or not contiguous:
        lines.extend(f"c map {relabel[v]} {v}" for v in original)
    return "\n".join(lines) + "\n"


def write_instance(inst: Instance, path: Union[str, Path], comments: Iterable[str] = (),
                   id_map: bool = False) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(serialize_instance(inst, comments, id_map))
    logger.info(f"Wrote {target}: n={inst.n}, m={inst.graph.edge_count()}, k={inst.k}")


def parse_id_map(text: str) -> Dict[VertexId, VertexId]:
    """New id -> original id from the trailing 'c map' comments of a kernel file"""
    mapping = {}
    for raw in text.splitlines():
        tokens = raw.split()
        if len(tokens) == 4 and tokens[:2] == ["c", "map"]:
            mapping[int(tokens[2])] = int(tokens[3])
    return mapping

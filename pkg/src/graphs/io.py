"""
Edge-List I/O
Header "n m", then m lines "u v" (a parallel edge repeats its line), then "L v c" self-loop lines
"""
from pathlib import Path
from typing import List, Union

from .models import Graph
from ..utils.errors import InvalidParameterError


def format_edge_list(g: Graph) -> str:
    lines: List[str] = []
    for u, v, count in g.edges():
        lines.extend([f"{u} {v}"] * count)
    body = [f"{g.node_count} {len(lines)}"] + lines
    body.extend(f"L {v} {int(c)}" for v, c in enumerate(g.self_loops) if c > 0)
    return "\n".join(body) + "\n"


def parse_edge_list(text: str) -> Graph:
    rows = [line.split() for line in text.splitlines() if line.strip() and not line.startswith('#')]
    if not rows or len(rows[0]) != 2:
        raise InvalidParameterError("edge list must start with an 'n m' header")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = []
        loops = [0] * n
        for row in rows[1:]:
            if row[0] == 'L':
                loops[int(row[1])] += int(row[2])
            else:
                edges.append((int(row[0]), int(row[1])))
    except (ValueError, IndexError) as e:
        raise InvalidParameterError(f"malformed edge list: {e}")
    if len(edges) != m:
        raise InvalidParameterError(f"header announces {m} edges, found {len(edges)}")
    g = Graph.from_edges(n, edges, loops)
    if not g.validate():
        raise InvalidParameterError("edge list does not describe a valid undirected graph")
    return g


def write_edge_list(g: Graph, path: Union[str, Path]):
    Path(path).write_text(format_edge_list(g))


def read_edge_list(path: Union[str, Path]) -> Graph:
    return parse_edge_list(Path(path).read_text())

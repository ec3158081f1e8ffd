"""Pajek ``.net`` export and import."""
from __future__ import annotations

import re

from ..errors import MissingCoordinate

_VERTEX = re.compile(r'^\s*(\d+)\s+"((?:[^"]|"")*)"(?:\s+(\S+)\s+(\S+))?')


def _label(title: str) -> str:
    # Pajek labels are single-line; quotes are doubled
    return title.replace("\r", " ").replace("\n", " ").replace('"', '""')


def format_pajek(labels, coords, edges) -> str:
    """Serialize vertices (1-based, in the given order) and weighted edges.

    ``edges`` are ``(i, j, weight)`` with 1-based endpoints.
    """
    lines = [f"*Vertices {len(labels)}"]
    for n, (label, (x, y)) in enumerate(zip(labels, coords), start=1):
        lines.append(f'{n} "{_label(label)}" {x:.9f} {y:.9f}')
    if labels:
        lines.append("*Edges")
        lines.extend(f"{i} {j} {w:.15g}" for i, j, w in edges)
    return "\n".join(lines) + "\n"


def export_pajek(network, points) -> str:
    """Pajek text for the nodes that have coordinates and the edges between them.

    Every node with at least one edge must have a coordinate.
    """
    coords = points.as_dict() if hasattr(points, "as_dict") else dict(points)
    degree = network.degree
    for node in range(network.n_nodes):
        if degree[node] and node not in coords:
            raise MissingCoordinate(f"node {node} ({network.titles[node]}) has edges but no coordinate")
    order = sorted(coords)
    number = {node: n for n, node in enumerate(order, start=1)}
    edges = [
        (number[e.cat_i], number[e.cat_j], e.cos)
        for e in network.edges()
    ]
    return format_pajek([network.titles[n] for n in order], [coords[n] for n in order], edges)


def read_pajek(text: str):
    """Parse ``format_pajek`` output back into (labels, coords, edges)."""
    labels, coords, edges = [], [], []
    section = None
    for line in text.splitlines():
        if not line.strip() or line.startswith("%"):
            continue
        if line.startswith("*"):
            head = line.split()[0].lower()
            section = {"*vertices": "v", "*edges": "e", "*arcs": "e"}.get(head)
            continue
        if section == "v":
            m = _VERTEX.match(line)
            if m is None:
                raise ValueError(f"bad vertex line: {line!r}")
            labels.append(m.group(2).replace('""', '"'))
            x, y = m.group(3), m.group(4)
            coords.append((float(x), float(y)) if x is not None else (0.0, 0.0))
        elif section == "e":
            parts = line.split()
            w = float(parts[2]) if len(parts) > 2 else 1.0
            edges.append((int(parts[0]), int(parts[1]), w))
    return labels, coords, edges

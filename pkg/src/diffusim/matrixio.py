"""Text-matrix and JSON serialization for graphs.

Two text formats are pinned:

* link matrix: n rows of n space-separated 0/1 entries, entry (i, j) is 1
  iff edge {i, j} exists. Only valid for graphs whose weights are all 1.0.
* probability matrix: n rows of n space-separated entries with exactly two
  decimals; entry (i, j) is the weight of {i, j}, 0.00 when absent.

Both emit 0 on the diagonal, and the diagonal is ignored on import, so a
round-trip is exact for link matrices and exact up to the two-decimal
quantization for probability matrices (weights below 0.005 round to 0.00
and the edge is dropped).

The JSON dump is ``{"n": <int>, "edges": [[u, v, w], ...]}`` with u < v
and edges sorted lexicographically.
"""

from __future__ import annotations

import json

from .graph import Graph

__all__ = [
    "MatrixFormatError",
    "export_link_matrix",
    "export_probability_matrix",
    "import_matrix",
    "graph_to_json",
    "graph_from_json",
]

SYMMETRY_TOL = 1e-9


class MatrixFormatError(ValueError):
    """Raised when matrix text cannot be parsed into a valid graph."""


def export_link_matrix(g: Graph) -> str:
    """Render g as a 0/1 link matrix; requires every weight to be 1.0."""
    _, _, w = g.edge_arrays()
    if w.size and not (w == 1.0).all():
        raise ValueError("link matrix requires all edge weights exactly 1.0")
    rows = [["0"] * g.n for _ in range(g.n)]
    for u, v, _weight in g.edges():
        rows[u][v] = "1"
        rows[v][u] = "1"
    return "\n".join(" ".join(r) for r in rows) + "\n"


def export_probability_matrix(g: Graph) -> str:
    """Render g as a probability matrix with two-decimal entries."""
    rows = [["0.00"] * g.n for _ in range(g.n)]
    for u, v, weight in g.edges():
        cell = f"{weight:.2f}"
        rows[u][v] = cell
        rows[v][u] = cell
    return "\n".join(" ".join(r) for r in rows) + "\n"


def import_matrix(text: str) -> Graph:
    """Parse a link or probability matrix back into a Graph.

    Accepts whitespace- or comma-separated entries. The matrix must be
    square, symmetric within 1e-9 and have entries in [0, 1]; the
    diagonal is ignored. Every strictly positive off-diagonal entry
    becomes an edge (the upper-triangle value is used as the weight).
    """
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        parts = line.replace(",", " ").split()
        if not parts:
            continue
        try:
            rows.append([float(p) for p in parts])
        except ValueError as exc:
            raise MatrixFormatError(f"row {lineno}: non-numeric entry") from exc
    n = len(rows)
    if n == 0:
        raise MatrixFormatError("empty matrix text")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise MatrixFormatError(
                f"row {i}: {len(row)} entries, expected {n} (matrix not square)")
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            a, b = rows[i][j], rows[j][i]
            if not (0.0 <= a <= 1.0):
                raise MatrixFormatError(
                    f"entry ({i}, {j}) = {a} outside [0, 1]")
            if not (0.0 <= b <= 1.0):
                raise MatrixFormatError(
                    f"entry ({j}, {i}) = {b} outside [0, 1]")
            if abs(a - b) > SYMMETRY_TOL:
                raise MatrixFormatError(
                    f"asymmetric entries ({i}, {j}) = {a} vs ({j}, {i}) = {b}")
            if a > 0.0:
                edges.append((i, j, a))
        if not (0.0 <= rows[i][i] <= 1.0):
            raise MatrixFormatError(
                f"entry ({i}, {i}) = {rows[i][i]} outside [0, 1]")
    return Graph(n, edges)


def graph_to_json(g: Graph) -> str:
    """Serialize g to the pinned JSON dump format."""
    payload = {
        "n": g.n,
        "edges": [[u, v, w] for u, v, w in g.edges()],
    }
    return json.dumps(payload)


def graph_from_json(text: str) -> Graph:
    """Load a graph from the JSON dump format."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"invalid JSON graph dump: {exc}") from exc
    try:
        n = int(payload["n"])
        edges = [(int(u), int(v), float(w)) for u, v, w in payload["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixFormatError(
            "JSON graph dump must have integer 'n' and 'edges' as "
            "[u, v, w] triples") from exc
    try:
        return Graph(n, edges)
    except ValueError as exc:
        raise MatrixFormatError(str(exc)) from exc

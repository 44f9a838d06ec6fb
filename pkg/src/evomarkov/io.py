"""CSV matrix files and DOT export.

Matrix file format (UTF-8)::

    labels: a,b,c        <- optional, must be the first non-blank line
    0.5,0,0.5
    0.3,0,0.7
    0,0,1

Cells are decimal numbers with ``.`` as the decimal point; surrounding
whitespace is ignored.  Blank lines and lines starting with ``#`` are
skipped.
"""
from __future__ import annotations

import re
from typing import Union

from .core import StructureMatrix, default_labels, format_number, make_structure_matrix
from .errors import NonSquare, ParseError
from .triad import WeightedDigraph

_NUMBER = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")


def parse_matrix_csv(data: Union[bytes, str]) -> StructureMatrix:
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not valid UTF-8 ({exc.reason})", line=0) from None
    else:
        text = data
    if text.startswith("\ufeff"):
        text = text[1:]

    labels = None
    rows: list[list[float]] = []
    row_lines: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.lower().startswith("labels:"):
            if labels is not None or rows:
                raise ParseError("labels line must come before the matrix rows", lineno, 1)
            labels = [name.strip() for name in line[len("labels:"):].split(",")]
            continue
        row = []
        col = 1
        for cell in raw.split(","):
            token = cell.strip()
            if not _NUMBER.fullmatch(token):
                offset = col + (len(cell) - len(cell.lstrip()))
                raise ParseError(f"not a decimal number: {token!r}", lineno, offset)
            row.append(float(token))
            col += len(cell) + 1
        rows.append(row)
        row_lines.append(lineno)

    if not rows:
        raise ParseError("no matrix rows found", line=max(1, len(text.splitlines())))
    n = len(rows)
    for row, lineno in zip(rows, row_lines):
        if len(row) != n:
            raise NonSquare(f"line {lineno}: row has {len(row)} entries but the matrix has {n} rows")
    return make_structure_matrix(rows, labels)


def render_matrix_csv(M: StructureMatrix) -> str:
    """Inverse of :func:`parse_matrix_csv`; numbers use shortest round-trip repr."""
    lines = []
    if M.labels != default_labels(M.n):
        lines.append("labels: " + ",".join(M.labels))
    for row in M.entries:
        lines.append(",".join(repr(float(x)) for x in row))
    return "\n".join(lines) + "\n"


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_dot(g: WeightedDigraph, name: str = "markov") -> str:
    """Graphviz digraph, nodes in label order and edges sorted by (from, to)."""
    out = [f"digraph {name} {{"]
    for v in g.vertices:
        out.append(f"  {_quote(v)};")
    for u, v, w in g.edges:
        out.append(
            f"  {_quote(g.vertices[u])} -> {_quote(g.vertices[v])} "
            f'[label="{format_number(w)}"];'
        )
    out.append("}")
    return "\n".join(out) + "\n"

"""Plain-text edge list format.

Line 1 is ``n m``; the next m non-comment lines are ``u v`` with 0-based
ids.  ``u v`` with u == v records a self-loop; a repeated loop line raises
the loop count (loop multiplicity must survive a round trip).  A repeated
non-loop edge line is a parse error.  Lines starting with ``#`` are
comments.  Writing is canonical (edges sorted, loops repeated), so
parse -> write -> parse is bit-exact.
"""

from __future__ import annotations

import os

from .graph import Graph, GraphBuilder, GraphInputError


class EdgeListParseError(GraphInputError):
    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


def parse_edge_list_text(text: str) -> Graph:
    header: tuple[int, int] | None = None
    builder: GraphBuilder | None = None
    expected = 0
    seen_edges = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(f"expected two integers, got {raw!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(f"non-integer token in {raw!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise EdgeListParseError("header n and m must be non-negative", lineno)
            header = (a, b)
            builder = GraphBuilder(a)
            expected = b
            continue
        assert builder is not None
        if seen_edges >= expected:
            raise EdgeListParseError(
                f"more than the declared {expected} edges", lineno
            )
        if not (0 <= a < header[0] and 0 <= b < header[0]):
            raise EdgeListParseError(
                f"endpoint out of range [0, {header[0]})", lineno
            )
        if a == b:
            builder.add_self_loops(a, 1)
        elif not builder.add_edge(a, b):
            raise EdgeListParseError(f"duplicate edge {a} {b}", lineno)
        seen_edges += 1
    if header is None:
        raise EdgeListParseError("missing 'n m' header line")
    if seen_edges != expected:
        raise EdgeListParseError(
            f"declared {expected} edges but found {seen_edges}"
        )
    return builder.build()


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    items: list[tuple[int, int]] = []
    for v, count in enumerate(g.self_loops):
        items.extend([(v, v)] * count)
    items.extend(g.edges())
    items.sort()
    lines.extend(f"{u} {v}" for u, v in items)
    return "\n".join(lines) + "\n"


def parse_edge_list(path: str | os.PathLike) -> Graph:
    with open(path, "r", encoding="ascii") as fh:
        return parse_edge_list_text(fh.read())


def write_edge_list(g: Graph, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_edge_list(g))

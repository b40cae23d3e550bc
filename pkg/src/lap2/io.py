"""JSON and graph6 (de)serialisation."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import GraphError, ParseError
from .graph import Graph, build_graph


def rational_str(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(s: str | int) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ParseError(f"bad rational {s!r}") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def graph_to_graph6(g: Graph) -> str:
    n = g.n
    if n > 62:
        raise ValueError("only n <= 62 supported")
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    chars = [chr(n + 63)]
    for k in range(0, len(bits), 6):
        chars.append(chr(63 + int("".join(map(str, bits[k : k + 6])), 2)))
    return "".join(chars)


def graph_from_graph6(s: str) -> Graph:
    s = s.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s or not 63 <= ord(s[0]) <= 125:
        raise ParseError(f"not a graph6 string: {s!r}")
    n = ord(s[0]) - 63
    data = []
    for ch in s[1:]:
        v = ord(ch) - 63
        if not 0 <= v < 64:
            raise ParseError(f"bad graph6 character {ch!r}")
        data.extend((v >> (5 - b)) & 1 for b in range(6))
    need = n * (n - 1) // 2
    if len(data) < need or len(s) - 1 != (need + 5) // 6:
        raise ParseError("graph6 string has the wrong length")
    edges, k = [], 0
    for j in range(1, n):
        for i in range(j):
            if data[k]:
                edges.append((i, j))
            k += 1
    return build_graph(n, edges)


def graph_from_dict(d: dict[str, Any]) -> Graph:
    try:
        return build_graph(int(d["n"]), [tuple(e) for e in d["edges"]], d.get("meta"))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, GraphError):
            raise ParseError(str(exc)) from exc
        raise ParseError(f"malformed graph JSON: {exc}") from exc


def parse_graph(text: str) -> Graph:
    """Graph JSON object, or a single graph6 line."""
    text = text.strip()
    if text.startswith("{"):
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        return graph_from_dict(d)
    try:
        return graph_from_graph6(text.splitlines()[0] if text else "")
    except GraphError as exc:
        raise ParseError(str(exc)) from exc

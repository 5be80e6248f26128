"""Game documents: a JSON form and a plain matrix form.

JSON, two players::

    {"title": "hide a coin",
     "labels": [["1", "2"], ["1", "2"]],          # optional
     "payoffs": [[["-10", "10"], ["15", "-15"]],
                 [["15", "-15"], ["-20", "20"]]]}

JSON, N players (cells row-major, player 1's strategy varies slowest)::

    {"title": "...", "shape": [2, 2, 2], "cells": [["1", "1", "1"], ...]}

Matrix form: optional ``#`` comments, ``title <text>``, ``labels1 a b ..``
and ``labels2 a b ..`` lines, then the header ``rows m cols n`` followed by
``m`` lines of ``n`` cells ``p1:p2``::

    title hide a coin
    rows 2 cols 2
    -10:10   15:-15
    15:-15  -20:20

Rationals are written ``p/q``, reduced, with ``/q`` omitted when ``q = 1``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import BadRational, EmptyGame, ParseError, ShapeMismatch
from .game import FiniteGame, make_game
from .multiplayer import TensorGame

FORMATS = ("json", "matrix")


def format_rational(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def parse_rational(text, line=None, column=None) -> Fraction:
    if isinstance(text, bool) or isinstance(text, float):
        raise BadRational(f"payoffs must be exact, got {text!r}", line, column)
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise BadRational(f"not a rational: {text!r}", line, column)
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise BadRational(f"not a rational: {text!r}", line, column) from None
    if d == 0:
        raise BadRational(f"zero denominator in {text!r}", line, column)
    return Fraction(n, d)


# -- emit ---------------------------------------------------------------------------


def _default_labels(k: int) -> tuple[str, ...]:
    return tuple(str(i + 1) for i in range(k))


def emit_json(g: FiniteGame | TensorGame) -> str:
    if isinstance(g, TensorGame):
        cells = [[format_rational(t[k]) for t in g.payoffs] for k in range(g.size)]
        doc = {"title": g.title, "shape": list(g.shape), "cells": cells}
    else:
        doc = {"title": g.title}
        if g.labels1 != _default_labels(g.rows) or g.labels2 != _default_labels(g.cols):
            doc["labels"] = [list(g.labels1), list(g.labels2)]
        doc["payoffs"] = [
            [[format_rational(g.payoff1[x][y]), format_rational(g.payoff2[x][y])] for y in range(g.cols)]
            for x in range(g.rows)
        ]
    return json.dumps(doc, indent=1, ensure_ascii=False) + "\n"


def emit_matrix(g: FiniteGame) -> str:
    if isinstance(g, TensorGame):
        raise ShapeMismatch("the matrix format holds two-player games only")
    lines = []
    if g.title:
        lines.append(f"title {g.title}")
    if g.labels1 != _default_labels(g.rows) or g.labels2 != _default_labels(g.cols):
        lines.append("labels1 " + " ".join(g.labels1))
        lines.append("labels2 " + " ".join(g.labels2))
    lines.append(f"rows {g.rows} cols {g.cols}")
    for x in range(g.rows):
        lines.append(" ".join(
            f"{format_rational(g.payoff1[x][y])}:{format_rational(g.payoff2[x][y])}" for y in range(g.cols)
        ))
    return "\n".join(lines) + "\n"


def emit_game(g, fmt: str = "json") -> str:
    if fmt == "json":
        return emit_json(g)
    if fmt == "matrix":
        return emit_matrix(g)
    raise ValueError(f"unknown format {fmt!r}")


# -- parse --------------------------------------------------------------------------


def _parse_json(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    title = doc.get("title", "")
    if not isinstance(title, str):
        raise ParseError("title must be a string")
    if "shape" in doc:
        shape = doc["shape"]
        cells = doc.get("cells")
        if not isinstance(shape, list) or not all(isinstance(k, int) and not isinstance(k, bool) for k in shape):
            raise ParseError("shape must be a list of integers")
        if not isinstance(cells, list) or not cells:
            raise ParseError("cells must be a non-empty list")
        if any(not isinstance(c, list) or len(c) != len(shape) for c in cells):
            raise ShapeMismatch(f"every cell needs {len(shape)} payoffs")
        payoffs = tuple(tuple(parse_rational(c[i]) for c in cells) for i in range(len(shape)))
        return TensorGame(tuple(shape), payoffs, title)
    payoffs = doc.get("payoffs")
    if not isinstance(payoffs, list) or not payoffs or not all(isinstance(r, list) and r for r in payoffs):
        raise ParseError("payoffs must be a non-empty list of non-empty rows")
    p1, p2 = [], []
    for x, row in enumerate(payoffs):
        r1, r2 = [], []
        for y, cell in enumerate(row):
            if not isinstance(cell, list) or len(cell) != 2:
                raise ParseError(f"cell ({x + 1},{y + 1}) must be a pair")
            r1.append(parse_rational(cell[0]))
            r2.append(parse_rational(cell[1]))
        p1.append(r1)
        p2.append(r2)
    labels = doc.get("labels") or (None, None)
    if len(labels) != 2:
        raise ParseError("labels must be a pair of lists")
    return make_game(p1, p2, title, labels[0], labels[1])


def _parse_matrix(text: str) -> FiniteGame:
    title = ""
    labels: dict[str, list[str]] = {}
    header = None
    body: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if header is None:
            word, _, rest = line.strip().partition(" ")
            if word == "title":
                title = rest.strip()
            elif word in ("labels1", "labels2"):
                labels[word] = rest.split()
            elif word == "rows":
                parts = line.split()
                if len(parts) != 4 or parts[2] != "cols":
                    raise ParseError("header must read 'rows m cols n'", lineno, 1)
                try:
                    header = (int(parts[1]), int(parts[3]))
                except ValueError:
                    raise ParseError("row and column counts must be integers", lineno, 1) from None
                if header[0] < 1 or header[1] < 1:
                    raise EmptyGame("a game needs at least one strategy per player")
            else:
                raise ParseError(f"unexpected {word!r} before the header", lineno, 1)
        else:
            body.append((lineno, raw))
    if header is None:
        raise ParseError("missing 'rows m cols n' header")
    m, n = header
    if not body:
        raise ParseError("empty payoff block")
    if len(body) != m:
        raise ShapeMismatch(f"expected {m} payoff rows, found {len(body)}")
    p1, p2 = [], []
    for lineno, raw in body:
        line = raw.split("#", 1)[0]
        r1, r2 = [], []
        col = 0
        tokens = []
        while col < len(line):
            if line[col].isspace():
                col += 1
                continue
            start = col
            while col < len(line) and not line[col].isspace():
                col += 1
            tokens.append((start + 1, line[start:col]))
        if len(tokens) != n:
            raise ShapeMismatch(f"line {lineno}: expected {n} cells, found {len(tokens)}")
        for column, tok in tokens:
            a, sep, b = tok.partition(":")
            if not sep:
                raise ParseError(f"cell {tok!r} is not of the form p1:p2", lineno, column)
            r1.append(parse_rational(a, lineno, column))
            r2.append(parse_rational(b, lineno, column + len(a) + 1))
        p1.append(r1)
        p2.append(r2)
    return make_game(p1, p2, title, labels.get("labels1"), labels.get("labels2"))


def parse_game(data: str | bytes, fmt: str = "json"):
    """Parse a document into a FiniteGame (or a TensorGame for JSON with a shape)."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(f"not UTF-8: {e}") from None
    if fmt == "json":
        return _parse_json(data)
    if fmt == "matrix":
        return _parse_matrix(data)
    raise ValueError(f"unknown format {fmt!r}")


def guess_format(path: str | Path) -> str:
    return "json" if str(path).endswith(".json") else "matrix"


def load_game(path: str | Path, fmt: str | None = None):
    p = Path(path)
    return parse_game(p.read_bytes(), fmt or guess_format(p))

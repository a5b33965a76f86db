"""JSON file formats for digraphs and matrices.

Digraph: ``{"n": 3, "edges": [{"from": 0, "to": 1, "weight": "2/3"}, ...]}``
Matrix:  ``{"rows": [["1", "a"], ["0", "-2"]]}``

Weights are literal strings (an integer, ``p/q``, or a variable name); bare
JSON integers are accepted too.  A file that mentions any variable is read in
symbolic mode.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from . import ring
from .errors import InputError
from .graph import Edge, Matrix, WeightedDigraph


def read_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _literal(value: Any) -> ring.Weight:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise InputError(f"weight must be a string literal or integer, got {value!r}")
    return ring.parse_literal(str(value))


def _index(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{what} must be an integer, got {value!r}")
    return value


def digraph_from_json(obj: Any) -> WeightedDigraph:
    if not isinstance(obj, dict) or "n" not in obj:
        raise InputError('digraph JSON needs an object with "n" and "edges"')
    n = _index(obj["n"], "n")
    raw = obj.get("edges", [])
    if not isinstance(raw, list):
        raise InputError('"edges" must be a list')
    triples = []
    for e in raw:
        if not isinstance(e, dict) or not {"from", "to"} <= set(e):
            raise InputError(f"bad edge entry {e!r}")
        triples.append((_index(e["from"], "from"), _index(e["to"], "to"), _literal(e.get("weight", "1"))))
    mode, weights = ring.unify(w for _, _, w in triples)
    return WeightedDigraph(n, tuple(Edge(t, h, w) for (t, h, _), w in zip(triples, weights)), mode)


def matrix_from_json(obj: Any) -> Matrix:
    if not isinstance(obj, dict) or not isinstance(obj.get("rows"), list):
        raise InputError('matrix JSON needs an object with a "rows" list')
    rows = obj["rows"]
    if not all(isinstance(r, list) for r in rows):
        raise InputError("matrix rows must be lists")
    return Matrix.from_rows([[_literal(w) for w in r] for r in rows])


def vector_from_json(obj: Any) -> list[ring.Weight]:
    """A column (``n x 1``) or row (``1 x n``) matrix read as a vector."""
    m = matrix_from_json(obj)
    if m.cols == 1:
        return [m[i, 0] for i in range(m.rows)]
    if m.rows == 1:
        return list(m.row(0))
    raise InputError(f"expected a single row or column, got {m.rows}x{m.cols}")


def load_digraph(path: str | Path) -> WeightedDigraph:
    return digraph_from_json(read_json(path))


def load_matrix(path: str | Path) -> Matrix:
    return matrix_from_json(read_json(path))


def digraph_to_json(g: WeightedDigraph) -> dict:
    return {"n": g.n, "edges": [{"from": e.tail, "to": e.head, "weight": ring.format_weight(e.weight)}
                                for e in g.edges]}


def matrix_to_json(m: Matrix) -> dict:
    return {"rows": [[ring.format_weight(w) for w in m.row(i)] for i in range(m.rows)]}

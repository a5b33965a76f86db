"""Weighted digraphs, dense matrices and the algebraic oracles built on them.

Determinant, permanent and characteristic polynomial are computed without
any division, so they work verbatim over polynomial weights.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import ring
from .errors import CapExceeded, InputError
from .ring import MPoly, Weight

MAX_EXPANSION_SIZE = 10


@dataclass(frozen=True)
class Edge:
    tail: int
    head: int
    weight: Weight


@dataclass(frozen=True)
class WeightedDigraph:
    """Directed multigraph on vertices ``0..n-1``; loops and parallel edges allowed.

    Edge positions in ``edges`` are the stable edge identifiers used by walk,
    cycle and path objects.
    """

    n: int
    edges: tuple[Edge, ...] = ()
    mode: str = ring.RATIONAL

    def __post_init__(self):
        if self.n < 0:
            raise InputError("vertex count must be non-negative")
        edges = tuple(e if isinstance(e, Edge) else Edge(*e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        for e in edges:
            if not (0 <= e.tail < self.n and 0 <= e.head < self.n):
                raise InputError(f"edge {e.tail}->{e.head} out of range for n={self.n}")
            if ring.mode_of(e.weight) != self.mode:
                raise InputError(f"edge weight {e.weight} is not in {self.mode} mode")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, Weight | int]]) -> WeightedDigraph:
        """Build a digraph, inferring the ring mode from the weights."""
        triples = [tuple(e) for e in edges]
        mode, weights = ring.unify(
            w if not isinstance(w, int) else Fraction(w) for _, _, w in triples
        )
        return cls(n, tuple(Edge(t, h, w) for (t, h, _), w in zip(triples, weights)), mode)

    def out_edges(self, v: int) -> list[int]:
        return [i for i, e in enumerate(self.edges) if e.tail == v]

    def out_adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            adj[e.tail].append(i)
        return adj

    def edge_weight_product(self, edge_ids: Iterable[int]) -> Weight:
        return ring.product((self.edges[i].weight for i in edge_ids), self.mode)


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple[Weight, ...]
    mode: str = field(default=ring.RATIONAL)

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise InputError("entry count does not match the matrix shape")
        for w in self.entries:
            if ring.mode_of(w) != self.mode:
                raise InputError(f"matrix entry {w} is not in {self.mode} mode")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Weight | int]], mode: str | None = None) -> Matrix:
        rows = [list(r) for r in rows]
        cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise InputError("ragged matrix rows")
        flat = [Fraction(w) if isinstance(w, int) else w for r in rows for w in r]
        if mode is None:
            mode, flat = ring.unify(flat)
        else:
            flat = [ring.coerce(w, mode) for w in flat]
        return cls(len(rows), cols, tuple(flat), mode)

    @classmethod
    def identity(cls, n: int, mode: str = ring.RATIONAL) -> Matrix:
        z, o = ring.zero(mode), ring.one(mode)
        return cls(n, n, tuple(o if i == j else z for i in range(n) for j in range(n)), mode)

    @classmethod
    def zeros(cls, rows: int, cols: int, mode: str = ring.RATIONAL) -> Matrix:
        return cls(rows, cols, (ring.zero(mode),) * (rows * cols), mode)

    @classmethod
    def symbolic(cls, rows: int, cols: int, name: Callable[[int, int], str]) -> Matrix:
        """Matrix of distinct indeterminates ``name(i, j)`` (0-based indices)."""
        return cls(rows, cols,
                   tuple(MPoly.var(name(i, j)) for i in range(rows) for j in range(cols)),
                   ring.SYMBOLIC)

    def __getitem__(self, ij: tuple[int, int]) -> Weight:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Weight, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Weight]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> Matrix:
        return Matrix(self.cols, self.rows,
                      tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
                      self.mode)

    def map(self, fn: Callable[[Weight], Weight], mode: str | None = None) -> Matrix:
        return Matrix(self.rows, self.cols, tuple(fn(w) for w in self.entries), mode or self.mode)

    def with_column(self, k: int, column: Sequence[Weight]) -> Matrix:
        if len(column) != self.rows:
            raise InputError("replacement column has the wrong length")
        rows = self.to_rows()
        for i, w in enumerate(column):
            rows[i][k] = w
        return Matrix.from_rows(rows, self.mode)

    def __add__(self, other: Matrix) -> Matrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InputError("matrix shapes differ")
        return Matrix(self.rows, self.cols,
                      tuple(ring.add(a, b) for a, b in zip(self.entries, other.entries)),
                      self.mode)

    def __matmul__(self, other: Matrix) -> Matrix:
        return mat_mul(self, other)


def adjacency_matrix(g: WeightedDigraph) -> Matrix:
    """Entry (u, v) is the total weight of the parallel edges u -> v."""
    entries = [ring.zero(g.mode)] * (g.n * g.n)
    for e in g.edges:
        entries[e.tail * g.n + e.head] = entries[e.tail * g.n + e.head] + e.weight
    return Matrix(g.n, g.n, tuple(entries), g.mode)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise InputError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    if a.mode != b.mode:
        raise ring.ModeMismatchError("matrix modes differ")
    out = []
    z = ring.zero(a.mode)
    for i in range(a.rows):
        row = a.row(i)
        for j in range(b.cols):
            s = z
            for k in range(a.cols):
                if row[k] and b[k, j]:
                    s = s + row[k] * b[k, j]
            out.append(s)
    return Matrix(a.rows, b.cols, tuple(out), a.mode)


def mat_pow(a: Matrix, r: int) -> Matrix:
    if not a.is_square:
        raise InputError("matrix power needs a square matrix")
    if r < 0:
        raise InputError("matrix power exponent must be non-negative")
    result = Matrix.identity(a.rows, a.mode)
    base = a
    while r:
        if r & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        r >>= 1
    return result


def trace(a: Matrix) -> Weight:
    if not a.is_square:
        raise InputError("trace needs a square matrix")
    s = ring.zero(a.mode)
    for i in range(a.rows):
        s = s + a[i, i]
    return s


def _permutation_expansion(rows: Sequence[Sequence], zero, one, signed: bool):
    """Sum over permutations of the products ``rows[i][sigma(i)]``.

    The permutations are grouped by the set of columns already used by the
    first rows, so the work is ``O(2^n n)`` ring operations instead of
    ``O(n! n)``.  When ``signed`` each permutation carries ``sgn(sigma)``:
    placing row ``i`` in column ``j`` adds one inversion per earlier row
    sitting in a column greater than ``j``.
    """
    n = len(rows)
    partial = {0: one}
    for i in range(n):
        nxt: dict[int, object] = {}
        row = rows[i]
        for used, acc in partial.items():
            if not acc:
                continue
            for j in range(n):
                bit = 1 << j
                if used & bit or not row[j]:
                    continue
                term = acc * row[j]
                if signed and bin(used >> (j + 1)).count("1") & 1:
                    term = -term
                key = used | bit
                nxt[key] = nxt[key] + term if key in nxt else term
        partial = nxt
    return partial.get((1 << n) - 1, zero)


def _check_expandable(m: Matrix, what: str) -> None:
    if not m.is_square:
        raise InputError(f"{what} needs a square matrix, got {m.rows}x{m.cols}")
    if m.rows > MAX_EXPANSION_SIZE:
        raise CapExceeded(f"{what} is capped at n <= {MAX_EXPANSION_SIZE}, got n={m.rows}")


def det(m: Matrix) -> Weight:
    """Signed permutation expansion; exact in either ring mode."""
    _check_expandable(m, "det")
    return _permutation_expansion(m.to_rows(), ring.zero(m.mode), ring.one(m.mode), True)


def per(m: Matrix) -> Weight:
    """Unsigned permutation expansion (the permanent)."""
    _check_expandable(m, "per")
    return _permutation_expansion(m.to_rows(), ring.zero(m.mode), ring.one(m.mode), False)


class _XPoly:
    """Univariate polynomial in the reserved indeterminate over weights.

    ``coeffs[d]`` is the coefficient of ``x^d``.  Only what the expansion in
    :func:`charpoly` needs: ``+``, ``-``, ``*`` and truthiness.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.coeffs = coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __neg__(self):
        return _XPoly(-c for c in self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return _XPoly([a[i] + b[i] if i < len(b) else a[i] for i in range(len(a))])

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return _XPoly([])
        out = [None] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = a * b if out[i + j] is None else out[i + j] + a * b
        return _XPoly([c if c is not None else self.coeffs[0] * 0 for c in out])


def charpoly(m: Matrix) -> list[Weight]:
    """Coefficients of ``det(xI - M)`` from degree ``n`` down to degree 0.

    The determinant of ``xI - M`` is expanded division-free with entries that
    are polynomials in ``x`` over the weight ring.
    """
    _check_expandable(m, "charpoly")
    if m.mode == ring.SYMBOLIC:
        for w in m.entries:
            if ring.RESERVED_VARIABLE in w.variables():
                raise InputError(f"input already contains the reserved variable {ring.RESERVED_VARIABLE!r}")
    n = m.rows
    z, o = ring.zero(m.mode), ring.one(m.mode)
    rows = [[_XPoly([-m[i, j], o] if i == j else [-m[i, j]]) for j in range(n)] for i in range(n)]
    result = _permutation_expansion(rows, _XPoly([]), _XPoly([o]), True)
    coeffs = result.coeffs + [z] * (n + 1 - len(result.coeffs))
    return [c if c is not None else z for c in reversed(coeffs)]


def companion_digraph(coefficients: Sequence[Weight | int]) -> WeightedDigraph:
    """Digraph whose adjacency matrix is the companion matrix of a monic polynomial.

    For ``f(x) = x^n + e_1 x^(n-1) + ... + e_n`` the matrix has first row
    ``(-e_1, ..., -e_n)`` and ones on the subdiagonal.  Every directed cycle
    runs ``0 -> j-1 -> j-2 -> ... -> 0`` with weight ``-e_j``, so the signed
    cycle-cover sums recover ``e_j`` and closed-walk sums are the power sums
    of the roots.  Zero coefficients produce no edge.
    """
    if not coefficients:
        raise InputError("companion digraph needs at least one coefficient")
    mode, es = ring.unify(Fraction(c) if isinstance(c, int) else c for c in coefficients)
    edges = []
    for j, e in enumerate(es):
        if e:
            edges.append(Edge(0, j, -e))
    for i in range(1, len(es)):
        edges.append(Edge(i, i - 1, ring.one(mode)))
    return WeightedDigraph(len(es), tuple(edges), mode)

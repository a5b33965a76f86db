"""Cramer's rule: an exact solver and the path-system proof of the rule.

The proof digraph has sources ``A_1..A_n``, middle vertices ``B_1..B_n`` and
one extra vertex ``X``.  Edge ``A_i -> B_j`` carries the indeterminate
``a_ij`` and edge ``B_j -> X`` carries ``x_j``.  Using ``X`` in place of
``B_k`` as the k-th sink makes column ``k`` of the path matrix equal to
``sum_j a_ij x_j`` (the right-hand side ``b_i``) while the other columns stay
those of ``A``, so its determinant is ``x_k det(A)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import graph as _graph
from . import ring
from .errors import CapExceeded, InputError, SingularMatrixError
from .graph import Edge, Matrix, WeightedDigraph
from .lgv import Path, PathSystem, enumerate_path_systems, path_matrix
from .report import Report
from .ring import MPoly, Weight

MAX_IDENTITY_SIZE = 4


@dataclass(frozen=True)
class LinearSystem:
    a: Matrix
    b: tuple[Weight, ...]

    def __post_init__(self):
        if not self.a.is_square:
            raise InputError("coefficient matrix must be square")
        if len(self.b) != self.a.rows:
            raise InputError(f"right-hand side has {len(self.b)} entries, expected {self.a.rows}")
        object.__setattr__(self, "b", tuple(ring.coerce(w, self.a.mode) for w in self.b))


def cramer_solve(system: LinearSystem) -> list[Fraction]:
    """x_k = det(A with column k replaced by b) / det(A), over the rationals."""
    a, b = system.a, system.b
    if a.mode != ring.RATIONAL:
        raise InputError("cramer_solve needs rational weights; polynomials have no division")
    d = _graph.det(a)
    if d == 0:
        raise SingularMatrixError("SINGULAR: det(A) = 0")
    x = [_graph.det(a.with_column(k, b)) / d for k in range(a.rows)]
    for i in range(a.rows):
        lhs = sum((a[i, j] * x[j] for j in range(a.cols)), Fraction(0))
        if lhs != b[i]:
            raise AssertionError(f"Cramer solution fails row {i}: {lhs} != {b[i]}")
    return x


def a_name(i: int, j: int) -> str:
    """Indeterminate for entry (i, j), 1-based: ``a12``, ``a_10_3`` beyond 9."""
    return f"a{i}{j}" if i < 10 and j < 10 else f"a_{i}_{j}"


def x_name(j: int) -> str:
    return f"x{j}"


def symbolic_coefficients(n: int) -> Matrix:
    return Matrix.symbolic(n, n, lambda i, j: a_name(i + 1, j + 1))


def cramer_terminals(n: int, k: int) -> tuple[list[int], list[int]]:
    """Sources ``A_1..A_n`` and sinks ``B_1..B_n`` with ``B_k`` replaced by ``X``.

    Vertex layout: ``A_i = i-1``, ``B_j = n+j-1``, ``X = 2n``.
    """
    sources = list(range(n))
    sinks = [n + j for j in range(n)]
    sinks[k - 1] = 2 * n
    return sources, sinks


def build_cramer_digraph(n: int, k: int) -> WeightedDigraph:
    if not 1 <= k <= n:
        raise InputError(f"column index k={k} must satisfy 1 <= k <= n={n}")
    if n > MAX_IDENTITY_SIZE:
        raise CapExceeded(f"the Cramer digraph is capped at n <= {MAX_IDENTITY_SIZE}")
    edges = [Edge(i, n + j, MPoly.var(a_name(i + 1, j + 1))) for i in range(n) for j in range(n)]
    edges += [Edge(n + j, 2 * n, MPoly.var(x_name(j + 1))) for j in range(n)]
    return WeightedDigraph(2 * n + 1, tuple(edges), ring.SYMBOLIC)


def _without_x(g: WeightedDigraph, n: int) -> WeightedDigraph:
    return WeightedDigraph(2 * n, tuple(e for e in g.edges if e.head != 2 * n), g.mode)


def verify_cramer_identity(n: int, k: int) -> Report:
    """Check ``det(M) = x_k det(A)`` as a polynomial identity, and its proof.

    The proof's structural claim: in every vertex-disjoint system the path to
    ``X`` passes through ``B_k``, and dropping its last edge leaves a
    vertex-disjoint system of the ``A``-block; this is a bijection that
    multiplies weights by ``x_k``.
    """
    g = build_cramer_digraph(n, k)
    sources, sinks = cramer_terminals(n, k)
    m = path_matrix(g, sources, sinks)
    a = symbolic_coefficients(n)
    xk = MPoly.var(x_name(k))
    det_m = _graph.det(m)
    det_a = _graph.det(a)
    difference = det_m - xk * det_a

    rep = Report("cramer-identity")
    rep.values.update({"n": n, "k": k, "path_matrix": m.to_rows(), "det_path_matrix": det_m,
                       "x_k_det_A": xk * det_a, "difference": difference})
    rep.add("det(path matrix) - x_k det(A) == 0", difference == 0, f"difference = {difference}")

    column_ok = all(m[i, k - 1] == sum((MPoly.var(a_name(i + 1, j + 1)) * MPoly.var(x_name(j + 1))
                                        for j in range(n)), MPoly.const(0))
                    for i in range(n))
    other_ok = all(m[i, j] == a[i, j] for i in range(n) for j in range(n) if j != k - 1)
    rep.add("column k of the path matrix is b = A x", column_ok)
    rep.add("other columns of the path matrix are those of A", other_ok)

    block = _without_x(g, n)
    block_sinks = [n + j for j in range(n)]
    rep.add("path matrix without X is A", path_matrix(block, sources, block_sinks) == a)

    vd = enumerate_path_systems(g, sources, sinks, vertex_disjoint_only=True)
    vd_sum = sum((s.signed_weight(g) for s in vd), MPoly.const(0))
    rep.add("signed sum over vertex-disjoint systems == det(path matrix)", vd_sum == det_m)

    truncated = []
    through_bk = True
    for s in vd:
        i = s.sigma.index(k - 1)
        p = s.paths[i]
        if p.vertices[-2] != n + k - 1:
            through_bk = False
            continue
        cut = Path(p.source, n + k - 1, p.edges[:-1], p.vertices[:-1])
        truncated.append(PathSystem(s.sigma, s.paths[:i] + (cut,) + s.paths[i + 1:]))
    block_vd = enumerate_path_systems(block, sources, block_sinks, vertex_disjoint_only=True)
    rep.add("every disjoint system reaches X through B_k", through_bk, f"{len(vd)} system(s)")
    rep.add("truncation is a bijection onto disjoint systems of the A-block",
            through_bk and len(truncated) == len(block_vd) and set(truncated) == set(block_vd),
            f"{len(truncated)} truncated vs {len(block_vd)} block system(s)")
    rep.add("weights factor as x_k times the block system weight",
            through_bk and all(s.weight(g) == xk * t.weight(block) for s, t in zip(vd, truncated)))
    return rep


def solve_report(system: LinearSystem) -> Report:
    x = cramer_solve(system)
    rep = Report("cramer")
    rep.values["det_A"] = _graph.det(system.a)
    rep.values["x"] = x
    a = system.a
    residuals = [sum((a[i, j] * x[j] for j in range(a.cols)), Fraction(0)) - system.b[i]
                 for i in range(a.rows)]
    rep.add("A x == b", all(r == 0 for r in residuals))
    return rep


import random
from fractions import Fraction

import pytest

from combident import cramer, graph, lgv
from combident.errors import CapExceeded, InputError, SingularMatrixError
from combident.graph import Matrix
from combident.ring import MPoly

from oracles import bareiss_solve, random_rational_matrix

F = Fraction


def var(name):
    return MPoly.var(name)


def test_solve_two_by_two():
    # Gaussian elimination by hand: x + 2y = 5, 3x + 4y = 6 -> y = 9/2, x = -4
    system = cramer.LinearSystem(Matrix.from_rows([[1, 2], [3, 4]]), (F(5), F(6)))
    assert cramer.cramer_solve(system) == [-4, F(9, 2)]
    assert bareiss_solve([[1, 2], [3, 4]], [5, 6]) == [-4, F(9, 2)]


def test_solve_identity():
    b = (F(3), F(-1, 2), F(7))
    assert cramer.cramer_solve(cramer.LinearSystem(Matrix.identity(3), b)) == list(b)


def test_solve_singular():
    with pytest.raises(SingularMatrixError, match="SINGULAR"):
        cramer.cramer_solve(cramer.LinearSystem(Matrix.from_rows([[1, 1], [1, 1]]), (F(1), F(2))))


def test_solve_rejects_symbolic():
    with pytest.raises(InputError):
        cramer.cramer_solve(cramer.LinearSystem(Matrix.from_rows([[var("a")]]), (MPoly.const(1),)))


def test_system_shape_checks():
    with pytest.raises(InputError):
        cramer.LinearSystem(Matrix.identity(2), (F(1),))


@pytest.mark.parametrize("seed", range(25))
def test_solve_matches_bareiss(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    a = random_rational_matrix(rng, n)
    b = tuple(F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n))
    expected = bareiss_solve(a.to_rows(), list(b))
    if expected is None:
        with pytest.raises(SingularMatrixError):
            cramer.cramer_solve(cramer.LinearSystem(a, b))
        return
    x = cramer.cramer_solve(cramer.LinearSystem(a, b))
    assert x == expected
    assert all(sum(a[i, j] * x[j] for j in range(n)) == b[i] for i in range(n))


def test_digraph_n1():
    g = cramer.build_cramer_digraph(1, 1)
    sources, sinks = cramer.cramer_terminals(1, 1)
    assert lgv.path_matrix(g, sources, sinks).to_rows() == [[var("a11") * var("x1")]]


def test_digraph_n2_k1():
    g = cramer.build_cramer_digraph(2, 1)
    m = lgv.path_matrix(g, *cramer.cramer_terminals(2, 1))
    a11, a12, a21, a22, x1, x2 = (var(v) for v in ("a11", "a12", "a21", "a22", "x1", "x2"))
    assert m.to_rows() == [[a11 * x1 + a12 * x2, a12], [a21 * x1 + a22 * x2, a22]]
    expected = (a11 * x1 + a12 * x2) * a22 - a12 * (a21 * x1 + a22 * x2)
    assert expected - x1 * (a11 * a22 - a12 * a21) == 0
    assert graph.det(m) == expected


def test_digraph_n3_matches_displayed_column_replacement():
    # det(b | a2 | a3) with b_i = sum_j a_ij x_j
    g = cramer.build_cramer_digraph(3, 1)
    m = lgv.path_matrix(g, *cramer.cramer_terminals(3, 1))
    a = cramer.symbolic_coefficients(3)
    x = [var(f"x{j}") for j in (1, 2, 3)]
    b = [sum((a[i, j] * x[j] for j in range(3)), MPoly()) for i in range(3)]
    assert m == a.with_column(0, b)
    assert lgv.is_acyclic(g)


def test_digraph_argument_checks():
    with pytest.raises(InputError):
        cramer.build_cramer_digraph(2, 3)
    with pytest.raises(CapExceeded):
        cramer.build_cramer_digraph(5, 1)


@pytest.mark.parametrize("n, k", [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3), (4, 1), (4, 4)])
def test_identity_is_zero_polynomial(n, k):
    rep = cramer.verify_cramer_identity(n, k)
    assert rep.passed, [f.name for f in rep.failures()]
    assert rep.values["difference"] == MPoly()


@pytest.mark.parametrize("seed", range(10))
def test_symbolic_identity_specializes_to_numeric(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    k = rng.randint(1, n)
    rep = cramer.verify_cramer_identity(n, k)
    point = {f"a{i}{j}": F(rng.randint(-5, 5), rng.randint(1, 3)) for i in range(1, n + 1) for j in range(1, n + 1)}
    point.update({f"x{j}": F(rng.randint(-5, 5)) for j in range(1, n + 1)})
    a = Matrix.from_rows([[point[f"a{i}{j}"] for j in range(1, n + 1)] for i in range(1, n + 1)])
    b = [sum((a[i, j] * point[f"x{j + 1}"] for j in range(n)), F(0)) for i in range(n)]
    assert rep.values["det_path_matrix"].eval(point) == graph.det(a.with_column(k - 1, b))
    assert rep.values["x_k_det_A"].eval(point) == point[f"x{k}"] * graph.det(a)

"""Paths, path systems and path matrices in acyclic digraphs.

For sources ``A_1..A_k`` and sinks ``B_1..B_k`` the path matrix has entry
``(i, j)`` equal to the total weight of the paths ``A_i -> B_j``.  Its
determinant equals the signed weight of all path systems and also that of the
vertex-disjoint ones alone; its permanent is the unsigned weight of all path
systems.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod
from typing import Iterator, Sequence

from . import graph as _graph
from . import ring
from .errors import CapExceeded, InputError, NotAcyclicError
from .graph import Matrix, WeightedDigraph
from .report import Report
from .ring import Weight

MAX_SYSTEM_SIZE = 5
MAX_SYSTEMS = 10**6


@dataclass(frozen=True)
class Path:
    source: int
    target: int
    edges: tuple[int, ...]
    vertices: tuple[int, ...]  # source, ..., target

    def weight(self, g: WeightedDigraph) -> Weight:
        return g.edge_weight_product(self.edges)


@dataclass(frozen=True)
class PathSystem:
    """A permutation ``sigma`` and one path ``A_i -> B_sigma(i)`` per source."""

    sigma: tuple[int, ...]
    paths: tuple[Path, ...]

    @property
    def sign(self) -> int:
        return permutation_sign(self.sigma)

    def weight(self, g: WeightedDigraph) -> Weight:
        return ring.product((p.weight(g) for p in self.paths), g.mode)

    def signed_weight(self, g: WeightedDigraph) -> Weight:
        w = self.weight(g)
        return w if self.sign > 0 else -w

    def is_vertex_disjoint(self) -> bool:
        seen: set[int] = set()
        for p in self.paths:
            if not seen.isdisjoint(p.vertices):
                return False
            seen.update(p.vertices)
        return True


def permutation_sign(sigma: Sequence[int]) -> int:
    inversions = sum(1 for i, j in itertools.combinations(range(len(sigma)), 2) if sigma[i] > sigma[j])
    return -1 if inversions % 2 else 1


def is_acyclic(g: WeightedDigraph) -> bool:
    indegree = [0] * g.n
    for e in g.edges:
        indegree[e.head] += 1
    adj = g.out_adjacency()
    ready = [v for v in range(g.n) if indegree[v] == 0]
    removed = 0
    while ready:
        v = ready.pop()
        removed += 1
        for e in adj[v]:
            h = g.edges[e].head
            indegree[h] -= 1
            if indegree[h] == 0:
                ready.append(h)
    return removed == g.n


def _require_dag(g: WeightedDigraph) -> None:
    if not is_acyclic(g):
        raise NotAcyclicError("the digraph has a directed cycle")


def _check_vertex(g: WeightedDigraph, v: int) -> None:
    if not 0 <= v < g.n:
        raise InputError(f"vertex {v} out of range for n={g.n}")


def _iter_paths(g: WeightedDigraph, a: int, b: int, adj) -> Iterator[Path]:
    heads = [e.head for e in g.edges]
    edges: list[int] = []
    verts = [a]

    def extend(at: int) -> Iterator[Path]:
        if at == b:
            yield Path(a, b, tuple(edges), tuple(verts))
            return
        for e in adj[at]:
            edges.append(e)
            verts.append(heads[e])
            yield from extend(heads[e])
            edges.pop()
            verts.pop()

    return extend(a)


def enumerate_paths(g: WeightedDigraph, a: int, b: int) -> list[Path]:
    """All directed paths ``a -> b`` in lexicographic order of edge ids.

    ``a == b`` gives the single empty path (weight one).
    """
    _require_dag(g)
    _check_vertex(g, a)
    _check_vertex(g, b)
    return list(_iter_paths(g, a, b, g.out_adjacency()))


def _check_terminals(g: WeightedDigraph, sources: Sequence[int], sinks: Sequence[int]) -> None:
    if len(sources) != len(sinks):
        raise InputError(f"{len(sources)} sources but {len(sinks)} sinks")
    for v in list(sources) + list(sinks):
        _check_vertex(g, v)


def path_matrix(g: WeightedDigraph, sources: Sequence[int], sinks: Sequence[int]) -> Matrix:
    _require_dag(g)
    _check_terminals(g, sources, sinks)
    # Path weight sums by dynamic programming over a topological order.
    totals = {}
    for b in set(sinks):
        totals[b] = _path_sums_into(g, b)
    rows = [[totals[b][a] for b in sinks] for a in sources]
    return Matrix.from_rows(rows, g.mode) if rows else Matrix.zeros(0, 0, g.mode)


def _path_sums_into(g: WeightedDigraph, b: int) -> list[Weight]:
    """``out[v]`` = total weight of paths ``v -> b``."""
    adj = g.out_adjacency()
    memo: dict[int, Weight] = {}

    def walk(v: int) -> Weight:
        if v in memo:
            return memo[v]
        if v == b:
            total = ring.one(g.mode)
        else:
            total = ring.zero(g.mode)
            for e in adj[v]:
                edge = g.edges[e]
                total = total + edge.weight * walk(edge.head)
        memo[v] = total
        return total

    return [walk(v) for v in range(g.n)]


def enumerate_path_systems(
    g: WeightedDigraph,
    sources: Sequence[int],
    sinks: Sequence[int],
    vertex_disjoint_only: bool = False,
) -> list[PathSystem]:
    """Path systems ordered by ``sigma`` (lexicographic), then by paths."""
    _require_dag(g)
    _check_terminals(g, sources, sinks)
    k = len(sources)
    if k > MAX_SYSTEM_SIZE:
        raise CapExceeded(f"path systems are capped at size {MAX_SYSTEM_SIZE}, got {k}")
    adj = g.out_adjacency()
    paths = {(a, b): list(_iter_paths(g, a, b, adj)) for a in set(sources) for b in set(sinks)}
    total = sum(prod(len(paths[sources[i], sinks[s]]) for i, s in enumerate(sigma))
                for sigma in itertools.permutations(range(k)))
    if total > MAX_SYSTEMS:
        raise CapExceeded(f"{total} path systems exceed the cap of {MAX_SYSTEMS}")

    out: list[PathSystem] = []
    for sigma in itertools.permutations(range(k)):
        choices = [paths[sources[i], sinks[s]] for i, s in enumerate(sigma)]
        if not vertex_disjoint_only:
            out.extend(PathSystem(sigma, combo) for combo in itertools.product(*choices))
            continue

        def extend(i: int, chosen: tuple[Path, ...], used: frozenset[int]) -> None:
            if i == k:
                out.append(PathSystem(sigma, chosen))
                return
            for p in choices[i]:
                if used.isdisjoint(p.vertices):
                    extend(i + 1, chosen + (p,), used | frozenset(p.vertices))

        extend(0, (), frozenset())
    return out


def _signed_total(g: WeightedDigraph, systems: Sequence[PathSystem], signed: bool) -> Weight:
    total = ring.zero(g.mode)
    for s in systems:
        total = total + (s.signed_weight(g) if signed else s.weight(g))
    return total


def lgv_check(g: WeightedDigraph, sources: Sequence[int], sinks: Sequence[int]) -> Report:
    """det(path matrix) against the signed sums over all and over disjoint systems."""
    m = path_matrix(g, sources, sinks)
    d = _graph.det(m)
    all_systems = enumerate_path_systems(g, sources, sinks)
    vd = [s for s in all_systems if s.is_vertex_disjoint()]
    all_sum = _signed_total(g, all_systems, True)
    vd_sum = _signed_total(g, vd, True)
    rep = Report("lgv")
    rep.values.update({
        "path_matrix": m.to_rows(),
        "det": d,
        "vertex_disjoint_signed_sum": vd_sum,
        "all_systems_signed_sum": all_sum,
        "systems": len(all_systems),
        "vertex_disjoint_systems": len(vd),
    })
    rep.add("det == signed sum over vertex-disjoint systems", d == vd_sum, f"{d} vs {vd_sum}")
    rep.add("det == signed sum over all systems", d == all_sum, f"{d} vs {all_sum}")
    return rep


def per_check(g: WeightedDigraph, sources: Sequence[int], sinks: Sequence[int]) -> Report:
    m = path_matrix(g, sources, sinks)
    p = _graph.per(m)
    all_systems = enumerate_path_systems(g, sources, sinks)
    total = _signed_total(g, all_systems, False)
    rep = Report("per")
    rep.values.update({
        "path_matrix": m.to_rows(),
        "per": p,
        "all_systems_sum": total,
        "systems": len(all_systems),
    })
    rep.add("per == unsigned sum over all systems", p == total, f"{p} vs {total}")
    return rep

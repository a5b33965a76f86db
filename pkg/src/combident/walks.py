"""Closed walks, linear subdigraphs and the graphical Newton-Girard identities.

``c_r`` is the total weight of closed walks of length ``r`` (each start vertex
counted separately) and ``l_r`` the signed total weight of linear subdigraphs
(vertex-disjoint cycle collections) with ``r`` edges, each counted with sign
``(-1)^(number of cycles)``.  For a digraph on ``n`` vertices::

    c_r + c_{r-1} l_1 + ... + c_{r-n} l_n = 0                 (r > n)
    c_r + c_{r-1} l_1 + ... + c_1 l_{r-1} + r l_r = 0          (1 <= r <= n)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from . import graph as _graph
from . import ring
from .errors import CapExceeded, InputError
from .graph import WeightedDigraph
from .report import Check, Report
from .ring import Weight

MAX_WALK_VERTICES = 8
MAX_WALK_LENGTH = 12
MAX_SUBDIGRAPH_VERTICES = 10


@dataclass(frozen=True)
class ClosedWalk:
    """A closed walk: its start vertex plus the edge ids it traverses.

    ``vertices[i]`` is the tail of ``edges[i]``; the walk returns to
    ``vertices[0] == start`` after the last edge.
    """

    start: int
    edges: tuple[int, ...]
    vertices: tuple[int, ...]

    @classmethod
    def from_edges(cls, g: WeightedDigraph, start: int, edges: Sequence[int]) -> ClosedWalk:
        edges = tuple(edges)
        if not edges:
            raise InputError("a closed walk has at least one edge")
        verts = []
        at = start
        for e in edges:
            if g.edges[e].tail != at:
                raise InputError(f"edge {e} does not continue the walk at vertex {at}")
            verts.append(at)
            at = g.edges[e].head
        if at != start:
            raise InputError("walk does not return to its start")
        return cls(start, edges, tuple(verts))

    def __len__(self) -> int:
        return len(self.edges)

    def weight(self, g: WeightedDigraph) -> Weight:
        return g.edge_weight_product(self.edges)

    def is_simple(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices)


@dataclass(frozen=True)
class Cycle:
    """Directed cycle, rotated so that it starts at its smallest vertex."""

    edges: tuple[int, ...]
    vertices: tuple[int, ...]

    @classmethod
    def canonical(cls, edges: Sequence[int], vertices: Sequence[int]) -> Cycle:
        k = min(range(len(vertices)), key=vertices.__getitem__)
        return cls(tuple(edges[k:]) + tuple(edges[:k]), tuple(vertices[k:]) + tuple(vertices[:k]))

    def rotated_to(self, v: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Edge and vertex sequences of the cycle read from vertex ``v``."""
        k = self.vertices.index(v)
        return self.edges[k:] + self.edges[:k], self.vertices[k:] + self.vertices[:k]

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class LinearSubdigraph:
    """Pairwise vertex-disjoint cycles, sorted by their smallest vertex."""

    cycles: tuple[Cycle, ...] = ()

    @classmethod
    def of(cls, cycles) -> LinearSubdigraph:
        cycles = sorted(cycles, key=lambda c: c.vertices[0])
        seen: set[int] = set()
        for c in cycles:
            if seen & set(c.vertices):
                raise InputError("cycles of a linear subdigraph must be vertex-disjoint")
            seen |= set(c.vertices)
        return cls(tuple(cycles))

    def __len__(self) -> int:
        return sum(len(c) for c in self.cycles)

    @property
    def cycle_count(self) -> int:
        return len(self.cycles)

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(v for c in self.cycles for v in c.vertices)

    def cycle_through(self, v: int) -> Cycle:
        for c in self.cycles:
            if v in c.vertices:
                return c
        raise KeyError(v)

    def without(self, cycle: Cycle) -> LinearSubdigraph:
        return LinearSubdigraph(tuple(c for c in self.cycles if c != cycle))

    def adding(self, cycle: Cycle) -> LinearSubdigraph:
        return LinearSubdigraph.of(self.cycles + (cycle,))

    def weight(self, g: WeightedDigraph) -> Weight:
        return g.edge_weight_product(e for c in self.cycles for e in c.edges)

    def signed_weight(self, g: WeightedDigraph) -> Weight:
        w = self.weight(g)
        return -w if self.cycle_count % 2 else w


def iter_closed_walks(g: WeightedDigraph, r: int) -> Iterator[ClosedWalk]:
    """Closed walks of length ``r`` ordered by start, then edge ids."""
    if r < 1:
        raise InputError("closed walks have length >= 1")
    if g.n > MAX_WALK_VERTICES or r > MAX_WALK_LENGTH:
        raise CapExceeded(
            f"closed-walk enumeration is capped at n <= {MAX_WALK_VERTICES}, r <= {MAX_WALK_LENGTH}")
    adj = g.out_adjacency()
    heads = [e.head for e in g.edges]

    for start in range(g.n):
        edges: list[int] = []
        verts: list[int] = []

        def extend(at: int) -> Iterator[ClosedWalk]:
            if len(edges) == r:
                if at == start:
                    yield ClosedWalk(start, tuple(edges), tuple(verts))
                return
            for e in adj[at]:
                edges.append(e)
                verts.append(at)
                yield from extend(heads[e])
                edges.pop()
                verts.pop()

        yield from extend(start)


def enumerate_closed_walks(g: WeightedDigraph, r: int) -> list[ClosedWalk]:
    return list(iter_closed_walks(g, r))


def closed_walk_sums(g: WeightedDigraph, r_max: int) -> list[Weight]:
    """``[c_1, ..., c_{r_max}]`` from traces of adjacency powers."""
    a = _graph.adjacency_matrix(g)
    power = a
    out = []
    for r in range(1, r_max + 1):
        if r > 1:
            power = _graph.mat_mul(power, a)
        out.append(_graph.trace(power))
    return out


def closed_walk_sum(g: WeightedDigraph, r: int, method: str = "trace") -> Weight:
    """``c_r``.

    ``method="trace"`` uses ``trace(A^r)`` and has no size cap;
    ``method="enumerate"`` sums the explicit walks and is kept as the
    combinatorial cross-check.
    """
    if r < 1:
        raise InputError("c_r is defined for r >= 1")
    if method == "trace":
        return _graph.trace(_graph.mat_pow(_graph.adjacency_matrix(g), r))
    if method == "enumerate":
        total = ring.zero(g.mode)
        for walk in iter_closed_walks(g, r):
            total = total + walk.weight(g)
        return total
    raise ValueError(f"unknown method {method!r}")


@lru_cache(maxsize=256)
def simple_cycles(g: WeightedDigraph) -> tuple[Cycle, ...]:
    """All directed cycles as edge sequences (parallel edges give distinct cycles).

    Ordered by smallest vertex, then by edge ids read from that vertex.
    """
    if g.n > MAX_SUBDIGRAPH_VERTICES:
        raise CapExceeded(f"cycle enumeration is capped at n <= {MAX_SUBDIGRAPH_VERTICES}")
    adj = g.out_adjacency()
    heads = [e.head for e in g.edges]
    found: list[Cycle] = []
    for s in range(g.n):
        edges: list[int] = []
        verts: list[int] = []
        on_path = set()

        def extend(at: int) -> None:
            for e in adj[at]:
                h = heads[e]
                if h == s:
                    found.append(Cycle(tuple(edges) + (e,), tuple(verts) + (at,)))
                elif h > s and h not in on_path:
                    edges.append(e)
                    verts.append(at)
                    on_path.add(h)
                    extend(h)
                    on_path.discard(h)
                    edges.pop()
                    verts.pop()

        extend(s)
    return tuple(found)


@lru_cache(maxsize=256)
def _all_linear_subdigraphs(g: WeightedDigraph) -> tuple[LinearSubdigraph, ...]:
    cycles = simple_cycles(g)
    out: list[LinearSubdigraph] = []

    def choose(start: int, used: frozenset[int], chosen: tuple[Cycle, ...]) -> None:
        out.append(LinearSubdigraph(chosen))
        for idx in range(start, len(cycles)):
            c = cycles[idx]
            if used.isdisjoint(c.vertices):
                choose(idx + 1, used | frozenset(c.vertices), chosen + (c,))

    choose(0, frozenset(), ())
    return tuple(out)


def enumerate_linear_subdigraphs(g: WeightedDigraph, r: int) -> list[LinearSubdigraph]:
    """Linear subdigraphs with exactly ``r`` edges; ``r = 0`` gives the empty one."""
    if r < 0:
        raise InputError("length must be non-negative")
    return [s for s in _all_linear_subdigraphs(g) if len(s) == r]


@lru_cache(maxsize=256)
def _signed_sums_by_length(g: WeightedDigraph) -> tuple[Weight, ...]:
    sums = [ring.zero(g.mode)] * (g.n + 1)
    for s in _all_linear_subdigraphs(g):
        sums[len(s)] = sums[len(s)] + s.signed_weight(g)
    return tuple(sums)


def linear_sub_signed_sum(g: WeightedDigraph, r: int) -> Weight:
    """``l_r``, the sum of ``(-1)^(cycles) * weight`` over linear subdigraphs of length ``r``."""
    if r < 1:
        raise InputError("l_r is only used for r >= 1")
    if r > g.n:
        if g.n > MAX_SUBDIGRAPH_VERTICES:
            raise CapExceeded(f"cycle enumeration is capped at n <= {MAX_SUBDIGRAPH_VERTICES}")
        return ring.zero(g.mode)
    return _signed_sums_by_length(g)[r]


def newton_residual(g: WeightedDigraph, r: int) -> Weight:
    """Left-hand side of the Newton-Girard identity for ``r``; always zero."""
    if r < 1:
        raise InputError("the identities are stated for r >= 1")
    n = g.n
    c = closed_walk_sums(g, r)  # c[k-1] = c_k
    total = c[r - 1]
    for k in range(1, min(r - 1, n) + 1):
        total = total + c[r - k - 1] * linear_sub_signed_sum(g, k)
    if r <= n:
        total = total + r * linear_sub_signed_sum(g, r)
    return total


def newton_corollary_check(coefficients: Sequence[Weight | int], r_max: int) -> Report:
    """Newton's identities for the roots of ``x^n + e_1 x^(n-1) + ... + e_n``.

    Runs the graphical identities on the companion digraph, whose closed-walk
    sums are the power sums ``p_r`` and whose signed cycle sums are ``e_k``.
    """
    g = _graph.companion_digraph(coefficients)
    es = [ring.coerce(e, g.mode) for e in coefficients]
    n = g.n
    rep = Report("newton-corollary")
    rep.values["e"] = es
    rep.values["p"] = closed_walk_sums(g, r_max)
    for k in range(1, n + 1):
        lk = linear_sub_signed_sum(g, k)
        rep.add(f"l_{k} == e_{k}", lk == es[k - 1], f"l_{k} = {lk}")
    for r in range(1, r_max + 1):
        res = newton_residual(g, r)
        rep.add(f"residual r={r}", ring.is_zero(res), f"residual = {res}")
    return rep


def newton_check(g: WeightedDigraph, rs: Sequence[int]) -> Report:
    rep = Report("newton")
    rmax = max(rs) if rs else 0
    rep.values["c"] = closed_walk_sums(g, rmax)
    rep.values["l"] = [linear_sub_signed_sum(g, k) for k in range(1, g.n + 1)]
    for r in rs:
        res = newton_residual(g, r)
        form = "r > n" if r > g.n else "r <= n"
        rep.add(f"residual r={r}", ring.is_zero(res), f"{form} form; residual = {res}")
    return rep

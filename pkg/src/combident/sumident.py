"""Alternating subset sums of determinants and permanents of matrix sums.

For ``n x n`` matrices ``A_1..A_N`` with ``N >= n + 1``::

    sum over nonempty S of (-1)^(|S|-1) det(sum_{t in S} A_t) = 0

and likewise for the permanent.  The returned value uses the sign
``(-1)^(|S|-1)`` so that ``N = 3`` reads
``det(A+B+C) - det(A+B) - det(A+C) - det(B+C) + det(A) + det(B) + det(C)``;
the ``(-1)^|S|`` normalization is its negative and is reported alongside.

The combinatorial proof uses a layered "boxes" digraph in which every
source-to-sink path crosses exactly one box, box ``t`` contributing ``A_t``
to the path matrix.  A system of ``n`` paths touches at most ``n`` boxes, so
none touches all ``N``; inclusion-exclusion over touched boxes turns that
empty sum into the alternating sum.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from . import graph as _graph
from . import ring
from .errors import CapExceeded, InputError
from .graph import Edge, Matrix, WeightedDigraph
from .lgv import Path, enumerate_path_systems, path_matrix
from .report import Report
from .ring import Weight

MAX_N = 6
MAX_TUPLE = 8


@dataclass(frozen=True)
class MatrixTuple:
    matrices: tuple[Matrix, ...]

    def __post_init__(self):
        ms = tuple(self.matrices)
        object.__setattr__(self, "matrices", ms)
        if not ms:
            raise InputError("need at least one matrix")
        n = ms[0].rows
        if n < 1:
            raise InputError("matrices must be at least 1x1")
        for m in ms:
            if not m.is_square or m.rows != n:
                raise InputError("all matrices must be square of the same size")
            if m.mode != ms[0].mode:
                raise ring.ModeMismatchError("all matrices must share one ring mode")
        if n > MAX_N or len(ms) > MAX_TUPLE:
            raise CapExceeded(f"capped at n <= {MAX_N}, N <= {MAX_TUPLE}")

    @classmethod
    def of(cls, matrices: Sequence[Matrix]) -> MatrixTuple:
        """Build a tuple, lifting rational matrices to symbolic mode if any is symbolic."""
        matrices = list(matrices)
        if any(m.mode == ring.SYMBOLIC for m in matrices):
            matrices = [m.map(lambda w: ring.coerce(w, ring.SYMBOLIC), ring.SYMBOLIC) for m in matrices]
        return cls(tuple(matrices))

    @property
    def n(self) -> int:
        return self.matrices[0].rows

    @property
    def count(self) -> int:
        return len(self.matrices)

    @property
    def mode(self) -> str:
        return self.matrices[0].mode

    def subset_sum(self, subset: Sequence[int]) -> Matrix:
        total = Matrix.zeros(self.n, self.n, self.mode)
        for t in subset:
            total = total + self.matrices[t]
        return total


def nonempty_subsets(count: int) -> list[tuple[int, ...]]:
    """Increasing cardinality, then lexicographic."""
    return [s for k in range(1, count + 1) for s in itertools.combinations(range(count), k)]


def _alternating(s: MatrixTuple, fn) -> Weight:
    total = ring.zero(s.mode)
    for subset in nonempty_subsets(s.count):
        v = fn(s.subset_sum(subset))
        total = total + v if len(subset) % 2 else total - v
    return total


def alternating_sum_det(s: MatrixTuple) -> Weight:
    return _alternating(s, _graph.det)


def alternating_sum_per(s: MatrixTuple) -> Weight:
    return _alternating(s, _graph.per)


class BoxesDigraph(NamedTuple):
    graph: WeightedDigraph
    sources: list[int]
    sinks: list[int]


def _u(i: int, t: int, n: int) -> int:
    return t * n + i


def _v(j: int, t: int, n: int, count: int) -> int:
    return count * n + t * n + j


def build_boxes_digraph(s: MatrixTuple, boxes: Sequence[int] | None = None) -> BoxesDigraph:
    """Two-rail layered digraph realizing ``sum_t A_t`` as a path matrix.

    Entry rails ``u_{i,t}`` and exit rails ``v_{j,t}`` (``t = 0..N-1``) are
    linked by unit-weight edges ``u_{i,t} -> u_{i,t+1}`` and
    ``v_{j,t} -> v_{j,t+1}``; box ``t`` is the set of crossing edges
    ``u_{i,t} -> v_{j,t}`` of weight ``(A_t)_{ij}``.  Sources are ``u_{i,0}``,
    sinks ``v_{j,N-1}``.  Passing ``boxes`` keeps only those boxes' crossings.
    """
    n, count, mode = s.n, s.count, s.mode
    keep = set(range(count)) if boxes is None else set(boxes)
    one = ring.one(mode)
    edges: list[Edge] = []
    for t in range(count):
        if t + 1 < count:
            edges += [Edge(_u(i, t, n), _u(i, t + 1, n), one) for i in range(n)]
            edges += [Edge(_v(j, t, n, count), _v(j, t + 1, n, count), one) for j in range(n)]
        if t in keep:
            a = s.matrices[t]
            edges += [Edge(_u(i, t, n), _v(j, t, n, count), a[i, j]) for i in range(n) for j in range(n)]
    g = WeightedDigraph(2 * n * count, tuple(edges), mode)
    return BoxesDigraph(g, [_u(i, 0, n) for i in range(n)],
                        [_v(j, count - 1, n, count) for j in range(n)])


def crossing_box(path: Path, n: int, count: int) -> int:
    """Index of the box whose crossing edge the path uses."""
    boundary = n * count
    for a, b in zip(path.vertices, path.vertices[1:]):
        if a < boundary <= b:
            return a // n
    raise ValueError("path does not cross any box")


def pie_decomposition_check(s: MatrixTuple) -> Report:
    """Inclusion-exclusion over touched boxes, checked by full enumeration.

    With ``f(T)`` the (signed or unsigned) weight of systems touching exactly
    the boxes ``T`` and ``g(S) = sum_{T <= S} f(T)``: checks that ``g(S)``
    equals det/per of ``sum_{t in S} A_t`` and that the Moebius inversion
    ``sum_S (-1)^(N-|S|) g(S)`` equals ``f(all boxes)``, which is the empty
    sum (zero) whenever ``N >= n + 1``.
    """
    n, count, mode = s.n, s.count, s.mode
    full = frozenset(range(count))
    boxes = build_boxes_digraph(s)
    g = boxes.graph
    systems = enumerate_path_systems(g, boxes.sources, boxes.sinks)
    f_signed: dict[frozenset, Weight] = defaultdict(lambda: ring.zero(mode))
    f_plain: dict[frozenset, Weight] = defaultdict(lambda: ring.zero(mode))
    all_boxes = 0
    for ps in systems:
        touched = frozenset(crossing_box(p, n, count) for p in ps.paths)
        f_signed[touched] = f_signed[touched] + ps.signed_weight(g)
        f_plain[touched] = f_plain[touched] + ps.weight(g)
        all_boxes += touched == full

    hypothesis = count >= n + 1
    rep = Report("pie")
    rep.values.update({"n": n, "N": count, "hypothesis_N_ge_n_plus_1": hypothesis,
                       "path_systems": len(systems), "systems_touching_all_boxes": all_boxes})
    rep.add("path matrix of the boxes digraph is the sum of all matrices",
            path_matrix(g, boxes.sources, boxes.sinks) == s.subset_sum(range(count)))

    restrict_ok = True
    det_ok = True
    per_ok = True
    pie_det = ring.zero(mode)
    pie_per = ring.zero(mode)
    for subset in nonempty_subsets(count):
        sub = frozenset(subset)
        target = s.subset_sum(subset)
        restricted = build_boxes_digraph(s, subset)
        restrict_ok &= path_matrix(restricted.graph, restricted.sources, restricted.sinks) == target
        g_signed = sum((v for t, v in f_signed.items() if t <= sub), ring.zero(mode))
        g_plain = sum((v for t, v in f_plain.items() if t <= sub), ring.zero(mode))
        d, p = _graph.det(target), _graph.per(target)
        det_ok &= g_signed == d
        per_ok &= g_plain == p
        if (count - len(subset)) % 2:
            pie_det, pie_per = pie_det - d, pie_per - p
        else:
            pie_det, pie_per = pie_det + d, pie_per + p
    rep.add("restricting crossings to boxes S gives path matrix sum_{t in S} A_t", restrict_ok)
    rep.add("systems confined to boxes S have signed weight det(sum_S A_t)", det_ok)
    rep.add("systems confined to boxes S have weight per(sum_S A_t)", per_ok)
    rep.add("inclusion-exclusion recovers the all-boxes class (det)", pie_det == f_signed[full],
            f"PIE = {pie_det}, direct = {f_signed[full]}")
    rep.add("inclusion-exclusion recovers the all-boxes class (per)", pie_per == f_plain[full],
            f"PIE = {pie_per}, direct = {f_plain[full]}")

    alt_det, alt_per = alternating_sum_det(s), alternating_sum_per(s)
    # PIE carries (-1)^(N-|S|); the odd-positive normalization differs by (-1)^(N-1).
    flip = 1 if (count - 1) % 2 == 0 else -1
    rep.add("PIE sum matches alternating_sum_det up to (-1)^(N-1)", pie_det == flip * alt_det)
    rep.add("PIE sum matches alternating_sum_per up to (-1)^(N-1)", pie_per == flip * alt_per)
    if hypothesis:
        rep.add("no path system touches every box", all_boxes == 0, f"{all_boxes} system(s)")
        rep.add("alternating determinant sum is zero", alt_det == 0, f"value = {alt_det}")
        rep.add("alternating permanent sum is zero", alt_per == 0, f"value = {alt_per}")
    rep.values.update({"alternating_det": alt_det, "alternating_per": alt_per,
                       "pie_det": pie_det, "pie_per": pie_per})
    return rep


def sumident_report(s: MatrixTuple, permanent: bool = False) -> Report:
    """Alternating sum under both sign conventions; zero asserted when N >= n+1."""
    fn = _graph.per if permanent else _graph.det
    name = "per" if permanent else "det"
    rep = Report(f"sumident-{name}")
    terms = []
    for subset in nonempty_subsets(s.count):
        terms.append({"subset": [t + 1 for t in subset],
                      "sign_odd_positive": 1 if len(subset) % 2 else -1,
                      name: fn(s.subset_sum(subset))})
    value = _alternating(s, fn)
    rep.values.update({
        "n": s.n,
        "N": s.count,
        "hypothesis_N_ge_n_plus_1": s.count >= s.n + 1,
        "terms": terms,
        "alternating_sum_odd_positive": value,
        "alternating_sum_even_positive": -value,
    })
    if s.count >= s.n + 1:
        rep.add(f"alternating {name} sum is zero", value == 0, f"value = {value}")
    return rep

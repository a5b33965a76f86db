"""The sign-reversing involution on (closed walk, linear subdigraph) pairs.

Walk along ``c`` from its start ``x``, looking at each vertex as it is reached
(the start itself at step 0).  The first event decides the move:

* the vertex ``y`` lies on a cycle ``g_y`` of ``gamma``: splice ``g_y`` (read
  from ``y``) into the walk at that point and drop it from ``gamma``;
* the vertex was already visited on this walk: cut out the cycle just
  completed and add it to ``gamma``.

Both moves change the number of cycles in ``gamma`` by one, so the pair weight
``(-1)^cycles * w(c) * w(gamma)`` flips sign.  Pairs where ``c`` is a simple
cycle disjoint from ``gamma`` have no move; they are the GOOD pairs.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from . import ring
from .errors import CapExceeded, InputError
from .graph import WeightedDigraph
from .report import Report
from .ring import Weight
from .walks import (
    ClosedWalk,
    Cycle,
    LinearSubdigraph,
    enumerate_closed_walks,
    enumerate_linear_subdigraphs,
    linear_sub_signed_sum,
    newton_residual,
)

GOOD = "GOOD"
BAD = "BAD"
SHARES_VERTEX = "SHARES_VERTEX"
NOT_SIMPLE = "NOT_SIMPLE"

MAX_VERTICES = 4
MAX_LENGTH = 6


@dataclass(frozen=True)
class WalkCyclePair:
    walk: ClosedWalk
    sub: LinearSubdigraph

    def __len__(self) -> int:
        return len(self.walk) + len(self.sub)

    def weight(self, g: WeightedDigraph) -> Weight:
        w = self.walk.weight(g) * self.sub.weight(g)
        return -w if self.sub.cycle_count % 2 else w

    def describe(self) -> str:
        cycles = ", ".join(str(list(c.edges)) for c in self.sub.cycles)
        return f"(walk from {self.walk.start} via {list(self.walk.edges)}; cycles [{cycles}])"


@dataclass(frozen=True)
class PairClass:
    label: str
    reason: str | None = None


def _first_event(p: WalkCyclePair) -> tuple:
    """``("meet", i)`` or ``("cycle", i, j)`` with ``vertex[i] == vertex[j]``."""
    verts = p.walk.vertices
    in_sub = p.sub.vertex_set
    seen: dict[int, int] = {}
    for idx in range(len(verts) + 1):
        v = verts[idx] if idx < len(verts) else p.walk.start
        if v in in_sub:
            return ("meet", idx)
        if v in seen:
            return ("cycle", seen[v], idx)
        seen[v] = idx
    raise AssertionError("a closed walk always revisits its start")


def classify(p: WalkCyclePair) -> PairClass:
    """GOOD iff the walk is a simple cycle sharing no vertex with the subdigraph.

    A BAD pair's reason names the move the involution makes on it.
    """
    event = _first_event(p)
    if event[0] == "meet":
        return PairClass(BAD, SHARES_VERTEX)
    _, i, j = event
    if i == 0 and j == len(p.walk):
        return PairClass(GOOD)
    return PairClass(BAD, NOT_SIMPLE)


def involution_step(p: WalkCyclePair) -> WalkCyclePair:
    event = _first_event(p)
    walk = p.walk
    if event[0] == "meet":
        m = event[1]
        cycle = p.sub.cycle_through(walk.vertices[m])
        c_edges, c_verts = cycle.rotated_to(walk.vertices[m])
        new_walk = ClosedWalk(
            walk.start,
            walk.edges[:m] + c_edges + walk.edges[m:],
            walk.vertices[:m] + c_verts + walk.vertices[m:],
        )
        return WalkCyclePair(new_walk, p.sub.without(cycle))
    _, i, j = event
    if i == 0 and j == len(walk):
        raise InputError("involution_step is undefined on GOOD pairs")
    cut = Cycle.canonical(walk.edges[i:j], walk.vertices[i:j])
    new_walk = ClosedWalk(
        walk.start,
        walk.edges[:i] + walk.edges[j:],
        walk.vertices[:i] + walk.vertices[j:],
    )
    return WalkCyclePair(new_walk, p.sub.adding(cut))


def good_members_of(gamma: LinearSubdigraph) -> list[WalkCyclePair]:
    """One GOOD pair per vertex ``v`` of ``gamma``.

    The pair reads the cycle through ``v`` as a closed walk from ``v`` and
    keeps the remaining cycles.  Their weights sum to
    ``r * (-1)^(c(gamma) - 1) * w(gamma)`` with ``r = len(gamma)``.
    """
    out = []
    for v in sorted(gamma.vertex_set):
        cycle = gamma.cycle_through(v)
        edges, verts = cycle.rotated_to(v)
        out.append(WalkCyclePair(ClosedWalk(v, edges, verts), gamma.without(cycle)))
    return out


def enumerate_pairs(g: WeightedDigraph, r: int) -> list[WalkCyclePair]:
    """Every pair with ``len(walk) >= 1`` and ``len(walk) + len(sub) == r``."""
    if g.n > MAX_VERTICES or r > MAX_LENGTH:
        raise CapExceeded(f"pair enumeration is capped at n <= {MAX_VERTICES}, r <= {MAX_LENGTH}")
    if r < 1:
        raise InputError("r must be >= 1")
    pairs = []
    for k in range(r):
        subs = enumerate_linear_subdigraphs(g, k)
        if not subs:
            continue
        for walk in enumerate_closed_walks(g, r - k):
            for sub in subs:
                pairs.append(WalkCyclePair(walk, sub))
    return pairs


def verify_theorem_proof(g: WeightedDigraph, r: int, max_examples: int = 5) -> Report:
    """Exhaustively check every claim the cancellation argument relies on.

    Failures are recorded with up to ``max_examples`` offending pairs each;
    nothing is patched up.
    """
    pairs = enumerate_pairs(g, r)
    pair_set = set(pairs)
    n = g.n
    mode = g.mode
    rep = Report("involution")

    weights = {p: p.weight(g) for p in pairs}
    good = [p for p in pairs if classify(p).label == GOOD]
    bad = [p for p in pairs if classify(p).label == BAD]
    reasons: dict[str, int] = defaultdict(int)
    for p in bad:
        reasons[classify(p).reason] += 1

    problems: dict[str, list[str]] = defaultdict(list)
    for p in bad:
        q = involution_step(p)
        if q not in pair_set:
            problems["image is a valid pair of the same length"].append(p.describe())
            continue
        if classify(q).label != BAD:
            problems["image is BAD"].append(p.describe())
        if q == p:
            problems["no fixed points"].append(p.describe())
        if weights[q] != -weights[p]:
            problems["weight is negated"].append(p.describe())
        back = involution_step(q) if classify(q).label == BAD else None
        if back != p:
            problems["applying twice is the identity"].append(p.describe())
    for name in ("image is a valid pair of the same length", "image is BAD", "no fixed points",
                 "weight is negated", "applying twice is the identity"):
        found = problems.get(name, [])
        detail = "; ".join(found[:max_examples])
        rep.add(f"BAD pairs: {name}", not found,
                f"{len(found)} counterexample(s): {detail}" if found else f"{len(bad)} BAD pairs")

    total = sum((weights[p] for p in pairs), ring.zero(mode))
    good_total = sum((weights[p] for p in good), ring.zero(mode))
    rep.add("BAD weights cancel", total == good_total, f"sum(all) = {total}, sum(GOOD) = {good_total}")

    if r > n:
        rep.add("every pair is BAD when r > n", not good, f"{len(good)} GOOD pair(s)")
        l_r = ring.zero(mode)
    else:
        l_r = linear_sub_signed_sum(g, r)
        gammas = enumerate_linear_subdigraphs(g, r)
        expected: list[WalkCyclePair] = []
        counts_ok = True
        sums_ok = True
        for gamma in gammas:
            members = good_members_of(gamma)
            counts_ok &= len(members) == r
            member_sum = sum((m.weight(g) for m in members), ring.zero(mode))
            sign = 1 if (gamma.cycle_count - 1) % 2 == 0 else -1
            sums_ok &= member_sum == sign * r * gamma.weight(g)
            expected.extend(members)
        rep.add("each length-r linear subdigraph has exactly r GOOD members", counts_ok,
                f"{len(gammas)} subdigraph(s)")
        rep.add("GOOD pairs are exactly the members of length-r subdigraphs",
                len(expected) == len(set(expected)) and set(expected) == set(good),
                f"{len(good)} GOOD pair(s), {len(expected)} member(s)")
        rep.add("members of each subdigraph weigh r*(-1)^(c-1)*w", sums_ok)
        rep.add("GOOD weight + r*l_r == 0", good_total + r * l_r == 0,
                f"GOOD weight = {good_total}, r*l_r = {r * l_r}")

    residual = newton_residual(g, r)
    lhs = total + r * l_r if r <= n else total
    rep.add("pair sum matches the Newton-Girard left-hand side", lhs == residual,
            f"from pairs = {lhs}, from c_r/l_r = {residual}")

    rep.values.update({
        "r": r,
        "n": n,
        "pairs": len(pairs),
        "bad": len(bad),
        "bad_shares_vertex": reasons.get(SHARES_VERTEX, 0),
        "bad_not_simple": reasons.get(NOT_SIMPLE, 0),
        "good": len(good),
        "weight_all": total,
        "weight_good": good_total,
    })
    if r <= n:
        rep.values["l_r"] = l_r
    return rep

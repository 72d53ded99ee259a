"""Meanders of seaweed types and the combinatorial index formulas.

A meander on v vertices carries nested top arcs within each top block
(first vertex to last, second to second-to-last, ...) and likewise nested
bottom arcs.  Its connected components are cycles, paths and isolated
points; the index of the seaweed is read off from them:

  gl : 2 * cycles + paths                (isolated points count as paths)
  A  : 2 * cycles + paths - 1
  B/C: 2 * cycles + paths with zero or two endpoints in the tail of the
       shortened meander; an isolated point inside the tail counts as
       having one endpoint there, an isolated point elsewhere as zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import GL, TYPE_A, TYPE_B, TYPE_C, Composition, SeaweedSpec, _block_bounds

Arc = tuple[int, int]


@dataclass(frozen=True)
class MeanderComponent:
    kind: str  # "cycle" | "path" | "isolated"
    vertices: tuple[int, ...]  # in walk order (cycles start at their minimum)
    endpoints: tuple[int, ...]  # () for cycles, (a, b) for paths, (v,) isolated


@dataclass(frozen=True)
class Meander:
    v: int
    top: frozenset[Arc]
    bottom: frozenset[Arc]
    components: tuple[MeanderComponent, ...]

    @property
    def cycles(self) -> int:
        return sum(1 for c in self.components if c.kind == "cycle")

    @property
    def paths(self) -> int:
        """Paths including isolated points."""
        return sum(1 for c in self.components if c.kind != "cycle")


@dataclass(frozen=True)
class TailData:
    """Leftover-vertex bookkeeping of a shortened B/C meander."""

    t_a: frozenset[int]
    t_b: frozenset[int]
    tail: frozenset[int]
    aftertail: frozenset[int]


def block_arcs(parts: Composition) -> frozenset[Arc]:
    arcs = set()
    for s, e in _block_bounds(parts):
        lo, hi = s, e
        while lo < hi:
            arcs.add((lo, hi))
            lo += 1
            hi -= 1
    return frozenset(arcs)


def _walk(start: int, side: str, tp: dict[int, int], bt: dict[int, int]) -> list[int]:
    order = [start]
    cur, use_top = start, side == "top"
    while True:
        partner = (tp if use_top else bt).get(cur)
        if partner is None or (len(order) > 1 and partner == order[0]):
            break
        order.append(partner)
        cur = partner
        use_top = not use_top
    return order


def classify_components(v: int, top: frozenset[Arc], bottom: frozenset[Arc]) -> tuple[MeanderComponent, ...]:
    tp: dict[int, int] = {}
    bt: dict[int, int] = {}
    for (a, b) in top:
        tp[a], tp[b] = b, a
    for (a, b) in bottom:
        bt[a], bt[b] = b, a
    seen: set[int] = set()
    comps = []
    for s in range(1, v + 1):
        if s in seen:
            continue
        stack, members = [s], {s}
        while stack:
            u = stack.pop()
            for partner in (tp.get(u), bt.get(u)):
                if partner is not None and partner not in members:
                    members.add(partner)
                    stack.append(partner)
        seen |= members
        degree = {u: (u in tp) + (u in bt) for u in members}
        ends = sorted(u for u in members if degree[u] <= 1)
        if len(members) == 1:
            comps.append(MeanderComponent("isolated", (s,), (s,)))
            continue
        if not ends:
            start = min(members)
            order = _walk(start, "top" if start in tp else "bottom", tp, bt)
            comps.append(MeanderComponent("cycle", tuple(order), ()))
        else:
            if len(ends) != 2:
                raise AssertionError(f"component {sorted(members)} has {len(ends)} endpoints")
            start = ends[0]
            order = _walk(start, "top" if start in tp else "bottom", tp, bt)
            comps.append(MeanderComponent("path", tuple(order), (order[0], order[-1])))
    comps.sort(key=lambda c: min(c.vertices))
    return tuple(comps)


@lru_cache(maxsize=8192)
def meander_of_type(top: Composition, bottom: Composition) -> Meander:
    if sum(top) != sum(bottom):
        raise ValueError(f"composition totals differ: {top} vs {bottom}")
    v = sum(top)
    ta, ba = block_arcs(top), block_arcs(bottom)
    return Meander(v, ta, ba, classify_components(v, ta, ba))


def build_meander(spec: SeaweedSpec) -> Meander:
    """Meander of a gl or type-A spec (full compositions)."""
    if spec.family not in (GL, TYPE_A):
        raise ValueError("build_meander expects gl/A; use build_shortened_meander or build_full_meander")
    return meander_of_type(spec.top, spec.bottom)


def build_shortened_meander(spec: SeaweedSpec) -> tuple[Meander, TailData]:
    """The n-vertex meander of a B/C spec, with tail and aftertail sets.

    Arcs are drawn from the partial compositions only.  T_a (resp. T_b)
    collects the vertices beyond the top (resp. bottom) partial total; the
    tail is their symmetric difference and the aftertail the intersection.
    """
    if spec.family not in (TYPE_B, TYPE_C):
        raise ValueError("shortened meanders exist only for B/C")
    n = spec.n
    ta, ba = block_arcs(spec.top), block_arcs(spec.bottom)
    m = Meander(n, ta, ba, classify_components(n, ta, ba))
    t_a = frozenset(range(sum(spec.top) + 1, n + 1))
    t_b = frozenset(range(sum(spec.bottom) + 1, n + 1))
    return m, TailData(t_a, t_b, (t_a | t_b) - (t_a & t_b), t_a & t_b)


def build_full_meander(spec: SeaweedSpec) -> Meander:
    """The meander of the mirrored full compositions (2n or 2n+1 vertices)."""
    if spec.family not in (TYPE_B, TYPE_C):
        raise ValueError("full meanders are the B/C mirrored picture; use build_meander for gl/A")
    top, bottom = spec.full_type()
    return meander_of_type(top, bottom)


def tail_blocks(spec: SeaweedSpec) -> tuple[tuple[int, int], tuple[int, int]]:
    """Inclusive index ranges (start, end) of the tail and aftertail on the diagonal.

    Either range may be empty, signalled by start > end.
    """
    lo, hi = sorted((sum(spec.top), sum(spec.bottom)))
    return (lo + 1, hi), (hi + 1, spec.n)


def index(spec: SeaweedSpec) -> int:
    """The index of the seaweed, by the component count of its meander."""
    if spec.family in (GL, TYPE_A):
        m = build_meander(spec)
        ind = 2 * m.cycles + m.paths
        return ind - 1 if spec.family == TYPE_A else ind
    m, tails = build_shortened_meander(spec)
    counted = 0
    for comp in m.components:
        if comp.kind == "cycle":
            counted += 2
        elif comp.kind == "isolated":
            # one endpoint when inside the tail, zero otherwise
            if comp.vertices[0] not in tails.tail:
                counted += 1
        else:
            k = sum(1 for e in comp.endpoints if e in tails.tail)
            if k in (0, 2):
                counted += 1
    return counted

"""Configurations, cores, parity partitions and peak sets.

Visualized inside the matrix, a top arc (v_i, v_j) of the meander covers the
L-shaped path (i,i) -> (j,i) -> (j,j) and a bottom arc the path
(i,i) -> (i,j) -> (j,j).  The configuration of a homotopy component is the
set of positions covered by the arcs of its meander components, plus the
diagonal positions of its vertices; together the configurations tile the
admissible staircase.

On the component meander CM(g), the vertices along a component's path give
the square core blocks A_j x A_j on the diagonal.  Orienting CM
counter-clockwise (top arcs right-to-left, bottom arcs left-to-right), each
directed edge (A_I, A_J) contributes the peak block with rows A_I and
columns A_J.  The path vertices split into two parity classes measured from
an anchor endpoint; the classes drive the rotation choices when embedding
functionals.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import GL, TYPE_A, SeaweedSpec
from .meander import Meander
from .winding import Decomposition, decompose

Block = tuple[int, int]  # inclusive vertex/index range


@dataclass(frozen=True)
class Configuration:
    component_id: int
    size: int
    positions: frozenset[tuple[int, int]]


@dataclass(frozen=True)
class Peak:
    """Directed peak block: rows from the source run, columns from the target."""

    rows: Block
    cols: Block
    side: str  # "top" | "bottom" (the CM edge that produced it)


@dataclass(frozen=True)
class ComponentCore:
    component_id: int
    size: int
    path_runs: tuple[Block, ...]  # A_j along the CM path, in walk order
    part_a: tuple[Block, ...]  # odd distance from the anchor
    part_b: tuple[Block, ...]  # even distance (contains the anchor)
    peaks: tuple[Peak, ...]

    @property
    def core_blocks(self) -> tuple[Block, ...]:
        return self.path_runs


@dataclass(frozen=True)
class CoreData:
    spec: SeaweedSpec
    components: tuple[ComponentCore, ...]

    def all_peaks(self) -> list[tuple[int, Peak]]:
        """(component_id, peak) pairs in deterministic global order."""
        out = []
        for comp in self.components:
            out.extend((comp.component_id, pk) for pk in comp.peaks)
        return out


def _decomposition(spec: SeaweedSpec) -> Decomposition:
    top, bottom = spec.full_type()
    return decompose(top, bottom)


def _arc_cover(arc: tuple[int, int], side: str) -> set[tuple[int, int]]:
    i, j = min(arc), max(arc)
    if side == "top":
        return {(r, i) for r in range(i, j + 1)} | {(j, c) for c in range(i, j + 1)}
    return {(i, c) for c in range(i, j + 1)} | {(r, j) for r in range(i, j + 1)}


def configurations(spec: SeaweedSpec) -> list[Configuration]:
    """Per-homotopy-component covered position sets.

    For B/C specs this works on the full mirrored meander, so the union is
    the full staircase of the mirrored type (for type B that includes the
    antidiagonal positions that the algebra itself forces to zero).
    """
    dec = _decomposition(spec)
    m: Meander = dec.meander
    out = []
    for cls in dec.classes:
        covered: set[tuple[int, int]] = set()
        for ci in cls.members:
            comp = m.components[ci]
            verts = set(comp.vertices)
            covered.update((v, v) for v in verts)
            for arc in m.top:
                if arc[0] in verts:
                    covered |= _arc_cover(arc, "top")
            for arc in m.bottom:
                if arc[0] in verts:
                    covered |= _arc_cover(arc, "bottom")
        out.append(Configuration(cls.class_id, cls.size, frozenset(covered)))
    return out


def core_and_peaks(spec: SeaweedSpec) -> CoreData:
    """Core blocks, parity partition and oriented peak blocks per component.

    The anchor of each path is the endpoint whose index set starts lowest,
    making the partition deterministic.
    """
    dec = _decomposition(spec)
    cm = dec.cm
    edge_side = {}
    for (a, b) in cm.cm.top:
        edge_side[(min(a, b), max(a, b))] = "top"
    for (a, b) in cm.cm.bottom:
        edge_side[(min(a, b), max(a, b))] = "bottom"

    comps = []
    for cls in dec.classes:
        walk = list(cls.cm_vertices)
        if walk and walk[-1] < walk[0]:
            walk.reverse()
        runs = tuple(cm.index_sets[v - 1] for v in walk)
        # Anchor at the path vertex whose index set starts lowest; parity of
        # the distance to it splits the blocks into the two rotation classes.
        anchor = min(range(len(walk)), key=lambda k: runs[k][0])
        part_b = tuple(runs[k] for k in range(len(runs)) if (k - anchor) % 2 == 0)
        part_a = tuple(runs[k] for k in range(len(runs)) if (k - anchor) % 2 == 1)
        peaks = []
        for k in range(len(walk) - 1):
            u, w = walk[k], walk[k + 1]
            side = edge_side[(min(u, w), max(u, w))]
            left, right = (u, w) if u < w else (w, u)
            src, dst = (right, left) if side == "top" else (left, right)
            peaks.append(
                Peak(rows=cm.index_sets[src - 1], cols=cm.index_sets[dst - 1], side=side)
            )
        comps.append(
            ComponentCore(
                component_id=cls.class_id,
                size=cls.size,
                path_runs=runs,
                part_a=part_a,
                part_b=part_b,
                peaks=tuple(peaks),
            )
        )
    return CoreData(spec=spec, components=tuple(comps))

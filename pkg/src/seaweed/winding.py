"""Winding-down moves, signatures, homotopy types and component meanders.

Every meander type reduces to the empty type through a deterministic
sequence of moves on the leading blocks (a = top head, b = bottom head):

  F     a < b        swap top and bottom
  C(c)  a = b = c    drop both heads (deletes a component of size c)
  R     b < a < 2b   heads become b / 2b - a
  Bl    a = 2b       heads become b / (drop)
  P     a > 2b       top head splits into (a - 2b) | b

The move list is the signature; the C-move sizes, in order, form the
homotopy type H(c_1, ..., c_h), and the index of a gl seaweed is their sum.
Replaying a signature with all component deletions shrunk to size one and
inverting it builds the component meander CM, whose vertices are blocks of
consecutive vertices of the original meander (the index sets A_j).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .algebra import GL, TYPE_A, TYPE_B, TYPE_C, Composition, SeaweedSpec
from .meander import (
    Meander,
    build_full_meander,
    classify_components,
    meander_of_type,
    tail_blocks,
)

Type = tuple[Composition, Composition]

PLAIN, TAIL, AFTERTAIL = "plain", "tail", "aftertail"


@dataclass(frozen=True)
class Move:
    kind: str  # "F" | "B" | "R" | "P" | "C"
    size: int | None = None

    def __str__(self) -> str:
        return f"C({self.size})" if self.kind == "C" else self.kind


Signature = tuple[Move, ...]


def signature_str(sig: Signature) -> str:
    return "".join(str(m) for m in sig)


_MOVE_RE = re.compile(r"Bl|B|F|R|P|C\((\d+)\)")


def parse_signature(text: str) -> Signature:
    moves, pos = [], 0
    for m in _MOVE_RE.finditer(text):
        if m.start() != pos:
            raise ValueError(f"bad signature text {text!r} at offset {pos}")
        tok = m.group(0)
        if tok.startswith("C"):
            moves.append(Move("C", int(m.group(1))))
        elif tok in ("B", "Bl"):
            moves.append(Move("B"))
        else:
            moves.append(Move(tok))
        pos = m.end()
    if pos != len(text.strip()):
        raise ValueError(f"bad signature text {text!r}")
    return tuple(moves)


def wind_down_step(t: Type) -> tuple[Move, Type]:
    """Apply the unique applicable move to a nonempty type."""
    top, bottom = t
    if not top or not bottom:
        raise ValueError("cannot wind down an empty type")
    a, b = top[0], bottom[0]
    if a < b:
        return Move("F"), (bottom, top)
    if a == b:
        return Move("C", a), (top[1:], bottom[1:])
    if a < 2 * b:
        return Move("R"), ((b,) + top[1:], (2 * b - a,) + bottom[1:])
    if a == 2 * b:
        return Move("B"), ((b,) + top[1:], bottom[1:])
    return Move("P"), ((a - 2 * b, b) + top[1:], bottom[1:])


@lru_cache(maxsize=8192)
def signature_of_type(top: Composition, bottom: Composition) -> Signature:
    if sum(top) != sum(bottom):
        raise ValueError(f"composition totals differ: {top} vs {bottom}")
    t: Type = (top, bottom)
    moves = []
    while t[0] or t[1]:
        move, t = wind_down_step(t)
        moves.append(move)
    return tuple(moves)


def _inverse_step(move: Move, t: Type) -> Type:
    """Undo one winding-down move (winding-up)."""
    top, bottom = t
    if move.kind == "C":
        return ((move.size,) + top, (move.size,) + bottom)
    if move.kind == "F":
        return (bottom, top)
    if move.kind == "B":
        if not top:
            raise ValueError("cannot invert Bl on an empty top")
        return ((2 * top[0],) + top[1:], (top[0],) + bottom)
    if move.kind == "R":
        if not top or not bottom or not bottom[0] < top[0]:
            raise ValueError(f"cannot invert R at {t}")
        return ((2 * top[0] - bottom[0],) + top[1:], (top[0],) + bottom[1:])
    if move.kind == "P":
        if len(top) < 2:
            raise ValueError(f"cannot invert P at {t}")
        return ((top[0] + 2 * top[1],) + top[2:], (top[1],) + bottom)
    raise ValueError(f"unknown move {move}")


def wind_up(sig: Signature) -> Type:
    """Rebuild the type whose signature is ``sig`` from the empty type."""
    t: Type = ((), ())
    for move in reversed(sig):
        t = _inverse_step(move, t)
        redo, _ = wind_down_step(t)
        if redo != move:
            raise AssertionError(f"inverse of {move} not undone by winding down at {t}")
    return t


def signature(spec_or_type: SeaweedSpec | Type) -> Signature:
    """Signature of a gl/A spec, of a raw type, or of a B/C reduced meander."""
    if isinstance(spec_or_type, SeaweedSpec):
        spec = spec_or_type
        if spec.family in (GL, TYPE_A):
            return signature_of_type(spec.top, spec.bottom)
        top, bottom = reduced_meander_type(spec)
        return signature_of_type(top, bottom)
    top, bottom = spec_or_type
    return signature_of_type(tuple(top), tuple(bottom))


@dataclass(frozen=True)
class HomotopyType:
    sizes: tuple[int, ...]
    colors: tuple[str, ...] | None = None  # per size: plain / tail / aftertail

    def __str__(self) -> str:
        if self.colors is None:
            return "H(" + ",".join(str(c) for c in self.sizes) + ")"
        marks = {PLAIN: "", TAIL: "t", AFTERTAIL: "a"}
        body = ",".join(f"{c}{marks[col]}" for c, col in zip(self.sizes, self.colors))
        return f"H_C({body})"


def homotopy_type(sig: Signature) -> HomotopyType:
    return HomotopyType(tuple(m.size for m in sig if m.kind == "C"))


def index_from_homotopy(h: HomotopyType, family: str = GL) -> int:
    """Index from a homotopy type; B/C require the colored (reduced) form."""
    if family in (GL, TYPE_A):
        total = sum(h.sizes)
        return total - 1 if family == TYPE_A else total
    if h.colors is None:
        raise ValueError("B/C index needs a colored (reduced) homotopy type")
    total = 0
    for c, color in zip(h.sizes, h.colors):
        if color == PLAIN:
            total += c
        elif color == TAIL:
            total += c // 2
        elif family == TYPE_C:
            if c % 2:
                raise ValueError(f"type-C aftertail component must be even, got {c}")
            total += c // 2
        else:
            if c % 2 == 0:
                raise ValueError(f"type-B aftertail component must be odd, got {c}")
            total += (c - 1) // 2
    return total


@dataclass(frozen=True)
class HomotopyClass:
    """One homotopy component of a meander, resolved against CM(g).

    ``cm_vertices`` lists the CM vertices of its path in walk order;
    ``runs`` are the index sets A_j (inclusive vertex ranges of the big
    meander) for every CM vertex, and ``members`` the connected components
    of the big meander that make up the class.
    """

    class_id: int
    size: int
    cm_vertices: tuple[int, ...]
    members: tuple[int, ...]  # indices into meander.components


@dataclass(frozen=True)
class ComponentMeander:
    cm: Meander
    index_sets: tuple[tuple[int, int], ...]  # A_j as inclusive ranges, per CM vertex
    component_of: tuple[int, ...]  # class id per CM vertex
    sizes: tuple[int, ...]  # block size per CM vertex


@dataclass(frozen=True)
class Decomposition:
    meander: Meander
    sig: Signature
    cm: ComponentMeander
    classes: tuple[HomotopyClass, ...]

    def run(self, cm_vertex: int) -> tuple[int, int]:
        return self.cm.index_sets[cm_vertex - 1]


def _run_quotient(m: Meander, runs: list[tuple[int, int]]) -> tuple[dict, dict] | None:
    """Map arcs of ``m`` through consecutive runs; None when a run boundary splits nothing...

    Returns (top_counts, bottom_counts) of arcs between distinct runs, keyed
    by (run_a, run_b) with run indices 1-based.
    """
    run_of = {}
    for k, (s, e) in enumerate(runs, start=1):
        for v in range(s, e + 1):
            run_of[v] = k
    from collections import Counter

    top, bottom = Counter(), Counter()
    for (a, b) in m.top:
        ra, rb = run_of[a], run_of[b]
        if ra != rb:
            top[(min(ra, rb), max(ra, rb))] += 1
    for (a, b) in m.bottom:
        ra, rb = run_of[a], run_of[b]
        if ra != rb:
            bottom[(min(ra, rb), max(ra, rb))] += 1
    return top, bottom


@lru_cache(maxsize=4096)
def decompose(top: Composition, bottom: Composition) -> Decomposition:
    """Resolve a meander type into homotopy classes with their A_j index sets.

    The component meander is wound up from the signature with all component
    deletions shrunk to size one; its connected components must be paths.
    Each path carries one homotopy size c, and the A_j are consecutive runs
    of that length.  The assignment of sizes to paths is pinned down by
    requiring that merging the runs of the big meander reproduces CM exactly
    (every CM arc lifts to c parallel arcs).
    """
    m = meander_of_type(top, bottom)
    sig = signature_of_type(top, bottom)
    sizes = [mv.size for mv in sig if mv.kind == "C"]
    cm_sig = tuple(Move("C", 1) if mv.kind == "C" else mv for mv in sig)
    cm_top, cm_bottom = wind_up(cm_sig)
    cm_meander = meander_of_type(cm_top, cm_bottom)
    paths = cm_meander.components
    if any(p.kind == "cycle" for p in paths):
        raise NotImplementedError(f"component meander of {top}/{bottom} contains a cycle")
    if len(paths) != len(sizes):
        raise AssertionError("component meander path count differs from component deletions")

    from collections import Counter

    path_of_vertex = {}
    for k, p in enumerate(paths):
        for v in p.vertices:
            path_of_vertex[v] = k

    def try_assignment(assign: tuple[int, ...]) -> tuple[tuple[int, int], ...] | None:
        vertex_sizes = [assign[path_of_vertex[v]] for v in range(1, cm_meander.v + 1)]
        if sum(vertex_sizes) != m.v:
            return None
        runs, start = [], 1
        for c in vertex_sizes:
            runs.append((start, start + c - 1))
            start += c
        expected_top: Counter = Counter()
        expected_bottom: Counter = Counter()
        for (a, b) in cm_meander.top:
            expected_top[(min(a, b), max(a, b))] = assign[path_of_vertex[a]]
        for (a, b) in cm_meander.bottom:
            expected_bottom[(min(a, b), max(a, b))] = assign[path_of_vertex[a]]
        qt, qb = _run_quotient(m, runs)
        if qt != expected_top or qb != expected_bottom:
            return None
        return tuple(runs)

    solutions = {}
    for perm in set(permutations(sizes)):
        runs = try_assignment(perm)
        if runs is not None:
            solutions[perm] = runs
    if not solutions:
        raise AssertionError(f"no consistent component-size assignment for {top}/{bottom}")
    if len({v for v in solutions.values()}) != 1:
        raise AssertionError(f"ambiguous component-size assignment for {top}/{bottom}")
    assign, runs = next(iter(solutions.items()))

    run_of = {}
    for k, (s, e) in enumerate(runs, start=1):
        for v in range(s, e + 1):
            run_of[v] = k

    classes = []
    member_lists: dict[int, set[int]] = {k: set() for k in range(len(paths))}
    for ci, comp in enumerate(m.components):
        owners = {path_of_vertex[run_of[v]] for v in comp.vertices}
        if len(owners) != 1:
            raise AssertionError("meander component straddles two homotopy classes")
        member_lists[owners.pop()].add(ci)
    for k, p in enumerate(paths):
        classes.append(
            HomotopyClass(
                class_id=k,
                size=assign[k],
                cm_vertices=p.vertices,
                members=tuple(sorted(member_lists[k])),
            )
        )
    cm = ComponentMeander(
        cm=cm_meander,
        index_sets=runs,
        component_of=tuple(path_of_vertex[v] for v in range(1, cm_meander.v + 1)),
        sizes=tuple(assign[path_of_vertex[v]] for v in range(1, cm_meander.v + 1)),
    )
    return Decomposition(meander=m, sig=sig, cm=cm, classes=tuple(classes))


def component_meander(spec: SeaweedSpec) -> ComponentMeander:
    """CM(g) with its merged index sets, for gl and type-A seaweeds."""
    if spec.family not in (GL, TYPE_A):
        raise ValueError("component meanders are built for gl/A types")
    return decompose(spec.top, spec.bottom).cm


def _infer_blocks(v: int, arcs: frozenset[tuple[int, int]]) -> Composition:
    """Recover the composition whose nested block arcs are exactly ``arcs``."""
    partner = {}
    for (a, b) in arcs:
        partner[a], partner[b] = b, a
    parts = []
    p = 1
    while p <= v:
        q = partner.get(p)
        if q is None:
            parts.append(1)
            p += 1
            continue
        if q < p:
            raise AssertionError("arc diagram is not a union of nested blocks")
        size = q - p + 1
        for k in range(size // 2):
            if partner.get(p + k) != q - k:
                raise AssertionError("arc diagram is not a union of nested blocks")
        if size % 2 and (p + size // 2) in partner:
            raise AssertionError("odd block center carries an arc")
        parts.append(size)
        p = q + 1
    return tuple(parts)


@dataclass(frozen=True)
class ReducedMeander:
    """The colored, pruned full meander of a B/C seaweed."""

    top: Composition
    bottom: Composition
    meander: Meander
    color_of_class: tuple[str, ...]  # aligned with decompose(top, bottom).classes


@lru_cache(maxsize=2048)
def reduced_meander(spec: SeaweedSpec) -> ReducedMeander:
    """Prune a full B/C meander to its colored core.

    Components of the full meander are colored by what they touch in the
    shortened picture (tail vertices blue, aftertail vertices red, the type-B
    center vertex red whenever an aftertail exists).  Vertices right of v_n
    belonging to uncolored components are deleted and the rest renumbered;
    the result is again a meander of a well-defined type.
    """
    if spec.family not in (TYPE_B, TYPE_C):
        raise ValueError("reduced meanders exist only for B/C")
    m = build_full_meander(spec)
    n, size = spec.n, spec.size
    (tail_lo, tail_hi), (after_lo, after_hi) = tail_blocks(spec)
    tail = set(range(tail_lo, tail_hi + 1))
    aftertail = set(range(after_lo, after_hi + 1))
    mirror = lambda v: size + 1 - v

    color_of_vertex: dict[int, str] = {}
    for comp in m.components:
        verts = set(comp.vertices)
        if verts & aftertail or {mirror(v) for v in verts} & aftertail:
            color = AFTERTAIL
        elif verts & tail or {mirror(v) for v in verts} & tail:
            color = TAIL
        else:
            color = PLAIN
        for v in verts:
            color_of_vertex[v] = color
    if spec.family == TYPE_B and aftertail:
        color_of_vertex[n + 1] = AFTERTAIL  # isolated center joins the nested cycles

    keep = [v for v in range(1, size + 1) if v <= n or color_of_vertex[v] != PLAIN]
    keep_set = set(keep)
    relabel = {v: k for k, v in enumerate(keep, start=1)}
    new_top = frozenset((relabel[a], relabel[b]) for (a, b) in m.top if a in keep_set and b in keep_set)
    new_bottom = frozenset(
        (relabel[a], relabel[b]) for (a, b) in m.bottom if a in keep_set and b in keep_set
    )
    for (a, b) in m.top | m.bottom:
        if (a in keep_set) != (b in keep_set):
            raise AssertionError("pruning split an arc; uncolored component crossed the center")
    v_new = len(keep)
    top = _infer_blocks(v_new, new_top)
    bottom = _infer_blocks(v_new, new_bottom)

    dec = decompose(top, bottom)
    colors = []
    for cls in dec.classes:
        verts = set()
        for ci in cls.members:
            verts |= set(dec.meander.components[ci].vertices)
        original = {keep[v - 1] for v in verts}
        cols = {color_of_vertex[v] for v in original}
        if len(cols) != 1:
            raise AssertionError("homotopy class mixes colors")
        colors.append(cols.pop())
    return ReducedMeander(top=top, bottom=bottom, meander=dec.meander, color_of_class=tuple(colors))


def reduced_meander_type(spec: SeaweedSpec) -> Type:
    r = reduced_meander(spec)
    return (r.top, r.bottom)


def reduced_homotopy_type(spec: SeaweedSpec) -> HomotopyType:
    """Colored homotopy type of a B/C seaweed.

    Sizes are listed plain first, then tail, then aftertail, each group
    ordered by the smallest vertex of the class in the reduced meander.
    """
    r = reduced_meander(spec)
    dec = decompose(r.top, r.bottom)
    keyed = []
    rank = {PLAIN: 0, TAIL: 1, AFTERTAIL: 2}
    for cls, color in zip(dec.classes, r.color_of_class):
        first_vertex = min(
            min(dec.meander.components[ci].vertices) for ci in cls.members
        )
        keyed.append((rank[color], first_vertex, cls.size, color))
    keyed.sort()
    return HomotopyType(tuple(k[2] for k in keyed), tuple(k[3] for k in keyed))

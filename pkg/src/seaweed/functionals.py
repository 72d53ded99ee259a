"""Explicit functionals on gl(c) and their embeddings into seaweeds.

The triangular functional ``F`` on gl(n) is the sum of the coordinate
functionals e*_{i,j} over the closed staircase i + j <= n + 1.  Seven
variants (G, H, K and their primed forms, plus F') trim its border in ways
that stay regular; all eight are produced by :func:`base_functional`.

A functional on a whole seaweed is assembled component by component: the
chosen base functional is copied into every core block A_j x A_j (rotated
180 degrees inside the block on one parity class when a peak uses the
antidiagonal convention), and each peak block receives coefficient-1
entries along its main diagonal or antidiagonal according to the peak
policy.  The B/C constructions additionally halve the block functional on
tail components, shift a copy into the aftertail block, keep only entries
on or above the matrix antidiagonal, and (for B) reroute the forbidden
antidiagonal entries of odd tail components through the center column.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    GL,
    TYPE_A,
    TYPE_B,
    TYPE_C,
    SeaweedSpec,
    admissible_positions,
)
from .configuration import ComponentCore, CoreData, Peak, core_and_peaks
from .meander import tail_blocks
from .winding import AFTERTAIL, PLAIN, TAIL

Entry = tuple[int, int]

KINDS = ("F", "G", "H", "K", "Gp", "Hp", "Kp", "Fp")

DIAG, ANTI = "diag", "anti"


@dataclass
class Functional:
    """A sparse functional: matrix size plus (position -> rational coefficient)."""

    size: int
    entries: dict[Entry, Fraction]
    domain: SeaweedSpec | None = None

    def __post_init__(self):
        self.entries = {
            pos: Fraction(c) for pos, c in self.entries.items() if Fraction(c) != 0
        }

    @property
    def support(self) -> frozenset[Entry]:
        return frozenset(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Functional)
            and self.size == other.size
            and self.entries == other.entries
        )

    def terms(self) -> list[tuple[Entry, Fraction]]:
        return sorted(self.entries.items())

    def to_json(self) -> dict:
        from .algebra import spec_to_json

        return {
            "size": self.size,
            "domain": spec_to_json(self.domain) if self.domain else None,
            "entries": [
                {"i": i, "j": j, "c": str(c)} for (i, j), c in self.terms()
            ],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "Functional":
        from .algebra import spec_from_json

        if isinstance(data, str):
            data = json.loads(data)
        entries = {(e["i"], e["j"]): Fraction(e["c"]) for e in data["entries"]}
        domain = spec_from_json(data["domain"]) if data.get("domain") else None
        return cls(data["size"], entries, domain)


def _ones(positions) -> dict[Entry, Fraction]:
    return {pos: Fraction(1) for pos in positions}


def base_functional(kind: str, c: int) -> Functional:
    """One of the eight explicit functionals on gl(c), all coefficients 1."""
    if kind not in KINDS:
        raise ValueError(f"unknown functional kind {kind!r}")
    if c < 0:
        raise ValueError("size must be nonnegative")
    if kind == "F":
        pos = [(i, j) for i in range(1, c + 1) for j in range(1, c + 2 - i)]
    elif kind == "G":
        if c < 4:
            raise ValueError("G requires size >= 4")
        pos = [(1, 1)] + [(i, j) for i in range(2, c) for j in range(2, c + 2 - i)]
    elif kind == "H":
        if c < 1:
            raise ValueError("H requires size >= 1")
        pos = [(i, j) for i in range(1, c) for j in range(1, c + 1 - i)]
    elif kind == "K":
        if c < 1:
            raise ValueError("K requires size >= 1")
        pos = [(1, 1)] + [(i, j) for i in range(2, c + 1) for j in range(2, c + 3 - i)]
    elif kind == "Gp":
        if c < 4:
            raise ValueError("Gp requires size >= 4")
        pos = [(i, j) for i in range(2, c) for j in range(2, c) if i + j <= c + 1]
        pos.append((c, c))
    elif kind == "Hp":
        if c < 1:
            raise ValueError("Hp requires size >= 1")
        pos = [(i, j) for i in range(2, c + 1) for j in range(2, c + 1) if i + j <= c + 2]
    elif kind == "Kp":
        if c < 1:
            raise ValueError("Kp requires size >= 1")
        pos = [(i, j) for i in range(1, c) for j in range(1, c + 1 - i)]
        pos.append((c, c))
    else:  # Fp
        if c < 2:
            raise ValueError("Fp requires size >= 2")
        pos = [(i, j) for i in range(2, c) for j in range(2, c) if i + j <= c + 1]
    return Functional(c, _ones(pos))


def shift(f: Functional, a: int, size: int | None = None) -> Functional:
    """Translate a functional by ``a`` along the diagonal."""
    if size is None:
        size = f.size + max(a, 0)
    entries = {}
    for (i, j), coef in f.entries.items():
        ni, nj = i + a, j + a
        if not (1 <= ni <= size and 1 <= nj <= size):
            raise ValueError(f"shift by {a} leaves ({ni},{nj}) outside a {size}x{size} matrix")
        entries[(ni, nj)] = coef
    return Functional(size, entries)


def rotate(f: Functional) -> Functional:
    """180-degree rotation of the index set: (i, j) -> (c+1-i, c+1-j)."""
    c = f.size
    return Functional(c, {(c + 1 - i, c + 1 - j): v for (i, j), v in f.entries.items()})


def transpose(f: Functional) -> Functional:
    return Functional(f.size, {(j, i): v for (i, j), v in f.entries.items()})


def anti_transpose(f: Functional) -> Functional:
    """Reflection across the antidiagonal: (i, j) -> (c+1-j, c+1-i)."""
    c = f.size
    return Functional(c, {(c + 1 - j, c + 1 - i): v for (i, j), v in f.entries.items()})


@dataclass(frozen=True)
class PeakPolicy:
    """Main-diagonal vs antidiagonal choice per peak block.

    ``overrides`` maps a global peak index (the order of
    ``CoreData.all_peaks``) to "diag" or "anti"; anything unmapped uses
    ``default``.
    """

    default: str = DIAG
    overrides: tuple[tuple[int, str], ...] = ()

    def choice(self, peak_index: int) -> str:
        for k, v in self.overrides:
            if k == peak_index:
                return v
        return self.default

    @classmethod
    def diag(cls) -> "PeakPolicy":
        return cls(DIAG)

    @classmethod
    def anti(cls) -> "PeakPolicy":
        return cls(ANTI)

    @classmethod
    def parse(cls, text: str) -> "PeakPolicy":
        """Parse ``diag``, ``anti`` or ``mixed:0=anti,2=diag`` (default diag)."""
        text = text.strip()
        if text == DIAG:
            return cls.diag()
        if text == ANTI:
            return cls.anti()
        if text.startswith("mixed:"):
            overrides = []
            for tok in text[len("mixed:") :].split(","):
                k, _, v = tok.partition("=")
                if v not in (DIAG, ANTI):
                    raise ValueError(f"bad peak choice {tok!r}")
                overrides.append((int(k), v))
            return cls(DIAG, tuple(overrides))
        raise ValueError(f"bad peak policy {text!r}")


def _embed_in_block(f: Functional, c: int) -> Functional:
    """View a functional on gl(m), m <= c, as one on gl(c) (top-left corner)."""
    if f.size > c:
        raise ValueError(f"functional of size {f.size} does not fit in a {c}-block")
    return Functional(c, dict(f.entries))


def _peak_entries(peak: Peak, choice: str) -> list[Entry]:
    (r1, r2), (c1, c2) = peak.rows, peak.cols
    length = r2 - r1 + 1
    if choice == DIAG:
        return [(r1 + s, c1 + s) for s in range(length)]
    return [(r2 - s, c1 + s) for s in range(length)]


def _normalize_bases(bases, core: CoreData) -> dict[int, str]:
    if isinstance(bases, str):
        return {comp.component_id: bases for comp in core.components}
    table = dict(bases)
    for comp in core.components:
        table.setdefault(comp.component_id, "F")
    return table


def _component_entries(
    comp: ComponentCore,
    block_f: Functional,
    policy: PeakPolicy,
    peak_offset: int,
    forced_diag=lambda peak: False,
    embed_runs: tuple | None = None,
) -> tuple[dict[Entry, Fraction], list[tuple[Entry, Peak]]]:
    """Entries of one component: oriented core copies plus peak diagonals.

    The orientation of each block along the path flips exactly across peaks
    that use the antidiagonal convention, starting plain at the anchor.
    Returns the entry map and the list of (entry, peak) pairs for the peak
    entries (the B construction needs to know where they came from).
    """
    entries: dict[Entry, Fraction] = {}
    peak_sources: list[tuple[Entry, Peak]] = []
    choices = []
    for k, peak in enumerate(comp.peaks):
        choice = DIAG if forced_diag(peak) else policy.choice(peak_offset + k)
        choices.append(choice)
    # Walk the path accumulating flips across antidiagonal peaks, then shift
    # the whole assignment so the anchor block (lowest start) stays plain.
    flips = [False]
    for k in range(len(comp.peaks)):
        flips.append(flips[-1] ^ (choices[k] == ANTI))
    anchor = min(range(len(comp.path_runs)), key=lambda k: comp.path_runs[k][0])
    orientation = {
        run: flips[k] ^ flips[anchor] for k, run in enumerate(comp.path_runs)
    }
    block_r = rotate(block_f)
    targets = comp.path_runs if embed_runs is None else embed_runs
    for run in targets:
        start = run[0]
        chosen = block_r if orientation[run] else block_f
        for (i, j), coef in chosen.entries.items():
            pos = (i + start - 1, j + start - 1)
            entries[pos] = entries.get(pos, Fraction(0)) + coef
    for k, peak in enumerate(comp.peaks):
        for pos in _peak_entries(peak, choices[k]):
            entries[pos] = entries.get(pos, Fraction(0)) + 1
            peak_sources.append((pos, peak))
    return entries, peak_sources


def _check_support(spec: SeaweedSpec, entries: dict[Entry, Fraction]) -> None:
    adm = admissible_positions(spec)
    bad = sorted(set(entries) - adm)
    if bad:
        raise AssertionError(f"constructed entries outside the seaweed: {bad[:5]}")


def construct_gl(spec: SeaweedSpec, bases="F", policy: PeakPolicy = PeakPolicy.diag()) -> Functional:
    """Component-built functional on a gl seaweed.

    ``bases`` is a functional kind (used for every component) or a map
    component_id -> kind; the component of size c receives the kind's
    functional on gl(c).
    """
    if spec.family != GL:
        raise ValueError("construct_gl expects a gl spec")
    core = core_and_peaks(spec)
    table = _normalize_bases(bases, core)
    entries: dict[Entry, Fraction] = {}
    offset = 0
    for comp in core.components:
        block = base_functional(table[comp.component_id], comp.size)
        part, _ = _component_entries(comp, block, policy, offset)
        for pos, coef in part.items():
            entries[pos] = entries.get(pos, Fraction(0)) + coef
        offset += len(comp.peaks)
    _check_support(spec, entries)
    return Functional(spec.size, entries, spec)


def construct_A(spec: SeaweedSpec, bases="F", policy: PeakPolicy = PeakPolicy.diag()) -> Functional:
    """Type-A construction: the component of size c receives the base on gl(c-1).

    Placing the (c-1)-functional in the top-left of the c x c block keeps it
    strictly above the block antidiagonal, which is what the trace-zero
    condition requires.
    """
    if spec.family != TYPE_A:
        raise ValueError("construct_A expects a type-A spec")
    core = core_and_peaks(spec)
    table = _normalize_bases(bases, core)
    entries: dict[Entry, Fraction] = {}
    offset = 0
    for comp in core.components:
        kind = table[comp.component_id]
        inner = base_functional(kind, comp.size - 1) if comp.size > 1 else Functional(0, {})
        block = _embed_in_block(inner, comp.size)
        part, _ = _component_entries(comp, block, policy, offset)
        for pos, coef in part.items():
            entries[pos] = entries.get(pos, Fraction(0)) + coef
        offset += len(comp.peaks)
    _check_support(spec, entries)
    return Functional(spec.size, entries, spec)


def _classify_bc_components(spec: SeaweedSpec, core: CoreData) -> dict[int, str]:
    """plain / tail / aftertail per component, from the diagonal blocks it owns."""
    (tail_lo, tail_hi), (after_lo, after_hi) = tail_blocks(spec)
    roles = {}
    for comp in core.components:
        role = PLAIN
        for (s, e) in comp.path_runs:
            if after_lo <= after_hi and not (e < after_lo or s > after_hi):
                role = AFTERTAIL
                break
            if tail_lo <= tail_hi and not (e < tail_lo or s > tail_hi):
                role = TAIL
        roles[comp.component_id] = role
    return roles


def _construct_bc(spec: SeaweedSpec, bases, policy: PeakPolicy) -> Functional:
    size = spec.size
    n = spec.n
    cutoff = 2 * n + 1  # keep entries on or above the antidiagonal (strictly above for B)
    core = core_and_peaks(spec)
    table = _normalize_bases(bases, core)
    roles = _classify_bc_components(spec, core)
    t = n - max(sum(spec.top), sum(spec.bottom))

    def crosses_antidiagonal(peak: Peak) -> bool:
        (r1, r2), (c1, c2) = peak.rows, peak.cols
        return r1 + c1 <= size + 1 <= r2 + c2

    entries: dict[Entry, Fraction] = {}
    dropped_antidiag: list[tuple[Entry, int]] = []  # (entry, component size) per odd tail peak
    offset = 0
    for comp in core.components:
        role = roles[comp.component_id]
        kind = table[comp.component_id]
        if role == AFTERTAIL:
            if len(comp.path_runs) != 1:
                raise NotImplementedError("aftertail component with peaks is unsupported")
            expected = 2 * t + (1 if spec.family == TYPE_B else 0)
            if comp.size != expected:
                raise AssertionError(
                    f"aftertail component size {comp.size}, expected {expected}"
                )
            for (i, j), coef in shift(base_functional(kind, t), n - t, size).entries.items():
                entries[(i, j)] = entries.get((i, j), Fraction(0)) + coef
            continue
        if role == TAIL:
            inner = base_functional(kind, comp.size // 2) if comp.size // 2 else Functional(0, {})
            block = _embed_in_block(inner, comp.size)
            embed_runs = comp.part_b  # even parity classes only; see the tail base case
        else:
            block = base_functional(kind, comp.size) if comp.size > 1 else Functional(comp.size, {})
            embed_runs = None
        part, peak_sources = _component_entries(
            comp, block, policy, offset, forced_diag=crosses_antidiagonal, embed_runs=embed_runs
        )
        peak_entry_of = dict(peak_sources)
        for pos, coef in part.items():
            i, j = pos
            if i + j <= cutoff:
                entries[pos] = entries.get(pos, Fraction(0)) + coef
            elif (
                spec.family == TYPE_B
                and i + j == size + 1
                and role == TAIL
                and comp.size % 2 == 1
                and pos in peak_entry_of
            ):
                dropped_antidiag.append((pos, comp.size))
        offset += len(comp.peaks)

    if spec.family == TYPE_B and dropped_antidiag:
        above = [pos for pos, _ in dropped_antidiag if pos[0] < pos[1]]
        below = [pos for pos, _ in dropped_antidiag if pos[0] > pos[1]]
        if above and below:
            raise AssertionError("antidiagonal peak entries on both sides of the diagonal")
        flip = bool(below)
        pts = sorted((j, i) if flip else (i, j) for (i, j) in (pos for pos, _ in dropped_antidiag))
        cols = [q for (_, q) in pts]
        for s, (p, _) in enumerate(pts):
            extra = [(p, n + 1)] + [(p, cols[u]) for u in range(s + 1, len(pts))]
            for (i, j) in extra:
                pos = (j, i) if flip else (i, j)
                entries[pos] = entries.get(pos, Fraction(0)) + 1

    entries = {pos: c for pos, c in entries.items() if c}
    if spec.family == TYPE_B:
        onaxis = [pos for pos in entries if pos[0] + pos[1] == size + 1]
        if onaxis:
            raise AssertionError(f"type-B functional hit the antidiagonal: {onaxis}")
    _check_support(spec, entries)
    return Functional(size, entries, spec)


def construct_C(spec: SeaweedSpec, bases="F", policy: PeakPolicy = PeakPolicy.diag()) -> Functional:
    """Type-C construction on the full mirrored picture.

    Tail components embed the half-size functional on their even-parity core
    blocks, the aftertail block receives the base functional of size t
    shifted to the center, everything is truncated to the closed half above
    the antidiagonal, and peak blocks crossing the antidiagonal are forced
    to the main-diagonal convention.
    """
    if spec.family != TYPE_C:
        raise ValueError("construct_C expects a type-C spec")
    return _construct_bc(spec, bases, policy)


def construct_B(spec: SeaweedSpec, bases="F", policy: PeakPolicy = PeakPolicy.diag()) -> Functional:
    """Type-B construction: as type C, plus the center-column correction.

    Each odd tail component would place one peak entry on the forbidden
    antidiagonal; those entries (rows i_1 < ... < i_k, columns j_s mirroring
    them) are replaced by e*_{i_s, n+1} + sum_{t > s} e*_{i_s, j_t}.
    """
    if spec.family != TYPE_B:
        raise ValueError("construct_B expects a type-B spec")
    return _construct_bc(spec, bases, policy)


def construct(spec: SeaweedSpec, bases="F", policy: PeakPolicy = PeakPolicy.diag()) -> Functional:
    """Family dispatch for the component-built functional."""
    builder = {GL: construct_gl, TYPE_A: construct_A, TYPE_B: construct_B, TYPE_C: construct_C}
    return builder[spec.family](spec, bases, policy)


def functional_sizes(n: int) -> dict[str, int]:
    """Support sizes of the eight base functionals on gl(n)."""
    return {kind: len(base_functional(kind, n)) for kind in KINDS}

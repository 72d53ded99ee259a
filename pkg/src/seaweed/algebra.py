"""Seaweed Lie algebras from compositions: specs, admissible positions, bases.

A seaweed subalgebra of gl(n) is cut out by two compositions of n: the top
composition bounds the blocks below the diagonal, the bottom composition the
blocks above it, producing the familiar staircase shape.  The classical
families are handled in matrix form:

* ``gl`` -- two compositions of n, matrix size N = n;
* ``A``  -- sl(n+1): two compositions of n+1 plus the trace-zero condition;
* ``C``  -- sp(2n): two *partial* compositions of n, mirrored around a
  central block of size 2(n - sum) so the algebra is literally symmetric
  across the antidiagonal;
* ``B``  -- so(2n+1): as C with central block 2(n - sum) + 1 and forced
  zeros on the antidiagonal.

Conventions here keep the bilinear forms antidiagonal-wise, so B/C seaweeds
are genuinely antidiagonal-symmetric sets of matrices; no conjugation to a
block form is performed.  All positions are 1-based (row, col) pairs.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache

Composition = tuple[int, ...]

GL = "gl"
TYPE_A = "A"
TYPE_B = "B"
TYPE_C = "C"
FAMILIES = (GL, TYPE_A, TYPE_B, TYPE_C)


def check_composition(parts: Composition, allow_empty: bool = False) -> None:
    if not parts and not allow_empty:
        raise ValueError("composition must have at least one part")
    if any(p < 1 for p in parts):
        raise ValueError(f"composition parts must be positive: {parts}")


@dataclass(frozen=True)
class SeaweedSpec:
    """A seaweed algebra: family tag, two compositions and the family rank n."""

    family: str
    top: Composition
    bottom: Composition
    n: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        object.__setattr__(self, "top", tuple(self.top))
        object.__setattr__(self, "bottom", tuple(self.bottom))
        partial = self.family in (TYPE_B, TYPE_C)
        check_composition(self.top, allow_empty=partial)
        check_composition(self.bottom, allow_empty=partial)
        if self.n < 1:
            raise ValueError("n must be positive")
        t, b = sum(self.top), sum(self.bottom)
        if self.family == GL:
            if t != b or t != self.n:
                raise ValueError(f"gl compositions must both sum to n={self.n}: {t} vs {b}")
        elif self.family == TYPE_A:
            if t != b or t != self.n + 1:
                raise ValueError(f"type-A compositions must both sum to n+1={self.n + 1}: {t} vs {b}")
        else:
            if t > self.n or b > self.n:
                raise ValueError(f"partial compositions may not exceed n={self.n}: {t}, {b}")

    @property
    def size(self) -> int:
        """Matrix size N."""
        if self.family == GL:
            return self.n
        if self.family == TYPE_A:
            return self.n + 1
        if self.family == TYPE_C:
            return 2 * self.n
        return 2 * self.n + 1

    def full_type(self) -> tuple[Composition, Composition]:
        """The full (top, bottom) compositions of the N x N matrix picture.

        For gl/A this is just (top, bottom); for B/C the partial compositions
        are mirrored around the central block.
        """
        if self.family in (GL, TYPE_A):
            return self.top, self.bottom
        extra = 1 if self.family == TYPE_B else 0

        def mirror(parts: Composition) -> Composition:
            central = 2 * (self.n - sum(parts)) + extra
            middle = (central,) if central else ()
            return parts + middle + tuple(reversed(parts))

        return mirror(self.top), mirror(self.bottom)

    def __str__(self) -> str:
        return format_spec(self)


def _format_parts(parts: Composition) -> str:
    return "|".join(str(p) for p in parts) if parts else "-"


def format_spec(spec: SeaweedSpec) -> str:
    return f"{spec.family} {_format_parts(spec.top)} / {_format_parts(spec.bottom)}"


_SPEC_RE = re.compile(r"^\s*(?:(gl|A|B|C)\s+)?([^/]*)/(.*)$")


def _parse_parts(text: str, what: str) -> Composition:
    text = text.strip()
    if text in ("", "-"):
        return ()
    parts = []
    for tok in text.split("|"):
        tok = tok.strip()
        if not re.fullmatch(r"-?\d+", tok):
            raise ValueError(f"bad {what} composition part {tok!r}")
        parts.append(int(tok))
    return tuple(parts)


def parse_spec(text: str, n: int | None = None) -> SeaweedSpec:
    """Parse ``[gl|A|B|C] a1|...|am / b1|...|bt`` into a SeaweedSpec.

    The family tag is optional and defaults to gl.  For gl the rank is the
    common total; for A it is the total minus one.  B/C take partial
    compositions, so ``n`` must be supplied; ``-`` (or nothing) denotes the
    empty partial composition.
    """
    m = _SPEC_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse seaweed spec {text!r}")
    family = m.group(1) or GL
    top = _parse_parts(m.group(2), "top")
    bottom = _parse_parts(m.group(3), "bottom")
    if family in (GL, TYPE_A):
        if not top or not bottom:
            raise ValueError(f"{family} requires nonempty compositions")
        total = sum(top)
        rank = total if family == GL else total - 1
        if n is not None and n != rank:
            raise ValueError(f"given n={n} conflicts with compositions (expected {rank})")
        return SeaweedSpec(family, top, bottom, rank)
    if n is None:
        raise ValueError(f"family {family} needs an explicit n (partial compositions)")
    return SeaweedSpec(family, top, bottom, n)


def spec_to_json(spec: SeaweedSpec) -> dict:
    return {"family": spec.family, "top": list(spec.top), "bottom": list(spec.bottom), "n": spec.n}


def spec_from_json(data: dict | str) -> SeaweedSpec:
    if isinstance(data, str):
        data = json.loads(data)
    return SeaweedSpec(data["family"], tuple(data["top"]), tuple(data["bottom"]), data["n"])


def _block_bounds(parts: Composition) -> list[tuple[int, int]]:
    """Inclusive (start, end) vertex ranges of the blocks of a composition."""
    bounds = []
    start = 1
    for p in parts:
        bounds.append((start, start + p - 1))
        start += p
    return bounds


@lru_cache(maxsize=4096)
def admissible_positions(spec: SeaweedSpec) -> frozenset[tuple[int, int]]:
    """The set of matrix positions that may be nonzero in the seaweed.

    Below the diagonal a position (i, j) is admissible when i stays inside
    the top block containing column j; above the diagonal when i does not
    rise above the bottom block containing column j.  For type B the whole
    antidiagonal is removed (forced zeros of the odd orthogonal form).
    """
    top, bottom = spec.full_type()
    size = spec.size
    top_end = [0] * (size + 1)
    for s, e in _block_bounds(top):
        for j in range(s, e + 1):
            top_end[j] = e
    bot_start = [0] * (size + 1)
    for s, e in _block_bounds(bottom):
        for j in range(s, e + 1):
            bot_start[j] = s
    positions = set()
    for j in range(1, size + 1):
        for i in range(j, top_end[j] + 1):
            positions.add((i, j))
        for i in range(bot_start[j], j):
            positions.add((i, j))
    if spec.family == TYPE_B:
        positions = {(i, j) for (i, j) in positions if i + j != size + 1}
    return frozenset(positions)


def mirror_position(spec: SeaweedSpec, pos: tuple[int, int]) -> tuple[int, int]:
    """Reflection across the antidiagonal: (i, j) -> (N+1-j, N+1-i)."""
    size = spec.size
    i, j = pos
    return (size + 1 - j, size + 1 - i)


@dataclass(frozen=True)
class BasisElement:
    """One element of a family-adapted basis, as a sparse matrix.

    kinds:
      ``single``    e_{i,j}                      (gl, and off-diagonal A)
      ``diagdiff``  e_{i,i} - e_{i+1,i+1}        (A only)
      ``antipair``  e_{i,j} + sign * e_{i',j'}   (B/C; (i',j') the antidiagonal
                    mirror; a self-mirrored position keeps the single term)
    """

    kind: str
    i: int
    j: int
    sign: int = 0

    def entries(self, size: int) -> dict[tuple[int, int], int]:
        if self.kind == "single":
            return {(self.i, self.j): 1}
        if self.kind == "diagdiff":
            return {(self.i, self.i): 1, (self.i + 1, self.i + 1): -1}
        mi, mj = size + 1 - self.j, size + 1 - self.i
        if (mi, mj) == (self.i, self.j):
            return {(self.i, self.j): 1}
        return {(self.i, self.j): 1, (mi, mj): self.sign}

    @property
    def position(self) -> tuple[int, int]:
        """Representative matrix position (used for ordering and labels)."""
        return (self.i, self.j)


def _position_order(pos: tuple[int, int]) -> tuple[int, int, int]:
    # Shells of growing max(i, j): inner submatrix first, outer border last,
    # so nullspace free variables land in the last row/column.
    i, j = pos
    return (max(i, j), i, j)


@lru_cache(maxsize=4096)
def basis(spec: SeaweedSpec) -> tuple[BasisElement, ...]:
    """A linearly independent spanning set of the seaweed, deterministically ordered."""
    adm = admissible_positions(spec)
    size = spec.size
    elements: list[BasisElement] = []
    if spec.family == GL:
        elements = [BasisElement("single", i, j) for (i, j) in adm]
    elif spec.family == TYPE_A:
        elements = [BasisElement("single", i, j) for (i, j) in adm if i != j]
        elements.extend(BasisElement("diagdiff", i, i) for i in range(1, size))
    else:
        n = spec.n
        for (i, j) in adm:
            mi, mj = mirror_position(spec, (i, j))
            if (mi, mj) < (i, j):
                continue  # one representative per mirror pair, lex-smaller
            if spec.family == TYPE_B:
                sign = -1
            else:
                same_side = (i <= n and j <= n) or (i > n and j > n)
                sign = -1 if same_side else 1
            elements.append(BasisElement("antipair", i, j, sign))
    elements.sort(key=lambda b: _position_order(b.position))
    return tuple(elements)


def dimension(spec: SeaweedSpec) -> int:
    return len(basis(spec))

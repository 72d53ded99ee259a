"""Exact kernels of Kirillov forms: systems, dimensions, relations matrices.

For a functional F on a seaweed g, the kernel of the form (x, y) -> F([x, y])
is the space of matrices B in g with F([B, x]) = 0 for every basis element
x.  Writing B = sum_q y_q M_q over the family basis of g turns that into a
square linear system over the rationals; its nullity is the kernel
dimension, and F is regular exactly when that dimension equals the
meander-computed index of the seaweed.

Rank decisions are exact: fraction-free integer elimination, with a fast
one-sided certificate via GF(p).  The nullity mod p can only overshoot the
rational nullity, while every kernel dimension is at least the index, so
"nullity mod p == index" already pins the exact answer; anything else falls
back to the integer elimination.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import linalg
from .algebra import (
    SeaweedSpec,
    admissible_positions,
    basis,
    _position_order,
)
from .configuration import CoreData
from .functionals import Functional
from .meander import index as meander_index

Entry = tuple[int, int]


@dataclass(frozen=True)
class LinearForm:
    """A rational linear form in the free variables b_1, ..., b_k."""

    terms: tuple[tuple[int, Fraction], ...]  # sorted by variable id, no zeros

    @classmethod
    def from_dict(cls, d: dict[int, Fraction]) -> "LinearForm":
        return cls(tuple(sorted((v, c) for v, c in d.items() if c != 0)))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LinearForm") -> "LinearForm":
        d = dict(self.terms)
        for v, c in other.terms:
            d[v] = d.get(v, Fraction(0)) + c
        return LinearForm.from_dict(d)

    def scale(self, f: Fraction) -> "LinearForm":
        if f == 0:
            return LinearForm(())
        return LinearForm(tuple((v, c * f) for v, c in self.terms))

    def rename(self, mapping: dict[int, tuple[int, Fraction]]) -> "LinearForm":
        d: dict[int, Fraction] = {}
        for v, c in self.terms:
            nv, scale = mapping[v]
            d[nv] = d.get(nv, Fraction(0)) + c * scale
        return LinearForm.from_dict(d)

    def render(self, names: dict[int, str] | None = None) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for v, c in self.terms:
            name = names[v] if names else f"b{v + 1}"
            if c == 1:
                term = name
            elif c == -1:
                term = f"-{name}"
            else:
                term = f"{c}*{name}"
            if chunks and not term.startswith("-"):
                chunks.append("+" + term)
            else:
                chunks.append(term)
        return "".join(chunks)


ZERO_FORM = LinearForm(())


@dataclass
class KernelSystem:
    """The linear system cutting out ker(B_F), one row per basis element."""

    spec: SeaweedSpec
    functional: Functional
    variables: tuple  # family basis elements, one column each
    rows: list[list[Fraction]]


@lru_cache(maxsize=512)
def _bracket_structure(spec: SeaweedSpec):
    """F-independent structure constants of the kernel system.

    Returns (elements, positions, triplets) where ``triplets`` holds
    (row, col, position_index, sign_coefficient): the (row, col) entry of the
    system is the sum over triplets of F[position] * sign.
    """
    elems = basis(spec)
    size = spec.size
    adm = sorted(admissible_positions(spec), key=_position_order)
    pos_index = {p: k for k, p in enumerate(adm)}
    mats = [e.entries(size) for e in elems]
    triplets: list[tuple[int, int, int, int]] = []
    for xi, x in enumerate(mats):
        for qi, q in enumerate(mats):
            for (a, b), cq in q.items():
                for (c, d), cx in x.items():
                    if b == c:
                        k = pos_index.get((a, d))
                        if k is not None:
                            triplets.append((xi, qi, k, cq * cx))
                    if d == a:
                        k = pos_index.get((c, b))
                        if k is not None:
                            triplets.append((xi, qi, k, -cq * cx))
    return elems, adm, triplets


def _functional_vector(spec: SeaweedSpec, f: Functional, positions) -> list[Fraction]:
    adm = set(positions)
    bad = [p for p in f.entries if p not in adm]
    if bad:
        raise ValueError(f"functional support outside the seaweed: {sorted(bad)[:5]}")
    return [f.entries.get(p, Fraction(0)) for p in positions]


def assemble_system(spec: SeaweedSpec, f: Functional) -> KernelSystem:
    """Rows encode F([B, x]) = 0 over the family basis; columns are the b-variables."""
    elems, positions, triplets = _bracket_structure(spec)
    vec = _functional_vector(spec, f, positions)
    m = len(elems)
    rows = [[Fraction(0)] * m for _ in range(m)]
    for (r, c, k, s) in triplets:
        if vec[k]:
            rows[r][c] += s * vec[k]
    return KernelSystem(spec, f, elems, rows)


def kernel_dim(spec: SeaweedSpec, f: Functional) -> int:
    """dim ker(B_F), by exact integer elimination."""
    system = assemble_system(spec, f)
    int_rows = [linalg.clear_denominators(row) for row in system.rows]
    return len(system.variables) - linalg.bareiss_rank(int_rows)


@lru_cache(maxsize=512)
def _modp_triplet_arrays(spec: SeaweedSpec):
    elems, positions, triplets = _bracket_structure(spec)
    rows = np.fromiter((t[0] for t in triplets), dtype=np.int64, count=len(triplets))
    cols = np.fromiter((t[1] for t in triplets), dtype=np.int64, count=len(triplets))
    ks = np.fromiter((t[2] for t in triplets), dtype=np.int64, count=len(triplets))
    sgn = np.fromiter((t[3] for t in triplets), dtype=np.int64, count=len(triplets))
    return elems, positions, (rows, cols, ks, sgn)


def _fast_nullity(spec: SeaweedSpec, f: Functional, p: int = linalg.MERSENNE31) -> int:
    """Nullity of the kernel system over GF(p) (an upper bound for the exact one)."""
    elems, positions, (rows, cols, ks, sgn) = _modp_triplet_arrays(spec)
    vec = _functional_vector(spec, f, positions)
    scale = 1
    for x in vec:
        if x.denominator != 1:
            scale = scale * x.denominator // np.gcd(scale, x.denominator)
    f_vec = np.array([int(x * scale) % p for x in vec], dtype=np.int64)
    m = len(elems)
    s = np.zeros((m, m), dtype=np.int64)
    np.add.at(s, (rows, cols), (sgn * f_vec[ks]) % p)
    return m - linalg.modp_rank(s % p, p)


@dataclass(frozen=True)
class RegularityReport:
    regular: bool
    kernel_dim: int
    index: int


def is_regular(spec: SeaweedSpec, f: Functional, fast: bool = True) -> RegularityReport:
    """Whether F realizes the index of the seaweed.

    The fast path certifies regularity exactly: the GF(p) nullity bounds the
    rational nullity from above, and no kernel is smaller than the index.
    """
    ind = meander_index(spec)
    if fast:
        nullity = _fast_nullity(spec, f)
        if nullity == ind:
            return RegularityReport(True, ind, ind)
    dim = kernel_dim(spec, f)
    return RegularityReport(dim == ind, dim, ind)


COEFFICIENT_POOL = range(1, 98)


def random_functional(spec: SeaweedSpec, rng: random.Random) -> Functional:
    """Full-support functional with coefficients drawn from a small integer pool."""
    entries = {
        pos: Fraction(rng.choice(COEFFICIENT_POOL))
        for pos in sorted(admissible_positions(spec))
    }
    return Functional(spec.size, entries, spec)


def generic_index_oracle(spec: SeaweedSpec, samples: int = 8, seed: int = 0) -> int:
    """Minimum kernel dimension over seeded random functionals.

    Kernel dimensions never drop below the index, so the minimum can only
    err high; for desk-scale seaweeds it equals the index with overwhelming
    probability.  Dimensions are computed over GF(p), which again can only
    push individual samples upward.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    rng = random.Random(seed)
    best = None
    for _ in range(samples):
        f = random_functional(spec, rng)
        nullity = _fast_nullity(spec, f)
        best = nullity if best is None else min(best, nullity)
    return best


@dataclass
class RelationsMatrix:
    """Parameterization of ker(B_F) by free variables b_1..b_k.

    ``cells`` holds a linear form for every admissible position (zero forms
    included); substituting rationals for the free variables, whose labels
    are representative matrix positions, produces exactly the kernel.
    """

    size: int
    cells: dict[Entry, LinearForm]
    free_vars: tuple[Entry, ...]

    @property
    def dim(self) -> int:
        return len(self.free_vars)

    def cell(self, i: int, j: int) -> LinearForm:
        return self.cells.get((i, j), ZERO_FORM)

    def submatrix(self, block: tuple[int, int]) -> list[list[LinearForm]]:
        s, e = block
        return [[self.cell(i, j) for j in range(s, e + 1)] for i in range(s, e + 1)]

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "free_vars": [list(p) for p in self.free_vars],
            "cells": {
                f"{i},{j}": [{"var": v, "coef": str(c)} for v, c in form.terms]
                for (i, j), form in sorted(self.cells.items())
                if form.terms
            },
        }


def relations_matrix(spec: SeaweedSpec, f: Functional) -> RelationsMatrix:
    """Exact reduced-row-echelon parameterization of ker(B_F).

    Variables are ordered so that border positions come last; free variables
    are the non-pivot columns, which for the triangular functional on gl(n)
    end up in the last row, matching the usual presentation.
    """
    system = assemble_system(spec, f)
    elems = system.variables
    m = len(elems)
    pivots, reduced = linalg.fraction_rref([row[:] for row in system.rows])
    free = [c for c in range(m) if c not in set(pivots)]
    free_rank = {c: k for k, c in enumerate(free)}
    exprs: list[LinearForm] = [None] * m  # type: ignore[list-item]
    for c in free:
        exprs[c] = LinearForm(((free_rank[c], Fraction(1)),))
    for r, c in enumerate(pivots):
        exprs[c] = LinearForm.from_dict(
            {free_rank[j]: -reduced[r][j] for j in free if reduced[r][j] != 0}
        )
    cells: dict[Entry, LinearForm] = {}
    size = spec.size
    for q, elem in enumerate(elems):
        if exprs[q].is_zero():
            continue
        for pos, coef in elem.entries(size).items():
            form = exprs[q].scale(Fraction(coef))
            cells[pos] = cells[pos] + form if pos in cells else form
    for pos in admissible_positions(spec):
        cells.setdefault(pos, ZERO_FORM)
    cells = {pos: form for pos, form in cells.items()}
    return RelationsMatrix(
        size=size,
        cells=cells,
        free_vars=tuple(elems[c].position for c in free),
    )


def verify_relations(spec: SeaweedSpec, f: Functional, rel: RelationsMatrix) -> bool:
    """Symbolically check F([B, x]) = 0 for every basis element x.

    B is the matrix of linear forms; the check expands the bracket cell-wise
    and must produce the zero form for every row of the kernel system.
    """
    elems, positions, triplets = _bracket_structure(spec)
    vec = _functional_vector(spec, f, positions)
    size = spec.size
    col_forms: list[LinearForm] = []
    for elem in elems:
        total = ZERO_FORM
        for pos, coef in elem.entries(size).items():
            total = total + rel.cell(*pos).scale(Fraction(coef))
        col_forms.append(total)
    # Row x of the system, applied to the symbolic B, must vanish.
    acc: dict[int, LinearForm] = {}
    for (r, c, k, s) in triplets:
        if vec[k]:
            form = col_forms[c].scale(s * vec[k])
            acc[r] = acc[r] + form if r in acc else form
    return all(form.is_zero() for form in acc.values())


def canonicalize_cells(cells: dict[Entry, LinearForm]) -> dict[Entry, LinearForm]:
    """Rename free variables canonically for comparisons up to relabeling.

    Variables are keyed by their full appearance signature (positions and
    coefficients scaled so the first occurrence is +1), sorted, and
    renumbered; the coefficient scaling is absorbed into the variable.
    """
    occurrences: dict[int, list[tuple[Entry, Fraction]]] = {}
    for pos in sorted(cells):
        for v, c in cells[pos].terms:
            occurrences.setdefault(v, []).append((pos, c))
    sigs = {}
    for v, occ in occurrences.items():
        lead = occ[0][1]
        sigs[v] = tuple((pos, c / lead) for pos, c in occ)
    order = sorted(sigs, key=lambda v: sigs[v])
    mapping = {v: (k, Fraction(1) / occurrences[v][0][1]) for k, v in enumerate(order)}
    return {pos: form.rename(mapping) for pos, form in cells.items()}


def cells_equal_up_to_renaming(a: dict[Entry, LinearForm], b: dict[Entry, LinearForm]) -> bool:
    keys = set(k for k, v in a.items() if not v.is_zero())
    if keys != set(k for k, v in b.items() if not v.is_zero()):
        return False
    ca, cb = canonicalize_cells(a), canonicalize_cells(b)
    return all(ca.get(k, ZERO_FORM) == cb.get(k, ZERO_FORM) for k in keys)


def _rotate_block(block: list[list[LinearForm]]) -> list[list[LinearForm]]:
    c = len(block)
    return [[block[c - 1 - i][c - 1 - j] for j in range(c)] for i in range(c)]


def block_structure_check(rel: RelationsMatrix, core: CoreData) -> bool:
    """Nonzero cells live in core blocks; same-component blocks agree up to rotation."""
    blocks: set[tuple[int, int]] = set()
    for comp in core.components:
        blocks.update(comp.core_blocks)
    covered = set()
    for (s, e) in blocks:
        covered.update((i, j) for i in range(s, e + 1) for j in range(s, e + 1))
    for pos, form in rel.cells.items():
        if not form.is_zero() and pos not in covered:
            return False
    for comp in core.components:
        subs = [rel.submatrix(b) for b in comp.core_blocks]
        first = subs[0]
        first_rot = _rotate_block(first)
        for sub in subs[1:]:
            if sub != first and sub != first_rot:
                return False
    return True


def block_notation(rel: RelationsMatrix, core: CoreData) -> str:
    """Paper-style direct-sum notation, e.g. ``B_4+B_2+B_4+B_2^R+B_4^R``.

    Blocks are scanned along the diagonal; the first pattern seen at each
    size names the plain block, with ^R marking its rotation and primes
    distinguishing genuinely different patterns of the same size.
    """
    runs = sorted(b for comp in core.components for b in comp.core_blocks)
    seen: dict[int, list] = {}
    names = []
    for (s, e) in runs:
        sub = rel.submatrix((s, e))
        c = e - s + 1
        if c == 1 and sub[0][0].is_zero():
            names.append("(0)")
            continue
        variants = seen.setdefault(c, [])
        label = None
        for base_name, block in variants:
            if sub == block:
                label = base_name
                break
            if sub == _rotate_block(block):
                label = base_name + "^R"
                break
        if label is None:
            primes = "'" * len(variants)
            label = f"B_{c}{primes}"
            variants.append((label, sub))
        names.append(label)
    return "⊕".join(names)


def fn_closed_form_check(n: int) -> bool:
    """Structural checks on the kernel of the triangular functional on gl(n).

    Verifies, as identities between linear forms in the last-row variables
    b_s = B[n, s]:

    * every cell depends only on last row/column variables (and the free
      variables are exactly the last row);
    * B[1, i] = b_1 + ... + b_{n+1-i};
    * B[n, s] = B[s, n];
    * B[i, j] = B[i-1, j-1] - b_{n+3-i-j} on its half-domain;
    * B[n+1-i, j] = B[n+2-i, j+1] + b_{j-i+1} on its half-domain.
    """
    from .algebra import GL as _GL
    from .functionals import base_functional

    spec = SeaweedSpec(_GL, (n,), (n,), n)
    rel = relations_matrix(spec, base_functional("F", n))
    if set(rel.free_vars) != {(n, s) for s in range(1, n + 1)}:
        return False
    var_of = {pos: k for k, pos in enumerate(rel.free_vars)}
    b = [None] + [LinearForm(((var_of[(n, s)], Fraction(1)),)) for s in range(1, n + 1)]
    for i in range(1, n + 1):
        if rel.cell(1, i) != _form_sum(b[1 : n + 2 - i]):
            return False
    for s in range(1, n + 1):
        if rel.cell(n, s) != rel.cell(s, n):
            return False

    def in_region(i: int, j: int) -> bool:
        half = (n + 1) // 2
        if i <= half:
            return i <= j <= n + 1 - i
        return n + 1 - i < j <= i

    hi3 = n // 2 if n % 2 else n // 2 + 1
    for i in range(2, hi3 + 1):
        for j in range(1, n + 1):
            if not (in_region(i, j) and in_region(i - 1, j - 1)):
                continue
            k = n + 3 - i - j
            if not (1 <= k <= n):
                continue
            if rel.cell(i, j) != rel.cell(i - 1, j - 1) + b[k].scale(Fraction(-1)):
                return False
    hi4 = n // 2 + 1 if n % 2 else n // 2
    for i in range(1, hi4 + 1):
        for j in range(1, n):
            k = j - i + 1
            if not (1 <= k <= n):
                continue
            if not (in_region(n + 1 - i, j) and in_region(n + 2 - i, j + 1)):
                continue
            if rel.cell(n + 1 - i, j) != rel.cell(n + 2 - i, j + 1) + b[k]:
                return False
    return True


def _form_sum(forms) -> LinearForm:
    total = ZERO_FORM
    for f in forms:
        total = total + f
    return total

"""Renderers: DOT and JSON for meanders, ASCII overlays for the matrix picture."""

from __future__ import annotations

from .algebra import SeaweedSpec, admissible_positions
from .configuration import CoreData
from .functionals import Functional
from .meander import Meander


def meander_to_dot(m: Meander, name: str = "meander") -> str:
    lines = [f"graph {name} {{", "  rankdir=LR;", "  node [shape=point];"]
    lines.append("  { rank=same; " + " -- ".join(f"v{i}" for i in range(1, m.v + 1)) + " [style=invis]; }")
    for (a, b) in sorted(m.top):
        lines.append(f'  v{a} -- v{b} [side=top, constraint=false];')
    for (a, b) in sorted(m.bottom):
        lines.append(f'  v{a} -- v{b} [side=bottom, constraint=false, style=dashed];')
    lines.append("}")
    return "\n".join(lines)


def meander_to_json(m: Meander, tail=None) -> dict:
    data = {
        "v": m.v,
        "top": sorted([list(arc) for arc in m.top]),
        "bottom": sorted([list(arc) for arc in m.bottom]),
        "components": [
            {
                "kind": c.kind,
                "vertices": list(c.vertices),
                "endpoints": list(c.endpoints),
            }
            for c in m.components
        ],
    }
    if tail is not None:
        data["tail"] = sorted(tail.tail)
        data["aftertail"] = sorted(tail.aftertail)
    return data


def ascii_matrix(spec: SeaweedSpec, functional: Functional | None = None, core: CoreData | None = None) -> str:
    """Matrix-form overlay: '*' admissible, 'C' core, 'P' peak, '@' functional support."""
    size = spec.size
    adm = admissible_positions(spec)
    grid = [["." for _ in range(size)] for _ in range(size)]
    for (i, j) in adm:
        grid[i - 1][j - 1] = "*"
    if core is not None:
        for comp in core.components:
            for (s, e) in comp.core_blocks:
                for i in range(s, e + 1):
                    for j in range(s, e + 1):
                        if grid[i - 1][j - 1] != ".":
                            grid[i - 1][j - 1] = "C"
            for peak in comp.peaks:
                (r1, r2), (c1, c2) = peak.rows, peak.cols
                for i in range(r1, r2 + 1):
                    for j in range(c1, c2 + 1):
                        if grid[i - 1][j - 1] != ".":
                            grid[i - 1][j - 1] = "P"
    if functional is not None:
        for (i, j) in functional.support:
            grid[i - 1][j - 1] = "@"
    return "\n".join(" ".join(row) for row in grid)

"""Command-line surface tying the meander, functional and kernel machinery together.

Exit codes: 0 success, 1 validation error, 2 regularity-check failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

from .algebra import (
    FAMILIES,
    GL,
    TYPE_A,
    TYPE_B,
    TYPE_C,
    SeaweedSpec,
    parse_spec,
    spec_to_json,
)
from .configuration import core_and_peaks
from .functionals import PeakPolicy, construct
from .kernel import (
    block_notation,
    generic_index_oracle,
    is_regular,
    relations_matrix,
)
from .meander import build_full_meander, build_meander, build_shortened_meander, index
from .render import ascii_matrix, meander_to_dot, meander_to_json
from .winding import (
    homotopy_type,
    index_from_homotopy,
    reduced_homotopy_type,
    signature,
    signature_str,
)


class CliError(Exception):
    pass


def _load_spec(args) -> SeaweedSpec:
    try:
        return parse_spec(args.spec, n=args.n)
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _emit(args, data: dict, text: str) -> None:
    print(json.dumps(data, sort_keys=True) if args.json else text)


def _cmd_meander(args) -> int:
    spec = _load_spec(args)
    tail = None
    if spec.family in (TYPE_B, TYPE_C):
        if args.full:
            m = build_full_meander(spec)
        else:
            m, tail = build_shortened_meander(spec)
    else:
        m = build_meander(spec)
    data = meander_to_json(m, tail)
    lines = [f"vertices: {m.v}"]
    lines.append("top:    " + " ".join(f"({a},{b})" for a, b in sorted(m.top)))
    lines.append("bottom: " + " ".join(f"({a},{b})" for a, b in sorted(m.bottom)))
    for c in m.components:
        lines.append(f"{c.kind}: {list(c.vertices)}")
    if tail is not None:
        lines.append(f"tail: {sorted(tail.tail)} aftertail: {sorted(tail.aftertail)}")
    _emit(args, data, "\n".join(lines))
    return 0


def _cmd_signature(args) -> int:
    spec = _load_spec(args)
    sig = signature(spec)
    _emit(args, {"spec": spec_to_json(spec), "signature": signature_str(sig)}, signature_str(sig))
    return 0


def _cmd_homotopy(args) -> int:
    spec = _load_spec(args)
    if spec.family in (TYPE_B, TYPE_C):
        h = reduced_homotopy_type(spec)
    else:
        h = homotopy_type(signature(spec))
    data = {"sizes": list(h.sizes)}
    if h.colors:
        data["colors"] = list(h.colors)
    _emit(args, data, str(h))
    return 0


def _cmd_index(args) -> int:
    spec = _load_spec(args)
    ind = index(spec)
    _emit(args, {"spec": spec_to_json(spec), "index": ind}, str(ind))
    return 0


def _cmd_core(args) -> int:
    spec = _load_spec(args)
    core = core_and_peaks(spec)
    if args.format == "ascii":
        print(ascii_matrix(spec, core=core))
        return 0
    data = []
    for comp in core.components:
        data.append(
            {
                "component": comp.component_id,
                "size": comp.size,
                "blocks": [list(b) for b in comp.path_runs],
                "part_a": [list(b) for b in comp.part_a],
                "part_b": [list(b) for b in comp.part_b],
                "peaks": [
                    {"rows": list(p.rows), "cols": list(p.cols), "side": p.side}
                    for p in comp.peaks
                ],
            }
        )
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        for entry in data:
            print(
                f"component {entry['component']} (size {entry['size']}): "
                f"blocks {entry['blocks']}, peaks {[(p['rows'], p['cols']) for p in entry['peaks']]}"
            )
    return 0


def _functional_for(args, spec: SeaweedSpec):
    policy = PeakPolicy.parse(args.peaks)
    return construct(spec, args.base, policy)


def _cmd_construct(args) -> int:
    spec = _load_spec(args)
    f = _functional_for(args, spec)
    if args.format == "ascii":
        print(ascii_matrix(spec, functional=f))
        return 0
    if args.json or args.format == "json":
        print(json.dumps(f.to_json(), sort_keys=True))
        return 0
    print(" + ".join(f"e*[{i},{j}]" if c == 1 else f"{c}*e*[{i},{j}]" for (i, j), c in f.terms()))
    return 0


def _cmd_relations(args) -> int:
    spec = _load_spec(args)
    f = _functional_for(args, spec)
    rel = relations_matrix(spec, f)
    core = core_and_peaks(spec)
    if args.json:
        data = rel.to_json()
        data["blocks"] = block_notation(rel, core)
        print(json.dumps(data, sort_keys=True))
    else:
        print(f"dim = {rel.dim}")
        print(f"blocks = {block_notation(rel, core)}")
        for (i, j), form in sorted(rel.cells.items()):
            if not form.is_zero():
                print(f"B[{i},{j}] = {form.render()}")
    return 0


def _cmd_verify(args) -> int:
    spec = _load_spec(args)
    f = _functional_for(args, spec)
    report = is_regular(spec, f)
    rel = relations_matrix(spec, f)
    core = core_and_peaks(spec)
    blocks = block_notation(rel, core)
    data = {
        "spec": spec_to_json(spec),
        "regular": report.regular,
        "dim": report.kernel_dim,
        "index": report.index,
        "blocks": blocks,
    }
    text = f"regular: {str(report.regular).lower()}, dim={report.kernel_dim}, index={report.index}, blocks={blocks}"
    _emit(args, data, text)
    return 0 if report.regular else 2


def _cmd_oracle(args) -> int:
    spec = _load_spec(args)
    if args.json and args.seed is None:
        raise CliError("--json oracle output requires an explicit --seed")
    seed = 0 if args.seed is None else args.seed
    value = generic_index_oracle(spec, samples=args.samples, seed=seed)
    _emit(args, {"spec": spec_to_json(spec), "oracle": value, "samples": args.samples, "seed": seed}, str(value))
    return 0


def _compositions(total: int):
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in _compositions(total - first):
            yield (first,) + rest


def _family_specs(family: str, max_n: int):
    if family in (GL, TYPE_A):
        for n in range(1, max_n + 1):
            total = n if family == GL else n + 1
            tops = list(_compositions(total))
            for top in tops:
                for bottom in tops:
                    yield SeaweedSpec(family, top, bottom, n)
    else:
        for n in range(1, max_n + 1):
            partials = [()]
            for k in range(1, n + 1):
                partials.extend(_compositions(k))
            for top in partials:
                for bottom in partials:
                    yield SeaweedSpec(family, top, bottom, n)


@dataclass
class SweepReport:
    processed: int
    failures: list[str]
    elapsed: float


def enumerate_sweep(
    family: str,
    max_n: int,
    budget: int | None = None,
    samples: int = 8,
    seed: int = 0,
    canonical: bool = False,
    log_stream=None,
    check_oracle: bool | None = None,
) -> SweepReport:
    """Sweep composition pairs: construct, verify regularity, compare oracle vs index.

    Oracle agreement is checked for gl specs (resampling once on a mismatch);
    pass ``check_oracle`` to override.  Failures are collected, not raised.
    """
    start = time.time()
    if check_oracle is None:
        check_oracle = family == GL
    processed = 0
    failures: list[str] = []
    seen = set()
    for spec in _family_specs(family, max_n):
        if budget is not None and processed >= budget:
            break
        if canonical:
            key = (spec.family, min(spec.top, spec.bottom), max(spec.top, spec.bottom), spec.n)
            if key in seen:
                continue
            seen.add(key)
        processed += 1
        ind = index(spec)
        f = construct(spec)
        report = is_regular(spec, f)
        ok = report.regular
        oracle_value = None
        if check_oracle:
            oracle_value = generic_index_oracle(spec, samples=samples, seed=seed)
            if oracle_value != ind:
                oracle_value = generic_index_oracle(spec, samples=samples, seed=seed + 1)
            ok = ok and oracle_value == ind
        if log_stream is not None:
            sig = signature(spec)
            log_stream.write(
                json.dumps(
                    {
                        "spec": str(spec),
                        "signature": signature_str(sig),
                        "homotopy": list(homotopy_type(sig).sizes),
                        "index": ind,
                        "kernel_dim": report.kernel_dim,
                        "regular": report.regular,
                        "oracle": oracle_value,
                        "ok": ok,
                    },
                    sort_keys=True,
                )
                + "\n"
            )
        if not ok:
            failures.append(str(spec))
    return SweepReport(processed, failures, time.time() - start)


def _cmd_enumerate(args) -> int:
    stream = open(args.log, "w") if args.log else None
    try:
        report = enumerate_sweep(
            args.family,
            args.max_n,
            budget=args.budget,
            samples=args.samples,
            seed=args.seed or 0,
            canonical=args.canonical,
            log_stream=stream,
        )
    finally:
        if stream:
            stream.close()
    data = {
        "family": args.family,
        "max_n": args.max_n,
        "processed": report.processed,
        "failures": report.failures,
        "elapsed_sec": round(report.elapsed, 3),
    }
    _emit(args, data, f"processed {report.processed} specs, {len(report.failures)} failures")
    return 2 if report.failures else 0


def _cmd_render(args) -> int:
    spec = _load_spec(args)
    if spec.family in (TYPE_B, TYPE_C):
        m, tail = build_shortened_meander(spec)
    else:
        m, tail = build_meander(spec), None
    if args.format == "dot":
        print(meander_to_dot(m))
    elif args.format == "json":
        print(json.dumps(meander_to_json(m, tail), sort_keys=True))
    else:
        print(ascii_matrix(spec))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="seaweed", description=__doc__)
    parser.add_argument("--json", action="store_true", help="emit machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_spec_command(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("spec", help='seaweed spec, e.g. "gl 4|1 / 2|1|2"')
        p.add_argument("--n", type=int, default=None, help="family rank (required for B/C)")
        p.set_defaults(func=func)
        return p

    p = add_spec_command("meander", _cmd_meander, help="arcs and components")
    p.add_argument("--full", action="store_true", help="B/C: use the mirrored full meander")
    add_spec_command("signature", _cmd_signature, help="winding-down move sequence")
    add_spec_command("homotopy", _cmd_homotopy, help="homotopy type (colored for B/C)")
    add_spec_command("index", _cmd_index, help="index via the meander formula")
    p = add_spec_command("core", _cmd_core, help="core blocks, parity classes and peaks")
    p.add_argument("--format", choices=["text", "ascii"], default="text")

    def add_construct_args(p):
        p.add_argument("--base", default="F", help="base functional kind (F,G,H,K,Gp,Hp,Kp,Fp)")
        p.add_argument(
            "--peaks",
            default="diag",
            help='peak policy: "diag", "anti" or "mixed:0=anti,2=diag"',
        )

    p = add_spec_command("construct", _cmd_construct, help="build the component functional")
    add_construct_args(p)
    p.add_argument("--format", choices=["terms", "ascii", "json"], default="terms")
    p = add_spec_command("relations", _cmd_relations, help="relations matrix of the kernel")
    add_construct_args(p)
    p = add_spec_command("verify", _cmd_verify, help="construct, solve and report regularity")
    add_construct_args(p)
    p = add_spec_command("oracle", _cmd_oracle, help="randomized generic-index oracle")
    p.add_argument("--samples", type=int, default=8)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("enumerate", help="sweep composition pairs and verify all of them")
    p.add_argument("--family", choices=list(FAMILIES), default=GL)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--samples", type=int, default=8)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--canonical", action="store_true", help="skip flips of already-seen types")
    p.add_argument("--log", default=None, help="write a JSONL run log")
    p.set_defaults(func=_cmd_enumerate)

    p = add_spec_command("render", _cmd_render, help="render the meander / matrix shape")
    p.add_argument("--format", choices=["dot", "ascii", "json"], default="dot")
    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))

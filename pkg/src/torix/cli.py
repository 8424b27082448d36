"""``torix`` command line: every library operation over JSON files.

Exit status 0 carries a verdict payload (a negative verdict is still data),
2 means the input failed validation, 1 an internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import bundle as bd
from . import fan as fn
from . import generate as gen
from . import resolution as rs
from . import serialize as io
from . import sheaf as sh
from . import stability as st
from .exactlin import ProjectiveLinePoint, format_scalar


class InputError(ValueError):
    pass


def _blowups(text: Optional[str]) -> list[int]:
    if not text:
        return []
    return [int(x) for x in text.split(",") if x.strip()]


def _fan(args) -> Optional[fn.Fan]:
    if getattr(args, "fan", None) is None:
        if getattr(args, "blowup", None):
            raise InputError("--blowup needs --fan")
        return None
    return io.resolve_fan_arg(args.fan, _blowups(args.blowup))


def _load(path: str):
    try:
        return io.load_json(path), Path(path).resolve().parent
    except FileNotFoundError:
        raise InputError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})")


def _bundle(args):
    doc, base = _load(args.bundle)
    return io.bundle_from_json(doc, _fan(args), base)


def _presentation(args) -> sh.SheafPresentation:
    doc, base = _load(args.presentation)
    return io.presentation_from_json(doc, _fan(args), base)


def _point(p: ProjectiveLinePoint) -> list[str]:
    return io.point_to_json(p)


# -- subcommands ---------------------------------------------------------------

def cmd_fan(args) -> dict:
    f = _fan(args) or fn.make_projective_plane()
    fn.validate(f)
    out = io.fan_to_json(f)
    out["valid"] = True
    if args.action in ("make", "blowup", "irrelevant"):
        out["cones"] = [list(c) for c in f.cones()]
    if args.action == "irrelevant":
        out["irrelevant"] = [list(g) for g in fn.irrelevant_generators(f)]
    return out


def cmd_bundle(args) -> dict:
    b, twist = _bundle(args)
    part = bd.coarse_partition(b)
    out: dict = {"partition": io.partition_to_json(part), "s": part.s}
    if args.action == "normalize":
        out = io.bundle_to_json(b)
        out["twist"] = list(twist)
    elif args.action == "split":
        split = bd.split_summands(b)
        out["splits"] = split is not None
        out["summands"] = [list(d) for d in split] if split else None
    return out


def cmd_resolve(args) -> dict:
    b, _ = _bundle(args)
    try:
        r = rs.build_resolution(b)
    except rs.Splits as exc:
        split = bd.split_summands(b)
        return {"splits": True, "s": exc.s, "summands": [list(d) for d in split]}
    out = io.resolution_to_json(r)
    out["sequence"] = r.display()
    return out


def cmd_check(args) -> dict:
    if args.bundle:
        b, _ = _bundle(args)
        r = rs.build_resolution(b)
        report = rs.check_local_freeness(r)
    else:
        doc, base = _load(args.resolution)
        f = io._doc_fan(doc, _fan(args), base)
        jumps = [int(j) for j in doc["jumps"]]
        part = io.partition_from_json(doc["partition"], [r for r, j in enumerate(jumps) if j > 0])
        mm = rs.MonomialMatrix.build(jumps, part, io.mat_from_json(doc["coeffs"], part.s - 2))
        report = rs.check_local_freeness(mm, f)
    return report.to_json()


def cmd_bidual(args) -> dict:
    p = _presentation(args)
    b = sh.bidual(p)
    out = io.bundle_to_json(b)
    out["coarse_partition"] = io.partition_to_json(bd.coarse_partition(b))
    return out


def cmd_skyscraper(args) -> dict:
    p = _presentation(args)
    return sh.skyscraper_support(p, args.radius).to_json()


def cmd_oracle(args) -> dict:
    p = _presentation(args)
    k = args.cone % p.fan.num_rays
    grid = sh.chart_graded_dims(p, k, args.radius)
    b = sh.bidual(p)
    cells = []
    mismatches = 0
    for (u, v), d in sorted(grid.by_pairings.items()):
        m = fn.character_from_pairings(p.fan, k, u, v)
        expected = bd.sigma_family_dim(b, k, m)
        mismatches += d != expected
        cells.append({"pairings": [u, v], "character": list(m), "dim": d, "bidual_dim": expected})
    return {"cone": k, "radius": grid.radius, "cells": cells,
            "matches_bidual": mismatches == 0, "mismatches": mismatches}


def _sheaf(path: str, args):
    doc, base = _load(path)
    return io.sheaf_from_json(doc, _fan(args), base)


def cmd_stability(args) -> dict:
    if args.config:
        doc, _ = _load(args.config)
        mode = st.Mode(args.mode)
        if mode is st.Mode.CONFIG:
            c = io.config_from_json(doc)
            if c.n > 12:
                raise InputError("at most 12 points")
            return st.config_stability(c).to_json()
        a = io.matrix_from_config_doc(doc)
        if a.rows > 12:
            raise InputError("at most 12 rows")
        return st.grass_stability(a, mode).to_json()
    path = args.bundle or args.presentation
    if path is None:
        raise InputError("pass --config, --bundle or --presentation")
    x, part = _sheaf(path, args)
    return st.p_stability(x, part).to_json()


def cmd_equiv(args) -> dict:
    x, px = _sheaf(args.a, args)
    y, py = _sheaf(args.b, args)
    return {"equivalent": st.p_equivalent(x, y, px, py)}


def cmd_moduli(args) -> dict:
    if args.config:
        doc, _ = _load(args.config)
        c = io.config_from_json(doc)
    else:
        path = args.bundle or args.presentation
        if path is None:
            raise InputError("pass --bundle, --presentation or --config")
        x, part = _sheaf(path, args)
        cols, _, _ = st._columns(x, part)
        c = st.PointConfig.on_line([col.pair for col in cols])
    verdict = st.config_stability(c)
    out: dict = {"s": c.n, "verdict": verdict.to_json()}
    if c.n == 4 and c.m == 2 and verdict.status.semistable:
        pt = st.moduli_coordinate_s4(c)
        out["coordinate"] = _point(pt)
        out["value"] = "infinity" if pt.value is None else format_scalar(pt.value)
    elif verdict.status is st.Status.PROPERLY_SEMISTABLE:
        split = sorted(sorted(h) for h in st._half_split([ProjectiveLinePoint(*p) for p in c.points]))
        out["class"] = {"kind": "properly-semistable", "split": split}
    else:
        out["class"] = {"kind": verdict.status.value}
    return out


def cmd_classes(args) -> dict:
    f = _fan(args)
    s = args.s if args.s is not None else (f.num_rays if f is not None else None)
    if s is None:
        raise InputError("pass --s or --fan")
    return st.semistable_classes(s, f).to_json()


def cmd_gen(args) -> dict:
    rng = random.Random(args.seed)
    f = _fan(args) or fn.make_projective_plane()
    if args.kind == "bundle":
        return io.bundle_to_json(gen.random_bundle(rng, f, args.max_jump, min_parts=args.min_parts))
    if args.kind == "presentation":
        return io.resolution_to_json(gen.random_refined_presentation(rng, f, args.max_jump))
    if args.kind == "config":
        target = st.Status(args.target) if args.target else None
        return io.config_to_json(gen.random_line_config(rng, args.n, target))
    if args.kind == "matrix":
        return {"matrix": io.mat_to_json(gen.random_full_rank(rng, args.n, args.m))}
    raise InputError(f"unknown kind {args.kind}")


# -- plumbing ------------------------------------------------------------------

def _text(doc, styled: bool, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(doc, dict):
        for key in sorted(doc):
            val = doc[key]
            name = f"\033[1m{key}\033[0m" if styled else key
            if isinstance(val, (dict, list)) and val and any(isinstance(v, (dict, list)) for v in
                                                          (val.values() if isinstance(val, dict) else val)):
                lines.append(f"{pad}{name}:")
                lines.append(_text(val, styled, indent + 1))
            else:
                lines.append(f"{pad}{name}: {json.dumps(val) if not isinstance(val, str) else val}")
    elif isinstance(doc, list):
        for item in doc:
            lines.append(f"{pad}- {json.dumps(item)}")
    else:
        lines.append(f"{pad}{doc}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torix", description=__doc__.splitlines()[0])
    parser.add_argument("--output", choices=["json", "text"], default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--fan", help="p2 | hirzebruch:a | file:<path>")
        p.add_argument("--blowup", help="cone indices k[,k2,...] blown up left to right")
        p.add_argument("--output", choices=["json", "text"], default=argparse.SUPPRESS)
        p.set_defaults(func=func)
        return p

    p = add("fan", cmd_fan, "make, validate, blow up a fan; irrelevant ideal")
    p.add_argument("action", nargs="?", default="make",
                   choices=["make", "validate", "blowup", "irrelevant"])

    p = add("bundle", cmd_bundle, "normalize twists, coarse partition, splitting")
    p.add_argument("action", nargs="?", default="partition", choices=["normalize", "partition", "split"])
    p.add_argument("--bundle", required=True)

    p = add("resolve", cmd_resolve, "Euler-type resolution of a bundle")
    p.add_argument("--bundle", required=True)

    p = add("check", cmd_check, "local freeness report")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--resolution")
    g.add_argument("--bundle")

    p = add("bidual", cmd_bidual, "reflexive hull of a presentation")
    p.add_argument("--presentation", required=True)

    p = add("skyscraper", cmd_skyscraper, "support and lengths of bidual / sheaf")
    p.add_argument("--presentation", required=True)
    p.add_argument("--radius", type=int)

    p = add("oracle", cmd_oracle, "chart graded dimensions against the bidual")
    p.add_argument("--presentation", required=True)
    p.add_argument("--cone", type=int, required=True)
    p.add_argument("--radius", type=int)

    p = add("stability", cmd_stability, "GIT stability verdicts")
    p.add_argument("--config")
    p.add_argument("--bundle")
    p.add_argument("--presentation")
    p.add_argument("--mode", choices=[m.value for m in st.Mode], default="config")

    p = add("equiv", cmd_equiv, "P-equivalence of two sheaves")
    p.add_argument("a")
    p.add_argument("b")

    p = add("moduli", cmd_moduli, "four-point moduli coordinate or class descriptor")
    p.add_argument("--bundle")
    p.add_argument("--presentation")
    p.add_argument("--config")

    p = add("classes", cmd_classes, "properly semistable classes for even s")
    p.add_argument("--s", type=int)

    p = add("gen", cmd_gen, "seeded random inputs")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--kind", choices=["bundle", "presentation", "config", "matrix"], default="bundle")
    p.add_argument("--target", choices=[s.value for s in st.Status])
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--max-jump", type=int, default=3)
    p.add_argument("--min-parts", type=int, default=0)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = args.func(args)
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        msg = str(exc) if not isinstance(exc, KeyError) else f"missing field {exc}"
        sys.stdout.write(io.dumps({"error": msg, "kind": type(exc).__name__}))
        return 2
    except Exception as exc:  # noqa: BLE001
        sys.stdout.write(io.dumps({"error": f"internal: {exc}", "kind": type(exc).__name__}))
        return 1
    if args.output == "text":
        styled = not os.environ.get("TORIX_NO_COLOR") and sys.stdout.isatty()
        sys.stdout.write(_text(doc, styled) + "\n")
    else:
        sys.stdout.write(io.dumps(doc))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

"""JSON documents for fans, bundles, resolutions, presentations and configs.

Scalars are written as ``"p/q"`` strings (``"p"`` for integers) and
projective points as two-element arrays of such strings.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional

from .bundle import BundleData, FiltrationTriple, Partition, coarse_partition, normalize_twist
from .exactlin import Mat, ProjectiveLinePoint, format_scalar, scalar
from .fan import Fan, make_fan, parse_fan_spec
from .resolution import MonomialMatrix, MonomialResolution
from .sheaf import SheafPresentation
from .stability import PointConfig


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def load_json(path: str | Path) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def point_to_json(p) -> list[str]:
    return [format_scalar(x) for x in tuple(p)]


def mat_to_json(m: Mat) -> list[list[str]]:
    return [[format_scalar(x) for x in m.row(i)] for i in range(m.rows)]


def mat_from_json(rows, cols: Optional[int] = None) -> Mat:
    return Mat.from_rows([[scalar(x) for x in r] for r in rows], cols)


def fan_to_json(f: Fan) -> dict:
    return {"rays": [list(r) for r in f.rays]}


def fan_from_json(doc, base: Optional[Path] = None) -> Fan:
    if isinstance(doc, str):
        return resolve_fan_arg(doc, base=base)
    if isinstance(doc, dict) and "rays" in doc:
        return make_fan(doc["rays"])
    raise ValueError(f"cannot read a fan from {doc!r}")


def resolve_fan_arg(spec: str, blowups=(), base: Optional[Path] = None) -> Fan:
    """``p2``, ``hirzebruch:a`` or ``file:<path>``, then blow-ups left to right."""
    from .fan import blow_up, validate
    if spec.startswith("file:"):
        path = Path(spec[5:])
        if base is not None and not path.is_absolute():
            path = base / path
        f = fan_from_json(load_json(path))
        for k in blowups:
            f = blow_up(f, k)
        validate(f)
        return f
    return parse_fan_spec(spec, blowups)


def _doc_fan(doc: dict, fan: Optional[Fan], base: Optional[Path]) -> Fan:
    if fan is not None:
        return fan
    if "fan" not in doc:
        raise ValueError("no fan given: pass --fan or include a \"fan\" field")
    return fan_from_json(doc["fan"], base)


def line_from_json(x) -> ProjectiveLinePoint:
    if not isinstance(x, (list, tuple)) or len(x) != 2:
        raise ValueError(f"a line is a pair of scalars, got {x!r}")
    return ProjectiveLinePoint(scalar(x[0]), scalar(x[1]))


def bundle_from_json(doc: dict, fan: Optional[Fan] = None, base: Optional[Path] = None,
                     ) -> tuple[BundleData, tuple[int, ...]]:
    """Bundle data plus the twist applied; raw ``i1/i2`` triples are normalized."""
    f = _doc_fan(doc, fan, base)
    triples = []
    for entry in doc["filtrations"]:
        line = line_from_json(entry["line"]) if entry.get("line") is not None else None
        if "jump" in entry:
            j = int(entry["jump"])
            triples.append(FiltrationTriple(-j, 0, line))
        else:
            triples.append(FiltrationTriple(int(entry["i1"]), int(entry["i2"]), line))
    return normalize_twist(f, triples)


def bundle_to_json(b: BundleData) -> dict:
    filts = []
    for j, line in zip(b.jumps, b.lines):
        e: dict = {"jump": j}
        if line is not None:
            e["line"] = point_to_json(line)
        filts.append(e)
    return {"fan": fan_to_json(b.fan), "filtrations": filts}


def partition_to_json(p: Partition) -> list[list[int]]:
    return [list(part) for part in p.parts]


def partition_from_json(parts, support=None) -> Partition:
    return Partition.make(parts, support)


def resolution_to_json(r: MonomialResolution | SheafPresentation) -> dict:
    return {
        "fan": fan_to_json(r.fan),
        "partition": partition_to_json(r.matrix.partition),
        "jumps": list(r.matrix.jumps),
        "coeffs": mat_to_json(r.matrix.coeffs),
        "cokernel_map": mat_to_json(r.cokernel_map),
        "row_exponents": [list(e) for e in r.matrix.row_exponents],
    }


def presentation_from_json(doc: dict, fan: Optional[Fan] = None,
                           base: Optional[Path] = None) -> SheafPresentation:
    f = _doc_fan(doc, fan, base)
    jumps = [int(j) for j in doc["jumps"]]
    if len(jumps) != f.num_rays:
        raise ValueError(f"expected {f.num_rays} jumps")
    support = [r for r, j in enumerate(jumps) if j > 0]
    part = partition_from_json(doc["partition"], support)
    s = part.s
    if "cokernel_map" in doc and "coeffs" in doc:
        mm = MonomialMatrix.build(jumps, part, mat_from_json(doc["coeffs"], s - 2))
        return SheafPresentation(f, mm, mat_from_json(doc["cokernel_map"], s))
    if "cokernel_map" in doc:
        cm = mat_from_json(doc["cokernel_map"], s)
        return SheafPresentation.from_columns(f, jumps, part, [cm.col(i) for i in range(cm.cols)])
    if "coeffs" in doc:
        return SheafPresentation.from_coeffs(f, jumps, part, mat_from_json(doc["coeffs"], s - 2))
    raise ValueError("a presentation needs \"coeffs\" or \"cokernel_map\"")


def config_to_json(c: PointConfig) -> dict:
    return {"m": c.m, "points": [point_to_json(p) for p in c.points]}


def config_from_json(doc: dict) -> PointConfig:
    if "points" in doc:
        m = int(doc.get("m", len(doc["points"][0]) if doc["points"] else 2))
        return PointConfig(m, tuple(tuple(scalar(x) for x in p) for p in doc["points"]))
    if "matrix" in doc:
        return PointConfig(len(doc["matrix"][0]),
                           tuple(tuple(scalar(x) for x in r) for r in doc["matrix"]))
    raise ValueError("a configuration needs \"points\" or \"matrix\"")


def matrix_from_config_doc(doc: dict) -> Mat:
    """The n x m matrix whose rows are the points (or the given matrix)."""
    rows = doc.get("matrix", doc.get("points"))
    if rows is None:
        raise ValueError("a matrix document needs \"matrix\" or \"points\"")
    return mat_from_json(rows)


def sheaf_from_json(doc: dict, fan: Optional[Fan] = None, base: Optional[Path] = None):
    """A bundle (with optional partition) or a presentation, by document shape."""
    if "filtrations" in doc:
        b, _ = bundle_from_json(doc, fan, base)
        part = (partition_from_json(doc["partition"], b.support)
                if "partition" in doc else coarse_partition(b))
        return b, part
    p = presentation_from_json(doc, fan, base)
    return p, p.partition

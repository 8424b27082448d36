"""GIT stability of point configurations and Grassmannian points.

Configurations of n points in P^{m-1} are tested with Mumford's numerical
criterion ``#{i : p_i in L} < (n/m) dim L`` over proper nonzero subspaces L,
and points of Gr(m, n) under the coordinate torus with
``dim(A cap L) < (m/n) dim L`` over coordinate subspaces. Sheaf stability
and equivalence are reduced to configurations of cokernel columns on P^1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Optional, Sequence, Union

from .bundle import BundleData, Partition, coarse_partition, is_refinement
from .exactlin import (Mat, ProjectiveLinePoint, column_echelon, det2, kernel_basis,
                       normalize_vector, rank)
from .fan import Fan
from .sheaf import SheafPresentation, bidual


class StabilityError(ValueError):
    pass


class RankDeficient(StabilityError):
    pass


class RefinementMismatch(StabilityError):
    pass


class NotSemistable(StabilityError):
    pass


class ShapeMismatch(StabilityError):
    pass


class Unstable(StabilityError):
    pass


class OddS(StabilityError):
    pass


class Status(str, enum.Enum):
    STABLE = "stable"
    PROPERLY_SEMISTABLE = "properly-semistable"
    UNSTABLE = "unstable"

    @property
    def semistable(self) -> bool:
        return self is not Status.UNSTABLE


@dataclass(frozen=True)
class StabilityVerdict:
    status: Status
    witness: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if self.status is not Status.STABLE and self.witness is None:
            raise ValueError("non-stable verdicts need a witness")

    def to_json(self) -> dict:
        return {"status": self.status.value,
                "witness": list(self.witness) if self.witness is not None else None}


@dataclass(frozen=True)
class PointConfig:
    m: int
    points: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        pts = tuple(normalize_vector(p) for p in self.points)
        if any(len(p) != self.m for p in pts):
            raise StabilityError(f"points must have {self.m} homogeneous coordinates")
        object.__setattr__(self, "points", pts)

    @classmethod
    def on_line(cls, points: Sequence) -> "PointConfig":
        return cls(2, tuple(tuple(p) for p in points))

    @property
    def n(self) -> int:
        return len(self.points)


def _verdict(checks) -> StabilityVerdict:
    """Fold (count_scaled, bound_scaled, witness) triples into a verdict.

    Stable needs count < bound everywhere; semistable needs count <= bound.
    The witness is the worst offender, ties broken by enumeration order.
    """
    worst_unstable = None
    equality = None
    for lhs, rhs, witness in checks:
        if lhs > rhs:
            if worst_unstable is None or lhs - rhs > worst_unstable[0]:
                worst_unstable = (lhs - rhs, witness)
        elif lhs == rhs and equality is None:
            equality = witness
    if worst_unstable is not None:
        return StabilityVerdict(Status.UNSTABLE, worst_unstable[1])
    if equality is not None:
        return StabilityVerdict(Status.PROPERLY_SEMISTABLE, equality)
    return StabilityVerdict(Status.STABLE)


def _in_span(basis: Mat, v: Sequence) -> bool:
    return rank(basis.hstack(Mat.from_cols([v]))) == basis.cols


def _line_verdict(points: Sequence) -> StabilityVerdict:
    """Verdict for normalized points on the line: the subspaces are the points."""
    n = len(points)
    groups: dict = {}
    for i, p in enumerate(points):
        groups.setdefault(p, []).append(i)
    return _verdict((2 * len(idx), n, tuple(idx)) for idx in groups.values())


def config_stability(c: PointConfig) -> StabilityVerdict:
    """Numerical criterion over the subspaces spanned by subsets of the points."""
    n, m = c.n, c.m
    if n < 1:
        raise StabilityError("need at least one point")
    distinct: list[tuple] = []
    for p in c.points:
        if p not in distinct:
            distinct.append(p)
    if m == 2:
        return _line_verdict(c.points)
    seen = set()

    def checks():
        for size in range(1, m):
            for gens in combinations(distinct, size):
                span = column_echelon(Mat.from_cols(gens))
                dim = span.cols
                if dim >= m or span in seen:
                    continue
                seen.add(span)
                inside = tuple(i for i, p in enumerate(c.points) if _in_span(span, p))
                # #inside < (n/m) dim  <=>  m * #inside < n * dim
                yield m * len(inside), n * dim, inside

    return _verdict(checks())


class Mode(str, enum.Enum):
    CONFIG = "config"
    GRASS_TORUS = "grass-torus"
    GRASS_GL = "grass-gl"


def _intersection_dim(a: Mat, coords: Sequence[int]) -> int:
    n, m = a.shape
    e = Mat.from_cols([[Fraction(int(i == j)) for i in range(n)] for j in coords], n)
    return m + len(coords) - rank(a.hstack(e))


def grass_stability(a: Mat, mode: Mode | str = Mode.GRASS_TORUS) -> StabilityVerdict:
    """Stability of the column span of the n x m matrix ``a`` in Gr(m, n).

    In torus mode every proper nonempty coordinate subspace is tested; the
    witness is the coordinate set. In full-GL mode the extremal subspaces are
    those spanned by subsets of the columns of ``a``, and the witness lists
    those column indices.
    """
    mode = Mode(mode)
    n, m = a.shape
    if rank(a) != m:
        raise RankDeficient(f"matrix must have full column rank {m}")
    if mode is Mode.GRASS_TORUS:
        def checks():
            for size in range(1, n):
                for coords in combinations(range(n), size):
                    d = _intersection_dim(a, coords)
                    # d < (m/n) |S|  <=>  n * d < m * |S|
                    yield n * d, m * size, coords
        return _verdict(checks())
    if mode is Mode.GRASS_GL:
        def checks():
            for size in range(1, m + 1):
                for cols in combinations(range(m), size):
                    sub = a.select_cols(cols)
                    dim_l = rank(sub)
                    if dim_l >= n:
                        continue
                    # L inside A, so dim(A cap L) = dim L.
                    yield n * dim_l, m * dim_l, cols
        return _verdict(checks())
    raise StabilityError("config mode takes a point configuration")


def rows_as_config(a: Mat) -> PointConfig:
    return PointConfig(a.cols, tuple(a.row(i) for i in range(a.rows)))


def dual_presentation(a: Mat) -> Mat:
    """(n-m) x n matrix with rows spanning the annihilator of the columns of ``a``."""
    if rank(a) != a.cols:
        raise RankDeficient(f"matrix must have full column rank {a.cols}")
    return kernel_basis(a.T).T


def subspace_equal(a: Mat, b: Mat) -> bool:
    return column_echelon(a) == column_echelon(b)


# -- sheaves -----------------------------------------------------------------

SheafLike = Union[BundleData, SheafPresentation]


def _columns(x: SheafLike, partition: Optional[Partition]) -> tuple[list[ProjectiveLinePoint], Partition, tuple[int, ...]]:
    """Column lines of the cokernel map, checking the partition against the bidual."""
    if isinstance(x, SheafPresentation):
        if partition is not None and partition.parts != x.partition.parts:
            raise RefinementMismatch("partition differs from the presentation's")
        partition = x.partition
        b = bidual(x)
        cols = [x.line(i) for i in range(x.s)]
    else:
        b = x
        if partition is None:
            partition = coarse_partition(b)
            return [b.lines[p[0]] for p in partition.parts], partition, b.jumps
        if set(partition.support) != set(b.support):
            raise RefinementMismatch("partition does not cover the rays with positive jump")
        cols = [b.lines[p[0]] for p in partition.parts]
    if is_refinement(partition, coarse_partition(b)) is None:
        raise RefinementMismatch("partition does not refine the coarse partition of the bidual")
    return cols, partition, b.jumps


def p_stability(x: SheafLike, partition: Optional[Partition] = None) -> StabilityVerdict:
    cols, _, _ = _columns(x, partition)
    return _line_verdict(cols)


def projective_map(src: Sequence[ProjectiveLinePoint], dst: Sequence[ProjectiveLinePoint]) -> Optional[Mat]:
    """The 2x2 matrix sending three distinct points to three distinct points."""
    def frame(pts):
        # Columns c0*p0, c1*p1 with c0*p0 + c1*p1 = p2, by Cramer's rule.
        p0, p1, p2 = (tuple(p) for p in pts)
        d = det2(p0, p1)
        c0, c1 = det2(p2, p1) / d, det2(p0, p2) / d
        return ((c0 * p0[0], c1 * p1[0]), (c0 * p0[1], c1 * p1[1]))
    (a, b), (c, d) = frame(src)
    (e, f), (g, h) = frame(dst)
    det = a * d - b * c
    # dst frame times the inverse of the src frame
    return Mat.from_rows([[(e * d - f * c) / det, (f * a - e * b) / det],
                          [(g * d - h * c) / det, (h * a - g * b) / det]])


def _half_split(cols: Sequence[ProjectiveLinePoint]) -> frozenset:
    s = len(cols)
    for c in cols:
        idx = frozenset(i for i, d in enumerate(cols) if d == c)
        if 2 * len(idx) == s:
            return frozenset({idx, frozenset(range(s)) - idx})
    raise StabilityError("no half-size coincidence")


def p_equivalent(x: SheafLike, y: SheafLike, px: Optional[Partition] = None,
                 py: Optional[Partition] = None) -> bool:
    cx, part_x, jx = _columns(x, px)
    cy, part_y, jy = _columns(y, py)
    if len(cx) != len(cy) or tuple(jx) != tuple(jy):
        raise ShapeMismatch("sheaves differ in jumps or number of parts")
    vx, vy = _line_verdict(cx), _line_verdict(cy)
    if not (vx.status.semistable and vy.status.semistable):
        raise NotSemistable("P-equivalence is defined on semistable sheaves")
    if vx.status != vy.status:
        return False
    if vx.status is Status.PROPERLY_SEMISTABLE:
        return _half_split(cx) == _half_split(cy)
    distinct = []
    for i, c in enumerate(cx):
        if all(cx[j] != c for j in distinct):
            distinct.append(i)
        if len(distinct) == 3:
            break
    if len(distinct) < 3:
        # Stable with at most two distinct points only happens for s < 3.
        return all((cx[i] == cx[j]) == (cy[i] == cy[j]) for i in range(len(cx)) for j in range(len(cx)))
    if len({cy[i] for i in distinct}) < 3:
        return False
    # The map fixed by the frame sends column i to column i exactly when the
    # cross-ratios against the frame agree; frame columns match by construction.
    fx = [cx[i] for i in distinct]
    fy = [cy[i] for i in distinct]
    return all(cross_ratio(*fx, cx[i]) == cross_ratio(*fy, cy[i])
               for i in range(len(cx)) if i not in distinct)


def cross_ratio(p1, p2, p3, p4) -> ProjectiveLinePoint:
    """((p4-p1)(p2-p3)) / ((p4-p3)(p2-p1)) as a homogeneous pair."""
    num = det2(p4, p1) * det2(p2, p3)
    den = det2(p4, p3) * det2(p2, p1)
    if num == 0 and den == 0:
        raise Unstable("three or more points coincide")
    return ProjectiveLinePoint(num, den)


def moduli_coordinate_s4(c: PointConfig) -> ProjectiveLinePoint:
    if c.m != 2 or c.n != 4:
        raise StabilityError("the four-point coordinate needs 4 points on the line")
    if not config_stability(c).status.semistable:
        raise Unstable("three or more points coincide")
    return cross_ratio(*c.points)


def coincidence_pairs(cols: Sequence) -> list[tuple[int, int]]:
    """Index pairs of proportional columns."""
    return [(i, j) for i, j in combinations(range(len(cols)), 2) if det2(cols[i], cols[j]) == 0]


@dataclass(frozen=True)
class SemistableClasses:
    count: int
    splits: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    locally_free: Optional[tuple[bool, ...]] = None

    def to_json(self) -> dict:
        out = {"count": self.count,
               "splits": [[list(a), list(b)] for a, b in self.splits]}
        if self.locally_free is not None:
            out["locally_free"] = list(self.locally_free)
            out["locally_free_count"] = sum(self.locally_free)
        return out


def split_is_locally_free(fan: Fan, partition: Partition, half: Sequence[int]) -> bool:
    """Both summands free: no cone has its rays in two different parts on one side."""
    owner = partition.part_of()
    side = set(half)
    for r0, r1 in fan.cones():
        if r0 in owner and r1 in owner and owner[r0] != owner[r1]:
            if (owner[r0] in side) == (owner[r1] in side):
                return False
    return True


def semistable_classes(s: int, fan: Optional[Fan] = None,
                       partition: Optional[Partition] = None) -> SemistableClasses:
    """The C(s, s/2)/2 balanced splits of s parts, one per boundary class."""
    if s % 2 or s < 4:
        raise OddS(f"need an even s >= 4, got {s}")
    everything = set(range(s))
    splits = []
    for half in combinations(range(s), s // 2):
        if 0 in half:
            splits.append((half, tuple(sorted(everything - set(half)))))
    assert len(splits) == comb(s, s // 2) // 2
    flags = None
    if fan is not None:
        if partition is None:
            partition = Partition.make([[r] for r in range(fan.num_rays)])
        if partition.s != s:
            raise ShapeMismatch(f"partition has {partition.s} parts, expected {s}")
        flags = tuple(split_is_locally_free(fan, partition, a) for a, _ in splits)
    return SemistableClasses(len(splits), tuple(splits), flags)

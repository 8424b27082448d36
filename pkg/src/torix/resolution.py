"""Euler-type monomial resolutions of rank-2 bundles and local freeness.

A resolution ``0 -> O^{s-2} -A-> (+)_i O(D_i) -> E -> 0`` is stored through
its coefficient matrix ``A'`` (s x (s-2)), the row monomials ``x^{Pi_i}``
(exponent ``jump`` on every ray of part ``i``), and the 2 x s cokernel map
whose columns are the images of the standard basis in the generic fiber.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

from .bundle import BundleData, Partition, coarse_partition
from .exactlin import Mat, ProjectiveLinePoint, cokernel_matrix, det, kernel_basis, rank
from .fan import ExponentVector, Fan


class ResolutionError(ValueError):
    pass


class Splits(ResolutionError):
    def __init__(self, s: int):
        super().__init__(f"coarse partition has {s} <= 2 parts; the bundle splits")
        self.s = s


class BadSupport(ResolutionError):
    def __init__(self, row: int):
        super().__init__(f"row {row}: exponent vector does not match its part")
        self.row = row


class RankDeficient(ResolutionError):
    pass


@dataclass(frozen=True)
class MonomialMatrix:
    coeffs: Mat
    row_exponents: tuple[ExponentVector, ...]
    partition: Partition
    degrees: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, jumps: Sequence[int], partition: Partition, coeffs: Mat) -> "MonomialMatrix":
        m = len(jumps)
        exps = []
        for part in partition.parts:
            members = set(part)
            exps.append(tuple(jumps[r] if r in members else 0 for r in range(m)))
        exps = tuple(exps)
        return cls(coeffs, exps, partition, exps)

    @property
    def s(self) -> int:
        return self.partition.s

    @property
    def jumps(self) -> tuple[int, ...]:
        m = len(self.row_exponents[0]) if self.row_exponents else 0
        return tuple(sum(e[r] for e in self.row_exponents) for r in range(m))


def validate_monomial_matrix(mm: MonomialMatrix) -> None:
    s = mm.partition.s
    if len(mm.row_exponents) != s or mm.coeffs.rows != s:
        raise ResolutionError(f"expected {s} rows")
    if mm.coeffs.cols != s - 2:
        raise ResolutionError(f"expected {s - 2} coefficient columns, got {mm.coeffs.cols}")
    for i, (part, exp) in enumerate(zip(mm.partition.parts, mm.row_exponents)):
        supp = {r for r, e in enumerate(exp) if e != 0}
        if not supp or supp != set(part) or any(e < 0 for e in exp):
            raise BadSupport(i)
        if tuple(mm.degrees[i]) != tuple(exp):
            raise BadSupport(i)
    if rank(mm.coeffs) != s - 2:
        raise RankDeficient(f"coefficient matrix has rank {rank(mm.coeffs)} < {s - 2}")


@dataclass(frozen=True)
class MonomialResolution:
    fan: Fan
    matrix: MonomialMatrix
    cokernel_map: Mat

    @property
    def source_rank(self) -> int:
        return self.matrix.s - 2

    @property
    def partition(self) -> Partition:
        return self.matrix.partition

    @property
    def coeffs(self) -> Mat:
        return self.matrix.coeffs

    @property
    def jumps(self) -> tuple[int, ...]:
        return self.matrix.jumps

    def column_line(self, i: int) -> ProjectiveLinePoint:
        col = self.cokernel_map.col(i)
        if not any(col):
            raise ResolutionError(f"cokernel column {i} vanishes")
        return ProjectiveLinePoint(*col)

    def display(self) -> str:
        terms = []
        for part in self.partition.parts:
            d = " + ".join(f"{self.jumps[r]}*D{r}" for r in part)
            terms.append(f"O({d})")
        return f"0 -> O^{self.source_rank} -A-> " + " (+) ".join(terms) + " -> E -> 0"


def from_cokernel_map(fan: Fan, jumps: Sequence[int], partition: Partition,
                      cokernel_map: Mat) -> MonomialResolution:
    """Resolution whose coefficients are the canonical kernel of the cokernel map."""
    if cokernel_map.shape != (2, partition.s):
        raise ResolutionError(f"cokernel map must be 2x{partition.s}")
    if rank(cokernel_map) != 2:
        raise ResolutionError("cokernel map must have rank 2")
    coeffs = kernel_basis(cokernel_map)
    return MonomialResolution(fan, MonomialMatrix.build(jumps, partition, coeffs), cokernel_map)


def from_coeffs(fan: Fan, jumps: Sequence[int], partition: Partition, coeffs: Mat) -> MonomialResolution:
    """Resolution from a full-rank coefficient matrix; cokernel map is canonical."""
    mm = MonomialMatrix.build(jumps, partition, coeffs)
    validate_monomial_matrix(mm)
    return MonomialResolution(fan, mm, cokernel_matrix(coeffs))


def build_resolution(b: BundleData) -> MonomialResolution:
    part = coarse_partition(b)
    if part.s <= 2:
        raise Splits(part.s)
    cols = [b.lines[p[0]].pair for p in part.parts]
    return from_cokernel_map(b.fan, b.jumps, part, Mat.from_cols(cols))


def cokernel_filtrations(r: MonomialResolution, jumps: Optional[Sequence[int]] = None) -> BundleData:
    jumps = tuple(r.jumps if jumps is None else jumps)
    lines: list[Optional[ProjectiveLinePoint]] = [None] * r.fan.num_rays
    for i, part in enumerate(r.partition.parts):
        line = r.column_line(i)
        for ray in part:
            lines[ray] = line
    return BundleData(r.fan, jumps, tuple(lines))


@dataclass
class LocalFreenessReport:
    cyclic_minors: Optional[bool]
    fitting: bool
    fixed_point: bool
    failing_minor: Optional[tuple[int, int]] = None
    fitting_failures: list[int] = field(default_factory=list)
    rank_deficits: dict[int, int] = field(default_factory=dict)

    @property
    def locally_free(self) -> bool:
        return self.fixed_point

    def to_json(self) -> dict:
        return {
            "cyclic_minors": self.cyclic_minors,
            "fitting": self.fitting,
            "fixed_point": self.fixed_point,
            "locally_free": self.locally_free,
            "failing_minor": list(self.failing_minor) if self.failing_minor else None,
            "fitting_failures": list(self.fitting_failures),
            "rank_deficits": {str(k): v for k, v in sorted(self.rank_deficits.items())},
        }


def cyclic_minor_pairs(partition: Partition) -> list[tuple[int, int]]:
    order = partition.circular_order()
    s = len(order)
    return [(order[t], order[(t + 1) % s]) for t in range(s)]


def _rows_off_cone(mm: MonomialMatrix, cone: tuple[int, int]) -> list[int]:
    return [i for i, part in enumerate(mm.partition.parts) if not set(part) & set(cone)]


def check_local_freeness(r: MonomialResolution | MonomialMatrix, f: Fan | None = None) -> LocalFreenessReport:
    """Decide local freeness of the cokernel three ways.

    * cyclic minors: the coefficient minors leaving out two circularly
      adjacent parts are nonzero (only when parts are circular intervals
      covering every ray; otherwise ``None``);
    * Fitting ideal: for every cone, some nonzero maximal minor uses only rows
      whose monomials avoid the cone's rays, so it divides a power of x^sigma_hat;
    * fixed points: the coefficient rows off each cone have rank s - 2.
    """
    if isinstance(r, MonomialResolution):
        mm, f = r.matrix, r.fan if f is None else f
    else:
        mm = r
    if f is None:
        raise ResolutionError("a fan is required")
    s = mm.s
    a = mm.coeffs
    k = s - 2

    cyclic = None
    failing = None
    if mm.partition.interval and len(mm.partition.support) == f.num_rays and s >= 3:
        cyclic = True
        for i, j in cyclic_minor_pairs(mm.partition):
            rows = [t for t in range(s) if t not in (i, j)]
            if det(a.select_rows(rows)) == 0:
                cyclic, failing = False, (i, j)
                break

    fitting_failures = []
    deficits = {}
    for c, cone in enumerate(f.cones()):
        rows = _rows_off_cone(mm, cone)
        if not any(det(a.select_rows(sub)) != 0 for sub in combinations(rows, k)):
            fitting_failures.append(c)
        rk = rank(a.select_rows(rows)) if rows else 0
        if rk != k:
            deficits[c] = rk
    return LocalFreenessReport(cyclic, not fitting_failures, not deficits,
                               failing, fitting_failures, deficits)

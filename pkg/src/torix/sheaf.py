"""Torsion-free rank-2 sheaves presented by arbitrary monomial matrices.

The reflexive hull of such a sheaf is read off the cokernel map columns;
the quotient by the sheaf itself is a skyscraper at torus fixed points. Its
support is computed combinatorially and cross-checked by a degreewise
dimension count over each affine chart.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .bundle import (BundleData, Partition, Refinement, coarse_partition,
                     default_section, is_refinement, sigma_family_dim)
from .exactlin import Mat, ProjectiveLinePoint, cokernel_matrix, rank, solve
from .fan import Fan, character_from_pairings
from .resolution import (MonomialMatrix, MonomialResolution, ResolutionError,
                         from_cokernel_map, validate_monomial_matrix)


class PresentationError(ValueError):
    pass


class BadSection(PresentationError):
    pass


@dataclass(frozen=True)
class SheafPresentation:
    fan: Fan
    matrix: MonomialMatrix
    cokernel_map: Mat

    def __post_init__(self):
        s = self.matrix.s
        if s < 2:
            raise PresentationError("a presentation needs at least two parts")
        validate_monomial_matrix(self.matrix)
        if self.cokernel_map.shape != (2, s) or rank(self.cokernel_map) != 2:
            raise PresentationError("cokernel map must be 2 x s of rank 2")
        if not (self.cokernel_map @ self.matrix.coeffs).is_zero():
            raise PresentationError("cokernel map does not annihilate the coefficients")
        for i in range(s):
            if not any(self.cokernel_map.col(i)):
                raise PresentationError(f"cokernel column {i} vanishes")

    @classmethod
    def from_columns(cls, fan: Fan, jumps: Sequence[int], partition: Partition,
                     columns: Sequence[Sequence]) -> "SheafPresentation":
        r = from_cokernel_map(fan, jumps, partition, Mat.from_cols(columns))
        return cls(fan, r.matrix, r.cokernel_map)

    @classmethod
    def from_coeffs(cls, fan: Fan, jumps: Sequence[int], partition: Partition,
                    coeffs: Mat) -> "SheafPresentation":
        mm = MonomialMatrix.build(jumps, partition, coeffs)
        return cls(fan, mm, cokernel_matrix(coeffs))

    @classmethod
    def from_resolution(cls, r: MonomialResolution) -> "SheafPresentation":
        return cls(r.fan, r.matrix, r.cokernel_map)

    def as_resolution(self) -> MonomialResolution:
        return MonomialResolution(self.fan, self.matrix, self.cokernel_map)

    @property
    def partition(self) -> Partition:
        return self.matrix.partition

    @property
    def jumps(self) -> tuple[int, ...]:
        return self.matrix.jumps

    @property
    def s(self) -> int:
        return self.matrix.s

    def line(self, i: int) -> ProjectiveLinePoint:
        return ProjectiveLinePoint(*self.cokernel_map.col(i))


@dataclass(frozen=True)
class GradedDimGrid:
    cone: int
    radius: int
    dims: dict  # Character -> int
    by_pairings: dict  # (u, v) -> int

    def at(self, u: int, v: int) -> int:
        return self.by_pairings[(u, v)]


def default_radius(jumps: Sequence[int]) -> int:
    return max(jumps, default=0) + 2


def chart_graded_dims(p: SheafPresentation | MonomialResolution, k: int,
                      radius: Optional[int] = None) -> GradedDimGrid:
    """Cokernel dimension in every degree of the chart of cone k.

    Degrees are indexed by the pairings (u, v) with the two rays of the cone,
    each in ``[-radius, radius]``.
    """
    fan, mm = p.fan, p.matrix
    if radius is None:
        radius = default_radius(mm.jumps)
    if radius < 1:
        raise PresentationError("radius must be at least 1")
    r0, r1 = fan.cone(k)
    exps = [(e[r0], e[r1]) for e in mm.row_exponents]
    rank_cache: dict[tuple[int, ...], int] = {}
    dims, by_pair = {}, {}
    for u in range(-radius, radius + 1):
        for v in range(-radius, radius + 1):
            elig = tuple(i for i, (a, b) in enumerate(exps) if a >= -u and b >= -v)
            d = len(elig)
            if u >= 0 and v >= 0 and elig:
                if elig not in rank_cache:
                    rank_cache[elig] = rank(mm.coeffs.select_rows(elig))
                d -= rank_cache[elig]
            by_pair[(u, v)] = d
            dims[character_from_pairings(fan, k, u, v)] = d
    return GradedDimGrid(k, radius, dims, by_pair)


def bidual(p: SheafPresentation) -> BundleData:
    lines: list[Optional[ProjectiveLinePoint]] = [None] * p.fan.num_rays
    for i, part in enumerate(p.partition.parts):
        for ray in part:
            lines[ray] = p.line(i)
    return BundleData(p.fan, p.jumps, tuple(lines))


def _line_projection(p: SheafPresentation) -> tuple[int, ...]:
    classes: list[ProjectiveLinePoint] = []
    proj = []
    for i in range(p.s):
        line = p.line(i)
        if line not in classes:
            classes.append(line)
        proj.append(classes.index(line))
    return tuple(proj)


def projection_to_bidual(p: SheafPresentation) -> tuple[Partition, Optional[Refinement], tuple[int, ...]]:
    """Bidual coarse partition, the refinement (if any) and the part projection.

    When the parts are not intervals the presentation need not refine the
    coarse partition; parts are then grouped by their line instead, which
    agrees with the coarse grouping on every pair of fan-adjacent rays.
    """
    coarse = coarse_partition(bidual(p))
    ref = is_refinement(p.partition, coarse)
    proj = ref.projection if ref is not None else _line_projection(p)
    return coarse, ref, proj


def degeneracy_cones(p: SheafPresentation) -> set[int]:
    """Cones whose rays lie in different parts with the same coarse image."""
    _, _, proj = projection_to_bidual(p)
    owner = p.partition.part_of()
    out = set()
    for k, (r0, r1) in enumerate(p.fan.cones()):
        if r0 in owner and r1 in owner:
            i, j = owner[r0], owner[r1]
            if i != j and proj[i] == proj[j]:
                out.add(k)
    return out


@dataclass(frozen=True)
class SkyscraperReport:
    support: frozenset
    lengths: dict  # cone index -> int

    def to_json(self) -> dict:
        return {"support": sorted(self.support),
                "lengths": {str(k): v for k, v in sorted(self.lengths.items())}}


def oracle_length(p: SheafPresentation, k: int, radius: Optional[int] = None,
                  upper: Optional[BundleData] = None) -> int:
    """Sum over the chart box of (bidual dimension - presentation dimension)."""
    upper = bidual(p) if upper is None else upper
    grid = chart_graded_dims(p, k, radius)
    return sum(sigma_family_dim(upper, k, m) - d for m, d in grid.dims.items())


def skyscraper_support(p: SheafPresentation, radius: Optional[int] = None) -> SkyscraperReport:
    b = bidual(p)
    lengths = {k: oracle_length(p, k, radius, b) for k in range(p.fan.num_rays)}
    return SkyscraperReport(frozenset(degeneracy_cones(p)), lengths)


def _check_section(ref: Refinement, section: Sequence[int], n_coarse: int) -> tuple[int, ...]:
    section = tuple(section)
    if len(section) != n_coarse:
        raise BadSection(f"section must pick one fine part per coarse part ({n_coarse})")
    for j, i in enumerate(section):
        if not 0 <= i < len(ref.projection) or ref.projection[i] != j:
            raise BadSection(f"fine part {i} does not lie over coarse part {j}")
    return section


def coarsen_presentation(p: SheafPresentation, section: Optional[Sequence[int]] = None) -> MonomialResolution:
    """Resolution of the bidual on its coarse partition, columns picked by ``section``."""
    coarse, ref, _ = projection_to_bidual(p)
    if ref is None:
        raise PresentationError("presentation does not refine the coarse partition of its bidual")
    if section is None:
        section = default_section(p.partition, ref)
    section = _check_section(ref, section, coarse.s)
    cols = Mat.from_cols([p.cokernel_map.col(i) for i in section])
    return from_cokernel_map(p.fan, p.jumps, coarse, cols)


def collapse_matrix(p: SheafPresentation, section: Optional[Sequence[int]] = None) -> Mat:
    """The s x s' map sending fine basis vectors onto their coarse part.

    Each fine column is proportional to the chosen representative; the scalar
    is built in so that (coarse cokernel map) @ collapse == fine cokernel map.
    """
    coarse, ref, _ = projection_to_bidual(p)
    if ref is None:
        raise PresentationError("presentation does not refine the coarse partition of its bidual")
    if section is None:
        section = default_section(p.partition, ref)
    section = _check_section(ref, section, coarse.s)
    rows = [[Fraction(0)] * p.s for _ in range(coarse.s)]
    for i, j in enumerate(ref.projection):
        fine = p.cokernel_map.col(i)
        rep = p.cokernel_map.col(section[j])
        t = next(t for t in range(2) if rep[t] != 0)
        rows[j][i] = fine[t] / rep[t]
    return Mat.from_rows(rows, p.s)


def reduction_diagram(p: SheafPresentation, section: Optional[Sequence[int]] = None):
    """Coarse resolution, collapse map and the induced map on sources.

    Returns ``(coarse, collapse, left)`` with
    ``coarse.coeffs @ left == collapse @ p.coeffs`` and
    ``coarse.cokernel_map @ collapse == p.cokernel_map``.
    """
    coarse = coarsen_presentation(p, section)
    collapse = collapse_matrix(p, section)
    left = solve(coarse.coeffs, collapse @ p.matrix.coeffs)
    if left is None:
        raise ResolutionError("collapse does not carry kernel into kernel")
    return coarse, collapse, left


def skyscraper_lengths_via_section(p: SheafPresentation, section: Optional[Sequence[int]] = None,
                                   radius: Optional[int] = None) -> dict[int, int]:
    """Oracle lengths with the upper side taken from the coarsened resolution's chart."""
    coarse = coarsen_presentation(p, section)
    if radius is None:
        radius = default_radius(p.jumps)
    out = {}
    for k in range(p.fan.num_rays):
        top = chart_graded_dims(coarse, k, radius).by_pairings
        low = chart_graded_dims(p, k, radius).by_pairings
        out[k] = sum(top[key] - low[key] for key in top)
    return out


def extension_split(p: SheafPresentation, i1: int):
    """Sub and quotient of the extension attached to the line of column ``i1``.

    Returns ``(divisor1, divisor2, parts1, parts2)``.
    """
    target = p.line(i1)
    parts1 = tuple(i for i in range(p.s) if p.line(i) == target)
    parts2 = tuple(i for i in range(p.s) if i not in parts1)
    m = p.fan.num_rays

    def divisor(parts):
        rays = {r for i in parts for r in p.partition.parts[i]}
        return tuple(p.jumps[r] if r in rays else 0 for r in range(m))

    return divisor(parts1), divisor(parts2), parts1, parts2

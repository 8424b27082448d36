"""Seeded random inputs: lines, bundles, presentations, configurations."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional, Sequence

from .bundle import BundleData, Partition, coarse_partition
from .exactlin import Mat, ProjectiveLinePoint, cokernel_matrix, rank
from .fan import Fan
from .resolution import MonomialMatrix, MonomialResolution
from .sheaf import SheafPresentation
from .stability import PointConfig, Status, config_stability


def random_pair(rng: random.Random, bound: int = 3) -> tuple[int, int]:
    while True:
        a, b = rng.randint(-bound, bound), rng.randint(-bound, bound)
        if (a, b) != (0, 0):
            return a, b


def random_line(rng: random.Random, bound: int = 3) -> ProjectiveLinePoint:
    return ProjectiveLinePoint(*random_pair(rng, bound))


def line_pool(rng: random.Random, size: int, bound: int = 3) -> list[ProjectiveLinePoint]:
    pool: list[ProjectiveLinePoint] = []
    while len(pool) < size:
        p = random_line(rng, bound)
        if p not in pool:
            pool.append(p)
    return pool


def random_bundle(rng: random.Random, fan: Fan, max_jump: int = 3, *,
                  min_parts: int = 0, max_parts: Optional[int] = None,
                  zero_jump_prob: float = 0.15, n_lines: Optional[int] = None,
                  tries: int = 10_000) -> BundleData:
    """Random filtration data whose coarse partition has a size in range."""
    m = fan.num_rays
    for _ in range(tries):
        jumps = [0 if rng.random() < zero_jump_prob else rng.randint(1, max_jump) for _ in range(m)]
        pool = line_pool(rng, n_lines or rng.randint(1, m))
        lines = [rng.choice(pool) if j > 0 else None for j in jumps]
        b = BundleData(fan, tuple(jumps), tuple(lines))
        s = coarse_partition(b).s
        if s >= min_parts and (max_parts is None or s <= max_parts):
            return b
    raise RuntimeError("could not draw a bundle with the requested shape")


def random_two_run_bundle(rng: random.Random, fan: Fan, max_jump: int = 3) -> BundleData:
    """Lines take at most two values, laid out in at most two circular runs."""
    m = fan.num_rays
    jumps = [0 if rng.random() < 0.2 else rng.randint(1, max_jump) for _ in range(m)]
    p, q = line_pool(rng, 2)
    start, length = rng.randrange(m), rng.randint(0, m)
    run = {(start + t) % m for t in range(length)}
    lines = [(p if r in run else q) if j > 0 else None for r, j in enumerate(jumps)]
    return BundleData(fan, tuple(jumps), tuple(lines))


def random_interval_partition(rng: random.Random, support: Sequence[int],
                              min_parts: int = 1) -> Partition:
    """Cut the circular support into consecutive runs at random positions."""
    n = len(support)
    k = rng.randint(min(max(min_parts, 1), n), n)
    cuts = sorted(rng.sample(range(n), k))
    offset = cuts[0]
    parts = []
    for a, c in enumerate(cuts):
        end = cuts[(a + 1) % k] if a + 1 < k else offset + n
        parts.append([support[t % n] for t in range(c, end)])
    return Partition.make(parts, support)


def random_coeffs(rng: random.Random, s: int, *, degenerate: float = 0.3, bound: int = 2) -> Mat:
    """An s x (s-2) coefficient matrix, often with zero or repeated rows."""
    k = s - 2
    rows = []
    for i in range(s):
        roll = rng.random()
        if rows and roll < degenerate / 2:
            base = rng.choice(rows)
            c = rng.choice([1, -1, 2])
            rows.append([c * x for x in base])
        elif roll < degenerate:
            row = [0] * k
            if k:
                row[rng.randrange(k)] = rng.randint(1, bound)
            rows.append(row)
        else:
            rows.append([rng.randint(-bound, bound) for _ in range(k)])
    return Mat.from_rows(rows, k)


def random_monomial_matrix(rng: random.Random, fan: Fan, max_jump: int = 3,
                           min_parts: int = 3) -> MonomialMatrix:
    """Interval partition of all rays, positive jumps, possibly degenerate coefficients."""
    m = fan.num_rays
    jumps = [rng.randint(1, max_jump) for _ in range(m)]
    part = random_interval_partition(rng, tuple(range(m)), min_parts)
    return MonomialMatrix.build(jumps, part, random_coeffs(rng, part.s))


def _refine(rng: random.Random, coarse: Partition) -> Partition:
    """Split some parts of an interval partition into consecutive pieces, strictly."""
    while True:
        parts = []
        for p in coarse.parts:
            if len(p) > 1 and rng.random() < 0.6:
                cuts = sorted(rng.sample(range(1, len(p)), rng.randint(1, len(p) - 1)))
                bounds = [0] + cuts + [len(p)]
                parts.extend(list(p[a:b]) for a, b in zip(bounds, bounds[1:]))
            else:
                parts.append(list(p))
        if len(parts) > coarse.s:
            return Partition.make(parts, coarse.support)


def random_refined_presentation(rng: random.Random, fan: Fan, max_jump: int = 3) -> SheafPresentation:
    """Presentation on a strict refinement of a bundle's coarse partition.

    Columns over one coarse part are random nonzero multiples of its line.
    """
    while True:
        b = random_bundle(rng, fan, max_jump, min_parts=2, n_lines=rng.randint(2, 4),
                          zero_jump_prob=0.1)
        coarse = coarse_partition(b)
        if all(len(p) == 1 for p in coarse.parts):
            continue
        fine = _refine(rng, coarse)
        cols = []
        for p in fine.parts:
            line = b.lines[p[0]]
            c = Fraction(rng.choice([1, -1, 2, -2, 3]), rng.choice([1, 2]))
            cols.append([c * line.a, c * line.b])
        if rank(Mat.from_cols(cols)) < 2:
            continue
        return SheafPresentation.from_columns(fan, b.jumps, fine, cols)


def random_full_rank(rng: random.Random, n: int, m: int, *, sparse: float = 0.4,
                     bound: int = 2) -> Mat:
    """Full-column-rank n x m matrix with many zeros (to hit coordinate incidences)."""
    while True:
        rows = [[0 if rng.random() < sparse else rng.randint(-bound, bound) for _ in range(m)]
                for _ in range(n)]
        a = Mat.from_rows(rows, m)
        if rank(a) == m:
            return a


def random_line_config(rng: random.Random, n: int, target: Optional[Status] = None,
                       tries: int = 10_000) -> PointConfig:
    for _ in range(tries):
        pool = line_pool(rng, rng.randint(1, n))
        pts = [rng.choice(pool).pair for _ in range(n)]
        c = PointConfig.on_line(pts)
        if target is None or config_stability(c).status is target:
            return c
    raise RuntimeError(f"could not draw a {target} configuration")


def stable_p2_bundle(rng: random.Random, fan: Fan, jumps: Sequence[int]) -> BundleData:
    """Three pairwise distinct lines, one per ray."""
    return BundleData(fan, tuple(jumps), tuple(line_pool(rng, 3)))


def resolution_from_matrix(fan: Fan, mm: MonomialMatrix) -> MonomialResolution:
    return MonomialResolution(fan, mm, cokernel_matrix(mm.coeffs))

"""Filtration data of equivariant rank-2 bundles on toric surfaces.

Each ray carries a filtration of a 2-dimensional space: zero below ``-jump``,
a line between ``-jump`` and ``0``, everything from ``0`` on. A jump of zero
means the dimension jumps straight from 0 to 2 and no line is attached.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .exactlin import ProjectiveLinePoint
from .fan import Character, Fan, pairing


class BundleError(ValueError):
    pass


@dataclass(frozen=True)
class FiltrationTriple:
    i1: int
    i2: int
    line: Optional[ProjectiveLinePoint] = None

    def __post_init__(self):
        if self.i1 > self.i2:
            raise BundleError(f"filtration bounds out of order: {self.i1} > {self.i2}")
        if (self.line is not None) != (self.i1 < self.i2):
            raise BundleError("a line is attached exactly when i1 < i2")


@dataclass(frozen=True)
class BundleData:
    """Normalized filtration data ``(-jump, 0, line)`` per ray."""

    fan: Fan
    jumps: tuple[int, ...]
    lines: tuple[Optional[ProjectiveLinePoint], ...]

    def __post_init__(self):
        object.__setattr__(self, "jumps", tuple(int(j) for j in self.jumps))
        object.__setattr__(self, "lines", tuple(self.lines))
        m = self.fan.num_rays
        if len(self.jumps) != m or len(self.lines) != m:
            raise BundleError(f"expected {m} filtrations, one per ray")
        for r, (j, line) in enumerate(zip(self.jumps, self.lines)):
            if j < 0:
                raise BundleError(f"negative jump at ray {r}")
            if (line is not None) != (j > 0):
                raise BundleError(f"ray {r}: a line is given iff the jump is positive")

    @property
    def support(self) -> tuple[int, ...]:
        """Rays with positive jump, in fan order."""
        return tuple(r for r, j in enumerate(self.jumps) if j > 0)

    def twisted(self, twist: Sequence[int]) -> list[FiltrationTriple]:
        """Raw triples after shifting both bounds by ``twist``."""
        return [FiltrationTriple(-j + n, n, line)
                for j, line, n in zip(self.jumps, self.lines, twist)]


def normalize_twist(fan: Fan, raw: Sequence[FiltrationTriple]) -> tuple[BundleData, tuple[int, ...]]:
    if len(raw) != fan.num_rays:
        raise BundleError(f"expected {fan.num_rays} filtrations, got {len(raw)}")
    jumps = tuple(t.i2 - t.i1 for t in raw)
    lines = tuple(t.line for t in raw)
    twist = tuple(-t.i2 for t in raw)
    return BundleData(fan, jumps, lines), twist


def filtration_dim(b: BundleData, ray: int, i: int) -> int:
    j = b.jumps[ray]
    if i >= 0:
        return 2
    if i >= -j:
        return 1
    return 0


def sigma_family_dim(b: BundleData, k: int, m: Character) -> int:
    """Dimension of the character-m piece over the chart of cone k."""
    r0, r1 = b.fan.cone(k)
    d0 = filtration_dim(b, r0, pairing(m, b.fan.rays[r0]))
    d1 = filtration_dim(b, r1, pairing(m, b.fan.rays[r1]))
    if d0 != 1 or d1 != 1:
        return min(d0, d1)
    return 1 if b.lines[r0] == b.lines[r1] else 0


def _is_circular_interval(part: Sequence[int], order: Sequence[int]) -> bool:
    pos = {r: i for i, r in enumerate(order)}
    n = len(order)
    members = {pos[r] for r in part}
    if len(members) == n:
        return True
    # A circular interval has exactly one member whose predecessor is outside.
    starts = [p for p in members if (p - 1) % n not in members]
    return len(starts) == 1


@dataclass(frozen=True)
class Partition:
    """Disjoint parts (tuples of ray indices) covering ``support``.

    ``support`` is listed in fan order; ``interval`` records whether every
    part is a circular interval of it.
    """

    parts: tuple[tuple[int, ...], ...]
    support: tuple[int, ...]
    interval: bool = False

    @classmethod
    def make(cls, parts: Sequence[Sequence[int]], support: Sequence[int] | None = None) -> "Partition":
        parts = tuple(tuple(int(r) for r in p) for p in parts)
        flat = [r for p in parts for r in p]
        if any(len(p) == 0 for p in parts):
            raise BundleError("partition parts must be nonempty")
        if len(set(flat)) != len(flat):
            raise BundleError("partition parts overlap")
        if support is None:
            support = sorted(flat)
        support = tuple(support)
        if set(flat) != set(support):
            raise BundleError("partition parts do not cover the support")
        interval = all(_is_circular_interval(p, support) for p in parts)
        return cls(parts, support, interval)

    @property
    def s(self) -> int:
        return len(self.parts)

    def part_of(self) -> dict[int, int]:
        """Map ray index -> part index."""
        return {r: i for i, p in enumerate(self.parts) for r in p}

    def circular_order(self) -> list[int]:
        """Part indices in the order their rays appear around the fan.

        Only meaningful for interval partitions.
        """
        if self.s <= 1:
            return list(range(self.s))
        owner = self.part_of()
        sup = self.support
        seen: list[int] = []
        for idx, r in enumerate(sup):
            if owner[sup[idx - 1]] != owner[r] and owner[r] not in seen:
                seen.append(owner[r])
        return seen


def fine_partition(support: Sequence[int]) -> Partition:
    return Partition.make([[r] for r in support], support)


def coarse_partition(b: BundleData) -> Partition:
    """Maximal circular runs of the support carrying equal lines.

    Parts are listed in fan order, starting with the run whose first ray has
    the smallest index.
    """
    pi = b.support
    n = len(pi)
    if n == 0:
        return Partition((), (), True)
    lines = [b.lines[r] for r in pi]
    starts = [i for i in range(n) if lines[i - 1] != lines[i]]
    if not starts:
        return Partition.make([pi], pi)
    parts = []
    for a, start in enumerate(starts):
        end = starts[(a + 1) % len(starts)]
        length = (end - start) % n or n
        parts.append([pi[(start + t) % n] for t in range(length)])
    return Partition.make(parts, pi)


@dataclass(frozen=True)
class Refinement:
    """Projection from fine part indices to coarse part indices."""

    projection: tuple[int, ...]
    section: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if self.section is not None:
            for j, i in enumerate(self.section):
                if not 0 <= i < len(self.projection) or self.projection[i] != j:
                    raise BundleError(f"not a section: coarse part {j} -> fine part {i}")


def is_refinement(fine: Partition, coarse: Partition) -> Optional[Refinement]:
    if set(fine.support) != set(coarse.support):
        raise BundleError("partitions of different supports")
    owner = coarse.part_of()
    proj = []
    for p in fine.parts:
        targets = {owner[r] for r in p}
        if len(targets) != 1:
            return None
        proj.append(targets.pop())
    if len(set(proj)) != coarse.s:
        return None
    return Refinement(tuple(proj))


def default_section(fine: Partition, ref: Refinement) -> tuple[int, ...]:
    """In each coarse part, the fine part with the smallest ray index."""
    n_coarse = max(ref.projection, default=-1) + 1
    out = []
    for j in range(n_coarse):
        candidates = [i for i, t in enumerate(ref.projection) if t == j]
        out.append(min(candidates, key=lambda i: min(fine.parts[i])))
    return tuple(out)


def split_summands(b: BundleData) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Divisor vectors of the two line bundle summands when at most two runs."""
    part = coarse_partition(b)
    if part.s > 2:
        return None
    m = b.fan.num_rays
    first = set(part.parts[0]) if part.s >= 1 else set()
    d1 = tuple(b.jumps[r] if r in first else 0 for r in range(m))
    d2 = tuple(b.jumps[r] if (r not in first and b.jumps[r] > 0) else 0 for r in range(m))
    return d1, d2

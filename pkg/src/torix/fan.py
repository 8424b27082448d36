"""Smooth complete fans in the plane and their Cox-ring combinatorics.

A fan is given by its rays in counterclockwise cyclic order; the maximal
cone ``k`` is spanned by rays ``k`` and ``k + 1`` (indices mod the number of
rays). Smoothness is checked as ``det(n_k, n_{k+1}) == 1`` for every k.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

RayVector = tuple[int, int]
Character = tuple[int, int]
ExponentVector = tuple[int, ...]


class FanError(ValueError):
    pass


class NotPrimitive(FanError):
    def __init__(self, ray):
        super().__init__(f"ray {ray} is not primitive")
        self.ray = ray


class NotSmooth(FanError):
    def __init__(self, pair):
        super().__init__(f"rays {pair[0]} and {pair[1]} do not span a unimodular cone")
        self.pair = pair


class NotComplete(FanError):
    def __init__(self, winding):
        super().__init__(f"rays wind {winding} times around the origin, expected once")
        self.winding = winding


class TooFewRays(FanError):
    def __init__(self, count):
        super().__init__(f"a complete fan needs at least 3 rays, got {count}")
        self.count = count


@dataclass(frozen=True)
class Fan:
    rays: tuple[RayVector, ...]

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple((int(x), int(y)) for x, y in self.rays))

    def __len__(self) -> int:
        return len(self.rays)

    @property
    def num_rays(self) -> int:
        return len(self.rays)

    def cone(self, k: int) -> tuple[int, int]:
        """Ray indices of the k-th maximal cone."""
        m = len(self.rays)
        return k % m, (k + 1) % m

    def cones(self) -> list[tuple[int, int]]:
        return [self.cone(k) for k in range(len(self.rays))]

    def adjacent(self, i: int, j: int) -> bool:
        m = len(self.rays)
        return i != j and ((i - j) % m in (1, m - 1))


def _det(u: RayVector, v: RayVector) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _upper_half(v: RayVector) -> bool:
    return v[1] > 0 or (v[1] == 0 and v[0] > 0)


def _angle_before(u: RayVector, v: RayVector) -> bool:
    """True when u has strictly smaller polar angle in [0, 2pi) than v."""
    hu, hv = _upper_half(u), _upper_half(v)
    if hu != hv:
        return hu
    return _det(u, v) > 0


def winding_number(rays: Sequence[RayVector]) -> int:
    """Number of full turns made by the closed ray sequence.

    Assumes each consecutive step turns counterclockwise by less than pi,
    which holds whenever every adjacent determinant is positive; each turn
    then contributes exactly one descent in polar angle.
    """
    m = len(rays)
    return sum(1 for k in range(m) if not _angle_before(rays[k], rays[(k + 1) % m]))


def validate(f: Fan) -> None:
    m = len(f.rays)
    if m < 3:
        raise TooFewRays(m)
    for r in f.rays:
        if r == (0, 0) or gcd(abs(r[0]), abs(r[1])) != 1:
            raise NotPrimitive(r)
    for k in range(m):
        u, v = f.rays[k], f.rays[(k + 1) % m]
        if _det(u, v) != 1:
            raise NotSmooth((u, v))
    w = winding_number(f.rays)
    if w != 1:
        raise NotComplete(w)


def make_fan(rays: Sequence[Sequence[int]]) -> Fan:
    f = Fan(tuple(tuple(r) for r in rays))
    validate(f)
    return f


def make_projective_plane() -> Fan:
    return Fan(((1, 0), (0, 1), (-1, -1)))


def make_hirzebruch(a: int) -> Fan:
    if a < 0:
        raise ValueError("Hirzebruch parameter must be nonnegative")
    return Fan(((1, 0), (0, 1), (-1, a), (0, -1)))


def blow_up(f: Fan, k: int) -> Fan:
    """Star subdivision of the k-th maximal cone."""
    m = len(f.rays)
    i, j = k % m, (k + 1) % m
    new = (f.rays[i][0] + f.rays[j][0], f.rays[i][1] + f.rays[j][1])
    rays = list(f.rays)
    rays.insert(i + 1, new)
    return Fan(tuple(rays))


def blow_down(f: Fan, index: int) -> Fan:
    """Remove a ray equal to the sum of its two neighbours."""
    m = len(f.rays)
    prev, nxt = f.rays[(index - 1) % m], f.rays[(index + 1) % m]
    if f.rays[index] != (prev[0] + nxt[0], prev[1] + nxt[1]):
        raise FanError(f"ray {index} is not the exceptional ray of a blow-up")
    return Fan(f.rays[:index] + f.rays[index + 1:])


def pairing(m: Character, r: RayVector) -> int:
    return m[0] * r[0] + m[1] * r[1]


def irrelevant_generators(f: Fan) -> list[ExponentVector]:
    """Exponent vectors of the monomials x^sigma_hat, one per maximal cone."""
    m = len(f.rays)
    out = []
    for k in range(m):
        skip = set(f.cone(k))
        out.append(tuple(0 if i in skip else 1 for i in range(m)))
    return out


def character_from_pairings(f: Fan, k: int, u: int, v: int) -> Character:
    """The unique character with pairings (u, v) against the rays of cone k.

    Adjacent rays of a smooth fan form a lattice basis, so this is exact.
    """
    a, b = f.cone(k)
    (p, q), (r, s) = f.rays[a], f.rays[b]
    # [[p, q], [r, s]] has determinant 1; apply its inverse.
    return (s * u - q * v, -r * u + p * v)


def parse_fan_spec(spec: str, blowups: Sequence[int] = ()) -> Fan:
    """Build a fan from ``p2``, ``hirzebruch:a`` (or ``f<a>``), then blow up."""
    spec = spec.strip().lower()
    if spec in ("p2", "projective_plane"):
        f = make_projective_plane()
    elif spec.startswith("hirzebruch:"):
        f = make_hirzebruch(int(spec.split(":", 1)[1]))
    elif spec.startswith("f") and spec[1:].isdigit():
        f = make_hirzebruch(int(spec[1:]))
    else:
        raise FanError(f"unknown fan spec {spec!r}")
    for k in blowups:
        f = blow_up(f, k)
    validate(f)
    return f

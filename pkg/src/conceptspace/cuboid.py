"""Axis-parallel cuboid geometry.

A cuboid stores full-length bound vectors. On dimensions belonging to its
domain set the bounds are finite; on all other dimensions they are -inf/+inf,
so a "cuboid" defined on a subset of the domains is an unbounded slab in the
full space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ParameterError, DomainMismatchError
from .space import Point, Space

_INF = float("inf")


def interval_midpoint(lo: float, hi: float) -> float:
    """Midpoint of [lo, hi] with a fixed convention for infinite ends.

    Doubly infinite intervals map to 0, half-infinite ones to their finite
    end.
    """
    lo_inf = math.isinf(lo)
    hi_inf = math.isinf(hi)
    if lo_inf and hi_inf:
        return 0.0
    if lo_inf:
        return hi
    if hi_inf:
        return lo
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class Cuboid:
    """Axis-parallel hyperrectangle, unbounded outside its domain set."""

    p_min: tuple[float, ...]
    p_max: tuple[float, ...]
    domains: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "p_min", tuple(float(v) for v in self.p_min))
        object.__setattr__(self, "p_max", tuple(float(v) for v in self.p_max))
        object.__setattr__(self, "domains", frozenset(self.domains))
        if len(self.p_min) != len(self.p_max):
            raise ParameterError("bound vectors differ in length")

    def contains(self, x: Sequence[float]) -> bool:
        """Inclusive containment; infinite bounds never exclude."""
        return all(
            lo <= v <= hi for lo, v, hi in zip(self.p_min, x, self.p_max)
        )

    def clamp(self, x: Sequence[float]) -> Point:
        """Componentwise projection of `x` onto this cuboid."""
        return tuple(
            min(max(v, lo), hi) for lo, v, hi in zip(self.p_min, x, self.p_max)
        )

    def intersect(self, other: "Cuboid") -> "Cuboid | None":
        """Crisp intersection, or None when empty on some dimension.

        The result is defined on the union of the two domain sets.
        """
        lo = tuple(max(a, b) for a, b in zip(self.p_min, other.p_min))
        hi = tuple(min(a, b) for a, b in zip(self.p_max, other.p_max))
        if any(l > h for l, h in zip(lo, hi)):
            return None
        return Cuboid(lo, hi, self.domains | other.domains)

    def closest_points(self, other: "Cuboid") -> tuple[Point, Point]:
        """A closest pair (a, b) with a in self and b in other.

        Dimensions where the bound intervals overlap contribute zero to any
        combined metric; there both coordinates sit at the midpoint of the
        overlap. Elsewhere they sit at the facing interval endpoints.
        """
        a: list[float] = []
        b: list[float] = []
        for d in range(len(self.p_min)):
            lo = max(self.p_min[d], other.p_min[d])
            hi = min(self.p_max[d], other.p_max[d])
            if lo <= hi:
                mid = interval_midpoint(lo, hi)
                a.append(mid)
                b.append(mid)
            elif self.p_max[d] < other.p_min[d]:
                a.append(self.p_max[d])
                b.append(other.p_min[d])
            else:
                a.append(self.p_min[d])
                b.append(other.p_max[d])
        return tuple(a), tuple(b)

    def is_subset_of(self, other: "Cuboid") -> bool:
        """Whether every point of self lies in other (bound comparison)."""
        return all(o <= s for s, o in zip(self.p_min, other.p_min)) and all(
            s <= o for s, o in zip(self.p_max, other.p_max)
        )

    def extrude(self, ranges: Mapping[int, tuple[float, float]]) -> "Cuboid":
        """Replace the bounds of the listed dimensions by the given ranges."""
        for dim, (lo, hi) in ranges.items():
            if lo > hi:
                raise ParameterError(
                    f"extrusion range on dimension {dim} has lo > hi"
                )
        new_min = list(self.p_min)
        new_max = list(self.p_max)
        for dim, (lo, hi) in ranges.items():
            new_min[dim] = lo
            new_max[dim] = hi
        return Cuboid(tuple(new_min), tuple(new_max), self.domains)

    def project(self, kept_domains: Iterable[str], space: Space) -> "Cuboid":
        """Drop all domains outside `kept_domains`, unbounding their dims."""
        kept = frozenset(kept_domains)
        if not kept:
            raise ParameterError("projection must keep at least one domain")
        if not kept <= self.domains:
            raise ParameterError(
                f"cannot project onto {sorted(kept)}: not a subset of "
                f"{sorted(self.domains)}"
            )
        removed_dims = {
            d for dom in self.domains - kept for d in space.domains[dom]
        }
        new_min = tuple(
            -_INF if d in removed_dims else v for d, v in enumerate(self.p_min)
        )
        new_max = tuple(
            _INF if d in removed_dims else v for d, v in enumerate(self.p_max)
        )
        return Cuboid(new_min, new_max, kept)


def make_cuboid(
    p_min: Sequence[float],
    p_max: Sequence[float],
    domains: Iterable[str],
    space: Space,
) -> Cuboid:
    """Validated cuboid constructor.

    Checks that bounds are finite with p_min <= p_max exactly on the
    dimensions of `domains` and infinite everywhere else.
    """
    cub = Cuboid(tuple(p_min), tuple(p_max), frozenset(domains))
    if len(cub.p_min) != space.n_dims:
        raise ParameterError(
            f"cuboid has {len(cub.p_min)} dimensions, space has {space.n_dims}"
        )
    unknown = cub.domains - set(space.domains)
    if unknown:
        raise DomainMismatchError(f"unknown domains: {sorted(unknown)}")
    own_dims = {d for dom in cub.domains for d in space.domains[dom]}
    for d in range(space.n_dims):
        lo, hi = cub.p_min[d], cub.p_max[d]
        if d in own_dims:
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise ParameterError(
                    f"dimension {d} belongs to the cuboid's domains and must be finite"
                )
            if lo > hi:
                raise ParameterError(f"dimension {d} has p_min > p_max")
        else:
            if lo != -_INF or hi != _INF:
                raise ParameterError(
                    f"dimension {d} is outside the cuboid's domains and must be unbounded"
                )
    return cub


def bounding_box(
    points: Iterable[Sequence[float]], domains: Iterable[str], space: Space
) -> Cuboid:
    """Smallest cuboid on `domains` containing all `points`."""
    pts = [tuple(float(v) for v in p) for p in points]
    if not pts:
        raise ParameterError("bounding box of an empty point set")
    own_dims = {d for dom in frozenset(domains) for d in space.domains[dom]}
    lo = [
        min(p[d] for p in pts) if d in own_dims else -_INF
        for d in range(space.n_dims)
    ]
    hi = [
        max(p[d] for p in pts) if d in own_dims else _INF
        for d in range(space.n_dims)
    ]
    return make_cuboid(lo, hi, domains, space)


def drop_subsumed(cuboids: Iterable[Cuboid]) -> list[Cuboid]:
    """Remove cuboids entirely contained in another cuboid of the list.

    Keeps first occurrences, so the represented union of points is
    unchanged and the order of the survivors is stable.
    """
    kept: list[Cuboid] = []
    for cub in cuboids:
        if any(cub.domains == k.domains and cub.is_subset_of(k) for k in kept):
            continue
        kept = [
            k for k in kept if not (k.domains == cub.domains and k.is_subset_of(cub))
        ]
        kept.append(cub)
    return kept

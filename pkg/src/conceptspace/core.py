"""Cores: unions of cuboids with a non-empty common intersection.

The common intersection (the central region) makes the union star-shaped,
which is what all higher-level concept operations rely on. Construction
always validates that property; `repaired_core` restores it for cuboid
collections that lost it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .cuboid import Cuboid, interval_midpoint, make_cuboid
from .errors import DomainMismatchError, EmptyIntersectionError, ParameterError
from .space import Point, Space


@dataclass(frozen=True)
class Core:
    """Union of cuboids sharing one domain set and a common point."""

    cuboids: tuple[Cuboid, ...]
    domains: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "cuboids", tuple(self.cuboids))
        object.__setattr__(self, "domains", frozenset(self.domains))

    def central_region(self) -> Cuboid:
        """Intersection of all member cuboids (non-empty by construction)."""
        region = self.cuboids[0]
        for cub in self.cuboids[1:]:
            region = region.intersect(cub)
        return region

    def midpoint(self) -> Point:
        """Componentwise midpoint of the central region.

        Unbounded dimensions follow the interval_midpoint convention
        (0 for doubly infinite, the finite bound for half-infinite).
        """
        region = self.central_region()
        return tuple(
            interval_midpoint(lo, hi)
            for lo, hi in zip(region.p_min, region.p_max)
        )

    def contains(self, x: Sequence[float]) -> bool:
        return any(cub.contains(x) for cub in self.cuboids)

    def union_with_repair(self, other: "Core", space: Space) -> "Core":
        """Concatenate the cuboid lists, repairing if they drift apart.

        When the combined cuboids no longer share a common point, every
        cuboid is minimally enlarged toward the arithmetic mean of all
        cuboid centers, which restores a non-empty central region.
        """
        if self.domains != other.domains:
            raise DomainMismatchError(
                "cannot unite cores over different domain sets: "
                f"{sorted(self.domains)} vs {sorted(other.domains)}"
            )
        return repaired_core(self.cuboids + other.cuboids, self.domains, space)

    def cut(
        self, dim: int, value: float, space: Space
    ) -> tuple["Core | None", "Core | None"]:
        """Split at `value` on `dim` into the x_dim >= v and x_dim <= v parts.

        Cuboids strictly on one side go wholly to that side; straddling
        cuboids are split. A side that receives no cuboid is None. Both
        returned sides are valid cores.
        """
        dom = space.domain_of(dim)
        if dom not in self.domains:
            raise ParameterError(
                f"dimension {dim} does not belong to this core's domains"
            )
        plus: list[Cuboid] = []
        minus: list[Cuboid] = []
        for cub in self.cuboids:
            if cub.p_max[dim] >= value:
                plus.append(
                    cub.extrude({dim: (max(cub.p_min[dim], value), cub.p_max[dim])})
                )
            if cub.p_min[dim] <= value:
                minus.append(
                    cub.extrude({dim: (cub.p_min[dim], min(cub.p_max[dim], value))})
                )
        plus_core = make_core(plus, self.domains, space) if plus else None
        minus_core = make_core(minus, self.domains, space) if minus else None
        return plus_core, minus_core

    def project(self, kept_domains: Iterable[str], space: Space) -> "Core":
        """Project every cuboid onto `kept_domains`."""
        kept = frozenset(kept_domains)
        if not kept or not kept <= self.domains:
            raise ParameterError(
                f"projection target {sorted(kept)} must be a non-empty subset "
                f"of {sorted(self.domains)}"
            )
        return make_core(
            [cub.project(kept, space) for cub in self.cuboids], kept, space
        )


def make_core(
    cuboids: Sequence[Cuboid], domains: Iterable[str], space: Space
) -> Core:
    """Validated core constructor.

    Raises:
        EmptyIntersectionError: if the cuboids share no common point.
        DomainMismatchError: if any cuboid's domain set differs from `domains`.
    """
    cubs = tuple(cuboids)
    doms = frozenset(domains)
    if not cubs:
        raise ParameterError("a core needs at least one cuboid")
    for cub in cubs:
        if cub.domains != doms:
            raise DomainMismatchError(
                f"cuboid domains {sorted(cub.domains)} differ from the "
                f"core's domains {sorted(doms)}"
            )
        make_cuboid(cub.p_min, cub.p_max, cub.domains, space)
    region = cubs[0]
    for cub in cubs[1:]:
        region = region.intersect(cub)
        if region is None:
            raise EmptyIntersectionError(
                "cuboids have no common point, so they do not form a core"
            )
    return Core(cubs, doms)


def repaired_core(
    cuboids: Sequence[Cuboid], domains: Iterable[str], space: Space
) -> Core:
    """Core from `cuboids`, enlarging them if their intersection is empty.

    The repair computes the arithmetic mean of the cuboid centers and
    extends each cuboid componentwise by the minimal amount that makes it
    contain that point.
    """
    cubs = list(cuboids)
    doms = frozenset(domains)
    try:
        return make_core(cubs, doms, space)
    except EmptyIntersectionError:
        pass
    n = space.n_dims
    center = [
        sum(interval_midpoint(c.p_min[d], c.p_max[d]) for c in cubs) / len(cubs)
        for d in range(n)
    ]
    enlarged = [
        Cuboid(
            tuple(min(lo, center[d]) for d, lo in enumerate(c.p_min)),
            tuple(max(hi, center[d]) for d, hi in enumerate(c.p_max)),
            c.domains,
        )
        for c in cubs
    ]
    return make_core(enlarged, doms, space)

"""Conceptual space structure and point-level metric primitives.

A space is a fixed number of real-valued quality dimensions partitioned into
named domains. Distance within a domain is weighted Euclidean; the domain
distances are combined by a weighted sum (a Manhattan-style combination), and
similarity decays exponentially with that combined distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainMismatchError, ParameterError
from .weights import Weights

Point = tuple[float, ...]

DEFAULT_BETWEENNESS_TOL = 1e-10


@dataclass(frozen=True)
class Space:
    """Domain structure of a conceptual space.

    Attributes:
        n_dims: total number of quality dimensions.
        domains: domain id -> ordered tuple of the dimension indices it owns.
            The domains partition range(n_dims).
    """

    n_dims: int
    domains: dict[str, tuple[int, ...]]

    def __post_init__(self):
        if self.n_dims <= 0:
            raise ParameterError("a space needs at least one dimension")
        object.__setattr__(
            self, "domains", {dom: tuple(dims) for dom, dims in self.domains.items()}
        )
        all_dims: list[int] = []
        for dom, dims in self.domains.items():
            if not dims:
                raise ParameterError(f"domain {dom!r} has no dimensions")
            all_dims.extend(dims)
        if sorted(all_dims) != list(range(self.n_dims)):
            raise ParameterError(
                "domains must partition the dimension indices 0..n_dims-1 exactly"
            )

    def domain_of(self, dim: int) -> str:
        """Domain owning dimension `dim`."""
        for dom, dims in self.domains.items():
            if dim in dims:
                return dom
        raise ParameterError(f"dimension {dim} is outside this space")


def validate_point(coords: Sequence[float], space: Space) -> Point:
    """Coerce `coords` to a point of `space`, checking length and finiteness."""
    pt = tuple(float(v) for v in coords)
    if len(pt) != space.n_dims:
        raise ParameterError(
            f"point has {len(pt)} coordinates, space has {space.n_dims} dimensions"
        )
    if not all(math.isfinite(v) for v in pt):
        raise ParameterError("point coordinates must be finite")
    return pt


def weighted_distance(x: Sequence[float], y: Sequence[float], w: Weights) -> float:
    """Combined distance over exactly the domains covered by `w`.

    Within each domain of `w` the distance is the weighted Euclidean metric;
    the per-domain distances are summed with the domain weights. Coordinates
    of dimensions outside `w` are ignored, which is what concept operations
    restricted to a sub-structure (e.g. single-domain properties) rely on.
    """
    total = 0.0
    for dom, dom_w in w.domain_weights.items():
        inner = 0.0
        for dim, dim_w in w.dimension_weights[dom].items():
            diff = x[dim] - y[dim]
            inner += dim_w * diff * diff
        total += dom_w * math.sqrt(inner)
    return total


def _check_weights_cover(w: Weights, space: Space) -> None:
    if set(w.domain_weights) != set(space.domains):
        raise DomainMismatchError(
            "weights cover domains "
            f"{sorted(w.domain_weights)}, space has {sorted(space.domains)}"
        )
    for dom, dims in space.domains.items():
        if set(w.dimension_weights[dom]) != set(dims):
            raise DomainMismatchError(
                f"weights for domain {dom!r} do not match the space's dimensions"
            )


def combined_distance(
    x: Sequence[float], y: Sequence[float], w: Weights, space: Space
) -> float:
    """Combined metric of the full space between points `x` and `y`.

    `w` must cover every domain of `space`.
    """
    _check_weights_cover(w, space)
    return weighted_distance(
        validate_point(x, space), validate_point(y, space), w
    )


def between(
    x: Sequence[float],
    y: Sequence[float],
    z: Sequence[float],
    w: Weights,
    space: Space,
    tol: float = DEFAULT_BETWEENNESS_TOL,
) -> bool:
    """Whether `y` lies between `x` and `z` under the combined metric.

    Holds when d(x,y) + d(y,z) equals d(x,z) up to the absolute tolerance
    `tol` on the sum defect.
    """
    if tol <= 0.0:
        raise ParameterError("tolerance must be positive")
    defect = (
        combined_distance(x, y, w, space)
        + combined_distance(y, z, w, space)
        - combined_distance(x, z, w, space)
    )
    return abs(defect) <= tol


def similarity(
    x: Sequence[float], y: Sequence[float], c: float, w: Weights, space: Space
) -> float:
    """Similarity exp(-c * distance); equals 1 exactly when x == y."""
    if c <= 0.0:
        raise ParameterError("sensitivity c must be positive")
    return math.exp(-c * combined_distance(x, y, w, space))

"""Salience weights for domains and for dimensions within domains.

A weight structure assigns one positive weight to every domain and, inside
each domain, one positive weight to every dimension. Domain weights sum to
the number of domains and dimension weights sum to one per domain. The
constructor enforces both constraints, so un-normalized weight values never
circulate through the rest of the library.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import DomainMismatchError, ParameterError

# Constructor accepts sums this far off; make_weights rescales anything
# further off than _RESCALE_TOL so normalization is bitwise idempotent.
_NORM_TOL = 1e-9
_RESCALE_TOL = 1e-12

_RATIO_TOL = 1e-9


@dataclass(frozen=True)
class Weights:
    """Normalized salience weights.

    Attributes:
        domain_weights: domain id -> positive weight, summing to the number
            of domains.
        dimension_weights: domain id -> (dimension index -> positive weight),
            each inner map summing to one.
    """

    domain_weights: dict[str, float]
    dimension_weights: dict[str, dict[int, float]]

    def __post_init__(self):
        object.__setattr__(self, "domain_weights", dict(self.domain_weights))
        object.__setattr__(
            self,
            "dimension_weights",
            {dom: dict(dw) for dom, dw in self.dimension_weights.items()},
        )
        if not self.domain_weights:
            raise ParameterError("weight structure needs at least one domain")
        if set(self.domain_weights) != set(self.dimension_weights):
            raise DomainMismatchError(
                "domain weights and dimension weights cover different domains"
            )
        for dom, w in self.domain_weights.items():
            if not (w > 0.0 and math.isfinite(w)):
                raise ParameterError(f"domain weight for {dom!r} must be positive")
            if not self.dimension_weights[dom]:
                raise ParameterError(f"domain {dom!r} has no dimension weights")
            for dim, dw in self.dimension_weights[dom].items():
                if not (dw > 0.0 and math.isfinite(dw)):
                    raise ParameterError(
                        f"dimension weight for {dim} in {dom!r} must be positive"
                    )
        total = sum(self.domain_weights.values())
        if abs(total - len(self.domain_weights)) > _NORM_TOL:
            raise ParameterError(
                f"domain weights sum to {total}, expected {len(self.domain_weights)}"
            )
        for dom, dw in self.dimension_weights.items():
            s = sum(dw.values())
            if abs(s - 1.0) > _NORM_TOL:
                raise ParameterError(
                    f"dimension weights of {dom!r} sum to {s}, expected 1"
                )

    @property
    def domains(self) -> frozenset[str]:
        return frozenset(self.domain_weights)

    def domain_of(self, dim: int) -> str:
        """Domain that owns dimension `dim`."""
        for dom, dw in self.dimension_weights.items():
            if dim in dw:
                return dom
        raise ParameterError(f"dimension {dim} is not covered by these weights")

    def dims(self) -> list[int]:
        """All dimension indices covered, in sorted order."""
        out: list[int] = []
        for dw in self.dimension_weights.values():
            out.extend(dw)
        return sorted(out)

    def scale(self, dim: int) -> float:
        """Per-dimension metric scale w_domain * sqrt(w_dim)."""
        dom = self.domain_of(dim)
        return self.domain_weights[dom] * math.sqrt(self.dimension_weights[dom][dim])


def make_weights(
    raw_domain_w: Mapping[str, float],
    raw_dim_w: Mapping[str, Mapping[int, float]],
) -> Weights:
    """Build a Weights value, rescaling each group to its required sum.

    Rescaling preserves the ratios within each group. Already-normalized
    input is passed through unchanged, which makes the function idempotent.

    Raises:
        ParameterError: on non-positive raw weights.
        DomainMismatchError: if the two maps cover different domains.
    """
    if not raw_domain_w:
        raise ParameterError("weight structure needs at least one domain")
    if set(raw_domain_w) != set(raw_dim_w):
        raise DomainMismatchError(
            "domain weights and dimension weights cover different domains"
        )
    for dom, w in raw_domain_w.items():
        if not (w > 0.0 and math.isfinite(w)):
            raise ParameterError(f"domain weight for {dom!r} must be positive")
        for dim, dw in raw_dim_w[dom].items():
            if not (dw > 0.0 and math.isfinite(dw)):
                raise ParameterError(
                    f"dimension weight for {dim} in {dom!r} must be positive"
                )

    domain_w = _rescaled(raw_domain_w, float(len(raw_domain_w)))
    dim_w = {dom: _rescaled(raw_dim_w[dom], 1.0) for dom in raw_domain_w}
    return Weights(domain_w, dim_w)


def _rescaled(values: Mapping, target: float) -> dict:
    total = sum(values.values())
    if abs(total - target) <= _RESCALE_TOL:
        return {k: float(v) for k, v in values.items()}
    factor = target / total
    return {k: float(v) * factor for k, v in values.items()}


def _check_same_structure(w1: Weights, w2: Weights) -> None:
    if set(w1.domain_weights) != set(w2.domain_weights):
        raise DomainMismatchError(
            "weight structures cover different domains: "
            f"{sorted(w1.domain_weights)} vs {sorted(w2.domain_weights)}"
        )
    for dom in w1.domain_weights:
        if set(w1.dimension_weights[dom]) != set(w2.dimension_weights[dom]):
            raise DomainMismatchError(
                f"domain {dom!r} has different dimensions in the two structures"
            )


def interpolate(w1: Weights, w2: Weights) -> Weights:
    """Entrywise arithmetic mean of two weight structures, renormalized.

    Both structures must cover the same domains and dimensions.
    """
    _check_same_structure(w1, w2)
    return blend_weights(w1, w2)


def blend_weights(w1: Weights, w2: Weights) -> Weights:
    """Mean of two weight structures over the union of their domains.

    Domains present in only one structure keep that structure's weights
    before renormalization. Used when combining concepts whose domain sets
    differ; equals `interpolate` when the structures match.
    """
    dom_w: dict[str, float] = {}
    dim_w: dict[str, dict[int, float]] = {}
    for dom in sorted(set(w1.domain_weights) | set(w2.domain_weights)):
        in1 = dom in w1.domain_weights
        in2 = dom in w2.domain_weights
        if in1 and in2:
            if set(w1.dimension_weights[dom]) != set(w2.dimension_weights[dom]):
                raise DomainMismatchError(
                    f"domain {dom!r} has different dimensions in the two structures"
                )
            dom_w[dom] = 0.5 * (w1.domain_weights[dom] + w2.domain_weights[dom])
            dim_w[dom] = {
                d: 0.5 * (w1.dimension_weights[dom][d] + w2.dimension_weights[dom][d])
                for d in w1.dimension_weights[dom]
            }
        else:
            src = w1 if in1 else w2
            dom_w[dom] = src.domain_weights[dom]
            dim_w[dom] = dict(src.dimension_weights[dom])
    return make_weights(dom_w, dim_w)


def project_weights(w: Weights, kept_domains: Iterable[str]) -> Weights:
    """Restrict weights to `kept_domains` and renormalize the domain level.

    Dimension weights inside the kept domains are unchanged (they already
    sum to one per domain).
    """
    kept = set(kept_domains)
    if not kept:
        raise ParameterError("must keep at least one domain")
    extra = kept - set(w.domain_weights)
    if extra:
        raise ParameterError(f"unknown domains in projection: {sorted(extra)}")
    order = [dom for dom in w.domain_weights if dom in kept]
    return make_weights(
        {dom: w.domain_weights[dom] for dom in order},
        {dom: w.dimension_weights[dom] for dom in order},
    )


def linearly_dependent(w1: Weights, w2: Weights, dims: Iterable[int]) -> bool:
    """Whether one metric scale is a positive multiple of the other on `dims`.

    True iff there is a single t > 0 with
    w1.scale(d) == t * w2.scale(d) for every d in dims, compared with a
    relative tolerance of 1e-9 on the pairwise ratios.
    """
    dim_list = sorted(set(dims))
    if not dim_list:
        raise ParameterError("dims must be non-empty")
    ratios = [w1.scale(d) / w2.scale(d) for d in dim_list]
    first = ratios[0]
    return all(math.isclose(r, first, rel_tol=_RATIO_TOL) for r in ratios[1:])


def uniform_weights(domains: Mapping[str, Iterable[int]]) -> Weights:
    """Weights treating every domain, and every dimension within, equally."""
    return make_weights(
        {dom: 1.0 for dom in domains},
        {dom: {d: 1.0 for d in dims} for dom, dims in domains.items()},
    )

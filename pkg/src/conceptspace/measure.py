"""Hypervolume of fuzzy cuboids and concepts, subsethood, implication.

The volume under a fuzzified cuboid's membership function has a closed
form: a sum over all subsets of the measured dimensions, where the excluded
dimensions contribute their scaled extents and the kept dimensions
contribute the volume of the exponential tails, domain by domain. Concept
sizes follow by inclusion-exclusion over the core's cuboids. A Monte-Carlo
estimator serves as an independent cross-check of the closed form.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .concept import Concept
from .cuboid import Cuboid
from .errors import ParameterError, SizeLimitError, UnboundedSizeError
from .space import Space
from .weights import Weights

_MAX_CUBOIDS = 20
_MIN_MC_SAMPLES = 10_000


@dataclass(frozen=True)
class MeasureContext:
    """Sensitivity and weights under which sizes are evaluated.

    May differ from a concept's own parameters; subsethood, for example,
    measures both operands in the second concept's context.
    """

    c: float
    weights: Weights

    def __post_init__(self):
        if not (self.c > 0.0 and math.isfinite(self.c)):
            raise ParameterError("sensitivity c must be positive")


def fuzzy_cuboid_hypervolume(cub: Cuboid, mu0: float, ctx: MeasureContext) -> float:
    """Integral of the fuzzified cuboid's membership over the whole space.

    Measured dimensions are exactly those covered by the context's weights;
    the cuboid must be finite on all of them. Writing
    a_d = c * w_domain(d) * sqrt(w_d) * extent_d, the integral is

        mu0 / (c^n * prod_d w_domain(d) * sqrt(w_d)) *
        sum over subsets K of the dimensions:
            prod_{d not in K} a_d *
            prod over domains D of the structure restricted to K:
                |D|! * pi^(|D|/2) / Gamma(|D|/2 + 1)

    evaluated literally as written.
    """
    if not (0.0 < mu0 <= 1.0):
        raise ParameterError("mu0 must lie in (0, 1]")
    w = ctx.weights
    dims = w.dims()
    for d in dims:
        if math.isinf(cub.p_min[d]) or math.isinf(cub.p_max[d]):
            raise UnboundedSizeError(
                f"cuboid is unbounded on measured dimension {d}"
            )
    n = len(dims)
    a = {d: ctx.c * w.scale(d) * (cub.p_max[d] - cub.p_min[d]) for d in dims}
    denominator = ctx.c**n
    for d in dims:
        denominator *= w.scale(d)

    total = 0.0
    for i in range(n + 1):
        for kept in itertools.combinations(dims, i):
            term = 1.0
            for d in dims:
                if d not in kept:
                    term *= a[d]
            counts: dict[str, int] = {}
            for d in kept:
                dom = w.domain_of(d)
                counts[dom] = counts.get(dom, 0) + 1
            for n_dom in counts.values():
                term *= (
                    math.factorial(n_dom)
                    * math.pi ** (n_dom / 2.0)
                    / math.exp(math.lgamma(n_dom / 2.0 + 1.0))
                )
            total += term
    return mu0 * total / denominator


def concept_size(t: Concept, ctx: MeasureContext | None = None) -> float:
    """Hypervolume under the concept's membership function.

    Inclusion-exclusion over all non-empty subsets of the core's cuboids;
    each subset contributes the hypervolume of its crisp intersection
    (empty intersections contribute zero). Defaults to the concept's own
    sensitivity and weights as the measuring context.
    """
    if ctx is None:
        ctx = MeasureContext(t.c, t.weights)
    cuboids = t.core.cuboids
    m = len(cuboids)
    if m > _MAX_CUBOIDS:
        raise SizeLimitError(
            f"core has {m} cuboids; inclusion-exclusion is capped at {_MAX_CUBOIDS}"
        )
    total = 0.0
    for l in range(1, m + 1):
        sign = 1.0 if l % 2 == 1 else -1.0
        for subset in itertools.combinations(cuboids, l):
            inter = subset[0]
            for cub in subset[1:]:
                inter = inter.intersect(cub)
                if inter is None:
                    break
            if inter is None:
                continue
            total += sign * fuzzy_cuboid_hypervolume(inter, t.mu0, ctx)
    return total


def subsethood(t1: Concept, t2: Concept, space: Space) -> float:
    """Graded containment of t1 in t2.

    Size of the intersection divided by the size of t1, both measured in
    the context set by t2: its sensitivity and its weights, hence over
    t2's domain structure. Clamped to [0, 1] against rounding overshoot.
    """
    ctx = MeasureContext(t2.c, t2.weights)
    numerator = concept_size(t1.intersect(t2, space), ctx)
    denominator = concept_size(t1, ctx)
    return min(max(numerator / denominator, 0.0), 1.0)


def implies(t1: Concept, t2: Concept, space: Space) -> float:
    """Implication degree; identical to subsethood."""
    return subsethood(t1, t2, space)


def monte_carlo_size(
    t: Concept, bounds: Cuboid, samples: int, seed: int
) -> float:
    """Monte-Carlo estimate of `concept_size` for cross-checking.

    Uniform samples over `bounds` (which must be finite and should enclose
    essentially all of the membership mass); the estimate is the mean
    membership times the bounds volume. Deterministic for a fixed seed via
    a counter-based generator.
    """
    if samples < _MIN_MC_SAMPLES:
        raise ParameterError(f"need at least {_MIN_MC_SAMPLES} samples")
    lo = np.asarray(bounds.p_min, dtype=float)
    hi = np.asarray(bounds.p_max, dtype=float)
    if not (np.isfinite(lo).all() and np.isfinite(hi).all()):
        raise ParameterError("sampling bounds must be finite")
    if np.any(lo > hi):
        raise ParameterError("sampling bounds must satisfy p_min <= p_max")

    rng = np.random.Generator(np.random.Philox(seed))
    pts = rng.uniform(lo, hi, size=(samples, lo.size))
    best = np.zeros(samples)
    w = t.weights
    for cub in t.core.cuboids:
        clipped = np.clip(pts, cub.p_min, cub.p_max)
        dist = np.zeros(samples)
        for dom, dom_w in w.domain_weights.items():
            inner = np.zeros(samples)
            for dim, dim_w in w.dimension_weights[dom].items():
                delta = pts[:, dim] - clipped[:, dim]
                inner += dim_w * delta * delta
            dist += dom_w * np.sqrt(inner)
        np.maximum(best, np.exp(-t.c * dist), out=best)
    volume = float(np.prod(hi - lo))
    return t.mu0 * float(best.mean()) * volume

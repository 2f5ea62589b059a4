"""Independent oracles and random instance generators for the test suite.

The grid oracle reimplements fuzzified-cuboid membership with its own
vectorized numpy code so that the library's closed forms and search
routines are checked against an implementation that shares none of their
code paths.
"""

import math
import random

import numpy as np

from conceptspace import Concept, Space, make_core, make_cuboid, make_weights


def grid_membership(pts: np.ndarray, cub, t: Concept) -> np.ndarray:
    """Membership of each row of `pts` in the fuzzified cuboid `cub`."""
    lo = np.asarray(cub.p_min)
    hi = np.asarray(cub.p_max)
    clipped = np.clip(pts, lo, hi)
    dist = np.zeros(len(pts))
    for dom, dom_w in t.weights.domain_weights.items():
        inner = np.zeros(len(pts))
        for dim, dim_w in t.weights.dimension_weights[dom].items():
            delta = pts[:, dim] - clipped[:, dim]
            inner += dim_w * delta * delta
        dist += dom_w * np.sqrt(inner)
    return t.mu0 * np.exp(-t.c * dist)


def _slope_bound(t: Concept) -> float:
    """Upper bound on the gradient norm of the fuzzified-cuboid membership."""
    total = 0.0
    for dom, dom_w in t.weights.domain_weights.items():
        total += dom_w * dom_w * max(t.weights.dimension_weights[dom].values())
    return t.c * t.mu0 * math.sqrt(total)


def grid_maxmin_alpha(c1, c2, t1: Concept, t2: Concept, tol: float = 2e-5) -> float:
    """Brute-force max over x of min(membership1, membership2), within tol.

    Iteratively refined grid search over the bounding box of both cuboids.
    Each round keeps the bounding box of all grid points whose value is
    within a Lipschitz margin of the round's maximum, padded by one cell;
    that window provably retains the true maximizer, so refinement cannot
    lose ridge-shaped peaks. When the window stops shrinking (a genuine
    plateau), the grid resolution is doubled instead. Stops once half a
    cell diagonal of value uncertainty drops below `tol`.
    """
    n = len(c1.p_min)
    lo = np.array([min(c1.p_min[d], c2.p_min[d]) for d in range(n)])
    hi = np.array([max(c1.p_max[d], c2.p_max[d]) for d in range(n)])
    assert np.isfinite(lo).all() and np.isfinite(hi).all()
    lipschitz = max(_slope_bound(t1), _slope_bound(t2))

    pts_per_axis = 21
    axis_cap = 161 if n == 2 else 81
    best = -1.0
    for _ in range(200):
        axes = [np.linspace(lo[d], hi[d], pts_per_axis) for d in range(n)]
        mesh = np.meshgrid(*axes, indexing="ij")
        pts = np.stack([m.ravel() for m in mesh], axis=1)
        values = np.minimum(
            grid_membership(pts, c1, t1), grid_membership(pts, c2, t2)
        )
        round_max = float(values.max())
        best = max(best, round_max)
        cell = (hi - lo) / (pts_per_axis - 1)
        diag = float(np.linalg.norm(cell))
        if 0.5 * lipschitz * diag < tol:
            return best
        qualifying = pts[values >= round_max - 2.0 * lipschitz * diag]
        new_lo = np.maximum(qualifying.min(axis=0) - cell, lo)
        new_hi = np.minimum(qualifying.max(axis=0) + cell, hi)
        if float(np.max(new_hi - new_lo)) > 0.9 * float(np.max(hi - lo)):
            pts_per_axis = min(2 * pts_per_axis - 1, axis_cap)
        lo, hi = new_lo, new_hi
    return best


def random_gap_instance(rng: random.Random, n_dims: int):
    """Two single-cuboid concepts in a random small space.

    The cuboids may or may not overlap; weights, sensitivities and mu0
    values vary. Returns (space, cuboid1, cuboid2, concept1, concept2).
    """
    if n_dims == 2:
        domain_map = rng.choice(
            [{"a": (0,), "b": (1,)}, {"a": (0, 1)}]
        )
    else:
        domain_map = rng.choice(
            [
                {"a": (0,), "b": (1,), "c": (2,)},
                {"a": (0, 1), "b": (2,)},
                {"a": (0, 1, 2)},
            ]
        )
    space = Space(n_dims, domain_map)
    domains = frozenset(domain_map)

    def rand_weights():
        return make_weights(
            {dom: rng.uniform(0.3, 2.0) for dom in domain_map},
            {
                dom: {d: rng.uniform(0.3, 2.0) for d in dims}
                for dom, dims in domain_map.items()
            },
        )

    def rand_concept():
        lo = [rng.uniform(-1.0, 1.0) for _ in range(n_dims)]
        hi = [v + rng.uniform(0.05, 1.0) for v in lo]
        cub = make_cuboid(lo, hi, domains, space)
        core = make_core([cub], domains, space)
        mu0 = rng.choice([1.0, rng.uniform(0.3, 1.0)])
        c = rng.uniform(1.0, 10.0)
        return cub, Concept(core, mu0, c, rand_weights())

    cub1, t1 = rand_concept()
    cub2, t2 = rand_concept()
    return space, cub1, cub2, t1, t2


def random_concept(
    rng: random.Random,
    space: Space,
    max_cuboids: int = 3,
    uniform_domain_weights: bool = False,
) -> Concept:
    """Random multi-cuboid concept over the full fruit-style space."""
    domains = frozenset(space.domains)
    base_lo = [rng.uniform(-0.5, 0.5) for _ in range(space.n_dims)]
    base_hi = [v + rng.uniform(0.1, 0.8) for v in base_lo]
    cuboids = [make_cuboid(base_lo, base_hi, domains, space)]
    for _ in range(rng.randint(0, max_cuboids - 1)):
        # overlap the seed cuboid so the core stays valid
        anchor = [rng.uniform(lo, hi) for lo, hi in zip(base_lo, base_hi)]
        lo = [a - rng.uniform(0.0, 0.7) for a in anchor]
        hi = [a + rng.uniform(0.05, 0.7) for a in anchor]
        cuboids.append(make_cuboid(lo, hi, domains, space))
    core = make_core(cuboids, domains, space)
    w = make_weights(
        {
            dom: 1.0 if uniform_domain_weights else rng.uniform(0.3, 2.0)
            for dom in space.domains
        },
        {
            dom: {d: rng.uniform(0.3, 2.0) for d in dims}
            for dom, dims in space.domains.items()
        },
    )
    return Concept(core, rng.uniform(0.3, 1.0), rng.uniform(1.0, 15.0), w)


def sample_points(rng: random.Random, space: Space, lo: float, hi: float, count: int):
    return [
        tuple(rng.uniform(lo, hi) for _ in range(space.n_dims))
        for _ in range(count)
    ]


def quad_1d_size(extent: float, mu0: float, c: float) -> float:
    """Numeric integral of a one-dimensional fuzzified interval.

    Flat top of length `extent` plus two exponential tails, integrated by
    quadrature instead of the closed form.
    """
    from scipy.integrate import quad

    tail, _ = quad(lambda s: math.exp(-c * s), 0.0, 60.0 / c)
    return mu0 * (extent + 2.0 * tail)

"""Fuzzy concepts: membership and the combination operations.

A concept couples a core with a maximum membership mu0, a sensitivity c and
a weight structure. Membership of a point is mu0 times the exponentially
decayed combined distance to the nearest core point; since the metric is
separable per dimension, that nearest point is the componentwise clamp of
the query into each cuboid, so membership has a closed form.

The intersection of two concepts reduces to intersecting fuzzified cuboids
pairwise and keeping the pairs that reach the highest membership level.
`intersect_fuzzy_cuboids` distinguishes four situations:

 1. the crisp cuboids overlap;
 2. one cuboid lies inside the cut of the other's fuzzified cuboid at the
    other concept's maximum membership (only possible for unequal mu0);
 3. the fuzzified cuboids meet in a single point between the closest pair;
 4. the meeting set is higher-dimensional, which requires linearly
    dependent metric scales and is approximated by a bounding box found
    through a face scan.

In every non-crisp case the result is finally extruded across the
dimensions where the two cuboids already overlapped.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from scipy.optimize import minimize

from .core import Core, make_core, repaired_core
from .cuboid import Cuboid, drop_subsumed
from .errors import DomainMismatchError, NumericFailureError, ParameterError
from .space import Point, Space, between, validate_point, weighted_distance
from .weights import (
    Weights,
    blend_weights,
    interpolate,
    linearly_dependent,
    project_weights,
    uniform_weights,
)

# Absolute tolerance on the membership-equality defect of a crossing point.
CROSSING_TOL = 1e-10
_CROSSING_MAX_ITER = 10_000
_BISECT_MAX_ITER = 200

# Pair results this close to the best pair's level are kept in the new core.
_ALPHA_GROUP_TOL = 1e-9

# Face-scan discretization: grid points per free dimension and the
# membership tolerance for accepting a grid point as part of the level set.
_FACE_GRID = 20
_FACE_TOL = 1e-6

CONCEPT_BETWEENNESS_TOL = 1e-8


@dataclass(frozen=True)
class Concept:
    """Fuzzy concept over a core, with membership ceiling mu0,
    sensitivity c and salience weights matching the core's domains."""

    core: Core
    mu0: float
    c: float
    weights: Weights

    def __post_init__(self):
        if not (0.0 < self.mu0 <= 1.0):
            raise ParameterError("mu0 must lie in (0, 1]")
        if not (self.c > 0.0 and math.isfinite(self.c)):
            raise ParameterError("sensitivity c must be positive")
        if self.weights.domains != self.core.domains:
            raise DomainMismatchError(
                "weights cover "
                f"{sorted(self.weights.domains)}, core is defined on "
                f"{sorted(self.core.domains)}"
            )

    def membership(self, x: Sequence[float], space: Space) -> float:
        """Degree to which `x` belongs to the concept, in [0, mu0].

        Closed form: the nearest core point is the componentwise clamp of
        `x` into each cuboid; the best cuboid wins. Equals mu0 exactly on
        the core.
        """
        pt = validate_point(x, space)
        best = 0.0
        for cub in self.core.cuboids:
            d = weighted_distance(pt, cub.clamp(pt), self.weights)
            best = max(best, math.exp(-self.c * d))
        return self.mu0 * best

    def intersect(self, other: "Concept", space: Space) -> "Concept":
        """Highest common membership region of two concepts.

        The domain sets may differ (property vs full concept); the result
        is defined on their union. The new core collects all cuboid-pair
        results within 1e-9 of the best level, subsumed cuboids dropped,
        repaired if the survivors drifted apart. The new mu0 is the best
        level, c is the minimum, and the weights are the blend of the two
        structures.
        """
        results = [
            intersect_fuzzy_cuboids(c1, c2, self, other)
            for c1 in self.core.cuboids
            for c2 in other.core.cuboids
        ]
        alpha = max(a for a, _ in results)
        survivors = drop_subsumed(
            cub for a, cub in results if alpha - a <= _ALPHA_GROUP_TOL
        )
        domains = self.core.domains | other.core.domains
        new_core = repaired_core(survivors, domains, space)
        return Concept(
            new_core,
            alpha,
            min(self.c, other.c),
            blend_weights(self.weights, other.weights),
        )

    def unify(self, other: "Concept", space: Space) -> "Concept":
        """Union of the cores (repaired if needed) with the more permissive
        parameters: maximum mu0, minimum c, interpolated weights."""
        if self.core.domains != other.core.domains:
            raise DomainMismatchError(
                "union requires equal domain sets: "
                f"{sorted(self.core.domains)} vs {sorted(other.core.domains)}"
            )
        return Concept(
            self.core.union_with_repair(other.core, space),
            max(self.mu0, other.mu0),
            min(self.c, other.c),
            interpolate(self.weights, other.weights),
        )

    def project(self, kept_domains: Iterable[str], space: Space) -> "Concept":
        """Restriction to a subset of the domains; mu0 and c are kept."""
        kept = frozenset(kept_domains)
        return Concept(
            self.core.project(kept, space),
            self.mu0,
            self.c,
            project_weights(self.weights, kept),
        )

    def cut(
        self, dim: int, value: float, space: Space
    ) -> tuple["Concept | None", "Concept | None"]:
        """Split along dimension `dim` at `value`; parameters unchanged."""
        plus, minus = self.core.cut(dim, value, space)
        wrap = lambda core: (
            Concept(core, self.mu0, self.c, self.weights) if core else None
        )
        return wrap(plus), wrap(minus)

    def between(
        self,
        first: "Concept",
        second: "Concept",
        space: Space,
        tol: float = CONCEPT_BETWEENNESS_TOL,
    ) -> float:
        """1.0 when this concept's core midpoint lies between the others'.

        Uses uniform weights over the whole space for the midpoint test.
        """
        w = uniform_weights(space.domains)
        ok = between(
            first.core.midpoint(),
            self.core.midpoint(),
            second.core.midpoint(),
            w,
            space,
            tol,
        )
        return 1.0 if ok else 0.0

    def similarity_to(self, other: "Concept", space: Space) -> float:
        """Similarity of the core midpoints under `other`'s parameters.

        The second concept sets the context: its sensitivity and weights
        are used, and the distance runs over its domains only.
        """
        d = weighted_distance(
            self.core.midpoint(), other.core.midpoint(), other.weights
        )
        return math.exp(-other.c * d)


# --------------------------------------------------------------------------
# Pairwise fuzzy-cuboid intersection
# --------------------------------------------------------------------------


class _GapProblem:
    """Membership functions of two fuzzified cuboids over the gap box.

    Works in displacement coordinates: u[k] is how far coordinate diff[k]
    has moved from a (the first cuboid's facing bound) toward b. Both
    memberships depend only on these displacements because every other
    dimension can sit inside both cuboids simultaneously.
    """

    def __init__(self, a: Point, b: Point, t1: Concept, t2: Concept):
        self.a = a
        self.b = b
        self.diff = [d for d in range(len(a)) if a[d] != b[d]]
        if not self.diff:
            raise ParameterError("closest points coincide; nothing to search")
        self.gaps = [abs(b[d] - a[d]) for d in self.diff]
        self.mu01, self.c1 = t1.mu0, t1.c
        self.mu02, self.c2 = t2.mu0, t2.c
        self.groups1 = self._groups(t1.weights)
        self.groups2 = self._groups(t2.weights)

    def _groups(self, w: Weights) -> list[tuple[float, list[tuple[int, float]]]]:
        by_dom: dict[str, list[tuple[int, float]]] = {}
        for k, d in enumerate(self.diff):
            dom = w.domain_of(d)
            by_dom.setdefault(dom, []).append((k, w.dimension_weights[dom][d]))
        return [(w.domain_weights[dom], entries) for dom, entries in by_dom.items()]

    @staticmethod
    def _distance(u: Sequence[float], groups) -> float:
        total = 0.0
        for dom_w, entries in groups:
            inner = 0.0
            for k, dim_w in entries:
                inner += dim_w * u[k] * u[k]
            total += dom_w * math.sqrt(inner)
        return total

    def mu1(self, u: Sequence[float]) -> float:
        return self.mu01 * math.exp(-self.c1 * self._distance(u, self.groups1))

    def mu2(self, u: Sequence[float]) -> float:
        rest = [g - v for g, v in zip(self.gaps, u)]
        return self.mu02 * math.exp(-self.c2 * self._distance(rest, self.groups2))

    def embed(self, u: Sequence[float]) -> Point:
        """Displacement vector back to full-space coordinates."""
        x = list(self.a)
        for k, d in enumerate(self.diff):
            x[d] = self.a[d] + math.copysign(u[k], self.b[d] - self.a[d])
        return tuple(x)


def _fuzzy_cuboid_membership(
    x: Sequence[float], cub: Cuboid, t: Concept
) -> float:
    """Membership of `x` were the concept's core just this one cuboid."""
    return t.mu0 * math.exp(
        -t.c * weighted_distance(x, cub.clamp(x), t.weights)
    )


def find_crossing_point(
    a: Point, b: Point, t1: Concept, t2: Concept
) -> tuple[Point, float]:
    """Equal-membership point of two fuzzified cuboids, membership maximal.

    `a` and `b` must be a closest pair with the crisp and mu0-cut overlap
    cases already excluded, so the memberships interleave strictly and the
    crossing lies inside the box spanned by `a` and `b`. With one differing
    dimension the crossing is solved in closed form; otherwise a bounded
    Nelder-Mead minimization of max(-log mu1, -log mu2), started at the
    segment midpoint, locates it, followed by a monotone bisection that
    drives the membership-equality defect below 1e-10.

    Returns:
        (point, membership level at the point)

    Raises:
        NumericFailureError: if the search exhausts its iteration budget.
    """
    prob = _GapProblem(a, b, t1, t2)
    if len(prob.diff) == 1:
        d = prob.diff[0]
        g = prob.gaps[0]
        slope1 = t1.c * t1.weights.scale(d)
        slope2 = t2.c * t2.weights.scale(d)
        u = (slope2 * g + math.log(t1.mu0) - math.log(t2.mu0)) / (slope1 + slope2)
        u_star = [min(max(u, 0.0), g)]
    else:
        log1 = math.log(prob.mu01)
        log2 = math.log(prob.mu02)

        def objective(u):
            rest = [g - v for g, v in zip(prob.gaps, u)]
            return max(
                prob.c1 * prob._distance(u, prob.groups1) - log1,
                prob.c2 * prob._distance(rest, prob.groups2) - log2,
            )

        res = minimize(
            objective,
            x0=[0.5 * g for g in prob.gaps],
            method="Nelder-Mead",
            bounds=[(0.0, g) for g in prob.gaps],
            options={
                "maxiter": _CROSSING_MAX_ITER,
                "maxfev": _CROSSING_MAX_ITER,
                "xatol": 1e-12,
                "fatol": 1e-12,
            },
        )
        if not res.success:
            raise NumericFailureError(
                f"crossing-point optimization did not converge: {res.message}"
            )
        u_star = [min(max(v, 0.0), g) for v, g in zip(res.x, prob.gaps)]
        u_star = _bisect_to_equality(prob, u_star)
    return prob.embed(u_star), prob.mu1(u_star)


def _bisect_to_equality(prob: _GapProblem, u: list[float]) -> list[float]:
    """Slide `u` along the gap diagonal until mu1 and mu2 agree.

    The membership ratio decreases monotonically along any componentwise
    monotone path from a to b, so bisecting the straight segment between
    `u` and the appropriate endpoint converges to the equality locus while
    staying close to the optimizer's solution.
    """
    defect = prob.mu1(u) - prob.mu2(u)
    if abs(defect) <= CROSSING_TOL:
        return u
    if defect > 0.0:
        lo, hi = u, list(prob.gaps)
    else:
        lo, hi = [0.0] * len(u), u
    for _ in range(_BISECT_MAX_ITER):
        mid = [0.5 * (l + h) for l, h in zip(lo, hi)]
        defect = prob.mu1(mid) - prob.mu2(mid)
        if abs(defect) <= CROSSING_TOL:
            return mid
        if defect > 0.0:
            lo = mid
        else:
            hi = mid
    raise NumericFailureError(
        "crossing-point bisection did not reach the equality tolerance"
    )


def _equal_membership_face_points(
    prob: _GapProblem, alpha: float
) -> list[list[float]] | None:
    """Scan the gap box's i-faces for points where both memberships hit alpha.

    Starting with edges (i = 1) and moving to higher-dimensional faces,
    every face is sampled with a uniform grid of 20 points per free
    dimension; a sample qualifies when both memberships are within 1e-6 of
    `alpha`. The lowest i with any qualifying samples wins. Returns the
    displacement vectors, or None if no face level produced a point.
    """
    k_total = len(prob.diff)
    for i in range(1, k_total):
        found: list[list[float]] = []
        for free in itertools.combinations(range(k_total), i):
            fixed = [k for k in range(k_total) if k not in free]
            axes = [
                [prob.gaps[k] * step / (_FACE_GRID - 1) for step in range(_FACE_GRID)]
                for k in free
            ]
            for corner in itertools.product((0.0, 1.0), repeat=len(fixed)):
                base = [0.0] * k_total
                for k, side in zip(fixed, corner):
                    base[k] = prob.gaps[k] * side
                for combo in itertools.product(*axes):
                    u = list(base)
                    for k, v in zip(free, combo):
                        u[k] = v
                    if (
                        abs(prob.mu1(u) - alpha) <= _FACE_TOL
                        and abs(prob.mu2(u) - alpha) <= _FACE_TOL
                    ):
                        found.append(u)
        if found:
            return found
    return None


def _alpha_cut_slice(
    src: Cuboid,
    t_src: Concept,
    dst: Cuboid,
    a_src: Point,
    b_dst: Point,
    diff: list[int],
    alpha: float,
) -> dict[int, tuple[float, float]]:
    """Per-dimension extent of (alpha-cut of fuzzified src) within dst.

    Restricted to the differing dimensions. Every point of dst is at least
    the full gap away from src on each differing dimension, so the maximal
    reach along one dimension spends the remaining distance budget there
    while the other dimensions stay at their gap minimum; that is a
    closed-form calculation per dimension. The resulting intervals start at
    dst's facing bound and are capped by dst's far bound.
    """
    r = math.log(t_src.mu0 / alpha) / t_src.c
    w = t_src.weights
    gaps = {d: abs(b_dst[d] - a_src[d]) for d in diff}
    # per-domain cost when every differing dimension sits at its gap
    inner: dict[str, float] = {}
    for d in diff:
        dom = w.domain_of(d)
        inner[dom] = inner.get(dom, 0.0) + (
            w.dimension_weights[dom][d] * gaps[d] * gaps[d]
        )
    dom_cost = {
        dom: w.domain_weights[dom] * math.sqrt(v) for dom, v in inner.items()
    }
    total_cost = sum(dom_cost.values())

    out: dict[int, tuple[float, float]] = {}
    for d in diff:
        dom = w.domain_of(d)
        dim_w = w.dimension_weights[dom][d]
        const = total_cost - dom_cost[dom]
        rest = inner[dom] - dim_w * gaps[d] * gaps[d]
        budget = max((r - const) / w.domain_weights[dom], 0.0)
        reach = math.sqrt(max(budget * budget - rest, 0.0) / dim_w)
        reach = max(reach, gaps[d])
        if b_dst[d] > a_src[d]:
            out[d] = (b_dst[d], min(a_src[d] + reach, dst.p_max[d]))
        else:
            out[d] = (max(a_src[d] - reach, dst.p_min[d]), b_dst[d])
    return out


def _operand_key(cub: Cuboid, t: Concept):
    return (
        cub.p_min,
        cub.p_max,
        t.c,
        t.mu0,
        sorted(t.weights.domain_weights.items()),
        sorted(
            (dom, sorted(dw.items()))
            for dom, dw in t.weights.dimension_weights.items()
        ),
    )


def intersect_fuzzy_cuboids(
    c1: Cuboid, c2: Cuboid, t1: Concept, t2: Concept
) -> tuple[float, Cuboid]:
    """Highest membership level at which two fuzzified cuboids meet.

    Returns that level together with a cuboid approximation of the meeting
    set (see the module docstring for the case analysis). Total: every
    input pair lands in exactly one case. Operands are ordered by a
    canonical key first, which makes the operation exactly commutative
    despite the asymmetric numeric search.
    """
    crisp = c1.intersect(c2)
    if crisp is not None:
        return min(t1.mu0, t2.mu0), crisp
    if _operand_key(c2, t2) < _operand_key(c1, t1):
        return intersect_fuzzy_cuboids(c2, c1, t2, t1)

    a, b = c1.closest_points(c2)
    n = len(a)
    diff = [d for d in range(n) if a[d] != b[d]]

    if _fuzzy_cuboid_membership(b, c1, t1) >= t2.mu0:
        alpha = t2.mu0
        slices = _alpha_cut_slice(c1, t1, c2, a, b, diff, alpha)
    elif _fuzzy_cuboid_membership(a, c2, t2) >= t1.mu0:
        alpha = t1.mu0
        slices = _alpha_cut_slice(c2, t2, c1, b, a, diff, alpha)
    else:
        x_star, alpha = find_crossing_point(a, b, t1, t2)
        slices = {d: (x_star[d], x_star[d]) for d in diff}
        if len(diff) > 1 and linearly_dependent(t1.weights, t2.weights, diff):
            prob = _GapProblem(a, b, t1, t2)
            face_pts = _equal_membership_face_points(prob, alpha)
            if face_pts:
                pts = [prob.embed(u) for u in face_pts]
                slices = {
                    d: (min(p[d] for p in pts), max(p[d] for p in pts))
                    for d in diff
                }

    lo = list(a)
    hi = list(a)
    for d, (l, h) in slices.items():
        lo[d], hi[d] = l, h
    result = Cuboid(tuple(lo), tuple(hi), c1.domains | c2.domains)
    overlap = {
        d: (max(c1.p_min[d], c2.p_min[d]), min(c1.p_max[d], c2.p_max[d]))
        for d in range(n)
        if d not in diff
    }
    return alpha, result.extrude(overlap)

"""Certified bounds and randomized estimation of isotropic discrepancy.

The isotropic discrepancy J_N of a point set is the worst absolute
difference |count/N - vol| over all convex subsets of the unit cube.  It is
a supremum over an infinite family, so this module never claims to compute
it; instead it produces

- certified lower bounds: explicit convex bodies whose exact local
  discrepancy is an exact rational, established by the structure of the
  lattice (an empty slab between two occupied dual hyperplanes, and the
  most heavily occupied hyperplane itself), and

- a budgeted randomized search that evaluates more candidate bodies
  (halfspaces, slabs, and axis boxes at point-induced critical offsets) and
  keeps the best exactly-verified witness.

Every quantity reported as a bound is an exact Fraction backed by a witness
body; the estimator re-verifies each winning witness with a literal pass
over the points before reporting it.  The only irrational quantity, the
sigma-based upper bound d^2 2^d sigma(L), is carried in exact squared form.
"""

from __future__ import annotations

import json
import random
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import directed, lattice as lattice_mod, reduction, volume
from .errors import InputError, InvariantViolationError
from .lattice import IntegrationLattice, PointSet
from .volume import AxisBox, ConvexBody, Halfspace, Slab

DEFAULT_BUDGET = 10000
_RANDOM_NORMAL_RANGE = 10


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SlabCertificate:
    """An empty open slab between two adjacent occupied dual hyperplanes.

    Every node satisfies <normal, x> in Z, so the open slab between the
    planes k0 and k0 + 1 contains no node at all; its volume is therefore a
    certified lower bound on J_N (|0/N - vol| = vol).  The slab is chosen to
    contain the cube center when possible, and the larger-volume neighbor of
    the center plane otherwise.
    """

    body: Slab
    n_points_checked: int
    volume: Fraction
    implied_lower_bound: Fraction

    def to_dict(self) -> dict:
        return {
            "certificate": "empty_slab",
            "body": volume.body_to_dict(self.body),
            "n_points_checked": self.n_points_checked,
            "volume": str(self.volume),
            "implied_lower_bound": str(self.implied_lower_bound),
        }


@dataclass(frozen=True)
class HyperplaneCountCertificate:
    """Exact node counts on the dual hyperplane family <normal, x> = k.

    The most occupied plane is a convex set (a degenerate closed slab) of
    volume zero holding max_count points, so max_count/N is a certified
    lower bound on J_N.  The pigeonhole inequality
    (max_count/N)^2 * d >= sigma^2 is re-verified exactly, as is the bound
    floor(sqrt(d)/sigma) + 1 on the number of occupied planes.
    """

    normal: tuple
    plane_counts: tuple
    max_count: int
    n_points: int
    implied_lower_bound: Fraction
    sigma_sq: Fraction
    plane_count_limit: int
    witness_body: Slab

    def to_dict(self) -> dict:
        return {
            "certificate": "hyperplane_counts",
            "normal": [str(x) for x in self.normal],
            "plane_counts": [[k, c] for k, c in self.plane_counts],
            "max_count": self.max_count,
            "n_points": self.n_points,
            "implied_lower_bound": str(self.implied_lower_bound),
            "sigma_sq": str(self.sigma_sq),
            "plane_count_limit": self.plane_count_limit,
            "witness_body": volume.body_to_dict(self.witness_body),
        }


def _points_for(lat: IntegrationLattice, points, enum_cap):
    if not lat.is_integration:
        raise InputError(
            "discrepancy certificates need an integration lattice "
            "(integer-valued dual products)"
        )
    if points is None:
        return lattice_mod.enumerate_points(lat, cap=enum_cap)
    if lat.n_points is not None and len(points) != lat.n_points:
        raise InputError("point set does not match the lattice node count")
    return points


def _plane_values(normal, points) -> list[int]:
    values = []
    for x in points:
        v = sum(h * xi for h, xi in zip(normal, x))
        v = Fraction(v)
        if v.denominator != 1:
            raise InvariantViolationError(
                f"node {x} has non-integer product with dual vector {normal}"
            )
        values.append(int(v))
    return values


def slab_certificate(
    lat: IntegrationLattice,
    points: PointSet | None = None,
    enum_cap: int = lattice_mod.DEFAULT_ENUM_CAP,
    svp_cap: int = reduction.DEFAULT_SVP_CAP,
) -> SlabCertificate:
    """Certified empty-slab lower bound on J_N; see SlabCertificate."""
    pts = _points_for(lat, points, enum_cap)
    spectral = reduction.spectral_test(lat, svp_cap=svp_cap)
    normal = spectral.shortest_dual_vector
    center_value = Fraction(sum(normal), 2)
    if center_value.denominator == 1:
        # the center lies on a plane of the family; take the larger-volume
        # neighbor slab, preferring the upper one on ties
        k = int(center_value)
        lower = Slab(normal, k - 1, k, open=True)
        upper = Slab(normal, k, k + 1, open=True)
        slab = max(
            (lower, upper), key=lambda s: (volume.body_volume(s), s.lo)
        )
    else:
        k = center_value.numerator // center_value.denominator
        slab = Slab(normal, k, k + 1, open=True)
    inside = sum(1 for x in pts if volume.body_contains(slab, x))
    if inside != 0:
        raise InvariantViolationError(
            f"slab {slab} between adjacent dual planes contains {inside} nodes"
        )
    vol = volume.body_volume(slab)
    if vol == 0:
        raise InvariantViolationError("degenerate empty slab of zero volume")
    return SlabCertificate(
        body=slab,
        n_points_checked=len(pts),
        volume=vol,
        implied_lower_bound=vol,
    )


def hyperplane_count_certificate(
    lat: IntegrationLattice,
    points: PointSet | None = None,
    enum_cap: int = lattice_mod.DEFAULT_ENUM_CAP,
    svp_cap: int = reduction.DEFAULT_SVP_CAP,
) -> HyperplaneCountCertificate:
    """Certified plane-count lower bound on J_N; see the class docstring."""
    pts = _points_for(lat, points, enum_cap)
    spectral = reduction.spectral_test(lat, svp_cap=svp_cap)
    normal = spectral.shortest_dual_vector
    values = _plane_values(normal, pts)
    counts: dict[int, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    n = len(pts)
    if sum(counts.values()) != n:
        raise InvariantViolationError("plane counts do not add up to N")
    max_count = max(counts.values())
    d = lat.dim
    lam_sq = spectral.shortest_dual_norm_sq
    # pigeonhole: (max_count/N)^2 * d >= sigma^2, exactly
    if max_count**2 * d * lam_sq < n**2:
        raise InvariantViolationError("pigeonhole bound failed (bug)")
    limit = directed.floor_sqrt(d * lam_sq) + 1
    if len(counts) > limit:
        raise InvariantViolationError(
            f"{len(counts)} occupied planes exceed the spacing limit {limit}"
        )
    best_k = min(k for k, c in counts.items() if c == max_count)
    return HyperplaneCountCertificate(
        normal=tuple(normal),
        plane_counts=tuple(sorted(counts.items())),
        max_count=max_count,
        n_points=n,
        implied_lower_bound=Fraction(max_count, n),
        sigma_sq=spectral.sigma_sq,
        plane_count_limit=limit,
        witness_body=Slab(normal, best_k, best_k, open=False),
    )


# ---------------------------------------------------------------------------
# randomized estimation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiscrepancyEstimate:
    """Best certified lower bound found within an evaluation budget.

    lower_bound is exact and every witness body achieves it exactly;
    upper_bound_sq carries (d^2 2^d sigma)^2 when a lattice was supplied
    (squared form keeps it rational), else None.
    """

    lower_bound: Fraction
    upper_bound_sq: Fraction | None
    upper_bound_decimal: str | None
    witnesses: tuple
    evaluations: int
    budget: int
    seed: int
    n_points: int
    dim: int

    def to_dict(self) -> dict:
        return {
            "lower_bound": str(self.lower_bound),
            "upper_bound_sq": None
            if self.upper_bound_sq is None
            else str(self.upper_bound_sq),
            "upper_bound_decimal": self.upper_bound_decimal,
            "witnesses": [volume.body_to_dict(b) for b in self.witnesses],
            "evaluations": self.evaluations,
            "budget": self.budget,
            "seed": self.seed,
            "n_points": self.n_points,
            "dim": self.dim,
        }


def _primitive_direction(vec) -> tuple[int, ...] | None:
    """Scale an integer vector to primitive form with positive leading sign."""
    g = 0
    for x in vec:
        g = gcd(g, abs(x))
    if g == 0:
        return None
    reduced = tuple(x // g for x in vec)
    for x in reduced:
        if x != 0:
            return reduced if x > 0 else tuple(-y for y in reduced)
    return None


class _Search:
    """Deterministic budgeted search state (internal to the estimator)."""

    def __init__(self, points: PointSet, budget: int, seed: int):
        self.points = points
        self.n = len(points)
        self.dim = points.dim
        self.budget = budget
        self.evaluations = 0
        self.best = Fraction(0)
        self.witnesses: list[ConvexBody] = []
        self.rng = random.Random(seed)
        self.scanned: set[tuple[int, ...]] = set()
        self._axis_interior: dict[int, list[Fraction]] = {}
        self._axis_pools: dict[int, list[Fraction]] = {}

    def record(self, body: ConvexBody, delta: Fraction):
        magnitude = -delta if delta < 0 else delta
        if magnitude > self.best:
            self.best = magnitude
            self.witnesses = [body]
        elif magnitude == self.best and magnitude > 0 and body not in self.witnesses:
            self.witnesses.append(body)

    def spend(self) -> bool:
        if self.evaluations >= self.budget:
            return False
        self.evaluations += 1
        return True

    def evaluate_literal(self, body: ConvexBody) -> bool:
        if not self.spend():
            return False
        self.record(body, volume.local_discrepancy(self.points, body))
        return True

    # -- normal-direction scans -------------------------------------------

    def scan_normal(self, direction: tuple[int, ...]) -> bool:
        """Evaluate halfspaces and gap slabs for one normal direction at all
        point-induced critical offsets.  Returns False once out of budget."""
        if direction in self.scanned:
            return True
        self.scanned.add(direction)
        values = sorted(
            sum(a * xi for a, xi in zip(direction, x)) for x in self.points
        )
        unique = sorted(set(values))
        n = self.n
        cube_lo = sum(min(a, 0) for a in direction)
        cube_hi = sum(max(a, 0) for a in direction)
        for v in unique:
            if not self.spend():
                return False
            body = Halfspace(direction, v, closed=True)
            self.record(body, Fraction(bisect_right(values, v), n) - volume.body_volume(body))
            if not self.spend():
                return False
            body = Halfspace(direction, v, closed=False)
            self.record(body, Fraction(bisect_left(values, v), n) - volume.body_volume(body))
        previous = Fraction(cube_lo)
        for v in [Fraction(u) for u in unique] + [Fraction(cube_hi)]:
            if v > previous:
                if not self.spend():
                    return False
                body = Slab(direction, previous, v, open=True)
                inside = bisect_left(values, v) - bisect_right(values, previous)
                self.record(body, Fraction(inside, n) - volume.body_volume(body))
            previous = max(previous, v)
        return True

    # -- axis boxes ---------------------------------------------------------

    def _interior_projection(self, axis: int) -> list[Fraction]:
        if axis not in self._axis_interior:
            proj = [
                x[axis]
                for x in self.points
                if all(0 < xc < 1 for k, xc in enumerate(x) if k != axis)
            ]
            self._axis_interior[axis] = sorted(proj)
        return self._axis_interior[axis]

    def scan_axis_boxes(self, axis: int) -> bool:
        """Open boxes spanning the cube except along one axis, cut at every
        point-induced critical value.  Returns False once out of budget."""
        proj = self._interior_projection(axis)
        pool = sorted(set(x[axis] for x in self.points if 0 < x[axis] < 1))
        d = self.dim
        ones = tuple(Fraction(1) for _ in range(d))
        zeros = tuple(Fraction(0) for _ in range(d))
        for v in pool + [Fraction(1)]:
            if v > 0:
                if not self.spend():
                    return False
                hi = tuple(v if k == axis else Fraction(1) for k in range(d))
                body = AxisBox(zeros, hi, open=True)
                inside = bisect_left(proj, v) - bisect_right(proj, Fraction(0))
                self.record(body, Fraction(inside, self.n) - volume.body_volume(body))
            if v < 1:
                if not self.spend():
                    return False
                lo = tuple(v if k == axis else Fraction(0) for k in range(d))
                body = AxisBox(lo, ones, open=True)
                inside = bisect_left(proj, Fraction(1)) - bisect_right(proj, v)
                self.record(body, Fraction(inside, self.n) - volume.body_volume(body))
        return True

    def _pool(self, axis: int) -> list[Fraction]:
        if axis not in self._axis_pools:
            values = {Fraction(0), Fraction(1)}
            values.update(x[axis] for x in self.points)
            self._axis_pools[axis] = sorted(values)
        return self._axis_pools[axis]

    def random_box(self) -> bool:
        lo = []
        hi = []
        for axis in range(self.dim):
            pool = self._pool(axis)
            a = self.rng.choice(pool)
            b = self.rng.choice(pool)
            if a > b:
                a, b = b, a
            lo.append(a)
            hi.append(b)
        is_open = self.rng.random() < 0.5
        if is_open and any(a == b for a, b in zip(lo, hi)):
            is_open = False
        return self.evaluate_literal(AxisBox(tuple(lo), tuple(hi), open=is_open))

    def random_normal(self) -> tuple[int, ...] | None:
        raw = [
            self.rng.randint(-_RANDOM_NORMAL_RANGE, _RANDOM_NORMAL_RANGE)
            for _ in range(self.dim)
        ]
        return _primitive_direction(raw)


def estimate_isotropic_discrepancy(
    points: PointSet,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    lat: IntegrationLattice | None = None,
    enum_cap: int = lattice_mod.DEFAULT_ENUM_CAP,
    svp_cap: int = reduction.DEFAULT_SVP_CAP,
    digits: int = directed.DEFAULT_DIGITS,
) -> DiscrepancyEstimate:
    """Search convex bodies for the largest exact local discrepancy.

    The search is deterministic given (points, budget, seed).  It always
    starts with the mandatory candidates: when `lat` is supplied, the two
    structural certificates (empty slab, plane counts) enter budget-free and
    the shortest dual vector heads the normal list; then come the axis
    directions and axis-box families at point-induced critical offsets, and
    finally seeded random integer normals in [-10, 10]^d and random boxes
    until the evaluation budget is spent.  Each candidate body costs one
    budget unit.  Winning witnesses are re-verified with a literal pass over
    the point set.

    When `lat` is given the sigma upper bound d^2 2^d sigma(L) is attached
    in exact squared form.
    """
    if budget < 0:
        raise InputError("budget must be nonnegative")
    if len(points) == 0:
        raise InputError("empty point set")
    search = _Search(points, budget, seed)
    upper_sq = None
    upper_decimal = None
    d = points.dim

    mandatory_normals: list[tuple[int, ...]] = []
    if lat is not None:
        pts = _points_for(lat, points, enum_cap)
        slab_cert = slab_certificate(lat, pts, enum_cap=enum_cap, svp_cap=svp_cap)
        plane_cert = hyperplane_count_certificate(
            lat, pts, enum_cap=enum_cap, svp_cap=svp_cap
        )
        for body, bound in (
            (slab_cert.body, slab_cert.implied_lower_bound),
            (plane_cert.witness_body, plane_cert.implied_lower_bound),
        ):
            delta = volume.local_discrepancy(points, body)
            if abs(delta) != bound:
                raise InvariantViolationError(
                    "certificate bound disagrees with literal re-verification"
                )
            search.record(body, delta)
        factor = d**2 * 2**d
        upper_sq = factor**2 * plane_cert.sigma_sq
        hi = directed.sqrt_bounds(upper_sq, digits).hi
        upper_decimal = directed.decimal_str(hi, digits, "up")
        direction = _primitive_direction(
            tuple(int(x) for x in plane_cert.normal)
        )
        if direction is not None:
            mandatory_normals.append(direction)

    for axis in range(d):
        e = tuple(int(k == axis) for k in range(d))
        if e not in mandatory_normals:
            mandatory_normals.append(e)

    in_budget = True
    for direction in mandatory_normals:
        in_budget = search.scan_normal(direction)
        if not in_budget:
            break
    if in_budget:
        for axis in range(d):
            in_budget = search.scan_axis_boxes(axis)
            if not in_budget:
                break
    duds = 0
    while in_budget and search.evaluations < budget and duds < 2000:
        direction = search.random_normal()
        if direction is None or direction in search.scanned:
            duds += 1
        else:
            in_budget = search.scan_normal(direction)
        if not in_budget or search.evaluations >= budget:
            break
        in_budget = search.random_box()

    for body in search.witnesses:
        if abs(volume.local_discrepancy(points, body)) != search.best:
            raise InvariantViolationError("witness failed literal re-verification")
    witnesses = tuple(
        sorted(search.witnesses, key=lambda b: json.dumps(volume.body_to_dict(b)))
    )
    return DiscrepancyEstimate(
        lower_bound=search.best,
        upper_bound_sq=upper_sq,
        upper_bound_decimal=upper_decimal,
        witnesses=witnesses,
        evaluations=search.evaluations,
        budget=budget,
        seed=seed,
        n_points=len(points),
        dim=d,
    )

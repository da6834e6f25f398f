"""Exhaustive-search oracles for shortest-vector claims.

The production shortest-vector path (LLL preprocessing plus pruned
enumeration) is efficient but intricate; this module provides slow,
obviously-correct cross-checks built on literal box scans.

The soundness argument never relies on reduction quality.  Given any basis
of the lattice under test and any radius R known to dominate the lattice
minimum (for instance the norm of a concrete lattice vector), every lattice
vector v = sum c_i b_i with ||v|| <= R has

    |c_j| <= R / ||b*_j|| + sum_{k > j} |c_k| |mu_{k,j}|,

because the coefficient of b*_j in v is c_j + sum_{k>j} c_k mu_{k,j} and is
bounded by R / ||b*_j|| in absolute value.  Resolving these bounds from the
last row down gives finite per-coefficient widths, and scanning that box
provably visits a shortest vector.  For the rank-1 dual (integer vectors h
with <h, g> == 0 mod n) the coordinates themselves are bounded by
floor(sqrt(R^2)), so a plain cube suffices.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil, isqrt

from . import directed, linalg
from .errors import InputError
from .kernels import lll_reduce, min_norm_in_coeff_box, rank1_dual_min_in_box


def _ceil_sqrt(x) -> int:
    """Smallest integer s with s*s >= x, for rational x >= 0."""
    x = Fraction(x)
    if x < 0:
        raise InputError("negative radicand")
    s = directed.floor_sqrt(x)
    return s if s * s >= x else s + 1


def coeff_box_widths(rows, radius_sq) -> list[int]:
    """Coefficient widths covering every lattice vector with norm^2 <= radius_sq.

    rows must be independent integer rows; the widths are computed from their
    exact Gram-Schmidt data, from the last row down, so the guarantee holds
    for the given rows regardless of how (or whether) they were reduced.
    """
    matrix = linalg.RationalMatrix(rows)
    gso, mu = linalg.gram_schmidt(matrix)
    radius_sq = Fraction(radius_sq)
    if radius_sq < 0:
        raise InputError("radius_sq must be nonnegative")
    n = matrix.n_rows
    widths = [0] * n
    for j in range(n - 1, -1, -1):
        norm_sq = linalg.dot(gso.rows[j], gso.rows[j])
        bound = Fraction(_ceil_sqrt(radius_sq / norm_sq))
        for k in range(j + 1, n):
            bound += widths[k] * abs(mu[k, j])
        widths[j] = ceil(bound)
    return widths


def shortest_vector_bruteforce(rows, radius_sq=None):
    """Shortest nonzero vector of the integer lattice spanned by rows.

    When radius_sq is None the search radius comes from an LLL run (the
    first reduced row is a concrete lattice vector, so its norm dominates
    the minimum); pass an explicit radius_sq to keep the check independent
    of the reduction code.  Returns (vector, norm_sq), the first minimizer
    in scan order with positive leading coefficient.
    """
    rows = [list(r) for r in rows]
    if radius_sq is None:
        reduced = lll_reduce(rows)
        radius_sq = sum(x * x for x in reduced[0])
        rows = reduced
    widths = coeff_box_widths(rows, radius_sq)
    return min_norm_in_coeff_box(rows, widths)


def rank1_dual_shortest_bruteforce(n: int, generator, radius_sq: int):
    """Shortest nonzero integer h with <h, generator> == 0 (mod n), given
    any radius_sq that dominates the squared dual minimum.

    Any h with ||h||^2 <= radius_sq has |h_i| <= isqrt(radius_sq), so the
    cube scan is exhaustive below the radius: if the returned norm equals a
    claimed minimum, the claim is proven.  Returns (vector, norm_sq).
    """
    if radius_sq <= 0:
        raise InputError("radius_sq must be positive")
    width = isqrt(radius_sq)
    return rank1_dual_min_in_box(n, [int(x) for x in generator], width)

"""Reference lattice families and exhaustive generator searches.

Three named families recur throughout tests, benchmarks, and the command
line: the 2d Fibonacci lattices (the classical good rank-1 family), scaled
integer lattices (the simplest product family), and a deliberately bad
family whose spectral test stalls at 1/2 no matter how many points are
spent.  korobov_search scans rank-1 generators modulo a prime and returns
the one maximizing the shortest dual vector, i.e. minimizing sigma.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import directed, reduction
from .errors import CapExceededError, InputError, InvariantViolationError
from .lattice import IntegrationLattice, from_basis, from_rank1


def fibonacci_lattice(m: int) -> IntegrationLattice:
    """Rank-1 lattice with N = F_m points and generator (1, F_{m-1}).

    Uses F_1 = F_2 = 1; m >= 2.  Along this family the spectral test decays
    at the optimal rate N^{-1/2}, which makes it the standard positive
    example in dimension 2.
    """
    if m < 2:
        raise InputError("fibonacci_lattice needs m >= 2")
    a, b = 1, 1
    for _ in range(m - 2):
        a, b = b, a + b
    return from_rank1(b, (1, a))


def scaled_integer_lattice(m: int, d: int) -> IntegrationLattice:
    """The lattice (1/m) Z^d with N = m^d points."""
    if m < 1:
        raise InputError("scaled_integer_lattice needs m >= 1")
    if d < 1:
        raise InputError("dimension must be positive")
    rows = [
        [Fraction(int(i == j), m) for j in range(d)] for i in range(d)
    ]
    return from_basis(rows)


def bad_lattice(m: int, d: int = 2) -> IntegrationLattice:
    """A family whose spectral test never improves.

    The basis is (1/m)-fine along the first d-1 axes but only (1/2)-fine
    along the last, so for m >= 2 the shortest dual vector is twice the last
    axis vector and sigma stays at 1/2 while N = 2 m^{d-1} grows without
    bound.  The isotropic discrepancy of the family is therefore bounded
    away from zero; it is the standard negative example.
    """
    if m < 1:
        raise InputError("bad_lattice needs m >= 1")
    if d < 2:
        raise InputError("bad_lattice needs dimension >= 2")
    rows = [
        [Fraction(int(i == j), m) for j in range(d)] for i in range(d - 1)
    ]
    rows.append([Fraction(0)] * (d - 1) + [Fraction(1, 2)])
    return from_basis(rows)


def korobov_lattice(n: int, a: int, d: int) -> IntegrationLattice:
    """Rank-1 lattice with N = n and generator (1, a, a^2, ..., a^{d-1}) mod n."""
    if n < 1:
        raise InputError("n must be positive")
    if a < 1:
        raise InputError("multiplier a must be positive")
    if d < 1:
        raise InputError("dimension must be positive")
    g = [1]
    for _ in range(d - 1):
        g.append((g[-1] * a) % n)
    return from_rank1(n, g)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _dual_rows_unit_leading(n: int, g) -> list[list[int]]:
    # basis of { h in Z^d : <h, g> == 0 mod n }, valid because g[0] == 1
    # pins h[0] modulo n once the other coordinates are chosen
    d = len(g)
    rows = [[n] + [0] * (d - 1)]
    for i in range(1, d):
        row = [0] * d
        row[0] = -g[i]
        row[i] = 1
        rows.append(row)
    return rows


def _generators(n: int, d: int, mode: str):
    if mode == "korobov":
        for a in range(1, n):
            g = [1]
            for _ in range(d - 1):
                g.append((g[-1] * a) % n)
            yield g
    else:
        for tail in product(range(1, n), repeat=d - 1):
            yield [1, *tail]


@dataclass(frozen=True)
class GeneratorSearchResult:
    """Winner of an exhaustive rank-1 generator search.

    norm_sq is the squared length of the shortest dual vector of the
    winning lattice; sigma_sq = 1 / norm_sq exactly.
    """

    n: int
    dim: int
    mode: str
    generator: tuple
    norm_sq: int
    sigma_sq: Fraction
    sigma_decimal: str
    digits: int
    n_searched: int

    def lattice(self) -> IntegrationLattice:
        return from_rank1(self.n, self.generator)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "dim": self.dim,
            "mode": self.mode,
            "generator": list(self.generator),
            "norm_sq": str(self.norm_sq),
            "sigma_sq": str(self.sigma_sq),
            "sigma_decimal": self.sigma_decimal,
            "digits": self.digits,
            "n_searched": self.n_searched,
        }


def korobov_search(
    n: int,
    d: int,
    mode: str = "korobov",
    digits: int = directed.DEFAULT_DIGITS,
    svp_cap: int = reduction.DEFAULT_SVP_CAP,
) -> GeneratorSearchResult:
    """Best rank-1 generator modulo a prime n, by exhaustive search.

    mode "korobov" scans the n - 1 generators (1, a, ..., a^{d-1}); mode
    "exhaustive" scans all (n - 1)^(d-1) generators (1, a_2, ..., a_d) and
    is only practical for small n.  The winner maximizes the squared length
    of the shortest dual vector; ties prefer the lexicographically smallest
    generator.  The winner is re-verified through the full dual + spectral
    pipeline before being returned.
    """
    if not _is_prime(n):
        raise InputError(f"generator search needs a prime modulus, got {n}")
    if d < 2:
        raise InputError("generator search needs dimension >= 2")
    if d > svp_cap:
        raise CapExceededError(f"search in dimension {d} exceeds cap {svp_cap}")
    if mode not in ("korobov", "exhaustive"):
        raise InputError(f"unknown search mode {mode!r}")
    best_norm = None
    best_g = None
    searched = 0
    for g in _generators(n, d, mode):
        searched += 1
        _, norm = reduction._shortest_vector_int(_dual_rows_unit_leading(n, g))
        if best_norm is None or norm > best_norm or (
            norm == best_norm and tuple(g) < best_g
        ):
            best_norm = norm
            best_g = tuple(g)
    check = reduction.spectral_test(
        from_rank1(n, best_g), digits=digits, svp_cap=svp_cap
    )
    if check.shortest_dual_norm_sq != best_norm:
        raise InvariantViolationError(
            "generator search disagrees with the spectral test on the winner"
        )
    return GeneratorSearchResult(
        n=n,
        dim=d,
        mode=mode,
        generator=best_g,
        norm_sq=best_norm,
        sigma_sq=Fraction(1, best_norm),
        sigma_decimal=check.sigma_decimal,
        digits=digits,
        n_searched=searched,
    )

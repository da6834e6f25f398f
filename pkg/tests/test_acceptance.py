"""Acceptance gate: every shipped guarantee, exercised end to end.

Each test prints one PASS/FAIL line (bypassing capture, so the lines land in
piped logs) and then asserts.  Corpus-wide checks tolerate zero failures;
anything carrying a tolerance states it inline.  The one known defective
family member is kept as a strict xfail rather than papered over.
"""

import math
import random
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from latdisc import (
    bounds,
    constructions,
    directed,
    discrepancy,
    kernels,
    lattice,
    linalg,
    oracles,
    reduction,
    volume,
)

F = Fraction

RANDOM_LATTICE_SEED = 20260814
LLL_SUITE_SEED = 987654321
MC_SEED = 424242

# frozen outcome of the d = 2 Korobov scan over primes below 2000: the
# maximum of sigma^2 * N, attained by the 3-point rule with generator (1, 1)
KOROBOV_SIGMA_SQ_N_MAX = F(3, 2)
KOROBOV_SIGMA_SQ_N_ARGMAX = (3, (1, 1))


@pytest.fixture(scope="module")
def announce(request):
    capman = request.config.pluginmanager.getplugin("capturemanager")

    def _announce(line: str) -> None:
        if capman is not None:
            with capman.global_and_fixture_disabled():
                print(line, flush=True)
        else:
            print(line, flush=True)

    return _announce


def _sieve(limit: int) -> list[int]:
    flags = [True] * (limit + 1)
    flags[0] = flags[1] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            for q in range(p * p, limit + 1, p):
                flags[q] = False
    return [p for p, keep in enumerate(flags) if keep]


@pytest.fixture(scope="module")
def rank1_corpus():
    """Every rank-1 rule with prime N <= 500: d = 2 generators (1, a) and
    d = 3 Korobov generators (1, a, a^2), a = 1..N-1.

    Entries are (d, n, g, lam_sq, normal) with production shortest-dual
    data; every 250th lattice is re-derived through the full spectral-test
    pipeline as a cross-check on the bulk path.
    """
    corpus = []
    for n in _sieve(500):
        for a in range(1, n):
            for g in ((1, a), (1, a, a * a % n)):
                rows = constructions._dual_rows_unit_leading(n, g)
                normal, lam_sq = reduction._shortest_vector_int(rows)
                corpus.append((len(g), n, g, lam_sq, normal))
    for entry in corpus[::250]:
        d, n, g, lam_sq, normal = entry
        res = reduction.spectral_test(lattice.from_rank1(n, g))
        assert res.shortest_dual_norm_sq == lam_sq
        assert res.shortest_dual_vector == normal
    return corpus


def _random_dual_hnf(rng):
    d = rng.choice([2, 3, 4])
    hi = {2: 31, 3: 10, 4: 5}[d]
    while True:
        diag = [rng.randint(1, hi) for _ in range(d)]
        n = math.prod(diag)
        if 2 <= n <= 1000:
            break
    rows = [[0] * d for _ in range(d)]
    for i in range(d):
        rows[i][i] = diag[i]
        for j in range(i + 1, d):
            rows[i][j] = rng.randrange(diag[j]) if diag[j] > 1 else 0
    return rows, n


@pytest.fixture(scope="module")
def random_corpus():
    """200 seeded random integration lattices, N <= 1000, d in {2, 3, 4},
    generated through random upper-triangular dual bases."""
    rng = random.Random(RANDOM_LATTICE_SEED)
    out = []
    while len(out) < 200:
        rows, n = _random_dual_hnf(rng)
        lat = lattice.from_basis(
            linalg.inverse(linalg.RationalMatrix(rows)).transpose()
        )
        assert lat.is_integration and lat.n_points == n
        out.append(lat)
    return out


def _plane_max_count(n, g, normal):
    """Most populated dual hyperplane, counted in pure integer arithmetic.

    Node k is ((k g_i mod n) / n)_i, so <normal, node_k> equals
    k (hg / n) - sum_i h_i floor(k g_i / n) with hg = <normal, g> divisible
    by n.  The g_0 = 1 term contributes nothing since k < n.
    """
    hg = sum(h * gi for h, gi in zip(normal, g))
    assert hg % n == 0
    q = hg // n
    counts = Counter(
        k * q - sum(normal[i] * ((k * g[i]) // n) for i in range(1, len(g)))
        for k in range(n)
    )
    return max(counts.values())


class TestAcceptance:
    def test_01_spectral_matches_bruteforce_oracle(
        self, announce, rank1_corpus, random_corpus
    ):
        failures = []
        for d, n, g, lam_sq, _ in rank1_corpus:
            rows = constructions._dual_rows_unit_leading(n, g)
            first = kernels.lll_reduce(rows)[0]
            radius_sq = sum(x * x for x in first)
            _, oracle = kernels.rank1_dual_min_in_box(
                n, list(g), math.isqrt(radius_sq)
            )
            if oracle != lam_sq:
                failures.append((n, g, lam_sq, oracle))
        for lat in random_corpus:
            res = reduction.spectral_test(lat)
            _, oracle = oracles.shortest_vector_bruteforce(
                lattice.dual(lat).integer_rows()
            )
            if res.shortest_dual_norm_sq != oracle:
                failures.append((lat.spec_string(), oracle))
        total = len(rank1_corpus) + len(random_corpus)
        ok = not failures
        announce(
            f"criterion 1: {'PASS' if ok else 'FAIL'} - SVP sigma^2 equals "
            f"brute-force minimum on {total} lattices "
            f"({len(rank1_corpus)} rank-1 + {len(random_corpus)} random), "
            f"{len(failures)} mismatches"
        )
        assert ok, failures[:5]

    def test_02_minkowski_sigma_floor_universal(
        self, announce, rank1_corpus, random_corpus
    ):
        failures = []
        for d, n, g, lam_sq, _ in rank1_corpus:
            if not bounds.minkowski_sigma_check(d, n, lam_sq):
                failures.append(("rank1", n, g))
        extra = []
        extra += [constructions.fibonacci_lattice(m) for m in range(3, 26)]
        extra += [
            constructions.scaled_integer_lattice(m, d)
            for m in range(1, 21)
            for d in range(1, 7)
        ]
        extra += [
            constructions.bad_lattice(m, d)
            for m in range(1, 11)
            for d in range(2, 5)
        ]
        extra += random_corpus
        for lat in extra:
            lam_sq = int(reduction.spectral_test(lat).shortest_dual_norm_sq)
            if not bounds.minkowski_sigma_check(lat.dim, lat.n_points, lam_sq):
                failures.append((lat.spec_string(),))
        total = len(rank1_corpus) + len(extra)
        ok = not failures
        announce(
            f"criterion 2: {'PASS' if ok else 'FAIL'} - Minkowski floor "
            f"sigma >= (sqrt(pi)/2) Gamma(d/2+1)^(-1/d) N^(-1/d) holds on "
            f"{total} lattices, {len(failures)} failures (0 tolerated)"
        )
        assert ok, failures[:5]

    def test_03_pigeonhole_plane_count_certificate(
        self, announce, rank1_corpus, random_corpus
    ):
        failures = []
        for d, n, g, lam_sq, normal in rank1_corpus:
            max_count = _plane_max_count(n, g, normal)
            # (max_count / N)^2 * d >= sigma^2 = 1 / lam_sq, exactly
            if max_count * max_count * d * lam_sq < n * n:
                failures.append((n, g))
        for lat in random_corpus:
            cert = discrepancy.hyperplane_count_certificate(lat)
            lam_sq = int(1 / cert.sigma_sq)
            if cert.max_count**2 * lat.dim * lam_sq < lat.n_points**2:
                failures.append((lat.spec_string(),))
        # bulk counting path vs production certificates, spot-checked
        for d, n, g, lam_sq, normal in rank1_corpus[::500]:
            cert = discrepancy.hyperplane_count_certificate(
                lattice.from_rank1(n, g)
            )
            assert cert.max_count == _plane_max_count(n, g, list(cert.normal))
        total = len(rank1_corpus) + len(random_corpus)
        ok = not failures
        announce(
            f"criterion 3: {'PASS' if ok else 'FAIL'} - pigeonhole "
            f"(max_count/N)^2 d >= sigma^2 exact on {total} lattices, "
            f"{len(failures)} failures (0 tolerated)"
        )
        assert ok, failures[:5]

    def test_04_certified_bounds_respect_upper_chain(
        self, announce, rank1_corpus, random_corpus
    ):
        failures = []
        for d, n, g, lam_sq, normal in rank1_corpus:
            max_count = _plane_max_count(n, g, normal)
            factor = d * d * 2**d
            # max_count / N <= d^2 2^d sigma, squared exact form
            if max_count * max_count * lam_sq > n * n * factor * factor:
                failures.append((n, g))
        verified = 0
        for lat in list(random_corpus) + [
            lattice.from_rank1(n, g) for _, n, g, _, _ in rank1_corpus[::500]
        ]:
            rep = bounds.verify_lattice(lat)
            if not rep.checks["certified_lb_vs_sigma_ub"] or not rep.all_passed:
                failures.append((lat.spec_string(), rep.checks))
            verified += 1
        ok = not failures
        announce(
            f"criterion 4: {'PASS' if ok else 'FAIL'} - certified J_N lower "
            f"bounds <= d^2 2^d sigma on {len(rank1_corpus)} lattices in "
            f"squared form plus {verified} full verification reports, "
            f"{len(failures)} failures (0 tolerated)"
        )
        assert ok, failures[:5]

    def test_05_closed_form_families_reproduce(self, announce):
        failures = []
        for m in range(1, 21):
            for d in range(1, 7):
                lat = constructions.scaled_integer_lattice(m, d)
                res = reduction.spectral_test(lat)
                if res.sigma_sq != F(1, m * m) or lat.n_points != m**d:
                    failures.append(("scaled", m, d))
        for m in range(2, 11):
            for d in range(2, 5):
                lat = constructions.bad_lattice(m, d)
                if reduction.spectral_test(lat).sigma_sq != F(1, 4):
                    failures.append(("bad sigma", m, d))
        for m in range(1, 11):
            for d in range(2, 5):
                rep = bounds.verify_lattice(constructions.bad_lattice(m, d))
                if rep.certified_jn_lb < F(1, 2):
                    failures.append(("bad J_N floor", m, d))
        ok = not failures
        announce(
            f"criterion 5: {'PASS' if ok else 'FAIL'} - sigma((1/M)Z^d) = 1/M "
            f"= N^(-1/d) for M <= 20, d <= 6; bad family sigma = 1/2 "
            f"(m >= 2) and certified J_N >= 1/2 (m >= 1), "
            f"{len(failures)} failures"
        )
        assert ok, failures[:5]

    @pytest.mark.xfail(
        strict=True,
        reason=(
            "bad family degenerates at m = 1: the lattice is "
            "Z^(d-1) x (1/2)Z, an integer unit vector enters the dual, and "
            "sigma is 1 rather than the advertised 1/2"
        ),
    )
    def test_05_bad_family_m1_sigma_defect(self, announce):
        sigma_sq = {
            d: reduction.spectral_test(constructions.bad_lattice(1, d)).sigma_sq
            for d in range(2, 5)
        }
        ok = all(v == F(1, 4) for v in sigma_sq.values())
        announce(
            f"criterion 5 (bad family, m = 1): {'PASS' if ok else 'FAIL'} - "
            f"sigma^2 observed {sorted(sigma_sq.values())[0]} instead of 1/4; "
            f"recorded as a strict expected failure"
        )
        assert ok, sigma_sq

    def test_06_fibonacci_decay_slower_than_optimal(self, announce):
        pi = directed.pi_bounds(directed.DEFAULT_DIGITS)
        logs_n, logs_lb = [], []
        failures = []
        for m in range(5, 26):
            lat = constructions.fibonacci_lattice(m)
            rep = bounds.verify_lattice(lat)
            lam_sq = int(1 / rep.sigma_sq)
            lb = rep.certified_jn_lb
            # lb >= sigma / sqrt(2), exactly in squared form
            if 2 * lb * lb * lam_sq < 1:
                failures.append(("vs sigma", m))
            # sigma / sqrt(2) >= c_2 N^(-1/2) with c_2^2 = pi/8, certified:
            # equivalent to 4 N >= pi lam_sq, decided by directed pi bounds
            if pi.hi * lam_sq > 4 * lat.n_points:
                failures.append(("vs c_2", m))
            logs_n.append(math.log(lat.n_points))
            logs_lb.append(math.log(float(lb)))
        mean_x = sum(logs_n) / len(logs_n)
        mean_y = sum(logs_lb) / len(logs_lb)
        slope = sum(
            (x - mean_x) * (y - mean_y) for x, y in zip(logs_n, logs_lb)
        ) / sum((x - mean_x) ** 2 for x in logs_n)
        reference = -F(2, 3)  # optimal-rate comparison curve N^(-2/3)
        slope_ok = -0.55 <= slope <= -0.45
        ok = not failures and slope_ok
        announce(
            f"criterion 6: {'PASS' if ok else 'FAIL'} - Fibonacci m = 5..25 "
            f"certified bound >= sigma/sqrt(2) >= c_2 N^(-1/2); fitted "
            f"log-log slope {slope:.4f} in [-0.55, -0.45], reference decay "
            f"{float(reference):.4f}"
        )
        assert ok, (failures[:5], slope)
        assert slope > float(reference) + 0.1  # visibly slower decay

    def test_07_lll_invariant_suite(self, announce):
        rng = random.Random(LLL_SUITE_SEED)
        checked = 0
        failures = []
        while checked < 1000:
            d = rng.randint(1, 6)
            rows = [
                [rng.randint(-50, 50) for _ in range(d)] for _ in range(d)
            ]
            if linalg.det(linalg.RationalMatrix(rows)) == 0:
                continue
            rb = reduction.lll_reduce(linalg.RationalMatrix(rows))
            props = rb.check_properties()
            if not all(props.values()):
                failures.append((rows, props))
            checked += 1
        ok = not failures
        announce(
            f"criterion 7: {'PASS' if ok else 'FAIL'} - LLL invariants "
            f"(size reduction, Lovasz, 2-power norm chain) exact on "
            f"{checked} random bases, d <= 6, {len(failures)} failures"
        )
        assert ok, failures[:2]

    def test_08_volume_kernel_monte_carlo(self, announce):
        rng = np.random.Generator(np.random.PCG64(MC_SEED))
        n_samples = 1_000_000
        tolerance = 3e-3
        worst = 0.0
        failures = []
        for _ in range(100):
            d = int(rng.integers(2, 6))
            while True:
                normal = [int(x) for x in rng.integers(-5, 6, size=d)]
                if any(normal):
                    break
            lo = sum(min(a, 0) for a in normal)
            hi = sum(max(a, 0) for a in normal)
            offset = F(int(rng.integers(64 * lo, 64 * hi + 1)), 64)
            exact = volume.halfspace_cube_volume(normal, offset)
            complement = volume.halfspace_cube_volume(
                [-a for a in normal], -offset
            )
            if exact + complement != 1:
                failures.append(("complement", normal, offset))
            samples = rng.random((n_samples, d))
            estimate = float(
                np.mean(samples @ np.array(normal, dtype=float) <= float(offset))
            )
            err = abs(estimate - float(exact))
            worst = max(worst, err)
            if err > tolerance:
                failures.append(("mc", normal, offset, err))
        # d = 2 closed forms, exact: triangles under x + y <= t and the
        # triangle/strip/corner branches of 2x + y <= t
        for t in (F(1, 4), F(1, 2), F(3, 4), F(1)):
            if volume.halfspace_cube_volume((1, 1), t) != t * t / 2:
                failures.append(("triangle", t))
        for t in (F(5, 4), F(3, 2), F(7, 4)):
            if volume.halfspace_cube_volume((1, 1), t) != 1 - (2 - t) ** 2 / 2:
                failures.append(("upper triangle", t))
        for t in (F(1, 2), F(1)):
            if volume.halfspace_cube_volume((2, 1), t) != t * t / 4:
                failures.append(("steep triangle", t))
        for t in (F(5, 4), F(2)):
            if volume.halfspace_cube_volume((2, 1), t) != (2 * t - 1) / 4:
                failures.append(("strip", t))
        for t in (F(9, 4), F(5, 2)):
            if volume.halfspace_cube_volume((2, 1), t) != 1 - (3 - t) ** 2 / 4:
                failures.append(("corner", t))
        ok = not failures
        announce(
            f"criterion 8: {'PASS' if ok else 'FAIL'} - halfspace volumes "
            f"vs Monte Carlo (100 instances x 1e6 samples, d = 2..5): worst "
            f"error {worst:.2e} <= {tolerance:.0e}; closed forms and "
            f"complement identity exact; {len(failures)} failures"
        )
        assert ok, failures[:5]

    def test_09_korobov_search_empirical_constant(self, announce):
        worst = F(0)
        argmax = None
        failures = []
        for n in _sieve(2000):
            result = constructions.korobov_search(n, 2)
            # brute-force confirmation of the winner's sigma
            _, oracle = oracles.rank1_dual_shortest_bruteforce(
                n, list(result.generator), result.norm_sq
            )
            if oracle != result.norm_sq:
                failures.append((n, result.generator))
            value = F(n, result.norm_sq)  # sigma^2 * N
            if value > worst:
                worst, argmax = value, (n, result.generator)
        ok = (
            not failures
            and worst == KOROBOV_SIGMA_SQ_N_MAX
            and argmax == KOROBOV_SIGMA_SQ_N_ARGMAX
            and worst <= 4  # sigma sqrt(N) <= 2.0
        )
        announce(
            f"criterion 9: {'PASS' if ok else 'FAIL'} - Korobov d = 2 scan, "
            f"primes N <= 2000: max sigma sqrt(N) = sqrt({worst}) ~ "
            f"{float(worst) ** 0.5:.4f} at N = {argmax[0]}, generator "
            f"{argmax[1]}; frozen empirical constant, ceiling 2.0"
        )
        assert ok, (failures[:5], worst, argmax)

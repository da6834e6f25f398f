# cython: language_level=3
"""Compiled twin of latdisc.kernels._pure.

Same functions, same contracts, bit-identical outputs.  Each entry point
dispatches to a C-typed fast path when a conservative overflow analysis
guarantees every intermediate fits in int64; otherwise it runs the same
algorithm on Python objects (arbitrary precision), merely compiled.  The
guards are deliberately loose in the safe direction: falling back costs
speed, never correctness.

Note on arithmetic: // and % on typed C integers compile (under the default
cdivision=False) to Python floor-division semantics, which the algorithms
rely on for negative operands.
"""

from libc.stdint cimport int64_t

IMPLEMENTATION = "compiled"

# entries this small keep every intermediate of 2d Gauss reduction far
# below 2^63 (norms < 2^52, cross products < 2^54)
cdef int64_t _GAUSS_ENTRY_LIMIT = (<int64_t>1) << 25

_MAXN = 16  # C array size in the typed paths below


def _dot(u, v):
    s = 0
    for a, b in zip(u, v):
        s += a * b
    return s


def _round_div(a, b):
    # nearest integer to a/b for b > 0, ties rounded toward +infinity
    return (2 * a + b) // (2 * b)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# Lagrange-Gauss reduction in dimension 2
# ---------------------------------------------------------------------------

cdef _gauss_typed(int64_t u0, int64_t u1, int64_t v0, int64_t v1):
    cdef int64_t nu = u0 * u0 + u1 * u1
    cdef int64_t nv = v0 * v0 + v1 * v1
    cdef int64_t t, q, tmp
    if nu == 0 or nv == 0:
        raise ValueError("zero row in 2d basis")
    while True:
        if nv < nu:
            tmp = u0; u0 = v0; v0 = tmp
            tmp = u1; u1 = v1; v1 = tmp
            tmp = nu; nu = nv; nv = tmp
        t = u0 * v0 + u1 * v1
        q = (2 * t + nu) // (2 * nu)
        if q == 0:
            break
        v0 -= q * u0
        v1 -= q * u1
        nv = nv - q * (2 * t - q * nu)
        if nv == 0:
            raise ValueError("dependent rows in 2d basis")
    return [[u0, u1], [v0, v1]]


def gauss_reduce_2d(rows):
    """Lagrange-Gauss reduce a rank-2 integer basis.

    Returns [u, v] spanning the same lattice with ||u|| <= ||v|| and
    |2 <u, v>| <= ||u||^2, so u attains the lattice minimum.  Raises
    ValueError on dependent or zero rows.
    """
    cdef int64_t limit = _GAUSS_ENTRY_LIMIT
    if (
        len(rows) == 2
        and len(rows[0]) == 2
        and len(rows[1]) == 2
        and -limit < rows[0][0] < limit
        and -limit < rows[0][1] < limit
        and -limit < rows[1][0] < limit
        and -limit < rows[1][1] < limit
    ):
        return _gauss_typed(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    return _gauss_object(rows)


def _gauss_object(rows):
    u = list(rows[0])
    v = list(rows[1])
    nu = _dot(u, u)
    nv = _dot(v, v)
    if nu == 0 or nv == 0:
        raise ValueError("zero row in 2d basis")
    while True:
        if nv < nu:
            u, v = v, u
            nu, nv = nv, nu
        t = _dot(u, v)
        q = _round_div(t, nu)
        if q == 0:
            break
        v = [b - q * a for a, b in zip(u, v)]
        nv = nv - q * (2 * t - q * nu)
        if nv == 0:
            raise ValueError("dependent rows in 2d basis")
    return [u, v]


# ---------------------------------------------------------------------------
# all-integer LLL (object arithmetic: the lambda/d integers routinely
# outgrow int64, so there is no typed path here, only compiled loops)
# ---------------------------------------------------------------------------

def _exact_div(a, b):
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError("inexact division in all-integer LLL (bug)")
    return q


def lll_reduce(rows, delta_num=3, delta_den=4):
    """All-integer LLL reduction (de Weger variant) of independent rows.

    Works entirely on the integers d_i (Gram determinants of leading blocks)
    and lambda[i][j] = d_{j+1} * mu_{i,j}; every division below is exact.
    delta = delta_num/delta_den must satisfy 1/4 < delta < 1.

    Returns a new list of rows spanning the same lattice, LLL-reduced with
    parameter delta.  Raises ValueError on dependent rows.
    """
    if not (4 * delta_num > delta_den and delta_num < delta_den):
        raise ValueError("delta must satisfy 1/4 < delta < 1")
    b = [list(row) for row in rows]
    cdef Py_ssize_t n = len(b)
    if n == 1:
        return b
    d = [0] * (n + 1)
    d[0] = 1
    lam = [[0] * n for _ in range(n)]
    cdef Py_ssize_t i, j, k_
    for i in range(n):
        for j in range(i + 1):
            u = _dot(b[i], b[j])
            for k_ in range(j):
                u = _exact_div(d[k_ + 1] * u - lam[i][k_] * lam[j][k_], d[k_])
            if j < i:
                lam[i][j] = u
            else:
                if u <= 0:
                    raise ValueError("dependent rows in LLL input")
                d[i + 1] = u

    def reduce_row(k, l):
        # size reduction: make |mu_{k,l}| <= 1/2, i.e. 2|lambda| <= d[l+1]
        if 2 * abs(lam[k][l]) > d[l + 1]:
            q = _round_div(lam[k][l], d[l + 1])
            b[k] = [x - q * y for x, y in zip(b[k], b[l])]
            lam[k][l] -= q * d[l + 1]
            for i in range(l):
                lam[k][i] -= q * lam[l][i]

    def swap_rows(k):
        b[k], b[k - 1] = b[k - 1], b[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lam_k = lam[k][k - 1]
        new_dk = _exact_div(d[k - 1] * d[k + 1] + lam_k * lam_k, d[k])
        for i in range(k + 1, n):
            old_hi = lam[i][k - 1]
            old_lo = lam[i][k]
            lam[i][k] = _exact_div(d[k + 1] * old_hi - lam_k * old_lo, d[k])
            lam[i][k - 1] = _exact_div(lam_k * old_hi + d[k - 1] * old_lo, d[k])
        d[k] = new_dk

    k = 1
    while k < n:
        reduce_row(k, k - 1)
        lam_k = lam[k][k - 1]
        if delta_den * (d[k - 1] * d[k + 1] + lam_k * lam_k) < delta_num * d[k] * d[k]:
            swap_rows(k)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                reduce_row(k, l)
            k += 1
    return b


# ---------------------------------------------------------------------------
# brute-force coefficient box
# ---------------------------------------------------------------------------

def min_norm_in_coeff_box(rows, widths):
    """Minimum squared norm over nonzero integer combinations c . rows with
    |c_i| <= widths[i].

    Returns (vector, norm_sq) for the first minimizer in scan order.  Only
    combinations whose first nonzero coefficient is positive are scanned
    (the box is symmetric, so this loses nothing).  Raises ValueError if the
    box contains no nonzero combination.
    """
    n = len(rows)
    dim = len(rows[0])
    if n <= _MAXN and dim <= _MAXN and all(0 <= w < (1 << 31) for w in widths):
        # |any partial coordinate| <= span, |norm| <= dim * span^2
        span = 0
        for i in range(n):
            biggest = 0
            for x in rows[i]:
                if x > biggest:
                    biggest = x
                elif -x > biggest:
                    biggest = -x
            span += widths[i] * biggest
        if dim * span * span < (1 << 62):
            return _coeff_box_typed(rows, widths, n, dim)
    return _coeff_box_object(rows, widths)


cdef _coeff_box_typed(rows, widths, Py_ssize_t n, Py_ssize_t dim):
    cdef int64_t rows_c[16][16]
    cdef int64_t width_c[16]
    cdef int64_t vecs[17][16]
    cdef int64_t cur[16]
    cdef bint nonzero[17]
    cdef Py_ssize_t i, j, level
    cdef int64_t c, norm, best_norm
    cdef bint have_best = False
    cdef int64_t best_vec[16]

    for i in range(n):
        width_c[i] = widths[i]
        for j in range(dim):
            rows_c[i][j] = rows[i][j]
    for j in range(dim):
        vecs[0][j] = 0
    nonzero[0] = False
    best_norm = 0

    level = 0
    cur[0] = -1  # lo - 1 with lo = 0 at the root (first nonzero must be > 0)
    while level >= 0:
        cur[level] += 1
        if cur[level] > width_c[level]:
            level -= 1
            continue
        c = cur[level]
        for j in range(dim):
            vecs[level + 1][j] = vecs[level][j] + c * rows_c[level][j]
        nonzero[level + 1] = nonzero[level] or c != 0
        if level == n - 1:
            if nonzero[level + 1]:
                norm = 0
                for j in range(dim):
                    norm += vecs[level + 1][j] * vecs[level + 1][j]
                if not have_best or norm < best_norm:
                    have_best = True
                    best_norm = norm
                    for j in range(dim):
                        best_vec[j] = vecs[level + 1][j]
        else:
            level += 1
            cur[level] = (0 if not nonzero[level] else -width_c[level]) - 1
    if not have_best:
        raise ValueError("coefficient box contains no nonzero vector")
    return [best_vec[j] for j in range(dim)], best_norm


def _coeff_box_object(rows, widths):
    n = len(rows)
    dim = len(rows[0])
    best_norm = None
    best_vec = None
    vec = [0] * dim

    def recurse(level, any_nonzero):
        nonlocal best_norm, best_vec
        if level == n:
            if not any_nonzero:
                return
            norm = 0
            for x in vec:
                norm += x * x
            if best_norm is None or norm < best_norm:
                best_norm = norm
                best_vec = vec[:]
            return
        row = rows[level]
        w = widths[level]
        lo = 0 if not any_nonzero else -w
        saved = vec[:]
        for c in range(lo, w + 1):
            if c == 0:
                vec[:] = saved
            else:
                for i in range(dim):
                    vec[i] = saved[i] + c * row[i]
            recurse(level + 1, any_nonzero or c != 0)
        vec[:] = saved

    recurse(0, False)
    if best_norm is None:
        raise ValueError("coefficient box contains no nonzero vector")
    return best_vec, best_norm


# ---------------------------------------------------------------------------
# brute-force dual box for rank-1 lattices
# ---------------------------------------------------------------------------

def rank1_dual_min_in_box(n, g, width):
    """Minimum squared norm over nonzero integer h with |h_i| <= width and
    h . g == 0 (mod n)  --  a literal scan of the dual of the rank-1 lattice
    generated by g/n, restricted to a box.

    Returns (vector, norm_sq) for the first minimizer in scan order.
    Raises ValueError if no nonzero dual vector lies in the box.
    """
    if n <= 0:
        raise ValueError("modulus must be positive")
    d = len(g)
    if d <= _MAXN and n < (1 << 31) and 0 <= width < (1 << 25):
        acc_max = 0
        for x in g:
            acc_max += width * (x % n)
        # leaf arithmetic stays below (acc_max + n) * n
        if (acc_max + n) * n < (1 << 62) and d * width * width < (1 << 62):
            return _rank1_box_typed(n, [x % n for x in g], width, d)
    return _rank1_box_object(n, g, width)


cdef _rank1_box_typed(int64_t n, g, int64_t width, Py_ssize_t d):
    cdef int64_t g_c[16]
    cdef int64_t h[16]
    cdef int64_t accs[17]
    cdef int64_t tails[17]
    cdef int64_t cur[16]
    cdef Py_ssize_t i, level
    cdef int64_t g0, shared, modulus, g0_inv, c, a, b, tmp
    cdef int64_t best_norm = 0
    cdef bint have_best = False
    cdef int64_t best_vec[16]

    for i in range(d):
        g_c[i] = g[i]
        h[i] = 0
    g0 = g_c[0]
    a = g0
    b = n
    while b:
        tmp = a % b
        a = b
        b = tmp
    shared = a  # gcd(g0, n) with g0 in [0, n); positive since n >= 1
    modulus = n // shared
    g0_inv = pow(g0 // shared, -1, modulus) if modulus > 1 else 0

    accs[1] = 0
    tails[1] = 0
    if d == 1:
        _rank1_leaf_typed(
            width, shared, modulus, g0_inv, 0, 0, h, d,
            &have_best, &best_norm, best_vec,
        )
    else:
        level = 1
        cur[1] = -width - 1
        while level >= 1:
            cur[level] += 1
            if cur[level] > width:
                level -= 1
                continue
            c = cur[level]
            h[level] = c
            accs[level + 1] = accs[level] + g_c[level] * c
            tails[level + 1] = tails[level] + c * c
            if level == d - 1:
                _rank1_leaf_typed(
                    width, shared, modulus, g0_inv,
                    accs[level + 1], tails[level + 1], h, d,
                    &have_best, &best_norm, best_vec,
                )
            else:
                level += 1
                cur[level] = -width - 1
    if not have_best:
        raise ValueError("no nonzero dual vector in the box")
    return [best_vec[i] for i in range(d)], best_norm


cdef void _rank1_leaf_typed(
    int64_t width, int64_t shared, int64_t modulus, int64_t g0_inv,
    int64_t acc, int64_t tail_norm, int64_t *h, Py_ssize_t d,
    bint *have_best, int64_t *best_norm, int64_t *best_vec,
):
    cdef int64_t r0, h0, norm
    cdef Py_ssize_t i
    if acc % shared != 0:
        return
    if modulus > 1:
        r0 = (((-acc) // shared) % modulus) * g0_inv % modulus
    else:
        r0 = 0
    h0 = (r0 + width) % modulus - width
    while h0 <= width:
        if h0 != 0 or tail_norm != 0:
            norm = h0 * h0 + tail_norm
            if not have_best[0] or norm < best_norm[0]:
                have_best[0] = True
                best_norm[0] = norm
                best_vec[0] = h0
                for i in range(1, d):
                    best_vec[i] = h[i]
        h0 += modulus
    return


def _rank1_box_object(n, g, width):
    d = len(g)
    g0 = g[0] % n
    shared = _gcd(g0, n)
    modulus = n // shared
    g0_inv = pow(g0 // shared, -1, modulus) if modulus > 1 else 0
    best_norm = None
    best_vec = None
    h = [0] * d

    def recurse(level, acc, tail_norm):
        nonlocal best_norm, best_vec
        if level == d:
            if acc % shared != 0:
                return
            r0 = ((-acc // shared) * g0_inv) % modulus
            h0 = ((r0 + width) % modulus) - width
            while h0 <= width:
                if h0 != 0 or tail_norm != 0:
                    norm = h0 * h0 + tail_norm
                    if best_norm is None or norm < best_norm:
                        best_norm = norm
                        best_vec = [h0] + h[1:]
                h0 += modulus
            return
        for c in range(-width, width + 1):
            h[level] = c
            recurse(level + 1, acc + g[level] * c, tail_norm + c * c)
        h[level] = 0

    recurse(1, 0, 0)
    if best_norm is None:
        raise ValueError("no nonzero dual vector in the box")
    return best_vec, best_norm

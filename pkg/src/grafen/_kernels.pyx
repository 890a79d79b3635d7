# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops: symmetric eigenvalues and preferential attachment.

The pure-Python twin lives in ``_pykernels.py`` and exposes the same four
functions with the same semantics.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, hypot, copysign, pow

cnp.import_array()

cdef double EPS = 2.220446049250313e-16
cdef int MAX_QL_ITER = 60
cdef long REBUILD_EVERY = 65536


def tridiagonalize(double[:, ::1] a):
    """Householder reduction of a symmetric matrix, in place, values only.

    Only the upper triangle ``a[i, j], j >= i`` is read and updated, so every
    row segment touched is contiguous. The rank-2 update of step ``k`` and the
    matrix-vector product of step ``k + 1`` share one sweep over each row,
    which halves memory traffic on matrices that do not fit in cache.

    Returns the diagonal ``d`` and off-diagonal ``e`` (both length n;
    ``e[i]`` couples ``i`` and ``i + 1``, ``e[n - 1] = 0``).
    """
    cdef Py_ssize_t n = a.shape[0], k, i, j
    if a.shape[1] != n:
        raise ValueError("matrix must be square")
    d_arr = np.zeros(n)
    e_arr = np.zeros(n)
    buf = np.zeros((4, n))
    cdef double[::1] d = d_arr, e = e_arr
    cdef double[:, ::1] b = buf
    cdef double* v = &b[0, 0]
    cdef double* p = &b[1, 0]
    cdef double* v2 = &b[2, 0]
    cdef double* p2 = &b[3, 0]
    cdef double* tmp
    cdef double tau = 0.0, tau2 = 0.0, half, vi, wi, v2i, acc, r
    cdef double* row
    cdef bint active, active_next

    if n < 3:
        if n >= 2:
            d[0] = a[0, 0]
            e[0] = a[0, 1]
        if n >= 1:
            d[n - 1] = a[n - 1, n - 1]
        return d_arr, e_arr

    active = _reflector(a, 0, n, v, &tau, &e[0])
    if active:
        _symv_upper(a, 1, n, v, p)
    for k in range(n - 2):
        d[k] = a[k, k]
        if not active:
            if k + 1 < n - 2:
                active = _reflector(a, k + 1, n, v, &tau, &e[k + 1])
                if active:
                    _symv_upper(a, k + 2, n, v, p)
            continue
        # w = tau B v - (tau^2 / 2)(v' B v) v, stored over p
        half = 0.0
        for j in range(k + 1, n):
            p[j] *= tau
            half += v[j] * p[j]
        half *= 0.5 * tau
        for j in range(k + 1, n):
            p[j] -= half * v[j]

        row = &a[k + 1, 0]
        vi = v[k + 1]
        wi = p[k + 1]
        for j in range(k + 1, n):
            row[j] -= vi * p[j] + wi * v[j]

        active_next = False
        if k + 1 < n - 2:
            active_next = _reflector(a, k + 1, n, v2, &tau2, &e[k + 1])
        if active_next:
            for j in range(k + 2, n):
                p2[j] = 0.0
            for i in range(k + 2, n):
                row = &a[i, 0]
                vi = v[i]
                wi = p[i]
                v2i = v2[i]
                r = row[i] - (vi * p[i] + wi * v[i])
                row[i] = r
                acc = r * v2i
                for j in range(i + 1, n):
                    r = row[j] - (vi * p[j] + wi * v[j])
                    row[j] = r
                    acc += r * v2[j]
                    p2[j] += r * v2i
                p2[i] += acc
        else:
            for i in range(k + 2, n):
                row = &a[i, 0]
                vi = v[i]
                wi = p[i]
                for j in range(i, n):
                    row[j] -= vi * p[j] + wi * v[j]
        tmp = v; v = v2; v2 = tmp
        tmp = p; p = p2; p2 = tmp
        tau = tau2
        active = active_next
    d[n - 2] = a[n - 2, n - 2]
    e[n - 2] = a[n - 2, n - 1]
    d[n - 1] = a[n - 1, n - 1]
    return d_arr, e_arr


cdef bint _reflector(double[:, ::1] a, Py_ssize_t k, Py_ssize_t n,
                     double* v, double* tau, double* ek):
    """Householder vector annihilating ``a[k, k+2:]``; False if already zero."""
    cdef double* row = &a[k, 0]
    cdef double tail = 0.0, nrm, alpha
    cdef Py_ssize_t j
    for j in range(k + 2, n):
        tail += row[j] * row[j]
    if tail == 0.0:
        ek[0] = row[k + 1]
        return False
    nrm = sqrt(tail + row[k + 1] * row[k + 1])
    alpha = -copysign(nrm, row[k + 1])
    for j in range(k + 1, n):
        v[j] = row[j]
    v[k + 1] -= alpha
    # v.v = 2 nrm (nrm + |x0|)
    tau[0] = 1.0 / (nrm * (nrm + fabs(row[k + 1])))
    ek[0] = alpha
    return True


cdef void _symv_upper(double[:, ::1] a, Py_ssize_t lo, Py_ssize_t n,
                      double* v, double* p):
    """p[lo:] = B v[lo:] for the symmetric block B = a[lo:, lo:] (upper part)."""
    cdef Py_ssize_t i, j
    cdef double vi, acc
    cdef double* row
    for j in range(lo, n):
        p[j] = 0.0
    for i in range(lo, n):
        row = &a[i, 0]
        vi = v[i]
        acc = row[i] * vi
        for j in range(i + 1, n):
            acc += row[j] * v[j]
            p[j] += row[j] * vi
        p[i] += acc


def tridiagonal_eigenvalues(d_in, e_in):
    """Eigenvalues of a symmetric tridiagonal matrix by implicit-shift QL.

    ``e_in[i]`` couples ``i`` and ``i + 1``. Returns values sorted descending.
    """
    d_arr = np.array(d_in, dtype=np.float64)
    cdef Py_ssize_t n = d_arr.shape[0]
    e_arr = np.zeros(n)
    e_arr[: max(n - 1, 0)] = np.asarray(e_in, dtype=np.float64)[: max(n - 1, 0)]
    cdef double[::1] d = d_arr, e = e_arr
    cdef Py_ssize_t l, m, i
    cdef int it
    cdef double dd, g, r, s, c, p, f, b, tnorm = 0.0
    cdef bint underflow
    # absolute deflation threshold: clusters of zero eigenvalues (common in
    # trees) never satisfy a test relative to the neighbouring diagonal
    for i in range(n):
        dd = fabs(d[i]) + fabs(e[i])
        if dd > tnorm:
            tnorm = dd
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = fabs(d[m]) + fabs(d[m + 1])
                if fabs(e[m]) <= EPS * dd or fabs(e[m]) <= EPS * tnorm:
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > MAX_QL_ITER:
                raise ArithmeticError("QL iteration failed to converge")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = False
            i = m - 1
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    d_arr.sort()
    return d_arr[::-1].copy()


def symmetric_eigenvalues(a):
    """All eigenvalues of a dense real symmetric matrix, descending.

    ``a`` is copied; the caller's array is left untouched.
    """
    work = np.array(a, dtype=np.float64, order="C", copy=True)
    d, e = tridiagonalize(work)
    return tridiagonal_eigenvalues(d, e)


def attach_parents(Py_ssize_t n, double alpha, uniforms_in):
    """Parent array of a preferential-attachment tree.

    Vertex 1 joins vertex 0; vertex ``t >= 2`` joins ``i < t`` with
    probability ``deg(i)**alpha / sum``. ``uniforms[t - 2]`` in [0, 1) drives
    the draw for vertex ``t``. Sampling walks a Fenwick tree of weights.
    """
    cdef double[::1] uniforms = np.ascontiguousarray(uniforms_in, dtype=np.float64).reshape(-1)
    parents_arr = np.zeros(max(n, 1), dtype=np.int64)
    if n <= 1:
        return parents_arr[:n]
    if uniforms.shape[0] < n - 2:
        raise ValueError("need n - 2 uniforms")
    cdef cnp.int64_t[::1] parents = parents_arr
    deg_arr = np.zeros(n, dtype=np.int64)
    w_arr = np.zeros(n)
    tree_arr = np.zeros(n + 1)
    cdef cnp.int64_t[::1] deg = deg_arr
    cdef double[::1] w = w_arr, tree = tree_arr
    cdef Py_ssize_t t, pos, step, top, j, idx
    cdef long updates = 0
    cdef double total, rem, old, new

    top = 1
    while top * 2 <= n:
        top *= 2

    deg[0] = 1
    deg[1] = 1
    w[0] = 1.0
    w[1] = 1.0
    _fenwick_add(tree, n, 0, 1.0)
    _fenwick_add(tree, n, 1, 1.0)
    total = 2.0
    parents[1] = 0
    for t in range(2, n):
        rem = uniforms[t - 2] * total
        pos = 0
        step = top
        while step > 0:
            if pos + step <= n and tree[pos + step] <= rem:
                pos += step
                rem -= tree[pos]
            step >>= 1
        idx = pos
        if idx > t - 1:
            idx = t - 1
        parents[t] = idx

        old = w[idx]
        deg[idx] += 1
        new = pow(<double>deg[idx], alpha)
        w[idx] = new
        _fenwick_add(tree, n, idx, new - old)
        total += new - old
        deg[t] = 1
        w[t] = 1.0
        _fenwick_add(tree, n, t, 1.0)
        total += 1.0

        updates += 2
        if updates >= REBUILD_EVERY:
            updates = 0
            total = _fenwick_build(tree, w, n)
    return parents_arr


cdef inline void _fenwick_add(double[::1] tree, Py_ssize_t n, Py_ssize_t i, double delta):
    cdef Py_ssize_t j = i + 1
    while j <= n:
        tree[j] += delta
        j += j & -j


cdef double _fenwick_build(double[::1] tree, double[::1] w, Py_ssize_t n):
    cdef Py_ssize_t j, parent
    cdef double total = 0.0
    for j in range(1, n + 1):
        tree[j] = w[j - 1]
        total += w[j - 1]
    for j in range(1, n + 1):
        parent = j + (j & -j)
        if parent <= n:
            tree[parent] += tree[j]
    return total

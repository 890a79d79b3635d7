"""Pure-Python/numpy twin of the compiled kernels in ``_kernels.pyx``.

Selected automatically when the extension is not built, or when
``GRAFEN_PURE_PYTHON=1``. ``attach_parents`` performs the same floating
point operations in the same order as the compiled version, so both backends
grow identical trees from identical uniforms.
"""

from __future__ import annotations

import math

import numpy as np

EPS = 2.220446049250313e-16
MAX_QL_ITER = 60
REBUILD_EVERY = 65536


def tridiagonalize(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # full symmetric trailing block is kept, so p = B @ v is a single matvec
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise ValueError("matrix must be square")
    d = np.zeros(n)
    e = np.zeros(n)
    for k in range(n - 2):
        d[k] = a[k, k]
        x = a[k, k + 1 :].copy()
        tail = float(x[1:] @ x[1:])
        if tail == 0.0:
            e[k] = x[0]
            continue
        nrm = math.sqrt(tail + x[0] * x[0])
        alpha = -math.copysign(nrm, x[0])
        v = x
        v[0] -= alpha
        tau = 1.0 / (nrm * (nrm + abs(a[k, k + 1])))
        e[k] = alpha
        block = a[k + 1 :, k + 1 :]
        p = tau * (block @ v)
        p -= (0.5 * tau * (v @ p)) * v
        block -= np.outer(v, p)
        block -= np.outer(p, v)
    if n >= 2:
        d[n - 2] = a[n - 2, n - 2]
        e[n - 2] = a[n - 2, n - 1]
    if n >= 1:
        d[n - 1] = a[n - 1, n - 1]
    return d, e


def tridiagonal_eigenvalues(d_in, e_in) -> np.ndarray:
    d = [float(x) for x in d_in]
    n = len(d)
    e = [float(x) for x in list(e_in)[: max(n - 1, 0)]] + [0.0] * (n - max(n - 1, 0))
    hypot, copysign = math.hypot, math.copysign
    tnorm = max((abs(d[i]) + abs(e[i]) for i in range(n)), default=0.0)
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                if abs(e[m]) <= EPS * (abs(d[m]) + abs(d[m + 1])) or abs(e[m]) <= EPS * tnorm:
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
            s = c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
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
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return np.array(sorted(d, reverse=True), dtype=np.float64)


def symmetric_eigenvalues(a) -> np.ndarray:
    work = np.array(a, dtype=np.float64, order="C", copy=True)
    d, e = tridiagonalize(work)
    return tridiagonal_eigenvalues(d, e)


def attach_parents(n: int, alpha: float, uniforms) -> np.ndarray:
    if n <= 1:
        return np.zeros(n, dtype=np.int64)
    if len(uniforms) < n - 2:
        raise ValueError("need n - 2 uniforms")
    parents = [0] * n
    deg = [0] * n
    w = [0.0] * n
    tree = [0.0] * (n + 1)

    def add(i: int, delta: float) -> None:
        j = i + 1
        while j <= n:
            tree[j] += delta
            j += j & -j

    top = 1
    while top * 2 <= n:
        top *= 2

    deg[0] = deg[1] = 1
    w[0] = w[1] = 1.0
    add(0, 1.0)
    add(1, 1.0)
    total = 2.0
    updates = 0
    for t in range(2, n):
        rem = float(uniforms[t - 2]) * total
        pos = 0
        step = top
        while step > 0:
            if pos + step <= n and tree[pos + step] <= rem:
                pos += step
                rem -= tree[pos]
            step >>= 1
        idx = min(pos, t - 1)
        parents[t] = idx

        old = w[idx]
        deg[idx] += 1
        new = math.pow(float(deg[idx]), alpha)
        w[idx] = new
        add(idx, new - old)
        total += new - old
        deg[t] = 1
        w[t] = 1.0
        add(t, 1.0)
        total += 1.0

        updates += 2
        if updates >= REBUILD_EVERY:
            updates = 0
            for j in range(1, n + 1):
                tree[j] = w[j - 1]
            total = 0.0
            for j in range(1, n + 1):
                total += w[j - 1]
            for j in range(1, n + 1):
                parent = j + (j & -j)
                if parent <= n:
                    tree[parent] += tree[j]
    return np.array(parents, dtype=np.int64)

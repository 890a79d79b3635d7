"""Seeded generators: preferential-attachment trees, recursive trees, G(n, p).

Randomness comes from numpy's PCG64. A :class:`Seed` ``(master, stream)`` is
mapped to ``SeedSequence(master, spawn_key=(stream,))``, numpy's documented
way of deriving independent child streams, so replication ``r`` of an
experiment never shares a stream with replication ``r'``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .graph import Graph, from_edge_list, from_parents

REVALIDATE_EVERY = 1 << 16


@dataclass(frozen=True)
class Seed:
    master: int
    stream: int = 0

    def __post_init__(self):
        for name in ("master", "stream"):
            v = getattr(self, name)
            if not 0 <= v < 1 << 64:
                raise ValueError(f"{name} must be a 64-bit unsigned integer, got {v}")

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.master, spawn_key=(self.stream,))
        return np.random.Generator(np.random.PCG64(ss))


def _as_seed(seed) -> Seed:
    if isinstance(seed, Seed):
        return seed
    if isinstance(seed, tuple):
        return Seed(*seed)
    return Seed(int(seed))


class WeightedIndex:
    """Dynamic discrete distribution over ``0..n-1`` backed by a Fenwick tree.

    ``sample(u)`` maps a uniform ``u`` in [0, 1) to index ``i`` with
    probability ``w[i] / total``; ``update`` changes one weight in O(log n).
    The running total is recomputed from scratch every ``2**16`` updates.
    """

    def __init__(self, weights: Sequence[float]):
        self.n = len(weights)
        if self.n == 0:
            raise ValueError("need at least one weight")
        self._w = [float(x) for x in weights]
        if any(not x > 0 for x in self._w):
            raise ValueError("weights must be positive")
        self._top = 1 << (self.n.bit_length() - 1)
        self._updates = 0
        self._rebuild()

    def _rebuild(self) -> None:
        n = self.n
        tree = [0.0] * (n + 1)
        for j in range(1, n + 1):
            tree[j] += self._w[j - 1]
            parent = j + (j & -j)
            if parent <= n:
                tree[parent] += tree[j]
        self._tree = tree
        self.total = math.fsum(self._w)

    def weight(self, i: int) -> float:
        return self._w[i]

    def update(self, i: int, weight: float) -> None:
        if not weight > 0:
            raise ValueError("weights must be positive")
        delta = weight - self._w[i]
        self._w[i] = weight
        j = i + 1
        while j <= self.n:
            self._tree[j] += delta
            j += j & -j
        self.total += delta
        self._updates += 1
        if self._updates >= REVALIDATE_EVERY:
            self._updates = 0
            self._rebuild()

    def sample(self, u: float) -> int:
        rem = u * self.total
        pos = 0
        step = self._top
        tree = self._tree
        while step:
            nxt = pos + step
            if nxt <= self.n and tree[nxt] <= rem:
                pos = nxt
                rem -= tree[nxt]
            step >>= 1
        return min(pos, self.n - 1)

    def prefix(self, i: int) -> float:
        """Sum of weights ``0..i-1``."""
        s = 0.0
        while i > 0:
            s += self._tree[i]
            i -= i & -i
        return s


def ba_parents(n: int, alpha: float, seed) -> np.ndarray:
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if not math.isfinite(alpha):
        raise ValueError(f"alpha must be finite, got {alpha}")
    rng = _as_seed(seed).generator()
    if alpha == 0:
        return _uniform_parents(n, rng)
    uniforms = rng.random(max(n - 2, 0))
    return kernels.attach_parents(n, float(alpha), uniforms)


def _uniform_parents(n: int, rng: np.random.Generator) -> np.ndarray:
    parents = np.zeros(n, dtype=np.int64)
    if n > 2:
        u = rng.random(n - 2)
        parents[2:] = np.floor(u * np.arange(2, n)).astype(np.int64)
    return parents


def ba_tree(n: int, alpha: float, seed) -> Graph:
    """Preferential-attachment tree: new vertex joins ``i`` w.p. ``deg(i)**alpha / sum``.

    Vertex 1 always joins vertex 0. ``alpha = 0`` is delegated to
    :func:`recursive_tree`, which consumes the same uniforms.
    """
    return from_parents(ba_parents(n, alpha, seed))


def recursive_tree(n: int, seed) -> Graph:
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return from_parents(_uniform_parents(n, _as_seed(seed).generator()))


def _pair_from_index(idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # pairs (i, j), i < j, enumerated by j then i: idx = j(j-1)/2 + i
    j = np.floor((1.0 + np.sqrt(1.0 + 8.0 * idx.astype(np.float64))) / 2.0).astype(np.int64)
    j -= (j * (j - 1) // 2) > idx
    j += ((j + 1) * j // 2) <= idx
    i = idx - j * (j - 1) // 2
    return i, j


def erdos_renyi(n: int, p: float, seed) -> Graph:
    """G(n, p) by geometric skipping over the ``n(n-1)/2`` vertex pairs."""
    if n < 0 or not 0.0 <= p <= 1.0:
        raise ValueError(f"need n >= 0 and 0 <= p <= 1, got n={n}, p={p}")
    total = n * (n - 1) // 2
    if p == 0.0 or total == 0:
        return from_edge_list(n, [])
    if p == 1.0:
        idx = np.arange(total, dtype=np.int64)
    else:
        rng = _as_seed(seed).generator()
        chunk = max(1024, int(1.1 * p * total) + 64)
        found = []
        pos = -1
        while pos < total:
            gaps = rng.geometric(p, size=chunk)
            steps = pos + np.cumsum(gaps)
            found.append(steps[steps < total])
            pos = int(steps[-1])
        idx = np.concatenate(found).astype(np.int64)
    i, j = _pair_from_index(idx)
    return from_edge_list(n, zip(i.tolist(), j.tolist()))

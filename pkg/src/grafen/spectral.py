"""Adjacency spectra, graph energy and closed-form energies of tree families."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .graph import Graph


@dataclass(frozen=True)
class Spectrum:
    values: np.ndarray  # descending
    norm_scale: float

    def __len__(self) -> int:
        return len(self.values)

    @property
    def energy(self) -> float:
        return float(np.abs(self.values).sum())


def adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for i, nbrs in enumerate(g.adjacency):
        if nbrs:
            a[i, list(nbrs)] = 1.0
    return a


def adjacency_spectrum(g: Graph) -> Spectrum:
    if g.n < 1:
        raise ValueError("spectrum of the empty graph is undefined")
    values = kernels.symmetric_eigenvalues(adjacency_matrix(g))
    return Spectrum(values, 1.0 if g.m else 0.0)


def energy(g: Graph) -> float:
    """Sum of absolute adjacency eigenvalues; exactly 0 for edgeless graphs."""
    if g.m == 0:
        return 0.0
    return adjacency_spectrum(g).energy


def energy_star(n: int) -> float:
    if n < 2:
        raise ValueError(f"star needs n >= 2, got {n}")
    return 2.0 * math.sqrt(n - 1)


def energy_path(n: int) -> float:
    if n < 2:
        raise ValueError(f"path needs n >= 2, got {n}")
    k, odd = divmod(n, 2)
    if odd:
        x = math.pi / (4 * k + 4)
        return 2.0 * math.cos(x) / math.sin(x) - 2.0
    return 2.0 / math.sin(math.pi / (4 * k + 2)) - 2.0


def double_star_eigenvalues(p: int, q: int) -> list[float]:
    """The four nonzero eigenvalues (two when one centre is a leaf), descending."""
    _check_double_star(p, q)
    s = p + q - 1
    root = math.sqrt((p + q + 1) ** 2 - 4 * (p * q + 1))
    big = math.sqrt((s + root) / 2.0)
    small = math.sqrt(max(s - root, 0.0) / 2.0)
    vals = [big, small, -small, -big]
    return [x for x in vals if x != 0.0]


def energy_double_star(p: int, q: int) -> float:
    _check_double_star(p, q)
    s = p + q - 1
    root = math.sqrt((p + q + 1) ** 2 - 4 * (p * q + 1))
    # s - root is exactly 0 when min(p, q) == 1; clamp rounding below zero
    return math.sqrt(2.0) * (math.sqrt(s + root) + math.sqrt(max(s - root, 0.0)))


def _check_double_star(p: int, q: int) -> None:
    if p < 1 or q < 1 or p + q < 3:
        raise ValueError(f"double star needs p, q >= 1 and p + q >= 3, got ({p}, {q})")

"""Upper bounds on graph energy and the star partitions behind the tree bounds.

The closed-form bounds take plain integers or degree lists. The two partition
builders produce explicit edge-disjoint star decompositions whose energy sums
certify the tree bounds through the trace-norm triangle inequality.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import spectral
from .graph import Graph, edge_pair_stats, from_edge_list, is_bipartite, is_tree

MERGE_SAVING = 4.0 - 2.0 * math.sqrt(2.0)


class DomainError(ValueError):
    """A bound was evaluated outside the range where its formula is defined."""


class NotATreeError(ValueError):
    pass


class InvalidPartitionError(ValueError):
    """Parts do not form an edge-disjoint, edge-covering family of subgraphs."""


# -- closed-form bounds -------------------------------------------------------


def mcclelland(n: int, m: int) -> float:
    return math.sqrt(2 * m * n)


def koolen_moulton(n: int, m: int) -> float:
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    # radicand (n-1)(2m - (2m/n)^2) scaled by n^2 to stay in integers
    num = (n - 1) * (2 * m * n * n - 4 * m * m)
    if num < 0:
        raise DomainError(f"negative radicand for n={n}, m={m}")
    return 2 * m / n + math.sqrt(num) / n


def koolen_moulton_bipartite(n: int, m: int) -> float:
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    num = (n - 2) * (2 * m * n * n - 8 * m * m)
    if num < 0:
        raise DomainError(f"negative radicand for n={n}, m={m}")
    return 4 * m / n + math.sqrt(num) / n


def arizmendi_juarez(degrees: Iterable[int]) -> float:
    total = 0.0
    for d in degrees:
        if d < 0:
            raise DomainError(f"negative degree {d}")
        total += math.sqrt(d)
    return total


def _tree_degrees(degrees: Sequence[int], min_n: int = 3) -> list[int]:
    ds = sorted((int(d) for d in degrees), reverse=True)
    n = len(ds)
    if n < min_n:
        raise DomainError(f"tree bound needs n >= {min_n}, got {n}")
    if ds[-1] < 1 or sum(ds) != 2 * n - 2:
        raise NotATreeError(f"degree list with sum {sum(ds)} is not a tree on {n} vertices")
    return ds


def _star_sum(ds: Sequence[int]) -> float:
    return 2.0 * math.sqrt(ds[0]) + sum(2.0 * math.sqrt(d - 1) for d in ds[1:])


def tree_star_bound(degrees: Sequence[int]) -> float:
    """``2 sqrt(D) + sum over the other vertices of 2 sqrt(d - 1)``, D the max degree."""
    return _star_sum(_tree_degrees(degrees))


def tree_star_bound_weak(degrees: Sequence[int]) -> float:
    ds = _tree_degrees(degrees)
    return sum(2.0 * math.sqrt(d - 1) for d in ds) + 1.0


def thm4_bound(degrees: Sequence[int], e22: int) -> float:
    """Star bound minus ``e22 / 3`` merge savings of ``4 - 2 sqrt 2`` each.

    ``e22`` is the number of edges joining two degree-2 vertices. The saving
    is taken at face value (not floored). The bound is not valid for every
    path: ``P_4`` has energy 4.472 but bound 4.438.
    """
    if e22 < 0:
        raise DomainError(f"negative e22 {e22}")
    return tree_star_bound(degrees) - (e22 / 3.0) * MERGE_SAVING


# -- star partitions ----------------------------------------------------------


@dataclass(frozen=True)
class Star:
    center: int
    leaves: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.leaves)

    @property
    def energy(self) -> float:
        return 2.0 * math.sqrt(len(self.leaves))

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset((self.center, *self.leaves))

    def edges(self) -> list[tuple[int, int]]:
        c = self.center
        return [(c, x) if c < x else (x, c) for x in self.leaves]


@dataclass(frozen=True)
class StarPartition:
    stars: tuple[Star, ...]
    root: int = -1
    merges: int = 0

    @property
    def parts(self) -> list[frozenset[int]]:
        return [s.vertices for s in self.stars]

    @property
    def centers(self) -> list[int]:
        return [s.center for s in self.stars]

    @property
    def part_energy(self) -> list[float]:
        return [s.energy for s in self.stars]

    def energy_sum(self) -> float:
        return math.fsum(self.part_energy)


def _root_and_parents(t: Graph, root: int | None = None) -> tuple[int, list[int]]:
    if root is None:
        degs = t.degrees()
        root = degs.index(max(degs))
    elif not 0 <= root < t.n:
        raise ValueError(f"root {root} outside 0..{t.n - 1}")
    parent = [-1] * t.n
    seen = [False] * t.n
    seen[root] = True
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in t.adjacency[v]:
            if not seen[w]:
                seen[w] = True
                parent[w] = v
                queue.append(w)
    return root, parent


def star_partition(t: Graph, root: int | None = None) -> StarPartition:
    """One star per internal vertex of ``t`` rooted at ``root``.

    Each vertex keeps the edges to its children; the root keeps all its edges.
    The default root is the lowest-index vertex of maximum degree, which gives
    the smallest energy sum over all choices of root.
    """
    if t.n < 2 or not is_tree(t):
        raise NotATreeError("star_partition needs a tree with at least 2 vertices")
    root, parent = _root_and_parents(t, root)
    stars = []
    for v in range(t.n):
        children = tuple(w for w in t.adjacency[v] if w != parent[v])
        if children:
            stars.append(Star(v, children))
    return StarPartition(tuple(stars), root=root)


def merge_degree2_pairs(t: Graph, sp: StarPartition) -> StarPartition:
    """Fuse single-edge stars along chains of degree-2 vertices.

    For an edge ``u1 - u2`` with both endpoints of degree 2, ``u2`` a child of
    ``u1`` and ``H(u1)`` exactly that edge, the stars ``H(u1)`` and ``H(u2)``
    are replaced by the 2-edge star centred at ``u2``. Edges are scanned in
    canonical order; a star already used in a merge cannot be used again.
    """
    by_center: dict[int, Star] = {}
    parent = [-1] * t.n
    for s in sp.stars:
        if s.center in by_center:
            raise InvalidPartitionError("partition is not a rooted star partition")
        by_center[s.center] = s
        for x in s.leaves:
            parent[x] = s.center
    deg = t.degrees()
    used: set[int] = set()
    merged: list[Star] = []
    for a, b in t.edges():
        if deg[a] != 2 or deg[b] != 2:
            continue
        if parent[b] == a:
            u1, u2 = a, b
        elif parent[a] == b:
            u1, u2 = b, a
        else:
            continue
        h1 = by_center.get(u1)
        h2 = by_center.get(u2)
        if h1 is None or h2 is None or h1.leaves != (u2,) or h2.size != 1:
            continue
        if u1 in used or u2 in used:
            continue
        used.update((u1, u2))
        merged.append(Star(u2, tuple(sorted((u1, h2.leaves[0])))))
    keep = [s for s in sp.stars if s.center not in used]
    stars = tuple(sorted(keep + merged, key=lambda s: s.center))
    return StarPartition(stars, root=sp.root, merges=sp.merges + len(merged))


def _edge_sets(parts) -> list[list[tuple[int, int]]]:
    if isinstance(parts, StarPartition):
        return [s.edges() for s in parts.stars]
    out = []
    for part in parts:
        if isinstance(part, Graph):
            out.append(part.edges())
        else:
            out.append([(i, j) if i < j else (j, i) for i, j in part])
    return out


def _part_energy(edges: list[tuple[int, int]]) -> float:
    if not edges:
        return 0.0
    touched: dict[int, int] = {}
    for e in edges:
        for v in e:
            touched[v] = touched.get(v, 0) + 1
    k = len(edges)
    if max(touched.values()) == k:
        return 2.0 * math.sqrt(k)
    labels = {v: i for i, v in enumerate(sorted(touched))}
    sub = from_edge_list(len(labels), [(labels[i], labels[j]) for i, j in edges])
    return spectral.energy(sub)


def partition_energy_sum(g: Graph, parts) -> float:
    """Sum of part energies after checking the parts partition the edges of ``g``.

    ``parts`` is a :class:`StarPartition` or an iterable of parts, each a
    :class:`Graph` on the same vertex labels or a list of edges.
    """
    edge_sets = _edge_sets(parts)
    universe = set(g.edges())
    covered: set[tuple[int, int]] = set()
    for es in edge_sets:
        for e in es:
            if e not in universe:
                raise InvalidPartitionError(f"edge {e} is not an edge of the graph (not a subgraph)")
            if e in covered:
                raise InvalidPartitionError(f"edge {e} lies in two parts (not edge-disjoint)")
            covered.add(e)
    missing = universe - covered
    if missing:
        raise InvalidPartitionError(f"edge {min(missing)} lies in no part (not edge-covering)")
    return math.fsum(_part_energy(es) for es in edge_sets)


# -- aggregated report --------------------------------------------------------

CSV_FIELDS = (
    "n", "m", "delta", "e22", "energy", "mcclelland", "km1", "km2",
    "aj", "thm31", "thm31_weak", "thm4",
)


@dataclass
class BoundReport:
    n: int
    m: int
    delta: int
    e22: int
    energy_exact: float
    mcclelland: float | None = None
    km1: float | None = None
    km2: float | None = None
    aj: float | None = None
    thm31: float | None = None
    thm31_weak: float | None = None
    thm4: float | None = None
    absent: dict[str, str] = field(default_factory=dict)

    def bounds(self) -> dict[str, float]:
        names = ("mcclelland", "km1", "km2", "aj", "thm31", "thm31_weak", "thm4")
        return {k: getattr(self, k) for k in names if getattr(self, k) is not None}

    def row(self) -> dict[str, object]:
        out = {f: getattr(self, f) for f in CSV_FIELDS if f != "energy"}
        out["energy"] = self.energy_exact
        return {f: out[f] for f in CSV_FIELDS}


def bound_report(g: Graph, energy: float | None = None) -> BoundReport:
    """Exact energy and every bound applicable to ``g``.

    Bounds that do not apply are left as ``None`` with a reason in ``absent``.
    ``energy`` may be passed in when already known.
    """
    degs = g.degrees()
    e22 = edge_pair_stats(g).e22
    rep = BoundReport(
        n=g.n,
        m=g.m,
        delta=max(degs, default=0),
        e22=e22,
        energy_exact=spectral.energy(g) if energy is None else energy,
    )
    rep.mcclelland = mcclelland(g.n, g.m)
    rep.aj = arizmendi_juarez(degs)
    try:
        rep.km1 = koolen_moulton(g.n, g.m)
    except DomainError as exc:
        rep.absent["km1"] = f"domain: {exc}"
    if not is_bipartite(g):
        rep.absent["km2"] = "not-bipartite"
    else:
        try:
            rep.km2 = koolen_moulton_bipartite(g.n, g.m)
        except DomainError as exc:
            rep.absent["km2"] = f"domain: {exc}"
    if not is_tree(g):
        for k in ("thm31", "thm31_weak", "thm4"):
            rep.absent[k] = "not-tree"
    else:
        try:
            rep.thm31 = tree_star_bound(degs)
            rep.thm31_weak = tree_star_bound_weak(degs)
            rep.thm4 = thm4_bound(degs, e22)
        except DomainError as exc:
            for k in ("thm31", "thm31_weak", "thm4"):
                rep.absent[k] = f"domain: {exc}"
    return rep

"""Simple undirected graphs, named tree families and degree statistics.

Vertices are dense 0-based integers. A :class:`Graph` is immutable and stores
one sorted neighbour tuple per vertex, so two graphs built from the same edge
set compare equal.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Base class for malformed graph input."""


class SelfLoopError(GraphError):
    pass


class VertexRangeError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class EdgeListFormatError(GraphError):
    pass


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.vertex_count

    @property
    def m(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(nbrs) for nbrs in self.adjacency]

    def edges(self) -> list[tuple[int, int]]:
        """Canonical edge list: pairs ``(i, j)`` with ``i < j``, sorted."""
        return [(i, j) for i, nbrs in enumerate(self.adjacency) for j in nbrs if i < j]

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        return from_edge_list(self.n, [(perm[i], perm[j]) for i, j in self.edges()])


@dataclass(frozen=True)
class DegreeStats:
    counts: dict[int, int]
    n: int
    m: int


@dataclass(frozen=True)
class EdgePairStats:
    counts: dict[tuple[int, int], int]

    @property
    def e22(self) -> int:
        return self.counts.get((2, 2), 0)


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 0:
        raise VertexRangeError(f"negative vertex count {n}")
    nbrs: list[list[int]] = [[] for _ in range(n)]
    seen: set[tuple[int, int]] = set()
    for i, j in edges:
        i, j = int(i), int(j)
        if not (0 <= i < n and 0 <= j < n):
            raise VertexRangeError(f"edge ({i}, {j}) outside 0..{n - 1}")
        if i == j:
            raise SelfLoopError(f"self-loop at vertex {i}")
        key = (i, j) if i < j else (j, i)
        if key in seen:
            raise DuplicateEdgeError(f"duplicate edge {key}")
        seen.add(key)
        nbrs[i].append(j)
        nbrs[j].append(i)
    return Graph(n, tuple(tuple(sorted(a)) for a in nbrs))


def from_parents(parents: Sequence[int]) -> Graph:
    """Build a tree from a parent array; ``parents[0]`` is ignored.

    Vertex ``t >= 1`` is joined to ``parents[t] < t``. This is the shape every
    sequential tree generator produces, and it skips the duplicate checks.
    """
    n = len(parents)
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for t in range(1, n):
        p = int(parents[t])
        nbrs[p].append(t)
        nbrs[t].append(p)
    # children are appended in increasing order; the parent (smaller) goes first
    return Graph(n, tuple(tuple(sorted(a)) for a in nbrs))


def star(n: int) -> Graph:
    if n < 2:
        raise ValueError(f"star needs n >= 2, got {n}")
    return from_edge_list(n, [(0, j) for j in range(1, n)])


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError(f"path needs n >= 1, got {n}")
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def double_star(p: int, q: int) -> Graph:
    """Two adjacent centres of degrees ``p`` and ``q``; ``p + q`` vertices.

    Vertex 0 is the degree-``p`` centre, vertex 1 the degree-``q`` centre.
    """
    if p < 1 or q < 1 or p + q < 3:
        raise ValueError(f"double star needs p, q >= 1 and p + q >= 3, got ({p}, {q})")
    edges = [(0, 1)]
    edges += [(0, 2 + k) for k in range(p - 1)]
    edges += [(1, 1 + p + k) for k in range(q - 1)]
    return from_edge_list(p + q, edges)


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = [False] * g.n
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        v = queue.popleft()
        for w in g.adjacency[v]:
            if not seen[w]:
                seen[w] = True
                count += 1
                queue.append(w)
    return count == g.n


def is_tree(g: Graph) -> bool:
    if g.n == 0 or g.m != g.n - 1:
        return False
    return is_connected(g)


def is_bipartite(g: Graph) -> bool:
    colour = [-1] * g.n
    for s in range(g.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.adjacency[v]:
                if colour[w] < 0:
                    colour[w] = 1 - colour[v]
                    queue.append(w)
                elif colour[w] == colour[v]:
                    return False
    return True


def degree_stats(g: Graph) -> DegreeStats:
    return DegreeStats(dict(Counter(g.degrees())), g.n, g.m)


def edge_pair_stats(g: Graph) -> EdgePairStats:
    deg = g.degrees()
    counts: Counter[tuple[int, int]] = Counter()
    for i, j in g.edges():
        a, b = deg[i], deg[j]
        counts[(a, b) if a <= b else (b, a)] += 1
    return EdgePairStats(dict(counts))


def degree_key(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Cheap isomorphism fingerprint: edge count and sorted degree sequence."""
    return g.m, tuple(sorted(g.degrees(), reverse=True))


# edge-list text format: "n m" header then one "i j" line per edge, i < j


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{i} {j}" for i, j in g.edges()]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise EdgeListFormatError("missing 'n m' header line")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise EdgeListFormatError(f"malformed edge list: {exc}") from None
    if len(edges) != m:
        raise EdgeListFormatError(f"header declares {m} edges, found {len(edges)}")
    return from_edge_list(n, edges)


def read_edge_list(path_: str) -> Graph:
    with open(path_, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def write_edge_list(g: Graph, path_: str) -> None:
    with open(path_, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_edge_list(g))

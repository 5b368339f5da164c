"""Graphs, bipartitions, and the potential matrix V = I + 2gL.

Node indices are 0-based throughout, including the JSON file formats::

    graph:      {"n": 4, "edges": [[0, 1], [1, 2], [2, 3]]}
    partition:  {"part_a": [0, 1]}
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

import numpy as np

__all__ = [
    "Graph",
    "Bipartition",
    "FourBlockPartition",
    "PotentialMatrix",
    "FAMILIES",
    "laplacian",
    "potential_matrix",
    "make_family",
    "four_block_of",
    "as_bipartition",
    "load_graph",
    "load_partition",
]


@dataclass(frozen=True)
class Graph:
    """Simple undirected unweighted graph on nodes ``0..n-1``."""

    n: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"node count must be a positive integer, got {self.n!r}")
        normalized = set()
        for edge in self.edges:
            i, j = (int(x) for x in edge)
            if i == j:
                raise ValueError(f"self-loop on node {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge ({i}, {j}) out of range for n={self.n}")
            normalized.add((min(i, j), max(i, j)))
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> Graph:
        edges = list(edges)
        seen = set()
        for e in edges:
            key = (min(e), max(e))
            if key in seen:
                raise ValueError(f"duplicate edge {tuple(e)}")
            seen.add(key)
        return cls(n, frozenset(tuple(e) for e in edges))

    @classmethod
    def from_adjacency(cls, adjacency) -> Graph:
        a = np.asarray(adjacency)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency must be square")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency must be symmetric")
        if np.any(np.diag(a) != 0) or not np.all(np.isin(a, (0, 1))):
            raise ValueError("adjacency must be 0/1 with zero diagonal")
        i, j = np.nonzero(np.triu(a, 1))
        return cls(a.shape[0], frozenset(zip(i.tolist(), j.tolist())))

    @property
    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for i, j in self.edges:
            a[i, j] = a[j, i] = 1.0
        return a

    @property
    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1).astype(int)

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in sorted(self.edges)]}

    @classmethod
    def from_json(cls, data: dict) -> Graph:
        try:
            return cls.from_edges(data["n"], data["edges"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed graph JSON: {exc}") from exc

    def is_connected(self) -> bool:
        seen = {0}
        stack = [0]
        nbrs = [[] for _ in range(self.n)]
        for i, j in self.edges:
            nbrs[i].append(j)
            nbrs[j].append(i)
        while stack:
            for k in nbrs[stack.pop()]:
                if k not in seen:
                    seen.add(k)
                    stack.append(k)
        return len(seen) == self.n

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with node ``i`` renamed to ``perm[i]``."""
        return Graph(self.n, frozenset((perm[i], perm[j]) for i, j in self.edges))


@dataclass(frozen=True)
class Bipartition:
    """Split of ``0..n-1`` into ``part_a`` and its complement."""

    n: int
    part_a: tuple[int, ...]

    def __post_init__(self):
        part_a = tuple(int(i) for i in self.part_a)
        if not part_a:
            raise ValueError("part_a must be non-empty")
        if len(set(part_a)) != len(part_a):
            raise ValueError("part_a has duplicate nodes")
        if any(i < 0 or i >= self.n for i in part_a):
            raise ValueError(f"part_a node out of range for n={self.n}")
        if len(part_a) >= self.n:
            raise ValueError("part_a must be a proper subset of the nodes")
        object.__setattr__(self, "part_a", part_a)

    @property
    def part_b(self) -> tuple[int, ...]:
        a = set(self.part_a)
        return tuple(i for i in range(self.n) if i not in a)

    def complement(self) -> Bipartition:
        return Bipartition(self.n, self.part_b)


def as_bipartition(p, n: int) -> Bipartition:
    """Accept a Bipartition or any iterable of node indices."""
    if isinstance(p, Bipartition):
        if p.n != n:
            raise ValueError(f"bipartition is for n={p.n}, matrix has n={n}")
        return p
    return Bipartition(n, tuple(p))


@dataclass(frozen=True)
class FourBlockPartition:
    """Ordered blocks (interior A, boundary A, boundary B, interior B).

    Sizes are ``(m1, m2, n2, n1)``; the interior blocks may be empty.
    """

    blocks: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...], tuple[int, ...]]

    def __post_init__(self):
        blocks = tuple(tuple(int(i) for i in b) for b in self.blocks)
        if len(blocks) != 4:
            raise ValueError("exactly four blocks required")
        flat = [i for b in blocks for i in b]
        if len(set(flat)) != len(flat):
            raise ValueError("blocks overlap")
        if sorted(flat) != list(range(len(flat))):
            raise ValueError("blocks must cover 0..n-1")
        object.__setattr__(self, "blocks", blocks)

    @property
    def sizes(self) -> tuple[int, int, int, int]:
        return tuple(len(b) for b in self.blocks)

    @property
    def order(self) -> tuple[int, ...]:
        return tuple(i for b in self.blocks for i in b)

    def validate(self, graph: Graph) -> None:
        """Raise if an edge joins non-adjacent blocks (1-3, 1-4, 2-4)."""
        where = {i: k for k, b in enumerate(self.blocks) for i in b}
        if len(where) != graph.n:
            raise ValueError("partition and graph disagree on node count")
        for i, j in graph.edges:
            if abs(where[i] - where[j]) > 1:
                raise ValueError(
                    f"edge ({i}, {j}) joins blocks {where[i] + 1} and {where[j] + 1}"
                )


@dataclass(frozen=True)
class PotentialMatrix:
    """Coupling ``g`` and the dense symmetric matrix ``v = I + 2 g L``."""

    g: float
    v: np.ndarray

    def __post_init__(self):
        v = np.array(self.v, dtype=float)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValueError("potential matrix must be square")
        if not np.allclose(v, v.T, rtol=0, atol=1e-14 * max(1.0, np.abs(v).max())):
            raise ValueError("potential matrix must be symmetric")
        v.setflags(write=False)
        object.__setattr__(self, "v", v)

    @property
    def n(self) -> int:
        return self.v.shape[0]


def laplacian(graph: Graph) -> np.ndarray:
    a = graph.adjacency
    return np.diag(a.sum(axis=1)) - a


def potential_matrix(graph: Graph, g: float) -> PotentialMatrix:
    """``I + 2 g L``; ``g = 0`` gives decoupled oscillators."""
    g = float(g)
    if not np.isfinite(g) or g < 0:
        raise ValueError(f"coupling g must be a finite non-negative number, got {g}")
    return PotentialMatrix(g, np.eye(graph.n) + 2.0 * g * laplacian(graph))


def _complete_edges(nodes):
    return list(combinations(nodes, 2))


def _path_edges(nodes):
    return list(zip(nodes[:-1], nodes[1:]))


def _need(name, params, count, minimum):
    if len(params) != count:
        raise ValueError(f"{name} takes {count} parameter(s), got {len(params)}")
    for p in params:
        if int(p) != p or p < minimum:
            raise ValueError(f"{name} parameters must be integers >= {minimum}, got {params}")
    return [int(p) for p in params]


def _complete(params):
    (n,) = _need("complete", params, 1, 1)
    return Graph.from_edges(n, _complete_edges(range(n)))


def _path(params):
    (n,) = _need("path", params, 1, 1)
    return Graph.from_edges(n, _path_edges(list(range(n))))


def _star(params):
    # hub is node 0, leaves 1..n-1
    (n,) = _need("star", params, 1, 2)
    return Graph.from_edges(n, [(0, k) for k in range(1, n)])


def _cycle(params):
    (n,) = _need("cycle", params, 1, 3)
    return Graph.from_edges(n, _path_edges(list(range(n))) + [(n - 1, 0)])


def _complete_bipartite(params):
    p, q = _need("complete_bipartite", params, 2, 1)
    return Graph.from_edges(p + q, [(i, p + j) for i in range(p) for j in range(q)])


def _barbell(params):
    # K_l1 on 0..l1-1, K_l2 on l1..; bridge joins l1-1 and l1
    l1, l2 = _need("barbell", params, 2, 1)
    edges = _complete_edges(range(l1)) + _complete_edges(range(l1, l1 + l2))
    return Graph.from_edges(l1 + l2, edges + [(l1 - 1, l1)])


def _lollipop(params):
    # K_m on 0..m-1, path on m..m+n-1; bridge joins m-1 and m
    m, n = _need("lollipop", params, 2, 1)
    edges = _complete_edges(range(m)) + _path_edges(list(range(m, m + n)))
    return Graph.from_edges(m + n, edges + [(m - 1, m)])


def _star_coalescence(params):
    # S_s1 with hub s1-1 and leaves 0..s1-2; S_s2 with hub s1 and leaves after it
    s1, s2 = _need("star_coalescence", params, 2, 1)
    h1, h2 = s1 - 1, s1
    edges = [(k, h1) for k in range(s1 - 1)]
    edges += [(h2, h2 + k) for k in range(1, s2)]
    return Graph.from_edges(s1 + s2, edges + [(h1, h2)])


def _star_path(params):
    # S_m with hub m-1 and leaves 0..m-2, path on m..m+n-1; bridge joins hub and m
    m, n = _need("star_path", params, 2, 1)
    edges = [(k, m - 1) for k in range(m - 1)] + _path_edges(list(range(m, m + n)))
    return Graph.from_edges(m + n, edges + [(m - 1, m)])


def _kite(params):
    # K_4 minus the edge (2, 3): nodes 0, 1 have degree 3, nodes 2, 3 degree 2
    _need("kite", params, 0, 0)
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


def _square(params):
    _need("square", params, 0, 0)
    return _cycle([4])


FAMILIES = {
    "complete": _complete,
    "path": _path,
    "star": _star,
    "cycle": _cycle,
    "complete_bipartite": _complete_bipartite,
    "barbell": _barbell,
    "lollipop": _lollipop,
    "star_coalescence": _star_coalescence,
    "star_path": _star_path,
    "kite": _kite,
    "square": _square,
}


def make_family(name: str, *params: int) -> Graph:
    """Build a named graph.

    Parameters
    ----------
    name : str
        One of ``FAMILIES``. Two-block families (``barbell``, ``lollipop``,
        ``star_coalescence``, ``star_path``) place the first block on the
        lowest indices, so ``part_a = range(first_block_size)`` cuts the bridge.
    *params : int
        Family sizes. ``star(N)`` counts the hub, so ``star(4)`` has three leaves.
    """
    try:
        builder = FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None
    return builder(list(params))


def _four_blocks(coupled: np.ndarray, part_a: Sequence[int]) -> FourBlockPartition:
    n = coupled.shape[0]
    a = list(part_a)
    in_a = np.zeros(n, dtype=bool)
    in_a[a] = True
    b = [i for i in range(n) if not in_a[i]]
    cross = coupled[np.ix_(a, b)]
    a_boundary = cross.any(axis=1)
    b_boundary = cross.any(axis=0)
    return FourBlockPartition(
        (
            tuple(i for i, on in zip(a, a_boundary) if not on),
            tuple(i for i, on in zip(a, a_boundary) if on),
            tuple(j for j, on in zip(b, b_boundary) if on),
            tuple(j for j, on in zip(b, b_boundary) if not on),
        )
    )


def four_block_of(graph: Graph, bipartition) -> FourBlockPartition:
    """Refine a bipartition into interior/boundary blocks on each side.

    Block order follows ``part_a`` then ascending ``part_b`` within each block.
    """
    p = as_bipartition(bipartition, graph.n)
    fb = _four_blocks(graph.adjacency != 0, p.part_a)
    fb.validate(graph)
    return fb


def load_graph(path) -> Graph:
    with open(Path(path)) as fh:
        return Graph.from_json(json.load(fh))


def load_partition(path) -> tuple[int, ...]:
    with open(Path(path)) as fh:
        data = json.load(fh)
    try:
        return tuple(int(i) for i in data["part_a"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed partition JSON: {exc}") from exc

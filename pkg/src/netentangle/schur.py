"""Entropy through Schur-complement elimination of interior blocks.

With nodes ordered (interior A, boundary A, boundary B, interior B) the
potential matrix is block tridiagonal.  Eliminating the interior blocks
with a change of variables local to each side leaves the two-block system

    [[V22 - V12^T V11^-1 V12,  V23],
     [V23^T,  V33 - V34 V44^-1 V34^T]]

which carries the same Schmidt coefficients as the full matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .exceptions import NotPositiveDefiniteError
from .graphs import FourBlockPartition, Graph, _four_blocks, as_bipartition
from .reduction import _as_matrix, _result, schmidt_spectrum_direct, spectrum_from_d

__all__ = [
    "ReducedSystem",
    "schur_reduce",
    "entropy_via_schur",
    "theorem1_d",
    "corollary1_d",
    "is_complete_chain",
]


@dataclass(frozen=True)
class ReducedSystem:
    v22_tilde: np.ndarray
    v33_tilde: np.ndarray
    v23: np.ndarray
    sizes: tuple[int, int, int, int]
    g: float | None = None

    @property
    def matrix(self) -> np.ndarray:
        return np.block([[self.v22_tilde, self.v23], [self.v23.T, self.v33_tilde]])


def _eliminate(keep: np.ndarray, link: np.ndarray, interior: np.ndarray) -> np.ndarray:
    """``keep - link^T interior^-1 link``; identity when ``interior`` is empty."""
    if interior.size == 0:
        return keep.copy()
    try:
        solved = linalg.solve(interior, link, assume_a="pos")
    except linalg.LinAlgError as exc:
        raise NotPositiveDefiniteError(f"interior block is not positive definite: {exc}") from exc
    out = keep - link.T @ solved
    return 0.5 * (out + out.T)


def schur_reduce(v, fb: FourBlockPartition) -> ReducedSystem:
    m = _as_matrix(v)
    b1, b2, b3, b4 = (list(b) for b in fb.blocks)
    for x, y in ((b1, b3), (b1, b4), (b2, b4)):
        if x and y and np.any(m[np.ix_(x, y)] != 0):
            raise ValueError("four-block partition does not match the coupling pattern of V")
    v22 = m[np.ix_(b2, b2)]
    v33 = m[np.ix_(b3, b3)]
    v22t = _eliminate(v22, m[np.ix_(b1, b2)], m[np.ix_(b1, b1)])
    v33t = _eliminate(v33, m[np.ix_(b4, b3)], m[np.ix_(b4, b4)])
    g = getattr(v, "g", None)
    return ReducedSystem(v22t, v33t, m[np.ix_(b2, b3)].copy(), fb.sizes, g)


def entropy_via_schur(v, p, log_base="e"):
    """Entropy of ``p`` computed on the Schur-reduced boundary system.

    The four-block refinement is read off the nonzero pattern of ``V``.
    """
    m = _as_matrix(v)
    p = as_bipartition(p, m.shape[0])
    coupled = (m != 0) & ~np.eye(m.shape[0], dtype=bool)
    fb = _four_blocks(coupled, p.part_a)
    length = min(len(p.part_a), len(p.part_b))
    m1, m2, n2, n1 = fb.sizes
    if m2 == 0:
        return _result(spectrum_from_d(np.zeros(length)), log_base, "schur")
    red = schur_reduce(m, fb)
    spec = schmidt_spectrum_direct(red.matrix, range(m2))
    d = np.zeros(length)
    d[: len(spec.d)] = spec.d
    return _result(spectrum_from_d(d), log_base, "schur")


def theorem1_d(m1: int, m2: int, n2: int, n1: int, g: float) -> float:
    """Single Schmidt coefficient when blocks 1-2, 2-3 and 3-4 are fully connected.

    Intra-block edges do not enter.
    """
    if m2 < 1 or n2 < 1 or m1 < 0 or n1 < 0:
        raise ValueError("need m2, n2 >= 1 and m1, n1 >= 0")
    g = float(g)
    left = 1 + 2 * g * (m1 + n2) - 4 * g**2 * m1 * m2 / (1 + 2 * g * m2)
    right = 1 + 2 * g * (m2 + n1) - 4 * g**2 * n1 * n2 / (1 + 2 * g * n2)
    return 2 * g * np.sqrt(m2 * n2) / (np.sqrt(left) * np.sqrt(right))


def corollary1_d(m: int, n: int, g: float) -> float:
    """Coefficient for a complete bipartite cut with no interior nodes."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be >= 1")
    g = float(g)
    return 2 * g * np.sqrt(m * n) / np.sqrt((1 + 2 * g * m) * (1 + 2 * g * n))


def is_complete_chain(graph: Graph, fb: FourBlockPartition) -> bool:
    """True when every node of each block links to every node of the next block."""
    adj = graph.adjacency
    blocks = [list(b) for b in fb.blocks]
    for x, y in zip(blocks[:-1], blocks[1:]):
        if x and y and not np.all(adj[np.ix_(x, y)] == 1):
            return False
    return fb.sizes[1] > 0 and fb.sizes[2] > 0

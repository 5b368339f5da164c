"""Analytic Schmidt coefficients for named graph families and large-coupling asymptotics.

Path chains
-----------
Eliminating a path of ``k`` nodes toward its end at the cut leaves the
effective diagonal entry ``C(k)``::

    C(1) = 1 + 2g,    C(k) = 1 + 4g - 4g^2 / C(k-1)

With ``x = 2 + 1/(2g)``, ``C(k) = 2g Q_k(x) / Q_{k-1}(x)`` where
``Q_0 = 1``, ``Q_1 = x - 1`` and ``Q_k = x Q_{k-1} - Q_{k-2}``.  Because of
the ``x - 1`` start, ``Q_k(x) = U_k(x/2) - U_{k-1}(x/2)`` (Chebyshev
polynomials of the second kind), not ``U_k(x/2)`` itself.  The plain
ratio ``U_{n-1}/U_n`` is kept as :func:`path_d_u_ratio` so the two can be
compared; it does not reproduce the chain.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import eval_chebyu

from .graphs import Graph, as_bipartition, four_block_of
from .reduction import EntropyResult, _result, entropy_from_d, spectrum_from_d
from .schur import is_complete_chain, theorem1_d

__all__ = [
    "ChebyshevEval",
    "chebyshev_q",
    "path_chain_value",
    "path_d",
    "path_d_polynomial",
    "path_d_u_ratio",
    "lollipop_v22",
    "lollipop_d",
    "star_partition_d",
    "large_coupling_entropy",
    "large_coupling_report",
    "closed_form_d",
    "closed_form_entropy",
]


@dataclass(frozen=True)
class ChebyshevEval:
    x: float
    q: np.ndarray


def chebyshev_q(x: float, n: int) -> ChebyshevEval:
    """``Q_0..Q_n`` by forward recurrence (stable for ``x >= 2``)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    q = np.empty(n + 1)
    q[0] = 1.0
    if n >= 1:
        q[1] = x - 1.0
    for k in range(2, n + 1):
        q[k] = x * q[k - 1] - q[k - 2]
    return ChebyshevEval(float(x), q)


def _check(n, g, minimum=1):
    if int(n) != n or n < minimum:
        raise ValueError(f"size must be an integer >= {minimum}, got {n}")
    if g <= 0:
        raise ValueError("g must be positive")


def path_chain_value(k: int, g: float) -> float:
    """``C(k)``: effective diagonal of a ``k``-node path eliminated toward the cut."""
    _check(k, g)
    c = 1.0 + 2.0 * g
    for _ in range(int(k) - 1):
        c = 1.0 + 4.0 * g - 4.0 * g * g / c
    return c


def path_d(n: int, g: float) -> float:
    """Schmidt coefficient of ``P_2n`` cut at the middle (continued fraction)."""
    _check(n, g)
    return 2.0 * g / path_chain_value(n, g)


def path_d_polynomial(n: int, g: float) -> float:
    """Same quantity as :func:`path_d` via ``Q_{n-1}/Q_n`` with ``Q_k = U_k - U_{k-1}``."""
    _check(n, g)
    t = 1.0 + 1.0 / (4.0 * g)

    def q(k):
        return eval_chebyu(k, t) - (eval_chebyu(k - 1, t) if k >= 1 else 0.0)

    return float(q(n - 1) / q(n))


def path_d_u_ratio(n: int, g: float) -> float:
    """``U_{n-1}(1 + 1/4g) / U_n(1 + 1/4g)``, the uncorrected Chebyshev ratio."""
    _check(n, g)
    t = 1.0 + 1.0 / (4.0 * g)
    return float(eval_chebyu(n - 1, t) / eval_chebyu(n, t))


def lollipop_v22(m: int, g: float) -> float:
    """Reduced boundary entry of the ``K_m`` side after eliminating its ``m-1`` interior nodes."""
    _check(m, g, minimum=2)
    den = (1 + 2 * m * g) * (1 + 2 * g)
    return (
        1
        + 2 * g * m
        - 4 * g**2 * (1 + 2 * g) * (m - 1) / den
        - 4 * g**2 * (2 * g) * (m - 1) ** 2 / den
    )


def lollipop_d(m: int, n: int, g: float) -> float:
    """Coefficient of lollipop ``(K_m, P_n)`` cut at its bridge.

    The path side reduces to ``C(n)``; for ``n = 1`` that is the bare ``1 + 2g``.
    """
    _check(n, g)
    return 2.0 * g / (np.sqrt(path_chain_value(n, g)) * np.sqrt(lollipop_v22(m, g)))


def star_partition_d(N: int, i: int, g: float) -> float:
    """``i`` leaves of ``S_N`` against the hub and the other ``N - i - 1`` leaves."""
    _check(N, g, minimum=3)
    if not 1 <= i <= N - 2:
        raise ValueError(f"need 1 <= i <= N-2, got i={i}, N={N}")
    return (
        2 * g * np.sqrt(i)
        / np.sqrt((1 + 2 * g) * (1 + 2 * g * (N - 1)) - 4 * g**2 * (N - i - 1))
    )


def _epsilon(m1, m2, n2, n1, g, variant):
    if variant == "sum":
        return (1 + n1 / n2) / (2 * g * m2) + (1 + m1 / m2) / (2 * g * n2)
    if variant == "collapsed":
        return (m1 + m2 + n2 + n1) / (4 * g * m2 * n2)
    raise ValueError(f"unknown variant {variant!r}")


def large_coupling_entropy(m1, m2, n2, n1, g, variant: str = "sum") -> float:
    """Large-``g`` estimate ``log(nu/2) + 1`` with ``nu = eps^-1/2`` (natural log).

    ``variant="sum"`` takes ``eps`` as the two-term expansion of the
    complete-chain coefficient, which simplifies to ``N / (2 g m2 n2)``;
    ``"collapsed"`` uses ``N / (4 g m2 n2)``, exactly half of it, and
    gives ``log(g m2 n2 / N) / 2 + 1``.
    """
    nu = 1.0 / np.sqrt(_epsilon(m1, m2, n2, n1, float(g), variant))
    return float(np.log(nu / 2.0) + 1.0)


def large_coupling_report(sizes, gs=(1e2, 1e3, 1e4)) -> list[dict]:
    """Exact entropy next to both large-coupling estimates, one row per ``g``."""
    rows = []
    for g in gs:
        exact = entropy_from_d(theorem1_d(*sizes, g))
        row = {"g": float(g), "exact": exact}
        for variant in ("sum", "collapsed"):
            est = large_coupling_entropy(*sizes, g, variant=variant)
            row[variant] = est
            row[f"{variant}_rel_error"] = abs(est - exact) / exact
        rows.append(row)
    return rows


def _side_value(adj: np.ndarray, boundary: int, side: list[int], g: float) -> float | None:
    """Closed-form reduced diagonal of one side of a single-edge cut, if recognizable."""
    k = len(side)
    sub = adj[np.ix_(side, side)]
    pos = side.index(boundary)
    deg = sub.sum(axis=1)
    # boundary node adjacent to every other node of its side
    if deg[pos] == k - 1:
        return 1 + 2 * g * k - 4 * g**2 * (k - 1) / (1 + 2 * g)
    # a path with the boundary node at one end
    if sub.sum() == 2 * (k - 1) and deg[pos] == 1 and np.all(deg <= 2):
        seen, prev, cur = 1, -1, pos
        while True:
            nxt = [j for j in np.nonzero(sub[cur])[0] if j != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            seen += 1
        if seen == k:
            return path_chain_value(k, g)
    return None


def closed_form_d(graph: Graph, part_a, g: float) -> float | None:
    """Closed-form Schmidt coefficient, or ``None`` if the cut is not covered.

    Covered cuts: no crossing edges (``0``); complete block chains (any
    intra-block edges); and single-edge cuts whose two sides are each a
    path ending at the cut or a hub joined to its whole side (complete
    graphs, stars, lollipops, star-path compounds, even paths at the middle).
    """
    p = as_bipartition(part_a, graph.n)
    fb = four_block_of(graph, p)
    m1, m2, n2, n1 = fb.sizes
    if m2 == 0:
        return 0.0
    if g == 0:
        return 0.0
    if is_complete_chain(graph, fb):
        return float(theorem1_d(m1, m2, n2, n1, g))
    if m2 == 1 and n2 == 1:
        adj = graph.adjacency
        left = _side_value(adj, fb.blocks[1][0], list(p.part_a), g)
        right = _side_value(adj, fb.blocks[2][0], list(p.part_b), g)
        if left is not None and right is not None:
            return float(2 * g / (np.sqrt(left) * np.sqrt(right)))
    return None


def closed_form_entropy(graph: Graph, part_a, g: float, log_base="e") -> EntropyResult | None:
    d = closed_form_d(graph, part_a, g)
    if d is None:
        return None
    p = as_bipartition(part_a, graph.n)
    spec = np.zeros(min(len(p.part_a), len(p.part_b)))
    spec[0] = d
    return _result(spectrum_from_d(spec), log_base, "closed_form")

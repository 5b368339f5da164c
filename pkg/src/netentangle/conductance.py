"""Graph conductance by exhaustive bipartition enumeration.

``alpha(G) = min |E(A, B)| / |A|`` over bipartitions with ``|A| <= N/2``.
Ratios are exact :class:`fractions.Fraction` values.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .graphs import Bipartition, Graph, potential_matrix
from .reduction import EntropyResult, entropy

__all__ = [
    "PartitionRecord",
    "ConductanceReport",
    "ENUMERATION_LIMIT",
    "enumerate_bipartitions",
    "conductance",
    "entropy_conductance_table",
]

ENUMERATION_LIMIT = 20


@dataclass(frozen=True)
class PartitionRecord:
    """One unordered bipartition; ``part_a`` is the smaller side."""

    part_a: tuple[int, ...]
    cut_edges: int
    ratio: Fraction
    entropy: EntropyResult | None = None

    @property
    def schmidt_rank(self) -> int | None:
        return None if self.entropy is None else self.entropy.spectrum.rank


@dataclass(frozen=True)
class ConductanceReport:
    n: int
    alpha: Fraction
    argmin: tuple[tuple[int, ...], ...]
    records: tuple[PartitionRecord, ...] = field(repr=False)

    def sorted_by(self, key: str = "ratio", descending: bool = False) -> list[PartitionRecord]:
        if key == "ratio":
            keyfn = lambda r: (r.ratio, len(r.part_a), r.part_a)
        elif key == "entropy":
            if any(r.entropy is None for r in self.records):
                raise ValueError("report has no entropy annotation")
            keyfn = lambda r: (r.entropy.total, len(r.part_a), r.part_a)
        elif key == "cut_edges":
            keyfn = lambda r: (r.cut_edges, len(r.part_a), r.part_a)
        else:
            raise ValueError(f"unknown sort key {key!r}")
        return sorted(self.records, key=keyfn, reverse=descending)

    def record(self, part_a) -> PartitionRecord:
        """Look up the record for a bipartition given either side."""
        wanted = set(part_a)
        other = set(range(self.n)) - wanted
        for r in self.records:
            if set(r.part_a) in (wanted, other):
                return r
        raise KeyError(tuple(sorted(wanted)))


def _canonical(mask: int, n: int) -> tuple[int, ...]:
    side = [i for i in range(n) if mask >> i & 1]
    other = [i for i in range(n) if not mask >> i & 1]
    if len(other) < len(side) or (len(other) == len(side) and other[0] < side[0]):
        side = other
    return tuple(side)


def enumerate_bipartitions(n: int, limit: int = ENUMERATION_LIMIT):
    """Each unordered proper bipartition once, as its canonical smaller side.

    Ordered by side size, then lexicographically.  ``2**(n-1) - 1`` items.
    """
    if n < 2:
        raise ValueError("need at least two nodes")
    if n > limit:
        raise ValueError(
            f"exhaustive enumeration refused for n={n} > {limit} "
            f"({2 ** (n - 1) - 1} partitions); sample partitions instead"
        )
    # masks over nodes 0..n-2; node n-1 always sits in the complement
    sides = [_canonical(mask, n) for mask in range(1, 2 ** (n - 1))]
    return sorted(sides, key=lambda s: (len(s), s))


def _cut_counts(graph: Graph, sides) -> np.ndarray:
    member = np.zeros((len(sides), graph.n), dtype=bool)
    for row, side in enumerate(sides):
        member[row, list(side)] = True
    if not graph.edges:
        return np.zeros(len(sides), dtype=int)
    i, j = np.array(sorted(graph.edges)).T
    return (member[:, i] ^ member[:, j]).sum(axis=1)


def conductance(graph: Graph, limit: int = ENUMERATION_LIMIT) -> ConductanceReport:
    sides = enumerate_bipartitions(graph.n, limit)
    cuts = _cut_counts(graph, sides)
    records = tuple(
        PartitionRecord(side, int(c), Fraction(int(c), len(side)))
        for side, c in zip(sides, cuts)
    )
    alpha = min(r.ratio for r in records)
    argmin = tuple(r.part_a for r in records if r.ratio == alpha)
    return ConductanceReport(graph.n, alpha, argmin, records)


def entropy_conductance_table(
    graph: Graph, g: float, log_base="e", limit: int = ENUMERATION_LIMIT
) -> ConductanceReport:
    """Conductance report with every record annotated by its entanglement entropy."""
    report = conductance(graph, limit)
    v = potential_matrix(graph, g)
    records = tuple(
        replace(r, entropy=entropy(v, Bipartition(graph.n, r.part_a), log_base))
        for r in report.records
    )
    return replace(report, records=records)

"""Maximum-weight matching and the two solvers for coalitions of size at most 2.

Each agent ``i`` gets two vertices, ``v_i = i`` and ``u_i = n + i``.  The
edge ``(v_i, u_i)`` stands for the singleton ``{i}`` and ``(v_i, v_j)`` for
the pair ``{i, j}``, so every matching of the graph is a set of disjoint
coalitions, and agents left unmatched stay alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import networkx as nx

from .errors import InstanceError, SizeBoundError
from .model import Instance, Partition

Matching = frozenset  # frozenset of edge indices


@dataclass(frozen=True)
class WeightedGraph:
    vertex_count: int
    edges: tuple[tuple[int, int, Fraction], ...]

    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int, Fraction]]):
        edges = tuple((u, v, Fraction(w)) for u, v, w in edges)
        seen = set()
        for u, v, w in edges:
            if u == v:
                raise InstanceError(f"self-loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise InstanceError(f"edge ({u}, {v}) out of range [0, {vertex_count})")
            if w < 0:
                raise InstanceError(f"negative weight {w} on edge ({u}, {v})")
            pair = frozenset((u, v))
            if pair in seen:
                raise InstanceError(f"duplicate edge ({u}, {v})")
            seen.add(pair)
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "edges", edges)

    def is_matching(self, m: Iterable[int]) -> bool:
        used = set()
        for k in m:
            u, v, _ = self.edges[k]
            if u in used or v in used:
                return False
            used |= {u, v}
        return True

    def weight(self, m: Iterable[int]) -> Fraction:
        return sum((self.edges[k][2] for k in m), Fraction(0))


def max_weight_matching(g: WeightedGraph) -> Matching:
    """A maximum-weight matching of ``g`` as a set of edge indices.

    Weights are scaled to integers, so the blossom algorithm runs in exact
    arithmetic.  Ties between maximum-weight matchings are broken towards
    lower edge indices: edge ``k`` gets a bonus of ``2**(m-1-k)``, and the
    real weights are multiplied by ``2**m`` so no bonus total can outweigh
    a genuine weight difference.  Because every bonus is positive the result
    is also a maximal matching.
    """
    m = len(g.edges)
    if m == 0:
        return frozenset()
    scale = math.lcm(*(w.denominator for _, _, w in g.edges))
    shift = 1 << m
    nxg = nx.Graph()
    index = {}
    for k, (u, v, w) in enumerate(g.edges):
        exact = w.numerator * (scale // w.denominator)
        nxg.add_edge(u, v, weight=exact * shift + (1 << (m - 1 - k)))
        index[frozenset((u, v))] = k
    mate = nx.max_weight_matching(nxg, maxcardinality=False)
    return frozenset(index[frozenset(pair)] for pair in mate)


def _require_pairs(inst: Instance) -> None:
    if inst.max_coalition_size > 2:
        big = next(c for c in inst.ircl if len(c) > 2)
        raise SizeBoundError(
            f"coalition {sorted(big)} has size {len(big)}; this algorithm needs sizes <= 2"
        )


def _to_coalitions(n: int, g: WeightedGraph, m: Matching) -> list[frozenset]:
    out = []
    for k in sorted(m):
        a, b, _ = g.edges[k]
        out.append(frozenset((a,)) if b == a + n else frozenset((a, b)))
    return out


def opt_graph(inst: Instance) -> WeightedGraph:
    """Edge weights are coalition welfare: U({i}) for singletons, 2U({i,j}) for pairs."""
    _require_pairs(inst)
    n = inst.n
    edges = []
    for c, u in inst.ircl.items():
        members = sorted(c)
        if len(members) == 1:
            edges.append((members[0], members[0] + n, u))
        else:
            edges.append((members[0], members[1], 2 * u))
    return WeightedGraph(2 * n, edges)


def match2_opt(inst: Instance) -> Partition:
    """A socially optimal partition when no listed coalition exceeds two agents."""
    g = opt_graph(inst)
    return matching_partition(inst.n, g, max_weight_matching(g))


@dataclass(frozen=True)
class Layer:
    beta: Fraction
    coalitions: tuple[frozenset, ...]
    matching_weight: Fraction


def match2_pcis_layers(inst: Instance) -> list[Layer]:
    """Peel off, layer by layer, as many agents as possible at the top utility.

    Within the remaining agents, only coalitions achieving the current maximum
    joint utility become edges, weighted by their size; a maximum matching
    then places the most agents at that utility.
    """
    _require_pairs(inst)
    n = inst.n
    remaining = set(range(n))
    layers = []
    while remaining:
        alive = {c: u for c, u in inst.ircl.items() if c <= remaining}
        beta = max(alive.values())
        edges = []
        for c, u in alive.items():
            if u != beta:
                continue
            members = sorted(c)
            if len(members) == 1:
                edges.append((members[0], members[0] + n, 1))
            else:
                edges.append((members[0], members[1], 2))
        g = WeightedGraph(2 * n, edges)
        m = max_weight_matching(g)
        formed = _to_coalitions(n, g, m)
        layers.append(Layer(beta, tuple(formed), g.weight(m)))
        for c in formed:
            remaining -= c
    return layers


def match2_pcis(inst: Instance) -> Partition:
    """A Pareto optimal, core stable and individually stable partition for sizes <= 2."""
    return Partition(c for layer in match2_pcis_layers(inst) for c in layer.coalitions)


def matching_partition(n: int, g: WeightedGraph, m: Sequence[int]) -> Partition:
    """Read a matching of an agent graph back as a partition (unmatched agents alone)."""
    chosen = _to_coalitions(n, g, frozenset(m))
    placed = set().union(*chosen)
    return Partition(chosen + [frozenset((i,)) for i in range(n) if i not in placed])

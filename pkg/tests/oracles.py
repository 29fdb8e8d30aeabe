"""Brute-force reference implementations used to check the package.

Nothing here imports hgcrp's search code: partitions come from restricted
growth strings, matchings from plain recursion over edges, independent sets
and exact covers from subset enumeration.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations


def restricted_growth_strings(n):
    """All sequences a with a[0] = 0 and a[k] <= 1 + max(a[:k])."""
    if n == 0:
        yield ()
        return
    a = [0] * n

    def rec(k, top):
        if k == n:
            yield tuple(a)
            return
        for b in range(top + 2):
            a[k] = b
            yield from rec(k + 1, max(top, b))

    yield from rec(1, 0)


def bell_partitions(n):
    """Every set partition of range(n), as a list of frozensets."""
    for rgs in restricted_growth_strings(n):
        blocks = {}
        for agent, b in enumerate(rgs):
            blocks.setdefault(b, set()).add(agent)
        yield [frozenset(s) for s in blocks.values()]


def bell(n):
    return sum(1 for _ in restricted_growth_strings(n))


def agent_utils(table, blocks, n):
    u = [None] * n
    for s in blocks:
        for i in s:
            u[i] = table[s]
    return u


def psi_of(table, blocks, n):
    return tuple(sorted(agent_utils(table, blocks, n), reverse=True))


def welfare_of(table, blocks, n):
    return sum(agent_utils(table, blocks, n), Fraction(0))


def listed_partitions(table, n):
    """Bell partitions whose every block appears in ``table``."""
    return [p for p in bell_partitions(n) if all(s in table for s in p)]


def all_matchings(edges):
    """Every matching as a tuple of edge indices, by include/exclude recursion."""
    out = []

    def rec(k, used, chosen):
        if k == len(edges):
            out.append(tuple(chosen))
            return
        rec(k + 1, used, chosen)
        u, v = edges[k][0], edges[k][1]
        if u not in used and v not in used:
            chosen.append(k)
            rec(k + 1, used | {u, v}, chosen)
            chosen.pop()

    rec(0, frozenset(), [])
    return out


def max_matching_weight(edges):
    return max(sum((Fraction(edges[k][2]) for k in m), Fraction(0)) for m in all_matchings(edges))


def max_matching_weight_dp(vertex_count, edges):
    """Same value by dynamic programming over vertex subsets: the lowest
    vertex left either stays unmatched or pairs with a neighbour."""
    best_edge = {}
    for u, v, w in edges:
        key = (min(u, v), max(u, v))
        best_edge[key] = max(best_edge.get(key, Fraction(w)), Fraction(w))
    memo = {0: Fraction(0)}

    def f(mask):
        if mask in memo:
            return memo[mask]
        low = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << low)
        value = f(rest)
        for (a, b), w in best_edge.items():
            if a == low and rest >> b & 1:
                value = max(value, w + f(rest & ~(1 << b)))
        memo[mask] = value
        return value

    return f((1 << vertex_count) - 1)


def max_independent_set_size(vertices, edges):
    vertices = list(vertices)
    adj = {frozenset(e) for e in edges}
    for size in range(len(vertices), -1, -1):
        for cand in combinations(vertices, size):
            if all(frozenset((a, b)) not in adj for a, b in combinations(cand, 2)):
                return size
    return 0


def is_independent(vertices, edges):
    adj = {frozenset(e) for e in edges}
    return all(frozenset((a, b)) not in adj for a, b in combinations(vertices, 2))


def exact_cover_exists(universe_size, subsets):
    target = frozenset(range(universe_size))
    subsets = list(subsets)
    for size in range(len(subsets) + 1):
        for pick in combinations(subsets, size):
            if sum(len(s) for s in pick) == universe_size and frozenset().union(*pick) == target:
                return True
    return False


def blocks_by_definition(table, blocks, n):
    """Core stability straight from the definition, over every listed subset."""
    u = agent_utils(table, blocks, n)
    return any(all(v > u[i] for i in s) for s, v in table.items())

"""Greedy construction of a core stable and individually stable partition.

Repeatedly form the remaining listed coalition with the highest joint
utility, preferring larger coalitions among equals, and discard every listed
coalition that meets it.  Its welfare is within a factor n of the optimum.
"""

from __future__ import annotations

from .model import Instance, Partition


def greedy_order(inst: Instance) -> list[frozenset]:
    """Listed coalitions by utility desc, size desc, then sorted members."""
    return sorted(inst.ircl, key=lambda c: (-inst.ircl[c], -len(c), sorted(c)))


def greedy_solve(inst: Instance) -> Partition:
    placed: set[int] = set()
    chosen = []
    for c in greedy_order(inst):
        # coalitions meeting an earlier pick are skipped rather than deleted
        if placed.isdisjoint(c):
            chosen.append(c)
            placed |= c
            if len(placed) == inst.n:
                break
    return Partition(chosen)

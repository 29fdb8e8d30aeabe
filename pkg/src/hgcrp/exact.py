"""Exhaustive solvers over the space of partitions into listed coalitions.

These are desk-scale ground-truth oracles: the lexicographic psi maximizer
(always Pareto optimal, core stable and individually stable), the
welfare maximizer and a perfect-partition search.

Enumeration is a cover search: take the lowest unplaced agent and branch over
the listed coalitions whose lowest member it is and that avoid placed agents.
Every partition is produced exactly once.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .errors import BudgetExceeded
from .model import Instance, Partition

BUDGET_ENV = "HGCRP_BUDGET_AGENTS"


@dataclass(frozen=True)
class EnumerationBudget:
    max_agents: int = 10
    max_partitions: int = 10**7

    def __post_init__(self):
        if self.max_agents < 1 or self.max_partitions < 1:
            raise ValueError("enumeration budget limits must be positive")

    @classmethod
    def from_env(cls, **overrides) -> EnumerationBudget:
        env = os.environ.get(BUDGET_ENV)
        if env and "max_agents" not in overrides:
            overrides["max_agents"] = int(env)
        return cls(**overrides)


DEFAULT_BUDGET = EnumerationBudget()


class MaskTable:
    """Bitmask view of an instance with utilities scaled to common integers.

    ``value[m]`` is the joint utility of coalition ``m`` times ``scale``, so
    comparisons and sums are exact integer operations.
    """

    def __init__(self, inst: Instance):
        self.inst = inst
        self.n = inst.n
        self.full = (1 << inst.n) - 1
        self.scale = math.lcm(*(u.denominator for u in inst.ircl.values()))
        self.value: dict[int, int] = {}
        self.size: dict[int, int] = {}
        self.by_low: list[list[int]] = [[] for _ in range(inst.n)]
        self.masks: list[int] = []
        for c, u in inst.ircl.items():
            m = to_mask(c)
            self.value[m] = u.numerator * (self.scale // u.denominator)
            self.size[m] = len(c)
            self.by_low[min(c)].append(m)
            self.masks.append(m)
        # canonical branching order: sorted member tuples
        for bucket in self.by_low:
            bucket.sort(key=mask_members)

    def to_fraction(self, v: int) -> Fraction:
        return Fraction(v, self.scale)

    def agent_values(self, cover: Sequence[int]) -> list[int]:
        out = [0] * self.n
        for m in cover:
            v = self.value[m]
            for i in mask_members(m):
                out[i] = v
        return out

    def psi_key(self, cover: Sequence[int]) -> tuple[int, ...]:
        vals = []
        for m in cover:
            vals.extend([self.value[m]] * self.size[m])
        vals.sort(reverse=True)
        return tuple(vals)

    def welfare(self, cover: Sequence[int]) -> int:
        return sum(self.value[m] * self.size[m] for m in cover)

    def partition(self, cover: Sequence[int]) -> Partition:
        return Partition(mask_members(m) for m in cover)

    def covers(
        self,
        budget: EnumerationBudget = DEFAULT_BUDGET,
        allowed: Callable[[int], bool] | None = None,
    ) -> Iterator[tuple[int, ...]]:
        """Yield every partition (as a tuple of masks) built from allowed coalitions."""
        check_budget(self.inst, budget)
        by_low = self.by_low
        if allowed is not None:
            by_low = [[m for m in bucket if allowed(m)] for bucket in by_low]
        full = self.full
        chosen: list[int] = []
        count = 0

        def rec(placed: int) -> Iterator[tuple[int, ...]]:
            nonlocal count
            if placed == full:
                count += 1
                if count > budget.max_partitions:
                    raise BudgetExceeded(
                        f"more than {budget.max_partitions} partitions to enumerate"
                    )
                yield tuple(chosen)
                return
            low = (~placed & (placed + 1)).bit_length() - 1
            for m in by_low[low]:
                if m & placed:
                    continue
                chosen.append(m)
                yield from rec(placed | m)
                chosen.pop()

        return rec(0)


def to_mask(members) -> int:
    m = 0
    for i in members:
        m |= 1 << i
    return m


def mask_members(m: int) -> tuple[int, ...]:
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return tuple(out)


def check_budget(inst: Instance, budget: EnumerationBudget) -> None:
    if inst.n > budget.max_agents:
        raise BudgetExceeded(
            f"{inst.n} agents exceeds the enumeration budget of {budget.max_agents}"
        )


def enumerate_ir_partitions(
    inst: Instance, budget: EnumerationBudget = DEFAULT_BUDGET
) -> Iterator[Partition]:
    table = MaskTable(inst)
    for cover in table.covers(budget):
        yield table.partition(cover)


def _argmax(table: MaskTable, covers, score) -> tuple[int, ...]:
    best = best_score = None
    best_key = None
    for cover in covers:
        s = score(cover)
        if best is None or s > best_score:
            best, best_score, best_key = cover, s, None
        elif s == best_score:
            # tie: keep the canonically smallest partition
            if best_key is None:
                best_key = table.partition(best).key()
            key = table.partition(cover).key()
            if key < best_key:
                best, best_key = cover, key
    assert best is not None  # singletons always give at least one partition
    return best


def psi_max_partition(inst: Instance, budget: EnumerationBudget = DEFAULT_BUDGET) -> Partition:
    """A partition whose sorted utility vector is lexicographically maximum."""
    table = MaskTable(inst)
    return table.partition(_argmax(table, table.covers(budget), table.psi_key))


def socially_optimal(inst: Instance, budget: EnumerationBudget = DEFAULT_BUDGET) -> Partition:
    """A welfare-maximizing partition (canonically smallest among ties)."""
    table = MaskTable(inst)
    return table.partition(_argmax(table, table.covers(budget), table.welfare))


def perfect_partition(
    inst: Instance, budget: EnumerationBudget = DEFAULT_BUDGET
) -> Partition | None:
    """A partition placing every agent in one of her best listed coalitions, if any.

    Only coalitions that are simultaneously best for all their members can
    appear, so the search is an exact cover over those.
    """
    table = MaskTable(inst)
    best = [table.value[1 << i] for i in range(inst.n)]
    for m in table.masks:
        for i in mask_members(m):
            best[i] = max(best[i], table.value[m])

    def everyones_best(m: int) -> bool:
        v = table.value[m]
        return all(best[i] == v for i in mask_members(m))

    for cover in table.covers(budget, allowed=everyones_best):
        return table.partition(cover)
    return None

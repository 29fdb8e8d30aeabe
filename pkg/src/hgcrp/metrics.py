"""Price of anarchy and price of stability over core stable partitions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import Unbounded
from .exact import DEFAULT_BUDGET, EnumerationBudget, MaskTable
from .model import Instance, Partition


def _blocking_sweep(table: MaskTable):
    """Return a test ``cover -> bool`` for core stability.

    Coalitions are visited by decreasing value; ``below`` holds the agents
    whose utility is strictly less than the current value, and a coalition
    blocks when it lies entirely inside ``below``.
    """
    coalitions = sorted(table.masks, key=table.value.__getitem__, reverse=True)
    values = [table.value[m] for m in coalitions]
    n = table.n

    def core_stable(cover) -> bool:
        vals = table.agent_values(cover)
        ranked = sorted(range(n), key=vals.__getitem__, reverse=True)
        below = table.full
        p = 0
        for m, v in zip(coalitions, values):
            while p < n and vals[ranked[p]] >= v:
                below &= ~(1 << ranked[p])
                p += 1
            if not below:
                return True
            if m & below == m:
                return False
        return True

    return core_stable


def _core_stable_covers(table: MaskTable, budget: EnumerationBudget) -> Iterator[tuple[int, ...]]:
    stable = _blocking_sweep(table)
    return (cover for cover in table.covers(budget) if stable(cover))


def enumerate_core_stable(
    inst: Instance, budget: EnumerationBudget = DEFAULT_BUDGET
) -> list[Partition]:
    table = MaskTable(inst)
    return [table.partition(c) for c in _core_stable_covers(table, budget)]


@dataclass(frozen=True)
class WelfareSummary:
    optimum: Fraction
    worst_stable: Fraction
    best_stable: Fraction
    core_count: int

    @property
    def price_of_anarchy(self) -> Fraction:
        return _ratio(self.optimum, self.worst_stable)

    @property
    def price_of_stability(self) -> Fraction:
        return _ratio(self.optimum, self.best_stable)


def _ratio(num: Fraction, den: Fraction) -> Fraction:
    if den == 0:
        raise Unbounded("core stable welfare is zero; the ratio is unbounded")
    return num / den


def welfare_summary(inst: Instance, budget: EnumerationBudget = DEFAULT_BUDGET) -> WelfareSummary:
    """One enumeration pass collecting optimum and extreme core stable welfare."""
    table = MaskTable(inst)
    stable = _blocking_sweep(table)
    opt = None
    lo = hi = None
    count = 0
    for cover in table.covers(budget):
        w = table.welfare(cover)
        if opt is None or w > opt:
            opt = w
        if stable(cover):
            count += 1
            lo = w if lo is None else min(lo, w)
            hi = w if hi is None else max(hi, w)
    # the greedy partition is always core stable, so lo/hi are set
    assert lo is not None and opt is not None
    f = table.to_fraction
    return WelfareSummary(f(opt), f(lo), f(hi), count)


def price_of_anarchy(inst: Instance, budget: EnumerationBudget = DEFAULT_BUDGET) -> Fraction:
    """Optimal welfare over the worst core stable welfare."""
    return welfare_summary(inst, budget).price_of_anarchy


def price_of_stability(inst: Instance, budget: EnumerationBudget = DEFAULT_BUDGET) -> Fraction:
    """Optimal welfare over the best core stable welfare."""
    return welfare_summary(inst, budget).price_of_stability

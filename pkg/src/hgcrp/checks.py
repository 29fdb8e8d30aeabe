"""Stability and efficiency predicates, each producing a witness on failure.

Witnesses are chosen deterministically: coalitions by (size, members), moves
by (agent, target) with the empty target first and existing coalitions in
canonical order.  A move that would create an unlisted coalition, either at
the destination or left behind, is not a feasible move.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Union

from .errors import InstanceError, format_members
from .exact import DEFAULT_BUDGET, EnumerationBudget, MaskTable, mask_members, to_mask
from .model import Coalition, Instance, Partition, coalition_key, utilities

EMPTY: Coalition = frozenset()

PROPERTIES = ("core", "is", "nash", "pareto", "perfect")

Move = tuple[int, Coalition]


@dataclass(frozen=True)
class Deviation:
    """Why a partition fails a property.

    ``kind`` is one of ``blocking-coalition`` (witness: Coalition),
    ``individual-move`` / ``nash-move`` (witness: (agent, target)),
    ``pareto-dominator`` (witness: Partition) or ``imperfect-agent``
    (witness: (agent, a strictly better listed coalition)).
    """

    kind: str
    witness: Union[Coalition, Move, Partition]

    def describe(self) -> str:
        w = self.witness
        if isinstance(w, Partition):
            return f"{self.kind} {w!r}"
        if isinstance(w, tuple):
            agent, target = w
            return f"{self.kind} agent {agent} -> {format_members(target)}"
        return f"{self.kind} {format_members(w)}"


def find_blocking_coalition(inst: Instance, pi: Partition) -> Coalition | None:
    """A listed coalition whose every member strictly prefers it, or None.

    Scanning listed coalitions suffices: an unlisted blocking coalition has a
    member whose singleton is worth more than it, and that singleton blocks too.
    """
    u = utilities(inst, pi)
    for c, v in inst.ircl.items():
        if all(v > u[i] for i in c):
            return c
    return None


def _moves(inst: Instance, pi: Partition) -> Iterator[tuple[int, Coalition, Fraction, Fraction]]:
    """Feasible single-agent moves as (agent, target, new utility, target's old utility)."""
    targets = sorted(pi, key=coalition_key)
    for i in range(inst.n):
        home = pi.of(i)
        current = inst.utility(home)
        left_behind = home - {i}
        if left_behind and left_behind not in inst.ircl:
            continue
        if left_behind:
            yield i, EMPTY, inst.utility((i,)), current
        for t in targets:
            if t == home:
                continue
            joined = t | {i}
            if joined in inst.ircl:
                yield i, t, inst.ircl[joined], inst.ircl[t]


def find_is_deviation(inst: Instance, pi: Partition) -> Move | None:
    """A move that helps the mover without hurting the members she joins."""
    for i, target, new, old_target in _moves(inst, pi):
        if new > inst.utility(pi.of(i)) and (not target or new >= old_target):
            return i, target
    return None


def find_nash_deviation(inst: Instance, pi: Partition) -> Move | None:
    """A move that helps the mover, regardless of the members she joins."""
    for i, target, new, _ in _moves(inst, pi):
        if new > inst.utility(pi.of(i)):
            return i, target
    return None


def apply_move(inst: Instance, pi: Partition, agent: int, target: Iterable[int]) -> Partition:
    """The partition after ``agent`` leaves her coalition and joins ``target``."""
    target = frozenset(target)
    home = pi.of(agent)
    if agent in target:
        raise InstanceError(f"agent {agent} is already in {format_members(target)}")
    if target and target not in pi:
        raise InstanceError(f"{format_members(target)} is not a coalition of the partition")
    out = [c for c in pi if c is not home and c != target]
    if len(home) > 1:
        out.append(home - {agent})
    out.append(target | {agent})
    return inst.validate_partition(Partition(out))


def is_perfect(inst: Instance, pi: Partition) -> bool:
    return _imperfect_agent(inst, pi) is None


def _imperfect_agent(inst: Instance, pi: Partition) -> Move | None:
    u = utilities(inst, pi)
    for i in range(inst.n):
        if u[i] < inst.best_utility(i):
            better = next(c for c, v in inst.ircl.items() if i in c and v == inst.best_utility(i))
            return i, better
    return None


def pareto_dominates(inst: Instance, a: Partition, b: Partition) -> bool:
    ua, ub = utilities(inst, a), utilities(inst, b)
    return all(x >= y for x, y in zip(ua, ub)) and any(x > y for x, y in zip(ua, ub))


def find_pareto_dominator(
    inst: Instance, pi: Partition, budget: EnumerationBudget = DEFAULT_BUDGET
) -> Partition | None:
    """Exhaustively search for a partition that Pareto dominates ``pi``.

    Only coalitions worth at least every member's current utility can appear
    in a dominator, so the cover search is restricted to those.
    """
    table = MaskTable(inst)
    base = table.agent_values([to_mask(c) for c in pi])

    def no_one_worse(m: int) -> bool:
        v = table.value[m]
        return all(v >= base[i] for i in mask_members(m))

    for cover in table.covers(budget, allowed=no_one_worse):
        if table.agent_values(cover) != base:
            return table.partition(cover)
    return None


def _wrap(kind: str, witness) -> Deviation | None:
    return None if witness is None else Deviation(kind, witness)


def check_properties(
    inst: Instance,
    pi: Partition,
    props: Iterable[str] = PROPERTIES,
    budget: EnumerationBudget = DEFAULT_BUDGET,
) -> dict[str, Deviation | None]:
    """Evaluate the named properties; ``None`` means the property holds."""
    inst.validate_partition(pi)
    out: dict[str, Deviation | None] = {}
    for prop in props:
        if prop == "core":
            w = find_blocking_coalition(inst, pi)
            out[prop] = _wrap("blocking-coalition", w)
        elif prop == "is":
            w = find_is_deviation(inst, pi)
            out[prop] = _wrap("individual-move", w)
        elif prop == "nash":
            w = find_nash_deviation(inst, pi)
            out[prop] = _wrap("nash-move", w)
        elif prop == "pareto":
            w = find_pareto_dominator(inst, pi, budget)
            out[prop] = _wrap("pareto-dominator", w)
        elif prop == "perfect":
            w = _imperfect_agent(inst, pi)
            out[prop] = _wrap("imperfect-agent", w)
        else:
            raise ValueError(f"unknown property {prop!r}; expected one of {', '.join(PROPERTIES)}")
    return out

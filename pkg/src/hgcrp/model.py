"""Core types: exact utilities, coalitions, instances, partitions and the psi potential.

An instance is stored as an individually rational coalition list (IRCL): the
joint utility of every listed coalition, with all singletons present and every
larger coalition worth at least each member's singleton utility.  Partitions
are only ever formed from listed coalitions.

Agents are numbered ``0 .. n-1``.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, TextIO, Union

from .errors import (
    InstanceError,
    ParseError,
    RationalOverflow,
    ResidualNotListed,
    format_members,
)

Utility = Fraction
Coalition = frozenset  # frozenset[int]
PsiVector = tuple  # tuple[Fraction, ...], non-increasing

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

FORMAT_HEADER = "hgcrp 1"
ALLOW_NON_IR = "allow-non-ir"


def coalition(members: Iterable[int]) -> Coalition:
    c = frozenset(members)
    if not c:
        raise InstanceError("coalitions must be non-empty")
    return c


def coalition_key(c: Coalition) -> tuple[int, tuple[int, ...]]:
    """Canonical order: by size, then lexicographically by sorted members."""
    return (len(c), tuple(sorted(c)))


def check_utility(u: Fraction) -> Fraction:
    u = Fraction(u)
    if not (INT64_MIN <= u.numerator <= INT64_MAX) or u.denominator > INT64_MAX:
        raise RationalOverflow(f"utility {u} does not fit in 64-bit numerator/denominator")
    return u


def format_utility(u: Fraction) -> str:
    return str(u.numerator) if u.denominator == 1 else f"{u.numerator}/{u.denominator}"


@dataclass(frozen=True)
class Instance:
    """An HGCRP instance in IRCL form.

    ``allow_non_ir`` exempts listed coalitions from the individual rationality
    check.  It exists for constructions (such as the price-of-stability family)
    whose whole point is a feasible coalition some member would rather leave.
    """

    n: int
    ircl: Mapping[Coalition, Fraction]
    allow_non_ir: bool = False
    _best: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InstanceError(f"agent count must be a positive integer, got {self.n!r}")
        table: dict[Coalition, Fraction] = {}
        for c, u in self.ircl.items():
            c = coalition(c)
            for i in c:
                if not isinstance(i, int) or not 0 <= i < self.n:
                    raise InstanceError(f"agent {i!r} out of range [0, {self.n})")
            u = check_utility(u)
            if u < 0:
                raise InstanceError(f"negative utility {u} for {format_members(c)}")
            if c in table:
                raise InstanceError(f"duplicate coalition {format_members(c)}")
            table[c] = u
        for i in range(self.n):
            if frozenset((i,)) not in table:
                raise InstanceError(f"missing singleton {{{i}}}")
        if not self.allow_non_ir:
            for c, u in table.items():
                for i in c:
                    if u < table[frozenset((i,))]:
                        raise InstanceError(
                            f"coalition {format_members(c)} with utility {u} is not "
                            f"individually rational for agent {i}"
                        )
        ordered = {c: table[c] for c in sorted(table, key=coalition_key)}
        object.__setattr__(self, "ircl", ordered)
        best = [Fraction(0)] * self.n
        for c, u in ordered.items():
            for i in c:
                best[i] = max(best[i], u)
        object.__setattr__(self, "_best", tuple(best))

    def __hash__(self):
        return hash((self.n, tuple(self.ircl.items()), self.allow_non_ir))

    def __contains__(self, c) -> bool:
        return frozenset(c) in self.ircl

    def utility(self, c: Iterable[int]) -> Fraction:
        try:
            return self.ircl[frozenset(c)]
        except KeyError:
            raise InstanceError(f"coalition {format_members(c)} is not listed") from None

    def coalitions(self) -> list[Coalition]:
        """Listed coalitions in canonical order."""
        return list(self.ircl)

    def best_utility(self, i: int) -> Fraction:
        """Highest joint utility over listed coalitions containing agent ``i``."""
        return self._best[i]

    @property
    def max_coalition_size(self) -> int:
        return max(len(c) for c in self.ircl)

    def validate_partition(self, pi: Partition) -> Partition:
        covered = set()
        for c in pi:
            if c not in self.ircl:
                raise InstanceError(f"partition uses unlisted coalition {format_members(c)}")
            covered |= c
        if covered != set(range(self.n)):
            missing = sorted(set(range(self.n)) - covered)
            raise InstanceError(f"partition does not cover agents {missing}")
        return pi


class Partition:
    """A set of pairwise disjoint, non-empty coalitions.

    Coverage of ``0 .. n-1`` and membership in an instance's IRCL are checked
    by :meth:`Instance.validate_partition`, since a partition alone does not
    know its instance.
    """

    __slots__ = ("coalitions", "_owner")

    def __init__(self, coalitions: Iterable[Iterable[int]]):
        cs = [coalition(c) for c in coalitions]
        owner: dict[int, Coalition] = {}
        for c in cs:
            for i in c:
                if i in owner:
                    raise InstanceError(f"agent {i} appears in more than one coalition")
                owner[i] = c
        self.coalitions: tuple[Coalition, ...] = tuple(sorted(cs, key=lambda c: sorted(c)))
        self._owner = owner

    @classmethod
    def singletons(cls, n: int) -> Partition:
        return cls([i] for i in range(n))

    def of(self, i: int) -> Coalition:
        """The coalition containing agent ``i``."""
        try:
            return self._owner[i]
        except KeyError:
            raise InstanceError(f"agent {i} is not covered by the partition") from None

    def key(self) -> tuple[tuple[int, ...], ...]:
        """Canonical sort key: the sorted list of sorted member tuples."""
        return tuple(tuple(sorted(c)) for c in self.coalitions)

    def __iter__(self) -> Iterator[Coalition]:
        return iter(self.coalitions)

    def __len__(self) -> int:
        return len(self.coalitions)

    def __contains__(self, c) -> bool:
        return frozenset(c) in self.coalitions

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return set(self.coalitions) == set(other.coalitions)

    def __hash__(self) -> int:
        return hash(frozenset(self.coalitions))

    def __repr__(self) -> str:
        return "{" + ",".join(format_members(c) for c in self.coalitions) + "}"


# -- parsing and serialization ---------------------------------------------------

Source = Union[str, TextIO]


def _lines(text: Source) -> Iterator[tuple[int, str]]:
    stream = io.StringIO(text) if isinstance(text, str) else text
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def parse_members(token: str, lineno: int | None = None) -> Coalition:
    try:
        members = [int(t) for t in token.split(",")]
    except ValueError:
        raise ParseError(f"bad member list {token!r}", lineno) from None
    if any(i < 0 for i in members):
        raise ParseError(f"negative agent index in {token!r}", lineno)
    if any(a >= b for a, b in zip(members, members[1:])):
        raise ParseError(f"members must be strictly ascending: {token!r}", lineno)
    return frozenset(members)


def parse_utility(token: str, lineno: int | None = None) -> Fraction:
    num, sep, den = token.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ParseError(f"bad utility {token!r}", lineno) from None
    if q <= 0:
        raise ParseError(f"denominator must be positive in {token!r}", lineno)
    for part in (p, q):
        if not INT64_MIN <= part <= INT64_MAX:
            raise RationalOverflow(f"line {lineno}: utility {token} overflows 64 bits")
    return Fraction(p, q)


def parse_instance(text: Source) -> Instance:
    lines = _lines(text)
    lineno, line = next(lines, (1, ""))
    if line != FORMAT_HEADER:
        raise ParseError(f"expected header {FORMAT_HEADER!r}, got {line!r}", lineno)
    lineno, line = next(lines, (lineno + 1, ""))
    words = line.split()
    if len(words) != 2 or words[0] != "agents":
        raise ParseError("expected 'agents <n>'", lineno)
    try:
        n = int(words[1])
    except ValueError:
        raise ParseError(f"bad agent count {words[1]!r}", lineno) from None
    if n < 1:
        raise ParseError("agent count must be positive", lineno)

    allow_non_ir = False
    table: dict[Coalition, Fraction] = {}
    for lineno, line in lines:
        if line == ALLOW_NON_IR:
            if table:
                raise ParseError(f"{ALLOW_NON_IR} must precede coalition lines", lineno)
            allow_non_ir = True
            continue
        words = line.split()
        if len(words) != 2:
            raise ParseError("expected '<members> <utility>'", lineno)
        c = parse_members(words[0], lineno)
        u = parse_utility(words[1], lineno)
        if any(i >= n for i in c):
            raise ParseError(f"agent index >= {n} in {words[0]}", lineno)
        if u < 0:
            raise ParseError(f"negative utility {words[1]}", lineno)
        if c in table:
            raise ParseError(f"duplicate coalition {words[0]}", lineno)
        table[c] = u
    try:
        return Instance(n, table, allow_non_ir=allow_non_ir)
    except InstanceError as exc:
        raise ParseError(str(exc)) from exc


def serialize_instance(inst: Instance) -> str:
    out = [FORMAT_HEADER, f"agents {inst.n}"]
    if inst.allow_non_ir:
        out.append(ALLOW_NON_IR)
    for c, u in inst.ircl.items():
        out.append(f"{','.join(map(str, sorted(c)))} {format_utility(u)}")
    return "\n".join(out) + "\n"


def parse_partition(text: Source, inst: Instance | None = None) -> Partition:
    coalitions = [parse_members(line, lineno) for lineno, line in _lines(text)]
    pi = Partition(coalitions)
    if inst is not None:
        inst.validate_partition(pi)
    return pi


def serialize_partition(pi: Partition) -> str:
    return "".join(",".join(map(str, sorted(c))) + "\n" for c in pi)


# -- evaluation ------------------------------------------------------------------


def utility_of(inst: Instance, pi: Partition, i: int) -> Fraction:
    if not 0 <= i < inst.n:
        raise InstanceError(f"agent {i} out of range [0, {inst.n})")
    return inst.utility(pi.of(i))


def utilities(inst: Instance, pi: Partition) -> list[Fraction]:
    """Per-agent utilities, indexed by agent."""
    out = [Fraction(0)] * inst.n
    for c in pi:
        u = inst.utility(c)
        for i in c:
            out[i] = u
    return out


def psi(inst: Instance, pi: Partition) -> PsiVector:
    """All agent utilities sorted non-increasing."""
    return tuple(sorted(utilities(inst, pi), reverse=True))


def psi_compare(a: PsiVector, b: PsiVector) -> int:
    """Lexicographic comparison: -1, 0 or 1."""
    if len(a) != len(b):
        raise ValueError(f"psi vectors differ in length ({len(a)} vs {len(b)})")
    a, b = tuple(a), tuple(b)
    return (a > b) - (a < b)


def induced_partition(inst: Instance, pi: Partition, s: Iterable[int]) -> Partition:
    """The partition that results when the agents of ``s`` break away together."""
    s = frozenset(s)
    if s not in inst.ircl:
        raise InstanceError(f"deviating coalition {format_members(s)} is not listed")
    out = [s]
    for c in pi:
        rest = c - s
        if not rest:
            continue
        if rest != c and rest not in inst.ircl:
            raise ResidualNotListed(rest)
        out.append(rest)
    return Partition(out)


def welfare(inst: Instance, pi: Partition) -> Fraction:
    return sum((len(c) * inst.utility(c) for c in pi), Fraction(0))

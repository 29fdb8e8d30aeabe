"""Instance generators: hardness reductions, the tight PoA/PoS family, random corpora.

Reductions assign utilities to specific coalitions and a default to
singletons.  When a reduction's coalition is itself a singleton, the larger
of the two values is kept; in both reductions the assigned value is never
smaller than the default, so the reduction's value wins.
"""

from __future__ import annotations

import io
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, TextIO, Union

from .errors import InstanceError, ParseError
from .model import Instance, parse_members


@dataclass(frozen=True)
class SetCoverSpec:
    universe_size: int
    subsets: tuple[frozenset, ...]

    def __init__(self, universe_size: int, subsets: Iterable[Iterable[int]]):
        subsets = tuple(frozenset(s) for s in subsets)
        if universe_size < 1:
            raise InstanceError("universe must be non-empty")
        for s in subsets:
            if not s:
                raise InstanceError("subsets must be non-empty")
            if not all(0 <= x < universe_size for x in s):
                raise InstanceError(f"subset {sorted(s)} leaves the universe [0, {universe_size})")
        object.__setattr__(self, "universe_size", universe_size)
        object.__setattr__(self, "subsets", subsets)


@dataclass(frozen=True)
class GraphSpec:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int]]):
        norm = []
        seen = set()
        for u, v in edges:
            if u == v:
                raise InstanceError(f"self-loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise InstanceError(f"edge ({u}, {v}) out of range [0, {vertex_count})")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise InstanceError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "edges", tuple(norm))


def _build(n: int, defaults: Mapping[int, Fraction], assigned: Mapping[frozenset, Fraction],
           allow_non_ir: bool = False, drop_non_ir: bool = False) -> Instance:
    table = {frozenset((i,)): Fraction(defaults[i]) for i in range(n)}
    for c, u in assigned.items():
        table[c] = max(table.get(c, u), u)
    if drop_non_ir:
        table = {c: u for c, u in table.items() if all(u >= table[frozenset((i,))] for i in c)}
    return Instance(n, table, allow_non_ir=allow_non_ir)


def from_exact_cover(spec: SetCoverSpec, pad_uncovered: bool = True) -> Instance:
    """Agents are universe elements; each listed subset is a coalition worth 2, singletons 1.

    An element lying in no subset is perfectly happy alone, so the plain
    construction would report a perfect partition for a system without an
    exact cover.  With ``pad_uncovered`` such systems get three extra agents
    ``a, b, c`` with ``{a,b}`` and ``{b,c}`` worth 2: ``a`` and ``c`` both need
    ``b``, so no perfect partition exists.  Then the result has a perfect
    partition exactly when the set system has an exact cover.
    """
    n = spec.universe_size
    assigned = {s: Fraction(2) for s in spec.subsets}
    covered = frozenset().union(*spec.subsets)
    if pad_uncovered and len(covered) < n:
        a, b, c = n, n + 1, n + 2
        assigned[frozenset((a, b))] = Fraction(2)
        assigned[frozenset((b, c))] = Fraction(2)
        n += 3
    return _build(n, {i: Fraction(1) for i in range(n)}, assigned)


def vertex_coalitions(spec: GraphSpec) -> dict[frozenset, list[int]]:
    """Coalition of incident edge-agents for every non-isolated vertex.

    Both endpoints of an isolated edge share the same one-agent coalition, so
    values are lists of vertices.
    """
    incident: dict[int, set[int]] = {}
    for k, (u, v) in enumerate(spec.edges):
        incident.setdefault(u, set()).add(k)
        incident.setdefault(v, set()).add(k)
    out: dict[frozenset, list[int]] = {}
    for v in sorted(incident):
        out.setdefault(frozenset(incident[v]), []).append(v)
    return out


def from_independent_set(spec: GraphSpec, eps: Fraction | None = None) -> Instance:
    """Agents are edges; each vertex of degree d gives its incident edges a coalition worth 1/d.

    Singletons get ``eps`` (default ``1/m**2`` for m edges), so a welfare
    optimum consists of a maximum independent set's coalitions plus singletons.
    A degree-one vertex makes its edge's singleton worth 1, and the coalition
    of the other endpoint then stops being individually rational for that
    edge; such coalitions are left out.
    """
    m = len(spec.edges)
    if m == 0:
        raise InstanceError("graph has no edges")
    bound = Fraction(1, m * m)
    eps = bound if eps is None else Fraction(eps)
    if not 0 < eps <= bound:
        raise InstanceError(f"eps must lie in (0, 1/m^2] = (0, {bound}]")
    return _build(
        m,
        {k: eps for k in range(m)},
        {c: Fraction(1, len(c)) for c in vertex_coalitions(spec)},
        drop_non_ir=True,
    )


def pos_family(n: int, eps: Fraction | None = None) -> Instance:
    """Grand coalition worth 1, agent 0 alone worth 1+eps, every other agent alone worth 0.

    The grand coalition is not individually rational for agent 0, yet it must
    stay feasible for the welfare gap to appear, hence ``allow_non_ir``.  The
    only core stable partition is all singletons (welfare 1+eps) while the
    optimum is the grand coalition (welfare n).
    """
    if not isinstance(n, int) or n < 2:
        raise InstanceError("pos_family needs n >= 2")
    eps = Fraction(1, n * n) if eps is None else Fraction(eps)
    if eps <= 0:
        raise InstanceError("pos_family needs eps > 0")
    defaults = {i: Fraction(0) for i in range(n)}
    defaults[0] = 1 + eps
    return _build(n, defaults, {frozenset(range(n)): Fraction(1)}, allow_non_ir=True)


def _draw(rng: random.Random, lo: Fraction, cap: int, max_den: int) -> Fraction:
    q = rng.randint(1, max_den)
    return Fraction(rng.randint(math.ceil(lo * q), cap * q), q)


def random_instance(
    n: int,
    max_size: int,
    density: float | Fraction,
    max_den: int,
    seed: int,
    cap: int = 4,
) -> Instance:
    """A seeded random IRCL instance.

    Singletons get utilities ``p/q`` in ``[0, cap]`` with ``q <= max_den``.  Each
    coalition of size 2..max_size is listed with probability ``density`` and
    drawn from ``[largest member singleton utility, cap]``, which keeps it
    individually rational.
    """
    if n < 1 or not 1 <= max_size <= n:
        raise InstanceError(f"need n >= 1 and 1 <= max_size <= n, got n={n}, max_size={max_size}")
    if not 0 <= density <= 1 or max_den < 1 or cap < 0:
        raise InstanceError("need 0 <= density <= 1, max_den >= 1, cap >= 0")
    rng = random.Random(seed)
    single = [_draw(rng, Fraction(0), cap, max_den) for _ in range(n)]
    table = {frozenset((i,)): single[i] for i in range(n)}
    for size in range(2, max_size + 1):
        for c in combinations(range(n), size):
            if rng.random() < density:
                table[frozenset(c)] = _draw(rng, max(single[i] for i in c), cap, max_den)
    return Instance(n, table)


def random_utility_table(n: int, max_den: int, seed: int, cap: int = 4) -> dict[frozenset, Fraction]:
    """Utilities for all 2**n - 1 coalitions, with no rationality constraint."""
    rng = random.Random(seed)
    return {
        frozenset(c): _draw(rng, Fraction(0), cap, max_den)
        for size in range(1, n + 1)
        for c in combinations(range(n), size)
    }


def ircl_from_table(n: int, table: Mapping[frozenset, Fraction]) -> Instance:
    """Drop every coalition some member values below her singleton."""
    return Instance(
        n,
        {c: u for c, u in table.items() if all(u >= table[frozenset((i,))] for i in c)},
    )


# -- auxiliary input files ---------------------------------------------------------


def _tagged_lines(text: Union[str, TextIO]):
    stream = io.StringIO(text) if isinstance(text, str) else text
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tag, sep, value = line.partition(":")
        if not sep:
            raise ParseError("expected '<tag>: <value>'", lineno)
        yield lineno, tag.strip(), value.strip()


def _int(value: str, lineno: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"expected an integer, got {value!r}", lineno) from None


def parse_set_system(text: Union[str, TextIO]) -> SetCoverSpec:
    """``universe: n`` followed by ``subset: i,j,k`` lines (0-based elements)."""
    universe = None
    subsets = []
    for lineno, tag, value in _tagged_lines(text):
        if tag == "universe":
            universe = _int(value, lineno)
        elif tag == "subset":
            subsets.append(parse_members(value, lineno))
        else:
            raise ParseError(f"unknown tag {tag!r}", lineno)
    if universe is None:
        raise ParseError("missing 'universe: <n>' line")
    try:
        return SetCoverSpec(universe, subsets)
    except InstanceError as exc:
        raise ParseError(str(exc)) from exc


def parse_graph(text: Union[str, TextIO]) -> GraphSpec:
    """Optional ``vertices: n`` and ``edge: u,v`` lines; vertex count defaults to max index + 1."""
    count = None
    edges = []
    for lineno, tag, value in _tagged_lines(text):
        if tag == "vertices":
            count = _int(value, lineno)
        elif tag == "edge":
            parts = value.split(",")
            if len(parts) != 2:
                raise ParseError(f"edge needs two endpoints, got {value!r}", lineno)
            edges.append((_int(parts[0], lineno), _int(parts[1], lineno)))
        else:
            raise ParseError(f"unknown tag {tag!r}", lineno)
    if count is None:
        count = 1 + max((max(e) for e in edges), default=-1)
    try:
        return GraphSpec(count, edges)
    except InstanceError as exc:
        raise ParseError(str(exc)) from exc

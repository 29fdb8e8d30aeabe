from fractions import Fraction

import pytest

import oracles
from hgcrp import (
    Partition,
    apply_move,
    check_properties,
    enumerate_ir_partitions,
    find_blocking_coalition,
    find_is_deviation,
    find_nash_deviation,
    find_pareto_dominator,
    from_exact_cover,
    greedy_solve,
    induced_partition,
    is_perfect,
    pareto_dominates,
    perfect_partition,
    psi,
    psi_max_partition,
    utility_of,
    ResidualNotListed,
)
from hgcrp.checks import EMPTY
from hgcrp.generators import SetCoverSpec, ircl_from_table, random_instance, random_utility_table
from hgcrp.model import Instance


def P(*coalitions):
    return Partition(coalitions)


def corpus(count, n_max=6, start=0):
    for seed in range(start, start + count):
        n = 1 + seed % n_max
        size = [2, 3, n][seed % 3]
        yield random_instance(n, min(size, n), Fraction(1, 2), 3, seed)


# -- worked examples -------------------------------------------------------------


def test_blocking_coalition_examples(ex1, ex2):
    assert find_blocking_coalition(ex2, P([0, 1], [2])) == {1, 2}
    assert find_blocking_coalition(ex1, P([0], [1])) is None


def test_is_deviation_examples(ex1, ex3):
    assert find_is_deviation(ex3, P([0], [1])) is None
    assert find_is_deviation(ex1, P([0], [1])) == (1, {0})


def test_is_deviation_none_when_grand_coalition_is_best():
    inst = Instance(3, {(0,): 1, (1,): 1, (2,): 1, (0, 1): 2, (0, 1, 2): 5})
    assert find_is_deviation(inst, P([0, 1, 2])) is None


def test_nash_deviation_examples(ex3):
    assert find_nash_deviation(ex3, P([0], [1])) == (0, {1})
    # no Nash stable partition exists in the stalker game
    for pi in enumerate_ir_partitions(ex3):
        assert find_nash_deviation(ex3, pi) is not None
    assert find_nash_deviation(ex3, P([0, 1])) == (1, EMPTY)


def test_perfect_partition_is_nash_stable():
    inst = Instance(3, {(0,): 1, (1,): 1, (2,): 2, (0, 1): 3})
    pi = P([0, 1], [2])
    assert is_perfect(inst, pi)
    assert find_nash_deviation(inst, pi) is None


def test_is_perfect_examples(ex1):
    spec = SetCoverSpec(3, [{0, 1}, {2}, {0, 1, 2}])
    inst = from_exact_cover(spec)
    assert is_perfect(inst, P([0, 1], [2]))
    assert not is_perfect(ex1, P([0], [1]))
    assert is_perfect(Instance(1, {(0,): 0}), P([0]))


def test_pareto_dominates_examples(ex1, ex2):
    assert pareto_dominates(ex1, P([0, 1]), P([0], [1]))
    assert not pareto_dominates(ex2, P([1, 2], [0]), P([0, 1], [2]))
    for pi in enumerate_ir_partitions(ex2):
        assert not pareto_dominates(ex2, pi, pi)


def test_pareto_dominator_examples(ex1, ex2):
    assert find_pareto_dominator(ex2, P([0, 1], [2])) is None
    assert find_pareto_dominator(ex1, P([0], [1])) == P([0, 1])


def test_check_properties_report(ex2):
    report = check_properties(ex2, P([0, 1], [2]))
    assert report["core"].kind == "blocking-coalition"
    assert report["pareto"] is None
    assert "blocking-coalition {1,2}" == report["core"].describe()
    with pytest.raises(ValueError):
        check_properties(ex2, P([0, 1], [2]), ["envy"])


# -- oracle agreement ------------------------------------------------------------


def test_core_check_matches_unrestricted_definition():
    # full utility table: the package only sees the IR coalitions, the oracle sees all
    for seed in range(40):
        n = 2 + seed % 4
        table = random_utility_table(n, 3, seed)
        inst = ircl_from_table(n, table)
        for pi in enumerate_ir_partitions(inst):
            blocks = list(pi)
            assert (find_blocking_coalition(inst, pi) is not None) == oracles.blocks_by_definition(
                table, blocks, n
            )


def test_pareto_check_matches_brute_force():
    for inst in corpus(60, n_max=5):
        table = inst.ircl
        everything = oracles.listed_partitions(table, inst.n)
        for pi in enumerate_ir_partitions(inst):
            mine = oracles.agent_utils(table, list(pi), inst.n)
            dominated = any(
                all(a >= b for a, b in zip(oracles.agent_utils(table, q, inst.n), mine))
                and oracles.agent_utils(table, q, inst.n) != mine
                for q in everything
            )
            assert (find_pareto_dominator(inst, pi) is not None) == dominated


# -- witness soundness and psi monotonicity --------------------------------------


def test_witnesses_are_sound_and_increase_psi():
    for inst in corpus(120):
        for pi in enumerate_ir_partitions(inst):
            base = psi(inst, pi)
            s = find_blocking_coalition(inst, pi)
            if s is not None:
                assert all(inst.utility(s) > utility_of(inst, pi, i) for i in s)
                try:
                    assert psi(inst, induced_partition(inst, pi, s)) > base
                except ResidualNotListed:
                    pass
            move = find_is_deviation(inst, pi)
            if move is not None:
                agent, target = move
                after = apply_move(inst, pi, agent, target)
                assert utility_of(inst, after, agent) > utility_of(inst, pi, agent)
                if target:
                    assert inst.utility(target | {agent}) >= inst.utility(target)
                assert psi(inst, after) > base
            nash = find_nash_deviation(inst, pi)
            if nash is None:
                assert move is None
            else:
                after = apply_move(inst, pi, *nash)
                assert utility_of(inst, after, nash[0]) > utility_of(inst, pi, nash[0])
            dom = find_pareto_dominator(inst, pi)
            if dom is not None:
                assert pareto_dominates(inst, dom, pi)
                assert psi(inst, dom) > base


def test_perfect_implies_stable_and_optimal():
    seen = 0
    for inst in corpus(150):
        pi = perfect_partition(inst)
        if pi is None:
            continue
        seen += 1
        report = check_properties(inst, pi)
        assert all(dev is None for dev in report.values()), report
    assert seen > 10


def test_greedy_and_psi_max_outputs_pass_checks():
    for inst in corpus(60):
        g = greedy_solve(inst)
        assert find_blocking_coalition(inst, g) is None
        assert find_is_deviation(inst, g) is None
        best = psi_max_partition(inst)
        assert all(dev is None for dev in check_properties(inst, best, ["core", "is", "pareto"]).values())

import random
from fractions import Fraction

import pytest

from conftest import DEDUCE_A, DEDUCE_B, DEDUCE_C, DEDUCE_D
from oracles import cycle_ratios
from tropic.farkas import implication_game
from tropic.game import (
    ZERO_PLUS,
    AssumptionError,
    ParamWeight,
    StrategyError,
    WeightedDigraph,
    apply_g,
    build_game,
    col_node,
    cycle_time,
    iteration_steps,
    max_cycle_ratio,
    min_cycle_ratio,
    restrict_max,
    restrict_min,
    rho,
    rho_dual,
    row_node,
    sub_eigenvector,
    winning_states,
)
from tropic.semiring import BOTTOM as _
from tropic.semiring import vector

F = Fraction


@pytest.fixture
def deduce_game():
    return build_game(DEDUCE_A, DEDUCE_B, DEDUCE_C, DEDUCE_D)


def weights(graph):
    return sorted((u, v, w) for u, v, w in graph.arcs)


def test_param_weight_order():
    assert ParamWeight(0, -1) < ParamWeight(0) < ParamWeight(F(1, 100), -5)
    assert ParamWeight(3, -1).at(2) == 1
    assert (ParamWeight(1, -1) + ParamWeight(2)) / 3 == ParamWeight(1, F(-1, 3))


def test_deduce_game_arcs(deduce_game):
    arcs = weights(deduce_game.digraph(0))
    r, c = row_node, col_node
    assert arcs == sorted([
        (r(0), c(1), F(0)), (r(1), c(0), F(-3)), (r(1), c(2), F(0)),
        (r(2), c(0), F(0)), (r(2), c(1), F(0)),
        (c(0), r(0), F(0)), (c(1), r(1), F(0)), (c(2), r(0), F(2)), (c(2), r(2), F(0)),
    ])
    lam_arcs = [a for a in deduce_game.arcs(ZERO_PLUS) if a[2].lam]
    assert lam_arcs == [(c(2), r(2), ParamWeight(0, -1))]


def test_arc_count_matches_finite_entries(deduce_game):
    finite = sum(v is not _ for row in DEDUCE_A + DEDUCE_B for v in row)
    finite += sum(v is not _ for v in DEDUCE_C + DEDUCE_D)
    assert len(deduce_game.arcs()) == finite


def test_one_by_one_game():
    g = build_game([[0]], [[0]], [0], [0])
    assert g.p + 1 == 2 and g.n == 1 and len(g.arcs()) == 4


def test_assumption_violation_names_node():
    with pytest.raises(AssumptionError, match="row node 0"):
        build_game([[0]], [[_]], [0], [0])
    with pytest.raises(AssumptionError, match="special row"):
        build_game([[0]], [[0]], [_], [0])
    with pytest.raises(AssumptionError, match="column node 1"):
        build_game([[0, _]], [[0, 0]], [0, 0], [0, _])


def test_apply_g(deduce_game):
    assert apply_g(deduce_game, 0, vector([0, 0, 0])) == (0, 0, 0)
    assert apply_g(deduce_game, 1, vector([_, _, _])) == (_, _, _)
    x = vector([1, -2, F(1, 2)])
    shifted = apply_g(deduce_game, 1, [v + 3 for v in x])
    assert shifted == tuple(v + 3 for v in apply_g(deduce_game, 1, x))


def test_two_cycle_ratio():
    g = WeightedDigraph(["r", "c"], [("r", "c", F(3)), ("c", "r", F(-1))], ["c"])
    assert max_cycle_ratio(g) == 2
    assert min_cycle_ratio(g) == 2


def test_acyclic_ratio():
    g = WeightedDigraph(["a", "b"], [("a", "b", F(1))])
    assert max_cycle_ratio(g) is None and min_cycle_ratio(g) is None


def test_ratios_match_circuit_enumeration():
    rng = random.Random(3)
    for _i in range(150):
        k = rng.randint(1, 4)
        cols = [("c", j) for j in range(k)]
        rows = [("r", i) for i in range(rng.randint(1, 4))]
        arcs = []
        for u in cols + rows:
            targets = rows if u[0] == "c" else cols
            for v in targets:
                if rng.random() < 0.5:
                    arcs.append((u, v, F(rng.randint(-6, 6))))
        g = WeightedDigraph(cols + rows, arcs, cols)
        ratios = cycle_ratios(g.nodes, list(arcs), set(cols))
        assert max_cycle_ratio(g) == (max(ratios) if ratios else None)
        assert min_cycle_ratio(g) == (min(ratios) if ratios else None)
        neg = WeightedDigraph(g.nodes, [(u, v, -w) for u, v, w in arcs], cols)
        if ratios:
            assert min_cycle_ratio(g) == -max_cycle_ratio(neg)


def test_restrict_min_middle_panel(deduce_game):
    sub = restrict_min(deduce_game, (0, 1, 2), 0)
    r, c = row_node, col_node
    assert weights(sub) == sorted([
        (r(0), c(1), F(0)), (r(1), c(0), F(-3)), (r(1), c(2), F(0)),
        (r(2), c(0), F(0)), (r(2), c(1), F(0)),
        (c(0), r(0), F(0)), (c(1), r(1), F(0)), (c(2), r(2), F(0)),
    ])


def test_restrict_max_right_panel(deduce_perturbed):
    game, _n, _t = implication_game(deduce_perturbed)
    sub = restrict_max(game, (1, 2, 0), 0)
    r, c = row_node, col_node
    row_arcs = [a for a in weights(sub) if a[0][0] == "row"]
    assert row_arcs == sorted([(r(0), c(1), F(0)), (r(1), c(2), F(0)), (r(2), c(0), F(1))])
    assert min_cycle_ratio(sub) > 0


def test_both_restrictions_functional(deduce_game):
    sub = restrict_min(deduce_game, (0, 1, 2), 0)
    pi = (1, 2, 0)
    arcs = [a for a in sub.arcs if a[0][0] == "col" or pi[a[0][1]] == a[1][1]]
    assert sorted(WeightedDigraph(sub.nodes, arcs).out_degrees().values()) == [1] * 6


def test_invalid_strategies(deduce_game):
    with pytest.raises(StrategyError):
        restrict_min(deduce_game, (1, 1, 2), 0)
    with pytest.raises(StrategyError):
        restrict_max(deduce_game, (0, 0, 0), 0)


def test_rho_signs(deduce, deduce_perturbed):
    game, _n, _t = implication_game(deduce)
    assert rho(game, 1) < 0
    game, _n, _t = implication_game(deduce_perturbed)
    assert rho(game, 1) >= 0


def test_rho_lexicographic_value(deduce):
    game, _n, _t = implication_game(deduce)
    assert rho(game, ZERO_PLUS) == ParamWeight(0, F(-1, 3))


def test_cycle_time_deduce(deduce):
    game, norm, _t = implication_game(deduce)
    chi = cycle_time(game, 1)
    assert max(chi[j] for j in range(3) if norm.c[j] is not _) < 0
    assert max(chi) == rho(game, 1)
    assert winning_states(game, 1) == frozenset()


def test_winning_states_perturbed(deduce_perturbed):
    game, norm, _t = implication_game(deduce_perturbed)
    win = winning_states(game, 1)
    assert any(norm.c[j] is not _ for j in win)


def test_all_zero_game_is_winning_everywhere():
    g = build_game([[0, 0]], [[0, 0]], [0, 0], [0, 0])
    assert winning_states(g, 0) == {0, 1}


def test_one_player_cycle_time():
    # Min has a single arc at every column node
    g = build_game([[0, _], [_, 0]], [[1, _], [_, -2]], [0, 0], [_, _])
    assert cycle_time(g, 0) == (1, -2)


def test_value_iteration_matches_strategies(deduce_game):
    for lam in (0, F(1, 2), 1, 2):
        assert cycle_time(deduce_game, lam, "iteration") == cycle_time(deduce_game, lam)
    assert iteration_steps(deduce_game, 3) == 4 * 6 * 3 * 9 + 1


def test_duality_and_monotonicity(deduce_game):
    values = [rho(deduce_game, lam) for lam in (0, F(1, 2), 1, 2)]
    assert values == sorted(values, reverse=True)
    for lam in (0, 1, ZERO_PLUS):
        assert rho(deduce_game, lam) == rho_dual(deduce_game, lam)


def test_sub_eigenvector(deduce_game):
    r = rho(deduce_game, 1)
    for mu in (r + F(1, 7), r + 1, r + 10):
        y = sub_eigenvector(deduce_game, 1, mu)
        assert all(v is not _ for v in y)
        assert all(a <= mu + b for a, b in zip(apply_g(deduce_game, 1, y), y))
    with pytest.raises(ValueError):
        sub_eigenvector(deduce_game, 1, r)

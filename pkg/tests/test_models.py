import itertools
import random
from fractions import Fraction

import pytest

from cyclic_data import T
from oracles import minimal_hitting_sets
from tropic.cone import (
    build_level_chains,
    cover_to_vector,
    enumerate_minimal_covers,
    enumerate_polar_extreme,
    minimal_elements,
    same_up_to_scaling,
)
from tropic.models import (
    block_example,
    cyclic_cone,
    cyclic_polar_count,
    cyclic_polar_inequalities,
    minimal_transversals,
    transversal_matrix,
)
from tropic.semiring import BOTTOM as _

F = Fraction


def test_cyclic_matrix():
    K = cyclic_cone(T, 4)
    assert K.G.rows == tuple(tuple(F(t * j) for j in range(4)) for t in T)
    assert cyclic_cone([1, 2], 1).G.rows == ((0,), (0,))
    assert cyclic_cone([3], 3).p == 1
    with pytest.raises(ValueError):
        cyclic_cone([1, 1, 2], 3)


def test_cyclic_count():
    assert cyclic_polar_count(5, 4) == 36
    assert cyclic_polar_count(1, 1) == 2
    assert len(enumerate_polar_extreme(cyclic_cone(T, 4))) == 36


def test_cyclic_closed_form_matches_enumeration():
    for t in ([1, 2, 3, 4, 5], [F(-1, 2), 0, 3, 7, 8]):
        closed = cyclic_polar_inequalities(t, 4)
        assert same_up_to_scaling(closed, enumerate_polar_extreme(cyclic_cone(t, 4)))


def test_two_segment_family_size():
    p, n = 5, 4
    closed = cyclic_polar_inequalities(T, n)
    for i in range(n):
        two_term = [q for q in closed if q.classify() == ("type", i) and sum(v is not _ for v in q.b) == 2]
        assert len(two_term) == (p - 1) * i * (n - 1 - i)


def test_block_matrix():
    K = block_example(3, 2)
    assert K.G.rows[0] == tuple(map(F, (5, 4, 1, 1, 1, 1, 0)))
    assert K.G.rows[2] == tuple(map(F, (1, 1, 1, 1, 5, 4, 0)))
    assert block_example(2, 3).G.rows[1] == tuple(map(F, (1, 1, 1, 6, 5, 4, 0)))


def test_block_covers_contain_singleton_selections():
    K = block_example(3, 2)
    chain = build_level_chains(K, 6)
    zs = [cover_to_vector(chain, c) for c in enumerate_minimal_covers(chain)]
    singles = set()
    for a in (0, 1):
        for b in (2, 3):
            for c in (4, 5):
                z = [_] * 6
                for j in (a, b, c):
                    z[j] = F(-5 if j % 2 == 0 else -4)
                singles.add(tuple(z))
    assert singles <= set(zs)
    assert len(singles) == 8
    # single-column covers also occur, e.g. z_1 = -1 alone
    assert (F(-1), _, _, _, _, _) in zs
    assert len(zs) == len(set(zs))
    # brute force over candidate values -G_kj for each coordinate
    rows = K.G.rows
    cands = [[_] + sorted({-rows[k][j] for k in range(3)}) for j in range(6)]
    feasible = [z for z in itertools.product(*cands)
                if all(max((z[j] + rows[k][j] for j in range(6) if z[j] is not _), default=-99) >= 0 for k in range(3))]
    def leq(u, v):
        return all(a is _ or (b is not _ and a <= b) for a, b in zip(u, v))
    minimal = {z for z in feasible if not any(w != z and leq(w, z) for w in feasible)}
    assert set(zs) == minimal
    assert len(zs) == 14


def test_transversal_matrix():
    K = transversal_matrix(3, [{0, 1}, {1, 2}])
    assert K.G.rows == ((0, 0, _, 0), (_, 0, 0, 0))
    assert transversal_matrix(1, [{0}]).G.rows == ((0, 0),)
    with pytest.raises(ValueError):
        transversal_matrix(2, [{0}, set()])


def test_minimal_transversals_examples():
    assert minimal_transversals(3, [{0, 1}, {1, 2}]) == [{1}, {0, 2}]
    assert minimal_transversals(3, [{0, 1, 2}]) == [{0}, {1}, {2}]
    assert minimal_transversals(2, []) == [frozenset()]


def test_transversal_entries_and_supports():
    K = transversal_matrix(4, [{0, 1}, {2, 3}, {1, 3}])
    zs = minimal_elements(K, 4)
    assert all(v is _ or v == 0 for z in zs for v in z)
    supports = sorted((frozenset(j for j, v in enumerate(z) if v is not _) for z in zs), key=sorted)
    assert supports == sorted(minimal_hitting_sets(4, [{0, 1}, {2, 3}, {1, 3}]), key=sorted)


def test_random_transversals():
    rng = random.Random(17)
    for _i in range(40):
        n = rng.randint(1, 7)
        edges = [frozenset(rng.sample(range(n), rng.randint(1, n))) for _j in range(rng.randint(0, 5))]
        assert minimal_transversals(n, edges) == minimal_hitting_sets(n, edges)

"""Acceptance criteria 1-9, each run under its time limit.

Every criterion prints one ``PASS criterion k`` or ``FAIL criterion k`` line
(visible with ``-s`` and repeated in the terminal summary).
"""

import random
import time
from fractions import Fraction

from conftest import ACCEPTANCE_RESULTS, DEDUCE_A, DEDUCE_B, DEDUCE_C, DEDUCE_D, SIX_ROWS
from cyclic_data import ALL_28, FIRST, FIRST_CERTS, ORDER_FIRST, ORDER_SECOND, SECOND, SECOND_CERTS, T
from oracles import grid_counterexample, in_ith_polar, is_extreme_by_decomposition, minimal_elements_grid, minimal_hitting_sets
from tropic.cone import (
    GeneratorCone,
    Inequality,
    build_level_chains,
    cover_to_vector,
    enumerate_minimal_covers,
    enumerate_polar_extreme,
    insert_target,
    minimal_elements,
    same_up_to_scaling,
    trivial_inequalities,
)
from tropic.farkas import (
    Implication,
    MaxCert,
    check_minimality_certificates,
    find_max_certificate,
    find_min_certificate,
    holds,
    minimize_system,
    verify_max_certificate,
    verify_min_certificate,
)
from tropic.game import AssumptionError, build_game, cycle_time, rho, rho_dual
from tropic.hypergraph import is_extreme_general, star_test
from tropic.models import block_example, cyclic_cone, cyclic_polar_count, minimal_transversals
from tropic.semiring import BOTTOM as _
from tropic.semiring import TropMatrix

F = Fraction


def run_criterion(k, title, limit, body):
    start = time.perf_counter()
    failure = None
    try:
        body()
    except AssertionError as exc:
        failure = str(exc).splitlines()[0] if str(exc) else "assertion failed"
    elapsed = time.perf_counter() - start
    if failure is None and elapsed >= limit:
        failure = f"took {elapsed:.2f}s, limit {limit}s"
    status = "PASS" if failure is None else "FAIL"
    line = f"{status} criterion {k}: {title} ({elapsed:.2f}s)" + ("" if failure is None else f" [{failure}]")
    print(line)
    ACCEPTANCE_RESULTS[k] = line
    assert failure is None, line


def v(*xs):
    return tuple(_ if x is _ else F(x) for x in xs)


# -------------------------------------------------------------- criterion 1


def test_criterion_1_six_cone_second_polar():
    def body():
        K = GeneratorCone(TropMatrix(SIX_ROWS))
        got = enumerate_polar_extreme(K, 1)
        e2 = v(_, 0, _)
        expected = [
            Inequality(v(_, _, _), v(0, _, _)),
            Inequality(v(_, _, _), v(_, _, 0)),
        ] + [Inequality(e2, b) for b in (v(1, _, 0), v(3, _, _), v(_, _, 3), v(0, _, 1))]
        assert len(got) == 6, f"{len(got)} inequalities"
        assert set(got) == set(expected), f"got {got}"
        assert all(q.a == e2 for q in got if q.classify() == ("type", 1))

    run_criterion(1, "six-generator cone, inequalities of the second polar", 1.0, body)


# -------------------------------------------------------------- criterion 2


def test_criterion_2_cyclic_five_four():
    def body():
        system = enumerate_polar_extreme(cyclic_cone(T, 4))
        assert len(system) == 36, f"{len(system)} extreme rays"
        trivial = set(trivial_inequalities(4))
        nontrivial = [q for q in system if q not in trivial]
        assert len(nontrivial) == 28
        assert same_up_to_scaling(nontrivial, ALL_28)
        assert cyclic_polar_count(5, 4) == 36

    run_criterion(2, "cyclic cone t=(1..5), n=4: 36 extreme rays", 5.0, body)


# -------------------------------------------------------------- criterion 3


def test_criterion_3_cyclic_count_formula():
    def body():
        rng = random.Random(3)
        for p in range(2, 7):
            for n in range(2, 6):
                sequences = [list(range(1, p + 1))]
                t = sorted(rng.sample(range(-20, 21), p))
                sequences.append([F(x, 3) for x in t])
                assert sequences[0] != sequences[1]
                for seq in sequences:
                    got = len(enumerate_polar_extreme(cyclic_cone(seq, n)))
                    assert got == cyclic_polar_count(p, n), f"p={p} n={n} t={seq}: {got}"

    run_criterion(3, "cyclic count formula for 2<=p<=6, 2<=n<=5", 60.0, body)


# -------------------------------------------------------------- criterion 4


def test_criterion_4_worked_implication():
    def body():
        imp = Implication(DEDUCE_A, DEDUCE_B, DEDUCE_C, DEDUCE_D)
        assert holds(imp)
        cert = find_min_certificate(imp)
        assert cert is not None and cert.sigma == (0, 1, 2)
        assert verify_min_certificate(imp, (0, 1, 2))

        bad = Implication(DEDUCE_A, DEDUCE_B, [1, 0, _], DEDUCE_D)
        assert not holds(bad)
        assert find_min_certificate(bad) is None
        cert = find_max_certificate(bad)
        assert cert.pi == (1, 2, 0)
        assert verify_max_certificate(bad, cert)
        assert verify_max_certificate(bad, MaxCert((1, 2, 0), cert.j, v(0, 0, 0)))
        assert bad.is_counterexample(v(0, 0, 0))

    run_criterion(4, "worked implication and its perturbation", 1.0, body)


# -------------------------------------------------------------- criterion 5


def test_criterion_5_minimization():
    def body():
        assert minimize_system(ALL_28, ORDER_FIRST) == FIRST
        assert set(minimize_system(ALL_28, ORDER_SECOND)) == set(SECOND)
        # the same orders applied to the enumerated polar, trivial rows first
        system = enumerate_polar_extreme(cyclic_cone(T, 4))
        position = {}
        for k, q in enumerate(system):
            for r, ref in enumerate(ALL_28):
                if same_up_to_scaling([q], [ref]):
                    position[r] = k
        assert len(position) == 28
        trivial = [k for k in range(len(system)) if k not in position.values()]
        for order, target in ((ORDER_FIRST, FIRST), (ORDER_SECOND, SECOND)):
            kept = minimize_system(system, trivial + [position[r] for r in order])
            assert same_up_to_scaling(kept, target)
        assert check_minimality_certificates(FIRST, FIRST_CERTS)
        assert check_minimality_certificates(SECOND, SECOND_CERTS)

    run_criterion(5, "two scan orders give both 14-inequality systems", 30.0, body)


# -------------------------------------------------------------- criterion 6


def random_implication(rng):
    def entry():
        return _ if rng.random() < 0.3 else F(rng.randint(-2, 2))

    n, p = rng.randint(1, 3), rng.randint(0, 3)
    A = [[entry() for _j in range(n)] for _i in range(p)]
    B = [[entry() for _j in range(n)] for _i in range(p)]
    return A, B, [entry() for _j in range(n)], [entry() for _j in range(n)], n


def test_criterion_6_oracle_suite():
    def body():
        rng = random.Random(6)
        for trial in range(250):
            A, B, c, d, n = random_implication(rng)
            imp = Implication(TropMatrix(A, n), TropMatrix(B, n), c, d)
            answer = holds(imp)
            witness = grid_counterexample(A, B, c, d)
            assert answer == (witness is None), f"trial {trial}: holds={answer}, grid={witness}"
            low, high = find_min_certificate(imp), find_max_certificate(imp)
            assert (low is None) != (high is None), f"trial {trial}: certificates {low} {high}"
            if low is not None:
                assert answer and verify_min_certificate(imp, low)
            else:
                assert not answer and verify_max_certificate(imp, high)

    run_criterion(6, "250 random implications against the grid oracle", 60.0, body)


# -------------------------------------------------------------- criterion 7


def random_cone(rng):
    p, n = rng.randint(1, 5), rng.randint(1, 5)
    G = [[_ if rng.random() < 0.3 else F(rng.randint(-3, 3)) for _j in range(n)] for _i in range(p)]
    for j in range(n):
        if all(G[k][j] is _ for k in range(p)):
            G[rng.randrange(p)][j] = F(rng.randint(-3, 3))
    return G, n


def test_criterion_7_covers_and_extremality():
    def body():
        rng = random.Random(7)
        checked = 0
        for trial in range(110):
            G, n = random_cone(rng)
            K = GeneratorCone(TropMatrix(G, n))
            for i in range(n):
                chain = build_level_chains(K, i)
                from_covers = sorted({cover_to_vector(chain, c) for c in enumerate_minimal_covers(chain)})
                assert from_covers == minimal_elements_grid(G, i), f"trial {trial}, i={i}"
                assert minimal_elements(K, i) == from_covers
                candidates = []
                for z in from_covers:
                    b = list(insert_target(chain, z))
                    candidates.append(tuple(b))
                    for j in range(n):
                        if j != i:
                            for val in (_, F(rng.randint(-3, 4))):
                                bb = list(b)
                                bb[j] = val
                                candidates.append(tuple(bb))
                for b in candidates:
                    b = tuple(F(0) if k == i else b[k] for k in range(n))
                    if not in_ith_polar(G, i, b):
                        continue
                    checked += 1
                    star = star_test(K, i, b)
                    general = is_extreme_general(_ith_polar_halfspaces(G, i), b)
                    brute = is_extreme_by_decomposition(G, i, b)
                    assert star == general == brute, f"trial {trial}, i={i}, b={b}: {star} {general} {brute}"
        assert checked > 500

    run_criterion(7, "covers and extremality tests agree on 110 random cones", 120.0, body)


def _ith_polar_halfspaces(G, i):
    """The i-th polar as an inequality system in b: b_i + G_ki <= max_j b_j + G_kj."""
    n = len(G[0])
    out = []
    for row in G:
        if row[i] is _:
            continue
        a = tuple(row[i] if k == i else _ for k in range(n))
        b = tuple(_ if k == i else row[k] for k in range(n))
        out.append(Inequality(a, b))
    return out


# -------------------------------------------------------------- criterion 8


def random_game(rng):
    def entry():
        return _ if rng.random() < 0.4 else F(rng.randint(-3, 3))

    while True:
        p, n = rng.randint(0, 2), rng.randint(1, 3)
        A = TropMatrix([[entry() for _j in range(n)] for _i in range(p)], n)
        B = TropMatrix([[entry() for _j in range(n)] for _i in range(p)], n)
        c, d = [entry() for _j in range(n)], [entry() for _j in range(n)]
        try:
            return build_game(A, B, c, d)
        except AssumptionError:
            continue


def test_criterion_8_game_duality():
    def body():
        rng = random.Random(8)
        lams = [F(0), F(1, 2), F(1), F(2)]
        for trial in range(120):
            g = random_game(rng)
            radii = []
            for lam in lams:
                chi = cycle_time(g, lam, "strategies")
                r = rho(g, lam)
                assert r == rho_dual(g, lam) == max(chi), f"trial {trial}, lambda={lam}"
                assert cycle_time(g, lam, "iteration") == chi, f"trial {trial}, lambda={lam}"
                radii.append(r)
            assert all(a >= b for a, b in zip(radii, radii[1:])), f"trial {trial}: {radii}"

    run_criterion(8, "120 random games: duality, engines, monotonicity", 120.0, body)


# -------------------------------------------------------------- criterion 9


def test_criterion_9_transversals():
    def body():
        rng = random.Random(9)
        for trial in range(120):
            n = rng.randint(1, 10)
            edges = [frozenset(rng.sample(range(n), rng.randint(1, n))) for _e in range(rng.randint(0, 8))]
            got = minimal_transversals(n, edges)
            assert got == minimal_hitting_sets(n, edges), f"trial {trial}: {n} {edges}"
        K = block_example(3, 2)
        chain = build_level_chains(K, 6)
        covers = {cover_to_vector(chain, c) for c in enumerate_minimal_covers(chain)}
        selections = set()
        for a in (0, 1):
            for b in (2, 3):
                for c in (4, 5):
                    z = [_] * 6
                    for j in (a, b, c):
                        z[j] = -K.G.rows[j // 2][j]
                    selections.add(tuple(z))
        assert len(selections) == 8
        assert selections <= covers

    run_criterion(9, "120 random hypergraphs and the eight block covers", 60.0, body)

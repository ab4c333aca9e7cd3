"""Deciding tropical implications ``A x <= B x  =>  c x <= d x``.

The implication is decided exactly on integer data through the game of
:mod:`tropic.game`: it holds iff Player Min wins at ``lam = 1``.  A winning
Min strategy certifies that it holds; a Max strategy, a column node and an
explicit counterexample certify that it fails.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import networkx as nx

from .cone import Inequality, genex_bound, system_matrices
from .game import (
    GameGraph,
    ParamWeight,
    StrategyError,
    ZERO_PLUS,
    _check_pi,
    apply_g,
    build_game,
    col_node,
    cycle_time,
    max_cycle_ratio,
    min_cycle_ratio,
    optimal_min_strategy,
    restrict_max,
    restrict_min,
    rho,
    row_node,
    WeightedDigraph,
)
from .semiring import (
    BOTTOM,
    DimensionError,
    Scalar,
    TropMatrix,
    TropicError,
    Vector,
    denominator_lcm,
    is_bottom_vector,
    trop_dot,
    unit_vector,
    vector,
)


class VacuousImplication(TropicError):
    """Nothing is left to decide: ``c x`` is BOTTOM on every solution."""


@dataclass(frozen=True)
class Implication:
    A: TropMatrix
    B: TropMatrix
    c: Vector
    d: Vector

    def __init__(self, A, B, c, d):
        c, d = vector(c), vector(d)
        n = len(c)
        A = A if isinstance(A, TropMatrix) else TropMatrix(A, n)
        B = B if isinstance(B, TropMatrix) else TropMatrix(B, n)
        if A.shape != B.shape:
            raise DimensionError(f"A is {A.p}x{A.n} but B is {B.p}x{B.n}")
        if A.n != n or len(d) != n:
            raise DimensionError("A, B, c and d must share the column count")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @classmethod
    def from_system(cls, system: Sequence[Inequality], goal: Inequality) -> "Implication":
        A, B = system_matrices(system, goal.n)
        return cls(A, B, goal.a, goal.b)

    @property
    def p(self) -> int:
        return self.A.p

    @property
    def n(self) -> int:
        return self.A.n

    def premise_holds(self, x: Sequence[Scalar]) -> bool:
        return all(a <= b for a, b in zip(self.A.matvec(x), self.B.matvec(x)))

    def is_counterexample(self, x: Sequence[Scalar]) -> bool:
        x = vector(x)
        return self.premise_holds(x) and trop_dot(self.c, x) > trop_dot(self.d, x)


@dataclass(frozen=True)
class NormalizationTrace:
    """How a normalized implication relates to the original one.

    Normalized data is the original data times ``scale``, restricted to
    ``kept_rows``/``kept_vars``, with trivial rows ``x_j <= x_j`` appended
    for the variables in ``added_rows`` and BOTTOM entries of ``d`` replaced
    as listed in ``d_replacements`` (in scaled units).
    """

    scale: int
    kept_rows: tuple
    kept_vars: tuple
    eliminated_rows: tuple
    eliminated_vars: tuple
    added_rows: tuple
    bound: Fraction
    d_replacements: tuple = field(default=())
    n_original: int = 0

    def lift(self, x: Sequence[Scalar]) -> Vector:
        """Map a normalized solution to the original coordinates."""
        out = [BOTTOM] * self.n_original
        for k, j in enumerate(self.kept_vars):
            out[j] = x[k] if x[k] is BOTTOM else x[k] / self.scale
        return tuple(out)

    def project(self, x: Sequence[Scalar]) -> Vector:
        """Map an original vector to normalized coordinates."""
        return tuple(x[j] if x[j] is BOTTOM else x[j] * self.scale for j in self.kept_vars)


def _scaled(values, s):
    return [v if v is BOTTOM else v * s for v in values]


def normalize(imp: Implication):
    """Bring an implication to a form whose game satisfies the standing
    assumptions: integer data, every row playable, ``d`` finite.

    Raises :class:`VacuousImplication` when ``c`` vanishes on every
    solution, in which case the implication holds.
    """
    if is_bottom_vector(imp.c):
        raise VacuousImplication("c is identically BOTTOM")
    scale = denominator_lcm(imp.A.finite_values() + imp.B.finite_values() + list(imp.c) + list(imp.d))
    rows = list(range(imp.p))
    vars_ = list(range(imp.n))
    dropped_rows, dropped_vars = [], []
    changed = True
    while changed:
        changed = False
        for r in rows:
            if all(imp.B[r, j] is BOTTOM for j in vars_):
                forced = [j for j in vars_ if imp.A[r, j] is not BOTTOM]
                rows.remove(r)
                dropped_rows.append(r)
                vars_ = [j for j in vars_ if j not in forced]
                dropped_vars.extend(forced)
                changed = True
                break
    if not vars_:
        raise VacuousImplication("every variable is forced to BOTTOM")
    c = _scaled([imp.c[j] for j in vars_], scale)
    if is_bottom_vector(c):
        raise VacuousImplication("c vanishes on the remaining variables")
    A = [_scaled([imp.A[r, j] for j in vars_], scale) for r in rows]
    B = [_scaled([imp.B[r, j] for j in vars_], scale) for r in rows]
    n = len(vars_)
    added = [k for k in range(n) if all(row[k] is BOTTOM for row in A)]
    for k in added:
        A.append(list(unit_vector(n, k)))
        B.append(list(unit_vector(n, k)))
    A, B = TropMatrix(A, n), TropMatrix(B, n)
    M = genex_bound(A, B)
    floor = -M - 1 + min(v for v in c if v is not BOTTOM)
    d = _scaled([imp.d[j] for j in vars_], scale)
    replaced = tuple((vars_[k], floor) for k in range(n) if d[k] is BOTTOM)
    d = [floor if v is BOTTOM else v for v in d]
    trace = NormalizationTrace(
        scale=scale,
        kept_rows=tuple(rows),
        kept_vars=tuple(vars_),
        eliminated_rows=tuple(dropped_rows),
        eliminated_vars=tuple(sorted(dropped_vars)),
        added_rows=tuple(vars_[k] for k in added),
        bound=M,
        d_replacements=replaced,
        n_original=imp.n,
    )
    return Implication(A, B, c, d), trace


def implication_game(imp: Implication):
    """Normalize and build the game; returns ``(game, normalized, trace)``."""
    norm, trace = normalize(imp)
    return build_game(norm.A, norm.B, norm.c, norm.d), norm, trace


def _lambda_system(norm: Implication, lam) -> tuple:
    """Premise extended with the row ``lam + d x <= c x``."""
    A = norm.A.stack(TropMatrix([[v + lam for v in norm.d]], norm.n))
    B = norm.B.stack(TropMatrix([norm.c], norm.n))
    return A, B


def _greatest_solution(game: GameGraph, norm: Implication):
    """Decreasing iteration from 0 under ``min(x, g_1(x))``.

    Entries more than ``M + 1`` below the maximum are cut to BOTTOM, which
    loses no extreme solution normalized to maximum 0.  Returns the limit,
    a nonzero solution of ``x <= g_1(x)``, or None if there is none.
    """
    M = genex_bound(*_lambda_system(norm, 1))
    x = tuple(Fraction(0) for _ in range(game.n))
    while True:
        gx = apply_g(game, 1, x)
        new = [min(a, b) for a, b in zip(x, gx)]
        top = max(new)
        if top is BOTTOM or top < 0:
            return None
        new = tuple(BOTTOM if v is BOTTOM or v < top - M - 1 else v for v in new)
        if new == x:
            return x
        x = new


def holds(imp: Implication, engine: str = "iteration") -> bool:
    """Whether ``A x <= B x`` implies ``c x <= d x`` for all ``x``."""
    try:
        game, norm, _ = implication_game(imp)
    except VacuousImplication:
        return True
    if engine == "iteration":
        return _greatest_solution(game, norm) is None
    if engine == "strategies":
        return rho(game, 1) < 0
    raise ValueError(f"unknown engine {engine!r}")


def counterexample(imp: Implication):
    """A vector satisfying the premise but not the conclusion, or None."""
    try:
        game, norm, trace = implication_game(imp)
    except VacuousImplication:
        return None
    x = _greatest_solution(game, norm)
    return None if x is None else trace.lift(x)


# ---------------------------------------------------------- finite vectors


def _finite_setup(imp: Implication):
    """Integer game for the finite variant, or None if it holds trivially."""
    if is_bottom_vector(imp.c):
        return None
    rows = []
    for r in range(imp.p):
        a, b = imp.A.row(r), imp.B.row(r)
        if is_bottom_vector(b):
            if not is_bottom_vector(a):
                return None
            continue
        rows.append(r)
    scale = denominator_lcm(imp.A.finite_values() + imp.B.finite_values() + list(imp.c) + list(imp.d))
    n = imp.n
    A = [_scaled(imp.A.row(r), scale) for r in rows]
    B = [_scaled(imp.B.row(r), scale) for r in rows]
    c, d = _scaled(imp.c, scale), _scaled(imp.d, scale)
    for k in range(n):
        if d[k] is BOTTOM and all(row[k] is BOTTOM for row in A):
            A.append(list(unit_vector(n, k)))
            B.append(list(unit_vector(n, k)))
    norm = Implication(TropMatrix(A, n), TropMatrix(B, n), c, d)
    return build_game(norm.A, norm.B, norm.c, norm.d), norm, scale


def finite_counterexample(imp: Implication):
    """A finite counterexample, or None if the implication holds over R^n.

    With integer data a finite counterexample exists iff one exists with
    ``1 + d x <= c x``, and then one exists whose entries span at most the
    extreme-vector bound ``M``; the decreasing iteration from 0 finds it.
    """
    setup = _finite_setup(imp)
    if setup is None:
        return None
    game, norm, scale = setup
    M = genex_bound(*_lambda_system(norm, 1))
    x = tuple(Fraction(0) for _ in range(game.n))
    while True:
        new = tuple(min(a, b) for a, b in zip(x, apply_g(game, 1, x)))
        if any(v is BOTTOM or v < -M for v in new):
            return None
        if new == x:
            return tuple(v / scale for v in x)
        x = new


def holds_finite(imp: Implication, engine: str = "iteration") -> bool:
    """Whether the implication holds for all finite vectors."""
    if engine == "iteration":
        return finite_counterexample(imp) is None
    if engine == "strategies":
        setup = _finite_setup(imp)
        if setup is None:
            return True
        return not min(cycle_time(setup[0], ZERO_PLUS)) >= ParamWeight(0)
    raise ValueError(f"unknown engine {engine!r}")


def strict_separation(imp: Implication) -> bool:
    """Whether every nonzero solution of ``A x <= B x`` has ``c x < d x``.

    Equivalent to the implication ``A x <= B x, d x <= c x => x = BOTTOM``,
    written as ``max(x) <= max(x) - 1``.
    """
    n = imp.n
    A = imp.A.stack(TropMatrix([imp.d], n))
    B = imp.B.stack(TropMatrix([imp.c], n))
    return holds(Implication(A, B, [0] * n, [-1] * n))


# ------------------------------------------------------------ certificates


@dataclass(frozen=True)
class MinCert:
    """Min strategy on the normalized game (column -> row, 0-based; the
    special row is ``p``).  ``sigma`` is None for vacuous implications."""

    sigma: tuple | None
    value: ParamWeight | None = None


@dataclass(frozen=True)
class MaxCert:
    """Max strategy (row -> column) and column node of the normalized game,
    with a counterexample ``x`` in original coordinates."""

    pi: tuple
    j: int
    x: Vector


def find_min_certificate(imp: Implication):
    """Lexicographically first Min strategy of least maximal cycle mean at
    ``lam -> 0+``, if the implication holds."""
    try:
        game, norm, _ = implication_game(imp)
    except VacuousImplication:
        return MinCert(None)
    if _greatest_solution(game, norm) is not None:
        return None
    sigma, value = optimal_min_strategy(game, ZERO_PLUS)
    if not value < ParamWeight(0):
        return None
    return MinCert(sigma, value)


def verify_min_certificate(imp: Implication, sigma) -> bool:
    """All circuits of the sub-game at ``lam = 0`` are nonpositive and the
    ones avoiding the special row are negative."""
    if isinstance(sigma, MinCert):
        sigma = sigma.sigma
    try:
        game, _, _ = implication_game(imp)
    except VacuousImplication:
        return sigma is None
    if sigma is None:
        return False
    graph = restrict_min(game, sigma, 0)
    if max_cycle_ratio(graph) > 0:
        return False
    rest = max_cycle_ratio(graph.without_node(row_node(game.special)))
    return rest is None or rest < 0


def _max_strategy_from(game: GameGraph, x: Vector) -> tuple:
    pi = []
    for i in range(game.p + 1):
        options = game.max_options(i)
        best = options[0]
        for j in options:
            if x[j] is BOTTOM:
                continue
            val = game.max_weight(i, j) + x[j]
            if x[best] is BOTTOM or val > game.max_weight(i, best) + x[best]:
                best = j
        pi.append(best)
    return tuple(pi)


def _winning_column(game: GameGraph, pi, j: int) -> bool:
    graph = restrict_max(game, pi, 0)
    g = graph.to_networkx()
    reach = nx.descendants(g, col_node(j)) | {col_node(j)}
    special = row_node(game.special)
    for comp in nx.strongly_connected_components(g.subgraph(reach)):
        if len(comp) < 2:
            continue
        arcs = [a for a in graph.arcs if a[0] in comp and a[1] in comp]
        sub = WeightedDigraph(sorted(comp), arcs, [v for v in comp if v[0] == "col"])
        nu = min_cycle_ratio(sub)
        if nu < 0:
            return False
        if nu == 0 and special in comp and _special_on_zero_circuit(sub, special):
            return False
    return True


def _special_on_zero_circuit(sub: WeightedDigraph, special) -> bool:
    """Shortest-path potentials make every weight nonnegative; zero circuits
    then use only arcs of zero reduced weight."""
    u = {v: Fraction(0) for v in sub.nodes}
    for _ in range(len(sub.nodes)):
        for a, b, w in sub.arcs:
            if u[a] + w < u[b]:
                u[b] = u[a] + w
    zero = nx.DiGraph()
    zero.add_nodes_from(sub.nodes)
    zero.add_edges_from((a, b) for a, b, w in sub.arcs if u[a] + w - u[b] == 0)
    return any(special in comp and len(comp) > 1 for comp in nx.strongly_connected_components(zero))


def find_max_certificate(imp: Implication):
    """Max strategy, column node and counterexample, if the implication
    fails.  The strategy plays the argmax of ``B x`` at the counterexample."""
    try:
        game, norm, trace = implication_game(imp)
    except VacuousImplication:
        return None
    x = _greatest_solution(game, norm)
    if x is None:
        return None
    pi = _max_strategy_from(game, x)
    for j in range(game.n):
        if x[j] is not BOTTOM and _winning_column(game, pi, j):
            return MaxCert(pi, j, trace.lift(x))
    raise AssertionError("no winning column for the extracted strategy")


def verify_max_certificate(imp: Implication, cert: MaxCert) -> bool:
    """Check the strategy through cycle means and potentials, and the
    counterexample by direct evaluation."""
    x = vector(cert.x)
    if len(x) != imp.n:
        raise DimensionError(f"counterexample has {len(x)} entries, expected {imp.n}")
    try:
        game, _, _ = implication_game(imp)
    except VacuousImplication:
        return False
    pi = _check_pi(game, cert.pi)
    if not 0 <= cert.j < game.n:
        raise StrategyError(f"column node {cert.j} out of range")
    return _winning_column(game, pi, cert.j) and imp.is_counterexample(x)


def certificate(imp: Implication):
    """Whichever certificate applies: a :class:`MinCert` or a :class:`MaxCert`."""
    return find_min_certificate(imp) or find_max_certificate(imp)


# ------------------------------------------------------------- redundancy


def _without(system, k):
    return [q for r, q in enumerate(system) if r != k]


def is_redundant(system: Sequence[Inequality], k: int) -> bool:
    """Whether inequality ``k`` is implied by the others."""
    if not 0 <= k < len(system):
        raise IndexError(f"inequality {k} out of range for a system of {len(system)}")
    return holds(Implication.from_system(_without(system, k), system[k]))


def minimize_system(system: Sequence[Inequality], order: Sequence[int]) -> list:
    """Scan ``order`` and drop each inequality implied by the survivors;
    returns the survivors in their original order."""
    order = list(order)
    if sorted(order) != list(range(len(system))):
        raise ValueError("order must be a permutation of the system's indices")
    alive = list(range(len(system)))
    for k in order:
        rest = [system[r] for r in alive if r != k]
        if holds(Implication.from_system(rest, system[k])):
            alive.remove(k)
    return [system[r] for r in alive]


def minimality_certificates(system: Sequence[Inequality]) -> list:
    """For each inequality, a vector satisfying all the others but not it
    (None where the inequality is redundant)."""
    return [counterexample(Implication.from_system(_without(system, k), system[k]))
            for k in range(len(system))]


def check_minimality_certificates(system: Sequence[Inequality], certs: Sequence) -> bool:
    """Certificate ``k`` must violate inequality ``k`` and satisfy the rest."""
    if len(certs) != len(system):
        raise ValueError(f"{len(certs)} certificates for {len(system)} inequalities")
    for k, x in enumerate(certs):
        x = vector(x)
        for r, q in enumerate(system):
            if q.satisfied_by(x) != (r != k):
                return False
    return True

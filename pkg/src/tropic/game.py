"""Parametric mean payoff games attached to tropical implications.

The game of an implication ``A x <= B x  =>  c x <= d x`` has row nodes
``0..p`` (Player Max; node ``p`` is the special row carrying ``c`` and
``d``) and column nodes ``0..n-1`` (Player Min).  Row ``i`` moves to column
``j`` with weight ``B[i][j]`` (``c[j]`` for the special row); column ``j``
moves to row ``i`` with weight ``-A[i][j]``, or to the special row with
weight ``-lam - d[j]``.  Circuit length counts column nodes.

``lam`` is either an exact rational or :data:`ZERO_PLUS`, the symbolic
limit ``lam -> 0+``; in the latter case weights are :class:`ParamWeight`
pairs compared lexicographically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import networkx as nx

from .semiring import (
    BOTTOM,
    DimensionError,
    Scalar,
    TropMatrix,
    TropicError,
    Vector,
    scalar,
    trop_dot,
    vector,
)


class AssumptionError(TropicError, ValueError):
    """Some node of the game has no outgoing arc."""


class StrategyError(TropicError, ValueError):
    """A strategy uses an arc that does not exist."""


@dataclass(frozen=True, order=True)
class ParamWeight:
    """The affine weight ``base + lam * t`` read at ``t -> 0+``.

    Ordering is lexicographic on ``(base, lam)``, which is the order of the
    values for all sufficiently small ``t > 0``.
    """

    base: Fraction
    lam: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "base", Fraction(self.base))
        object.__setattr__(self, "lam", Fraction(self.lam))

    def __add__(self, other):
        if isinstance(other, ParamWeight):
            return ParamWeight(self.base + other.base, self.lam + other.lam)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, ParamWeight):
            return ParamWeight(self.base - other.base, self.lam - other.lam)
        return NotImplemented

    def __neg__(self):
        return ParamWeight(-self.base, -self.lam)

    def __truediv__(self, k):
        return ParamWeight(self.base / k, self.lam / k)

    def at(self, t) -> Fraction:
        return self.base + self.lam * Fraction(t)

    def __str__(self):
        from .semiring import format_scalar

        if not self.lam:
            return format_scalar(self.base)
        return f"{format_scalar(self.base)}{'+' if self.lam > 0 else '-'}{format_scalar(abs(self.lam))}*lam"


class _ZeroPlus:
    __slots__ = ()

    def __repr__(self):
        return "ZERO_PLUS"


ZERO_PLUS = _ZeroPlus()


def _zero_like(lam):
    return ParamWeight(0) if lam is ZERO_PLUS else Fraction(0)


def _instantiate(w: ParamWeight, lam):
    return w if lam is ZERO_PLUS else w.at(lam)


def _check_lam(lam):
    if lam is ZERO_PLUS:
        return lam
    lam = scalar(lam)
    if lam is BOTTOM:
        raise ValueError("the parameter must be finite")
    return lam


# ---------------------------------------------------------------- digraphs


@dataclass(frozen=True)
class WeightedDigraph:
    """Digraph with weighted arcs; only ``counted`` nodes add to lengths."""

    nodes: tuple
    arcs: tuple  # (tail, head, weight)
    counted: frozenset

    def __init__(self, nodes: Iterable, arcs: Iterable, counted: Iterable | None = None):
        nodes = tuple(nodes)
        arcs = tuple(arcs)
        counted = frozenset(nodes if counted is None else counted)
        known = set(nodes)
        for u, v, _ in arcs:
            if u not in known or v not in known:
                raise ValueError(f"arc {u!r} -> {v!r} uses an unknown node")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "counted", counted)

    def without_node(self, node) -> "WeightedDigraph":
        return WeightedDigraph(
            [v for v in self.nodes if v != node],
            [a for a in self.arcs if node not in (a[0], a[1])],
            self.counted - {node},
        )

    def out_degrees(self) -> dict:
        deg = {v: 0 for v in self.nodes}
        for u, _, _ in self.arcs:
            deg[u] += 1
        return deg

    def to_networkx(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.nodes)
        for u, v, w in self.arcs:
            g.add_edge(u, v, weight=w)
        return g


def _contract(graph: WeightedDigraph, better) -> dict:
    """Column-to-column arcs through at most one uncounted node, keeping the
    ``better`` of parallel weights."""
    out = {}
    for u, v, w in graph.arcs:
        out.setdefault(u, []).append((v, w))
    arcs = {}

    def put(a, b, w):
        key = (a, b)
        if key not in arcs or better(w, arcs[key]):
            arcs[key] = w

    for u in graph.counted:
        for v, w in out.get(u, ()):
            if v in graph.counted:
                put(u, v, w)
                continue
            for x, w2 in out.get(v, ()):
                if x not in graph.counted:
                    raise ValueError("uncounted nodes must not be adjacent")
                put(u, x, w + w2)
    for u, v, _ in graph.arcs:
        if u not in graph.counted and v not in graph.counted:
            raise ValueError("uncounted nodes must not be adjacent")
    return arcs


def _karp_max(nodes: list, arcs: dict):
    """Maximum cycle mean of a strongly connected digraph (Karp)."""
    m = len(nodes)
    index = {v: k for k, v in enumerate(nodes)}
    inc = [[] for _ in range(m)]
    for (u, v), w in arcs.items():
        inc[index[v]].append((index[u], w))
    table = [[None] * m for _ in range(m + 1)]
    any_w = next(iter(arcs.values()))
    table[0][0] = any_w - any_w
    for k in range(1, m + 1):
        prev, cur = table[k - 1], table[k]
        for v in range(m):
            best = None
            for u, w in inc[v]:
                if prev[u] is not None:
                    cand = prev[u] + w
                    if best is None or cand > best:
                        best = cand
            cur[v] = best
    result = None
    for v in range(m):
        if table[m][v] is None:
            continue
        worst = None
        for k in range(m):
            if table[k][v] is None:
                continue
            cand = (table[m][v] - table[k][v]) / (m - k)
            if worst is None or cand < worst:
                worst = cand
        if result is None or worst > result:
            result = worst
    return result


def _component_ratios(graph: WeightedDigraph, maximize: bool):
    """Per-component optimal cycle ratios on the contracted graph.

    Returns ``(components, ratios, condensation)`` where ``ratios[k]`` is
    None for acyclic components.
    """
    if maximize:
        arcs = _contract(graph, lambda a, b: a > b)
    else:
        arcs = {k: -w for k, w in _contract(graph, lambda a, b: a < b).items()}
    g = nx.DiGraph()
    g.add_nodes_from(sorted(graph.counted, key=repr))
    g.add_edges_from(arcs)
    cond = nx.condensation(g)
    comps = [frozenset(cond.nodes[k]["members"]) for k in range(cond.number_of_nodes())]
    ratios = []
    for comp in comps:
        sub = {k: w for k, w in arcs.items() if k[0] in comp and k[1] in comp}
        if not sub:
            ratios.append(None)
            continue
        value = _karp_max(sorted(comp, key=repr), sub)
        ratios.append(value if maximize else -value)
    return comps, ratios, cond


def max_cycle_ratio(graph: WeightedDigraph):
    """Maximum of weight/length over circuits, or None if acyclic."""
    _, ratios, _ = _component_ratios(graph, True)
    found = [r for r in ratios if r is not None]
    return max(found) if found else None


def min_cycle_ratio(graph: WeightedDigraph):
    """Minimum of weight/length over circuits, or None if acyclic."""
    _, ratios, _ = _component_ratios(graph, False)
    found = [r for r in ratios if r is not None]
    return min(found) if found else None


def reachable_min_ratio(graph: WeightedDigraph) -> dict:
    """For each counted node, the least cycle ratio over the components it
    reaches (None if it reaches no circuit)."""
    comps, ratios, cond = _component_ratios(graph, False)
    out = {}
    for k, comp in enumerate(comps):
        reach = nx.descendants(cond, k) | {k}
        found = [ratios[c] for c in reach if ratios[c] is not None]
        best = min(found) if found else None
        for v in comp:
            out[v] = best
    return out


# ------------------------------------------------------------------- games


def row_node(i: int):
    return ("row", i)


def col_node(j: int):
    return ("col", j)


@dataclass(frozen=True)
class GameGraph:
    A: TropMatrix
    B: TropMatrix
    c: Vector
    d: Vector

    @property
    def p(self) -> int:
        """Number of ordinary rows; the special row node has index ``p``."""
        return self.A.p

    @property
    def n(self) -> int:
        return self.A.n

    @property
    def special(self) -> int:
        return self.A.p

    def max_weight(self, i: int, j: int) -> Scalar:
        return self.c[j] if i == self.p else self.B[i, j]

    def min_weight(self, j: int, i: int):
        """Weight of column ``j`` -> row ``i`` as a :class:`ParamWeight`."""
        if i == self.p:
            if self.d[j] is BOTTOM:
                return None
            return ParamWeight(-self.d[j], -1)
        if self.A[i, j] is BOTTOM:
            return None
        return ParamWeight(-self.A[i, j])

    def max_options(self, i: int) -> tuple:
        return tuple(j for j in range(self.n) if self.max_weight(i, j) is not BOTTOM)

    def min_options(self, j: int) -> tuple:
        return tuple(i for i in range(self.p + 1) if self.min_weight(j, i) is not None)

    def arcs(self, lam=ZERO_PLUS) -> list:
        lam = _check_lam(lam)
        out = []
        for i in range(self.p + 1):
            for j in self.max_options(i):
                out.append((row_node(i), col_node(j), _instantiate(ParamWeight(self.max_weight(i, j)), lam)))
        for j in range(self.n):
            for i in self.min_options(j):
                out.append((col_node(j), row_node(i), _instantiate(self.min_weight(j, i), lam)))
        return out

    def nodes(self) -> list:
        return [row_node(i) for i in range(self.p + 1)] + [col_node(j) for j in range(self.n)]

    def digraph(self, lam=ZERO_PLUS) -> WeightedDigraph:
        return WeightedDigraph(self.nodes(), self.arcs(lam), [col_node(j) for j in range(self.n)])

    def min_strategies(self):
        """All Min strategies in lexicographic order."""
        return itertools.product(*(self.min_options(j) for j in range(self.n)))

    def max_strategies(self):
        return itertools.product(*(self.max_options(i) for i in range(self.p + 1)))


def build_game(A, B, c, d) -> GameGraph:
    """Game of ``A x <= B x => c x <= d x``; every node needs an outgoing arc."""
    A = A if isinstance(A, TropMatrix) else TropMatrix(A)
    B = B if isinstance(B, TropMatrix) else TropMatrix(B, A.n)
    c, d = vector(c), vector(d)
    if A.shape != B.shape:
        raise DimensionError(f"A is {A.p}x{A.n} but B is {B.p}x{B.n}")
    if len(c) != A.n or len(d) != A.n:
        raise DimensionError("c and d must have one entry per column")
    game = GameGraph(A, B, c, d)
    for i in range(game.p + 1):
        if not game.max_options(i):
            name = "special row node" if i == game.p else f"row node {i}"
            raise AssumptionError(f"{name} has no arc to a column node")
    for j in range(game.n):
        if not game.min_options(j):
            raise AssumptionError(f"column node {j} has no arc to a row node")
    return game


def apply_g(game: GameGraph, lam, x: Sequence[Scalar]) -> Vector:
    """The dynamic programming operator ``g_lam`` at ``x``."""
    lam = _check_lam(lam)
    if lam is ZERO_PLUS:
        raise ValueError("apply_g needs a rational parameter")
    x = vector(x)
    if len(x) != game.n:
        raise DimensionError(f"vector of length {len(x)} for {game.n} columns")
    rows = [trop_dot(game.B.row(i), x) for i in range(game.p)] + [trop_dot(game.c, x)]
    out = []
    for j in range(game.n):
        best = None
        for i in game.min_options(j):
            cand = rows[i] + game.min_weight(j, i).at(lam)
            if best is None or cand < best:
                best = cand
        out.append(best)
    return tuple(out)


def _check_sigma(game: GameGraph, sigma) -> tuple:
    sigma = tuple(sigma)
    if len(sigma) != game.n:
        raise StrategyError(f"a Min strategy needs {game.n} entries, got {len(sigma)}")
    for j, i in enumerate(sigma):
        if i not in game.min_options(j):
            raise StrategyError(f"no arc from column node {j} to row node {i}")
    return sigma


def _check_pi(game: GameGraph, pi) -> tuple:
    pi = tuple(pi)
    if len(pi) != game.p + 1:
        raise StrategyError(f"a Max strategy needs {game.p + 1} entries, got {len(pi)}")
    for i, j in enumerate(pi):
        if j not in game.max_options(i):
            raise StrategyError(f"no arc from row node {i} to column node {j}")
    return pi


def restrict_min(game: GameGraph, sigma, lam=ZERO_PLUS) -> WeightedDigraph:
    """Keep only the arc ``j -> sigma[j]`` at each column node."""
    sigma = _check_sigma(game, sigma)
    arcs = [a for a in game.arcs(lam) if a[0][0] == "row" or sigma[a[0][1]] == a[1][1]]
    return WeightedDigraph(game.nodes(), arcs, [col_node(j) for j in range(game.n)])


def restrict_max(game: GameGraph, pi, lam=ZERO_PLUS) -> WeightedDigraph:
    """Keep only the arc ``i -> pi[i]`` at each row node."""
    pi = _check_pi(game, pi)
    arcs = [a for a in game.arcs(lam) if a[0][0] == "col" or pi[a[0][1]] == a[1][1]]
    return WeightedDigraph(game.nodes(), arcs, [col_node(j) for j in range(game.n)])


def optimal_min_strategy(game: GameGraph, lam=ZERO_PLUS):
    """Lexicographically first Min strategy minimizing the maximal cycle
    ratio; returns ``(sigma, value)``."""
    best = None
    for sigma in game.min_strategies():
        value = max_cycle_ratio(restrict_min(game, sigma, lam))
        if best is None or value < best[1]:
            best = (sigma, value)
    return best


def max_strategy_cycle_time(game: GameGraph, pi, lam=ZERO_PLUS) -> tuple:
    """Cycle time of the one-player game left once Max commits to ``pi``."""
    per_node = reachable_min_ratio(restrict_max(game, pi, lam))
    return tuple(per_node[col_node(j)] for j in range(game.n))


def _cycle_time_strategies(game: GameGraph, lam) -> tuple:
    best = None
    for pi in game.max_strategies():
        chi = max_strategy_cycle_time(game, pi, lam)
        best = chi if best is None else tuple(max(a, b) for a, b in zip(best, chi))
    return best


def _integer_weights(game: GameGraph, lam: Fraction):
    vals = [w for w in game.A.finite_values() + game.B.finite_values()]
    vals += [v for v in game.c + game.d if v is not BOTTOM] + [lam]
    scale = lcm(*(v.denominator for v in vals))
    row_arcs = [[(j, int(game.max_weight(i, j) * scale)) for j in game.max_options(i)] for i in range(game.p + 1)]
    col_arcs = [[(i, int(game.min_weight(j, i).at(lam) * scale)) for i in game.min_options(j)] for j in range(game.n)]
    weights = [w for arcs in row_arcs + col_arcs for _, w in arcs]
    return scale, row_arcs, col_arcs, max((abs(w) for w in weights), default=0)


def iteration_steps(game: GameGraph, W: int) -> int:
    """Steps after which ``g^k(0)/k`` is within ``1/(2 n^2)`` of the cycle
    time: the error is at most ``2 N W / k`` with ``N`` the node count."""
    nodes = game.n + game.p + 1
    return 4 * nodes * max(W, 1) * game.n ** 2 + 1


def _cycle_time_iteration(game: GameGraph, lam: Fraction) -> tuple:
    scale, row_arcs, col_arcs, W = _integer_weights(game, lam)
    steps = iteration_steps(game, W)
    x = [0] * game.n
    for _ in range(steps):
        rows = [max(w + x[j] for j, w in arcs) for arcs in row_arcs]
        x = [min(w + rows[i] for i, w in arcs) for arcs in col_arcs]
    return tuple(Fraction(v, steps).limit_denominator(game.n) / scale for v in x)


def cycle_time(game: GameGraph, lam=ZERO_PLUS, engine: str = "strategies") -> tuple:
    """The vector ``chi(g_lam)``: the best Max strategy per column node of the
    least cycle ratio reachable from it."""
    lam = _check_lam(lam)
    if engine == "strategies":
        return _cycle_time_strategies(game, lam)
    if engine == "iteration":
        if lam is ZERO_PLUS:
            raise ValueError("value iteration needs a rational parameter")
        return _cycle_time_iteration(game, lam)
    raise ValueError(f"unknown engine {engine!r}")


def rho(game: GameGraph, lam=ZERO_PLUS, engine: str = "strategies"):
    """Spectral radius: the least, over Min strategies, maximal cycle ratio."""
    lam = _check_lam(lam)
    if engine == "strategies":
        return optimal_min_strategy(game, lam)[1]
    return max(cycle_time(game, lam, engine))


def rho_dual(game: GameGraph, lam=ZERO_PLUS):
    """Spectral radius computed over Max strategies instead."""
    lam = _check_lam(lam)
    return max(max(max_strategy_cycle_time(game, pi, lam)) for pi in game.max_strategies())


def winning_states(game: GameGraph, lam=ZERO_PLUS, engine: str = "strategies") -> frozenset:
    """Column nodes with nonnegative cycle time."""
    lam = _check_lam(lam)
    zero = _zero_like(lam)
    return frozenset(j for j, v in enumerate(cycle_time(game, lam, engine)) if v >= zero)


def sub_eigenvector(game: GameGraph, lam, mu) -> Vector:
    """A finite ``y`` with ``g_lam(y) <= mu + y``, for any ``mu`` above the
    spectral radius, built from an optimal Min strategy."""
    lam, mu = _check_lam(lam), scalar(mu)
    if lam is ZERO_PLUS:
        raise ValueError("sub_eigenvector needs a rational parameter")
    sigma, value = optimal_min_strategy(game, lam)
    if not mu > value:
        raise ValueError("mu must exceed the spectral radius")
    n = game.n
    # one step of g^sigma as a max-plus matrix, shifted by -mu
    W = [[BOTTOM] * n for _ in range(n)]
    for j in range(n):
        i = sigma[j]
        base = game.min_weight(j, i).at(lam) - mu
        for k in game.max_options(i):
            W[j][k] = base + game.max_weight(i, k)
    # longest paths (all circuits are negative), including the empty path
    y = [Fraction(0)] * n
    for _ in range(n):
        y = [max([Fraction(0)] + [W[j][k] + y[k] for k in range(n) if W[j][k] is not BOTTOM]) for j in range(n)]
    return tuple(y)

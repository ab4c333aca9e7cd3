"""Directed hypergraphs and the hypergraph criteria for extremality."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .cone import GeneratorCone, Inequality, ith_polar_membership, ith_polar_system
from .semiring import (
    BOTTOM,
    DimensionError,
    Scalar,
    TropicError,
    argmax_terms,
    is_bottom_vector,
    trop_dot,
    vector,
)


class NotInConeError(TropicError, ValueError):
    """The point violates the inequality system it is tested against."""


@dataclass(frozen=True)
class DirectedHypergraph:
    nodes: frozenset
    hyperedges: tuple  # (tail, head) pairs of frozensets

    def __init__(self, nodes: Iterable, hyperedges: Iterable = ()):
        nodes = frozenset(nodes)
        edges = tuple((frozenset(t), frozenset(h)) for t, h in hyperedges)
        for t, h in edges:
            if not (t <= nodes and h <= nodes):
                raise ValueError(f"hyperedge {sorted(t)} -> {sorted(h)} uses unknown nodes")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "hyperedges", edges)

    def with_edge(self, tail, head) -> "DirectedHypergraph":
        return DirectedHypergraph(self.nodes, self.hyperedges + ((tail, head),))


@dataclass(frozen=True)
class TangentHypergraph:
    """Tangent hypergraph of a system at a point; ``rows[e]`` is the index of
    the inequality that produced hyperedge ``e``."""

    hypergraph: DirectedHypergraph
    rows: tuple


def reachable_set(H: DirectedHypergraph, h) -> frozenset:
    """Least fixed point: a hyperedge fires once its whole tail is reached."""
    if h not in H.nodes:
        raise KeyError(f"unknown node {h!r}")
    reached = {h}
    pending = list(H.hyperedges)
    changed = True
    while changed:
        changed = False
        rest = []
        for tail, head in pending:
            if tail <= reached:
                if not head <= reached:
                    reached |= head
                    changed = True
            else:
                rest.append((tail, head))
        pending = rest
    return frozenset(reached)


def strongly_connected_components(H: DirectedHypergraph) -> list:
    reach = {v: reachable_set(H, v) for v in H.nodes}
    seen = set()
    comps = []
    for v in sorted(H.nodes):
        if v in seen:
            continue
        comp = frozenset(u for u in reach[v] if v in reach[u])
        seen |= comp
        comps.append(comp)
    return comps


def smallest_scc(H: DirectedHypergraph):
    """The component reachable from every node, or None.

    Component C1 is below C2 when some node of C1 is reachable from a node
    of C2, so the smallest one is the set of nodes reachable from all nodes.
    """
    if not H.nodes:
        return None
    reach = {v: reachable_set(H, v) for v in H.nodes}
    common = frozenset.intersection(*reach.values())
    if not common:
        return None
    v = min(common)
    return frozenset(u for u in reach[v] if v in reach[u])


def tangent_hypergraph(system: Sequence[Inequality], y: Sequence[Scalar]) -> TangentHypergraph:
    y = vector(y)
    if is_bottom_vector(y):
        raise ValueError("the tangent hypergraph is defined at non-zero points only")
    nodes = frozenset(k for k, v in enumerate(y) if v is not BOTTOM)
    edges, rows = [], []
    for r, q in enumerate(system):
        if q.n != len(y):
            raise DimensionError(f"inequality {r} has dimension {q.n}, point has {len(y)}")
        lhs = trop_dot(q.a, y)
        if lhs is BOTTOM or lhs != trop_dot(q.b, y):
            continue
        edges.append((argmax_terms(q.b, y), argmax_terms(q.a, y)))
        rows.append(r)
    return TangentHypergraph(DirectedHypergraph(nodes, edges), tuple(rows))


def is_extreme_general(system: Sequence[Inequality], y: Sequence[Scalar]) -> bool:
    """Extremality of ``y`` in ``{x : a^r x <= b^r x}`` via the tangent
    hypergraph; raises :class:`NotInConeError` if ``y`` is infeasible."""
    y = vector(y)
    for r, q in enumerate(system):
        if not q.satisfied_by(y):
            raise NotInConeError(f"point violates inequality {r}")
    return smallest_scc(tangent_hypergraph(system, y).hypergraph) is not None


def star_test(K: GeneratorCone, i: int, b: Sequence[Scalar]) -> bool:
    """Extremality of ``b`` in the i-th polar of ``K`` (requires b_i finite):
    every h != i with b_h finite must be the unique argmax of a tight row."""
    b = vector(b)
    if b[i] is BOTTOM:
        raise ValueError("star test needs a finite i-th coordinate")
    if not ith_polar_membership(K, i, b):
        raise NotInConeError("vector is not in the i-th polar")
    rest = b[:i] + (BOTTOM,) + b[i + 1:]
    witnessed = set()
    for row in K.G.rows:
        lhs = b[i] + row[i]
        if lhs is BOTTOM or trop_dot(rest, row) != lhs:
            continue
        arg = argmax_terms(rest, row)
        if len(arg) == 1:
            witnessed |= arg
    needed = {h for h, v in enumerate(b) if h != i and v is not BOTTOM}
    return needed <= witnessed


def ith_polar_extreme_check(K: GeneratorCone, i: int, b: Sequence[Scalar]) -> bool:
    """Extremality in the i-th polar through the general criterion."""
    return is_extreme_general(ith_polar_system(K, i), b)

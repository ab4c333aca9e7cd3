"""Benchmark families: cyclic cones, block covers, hypergraph transversals."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .cone import GeneratorCone, Inequality, minimal_elements, trivial_inequalities
from .semiring import BOTTOM, ONE, TropMatrix, TropicError, scalar


def _increasing(t: Sequence) -> tuple:
    t = tuple(scalar(v) for v in t)
    if not t:
        raise ValueError("t must be nonempty")
    if any(v is BOTTOM for v in t):
        raise ValueError("t must be finite")
    if any(a >= b for a, b in zip(t, t[1:])):
        raise ValueError("t must be strictly increasing")
    return t


def cyclic_cone(t: Sequence, n: int) -> GeneratorCone:
    """Rows ``(0, t_k, 2 t_k, ..., (n-1) t_k)``."""
    t = _increasing(t)
    if n < 1:
        raise ValueError("n must be positive")
    return GeneratorCone(TropMatrix([[tk * j for j in range(n)] for tk in t], n))


def cyclic_polar_count(p: int, n: int) -> int:
    """Number of extreme polar rays of a cyclic cone with p generators."""
    if p < 1 or n < 1:
        raise ValueError("p and n must be positive")
    return 2 * n + sum((p - 1) * (i - 1) * (n - i) + n - 1 for i in range(1, n + 1))


def cyclic_polar_inequalities(t: Sequence, n: int) -> list:
    """Closed-form extreme inequalities of ``cyclic_cone(t, n)``.

    For each target ``i``: one-term inequalities bounding ``x_i`` by each
    other ``x_j`` (slope ``t_p`` to the left, ``t_1`` to the right), and
    two-term ones with slopes ``t_m``, ``t_{m+1}`` on either side of ``i``.
    """
    t = _increasing(t)
    p = len(t)
    out = trivial_inequalities(n)
    seen = set(out)
    for i in range(n):
        for j in range(n):
            if j == i:
                continue
            b = [BOTTOM] * n
            b[j] = (t[-1] if j < i else t[0]) * (i - j)
            q = Inequality.type_i(i, b)
            if q not in seen:
                seen.add(q)
                out.append(q)
        for m in range(p - 1):
            for j in range(i):
                for k in range(i + 1, n):
                    b = [BOTTOM] * n
                    b[j] = t[m] * (i - j)
                    b[k] = t[m + 1] * (i - k)
                    q = Inequality.type_i(i, b)
                    if q not in seen:
                        seen.add(q)
                        out.append(q)
    return out


def block_example(p: int, q: int) -> GeneratorCone:
    """``p`` generators over ``p q + 1`` coordinates: row ``k`` holds
    ``q+3, ..., 4`` on its own block of ``q`` columns, 1 elsewhere, and 0 in
    the last column, so every column maximum is attained on a single row."""
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive")
    n = p * q + 1
    rows = []
    for k in range(p):
        row = [Fraction(1)] * (n - 1) + [ONE]
        for s in range(q):
            row[k * q + s] = Fraction(q + 3 - s)
        rows.append(row)
    return GeneratorCone(TropMatrix(rows, n))


def _check_edges(num_nodes: int, edges: Iterable) -> list:
    edges = [frozenset(e) for e in edges]
    for r, e in enumerate(edges):
        if not e:
            raise ValueError(f"hyperedge {r} is empty, so no transversal exists")
        bad = [v for v in e if not 0 <= v < num_nodes]
        if bad:
            raise ValueError(f"hyperedge {r} uses unknown node {bad[0]}")
    return edges


def transversal_matrix(num_nodes: int, edges: Iterable) -> GeneratorCone:
    """Rows ``[F_r, 0]`` with ``F_rj = 0`` if node ``j`` lies in edge ``r`` and
    BOTTOM otherwise.  Every node must lie in some edge."""
    edges = _check_edges(num_nodes, edges)
    used = set().union(*edges) if edges else set()
    missing = sorted(set(range(num_nodes)) - used)
    if missing:
        raise ValueError(f"node {missing[0]} lies in no hyperedge")
    rows = [[ONE if j in e else BOTTOM for j in range(num_nodes)] + [ONE] for e in edges]
    return GeneratorCone(TropMatrix(rows, num_nodes + 1))


def minimal_transversals(num_nodes: int, edges: Iterable) -> list:
    """Minimal hitting sets, read off the minimal elements of ``Z_n`` for
    the transversal matrix; sorted by size, then lexicographically."""
    edges = _check_edges(num_nodes, edges)
    if not edges:
        return [frozenset()]
    used = sorted(set().union(*edges))
    relabel = {v: k for k, v in enumerate(used)}
    K = transversal_matrix(len(used), [{relabel[v] for v in e} for e in edges])
    out = []
    for z in minimal_elements(K, len(used)):
        if any(v is not BOTTOM and v != ONE for v in z):
            raise TropicError(f"minimal element {z} has entries outside {{0, -inf}}")
        out.append(frozenset(used[k] for k, v in enumerate(z) if v is not BOTTOM))
    return sorted(out, key=lambda s: (len(s), sorted(s)))

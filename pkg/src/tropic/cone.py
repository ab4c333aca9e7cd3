"""Tropical polyhedral cones given by generators, and their polars.

Indices are 0-based throughout the API.  A cone is the row space of a
p x n matrix ``G``; a valid inequality ``a x <= b x`` is one satisfied by
every row of ``G``.  The extreme inequalities of type ``i`` are obtained
from the minimal covers of ``S_i`` by the level sets ``L_j(lam)``.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .semiring import (
    BOTTOM,
    ONE,
    DimensionError,
    Scalar,
    TropMatrix,
    TropicError,
    Vector,
    bottom_vector,
    is_bottom_vector,
    proportional,
    trop_dot,
    unit_vector,
    vector,
)


class ConeError(TropicError, ValueError):
    pass


@dataclass(frozen=True)
class GeneratorCone:
    """Row space of ``G``; no column of ``G`` may be identically BOTTOM."""

    G: TropMatrix

    def __post_init__(self):
        if not isinstance(self.G, TropMatrix):
            object.__setattr__(self, "G", TropMatrix(self.G))
        for j in range(self.G.n):
            if is_bottom_vector(self.G.col(j)):
                raise ConeError(f"column {j} of the generator matrix is identically -inf")

    @property
    def p(self) -> int:
        return self.G.p

    @property
    def n(self) -> int:
        return self.G.n

    def scaled(self, shifts: Sequence[Scalar]) -> "GeneratorCone":
        """Same cone, each generator r shifted by ``shifts[r]`` (finite)."""
        return GeneratorCone(TropMatrix(
            [[s + v for v in row] for s, row in zip(shifts, self.G.rows)], self.n))


@dataclass(frozen=True)
class Inequality:
    """The tropical inequality ``a x <= b x``."""

    a: Vector
    b: Vector

    def __post_init__(self):
        object.__setattr__(self, "a", vector(self.a))
        object.__setattr__(self, "b", vector(self.b))
        if len(self.a) != len(self.b):
            raise DimensionError("both sides of an inequality need the same length")

    @property
    def n(self) -> int:
        return len(self.a)

    @classmethod
    def type_i(cls, i: int, b: Sequence[Scalar]) -> "Inequality":
        """``x_i <= (+)_j b_j x_j``; ``b_i`` must be BOTTOM."""
        b = vector(b)
        if b[i] is not BOTTOM:
            raise ValueError("a type-i inequality has no x_i term on the right")
        return cls(unit_vector(len(b), i), b)

    def satisfied_by(self, x: Sequence[Scalar]) -> bool:
        return trop_dot(self.a, x) <= trop_dot(self.b, x)

    def scaled(self, lam: Scalar) -> "Inequality":
        return Inequality(tuple(lam + v for v in self.a), tuple(lam + v for v in self.b))

    def normalized(self) -> "Inequality":
        """Representative with the first finite coefficient of ``a`` (or of
        ``b`` when ``a`` is all BOTTOM) equal to 0."""
        for v in self.a + self.b:
            if v is not BOTTOM:
                return self.scaled(-v)
        return self

    def is_proportional(self, other: "Inequality") -> bool:
        return proportional(self.a + self.b, other.a + other.b)

    def classify(self) -> tuple:
        """Return ``(kind, i)`` with kind one of ``'bottom'`` (x_i >= -inf),
        ``'identity'`` (x_i <= x_i), ``'type'`` (type i) or ``'general'``."""
        a_supp = [k for k, v in enumerate(self.a) if v is not BOTTOM]
        b_supp = [k for k, v in enumerate(self.b) if v is not BOTTOM]
        if not a_supp and len(b_supp) == 1:
            return ("bottom", b_supp[0])
        if len(a_supp) == 1:
            i = a_supp[0]
            if b_supp == [i] and self.a[i] == self.b[i]:
                return ("identity", i)
            if b_supp and i not in b_supp:
                return ("type", i)
        return ("general", None)

    def is_trivial(self) -> bool:
        return self.classify()[0] in ("bottom", "identity")

    def sort_key(self):
        return (self.a, self.b)


InequalitySystem = list


def system_matrices(system: Sequence[Inequality], n: int | None = None):
    """Stack a system into the pair (A, B) of p x n matrices."""
    if n is None:
        if not system:
            raise DimensionError("empty system without explicit dimension")
        n = system[0].n
    return (TropMatrix([q.a for q in system], n), TropMatrix([q.b for q in system], n))


def trivial_inequalities(n: int) -> list:
    out = []
    for i in range(n):
        out.append(Inequality(bottom_vector(n), unit_vector(n, i)))
        out.append(Inequality(unit_vector(n, i), unit_vector(n, i)))
    return out


# ---------------------------------------------------------------- membership

def cone_membership(K: GeneratorCone, x: Sequence[Scalar]) -> bool:
    """Residuation test: is ``x`` a tropical combination of the rows of G?"""
    x = vector(x)
    if len(x) != K.n:
        raise DimensionError(f"point of length {len(x)} for a cone in dimension {K.n}")
    best = bottom_vector(K.n)
    for row in K.G.rows:
        coeff = None
        for gj, xj in zip(row, x):
            if gj is BOTTOM:
                continue
            if xj is BOTTOM:
                coeff = BOTTOM
                break
            cand = xj - gj
            if coeff is None or cand < coeff:
                coeff = cand
        if coeff is None or coeff is BOTTOM:
            continue
        best = tuple(max(bv, coeff + gv) for bv, gv in zip(best, row))
    return best == x


def polar_membership(K: GeneratorCone, ineq: Inequality) -> bool:
    """``G a <= G b`` componentwise."""
    if ineq.n != K.n:
        raise DimensionError(f"inequality in dimension {ineq.n} for a cone in dimension {K.n}")
    return all(ineq.satisfied_by(row) for row in K.G.rows)


def ith_polar_membership(K: GeneratorCone, i: int, b: Sequence[Scalar]) -> bool:
    b = vector(b)
    if len(b) != K.n:
        raise DimensionError(f"vector of length {len(b)} for a cone in dimension {K.n}")
    _check_index(K, i)
    for row in K.G.rows:
        lhs = b[i] + row[i]
        rhs = trop_dot(b[:i] + (BOTTOM,) + b[i + 1:], row)
        if lhs > rhs:
            return False
    return True


def ith_polar_system(K: GeneratorCone, i: int) -> list:
    """The inequalities ``G_ki x_i <= (+)_{j != i} G_kj x_j`` cutting out the
    i-th polar (in the variable ``b``)."""
    _check_index(K, i)
    out = []
    n = K.n
    for row in K.G.rows:
        a = tuple(row[i] if j == i else BOTTOM for j in range(n))
        b = tuple(BOTTOM if j == i else row[j] for j in range(n))
        out.append(Inequality(a, b))
    return out


def _check_index(K, i):
    if not 0 <= i < K.n:
        raise DimensionError(f"index {i} out of range for dimension {K.n}")


# ------------------------------------------------------------- level chains

@dataclass(frozen=True)
class LevelChain:
    """Level-set chains for the target column ``i``.

    ``chains[j]`` lists ``(level_set, threshold)`` pairs in increasing order,
    starting with ``(frozenset(), BOTTOM)``; it is empty for ``j == i``.
    """

    i: int
    n: int
    S: frozenset
    chains: tuple

    def others(self) -> list:
        return [j for j in range(self.n) if j != self.i]

    def levels(self, j: int) -> list:
        return [lv for lv, _ in self.chains[j]]

    def thresholds(self, j: int) -> list:
        return [w for _, w in self.chains[j]]


@dataclass(frozen=True)
class MinimalCover:
    """Selected chain position (0-based, 0 = empty level) for each j != i."""

    i: int
    selection: tuple  # pairs (j, r_j)

    def as_dict(self) -> dict:
        return dict(self.selection)


def build_level_chains(K: GeneratorCone, i: int) -> LevelChain:
    _check_index(K, i)
    G = K.G
    S = frozenset(k for k in range(G.p) if G[k, i] is not BOTTOM)
    chains = []
    for j in range(G.n):
        if j == i:
            chains.append(())
            continue
        diffs = {}
        for k in S:
            if G[k, j] is not BOTTOM:
                diffs.setdefault(G[k, i] - G[k, j], set()).add(k)
        chain = [(frozenset(), BOTTOM)]
        current = set()
        for w in sorted(diffs):
            current |= diffs[w]
            chain.append((frozenset(current), w))
        chains.append(tuple(chain))
    return LevelChain(i, G.n, S, tuple(chains))


def enumerate_minimal_covers(chain: LevelChain) -> list:
    """All minimal covers of ``S_i``, by backtracking over the columns.

    Branches are cut when the remaining columns cannot complete the cover,
    or when some chosen non-empty level already has all its fresh rows
    (those not in the previous level) covered by the other choices: adding
    more sets cannot restore minimality.
    """
    cols = chain.others()
    S = chain.S
    levels = [chain.levels(j) for j in cols]
    # union of the top levels of columns pos.. end
    reach = [frozenset()] * (len(cols) + 1)
    for pos in range(len(cols) - 1, -1, -1):
        reach[pos] = reach[pos + 1] | levels[pos][-1]
    if not S <= reach[0]:
        return []

    found = []
    chosen = []  # r per column so far

    def still_minimal() -> bool:
        for a, r in enumerate(chosen):
            if r == 0:
                continue
            fresh = levels[a][r] - levels[a][r - 1]
            others = set()
            for b, rb in enumerate(chosen):
                if b != a:
                    others |= levels[b][rb]
            if fresh <= others:
                return False
        return True

    def rec(pos: int, covered: frozenset):
        if not S <= covered | reach[pos]:
            return
        if pos == len(cols):
            if _is_minimal_cover(levels, chosen, S):
                found.append(MinimalCover(chain.i, tuple(zip(cols, chosen))))
            return
        for r in range(len(levels[pos])):
            chosen.append(r)
            if still_minimal():
                rec(pos + 1, covered | levels[pos][r])
            chosen.pop()

    rec(0, frozenset())
    return found


def _is_minimal_cover(levels, chosen, S) -> bool:
    union = set()
    for a, r in enumerate(chosen):
        union |= levels[a][r]
    if not S <= union:
        return False
    for a, r in enumerate(chosen):
        if r == 0:
            continue
        rest = set(levels[a][r - 1])
        for b, rb in enumerate(chosen):
            if b != a:
                rest |= levels[b][rb]
        if S <= rest:
            return False
    return True


def cover_to_vector(chain: LevelChain, cover: MinimalCover) -> Vector:
    """The minimal element z of Z_i (indexed by j != i, in increasing j)."""
    sel = cover.as_dict()
    return tuple(chain.chains[j][sel[j]][1] for j in chain.others())


def insert_target(chain: LevelChain, z: Sequence[Scalar]) -> Vector:
    """Embed z (length n-1) as the right-hand side b of a type-i inequality."""
    z = list(z)
    return tuple(z[:chain.i]) + (BOTTOM,) + tuple(z[chain.i:])


def minimal_elements(K: GeneratorCone, i: int) -> list:
    chain = build_level_chains(K, i)
    zs = [cover_to_vector(chain, c) for c in enumerate_minimal_covers(chain)]
    return sorted(zs)


def type_i_extreme(K: GeneratorCone, i: int) -> list:
    chain = build_level_chains(K, i)
    out = [Inequality.type_i(i, insert_target(chain, z)) for z in minimal_elements(K, i)]
    return out


def ith_polar_extreme(K: GeneratorCone, i: int) -> list:
    """Extreme inequalities coming from the i-th polar: the type-i ones
    followed by ``x_j >= -inf`` for every ``j != i``."""
    n = K.n
    out = type_i_extreme(K, i)
    out += [Inequality(bottom_vector(n), unit_vector(n, j)) for j in range(n) if j != i]
    return out


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("TROPIC_THREADS", "1")))
    except ValueError:
        return 1


def enumerate_polar_extreme(K: GeneratorCone, i: int | None = None) -> list:
    """A system of representatives of the extreme inequalities of ``K``.

    With ``i`` given, only the extreme rays of the i-th polar are listed
    (see :func:`ith_polar_extreme`).  Otherwise: the 2n trivial inequalities
    followed by the type-i ones for i = 0..n-1, each block sorted by z.
    """
    if i is not None:
        _check_index(K, i)
        return ith_polar_extreme(K, i)
    workers = _threads()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(lambda t: type_i_extreme(K, t), range(K.n)))
    else:
        blocks = [type_i_extreme(K, t) for t in range(K.n)]
    out = trivial_inequalities(K.n)
    for block in blocks:
        out.extend(block)
    return out


def same_up_to_scaling(xs: Iterable[Inequality], ys: Iterable[Inequality]) -> bool:
    return {q.normalized() for q in xs} == {q.normalized() for q in ys}


def with_unit_generators(K: GeneratorCone, i: int) -> GeneratorCone:
    """Add the generators e^j, j != i (reverse reduction between the polar
    and the i-th polar)."""
    n = K.n
    extra = [unit_vector(n, j) for j in range(n) if j != i]
    return GeneratorCone(TropMatrix(list(K.G.rows) + extra, n))


def extreme_bound(K: GeneratorCone, i: int) -> Scalar:
    """``(n-1) * max M_st`` for the two-sided system defining the i-th polar."""
    A, B = system_matrices(ith_polar_system(K, i), K.n)
    return genex_bound(A, B)


def genex_bound(A: TropMatrix, B: TropMatrix):
    """Bound ``M`` on the spread of finite entries of extreme vectors of
    ``{x : A x <= B x}``."""
    best = ONE
    for ra, rb in zip(A.rows, B.rows):
        fa = [v for v in ra if v is not BOTTOM]
        fb = [v for v in rb if v is not BOTTOM]
        if fa and fb:
            best = max(best, max(fa) - min(fb), max(fb) - min(fa))
    return (A.n - 1) * best

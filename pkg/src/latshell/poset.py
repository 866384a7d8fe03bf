"""Finite bounded posets: cover relations, intervals, chains, gradedness,
and the order complex.

Elements are opaque string ids.  Internally every element is mapped to a
dense index into the input order, and all order data lives in bitmask rows
(`up[i]` holds the up-set of element i, including i itself).  Input order is
the tie-breaking linear extension used by every enumeration in the library,
so all outputs are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    CycleDetected,
    DuplicateElement,
    NotComparable,
    RedundantCover,
    Unbounded,
    UnknownElement,
)


def bits(mask: int):
    """Iterate set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Chain:
    """A strictly increasing sequence of elements of some poset."""

    elements: tuple[str, ...]
    maximal: bool = False

    def __len__(self):
        return len(self.elements)

    @property
    def length(self) -> int:
        """Number of covers (one less than the number of elements)."""
        return len(self.elements) - 1


class Poset:
    """Immutable finite poset given by elements and cover relations."""

    __slots__ = ("elements", "index", "n", "up", "down", "cover_up", "cover_down",
                 "bottom", "top")

    def __init__(self, elements, up, cover_up, bottom, top):
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.n = len(self.elements)
        self.up = tuple(up)
        self.down = tuple(self._transpose(up, self.n))
        self.cover_up = tuple(cover_up)
        self.cover_down = tuple(self._transpose(cover_up, self.n))
        self.bottom = bottom
        self.top = top

    @staticmethod
    def _transpose(rows, n):
        out = [0] * n
        for i, row in enumerate(rows):
            for j in bits(row):
                out[j] |= 1 << i
        return out

    # -- basic queries ----------------------------------------------------

    def idx(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownElement(repr(name)) from None

    def leq(self, x: str, y: str) -> bool:
        return bool(self.up[self.idx(x)] >> self.idx(y) & 1)

    def leq_idx(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    @property
    def is_bounded(self) -> bool:
        return self.bottom is not None and self.top is not None

    def require_bounded(self):
        if not self.is_bounded:
            raise Unbounded("poset has no unique bottom/top")

    def covers(self) -> list[tuple[str, str]]:
        """Canonical cover list, ordered by (lower index, upper index)."""
        out = []
        for i in range(self.n):
            for j in bits(self.cover_up[i]):
                out.append((self.elements[i], self.elements[j]))
        return out

    def leq_pairs(self) -> int:
        """Number of ordered pairs (x, y) with x <= y."""
        return sum(row.bit_count() for row in self.up)

    def dual(self) -> "Poset":
        """The order dual (all relations reversed)."""
        return Poset(self.elements, self.down, self.cover_down, self.top, self.bottom)

    def __repr__(self):
        return f"Poset({self.n} elements, {sum(r.bit_count() for r in self.cover_up)} covers)"

    def __eq__(self, other):
        return (isinstance(other, Poset) and self.elements == other.elements
                and self.up == other.up)

    def __hash__(self):
        return hash((self.elements, self.up))

    # -- chain machinery --------------------------------------------------

    def maximal_chains_idx(self) -> list[tuple[int, ...]]:
        """All maximal bottom-top chains as index tuples, in DFS order."""
        self.require_bounded()
        out: list[tuple[int, ...]] = []
        top = self.top
        stack = [self.bottom]

        def dfs(i):
            if i == top:
                out.append(tuple(stack))
                return
            for j in bits(self.cover_up[i]):
                stack.append(j)
                dfs(j)
                stack.pop()

        dfs(self.bottom)
        return out

    def min_max_chain_covers(self) -> tuple[int, int]:
        """(min, max) number of covers over all maximal chains, without
        enumerating the chains."""
        self.require_bounded()
        lo = [0] * self.n
        hi = [0] * self.n
        for i in reversed(self._topo()):
            succ = list(bits(self.cover_up[i]))
            if succ:
                lo[i] = 1 + min(lo[j] for j in succ)
                hi[i] = 1 + max(hi[j] for j in succ)
        return lo[self.bottom], hi[self.bottom]

    def _topo(self) -> list[int]:
        indeg = [self.cover_down[i].bit_count() for i in range(self.n)]
        order = [i for i in range(self.n) if indeg[i] == 0]
        for i in order:
            for j in bits(self.cover_up[i]):
                indeg[j] -= 1
                if indeg[j] == 0:
                    order.append(j)
        return order


def build_poset(elements, covers) -> Poset:
    """Build a poset from element ids and cover pairs.

    The transitive closure is computed from the covers; covers are then
    recomputed canonically, and any input pair that is not a genuine cover
    (it has an intermediate element, or repeats) is rejected.
    """
    elements = list(elements)
    seen = set()
    for e in elements:
        if e in seen:
            raise DuplicateElement(repr(e))
        seen.add(e)
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)

    adj = [0] * n
    seen_pairs = set()
    for x, y in covers:
        if x not in index:
            raise UnknownElement(repr(x))
        if y not in index:
            raise UnknownElement(repr(y))
        if x == y:
            raise CycleDetected(f"self-cover on {x!r}")
        if (x, y) in seen_pairs:
            raise RedundantCover(x, y, reason="is listed twice")
        seen_pairs.add((x, y))
        adj[index[x]] |= 1 << index[y]

    # Kahn toposort doubles as the cycle check.
    indeg = [0] * n
    for i in range(n):
        for j in bits(adj[i]):
            indeg[j] += 1
    order = [i for i in range(n) if indeg[i] == 0]
    for i in order:
        for j in bits(adj[i]):
            indeg[j] -= 1
            if indeg[j] == 0:
                order.append(j)
    if len(order) != n:
        stuck = [elements[i] for i in range(n) if indeg[i] > 0]
        raise CycleDetected(f"cover relation has a cycle through {stuck}")

    up = [0] * n
    for i in reversed(order):
        mask = 1 << i
        for j in bits(adj[i]):
            mask |= up[j]
        up[i] = mask

    # Canonical covers: strict successors not reachable through another one.
    cover_up = [0] * n
    for i in range(n):
        strict = up[i] & ~(1 << i)
        via = 0
        for j in bits(strict):
            via |= up[j] & ~(1 << j)
        cover_up[i] = strict & ~via

    for x, y in seen_pairs:
        if not (cover_up[index[x]] >> index[y]) & 1:
            raise RedundantCover(x, y)

    # bottom: unique element below everything; top: unique element above all.
    down = Poset._transpose(up, n)
    bottoms = [i for i in range(n) if up[i].bit_count() == n]
    tops = [i for i in range(n) if down[i].bit_count() == n]
    bottom = bottoms[0] if len(bottoms) == 1 else None
    top = tops[0] if len(tops) == 1 else None
    return Poset(elements, up, cover_up, bottom, top)


def interval(P: Poset, x: str, y: str) -> Poset:
    """The closed interval [x, y] as an induced subposet (bounded by x, y)."""
    i, j = P.idx(x), P.idx(y)
    if not P.leq_idx(i, j):
        raise NotComparable(f"{x!r} is not below {y!r}")
    members = P.up[i] & P.down[j]
    sub = [k for k in range(P.n) if (members >> k) & 1]
    pos = {k: t for t, k in enumerate(sub)}
    m = len(sub)
    up = [0] * m
    cov = [0] * m
    for t, k in enumerate(sub):
        for j2 in bits(P.up[k] & members):
            up[t] |= 1 << pos[j2]
        # covers of P inside [x, y] are exactly the covers of the interval
        for j2 in bits(P.cover_up[k] & members):
            cov[t] |= 1 << pos[j2]
    return Poset([P.elements[k] for k in sub], up, cov, pos[i], pos[j])


def maximal_chains(P: Poset) -> list[Chain]:
    """All maximal bottom-top chains, in deterministic DFS order."""
    return [Chain(tuple(P.elements[i] for i in c), maximal=True)
            for c in P.maximal_chains_idx()]


@dataclass(frozen=True)
class GradedVerdict:
    graded: bool
    rank: dict | None
    witness: tuple[Chain, Chain] | None


def is_graded(P: Poset) -> GradedVerdict:
    """Check that all maximal chains have equal length.

    Returns a rank function on success, or two maximal chains of different
    lengths as a witness.
    """
    P.require_bounded()
    lo = [None] * P.n
    hi = [None] * P.n
    lo_par = [None] * P.n
    hi_par = [None] * P.n
    lo[P.bottom] = hi[P.bottom] = 0
    bad = None
    for i in P._topo():
        for j in bits(P.cover_up[i]):
            if lo[j] is None or lo[i] + 1 < lo[j]:
                lo[j] = lo[i] + 1
                lo_par[j] = i
            if hi[j] is None or hi[i] + 1 > hi[j]:
                hi[j] = hi[i] + 1
                hi_par[j] = i
            if bad is None and lo[j] != hi[j]:
                bad = j
    if bad is None:
        rank = {P.elements[i]: lo[i] for i in range(P.n)}
        return GradedVerdict(True, rank, None)

    def path(parent, end):
        seq = [end]
        while parent[seq[-1]] is not None:
            seq.append(parent[seq[-1]])
        return list(reversed(seq))

    def extend_to_top(seq):
        while seq[-1] != P.top:
            seq.append(next(bits(P.cover_up[seq[-1]])))
        return Chain(tuple(P.elements[k] for k in seq), maximal=True)

    c1 = extend_to_top(path(lo_par, bad))
    c2 = extend_to_top(path(hi_par, bad))
    return GradedVerdict(False, None, (c1, c2))


def order_complex(P: Poset):
    """The simplicial complex of chains of the proper part of ``P``."""
    from .complexes import SimplicialComplex

    P.require_bounded()
    proper = [P.elements[i] for i in range(P.n) if i not in (P.bottom, P.top)]
    facets = set()
    for c in P.maximal_chains_idx():
        facets.add(frozenset(P.elements[i] for i in c
                             if i not in (P.bottom, P.top)))
    return SimplicialComplex.from_faces(proper, facets)

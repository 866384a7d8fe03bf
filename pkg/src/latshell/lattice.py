"""Meet/join structure, modularity classification, complements, and
distributivity of generated sublattices.

All tests here are exhaustive scans over the (small) element set; meets and
joins are found by intersecting bound sets, and ties are reported rather
than silently broken.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import NotAChain, NotALattice, NotLeftModular
from .poset import Chain, Poset, bits, build_poset


@dataclass(frozen=True)
class ModularChain:
    """A chain of (left-)modular elements from bottom to top."""

    elements: tuple[str, ...]
    kind: str  # "left-modular" or "two-sided-modular"

    @property
    def r(self) -> int:
        """Number of gaps."""
        return len(self.elements) - 1


@dataclass(frozen=True)
class ModularityReport:
    element: str
    left_modular: bool
    modular: bool
    witness_left: tuple | None  # (y, z) violating the (x, y) pair test
    witness_right: tuple | None  # (y, z) violating the (y, x) pair test


class Lattice:
    """A bounded poset together with total meet and join tables."""

    __slots__ = ("poset", "_meet", "_join")

    def __init__(self, poset: Poset, meet, join):
        self.poset = poset
        self._meet = meet
        self._join = join

    @property
    def elements(self):
        return self.poset.elements

    @property
    def n(self):
        return self.poset.n

    @property
    def bottom(self) -> str:
        return self.poset.elements[self.poset.bottom]

    @property
    def top(self) -> str:
        return self.poset.elements[self.poset.top]

    def meet_idx(self, i: int, j: int) -> int:
        return self._meet[i][j]

    def join_idx(self, i: int, j: int) -> int:
        return self._join[i][j]

    def meet(self, x: str, y: str) -> str:
        return self.elements[self._meet[self.poset.idx(x)][self.poset.idx(y)]]

    def join(self, x: str, y: str) -> str:
        return self.elements[self._join[self.poset.idx(x)][self.poset.idx(y)]]

    def leq(self, x: str, y: str) -> bool:
        return self.poset.leq(x, y)

    def atoms(self) -> list[str]:
        return [self.elements[j] for j in bits(self.poset.cover_up[self.poset.bottom])]

    def dual(self) -> "Lattice":
        return Lattice(self.poset.dual(), self._join, self._meet)

    def __repr__(self):
        return f"Lattice({self.n} elements)"


def lattice_check(P: Poset) -> Lattice:
    """Verify that ``P`` is a lattice and compute its meet/join tables.

    Raises NotALattice with the offending pair when some pair of elements
    has no unique greatest lower or least upper bound.
    """
    P.require_bounded()
    n = P.n
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            lower = P.down[i] & P.down[j]
            upper = P.up[i] & P.up[j]
            g = _unique_extremum(P, lower, greatest=True)
            if g is None:
                raise NotALattice(P.elements[i], P.elements[j],
                                  _tie_reason(P, lower, "meet"))
            l = _unique_extremum(P, upper, greatest=False)
            if l is None:
                raise NotALattice(P.elements[i], P.elements[j],
                                  _tie_reason(P, upper, "join"))
            meet[i][j] = meet[j][i] = g
            join[i][j] = join[j][i] = l
    return Lattice(P, meet, join)


def _unique_extremum(P: Poset, mask: int, greatest: bool):
    if not mask:
        return None
    for k in bits(mask):
        if greatest:
            if mask & ~P.down[k] == 0:
                return k
        else:
            if mask & ~P.up[k] == 0:
                return k
    return None


def _tie_reason(P: Poset, mask: int, word: str) -> str:
    if not mask:
        return f"no common bound for {word}"
    extremes = []
    for k in bits(mask):
        others = mask & ~(1 << k)
        if word == "meet":
            if not any(P.leq_idx(k, m) for m in bits(others)):
                extremes.append(P.elements[k])
        else:
            if not any(P.leq_idx(m, k) for m in bits(others)):
                extremes.append(P.elements[k])
    return f"{word} is not unique among {extremes}"


def is_modular_pair(L: Lattice, x: str, y: str) -> bool:
    """Test the modular-pair identity of (x, y): for all z >= y,
    (y v x) ^ z == y v (x ^ z)."""
    return modular_pair_witness(L, x, y) is None


def modular_pair_witness(L: Lattice, x: str, y: str):
    """Return a violating z for the pair (x, y), or None if none exists."""
    P = L.poset
    i, j = P.idx(x), P.idx(y)
    jx = L.join_idx(j, i)
    for k in bits(P.up[j]):
        if L.meet_idx(jx, k) != L.join_idx(j, L.meet_idx(i, k)):
            return L.elements[k]
    return None


def classify_modularity(L: Lattice, x: str) -> ModularityReport:
    """Classify ``x`` as left-modular and/or (two-sided) modular."""
    wl = wr = None
    for y in L.elements:
        z = modular_pair_witness(L, x, y)
        if z is not None:
            wl = (y, z)
            break
    for y in L.elements:
        z = modular_pair_witness(L, y, x)
        if z is not None:
            wr = (y, z)
            break
    left = wl is None
    return ModularityReport(x, left, left and wr is None, wl, wr)


def verify_chain_modularity(L: Lattice, chain) -> ModularChain:
    """Validate a bottom-top chain of (left-)modular elements.

    Returns a ModularChain tagged two-sided-modular when every element is
    modular, left-modular when every element is at least left-modular, and
    raises NotLeftModular otherwise.
    """
    elems = tuple(chain.elements if isinstance(chain, (Chain, ModularChain)) else chain)
    if not elems or elems[0] != L.bottom or elems[-1] != L.top:
        raise NotAChain(f"chain must run from {L.bottom!r} to {L.top!r}")
    for a, b in zip(elems, elems[1:]):
        if a == b or not L.leq(a, b):
            raise NotAChain(f"{a!r} !< {b!r}")
    reports = [classify_modularity(L, m) for m in elems]
    for rep in reports:
        if not rep.left_modular:
            raise NotLeftModular(rep.element, rep.witness_left)
    kind = ("two-sided-modular" if all(r.modular for r in reports)
            else "left-modular")
    return ModularChain(elems, kind)


def complements(L: Lattice, x: str) -> list[str]:
    """All y with x ^ y = bottom and x v y = top, in element order."""
    P = L.poset
    i = P.idx(x)
    bot, top = P.bottom, P.top
    return [L.elements[j] for j in range(L.n)
            if L.meet_idx(i, j) == bot and L.join_idx(i, j) == top]


def chains_of_complements(L: Lattice, m: ModularChain) -> list[Chain]:
    """All chains consisting of complements to the proper elements of ``m``.

    Complements to the endpoints are forced (top and bottom) and excluded;
    each returned chain contains a complement to every proper element of
    ``m``, and the same element may serve several of them.
    """
    proper = m.elements[1:-1]
    if not proper:
        return [Chain(())]
    comp_sets = [complements(L, mi) for mi in proper]
    P = L.poset
    found = set()
    for choice in itertools.product(*comp_sets):
        support = sorted(set(choice), key=P.idx)
        ok = all(P.leq(a, b) or P.leq(b, a)
                 for a, b in itertools.combinations(support, 2))
        if ok:
            # down-set size strictly increases along a chain
            support.sort(key=lambda e: P.down[P.idx(e)].bit_count())
            found.add(tuple(support))
    return [Chain(t) for t in sorted(found, key=lambda t: tuple(P.idx(e) for e in t))]


def is_distributive(L: Lattice) -> bool:
    return distributivity_witness(L) is None


def distributivity_witness(L: Lattice):
    """A triple (x, y, z) violating x ^ (y v z) == (x ^ y) v (x ^ z), if any."""
    n = L.n
    for i in range(n):
        for j in range(n):
            for k in range(j, n):
                if L.meet_idx(i, L.join_idx(j, k)) != \
                        L.join_idx(L.meet_idx(i, j), L.meet_idx(i, k)):
                    return (L.elements[i], L.elements[j], L.elements[k])
    return None


def generated_sublattice(L: Lattice, seed) -> Lattice:
    """Close ``seed`` under meet and join and return the sublattice."""
    P = L.poset
    current = {P.idx(e) for e in seed}
    if not current:
        raise NotAChain("seed must be nonempty")
    while True:
        new = set()
        for i, j in itertools.combinations(sorted(current), 2):
            new.add(L.meet_idx(i, j))
            new.add(L.join_idx(i, j))
        if new <= current:
            break
        current |= new
    members = sorted(current)
    names = [L.elements[i] for i in members]
    covers = _covers_of_restriction(P, members)
    return lattice_check(build_poset(names, covers))


def _covers_of_restriction(P: Poset, members: list[int]) -> list[tuple[str, str]]:
    mask = 0
    for i in members:
        mask |= 1 << i
    covers = []
    for i in members:
        strict = P.up[i] & mask & ~(1 << i)
        via = 0
        for j in bits(strict):
            via |= P.up[j] & ~(1 << j)
        for j in bits(strict & ~via):
            covers.append((P.elements[i], P.elements[j]))
    return covers

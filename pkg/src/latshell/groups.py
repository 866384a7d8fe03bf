"""Finite permutation groups, subgroup lattices, chief series, and the
topological solvability criteria they support.

Group elements are permutation tuples (0-based images).  Subgroup
enumeration is a fixpoint closure: all cyclic subgroups, then repeated
pairwise joins, with each subgroup carrying a small generating set so a
join closes over few generators.  Everything downstream indexes elements
into a multiplication table, and subgroups live as bitmasks over it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    NotAPermutation,
    NotSolvable,
    OrderLimit,
    ShellabilityUndecided,
    SizeLimit,
)
from .lattice import (
    Lattice,
    ModularChain,
    chains_of_complements,
    classify_modularity,
    lattice_check,
    verify_chain_modularity,
)
from .poset import bits, build_poset, order_complex


Perm = tuple


def _mul(p: Perm, q: Perm) -> Perm:
    return tuple(p[q[i]] for i in range(len(p)))


def _inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


class PermGroup:
    """A finite permutation group with its full element set."""

    __slots__ = ("degree", "generators", "elements", "order",
                 "_index", "_table", "_inverse")

    def __init__(self, degree: int, generators, elements):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(sorted(elements))
        self.order = len(self.elements)
        self._index = {p: i for i, p in enumerate(self.elements)}
        self._table = None
        self._inverse = None

    @property
    def identity(self) -> Perm:
        return tuple(range(self.degree))

    def index(self, p: Perm) -> int:
        return self._index[p]

    def table(self):
        """Multiplication table on element indices (built on demand)."""
        if self._table is None:
            idx = self._index
            els = self.elements
            self._table = [[idx[_mul(a, b)] for b in els] for a in els]
            self._inverse = [idx[_inv(a)] for a in els]
        return self._table

    def inverse_indices(self):
        self.table()
        return self._inverse

    def __repr__(self):
        return f"PermGroup(degree {self.degree}, order {self.order})"


def group_from_generators(degree: int, generators) -> PermGroup:
    """Close a generator list under products (identity included)."""
    gens = []
    for g in generators:
        g = tuple(g)
        if sorted(g) != list(range(degree)):
            raise NotAPermutation(f"{g!r} is not a permutation of 0..{degree - 1}")
        gens.append(g)
    identity = tuple(range(degree))
    elements = {identity}
    frontier = [identity]
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                b = _mul(a, g)
                if b not in elements:
                    elements.add(b)
                    new.append(b)
        frontier = new
    return PermGroup(degree, gens, elements)


# ---------------------------------------------------------------- parsing

def parse_cycles(text: str, degree: int) -> Perm:
    """Parse cycle notation like ``(1 2)(3 4)`` (1-based, () is identity)."""
    text = text.strip()
    perm = list(range(degree))
    if text in ("()", "e", ""):
        return tuple(perm)
    if not (text.startswith("(") and text.endswith(")")):
        raise NotAPermutation(f"bad cycle notation: {text!r}")
    for cyc in text[1:-1].split(")("):
        pts = [int(t) - 1 for t in cyc.replace(",", " ").split()]
        if any(not 0 <= p < degree for p in pts) or len(set(pts)) != len(pts):
            raise NotAPermutation(f"bad cycle {cyc!r} for degree {degree}")
        for a, b in zip(pts, pts[1:] + pts[:1]):
            perm[a] = b
    return tuple(perm)


def parse_group_file(text: str) -> PermGroup:
    """Group file: a ``degree: n`` header, then one generator per line."""
    lines = [l.strip() for l in text.splitlines() if l.strip()]
    if not lines or not lines[0].lower().startswith("degree:"):
        raise NotAPermutation("group file must start with 'degree: n'")
    degree = int(lines[0].split(":", 1)[1])
    gens = [parse_cycles(l, degree) for l in lines[1:]]
    return group_from_generators(degree, gens)


# ------------------------------------------------------ stock constructions

def symmetric(n: int) -> PermGroup:
    gens = [tuple([1, 0] + list(range(2, n)))] if n >= 2 else []
    if n >= 3:
        gens.append(tuple(list(range(1, n)) + [0]))
    return group_from_generators(n, gens)


def alternating(n: int) -> PermGroup:
    gens = []
    if n >= 3:
        gens.append(parse_cycles("(1 2 3)", n))
    if n >= 4:
        if n % 2 == 1:
            gens.append(tuple(list(range(1, n)) + [0]))
        else:
            cyc = "(" + " ".join(str(i) for i in range(2, n + 1)) + ")"
            gens.append(parse_cycles(cyc, n))
    return group_from_generators(n, gens)


def cyclic(n: int) -> PermGroup:
    return group_from_generators(n, [tuple(list(range(1, n)) + [0])])


def dihedral(n: int) -> PermGroup:
    rot = tuple(list(range(1, n)) + [0])
    ref = tuple((n - i) % n for i in range(n))
    return group_from_generators(n, [rot, ref])


def klein_four() -> PermGroup:
    return group_from_generators(4, [parse_cycles("(1 2)(3 4)", 4),
                                     parse_cycles("(1 3)(2 4)", 4)])


# --------------------------------------------------------------- subgroups

def subgroups(G: PermGroup, order_limit: int = 360) -> list[frozenset]:
    """All subgroups: cyclic ones, then pairwise joins to a fixpoint.

    Returned as frozensets of permutations, sorted by (order, elements).
    """
    if G.order > order_limit:
        raise OrderLimit(f"group order {G.order} exceeds limit {order_limit}")
    table = G.table()
    n = G.order
    e = G.index(G.identity)

    def close(gen_idx: tuple) -> int:
        mask = 1 << e
        frontier = [e]
        for g in gen_idx:
            if not (mask >> g) & 1:
                mask |= 1 << g
                frontier.append(g)
        while frontier:
            new = []
            for a in frontier:
                row = table[a]
                for g in gen_idx:
                    b = row[g]
                    if not (mask >> b) & 1:
                        mask |= 1 << b
                        new.append(b)
            frontier = new
        return mask

    def prune(gens: tuple, target: int) -> tuple:
        kept = []
        mask = 1 << e
        for g in gens:
            if not (mask >> g) & 1:
                kept.append(g)
                mask = close(tuple(kept))
                if mask == target:
                    break
        return tuple(kept)

    known: dict[int, tuple] = {}
    for i in range(n):
        mask = close((i,))
        if mask not in known:
            known[mask] = (i,) if i != e else ()
    worklist = sorted(known)
    k = 0
    while k < len(worklist):
        a = worklist[k]
        for b in worklist[:k + 1]:
            if a | b == a or a | b == b:
                continue
            gens = known[a] + known[b]
            j = close(gens)
            if j not in known:
                known[j] = prune(gens, j)
                worklist.append(j)
        k += 1

    subs = []
    for mask in known:
        subs.append(frozenset(G.elements[i] for i in bits(mask)))
    subs.sort(key=lambda h: (len(h), sorted(h)))
    return subs


def is_normal(G: PermGroup, H: frozenset) -> bool:
    for g in G.generators:
        gi = _inv(g)
        for h in H:
            if _mul(_mul(g, h), gi) not in H:
                return False
    return True


def generated_subgroup(G: PermGroup, seed) -> frozenset:
    table = G.table()
    gen_idx = sorted({G.index(p) for p in seed} | {G.index(G.identity)})
    mask = 0
    frontier = []
    for i in gen_idx:
        mask |= 1 << i
        frontier.append(i)
    while frontier:
        new = []
        for a in frontier:
            row = table[a]
            for g in gen_idx:
                b = row[g]
                if not (mask >> b) & 1:
                    mask |= 1 << b
                    new.append(b)
        frontier = new
    return frozenset(G.elements[i] for i in bits(mask))


def commutator_subgroup(G: PermGroup, H: frozenset) -> frozenset:
    """Subgroup generated by all commutators of elements of H."""
    comms = set()
    hs = sorted(H)
    for a in hs:
        ai = _inv(a)
        for b in hs:
            comms.add(_mul(_mul(a, b), _mul(ai, _inv(b))))
    return generated_subgroup(G, comms)


def is_solvable(G: PermGroup) -> bool:
    """Derived series reaches the trivial subgroup."""
    current = frozenset(G.elements)
    while True:
        nxt = commutator_subgroup(G, current)
        if nxt == current:
            return len(current) == 1
        current = nxt


# ---------------------------------------------------------- the lattice

@dataclass
class GroupLattice:
    group: PermGroup
    subgroup_sets: list
    names: list
    lattice: Lattice
    normal_names: set
    chief: ModularChain

    @property
    def r(self) -> int:
        return self.chief.r

    def subgroup_of(self, name: str) -> frozenset:
        return self.subgroup_sets[self.names.index(name)]


def subgroup_lattice(G: PermGroup, order_limit: int = 360,
                     join_check_limit: int = 60) -> GroupLattice:
    """Build the subgroup lattice, verify the meet/join identities, flag
    normal subgroups, and fix a deterministic chief series.

    Meets are checked against intersections for all pairs; joins against
    generated subgroups for all pairs up to ``join_check_limit`` subgroups,
    and on a deterministic sample beyond that.  Every normal subgroup must
    classify as two-sided modular.
    """
    subs = subgroups(G, order_limit)
    names = [f"H{i}" for i in range(len(subs))]
    by_name = dict(zip(names, subs))

    masks = []
    elem_index = {p: i for i, p in enumerate(G.elements)}
    for h in subs:
        m = 0
        for p in h:
            m |= 1 << elem_index[p]
        masks.append(m)

    covers = []
    for i, mi in enumerate(masks):
        strict_ups = [j for j, mj in enumerate(masks)
                      if j != i and mi | mj == mj]
        for j in strict_ups:
            if not any(masks[k] | masks[j] == masks[j] and masks[k] | mi == masks[k]
                       and k != i and k != j for k in strict_ups):
                covers.append((names[i], names[j]))
    P = build_poset(names, covers)
    L = lattice_check(P)

    for i, j in itertools.combinations(range(len(subs)), 2):
        got = by_name[L.meet(names[i], names[j])]
        if got != subs[i] & subs[j]:
            raise AssertionError("meet table disagrees with intersection")
    pairs = itertools.combinations(range(len(subs)), 2)
    if len(subs) > join_check_limit:
        pairs = itertools.islice(pairs, 0, None, 97)
    for i, j in pairs:
        got = by_name[L.join(names[i], names[j])]
        if got != generated_subgroup(G, subs[i] | subs[j]):
            raise AssertionError("join table disagrees with generated subgroup")

    normal_names = {names[i] for i, h in enumerate(subs) if is_normal(G, h)}
    for nm in sorted(normal_names):
        rep = classify_modularity(L, nm)
        if not rep.modular:
            raise AssertionError(f"normal subgroup {nm} is not two-sided modular")

    chief_names = _chief_series_names(L, names, subs, normal_names)
    chief = verify_chain_modularity(L, chief_names)
    if chief.kind != "two-sided-modular":
        raise AssertionError("chief series failed the two-sided modularity check")
    return GroupLattice(G, subs, names, L, normal_names, chief)


def _chief_series_names(L, names, subs, normal_names):
    order_of = {n: len(s) for n, s in zip(names, subs)}
    key_of = {n: (len(s), sorted(s)) for n, s in zip(names, subs)}
    normals = sorted(normal_names, key=lambda n: key_of[n])

    def up_from(start):
        chain = [start]
        while chain[-1] != L.top:
            cur = chain[-1]
            above = [n for n in normals if n != cur and L.leq(cur, n)]
            minimal = [n for n in above
                       if not any(m != n and L.leq(m, n) and L.leq(cur, m)
                                  for m in above)]
            chain.append(min(minimal, key=lambda n: key_of[n]))
        return chain

    def down_from(start):
        chain = [start]
        while chain[-1] != L.bottom:
            cur = chain[-1]
            below = [n for n in normals if n != cur and L.leq(n, cur)]
            maximal = [n for n in below
                       if not any(m != n and L.leq(n, m) and L.leq(m, cur)
                                  for m in below)]
            chain.append(min(maximal, key=lambda n: key_of[n]))
        return list(reversed(chain))

    bottom_up = up_from(L.bottom)
    top_down = down_from(L.top)
    if len(bottom_up) != len(top_down):
        raise AssertionError("two chief series computations disagree in length")
    return bottom_up


def chief_series(G: PermGroup, order_limit: int = 360) -> ModularChain:
    return subgroup_lattice(G, order_limit).chief


# ------------------------------------------------- solvability criteria

@dataclass(frozen=True)
class DepthReport:
    r: int
    complex_dim: int
    skeleton_checked: int
    skeleton_cm: bool
    depth_exact: int | None
    verdict: str  # "solvable" | "nonsolvable"
    derived_series_solvable: bool
    agree: bool


def solvability_by_depth(GL: GroupLattice, exact_depth_face_limit: int = 4000,
                         homology_limit: int = 200000) -> DepthReport:
    """Decide solvability by whether the depth of the order complex stays
    at its guaranteed floor of r - 2 or climbs to r - 1."""
    from .complexes import depth as complex_depth
    from .complexes import is_cohen_macaulay

    r = GL.chief.r
    cx = order_complex(GL.lattice.poset)
    dim = cx.dim if not cx.is_void else -1
    if dim is None:
        dim = -1
    check = r - 1
    cm = (check <= dim) and is_cohen_macaulay(cx.skeleton(check),
                                              limit=homology_limit)
    verdict = "nonsolvable" if cm else "solvable"
    depth_exact = None
    try:
        cx.faces_by_dim(limit=exact_depth_face_limit)
        depth_exact = complex_depth(cx, limit=homology_limit)
    except SizeLimit:
        depth_exact = None
    solvable = is_solvable(GL.group)
    return DepthReport(
        r=r,
        complex_dim=dim,
        skeleton_checked=check,
        skeleton_cm=cm,
        depth_exact=depth_exact,
        verdict=verdict,
        derived_series_solvable=solvable,
        agree=(verdict == "solvable") == solvable,
    )


@dataclass(frozen=True)
class ShellabilityReport:
    r: int
    min_chain_covers: int
    pure: bool
    shellable: bool | None
    method: str
    verdict: str
    derived_series_solvable: bool
    agree: bool


def skeleton_shellability_criterion(GL: GroupLattice,
                                    facet_bruteforce_limit: int = 12) -> ShellabilityReport:
    """Nonsolvable exactly when the (r-1)-skeleton of the order complex is
    pure of dimension r-1 and shellable."""
    from . import labeling as lb
    from .complexes import betti_numbers, verify_shelling, shelling_from_vd
    from .complexes import constructive_vd_skeleton

    r = GL.chief.r
    P = GL.lattice.poset
    lo, _ = P.min_max_chain_covers()
    pure = lo >= r + 1
    shellable = None
    method = "not-pure"
    if pure:
        cx = order_complex(P).skeleton(r - 1)
        if r - 1 <= 0:
            shellable = not cx.is_void
            method = "zero-dimensional"
        elif r - 1 == 1:
            b = betti_numbers(cx)
            shellable = b.get(0, 1) == 0
            method = "connectivity"
        else:
            lab = lb.left_modular_labeling(GL.lattice, GL.chief)
            bound, _ = lb.min_chain_complexity(P, lab)
            if bound >= r + 1:
                skel, cert = constructive_vd_skeleton(P, lab, r + 1)
                shellable = verify_shelling(skel, shelling_from_vd(cert, skel))
                method = "constructive"
            elif len(order_complex(P).skeleton(r - 1).facets) <= facet_bruteforce_limit:
                shellable = _bruteforce_shellable(order_complex(P).skeleton(r - 1))
                method = "bruteforce"
            else:
                raise ShellabilityUndecided(
                    f"cannot certify shellability of the {r - 1}-skeleton")
    verdict = "nonsolvable" if (pure and shellable) else "solvable"
    solvable = is_solvable(GL.group)
    return ShellabilityReport(
        r=r,
        min_chain_covers=lo,
        pure=pure,
        shellable=shellable,
        method=method,
        verdict=verdict,
        derived_series_solvable=solvable,
        agree=(verdict == "solvable") == solvable,
    )


def _bruteforce_shellable(cx) -> bool:
    from .complexes import verify_shelling

    facets = sorted(cx.facet_name_sets(), key=sorted)

    def extend(order, remaining):
        if not remaining:
            return True
        for f in list(remaining):
            trial = order + [f]
            ok = all(
                any(trial[i2] & f <= trial[j] & f and len(trial[j] & f) == len(f) - 1
                    for j in range(len(order)))
                for i2 in range(len(order)))
            if ok and extend(trial, remaining - {f}):
                return True
        return False

    return extend([], set(facets))


@dataclass(frozen=True)
class BouquetReport:
    r: int
    betti: dict
    complement_chain_refinements: int
    ok: bool


def thevenaz_check(GL: GroupLattice, homology_limit: int = 200000) -> BouquetReport:
    """For a solvable group the order complex is homotopy equivalent to a
    bouquet of (r-2)-spheres counted by complement-chain refinements."""
    from .complexes import betti_numbers

    if not is_solvable(GL.group):
        raise NotSolvable("bouquet count applies to solvable groups only")
    L = GL.lattice
    P = L.poset
    r = GL.chief.r
    comp_chains = [set(c.elements) for c in chains_of_complements(L, GL.chief)]
    refinements = set()
    for c in P.maximal_chains_idx():
        elems = tuple(P.elements[i] for i in c)
        if any(cc <= set(elems) for cc in comp_chains):
            refinements.add(elems)
    count = len(refinements)
    betti = betti_numbers(order_complex(P), limit=homology_limit)
    ok = all((v == count if k == r - 2 else v == 0) for k, v in betti.items())
    return BouquetReport(r=r, betti=betti,
                         complement_chain_refinements=count, ok=ok)

"""Simplicial complexes with exact homology, Cohen-Macaulay depth,
shellings, and vertex-decomposition certificates.

Complexes are stored by their facets, as bitmasks over a vertex tuple.  The
empty complex (one face, the empty set) and the void complex (no faces at
all) are distinguished; both are accepted as decomposition leaves.

The constructive decomposition of skeleta of order complexes follows the
lexicographic recursion: shed the descent element of the lexicographically
greatest single-descent chain, and in the all-ascending base case assemble
the complex as a join of a spine simplex with the gap complexes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    AllChainsAscending,
    InvalidCertificate,
    NotAFace,
    NotFacetPermutation,
    RepeatRunTooLong,
    SizeLimit,
    TargetTooLarge,
    UnknownVertex,
    VertexClash,
    VoidComplex,
)
from .poset import Chain, Poset, bits, interval, order_complex


class SimplicialComplex:
    """Immutable complex given by inclusion-maximal faces."""

    __slots__ = ("vertices", "vindex", "facets")

    def __init__(self, vertices, facets):
        self.vertices = tuple(vertices)
        self.vindex = {v: i for i, v in enumerate(self.vertices)}
        self.facets = frozenset(facets)

    @classmethod
    def from_faces(cls, vertex_order, faces) -> "SimplicialComplex":
        """Build from faces given as iterables of vertex names.

        ``vertex_order`` fixes the vertex ordering; only vertices appearing
        in some face are kept.
        """
        order = list(vertex_order)
        known = set(order)
        support = set()
        name_faces = []
        for f in faces:
            fs = frozenset(f)
            for v in fs:
                if v not in known:
                    raise UnknownVertex(repr(v))
            support |= fs
            name_faces.append(fs)
        vertices = tuple(v for v in order if v in support)
        vindex = {v: i for i, v in enumerate(vertices)}
        masks = set()
        for fs in name_faces:
            m = 0
            for v in fs:
                m |= 1 << vindex[v]
            masks.add(m)
        return cls(vertices, _maximalize(masks))

    # -- basic structure ---------------------------------------------------

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def is_empty(self) -> bool:
        return self.facets == frozenset({0})

    @property
    def dim(self):
        """Dimension, or None for the void complex."""
        if self.is_void:
            return None
        return max(f.bit_count() for f in self.facets) - 1

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def mask_of(self, names) -> int:
        m = 0
        for v in names:
            if v not in self.vindex:
                raise UnknownVertex(repr(v))
            m |= 1 << self.vindex[v]
        return m

    def names_of(self, mask: int) -> frozenset:
        return frozenset(self.vertices[i] for i in bits(mask))

    def has_face(self, mask: int) -> bool:
        return any(f & mask == mask for f in self.facets)

    def faces(self):
        """All faces as masks (deduplicated), in no particular order."""
        seen = set()
        for f in self.facets:
            vs = list(bits(f))
            for k in range(len(vs) + 1):
                for combo in itertools.combinations(vs, k):
                    m = 0
                    for i in combo:
                        m |= 1 << i
                    seen.add(m)
        return seen

    def faces_by_dim(self, limit=None) -> dict:
        out = {}
        for m in self.faces():
            out.setdefault(m.bit_count() - 1, []).append(m)
        if limit is not None and sum(len(v) for v in out.values()) > limit:
            raise SizeLimit(f"more than {limit} faces")
        for v in out.values():
            v.sort()
        return out

    def facet_name_sets(self) -> frozenset:
        return frozenset(self.names_of(f) for f in self.facets)

    def __eq__(self, other):
        return (isinstance(other, SimplicialComplex)
                and self.facet_name_sets() == other.facet_name_sets())

    def __hash__(self):
        return hash(self.facet_name_sets())

    def __repr__(self):
        if self.is_void:
            return "SimplicialComplex(void)"
        return (f"SimplicialComplex({self.n_vertices} vertices, "
                f"{len(self.facets)} facets, dim {self.dim})")

    # -- constructions -----------------------------------------------------

    def skeleton(self, r: int) -> "SimplicialComplex":
        """Faces of dimension at most ``r``."""
        if self.is_void or r < -1:
            return SimplicialComplex((), frozenset())
        keep = set()
        for f in self.facets:
            if f.bit_count() <= r + 1:
                keep.add(f)
            else:
                for combo in itertools.combinations(list(bits(f)), r + 1):
                    m = 0
                    for i in combo:
                        m |= 1 << i
                    keep.add(m)
        return SimplicialComplex(self.vertices, _maximalize(keep)).compact()

    def compact(self) -> "SimplicialComplex":
        """Drop vertices outside the support, preserving order."""
        support = 0
        for f in self.facets:
            support |= f
        if support.bit_count() == self.n_vertices:
            return self
        kept = list(bits(support))
        remap = {old: new for new, old in enumerate(kept)}
        facets = set()
        for f in self.facets:
            m = 0
            for i in bits(f):
                m |= 1 << remap[i]
            facets.add(m)
        return SimplicialComplex(tuple(self.vertices[i] for i in kept), facets)

    def link_of(self, names) -> "SimplicialComplex":
        sigma = self.mask_of(names)
        if not self.has_face(sigma):
            raise NotAFace(f"{set(names)!r} is not a face")
        facets = {f & ~sigma for f in self.facets if f & sigma == sigma}
        return SimplicialComplex(self.vertices, facets).compact()

    def delete_vertex(self, v) -> "SimplicialComplex":
        if v not in self.vindex:
            raise UnknownVertex(repr(v))
        bit = 1 << self.vindex[v]
        facets = _maximalize({f & ~bit for f in self.facets})
        return SimplicialComplex(self.vertices, facets).compact()

    def delete_face(self, names) -> "SimplicialComplex":
        """Remove all faces containing the given vertex set."""
        sigma = self.mask_of(names)
        if sigma == 0:
            return SimplicialComplex((), frozenset())
        keep = set()
        for f in self.facets:
            if f & sigma != sigma:
                keep.add(f)
            else:
                for i in bits(sigma):
                    keep.add(f & ~(1 << i))
        return SimplicialComplex(self.vertices, _maximalize(keep)).compact()

    def join(self, other: "SimplicialComplex") -> "SimplicialComplex":
        overlap = set(self.vertices) & set(other.vertices)
        if overlap:
            raise VertexClash(f"shared vertices {sorted(overlap)!r}")
        vertices = self.vertices + other.vertices
        shift = self.n_vertices
        facets = {f | (g << shift) for f in self.facets for g in other.facets}
        return SimplicialComplex(vertices, facets)


def _maximalize(masks) -> frozenset:
    by_size = {}
    for m in set(masks):
        by_size.setdefault(m.bit_count(), []).append(m)
    out = []
    accepted = []
    for size in sorted(by_size, reverse=True):
        # equal-size masks cannot contain one another
        keep = [m for m in by_size[size]
                if not any(m & f == m for f in accepted)]
        out.extend(keep)
        accepted.extend(keep)
    return frozenset(out)


# module-level aliases matching the operation names
def skeleton(cx, r):
    return cx.skeleton(r)


def link(cx, names):
    return cx.link_of(names)


def delete(cx, names):
    return cx.delete_face(names)


def join(cx, other):
    return cx.join(other)


def simplex_complex(names) -> SimplicialComplex:
    names = tuple(names)
    return SimplicialComplex(names, frozenset({(1 << len(names)) - 1}))


def empty_complex() -> SimplicialComplex:
    return SimplicialComplex((), frozenset({0}))


def void_complex() -> SimplicialComplex:
    return SimplicialComplex((), frozenset())


# --------------------------------------------------------------------------
# shedding vertices and the brute-force decomposability oracle
# --------------------------------------------------------------------------

def shedding_failure_witness(cx: SimplicialComplex, v):
    """A face containing v with no exchange vertex, or None if v sheds."""
    if v not in cx.vindex:
        raise UnknownVertex(repr(v))
    bit = 1 << cx.vindex[v]
    all_verts = (1 << cx.n_vertices) - 1
    seen = set()
    for f in cx.facets:
        if not f & bit:
            continue
        others = list(bits(f & ~bit))
        for k in range(len(others) + 1):
            for combo in itertools.combinations(others, k):
                sigma = bit
                for i in combo:
                    sigma |= 1 << i
                if sigma in seen:
                    continue
                seen.add(sigma)
                base = sigma & ~bit
                if not any(cx.has_face(base | (1 << w))
                           for w in bits(all_verts & ~sigma)):
                    return cx.names_of(sigma)
    return None


def is_shedding_vertex(cx: SimplicialComplex, v) -> bool:
    return shedding_failure_witness(cx, v) is None


_VD_MEMO: dict = {}


def is_vd_bruteforce(cx: SimplicialComplex, max_vertices: int = 25) -> bool:
    """Exhaustive search for a shedding recursion; simplices, the empty
    complex, and the void complex are decomposable by definition."""
    if cx.n_vertices > max_vertices:
        raise SizeLimit(f"{cx.n_vertices} vertices exceeds limit {max_vertices}")
    return _vd_search(cx)


def _vd_search(cx: SimplicialComplex) -> bool:
    if len(cx.facets) <= 1:
        return True
    key = (cx.n_vertices, cx.facets)
    hit = _VD_MEMO.get(key)
    if hit is not None:
        return hit
    ans = False
    for v in cx.vertices:
        if is_shedding_vertex(cx, v):
            if _vd_search(cx.delete_vertex(v)) and _vd_search(cx.link_of((v,))):
                ans = True
                break
    _VD_MEMO[key] = ans
    return ans


# --------------------------------------------------------------------------
# certificates
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class VDLeaf:
    """Certifies a simplex, the empty complex, or the void complex."""


@dataclass(frozen=True)
class VDNode:
    vertex: str
    deletion: object
    link: object


def validate_vd_certificate(cert, cx: SimplicialComplex) -> bool:
    """Check a certificate node by node against the shedding definition."""
    if isinstance(cert, VDLeaf):
        if len(cx.facets) > 1:
            raise InvalidCertificate(f"leaf complex is not a simplex: {cx!r}")
        return True
    if not isinstance(cert, VDNode):
        raise InvalidCertificate(f"unexpected node {cert!r}")
    if cert.vertex not in cx.vindex:
        raise InvalidCertificate(f"vertex {cert.vertex!r} not in complex")
    witness = shedding_failure_witness(cx, cert.vertex)
    if witness is not None:
        raise InvalidCertificate(
            f"{cert.vertex!r} is not a shedding vertex (face {set(witness)!r})")
    validate_vd_certificate(cert.deletion, cx.delete_vertex(cert.vertex))
    validate_vd_certificate(cert.link, cx.link_of((cert.vertex,)))
    return True


def certificate_nodes(cert) -> int:
    if isinstance(cert, VDLeaf):
        return 1
    return 1 + certificate_nodes(cert.deletion) + certificate_nodes(cert.link)


def shelling_from_vd(cert, cx: SimplicialComplex) -> list:
    """Extract a shelling order from a decomposition certificate.

    Deletion facets come first, then the cone over the link shelling; this
    order satisfies the pairwise shelling characterization for nonpure
    complexes as well.
    """
    if isinstance(cert, VDLeaf):
        if len(cx.facets) > 1:
            raise InvalidCertificate("leaf complex is not a simplex")
        return [cx.names_of(f) for f in cx.facets]
    if not isinstance(cert, VDNode):
        raise InvalidCertificate(f"unexpected node {cert!r}")
    v = cert.vertex
    if v not in cx.vindex:
        raise InvalidCertificate(f"vertex {v!r} not in complex")
    first = shelling_from_vd(cert.deletion, cx.delete_vertex(v))
    second = shelling_from_vd(cert.link, cx.link_of((v,)))
    return first + [s | {v} for s in second]


def verify_shelling(cx: SimplicialComplex, order) -> bool:
    """Pairwise characterization: earlier facets meet each new facet inside
    a codimension-one face of it that is covered by a single earlier facet."""
    order = [frozenset(s) for s in order]
    if sorted(order, key=sorted) != sorted(cx.facet_name_sets(), key=sorted) \
            or len(order) != len(cx.facets):
        raise NotFacetPermutation("order must list each facet exactly once")
    for k in range(1, len(order)):
        sk = order[k]
        for i in range(k):
            inter = order[i] & sk
            if not any(inter <= (order[j] & sk)
                       and len(order[j] & sk) == len(sk) - 1
                       for j in range(k)):
                return False
    return True


# --------------------------------------------------------------------------
# homology over the rationals
# --------------------------------------------------------------------------

def betti_numbers(cx: SimplicialComplex, limit: int = 200000) -> dict:
    """Reduced Betti numbers over the rationals, for -1 <= i <= dim.

    Boundary ranks are exact: dimension-one boundaries via connected
    components, higher ones by fraction-free sparse elimination.
    """
    if cx.is_void:
        return {}
    fbd = cx.faces_by_dim(limit=limit)
    dim = cx.dim
    counts = {k: len(fbd.get(k, [])) for k in range(-1, dim + 1)}
    ranks = {}
    for k in range(0, dim + 1):
        ranks[k] = _boundary_rank(cx, fbd, k)
    ranks[dim + 1] = 0
    out = {}
    for k in range(-1, dim + 1):
        out[k] = counts[k] - ranks.get(k, 0) - ranks[k + 1]
    return out


def _boundary_rank(cx, fbd, k: int) -> int:
    faces_k = fbd.get(k, [])
    if not faces_k:
        return 0
    if k == 0:
        return 1  # augmentation onto the empty face
    if k == 1:
        return len(fbd.get(0, [])) - _component_count(cx, fbd)
    rows = {m: i for i, m in enumerate(fbd[k - 1])}
    pivots = {}
    rank = 0
    for m in faces_k:
        col = {}
        vs = list(bits(m))
        for j, v in enumerate(vs):
            sub = m & ~(1 << v)
            col[rows[sub]] = Fraction((-1) ** j)
        while col:
            r = min(col)
            if r in pivots:
                coef = col[r]
                for rr, val in pivots[r].items():
                    col[rr] = col.get(rr, Fraction(0)) - coef * val
                    if not col[rr]:
                        del col[rr]
            else:
                lead = col[r]
                pivots[r] = {rr: val / lead for rr, val in col.items()}
                rank += 1
                break
    return rank


def _component_count(cx, fbd) -> int:
    verts = fbd.get(0, [])
    idx = {m: i for i, m in enumerate(verts)}
    parent = list(range(len(verts)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in fbd.get(1, []):
        u, v = (1 << i for i in bits(e))
        ra, rb = find(idx[u]), find(idx[v])
        if ra != rb:
            parent[ra] = rb
    return len({find(i) for i in range(len(verts))})


def is_cohen_macaulay(cx: SimplicialComplex, limit: int = 200000) -> bool:
    """Reduced homology of every link vanishes below the link's dimension."""
    if cx.is_void:
        return True
    if cx.dim <= 0:
        return True
    if cx.dim == 1:
        # links of vertices and edges impose nothing below dimension zero,
        # so only connectivity of the whole complex is at stake
        return betti_numbers(cx, limit=limit)[0] == 0
    for m in sorted(cx.faces()):
        lk = cx.link_of(cx.names_of(m))
        d = lk.dim
        if d == -1:
            continue
        b = betti_numbers(lk, limit=limit)
        if any(b[i] != 0 for i in range(-1, d)):
            return False
    return True


def depth(cx: SimplicialComplex, limit: int = 200000) -> int:
    """Largest r with a Cohen-Macaulay r-skeleton; bounded by the minimum
    facet dimension."""
    if cx.is_void:
        raise VoidComplex("depth of the void complex is undefined")
    m = min(f.bit_count() for f in cx.facets) - 1
    for r in range(m, -2, -1):
        if is_cohen_macaulay(cx.skeleton(r), limit=limit):
            return r
    raise AssertionError("unreachable: the (-1)-skeleton is Cohen-Macaulay")


# --------------------------------------------------------------------------
# directly constructed certificates
# --------------------------------------------------------------------------

def cert_simplex_skeleton(names, t: int):
    """Certificate for the t-skeleton of the simplex on ``names``."""
    names = tuple(names)
    if t <= -1 or t >= len(names) - 1:
        return VDLeaf()
    rest = names[:-1]
    return VDNode(names[-1], cert_simplex_skeleton(rest, t),
                  cert_simplex_skeleton(rest, t - 1))


def cert_points(names):
    """Certificate for a 0-dimensional complex on ``names``."""
    names = tuple(names)
    if len(names) <= 1:
        return VDLeaf()
    return VDNode(names[-1], cert_points(names[:-1]), VDLeaf())


@dataclass(frozen=True)
class JoinFactor:
    """One factor of a join: a full complex, the skeleton level used, and a
    certificate for that skeleton."""

    complex: SimplicialComplex
    level: int
    cert: object


def join_skeleton_certificate(factors, t: int):
    """Certificate for skel_t of the join of the factors.

    Requires t + 1 <= sum(level + 1), each level between -1 and the factor
    dimension, and each proper skeleton pure (every facet of the factor at
    least level + 1 vertices).  Shedding vertices are pulled from the factor
    certificates; exchanges across factors exist by purity.
    """
    cxs = [f.complex for f in factors]
    total = 0
    for f in factors:
        if f.complex.is_void:
            raise InvalidCertificate("void factor in a join")
        d = f.complex.dim
        if not (-1 <= f.level <= d):
            raise InvalidCertificate(f"level {f.level} out of range for dim {d}")
        if f.level < d and f.level >= 0:
            if min(x.bit_count() for x in f.complex.facets) < f.level + 1:
                raise InvalidCertificate("factor skeleton is not pure")
        total += f.level + 1
    if t + 1 > total:
        raise InvalidCertificate(f"target {t} exceeds available levels")

    T = cxs[0]
    for c in cxs[1:]:
        T = T.join(c)
    T = T.skeleton(t)
    if len(T.facets) <= 1:
        return VDLeaf()

    for j, f in enumerate(factors):
        if isinstance(f.cert, VDNode):
            v = f.cert.vertex
            del_factors = list(factors)
            del_factors[j] = JoinFactor(f.complex.delete_vertex(v), f.level,
                                        f.cert.deletion)
            link_factors = list(factors)
            link_factors[j] = JoinFactor(f.complex.link_of((v,)), f.level - 1,
                                         f.cert.link)
            return VDNode(v,
                          join_skeleton_certificate(del_factors, t),
                          join_skeleton_certificate(link_factors, t - 1))

    for j, f in enumerate(factors):
        if f.level == -1 and f.complex.n_vertices:
            v = f.complex.vertices[-1]
            del_factors = list(factors)
            del_factors[j] = JoinFactor(f.complex.delete_vertex(v), -1, VDLeaf())
            link_factors = list(factors)
            link_factors[j] = JoinFactor(f.complex.link_of((v,)), -1, VDLeaf())
            return VDNode(v,
                          join_skeleton_certificate(del_factors, t),
                          join_skeleton_certificate(link_factors, t - 1))

    union = []
    for f in factors:
        if len(f.complex.facets) > 1:
            raise InvalidCertificate("leaf certificate on a non-simplex factor")
        union.extend(f.complex.vertices)
    return cert_simplex_skeleton(tuple(union), t)


def join_full_certificate(pairs):
    """Certificate for the full join of complexes, from full certificates.

    ``pairs`` is a list of (complex, certificate).  A shedding vertex of a
    factor sheds in the join outright, so no level bookkeeping is needed.
    """
    for cx, _ in pairs:
        if cx.is_void:
            raise InvalidCertificate("void factor in a join")
    n_facets = 1
    for cx, _ in pairs:
        n_facets *= len(cx.facets)
    if n_facets <= 1:
        return VDLeaf()
    for j, (cx, cert) in enumerate(pairs):
        if isinstance(cert, VDNode):
            v = cert.vertex
            del_pairs = list(pairs)
            del_pairs[j] = (cx.delete_vertex(v), cert.deletion)
            link_pairs = list(pairs)
            link_pairs[j] = (cx.link_of((v,)), cert.link)
            return VDNode(v, join_full_certificate(del_pairs),
                          join_full_certificate(link_pairs))
    raise InvalidCertificate("multiple facets but every factor is a simplex")


# --------------------------------------------------------------------------
# the lexicographic shedding recursion
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class DescentPick:
    chain: Chain
    element: str


def lex_greatest_single_descent_chain(P: Poset, lab, recheck_limit: int = 0) -> DescentPick:
    """Descent element of the lexicographically greatest maximal chain with
    exactly one strict descent (ties broken by the element order).

    Asserts the structural guarantees the shedding step relies on: below
    the descent element everything ascends, no chain ascends through it,
    and every cover pair through it has a bypass.
    """
    from . import labeling as lb

    chains = [tuple(P.elements[i] for i in c) for c in P.maximal_chains_idx()]
    stats = {c: lb.stats_of_sequence(c, lab.sequence(c)) for c in chains}
    if all(stats[c].weakly_ascending for c in chains):
        raise AllChainsAscending("every maximal chain is weakly ascending")
    single = [c for c in chains if len(stats[c].descents) == 1]
    if not single:
        raise InvalidCertificate("descents exist but no single-descent chain; "
                                 "labeling is not quasi-EL")
    # greatest by raw label sequence; the element order only breaks exact ties
    best = max(single, key=lambda c: (lab.sequence(c),
                                      tuple(P.idx(e) for e in c)))
    x = stats[best].descents[0]
    xi = P.idx(x)

    below = interval(P, P.elements[P.bottom], x)
    for c in below.maximal_chains_idx():
        names = tuple(below.elements[i] for i in c)
        if not lb.stats_of_sequence(names, lab.sequence(names)).weakly_ascending:
            raise InvalidCertificate(
                f"chain below descent element {x!r} is not ascending")

    for c in chains:
        if x in c:
            k = c.index(x)
            if 0 < k < len(c) - 1 and lab.label(c[k - 1], x) < lab.label(x, c[k + 1]):
                raise InvalidCertificate(f"a chain strictly ascends through {x!r}")

    for w in bits(P.cover_down[xi]):
        for z in bits(P.cover_up[xi]):
            between = P.up[w] & P.down[z] & ~(1 << w) & ~(1 << z) & ~(1 << xi)
            if not between:
                raise InvalidCertificate(
                    f"cover pair through {x!r} has no bypass")

    if 0 < P.n <= recheck_limit:
        rest = lb.verify_quasi_el(_delete_element(P, x), lab)
        if not rest.ok:
            raise InvalidCertificate(
                f"restriction away from {x!r} lost the labeling axioms")
    return DescentPick(Chain(best, maximal=True), x)


def _delete_element(P: Poset, x: str) -> Poset:
    from .poset import build_poset

    members = [e for e in P.elements if e != x]
    mask = 0
    for e in members:
        mask |= 1 << P.idx(e)
    covers = []
    for i in bits(mask):
        strict = P.up[i] & mask & ~(1 << i)
        via = 0
        for j in bits(strict):
            via |= P.up[j] & ~(1 << j)
        for j in bits(strict & ~via):
            if not (P.cover_up[i] >> j) & 1:
                raise InvalidCertificate(
                    f"removing {x!r} created the new cover "
                    f"({P.elements[i]!r}, {P.elements[j]!r})")
            covers.append((P.elements[i], P.elements[j]))
    return build_poset(members, covers)


def constructive_vd_skeleton(P: Poset, lab, target_r: int,
                             recheck_limit: int = 12):
    """Certificate for the (target_r - 2)-skeleton of the order complex.

    ``target_r`` must not exceed the minimum of distinct-plus-repeated
    labels over maximal chains; the construction is refused beyond that.
    """
    from . import labeling as lb

    if target_r < 1:
        raise TargetTooLarge("target must be at least 1")
    bound, _ = lb.min_chain_complexity(P, lab)
    if target_r > bound:
        raise TargetTooLarge(f"target {target_r} exceeds the bound {bound}")
    cx = order_complex(P).skeleton(target_r - 2)
    cert = _vd_skel_rec(P, lab, target_r, recheck_limit)
    return cx, cert


def _vd_skel_rec(P: Poset, lab, target_r: int, recheck_limit: int):
    from . import labeling as lb

    t = target_r - 2
    cx = order_complex(P).skeleton(t)
    if len(cx.facets) <= 1:
        return VDLeaf()

    chains = [tuple(P.elements[i] for i in c) for c in P.maximal_chains_idx()]
    if all(lb.stats_of_sequence(c, lab.sequence(c)).weakly_ascending
           for c in chains):
        factors = _base_case_factors(P, lab, t)
        cert = join_skeleton_certificate(factors, t)
        joined = factors[0].complex
        for f in factors[1:]:
            joined = joined.join(f.complex)
        if joined.skeleton(t) != cx:
            raise InvalidCertificate("base case join does not match the skeleton")
        return cert

    pick = lex_greatest_single_descent_chain(P, lab, recheck_limit)
    x = pick.element
    deletion = _vd_skel_rec(_delete_element(P, x), lab, target_r, recheck_limit)
    link_factors, link_cx = _split_factors(P, lab, x, target_r, recheck_limit)
    if link_cx != cx.link_of((x,)):
        raise InvalidCertificate("link join does not match the complex link")
    link_cert = join_skeleton_certificate(link_factors, t - 1)
    return VDNode(x, deletion, link_cert)


def _base_case_factors(P: Poset, lab, t: int):
    """Factors for the all-ascending case: the spine simplex joined with a
    point layer per repeated-label gap."""
    from . import labeling as lb

    spine = lb.interval_spine(P, lab)
    if not isinstance(spine, lb.AscentSpine):
        raise InvalidCertificate(f"no spine in the base case: {spine}")
    interior = spine.elements[1:-1]
    gap_complexes = []
    for u, v in zip(spine.elements, spine.elements[1:]):
        sub = interval(P, u, v)
        if sub.n > 2:
            gap_complexes.append(order_complex(sub))
    s = len(gap_complexes)
    r0 = max(-1, t - s)
    simplex = simplex_complex(interior) if interior else empty_complex()
    factors = [JoinFactor(simplex, r0, cert_simplex_skeleton(interior, r0))]
    used = t - r0
    for k, g in enumerate(gap_complexes):
        if k < used:
            zero = g.skeleton(0)
            factors.append(JoinFactor(g, 0, cert_points(zero.vertices)))
        else:
            factors.append(JoinFactor(g, -1, VDLeaf()))
    return factors


def _split_factors(P: Poset, lab, x: str, target_r: int, recheck_limit: int):
    """Join factors for the link of the shed element: the lower interval at
    its own full complexity, the upper interval at what remains."""
    from . import labeling as lb

    bottom, top = P.elements[P.bottom], P.elements[P.top]
    below = interval(P, bottom, x)
    above = interval(P, x, top)
    below_stats = [lb.stats_of_sequence(c2, lab.sequence(c2)) for c2 in
                   (tuple(below.elements[i] for i in c)
                    for c in below.maximal_chains_idx())]
    pairs = {(st.ell0, st.ell1) for st in below_stats}
    if len(pairs) != 1:
        raise InvalidCertificate("lower interval has chain-dependent statistics")
    i, j = pairs.pop()

    factors = []
    for sub, tr in ((below, i + j), (above, target_r - i - j)):
        cxf = order_complex(sub)
        if tr >= 2:
            bound, _ = lb.min_chain_complexity(sub, lab)
            if tr > bound:
                raise InvalidCertificate("interval target exceeds its bound")
            factors.append(JoinFactor(cxf, tr - 2,
                                      _vd_skel_rec(sub, lab, tr, recheck_limit)))
        else:
            factors.append(JoinFactor(cxf, -1, VDLeaf()))
    joined = factors[0].complex.join(factors[1].complex).skeleton(target_r - 3)
    return factors, joined


def constructive_vd_full(P: Poset, lab, recheck_limit: int = 12):
    """Certificate for the full order complex, valid when no maximal chain
    repeats a label more than twice in a row."""
    from . import labeling as lb

    for c in P.maximal_chains_idx():
        names = tuple(P.elements[i] for i in c)
        seq = lab.sequence(names)
        for k in range(len(seq) - 2):
            if seq[k] == seq[k + 1] == seq[k + 2]:
                raise RepeatRunTooLong(names, seq[k])
    cx = order_complex(P)
    return cx, _vd_full_rec(P, lab, recheck_limit)


def _vd_full_rec(P: Poset, lab, recheck_limit: int):
    from . import labeling as lb

    cx = order_complex(P)
    if len(cx.facets) <= 1:
        return VDLeaf()
    chains = [tuple(P.elements[i] for i in c) for c in P.maximal_chains_idx()]
    if all(lb.stats_of_sequence(c, lab.sequence(c)).weakly_ascending
           for c in chains):
        spine = lb.interval_spine(P, lab)
        if not isinstance(spine, lb.AscentSpine):
            raise InvalidCertificate(f"no spine in the base case: {spine}")
        interior = spine.elements[1:-1]
        simplex = simplex_complex(interior) if interior else empty_complex()
        pairs = [(simplex, VDLeaf())]
        for u, v in zip(spine.elements, spine.elements[1:]):
            sub = interval(P, u, v)
            if sub.n > 2:
                g = order_complex(sub)
                if g.dim != 0:
                    raise InvalidCertificate(
                        "a gap interval is not an antichain; repeat runs too long")
                pairs.append((g, cert_points(g.vertices)))
        cert = join_full_certificate(pairs)
        joined = pairs[0][0]
        for g, _ in pairs[1:]:
            joined = joined.join(g)
        if joined != cx:
            raise InvalidCertificate("base case join does not match the complex")
        return cert

    pick = lex_greatest_single_descent_chain(P, lab, recheck_limit)
    x = pick.element
    deletion = _vd_full_rec(_delete_element(P, x), lab, recheck_limit)
    bottom, top = P.elements[P.bottom], P.elements[P.top]
    below, above = interval(P, bottom, x), interval(P, x, top)
    fA = order_complex(below)
    fB = order_complex(above)
    if fA.join(fB) != cx.link_of((x,)):
        raise InvalidCertificate("link join does not match the complex link")
    pairs = [(fA, _vd_full_rec(below, lab, recheck_limit)),
             (fB, _vd_full_rec(above, lab, recheck_limit))]
    return VDNode(x, deletion, join_full_certificate(pairs))

"""Facet-pairing representation of 3-dimensional pseudomanifolds.

A complex is a set of abstract tetrahedra together with an involutive
pairing of some of their triangular facets.  Facet ``f`` of a
tetrahedron is the triangle omitting corner ``f``; its corners are the
three corners different from ``f``, in increasing order.  All vertex,
edge and triangle identifications are derived from the pairings by
transitive closure, so the complexes may freely leave the simplicial
world (two corners of one tetrahedron may end up identified, two
triangles may span the same vertices, and so on).

Internally a sub-face is addressed by a flat id:

* corner  ``4*tet + corner``
* facet   ``4*tet + face``
* edge    ``6*tet + EDGE_INDEX[i][j]``
* end     ``2*edge + (0 or 1)`` for the endpoint at the smaller /
  larger corner of the edge cell.

Edge *ends* matter: the link of a vertex is a graph on end classes, not
on vertex classes, which is what keeps pinched complexes honest.
"""

from dataclasses import dataclass
from typing import NamedTuple, Optional

from .errors import (
    BadCorr,
    DuplicateFacet,
    FoldedComplexError,
    InteriorVertex,
    SelfPairedFacet,
)
from .perms import (
    ACT4,
    EDGE_INDEX,
    EDGE_PAIRS,
    FACE_CORNERS,
    INV4,
    PERMS4,
    corr_from_perm,
    perm_from_corr,
)
from .two import Triangles2, perm3_from_corr


class CornerRef(NamedTuple):
    tet: int
    corner: int


class FacetRef(NamedTuple):
    tet: int
    face: int


class EdgeRef(NamedTuple):
    tet: int
    corners: tuple


class Pairing(NamedTuple):
    """Identification of two facets.

    ``corr`` lists the images, inside ``b``'s tetrahedron, of the three
    corners of facet ``a`` taken in increasing order.
    """

    a: FacetRef
    b: FacetRef
    corr: tuple


@dataclass(frozen=True)
class FaceClass:
    dim: int
    index: int
    members: tuple
    boundary: bool

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class LinkComponent:
    kind: str  # "cycle" or "path"
    arcs: tuple  # (FacetRef, corner) incidences

    def __len__(self):
        return len(self.arcs)


@dataclass(frozen=True)
class BallCertificate:
    status: str  # "certified" | "refuted" | "unknown"
    reason: Optional[str] = None

    @property
    def certified(self):
        return self.status == "certified"

    @property
    def refuted(self):
        return self.status == "refuted"


class _UF:
    __slots__ = ("parent",)

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _norm_pairing(phi_a, phi_b, perm):
    if phi_a > phi_b:
        return (phi_b, phi_a, INV4[perm])
    return (phi_a, phi_b, perm)


class Pseudomanifold:
    """Immutable facet-pairing complex with derived face classes."""

    __slots__ = (
        "num_tets",
        "pairings",
        "glu_phi",
        "glu_perm",
        "_vroot",
        "_eroot",
        "_endroot",
        "vertex_classes",
        "edge_classes",
        "triangle_classes",
        "folded_edges",
        "_vclass_idx",
        "_eclass_idx",
        "_tclass_idx",
        "__dict__",
    )

    def __init__(self, num_tets, pairings):
        """``pairings``: iterable of normalized ``(phi_a, phi_b, perm)``.

        Use :func:`build` for validated construction from Pairing values.
        """
        self.num_tets = num_tets
        self.pairings = tuple(sorted(_norm_pairing(*p) for p in pairings))
        self._compute_classes()

    # -- construction ---------------------------------------------------

    def _compute_classes(self):
        n = self.num_tets
        glu_phi = [-1] * (4 * n)
        glu_perm = [0] * (4 * n)
        for pa, pb, perm in self.pairings:
            if pa == pb:
                raise SelfPairedFacet(f"facet {pa} glued to itself")
            for phi in (pa, pb):
                if glu_phi[phi] != -1:
                    raise DuplicateFacet(f"facet {phi} in two pairings")
            glu_phi[pa] = pb
            glu_perm[pa] = perm
            glu_phi[pb] = pa
            glu_perm[pb] = INV4[perm]
        self.glu_phi = glu_phi
        self.glu_perm = glu_perm

        vuf = _UF(4 * n)
        euf = _UF(6 * n)
        enduf = _UF(12 * n)
        for pa, pb, perm in self.pairings:
            t, f = divmod(pa, 4)
            t2 = pb // 4
            p = ACT4[perm]
            cs = FACE_CORNERS[f]
            for i in cs:
                vuf.union(4 * t + i, 4 * t2 + p[i])
            for a in range(3):
                for b in range(a + 1, 3):
                    i, j = cs[a], cs[b]
                    pi, pj = p[i], p[j]
                    e1 = 6 * t + EDGE_INDEX[i][j]
                    e2 = 6 * t2 + EDGE_INDEX[pi][pj]
                    euf.union(e1, e2)
                    # ends travel with the corners
                    k1 = 0 if i < j else 1
                    k2 = 0 if pi < pj else 1
                    enduf.union(2 * e1 + k1, 2 * e2 + k2)
                    enduf.union(2 * e1 + (1 - k1), 2 * e2 + (1 - k2))
        self._vroot = [vuf.find(x) for x in range(4 * n)]
        self._eroot = [euf.find(x) for x in range(6 * n)]
        self._endroot = [enduf.find(x) for x in range(12 * n)]

        folded = tuple(
            e
            for e in range(6 * n)
            if self._endroot[2 * e] == self._endroot[2 * e + 1]
        )
        self.folded_edges = folded

        # vertex classes
        by_root = {}
        for x in range(4 * n):
            by_root.setdefault(self._vroot[x], []).append(x)
        vmembers = sorted(by_root.values())
        # edge classes
        by_root = {}
        for x in range(6 * n):
            by_root.setdefault(self._eroot[x], []).append(x)
        emembers = sorted(by_root.values())
        # triangle classes
        tmembers = []
        for phi in range(4 * n):
            q = glu_phi[phi]
            if q == -1:
                tmembers.append([phi])
            elif phi < q:
                tmembers.append([phi, q])
        tmembers.sort()

        bd_corner = [False] * (4 * n)
        bd_edge = [False] * (6 * n)
        for phi in range(4 * n):
            if glu_phi[phi] == -1:
                t, f = divmod(phi, 4)
                cs = FACE_CORNERS[f]
                for i in cs:
                    bd_corner[4 * t + i] = True
                for a in range(3):
                    for b in range(a + 1, 3):
                        bd_edge[6 * t + EDGE_INDEX[cs[a]][cs[b]]] = True

        def vclass(idx, mem):
            refs = tuple(CornerRef(*divmod(x, 4)) for x in mem)
            bd = any(bd_corner[x] for x in mem)
            return FaceClass(0, idx, refs, bd)

        def eclass(idx, mem):
            refs = tuple(
                EdgeRef(x // 6, EDGE_PAIRS[x % 6]) for x in mem
            )
            bd = any(bd_edge[x] for x in mem)
            return FaceClass(1, idx, refs, bd)

        def tclass(idx, mem):
            refs = tuple(FacetRef(*divmod(x, 4)) for x in mem)
            return FaceClass(2, idx, refs, len(mem) == 1)

        self.vertex_classes = tuple(
            vclass(i, m) for i, m in enumerate(vmembers)
        )
        self.edge_classes = tuple(eclass(i, m) for i, m in enumerate(emembers))
        self.triangle_classes = tuple(
            tclass(i, m) for i, m in enumerate(tmembers)
        )

        self._vclass_idx = [0] * (4 * n)
        for cl in self.vertex_classes:
            for t, c in cl.members:
                self._vclass_idx[4 * t + c] = cl.index
        self._eclass_idx = [0] * (6 * n)
        for cl in self.edge_classes:
            for t, (i, j) in cl.members:
                self._eclass_idx[6 * t + EDGE_INDEX[i][j]] = cl.index
        self._tclass_idx = [0] * (4 * n)
        for cl in self.triangle_classes:
            for t, f in cl.members:
                self._tclass_idx[4 * t + f] = cl.index

    # -- identity -------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Pseudomanifold)
            and self.num_tets == other.num_tets
            and self.pairings == other.pairings
        )

    def __hash__(self):
        return hash((self.num_tets, self.pairings))

    def __repr__(self):
        return (
            f"Pseudomanifold(tets={self.num_tets}, "
            f"pairings={len(self.pairings)})"
        )

    # -- elementary queries ----------------------------------------------

    def vertex_class_of(self, tet, corner):
        return self._vclass_idx[4 * tet + corner]

    def edge_class_of(self, tet, i, j):
        return self._eclass_idx[6 * tet + EDGE_INDEX[i][j]]

    def triangle_class_of(self, tet, face):
        return self._tclass_idx[4 * tet + face]

    def end_class_of(self, tet, i, j, at):
        e = 6 * tet + EDGE_INDEX[i][j]
        lo = min(i, j)
        k = 0 if at == lo else 1
        return self._endroot[2 * e + k]

    def is_boundary_facet(self, tet, face):
        return self.glu_phi[4 * tet + face] == -1

    def boundary_facets(self):
        return [
            FacetRef(*divmod(phi, 4))
            for phi in range(4 * self.num_tets)
            if self.glu_phi[phi] == -1
        ]

    def face_classes(self, dim):
        if dim == 0:
            return list(self.vertex_classes)
        if dim == 1:
            return list(self.edge_classes)
        if dim == 2:
            return list(self.triangle_classes)
        raise ValueError(f"dim must be 0, 1 or 2, got {dim}")

    def edge_class_endpoints(self, eclass_index):
        """Vertex class indices of an edge class's two endpoints."""
        t, (i, j) = self.edge_classes[eclass_index].members[0]
        return (self.vertex_class_of(t, i), self.vertex_class_of(t, j))

    def triangle_edge_classes(self, tclass_index):
        t, f = self.triangle_classes[tclass_index].members[0]
        cs = FACE_CORNERS[f]
        return tuple(
            self.edge_class_of(t, cs[a], cs[b])
            for a, b in ((0, 1), (0, 2), (1, 2))
        )

    def triangle_vertex_classes(self, tclass_index):
        t, f = self.triangle_classes[tclass_index].members[0]
        return tuple(self.vertex_class_of(t, c) for c in FACE_CORNERS[f])

    # -- derived structure ------------------------------------------------

    def interior_vertices(self):
        return [cl for cl in self.vertex_classes if not cl.boundary]

    def dual_graph(self):
        """One node per tetrahedron, one arc per interior triangle class.

        Arcs are ``(tet1, tet2, triangle_class_index)``; loops occur when
        a facet is paired with another facet of the same tetrahedron.
        """
        arcs = []
        for cl in self.triangle_classes:
            if not cl.boundary:
                (t1, _), (t2, _) = cl.members
                arcs.append((t1, t2, cl.index))
        return arcs

    def dual_components(self):
        uf = _UF(self.num_tets)
        for t1, t2, _ in self.dual_graph():
            uf.union(t1, t2)
        comps = {}
        for t in range(self.num_tets):
            comps.setdefault(uf.find(t), []).append(t)
        return sorted(comps.values())

    def strongly_connected(self):
        return len(self.dual_components()) <= 1

    def vertex_star(self, vclass_index):
        """Corner incidences of the vertex class, sorted."""
        return [
            (t, c)
            for (t, c) in self.vertex_classes[vclass_index].members
        ]

    def vertex_link(self, vclass_index):
        """The link of a vertex class as a 2-dimensional complex.

        One triangle per corner incidence ``(t, i)``; side ``f`` of that
        triangle is glued whenever facet ``(t, f)`` is paired, carrying
        the corner correspondence along.
        """
        star = self.vertex_star(vclass_index)
        pos = {tc: k for k, tc in enumerate(star)}
        pairings2 = []
        for pa, pb, perm in self.pairings:
            t, f = divmod(pa, 4)
            t2, f2 = divmod(pb, 4)
            p = ACT4[perm]
            for i in FACE_CORNERS[f]:
                if (t, i) not in pos:
                    continue
                ka = pos[(t, i)]
                kb = pos[(t2, p[i])]
                others_a = [c for c in range(4) if c != i]
                others_b = [c for c in range(4) if c != p[i]]
                ea = others_a.index(f)
                eb = others_b.index(f2)
                # image pair of side ea's local corners under p
                src = [c for c in others_a if c != f]
                corr = tuple(others_b.index(p[c]) for c in src)
                perm3 = perm3_from_corr(ea, eb, corr)
                pairings2.append((3 * ka + ea, 3 * kb + eb, perm3))
        return Triangles2(len(star), pairings2)

    def link_strongly_connected(self, vclass_index):
        return self.vertex_link(vclass_index).is_strongly_connected()

    def boundary_link(self, vclass_index):
        """Components of the vertex link inside the boundary complex.

        Nodes are end classes at the vertex, one arc per boundary facet
        incidence; each component is a closed cycle or an open path.
        """
        cl = self.vertex_classes[vclass_index]
        if not cl.boundary:
            raise InteriorVertex(f"vertex class {vclass_index} is interior")
        arcs = []  # (node1, node2, (FacetRef, corner))
        for phi in range(4 * self.num_tets):
            if self.glu_phi[phi] != -1:
                continue
            t, f = divmod(phi, 4)
            for i in FACE_CORNERS[f]:
                if self._vclass_idx[4 * t + i] != vclass_index:
                    continue
                j, k = [c for c in FACE_CORNERS[f] if c != i]
                n1 = self.end_class_of(t, i, j, i)
                n2 = self.end_class_of(t, i, k, i)
                arcs.append((n1, n2, (FacetRef(t, f), i)))
        nodes = sorted({n for a in arcs for n in a[:2]})
        node_pos = {n: i for i, n in enumerate(nodes)}
        uf = _UF(len(nodes))
        degree = [0] * len(nodes)
        for n1, n2, _ in arcs:
            uf.union(node_pos[n1], node_pos[n2])
            degree[node_pos[n1]] += 1
            degree[node_pos[n2]] += 1
        comp_arcs = {}
        for n1, n2, inc in arcs:
            comp_arcs.setdefault(uf.find(node_pos[n1]), []).append(inc)
        comps = []
        for root, incs in sorted(comp_arcs.items()):
            members = [i for i in range(len(nodes)) if uf.find(i) == root]
            kind = (
                "cycle"
                if all(degree[m] == 2 for m in members)
                else "path"
            )
            comps.append(LinkComponent(kind, tuple(sorted(incs))))
        return comps

    def boundary(self):
        return BoundaryComplex(self)

    # -- global invariants -------------------------------------------------

    def is_simplicial(self):
        """Check the complex is a genuine simplicial complex.

        Returns ``(flag, witness)`` where the witness is a pair of
        offending faces: either a single cell with repeated vertex
        classes (paired with itself) or two distinct classes of equal
        dimension spanning the same vertex classes.
        """
        for cl in self.edge_classes:
            t, (i, j) = cl.members[0]
            if self.vertex_class_of(t, i) == self.vertex_class_of(t, j):
                return False, (cl, cl)
        for cl in self.triangle_classes:
            vs = self.triangle_vertex_classes(cl.index)
            if len(set(vs)) != 3:
                return False, (cl, cl)
        for t in range(self.num_tets):
            vs = [self.vertex_class_of(t, c) for c in range(4)]
            if len(set(vs)) != 4:
                tet = tuple(CornerRef(t, c) for c in range(4))
                return False, (tet, tet)
        seen = {}
        for cl in self.edge_classes:
            t, (i, j) = cl.members[0]
            key = frozenset(
                (self.vertex_class_of(t, i), self.vertex_class_of(t, j))
            )
            if key in seen:
                return False, (seen[key], cl)
            seen[key] = cl
        seen = {}
        for cl in self.triangle_classes:
            key = frozenset(self.triangle_vertex_classes(cl.index))
            if key in seen:
                return False, (seen[key], cl)
            seen[key] = cl
        seen = {}
        for t in range(self.num_tets):
            key = frozenset(self.vertex_class_of(t, c) for c in range(4))
            if key in seen:
                return False, (seen[key], t)
            seen[key] = t
        return True, None

    def euler_characteristic(self):
        if self.folded_edges:
            raise FoldedComplexError(
                "complex has a self-identified edge; "
                "cell counts are not meaningful"
            )
        return (
            len(self.vertex_classes)
            - len(self.edge_classes)
            + len(self.triangle_classes)
            - self.num_tets
        )

    def homology_ranks(self):
        from .homology import homology_ranks

        return homology_ranks(self)

    def signature(self):
        from .isosig import signature

        return signature(self)

    # -- derived constructors ----------------------------------------------

    def with_pairing(self, phi_a, phi_b, perm):
        return Pseudomanifold(
            self.num_tets, self.pairings + (_norm_pairing(phi_a, phi_b, perm),)
        )

    def without_pairing(self, pairing):
        rest = tuple(p for p in self.pairings if p != pairing)
        if len(rest) == len(self.pairings):
            raise ValueError(f"pairing {pairing} not present")
        return Pseudomanifold(self.num_tets, rest)

    def pairing_tuples(self):
        """The pairings as public Pairing values."""
        out = []
        for pa, pb, perm in self.pairings:
            a = FacetRef(*divmod(pa, 4))
            b = FacetRef(*divmod(pb, 4))
            out.append(Pairing(a, b, corr_from_perm(a.face, perm)))
        return out

    def extract_component(self, tets):
        """Sub-complex spanned by the given tetrahedra, relabeled."""
        tets = sorted(tets)
        remap = {t: k for k, t in enumerate(tets)}
        pairings = []
        for pa, pb, perm in self.pairings:
            t1, f1 = divmod(pa, 4)
            t2, f2 = divmod(pb, 4)
            if t1 in remap and t2 in remap:
                pairings.append(
                    (4 * remap[t1] + f1, 4 * remap[t2] + f2, perm)
                )
            elif t1 in remap or t2 in remap:
                raise ValueError("tets do not span a closed set of pairings")
        return Pseudomanifold(len(tets), pairings)

    # -- ball recognition ----------------------------------------------------

    def _link_type(self, vclass_index):
        """"disk", "sphere" or None for a vertex link."""
        link = self.vertex_link(vclass_index)
        if not link.is_strongly_connected():
            return None
        chi = link.euler_characteristic()
        if not self.vertex_classes[vclass_index].boundary:
            return "sphere" if chi == 2 and not link.boundary_edges() else None
        comps = self.boundary_link(vclass_index)
        if chi == 1 and len(comps) == 1 and comps[0].kind == "cycle":
            return "disk"
        return None

    def ball_certificate(self):
        """Partial 3-ball recognition.

        Refutation checks computable invariants; certification runs the
        greedy nucleus reduction and accepts when the complex unwinds to
        disjoint tetrahedra through disconnecting cuts (so that the
        reversed trace is a tree-of-tetrahedra construction followed by
        folds).  Anything else is Unknown.
        """
        if self.num_tets == 0:
            return BallCertificate("refuted", "empty")
        if not self.strongly_connected():
            return BallCertificate("refuted", "dual graph disconnected")
        simp, _ = self.is_simplicial()
        if not simp:
            return BallCertificate("refuted", "not a simplicial complex")
        if self.euler_characteristic() != 1:
            return BallCertificate("refuted", "euler characteristic != 1")
        b0, b1, b2, b3, torsion = self.homology_ranks()
        if (b0, b1, b2, b3) != (1, 0, 0, 0) or torsion:
            return BallCertificate("refuted", "homology of a ball fails")
        bd = self.boundary()
        if not bd.triangles:
            return BallCertificate("refuted", "boundary empty")
        if not bd.is_closed() or bd.num_components() != 1:
            return BallCertificate("refuted", "boundary not a closed surface")
        if bd.euler_characteristic() != 2:
            return BallCertificate("refuted", "boundary not a sphere")
        for cl in self.vertex_classes:
            want = "disk" if cl.boundary else "sphere"
            if self._link_type(cl.index) != want:
                return BallCertificate(
                    "refuted", f"vertex link {cl.index} is not a {want}"
                )
        if not self.interior_vertices():
            from .reduction import certifies_as_fold_built

            if certifies_as_fold_built(self):
                return BallCertificate("certified")
        return BallCertificate("unknown")


class BoundaryComplex:
    """The subcomplex of unpaired facets with induced identifications."""

    def __init__(self, parent):
        self.parent = parent
        self.triangles = tuple(
            cl for cl in parent.triangle_classes if cl.boundary
        )
        eidx = set()
        vidx = set()
        for cl in self.triangles:
            t, f = cl.members[0]
            cs = FACE_CORNERS[f]
            for a, b in ((0, 1), (0, 2), (1, 2)):
                eidx.add(parent.edge_class_of(t, cs[a], cs[b]))
            for c in cs:
                vidx.add(parent.vertex_class_of(t, c))
        self.edges = tuple(parent.edge_classes[i] for i in sorted(eidx))
        self.vertices = tuple(parent.vertex_classes[i] for i in sorted(vidx))

    def euler_characteristic(self):
        return len(self.vertices) - len(self.edges) + len(self.triangles)

    def edge_incidences(self):
        """edge class index -> list of boundary triangle class indices."""
        out = {cl.index: [] for cl in self.edges}
        for tcl in self.triangles:
            t, f = tcl.members[0]
            cs = FACE_CORNERS[f]
            for a, b in ((0, 1), (0, 2), (1, 2)):
                out[self.parent.edge_class_of(t, cs[a], cs[b])].append(
                    tcl.index
                )
        return out

    def is_closed(self):
        """True when every boundary edge lies in two boundary triangles.

        A triangle containing the same edge class twice counts twice.
        """
        return all(
            len(tris) == 2 for tris in self.edge_incidences().values()
        )

    def num_components(self):
        tri_ids = [cl.index for cl in self.triangles]
        pos = {i: k for k, i in enumerate(tri_ids)}
        uf = _UF(len(tri_ids))
        for tris in self.edge_incidences().values():
            for other in tris[1:]:
                uf.union(pos[tris[0]], pos[other])
        return len({uf.find(k) for k in range(len(tri_ids))})


# -- public operation names -------------------------------------------------


def build(num_tets, pairings):
    """Validated construction from :class:`Pairing` values."""
    norm = []
    for pr in pairings:
        a, b, corr = pr
        a = FacetRef(*a)
        b = FacetRef(*b)
        for ref in (a, b):
            if not (0 <= ref.tet < num_tets) or ref.face not in (0, 1, 2, 3):
                raise BadCorr(f"facet reference {ref} out of range")
        if a == b:
            raise SelfPairedFacet(f"facet {a} glued to itself")
        perm = perm_from_corr(a.face, b.face, tuple(corr))
        if perm is None:
            raise BadCorr(f"corr {corr} is not a corner bijection for {a}->{b}")
        norm.append((4 * a.tet + a.face, 4 * b.tet + b.face, perm))
    return Pseudomanifold(num_tets, norm)


def face_classes(P, dim):
    return P.face_classes(dim)


def boundary(P):
    return P.boundary()


def boundary_link(P, v):
    if isinstance(v, FaceClass):
        v = v.index
    return P.boundary_link(v)


def is_simplicial(P):
    return P.is_simplicial()


def interior_vertices(P):
    return P.interior_vertices()


def dual_graph(P):
    return P.dual_graph()


def strongly_connected(P):
    return P.strongly_connected()


def link_strongly_connected(P, v):
    if isinstance(v, FaceClass):
        v = v.index
    return P.link_strongly_connected(v)


def euler_characteristic(P):
    return P.euler_characteristic()


def homology_ranks(P):
    return P.homology_ranks()


def signature(P):
    return P.signature()


def isomorphic(P, Q):
    return P.signature() == Q.signature()


def ball_certificate(P):
    return P.ball_certificate()


def disjoint_tetrahedra(n):
    return Pseudomanifold(n, ())

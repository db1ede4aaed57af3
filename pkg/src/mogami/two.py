"""Two-dimensional pseudomanifolds as edge-pairings of abstract triangles.

This is the d=2 counterpart of the main engine: a set of triangles with
an involutive pairing of their boundary edges.  Edge ``e`` of a triangle
is the side omitting corner ``e``; its corners are the two corners
different from ``e`` in increasing order.  These complexes appear as
vertex links of the 3-dimensional complexes and as cone bases.
"""

from .errors import BadCorr, DuplicateFacet, FormatError, SelfPairedFacet
from .perms import INV3, MUL3, PERM3_INDEX, PERMS3


def _edge_corners(e):
    return tuple(c for c in range(3) if c != e)


EDGE2_CORNERS = tuple(_edge_corners(e) for e in range(3))


def perm3_from_corr(edge_a, edge_b, corr):
    if len(corr) != 2 or len(set(corr)) != 2:
        return None
    if any(c not in (0, 1, 2) for c in corr) or edge_b in corr:
        return None
    img = [None] * 3
    img[edge_a] = edge_b
    for c, t in zip(EDGE2_CORNERS[edge_a], corr):
        img[c] = t
    return PERM3_INDEX[tuple(img)]


class _UnionFind:
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


class Triangles2:
    """An edge-paired collection of triangles (a 2-pseudomanifold).

    ``pairings`` is a sequence of ``(eid_a, eid_b, perm3)`` with
    ``eid = 3*triangle + edge`` and ``perm3`` an S3 index mapping the
    corners of triangle a to triangle b (sending ``edge_a`` to
    ``edge_b``).
    """

    def __init__(self, num_tris, pairings, labels=None):
        self.num_tris = num_tris
        norm = []
        for ea, eb, perm in pairings:
            if ea == eb:
                raise SelfPairedFacet(f"edge {ea} paired with itself")
            if ea > eb:
                ea, eb, perm = eb, ea, INV3[perm]
            norm.append((ea, eb, perm))
        norm.sort()
        self.pairings = tuple(norm)
        self.labels = labels

        n = num_tris
        glu_edge = [-1] * (3 * n)
        glu_perm = [0] * (3 * n)
        for ea, eb, perm in self.pairings:
            if glu_edge[ea] != -1 or glu_edge[eb] != -1:
                raise DuplicateFacet(f"edge in two pairings: {ea}, {eb}")
            glu_edge[ea] = eb
            glu_perm[ea] = perm
            glu_edge[eb] = ea
            glu_perm[eb] = INV3[perm]
        self.glu_edge = glu_edge
        self.glu_perm = glu_perm

        uf = _UnionFind(3 * n)
        for ea, eb, perm in self.pairings:
            t, e = divmod(ea, 3)
            t2 = eb // 3
            p = PERMS3[perm]
            for c in EDGE2_CORNERS[e]:
                uf.union(3 * t + c, 3 * t2 + p[c])
        self._corner_uf = uf
        self.vertex_class_of = [uf.find(x) for x in range(3 * n)]
        self.num_vertex_classes = len(set(self.vertex_class_of))
        self.num_edge_classes = 3 * n - len(self.pairings)

    def euler_characteristic(self):
        return self.num_vertex_classes - self.num_edge_classes + self.num_tris

    def boundary_edges(self):
        return [e for e in range(3 * self.num_tris) if self.glu_edge[e] == -1]

    def dual_components(self):
        uf = _UnionFind(self.num_tris)
        for ea, eb, _ in self.pairings:
            uf.union(ea // 3, eb // 3)
        comps = {}
        for t in range(self.num_tris):
            comps.setdefault(uf.find(t), []).append(t)
        return list(comps.values())

    def is_strongly_connected(self):
        return len(self.dual_components()) <= 1

    def dual_spanning_tree(self):
        """Pairing indices forming a BFS spanning tree of the dual graph.

        Requires a connected dual graph.
        """
        adj = {t: [] for t in range(self.num_tris)}
        for k, (ea, eb, _) in enumerate(self.pairings):
            adj[ea // 3].append((eb // 3, k))
            adj[eb // 3].append((ea // 3, k))
        seen = {0} if self.num_tris else set()
        tree = []
        queue = [0] if self.num_tris else []
        while queue:
            t = queue.pop(0)
            for t2, k in adj[t]:
                if t2 not in seen:
                    seen.add(t2)
                    tree.append(k)
                    queue.append(t2)
        if len(seen) != self.num_tris:
            raise ValueError("dual graph not connected")
        return tree


def triangles2_from_vertex_lists(tris):
    """Build a Triangles2 from triangles given as label triples.

    Edges are paired by matching equal label pairs; an edge occurring in
    more than two triangles is rejected.
    """
    for t, tri in enumerate(tris):
        if len(tri) != 3 or len(set(tri)) != 3:
            raise FormatError(f"triangle {t} needs 3 distinct labels")
    occ = {}
    for t, tri in enumerate(tris):
        for e in range(3):
            key = frozenset(tri[c] for c in EDGE2_CORNERS[e])
            occ.setdefault(key, []).append((t, e))
    pairings = []
    for key, places in occ.items():
        if len(places) > 2:
            raise FormatError(f"edge {set(key)} lies in {len(places)} triangles")
        if len(places) == 2:
            (ta, ea), (tb, eb) = places
            src = [tris[ta][c] for c in EDGE2_CORNERS[ea]]
            dst = [tris[tb][c] for c in EDGE2_CORNERS[eb]]
            corr = tuple(EDGE2_CORNERS[eb][dst.index(lab)] for lab in src)
            perm = perm3_from_corr(ea, eb, corr)
            if perm is None:
                raise BadCorr(f"cannot match edge {set(key)}")
            pairings.append((3 * ta + ea, 3 * tb + eb, perm))
    return Triangles2(len(tris), pairings, labels=tuple(tuple(t) for t in tris))


def isomorphic_triangulations(a, b):
    """Backtracking isomorphism test between two Triangles2 complexes.

    Used as an oracle at small sizes; tries every triangle bijection
    consistent with the edge pairings and some corner relabeling.
    """
    if a.num_tris != b.num_tris:
        return False
    if len(a.pairings) != len(b.pairings):
        return False
    n = a.num_tris

    def extend(img, lab, t):
        # img: triangle map a->b (injective), lab: S3 index per a-triangle
        stack = [t]
        while stack:
            s = stack.pop()
            p = PERMS3[lab[s]]
            for e in range(3):
                ea = 3 * s + e
                eb = 3 * img[s] + p[e]
                ga, gb = a.glu_edge[ea], b.glu_edge[eb]
                if (ga == -1) != (gb == -1):
                    return False
                if ga == -1:
                    continue
                t2 = ga // 3
                u2 = gb // 3
                want = MUL3[b.glu_perm[eb]][MUL3[lab[s]][INV3[a.glu_perm[ea]]]]
                if img[t2] is None:
                    if u2 in img:
                        return False
                    img[t2] = u2
                    lab[t2] = want
                    stack.append(t2)
                elif img[t2] != u2 or lab[t2] != want:
                    return False
        return True

    seeds = [c[0] for c in a.dual_components()]

    def rec(k, img, lab):
        if k == len(seeds):
            return True
        t = seeds[k]
        for u in range(n):
            if u in img:
                continue
            for rho in range(6):
                img2 = list(img)
                lab2 = list(lab)
                img2[t] = u
                lab2[t] = rho
                if extend(img2, lab2, t) and rec(k + 1, img2, lab2):
                    return True
        return False

    return rec(0, [None] * n, [0] * n)

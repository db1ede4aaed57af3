"""Integer homology of facet-pairing complexes.

Cells are the derived face classes.  Each class is oriented by its
first (lowest-id) member with corners in increasing order; the other
members carry a relative sign, read off from the edge-end classes in
dimension one and from the pairing permutation in dimension two.  The
boundary matrices are then ordinary signed incidence matrices and the
Betti numbers / torsion come out of Smith normal form over Z, computed
with exact arbitrary-precision integers.
"""

from .errors import FoldedComplexError
from .perms import ACT4, EDGE_INDEX, FACE_CORNERS


def smith_normal_form(rows):
    """Invariant factors (positive, divisibility chain) of an int matrix.

    The input is a list of row lists and is not modified.
    """
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    factors = []
    k = 0
    while k < min(nr, nc):
        # locate a nonzero entry of least magnitude in the submatrix
        best = None
        for i in range(k, nr):
            row = m[i]
            for j in range(k, nc):
                v = row[j]
                if v != 0 and (best is None or abs(v) < abs(best[2])):
                    best = (i, j, v)
                    if abs(v) == 1:
                        break
            if best is not None and abs(best[2]) == 1:
                break
        if best is None:
            break
        i, j, _ = best
        m[k], m[i] = m[i], m[k]
        if j != k:
            for row in m:
                row[k], row[j] = row[j], row[k]
        while True:
            # clear column k
            redo = False
            for i in range(k + 1, nr):
                if m[i][k]:
                    q = m[i][k] // m[k][k]
                    if q:
                        m[i] = [a - q * b for a, b in zip(m[i], m[k])]
                    if m[i][k]:
                        m[k], m[i] = m[i], m[k]
                        redo = True
            if redo:
                continue
            # clear row k
            for j in range(k + 1, nc):
                if m[k][j]:
                    q = m[k][j] // m[k][k]
                    if q:
                        for row in m:
                            row[j] -= q * row[k]
                    if m[k][j]:
                        for row in m:
                            row[k], row[j] = row[j], row[k]
                        redo = True
                        break
            if not redo:
                break
        # enforce divisibility of the remaining block
        d = m[k][k]
        offender = None
        for i in range(k + 1, nr):
            for j in range(k + 1, nc):
                if m[i][j] % d:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            m[k] = [a + b for a, b in zip(m[k], m[offender])]
            continue
        factors.append(abs(d))
        k += 1
    return factors


def integer_rank(rows):
    return len(smith_normal_form(rows))


def _edge_member_sign(P, cell, root):
    if P._endroot[2 * cell] == P._endroot[2 * root]:
        return 1
    return -1


_PARITY3 = {  # parity of the permutation sorting a triple
    (0, 1, 2): 1, (0, 2, 1): -1, (1, 0, 2): -1,
    (1, 2, 0): 1, (2, 0, 1): 1, (2, 1, 0): -1,
}


def _triangle_member_signs(P, tclass):
    """Sign per member facet, root first."""
    signs = {tclass.members[0]: 1}
    if len(tclass.members) == 2:
        a = tclass.members[0]
        b = tclass.members[1]
        phi_a = 4 * a.tet + a.face
        perm = P.glu_perm[phi_a]
        p = ACT4[perm]
        imgs = [p[c] for c in FACE_CORNERS[a.face]]
        order = tuple(sorted(range(3), key=lambda k: imgs[k]))
        signs[b] = _PARITY3[order]
    return signs


def boundary_matrices(P):
    """The three signed boundary matrices of the class chain complex."""
    if P.folded_edges:
        raise FoldedComplexError(
            "complex has a self-identified edge; homology undefined"
        )
    nv = len(P.vertex_classes)
    ne = len(P.edge_classes)
    nf = len(P.triangle_classes)
    nt = P.num_tets

    d1 = [[0] * ne for _ in range(nv)]
    for cl in P.edge_classes:
        t, (i, j) = cl.members[0]
        d1[P.vertex_class_of(t, j)][cl.index] += 1
        d1[P.vertex_class_of(t, i)][cl.index] -= 1

    edge_root = {}
    for cl in P.edge_classes:
        t, (i, j) = cl.members[0]
        edge_root[cl.index] = 6 * t + EDGE_INDEX[i][j]

    d2 = [[0] * nf for _ in range(ne)]
    for cl in P.triangle_classes:
        t, f = cl.members[0]
        a, b, c = FACE_CORNERS[f]
        for (x, y), sgn in (((b, c), 1), ((a, c), -1), ((a, b), 1)):
            cell = 6 * t + EDGE_INDEX[x][y]
            eidx = P._eclass_idx[cell]
            s = _edge_member_sign(P, cell, edge_root[eidx])
            d2[eidx][cl.index] += sgn * s

    d3 = [[0] * nt for _ in range(nf)]
    for t in range(nt):
        for f in range(4):
            tidx = P._tclass_idx[4 * t + f]
            signs = _triangle_member_signs(P, P.triangle_classes[tidx])
            s = signs[(t, f)]
            d3[tidx][t] += (-1) ** f * s
    return d1, d2, d3


def homology_ranks(P):
    """(b0, b1, b2, b3, H1 torsion coefficients) over the integers."""
    d1, d2, d3 = boundary_matrices(P)
    nv = len(P.vertex_classes)
    ne = len(P.edge_classes)
    nf = len(P.triangle_classes)
    nt = P.num_tets
    f1 = smith_normal_form(d1) if nv and ne else []
    f2 = smith_normal_form(d2) if ne and nf else []
    f3 = smith_normal_form(d3) if nf and nt else []
    r1, r2, r3 = len(f1), len(f2), len(f3)
    b0 = nv - r1
    b1 = ne - r1 - r2
    b2 = nf - r2 - r3
    b3 = nt - r3
    torsion = tuple(d for d in f2 if d > 1)
    return (b0, b1, b2, b3, torsion)

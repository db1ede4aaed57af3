"""Permutation tables for S4 (tetrahedron corners) and S3 (triangle corners).

Permutations are indexed by their position in lexicographic order, so
index 0 is the identity.  ``MUL4[a][b]`` is the index of the composite
"apply b, then a"; ``ACT4[a]`` is the image tuple itself.
"""

from itertools import permutations

PERMS4 = tuple(permutations(range(4)))
PERM4_INDEX = {p: i for i, p in enumerate(PERMS4)}
IDENT4 = 0

ACT4 = PERMS4
INV4 = tuple(
    PERM4_INDEX[tuple(p.index(i) for i in range(4))] for p in PERMS4
)
MUL4 = tuple(
    tuple(PERM4_INDEX[tuple(a[b[i]] for i in range(4))] for b in PERMS4)
    for a in PERMS4
)

PERMS3 = tuple(permutations(range(3)))
PERM3_INDEX = {p: i for i, p in enumerate(PERMS3)}
INV3 = tuple(
    PERM3_INDEX[tuple(p.index(i) for i in range(3))] for p in PERMS3
)
MUL3 = tuple(
    tuple(PERM3_INDEX[tuple(a[b[i]] for i in range(3))] for b in PERMS3)
    for a in PERMS3
)

# Corner pairs of a tetrahedron in canonical order; EDGE_INDEX[i][j] is
# the slot of edge {i,j}.
EDGE_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_INDEX = [[None] * 4 for _ in range(4)]
for _k, (_i, _j) in enumerate(EDGE_PAIRS):
    EDGE_INDEX[_i][_j] = _k
    EDGE_INDEX[_j][_i] = _k
EDGE_INDEX = tuple(tuple(row) for row in EDGE_INDEX)


def face_corners(face):
    """The three corners of a tetrahedron facet, in increasing order."""
    return tuple(c for c in range(4) if c != face)


FACE_CORNERS = tuple(face_corners(f) for f in range(4))


def perm_from_corr(face_a, face_b, corr):
    """Extend an image triple on ``face_a``'s corners to a full S4 index.

    ``corr`` lists the images of the corners of ``face_a`` (in increasing
    order) inside the partner tetrahedron; the omitted corner ``face_a``
    is sent to ``face_b``.  Returns None when the data is not a bijection.
    """
    if len(corr) != 3 or len(set(corr)) != 3:
        return None
    if any(c not in (0, 1, 2, 3) for c in corr):
        return None
    if face_b in corr:
        return None
    img = [None] * 4
    img[face_a] = face_b
    for c, t in zip(FACE_CORNERS[face_a], corr):
        img[c] = t
    return PERM4_INDEX[tuple(img)]


def corr_from_perm(face_a, perm_idx):
    """Image triple of ``face_a``'s corners under the S4 permutation."""
    p = ACT4[perm_idx]
    return tuple(p[c] for c in FACE_CORNERS[face_a])

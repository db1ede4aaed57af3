# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled canonical signature kernel.

Mirrors ``_sig_py.signature_tokens`` token for token; see that module
for the algorithm description.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memcpy, memset

from .perms import ACT4 as _ACT4
from .perms import INV4 as _INV4
from .perms import MUL4 as _MUL4

cdef int MUL[24][24]
cdef int INV[24]
cdef int ACT[24][4]

for _a in range(24):
    INV[_a] = _INV4[_a]
    for _b in range(24):
        MUL[_a][_b] = _MUL4[_a][_b]
    for _c in range(4):
        ACT[_a][_c] = _ACT4[_a][_c]


cdef int _encode(int n_comp, int* glu_phi, int* glu_perm, int start, int rho,
                 int* out, int* best, int best_len,
                 int* lab, int* pos, int* order, unsigned char* consumed,
                 int num_tets) noexcept:
    """Token stream into ``out``; returns its length, or -1 when the
    stream is lexicographically >= the current best."""
    cdef int i, t, fp, f, phi, partner, t2, p, q, f2p, nout, ci, v, k
    cdef bint prefix_equal = best_len >= 0
    cdef int nord = 1
    cdef int vals[4]

    for i in range(num_tets):
        lab[i] = -1
    memset(consumed, 0, 4 * num_tets)
    lab[start] = rho
    pos[start] = 0
    order[0] = start
    nout = 0
    ci = 0

    i = 0
    while i < nord:
        t = order[i]
        for fp in range(4):
            if consumed[4 * i + fp]:
                continue
            f = ACT[INV[lab[t]]][fp]
            phi = 4 * t + f
            partner = glu_phi[phi]
            if partner < 0:
                vals[0] = 0
                k = 1
            else:
                t2 = partner >> 2
                p = glu_perm[phi]
                if lab[t2] < 0:
                    lab[t2] = MUL[lab[t]][INV[p]]
                    pos[t2] = nord
                    order[nord] = t2
                    consumed[4 * nord + fp] = 1
                    nord += 1
                    vals[0] = 1
                    k = 1
                else:
                    q = MUL[lab[t2]][MUL[p][INV[lab[t]]]]
                    f2p = ACT[q][fp]
                    consumed[4 * pos[t2] + f2p] = 1
                    vals[0] = 2
                    vals[1] = pos[t2]
                    vals[2] = f2p
                    vals[3] = q
                    k = 4
            for v in range(k):
                if prefix_equal:
                    if ci >= best_len:
                        return -1
                    if vals[v] > best[ci]:
                        return -1
                    if vals[v] < best[ci]:
                        prefix_equal = False
                    ci += 1
                out[nout] = vals[v]
                nout += 1
        i += 1
    return nout


def signature_tokens(int num_tets, glu_phi_list, glu_perm_list):
    """Canonical token tuple; identical to the pure-Python kernel."""
    cdef int n = num_tets
    if n == 0:
        return ()
    cdef int* glu_phi = <int*> malloc(4 * n * sizeof(int))
    cdef int* glu_perm = <int*> malloc(4 * n * sizeof(int))
    cdef int* lab = <int*> malloc(n * sizeof(int))
    cdef int* pos = <int*> malloc(n * sizeof(int))
    cdef int* order = <int*> malloc(n * sizeof(int))
    cdef unsigned char* consumed = <unsigned char*> malloc(4 * n)
    cdef int cap = 16 * n + 8
    cdef int* cand = <int*> malloc(cap * sizeof(int))
    cdef int* best = <int*> malloc(cap * sizeof(int))
    cdef int* seen = <int*> malloc(n * sizeof(int))
    cdef int* comp = <int*> malloc(n * sizeof(int))
    cdef int i, s, t, f, partner, ncomp, k, rho, ret, best_len
    cdef list streams = []

    try:
        for i in range(4 * n):
            glu_phi[i] = glu_phi_list[i]
            glu_perm[i] = glu_perm_list[i]
        for i in range(n):
            seen[i] = 0
        for s in range(n):
            if seen[s]:
                continue
            comp[0] = s
            seen[s] = 1
            ncomp = 1
            k = 0
            while k < ncomp:
                t = comp[k]
                for f in range(4):
                    partner = glu_phi[4 * t + f]
                    if partner >= 0 and not seen[partner >> 2]:
                        seen[partner >> 2] = 1
                        comp[ncomp] = partner >> 2
                        ncomp += 1
                k += 1
            # lexicographic minimum over starts within the component
            best_len = -1
            for k in range(ncomp):
                for rho in range(24):
                    ret = _encode(ncomp, glu_phi, glu_perm, comp[k], rho,
                                  cand, best, best_len,
                                  lab, pos, order, consumed, n)
                    if ret >= 0:
                        memcpy(best, cand, ret * sizeof(int))
                        best_len = ret
            streams.append(tuple(best[i] for i in range(best_len)))
        streams.sort()
        out = []
        for k, stream in enumerate(streams):
            if k:
                out.append(-1)
            out.extend(stream)
        return tuple(out)
    finally:
        free(glu_phi)
        free(glu_perm)
        free(lab)
        free(pos)
        free(order)
        free(consumed)
        free(cand)
        free(best)
        free(seen)
        free(comp)

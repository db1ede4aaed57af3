"""Pure-Python canonical signature kernel.

The compiled twin in ``_sigcore.pyx`` implements the identical
algorithm; both must produce byte-identical token streams.

The encoding walks the complex breadth-first from a start tetrahedron
with one of the 24 corner labelings.  Newly discovered tetrahedra are
relabeled so the discovering gluing becomes the identity permutation;
each facet slot, taken in canonical order, emits one token: 0 for
boundary, 1 for a discovery, or (2, partner index, partner face,
permutation) for a back reference.  The signature is the lexicographic
minimum over all starts, computed per dual component; component streams
are sorted and joined with -1 separators.
"""

from .perms import ACT4, INV4, MUL4


def _encode(glu_phi, glu_perm, comp, start, rho, best):
    lab = {}
    pos = {}
    lab[start] = rho
    pos[start] = 0
    order = [start]
    consumed = set()
    tokens = []
    prefix_equal = best is not None
    ci = 0

    def emit(v):
        nonlocal prefix_equal, ci
        if prefix_equal:
            if ci >= len(best):
                return False
            bv = best[ci]
            if v > bv:
                return False
            if v < bv:
                prefix_equal = False
            ci += 1
        tokens.append(v)
        return True

    i = 0
    while i < len(order):
        t = order[i]
        linv = INV4[lab[t]]
        linv_act = ACT4[linv]
        for fp in range(4):
            if (i, fp) in consumed:
                continue
            f = linv_act[fp]
            phi = 4 * t + f
            partner = glu_phi[phi]
            if partner < 0:
                if not emit(0):
                    return None
                continue
            t2 = partner // 4
            p = glu_perm[phi]
            if t2 not in lab:
                lab[t2] = MUL4[lab[t]][INV4[p]]
                pos[t2] = len(order)
                order.append(t2)
                consumed.add((pos[t2], fp))
                if not emit(1):
                    return None
            else:
                q = MUL4[lab[t2]][MUL4[p][linv]]
                f2p = ACT4[q][fp]
                consumed.add((pos[t2], f2p))
                for v in (2, pos[t2], f2p, q):
                    if not emit(v):
                        return None
        i += 1
    return tokens


def _components(num_tets, glu_phi):
    seen = [False] * num_tets
    comps = []
    for s in range(num_tets):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        k = 0
        while k < len(comp):
            t = comp[k]
            for f in range(4):
                partner = glu_phi[4 * t + f]
                if partner >= 0 and not seen[partner // 4]:
                    seen[partner // 4] = True
                    comp.append(partner // 4)
            k += 1
        comps.append(sorted(comp))
    return comps


def signature_tokens(num_tets, glu_phi, glu_perm):
    """Canonical token tuple; relabeling invariant."""
    comp_streams = []
    for comp in _components(num_tets, glu_phi):
        best = None
        for s in comp:
            for rho in range(24):
                cand = _encode(glu_phi, glu_perm, comp, s, rho, best)
                if cand is not None:
                    best = cand
        comp_streams.append(tuple(best))
    comp_streams.sort()
    out = []
    for k, stream in enumerate(comp_streams):
        if k:
            out.append(-1)
        out.extend(stream)
    return tuple(out)

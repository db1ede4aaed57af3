"""Canonical signatures and isomorphism of facet-pairing complexes.

The signature is a relabeling-invariant encoding obtained by minimizing
a breadth-first token stream over all 24 * num_tets starting choices;
two complexes are isomorphic exactly when their signatures coincide.
This minimization is the package's hot spot: the compiled kernel is
used when available, with an automatic fallback to the pure-Python
twin.  Set ``MOGAMI_PURE=1`` to force the fallback.
"""

import os

from . import _sig_py

if os.environ.get("MOGAMI_PURE") == "1":
    _kernel = _sig_py
    BACKEND = "pure"
else:
    try:
        from . import _sigcore as _kernel

        BACKEND = "compiled"
    except ImportError:
        _kernel = _sig_py
        BACKEND = "pure"


def signature_tokens(P):
    return _kernel.signature_tokens(P.num_tets, P.glu_phi, P.glu_perm)


def signature(P):
    """Canonical string, cached on the complex."""
    sig = P.__dict__.get("_signature")
    if sig is None:
        sig = ".".join(str(v) for v in signature_tokens(P))
        P.__dict__["_signature"] = sig
    return sig


def isomorphic(P, Q):
    return signature(P) == signature(Q)

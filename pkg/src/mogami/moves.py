"""Gluing and ungluing moves with precondition checks and classification.

A gluing identifies two boundary facets.  Its kind is read off the
shared-face-class profile of the two triangles at application time,
computed on derived classes (never on vertex labels):

* different dual components          -> UNITE
* exactly one shared edge class      -> FOLD
* exactly two shared edge classes    -> HEALING (the wound-closing move)
* three shared edge classes          -> LC (generic)
* shared vertices, no shared edge    -> MOGAMI
* empty intersection, same component -> OTHER

FOLD and HEALING are sub-kinds of LC gluings; every LC gluing is a
Mogami gluing.  Ungluings remove an interior triangle's pairing: a
SPLIT when all three of its edges lie on the boundary, a SPREAD when
exactly one is interior.
"""

import enum
from dataclasses import dataclass

from .core import FacetRef, Pseudomanifold
from .errors import (
    AmbiguousCorr,
    BadCorr,
    KindMismatch,
    NotBoundary,
    NotHealable,
    NotInterior,
    SameFacet,
    StepRejected,
)
from .perms import FACE_CORNERS, perm_from_corr


class Kind(enum.Enum):
    UNITE = "unite"
    FOLD = "fold"
    HEALING = "healing"
    LC = "lc"
    MOGAMI = "mogami"
    OTHER = "other"

    @property
    def is_lc(self):
        return self in (Kind.FOLD, Kind.HEALING, Kind.LC)

    @property
    def is_mogami(self):
        return self.is_lc or self is Kind.MOGAMI


def _facet(P, fr):
    fr = FacetRef(*fr)
    if not (0 <= fr.tet < P.num_tets) or fr.face not in (0, 1, 2, 3):
        raise NotBoundary(f"no such facet {fr}")
    return fr


def _require_boundary(P, fr):
    if not P.is_boundary_facet(fr.tet, fr.face):
        raise NotBoundary(f"facet {fr} is already paired")


def _edge_cells(fr):
    cs = FACE_CORNERS[fr.face]
    return [(cs[a], cs[b]) for a, b in ((0, 1), (0, 2), (1, 2))]


def shared_profile(P, f1, f2):
    """(shared edge classes, shared vertex classes) of two facets."""
    e1 = {P.edge_class_of(f1.tet, i, j) for i, j in _edge_cells(f1)}
    e2 = {P.edge_class_of(f2.tet, i, j) for i, j in _edge_cells(f2)}
    v1 = {P.vertex_class_of(f1.tet, c) for c in FACE_CORNERS[f1.face]}
    v2 = {P.vertex_class_of(f2.tet, c) for c in FACE_CORNERS[f2.face]}
    return e1 & e2, v1 & v2


def classify_gluing(P, f1, f2, corr=None):
    f1, f2 = _facet(P, f1), _facet(P, f2)
    if f1 == f2:
        raise SameFacet(f"{f1}")
    _require_boundary(P, f1)
    _require_boundary(P, f2)
    comp_of = {}
    for k, comp in enumerate(P.dual_components()):
        for t in comp:
            comp_of[t] = k
    if comp_of[f1.tet] != comp_of[f2.tet]:
        return Kind.UNITE
    shared_e, shared_v = shared_profile(P, f1, f2)
    if len(shared_e) == 1:
        return Kind.FOLD
    if len(shared_e) == 2:
        return Kind.HEALING
    if len(shared_e) == 3:
        return Kind.LC
    if shared_v:
        return Kind.MOGAMI
    return Kind.OTHER


def derived_corrs(P, f1, f2):
    """All corner bijections gluing f1 to f2 identically on shared cells.

    Every shared edge class must map to itself end-coherently; the
    remaining corners pair up freely only when forced.  Returns a list
    of corr triples (possibly empty).
    """
    shared_e, _ = shared_profile(P, f1, f2)
    cells1 = {
        P.edge_class_of(f1.tet, i, j): [] for i, j in _edge_cells(f1)
    }
    for i, j in _edge_cells(f1):
        cells1[P.edge_class_of(f1.tet, i, j)].append((i, j))
    cells2 = {
        P.edge_class_of(f2.tet, i, j): [] for i, j in _edge_cells(f2)
    }
    for i, j in _edge_cells(f2):
        cells2[P.edge_class_of(f2.tet, i, j)].append((i, j))

    partial_maps = [{}]
    for ec in sorted(shared_e):
        options = []
        for i, j in cells1[ec]:
            for k, l in cells2[ec]:
                end1 = P.end_class_of(f1.tet, i, j, i)
                if end1 == P.end_class_of(f2.tet, k, l, k):
                    options.append({i: k, j: l})
                elif end1 == P.end_class_of(f2.tet, k, l, l):
                    options.append({i: l, j: k})
        new_maps = []
        for pm in partial_maps:
            for opt in options:
                merged = dict(pm)
                ok = True
                for a, b in opt.items():
                    if merged.get(a, b) != b:
                        ok = False
                        break
                    merged[a] = b
                if ok and len(set(merged.values())) == len(merged):
                    new_maps.append(merged)
        partial_maps = new_maps

    corrs = []
    cs1 = FACE_CORNERS[f1.face]
    cs2 = FACE_CORNERS[f2.face]
    for pm in partial_maps:
        free1 = [c for c in cs1 if c not in pm]
        free2 = [c for c in cs2 if c not in pm.values()]
        if len(free1) != len(free2):
            continue
        if len(free1) > 1:
            # underdetermined; derived corrs exist only where forced
            continue
        full = dict(pm)
        for a, b in zip(free1, free2):
            full[a] = b
        corr = tuple(full[c] for c in cs1)
        if corr not in corrs:
            corrs.append(corr)
    return corrs


def corr_is_coherent(P, f1, f2, corr):
    """The identification restricts to the identity on shared cells."""
    f1, f2 = FacetRef(*f1), FacetRef(*f2)
    cs1 = FACE_CORNERS[f1.face]
    full = dict(zip(cs1, corr))
    shared_e, shared_v = shared_profile(P, f1, f2)
    for c in cs1:
        v = P.vertex_class_of(f1.tet, c)
        if v in shared_v and P.vertex_class_of(f2.tet, full[c]) != v:
            return False
    for i, j in _edge_cells(f1):
        ec = P.edge_class_of(f1.tet, i, j)
        if ec not in shared_e:
            continue
        k, l = full[i], full[j]
        if P.edge_class_of(f2.tet, k, l) != ec:
            return False
        if P.end_class_of(f1.tet, i, j, i) != P.end_class_of(
            f2.tet, k, l, k
        ):
            return False
    return True


def glue(P, f1, f2, corr):
    """Raw gluing; the mechanism beneath all gluing moves."""
    f1, f2 = _facet(P, f1), _facet(P, f2)
    if f1 == f2:
        raise SameFacet(f"{f1}")
    _require_boundary(P, f1)
    _require_boundary(P, f2)
    perm = perm_from_corr(f1.face, f2.face, tuple(corr))
    if perm is None:
        raise BadCorr(f"corr {corr} invalid for {f1} -> {f2}")
    return P.with_pairing(4 * f1.tet + f1.face, 4 * f2.tet + f2.face, perm)


def unite(P, f1, f2, corr):
    if classify_gluing(P, f1, f2) is not Kind.UNITE:
        raise KindMismatch("facets lie in the same component")
    return glue(P, f1, f2, corr)


def _derived_glue(P, f1, f2, wanted, err):
    kind = classify_gluing(P, f1, f2)
    if kind not in wanted:
        raise KindMismatch(f"gluing classifies as {kind.value}, not {err}")
    corrs = derived_corrs(P, f1, f2)
    if not corrs:
        if kind is Kind.HEALING:
            raise NotHealable(f"{f1} / {f2}: shared edges do not match up")
        raise KindMismatch(f"no coherent corr for {f1} / {f2}")
    if len(corrs) > 1:
        raise AmbiguousCorr(f"{len(corrs)} coherent corrs for {f1} / {f2}")
    return glue(P, f1, f2, corrs[0])


def fold(P, f1, f2):
    return _derived_glue(P, f1, f2, (Kind.FOLD,), "fold")


def healing(P, f1, f2):
    return _derived_glue(P, f1, f2, (Kind.HEALING,), "healing")


def lc_glue(P, f1, f2):
    return _derived_glue(
        P, f1, f2, (Kind.FOLD, Kind.HEALING, Kind.LC), "an LC gluing"
    )


def mogami_glue(P, f1, f2, corr=None):
    kind = classify_gluing(P, f1, f2)
    if not kind.is_mogami:
        raise KindMismatch(
            f"gluing classifies as {kind.value}, not a Mogami gluing"
        )
    if kind is not Kind.MOGAMI:
        if corr is None:
            return _derived_glue(
                P, f1, f2, (Kind.FOLD, Kind.HEALING, Kind.LC), "LC"
            )
        if not corr_is_coherent(P, f1, f2, corr):
            raise BadCorr(f"corr {corr} does not fix the shared faces")
        return glue(P, f1, f2, corr)
    if corr is None:
        raise AmbiguousCorr(
            "vertex-only Mogami gluing needs an explicit corr"
        )
    if not corr_is_coherent(P, f1, f2, corr):
        raise BadCorr(f"corr {corr} does not fix the shared vertex")
    return glue(P, f1, f2, corr)


def wounds(P):
    """Boundary triangle pairs sharing exactly two edge classes.

    Each wound comes with its forced healing corr, or None when the two
    shared edges cannot be matched coherently.
    """
    bd = P.boundary_facets()
    out = []
    for a in range(len(bd)):
        for b in range(a + 1, len(bd)):
            shared_e, _ = shared_profile(P, bd[a], bd[b])
            if len(shared_e) != 2:
                continue
            corrs = derived_corrs(P, bd[a], bd[b])
            corr = corrs[0] if len(corrs) == 1 else None
            out.append((bd[a], bd[b], corr))
    return out


# -- ungluing -----------------------------------------------------------------


def _triangle_class(P, t):
    if isinstance(t, int):
        cls = P.triangle_classes[t]
    else:
        cls = t
    return cls


def interior_edge_profile(P, tclass):
    """(interior cell count, boundary cell count) over the 3 edge cells."""
    t, f = tclass.members[0]
    interior = 0
    for i, j in _edge_cells(FacetRef(t, f)):
        ec = P.edge_class_of(t, i, j)
        if not P.edge_classes[ec].boundary:
            interior += 1
    return interior, 3 - interior


def unglue(P, t):
    cls = _triangle_class(P, t)
    if cls.boundary:
        raise NotInterior(f"triangle class {cls.index} is boundary")
    a, b = cls.members
    target = None
    for pa, pb, perm in P.pairings:
        if {pa, pb} == {4 * a.tet + a.face, 4 * b.tet + b.face}:
            target = (pa, pb, perm)
            break
    return P.without_pairing(target)


def can_split(P, tclass):
    if tclass.boundary:
        return False
    return interior_edge_profile(P, tclass)[0] == 0


def can_spread(P, tclass):
    if tclass.boundary:
        return False
    return interior_edge_profile(P, tclass)[0] == 1


def split(P, t):
    cls = _triangle_class(P, t)
    if cls.boundary:
        raise NotInterior(f"triangle class {cls.index} is boundary")
    if not can_split(P, cls):
        raise KindMismatch(
            f"triangle class {cls.index} has interior edges; not splittable"
        )
    return unglue(P, cls)


def spread(P, t):
    cls = _triangle_class(P, t)
    if cls.boundary:
        raise NotInterior(f"triangle class {cls.index} is boundary")
    if not can_spread(P, cls):
        raise KindMismatch(
            f"triangle class {cls.index} is not a spread target"
        )
    return unglue(P, cls)


# -- scripts -------------------------------------------------------------------


@dataclass(frozen=True)
class GlueStep:
    f1: FacetRef
    f2: FacetRef
    corr: tuple
    label: str = "G"  # "U" for unite steps


@dataclass(frozen=True)
class UnglueStep:
    label: str  # "S" split, "P" spread
    triangle: int  # canonical triangle class index at application time


@dataclass(frozen=True)
class StepKind:
    kind: Kind
    same_tet: bool = False


@dataclass(frozen=True)
class MoveScript:
    initial: Pseudomanifold
    steps: tuple
    mode: str = "FREE"  # "LC" | "MOGAMI" | "FREE"

    def __post_init__(self):
        if self.mode not in ("LC", "MOGAMI", "FREE"):
            raise ValueError(f"bad mode {self.mode}")


def replay(script, strict_same_tet=False):
    """Run a script, classifying every step against the declared mode.

    Unite steps are admitted in LC and MOGAMI modes only as the prefix
    that assembles the initial tree; a unite after any true gluing is
    rejected.  Ungluing steps are FREE-mode only.
    """
    P = script.initial
    kinds = []
    in_prefix = True
    for idx, step in enumerate(script.steps):
        if isinstance(step, GlueStep):
            try:
                kind = classify_gluing(P, step.f1, step.f2)
            except (NotBoundary, SameFacet) as exc:
                raise StepRejected(idx, str(exc)) from exc
            same_tet = step.f1.tet == step.f2.tet
            if strict_same_tet and same_tet and kind is not Kind.UNITE:
                raise StepRejected(idx, "same-tetrahedron gluing")
            if script.mode != "FREE":
                if kind is Kind.UNITE:
                    if not in_prefix:
                        raise StepRejected(
                            idx, "unite after the tree-building prefix"
                        )
                else:
                    admissible = (
                        kind.is_lc
                        if script.mode == "LC"
                        else kind.is_mogami
                    )
                    if not admissible:
                        raise StepRejected(
                            idx,
                            f"{kind.value} gluing not admissible in "
                            f"{script.mode} mode",
                        )
                    if not corr_is_coherent(P, step.f1, step.f2, step.corr):
                        raise StepRejected(
                            idx, "corr does not fix the shared faces"
                        )
                    in_prefix = False
            try:
                P = glue(P, step.f1, step.f2, step.corr)
            except BadCorr as exc:
                raise StepRejected(idx, str(exc)) from exc
            kinds.append(StepKind(kind, same_tet))
        elif isinstance(step, UnglueStep):
            if script.mode != "FREE":
                raise StepRejected(
                    idx, f"ungluing not admissible in {script.mode} mode"
                )
            if not (0 <= step.triangle < len(P.triangle_classes)):
                raise StepRejected(idx, f"no triangle class {step.triangle}")
            cls = P.triangle_classes[step.triangle]
            try:
                if step.label == "S":
                    P = split(P, cls)
                elif step.label == "P":
                    P = spread(P, cls)
                else:
                    raise StepRejected(idx, f"unknown unglue {step.label}")
            except (NotInterior, KindMismatch) as exc:
                raise StepRejected(idx, str(exc)) from exc
            kinds.append(step.label)
        else:
            raise StepRejected(idx, f"unknown step {step!r}")
    return P, kinds


# -- candidate enumeration ------------------------------------------------------


def fold_candidates(P):
    """All (f1, f2, corr) with a fold classification, sorted."""
    bd = P.boundary_facets()
    out = []
    for a in range(len(bd)):
        for b in range(a + 1, len(bd)):
            shared_e, _ = shared_profile(P, bd[a], bd[b])
            if len(shared_e) != 1:
                continue
            if classify_gluing(P, bd[a], bd[b]) is not Kind.FOLD:
                continue
            corrs = derived_corrs(P, bd[a], bd[b])
            if len(corrs) == 1:
                out.append((bd[a], bd[b], corrs[0]))
    return out


def glue_candidates(P):
    """All boundary facet pairs with all 6 corner bijections, sorted."""
    from itertools import permutations

    bd = P.boundary_facets()
    out = []
    for a in range(len(bd)):
        for b in range(a + 1, len(bd)):
            for corr in permutations(FACE_CORNERS[bd[b].face]):
                out.append((bd[a], bd[b], corr))
    return out

"""Greedy nucleus decomposition and the LC/Mogami decision for 3-balls
without interior vertices.

The reduction removes interior triangles greedily: every pass first
exhausts SPREAD targets (interior triangles with exactly one interior
edge), then applies all available SPLIT cuts (interior triangles with
all three edges on the boundary), until a fixpoint.  Components of the
fixpoint that admit no further move and have no interior vertices are
nuclei; a ball without interior vertices is LC (equivalently Mogami)
exactly when all of them are single tetrahedra.

The constructive direction reverses a spreads-only run: if greedy
spreads reduce the complex to a tree of tetrahedra, replaying the tree
pairings as unites followed by the reversed spreads as folds yields a
validated LC-mode construction script.
"""

import random
from dataclasses import dataclass
from typing import Optional

from .core import FacetRef, Pseudomanifold, disjoint_tetrahedra
from .errors import NotLC
from .moves import (
    GlueStep,
    MoveScript,
    can_split,
    can_spread,
    interior_edge_profile,
    replay,
)
from .perms import corr_from_perm


@dataclass(frozen=True)
class TraceStep:
    label: str  # "S" split, "P" spread
    triangle: int  # canonical triangle class index at application time
    pairing: tuple  # the (phi_a, phi_b, perm) removed


@dataclass(frozen=True)
class NucleusDecomposition:
    components: tuple  # Pseudomanifold per dual component at fixpoint
    trace: tuple  # TraceStep sequence
    fixpoint: Pseudomanifold
    component_tets: tuple  # tets of the input complex per component

    @property
    def stats(self):
        return {
            "spread": sum(1 for s in self.trace if s.label == "P"),
            "split": sum(1 for s in self.trace if s.label == "S"),
        }

    @property
    def all_trivial(self):
        return all(
            c.num_tets == 1 and not c.pairings for c in self.components
        )

    def component_signatures(self):
        return sorted(c.signature() for c in self.components)


def is_nucleus(P):
    """No interior vertex and every interior triangle has >= 2 interior
    edges.  The ball hypothesis is the caller's responsibility."""
    if P.interior_vertices():
        return False
    for cls in P.triangle_classes:
        if cls.boundary:
            continue
        if interior_edge_profile(P, cls)[0] < 2:
            return False
    return True


def _pairing_of(P, tclass):
    a, b = tclass.members
    key = {4 * a.tet + a.face, 4 * b.tet + b.face}
    for pairing in P.pairings:
        if {pairing[0], pairing[1]} == key:
            return pairing
    raise AssertionError("interior triangle without pairing")


def _greedy_pass(P, predicate, rng):
    """Remove eligible interior triangles until none remain."""
    trace = []
    while True:
        targets = [
            cls
            for cls in P.triangle_classes
            if not cls.boundary and predicate(P, cls)
        ]
        if not targets:
            return P, trace
        cls = targets[0] if rng is None else rng.choice(targets)
        pairing = _pairing_of(P, cls)
        trace.append((cls.index, pairing))
        P = P.without_pairing(pairing)


def reduce_to_nuclei(P, rng=None):
    """Greedy spread-then-split loop down to a disjoint union of nuclei.

    Deterministic (lowest canonical triangle index first) unless an
    ``rng`` is supplied, in which case eligible targets are drawn at
    random while preserving the spread-before-split discipline.
    """
    cur = P
    trace = []
    while True:
        cur, spreads = _greedy_pass(cur, can_spread, rng)
        trace.extend(TraceStep("P", i, pr) for i, pr in spreads)
        cur, splits = _greedy_pass(cur, can_split, rng)
        trace.extend(TraceStep("S", i, pr) for i, pr in splits)
        if not spreads and not splits:
            break
    comps = cur.dual_components()
    components = tuple(cur.extract_component(tets) for tets in comps)
    return NucleusDecomposition(
        components=components,
        trace=tuple(trace),
        fixpoint=cur,
        component_tets=tuple(tuple(tets) for tets in comps),
    )


def spanning_edges(P):
    """Interior edge classes with both endpoints on the boundary."""
    out = []
    for cls in P.edge_classes:
        if cls.boundary:
            continue
        v1, v2 = P.edge_class_endpoints(cls.index)
        if (
            P.vertex_classes[v1].boundary
            and P.vertex_classes[v2].boundary
        ):
            out.append(cls)
    return out


def _spreads_to_tree(P):
    """Greedy spreads only; returns (residual, reversed fold pairings)
    when the residual is a tree of tetrahedra, else (residual, None)."""
    cur, spreads = _greedy_pass(P, can_spread, None)
    # more spreads can never appear without an unglue, so one pass is final
    arcs = cur.dual_graph()
    is_tree = (
        len(arcs) == cur.num_tets - 1
        and cur.strongly_connected()
        and all(can_split(cur, cur.triangle_classes[a[2]]) for a in arcs)
    )
    if not is_tree:
        return cur, None
    return cur, [pr for _, pr in reversed(spreads)]


def certifies_as_fold_built(P):
    """True when greedy spreads reduce P to a tree of tetrahedra, i.e.
    P is obtainable from a tree by folds."""
    if not P.strongly_connected():
        return False
    _, folds = _spreads_to_tree(P)
    return folds is not None


@dataclass(frozen=True)
class BallClassification:
    status: str  # "lc_and_mogami" | "not_mogami" | "not_applicable"
    nuclei: tuple = ()
    reason: Optional[str] = None

    @property
    def is_lc_and_mogami(self):
        return self.status == "lc_and_mogami"


def classify_ball(P):
    """Decide the LC (= Mogami) property for balls without interior
    vertices; anything outside that scope is NotApplicable."""
    if P.interior_vertices():
        return BallClassification(
            "not_applicable", reason="interior vertices present"
        )
    cert = P.ball_certificate()
    if cert.refuted:
        return BallClassification("not_applicable", reason=cert.reason)
    decomp = reduce_to_nuclei(P)
    nontrivial = tuple(
        c for c in decomp.components if c.num_tets > 1 or c.pairings
    )
    if nontrivial:
        return BallClassification("not_mogami", nuclei=nontrivial)
    return BallClassification("lc_and_mogami")


def _step_from_pairing(pairing, label):
    pa, pb, perm = pairing
    f1 = FacetRef(*divmod(pa, 4))
    f2 = FacetRef(*divmod(pb, 4))
    return GlueStep(f1, f2, corr_from_perm(f1.face, perm), label)


def lc_script_from_reduction(P):
    """A validated LC-mode script whose replay is isomorphic to P.

    Reverses the reduction: greedy spreads shrink P to a tree of
    tetrahedra, whose pairings become the unite prefix; the spreads
    replay backwards as folds.
    """
    cls = classify_ball(P)
    if not cls.is_lc_and_mogami:
        raise NotLC(f"classification is {cls.status}")
    tree, fold_pairings = _spreads_to_tree(P)
    if fold_pairings is None:
        raise NotLC("greedy spreads do not reach a tree of tetrahedra")
    steps = [_step_from_pairing(pr, "U") for pr in tree.pairings]
    steps.extend(_step_from_pairing(pr, "G") for pr in fold_pairings)
    script = MoveScript(
        initial=disjoint_tetrahedra(P.num_tets),
        steps=tuple(steps),
        mode="LC",
    )
    final, _ = replay(script)
    if final != P:
        raise NotLC("reversed script does not reassemble the input")
    return script


@dataclass(frozen=True)
class ConfluenceReport:
    status: str  # "consistent" | "divergent"
    baseline: tuple
    witnesses: tuple = ()  # divergent signature multisets

    @property
    def consistent(self):
        return self.status == "consistent"


def confluence_check(P, trials, seed=0):
    """Probe order-independence of the greedy reduction empirically."""
    if trials < 2:
        raise ValueError("trials must be >= 2")
    baseline = tuple(reduce_to_nuclei(P).component_signatures())
    witnesses = []
    for k in range(trials):
        rng = random.Random((seed, k))
        got = tuple(reduce_to_nuclei(P, rng=rng).component_signatures())
        if got != baseline:
            witnesses.append(got)
    if witnesses:
        return ConfluenceReport("divergent", baseline, tuple(witnesses))
    return ConfluenceReport("consistent", baseline)

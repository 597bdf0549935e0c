"""Transport of almost split sequences along the pushdown functor: a
sequence with full stabilizer pushes to a family of sequences glued along a
shared middle summand, one with proper stabilizer pushes to a single
sequence.  Every output is verified against the directly-knitted AR quiver
of the skew algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .action import QuiverAction
from .ar import (AlmostSplitSequence, ARQuiver, _check_exact)
from .pushdown import (decompose_pushdown, pushdown_module, pushdown_morphism,
                       sequence_stabilizer)
from .rep import (Representation, Summand, decompose, is_isomorphic,
                  module_stabilizer, twist)
from .skew import SkewPresentation


@dataclass
class GluedSequenceSet:
    """The pushed image of one AR sequence.

    If `glued` the family shares the summand list `gluing` (Z) inside each
    middle term; with Z = 0 the pushdown is the plain direct sum of the
    sequences.  `single` holds instead when the stabilizer was proper.
    """

    sequences: list[AlmostSplitSequence]
    gluing: list[Representation]
    glued: bool
    single: bool
    stabilizer_order: int


def _find_index(arq: ARQuiver, M: Representation) -> int:
    for i, R in enumerate(arq.modules):
        if R.dims == M.dims and is_isomorphic(R, M):
            return i
    raise KeyError(f"module {M.dims} not in the knitted skew AR quiver")


def _summand_multiset(arq: ARQuiver, M: Representation) -> tuple:
    if M.is_zero():
        return ()
    return tuple(sorted(_find_index(arq, s.rep) for s in decompose(M)))


def pushdown_sequence(pres: SkewPresentation, action: QuiverAction,
                      seq: AlmostSplitSequence,
                      arq_skew: ARQuiver) -> GluedSequenceSet:
    """Push an almost split sequence through the covering.

    Proper stabilizer: the pushed sequence is itself almost split over the
    skew algebra (checked against the knitted quiver).  Full stabilizer:
    the ends decompose into character twists; each twist pair bounds a
    knitted almost split sequence whose middle is the shared stable part Z
    plus the matching twist of the unstable part; the direct sum of the
    family's middles reproduces the pushed middle exactly.
    """
    ctx = pres.context
    G = ctx.group
    stab = sequence_stabilizer(action, seq.left, seq.right)

    FM = pushdown_module(pres, seq.left)
    FN = pushdown_module(pres, seq.middle)
    FT = pushdown_module(pres, seq.right)
    Fincl = pushdown_morphism(pres, seq.incl, FM, FN)
    Fproj = pushdown_morphism(pres, seq.proj, FN, FT)
    pushed = AlmostSplitSequence(FM.rep, FN.rep, FT.rep, Fincl, Fproj)
    _check_exact(pushed)  # exactness of the functor on this sequence

    if len(stab) < G.n:
        pushed.middle_summands = decompose(FN.rep)
        iT = _find_index(arq_skew, FT.rep)
        knitted = arq_skew.sequences.get(iT)
        if knitted is None:
            raise AssertionError("pushed right term has no knitted mesh")
        if not is_isomorphic(knitted.left, FM.rep):
            raise AssertionError("pushed sequence disagrees with knitted mesh (left)")
        if _summand_multiset(arq_skew, knitted.middle) != _summand_multiset(arq_skew, FN.rep):
            raise AssertionError("pushed sequence disagrees with knitted mesh (middle)")
        return GluedSequenceSet([pushed], [], False, True, len(stab))

    # full stabilizer: organize by character twists
    dual, dact = pres.dual_group_action()
    m_parts = decompose_pushdown(pres, seq.left).summands
    t_parts = decompose_pushdown(pres, seq.right).summands

    mid_parts = decompose(FN.rep)
    stable_parts: list[Summand] = []
    unstable_parts: list[Summand] = []
    for s in mid_parts:
        if len(module_stabilizer(dact, s.rep)) == dual.n:
            stable_parts.append(s)
        else:
            unstable_parts.append(s)
    # Z: one copy of each stable isomorphism class (they come n at a time)
    z_classes: list[Representation] = []
    z_count: list[int] = []
    for s in stable_parts:
        for k, z in enumerate(z_classes):
            if z.dims == s.rep.dims and is_isomorphic(z, s.rep):
                z_count[k] += 1
                break
        else:
            z_classes.append(s.rep)
            z_count.append(1)
    if any(c != G.n for c in z_count):
        raise AssertionError("stable middle summands do not come in |G| copies")
    z_idx = sorted(_find_index(arq_skew, z) for z in z_classes)

    sequences = []
    for chi, t_s in t_parts:
        iT = _find_index(arq_skew, t_s.rep)
        knitted = arq_skew.sequences.get(iT)
        if knitted is None:
            raise AssertionError("twist of pushed right term has no knitted mesh")
        # the left term must be one of the M-twists
        if not any(is_isomorphic(knitted.left, m_s.rep) for _, m_s in m_parts):
            raise AssertionError("knitted mesh left term is not an M-twist")
        sequences.append(knitted)
        # middle shape: Z once plus a transversal of the unstable twists
        mid_idx = _summand_multiset(arq_skew, knitted.middle)
        for zi in z_idx:
            if zi not in mid_idx:
                raise AssertionError("gluing summand missing from a glued middle")

    # family middles sum to the pushed middle
    family = []
    for s in sequences:
        family.extend(_summand_multiset(arq_skew, s.middle))
    if tuple(sorted(family)) != _summand_multiset(arq_skew, FN.rep):
        raise AssertionError("glued family middles do not reassemble F(middle)")

    return GluedSequenceSet(sequences, z_classes, bool(z_classes), False, len(stab))

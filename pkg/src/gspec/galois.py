"""Algebraic elements, extension structure, and the relative automorphism group."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ValidationError
from . import groups as gr
from .groups import FiniteGroup, GroupHom
from .ggroups import GGroup
from . import words as wd
from .words import GWord, evaluate


def algebraic_witness(gg: GGroup, x: int, max_len: int = 4,
                      budget: int = 500) -> GWord:
    """A nontrivial one-variable word over the designated copy killed by x.

    Short words are tried first under a small evaluation budget; the power
    by the element order always works and is the guaranteed fallback.
    """
    h = gg.ambient
    ordx = h.element_order(x)

    def ok(w: GWord) -> bool:
        return w.has_variable() and not w.is_empty() and evaluate(w, (x,), h) == 0

    spent = 0
    for e in range(1, min(ordx, 6) + 1):
        w = wd.variable_word(h, 0, e, 1)
        spent += 1
        if spent > budget:
            break
        if ok(w):
            return w
    if max_len >= 4 and spent < budget:
        gi = [int(v) for v in gg.g_indices if v != 0]
        for c in gi:
            for e2 in (-1, 1):
                for c2 in gi:
                    spent += 1
                    if spent > budget:
                        break
                    w = wd.reduce_word(h, [("c", c), ("v", 0, 1),
                                           ("c", c2), ("v", 0, e2)], 1)
                    if ok(w):
                        return w
                if spent > budget:
                    break
            if spent > budget:
                break
    w = wd.variable_word(h, 0, ordx, 1)
    if not ok(w):
        raise ValidationError("fallback witness failed; broken group data")
    return w


@dataclass(frozen=True)
class ExtensionReport:
    orbit_count: int
    algebraic: bool
    finite: bool
    witnesses: tuple[GWord, ...]


def extension_report(gg: GGroup, witness_budget: int = 0) -> ExtensionReport:
    """Left-multiplication orbit count plus per-element algebraic witnesses."""
    h = gg.ambient
    gi = gg.g_indices
    rep = h.table[np.ix_(gi, np.arange(h.order))].min(axis=0)
    orbit_count = int(np.unique(rep).size)
    if orbit_count * gg.gsub.size != h.order:
        raise ValidationError("orbit count does not match the coset count")
    witnesses = tuple(algebraic_witness(gg, x, budget=witness_budget)
                      for x in range(h.order))
    algebraic = all(evaluate(w, (x,), h) == 0 for x, w in enumerate(witnesses))
    return ExtensionReport(orbit_count, algebraic, True, witnesses)


def galois_automorphisms(gg: GGroup,
                         budget: int = gr.DEFAULT_HOM_BUDGET) -> list[GroupHom]:
    """All automorphisms of the ambient group fixing the designated copy."""
    return gr.enumerate_homs(gg.ambient, gg.ambient, bijective=True,
                             fix=gg.gsub, budget=budget)


def galois_group(gg: GGroup, budget: int = gr.DEFAULT_HOM_BUDGET) -> FiniteGroup:
    """The fixing automorphisms as a group under composition, identity first."""
    auts = galois_automorphisms(gg, budget)
    ident = tuple(range(gg.ambient.order))
    keys = sorted(a.as_tuple() for a in auts)
    if ident not in keys:
        raise ValidationError("automorphism set misses the identity")
    keys.remove(ident)
    keys.insert(0, ident)
    index = {t: i for i, t in enumerate(keys)}
    maps = [np.array(t, dtype=np.int32) for t in keys]
    m = len(keys)
    table = np.empty((m, m), dtype=np.int32)
    for i in range(m):
        for j in range(m):
            table[i, j] = index[tuple(int(v) for v in maps[i][maps[j]])]
    return FiniteGroup(table, f"Gal({gg.label})")

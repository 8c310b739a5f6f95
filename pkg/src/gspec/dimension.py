"""Rank of a G-group over its designated copy, dimension, points, splittings.

Rank comes in two generation modes because plain subgroup generation and
normal-closure generation genuinely differ on products of simple groups;
both are computed and reported, never silently merged.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import BudgetError, ValidationError
from . import groups as gr
from . import ggroups as gx
from .groups import ElementSet
from .ggroups import GGroup, PrimeIdeal

NEG_INF = float("-inf")

MODES = ("plain", "normal")


@dataclass(frozen=True)
class RankResult:
    mode: str
    value: int
    witness: tuple[int, ...]


def _generate(gg: GGroup, base_mask: int, extra: tuple[int, ...], mode: str) -> int:
    seeds = list(gr.bits(base_mask)) + list(extra)
    sub = gr.subgroup_generated(gg.ambient, seeds, normal=(mode == "normal"))
    return sub.mask


def _coset_reps(gg: GGroup, sub_mask: int) -> np.ndarray:
    elems = gr.mask_to_indices(sub_mask, gg.ambient.order)
    cosets = gg.ambient.table[np.ix_(elems, np.arange(gg.ambient.order))]
    rep = cosets.min(axis=0)
    return np.unique(rep)


def g_rank(gg: GGroup, mode: str = "plain", max_k: int = 3) -> RankResult:
    """Minimal number of elements that, with the designated copy, generate.

    mode 'plain' uses subgroup generation, 'normal' the normal closure in
    the ambient group.  The witness is the lexicographically first minimal
    tuple; candidates are pruned to coset representatives, which preserves
    both the generated subgroup and the lexicographic minimum.
    """
    if mode not in MODES:
        raise ValidationError(f"unknown generation mode {mode!r}")
    full = (1 << gg.ambient.order) - 1
    base = _generate(gg, gg.gsub.mask, (), mode)
    if base == full:
        return RankResult(mode, 0, ())
    if max_k < 1:
        raise BudgetError("rank exceeds the search cap")
    level = [((), base)]
    for k in range(1, max_k + 1):
        nxt = []
        for tup, mask in level:
            for x in _coset_reps(gg, mask):
                x = int(x)
                if mask >> x & 1:
                    continue
                m2 = _generate(gg, mask, (x,), mode)
                if m2 == full:
                    return RankResult(mode, k, tup + (x,))
                nxt.append((tup + (x,), m2))
        level = nxt
    raise BudgetError(f"rank exceeds the search cap {max_k}")


def dimension(gg: GGroup, mode: str = "plain", max_k: int = 3) -> float | int:
    """-inf on an empty spectrum, else the rank of the radical quotient."""
    if not gx.spec(gg):
        return NEG_INF
    rad = gx.radical(gg)
    if rad.mask == 1:
        return g_rank(gg, mode, max_k).value
    qgg, _ = gx.quotient_ggroup(gg, rad, f"{gg.label} mod rad")
    return g_rank(qgg, mode, max_k).value


def g_points(gg: GGroup) -> list[PrimeIdeal]:
    """Primes whose quotient projection restricts to a bijection from G."""
    out = []
    for p in gx.spec(gg):
        img = np.unique(p.projection.map[gg.g_indices])
        if img.size == p.quotient_gg.ambient.order:
            out.append(p)
    return out


@dataclass(frozen=True)
class SplitReport:
    commutes: bool
    product_full: bool
    intersection_trivial: bool

    @property
    def passed(self) -> bool:
        return self.commutes and self.product_full and self.intersection_trivial


def split_check(gg: GGroup, p: PrimeIdeal) -> SplitReport:
    """Internal direct product test H = P x G, for normal designated copies."""
    if not gg.gsub.certified().is_normal:
        raise ValidationError("split check requires the designated subgroup to be normal")
    comm = gr.commutator_subgroup(gg.ambient, p.carrier,
                                  gg.gsub if gg.gsub.is_subgroup else gg.gsub.certified())
    pi = p.carrier.indices()
    gi = gg.g_indices
    prods = np.unique(gg.ambient.table[np.ix_(pi, gi)])
    return SplitReport(
        commutes=comm.mask == 1,
        product_full=prods.size == gg.ambient.order,
        intersection_trivial=p.carrier.mask & gg.gsub.mask == 1,
    )

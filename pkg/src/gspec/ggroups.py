"""G-groups: a finite group with a designated embedded copy of G.

The ambient group plays H, the designated subgroup plays the image of G;
conjugation by that subgroup drives orbit subgroups, zero divisors,
nilpotency, ideals, primes and the radical.  A pluggable "domain" predicate
turns the prime notion into a reusable topology contract; the shipped
instance declares a G-group prime-worthy when it has no zero divisors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from .errors import ValidationError
from . import groups as gr
from .groups import (ElementSet, FiniteGroup, GroupHom, bool_to_mask,
                     mask_to_bool, mask_to_indices)


class GGroup:
    """An ambient finite group together with a designated subgroup."""

    def __init__(self, ambient: FiniteGroup, gsub: ElementSet, label: str = ""):
        if gsub.parent is not ambient:
            raise ValidationError("gsub must be a subset of the ambient group")
        if not gsub.is_subgroup:
            gsub = gsub.certified()
        if not gsub.is_subgroup:
            raise ValidationError("designated subset is not a subgroup")
        self.ambient = ambient
        self.gsub = gsub
        self.label = label or f"{ambient.name}/{gsub.size}"
        self._cache: dict = {}

    # -- basics ---------------------------------------------------------

    @property
    def g_indices(self) -> np.ndarray:
        if "g_idx" not in self._cache:
            self._cache["g_idx"] = self.gsub.indices()
        return self._cache["g_idx"]

    def g_conjugate(self, x: int, g: int) -> int:
        if g not in self.gsub:
            raise ValidationError("conjugator must lie in the designated subgroup")
        return self.ambient.conj(g, x)

    def g_conj_perms(self) -> np.ndarray:
        """Row t: the permutation y -> g_t y g_t^-1 for the t-th subgroup element."""
        if "conj_perms" not in self._cache:
            t, inv = self.ambient.table, self.ambient.inverse
            gi = self.g_indices
            perms = t[t[gi][:, :], inv[gi][:, None]]
            # perms[t_idx, y] = (g*y) * g^-1
            self._cache["conj_perms"] = np.ascontiguousarray(perms)
        return self._cache["conj_perms"]

    def g_orbits(self) -> tuple[np.ndarray, np.ndarray]:
        """(orbit representative per element, sorted list of representatives)."""
        if "orbits" not in self._cache:
            perms = self.g_conj_perms()
            rep = perms.min(axis=0)
            self._cache["orbits"] = (rep, np.unique(rep))
        return self._cache["orbits"]

    def __repr__(self) -> str:
        return f"GGroup({self.label}: |H|={self.ambient.order}, |G|={self.gsub.size})"


def make_ggroup(h: FiniteGroup, g_elems: ElementSet | Iterable[int],
                label: str = "") -> GGroup:
    """Validate and wrap (ambient, designated subgroup)."""
    if not isinstance(g_elems, ElementSet):
        g_elems = gr.element_set(h, g_elems)
    g_elems = g_elems.certified()
    if not g_elems.is_subgroup:
        raise ValidationError("g_elems is not closed under multiplication/inverse")
    return GGroup(h, g_elems, label)


# ---------------------------------------------------------------------------
# orbit subgroups, invertibles

def g_orbit_subgroup(gg: GGroup, x: int) -> ElementSet:
    """Subgroup generated by all conjugates of x by designated elements."""
    cache = gg._cache.setdefault("orbit_sub", {})
    rep_of, _ = gg.g_orbits()
    r = int(rep_of[x])
    if r not in cache:
        t, inv = gg.ambient.table, gg.ambient.inverse
        gi = gg.g_indices
        conjs = t[t[gi, r], inv[gi]]
        members = gr._close_products(gg.ambient, conjs)
        cache[r] = gr.indices_to_mask(members, gg.ambient.order)
    return ElementSet(gg.ambient, cache[r], is_subgroup=True)


def is_invertible(gg: GGroup, x: int) -> bool:
    """True when the orbit subgroup of x meets the designated copy beyond 1."""
    return g_orbit_subgroup(gg, x).mask & gg.gsub.mask != 1


# ---------------------------------------------------------------------------
# zero divisors

def zero_divisors(gg: GGroup, mode: str = "fast") -> ElementSet:
    """Non-identity x admitting non-identity y with [G(x), G(y)] = 1.

    Fast mode intersects conjugated centralizers; oracle mode scans all
    pairs through their orbit subgroups.  Both agree (tested); the oracle
    is kept independent as a check on the fast path.
    """
    key = ("zd", mode)
    if key in gg._cache:
        return ElementSet(gg.ambient, gg._cache[key])
    n = gg.ambient.order
    rep_of, reps = gg.g_orbits()
    out = np.zeros(n, dtype=bool)
    if mode == "fast":
        perms = gg.g_conj_perms()
        t = gg.ambient.table
        for r in reps:
            if r == 0:
                continue
            commutes = t[:, r] == t[r, :]
            witness = commutes[perms].all(axis=0)
            witness[0] = False
            if witness.any():
                out[rep_of == r] = True
    elif mode == "oracle":
        comm = gg.ambient.table == gg.ambient.table.T
        orbit_bools = {int(r): g_orbit_subgroup(gg, int(r)).bools() for r in reps}
        nz = [int(r) for r in reps if r != 0]
        flagged = set()
        for rx in nz:
            ux = orbit_bools[rx]
            for ry in nz:
                if comm[np.ix_(np.flatnonzero(ux), np.flatnonzero(orbit_bools[ry]))].all():
                    flagged.add(rx)
                    flagged.add(ry)  # witnesses are mutual
                    break
        for r in flagged:
            out[rep_of == r] = True
    else:
        raise ValidationError(f"unknown zero-divisor mode {mode!r}")
    mask = bool_to_mask(out)
    gg._cache[key] = mask
    return ElementSet(gg.ambient, mask)


def is_g_domain(gg: GGroup) -> bool:
    return zero_divisors(gg, "fast").mask == 0


# ---------------------------------------------------------------------------
# nilpotency

def nilpotency(gg: GGroup, x: int) -> Optional[int]:
    """Length of the iterated commutator chain of the orbit subgroup, or None."""
    cache = gg._cache.setdefault("nilp", {})
    rep_of, _ = gg.g_orbits()
    r = int(rep_of[x])
    if r in cache:
        return cache[r]
    gx = g_orbit_subgroup(gg, r)
    level = gx
    length: Optional[int] = None
    for k in range(1, gg.ambient.order + 1):
        if level.mask == 1:
            length = k
            break
        nxt = gr.commutator_subgroup(gg.ambient, gx, level.certified()
                                     if not level.is_subgroup else level)
        if nxt.mask == level.mask:
            break
        level = nxt
    cache[r] = length
    return length


def nil_subgroup(gg: GGroup) -> ElementSet:
    """Normal closure of all nilpotent elements."""
    if "nil" in gg._cache:
        return gg._cache["nil"]
    _, reps = gg.g_orbits()
    seeds = [int(r) for r in reps if nilpotency(gg, int(r)) is not None and r != 0]
    if not seeds:
        res = gr.trivial_set(gg.ambient)
    else:
        rep_of, _ = gg.g_orbits()
        members = np.flatnonzero(np.isin(rep_of, seeds))
        res = gr.subgroup_generated(gg.ambient, members, normal=True)
    gg._cache["nil"] = res
    return res


# ---------------------------------------------------------------------------
# ideals, primes, radical

@dataclass(frozen=True)
class Ideal:
    """Normal subgroup meeting the designated copy only at the identity."""

    ggroup: GGroup
    carrier: ElementSet

    def __post_init__(self):
        if self.carrier.mask & self.ggroup.gsub.mask != 1:
            raise ValidationError("ideal must meet the designated subgroup trivially")

    @property
    def size(self) -> int:
        return self.carrier.size


@dataclass(frozen=True)
class PrimeIdeal:
    """Proper ideal whose quotient G-group has no zero divisors."""

    ideal: Ideal
    quotient_gg: GGroup
    projection: GroupHom

    @property
    def carrier(self) -> ElementSet:
        return self.ideal.carrier

    @property
    def size(self) -> int:
        return self.ideal.size

    def revalidate(self) -> bool:
        gg = self.ideal.ggroup
        ok = self.carrier.mask & gg.gsub.mask == 1
        ok = ok and self.carrier.size < gg.ambient.order
        ok = ok and is_g_domain(self.quotient_gg)
        return ok


def ideals(gg: GGroup) -> list[Ideal]:
    """All normal subgroups meeting the designated copy trivially."""
    if "ideals" in gg._cache:
        return gg._cache["ideals"]
    normals = gr.normal_subgroups(gg.ambient)
    gmask = gg.gsub.mask
    g_simple = _gsub_is_simple(gg)
    out = []
    for n in normals:
        meet = n.mask & gmask
        if g_simple and meet != 1 and meet != gmask:
            raise ValidationError("simple designated subgroup violates the ideal dichotomy")
        if meet == 1:
            out.append(Ideal(gg, n))
    gg._cache["ideals"] = out
    return out


def is_g_simple(gg: GGroup) -> bool:
    return len(ideals(gg)) == 1


def _gsub_is_simple(gg: GGroup) -> bool:
    if "g_simple_flag" not in gg._cache:
        if gg.gsub.size == 1:
            gg._cache["g_simple_flag"] = False
        else:
            sub, _ = gr.sub_group(gg.ambient, gg.gsub.mask)
            gg._cache["g_simple_flag"] = len(gr.normal_subgroups(sub)) == 2
    return gg._cache["g_simple_flag"]


def quotient_ggroup(gg: GGroup, carrier: ElementSet,
                    label: str = "") -> tuple[GGroup, GroupHom]:
    """Quotient by an ideal carrier, with the projected designated subgroup."""
    q, proj = gr.quotient(gg.ambient, carrier)
    gi = gg.g_indices
    img = np.unique(proj.map[gi])
    if img.size != gi.size:
        raise ValidationError("projection is not injective on the designated subgroup")
    qsub = ElementSet(q, gr.indices_to_mask(img, q.order), is_subgroup=True)
    return GGroup(q, qsub, label or f"{gg.label} mod {carrier.size}"), proj


@dataclass(frozen=True)
class TopCouple:
    """Prime predicate contract: which quotients count as domain-like."""

    name: str
    is_in_d: Callable[[GGroup], bool]


DOMAINS = TopCouple("g-domains", is_g_domain)


def spec(gg: GGroup, couple: TopCouple = DOMAINS) -> list[PrimeIdeal]:
    """All primes: proper ideals whose quotient lies in the couple's class."""
    key = ("spec", couple.name)
    if key in gg._cache:
        return gg._cache[key]
    out = []
    for ideal in ideals(gg):
        if ideal.carrier.size == gg.ambient.order:
            continue
        qgg, proj = quotient_ggroup(gg, ideal.carrier)
        if couple.is_in_d(qgg):
            out.append(PrimeIdeal(ideal, qgg, proj))
    gg._cache[key] = out
    return out


def radical(gg: GGroup) -> ElementSet:
    """Intersection of all prime carriers; the whole group when there are none."""
    primes = spec(gg)
    if not primes:
        return gr.full_set(gg.ambient)
    mask = primes[0].carrier.mask
    for p in primes[1:]:
        mask &= p.carrier.mask
    return ElementSet(gg.ambient, mask, is_subgroup=True, is_normal=True)


def com_subgroup(gg: GGroup) -> ElementSet:
    """Elements commuting with every designated element."""
    gi = gg.g_indices
    t = gg.ambient.table
    b = (t[gi, :] == t[:, gi].T).all(axis=0)
    return ElementSet(gg.ambient, bool_to_mask(b), is_subgroup=True)

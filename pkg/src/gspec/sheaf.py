"""Structural presheaf U -> H/Rad(U), its sheafification, and scheme morphisms.

On a finite space every point has a least open neighborhood, so stalks are
plain section groups and sheafification reduces to germ families compatible
under the transition surjections.  Scheme morphisms pair a continuous point
map with per-open group maps that respect the designated subgroups and
commute with restrictions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import BudgetError, ValidationError, GspecError
from . import groups as gr
from . import ggroups as gx
from .groups import ElementSet, FiniteGroup, GroupHom
from .ggroups import GGroup
from .spectrum import SpecSpace, induced_map, respects_g, spec_space

SECTION_CAP = 10 ** 6


def rad_of_open(s: SpecSpace, u_bits: int) -> ElementSet:
    """Intersection of the prime carriers over the open; ambient when empty."""
    amb = s.ggroup.ambient
    mask = (1 << amb.order) - 1
    for i, p in enumerate(s.points):
        if u_bits >> i & 1:
            mask &= p.carrier.mask
    return ElementSet(amb, mask, is_subgroup=True, is_normal=True)


@dataclass(frozen=True)
class PresheafSection:
    """Section group over one open: the quotient by the open's radical."""

    space: SpecSpace
    open_bits: int
    value_group: FiniteGroup
    projection: GroupHom       # ambient -> value_group

    @property
    def order(self) -> int:
        return self.value_group.order

    def g_image(self) -> np.ndarray:
        """Images of the designated subgroup elements, aligned with g_indices."""
        return self.projection.map[self.space.ggroup.g_indices]


def _quotient_cached(gg: GGroup, carrier: ElementSet) -> tuple[FiniteGroup, GroupHom]:
    key = ("quot", carrier.mask)
    if key not in gg._cache:
        gg._cache[key] = gr.quotient(gg.ambient, carrier)
    return gg._cache[key]


def presheaf_section(s: SpecSpace, u_bits: int) -> PresheafSection:
    cache = s.ggroup._cache.setdefault(("presheaf", s.couple.name), {})
    if u_bits not in cache:
        rad = rad_of_open(s, u_bits)
        q, proj = _quotient_cached(s.ggroup, rad)
        cache[u_bits] = PresheafSection(s, u_bits, q, proj)
    return cache[u_bits]


def restriction(s: SpecSpace, u_bits: int, v_bits: int) -> GroupHom:
    """Canonical surjection from sections over u to sections over v <= u."""
    if v_bits & ~u_bits:
        raise ValidationError("restriction target must be a subset of the source open")
    cache = s.ggroup._cache.setdefault(("restrict", s.couple.name), {})
    key = (u_bits, v_bits)
    if key not in cache:
        su, sv = presheaf_section(s, u_bits), presheaf_section(s, v_bits)
        m = np.full(su.order, -1, dtype=np.int32)
        m[su.projection.map] = sv.projection.map
        if (m < 0).any():
            raise GspecError("projection failed to cover the section group")
        cache[key] = GroupHom(su.value_group, sv.value_group, m)
    return cache[key]


def stalk(s: SpecSpace, i: int) -> PresheafSection:
    """The stalk at point i: the section group over its least neighborhood."""
    return presheaf_section(s, s.minimal_open(i))


def transition(s: SpecSpace, i: int, j: int) -> GroupHom:
    """Stalk map at i -> stalk at j, for j inside the least neighborhood of i."""
    ui, uj = s.minimal_open(i), s.minimal_open(j)
    if uj & ~ui:
        raise ValidationError("no transition: target point is not a generization")
    return restriction(s, ui, uj)


# ---------------------------------------------------------------------------
# sheaf sections

@dataclass(frozen=True)
class SheafSection:
    """A compatible family of germs over an open set."""

    space: SpecSpace
    open_bits: int
    germs: tuple[tuple[int, int], ...]   # (point index, stalk element), sorted

    def germ_at(self, i: int) -> int:
        for p, v in self.germs:
            if p == i:
                return v
        raise KeyError(i)

    def restricted(self, v_bits: int) -> "SheafSection":
        if v_bits & ~self.open_bits:
            raise ValidationError("restriction beyond the section's open")
        return SheafSection(self.space, v_bits,
                            tuple((p, v) for p, v in self.germs if v_bits >> p & 1))


@dataclass(frozen=True)
class ImplicitSections:
    """Count-only stand-in when listing all sections would exceed the cap."""

    space: SpecSpace
    open_bits: int
    count: int


def sheaf_sections(s: SpecSpace, u_bits: int,
                   cap: int = SECTION_CAP) -> list[SheafSection] | ImplicitSections:
    """All germ families over the open compatible with the transition maps."""
    pts = [i for i in range(s.npoints) if u_bits >> i & 1]
    if not pts:
        return [SheafSection(s, u_bits, ())]
    min_opens = {i: s.minimal_open(i) & u_bits for i in pts}
    determined_by: dict[int, list[int]] = {i: [] for i in pts}
    for i in pts:
        for j in pts:
            if i != j and min_opens[i] >> j & 1:
                determined_by[j].append(i)
    free = [i for i in pts if not determined_by[i]]
    total = 1
    for i in free:
        total *= stalk(s, i).order
    if total > cap:
        if all(len(v) == 0 for v in determined_by.values()) and len(free) == len(pts):
            return ImplicitSections(s, u_bits, total)
        raise BudgetError(f"section family of size {total} exceeds cap {cap}")
    trans = {(i, j): transition(s, i, j).map
             for i in pts for j in pts if i != j and min_opens[i] >> j & 1}
    out: list[SheafSection] = []
    for combo in itertools.product(*[range(stalk(s, i).order) for i in free]):
        germs = dict(zip(free, combo))
        ok = True
        for j in pts:
            if j in germs:
                continue
            vals = {int(trans[(i, j)][germs[i]]) for i in determined_by[j] if i in germs}
            if len(vals) != 1:
                ok = False
                break
            germs[j] = vals.pop()
        if not ok:
            continue
        for (i, j), tmap in trans.items():
            if int(tmap[germs[i]]) != germs[j]:
                ok = False
                break
        if ok:
            out.append(SheafSection(s, u_bits, tuple(sorted(germs.items()))))
    return out


def comparison_map(s: SpecSpace, u_bits: int) -> dict[int, SheafSection]:
    """Canonical map from the presheaf section group into the germ families."""
    sec = presheaf_section(s, u_bits)
    pts = [i for i in range(s.npoints) if u_bits >> i & 1]
    rmaps = {i: restriction(s, u_bits, s.minimal_open(i)).map for i in pts}
    out = {}
    for q in range(sec.order):
        out[q] = SheafSection(s, u_bits, tuple((i, int(rmaps[i][q])) for i in pts))
    return out


# ---------------------------------------------------------------------------
# scheme morphisms

@dataclass(frozen=True)
class SchemeMorphism:
    """(point map, per-open section maps) from Spec(H) into Spec(L)."""

    src: SpecSpace                       # Spec(H)
    dst: SpecSpace                       # Spec(L)
    point_map: tuple[int, ...]           # src point -> dst point
    section_maps: tuple[tuple[int, GroupHom], ...]   # (dst open bits, map) sorted

    def section_map(self, v_bits: int) -> GroupHom:
        for b, m in self.section_maps:
            if b == v_bits:
                return m
        raise KeyError(v_bits)

    def preimage_bits(self, v_bits: int) -> int:
        out = 0
        for i, pi in enumerate(self.point_map):
            if v_bits >> pi & 1:
                out |= 1 << i
        return out

    def signature(self) -> tuple:
        return (self.point_map,
                tuple((b, m.as_tuple()) for b, m in self.section_maps))


def _section_maps_commute(src: SpecSpace, dst: SpecSpace,
                          point_map: tuple[int, ...],
                          maps: dict[int, GroupHom]) -> bool:
    opens = dst.open_sets()
    pre = {v: _preimage_bits(point_map, v, src.npoints) for v in opens}
    for v in opens:
        for w in opens:
            if w & ~v:
                continue
            lhs = restriction(src, pre[v], pre[w]).map[maps[v].map]
            rhs = maps[w].map[restriction(dst, v, w).map]
            if not np.array_equal(lhs, rhs):
                return False
    return True


def _preimage_bits(point_map: tuple[int, ...], v_bits: int, npts: int) -> int:
    out = 0
    for i in range(npts):
        if v_bits >> point_map[i] & 1:
            out |= 1 << i
    return out


def scheme_morphism_from_hom(u: GroupHom, space_l: SpecSpace, space_h: SpecSpace,
                             check: bool = True) -> SchemeMorphism:
    """Morphism (Spec(H), O_H) -> (Spec(L), O_L) induced by a G-hom u: L -> H.

    Both G-groups must have trivial radicals.
    """
    if gx.radical(space_l.ggroup).mask != 1 or gx.radical(space_h.ggroup).mask != 1:
        raise ValidationError("scheme morphism correspondence requires trivial radicals")
    pm = induced_map(u, space_h, space_l)
    point_map = pm.mapping
    maps: dict[int, GroupHom] = {}
    for v in space_l.open_sets():
        pre = _preimage_bits(point_map, v, space_h.npoints)
        sl = presheaf_section(space_l, v)
        sh = presheaf_section(space_h, pre)
        m = np.full(sl.order, -1, dtype=np.int32)
        m[sl.projection.map] = sh.projection.map[u.map]
        if (m < 0).any() or not np.array_equal(m[sl.projection.map],
                                               sh.projection.map[u.map]):
            raise GspecError("section map induced by the hom is not well defined")
        maps[v] = GroupHom(sl.value_group, sh.value_group, m)
    if check and not _section_maps_commute(space_h, space_l, point_map, maps):
        raise GspecError("induced section maps fail to commute with restrictions")
    return SchemeMorphism(space_h, space_l, point_map,
                          tuple(sorted(maps.items(), key=lambda kv: kv[0])))


def global_hom(m: SchemeMorphism) -> GroupHom:
    """Extract the G-hom L -> H from the global-sections map."""
    space_l, space_h = m.dst, m.src
    full_l = space_l.full_bits
    sl = presheaf_section(space_l, full_l)
    sh = presheaf_section(space_h, space_h.full_bits)
    if sl.order != space_l.ggroup.ambient.order or sh.order != space_h.ggroup.ambient.order:
        raise ValidationError("global sections are not the ambient groups; radical not trivial")
    s = m.section_map(full_l)
    inv_h = np.empty(sh.order, dtype=np.int32)
    inv_h[sh.projection.map] = np.arange(space_h.ggroup.ambient.order, dtype=np.int32)
    arr = inv_h[s.map[sl.projection.map]]
    return GroupHom(space_l.ggroup.ambient, space_h.ggroup.ambient, arr)


def _g_pins(space_l: SpecSpace, space_h: SpecSpace, v_bits: int, pre_bits: int,
            g_corr: dict[int, int]) -> dict[int, int]:
    sl = presheaf_section(space_l, v_bits)
    sh = presheaf_section(space_h, pre_bits)
    pins = {}
    for gl, gh in g_corr.items():
        pins[int(sl.projection.map[gl])] = int(sh.projection.map[gh])
    return pins


def identity_g_corr(gg: GGroup) -> dict[int, int]:
    return {int(x): int(x) for x in gg.g_indices}


def enumerate_scheme_morphisms(space_h: SpecSpace, space_l: SpecSpace,
                               g_corr: dict[int, int],
                               budget: int = gr.DEFAULT_HOM_BUDGET) -> list[SchemeMorphism]:
    """All morphisms (Spec(H), O_H) -> (Spec(L), O_L) respecting G.

    Enumerates continuous point maps, then per-open section maps pinned on
    the designated images, filtered by commutation with restrictions.
    """
    out: list[SchemeMorphism] = []
    opens = space_l.open_sets()
    hom_cache: dict[tuple, list[GroupHom]] = {}
    for combo in itertools.product(range(space_l.npoints), repeat=space_h.npoints):
        point_map = tuple(combo)
        continuous = True
        for c in space_l.closed_sets:
            if not space_h.is_closed(_preimage_bits(point_map, c.bits, space_h.npoints)):
                continuous = False
                break
        if not continuous:
            continue
        per_open: list[list[GroupHom]] = []
        feasible = True
        for v in opens:
            pre = _preimage_bits(point_map, v, space_h.npoints)
            pins = _g_pins(space_l, space_h, v, pre, g_corr)
            key = (v, pre, tuple(sorted(pins.items())))
            if key not in hom_cache:
                sl = presheaf_section(space_l, v)
                sh = presheaf_section(space_h, pre)
                hom_cache[key] = gr.enumerate_homs(sl.value_group, sh.value_group,
                                                   pins=pins, budget=budget)
            homs = hom_cache[key]
            if not homs:
                feasible = False
                break
            per_open.append(homs)
        if not feasible:
            continue
        for family in itertools.product(*per_open):
            maps = dict(zip(opens, family))
            if _section_maps_commute(space_h, space_l, point_map, maps):
                out.append(SchemeMorphism(space_h, space_l, point_map,
                                          tuple(sorted(maps.items(), key=lambda kv: kv[0]))))
    out.sort(key=lambda m: m.signature())
    return out

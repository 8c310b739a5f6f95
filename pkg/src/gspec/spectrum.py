"""The finite Zariski-style topology on the set of prime ideals.

Closed sets are the V(N) over the (small) normal-subgroup lattice of the
ambient group; each closed set keeps a witnessing normal subgroup.  Both
points and closed sets are represented as bit masks over the canonical
point list, so lattice checks are integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ValidationError, GspecError
from . import groups as gr
from . import ggroups as gx
from .groups import ElementSet, FiniteGroup, GroupHom
from .ggroups import GGroup, PrimeIdeal, TopCouple, DOMAINS


class SpecSpace:
    """Prime spectrum of a G-group with its lattice of closed sets."""

    def __init__(self, ggroup: GGroup, couple: TopCouple = DOMAINS):
        self.ggroup = ggroup
        self.couple = couple
        self.points: list[PrimeIdeal] = gx.spec(ggroup, couple)
        self.npoints = len(self.points)
        self.full_bits = (1 << self.npoints) - 1
        self.closed_sets: list[ClosedSet] = self._build_closed_sets()
        self._closed_bits = {c.bits for c in self.closed_sets}
        self._verify_topology()

    # -- construction ----------------------------------------------------

    def v_bits(self, carrier_mask: int) -> int:
        bits = 0
        for i, p in enumerate(self.points):
            if carrier_mask & ~p.carrier.mask == 0:
                bits |= 1 << i
        return bits

    def _build_closed_sets(self) -> list["ClosedSet"]:
        normals = gr.normal_subgroups(self.ggroup.ambient)
        seen: dict[int, ClosedSet] = {}
        for n in normals:
            b = self.v_bits(n.mask)
            if b not in seen:
                seen[b] = ClosedSet(self, b, n)
        out = sorted(seen.values(), key=lambda c: (c.size, c.bits))
        return out

    def _verify_topology(self) -> None:
        if 0 not in self._closed_bits or self.full_bits not in self._closed_bits:
            raise GspecError("closed-set family misses the empty or full set")
        bit_list = [c.bits for c in self.closed_sets]
        for a in bit_list:
            for b in bit_list:
                if (a | b) not in self._closed_bits:
                    raise GspecError("closed sets are not closed under union")
                if (a & b) not in self._closed_bits:
                    raise GspecError("closed sets are not closed under intersection")

    # -- queries -----------------------------------------------------------

    def v_of(self, n: ElementSet) -> "ClosedSet":
        """The closed set of primes containing n, with n as witness."""
        if not n.is_normal and not n.certified().is_normal:
            raise ValidationError("V requires a normal subgroup")
        return ClosedSet(self, self.v_bits(n.mask), n)

    def closed_with_bits(self, bits: int) -> "ClosedSet":
        for c in self.closed_sets:
            if c.bits == bits:
                return c
        raise GspecError("no closed set with those points")

    def is_closed(self, bits: int) -> bool:
        return bits in self._closed_bits

    def open_sets(self) -> list[int]:
        """Opens as point-bit masks (complements of closed sets), ascending."""
        return sorted({self.full_bits & ~c.bits for c in self.closed_sets})

    def closure_of_point(self, i: int) -> "ClosedSet":
        best: Optional[ClosedSet] = None
        for c in self.closed_sets:
            if c.bits >> i & 1 and (best is None or c.size < best.size):
                best = c
        assert best is not None
        return best

    def minimal_open(self, i: int) -> int:
        """Intersection of all opens containing point i, as a point-bit mask."""
        blocked = 0
        for c in self.closed_sets:
            if not c.bits >> i & 1:
                blocked |= c.bits
        return self.full_bits & ~blocked

    def is_radical_ideal(self, n: ElementSet) -> bool:
        """Does n equal the intersection of the primes containing it?"""
        vb = self.v_bits(n.mask)
        inter = (1 << self.ggroup.ambient.order) - 1
        for i, p in enumerate(self.points):
            if vb >> i & 1:
                inter &= p.carrier.mask
        return inter == n.mask

    def point_index(self, carrier_mask: int) -> int:
        for i, p in enumerate(self.points):
            if p.carrier.mask == carrier_mask:
                return i
        raise GspecError("no point with that carrier")

    def __repr__(self) -> str:
        return f"SpecSpace({self.ggroup.label}: {self.npoints} points, {len(self.closed_sets)} closed)"


@dataclass(frozen=True)
class ClosedSet:
    """A closed subset of a spectrum, with a witnessing normal subgroup."""

    space: SpecSpace
    bits: int
    witness: ElementSet

    @property
    def size(self) -> int:
        return self.bits.bit_count()

    def point_indices(self) -> list[int]:
        return [i for i in range(self.space.npoints) if self.bits >> i & 1]

    def __eq__(self, other) -> bool:
        return isinstance(other, ClosedSet) and other.space is self.space and other.bits == self.bits

    def __hash__(self) -> int:
        return hash((id(self.space), self.bits))


def spec_space(gg: GGroup, couple: TopCouple = DOMAINS) -> SpecSpace:
    if ("space", couple.name) not in gg._cache:
        gg._cache[("space", couple.name)] = SpecSpace(gg, couple)
    return gg._cache[("space", couple.name)]


# ---------------------------------------------------------------------------
# irreducibility

def is_irreducible(c: ClosedSet) -> bool:
    """No covering by two proper closed subsets; the empty set is excluded."""
    if c.bits == 0:
        return False
    closed = c.space.closed_sets
    for a in closed:
        if a.bits == c.bits or a.bits & ~c.bits:
            continue
        for b in closed:
            if b.bits == c.bits or b.bits & ~c.bits:
                continue
            if a.bits | b.bits == c.bits:
                return False
    return True


def irreducible_components(s: SpecSpace) -> list[ClosedSet]:
    irr = [c for c in s.closed_sets if is_irreducible(c)]
    out = [c for c in irr if not any(c.bits != d.bits and c.bits & ~d.bits == 0 for d in irr)]
    return sorted(out, key=lambda c: c.bits)


def generic_points(c: ClosedSet) -> list[int]:
    """Points whose closure is exactly this closed set."""
    out = []
    for i in range(c.space.npoints):
        if c.bits >> i & 1 and c.space.closure_of_point(i).bits == c.bits:
            out.append(i)
    return out


# ---------------------------------------------------------------------------
# functoriality

@dataclass(frozen=True)
class PointMap:
    """Induced continuous map between spectra (contravariant to the hom)."""

    hom: GroupHom
    source: SpecSpace
    dest: SpecSpace
    mapping: tuple[int, ...]

    def __call__(self, i: int) -> int:
        return self.mapping[i]


def respects_g(f: GroupHom, src_gg: GGroup, dst_gg: GGroup) -> bool:
    """The designated subgroup must map bijectively onto the target one."""
    gi = src_gg.g_indices
    img = np.unique(f.map[gi])
    return img.size == gi.size and gr.indices_to_mask(img, dst_gg.ambient.order) == dst_gg.gsub.mask


def induced_map(f: GroupHom, source: SpecSpace, dest: SpecSpace) -> PointMap:
    """P -> f^-1(P) on points, with exhaustive continuity verification.

    ``f`` runs between the ambient groups dest.ggroup -> source.ggroup;
    the point map runs the other way.
    """
    if f.source is not dest.ggroup.ambient or f.target is not source.ggroup.ambient:
        raise ValidationError("hom endpoints do not match the given spectra")
    if not respects_g(f, dest.ggroup, source.ggroup):
        raise ValidationError("hom does not respect the designated subgroups")
    mapping = []
    for p in source.points:
        pre = f.preimage_mask(p.carrier.mask)
        try:
            mapping.append(dest.point_index(pre))
        except GspecError:
            raise GspecError("preimage of a prime is not a prime; contract violated")
    mapping = tuple(mapping)
    for c in dest.closed_sets:
        pre_bits = 0
        for i in range(source.npoints):
            if c.bits >> mapping[i] & 1:
                pre_bits |= 1 << i
        if not source.is_closed(pre_bits):
            raise GspecError("induced point map is not continuous")
    return PointMap(f, source, dest, mapping)


# ---------------------------------------------------------------------------
# nil homeomorphism

@dataclass
class NilHomeoReport:
    passed: bool
    nil_order: int
    degenerate: bool
    notes: list[str]


def nil_homeo_check(gg: GGroup) -> NilHomeoReport:
    """Verify the quotient by the nilpotent closure is a spectrum homeomorphism."""
    nil = gx.nil_subgroup(gg)
    notes: list[str] = []
    s = spec_space(gg)
    if nil.mask & gg.gsub.mask != 1:
        # a designated nilpotent element sits in every prime, so there are none
        ok = s.npoints == 0
        notes.append("nilpotent closure meets the designated subgroup; "
                     "quotient leaves the category and the spectrum is empty")
        return NilHomeoReport(ok, nil.size, True, notes)
    qgg, proj = gx.quotient_ggroup(gg, nil, f"{gg.label} mod nil")
    qs = spec_space(qgg)
    try:
        pm = induced_map(proj, qs, s)
    except GspecError as e:
        return NilHomeoReport(False, nil.size, False, [str(e)])
    if sorted(set(pm.mapping)) != list(range(s.npoints)):
        return NilHomeoReport(False, nil.size, False, ["point map is not bijective"])
    # continuity is already verified; check the inverse direction (closed map)
    for c in qs.closed_sets:
        img_bits = 0
        for i in range(qs.npoints):
            if c.bits >> i & 1:
                img_bits |= 1 << pm.mapping[i]
        if not s.is_closed(img_bits):
            return NilHomeoReport(False, nil.size, False, ["image of a closed set is not closed"])
    return NilHomeoReport(True, nil.size, False, notes)


# ---------------------------------------------------------------------------
# exports

def specialization_dot(s: SpecSpace) -> str:
    """Specialization order as DOT: edge P -> Q iff P < Q, transitively reduced."""
    n = s.npoints
    less = [[bool(i != j
                  and s.points[i].carrier.mask & ~s.points[j].carrier.mask == 0)
             for j in range(n)] for i in range(n)]
    lines = ["digraph spec {"]
    for i in range(n):
        lines.append(f'  P{i} [label="P{i} (order {s.points[i].size})"];')
    for i in range(n):
        for j in range(n):
            if less[i][j] and not any(less[i][k] and less[k][j] for k in range(n)):
                lines.append(f"  P{i} -> P{j};")
    lines.append("}")
    return "\n".join(lines)


def topology_json(s: SpecSpace) -> dict:
    return {
        "format": "gspec-report-v1",
        "ggroup": s.ggroup.label,
        "points": [sorted(int(x) for x in p.carrier.indices()) for p in s.points],
        "closed_sets": [
            {"points": c.point_indices(), "witness_order": c.witness.size}
            for c in s.closed_sets
        ],
    }

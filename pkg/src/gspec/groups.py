"""Finite groups as dense Cayley tables, with subgroup and homomorphism machinery.

Every group lives on element indices 0..n-1 with the identity pinned at
index 0.  Subsets are bit masks (arbitrary-precision ints), which makes
set algebra, deduplication and canonical ordering cheap; the heavy loops
(closures, table checks, hom verification) run through numpy.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import BudgetError, ValidationError

log = logging.getLogger(__name__)

FULL_ASSOC_MAX_ORDER = 512
SAMPLED_TRIPLE_FACTOR = 10
DEFAULT_PERM_CLOSURE_CAP = 10_000
DEFAULT_NORMAL_CAP = 4096
DEFAULT_HOM_BUDGET = 10_000_000
DEFAULT_ORDER_CAP = 10_000

_ASSOC_SAMPLE_SEED = 0x5EED


# ---------------------------------------------------------------------------
# bit mask helpers

def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << int(i)
    return m


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


def mask_to_bool(mask: int, n: int) -> np.ndarray:
    raw = np.frombuffer(mask.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


def bool_to_mask(arr: np.ndarray) -> int:
    packed = np.packbits(arr.astype(np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def mask_to_indices(mask: int, n: int) -> np.ndarray:
    return np.flatnonzero(mask_to_bool(mask, n))


def indices_to_mask(arr: np.ndarray, n: int) -> int:
    b = np.zeros(n, dtype=bool)
    b[arr] = True
    return bool_to_mask(b)


# ---------------------------------------------------------------------------
# FiniteGroup

class FiniteGroup:
    """A finite group given by its full multiplication table.

    ``table[i, j]`` is the index of the product i*j; index 0 is the identity.
    Instances are immutable after construction and safe to share.
    """

    def __init__(self, table: np.ndarray, name: str = "G", *,
                 perms: Optional[list[tuple[int, ...]]] = None,
                 validate: bool = True):
        table = np.ascontiguousarray(np.asarray(table, dtype=np.int32))
        self.order: int = int(table.shape[0])
        self.table: np.ndarray = table
        self.name: str = name
        self.perms = perms
        self.sampled_validation: bool = False
        if validate:
            self._validate()
        inv = np.argmin(np.abs(table), axis=1).astype(np.int32)
        # argmin of |t| finds the 0 entry in each row (entries are >= 0)
        self.inverse: np.ndarray = inv
        self.table.setflags(write=False)
        self.inverse.setflags(write=False)

    # -- construction -------------------------------------------------

    @staticmethod
    def from_table(table: Sequence[Sequence[int]], name: str = "G",
                   validate: bool = True) -> "FiniteGroup":
        return FiniteGroup(np.asarray(table), name, validate=validate)

    @staticmethod
    def from_permutations(generators: Sequence[Sequence[int]], degree: int,
                          name: str = "G",
                          cap: int = DEFAULT_PERM_CLOSURE_CAP) -> "FiniteGroup":
        """Close 0-based one-line permutations into a group, identity first."""
        gens = []
        ident = tuple(range(degree))
        for g in generators:
            t = tuple(int(x) for x in g)
            if sorted(t) != list(range(degree)):
                raise ValidationError(f"{name}: generator {g} is not a permutation of 0..{degree-1}")
            gens.append(t)
        elems: list[tuple[int, ...]] = [ident]
        index = {ident: 0}
        queue = [ident]
        while queue:
            p = queue.pop(0)
            for g in gens:
                q = tuple(p[g[x]] for x in range(degree))
                if q not in index:
                    if len(elems) >= cap:
                        raise BudgetError(f"{name}: permutation closure exceeded cap {cap}")
                    index[q] = len(elems)
                    elems.append(q)
                    queue.append(q)
        n = len(elems)
        earr = np.array(elems, dtype=np.int32)
        table = np.empty((n, n), dtype=np.int32)
        for i in range(n):
            composed = earr[i][earr]            # (p_i o p_j)(x) = p_i[p_j[x]]
            for j in range(n):
                table[i, j] = index[tuple(composed[j])]
        return FiniteGroup(table, name, perms=elems)

    # -- validation ----------------------------------------------------

    def _validate(self) -> None:
        n, table = self.order, self.table
        if table.ndim != 2 or table.shape != (n, n):
            raise ValidationError(f"{self.name}: table must be square")
        if n < 1:
            raise ValidationError(f"{self.name}: order must be positive")
        if table.min() < 0 or table.max() >= n:
            raise ValidationError(f"{self.name}: table entries out of range")
        if not np.array_equal(table[0], np.arange(n)) or not np.array_equal(table[:, 0], np.arange(n)):
            raise ValidationError(f"{self.name}: index 0 is not a two-sided identity")
        ref = np.arange(n, dtype=np.int32)
        if not np.array_equal(np.sort(table, axis=1), np.broadcast_to(ref, (n, n))):
            raise ValidationError(f"{self.name}: some row is not a permutation")
        if not np.array_equal(np.sort(table, axis=0), np.broadcast_to(ref[:, None], (n, n))):
            raise ValidationError(f"{self.name}: some column is not a permutation")
        if (table == 0).sum(axis=1).min() < 1:
            raise ValidationError(f"{self.name}: some element has no inverse")
        if n <= FULL_ASSOC_MAX_ORDER:
            for i in range(n):
                if not np.array_equal(table[table[i]], table[i][table]):
                    raise ValidationError(f"{self.name}: associativity fails at row {i}")
        else:
            self._validate_assoc_sampled()

    def _validate_assoc_sampled(self) -> None:
        # 10*n^2 triples, sampled as 10*n random pairs (i, j) with k exhaustive;
        # row-wise checks keep the table accesses cache friendly.
        n, table = self.order, self.table
        npairs = SAMPLED_TRIPLE_FACTOR * n
        rng = np.random.default_rng(_ASSOC_SAMPLE_SEED ^ n)
        batch = max(1, 8_000_000 // n)
        done = 0
        while done < npairs:
            m = min(batch, npairs - done)
            i = rng.integers(0, n, m, dtype=np.int32)
            j = rng.integers(0, n, m, dtype=np.int32)
            lhs = table[table[i, j]]
            rhs = np.take_along_axis(table[i], table[j], axis=1)
            if not np.array_equal(lhs, rhs):
                raise ValidationError(f"{self.name}: associativity fails on a sampled triple")
            done += m
        self.sampled_validation = True
        log.warning("%s: order %d above full-check threshold; associativity verified on %d random triples",
                    self.name, npairs * n)

    # -- basic ops -------------------------------------------------------

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def inv(self, i: int) -> int:
        return int(self.inverse[i])

    def conj(self, g: int, x: int) -> int:
        """g * x * g^-1."""
        return int(self.table[self.table[g, x], self.inverse[g]])

    def conj_all(self, x: int) -> np.ndarray:
        """Vector of g*x*g^-1 over all g."""
        return self.table[self.table[:, x], self.inverse]

    def element_order(self, x: int) -> int:
        k, cur = 1, x
        while cur != 0:
            cur = int(self.table[cur, x])
            k += 1
        return k

    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int32)
        orders[0] = 1
        cur = np.arange(n, dtype=np.int32)
        k = 1
        while (orders == 0).any():
            k += 1
            cur = self.table[cur, np.arange(n)]
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
        return orders

    def center_mask(self) -> int:
        return bool_to_mask((self.table == self.table.T).all(axis=1))

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def index_of_perm(self, perm: Sequence[int]) -> int:
        if self.perms is None:
            raise ValidationError(f"{self.name}: not built from permutations")
        return self.perms.index(tuple(int(x) for x in perm))

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"


# ---------------------------------------------------------------------------
# standard constructions

def cyclic_group(n: int, name: Optional[str] = None) -> FiniteGroup:
    idx = np.arange(n, dtype=np.int32)
    table = (idx[:, None] + idx[None, :]) % n
    return FiniteGroup(table, name or f"Z{n}")


def trivial_group() -> FiniteGroup:
    return cyclic_group(1, "Z1")


def symmetric_group(n: int) -> FiniteGroup:
    if n == 1:
        return FiniteGroup.from_permutations([[0]], 1, "S1")
    cyc = list(range(1, n)) + [0]
    swap = [1, 0] + list(range(2, n))
    return FiniteGroup.from_permutations([cyc, swap], n, f"S{n}")


def alternating_group(n: int) -> FiniteGroup:
    if n < 3:
        return FiniteGroup.from_permutations([list(range(n))], max(n, 1), f"A{n}")
    if n % 2 == 1:
        cyc = list(range(1, n)) + [0]            # n-cycle, even for odd n
    else:
        cyc = list(range(1, n - 1)) + [0, n - 1]  # (n-1)-cycle, even for even n
    rot3 = list(range(n))
    rot3[n - 3], rot3[n - 2], rot3[n - 1] = rot3[n - 2], rot3[n - 1], rot3[n - 3]
    return FiniteGroup.from_permutations([cyc, rot3], n, f"A{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon (order 2n), as permutations of vertices."""
    rot = list(range(1, n)) + [0]
    refl = [(-i) % n for i in range(n)]
    return FiniteGroup.from_permutations([rot, refl], n, f"D{n}")


def quaternion_group() -> FiniteGroup:
    """Q8 with elements 1,-1,i,-i,j,-j,k,-k."""
    units = [(1, 0, 0, 0), (-1, 0, 0, 0), (0, 1, 0, 0), (0, -1, 0, 0),
             (0, 0, 1, 0), (0, 0, -1, 0), (0, 0, 0, 1), (0, 0, 0, -1)]

    def qmul(p, q):
        a1, b1, c1, d1 = p
        a2, b2, c2, d2 = q
        return (a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2)

    idx = {u: i for i, u in enumerate(units)}
    table = [[idx[qmul(p, q)] for q in units] for p in units]
    return FiniteGroup(np.array(table), "Q8")


def psl27_group() -> FiniteGroup:
    """PSL(2,7) acting on the projective line over F7 (8 points, point 7 = infinity)."""
    shift = [1, 2, 3, 4, 5, 6, 0, 7]                      # z -> z + 1
    inv7 = {1: 1, 2: 4, 3: 5, 4: 2, 5: 3, 6: 6}
    neg_inv = [7] + [(7 - inv7[z]) % 7 for z in range(1, 7)] + [0]  # z -> -1/z
    return FiniteGroup.from_permutations([shift, neg_inv], 8, "PSL27")


def direct_product(a: FiniteGroup, b: FiniteGroup, name: Optional[str] = None,
                   order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Componentwise product; element (x, y) has index x*|b| + y."""
    if a.order * b.order > order_cap:
        raise BudgetError(f"direct product order {a.order * b.order} exceeds cap {order_cap}")
    nb = b.order
    table = np.kron(a.table.astype(np.int64), np.ones((nb, nb), dtype=np.int64)) * nb \
        + np.tile(b.table.astype(np.int64), (a.order, a.order))
    return FiniteGroup(table.astype(np.int32), name or f"{a.name}x{b.name}")


def sub_group(h: FiniteGroup, mask: int, name: Optional[str] = None) -> tuple[FiniteGroup, np.ndarray]:
    """Reindex a subgroup as its own FiniteGroup; returns (group, embedding array)."""
    elems = mask_to_indices(mask, h.order)
    if elems.size == 0 or elems[0] != 0:
        raise ValidationError("subgroup mask must contain the identity")
    pos = np.full(h.order, -1, dtype=np.int32)
    pos[elems] = np.arange(elems.size, dtype=np.int32)
    prods = h.table[np.ix_(elems, elems)]
    if (pos[prods] < 0).any():
        raise ValidationError("mask is not closed under multiplication")
    sub = FiniteGroup(pos[prods], name or f"{h.name}|sub{elems.size}")
    return sub, elems.astype(np.int32)


# ---------------------------------------------------------------------------
# ElementSet

@dataclass(frozen=True)
class ElementSet:
    """Subset of a group as a bit mask, with certification flags."""

    parent: FiniteGroup
    mask: int
    is_subgroup: bool = False
    is_normal: bool = False

    @property
    def size(self) -> int:
        return popcount(self.mask)

    def __contains__(self, i: int) -> bool:
        return bool(self.mask >> i & 1)

    def indices(self) -> np.ndarray:
        return mask_to_indices(self.mask, self.parent.order)

    def bools(self) -> np.ndarray:
        return mask_to_bool(self.mask, self.parent.order)

    def __iter__(self) -> Iterator[int]:
        return bits(self.mask)

    def subset_of(self, other: "ElementSet") -> bool:
        return self.mask & ~other.mask == 0

    def is_full(self) -> bool:
        return self.size == self.parent.order

    def verify_subgroup(self) -> bool:
        elems = self.indices()
        if elems.size == 0 or elems[0] != 0:
            return False
        prods = self.parent.table[np.ix_(elems, elems)]
        b = self.bools()
        return bool(b[prods].all())

    def verify_normal(self) -> bool:
        if not self.verify_subgroup():
            return False
        b = self.bools()
        for x in self.indices():
            if not b[self.parent.conj_all(int(x))].all():
                return False
        return True

    def certified(self) -> "ElementSet":
        """Re-derive the certification flags from scratch."""
        sg = self.verify_subgroup()
        nr = sg and self.verify_normal()
        return ElementSet(self.parent, self.mask, is_subgroup=sg, is_normal=nr)

    def __repr__(self) -> str:
        flags = "N" if self.is_normal else ("S" if self.is_subgroup else "-")
        return f"ElementSet({self.parent.name}, size={self.size}, {flags})"


def element_set(parent: FiniteGroup, members: Iterable[int]) -> ElementSet:
    return ElementSet(parent, mask_of(members))


def full_set(parent: FiniteGroup) -> ElementSet:
    return ElementSet(parent, (1 << parent.order) - 1, is_subgroup=True, is_normal=True)


def trivial_set(parent: FiniteGroup) -> ElementSet:
    return ElementSet(parent, 1, is_subgroup=True, is_normal=True)


# ---------------------------------------------------------------------------
# closures

def _close_products(group: FiniteGroup, start: np.ndarray) -> np.ndarray:
    """Smallest multiplicatively closed subset containing start and the identity."""
    n = group.order
    member = np.zeros(n, dtype=bool)
    member[0] = True
    frontier = np.unique(start.astype(np.int64))
    frontier = frontier[~member[frontier]]
    member[frontier] = True
    count = 1 + frontier.size
    table = group.table
    while frontier.size:
        if count > n // 2:
            # the generated subgroup has order > n/2, hence is the whole group
            return np.arange(n)
        cur = np.flatnonzero(member)
        prods = np.concatenate([
            table[np.ix_(cur, frontier)].ravel(),
            table[np.ix_(frontier, cur)].ravel(),
        ])
        new = np.unique(prods)
        new = new[~member[new]]
        member[new] = True
        count += new.size
        frontier = new
    return np.flatnonzero(member)


def subgroup_generated(h: FiniteGroup, seed: ElementSet | Iterable[int],
                       normal: bool = False) -> ElementSet:
    """Subgroup (or normal closure, with normal=True) generated by seed."""
    if isinstance(seed, ElementSet):
        idx = seed.indices()
    else:
        idx = np.array(sorted(set(int(x) for x in seed)), dtype=np.int64)
    if idx.size and (idx.min() < 0 or idx.max() >= h.order):
        raise ValidationError("seed element out of range")
    if normal and idx.size:
        idx = np.unique(np.concatenate([h.conj_all(int(x)) for x in idx]))
    members = _close_products(h, idx) if idx.size else np.array([0])
    mask = indices_to_mask(members, h.order)
    return ElementSet(h, mask, is_subgroup=True, is_normal=normal)


def centralizer(h: FiniteGroup, x: int) -> ElementSet:
    """All elements commuting with x."""
    b = h.table[:, x] == h.table[x, :]
    return ElementSet(h, bool_to_mask(b), is_subgroup=True)


def commutator_subgroup(h: FiniteGroup, u: ElementSet, v: ElementSet) -> ElementSet:
    """Normal closure of {[a, b] : a in u, b in v}."""
    if not (u.is_subgroup and v.is_subgroup):
        raise ValidationError("commutator_subgroup requires certified subgroups")
    ui, vi = u.indices(), v.indices()
    t, inv = h.table, h.inverse
    # [a,b] = a b a^-1 b^-1 = (a b)(b a)^-1
    ab = t[np.ix_(ui, vi)]
    ba = t[np.ix_(vi, ui)].T
    comms = t[ab, inv[ba]]
    gens = np.unique(comms)
    gens = gens[gens != 0]
    if gens.size == 0:
        return trivial_set(h)
    return subgroup_generated(h, gens, normal=True)


def derived_series(h: FiniteGroup) -> list[ElementSet]:
    """Iterated commutator subgroups down to stabilization."""
    series = [full_set(h)]
    while True:
        nxt = commutator_subgroup(h, series[-1], series[-1])
        if nxt.mask == series[-1].mask:
            break
        series.append(nxt)
        if nxt.mask == 1:
            break
    return series


def is_solvable(h: FiniteGroup) -> bool:
    return derived_series(h)[-1].mask == 1


def conjugacy_classes(h: FiniteGroup) -> list[int]:
    """Class masks, ordered by least member."""
    n = h.order
    seen = np.zeros(n, dtype=bool)
    classes = []
    for x in range(n):
        if seen[x]:
            continue
        orbit = np.unique(h.conj_all(x))
        seen[orbit] = True
        classes.append(indices_to_mask(orbit, n))
    return classes


def normal_subgroups(h: FiniteGroup, cap: int = DEFAULT_NORMAL_CAP) -> list[ElementSet]:
    """All normal subgroups, by iterated joins of conjugacy-class closures."""
    classes = conjugacy_classes(h)[1:]  # skip {identity}
    found: dict[int, ElementSet] = {1: trivial_set(h)}
    seen_seeds: set[int] = set()
    work = [1]
    while work:
        base = work.pop()
        for cmask in classes:
            if cmask & ~base == 0:
                continue
            seed = base | cmask
            if seed in seen_seeds:
                continue
            seen_seeds.add(seed)
            closure = subgroup_generated(h, bits(seed))
            m = closure.mask
            if m not in found:
                if len(found) >= cap:
                    raise BudgetError(f"normal subgroup enumeration exceeded cap {cap}")
                found[m] = ElementSet(h, m, is_subgroup=True, is_normal=True)
                work.append(m)
    return sorted(found.values(), key=lambda s: (s.size, s.mask))


def normal_subgroups_naive(h: FiniteGroup) -> list[ElementSet]:
    """Oracle: test every union of conjugacy classes containing the identity."""
    classes = conjugacy_classes(h)[1:]
    out = []
    for sel in range(1 << len(classes)):
        m = 1
        for i in range(len(classes)):
            if sel >> i & 1:
                m |= classes[i]
        cand = ElementSet(h, m)
        if cand.verify_subgroup():
            out.append(ElementSet(h, m, is_subgroup=True, is_normal=True))
    uniq = {s.mask: s for s in out}
    return sorted(uniq.values(), key=lambda s: (s.size, s.mask))


# ---------------------------------------------------------------------------
# GroupHom

@dataclass(frozen=True)
class GroupHom:
    """A fully verified homomorphism between finite groups."""

    source: FiniteGroup
    target: FiniteGroup
    map: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(np.asarray(self.map, dtype=np.int32))
        object.__setattr__(self, "map", arr)
        if arr.shape != (self.source.order,):
            raise ValidationError("hom map has wrong length")
        if arr.min() < 0 or arr.max() >= self.target.order:
            raise ValidationError("hom map image out of range")
        if arr[0] != 0:
            raise ValidationError("hom must send identity to identity")
        lhs = arr[self.source.table]
        rhs = self.target.table[arr[:, None], arr[None, :]]
        if not np.array_equal(lhs, rhs):
            raise ValidationError("map is not a homomorphism")
        arr.setflags(write=False)

    def __call__(self, i: int) -> int:
        return int(self.map[i])

    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and \
            np.unique(self.map).size == self.source.order

    def image_mask(self) -> int:
        return indices_to_mask(np.unique(self.map), self.target.order)

    def preimage_mask(self, target_mask: int) -> int:
        b = mask_to_bool(target_mask, self.target.order)
        return bool_to_mask(b[self.map])

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """self o inner."""
        if inner.target is not self.source and inner.target.order != self.source.order:
            raise ValidationError("composition mismatch")
        return GroupHom(inner.source, self.target, self.map[inner.map])

    def restricted_equals(self, other: "GroupHom", mask: int) -> bool:
        idx = mask_to_indices(mask, self.source.order)
        return bool(np.array_equal(self.map[idx], other.map[idx]))

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.map)


def identity_hom(h: FiniteGroup) -> GroupHom:
    return GroupHom(h, h, np.arange(h.order, dtype=np.int32))


def quotient(h: FiniteGroup, n: ElementSet) -> tuple[FiniteGroup, GroupHom]:
    """Coset group with canonical indexing (cosets ordered by least member)."""
    if not n.is_normal:
        raise ValidationError("quotient requires a certified normal subgroup")
    if n.mask == 1:
        return h, identity_hom(h)
    ni = n.indices()
    cosets = h.table[np.ix_(ni, np.arange(h.order))]
    rep = cosets.min(axis=0).astype(np.int32)
    reps = np.unique(rep)
    cidx = np.full(h.order, -1, dtype=np.int32)
    cidx[reps] = np.arange(reps.size, dtype=np.int32)
    qtable = cidx[rep[h.table[np.ix_(reps, reps)]]]
    q = FiniteGroup(qtable, f"{h.name}/N{n.size}")
    proj = GroupHom(h, q, cidx[rep])
    return q, proj


# ---------------------------------------------------------------------------
# homomorphism enumeration

def _greedy_generators(h: FiniteGroup, base: np.ndarray) -> list[int]:
    """Generating elements extending <base>, greedily maximizing growth."""
    current = _close_products(h, base) if base.size else np.array([0])
    gens: list[int] = []
    while current.size < h.order:
        rep = h.table[np.ix_(current, np.arange(h.order))].min(axis=0)
        cands = np.unique(rep)
        cands = cands[~np.isin(cands, current)]
        best, best_size, best_members = -1, -1, None
        for x in cands:
            members = _close_products(h, np.append(current, x))
            if members.size > best_size:
                best, best_size, best_members = int(x), members.size, members
            if best_size == h.order:
                break
        gens.append(best)
        current = best_members
    return gens


def _greedy_gens_from(h: FiniteGroup, candidates: np.ndarray) -> list[int]:
    """Subset of candidates generating the same subgroup, chosen greedily."""
    target = _close_products(h, candidates)
    current = np.array([0])
    gens: list[int] = []
    while current.size < target.size:
        pool = candidates[~np.isin(candidates, current)]
        best, best_size, best_members = -1, -1, None
        for x in pool:
            members = _close_products(h, np.append(current, x))
            if members.size > best_size:
                best, best_size, best_members = int(x), members.size, members
            if best_size == target.size:
                break
        gens.append(best)
        current = best_members
    return gens


def _bfs_extend(h: FiniteGroup, k: FiniteGroup, m: np.ndarray,
                gens: Sequence[int], injective: bool) -> bool:
    """Propagate images along right multiplication by gens; False on conflict.

    Paths may disagree on maps that are not homomorphisms; a full table
    verification at the leaf is still required.
    """
    ht, kt = h.table, k.table
    active = [g for g in gens if m[g] != -1]
    frontier = np.flatnonzero(m != -1)
    while frontier.size:
        nxt: list[np.ndarray] = []
        for g in active:
            e2 = ht[frontier, g]
            im2 = kt[m[frontier], m[g]]
            existing = m[e2]
            if np.any((existing != -1) & (existing != im2)):
                return False
            new = existing == -1
            if not new.any():
                continue
            e2n, im2n = e2[new], im2[new]
            order = np.lexsort((im2n, e2n))
            es, ims = e2n[order], im2n[order]
            same = es[1:] == es[:-1]
            if np.any(same & (ims[1:] != ims[:-1])):
                return False
            first = np.ones(es.size, dtype=bool)
            first[1:] = ~same
            m[es[first]] = ims[first]
            nxt.append(es[first])
        if injective:
            assigned = m[m != -1]
            if np.unique(assigned).size != assigned.size:
                return False
        frontier = np.unique(np.concatenate(nxt)) if nxt else np.array([], dtype=np.int64)
    return True


def enumerate_homs(h: FiniteGroup, k: FiniteGroup, *,
                   pins: Optional[dict[int, int]] = None,
                   bijective: bool = False,
                   fix: Optional[ElementSet] = None,
                   budget: int = DEFAULT_HOM_BUDGET) -> list[GroupHom]:
    """All homomorphisms h -> k satisfying the constraints, fully verified.

    Constraints: ``pins`` maps source elements to required images,
    ``bijective`` restricts to isomorphisms onto k, ``fix`` pins a subgroup
    pointwise (source and target must share the index space there).
    Backtracks over images of a greedily chosen generating set; candidate
    maps are propagated by breadth-first multiplication and every surviving
    leaf is verified against the full tables.
    """
    allpins = dict(pins or {})
    if fix is not None:
        for x in fix:
            allpins.setdefault(int(x), int(x))
    if bijective and h.order != k.order:
        return []
    base = np.full(h.order, -1, dtype=np.int32)
    base[0] = 0
    for s, t in allpins.items():
        if not (0 <= s < h.order and 0 <= t < k.order):
            raise ValidationError("pin out of range")
        if base[s] != -1 and base[s] != t:
            return []
        base[s] = t
    pin_keys = np.flatnonzero(base != -1)
    base_gens = _greedy_gens_from(h, pin_keys)
    branch_gens = _greedy_generators(h, pin_keys)
    all_gens = base_gens + branch_gens
    if not _bfs_extend(h, k, base, all_gens, bijective):
        return []
    k_orders = k.element_orders()
    results: list[GroupHom] = []
    nodes = 0

    def rec(partial: np.ndarray, gi: int) -> None:
        nonlocal nodes
        while gi < len(branch_gens) and partial[branch_gens[gi]] != -1:
            gi += 1
        if gi == len(branch_gens):
            if (partial == -1).any():
                return
            try:
                hom = GroupHom(h, k, partial)
            except ValidationError:
                return
            if bijective and not hom.is_bijective():
                return
            results.append(hom)
            return
        g = branch_gens[gi]
        og = h.element_order(g)
        cands = np.flatnonzero(og % k_orders == 0)
        for w in cands:
            nodes += 1
            if nodes > budget:
                raise BudgetError(f"hom search exceeded budget {budget}")
            trial = partial.copy()
            trial[g] = w
            if _bfs_extend(h, k, trial, all_gens, bijective):
                rec(trial, gi + 1)

    rec(base, 0)
    results.sort(key=lambda f: f.as_tuple())
    return results

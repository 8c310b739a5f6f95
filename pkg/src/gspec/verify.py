"""Machine verification of every finitely checkable claim over the corpus.

Each in-scope proposition id maps to one check that sweeps the applicable
corpus entries against independent recomputation.  Outcomes are pass,
fail (with witness), paper-claim-disputed (with witness; the claim fails
on a finite instance while our machinery is self-consistent), or
skipped-out-of-scope.  Two disputed entries are expected and documented.
"""

from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import corpus as cp
from . import dimension as dm
from . import equations as eq
from . import galois as gl
from . import ggroups as gx
from . import groups as gr
from . import sheaf as sh
from . import spectrum as sp
from .eqparser import parse_system
from .errors import GspecError

IN_SCOPE = ("2.1", "def-2.2", "2.6", "2.7", "2.8",
            "3.1", "3.2", "3.3",
            "4.1", "4.2", "4.3", "4.4", "4.5", "4.6", "4.7", "c4.1",
            "6.3", "7.2", "7.6",
            "8.1", "8.2", "8.4")

OUT_OF_SCOPE = {
    "2.2": "Lie-group statement; its solvable half is exercised under 4.2",
    "2.3": "projective linear groups over infinite fields",
    "2.4": "connected Lie groups",
    "2.5": "Zariski-dense subgroups of PSL(n,k)",
    "3.4": "free-group Top couple has no finite instances",
    "6.1": "algebraically closed coefficient groups are infinite",
    "6.2": "chain conditions are trivial for finite groups",
    "7.1": "height of G*Z is an infinite construction",
    "7.4": "co-dimension targets infinite free products",
    "7.5": "free-ideal topology targets infinite free products",
    "8.3": "co-rank targets infinite free products",
}

PAIRS_43 = (("A5/A5", "A5/A5"), ("A5/A5", "S5/A5"), ("S5/A5", "A5/A5"),
            ("S5/A5", "S5/A5"), ("A5/A5", "A5xA5/diag"), ("A5xA5/diag", "A5/A5"),
            ("A5xA5/diag", "A5xA5/diag"), ("PSL27/PSL27", "PSL27/PSL27"))

ORACLE_MAX_ORDER = 200
TOPOLOGY_MAX_NORMALS = 64


@dataclass
class PropResult:
    prop: str
    status: str
    summary: str
    witness: Optional[dict] = None
    entries: int = 0
    elapsed: float = 0.0


@dataclass
class VerificationReport:
    results: list[PropResult]
    corpus: list[str]

    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "paper-claim-disputed": 0,
               "skipped-out-of-scope": 0}
        for r in self.results:
            out[r.status] = out.get(r.status, 0) + 1
        return out

    @property
    def ok(self) -> bool:
        return all(r.status != "fail" for r in self.results)


def _entries(names: Optional[list[str]] = None) -> list[cp.CorpusEntry]:
    return [cp.corpus_entry(n) for n in (names or cp.corpus_names())]


# ---------------------------------------------------------------------------
# section 2

def check_2_1(names) -> PropResult:
    checked = 0
    for e in _entries(names):
        if e.ggroup.ambient.order > ORACLE_MAX_ORDER:
            continue
        fast = gx.zero_divisors(e.ggroup, "fast")
        oracle = gx.zero_divisors(e.ggroup, "oracle")
        if fast.mask != oracle.mask:
            return PropResult("2.1", "fail", "fast and oracle zero-divisor sets differ",
                              {"entry": e.name})
        checked += 1
    return PropResult("2.1", "pass",
                      f"fast = oracle zero divisors on {checked} entries (order <= {ORACLE_MAX_ORDER})",
                      entries=checked)


def check_def_2_2(names) -> PropResult:
    """Com containment holds; the normalizer claim fails on a finite witness."""
    witness = None
    checked = 0
    for e in _entries(names):
        gg = e.ggroup
        com = gx.com_subgroup(gg)
        for p in gx.spec(gg):
            if com.mask & ~p.carrier.mask:
                return PropResult("def-2.2", "fail",
                                  "Com is not inside a prime", {"entry": e.name})
        rad = gx.radical(gg)
        norm = _normalizer_mask(gg.ambient, com.mask)
        if witness is None and norm & ~rad.mask:
            witness = {"entry": e.name, "com_order": com.size,
                       "normalizer_order": gr.popcount(norm),
                       "radical_order": rad.size}
        checked += 1
    if witness is None:
        return PropResult("def-2.2", "pass",
                          "Com and its normalizer lie in the radical everywhere",
                          entries=checked)
    return PropResult(
        "def-2.2", "paper-claim-disputed",
        "Com lies in every prime (verified); the claimed containment of its "
        "normalizer in the radical fails on a finite instance",
        witness, entries=checked)


def _normalizer_mask(h: gr.FiniteGroup, mask: int) -> int:
    idx = gr.mask_to_indices(mask, h.order)
    out = 0
    b = gr.mask_to_bool(mask, h.order)
    for x in range(h.order):
        conj = h.table[h.table[x, idx], h.inverse[x]]
        if b[conj].all():
            out |= 1 << x
    return out


def check_2_6(names) -> PropResult:
    checked = 0
    for e in _entries(names):
        gg = e.ggroup
        if "normal-G" not in e.tags:
            continue
        gs = gg.gsub if gg.gsub.is_normal else gg.gsub.certified()
        for ideal in gx.ideals(gg):
            comm = gr.commutator_subgroup(gg.ambient, ideal.carrier, gs)
            if comm.mask != 1:
                return PropResult("2.6", "fail", "[I, G] is nontrivial",
                                  {"entry": e.name, "ideal_order": ideal.size})
        checked += 1
    return PropResult("2.6", "pass",
                      f"ideals commute with normal designated copies on {checked} entries",
                      entries=checked)


def check_2_7(names) -> PropResult:
    checked = 0
    for e in _entries(names):
        gg = e.ggroup
        nil = gx.nil_subgroup(gg)
        rad = gx.radical(gg)
        for p in gx.spec(gg):
            if nil.mask & ~p.carrier.mask:
                return PropResult("2.7", "fail", "Nil escapes a prime", {"entry": e.name})
        if nil.mask & ~rad.mask:
            return PropResult("2.7", "fail", "Nil escapes the radical", {"entry": e.name})
        s = sp.spec_space(gg)
        if s.v_bits(nil.mask) != s.full_bits:
            return PropResult("2.7", "fail", "V(Nil) is not the whole spectrum",
                              {"entry": e.name})
        checked += 1
    return PropResult("2.7", "pass",
                      f"Nil inside every prime and V(Nil) full on {checked} entries",
                      entries=checked)


def check_2_8(names) -> PropResult:
    checked = 0
    for e in _entries(names):
        gg = e.ggroup
        if "simple-G" not in e.tags:
            continue
        gmask = gg.gsub.mask
        for n in gr.normal_subgroups(gg.ambient):
            meet = n.mask & gmask
            if meet != 1 and meet != gmask:
                return PropResult("2.8", "fail", "normal subgroup violates the dichotomy",
                                  {"entry": e.name, "normal_order": n.size})
        checked += 1
    return PropResult("2.8", "pass",
                      f"ideal-or-contains-G dichotomy on {checked} simple-G entries",
                      entries=checked)


# ---------------------------------------------------------------------------
# section 3

def _normals_capped(gg) -> Optional[list[gr.ElementSet]]:
    normals = gr.normal_subgroups(gg.ambient)
    return normals if len(normals) <= TOPOLOGY_MAX_NORMALS else None


def check_3_1(names) -> PropResult:
    checked = 0
    for e in _entries(names):
        gg = e.ggroup
        normals = _normals_capped(gg)
        if normals is None:
            continue
        s = sp.spec_space(gg)
        vb = {n.mask: s.v_bits(n.mask) for n in normals}
        for i_, j_ in itertools.product(normals, repeat=2):
            comm = gr.commutator_subgroup(gg.ambient, i_, j_)
            if s.v_bits(comm.mask) != vb[i_.mask] | vb[j_.mask]:
                return PropResult("3.1", "fail", "V([I,J]) != V(I) u V(J)",
                                  {"entry": e.name})
        masks = [n.mask for n in normals]
        families = [f for k in (1, 2, 3) for f in itertools.combinations(masks, k)]
        families.append(tuple(masks))
        for fam in families:
            join = gr.subgroup_generated(
                gg.ambient, [b for m in fam for b in gr.bits(m)], normal=True)
            want = s.full_bits
            for m in fam:
                want &= vb.get(m, s.v_bits(m))
            if s.v_bits(join.mask) != want:
                return PropResult("3.1", "fail", "V(<union>) != intersection of V",
                                  {"entry": e.name})
        # antitonicity comes with the lattice
        for i_, j_ in itertools.product(normals, repeat=2):
            if i_.mask & ~j_.mask == 0 and vb[j_.mask] & ~vb[i_.mask]:
                return PropResult("3.1", "fail", "V is not antitone", {"entry": e.name})
        checked += 1
    return PropResult("3.1", "pass",
                      f"lattice identities exhaustive on {checked} entries",
                      entries=checked)


def check_3_2(names) -> PropResult:
    checked = 0
    for e in _entries(names):
        gg = e.ggroup
        s = sp.spec_space(gg)
        for ideal in gx.ideals(gg):
            if ideal.carrier.size == gg.ambient.order:
                continue
            qgg, proj = gx.quotient_ggroup(gg, ideal.carrier)
            qs = sp.spec_space(qgg)
            try:
                sp.induced_map(proj, qs, s)   # validates primality + continuity
            except GspecError as err:
                return PropResult("3.2", "fail", str(err),
                                  {"entry": e.name, "ideal_order": ideal.size})
            checked += 1
    return PropResult("3.2", "pass",
                      f"induced maps continuous for {checked} projections",
                      entries=checked)


def check_3_3(names) -> PropResult:
    t1 = t2 = t3 = 0
    for e in _entries(names):
        gg = e.ggroup
        if "domain" in e.tags:
            # T1: G-subgroups of a domain are domains
            _, reps = gg.g_orbits()
            seen = set()
            for x in reps:
                sub = gr.subgroup_generated(
                    gg.ambient, list(gg.g_indices) + [int(x)])
                if sub.mask in seen or sub.size == gg.ambient.order:
                    continue
                seen.add(sub.mask)
                subg, embed = gr.sub_group(gg.ambient, sub.mask)
                pos = np.full(gg.ambient.order, -1, dtype=np.int64)
                pos[embed] = np.arange(embed.size)
                inner = gx.make_ggroup(subg, [int(pos[v]) for v in gg.g_indices])
                if not gx.is_g_domain(inner):
                    return PropResult("3.3", "fail", "T1: G-subgroup of a domain "
                                      "has zero divisors", {"entry": e.name})
                t1 += 1
            # T2: nontrivial normal subgroups never centralize each other
            for i_, j_ in itertools.combinations_with_replacement(
                    gr.normal_subgroups(gg.ambient), 2):
                if i_.mask == 1 or j_.mask == 1:
                    continue
                if gr.commutator_subgroup(gg.ambient, i_, j_).mask == 1:
                    return PropResult("3.3", "fail", "T2: commuting nontrivial normals "
                                      "in a domain", {"entry": e.name})
                t2 += 1
        # T3: preimages of ideals under projections are ideals
        for ideal in gx.ideals(gg):
            if ideal.carrier.size == gg.ambient.order:
                continue
            qgg, proj = gx.quotient_ggroup(gg, ideal.carrier)
            for qideal in gx.ideals(qgg):
                pre = proj.preimage_mask(qideal.carrier.mask)
                if pre & gg.gsub.mask != 1:
                    return PropResult("3.3", "fail", "T3: preimage of an ideal is "
                                      "not an ideal", {"entry": e.name})
                t3 += 1
    return PropResult("3.3", "pass",
                      f"T1 on {t1} subgroups, T2 on {t2} pairs, T3 on {t3} preimages")


# ---------------------------------------------------------------------------
# section 4

def check_4_1(names) -> PropResult:
    checked = 0
    for e in _entries(names):
        gg = e.ggroup
        normals = _normals_capped(gg)
        if normals is None:
            continue
        s = sp.spec_space(gg)
        for i_, j_ in itertools.product(normals, repeat=2):
            comm = gr.commutator_subgroup(gg.ambient, i_, j_)
            meet = gr.ElementSet(gg.ambient, i_.mask & j_.mask,
                                 is_subgroup=True, is_normal=True)
            if s.v_bits(comm.mask) != s.v_bits(meet.mask):
                return PropResult("4.1", "fail", "V([I,J]) != V(I n J)",
                                  {"entry": e.name})
        checked += 1
    return PropResult("4.1", "pass", f"V([I,J]) = V(I n J) exhaustive on {checked} entries",
                      entries=checked)


def check_4_2(names) -> PropResult:
    checked = 0
    for e in _entries(names):
        applicable = "solvable-G" in e.tags or "trivial-G" in e.tags
        if not applicable:
            continue
        if gx.spec(e.ggroup):
            return PropResult("4.2", "fail", "spectrum is not empty", {"entry": e.name})
        zd = gx.zero_divisors(e.ggroup, "fast")
        if e.ggroup.gsub.size > 1 and zd.mask & e.ggroup.gsub.mask == 0:
            return PropResult("4.2", "fail", "solvable designated copy has no "
                              "zero divisor inside it", {"entry": e.name})
        checked += 1
    return PropResult("4.2", "pass",
                      f"empty spectra for {checked} solvable or trivial-G entries",
                      entries=checked)


def check_4_3(names) -> PropResult:
    avail = set(names or cp.corpus_names())
    pairs = 0
    for lname, hname in PAIRS_43:
        if lname not in avail or hname not in avail:
            continue
        le, he = cp.corpus_entry(lname), cp.corpus_entry(hname)
        corr = cp.g_correspondence(lname, hname)
        if corr is None:
            continue
        sl, shh = sp.spec_space(le.ggroup), sp.spec_space(he.ggroup)
        homs = eq.hom_g_set(le.ggroup, he.ggroup, g_map=corr)
        morphisms = sh.enumerate_scheme_morphisms(shh, sl, corr)
        if len(homs) != len(morphisms):
            return PropResult("4.3", "fail", "morphism count differs from hom count",
                              {"pair": [lname, hname], "homs": len(homs),
                               "morphisms": len(morphisms)})
        sigs = set()
        for u in homs:
            m = sh.scheme_morphism_from_hom(u, sl, shh)
            if sh.global_hom(m).as_tuple() != u.as_tuple():
                return PropResult("4.3", "fail", "round trip is not the identity",
                                  {"pair": [lname, hname]})
            sigs.add(m.signature())
        if len(sigs) != len(homs) or sigs != {m.signature() for m in morphisms}:
            return PropResult("4.3", "fail", "induced morphisms do not exhaust "
                              "the enumeration", {"pair": [lname, hname]})
        pairs += 1
    return PropResult("4.3", "pass",
                      f"bijection, counts and round trips exact on {pairs} pairs",
                      entries=pairs)


def check_4_4(names) -> PropResult:
    checked = 0
    for e in _entries(names):
        rep = sp.nil_homeo_check(e.ggroup)
        if not rep.passed:
            return PropResult("4.4", "fail", "; ".join(rep.notes) or "homeomorphism fails",
                              {"entry": e.name})
        checked += 1
    return PropResult("4.4", "pass", f"nil quotient homeomorphism on {checked} entries",
                      entries=checked)


def check_4_5(names) -> PropResult:
    avail = set(names or cp.corpus_names())
    targets = [t for t in ("S5/A5", "A5/A5") if t in avail]
    if not targets:
        return PropResult("4.5", "pass", "no applicable targets selected", entries=0)
    checked = 0
    for tname in targets:
        gg = cp.corpus_entry(tname).ggroup
        p = eq.Presentation(gg, 1, (parse_system("X1^2 = 1;", gg).equalities))
        q = eq.Presentation(gg, 1, (parse_system("X1^3 = 1;", gg).equalities))
        prod = eq.product_presentation(p, q)
        vp = eq.solve(eq.system_from_presentation(p), gg).tuples
        vq = eq.solve(eq.system_from_presentation(q), gg).tuples
        vprod = eq.solve(eq.system_from_presentation(prod), gg).tuples
        expect = sorted((a + b) for a in vp for b in vq)
        if sorted(vprod) != expect:
            return PropResult("4.5", "fail", "product variety is not the pairing",
                              {"target": tname})
        checked += 1
    return PropResult("4.5", "pass",
                      f"product presentations pair off exactly on {checked} targets",
                      entries=checked)


def check_4_6(names) -> PropResult:
    avail = set(names or cp.corpus_names())
    reports = []
    if "A5/A5" in avail:
        a5 = cp.corpus_entry("A5/A5").ggroup
        reports.append(("A5/A5", eq.sum_check(a5, a5, a5)))
    if "Z4/Z4" in avail:
        z4 = cp.base_group("Z4")
        gz = gx.make_ggroup(z4, gr.subgroup_generated(z4, [2]), "Z4/Z2")
        reports.append(("Z4/Z2", eq.sum_check(gz, gz, gz)))
    if "S3/Z2" in avail:
        s3z2 = cp.corpus_entry("S3/Z2").ggroup
        reports.append(("S3/Z2", eq.sum_check(s3z2, s3z2, s3z2)))
    for name, rep in reports:
        if not rep.bijective or rep.sum_count != rep.left_count * rep.right_count:
            return PropResult("4.6", "fail", "sum pairing is not bijective",
                              {"triple": name, "counts": [rep.left_count,
                                                          rep.right_count, rep.sum_count]})
    return PropResult("4.6", "pass",
                      "sum pairings bijective on " + ", ".join(n for n, _ in reports),
                      entries=len(reports))


def check_4_7(names) -> PropResult:
    checked = 0
    for e in _entries(names):
        gg = e.ggroup
        normals = _normals_capped(gg)
        if normals is None:
            continue
        s = sp.spec_space(gg)
        prime_masks = {p.carrier.mask for p in s.points}
        for n in normals:
            if not s.is_radical_ideal(n):
                continue
            irr = sp.is_irreducible(s.v_of(n))
            if irr != (n.mask in prime_masks):
                return PropResult("4.7", "fail",
                                  "irreducibility disagrees with primality",
                                  {"entry": e.name, "normal_order": n.size})
            checked += 1
    return PropResult("4.7", "pass",
                      f"V(N) irreducible iff N prime, {checked} radical ideals",
                      entries=checked)


def check_c4_1(names) -> PropResult:
    checked = 0
    for e in _entries(names):
        if "domain-G" not in e.tags:
            continue
        gg = e.ggroup
        s = sp.spec_space(gg)
        if s.npoints == 0:
            continue
        full_irr = sp.is_irreducible(s.closed_with_bits(s.full_bits))
        rad = gx.radical(gg)
        rad_prime = rad.mask in {p.carrier.mask for p in s.points}
        if full_irr != rad_prime:
            return PropResult("c4.1", "fail",
                              "irreducibility disagrees with radical primality",
                              {"entry": e.name})
        checked += 1
    return PropResult("c4.1", "pass",
                      f"Spec irreducible iff radical prime on {checked} entries",
                      entries=checked)


# ---------------------------------------------------------------------------
# sections 6..8

def check_6_3(names) -> PropResult:
    checked = 0
    for e in _entries(names):
        gg = e.ggroup
        primes = gx.spec(gg)
        rad = gx.radical(gg)
        inter = (1 << gg.ambient.order) - 1
        for p in primes:
            inter &= p.carrier.mask
        if primes and inter != rad.mask:
            return PropResult("6.3", "fail", "radical differs from the finite "
                              "intersection", {"entry": e.name})
        checked += 1
    return PropResult("6.3", "pass",
                      f"radical is the finite prime intersection on {checked} entries",
                      entries=checked)


def check_7_2(names) -> PropResult:
    avail = set(names or cp.corpus_names())
    if "A5xA5/first" not in avail:
        return PropResult("7.2", "pass", "product entry not selected", entries=0)
    e = cp.corpus_entry("A5xA5/first")
    gg = e.ggroup
    primes = gx.spec(gg)
    want = gr.mask_of(range(60))
    if len(primes) != 1 or primes[0].carrier.mask != want:
        return PropResult("7.2", "fail", "spectrum is not the single claimed prime",
                          {"entry": e.name})
    rp = dm.g_rank(gg, "plain")
    rn = dm.g_rank(gg, "normal")
    if rn.value != 1:
        return PropResult("7.2", "fail", "normal-closure rank does not match n-1",
                          {"rank": rn.value})
    if rp.value == 1:
        return PropResult("7.2", "pass", "both generation modes agree with n-1",
                          entries=1)
    return PropResult(
        "7.2", "paper-claim-disputed",
        "spectrum part exact (single prime 1xG); the rank claim n-1 holds under "
        "normal-closure generation but plain generation needs one more element",
        {"entry": e.name, "rank_plain": rp.value, "rank_normal": rn.value,
         "claimed": 1}, entries=1)


def check_7_6(names) -> PropResult:
    checked = 0
    for e in _entries(names):
        gg = e.ggroup
        if "normal-G" not in e.tags:
            continue
        for p in dm.g_points(gg):
            rep = dm.split_check(gg, p)
            if not rep.passed:
                return PropResult("7.6", "fail", "G-point does not split the group",
                                  {"entry": e.name, "prime_order": p.size})
            checked += 1
    return PropResult("7.6", "pass", f"split decomposition at {checked} G-points",
                      entries=checked)


def check_8_1(names) -> PropResult:
    checked = 0
    for e in _entries(names):
        if "trivial-G" not in e.tags:
            continue
        rep = gl.extension_report(e.ggroup)
        if rep.orbit_count != e.ggroup.ambient.order or not rep.algebraic:
            return PropResult("8.1", "fail", "trivial-G orbits are not singletons "
                              "or an element lacks a witness", {"entry": e.name})
        checked += 1
    return PropResult("8.1", "pass",
                      f"finite extensions of the trivial group on {checked} entries",
                      entries=checked)


def check_8_2(names) -> PropResult:
    checked = 0
    for e in _entries(names):
        rep = gl.extension_report(e.ggroup)
        if not rep.algebraic or not rep.finite:
            return PropResult("8.2", "fail", "witness re-evaluation failed",
                              {"entry": e.name})
        if rep.orbit_count * e.ggroup.gsub.size != e.ggroup.ambient.order:
            return PropResult("8.2", "fail", "orbit arithmetic broken", {"entry": e.name})
        checked += 1
    return PropResult("8.2", "pass",
                      f"algebraic with valid witnesses on {checked} entries",
                      entries=checked)


def _orbit_count(h: gr.FiniteGroup, sub_mask: int) -> int:
    idx = gr.mask_to_indices(sub_mask, h.order)
    rep = h.table[np.ix_(idx, np.arange(h.order))].min(axis=0)
    return int(np.unique(rep).size)


def check_8_4(names) -> PropResult:
    checked = 0
    for e in _entries(names):
        gg = e.ggroup
        if gg.gsub.size == gg.ambient.order:
            continue
        _, reps = gg.g_orbits()
        mids = {gg.gsub.mask, (1 << gg.ambient.order) - 1}
        for x in reps[:8]:
            mids.add(gr.subgroup_generated(
                gg.ambient, list(gg.g_indices) + [int(x)]).mask)
        for mid in sorted(mids):
            total = _orbit_count(gg.ambient, gg.gsub.mask)
            upper = _orbit_count(gg.ambient, mid)
            subg, embed = gr.sub_group(gg.ambient, mid)
            pos = np.full(gg.ambient.order, -1, dtype=np.int64)
            pos[embed] = np.arange(embed.size)
            inner_mask = gr.mask_of(int(pos[v]) for v in gg.g_indices)
            lower = _orbit_count(subg, inner_mask)
            if total != upper * lower:
                return PropResult("8.4", "fail", "orbit counts are not multiplicative",
                                  {"entry": e.name, "mid_order": gr.popcount(mid)})
            checked += 1
    return PropResult("8.4", "pass",
                      f"orbit multiplicativity on {checked} towers", entries=checked)


# ---------------------------------------------------------------------------
# runner

CHECKS: dict[str, Callable] = {
    "2.1": check_2_1, "def-2.2": check_def_2_2, "2.6": check_2_6,
    "2.7": check_2_7, "2.8": check_2_8,
    "3.1": check_3_1, "3.2": check_3_2, "3.3": check_3_3,
    "4.1": check_4_1, "4.2": check_4_2, "4.3": check_4_3, "4.4": check_4_4,
    "4.5": check_4_5, "4.6": check_4_6, "4.7": check_4_7, "c4.1": check_c4_1,
    "6.3": check_6_3, "7.2": check_7_2, "7.6": check_7_6,
    "8.1": check_8_1, "8.2": check_8_2, "8.4": check_8_4,
}


def default_threads() -> int:
    env = os.environ.get("GSPEC_THREADS")
    if env:
        return max(1, int(env))
    return min(4, os.cpu_count() or 1)


def verify_suite(names: Optional[list[str]] = None,
                 props: Optional[list[str]] = None,
                 threads: Optional[int] = None) -> VerificationReport:
    """Run proposition checks over the corpus; see IN_SCOPE / OUT_OF_SCOPE."""
    selected = list(props) if props else list(IN_SCOPE)
    corpus_list = list(names or cp.corpus_names())
    jobs = []
    results: dict[str, PropResult] = {}
    for pid in selected:
        if pid in CHECKS:
            jobs.append(pid)
        elif pid in OUT_OF_SCOPE:
            results[pid] = PropResult(pid, "skipped-out-of-scope", OUT_OF_SCOPE[pid])
        else:
            results[pid] = PropResult(pid, "skipped-out-of-scope",
                                      "not part of the verified surface")
    nthreads = threads if threads is not None else default_threads()

    def run(pid: str) -> PropResult:
        t0 = time.monotonic()
        res = CHECKS[pid](names)
        res.elapsed = time.monotonic() - t0
        return res

    if nthreads > 1 and len(jobs) > 1:
        # warm the shared corpus caches single-threaded first
        for n in corpus_list:
            cp.corpus_entry(n)
        with ThreadPoolExecutor(max_workers=nthreads) as pool:
            for pid, res in zip(jobs, pool.map(run, jobs)):
                results[pid] = res
    else:
        for pid in jobs:
            results[pid] = run(pid)
    ordered = [results[p] for p in selected]
    return VerificationReport(ordered, corpus_list)


def render_text(report: VerificationReport) -> str:
    lines = []
    for r in report.results:
        lines.append(f"{r.prop:9s} {r.status:22s} {r.summary}")
        if r.witness:
            parts = ", ".join(f"{k}={v}" for k, v in sorted(r.witness.items()))
            lines.append(f"{'':9s} witness: {parts}")
    c = report.counts()
    lines.append(f"propositions: {c['pass']} pass, {c['fail']} fail, "
                 f"{c['paper-claim-disputed']} disputed, "
                 f"{c['skipped-out-of-scope']} skipped")
    return "\n".join(lines)


def render_json(report: VerificationReport) -> dict:
    return {
        "format": "gspec-report-v1",
        "command": "verify",
        "corpus": report.corpus,
        "propositions": [
            {"id": r.prop, "status": r.status, "summary": r.summary,
             **({"witness": r.witness} if r.witness else {})}
            for r in report.results
        ],
        "summary": report.counts(),
    }

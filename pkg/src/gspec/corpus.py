"""Builtin test-bed G-groups with re-derivable tags and expected facts.

The corpus spans solvable, simple, trivial-G, domain and non-domain cases
with empty, one-point and two-point spectra; tags are never trusted, they
are recomputed at load and checked against the stored ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import ValidationError
from . import groups as gr
from . import ggroups as gx
from .groups import ElementSet, FiniteGroup
from .ggroups import GGroup

BASE_GROUPS = ("Z1", "Z2", "Z4", "Z6", "S3", "D4", "Q8", "A4", "S4",
               "A5", "S5", "A5xZ2", "A5xA5", "PSL27")


@lru_cache(maxsize=None)
def base_group(name: str) -> FiniteGroup:
    if name == "Z1":
        return gr.trivial_group()
    if name.startswith("Z") and name[1:].isdigit():
        return gr.cyclic_group(int(name[1:]))
    if name == "S3":
        return gr.symmetric_group(3)
    if name == "S4":
        return gr.symmetric_group(4)
    if name == "S5":
        return gr.symmetric_group(5)
    if name == "A4":
        return gr.alternating_group(4)
    if name == "A5":
        return gr.alternating_group(5)
    if name == "D4":
        return gr.dihedral_group(4)
    if name == "Q8":
        return gr.quaternion_group()
    if name == "A5xZ2":
        return gr.direct_product(base_group("A5"), base_group("Z2"), "A5xZ2")
    if name == "A5xA5":
        return gr.direct_product(base_group("A5"), base_group("A5"), "A5xA5")
    if name == "PSL27":
        return gr.psl27_group()
    raise ValidationError(f"unknown builtin group {name!r}")


@lru_cache(maxsize=None)
def a5_in_s5_embedding() -> dict[int, int]:
    """Index map from the standalone A5 into the even permutations of S5."""
    a5, s5 = base_group("A5"), base_group("S5")
    lookup = {p: i for i, p in enumerate(s5.perms)}
    return {i: lookup[p] for i, p in enumerate(a5.perms)}


@lru_cache(maxsize=None)
def s5_even_mask() -> int:
    return gr.mask_of(a5_in_s5_embedding().values())


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    ggroup: GGroup
    tags: frozenset[str]
    expected: tuple[tuple[str, object, str], ...]   # (fact, value, provenance)

    def expect(self, key: str):
        for k, v, _ in self.expected:
            if k == key:
                return v
        raise KeyError(key)


def derive_tags(gg: GGroup) -> frozenset[str]:
    tags = set()
    gsize = gg.gsub.size
    if gsize == 1:
        tags.add("trivial-G")
    else:
        sub, _ = gr.sub_group(gg.ambient, gg.gsub.mask)
        if gr.is_solvable(sub):
            tags.add("solvable-G")
        if len(gr.normal_subgroups(sub)) == 2:
            tags.add("simple-G")
        sub_gg = gx.make_ggroup(sub, gr.full_set(sub))
        if gx.is_g_domain(sub_gg):
            tags.add("domain-G")
    if gg.gsub.certified().is_normal:
        tags.add("normal-G")
    if gx.is_g_domain(gg):
        tags.add("domain")
    if gx.is_g_simple(gg):
        tags.add("g-simple")
    if not gx.spec(gg):
        tags.add("empty-spec")
    return frozenset(tags)


def _self_entry(name: str, tags: frozenset[str], expected=()) -> CorpusEntry:
    h = base_group(name)
    gg = gx.make_ggroup(h, gr.full_set(h), f"{name}/{name}")
    return CorpusEntry(f"{name}/{name}", gg, tags, tuple(expected))


def _trivial_entry(name: str, tags: frozenset[str]) -> CorpusEntry:
    h = base_group(name)
    gg = gx.make_ggroup(h, gr.element_set(h, [0]), f"{name}/1")
    return CorpusEntry(f"{name}/1", gg, tags, ())


_SELF_TAGS = {
    "Z1": {"trivial-G", "normal-G", "domain", "g-simple", "empty-spec"},
    "Z2": {"solvable-G", "simple-G", "normal-G", "g-simple", "empty-spec"},
    "Z4": {"solvable-G", "normal-G", "g-simple", "empty-spec"},
    "Z6": {"solvable-G", "normal-G", "g-simple", "empty-spec"},
    "S3": {"solvable-G", "normal-G", "g-simple", "empty-spec"},
    "D4": {"solvable-G", "normal-G", "g-simple", "empty-spec"},
    "Q8": {"solvable-G", "normal-G", "g-simple", "empty-spec"},
    "A4": {"solvable-G", "normal-G", "g-simple", "empty-spec"},
    "S4": {"solvable-G", "normal-G", "g-simple", "empty-spec"},
    "A5": {"simple-G", "domain-G", "normal-G", "domain", "g-simple"},
    "PSL27": {"simple-G", "domain-G", "normal-G", "domain", "g-simple"},
}

@lru_cache(maxsize=None)
def corpus_entry(name: str) -> CorpusEntry:
    if name.endswith("/1"):
        base = name[:-2]
        h = base_group(base)
        gg = gx.make_ggroup(h, gr.element_set(h, [0]), name)
        tags = derive_tags(gg)
        return CorpusEntry(name, gg, tags, ())
    if "/" in name and name.split("/")[0] == name.split("/")[1]:
        base = name.split("/")[0]
        entry = _self_entry(base, frozenset(_SELF_TAGS[base]))
        if entry.tags != derive_tags(entry.ggroup):
            raise ValidationError(f"stored tags for {name} disagree with derivation")
        return entry
    if name == "S5/A5":
        s5 = base_group("S5")
        gg = gx.make_ggroup(s5, ElementSet(s5, s5_even_mask()).certified(), name)
        return CorpusEntry(name, gg, derive_tags(gg), (
            ("ideal_count", 1, "paper: S_n is an A_n-simple group"),
            ("spec_sizes", (1,), "derived: zero-divisor oracle on the quotient"),
            ("rank_plain", 1, "derived: exhaustive k=1 search"),
        ))
    if name == "S3/Z2":
        s3 = base_group("S3")
        t = s3.index_of_perm((1, 0, 2))
        gg = gx.make_ggroup(s3, gr.subgroup_generated(s3, [t]), name)
        return CorpusEntry(name, gg, derive_tags(gg), (
            ("spec_sizes", (), "paper: solvable G forces an empty spectrum"),
        ))
    if name == "A5xZ2/A5":
        h = base_group("A5xZ2")
        gg = gx.make_ggroup(h, gr.element_set(h, [a * 2 for a in range(60)]), name)
        return CorpusEntry(name, gg, derive_tags(gg), (
            ("nil_order", 2, "derived: central factor is nilpotent of length 2"),
            ("spec_sizes", (2,), "derived: quotient by the center is a domain"),
        ))
    if name == "A5xA5/first":
        h = base_group("A5xA5")
        gg = gx.make_ggroup(h, gr.element_set(h, [a * 60 for a in range(60)]), name)
        return CorpusEntry(name, gg, derive_tags(gg), (
            ("spec_sizes", (60,), "paper: only one element the prime (1,G,...,G)"),
            ("radical_order", 60, "paper: Rad_G(H) = (1,G,...,G)"),
            ("dimension", 0, "paper: the dimension of Spec_G(H) = 0"),
            ("rank_plain", 2, "derived: exhaustive search; disputes the n-1 claim"),
            ("rank_normal", 1, "derived: matches n-1 under normal-closure generation"),
        ))
    if name == "A5xA5/diag":
        h = base_group("A5xA5")
        gg = gx.make_ggroup(h, gr.element_set(h, [a * 61 for a in range(60)]), name)
        return CorpusEntry(name, gg, derive_tags(gg), (
            ("spec_sizes", (60, 60), "derived: exhaustive ideal/domain check"),
            ("radical_order", 1, "derived: the two primes meet trivially"),
        ))
    raise ValidationError(f"unknown builtin corpus entry {name!r}")


SELF_GROUPS = ("Z1", "Z2", "Z4", "Z6", "S3", "D4", "Q8", "A4", "S4", "A5", "PSL27")


def corpus_names() -> list[str]:
    names = [f"{b}/{b}" for b in SELF_GROUPS]
    names += ["S5/A5", "S3/Z2", "A5xZ2/A5", "A5xA5/first", "A5xA5/diag"]
    names += [f"{b}/1" for b in BASE_GROUPS if b != "Z1"]
    return names


def small_corpus_names(max_order: int) -> list[str]:
    return [n for n in corpus_names()
            if corpus_entry(n).ggroup.ambient.order <= max_order]


def g_correspondence(src: str, dst: str) -> Optional[dict[int, int]]:
    """Designated-copy identification between corpus entries, when known."""
    if src == dst:
        e = corpus_entry(src)
        return {int(x): int(x) for x in e.ggroup.g_indices}
    table = {
        ("A5/A5", "S5/A5"): lambda: a5_in_s5_embedding(),
        ("A5/A5", "A5xZ2/A5"): lambda: {a: a * 2 for a in range(60)},
        ("A5/A5", "A5xA5/first"): lambda: {a: a * 60 for a in range(60)},
        ("A5/A5", "A5xA5/diag"): lambda: {a: a * 61 for a in range(60)},
    }
    fn = table.get((src, dst))
    return fn() if fn else None

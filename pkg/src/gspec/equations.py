"""Equation systems over a G-group and their brute-force solution varieties.

Solving enumerates all assignment tuples (vectorized, chunked); every listed
tuple satisfies each equality word at the identity and each inequality word
away from it.  Presentation-level products, sums and base change live here
too, together with the solution/hom-set correspondence.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from .errors import BudgetError, ValidationError
from . import groups as gr
from .groups import FiniteGroup, GroupHom
from .ggroups import GGroup
from . import words as wd
from .words import GWord, evaluate, format_word, reduce_word

DEFAULT_SOLVE_BUDGET = 10 ** 8
_CHUNK = 1 << 20


@dataclass(frozen=True)
class EquationSystem:
    """Equalities (word = 1) and inequalities (word != 1) over a G-group."""

    binding: GGroup
    nvars: int
    equalities: tuple[GWord, ...]
    inequalities: tuple[GWord, ...] = ()
    symbol_table: tuple[tuple[str, int], ...] = ()

    def names(self) -> dict[int, str]:
        out: dict[int, str] = {}
        for name, elem in self.symbol_table:
            out.setdefault(elem, name)
        return out

    def __str__(self) -> str:
        names = self.names()
        lines = []
        used = sorted({s[1] for w in self.equalities + self.inequalities
                       for s in w.syllables if s[0] == "c"})
        declared = dict(self.symbol_table)
        for name, elem in self.symbol_table:
            lines.append(f"let {name} = {elem};")
        for elem in used:
            if elem not in names:
                lines.append(f"let g{elem} = {elem};")
        lines.append(f"vars {self.nvars};")
        for w in self.equalities:
            lines.append(f"{format_word(w, names)} = 1;")
        for w in self.inequalities:
            lines.append(f"{format_word(w, names)} != 1;")
        return "\n".join(lines)


@dataclass(frozen=True)
class SolutionSet:
    """Exhaustively enumerated satisfying tuples, in lexicographic order."""

    system: EquationSystem
    target: GGroup
    tuples: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.tuples)


@dataclass(frozen=True)
class Presentation:
    """Relator words over a coefficient G-group."""

    coeff: GGroup
    nvars: int
    relators: tuple[GWord, ...]


def system_from_presentation(p: Presentation) -> EquationSystem:
    return EquationSystem(p.coeff, p.nvars, p.relators)


# ---------------------------------------------------------------------------
# solving

def _power_map(h: FiniteGroup, e: int) -> np.ndarray:
    n = h.order
    idx = np.arange(n, dtype=np.int32)
    if e < 0:
        base = h.inverse.astype(np.int32)
        e = -e
    else:
        base = idx
    out = np.zeros(n, dtype=np.int32)
    cur = out.copy()
    for _ in range(e):
        cur = h.table[cur, base]
    return cur


def _evaluate_block(w: GWord, h: FiniteGroup, cols: list[np.ndarray]) -> np.ndarray:
    """Vectorized word evaluation over per-variable assignment columns."""
    m = cols[0].shape[0] if cols else 1
    val = np.zeros(m, dtype=np.int32)
    for s in w.syllables:
        if s[0] == "c":
            val = h.table[val, s[1]]
        else:
            pw = _power_map(h, s[2])
            val = h.table[val, pw[cols[s[1]]]]
    return val


def _check_tuple(sys_: EquationSystem, target: GGroup, tup: Sequence[int]) -> bool:
    """Scalar re-check of one assignment, independent of the vector path."""
    h = target.ambient
    return all(evaluate(w, tup, h) == 0 for w in sys_.equalities) and \
        all(evaluate(w, tup, h) != 0 for w in sys_.inequalities)


def _invariance_perms(sys_: EquationSystem) -> list[tuple[int, ...]]:
    """Variable permutations fixing the system syntactically."""
    k = sys_.nvars
    if k < 2 or k > 6:
        return [tuple(range(k))]
    eqs = frozenset(w.syllables for w in sys_.equalities)
    ineqs = frozenset(w.syllables for w in sys_.inequalities)
    out = []
    for perm in itertools.permutations(range(k)):
        pe = frozenset(w.rename_vars(perm).syllables for w in sys_.equalities)
        pi = frozenset(w.rename_vars(perm).syllables for w in sys_.inequalities)
        if pe == eqs and pi == ineqs:
            out.append(perm)
    return out


def solve(sys_: EquationSystem, target: GGroup, *,
          budget: int = DEFAULT_SOLVE_BUDGET,
          symmetry_pruning: bool = True) -> SolutionSet:
    """All satisfying tuples in H^nvars, lexicographic order."""
    if target.ambient is not sys_.binding.ambient:
        for w in sys_.equalities + sys_.inequalities:
            for s in w.syllables:
                if s[0] == "c":
                    raise ValidationError(
                        "system has constants; solve needs the binding ambient group")
    h = target.ambient
    n, k = h.order, sys_.nvars
    total = n ** k if k else 1
    if total > budget:
        raise BudgetError(f"{total} assignments exceed budget {budget}")
    perms = _invariance_perms(sys_) if symmetry_pruning else [tuple(range(k))]
    use_orbits = len(perms) > 1
    sols: list[tuple[int, ...]] = []
    if k == 0:
        ok = all(evaluate(w, ()) == 0 for w in sys_.equalities) and \
            all(evaluate(w, ()) != 0 for w in sys_.inequalities)
        return SolutionSet(sys_, target, ((),) if ok else ())
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        flat = np.arange(start, stop, dtype=np.int64)
        cols = []
        rest = flat
        for i in range(k - 1, -1, -1):
            cols.append((rest % n).astype(np.int32))
            rest = rest // n
        cols.reverse()
        keep = np.ones(flat.shape[0], dtype=bool)
        if use_orbits:
            # only canonical (lex-minimal in orbit) representatives are evaluated
            for perm in perms:
                if perm == tuple(range(k)):
                    continue
                permuted = np.zeros_like(flat)
                for i in range(k):
                    permuted = permuted * n + cols[perm[i]]
                keep &= flat <= permuted
        for w in sys_.equalities:
            if not keep.any():
                break
            keep &= _evaluate_block(w, h, cols) == 0
        for w in sys_.inequalities:
            if not keep.any():
                break
            keep &= _evaluate_block(w, h, cols) != 0
        for f in np.flatnonzero(keep):
            sols.append(tuple(int(c[f]) for c in cols))
    if use_orbits:
        expanded = set()
        for t in sols:
            for perm in perms:
                expanded.add(tuple(t[perm[i]] for i in range(k)))
        sols = sorted(expanded)
    return SolutionSet(sys_, target, tuple(sols))


def noetherian_reduce(sys_: EquationSystem, target: GGroup, *,
                      budget: int = DEFAULT_SOLVE_BUDGET) -> EquationSystem:
    """Minimum-cardinality equality subset with the target's solution set.

    Inequalities are kept fixed; ties break lexicographically on the
    equation indices.
    """
    reference = solve(sys_, target, budget=budget).tuples
    eqs = sys_.equalities
    for size in range(len(eqs) + 1):
        for combo in itertools.combinations(range(len(eqs)), size):
            trial = replace(sys_, equalities=tuple(eqs[i] for i in combo))
            if solve(trial, target, budget=budget).tuples == reference:
                return trial
    return sys_


# ---------------------------------------------------------------------------
# hom sets and the functor of points

def hom_g_set(l: GGroup, k: GGroup, g_map: Optional[dict[int, int]] = None,
              budget: int = gr.DEFAULT_HOM_BUDGET) -> list[GroupHom]:
    """Homs between the ambient groups matching the designated copies.

    With no explicit correspondence the designated subgroups must coincide
    elementwise and are fixed pointwise.
    """
    if g_map is None:
        if l.gsub.mask != k.gsub.mask or l.ambient.order < k.gsub.size:
            if not (l.ambient is k.ambient or l.gsub.mask == k.gsub.mask):
                raise ValidationError("no G-correspondence supplied and the "
                                      "designated subgroups differ")
        g_map = {int(x): int(x) for x in l.g_indices}
    else:
        if set(g_map.keys()) != {int(x) for x in l.g_indices}:
            raise ValidationError("G-correspondence must cover the designated subgroup")
    return gr.enumerate_homs(l.ambient, k.ambient, pins=g_map, budget=budget)


@dataclass
class BijectionReport:
    solution_count: int
    hom_count: Optional[int]
    matched: Optional[bool]
    all_solutions_consistent: bool


def solution_hom_bijection(pres: Presentation, k: GGroup, *,
                           presented: Optional[GGroup] = None,
                           var_elems: Optional[Sequence[int]] = None,
                           g_map: Optional[dict[int, int]] = None,
                           budget: int = DEFAULT_SOLVE_BUDGET) -> BijectionReport:
    """Check solutions of the relators against homs out of the presented group.

    Every solution is re-verified as a relator-killing assignment by the
    scalar evaluator.  When the (finite) presented group is supplied along
    with the ambient elements realizing the variables, the hom set is
    enumerated and matched tuple-for-tuple.
    """
    sys_ = system_from_presentation(pres)
    sols = solve(sys_, k, budget=budget)
    consistent = all(_check_tuple(sys_, k, t) for t in sols.tuples)
    hom_count = None
    matched = None
    if presented is not None:
        if var_elems is None or len(var_elems) != pres.nvars:
            raise ValidationError("presented group requires variable images")
        homs = hom_g_set(presented, k, g_map=g_map)
        hom_count = len(homs)
        tuples = sorted(tuple(int(f.map[x]) for x in var_elems) for f in homs)
        matched = tuples == sorted(sols.tuples) and len(set(tuples)) == len(tuples)
    return BijectionReport(sols.count, hom_count, matched, consistent)


# ---------------------------------------------------------------------------
# products, sums, base change

def product_presentation(p: Presentation, q: Presentation) -> Presentation:
    """Disjoint-variable concatenation; solution sets multiply over any target."""
    if p.coeff is not q.coeff:
        raise ValidationError("presentations must share the coefficient G-group")
    nv = p.nvars + q.nvars
    rel = tuple(w.shift_vars(0, nv) for w in p.relators) + \
        tuple(w.shift_vars(p.nvars, nv) for w in q.relators)
    return Presentation(p.coeff, nv, rel)


def rebase_presentation(p: Presentation, h: GGroup,
                        embed: Optional[dict[int, int]] = None) -> Presentation:
    """Re-read the relator constants inside a larger coefficient G-group."""
    emb = embed or {}
    out = []
    for w in p.relators:
        syl = []
        for s in w.syllables:
            if s[0] == "c":
                c = emb.get(s[1], s[1])
                if c not in h.gsub:
                    raise ValidationError(
                        f"constant {s[1]} has no image in the new coefficient group")
                syl.append(("c", c))
            else:
                syl.append(s)
        out.append(reduce_word(h.ambient, syl, p.nvars))
    return Presentation(h, p.nvars, tuple(out))


@dataclass
class SumReport:
    left_count: int
    right_count: int
    sum_count: int
    bijective: bool


def diagonal_product_ggroup(h: GGroup, k: GGroup,
                            g_corr: Optional[dict[int, int]] = None) -> GGroup:
    """Ambient product with the designated copy embedded diagonally."""
    from .ggroups import make_ggroup
    corr = g_corr or {int(x): int(x) for x in h.g_indices}
    amb = gr.direct_product(h.ambient, k.ambient)
    nb = k.ambient.order
    diag = [int(g) * nb + corr[int(g)] for g in h.g_indices]
    return make_ggroup(amb, diag, f"{h.label}(x){k.label}")


def sum_check(h: GGroup, k: GGroup, l: GGroup, *,
              g_corr_hk: Optional[dict[int, int]] = None,
              g_map_lh: Optional[dict[int, int]] = None,
              g_map_lk: Optional[dict[int, int]] = None,
              budget: int = gr.DEFAULT_HOM_BUDGET) -> SumReport:
    """Verify Hom_G(L, HxK with diagonal G) pairs off with the hom-set product."""
    m = diagonal_product_ggroup(h, k, g_corr_hk)
    lh = hom_g_set(l, h, g_map=g_map_lh, budget=budget)
    lk = hom_g_set(l, k, g_map=g_map_lk, budget=budget)
    corr_h = g_map_lh or {int(x): int(x) for x in l.g_indices}
    corr_k = g_map_lk or {int(x): int(x) for x in l.g_indices}
    g_map_lm = {s: corr_h[s] * k.ambient.order + corr_k[s] for s in corr_h}
    lm = hom_g_set(l, m, g_map=g_map_lm, budget=budget)
    nb = k.ambient.order
    projected = sorted((tuple(int(x) for x in f.map // nb),
                        tuple(int(x) for x in f.map % nb)) for f in lm)
    pairs = sorted((f1.as_tuple(), f2.as_tuple()) for f1 in lh for f2 in lk)
    return SumReport(len(lh), len(lk), len(lm), projected == pairs)

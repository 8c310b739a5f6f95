"""Words over a coefficient group and free variables, in reduced normal form.

A syllable is either a non-identity constant ('c', element index) or a
variable power ('v', variable index, non-zero exponent).  Normal form bans
adjacent constants and adjacent powers of the same variable; reduction is
evaluation invariant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ValidationError
from .groups import FiniteGroup

Syllable = tuple


@dataclass(frozen=True)
class GWord:
    """A reduced word; constants are element indices of ``group``."""

    group: FiniteGroup
    nvars: int
    syllables: tuple[Syllable, ...]

    def is_empty(self) -> bool:
        return not self.syllables

    def has_variable(self) -> bool:
        return any(s[0] == "v" for s in self.syllables)

    def variables(self) -> set[int]:
        return {s[1] for s in self.syllables if s[0] == "v"}

    def __mul__(self, other: "GWord") -> "GWord":
        if other.group is not self.group:
            raise ValidationError("words over different coefficient groups")
        return reduce_word(self.group, self.syllables + other.syllables,
                           max(self.nvars, other.nvars))

    def inverse(self) -> "GWord":
        inv = []
        for s in reversed(self.syllables):
            if s[0] == "c":
                inv.append(("c", int(self.group.inverse[s[1]])))
            else:
                inv.append(("v", s[1], -s[2]))
        return reduce_word(self.group, inv, self.nvars)

    def rename_vars(self, perm: Sequence[int]) -> "GWord":
        out = []
        for s in self.syllables:
            if s[0] == "v":
                out.append(("v", perm[s[1]], s[2]))
            else:
                out.append(s)
        return reduce_word(self.group, out, self.nvars)

    def shift_vars(self, offset: int, nvars: int) -> "GWord":
        out = [("v", s[1] + offset, s[2]) if s[0] == "v" else s
               for s in self.syllables]
        return reduce_word(self.group, out, nvars)


def reduce_word(group: FiniteGroup, raw: Iterable[Syllable], nvars: int) -> GWord:
    """Canonical normal form: merge adjacent constants and same-variable powers."""
    stack: list[list] = []
    for s in raw:
        kind = s[0]
        if kind == "c":
            c = int(s[1])
            if not 0 <= c < group.order:
                raise ValidationError(f"constant index {c} out of range")
            if c == 0:
                continue
            cur = ["c", c]
        elif kind == "v":
            i, e = int(s[1]), int(s[2])
            if i < 0 or (nvars and i >= nvars):
                raise ValidationError(f"variable index {i} out of range")
            if e == 0:
                continue
            cur = ["v", i, e]
        else:
            raise ValidationError(f"unknown syllable kind {kind!r}")
        stack.append(cur)
        while len(stack) >= 2:
            a, b = stack[-2], stack[-1]
            if a[0] == "c" and b[0] == "c":
                prod = int(group.table[a[1], b[1]])
                stack.pop()
                stack.pop()
                if prod != 0:
                    stack.append(["c", prod])
            elif a[0] == "v" and b[0] == "v" and a[1] == b[1]:
                e = a[2] + b[2]
                stack.pop()
                stack.pop()
                if e != 0:
                    stack.append(["v", a[1], e])
            else:
                break
    return GWord(group, nvars, tuple(tuple(x) for x in stack))


def constant_word(group: FiniteGroup, c: int, nvars: int = 0) -> GWord:
    return reduce_word(group, [("c", c)], nvars)


def variable_word(group: FiniteGroup, i: int, exp: int = 1, nvars: int = 0) -> GWord:
    return reduce_word(group, [("v", i, exp)], max(nvars, i + 1))


def commutator_word(a: GWord, b: GWord) -> GWord:
    return a * b * a.inverse() * b.inverse()


def word_power(w: GWord, k: int) -> GWord:
    if k < 0:
        return word_power(w.inverse(), -k)
    out = GWord(w.group, w.nvars, ())
    for _ in range(k):
        out = out * w
    return out


def evaluate(w: GWord, assignment: Sequence[int], target: FiniteGroup | None = None) -> int:
    """Value of the word in the target group under X_i -> assignment[i].

    The target defaults to the coefficient group; a different target must
    share the element index space of the constants.
    """
    h = target or w.group
    if len(assignment) < w.nvars:
        raise ValidationError("assignment shorter than the variable count")
    val = 0
    table, inv = h.table, h.inverse
    for s in w.syllables:
        if s[0] == "c":
            val = int(table[val, s[1]])
        else:
            x = int(assignment[s[1]])
            e = s[2]
            if e < 0:
                x, e = int(inv[x]), -e
            step = x
            for _ in range(e - 1):
                step = int(table[step, x])
            val = int(table[val, step])
    return val


def format_word(w: GWord, names: dict[int, str] | None = None) -> str:
    """Render in the DSL syntax; constants fall back to synthesized names."""
    if w.is_empty():
        return "1"
    parts = []
    for s in w.syllables:
        if s[0] == "c":
            name = (names or {}).get(s[1], f"g{s[1]}")
            parts.append(name)
        else:
            i, e = s[1], s[2]
            parts.append(f"X{i + 1}" if e == 1 else f"X{i + 1}^{e}")
    return " ".join(parts)

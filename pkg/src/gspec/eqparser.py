"""Recursive-descent parser for the equation DSL.

Header lines bind constant names to designated elements and declare the
variable count; statements are ``word = word`` or ``word != word``
separated by semicolons.  Words concatenate atoms (constants, X<k>
variables, parenthesized words, [a, b] commutators) with optional integer
postfix exponents; the literal 1 is the empty word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError, ValidationError
from .equations import EquationSystem
from .ggroups import GGroup
from .words import GWord, commutator_word, reduce_word, word_power

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<neq>!=)
  | (?P<op>[=;^*(),\[\]\-])
""", re.VERBOSE)

_VAR_RE = re.compile(r"^X(\d+)$")


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            if kind == "op":
                kind = chunk
            elif kind == "neq":
                kind = "!="
            toks.append(_Tok(kind, chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    toks.append(_Tok("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, text: str, binding: GGroup):
        self.toks = _tokenize(text)
        self.pos = 0
        self.binding = binding
        self.symbols: dict[str, int] = {}
        self.declared_vars: int | None = None
        self.max_var = 0

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def next(self) -> _Tok:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind: str) -> _Tok:
        t = self.next()
        if t.kind != kind:
            raise ParseError(f"expected {kind!r}, found {t.text!r}", t.line, t.col)
        return t

    def fail(self, msg: str, tok: _Tok | None = None):
        t = tok or self.peek()
        raise ParseError(msg, t.line, t.col)

    # -- headers --------------------------------------------------------

    def parse_headers(self) -> None:
        while True:
            t = self.peek()
            if t.kind == "name" and t.text == "let":
                self.next()
                name_tok = self.expect("name")
                name = name_tok.text
                if _VAR_RE.match(name):
                    self.fail(f"{name!r} is reserved for variables", name_tok)
                self.expect("=")
                val_tok = self.expect("int")
                elem = int(val_tok.text)
                if elem >= self.binding.ambient.order:
                    self.fail(f"element index {elem} out of range", val_tok)
                if elem not in self.binding.gsub:
                    self.fail(f"element {elem} is not in the designated subgroup", val_tok)
                self.symbols[name] = elem
                self.expect(";")
            elif t.kind == "name" and t.text == "vars":
                self.next()
                val_tok = self.expect("int")
                self.declared_vars = int(val_tok.text)
                self.expect(";")
            else:
                return

    # -- words -----------------------------------------------------------

    def var_index(self, tok: _Tok) -> int:
        m = _VAR_RE.match(tok.text)
        assert m
        i = int(m.group(1))
        if i < 1:
            self.fail("variable numbering starts at X1", tok)
        if self.declared_vars is not None and i > self.declared_vars:
            self.fail(f"variable X{i} exceeds declared vars {self.declared_vars}", tok)
        self.max_var = max(self.max_var, i)
        return i - 1

    def parse_atom(self) -> list:
        t = self.next()
        if t.kind == "int":
            if t.text == "1":
                return []
            self.fail(f"unexpected number {t.text!r} in a word", t)
        if t.kind == "name":
            if _VAR_RE.match(t.text):
                return [("v", self.var_index(t), 1)]
            if t.text in self.symbols:
                return [("c", self.symbols[t.text])]
            self.fail(f"unbound constant name {t.text!r}", t)
        if t.kind == "(":
            syl = self.parse_word()
            self.expect(")")
            return syl
        if t.kind == "[":
            a = self.parse_word()
            self.expect(",")
            b = self.parse_word()
            self.expect("]")
            g = self.binding.ambient
            wa = reduce_word(g, a, 0)
            wb = reduce_word(g, b, 0)
            return list(commutator_word(wa, wb).syllables)
        self.fail(f"unexpected token {t.text!r} in a word", t)

    def parse_factor(self) -> list:
        syl = self.parse_atom()
        if self.peek().kind == "^":
            self.next()
            sign = 1
            if self.peek().kind == "-":
                self.next()
                sign = -1
            e_tok = self.expect("int")
            e = sign * int(e_tok.text)
            w = reduce_word(self.binding.ambient, syl, 0)
            syl = list(word_power(w, e).syllables)
        return syl

    def parse_word(self) -> list:
        syl: list = []
        while True:
            t = self.peek()
            if t.kind in {"=", "!=", ";", ")", "]", ",", "eof"}:
                return syl
            if t.kind == "*":
                self.next()
                continue
            syl.extend(self.parse_factor())

    # -- statements --------------------------------------------------------

    def parse_system(self) -> EquationSystem:
        self.parse_headers()
        equalities: list[GWord] = []
        inequalities: list[GWord] = []
        g = self.binding.ambient
        while self.peek().kind != "eof":
            lhs = self.parse_word()
            op = self.next()
            if op.kind not in {"=", "!="}:
                self.fail("expected '=' or '!=' after a word", op)
            rhs = self.parse_word()
            self.expect(";")
            wl = reduce_word(g, lhs, 0)
            wr = reduce_word(g, rhs, 0)
            w = wl * wr.inverse()
            if op.kind == "=":
                equalities.append(w)
            else:
                inequalities.append(w)
        nvars = self.declared_vars if self.declared_vars is not None else self.max_var
        equalities = [reduce_word(g, w.syllables, nvars) for w in equalities]
        inequalities = [reduce_word(g, w.syllables, nvars) for w in inequalities]
        return EquationSystem(self.binding, nvars, tuple(equalities),
                              tuple(inequalities), tuple(sorted(self.symbols.items())))


def parse_system(text: str, binding: GGroup) -> EquationSystem:
    """Parse DSL text into a reduced equation system bound to a G-group."""
    return _Parser(text, binding).parse_system()

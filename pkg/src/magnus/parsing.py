"""Text grammar for words, twist products and multitwists.

Words::

    word   := term (['*'] term)*
    term   := atom ['^' INT]
    atom   := GEN | '1' | '[' word ',' word ']' | '(' word ')'
    GEN    := 'A' INT | 'B' INT            (index 1..g)

Twist products are juxtaposed factors ``T[word]`` or ``M[item, item, ...]``,
each optionally raised to ``^n``.  Inside ``M[...]`` a trailing top-level
``^n`` on an item is the multiplicity of that factor; wrap the word in
parentheses to raise it to a power instead.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .freegroup import FreeWord, commutator

_TOKEN = re.compile(r"(?P<gen>[AB]\d+)|(?P<int>-?\d+)|(?P<sym>[TM]\[|[\[\],()*^])")


class ParseError(ValueError):
    def __init__(self, message: str, src: str, pos: int):
        super().__init__(f"{message} at position {pos}: {src!r}")
        self.src = src
        self.pos = pos


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(src: str) -> list[_Tok]:
    toks = []
    pos = 0
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos >= len(src):
            break
        m = _TOKEN.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos]!r}", src, pos)
        kind = m.lastgroup if m.lastgroup != "sym" else m.group()
        toks.append(_Tok(kind, m.group(), pos))
        pos = m.end()
    toks.append(_Tok("end", "", len(src)))
    return toks


class _Parser:
    def __init__(self, src: str, genus: int):
        if genus < 1:
            raise ValueError("genus must be >= 1")
        self.src = src
        self.genus = genus
        self.toks = _tokenize(src)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, message: str, tok: _Tok | None = None):
        tok = tok or self.tok
        return ParseError(message, self.src, tok.pos)

    def take(self, kind: str) -> _Tok:
        tok = self.tok
        if tok.kind != kind:
            want = {"end": "end of input", "int": "an integer"}.get(kind, repr(kind))
            got = "end of input" if tok.kind == "end" else repr(tok.text)
            raise self.error(f"expected {want}, got {got}")
        self.i += 1
        return tok

    def _starts_atom(self) -> bool:
        t = self.tok
        return t.kind in ("gen", "[", "(") or (t.kind == "int" and t.text == "1")

    def terms(self) -> list[tuple[FreeWord, int | None]]:
        """Terms of a product as (atom, explicit power or None)."""
        out = [self.term()]
        while True:
            if self.tok.kind == "*":
                self.i += 1
                out.append(self.term())
            elif self._starts_atom():
                out.append(self.term())
            else:
                return out

    def word(self) -> FreeWord:
        w = FreeWord.identity(self.genus)
        for base, n in self.terms():
            w = w * base ** (1 if n is None else n)
        return w

    def term(self) -> tuple[FreeWord, int | None]:
        base = self.atom()
        if self.tok.kind == "^":
            self.i += 1
            return base, int(self.take("int").text)
        return base, None

    def atom(self) -> FreeWord:
        tok = self.tok
        g = self.genus
        if tok.kind == "gen":
            self.i += 1
            idx = int(tok.text[1:])
            if not 1 <= idx <= g:
                raise self.error(f"generator {tok.text} out of range for genus {g}", tok)
            return FreeWord.A(g, idx) if tok.text[0] == "A" else FreeWord.B(g, idx)
        if tok.kind == "int" and tok.text == "1":
            self.i += 1
            return FreeWord.identity(g)
        if tok.kind == "[":
            self.i += 1
            u = self.word()
            self.take(",")
            v = self.word()
            self.take("]")
            return commutator(u, v)
        if tok.kind == "(":
            self.i += 1
            w = self.word()
            self.take(")")
            return w
        got = "end of input" if tok.kind == "end" else repr(tok.text)
        raise self.error(f"expected a generator, '[', or '(', got {got}")

    def power(self) -> int:
        if self.tok.kind == "^":
            self.i += 1
            return int(self.take("int").text)
        return 1

    def multitwist_items(self) -> list[tuple[FreeWord, int]]:
        items = []
        while True:
            *head, (last, n) = self.terms()
            w = FreeWord.identity(self.genus)
            for base, k in head:
                w = w * base ** (1 if k is None else k)
            items.append((w * last, 1 if n is None else n))
            if self.tok.kind == ",":
                self.i += 1
                continue
            return items

    def twist_factors(self) -> list[tuple[str, list[tuple[FreeWord, int]]]]:
        factors = []
        while self.tok.kind != "end":
            tok = self.tok
            if tok.kind == "T[":
                self.i += 1
                w = self.word()
                self.take("]")
                factors.append(("T", [(w, self.power())]))
            elif tok.kind == "M[":
                self.i += 1
                items = self.multitwist_items()
                self.take("]")
                n = self.power()
                factors.append(("M", [(w, m * n) for w, m in items]))
            elif tok.kind == "*" and factors:
                self.i += 1
            else:
                got = repr(tok.text)
                raise self.error(f"expected 'T[' or 'M[', got {got}")
        if not factors:
            raise self.error("empty twist expression")
        return factors


def parse_word_expr(src: str, genus: int) -> FreeWord:
    p = _Parser(src, genus)
    w = p.word()
    p.take("end")
    return w


def parse_twist_expr(src: str, genus: int) -> list[tuple[str, list[tuple[FreeWord, int]]]]:
    """Factors of a twist product as (kind, [(word, exponent), ...]) in order."""
    p = _Parser(src, genus)
    return p.twist_factors()


def parse_multitwist_expr(src: str, genus: int) -> list[tuple[FreeWord, int]]:
    """A single ``M[...]`` or ``T[w]^n`` as a list of (word, multiplicity)."""
    factors = parse_twist_expr(src, genus)
    if len(factors) != 1:
        raise ParseError("expected exactly one multitwist", src, 0)
    return factors[0][1]

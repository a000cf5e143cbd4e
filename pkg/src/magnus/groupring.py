"""Exact arithmetic in the group ring Z[H] of H = Z^{2g}.

Elements are Laurent polynomials in a_1..a_g, b_1..b_g with integer
coefficients.  Monomials are stored under a packed integer key: the exponent
vector ``e`` is mapped to ``sum(e[i] * 2**(KEY_BITS*i))``.  The map is additive,
so multiplying monomials is adding keys, and negating a key inverts the
monomial.  This is exact as long as every exponent stays below
``2**(KEY_BITS-1)`` in absolute value.
"""

from __future__ import annotations

from itertools import product
from math import comb
from typing import Iterable, Iterator, Mapping, Sequence

KEY_BITS = 24
_BASE = 1 << KEY_BITS
_HALF = _BASE >> 1
MAX_EXPONENT = _HALF - 1


class GenusMismatch(ValueError):
    """Operands live in group rings of different genus."""


def pack(exps: Sequence[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        if not -MAX_EXPONENT <= e <= MAX_EXPONENT:
            raise ValueError(f"exponent {e} out of range")
        key += e << (KEY_BITS * i)
    return key


def unpack(key: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        digit = key & (_BASE - 1)
        if digit >= _HALF:
            digit -= _BASE
        out.append(digit)
        key = (key - digit) >> KEY_BITS
    if key != 0:
        raise ValueError("key does not fit the requested number of variables")
    return tuple(out)


def variable_names(genus: int) -> list[str]:
    return [f"a{i}" for i in range(1, genus + 1)] + [f"b{i}" for i in range(1, genus + 1)]


class GroupRingElem:
    """An element of Z[H]; immutable, hashable, canonical (no zero coefficients)."""

    __slots__ = ("genus", "_terms", "_hash")

    def __init__(self, genus: int, terms: Mapping[int, int] | None = None):
        if genus < 1:
            raise ValueError("genus must be >= 1")
        self.genus = genus
        self._terms: dict[int, int] = {k: c for k, c in (terms or {}).items() if c}
        self._hash: int | None = None

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, genus: int) -> GroupRingElem:
        return cls(genus)

    @classmethod
    def one(cls, genus: int) -> GroupRingElem:
        return cls(genus, {0: 1})

    @classmethod
    def scalar(cls, genus: int, n: int) -> GroupRingElem:
        return cls(genus, {0: n})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: int = 1) -> GroupRingElem:
        exps = tuple(exps)
        if len(exps) % 2 or not exps:
            raise ValueError("exponent vector must have even positive length 2g")
        return cls(len(exps) // 2, {pack(exps): coeff})

    @classmethod
    def gen(cls, genus: int, index: int, power: int = 1) -> GroupRingElem:
        """The group element z_index^power, with index 0..2g-1 (a's then b's)."""
        if not 0 <= index < 2 * genus:
            raise ValueError(f"generator index {index} out of range for genus {genus}")
        return cls(genus, {power << (KEY_BITS * index): 1})

    @classmethod
    def from_terms(cls, genus: int, terms: Iterable[tuple[Sequence[int], int]]) -> GroupRingElem:
        acc: dict[int, int] = {}
        for exps, coeff in terms:
            if len(exps) != 2 * genus:
                raise ValueError(f"exponent vector {tuple(exps)} has wrong length for genus {genus}")
            k = pack(exps)
            acc[k] = acc.get(k, 0) + int(coeff)
        return cls(genus, acc)

    # -- inspection ---------------------------------------------------------

    def terms(self) -> Iterator[tuple[tuple[int, ...], int]]:
        """(exponent vector, coefficient) pairs in display order (see ``term_order_key``)."""
        n = 2 * self.genus
        pairs = ((unpack(k, n), c) for k, c in self._terms.items())
        yield from sorted(pairs, key=lambda t: term_order_key(t[0]))

    def raw_terms(self) -> dict[int, int]:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1 and next(iter(self._terms.values())) == 1

    def coefficient(self, exps: Sequence[int]) -> int:
        return self._terms.get(pack(exps), 0)

    def max_abs_exponent(self) -> int:
        n = 2 * self.genus
        return max((max(map(abs, unpack(k, n)), default=0) for k in self._terms), default=0)

    # -- ring structure -----------------------------------------------------

    def _check(self, other: GroupRingElem) -> None:
        if self.genus != other.genus:
            raise GenusMismatch(f"genus {self.genus} vs {other.genus}")

    def _coerce(self, other) -> GroupRingElem:
        if isinstance(other, GroupRingElem):
            self._check(other)
            return other
        if isinstance(other, int):
            return GroupRingElem.scalar(self.genus, other)
        return NotImplemented

    def __add__(self, other) -> GroupRingElem:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0) + c
        return GroupRingElem(self.genus, acc)

    __radd__ = __add__

    def __neg__(self) -> GroupRingElem:
        return GroupRingElem(self.genus, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> GroupRingElem:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> GroupRingElem:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other) -> GroupRingElem:
        if isinstance(other, int):
            return GroupRingElem(self.genus, {k: c * other for k, c in self._terms.items()})
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        self._check(other)
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        acc: dict[int, int] = {}
        get = acc.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                acc[k] = get(k, 0) + ca * cb
        return GroupRingElem(self.genus, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> GroupRingElem:
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials are invertible in Z[H]")
            return self.involute() ** (-n)
        out = GroupRingElem.one(self.genus)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        return self.genus == other.genus and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.genus, frozenset(self._terms.items())))
        return self._hash

    # -- named operations ---------------------------------------------------

    def involute(self) -> GroupRingElem:
        """The involution h -> h^{-1}, extended Z-linearly."""
        return GroupRingElem(self.genus, {-k: c for k, c in self._terms.items()})

    def augmentation(self) -> int:
        return sum(self._terms.values())

    def const_term(self) -> int:
        return self._terms.get(0, 0)

    def pseudosquare(self) -> GroupRingElem:
        return self * self.involute()

    def shift(self, key: int) -> GroupRingElem:
        """Multiply by the monomial with packed key ``key``."""
        return GroupRingElem(self.genus, {k + key: c for k, c in self._terms.items()})

    def in_aug_ideal_power(self, n: int) -> bool:
        return aug_ideal_member(self, n)

    # -- text ---------------------------------------------------------------

    def __str__(self) -> str:
        return format_elem(self)

    def __repr__(self) -> str:
        return f"GroupRingElem({self.genus}, {format_elem(self)!r})"


def format_monomial(exps: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def term_order_key(exps: tuple[int, ...]) -> tuple[int, ...]:
    """Lexicographic key with a-exponents descending and b-exponents ascending.

    This puts a_1 - 1 and 1 - b_1 in the order the Fox derivatives of
    [A_1, B_1] produce them.
    """
    g = len(exps) // 2
    return tuple(-e for e in exps[:g]) + tuple(exps[g:])


def format_elem(x: GroupRingElem) -> str:
    if x.is_zero():
        return "0"
    names = variable_names(x.genus)
    out = []
    for i, (exps, c) in enumerate(x.terms()):
        mono = format_monomial(exps, names)
        mag = abs(c)
        if mono == "1":
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out)


def add(x: GroupRingElem, y: GroupRingElem) -> GroupRingElem:
    return x + y


def mul(x: GroupRingElem, y: GroupRingElem) -> GroupRingElem:
    return x * y


def involute(x: GroupRingElem) -> GroupRingElem:
    return x.involute()


def augmentation(x: GroupRingElem) -> int:
    return x.augmentation()


def const_term(x: GroupRingElem) -> int:
    return x.const_term()


def pseudosquare(x: GroupRingElem) -> GroupRingElem:
    return x.pseudosquare()


def _binomial_series(e: int, n: int) -> list[int]:
    # coefficients of (1 + t)^e up to t^(n-1); generalized binomial for e < 0
    out = []
    for k in range(n):
        if e >= 0:
            out.append(comb(e, k))
        else:
            out.append((-1) ** k * comb(-e + k - 1, k))
    return out


def aug_ideal_member(x: GroupRingElem, n: int) -> bool:
    """True iff x lies in the n-th power of the augmentation ideal.

    Substitutes z_i = 1 + t_i and checks that the expansion has no terms of
    total degree < n.  Negative powers expand as geometric series; truncation
    at degree n is exact for this test.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return True
    if n == 1:
        return x.augmentation() == 0
    nvars = 2 * x.genus
    acc: dict[tuple[int, ...], int] = {}
    for exps, c in x.terms():
        # product of univariate truncated series, kept to total degree < n
        partial: dict[tuple[int, ...], int] = {(): c}
        for e in exps:
            series = _binomial_series(e, n)
            nxt: dict[tuple[int, ...], int] = {}
            for degs, v in partial.items():
                used = sum(degs)
                for k in range(n - used):
                    if series[k]:
                        key = degs + (k,)
                        nxt[key] = nxt.get(key, 0) + v * series[k]
            partial = nxt
        for degs, v in partial.items():
            acc[degs] = acc.get(degs, 0) + v
    assert all(len(d) == nvars for d in acc)
    return all(v == 0 for v in acc.values())


def parse_elem(src: str, genus: int) -> GroupRingElem:
    """Parse the text form produced by ``format_elem``."""
    s = src.replace(" ", "")
    if not s:
        raise ValueError("empty element")
    names = variable_names(genus)
    index = {name: i for i, name in enumerate(names)}
    total = GroupRingElem.zero(genus)
    pos = 0
    terms: list[str] = []
    start = 0
    while pos < len(s):
        ch = s[pos]
        if ch in "+-" and pos > start and s[pos - 1] != "^":
            terms.append(s[start:pos])
            start = pos
        pos += 1
    terms.append(s[start:])
    for term in terms:
        sign = 1
        if term.startswith(("+", "-")):
            sign = -1 if term[0] == "-" else 1
            term = term[1:]
        if not term:
            raise ValueError(f"dangling sign in {src!r}")
        coeff = sign
        exps = [0] * (2 * genus)
        for factor in term.split("*"):
            if factor.isdigit():
                coeff *= int(factor)
                continue
            name, _, power = factor.partition("^")
            if name not in index:
                raise ValueError(f"unknown variable {name!r} in {src!r}")
            exps[index[name]] += int(power) if power else 1
        total = total + GroupRingElem.monomial(exps, coeff)
    return total


def to_json(x: GroupRingElem) -> list[dict]:
    return [{"exps": list(exps), "coeff": c} for exps, c in x.terms()]


def from_json(data: list[dict], genus: int) -> GroupRingElem:
    return GroupRingElem.from_terms(genus, ((t["exps"], t["coeff"]) for t in data))


def all_monomials(genus: int, radius: int) -> Iterator[tuple[int, ...]]:
    yield from product(range(-radius, radius + 1), repeat=2 * genus)

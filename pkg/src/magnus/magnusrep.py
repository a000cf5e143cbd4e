"""Magnus representation matrices of separating twists and multitwists.

Matrices follow the Fox-calculus layout: row i holds the coordinates of the
image of the i-th basis arc.  A chain is a coordinate row vector and
``apply(M, c)`` is ``c * M``.  ``compose(M, N)`` is the matrix of M after N,
which in this layout is the product ``N * M``; with it r(T1 T2) equals
compose(r(T1), r(T2)).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .chains import Chain, is_curve, lift
from .freegroup import FreeWord
from .groupring import GenusMismatch, GroupRingElem, from_json, to_json
from .pairing import PairingTable, pair_curve


class NotNullHomologous(ValueError):
    """The word is not null-homologous, so it does not lift to a curve."""


class UncertifiedMultiTwist(ValueError):
    """Some pair of factors has a nonzero higher intersection pairing."""


@dataclass(frozen=True)
class RepMatrix:
    genus: int
    rows: tuple[tuple[GroupRingElem, ...], ...]

    def __post_init__(self):
        n = 2 * self.genus
        if len(self.rows) != n or any(len(r) != n for r in self.rows):
            raise ValueError(f"matrix must be {n}x{n}")
        if any(x.genus != self.genus for r in self.rows for x in r):
            raise GenusMismatch("entry genus differs from matrix genus")

    @classmethod
    def identity(cls, genus: int) -> RepMatrix:
        n = 2 * genus
        one, zero = GroupRingElem.one(genus), GroupRingElem.zero(genus)
        return cls(genus, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def from_rows(cls, rows: Sequence[Chain]) -> RepMatrix:
        return cls(rows[0].genus, tuple(r.coords for r in rows))

    @property
    def size(self) -> int:
        return 2 * self.genus

    def row(self, i: int) -> Chain:
        return Chain(self.genus, self.rows[i])

    def __getitem__(self, ij: tuple[int, int]) -> GroupRingElem:
        i, j = ij
        return self.rows[i][j]

    def __add__(self, other: RepMatrix) -> RepMatrix:
        _check(self, other)
        return RepMatrix(
            self.genus,
            tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)),
        )

    def __sub__(self, other: RepMatrix) -> RepMatrix:
        _check(self, other)
        return RepMatrix(
            self.genus,
            tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)),
        )

    def __mul__(self, other: RepMatrix) -> RepMatrix:
        """Composition: (M * N) is M after N."""
        return compose(self, other)

    def __str__(self) -> str:
        return format_matrix(self)


def _check(m: RepMatrix, n: RepMatrix) -> None:
    if m.genus != n.genus:
        raise GenusMismatch(f"genus {m.genus} vs {n.genus}")


def matmul(m: RepMatrix, n: RepMatrix) -> RepMatrix:
    """Plain row-by-column product m . n."""
    _check(m, n)
    g, size = m.genus, m.size
    zero = GroupRingElem.zero(g)
    cols = list(zip(*n.rows))
    out = []
    for r in m.rows:
        new = []
        for col in cols:
            acc = zero
            for x, y in zip(r, col):
                if x and y:
                    acc = acc + x * y
            new.append(acc)
        out.append(tuple(new))
    assert len(out) == size
    return RepMatrix(g, tuple(out))


def compose(m: RepMatrix, n: RepMatrix) -> RepMatrix:
    """Matrix of the map c -> apply(m, apply(n, c))."""
    return matmul(n, m)


def apply(m: RepMatrix, c: Chain) -> Chain:
    if m.genus != c.genus:
        raise GenusMismatch(f"genus {m.genus} vs {c.genus}")
    acc = Chain.zero(c.genus)
    for ci, row in zip(c.coords, m.rows):
        if ci:
            acc = acc + Chain(c.genus, row).scale(ci)
    return acc


def trace(m: RepMatrix) -> GroupRingElem:
    total = GroupRingElem.zero(m.genus)
    for i in range(m.size):
        total = total + m.rows[i][i]
    return total


def t_value(m: RepMatrix) -> GroupRingElem:
    """trace(m) - 2g."""
    return trace(m) - m.size


def is_identity(m: RepMatrix) -> bool:
    return m == RepMatrix.identity(m.genus)


def rank_one(weights: Sequence[GroupRingElem], v: Chain) -> RepMatrix:
    """Matrix of d -> lambda(d) v where lambda(s_i) = weights[i]."""
    return RepMatrix(v.genus, tuple(tuple(w * x for x in v.coords) for w in weights))


def _curve_lift(w: FreeWord) -> Chain:
    if not w.is_nullhomologous():
        raise NotNullHomologous(f"{w} is not null-homologous; its lift is an arc")
    return lift(w)


def twist_sum_matrix(
    factors: Iterable[tuple[Chain, int]], genus: int, table: PairingTable | None = None
) -> RepMatrix:
    """Matrix of d -> d + sum_k n_k <d, c_k> c_k for curves c_k."""
    rows = [list(r) for r in RepMatrix.identity(genus).rows]
    for c, n in factors:
        if not n:
            continue
        if not is_curve(c):
            raise NotNullHomologous("twist formula needs a curve")
        for i in range(2 * genus):
            w = pair_curve(Chain.basis(genus, i), c, table)
            if not w:
                continue
            w = w * n
            rows[i] = [x + w * y for x, y in zip(rows[i], c.coords)]
    return RepMatrix(genus, tuple(tuple(r) for r in rows))


def twist_matrix(w: FreeWord, n: int = 1, table: PairingTable | None = None) -> RepMatrix:
    """r(T_w^n): d -> d + n <d, c> c with c the lift of w."""
    return twist_sum_matrix([(_curve_lift(w), n)], w.genus, table)


@dataclass(frozen=True)
class MultiTwist:
    """A product T_{w_1}^{n_1} ... T_{w_k}^{n_k} with all pairings <c_i, c_j> = 0.

    Certification runs at construction: every word must be null-homologous,
    every multiplicity positive, and every pairing among the lifts (including
    self-pairings) must vanish.
    """

    genus: int
    factors: tuple[tuple[FreeWord, int], ...]
    table: PairingTable | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not self.factors:
            raise ValueError("a multitwist needs at least one factor")
        lifts = []
        for w, n in self.factors:
            if w.genus != self.genus:
                raise GenusMismatch("factor genus differs from multitwist genus")
            if n < 1:
                raise ValueError(f"multiplicity {n} is not positive")
            lifts.append(_curve_lift(w))
        for i, ci in enumerate(lifts):
            for j, cj in enumerate(lifts):
                if pair_curve(ci, cj, self.table):
                    raise UncertifiedMultiTwist(
                        f"<c_{i + 1}, c_{j + 1}> != 0 for factors {self.factors[i][0]} "
                        f"and {self.factors[j][0]}"
                    )
        object.__setattr__(self, "_lifts", tuple(lifts))

    @classmethod
    def single(cls, w: FreeWord, n: int = 1, table: PairingTable | None = None) -> MultiTwist:
        return cls(w.genus, ((w, n),), table)

    @property
    def lifts(self) -> tuple[Chain, ...]:
        return self._lifts  # type: ignore[attr-defined]

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(n for _, n in self.factors)

    def __str__(self) -> str:
        return "M[" + ", ".join(f"({w})^{n}" for w, n in self.factors) + "]"


def multitwist_matrix(t: MultiTwist) -> RepMatrix:
    """r(T_C): d -> d + sum_i n_i <d, c_i> c_i."""
    return twist_sum_matrix(zip(t.lifts, t.multiplicities), t.genus, t.table)


def product_matrix(mats: Iterable[RepMatrix], genus: int) -> RepMatrix:
    """Composite of the maps in order: the first matrix is applied last."""
    out = RepMatrix.identity(genus)
    for m in mats:
        out = compose(out, m)
    return out


def twist_product_matrix(
    twists: Sequence[tuple[FreeWord, int]], table: PairingTable | None = None
) -> RepMatrix:
    """r(T_{w_1}^{n_1} ... T_{w_k}^{n_k})."""
    if not twists:
        raise ValueError("empty product")
    g = twists[0][0].genus
    return product_matrix((twist_matrix(w, n, table) for w, n in twists), g)


def matrix_to_json(m: RepMatrix) -> list[list]:
    return [[to_json(x) for x in row] for row in m.rows]


def matrix_from_json(data: list[list], genus: int) -> RepMatrix:
    return RepMatrix(genus, tuple(tuple(from_json(x, genus) for x in row) for row in data))


def format_matrix(m: RepMatrix) -> str:
    cells = [[str(x) for x in row] for row in m.rows]
    width = max(len(c) for row in cells for c in row)
    return "\n".join("[ " + " | ".join(c.rjust(width) for c in row) + " ]" for row in cells)

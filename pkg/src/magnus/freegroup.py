"""Free group words on A_1..A_g, B_1..B_g and abelianized Fox calculus.

A letter is a nonzero int: ``+i`` is the generator z_i and ``-i`` its inverse,
with z_1..z_g = A_1..A_g and z_{g+1}..z_{2g} = B_1..B_g.  Only the image of
Z[Gamma] in Z[H] is ever computed; the noncommutative group ring is never
built.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence

from .groupring import KEY_BITS, GenusMismatch, GroupRingElem

if TYPE_CHECKING:
    from .magnusrep import RepMatrix


class NotTorelli(ValueError):
    """The endomorphism does not act trivially on H."""


def letter_name(letter: int, genus: int) -> str:
    i = abs(letter)
    name = f"A{i}" if i <= genus else f"B{i - genus}"
    return name if letter > 0 else name + "^-1"


def _letter_key(letter: int) -> int:
    i = abs(letter) - 1
    return (1 if letter > 0 else -1) << (KEY_BITS * i)


def reduce_letters(raw: Iterable[int]) -> tuple[int, ...]:
    stack: list[int] = []
    for x in raw:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


@dataclass(frozen=True)
class FreeWord:
    genus: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError("genus must be >= 1")
        for x in self.letters:
            if x == 0 or abs(x) > 2 * self.genus:
                raise ValueError(f"letter {x} out of range for genus {self.genus}")
        for x, y in zip(self.letters, self.letters[1:]):
            if x == -y:
                raise ValueError("word is not freely reduced; use reduce()")

    @classmethod
    def reduce(cls, genus: int, raw: Iterable[int]) -> FreeWord:
        return cls(genus, reduce_letters(raw))

    @classmethod
    def identity(cls, genus: int) -> FreeWord:
        return cls(genus, ())

    @classmethod
    def A(cls, genus: int, i: int) -> FreeWord:
        return cls(genus, (i,))

    @classmethod
    def B(cls, genus: int, i: int) -> FreeWord:
        return cls(genus, (genus + i,))

    def _check(self, other: FreeWord) -> None:
        if self.genus != other.genus:
            raise GenusMismatch(f"genus {self.genus} vs {other.genus}")

    def __mul__(self, other: FreeWord) -> FreeWord:
        self._check(other)
        return FreeWord.reduce(self.genus, self.letters + other.letters)

    def inverse(self) -> FreeWord:
        return FreeWord(self.genus, tuple(-x for x in reversed(self.letters)))

    def __invert__(self) -> FreeWord:
        return self.inverse()

    def __pow__(self, n: int) -> FreeWord:
        base = self if n >= 0 else self.inverse()
        out = FreeWord.identity(self.genus)
        for _ in range(abs(n)):
            out = out * base
        return out

    def __len__(self) -> int:
        return len(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def abelian_key(self) -> int:
        return sum(_letter_key(x) for x in self.letters)

    def abelianize(self) -> GroupRingElem:
        return GroupRingElem(self.genus, {self.abelian_key(): 1})

    def is_nullhomologous(self) -> bool:
        return self.abelian_key() == 0

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(letter_name(x, self.genus) for x in self.letters)


def reduce(genus: int, raw: Iterable[int]) -> FreeWord:
    return FreeWord.reduce(genus, raw)


def concat(u: FreeWord, v: FreeWord) -> FreeWord:
    return u * v


def invert(w: FreeWord) -> FreeWord:
    return w.inverse()


def commutator(u: FreeWord, v: FreeWord) -> FreeWord:
    """u v u^-1 v^-1."""
    return u * v * u.inverse() * v.inverse()


def abelianize(w: FreeWord) -> GroupRingElem:
    return w.abelianize()


def is_nullhomologous(w: FreeWord) -> bool:
    return w.is_nullhomologous()


def boundary_word(genus: int, k: int | None = None) -> FreeWord:
    """delta_k = [A_1,B_1]...[A_k,B_k]; k defaults to the full boundary."""
    k = genus if k is None else k
    if not 1 <= k <= genus:
        raise ValueError(f"k={k} out of range 1..{genus}")
    w = FreeWord.identity(genus)
    for i in range(1, k + 1):
        w = w * commutator(FreeWord.A(genus, i), FreeWord.B(genus, i))
    return w


def fox_derivatives_ab(w: FreeWord) -> list[GroupRingElem]:
    """All abelianized Fox derivatives of w, indexed by generator 0..2g-1."""
    n = 2 * w.genus
    acc: list[dict[int, int]] = [{} for _ in range(n)]
    prefix = 0
    for x in w.letters:
        j = abs(x) - 1
        d = acc[j]
        if x > 0:
            d[prefix] = d.get(prefix, 0) + 1
            prefix += _letter_key(x)
        else:
            prefix += _letter_key(x)
            d[prefix] = d.get(prefix, 0) - 1
    return [GroupRingElem(w.genus, d) for d in acc]


def fox_derivative_ab(w: FreeWord, j: int) -> GroupRingElem:
    """Image in Z[H] of the Fox derivative d w / d z_j, for j in 1..2g."""
    if not 1 <= j <= 2 * w.genus:
        raise ValueError(f"generator index {j} out of range 1..{2 * w.genus}")
    return fox_derivatives_ab(w)[j - 1]


@dataclass(frozen=True)
class FreeEndo:
    """Endomorphism of the free group given by the images of z_1..z_{2g}."""

    genus: int
    images: tuple[FreeWord, ...]

    def __post_init__(self):
        if len(self.images) != 2 * self.genus:
            raise ValueError(f"need {2 * self.genus} images, got {len(self.images)}")
        for w in self.images:
            if w.genus != self.genus:
                raise GenusMismatch("image has the wrong genus")

    @classmethod
    def identity(cls, genus: int) -> FreeEndo:
        return cls(genus, tuple(FreeWord(genus, (i,)) for i in range(1, 2 * genus + 1)))

    def __call__(self, w: FreeWord) -> FreeWord:
        return apply_endo(self, w)

    def then(self, other: FreeEndo) -> FreeEndo:
        """Apply ``self`` first, then ``other``: z -> other(self(z))."""
        if other.genus != self.genus:
            raise GenusMismatch("genus mismatch")
        return FreeEndo(self.genus, tuple(apply_endo(other, w) for w in self.images))

    def is_torelli(self) -> bool:
        return all(
            w.abelian_key() == _letter_key(i + 1) for i, w in enumerate(self.images)
        )


def compose_endos(f: FreeEndo, g: FreeEndo) -> FreeEndo:
    """f . g, i.e. w -> f(g(w))."""
    return g.then(f)


def apply_endo(f: FreeEndo, w: FreeWord) -> FreeWord:
    if f.genus != w.genus:
        raise GenusMismatch("genus mismatch")
    out: list[int] = []
    for x in w.letters:
        img = f.images[abs(x) - 1]
        seq = img.letters if x > 0 else tuple(-y for y in reversed(img.letters))
        out.extend(seq)
    return FreeWord.reduce(f.genus, out)


def conjugation_endo(genus: int, conj: FreeWord, generators: Sequence[int]) -> FreeEndo:
    """z_i -> conj z_i conj^-1 for i in ``generators`` (1-based), identity elsewhere."""
    inv = conj.inverse()
    images = []
    for i in range(1, 2 * genus + 1):
        z = FreeWord(genus, (i,))
        images.append(conj * z * inv if i in generators else z)
    return FreeEndo(genus, tuple(images))


def twist_endo(k: int, n: int, genus: int) -> FreeEndo:
    """Action of T_{delta_k}^n: conjugation by delta_k^n on A_i, B_i for i <= k."""
    if not 1 <= k <= genus:
        raise ValueError(f"k={k} out of range 1..{genus}")
    gens = list(range(1, k + 1)) + list(range(genus + 1, genus + k + 1))
    return conjugation_endo(genus, boundary_word(genus, k) ** n, gens)


def endo_magnus_matrix(f: FreeEndo) -> RepMatrix:
    """Matrix with entry (i, j) the abelianized Fox derivative of f(z_i) by z_j.

    Row i holds the coordinates of the image of the i-th basis arc, so the
    matrix acts on coordinate row vectors from the right.
    """
    from .magnusrep import RepMatrix

    if not f.is_torelli():
        raise NotTorelli("endomorphism acts nontrivially on H")
    return RepMatrix(f.genus, tuple(tuple(fox_derivatives_ab(w)) for w in f.images))

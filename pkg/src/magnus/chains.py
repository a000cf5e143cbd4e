"""The relative homology module H_1(cover, fibre over *) = Z[H]^{2g}.

Coordinates are taken in the basis of lifted arcs alpha_1..alpha_g,
beta_1..beta_g, all starting at the preferred lift of the basepoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .freegroup import FreeWord, boundary_word, fox_derivatives_ab
from .groupring import GenusMismatch, GroupRingElem, from_json, pack, to_json


@dataclass(frozen=True)
class Chain:
    genus: int
    coords: tuple[GroupRingElem, ...]

    def __post_init__(self):
        if len(self.coords) != 2 * self.genus:
            raise ValueError(f"need {2 * self.genus} coordinates, got {len(self.coords)}")
        if any(c.genus != self.genus for c in self.coords):
            raise GenusMismatch("coordinate genus differs from chain genus")

    @classmethod
    def zero(cls, genus: int) -> Chain:
        z = GroupRingElem.zero(genus)
        return cls(genus, (z,) * (2 * genus))

    @classmethod
    def basis(cls, genus: int, i: int, coeff: GroupRingElem | None = None) -> Chain:
        """The i-th basis arc (0-based: alphas first, then betas), optionally scaled."""
        coeff = GroupRingElem.one(genus) if coeff is None else coeff
        z = GroupRingElem.zero(genus)
        return cls(genus, tuple(coeff if j == i else z for j in range(2 * genus)))

    @classmethod
    def from_coords(cls, coords: Sequence[GroupRingElem]) -> Chain:
        return cls(coords[0].genus, tuple(coords))

    def _check(self, other: Chain) -> None:
        if self.genus != other.genus:
            raise GenusMismatch(f"genus {self.genus} vs {other.genus}")

    def __add__(self, other: Chain) -> Chain:
        self._check(other)
        return Chain(self.genus, tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: Chain) -> Chain:
        self._check(other)
        return Chain(self.genus, tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> Chain:
        return Chain(self.genus, tuple(-x for x in self.coords))

    def scale(self, r: GroupRingElem | int) -> Chain:
        return Chain(self.genus, tuple(r * x for x in self.coords))

    def __rmul__(self, r: GroupRingElem | int) -> Chain:
        return self.scale(r)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def __str__(self) -> str:
        return format_chain(self)


def basis_names(genus: int) -> list[str]:
    return [f"alpha{i}" for i in range(1, genus + 1)] + [f"beta{i}" for i in range(1, genus + 1)]


def generator_elems(genus: int) -> list[GroupRingElem]:
    return [GroupRingElem.gen(genus, i) for i in range(2 * genus)]


def boundary(c: Chain) -> GroupRingElem:
    """d alpha_i = a_i - 1, d beta_i = b_i - 1, extended Z[H]-linearly."""
    total = GroupRingElem.zero(c.genus)
    for coeff, z in zip(c.coords, generator_elems(c.genus)):
        if coeff:
            total = total + coeff * (z - 1)
    return total


def is_curve(c: Chain) -> bool:
    return boundary(c).is_zero()


def lift(w: FreeWord) -> Chain:
    """Lift of the based loop w starting at the preferred basepoint lift."""
    return Chain(w.genus, tuple(fox_derivatives_ab(w)))


def translate(h: Sequence[int] | GroupRingElem, c: Chain) -> Chain:
    """Deck translate of c by the group element h (exponent vector or monomial)."""
    if isinstance(h, GroupRingElem):
        if not h.is_monomial():
            raise ValueError("translation requires a group element")
        mono = h
    else:
        if len(h) != 2 * c.genus:
            raise GenusMismatch("exponent vector has the wrong length")
        mono = GroupRingElem(c.genus, {pack(h): 1})
    return c.scale(mono)


def boundary_lift(genus: int) -> Chain:
    return lift(boundary_word(genus))


def project(c: Chain) -> tuple[int, ...]:
    """Image in H of the chain: coordinate-wise augmentation."""
    return tuple(x.augmentation() for x in c.coords)


def format_chain(c: Chain, sep: str = " ; ") -> str:
    return sep.join(f"{name}: {x}" for name, x in zip(basis_names(c.genus), c.coords))


def chain_to_json(c: Chain) -> dict:
    return {"genus": c.genus, "coords": [to_json(x) for x in c.coords]}


def chain_from_json(data: dict) -> Chain:
    g = int(data["genus"])
    return Chain(g, tuple(from_json(x, g) for x in data["coords"]))


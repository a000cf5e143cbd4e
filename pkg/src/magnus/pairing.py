"""Higher intersection forms <.,.>_+ and <.,.>_- on the chain module.

Both forms are determined by their values on the 2g basis arcs.  Those values
are derived from the cover model (see ``covermodel``) and then extended
sesquilinearly: linear in the first argument, involution-linear in the
second.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Mapping

from . import covermodel
from .chains import Chain, boundary, generator_elems, is_curve, project
from .groupring import GenusMismatch, GroupRingElem, from_json, to_json

log = logging.getLogger(__name__)

SIGMAS = ("+", "-")
TABLE_FORMAT_VERSION = 1
TWIST_HANDEDNESS = "conjugation by delta^n"
BOUNDARY_ORIENTATION = "surface on the left; polygons oriented clockwise"


class NotACurve(ValueError):
    """Neither argument is a curve, so the two forms may differ."""


class TableInvariantError(RuntimeError):
    """A base table violates one of the identities every table must satisfy."""


def other_sigma(sigma: str) -> str:
    return "-" if sigma == "+" else "+"


def _check_sigma(sigma: str) -> None:
    if sigma not in SIGMAS:
        raise ValueError(f"sigma must be '+' or '-', got {sigma!r}")


def symplectic(genus: int, i: int, j: int) -> int:
    """(z_i, z_j) on H with (a_k, b_k) = 1."""
    if j == i + genus and i < genus:
        return 1
    if i == j + genus and j < genus:
        return -1
    return 0


def symplectic_pairing(x: tuple[int, ...], y: tuple[int, ...]) -> int:
    g = len(x) // 2
    return sum(x[k] * y[g + k] - x[g + k] * y[k] for k in range(g))


@dataclass(frozen=True)
class PairingTable:
    genus: int
    base: Mapping[tuple[str, int, int], GroupRingElem]
    radius: int = 2

    def value(self, sigma: str, i: int, j: int) -> GroupRingElem:
        return self.base[sigma, i, j]

    def check_invariants(self) -> None:
        g, n = self.genus, 2 * self.genus
        z = generator_elems(g)
        for i in range(n):
            for j in range(n):
                plus, minus = self.base["+", i, j], self.base["-", i, j]
                if plus - minus != (z[i] - 1) * (z[j] - 1).involute():
                    raise TableInvariantError(f"difference constraint fails at ({i}, {j})")
                for s in SIGMAS:
                    if self.base[s, j, i] != -self.base[other_sigma(s), i, j].involute():
                        raise TableInvariantError(f"antisymmetry fails at ({s}, {i}, {j})")
                    if self.base[s, i, j].augmentation() != symplectic(g, i, j):
                        raise TableInvariantError(f"augmentation fails at ({s}, {i}, {j})")

    def pair(self, c: Chain, d: Chain, sigma: str) -> GroupRingElem:
        return pair(c, d, sigma, self)

    def to_json(self) -> dict:
        return {
            "version": TABLE_FORMAT_VERSION,
            "genus": self.genus,
            "radius": self.radius,
            "conventions": {
                "twist_handedness": TWIST_HANDEDNESS,
                "boundary_orientation": BOUNDARY_ORIENTATION,
            },
            "table": {
                f"{s}/{i + 1}/{j + 1}": to_json(v) for (s, i, j), v in sorted(self.base.items())
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> PairingTable:
        if data.get("version") != TABLE_FORMAT_VERSION:
            raise ValueError(f"unsupported table version {data.get('version')!r}")
        conv = data.get("conventions", {})
        if conv.get("twist_handedness") != TWIST_HANDEDNESS or conv.get(
            "boundary_orientation"
        ) != BOUNDARY_ORIENTATION:
            raise ValueError("table was derived under different conventions")
        g = int(data["genus"])
        base = {}
        for key, val in data["table"].items():
            s, i, j = key.split("/")
            base[s, int(i) - 1, int(j) - 1] = from_json(val, g)
        if len(base) != 2 * (2 * g) ** 2:
            raise ValueError("incomplete table")
        return cls(g, base, int(data.get("radius", 2)))


def derive_base_table(genus: int, radius: int = 2) -> PairingTable:
    """Base pairings of the basis arcs from intersection counts on the cover."""
    if genus < 1:
        raise ValueError("genus must be >= 1")
    n = 2 * genus
    keys = [(s, i, j) for s in SIGMAS for i in range(n) for j in range(n)]
    values = [covermodel.pairing_oracle(i, j, s, radius, genus) for s, i, j in keys]
    table = PairingTable(genus, dict(zip(keys, values)), radius)
    table.check_invariants()
    return table


def table_dir() -> Path:
    env = os.environ.get("MAGNUS_TABLE_DIR")
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "magnus"


def table_path(genus: int, directory: Path | None = None) -> Path:
    return (directory or table_dir()) / f"pairing-genus{genus}.json"


def save_table(table: PairingTable, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(table.to_json(), indent=1, sort_keys=True))
    tmp.replace(path)


def load_table(path: Path) -> PairingTable:
    table = PairingTable.from_json(json.loads(Path(path).read_text()))
    table.check_invariants()
    return table


def cached_table(genus: int, directory: Path | None = None, refresh: bool = False) -> PairingTable:
    """Load the table for ``genus`` from the cache directory, deriving it if needed."""
    path = table_path(genus, directory)
    if path.exists() and not refresh:
        try:
            return load_table(path)
        except (ValueError, KeyError, TableInvariantError) as exc:
            log.warning("ignoring bad cached table %s: %s", path, exc)
    table = derive_base_table(genus)
    try:
        save_table(table, path)
    except OSError as exc:
        log.warning("could not cache table at %s: %s", path, exc)
    return table


@lru_cache(maxsize=None)
def default_table(genus: int) -> PairingTable:
    """In-memory table for ``genus``, derived once per process."""
    return derive_base_table(genus)


def _table(genus: int, table: PairingTable | None) -> PairingTable:
    if table is None:
        return default_table(genus)
    if table.genus != genus:
        raise GenusMismatch(f"table genus {table.genus} vs {genus}")
    return table


def pair(c: Chain, d: Chain, sigma: str, table: PairingTable | None = None) -> GroupRingElem:
    """<c, d>_sigma = sum_ij c_i * conj(d_j) * <s_i, s_j>_sigma."""
    _check_sigma(sigma)
    if c.genus != d.genus:
        raise GenusMismatch(f"genus {c.genus} vs {d.genus}")
    t = _table(c.genus, table)
    total = GroupRingElem.zero(c.genus)
    dbar = [x.involute() for x in d.coords]
    for i, ci in enumerate(c.coords):
        if not ci:
            continue
        row = GroupRingElem.zero(c.genus)
        for j, dj in enumerate(dbar):
            if dj:
                row = row + dj * t.base[sigma, i, j]
        total = total + ci * row
    return total


def pair_curve(c: Chain, d: Chain, table: PairingTable | None = None) -> GroupRingElem:
    """The common value of both forms when c or d is a curve."""
    if not (is_curve(c) or is_curve(d)):
        raise NotACurve("pair_curve needs at least one curve; choose a sigma instead")
    return pair(c, d, "+", table)


def nondegeneracy_witness(c: Chain, sigma: str, table: PairingTable | None = None) -> int | None:
    """Some basis index j with <c, s_j>_sigma != 0, or None (only when c = 0)."""
    for j in range(2 * c.genus):
        if pair(c, Chain.basis(c.genus, j), sigma, table):
            return j
    return None


def lifting_value(c: Chain, d: Chain) -> int:
    """(pi_* c, pi_* d) in H; equals the augmentation of either form."""
    return symplectic_pairing(project(c), project(d))


def difference_value(c: Chain, d: Chain) -> GroupRingElem:
    """boundary(c) * conj(boundary(d)), the gap between the + and - forms."""
    return boundary(c) * boundary(d).involute()

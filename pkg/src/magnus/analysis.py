"""Trace identities, kernel criteria and the commute-or-free dichotomy.

Everything here is checked two ways: once through closed formulas in the
pairings of the lifts, once through explicit matrices from ``magnusrep``.
A disagreement between the two routes is a bug, never a result, so it raises
``ConsistencyError`` rather than returning a verdict.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .chains import Chain, lift
from .freegroup import FreeWord
from .groupring import GroupRingElem, to_json
from .magnusrep import (
    MultiTwist,
    NotNullHomologous,
    RepMatrix,
    compose,
    is_identity,
    matmul,
    multitwist_matrix,
    t_value,
    trace,
    twist_product_matrix,
)
from .pairing import PairingTable, pair_curve

COMMUTE = "commute_in_image"
FREE = "free_in_image"


class NonzeroSelfPairing(ValueError):
    """Some twist curve has <c, c> != 0, so the trace formula does not apply."""


class CommutingPair(ValueError):
    """All cross-pairings vanish; there is no free group to search."""


class ConsistencyError(AssertionError):
    """Formula and matrix routes disagree."""


@dataclass(frozen=True)
class Witness:
    i: int
    j: int
    pairing: GroupRingElem


@dataclass(frozen=True)
class PairVerdict:
    kind: str
    witness: Witness | None = None
    trace_identity_checked: bool = False
    commutator_trace: GroupRingElem | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in (COMMUTE, FREE):
            raise ValueError(f"unknown verdict kind {self.kind!r}")
        if self.kind == FREE and (self.witness is None or not self.witness.pairing):
            raise ValueError("a free verdict needs a nonzero witness pairing")

    def to_json(self) -> dict:
        w = self.witness
        return {
            "kind": self.kind,
            "witness": None if w is None else {"i": w.i, "j": w.j, "pairing": to_json(w.pairing)},
            "trace_identity_checked": self.trace_identity_checked,
        }


def _lifts(words: Sequence[FreeWord]) -> list[Chain]:
    out = []
    for w in words:
        if not w.is_nullhomologous():
            raise NotNullHomologous(f"{w} is not null-homologous")
        out.append(lift(w))
    return out


def pairing_matrix(lifts: Sequence[Chain], table: PairingTable | None = None) -> list[list[GroupRingElem]]:
    """P[i][j] = <c_i, c_j>, with the diagonal required to vanish."""
    P = [[pair_curve(c, d, table) for d in lifts] for c in lifts]
    for i, row in enumerate(P):
        if row[i]:
            raise NonzeroSelfPairing(f"<c_{i + 1}, c_{i + 1}> = {row[i]}")
    return P


def _cycle_sum(P, mults: Sequence[int], genus: int) -> GroupRingElem:
    """Sum over i_1 < ... < i_m (m >= 2) of n_i1...n_im <c_i1,c_im><c_im,c_im-1>...<c_i2,c_i1>."""
    total = GroupRingElem.zero(genus)
    k = len(mults)
    for m in range(2, k + 1):
        for idx in itertools.combinations(range(k), m):
            coeff = 1
            for i in idx:
                coeff *= mults[i]
            if not coeff:
                continue
            term = P[idx[0]][idx[-1]]
            for a in range(m - 1, 0, -1):
                if not term:
                    break
                term = term * P[idx[a]][idx[a - 1]]
            if term:
                total = total + term * coeff
    return total


def trace_product_formula(
    twists: Sequence[tuple[FreeWord, int]], table: PairingTable | None = None
) -> GroupRingElem:
    """t(T_1^n_1 ... T_k^n_k) from the pairings of the lifts alone."""
    if not twists:
        raise ValueError("empty product")
    words = [w for w, _ in twists]
    P = pairing_matrix(_lifts(words), table)
    return _cycle_sum(P, [n for _, n in twists], words[0].genus)


def commutator_trace(w1: FreeWord, w2: FreeWord, table: PairingTable | None = None) -> GroupRingElem:
    """t([T_1, T_2]) = <c1,c2>^2 <c2,c1>^2, checked against the general formula."""
    c1, c2 = _lifts([w1, w2])
    P = pairing_matrix([c1, c2], table)
    x, y = P[0][1], P[1][0]
    value = x * x * y * y
    general = trace_product_formula([(w1, 1), (w2, 1), (w1, -1), (w2, -1)], table)
    if general != value:
        raise ConsistencyError(f"commutator trace {value} vs subsequence formula {general}")
    return value


def commutator_matrix(w1: FreeWord, w2: FreeWord, table: PairingTable | None = None) -> RepMatrix:
    return twist_product_matrix([(w1, 1), (w2, 1), (w1, -1), (w2, -1)], table)


def commutator_in_kernel(w1: FreeWord, w2: FreeWord, table: PairingTable | None = None) -> bool:
    """[T_1, T_2] in ker r iff <c1, c2> = 0; both sides of the equivalence are evaluated."""
    c1, c2 = _lifts([w1, w2])
    pairing_matrix([c1, c2], table)
    by_pairing = not pair_curve(c1, c2, table)
    by_matrix = is_identity(commutator_matrix(w1, w2, table))
    if by_pairing != by_matrix:
        raise ConsistencyError(
            f"pairing says {by_pairing}, matrix says {by_matrix} for {w1} and {w2}"
        )
    return by_pairing


def cross_pairings(tc: MultiTwist, td: MultiTwist) -> list[list[GroupRingElem]]:
    if tc.genus != td.genus:
        raise ValueError("multitwists live on different genera")
    table = tc.table or td.table
    return [[pair_curve(c, d, table) for d in td.lifts] for c in tc.lifts]


def pseudosquare_decomposition(tc: MultiTwist, td: MultiTwist) -> GroupRingElem:
    """sum_{i,i'} n_i n_i' || sum_j m_j <c_i,d_j><d_j,c_i'> ||."""
    table = tc.table or td.table
    X = cross_pairings(tc, td)
    Y = [[pair_curve(d, c, table) for c in tc.lifts] for d in td.lifts]
    n, m = tc.multiplicities, td.multiplicities
    g = tc.genus
    total = GroupRingElem.zero(g)
    for i, i2 in itertools.product(range(len(n)), repeat=2):
        inner = GroupRingElem.zero(g)
        for j, mj in enumerate(m):
            if X[i][j] and Y[j][i2]:
                inner = inner + X[i][j] * Y[j][i2] * mj
        if inner:
            total = total + inner.pseudosquare() * (n[i] * n[i2])
    return total


def multitwist_commutator_matrix(tc: MultiTwist, td: MultiTwist) -> RepMatrix:
    """r([T_C, T_D]) with r(T^-1) = 2 - r(T), which holds since (r(T) - 1)^2 = 0."""
    g = tc.genus
    a, b = multitwist_matrix(tc), multitwist_matrix(td)
    two = RepMatrix.identity(g) + RepMatrix.identity(g)
    out = compose(a, b)
    out = compose(out, two - a)
    return compose(out, two - b)


def classify_multitwist_pair(tc: MultiTwist, td: MultiTwist) -> PairVerdict:
    """Commute in the image iff every cross-pairing vanishes, else free."""
    X = cross_pairings(tc, td)
    witness = None
    for i, row in enumerate(X):
        for j, x in enumerate(row):
            if x:
                witness = Witness(i + 1, j + 1, x)
                break
        if witness:
            break
    t = t_value(multitwist_commutator_matrix(tc, td))
    decomposed = pseudosquare_decomposition(tc, td)
    if t != decomposed:
        raise ConsistencyError(f"commutator trace {t} vs pseudosquare sum {decomposed}")
    if bool(t) != (witness is not None) or t.const_term() < 0:
        raise ConsistencyError("commutator trace does not detect the crossing pairings")
    kind = FREE if witness else COMMUTE
    return PairVerdict(kind, witness, True, t)


@dataclass
class NoRelationReport:
    max_length: int
    words_checked: int = 0
    words_by_length: dict[int, int] = field(default_factory=dict)
    relation: str | None = None
    a_squared_zero: bool = False
    b_squared_zero: bool = False
    trace_ab: GroupRingElem | None = None
    trace_ab_matches: bool = False

    @property
    def ok(self) -> bool:
        return (
            self.relation is None
            and self.a_squared_zero
            and self.b_squared_zero
            and self.trace_ab_matches
            and self.trace_ab is not None
            and self.trace_ab.augmentation() == 0
        )

    def to_json(self) -> dict:
        return {
            "max_length": self.max_length,
            "words_checked": self.words_checked,
            "words_by_length": {str(k): v for k, v in sorted(self.words_by_length.items())},
            "relation": self.relation,
            "a_squared_zero": self.a_squared_zero,
            "b_squared_zero": self.b_squared_zero,
            "trace_ab": None if self.trace_ab is None else to_json(self.trace_ab),
            "trace_ab_matches": self.trace_ab_matches,
            "ok": self.ok,
        }


_LETTERS = ("C", "c", "D", "d")
_INVERSE = {"C": "c", "c": "C", "D": "d", "d": "D"}


def _word_text(word: tuple[str, ...]) -> str:
    names = {"C": "T_C", "c": "T_C^-1", "D": "T_D", "d": "T_D^-1"}
    return " ".join(names[x] for x in word)


def verify_no_relation(tc: MultiTwist, td: MultiTwist, max_length: int = 6) -> NoRelationReport:
    """Bounded search for words in T_C^{+-1}, T_D^{+-1} mapping to the identity.

    Reduced words are enumerated depth first, each product built from its
    prefix by one exact multiplication.
    """
    verdict = classify_multitwist_pair(tc, td)
    if verdict.kind == COMMUTE:
        raise CommutingPair("T_C and T_D commute in the image; nothing to search")
    g = tc.genus
    report = NoRelationReport(max_length)
    one = RepMatrix.identity(g)
    rc, rd = multitwist_matrix(tc), multitwist_matrix(td)
    A, B = rc - one, rd - one
    zero = one - one
    report.a_squared_zero = matmul(A, A) == zero
    report.b_squared_zero = matmul(B, B) == zero
    report.trace_ab = trace(matmul(A, B))
    t_cd = t_value(compose(rc, rd))
    X = cross_pairings(tc, td)
    table = tc.table or td.table
    Y = [[pair_curve(d, c, table) for c in tc.lifts] for d in td.lifts]
    formula = GroupRingElem.zero(g)
    for i, n in enumerate(tc.multiplicities):
        for j, m in enumerate(td.multiplicities):
            if X[i][j] and Y[j][i]:
                formula = formula + X[i][j] * Y[j][i] * (n * m)
    report.trace_ab_matches = report.trace_ab == t_cd == formula

    two = one + one
    mats = {"C": rc, "c": two - rc, "D": rd, "d": two - rd}
    stack: list[tuple[tuple[str, ...], RepMatrix]] = [((), one)]
    while stack:
        word, value = stack.pop()
        for x in _LETTERS:
            if word and word[-1] == _INVERSE[x]:
                continue
            w = word + (x,)
            v = compose(value, mats[x])
            report.words_checked += 1
            report.words_by_length[len(w)] = report.words_by_length.get(len(w), 0) + 1
            if is_identity(v):
                report.relation = _word_text(w)
                return report
            if len(w) < max_length:
                stack.append((w, v))
    return report


def same_lifts(w1: FreeWord, w2: FreeWord) -> bool:
    """Sufficient check for r(T_1) = r(T_2): the two words have equal lifts."""
    c1, c2 = _lifts([w1, w2])
    return c1 == c2

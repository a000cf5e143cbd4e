import random
from pathlib import Path

from hypothesis import settings
from hypothesis import strategies as st

from magnus.chains import Chain
from magnus.freegroup import FreeWord, boundary_word, commutator
from magnus.groupring import GroupRingElem

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

DATA = Path(__file__).parent / "data"


def elems(genus: int, max_terms: int = 3, exp: int = 2, coeff: int = 3):
    term = st.tuples(
        st.lists(st.integers(-exp, exp), min_size=2 * genus, max_size=2 * genus),
        st.integers(-coeff, coeff),
    )
    return st.lists(term, max_size=max_terms).map(lambda ts: GroupRingElem.from_terms(genus, ts))


def chains(genus: int, **kw):
    return st.lists(elems(genus, **kw), min_size=2 * genus, max_size=2 * genus).map(
        lambda cs: Chain(genus, tuple(cs))
    )


def words(genus: int, max_len: int = 10):
    letters = st.sampled_from([s * i for i in range(1, 2 * genus + 1) for s in (1, -1)])
    return st.lists(letters, max_size=max_len).map(lambda xs: FreeWord.reduce(genus, xs))


def random_elem(rng: random.Random, genus: int, max_terms=3, exp=2, coeff=3) -> GroupRingElem:
    terms = [
        ([rng.randint(-exp, exp) for _ in range(2 * genus)], rng.randint(-coeff, coeff))
        for _ in range(rng.randint(0, max_terms))
    ]
    return GroupRingElem.from_terms(genus, terms)


def random_chain(rng: random.Random, genus: int, **kw) -> Chain:
    return Chain(genus, tuple(random_elem(rng, genus, **kw) for _ in range(2 * genus)))


def genus2_pool() -> dict[str, FreeWord]:
    """Null-homologous genus-2 words whose lifts have zero self-pairing.

    Each is the commutator of two simple based loops meeting once at the
    basepoint, so each bounds a one-holed torus.  Several pairs cross.
    """
    g = 2
    A = lambda i: FreeWord.A(g, i)  # noqa: E731
    B = lambda i: FreeWord.B(g, i)  # noqa: E731
    return {
        "d1": boundary_word(g, 1),
        "e2": commutator(A(2), B(2)),
        "x": commutator(A(1), B(2) * B(1)),
        "y": commutator(A(2) * A(1), B(1)),
        "z": commutator(A(2), B(1) * B(2)),
    }


ACCEPTANCE: dict[str, str] = {}


def record(criterion: str, ok: bool, detail: str) -> None:
    line = f"{criterion} {'PASS' if ok else 'FAIL'}: {detail}"
    ACCEPTANCE[criterion] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE, key=lambda k: int(k.split("-")[1])):
            terminalreporter.write_line(ACCEPTANCE[key])

import os
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from compatlie.algebra import BracketTensor, CompatAlgebra
from compatlie.families import make_Ln, make_Ls, make_pair, make_paper_example, make_Rn, make_Wn
from compatlie.filiform import change_basis
from compatlie.linalg import rank
from compatlie.scalar import Poly

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def lie(t, labels=None):
    return CompatAlgebra.from_tensors(t, labels=labels)


def corpus():
    """Named parameter-free compatible algebras used by invariant tests."""
    out = {
        "example7": make_paper_example("example7"),
        "existcc7": make_paper_example("existcc", 7),
        "LR7": make_pair("LR", 7),
        "LW8": make_pair("LW", 8),
        "L9": lie(make_Ln(9)),
        "R8": lie(make_Rn(8)),
        "W9": lie(make_Wn(9)),
    }
    for s in [(3, 3), (2, 2, 2), (2, 3), (1, 4), (5,)]:
        out["Ls" + "".join(map(str, s))] = make_Ls(s)
    return out


@pytest.fixture(scope="session")
def algebras():
    return corpus()


def random_rationals(seed, names, low=-5, high=5):
    rng = random.Random(seed)
    out = {}
    for name in names:
        q = Fraction(0)
        while q == 0:
            q = Fraction(rng.randint(low, high), rng.randint(1, 4))
        out[name] = q
    return out


def units(n, indices):
    """Dense unit vectors for 1-based indices."""
    out = []
    for i in indices:
        v = [Fraction(0)] * n
        v[i - 1] = Fraction(1)
        out.append(v)
    return out


def _small_lie():
    out = [
        BracketTensor(3, {(1, 2): {3: 1}}),                               # Heisenberg
        BracketTensor(3, {(1, 2): {2: 2}, (1, 3): {3: -2}, (2, 3): {1: 1}}),  # sl2
        BracketTensor(3, {(1, 2): {2: 1}, (1, 3): {3: 1}}),                # r_3 type
        make_Ln(4), make_Ln(5), make_Rn(5),
        BracketTensor(4, {(1, 2): {2: 1}, (3, 4): {4: 1}}),                # aff x aff
        BracketTensor(5, {(1, 2): {5: 1}, (3, 4): {5: 1}}),                # Heisenberg 5
    ]
    return out


LIE = _small_lie()


def random_lie_pair(seed):
    """Two Lie brackets on a common space of dim <= 5, seen in a random basis."""
    rng = random.Random(seed)
    t1 = rng.choice(LIE)
    n = t1.dim
    choice = rng.randrange(4)
    if choice == 0:
        t2 = t1.scale(Fraction(rng.randint(-3, 3), rng.randint(1, 2)))
    elif choice == 1 and n == 5:
        t1, t2 = make_Ln(5), make_Rn(5)
    else:
        t2 = rng.choice([t for t in LIE if t.dim == n])
        # relabel the second algebra by a random permutation
        perm = list(range(1, n + 1))
        rng.shuffle(perm)
        t2 = BracketTensor(n, {(perm[i - 1], perm[j - 1]): {perm[k - 1]: c for k, c in v.items()}
                               for (i, j), v in t2.constants.items()})
    while True:
        vecs = [[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        if rank(vecs) == n:
            break
    return change_basis(CompatAlgebra.from_tensors(t1, t2), vecs)


def parameter_matrices(img, n):
    """One matrix per parameter of a linear image-dict form."""
    names = set()
    for col in img.values():
        for c in col.values():
            if isinstance(c, Poly):
                names |= c.variables()
    out = {}
    for name in sorted(names):
        m = [[Fraction(0)] * n for _ in range(n)]
        for j, col in img.items():
            for k, c in col.items():
                if isinstance(c, Poly) and name in c.variables():
                    m[k - 1][j - 1] = c.coefficient_of(name)[0]
        out[name] = m
    return out


# one summary line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])

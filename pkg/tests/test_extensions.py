import random
from fractions import Fraction

import pytest

from compatlie.algebra import check_compatibility
from compatlie.constraints import ConstraintSet, canonical_equation, reduce_constraints
from compatlie.derivations import compat_derivation_space, derivation_space, diagonal_derivations
from compatlie.extensions import (
    ExtensionError,
    ExtensionSpec,
    assemble,
    build_semidirect,
    check_extension_conditions,
    generic_extension,
    nonexistence_probe,
    run_branches,
    torus_extension,
)
from compatlie.families import (
    PRIMARY_TABLES,
    make_extension_table,
    make_Ln,
    make_Ls,
    make_pair,
    make_paper_example,
    table_actions,
)
from compatlie.linalg import Subspace, mat_add, mat_scale
from compatlie.scalar import parse_scalar as P
from compatlie.scalar import scalar_substitute
from compatlie.structure import derived_series, is_nilpotent, is_solvable, verify_nilradical
from conftest import lie, random_rationals

F = Fraction


def zero(n):
    return [[F(0)] * n for _ in range(n)]


def diag(values):
    n = len(values)
    m = zero(n)
    for i, v in enumerate(values):
        m[i][i] = F(v)
    return m


# -- conditions and assembly -------------------------------------------------------

def test_common_derivation_satisfies_conditions():
    base = make_pair("LR", 7)
    rng = random.Random(0)
    d = zero(7)
    for b in compat_derivation_space(base).basis:
        d = mat_add(d, mat_scale(b, F(rng.randint(-3, 3))))
    assert check_extension_conditions(ExtensionSpec(base, [("x", d, d)])).holds


def test_zero_action():
    base = make_pair("LR", 7)
    assert check_extension_conditions(ExtensionSpec(base, [("x", zero(7), zero(7))])).holds


def test_existcc_R_action_satisfies_mixed_condition():
    R = make_paper_example("existcc_R").substitute(random_rationals(3, ["a1", "a2", "a3", "a4"]))
    base = make_paper_example("existcc", 7)
    D1 = zero(7)
    D2 = zero(7)
    for j in range(1, 8):
        for k, c in R.bracket1.product(j, 8).items():
            D1[k - 1][j - 1] = c
        for k, c in R.bracket2.product(j, 8).items():
            D2[k - 1][j - 1] = c
    rep = check_extension_conditions(ExtensionSpec(base, [("x", D1, D2)]))
    assert rep.holds
    # each action is a derivation of its own bracket but neither is a common derivation
    common = compat_derivation_space(base)
    assert derivation_space(base.bracket1).contains(D1) and derivation_space(base.bracket2).contains(D2)
    assert not common.contains(D1) and not common.contains(D2)


def test_semidirect_L7_diagonal():
    base = lie(make_Ln(7))
    a = build_semidirect(ExtensionSpec(base, [("x", diag(range(1, 8)), zero(7))]))
    assert a.dim == 8 and is_solvable(a) and not is_nilpotent(a)


def test_empty_generators_return_base():
    base = make_pair("LR", 7)
    assert build_semidirect(ExtensionSpec(base, [])) is base


def test_semidirect_rejects_non_derivation():
    base = lie(make_Ln(7))
    bad = diag([1] * 7)
    with pytest.raises(ExtensionError) as err:
        build_semidirect(ExtensionSpec(base, [("x", bad, zero(7))]))
    assert err.value.witness is not None


def test_semidirect_reproduces_table():
    n = 7
    kind, img1, img2, names = table_actions("lr_l", n)
    sigma = random_rationals(2, names)
    table = make_extension_table("lr_l", n, sigma)
    kind, img1, img2, _ = table_actions("lr_l", n, sigma)
    built = build_semidirect(ExtensionSpec(make_pair(kind, n), [("x", img1, img2)]))
    assert built.bracket1 == table.bracket1 and built.bracket2 == table.bracket2


def test_semidirect_keeps_base(algebras):
    for name in ("LR7", "Ls33"):
        base = algebras[name]
        n = base.dim
        tor = diagonal_derivations(compat_derivation_space(base)).basis
        a = build_semidirect(ExtensionSpec(base, [("x", tor[0], zero(n))]))
        assert a.bracket1.restrict_indices(range(1, n + 1)) == base.bracket1
        assert a.bracket2.restrict_indices(range(1, n + 1)) == base.bracket2


# -- torus extensions --------------------------------------------------------------

@pytest.mark.parametrize("s", [(3, 3), (2, 2, 2)])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_torus_extension_dimensions(s, k):
    base = make_Ls(s)
    n = base.dim
    tor = diagonal_derivations(compat_derivation_space(base)).basis
    assert len(tor) == 2
    split = [(tor[:a], tor[: k - a]) for a in range(3) if 0 <= k - a <= 2][0]
    a = torus_extension(base, *split)
    assert a.dim == n + k
    assert is_solvable(a) and not is_nilpotent(a)
    assert verify_nilradical(a, Subspace.span_of_units(a.dim, range(n)))
    base_steps = len(derived_series(base).terms)
    assert derived_series(a).index <= base_steps + 3


def test_torus_extension_k0():
    base = make_Ls((3, 3))
    assert torus_extension(base) is base


def test_torus_extension_rejects_non_torus():
    base = make_Ls((3, 3))
    with pytest.raises(ExtensionError):
        torus_extension(base, [diag([1] * 7)])


# -- generic extensions and probes -------------------------------------------------

def test_LR7_rank1_constraints():
    _, cs = generic_extension(make_pair("LR", 7), 1)
    for text in ("alpha_1_2", "alpha_2_2 - 2*alpha_1_1"):
        assert P(text) in cs
    # the remaining equations tie alpha_1_t to beta_1_t for 3 <= t <= n - 2
    for t in (3, 4, 5):
        assert P(f"alpha_1_{t} - beta_1_{t}") in cs


def test_LR7_rank2_probe():
    probe = nonexistence_probe(make_pair("LR", 7), 2)
    assert probe.inconsistent
    (w,) = probe.witnesses("mixed", (2, 4, 9), 6)
    assert w.residual == -1


def test_LW7_rank2_probe():
    probe = nonexistence_probe(make_pair("LW", 7), 2)
    assert probe.inconsistent
    (w,) = probe.witnesses("mixed", (2, 3, 8), 5)
    assert w.residual == 2


def test_solutions_of_reduced_system_are_compatible():
    a, cs = generic_extension(make_pair("LR", 7), 1)
    red = reduce_constraints(cs)
    assert red.status == "solved"
    rng = random.Random(11)
    free = {p: F(rng.randint(-3, 3), rng.randint(1, 2)) for p in a.parameters if p not in red.assignments}
    sigma = dict(free)
    for k, v in red.assignments.items():
        sigma[k] = scalar_substitute(v, free)
    assert check_compatibility(a.substitute(sigma)).holds


@pytest.mark.parametrize("table", PRIMARY_TABLES)
@pytest.mark.parametrize("n", [7, 10])
def test_tables_verified(table, n):
    names = table_actions(table, n)[3]
    for seed in range(2):
        a = make_extension_table(table, n, random_rationals(seed, names))
        assert check_compatibility(a).holds
        assert is_solvable(a) and not is_nilpotent(a)
        assert verify_nilradical(a, Subspace.span_of_units(a.dim, range(n)), n_random=5)


# -- reducer ----------------------------------------------------------------------

def test_reduce_single_linear():
    cs = ConstraintSet.from_pairs([(P("alpha_2_2 - 2*alpha_1_1"), None)])
    red = reduce_constraints(cs)
    assert red.status == "solved"
    assert red.assignments == {"alpha_2_2": P("2*alpha_1_1")}


def test_reduce_inconsistent():
    cs = ConstraintSet.from_pairs([(P("alpha - 1"), None), (P("alpha - 2"), None)])
    red = reduce_constraints(cs)
    assert red.status == "inconsistent"
    assert red.witness[0] == 1


def test_reduce_open():
    red = reduce_constraints(ConstraintSet.from_pairs([(P("a*b - 1"), None)]))
    assert red.status == "open"


def test_nonzero_branch():
    cs = ConstraintSet.from_pairs([(P("lambda*a"), None), (P("a - 1"), None)])
    plain = reduce_constraints(cs)
    assert plain.status == "solved" and plain.assignments["lambda"] == 0
    assert reduce_constraints(cs, nonzero=["lambda"]).status == "inconsistent"


def test_run_branches():
    cs = ConstraintSet.from_pairs([(P("a*b - b"), None)])
    out = dict((tuple(sorted(b.items())), r.status) for b, r in run_branches(cs, [{"a": 1}, {"a": 2}]))
    assert out == {(("a", 1),): "solved", (("a", 2),): "solved"}


def test_canonical_equation_is_monic():
    assert canonical_equation(P("2*a - 4")) == P("a - 2")
    assert canonical_equation(F(-3)) == 1
    assert canonical_equation(0) == 0


def test_constraint_dedup():
    cs = ConstraintSet.from_pairs([(P("2*a"), None), (P("-a"), None)])
    assert len(cs) == 1


def test_assemble_labels():
    base = make_pair("LR", 7)
    a = assemble(ExtensionSpec(base, [("z", zero(7), zero(7))]))
    assert a.labels[-1] == "z"

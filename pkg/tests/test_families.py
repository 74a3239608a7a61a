import pytest

from compatlie.algebra import check_compatibility, check_jacobi, extract_constraints
from compatlie.families import (
    PRIMARY_TABLES,
    FamilyError,
    SeriesSpec,
    make_extension_table,
    make_Ln,
    make_Ls,
    make_model_filiform,
    make_pair,
    make_paper_example,
    make_Rn,
    make_Wn,
    table_actions,
)
from compatlie.filiform import is_filiform
from compatlie.scalar import var
from compatlie.structure import is_nilpotent, is_solvable, lower_central_series, nilindex
from conftest import random_rationals


def test_W7_first_coefficient():
    assert make_Wn(7).product(2, 3) == {5: 1}


def test_W8_coefficient():
    assert make_Wn(8).product(2, 4) == {6: 1}


def test_R7_range():
    R = make_Rn(7)
    assert R.product(2, 5) == {7: 1}
    assert R.product(2, 6) == {}


@pytest.mark.parametrize("maker,low", [(make_Ln, 4), (make_Rn, 4), (make_Wn, 7)])
def test_threshold(maker, low):
    maker(low)
    with pytest.raises(FamilyError):
        maker(low - 1)


def test_Ls_single_block_is_model():
    a = make_Ls((6,))
    assert a.bracket1 == make_model_filiform(6)
    assert a.bracket2.is_zero()
    assert a.labels[0] == "e0" and a.dim == 7


def test_Ls22_products():
    a = make_Ls((2, 2))
    # e_j lives at index j+1
    assert a.bracket1.product(1, 2) == {3: 1}
    assert a.bracket1.product(1, 3) == {4: 1}
    assert a.bracket2.product(1, 4) == {5: 1}
    assert a.dim == 5
    assert is_filiform(a) and check_compatibility(a).holds


SPECS = [(3, 3), (2, 2, 2), (2, 3), (1, 4), (4, 1, 3), (2, 2, 2, 2), (1, 1, 1, 1, 1), (9,), (5, 4)]


@pytest.mark.parametrize("s", SPECS)
def test_Ls_filiform_nilpotent(s):
    a = make_Ls(s)
    n = sum(s)
    assert check_compatibility(a).holds
    assert is_filiform(a) and is_nilpotent(a)
    # with C^0 = L the first vanishing term is C^n
    assert nilindex(a) == n
    assert lower_central_series(a).dims[: n + 1] == [n + 1] + [n - k for k in range(1, n + 1)]


def test_series_spec_derived():
    s = SeriesSpec((2, 3, 1))
    assert s.n == 6 and s.t == 3
    assert s.derived == (2, 5, 6)


def test_example7_compatible():
    assert check_compatibility(make_paper_example("example7")).holds


def test_existcc_R_compatible_and_solvable():
    R = make_paper_example("existcc_R")
    assert set(R.parameters) == {"a1", "a2", "a3", "a4"}
    assert extract_constraints(R).is_empty
    sample = R.substitute(random_rationals(4, R.parameters))
    assert is_solvable(sample) and not is_nilpotent(sample)


def test_F1_compatible_with_formal_parameters():
    F1 = make_paper_example("F1")
    assert extract_constraints(F1).is_empty


@pytest.mark.xfail(strict=True, reason="the displayed F2 table fails Jacobi in bracket 2 at (X0,X2,X3) unless lambda = 0")
def test_F2_compatible_with_formal_parameters():
    assert extract_constraints(make_paper_example("F2")).is_empty


def test_F2_failure_is_lambda():
    F2 = make_paper_example("F2")
    rep = check_jacobi(F2.bracket2)
    assert rep.witnesses == [((1, 3, 4), 7, -var("lambda"))]
    assert check_compatibility(F2.substitute({"alpha": 2, "beta": 3, "lambda": 0})).holds


def test_unknown_example():
    with pytest.raises(FamilyError):
        make_paper_example("nope")
    with pytest.raises(FamilyError):
        make_extension_table("nope", 7)


def test_lr_l_table_example():
    R = make_extension_table("lr_l", 7, random_rationals(1, table_actions("lr_l", 7)[3]))
    assert check_compatibility(R).holds and is_solvable(R) and not is_nilpotent(R)


def test_lw_w_display():
    a = make_extension_table("lw_w", 8)
    # {e2, x} = 2 e2 + tau_2 e_{n-2} + tau_3 e_{n-1}
    assert a.bracket2.product(2, 9) == {2: 2, 6: var("tau_2"), 7: var("tau_3")}


def test_lw_w_diagonal_specialization():
    params = {p: 0 for p in table_actions("lw_w", 8)[3]}
    params["alpha_1_1"] = 1
    a = make_extension_table("lw_w", 8, params)
    for i in range(1, 9):
        assert set(a.bracket1.product(i, 9)) <= {i} and set(a.bracket2.product(i, 9)) <= {i}
    assert check_compatibility(a).holds


@pytest.mark.parametrize("n", range(7, 13))
def test_pairs(n):
    assert check_compatibility(make_pair("LR", n)).holds
    assert check_compatibility(make_pair("LW", n)).holds
    rw = check_compatibility(make_pair("RW", n))
    assert rw.holds == (n <= 8)


@pytest.mark.parametrize("n", range(7, 13))
def test_single_brackets_lie(n):
    for maker in (make_Ln, make_Rn, make_Wn):
        assert check_jacobi(maker(n)).holds


@pytest.mark.parametrize("table", PRIMARY_TABLES)
@pytest.mark.parametrize("n", [7, 8])
def test_tables_formally_compatible(table, n):
    assert extract_constraints(make_extension_table(table, n)).is_empty


@pytest.mark.parametrize("table", PRIMARY_TABLES)
def test_tables_samples(table):
    n = 9
    names = table_actions(table, n)[3]
    for seed in range(5):
        a = make_extension_table(table, n, random_rationals(seed, names))
        assert check_compatibility(a).holds

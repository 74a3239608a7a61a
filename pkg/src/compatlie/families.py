"""Constructors for the named algebras: L_n, R_n, W_n, the series algebras L_s,
a handful of fixed examples, and the one-generator extension tables.

Parameters left unassigned become formal polynomial parameters.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .algebra import BracketTensor, CompatAlgebra, vec_add
from .scalar import as_scalar, var

__all__ = [
    "SeriesSpec",
    "FamilyError",
    "make_Ln",
    "make_Rn",
    "make_Wn",
    "make_model_filiform",
    "make_Ls",
    "make_pair",
    "make_paper_example",
    "make_extension_table",
    "h1_basis_Wn",
    "EXTENSION_TABLES",
    "PRIMARY_TABLES",
    "table_actions",
    "EXAMPLE_NAMES",
]


class FamilyError(ValueError):
    pass


def _need(n, low, what):
    if not isinstance(n, int) or n < low:
        raise FamilyError(f"{what} needs n >= {low}, got {n}")


def make_Ln(n):
    """[e1, ei] = e_{i+1} for 2 <= i <= n-1."""
    _need(n, 4, "L_n")
    return BracketTensor(n, {(1, i): {i + 1: 1} for i in range(2, n)})


def make_Rn(n):
    """L_n plus [e2, ei] = e_{i+2} for 3 <= i <= n-2."""
    _need(n, 4, "R_n")
    t = {(1, i): {i + 1: 1} for i in range(2, n)}
    for i in range(3, n - 1):
        t[(2, i)] = {i + 2: 1}
    return BracketTensor(n, t)


def wn_coefficient(i, j):
    return Fraction(6 * (j - i) * factorial(i - 2) * factorial(j - 2), factorial(i + j - 2))


def make_Wn(n):
    """L_n plus [ei, ej] = 6(j-i)(i-2)!(j-2)!/(i+j-2)! e_{i+j} for 2 <= i < j, i+j <= n."""
    _need(n, 7, "W_n")
    t = {(1, i): {i + 1: 1} for i in range(2, n)}
    for i in range(2, n - 1):
        for j in range(i + 1, n - 1):
            if i + j <= n:
                t[(i, j)] = {i + j: wn_coefficient(i, j)}
    return BracketTensor(n, t)


def make_pair(kind, n):
    """Compatible pair on e1..en: 'LR', 'LW' or 'RW' (the last one is not compatible)."""
    makers = {"L": make_Ln, "R": make_Rn, "W": make_Wn}
    kind = kind.upper()
    if len(kind) != 2 or any(k not in makers for k in kind):
        raise FamilyError(f"unknown pair {kind!r}")
    return CompatAlgebra.from_tensors(makers[kind[0]](n), makers[kind[1]](n))


def h1_basis_Wn(n):
    """The maps h, t1, t2, t3 on W_n as n x n matrices (column j is the image of e_j).

    t1 (e1 -> e_n) equals -ad(e_{n-1}) and so is inner; the outer class it
    stands for is e1 -> e_{n-1}, returned under the key "t1_outer".
    """
    _need(n, 7, "W_n")

    def mat(images):
        m = [[Fraction(0)] * n for _ in range(n)]
        for j, out in images.items():
            for k, c in out.items():
                m[k - 1][j - 1] = Fraction(c)
        return m

    h = mat({i: {i: i} for i in range(1, n + 1)})
    t1 = mat({1: {n: 1}})
    t2 = mat({i: {n - 4 + i: 1} for i in range(2, 5)})
    t3 = mat({i: {n - 3 + i: 1} for i in range(2, 4)})
    t1_outer = mat({1: {n - 1: 1}})
    return {"h": h, "t1": t1, "t2": t2, "t3": t3, "t1_outer": t1_outer}


@dataclass(frozen=True)
class SeriesSpec:
    """Block lengths (n_1, ..., n_t) of a series algebra; n is their sum."""

    n_values: tuple

    def __post_init__(self):
        vals = tuple(int(v) for v in self.n_values)
        if not vals:
            raise FamilyError("a series needs at least one block")
        if any(v < 0 for v in vals):
            raise FamilyError("block lengths must be nonnegative")
        if sum(vals) < 1:
            raise FamilyError("total length must be at least 1")
        object.__setattr__(self, "n_values", vals)

    @property
    def derived(self):
        out, acc = [], 0
        for v in self.n_values:
            acc += v
            out.append(acc)
        return tuple(out)

    @property
    def n(self):
        return sum(self.n_values)

    @property
    def t(self):
        return len(self.n_values)

    def block_of(self, i):
        """1-based block containing step i (1 <= i <= n)."""
        for b, top in enumerate(self.derived, start=1):
            if i <= top:
                return b
        raise IndexError(i)

    def __str__(self):
        return "(" + ",".join(map(str, self.n_values)) + ")"


def _ls_labels(n):
    return tuple(f"e{i}" for i in range(n + 1))


def make_Ls(s):
    """Series algebra on e_0..e_n: {e0, ei} = e_{i+1} in bracket 1 on odd blocks, bracket 2 on even.

    The step starting at e_n would leave the basis and is dropped, so the
    algebra has dimension n+1 and e_j sits at storage index j+1.
    """
    if not isinstance(s, SeriesSpec):
        s = SeriesSpec(tuple(s))
    n = s.n
    t1, t2 = {}, {}
    for i in range(1, n):
        target = t1 if s.block_of(i) % 2 == 1 else t2
        target[(1, i + 1)] = {i + 2: 1}
    return CompatAlgebra(n + 1, BracketTensor(n + 1, t1), BracketTensor(n + 1, t2), _ls_labels(n))


def make_model_filiform(n):
    """Model filiform bracket on e_0..e_n as a single tensor of dimension n+1."""
    return make_Ls((n,)).bracket1


# -- fixed examples -----------------------------------------------------------

def _param(params, name):
    if params and name in params:
        return as_scalar(params[name])
    return var(name)


def _example7():
    b1 = BracketTensor.from_products(7, [
        (1, 2, 4, 1), (1, 3, 5, 1), (2, 3, 6, 1), (4, 3, 7, 1), (1, 6, 7, 1)])
    b2 = BracketTensor.from_products(7, [
        (6, 1, 2, 1), (1, 7, 4, 1), (3, 4, 2, 1), (7, 3, 6, 1)])
    return CompatAlgebra.from_tensors(b1, b2)


def _existcc_products(n):
    p1 = [(i, 1, i + 1, 1) for i in range(2, n)]
    p1 += [(i, 2, i + 2, 1) for i in range(3, n - 1)]
    p2 = [(2, 1, n - 1, 1), (3, 1, n, -1)]
    return p1, p2


def _existcc(n):
    _need(n, 5, "existcc")
    p1, p2 = _existcc_products(n)
    return CompatAlgebra.from_tensors(BracketTensor.from_products(n, p1), BracketTensor.from_products(n, p2))


def _existcc_R(params=None, n=7):
    if n != 7:
        raise FamilyError("the extension with x is only displayed for n = 7")
    a = [_param(params, f"a{i}") for i in range(1, 5)]
    p1, p2 = _existcc_products(7)
    x = 8
    p1 += [(i, x, i, i) for i in range(1, 8)]
    p2 += [(1, x, 6, a[0]), (1, x, 7, a[1]),
           (2, x, 6, a[2]), (2, x, 7, a[3]),
           (3, x, 6, -3), (3, x, 7, a[2])]
    labels = tuple(f"e{i}" for i in range(1, 8)) + ("x",)
    return CompatAlgebra(8, BracketTensor.from_products(8, p1), BracketTensor.from_products(8, p2), labels)


def _x_labels(k):
    return tuple(f"X{i}" for i in range(k))


def _F1(params=None):
    al = [_param(params, f"alpha{i}") for i in range(1, 5)]
    # X_j stored at index j+1
    p1 = [(1, i + 1, i + 2, 1) for i in range(1, 5)]
    p2 = [(1, i + 1, i + 2, al[i - 1]) for i in range(1, 5)] + [(1, 6, 7, 1)]
    return CompatAlgebra(7, BracketTensor.from_products(7, p1), BracketTensor.from_products(7, p2), _x_labels(7))


def _F2(params=None):
    a, b, lam = (_param(params, k) for k in ("alpha", "beta", "lambda"))
    X = lambda j: j + 1  # noqa: E731
    p1 = [(X(0), X(i), X(i + 1), 1) for i in range(1, 5)]
    p2 = [(X(0), X(1), X(2), a), (X(0), X(2), X(3), b), (X(0), X(3), X(4), b),
          (X(0), X(4), X(5), a), (X(0), X(5), X(6), 1),
          (X(1), X(2), X(3), lam), (X(1), X(3), X(4), lam), (X(2), X(3), X(5), lam)]
    return CompatAlgebra(7, BracketTensor.from_products(7, p1), BracketTensor.from_products(7, p2), _x_labels(7))


GRADED7_PARAMETERS = ("a01", "a02", "a03", "a04", "a12", "a13", "a14", "a15", "a23", "a24", "delta")


def _graded7(params=None):
    """Generic graded ansatz in dimension 7 with first block of length 4."""
    g = {k: _param(params, k) for k in GRADED7_PARAMETERS}
    X = lambda j: j + 1  # noqa: E731
    d = g["delta"]
    p1 = [(X(0), X(i), X(i + 1), 1) for i in range(1, 5)]
    p1 += [(X(1), X(4), X(5), -d), (X(2), X(3), X(5), d)]
    p2 = [(X(0), X(1), X(2), g["a01"]), (X(0), X(2), X(3), g["a02"]),
          (X(0), X(3), X(4), g["a03"]), (X(0), X(4), X(5), g["a04"]),
          (X(0), X(5), X(6), 1),
          (X(1), X(2), X(3), g["a12"]), (X(1), X(3), X(4), g["a13"]),
          (X(1), X(4), X(5), g["a14"]), (X(1), X(5), X(6), g["a15"]),
          (X(2), X(3), X(5), g["a23"]), (X(2), X(4), X(6), g["a24"])]
    names = tuple(k for k in GRADED7_PARAMETERS if not (params and k in params))
    return CompatAlgebra(7, BracketTensor.from_products(7, p1), BracketTensor.from_products(7, p2),
                         _x_labels(7), names)


EXAMPLE_NAMES = ("example7", "existcc", "existcc_R", "F1", "F2", "graded7")


def make_paper_example(name, n=None, params=None):
    """Fixed examples by name; ``n`` only matters for ``existcc``."""
    key = name.lower()
    if key == "example7":
        return _example7()
    if key == "existcc":
        return _existcc(7 if n is None else n)
    if key in ("existcc_r", "existccr"):
        return _existcc_R(params, 7 if n is None else n)
    if key == "f1":
        return _F1(params)
    if key == "f2":
        return _F2(params)
    if key == "graded7":
        return _graded7(params)
    if key in EXTENSION_TABLES:
        return make_extension_table(key, 7 if n is None else n, params)
    raise FamilyError(f"unknown example {name!r}")


# -- one-generator extension tables ------------------------------------------
# Each builder returns (base pair, {i: image of e_i under x in bracket 1},
# {i: image in bracket 2}) with [e_i, x] = image.

class _Params:
    def __init__(self, given):
        self.given = dict(given or {})
        self.used = []

    def __call__(self, name):
        if name not in self.used:
            self.used.append(name)
        return _param(self.given, name)

    def formal(self):
        return tuple(p for p in self.used if p not in self.given)


def _add(img, i, k, c):
    vec_add(img.setdefault(i, {}), {k: as_scalar(c)})


def _lr_derivation_shape(n, P, head):
    """d(e1) = a11 e1 + a1,n-1 e_{n-1} + a1n e_n; d(ei) = i a11 ei + sum_{t=3}^{n-i+2} a2t e_{t+i-2}."""
    img = {}
    a11 = P(f"{head}_1_1")
    _add(img, 1, 1, a11)
    _add(img, 1, n - 1, P(f"{head}_1_{n-1}"))
    _add(img, 1, n, P(f"{head}_1_{n}"))
    for i in range(2, n + 1):
        _add(img, i, i, i * a11)
        for t in range(3, n - i + 3):
            _add(img, i, t + i - 2, P(f"{head}_2_{t}"))
    return img


def _diag(n, scale=1):
    return {i: {i: as_scalar(i * scale)} for i in range(1, n + 1)}


def _table_lr_L(n, P):
    return "LR", _diag(n), _lr_derivation_shape(n, P, "beta")


def _table_lr_R(n, P):
    img = {}
    a11 = P("alpha_1_1")
    _add(img, 1, 1, a11)
    _add(img, 1, n - 1, P(f"alpha_1_{n-1}"))
    _add(img, 1, n, P(f"alpha_1_{n}"))
    for i in range(2, n + 1):
        _add(img, i, i, i * a11)
        for t in range(4, n - i + 3):
            _add(img, i, t + i - 2, P(f"alpha_2_{t}"))
    return "LR", img, _diag(n)


def _table_lr_N(n, P):
    return "LR", _diag(n), _lr_derivation_shape(n, P, "beta")


def _table_lw_L(n, P):
    W = make_Wn(n)
    img1 = {1: {1: Fraction(1)}}
    for i in range(2, n + 1):
        _add(img1, i, i, i)
        for k in range(n - 2, n + 1):
            if k + i - 2 <= n:
                _add(img1, i, k + i - 2, P(f"alpha_2_{k}"))
    g, g1, gm2, gm1 = P("gamma"), P("gamma_1"), P(f"gamma_{n-2}"), P(f"gamma_{n-1}")
    tau1, tau2, tau3 = P("tau_1"), P("tau_2"), P("tau_3")
    img2 = {}
    _add(img2, 1, 1, g)
    _add(img2, 1, n - 1, gm2)
    _add(img2, 1, n, gm1 + tau1)
    for i in range(2, n + 1):
        _add(img2, i, i, i * g)
        for k, c in W.product(i, 1).items():
            _add(img2, i, k, g1 * c)
        for k, c in W.product(i, n - 2).items():
            _add(img2, i, k, gm2 * c)
        if 2 <= i <= 4:
            _add(img2, i, n - 4 + i, tau2)
        if 2 <= i <= 3:
            _add(img2, i, n - 3 + i, tau3)
    return "LW", img1, img2


def _table_lw_W(n, P):
    a11 = P("alpha_1_1")
    img1 = {}
    _add(img1, 1, 1, a11)
    _add(img1, 1, n - 1, P(f"alpha_1_{n-1}"))
    _add(img1, 1, n, P(f"alpha_1_{n}"))
    for i in range(2, n + 1):
        _add(img1, i, i, i * a11)
        for k in range(n - 2, n + 1):
            if k + i - 2 <= n:
                _add(img1, i, k + i - 2, P(f"alpha_2_{k}"))
    tau2, tau3 = P("tau_2"), P("tau_3")
    img2 = _diag(n)
    _add(img2, 2, n - 2, tau2)
    _add(img2, 2, n - 1, tau3)
    _add(img2, 3, n - 1, tau2)
    _add(img2, 3, n, tau3)
    _add(img2, 4, n, tau2)
    return "LW", img1, img2


def _table_lw_N(n, P):
    a3, a4 = P("alpha_3"), P("alpha_4")
    g, g1, g2, g3, g4 = (P(k) for k in ("gamma", "gamma_1", "gamma_2", "gamma_3", "gamma_4"))
    img1 = _diag(n)
    _add(img1, 2, n - 2, a3)
    _add(img1, 2, n - 1, a4)
    _add(img1, 3, n - 1, a3)
    _add(img1, 3, n, a4)
    _add(img1, 4, n, a3)
    img2 = {}
    _add(img2, 1, 1, g)
    _add(img2, 1, n - 1, g1)
    _add(img2, 1, n, g2)
    _add(img2, 2, 2, 2 * g)
    _add(img2, 2, n - 2, g3)
    _add(img2, 2, n - 1, g4)
    _add(img2, 2, n, Fraction(n - 4, (n - 3) * (n - 2)) * g1)
    _add(img2, 3, 3, 3 * g)
    _add(img2, 3, n - 1, g3)
    _add(img2, 3, n, g4)
    _add(img2, 4, 4, 4 * g)
    _add(img2, 4, n, g3)
    for i in range(5, n + 1):
        _add(img2, i, i, i * g)
    return "LW", img1, img2


def _table_lw_N_swapped(n, P):
    kind, img1, img2 = _table_lw_N(n, P)
    return kind, img2, img1


EXTENSION_TABLES = {
    "lr_l": _table_lr_L,
    "lr_r": _table_lr_R,
    "lr_n": _table_lr_N,
    "lw_l": _table_lw_L,
    "lw_w": _table_lw_W,
    "lw_n": _table_lw_N,
    "lw_n_swapped": _table_lw_N_swapped,
}

# The five tables checked as a group: two for (L_n, R_n), two for (L_n, W_n), and the joint one.
PRIMARY_TABLES = ("lr_l", "lr_r", "lw_l", "lw_w", "lw_n")


def table_actions(table_id, n, params=None):
    """(pair kind, image dict for bracket 1, image dict for bracket 2, formal parameter names)."""
    key = table_id.lower()
    if key not in EXTENSION_TABLES:
        raise FamilyError(f"unknown extension table {table_id!r}")
    _need(n, 7, "extension tables")
    P = _Params(params)
    kind, img1, img2 = EXTENSION_TABLES[key](n, P)
    return kind, img1, img2, P.formal()


def make_extension_table(table_id, n, params=None):
    """The (n+1)-dimensional algebra N + span{x} with x acting as displayed."""
    kind, img1, img2, formal = table_actions(table_id, n, params)
    base = make_pair(kind, n)
    x = n + 1

    def extend(t, img):
        table = {p: dict(r) for p, r in t.constants.items()}
        for i, out in img.items():
            out = {k: c for k, c in out.items() if c != 0}
            if out:
                table[(i, x)] = out
        return BracketTensor(n + 1, table)

    labels = tuple(f"e{i}" for i in range(1, n + 1)) + ("x",)
    return CompatAlgebra(n + 1, extend(base.bracket1, img1), extend(base.bracket2, img2), labels, formal)

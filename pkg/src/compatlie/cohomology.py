"""2-cochains with adjoint coefficients: cocycle tests, the Psi_{k,r} family,
compatible cocycle pairs and linear deformations.

The cocycle condition for phi against a bracket mu is
circle(mu, phi) + circle(phi, mu) = 0, which is the t-linear part of the
Jacobi residual of mu + t*phi.
"""
from __future__ import annotations

from math import comb

from .algebra import (
    CompatAlgebra,
    JacobiError,
    TwoCochain,
    _add_residuals,
    check_jacobi,
    circle,
)
from .structure import nilindex

__all__ = [
    "circle",
    "cocycle_residual",
    "is_lie_2cocycle",
    "z2_dimension",
    "z2_space",
    "delta_set",
    "make_psi",
    "psi_value",
    "compat_pair_residual",
    "compat_2cocycle_pair",
    "linear_deformation",
    "pencil_nilindex_bound",
    "CocycleError",
    "NotNilpotentError",
]


class CocycleError(ValueError):
    pass


class NotNilpotentError(ValueError):
    pass


def cocycle_residual(g, phi):
    return _add_residuals(circle(g, phi), circle(phi, g))


def is_lie_2cocycle(g, phi):
    rep = check_jacobi(g)
    if not rep.holds:
        raise JacobiError(1, rep)
    return not cocycle_residual(g, phi)


def _cochain_coords(n):
    return [(i, j, k) for i in range(1, n + 1) for j in range(i + 1, n + 1) for k in range(1, n + 1)]


def _unit_cochain(n, i, j, k):
    return TwoCochain(n, {(i, j): {k: 1}})


def z2_space(g):
    """Kernel of the linear map phi -> circle(g,phi) + circle(phi,g).

    Returns (coordinate list, Subspace); coordinate c stands for phi(e_i,e_j) = e_k.
    """
    from .linalg import kernel

    if g.is_parametric():
        raise ValueError("z2_space needs a parameter-free bracket")
    n = g.dim
    coords = _cochain_coords(n)
    rows = {}
    for col, (i, j, k) in enumerate(coords):
        res = cocycle_residual(g, _unit_cochain(n, i, j, k))
        for key, vec in res.items():
            for m, c in vec.items():
                rows.setdefault((key, m), {})[col] = c
    return coords, kernel(list(rows.values()), len(coords))


def z2_dimension(g):
    return z2_space(g)[1].dim


def delta_set(n):
    """Pairs (k, r) with 1 <= k <= n-1 and 2k+1 < r <= n, plus ((n-1)/2, n) for odd n."""
    out = [(k, r) for k in range(1, n) for r in range(2 * k + 2, n + 1)]
    if n % 2 == 1:
        extra = ((n - 1) // 2, n)
        if extra not in out:
            out.append(extra)
    return sorted(out)


def psi_value(k, r, i, j, orientation="lower"):
    """Coefficient of Psi_{k,r}(e_i, e_j) on e_{i+j+r-2k-1} for 1 <= i <= k < j.

    ``orientation="lower"`` uses binom(j-k-1, k-i); ``"upper"`` uses
    binom(k-i, j-k-1).  Only the first gives cocycles of the model filiform
    algebra in general.
    """
    if not (1 <= i <= k < j):
        return 0
    if orientation == "lower":
        b = comb(j - k - 1, k - i)
    elif orientation == "upper":
        b = comb(k - i, j - k - 1)
    else:
        raise ValueError("orientation must be 'lower' or 'upper'")
    return (-1) ** (k - i) * b


def make_psi(n, k, r, orientation="lower", check=True):
    """Psi_{k,r} as a cochain on the model filiform algebra with basis e_0..e_n.

    e_j is stored at index j+1; products landing beyond e_n are dropped.
    """
    if check and (k, r) not in delta_set(n):
        raise CocycleError(f"({k}, {r}) is not in the index set for n = {n}")
    table = {}
    for i in range(1, k + 1):
        for j in range(k + 1, n + 1):
            c = psi_value(k, r, i, j, orientation)
            target = i + j + r - 2 * k - 1
            if c and 1 <= target <= n:
                table[(i + 1, j + 1)] = {target + 1: c}
    return TwoCochain(n + 1, table)


def compat_pair_residual(a, phi, psi):
    """Twelve-term mixed condition linking (phi, psi) with (bracket1, bracket2)."""
    return _add_residuals(circle(phi, a.bracket2), circle(a.bracket2, phi),
                          circle(psi, a.bracket1), circle(a.bracket1, psi))


def compat_2cocycle_pair(a, phi, psi):
    if cocycle_residual(a.bracket1, phi) or cocycle_residual(a.bracket2, psi):
        return False
    return not compat_pair_residual(a, phi, psi)


def linear_deformation(a, phi, psi, t):
    """(bracket1 + t*phi, bracket2 + t*psi); (phi, psi) must be a compatible cocycle pair."""
    if not compat_2cocycle_pair(a, phi, psi):
        raise CocycleError("(phi, psi) is not a compatible 2-cocycle pair")
    from .scalar import as_scalar

    t = as_scalar(t)
    if t == 0:
        return a
    b1 = a.bracket1 + phi.scale(t)
    b2 = a.bracket2 + psi.scale(t)
    return CompatAlgebra(a.dim, b1, b2, a.labels)


def pencil_nilindex_bound(a, l1, l2, m1, m2):
    """Nilindex of (l1*b1 + l2*b2, m1*b1 + m2*b2); never exceeds that of a."""
    k = nilindex(a)
    if k is None:
        raise NotNilpotentError("the algebra is not nilpotent")
    b1 = a.bracket1.scale(l1) + a.bracket2.scale(l2)
    b2 = a.bracket1.scale(m1) + a.bracket2.scale(m2)
    return nilindex(CompatAlgebra(a.dim, b1, b2, a.labels))

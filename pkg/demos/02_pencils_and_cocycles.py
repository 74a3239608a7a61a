"""Pairs of filiform brackets and the cocycles that relate them.

(L_n, R_n) and (L_n, W_n) are compatible for every n.  (R_n, W_n) is
compatible only for n <= 8: the obstruction is the symmetrized circle
product of the two cocycles R_n - L_n and W_n - L_n, whose first nonzero
value lands on e_9.
"""
from compatlie.algebra import check_compatibility, circle, jacobiator, pencil
from compatlie.cohomology import cocycle_residual, delta_set, is_lie_2cocycle, make_psi
from compatlie.families import make_Ln, make_model_filiform, make_pair, make_Rn, make_Wn
from compatlie.scalar import format_scalar

for n in range(7, 13):
    verdicts = {kind: check_compatibility(make_pair(kind, n)).holds for kind in ("LR", "LW", "RW")}
    print(f"n={n:2d}", "  ".join(f"{k}: {'compatible' if v else 'not compatible'}" for k, v in verdicts.items()))

res = jacobiator(pencil(make_pair("RW", 9), "l1", "l2"))
(i, j, k), v = min(res.items())
m = min(v)
print(f"pencil Jacobi residual of (R_9, W_9) at (e{i},e{j},e{k}) on e{m}: {format_scalar(v[m])}")

L = make_Ln(10)
pr, pw = make_Rn(10) - L, make_Wn(10) - L
print("Psi_R o Psi_R vanishes:", circle(pr, pr) == {})
print("Psi_W o Psi_W vanishes:", circle(pw, pw) == {})
print("cross term has", len(cocycle_residual(pr, pw)), "nonzero triples")

n = 9
mu = make_model_filiform(n)
pairs = delta_set(n)
good = sum(is_lie_2cocycle(mu, make_psi(n, k, r)) for k, r in pairs)
print(f"Psi_(k,r) cocycles of the model filiform algebra, n={n}: {good}/{len(pairs)}")

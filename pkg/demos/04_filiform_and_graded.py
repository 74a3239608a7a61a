"""Filiform compatible algebras, adapted bases and the 7-dimensional graded case.

The series s = (n_1, ..., n_t) of L_s is recovered from the algebra alone,
even after a change of basis.  The graded classification replays the
constraint derivation and reports where the displayed F2 table breaks.
"""
from compatlie.families import make_Ls
from compatlie.filiform import adapted_basis, associated_graded, change_basis, is_filiform
from compatlie.filiform import verify_graded_7dim_classification
from compatlie.scalar import format_scalar

for s in ((3, 3), (2, 2, 2), (4, 1, 3)):
    a = make_Ls(s)
    n = a.dim
    shear = [[int(i == j) + int(j == i + 1) for j in range(n)] for i in range(n)]
    b = change_basis(a, shear)
    ab = adapted_basis(b, seed=1)
    g = associated_graded(b)
    print(f"L_{s}: filiform={is_filiform(b)} recovered series={ab.series.n_values} "
          f"graded degrees={g.degrees}")

r = verify_graded_7dim_classification()
for k, how in r.constraint_match.items():
    print(f"constraint ({k}) found: {how}")
print("delta = 1 branch:", r.delta_one.status)
print("lambda = 0 branch:", r.lambda_zero.status, "| lambda != 0 branch:", r.lambda_nonzero.status)
print("F1 compatible:", r.f1_compatible)
for triple, m, res in r.f2_residual:
    names = ",".join(f"X{t - 1}" for t in triple)
    print(f"F2 second bracket Jacobi residual at ({names}) on X{m - 1}: {format_scalar(res)}")

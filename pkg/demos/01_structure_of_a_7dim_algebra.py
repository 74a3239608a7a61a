"""A 7-dimensional compatible Lie algebra that is solvable but not nilpotent.

Two ideals are each nilpotent, yet their sum is not, and the square of one
of them fails to be an ideal.
"""
from compatlie.algebra import check_compatibility
from compatlie.families import make_paper_example
from compatlie.linalg import Subspace
from compatlie.structure import center, commutator_subspace, ideal_is_nilpotent, is_ideal, lower_central_series


def span(n, idx):
    return Subspace.span_of_units(n, [i - 1 for i in idx])


def show(S, labels):
    return "span{" + ", ".join(labels[p] for p in S.pivots) + "}" if S.dim else "0"


a = make_paper_example("example7")
print("compatible:", check_compatibility(a).holds)

s = lower_central_series(a)
print("lower central dims:", s.dims, "stabilizes at", show(s.terms[-1], a.labels))

I1, I2 = span(7, [1, 2, 4, 5, 6, 7]), span(7, [2, 3, 4, 5, 6, 7])
for name, I in (("I1", I1), ("I2", I2), ("I1 + I2", I1 + I2)):
    print(f"{name}: ideal={is_ideal(a, I)} nilpotent={ideal_is_nilpotent(a, I)}")

I22 = commutator_subspace(a, I2, I2)
print("[[I2, I2]] =", show(I22, a.labels))
print("its second-bracket product with L =", show(commutator_subspace(a, I22, Subspace.full(7), which=2), a.labels))
print("[[I2, I2]] is an ideal:", is_ideal(a, I22))
print("center:", show(center(a), a.labels))

"""Solvable extensions of nilpotent compatible algebras.

A one-dimensional extension table is instantiated at random rational
parameters and certified.  The rank-2 probes show that no two-dimensional
extension of the same shape exists, and the last part shows an algebra
whose common derivations are all nilpotent but which still has a solvable
extension.
"""
import random
from fractions import Fraction

from compatlie.algebra import check_compatibility, extract_constraints
from compatlie.derivations import compat_derivation_space, diagonal_derivations, space_is_nil
from compatlie.extensions import nonexistence_probe, torus_extension
from compatlie.families import make_extension_table, make_Ls, make_pair, make_paper_example, table_actions
from compatlie.linalg import Subspace
from compatlie.structure import is_nilpotent, is_solvable, verify_nilradical

rng = random.Random(0)
n = 8
names = table_actions("lw_w", n)[3]
sigma = {p: Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for p in names}
a = make_extension_table("lw_w", n, sigma)
N = Subspace.span_of_units(a.dim, range(n))
print(f"lw_w at n={n}: compatible={check_compatibility(a).holds} solvable={is_solvable(a)} "
      f"nilpotent={is_nilpotent(a)} nilradical certified={verify_nilradical(a, N)}")

# the generators are x (index 8) and y (index 9); each probe is shown at one obstruction
for kind, triple, m in (("LR", (2, 4, 9), 6), ("LW", (2, 3, 8), 5)):
    probe = nonexistence_probe(make_pair(kind, 7), 2)
    (w,) = probe.witnesses("mixed", triple, m)
    print(f"{kind}7 rank-2 probe: {probe.reduced.status}; {w.describe(probe.algebra.labels)}, "
          "a nonzero constant")

base = make_paper_example("existcc", 7)
print("all common derivations nilpotent:", space_is_nil(compat_derivation_space(base)))
R = make_paper_example("existcc_R")
print("extension with formal a1..a4 has", len(extract_constraints(R)), "compatibility constraints")

Ls = make_Ls((3, 3))
tor = diagonal_derivations(compat_derivation_space(Ls)).basis
for k in range(1, 5):
    D, Dp = tor[: min(k, 2)], tor[: k - min(k, 2)]
    ext = torus_extension(Ls, D, Dp)
    print(f"L_(3,3) torus extension of rank {k}: dim {ext.dim}, solvable {is_solvable(ext)}")

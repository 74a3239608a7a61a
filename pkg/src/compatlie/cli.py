"""Command-line interface.

Exit codes: 0 when every verdict is positive, 1 when a checked mathematical
property fails, 2 for input or usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from .algebra import (
    CompatAlgebra,
    ParametricError,
    check_jacobi,
    extract_constraints,
    mixed_jacobiator,
    residual_report,
)
from .constraints import reduce_constraints
from .linalg import Subspace
from .scalar import ScalarSyntaxError, format_scalar, parse_scalar
from .serialize import FormatError, load_algebra, parse_extension_spec, serialize_algebra

__all__ = ["main", "build_parser", "UsageError"]


class UsageError(ValueError):
    pass


class Report:
    """Ordered verdicts, details and witnesses for one command."""

    def __init__(self, argv, seed):
        self.command = list(argv)
        self.seed = seed
        self.verdicts = []
        self.details = []
        self.witnesses = []
        self.timings = []

    def verdict(self, name, ok):
        self.verdicts.append((name, bool(ok)))

    def detail(self, name, value):
        self.details.append((name, value))

    def witness(self, name, text):
        self.witnesses.append((name, text))

    @property
    def ok(self):
        return all(v for _, v in self.verdicts)

    def as_json(self):
        obj = {
            "command": self.command,
            "seed": self.seed,
            "verdicts": [{"name": n, "holds": v} for n, v in self.verdicts],
            "details": [{"name": n, "value": v} for n, v in self.details],
            "witnesses": [{"check": n, "witness": w} for n, w in self.witnesses],
        }
        if self.timings:
            obj["timings"] = [{"step": n, "seconds": round(t, 3)} for n, t in self.timings]
        return json.dumps(obj, indent=2, ensure_ascii=False)

    def as_text(self):
        lines = ["$ " + " ".join(self.command), f"seed: {self.seed}"]
        for n, v in self.details:
            lines.append(f"{n}: {v}")
        for n, v in self.verdicts:
            lines.append(f"[{'PASS' if v else 'FAIL'}] {n}")
        for n, w in self.witnesses:
            lines.append(f"  witness ({n}): {w}")
        for n, t in self.timings:
            lines.append(f"time {n}: {t:.3f}s")
        return "\n".join(lines)


# -- formatting helpers ----------------------------------------------------------

def _vec(v, labels):
    """Sparse 1-based or dense vector as 'c*label + ...'."""
    if isinstance(v, (list, tuple)):
        v = {i + 1: x for i, x in enumerate(v) if x != 0}
    if not v:
        return "0"
    parts = []
    for k in sorted(v):
        c = format_scalar(v[k])
        if c in ("1", "-1"):
            parts.append(c[:-1] + labels[k - 1])
        elif " " in c:
            parts.append(f"({c})*{labels[k - 1]}")
        else:
            parts.append(f"{c}*{labels[k - 1]}")
    return " + ".join(parts).replace("+ -", "- ")


def _span(S, labels):
    if S.dim == 0:
        return "0"
    return "span{" + ", ".join(_vec(list(r), labels) for r in S.basis) + "}"


def _identity_witnesses(report, rep, name, labels):
    for triple, m, res in rep.witnesses:
        tri = ",".join(labels[t - 1] for t in triple)
        report.witness(name, f"({tri}) @ {labels[m - 1]}: {format_scalar(res)}")
    if rep.count > len(rep.witnesses):
        report.witness(name, f"... {rep.count - len(rep.witnesses)} more")


def _rational(a, what):
    if a.is_parametric():
        raise UsageError(f"{what} needs a parameter-free algebra; the file declares {list(a.parameters)}")
    return a


def _matrix_text(m, labels):
    cols = []
    for j in range(len(m)):
        img = {k + 1: m[k][j] for k in range(len(m)) if m[k][j] != 0}
        if img:
            cols.append(f"{labels[j]} -> {_vec(img, labels)}")
    return "; ".join(cols) or "0"


# -- subcommands -----------------------------------------------------------------

def _compat_checks(report, a):
    reps = [("jacobi bracket1", check_jacobi(a.bracket1)), ("jacobi bracket2", check_jacobi(a.bracket2)),
            ("mixed jacobi", residual_report(mixed_jacobiator(a), "mixed"))]
    for name, rep in reps:
        report.verdict(name, rep.holds)
        _identity_witnesses(report, rep, name, a.labels)
    return all(r.holds for _, r in reps)


def cmd_check(args, report):
    a = load_algebra(args.file)
    report.detail("dimension", a.dim)
    if a.is_parametric():
        report.detail("parameters", ", ".join(a.parameters))
    _compat_checks(report, a)


def _series_details(report, a):
    from .structure import derived_series, lower_central_series

    lcs = lower_central_series(a)
    ds = derived_series(a)
    report.detail("lower central dims", " ".join(map(str, lcs.dims)))
    report.detail("derived dims", " ".join(map(str, ds.dims)))
    report.detail("nilpotent", "yes" if lcs.reaches_zero else "no")
    if lcs.reaches_zero:
        report.detail("nilindex", lcs.index)
    report.detail("solvable", "yes" if ds.reaches_zero else "no")
    if not lcs.reaches_zero:
        report.detail("stable term", _span(lcs.terms[-1], a.labels))
    return lcs, ds


def cmd_series(args, report):
    a = _rational(load_algebra(args.file), "series")
    _series_details(report, a)


def cmd_center(args, report):
    from .structure import center

    a = _rational(load_algebra(args.file), "center")
    Z = center(a)
    report.detail("center dim", Z.dim)
    report.detail("center", _span(Z, a.labels))


def cmd_derivations(args, report):
    from .derivations import compat_derivation_space, diagonal_derivations, inner_derivations

    a = _rational(load_algebra(args.file), "derivations")
    if args.inner:
        for which in (1, 2):
            sp = inner_derivations(a.bracket(which))
            report.detail(f"inner derivations of bracket{which} dim", sp.dim)
        return
    sp = compat_derivation_space(a)
    if args.diagonal:
        sp = diagonal_derivations(sp)
        report.detail("diagonal torus dim", sp.dim)
    else:
        report.detail("derivation space dim", sp.dim)
    for idx, d in enumerate(sp.basis, start=1):
        report.detail(f"d{idx}", _matrix_text(d, a.labels))


def cmd_cocycles(args, report):
    from .cohomology import CocycleError, compat_2cocycle_pair, cocycle_residual, compat_pair_residual, make_psi

    a = _rational(load_algebra(args.file), "cocycles")
    if args.psi:
        k, r = args.psi
        n = a.dim - 1
        try:
            phi = make_psi(n, k, r)
        except CocycleError as err:
            raise UsageError(str(err)) from None
        jac = check_jacobi(a.bracket1)
        report.verdict("bracket1 is a Lie bracket", jac.holds)
        if not jac.holds:
            return
        rep = residual_report(cocycle_residual(a.bracket1, phi), "cocycle")
        report.detail("cochain", f"Psi_{k},{r} on e_0..e_{n}")
        report.verdict(f"Psi_{k},{r} is a 2-cocycle of bracket1", rep.holds)
        _identity_witnesses(report, rep, "cocycle", a.labels)
    elif args.pair:
        p = load_algebra(args.pair)
        if p.dim != a.dim:
            raise UsageError("the cochain pair must have the algebra's dimension")
        phi, psi = p.bracket1, p.bracket2
        r1 = residual_report(cocycle_residual(a.bracket1, phi), "cocycle1")
        r2 = residual_report(cocycle_residual(a.bracket2, psi), "cocycle2")
        r3 = residual_report(compat_pair_residual(a, phi, psi), "pair")
        for name, rep in (("phi is a cocycle of bracket1", r1), ("psi is a cocycle of bracket2", r2),
                          ("mixed pair condition", r3)):
            report.verdict(name, rep.holds)
            _identity_witnesses(report, rep, name, a.labels)
        report.detail("compatible cocycle pair", "yes" if compat_2cocycle_pair(a, phi, psi) else "no")
    else:
        raise UsageError("cocycles needs --psi k r or --pair FILE")


def cmd_pencil(args, report):
    from .structure import nilindex

    a = load_algebra(args.file)
    try:
        l1, l2, m1, m2 = (parse_scalar(x) for x in (args.l1, args.l2, args.m1, args.m2))
    except (ScalarSyntaxError, ZeroDivisionError) as err:
        raise UsageError(f"bad pencil coefficient: {err}") from None
    b1 = a.bracket1.scale(l1) + a.bracket2.scale(l2)
    b2 = a.bracket1.scale(m1) + a.bracket2.scale(m2)
    b = CompatAlgebra(a.dim, b1, b2, a.labels)
    report.detail("pencil", f"({args.l1})*b1 + ({args.l2})*b2, ({args.m1})*b1 + ({args.m2})*b2")
    ok = _compat_checks(report, b)
    if ok and not a.is_parametric():
        k0, k1 = nilindex(a), nilindex(b)
        report.detail("nilindex before", k0 if k0 is not None else "not nilpotent")
        report.detail("nilindex after", k1 if k1 is not None else "not nilpotent")
        if k0 is not None:
            report.verdict("nilindex does not grow", k1 is not None and k1 <= k0)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(serialize_algebra(b))


def _constraint_details(report, cs, red, labels):
    report.detail("equations", len(cs))
    for eq in cs.equations:
        origins = "; ".join(o.describe(labels) for o in cs.origins.get(eq, [])[:3])
        report.detail(f"  {format_scalar(eq)} = 0", origins)
    report.detail("reduced status", red.status)
    for name in sorted(red.assignments):
        report.detail(f"  {name}", ":= " + format_scalar(red.assignments[name]))
    for eq in red.equations:
        report.detail("  remaining", f"{format_scalar(eq)} = 0")
    if red.status == "inconsistent":
        eq, origins = red.witness
        for o in origins:
            report.witness("contradiction", f"{o.describe(labels)} reduces to {format_scalar(eq)} = 0")


def cmd_constraints(args, report):
    a = load_algebra(args.file)
    cs = extract_constraints(a)
    red = reduce_constraints(cs)
    _constraint_details(report, cs, red, a.labels)
    report.verdict("constraints are consistent", red.status != "inconsistent")


def cmd_extend(args, report):
    from .extensions import ExtensionError, build_semidirect
    from .structure import is_nilpotent, is_solvable, verify_nilradical

    base = load_algebra(args.file)
    with open(args.spec, encoding="utf-8") as fh:
        spec = parse_extension_spec(fh.read(), base)
    try:
        b = build_semidirect(spec)
    except ExtensionError as err:
        report.verdict("extension conditions", False)
        report.witness("extension", str(err))
        return
    report.verdict("extension conditions", True)
    report.verdict("compatible", True)
    report.detail("dimension", b.dim)
    if not b.is_parametric():
        report.verdict("solvable", is_solvable(b))
        report.detail("nilpotent", "yes" if is_nilpotent(b) else "no")
        if is_nilpotent(base) and is_solvable(b):
            N = Subspace.span_of_units(b.dim, range(base.dim))
            report.verdict("base is the special nilradical", verify_nilradical(b, N, seed=args.seed))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(serialize_algebra(b))


def cmd_nonexistence(args, report):
    from .extensions import nonexistence_probe

    base = _rational(load_algebra(args.file), "nonexistence")
    probe = nonexistence_probe(base, args.rank)
    report.detail("rank", args.rank)
    report.detail("equations", len(probe.raw))
    report.detail("reduced status", probe.reduced.status)
    for o in probe.reduced.contradictions:
        labels = probe.algebra.labels
        report.witness("contradiction", o.describe(labels))
    report.verdict("no extension of this shape exists", probe.inconsistent)


FAMILY_HELP = ("ln, rn, wn, model (n); lr, lw, rw (pairs, n); ls (series such as 3,3); "
               "example7, existcc (n), existcc_R, F1, F2, graded7; lr_l, lr_r, lr_n, lw_l, lw_w, lw_n (n)")


def build_family(name, arg):
    from . import families as fam

    key = name.lower()
    if key == "ls":
        return fam.make_Ls(tuple(int(x) for x in arg.split(",")))
    n = int(arg) if arg is not None else None
    if key == "model":
        ls = fam.make_Ls((n,))
        return CompatAlgebra.from_tensors(ls.bracket1, labels=ls.labels)
    single = {"ln": fam.make_Ln, "rn": fam.make_Rn, "wn": fam.make_Wn}
    if key in single:
        if n is None:
            raise UsageError(f"family {name} needs n")
        t = single[key](n)
        return t if isinstance(t, CompatAlgebra) else CompatAlgebra.from_tensors(t)
    if key in ("lr", "lw", "rw"):
        return fam.make_pair(key.upper(), n)
    if key in fam.EXTENSION_TABLES:
        return fam.make_extension_table(key, n)
    return fam.make_paper_example(name, n)


def cmd_families(args, report):
    from .families import FamilyError

    try:
        a = build_family(args.name, args.n)
    except (FamilyError, KeyError, ValueError) as err:
        raise UsageError(f"cannot build {args.name}: {err}") from None
    text = serialize_algebra(a)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        report.detail("written", args.output)
    else:
        report.raw = text
    report.detail("dimension", a.dim)


def cmd_report(args, report):
    from .derivations import compat_derivation_space, diagonal_derivations
    from .structure import center

    a = load_algebra(args.file)
    report.detail("dimension", a.dim)
    report.detail("basis", " ".join(a.labels))
    t0 = time.perf_counter()
    ok = _compat_checks(report, a)
    report.timings.append(("compatibility", time.perf_counter() - t0))
    if a.is_parametric():
        report.detail("parameters", ", ".join(a.parameters))
        if not ok:
            cs = extract_constraints(a)
            _constraint_details(report, cs, reduce_constraints(cs), a.labels)
        return
    t0 = time.perf_counter()
    lcs, _ = _series_details(report, a)
    Z = center(a)
    report.detail("center", _span(Z, a.labels))
    report.timings.append(("structure", time.perf_counter() - t0))
    if not ok:
        return
    t0 = time.perf_counter()
    sp = compat_derivation_space(a)
    report.detail("derivation space dim", sp.dim)
    report.detail("diagonal torus dim", diagonal_derivations(sp).dim)
    report.timings.append(("derivations", time.perf_counter() - t0))
    if lcs.reaches_zero:
        from .filiform import AdaptedBasisError, adapted_basis, is_filiform

        fil = is_filiform(a)
        report.detail("filiform", "yes" if fil else "no")
        if fil:
            try:
                ab = adapted_basis(a, seed=args.seed)
                report.detail("series", ",".join(map(str, ab.series.n_values)))
                report.detail("brackets swapped", "yes" if ab.swapped else "no")
            except AdaptedBasisError as err:
                report.detail("adapted basis", str(err))


# -- parser ------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="compatlie", description="Exact computations with compatible Lie algebras.")
    p.add_argument("--json", action="store_true", help="emit a JSON dossier")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized witnesses (default 0)")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings (not reproducible)")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("check", help="Jacobi identities and the mixed identity")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("series", help="lower central and derived series")
    s.add_argument("file")
    s.set_defaults(func=cmd_series)

    s = sub.add_parser("center", help="center of both brackets")
    s.add_argument("file")
    s.set_defaults(func=cmd_center)

    s = sub.add_parser("derivations", help="derivations of both brackets")
    s.add_argument("file")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--diagonal", action="store_true", help="diagonal torus only")
    g.add_argument("--inner", action="store_true", help="inner derivations of each bracket")
    s.set_defaults(func=cmd_derivations)

    s = sub.add_parser("cocycles", help="2-cocycle checks")
    s.add_argument("file")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--psi", nargs=2, type=int, metavar=("K", "R"), help="Psi_{K,R} against bracket1")
    g.add_argument("--pair", metavar="FILE", help="cochain pair stored as bracket1/bracket2 of FILE")
    s.set_defaults(func=cmd_cocycles)

    s = sub.add_parser("pencil", help="check (l1 b1 + l2 b2, m1 b1 + m2 b2)")
    s.add_argument("file")
    for name in ("l1", "l2", "m1", "m2"):
        s.add_argument(name)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_pencil)

    s = sub.add_parser("constraints", help="extract and reduce parameter constraints")
    s.add_argument("file")
    s.set_defaults(func=cmd_constraints)

    s = sub.add_parser("extend", help="build a semidirect extension")
    s.add_argument("file")
    s.add_argument("--spec", required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_extend)

    s = sub.add_parser("nonexistence", help="generic extension probe")
    s.add_argument("file")
    s.add_argument("--rank", type=int, required=True, choices=(1, 2))
    s.set_defaults(func=cmd_nonexistence)

    s = sub.add_parser("families", help="write a named family member", description=FAMILY_HELP)
    s.add_argument("name")
    s.add_argument("n", nargs="?")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_families)

    s = sub.add_parser("report", help="full dossier")
    s.add_argument("file")
    s.set_defaults(func=cmd_report)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return 0 if err.code == 0 else 2
    report = Report(["compatlie"] + argv, args.seed)
    report.raw = None
    try:
        t0 = time.perf_counter()
        args.func(args, report)
        total = time.perf_counter() - t0
    except (FormatError, UsageError, ParametricError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    if args.timings:
        report.timings.append(("total", total))
    else:
        report.timings = []
    if report.raw is not None and not args.json:
        out.write(report.raw)
    elif args.json:
        out.write(report.as_json() + "\n")
    else:
        out.write(report.as_text() + "\n")
    return 0 if report.ok else 1


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()

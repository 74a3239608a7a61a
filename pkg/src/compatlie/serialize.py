"""JSON file format for compatible algebras and extension specs.

An algebra file looks like::

    {
      "dimension": 3,
      "basis": ["e1", "e2", "e3"],
      "parameters": [],
      "bracket1": [{"i": 1, "j": 2, "terms": [{"k": 3, "c": "1"}]}],
      "bracket2": []
    }

Indices are 1-based with i < j; coefficients are strings in the scalar
grammar so that rationals and parameters survive exactly.
"""
from __future__ import annotations

import json
from importlib import resources

from .algebra import BracketTensor, CompatAlgebra
from .scalar import ScalarSyntaxError, format_scalar, natural_key, parse_scalar

__all__ = [
    "FormatError",
    "parse_algebra",
    "serialize_algebra",
    "load_algebra",
    "save_algebra",
    "parse_extension_spec",
    "serialize_extension_spec",
    "shipped_example",
]

ALGEBRA_FIELDS = ("dimension", "basis", "parameters", "bracket1", "bracket2")
RECORD_FIELDS = ("i", "j", "terms")
TERM_FIELDS = ("k", "c")
SPEC_FIELDS = ("generators", "generator_brackets")
GENERATOR_FIELDS = ("label", "D1", "D2")


class FormatError(ValueError):
    """Input that does not conform to the file format.

    ``line`` and ``column`` are set for JSON syntax errors; ``path`` names
    the offending field otherwise.
    """

    def __init__(self, message, path="", line=None, column=None):
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        elif path:
            where = f" at {path}"
        super().__init__(message + where)
        self.path = path
        self.line = line
        self.column = column


def _load_json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise FormatError(f"JSON syntax error: {err.msg}", line=err.lineno, column=err.colno) from None


def _fields(obj, allowed, required, path):
    if not isinstance(obj, dict):
        raise FormatError("expected an object", path)
    extra = sorted(set(obj) - set(allowed))
    if extra:
        raise FormatError(f"unknown field(s) {extra}", path)
    missing = [f for f in required if f not in obj]
    if missing:
        raise FormatError(f"missing field(s) {missing}", path)


def _int(x, path, low, high):
    if not isinstance(x, int) or isinstance(x, bool):
        raise FormatError("expected an integer", path)
    if not low <= x <= high:
        raise FormatError(f"index {x} out of range {low}..{high}", path)
    return x


def _coefficient(text, allowed, path):
    if not isinstance(text, str):
        raise FormatError("coefficients must be strings", path)
    try:
        return parse_scalar(text, allowed)
    except ScalarSyntaxError as err:
        raise FormatError(str(err), path) from None
    except KeyError as err:
        raise FormatError(f"undeclared name in coefficient ({err.args[0]})", path) from None


def _parse_records(records, dim, allowed, path):
    if not isinstance(records, list):
        raise FormatError("expected a list of product records", path)
    table = {}
    seen = set()
    for r, rec in enumerate(records):
        rp = f"{path}[{r}]"
        _fields(rec, RECORD_FIELDS, RECORD_FIELDS, rp)
        i = _int(rec["i"], rp + ".i", 1, dim)
        j = _int(rec["j"], rp + ".j", 1, dim)
        if i >= j:
            raise FormatError("records need i < j", rp)
        if not isinstance(rec["terms"], list):
            raise FormatError("expected a list of terms", rp + ".terms")
        for t, term in enumerate(rec["terms"]):
            tp = f"{rp}.terms[{t}]"
            _fields(term, TERM_FIELDS, TERM_FIELDS, tp)
            k = _int(term["k"], tp + ".k", 1, dim)
            if (i, j, k) in seen:
                raise FormatError(f"duplicate coefficient for ({i}, {j}, {k})", tp)
            seen.add((i, j, k))
            c = _coefficient(term["c"], allowed, tp + ".c")
            if c != 0:
                table.setdefault((i, j), {})[k] = c
    return BracketTensor(dim, table)


def _algebra_from_obj(obj, path=""):
    _fields(obj, ALGEBRA_FIELDS, ("dimension", "bracket1", "bracket2"), path)
    dim = obj["dimension"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise FormatError("dimension must be a non-negative integer", path + ".dimension")
    basis = obj.get("basis")
    if basis is not None:
        if not isinstance(basis, list) or not all(isinstance(b, str) for b in basis):
            raise FormatError("basis must be a list of strings", path + ".basis")
        if len(basis) != dim:
            raise FormatError(f"basis has {len(basis)} labels for dimension {dim}", path + ".basis")
        if len(set(basis)) != dim:
            raise FormatError("basis labels must be distinct", path + ".basis")
    params = obj.get("parameters", [])
    if not isinstance(params, list) or not all(isinstance(p, str) for p in params):
        raise FormatError("parameters must be a list of names", path + ".parameters")
    allowed = set(params)
    b1 = _parse_records(obj["bracket1"], dim, allowed, path + ".bracket1")
    b2 = _parse_records(obj["bracket2"], dim, allowed, path + ".bracket2")
    return CompatAlgebra(dim, b1, b2, basis, tuple(params))


def parse_algebra(text):
    """Validated CompatAlgebra from the JSON text of an algebra file."""
    return _algebra_from_obj(_load_json(text))


def _records(t):
    out = []
    for (i, j) in sorted(t.constants):
        v = t.constants[(i, j)]
        out.append({"i": i, "j": j, "terms": [{"k": k, "c": format_scalar(v[k])} for k in sorted(v)]})
    return out


def _algebra_obj(a):
    return {
        "dimension": a.dim,
        "basis": list(a.labels),
        "parameters": list(a.parameters),
        "bracket1": _records(a.bracket1),
        "bracket2": _records(a.bracket2),
    }


def _dump(obj):
    """Top-level keys one per line; list items one per line."""
    def one(x):
        return json.dumps(x, ensure_ascii=False)

    lines = []
    for key, val in obj.items():
        if isinstance(val, list) and val and isinstance(val[0], (dict, list)):
            items = ",\n".join("    " + one(v) for v in val)
            lines.append(f"  {one(key)}: [\n{items}\n  ]")
        else:
            lines.append(f"  {one(key)}: {one(val)}")
    return "{\n" + ",\n".join(lines) + "\n}\n"


def serialize_algebra(a):
    """Canonical JSON text; parse_algebra inverts it exactly."""
    return _dump(_algebra_obj(a))


def load_algebra(path):
    with open(path, encoding="utf-8") as fh:
        return parse_algebra(fh.read())


def save_algebra(a, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_algebra(a))


# -- extension specs ----------------------------------------------------------------

def _grid(m, n, allowed, path):
    if not isinstance(m, list) or len(m) != n or any(not isinstance(r, list) or len(r) != n for r in m):
        raise FormatError(f"expected a {n}x{n} grid of coefficient strings", path)
    return [[_coefficient(c, allowed, f"{path}[{r}][{s}]") for s, c in enumerate(row)] for r, row in enumerate(m)]


def parse_extension_spec(text, base):
    """ExtensionSpec over ``base`` from JSON.

    Format: {"parameters": [...], "generators": [{"label", "D1", "D2"}],
    "generator_brackets": [records1, records2]} where D1, D2 are n x n grids
    (column j is the image of e_j) and generator bracket records index the
    generators 1..r.
    """
    from .extensions import ExtensionSpec

    obj = _load_json(text)
    _fields(obj, SPEC_FIELDS + ("parameters",), ("generators",), "")
    params = obj.get("parameters", [])
    if not isinstance(params, list) or not all(isinstance(p, str) for p in params):
        raise FormatError("parameters must be a list of names", ".parameters")
    allowed = set(params) | set(base.parameters)
    gens = []
    if not isinstance(obj["generators"], list):
        raise FormatError("expected a list of generators", ".generators")
    for g, gen in enumerate(obj["generators"]):
        gp = f".generators[{g}]"
        _fields(gen, GENERATOR_FIELDS, GENERATOR_FIELDS, gp)
        if not isinstance(gen["label"], str):
            raise FormatError("label must be a string", gp + ".label")
        gens.append((gen["label"], _grid(gen["D1"], base.dim, allowed, gp + ".D1"),
                     _grid(gen["D2"], base.dim, allowed, gp + ".D2")))
    gb = None
    if obj.get("generator_brackets") is not None:
        raw = obj["generator_brackets"]
        if not isinstance(raw, list) or len(raw) != 2:
            raise FormatError("generator_brackets must hold two record lists", ".generator_brackets")
        r, n = len(gens), base.dim
        gb = []
        for which, records in enumerate(raw):
            t = _parse_records(records, n + r, allowed, f".generator_brackets[{which}]")
            table = {}
            for (i, j), v in t.constants.items():
                if i <= n or j <= n:
                    raise FormatError("generator brackets must pair two generators",
                                      f".generator_brackets[{which}]")
                table[(i - n, j - n)] = v
            gb.append(table)
        gb = tuple(gb)
    return ExtensionSpec(base, gens, gb)


def serialize_extension_spec(spec):
    n = spec.base.dim
    from .extensions import _images

    def grid(D):
        img = _images(D, n)
        return [[format_scalar(img.get(j, {}).get(k, 0)) for j in range(1, n + 1)] for k in range(1, n + 1)]

    params = set()
    for _, D1, D2 in spec.generators:
        for D in (D1, D2):
            for col in _images(D, n).values():
                for c in col.values():
                    if hasattr(c, "variables"):
                        params |= c.variables()
    params -= set(spec.base.parameters)
    obj = {"parameters": sorted(params, key=natural_key),
           "generators": [{"label": lab, "D1": grid(D1), "D2": grid(D2)} for lab, D1, D2 in spec.generators]}
    if spec.generator_brackets:
        r = spec.r
        obj["generator_brackets"] = [
            _records(BracketTensor(n + r, {(p + n, q + n): v for (p, q), v in (gb or {}).items()}))
            for gb in spec.generator_brackets
        ]
    return _dump(obj)


def shipped_example(name="example7"):
    """Text of a data file shipped with the package."""
    return resources.files("compatlie").joinpath("data", f"{name}.json").read_text(encoding="utf-8")

"""Structure-constant documents: validation, canonical serialisation and object resolution.

A document is JSON with top-level keys ``field``, ``algebras``, ``coalgebras``,
``entwinings``, ``corings``, ``comodules``, ``morphisms``, ``grouplikes`` and
``checks``.  Matrices are row-major arrays of scalar strings and tensor bases
are indexed left-factor-major.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from functools import cached_property

from .algebra import AModule, Algebra, Bimodule
from .coalgebra import Coalgebra
from .comodule import Comodule, comodule_from_lift, grouplike_comodule, regular_comodule
from .coring import (Coring, CoringMorphism, coring_from_entwining, coring_from_lift,
                     counit_morphism, identity_morphism, sweedler_coring, trivial_coring)
from .entwining import Entwining
from .kernel import Field, Matrix

SECTIONS = ("algebras", "coalgebras", "entwinings", "corings", "grouplikes", "comodules",
            "morphisms")
COMMANDS = ("cointegral", "galois", "principal", "connection", "injectivity", "duality", "induce")


class DocumentError(ValueError):
    """Malformed input; ``path`` locates the offending entry."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass(frozen=True)
class Document:
    field: dict
    algebras: dict = dc_field(default_factory=dict)
    coalgebras: dict = dc_field(default_factory=dict)
    entwinings: dict = dc_field(default_factory=dict)
    corings: dict = dc_field(default_factory=dict)
    grouplikes: dict = dc_field(default_factory=dict)
    comodules: dict = dc_field(default_factory=dict)
    morphisms: dict = dc_field(default_factory=dict)
    checks: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"field": self.field}
        for key in SECTIONS + ("checks",):
            out[key] = getattr(self, key)
        return out


def serialize(doc: Document) -> str:
    return json.dumps(doc.to_json(), indent=2) + "\n"


# validation --------------------------------------------------------------------


def _field_of(spec, path="field") -> Field:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise DocumentError(path, "expected an object with 'kind'")
    if spec["kind"] == "Q":
        return Field(0)
    if spec["kind"] == "Fp":
        p = spec.get("p")
        if not isinstance(p, int):
            raise DocumentError(path + ".p", "prime expected")
        try:
            return Field(p)
        except ValueError as exc:
            raise DocumentError(path + ".p", str(exc)) from None
    raise DocumentError(path + ".kind", f"unknown field kind {spec['kind']!r}")


class _Validator:
    def __init__(self, f: Field, raw: dict):
        self.f = f
        self.raw = raw

    def scalar(self, x, path):
        if isinstance(x, bool) or not isinstance(x, (str, int)):
            raise DocumentError(path, "scalar must be a string or integer")
        try:
            return self.f.format(self.f.parse(str(x)))
        except (ValueError, ZeroDivisionError) as exc:
            raise DocumentError(path, f"bad scalar {x!r}: {exc}") from None

    def vector(self, v, n, path):
        if not isinstance(v, list) or len(v) != n:
            raise DocumentError(path, f"expected a vector of length {n}")
        return [self.scalar(x, f"{path}[{i}]") for i, x in enumerate(v)]

    def matrix(self, m, rows, cols, path):
        if not isinstance(m, list) or len(m) != rows:
            got = len(m) if isinstance(m, list) else "?"
            raise DocumentError(path, f"expected {rows}x{cols} matrix, got {got} rows")
        out = []
        for i, row in enumerate(m):
            if not isinstance(row, list) or len(row) != cols:
                got = len(row) if isinstance(row, list) else "?"
                raise DocumentError(f"{path}[{i}]", f"expected {cols} entries, got {got}")
            out.append([self.scalar(x, f"{path}[{i}][{j}]") for j, x in enumerate(row)])
        return out

    def entry(self, section, name):
        sec = self.raw.get(section, {})
        if not isinstance(sec, dict) or name not in sec:
            raise DocumentError(section, f"unknown name {name!r}")
        return sec[name]

    def ref(self, obj, key, section, path):
        if key not in obj:
            raise DocumentError(path, f"missing '{key}'")
        name = obj[key]
        if not isinstance(name, str) or name not in self.raw.get(section, {}):
            raise DocumentError(f"{path}.{key}", f"unknown {section[:-1]} {name!r}")
        return name

    def integer(self, obj, key, path):
        v = obj.get(key)
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise DocumentError(f"{path}.{key}", "non-negative integer expected")
        return v

    # dimensions of referenced objects
    def algebra_dim(self, name):
        return self.entry("algebras", name)["dim"]

    def coalgebra_dim(self, name):
        return self.entry("coalgebras", name)["dim"]

    def coring_dims(self, name):
        spec = self.entry("corings", name)
        kind = spec.get("kind")
        if kind == "trivial":
            n = self.algebra_dim(spec["algebra"])
            return n, n
        if kind == "entwining":
            e = self.entry("entwinings", spec["entwining"])
            n = self.algebra_dim(e["algebra"])
            return n, n * self.coalgebra_dim(e["coalgebra"])
        if kind == "sweedler":
            # dimension depends on the subalgebra; resolved later
            return self.algebra_dim(spec["algebra"]), None
        return self.algebra_dim(spec["algebra"]), spec["dim"]


def _obj(x, path):
    if not isinstance(x, dict):
        raise DocumentError(path, "expected an object")
    return x


def parse_json(data) -> Document:
    """Validate a decoded JSON value into a canonical ``Document``."""
    data = _obj(data, "$")
    unknown = set(data) - set(SECTIONS) - {"field", "checks"}
    if unknown:
        raise DocumentError("$", f"unknown keys {sorted(unknown)}")
    f = _field_of(data.get("field"))
    field_spec = {"kind": "Q"} if f.p == 0 else {"kind": "Fp", "p": f.p}
    for sec in SECTIONS:
        _obj(data.get(sec, {}), sec)
    v = _Validator(f, data)
    out = {}

    algs = {}
    for name, spec in data.get("algebras", {}).items():
        path = f"algebras.{name}"
        spec = _obj(spec, path)
        n = v.integer(spec, "dim", path)
        algs[name] = {"dim": n, "mul": v.matrix(spec.get("mul"), n, n * n, path + ".mul"),
                      "unit": v.vector(spec.get("unit"), n, path + ".unit")}
    out["algebras"] = algs

    coalgs = {}
    for name, spec in data.get("coalgebras", {}).items():
        path = f"coalgebras.{name}"
        spec = _obj(spec, path)
        k = v.integer(spec, "dim", path)
        coalgs[name] = {"dim": k, "comul": v.matrix(spec.get("comul"), k * k, k, path + ".comul"),
                        "counit": v.matrix(spec.get("counit"), 1, k, path + ".counit")}
    out["coalgebras"] = coalgs

    ents = {}
    for name, spec in data.get("entwinings", {}).items():
        path = f"entwinings.{name}"
        spec = _obj(spec, path)
        a = v.ref(spec, "algebra", "algebras", path)
        c = v.ref(spec, "coalgebra", "coalgebras", path)
        d = v.algebra_dim(a) * v.coalgebra_dim(c)
        ents[name] = {"algebra": a, "coalgebra": c,
                      "psi": v.matrix(spec.get("psi"), d, d, path + ".psi")}
    out["entwinings"] = ents

    cors = {}
    for name, spec in data.get("corings", {}).items():
        path = f"corings.{name}"
        spec = _obj(spec, path)
        kind = spec.get("kind")
        if kind == "trivial":
            cors[name] = {"kind": kind, "algebra": v.ref(spec, "algebra", "algebras", path)}
        elif kind == "entwining":
            cors[name] = {"kind": kind, "entwining": v.ref(spec, "entwining", "entwinings", path)}
        elif kind == "sweedler":
            a = v.ref(spec, "algebra", "algebras", path)
            b = v.ref(spec, "subalgebra", "algebras", path)
            cors[name] = {"kind": kind, "algebra": a, "subalgebra": b,
                          "inclusion": v.matrix(spec.get("inclusion"), v.algebra_dim(a),
                                                v.algebra_dim(b), path + ".inclusion")}
        elif kind == "general":
            a = v.ref(spec, "algebra", "algebras", path)
            n = v.algebra_dim(a)
            d = v.integer(spec, "dim", path)
            cors[name] = {"kind": kind, "algebra": a, "dim": d,
                          "left": v.matrix(spec.get("left"), d, n * d, path + ".left"),
                          "right": v.matrix(spec.get("right"), d, d * n, path + ".right"),
                          "comul": v.matrix(spec.get("comul"), d * d, d, path + ".comul"),
                          "counit": v.matrix(spec.get("counit"), n, d, path + ".counit")}
        else:
            raise DocumentError(path + ".kind", f"unknown coring kind {kind!r}")
    out["corings"] = cors
    v.raw = dict(data, corings=cors)

    gls = {}
    for name, spec in data.get("grouplikes", {}).items():
        path = f"grouplikes.{name}"
        spec = _obj(spec, path)
        if "coalgebra" in spec:
            c = v.ref(spec, "coalgebra", "coalgebras", path)
            gls[name] = {"coalgebra": c,
                         "vector": v.vector(spec.get("vector"), v.coalgebra_dim(c), path + ".vector")}
        else:
            c = v.ref(spec, "coring", "corings", path)
            dim = v.coring_dims(c)[1]
            vec = spec.get("vector")
            if dim is None:
                dim = len(vec) if isinstance(vec, list) else -1
            gls[name] = {"coring": c, "vector": v.vector(vec, dim, path + ".vector")}
    out["grouplikes"] = gls

    comods = {}
    for name, spec in data.get("comodules", {}).items():
        path = f"comodules.{name}"
        spec = _obj(spec, path)
        kind = spec.get("kind")
        if kind == "grouplike":
            g = v.ref(spec, "grouplike", "grouplikes", path)
            if "coring" not in gls[g]:
                raise DocumentError(path + ".grouplike", "group-like of a coring expected")
            comods[name] = {"kind": kind, "grouplike": g}
            continue
        c = v.ref(spec, "coring", "corings", path)
        side = spec.get("side")
        if side not in ("left", "right"):
            raise DocumentError(path + ".side", "expected 'left' or 'right'")
        if kind == "regular":
            comods[name] = {"kind": kind, "coring": c, "side": side}
        elif kind == "general":
            n, k = v.coring_dims(c)
            if k is None:
                raise DocumentError(path + ".coring", "general comodules need a coring of known dimension")
            d = v.integer(spec, "dim", path)
            act_cols = d * n
            comods[name] = {"kind": kind, "coring": c, "side": side, "dim": d,
                            "action": v.matrix(spec.get("action"), d, act_cols, path + ".action"),
                            "coaction": v.matrix(spec.get("coaction"), d * k, d, path + ".coaction")}
        else:
            raise DocumentError(path + ".kind", f"unknown comodule kind {kind!r}")
    out["comodules"] = comods

    mors = {}
    for name, spec in data.get("morphisms", {}).items():
        path = f"morphisms.{name}"
        spec = _obj(spec, path)
        kind = spec.get("kind")
        if kind in ("identity", "counit"):
            mors[name] = {"kind": kind, "coring": v.ref(spec, "coring", "corings", path)}
        elif kind == "general":
            s = v.ref(spec, "source", "corings", path)
            t = v.ref(spec, "target", "corings", path)
            (sn, sk), (tn, tk) = v.coring_dims(s), v.coring_dims(t)
            if sk is None or tk is None:
                raise DocumentError(path, "general morphisms need corings of known dimension")
            mors[name] = {"kind": kind, "source": s, "target": t,
                          "alpha": v.matrix(spec.get("alpha"), tn, sn, path + ".alpha"),
                          "gamma": v.matrix(spec.get("gamma"), tk, sk, path + ".gamma")}
        else:
            raise DocumentError(path + ".kind", f"unknown morphism kind {kind!r}")
    out["morphisms"] = mors

    checks = _obj(data.get("checks", {}), "checks")
    refs = {"comodule": "comodules", "coalgebra": "coalgebras", "entwining": "entwinings",
            "grouplike": "grouplikes", "morphism": "morphisms"}
    raw_all = dict(data, **out)
    v.raw = raw_all
    norm_checks = {}
    for cmd, targets in checks.items():
        if cmd not in COMMANDS:
            raise DocumentError(f"checks.{cmd}", "unknown command")
        if not isinstance(targets, list):
            raise DocumentError(f"checks.{cmd}", "expected a list")
        items = []
        for i, t in enumerate(targets):
            path = f"checks.{cmd}[{i}]"
            t = _obj(t, path)
            item = {}
            for key, value in t.items():
                if key in refs:
                    item[key] = v.ref(t, key, refs[key], path)
                elif key == "with":
                    if not isinstance(value, list):
                        raise DocumentError(path + ".with", "expected a list of comodule names")
                    for j, w in enumerate(value):
                        if w not in comods:
                            raise DocumentError(f"{path}.with[{j}]", f"unknown comodule {w!r}")
                    item[key] = list(value)
                else:
                    raise DocumentError(f"{path}.{key}", "unknown key")
            items.append(item)
        norm_checks[cmd] = items
    return Document(field_spec, checks=norm_checks, **out)


def parse(text: str) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return parse_json(data)


# resolution --------------------------------------------------------------------


class Workspace:
    """Lazily built library objects for a validated document."""

    def __init__(self, doc: Document):
        self.doc = doc
        self.field = _field_of(doc.field)
        self._cache = {}

    def _mat(self, rows, ncols=None) -> Matrix:
        f = self.field
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return Matrix.from_rows(f, [[f.parse(x) for x in r] for r in rows], ncols)

    def _vec(self, v) -> tuple:
        return tuple(self.field.parse(x) for x in v)

    def _get(self, kind, name, build):
        key = (kind, name)
        if key not in self._cache:
            section = getattr(self.doc, kind)
            if name not in section:
                raise DocumentError(kind, f"unknown name {name!r}")
            self._cache[key] = build(name, section[name])
        return self._cache[key]

    def algebra(self, name) -> Algebra:
        def build(name, s):
            n = s["dim"]
            return Algebra(self.field, n, self._mat(s["mul"], n * n), self._vec(s["unit"]), name)
        return self._get("algebras", name, build)

    def coalgebra(self, name) -> Coalgebra:
        def build(name, s):
            k = s["dim"]
            return Coalgebra(self.field, k, self._mat(s["comul"], k), self._mat(s["counit"], k), name)
        return self._get("coalgebras", name, build)

    def entwining(self, name) -> Entwining:
        def build(name, s):
            a, c = self.algebra(s["algebra"]), self.coalgebra(s["coalgebra"])
            return Entwining(a, c, self._mat(s["psi"], a.dim * c.dim), None, name).with_inverse()
        return self._get("entwinings", name, build)

    def coring(self, name) -> Coring:
        def build(name, s):
            kind = s["kind"]
            if kind == "trivial":
                return trivial_coring(self.algebra(s["algebra"]))
            if kind == "entwining":
                return coring_from_entwining(self.entwining(s["entwining"]))
            if kind == "sweedler":
                a, b = self.algebra(s["algebra"]), self.algebra(s["subalgebra"])
                return sweedler_coring(b, a, self._mat(s["inclusion"], b.dim))
            a = self.algebra(s["algebra"])
            d = s["dim"]
            carrier = Bimodule(self.field, d, a, self._mat(s["left"], a.dim * d), a,
                               self._mat(s["right"], d * a.dim))
            return coring_from_lift(a, carrier, self._mat(s["comul"], d), self._mat(s["counit"], d),
                                    name)
        return self._get("corings", name, build)

    def grouplike(self, name) -> tuple:
        return self._vec(self.doc.grouplikes[name]["vector"])

    def comodule(self, name) -> Comodule:
        def build(name, s):
            kind = s["kind"]
            if kind == "grouplike":
                g = self.doc.grouplikes[s["grouplike"]]
                return grouplike_comodule(self.coring(g["coring"]), self.grouplike(s["grouplike"]))
            c = self.coring(s["coring"])
            if kind == "regular":
                return regular_comodule(c, s["side"])
            d = s["dim"]
            module = AModule(c.algebra, s["side"], d, self._mat(s["action"], d * c.algebra.dim))
            return comodule_from_lift(c, s["side"], module, self._mat(s["coaction"], d), name)
        return self._get("comodules", name, build)

    def morphism(self, name) -> CoringMorphism:
        def build(name, s):
            kind = s["kind"]
            if kind == "identity":
                return identity_morphism(self.coring(s["coring"]))
            if kind == "counit":
                return counit_morphism(self.coring(s["coring"]))
            src, tgt = self.coring(s["source"]), self.coring(s["target"])
            return CoringMorphism(src, tgt, self._mat(s["alpha"], src.algebra.dim),
                                  self._mat(s["gamma"], src.dim), name)
        return self._get("morphisms", name, build)

    @cached_property
    def names(self) -> dict:
        return {sec: list(getattr(self.doc, sec)) for sec in SECTIONS}


# export helpers used by the fixture builders -----------------------------------


def matrix_json(m: Matrix) -> list:
    return [list(r) for r in m.to_strings()]


def vector_json(field: Field, v) -> list:
    return [field.format(x) for x in v]


def field_json(f: Field) -> dict:
    return {"kind": "Q"} if f.p == 0 else {"kind": "Fp", "p": f.p}


def algebra_json(a: Algebra) -> dict:
    return {"dim": a.dim, "mul": matrix_json(a.mul), "unit": vector_json(a.field, a.unit)}


def coalgebra_json(c: Coalgebra) -> dict:
    return {"dim": c.dim, "comul": matrix_json(c.comul), "counit": matrix_json(c.counit)}

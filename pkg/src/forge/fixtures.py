"""Builtin example documents, built from the library constructors.

The same documents ship as JSON under ``forge/fixtures``; a test keeps the
two in sync.
"""
from __future__ import annotations

from importlib import resources

from .algebra import algebra_from_table, field_algebra, group_algebra
from .coalgebra import coalgebra_from_table, group_coalgebra, matrix_coalgebra
from .coring import sweedler_coring
from .document import (Document, algebra_json, coalgebra_json, field_json, matrix_json, parse,
                       vector_json)
from .entwining import HopfAlgebra, doi_koppinen, flip_entwining
from .kernel import Field, Matrix, Q, identity, kron

NAMES = ("trivial-A2", "hopf-z2", "hopf-z3", "sweedler-z2", "sweedler-h4", "matrix-coalgebra-2",
         "twisted-path")


def dual_numbers(f: Field):
    """k[x]/(x^2) on the basis 1, x."""
    table = [[(1, 0), (0, 1)], [(0, 1), (0, 0)]]
    return algebra_from_table(f, table, (1, 0), "k[x]/x^2")


def sweedler_hopf(f: Field) -> HopfAlgebra:
    """Sweedler's four-dimensional Hopf algebra on 1, g, x, gx.

    ``g^2 = 1``, ``x^2 = 0``, ``xg = -gx``, ``Delta x = x (x) 1 + g (x) x``.
    """
    # words as (power of g, power of x) with g^a x^b; xg = -gx
    basis = [(0, 0), (1, 0), (0, 1), (1, 1)]

    def mult(u, v):
        (a1, b1), (a2, b2) = u, v
        if b1 + b2 > 1:
            return None, 0
        sign = -1 if (b1 and a2) else 1
        return ((a1 + a2) % 2, b1 + b2), sign

    table = []
    for u in basis:
        row = []
        for v in basis:
            w, s = mult(u, v)
            vec = [0] * 4
            if w is not None:
                vec[basis.index(w)] = s
            row.append(vec)
        table.append(row)
    a = algebra_from_table(f, table, (1, 0, 0, 0), "H4")

    def t(i, j):
        v = [0] * 16
        v[i * 4 + j] = 1
        return v

    def add(*vs):
        return [sum(x) for x in zip(*vs)]

    coproducts = [t(0, 0), t(1, 1), add(t(2, 0), t(1, 2)),
                  # gx -> gx (x) g + 1 (x) gx
                  add(t(3, 1), t(0, 3))]
    c = coalgebra_from_table(f, coproducts, [1, 1, 0, 0], "H4")
    # S(1)=1, S(g)=g, S(x)=-gx, S(gx)=x
    antipode = Matrix.from_columns(f, 4, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 0, -1), (0, 0, 1, 0)])
    return HopfAlgebra(a, c, antipode, None, "H4")


def _group_hopf(f: Field, n: int) -> HopfAlgebra:
    a, c = group_algebra(f, n), group_coalgebra(f, n)
    s = Matrix.from_columns(f, n, [[1 if k == (-i) % n else 0 for k in range(n)] for i in range(n)])
    return HopfAlgebra(a, c, s, None, f"k[Z{n}]")


def _entwining_doc(f, a, c, dk_psi, g_coalg, name_checks, extra_checks=None) -> dict:
    n, k = a.dim, c.dim
    coring_g = [0] * (n * k)
    for j, x in enumerate(g_coalg):
        coring_g[j] = x  # 1 (x) g with the unit in position 0
    doc = {
        "field": field_json(f),
        "algebras": {"A": algebra_json(a)},
        "coalgebras": {"C": coalgebra_json(c)},
        "entwinings": {"psi": {"algebra": "A", "coalgebra": "C", "psi": matrix_json(dk_psi)}},
        "corings": {"K": {"kind": "entwining", "entwining": "psi"}},
        "grouplikes": {"e": {"coalgebra": "C", "vector": vector_json(f, g_coalg)},
                       "g": {"coring": "K", "vector": vector_json(f, coring_g)}},
        "comodules": {"M": {"kind": "grouplike", "grouplike": "g"},
                      "R": {"kind": "regular", "coring": "K", "side": "right"}},
        "morphisms": {"id": {"kind": "identity", "coring": "K"},
                      "eps": {"kind": "counit", "coring": "K"}},
        "checks": name_checks,
    }
    if extra_checks:
        doc["checks"].update(extra_checks)
    return doc


def _standard_checks(connection: bool = True, cointegral: bool = True) -> dict:
    checks = {}
    if cointegral:
        checks["cointegral"] = [{"coalgebra": "C"}]
    checks["galois"] = [{"comodule": "M"}]
    checks["principal"] = [{"comodule": "M"}]
    if connection:
        checks["connection"] = [{"entwining": "psi", "grouplike": "e"}]
    checks["injectivity"] = [{"comodule": "M"}, {"comodule": "R"}]
    checks["duality"] = [{"comodule": "M", "with": ["R"]}]
    checks["induce"] = [{"comodule": "M", "morphism": "id"}, {"comodule": "M", "morphism": "eps"}]
    return checks


def hopf_group_doc(n: int) -> dict:
    h = _group_hopf(Q, n)
    a = h.algebra
    dk = doi_koppinen(h, a, h.coalgebra.comul, h.coalgebra, a.mul, identity(Q, n))
    return _entwining_doc(Q, a, h.coalgebra, dk.entwining.psi, dk.grouplike, _standard_checks())


def sweedler_h4_doc() -> dict:
    """H4 coacting on itself, entwined with the quotient H4/xH4 = k[Z2]."""
    h = sweedler_hopf(Q)
    a = h.algebra
    c = group_coalgebra(Q, 2)
    # pi: 1 -> c0, g -> c1, x, gx -> 0
    pi = Matrix.from_rows(Q, [[1, 0, 0, 0], [0, 1, 0, 0]])
    # [u] . v = [uv]
    lift = Matrix.from_rows(Q, [[1, 0], [0, 1], [0, 0], [0, 0]])
    action = pi @ a.mul @ kron(lift, identity(Q, 4))
    dk = doi_koppinen(h, a, h.coalgebra.comul, c, action, pi)
    return _entwining_doc(Q, a, c, dk.entwining.psi, dk.grouplike, _standard_checks())


def trivial_a2_doc() -> dict:
    a = dual_numbers(Q)
    return {
        "field": field_json(Q),
        "algebras": {"A": algebra_json(a)},
        "corings": {"K": {"kind": "trivial", "algebra": "A"}},
        "grouplikes": {"g": {"coring": "K", "vector": vector_json(Q, a.unit)}},
        "comodules": {"M": {"kind": "grouplike", "grouplike": "g"},
                      "R": {"kind": "regular", "coring": "K", "side": "right"}},
        "morphisms": {"id": {"kind": "identity", "coring": "K"}},
        "checks": {"galois": [{"comodule": "M"}], "principal": [{"comodule": "M"}],
                   "injectivity": [{"comodule": "M"}],
                   "duality": [{"comodule": "M", "with": ["R"]}],
                   "induce": [{"comodule": "M", "morphism": "id"}]},
    }


def sweedler_z2_doc() -> dict:
    """The Sweedler coring of k inside k[Z2]."""
    a = group_algebra(Q, 2)
    b = field_algebra(Q)
    incl = a.unit_column
    cor = sweedler_coring(b, a, incl)
    one = cor.__dict__["presentation"].proj.apply(kron(a.unit_column, a.unit_column).col(0))
    return {
        "field": field_json(Q),
        "algebras": {"A": algebra_json(a), "k": algebra_json(b)},
        "corings": {"K": {"kind": "sweedler", "algebra": "A", "subalgebra": "k",
                          "inclusion": matrix_json(incl)}},
        "grouplikes": {"g": {"coring": "K", "vector": vector_json(Q, one)}},
        "comodules": {"M": {"kind": "grouplike", "grouplike": "g"},
                      "R": {"kind": "regular", "coring": "K", "side": "right"}},
        "morphisms": {"id": {"kind": "identity", "coring": "K"},
                      "eps": {"kind": "counit", "coring": "K"}},
        "checks": {"galois": [{"comodule": "M"}], "principal": [{"comodule": "M"}],
                   "injectivity": [{"comodule": "M"}],
                   "duality": [{"comodule": "M", "with": ["R"]}],
                   "induce": [{"comodule": "M", "morphism": "id"},
                              {"comodule": "M", "morphism": "eps"}]},
    }


def matrix_coalgebra_doc() -> dict:
    """M^c(2) over F_2 with its simple two-dimensional comodule."""
    f = Field(2)
    a = field_algebra(f)
    c = matrix_coalgebra(f, 2)
    e = flip_entwining(a, c)
    # rho(v_j) = sum_i v_i (x) e_ij ; coring basis 1 (x) e_ij has index i*2 + j
    lift = [[0] * 2 for _ in range(8)]
    for j in range(2):
        for i in range(2):
            lift[i * 4 + (i * 2 + j)][j] = 1
    return {
        "field": field_json(f),
        "algebras": {"k": algebra_json(a)},
        "coalgebras": {"C": coalgebra_json(c)},
        "entwinings": {"psi": {"algebra": "k", "coalgebra": "C", "psi": matrix_json(e.psi)}},
        "corings": {"K": {"kind": "entwining", "entwining": "psi"}},
        "comodules": {"M": {"kind": "general", "coring": "K", "side": "right", "dim": 2,
                            "action": [["1", "0"], ["0", "1"]],
                            "coaction": [[str(x) for x in r] for r in lift]},
                      "R": {"kind": "regular", "coring": "K", "side": "right"}},
        "morphisms": {"id": {"kind": "identity", "coring": "K"}},
        "checks": {"cointegral": [{"coalgebra": "C"}], "galois": [{"comodule": "M"}],
                   "principal": [{"comodule": "M"}],
                   "injectivity": [{"comodule": "M"}, {"comodule": "R"}],
                   "duality": [{"comodule": "M", "with": ["R"]}],
                   "induce": [{"comodule": "M", "morphism": "id"}]},
    }


def path_coalgebra(f: Field):
    """Path coalgebra of the quiver 1 -> 2 on e1, e2, a; Delta a = e1 (x) a + a (x) e2."""
    def t(i, j):
        v = [0] * 9
        v[i * 3 + j] = 1
        return v
    cop = [t(0, 0), t(1, 1), [x + y for x, y in zip(t(0, 2), t(2, 1))]]
    return coalgebra_from_table(f, cop, [1, 1, 0], "path")


def twisted_path_doc() -> dict:
    """The two-dimensional brick over the path coalgebra: its canonical map has a kernel."""
    a = field_algebra(Q)
    c = path_coalgebra(Q)
    e = flip_entwining(a, c)
    # rho(v1) = v1 (x) e1, rho(v2) = v2 (x) e2 + v1 (x) a ; index m*3 + c
    lift = [[0, 0] for _ in range(6)]
    lift[0 * 3 + 0][0] = 1
    lift[1 * 3 + 1][1] = 1
    lift[0 * 3 + 2][1] = 1
    return {
        "field": field_json(Q),
        "algebras": {"k": algebra_json(a)},
        "coalgebras": {"C": coalgebra_json(c)},
        "entwinings": {"psi": {"algebra": "k", "coalgebra": "C", "psi": matrix_json(e.psi)}},
        "corings": {"K": {"kind": "entwining", "entwining": "psi"}},
        "comodules": {"V": {"kind": "general", "coring": "K", "side": "right", "dim": 2,
                            "action": [["1", "0"], ["0", "1"]],
                            "coaction": [[str(x) for x in r] for r in lift]}},
        "checks": {"galois": [{"comodule": "V"}], "principal": [{"comodule": "V"}]},
    }


BUILDERS = {
    "trivial-A2": trivial_a2_doc,
    "hopf-z2": lambda: hopf_group_doc(2),
    "hopf-z3": lambda: hopf_group_doc(3),
    "sweedler-z2": sweedler_z2_doc,
    "sweedler-h4": sweedler_h4_doc,
    "matrix-coalgebra-2": matrix_coalgebra_doc,
    "twisted-path": twisted_path_doc,
}


def build_fixture(name: str) -> Document:
    """Rebuild a builtin document from the constructors."""
    from .document import parse_json
    if name not in BUILDERS:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(NAMES)}")
    return parse_json(BUILDERS[name]())


def fixture_text(name: str) -> str:
    if name not in BUILDERS:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(NAMES)}")
    return resources.files("forge").joinpath("fixtures", f"{name}.json").read_text("utf-8")


def builtin_fixture(name: str) -> Document:
    """The shipped document for ``name``."""
    return parse(fixture_text(name))

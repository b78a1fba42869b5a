"""Command-line front end: run verification pipelines on structure-constant documents."""
from __future__ import annotations

import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache

import click

from .algebra import check_algebra, regular_module
from .coalgebra import (check_coalgebra, check_cointegral, cointegral_system, find_cointegral,
                        regular_coalgebra_comodule, verify_grouplike)
from .comodule import (check_comodule, colinear_hom_space, is_relatively_injective, is_simple,
                       regular_comodule, zero_comodule)
from .coring import check_coring, check_coring_morphism, is_grouplike
from .descent import (associated_modules, duality_iso, faithful_flatness_verdict,
                      fgp_associated_check, gamma_tilde_split, induce_principal, induction_datum,
                      lemma_dimensions, reflexivity_check, split_extension_check, theta_map,
                      theta_naturality)
from .document import COMMANDS, Document, DocumentError, Workspace, matrix_json, parse
from .entwining import PreconditionError, check_bowtie
from .fixtures import NAMES, fixture_text
from .galois import (check_action_section, check_canonical, check_colinear_section,
                     evaluation_map, galois_datum, principal_verdict, simple_galois_check,
                     strong_connection, unit_map)
from .kernel import infeasibility_certificate

PASS, FAIL, NA = "pass", "fail", "not applicable"


def _record(rid, command, citation, verdict, witness=None, reason=""):
    rec = {"id": rid, "command": command, "citation": citation, "verdict": verdict}
    if reason:
        rec["reason"] = reason
    rec["witness"] = witness if witness is not None else {}
    return rec


def _m(x):
    return None if x is None else matrix_json(x)


def _violations(rid, citation, problems):
    return _record(rid, "check", citation, FAIL if problems else PASS,
                   {"violations": list(problems)})


# command bodies ------------------------------------------------------------------


def run_check(ws: Workspace) -> list:
    out = []
    doc = ws.doc
    for name in doc.algebras:
        out.append(_violations(f"algebra:{name}", "associative unital algebra",
                               check_algebra(ws.algebra(name))))
    for name in doc.coalgebras:
        out.append(_violations(f"coalgebra:{name}", "coassociative counital coalgebra",
                               check_coalgebra(ws.coalgebra(name))))
    for name in doc.entwinings:
        out.append(_violations(f"entwining:{name}", "bow-tie axioms",
                               check_bowtie(ws.entwining(name))))
    for name in doc.corings:
        try:
            problems = check_coring(ws.coring(name))
        except PreconditionError as exc:
            problems = [str(exc)]
        out.append(_violations(f"coring:{name}", "coring axioms", problems))
    for name, spec in doc.grouplikes.items():
        try:
            vec = ws.grouplike(name)
            if "coalgebra" in spec:
                ok = verify_grouplike(ws.coalgebra(spec["coalgebra"]), vec)
            else:
                ok = is_grouplike(ws.coring(spec["coring"]), vec)
        except PreconditionError:
            ok = False
        out.append(_violations(f"grouplike:{name}", "group-like element",
                               [] if ok else ["not group-like"]))
    for name in doc.comodules:
        try:
            problems = check_comodule(ws.comodule(name))
        except PreconditionError as exc:
            problems = [str(exc)]
        out.append(_violations(f"comodule:{name}", "comodule axioms", problems))
    for name in doc.morphisms:
        try:
            problems = check_coring_morphism(ws.morphism(name))
        except PreconditionError as exc:
            problems = [str(exc)]
        out.append(_violations(f"morphism:{name}", "coring morphism axioms", problems))
    return out


def run_cointegral(ws: Workspace, target: dict) -> list:
    name = target["coalgebra"]
    c = ws.coalgebra(name)
    rid = f"cointegral:{name}"
    cite = "cointegral: delta o comul = counit, bicolinear"
    d = find_cointegral(c)
    if d is None:
        return [_record(rid, "cointegral", cite, FAIL,
                        {"certificate": infeasibility_certificate(cointegral_system(c))},
                        "no cointegral: system infeasible")]
    problems = check_cointegral(c, d.delta)
    return [_record(rid, "cointegral", cite, FAIL if problems else PASS,
                    {"delta": _m(d.delta), "violations": problems})]


def _galois(ws: Workspace, name: str):
    """One datum per comodule, so later commands reuse the verdicts already computed."""
    key = ("galois", name)
    if key not in ws._cache:
        ws._cache[key] = galois_datum(ws.comodule(name))
    return ws._cache[key]


def run_galois(ws: Workspace, target: dict) -> list:
    name = target["comodule"]
    rid = f"galois:{name}"
    cite = "canonical map M* (x)_S M -> C bijective"
    try:
        g = _galois(ws, name)
    except PreconditionError as exc:
        return [_record(rid, "galois", cite, NA, reason=str(exc))]
    v = g.verdict
    problems = check_canonical(g)
    witness = {"can": _m(g.can), "rank": v.rank, "source_dim": v.source_dim,
               "target_dim": v.target_dim, "canonical map violations": problems}
    if v.kernel_witness is not None:
        witness["kernel_witness"] = [g.field.format(x) for x in v.kernel_witness]
    if v.cokernel_witness is not None:
        witness["cokernel_witness"] = [g.field.format(x) for x in v.cokernel_witness]
    verdict = PASS if v.galois and not problems else FAIL
    reason = "" if v.galois else ("not injective" if v.surjective else "not surjective")
    out = [_record(rid, "galois", cite, verdict, witness, reason)]
    simp = is_simple(g.comodule)
    sid = f"simple-galois:{name}"
    scite = "simple comodule: Galois iff can surjective"
    if simp.kind != "simple":
        wit = {"simplicity": simp.kind}
        if simp.witness is not None:
            wit["subcomodule"] = [[g.field.format(x) for x in vec] for vec in simp.witness.vectors()]
        out.append(_record(sid, "galois", scite, NA, wit, simp.reason or simp.kind))
    else:
        sv = simple_galois_check(g, simp)
        out.append(_record(sid, "galois", scite, PASS if sv.agrees_with_full_check else FAIL,
                           {"simplicity": "simple", "can_rank": sv.can_rank,
                            "coring_dim": sv.coring_dim}))
    return out


def run_principal(ws: Workspace, target: dict) -> list:
    name = target["comodule"]
    rid = f"principal:{name}"
    cite = "principal iff S-split action iff colinear section (routes agree)"
    try:
        g = _galois(ws, name)
    except PreconditionError as exc:
        return [_record(rid, "principal", cite, NA, reason=str(exc))]
    if not g.verdict.galois:
        return [_record(rid, "principal", cite, NA, reason="comodule is not Galois")]
    pv = principal_verdict(g)
    problems = []
    if pv.splitting is not None:
        problems += check_action_section(g.s_module, pv.splitting)
    if pv.colinear_section is not None:
        problems += check_colinear_section(g, pv.colinear_section)
    witness = {"splitting": _m(pv.splitting), "colinear_section": _m(pv.colinear_section),
               "violations": problems}
    if not pv.agree:
        return [_record(rid, "principal", cite, FAIL, witness, "routes disagree")]
    if problems:
        return [_record(rid, "principal", cite, FAIL, witness, "witness does not re-verify")]
    out = [_record(rid, "principal", cite, PASS if pv.principal else FAIL, witness,
                   "" if pv.principal else "no section on either route")]
    if pv.principal:
        ev = evaluation_map(g.comodule, regular_comodule(g.comodule.coring), g.endo)
        um = unit_map(regular_module(g.endo.algebra, "right"), g.endo)
        ok = ev.bijective and um.bijective
        out.append(_record(f"adjunction:{name}", "principal",
                           "counit phi_C and unit nu_S bijective", PASS if ok else FAIL,
                           {"phi_C": _m(ev.matrix), "nu_S": _m(um.matrix)}))
    return out


def run_connection(ws: Workspace, target: dict) -> list:
    ename, gname = target["entwining"], target["grouplike"]
    rid = f"connection:{ename}:{gname}"
    cite = "strong connection from a cointegral: kappa and equivariant section sigma"
    e = ws.entwining(ename)
    grouplike = ws.grouplike(gname)
    delta = find_cointegral(e.coalgebra)
    try:
        sc = strong_connection(e, grouplike, delta)
    except PreconditionError as exc:
        return [_record(rid, "connection", cite, NA, reason=str(exc))]
    ok = all(sc.checks.values())
    out = [_record(rid, "connection", cite, PASS if ok else FAIL,
                   {"kappa": _m(sc.kappa), "sigma": _m(sc.sigma), "delta": _m(delta.delta),
                    "checks": dict(sc.checks)})]
    c = e.coalgebra
    am = associated_modules(e, grouplike, regular_coalgebra_comodule(c, "left"),
                            regular_coalgebra_comodule(c, "right"))
    ok = all(am.checks.values())
    out.append(_record(f"associated:{ename}:{gname}", "connection",
                       "sections of associated bundles as S-duals", PASS if ok else FAIL,
                       {"A box C": am.box.dim, "Hom_psi(C,A)": am.hom_psi.dim,
                        "(C(x)A)_0": am.zero_part.dim, "Hom^C(C,A)": am.hom_colinear.dim,
                        "checks": dict(am.checks)}))
    return out


def run_injectivity(ws: Workspace, target: dict) -> list:
    name = target["comodule"]
    m = ws.comodule(name)
    ret = is_relatively_injective(m)
    out = [_record(f"injective:{name}", "injectivity",
                   "colinear retraction of the coaction", PASS if ret is not None else FAIL,
                   {"retraction": _m(ret)}, "" if ret is not None else "no retraction")]
    try:
        g = _galois(ws, name)
    except PreconditionError as exc:
        out.append(_record(f"split:{name}", "injectivity", "split extension S -> End_A(M)", NA,
                           reason=str(exc)))
        return out
    se = split_extension_check(g)
    ok = all(se.checks.values())
    out.append(_record(f"split:{name}", "injectivity",
                       "right S-retraction of End_A(M) iff relatively injective; Theta bijective",
                       PASS if ok else FAIL,
                       {"right_S_sigma": _m(se.right_s_sigma),
                        "bimodule_sigma": _m(se.bimodule_sigma), "checks": dict(se.checks)}))
    ff = faithful_flatness_verdict(g)
    verdict = PASS if ff.certified and all(ff.nu_checks.values()) else (
        FAIL if ff.certified else NA)
    out.append(_record(f"flat:{name}", "injectivity", "M faithfully flat over S", verdict,
                       {"routes": dict(ff.routes), "sigma": _m(ff.sigma),
                        "nu_checks": dict(ff.nu_checks)},
                       "" if ff.certified else "uncertified"))
    return out


def run_duality(ws: Workspace, target: dict) -> list:
    name = target["comodule"]
    m = ws.comodule(name)
    cite = "Hom^C(W, M) = Hom_S(Hom^C(M, W), S)"
    try:
        g = _galois(ws, name)
        principal = g.verdict.galois and principal_verdict(g).principal
    except PreconditionError as exc:
        return [_record(f"duality:{name}", "duality", cite, NA, reason=str(exc))]
    if not principal:
        return [_record(f"duality:{name}", "duality", cite, NA,
                        reason="comodule is not principal")]
    out = []
    ws_list = [(name, m)] + [(w, ws.comodule(w)) for w in target.get("with", [])]
    ws_list.append(("0", zero_comodule(m.coring)))
    for wname, w in ws_list:
        iso = duality_iso(g, w)
        refl = reflexivity_check(g, w)
        ok = iso.bijective and iso.left_linear and refl
        out.append(_record(f"duality:{name}:{wname}", "duality", cite, PASS if ok else FAIL,
                           {"map": _m(iso.matrix), "bijective": iso.bijective,
                            "left S-linear": iso.left_linear, "reflexive": refl}))
    dims = lemma_dimensions(g)
    ok = (dims["Hom^C(C,M)"] == dims["Hom_S(M*,S)"] and dims["Hom^C(M,C)"] == dims["M*"])
    out.append(_record(f"dimensions:{name}", "duality",
                       "Hom^C(C, M) = Hom_S(M*, S) and Hom^C(M, C) = M*",
                       PASS if ok else FAIL, dims))
    for vname, v in (("M*", g.dual.comodule), ("C", regular_comodule(m.coring, "left"))):
        verdict = fgp_associated_check(g, v)
        out.append(_record(f"fgp:{name}:{vname}", "duality",
                           "Hom^C(V, M*) finitely generated projective over S",
                           verdict.status, dict(verdict.details), verdict.reason))
    return out


def run_induce(ws: Workspace, target: dict) -> list:
    name, mname = target["comodule"], target["morphism"]
    rid = f"induce:{name}:{mname}"
    m = ws.comodule(name)
    mor = ws.morphism(mname)
    try:
        g = _galois(ws, name)
        d = induction_datum(g, mor)
    except PreconditionError as exc:
        return [_record(rid, "induce", "induction along a coring morphism", NA, reason=str(exc))]
    out = []
    dd = mor.target
    family = [("D", regular_comodule(dd)), ("induced", d.induced), ("0", zero_comodule(dd))]
    theta_ok, ranks = True, {}
    try:
        for nname, n in family:
            th = theta_map(d, n)
            ranks[nname] = [th.matrix.rows, th.matrix.cols]
            theta_ok = theta_ok and th.bijective
        nat = True
        for src, dst in ((family[1][1], family[0][1]), (family[0][1], family[1][1])):
            for h in colinear_hom_space(src, dst).basis:
                nat = nat and theta_naturality(d, src, dst, h)
    except PreconditionError as exc:
        out.append(_record(f"theta:{name}:{mname}", "induce", "theta bijective and natural", NA,
                           reason=str(exc)))
    else:
        out.append(_record(f"theta:{name}:{mname}", "induce",
                           "theta bijective and natural (family-verified)",
                           PASS if theta_ok and nat else FAIL,
                           {"shapes": ranks, "natural": nat}))
    split = gamma_tilde_split(d)
    out.append(_record(f"gamma-split:{name}:{mname}", "induce",
                       "B (x)_A C -> D splits colinearly (faithfully coflat)",
                       PASS if split is not None else NA, {"section": _m(split)},
                       "" if split is not None else "no colinear section"))
    v = induce_principal(d)
    out.append(_record(rid, "induce", "induced comodule principal", v.status, dict(v.details),
                       v.reason))
    return out


RUNNERS = {"cointegral": run_cointegral, "galois": run_galois, "principal": run_principal,
           "connection": run_connection, "injectivity": run_injectivity,
           "duality": run_duality, "induce": run_induce}


# orchestration -------------------------------------------------------------------


@lru_cache(maxsize=8)
def _workspace(text: str) -> Workspace:
    return Workspace(parse(text))


def _task(args) -> list:
    text, command, index = args
    ws = _workspace(text)
    if command == "check":
        return run_check(ws)
    target = ws.doc.checks[command][index]
    try:
        return RUNNERS[command](ws, target)
    except PreconditionError as exc:
        return [_record(f"{command}[{index}]", command, "preconditions", NA, reason=str(exc))]
    except (ValueError, KeyError) as exc:
        raise DocumentError(f"checks.{command}[{index}]", str(exc)) from None


def plan(doc: Document, command: str) -> list:
    commands = ("check",) + COMMANDS if command == "report" else (command,)
    tasks = []
    for cmd in commands:
        if cmd == "check":
            tasks.append((cmd, 0))
        else:
            tasks.extend((cmd, i) for i in range(len(doc.checks.get(cmd, []))))
    return tasks


def run(text: str, command: str, parallel: bool = False, timing: bool = False) -> list:
    """Execute ``command`` on a document and return the ordered records."""
    doc = parse(text)
    tasks = [(text, cmd, i) for cmd, i in plan(doc, command)]
    start = time.perf_counter()
    if parallel and len(tasks) > 1:
        with ProcessPoolExecutor() as pool:
            results = list(pool.map(_task, tasks))
    else:
        results = [_task(t) for t in tasks]
    records = [r for chunk in results for r in chunk]
    if timing:
        records.append({"id": "timing", "seconds": round(time.perf_counter() - start, 3)})
    return records


def exit_code(records) -> int:
    return 1 if any(r.get("verdict") == FAIL for r in records) else 0


def format_text(records) -> str:
    lines = []
    for r in records:
        if "verdict" not in r:
            lines.append(f"# {r['id']}: {r.get('seconds')} s")
            continue
        tag = {PASS: "PASS", FAIL: "FAIL", NA: "N/A "}[r["verdict"]]
        line = f"{tag}  {r['id']}  [{r['citation']}]"
        if r.get("reason"):
            line += f"  ({r['reason']})"
        lines.append(line)
    counts = {v: sum(1 for r in records if r.get("verdict") == v) for v in (PASS, FAIL, NA)}
    lines.append(f"{counts[PASS]} passed, {counts[FAIL]} failed, {counts[NA]} not applicable")
    return "\n".join(lines) + "\n"


def format_json(records, source: str, command: str) -> str:
    payload = {"source": source, "command": command, "records": records}
    return json.dumps(payload, indent=2) + "\n"


@click.command(context_settings={"help_option_names": ["-h", "--help"]})
@click.argument("command", type=click.Choice(("check",) + COMMANDS + ("report",)))
@click.argument("file", required=False, type=click.Path(dir_okay=False))
@click.option("--fixture", "fixture", type=click.Choice(NAMES), help="Use a builtin fixture.")
@click.option("--format", "fmt", type=click.Choice(("text", "json")), default="text")
@click.option("--parallel", is_flag=True, help="Run independent checks in worker processes.")
@click.option("--timing", is_flag=True, help="Append wall-clock time (breaks byte-determinism).")
def main(command, file, fixture, fmt, parallel, timing):
    """Verify coring, comodule and Galois data in FILE (or a builtin fixture)."""
    if (file is None) == (fixture is None):
        click.echo("error: give exactly one of FILE or --fixture", err=True)
        sys.exit(2)
    try:
        if fixture:
            text, source = fixture_text(fixture), f"fixture:{fixture}"
        else:
            with open(file, encoding="utf-8") as fh:
                text = fh.read()
            source = file
        records = run(text, command, parallel=parallel, timing=timing)
    except DocumentError as exc:
        click.echo(f"input error: {exc}", err=True)
        sys.exit(2)
    except (OSError, UnicodeDecodeError) as exc:
        click.echo(f"input error: {exc}", err=True)
        sys.exit(2)
    if fmt == "json":
        click.echo(format_json(records, source, command), nl=False)
    else:
        click.echo(format_text(records), nl=False)
    sys.exit(exit_code(records))


if __name__ == "__main__":
    main()

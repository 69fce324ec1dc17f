"""Command-line front end.

``galfree run SCENARIO`` loads a scenario document, runs it and prints a
report. Exit codes: 0 positive result, 1 negative result (exhaustive),
2 input error, 3 search budget exceeded. ``galfree catalog`` regenerates
the shipped catalog of small groups.

Scenario files are JSON objects with a ``kind``, kind-specific fields and
optional ``limits`` (``budget``, ``catalog_max``). Groups are given inline,
as a path relative to the scenario, or as ``"catalog:NAME"`` (see
:mod:`galfree.io`). Maps are image arrays, subgroups are element lists.

=============  ============================================================
kind           fields
=============  ============================================================
hom-enum       G, H, optional epi_only
ep-solve       source {group, marks}, A, B, phi, psi, marksB
certify        marked: {group, marks} or {level_quotient: {factors, bound}}
fp-quotients   factors
fp-separate    factors, w1, w2 (lists of [factor, element] pairs)
fp-level       factors
fp-retraction  factors, quotient {group, etas}, p
ram            gamma, delta, rho, p and/or numerical [n, e, f, p]
split          gamma, delta, rho, p
realize        p, qdeg, M, poly, B, psi, B0, optional basis (vectors)
=============  ============================================================
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .catalog import MAX_GENERATED_ORDER, Catalog, build_catalog, catalog_to_json, default_catalog
from .embed import (
    EmbeddingProblem,
    MarkedGroup,
    check_extension_property,
    solve_with_reason,
    validate_problem,
)
from .errors import GalfreeError, IllegalDefect, NotIntegral, SearchBudgetExceeded
from .fields import FiniteField
from .freeprod import (
    FreeProductContext,
    MarkedQuotient,
    enumerate_quotients,
    format_word,
    level_quotient,
    reduce_word,
    separate,
    sylow_retraction,
)
from .groups import FiniteGroup
from .homs import DEFAULT_BUDGET, Budget, enumerate_homomorphisms
from .io import Loader, SchemaError, _int_list, _require, group_to_doc, load_catalog_manifest, read_json
from .twisted import TwistedSetup, verify_construction
from .valuation import NumericalExtensionData, RamificationDatum, check_tower, defect, splitting_report

KINDS = (
    "hom-enum",
    "ep-solve",
    "certify",
    "fp-quotients",
    "fp-separate",
    "fp-level",
    "fp-retraction",
    "ram",
    "split",
    "realize",
)
DEFAULT_CATALOG_MAX = 6


@dataclass
class Outcome:
    positive: bool
    status: str
    result: dict
    summary: list[str]


@dataclass
class Context:
    loader: Loader
    budget: Budget
    catalog_source: Catalog | None
    catalog_max: int
    jobs: int

    def catalog(self, bound: int | None = None) -> Catalog:
        bound = self.catalog_max if bound is None else bound
        if self.catalog_source is not None:
            return self.catalog_source.upto(bound)
        if bound > MAX_GENERATED_ORDER:
            raise SchemaError("limits.catalog_max", f"shipped catalog stops at {MAX_GENERATED_ORDER}; pass --catalog")
        return default_catalog(bound)


def _name(G: FiniteGroup) -> str:
    return G.label or f"group of order {G.order}"


def _factors(doc, ctx: Context) -> FreeProductContext:
    refs = _require(doc, "factors", "scenario")
    if not isinstance(refs, list) or not refs:
        raise SchemaError("scenario.factors", "expected a non-empty list of groups")
    return FreeProductContext([ctx.loader.group(r, f"scenario.factors[{k}]") for k, r in enumerate(refs)])


def _marked(doc, ctx: Context, path: str) -> MarkedGroup:
    G = ctx.loader.group(_require(doc, "group", path), f"{path}.group")
    marks = _require(doc, "marks", path)
    if not isinstance(marks, list) or not marks:
        raise SchemaError(f"{path}.marks", "expected a non-empty list of element lists")
    subs = [ctx.loader.subgroup(G, m, f"{path}.marks[{k}]") for k, m in enumerate(marks)]
    try:
        return MarkedGroup(G, subs)
    except ValueError as exc:
        raise SchemaError(f"{path}.marks", str(exc)) from None


def _word(doc, key: str, fp: FreeProductContext):
    raw = _require(doc, key, "scenario")
    if not isinstance(raw, list):
        raise SchemaError(f"scenario.{key}", "expected a list of [factor, element] pairs")
    pairs = []
    for k, pair in enumerate(raw):
        _int_list(pair, f"scenario.{key}[{k}]")
        if len(pair) != 2 or not 0 <= pair[0] < fp.n:
            raise SchemaError(f"scenario.{key}[{k}]", "expected [factor, element] with a valid factor index")
        pairs.append(pair)
    try:
        return reduce_word(fp, pairs)
    except ValueError as exc:
        raise SchemaError(f"scenario.{key}", str(exc)) from None


def _datum(doc, ctx: Context) -> RamificationDatum:
    Gamma = ctx.loader.group(_require(doc, "gamma", "scenario"), "scenario.gamma")
    Delta = ctx.loader.group(_require(doc, "delta", "scenario"), "scenario.delta")
    rho = ctx.loader.hom(Gamma, Delta, _require(doc, "rho", "scenario"), "scenario.rho")
    p = _require(doc, "p", "scenario")
    if not isinstance(p, int) or p < 0:
        raise SchemaError("scenario.p", "expected an integer >= 0")
    try:
        return RamificationDatum(rho, p)
    except GalfreeError as exc:
        raise SchemaError("scenario", f"invalid datum: {exc}") from None


def _etas_doc(etas) -> list[list[int]]:
    return [list(e.map) for e in etas]


# -- handlers ------------------------------------------------------------------


def _hom_enum(doc, ctx: Context) -> Outcome:
    G = ctx.loader.group(_require(doc, "G", "scenario"), "scenario.G")
    H = ctx.loader.group(_require(doc, "H", "scenario"), "scenario.H")
    homs = enumerate_homomorphisms(G, H, ctx.budget)
    if doc.get("epi_only"):
        homs = [h for h in homs if h.is_epi]
    what = "epimorphisms" if doc.get("epi_only") else "homomorphisms"
    return Outcome(
        bool(homs),
        "found" if homs else "none",
        {"count": len(homs), what: [list(h.map) for h in homs]},
        [f"{len(homs)} {what} {_name(G)} -> {_name(H)}"],
    )


def _ep_solve(doc, ctx: Context) -> Outcome:
    source = _marked(_require(doc, "source", "scenario"), ctx, "scenario.source")
    A = ctx.loader.group(_require(doc, "A", "scenario"), "scenario.A")
    B = ctx.loader.group(_require(doc, "B", "scenario"), "scenario.B")
    phi = ctx.loader.hom(source.G, A, _require(doc, "phi", "scenario"), "scenario.phi")
    psi = ctx.loader.hom(B, A, _require(doc, "psi", "scenario"), "scenario.psi")
    marks = _require(doc, "marksB", "scenario")
    if not isinstance(marks, list):
        raise SchemaError("scenario.marksB", "expected a list of element lists")
    marksB = [ctx.loader.subgroup(B, m, f"scenario.marksB[{k}]") for k, m in enumerate(marks)]
    ep = EmbeddingProblem(source, A, phi, B, psi, marksB)
    violations = validate_problem(ep)
    if violations:
        raise SchemaError("scenario", "invalid embedding problem: " + "; ".join(map(str, violations)))
    sol, reason = solve_with_reason(ep)
    if sol is None:
        return Outcome(False, "no-solution", {"solution": None, "reason": reason}, [reason])
    gamma = list(sol.gamma.map)
    return Outcome(True, "solved", {"solution": {"gamma": gamma}, "reason": reason}, [f"solution gamma = {gamma}"])


def _certify(doc, ctx: Context) -> Outcome:
    target = _require(doc, "marked", "scenario")
    extra = {}
    if isinstance(target, dict) and "level_quotient" in target:
        lq = target["level_quotient"]
        fp = _factors(lq, ctx)
        bound = lq.get("bound", ctx.catalog_max)
        mq = level_quotient(fp, ctx.catalog(bound), ctx.budget)
        M = mq.marked_group()
        extra = {"group": group_to_doc(mq.Q, f"Q_{bound}"), "marks": [list(S.elements) for S in M.marks]}
    else:
        M = _marked(target, ctx, "scenario.marked")
    cat = ctx.catalog()
    rep = check_extension_property(M, cat, ctx.budget, ctx.jobs)
    failures = [{"H": _name(f.H), "etas": _etas_doc(f.etas)} for f in rep.failures]
    result = {"bound": cat.bound, "passed": rep.passed, "tuples_checked": rep.tuples_checked, "failures": failures}
    result.update(extra)
    line = f"extension property at bound {cat.bound}: {len(failures)} failures over {rep.tuples_checked} tuples"
    return Outcome(rep.passed, "passed" if rep.passed else "failed", result, [line])


def _fp_quotients(doc, ctx: Context) -> Outcome:
    fp = _factors(doc, ctx)
    cat = ctx.catalog()
    classes = enumerate_quotients(fp, cat, ctx.budget)
    types = list(dict.fromkeys(_name(mq.Q) for mq in classes))
    result = {
        "bound": cat.bound,
        "classes": [{"Q": _name(mq.Q), "order": mq.Q.order, "etas": _etas_doc(mq.etas)} for mq in classes],
        "isomorphism_types": types,
    }
    return Outcome(True, "found", result, [f"{len(classes)} marked quotients of order <= {cat.bound}: {', '.join(types)}"])


def _fp_separate(doc, ctx: Context) -> Outcome:
    fp = _factors(doc, ctx)
    w1, w2 = _word(doc, "w1", fp), _word(doc, "w2", fp)
    if w1 == w2:
        raise SchemaError("scenario.w2", "words are equal after reduction")
    cat = ctx.catalog()
    wit = separate(fp, w1, w2, cat, ctx.budget)
    words = {"w1": format_word(w1), "w2": format_word(w2)}
    if wit is None:
        msg = f"no separating quotient of order <= {cat.bound}"
        return Outcome(False, "not-found", {"words": words, "witness": None, "bound": cat.bound}, [msg])
    witness = {"H": _name(wit.H), "order": wit.H.order, "etas": _etas_doc(wit.etas), "values": list(wit.values)}
    line = f"separated in {_name(wit.H)} (order {wit.H.order}): {wit.values[0]} != {wit.values[1]}"
    return Outcome(True, "found", {"words": words, "witness": witness, "bound": cat.bound}, [line])


def _fp_level(doc, ctx: Context) -> Outcome:
    fp = _factors(doc, ctx)
    cat = ctx.catalog()
    mq = level_quotient(fp, cat, ctx.budget)
    result = {
        "bound": cat.bound,
        "order": mq.Q.order,
        "group": group_to_doc(mq.Q, f"Q_{cat.bound}"),
        "etas": _etas_doc(mq.etas),
    }
    return Outcome(True, "found", result, [f"level quotient at bound {cat.bound} has order {mq.Q.order}"])


def _fp_retraction(doc, ctx: Context) -> Outcome:
    fp = _factors(doc, ctx)
    q = _require(doc, "quotient", "scenario")
    Q = ctx.loader.group(_require(q, "group", "scenario.quotient"), "scenario.quotient.group")
    maps = _require(q, "etas", "scenario.quotient")
    if not isinstance(maps, list) or len(maps) != fp.n:
        raise SchemaError("scenario.quotient.etas", "expected one image array per factor")
    etas = [ctx.loader.hom(G, Q, m, f"scenario.quotient.etas[{k}]") for k, (G, m) in enumerate(zip(fp.factors, maps))]
    try:
        mq = MarkedQuotient(Q, etas)
    except ValueError as exc:
        raise SchemaError("scenario.quotient", str(exc)) from None
    p = _require(doc, "p", "scenario")
    ret = sylow_retraction(mq, p)
    result = {
        "P": list(ret.P.elements),
        "conjugators": list(ret.conjugators),
        "R_order": ret.R.order,
        "alpha": list(ret.alpha.map),
        "checks": ret.checks,
        "section": list(ret.section.map) if ret.section else None,
    }
    lines = [f"P = {list(ret.P.elements)}, conjugators {list(ret.conjugators)}"]
    lines += [f"  [{'ok' if v else 'FAIL'}] {k}" for k, v in ret.checks.items()]
    return Outcome(ret.ok, "verified" if ret.ok else "failed", result, lines)


def _ram(doc, ctx: Context) -> Outcome:
    result, lines, ok = {}, [], True
    if "gamma" in doc:
        datum = _datum(doc, ctx)
        rep = check_tower(datum)
        result["tower"] = {"orders": list(rep.orders), "checks": rep.checks}
        lines.append(f"tower (|G1|, |G0|, |Gamma|) = {rep.orders}")
        lines += [f"  [{'ok' if v else 'FAIL'}] {k}" for k, v in rep.checks.items()]
        ok &= rep.ok
    if "numerical" in doc:
        nums = _int_list(doc["numerical"], "scenario.numerical")
        if len(nums) != 4:
            raise SchemaError("scenario.numerical", "expected [n, e, f, p]")
        try:
            d = defect(NumericalExtensionData(*nums))
            result["defect"] = {"d": d.d, "classification": d.classification}
            lines.append(f"defect d = {d.d} ({d.classification})")
        except (NotIntegral, IllegalDefect) as exc:
            result["defect"] = {"rejected": type(exc).__name__, "reason": str(exc)}
            lines.append(f"rejected: {type(exc).__name__}: {exc}")
            ok = False
        except ValueError as exc:
            raise SchemaError("scenario.numerical", str(exc)) from None
    if not result:
        raise SchemaError("scenario", "ram needs a datum (gamma, delta, rho, p) and/or numerical")
    return Outcome(ok, "passed" if ok else "failed", result, lines)


def _split(doc, ctx: Context) -> Outcome:
    datum = _datum(doc, ctx)
    rep = splitting_report(datum, ctx.budget)
    result = {
        "section": list(rep.section.map) if rep.section else None,
        "inertia_complement": list(rep.inertia_complement.elements) if rep.inertia_complement else None,
        "ramification_complement": (
            list(rep.ramification_complement.elements) if rep.ramification_complement else None
        ),
        "notes": rep.notes,
    }
    lines = [f"section of rho: {result['section'] if rep.section else 'none (exhaustive)'}"] + rep.notes
    return Outcome(rep.splits, "splits" if rep.splits else "no-section", result, lines)


def _realize(doc, ctx: Context) -> Outcome:
    p = _require(doc, "p", "scenario")
    qdeg = _require(doc, "qdeg", "scenario")
    M = _require(doc, "M", "scenario")
    poly = doc.get("poly")
    B = ctx.loader.group(_require(doc, "B", "scenario"), "scenario.B")
    psi = _int_list(_require(doc, "psi", "scenario"), "scenario.psi")
    B0 = ctx.loader.subgroup(B, _require(doc, "B0", "scenario"), "scenario.B0")
    try:
        L = FiniteField(p, poly, k=qdeg * M)
        basis = tuple(L.from_vector(v) for v in doc.get("basis", []))
        setup = TwistedSetup(L, qdeg, M, B, tuple(psi), B0, basis)
    except (GalfreeError, ValueError) as exc:
        raise SchemaError("scenario", f"invalid setup: {exc}") from None
    rep = verify_construction(setup)
    result = {
        "field": {"p": L.p, "degree": L.k, "poly": list(L.poly)},
        "m": setup.m,
        "R": list(setup.R),
        "count": rep.count,
        "checks": rep.checks,
        "determinants": {str(k): v for k, v in rep.determinants.items()},
    }
    lines = [f"{rep.count} invariant forms for |B| = {rep.order}"]
    lines += [f"  [{'ok' if v else 'FAIL'}] {k}" for k, v in rep.checks.items()]
    return Outcome(rep.ok, "verified" if rep.ok else "failed", result, lines)


HANDLERS = {
    "hom-enum": _hom_enum,
    "ep-solve": _ep_solve,
    "certify": _certify,
    "fp-quotients": _fp_quotients,
    "fp-separate": _fp_separate,
    "fp-level": _fp_level,
    "fp-retraction": _fp_retraction,
    "ram": _ram,
    "split": _split,
    "realize": _realize,
}


def run(
    path: str | Path,
    catalog_max: int | None = None,
    budget: int | None = None,
    jobs: int = 1,
    catalog_path: str | Path | None = None,
) -> tuple[int, dict]:
    """Run one scenario file; returns ``(exit code, report)``."""
    start = time.perf_counter()
    scenario = None
    limits: dict = {}
    report: dict = {"status": None, "exit_code": None, "kind": None}
    nodes_budget = Budget(DEFAULT_BUDGET)
    try:
        scenario = read_json(path)
        kind = _require(scenario, "kind", "scenario")
        report["kind"] = kind
        if kind not in HANDLERS:
            raise SchemaError("scenario.kind", f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
        limits = scenario.get("limits", {})
        if not isinstance(limits, dict):
            raise SchemaError("scenario.limits", "expected an object")
        bound = catalog_max if catalog_max is not None else limits.get("catalog_max", DEFAULT_CATALOG_MAX)
        nodes = budget if budget is not None else limits.get("budget", DEFAULT_BUDGET)
        nodes_budget = Budget(nodes)
        source = load_catalog_manifest(catalog_path) if catalog_path else None
        ctx = Context(Loader(Path(path).parent, source), nodes_budget, source, bound, jobs)
        outcome = HANDLERS[kind](scenario, ctx)
        code = 0 if outcome.positive else 1
        report.update(status=outcome.status, exit_code=code, result=outcome.result, summary=outcome.summary)
    except SearchBudgetExceeded as exc:
        code = 3
        report.update(status="budget-exceeded", exit_code=code, error=str(exc))
    except GalfreeError as exc:
        code = 2
        report.update(status="input-error", exit_code=code, error=str(exc))
    report["statistics"] = {
        "nodes": nodes_budget.nodes,
        "budget": nodes_budget.limit,
        "elapsed_ms": round((time.perf_counter() - start) * 1000, 3),
    }
    report["scenario"] = scenario
    return code, report


def emit_report(report: dict, fmt: str = "text") -> str:
    if fmt == "structured":
        return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    lines = [f"status: {report['status']}"]
    if report.get("kind"):
        lines[0] = f"{report['kind']}: {report['status']}"
    lines += report.get("summary", [])
    if "error" in report:
        lines.append(f"error: {report['error']}")
    stats = report.get("statistics")
    if stats:
        lines.append(f"nodes {stats['nodes']} / budget {stats['budget']}, {stats['elapsed_ms']:.1f} ms")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="galfree", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run a scenario file")
    r.add_argument("scenario")
    r.add_argument("--catalog-max", type=int, default=None, metavar="N")
    r.add_argument("--catalog", default=None, metavar="MANIFEST", help="catalog manifest replacing the shipped one")
    r.add_argument("--budget", type=int, default=None, metavar="NODES")
    r.add_argument("--jobs", type=int, default=1, metavar="K")
    r.add_argument("--format", choices=("text", "structured"), default="text")
    r.add_argument("--out", default=None, metavar="PATH")
    c = sub.add_parser("catalog", help="regenerate the catalog of small groups")
    c.add_argument("--max", type=int, default=MAX_GENERATED_ORDER, metavar="N")
    c.add_argument("--out", default=None, metavar="PATH")
    args = parser.parse_args(argv)

    if args.command == "catalog":
        try:
            cat = build_catalog(args.max)
        except GalfreeError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        text = json.dumps(catalog_to_json(cat), separators=(",", ":")) + "\n"
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
        return 0

    code, report = run(args.scenario, args.catalog_max, args.budget, args.jobs, args.catalog)
    text = emit_report(report, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

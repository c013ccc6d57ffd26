"""Command-line front end: ``picardkit <command> --in FILE``.

Input is a JSON document.  Groups are ``{"factors": [...]}``; a groupoid is
``{"g": group, "m": group, "cocycle": cocycle}``; a cocycle is one of

    {"form": "dense", "h": [[[...]]], "c": [[...]]}   entries are M-coordinates
    {"form": "rho", "values": [[...], ...]}           one value per generator of G
    {"form": "h_mu", "n": n, "mu": [...], "a": [...]} "a" is optional
    {"form": "sphere"} or {"form": "zero"}

and a functor is ``{"source": groupoid, "target": groupoid, "f0": matrix,
"f1": matrix, "phi": table or null}``.  Dense tables are indexed by the
lexicographic order of group elements.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from .abelian import FgAbGroup, GroupHom, make_group
from .cocycle import (
    SPHERE,
    ZERO,
    SymCocycle3,
    bilinear_symmetry_rho,
    enumerate_h3_sym,
    hom_mod_two_count,
    quadratic_of,
    quadratic_two_torsion_violations,
    standard_h_mu,
    validate_quadratic,
    validate_symmetric_cocycle,
)
from .cokernel import CokBigroupoid, cok_homotopy_groups, double_category_check, long_exact_sequence, postnikov_tower
from .errors import (
    BudgetExceeded,
    InfiniteGroup,
    InvalidCocycle,
    InvalidFunctor,
    PicardkitError,
    SchemaError,
    SearchTooLarge,
)
from .picard import PicFunctor, PicGroupoid, are_equivalent, make_picard, strictify, validate_functor
from .report import default_budget
from .sphere import Permutation, ring_cells, sign_and_xi, sphere_action, tensor_symmetry_parity

COMMANDS = ("validate", "strictify", "qmap", "h3sym", "equiv", "cokernel", "les", "postnikov", "sphere", "act", "doublecheck")
MAX_PERMUTATION = 12

EXIT_OK, EXIT_INPUT, EXIT_VIOLATED, EXIT_INFEASIBLE = 0, 1, 2, 3


@dataclass
class JobSpec:
    command: str
    document: dict
    format: str = "human"
    budget: int | None = None


@dataclass
class Outcome:
    code: int
    report: dict = field(default_factory=dict)


# -- parsing ----------------------------------------------------------------------------------


def _field(doc, key, loc, kind=None):
    if not isinstance(doc, dict) or key not in doc:
        raise SchemaError(f"missing field {key!r}", loc)
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise SchemaError(f"expected {kind.__name__ if isinstance(kind, type) else 'value'}", f"{loc}.{key}")
    return value


def _int(value, loc) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError("expected an integer", loc)
    return value


def load_group(doc, loc="group") -> FgAbGroup:
    factors = _field(doc, "factors", loc, list)
    factors = [_int(d, f"{loc}.factors[{i}]") for i, d in enumerate(factors)]
    for i, d in enumerate(factors):
        if d == 1:
            raise SchemaError("factor 1 is forbidden", f"{loc}.factors[{i}]")
        if d < 0:
            raise SchemaError("factors must be non-negative", f"{loc}.factors[{i}]")
    return make_group(factors)


def load_element(group: FgAbGroup, value, loc):
    if isinstance(value, int) and not isinstance(value, bool) and group.rank == 1:
        value = [value]
    if not isinstance(value, list) or len(value) != group.rank:
        raise SchemaError(f"expected {group.rank} coordinates", loc)
    return group([_int(v, f"{loc}[{i}]") for i, v in enumerate(value)])


def _table(group_m: FgAbGroup, value, shape, loc) -> np.ndarray:
    out = np.zeros(shape, dtype=np.int64)

    def fill(v, idx, depth):
        if depth == len(shape):
            out[idx] = load_element(group_m, v, loc + "".join(f"[{i}]" for i in idx)).index
            return
        if not isinstance(v, list) or len(v) != shape[depth]:
            raise SchemaError(f"expected a list of length {shape[depth]}", loc + "".join(f"[{i}]" for i in idx))
        for i, w in enumerate(v):
            fill(w, idx + (i,), depth + 1)

    fill(value, (), 0)
    return out


def load_cocycle(g: FgAbGroup, m: FgAbGroup, doc, loc="cocycle") -> SymCocycle3:
    form = _field(doc, "form", loc, str)
    if form == SPHERE:
        if (g, m) != (make_group([0]), make_group([2])):
            raise SchemaError("the sphere form needs g = Z, m = Z/2", loc)
        return SymCocycle3(g, m, form=SPHERE)
    if form == ZERO:
        return SymCocycle3(g, m, form=ZERO)
    for grp, name in ((g, "g"), (m, "m")):
        if not grp.is_finite:
            raise SchemaError(f"form {form!r} needs a finite group", f"{loc}.{name}")
    n = g.order
    if form == "dense":
        h = _table(m, doc["h"], (n, n, n), f"{loc}.h") if doc.get("h") is not None else None
        c = _table(m, doc["c"], (n, n), f"{loc}.c") if doc.get("c") is not None else None
        return SymCocycle3(g, m, h, c)
    if form == "rho":
        values = _field(doc, "values", loc, list)
        if len(values) != g.rank:
            raise SchemaError(f"need {g.rank} generator values", f"{loc}.values")
        vals = [load_element(m, v, f"{loc}.values[{i}]") for i, v in enumerate(values)]
        return SymCocycle3(g, m, None, bilinear_symmetry_rho(g, vals) if vals else None)
    if form == "h_mu":
        order = _int(_field(doc, "n", loc), f"{loc}.n")
        if g != make_group([order]):
            raise SchemaError(f"h_mu needs g = Z/{order}", f"{loc}.n")
        mu = load_element(m, _field(doc, "mu", loc), f"{loc}.mu")
        c = None
        if doc.get("a") is not None:
            c = bilinear_symmetry_rho(g, load_element(m, doc["a"], f"{loc}.a"))
        return SymCocycle3(g, m, standard_h_mu(order, mu), c)
    raise SchemaError(f"unknown cocycle form {form!r}", f"{loc}.form")


@dataclass(frozen=True)
class RawGroupoid:
    """Parsed groupoid data whose cocycle has not been validated yet."""

    g: FgAbGroup
    m: FgAbGroup
    cocycle: SymCocycle3

    def build(self) -> PicGroupoid:
        return make_picard(self.g, self.m, self.cocycle)


def load_groupoid(doc, loc="groupoid") -> RawGroupoid:
    if not isinstance(doc, dict):
        raise SchemaError("expected an object", loc)
    cdoc = doc.get("cocycle")
    if cdoc is not None and cdoc.get("form") == SPHERE and "g" not in doc:
        g, m = make_group([0]), make_group([2])
    else:
        g = load_group(_field(doc, "g", loc), f"{loc}.g")
        m = load_group(_field(doc, "m", loc), f"{loc}.m")
    if cdoc is None:
        cdoc = {"form": "zero"} if not (g.is_finite and m.is_finite) else {"form": "dense"}
    return RawGroupoid(g, m, load_cocycle(g, m, cdoc, f"{loc}.cocycle"))


def load_hom(src: FgAbGroup, tgt: FgAbGroup, value, loc) -> GroupHom:
    if not isinstance(value, list) or len(value) != tgt.rank or any(not isinstance(r, list) or len(r) != src.rank for r in value):
        raise SchemaError(f"expected a {tgt.rank} x {src.rank} matrix", loc)
    rows = [[_int(v, f"{loc}[{i}][{j}]") for j, v in enumerate(r)] for i, r in enumerate(value)]
    try:
        return GroupHom(src, tgt, rows)
    except ValueError as exc:
        raise SchemaError(str(exc), loc) from exc


@dataclass(frozen=True)
class RawFunctor:
    source: RawGroupoid
    target: RawGroupoid
    f0: GroupHom
    f1: GroupHom
    phi: np.ndarray | None

    def build(self) -> PicFunctor:
        return PicFunctor(self.source.build(), self.target.build(), self.f0, self.f1, self.phi)


def load_functor(doc, loc="functor") -> RawFunctor:
    src = load_groupoid(_field(doc, "source", loc), f"{loc}.source")
    tgt = load_groupoid(_field(doc, "target", loc), f"{loc}.target")
    f0 = load_hom(src.g, tgt.g, _field(doc, "f0", loc), f"{loc}.f0")
    f1 = load_hom(src.m, tgt.m, _field(doc, "f1", loc), f"{loc}.f1")
    phi = None
    if doc.get("phi") is not None:
        if not src.g.is_finite:
            raise SchemaError("phi tables need a finite source", f"{loc}.phi")
        n = src.g.order
        phi = _table(tgt.m, doc["phi"], (n, n), f"{loc}.phi")
    return RawFunctor(src, tgt, f0, f1, phi)


_LOADERS = {
    "groupoid": load_groupoid,
    "functor": load_functor,
    "left": load_groupoid,
    "right": load_groupoid,
    "g": load_group,
    "m": load_group,
}


def parse_document(text: str, command: str = "validate", fmt: str = "human", budget: int | None = None) -> JobSpec:
    """Decode and type-check a document; SchemaError carries the location."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from exc
    if not isinstance(raw, dict):
        raise SchemaError("top level must be an object", "document")
    doc = dict(raw)
    for key, loader in _LOADERS.items():
        if key in doc:
            try:
                doc[key] = loader(doc[key], key)
            except SchemaError:
                raise
            except (PicardkitError, ValueError) as exc:
                raise SchemaError(str(exc), key) from exc
    if command not in COMMANDS:
        raise SchemaError(f"unknown command {command!r}", "command")
    return JobSpec(command, doc, fmt, budget)


# -- serialization ----------------------------------------------------------------------------


def dump_group(g: FgAbGroup) -> dict:
    return {"factors": list(g.factors)}


def _nested(m: FgAbGroup, table):
    if np.ndim(table) == 0:
        return list(m.elements[int(table)].coords)
    return [_nested(m, t) for t in table]


def dump_cocycle(s: SymCocycle3) -> dict:
    if s.is_closed_form:
        return {"form": s.form}
    return {"form": "dense", "h": _nested(s.m, s.h), "c": _nested(s.m, s.c)}


def dump_groupoid(p: PicGroupoid | RawGroupoid) -> dict:
    return {"g": dump_group(p.g), "m": dump_group(p.m), "cocycle": dump_cocycle(p.cocycle)}


def dump_functor(F: PicFunctor | RawFunctor) -> dict:
    return {
        "source": dump_groupoid(F.source),
        "target": dump_groupoid(F.target),
        "f0": [list(r) for r in F.f0.matrix],
        "f1": [list(r) for r in F.f1.matrix],
        "phi": None if F.phi is None else _nested(F.target.m, F.phi),
    }


def _coords_map(g: FgAbGroup, values) -> dict:
    return {",".join(map(str, x.coords)) or "()": list(v) for x, v in zip(g.elements, values)}


# -- commands ---------------------------------------------------------------------------------


def _need(spec: JobSpec, key: str):
    if key not in spec.document:
        raise SchemaError(f"command {spec.command!r} needs field {key!r}", "document")
    return spec.document[key]


def _groupoid(spec: JobSpec, key="groupoid") -> PicGroupoid:
    return _need(spec, key).build()


def cmd_validate(spec: JobSpec) -> Outcome:
    if "functor" in spec.document:
        raw = spec.document["functor"]
        for side in ("source", "target"):
            rep = validate_symmetric_cocycle(getattr(raw, side).cocycle)
            if not rep:
                return Outcome(EXIT_VIOLATED, {"valid": False, "failed": f"{side} cocycle", "report": rep.as_dict()})
        rep = validate_functor(raw.build())
        return Outcome(EXIT_OK if rep else EXIT_VIOLATED, {"valid": rep.ok, "report": rep.as_dict()})
    raw = _need(spec, "groupoid")
    rep = validate_symmetric_cocycle(raw.cocycle)
    return Outcome(EXIT_OK if rep else EXIT_VIOLATED, {"valid": rep.ok, "report": rep.as_dict()})


def cmd_strictify(spec: JobSpec) -> Outcome:
    p = _groupoid(spec)
    strict, cert = strictify(p, spec.budget)
    out = {
        "strict": dump_groupoid(strict),
        "certificate": {
            "quadratic_maps_agree": cert.quadratic_maps_agree,
            "searched": cert.searched,
            "witness": None if cert.witness is None else _nested(p.m, cert.witness.k),
            "note": cert.note,
        },
    }
    return Outcome(EXIT_OK if cert.ok else EXIT_VIOLATED, out)


def cmd_qmap(spec: JobSpec) -> Outcome:
    p = _groupoid(spec)
    q = quadratic_of(p.cocycle)
    if q.form != "table":
        return Outcome(EXIT_OK, {"form": q.form, "rule": "q(n) = n mod 2" if q.form == SPHERE else "q = 0"})
    rep = validate_quadratic(q)
    out = {"values": _coords_map(p.g, q.values()), "valid": rep.ok, "two_torsion_violations": [list(x) for x in quadratic_two_torsion_violations(q)]}
    return Outcome(EXIT_OK if rep else EXIT_VIOLATED, out)


def cmd_h3sym(spec: JobSpec) -> Outcome:
    g, m = _need(spec, "g"), _need(spec, "m")
    res = enumerate_h3_sym(g, m, spec.budget)
    reps = [_coords_map(g, quadratic_of(s).values()) for s in res.representatives]
    out = {
        "classes": res.class_count,
        "cocycles": res.cocycle_count,
        "coboundaries": res.coboundary_count,
        "hom_g_mod_2g_to_m": hom_mod_two_count(g, m),
        "representative_quadratic_maps": reps,
        "summary": f"{res.class_count} classes",
    }
    return Outcome(EXIT_OK, out)


def cmd_equiv(spec: JobSpec) -> Outcome:
    left, right = _groupoid(spec, "left"), _groupoid(spec, "right")
    verify = bool(spec.document.get("verify", False))
    return Outcome(EXIT_OK, {"equivalent": are_equivalent(left, right, verify=verify, budget=spec.budget)})


def _homotopy_dict(hg) -> dict:
    return {"pi0": str(hg.pi0), "pi1": str(hg.pi1), "pi2": str(hg.pi2), "pi1_enumeration_agrees": hg.agree}


def cmd_cokernel(spec: JobSpec) -> Outcome:
    F = _need(spec, "functor").build()
    hg = cok_homotopy_groups(CokBigroupoid(F))
    return Outcome(EXIT_OK if hg.agree is not False else EXIT_VIOLATED, _homotopy_dict(hg))


def cmd_les(spec: JobSpec) -> Outcome:
    F = _need(spec, "functor").build()
    les = long_exact_sequence(F)
    out = {
        "groups": [str(g) for g in les.groups],
        "exact": les.exact,
        "summary": "exact at all positions" if les.ok else "NOT exact",
        **_homotopy_dict(les.homotopy),
    }
    return Outcome(EXIT_OK if les.ok else EXIT_VIOLATED, out)


def cmd_postnikov(spec: JobSpec) -> Outcome:
    tower = postnikov_tower(_groupoid(spec))
    out = {
        **_homotopy_dict(tower.homotopy),
        "pi2_iso": [list(r) for r in tower.pi2_iso.matrix],
        "k0_quadratic_map": _coords_map(tower.strict.g, quadratic_of(tower.strict.cocycle).values()),
        "ok": tower.ok,
        "notes": tower.notes,
    }
    return Outcome(EXIT_OK if tower.ok else EXIT_VIOLATED, out)


def cmd_sphere(spec: JobSpec) -> Outcome:
    doc = spec.document
    out = {}
    if "permutation" in doc:
        images = doc["permutation"]
        if not isinstance(images, list) or len(images) > MAX_PERMUTATION:
            raise SchemaError(f"expected a list of at most {MAX_PERMUTATION} entries", "permutation")
        try:
            p = Permutation(tuple(_int(v, f"permutation[{i}]") for i, v in enumerate(images)))
        except ValueError as exc:
            raise SchemaError(str(exc), "permutation") from exc
        cell = sign_and_xi(p)
        out["xi"] = {"object": cell.at.coords[0], "label": cell.label.coords[0], "sign": p.sign}
    if "symmetry" in doc:
        mm, nn = (_int(v, f"symmetry[{i}]") for i, v in enumerate(_field(doc, "symmetry", "document", list)))
        out["symmetry"] = {"object": mm + nn, "label": (mm * nn) % 2}
    if "ring" in doc:
        r = _field(doc, "ring", "document", dict)
        rc = ring_cells(_int(_field(r, "m", "ring"), "ring.m"), _int(_field(r, "n", "ring"), "ring.n"))
        out["ring"] = {
            "product": rc.product,
            "tensor_symmetry": tensor_symmetry_parity(rc.m, rc.n),
            "morphism": rc.on_morphisms(_int(r.get("f", 0), "ring.f"), _int(r.get("g", 0), "ring.g")).label.coords[0],
        }
    if not out:
        raise SchemaError("give at least one of 'permutation', 'symmetry', 'ring'", "document")
    return Outcome(EXIT_OK, out)


def cmd_act(spec: JobSpec) -> Outcome:
    p = _groupoid(spec)
    action = sphere_action(p)
    n = _int(_need(spec, "n"), "n")
    x = load_element(p.g, _need(spec, "object"), "object")
    u = load_element(p.m, spec.document.get("label", [0] * p.m.rank), "label")
    eps = _int(spec.document.get("eta", 0), "eta")
    cell = action.on_morphism(eps, n, u, x)
    return Outcome(EXIT_OK, {"object": list(action.on_object(n, x).coords), "label": list(cell.label.coords), "at": list(cell.at.coords)})


def cmd_doublecheck(spec: JobSpec) -> Outcome:
    F = _need(spec, "functor").build()
    rep = double_category_check(F, spec.budget)
    return Outcome(EXIT_OK if rep.ok else EXIT_VIOLATED, rep.as_dict())


_DISPATCH = {
    "validate": cmd_validate,
    "strictify": cmd_strictify,
    "qmap": cmd_qmap,
    "h3sym": cmd_h3sym,
    "equiv": cmd_equiv,
    "cokernel": cmd_cokernel,
    "les": cmd_les,
    "postnikov": cmd_postnikov,
    "sphere": cmd_sphere,
    "act": cmd_act,
    "doublecheck": cmd_doublecheck,
}


def run_command(spec: JobSpec) -> Outcome:
    try:
        return _DISPATCH[spec.command](spec)
    except (InvalidCocycle, InvalidFunctor) as exc:
        out = {"error": str(exc)}
        if exc.report is not None:
            out["report"] = exc.report.as_dict()
        return Outcome(EXIT_VIOLATED, out)
    except (InfiniteGroup, SearchTooLarge, BudgetExceeded) as exc:
        return Outcome(EXIT_INFEASIBLE, {"error": str(exc)})
    except PicardkitError as exc:
        return Outcome(EXIT_INPUT, {"error": str(exc)})


# -- rendering ------------------------------------------------------------------------------


def render(report: dict, fmt: str) -> str:
    if fmt == "machine":
        return json.dumps(report, sort_keys=True, ensure_ascii=False)
    lines = []

    def walk(obj, indent):
        pad = "  " * indent
        for key in sorted(obj):
            val = obj[key]
            if isinstance(val, dict) and val:
                lines.append(f"{pad}{key}:")
                walk(val, indent + 1)
            elif isinstance(val, list) and val and all(isinstance(v, dict) for v in val):
                lines.append(f"{pad}{key}:")
                for i, v in enumerate(val):
                    lines.append(f"{pad}  [{i}]")
                    walk(v, indent + 2)
            else:
                lines.append(f"{pad}{key:<28} {json.dumps(val) if not isinstance(val, str) else val}")

    walk(report, 0)
    return "\n".join(lines)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="picardkit", description="Skeletal Picard groupoids, their functors and cokernels.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--in", dest="infile", required=True, help="input JSON document ('-' for stdin)")
    ap.add_argument("--format", choices=("human", "machine"), default="human")
    ap.add_argument("--budget", type=int, default=None, help="search budget (default: PICARDKIT_BUDGET or 2**24)")
    args = ap.parse_args(argv)
    budget = args.budget if args.budget is not None else default_budget()
    try:
        text = sys.stdin.read() if args.infile == "-" else open(args.infile, encoding="utf-8").read()
        spec = parse_document(text, args.command, args.format, budget)
    except (OSError, SchemaError) as exc:
        print(render({"error": str(exc)}, args.format), file=sys.stdout)
        return EXIT_INPUT
    outcome = run_command(spec)
    print(render(outcome.report, args.format))
    return outcome.code


if __name__ == "__main__":
    sys.exit(main())

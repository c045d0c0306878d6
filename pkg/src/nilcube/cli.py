"""Batch command-line front end: JSON problem descriptions in, JSON or
text reports out.

Exit codes: 0 success, 1 mathematical failure (witness in the report),
2 malformed problem specification.

Object schemas (all cube values in colex vertex order):
  group:      {"type": "cyclic_product", "moduli": [..]}
              {"type": "heisenberg", "modulus": m}
              {"type": "table", "table": [[..]]}
              {"type": "quotient", "group": {..}, "normal": [elements]}
  filtration: {"type": "lcs"} | {"type": "maximal_degree_k", "k": k}
              | {"type": "explicit", "chain": [[elements], ..]}
  cubespace:  {"source": "group", "group": {..}, "filtration": {..}}
              {"source": "coset", "group": {..}, "filtration": {..}, "gamma": [..]}
              {"source": "product", "factors": [{..}, {..}]}
              {"source": "arrow", "base": {..}, "k": i}
              {"source": "partial", "base": {..}, "point": x}
              {"source": "extension", "base": {..}, "A": [invariants],
               "cocycle": {"k": d, "entries": [[[values], a], ..]}}
              {"source": "explicit", "size": N, "step": s|null,
               "tables": {"n": [[values], ..], ..}}
  cube / corner: {"n": n, "values": [..]}   (corner omits the top vertex)
  cocycle:    {"k": degree, "entries": [[[values], a], ..]}
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Dict

from . import cubegroups as cg
from . import cubespace as cs
from . import poly
from .groups import (
    CyclicProduct,
    FiniteAbelianGroup,
    Filtration,
    TableGroup,
    lower_central_series,
    make_heisenberg,
    maximal_degree_k_filtration,
    quotient,
    subgroup_closure,
    validate_filtration,
)


class SpecError(ValueError):
    """Malformed problem description (exit code 2)."""

    def __init__(self, pointer: str, message: str):
        super().__init__("%s: %s" % (pointer, message))
        self.pointer = pointer


class MathFailure(RuntimeError):
    """A well-posed problem with a negative/failed verdict (exit 1)."""

    def __init__(self, report: Dict[str, Any]):
        super().__init__("mathematical failure")
        self.report = report


def _need(obj, key, ptr):
    if not isinstance(obj, dict) or key not in obj:
        raise SpecError(ptr, "missing field %r" % key)
    return obj[key]


def build_group(spec, ptr="/group"):
    t = _need(spec, "type", ptr)
    if t == "cyclic_product":
        return CyclicProduct(tuple(_need(spec, "moduli", ptr)))
    if t == "heisenberg":
        return make_heisenberg(int(_need(spec, "modulus", ptr)))[0]
    if t == "table":
        return TableGroup(_need(spec, "table", ptr))
    if t == "quotient":
        G = build_group(_need(spec, "group", ptr), ptr + "/group")
        N = frozenset(_need(spec, "normal", ptr))
        Q, _p = quotient(G, N)
        return Q
    raise SpecError(ptr, "unknown group type %r" % t)


def build_filtration(spec, G, ptr="/filtration"):
    t = _need(spec, "type", ptr)
    if t == "lcs":
        return lower_central_series(G)
    if t == "maximal_degree_k":
        return maximal_degree_k_filtration(G, int(_need(spec, "k", ptr)))
    if t == "explicit":
        chain = [frozenset(level) for level in _need(spec, "chain", ptr)]
        filt = Filtration(G, tuple(chain))
        bad = validate_filtration(filt)
        if bad is not None:
            raise SpecError(ptr, "not a filtration: %r" % (bad,))
        return filt
    raise SpecError(ptr, "unknown filtration type %r" % t)


def build_cocycle(spec, X, A, ptr="/cocycle"):
    from .cohomology import Cocycle, validate_cocycle

    k = int(_need(spec, "k", ptr))
    entries = _need(spec, "entries", ptr)
    table = {tuple(q): int(a) for q, a in entries}
    rho = Cocycle(X, k, A, table)
    bad = validate_cocycle(rho)
    if bad is not None:
        raise SpecError(ptr, "invalid cocycle: %r" % (bad[0],))
    return rho


def build_cubespace(spec, ptr="/cubespace"):
    src = _need(spec, "source", ptr)
    if src == "group":
        G = build_group(_need(spec, "group", ptr), ptr + "/group")
        filt = build_filtration(_need(spec, "filtration", ptr), G, ptr + "/filtration")
        return cs.GroupCubespace(filt)
    if src == "coset":
        G = build_group(_need(spec, "group", ptr), ptr + "/group")
        filt = build_filtration(_need(spec, "filtration", ptr), G, ptr + "/filtration")
        gamma = subgroup_closure(G, _need(spec, "gamma", ptr))
        return cs.CosetCubespace(filt, gamma)
    if src == "product":
        facs = _need(spec, "factors", ptr)
        if len(facs) != 2:
            raise SpecError(ptr + "/factors", "exactly two factors")
        return cs.ProductCubespace(
            build_cubespace(facs[0], ptr + "/factors/0"),
            build_cubespace(facs[1], ptr + "/factors/1"),
        )
    if src == "arrow":
        base = build_cubespace(_need(spec, "base", ptr), ptr + "/base")
        return cs.ArrowCubespace(base, int(_need(spec, "k", ptr)))
    if src == "partial":
        base = build_cubespace(_need(spec, "base", ptr), ptr + "/base")
        return cs.SliceCubespace(base, int(_need(spec, "point", ptr)))
    if src == "extension":
        from .cohomology import build_extension

        base = build_cubespace(_need(spec, "base", ptr), ptr + "/base")
        A = FiniteAbelianGroup(tuple(_need(spec, "A", ptr)))
        rho = build_cocycle(_need(spec, "cocycle", ptr), base, A, ptr + "/cocycle")
        return build_extension(rho)
    if src == "explicit":
        tables = {
            int(n): [tuple(q) for q in qs]
            for n, qs in _need(spec, "tables", ptr).items()
        }
        return cs.ExplicitCubespace(int(_need(spec, "size", ptr)), tables, spec.get("step"))
    raise SpecError(ptr, "unknown cubespace source %r" % src)


def _axiom_report_json(rep: cs.AxiomReport):
    return {
        "n_max": rep.n_max,
        "composition_ok": rep.composition_ok,
        "composition_checks": rep.composition_checks,
        "composition_sampled": rep.composition_sampled,
        "composition_witness": rep.composition_witness and list(map(repr, rep.composition_witness)),
        "ergodic_ok": rep.ergodic_ok,
        "ergodic_witness": rep.ergodic_witness,
        "completion": {
            str(n): {"corners": l.corners, "complete": l.complete, "unique": l.unique}
            for n, l in rep.completion.items()
        },
        "is_nilspace": rep.is_nilspace,
        "step": rep.step,
    }


# ---------------------------------------------------------------------------
# subcommand handlers; each returns a JSON-able report or raises


def run_check(spec, opts):
    X = build_cubespace(_need(spec, "cubespace", "/"))
    rep = cs.check_axioms(X, opts["n_max"], seed=opts["seed"])
    out = {"kind": "check", "size": X.size, "axioms": _axiom_report_json(rep)}
    if not rep.is_nilspace:
        raise MathFailure(out)
    return out


def run_factorize(spec, opts):
    G = build_group(_need(spec, "group", "/"))
    filt = build_filtration(_need(spec, "filtration", "/"), G)
    cube = _need(spec, "cube", "/")
    values = [int(v) for v in _need(cube, "values", "/cube")]
    n = int(_need(cube, "n", "/cube"))
    if len(values) != 1 << n:
        raise SpecError("/cube/values", "expected %d values" % (1 << n))
    res = cg.factorize(values, filt)
    if isinstance(res, cg.Reject):
        raise MathFailure({
            "kind": "factorize", "is_cube": False,
            "reject": {"vertex": res.index, "coefficient": res.coefficient,
                       "required_level": res.required_level},
        })
    return {"kind": "factorize", "is_cube": True, "coefficients": list(res)}


def run_complete(spec, opts):
    G = build_group(_need(spec, "group", "/"))
    filt = build_filtration(_need(spec, "filtration", "/"), G)
    corner = _need(spec, "corner", "/")
    n = int(_need(corner, "n", "/corner"))
    values = [int(v) for v in _need(corner, "values", "/corner")]
    if len(values) != (1 << n) - 1:
        raise SpecError("/corner/values", "expected %d values" % ((1 << n) - 1))
    try:
        full = cg.complete_corner(dict(enumerate(values)), n, filt)
    except cg.CornerError as e:
        raise MathFailure({"kind": "complete", "completed": False, "reason": str(e)})
    return {"kind": "complete", "completed": True, "cube": list(full),
            "completions": len(filt.subgroup(n))}


def run_poly(spec, opts):
    H = build_group(_need(spec, "domain_group", "/"))
    hfilt = build_filtration(_need(spec, "domain_filtration", "/"), H)
    G = build_group(_need(spec, "target_group", "/"))
    gfilt = build_filtration(_need(spec, "target_filtration", "/"), G)
    g = [int(v) for v in _need(spec, "map", "/")]
    if len(g) != H.order:
        raise SpecError("/map", "expected %d values" % H.order)
    is_poly = poly.is_polynomial(g, hfilt, gfilt)
    is_morph, witness = poly.is_cube_morphism(g, hfilt, gfilt)
    out = {"kind": "poly", "is_polynomial": is_poly, "is_cube_morphism": is_morph,
           "witness": witness and list(witness)}
    if is_poly != is_morph:
        out["agreement"] = False
        raise MathFailure(out)
    out["agreement"] = True
    return out


def run_decompose(spec, opts):
    from .structure import decompose

    X = build_cubespace(_need(spec, "cubespace", "/"))
    dec = decompose(X, n_max=opts["n_max"])
    return {
        "kind": "decompose",
        "step": dec.step,
        "factor_sizes": [f.size for f in dec.factors],
        "levels": [
            {"k": l.k, "invariants": list(l.group_invariants),
             "fibre_size": l.fibre_size, "verified_dims": list(l.verified_dims)}
            for l in dec.levels
        ],
    }


def run_translations(spec, opts):
    from .translations import translation_action_transitive, translation_tower

    X = build_cubespace(_need(spec, "cubespace", "/"))
    if X.size > opts["brute_cap"]:
        raise SpecError("/cubespace", "size %d above brute-force cap" % X.size)
    tw = translation_tower(X)
    return {
        "kind": "translations",
        "sizes": [len(h) for h in tw.heights],
        "transitive": translation_action_transitive(tw),
        "elements": [list(b) for b in tw.bijections],
        "heights": [list(h) for h in tw.heights],
    }


def run_cohomology(spec, opts):
    from . import cohomology as coh

    X = build_cubespace(_need(spec, "cubespace", "/"))
    A = FiniteAbelianGroup(tuple(_need(spec, "A", "/")))
    op = _need(spec, "op", "/")
    if op == "count_classes":
        k = int(_need(spec, "k", "/"))
        cocycles = coh.enumerate_cocycles(X, k, A)
        classes = coh.cohomology_classes(cocycles)
        return {"kind": "cohomology", "op": op, "k": k,
                "cocycles": len(cocycles), "classes": len(classes)}
    if op == "is_coboundary":
        rho = build_cocycle(_need(spec, "cocycle", "/"), X, A)
        f = coh.is_coboundary(rho)
        out = {"kind": "cohomology", "op": op, "is_coboundary": f is not None,
               "function": f and list(f)}
        return out
    raise SpecError("/op", "unknown cohomology op %r" % op)


def run_extend(spec, opts):
    from . import cohomology as coh

    X = build_cubespace(_need(spec, "cubespace", "/"))
    A = FiniteAbelianGroup(tuple(_need(spec, "A", "/")))
    rho = build_cocycle(_need(spec, "cocycle", "/"), X, A)
    M = coh.build_extension(rho)
    rep = cs.check_axioms(M, opts["n_max"], seed=opts["seed"])
    ext = M.as_extension_data()
    round_trip = coh.cross_section_cocycle(ext, M.obvious_section()).table == rho.table
    out = {"kind": "extend", "size": M.size, "step_bound": M.step,
           "axioms": _axiom_report_json(rep), "obvious_section_round_trip": round_trip}
    if not (rep.is_nilspace and round_trip):
        raise MathFailure(out)
    return out


def run_export(spec, opts):
    X = build_cubespace(_need(spec, "cubespace", "/"))
    n_max = opts["n_max"]
    if X.size ** (1 << n_max) > 10 ** 9:
        raise SpecError("/cubespace", "export size beyond cap")
    tables = {str(n): sorted(list(q) for q in X.cubes(n)) for n in range(1, n_max + 1)}
    return {"kind": "export", "size": X.size, "step": X.step, "tables": tables}


HANDLERS = {
    "check": run_check,
    "factorize": run_factorize,
    "complete": run_complete,
    "poly": run_poly,
    "decompose": run_decompose,
    "translations": run_translations,
    "cohomology": run_cohomology,
    "extend": run_extend,
    "export": run_export,
}


def run(spec: Dict[str, Any], n_max: int = 3, brute_cap: int = 12, seed: int = 0):
    """Dispatch a problem spec; returns the report dict.  Raises
    SpecError or MathFailure."""
    kind = _need(spec, "kind", "/")
    if kind not in HANDLERS:
        raise SpecError("/kind", "unknown kind %r" % kind)
    opts = {"n_max": int(spec.get("n_max", n_max)), "brute_cap": brute_cap, "seed": seed}
    out = HANDLERS[kind](spec, opts)
    out["n_max"] = opts["n_max"]
    return out


def _emit(report, fmt):
    if fmt == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        for key in sorted(report):
            print("%s: %r" % (key, report[key]))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="nilcube",
        description="Exact computations on finite cubespaces and filtered groups.",
    )
    ap.add_argument("--input", help="problem spec JSON file (default: stdin)")
    ap.add_argument("--n-max", type=int, default=3)
    ap.add_argument("--brute-cap", type=int, default=12)
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    try:
        if args.input:
            with open(args.input) as fh:
                spec = json.load(fh)
        else:
            spec = json.load(sys.stdin)
    except (OSError, json.JSONDecodeError) as e:
        print("spec error: %s" % e, file=sys.stderr)
        return 2
    try:
        report = run(spec, n_max=args.n_max, brute_cap=args.brute_cap, seed=args.seed)
    except SpecError as e:
        print("spec error: %s" % e, file=sys.stderr)
        return 2
    except MathFailure as e:
        _emit(e.report, args.format)
        return 1
    _emit(report, args.format)
    return 0


if __name__ == "__main__":
    sys.exit(main())

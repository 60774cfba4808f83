"""Command-line frontend: ``hyperdense <verb> problem.json``.

Every verb reads one JSON problem file and prints deterministic JSON.
Exit codes:

    0  dense (decide) or success (other verbs)
    1  not dense
    2  unknown
    3  malformed input (parse error, bad dimensions, reducible polynomial, non-unit)
    4  degree cap exceeded while building a Galois closure
    5  arrangement not defined over the base field
    6  any other failure (for example root certification)

No randomness is used anywhere, so the HYPERDENSE_SEED environment variable
is ignored.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from math import comb

from .arrangement import (
    NormComponentSpec,
    build_arrangement,
    component_norm_form,
    components_over_k,
    linear_rank,
)
from .cmfields import contains_cm_subfield_over, is_cm_field, maximal_cm_subfield_via_group
from .density import decide_general_s, decide_s_infinity
from .embeddings import embeddings_of, set_precision_floor, signature, unit_rank
from .errors import (
    DegreeCapError,
    DimensionError,
    HyperdenseError,
    NotAUnitError,
    NotCMError,
    NotDefinedOverK,
    ReducibleError,
)
from .fieldpoly import roots_in_field
from .galois import DEFAULT_DEGREE_CAP, automorphism_group, complex_conjugation, splitting_field
from .mpoly import MPoly
from .numberfield import SubfieldEmbedding, rational_embedding
from .problem import ProblemError, load_problem, parse_element, parse_field, parse_poly
from .witness import cm_vanishing_forms, empirical_density, make_unit_supply, product_points, unit_points

EXIT_DENSE, EXIT_NOT_DENSE, EXIT_UNKNOWN = 0, 1, 2
EXIT_PARSE, EXIT_DEGREE_CAP, EXIT_NOT_DEFINED, EXIT_OTHER = 3, 4, 5, 6
STATUS_EXIT = {"dense": EXIT_DENSE, "not_dense": EXIT_NOT_DENSE, "unknown": EXIT_UNKNOWN}

DEFAULT_EXPONENT_BOUND = 5
DEFAULT_COORDINATE_BOX = 1
MAX_DEFAULT_PROBE = 20


_SCALAR_LIST = re.compile(r"\[(?:\s*(?:\"[^\"]*\"|-?\d+|true|false|null),?)*\s*\]")


def dumps(obj) -> str:
    """Indented JSON with lists of scalars kept on one line."""
    text = json.dumps(obj, indent=2, ensure_ascii=True)
    return _SCALAR_LIST.sub(lambda m: json.dumps(json.loads(m.group(0))), text)


def _emit(obj, out):
    out.write(dumps(obj))
    out.write("\n")


def _option(args, problem, name, default):
    v = getattr(args, name, None)
    if v is not None:
        return v
    return problem.options.get(name, default)


def _arrangement(problem, args):
    if problem.ambient_dim is None or not problem.hyperplanes:
        raise ProblemError("problem needs ambient_dim and hyperplanes")
    cap = _option(args, problem, "max_closure_degree", DEFAULT_DEGREE_CAP)
    return build_arrangement(problem.base_field, problem.ambient_dim, problem.hyperplanes, cap), cap


def _k_in(k, M, k_image=None):
    if k.degree == 1:
        return rational_embedding(M)
    if k_image is None:
        roots = roots_in_field(M, k.poly)
        if not roots:
            raise NotDefinedOverK(f"base field {k.poly} does not embed in {M.poly}")
        k_image = roots[0]
    return SubfieldEmbedding(k, M, k_image)


# ---------------------------------------------------------------- verbs


def cmd_decide(problem, args):
    A, cap = _arrangement(problem, args)
    if problem.places.primes:
        v = decide_general_s(problem.base_field, A, problem.places, problem.unit_action, max_degree=cap)
    else:
        v = decide_s_infinity(problem.base_field, A, max_degree=cap)
    return v.to_json(), STATUS_EXIT[v.status]


def cmd_components(problem, args):
    A, _ = _arrangement(problem, args)
    comps = []
    for c in components_over_k(A):
        entry = c.to_json()
        entry["norm_form"] = component_norm_form(A, c).to_json()
        comps.append(entry)
    out = {
        "base_field": problem.base_field.poly.to_json(),
        "ambient_dim": A.ambient_dim,
        "num_hyperplanes": A.m,
        "rank": linear_rank(A),
        "working_field": A.W.poly.to_json(),
        "components": comps,
    }
    return out, 0


def _field_entry(problem, key):
    raw = problem.raw.get(key)
    if raw is None:
        raise ProblemError(f"problem needs '{key}'")
    return parse_field(raw)


def cmd_cm(problem, args):
    M = _field_entry(problem, "field")
    k = problem.base_field
    k_image = None
    if "k_embedding" in problem.raw:
        k_image = parse_element(M, problem.raw["k_embedding"])
    k_in_M = _k_in(k, M, k_image)
    cap = _option(args, problem, "max_closure_degree", DEFAULT_DEGREE_CAP)
    grp = maximal_cm_subfield_via_group(k_in_M, max_degree=cap)
    enum = contains_cm_subfield_over(k_in_M, max_degree=cap)
    agree = grp.contains == enum.contains and (
        not grp.contains or grp.cm_field.poly == enum.cm_field.poly
    )
    real = is_cm_field(M, max_degree=cap)
    out = {
        "field": M.poly.to_json(),
        "base_field": k.poly.to_json(),
        "contains": grp.contains,
        "group": grp.to_json(),
        "enumeration": enum.to_json(),
        "agree": agree,
        "field_is_cm": real is not None,
    }
    if real is not None:
        out["real_subfield"] = real.source.poly.to_json()
    return out, 0 if agree else EXIT_OTHER


def cmd_galois(problem, args):
    raw = problem.raw.get("poly", problem.raw.get("field"))
    if raw is None:
        raise ProblemError("problem needs 'poly' or 'field'")
    p = parse_poly(raw)
    cap = _option(args, problem, "max_closure_degree", DEFAULT_DEGREE_CAP)
    S = splitting_field(p, cap)
    G = automorphism_group(S)
    out = {
        "poly": p.to_json(),
        "splitting_field": S.field.poly.to_json(),
        "degree": S.degree,
        "order": G.order,
        "abelian": G.is_abelian(),
        "cyclic": G.is_cyclic(),
        "group": G.to_json(),
        "complex_conjugation": list(complex_conjugation(S)),
    }
    return out, 0


def cmd_signature(problem, args):
    K = _field_entry(problem, "field")
    r1, r2 = signature(K)
    out = {
        "field": K.poly.to_json(),
        "r1": r1,
        "r2": r2,
        "unit_rank": unit_rank(K, problem.places.num_finite),
        "embeddings": embeddings_of(K).to_json() if K.degree > 1 else None,
    }
    return out, 0


def _default_basis(problem, u, index, k):
    specs = [h for h in problem.hyperplanes if isinstance(h, NormComponentSpec)]
    if len(problem.units) == 1:
        specs = [h for h in specs if h.field.poly == u.field.poly][:1]
    elif index < len(specs) and specs[index].field.poly != u.field.poly:
        specs = []
    else:
        specs = specs[index : index + 1]
    if specs:
        return specs[0].basis
    M = u.field
    basis = [M.one()]
    for _ in range(1, M.degree // k.degree):
        basis.append(basis[-1] * M.gen())
    return tuple(basis)


def _points(problem, args):
    """(points, blocks) where blocks lists (supply, basis, k_in_M) per units entry."""
    if not problem.units:
        raise ProblemError("problem needs a 'units' section")
    k = problem.base_field
    blocks = []
    for i, u in enumerate(problem.units):
        k_in_M = _k_in(k, u.field, u.k_image)
        basis = u.basis if u.basis is not None else _default_basis(problem, u, i, k)
        supply = make_unit_supply(u.field, u.generators, problem.places.primes)
        blocks.append((supply, tuple(basis), k_in_M))
    bound = _option(args, problem, "exponent_bound", DEFAULT_EXPONENT_BOUND)
    width = sum(len(b) for _, b, _ in blocks)
    extra = 0 if problem.ambient_dim is None else problem.ambient_dim + 1 - width
    if extra < 0:
        raise DimensionError(f"units blocks use {width} coordinates, more than ambient_dim + 1")
    if len(blocks) == 1 and extra == 0:
        supply, basis, k_in_M = blocks[0]
        return unit_points(supply, basis, bound, k_in_M), blocks
    box = _option(args, problem, "coordinate_box", DEFAULT_COORDINATE_BOX)
    return product_points(blocks, bound, extra, box), blocks


def cmd_witness(problem, args):
    pts, _ = _points(problem, args)
    return pts.to_json(), 0


def _default_probe_degree(n, count):
    """First degree whose monomials outnumber the points, capped."""
    d = 1
    while d < MAX_DEFAULT_PROBE and comb(n + d, n) <= count:
        d += 1
    return d


def _vanishes(f: MPoly, pts) -> bool:
    return all(not f(list(p)) for p in pts.points)


def cmd_probe(problem, args):
    pts, blocks = _points(problem, args)
    depth = _option(args, problem, "probe_degree", None)
    if depth is None:
        depth = _default_probe_degree(pts.ambient_dim, len(pts))
    report = empirical_density(pts, depth)
    out = {"num_points": len(pts), "probe": report.to_json(), "vanishing_degrees": report.vanishing_degrees()}
    cap = _option(args, problem, "max_closure_degree", DEFAULT_DEGREE_CAP)
    cm = None
    if len(blocks) == 1 and pts.ambient_dim + 1 == len(blocks[0][1]):
        _, basis, k_in_M = blocks[0]
        rep = maximal_cm_subfield_via_group(k_in_M, max_degree=cap)
        if rep.contains:
            m, forms = cm_vanishing_forms(k_in_M, basis, report=rep)
            cm = {"m": m, "count": len(forms), "vanish_on_points": all(_vanishes(f, pts) for f in forms)}
    out["cm_forms"] = cm
    return out, 0


VERBS = {
    "decide": (cmd_decide, "decide Zariski density of S-integral points"),
    "components": (cmd_components, "list the irreducible components over the base field"),
    "cm": (cmd_cm, "search for a CM subfield over the base field by both methods"),
    "galois": (cmd_galois, "splitting field and Galois group of a polynomial"),
    "signature": (cmd_signature, "signature, unit rank and certified embeddings of a field"),
    "witness": (cmd_witness, "projective points from products of supplied units"),
    "probe-density": (cmd_probe, "Veronese rank probe of the unit points"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperdense",
        description="Exact density decisions for integral points on complements of hyperplanes.",
        epilog=(
            "exit codes: 0 dense/success, 1 not dense, 2 unknown, 3 malformed input, "
            "4 degree cap, 5 not defined over k, 6 other error. "
            "HYPERDENSE_SEED is ignored: nothing here is random."
        ),
    )
    sub = parser.add_subparsers(dest="verb", required=True)
    for name, (_, help_text) in VERBS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("problem", help="path to a JSON problem file")
        p.add_argument("--max-closure-degree", type=int, dest="max_closure_degree")
        p.add_argument("--exponent-bound", type=int, dest="exponent_bound")
        p.add_argument("--probe-degree", type=int, dest="probe_degree")
        p.add_argument(
            "--coordinate-box",
            type=int,
            dest="coordinate_box",
            help="free coordinates outside every units block range over [-BOX, BOX]",
        )
        p.add_argument("--precision-floor", type=int, dest="precision_floor", metavar="BITS")
        if name == "witness":
            p.add_argument("--jsonl", action="store_true", help="one point per line")
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.precision_floor is not None:
            set_precision_floor(args.precision_floor)
        problem = load_problem(args.problem)
        if args.verb == "witness" and args.jsonl:
            pts, _ = _points(problem, args)
            for line in pts.json_lines():
                out.write(line + "\n")
            return 0
        result, code = VERBS[args.verb][0](problem, args)
    except DegreeCapError as exc:
        return _fail(exc, EXIT_DEGREE_CAP)
    except NotDefinedOverK as exc:
        return _fail(exc, EXIT_NOT_DEFINED)
    except (ProblemError, DimensionError, ReducibleError, NotAUnitError, NotCMError, ValueError) as exc:
        return _fail(exc, EXIT_PARSE)
    except HyperdenseError as exc:
        return _fail(exc, EXIT_OTHER)
    _emit(result, out)
    return code


def _fail(exc, code):
    sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Problem files: JSON descriptions of fields, arrangements, places and units.

Rationals are strings ``"num/den"`` (plain integers and ``"n"`` are also
accepted); polynomials are ascending coefficient lists; field elements are
coordinate lists in the power basis of their field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .arrangement import HyperplaneSpec, NormComponentSpec
from .density import PlaceSpec, UnitActionData
from .errors import HyperdenseError, ReducibleError
from .numberfield import FieldElement, NumberField, rational_field
from .polynomial import Poly, rational_from_str

__all__ = ["ProblemError", "Problem", "UnitsSpec", "load_problem", "parse_problem", "parse_field", "parse_element"]


class ProblemError(HyperdenseError, ValueError):
    """Malformed or inconsistent problem file."""


def _rational(v) -> Fraction:
    try:
        return rational_from_str(v)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ProblemError(f"bad rational {v!r}") from exc


def parse_poly(data) -> Poly:
    if not isinstance(data, list) or not data:
        raise ProblemError(f"polynomial must be a nonempty coefficient list, got {data!r}")
    return Poly([_rational(c) for c in data])


def parse_field(data) -> NumberField:
    """A field from ``[coeffs]`` or ``{"min_poly": [coeffs]}``; missing means Q."""
    if data is None:
        return rational_field()
    if isinstance(data, dict):
        data = data.get("min_poly")
    p = parse_poly(data)
    if p.degree < 1:
        raise ProblemError("field polynomial must have degree >= 1")
    if p.degree == 1:
        return rational_field()
    try:
        return NumberField(p.monic() if not p.is_monic() else p)
    except ReducibleError as exc:
        raise ProblemError(str(exc)) from exc


def parse_element(K: NumberField, data) -> FieldElement:
    """An element from a coordinate list or a single rational."""
    if isinstance(data, dict):
        data = data.get("coords")
    if isinstance(data, list):
        coords = [_rational(c) for c in data]
        if len(coords) > K.degree:
            raise ProblemError(f"element has {len(coords)} coordinates in a degree-{K.degree} field")
        return K.element(coords + [Fraction(0)] * (K.degree - len(coords)))
    return K.rational(_rational(data))


@dataclass(frozen=True)
class UnitsSpec:
    field: NumberField
    generators: tuple
    basis: tuple | None = None
    k_image: FieldElement | None = None


@dataclass(frozen=True)
class Problem:
    """A parsed problem file; ``units`` holds one entry per component block."""

    base_field: NumberField
    ambient_dim: int | None = None
    hyperplanes: tuple = ()
    places: PlaceSpec = field(default_factory=PlaceSpec)
    unit_action: UnitActionData | None = None
    units: tuple = ()
    options: dict = field(default_factory=dict)
    raw: dict = field(default_factory=dict)


def _hyperplane(entry, k: NumberField, n1: int | None):
    if not isinstance(entry, dict):
        raise ProblemError("hyperplane entries must be objects")
    if "norm_component" in entry:
        nc = entry["norm_component"]
        M = parse_field(nc.get("field"))
        basis = tuple(parse_element(M, b) for b in nc.get("basis", []))
        if not basis:
            raise ProblemError("norm component needs a basis")
        k_img = parse_element(M, nc["k_embedding"]) if "k_embedding" in nc else None
        return NormComponentSpec(M, basis, int(nc.get("offset", 0)), k_img)
    M = parse_field(entry.get("field"))
    coeffs = entry.get("coeffs")
    if not isinstance(coeffs, list):
        raise ProblemError("hyperplane needs a coefficient list")
    k_img = parse_element(M, entry["k_embedding"]) if "k_embedding" in entry else None
    return HyperplaneSpec(M, tuple(parse_element(M, c) for c in coeffs), k_img)


def _unit_action(d):
    try:
        vals = tuple(tuple(tuple(int(v) for v in row) for row in emb) for emb in d.get("valuations", []))
    except (TypeError, ValueError) as exc:
        raise ProblemError("valuations must be integer arrays") from exc
    conj = tuple(int(i) for i in d["conjugation"]) if "conjugation" in d else None
    sigma = tuple(int(i) for i in d["sigma"]) if "sigma" in d else None
    num = int(d["num_embeddings"]) if "num_embeddings" in d else None
    return UnitActionData(vals, conj, sigma, num)


def _units(u) -> UnitsSpec:
    if not isinstance(u, dict):
        raise ProblemError("units entries must be objects")
    M = parse_field(u.get("field"))
    gens = tuple(parse_element(M, g) for g in u.get("generators", []))
    basis = tuple(parse_element(M, b) for b in u["basis"]) if "basis" in u else None
    k_img = parse_element(M, u["k_embedding"]) if "k_embedding" in u else None
    return UnitsSpec(M, gens, basis, k_img)


def parse_problem(data: dict) -> Problem:
    if not isinstance(data, dict):
        raise ProblemError("problem file must be a JSON object")
    k = parse_field(data.get("base_field"))
    n = data.get("ambient_dim")
    if n is not None and (not isinstance(n, int) or n < 1):
        raise ProblemError("ambient_dim must be a positive integer")
    hyps = tuple(_hyperplane(e, k, None if n is None else n + 1) for e in data.get("hyperplanes", []))
    primes = tuple(int(p) for p in data.get("S", []))
    selectors = tuple(int(s) for s in data.get("selectors", []))
    try:
        places = PlaceSpec(primes, selectors)
    except ValueError as exc:
        raise ProblemError(str(exc)) from exc
    ua = _unit_action(data["unit_action"]) if "unit_action" in data else None
    raw_units = data.get("units", [])
    if isinstance(raw_units, dict):
        raw_units = [raw_units]
    units = tuple(_units(u) for u in raw_units)
    opts = dict(data.get("options", {}))
    return Problem(k, n, hyps, places, ua, units, opts, data)


def load_problem(path) -> Problem:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ProblemError(f"cannot read {path}: {exc}") from exc
    return parse_problem(data)

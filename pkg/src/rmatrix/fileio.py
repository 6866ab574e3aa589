"""JSON file formats and report documents.

All rationals are serialized as "num/den" strings, polynomials as term lists
({coeff, exps}) against a declared variable list, and everything round-trips
to a structurally identical value.  Documents are deliberately plain so they
can be produced or consumed by other tools.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .classical import ClassicalResidual
from .cocycle import LieCocycleData
from .diffeo import FormalDiffeo, QuantumResidual
from .errors import FormatError
from .families import AlgebraSpec
from .poly import MPoly
from .series import HSeries
from .spaces import Space
from .vectorfields import PolyVectorField


def format_fraction(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: Any) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise FormatError(f"expected a rational string, got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational literal {text!r}") from exc


def poly_to_doc(poly: MPoly) -> list[dict]:
    return [
        {"coeff": format_fraction(coeff), "exps": list(exps)}
        for exps, coeff in poly.sorted_terms()
    ]


def poly_from_doc(vars: tuple[str, ...], doc: Any) -> MPoly:
    if not isinstance(doc, list):
        raise FormatError("polynomial literal must be a list of terms")
    terms: dict[tuple[int, ...], Fraction] = {}
    for item in doc:
        if not isinstance(item, dict) or "coeff" not in item or "exps" not in item:
            raise FormatError(f"bad polynomial term {item!r}")
        exps = item["exps"]
        if not isinstance(exps, list) or len(exps) != len(vars):
            raise FormatError(f"exponent vector {exps!r} does not match variables {vars}")
        if any(not isinstance(e, int) or e < 0 for e in exps):
            raise FormatError(f"exponents must be nonnegative integers, got {exps!r}")
        key = tuple(exps)
        terms[key] = terms.get(key, Fraction(0)) + parse_fraction(item["coeff"])
    return MPoly(vars, terms)


def space_to_doc(space: Space) -> dict:
    doc = {"name": space.name, "coords": list(space.coords)}
    if space.base is not None:
        doc["base_coords"] = list(space.base.coords)
        doc["base_name"] = space.base.name
        doc["slots"] = space.slots
    return doc


def space_from_doc(doc: Any) -> Space:
    if not isinstance(doc, dict) or "coords" not in doc:
        raise FormatError("space document must declare coords")
    name = doc.get("name", "X")
    if "base_coords" in doc:
        base = Space(doc.get("base_name", "X"), tuple(doc["base_coords"]))
        slots = doc.get("slots")
        if not isinstance(slots, int):
            raise FormatError("product space document must declare integer slots")
        space = base.power(slots)
        if tuple(doc["coords"]) != space.coords:
            raise FormatError(
                f"declared coords {doc['coords']} do not match the product coords {space.coords}"
            )
        return space
    return Space(name, tuple(doc["coords"]))


def vf_to_doc(field: PolyVectorField) -> dict:
    return {
        "space": space_to_doc(field.space),
        "components": {
            coord: poly_to_doc(comp) for coord, comp in zip(field.space.coords, field.components)
        },
    }


def vf_from_doc(doc: Any) -> PolyVectorField:
    if not isinstance(doc, dict) or "space" not in doc or "components" not in doc:
        raise FormatError("vector field document must have space and components")
    space = space_from_doc(doc["space"])
    comps = {}
    for coord, poly_doc in doc["components"].items():
        if coord not in space.coords:
            raise FormatError(f"component for unknown coordinate {coord!r}")
        comps[coord] = poly_from_doc(space.coords, poly_doc)
    return PolyVectorField.from_dict(space, comps)


def series_to_doc(series: HSeries) -> list:
    return [poly_to_doc(c) for c in series.coeffs]


def series_from_doc(vars: tuple[str, ...], order: int, doc: Any) -> HSeries:
    if not isinstance(doc, list) or len(doc) != order + 1:
        raise FormatError(f"series document must list {order + 1} coefficients")
    return HSeries(vars, order, [poly_from_doc(vars, c) for c in doc])


def fd_to_doc(diffeo: FormalDiffeo) -> dict:
    return {
        "space": space_to_doc(diffeo.space),
        "order": diffeo.order,
        "images": {
            coord: series_to_doc(img) for coord, img in zip(diffeo.space.coords, diffeo.images)
        },
    }


def fd_from_doc(doc: Any) -> FormalDiffeo:
    if not isinstance(doc, dict) or "space" not in doc or "images" not in doc:
        raise FormatError("diffeomorphism document must have space, order and images")
    space = space_from_doc(doc["space"])
    order = doc.get("order")
    if not isinstance(order, int) or order < 0:
        raise FormatError("order must be a nonnegative integer")
    images = {}
    for coord, img_doc in doc["images"].items():
        if coord not in space.coords:
            raise FormatError(f"image for unknown coordinate {coord!r}")
        images[coord] = series_from_doc(space.coords, order, img_doc)
    missing = set(space.coords) - set(images)
    if missing:
        raise FormatError(f"missing images for coordinates {sorted(missing)}")
    return FormalDiffeo.from_dict(space, order, images)


def algebra_from_doc(doc: Any) -> AlgebraSpec:
    if not isinstance(doc, dict) or "structure_constants" not in doc or "c" not in doc:
        raise FormatError("algebra document must have structure_constants and c")
    mult = [
        [[parse_fraction(x) for x in row] for row in plane] for plane in doc["structure_constants"]
    ]
    c = [parse_fraction(x) for x in doc["c"]]
    coords = tuple(doc["coords"]) if "coords" in doc else None
    try:
        return AlgebraSpec(mult, c, coords=coords, name=doc.get("name", "algebra"))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def algebra_to_doc(spec: AlgebraSpec) -> dict:
    return {
        "name": spec.space.name,
        "coords": list(spec.space.coords),
        "structure_constants": [
            [[format_fraction(x) for x in row] for row in plane] for plane in spec.mult
        ],
        "c": [format_fraction(x) for x in spec.c],
    }


# -- reports -------------------------------------------------------------------


def classical_report(residual: ClassicalResidual) -> dict:
    return {
        "passes": residual.passes,
        "cybe": {
            "passes": residual.cybe_passes,
            "residual": vf_to_doc(residual.cybe),
        },
        "unitarity": {
            "passes": residual.unitarity_passes,
            "residual": vf_to_doc(residual.unitarity),
        },
    }


def quantum_report(residual: QuantumResidual) -> dict:
    doc: dict = {"passes": residual.passes}
    if residual.qybe is not None:
        doc["qybe"] = {
            "passes": residual.qybe_passes,
            "residual": {c: series_to_doc(s) for c, s in residual.qybe.items()},
        }
    if residual.unitarity is not None:
        doc["unitarity"] = {
            "passes": residual.unitarity_passes,
            "residual": {c: series_to_doc(s) for c, s in residual.unitarity.items()},
        }
    return doc


def lie_report(data: LieCocycleData, lemma_ok: bool, lemma_residuals) -> dict:
    k = data.dim
    return {
        "space": space_to_doc(data.space),
        "dim": k,
        "gplus_basis": [vf_to_doc(f) for f in data.gplus_basis],
        "v_basis": [poly_to_doc(p) for p in data.v_basis],
        "structure_constants": [
            [[format_fraction(x) for x in data.structure[i][j]] for j in range(k)]
            for i in range(k)
        ],
        "action_on_vdual": [
            [[format_fraction(x) for x in row] for row in mat] for mat in data.action_on_vdual
        ],
        "cocycle": [[format_fraction(x) for x in row] for row in data.cocycle],
        "phi": [[format_fraction(x) for x in row] for row in data.phi],
        "lemma1": {
            "passes": lemma_ok,
            "residuals": {
                f"{i},{j}": [format_fraction(x) for x in res]
                for (i, j), res in lemma_residuals.items()
            },
        },
    }


# -- file helpers ----------------------------------------------------------------


def load_json(path) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def dump_json(path, doc: Any) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_vector_field(path) -> PolyVectorField:
    return vf_from_doc(load_json(path))


def save_vector_field(path, field: PolyVectorField) -> None:
    dump_json(path, vf_to_doc(field))


def load_diffeo(path) -> FormalDiffeo:
    return fd_from_doc(load_json(path))


def save_diffeo(path, diffeo: FormalDiffeo) -> None:
    dump_json(path, fd_to_doc(diffeo))


def load_algebra(path) -> AlgebraSpec:
    return algebra_from_doc(load_json(path))

"""Machine-readable renderings of engine results.

JSON is written with sorted keys; rationals are strings such as ``"-1/2"``.
"""

import csv
import io
import json
from typing import Any, Dict, List, Optional, Sequence

from trinomial_lnd.algebra.abelian import CoordinateSystem, GroupElement
from trinomial_lnd.algebra.derivation import Derivation, ElementaryClass, ElementarySpec, image_products
from trinomial_lnd.algebra.oracle import DegreeOutcome, Report
from trinomial_lnd.algebra.ring import FineGrading, TrinomialRing
from trinomial_lnd.algebra.roots import RootQuery
from trinomial_lnd.utils.expressions import format_coefficient, format_poly, format_variable


def dumps(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)


def element_json(e: GroupElement, coordinates: CoordinateSystem) -> Dict[str, List[int]]:
    return {"coordinates": list(coordinates.to_coordinates(e)), "torsion": list(e.torsion)}


def grading_json(fg: FineGrading, coordinates: CoordinateSystem) -> Dict[str, Any]:
    t = fg.trinomial
    return {
        "trinomial": str(t),
        "exponents": [list(block) for block in t.exponents],
        "free_rank": fg.group.free_rank,
        "torsion": list(fg.group.torsion_invariants),
        "coordinates": "explicit" if coordinates.is_explicit else "canonical",
        "generator_degrees": {
            format_variable(v): element_json(deg, coordinates) for v, deg in zip(t.variables, fg.generator_degrees)
        },
        "g_degree": element_json(fg.g_degree, coordinates),
    }


def derivation_json(d: Derivation) -> Dict[str, str]:
    """Nonzero images only."""
    return {
        format_variable(v): format_poly(image, d.ring) for v, image in zip(d.trinomial.variables, d.images) if image
    }


def spec_json(spec: ElementarySpec) -> Dict[str, Any]:
    payload: Dict[str, Any] = {
        "C": list(spec.C),
        "beta": [format_coefficient(b) for b in spec.beta],
        "type": spec.type_tag.value,
        "i0": spec.i0,
    }
    if spec.multiplier is not None:
        payload["multiplier"] = {
            "u": list(spec.multiplier.u),
            "m": spec.multiplier.m,
            "alpha": format_coefficient(spec.multiplier.alpha),
        }
    return payload


def class_json(cls: ElementaryClass, R: TrinomialRing) -> Dict[str, Any]:
    """A class with its image formulas, β_i kept symbolic."""
    products = image_products(R, cls.C, cls.i0)
    return {
        "C": list(cls.C),
        "type": cls.type_tag.value,
        "i0": cls.i0,
        "images": {format_variable((i, cls.C[i])): f"beta{i} * ({format_poly(p, R)})" for i, p in products.items()},
    }


def root_query_json(query: RootQuery, coordinates: CoordinateSystem) -> Dict[str, Any]:
    return {
        "element": element_json(query.element, coordinates),
        "is_root": query.is_root,
        "count": query.count,
        "type_one": query.type_one,
        "basic_sets": [
            {"set": basic_set.label, "witness": list(witness.u)} for basic_set, witness in query.containing_sets
        ],
    }


def roots_csv(queries: Sequence[RootQuery], coordinates: CoordinateSystem, torsion_rank: int = 0) -> str:
    """One row per root: coordinates x1..xm, torsion residues t1..tk, count, type1."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    header = [f"x{k + 1}" for k in range(coordinates.dimension)]
    header += [f"t{k + 1}" for k in range(torsion_rank)]
    writer.writerow(header + ["count", "type1"])
    for query in queries:
        e = query.element
        writer.writerow(
            list(coordinates.to_coordinates(e)) + list(e.torsion) + [query.count, int(query.type_one)]
        )
    return buffer.getvalue()


def outcome_json(outcome: DegreeOutcome, coordinates: CoordinateSystem) -> Dict[str, Any]:
    return {
        "degree": element_json(outcome.degree, coordinates),
        "is_root": outcome.is_root,
        "dimension": outcome.dimension,
        "nilpotent": outcome.nilpotent,
        "unknown": outcome.unknown,
        "undecided": [derivation_json(d) for d in outcome.undecided],
        "counterexamples": [derivation_json(d) for d in outcome.counterexamples],
        "needs_scalar_extension": [derivation_json(d) for d in outcome.needs_scalar_extension],
        "missing_root_witness": outcome.missing_root_witness,
        "non_root_nilpotent": outcome.non_root_nilpotent,
        "witness_outside_space": outcome.witness_outside_space,
    }


def report_json(report: Report, coordinates: CoordinateSystem) -> Dict[str, Any]:
    return {
        "trinomial": str(report.trinomial),
        "cap": report.cap,
        "nilpotency_cap": report.nilpotency_cap,
        "samples": report.samples,
        "seed": report.seed,
        "ok": report.ok,
        "unknown": report.unknown,
        "degrees": [outcome_json(o, coordinates) for o in report.outcomes],
    }


def verdict_json(
    well_defined: bool,
    degree: Optional[Dict[str, List[int]]],
    nilpotency: Dict[str, Any],
    elementary: Optional[Dict[str, Any]],
    reason: Optional[str] = None,
) -> Dict[str, Any]:
    payload = {
        "well_defined": well_defined,
        "homogeneous": degree is not None,
        "degree": degree,
        "nilpotency": nilpotency,
        "elementary": elementary,
    }
    if reason is not None:
        payload["not_elementary"] = reason
    return payload

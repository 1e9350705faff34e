import functools
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

from trinomial_lnd.algebra.abelian import CoordinateSystem, GroupElement
from trinomial_lnd.algebra.derivation import (
    Nilpotent,
    NotElementary,
    bounded_nilpotency,
    derivation_degree,
    elementary_classes,
    is_elementary,
)
from trinomial_lnd.algebra.oracle import verify_theorem
from trinomial_lnd.algebra.ring import FineGrading, Marker, TrinomialRing, fine_grading
from trinomial_lnd.algebra.roots import RootSystem, enumerate_roots_in_box, psi_window
from trinomial_lnd.config import EngineConfig
from trinomial_lnd.errors import InvariantViolation, SemanticError, SpecSyntaxError, TrinomialError
from trinomial_lnd.utils.output import (
    class_json,
    derivation_json,
    element_json,
    grading_json,
    report_json,
    root_query_json,
    roots_csv,
    spec_json,
    verdict_json,
)
from trinomial_lnd.utils.spec_file import SpecFile, parse_derivation, parse_spec

logger = logging.getLogger(__name__)

Result = Dict[str, Any]


@dataclass
class TrinomialContext:
    """Everything derived from one spec file."""

    spec: SpecFile
    config: EngineConfig
    ring: TrinomialRing
    grading: FineGrading
    coordinates: CoordinateSystem
    roots: RootSystem


def _guarded(method: Callable[..., Result]) -> Callable[..., Result]:
    """Turn engine errors into ``{"result": "error", ...}`` dictionaries."""

    @functools.wraps(method)
    def wrapper(self, *args, **kwargs) -> Result:
        try:
            return method(self, *args, **kwargs)
        except InvariantViolation as e:
            logger.error("invariant violated: %s", e)
            return {"result": "error", "error": f"internal invariant violated: {e}", "kind": "InvariantViolation"}
        except TrinomialError as e:
            return {"result": "error", "error": str(e), "kind": type(e).__name__}
        except UnicodeDecodeError as e:
            return {"result": "error", "error": f"input is not valid UTF-8: {e.reason}", "kind": "UnicodeDecodeError"}
        except OSError as e:
            return {"result": "error", "error": f"cannot read {e.filename}: {e.strerror}", "kind": "OSError"}

    return wrapper


CONTEXT_CACHE_SIZE = 32


@functools.lru_cache(maxsize=CONTEXT_CACHE_SIZE)
def build_context(text: str, config: EngineConfig) -> TrinomialContext:
    """Parse spec text and build its algebra context; the most recent contexts are cached by content."""
    spec = parse_spec(text)
    effective = config.with_overrides(**spec.settings)
    fg = fine_grading(spec.trinomial)
    coordinates = spec.coordinates(fg)
    logger.info(
        "loaded %s: free rank %d, torsion %s", spec.trinomial, fg.group.free_rank, list(fg.group.torsion_invariants)
    )
    return TrinomialContext(
        spec=spec,
        config=effective,
        ring=TrinomialRing(spec.trinomial),
        grading=fg,
        coordinates=coordinates,
        roots=RootSystem(spec.trinomial, fg, coordinates),
    )


class Workspace:
    """Loads spec files and answers engine commands with result dictionaries."""

    def __init__(self, config: EngineConfig):
        self.config = config

    def initialize(self) -> None:
        logger.info(
            "workspace ready (nilpotency cap %d, oracle cap %d)", self.config.nilpotency_cap, self.config.oracle_cap
        )

    def close(self) -> None:
        build_context.cache_clear()

    def load(self, spec_path: Optional[str] = None, text: Optional[str] = None) -> TrinomialContext:
        """The algebra context of a spec given as a path or as literal text."""
        if text is None:
            if spec_path is None:
                raise SemanticError("a spec file is required")
            text = Path(spec_path).read_text(encoding="utf-8")
        return build_context(text, self.config)

    @staticmethod
    def parse_degree(ctx: TrinomialContext, degree: Union[str, Sequence[Union[str, int]]]) -> GroupElement:
        """Coordinates in the active basis, torsion residues after ';' (e.g. ``"-1 -1 0"`` or ``"1 ; 0 1"``)."""
        text = degree if isinstance(degree, str) else " ".join(str(x) for x in degree)
        free_text, _, torsion_text = text.partition(";")
        try:
            free = [int(x) for x in free_text.split()]
            torsion = [int(x) for x in torsion_text.split()]
        except ValueError:
            raise SpecSyntaxError(f"degree must be integers with torsion after ';', got {text!r}")
        e = ctx.coordinates.from_coordinates(free, torsion)
        if e is None:
            raise SemanticError(f"{free} is not the coordinate vector of an element of the grading group")
        return e

    @_guarded
    def info(self, spec_path: Optional[str] = None, text: Optional[str] = None) -> Result:
        ctx = self.load(spec_path, text)
        payload = grading_json(ctx.grading, ctx.coordinates)
        payload["basic_sets"] = [
            {"set": B.label, "offset": element_json(B.offset, ctx.coordinates)} for B in ctx.roots.basic_sets
        ]
        payload["positive_functional"] = {
            "weights": list(ctx.roots.functional.weights),
            "block_value": ctx.roots.functional.block_value,
        }
        return {"result": "success", "info": payload}

    @_guarded
    def elementary(self, spec_path: Optional[str] = None, listing: bool = False, text: Optional[str] = None) -> Result:
        ctx = self.load(spec_path, text)
        classes = elementary_classes(ctx.spec.trinomial)
        result: Result = {"result": "success", "count": len(classes)}
        if listing:
            result["classes"] = [class_json(cls, ctx.ring) for cls in classes]
        return result

    @_guarded
    def is_root(self, degree, spec_path: Optional[str] = None, text: Optional[str] = None) -> Result:
        ctx = self.load(spec_path, text)
        query = ctx.roots.is_root(self.parse_degree(ctx, degree))
        return {"result": "success", "root": root_query_json(query, ctx.coordinates)}

    @_guarded
    def witness(self, degree, spec_path: Optional[str] = None, text: Optional[str] = None) -> Result:
        """One derivation per containing basic set, each with its verification."""
        ctx = self.load(spec_path, text)
        e = self.parse_degree(ctx, degree)
        query = ctx.roots.is_root(e)
        witnesses = []
        for basic_set, witness in query.containing_sets:
            d = ctx.roots.witness_derivation(e, basic_set, witness)
            entry = {"set": basic_set.label, "witness": list(witness.u), "images": derivation_json(d)}
            entry.update(self._verdict(ctx, d, ctx.config.nilpotency_cap))
            witnesses.append(entry)
        return {
            "result": "success",
            "root": root_query_json(query, ctx.coordinates),
            "derivations": witnesses,
        }

    @_guarded
    def roots(
        self,
        bounds: Sequence[Tuple[int, int]],
        spec_path: Optional[str] = None,
        output_format: str = "json",
        text: Optional[str] = None,
    ) -> Result:
        ctx = self.load(spec_path, text)
        if output_format not in ("json", "csv"):
            raise SemanticError(f"format must be 'json' or 'csv', got {output_format!r}")
        queries = enumerate_roots_in_box([tuple(b) for b in bounds], ctx.roots)
        if output_format == "csv":
            table = roots_csv(queries, ctx.coordinates, len(ctx.grading.group.torsion_invariants))
            return {"result": "success", "count": len(queries), "csv": table}
        return {
            "result": "success",
            "count": len(queries),
            "roots": [root_query_json(q, ctx.coordinates) for q in queries],
        }

    @_guarded
    def verify(
        self,
        derivation_text: str,
        spec_path: Optional[str] = None,
        nilpotency_cap: Optional[int] = None,
        text: Optional[str] = None,
    ) -> Result:
        ctx = self.load(spec_path, text)
        d = parse_derivation(derivation_text, ctx.ring)
        cap = ctx.config.with_overrides(nilpotency_cap=nilpotency_cap).nilpotency_cap
        verdict = self._verdict(ctx, d, cap)
        return {"result": "success", "images": derivation_json(d), **verdict}

    def _verdict(self, ctx: TrinomialContext, d, cap: int) -> Result:
        degree = None
        if not d.is_zero():
            w = derivation_degree(d, ctx.grading)
            if not isinstance(w, Marker):
                degree = element_json(w, ctx.coordinates)
        nilpotency = bounded_nilpotency(d, cap)
        if isinstance(nilpotency, Nilpotent):
            nilpotency_json = {"nilpotent": True, "index": nilpotency.index}
        else:
            logger.warning("nilpotency undecided within cap %d", nilpotency.cap)
            nilpotency_json = {"nilpotent": None, "unknown_at_cap": nilpotency.cap}
        recognized = is_elementary(d, ctx.grading)
        if isinstance(recognized, NotElementary):
            return verdict_json(d.is_well_defined(), degree, nilpotency_json, None, recognized.reason)
        return verdict_json(d.is_well_defined(), degree, nilpotency_json, spec_json(recognized))

    @_guarded
    def oracle(
        self,
        spec_path: Optional[str] = None,
        degrees: Optional[List] = None,
        window: Optional[Tuple[int, int]] = None,
        cap: Optional[int] = None,
        samples: Optional[int] = None,
        seed: Optional[int] = None,
        nilpotency_cap: Optional[int] = None,
        text: Optional[str] = None,
    ) -> Result:
        """verify_theorem over explicit degrees, or over a ψ-window (default [-W, W])."""
        ctx = self.load(spec_path, text)
        config = ctx.config.with_overrides(
            oracle_cap=cap, oracle_samples=samples, seed=seed, nilpotency_cap=nilpotency_cap
        )
        if degrees:
            elements = [self.parse_degree(ctx, degree) for degree in degrees]
        else:
            W = ctx.roots.functional.block_value
            lo, hi = window if window is not None else (-W, W)
            elements = psi_window(lo, hi, ctx.roots)
        report = verify_theorem(
            ctx.spec.trinomial,
            elements,
            config.oracle_cap,
            config.nilpotency_cap,
            config.oracle_samples,
            config.seed,
            ctx.roots,
        )
        logger.info("oracle checked %d degrees: ok=%s", len(elements), report.ok)
        return {"result": "success", "report": report_json(report, ctx.coordinates)}

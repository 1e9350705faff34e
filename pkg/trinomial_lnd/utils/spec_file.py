"""Spec files and derivation files.

A spec file names the trinomial, optionally an explicit grading and engine
settings, one ``key: value`` per line; ``#`` starts a comment::

    l0: 1 1
    l1: 1 1
    l2: 2
    deg T(0,1): 1 0 1      # either every generator gets a vector, or none
    nilpotency_cap: 50

A derivation file gives generator images, one ``T(i,j) -> expression`` per line.
Generators that are not listed map to zero.
"""

import logging
import re
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from trinomial_lnd.algebra.abelian import CoordinateSystem
from trinomial_lnd.algebra.derivation import Derivation
from trinomial_lnd.algebra.ring import (
    FineGrading,
    Polynomial,
    TrinomialData,
    TrinomialRing,
    Variable,
    fine_grading,
    validate_coarsening,
)
from trinomial_lnd.errors import SemanticError, SpecSyntaxError
from trinomial_lnd.utils.expressions import parse_poly

logger = logging.getLogger(__name__)

SETTINGS = ("nilpotency_cap", "oracle_cap", "oracle_samples", "seed")

_KEY = re.compile(r"\s*(?P<key>l[012]|deg\s+T\(\s*(?P<i>\d+)\s*,\s*(?P<j>\d+)\s*\)|[a-z_]+)\s*:")
_INTEGER = re.compile(r"-?\d+")
_ARROW = re.compile(r"\s*T\(\s*(?P<i>\d+)\s*,\s*(?P<j>\d+)\s*\)\s*->")


@dataclass(frozen=True)
class SpecFile:
    trinomial: TrinomialData
    explicit_grading: Optional[Tuple[Tuple[int, ...], ...]] = None
    settings: Dict[str, int] = field(default_factory=dict)

    def coordinates(self, fg: FineGrading) -> CoordinateSystem:
        if self.explicit_grading is None:
            return CoordinateSystem.canonical(fg.group)
        return CoordinateSystem.explicit(fg.group, self.explicit_grading)


def _lines(text: str) -> Iterator[Tuple[int, str]]:
    """Numbered lines with comments removed, skipping blank ones."""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if line.strip():
            yield number, line


def _integers(line: str, start: int, number: int) -> List[int]:
    values = []
    for match in re.finditer(r"\S+", line[start:]):
        token = match.group()
        column = start + match.start() + 1
        if not _INTEGER.fullmatch(token):
            raise SpecSyntaxError(f"expected an integer, found {token!r}", number, column)
        values.append(int(token))
    if not values:
        raise SpecSyntaxError("expected at least one integer", number, len(line) + 1)
    return values


def parse_spec(text: str) -> SpecFile:
    blocks: Dict[int, List[int]] = {}
    degrees: Dict[Variable, Tuple[int, ...]] = {}
    settings: Dict[str, int] = {}
    for number, line in _lines(text):
        match = _KEY.match(line)
        if match is None:
            column = len(line) - len(line.lstrip()) + 1
            raise SpecSyntaxError("expected 'key: value'", number, column)
        key = match.group("key")
        values = _integers(line, match.end(), number)
        column = match.start("key") + 1
        if key in ("l0", "l1", "l2"):
            i = int(key[1])
            if i in blocks:
                raise SpecSyntaxError(f"{key} given twice", number, column)
            blocks[i] = values
        elif key.startswith("deg"):
            variable = (int(match.group("i")), int(match.group("j")))
            if variable in degrees:
                raise SpecSyntaxError(f"degree of T{variable} given twice", number, column)
            degrees[variable] = tuple(values)
        elif key in SETTINGS:
            if key in settings:
                raise SpecSyntaxError(f"{key} given twice", number, column)
            if len(values) != 1:
                raise SpecSyntaxError(f"{key} takes a single integer", number, column)
            settings[key] = values[0]
        else:
            raise SpecSyntaxError(f"unknown key {key!r}", number, column)

    missing = [f"l{i}" for i in range(3) if i not in blocks]
    if missing:
        raise SemanticError(f"missing exponent line(s): {', '.join(missing)}")
    t = TrinomialData.of(blocks[0], blocks[1], blocks[2])
    grading = _explicit_grading(t, degrees) if degrees else None
    logger.debug("parsed spec for %s (explicit grading: %s)", t, grading is not None)
    return SpecFile(trinomial=t, explicit_grading=grading, settings=settings)


def _explicit_grading(t: TrinomialData, degrees: Dict[Variable, Tuple[int, ...]]) -> Tuple[Tuple[int, ...], ...]:
    for variable in degrees:
        t.index(variable)
    absent = [f"T({i},{j})" for i, j in t.variables if (i, j) not in degrees]
    if absent:
        raise SemanticError(f"explicit grading misses {', '.join(absent)}")
    vectors = tuple(degrees[v] for v in t.variables)
    if len({len(v) for v in vectors}) != 1:
        raise SemanticError("explicit degree vectors have different lengths")
    fg = fine_grading(t)
    if not validate_coarsening(fg, vectors):
        raise SemanticError("the explicit grading does not make g homogeneous")
    CoordinateSystem.explicit(fg.group, vectors)
    return vectors


def parse_derivation_images(text: str, R: TrinomialRing) -> Dict[Variable, Polynomial]:
    images: Dict[Variable, Polynomial] = {}
    for number, line in _lines(text):
        match = _ARROW.match(line)
        if match is None:
            column = len(line) - len(line.lstrip()) + 1
            raise SpecSyntaxError("expected 'T(i,j) -> expression'", number, column)
        variable = (int(match.group("i")), int(match.group("j")))
        R.trinomial.index(variable)
        if variable in images:
            raise SpecSyntaxError(f"image of T({variable[0]},{variable[1]}) given twice", number, match.start() + 1)
        images[variable] = parse_poly(line[match.end() :], R, number, match.end() + 1)
    return images


def parse_derivation(text: str, R: TrinomialRing) -> Derivation:
    return Derivation.from_images(R, parse_derivation_images(text, R))

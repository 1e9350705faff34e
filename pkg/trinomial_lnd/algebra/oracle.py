"""Brute-force ground truth for small trinomials.

Homogeneous components are enumerated monomial by monomial and the derivations
of a fixed degree are found by solving the linear system δ(g) ≡ 0 over the
rationals. Everything is truncated at a total-degree cap, so the checks here
are finite statements about the images of bounded degree.
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from trinomial_lnd.algebra.abelian import GroupElement
from trinomial_lnd.algebra.derivation import (
    Derivation,
    Nilpotent,
    NotElementary,
    bounded_nilpotency,
    is_elementary,
)
from trinomial_lnd.algebra.ring import FineGrading, Monomial, TrinomialData, TrinomialRing, to_fraction, to_qq
from trinomial_lnd.algebra.roots import RootSystem
from trinomial_lnd.algebra.semigroup import LatticeSearch, PositiveFunctional, positive_functional
from trinomial_lnd.errors import CapTooSmall

logger = logging.getLogger(__name__)

Unknown = Tuple[int, Monomial]  # (generator position, monomial of its image)


@dataclass(frozen=True)
class ComponentBasis:
    degree: GroupElement
    cap: int
    monomials: Tuple[Monomial, ...]


def component_basis(
    w: GroupElement, cap: int, t: TrinomialData, fg: FineGrading, pf: Optional[PositiveFunctional] = None
) -> ComponentBasis:
    """Reduced monomials of fine degree w and total degree at most cap, in descending lex order."""
    if cap < 0:
        raise ValueError(f"cap must be nonnegative, got {cap}")
    pf = pf or positive_functional(t, fg)
    budget = pf(w)
    lead = t.block_vector(0)
    monomials = []
    if budget >= 0:
        search = LatticeSearch(fg.generator_degrees, pf.weights)
        for u in search.solutions(w, budget, max_total=cap):
            if any(k < l for k, l in zip(u, lead) if l):
                monomials.append(u)
    return ComponentBasis(w, cap, tuple(sorted(monomials, reverse=True)))


@dataclass(frozen=True)
class DerivationSpace:
    degree: GroupElement
    cap: int
    unknowns: Tuple[Unknown, ...]
    vectors: Tuple[Tuple[Fraction, ...], ...]  # null space basis in the coordinates of ``unknowns``
    basis: Tuple[Derivation, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def combination(self, coefficients: Sequence[Fraction]) -> Tuple[Fraction, ...]:
        return tuple(
            sum((c * v[k] for c, v in zip(coefficients, self.vectors)), Fraction(0)) for k in range(len(self.unknowns))
        )


def _derivation_from_vector(R: TrinomialRing, unknowns: Sequence[Unknown], vector: Sequence[Fraction]) -> Derivation:
    terms: List[Dict[Monomial, Fraction]] = [{} for _ in range(R.trinomial.n)]
    for (k, monomial), c in zip(unknowns, vector):
        if c:
            terms[k][monomial] = c
    return Derivation.from_images(R, [R.from_terms(images) for images in terms])


def _fraction(entry) -> Fraction:
    return Fraction(int(entry.p), int(entry.q))


def _null_space(rows: List[List[Fraction]], width: int) -> List[Tuple[Fraction, ...]]:
    """Null space basis from the reduced row echelon form, one vector per free column in column order."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(width)) for i in range(width)]
    matrix = DomainMatrix([[to_qq(x) for x in row] for row in rows], (len(rows), width), QQ)
    rref, pivots = matrix.rref()
    reduced = rref.to_Matrix()
    vectors = []
    for free in (j for j in range(width) if j not in pivots):
        v = [Fraction(0)] * width
        v[free] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -_fraction(reduced[r, free]) / _fraction(reduced[r, p])
        vectors.append(tuple(v))
    return vectors


def derivation_space(
    e: GroupElement,
    cap: int,
    t: TrinomialData,
    fg: FineGrading,
    R: Optional[TrinomialRing] = None,
    pf: Optional[PositiveFunctional] = None,
) -> DerivationSpace:
    """All derivations of degree e whose images have total degree at most cap."""
    g_total = max(sum(block) for block in t.exponents)
    if cap < g_total:
        raise CapTooSmall(f"cap {cap} is below the total degree {g_total} of g")
    R = R or TrinomialRing(t)
    pf = pf or positive_functional(t, fg)
    unknowns: List[Unknown] = []
    for k, generator_degree in enumerate(fg.generator_degrees):
        basis = component_basis(generator_degree + e, cap, t, fg, pf)
        unknowns.extend((k, monomial) for monomial in basis.monomials)
    if not unknowns:
        return DerivationSpace(e, cap, (), (), ())

    # column of each unknown: NF(∂g/∂T_k · T^monomial)
    gradient = [R.partial(R.g, v) for v in t.variables]
    columns = [R.normal_form(gradient[k] * R.monomial(monomial)) for k, monomial in unknowns]
    row_monomials = sorted({m for column in columns for m in column.keys()}, reverse=True)
    index = {m: r for r, m in enumerate(row_monomials)}
    rows = [[Fraction(0)] * len(unknowns) for _ in row_monomials]
    for col, column in enumerate(columns):
        for m, c in column.terms():
            rows[index[m]][col] = to_fraction(c)

    vectors = _null_space(rows, len(unknowns))
    basis = tuple(_derivation_from_vector(R, unknowns, v) for v in vectors)
    logger.debug(
        "degree %s: %d unknowns, %d constraints, dimension %d", e, len(unknowns), len(rows), len(basis)
    )
    return DerivationSpace(e, cap, tuple(unknowns), tuple(vectors), basis)


def coefficient_vector(space: DerivationSpace, d: Derivation) -> Optional[Tuple[Fraction, ...]]:
    """Coordinates of d over the unknowns of the space, or None when an image leaves the allowed monomials."""
    position = {unknown: col for col, unknown in enumerate(space.unknowns)}
    vector = [Fraction(0)] * len(space.unknowns)
    for k, image in enumerate(d.images):
        for m, c in d.ring.terms(image):
            col = position.get((k, m))
            if col is None:
                return None
            vector[col] = c
    return tuple(vector)


def image_total_degree(d: Derivation) -> int:
    """Largest total degree among the monomials of d's images."""
    return max((sum(u) for image in d.images for u, _ in d.ring.terms(image)), default=0)


def _rank(rows: Sequence[Sequence[Fraction]], width: int) -> int:
    if not rows or not width:
        return 0
    return DomainMatrix([[to_qq(x) for x in row] for row in rows], (len(rows), width), QQ).rank()


def space_contains(space: DerivationSpace, d: Derivation) -> bool:
    """Exact membership of d in the span of the space's basis."""
    vector = coefficient_vector(space, d)
    if vector is None:
        return False
    if not any(vector):
        return True
    width = len(space.unknowns)
    return _rank(list(space.vectors) + [vector], width) == _rank(space.vectors, width)


@dataclass
class DegreeOutcome:
    degree: GroupElement
    is_root: bool
    dimension: int
    nilpotent: int = 0
    unknown: int = 0
    undecided: List[Derivation] = field(default_factory=list)  # UnknownAtCap, counted but not judged
    counterexamples: List[Derivation] = field(default_factory=list)
    needs_scalar_extension: List[Derivation] = field(default_factory=list)
    witness_outside_space: bool = False  # the constructive witness fits the cap but is not in the space

    @property
    def missing_root_witness(self) -> bool:
        return self.is_root and self.nilpotent == 0

    @property
    def non_root_nilpotent(self) -> bool:
        return not self.is_root and self.nilpotent > 0


@dataclass
class Report:
    trinomial: TrinomialData
    cap: int
    nilpotency_cap: int
    samples: int
    seed: int
    outcomes: List[DegreeOutcome] = field(default_factory=list)

    @property
    def counterexamples(self) -> List[Tuple[GroupElement, Derivation]]:
        return [(o.degree, d) for o in self.outcomes for d in o.counterexamples]

    @property
    def needs_scalar_extension(self) -> List[Tuple[GroupElement, Derivation]]:
        return [(o.degree, d) for o in self.outcomes for d in o.needs_scalar_extension]

    @property
    def missing_root_witness(self) -> List[GroupElement]:
        return [o.degree for o in self.outcomes if o.missing_root_witness]

    @property
    def non_root_nilpotent(self) -> List[GroupElement]:
        return [o.degree for o in self.outcomes if o.non_root_nilpotent]

    @property
    def witness_outside_space(self) -> List[GroupElement]:
        return [o.degree for o in self.outcomes if o.witness_outside_space]

    @property
    def unknown(self) -> int:
        return sum(o.unknown for o in self.outcomes)

    @property
    def ok(self) -> bool:
        return not (
            self.counterexamples or self.missing_root_witness or self.non_root_nilpotent or self.witness_outside_space
        )


def verify_theorem(
    t: TrinomialData,
    degrees: Sequence[GroupElement],
    cap: int,
    nilpotency_cap: int,
    samples: int,
    seed: int = 0,
    system: Optional[RootSystem] = None,
) -> Report:
    """Check that every certified-nilpotent derivation of the given degrees is elementary.

    Each space contributes its basis, ``samples`` random integer combinations of
    it, and at root degrees the constructive witness when the space contains it.
    """
    system = system or RootSystem(t)
    rng = random.Random(seed)
    report = Report(t, cap, nilpotency_cap, samples, seed)
    for e in sorted(degrees, key=lambda x: (x.free, x.torsion)):
        space = derivation_space(e, cap, t, system.grading, system.ring, system.functional)
        query = system.is_root(e)
        outcome = DegreeOutcome(e, query.is_root, space.dimension)
        candidates = list(space.basis)
        for _ in range(samples if space.dimension else 0):
            coefficients = [Fraction(rng.randint(-3, 3)) for _ in space.vectors]
            candidates.append(_derivation_from_vector(system.ring, space.unknowns, space.combination(coefficients)))
        if query.is_root:
            basic_set, witness = query.containing_sets[0]
            constructed = system.witness_derivation(e, basic_set, witness)
            if space_contains(space, constructed):
                candidates.append(constructed)
            elif image_total_degree(constructed) <= cap:
                logger.error("witness derivation of degree %s is not in the space at cap %d", e, cap)
                outcome.witness_outside_space = True
            else:
                logger.debug("witness derivation of degree %s exceeds cap %d", e, cap)
        for d in candidates:
            if d.is_zero():
                continue
            verdict = bounded_nilpotency(d, nilpotency_cap)
            if not isinstance(verdict, Nilpotent):
                outcome.unknown += 1
                outcome.undecided.append(d)
                continue
            outcome.nilpotent += 1
            recognized = is_elementary(d, system.grading)
            if not isinstance(recognized, NotElementary):
                continue
            if recognized.scalar_extension:
                logger.warning("nilpotent derivation of degree %s needs a scalar extension", e)
                outcome.needs_scalar_extension.append(d)
            else:
                logger.error("nilpotent derivation of degree %s is not elementary: %s", e, recognized.reason)
                outcome.counterexamples.append(d)
        logger.info(
            "degree %s: root=%s dimension=%d nilpotent=%d unknown=%d counterexamples=%d",
            e,
            outcome.is_root,
            outcome.dimension,
            outcome.nilpotent,
            outcome.unknown,
            len(outcome.counterexamples),
        )
        report.outcomes.append(outcome)
    return report

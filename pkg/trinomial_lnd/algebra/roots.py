"""Roots: degrees of homogeneous locally nilpotent derivations.

An element e of K is a root exactly when it lies in one of the basic sets

    E(T_ac_a, T_bc_b) = deg g − deg T_ac_a − deg T_bc_b + monoid(deg T_ij, other ij)

taken over positions in distinct blocks with at least one of the two exponents
equal to 1. Membership is decided by a lattice search bounded by the positive
functional ψ.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple, Union

from trinomial_lnd.algebra.abelian import CoordinateSystem, GroupElement
from trinomial_lnd.algebra.derivation import (
    Derivation,
    ElementarySpec,
    ElementaryType,
    Multiplier,
    elementary,
    elementary_classes,
)
from trinomial_lnd.algebra.ring import FineGrading, TrinomialData, TrinomialRing, Variable, fine_grading
from trinomial_lnd.algebra.semigroup import LatticeSearch, PositiveFunctional, positive_functional
from trinomial_lnd.errors import EmptyBox, InvalidWitness, InvariantViolation, LengthMismatch

logger = logging.getLogger(__name__)

__all__ = [
    "BasicSet",
    "NotMember",
    "PositiveFunctional",
    "RootQuery",
    "RootSystem",
    "Witness",
    "basic_sets",
    "enumerate_roots_in_box",
    "is_root",
    "is_type_one_degree",
    "membership",
    "monoid_membership",
    "positive_functional",
    "psi_window",
    "witness_derivation",
]


class SearchMarker(Enum):
    NOT_MEMBER = "not a member"


NotMember = SearchMarker.NOT_MEMBER


@dataclass(frozen=True)
class Witness:
    u: Tuple[int, ...]  # exponent per generator, zero on the pair of the basic set


@dataclass(frozen=True)
class BasicSet:
    pair: Tuple[Variable, Variable]
    offset: GroupElement
    generators: Tuple[GroupElement, ...]
    positions: Tuple[int, ...]  # exponent-vector positions of the generators

    @property
    def label(self) -> str:
        (a, ca), (b, cb) = self.pair
        return f"E(T({a},{ca}),T({b},{cb}))"

    @property
    def kernel_block(self) -> int:
        """The block containing neither position of the pair."""
        return ({0, 1, 2} - {self.pair[0][0], self.pair[1][0]}).pop()


def basic_sets(t: TrinomialData, fg: FineGrading) -> List[BasicSet]:
    """One set per unordered pair of positions in distinct blocks with min exponent 1, in variable order."""
    sets = []
    for first, second in combinations(t.variables, 2):
        if first[0] == second[0] or min(t.exponent(first), t.exponent(second)) != 1:
            continue
        positions = tuple(k for k, v in enumerate(t.variables) if v not in (first, second))
        offset = fg.g_degree - fg.variable_degree(first) - fg.variable_degree(second)
        sets.append(
            BasicSet(
                pair=(first, second),
                offset=offset,
                generators=tuple(fg.generator_degrees[k] for k in positions),
                positions=positions,
            )
        )
    return sets


def membership(e: GroupElement, B: BasicSet, pf: PositiveFunctional) -> Union[Witness, SearchMarker]:
    """Witness(u) with e = offset + Σ u_ij·deg T_ij, or NotMember."""
    residual = e - B.offset
    budget = pf(residual)
    if budget < 0:
        return NotMember
    search = LatticeSearch(B.generators, [pf.weights[k] for k in B.positions])
    solution = search.first(residual, budget)
    if solution is None:
        return NotMember
    u = [0] * len(pf.weights)
    for k, power in zip(B.positions, solution):
        u[k] = power
    return Witness(tuple(u))


@dataclass(frozen=True)
class RootQuery:
    element: GroupElement
    containing_sets: Tuple[Tuple[BasicSet, Witness], ...]
    type_one: bool

    @property
    def is_root(self) -> bool:
        return bool(self.containing_sets)

    @property
    def count(self) -> int:
        return len(self.containing_sets)

    def positions(self) -> Dict[int, int]:
        """The position c_i that a derivation of this degree uses in each non-kernel block."""
        chosen: Dict[int, int] = {}
        for basic_set, _ in self.containing_sets:
            for i, c in basic_set.pair:
                if chosen.setdefault(i, c) != c:
                    raise InvariantViolation(
                        f"degree {self.element} is reached with both T({i},{chosen[i]}) and T({i},{c}) non-kernel"
                    )
        return chosen


def is_root(
    e: GroupElement,
    t: TrinomialData,
    fg: FineGrading,
    pf: PositiveFunctional,
    sets: Optional[Sequence[BasicSet]] = None,
) -> RootQuery:
    """Membership in every basic set, with one witness per containing set."""
    sets = basic_sets(t, fg) if sets is None else sets
    found = []
    for basic_set in sets:
        witness = membership(e, basic_set, pf)
        if witness is not NotMember:
            found.append((basic_set, witness))
    if len(found) > 3:
        raise InvariantViolation(f"degree {e} lies in {len(found)} basic sets; at most three are possible")
    query = RootQuery(e, tuple(found), is_type_one_degree(e, t, fg, pf) if found else False)
    query.positions()
    return query


def is_type_one_degree(e: GroupElement, t: TrinomialData, fg: FineGrading, pf: PositiveFunctional) -> bool:
    """Whether e = 2·deg g − Σ_i deg T_ic_i + Σ u_ij·deg T_ij + m·deg g for admissible Type I data."""
    for cls in elementary_classes(t):
        if cls.type_tag is not ElementaryType.I:
            continue
        chosen = [(i, cls.C[i]) for i in range(3)]
        offset = 2 * fg.g_degree
        for variable in chosen:
            offset = offset - fg.variable_degree(variable)
        residual = e - offset
        budget = pf(residual)
        if budget < 0:
            continue
        positions = [k for k, v in enumerate(t.variables) if v not in chosen]
        search = LatticeSearch(
            [fg.generator_degrees[k] for k in positions] + [fg.g_degree],
            [pf.weights[k] for k in positions] + [pf.block_value],
        )
        if search.first(residual, budget) is not None:
            return True
    return False


def witness_derivation(
    e: GroupElement, B: BasicSet, witness: Witness, R: TrinomialRing, fg: FineGrading
) -> Derivation:
    """The Type II derivation T^u·δ_{C,β} of degree e with non-kernel variables B.pair."""
    t = R.trinomial
    u = tuple(witness.u)
    if len(u) != t.n or any(k < 0 for k in u):
        raise InvalidWitness(f"a witness needs {t.n} nonnegative exponents, got {list(u)}")
    if any(u[t.index(v)] for v in B.pair):
        raise InvalidWitness(f"the witness uses a variable of the pair of {B.label}")
    if B.offset + fg.degree_of(u) != e:
        raise InvalidWitness(f"offset of {B.label} plus the witness degree is not {e}")
    (a, ca), (b, cb) = B.pair
    C = [1, 1, 1]
    C[a], C[b] = ca, cb
    beta = [0, 0, 0]
    beta[a], beta[b] = 1, -1
    spec = ElementarySpec.build(t, C, beta, Multiplier(u))
    return elementary(R, spec)


def monoid_membership(w: GroupElement, fg: FineGrading, pf: PositiveFunctional) -> bool:
    """Whether the homogeneous component of degree w is nonzero."""
    budget = pf(w)
    if budget < 0:
        return False
    return LatticeSearch(fg.generator_degrees, pf.weights).first(w, budget) is not None


class RootSystem:
    """Everything the root decisions need for one trinomial, built once."""

    def __init__(
        self,
        t: TrinomialData,
        fg: Optional[FineGrading] = None,
        coordinates: Optional[CoordinateSystem] = None,
    ):
        self.trinomial = t
        self.ring = TrinomialRing(t)
        self.grading = fg or fine_grading(t)
        self.functional = positive_functional(t, self.grading)
        self.basic_sets = basic_sets(t, self.grading)
        self.coordinates = coordinates or CoordinateSystem.canonical(self.grading.group)

    def psi(self, e: GroupElement) -> int:
        return self.functional(e)

    def membership(self, e: GroupElement, B: BasicSet) -> Union[Witness, SearchMarker]:
        return membership(e, B, self.functional)

    def is_root(self, e: GroupElement) -> RootQuery:
        return is_root(e, self.trinomial, self.grading, self.functional, self.basic_sets)

    def is_type_one_degree(self, e: GroupElement) -> bool:
        return is_type_one_degree(e, self.trinomial, self.grading, self.functional)

    def witness_derivation(self, e: GroupElement, B: BasicSet, witness: Witness) -> Derivation:
        return witness_derivation(e, B, witness, self.ring, self.grading)

    def monoid_membership(self, w: GroupElement) -> bool:
        return monoid_membership(w, self.grading, self.functional)

    def element(self, coords: Sequence[int], torsion: Sequence[int] = ()) -> Optional[GroupElement]:
        return self.coordinates.from_coordinates(coords, torsion)


def enumerate_roots_in_box(bounds: Sequence[Tuple[int, int]], system: RootSystem) -> List[RootQuery]:
    """Roots whose coordinates lie in the box, for every torsion residue; coordinate order, torsion last."""
    coordinates = system.coordinates
    if len(bounds) != coordinates.dimension:
        raise LengthMismatch(f"{coordinates.dimension} intervals expected, got {len(bounds)}")
    for lo, hi in bounds:
        if lo > hi:
            raise EmptyBox(f"interval [{lo}, {hi}] is empty")
    roots = []
    points = 0
    for point in product(*(range(lo, hi + 1) for lo, hi in bounds)):
        for torsion in system.grading.group.torsion_elements():
            e = coordinates.from_coordinates(point, torsion)
            if e is None:
                continue
            points += 1
            query = system.is_root(e)
            if query.is_root:
                roots.append(query)
    logger.info("%d roots among %d elements of the box %s", len(roots), points, list(bounds))
    return roots


def psi_window(lo: int, hi: int, system: RootSystem) -> List[GroupElement]:
    """All elements with lo ≤ ψ(e) ≤ hi, ordered by ψ then torsion; K must have free rank 1."""
    group = system.grading.group
    if group.free_rank != 1:
        raise EmptyBox(f"a ψ-window is finite only for free rank 1, the grading group has free rank {group.free_rank}")
    if lo > hi:
        raise EmptyBox(f"window [{lo}, {hi}] is empty")
    (slope,) = system.functional.free_coefficients
    first, last = sorted((lo // slope, hi // slope))
    elements = []
    for x in range(first - 1, last + 2):
        if lo <= slope * x <= hi:
            elements.extend(group.element((x,), torsion) for torsion in group.torsion_elements())
    return sorted(elements, key=lambda e: (system.functional(e), e.torsion))

"""Trinomial data, polynomials in the T_ij, normal forms modulo (g), and the fine grading.

Polynomials are sympy ``PolyElement`` objects over ``QQ`` in a ring with the
lexicographic order T_01 > T_02 > ... > T_0n0 > T_11 > ... > T_2n2. Under this
order the leading monomial of g is T_0^l0, and since a single polynomial is a
Groebner basis of the ideal it generates, division by g gives unique normal forms.
"""

import logging
import operator
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property, reduce
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from sympy.polys.domains import QQ
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement, ring

from trinomial_lnd.algebra.abelian import (
    GradingGroup,
    GroupElement,
    IntegerMatrix,
    quotient_group,
)
from trinomial_lnd.errors import IndexOutOfRange, InvariantViolation, LengthMismatch, SemanticError

logger = logging.getLogger(__name__)

Polynomial = PolyElement
Monomial = Tuple[int, ...]
Variable = Tuple[int, int]  # (block i, position j), j is 1-based


class Marker(Enum):
    ZERO_POLYNOMIAL = "zero polynomial"
    NOT_HOMOGENEOUS = "not homogeneous"
    NO_MATCH = "no match"


ZeroPolynomial = Marker.ZERO_POLYNOMIAL
NotHomogeneous = Marker.NOT_HOMOGENEOUS
NoMatch = Marker.NO_MATCH


@dataclass(frozen=True)
class TrinomialData:
    """Exponent tuples l_0, l_1, l_2 of g = T_0^l0 + T_1^l1 + T_2^l2."""

    exponents: Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]

    def __post_init__(self):
        blocks = tuple(tuple(block) for block in self.exponents)
        if len(blocks) != 3:
            raise SemanticError(f"a trinomial has exactly three blocks, got {len(blocks)}")
        for i, block in enumerate(blocks):
            if not block:
                raise SemanticError(f"block {i} is empty; every block needs at least one variable")
            for j, l in enumerate(block, start=1):
                if not isinstance(l, int) or isinstance(l, bool) or l < 1:
                    raise SemanticError(f"exponent l_{i}{j} must be a positive integer, got {l!r}")
        object.__setattr__(self, "exponents", blocks)

    @classmethod
    def of(cls, l0: Sequence[int], l1: Sequence[int], l2: Sequence[int]) -> "TrinomialData":
        return cls((tuple(l0), tuple(l1), tuple(l2)))

    @classmethod
    def all_ones(cls, n0: int, n1: int, n2: int) -> "TrinomialData":
        return cls.of((1,) * n0, (1,) * n1, (1,) * n2)

    @property
    def block_sizes(self) -> Tuple[int, int, int]:
        return tuple(len(block) for block in self.exponents)

    @property
    def n(self) -> int:
        return sum(self.block_sizes)

    @cached_property
    def variables(self) -> Tuple[Variable, ...]:
        return tuple((i, j) for i, block in enumerate(self.exponents) for j in range(1, len(block) + 1))

    def index(self, variable: Variable) -> int:
        """Position of T_ij in exponent vectors."""
        i, j = variable
        if i not in (0, 1, 2) or not 1 <= j <= len(self.exponents[i]):
            raise IndexOutOfRange(f"T({i},{j}) is not a variable of this trinomial")
        return sum(self.block_sizes[:i]) + j - 1

    def exponent(self, variable: Variable) -> int:
        self.index(variable)
        return self.exponents[variable[0]][variable[1] - 1]

    def block_vector(self, i: int) -> Tuple[int, ...]:
        """Exponent vector of the block monomial T_i^l_i."""
        v = [0] * self.n
        for j, l in enumerate(self.exponents[i], start=1):
            v[self.index((i, j))] = l
        return tuple(v)

    def __str__(self) -> str:
        blocks = []
        for i, block in enumerate(self.exponents):
            blocks.append("*".join(f"T({i},{j})" + (f"^{l}" if l > 1 else "") for j, l in enumerate(block, 1)))
        return " + ".join(blocks)


def build_matrix_L(t: TrinomialData) -> IntegerMatrix:
    """The 2 x n matrix (-l_0 | l_1 | 0 ; -l_0 | 0 | l_2)."""
    l0, l1, l2 = t.exponents
    return IntegerMatrix.from_rows(
        [
            [-x for x in l0] + list(l1) + [0] * len(l2),
            [-x for x in l0] + [0] * len(l1) + list(l2),
        ]
    )


def presentation_matrix(t: TrinomialData) -> IntegerMatrix:
    """L*, whose columns span the relation lattice of the fine grading."""
    return build_matrix_L(t).transpose()


@dataclass(frozen=True)
class FineGrading:
    group: GradingGroup
    generator_degrees: Tuple[GroupElement, ...]
    g_degree: GroupElement
    trinomial: TrinomialData

    def variable_degree(self, variable: Variable) -> GroupElement:
        return self.generator_degrees[self.trinomial.index(variable)]

    def degree_of(self, u: Sequence[int]) -> GroupElement:
        """Degree of the monomial T^u."""
        if len(u) != len(self.generator_degrees):
            raise LengthMismatch(f"expected an exponent vector of length {len(self.generator_degrees)}, got {len(u)}")
        total = self.group.zero()
        for k, deg in zip(u, self.generator_degrees):
            if k:
                total = total + k * deg
        return total


def fine_grading(t: TrinomialData) -> FineGrading:
    group = quotient_group(presentation_matrix(t))
    degrees = tuple(group.project(tuple(int(k == m) for k in range(t.n))) for m in range(t.n))
    block_sums = [group.project(t.block_vector(i)) for i in range(3)]
    if not block_sums[0] == block_sums[1] == block_sums[2]:
        raise InvariantViolation(f"block degrees of {t} differ: {block_sums}")
    logger.debug(
        "fine grading of %s: free rank %d, torsion %s", t, group.free_rank, list(group.torsion_invariants)
    )
    return FineGrading(group=group, generator_degrees=degrees, g_degree=block_sums[0], trinomial=t)


def to_qq(value: Union[int, Fraction]):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def to_fraction(coefficient) -> Fraction:
    return Fraction(int(coefficient.numerator), int(coefficient.denominator))


class TrinomialRing:
    """The polynomial ring Q[T_ij] together with g and its normal forms."""

    def __init__(self, t: TrinomialData):
        self.trinomial = t
        names = ",".join(f"T{i}_{j}" for i, j in t.variables)
        self.ring, *gens = ring(names, QQ, lex)
        self.gens = tuple(gens)
        self.block_monomials = tuple(self.monomial(t.block_vector(i)) for i in range(3))
        self.g = reduce(operator.add, self.block_monomials)

    @property
    def zero(self) -> Polynomial:
        return self.ring.zero

    @property
    def one(self) -> Polynomial:
        return self.ring.one

    def variable(self, variable: Variable) -> Polynomial:
        return self.gens[self.trinomial.index(variable)]

    def monomial(self, u: Sequence[int], coefficient: Union[int, Fraction] = 1) -> Polynomial:
        if len(u) != self.trinomial.n:
            raise LengthMismatch(f"expected an exponent vector of length {self.trinomial.n}, got {len(u)}")
        if any(k < 0 for k in u):
            raise ValueError(f"monomial exponents must be nonnegative, got {tuple(u)}")
        return self.from_terms({tuple(u): coefficient})

    def constant(self, c: Union[int, Fraction]) -> Polynomial:
        return self.from_terms({(0,) * self.trinomial.n: c})

    def from_terms(self, terms: Mapping[Monomial, Union[int, Fraction]]) -> Polynomial:
        return self.ring.from_dict({tuple(u): to_qq(c) for u, c in terms.items() if c != 0})

    def terms(self, p: Polynomial) -> List[Tuple[Monomial, Fraction]]:
        """Terms in canonical (descending lex) order with Fraction coefficients."""
        return [(m, to_fraction(c)) for m, c in p.terms()]

    def scale(self, p: Polynomial, c: Union[int, Fraction]) -> Polynomial:
        return p * to_qq(c)

    def normal_form(self, p: Polynomial) -> Polynomial:
        return p.rem(self.g)

    def partial(self, p: Polynomial, variable: Variable) -> Polynomial:
        return p.diff(self.variable(variable))

    def is_reduced_monomial(self, u: Sequence[int]) -> bool:
        """True unless T_0^l0 divides T^u."""
        lead = self.trinomial.block_vector(0)
        return any(k < l for k, l in zip(u, lead) if l)

    def block_partial(self, i: int, c: int) -> Polynomial:
        """∂(T_i^l_i)/∂T_ic."""
        return self.partial(self.block_monomials[i], (i, c))


def poly_arithmetic(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    operations = {"add": operator.add, "sub": operator.sub, "mul": operator.mul}
    if op not in operations:
        raise ValueError(f"op must be one of {sorted(operations)}, got {op!r}")
    if a.ring != b.ring:
        raise LengthMismatch("polynomials live in different rings")
    return operations[op](a, b)


def partial_derivative(R: TrinomialRing, p: Polynomial, variable: Variable) -> Polynomial:
    return R.partial(p, variable)


def normal_form(R: TrinomialRing, p: Polynomial) -> Polynomial:
    return R.normal_form(p)


def homogeneous_degree(p: Polynomial, fg: FineGrading) -> Union[GroupElement, Marker]:
    """The common fine degree of the terms of p, ZeroPolynomial for p = 0, else NotHomogeneous."""
    if not p:
        return ZeroPolynomial
    degrees = {fg.degree_of(m) for m in p.monoms()}
    if len(degrees) != 1:
        return NotHomogeneous
    return degrees.pop()


@dataclass(frozen=True)
class HomogeneousDecomposition:
    """p = T^monomial · F(T_0^l0, T_1^l1) with F = Σ_k coefficients[k] x^(d-k) y^k."""

    monomial: Monomial
    coefficients: Tuple[Fraction, ...]

    @property
    def form_degree(self) -> int:
        return len(self.coefficients) - 1


def _block_multiple(q: Monomial, block: Tuple[int, ...]) -> Optional[int]:
    """a with q = a·block on the block's support, or None."""
    support = [(k, l) for k, l in enumerate(block) if l]
    a, rem = divmod(q[support[0][0]], support[0][1])
    if rem or any(q[k] != a * l for k, l in support):
        return None
    return a


def decompose_homogeneous(p: Polynomial, t: TrinomialData) -> Union[HomogeneousDecomposition, Marker]:
    """Factor this representative as a monomial times a binary form in T_0^l0, T_1^l1."""
    if not p:
        return NoMatch
    monoms = p.monoms()
    gcd = tuple(min(column) for column in zip(*monoms))
    x_block, y_block = t.block_vector(0), t.block_vector(1)
    block2 = [k for k, l in enumerate(t.block_vector(2)) if l]
    form: Dict[Tuple[int, int], Fraction] = {}
    for m, c in p.terms():
        q = tuple(a - b for a, b in zip(m, gcd))
        if any(q[k] for k in block2):
            return NoMatch
        a, b = _block_multiple(q, x_block), _block_multiple(q, y_block)
        if a is None or b is None:
            return NoMatch
        form[(a, b)] = to_fraction(c)
    degrees = {a + b for a, b in form}
    if len(degrees) != 1:
        return NoMatch
    d = degrees.pop()
    return HomogeneousDecomposition(
        monomial=gcd, coefficients=tuple(form.get((d - k, k), Fraction(0)) for k in range(d + 1))
    )


def validate_coarsening(
    fg: FineGrading,
    assigned: Sequence[Union[int, Sequence[int]]],
    moduli: Optional[Sequence[int]] = None,
) -> bool:
    """True iff the degree assignment vanishes on every relation of the fine grading.

    ``moduli`` gives the target group Z/m_1 ⊕ ... (0 stands for Z); the target is
    free when omitted.
    """
    if len(assigned) != fg.group.ambient_rank:
        raise LengthMismatch(f"one degree per generator expected ({fg.group.ambient_rank}), got {len(assigned)}")
    vectors = [(v,) if isinstance(v, int) else tuple(v) for v in assigned]
    width = len(vectors[0])
    if any(len(v) != width for v in vectors):
        raise LengthMismatch("assigned degrees have different lengths")
    moduli = tuple(moduli) if moduli is not None else (0,) * width
    if len(moduli) != width:
        raise LengthMismatch(f"{width} moduli expected, got {len(moduli)}")
    presentation = fg.group.presentation
    for col in range(presentation.cols):
        relation = presentation.column(col)
        for coord, m in enumerate(moduli):
            total = sum(r * v[coord] for r, v in zip(relation, vectors))
            if (total % m if m else total) != 0:
                return False
    return True


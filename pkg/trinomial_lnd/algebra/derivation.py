"""Derivations of R(g) and the elementary derivations h·δ_{C,β}.

A derivation is stored by the normal forms of its generator images; it extends
to every polynomial by the Leibniz rule and is well defined on R(g) exactly
when it maps g into the ideal (g).
"""

import logging
import operator
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple, Union

from trinomial_lnd.algebra.abelian import GroupElement
from trinomial_lnd.algebra.ring import (
    FineGrading,
    Marker,
    NotHomogeneous,
    Polynomial,
    TrinomialData,
    TrinomialRing,
    Variable,
    fine_grading,
    homogeneous_degree,
    to_fraction,
)
from trinomial_lnd.algebra.semigroup import LatticeSearch, positive_functional
from trinomial_lnd.errors import (
    BetaCaseInvalid,
    BetaSumNonzero,
    ExponentConditionViolated,
    IndexOutOfRange,
    InvalidKernelShape,
    LengthMismatch,
    SupportViolation,
    ZeroDerivation,
)

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class Derivation:
    """A derivation of R(g) given by the normal forms of the images of T_ij."""

    ring: TrinomialRing
    images: Tuple[Polynomial, ...]

    @classmethod
    def from_images(
        cls, R: TrinomialRing, images: Union[Mapping[Variable, Polynomial], Sequence[Polynomial]]
    ) -> "Derivation":
        """Build from a full image sequence or a partial mapping; omitted generators map to 0."""
        t = R.trinomial
        if isinstance(images, Mapping):
            full = [R.zero] * t.n
            for variable, image in images.items():
                full[t.index(variable)] = image
        else:
            full = list(images)
            if len(full) != t.n:
                raise LengthMismatch(f"one image per generator expected ({t.n}), got {len(full)}")
        return cls(R, tuple(R.normal_form(R.ring(p)) for p in full))

    @classmethod
    def zero(cls, R: TrinomialRing) -> "Derivation":
        return cls(R, (R.zero,) * R.trinomial.n)

    @property
    def trinomial(self) -> TrinomialData:
        return self.ring.trinomial

    def image(self, variable: Variable) -> Polynomial:
        return self.images[self.trinomial.index(variable)]

    def is_zero(self) -> bool:
        return not any(self.images)

    def is_well_defined(self) -> bool:
        """δ(g) = 0 in R(g)."""
        return not apply(self, self.ring.g)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.trinomial == other.trinomial and self.images == other.images

    def __hash__(self) -> int:
        return hash((self.trinomial, self.images))


def apply(d: Derivation, p: Polynomial) -> Polynomial:
    """Leibniz extension of d to p, reduced modulo g."""
    R = d.ring
    total = R.zero
    for variable, image in zip(d.trinomial.variables, d.images):
        if image:
            partial = R.partial(p, variable)
            if partial:
                total += partial * image
    return R.normal_form(total)


def scale(d: Derivation, h: Polynomial) -> Derivation:
    """h·d."""
    R = d.ring
    return Derivation(d.ring, tuple(R.normal_form(h * image) if image else R.zero for image in d.images))


def derivation_degree(d: Derivation, fg: FineGrading) -> Union[GroupElement, Marker]:
    if d.is_zero():
        raise ZeroDerivation("the zero derivation has no degree")
    shifts = set()
    for image, generator_degree in zip(d.images, fg.generator_degrees):
        if not image:
            continue
        image_degree = homogeneous_degree(image, fg)
        if image_degree is NotHomogeneous:
            return NotHomogeneous
        shifts.add(image_degree - generator_degree)
    if len(shifts) != 1:
        return NotHomogeneous
    return shifts.pop()


@dataclass(frozen=True)
class Nilpotent:
    index: int


@dataclass(frozen=True)
class UnknownAtCap:
    cap: int


def bounded_nilpotency(d: Derivation, cap: int) -> Union[Nilpotent, UnknownAtCap]:
    """The least k ≤ cap with δ^k(T_ij) = 0 for every generator, or UnknownAtCap.

    A derivation whose powers kill every generator is locally nilpotent. This never
    claims non-nilpotency; it only gives up at the cap.
    """
    if cap < 1:
        raise ValueError(f"cap must be at least 1, got {cap}")
    current = [image for image in d.images if image]
    k = 1
    while current:
        if k == cap:
            logger.debug("nilpotency undecided at cap %d", cap)
            return UnknownAtCap(cap)
        current = [q for q in (apply(d, p) for p in current) if q]
        k += 1
    return Nilpotent(k)


class ElementaryType(Enum):
    I = "I"
    II = "II"


@dataclass(frozen=True)
class Multiplier:
    """h = alpha · T^u · (β_1 T_0^l0 − β_0 T_1^l1)^m."""

    u: Tuple[int, ...]
    m: int = 0
    alpha: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(int(k) for k in self.u))
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if any(k < 0 for k in self.u) or self.m < 0:
            raise SupportViolation("multiplier exponents must be nonnegative")
        if self.alpha == 0:
            raise SupportViolation("multiplier coefficient must be nonzero")

    @classmethod
    def unit(cls, n: int) -> "Multiplier":
        return cls((0,) * n)


@dataclass(frozen=True)
class ElementarySpec:
    C: Tuple[int, int, int]
    beta: Tuple[Fraction, Fraction, Fraction]
    type_tag: ElementaryType
    i0: Optional[int] = None
    multiplier: Optional[Multiplier] = None

    @classmethod
    def build(
        cls,
        t: TrinomialData,
        C: Sequence[int],
        beta: Sequence[Rational],
        multiplier: Optional[Multiplier] = None,
    ) -> "ElementarySpec":
        """Validate (C, β) and classify the case; raises on the first violated condition."""
        if len(C) != 3 or len(beta) != 3:
            raise LengthMismatch("C and beta each need exactly three entries")
        C = tuple(int(c) for c in C)
        for i, c in enumerate(C):
            t.index((i, c))
        beta = tuple(Fraction(b) for b in beta)
        if sum(beta) != 0:
            raise BetaSumNonzero(f"beta must sum to zero, got {' + '.join(str(b) for b in beta)} = {sum(beta)}")
        zeros = [i for i, b in enumerate(beta) if b == 0]
        if len(zeros) > 1:
            raise BetaCaseInvalid(f"beta has {len(zeros)} zero entries; neither case applies")
        i0 = zeros[0] if zeros else None
        active = [i for i in range(3) if i != i0]
        large = [i for i in active if t.exponents[i][C[i] - 1] > 1]
        if len(large) > 1:
            raise ExponentConditionViolated(
                "at most one chosen exponent may exceed 1, but "
                + ", ".join(f"l_{i}{C[i]} = {t.exponents[i][C[i] - 1]}" for i in large)
            )
        if multiplier is not None and len(multiplier.u) != t.n:
            raise LengthMismatch(f"multiplier exponent vector must have length {t.n}")
        type_tag = ElementaryType.II if zeros else ElementaryType.I
        return cls(C=C, beta=beta, type_tag=type_tag, i0=i0, multiplier=multiplier)

    @property
    def active_blocks(self) -> Tuple[int, ...]:
        return tuple(i for i in range(3) if i != self.i0)

    def non_kernel(self) -> Tuple[Variable, ...]:
        return tuple((i, self.C[i]) for i in self.active_blocks)

    def with_multiplier(self, multiplier: Optional[Multiplier]) -> "ElementarySpec":
        return ElementarySpec(self.C, self.beta, self.type_tag, self.i0, multiplier)


def image_products(R: TrinomialRing, C: Sequence[int], i0: Optional[int] = None) -> Dict[int, Polynomial]:
    """∏_{k≠i} ∂T_k^l_k/∂T_kc_k for every active block i (block i0 is skipped)."""
    active = [i for i in range(3) if i != i0]
    partials = {i: R.block_partial(i, C[i]) for i in active}
    return {i: reduce(operator.mul, (partials[k] for k in active if k != i), R.one) for i in active}


def elementary_derivation(R: TrinomialRing, C: Sequence[int], beta: Sequence[Rational]) -> Derivation:
    spec = ElementarySpec.build(R.trinomial, C, beta)
    products = image_products(R, spec.C, spec.i0)
    return Derivation.from_images(R, {(i, spec.C[i]): R.scale(products[i], spec.beta[i]) for i in products})


def kernel_element(R: TrinomialRing, spec: ElementarySpec) -> Polynomial:
    """Normal form of alpha · T^u · (β_1 T_0^l0 − β_0 T_1^l1)^m."""
    multiplier = spec.multiplier or Multiplier.unit(R.trinomial.n)
    if len(multiplier.u) != R.trinomial.n:
        raise LengthMismatch(f"multiplier exponent vector must have length {R.trinomial.n}")
    for variable in spec.non_kernel():
        if multiplier.u[R.trinomial.index(variable)]:
            i, j = variable
            raise SupportViolation(f"T({i},{j}) is a non-kernel variable and cannot appear in the multiplier")
    h = R.monomial(multiplier.u, multiplier.alpha)
    if multiplier.m:
        binomial = R.scale(R.block_monomials[0], spec.beta[1]) - R.scale(R.block_monomials[1], spec.beta[0])
        h = h * binomial**multiplier.m
    return R.normal_form(h)


def elementary(R: TrinomialRing, spec: ElementarySpec) -> Derivation:
    """h·δ_{C,β} with h = kernel_element(spec)."""
    return scale(elementary_derivation(R, spec.C, spec.beta), kernel_element(R, spec))


def elementary_degree(fg: FineGrading, spec: ElementarySpec) -> GroupElement:
    """2·deg g − Σ_i deg T_ic_i (Type I) or deg g − Σ_{i≠i0} deg T_ic_i (Type II), plus deg h."""
    degree = (2 if spec.type_tag is ElementaryType.I else 1) * fg.g_degree
    for variable in spec.non_kernel():
        degree = degree - fg.variable_degree(variable)
    if spec.multiplier is not None:
        degree = degree + fg.degree_of(spec.multiplier.u) + spec.multiplier.m * fg.g_degree
    return degree


def is_in_kernel(d: Derivation, p: Polynomial) -> bool:
    return not apply(d, p)


def non_kernel_variables(d: Derivation) -> FrozenSet[Variable]:
    return frozenset(v for v, image in zip(d.trinomial.variables, d.images) if image)


def proportion(p: Polynomial, q: Polynomial) -> Optional[Fraction]:
    """c with p = c·q for nonzero q, or None."""
    if not q or set(p.keys()) != set(q.keys()):
        return None
    c = p.LC / q.LC
    if p != q * c:
        return None
    return to_fraction(c)


def block_image_proportionality(d: Derivation) -> bool:
    """Whether δ(T_0^l0), δ(T_1^l1), δ(T_2^l2) span a space of dimension at most 1."""
    images = [apply(d, block) for block in d.ring.block_monomials]
    nonzero = [p for p in images if p]
    return all(proportion(p, nonzero[0]) is not None for p in nonzero[1:])


@dataclass(frozen=True)
class NotElementary:
    reason: str
    # set when d would be elementary after adjoining an irrational ratio of β entries
    scalar_extension: bool = False


def is_elementary(d: Derivation, fg: Optional[FineGrading] = None) -> Union[ElementarySpec, NotElementary]:
    """Recognize d as h·δ_{C,β}.

    C is read off the non-kernel variables, β and h come from exact division of
    the images by the partial-derivative products. β is normalized so that its
    first nonzero entry is 1 and the remaining scalar goes into h.
    """
    R, t = d.ring, d.trinomial
    if d.is_zero():
        return NotElementary("the zero derivation is not elementary")
    variables = sorted(non_kernel_variables(d))
    blocks = [i for i, _ in variables]
    if len(set(blocks)) != len(blocks):
        return NotElementary(f"more than one non-kernel variable in block {_repeated(blocks)}")
    if len(variables) not in (2, 3):
        return NotElementary(f"{len(variables)} non-kernel variable(s); elementary derivations have 2 or 3")
    i0 = None if len(variables) == 3 else ({0, 1, 2} - set(blocks)).pop()
    C = [1, 1, 1]
    for i, c in variables:
        C[i] = c
    large = [i for i, c in variables if t.exponents[i][c - 1] > 1]
    if len(large) > 1:
        return NotElementary("more than one non-kernel variable has exponent greater than 1")

    products = image_products(R, C, i0)
    pivot = blocks[0]
    quotient, remainder = d.image((pivot, C[pivot])).div(products[pivot])
    if remainder:
        return NotElementary(f"δ(T({pivot},{C[pivot]})) is not divisible by its partial-derivative product")
    beta = [Fraction(0)] * 3
    beta[pivot] = Fraction(1)
    for i in blocks[1:]:
        ratio = proportion(d.image((i, C[i])), R.normal_form(quotient * products[i]))
        if ratio is None:
            return NotElementary(f"δ(T({i},{C[i]})) does not share the multiplier of δ(T({pivot},{C[pivot]}))")
        beta[i] = ratio
    if sum(beta) != 0:
        return NotElementary(f"recovered β = {tuple(str(b) for b in beta)} does not sum to zero")

    base = ElementarySpec.build(t, C, beta)
    if fg is None:
        fg = fine_grading(t)
    multiplier = recover_multiplier(R, fg, base, quotient)
    if multiplier is None:
        return NotElementary("the multiplier is not a homogeneous kernel element of the recovered δ_{C,β}")
    spec = base.with_multiplier(multiplier)
    if elementary(R, spec).images != d.images:
        return NotElementary("the reconstruction does not reproduce the images")
    return spec


def _repeated(blocks: Sequence[int]) -> int:
    return next(i for i in blocks if blocks.count(i) > 1)


def recover_multiplier(
    R: TrinomialRing, fg: FineGrading, base: ElementarySpec, h: Polynomial
) -> Optional[Multiplier]:
    """Write h as alpha · T^u · (β_1 T_0^l0 − β_0 T_1^l1)^m, or None."""
    t = R.trinomial
    kernel_positions = [k for k, v in enumerate(t.variables) if v not in base.non_kernel()]
    if len(h) == 1:
        u, c = h.terms()[0]
        if not any(u[t.index(v)] for v in base.non_kernel()):
            return Multiplier(u, 0, to_fraction(c))
    target = homogeneous_degree(h, fg)
    if not isinstance(target, GroupElement):
        return None
    pf = positive_functional(t, fg)
    search = LatticeSearch(
        [fg.generator_degrees[k] for k in kernel_positions] + [fg.g_degree],
        [pf.weights[k] for k in kernel_positions] + [pf.block_value],
    )
    for solution in search.solutions(target, pf(target)):
        u = [0] * t.n
        for k, power in zip(kernel_positions, solution):
            u[k] = power
        candidate = kernel_element(R, base.with_multiplier(Multiplier(u, solution[-1])))
        alpha = proportion(h, candidate)
        if alpha is not None:
            return Multiplier(u, solution[-1], alpha)
    return None


@dataclass(frozen=True)
class KernelReconstruction:
    C: Tuple[int, int, int]
    type_tag: ElementaryType
    beta: Tuple[Fraction, Fraction, Fraction]  # up to a nonzero scalar

    @property
    def i0(self) -> Optional[int]:
        return next((i for i, b in enumerate(self.beta) if b == 0), None)


def reconstruct_from_kernel(
    t: TrinomialData, kernel_vars: Sequence[Variable], binomial: Tuple[Rational, Rational]
) -> KernelReconstruction:
    """(C, type, β) from the kernel variables and a binomial ζ·T_0^l0 + ξ·T_1^l1 in the kernel."""
    for variable in kernel_vars:
        t.index(variable)
    complement = sorted(set(t.variables) - set(kernel_vars))
    blocks = [i for i, _ in complement]
    if len(complement) not in (2, 3) or len(set(blocks)) != len(blocks):
        raise InvalidKernelShape(
            f"the non-kernel variables {[f'T({i},{j})' for i, j in complement]} are neither one per block "
            "nor two in distinct blocks"
        )
    if sum(1 for i, c in complement if t.exponents[i][c - 1] > 1) > 1:
        raise InvalidKernelShape("more than one non-kernel variable has exponent greater than 1")
    zeta, xi = (Fraction(x) for x in binomial)
    if zeta == 0 and xi == 0:
        raise InvalidKernelShape("the binomial is zero")
    beta = [-xi, zeta, xi - zeta]
    C = [1, 1, 1]
    for i, c in complement:
        C[i] = c
    if len(complement) == 3:
        type_tag = ElementaryType.I
        if 0 in beta:
            raise InvalidKernelShape("a binomial in the kernel of a Type I derivation has ζ, ξ and ζ − ξ nonzero")
    else:
        type_tag = ElementaryType.II
        i0 = ({0, 1, 2} - set(blocks)).pop()
        if beta[i0] != 0 or beta.count(0) != 1:
            raise InvalidKernelShape(f"the binomial is inconsistent with block {i0} lying in the kernel")
    spec = ElementarySpec.build(t, C, beta)
    return KernelReconstruction(spec.C, type_tag, spec.beta)


@dataclass(frozen=True)
class ElementaryClass:
    C: Tuple[int, int, int]
    type_tag: ElementaryType
    i0: Optional[int] = None

    def representative_beta(self) -> Tuple[int, int, int]:
        """A valid β for this class: (1, 1, -2) for Type I, (1, -1) on the active blocks for Type II."""
        if self.i0 is None:
            return (1, 1, -2)
        beta = [0, 0, 0]
        a, b = (i for i in range(3) if i != self.i0)
        beta[a], beta[b] = 1, -1
        return tuple(beta)


def elementary_classes(t: TrinomialData) -> List[ElementaryClass]:
    """Every class of δ_{C,β}: Type I first, then Type II by i0; C in lexicographic order."""
    classes = []
    ranges = [range(1, size + 1) for size in t.block_sizes]
    for C in product(*ranges):
        if sum(1 for i in range(3) if t.exponents[i][C[i] - 1] > 1) <= 1:
            classes.append(ElementaryClass(tuple(C), ElementaryType.I))
    for i0 in range(3):
        a, b = (i for i in range(3) if i != i0)
        for ca, cb in product(ranges[a], ranges[b]):
            if min(t.exponents[a][ca - 1], t.exponents[b][cb - 1]) == 1:
                C = [1, 1, 1]
                C[a], C[b] = ca, cb
                classes.append(ElementaryClass(tuple(C), ElementaryType.II, i0))
    logger.debug("%s has %d elementary classes", t, len(classes))
    return classes


def type_two_counterpart(t: TrinomialData, spec: ElementarySpec, i0: int) -> ElementarySpec:
    """A Type II spec of the same degree as a Type I spec, with block i0 moved into the kernel.

    The binomial factor of the multiplier is replaced by the block monomial of i0
    and T_i0^l_i0 / T_i0c_i0 is added, which matches the degree difference.
    """
    if spec.type_tag is not ElementaryType.I:
        raise ExponentConditionViolated("only a Type I spec has a Type II counterpart")
    if i0 not in (0, 1, 2):
        raise IndexOutOfRange(f"block index must be 0, 1 or 2, got {i0}")
    multiplier = spec.multiplier or Multiplier.unit(t.n)
    block = t.block_vector(i0)
    u = [a + (multiplier.m + 1) * b for a, b in zip(multiplier.u, block)]
    u[t.index((i0, spec.C[i0]))] -= 1
    beta = [0, 0, 0]
    a, b = (i for i in range(3) if i != i0)
    beta[a], beta[b] = 1, -1
    return ElementarySpec.build(t, spec.C, beta, Multiplier(u, 0, multiplier.alpha))


def same_kernel_generator(d1: Derivation, d2: Derivation, fg: Optional[FineGrading] = None) -> bool:
    """Whether two elementary derivations are multiples of one δ_{C,β}, i.e. share their kernel."""
    if d1.trinomial != d2.trinomial:
        return False
    fg = fg or fine_grading(d1.trinomial)
    first, second = is_elementary(d1, fg), is_elementary(d2, fg)
    if isinstance(first, NotElementary) or isinstance(second, NotElementary):
        return False
    if first.type_tag is not second.type_tag or first.i0 != second.i0:
        return False
    if first.non_kernel() != second.non_kernel():
        return False
    return all(first.beta[i] * second.beta[j] == first.beta[j] * second.beta[i] for i in range(3) for j in range(3))

"""Membership in shifted affine monoids of K, bounded by a positive functional.

The functional ψ(T_ij) = w_ij = ∏_{k≠i} A_k, where A_k = Σ_j l_kj, sums to
A_0·A_1·A_2 on every block monomial, so it vanishes on the relations and induces
a homomorphism K → Z that is positive on every generator. Any nonnegative
combination Σ u_k·g_k hitting a target e therefore has Σ u_k·ψ(g_k) = ψ(e),
which bounds the search.
"""

import logging
from dataclasses import dataclass
from math import prod
from typing import Iterator, List, Optional, Sequence, Tuple

from trinomial_lnd.algebra.abelian import GroupElement
from trinomial_lnd.algebra.ring import FineGrading, TrinomialData, fine_grading
from trinomial_lnd.errors import GroupMismatch

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PositiveFunctional:
    weights: Tuple[int, ...]  # w_ij, one per generator
    block_value: int  # W = Σ_j l_ij·w_ij, the same for every block
    free_coefficients: Tuple[int, ...]  # ψ in canonical free coordinates

    def __call__(self, e: GroupElement) -> int:
        if len(e.free) != len(self.free_coefficients):
            raise GroupMismatch("element does not belong to the group of this functional")
        return sum(c * x for c, x in zip(self.free_coefficients, e.free))


def positive_functional(t: TrinomialData, fg: Optional[FineGrading] = None) -> PositiveFunctional:
    fg = fg or fine_grading(t)
    sums = [sum(block) for block in t.exponents]
    weights = tuple(prod(sums[k] for k in range(3) if k != i) for i, _ in t.variables)
    group = fg.group
    section = group.projection_data.U_inverse
    rank = group.projection_data.rank
    free_coefficients = tuple(
        sum(w * section[row, rank + k] for row, w in enumerate(weights)) for k in range(group.free_rank)
    )
    return PositiveFunctional(weights=weights, block_value=prod(sums), free_coefficients=free_coefficients)


class LatticeSearch:
    """Nonnegative integer solutions of Σ u_k·generators[k] = target.

    Generators are visited in decreasing weight, so the tightest bounds come first.
    Solutions are yielded as exponent tuples indexed like ``generators``.
    """

    def __init__(self, generators: Sequence[GroupElement], weights: Sequence[int]):
        if len(generators) != len(weights):
            raise ValueError("one weight per generator is required")
        if any(w <= 0 for w in weights):
            raise ValueError("search weights must be positive")
        self.generators = tuple(generators)
        self.weights = tuple(weights)
        self.order = sorted(range(len(generators)), key=lambda k: (-weights[k], k))
        self.nodes = 0

    def solutions(
        self, target: GroupElement, budget: int, max_total: Optional[int] = None
    ) -> Iterator[Tuple[int, ...]]:
        """All u ≥ 0 with Σ u_k·g_k = target, where ``budget`` = ψ(target); optionally Σ u_k ≤ max_total."""
        self.nodes = 0
        if budget < 0:
            return
        u = [0] * len(self.generators)
        yield from self._search(0, target, budget, max_total, u)
        logger.debug("lattice search visited %d nodes", self.nodes)

    def first(self, target: GroupElement, budget: int, max_total: Optional[int] = None) -> Optional[Tuple[int, ...]]:
        return next(iter(self.solutions(target, budget, max_total)), None)

    def _search(
        self, depth: int, residual: GroupElement, budget: int, total: Optional[int], u: List[int]
    ) -> Iterator[Tuple[int, ...]]:
        self.nodes += 1
        if depth == len(self.order):
            if budget == 0 and residual.is_zero():
                yield tuple(u)
            return
        k = self.order[depth]
        w = self.weights[k]
        if depth == len(self.order) - 1:
            count, rest = divmod(budget, w)
            if rest or (total is not None and count > total):
                return
            candidate = residual - count * self.generators[k]
            if candidate.is_zero():
                u[k] = count
                yield tuple(u)
                u[k] = 0
            return
        top = budget // w
        if total is not None:
            top = min(top, total)
        for count in range(top + 1):
            u[k] = count
            yield from self._search(
                depth + 1,
                residual - count * self.generators[k],
                budget - count * w,
                None if total is None else total - count,
                u,
            )
        u[k] = 0

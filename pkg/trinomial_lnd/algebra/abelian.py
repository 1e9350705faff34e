"""Finitely generated abelian groups Z^n / Im(A) in Smith coordinates.

All values here are immutable. Integers are plain Python ints, so entries never
overflow while they grow under elimination.
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, List, Optional, Sequence, Tuple

from trinomial_lnd.errors import GroupMismatch, LengthMismatch, RankDeficient, SemanticError

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class IntegerMatrix:
    """Dense integer matrix stored row-major."""

    rows: int
    cols: int
    entries: Tuple[int, ...]

    def __post_init__(self):
        if self.rows <= 0 or self.cols <= 0:
            raise ValueError(f"matrix dimensions must be positive, got {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(f"expected {self.rows * self.cols} entries, got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntegerMatrix":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("matrix must be nonempty")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), width, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, size: int) -> "IntegerMatrix":
        return cls.from_rows([[int(i == j) for j in range(size)] for i in range(size)])

    def __getitem__(self, key: Tuple[int, int]) -> int:
        i, j = key
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> List[List[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix.from_rows([self.column(j) for j in range(self.cols)])

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise LengthMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        columns = [other.column(j) for j in range(other.cols)]
        return IntegerMatrix.from_rows(
            [[sum(a * b for a, b in zip(self.row(i), col)) for col in columns] for i in range(self.rows)]
        )

    def apply(self, vector: Sequence[int]) -> Vector:
        """Matrix-vector product."""
        if len(vector) != self.cols:
            raise LengthMismatch(f"expected a vector of length {self.cols}, got {len(vector)}")
        return tuple(sum(a * b for a, b in zip(self.row(i), vector)) for i in range(self.rows))

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j)


@dataclass(frozen=True)
class SmithDecomposition:
    """U·A·V = D with U, V unimodular and D diagonal with d_1 | d_2 | ...

    ``U_inverse`` is tracked alongside U so that canonical coordinates can be
    lifted back to the ambient lattice.
    """

    U: IntegerMatrix
    V: IntegerMatrix
    D: IntegerMatrix
    diag: Tuple[int, ...]
    U_inverse: IntegerMatrix

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d != 0)


class _Elimination:
    """Mutable working state of one Smith normal form computation."""

    def __init__(self, matrix: IntegerMatrix):
        self.m, self.n = matrix.rows, matrix.cols
        self.a = matrix.to_rows()
        self.u = IntegerMatrix.identity(self.m).to_rows()
        self.u_inv = IntegerMatrix.identity(self.m).to_rows()
        self.v = IntegerMatrix.identity(self.n).to_rows()
        self.steps = 0

    def swap_rows(self, i: int, j: int) -> None:
        self.a[i], self.a[j] = self.a[j], self.a[i]
        self.u[i], self.u[j] = self.u[j], self.u[i]
        for r in self.u_inv:
            r[i], r[j] = r[j], r[i]

    def swap_cols(self, i: int, j: int) -> None:
        for r in self.a:
            r[i], r[j] = r[j], r[i]
        for r in self.v:
            r[i], r[j] = r[j], r[i]

    def add_row(self, src: int, dst: int, c: int) -> None:
        """row[dst] += c * row[src]."""
        self.steps += 1
        for mat in (self.a, self.u):
            mat[dst] = [x + c * y for x, y in zip(mat[dst], mat[src])]
        for r in self.u_inv:
            r[src] -= c * r[dst]

    def add_col(self, src: int, dst: int, c: int) -> None:
        """col[dst] += c * col[src]."""
        self.steps += 1
        for mat in (self.a, self.v):
            for r in mat:
                r[dst] += c * r[src]

    def negate_row(self, i: int) -> None:
        self.a[i] = [-x for x in self.a[i]]
        self.u[i] = [-x for x in self.u[i]]
        for r in self.u_inv:
            r[i] = -r[i]

    def place_pivot(self, t: int) -> bool:
        """Move the least nonzero |entry| of the active block to (t, t); ties go to the lowest (row, col)."""
        best = None
        for i in range(t, self.m):
            for j in range(t, self.n):
                x = self.a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            return False
        _, i, j = best
        if i != t:
            self.swap_rows(t, i)
        if j != t:
            self.swap_cols(t, j)
        return True

    def eliminate(self, t: int) -> bool:
        """Reduce row t and column t by the pivot; True when both are cleared."""
        p = self.a[t][t]
        clean = True
        for i in range(t + 1, self.m):
            if self.a[i][t]:
                self.add_row(t, i, -(self.a[i][t] // p))
                clean = clean and self.a[i][t] == 0
        for j in range(t + 1, self.n):
            if self.a[t][j]:
                self.add_col(t, j, -(self.a[t][j] // p))
                clean = clean and self.a[t][j] == 0
        return clean

    def indivisible_row(self, t: int) -> Optional[int]:
        p = self.a[t][t]
        for i in range(t + 1, self.m):
            for j in range(t + 1, self.n):
                if self.a[i][j] % p:
                    return i
        return None

    def run(self) -> SmithDecomposition:
        t = 0
        while t < min(self.m, self.n) and self.place_pivot(t):
            while True:
                if not self.eliminate(t):
                    self.place_pivot(t)
                    continue
                bad = self.indivisible_row(t)
                if bad is None:
                    break
                self.add_row(bad, t, 1)
            if self.a[t][t] < 0:
                self.negate_row(t)
            t += 1
        logger.debug("smith normal form of %dx%d matrix in %d elementary steps", self.m, self.n, self.steps)
        return SmithDecomposition(
            U=IntegerMatrix.from_rows(self.u),
            V=IntegerMatrix.from_rows(self.v),
            D=IntegerMatrix.from_rows(self.a),
            diag=tuple(self.a[k][k] for k in range(min(self.m, self.n))),
            U_inverse=IntegerMatrix.from_rows(self.u_inv),
        )


def smith_normal_form(matrix: IntegerMatrix) -> SmithDecomposition:
    """Deterministic Smith normal form U·A·V = D."""
    return _Elimination(matrix).run()


@dataclass(frozen=True)
class GroupElement:
    """Element of a GradingGroup: torsion residues followed by free coordinates."""

    torsion: Tuple[int, ...]
    free: Tuple[int, ...]
    moduli: Tuple[int, ...] = field(default=(), repr=False)

    def __post_init__(self):
        if len(self.torsion) != len(self.moduli):
            raise LengthMismatch(f"{len(self.moduli)} torsion residues expected, got {len(self.torsion)}")
        object.__setattr__(self, "torsion", tuple(int(r) % d for r, d in zip(self.torsion, self.moduli)))
        object.__setattr__(self, "free", tuple(int(x) for x in self.free))

    def _check(self, other: "GroupElement") -> None:
        if not isinstance(other, GroupElement) or other.moduli != self.moduli or len(other.free) != len(self.free):
            raise GroupMismatch("group elements belong to different groups")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return element_add(self, other, 1)

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return element_add(self, other, -1)

    def __neg__(self) -> "GroupElement":
        return GroupElement(tuple(-r for r in self.torsion), tuple(-x for x in self.free), self.moduli)

    def __mul__(self, k: int) -> "GroupElement":
        return GroupElement(tuple(k * r for r in self.torsion), tuple(k * x for x in self.free), self.moduli)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.torsion) and not any(self.free)


def element_add(a: GroupElement, b: GroupElement, sign: int = 1) -> GroupElement:
    """a ⊕ b, or a ⊖ b for sign = -1."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    a._check(b)
    return GroupElement(
        tuple(x + sign * y for x, y in zip(a.torsion, b.torsion)),
        tuple(x + sign * y for x, y in zip(a.free, b.free)),
        a.moduli,
    )


@dataclass(frozen=True)
class GradingGroup:
    """K = Z^n / Im(P) for a presentation matrix P with n rows."""

    ambient_rank: int
    free_rank: int
    torsion_invariants: Tuple[int, ...]
    projection_data: SmithDecomposition
    presentation: IntegerMatrix

    @property
    def _rank(self) -> int:
        return self.projection_data.rank

    @property
    def _torsion_rows(self) -> Tuple[int, ...]:
        return tuple(k for k, d in enumerate(self.projection_data.diag) if d > 1)

    def zero(self) -> GroupElement:
        return GroupElement((0,) * len(self.torsion_invariants), (0,) * self.free_rank, self.torsion_invariants)

    def element(self, free: Sequence[int], torsion: Sequence[int] = ()) -> GroupElement:
        if len(free) != self.free_rank:
            raise LengthMismatch(f"{self.free_rank} free coordinates expected, got {len(free)}")
        return GroupElement(tuple(torsion), tuple(free), self.torsion_invariants)

    def project(self, v: Sequence[int]) -> GroupElement:
        if len(v) != self.ambient_rank:
            raise LengthMismatch(f"expected a vector of length {self.ambient_rank}, got {len(v)}")
        y = self.projection_data.U.apply(v)
        return GroupElement(
            tuple(y[k] for k in self._torsion_rows),
            tuple(y[self._rank :]),
            self.torsion_invariants,
        )

    def lift(self, e: GroupElement) -> Vector:
        """Some v in Z^n with project(v) = e."""
        self.zero()._check(e)
        y = [0] * self.ambient_rank
        for k, r in zip(self._torsion_rows, e.torsion):
            y[k] = r
        y[self._rank :] = e.free
        return self.projection_data.U_inverse.apply(y)

    def is_in_image(self, v: Sequence[int]) -> bool:
        return self.project(v).is_zero()

    def torsion_elements(self) -> Iterator[Tuple[int, ...]]:
        """All residue combinations, in lexicographic order."""
        return product(*(range(d) for d in self.torsion_invariants))


def quotient_group(presentation: IntegerMatrix) -> GradingGroup:
    """Z^n modulo the column span of ``presentation`` (n rows, full column rank)."""
    snf = smith_normal_form(presentation)
    if snf.rank < presentation.cols:
        raise RankDeficient(
            f"presentation columns are dependent (rank {snf.rank} < {presentation.cols}); malformed trinomial data"
        )
    return GradingGroup(
        ambient_rank=presentation.rows,
        free_rank=presentation.rows - presentation.cols,
        torsion_invariants=tuple(d for d in snf.diag if d > 1),
        projection_data=snf,
        presentation=presentation,
    )


def project(group: GradingGroup, v: Sequence[int]) -> GroupElement:
    return group.project(v)


def is_in_image(group: GradingGroup, v: Sequence[int]) -> bool:
    return group.is_in_image(v)


class CoordinateSystem:
    """How elements of K are written: canonical Smith coordinates or an explicit basis.

    An explicit basis comes from one integer vector per generator of Z^n whose
    relation lattice is exactly the presentation's image, so K embeds into Z^m.
    """

    def __init__(self, group: GradingGroup, basis: Optional[IntegerMatrix] = None):
        self.group = group
        self.basis = basis  # m x free_rank, images of the free generators of K
        self._solver = smith_normal_form(basis) if basis is not None else None

    @classmethod
    def canonical(cls, group: GradingGroup) -> "CoordinateSystem":
        return cls(group)

    @classmethod
    def explicit(cls, group: GradingGroup, vectors: Sequence[Sequence[int]]) -> "CoordinateSystem":
        if len(vectors) != group.ambient_rank:
            raise LengthMismatch(f"one vector per generator expected ({group.ambient_rank}), got {len(vectors)}")
        dims = {len(v) for v in vectors}
        if len(dims) != 1 or 0 in dims:
            raise SemanticError("grading vectors must be nonempty and of equal length")
        if group.torsion_invariants:
            raise SemanticError(
                f"the grading group has torsion {list(group.torsion_invariants)}; an integer grading cannot be fine"
            )
        if group.free_rank == 0:
            raise SemanticError("the grading group is trivial; there is nothing to coordinatize")
        images = IntegerMatrix.from_rows(vectors).transpose()  # m x n
        relations = images @ group.presentation
        if any(relations.entries):
            bad = next(j for j in range(relations.cols) if any(relations.column(j)))
            raise SemanticError(f"the grading does not vanish on relation {list(group.presentation.column(bad))}")
        basis = images @ _free_section(group)
        snf = smith_normal_form(basis)
        if snf.rank != group.free_rank:
            raise SemanticError(
                f"the grading has rank {snf.rank} but the fine grading group has free rank {group.free_rank}; "
                "its relation lattice is larger than the presentation's image"
            )
        return cls(group, basis)

    @property
    def is_explicit(self) -> bool:
        return self.basis is not None

    @property
    def dimension(self) -> int:
        return self.basis.rows if self.basis is not None else self.group.free_rank

    def to_coordinates(self, e: GroupElement) -> Vector:
        """Free coordinates in the active basis (torsion is reported separately)."""
        self.group.zero()._check(e)
        if self.basis is None:
            return e.free
        return self.basis.apply(e.free)

    def from_coordinates(self, coords: Sequence[int], torsion: Sequence[int] = ()) -> Optional[GroupElement]:
        """The element with these coordinates, or None when the point is not in the image of K."""
        if len(coords) != self.dimension:
            raise LengthMismatch(f"{self.dimension} coordinates expected, got {len(coords)}")
        if len(torsion) != len(self.group.torsion_invariants):
            raise LengthMismatch(f"{len(self.group.torsion_invariants)} torsion residues expected, got {len(torsion)}")
        if self.basis is None:
            return self.group.element(coords, torsion)
        snf = self._solver
        y = snf.U.apply(coords)
        z = []
        for k, d in enumerate(snf.diag):
            if d == 0 or y[k] % d:
                return None
            z.append(y[k] // d)
        if any(y[len(snf.diag) :]):
            return None
        return self.group.element(snf.V.apply(z))


def _free_section(group: GradingGroup) -> IntegerMatrix:
    """n x free_rank matrix whose columns lift the free generators of K."""
    u_inv = group.projection_data.U_inverse
    rank = group.projection_data.rank
    return IntegerMatrix.from_rows([[u_inv[i, rank + k] for k in range(group.free_rank)] for i in range(u_inv.rows)])

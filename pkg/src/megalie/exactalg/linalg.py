"""Exact linear algebra over the rationals.

Matrices are plain lists of rows of :class:`fractions.Fraction`.  Everything
here is exact; there is no pivoting tolerance and no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]


class DimensionError(ValueError):
    """Raised when operands live in spaces of different dimension."""


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError(f"refusing to convert float {x!r} to an exact rational")
    return Fraction(x)


def as_matrix(m: Iterable[Iterable]) -> list[list[Fraction]]:
    rows = [[to_fraction(x) for x in row] for row in m]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise DimensionError("ragged matrix")
    return rows


def rref_with_pivots(m: Iterable[Iterable]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form plus the list of pivot columns."""
    rows = as_matrix(m)
    if not rows:
        return [], []
    n_rows, n_cols = len(rows), len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        lead = rows[r][c]
        if lead != 1:
            rows[r] = [x / lead for x in rows[r]]
        pivot_row = rows[r]
        for i in range(n_rows):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    rows[i] = [a - f * b for a, b in zip(rows[i], pivot_row)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: Iterable[Iterable]) -> list[list[Fraction]]:
    """Unique reduced row echelon form; zero rows are kept at the bottom."""
    return rref_with_pivots(m)[0]


def rank(m: Iterable[Iterable]) -> int:
    return len(rref_with_pivots(m)[1])


def nullspace(m: Sequence[Sequence], n_cols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{v : m v = 0}``.

    ``n_cols`` is only needed when ``m`` has no rows.
    """
    rows, pivots = rref_with_pivots(m)
    if n_cols is None:
        if not rows:
            raise DimensionError("n_cols required for an empty matrix")
        n_cols = len(rows[0])
    free = [c for c in range(n_cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -rows[r][f]
        basis.append(v)
    return basis


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)]


def mat_vec(m: Sequence[Sequence], v: Sequence) -> list:
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in m]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def det(m: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    rows = as_matrix(m)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionError("determinant of a non-square matrix")
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            result = -result
        lead = rows[c][c]
        result *= lead
        for i in range(c + 1, n):
            f = rows[i][c] / lead
            if f != 0:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return result


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One solution of ``a x = b`` (free variables set to zero), or None."""
    if not a:
        return None if any(to_fraction(x) != 0 for x in b) else []
    n = len(a[0])
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    rows, pivots = rref_with_pivots(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, p in enumerate(pivots):
        x[p] = rows[r][n]
    return x


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of ``Q^ambient`` kept in canonical form.

    ``basis`` is the reduced row echelon basis with zero rows dropped, so two
    subspaces are equal exactly when their bases agree entry by entry.  Build
    instances with :meth:`span`; the raw constructor trusts its input.
    """

    ambient: int
    basis: tuple[Vector, ...]
    pivots: tuple[int, ...] = field(default=(), compare=False, repr=False)

    @classmethod
    def span(cls, ambient: int, vectors: Iterable[Sequence]) -> Subspace:
        vecs = [list(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient:
                raise DimensionError(f"vector of length {len(v)} in ambient dimension {ambient}")
        rows, pivots = rref_with_pivots(vecs)
        basis = tuple(tuple(r) for r in rows[: len(pivots)])
        return cls(ambient, basis, tuple(pivots))

    @classmethod
    def zero(cls, ambient: int) -> Subspace:
        return cls(ambient, (), ())

    @classmethod
    def full(cls, ambient: int) -> Subspace:
        return cls.span(ambient, identity(ambient))

    @classmethod
    def coordinate(cls, ambient: int, indices: Iterable[int]) -> Subspace:
        """Span of the standard basis vectors with the given indices."""
        vecs = []
        for i in indices:
            v = [0] * ambient
            v[i] = 1
            vecs.append(v)
        return cls.span(ambient, vecs)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return self.dim

    def reduce(self, v: Sequence) -> list[Fraction]:
        """Remainder of ``v`` after elimination against the canonical basis."""
        if len(v) != self.ambient:
            raise DimensionError(f"vector of length {len(v)} in ambient dimension {self.ambient}")
        w = [to_fraction(x) for x in v]
        for row, p in zip(self.basis, self.pivots):
            f = w[p]
            if f != 0:
                w = [a - f * b for a, b in zip(w, row)]
        return w

    def __contains__(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def _check(self, other: Subspace) -> None:
        if self.ambient != other.ambient:
            raise DimensionError(f"ambient dimensions differ: {self.ambient} vs {other.ambient}")

    def issubspace(self, other: Subspace) -> bool:
        self._check(other)
        return all(row in other for row in self.basis)

    __le__ = issubspace

    def __add__(self, other: Subspace) -> Subspace:
        return subspace_sum(self, other)

    def __and__(self, other: Subspace) -> Subspace:
        return subspace_intersect(self, other)

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.ambient, self.basis))
            object.__setattr__(self, "_hash", h)
        return h

    def sort_key(self):
        return (self.dim, self.basis)

    def is_coordinate(self) -> bool:
        return all(sum(1 for x in row if x != 0) == 1 for row in self.basis)

    def support(self) -> tuple[int, ...]:
        """Pivot indices; for coordinate subspaces these are the spanning basis vectors."""
        return self.pivots


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    u._check(v)
    return Subspace.span(u.ambient, u.basis + v.basis)


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    """Intersection by the Zassenhaus trick."""
    u._check(v)
    n = u.ambient
    if u.dim == 0 or v.dim == 0:
        return Subspace.zero(n)
    zero = (Fraction(0),) * n
    rows = [list(r) + list(r) for r in u.basis] + [list(r) + list(zero) for r in v.basis]
    reduced, pivots = rref_with_pivots(rows)
    common = [r[n:] for r, p in zip(reduced, pivots) if p >= n]
    return Subspace.span(n, common)

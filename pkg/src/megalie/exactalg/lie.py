"""Finite-dimensional Lie algebras given by rational structure constants."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .linalg import (
    DimensionError,
    Subspace,
    nullspace,
    rank,
    to_fraction,
)


class LieAlgebraError(ValueError):
    pass


class AntisymmetryError(LieAlgebraError):
    def __init__(self, i: int, j: int, k: int):
        self.indices = (i, j, k)
        super().__init__(f"c[{i}][{j}][{k}] != -c[{j}][{i}][{k}]")


class JacobiError(LieAlgebraError):
    def __init__(self, triple: tuple[int, int, int], labels: Sequence[str], value):
        self.triple = triple
        self.labels = tuple(labels[i] for i in triple)
        self.value = value
        super().__init__(
            "Jacobi identity fails for basis triple "
            f"{triple} ({', '.join(self.labels)})"
        )


class LieAlgebra:
    """Lie algebra over Q with basis ``labels`` and ``[e_i, e_j] = sum_k c[i][j][k] e_k``.

    Structure constants are stored sparsely.  The constructor checks
    antisymmetry and the Jacobi identity exactly unless ``validate=False``.
    """

    def __init__(
        self,
        labels: Sequence[str],
        brackets: Mapping[tuple[int, int], Mapping[int, object]],
        validate: bool = True,
    ):
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        if len(set(self.labels)) != self.dim:
            raise LieAlgebraError("basis labels must be distinct")
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), row in brackets.items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise DimensionError(f"bracket index ({i}, {j}) out of range")
            clean = {}
            for k, v in row.items():
                if not 0 <= k < self.dim:
                    raise DimensionError(f"bracket target {k} out of range")
                v = to_fraction(v)
                if v != 0:
                    clean[k] = v
            if clean:
                table[(i, j)] = clean
        self._table = table
        if validate:
            self.validate()

    @classmethod
    def from_upper(
        cls,
        labels: Sequence[str],
        upper: Mapping[tuple[int, int], Mapping[int, object]],
        validate: bool = True,
    ) -> LieAlgebra:
        """Build from brackets with ``i < j`` only; the rest follows by antisymmetry."""
        full: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), row in upper.items():
            if i >= j:
                raise LieAlgebraError(f"only i < j entries allowed, got ({i}, {j})")
            full[(i, j)] = {k: to_fraction(v) for k, v in row.items()}
            full[(j, i)] = {k: -to_fraction(v) for k, v in row.items()}
        return cls(labels, full, validate=validate)

    @classmethod
    def from_structure_constants(cls, labels: Sequence[str], c, validate: bool = True) -> LieAlgebra:
        n = len(labels)
        table = {}
        for i in range(n):
            for j in range(n):
                row = {k: c[i][j][k] for k in range(n) if c[i][j][k] != 0}
                if row:
                    table[(i, j)] = row
        return cls(labels, table, validate=validate)

    @classmethod
    def abelian(cls, dim: int, prefix: str = "e") -> LieAlgebra:
        return cls([f"{prefix}{i + 1}" for i in range(dim)], {})

    def structure_constants(self) -> list[list[list[Fraction]]]:
        n = self.dim
        c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for (i, j), row in self._table.items():
            for k, v in row.items():
                c[i][j][k] = v
        return c

    def upper_brackets(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        return {(i, j): dict(row) for (i, j), row in sorted(self._table.items()) if i < j}

    def basis_bracket(self, i: int, j: int) -> dict[int, Fraction]:
        return self._table.get((i, j), {})

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def unit(self, i: int) -> list[Fraction]:
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return v

    def bracket(self, x: Sequence, y: Sequence) -> list[Fraction]:
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionError(f"coordinate lists must have length {self.dim}")
        out = [Fraction(0)] * self.dim
        xs = [(i, to_fraction(a)) for i, a in enumerate(x) if a != 0]
        ys = [(j, to_fraction(b)) for j, b in enumerate(y) if b != 0]
        for i, a in xs:
            for j, b in ys:
                row = self._table.get((i, j))
                if row:
                    ab = a * b
                    for k, v in row.items():
                        out[k] += ab * v
        return out

    def validate(self) -> None:
        """Raise on the first antisymmetry or Jacobi violation."""
        for (i, j), row in sorted(self._table.items()):
            other = self._table.get((j, i), {})
            for k in sorted(set(row) | set(other)):
                if row.get(k, 0) != -other.get(k, 0):
                    raise AntisymmetryError(i, j, k)
        for triple in combinations(range(self.dim), 3):
            value = self.jacobi(*triple)
            if any(value):
                raise JacobiError(triple, self.labels, value)

    def jacobi(self, i: int, j: int, k: int) -> list[Fraction]:
        """Coordinates of ``[x,[y,z]] + [y,[z,x]] + [z,[x,y]]`` for basis elements."""
        x, y, z = self.unit(i), self.unit(j), self.unit(k)
        a = self.bracket(x, self.bracket(y, z))
        b = self.bracket(y, self.bracket(z, x))
        c = self.bracket(z, self.bracket(x, y))
        return [p + q + r for p, q, r in zip(a, b, c)]

    def adjoint(self, x: Sequence) -> list[list[Fraction]]:
        """Matrix of ``ad_x`` acting on coordinate columns."""
        cols = [self.bracket(x, self.unit(j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def full(self) -> Subspace:
        return Subspace.full(self.dim)

    def zero(self) -> Subspace:
        return Subspace.zero(self.dim)

    def span(self, *labels: str) -> Subspace:
        return Subspace.coordinate(self.dim, [self.index(lab) for lab in labels])

    def describe(self, s: Subspace) -> str:
        """Human readable basis of a subspace in terms of the labels."""
        return "<" + ", ".join(self.format(row) for row in s.basis) + ">"

    def format(self, v: Sequence) -> str:
        """Coordinates as a label combination, e.g. ``P + 3*J1``."""
        terms = []
        for lab, x in zip(self.labels, v):
            if x == 0:
                continue
            if x == 1:
                terms.append(lab)
            elif x == -1:
                terms.append(f"-{lab}")
            else:
                terms.append(f"{x}*{lab}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LieAlgebra)
            and self.labels == other.labels
            and self._table == other._table
        )

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, labels={list(self.labels)})"


def _check_ambient(g: LieAlgebra, *spaces: Subspace) -> None:
    for s in spaces:
        if s.ambient != g.dim:
            raise DimensionError(f"subspace of ambient dimension {s.ambient} in algebra of dim {g.dim}")


def bracket_element(g: LieAlgebra, x: Sequence, y: Sequence) -> list[Fraction]:
    return g.bracket(x, y)


def bracket_subspace(g: LieAlgebra, u: Subspace, v: Subspace) -> Subspace:
    _check_ambient(g, u, v)
    return Subspace.span(g.dim, [g.bracket(a, b) for a in u.basis for b in v.basis])


def _series(g: LieAlgebra, step) -> list[Subspace]:
    terms = [g.full()]
    while True:
        nxt = step(terms[-1])
        terms.append(nxt)
        if nxt == terms[-2] or nxt.dim == 0:
            return terms


def derived_series(g: LieAlgebra) -> list[Subspace]:
    """``g, g', g'', ...``; the first repeated term (or the zero term) ends the list."""
    return _series(g, lambda s: bracket_subspace(g, s, s))


def lower_central_series(g: LieAlgebra) -> list[Subspace]:
    full = g.full()
    return _series(g, lambda s: bracket_subspace(g, full, s))


def upper_central_series(g: LieAlgebra) -> list[Subspace]:
    """``0 = z_0 ⊆ z_1 ⊆ ...`` with ``z_{i+1} = {z : [z, g] ⊆ z_i}``."""
    full = g.full()
    terms = [g.zero()]
    while True:
        nxt = commutator_stabilizer(g, full, full, terms[-1])
        terms.append(nxt)
        if nxt == terms[-2]:
            return terms


def commutator_stabilizer(g: LieAlgebra, i0: Subspace, i1: Subspace, i2: Subspace) -> Subspace:
    """Elements ``z`` of ``i0`` with ``[z, y] ∈ i2`` for every ``y`` in ``i1``.

    When the three inputs are megaideals, so is the result.  The condition is
    linear in the coordinates of ``z`` with respect to the basis of ``i0``:
    each ``[i0_a, i1_b]`` is reduced modulo ``i2`` and the combination of the
    residues must vanish.
    """
    _check_ambient(g, i0, i1, i2)
    if i0.dim == 0:
        return i0
    if i1.dim == 0:
        return i0
    columns = []
    for a in i0.basis:
        col = []
        for b in i1.basis:
            col.extend(i2.reduce(g.bracket(a, b)))
        columns.append(col)
    system = [list(r) for r in zip(*columns)]
    sols = nullspace(system, n_cols=i0.dim)
    vectors = []
    for sol in sols:
        v = [Fraction(0)] * g.dim
        for alpha, row in zip(sol, i0.basis):
            if alpha:
                for k, x in enumerate(row):
                    if x:
                        v[k] += alpha * x
        vectors.append(v)
    return Subspace.span(g.dim, vectors)


def centralizer(g: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    """``{z ∈ a : [z, y] = 0 for all y ∈ b}``."""
    return commutator_stabilizer(g, a, b, g.zero())


def center(g: LieAlgebra) -> Subspace:
    full = g.full()
    return centralizer(g, full, full)


def center_of(g: LieAlgebra, u: Subspace) -> Subspace:
    """Center of the subalgebra ``u``, in ambient coordinates."""
    return centralizer(g, u, u)


def subalgebra(g: LieAlgebra, u: Subspace, labels: Sequence[str] | None = None) -> LieAlgebra:
    """The subalgebra ``u`` as a standalone algebra in the coordinates of ``u.basis``."""
    _check_ambient(g, u)
    n = u.dim
    if labels is None:
        labels = [f"u{i + 1}" for i in range(n)]
    table = {}
    for i in range(n):
        for j in range(n):
            w = g.bracket(u.basis[i], u.basis[j])
            if any(u.reduce(w)):
                raise LieAlgebraError("subspace is not closed under the bracket")
            coords = {}
            for r, p in enumerate(u.pivots):
                if w[p] != 0:
                    coords[r] = w[p]
                    w = [x - w[p] * y for x, y in zip(w, u.basis[r])]
            if coords:
                table[(i, j)] = coords
    return LieAlgebra(labels, table)


def killing_form(g: LieAlgebra) -> list[list[Fraction]]:
    ads = [g.adjoint(g.unit(i)) for i in range(g.dim)]
    n = g.dim

    def trace_product(a, b):
        return sum((a[r][s] * b[s][r] for r in range(n) for s in range(n)), Fraction(0))

    return [[trace_product(ads[i], ads[j]) for j in range(n)] for i in range(n)]


def radical(g: LieAlgebra) -> Subspace:
    """Solvable radical as the Killing-orthogonal complement of ``g'``.

    Meant for small genuine algebras; truncated models of infinite
    dimensional algebras have a misleading Killing form.
    """
    k = killing_form(g)
    gp = bracket_subspace(g, g.full(), g.full())
    if gp.dim == 0:
        return g.full()
    system = [[sum((row[i] * k[i][j] for i in range(g.dim)), Fraction(0)) for j in range(g.dim)] for row in gp.basis]
    return Subspace.span(g.dim, nullspace(system, n_cols=g.dim))


def is_semisimple(g: LieAlgebra) -> bool:
    return g.dim > 0 and rank(killing_form(g)) == g.dim

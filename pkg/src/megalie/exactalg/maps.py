"""Linear maps on algebra coordinates: automorphism and megaideal checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .lie import LieAlgebra
from .linalg import (
    DimensionError,
    Subspace,
    det,
    identity,
    mat_mul,
    mat_vec,
    rank,
    to_fraction,
    transpose,
)


class LinearMap:
    """Square rational matrix acting on coordinate columns.

    Column ``j`` holds the coordinates of the image of basis element ``j``.
    """

    __slots__ = ("matrix",)

    def __init__(self, matrix: Sequence[Sequence]):
        rows = tuple(tuple(to_fraction(x) for x in row) for row in matrix)
        if any(len(r) != len(rows) for r in rows):
            raise DimensionError("linear map matrix must be square")
        self.matrix = rows

    @classmethod
    def from_images(cls, images: Sequence[Sequence]) -> LinearMap:
        """Build from the list of images of the basis vectors."""
        return cls(transpose(images))

    @classmethod
    def identity(cls, n: int) -> LinearMap:
        return cls(identity(n))

    @classmethod
    def diagonal(cls, entries: Sequence) -> LinearMap:
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def __call__(self, x: Sequence) -> list[Fraction]:
        if len(x) != self.dim:
            raise DimensionError(f"vector of length {len(x)} for a map of size {self.dim}")
        return mat_vec(self.matrix, x)

    def image(self, j: int) -> list[Fraction]:
        return [row[j] for row in self.matrix]

    def __matmul__(self, other: LinearMap) -> LinearMap:
        return LinearMap(mat_mul(self.matrix, other.matrix))

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearMap) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def is_invertible(self) -> bool:
        return rank(self.matrix) == self.dim

    def __repr__(self) -> str:
        return f"LinearMap({[[str(x) for x in row] for row in self.matrix]})"


@dataclass(frozen=True)
class MapCheck:
    ok: bool
    reason: str  # "ok", "shape", "singular" or "bracket"
    witness: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_homomorphism(source: LieAlgebra, target: LieAlgebra, m: LinearMap) -> MapCheck:
    """Check ``m[x, y]_source = [m x, m y]_target`` on all basis pairs.

    A failing check names the first basis pair ``(i, j)`` that breaks it.
    """
    if m.dim != source.dim or m.dim != target.dim:
        return MapCheck(False, "shape")
    if not m.is_invertible():
        return MapCheck(False, "singular")
    images = [m.image(j) for j in range(m.dim)]
    for i in range(source.dim):
        for j in range(i + 1, source.dim):
            lhs = m(source.bracket(source.unit(i), source.unit(j)))
            rhs = target.bracket(images[i], images[j])
            if lhs != rhs:
                return MapCheck(False, "bracket", (i, j))
    return MapCheck(True, "ok")


def is_automorphism(g: LieAlgebra, m: LinearMap) -> MapCheck:
    return is_homomorphism(g, g, m)


def preserves_subspace(m: LinearMap, s: Subspace) -> bool:
    if m.dim != s.ambient:
        raise DimensionError(f"map of size {m.dim} against subspace in dimension {s.ambient}")
    return all(m(row) in s for row in s.basis)


class ConstraintSchemaError(ValueError):
    """The algebra lacks the labels the constraint extraction relies on."""


class ConstraintViolation(ValueError):
    def __init__(self, condition: str, message: str, image=None):
        self.condition = condition
        self.image = image
        super().__init__(f"{condition}: {message}")


@dataclass(frozen=True)
class ConstraintCoefficients:
    """Coefficients pinned down by megaideal preservation.

    ``Z0 -> c Z0``, ``Z1 -> d1 Z1 + d0 Z0``, ``P -> a1 P + (Z part)`` and
    ``J_i -> sum_j B[i][j] J_j``.
    """

    c: Fraction
    d0: Fraction
    d1: Fraction
    a1: Fraction
    B: tuple[tuple[Fraction, ...], ...]


REQUIRED_LABELS = ("D", "P", "J1", "J2", "J3", "Z0", "Z1")

# condition names, in checking order
Z0_SCALING = "Z0-scaling"
Z1_AFFINE = "Z1-affine"
P_IMAGE = "P-image"
ROTATION_BLOCK = "rotation-block"
BRACKET_RELATION = "bracket-relation"


def _support(v: Sequence[Fraction]) -> set[int]:
    return {i for i, x in enumerate(v) if x != 0}


def extract_constraint_coefficients(g: LieAlgebra, m: LinearMap) -> ConstraintCoefficients:
    """Read off ``c, d0, d1, a1, B`` from the matrix of a push-forward.

    Raises :class:`ConstraintViolation` naming the first condition that
    fails, in the order Z0, Z1, P, rotation block, ``a1 d1 = c``.
    """
    missing = [lab for lab in REQUIRED_LABELS if lab not in g.labels]
    if missing:
        raise ConstraintSchemaError(f"algebra lacks labels {missing}")
    if m.dim != g.dim:
        raise DimensionError(f"map of size {m.dim} for an algebra of dim {g.dim}")
    ix = {lab: g.index(lab) for lab in g.labels}
    z_idx = {i for lab, i in ix.items() if lab.startswith("Z") and lab[1:].isdigit()}
    j_idx = [ix["J1"], ix["J2"], ix["J3"]]

    img = m.image(ix["Z0"])
    if not _support(img) <= {ix["Z0"]} or img[ix["Z0"]] == 0:
        raise ConstraintViolation(Z0_SCALING, "image of Z0 is not a nonzero multiple of Z0", img)
    c = img[ix["Z0"]]

    img = m.image(ix["Z1"])
    if not _support(img) <= {ix["Z0"], ix["Z1"]} or img[ix["Z1"]] == 0:
        raise ConstraintViolation(Z1_AFFINE, "image of Z1 is not d1*Z1 + d0*Z0 with d1 != 0", img)
    d1, d0 = img[ix["Z1"]], img[ix["Z0"]]

    img = m.image(ix["P"])
    if not _support(img) <= z_idx | {ix["P"]} or img[ix["P"]] == 0:
        raise ConstraintViolation(P_IMAGE, "image of P is not a1*P + (Z tower) with a1 != 0", img)
    a1 = img[ix["P"]]

    B = []
    for j in j_idx:
        img = m.image(j)
        if not _support(img) <= set(j_idx):
            raise ConstraintViolation(ROTATION_BLOCK, f"image of {g.labels[j]} leaves span(J1, J2, J3)", img)
        B.append(tuple(img[k] for k in j_idx))
    BtB = mat_mul(transpose(B), B)
    if BtB != identity(3):
        raise ConstraintViolation(ROTATION_BLOCK, "rotation block is not orthogonal", B)
    if det(B) != 1:
        raise ConstraintViolation(ROTATION_BLOCK, "rotation block has determinant -1", B)

    if a1 * d1 != c:
        raise ConstraintViolation(BRACKET_RELATION, f"a1*d1 = {a1 * d1} differs from c = {c}")
    return ConstraintCoefficients(c, d0, d1, a1, tuple(B))

"""Stars, the fibre-block covering criterion, and covering certificates.

The covering test runs block-wise: for every base hom space (b, c) and
every lift x of b, the restriction of the functor to the morphisms from x
into the whole fibre of c must be a bijection onto hom(b, c), and dually
for lifts of c.  This is equivalent to the star condition but yields small
matrices and a precise first-failure witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .errors import CovcatError
from .exactalg import Matrix, rank_and_inverse
from .lincat import LinearCategory, connected_components
from .linfun import LinearFunctor

__all__ = [
    "StarDecomposition",
    "FibreBlock",
    "CoveringCertificate",
    "CoveringFailure",
    "star",
    "check_covering",
    "prop_connected_check",
]


@dataclass(frozen=True)
class StarDecomposition:
    """All morphisms with a given source or target, split into the two halves.

    ``source_star`` lists (target object, basis of hom(b, y)) and
    ``target_star`` lists (source object, basis of hom(y, b)); the
    endomorphism space at b appears once in each half, so it is counted
    twice in the total, as in the definition.
    """

    object: str
    source_star: tuple[tuple[str, tuple[str, ...]], ...]
    target_star: tuple[tuple[str, tuple[str, ...]], ...]
    total_dim: int


def star(cat: LinearCategory, b: str) -> StarDecomposition:
    if b not in cat.objects:
        raise CovcatError(f"unknown object {b}")
    source = tuple((y, cat.hom(b, y)) for y in cat.objects if cat.dim(b, y))
    target = tuple((y, cat.hom(y, b)) for y in cat.objects if cat.dim(y, b))
    total = sum(len(basis) for _, basis in source) + \
        sum(len(basis) for _, basis in target)
    return StarDecomposition(b, source, target, total)


@dataclass(frozen=True)
class FibreBlock:
    """One invertible block of a covering: the functor restricted to the
    morphisms between a lift and an entire fibre, against one base hom."""

    base_src: str
    base_dst: str
    lift: str
    direction: str  # "source": lift of base_src; "target": lift of base_dst
    column_layout: tuple[tuple[str, str], ...]  # (fibre object, basis name)
    matrix: Matrix
    inverse: Matrix


@dataclass(frozen=True)
class CoveringCertificate:
    functor: LinearFunctor
    fibres: dict[str, tuple[str, ...]]
    blocks: dict[tuple[str, str, str, str], FibreBlock]

    def block(self, base_src: str, base_dst: str, lift: str,
              direction: str) -> FibreBlock:
        return self.blocks[(base_src, base_dst, lift, direction)]


@dataclass(frozen=True)
class CoveringFailure:
    """Lexicographically first witness that the functor is not a covering."""

    kind: str  # "not-surjective" | "block-dimension" | "block-singular"
    base_src: Optional[str] = None
    base_dst: Optional[str] = None
    lift: Optional[str] = None
    direction: Optional[str] = None
    expected_dim: Optional[int] = None
    actual_dim: Optional[int] = None
    missing_object: Optional[str] = None

    def message(self) -> str:
        if self.kind == "not-surjective":
            return f"no object maps onto {self.missing_object}"
        where = (f"{self.direction} block at lift {self.lift} for base hom "
                 f"({self.base_src},{self.base_dst})")
        if self.kind == "block-dimension":
            return (f"{where} has dimension {self.actual_dim}, "
                    f"expected {self.expected_dim}")
        return f"{where} is singular"


def _source_block(fun: LinearFunctor, b: str, c: str, x: str):
    """Columns of F on ⊕_{y over c} hom(x, y), laid out in fibre order."""
    layout = []
    cols = []
    for y in fun.fibre(c):
        m = fun.hom_matrices.get((x, y))
        if m is None:
            continue
        for j, name in enumerate(fun.source.hom(x, y)):
            layout.append((y, name))
            cols.append(m.column(j))
    return layout, cols


def _target_block(fun: LinearFunctor, b: str, c: str, z: str):
    layout = []
    cols = []
    for y in fun.fibre(b):
        m = fun.hom_matrices.get((y, z))
        if m is None:
            continue
        for j, name in enumerate(fun.source.hom(y, z)):
            layout.append((y, name))
            cols.append(m.column(j))
    return layout, cols


def check_covering(fun: LinearFunctor) -> Union[CoveringCertificate, CoveringFailure]:
    """Decide the covering property, returning a certificate or the first
    offending witness (surjectivity, then blocks in lexicographic order)."""
    base = fun.target
    for b in base.objects:
        if not fun.fibre(b):
            return CoveringFailure("not-surjective", missing_object=b)

    blocks: dict[tuple[str, str, str, str], FibreBlock] = {}
    for b in base.objects:
        for c in base.objects:
            dim = base.dim(b, c)
            checks = [("source", x) for x in fun.fibre(b)] + \
                     [("target", z) for z in fun.fibre(c)]
            for direction, lift in checks:
                if direction == "source":
                    layout, cols = _source_block(fun, b, c, lift)
                else:
                    layout, cols = _target_block(fun, b, c, lift)
                if len(cols) != dim:
                    return CoveringFailure("block-dimension", b, c, lift,
                                           direction, dim, len(cols))
                if dim == 0:
                    continue
                matrix = Matrix.from_columns(base.field, cols, dim)
                rank, inverse = rank_and_inverse(matrix)
                if inverse is None:
                    return CoveringFailure("block-singular", b, c, lift,
                                           direction, dim, rank)
                blocks[(b, c, lift, direction)] = FibreBlock(
                    b, c, lift, direction, tuple(layout), matrix, inverse)

    fibres = {b: fun.fibre(b) for b in base.objects}
    return CoveringCertificate(fun, fibres, blocks)


def prop_connected_check(fun: LinearFunctor,
                         cert: CoveringCertificate) -> bool:
    """A covering with connected source has a connected target; asserted."""
    if cert.functor is not fun and cert.functor != fun:
        raise CovcatError("certificate does not belong to this functor")
    _, src_connected = connected_components(fun.source)
    if src_connected:
        _, dst_connected = connected_components(fun.target)
        if not dst_connected:
            raise CovcatError(
                "covering with connected source has a disconnected target")
    return True

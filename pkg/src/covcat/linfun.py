"""k-linear functors between linear categories.

A functor stores its object map and one matrix per non-zero source hom
space, written in the chosen bases (columns index the source basis, rows
the target basis).  When the target hom space is zero the matrix has zero
rows, i.e. the functor kills that hom space.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from .errors import ConstructionError
from .exactalg import Matrix, rank_and_inverse
from .lincat import LinearCategory, ValidationReport, Violation

__all__ = [
    "LinearFunctor",
    "identity_functor",
    "validate_functor",
    "compose",
    "functor_equal",
    "is_isomorphism",
]


@dataclass(frozen=True)
class LinearFunctor:
    source: LinearCategory
    target: LinearCategory
    object_map: dict[str, str]
    hom_matrices: dict[tuple[str, str], Matrix]

    def __post_init__(self):
        if self.source.field != self.target.field:
            raise ConstructionError("source and target live over different fields")
        if set(self.object_map) != set(self.source.objects):
            raise ConstructionError("object map does not cover the source objects")
        for x, fx in self.object_map.items():
            if fx not in self.target.objects:
                raise ConstructionError(f"object map sends {x} outside the target")
        if set(self.hom_matrices) != set(self.source.hom_basis):
            raise ConstructionError("hom matrices must match the non-zero source homs")
        for (x, y), m in self.hom_matrices.items():
            if m.field != self.source.field:
                raise ConstructionError("matrix field mismatch")
            want_cols = self.source.dim(x, y)
            want_rows = self.target.dim(self.object_map[x], self.object_map[y])
            if (m.nrows, m.ncols) != (want_rows, want_cols):
                raise ConstructionError(
                    f"matrix at ({x},{y}) has shape {m.nrows}x{m.ncols}, "
                    f"expected {want_rows}x{want_cols}")

    @cached_property
    def _fibres(self) -> dict[str, tuple[str, ...]]:
        fib: dict[str, list[str]] = {b: [] for b in self.target.objects}
        for x in self.source.objects:
            fib[self.object_map[x]].append(x)
        return {b: tuple(sorted(xs)) for b, xs in fib.items()}

    def fibre(self, b: str) -> tuple[str, ...]:
        return self._fibres[b]

    def apply(self, x: str, y: str, coords) -> tuple:
        """Image coordinates of a morphism given by coordinates in hom(x, y)."""
        m = self.hom_matrices.get((x, y))
        if m is None:
            return self.target.zero_vector(self.object_map[x], self.object_map[y])
        return m.apply(coords)


def identity_functor(cat: LinearCategory) -> LinearFunctor:
    return LinearFunctor(cat, cat, {x: x for x in cat.objects},
                         {pair: Matrix.identity(cat.field, len(basis))
                          for pair, basis in cat.hom_basis.items()})


def validate_functor(fun: LinearFunctor) -> ValidationReport:
    """Check the two functor axioms: units map to units, composition is preserved."""
    problems = []
    src, dst = fun.source, fun.target

    for x in src.objects:
        fx = fun.object_map[x]
        image = fun.apply(x, x, src.identity[x])
        if image != dst.identity[fx]:
            problems.append(Violation("unit", (x,),
                                      f"image of 1_{x} is not 1_{fx}"))

    pairs = src.hom_pairs()
    by_src: dict[str, list[tuple[str, str]]] = {}
    for (x, y) in pairs:
        by_src.setdefault(x, []).append((x, y))
    for (x, y) in pairs:
        for (_, z) in by_src.get(y, ()):
            fx, fy, fz = fun.object_map[x], fun.object_map[y], fun.object_map[z]
            for f in src.hom(x, y):
                ff = fun.apply(x, y, src.basis_vector(f))
                for g in src.hom(y, z):
                    lhs = fun.apply(x, z, src.compose_basis(f, g))
                    fg = fun.apply(y, z, src.basis_vector(g))
                    rhs = dst.compose_vectors(fx, fy, fz, ff, fg)
                    if lhs != rhs:
                        problems.append(Violation(
                            "composition", (f, g),
                            f"F({g}∘{f}) differs from F({g})∘F({f})"))
    return ValidationReport(not problems, tuple(problems))


def compose(g: LinearFunctor, f: LinearFunctor) -> LinearFunctor:
    """The composite g∘f; requires target of f = source of g."""
    if f.target != g.source:
        raise ConstructionError("functors are not composable")
    object_map = {x: g.object_map[fx] for x, fx in f.object_map.items()}
    hom_matrices = {}
    for (x, y), mf in f.hom_matrices.items():
        mid = (f.object_map[x], f.object_map[y])
        mg = g.hom_matrices.get(mid)
        if mg is None:
            rows = g.target.dim(object_map[x], object_map[y])
            hom_matrices[(x, y)] = Matrix.zeros(f.source.field, rows, mf.ncols)
        else:
            hom_matrices[(x, y)] = mg @ mf
    return LinearFunctor(f.source, g.target, object_map, hom_matrices)


def functor_equal(f: LinearFunctor, g: LinearFunctor) -> bool:
    """Exact coordinate equality, including sources and targets."""
    return (f.source == g.source and f.target == g.target
            and f.object_map == g.object_map
            and f.hom_matrices == g.hom_matrices)


def is_isomorphism(fun: LinearFunctor) -> Optional[LinearFunctor]:
    """The inverse functor when ``fun`` is an isomorphism of categories, else None.

    Requires a bijective object map and, for every ordered pair of source
    objects, matching hom dimensions with an invertible matrix (an absent
    hom must pair with an absent hom).
    """
    src, dst = fun.source, fun.target
    images = set(fun.object_map.values())
    if len(images) != len(src.objects) or images != set(dst.objects):
        return None
    for x in src.objects:
        for y in src.objects:
            if src.dim(x, y) != dst.dim(fun.object_map[x], fun.object_map[y]):
                return None
    inverse_objects = {fx: x for x, fx in fun.object_map.items()}
    inverse_matrices = {}
    for (x, y), m in fun.hom_matrices.items():
        rank, inv = rank_and_inverse(m)
        if inv is None:
            return None
        inverse_matrices[(fun.object_map[x], fun.object_map[y])] = inv
    return LinearFunctor(dst, src, inverse_objects, inverse_matrices)

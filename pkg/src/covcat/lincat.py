"""Finite k-linear categories: data model, builders, walks and components.

A category is stored by its ordered hom bases and composition structure
constants.  Zero hom spaces are represented by absence, so the walk graph
and the star decompositions read directly off the present (src, dst) pairs.
Object identifiers are strings and every enumeration is in lexicographic
order, which keeps all downstream outputs deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

from .errors import ConstructionError
from .exactalg import FieldSpec, Matrix, echelon_pivots, express_in_echelon

__all__ = [
    "LinearCategory",
    "Quiver",
    "SignedWalk",
    "WalkStep",
    "Violation",
    "ValidationReport",
    "validate_category",
    "path_category",
    "category_from_algebra",
    "connected_components",
    "nonzero_walk_between",
    "product_with_set",
    "full_subcategory",
]


@dataclass(frozen=True)
class LinearCategory:
    """A finite k-linear category with chosen ordered hom bases.

    ``hom_basis`` maps (src, dst) to the ordered tuple of basis-morphism
    names; a missing pair is the zero hom space.  ``identity[x]`` holds the
    coordinates of 1_x in hom_basis[(x, x)].  ``composition[(f, g)]`` holds
    the coordinates of g∘f in hom_basis[(src f, dst g)]; missing entries are
    zero.  Basis names are unique across the whole category so that the
    composition table is unambiguous.
    """

    field: FieldSpec
    objects: tuple[str, ...]
    hom_basis: dict[tuple[str, str], tuple[str, ...]]
    identity: dict[str, tuple]
    composition: dict[tuple[str, str], tuple]

    def __post_init__(self):
        objs = tuple(sorted(self.objects))
        if len(set(objs)) != len(objs):
            raise ConstructionError("duplicate object names")
        object.__setattr__(self, "objects", objs)
        oset = set(objs)
        seen = {}
        for (x, y), basis in self.hom_basis.items():
            if x not in oset or y not in oset:
                raise ConstructionError(f"hom ({x},{y}) references unknown object")
            if not basis:
                raise ConstructionError(f"hom ({x},{y}) present but empty; omit it")
            for name in basis:
                if name in seen:
                    raise ConstructionError(
                        f"basis name {name!r} reused in ({x},{y}) and {seen[name]}")
                seen[name] = (x, y)
        for x in objs:
            if (x, x) not in self.hom_basis:
                raise ConstructionError(f"object {x} has no endomorphism space")
            coords = self.identity.get(x)
            if coords is None or len(coords) != len(self.hom_basis[(x, x)]):
                raise ConstructionError(f"identity coordinates missing or wrong size at {x}")
            if all(c == self.field.zero for c in coords):
                raise ConstructionError(f"identity at {x} is zero")
        cleaned = {}
        for (f, g), coords in self.composition.items():
            if f not in seen or g not in seen:
                raise ConstructionError(f"composition ({f},{g}) references unknown morphism")
            (xf, yf), (xg, yg) = seen[f], seen[g]
            if yf != xg:
                raise ConstructionError(f"composition ({f},{g}) is not composable")
            dim = self.dim(xf, yg)
            if dim == 0:
                if any(c != self.field.zero for c in coords):
                    raise ConstructionError(
                        f"composition ({f},{g}) lands in the zero hom ({xf},{yg})")
                continue
            if len(coords) != dim:
                raise ConstructionError(f"composition ({f},{g}) has wrong length")
            if any(c != self.field.zero for c in coords):
                cleaned[(f, g)] = tuple(coords)
        object.__setattr__(self, "composition", cleaned)

    @cached_property
    def basis_location(self) -> dict[str, tuple[str, str, int]]:
        out = {}
        for (x, y), basis in self.hom_basis.items():
            for i, name in enumerate(basis):
                out[name] = (x, y, i)
        return out

    # queries --------------------------------------------------------------

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        return self.hom_basis.get((x, y), ())

    def dim(self, x: str, y: str) -> int:
        return len(self.hom_basis.get((x, y), ()))

    def total_dim(self) -> int:
        return sum(len(b) for b in self.hom_basis.values())

    def hom_pairs(self) -> list[tuple[str, str]]:
        return sorted(self.hom_basis)

    def zero_vector(self, x: str, y: str) -> tuple:
        return (self.field.zero,) * self.dim(x, y)

    def basis_vector(self, name: str) -> tuple:
        x, y, i = self.basis_location[name]
        return tuple(self.field.one if j == i else self.field.zero
                     for j in range(self.dim(x, y)))

    # composition ----------------------------------------------------------

    def compose_basis(self, f: str, g: str) -> tuple:
        """Coordinates of g∘f in hom(src f, dst g); zero when unrecorded."""
        got = self.composition.get((f, g))
        if got is not None:
            return got
        xf, _, _ = self.basis_location[f]
        _, yg, _ = self.basis_location[g]
        return self.zero_vector(xf, yg)

    def compose_vectors(self, x: str, y: str, z: str, fvec, gvec) -> tuple:
        """Bilinear composite of f: x→y and g: y→z given by coordinates."""
        k = self.field
        out = list(self.zero_vector(x, z))
        fbasis, gbasis = self.hom(x, y), self.hom(y, z)
        for i, fc in enumerate(fvec):
            if fc == k.zero:
                continue
            for j, gc in enumerate(gvec):
                if gc == k.zero:
                    continue
                coords = self.composition.get((fbasis[i], gbasis[j]))
                if coords is None:
                    continue
                s = k.mul(fc, gc)
                for t, c in enumerate(coords):
                    out[t] = k.add(out[t], k.mul(s, c))
        return tuple(out)


@dataclass(frozen=True)
class WalkStep:
    """One signed step: a non-zero morphism traversed forwards (+1) or backwards (-1)."""

    coords: tuple
    src: str
    dst: str
    sign: int

    def start(self) -> str:
        return self.src if self.sign == 1 else self.dst

    def end(self) -> str:
        return self.dst if self.sign == 1 else self.src


@dataclass(frozen=True)
class SignedWalk:
    """A chain of signed non-zero morphisms; consecutive endpoints must match."""

    steps: tuple[WalkStep, ...]

    def start(self) -> str:
        return self.steps[0].start()

    def end(self) -> str:
        return self.steps[-1].end()

    def validate(self, cat: LinearCategory) -> None:
        if not self.steps:
            raise ConstructionError("empty walk")
        for step in self.steps:
            if step.sign not in (-1, 1):
                raise ConstructionError("step sign must be ±1")
            if len(step.coords) != cat.dim(step.src, step.dst):
                raise ConstructionError("step coordinates do not match the hom space")
            if all(c == cat.field.zero for c in step.coords):
                raise ConstructionError("walk step is the zero morphism")
        for a, b in zip(self.steps, self.steps[1:]):
            if b.start() != a.end():
                raise ConstructionError(
                    f"walk breaks between {a.end()} and {b.start()}")


# validation ---------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str
    witness: tuple
    message: str


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...]


def validate_category(cat: LinearCategory) -> ValidationReport:
    """Check associativity, two-sided units and centrality of identities.

    Structural problems are rejected at construction time; this reports the
    semantic axioms, listing every violation with its witnessing basis tuple.
    """
    problems = []
    k = cat.field

    for (x, y), basis in sorted(cat.hom_basis.items()):
        idx = cat.identity[x]
        idy = cat.identity[y]
        for i, f in enumerate(basis):
            fvec = cat.basis_vector(f)
            left = cat.compose_vectors(x, y, y, fvec, idy)
            if left != fvec:
                problems.append(Violation("left-unit", (f,),
                                          f"1_{y}∘{f} differs from {f}"))
            right = cat.compose_vectors(x, x, y, idx, fvec)
            if right != fvec:
                problems.append(Violation("right-unit", (f,),
                                          f"{f}∘1_{x} differs from {f}"))

    for x in cat.objects:
        idx = cat.identity[x]
        for e in cat.hom(x, x):
            evec = cat.basis_vector(e)
            lhs = cat.compose_vectors(x, x, x, evec, idx)
            rhs = cat.compose_vectors(x, x, x, idx, evec)
            if lhs != rhs:
                problems.append(Violation("centrality", (e,),
                                          f"1_{x} does not commute with {e}"))

    pairs = cat.hom_pairs()
    by_src: dict[str, list[tuple[str, str]]] = {}
    for (x, y) in pairs:
        by_src.setdefault(x, []).append((x, y))
    for (x, y) in pairs:
        for (_, z) in by_src.get(y, ()):
            for (_, w) in by_src.get(z, ()):
                for f in cat.hom(x, y):
                    fvec = cat.basis_vector(f)
                    for g in cat.hom(y, z):
                        gf = cat.compose_basis(f, g)
                        for h in cat.hom(z, w):
                            hvec = cat.basis_vector(h)
                            hg = cat.compose_basis(g, h)
                            lhs = cat.compose_vectors(x, z, w, gf, hvec)
                            rhs = cat.compose_vectors(x, y, w, fvec, hg)
                            if lhs != rhs:
                                problems.append(Violation(
                                    "associativity", (f, g, h),
                                    f"(h∘g)∘f ≠ h∘(g∘f) for ({f},{g},{h})"))
    return ValidationReport(not problems, tuple(problems))


# quivers and path categories ----------------------------------------------


@dataclass(frozen=True)
class Quiver:
    """A finite acyclic quiver: arrows are (name, src, dst) triples."""

    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(tuple(a) for a in self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise ConstructionError("duplicate vertex names")
        vset = set(self.vertices)
        names = set()
        for name, src, dst in self.arrows:
            if src not in vset or dst not in vset:
                raise ConstructionError(f"arrow {name} has endpoints outside the quiver")
            if name in names:
                raise ConstructionError(f"duplicate arrow name {name}")
            names.add(name)
        if self._has_cycle():
            raise ConstructionError("quiver has a directed cycle")

    def _has_cycle(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for _, src, dst in self.arrows:
            indeg[dst] += 1
            out[src].append(dst)
        queue = deque(v for v in self.vertices if indeg[v] == 0)
        seen = 0
        while queue:
            v = queue.popleft()
            seen += 1
            for w in out[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
        return seen != len(self.vertices)

    def arrow_map(self) -> dict[str, tuple[str, str]]:
        return {name: (src, dst) for name, src, dst in self.arrows}


def _path_name(arrows: tuple[str, ...], vertex: str) -> str:
    return f"1_{vertex}" if not arrows else "*".join(arrows)


def _enumerate_paths(q: Quiver) -> dict[tuple[str, str], list[tuple[str, ...]]]:
    """All directed paths, keyed by (src, dst), as arrow tuples in composition
    order (last arrow first); the empty tuple is the trivial path."""
    ends = q.arrow_map()
    out_arrows: dict[str, list[str]] = {v: [] for v in q.vertices}
    for name, src, _ in q.arrows:
        out_arrows[src].append(name)
    for v in out_arrows:
        out_arrows[v].sort()

    paths: dict[tuple[str, str], list[tuple[str, ...]]] = {}

    def extend(start: str, current: str, arrows_so_far: tuple[str, ...]):
        paths.setdefault((start, current), []).append(arrows_so_far)
        for a in out_arrows[current]:
            extend(start, ends[a][1], (a,) + arrows_so_far)

    for v in q.vertices:
        extend(v, v, ())
    for key in paths:
        x, _ = key
        paths[key].sort(key=lambda p: (len(p), _path_name(p, x)))
    return paths


def path_category(q: Quiver, relations: Sequence[Sequence[tuple]],
                  field: FieldSpec) -> LinearCategory:
    """The path category of an acyclic quiver modulo linear relations.

    Each relation is a sequence of (coefficient, path) terms, a path being a
    list of arrow names in composition order (["c", "b"] is c∘b).  All terms
    of one relation must be parallel paths.  Hom bases are the canonical
    echelon complements of the two-sided ideal the relations generate.
    """
    return _path_category_data(q, relations, field).category


@dataclass(frozen=True)
class PathCategoryData:
    """A path category plus the reduction data the builders need: all paths,
    the surviving (basis) paths per hom pair, and the map from path vectors
    to quotient coordinates."""

    category: LinearCategory
    paths: dict
    survivors: dict
    reduce_path_vector: object  # callable (x, y, coefficient list) -> tuple

    def class_of_path(self, x: str, y: str, arrows: tuple[str, ...]) -> tuple:
        plist = self.paths[(x, y)]
        vec = [self.category.field.zero] * len(plist)
        vec[plist.index(arrows)] = self.category.field.one
        return self.reduce_path_vector(x, y, vec)


def _path_category_data(q: Quiver, relations: Sequence[Sequence[tuple]],
                        field: FieldSpec) -> PathCategoryData:
    ends = q.arrow_map()
    paths = _enumerate_paths(q)

    def path_endpoints(arrows: Sequence[str]) -> tuple[str, str]:
        if not arrows:
            raise ConstructionError("relation terms must name at least one arrow")
        for a in arrows:
            if a not in ends:
                raise ConstructionError(f"relation references unknown arrow {a}")
        src = ends[arrows[-1]][0]
        cur = src
        for a in reversed(arrows):
            if ends[a][0] != cur:
                raise ConstructionError(f"relation path {list(arrows)} is not composable")
            cur = ends[a][1]
        return src, cur

    # relation vectors in path coordinates, keyed by hom pair
    rel_vectors: dict[tuple[str, str], list[list]] = {}
    parsed_relations = []
    for rel in relations:
        if not rel:
            continue
        terms = []
        span = None
        for coeff, arrow_list in rel:
            arrows = tuple(arrow_list)
            endpoints = path_endpoints(arrows)
            if span is None:
                span = endpoints
            elif endpoints != span:
                raise ConstructionError("relation mixes non-parallel paths")
            terms.append((field.scalar(coeff), arrows))
        parsed_relations.append((span, terms))

    def vector_of(span, terms) -> list:
        plist = paths[span]
        index = {p: i for i, p in enumerate(plist)}
        v = [field.zero] * len(plist)
        for coeff, arrows in terms:
            v[index[arrows]] = field.add(v[index[arrows]], coeff)
        return v

    # close the relations under pre/post composition by all paths
    for (x, y), terms in parsed_relations:
        for (u, x2), pres in paths.items():
            if x2 != x:
                continue
            for pre in pres:
                for (y2, v), posts in paths.items():
                    if y2 != y:
                        continue
                    for post in posts:
                        shifted = [(c, post + arrows + pre) for c, arrows in terms]
                        rel_vectors.setdefault((u, v), []).append(
                            vector_of((u, v), shifted))

    hom_basis: dict[tuple[str, str], tuple[str, ...]] = {}
    identity: dict[str, tuple] = {}
    composition: dict[tuple[str, str], tuple] = {}
    # per hom pair: surviving paths, ideal echelon rows + pivots for reduction
    survivors: dict[tuple[str, str], list[tuple[str, ...]]] = {}
    reducers: dict[tuple[str, str], tuple] = {}

    for (x, y), plist in sorted(paths.items()):
        vecs = rel_vectors.get((x, y), [])
        if vecs:
            m = Matrix.from_rows(field, vecs)
            red, pivots = m.rref()
            rows = [r for r in red.entries if any(c != field.zero for c in r)]
        else:
            rows, pivots = [], ()
        pivot_set = set(pivots)
        keep = [p for i, p in enumerate(plist) if i not in pivot_set]
        if not keep:
            continue
        survivors[(x, y)] = keep
        reducers[(x, y)] = (rows, pivots, plist,
                            [i for i in range(len(plist)) if i not in pivot_set])
        hom_basis[(x, y)] = tuple(_path_name(p, x) for p in keep)

    def reduce_path_vector(x: str, y: str, vec: list) -> tuple:
        if (x, y) not in reducers:
            if any(c != field.zero for c in vec):
                raise ConstructionError("non-zero vector in a collapsed hom space")
            return ()
        rows, pivots, _, free = reducers[(x, y)]
        v = list(vec)
        for row, p in zip(rows, pivots):
            c = v[p]
            if c == field.zero:
                continue
            for j, a in enumerate(row):
                v[j] = field.sub(v[j], field.mul(c, a))
        return tuple(v[i] for i in free)

    for x in q.vertices:
        plist = paths[(x, x)]
        vec = [field.zero] * len(plist)
        vec[plist.index(())] = field.one
        coords = reduce_path_vector(x, x, vec)
        if not coords or all(c == field.zero for c in coords):
            raise ConstructionError(f"relations annihilate the identity at {x}")
        identity[x] = coords

    for (x, y), fpaths in survivors.items():
        for (y2, z), gpaths in survivors.items():
            if y2 != y:
                continue
            for fp in fpaths:
                for gp in gpaths:
                    concat = gp + fp
                    plist = paths[(x, z)]
                    vec = [field.zero] * len(plist)
                    vec[plist.index(concat)] = field.one
                    coords = reduce_path_vector(x, z, vec)
                    if coords and any(c != field.zero for c in coords):
                        composition[(_path_name(fp, x), _path_name(gp, y))] = coords

    category = LinearCategory(field, tuple(q.vertices), hom_basis,
                              identity, composition)
    return PathCategoryData(category, paths, survivors, reduce_path_vector)


# categories from algebras ---------------------------------------------------


def category_from_algebra(field: FieldSpec, basis: Sequence[str],
                          mult: Mapping[tuple[str, str], Mapping[str, object]],
                          idempotents: Sequence[tuple[str, Sequence]],
                          ) -> LinearCategory:
    """The category with objects a complete orthogonal idempotent set E of a
    finite-dimensional algebra A and hom spaces f·A·e.

    ``mult[(a, b)]`` gives the product a·b as a sparse {basis name: coeff}
    mapping.  Idempotency, orthogonality and summing to the unit of A are
    verified exactly before anything is built.
    """
    basis = list(basis)
    if len(set(basis)) != len(basis):
        raise ConstructionError("duplicate algebra basis names")
    n = len(basis)
    index = {b: i for i, b in enumerate(basis)}

    table = {}
    for (a, b), result in mult.items():
        if a not in index or b not in index:
            raise ConstructionError(f"multiplication ({a},{b}) references unknown basis")
        vec = [field.zero] * n
        for name, coeff in result.items():
            vec[index[name]] = field.add(vec[index[name]], field.scalar(coeff))
        table[(index[a], index[b])] = tuple(vec)

    zero = (field.zero,) * n

    def mul_basis(i: int, j: int) -> tuple:
        return table.get((i, j), zero)

    def mul_vec(u, v) -> tuple:
        # product u·v in A coordinates
        out = [field.zero] * n
        for i, uc in enumerate(u):
            if uc == field.zero:
                continue
            for j, vc in enumerate(v):
                if vc == field.zero:
                    continue
                s = field.mul(uc, vc)
                for t, c in enumerate(mul_basis(i, j)):
                    out[t] = field.add(out[t], field.mul(s, c))

        return tuple(out)

    idems = [(name, tuple(field.scalar(c) for c in coords))
             for name, coords in idempotents]
    if len(set(name for name, _ in idems)) != len(idems):
        raise ConstructionError("duplicate idempotent names")
    for name, e in idems:
        if len(e) != n:
            raise ConstructionError(f"idempotent {name} has wrong length")
        if mul_vec(e, e) != e:
            raise ConstructionError(f"{name} is not idempotent")
    for i, (na, ea) in enumerate(idems):
        for nb, eb in idems[i + 1:]:
            if any(c != field.zero for c in mul_vec(ea, eb)) or \
               any(c != field.zero for c in mul_vec(eb, ea)):
                raise ConstructionError(f"idempotents {na} and {nb} are not orthogonal")
    unit = [field.zero] * n
    for _, e in idems:
        unit = [field.add(a, b) for a, b in zip(unit, e)]
    unit = tuple(unit)
    for i, b in enumerate(basis):
        bvec = tuple(field.one if j == i else field.zero for j in range(n))
        if mul_vec(unit, bvec) != bvec or mul_vec(bvec, unit) != bvec:
            raise ConstructionError("idempotents do not sum to the unit of A")

    hom_basis: dict[tuple[str, str], tuple[str, ...]] = {}
    identity: dict[str, tuple] = {}
    composition: dict[tuple[str, str], tuple] = {}
    # per hom pair: echelon rows (vectors in A coordinates) and their pivots
    spaces: dict[tuple[str, str], tuple] = {}

    for ne, e in idems:
        for nf, f in idems:
            spanning = []
            for i in range(n):
                bvec = tuple(field.one if j == i else field.zero for j in range(n))
                spanning.append(mul_vec(f, mul_vec(bvec, e)))
            red, _ = Matrix.from_rows(field, spanning).rref()
            rows = [r for r in red.entries if any(c != field.zero for c in r)]
            if not rows:
                continue
            pivots = echelon_pivots(rows, field)
            spaces[(ne, nf)] = (rows, pivots)
            hom_basis[(ne, nf)] = tuple(f"{ne}>{nf}:{i}" for i in range(len(rows)))

    for ne, e in idems:
        rows, pivots = spaces[(ne, ne)]
        identity[ne] = express_in_echelon(rows, pivots, e, field)

    for (ne, nf), (frows, _) in spaces.items():
        for (nf2, ng), (grows, _) in spaces.items():
            if nf2 != nf:
                continue
            target = spaces.get((ne, ng))
            for i, fv in enumerate(frows):
                for j, gv in enumerate(grows):
                    prod = mul_vec(gv, fv)  # composition is g after f
                    if all(c == field.zero for c in prod):
                        continue
                    if target is None:
                        raise ConstructionError(
                            "algebra product escapes its computed hom space")
                    coords = express_in_echelon(target[0], target[1], prod, field)
                    composition[(f"{ne}>{nf}:{i}", f"{nf}>{ng}:{j}")] = coords

    return LinearCategory(field, tuple(name for name, _ in idems),
                          hom_basis, identity, composition)


# connectedness --------------------------------------------------------------


def _adjacency(cat: LinearCategory) -> dict[str, set[str]]:
    adj: dict[str, set[str]] = {x: set() for x in cat.objects}
    for (x, y) in cat.hom_basis:
        if x != y:
            adj[x].add(y)
            adj[y].add(x)
    return adj


def connected_components(cat: LinearCategory) -> tuple[tuple[tuple[str, ...], ...], bool]:
    """Partition of objects by non-zero-walk reachability, plus a connected flag."""
    adj = _adjacency(cat)
    seen = set()
    parts = []
    for start in cat.objects:
        if start in seen:
            continue
        comp = []
        queue = deque([start])
        seen.add(start)
        while queue:
            v = queue.popleft()
            comp.append(v)
            for w in sorted(adj[v]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        parts.append(tuple(sorted(comp)))
    parts.sort(key=lambda part: part[0])
    return tuple(parts), len(parts) == 1


def nonzero_walk_between(cat: LinearCategory, a: str, b: str) -> Optional[SignedWalk]:
    """An explicit non-zero signed walk from a to b, or None if disconnected."""
    if a == b:
        return SignedWalk((WalkStep(cat.identity[a], a, a, 1),))
    adj = _adjacency(cat)
    parent: dict[str, tuple[str, str, str, int]] = {}
    queue = deque([a])
    seen = {a}
    while queue:
        v = queue.popleft()
        for w in sorted(adj[v]):
            if w in seen:
                continue
            if (v, w) in cat.hom_basis:
                parent[w] = (v, v, w, 1)
            else:
                parent[w] = (v, w, v, -1)
            seen.add(w)
            queue.append(w)
            if w == b:
                queue.clear()
                break
    if b not in parent:
        return None
    steps = []
    cur = b
    while cur != a:
        prev, src, dst, sign = parent[cur]
        name = cat.hom_basis[(src, dst)][0]
        steps.append(WalkStep(cat.basis_vector(name), src, dst, sign))
        cur = prev
    walk = SignedWalk(tuple(reversed(steps)))
    walk.validate(cat)
    return walk


# product with a set ---------------------------------------------------------


def product_with_set(cat: LinearCategory, labels: Iterable[str]):
    """The product category B×E together with its projection onto B.

    Objects are (x, e) pairs; homs copy B within one label and vanish across
    labels.  Returns (category, projection functor).
    """
    labels = sorted(str(l) for l in labels)
    if not labels:
        raise ConstructionError("the label set must be non-empty")
    if len(set(labels)) != len(labels):
        raise ConstructionError("duplicate labels")

    def obj(x: str, l: str) -> str:
        return f"({x},{l})"

    def mor(name: str, l: str) -> str:
        return f"({name},{l})"

    hom_basis = {}
    identity = {}
    composition = {}
    for l in labels:
        for (x, y), basis in cat.hom_basis.items():
            hom_basis[(obj(x, l), obj(y, l))] = tuple(mor(b, l) for b in basis)
        for x in cat.objects:
            identity[obj(x, l)] = cat.identity[x]
        for (f, g), coords in cat.composition.items():
            composition[(mor(f, l), mor(g, l))] = coords

    product = LinearCategory(cat.field,
                             tuple(obj(x, l) for x in cat.objects for l in labels),
                             hom_basis, identity, composition)

    from .linfun import LinearFunctor  # local import to avoid a module cycle
    object_map = {obj(x, l): x for x in cat.objects for l in labels}
    hom_matrices = {}
    for l in labels:
        for (x, y), basis in cat.hom_basis.items():
            hom_matrices[(obj(x, l), obj(y, l))] = Matrix.identity(cat.field, len(basis))
    projection = LinearFunctor(product, cat, object_map, hom_matrices)
    return product, projection


def full_subcategory(cat: LinearCategory, objects: Iterable[str]):
    """The full subcategory on a subset of objects, with its inclusion functor."""
    objs = sorted(set(objects))
    for x in objs:
        if x not in cat.objects:
            raise ConstructionError(f"unknown object {x}")
    keep = set(objs)
    hom_basis = {pair: basis for pair, basis in cat.hom_basis.items()
                 if pair[0] in keep and pair[1] in keep}
    names = {name for basis in hom_basis.values() for name in basis}
    identity = {x: cat.identity[x] for x in objs}
    composition = {(f, g): coords for (f, g), coords in cat.composition.items()
                   if f in names and g in names}
    sub = LinearCategory(cat.field, tuple(objs), hom_basis, identity, composition)

    from .linfun import LinearFunctor
    object_map = {x: x for x in objs}
    hom_matrices = {pair: Matrix.identity(cat.field, len(basis))
                    for pair, basis in hom_basis.items()}
    inclusion = LinearFunctor(sub, cat, object_map, hom_matrices)
    return sub, inclusion

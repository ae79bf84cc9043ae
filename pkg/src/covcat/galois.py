"""Deck transformations and the Galois / trivial / universal decision procedures.

Lifts of objects to endofunctors are propagated along a breadth-first
spanning tree of the non-zero-hom graph, transporting morphisms through the
inverse fibre-block matrices of a covering certificate, and then verified
globally; uniqueness of lifts makes the propagation deterministic and makes
the x0-anchored lifts exhaust the whole deck group.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from .errors import ConstructionError, CovcatError, NotConnectedError, \
    NotCoveringError
from .exactalg import Matrix
from .lincat import LinearCategory, connected_components, full_subcategory, \
    product_with_set
from .linfun import LinearFunctor, compose, functor_equal, identity_functor, \
    is_isomorphism, validate_functor
from .covering import CoveringCertificate, CoveringFailure, check_covering
from .fibprod import fibre_product

__all__ = [
    "DeckGroup",
    "Section",
    "TrivialityWitness",
    "TrivialityResult",
    "GaloisStatus",
    "GaloisVerdict",
    "lift_endofunctor",
    "deck_group",
    "sections_through",
    "is_trivial_covering",
    "is_galois",
    "is_galois_both",
    "quotient_by_group",
    "structure_iso",
    "check_universal_against",
    "UniversalityCheck",
    "UniversalityReport",
]


def _ensure_certificate(fun: LinearFunctor,
                        cert: Optional[CoveringCertificate]) -> CoveringCertificate:
    if cert is not None:
        return cert
    got = check_covering(fun)
    if isinstance(got, CoveringFailure):
        raise NotCoveringError(got.message())
    return got


def _ensure_connected(cat: LinearCategory, which: str) -> None:
    _, connected = connected_components(cat)
    if not connected:
        raise NotConnectedError(f"{which} category is not connected")


# deck transformations -------------------------------------------------------


def lift_endofunctor(fun: LinearFunctor, x: str, x_prime: str,
                     cert: Optional[CoveringCertificate] = None,
                     ) -> Optional[LinearFunctor]:
    """The unique endofunctor H with FH = F and H(x) = x', if one exists.

    The object assignment is forced: pushing any basis morphism at an
    assigned object through the inverse fibre block at its image must land
    in a single fibre component, which names the image of the far object.
    The resulting candidate is verified globally (functor axioms, FH = F,
    invertibility); at most one H can exist, so failure means none does.
    """
    cert = _ensure_certificate(fun, cert)
    _ensure_connected(fun.source, "source")
    if fun.object_map[x] != fun.object_map[x_prime]:
        raise ConstructionError(f"{x} and {x_prime} are not in the same fibre")

    src = fun.source
    assign = {x: x_prime}
    adjacency: dict[str, set[str]] = {o: set() for o in src.objects}
    for (a, b) in src.hom_basis:
        if a != b:
            adjacency[a].add(b)
            adjacency[b].add(a)

    queue = deque([x])
    while queue:
        u = queue.popleft()
        for v in sorted(adjacency[u]):
            if v in assign:
                continue
            target = _propagate(fun, cert, assign[u], u, v)
            if target is None:
                return None
            assign[v] = target
            queue.append(v)

    matrices = {}
    for (u, v) in src.hom_basis:
        extracted = _transport_matrix(fun, cert, assign, u, v)
        if extracted is None:
            return None
        matrices[(u, v)] = extracted

    candidate = LinearFunctor(src, src, assign, matrices)
    if not validate_functor(candidate).ok:
        return None
    if not functor_equal(compose(fun, candidate), fun):
        return None
    if is_isomorphism(candidate) is None:
        return None
    return candidate


def _block_support(block, vec) -> set:
    """Fibre objects whose slice of a block-coordinate vector is non-zero."""
    support = set()
    for coeff, (obj, _) in zip(vec, block.column_layout):
        if coeff != 0:
            support.add(obj)
    return support


def _propagate(fun: LinearFunctor, cert: CoveringCertificate,
               lifted_u: str, u: str, v: str) -> Optional[str]:
    """Image of v forced by the morphisms between u and v, given u's image."""
    src = fun.source
    fu, fv = fun.object_map[u], fun.object_map[v]
    if (u, v) in src.hom_basis:
        block = cert.block(fu, fv, lifted_u, "source")
        matrix = fun.hom_matrices[(u, v)]
    else:
        block = cert.block(fv, fu, lifted_u, "target")
        matrix = fun.hom_matrices[(v, u)]
    target = None
    for j in range(matrix.ncols):
        transported = block.inverse.apply(matrix.column(j))
        support = _block_support(block, transported)
        if len(support) != 1:
            return None
        w = support.pop()
        if target is None:
            target = w
        elif target != w:
            return None
    return target


def _transport_matrix(fun: LinearFunctor, cert: CoveringCertificate,
                      assign: dict, u: str, v: str) -> Optional[Matrix]:
    """H's matrix on hom(u, v): inverse block transport, then the slice of
    rows belonging to assign[v]."""
    src = fun.source
    fu, fv = fun.object_map[u], fun.object_map[v]
    block = cert.block(fu, fv, assign[u], "source")
    transported = block.inverse @ fun.hom_matrices[(u, v)]
    rows = [i for i, (obj, _) in enumerate(block.column_layout)
            if obj == assign[v]]
    data = tuple(transported.entries[i] for i in rows)
    return Matrix(src.field, len(rows), transported.ncols, data)


@dataclass(frozen=True)
class DeckGroup:
    """The group of invertible endofunctors H of the source with FH = F,
    together with its action on objects."""

    covering: LinearFunctor
    elements: tuple[LinearFunctor, ...]
    action: dict[tuple[int, str], str]

    @property
    def order(self) -> int:
        return len(self.elements)

    def act(self, i: int, x: str) -> str:
        return self.action[(i, x)]

    def element_index(self, h: LinearFunctor) -> Optional[int]:
        for i, e in enumerate(self.elements):
            if functor_equal(e, h):
                return i
        return None

    def orbit(self, x: str) -> tuple[str, ...]:
        return tuple(sorted({self.action[(i, x)] for i in range(self.order)}))


def deck_group(fun: LinearFunctor,
               cert: Optional[CoveringCertificate] = None) -> DeckGroup:
    """Aut_1(F) for a connected covering, built from lifts anchored at the
    least object of the least-named base fibre; verified to be a group
    acting freely."""
    cert = _ensure_certificate(fun, cert)
    _ensure_connected(fun.source, "source")

    base_obj = fun.target.objects[0]
    fibre = cert.fibres[base_obj]
    anchor = fibre[0]
    elements = []
    for x_prime in fibre:
        h = lift_endofunctor(fun, anchor, x_prime, cert)
        if h is not None:
            elements.append(h)
    elements = tuple(elements)

    group = DeckGroup(fun, elements,
                      {(i, x): h.object_map[x]
                       for i, h in enumerate(elements)
                       for x in fun.source.objects})

    # the anchored lifts must form a group: verify rather than trust
    if group.element_index(identity_functor(fun.source)) is None:
        raise CovcatError("deck group lost its identity element")
    for i, h in enumerate(elements):
        for j, g in enumerate(elements):
            if group.element_index(compose(h, g)) is None:
                raise CovcatError("deck lifts are not closed under composition")
        inv = is_isomorphism(h)
        if inv is None or group.element_index(inv) is None:
            raise CovcatError("deck lift has no inverse in the group")
        if not functor_equal(compose(fun, h), fun):
            raise CovcatError("deck element does not commute with the covering")
    for i, h in enumerate(elements):
        if all(h.object_map[x] == x for x in fun.source.objects):
            continue
        for x in fun.source.objects:
            if h.object_map[x] == x:
                raise CovcatError("deck action is not free on objects")
    return group


# sections and trivial coverings ---------------------------------------------


@dataclass(frozen=True)
class Section:
    """A functor S with FS = 1; its image is a full connected component."""

    covering: LinearFunctor
    functor: LinearFunctor


def sections_through(fun: LinearFunctor, x: str,
                     cert: Optional[CoveringCertificate] = None,
                     ) -> Optional[Section]:
    """The section through x, when the component of x maps isomorphically
    onto the base; None otherwise."""
    cert = _ensure_certificate(fun, cert)
    _ensure_connected(fun.target, "target")
    parts, _ = connected_components(fun.source)
    component = next(p for p in parts if x in p)
    sub, incl = full_subcategory(fun.source, component)
    restricted = compose(fun, incl)
    inv = is_isomorphism(restricted)
    if inv is None:
        return None
    section = compose(incl, inv)
    if section.object_map[fun.object_map[x]] != x:
        raise CovcatError("section misses its anchor object")
    return Section(fun, section)


@dataclass(frozen=True)
class TrivialityWitness:
    """Exhibits E and the isomorphism B×E ≅ C over B: one section per
    connected component of the source."""

    labels: tuple[str, ...]
    components: tuple[tuple[str, ...], ...]
    sections: tuple[LinearFunctor, ...]
    iso: LinearFunctor  # from product_with_set(base, labels).category to the source


@dataclass(frozen=True)
class TrivialityResult:
    trivial: bool
    witness: Optional[TrivialityWitness] = None
    failing_component: Optional[tuple[str, ...]] = None


def is_trivial_covering(fun: LinearFunctor,
                        cert: Optional[CoveringCertificate] = None,
                        ) -> TrivialityResult:
    """True iff every connected component of the source maps isomorphically
    onto the (connected) base; the witness realizes the product structure."""
    cert = _ensure_certificate(fun, cert)
    _ensure_connected(fun.target, "target")
    base = fun.target
    parts, _ = connected_components(fun.source)

    sections = []
    for component in parts:
        sub, incl = full_subcategory(fun.source, component)
        inv = is_isomorphism(compose(fun, incl))
        if inv is None:
            return TrivialityResult(False, failing_component=component)
        sections.append(compose(incl, inv))

    labels = tuple(p[0] for p in parts)
    product, projection = product_with_set(base, labels)
    object_map = {}
    hom_matrices = {}
    for label, section in zip(labels, sections):
        for b in base.objects:
            object_map[f"({b},{label})"] = section.object_map[b]
        for (b, b2) in base.hom_basis:
            hom_matrices[(f"({b},{label})", f"({b2},{label})")] = \
                section.hom_matrices[(b, b2)]
    iso = LinearFunctor(product, fun.source, object_map, hom_matrices)
    if is_isomorphism(iso) is None:
        raise CovcatError("component sections failed to assemble an isomorphism")
    if not functor_equal(compose(fun, iso), projection):
        raise CovcatError("product isomorphism does not commute with the covering")
    return TrivialityResult(True, TrivialityWitness(labels, parts,
                                                    tuple(sections), iso))


# Galois verdicts -------------------------------------------------------------


class GaloisStatus(Enum):
    NOT_CONNECTED = "NotConnected"
    NOT_COVERING = "NotCovering"
    NON_GALOIS = "NonGalois"
    GALOIS = "Galois"


@dataclass(frozen=True)
class GaloisVerdict:
    status: GaloisStatus
    method: str
    components: Optional[tuple[tuple[str, ...], ...]] = None
    covering_failure: Optional[CoveringFailure] = None
    certificate: Optional[CoveringCertificate] = None
    deck: Optional[DeckGroup] = None
    fibre: Optional[tuple[str, ...]] = None
    unreachable: Optional[tuple[str, ...]] = None
    triviality: Optional[TrivialityResult] = None

    @property
    def is_galois(self) -> bool:
        return self.status is GaloisStatus.GALOIS


def is_galois(fun: LinearFunctor, method: str = "direct") -> GaloisVerdict:
    """Decide the Galois property.

    "direct" checks that the deck group is transitive on the fibre of the
    least base object; "fibre" checks that the first projection of the fibre
    product of the covering with itself is a trivial covering.  The two
    always agree.
    """
    if method not in ("direct", "fibre"):
        raise ConstructionError(f"unknown method {method!r}")
    parts, connected = connected_components(fun.source)
    if not connected:
        return GaloisVerdict(GaloisStatus.NOT_CONNECTED, method, components=parts)
    cert = check_covering(fun)
    if isinstance(cert, CoveringFailure):
        return GaloisVerdict(GaloisStatus.NOT_COVERING, method,
                             covering_failure=cert)

    if method == "direct":
        deck = deck_group(fun, cert)
        base_obj = fun.target.objects[0]
        fibre = cert.fibres[base_obj]
        anchor = fibre[0]
        orbit = deck.orbit(anchor)
        unreachable = tuple(x for x in fibre if x not in orbit)
        status = GaloisStatus.GALOIS if not unreachable else GaloisStatus.NON_GALOIS
        return GaloisVerdict(status, method, certificate=cert, deck=deck,
                             fibre=fibre, unreachable=unreachable)

    fp = fibre_product(fun, fun)
    cert2 = check_covering(fp.pr1)
    if isinstance(cert2, CoveringFailure):
        return GaloisVerdict(GaloisStatus.NON_GALOIS, method, certificate=cert,
                             covering_failure=cert2)
    triviality = is_trivial_covering(fp.pr1, cert2)
    status = GaloisStatus.GALOIS if triviality.trivial else GaloisStatus.NON_GALOIS
    return GaloisVerdict(status, method, certificate=cert, triviality=triviality)


def is_galois_both(fun: LinearFunctor) -> GaloisVerdict:
    """Run both methods and assert they agree; returns the direct verdict."""
    direct = is_galois(fun, "direct")
    fibre = is_galois(fun, "fibre")
    if direct.status is not fibre.status:
        raise CovcatError(
            f"method disagreement: direct={direct.status.value}, "
            f"fibre={fibre.status.value}")
    return direct


# quotients and the structure theorem -----------------------------------------


def quotient_by_group(cat: LinearCategory, group: DeckGroup):
    """The categorical quotient of ``cat`` by a freely acting group, with the
    projection functor.

    Orbits are named by their least member; the hom space from one orbit to
    another is the direct sum of the homs from the representative to every
    member of the other orbit, and composition is transported through the
    unique aligning group element.
    """
    for i, h in enumerate(group.elements):
        moved = [x for x in cat.objects if h.object_map[x] != x]
        if moved and len(moved) != len(cat.objects):
            raise ConstructionError("group action is not free on objects")

    orbit_of: dict[str, tuple[str, ...]] = {}
    for x in cat.objects:
        orbit_of[x] = tuple(sorted({group.act(i, x) for i in range(group.order)}))
    reps = sorted({orbit[0] for orbit in orbit_of.values()})

    def aligner(x: str, target: str) -> LinearFunctor:
        # unique by freeness
        for i, h in enumerate(group.elements):
            if h.object_map[x] == target:
                return h
        raise ConstructionError(f"no group element carries {x} to {target}")

    # quotient hom bases reuse the names of morphisms out of representatives
    hom_basis: dict[tuple[str, str], tuple[str, ...]] = {}
    offsets: dict[tuple[str, str], dict[str, int]] = {}
    for r in reps:
        for r2 in reps:
            names: list[str] = []
            offset: dict[str, int] = {}
            for y in orbit_of[r2]:
                offset[y] = len(names)
                names.extend(cat.hom(r, y))
            if names:
                hom_basis[(r, r2)] = tuple(names)
                offsets[(r, r2)] = offset

    def place(r: str, r2: str, y: str, coords) -> list:
        out = [cat.field.zero] * len(hom_basis[(r, r2)])
        base = offsets[(r, r2)][y]
        for t, c in enumerate(coords):
            out[base + t] = c
        return out

    identity = {}
    for r in reps:
        identity[r] = tuple(place(r, r, r, cat.identity[r]))

    composition = {}
    for (r, r2), names1 in hom_basis.items():
        for (r2b, r3), names2 in hom_basis.items():
            if r2b != r2:
                continue
            for y in orbit_of[r2]:
                h = aligner(r2, y)
                for z in orbit_of[r3]:
                    hz = h.object_map[z]
                    for phi_name in cat.hom(r, y):
                        phi = cat.basis_vector(phi_name)
                        for psi_name in cat.hom(r2, z):
                            psi_moved = h.apply(r2, z, cat.basis_vector(psi_name))
                            comp = cat.compose_vectors(r, y, hz, phi, psi_moved)
                            if all(c == cat.field.zero for c in comp):
                                continue
                            composition[(phi_name, psi_name)] = tuple(
                                place(r, r3, hz, comp))

    quotient = LinearCategory(cat.field, tuple(reps), hom_basis,
                              identity, composition)

    object_map = {x: orbit_of[x][0] for x in cat.objects}
    hom_matrices = {}
    for (x, y) in cat.hom_basis:
        r, r2 = object_map[x], object_map[y]
        g = aligner(x, r)
        gy = g.object_map[y]
        cols = []
        for name in cat.hom(x, y):
            moved = g.apply(x, y, cat.basis_vector(name))
            cols.append(place(r, r2, gy, moved))
        hom_matrices[(x, y)] = Matrix.from_columns(
            cat.field, cols, len(hom_basis[(r, r2)]))
    projection = LinearFunctor(cat, quotient, object_map, hom_matrices)
    return quotient, projection


def structure_iso(fun: LinearFunctor,
                  verdict: Optional[GaloisVerdict] = None) -> LinearFunctor:
    """The unique isomorphism F' from the quotient by the deck group to the
    base with F'∘P = F, for a Galois covering."""
    if verdict is None or verdict.deck is None:
        verdict = is_galois(fun, "direct")
    if not verdict.is_galois:
        raise ConstructionError("functor is not a Galois covering")
    quotient, projection = quotient_by_group(fun.source, verdict.deck)

    object_map = {r: fun.object_map[r] for r in quotient.objects}
    hom_matrices = {}
    for (r, r2), names in quotient.hom_basis.items():
        cols = []
        for name in names:
            x, y, i = fun.source.basis_location[name]
            cols.append(fun.apply(x, y, fun.source.basis_vector(name)))
        hom_matrices[(r, r2)] = Matrix.from_columns(
            fun.source.field, cols, fun.target.dim(object_map[r], object_map[r2]))
    prime = LinearFunctor(quotient, fun.target, object_map, hom_matrices)
    if not functor_equal(compose(prime, projection), fun):
        raise CovcatError("structure isomorphism does not factor the covering")
    if is_isomorphism(prime) is None:
        raise CovcatError("structure functor is not an isomorphism")
    return prime


# universality relative to a family -------------------------------------------


@dataclass(frozen=True)
class UniversalityCheck:
    index: int
    passed: bool
    reason: str
    covering_failure: Optional[CoveringFailure] = None
    failing_component: Optional[tuple[str, ...]] = None


@dataclass(frozen=True)
class UniversalityReport:
    checks: tuple[UniversalityCheck, ...]
    universal_relative_to_family: bool


def check_universal_against(u: LinearFunctor,
                            family: Sequence[LinearFunctor],
                            ) -> UniversalityReport:
    """PASS for a family member F iff the fibre product of u with F projects
    onto the source of u as a trivial covering.  Certifies universality only
    relative to the supplied family."""
    _ensure_certificate(u, None)
    _ensure_connected(u.source, "source")
    checks = []
    for idx, member in enumerate(family):
        verdict = is_galois(member, "direct")
        if not verdict.is_galois:
            raise ConstructionError(
                f"family member {idx} is not a Galois covering "
                f"({verdict.status.value})")
        fp = fibre_product(u, member)
        cert = check_covering(fp.pr1)
        if isinstance(cert, CoveringFailure):
            checks.append(UniversalityCheck(
                idx, False, f"projection is not a covering: {cert.message()}",
                covering_failure=cert))
            continue
        triviality = is_trivial_covering(fp.pr1, cert)
        if not triviality.trivial:
            checks.append(UniversalityCheck(
                idx, False, "projection covering is not trivial",
                failing_component=triviality.failing_component))
            continue
        checks.append(UniversalityCheck(idx, True, "fibre product is trivial"))
    return UniversalityReport(tuple(checks),
                              all(c.passed for c in checks))

"""Deck groups, sections, triviality, Galois verdicts, quotients, universality."""

import pytest

from covcat.errors import ConstructionError, NotConnectedError
from covcat.exactalg import QQ, Matrix
from covcat.lincat import Quiver, connected_components, full_subcategory, \
    path_category, product_with_set, validate_category
from covcat.linfun import LinearFunctor, compose, functor_equal, \
    identity_functor, is_isomorphism, validate_functor
from covcat.covering import CoveringCertificate, check_covering
from covcat.fibprod import fibre_product
from covcat.galois import (
    DeckGroup,
    GaloisStatus,
    check_universal_against,
    deck_group,
    is_galois,
    is_galois_both,
    is_trivial_covering,
    lift_endofunctor,
    quotient_by_group,
    sections_through,
    structure_iso,
)
from covcat.examples import triangle_base

from oracles import exhaustive_lifts


# lifts -----------------------------------------------------------------------


def test_lift_to_itself_is_identity(f1):
    h = lift_endofunctor(f1, "t0", "t0")
    assert h is not None
    assert functor_equal(h, identity_functor(f1.source))


def _explicit_shift(f1):
    """The sheet-swap automorphism of the double cover, built by hand."""
    src = f1.source
    swap = {}
    for x in src.objects:
        letter, index = x[:-1], int(x[-1])
        swap[x] = f"{letter}{(index + 1) % 2}"
    matrices = {pair: Matrix.identity(QQ, 1) for pair in src.hom_basis}
    return LinearFunctor(src, src, swap, matrices)


def test_lift_to_other_sheet_is_the_shift(f1):
    sigma = _explicit_shift(f1)
    # independent sanity: the explicit functor is valid and commutes with F
    assert validate_functor(sigma).ok
    assert functor_equal(compose(f1, sigma), f1)
    h = lift_endofunctor(f1, "t0", "t1")
    assert h is not None
    assert functor_equal(h, sigma)


def test_twisted_kronecker_has_no_cross_lift(kron_twisted):
    assert lift_endofunctor(kron_twisted, "x0", "x1") is None
    h = lift_endofunctor(kron_twisted, "x0", "x0")
    assert h is not None
    assert functor_equal(h, identity_functor(kron_twisted.source))


def test_exhaustive_search_agrees_on_twisted_kronecker(kron_twisted):
    assert exhaustive_lifts(kron_twisted, "x0", "x1") == []
    found = exhaustive_lifts(kron_twisted, "x0", "x0")
    assert len(found) == 1
    object_map, _ = found[0]
    assert all(object_map[x] == x for x in kron_twisted.source.objects)


def test_exhaustive_search_agrees_on_double_cover(f1):
    for target in ("t0", "t1"):
        found = exhaustive_lifts(f1, "t0", target)
        assert len(found) == 1
        lift = lift_endofunctor(f1, "t0", target)
        assert found[0][0] == lift.object_map


def test_lift_precondition_errors(f1):
    with pytest.raises(ConstructionError):
        lift_endofunctor(f1, "t0", "u0")  # different fibres
    _, projection = product_with_set(triangle_base(), ["0", "1"])
    with pytest.raises(NotConnectedError):
        lift_endofunctor(projection, "(t,0)", "(t,1)")


# deck groups -------------------------------------------------------------------


def test_deck_group_orders(f1, f2, kron_twisted):
    assert deck_group(f1).order == 2
    assert deck_group(f2).order == 2
    assert deck_group(kron_twisted).order == 1
    ident = identity_functor(triangle_base())
    assert deck_group(ident).order == 1


def test_deck_group_is_a_group_acting_freely(f1):
    deck = deck_group(f1)
    idx = deck.element_index(identity_functor(f1.source))
    assert idx is not None
    for i, h in enumerate(deck.elements):
        inv = is_isomorphism(h)
        assert deck.element_index(inv) is not None
        for j, g in enumerate(deck.elements):
            assert deck.element_index(compose(h, g)) is not None
        if i != idx:
            for x in f1.source.objects:
                assert deck.act(i, x) != x


def test_galois_stability(f1, f2):
    for fun in (f1, f2):
        for h in deck_group(fun).elements:
            assert functor_equal(compose(fun, h), fun)


def test_transitivity_propagates_to_every_fibre(f1):
    deck = deck_group(f1)
    cert = check_covering(f1)
    for b in f1.target.objects:
        fibre = set(cert.fibres[b])
        for x in fibre:
            assert set(deck.orbit(x)) == fibre


# sections ------------------------------------------------------------------------


def test_section_through_product_sheet():
    base = triangle_base()
    product, projection = product_with_set(base, ["0", "1"])
    section = sections_through(projection, "(t,1)")
    assert section is not None
    s = section.functor
    assert functor_equal(compose(projection, s), identity_functor(base))
    assert s.object_map["t"] == "(t,1)"
    image = sorted(s.object_map.values())
    parts, _ = connected_components(product)
    assert tuple(image) in parts  # the image is exactly one component
    # fullness: the image subcategory has the same hom dimensions as the base
    sub, _ = full_subcategory(product, image)
    assert sub.total_dim() == base.total_dim()


def test_no_section_through_connected_double_cover(f1):
    assert sections_through(f1, "t0") is None


def test_sections_exist_through_every_object_of_the_square(f1):
    fp = fibre_product(f1, f1)
    for obj in fp.category.objects:
        section = sections_through(fp.pr1, obj)
        assert section is not None
        assert section.functor.object_map[fp.pr1.object_map[obj]] == obj
        assert functor_equal(compose(fp.pr1, section.functor),
                             identity_functor(f1.source))
        # section images are full subcategories and exactly one component
        image = tuple(sorted(section.functor.object_map.values()))
        parts, _ = connected_components(fp.category)
        assert image in parts
        sub, _ = full_subcategory(fp.category, image)
        assert sub.total_dim() == f1.source.total_dim()


# triviality ------------------------------------------------------------------------


def test_product_projection_is_trivial():
    base = triangle_base()
    product, projection = product_with_set(base, ["0", "1"])
    result = is_trivial_covering(projection)
    assert result.trivial
    assert len(result.witness.labels) == 2
    iso = result.witness.iso
    assert is_isomorphism(iso) is not None
    assert functor_equal(compose(projection, iso),
                         product_with_set(base, result.witness.labels)[1])


def test_connected_double_cover_is_not_trivial(f1):
    result = is_trivial_covering(f1)
    assert not result.trivial
    assert result.failing_component == tuple(sorted(f1.source.objects))


def test_square_of_galois_cover_is_trivial(f1):
    fp = fibre_product(f1, f1)
    result = is_trivial_covering(fp.pr1)
    assert result.trivial
    assert len(result.witness.labels) == 2


def test_triviality_rejects_disconnected_target():
    base = triangle_base()
    product, _ = product_with_set(base, ["0", "1"])
    with pytest.raises(NotConnectedError):
        is_trivial_covering(identity_functor(product))


# Galois verdicts ----------------------------------------------------------------------


def test_galois_verdicts_for_the_running_examples(f1, f2, kron_twisted):
    v1 = is_galois_both(f1)
    assert v1.status is GaloisStatus.GALOIS and v1.deck.order == 2
    v2 = is_galois_both(f2)
    assert v2.status is GaloisStatus.GALOIS and v2.deck.order == 2
    vk = is_galois_both(kron_twisted)
    assert vk.status is GaloisStatus.NON_GALOIS
    assert vk.deck.order == 1
    assert vk.unreachable == ("x1",)


def test_galois_gating_verdicts():
    base = triangle_base()
    _, projection = product_with_set(base, ["0", "1"])
    assert is_galois(projection, "direct").status is GaloisStatus.NOT_CONNECTED
    _, incl = full_subcategory(base, ("t", "u"))
    verdict = is_galois(incl, "direct")
    assert verdict.status is GaloisStatus.NOT_COVERING
    assert verdict.covering_failure.kind == "not-surjective"


def test_twisted_kronecker_square_has_an_alien_component(kron_twisted):
    fp = fibre_product(kron_twisted, kron_twisted)
    parts, _ = connected_components(fp.category)
    broken = []
    for part in parts:
        sub, incl = full_subcategory(fp.category, part)
        if is_isomorphism(compose(fp.pr1, incl)) is None:
            broken.append(part)
    assert broken, "some component must fail to project isomorphically"


# quotients -------------------------------------------------------------------------


def test_quotient_of_double_cover(f1):
    deck = deck_group(f1)
    quotient, projection = quotient_by_group(f1.source, deck)
    assert validate_category(quotient).ok
    assert quotient.objects == ("s0", "t0", "u0")
    assert quotient.dim("t0", "s0") == 2  # c0*b0 into s0 plus a0 into s1
    assert validate_functor(projection).ok
    cert = check_covering(projection)
    assert isinstance(cert, CoveringCertificate)


def test_quotient_by_trivial_group(f1):
    ident = identity_functor(f1.source)
    group = DeckGroup(f1, (ident,),
                      {(0, x): x for x in f1.source.objects})
    quotient, projection = quotient_by_group(f1.source, group)
    assert is_isomorphism(projection) is not None
    assert quotient.total_dim() == f1.source.total_dim()


def test_quotient_of_product_by_sheet_swap():
    base = triangle_base()
    product, projection = product_with_set(base, ["0", "1"])
    swap_obj = {}
    for x in base.objects:
        swap_obj[f"({x},0)"] = f"({x},1)"
        swap_obj[f"({x},1)"] = f"({x},0)"
    matrices = {}
    for (p, q), basis in product.hom_basis.items():
        matrices[(p, q)] = Matrix.identity(QQ, len(basis))
    swap = LinearFunctor(product, product, swap_obj, matrices)
    assert validate_functor(swap).ok
    group = DeckGroup(projection, (identity_functor(product), swap),
                      {(i, x): (x if i == 0 else swap_obj[x])
                       for i in (0, 1) for x in product.objects})
    quotient, proj = quotient_by_group(product, group)
    assert len(quotient.objects) == 3
    assert quotient.total_dim() == base.total_dim()
    # the quotient is isomorphic to the base itself
    rename = {f"({x},0)": x for x in base.objects}
    iso = LinearFunctor(
        quotient, base,
        {o: rename[o] for o in quotient.objects},
        {pair: Matrix.identity(QQ, len(basis))
         for pair, basis in quotient.hom_basis.items()})
    assert validate_functor(iso).ok
    assert is_isomorphism(iso) is not None


def test_quotient_rejects_non_free_action():
    points = path_category(Quiver(("a", "b", "c"), ()), [], QQ)
    flip = LinearFunctor(points, points, {"a": "a", "b": "c", "c": "b"},
                         {pair: Matrix.identity(QQ, 1)
                          for pair in points.hom_basis})
    group = DeckGroup(identity_functor(points),
                      (identity_functor(points), flip),
                      {(0, x): x for x in points.objects} |
                      {(1, x): flip.object_map[x] for x in points.objects})
    with pytest.raises(ConstructionError):
        quotient_by_group(points, group)


# structure theorem -------------------------------------------------------------------


def test_structure_iso_for_double_cover(f1):
    prime = structure_iso(f1)
    assert is_isomorphism(prime) is not None
    verdict = is_galois(f1, "direct")
    quotient, projection = quotient_by_group(f1.source, verdict.deck)
    assert functor_equal(compose(prime, projection), f1)


def test_structure_iso_for_twisted_cover(f2):
    prime = structure_iso(f2)
    assert is_isomorphism(prime) is not None
    verdict = is_galois(f2, "direct")
    _, projection = quotient_by_group(f2.source, verdict.deck)
    assert functor_equal(compose(prime, projection), f2)


def test_structure_iso_identity_covering():
    ident = identity_functor(triangle_base())
    prime = structure_iso(ident)
    assert is_isomorphism(prime) is not None


def test_structure_iso_rejects_non_galois(kron_twisted):
    with pytest.raises(ConstructionError):
        structure_iso(kron_twisted)


def test_structure_iso_is_deterministic(f1):
    a = structure_iso(f1)
    b = structure_iso(f1)
    assert functor_equal(a, b)


# universality -------------------------------------------------------------------------


def test_universal_against_itself_passes(f1):
    report = check_universal_against(f1, [f1])
    assert report.universal_relative_to_family
    assert report.checks[0].passed


def test_universal_against_twisted_fails(f1, f2):
    report = check_universal_against(f1, [f2])
    assert not report.universal_relative_to_family
    check = report.checks[0]
    assert not check.passed
    assert check.covering_failure is not None
    assert check.covering_failure.kind == "block-dimension"


def test_identity_cover_is_not_universal(f1):
    ident = identity_functor(f1.target)
    report = check_universal_against(ident, [f1])
    assert not report.universal_relative_to_family
    assert report.checks[0].reason == "projection covering is not trivial"


def test_universality_rejects_non_galois_family(f1, kron_twisted):
    with pytest.raises(ConstructionError):
        check_universal_against(f1, [kron_twisted])

"""Fibre products: construction, projections, pullbacks, universal property."""

import pytest

from covcat.errors import ConstructionError, NotCoveringError
from covcat.exactalg import Matrix, echelon_pivots, express_in_echelon
from covcat.lincat import full_subcategory, validate_category
from covcat.linfun import LinearFunctor, compose, functor_equal, \
    identity_functor, is_isomorphism, validate_functor
from covcat.covering import CoveringCertificate, check_covering
from covcat.fibprod import fibre_product, fullyfaithful_pullback, \
    is_fully_faithful
from covcat.examples import triangle_base, triangle_cover

from oracles import solve_mediating


def test_square_of_plain_cover(f1):
    fp = fibre_product(f1, f1)
    assert len(fp.category.objects) == 12
    assert validate_category(fp.category).ok
    for i in (0, 1):
        for j in (0, 1):
            src = f"(t{i},t{j})"
            dst = f"(s{(i + 1) % 2},s{(j + 1) % 2})"
            assert fp.category.dim(src, dst) == 1


def test_mixed_square_has_zero_diagonal_homs(f1, f2):
    fp = fibre_product(f1, f2)
    assert len(fp.category.objects) == 12
    for i in (0, 1):
        for j in (0, 1):
            src = f"(t{i},t{j})"
            dst = f"(s{(i + 1) % 2},s{(j + 1) % 2})"
            assert fp.category.dim(src, dst) == 0


def test_commuting_square_exact(f1, f2):
    for f, g in ((f1, f1), (f1, f2)):
        fp = fibre_product(f, g)
        assert functor_equal(compose(f, fp.pr1), compose(g, fp.pr2))
        assert validate_functor(fp.pr1).ok
        assert validate_functor(fp.pr2).ok


def test_pullback_along_identity_is_isomorphic_to_source(f1):
    fp = fibre_product(f1, identity_functor(f1.target))
    assert is_isomorphism(fp.pr1) is not None
    assert len(fp.category.objects) == len(f1.source.objects)


def test_fibre_product_rejects_mismatched_base(f1):
    other = identity_functor(f1.source)
    with pytest.raises(ConstructionError):
        fibre_product(f1, other)


def test_is_fully_faithful():
    base = triangle_base()
    _, incl = full_subcategory(base, ("t", "u"))
    assert is_fully_faithful(incl)
    assert is_fully_faithful(identity_functor(base))
    f1 = triangle_cover(2)
    assert not is_fully_faithful(f1)  # dim hom(t0, s1) = 1 < dim hom(t, s) = 2


def test_pullback_along_subcategory_inclusion(f1):
    _, incl = full_subcategory(f1.target, ("t", "u"))
    fp, cert = fullyfaithful_pullback(f1, incl)
    assert isinstance(cert, CoveringCertificate)
    for d in incl.source.objects:
        assert len(cert.fibres[d]) == 2


def test_pullback_along_identity_matches_original(f1):
    fp, cert = fullyfaithful_pullback(f1, identity_functor(f1.target))
    original = check_covering(f1)
    for b in f1.target.objects:
        assert len(cert.fibres[b]) == len(original.fibres[b])
    assert len(cert.blocks) == len(original.blocks)


def test_pullback_of_twisted_cover(f2):
    _, incl = full_subcategory(f2.target, ("s", "u"))
    fp, cert = fullyfaithful_pullback(f2, incl)
    for d in incl.source.objects:
        assert len(cert.fibres[d]) == 2


def test_pullback_rejects_bad_inputs(f1):
    base = triangle_base()
    _, incl = full_subcategory(base, ("t", "u"))
    with pytest.raises(NotCoveringError):
        fullyfaithful_pullback(incl, incl)  # inclusion is not a covering
    with pytest.raises(ConstructionError):
        fullyfaithful_pullback(f1, f1)  # a cover is not fully faithful


def _swap_functor(fp_fg, fp_gf):
    """The canonical isomorphism C×_B D → D×_B C, built coordinate-wise."""
    cat, swapped = fp_fg.category, fp_gf.category
    field = cat.field

    def swap_name(name):
        inner = name[1:-1]
        x, y = inner.split(",", 1)
        return f"({y},{x})"

    object_map = {o: swap_name(o) for o in cat.objects}
    matrices = {}
    for (p, p2), basis in cat.hom_basis.items():
        sp, sp2 = swap_name(p), swap_name(p2)
        # kernel rows of the swapped hom, recovered through the pr matrices
        m1 = fp_gf.pr1.hom_matrices.get((sp, sp2))
        m2 = fp_gf.pr2.hom_matrices.get((sp, sp2))
        dim = swapped.dim(sp, sp2)
        target_rows = []
        for k in range(dim):
            unit = tuple(field.one if i == k else field.zero for i in range(dim))
            first = m1.apply(unit) if m1 is not None else ()
            second = m2.apply(unit) if m2 is not None else ()
            target_rows.append(tuple(first) + tuple(second))
        pivots = echelon_pivots(target_rows, field)
        cols = []
        for name in basis:
            vec = cat.basis_vector(name)
            a1 = fp_fg.pr1.hom_matrices[(p, p2)].apply(vec)
            a2 = fp_fg.pr2.hom_matrices[(p, p2)].apply(vec)
            swapped_concat = tuple(a2) + tuple(a1)
            cols.append(express_in_echelon(target_rows, pivots,
                                           swapped_concat, field))
        matrices[(p, p2)] = Matrix.from_columns(field, cols, dim)
    return LinearFunctor(cat, swapped, object_map, matrices)


def test_swap_symmetry(f1, f2):
    fp_fg = fibre_product(f1, f2)
    fp_gf = fibre_product(f2, f1)
    swap = _swap_functor(fp_fg, fp_gf)
    assert validate_functor(swap).ok
    assert is_isomorphism(swap) is not None
    assert functor_equal(compose(fp_gf.pr2, swap), fp_fg.pr1)
    assert functor_equal(compose(fp_gf.pr1, swap), fp_fg.pr2)


def test_corpus_squares_commute_and_cover(galois_corpus):
    """Every self fibre product has an exactly commuting square, and the
    first projection of a Galois covering's square is itself a covering."""
    from covcat.galois import GaloisStatus, is_galois
    for name, fun in galois_corpus:
        fp = fibre_product(fun, fun)
        assert functor_equal(compose(fun, fp.pr1), compose(fun, fp.pr2)), name
        if is_galois(fun, "direct").status is GaloisStatus.GALOIS:
            assert isinstance(check_covering(fp.pr1), CoveringCertificate), name


def test_mediating_functor_for_deck_graph(f1):
    """Cones (id, h) over the square of a Galois cover have unique mediators."""
    from covcat.galois import deck_group
    fp = fibre_product(f1, f1)
    deck = deck_group(f1)
    assert deck.order == 2
    for h in deck.elements:
        solutions = solve_mediating(fp, identity_functor(f1.source), h)
        assert len(solutions) == 1
        m = solutions[0]
        assert functor_equal(compose(fp.pr1, m), identity_functor(f1.source))
        assert functor_equal(compose(fp.pr2, m), h)

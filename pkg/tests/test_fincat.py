import pytest

from simpcat import fixtures
from simpcat.fincat import (
    FinCategory,
    Functor,
    InputError,
    NatTransformation,
    all_functors,
    check_closure_properties,
    free_category,
    groupoid_core,
    product_category,
    validate_category,
)


ALL_FIXTURES = sorted(fixtures.category_family())


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_fixture_categories_are_valid(name):
    cat = fixtures.category_family()[name]
    assert validate_category(cat) == []


def test_ordinal2_shape():
    cat = fixtures.ordinal(2)
    assert len(cat.objects) == 3
    assert len(cat.morphisms) == 6


def test_validate_reports_broken_associativity():
    cat = fixtures.ordinal(2)
    bad = dict(cat.compose_map)
    # redirect the only non-trivial composite to an identity
    bad[("a12", "a01")] = "a00"
    broken = FinCategory(cat.objects, cat.morphisms, bad, cat.identities)
    report = validate_category(broken)
    assert any("wrong endpoints" in line or "associativity" in line for line in report)


def test_validate_reports_missing_composites():
    # free category on a 2-cycle truncated at word length 3 is not closed
    cat, complete = free_category(fixtures.two_cycle_graph(), 3)
    assert not complete
    report = validate_category(cat)
    assert any("composition not total" in line for line in report)


def test_groupoid_core_of_groupoid_is_itself():
    for name in fixtures.groupoid_names():
        g = fixtures.category_family()[name]
        assert groupoid_core(g).same_presentation(g)


def test_groupoid_core_of_walking_arrow_is_discrete():
    core = groupoid_core(fixtures.walking_arrow())
    assert set(core.morphisms) == set(core.identities.values())
    assert len(core.objects) == 2


def test_groupoid_core_keeps_exactly_the_inverse_pair():
    # derived by enumerating two-sided inverses by hand: only u, v qualify
    cat = fixtures.iso_with_idempotent()
    core = groupoid_core(cat)
    assert set(core.morphisms) == {"id_a", "id_b", "u", "v"}


def test_groupoid_core_is_idempotent():
    for name in ALL_FIXTURES:
        cat = fixtures.category_family()[name]
        once = groupoid_core(cat)
        twice = groupoid_core(once)
        assert twice.same_presentation(once)


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_isomorphisms_satisfy_every_closure_property(name):
    cat = fixtures.category_family()[name]
    isos = fixtures.weq(cat, [m for m in cat.morphisms if cat.is_iso(m)])
    report = check_closure_properties(cat, isos)
    assert report.two_of_three
    assert report.two_of_six
    assert report.retract_closed
    assert report.wide
    assert report.contains_isos


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_all_morphisms_satisfy_every_closure_property(name):
    cat = fixtures.category_family()[name]
    report = check_closure_properties(cat, fixtures.weq_all(cat))
    assert all((report.two_of_three, report.two_of_six, report.retract_closed,
                report.wide, report.contains_isos))


def test_identities_only_class_in_walking_arrow():
    cat = fixtures.walking_arrow()
    report = check_closure_properties(cat, fixtures.weq(cat))
    assert report.wide
    assert report.two_of_three
    assert report.contains_isos  # no non-identity isos exist


def test_cospan_leg_without_identities_is_not_wide():
    cat = fixtures.commutative_square()
    report = check_closure_properties(cat, {"01<=11"})
    assert not report.wide


def test_single_cospan_leg_fails_two_of_three_with_witness():
    cat = fixtures.commutative_square()
    # one leg of the cospan into 11, namely 01 <= 11, taken without identities
    w = {"01<=11"}
    report = check_closure_properties(cat, w)
    assert not report.two_of_three
    g, f, gf = report.witnesses["two_of_three"]
    marked = sum(1 for m in (g, f, gf) if m in w)
    assert marked == 2


def test_weak_equivalence_class_always_contains_identities():
    cat = fixtures.span()
    w = fixtures.weq(cat, ["s"])
    assert "id_a" in w and "id_b" in w and "id_c" in w


def test_free_category_on_ordinal1_graph():
    cat, complete = free_category(fixtures.ordinal_graph(1), 2)
    assert complete
    assert validate_category(cat) == []
    assert len(cat.objects) == 2
    assert len(cat.morphisms) == 3


def test_free_category_one_endo_generator_is_incomplete():
    g = fixtures.one_loop_graph()
    cat, complete = free_category(g, 3)
    assert not complete
    assert sorted(cat.morphisms) == ["e", "e.e", "e.e.e", "id_x"]
    with pytest.raises(InputError):
        free_category(g, 3, require_complete=True)


def test_free_category_on_ordinal2_graph_word_count():
    # hand count at bound 2: three loops-as-identities, e0, e1, e0.e1
    cat, complete = free_category(fixtures.ordinal_graph(2), 2)
    assert complete
    assert len(cat.morphisms) == 6
    assert "e0.e1" in cat.morphisms
    assert validate_category(cat) == []


def test_functor_composition_is_associative_and_unital():
    c = fixtures.ordinal(1)
    d = fixtures.ordinal(2)
    fs = all_functors(c, d)
    assert fs, "there are functors [1] -> [2]"
    ident_c = Functor.identity(c)
    ident_d = Functor.identity(d)
    for f in fs:
        left = ident_c.then(f)
        right = f.then(ident_d)
        assert left.object_map == f.object_map and left.morphism_map == f.morphism_map
        assert right.object_map == f.object_map and right.morphism_map == f.morphism_map
    gs = all_functors(d, fixtures.ordinal(1))
    hs = all_functors(fixtures.ordinal(1), fixtures.commutative_square())
    for f in fs[:3]:
        for g in gs[:3]:
            for h in hs[:3]:
                one = f.then(g).then(h)
                two = f.then(g.then(h))
                assert one.object_map == two.object_map
                assert one.morphism_map == two.morphism_map


def test_all_functors_counts_on_posets():
    # functors [1] -> [1] are exactly the monotone maps 2^2 minus the
    # non-monotone one: 3
    fs = all_functors(fixtures.ordinal(1), fixtures.ordinal(1))
    assert len(fs) == 3


def test_natural_transformation_validation():
    c = fixtures.walking_arrow()
    d = fixtures.ordinal(2)
    src = Functor(c, d, {"0": "0", "1": "1"},
                  {"a00": "a00", "a11": "a11", "a01": "a01"})
    tgt = Functor(c, d, {"0": "1", "1": "2"},
                  {"a00": "a11", "a11": "a22", "a01": "a12"})
    assert src.validate() == []
    assert tgt.validate() == []
    alpha = NatTransformation(src, tgt, {"0": "a01", "1": "a12"})
    assert alpha.validate() == []
    beta = NatTransformation(src, tgt, {"0": "a01", "1": "a22"})
    assert beta.validate() != []


def test_product_category_is_valid():
    p = product_category(fixtures.ordinal(1), fixtures.ordinal(1))
    assert validate_category(p) == []
    assert len(p.objects) == 4
    assert p.same_presentation(p)

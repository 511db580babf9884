import pytest

from factopo.catfib import (all_slices_cover, cat_universe, comma,
                            comprehensive_factorize, connected_components,
                            identity_functor, is_discrete_left_fibration,
                            is_discrete_right_fibration, is_final, is_initial,
                            raw_local_status, right_cover_check, slice_factorize)
from factopo.errors import InvalidFamily
from factopo.fincat import (Functor, all_functors, arrow_fingerprint,
                            fincat_isomorphic, is_orthogonal, poset_category,
                            terminal_category)


def chain(n):
    return poset_category(list(range(n + 1)),
                          [(i, j) for i in range(n + 1) for j in range(i, n + 1)],
                          name="[%d]" % n)


def pick(C, c):
    T = terminal_category()
    return Functor(T, C, {0: c}, {("le", 0, 0): C.identities[c]},
                   name="pick%s" % c)


def test_comma_of_identity_is_the_slice():
    C = chain(1)
    K = comma(identity_functor(C), 1, "F/d")
    assert len(K.category.objects) == 2
    assert fincat_isomorphic(K.category, C) is not None


def test_comma_point_functor():
    C = chain(1)
    K = comma(pick(C, 1), 0, "d/F")
    # objects are arrows 0 -> 1, of which there is one
    assert len(K.category.objects) == 1


def test_connected_components():
    C = poset_category([0, 1, 2], [(0, 0), (1, 1), (2, 2), (0, 1)], name="pair")
    comps = connected_components(C)
    assert len(comps) == 2


def test_finality_table():
    C = chain(1)
    assert is_final(pick(C, 1)) and not is_initial(pick(C, 1))
    assert is_initial(pick(C, 0)) and not is_final(pick(C, 0))
    assert is_final(identity_functor(C)) and is_initial(identity_functor(C))


def test_fibration_classes():
    C = chain(1)
    _first, K, proj = slice_factorize(C, 1, "right")
    assert is_discrete_right_fibration(proj)
    assert not is_discrete_right_fibration(
        Functor(C, terminal_category(), {0: 0, 1: 0},
                {m: ("le", 0, 0) for m in C.morphisms}))
    _first, K2, proj2 = slice_factorize(C, 0, "left")
    assert is_discrete_left_fibration(proj2)


def test_slice_factorize_composes_to_the_point(cats):
    for C in cats:
        for c in C.objects:
            first, K, proj = slice_factorize(C, c, "right")
            composite = first.then(proj)
            assert composite.obj_map == {0: c}
            firstL, KL, projL = slice_factorize(C, c, "left")
            assert firstL.then(projL).obj_map == {0: c}


def test_comprehensive_on_point_functor_gives_the_slice():
    C = chain(1)
    first, elem, proj = comprehensive_factorize(pick(C, 1), "right")
    assert is_final(first)
    assert is_discrete_right_fibration(proj)
    slice_cat = slice_factorize(C, 1, "right")[1].category
    assert fincat_isomorphic(elem.category, slice_cat) is not None


def test_comprehensive_identity_case():
    C = chain(1)
    first, elem, proj = comprehensive_factorize(identity_functor(C), "right")
    assert len(elem.category.objects) == len(C.objects)
    assert first.then(proj).obj_map == identity_functor(C).obj_map


def test_comprehensive_left_side():
    C = chain(1)
    first, elem, proj = comprehensive_factorize(pick(C, 0), "left")
    assert is_initial(first)
    assert is_discrete_left_fibration(proj)


def test_comprehensive_collapse_functor():
    C = chain(1)
    T = terminal_category()
    collapse = Functor(C, T, {0: 0, 1: 0}, {m: ("le", 0, 0) for m in C.morphisms})
    first, elem, proj = comprehensive_factorize(collapse, "right")
    assert len(elem.category.objects) == 1
    assert is_final(first)


def test_all_slices_cover_and_empty_family():
    C = chain(1)
    assert right_cover_check(C, all_slices_cover(C)).covers
    res = right_cover_check(C, [])
    assert not res.covers
    proj1 = slice_factorize(C, 1, "right")[2]
    assert right_cover_check(C, [proj1]).covers  # C/1 is already everything
    with pytest.raises(InvalidFamily):
        right_cover_check(C, [Functor(C, C, {0: 0, 1: 0},
                                      {m: ("le", 0, 0) for m in C.morphisms})])


def test_raw_local_status():
    assert raw_local_status(chain(1)) == "local"
    span = poset_category([0, 1, 2],
                          [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2)], name="span")
    assert raw_local_status(span) == "unknown"


def test_functor_orthogonality_detects_finality():
    C = chain(1)
    T = terminal_category()
    proj0 = slice_factorize(C, 0, "right")[2]
    proj1 = slice_factorize(C, 1, "right")[2]
    uni = cat_universe([T, C, proj0.source, proj1.source])

    def mid(F):
        want = arrow_fingerprint(F)
        hits = [m for m, a in uni.payload.items()
                if uni.morphisms[m] == (F.source.name, F.target.name)
                and arrow_fingerprint(a) == want]
        assert len(hits) == 1
        return hits[0]

    table = {(u, p): is_orthogonal(mid(F), mid(P), uni)
             for u, F in (("pick0", pick(C, 0)), ("pick1", pick(C, 1)))
             for p, P in (("proj0", proj0), ("proj1", proj1))}
    # the non-final point fails exactly against the slice it misses
    assert table == {("pick0", "proj0"): False, ("pick0", "proj1"): True,
                     ("pick1", "proj0"): True, ("pick1", "proj1"): True}


def test_comprehensive_over_catalogue_sample(cats):
    small = [C for C in cats if len(C.morphisms) <= 6]
    done = 0
    for C in small:
        for D in small:
            for F in all_functors(C, D)[:2]:
                first, elem, proj = comprehensive_factorize(F, "right")
                assert is_final(first) and is_discrete_right_fibration(proj)
                composite = first.then(proj)
                assert composite.obj_map == F.obj_map
                assert composite.mor_map == F.mor_map
                done += 1
    assert done >= 10

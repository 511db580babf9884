import random

import pytest

from factopo.errors import (IdentityViolation, InvalidSpec, NotSimplicial,
                            TruncationTooLow)
from factopo.sset import (FinSSet, SimplicialMap, all_simplicial_maps, boundary,
                          build_sset, classifying_map, compose_ops,
                          deg_ndeg_factorize, delta, delta_nis_self_lift_decider,
                          disjoint_union, epi_mono_split, finest_cell_cover, horn,
                          identity_op, identity_smap, injective_ops,
                          is_nondegenerate_map, is_standard_simplex,
                          monotone_ops, spec_delta_nis, spec_raw, sset_cover_check,
                          sset_isomorphic, subcomplex_of_delta, surjective_ops)


# -- operator algebra ------------------------------------------------------

def test_operator_counts():
    # |Hom_Delta([k],[n])| = C(n+k+1, k+1)
    assert len(monotone_ops(1, 1)) == 3
    assert len(monotone_ops(2, 1)) == 4
    assert len(monotone_ops(1, 2)) == 6
    assert len(surjective_ops(2, 1)) == 2
    assert len(injective_ops(1, 2)) == 3
    assert injective_ops(2, 1) == []


def test_epi_mono_split():
    delta_vals, tau = epi_mono_split((1, 1, 3))
    # values factor as a surjection onto {0,1} then the inclusion {1,3}
    assert tau == (0, 0, 1)
    assert delta_vals == (1, 3)
    assert compose_ops(delta_vals, tau) == (1, 1, 3)


def test_compose_ops():
    assert compose_ops((0, 2), (1, 0, 1)) == (2, 0, 2)
    assert compose_ops(identity_op(2), (0, 1, 1)) == (0, 1, 1)


# -- standard complexes ----------------------------------------------------

def test_delta2_simplex_counts():
    X = delta(2, dim=3)
    assert [len(X.simplices(n)) for n in range(4)] == [3, 6, 10, 15]


def test_delta0_is_a_point_in_every_dimension():
    X = delta(0, dim=4)
    assert all(len(X.simplices(n)) == 1 for n in range(5))


def test_boundary2_counts():
    X = boundary(2)
    assert {n: len(X.labels.get(n, [])) for n in (0, 1, 2)} == {0: 3, 1: 3, 2: 0}
    assert [len(X.simplices(n)) for n in range(3)] == [3, 6, 9]


def test_horn_counts():
    X = horn(2, 1)
    assert len(X.labels[0]) == 3 and len(X.labels[1]) == 2


def test_truncation_guard():
    with pytest.raises(TruncationTooLow):
        FinSSet(1, {0: ["v"], 1: ["e"]},
                {(1, 0, 0): (identity_op(0), (0, 0)),
                 (1, 0, 1): (identity_op(0), (0, 0))})
    with pytest.raises(TruncationTooLow):
        build_sset({"dim": 1, "nondegenerate": {
            "0": ["v"],
            "1": [{"name": "e", "faces": [[[0], "v"], [[0], "v"]]}]}})


def test_identity_violation_on_bad_faces():
    # a triangle whose faces disagree on a shared vertex
    spec = {"dim": 3, "nondegenerate": {
        "0": ["a", "b", "c", "d"],
        "1": [{"name": "e0", "faces": [[[0], "b"], [[0], "a"]]},
              {"name": "e1", "faces": [[[0], "c"], [[0], "a"]]},
              {"name": "e2", "faces": [[[0], "d"], [[0], "b"]]}],
        "2": [{"name": "t", "faces": [[[0, 1], "e2"], [[0, 1], "e1"],
                                      [[0, 1], "e0"]]}]}}
    with pytest.raises(IdentityViolation):
        build_sset(spec)


# -- actions and the canonical pair ----------------------------------------

def test_degeneracy_values():
    X = delta(2, dim=3)
    e01 = X.cell_simplex((1, 0))
    assert X.degeneracy(e01, 0) == ((0, 0, 1), (1, 0))
    v0 = X.cell_simplex((0, 0))
    assert X.degeneracy(X.degeneracy(v0, 0), 1) == ((0, 0, 0), (0, 0))


def test_canonical_pair_is_the_only_presentation():
    X = delta(2, dim=3)
    for n in range(X.dim + 1):
        for x in X.simplices(n):
            dec = X.eilenberg_zilber(x, audit=True)
            assert (dec.surjection, dec.nondeg) == x


def test_action_functoriality_randomized():
    rng = random.Random(5)
    X = boundary(3)
    for _ in range(200):
        n = rng.randrange(X.dim + 1)
        xs = X.simplices(n)
        x = xs[rng.randrange(len(xs))]
        k = rng.randrange(3)
        ops = monotone_ops(k, n)
        alpha = ops[rng.randrange(len(ops))]
        kk = rng.randrange(3)
        ops2 = monotone_ops(kk, k)
        beta = ops2[rng.randrange(len(ops2))]
        assert X.act(X.act(x, alpha), beta) == X.act(x, compose_ops(alpha, beta))


# -- maps ------------------------------------------------------------------

def test_inclusion_is_nondegenerate():
    X, Y = boundary(2), delta(2)
    inc = SimplicialMap(X, Y, {
        (0, i): (identity_op(0), (0, i)) for i in range(3)} | {
        (1, i): (identity_op(1), (1, i)) for i in range(3)})
    assert is_nondegenerate_map(inc)
    assert not is_nondegenerate_map(
        SimplicialMap(delta(1), delta(0), {
            (0, 0): (identity_op(0), (0, 0)),
            (0, 1): (identity_op(0), (0, 0)),
            (1, 0): ((0, 0), (0, 0))}))


def test_map_validation_rejects_broken_faces():
    with pytest.raises(NotSimplicial):
        SimplicialMap(delta(1), delta(1), {
            (0, 0): (identity_op(0), (0, 0)),
            (0, 1): (identity_op(0), (0, 0)),
            (1, 0): (identity_op(1), (1, 0))})


def test_classifying_map_hits_its_simplex():
    X = boundary(2)
    e = X.cell_simplex((1, 2))
    g = classifying_map(X, e)
    top = g.source.cell_simplex((1, 0))
    assert g.apply(top) == e


def test_all_simplicial_maps_counts():
    # maps Delta[1] -> Delta[1] = monotone maps [1] -> [1]
    assert len(all_simplicial_maps(delta(1), delta(1))) == 3
    assert len(all_simplicial_maps(delta(0), boundary(2))) == 3


def test_sset_isomorphic():
    X = subcomplex_of_delta(2, [(0, 1), (1, 2)])
    Y = subcomplex_of_delta(3, [(1, 2), (2, 3)])
    assert sset_isomorphic(X, Y) is not None
    # two edges out of one vertex: same counts, different face structure
    Z = subcomplex_of_delta(2, [(0, 1), (0, 2)])
    assert sset_isomorphic(X, Z) is None
    assert sset_isomorphic(X, boundary(2)) is None


def test_disjoint_union_counts():
    X = disjoint_union(delta(0, dim=2), delta(0, dim=2))
    assert len(X.simplices(0)) == 2


# -- degeneracy collapse factorization -------------------------------------

def collapse_map():
    d1, d2 = delta(1), delta(2)
    return SimplicialMap(d2, d1, {
        (0, 0): (identity_op(0), (0, 0)),
        (0, 1): (identity_op(0), (0, 1)),
        (0, 2): (identity_op(0), (0, 1)),
        (1, 0): (identity_op(1), (1, 0)),
        (1, 1): (identity_op(1), (1, 0)),
        (1, 2): ((0, 0), (0, 1)),
        (2, 0): ((0, 1, 1), (1, 0)),
    })


def test_collapse_factorization_middle():
    fac = deg_ndeg_factorize(collapse_map())
    assert sset_isomorphic(fac.middle, delta(1)) is not None
    assert is_nondegenerate_map(fac.right)
    # composite agrees cell by cell
    f = collapse_map()
    for ref in f.source.cells():
        x = f.source.cell_simplex(ref)
        assert fac.right.apply(fac.left.apply(x)) == f.apply(x)


@pytest.mark.parametrize("seed", [None, 0, 1, 7])
def test_collapse_is_order_independent(seed):
    rng = random.Random(seed) if seed is not None else None
    fac = deg_ndeg_factorize(collapse_map(), rng=rng)
    assert {n: len(fac.middle.labels.get(n, [])) for n in (0, 1)} == {0: 2, 1: 1}


def test_factorization_of_identity_is_trivial():
    f = identity_smap(boundary(2))
    fac = deg_ndeg_factorize(f)
    assert sset_isomorphic(fac.middle, boundary(2)) is not None


def test_collapse_to_point():
    X = delta(1)
    f = SimplicialMap(X, delta(0, dim=2), {
        (0, 0): (identity_op(0), (0, 0)),
        (0, 1): (identity_op(0), (0, 0)),
        (1, 0): ((0, 0), (0, 0))})
    fac = deg_ndeg_factorize(f)
    assert len(fac.middle.labels[0]) == 1
    assert 1 not in fac.middle.labels or not fac.middle.labels[1]


# -- covers and local objects ----------------------------------------------

def vertex_family(X):
    fams = []
    for i, _lbl in enumerate(X.labels.get(0, [])):
        p = delta(0, dim=X.dim)
        fams.append(SimplicialMap(p, X, {(0, 0): (identity_op(0), (0, i))}))
    return fams


def test_vertex_family_covers_raw_not_delta_nis():
    X = delta(2)
    fam = vertex_family(X)
    assert sset_cover_check(X, fam, "raw").covers
    res = sset_cover_check(X, fam, "delta-nis")
    assert not res.covers
    assert res.certificate == {"unlifted_simplex": [1, [0, 1], "01"]}


def test_finest_cover_lifts_everything():
    X = boundary(2)
    fam = finest_cell_cover(X)
    assert sset_cover_check(X, fam, "delta-nis").covers


def test_degenerate_image_family_rejected():
    X = delta(1)
    bent = SimplicialMap(delta(1, dim=2), X, {
        (0, 0): (identity_op(0), (0, 0)),
        (0, 1): (identity_op(0), (0, 0)),
        (1, 0): ((0, 0), (0, 0))})
    with pytest.raises(Exception):
        sset_cover_check(X, [bent], "raw")


def test_self_lift_matches_standard_simplex(corpus):
    for X in corpus:
        assert delta_nis_self_lift_decider(X) == is_standard_simplex(X), X.name


# -- spectra ---------------------------------------------------------------

def test_spec_delta_nis_sizes():
    assert [spec_delta_nis(delta(n)).size for n in range(4)] == [1, 3, 7, 15]


def test_spec_delta_nis_of_boundary():
    sp = spec_delta_nis(boundary(2))
    assert sp.size == 6
    strict = [(i, j) for i, j in sp.poset.order_pairs() if i != j]
    # each vertex sits under its two edges, nothing above the edges
    assert len(strict) == 6
    assert sp.as_json()["base"] == "boundary2"


def test_spec_raw_is_an_antichain_on_vertices():
    sp = spec_raw(boundary(2))
    assert sp.size == 3
    assert all(i == j for i, j in sp.poset.order_pairs())


def test_spec_dot_is_hasse_only():
    dot = spec_delta_nis(delta(2)).to_dot()
    # 7 nodes, 9 covering edges, no vertex-to-triangle shortcuts
    assert dot.count("[label=") == 7
    assert dot.count(" -> ") == 9

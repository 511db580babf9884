from factopo.finring import gf, prime_ideals, product_ring, ring_isomorphic, zmod
from factopo.ringspec import (canonical_tables, check_duality, dom_lattice,
                              recognize_ring, spec_points, stalk, zar_lattice)

z12 = zmod(12)


def prime_at(A, elt_name):
    hits = [p for p in prime_ideals(A)
            if A.element_by_name(elt_name) in p.elements]
    assert len(hits) == 1
    return hits[0]


def test_canonical_tables_are_stable():
    a = canonical_tables(zmod(6))
    b = canonical_tables(product_ring([zmod(2), zmod(3)]))
    assert a == b
    assert canonical_tables(zmod(4)) != canonical_tables(product_ring([zmod(2), zmod(2)]))


def test_recognize_ring_names():
    assert recognize_ring(zmod(9)) == "Z/9"
    assert recognize_ring(gf(2, 2)) == "F_4"
    assert recognize_ring(product_ring([zmod(2), zmod(3)])) == "Z/6"


def test_zar_lattice_z12():
    lat = zar_lattice(z12)
    assert [e.label for e in lat.elements] == \
        ["invert(0)", "invert(1)", "invert(4)", "invert(9)"]
    # bottom is the zero ring, top the ring itself
    sizes = sorted(e.ring.size for e in lat.elements)
    assert sizes == [1, 3, 4, 12]


def test_dom_lattice_z12():
    lat = dom_lattice(z12)
    assert len(lat.elements) == 4
    sizes = sorted(e.ring.size for e in lat.elements)
    assert sizes == [1, 2, 3, 6]


def test_duality_z12():
    pairing = check_duality(z12)
    assert pairing


def test_duality_catalogue(rings):
    for A in rings:
        assert check_duality(A), A.name


def test_stalks_of_z12_at_two():
    p = prime_at(z12, "2")
    ring_zar, hom_zar = stalk(z12, p, "zar")
    assert ring_isomorphic(ring_zar, zmod(4)) is not None
    assert hom_zar.source is z12
    ring_dom, _hom = stalk(z12, p, "dom")
    assert ring_isomorphic(ring_dom, zmod(2)) is not None


def test_stalk_classes(rings):
    # zar stalks are local, dom stalks are domains
    from factopo.ringsys import classify_ring
    for A in rings:
        for p in prime_ideals(A):
            assert classify_ring(stalk(A, p, "zar")[0]).is_local
            assert classify_ring(stalk(A, p, "dom")[0]).is_domain


def test_spec_points_poset_is_discrete():
    sp = spec_points(z12, "zar")
    assert sp.size == 2
    data = sp.as_json()
    assert data["base"] == "Z/12"
    assert all(i == j for i, j in data["order"])


def test_spec_points_fin_topology():
    sp = spec_points(z12, "fin")
    assert sp.size == 2
    assert sorted(e["stalk_size"] for e in sp.as_json()["elements"]) == [2, 3]

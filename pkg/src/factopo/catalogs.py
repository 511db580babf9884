"""Fixed test-scale catalogues: rings, categories, simplicial objects.

The ring list is closed under quotients and under the localizations that
factorizations route through, which is what lets a whole hom collection
be verified inside one universe.
"""

from .fincat import (FinCat, Functor, chain_category, delta_fragment,
                     monoid_category, poset_category, terminal_category)
from .finring import FinRing, gf, product_ring, zmod
from .sset import (FinSSet, boundary, build_sset, delta, disjoint_union, horn,
                   subcomplex_of_delta)
from .toposx import (FinGSet, FqVecSpace, cyclic_group, disjoint_union_gset,
                     regular_gset, symmetric_3, trivial_gset)


def ring_catalogue():
    """Fourteen rings of order at most sixteen, quotient-closed."""
    return [
        zmod(1), zmod(2), zmod(3), zmod(4), gf(2, 2), zmod(5), zmod(6),
        zmod(8), zmod(9), zmod(12), gf(2, 3), gf(3, 2),
        product_ring([zmod(2), zmod(2)]), product_ring([zmod(2), zmod(4)]),
    ]


def ring_catalogue_by_name():
    return {R.name: R for R in ring_catalogue()}


def fat_field_catalogue(bound=16):
    """Catalogue members where every element is nilpotent or invertible."""
    out = []
    for R in ring_catalogue():
        if R.is_zero_ring() or R.size > bound:
            continue
        units = set(R.units())
        nilp = set(R.nilpotents())
        if all(x in units or x in nilp for x in R.elements()):
            out.append(R)
    return out


def _ei_two_object_category():
    # two objects, a Z/2 of automorphisms on the first, two maps across
    objects = ["a", "b"]
    morphisms = {
        "ida": ("a", "a"), "t": ("a", "a"),
        "f": ("a", "b"), "g": ("a", "b"), "idb": ("b", "b"),
    }
    identities = {"a": "ida", "b": "idb"}
    compose = {}
    for m, (s, t) in morphisms.items():
        compose[(m, identities[s])] = m
        compose[(identities[t], m)] = m
    compose[("t", "t")] = "ida"
    compose[("f", "t")] = "g"
    compose[("g", "t")] = "f"
    return FinCat(objects, morphisms, identities, compose, name="EI2")


def category_catalogue():
    """Eight finite categories with at most six objects."""
    span = poset_category(["a", "b", "c"], [("c", "a"), ("c", "b")],
                          name="span")
    cospan = poset_category(["a", "b", "c"], [("a", "c"), ("b", "c")],
                            name="cospan")
    square = poset_category(
        ["00", "01", "10", "11"],
        [("00", "01"), ("00", "10"), ("01", "11"), ("10", "11")],
        name="square")
    z2 = monoid_category([0, 1], [[0, 1], [1, 0]], unit=0, name="BZ2")
    return [terminal_category(), chain_category(1), chain_category(2),
            span, cospan, square, z2, _ei_two_object_category()]


def category_catalogue_by_name():
    return {C.name: C for C in category_catalogue()}


def _circle():
    return build_sset({"dim": 2, "name": "circle", "nondegenerate": {
        "0": ["v"],
        "1": [{"name": "e", "faces": [[[0], "v"], [[0], "v"]]}]}})


def _pinched_triangle():
    # a 2-cell with one genuinely degenerate face
    return build_sset({"dim": 3, "name": "pinch", "nondegenerate": {
        "0": ["p"],
        "1": [{"name": "c", "faces": [[[0], "p"], [[0], "p"]]}],
        "2": [{"name": "t",
               "faces": [[[0, 1], "c"], [[0, 1], "c"], [[0, 0], "p"]]}]}})


def _parallel_edges():
    return build_sset({"dim": 2, "name": "parallel", "nondegenerate": {
        "0": ["v", "w"],
        "1": [{"name": "e1", "faces": [[[0], "w"], [[0], "v"]]},
              {"name": "e2", "faces": [[[0], "w"], [[0], "v"]]}]}})


def sset_corpus():
    """Twenty truncated simplicial sets, all of dimension at most five."""
    return [
        delta(0), delta(1), delta(2), delta(3), delta(4),
        boundary(1), boundary(2), boundary(3),
        horn(1, 0), horn(2, 0), horn(2, 1), horn(2, 2), horn(3, 1),
        disjoint_union(delta(1), delta(0), name="d1+d0"),
        disjoint_union(delta(0), delta(0), name="d0+d0"),
        _circle(), _pinched_triangle(), _parallel_edges(),
        subcomplex_of_delta(3, [(0, 1, 2), (1, 2, 3)], name="twotriangles"),
        subcomplex_of_delta(2, [(0, 1), (1, 2)], name="path2"),
    ]


def sset_corpus_by_name():
    return {X.name: X for X in sset_corpus()}


def gset_catalogue():
    z2, z3 = cyclic_group(2), cyclic_group(3)
    rot3 = FinGSet(z3, ["a", "b", "c"], [[0, 1, 2], [1, 2, 0], [2, 0, 1]],
                   name="rot3")
    return [
        regular_gset(z2), trivial_gset(z2, 2),
        disjoint_union_gset(regular_gset(z2), regular_gset(z2)),
        rot3, disjoint_union_gset(rot3, trivial_gset(z3, 1)),
        regular_gset(symmetric_3()),
    ]


def vspace_catalogue():
    return [FqVecSpace(q, n) for q in (2, 3, 4) for n in range(5)]

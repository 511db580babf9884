import pytest

from factopo.errors import InvalidSpec, NotEquivariant, NotLinear
from factopo.toposx import (EquivariantMap, FinGroup, FinGSet, FqVecSpace,
                            LinearMap, atoms_and_orbits, build_gset, build_vspace,
                            cyclic_group, disjoint_union_gset,
                            epi_mono_factorize_gset, epi_mono_factorize_linear,
                            gset_point_cover_check, line_count, lines,
                            orbit_inclusions, orbit_partition, prime_power,
                            regular_gset, simple_points, symmetric_3,
                            trivial_gset)


# -- groups and G-sets -----------------------------------------------------

def test_cyclic_group():
    G = cyclic_group(4)
    assert G.size == 4
    assert G.mul(3, 2) == 1


def test_symmetric_3():
    G = symmetric_3()
    assert G.size == 6
    assert G.names[G.unit] == "012"


def test_bad_group_table_rejected():
    with pytest.raises(Exception):
        FinGroup(["e", "a"], [[0, 1], [1, 1]])


def test_regular_gset_is_one_orbit():
    X = regular_gset(cyclic_group(2))
    assert len(orbit_partition(X)) == 1


def test_orbit_counts(gsets):
    assert [len(orbit_partition(X)) for X in gsets] == [1, 2, 2, 1, 2, 1]


def test_atoms_are_exactly_the_orbits(gsets):
    for X in gsets:
        reports = atoms_and_orbits(X)
        assert all(r.atom for r in reports), X.name
        assert sum(len(r.points) for r in reports) == len(X.carrier)


def test_equivariance_check():
    G = cyclic_group(2)
    X = regular_gset(G)
    Y = trivial_gset(G, 1)
    EquivariantMap(X, Y, (0, 0)).validate()
    Z = trivial_gset(G, 2)
    with pytest.raises(NotEquivariant):
        EquivariantMap(X, Z, (0, 1)).validate()


def test_epi_mono_gset_collapse(gsets):
    G = gsets[2].group  # Z2 acting on two regular copies
    f = EquivariantMap(gsets[2], gsets[0], (0, 1, 0, 1))
    f.validate()
    epi, middle, mono = epi_mono_factorize_gset(f)
    assert len(middle.carrier) == 2
    assert epi.is_surjective() and mono.is_injective()


def test_gset_point_cover():
    G = cyclic_group(3)
    X = disjoint_union_gset(regular_gset(G), trivial_gset(G, 1))
    fam = orbit_inclusions(X)
    assert gset_point_cover_check(X, fam).covers
    # dropping either orbit leaves points uncovered
    for i in range(len(fam)):
        rest = fam[:i] + fam[i + 1:]
        assert not gset_point_cover_check(X, rest).covers


def test_build_gset_file_shape():
    X = build_gset({"group": {"table": [[0, 1], [1, 0]]},
                    "carrier": ["p", "q"], "action": [[0, 1], [1, 0]]})
    assert len(orbit_partition(X)) == 1


# -- vector spaces ---------------------------------------------------------

def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    assert prime_power(6) is None


def test_vector_space_basics():
    V = FqVecSpace(2, 2)
    assert len(V.vectors()) == 4
    W = build_vspace({"q": 3, "n": 1})
    assert len(W.vectors()) == 3
    with pytest.raises(Exception):
        build_vspace({"q": 6, "n": 1})


def test_linear_map_and_rank():
    V, W = FqVecSpace(2, 2), FqVecSpace(2, 1)
    f = LinearMap(V, W, rows=((1,), (1,)))
    assert f.rank() == 1
    assert f.is_surjective() and not f.is_injective()


def test_nonlinear_table_rejected():
    V = FqVecSpace(2, 1)
    table = {(0,): (0,), (1,): (1,)}
    # bend zero away from zero
    bad = {(0,): (1,), (1,): (0,)}
    assert LinearMap.from_mapping(V, V, table) is not None
    with pytest.raises(NotLinear):
        LinearMap.from_mapping(V, V, bad)


def test_epi_mono_linear_middle_dimension():
    V = FqVecSpace(2, 2)
    f = LinearMap(V, V, rows=((1, 0), (1, 0)))  # rank 1
    epi, middle, mono = epi_mono_factorize_linear(f)
    assert middle.n == 1
    assert epi.is_surjective() and mono.is_injective()


def test_line_counts():
    assert line_count(2, 2) == 3 and len(lines(FqVecSpace(2, 2))) == 3
    assert line_count(2, 3) == 7
    assert line_count(3, 1) == 1
    assert line_count(4, 2) == 5


@pytest.mark.parametrize("q", [2, 3, 4])
@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_line_closed_form(q, n):
    assert len(lines(FqVecSpace(q, n))) == (q ** n - 1) // (q - 1)


def test_simple_points_spectrum():
    sp = simple_points(FqVecSpace(2, 2))
    assert sp.size == 4  # zero plus three lines
    data = sp.as_json()
    assert data["elements"][0]["label"] == "0"
    strict = [(i, j) for i, j in sp.poset.order_pairs() if i != j]
    assert len(strict) == 3

import pytest

from skewcomp.errors import DimensionError, InfiniteRingError, NotUnimodularError, SearchBoundError
from skewcomp.finite import (
    completable_bfs,
    enumerate_um,
    find_witness,
    orbit_bfs,
    orbit_table,
    same_orbit,
    skew_completable_search,
)
from skewcomp.matrices import expand_word, row_matrix
from skewcomp.pfaffian import pfaffian
from skewcomp.rings import enumerate_elements, is_unit, parse_ring
from tests.oracles import brute_unimodular


def act(ring, row, word):
    return (row_matrix(ring, row) @ expand_word(word)).rows[0]


@pytest.mark.parametrize("spec,n,count", [
    ("Zmod:4", 2, 12),
    ("Zmod:3", 2, 8),
    ("Zmod:2", 3, 7),
    ("Zmod:6", 3, 182),
    ("Zmod:5", 1, 4),
])
def test_um_counts(spec, n, count):
    assert len(enumerate_um(parse_ring(spec), n)) == count


@pytest.mark.parametrize("spec", ["Zmod:4", "Zmod:6", "Zmod:2[x]/(x^2)"])
def test_um_matches_brute_force(spec):
    import itertools

    ring = parse_ring(spec)
    elements = enumerate_elements(ring)
    expected = [r for r in itertools.product(elements, repeat=2) if brute_unimodular(ring, r, elements)]
    assert enumerate_um(ring, 2) == expected


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
@pytest.mark.parametrize("n", [2, 3])
def test_transitive(m, n):
    table = orbit_table(parse_ring(f"Zmod:{m}"), n)
    assert len(table.classes) == 1


def test_orbit_words_are_valid():
    ring = parse_ring("Zmod:4")
    orbit = orbit_bfs(ring, 2, (1, 0))
    assert len(orbit) == 12
    for member, word in orbit.words.items():
        assert act(ring, orbit.representative, word) == member


def test_orbit_n1_is_singleton():
    ring = parse_ring("Zmod:5")
    table = orbit_table(ring, 1)
    assert table.sizes == [1, 1, 1, 1]


def test_same_orbit():
    ring = parse_ring("Zmod:6")
    word = same_orbit(ring, (1, 2, 3), (5, 0, 4))
    assert act(ring, (ring(1), ring(2), ring(3)), word) == (ring(5), ring(0), ring(4))
    with pytest.raises(NotUnimodularError):
        same_orbit(ring, (2, 0, 0), (1, 0, 0))


def test_completable_bfs():
    ring = parse_ring("Zmod:3")
    word = completable_bfs(ring, (2, 2))
    assert act(ring, (ring(1), ring(0)), word) == (ring(2), ring(2))
    with pytest.raises(DimensionError):
        completable_bfs(ring, (1,))


def test_find_witness():
    ring = parse_ring("Zmod:6")
    w = find_witness(ring, (2, 3, 0))
    assert (ring(2) * w[0] + ring(3) * w[1]).is_one()
    assert find_witness(ring, (2, 4, 0)) is None


@pytest.mark.parametrize("m", [2, 3, 4])
def test_skew_completable_everywhere(m):
    ring = parse_ring(f"Zmod:{m}")
    for v in enumerate_um(ring, 3):
        V = skew_completable_search(ring, v)
        assert V is not None
        assert V.first_row()[1:] == v
        assert is_unit(ring, pfaffian(V)).status == "unit"


def test_skew_search_pfaffian_one():
    ring = parse_ring("Zmod:4")
    V = skew_completable_search(ring, (3, 2, 0), require_pfaffian_one=True)
    assert pfaffian(V).is_one()


def test_non_unimodular_has_no_skew_completion():
    ring = parse_ring("Zmod:4")
    assert skew_completable_search(ring, (2, 0, 2)) is None


def test_search_bounds():
    with pytest.raises(SearchBoundError):
        skew_completable_search(parse_ring("Zmod:9"), (1, 0, 0))
    with pytest.raises(SearchBoundError):
        skew_completable_search(parse_ring("Zmod:2"), (1, 0, 0, 0, 0, 0, 0))
    with pytest.raises(InfiniteRingError):
        enumerate_um(parse_ring("Q"), 2)


def test_table_json():
    table = orbit_table(parse_ring("Zmod:2"), 2)
    data = table.to_json(full=True)
    assert data["orbit_count"] == 1 and data["sizes"] == [3]
    assert len(data["orbits"][0]) == 3

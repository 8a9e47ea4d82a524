import itertools

from hypothesis import given, strategies as st

from fglattice.intlinalg import det, is_symmetric, leading_minors


def leibniz(m):
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = (-1) ** inv
        for i in range(n):
            term *= m[i][perm[i]]
        total += term
    return total


square = st.integers(min_value=0, max_value=5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-50, 50), min_size=n, max_size=n), min_size=n, max_size=n))


@given(square)
def test_bareiss_matches_leibniz(m):
    assert det(m) == leibniz(m)


def test_det_zero_pivot_and_singular():
    assert det([[0, 1], [1, 0]]) == -1
    assert det([[0, 0], [1, 1]]) == 0
    assert det([[1, 2, 3], [2, 5, 8], [3, 8, 15]]) == 2


def test_leading_minors_and_symmetry():
    m = [[1, 2], [2, 1]]
    assert leading_minors(m) == [1, -3]
    assert is_symmetric(m)
    assert not is_symmetric([[1, 2], [3, 1]])

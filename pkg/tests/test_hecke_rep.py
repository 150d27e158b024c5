import math

import numpy as np
import pytest

from oracles import young_orthogonal
from subduce.hecke_rep import (
    beta,
    generator_matrix,
    quantum_number,
    representation,
    verify_hecke_relations,
)
from subduce.tableaux import enumerate_syt, partitions

QS = [0.5, 1.0, 1.2, 2.0]


def test_quantum_number():
    assert quantum_number(1, 0.3) == pytest.approx(1.0)
    assert quantum_number(3, 1.0) == 3.0
    assert quantum_number(2, 2.0) == pytest.approx(2.5, rel=1e-15)
    assert quantum_number(2.5, 1.0) == 2.5
    with pytest.raises(ValueError):
        quantum_number(1, 0.0)
    with pytest.raises(ValueError):
        quantum_number(1, -1.0)


def test_quantum_number_near_one_is_continuous():
    for x in (2, 3, 5):
        q = 1 + 1e-9
        # deviation from x is O((q - 1)^2)
        assert abs(quantum_number(x, q) - x) < 1e-12


def test_quantum_number_formula():
    for q in (0.4, 1.7, 3.0):
        for x in (-3, -1, 2, 4):
            assert quantum_number(x, q) == pytest.approx((q**x - q**-x) / (q - 1 / q), rel=1e-13)


def test_beta_values():
    assert beta(1, 1.7) == 0.0
    assert beta(-1, 0.2) == 0.0
    assert beta(2, 1.0) == pytest.approx(math.sqrt(3) / 2, rel=1e-15)
    for q in QS:
        for d in (2, 3, 5):
            assert beta(-d, q) == beta(d, q) > 0
    with pytest.raises(ValueError):
        beta(0, 1.0)


def test_one_dimensional_matrices():
    q = 1.7
    assert generator_matrix((2,), 1, q).dense() == pytest.approx(np.array([[q]]))
    assert generator_matrix((1, 1), 1, q).dense() == pytest.approx(np.array([[-1 / q]]))


def test_two_by_two_example():
    g = generator_matrix((2, 1), 2, 1.0).dense()
    s = math.sqrt(3) / 2
    np.testing.assert_allclose(g, [[-0.5, s], [s, 0.5]], atol=1e-15)


def test_generator_index_range():
    with pytest.raises(IndexError):
        generator_matrix((2, 1), 3, 1.0)
    with pytest.raises(IndexError):
        generator_matrix((2, 1), 0, 1.0)


@pytest.mark.parametrize("q", QS)
def test_matrix_structure(q):
    for n in range(2, 7):
        for shape in partitions(n):
            tabs = enumerate_syt(shape)
            for g in representation(shape, q):
                a = g.dense()
                np.testing.assert_array_equal(a, a.T)
                assert max(np.count_nonzero(a, axis=1)) <= 2
                eig = np.linalg.eigvalsh(a)
                plus = sum(1 for t in tabs if t.axial_distance(g.index) > 0)
                assert np.allclose(np.sort(eig), np.sort([q] * plus + [-1 / q] * (len(tabs) - plus)))
                assert np.trace(a) == pytest.approx(plus * q - (len(tabs) - plus) / q)


def test_relations_examples():
    rep = verify_hecke_relations((2, 1), 1.5, 1e-12)
    assert rep.passed
    assert verify_hecke_relations((1,), 2.0).passed
    assert verify_hecke_relations((3, 2, 1), 1.0, 1e-10).passed


def test_q_one_is_young_orthogonal_form():
    for shape in [(3, 2, 1), (4, 2), (2, 2, 1)]:
        tabs = enumerate_syt(shape)
        basis = [t.rows for t in tabs]
        for i in range(1, sum(shape)):
            ours = generator_matrix(shape, i, 1.0).dense()
            np.testing.assert_allclose(ours, young_orthogonal(shape, basis, i), atol=1e-15)


def test_triplets_and_sparsity():
    g = generator_matrix((3, 2), 3, 1.3)
    trip = g.triplets()
    assert trip == sorted(trip)
    assert len(trip) == g.entries.nnz

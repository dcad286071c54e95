import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from gbsim import (
    CostLimitError,
    ValidationError,
    hafnian,
    permanent,
    permanent_naive,
    submatrix_by_pattern,
)

finite = st.floats(min_value=-5, max_value=5, allow_nan=False, allow_infinity=False)


def complex_square(n):
    return st.tuples(
        arrays(np.float64, (n, n), elements=finite),
        arrays(np.float64, (n, n), elements=finite),
    ).map(lambda t: t[0] + 1j * t[1])


class TestPermanent:
    def test_2x2(self):
        assert permanent([[1, 2], [3, 4]]) == pytest.approx(10 + 0j, abs=0)

    def test_all_ones_3x3(self):
        assert permanent(np.ones((3, 3))) == pytest.approx(6 + 0j, abs=0)

    def test_empty_is_one(self):
        assert permanent(np.zeros((0, 0))) == 1.0

    def test_matches_naive_on_random_complex(self):
        rng = np.random.default_rng(0)
        a = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        exact = permanent_naive(a)
        assert abs(permanent(a) - exact) <= 1e-12 * abs(exact)

    @pytest.mark.parametrize("n", [1, 3, 6, 7])
    def test_matches_naive_across_sizes(self, n):
        rng = np.random.default_rng(n)
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        exact = permanent_naive(a)
        assert abs(permanent(a) - exact) <= 1e-11 * max(abs(exact), 1.0)

    @settings(max_examples=30, deadline=None)
    @given(complex_square(4), st.floats(min_value=0.1, max_value=3.0))
    def test_row_scaling_law(self, a, q):
        # per(q A) = q^n per(A)
        lhs = permanent(q * a)
        rhs = q ** a.shape[0] * permanent(a)
        assert abs(lhs - rhs) <= 1e-10 * max(abs(rhs), 1.0)

    def test_psd_permanent_is_real_nonnegative(self):
        rng = np.random.default_rng(7)
        for _ in range(5):
            gmat = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
            h = gmat.conj().T @ gmat
            val = permanent(h)
            scale = float(np.abs(h).max()) ** 4
            assert abs(val.imag) <= 1e-10 * scale
            assert val.real >= -1e-10 * scale

    def test_cost_limit(self):
        with pytest.raises(CostLimitError):
            permanent(np.zeros((25, 25)))

    def test_naive_guard(self):
        with pytest.raises(CostLimitError):
            permanent_naive(np.zeros((10, 10)))


class TestHafnian:
    def test_single_pair(self):
        assert hafnian([[0, 2 + 1j], [2 + 1j, 0]]) == pytest.approx(2 + 1j, abs=0)

    def test_three_matchings(self):
        a = np.ones((4, 4))
        assert hafnian(a) == pytest.approx(3 + 0j, abs=0)

    def test_empty_is_one(self):
        assert hafnian(np.zeros((0, 0))) == 1.0

    def test_odd_dimension_rejected(self):
        with pytest.raises(ValidationError):
            hafnian(np.ones((3, 3)))

    def test_diagonal_ignored(self):
        a = np.ones((4, 4))
        b = a + np.diag([9, 9, 9, 9])
        assert hafnian(a) == hafnian(b)

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_block_form_equals_permanent(self, n):
        # haf([[0, P], [P^T, 0]]) = per(P)
        rng = np.random.default_rng(n)
        p = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        z = np.zeros((n, n))
        blk = np.block([[z, p], [p.T, z]])
        exact = permanent(p)
        assert abs(hafnian(blk) - exact) <= 1e-11 * max(abs(exact), 1.0)

    def test_relabeling_invariance(self):
        rng = np.random.default_rng(13)
        b = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        b = b + b.T
        perm = rng.permutation(6)
        ref = hafnian(b)
        assert abs(hafnian(b[np.ix_(perm, perm)]) - ref) <= 1e-12 * max(abs(ref), 1.0)

    def test_cost_limit(self):
        with pytest.raises(CostLimitError):
            hafnian(np.zeros((22, 22)))


class TestSubmatrixByPattern:
    def test_all_ones_identity_op(self):
        m = np.arange(9).reshape(3, 3).astype(complex)
        assert np.array_equal(submatrix_by_pattern(m, (1, 1, 1)), m)

    def test_all_zeros_empty(self):
        m = np.eye(3)
        assert submatrix_by_pattern(m, (0, 0, 0)).shape == (0, 0)

    def test_index_bookkeeping(self):
        m = np.arange(9).reshape(3, 3).astype(complex)
        sub = submatrix_by_pattern(m, (1, 0, 1))
        assert np.array_equal(sub, np.array([[0, 2], [6, 8]]))

    def test_length_mismatch(self):
        with pytest.raises(ValidationError):
            submatrix_by_pattern(np.eye(3), (1, 0))

    def test_non_binary_rejected(self):
        with pytest.raises(ValidationError):
            submatrix_by_pattern(np.eye(3), (1, 2, 0))

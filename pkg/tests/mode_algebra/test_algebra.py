"""Tests for normal ordering, adjoints, commutators and expectations."""
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.models.modes import StateSpec
from src.services.mode_algebra import (
    LadderOp,
    OperatorExpr,
    adjoint,
    commutator,
    expectation,
    expectation_by_degree,
    multiply,
    multiply_all,
    normal_order,
    to_matrix,
    word,
)
from tests.strategies import expressions, monomials


def a(mode: str) -> OperatorExpr:
    return OperatorExpr.annihilator(mode)


def adag(mode: str) -> OperatorExpr:
    return OperatorExpr.creator(mode)


def coherent_vector(alpha: complex, cutoff: int) -> np.ndarray:
    n = np.arange(cutoff + 1)
    log_norm = -0.5 * abs(alpha) ** 2 - 0.5 * np.array([math.lgamma(k + 1) for k in n])
    return np.exp(log_norm) * np.array([complex(alpha) ** k for k in n])


class TestNormalOrdering:

    def test_canonical_commutator(self):
        assert commutator(a('i1'), adag('i1')) == OperatorExpr.identity()

    def test_distinct_modes_commute(self):
        assert commutator(a('s1'), adag('i1')).is_zero()
        assert commutator(a('s1'), a('i1')).is_zero()

    def test_anti_normal_pair(self):
        result = multiply(a('i1'), adag('i1'))
        assert result == OperatorExpr.number('i1') + 1

    def test_word_in_arbitrary_order(self):
        result = word([LadderOp.a('i1'), LadderOp.adag('i1'), LadderOp.a('i1')])
        expected = adag('i1') * a('i1') * a('i1') + a('i1')
        assert result == expected
        assert result.coefficient((('i1', 1),), (('i1', 2),)) == pytest.approx(1.0)

    def test_two_annihilators_then_creator(self):
        result = normal_order([LadderOp.a('m'), LadderOp.a('m'), LadderOp.adag('m')])
        assert result == adag('m') * a('m') * a('m') + a('m').scaled(2)

    def test_sum_times_creator(self):
        result = multiply(a('s') + adag('i'), adag('s'))
        assert result == OperatorExpr.number('s') + 1 + adag('i') * adag('s')

    def test_square_of_annihilator_and_creator(self):
        # a² a†² = a†² a² + 4 a†a + 2
        result = multiply_all([a('m'), a('m'), adag('m'), adag('m')])
        expected = (adag('m') * adag('m') * a('m') * a('m')) + OperatorExpr.number('m').scaled(4) + 2
        assert result == expected

    def test_zero_coefficients_are_pruned(self):
        e = a('m') - a('m')
        assert e.is_zero()
        assert len(e) == 0

    @given(expressions())
    def test_normal_order_is_idempotent(self, e):
        assert normal_order(normal_order(e)) == normal_order(e)

    @given(expressions())
    def test_adjoint_is_an_involution(self, e):
        assert adjoint(adjoint(e)) == e

    @given(expressions(), expressions())
    def test_adjoint_reverses_products(self, e1, e2):
        assert adjoint(multiply(e1, e2)).allclose(multiply(adjoint(e2), adjoint(e1)), atol=1e-9)

    @given(expressions(), expressions(), expressions())
    def test_product_is_associative(self, e1, e2, e3):
        left = multiply(multiply(e1, e2), e3)
        right = multiply(e1, multiply(e2, e3))
        assert left.allclose(right, atol=1e-8)


class TestMatrixEquivalence:
    MODES = ('a', 'b')
    CUTOFFS = (8, 8)

    def _low_columns(self) -> list[int]:
        size = self.CUTOFFS[1] + 1
        return [n_a * size + n_b for n_a in (0, 1) for n_b in (0, 1)]

    @given(monomials(labels=('a', 'b'), max_power=1), monomials(labels=('a', 'b'), max_power=1))
    def test_product_matches_matrix_product(self, e1, e2):
        product = to_matrix(multiply(e1, e2), self.MODES, self.CUTOFFS).toarray()
        separate = (to_matrix(e1, self.MODES, self.CUTOFFS) @ to_matrix(e2, self.MODES, self.CUTOFFS)).toarray()
        columns = self._low_columns()
        np.testing.assert_allclose(product[:, columns], separate[:, columns], atol=1e-12)

    def test_number_operator_is_diagonal(self):
        matrix = to_matrix(OperatorExpr.number('a'), ('a',), (5,)).toarray()
        np.testing.assert_allclose(matrix, np.diag(np.arange(6)))

    @given(
        monomials(labels=('a', 'b'), max_power=2),
        st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False),
        st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False),
    )
    def test_coherent_expectation_matches_truncated_matrix(self, e, alpha_a, alpha_b):
        cutoff = 20
        psi = np.kron(coherent_vector(alpha_a, cutoff), coherent_vector(alpha_b, cutoff))
        matrix = to_matrix(e, self.MODES, (cutoff, cutoff))
        numeric = psi.conj() @ (matrix @ psi)
        symbolic = expectation(e, StateSpec.coherent({'a': alpha_a, 'b': alpha_b}))
        assert abs(numeric - symbolic) <= 1e-9 * max(1.0, abs(symbolic))

    def test_rejects_modes_outside_basis(self):
        with pytest.raises(ValueError):
            to_matrix(a('z'), ('a',), (3,))


class TestExpectation:

    def test_vacuum(self):
        assert expectation(OperatorExpr.number('s1'), StateSpec.vacuum()) == 0
        assert expectation(multiply(a('s1'), adag('s1')), StateSpec.vacuum()) == pytest.approx(1.0)

    def test_coherent(self):
        state = StateSpec.coherent({'i1': 2 + 1j})
        assert expectation(OperatorExpr.number('i1'), state) == pytest.approx(5.0)
        assert expectation(a('i1'), state) == pytest.approx(2 + 1j)
        assert expectation(adag('i1'), state) == pytest.approx(2 - 1j)

    def test_split_by_degree(self):
        state = StateSpec.coherent({'i1': 3.0})
        by_degree = expectation_by_degree(multiply(a('i1'), adag('i1')), state)
        assert by_degree[0] == pytest.approx(1.0)
        assert by_degree[2] == pytest.approx(9.0)

    @given(expressions())
    def test_hermitian_part_has_real_expectation(self, e):
        state = StateSpec.coherent({'a': 0.5, 'b': -0.3j})
        value = expectation(e + adjoint(e), state)
        assert abs(value.imag) <= 1e-9 * max(1.0, abs(value))

    @given(expressions())
    def test_norm_expectation_is_real_and_nonnegative(self, e):
        state = StateSpec.coherent({'a': 0.5, 'b': -0.3j, 'c': 0.2})
        value = expectation(multiply(adjoint(e), e), state)
        assert abs(value.imag) <= 1e-9 * max(1.0, abs(value))
        assert value.real >= -1e-9


class TestClassicalSymbols:

    def test_classical_symbols_never_contract(self):
        c = OperatorExpr.classical('x', 2 + 1j)
        assert c.modes == frozenset({'~x'})
        assert commutator(c, adjoint(c)).is_zero()
        assert multiply(adjoint(c), c).coefficient((), ()) == 0

    def test_classical_amplitude_sits_in_the_coefficient(self):
        c = OperatorExpr.classical('~x', 2 + 1j)
        intensity = multiply(adjoint(c), c)
        assert expectation(intensity, StateSpec.vacuum()) == pytest.approx(5.0)
        assert expectation_by_degree(intensity, StateSpec.vacuum()) == {2: pytest.approx(5.0)}

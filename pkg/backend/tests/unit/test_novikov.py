"""
Unit tests for the truncated Novikov ring and matrices over it.
"""

from fractions import Fraction
import math

import pytest
import sympy

from common.errors import DivisionByZeroError, NovikovError, ShapeMismatchError
from engine.novikov.schemas import NovikovElement, NovikovMatrix
from engine.novikov.tools import format_text, invert, matrix_rank, parse_text, ring_ops, valuation


def _random_element(rng):
    count = int(rng.integers(0, 4))
    terms = tuple(
        (Fraction(int(rng.integers(0, 7)), 2), Fraction(int(rng.integers(-3, 4))))
        for _ in range(count)
    )
    return NovikovElement(terms)


@pytest.mark.unit
class TestRingArithmetic:
    """Test ring axioms and truncation bookkeeping."""

    def test_axioms_on_exact_elements(self, rng):
        for _ in range(1000):
            x, y, z = (_random_element(rng) for _ in range(3))
            assert (x + y) + z == x + (y + z)
            assert x + y == y + x
            assert (x * y) * z == x * (y * z)
            assert x * y == y * x
            assert x * (y + z) == x * y + x * z
            assert (x - x).is_zero
            assert x * 1 == x

    def test_valuation_is_multiplicative(self, rng):
        for _ in range(500):
            x, y = _random_element(rng), _random_element(rng)
            if x.is_zero or y.is_zero:
                continue
            assert valuation(x * y) == valuation(x) + valuation(y)
        assert valuation(parse_text('T^(-1/2) + 3*T')) == Fraction(-1, 2)

    def test_truncation_of_products(self):
        product = NovikovElement.constant(1, 3) * NovikovElement.monomial(1, 1)
        assert product.identical(NovikovElement.monomial(1, 1, 4))
        exact_zero = NovikovElement.zero() * NovikovElement.constant(5, 2)
        assert exact_zero.is_zero and exact_zero.is_exact

    def test_equality_below_the_smaller_truncation(self):
        x = parse_text('1 + T + O(T^2)')
        y = parse_text('1 + O(T)')
        assert x == y
        assert not x.identical(y)
        assert NovikovElement.zero().valuation() == math.inf
        assert NovikovElement.zero(3).known_valuation() == 3

    def test_ring_ops(self):
        x = parse_text('1 - T')
        y = parse_text('T^(1/2)')
        assert ring_ops(x, y, 'mul').identical(parse_text('T^(1/2) - T^(3/2)'))
        assert ring_ops(x, None, 'neg').identical(parse_text('-1 + T'))
        with pytest.raises(NovikovError):
            ring_ops(x, None, 'add')
        with pytest.raises(NovikovError):
            ring_ops(x, y, 'div')


@pytest.mark.unit
class TestInvert:
    """Test inversion by geometric series."""

    def test_one_minus_t_is_the_geometric_series(self):
        inverse = invert(parse_text('1 - T'), 16)
        expected = NovikovElement(tuple((k, 1) for k in range(16)), 16)
        assert inverse.identical(expected)
        assert (parse_text('1 - T') * inverse).identical(NovikovElement.constant(1, 16))

    def test_monomials(self):
        assert invert(NovikovElement.monomial(2, '1/2'), 4).identical(NovikovElement.monomial('1/2', '-1/2'))
        truncated = invert(NovikovElement.monomial(2, '1/2', 3), 4)
        assert truncated.identical(NovikovElement.monomial('1/2', '-1/2', 2))

    def test_exact_monomials_ignore_the_working_order(self):
        for order in (0, 1, 4):
            inverse = invert(NovikovElement.monomial(3, 5), order)
            assert inverse.identical(NovikovElement.monomial('1/3', -5))
            assert inverse.truncation is None

    def test_zero_and_precision_errors(self):
        with pytest.raises(DivisionByZeroError):
            invert(NovikovElement.zero(), 4)
        with pytest.raises(ZeroDivisionError):
            invert(NovikovElement.monomial(1, 3, 3), 4)
        with pytest.raises(NovikovError):
            invert(parse_text('1 - T'), 0)


@pytest.mark.unit
class TestTextForm:
    """Test the a*T^(e) + O(T^(E)) text form."""

    def test_format(self):
        assert format_text(NovikovElement.monomial(3, '1/2', 2)) == '3*T^(1/2) + O(T^(2))'
        assert format_text(invert(parse_text('1 - T'), 4)) == (
            '1*T^(0) + 1*T^(1) + 1*T^(2) + 1*T^(3) + O(T^(4))'
        )
        assert format_text(NovikovElement.zero()) == '0'
        assert format_text(NovikovElement.zero(3)) == '0 + O(T^(3))'
        assert format_text(parse_text('-2*T - 1/2*T^2')) == '-2*T^(1) - 1/2*T^(2)'

    def test_parse_reads_what_format_writes(self):
        x = parse_text('3*T^(1/2) - 2*T^(-1) + O(T^(2))')
        assert parse_text(format_text(x)).identical(x)
        assert NovikovElement.from_json(x.to_json()).identical(x)

    @pytest.mark.parametrize('text', ['', 'x', 'O(T^2) + O(T^3)', '(1', '1 - O(T)'])
    def test_malformed_text(self, text):
        with pytest.raises(NovikovError):
            parse_text(text)


@pytest.mark.unit
class TestMatrixRank:
    """Test valuation-aware Gaussian elimination."""

    def test_rational_matrix(self):
        rank = matrix_rank(sympy.Matrix([[1, 2], [2, 4]]), 4)
        assert (rank.rank, rank.determined) == (1, True)
        assert matrix_rank(sympy.eye(3), 4).rank == 3

    def test_determined_over_the_novikov_field(self):
        t = NovikovElement.monomial(1, 1)
        matrix = NovikovMatrix(((t, 0), (0, parse_text('1 - T'))))
        rank = matrix_rank(matrix, 4)
        assert rank.rank == 2 and rank.determined
        assert rank.pivots == ((1, 1), (0, 0))

        cancelling = matrix_rank(NovikovMatrix(((t, t * t), (t * t, t * t * t))), 5)
        assert (cancelling.rank, cancelling.determined) == (1, True)

    def test_undetermined_ranks(self):
        late = NovikovMatrix(((NovikovElement.monomial(1, 5),),))
        rank = matrix_rank(late, 4)
        assert (rank.rank, rank.determined) == (0, False)
        assert 'not below' in rank.reason

        unknown = matrix_rank(NovikovMatrix(((NovikovElement.zero(3),),)), 4)
        assert (unknown.rank, unknown.determined) == (0, False)
        assert unknown.reason == 'only truncated zeros remain'

    def test_matrix_shapes(self):
        with pytest.raises(ShapeMismatchError):
            NovikovMatrix(((1, 2), (3,)))
        with pytest.raises(ShapeMismatchError):
            NovikovMatrix.identity(2) * NovikovMatrix.identity(3)
        assert NovikovMatrix.identity(2) * NovikovMatrix.scalar(2, 3) == NovikovMatrix.scalar(2, 3)

import pytest
from hypothesis import given, strategies as st
from sympy.polys.domains import QQ

from svsegre.models import RingMismatchError, ValidationError
from svsegre.poly import (
    DEFAULT_PRIME,
    BlockOrder,
    arith,
    constant_term,
    convert,
    field_from_spec,
    is_homogeneous,
    leading_term,
    make_ring,
    monomial_order,
    monomials_of_degree,
    prime_field,
    random_linear_form,
    substitute,
    total_degree,
)
from svsegre.rng import RandomSource

SMALL_RING = make_ring(['x', 'y', 'z'], prime_field(101))

polynomials = st.dictionaries(
    st.tuples(*[st.integers(0, 3)] * 3), st.integers(-50, 50), max_size=6
).map(SMALL_RING.from_dict)


class TestRings:
    """Tests for ring and field construction."""

    def test_default_field_is_large_prime(self):
        """Test that rings default to GF(2^62 - 57)."""
        ring = make_ring(['x', 'y'])
        assert ring.domain.characteristic() == DEFAULT_PRIME == 4611686018427387847

    def test_duplicate_variables_rejected(self):
        """Test that duplicate variable names raise a validation error."""
        with pytest.raises(ValidationError, match="Duplicate"):
            make_ring(['x', 'y', 'x'])

    def test_field_specs(self):
        """Test parsing of q, fp and fp:<prime>."""
        assert field_from_spec('q') == QQ
        assert field_from_spec('fp').characteristic() == DEFAULT_PRIME
        assert field_from_spec('fp:101').characteristic() == 101
        assert field_from_spec('fp 7').characteristic() == 7

    def test_non_prime_modulus_rejected(self):
        """Test that a composite modulus is refused."""
        with pytest.raises(ValidationError, match="not a prime"):
            field_from_spec('fp:100')

    def test_bad_field_spec(self):
        """Test an unknown field kind."""
        with pytest.raises(ValidationError, match="Bad field spec"):
            field_from_spec('reals')

    def test_unknown_order(self):
        """Test an unknown monomial order name."""
        with pytest.raises(ValidationError, match="Unknown monomial order"):
            monomial_order('deglex')

    def test_block_order_eliminates_first_block(self):
        """Test that the block order ranks any first-block monomial above the rest."""
        order = BlockOrder(1)
        assert order((1, 0, 0)) > order((0, 5, 5))
        assert order((0, 2, 0)) > order((0, 1, 0))

    def test_convert_between_rings(self):
        """Test moving a polynomial between rings with different fields fails."""
        ring_q = make_ring(['x', 'y', 'z'], QQ)
        x = ring_q.gens[0]
        with pytest.raises(RingMismatchError):
            convert(x, SMALL_RING)


class TestArithmetic:
    """Tests for exact arithmetic."""

    def test_cancellation(self):
        """Test (x+y) + (x-y) = 2x."""
        x, y, _ = SMALL_RING.gens
        assert arith(x + y, x - y, 'add') == 2 * x

    def test_difference_of_squares(self):
        """Test (x+y)(x-y) = x^2 - y^2."""
        x, y, _ = SMALL_RING.gens
        assert arith(x + y, x - y, 'mul') == x**2 - y**2

    def test_reduction_mod_p(self):
        """Test 3x * 4x = 2x^2 over GF(5)."""
        ring = make_ring(['x'], prime_field(5))
        x = ring.gens[0]
        assert arith(3 * x, 4 * x, 'mul') == 2 * x**2

    def test_ring_mismatch(self):
        """Test that operands from different rings are refused."""
        other = make_ring(['a', 'b'], prime_field(101))
        with pytest.raises(RingMismatchError):
            arith(SMALL_RING.gens[0], other.gens[0], 'add')

    def test_unknown_operation(self):
        """Test an unknown operation name."""
        x = SMALL_RING.gens[0]
        with pytest.raises(ValidationError, match="Unknown operation"):
            arith(x, x, 'div')

    @given(polynomials, polynomials, polynomials)
    def test_ring_axioms(self, p, q, r):
        """Test commutativity, associativity and distributivity."""
        assert arith(p, q, 'mul') == arith(q, p, 'mul')
        assert arith(arith(p, q, 'add'), r, 'add') == arith(p, arith(q, r, 'add'), 'add')
        assert arith(p, arith(q, r, 'add'), 'mul') == \
            arith(arith(p, q, 'mul'), arith(p, r, 'mul'), 'add')
        assert arith(p, p, 'sub') == SMALL_RING.zero

    @given(polynomials, polynomials)
    def test_leading_term_is_multiplicative(self, p, q):
        """Test LT(pq) = LT(p) LT(q) for nonzero p, q."""
        if not p or not q:
            return
        (mp, cp), (mq, cq) = leading_term(p), leading_term(q)
        monom, coeff = leading_term(arith(p, q, 'mul'))
        assert monom == tuple(a + b for a, b in zip(mp, mq))
        assert coeff == cp * cq


class TestLeadingTerms:
    """Tests for leading terms under different orders."""

    def test_grevlex_tie(self):
        """Test x^2y + xy^2 under grevlex has leading monomial x^2y."""
        ring = make_ring(['x', 'y'], prime_field(101))
        x, y = ring.gens
        assert leading_term(x**2 * y + x * y**2)[0] == (2, 1)

    def test_lex_ignores_degree(self):
        """Test x + y^2 under lex has leading monomial x."""
        ring = make_ring(['x', 'y'], prime_field(101), 'lex')
        x, y = ring.gens
        assert leading_term(x + y**2)[0] == (1, 0)

    def test_grevlex_refines_degree(self):
        """Test x + y^2 under grevlex has leading monomial y^2."""
        ring = make_ring(['x', 'y'], prime_field(101))
        x, y = ring.gens
        assert leading_term(x + y**2)[0] == (0, 2)

    def test_zero_has_no_leading_term(self):
        """Test that the zero polynomial raises."""
        with pytest.raises(ValidationError):
            leading_term(SMALL_RING.zero)


class TestHomogeneity:
    """Tests for homogeneity and degrees."""

    def test_homogeneous(self):
        """Test x^2 + yz is homogeneous of degree 2."""
        x, y, z = SMALL_RING.gens
        assert is_homogeneous(x**2 + y * z) == (True, 2)

    def test_not_homogeneous(self):
        """Test x + y^2 is not homogeneous."""
        x, y, _ = SMALL_RING.gens
        assert is_homogeneous(x + y**2)[0] is False

    def test_zero_is_homogeneous(self):
        """Test the zero polynomial convention."""
        assert is_homogeneous(SMALL_RING.zero) == (True, None)
        assert total_degree(SMALL_RING.zero) == -1

    def test_constant_term(self):
        """Test reading the constant term."""
        x, _, _ = SMALL_RING.gens
        assert constant_term(x + 7) == SMALL_RING.domain.convert(7)
        assert not constant_term(x)

    def test_monomials_of_degree(self):
        """Test the number of monomials of degree 2 in 3 variables."""
        monomials = monomials_of_degree(3, 2)
        assert len(monomials) == 6
        assert all(sum(m) == 2 for m in monomials)


class TestRandomForms:
    """Tests for random linear forms."""

    def test_shape_through_origin(self):
        """Test that a form through the origin has three nonzero linear terms."""
        form = random_linear_form(SMALL_RING, RandomSource(1))
        assert is_homogeneous(form) == (True, 1)
        assert len(form) == 3

    def test_affine_form_has_constant(self):
        """Test that through_origin=False adds a constant term."""
        form = random_linear_form(SMALL_RING, RandomSource(1), through_origin=False)
        assert constant_term(form)

    def test_deterministic(self):
        """Test that the same seed yields the same form."""
        assert random_linear_form(SMALL_RING, RandomSource(3)) == \
            random_linear_form(SMALL_RING, RandomSource(3))

    def test_rational_bound(self):
        """Test that rational coefficients are integers in [-B, B]."""
        ring = make_ring(['x', 'y', 'z'], QQ)
        form = random_linear_form(ring, RandomSource(5, rational_bound=10))
        for coeff in form.coeffs():
            assert coeff.denominator == 1
            assert -10 <= coeff <= 10 and coeff != 0


class TestSubstitute:
    """Tests for simultaneous substitution."""

    def test_swap_variables(self):
        """Test that substituting (y, x, z) swaps x and y."""
        x, y, z = SMALL_RING.gens
        assert substitute(x**2 * z + y, [y, x, z]) == y**2 * z + x

    def test_wrong_number_of_images(self):
        """Test the image count check."""
        x, y, _ = SMALL_RING.gens
        with pytest.raises(ValidationError, match="Expected 3 images"):
            substitute(x, [x, y])

import pytest

from svsegre.groebner import Ideal
from svsegre.models import GenericityError, NonIsolatedError, ValidationError
from svsegre.mult import (
    AffineIdeal,
    affine_chart,
    hs_multiplicity,
    is_isolated,
    linear_substitution,
    local_dimension,
    local_length,
    mult_at_origin,
    origin_in_zero_set,
    random_linear_change,
    segre_numbers,
)
from svsegre.poly import make_ring
from svsegre.rng import RandomSource


class TestIsolation:
    """Tests for the origin and isolated points."""

    def test_origin_on_zero_set(self, plane):
        """Test constant terms decide whether the origin lies on V(I)."""
        x, y = plane.gens
        assert origin_in_zero_set(Ideal(plane, [x**2, x * y]))
        assert not origin_in_zero_set(Ideal(plane, [x - 1, y]))

    def test_isolated_point(self, plane):
        """Test (x^2, y^3) has an isolated point at the origin."""
        x, y = plane.gens
        assert is_isolated(Ideal(plane, [x**2, y**3]))

    def test_line_is_not_isolated(self, plane):
        """Test (x^2, xy) contains the line x = 0 through the origin."""
        x, y = plane.gens
        assert not is_isolated(Ideal(plane, [x**2, x * y]))

    def test_point_elsewhere(self, plane):
        """Test a point away from the origin is not isolated at it."""
        x, y = plane.gens
        assert not is_isolated(Ideal(plane, [x - 1, y]))

    def test_affine_ideal(self, plane):
        """Test the maximal ideal of an affine ideal."""
        x, y = plane.gens
        J = AffineIdeal(plane, [x, y**2])
        assert J.vanishes_at_origin()
        assert J.maximal_ideal().equals(Ideal(plane, [x, y]))


class TestLocalLength:
    """Tests for local lengths at the origin."""

    def test_monomial_ideal(self, plane):
        """Test the length of k[x,y]/(x^2, y^3) is 6."""
        x, y = plane.gens
        assert local_length(Ideal(plane, [x**2, y**3])) == 6

    def test_reduced_point(self, plane):
        """Test (x - y, x + y) is the reduced origin."""
        x, y = plane.gens
        assert local_length(Ideal(plane, [x - y, x + y])) == 1

    def test_only_the_origin_counts(self, plane):
        """Test components away from the origin are ignored."""
        x, y = plane.gens
        assert local_length(Ideal(plane, [x * (x - 1), y])) == 1

    def test_origin_not_on_zero_set(self, plane):
        """Test the length is 0 off V(I)."""
        x, y = plane.gens
        assert local_length(Ideal(plane, [x - 1, y])) == 0

    def test_not_isolated(self, plane):
        """Test a curve through the origin raises NonIsolatedError."""
        x, _ = plane.gens
        with pytest.raises(NonIsolatedError):
            local_length(Ideal(plane, [x]))

    def test_cap(self, plane):
        """Test a tiny stabilization cap is reported."""
        x, y = plane.gens
        with pytest.raises(NonIsolatedError, match="did not stabilize"):
            local_length(Ideal(plane, [x**5, y**5]), cap=4)


class TestMultiplicity:
    """Tests for multiplicities of equidimensional zero sets."""

    def test_cusp(self, load_ideal, rng):
        """Test the cusp y^2 = x^3 has multiplicity 2."""
        assert mult_at_origin(load_ideal('cusp.ideal'), 1, rng) == 2

    def test_line(self, plane, rng):
        """Test a smooth curve has multiplicity 1."""
        x, y = plane.gens
        assert mult_at_origin(Ideal(plane, [x - y]), 1, rng) == 1

    def test_plane_in_space(self, rng):
        """Test a plane in affine 3-space has multiplicity 1."""
        ring = make_ring(['x', 'y', 'z'])
        z = ring.gens[2]
        assert mult_at_origin(Ideal(ring, [z]), 2, rng) == 1

    def test_node(self, plane, rng):
        """Test two crossing lines have multiplicity 2."""
        x, y = plane.gens
        assert mult_at_origin(Ideal(plane, [x * y]), 1, rng) == 2

    def test_dimension_zero(self, plane, rng):
        """Test k = 0 is the local length."""
        x, y = plane.gens
        assert mult_at_origin(Ideal(plane, [x**2, y**3]), 0, rng) == 6

    def test_no_component_of_that_dimension(self, plane, rng):
        """Test an isolated point has no 1-dimensional part."""
        x, y = plane.gens
        assert mult_at_origin(Ideal(plane, [x, y]), 1, rng) == 0

    def test_origin_off_zero_set(self, plane, rng):
        """Test the multiplicity is 0 away from V(I)."""
        x, _ = plane.gens
        assert mult_at_origin(Ideal(plane, [x - 1]), 1, rng) == 0

    def test_dimension_too_small(self, plane, rng):
        """Test a curve cannot be isolated with zero forms."""
        x, _ = plane.gens
        assert mult_at_origin(Ideal(plane, [x]), 0, rng) == 0

    def test_negative_dimension(self, plane, rng):
        """Test a negative dimension is refused."""
        x, _ = plane.gens
        with pytest.raises(ValidationError):
            mult_at_origin(Ideal(plane, [x]), -1, rng)

    def test_local_dimension(self, plane, rng):
        """Test the local dimension of a curve and of a point."""
        x, y = plane.gens
        assert local_dimension(Ideal(plane, [x**2, x * y]), rng) == 1
        assert local_dimension(Ideal(plane, [x**2, y**3]), rng) == 0


class TestSegreNumbers:
    """Tests for Segre numbers at the origin."""

    def test_line_with_embedded_point(self, load_ideal, rng):
        """Test (x^2, xy): e_1 = 1 and e_2 = 2."""
        numbers = segre_numbers(load_ideal('x2xy.ideal'), rng)
        assert numbers.kappa == 1
        assert numbers.e == (1, 2)
        assert numbers.zeros_below_kappa_ok

    def test_m_primary(self, load_ideal, rng):
        """Test (x^2, y^3): the top number is the length 6."""
        numbers = segre_numbers(load_ideal('x2y3.ideal'), rng)
        assert numbers.kappa == 2
        assert numbers.e == (6,)
        assert numbers.number(1) == 0
        assert numbers.zeros_below_kappa_ok

    def test_smooth_hypersurface(self, plane, rng):
        """Test (x) has e_1 = 1."""
        x, _ = plane.gens
        numbers = segre_numbers(Ideal(plane, [x]), rng)
        assert numbers.kappa == 1
        assert numbers.e[0] == 1

    def test_seed_is_recorded(self, load_ideal):
        """Test the seed of the stream is reported."""
        assert segre_numbers(load_ideal('x2xy.ideal'), RandomSource(9)).seed == 9

    def test_origin_off_zero_set(self, plane, rng):
        """Test an ideal not vanishing at the origin is refused."""
        x, y = plane.gens
        with pytest.raises(ValidationError, match="origin"):
            segre_numbers(Ideal(plane, [x - 1, y]), rng)

    def test_zero_ideal(self, plane, rng):
        """Test the zero ideal is refused."""
        with pytest.raises(ValidationError):
            segre_numbers(Ideal(plane, []), rng)

    def test_nonzero_below_codimension(self, load_ideal, rng, monkeypatch):
        """Test a nonzero e_1 for an m-primary ideal is a genericity failure."""
        values = iter([1])
        monkeypatch.setattr('svsegre.mult.mult_at_origin', lambda *args: next(values, 0))
        with pytest.raises(GenericityError, match="below codimension 2 must vanish"):
            segre_numbers(load_ideal('x2y3.ideal'), rng)


class TestHilbertSamuel:
    """Tests for Hilbert-Samuel multiplicities of m-primary ideals."""

    @pytest.mark.parametrize('exponents,expected', [((2, 2), 4), ((1, 1), 1), ((2, 3), 6)])
    def test_monomial(self, plane, rng, exponents, expected):
        """Test e(x^a, y^b) = ab."""
        x, y = plane.gens
        a, b = exponents
        assert hs_multiplicity(Ideal(plane, [x**a, y**b]), rng) == expected

    def test_complete_intersection(self, plane, rng):
        """Test e(x^2 + y^3, xy) = 5."""
        x, y = plane.gens
        assert hs_multiplicity(Ideal(plane, [x**2 + y**3, x * y]), rng) == 5

    def test_not_m_primary(self, load_ideal, rng):
        """Test a curve through the origin is refused."""
        with pytest.raises(ValidationError, match="not m-primary"):
            hs_multiplicity(load_ideal('x2xy.ideal'), rng)

    def test_invariant_under_linear_change(self, plane):
        """Test e(J o A) = e(J) for invertible A."""
        x, y = plane.gens
        J = Ideal(plane, [x**2 + y**3, x * y])
        for seed in range(1, 4):
            A = random_linear_change(plane, RandomSource(seed))
            moved = linear_substitution(J, A)
            assert hs_multiplicity(moved, RandomSource(seed + 10)) == 5

    def test_singular_substitution(self, plane):
        """Test a singular matrix is refused."""
        x, y = plane.gens
        with pytest.raises(ValidationError, match="not invertible"):
            linear_substitution(Ideal(plane, [x, y]), [[1, 1], [1, 1]])


class TestAffineChart:
    """Tests for moving a projective point to the origin."""

    def test_twisted_cubic_at_vertex(self, load_ideal):
        """Test the chart x = 1 of the twisted cubic at (1:0:0:0)."""
        chart = affine_chart(load_ideal('twisted_cubic.ideal'), [1, 0, 0, 0])
        assert [str(s) for s in chart.ring.symbols] == ['y', 'z', 'w']
        y, z, w = chart.ring.gens
        assert chart.equals(Ideal(chart.ring, [z - y**2, w - y * z]))

    def test_point_off_the_curve(self, load_ideal):
        """Test a chart at a point off V(J) misses the origin."""
        chart = affine_chart(load_ideal('twisted_cubic.ideal'), [0, 1, 0, 0])
        assert not chart.vanishes_at_origin()

    def test_shifted_point(self, p2):
        """Test the chart at (1:1:0) of V(x - y) passes through the origin."""
        x, y, _ = p2.gens
        chart = affine_chart(Ideal(p2, [x - y]), [1, 1, 0])
        assert chart.vanishes_at_origin()

    def test_zero_point(self, p2):
        """Test the zero vector is not a point."""
        x, _, _ = p2.gens
        with pytest.raises(ValidationError, match="nonzero coordinate"):
            affine_chart(Ideal(p2, [x]), [0, 0, 0])

    def test_wrong_length(self, p2):
        """Test the coordinate count check."""
        x, _, _ = p2.gens
        with pytest.raises(ValidationError, match="needs 3 coordinates"):
            affine_chart(Ideal(p2, [x]), [1, 0])

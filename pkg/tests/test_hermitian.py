"""Tests for almost-Hermitian structures, compatibility, Nijenhuis and H."""

from random import Random

import pytest
from sympy import Rational

from akverify.core.errors import DimensionError
from akverify.core.matrix import Matrix, Vector
from akverify.geometry.curvature import levi_civita
from akverify.geometry.hodge import OrientationMismatchError, curvature_blocks
from akverify.geometry.metric import MetricFrame
from akverify.hermitian.blocks import householder_to_first_axis, wplus_J_blocks
from akverify.hermitian.compatibility import MAX_MONOMIALS, compatibility_system, solve_compatibility
from akverify.hermitian.connection import (
    Constant,
    NonConstant,
    UndecidedConstantHError,
    ZeroVectorError,
    canonical_connection,
    constant_H_test,
    hermitian_H,
    random_unit_vector,
)
from akverify.hermitian.nijenhuis import nijenhuis, nijenhuis_norm_ratio
from akverify.hermitian.structure import (
    AlmostHermitianStructure,
    DegenerateFormError,
    Incompatible,
    candidate_structures,
    circle_point,
    from_metric_and_omega,
    orientation_of,
    sphere_points,
)
from akverify.lie.catalog import instantiate
from akverify.lie.forms import InvariantForm
from akverify.scenarios.ds_kahler import ds_closed_basis, ds_metric, kahler_structures
from akverify.scenarios.r2prime import ak_structure_at, expected_H, expected_nijenhuis_f1f2, r2prime_algebra


def form(terms):
    return InvariantForm.from_terms(4, terms)


@pytest.fixture
def ds_algebra():
    """The dS algebra at lambda = 1."""
    return instantiate("dS", **{"lambda": 1})


@pytest.fixture
def kahler(ds_algebra):
    """The k = 2 structure with omega = -2 e14 + e23."""
    structures = kahler_structures(ds_algebra)
    return next(s for s in structures if s.omega.coefficient((1, 2)) > 0)


@pytest.fixture
def ak_r2prime():
    """The almost-Kahler r2prime structure at a1 = a6 = 1, (b2, b3) = (1, 0)."""
    g = r2prime_algebra()
    p, s, b2, b3 = ak_structure_at(g, Rational(1), Rational(0), Rational(0), Rational(1), Rational(0))
    return g, p, s, b2, b3


class TestStructure:
    """Test building structures from a metric and a 2-form."""

    def test_standard_structure(self):
        """Test that e12 + e34 gives J e1 = e2 on the identity metric."""
        g = instantiate("abelian")
        s = from_metric_and_omega(g, MetricFrame.identity(), form({(1, 2): 1, (3, 4): 1}))

        assert isinstance(s, AlmostHermitianStructure)
        assert s.apply(Vector.basis(4, 0)) == Vector.basis(4, 1)
        assert s.omega_orientation == 1
        assert s.is_self_dual()

    def test_incompatible(self):
        """Test that a stretched form does not square to -Id."""
        g = instantiate("abelian")
        result = from_metric_and_omega(g, MetricFrame.identity(), form({(1, 2): 2, (3, 4): 1}))

        assert isinstance(result, Incompatible)
        assert not result.defect.is_zero()

    def test_degenerate(self):
        """Test that omega ^ omega = 0 is rejected."""
        with pytest.raises(DegenerateFormError):
            from_metric_and_omega(instantiate("abelian"), MetricFrame.identity(), form({(1, 2): 1}))

    def test_orientation_of(self):
        """Test the sign of omega ^ omega."""
        assert orientation_of(form({(1, 2): 1, (3, 4): 1})) == 1
        assert orientation_of(form({(1, 2): 1, (3, 4): -1})) == -1
        assert orientation_of(form({(1, 2): 1, (1, 3): 1})) == 0

    def test_constructor_checks(self):
        """Test that a J with J^2 != -Id is refused."""
        m = MetricFrame.identity()
        with pytest.raises(ValueError, match="J\\^2"):
            AlmostHermitianStructure(m, Matrix.identity(4), form({(1, 2): 1, (3, 4): 1}))

    def test_ds_kahler_j(self, kahler, ds_algebra):
        """Test J e1 = -2 e4 and J e4 = e1/2 for the k = 2 structure."""
        assert kahler.J.col(0) == Vector([0, 0, 0, -2])
        assert kahler.J.col(3) == Vector([Rational(1, 2), 0, 0, 0])
        assert kahler.is_almost_kahler(ds_algebra)
        assert kahler.omega_orientation == -1

    def test_frame_matrix(self, kahler):
        """Test that the omega display is the transpose of J in the frame."""
        assert kahler.omega_display() == kahler.frame_matrix().T

    def test_circle_point(self):
        """Test rational points on the unit circle."""
        p, q = circle_point(Rational(1, 2))

        assert (p, q) == (Rational(3, 5), Rational(4, 5))
        assert circle_point(0) == (1, 0)

    def test_candidate_structures_closed(self, ds_algebra):
        """Test that sampled closed structures are almost-Kahler."""
        found = candidate_structures(ds_algebra, ds_metric(2), [circle_point(Rational(1))])

        assert found
        assert all(s.is_almost_kahler(ds_algebra) for s in found)

    def test_candidate_structures_abelian(self):
        """Test that every sampled form is closed on the abelian algebra."""
        found = candidate_structures(instantiate("abelian"), MetricFrame.identity(), [circle_point(Rational(1, 2))])

        # six unit vectors, two signs, two orientations
        assert len(found) == 24

    def test_sphere_points(self):
        """Test that sampled sphere points are unit vectors, some with no zero coordinate."""
        points = sphere_points([circle_point(Rational(1, 2)), circle_point(Rational(3))])

        assert all(x * x + y * y + z * z == 1 for x, y, z in points)
        assert (Rational(9, 25), Rational(12, 25), Rational(4, 5)) in points
        assert sum(all(c != 0 for c in u) for u in points) == 9

    def test_candidate_structures_generic(self):
        """Test that structures off the coordinate circles of the sphere are sampled."""
        found = candidate_structures(instantiate("abelian"), MetricFrame.identity(), [circle_point(Rational(1, 2))])
        generic = [s for s in found if all(c != 0 for c in s.omega.coefficients)]

        assert len(generic) == 12
        assert all(s.is_almost_kahler(instantiate("abelian")) for s in generic)


class TestCompatibility:
    """Test the lifted compatibility system."""

    def test_ds_k2_unique(self):
        """Test that k = 2 forces a = b = 0 and c = +-1."""
        solution = solve_compatibility(ds_metric(2), ds_closed_basis())

        assert solution.unique
        assert {tuple(p.entries) for p in solution.points} == {(0, 0, 1), (0, 0, -1)}
        assert solution.implied_value({(0, 0): 1}) == 0
        assert solution.implied_value({(2, 2): 1}) == 1

    @pytest.mark.parametrize("k", [1, 3, Rational(1, 2)])
    def test_ds_other_k_inconsistent(self, k):
        """Test that no closed form is compatible unless k^2 = 4."""
        solution = solve_compatibility(ds_metric(k), ds_closed_basis())

        assert not solution.consistent
        assert solution.points == ()
        assert solution.implied_value({(0, 0): 1}) is None

    def test_recovered_forms(self):
        """Test that the recovered forms are +-(-2 e14 + e23)."""
        basis = ds_closed_basis()
        forms = solve_compatibility(ds_metric(2), basis).forms(basis)

        assert form({(1, 4): -2, (2, 3): 1}) in forms
        assert form({(1, 4): 2, (2, 3): -1}) in forms

    def test_underdetermined_family(self):
        """Test the Lambda+ family of the identity metric, which has a whole sphere of solutions."""
        family = [form({(1, 2): 1, (3, 4): 1}), form({(1, 3): 1, (2, 4): -1}), form({(1, 4): 1, (2, 3): 1})]
        solution = solve_compatibility(MetricFrame.identity(), family)

        assert solution.consistent
        assert not solution.unique
        assert solution.implied_value({(0, 0): 1, (1, 1): 1, (2, 2): 1}) == 1
        assert solution.implied_value({(0, 0): 1}) is None

    def test_monomial_limit(self):
        """Test that oversized families are refused."""
        family = [form({(1, 2): 1})] * 6

        with pytest.raises(DimensionError, match=str(MAX_MONOMIALS)):
            compatibility_system(MetricFrame.identity(), family)

    def test_empty_family(self):
        """Test that a family needs at least one form."""
        with pytest.raises(DimensionError, match="Empty"):
            compatibility_system(MetricFrame.identity(), [])


class TestNijenhuis:
    """Test the Nijenhuis tensor."""

    def test_kahler_is_integrable(self, kahler, ds_algebra):
        """Test N = 0 for the dS Kahler structures."""
        assert nijenhuis(ds_algebra, kahler).is_zero()

    def test_abelian_is_integrable(self):
        """Test that constant J on an abelian algebra is integrable."""
        g = instantiate("abelian")
        s = from_metric_and_omega(g, MetricFrame.identity(), form({(1, 3): 1, (2, 4): 1}))

        assert nijenhuis(g, s).is_zero()

    def test_r2prime_ak_value(self, ak_r2prime):
        """Test the f2-coefficient of N(f1, f2) on the almost-Kahler family."""
        g, p, s, b2, b3 = ak_r2prime
        tensor = nijenhuis(g, s)

        assert not tensor.is_zero()
        assert tensor.frame_value(0, 1)[1] == expected_nijenhuis_f1f2(p["a1"], b2, b3)

    def test_antisymmetric(self, ak_r2prime):
        """Test N(X, Y) = -N(Y, X) on general vectors."""
        g, _, s, _, _ = ak_r2prime
        tensor = nijenhuis(g, s)
        x = Vector([1, 2, 0, -1])
        y = Vector([0, 1, 3, 1])

        assert tensor(x, y) == -tensor(y, x)

    def test_norm_ratio_undefined_when_zero(self, kahler, ds_algebra):
        """Test that the ratio is None for an integrable structure."""
        assert nijenhuis_norm_ratio(Rational(1), nijenhuis(ds_algebra, kahler)) is None


class TestHermitianCurvature:
    """Test the canonical connection and H."""

    def test_kahler_connection_is_levi_civita(self, kahler, ds_algebra):
        """Test that DJ = 0 leaves the Levi-Civita connection unchanged."""
        m = kahler.metric

        assert canonical_connection(ds_algebra, m, kahler).matrices == levi_civita(ds_algebra, m).matrices

    def test_kahler_h_constant(self, kahler, ds_algebra):
        """Test constant H = -1 on the complex hyperbolic plane."""
        verdict = constant_H_test(ds_algebra, kahler.metric, kahler)

        assert isinstance(verdict, Constant)
        assert verdict.kappa == -1
        assert verdict.constant

    def test_r2prime_h_values(self, ak_r2prime):
        """Test H on the orthonormal frame of the almost-Kahler family."""
        g, p, s, b2, b3 = ak_r2prime
        m = s.metric
        values = tuple(hermitian_H(g, m, s, m.frame_vector(i)) for i in range(4))

        assert values == expected_H(p["a1"], b2, b3)

    def test_r2prime_h_not_constant(self, ak_r2prime):
        """Test that the polarization test returns a witness pair."""
        g, _, s, _, _ = ak_r2prime
        verdict = constant_H_test(g, s.metric, s)

        assert isinstance(verdict, NonConstant)
        assert not verdict.constant
        assert verdict.first_value != verdict.second_value

    def test_no_witness_found(self, ak_r2prime, mocker):
        """Test that a non-constant H without a differing pair raises a typed error."""
        g, _, s, _, _ = ak_r2prime
        mocker.patch("akverify.hermitian.connection.hermitian_H", return_value=Rational(1))

        with pytest.raises(UndecidedConstantHError, match="no witness pair was found in 3 attempts"):
            constant_H_test(g, s.metric, s, attempts=3)

    def test_zero_vector(self, kahler, ds_algebra):
        """Test that H is undefined at 0."""
        with pytest.raises(ZeroVectorError):
            hermitian_H(ds_algebra, kahler.metric, kahler, Vector.zeros(4))

    def test_random_unit_vector(self):
        """Test that the sampled vectors have unit length."""
        m = ds_metric(2)
        rng = Random(3)
        for _ in range(5):
            assert m.norm_squared(random_unit_vector(m, rng)) == 1


class TestWplusBlocks:
    """Test W+ adapted to omega."""

    def test_householder(self):
        """Test that the reflection sends c to e1 and is an involution."""
        c = Vector([0, Rational(3, 5), Rational(4, 5)])
        H = householder_to_first_axis(c)

        assert H @ c == Vector([1, 0, 0])
        assert H @ H == Matrix.identity(3)

    def test_householder_identity(self):
        """Test the degenerate case c = e1."""
        assert householder_to_first_axis(Vector([1, 0, 0])) == Matrix.identity(3)

    def test_kahler_blocks(self, kahler, ds_algebra):
        """Test topleft = s/6 and zero Nijenhuis norm in the omega orientation."""
        m = kahler.metric.with_orientation(kahler.omega_orientation)
        blocks = curvature_blocks(ds_algebra, m)
        decomposition = wplus_J_blocks(ds_algebra, m, kahler, blocks)

        assert decomposition.topleft == blocks.scalar / 6
        assert decomposition.nijenhuis_norm_squared == 0
        assert decomposition.reassemble() == blocks.wplus
        assert decomposition.norm_identity_rhs() == blocks.wplus.frobenius_squared()

    def test_r2prime_norm_identity(self, ak_r2prime):
        """Test the W+ norm split on a non-integrable structure."""
        g, _, s, _, _ = ak_r2prime
        m = s.metric.with_orientation(s.omega_orientation)
        blocks = curvature_blocks(g, m)
        decomposition = wplus_J_blocks(g, m, s, blocks)

        assert decomposition.reassemble() == blocks.wplus
        assert decomposition.norm_identity_rhs() == blocks.wplus.frobenius_squared()

    def test_orientation_mismatch(self, kahler, ds_algebra):
        """Test that omega must be self-dual for the metric orientation."""
        m = kahler.metric.with_orientation(-kahler.omega_orientation)

        with pytest.raises(OrientationMismatchError):
            wplus_J_blocks(ds_algebra, m, kahler)

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from freelevy import catalog_get
from freelevy.calculus import (
    ClassicalSpec,
    bercovici_pata,
    bercovici_pata_inverse,
    boxplus,
    boxpower,
    classical_convolve,
    classical_delta,
    classical_dilate,
    classical_shift,
    dilate,
    shift,
)
from freelevy.errors import ConfigError, UnsupportedRepresentation
from freelevy.measures import CharTriplet, LevyMeasure
from freelevy.transforms import DistributionSpec, density_grid, eval_cumulant

Z = np.array([-0.3 - 0.2j, 0.4 - 1j, -1.5 - 0.05j, -0.01j, 2 - 3j])


def semicircle(eta=0.0, a=1.0):
    return catalog_get("semicircle", eta=eta, a=a).spec


def free_poisson(lam=1.0):
    return catalog_get("free_poisson", lam=lam).spec


def both_routes(spec, z=Z):
    return eval_cumulant(spec, z, route="closed"), eval_cumulant(spec, z, route="triplet")


def test_sum_of_point_masses():
    out = boxplus(DistributionSpec.delta(1.5), DistributionSpec.delta(-0.25))
    assert out.atom_location == 1.25
    np.testing.assert_allclose(eval_cumulant(out, Z), 1.25 * Z)


def test_sum_of_semicircles_is_wider_semicircle():
    out = boxplus(semicircle(), semicircle())
    np.testing.assert_allclose(eval_cumulant(out, Z), 2 * Z**2, atol=1e-15)
    assert out.triplet.a == 2
    grid = density_grid(out, -3.5, 3.5, 701)
    assert grid.value_at(0.0) == pytest.approx(np.sqrt(2) / (2 * np.pi), abs=1e-6)
    assert grid.value_at(0.0) == pytest.approx(0.225079, abs=1e-6)


def test_sum_of_free_poissons_adds_triplets():
    one = free_poisson()
    out = boxplus(one, one)
    assert out.triplet.a == 0
    assert out.triplet.nu.atoms == ((1.0, 2.0),)
    assert out.triplet.eta == pytest.approx(2 * one.triplet.eta)
    closed, quad = both_routes(out)
    np.testing.assert_allclose(closed, quad, atol=1e-14)


def test_dilated_point_mass():
    assert dilate(DistributionSpec.delta(1.0), 3.0).atom_location == 3.0


@pytest.mark.parametrize("c", [2.0, 0.5, -1.0, -3.0])
def test_dilated_semicircle(c):
    out = dilate(semicircle(), c)
    assert out.triplet.a == pytest.approx(c * c)
    np.testing.assert_allclose(eval_cumulant(out, Z), c * c * Z**2, rtol=1e-14)


def test_dilated_free_poisson_moves_atom_and_drift():
    base = free_poisson()
    out = dilate(base, 2.0)
    assert out.triplet.nu.atoms == ((2.0, 1.0),)
    # 2η plus 2·1·(1_{[-1,1]}(2) - 1_{[-1,1]}(1)) = 2 - 2
    assert out.triplet.eta == pytest.approx(2 * base.triplet.eta - 2)
    closed, quad = both_routes(out)
    np.testing.assert_allclose(quad, eval_cumulant(base, 2 * Z), atol=1e-13)
    np.testing.assert_allclose(closed, quad, atol=1e-13)


@pytest.mark.parametrize(
    "name, params",
    [("free_gamma", {"t": 1.0, "c": 1.0}), ("mu_p", {"p": 0.5}), ("mu_pp", {"p": 1.5}), ("free_poisson", {"lam": 2.0})],
)
@pytest.mark.parametrize("c", [0.3, 1.7, -0.6, -2.5])
def test_dilation_commutes_with_the_quadrature(name, params, c):
    out = dilate(catalog_get(name, params).spec, c)
    closed, quad = both_routes(out)
    np.testing.assert_allclose(closed, quad, atol=1e-7)


def test_dilation_by_zero_is_rejected():
    with pytest.raises(ConfigError):
        dilate(semicircle(), 0.0)


@given(st.floats(0.05, 10))
def test_semicircle_is_two_stable(t):
    lhs = eval_cumulant(boxpower(semicircle(), t), Z)
    rhs = eval_cumulant(dilate(semicircle(), np.sqrt(t)), Z)
    np.testing.assert_allclose(lhs, rhs, rtol=1e-12)


@given(st.floats(-3, 3))
def test_shift_adds_drift(b):
    spec = shift(free_poisson(2.0), b)
    np.testing.assert_allclose(eval_cumulant(spec, Z), eval_cumulant(free_poisson(2.0), Z) + b * Z, atol=1e-12)
    assert spec.triplet.eta == pytest.approx(2.0 + b)


def gaussian(var=1.0):
    return ClassicalSpec(CharTriplet(var, LevyMeasure(), 0.0), "gaussian")


def classical_poisson(lam=1.0):
    return ClassicalSpec(CharTriplet(0.0, LevyMeasure.point(1.0, lam), lam), "poisson")


def test_bercovici_pata_of_gaussian_is_semicircle():
    np.testing.assert_allclose(eval_cumulant(bercovici_pata(gaussian()), Z), Z**2, rtol=1e-14)


def test_bercovici_pata_fixes_point_masses():
    out = bercovici_pata(classical_delta(1.7))
    assert out.atom_location == 1.7


def test_bercovici_pata_of_poisson_is_free_poisson():
    out = bercovici_pata(classical_poisson())
    assert out.triplet == free_poisson().triplet
    np.testing.assert_allclose(eval_cumulant(out, Z), eval_cumulant(free_poisson(), Z), atol=1e-14)


def test_inverse_needs_a_triplet():
    with pytest.raises(UnsupportedRepresentation):
        bercovici_pata_inverse(DistributionSpec("closed", cumulant=lambda z: z * z))


CLASSICAL = [gaussian(0.5), classical_poisson(2.0), classical_delta(-1.0)]


@pytest.mark.parametrize("first", CLASSICAL)
@pytest.mark.parametrize("second", CLASSICAL)
def test_bercovici_pata_is_a_homomorphism(first, second):
    lhs = bercovici_pata(classical_convolve(first, second))
    rhs = boxplus(bercovici_pata(first), bercovici_pata(second))
    np.testing.assert_allclose(eval_cumulant(lhs, Z), eval_cumulant(rhs, Z), atol=1e-13)


@pytest.mark.parametrize("cs", CLASSICAL)
@pytest.mark.parametrize("c", [2.0, -0.5])
@pytest.mark.parametrize("b", [0.0, 1.3])
def test_bercovici_pata_commutes_with_affine_maps(cs, c, b):
    lhs = bercovici_pata(classical_shift(classical_dilate(cs, c), b))
    rhs = shift(dilate(bercovici_pata(cs), c), b)
    np.testing.assert_allclose(eval_cumulant(lhs, Z), eval_cumulant(rhs, Z), atol=1e-13)


@pytest.mark.parametrize("cs", CLASSICAL)
def test_bercovici_pata_round_trip(cs):
    assert bercovici_pata_inverse(bercovici_pata(cs)).triplet == cs.triplet

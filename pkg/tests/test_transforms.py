import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from freelevy import catalog_get
from freelevy.errors import DomainError, RejectedInput, SolverError, UnsupportedRepresentation
from freelevy.measures import CharTriplet, LevyMeasure
from freelevy.transforms import (
    DistributionSpec,
    cauchy_transform,
    density_grid,
    eval_cumulant,
    eval_cumulant_derivative,
    f_inverse_solve,
    point_density,
    support_bounds,
    voiculescu,
)

SQRT2 = np.sqrt(2.0)


def triplet_only(name, **params):
    spec = catalog_get(name, params).spec
    return DistributionSpec.from_triplet(spec.triplet, label=f"{name} (triplet)")


def gamma_cauchy(z):
    """G of γ(1,1) with √(z²-6z+1) taken as a product of principal roots."""
    lo, hi = 3 - 2 * SQRT2, 3 + 2 * SQRT2
    return (3 * z - 1 - np.sqrt(z - lo) * np.sqrt(z - hi)) / (2 * z * z)


@pytest.mark.parametrize(
    "spec, z, want, tol",
    [
        (DistributionSpec.delta(3.0), -0.5j, -1.5j, 1e-15),
        (DistributionSpec.from_triplet(CharTriplet(0.0, LevyMeasure(), 3.0)), -0.5j, -1.5j, 1e-15),
        (DistributionSpec.from_triplet(CharTriplet(1.0, LevyMeasure(), 0.0)), -1j, -1.0, 1e-15),
        (triplet_only("free_gamma", t=1, c=1), -0.1, (1 - np.sqrt(1.4)) / 2, 1e-8),
    ],
)
def test_cumulant_examples(spec, z, want, tol):
    z = complex(z) if np.imag(z) < 0 else complex(np.real(z), -1e-300)
    assert eval_cumulant(spec, z) == pytest.approx(want, abs=tol)


def test_free_gamma_quadrature_value_to_seven_digits():
    # the closed form rounded to the printed digits
    got = eval_cumulant(triplet_only("free_gamma", t=1, c=1), complex(-0.1, -1e-300))
    assert got.real == pytest.approx(-0.0916080, abs=5e-8)


@pytest.mark.parametrize("z", [0.5, 1j, 0.2 + 0j])
def test_cumulant_outside_lower_half_plane_is_a_domain_error(z):
    with pytest.raises(DomainError):
        eval_cumulant(catalog_get("semicircle").spec, z)


def test_route_without_triplet_is_unsupported():
    spec = DistributionSpec("closed only", cumulant=lambda z: z * z)
    with pytest.raises(UnsupportedRepresentation):
        eval_cumulant(spec, -1j, route="triplet")


@pytest.mark.parametrize(
    "spec, w, want",
    [
        (DistributionSpec.delta(1.5), 2 + 1j, 0.5 + 1j),
        # u + 1/u = w with w = 2.5i
        (catalog_get("semicircle").spec, 2.5j, 0.5j * (2.5 + np.sqrt(10.25))),
        (triplet_only("semicircle", eta=0.0, a=1.0), 2.5j, 0.5j * (2.5 + np.sqrt(10.25))),
        (catalog_get("free_gamma", t=1, c=1).spec, 6j, 1 / gamma_cauchy(6j)),
        (triplet_only("free_gamma", t=1, c=1), 6j, 1 / gamma_cauchy(6j)),
    ],
)
def test_f_inverse_examples(spec, w, want):
    assert f_inverse_solve(spec, w) == pytest.approx(want, abs=1e-9)


def test_semicircle_solve_printed_digits():
    assert f_inverse_solve(catalog_get("semicircle").spec, 2.5j).imag == pytest.approx(2.85078, abs=5e-6)


@pytest.mark.parametrize(
    "spec, w, want",
    [
        (DistributionSpec.delta(0.0), 1j, -1j),
        (catalog_get("semicircle").spec, 1j, (1j - np.sqrt(-5 + 0j)) / 2),
        (catalog_get("free_gamma", t=1, c=1).spec, 1 + 2j, gamma_cauchy(1 + 2j)),
        (triplet_only("free_gamma", t=1, c=1), 1 + 2j, gamma_cauchy(1 + 2j)),
        (catalog_get("free_poisson", lam=2.0).spec, -0.5 + 0.3j, None),
    ],
)
def test_cauchy_transform_examples(spec, w, want):
    got = cauchy_transform(spec, w)
    assert got.imag < 0
    if want is not None:
        assert got == pytest.approx(want, abs=1e-9)


def test_semicircle_cauchy_printed_digits():
    assert cauchy_transform(catalog_get("semicircle").spec, 1j) == pytest.approx(-0.61803j, abs=5e-6)


def test_free_gamma_moments_from_large_arguments():
    spec = catalog_get("free_gamma", t=1, c=1).spec
    y = 1e3
    z = 1j * y
    g = cauchy_transform(spec, z)
    # G = 1/z + 1/z² + 2/z³ + O(z⁻⁴)
    assert abs(g - (1 / z + 1 / z**2 + 2 / z**3)) < 10 / y**4


@pytest.mark.parametrize("name, params", [("semicircle", {}), ("free_gamma", {"t": 2.0, "c": 0.5}), ("mu_p", {"p": 0.3})])
def test_w_times_g_tends_to_one(name, params):
    spec = catalog_get(name, params).spec
    errs = [abs(y * 1j * cauchy_transform(spec, y * 1j) - 1) for y in (1e1, 1e2, 1e3)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 1e-2


def test_solver_rejects_real_arguments():
    with pytest.raises(DomainError):
        f_inverse_solve(catalog_get("semicircle").spec, 1.0 + 0j)


def test_solver_failure_carries_diagnostics():
    spec = catalog_get("free_gamma", t=1, c=1).spec
    with pytest.raises(SolverError) as info:
        f_inverse_solve(spec, 1 + 1e-3j, max_iter=1, tol=1e-15)
    assert "last_iterate" in info.value.diagnostics


def test_not_infinitely_divisible_law_is_rejected():
    spec = catalog_get("mu_p", p=-0.5).spec
    with pytest.raises(RejectedInput):
        point_density(spec, 0.5)


@pytest.mark.parametrize(
    "name, params",
    [
        ("semicircle", {"eta": 0.5, "a": 2.0}),
        ("free_gamma", {"t": 1.0, "c": 1.0}),
        ("mu_p", {"p": 0.5}),
        ("mu_pp", {"p": 1.5}),
        ("free_poisson", {"lam": 3.0}),
    ],
)
def test_voiculescu_maps_upper_half_plane_into_closed_lower(name, params):
    spec = catalog_get(name, params).spec
    r = np.logspace(-2, 2, 15)
    th = np.linspace(0.05, np.pi - 0.05, 12)
    u = (r[:, None] * np.exp(1j * th[None, :])).ravel()
    assert np.all(voiculescu(spec, u).imag <= 1e-12)


@given(st.floats(-4, 4), st.floats(0.05, 5))
def test_solve_round_trip(re, im):
    spec = catalog_get("free_gamma", t=1, c=1).spec
    w = complex(re, im)
    u = f_inverse_solve(spec, w)
    assert u.imag > 0
    assert abs(u + voiculescu(spec, u) - w) <= 1e-10 * (1 + abs(w))


@given(st.floats(-2, 2), st.floats(-2, -0.01))
def test_closed_and_quadrature_derivatives_agree(re, im):
    z = complex(re, im)
    closed = catalog_get("mu_p", p=0.5).spec
    quad = triplet_only("mu_p", p=0.5)
    assert eval_cumulant_derivative(closed, z) == pytest.approx(eval_cumulant_derivative(quad, z), abs=1e-7)


def test_semicircle_density_grid():
    grid = density_grid(catalog_get("semicircle").spec, -3, 3, 601)
    assert grid.value_at(0.0) == pytest.approx(1 / np.pi, abs=1e-6)
    assert grid.value_at(2.5) == 0 and grid.value_at(-2.5) == 0
    assert grid.support_lo == pytest.approx(-2, abs=1e-3)
    assert grid.support_hi == pytest.approx(2, abs=1e-3)
    assert grid.check_mass()


def test_free_gamma_density_grid():
    grid = density_grid(catalog_get("free_gamma", t=1, c=1).spec, 0, 6, 601)
    assert grid.value_at(1.0) == pytest.approx(1 / np.pi, abs=1e-6)
    assert grid.support_lo == pytest.approx(3 - 2 * SQRT2, abs=1e-3)
    assert grid.support_hi == pytest.approx(3 + 2 * SQRT2, abs=1e-3)


@pytest.mark.parametrize("x", [-1.7, -0.4, 0.0, 1.1, 1.95])
def test_point_density_matches_closed_semicircle(x):
    want = np.sqrt(4 - x * x) / (2 * np.pi)
    assert point_density(catalog_get("semicircle").spec, x) == pytest.approx(want, abs=1e-6)


@pytest.mark.parametrize(
    "name, params, lo, hi",
    [
        ("semicircle", {"eta": 1.0, "a": 0.25}, 0.0, 2.0),
        ("free_gamma", {"t": 1.0, "c": 1.0}, 3 - 2 * SQRT2, 3 + 2 * SQRT2),
        ("free_poisson", {"lam": 4.0}, 1.0, 9.0),
    ],
)
def test_support_bounds(name, params, lo, hi):
    got = support_bounds(catalog_get(name, params).spec)
    np.testing.assert_allclose(got, (lo, hi), atol=1e-7)

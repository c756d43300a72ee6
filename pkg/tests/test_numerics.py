import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from freelevy import _dual, quadrature
from freelevy.errors import QuadratureError


@pytest.mark.parametrize(
    "f, a, b, exact",
    [
        (lambda x, dlo, dhi: x**2, 0.0, 1.0, 1 / 3),
        (lambda x, dlo, dhi: np.exp(x), -1.0, 2.0, math.e**2 - math.exp(-1)),
        # endpoint singularities written through the exact distances
        (lambda x, dlo, dhi: 1 / np.sqrt(dlo), 0.0, 1.0, 2.0),
        (lambda x, dlo, dhi: 1 / np.sqrt(dlo * dhi), 0.0, 1.0, math.pi),
        (lambda x, dlo, dhi: dhi**-0.75, 0.0, 2.0, 4 * 2**0.25),
    ],
)
def test_tanh_sinh_matches_closed_integrals(f, a, b, exact):
    val, err = quadrature.integrate_real(f, a, b)
    assert val == pytest.approx(exact, rel=1e-11)
    assert err < 1e-9


def test_batched_integrand_converges_per_member():
    ks = np.array([1.0, 2.0, 5.0])

    def f(x, dlo, dhi, sel):
        return np.cos(ks[sel][None, :] * x[:, None])

    val, _ = quadrature.integrate(f, 0.0, 1.0, 3)
    np.testing.assert_allclose(val.real, np.sin(ks) / ks, rtol=1e-12)


def test_stalled_refinement_raises_with_diagnostics():
    with pytest.raises(QuadratureError) as info:
        quadrature.integrate_real(lambda x, dlo, dhi: np.sign(x - 0.3), 0.0, 1.0, max_level=4)
    assert "unconverged" in info.value.diagnostics


def test_bad_interval_is_rejected():
    with pytest.raises(ValueError):
        quadrature.integrate_real(lambda x, dlo, dhi: x, 1.0, 0.0)


@given(st.floats(-3, 3), st.floats(-3, -0.05))
def test_dual_sqrt_matches_analytic_derivative(re, im):
    z = complex(re, im)
    d = _dual.complex_step_derivative(lambda w: _dual.csqrt(1 - 4 * w), np.array([z]))[0]
    assert d == pytest.approx(-2 / np.sqrt(1 - 4 * z), rel=1e-13)


@given(st.floats(-0.9, 0.9), st.floats(-2, 2), st.floats(-2, -0.1))
def test_dual_power_matches_analytic_derivative(p, re, im):
    z = np.array([complex(re, im)])
    d = _dual.complex_step_derivative(lambda w: _dual.cpow(1 - w, p) * w + 1 / (2 - w), z)
    want = -p * (1 - z) ** (p - 1) * z + (1 - z) ** p + 1 / (2 - z) ** 2
    np.testing.assert_allclose(d, want, rtol=1e-12)


def test_dual_requires_propagation():
    with pytest.raises(TypeError):
        _dual.complex_step_derivative(lambda w: 3.0, np.array([1 - 1j]))


def test_contour_derivative_is_a_fallback_for_plain_callables():
    f = lambda w: np.exp(np.asarray(w) ** 2)  # noqa: E731
    z = np.array([0.3 - 0.5j, -1 - 2j])
    np.testing.assert_allclose(_dual.contour_derivative(f, z), 2 * z * np.exp(z**2), rtol=1e-10)

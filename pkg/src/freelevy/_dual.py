"""Forward-mode differentiation of holomorphic closed forms.

The classical complex-step trick ``Im f(x + ih) / h`` needs a real argument.
Our cumulant transforms are already complex valued, so the step is taken
along an independent infinitesimal unit instead: a :class:`Dual` carries
``value + deriv * eps`` with ``eps**2 == 0``.  This is the ``h -> 0`` limit of
the complex step and, like it, involves no subtractive cancellation.

Closed forms that should be differentiable this way must be written with
arithmetic operators and the helpers :func:`csqrt` and :func:`cpow`.
"""

from __future__ import annotations

import numpy as np


class Dual:
    __slots__ = ("value", "deriv")

    def __init__(self, value, deriv=0.0):
        self.value = np.asarray(value, dtype=complex)
        self.deriv = np.asarray(deriv, dtype=complex)

    def _lift(self, other):
        if isinstance(other, Dual):
            return other
        return Dual(other, 0.0)

    def __add__(self, other):
        o = self._lift(other)
        return Dual(self.value + o.value, self.deriv + o.deriv)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.value, -self.deriv)

    def __sub__(self, other):
        o = self._lift(other)
        return Dual(self.value - o.value, self.deriv - o.deriv)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return Dual(self.value * o.value, self.deriv * o.value + self.value * o.deriv)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        return Dual(
            self.value / o.value,
            (self.deriv * o.value - self.value * o.deriv) / o.value**2,
        )

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, p):
        if isinstance(p, Dual):
            raise TypeError("dual exponents are not supported")
        if p == 0:
            return Dual(np.ones_like(self.value), np.zeros_like(self.value))
        return Dual(self.value**p, p * self.value ** (p - 1) * self.deriv)

    def __repr__(self):
        return f"Dual({self.value!r}, {self.deriv!r})"


def csqrt(x):
    """Principal square root for arrays or :class:`Dual` values."""
    if isinstance(x, Dual):
        r = np.sqrt(x.value)
        return Dual(r, x.deriv / (2 * r))
    return np.sqrt(np.asarray(x, dtype=complex))


def cpow(x, p):
    """Principal branch ``x**p`` for arrays or :class:`Dual` values."""
    if isinstance(x, Dual):
        return x**p
    return np.asarray(x, dtype=complex) ** p


def complex_step_derivative(f, z):
    """Derivative of a holomorphic ``f`` at ``z`` by an infinitesimal step.

    Raises ``TypeError`` when ``f`` cannot propagate a :class:`Dual`.
    """
    z = np.asarray(z, dtype=complex)
    out = f(Dual(z, np.ones_like(z)))
    if not isinstance(out, Dual):
        # constant closed form, e.g. a lambda returning 0 * z
        raise TypeError("function did not propagate the dual part")
    return np.broadcast_to(out.deriv, z.shape).copy()


def contour_derivative(f, z, radius=None, n=32):
    """Derivative via the trapezoid rule on a Cauchy circle.

    Fallback for callables that only accept plain arrays.  The circle stays
    within ``radius`` of ``z`` (default: a quarter of ``|Im z|``) so that it
    does not cross the real axis.
    """
    z = np.asarray(z, dtype=complex)
    if radius is None:
        radius = 0.25 * np.maximum(np.abs(z.imag), 1e-8)
    radius = np.asarray(radius, dtype=float)
    theta = 2 * np.pi * np.arange(n) / n
    e = np.exp(1j * theta)
    pts = z[..., None] + radius[..., None] * e
    vals = np.asarray(f(pts.reshape(-1))).reshape(pts.shape)
    return np.mean(vals * np.conj(e), axis=-1) / radius

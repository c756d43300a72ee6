"""Free additive convolution, dilation and the Bercovici–Pata bijection.

Closed forms compose as functions, triplets compose componentwise.  A
result carries a closed form when at least one input has one (the other
input then enters through its Lévy integral) and a triplet when both
inputs have one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _dual
from .errors import ConfigError, UnsupportedRepresentation
from .measures import (
    CharTriplet,
    add_triplets,
    dilate_triplet,
    eval_classical_cumulant,
    scale_triplet,
    shift_triplet,
)
from .transforms import (
    DistributionSpec,
    _cumulant_unchecked,
    _derivative_unchecked,
    complex_step,
)


def _closed_or_integral(spec):
    """``C`` of ``spec`` as a callable, preferring the closed form."""
    if spec.cumulant is not None:
        return spec.cumulant
    return lambda z: _cumulant_unchecked(spec, z, "triplet")


def _derivative_callable(spec):
    if spec.cumulant is not None and spec.derivative is not None:
        return spec.derivative
    if spec.cumulant is not None:
        return lambda z: complex_step(spec.cumulant, z)
    return lambda z: _derivative_unchecked(spec, z, "triplet")


def _sum_tag(t1, t2):
    if t1 is None or t2 is None:
        return None
    return f"{t1} + {t2}"


def boxplus(d1, d2, label=None):
    """``d1 ⊞ d2``: cumulants add, triplets add componentwise."""
    triplet = add_triplets(d1.triplet, d2.triplet) if d1.triplet and d2.triplet else None
    cumulant = derivative = None
    if d1.cumulant is not None or d2.cumulant is not None:
        c1, c2 = _closed_or_integral(d1), _closed_or_integral(d2)
        e1, e2 = _derivative_callable(d1), _derivative_callable(d2)

        def cumulant(z):
            return c1(z) + c2(z)

        def derivative(z):
            return e1(z) + e2(z)

    point = None
    if d1.atom_location is not None and d2.atom_location is not None:
        point = d1.atom_location + d2.atom_location
    return DistributionSpec(
        label or f"({d1.label} ⊞ {d2.label})",
        cumulant=cumulant,
        derivative=derivative,
        triplet=triplet,
        tag=_sum_tag(d1.tag, d2.tag),
        sd_excluded=d1.sd_excluded or d2.sd_excluded,
        point_mass=point,
    )


def _dilated_closed(f, df, c):
    """``z -> C(cz)``; for ``c < 0`` the argument leaves ℂ⁻ and the
    reflection ``C(w) = conj C(conj w)`` brings it back."""
    if c > 0:

        def cumulant(z):
            return f(c * z)

        def derivative(z):
            return c * df(c * z)

        return cumulant, derivative

    def derivative(z):
        z = np.asarray(z, dtype=complex)
        return c * np.conj(df(c * np.conj(z)))

    def cumulant(z):
        if isinstance(z, _dual.Dual):
            return _dual.Dual(np.conj(f(c * np.conj(z.value))), derivative(z.value) * z.deriv)
        z = np.asarray(z, dtype=complex)
        return np.conj(f(c * np.conj(z)))

    return cumulant, derivative


def dilate(d, c, label=None):
    """``D_c d``, the law of ``cX``: ``C(z) -> C(cz)``.

    The triplet becomes ``(c²a, ν∘(·/c), cη + c∫x(1_{[-1,1]}(cx) - 1_{[-1,1]}(x))ν(dx))``.
    Negative ``c`` reflects the measure.
    """
    c = float(c)
    if c == 0 or not np.isfinite(c):
        raise ConfigError("dilation factor must be finite and non-zero")
    triplet = dilate_triplet(d.triplet, c) if d.triplet is not None else None
    cumulant = derivative = None
    if d.cumulant is not None:
        cumulant, derivative = _dilated_closed(d.cumulant, _derivative_callable(d), c)
    point = None if d.atom_location is None else c * d.atom_location
    return DistributionSpec(
        label or f"D_{c:g}({d.label})",
        cumulant=cumulant,
        derivative=derivative,
        triplet=triplet,
        tag=None if d.tag is None else f"({d.tag})[z -> {c:g}z]",
        sd_excluded=d.sd_excluded,
        point_mass=point,
    )


def boxpower(d, t, label=None):
    """``d^{⊞t}`` for ``t >= 0``: ``C -> tC``."""
    t = float(t)
    if t < 0:
        raise ConfigError("⊞-powers need t >= 0")
    if t == 0:
        return DistributionSpec.delta(0.0)
    triplet = scale_triplet(d.triplet, t) if d.triplet is not None else None
    cumulant = derivative = None
    if d.cumulant is not None:
        f, df = d.cumulant, _derivative_callable(d)

        def cumulant(z):
            return t * f(z)

        def derivative(z):
            return t * df(z)

    point = None if d.atom_location is None else t * d.atom_location
    return DistributionSpec(
        label or f"({d.label})^⊞{t:g}",
        cumulant=cumulant,
        derivative=derivative,
        triplet=triplet,
        tag=None if d.tag is None else f"{t:g}*({d.tag})",
        sd_excluded=d.sd_excluded,
        point_mass=point,
    )


def shift(d, b, label=None):
    """``d ⊞ δ_b``."""
    return boxplus(d, DistributionSpec.delta(b), label=label or f"({d.label}) + {b:g}")


def difference(d1, d2, label=None):
    """Spec with ``C = C₁ - C₂``.  Only meaningful when the result is known to
    be ⊞-infinitely divisible (e.g. ``C_μ(z) - C_μ(cz)`` for selfdecomposable
    ``μ``); no triplet is attached."""
    c1, c2 = _closed_or_integral(d1), _closed_or_integral(d2)
    e1, e2 = _derivative_callable(d1), _derivative_callable(d2)
    return DistributionSpec(
        label or f"({d1.label} ⊟ {d2.label})",
        cumulant=lambda z: c1(z) - c2(z),
        derivative=lambda z: e1(z) - e2(z),
        sd_excluded=True,
    )


# ---------------------------------------------------------------------------
# classical side and the Bercovici–Pata bijection
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassicalSpec:
    """A classically infinitely divisible law given by its triplet."""

    triplet: CharTriplet
    label: str = "classical"

    def log_characteristic(self, theta):
        return eval_classical_cumulant(self.triplet, theta)


def classical_convolve(c1, c2, label=None):
    return ClassicalSpec(add_triplets(c1.triplet, c2.triplet), label or f"({c1.label} * {c2.label})")


def classical_dilate(cs, c, label=None):
    if c == 0:
        raise ConfigError("dilation factor must be non-zero")
    return ClassicalSpec(dilate_triplet(cs.triplet, c), label or f"D_{c:g}({cs.label})")


def classical_shift(cs, b, label=None):
    return ClassicalSpec(shift_triplet(cs.triplet, b), label or f"({cs.label}) + {b:g}")


def classical_delta(c):
    from .measures import LevyMeasure

    return ClassicalSpec(CharTriplet(0.0, LevyMeasure(), float(c)), f"delta({c:g})")


def bercovici_pata(cs, label=None):
    """``Λ``: the free law with the same characteristic triplet."""
    return DistributionSpec.from_triplet(cs.triplet, label or f"Λ({cs.label})")


def bercovici_pata_inverse(d, label=None):
    """``Λ⁻¹``; needs an attached triplet."""
    if d.triplet is None:
        raise UnsupportedRepresentation(f"{d.label}: Λ⁻¹ needs a triplet, only a closed form is attached")
    return ClassicalSpec(d.triplet, label or f"Λ⁻¹({d.label})")

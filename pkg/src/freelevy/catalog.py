"""Closed-form ⊞-infinitely divisible laws.

Every entry carries its free cumulant transform, its triplet when one
exists, and whatever else is known in closed form: Cauchy transform,
density, support and, for selfdecomposable laws, the free cumulant
transform and Lévy measure of the background driving process.

Branch cuts: all square roots and powers are principal.  ``√(1-4cz)`` is cut
along ``z ≥ 1/(4c)``, ``(1-z)^p`` along ``z ≥ 1``, ``(1+z)^p`` along
``z ≤ -1``; none of them meets ℂ⁻.  Cauchy transforms use
``√(w-α)·√(w-β)`` (product of principal roots), cut along ``[α, β]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from ._dual import cpow, csqrt
from .errors import ConfigError
from .measures import CharTriplet, DensityPiece, LevyMeasure
from .transforms import DistributionSpec


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    """A catalog law and its closed-form companions.

    Attributes
    ----------
    bdlp_cumulant : callable, optional
        ``z C'(z)``, the cumulant transform of ``Z₁`` for ``H = 1``.
    bdlp_triplet : CharTriplet, optional
        Triplet of ``Z₁`` with the Lévy density in closed form.
    bdlp_tag : str, optional
        Symbolic form of ``bdlp_cumulant``.
    """

    name: str
    params: dict
    spec: DistributionSpec
    closed_density: Optional[Callable] = None
    closed_cauchy: Optional[Callable] = None
    support: Optional[tuple] = None
    atoms: tuple = ()
    bdlp_cumulant: Optional[Callable] = None
    bdlp_triplet: Optional[CharTriplet] = None
    bdlp_tag: Optional[str] = None
    sd_claimed: Optional[bool] = None
    notes: dict = field(default_factory=dict)


def _g(x):
    return f"{float(x):g}"


def _coef(c, body):
    """``body`` prefixed by ``c*`` unless ``c == 1``."""
    return body if c == 1 else f"{_g(c)}*{body}"


def _sqrt_prod(w, a, b):
    return np.sqrt(w - a) * np.sqrt(w - b)


# ---------------------------------------------------------------------------


def semicircle(eta=0.0, a=1.0):
    eta, a = float(eta), float(a)
    if not a > 0:
        raise ConfigError("semicircle needs a > 0")
    r = 2 * math.sqrt(a)
    spec = DistributionSpec(
        f"w({_g(eta)},{_g(a)})",
        cumulant=lambda z: eta * z + a * z * z,
        derivative=lambda z: eta + 2 * a * z,
        triplet=CharTriplet(a, LevyMeasure(), eta),
        tag=f"{_g(eta)}*z+{_g(a)}*z^2",
    )

    def density(x):
        x = np.asarray(x, dtype=float)
        return np.sqrt(np.clip(4 * a - (x - eta) ** 2, 0, None)) / (2 * np.pi * a)

    def cauchy(w):
        w = np.asarray(w, dtype=complex)
        return ((w - eta) - _sqrt_prod(w - eta, -r, r)) / (2 * a)

    return CatalogEntry(
        "semicircle",
        {"eta": eta, "a": a},
        spec,
        density,
        cauchy,
        (eta - r, eta + r),
        bdlp_cumulant=lambda z: eta * z + 2 * a * z * z,
        bdlp_triplet=CharTriplet(2 * a, LevyMeasure(), eta),
        bdlp_tag=f"{_g(eta)}*z+{_g(2 * a)}*z^2",
        sd_claimed=True,
    )


def free_gamma_drift(t, c):
    """``η`` of ``γ(t,c)``: ``C'(0) = tc`` minus the mean of ``ν`` beyond 1.

    With ``x = 4c sin²θ`` that mean is ``(t/2π)·4c(π/2 - θ₁ - sinθ₁cosθ₁)``,
    ``θ₁ = arcsin √(1/(4c))``, so ``η = (t/2π)·4c(θ₁ + sinθ₁cosθ₁)``; for
    ``4c ≤ 1`` there is no mass beyond 1 and ``η = tc``.
    """
    big = 4 * c
    th = math.asin(math.sqrt(min(1.0, big) / big))
    return t / (2 * math.pi) * big * (th + math.sin(th) * math.cos(th))


def free_gamma_bdlp_drift(t, c):
    """``η`` of the driving law: ``tc - (tc/π)∫_1^{4c} dx/√(x(4c-x))``
    ``= (2tc/π) arcsin(min(1, 1/(2√c)))``."""
    return 2 * t * c / math.pi * math.asin(min(1.0, 1 / (2 * math.sqrt(c))))


def free_gamma(t=1.0, c=1.0):
    t, c = float(t), float(c)
    if not (t > 0 and c > 0):
        raise ConfigError("free gamma needs t > 0 and c > 0")
    a_lo = c * ((t + 2) - 2 * math.sqrt(t + 1))
    a_hi = c * ((t + 2) + 2 * math.sqrt(t + 1))
    nu = LevyMeasure((DensityPiece.named("free_gamma", t=t, c=c),))
    spec = DistributionSpec(
        f"gamma({_g(t)},{_g(c)})",
        cumulant=lambda z: t * (1 - csqrt(1 - 4 * c * z)) / 2,
        derivative=lambda z: t * c / csqrt(1 - 4 * c * z),
        triplet=CharTriplet(0.0, nu, free_gamma_drift(t, c)),
        tag=_coef(t, f"(1-sqrt(1-{_g(4 * c)}z))/2") if 4 * c != 1 else _coef(t, "(1-sqrt(1-z))/2"),
    )

    def density(x):
        x = np.asarray(x, dtype=float)
        inside = (x > a_lo) & (x < a_hi)
        xs = np.where(inside, x, 1.0)
        out = t / (2 * np.pi * xs**2) * np.sqrt(np.clip((xs - a_lo) * (a_hi - xs), 0, None))
        return np.where(inside, out, 0.0)

    def cauchy(w):
        w = np.asarray(w, dtype=complex)
        return ((t + 2) * w - c * t * t - t * _sqrt_prod(w, a_lo, a_hi)) / (2 * w * w)

    bdlp_nu = LevyMeasure((DensityPiece.named("free_gamma_bdlp", t=t, c=c),))
    four_c = "4" if c == 1 else _g(4 * c)
    return CatalogEntry(
        "free_gamma",
        {"t": t, "c": c},
        spec,
        density,
        cauchy,
        (a_lo, a_hi),
        bdlp_cumulant=lambda z: t * c * z / csqrt(1 - 4 * c * z),
        bdlp_triplet=CharTriplet(0.0, bdlp_nu, free_gamma_bdlp_drift(t, c)),
        bdlp_tag=_coef(t * c, f"z/sqrt(1-{four_c}z)"),
        sd_claimed=True,
    )


def mu_p(p=0.5):
    p = float(p)
    if not -1 < p < 1:
        raise ConfigError("mu_p needs -1 < p < 1")
    if p == 0:
        entry = delta(0.0)
        return CatalogEntry("mu_p", {"p": p}, entry.spec, support=(0.0, 0.0), atoms=((0.0, 1.0),), sd_claimed=None)
    label = f"mu({_g(p)})"
    cumulant = lambda z: 1 - cpow(1 - z, p)  # noqa: E731
    derivative = lambda z: p * cpow(1 - z, p - 1)  # noqa: E731
    tag = f"1-(1-z)^{_g(p)}"
    if p < 0:
        # The displayed density sin(pπ)/(πx)((1-x)/x)^p is negative here and
        # φ(u) = u(1 - (1 - 1/u)^p) leaves the lower half-plane, so no Lévy
        # measure is attached and density and SD flows reject the law.
        spec = DistributionSpec(
            label, cumulant=cumulant, derivative=derivative, tag=tag, sd_excluded=True,
            meta={"levy_hull": (0.0, 1.0), "not_infinitely_divisible": True},
        )
        return CatalogEntry("mu_p", {"p": p}, spec, sd_claimed=None)
    nu = LevyMeasure((DensityPiece.named("mu_p", p=p),))
    spec = DistributionSpec(
        label, cumulant=cumulant, derivative=derivative, triplet=CharTriplet(0.0, nu, p), tag=tag
    )
    bdlp_nu = LevyMeasure((DensityPiece.named("mu_p_bdlp", p=p),))
    return CatalogEntry(
        "mu_p",
        {"p": p},
        spec,
        bdlp_cumulant=lambda z: p * z * cpow(1 - z, p - 1),
        bdlp_triplet=CharTriplet(0.0, bdlp_nu, p),
        bdlp_tag=_coef(p, f"z(1-z)^{_g(p - 1)}"),
        sd_claimed=True,
    )


def mu_pp(p=1.5):
    """Fuss–Catalan law ``μ(p,p)``, ``C(z) = pz + (z+1)^p - 1``."""
    p = float(p)
    if not 1 < p < 2:
        raise ConfigError("mu_pp needs 1 < p < 2")
    nu = LevyMeasure((DensityPiece.named("fuss_catalan", p=p),))
    spec = DistributionSpec(
        f"mu({_g(p)},{_g(p)})",
        cumulant=lambda z: p * z + cpow(z + 1, p) - 1,
        derivative=lambda z: p + p * cpow(z + 1, p - 1),
        triplet=CharTriplet(0.0, nu, 2 * p),
        tag=f"{_g(p)}*z+(z+1)^{_g(p)}-1",
    )
    bdlp_nu = LevyMeasure((DensityPiece.named("fuss_catalan_bdlp", p=p),))
    return CatalogEntry(
        "mu_pp",
        {"p": p},
        spec,
        bdlp_cumulant=lambda z: p * z + p * z * cpow(z + 1, p - 1),
        bdlp_triplet=CharTriplet(0.0, bdlp_nu, 2 * p),
        bdlp_tag=f"{_g(p)}*z+{_g(p)}*z(z+1)^{_g(p - 1)}",
        sd_claimed=True,
    )


def free_poisson(lam=1.0):
    """Marchenko–Pastur law with rate ``λ`` (jump size 1)."""
    lam = float(lam)
    if not lam > 0:
        raise ConfigError("free Poisson needs lam > 0")
    a_lo, a_hi = (1 - math.sqrt(lam)) ** 2, (1 + math.sqrt(lam)) ** 2
    spec = DistributionSpec(
        f"free_poisson({_g(lam)})",
        cumulant=lambda z: lam * z / (1 - z),
        derivative=lambda z: lam / ((1 - z) * (1 - z)),
        triplet=CharTriplet(0.0, LevyMeasure.point(1.0, lam), lam),
        tag=_coef(lam, "z/(1-z)"),
    )

    def density(x):
        x = np.asarray(x, dtype=float)
        inside = (x > a_lo) & (x < a_hi)
        xs = np.where(inside, x, 1.0)
        out = np.sqrt(np.clip((xs - a_lo) * (a_hi - xs), 0, None)) / (2 * np.pi * xs)
        return np.where(inside, out, 0.0)

    def cauchy(w):
        w = np.asarray(w, dtype=complex)
        return (w + 1 - lam - _sqrt_prod(w, a_lo, a_hi)) / (2 * w)

    atoms = ((0.0, 1 - lam),) if lam < 1 else ()
    return CatalogEntry(
        "free_poisson", {"lam": lam}, spec, density, cauchy, (0.0 if lam < 1 else a_lo, a_hi), atoms,
        sd_claimed=False,
    )


def delta(c=0.0):
    c = float(c)
    spec = DistributionSpec.delta(c)
    return CatalogEntry(
        "delta", {"c": c}, spec, closed_cauchy=lambda w: 1 / np.asarray(w, dtype=complex),
        support=(c, c), atoms=((c, 1.0),),
        bdlp_cumulant=lambda z: c * z, bdlp_triplet=CharTriplet(0.0, LevyMeasure(), c),
        bdlp_tag=_coef(c, "z"), sd_claimed=True,
    )


_BUILDERS = {
    "semicircle": (semicircle, {"eta": 0.0, "a": 1.0}),
    "free_gamma": (free_gamma, {"t": 1.0, "c": 1.0}),
    "mu_p": (mu_p, {"p": 0.5}),
    "mu_pp": (mu_pp, {"p": 1.5}),
    "free_poisson": (free_poisson, {"lam": 1.0}),
    "delta": (delta, {"c": 0.0}),
}
_ALIASES = {
    "fuss_catalan": "mu_pp",
    "marchenko_pastur": "free_poisson",
    "gaussian": "semicircle",
    "point": "delta",
}
_PARAM_ALIASES = {"lambda": "lam", "lambda_": "lam"}

NAMES = tuple(_BUILDERS)


def parse_params(text):
    """``"t=1,c=0.5"`` -> ``{"t": 1.0, "c": 0.5}``."""
    out = {}
    if not text:
        return out
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise ConfigError(f"parameter {part!r} is not of the form name=value")
        key, val = part.split("=", 1)
        try:
            out[key.strip()] = float(val)
        except ValueError as exc:
            raise ConfigError(f"parameter {key!r} is not a number: {val!r}") from exc
    return out


def catalog_get(name, params=None, **kw):
    """Catalog entry by name; unspecified parameters take their defaults.

    >>> catalog_get("free_gamma", {"t": 1, "c": 1}).support  # doctest: +ELLIPSIS
    (0.1715..., 5.8284...)
    """
    key = _ALIASES.get(name, name)
    if key not in _BUILDERS:
        raise ConfigError(f"unknown catalog law {name!r}; known: {', '.join(NAMES)}")
    builder, defaults = _BUILDERS[key]
    given = dict(params or {})
    given.update(kw)
    given = {_PARAM_ALIASES.get(k, k): v for k, v in given.items()}
    unknown = set(given) - set(defaults)
    if unknown:
        raise ConfigError(f"{key}: unknown parameter(s) {sorted(unknown)}; expected {sorted(defaults)}")
    merged = dict(defaults, **given)
    entry = builder(**merged)
    entry.spec.meta.update(catalog=key, params=merged)
    if entry.bdlp_tag is not None:
        entry.spec.meta.setdefault("bdlp_tag", entry.bdlp_tag)
    return entry

"""Free cumulant transforms, the inverse of F = 1/G, and Stieltjes inversion.

Conventions
-----------
``C(z)`` is evaluated on the lower half-plane, ``G(w)`` on the upper one.
The Voiculescu transform is ``φ(u) = u C(1/u)``; for a freely infinitely
divisible law it maps ℂ⁺ into ℂ⁻ ∪ ℝ, and ``u + φ(u) = w`` has exactly one
root ``u = F(w)`` in ℂ⁺.  Hence ``G(w) = 1/u``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.optimize import minimize_scalar

from . import _dual
from .errors import (
    ConfigError,
    DomainError,
    QuadratureError,
    RejectedInput,
    SolverError,
    UnsupportedRepresentation,
)
from .measures import QUAD_TOL, CharTriplet, LevyMeasure

EPS_LADDER = (1e-2, 5e-3, 2.5e-3)
DENSITY_FLOOR = 1e-12
MAX_GAP_FRACTION = 0.05


# ---------------------------------------------------------------------------
# spec
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DistributionSpec:
    """A ⊞-infinitely divisible law.

    Parameters
    ----------
    label : str
        Human readable name, carried through every operation.
    cumulant : callable, optional
        Closed form ``C(z)`` on ℂ⁻.  Writing it with arithmetic operators and
        :func:`freelevy._dual.csqrt` / :func:`~freelevy._dual.cpow` lets it be
        differentiated exactly.
    derivative : callable, optional
        Closed form ``C'(z)``.
    triplet : CharTriplet, optional
        Free characteristic triplet.  At least one of ``cumulant`` and
        ``triplet`` must be given.
    tag : str, optional
        Short symbolic description of the closed form (``"z/sqrt(1-4z)"``).
    sd_excluded : bool
        Set for laws that must not enter selfdecomposability-dependent flows.
    point_mass : float, optional
        Location ``c`` when the law is known to be ``δ_c``.
    """

    label: str
    cumulant: Optional[Callable] = None
    derivative: Optional[Callable] = None
    triplet: Optional[CharTriplet] = None
    tag: Optional[str] = None
    sd_excluded: bool = False
    point_mass: Optional[float] = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.cumulant is None and self.triplet is None and self.point_mass is None:
            raise ConfigError("a distribution needs a closed form or a triplet")

    @classmethod
    def from_triplet(cls, triplet, label="triplet", **kw):
        return cls(label, triplet=triplet, **kw)

    @classmethod
    def delta(cls, c):
        c = float(c)
        return cls(
            f"delta({c:g})",
            cumulant=lambda z: c * z,
            derivative=lambda z: c + 0 * z,
            triplet=CharTriplet(0.0, LevyMeasure(), c),
            tag=f"{c:g}*z",
            point_mass=c,
        )

    @property
    def atom_location(self):
        """``c`` if the law is ``δ_c``, else ``None``."""
        if self.point_mass is not None:
            return self.point_mass
        if self.triplet is not None and self.triplet.is_point_mass:
            return self.triplet.eta
        return None

    @property
    def has_closed_form(self):
        return self.cumulant is not None

    def replace(self, **changes):
        kw = {f: getattr(self, f) for f in self.__dataclass_fields__}
        kw.update(changes)
        return DistributionSpec(**kw)

    def __repr__(self):
        forms = [n for n, v in (("closed", self.cumulant), ("triplet", self.triplet)) if v is not None]
        return f"DistributionSpec({self.label!r}, {'+'.join(forms)})"


# ---------------------------------------------------------------------------
# cumulant evaluation
# ---------------------------------------------------------------------------


def _as_complex(z):
    z = np.asarray(z, dtype=complex)
    return z, z.ndim == 0


def _kernel(z):
    """Compensated kernel ``1/(1-xz) - 1 - xz 1_{[-1,1]}(x)``.

    Written as ``(xz)²/(1-xz)`` inside [-1, 1] and ``xz/(1-xz)`` outside so
    that small ``xz`` does not cancel.
    """

    def k(x, sel):
        xz = x * z[sel][None, :]
        inner = np.abs(x) <= 1
        return np.where(inner, xz * xz, xz) / (1 - xz)

    return k


def _kernel_derivative(z):
    """``d/dz`` of :func:`_kernel`: ``x·xz(2-xz)/(1-xz)²`` inside, ``x/(1-xz)²`` outside."""

    def k(x, sel):
        xz = x * z[sel][None, :]
        inner = np.abs(x) <= 1
        return x * np.where(inner, xz * (2 - xz), 1.0) / (1 - xz) ** 2

    return k


def triplet_cumulant(t, z, *, tol=QUAD_TOL):
    """``ηz + az² + ∫ (1/(1-xz) - 1 - xz 1_{[-1,1]}(x)) ν(dx)``."""
    z, scalar = _as_complex(z)
    flat = z.reshape(-1)
    out = t.eta * flat + t.a * flat**2
    if not t.nu.is_zero:
        out = out + t.nu.integrate(_kernel(flat), flat.size, tol=tol, what="free cumulant")
    out = out.reshape(z.shape)
    return out[()] if scalar else out


def triplet_cumulant_derivative(t, z, *, tol=QUAD_TOL):
    z, scalar = _as_complex(z)
    flat = z.reshape(-1)
    out = t.eta + 2 * t.a * flat
    if not t.nu.is_zero:
        out = out + t.nu.integrate(_kernel_derivative(flat), flat.size, tol=tol, what="cumulant derivative")
    out = out.reshape(z.shape)
    return out[()] if scalar else out


def _route(spec, route):
    if route == "auto":
        return "closed" if spec.cumulant is not None else "triplet"
    if route == "closed" and spec.cumulant is None:
        raise UnsupportedRepresentation(f"{spec.label}: no closed-form cumulant attached")
    if route == "triplet" and spec.triplet is None:
        raise UnsupportedRepresentation(f"{spec.label}: no triplet attached")
    if route not in ("closed", "triplet"):
        raise ConfigError(f"unknown route {route!r}")
    return route


def _check_lower(z):
    if np.any(~(np.imag(np.asarray(z)) < 0)):
        raise DomainError("the free cumulant transform is evaluated on Im z < 0")


def _cumulant_unchecked(spec, z, route="auto", tol=QUAD_TOL):
    z, scalar = _as_complex(z)
    if _route(spec, route) == "closed":
        out = np.broadcast_to(np.asarray(spec.cumulant(z), dtype=complex), z.shape).copy()
        return out[()] if scalar else out
    return triplet_cumulant(spec.triplet, z, tol=tol)


def eval_cumulant(spec, z, *, route="auto", tol=QUAD_TOL):
    """Free cumulant transform ``C_μ(z)`` for ``z`` in ℂ⁻.

    Parameters
    ----------
    spec : DistributionSpec
    z : complex or array_like
        Points with strictly negative imaginary part.
    route : {"auto", "closed", "triplet"}
        ``auto`` prefers the closed form when one is attached.
    tol : float
        Relative refinement tolerance of the Lévy quadrature.

    Raises
    ------
    DomainError
        If some ``Im z >= 0``.
    QuadratureError
        If the Lévy integral does not settle.
    """
    _check_lower(z)
    return _cumulant_unchecked(spec, z, route, tol)


def _derivative_unchecked(spec, z, route="auto", tol=QUAD_TOL):
    z, scalar = _as_complex(z)
    if _route(spec, route) == "triplet":
        return triplet_cumulant_derivative(spec.triplet, z, tol=tol)
    if spec.derivative is not None:
        out = np.broadcast_to(np.asarray(spec.derivative(z), dtype=complex), z.shape).copy()
    else:
        out = complex_step(spec.cumulant, z)
    return out[()] if scalar else out


def complex_step(f, z):
    """Derivative of a holomorphic closed form, exact up to rounding.

    Uses forward-mode dual numbers (the ``h -> 0`` limit of a complex step);
    callables that cannot carry them fall back to a Cauchy contour rule.
    """
    z = np.asarray(z, dtype=complex)
    try:
        return _dual.complex_step_derivative(f, z)
    except (TypeError, AttributeError):
        return _dual.contour_derivative(f, z)


def eval_cumulant_derivative(spec, z, *, route="auto", tol=QUAD_TOL):
    """``C'_μ(z)`` on ℂ⁻: analytic derivative, complex step, or the
    differentiated Lévy integral."""
    _check_lower(z)
    return _derivative_unchecked(spec, z, route, tol)


def voiculescu(spec, u, *, route="auto", tol=QUAD_TOL):
    """``φ(u) = u C(1/u)`` for ``u`` in ℂ⁺."""
    u = np.asarray(u, dtype=complex)
    if np.any(~(u.imag > 0)):
        raise DomainError("the Voiculescu transform is evaluated on Im u > 0")
    return u * _cumulant_unchecked(spec, 1 / u, route, tol)


def _phi_and_derivative(spec, u, route, tol):
    z = 1 / u
    c = _cumulant_unchecked(spec, z, route, tol)
    dc = _derivative_unchecked(spec, z, route, tol)
    return u * c, c - dc / u


# ---------------------------------------------------------------------------
# F^{-1} solver and Cauchy transform
# ---------------------------------------------------------------------------


@dataclass
class SolveResult:
    u: np.ndarray
    residual: np.ndarray
    converged: np.ndarray
    iterations: np.ndarray


def _newton(spec, w, u0, *, tol, max_iter, damping, route, quad_tol):
    n = w.size
    u = u0.copy()
    residual = np.full(n, np.inf)
    iterations = np.zeros(n, dtype=int)
    converged = np.zeros(n, dtype=bool)
    use_fp = np.zeros(n, dtype=bool)
    active = np.arange(n)
    scale = tol * (1 + np.abs(w))
    for it in range(max_iter + 1):
        if active.size == 0:
            break
        ua, wa = u[active], w[active]
        phi, dphi = _phi_and_derivative(spec, ua, route, quad_tol)
        r = ua + phi - wa
        ar = np.abs(r)
        worse = ar >= residual[active]
        residual[active] = ar
        iterations[active] = it
        done = ar <= scale[active]
        converged[active[done]] = True
        if it == max_iter:
            break
        keep = ~done
        active, ua, wa, phi, dphi, r = active[keep], ua[keep], wa[keep], phi[keep], dphi[keep], r[keep]
        worse = worse[keep]
        with np.errstate(all="ignore"):
            newton = ua - r / (1 + dphi)
        fixed = (1 - damping) * ua + damping * (wa - phi)
        bad = ~np.isfinite(newton) | ~(newton.imag > 0)
        # a Newton step that failed to reduce the residual is followed by
        # one fixed-point step
        use_fp[active] = worse & ~use_fp[active]
        u[active] = np.where(bad | use_fp[active], fixed, newton)
    return SolveResult(u, residual, converged, iterations)


def _start_height(spec):
    scale = 1.0
    t = spec.triplet
    if t is not None:
        hull = t.nu.hull()
        if hull:
            scale = max(scale, abs(hull[0]), abs(hull[1]))
        scale = max(scale, math.sqrt(t.a))
    return 4.0 * scale


def _solve(spec, w, *, tol, max_iter, damping, route, quad_tol, u0=None):
    """Vectorised solver for ``u + φ(u) = w``; never raises on non-convergence.

    Without a starting point the target is approached from above: the
    equation is solved at heights ``Y₀, Y₀/2, ...`` down to ``Im w``, each
    stage starting from the previous root.  This keeps the iterates away
    from the real axis, where the Lévy integral of φ becomes nearly singular.
    """
    kw = dict(max_iter=max_iter, damping=damping, route=route, quad_tol=quad_tol)
    if u0 is not None:
        return _newton(spec, w, u0, tol=tol, **kw)
    y0 = _start_height(spec)
    u = None
    heights = [y0 * 0.5**k for k in range(60) if y0 * 0.5**k > np.min(w.imag)]
    for y in heights:
        stage = w.real + 1j * np.maximum(w.imag, y)
        res = _newton(spec, stage, stage if u is None else u, tol=max(tol, 1e-8), **kw)
        u = np.where(res.converged, res.u, stage if u is None else u)
    return _newton(spec, w, w if u is None else u, tol=tol, **kw)


def f_inverse_solve(spec, w, *, tol=1e-12, max_iter=200, damping=0.5, route="auto", quad_tol=QUAD_TOL):
    """Solve ``u + φ(u) = w`` for ``u`` in ℂ⁺, i.e. ``u = F_μ(w)``.

    Newton's method, continued down from a large ``Im w`` so that each stage
    starts next to its root; a step that leaves ℂ⁺ or does not reduce the residual is replaced by the damped fixed-point step
    ``u ← (1-θ)u + θ(w - φ(u))``, which stays in ℂ⁺.  Point masses are
    solved in closed form.

    Raises
    ------
    DomainError
        If some ``Im w <= 0``.
    SolverError
        When ``|u + φ(u) - w| > tol (1 + |w|)`` after ``max_iter`` steps; the
        error carries the last iterates and residuals.
    """
    w, scalar = _as_complex(w)
    if np.any(~(w.imag > 0)):
        raise DomainError("F^{-1} is solved for Im w > 0")
    _require_id(spec)
    c = spec.atom_location
    if c is not None:
        out = w - c
        return out[()] if scalar else out
    flat = w.reshape(-1)
    res = _solve(spec, flat, tol=tol, max_iter=max_iter, damping=damping, route=route, quad_tol=quad_tol)
    if not np.all(res.converged):
        bad = ~res.converged
        raise SolverError(
            f"{spec.label}: F^-1 did not converge at {int(bad.sum())} point(s)",
            w=flat[bad],
            last_iterate=res.u[bad],
            residual=res.residual[bad],
        )
    out = res.u.reshape(w.shape)
    return out[()] if scalar else out


def cauchy_transform(spec, w, **kw):
    """``G_μ(w) = 1 / F_μ(w)`` for ``w`` in ℂ⁺ (see :func:`f_inverse_solve`)."""
    return 1 / f_inverse_solve(spec, w, **kw)


# ---------------------------------------------------------------------------
# Stieltjes inversion
# ---------------------------------------------------------------------------


def _extrapolate(values, eps):
    """Value at ``ε = 0`` of the polynomial through ``(eps_k, values_k)`` (Neville)."""
    p = [np.asarray(v, dtype=float) for v in values]
    m = len(eps)
    for level in range(1, m):
        p = [
            (eps[i + level] * p[i] - eps[i] * p[i + 1]) / (eps[i + level] - eps[i])
            for i in range(m - level)
        ]
    return p[0]


def _stieltjes(spec, x, eps_ladder, solve_kw):
    """Extrapolated ``-Im G(x + iε)/π`` and a mask of solver failures."""
    x = np.asarray(x, dtype=float)
    samples = []
    failed = np.zeros(x.size, dtype=bool)
    u_prev = None
    for eps in eps_ladder:
        w = x + 1j * eps
        g = np.full(x.size, np.nan + 0j)
        ok = ~failed
        try:
            start = None if u_prev is None else u_prev[ok]
            res = _solve(spec, w[ok], u0=start, **solve_kw)
            g[ok] = 1 / res.u
            failed[np.flatnonzero(ok)[~res.converged]] = True
            u_prev = np.full(x.size, np.nan + 0j) if u_prev is None else u_prev
            u_prev[ok] = res.u
        except QuadratureError:
            # isolate the offending points
            u_prev = np.full(x.size, np.nan + 0j)
            for i in np.flatnonzero(ok):
                try:
                    res = _solve(spec, w[i : i + 1], **solve_kw)
                    g[i] = 1 / res.u[0]
                    u_prev[i] = res.u[0]
                    failed[i] |= not res.converged[0]
                except QuadratureError:
                    failed[i] = True
        samples.append(-g.imag / np.pi)
    f = _extrapolate(samples, list(eps_ladder))
    f = np.where(f < DENSITY_FLOOR, 0.0, f)
    f[failed] = np.nan
    return f, failed


def _require_id(spec):
    if spec.meta.get("not_infinitely_divisible"):
        raise RejectedInput(f"{spec.label}: φ leaves the lower half-plane, the law is not ⊞-infinitely divisible")


def point_density(spec, x, *, eps_ladder=EPS_LADDER, route="auto", quad_tol=QUAD_TOL):
    """Density at the points ``x`` by Stieltjes inversion (``nan`` on failure)."""
    _require_id(spec)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    kw = dict(tol=1e-12, max_iter=200, damping=0.5, route=route, quad_tol=quad_tol)
    return _stieltjes(spec, x, eps_ladder, kw)[0]


@dataclass(frozen=True, eq=False)
class DensityGrid:
    """Tabulated density.

    Attributes
    ----------
    x, f : ndarray
        Abscissae (increasing) and non-negative density values.
    support_lo, support_hi : float
        Outermost threshold crossings of the density.
    mass : float
        Trapezoid mass of the grid.
    gaps : ndarray
        Indices where the solver failed (their ``f`` is interpolated).
    """

    x: np.ndarray
    f: np.ndarray
    support_lo: float
    support_hi: float
    mass: float
    gaps: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=int))
    label: str = ""

    @property
    def points(self):
        return list(zip(self.x.tolist(), self.f.tolist()))

    def cdf(self):
        """Cumulative trapezoid integral, normalised to end at 1."""
        c = np.concatenate([[0.0], np.cumsum(np.diff(self.x) * (self.f[1:] + self.f[:-1]) / 2)])
        return c / c[-1] if c[-1] > 0 else c

    def value_at(self, x0):
        return float(np.interp(x0, self.x, self.f))

    def check_mass(self, tol_mass=1e-3):
        return abs(self.mass - 1) <= tol_mass

    def to_csv(self):
        rows = ["x,f"] + [f"{x:.17g},{f:.17g}" for x, f in zip(self.x, self.f)]
        return "\n".join(rows) + "\n"


def graded_grid(lo, hi, n):
    """``n`` points on [lo, hi] clustered quartically at both ends.

    Under ``x ~ s⁴`` an inverse square-root endpoint singularity becomes a
    smooth integrand, so trapezoid masses stay accurate on singular laws.
    """
    s = np.linspace(0.0, 1.0, n)
    g = 0.5 * (1 - np.cos(np.pi * 0.5 * (1 - np.cos(np.pi * s))))
    x = lo + (hi - lo) * g
    x[0], x[-1] = lo, hi
    return x


def density_grid(
    spec,
    x_lo,
    x_hi,
    n_points,
    *,
    eps_ladder=EPS_LADDER,
    spacing="uniform",
    threshold=1e-6,
    refine_edges=True,
    route="auto",
    quad_tol=QUAD_TOL,
):
    """Density of ``spec`` on a grid by Stieltjes inversion.

    ``f(x) = -Im G(x + iε)/π`` is evaluated on the ``ε`` ladder and
    extrapolated to ``ε = 0`` through the interpolating polynomial, which
    removes the first ``len(eps_ladder) - 1`` powers of ``ε``.  Values below
    ``1e-12`` are set to zero.

    Support ends are the outermost crossings of ``threshold · max f``; with
    ``refine_edges`` they are bisected to ``1e-7`` using a ladder scaled
    down to the bracket width.

    Raises
    ------
    SolverError
        When more than 5% of the points fail.
    """
    if not x_lo < x_hi:
        raise ConfigError("need x_lo < x_hi")
    _require_id(spec)
    if n_points < 2:
        raise ConfigError("need at least two grid points")
    if spacing == "uniform":
        x = np.linspace(x_lo, x_hi, int(n_points))
    elif spacing == "graded":
        x = graded_grid(x_lo, x_hi, int(n_points))
    else:
        raise ConfigError(f"unknown spacing {spacing!r}")

    c = spec.atom_location
    if c is not None:
        f = np.zeros_like(x)
        return DensityGrid(x, f, c, c, 0.0, label=spec.label)

    kw = dict(tol=1e-12, max_iter=200, damping=0.5, route=route, quad_tol=quad_tol)
    f, failed = _stieltjes(spec, x, eps_ladder, kw)
    gaps = np.flatnonzero(failed)
    if gaps.size > MAX_GAP_FRACTION * x.size:
        raise SolverError(
            f"{spec.label}: {gaps.size} of {x.size} density points failed",
            gaps=x[gaps],
        )
    if gaps.size:
        good = ~failed
        f[failed] = np.interp(x[failed], x[good], f[good])

    lo, hi = _threshold_edges(spec, x, f, threshold, refine_edges, kw)
    if refine_edges and np.isfinite(lo):
        f = _sharpen_near_edges(spec, x, f, (lo, hi), eps_ladder, kw)
    mass = float(np.sum(np.diff(x) * (f[1:] + f[:-1]) / 2))
    return DensityGrid(x, f, lo, hi, mass, gaps, spec.label)


EDGE_RATIO = 0.05


def _sharpen_near_edges(spec, x, f, edges, eps_ladder, kw):
    """Recompute points closer to a support end than ``max ε / EDGE_RATIO``
    with the ladder shrunk to ``ε_max = EDGE_RATIO · distance``.

    Stieltjes inversion smears a square-root edge or an inverse square-root
    spike over a few multiples of ``ε``; keeping ``ε`` proportional to the
    distance keeps the extrapolation error uniform in relative terms.
    """
    eps_max = max(eps_ladder)
    d = np.min(np.abs(x[:, None] - np.asarray(edges)[None, :]), axis=1)
    near = np.flatnonzero((d < eps_max / EDGE_RATIO) & (d > 0))
    if near.size == 0:
        return f
    f = f.copy()
    # points within a quarter octave of distance share one ladder
    bucket = np.floor(np.log2(d[near] * EDGE_RATIO / eps_max) * 4)
    for key in np.unique(bucket):
        idx = near[bucket == key]
        s = max(float(np.min(d[idx])) * EDGE_RATIO / eps_max, 1e-12)
        ladder = tuple(e * s for e in eps_ladder)
        try:
            vals, failed = _stieltjes(spec, x[idx], ladder, kw)
        except (SolverError, QuadratureError):
            continue
        ok = ~failed & np.isfinite(vals)
        f[idx[ok]] = vals[ok]
    f[(x < edges[0]) | (x > edges[1])] = 0.0
    return f


def _threshold_edges(spec, x, f, threshold, refine, kw):
    level = threshold * np.max(f) if np.max(f) > 0 else np.inf
    above = np.flatnonzero(f > level)
    if above.size == 0:
        return float("nan"), float("nan")
    i_lo, i_hi = above[0], above[-1]
    lo, hi = float(x[i_lo]), float(x[i_hi])
    if not refine:
        return lo, hi

    def refined(m, width):
        ladder = tuple(e * min(1.0, width) * 1e-2 for e in (1.0, 0.5, 0.25))
        return _stieltjes(spec, np.array([m]), ladder, kw)[0][0]

    def bisect(a, b, inside_right, fallback):
        # The coarse ladder smears the edge over a few multiples of ε, so the
        # bracket is widened and its ends re-checked with a finer ladder.
        fa, fb = refined(a, b - a), refined(b, b - a)
        if not (np.isfinite(fa) and np.isfinite(fb)):
            return fallback
        if (fa > level) == (fb > level):
            return fallback
        for _ in range(80):
            if b - a <= 1e-8 * max(1.0, abs(a)):
                break
            m = 0.5 * (a + b)
            val = refined(m, b - a)
            if not np.isfinite(val):
                break
            if (val > level) == inside_right:
                b = m
            else:
                a = m
        return 0.5 * (a + b)

    pad = max(3, int(math.ceil(3 * max(EPS_LADDER) / max(np.min(np.diff(x)), 1e-300))))
    pad = min(pad, 20)
    if i_lo > 0:
        lo = bisect(float(x[max(i_lo - pad, 0)]), float(x[min(i_lo + pad, x.size - 1)]), True, lo)
    if i_hi < x.size - 1:
        hi = bisect(float(x[max(i_hi - pad, 0)]), float(x[min(i_hi + pad, x.size - 1)]), False, hi)
    return lo, hi


# ---------------------------------------------------------------------------
# support from the Voiculescu transform
# ---------------------------------------------------------------------------


def _levy_hull(spec):
    if spec.triplet is not None:
        return spec.triplet.nu.hull()
    if "levy_hull" in spec.meta:
        return spec.meta["levy_hull"]
    raise UnsupportedRepresentation(f"{spec.label}: support of the Lévy measure unknown")


def psi(spec, u, *, route="auto", tol=QUAD_TOL):
    """``ψ(u) = u + φ(u)`` at real ``u`` outside the Lévy support and 0."""
    u = np.asarray(u, dtype=float)
    return np.real(u + u * _cumulant_unchecked(spec, 1 / u.astype(complex), route, tol))


def support_bounds(spec, *, route="auto"):
    """Outer ends ``(lo, hi)`` of the support of ``μ``.

    The right end is ``min ψ`` over real ``u`` to the right of both 0 and
    the Lévy support, the left end ``max ψ`` to their left.  When the
    extremum sits at the boundary the limiting value is returned.
    """
    _require_id(spec)
    c = spec.atom_location
    if c is not None:
        return c, c
    hull = _levy_hull(spec)
    m_lo = min(0.0, hull[0]) if hull else 0.0
    m_hi = max(0.0, hull[1]) if hull else 0.0
    scale = max(1.0, abs(m_lo), abs(m_hi))
    if spec.triplet is not None:
        scale = max(scale, math.sqrt(spec.triplet.a))
    offsets = scale * np.logspace(-7, 5, 241)

    def extremum(sign):
        edge = m_hi if sign > 0 else m_lo
        us = edge + sign * offsets
        vals = sign * psi(spec, us, route=route)
        i = int(np.argmin(vals))
        if i == 0 or i == len(us) - 1:
            return sign * vals[i]
        lo_t, hi_t = np.log(offsets[i - 1]), np.log(offsets[i + 1])
        res = minimize_scalar(
            lambda s: sign * psi(spec, np.array([edge + sign * np.exp(s)]), route=route)[0],
            bounds=(lo_t, hi_t),
            method="bounded",
            options={"xatol": 1e-12},
        )
        return sign * min(res.fun, vals[i])

    return float(extremum(-1.0)), float(extremum(1.0))

"""Lévy measures, free characteristic triplets and free generating pairs.

A :class:`LevyMeasure` is a finite sum of density pieces (each living on one
side of the origin), tabulated grid pieces and atoms.  Pieces are value
objects: a named base density, its parameters, a dilation factor and a
weight.  Two pieces compare equal iff those four coincide, which makes
triplet equality exact and cheap.

Density callables take ``(x, dlo, dhi)`` where ``dlo``/``dhi`` are the exact
distances from ``x`` to the piece's lower/upper end (``inf`` for unbounded
ends); see :mod:`freelevy.quadrature`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import quadrature
from .errors import ConfigError, QuadratureError

QUAD_TOL = 1e-12
_S_MAX = 650.0


# ---------------------------------------------------------------------------
# base densities
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BaseDensity:
    lo: float
    hi: float
    density: Callable
    k: Optional[Callable] = None


def _free_gamma(t, c):
    # nu_{t,c}(dx) = t sqrt(x(4c - x)) / (2 pi x^2) dx on (0, 4c)
    def density(x, dlo, dhi):
        return t * np.sqrt(dlo * dhi) / (2 * np.pi * dlo**2)

    def k(x, dlo, dhi):
        return t / (2 * np.pi) * np.sqrt(dhi / dlo)

    return BaseDensity(0.0, 4.0 * c, density, k)


def _mu_p(p):
    # (sin(p pi) / (pi x)) ((1 - x)/x)^p on (0, 1)
    s = math.sin(p * math.pi) / math.pi

    def density(x, dlo, dhi):
        return s / dlo * (dhi / dlo) ** p

    def k(x, dlo, dhi):
        return s * (dhi / dlo) ** p

    return BaseDensity(0.0, 1.0, density, k)


def _fuss_catalan(p):
    # -(sin(p pi) / (pi |x|)) ((1 + x)/(-x))^p on (-1, 0); dlo = 1 + x, dhi = -x
    s = -math.sin(p * math.pi) / math.pi

    def density(x, dlo, dhi):
        return s / dhi * (dlo / dhi) ** p

    def k(x, dlo, dhi):
        return s * (dlo / dhi) ** p

    return BaseDensity(-1.0, 0.0, density, k)


def _free_gamma_bdlp(t, c):
    # t c / (pi x^{3/2} sqrt(4c - x)); t = c = 1 gives 1/(pi x sqrt(x(4 - x)))
    def density(x, dlo, dhi):
        return t * c / (np.pi * dlo**1.5 * np.sqrt(dhi))

    return BaseDensity(0.0, 4.0 * c, density)


def _mu_p_bdlp(p):
    s = p * math.sin((1 - p) * math.pi) / math.pi

    def density(x, dlo, dhi):
        return s / (dlo ** (1 + p) * dhi ** (1 - p))

    return BaseDensity(0.0, 1.0, density)


def _fuss_catalan_bdlp(p):
    s = -p * math.sin(p * math.pi) / math.pi

    def density(x, dlo, dhi):
        return s * dlo ** (p - 1) * dhi ** (-1 - p)

    return BaseDensity(-1.0, 0.0, density)


def _power(lo, hi, coef=1.0, power=0.0, poly=(1.0,)):
    # coef * poly(x) * |x|^power on (lo, hi); poly coefficients low order first
    lo, hi = float(lo), float(hi)
    sgn = 1.0 if lo >= 0 else -1.0
    poly = np.asarray(poly, dtype=float)

    def polyval(x):
        out = np.zeros_like(x, dtype=complex if np.iscomplexobj(x) else float)
        for coeff in poly[::-1]:
            out = out * x + coeff
        return out

    def density(x, dlo, dhi):
        return coef * polyval(x) * (sgn * x) ** power

    return BaseDensity(lo, hi, density)


def _kprime(of):
    """Density ``-k'(x)`` (x > 0) or ``k'(x)`` (x < 0) of another piece.

    ``k = |x| * density``.  The derivative is taken by a complex step, which
    is valid because every base ``k`` is real analytic inside its support.
    """
    sgn = of.sign

    def density(x, dlo, dhi):
        h = 1e-20 * np.minimum(1.0, np.minimum(dlo, dhi))
        dk = of.k(x + 1j * h, dlo + 1j * h, dhi - 1j * h).imag / h
        return -sgn * dk

    return BaseDensity(of.lo, of.hi, density)


BASES = {
    "free_gamma": _free_gamma,
    "mu_p": _mu_p,
    "fuss_catalan": _fuss_catalan,
    "free_gamma_bdlp": _free_gamma_bdlp,
    "mu_p_bdlp": _mu_p_bdlp,
    "fuss_catalan_bdlp": _fuss_catalan_bdlp,
    "power": _power,
    "kprime": _kprime,
}


# ---------------------------------------------------------------------------
# pieces
# ---------------------------------------------------------------------------


def _freeze(value):
    if isinstance(value, (list, tuple)):
        return tuple(_freeze(v) for v in value)
    if isinstance(value, (DensityPiece, GridPiece)):
        return value
    if isinstance(value, str) and value in ("inf", "-inf"):
        return float(value)
    return float(value)


@dataclass(frozen=True)
class DensityPiece:
    """A named density, dilated by ``scale`` and multiplied by ``weight``."""

    name: str
    params: tuple = ()
    scale: float = 1.0
    weight: float = 1.0
    custom: Optional[BaseDensity] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.custom is None and self.name not in BASES:
            raise ConfigError(f"unknown density {self.name!r}")
        if self.scale == 0:
            raise ConfigError("scale must be non-zero")
        if self.weight < 0:
            raise ConfigError("weight must be non-negative")
        base = self.base
        if not base.lo < base.hi:
            raise ConfigError(f"empty support ({base.lo}, {base.hi})")
        if base.lo < 0 < base.hi:
            raise ConfigError("a density piece may not straddle the origin")

    @classmethod
    def named(cls, name, **params):
        return cls(name, tuple(sorted((k, _freeze(v)) for k, v in params.items())))

    @classmethod
    def from_callable(cls, label, lo, hi, density, k=None):
        """Wrap an arbitrary ``density(x, dlo, dhi)``.  Not serialisable."""
        return cls("custom", (("label", label),), custom=BaseDensity(lo, hi, density, k))

    @property
    def base(self):
        try:
            return self.__dict__["_base"]
        except KeyError:
            pass
        if self.custom is not None:
            base = self.custom
        else:
            base = BASES[self.name](**dict(self.params))
        self.__dict__["_base"] = base
        return base

    @property
    def lo(self):
        b = self.base
        return self.scale * b.lo if self.scale > 0 else self.scale * b.hi

    @property
    def hi(self):
        b = self.base
        return self.scale * b.hi if self.scale > 0 else self.scale * b.lo

    @property
    def sign(self):
        return 1.0 if self.lo >= 0 else -1.0

    def _to_base(self, x, dlo, dhi):
        c = self.scale
        if c > 0:
            return x / c, dlo / c, dhi / c
        return x / c, dhi / -c, dlo / -c

    def density(self, x, dlo, dhi):
        bx, blo, bhi = self._to_base(x, dlo, dhi)
        return self.weight * self.base.density(bx, blo, bhi) / abs(self.scale)

    def k(self, x, dlo, dhi):
        """``|x|`` times the density, written so that it stays analytic."""
        bx, blo, bhi = self._to_base(x, dlo, dhi)
        base = self.base
        if base.k is not None:
            return self.weight * base.k(bx, blo, bhi)
        bsign = 1.0 if base.lo >= 0 else -1.0
        return self.weight * bsign * bx * base.density(bx, blo, bhi)

    def scaled(self, c):
        return DensityPiece(self.name, self.params, self.scale * c, self.weight, self.custom)

    def weighted(self, w):
        return DensityPiece(self.name, self.params, self.scale, self.weight * w, self.custom)

    def to_json(self):
        if self.custom is not None:
            raise ConfigError("custom density pieces cannot be serialised")
        params = {}
        for key, val in self.params:
            if isinstance(val, DensityPiece):
                params[key] = val.to_json()
            elif isinstance(val, tuple):
                params[key] = list(val)
            elif math.isinf(val):
                params[key] = "inf" if val > 0 else "-inf"
            else:
                params[key] = val
        out = {"kind": "density", "name": self.name, "params": params}
        if self.scale != 1.0:
            out["scale"] = self.scale
        if self.weight != 1.0:
            out["weight"] = self.weight
        return out


@dataclass(frozen=True)
class GridPiece:
    """Tabulated density, integrated with the trapezoid rule."""

    xs: tuple
    fs: tuple

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        fs = np.asarray(self.fs, dtype=float)
        if xs.ndim != 1 or xs.shape != fs.shape or xs.size < 2:
            raise ConfigError("grid needs matching x/f arrays of length >= 2")
        if np.any(np.diff(xs) <= 0):
            raise ConfigError("grid abscissae must increase")
        if np.any(fs < 0):
            raise ConfigError("grid density must be non-negative")
        if xs[0] < 0 < xs[-1]:
            raise ConfigError("a grid piece may not straddle the origin")

    lo = property(lambda self: float(self.xs[0]))
    hi = property(lambda self: float(self.xs[-1]))
    sign = property(lambda self: 1.0 if self.xs[0] >= 0 else -1.0)

    def _interp(self, x):
        return np.interp(np.real(x), self.xs, self.fs, left=0.0, right=0.0)

    def density(self, x, dlo=None, dhi=None):
        return self._interp(x)

    def k(self, x, dlo=None, dhi=None):
        return np.abs(np.real(x)) * self._interp(x)

    def dk(self, x):
        xs = np.asarray(self.xs)
        kk = np.abs(xs) * np.asarray(self.fs)
        return np.interp(x, xs, np.gradient(kk, xs))

    def scaled(self, c):
        xs = np.asarray(self.xs) * c
        fs = np.asarray(self.fs) / abs(c)
        if c < 0:
            xs, fs = xs[::-1], fs[::-1]
        return GridPiece(tuple(xs), tuple(fs))

    def weighted(self, w):
        return GridPiece(self.xs, tuple(np.asarray(self.fs) * w))

    def to_json(self):
        return {"kind": "grid", "x": list(self.xs), "f": list(self.fs)}


# ---------------------------------------------------------------------------
# Lévy measure
# ---------------------------------------------------------------------------


def _merge_atoms(atoms):
    merged = {}
    for x, m in atoms:
        x, m = float(x), float(m)
        merged[x] = merged.get(x, 0.0) + m
    return tuple(sorted((x, m) for x, m in merged.items() if m != 0.0))


def _subintervals(lo, hi, extra=()):
    inner = sorted({-1.0, 1.0, *(float(c) for c in extra)})
    cuts = [lo] + [c for c in inner if lo < c < hi] + [hi]
    return list(zip(cuts[:-1], cuts[1:]))


def _integrate(pieces, atoms, kernel, batch, tol, what, cuts=()):
    """``∫ kernel(x, sel) ν(dx)`` for each batch member.

    ``kernel(x, sel)`` gets a column ``x`` of shape ``(n, 1)`` and must
    return shape ``(n, len(sel))``.  Density pieces are split at ±1 and at
    ``cuts``, where the kernel may jump.
    """
    total = np.zeros(batch, dtype=complex)
    everyone = np.arange(batch)
    for x0, m in atoms:
        total += m * np.asarray(kernel(np.array([[x0]]), everyone))[0]
    for piece in pieces:
        if isinstance(piece, GridPiece):
            xs = np.asarray(piece.xs)
            vals = kernel(xs[:, None], everyone) * np.asarray(piece.fs)[:, None]
            total += np.trapezoid(vals, xs, axis=0)
            continue
        for a, b in _subintervals(piece.lo, piece.hi, cuts):
            total += _integrate_sub(piece, a, b, kernel, batch, tol, what)
    return total


def _integrate_sub(piece, a, b, kernel, batch, tol, what):
    lo, hi = piece.lo, piece.hi
    if np.isfinite(a) and np.isfinite(b):

        def f(x, dlo, dhi, sel):
            plo = (a - lo) + dlo if a != lo else dlo
            phi = (hi - b) + dhi if b != hi else dhi
            dens = piece.density(x, plo, phi)
            return kernel(x[:, None], sel) * dens[:, None]

        return quadrature.integrate(f, a, b, batch, tol=tol, what=what)[0]
    # Unbounded end: x = edge * exp(s) with s = (1 - v)/v, v in (0, 1].
    # The logarithmic variable copes with tails as slow as 1/(x log^2 x);
    # nodes whose x would overflow carry negligible mass and are zeroed.
    edge = a if np.isfinite(a) else b
    sgn = 1.0 if np.isfinite(a) else -1.0

    def f(v, vlo, vhi, sel):
        s = vhi / v
        ok = s < _S_MAX
        s = np.minimum(s, _S_MAX)
        x = edge * np.exp(s)
        grow = abs(edge) * np.expm1(s)
        inf = np.full_like(v, np.inf)
        if sgn > 0:
            dens = piece.density(x, (a - lo) + grow, inf)
        else:
            dens = piece.density(x, inf, (hi - b) + grow)
        jac = np.where(ok, np.abs(x) / v**2, 0.0)
        vals = kernel(x[:, None], sel) * (dens * jac)[:, None]
        return np.where(ok[:, None], vals, 0.0)

    return quadrature.integrate(f, 0.0, 1.0, batch, tol=tol, what=what)[0]


@dataclass(frozen=True)
class LevyMeasure:
    """ν on ℝ∖{0}: density pieces, grid pieces and atoms.

    Construction validates ``ν({0}) = 0``, non-negativity of atoms and
    finiteness of ``∫(x²∧1)ν(dx)``.
    """

    pieces: tuple = ()
    atoms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        object.__setattr__(self, "atoms", _merge_atoms(self.atoms))
        for x, m in self.atoms:
            if x == 0:
                raise ConfigError("a Lévy measure has no atom at 0")
            if not (m > 0 and np.isfinite(m)):
                raise ConfigError(f"atom mass must be positive, got {m}")
            if not np.isfinite(x):
                raise ConfigError("atom locations must be finite")
        try:
            mass, _, status = tail_series(self, lambda ax: np.minimum(ax, 1.0) ** 2, rel_tol=1e-6)
        except QuadratureError as exc:
            raise ConfigError(f"∫(x²∧1)ν(dx) does not converge: {exc}") from exc
        if status == "diverging" or not np.isfinite(mass):
            raise ConfigError("∫(x²∧1)ν(dx) is infinite")
        object.__setattr__(self, "_x2_mass", mass)

    # -- construction helpers ------------------------------------------------
    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def point(cls, x, mass=1.0):
        return cls(atoms=((x, mass),))

    @property
    def x2_mass(self):
        return self._x2_mass

    @property
    def is_zero(self):
        return not self.pieces and not self.atoms

    @property
    def has_density(self):
        return not self.atoms

    def hull(self):
        """Smallest interval containing the support (``None`` if ν = 0)."""
        ends = [p.lo for p in self.pieces] + [p.hi for p in self.pieces]
        ends += [x for x, _ in self.atoms]
        if not ends:
            return None
        return min(ends), max(ends)

    def __add__(self, other):
        return LevyMeasure(self.pieces + other.pieces, self.atoms + other.atoms)

    def scaled(self, c):
        """Push-forward under ``x -> c x``."""
        return LevyMeasure(
            tuple(p.scaled(c) for p in self.pieces),
            tuple((c * x, m) for x, m in self.atoms),
        )

    def weighted(self, w):
        if w == 0:
            return LevyMeasure()
        return LevyMeasure(
            tuple(p.weighted(w) for p in self.pieces),
            tuple((x, m * w) for x, m in self.atoms),
        )

    # -- integration ---------------------------------------------------------
    def integrate(self, kernel, batch, *, tol=QUAD_TOL, what="Lévy integral", cuts=()):
        """``∫ kernel(x, sel) ν(dx)`` for each batch member.

        ``kernel(x, sel)`` gets a column ``x`` of shape ``(n, 1)`` and must
        return shape ``(n, len(sel))``.  ``cuts`` lists extra points where
        the kernel is discontinuous.
        """
        return _integrate(self.pieces, self.atoms, kernel, batch, tol, what, cuts)

    def integrate_real(self, fn, *, tol=QUAD_TOL, cuts=()):
        """``∫ fn(x) ν(dx)`` for a real scalar integrand."""
        val = self.integrate(
            lambda x, sel: np.asarray(fn(x), dtype=float) * np.ones((1, len(sel))),
            1,
            tol=tol,
            cuts=cuts,
        )
        return float(val[0].real)

    # -- k(x) = |x| * density ------------------------------------------------
    def k_values(self, x):
        """Sum of ``k`` over all pieces at real points ``x`` (0 off support)."""
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for piece in self.pieces:
            inside = (x > piece.lo) & (x < piece.hi)
            if not np.any(inside):
                continue
            xi = x[inside]
            with np.errstate(all="ignore"):
                out[inside] += np.real(piece.k(xi, xi - piece.lo, piece.hi - xi))
        return out

    def k_at_edge(self, x0, side):
        """One-sided limit of ``k`` at ``x0`` (``side=+1`` right, ``-1`` left)."""
        total = 0.0
        for piece in self.pieces:
            if side > 0 and not (piece.lo <= x0 < piece.hi):
                continue
            if side < 0 and not (piece.lo < x0 <= piece.hi):
                continue
            with np.errstate(all="ignore"):
                val = np.real(piece.k(np.array([x0]), np.array([x0 - piece.lo]), np.array([piece.hi - x0])))[0]
            total += val
        return total

    # -- serialisation -------------------------------------------------------
    def to_json(self):
        parts = [p.to_json() for p in self.pieces]
        if self.atoms:
            parts.append({"kind": "atoms", "atoms": [list(a) for a in self.atoms]})
        if not parts:
            return {"kind": "atoms", "atoms": []}
        if len(parts) == 1:
            return parts[0]
        return {"kind": "sum", "parts": parts}

    @classmethod
    def from_json(cls, obj):
        if obj is None:
            return cls()
        kind = obj.get("kind")
        if kind == "atoms":
            return cls(atoms=tuple((float(x), float(m)) for x, m in obj.get("atoms", [])))
        if kind == "grid":
            xs, fs = np.asarray(obj["x"], float), np.asarray(obj["f"], float)
            if xs[0] < 0 < xs[-1]:
                # split at the origin, dropping the point x = 0 itself
                neg, pos = xs < 0, xs > 0
                return cls((GridPiece(tuple(xs[neg]), tuple(fs[neg])), GridPiece(tuple(xs[pos]), tuple(fs[pos]))))
            return cls((GridPiece(tuple(xs), tuple(fs)),))
        if kind == "density":
            return cls(_piece_from_json(obj))
        if kind == "sum":
            out = cls()
            for part in obj["parts"]:
                out = out + cls.from_json(part)
            return out
        raise ConfigError(f"unknown measure kind {kind!r}")


def _piece_from_json(obj):
    name = obj.get("name")
    if name not in BASES:
        raise ConfigError(f"unknown density {name!r}")
    params = dict(obj.get("params", {}))
    if name == "kprime":
        params["of"] = _piece_from_json(params["of"])[0]
    if name == "power":
        lo, hi = float(params["lo"]), float(params["hi"])
        if lo < 0 < hi:
            # one piece per side of the origin
            left = dict(params, hi=0.0)
            right = dict(params, lo=0.0)
            return _piece_from_json(dict(obj, params=left)) + _piece_from_json(dict(obj, params=right))
    piece = DensityPiece.named(name, **params)
    scale = float(obj.get("scale", 1.0))
    weight = float(obj.get("weight", 1.0))
    if scale != 1.0:
        piece = piece.scaled(scale)
    if weight != 1.0:
        piece = piece.weighted(weight)
    return (piece,)


# ---------------------------------------------------------------------------
# triplets and pairs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CharTriplet:
    """Free (or classical) characteristic triplet ``(a, ν, η)``."""

    a: float
    nu: LevyMeasure
    eta: float

    def __post_init__(self):
        if not (self.a >= 0 and np.isfinite(self.a)):
            raise ConfigError(f"semicircular part must be >= 0, got {self.a}")
        if not np.isfinite(self.eta):
            raise ConfigError("drift must be finite")
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "eta", float(self.eta))

    @property
    def is_point_mass(self):
        return self.a == 0 and self.nu.is_zero

    def to_json(self):
        return {"a": self.a, "eta": self.eta, "nu": self.nu.to_json()}

    @classmethod
    def from_json(cls, obj):
        try:
            return cls(float(obj.get("a", 0.0)), LevyMeasure.from_json(obj.get("nu")), float(obj.get("eta", 0.0)))
        except (KeyError, TypeError, AttributeError) as exc:
            raise ConfigError(f"malformed triplet JSON: {exc}") from exc


def add_triplets(t1, t2):
    return CharTriplet(t1.a + t2.a, t1.nu + t2.nu, t1.eta + t2.eta)


def scale_triplet(t, s):
    """Triplet of the ⊞-power (or *-power) ``s``: every component times ``s``."""
    return CharTriplet(s * t.a, t.nu.weighted(s), s * t.eta)


def dilation_drift_correction(nu, c):
    """``c ∫ x (1_{[-1,1]}(cx) - 1_{[-1,1]}(x)) ν(dx)``."""
    ac = abs(c)

    def integrand(x):
        inside_new = np.abs(c * x) <= 1
        inside_old = np.abs(x) <= 1
        return c * x * (inside_new.astype(float) - inside_old.astype(float))

    if ac == 1 or nu.is_zero:
        return 0.0
    return nu.integrate_real(integrand, cuts=(-1 / ac, 1 / ac))


def dilate_triplet(t, c):
    """Triplet of ``D_c μ`` (push-forward under ``x -> c x``)."""
    if c == 0:
        raise ConfigError("dilation factor must be non-zero")
    eta = c * t.eta + dilation_drift_correction(t.nu, c)
    return CharTriplet(c * c * t.a, t.nu.scaled(c), eta)


def shift_triplet(t, b):
    return CharTriplet(t.a, t.nu, t.eta + b)


def _pair_correction(nu):
    # ∫ x (1_{[-1,1]}(x) - 1/(1+x²)) ν(dx)
    if nu.is_zero:
        return 0.0
    return nu.integrate_real(lambda x: np.where(np.abs(x) <= 1, x**3, -x) / (1 + x * x))


@dataclass(frozen=True)
class SigmaMeasure:
    """Finite measure ``σ = s δ₀ + x²/(1+x²) ν(dx)``, stored through ν."""

    zero_mass: float
    levy: LevyMeasure

    @classmethod
    def from_atoms(cls, zero_mass, atoms):
        """σ given by point masses ``(x, m)``; ``x = 0`` goes to ``zero_mass``."""
        levy_atoms = []
        for x, m in atoms:
            if x == 0:
                zero_mass += m
            else:
                levy_atoms.append((x, m * (1 + x * x) / (x * x)))
        return cls(zero_mass, LevyMeasure(atoms=tuple(levy_atoms)))

    @property
    def atoms(self):
        """Off-zero point masses of σ itself."""
        return tuple((x, m * x * x / (1 + x * x)) for x, m in self.levy.atoms)

    @property
    def total_mass(self):
        return self.zero_mass + self.levy.integrate_real(lambda x: x * x / (1 + x * x))


@dataclass(frozen=True)
class GeneratingPair:
    gamma: float
    sigma: SigmaMeasure

    def __post_init__(self):
        if self.sigma.zero_mass < 0:
            raise ConfigError("σ must be a non-negative measure")
        if not np.isfinite(self.sigma.total_mass):
            raise ConfigError("σ must be finite")


def pair_from_triplet(t):
    """``(a, ν, η) -> (γ, σ)`` with ``σ = aδ₀ + x²/(1+x²)ν`` and
    ``γ = η - ∫ x (1_{[-1,1]}(x) - 1/(1+x²)) ν(dx)``."""
    return GeneratingPair(t.eta - _pair_correction(t.nu), SigmaMeasure(t.a, t.nu))


def triplet_from_pair(p):
    nu = p.sigma.levy
    return CharTriplet(p.sigma.zero_mass, nu, p.gamma + _pair_correction(nu))


def phi_from_pair(p, z):
    """``φ(z) = γ + ∫ (1+xz)/(z-x) σ(dx)`` for ``z`` in ℂ⁺."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    out = p.gamma + p.sigma.zero_mass / z
    if not p.sigma.levy.is_zero:

        def kernel(x, sel):
            zz = z[sel][None, :]
            return (1 + x * zz) / (zz - x) * (x * x / (1 + x * x))

        out = out + p.sigma.levy.integrate(kernel, z.size, what="generating pair")
    return out


# ---------------------------------------------------------------------------
# log-moment and classical Lévy–Khintchine
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LogMomentVerdict:
    finite: bool
    value: Optional[float] = None
    low_confidence: bool = False
    trace: tuple = ()


def _tail_band(piece, fn, s0, s1):
    """``∫ fn(|x|) ν(dx)`` over ``e^{s0} < |x| < e^{s1}`` in the variable ``s = log|x|``."""

    def f(s, dlo, dhi):
        ax = np.exp(s)
        x = piece.sign * ax
        return fn(ax) * np.real(piece.density(x, x - piece.lo, piece.hi - x)) * ax

    return quadrature.integrate_real(f, s0, s1, tol=1e-12)[0]


def tail_series(nu, fn, *, rel_tol=1e-6, max_rounds=9):
    """``∫ fn(|x|) ν(dx)`` with unbounded pieces summed band by band.

    The tail of each unbounded piece beyond ``R = e·max(1, |inner end|)`` is
    split into bands ``log|x| ∈ log R + [2^{j-1} - 1, 2^j - 1]``.  Returns
    ``(value, trace, status)`` with status ``"converged"`` (relative increment
    below ``rel_tol``), ``"diverging"`` (increments stopped contracting),
    ``"contracting"`` (geometric decay but not yet converged; the value then
    includes a geometric tail estimate) or ``"bounded"``.
    """
    finite = tuple(p for p in nu.pieces if np.isfinite(p.lo) and np.isfinite(p.hi))
    tails = [p for p in nu.pieces if not (np.isfinite(p.lo) and np.isfinite(p.hi))]

    def kernel(x, sel):
        return np.asarray(fn(np.abs(x)), dtype=float) * np.ones((1, len(sel)))

    value = float(_integrate(finite, nu.atoms, kernel, 1, QUAD_TOL, "Lévy integral")[0].real)
    if not tails:
        return value, (value,), "bounded"

    starts = []
    for p in tails:
        inner = p.lo if p.sign > 0 else -p.hi
        r = math.e * max(1.0, inner)
        starts.append(math.log(r))
        lo, hi = (p.lo, r) if p.sign > 0 else (-r, p.hi)
        for a, b in _subintervals(lo, hi):
            value += float(_integrate_sub(p, a, b, kernel, 1, QUAD_TOL, "Lévy integral")[0].real)

    trace = [value]
    increments = []
    status = "contracting"
    for j in range(1, max_rounds + 1):
        lo_off, hi_off = 2.0 ** (j - 1) - 1.0, 2.0**j - 1.0
        inc = sum(_tail_band(p, fn, s0 + lo_off, s0 + hi_off) for p, s0 in zip(tails, starts))
        increments.append(inc)
        value += inc
        trace.append(value)
        if abs(inc) <= rel_tol * max(abs(value), 1e-300):
            return value, tuple(trace), "converged"
        if len(increments) >= 3 and all(
            increments[i + 1] >= 0.7 * increments[i] for i in (-3, -2)
        ):
            return value, tuple(trace), "diverging"
    ratio = increments[-1] / increments[-2] if increments[-2] > 0 else 0.0
    if not ratio < 0.7:
        status = "undetermined"
    else:
        value += increments[-1] * ratio / (1.0 - ratio)
    return value, tuple(trace), status


def log_moment_check(nu, *, rel_tol=1e-6, max_rounds=9):
    """Decide whether ``∫_{|x|>1} log(1+|x|) ν(dx) < ∞``.

    Compact supports short-circuit to finite.  Otherwise the tail is summed
    over geometrically growing bands of ``log|x|``; it is finite once the
    relative change drops below ``rel_tol`` and infinite once increments stop
    contracting.  Anything else is reported infinite with ``low_confidence``.
    """

    def fn(ax):
        return np.where(ax > 1, np.log1p(ax), 0.0)

    value, trace, status = tail_series(nu, fn, rel_tol=rel_tol, max_rounds=max_rounds)
    if status in ("bounded", "converged"):
        return LogMomentVerdict(True, value, False, trace)
    return LogMomentVerdict(False, None, status != "diverging", trace)


def eval_classical_cumulant(t, theta):
    """``log μ̂(θ) = iηθ - aθ²/2 + ∫ (e^{iθx} - 1 - iθx 1_{[-1,1]}(x)) ν(dx)``."""
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    out = 1j * t.eta * theta - 0.5 * t.a * theta**2
    if not t.nu.is_zero:

        def kernel(x, sel):
            tx = x * theta[sel][None, :]
            return np.expm1(1j * tx) - np.where(np.abs(x) <= 1, 1j * tx, 0.0)

        out = out + t.nu.integrate(kernel, theta.size, what="classical cumulant")
    return out

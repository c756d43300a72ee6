"""Double-exponential (tanh-sinh) quadrature for batched complex integrands.

Nodes are generated level by level (step ``h = 2**-level``); each level adds
only the odd multiples of ``h`` so a refinement doubling re-uses every earlier
function value.  The integrand receives, besides the abscissae, the exact
distances to both interval ends.  Densities with algebraic endpoint
singularities should be written in terms of those distances, otherwise
``1 - x`` loses all precision a few ulps away from the endpoint.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import QuadratureError

# Nodes closer than this fraction of the interval to an endpoint are dropped;
# it keeps x**-2.5 type singular densities finite in double precision.
_MIN_FRACTION = 1e-100
_T_MAX = math.asinh(-math.log(_MIN_FRACTION) / math.pi)

DEFAULT_MIN_LEVEL = 3
DEFAULT_MAX_LEVEL = 11


@lru_cache(maxsize=None)
def _unit_nodes(level):
    """Nodes added at ``level`` on [0, 1].

    Returns ``(frac, side, weight)``: distance to the nearer end as a fraction
    of the interval, which end it is (-1 left, +1 right, 0 centre), and the
    weight including the step ``h``.
    """
    h = 2.0**-level
    n = int(math.ceil(_T_MAX / h))
    j = np.arange(-n, n + 1)
    if level > 0:
        j = j[j % 2 != 0]
    t = j * h
    s = 0.5 * math.pi * np.sinh(t)
    e = np.exp(-2.0 * np.abs(s))
    frac = e / (1.0 + e)
    weight = h * math.pi * np.cosh(t) * e / (1.0 + e) ** 2
    keep = (frac >= _MIN_FRACTION) & (weight > 0)
    side = np.sign(s).astype(int)
    return frac[keep], side[keep], weight[keep]


def nodes(level, a, b):
    """Abscissae, left/right distances and weights of one level on [a, b]."""
    frac, side, weight = _unit_nodes(level)
    width = b - a
    near = width * frac
    dlo = np.where(side <= 0, near, width - near)
    dhi = np.where(side <= 0, width - near, near)
    x = np.where(side <= 0, a + dlo, b - dhi)
    return x, dlo, dhi, weight * width


def integrate(
    func,
    a,
    b,
    batch,
    *,
    tol=1e-12,
    min_level=DEFAULT_MIN_LEVEL,
    max_level=DEFAULT_MAX_LEVEL,
    what="integral",
):
    """Integrate ``func`` over the finite interval [a, b].

    ``func(x, dlo, dhi, sel)`` must return an array of shape
    ``(len(x), len(sel))`` for the batch members ``sel`` (an index array into
    ``range(batch)``).  Refinement continues for each batch member until two
    successive levels differ by at most ``tol * max(1, |value|)``.

    Returns ``(values, errors)`` of length ``batch``.
    """
    if not (np.isfinite(a) and np.isfinite(b)) or b <= a:
        raise ValueError(f"bad interval [{a}, {b}]")
    everyone = np.arange(batch)
    est = np.zeros(batch, dtype=complex)
    err = np.full(batch, np.inf)
    active = everyone
    for level in range(max_level + 1):
        x, dlo, dhi, w = nodes(level, a, b)
        vals = np.asarray(func(x, dlo, dhi, active))
        if not np.all(np.isfinite(vals)):
            raise QuadratureError(
                f"{what}: non-finite integrand on [{a}, {b}]", level=level
            )
        part = w @ vals
        if level == 0:
            new = part
        else:
            new = 0.5 * est[active] + part
        if level >= min_level:
            err[active] = np.abs(new - est[active])
        est[active] = new
        if level >= min_level:
            done = err[active] <= tol * np.maximum(1.0, np.abs(new))
            active = active[~done]
            if active.size == 0:
                return est, err
    raise QuadratureError(
        f"{what}: refinement stalled on [{a}, {b}] at level {max_level}",
        worst_error=float(np.max(err[active])),
        unconverged=int(active.size),
    )


def integrate_real(f, a, b, *, tol=1e-12, **kw):
    """Scalar convenience wrapper: ``f(x, dlo, dhi)`` returns real values."""
    val, err = integrate(
        lambda x, dlo, dhi, sel: np.asarray(f(x, dlo, dhi), dtype=float)[:, None],
        a,
        b,
        1,
        tol=tol,
        **kw,
    )
    return float(val[0].real), float(err[0])

"""Random-matrix Monte Carlo checks of analytic densities.

Three ensembles, normalised so their spectral limits are catalog laws:

* ``gaussian_hermitian``: GUE with entry variance ``1/n``, limit ``w(0, 1)``.
* ``wishart(λ)``: ``X X* / n`` with ``X`` of size ``n × round(λ n)`` and unit
  variance complex entries, limit free Poisson ``λ``.
* ``free_sum(A, B)``: ``A + U B U*`` with ``U`` Haar unitary, limit the free
  additive convolution of the two limits.

Randomness comes from a Philox generator keyed by a SHA-256 digest of
``(model, n, seed)``, so a sample is reproducible regardless of the order
in which samples are drawn.
"""

from __future__ import annotations

import hashlib
import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, ConvergenceError

GUE = "gaussian_hermitian"


@dataclass(frozen=True)
class SpectrumSample:
    """Sorted eigenvalues of one matrix draw."""

    eigenvalues: np.ndarray
    n: int
    model: str
    seed: int

    def to_csv(self):
        head = f"# model={self.model} n={self.n} seed={self.seed}\nvalue\n"
        return head + "".join(f"{v:.17g}\n" for v in self.eigenvalues)


# ---------------------------------------------------------------------------
# model strings
# ---------------------------------------------------------------------------


def _split_args(text):
    depth, cur, out = 0, "", []
    for ch in text:
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    out.append(cur.strip())
    return out


def parse_model(model):
    """``"gaussian_hermitian"``, ``"wishart(0.5)"``, ``"free_sum(A,B)"`` → tuple tree."""
    text = model.replace(" ", "")
    if text in (GUE, "gue"):
        return (GUE,)
    m = re.fullmatch(r"wishart\((.*)\)", text)
    if m:
        try:
            lam = float(m.group(1).split("=")[-1])
        except ValueError as exc:
            raise ConfigError(f"bad Wishart ratio in {model!r}") from exc
        if not lam > 0:
            raise ConfigError("Wishart ratio λ must be positive")
        return ("wishart", lam)
    m = re.fullmatch(r"free_sum\((.*)\)", text)
    if m:
        args = _split_args(m.group(1))
        if len(args) != 2:
            raise ConfigError("free_sum takes exactly two models")
        return ("free_sum", parse_model(args[0]), parse_model(args[1]))
    raise ConfigError(f"unknown matrix model {model!r}")


def model_name(tree):
    if tree[0] == GUE:
        return GUE
    if tree[0] == "wishart":
        return f"wishart({tree[1]:g})"
    return f"free_sum({model_name(tree[1])},{model_name(tree[2])})"


def generator(model, n, seed):
    """Philox generator keyed by ``sha256("model|n|seed")``."""
    digest = hashlib.sha256(f"{model}|{n}|{seed}".encode()).digest()
    key = int.from_bytes(digest[:16], "little")
    return np.random.Generator(np.random.Philox(key=key))


def _ginibre(rng, rows, cols):
    """Complex entries with ``E|x|² = 1``."""
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def haar_unitary(rng, n):
    """Haar unitary via QR of a Ginibre matrix with the phase fix of ``R``'s diagonal."""
    q, r = np.linalg.qr(_ginibre(rng, n, n))
    d = np.diagonal(r)
    return q * (d / np.abs(d))[None, :]


def _matrix(tree, n, rng):
    kind = tree[0]
    if kind == GUE:
        a = _ginibre(rng, n, n)
        return (a + a.conj().T) / np.sqrt(2 * n)
    if kind == "wishart":
        p = max(1, int(round(tree[1] * n)))
        x = _ginibre(rng, n, p)
        return x @ x.conj().T / n
    a = _matrix(tree[1], n, rng)
    b = _matrix(tree[2], n, rng)
    u = haar_unitary(rng, n)
    return a + u @ b @ u.conj().T


def sample_spectrum(model, n, seed):
    """Eigenvalues of one draw of ``model`` at size ``n``.

    Examples
    --------
    >>> s = sample_spectrum("gaussian_hermitian", 50, 1)
    >>> s.eigenvalues.shape, bool(abs(s.eigenvalues.mean()) < 0.5)
    ((50,), True)
    """
    n = int(n)
    if n < 2:
        raise ConfigError("matrix size n must be at least 2")
    tree = parse_model(model)
    name = model_name(tree)
    rng = generator(name, n, int(seed))
    mat = _matrix(tree, n, rng)
    try:
        ev = np.linalg.eigvalsh(mat)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"eigensolver failed for {name}, n={n}, seed={seed}") from exc
    return SpectrumSample(np.sort(ev), n, name, int(seed))


def thread_count():
    """Worker cap from ``FREELEVY_THREADS`` (default: CPU count)."""
    raw = os.environ.get("FREELEVY_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        val = int(raw)
    except ValueError as exc:
        raise ConfigError(f"FREELEVY_THREADS must be an integer, got {raw!r}") from exc
    if val < 1:
        raise ConfigError("FREELEVY_THREADS must be at least 1")
    return val


def sample_many(model, n, seeds):
    """Samples for several seeds, drawn in parallel, returned in seed order."""
    seeds = list(seeds)
    with ThreadPoolExecutor(max_workers=min(thread_count(), max(1, len(seeds)))) as pool:
        return list(pool.map(lambda s: sample_spectrum(model, n, s), seeds))


# ---------------------------------------------------------------------------
# comparison with a density grid
# ---------------------------------------------------------------------------


def grid_cdf(grid, atoms=()):
    """CDF callable from a density grid plus optional point masses ``(x, m)``."""
    atoms = [(float(x), float(m)) for x, m in atoms]
    w_cont = 1.0 - sum(m for _, m in atoms)
    base = grid.cdf()

    def cdf(x, left_limit=False):
        x = np.asarray(x, dtype=float)
        out = w_cont * np.interp(x, grid.x, base, left=0.0, right=1.0)
        for loc, m in atoms:
            out = out + m * ((x > loc) if left_limit else (x >= loc))
        return out

    return cdf


def ks_distance(sample, grid, atoms=(), *, mass_tol=0.02):
    """``sup |F_n - F|`` between the empirical CDF and the grid CDF.

    The grid CDF is the cumulative trapezoid integral; ``atoms`` adds point
    masses the density grid cannot show.

    Raises
    ------
    ConfigError
        If the grid's mass is off by more than ``mass_tol`` or the grid
        misses more than 1% of the sample.
    """
    atom_mass = sum(m for _, m in atoms)
    if abs(grid.mass + atom_mass - 1) > mass_tol:
        raise ConfigError(f"grid mass {grid.mass:.4g} (+ atoms {atom_mass:.3g}) is not close to 1")
    ev = np.sort(np.asarray(getattr(sample, "eigenvalues", sample), dtype=float))
    # rank-deficient ensembles put their atom's eigenvalues at roundoff distance
    snap = 1e-8 * (1 + float(np.max(np.abs(ev))))
    for loc, _ in atoms:
        ev = np.where(np.abs(ev - loc) <= snap, loc, ev)
    lo = min([grid.x[0]] + [loc for loc, _ in atoms])
    hi = max([grid.x[-1]] + [loc for loc, _ in atoms])
    outside = np.mean((ev < lo) | (ev > hi))
    if outside > 0.01:
        raise ConfigError(f"grid [{lo:g}, {hi:g}] misses {outside:.1%} of the sample")
    n = ev.size
    # compare at each distinct value: F_n and F from the right, and their left limits
    vals, counts = np.unique(ev, return_counts=True)
    upper = np.cumsum(counts) / n
    lower = upper - counts / n
    cdf = grid_cdf(grid, atoms)
    right, left = cdf(vals), cdf(vals, left_limit=True)
    return float(max(np.max(np.abs(upper - right)), np.max(np.abs(lower - left))))


def sample_from_grid(grid, n, seed, atoms=()):
    """Inverse-CDF draws from a grid (used for self-tests of :func:`ks_distance`)."""
    rng = generator("grid", n, seed)
    u = rng.random(n)
    cdf = grid_cdf(grid, atoms)(grid.x)
    keep = np.concatenate([[True], np.diff(cdf) > 0])
    return np.sort(np.interp(u, cdf[keep], grid.x[keep]))


def limit_law(model):
    """Catalog name and parameters of the spectral limit of ``model``, or ``None``."""
    tree = parse_model(model)
    if tree[0] == GUE:
        return "semicircle", {"eta": 0.0, "a": 1.0}
    if tree[0] == "wishart":
        return "free_poisson", {"lam": tree[1]}
    left, right = limit_law(model_name(tree[1])), limit_law(model_name(tree[2]))
    if left and right and left[0] == right[0] == "semicircle":
        return "semicircle", {"eta": left[1]["eta"] + right[1]["eta"], "a": left[1]["a"] + right[1]["a"]}
    return None

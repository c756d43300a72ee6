"""End-to-end acceptance checks.

Each check recomputes one identity through the public API and compares it
with an independent closed form at a fixed tolerance.  ``run_all`` returns
one :class:`CriterionResult` per check; ``format_table`` renders the
pass/fail table printed by ``freelevy verify``.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import rmt
from .calculus import (
    bercovici_pata,
    boxplus,
    classical_convolve,
    classical_delta,
    classical_dilate,
    dilate,
    ClassicalSpec,
)
from .catalog import catalog_get
from .processes import (
    Integrand,
    SelfSimilarProcess,
    bdlp,
    bdlp_cumulant_integral,
    bdlp_levy_density,
    bdlp_triplet,
    levy_integral_cumulant,
    linear_combination_cumulant,
    reference_grid,
    sd_test,
    stochastic_integral_law,
)
from .transforms import (
    DistributionSpec,
    complex_step,
    density_grid,
    support_bounds,
    triplet_cumulant,
)

RMT_N = 1000
RMT_SEEDS = tuple(range(10))
KS_MATCH = 0.05
KS_MISMATCH = 0.15


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self):
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.1f}s)"


def _sup(a, b):
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


# ---------------------------------------------------------------------------


def criterion_1():
    """Free gamma density through the triplet route: f(1) = 1/π, support 3 ± 2√2."""
    spec = catalog_get("free_gamma", t=1, c=1).spec
    grid = density_grid(spec, 0.0, 6.0, 601, route="triplet")
    f1 = grid.value_at(1.0)
    err_f = abs(f1 - 1 / math.pi)
    err_lo = abs(grid.support_lo - (3 - 2 * math.sqrt(2)))
    err_hi = abs(grid.support_hi - (3 + 2 * math.sqrt(2)))
    ok = err_f <= 1e-5 and max(err_lo, err_hi) <= 1e-3
    return ok, f"|f(1)-1/π|={err_f:.2e}, edge errors {err_lo:.2e}/{err_hi:.2e}"


BDLP_LAWS = (
    ("semicircle", {"eta": 0.0, "a": 1.0}),
    ("free_gamma", {"t": 1.0, "c": 1.0}),
    ("free_gamma", {"t": 2.0, "c": 0.5}),
    ("mu_p", {"p": 0.5}),
    ("mu_pp", {"p": 1.5}),
)


def criterion_2():
    """z·C'(z) by complex step equals the closed driving-process cumulant."""
    z = reference_grid()
    worst = 0.0
    for name, params in BDLP_LAWS:
        entry = catalog_get(name, params)
        zc = z * complex_step(entry.spec.cumulant, z)
        worst = max(worst, _sup(zc, entry.bdlp_cumulant(z)))
        worst = max(worst, _sup(bdlp(entry.spec).one_dim_marginal.cumulant(z), entry.bdlp_cumulant(z)))
    return worst <= 1e-6, f"sup error {worst:.2e} over {len(BDLP_LAWS)} laws"


def criterion_3():
    """Quadrature of ηz + 2az² + z∫(x/(1-zx)² - x1)ν against the closed driving cumulants."""
    z = reference_grid()
    worst = 0.0
    cases = (
        ("free_gamma", {"t": 1.0, "c": 1.0}, lambda z: z / np.sqrt(1 - 4 * z)),
        ("mu_p", {"p": 0.5}, lambda z: 0.5 * z * (1 - z) ** -0.5),
        ("mu_pp", {"p": 1.5}, lambda z: 1.5 * z + 1.5 * z * (z + 1) ** 0.5),
    )
    for name, params, closed in cases:
        spec = catalog_get(name, params).spec
        worst = max(worst, _sup(bdlp_cumulant_integral(spec, z), closed(z)))
    return worst <= 1e-6, f"sup error {worst:.2e}"


def criterion_4():
    """-k' of the free gamma Lévy density and the cumulant of that measure."""
    spec = catalog_get("free_gamma", t=1, c=1).spec
    nu = bdlp_levy_density(spec)
    x = np.linspace(0.05, 3.95, 391)
    piece = nu.pieces[0]
    got = piece.density(x, x - piece.lo, piece.hi - x)
    want = 1 / (np.pi * x * np.sqrt(x * (4 - x)))
    rel = float(np.max(np.abs(got / want - 1)))
    z = reference_grid()
    cum = triplet_cumulant(bdlp_triplet(spec), z)
    err = _sup(cum, z / np.sqrt(1 - 4 * z))
    return rel <= 1e-4 and err <= 1e-6, f"density rel error {rel:.2e}, cumulant error {err:.2e}"


def criterion_5():
    """∫₀^{40/H} C_Z(e^{-tH} z) dt reproduces C of γ(1,1)."""
    spec = catalog_get("free_gamma", t=1, c=1).spec
    z = reference_grid()
    worst = 0.0
    for H in (0.5, 1.0, 2.0):
        lp = bdlp(spec, H)
        val = levy_integral_cumulant(lp, Integrand("exp", -H), 0.0, 40.0 / H, z)
        worst = max(worst, _sup(val, spec.cumulant(z)))
    return worst <= 1e-4, f"sup error {worst:.2e} for H in (0.5, 1, 2)"


def criterion_6():
    """Midpoint Riemann sums of ∫₁^e u^{-H} dX_u converge to the driving law."""
    spec = catalog_get("free_gamma", t=1, c=1).spec
    z = reference_grid()
    worst, depths = 0.0, []
    for H in (0.5, 1.0, 2.0):
        proc = SelfSimilarProcess(spec, H)
        law = stochastic_integral_law(proc, Integrand("power", -H), 1.0, math.e, max_depth=20)
        depths.append(law.meta["depth"])
        worst = max(worst, _sup(law.cumulant(z), bdlp(spec, H).one_dim_marginal.cumulant(z)))
    return worst <= 1e-4, f"sup error {worst:.2e}, depths {depths}"


def criterion_7(n_cases=50, seed=2024):
    """Σ c_j X_{a t_j} has the law of Σ c_j a^H X_{t_j}."""
    rng = np.random.default_rng(seed)
    spec = catalog_get("free_gamma", t=1, c=1).spec
    z = reference_grid()
    worst = 0.0
    for _ in range(n_cases):
        m = int(rng.integers(1, 6))
        coeffs = rng.normal(size=m)
        times = np.sort(rng.uniform(0.05, 5.0, size=m))
        a = float(np.exp(rng.uniform(np.log(0.1), np.log(10))))
        H = float(rng.uniform(0.2, 2.0))
        proc = SelfSimilarProcess(spec, H, validate=False)
        lhs = linear_combination_cumulant(proc, coeffs, a * times, z)
        rhs = linear_combination_cumulant(proc, coeffs, times, a**H * z)
        worst = max(worst, _sup(lhs, rhs))
    return worst <= 1e-10, f"sup error {worst:.2e} over {n_cases} cases"


def _bp_cases():
    laws = [
        catalog_get("semicircle", eta=0, a=1),
        catalog_get("semicircle", eta=1, a=0.5),
        catalog_get("free_gamma", t=1, c=1),
        catalog_get("free_gamma", t=2, c=0.5),
        catalog_get("mu_p", p=0.5),
        catalog_get("mu_p", p=0.3),
        catalog_get("mu_pp", p=1.5),
        catalog_get("free_poisson", lam=1),
        catalog_get("free_poisson", lam=2),
        catalog_get("delta", c=1.5),
    ]
    specs = [ClassicalSpec(e.spec.triplet, e.spec.label) for e in laws]
    factors = (2.0, -0.5, 3.0, 0.25, -1.0, 1.5, 0.1, -2.0, 5.0, 0.7)
    return [(specs[i], specs[(i + 3) % len(specs)], factors[i]) for i in range(len(specs))] + [
        (specs[i], specs[(i + 7) % len(specs)], -factors[i]) for i in range(len(specs))
    ]


def criterion_8():
    """Λ is a homomorphism, commutes with dilations and fixes point masses, bitwise."""
    cases = _bp_cases()
    bad = 0
    for c1, c2, c in cases:
        hom = bercovici_pata(classical_convolve(c1, c2)).triplet == boxplus(bercovici_pata(c1), bercovici_pata(c2)).triplet
        dil = bercovici_pata(classical_dilate(c1, c)).triplet == dilate(bercovici_pata(c1), c).triplet
        fix = bercovici_pata(classical_delta(c)).triplet == DistributionSpec.delta(c).triplet
        bad += not (hom and dil and fix)
    return bad == 0, f"{len(cases) - bad}/{len(cases)} cases exact"


def criterion_9():
    """D_a w ⊞ D_b w = D_{√(a²+b²)} w for the standard semicircle."""
    w = catalog_get("semicircle", eta=0, a=1).spec
    z = reference_grid()
    pairs = ((1, 1), (0.5, 2), (3, 4), (-1, 2), (0.1, 0.2), (2, -3), (-0.7, -0.7), (10, 0.01), (1.3, 0.4), (5, 12))
    worst = 0.0
    for a, b in pairs:
        lhs = boxplus(dilate(w, a), dilate(w, b)).cumulant(z)
        rhs = dilate(w, math.hypot(a, b)).cumulant(z)
        worst = max(worst, float(np.max(np.abs(lhs - rhs) / np.maximum(1, np.abs(rhs)))))
    return worst <= 1e-14, f"relative error {worst:.2e} over {len(pairs)} pairs"


def criterion_10():
    """SD verdicts of both methods on the catalog."""
    want_true = [("free_gamma", {"t": t, "c": c}) for t, c in ((1, 1), (2, 0.5), (0.5, 2))]
    want_true += [("mu_p", {"p": p}) for p in (0.2, 0.5, 0.8)]
    want_false = [("free_poisson", {"lam": 1.0}), ("free_poisson", {"lam": 0.5})]
    others = [("semicircle", {}), ("mu_pp", {"p": 1.5}), ("free_poisson", {"lam": 3.0}), ("delta", {"c": 2.0})]
    problems = []
    for group, expect in ((want_true, True), (want_false, False), (others, None)):
        for name, params in group:
            v = sd_test(catalog_get(name, params).spec, "both")
            a, b = v.diagnostics["A"].is_sd, v.diagnostics["B"].is_sd
            if a != b:
                problems.append(f"{name}{params} methods disagree")
            elif expect is not None and a != expect:
                problems.append(f"{name}{params} gave {a}")
    n = len(want_true) + len(want_false) + len(others)
    return not problems, "; ".join(problems) or f"{n} laws, both methods agree"


def _catalog_grid(name, params, n=801):
    entry = catalog_get(name, params)
    lo, hi = support_bounds(entry.spec)
    return entry, density_grid(entry.spec, lo, hi, n, spacing="graded")


def criterion_11(n=RMT_N, seeds=RMT_SEEDS):
    """Median KS distances of matrix spectra to the limit laws."""
    grids = {
        "w01": density_grid(catalog_get("semicircle", eta=0, a=1).spec, -3, 3, 1201),
        "w02": density_grid(catalog_get("semicircle", eta=0, a=2).spec, -3.5, 3.5, 1401),
        "mp1": _catalog_grid("free_poisson", {"lam": 1.0}, 1201)[1],
    }
    gue = rmt.sample_many(rmt.GUE, n, seeds)
    wis = rmt.sample_many("wishart(1)", n, seeds)
    fs = rmt.sample_many(f"free_sum({rmt.GUE},{rmt.GUE})", n, seeds)
    med = {
        "GUE~w(0,1)": float(np.median([rmt.ks_distance(s, grids["w01"]) for s in gue])),
        "Wishart~MP(1)": float(np.median([rmt.ks_distance(s, grids["mp1"]) for s in wis])),
        "free_sum~w(0,2)": float(np.median([rmt.ks_distance(s, grids["w02"]) for s in fs])),
        "GUE~w(0,2)": float(np.median([rmt.ks_distance(s, grids["w02"]) for s in gue])),
    }
    matched = all(med[k] < KS_MATCH for k in ("GUE~w(0,1)", "Wishart~MP(1)", "free_sum~w(0,2)"))
    control = med["GUE~w(0,2)"] > KS_MISMATCH
    detail = ", ".join(f"{k} {v:.3f}" for k, v in med.items())
    if not control:
        detail += f" (control needs > {KS_MISMATCH})"
    return matched and control, detail


NORMALIZATION_LAWS = (
    ("semicircle", {"eta": 0.0, "a": 1.0}),
    ("semicircle", {"eta": 1.0, "a": 0.3}),
    ("free_gamma", {"t": 1.0, "c": 1.0}),
    ("free_gamma", {"t": 2.0, "c": 0.5}),
    ("free_gamma", {"t": 0.5, "c": 2.0}),
    ("mu_p", {"p": 0.2}),
    ("mu_p", {"p": 0.5}),
    ("mu_p", {"p": 0.9}),
    ("mu_pp", {"p": 1.1}),
    ("mu_pp", {"p": 1.5}),
    ("mu_pp", {"p": 1.9}),
    ("free_poisson", {"lam": 0.5}),
    ("free_poisson", {"lam": 1.0}),
    ("free_poisson", {"lam": 3.0}),
)


def criterion_12():
    """Density grids plus atoms integrate to one."""
    worst, where = 0.0, ""
    for name, params in NORMALIZATION_LAWS:
        entry, grid = _catalog_grid(name, params)
        err = abs(grid.mass + sum(m for _, m in entry.atoms) - 1)
        if err > worst:
            worst, where = err, f"{name}{params}"
    return worst <= 1e-3, f"max |mass-1| {worst:.2e} ({where}) over {len(NORMALIZATION_LAWS)} laws"


CRITERIA = (
    (1, "free gamma pipeline", criterion_1),
    (2, "BDLP formula", criterion_2),
    (3, "BDLP triplet quadrature", criterion_3),
    (4, "BDLP Lévy measure", criterion_4),
    (5, "reconstruction integral", criterion_5),
    (6, "Riemann-sum integral", criterion_6),
    (7, "telescoping selfsimilarity", criterion_7),
    (8, "Λ algebra", criterion_8),
    (9, "free 2-stable scaling", criterion_9),
    (10, "SD verdicts", criterion_10),
    (11, "RMT validation", criterion_11),
    (12, "normalization", criterion_12),
)


def run_criterion(number):
    num, name, fn = CRITERIA[number - 1]
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure of the criterion, reported as such
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CriterionResult(num, name, bool(ok), detail, time.perf_counter() - t0)


def run_all(numbers=None):
    numbers = numbers or [c[0] for c in CRITERIA]
    return [run_criterion(n) for n in numbers]


def format_table(results):
    lines = [r.line() for r in results]
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} criteria passed")
    return "\n".join(lines)

"""Command-line front end.

Every subcommand reads one distribution, given as ``--catalog NAME
[--params k=v,...]``, ``--triplet JSON`` or ``--spec JSON`` (a JSON value
or a path to a file holding one).  Spec JSON is either
``{"catalog": name, "params": {...}}`` or a triplet
``{"a": ..., "eta": ..., "nu": {...}}``.

CSV contracts (header row, ``.`` decimal point, ``\\n`` line ends):

* density: ``x,f``
* cumulant: ``re_z,im_z,re_C,im_C``
* eigenvalues: ``value`` (after a ``# model=... n=... seed=...`` comment)
* Lévy density: ``x,density``

Exit status: 0 success, 1 configuration error, 2 mathematical rejection,
3 convergence failure, 4 acceptance criteria failed.  Errors are also
written to stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import acceptance, rmt
from .calculus import bercovici_pata, bercovici_pata_inverse, boxplus, dilate, ClassicalSpec
from .catalog import NAMES, catalog_get, parse_params
from .errors import ConfigError, FreeLevyError
from .measures import CharTriplet
from .processes import (
    FreeLevyProcessSpec,
    Integrand,
    SelfSimilarProcess,
    bdlp,
    increment,
    levy_integral_cumulant,
    marginal,
    reference_grid,
    sd_test,
    stochastic_integral_law,
)
from .transforms import (
    QUAD_TOL,
    DistributionSpec,
    density_grid,
    eval_cumulant,
    support_bounds,
)

EXIT_CRITERIA_FAILED = 4


# ---------------------------------------------------------------------------
# input helpers
# ---------------------------------------------------------------------------


def _load_json(text):
    path = Path(text)
    if not text.lstrip().startswith(("{", "[")) and path.exists():
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from exc


def spec_from_json(obj):
    """Distribution from ``{"catalog": ..., "params": ...}`` or a triplet object."""
    if not isinstance(obj, dict):
        raise ConfigError("spec JSON must be an object")
    if "catalog" in obj:
        return catalog_get(obj["catalog"], obj.get("params") or {}).spec
    triplet = CharTriplet.from_json(obj.get("triplet", obj))
    return DistributionSpec.from_triplet(triplet, obj.get("label", "triplet"))


def _catalog_text(text):
    name, _, params = text.strip().partition(":")
    return name, parse_params(params)


def spec_from_text(text):
    """``name``, ``name:k=v,...`` or JSON."""
    text = text.strip()
    if text.startswith("{") or Path(text).exists():
        return spec_from_json(_load_json(text))
    return catalog_get(*_catalog_text(text)).spec


def _spec_from_args(args):
    sources = [s for s in (args.catalog, args.triplet, args.spec) if s is not None]
    if len(sources) != 1:
        raise ConfigError("give exactly one of --catalog, --triplet, --spec")
    if args.catalog is not None:
        return catalog_get(args.catalog, parse_params(args.params or "")).spec
    if args.params:
        raise ConfigError("--params only applies to --catalog")
    if args.triplet is not None:
        return DistributionSpec.from_triplet(CharTriplet.from_json(_load_json(args.triplet)))
    return spec_from_json(_load_json(args.spec))


def _parse_range(text, allow_inf=False):
    try:
        lo, hi = (float(v) for v in text.split(":"))
    except ValueError as exc:
        raise ConfigError(f"range must look like lo:hi, got {text!r}") from exc
    if not (math.isfinite(lo) and (math.isfinite(hi) or allow_inf)) or not lo < hi:
        raise ConfigError(f"bad range {text!r}")
    return lo, hi


def _positive(name, val):
    if not val > 0:
        raise ConfigError(f"{name} must be positive")
    return val


def _parse_points(text):
    if text is None or text == "reference":
        return reference_grid()
    try:
        return np.array([complex(p.replace(" ", "")) for p in text.split(";") if p.strip()])
    except ValueError as exc:
        raise ConfigError(f"points must be ';'-separated complex numbers like -1-1j, got {text!r}") from exc


def _parse_seeds(text):
    if ":" in text:
        a, b = text.split(":")
        return list(range(int(a), int(b)))
    return [int(s) for s in text.split(",") if s.strip()]


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------


def spec_to_json(spec):
    out = {"label": spec.label, "tag": spec.tag, "closed_form": spec.cumulant is not None}
    out["triplet"] = None if spec.triplet is None else spec.triplet.to_json()
    meta = {k: v for k, v in spec.meta.items() if isinstance(v, (str, int, float, bool, dict, list))}
    if meta:
        out["meta"] = meta
    return out


def _emit(args, text):
    if getattr(args, "out", None) and args.out != "-":
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, obj):
    _emit(args, json.dumps(obj, indent=2, default=_default) + "\n")


def _default(val):
    if isinstance(val, np.ndarray):
        return val.tolist()
    if isinstance(val, (np.floating, np.integer, np.bool_)):
        return val.item()
    if isinstance(val, complex):
        return {"re": val.real, "im": val.imag}
    return repr(val)


def _complex_csv(z, c):
    rows = ["re_z,im_z,re_C,im_C"]
    rows += [f"{a.real:.17g},{a.imag:.17g},{b.real:.17g},{b.imag:.17g}" for a, b in zip(z, c)]
    return "\n".join(rows) + "\n"


def _grid_for(spec, args):
    if args.range:
        lo, hi = _parse_range(args.range)
    else:
        lo, hi = support_bounds(spec)
        if lo == hi:
            raise ConfigError("point mass: no density")
    return density_grid(spec, lo, hi, args.n, spacing=args.spacing, route=args.route, quad_tol=args.quad_tol)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_density(args):
    spec = _spec_from_args(args)
    grid = _grid_for(spec, args)
    _emit(args, grid.to_csv())


def cmd_cumulant(args):
    spec = _spec_from_args(args)
    z = _parse_points(args.points)
    c = eval_cumulant(spec, z, route=args.route, tol=args.quad_tol)
    _emit(args, _complex_csv(z, np.atleast_1d(c)))


def _with_density(args, spec, obj):
    if args.density_range:
        lo, hi = _parse_range(args.density_range)
        grid = density_grid(spec, lo, hi, args.n, spacing=args.spacing)
        obj["density"] = {"x": grid.x, "f": grid.f, "mass": grid.mass}
    obj["cumulant_on_reference_grid"] = _cumulant_table(spec)
    return obj


def _cumulant_table(spec):
    z = reference_grid()
    c = eval_cumulant(spec, z)
    return {"re_z": z.real, "im_z": z.imag, "re_C": c.real, "im_C": c.imag}


def cmd_convolve(args):
    spec = _spec_from_args(args)
    other = spec_from_text(args.with_)
    out = boxplus(spec, other)
    _emit_json(args, _with_density(args, out, spec_to_json(out)))


def cmd_dilate(args):
    spec = _spec_from_args(args)
    out = dilate(spec, args.c)
    _emit_json(args, _with_density(args, out, spec_to_json(out)))


def cmd_bp(args):
    triplet = CharTriplet.from_json(_load_json(args.triplet))
    if args.inverse:
        res = bercovici_pata_inverse(DistributionSpec.from_triplet(triplet))
        obj = {"side": "classical", "triplet": res.triplet.to_json()}
    else:
        res = bercovici_pata(ClassicalSpec(triplet))
        obj = {"side": "free", "triplet": res.triplet.to_json()}
    _emit_json(args, obj)


def cmd_sd_test(args):
    spec = _spec_from_args(args)
    verdict = sd_test(spec, args.method)
    obj = verdict.to_dict()
    if not args.full:
        obj = {k: v for k, v in obj.items() if not isinstance(v, (list, dict)) or k in ("A", "B")}
        for key in ("A", "B"):
            if key in obj:
                obj[key] = {k: v for k, v in obj[key].items() if not isinstance(v, (list, dict))}
    _emit_json(args, obj)


def cmd_bdlp(args):
    spec = _spec_from_args(args)
    lp = bdlp(spec, args.H)
    z1 = lp.one_dim_marginal
    obj = {"process": lp.tag, "H": args.H, "marginal": spec_to_json(z1), "cumulant_tag": z1.tag}
    obj["cumulant_on_reference_grid"] = _cumulant_table(z1)
    if args.emit_levy:
        if z1.triplet is None:
            raise ConfigError("--emit-levy needs a law with a Lévy density")
        nu = z1.triplet.nu
        lo, hi = nu.hull() or (0.0, 1.0)
        if args.levy_range:
            lo, hi = _parse_range(args.levy_range)
        x = np.linspace(lo, hi, args.levy_n + 2)[1:-1]
        dens = np.zeros_like(x)
        for p in nu.pieces:
            inside = (x > p.lo) & (x < p.hi)
            xi = x[inside]
            dens[inside] += np.real(p.density(xi, xi - p.lo, p.hi - xi))
        rows = ["x,density"] + [f"{a:.17g},{b:.17g}" for a, b in zip(x, dens)]
        csv = "\n".join(rows) + "\n"
        obj["levy_atoms"] = [list(a) for a in nu.atoms]
        if args.levy_out:
            Path(args.levy_out).write_text(csv)
            obj["levy_csv"] = args.levy_out
        else:
            obj["levy_density"] = {"x": x, "density": dens}
    _emit_json(args, obj)


def cmd_marginal(args):
    spec = _spec_from_args(args)
    out = marginal(SelfSimilarProcess(spec, args.H), args.t)
    _emit_json(args, _with_density(args, out, spec_to_json(out)))


def cmd_increment(args):
    spec = _spec_from_args(args)
    out = increment(SelfSimilarProcess(spec, args.H), args.s, args.t)
    _emit_json(args, _with_density(args, out, spec_to_json(out)))


def cmd_integrate(args):
    spec = _spec_from_args(args)
    f = Integrand.parse(args.f)
    lo, hi = _parse_range(args.interval, allow_inf=True)
    z = _parse_points(args.points)
    _positive("--tol", args.tol)
    if args.process == "levy":
        lp = FreeLevyProcessSpec(spec, label=spec.label)
        val, info = levy_integral_cumulant(lp, f, lo, hi, z, tol=args.tol, return_info=True)
        obj = {"process": "levy", "integrand": str(f), "interval": [lo, hi], "info": info}
    else:
        if math.isinf(hi):
            raise ConfigError("Riemann-sum integrals need a finite interval")
        law = stochastic_integral_law(SelfSimilarProcess(spec, args.H), f, lo, hi, tol=args.tol, max_depth=args.max_depth, grid=z)
        val = law.cumulant(z)
        trace = law.meta["trace"]
        obj = {
            "process": "selfsimilar",
            "H": args.H,
            "integrand": str(f),
            "interval": [lo, hi],
            "depth": trace.depth,
            "sup_differences": trace.sup_differences,
        }
    obj["cumulant"] = {"re_z": z.real, "im_z": z.imag, "re_C": val.real, "im_C": val.imag}
    _emit_json(args, obj)


def cmd_rmt(args):
    seeds = _parse_seeds(args.seeds)
    samples = rmt.sample_many(args.model, args.n, seeds)
    report = {"model": samples[0].model, "n": args.n, "seeds": seeds}
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for s in samples:
            (out / f"eigenvalues_{s.model}_{s.n}_{s.seed}.csv").write_text(s.to_csv())
    law = rmt.limit_law(args.model)
    if args.against:
        law = _catalog_text(args.against)
    if law is not None:
        entry = catalog_get(*law)
        lo, hi = support_bounds(entry.spec)
        pad = 0.25 * (hi - lo)
        lo_g = lo - pad if not entry.atoms else lo
        grid = density_grid(entry.spec, lo_g, hi + pad, 1201, spacing="graded")
        ks = [rmt.ks_distance(s, grid, entry.atoms) for s in samples]
        report.update(law={"name": law[0], "params": law[1]}, ks=ks, ks_median=float(np.median(ks)))
    _emit_json(args, report)


def cmd_verify(args):
    numbers = [int(v) for v in args.only.split(",")] if args.only else None
    results = acceptance.run_all(numbers)
    _emit(args, acceptance.format_table(results) + "\n")
    return 0 if all(r.passed for r in results) else EXIT_CRITERIA_FAILED


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_spec_args(p):
    g = p.add_argument_group("distribution (exactly one)")
    g.add_argument("--catalog", help=f"catalog law: {', '.join(NAMES)}")
    g.add_argument("--params", help="catalog parameters, e.g. t=1,c=1")
    g.add_argument("--triplet", help="free triplet JSON (or a path to it)")
    g.add_argument("--spec", help='spec JSON {"catalog":..,"params":..} or a triplet (or a path)')


def _add_common(p, out_help="output file (default stdout)"):
    p.add_argument("--out", "-o", help=out_help)
    p.add_argument("--route", choices=("auto", "closed", "triplet"), default="auto", help="cumulant evaluation route")
    p.add_argument("--quad-tol", type=float, default=QUAD_TOL, help="Lévy quadrature tolerance")


def _add_density_opt(p):
    p.add_argument("--density-range", help="also tabulate the density on lo:hi")
    p.add_argument("--n", type=int, default=601, help="density grid size")
    p.add_argument("--spacing", choices=("uniform", "graded"), default="graded")


class _Parser(argparse.ArgumentParser):
    """Usage errors become :class:`ConfigError` (exit 1), not argparse's exit 2."""

    def error(self, message):
        raise ConfigError(f"{self.prog}: {message}")


def build_parser():
    parser = _Parser(
        prog="freelevy",
        description="Freely infinitely divisible laws, selfdecomposability and driving processes.",
        epilog=(
            "CSV columns: density x,f; cumulant re_z,im_z,re_C,im_C; eigenvalues value; Lévy density x,density. "
            "Exit codes: 1 config, 2 rejected input, 3 no convergence, 4 acceptance failed."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("density", help="density grid by Stieltjes inversion (CSV x,f)")
    _add_spec_args(p)
    _add_common(p)
    p.add_argument("--range", help="x range lo:hi (default: computed support)")
    p.add_argument("--n", type=int, default=601, help="number of grid points")
    p.add_argument("--spacing", choices=("uniform", "graded"), default="uniform")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("cumulant", help="C(z) on points of the lower half-plane (CSV re_z,im_z,re_C,im_C)")
    _add_spec_args(p)
    _add_common(p)
    p.add_argument("--points", help="';'-separated complex points (write --points=-1-1j;...), or 'reference' for the 5x5 grid")
    p.set_defaults(func=cmd_cumulant)

    p = sub.add_parser("convolve", help="free additive convolution with a second law (JSON)")
    _add_spec_args(p)
    _add_common(p)
    p.add_argument("--with", dest="with_", required=True, help="second law: name[:k=v,...] or JSON")
    _add_density_opt(p)
    p.set_defaults(func=cmd_convolve)

    p = sub.add_parser("dilate", help="law of cX (JSON)")
    _add_spec_args(p)
    _add_common(p)
    p.add_argument("--c", type=float, required=True, help="dilation factor (non-zero)")
    _add_density_opt(p)
    p.set_defaults(func=cmd_dilate)

    p = sub.add_parser("bp", help="Bercovici–Pata map on a triplet (JSON)")
    p.add_argument("--triplet", required=True, help="triplet JSON (or a path)")
    p.add_argument("--inverse", action="store_true", help="apply the inverse map (free to classical)")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_bp)

    p = sub.add_parser("sd-test", help="free selfdecomposability verdict (JSON)")
    _add_spec_args(p)
    p.add_argument("--method", choices=("auto", "A", "B", "both"), default="auto")
    p.add_argument("--full", action="store_true", help="include the tested points and values")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_sd_test)

    p = sub.add_parser("bdlp", help="background driving free Lévy process (JSON)")
    _add_spec_args(p)
    p.add_argument("--H", type=float, default=1.0, help="selfsimilarity index")
    p.add_argument("--emit-levy", action="store_true", help="tabulate the Lévy density of Z_1")
    p.add_argument("--levy-range", help="x range lo:hi of the table (default: support hull)")
    p.add_argument("--levy-n", type=int, default=400)
    p.add_argument("--levy-out", help="write the Lévy table as CSV x,density here")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_bdlp)

    for name, fn, helptext in (
        ("marginal", cmd_marginal, "law of X_t of the H-selfsimilar process (JSON)"),
        ("increment", cmd_increment, "law of X_t - X_s (JSON)"),
    ):
        p = sub.add_parser(name, help=helptext)
        _add_spec_args(p)
        p.add_argument("--H", type=float, required=True)
        if name == "increment":
            p.add_argument("--s", type=float, required=True)
        p.add_argument("--t", type=float, required=True)
        p.add_argument("--out", "-o")
        _add_density_opt(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("integrate", help="law of a stochastic integral (JSON)")
    _add_spec_args(p)
    p.add_argument("--process", choices=("selfsimilar", "levy"), default="selfsimilar",
                   help="selfsimilar: spec is L(X_1); levy: spec is L(Z_1)")
    p.add_argument("--H", type=float, default=1.0)
    p.add_argument("--f", required=True, help="integrand: const(θ), power(θ) or exp(θ)")
    p.add_argument("--interval", required=True, help="A:B, B may be inf for levy")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--max-depth", type=int, default=20)
    p.add_argument("--points", help="';'-separated complex points (default: 5x5 reference grid)")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("rmt", help="matrix spectra and KS distances (eigenvalue CSVs + JSON)")
    p.add_argument("--model", required=True, help="gaussian_hermitian, wishart(λ), free_sum(A,B)")
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--seeds", default="0:10", help="a:b range or comma list")
    p.add_argument("--against", help="compare with this catalog law (default: the model's limit)")
    p.add_argument("--out-dir", help="directory for eigenvalue CSVs")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_rmt)

    p = sub.add_parser("verify", help="run the acceptance checks and print a pass/fail table")
    p.add_argument("--only", help="comma list of criterion numbers")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if "FREELEVY_THREADS" in os.environ:
            rmt.thread_count()  # validate early
        status = args.func(args)
    except FreeLevyError as exc:
        sys.stderr.write(json.dumps(exc.to_dict(), default=_default) + "\n")
        return exc.exit_code
    return status or 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

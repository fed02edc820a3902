"""Command-line interface.

One subcommand per library capability, emitting RFC-4180-style CSV (UTF-8,
'.' decimal, header row with SI-unit suffixes) or JSON for parameter sets.
Flag units follow common lab usage (Tesla, Kelvin, degrees, GHz); all
conversion to the core SI-Hz representation happens here. Every output is
accompanied by a run manifest (sibling .manifest.json file, or stderr when
writing to stdout); manifests of identical invocations differ only in the
timestamp. Exit codes: 0 success, 1 computation error (error name on
stderr), 2 usage error.
"""

import argparse
import io
import json
import math
import sys
import warnings
from dataclasses import dataclass, asdict
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__, geometry, zeeman, spectra, relaxation, fitting, report
from .constants import load_constants, constants_hash
from .errors import TmYagError, ConflictingFlags


@dataclass
class RunManifest:
    subcommand: str
    flags: dict
    constants_hash: str
    version: str
    timestamp: str


def _fmt(x):
    return repr(float(x))


def _csv(header, rows):
    buf = io.StringIO()
    buf.write(",".join(header) + "\r\n")
    for row in rows:
        buf.write(",".join(c if isinstance(c, str) else _fmt(c) for c in row)
                  + "\r\n")
    return buf.getvalue()


def _manifest(args, consts):
    flags = {k: v for k, v in vars(args).items() if k != "func"}
    return RunManifest(subcommand=args.command, flags=flags,
                       constants_hash=constants_hash(consts),
                       version=__version__,
                       timestamp=datetime.now(timezone.utc).isoformat())


def _emit(args, consts, payload):
    manifest = json.dumps(asdict(_manifest(args, consts)), indent=2, default=str)
    if getattr(args, "out", None):
        out = Path(args.out)
        out.write_text(payload, encoding="utf-8", newline="")
        out.with_suffix(out.suffix + ".manifest.json").write_text(
            manifest + "\n", encoding="utf-8")
    else:
        sys.stdout.write(payload)
        sys.stderr.write(manifest + "\n")
    return 0


def _parse_pol(text):
    if text == "111":
        return geometry.U_111
    if text == "-1-12":
        return geometry.U_112BAR
    parts = [float(x) for x in text.split(",")]
    if len(parts) != 3:
        raise ConflictingFlags(f"polarization must be '111', '-1-12' or "
                               f"'x,y,z', got {text!r}")
    return np.array(parts)


def _load_relax_params(path):
    if path is None:
        return relaxation.REFERENCE_RELAX_PARAMS
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    return relaxation.RelaxParams(**{name: float(doc[name])
                                     for name in fitting.RELAX_PARAM_NAMES})


def _gamma(args, consts):
    if getattr(args, "gamma", None) is not None:
        return args.gamma
    return report.effective_gamma(consts)


def _zero_field_line():
    return spectra.LineShape(center=0.0, fwhm=spectra.DEFAULT_FWHM0,
                             peak_alpha=spectra.DEFAULT_PEAK0)


# ---------------------------------------------------------------------------
# Subcommand handlers

def cmd_site_table(args, consts):
    b_vec = geometry.field_vector(geometry.FieldConfig(args.B, math.radians(args.theta_deg)))
    pol = _parse_pol(args.pol)
    classes = geometry.equivalence_classes(b_vec)
    labels = {i: report.class_label(cls) for cls in classes for i in cls}
    rows = []
    for i in range(1, 7):
        frame = geometry.site_frame(i)
        bx, by, bz = geometry.local_field(frame, b_vec)
        rows.append((str(i), bx, by, bz,
                     geometry.dipole_projection(frame, pol), labels[i]))
    payload = _csv(("site", "Bx_T", "By_T", "Bz_T", "dipole_projection",
                    "equivalence_class"), rows)
    return _emit(args, consts, payload)


def cmd_shift_curve(args, consts):
    sites = tuple(int(s) for s in args.sites.split(","))
    thetas = [math.radians(t) for t in
              np.arange(args.theta_min_deg, args.theta_max_deg + 1e-9,
                        args.theta_step_deg)]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rows = zeeman.shift_curve(sites, thetas, args.B, consts)
    payload = _csv(("theta_deg", "site_class", "shift_Hz"),
                   [(math.degrees(t), report.class_label(c), s)
                    for t, c, s in rows])
    return _emit(args, consts, payload)


def cmd_shift_vs_b(args, consts):
    direction = geometry.field_vector(
        geometry.FieldConfig(1.0, math.radians(args.theta_deg)))
    pol = _parse_pol(args.pol)
    classes = geometry.equivalence_classes(direction)
    weights = [(sum(geometry.dipole_projection(geometry.site_frame(i), pol) ** 2
                    for i in cls), cls) for cls in classes]
    best = max(weights)[1]
    coeff = zeeman.shift_coefficient(best[0], direction, consts)
    line0 = _zero_field_line()
    broad = zeeman.broadening(1.0, spectra.DEFAULT_GAMMA_CF,
                              spectra.DEFAULT_GAMMA_CF_INHOMOGENEITY,
                              consts.delta_CF0)
    rows = []
    for b in np.arange(0.0, args.B_max + 1e-9, args.B_step):
        rows.append((b, coeff * b * b, line0.fwhm + broad * b * b,
                     zeeman.linestrength(b, line0.area,
                                         spectra.DEFAULT_LINESTRENGTH_SLOPE)))
    payload = _csv(("B_T", "shift_Hz", "fwhm_Hz", "linestrength_Hz_per_cm"), rows)
    return _emit(args, consts, payload)


def cmd_spectrum(args, consts):
    if args.transmission and args.length_mm is None:
        raise ConflictingFlags("--transmission requires --length-mm")
    cfg = geometry.FieldConfig(args.B, math.radians(args.theta_deg))
    pol = _parse_pol(args.pol)
    half_span = args.grid_span_GHz * 1e9 / 2.0
    step = args.grid_step_MHz * 1e6
    grid = np.arange(-half_span, half_span + step / 2.0, step)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        spec = spectra.synthesize_spectrum(cfg, pol, grid, consts,
                                           _zero_field_line())
    if args.transmission:
        length_cm = args.length_mm / 10.0
        values = np.exp(-spec.alpha * length_cm)
        payload = _csv(("detuning_Hz", "transmission"),
                       zip(spec.detuning, values))
    else:
        payload = _csv(("detuning_Hz", "alpha_per_cm"),
                       zip(spec.detuning, spec.alpha))
    return _emit(args, consts, payload)


def cmd_fit_spectrum(args, consts):
    data = np.atleast_2d(np.genfromtxt(args.input, delimiter=",", skip_header=1))
    spec = spectra.Spectrum(detuning=data[:, 0], alpha=data[:, 1])
    fit = spectra.fit_lorentzian(spec, args.n_lines)
    doc = {
        "lines": [{"center_Hz": ln.center, "fwhm_Hz": ln.fwhm,
                   "peak_per_cm": ln.peak_alpha, "area_Hz_per_cm": ln.area,
                   "std_errors": {"center_Hz": err[0], "fwhm_Hz": err[1],
                                  "peak_per_cm": err[2]}}
                  for ln, err in zip(fit.lines, fit.std_errors)],
        "residual_norm": fit.residual_norm,
        "ambiguous": fit.ambiguous,
    }
    return _emit(args, consts, json.dumps(doc, indent=2) + "\n")


def cmd_relax_rate(args, consts):
    params = _load_relax_params(args.params_file)
    gamma = _gamma(args, consts)
    residual, direct, orbach = relaxation.rate_terms(args.B, args.T, gamma, params)
    rows = [("residual", residual), ("direct", direct), ("orbach", orbach),
            ("total", residual + direct + orbach)]
    return _emit(args, consts, _csv(("term", "rate_Hz"), rows))


def cmd_dominance_map(args, consts):
    params = _load_relax_params(args.params_file)
    gamma = _gamma(args, consts)
    b_grid = np.linspace(args.B_min, args.B_max, args.B_steps)
    t_grid = np.linspace(args.T_min, args.T_max, args.T_steps)
    grid = relaxation.dominance_map(b_grid, t_grid, gamma, params)
    rows = [(b, t, grid[i, j]) for i, b in enumerate(b_grid)
            for j, t in enumerate(t_grid)]
    return _emit(args, consts, _csv(("B_T", "T_K", "dominant_term"), rows))


def cmd_hole_decay(args, consts):
    if args.rate_Hz is not None:
        rate_hz = args.rate_Hz
    else:
        params = _load_relax_params(args.params_file)
        rate_hz = relaxation.rate(args.B, args.T, _gamma(args, consts), params)
    t_max = args.t_max_s if args.t_max_s is not None else 3.0 * math.log(2.0) / rate_hz
    times = np.linspace(0.0, t_max, args.points)
    series = relaxation.simulate_hole_decay(rate_hz, times, area0=args.area0,
                                            noise_sigma=args.noise, seed=args.seed)
    return _emit(args, consts, _csv(("time_s", "area"),
                                    zip(series.times, series.areas)))


def cmd_fit_relax(args, consts):
    datasets = []
    for path in args.inputs:
        data = np.genfromtxt(path, delimiter=",", skip_header=1)
        data = np.atleast_2d(data)
        datasets.append(relaxation.RateDataset(
            B=data[:, 0], T=data[:, 1], rate=data[:, 2], sigma=data[:, 3],
            label=Path(path).name))
    init = (_load_relax_params(args.init_params_file) if args.init_params_file
            else relaxation.RelaxParams(1e-4, 1e-24, 1e4, 1e4, 1e12, 5e9))
    result = fitting.joint_relax_fit(datasets, _gamma(args, consts), init)
    doc = dict(zip(fitting.RELAX_PARAM_NAMES, (float(v) for v in result.params)))
    doc["std_errors"] = dict(zip(fitting.RELAX_PARAM_NAMES,
                                 (float(v) for v in result.std_errors)))
    doc["residual_norm"] = result.residual_norm
    doc["iterations"] = result.iterations
    return _emit(args, consts, json.dumps(doc, indent=2) + "\n")


def cmd_bleaney(args, consts):
    estimate = relaxation.bleaney_alpha_d(
        args.gamma if args.gamma is not None else 4.0e8,
        args.rho if args.rho is not None else consts.rho,
        args.v_l if args.v_l is not None else consts.v_l,
        args.v_t if args.v_t is not None else consts.v_t)
    return _emit(args, consts, _csv(("alpha_D_per_Hz_K_T2",), [(estimate,)]))


def cmd_reproduce_paper(args, consts):
    outdir = Path(args.out_dir)
    if not outdir.is_dir():
        raise FileNotFoundError(f"output directory {outdir} does not exist")
    results, payloads = report.run_all(consts, seed=args.seed)
    for name, payload in payloads.items():
        (outdir / name).write_text(payload, encoding="utf-8", newline="")
    summary = "".join(res.line() + "\n" for res in results)
    (outdir / "summary.txt").write_text(summary, encoding="utf-8")
    manifest = json.dumps(asdict(_manifest(args, consts)), indent=2, default=str)
    (outdir / "run_manifest.json").write_text(manifest + "\n", encoding="utf-8")
    sys.stdout.write(summary)
    return 0


# ---------------------------------------------------------------------------
# Parser

def build_parser():
    parser = argparse.ArgumentParser(
        prog="tmyag",
        description="Quadratic Zeeman shifts, site-selective spectra and "
                    "nuclear spin-lattice relaxation of Tm3+:YAG.")
    try:
        default_hash = constants_hash(load_constants())[:12]
    except TmYagError:
        default_hash = "invalid"
    parser.add_argument("--version", action="version",
                        version=f"tmyag {__version__} (constants {default_hash})")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("--constants", default="default",
                       help="constants JSON file, or 'default'")
        p.add_argument("--out", default=None, help="output file (default stdout)")
        p.set_defaults(func=handler)
        return p

    p = add("site-table", cmd_site_table,
            help="local field components, dipole projections and equivalence classes")
    p.add_argument("--B", type=float, default=6.0)
    p.add_argument("--theta-deg", type=float, default=0.0,
                   help="field angle from [111], positive toward [-1-12]")
    p.add_argument("--pol", default="111")

    p = add("shift-curve", cmd_shift_curve,
            help="optical shift vs field angle per equivalence class")
    p.add_argument("--B", type=float, default=6.0)
    p.add_argument("--theta-min-deg", type=float, default=0.0)
    p.add_argument("--theta-max-deg", type=float, default=90.0)
    p.add_argument("--theta-step-deg", type=float, default=1.0)
    p.add_argument("--sites", default="1,2,3,4,5,6")

    p = add("shift-vs-B", cmd_shift_vs_b,
            help="shift, linewidth and linestrength vs field strength")
    p.add_argument("--theta-deg", type=float, default=0.0)
    p.add_argument("--pol", default="111")
    p.add_argument("--B-max", type=float, default=6.0)
    p.add_argument("--B-step", type=float, default=0.25)

    p = add("spectrum", cmd_spectrum, help="synthesize an absorption spectrum")
    p.add_argument("--B", type=float, default=0.0)
    p.add_argument("--theta-deg", type=float, default=0.0)
    p.add_argument("--pol", default="111")
    p.add_argument("--grid-span-GHz", type=float, default=120.0)
    p.add_argument("--grid-step-MHz", type=float, default=200.0)
    p.add_argument("--length-mm", type=float, default=None)
    p.add_argument("--transmission", action="store_true",
                   help="emit exp(-alpha L) instead of alpha")

    p = add("fit-spectrum", cmd_fit_spectrum,
            help="fit Lorentzian lines to a two-column spectrum CSV")
    p.add_argument("input")
    p.add_argument("--n-lines", type=int, default=1)

    p = add("relax-rate", cmd_relax_rate,
            help="relaxation rate and term breakdown at one (B, T)")
    p.add_argument("--B", type=float, required=True)
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--params-file", default=None)
    p.add_argument("--gamma", type=float, default=None,
                   help="effective gyromagnetic ratio, Hz/T")

    p = add("dominance-map", cmd_dominance_map,
            help="dominant rate-law term over a (B, T) grid")
    p.add_argument("--B-min", type=float, default=0.0)
    p.add_argument("--B-max", type=float, default=6.0)
    p.add_argument("--B-steps", type=int, default=25)
    p.add_argument("--T-min", type=float, default=1.3)
    p.add_argument("--T-max", type=float, default=5.0)
    p.add_argument("--T-steps", type=int, default=25)
    p.add_argument("--params-file", default=None)
    p.add_argument("--gamma", type=float, default=None)

    p = add("hole-decay", cmd_hole_decay,
            help="simulate a spectral-hole area decay series")
    p.add_argument("--rate-Hz", type=float, default=None)
    p.add_argument("--B", type=float, default=6.0)
    p.add_argument("--T", type=float, default=1.6)
    p.add_argument("--params-file", default=None)
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--t-max-s", type=float, default=None)
    p.add_argument("--points", type=int, default=12)
    p.add_argument("--area0", type=float, default=1.0)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)

    p = add("fit-relax", cmd_fit_relax,
            help="joint fit of the rate law to B_T,T_K,rate_Hz,sigma_Hz CSVs")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--init-params-file", default=None)

    p = add("bleaney", cmd_bleaney,
            help="order-of-magnitude direct-phonon coefficient")
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--rho", type=float, default=None)
    p.add_argument("--v-l", type=float, default=None)
    p.add_argument("--v-t", type=float, default=None)

    p = add("reproduce-paper", cmd_reproduce_paper,
            help="regenerate all reference curves and run the summary checks")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--seed", type=int, default=0)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        consts = load_constants(args.constants)
        return args.func(args, consts)
    except FileNotFoundError as exc:
        sys.stderr.write(f"FileNotFound: {exc}\n")
        return 1
    except TmYagError as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return 1


def entry():
    sys.exit(main())

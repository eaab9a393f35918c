"""Command-line interface: ``rip-hawking <command> [options]``.

Every command prints CSV (default) or JSON to stdout or to ``--output``.
Exit status is 0 on success, 1 when the physics inputs are outside the
model's domain (for example no horizon), and 2 for usage errors.
"""

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .bogoliubov import closed_form_magnitudes, quadrature_magnitudes
from .dispersion import group_window, horizons_coexist, load_material, phase_window
from .errors import DomainError
from .greybody import ScatteringProblem, greybody_lab, numerov_transmission
from .horizons import find_horizons, temperature_lab
from .kinematics import C, FrameKinematics, doppler_to_comoving, wavelength_to_omega
from .modes import ModeSpec, frobenius_exponents, singularity_radius, thermality_exponent, wkb_ku_roots
from .profiles import GaussianProfile, ShockwaveProfile, TabulatedProfile
from .spectra import SPECTRUM_FIELDS, emission_spectrum, emitted

SWEEPABLE = ("n0", "eta", "sigma_m", "delta_wh_m", "delta_bh_m", "c_over_v", "v_mps", "theta_rad")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- parsing


def _add_profile(p):
    g = p.add_argument_group("profile")
    g.add_argument("--profile", choices=("gaussian", "shockwave", "tabulated"))
    g.add_argument("--n0", type=float, help="background index")
    g.add_argument("--eta", type=float, help="perturbation height")
    g.add_argument("--sigma-m", type=float, help="profile half-width (m)")
    g.add_argument("--delta-wh-m", type=float, help="shockwave trailing-edge thickness (m)")
    g.add_argument("--delta-bh-m", type=float, help="shockwave leading-edge thickness (m)")
    g.add_argument("--profile-csv", help="two-column CSV (x_m, intensity) for --profile tabulated")


def _add_kinematics(p):
    g = p.add_argument_group("kinematics (give exactly one)")
    g.add_argument("--v-mps", type=float, help="pulse speed (m/s)")
    g.add_argument("--c-over-v", type=float, help="c / v")


def _add_common(p):
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--output", help="write to this file instead of stdout")
    p.add_argument("--config", help="JSON file of defaults; command-line flags override")


def _add_omega(p, required=False):
    g = p.add_argument_group("frequency (rad/s, or nm at the boundary)")
    g.add_argument("--omega-l-rad-s", type=float, nargs="+")
    g.add_argument("--lambda-nm", type=float, nargs="+")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rip-hawking",
        description="Horizons, Hawking temperatures, greybody factors and dispersive "
        "emission windows of a moving refractive-index perturbation.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("horizons", help="horizon positions, surface gravity, pulse-frame temperature")
    _add_profile(p), _add_kinematics(p), _add_common(p)

    p = sub.add_parser("temperature", help="pulse and lab temperatures versus emission angle")
    _add_profile(p), _add_kinematics(p), _add_common(p)
    p.add_argument("--theta-rad", type=float, nargs="+")

    p = sub.add_parser("spectrum", help="windowed, greybody-weighted emission spectrum")
    _add_profile(p), _add_kinematics(p), _add_common(p)
    p.add_argument("--material", help="preset name or JSON file")
    p.add_argument("--theta-rad", type=float)
    p.add_argument("--omega-min-rad-s", type=float)
    p.add_argument("--omega-max-rad-s", type=float)
    p.add_argument("--n-omega", type=int)
    p.add_argument("--gate", choices=("phase", "group"), help="window used with --emitted-only")
    p.add_argument("--emitted-only", action="store_true", default=None)

    p = sub.add_parser("dispersion-window", help="phase and group horizon windows of a material")
    _add_kinematics(p), _add_common(p)
    p.add_argument("--material", help="preset name or JSON file")
    p.add_argument("--eta", type=float)

    p = sub.add_parser("bogoliubov-check", help="quadrature versus closed-form |alpha|^2/|beta|^2")
    _add_common(p)
    p.add_argument("--sigma-b", type=float, nargs="+")
    p.add_argument("--k-u-prime", type=float, help="in-mode wavenumber (rad/m), default 1")

    p = sub.add_parser("greybody", help="step and Numerov greybody factors")
    _add_profile(p), _add_kinematics(p), _add_common(p), _add_omega(p)
    p.add_argument("--theta-rad", type=float, nargs="+")
    p.add_argument("--numerov", action="store_true", default=None,
                   help="also solve the smooth barrier (slow for optical k_perp)")
    p.add_argument("--points-per-wavelength", type=int)

    p = sub.add_parser("modes", help="thermality exponent, Frobenius exponents, WKB roots")
    _add_profile(p), _add_kinematics(p), _add_common(p), _add_omega(p)
    p.add_argument("--theta-rad", type=float, nargs="+")
    p.add_argument("--k-w", type=float, help="advanced wavenumber (rad/m) instead of lab data")
    p.add_argument("--k-perp", type=float, help="transverse wavenumber with --k-w")

    p = sub.add_parser("sweep", help="vary one parameter and concatenate rows")
    _add_profile(p), _add_kinematics(p), _add_common(p)
    p.add_argument("--of", choices=("horizons", "temperature"), help="quantity to sweep")
    p.add_argument("--param", choices=SWEEPABLE)
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.add_argument("--num", type=int)
    p.add_argument("--theta-rad", type=float)
    p.add_argument("--workers", type=int)
    return parser


DEFAULTS = {
    "format": "csv",
    "profile": "gaussian",
    "n0": 1.45,
    "eta": 1e-3,
    "sigma_m": 1e-5,
    "delta_wh_m": 1e-6,
    "delta_bh_m": 1e-6,
    "material": "paper_cauchy",
    "theta_rad": None,
    "n_omega": 200,
    "gate": "phase",
    "emitted_only": False,
    "k_u_prime": 1.0,
    "numerov": False,
    "points_per_wavelength": 10_000,
    "of": "horizons",
    "num": 11,
    "workers": 4,
}


def parse(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    config = {}
    if args.config:
        try:
            with open(args.config) as fh:
                config = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            parser.error(f"cannot read config {args.config}: {exc}")
        config = {k.replace("-", "_"): v for k, v in config.items()}
    explicit = {k for k, v in vars(args).items() if v is not None}
    if explicit & {"v_mps", "c_over_v"}:
        config.pop("v_mps", None)
        config.pop("c_over_v", None)
    for key, value in {**DEFAULTS, **config}.items():
        if key in vars(args) and key not in explicit:
            setattr(args, key, value)
    return parser, args


# ---------------------------------------------------------------- builders


def make_profile(args):
    if args.profile == "gaussian":
        return GaussianProfile(args.n0, args.eta, args.sigma_m)
    if args.profile == "shockwave":
        return ShockwaveProfile(args.n0, args.eta, args.sigma_m, args.delta_wh_m, args.delta_bh_m)
    if not args.profile_csv:
        raise UsageError("--profile tabulated needs --profile-csv")
    return TabulatedProfile.from_csv(args.profile_csv, args.n0, args.eta)


def make_kinematics(args):
    has_v = getattr(args, "v_mps", None) is not None
    has_r = getattr(args, "c_over_v", None) is not None
    if has_v == has_r:
        raise UsageError("give exactly one of --v-mps and --c-over-v")
    return FrameKinematics(args.v_mps) if has_v else FrameKinematics.from_c_over_v(args.c_over_v)


def lab_omegas(args):
    if args.omega_l_rad_s and args.lambda_nm:
        raise UsageError("give --omega-l-rad-s or --lambda-nm, not both")
    if args.omega_l_rad_s:
        return [float(w) for w in args.omega_l_rad_s]
    if args.lambda_nm:
        return [float(wavelength_to_omega(l * 1e-9)) for l in args.lambda_nm]
    raise UsageError("a lab frequency is required (--omega-l-rad-s or --lambda-nm)")


def _thetas(args, default=(0.0,)):
    t = args.theta_rad
    if t is None:
        return list(default)
    return list(t) if isinstance(t, (list, tuple)) else [t]


# ---------------------------------------------------------------- commands


def cmd_horizons(args):
    rep = find_horizons(make_profile(args), make_kinematics(args))
    return rep.to_dict()


def cmd_temperature(args):
    prof, kin = make_profile(args), make_kinematics(args)
    rep = find_horizons(prof, kin)
    return [
        {"theta_rad": th, "T_pulse_K": rep.T_pulse, "T_lab_K": temperature_lab(rep.T_pulse, th, kin, prof.n0)}
        for th in _thetas(args)
    ]


def cmd_spectrum(args):
    prof, kin = make_profile(args), make_kinematics(args)
    material = load_material(args.material)
    theta = _thetas(args)[0]
    if args.omega_min_rad_s is None or args.omega_max_rad_s is None:
        raise UsageError("spectrum needs --omega-min-rad-s and --omega-max-rad-s")
    grid = np.linspace(args.omega_min_rad_s, args.omega_max_rad_s, args.n_omega)
    rows = emission_spectrum(prof, kin, material, theta, grid)
    if args.emitted_only:
        rows = emitted(rows, args.gate)
    return [r.to_dict() for r in rows]


def cmd_dispersion_window(args):
    kin = make_kinematics(args)
    material = load_material(args.material)
    coexist = None
    if hasattr(material, "B0"):
        coexist = horizons_coexist(material, args.eta, kin.v)
    rows = []
    for fn in (phase_window, group_window):
        d = fn(material, args.eta, kin.v).to_dict()
        d["coexist"] = coexist
        rows.append(d)
    return rows


def cmd_bogoliubov_check(args):
    if not args.sigma_b:
        raise UsageError("--sigma-b is required")
    rows = []
    for s in args.sigma_b:
        q = quadrature_magnitudes(s, args.k_u_prime)
        c = closed_form_magnitudes(s, args.k_u_prime)
        rows.append({
            "sigma_b": s,
            "ratio_quadrature": q.ratio,
            "ratio_closed_form": c.ratio,
            "rel_err": abs(q.ratio / c.ratio - 1.0),
        })
    return rows


def cmd_greybody(args):
    prof, kin = make_profile(args), make_kinematics(args)
    rows = []
    for w in lab_omegas(args):
        for th in _thetas(args):
            phys = greybody_lab(w, th, None, kin, prof.n0, "physical")
            paper = greybody_lab(w, th, None, kin, prof.n0, "paper_literal")
            num = math.nan
            if args.numerov:
                k_perp = prof.n0 * w * math.sin(th) / C
                omega = doppler_to_comoving(w, th, kin, prof.n0)
                num = numerov_transmission(ScatteringProblem(prof, kin, k_perp), omega,
                                           args.points_per_wavelength)
            rows.append({
                "theta_rad": th,
                "omega_l": w,
                "gamma_step_physical": phys,
                "gamma_step_paper": paper,
                "gamma_numerov": num,
            })
    return rows


def cmd_modes(args):
    prof, kin = make_profile(args), make_kinematics(args)
    if args.k_w is not None:
        modes = [ModeSpec(args.k_w, args.k_perp or 0.0)]
    else:
        modes = [ModeSpec.from_lab(w, th, kin, prof.n0) for w in lab_omegas(args) for th in _thetas(args)]
    radius = singularity_radius(prof, kin)
    rows = []
    for m in modes:
        _, a2 = frobenius_exponents(m, prof, kin)
        far = wkb_ku_roots(m.k_w, m.k_perp, prof.n0, kin)
        rows.append({
            "omega_l": m.omega_l if m.omega_l is not None else math.nan,
            "theta_rad": m.theta if m.theta is not None else math.nan,
            "k_w": m.k_w,
            "k_perp": m.k_perp,
            "sigma_b": thermality_exponent(m.k_w, prof, kin),
            "alpha2_re": a2.real,
            "alpha2_im": a2.imag,
            "k_u_plus_far": far.k_u_plus,
            "k_u_minus_far": far.k_u_minus,
            "propagating_far": far.propagating,
            "frobenius_radius_m": radius,
        })
    return rows


def _sweep_point(args, value):
    a = argparse.Namespace(**vars(args))
    if args.param in ("c_over_v", "v_mps"):
        a.c_over_v = a.v_mps = None
    setattr(a, args.param, value)
    if args.param == "theta_rad":
        a.theta_rad = [value]
    try:
        out = cmd_horizons(a) if args.of == "horizons" else cmd_temperature(a)[0]
        err = ""
    except DomainError as exc:
        keys = ("x_plus_m", "x_minus_m", "kappa_plus_m_per_s2", "T_pulse_K", "k_level") \
            if args.of == "horizons" else ("theta_rad", "T_pulse_K", "T_lab_K")
        out, err = {k: math.nan for k in keys}, str(exc)
    return {args.param: value, **out, "error": err}


def cmd_sweep(args):
    if args.param is None or args.start is None or args.stop is None:
        raise UsageError("sweep needs --param, --start and --stop")
    make_kinematics(args)  # validate the base point before fanning out
    values = np.linspace(args.start, args.stop, args.num).tolist()
    with ThreadPoolExecutor(max_workers=max(1, args.workers)) as pool:
        return list(pool.map(lambda v: _sweep_point(args, v), values))


COMMANDS = {
    "horizons": cmd_horizons,
    "temperature": cmd_temperature,
    "spectrum": cmd_spectrum,
    "dispersion-window": cmd_dispersion_window,
    "bogoliubov-check": cmd_bogoliubov_check,
    "greybody": cmd_greybody,
    "modes": cmd_modes,
    "sweep": cmd_sweep,
}


# ---------------------------------------------------------------- output


def _csv_cell(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.8e}"
    return str(v)


def _json_value(v):
    if isinstance(v, (np.bool_,)):
        return bool(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else None
    if isinstance(v, np.integer):
        return int(v)
    return v


def render(result, fmt, fields=None):
    rows = [result] if isinstance(result, dict) else list(result)
    if fmt == "json":
        clean = [{k: _json_value(v) for k, v in r.items()} for r in rows]
        payload = clean[0] if isinstance(result, dict) else clean
        return json.dumps(payload, indent=2) + "\n"
    if fields is None:
        fields = list(rows[0].keys()) if rows else []
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(fields)
    for r in rows:
        w.writerow([_csv_cell(r[k]) for k in fields])
    return buf.getvalue()


def run(argv=None):
    try:
        parser, args = parse(argv)
    except SystemExit as exc:  # argparse usage errors, --help, --version
        return exc.code
    try:
        result = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    fields = list(SPECTRUM_FIELDS) if args.command == "spectrum" else None
    text = render(result, args.format, fields)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main():
    sys.exit(run(sys.argv[1:]))

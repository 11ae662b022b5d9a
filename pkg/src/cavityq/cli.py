"""Command-line surface.

Subcommands: prepare, wigner, readout, estimate, validate.  Every file
output is paired with a JSON manifest recording the resolved configuration,
toolkit version and input digests; identical config and seed reproduce the
outputs byte for byte.  Exit codes: 0 success, 1 validation/fit failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import __version__, dissipation, fock, oracle, protocol, qestimate, readout, wigner
from .config import ConfigError, load_config, system_params
from .params import ParameterError, check_dispersive


def _sha256(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _write_manifest(out_path, subcommand, resolved, inputs, outputs):
    manifest = {
        "subcommand": subcommand,
        "toolkit_version": __version__,
        "resolved_config": resolved,
        "input_digests": {str(k): _sha256(v) for k, v in inputs.items()},
        "outputs": [str(o) for o in outputs],
    }
    mpath = Path(str(out_path) + ".manifest.json")
    with mpath.open("w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return mpath


def _grid_axes(cfg):
    lo = cfg.get("grid_min", -8.0)
    hi = cfg.get("grid_max", 8.0)
    n = cfg.get("grid_points", 257)
    return np.linspace(lo, hi, n)


def _resolved(cfg, params, extra):
    out = dict(cfg.values)
    out.update(
        {
            "derived.g_rad_s": params.g,
            "derived.qubit_freq_rad_s": params.qubit_freq,
            "derived.detuning_rad_s": params.detuning,
            "derived.chi_rad_s": params.chi,
        }
    )
    out.update(extra)
    return {k: (str(v) if isinstance(v, complex) else v) for k, v in sorted(out.items())}


def _prepare_from_config(cfg, outcome):
    params = system_params(cfg)
    alpha = cfg.get("alpha")
    if alpha is None:
        raise ConfigError("missing required config key 'alpha'")
    tau2 = cfg.get("tau2_s")
    if tau2 is None and cfg.get("phi") is not None:
        tau2 = protocol.tau2_for_phi(cfg.get("phi"), params)
    nmax = cfg.get("fock_nmax")
    return params, protocol.prepare_cat(
        complex(alpha),
        params,
        tau2=tau2,
        outcome=outcome,
        nmax=nmax,
        theta_override=cfg.get("theta_override"),
    )


def cmd_prepare(args) -> int:
    cfg = load_config(args.config)
    params, result = _prepare_from_config(cfg, args.outcome)
    cat = result.cat
    report = check_dispersive(params)
    other = protocol.with_sign(cat, -cat.sign)
    print(f"outcome           : {args.outcome} (sign {cat.sign:+d})")
    print(f"beta              : {cat.beta:.12g}")
    print(f"phi (rad)         : {cat.phi:.12g}")
    print(f"theta (rad)       : {cat.theta:.12g}")
    print(f"N^2 (this branch) : {cat.norm2:.12g}")
    print(f"P(outcome)        : {cat.outcome_probability:.12g}")
    print(f"P(other)          : {other.outcome_probability:.12g}")
    print(f"separation        : {cat.separation:.12g}")
    print(f"Delta/|g|         : {report.detuning_over_g:.6g} "
          f"({'ok' if report.acceptable else 'outside dispersive threshold'})")
    if args.dump_state:
        path = Path(args.dump_state)
        with path.open("w", encoding="utf-8") as fh:
            fh.write("n,re,im\n")
            for n, amp in enumerate(result.state.amps):
                fh.write(f"{n},{amp.real:.17g},{amp.imag:.17g}\n")
        _write_manifest(
            path, "prepare",
            _resolved(cfg, params, {"outcome": args.outcome}),
            {"config": args.config}, [path],
        )
    return 0


def cmd_wigner(args) -> int:
    cfg = load_config(args.config)
    params, result = _prepare_from_config(cfg, args.outcome)
    tau3 = args.tau3 if args.tau3 is not None else cfg.get("tau3_s", 0.0)
    dc = dissipation.damped_cat(result.cat, tau3, params)
    axes = _grid_axes(cfg)
    if args.numeric:
        nmax = cfg.get("fock_nmax") or fock.auto_nmax(abs(result.cat.beta))
        rho = dissipation.realize_density(dc, nmax)
        grid = wigner.numeric_wigner(rho, axes, axes)
    else:
        grid = wigner.cat_wigner(dc, axes, axes, mode=args.mode)
    out = Path(args.out)
    wigner.write_csv(grid, out)
    _write_manifest(
        out, "wigner",
        _resolved(cfg, params, {
            "tau3_s": tau3, "mode": args.mode, "numeric": args.numeric,
            "outcome": args.outcome,
        }),
        {"config": args.config}, [out],
    )
    print(f"wrote {out} ({len(axes)}x{len(axes)} grid, mode={args.mode}"
          f"{', numeric' if args.numeric else ''})")
    return 0


def _parse_taus(spec: str) -> np.ndarray:
    if ":" in spec:
        lo, hi, n = spec.split(":")
        return np.linspace(float(lo), float(hi), int(n))
    return np.array([float(x) for x in spec.split(",")])


def cmd_readout(args) -> int:
    cfg = load_config(args.config)
    outcome = "e" if args.prepared_sign == "+" else "g"
    params, result = _prepare_from_config(cfg, outcome)
    tau4 = args.tau4 if args.tau4 is not None else cfg.get("tau4_s")
    if tau4 is None:
        tau4 = readout.default_tau4(params)
    rcfg = readout.ReadoutConfig(
        prepared_sign=result.cat.sign,
        tau4=tau4,
        omega_minus_tau4_mod=args.phase_override,
    )
    taus = _parse_taus(args.taus)
    curve = readout.curve(
        rcfg, params, result.cat, taus,
        n_shots=args.shots, seed=args.seed,
    )
    out = Path(args.out)
    readout.write_csv(curve, out)
    _write_manifest(
        out, "readout",
        _resolved(cfg, params, {
            "tau4_s": tau4, "prepared_sign": args.prepared_sign,
            "shots": args.shots, "seed": args.seed, "taus": args.taus,
            "phase_override": args.phase_override,
        }),
        {"config": args.config}, [out],
    )
    print(f"wrote {out} ({len(taus)} samples, phi'={rcfg.phi_prime(params):.6g})")
    return 0


def cmd_estimate(args) -> int:
    cfg = load_config(args.config)
    outcome = "e" if args.prepared_sign == "+" else "g"
    params, result = _prepare_from_config(cfg, outcome)
    tau4 = args.tau4 if args.tau4 is not None else cfg.get("tau4_s")
    if tau4 is None:
        tau4 = readout.default_tau4(params)
    rcfg = readout.ReadoutConfig(
        prepared_sign=result.cat.sign, tau4=tau4,
        omega_minus_tau4_mod=args.phase_override,
    )
    taus, p_g = qestimate.read_curve_csv(args.data)
    lo, hi = (float(x) for x in args.bracket.split(","))
    try:
        fit = qestimate.fit_q(
            taus, p_g, rcfg, params, result.cat, (lo, hi), with_ci=True
        )
    except (qestimate.NonIdentifiableError, qestimate.BracketError) as exc:
        print(f"fit failed: {exc}", file=sys.stderr)
        return 1
    print(f"q_hat = {fit.q_hat:.6g}")
    print(f"residual = {fit.residual:.6g}")
    print(f"iterations = {fit.iterations}")
    if fit.ci_68:
        print(f"ci_68 = [{fit.ci_68[0]:.6g}, {fit.ci_68[1]:.6g}]")
    if args.out:
        out = Path(args.out)
        qestimate.write_report(fit, out)
        _write_manifest(
            out, "estimate",
            _resolved(cfg, params, {"bracket": args.bracket, "tau4_s": tau4}),
            {"config": args.config, "data": args.data}, [out],
        )
    return 0


def _validate_checks(mutate: bool):
    """Yield (name, ok, detail) for the invariant suite."""
    from .params import paper_operating_point

    params = paper_operating_point()
    alpha = 4.0
    result = protocol.prepare_cat(alpha, params, outcome="e")
    cat = result.cat
    if mutate:
        cat = replace(cat, theta=cat.theta + 0.1)  # deliberate corruption

    # probabilities complete
    p_sum = (
        cat.outcome_probability
        + protocol.with_sign(result.cat, -1).outcome_probability
    )
    yield "outcome_probabilities_sum_to_1", abs(p_sum - 1.0) < 1e-12, f"{p_sum!r}"

    # numeric vs analytic cat
    numeric = result.state
    analytic = protocol.cat_to_fock(cat, numeric.nmax)
    fid = numeric.fidelity(analytic)
    yield "numeric_vs_analytic_cat_fidelity", fid > 1.0 - 1e-8, f"{fid!r}"

    # damped density matrix: trace, hermiticity, positivity
    dc = dissipation.damped_cat(result.cat, 0.1e-6, params)
    rho = dissipation.realize_density(dc)
    tr = float(np.trace(rho).real)
    yield "density_trace_1", abs(tr - 1.0) < 1e-10, f"{tr!r}"
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    yield "density_hermitian", herm < 1e-12, f"{herm!r}"
    lo_eig = float(np.min(np.linalg.eigvalsh(rho)))
    yield "density_positive", lo_eig > -1e-10, f"{lo_eig!r}"

    # propagator unitarity
    u = fock.number_phase_propagator(params.omega, 1e-7, 40)
    yield "propagator_unitary", fock.unitarity_defect(u) < 1e-10, "number phase"

    # P_g + P_e = 1 on both code paths
    rcfg = readout.ReadoutConfig(prepared_sign=cat.sign, tau4=readout.default_tau4(params))
    pg, pe = readout.probability_closed_form(rcfg, params, cat, 0.2e-6)
    yield "readout_probabilities_sum", abs(pg + pe - 1.0) < 1e-12, f"{pg + pe!r}"
    pg_n, pe_n = readout.probability_numeric(rcfg, params, rho)
    yield "readout_paths_agree", abs(pg_n - readout.probability_closed_form(
        rcfg, params, cat, 0.1e-6)[0]) < 1e-6, f"{pg_n!r} vs closed form"

    # Wigner normalization (small cat: the default grid covers its support)
    small = protocol.CatSpec(beta=2.0, phi=math.pi, theta=cat.theta, sign=-1)
    grid = wigner.cat_wigner(dissipation.as_damped(small))
    yield "wigner_unit_integral", abs(grid.integral() - 1.0) < 1e-4, f"{grid.integral()!r}"

    # Lindblad oracle vs analytic damping (small case)
    tau3 = 0.2e-6
    rho0 = protocol.cat_to_fock(small, 40).density()
    prob = oracle.LindbladProblem(
        decay_rate=params.gamma, initial=rho0, t_final=tau3, dt=1e-9
    )
    evolved = oracle.lindblad_evolve(prob).rho
    target = dissipation.realize_density(
        dissipation.damped_cat(small, tau3, params), 40
    )
    dist = dissipation.trace_distance(evolved, target)
    yield "lindblad_matches_analytic_damping", dist < 1e-3, f"{dist!r}"


def cmd_validate(args) -> int:
    results = []
    ok_all = True
    for name, ok, detail in _validate_checks(args.mutate):
        ok_all &= ok
        results.append({"check": name, "ok": bool(ok), "detail": detail})
        print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump({"ok": ok_all, "checks": results}, fh, indent=2)
            fh.write("\n")
    print(f"validate: {'all checks passed' if ok_all else 'FAILURES PRESENT'}")
    return 0 if ok_all else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cavityq",
        description="Cat-state preparation, decoherence and cavity-Q estimation.",
    )
    parser.add_argument("--version", action="version", version=f"cavityq {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("prepare", help="run the preparation pipeline and print the cat summary")
    p.add_argument("--config", required=True)
    p.add_argument("--outcome", choices=["g", "e"], default="e")
    p.add_argument("--dump-state", default=None, help="write the Fock amplitudes to CSV")
    p.set_defaults(func=cmd_prepare)

    p = sub.add_parser("wigner", help="export a Wigner grid CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--outcome", choices=["g", "e"], default="e")
    p.add_argument("--tau3", type=float, default=None, help="dissipation time (s)")
    p.add_argument("--mode", choices=list(wigner.NORMALIZATION_MODES), default="paper_fig1")
    p.add_argument("--numeric", action="store_true", help="use the definition-level oracle path")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_wigner)

    p = sub.add_parser("readout", help="export a P_g(tau) curve CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--prepared-sign", choices=["+", "-"], default="-")
    p.add_argument("--taus", required=True, help="lo:hi:n or comma list (seconds)")
    p.add_argument("--tau4", type=float, default=None)
    p.add_argument("--shots", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--phase-override", type=float, default=None,
                   help="explicit (Omega-chi)*tau4 mod 2pi")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_readout)

    p = sub.add_parser("estimate", help="fit Q to a readout CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--bracket", required=True, help="q_lo,q_hi")
    p.add_argument("--prepared-sign", choices=["+", "-"], default="-")
    p.add_argument("--tau4", type=float, default=None)
    p.add_argument("--phase-override", type=float, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("validate", help="run the oracle/invariant suite")
    p.add_argument("--report", default=None, help="write a JSON summary here")
    p.add_argument("--mutate", action="store_true",
                   help="deliberately corrupt a constant to exercise the suite")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

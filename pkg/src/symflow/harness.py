"""Experiment runner: configures, executes and reports the verification runs.

Each experiment returns an ExperimentReport holding the per-sample rows,
summary scalars and a named pass/fail flag per asserted inequality.  A
violated bound is a failed experiment, never auto-tolerated: the harness
records the first violating time and the CLI exits nonzero.

Outputs per run: <experiment>.csv (deterministic in config and seed, bit
for bit), summary.json (config echo, summary scalars, assertion flags,
wall-clock), and final-state checkpoints.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field as dataclass_field
from pathlib import Path
from types import SimpleNamespace

import numpy as np

from . import bounds as bnd
from .checkpoint import read_checkpoint, write_checkpoint
from .config import ConfigError, ExperimentConfig
from .solver import (
    DIAGNOSTICS_COLUMNS,
    ResolutionLossError,
    Trajectory,
    simulate,
)
from .spectral import (
    GridSpec,
    SpectralVelocityField,
    dealias,
    l2_norm_sq,
    leray_project,
    validate_field,
)
from .symmetry import (
    SymmetryKind,
    ei_x3_deviation,
    helical_deviation,
    make_2p5d,
    symmetry_deviation,
)

NEG_INF = float("-inf")

# Energy-inequality slack bands, relative to the initial energy: every
# viscous run must keep slack >= -SLACK_LO * E0, and smooth runs stay
# within SLACK_HI * E0 of equality.
SLACK_LO = 1e-8
SLACK_HI = 1e-6

# Symmetry-preservation tolerances on the squared-L2 deviation metrics.
DEV_TOL_Z = 1e-20
DEV_TOL_HELICAL = 1e-18

EULER_DRIFT_TOL = 1e-6

YOUNG_RANDOM_DRAWS = 100_000
YOUNG_SHARPNESS_DRAWS = 1_000
LADY_FIELD_COUNT = 1_000
LADY_GRID_N = 64


# ---------------------------------------------------------------------------
# initial data, perturbations, forcing


def taylor_green_field(grid: GridSpec) -> SpectralVelocityField:
    """The 2D Taylor-Green vortex embedded as a 2.5D field (energy 1/2)."""
    x = np.arange(grid.n) / grid.n
    x1, x2 = np.meshgrid(x, x, indexing="ij")
    planar = np.stack([
        -np.cos(2 * np.pi * x1) * np.sin(2 * np.pi * x2),
        np.sin(2 * np.pi * x1) * np.cos(2 * np.pi * x2),
        np.zeros_like(x1),
    ])
    return make_2p5d(grid, planar)


def random_2p5d_field(grid: GridSpec, seed) -> SpectralVelocityField:
    """Random x3-independent field with three components and energy 1/2.

    The horizontal pair comes from a random band-limited stream function
    (hence exactly 2D-solenoidal); the vertical component is a random
    band-limited scalar.
    """
    n = grid.n
    rng = np.random.default_rng(np.random.SeedSequence([int(s) for s in np.atleast_1d(seed)] + [37]))
    k = grid.k1d
    band = (k[:, None] ** 2 + k[None, :] ** 2) <= max(1, n // 6) ** 2
    band[0, 0] = False
    psi_hat = np.fft.fftn(rng.standard_normal((n, n)), norm="forward") * band
    u3_hat = np.fft.fftn(rng.standard_normal((n, n)), norm="forward") * band
    two_pi_i = 2j * np.pi
    planar_hat = np.stack([
        two_pi_i * k[None, :] * psi_hat,
        -two_pi_i * k[:, None] * psi_hat,
        u3_hat,
    ])
    planar = np.fft.ifftn(planar_hat, axes=(1, 2), norm="forward").real
    out = make_2p5d(grid, planar)
    energy = l2_norm_sq(out)
    if energy == 0.0:
        raise ValueError("degenerate random field")
    return out * math.sqrt(0.5 / energy)


def base_flow_field(cfg: ExperimentConfig, grid: GridSpec) -> SpectralVelocityField:
    if cfg.base_flow == "taylor_green":
        return taylor_green_field(grid)
    if cfg.base_flow == "random_2p5d":
        return random_2p5d_field(grid, cfg.seed)
    path = cfg.base_flow[len("file:"):]
    field = read_checkpoint(path)
    if field.grid.n != grid.n:
        raise ConfigError(f"checkpoint grid n={field.grid.n} does not match config n={grid.n}")
    validate_field(field, require_solenoidal=False)
    return field


def generate_perturbation(grid: GridSpec, delta: float, seed,
                          band: tuple[int, int] | None = None) -> SpectralVelocityField:
    """Random solenoidal zero-mean field with ||.||_{L2} exactly delta.

    Modes are restricted to kmin <= |k| <= kmax (Euclidean; default band
    is (1, n/6), well inside the dealias mask) and include genuinely
    three-dimensional k3 != 0 content.  Deterministic in the seed.
    """
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    n = grid.n
    kmin, kmax = band if band is not None else (1, max(1, n // 6))
    if kmax > grid.dealias_cutoff:
        raise ValueError(f"band (kmin={kmin}, kmax={kmax}) exceeds the dealias mask "
                         f"(|k_i| <= {grid.dealias_cutoff})")
    shell = (grid.k_sq >= kmin ** 2) & (grid.k_sq <= kmax ** 2)
    if not np.any(shell):
        raise ValueError(f"empty perturbation band (kmin={kmin}, kmax={kmax})")
    if delta == 0.0:
        return SpectralVelocityField(grid, np.zeros((3, n, n, n), dtype=np.complex128))
    rng = np.random.default_rng(seed)
    noise = rng.standard_normal((3, n, n, n))
    coeffs = np.fft.fftn(noise, axes=(1, 2, 3), norm="forward") * shell
    pert = leray_project(SpectralVelocityField(grid, coeffs))
    norm_sq = l2_norm_sq(pert)
    if norm_sq == 0.0:
        raise ValueError("perturbation collapsed to zero under projection")
    return pert * (delta / math.sqrt(norm_sq))


class SingleModeForcing:
    """Time-independent solenoidal forcing A * e * cos(2 pi k.x)."""

    def __init__(self, grid: GridSpec, mode: tuple[int, int, int], amplitude: float):
        k = np.array(mode, dtype=np.int64)
        if not np.any(k):
            raise ConfigError("forcing mode must be nonzero")
        if np.max(np.abs(k)) > grid.dealias_cutoff:
            raise ConfigError(f"forcing mode {mode} is outside the dealias mask")
        if k[0] == 0 and k[1] == 0:
            e = np.array([1.0, 0.0, 0.0])
        else:
            e = np.array([k[1], -k[0], 0.0], dtype=np.float64)
            e /= np.linalg.norm(e)
        coeffs = np.zeros((3, grid.n, grid.n, grid.n), dtype=np.complex128)
        idx = tuple(int(ki) % grid.n for ki in k)
        neg = tuple(int(-ki) % grid.n for ki in k)
        for j in range(3):
            coeffs[(j,) + idx] = 0.5 * amplitude * e[j]
            coeffs[(j,) + neg] = 0.5 * amplitude * e[j]
        self._field = SpectralVelocityField(grid, coeffs)
        self.mode = tuple(int(ki) for ki in k)
        self.amplitude = amplitude

    @property
    def field(self) -> SpectralVelocityField:
        return self._field

    def __call__(self, t: float) -> SpectralVelocityField:
        return self._field


def build_forcing(cfg: ExperimentConfig, grid: GridSpec,
                  required_symmetry: SymmetryKind | None = None):
    if cfg.forcing == "off":
        return None
    forcing = SingleModeForcing(grid, cfg.forcing_mode, cfg.forcing_amplitude)
    if required_symmetry is not None:
        dev = symmetry_deviation(forcing.field, required_symmetry)
        scale = max(1.0, l2_norm_sq(forcing.field))
        if dev > 1e-24 * scale:
            raise ConfigError(
                f"forcing mode {forcing.mode} does not respect {required_symmetry.value} "
                f"symmetry (deviation {dev:.3g})")
    return forcing


# ---------------------------------------------------------------------------
# reports


@dataclass
class ExperimentReport:
    experiment: str
    columns: tuple[str, ...]
    rows: list[tuple]
    summary: dict
    assertions: dict[str, bool]
    extra_tables: dict[str, tuple[tuple[str, ...], list[tuple]]] = dataclass_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.assertions.values())


def _format_row(values) -> str:
    return ",".join(v if isinstance(v, str) else f"{v:.17g}" for v in values)


def _write_table(path: Path, columns, rows) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(_format_row(row) + "\n")


def _json_safe(value):
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    return value


def write_report(report: ExperimentReport, cfg: ExperimentConfig) -> Path:
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write_table(out / f"{report.experiment}.csv", report.columns, report.rows)
    for name, (columns, rows) in report.extra_tables.items():
        _write_table(out / name, columns, rows)
    summary = {
        "experiment": report.experiment,
        "config": dict(cfg.raw),
        "summary": _json_safe(report.summary),
        "assertions": report.assertions,
        "passed": report.passed,
    }
    path = out / "summary.json"
    path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return out


def _log_or_neg_inf(x: float) -> float:
    return math.log(x) if x > 0.0 else NEG_INF


def _gap(a: float, b: float) -> float:
    # a - b with (-inf) - (-inf) counted as exact equality
    if a == b:
        return 0.0
    return a - b


def _slack_assertions(tag: str, samples, nu: float, forced: bool) -> tuple[dict, dict]:
    e0 = samples[0].energy
    worst = min(s.energy_slack for s in samples)
    best = max(s.energy_slack for s in samples)
    summary = {f"{tag}worst_slack": worst, f"{tag}max_slack": best}
    assertions = {}
    if nu > 0.0 or forced:
        assertions[f"{tag}energy_inequality"] = worst >= -SLACK_LO * max(e0, 1e-300)
        assertions[f"{tag}energy_near_equality"] = best <= SLACK_HI * max(e0, 1e-300)
    else:
        drift = max(abs(s.energy - e0) for s in samples)
        summary[f"{tag}max_rel_drift"] = drift / e0 if e0 > 0 else 0.0
        assertions[f"{tag}energy_conservation"] = drift <= EULER_DRIFT_TOL * max(e0, 1e-300)
    return summary, assertions


# ---------------------------------------------------------------------------
# experiments


def run_stability(cfg: ExperimentConfig) -> ExperimentReport:
    """Perturbed-versus-base run checking the Gronwall stability estimate.

    Integrates the 2.5D base flow u and the perturbed flow v = u0 + delta
    on the same 3D grid and asserts, at every sample and with zero
    tolerance, log ||v-u||^2 <= running bound <= a-priori bound.
    """
    grid = GridSpec(cfg.n)
    if cfg.nu <= 0:
        raise ConfigError("stability needs nu > 0 (the estimate is viscous)")
    forcing = build_forcing(cfg, grid, SymmetryKind.VERTICAL_TRANSLATION)
    base_raw = base_flow_field(cfg, grid)
    base_prepared = leray_project(dealias(base_raw))
    if ei_x3_deviation(base_prepared) > DEV_TOL_Z * max(1.0, l2_norm_sq(base_prepared)):
        raise ConfigError("stability base flow must be x3-independent (2.5D)")
    pert = generate_perturbation(grid, cfg.delta, cfg.seed)
    v_raw = base_raw + pert

    traj_u = Trajectory(base_raw, cfg.nu, cfg.dt, forcing)
    traj_v = Trajectory(v_raw, cfg.nu, cfg.dt, forcing)
    u0_l2sq = traj_u.energy0
    w0_l2sq = l2_norm_sq(traj_v.field - traj_u.field)
    log_w0 = _log_or_neg_inf(w0_l2sq)
    log_apriori_unforced = bnd.apriori_bound(w0_l2sq, u0_l2sq, cfg.nu) if w0_l2sq > 0 else NEG_INF
    gronwall_rate = bnd.GRONWALL_C / cfg.nu ** 3

    stride = cfg.sample_stride
    n_steps = round(cfg.t_end / cfg.dt)
    columns = (("t",)
               + tuple("u_" + c for c in DIAGNOSTICS_COLUMNS[1:])
               + tuple("v_" + c for c in DIAGNOSTICS_COLUMNS[1:])
               + ("log_wsq", "log_bound_running", "log_bound_apriori", "dev_eix3"))
    rows: list[tuple] = []
    times: list[float] = []
    l4_integral = 0.0
    prev_t = 0.0
    prev_l4 = 0.0
    work_max = 0.0
    max_gap_running = NEG_INF
    max_gap_order = NEG_INF
    first_violation_t = None

    def record() -> None:
        nonlocal l4_integral, prev_t, prev_l4, work_max
        nonlocal max_gap_running, max_gap_order, first_violation_t
        du = traj_u.diagnostics()
        dv = traj_v.diagnostics()
        t = du.t
        if times:
            l4_integral += 0.5 * (du.l4_fourth + prev_l4) * (t - prev_t)
        prev_t, prev_l4 = t, du.l4_fourth
        work_max = max(work_max, du.work_integral)
        log_wsq = _log_or_neg_inf(l2_norm_sq(traj_v.field - traj_u.field))
        log_running = NEG_INF if w0_l2sq == 0.0 else log_w0 + gronwall_rate * l4_integral
        if forcing is None:
            log_apriori = log_apriori_unforced
        elif w0_l2sq == 0.0:
            log_apriori = NEG_INF
        else:
            budget = u0_l2sq + max(work_max, 0.0)
            log_apriori = log_w0 + bnd.GRONWALL_C / cfg.nu ** 4 * budget ** 2
        gap_run = _gap(log_wsq, log_running)
        gap_ord = _gap(log_running, log_apriori)
        max_gap_running = max(max_gap_running, gap_run)
        max_gap_order = max(max_gap_order, gap_ord)
        if (gap_run > 0.0 or gap_ord > 0.0) and first_violation_t is None:
            first_violation_t = t
        times.append(t)
        rows.append((t,) + du.row()[1:] + dv.row()[1:]
                    + (log_wsq, log_running, log_apriori, ei_x3_deviation(traj_v.field)))

    record()
    for i in range(1, n_steps + 1):
        traj_u.advance()
        traj_v.advance()
        if i % stride == 0 or i == n_steps:
            record()

    summary = {
        "w0_l2sq": w0_l2sq,
        "u0_l2sq": u0_l2sq,
        "max_log_gap_measured_vs_running": max_gap_running,
        "max_log_gap_running_vs_apriori": max_gap_order,
        "first_violation_t": first_violation_t,
    }
    assertions = {
        "measured_below_running": max_gap_running <= 0.0,
        "running_below_apriori": max_gap_order <= 0.0,
    }
    du_samples = [_row_to_sample(r, 0) for r in rows]
    dv_samples = [_row_to_sample(r, 6) for r in rows]
    for tag, samples in (("u_", du_samples), ("v_", dv_samples)):
        s, a = _slack_assertions(tag, samples, cfg.nu, forcing is not None)
        summary.update(s)
        assertions.update(a)

    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_checkpoint(out / "u_final.ckpt", traj_u.field)
    write_checkpoint(out / "v_final.ckpt", traj_v.field)
    return ExperimentReport("stability", columns, rows, summary, assertions)


def _row_to_sample(row, offset):
    from .solver import DiagnosticsSample
    return DiagnosticsSample(row[0], *row[1 + offset:7 + offset])


def run_sym_preserve(cfg: ExperimentConfig) -> ExperimentReport:
    """Symmetric initial data in the full 3D solver stays symmetric."""
    kind = (SymmetryKind.DISCRETE_HELICAL if cfg.experiment == "sym_preserve_helical"
            else SymmetryKind.VERTICAL_TRANSLATION)
    tol = DEV_TOL_HELICAL if kind is SymmetryKind.DISCRETE_HELICAL else DEV_TOL_Z
    grid = GridSpec(cfg.n)
    forcing = build_forcing(cfg, grid, kind)
    base_raw = base_flow_field(cfg, grid)
    prepared = leray_project(dealias(base_raw))
    dev0 = symmetry_deviation(prepared, kind)
    if dev0 > tol * max(1.0, l2_norm_sq(prepared)):
        raise ConfigError(
            f"base flow is not {kind.value}-symmetric (deviation {dev0:.3g}); "
            "symmetrize it first (e.g. via a checkpoint)")

    dev_col = "dev_helical" if kind is SymmetryKind.DISCRETE_HELICAL else "dev_eix3"
    rows: list[tuple] = []
    devs: list[float] = []
    all_samples = []

    def on_sample(state, sample):
        dev = symmetry_deviation(state.u, kind)
        devs.append(dev)
        all_samples.append(sample)
        rows.append(sample.row() + (dev,))

    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    simulate(cfg, base_raw, forcing=forcing, on_sample=on_sample,
             checkpoint_path=out / "final.ckpt")

    max_dev = max(devs)
    summary = {"max_deviation": max_dev, "deviation_tolerance": tol, "symmetry": kind.value}
    assertions = {"symmetry_preserved": max_dev <= tol}
    s, a = _slack_assertions("", all_samples, cfg.nu, forcing is not None)
    summary.update(s)
    assertions.update(a)
    return ExperimentReport(cfg.experiment, DIAGNOSTICS_COLUMNS + (dev_col,), rows,
                            summary, assertions)


def run_euler_conserve(cfg: ExperimentConfig) -> ExperimentReport:
    """Resolved spectral Euler evolution conserves energy and symmetry."""
    if cfg.nu != 0.0:
        raise ConfigError("euler_conserve requires nu = 0")
    if cfg.forcing != "off":
        raise ConfigError("euler_conserve measures free decay; disable forcing")
    grid = GridSpec(cfg.n)
    base_raw = base_flow_field(cfg, grid)

    rows: list[tuple] = []
    devs: list[float] = []
    all_samples = []

    def on_sample(state, sample):
        dev = ei_x3_deviation(state.u)
        devs.append(dev)
        all_samples.append(sample)
        rows.append(sample.row() + (dev,))

    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    aborted_at = None
    try:
        simulate(cfg, base_raw, on_sample=on_sample, checkpoint_path=out / "final.ckpt")
    except ResolutionLossError as exc:
        aborted_at = all_samples[-1].t if all_samples else 0.0
        summary = {"aborted": str(exc), "aborted_at": aborted_at}
        assertions = {"resolved_to_horizon": False}
        return ExperimentReport("euler_conserve", DIAGNOSTICS_COLUMNS + ("dev_eix3",),
                                rows, summary, assertions)

    e0 = all_samples[0].energy
    drift = max(abs(s.energy - e0) for s in all_samples)
    rel_drift = drift / e0 if e0 > 0 else 0.0
    max_dev = max(devs)
    summary = {"rel_energy_drift": rel_drift, "max_dev_eix3": max_dev}
    assertions = {
        "resolved_to_horizon": True,
        "energy_conserved": rel_drift <= EULER_DRIFT_TOL,
        "symmetry_preserved": max_dev <= DEV_TOL_Z,
    }
    return ExperimentReport("euler_conserve", DIAGNOSTICS_COLUMNS + ("dev_eix3",),
                            rows, summary, assertions)


def run_vanishing_viscosity(cfg: ExperimentConfig) -> ExperimentReport:
    """Symmetry retention for perturbations sized by the e^{-C/nu^4} budget.

    For each viscosity, the base flow is perturbed by epsilon * delta_max(nu)
    in L^2 and integrated; the max x3-deviation must stay below the
    theorem-chain bound epsilon^2 e^{-C/nu^4}, evaluated in log space.  The
    bound column is nonincreasing along the decreasing-viscosity sweep.
    """
    grid = GridSpec(cfg.n)
    base_raw = base_flow_field(cfg, grid)
    prepared = leray_project(dealias(base_raw))
    if ei_x3_deviation(prepared) > DEV_TOL_Z * max(1.0, l2_norm_sq(prepared)):
        raise ConfigError("vanishing_viscosity base flow must be x3-independent")
    u0_l2sq = l2_norm_sq(prepared)

    columns = ("nu", "delta", "log_delta_max", "log_max_dev_eix3", "log_bound")
    rows: list[tuple] = []
    extra_tables: dict = {}
    assertions: dict[str, bool] = {}
    summary: dict = {"u0_l2sq": u0_l2sq, "epsilon": cfg.epsilon}
    log_bounds: list[float] = []
    log_eps = _log_or_neg_inf(cfg.epsilon)

    for i, nu in enumerate(cfg.nu_list):
        budget = bnd.perturbation_budget(u0_l2sq, nu)
        delta = cfg.epsilon * math.exp(budget.log_delta_max)
        pert = generate_perturbation(grid, delta, [cfg.seed, i])

        detail_rows: list[tuple] = []
        devs: list[float] = []
        samples = []

        def on_sample(state, sample):
            dev = ei_x3_deviation(state.u)
            devs.append(dev)
            samples.append(sample)
            detail_rows.append(sample.row() + (dev,))

        run_view = SimpleNamespace(nu=nu, dt=cfg.dt, t_end=cfg.t_end,
                                   sample_every=cfg.sample_every)
        out = Path(cfg.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        simulate(run_view, base_raw + pert, on_sample=on_sample,
                 checkpoint_path=out / f"final_nu{i}.ckpt")

        max_dev = max(devs)
        log_max_dev = _log_or_neg_inf(max_dev)
        log_bound = (2.0 * (log_eps + budget.log_delta_max)
                     + budget.C / nu ** 4)
        log_bounds.append(log_bound)
        rows.append((nu, delta, budget.log_delta_max, log_max_dev, log_bound))
        assertions[f"dev_below_bound_nu{i}"] = _gap(log_max_dev, log_bound) <= 0.0
        s, a = _slack_assertions(f"nu{i}_", samples, nu, False)
        summary.update(s)
        assertions.update(a)
        extra_tables[f"vanishing_viscosity_detail_nu{i}.csv"] = (
            DIAGNOSTICS_COLUMNS + ("dev_eix3",), detail_rows)

    monotone = all(_gap(b, a) <= 0.0 for a, b in zip(log_bounds, log_bounds[1:]))
    assertions["bound_nonincreasing"] = monotone
    summary["log_bounds"] = log_bounds
    return ExperimentReport("vanishing_viscosity", columns, rows, summary,
                            assertions, extra_tables)


def _random_mean_zero_2d(rng, n: int) -> np.ndarray:
    cut = n // 3
    k = np.fft.fftfreq(n, d=1.0 / n).astype(np.int64)
    band = (np.abs(k)[:, None] <= cut) & (np.abs(k)[None, :] <= cut)
    band[0, 0] = False
    fhat = np.fft.fftn(rng.standard_normal((n, n)), norm="forward") * band
    return np.fft.ifftn(fhat, norm="forward").real


def run_inequality_suite(cfg: ExperimentConfig) -> ExperimentReport:
    """Property campaigns for the Young split and the Ladyzhenskaya ratio."""
    rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, 11]))
    a = 3.0 * rng.random(YOUNG_RANDOM_DRAWS)
    b = 4.0 * rng.random(YOUNG_RANDOM_DRAWS)
    c = 3.0 * rng.random(YOUNG_RANDOM_DRAWS)
    nu = 0.1 + 1.9 * rng.random(YOUNG_RANDOM_DRAWS)
    gap = bnd.young_split_gap(a, b, c, nu)
    rhs = nu * b * b + bnd.YOUNG_C / nu ** 3 * a * a * c ** 4
    young_floor = gap + 1e-12 * (1.0 + rhs)
    young_violations = int(np.sum(young_floor < 0.0))
    young_worst = float(np.min(young_floor))

    rng2 = np.random.default_rng(np.random.SeedSequence([cfg.seed, 12]))
    a2 = 2.0 * rng2.random(YOUNG_SHARPNESS_DRAWS)
    c2 = 2.0 * rng2.random(YOUNG_SHARPNESS_DRAWS)
    nu2 = 0.5 + 1.5 * rng2.random(YOUNG_SHARPNESS_DRAWS)
    bstar = bnd.young_split_minimizer(a2, c2, nu2)
    sharp_gap = np.abs(bnd.young_split_gap(a2, bstar, c2, nu2))
    sharp_worst = float(np.max(sharp_gap))
    sharp_violations = int(np.sum(sharp_gap > 1e-12))

    rng3 = np.random.default_rng(np.random.SeedSequence([cfg.seed, 13]))
    ratios = np.empty(LADY_FIELD_COUNT)
    for i in range(LADY_FIELD_COUNT):
        ratios[i] = bnd.ladyzhenskaya_ratio_2d(_random_mean_zero_2d(rng3, LADY_GRID_N))
    lady_max = float(np.max(ratios))

    columns = ("check", "draws", "worst", "threshold", "passed")
    rows = [
        ("young_gap", float(YOUNG_RANDOM_DRAWS), young_worst, 0.0, float(young_violations == 0)),
        ("young_sharpness", float(YOUNG_SHARPNESS_DRAWS), sharp_worst, 1e-12, float(sharp_violations == 0)),
        ("ladyzhenskaya", float(LADY_FIELD_COUNT), lady_max, 1.0, float(lady_max <= 1.0)),
    ]
    summary = {
        "young_violations": young_violations,
        "young_worst_margin": young_worst,
        "sharpness_worst_abs_gap": sharp_worst,
        "ladyzhenskaya_max_ratio": lady_max,
        "ladyzhenskaya_grid_n": LADY_GRID_N,
    }
    assertions = {
        "young_gap_nonnegative": young_violations == 0,
        "young_sharp_at_bstar": sharp_violations == 0,
        "ladyzhenskaya_ratio_below_one": lady_max <= 1.0,
    }
    return ExperimentReport("inequality_suite", columns, rows, summary, assertions)


_RUNNERS = {
    "stability": run_stability,
    "sym_preserve_z": run_sym_preserve,
    "sym_preserve_helical": run_sym_preserve,
    "euler_conserve": run_euler_conserve,
    "vanishing_viscosity": run_vanishing_viscosity,
    "inequality_suite": run_inequality_suite,
}


def run_experiment(cfg: ExperimentConfig, write: bool = True) -> ExperimentReport:
    """Dispatch on cfg.experiment, time the run, optionally write outputs."""
    start = time.perf_counter()
    report = _RUNNERS[cfg.experiment](cfg)
    report.summary["wall_clock_seconds"] = time.perf_counter() - start
    if write:
        write_report(report, cfg)
    return report

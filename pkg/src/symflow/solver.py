"""Time integration of incompressible Navier-Stokes/Euler on the periodic box.

The pressure never materializes: velocities are advanced in spectral space
with the nonlinearity replaced by -P[(u.grad)u], P the Leray projection.
The viscous term is integrated exactly through the substitution
uhat(k,t) = exp(-nu |2 pi k|^2 t) what(k,t): classical RK4 is applied to
what, so the stiff part contributes no splitting error and symmetric data
stays symmetric to rounding.  With nu = 0 the integrating factor is unity
and the scheme is plain RK4 (Euler mode), kept honest by a resolution-loss
guard on enstrophy growth.

Each trajectory carries an energy-budget diagnostic: the signed slack

    ||u0||^2 + 2 int <u, f> - ||u(t)||^2 - 2 nu int ||grad u||^2

which a Leray-Hopf-consistent trajectory keeps nonnegative and a smooth
one keeps near zero.  The time integrals are accumulated every step with a
causal fourth-order rule (composite Simpson plus a quadratic end
correction) so quadrature error stays far below the slack tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from .spectral import (
    GridSpec,
    SpectralVelocityField,
    dealias,
    h1_seminorm_sq,
    inverse_transform,
    l2_norm_sq,
    leray_project,
    norms,
)

DIAGNOSTICS_COLUMNS = (
    "t", "energy", "enstrophy", "l4_fourth",
    "dissipation_integral", "work_integral", "energy_slack",
)

#: Euler runs abort once enstrophy has grown by this factor (resolution loss).
ENSTROPHY_GUARD = 1e6


class CFLViolation(RuntimeError):
    pass


class BlowUpError(RuntimeError):
    pass


class ResolutionLossError(RuntimeError):
    pass


ForcingFn = Callable[[float], SpectralVelocityField]


@dataclass
class SolverState:
    t: float
    u: SpectralVelocityField
    nu: float
    dt: float
    forcing: Optional[ForcingFn] = None
    cfl: float = 0.5


@dataclass
class DiagnosticsSample:
    t: float
    energy: float
    enstrophy: float
    l4_fourth: float
    dissipation_integral: float
    work_integral: float
    energy_slack: float

    def row(self) -> tuple[float, ...]:
        return (self.t, self.energy, self.enstrophy, self.l4_fourth,
                self.dissipation_integral, self.work_integral, self.energy_slack)


class CumulativeIntegral:
    """Causal cumulative quadrature on a uniform grid, O(h^4) accurate.

    Even samples close a Simpson pair; odd samples add the integral of the
    quadratic through the last three points.  Only the very first interval
    falls back to the trapezoid (nothing better is causal there).
    """

    def __init__(self, h: float):
        self.h = h
        self.value = 0.0
        self._prev = 0.0
        self._prev2 = 0.0
        self._even_value = 0.0
        self._count = -1

    def add(self, f: float) -> float:
        self._count += 1
        m = self._count
        if m == 0:
            self._even_value = 0.0
        elif m == 1:
            self.value = self.h * 0.5 * (self._prev + f)
        elif m % 2 == 0:
            self.value = self._even_value + self.h / 3.0 * (self._prev2 + 4.0 * self._prev + f)
            self._even_value = self.value
        else:
            self.value = self._even_value + self.h / 12.0 * (-self._prev2 + 8.0 * self._prev + 5.0 * f)
        self._prev2 = self._prev
        self._prev = f
        return self.value


def _inner_product(a: SpectralVelocityField, b: SpectralVelocityField) -> float:
    """Real L^2(Q^3) inner product via Parseval."""
    prod = a.coeffs * b.coeffs.conj()
    return float(np.sum(prod.real))


def _convection(field: SpectralVelocityField) -> tuple[np.ndarray, float]:
    """Spectral coefficients of (u.grad)u and the max pointwise speed.

    Gradients are formed spectrally, products pointwise on the collocation
    grid; the caller dealiases and projects.
    """
    g = field.grid
    c = field.coeffs
    u = np.fft.ifftn(c, axes=(1, 2, 3), norm="forward").real
    two_pi_i = 2j * np.pi
    grad_hat = np.empty((3,) + c.shape, dtype=np.complex128)
    grad_hat[0] = (two_pi_i * g.kx) * c
    grad_hat[1] = (two_pi_i * g.ky) * c
    grad_hat[2] = (two_pi_i * g.kz) * c
    grad = np.fft.ifftn(grad_hat, axes=(2, 3, 4), norm="forward").real
    conv = np.sum(u[:, None] * grad, axis=0)
    speed_sq = u[0] * u[0] + u[1] * u[1] + u[2] * u[2]
    max_speed = math.sqrt(float(np.max(speed_sq)))
    conv_hat = np.fft.fftn(conv, axes=(1, 2, 3), norm="forward")
    return conv_hat, max_speed


def _rhs(field: SpectralVelocityField) -> tuple[SpectralVelocityField, float]:
    conv_hat, max_speed = _convection(field)
    g = field.grid
    nl = leray_project(dealias(SpectralVelocityField(g, -conv_hat)))
    return nl, max_speed


def nonlinear_term(field: SpectralVelocityField) -> SpectralVelocityField:
    """-P[(u.grad)u], dealiased and solenoidal."""
    return _rhs(field)[0]


def _forcing_coeffs(forcing: Optional[ForcingFn], t: float,
                    grid: GridSpec) -> Optional[np.ndarray]:
    if forcing is None:
        return None
    f = forcing(t)
    if f.grid != grid:
        raise ValueError("forcing field lives on a different grid")
    return leray_project(dealias(f)).coeffs


def step(state: SolverState) -> SolverState:
    """Advance one time step with integrating-factor RK4.

    Refuses the step when dt exceeds the advective CFL bound
    cfl * dx / max|u| (reporting the measured max speed), and raises
    BlowUpError when the result stops being finite.
    """
    g = state.u.grid
    dt = state.dt
    u0 = state.u.coeffs

    lam = -state.nu * (2.0 * np.pi) ** 2 * g.k_sq
    e_half = np.exp(lam * (0.5 * dt))
    e_full = e_half * e_half

    n1_field, max_speed = _rhs(state.u)
    if max_speed > 0 and dt > state.cfl / (g.n * max_speed):
        raise CFLViolation(
            f"dt={dt:g} violates CFL at t={state.t:g}: max|u|={max_speed:g} "
            f"allows dt <= {state.cfl / (g.n * max_speed):g}")
    n1 = n1_field.coeffs
    f = _forcing_coeffs(state.forcing, state.t, g)
    if f is not None:
        n1 = n1 + f

    stage_b = SpectralVelocityField(g, e_half * (u0 + (0.5 * dt) * n1))
    n2 = _rhs(stage_b)[0].coeffs
    f_mid = _forcing_coeffs(state.forcing, state.t + 0.5 * dt, g)
    if f_mid is not None:
        n2 = n2 + f_mid

    stage_c = SpectralVelocityField(g, e_half * u0 + (0.5 * dt) * n2)
    n3 = _rhs(stage_c)[0].coeffs
    if f_mid is not None:
        n3 = n3 + f_mid

    stage_d = SpectralVelocityField(g, e_full * u0 + dt * (e_half * n3))
    n4 = _rhs(stage_d)[0].coeffs
    f_end = _forcing_coeffs(state.forcing, state.t + dt, g)
    if f_end is not None:
        n4 = n4 + f_end

    u_new = e_full * u0 + (dt / 6.0) * (e_full * n1 + 2.0 * e_half * (n2 + n3) + n4)
    if not np.all(np.isfinite(u_new.view(np.float64))):
        raise BlowUpError(f"non-finite coefficients after step from t={state.t:g}")
    return replace(state, t=state.t + dt, u=SpectralVelocityField(g, u_new))


class Trajectory:
    """A single trajectory with its energy-budget accumulators.

    Wraps the stepping loop so callers (simulate, the stability harness)
    advance and sample through one code path: two trajectories driven in
    lockstep see exactly the arithmetic a solo run would.
    """

    def __init__(self, u0: SpectralVelocityField, nu: float, dt: float,
                 forcing: Optional[ForcingFn] = None):
        u = leray_project(dealias(u0))
        self.state = SolverState(t=0.0, u=u, nu=nu, dt=dt, forcing=forcing)
        self._diss = CumulativeIntegral(dt)
        self._work = CumulativeIntegral(dt)
        self._steps = 0
        self.energy0 = l2_norm_sq(u)
        self.enstrophy0 = h1_seminorm_sq(u)
        self._accumulate()

    def _accumulate(self) -> None:
        st = self.state
        self._diss.add(2.0 * st.nu * h1_seminorm_sq(st.u))
        w = 0.0
        if st.forcing is not None:
            fhat = _forcing_coeffs(st.forcing, st.t, st.u.grid)
            w = 2.0 * _inner_product(st.u, SpectralVelocityField(st.u.grid, fhat))
        self._work.add(w)

    def advance(self) -> None:
        """One time step plus budget accumulation and the Euler guard."""
        self.state = step(self.state)
        self._steps += 1
        # keep t exact on the uniform grid (no accumulation drift)
        self.state.t = self._steps * self.state.dt
        self._accumulate()
        if self.state.nu == 0.0 and self.enstrophy0 > 0.0:
            z = h1_seminorm_sq(self.state.u)
            if z > ENSTROPHY_GUARD * self.enstrophy0:
                raise ResolutionLossError(
                    f"enstrophy grew {z / self.enstrophy0:.3g}x by t={self.state.t:g}; "
                    "Euler run is no longer resolved")

    @property
    def field(self) -> SpectralVelocityField:
        return self.state.u

    @property
    def t(self) -> float:
        return self.state.t

    def diagnostics(self) -> DiagnosticsSample:
        nm = norms(self.state.u)
        slack = self.energy0 + self._work.value - nm.l2_sq - self._diss.value
        return DiagnosticsSample(self.state.t, nm.l2_sq, nm.h1_sq, nm.l4_fourth,
                                 self._diss.value, self._work.value, slack)


def _format_row(values) -> str:
    return ",".join(f"{v:.17g}" for v in values)


def simulate(config, u0: SpectralVelocityField, forcing: Optional[ForcingFn] = None,
             csv_path=None, checkpoint_path=None,
             on_sample=None) -> tuple[list[DiagnosticsSample], SolverState]:
    """Run the solver to config.t_end, emitting diagnostics at sample times.

    config provides nu, dt, t_end and sample_every (the harness
    ExperimentConfig fits; any object with those attributes works).  The
    initial field is dealiased and projected before the run.  Diagnostics
    stream to csv_path as they are produced (flushed before any abort) and
    the final state is written to checkpoint_path on success.  on_sample,
    if given, is called with (state, sample) at every sample time.
    """
    nu = float(config.nu)
    dt = float(config.dt)
    t_end = float(config.t_end)
    sample_every = float(getattr(config, "sample_every", dt))
    if dt <= 0 or t_end <= 0 or sample_every <= 0:
        raise ValueError("dt, t_end and sample_every must be positive")
    stride = max(1, round(sample_every / dt))
    if abs(stride * dt - sample_every) > 1e-9 * max(dt, sample_every):
        raise ValueError(f"sample_every={sample_every:g} is not a multiple of dt={dt:g}")
    n_steps = round(t_end / dt)
    if abs(n_steps * dt - t_end) > 1e-9 * max(dt, t_end):
        raise ValueError(f"t_end={t_end:g} is not a multiple of dt={dt:g}")

    traj = Trajectory(u0, nu, dt, forcing)
    samples: list[DiagnosticsSample] = []
    csv_file = open(csv_path, "w", newline="") if csv_path is not None else None

    def emit() -> None:
        sample = traj.diagnostics()
        samples.append(sample)
        if csv_file is not None:
            csv_file.write(_format_row(sample.row()) + "\n")
            csv_file.flush()
        if on_sample is not None:
            on_sample(traj.state, sample)

    try:
        if csv_file is not None:
            csv_file.write(",".join(DIAGNOSTICS_COLUMNS) + "\n")
        emit()
        for i in range(1, n_steps + 1):
            traj.advance()
            if i % stride == 0 or i == n_steps:
                emit()
    finally:
        if csv_file is not None:
            csv_file.close()

    if checkpoint_path is not None:
        from .checkpoint import write_checkpoint
        write_checkpoint(checkpoint_path, traj.field)
    return samples, traj.state


def energy_budget_check(samples: list[DiagnosticsSample]) -> float:
    """Worst signed slack of the energy inequality over the samples.

    Returns min_t of ||u0||^2 + work(t) - energy(t) - dissipation(t); a
    Leray-Hopf-consistent trajectory keeps this above -tolerance.
    """
    if not samples:
        raise ValueError("no samples")
    e0 = samples[0].energy
    return min(e0 + s.work_integral - s.energy - s.dissipation_integral for s in samples)


def taylor_green_energy(t: float, nu: float, energy0: float = 0.5) -> float:
    """Exact Taylor-Green kinetic energy energy0 * exp(-16 pi^2 nu t)."""
    return energy0 * math.exp(-16.0 * math.pi ** 2 * nu * t)


def physical_max_speed(field: SpectralVelocityField) -> float:
    u = inverse_transform(field)
    return math.sqrt(float(np.max(u[0] * u[0] + u[1] * u[1] + u[2] * u[2])))

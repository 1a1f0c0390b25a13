"""Evaluators for the stability-estimate inequality chain.

Covers the sharp Young split with constant 27/128, the planar
Ladyzhenskaya ratio check, the a-priori and running Gronwall bounds on a
perturbation's energy, and the vanishing-viscosity perturbation budget.
Every bound is carried in natural-log space with -inf as the sentinel for
a zero initial perturbation: exponents like 27/(64 nu^4) ||u0||^4 overflow
double precision long before the physics gets interesting, while log-space
comparisons stay exact.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

NEG_INF = float("-inf")

#: Constant of the Young split 2^{1/4} a^{1/2} b^{3/2} c <= nu b^2 + YOUNG_C/nu^3 a^2 c^4.
YOUNG_C = 27.0 / 128.0

#: Gronwall prefactor: running bound exponent is GRONWALL_C/nu^3 * int ||u||_{L^4}^4,
#: a-priori exponent is GRONWALL_C/nu^4 * ||u0||_{L^2}^4.
GRONWALL_C = 27.0 / 64.0

#: Reference planar Ladyzhenskaya constant: ||f||_{L^4}^4 <= LADY_C ||f||^2 ||grad f||^2.
#: Proved for fields vanishing on the boundary; on the torus (mean-zero
#: fields) the ratio is recorded empirically against this reference.
LADY_C = 2.0


class BoundKind(enum.Enum):
    APRIORI = "apriori"
    RUNNING = "running"


@dataclass
class BoundCurve:
    """Time-indexed log-space bound on the perturbation energy ||w||^2."""

    times: np.ndarray
    log_bound: np.ndarray
    kind: BoundKind

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=np.float64)
        self.log_bound = np.asarray(self.log_bound, dtype=np.float64)
        if self.times.shape != self.log_bound.shape:
            raise ValueError("times and log_bound must have matching shapes")
        if np.any(np.diff(self.log_bound) < -1e-12 * np.maximum(1.0, np.abs(self.log_bound[:-1]))):
            raise ValueError("bound curve must be nondecreasing in time")


@dataclass
class PerturbationBudget:
    """Admissible initial-perturbation size e^{-C/nu^4}, held in log space."""

    nu: float
    C: float
    log_delta_max: float

    @property
    def delta_max(self) -> float:
        return math.exp(self.log_delta_max)


def young_split_gap(a, b, c, nu):
    """RHS - LHS of the split 2^{1/4} a^{1/2} b^{3/2} c <= nu b^2 + (27/(128 nu^3)) a^2 c^4.

    Nonnegative on the whole nonnegative orthant; exactly zero on the
    curve b = 9 sqrt(2) a c^2 / (16 nu^2), which is what makes 27/128 the
    sharp constant.  Accepts scalars or broadcasting arrays.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    nu = np.asarray(nu, dtype=np.float64)
    if np.any(nu <= 0):
        raise ValueError("viscosity must be positive")
    if np.any(a < 0) or np.any(b < 0) or np.any(c < 0):
        raise ValueError("a, b, c must be nonnegative")
    lhs = 2.0 ** 0.25 * np.sqrt(a) * b ** 1.5 * c
    rhs = nu * b * b + YOUNG_C / nu ** 3 * a * a * c ** 4
    gap = rhs - lhs
    return float(gap) if gap.ndim == 0 else gap


def young_split_minimizer(a, c, nu):
    """The b at which the split gap vanishes: 9 sqrt(2) a c^2 / (16 nu^2)."""
    return 9.0 * math.sqrt(2.0) / 16.0 * np.asarray(a) * np.asarray(c) ** 2 / np.asarray(nu) ** 2


def ladyzhenskaya_ratio_2d(f: np.ndarray) -> float:
    """||f||_{L^4}^4 / (2 ||f||_{L^2}^2 ||grad f||_{L^2}^2) on the periodic square.

    f holds collocation samples on Q^2: shape (n, n) for a scalar or
    (m, n, n) for an m-component field (the k3 = 0 slice of a velocity
    field, say).  The field must be mean-zero and nonzero; a ratio <= 1
    confirms the reference inequality with constant 2 for this field.
    """
    f = np.asarray(f, dtype=np.float64)
    if f.ndim == 2:
        f = f[None]
    if f.ndim != 3 or f.shape[1] != f.shape[2]:
        raise ValueError(f"expected (n, n) or (m, n, n) samples, got shape {f.shape}")
    if not np.all(np.isfinite(f)):
        raise ValueError("non-finite sample")
    n = f.shape[1]
    fhat = np.fft.fftn(f, axes=(1, 2), norm="forward")
    power = fhat.real ** 2 + fhat.imag ** 2
    l2_sq = float(np.sum(power))
    if l2_sq == 0.0:
        raise ValueError("zero field rejected (0/0 ratio)")
    mean_sq = float(np.sum(power[:, 0, 0]))
    if mean_sq > 1e-24 * l2_sq:
        raise ValueError("field must be mean-zero")
    k = np.fft.fftfreq(n, d=1.0 / n)
    k_sq = k[:, None] ** 2 + k[None, :] ** 2
    h1_sq = float(np.sum((2.0 * np.pi) ** 2 * k_sq * power))
    mag_sq = np.sum(f * f, axis=0)
    l4_fourth = float(np.mean(mag_sq * mag_sq))
    return l4_fourth / (LADY_C * l2_sq * h1_sq)


def apriori_bound(w0_l2sq: float, u0_l2sq: float, nu: float) -> float:
    """Time-independent log bound: log ||w0||^2 + (27/(64 nu^4)) ||u0||^4.

    Returns -inf when the initial difference vanishes (uniqueness: the
    bound is identically zero).
    """
    if nu <= 0:
        raise ValueError("viscosity must be positive")
    if w0_l2sq < 0 or u0_l2sq < 0:
        raise ValueError("energies must be nonnegative")
    if w0_l2sq == 0.0:
        return NEG_INF
    return math.log(w0_l2sq) + GRONWALL_C / nu ** 4 * u0_l2sq ** 2


def apriori_curve(times, w0_l2sq: float, u0_l2sq: float, nu: float,
                  work_history=None) -> BoundCurve:
    """A-priori bound as a curve over sample times.

    Unforced, the curve is constant.  With symmetric forcing the energy
    budget ||u0||^2 + 2 int <u, f> replaces ||u0||^2, evaluated with the
    running maximum of the work integral so the curve stays a valid upper
    envelope (and nondecreasing).
    """
    times = np.asarray(times, dtype=np.float64)
    if work_history is None:
        log_b = np.full(times.shape, apriori_bound(w0_l2sq, u0_l2sq, nu))
    else:
        work = np.maximum.accumulate(np.asarray(work_history, dtype=np.float64))
        if work.shape != times.shape:
            raise ValueError("work history must match sample times")
        if w0_l2sq == 0.0:
            log_b = np.full(times.shape, NEG_INF)
        else:
            budget = u0_l2sq + np.maximum(work, 0.0)
            log_b = math.log(w0_l2sq) + GRONWALL_C / nu ** 4 * budget ** 2
    return BoundCurve(times, log_b, BoundKind.APRIORI)


def running_bound(times, l4_history, w0_l2sq: float, nu: float) -> BoundCurve:
    """Gronwall curve: log ||w0||^2 + (27/(64 nu^3)) int_0^t ||u||_{L^4}^4 ds.

    The integral is the trapezoid rule over the sample times, which must
    be strictly increasing.
    """
    if nu <= 0:
        raise ValueError("viscosity must be positive")
    times = np.asarray(times, dtype=np.float64)
    l4 = np.asarray(l4_history, dtype=np.float64)
    if times.ndim != 1 or times.shape != l4.shape:
        raise ValueError("times and history must be matching 1-D arrays")
    if np.any(np.diff(times) <= 0):
        raise ValueError("sample times must be strictly increasing")
    if np.any(l4 < 0):
        raise ValueError("||u||_{L^4}^4 history must be nonnegative")
    integral = np.concatenate(([0.0], np.cumsum(0.5 * (l4[1:] + l4[:-1]) * np.diff(times))))
    log_w0 = NEG_INF if w0_l2sq == 0.0 else math.log(w0_l2sq)
    return BoundCurve(times, log_w0 + GRONWALL_C / nu ** 3 * integral, BoundKind.RUNNING)


def perturbation_budget(u0_l2sq: float, nu: float, C: float | None = None) -> PerturbationBudget:
    """Admissible ||u0 - u0^nu|| for the vanishing-viscosity experiment.

    C defaults to its theorem floor (27/64) ||u0||^4 and may be raised but
    not lowered; delta_max = e^{-C/nu^4} is returned in log space.
    """
    if nu <= 0:
        raise ValueError("viscosity must be positive")
    if u0_l2sq < 0:
        raise ValueError("energy must be nonnegative")
    floor = GRONWALL_C * u0_l2sq ** 2
    if C is None:
        C = floor
    elif C < floor * (1.0 - 1e-12):
        raise ValueError(f"C={C} is below the floor (27/64)||u0||^4 = {floor}")
    return PerturbationBudget(nu=nu, C=C, log_delta_max=-C / nu ** 4)

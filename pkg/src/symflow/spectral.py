"""Spectral representation of real periodic fields on the unit box.

Fields live on the triply periodic box [0,1)^3, sampled on an n^3
collocation grid and stored as complex Fourier coefficients over the
integer wavenumber lattice.  The convention is

    u(x) = sum_k uhat(k) exp(2*pi*i k.x)

with integer k and physical wavenumber 2*pi*k (box side 1).  The forward
transform carries the 1/n^3 factor, so Parseval reads

    sum_x |u(x)|^2 / n^3 = sum_k |uhat(k)|^2

and spectral sums of squared coefficients equal physical L^2 integrals
directly.  Coefficient arrays use the standard FFT bin ordering
(0, 1, ..., n/2-1, -n/2, ..., -1 per axis); the self-conjugate Nyquist
bin is the lattice point labelled n/2 and is always outside the 2/3
dealias band, so it carries no energy in solver-produced fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

# Divergence tolerance for solenoidal-field invariants: max_k |k.uhat(k)|
# relative to the field's L2 norm.
TOL_DIV = 1e-12


class GridSpec:
    """Wavenumber bookkeeping for an n^3 periodic grid.

    Holds the integer wavenumber lattice, |k|^2, the 2/3-rule dealias mask
    (true iff |k_i| <= n/3 for every axis) and the H^1 weight (2*pi)^2|k|^2.
    """

    def __init__(self, n: int):
        if n % 2 != 0 or n < 8:
            raise ValueError(f"grid size must be even and >= 8, got {n}")
        self.n = n
        k1d = np.fft.fftfreq(n, d=1.0 / n).astype(np.int64)
        self.k1d = k1d
        self.kx = k1d[:, None, None]
        self.ky = k1d[None, :, None]
        self.kz = k1d[None, None, :]
        self.k_sq = (self.kx * self.kx + self.ky * self.ky + self.kz * self.kz).astype(np.float64)
        inv = np.zeros_like(self.k_sq)
        nonzero = self.k_sq > 0
        inv[nonzero] = 1.0 / self.k_sq[nonzero]
        self.inv_k_sq = inv
        self.h1_weight = (2.0 * np.pi) ** 2 * self.k_sq
        self.dealias_cutoff = n // 3
        keep = np.abs(k1d) <= self.dealias_cutoff
        self.dealias_mask = keep[:, None, None] & keep[None, :, None] & keep[None, None, :]

    def collocation_points(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Meshgrid of the n^3 collocation points x = j/n, 'ij' indexing."""
        x = np.arange(self.n) / self.n
        return np.meshgrid(x, x, x, indexing="ij")

    def __eq__(self, other):
        return isinstance(other, GridSpec) and other.n == self.n

    def __hash__(self):
        return hash(("GridSpec", self.n))

    def __repr__(self):
        return f"GridSpec(n={self.n})"


@dataclass
class SpectralVelocityField:
    """Three complex coefficient arrays over the wavenumber lattice.

    coeffs has shape (3, n, n, n), complex128.  A physically meaningful
    field is Hermitian-symmetric (real in physical space); solver states
    are additionally divergence-free with zero mean mode.
    """

    grid: GridSpec
    coeffs: np.ndarray

    def copy(self) -> "SpectralVelocityField":
        return SpectralVelocityField(self.grid, self.coeffs.copy())

    def __add__(self, other: "SpectralVelocityField") -> "SpectralVelocityField":
        _check_same_grid(self.grid, other.grid)
        return SpectralVelocityField(self.grid, self.coeffs + other.coeffs)

    def __sub__(self, other: "SpectralVelocityField") -> "SpectralVelocityField":
        _check_same_grid(self.grid, other.grid)
        return SpectralVelocityField(self.grid, self.coeffs - other.coeffs)

    def __mul__(self, scalar: float) -> "SpectralVelocityField":
        return SpectralVelocityField(self.grid, self.coeffs * scalar)

    __rmul__ = __mul__


@dataclass
class ScalarField:
    """One complex coefficient array over the lattice (work/pressure slots)."""

    grid: GridSpec
    coeffs: np.ndarray

    @classmethod
    def from_samples(cls, grid: GridSpec, samples: np.ndarray) -> "ScalarField":
        _check_finite(samples)
        if samples.shape != (grid.n,) * 3:
            raise ValueError(f"expected shape {(grid.n,)*3}, got {samples.shape}")
        return cls(grid, np.fft.fftn(samples, norm="forward"))

    def to_samples(self) -> np.ndarray:
        return np.fft.ifftn(self.coeffs, norm="forward").real


class FieldNorms(NamedTuple):
    l2_sq: float
    h1_sq: float
    l4_fourth: float


def _check_same_grid(a: GridSpec, b: GridSpec) -> None:
    if a != b:
        raise ValueError(f"grid mismatch: {a} vs {b}")


def _check_finite(samples: np.ndarray) -> None:
    if not np.all(np.isfinite(samples)):
        bad = np.argwhere(~np.isfinite(samples))[0]
        raise ValueError(f"non-finite sample at index {tuple(int(i) for i in bad)}")


def zero_field(grid: GridSpec) -> SpectralVelocityField:
    return SpectralVelocityField(grid, np.zeros((3, grid.n, grid.n, grid.n), dtype=np.complex128))


def forward_transform(grid: GridSpec, physical: np.ndarray) -> SpectralVelocityField:
    """Transform real samples of shape (3, n, n, n) to spectral coefficients.

    Rejects non-finite input, naming the first offending index.  Round
    trip with inverse_transform reproduces the samples to ~1e-15.
    """
    physical = np.asarray(physical, dtype=np.float64)
    if physical.shape != (3, grid.n, grid.n, grid.n):
        raise ValueError(f"expected shape {(3, grid.n, grid.n, grid.n)}, got {physical.shape}")
    _check_finite(physical)
    return SpectralVelocityField(grid, np.fft.fftn(physical, axes=(1, 2, 3), norm="forward"))


def inverse_transform(field: SpectralVelocityField) -> np.ndarray:
    """Return the real physical samples, shape (3, n, n, n)."""
    return np.fft.ifftn(field.coeffs, axes=(1, 2, 3), norm="forward").real


def physical_imag_residue(field: SpectralVelocityField) -> float:
    """Max |imaginary part| of the inverse transform; ~0 for Hermitian fields."""
    return float(np.max(np.abs(np.fft.ifftn(field.coeffs, axes=(1, 2, 3), norm="forward").imag)))


def conj_reflect(coeffs: np.ndarray) -> np.ndarray:
    """conj of the coefficients at -k, for lattice-indexed trailing axes."""
    return np.roll(coeffs[..., ::-1, ::-1, ::-1], 1, axis=(-3, -2, -1)).conj()


def hermitian_defect(field: SpectralVelocityField) -> float:
    """Max |uhat(k) - conj(uhat(-k))| over components and lattice."""
    return float(np.max(np.abs(field.coeffs - conj_reflect(field.coeffs))))


def divergence_defect(field: SpectralVelocityField) -> float:
    """Max over k of |k . uhat(k)| (integer wavenumbers)."""
    g = field.grid
    c = field.coeffs
    return float(np.max(np.abs(g.kx * c[0] + g.ky * c[1] + g.kz * c[2])))


def l2_norm_sq(field: SpectralVelocityField) -> float:
    """Squared L^2(Q^3) norm, summed over components (Parseval)."""
    c = field.coeffs
    return float(np.sum(c.real * c.real + c.imag * c.imag))


def h1_seminorm_sq(field: SpectralVelocityField) -> float:
    """Squared L^2 norm of the full velocity gradient (enstrophy)."""
    c = field.coeffs
    return float(np.sum(field.grid.h1_weight * (c.real * c.real + c.imag * c.imag)))


def norms(field: SpectralVelocityField) -> FieldNorms:
    """(l2_sq, h1_sq, l4_fourth) for the field.

    l2_sq and h1_sq are spectral sums; the L^4 norm to the fourth power is
    the collocation quadrature (1/n^3) sum_x |u(x)|^4 of the pointwise
    Euclidean speed.
    """
    u = inverse_transform(field)
    speed_sq = u[0] * u[0] + u[1] * u[1] + u[2] * u[2]
    l4 = float(np.mean(speed_sq * speed_sq))
    return FieldNorms(l2_norm_sq(field), h1_seminorm_sq(field), l4)


def leray_project(field: SpectralVelocityField) -> SpectralVelocityField:
    """L^2-orthogonal projection onto divergence-free fields.

    For k != 0: uhat <- uhat - k (k.uhat)/|k|^2.  The mean mode is pinned
    to zero (zero-mean gauge).  Idempotent; a contraction in L^2.
    """
    g = field.grid
    c = field.coeffs
    k_dot_u = (g.kx * c[0] + g.ky * c[1] + g.kz * c[2]) * g.inv_k_sq
    out = np.empty_like(c)
    out[0] = c[0] - g.kx * k_dot_u
    out[1] = c[1] - g.ky * k_dot_u
    out[2] = c[2] - g.kz * k_dot_u
    out[:, 0, 0, 0] = 0.0
    return SpectralVelocityField(g, out)


def dealias(field: SpectralVelocityField) -> SpectralVelocityField:
    """Zero every coefficient outside the 2/3-rule mask."""
    return SpectralVelocityField(field.grid, field.coeffs * field.grid.dealias_mask)


def validate_field(field: SpectralVelocityField, tol_div: float = TOL_DIV,
                   tol_herm: float = 1e-12, require_solenoidal: bool = True) -> None:
    """Check the field invariants, raising ValueError on the first violation.

    Hermitian symmetry and the zero mean mode are always required;
    divergence-freeness only when require_solenoidal (fields fresh from
    forward_transform may legitimately carry a gradient part).
    """
    c = field.coeffs
    if c.shape != (3, field.grid.n, field.grid.n, field.grid.n):
        raise ValueError(f"coefficient shape {c.shape} does not match {field.grid}")
    if not np.all(np.isfinite(c.view(np.float64))):
        raise ValueError("non-finite spectral coefficient")
    scale = float(np.max(np.abs(c)))
    if scale == 0.0:
        return
    if hermitian_defect(field) > tol_herm * scale:
        raise ValueError("Hermitian symmetry violated: field is not real in physical space")
    if float(np.max(np.abs(c[:, 0, 0, 0]))) > tol_herm * scale:
        raise ValueError("mean mode is not zero")
    if require_solenoidal and divergence_defect(field) > tol_div * np.sqrt(l2_norm_sq(field)):
        raise ValueError("divergence-free invariant violated")

"""Symmetry group actions on the periodic box and their deviation metrics.

Two groups act on velocity fields here:

* vertical translations x3 -> x3 + a, whose invariant fields are exactly
  those with no k3 != 0 Fourier content (the spectrally testable form of
  "essentially independent of x3");
* the discrete helical group generated by a rotation of pi/2 about the
  x3-axis composed with a vertical shift of 1/4, a 4-element cyclic group
  that is an exact automorphism of the lattice.

Both symmetrizers are L^2-orthogonal projections, and both deviation
metrics are the energy of the component orthogonal to the invariant
subspace.
"""

from __future__ import annotations

import enum

import numpy as np

from .spectral import GridSpec, SpectralVelocityField, l2_norm_sq


class SymmetryKind(enum.Enum):
    VERTICAL_TRANSLATION = "vertical_translation"
    DISCRETE_HELICAL = "discrete_helical"


def translate_z(field: SpectralVelocityField, a: float) -> SpectralVelocityField:
    """Shift the field by a in the x3 direction: u(x) -> u(x1, x2, x3 - a).

    Acts as the phase e^{-2 pi i k3 a} on coefficients and preserves the
    L^2 norm exactly.  For band-limited fields (empty Nyquist plane) the
    output is real for every a; a field carrying k3 = -n/2 content stays
    real only for shifts with n*a even.
    """
    g = field.grid
    phase = np.exp(-2j * np.pi * g.k1d.astype(np.float64) * a)
    return SpectralVelocityField(g, field.coeffs * phase[None, None, None, :])


def symmetrize_z(field: SpectralVelocityField) -> SpectralVelocityField:
    """Project onto x3-independent fields by zeroing every k3 != 0 mode."""
    g = field.grid
    keep = (g.k1d == 0)[None, None, None, :]
    return SpectralVelocityField(g, field.coeffs * keep)


def ei_x3_deviation(field: SpectralVelocityField) -> float:
    """Energy in the k3 != 0 modes: ||u - symmetrize_z(u)||_{L^2}^2.

    Zero iff the field is independent of x3 at the discrete level.
    """
    c = field.coeffs
    mask = (field.grid.k1d != 0)[None, None, None, :]
    power = c.real * c.real + c.imag * c.imag
    return float(np.sum(power * mask))


def _rotate_lattice(coeffs: np.ndarray) -> np.ndarray:
    # B[k1,k2,k3] = A[k2, -k1, k3]: transpose the horizontal axes, then
    # index-reverse axis 0 (reverse + roll maps bin i to bin (-i) mod n).
    t = coeffs.transpose(0, 2, 1, 3) if coeffs.ndim == 4 else coeffs.transpose(1, 0, 2)
    axis = 1 if coeffs.ndim == 4 else 0
    t = np.flip(t, axis=axis)
    return np.roll(t, 1, axis=axis)


def helical_apply(field: SpectralVelocityField) -> SpectralVelocityField:
    """Apply the helical generator: output(x) = R^T u(R x + e3/4).

    R is the rotation by pi/2 about the x3-axis.  On coefficients this is
    the exact lattice map uhat'(k) = R^T uhat(k2, -k1, k3) * i^{k3}: an
    index permutation, a component rotation (u1, u2) -> (-u2, u1), and a
    phase that only takes the exact unit values {1, i, -1, -i}.  The
    fourth iterate is the identity.
    """
    g = field.grid
    if g.n % 4 != 0:
        raise ValueError(f"helical action requires n divisible by 4, got n={g.n}")
    rotated = _rotate_lattice(field.coeffs)
    out = np.empty_like(rotated)
    out[0] = -rotated[1]
    out[1] = rotated[0]
    out[2] = rotated[2]
    phase = np.array([1.0, 1j, -1.0, -1j], dtype=np.complex128)[g.k1d % 4]
    out *= phase[None, None, None, :]
    return SpectralVelocityField(g, out)


def helical_symmetrize(field: SpectralVelocityField) -> SpectralVelocityField:
    """Average of the four group iterates: projection onto invariant fields."""
    acc = field.coeffs.copy()
    it = field
    for _ in range(3):
        it = helical_apply(it)
        acc += it.coeffs
    return SpectralVelocityField(field.grid, acc * 0.25)


def helical_deviation(field: SpectralVelocityField) -> float:
    """||u - helical_symmetrize(u)||_{L^2}^2."""
    return l2_norm_sq(field - helical_symmetrize(field))


def symmetry_deviation(field: SpectralVelocityField, kind: SymmetryKind) -> float:
    if kind is SymmetryKind.VERTICAL_TRANSLATION:
        return ei_x3_deviation(field)
    return helical_deviation(field)


def make_2p5d(grid: GridSpec, physical_2d: np.ndarray) -> SpectralVelocityField:
    """Embed a three-component planar field u(x1, x2) into the 3D box.

    physical_2d has shape (3, n, n): all three velocity components sampled
    on the horizontal grid.  The horizontal pair must be 2D solenoidal
    (k1*u1hat + k2*u2hat = 0); u3 is unconstrained since it never enters
    the 3D divergence for x3-independent fields.  The result has all
    k3 != 0 modes zero, hence ei_x3_deviation exactly 0.
    """
    n = grid.n
    physical_2d = np.asarray(physical_2d, dtype=np.float64)
    if physical_2d.shape != (3, n, n):
        raise ValueError(f"expected shape {(3, n, n)}, got {physical_2d.shape}")
    if not np.all(np.isfinite(physical_2d)):
        raise ValueError("non-finite sample in planar field")
    plane = np.fft.fftn(physical_2d, axes=(1, 2), norm="forward")
    k = grid.k1d
    div2d = k[:, None] * plane[0] + k[None, :] * plane[1]
    scale = float(np.max(np.abs(plane[:2]))) or 1.0
    if float(np.max(np.abs(div2d))) > 1e-10 * scale:
        raise ValueError("planar field is not solenoidal in (x1, x2)")
    coeffs = np.zeros((3, n, n, n), dtype=np.complex128)
    coeffs[:, :, :, 0] = plane
    return SpectralVelocityField(grid, coeffs)


def wild_energy_profile(t, x3):
    """Energy-density offset t/(t^2+1) * (1 + sin^2(2 pi x3)).

    Vanishes at t = 0, is positive for t > 0, and peaks in t at t = 1.
    Accepts scalars or arrays (broadcasting).
    """
    t = np.asarray(t, dtype=np.float64)
    if np.any(t < 0):
        raise ValueError("profile is defined for t >= 0")
    s = np.sin(2.0 * np.pi * np.asarray(x3, dtype=np.float64))
    out = t / (t * t + 1.0) * (1.0 + s * s)
    return float(out) if out.ndim == 0 else out

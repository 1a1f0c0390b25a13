"""Independent oracles shared by the test modules.

Everything here deliberately avoids the library's own FFT-based code
paths: direct DFT summation, physical-space index manipulation and
closed-form integrals, so the tests check the package against genuinely
independent computations.
"""

from __future__ import annotations

import numpy as np

from symflow.spectral import GridSpec, SpectralVelocityField, forward_transform


def direct_dft(samples: np.ndarray) -> np.ndarray:
    """O(n^6) direct DFT with the 1/n^3 forward normalization.

    samples: real array (n, n, n).  Returns coefficients in FFT bin order.
    """
    n = samples.shape[0]
    k = np.fft.fftfreq(n, d=1.0 / n).astype(np.int64)
    x = np.arange(n) / n
    w = np.exp(-2j * np.pi * np.outer(k, x))  # w[k, j] = e^{-2 pi i k x_j}
    out = np.einsum("ax,by,cz,xyz->abc", w, w, w, samples) / n**3
    return out


def grid_points(n: int):
    x = np.arange(n) / n
    return np.meshgrid(x, x, x, indexing="ij")


def field_from_physical(grid: GridSpec, build) -> SpectralVelocityField:
    """Sample three callables (or arrays) on the grid and transform."""
    x1, x2, x3 = grid_points(grid.n)
    comps = [np.asarray(c(x1, x2, x3) if callable(c) else c, dtype=np.float64) for c in build]
    phys = np.stack([np.broadcast_to(c, x1.shape) for c in comps])
    return forward_transform(grid, phys)


def random_real_field(grid: GridSpec, rng, band_limited: bool = True) -> SpectralVelocityField:
    """Random Hermitian field; band-limited keeps it inside the dealias mask."""
    phys = rng.standard_normal((3, grid.n, grid.n, grid.n))
    field = forward_transform(grid, phys)
    if band_limited:
        field = SpectralVelocityField(grid, field.coeffs * grid.dealias_mask)
    return field


def helical_apply_physical(phys: np.ndarray) -> np.ndarray:
    """Brute-force helical generator on physical samples.

    output(x) = R^T u(R x + e3/4) with R the rotation by pi/2 about x3:
    pure index bookkeeping on the lattice (requires n divisible by 4),
    independent of any spectral machinery.
    """
    n = phys.shape[1]
    assert n % 4 == 0
    i = np.arange(n)
    i1, i2, i3 = np.meshgrid(i, i, i, indexing="ij")
    # R x = (x2, -x1, x3), shift adds n/4 to the third index
    src1 = i2
    src2 = (-i1) % n
    src3 = (i3 + n // 4) % n
    moved = phys[:, src1, src2, src3]
    out = np.empty_like(phys)
    out[0] = -moved[1]
    out[1] = moved[0]
    out[2] = moved[2]
    return out

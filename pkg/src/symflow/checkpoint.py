"""Binary checkpoint format for spectral velocity fields.

Layout (all little-endian):

    bytes 0-7    magic "SYMFLOW1"
    bytes 8-15   n, unsigned 64-bit
    bytes 16-23  component count (always 3), unsigned 64-bit
    then, per component, the coefficient array in lexicographic order of
    the integer wavenumber triple (k1, k2, k3) with each k ascending over
    {-n/2+1, ..., n/2}, stored as interleaved float64 (re, im) pairs.
"""

from __future__ import annotations

import struct

import numpy as np

from .spectral import GridSpec, SpectralVelocityField

MAGIC = b"SYMFLOW1"
_HEADER = struct.Struct("<8sQQ")


def _lex_permutation(grid: GridSpec) -> np.ndarray:
    # FFT bin order -> ascending wavenumber order, with the self-conjugate
    # Nyquist bin labelled +n/2 so the lattice reads {-n/2+1, ..., n/2}.
    labels = grid.k1d.copy()
    labels[labels == -grid.n // 2] = grid.n // 2
    return np.argsort(labels, kind="stable")


def write_checkpoint(path, field: SpectralVelocityField) -> None:
    grid = field.grid
    perm = _lex_permutation(grid)
    ordered = field.coeffs[:, perm][:, :, perm][:, :, :, perm]
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, grid.n, 3))
        fh.write(np.ascontiguousarray(ordered).astype("<c16").tobytes())


def read_checkpoint(path) -> SpectralVelocityField:
    with open(path, "rb") as fh:
        header = fh.read(_HEADER.size)
        if len(header) != _HEADER.size:
            raise ValueError(f"{path}: truncated header")
        magic, n, ncomp = _HEADER.unpack(header)
        if magic != MAGIC:
            raise ValueError(f"{path}: bad magic {magic!r}")
        if ncomp != 3:
            raise ValueError(f"{path}: expected 3 components, found {ncomp}")
        grid = GridSpec(int(n))
        payload = fh.read()
    expected = 3 * n ** 3 * 16
    if len(payload) != expected:
        raise ValueError(f"{path}: payload is {len(payload)} bytes, expected {expected}")
    ordered = np.frombuffer(payload, dtype="<c16").reshape(3, n, n, n).astype(np.complex128)
    perm = _lex_permutation(grid)
    coeffs = np.empty_like(ordered)
    coeffs[:, perm[:, None, None], perm[None, :, None], perm[None, None, :]] = ordered
    return SpectralVelocityField(grid, coeffs)

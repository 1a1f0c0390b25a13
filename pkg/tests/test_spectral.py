"""Transforms, projection, dealiasing, norms and the checkpoint format."""

import struct

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symflow.checkpoint import read_checkpoint, write_checkpoint
from symflow.spectral import (
    GridSpec,
    SpectralVelocityField,
    dealias,
    divergence_defect,
    forward_transform,
    hermitian_defect,
    inverse_transform,
    l2_norm_sq,
    leray_project,
    norms,
    physical_imag_residue,
    validate_field,
    zero_field,
)

from helpers import direct_dft, field_from_physical, grid_points, random_real_field


def test_grid_rejects_odd_and_small():
    with pytest.raises(ValueError):
        GridSpec(7)
    with pytest.raises(ValueError):
        GridSpec(6)
    assert GridSpec(8).n == 8


def test_dealias_mask_symmetric_under_reflection():
    g = GridSpec(16)
    m = g.dealias_mask.astype(np.float64)
    reflected = np.roll(m[::-1, ::-1, ::-1], 1, axis=(0, 1, 2))
    assert np.array_equal(m, reflected)


def test_constant_field_is_dc_mode():
    g = GridSpec(8)
    phys = np.stack([np.full((8, 8, 8), c) for c in (1.0, -2.5, 0.25)])
    f = forward_transform(g, phys)
    for j, c in enumerate((1.0, -2.5, 0.25)):
        assert f.coeffs[j, 0, 0, 0] == pytest.approx(c, abs=1e-14)
        rest = f.coeffs[j].copy()
        rest[0, 0, 0] = 0.0
        assert np.max(np.abs(rest)) < 1e-14


def test_sine_coefficients_match_direct_summation():
    # u1 = sin(2 pi x3): analytic coefficients -i/2 and +i/2 at k3 = +-1
    g = GridSpec(8)
    x1, x2, x3 = grid_points(8)
    phys = np.stack([np.sin(2 * np.pi * x3), np.zeros_like(x3), np.zeros_like(x3)])
    f = forward_transform(g, phys)
    oracle = direct_dft(phys[0])
    assert np.max(np.abs(f.coeffs[0] - oracle)) < 1e-13
    assert f.coeffs[0, 0, 0, 1] == pytest.approx(-0.5j, abs=1e-14)
    assert f.coeffs[0, 0, 0, -1] == pytest.approx(0.5j, abs=1e-14)
    other = f.coeffs[0].copy()
    other[0, 0, 1] = other[0, 0, -1] = 0.0
    assert np.max(np.abs(other)) < 1e-14


def test_white_noise_round_trip():
    g = GridSpec(16)
    rng = np.random.default_rng(3)
    phys = rng.standard_normal((3, 16, 16, 16))
    back = inverse_transform(forward_transform(g, phys))
    assert np.max(np.abs(back - phys)) < 1e-12 * np.max(np.abs(phys))


def test_nonfinite_input_names_offending_index():
    g = GridSpec(8)
    phys = np.zeros((3, 8, 8, 8))
    phys[1, 2, 3, 4] = np.nan
    with pytest.raises(ValueError, match=r"\(1, 2, 3, 4\)"):
        forward_transform(g, phys)


def test_parseval():
    g = GridSpec(16)
    rng = np.random.default_rng(11)
    phys = rng.standard_normal((3, 16, 16, 16))
    f = forward_transform(g, phys)
    physical_l2 = float(np.sum(phys * phys)) / 16**3
    assert l2_norm_sq(f) == pytest.approx(physical_l2, rel=1e-12)


class TestLerayProjection:
    def test_pure_gradient_mode_annihilated(self):
        g = GridSpec(8)
        f = zero_field(g)
        f.coeffs[0, 1, 0, 0] = 1.0  # uhat = (1,0,0) at k = (1,0,0)
        f.coeffs[0, -1, 0, 0] = 1.0
        out = leray_project(f)
        assert np.max(np.abs(out.coeffs)) < 1e-15

    def test_solenoidal_mode_unchanged(self):
        g = GridSpec(8)
        f = zero_field(g)
        f.coeffs[1, 1, 0, 0] = 1.0  # uhat = (0,1,0) at k = (1,0,0)
        f.coeffs[1, -1, 0, 0] = 1.0
        out = leray_project(f)
        assert np.max(np.abs(out.coeffs - f.coeffs)) < 1e-15

    def test_random_field_properties(self):
        g = GridSpec(16)
        rng = np.random.default_rng(5)
        f = random_real_field(g, rng)
        p = leray_project(f)
        assert divergence_defect(p) <= 1e-12 * np.sqrt(l2_norm_sq(p))
        pp = leray_project(p)
        assert np.max(np.abs(pp.coeffs - p.coeffs)) < 1e-14
        # contraction, equality iff already solenoidal
        assert l2_norm_sq(p) <= l2_norm_sq(f)
        again = leray_project(p)
        assert l2_norm_sq(again) == pytest.approx(l2_norm_sq(p), rel=1e-14)

    def test_solenoidal_input_is_fixed_point(self):
        g = GridSpec(16)
        rng = np.random.default_rng(6)
        p = leray_project(random_real_field(g, rng))
        assert np.max(np.abs(leray_project(p).coeffs - p.coeffs)) < 1e-13 * np.max(np.abs(p.coeffs))


class TestDealias:
    def test_mask_boundary_n16(self):
        g = GridSpec(16)  # 16/3 = 5.33: |k| = 5 kept, 6 zeroed
        f = zero_field(g)
        f.coeffs[0, 6, 0, 0] = 1.0
        f.coeffs[0, 5, 0, 0] = 2.0
        out = dealias(f)
        assert out.coeffs[0, 6, 0, 0] == 0.0
        assert out.coeffs[0, 5, 0, 0] == 2.0

    def test_identity_on_dealiased(self):
        g = GridSpec(16)
        rng = np.random.default_rng(7)
        f = dealias(random_real_field(g, rng, band_limited=False))
        out = dealias(f)
        assert np.array_equal(out.coeffs, f.coeffs)


class TestNorms:
    def test_sine_field_closed_forms(self):
        # int sin^2 = 1/2, |grad|^2 = (2 pi)^2 int cos^2 = 2 pi^2, int sin^4 = 3/8
        g = GridSpec(32)
        f = field_from_physical(g, [lambda x1, x2, x3: np.sin(2 * np.pi * x3), 0.0, 0.0])
        nm = norms(f)
        assert nm.l2_sq == pytest.approx(0.5, rel=1e-12)
        assert nm.h1_sq == pytest.approx(2 * np.pi**2, rel=1e-12)
        assert nm.l4_fourth == pytest.approx(3.0 / 8.0, rel=1e-12)

    def test_zero_field(self):
        assert norms(zero_field(GridSpec(8))) == (0.0, 0.0, 0.0)

    def test_taylor_green_energy(self):
        g = GridSpec(32)
        f = field_from_physical(g, [
            lambda x1, x2, x3: -np.cos(2 * np.pi * x1) * np.sin(2 * np.pi * x2),
            lambda x1, x2, x3: np.sin(2 * np.pi * x1) * np.cos(2 * np.pi * x2),
            0.0,
        ])
        nm = norms(f)
        assert nm.l2_sq == pytest.approx(0.5, rel=1e-12)
        # quadrature cross-check of the L2 norm in physical space
        u = inverse_transform(f)
        assert float(np.mean(np.sum(u * u, axis=0))) == pytest.approx(nm.l2_sq, rel=1e-12)
        # |u|^4 closed form for Taylor-Green: 20/64
        assert nm.l4_fourth == pytest.approx(5.0 / 16.0, rel=1e-12)


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_operations_preserve_hermitian_symmetry(seed):
    g = GridSpec(8)
    rng = np.random.default_rng(seed)
    f = random_real_field(g, rng)
    for op in (leray_project, dealias):
        out = op(f)
        assert hermitian_defect(out) < 1e-12 * max(1.0, np.max(np.abs(out.coeffs)))
        assert physical_imag_residue(out) < 1e-12 * max(1.0, np.max(np.abs(out.coeffs)))


def test_validate_field_catches_violations():
    g = GridSpec(8)
    f = zero_field(g)
    f.coeffs[0, 1, 0, 0] = 1.0  # not Hermitian, not solenoidal
    with pytest.raises(ValueError, match="Hermitian"):
        validate_field(f)
    f.coeffs[0, -1, 0, 0] = 1.0  # now Hermitian but a gradient mode
    with pytest.raises(ValueError, match="divergence"):
        validate_field(f)
    validate_field(f, require_solenoidal=False)
    f.coeffs[0, 0, 0, 0] = 0.5
    with pytest.raises(ValueError, match="mean"):
        validate_field(f, require_solenoidal=False)
    validate_field(leray_project(f))


class TestCheckpoint:
    def test_round_trip_bitwise(self, tmp_path):
        g = GridSpec(16)
        rng = np.random.default_rng(9)
        f = leray_project(random_real_field(g, rng))
        path = tmp_path / "field.ckpt"
        write_checkpoint(path, f)
        back = read_checkpoint(path)
        assert back.grid.n == 16
        assert np.array_equal(back.coeffs, f.coeffs)

    def test_layout_lexicographic_order(self, tmp_path):
        # u1 = sin(2 pi x3): the (0,0,1) coefficient -i/2 must sit at the
        # lexicographic position of (k1,k2,k3) = (0,0,1) over {-3,...,4}^3.
        g = GridSpec(8)
        f = field_from_physical(g, [lambda x1, x2, x3: np.sin(2 * np.pi * x3), 0.0, 0.0])
        path = tmp_path / "sine.ckpt"
        write_checkpoint(path, f)
        raw = path.read_bytes()
        assert raw[:8] == b"SYMFLOW1"
        n, ncomp = struct.unpack("<QQ", raw[8:24])
        assert (n, ncomp) == (8, 3)
        pos = (0 + 3) * 64 + (0 + 3) * 8 + (1 + 3)  # component 0, (k1+3, k2+3, k3+3)
        re, im = struct.unpack("<2d", raw[24 + 16 * pos: 24 + 16 * (pos + 1)])
        assert re == pytest.approx(0.0, abs=1e-14)
        assert im == pytest.approx(-0.5, abs=1e-14)

    def test_corrupt_checkpoints_rejected(self, tmp_path):
        path = tmp_path / "bad.ckpt"
        path.write_bytes(b"NOTMAGIC" + b"\0" * 16)
        with pytest.raises(ValueError, match="magic"):
            read_checkpoint(path)
        g = GridSpec(8)
        good = tmp_path / "good.ckpt"
        write_checkpoint(good, zero_field(g))
        truncated = good.read_bytes()[:-8]
        bad = tmp_path / "trunc.ckpt"
        bad.write_bytes(truncated)
        with pytest.raises(ValueError, match="payload"):
            read_checkpoint(bad)

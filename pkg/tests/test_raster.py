from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ncbinsar.errors import DimensionError, RatioError
from ncbinsar.raster import (
    ResolutionRatio,
    as_complex_raster,
    as_phase_field,
    as_real_raster,
    frobenius_norm,
    hadamard,
    inner,
    phase_of,
    wrap_phase,
)

from conftest import crandn


def test_complex_raster_rejects_single_precision():
    with pytest.raises(TypeError):
        as_complex_raster(np.zeros((2, 2), dtype=np.complex64))
    with pytest.raises(TypeError):
        as_real_raster(np.zeros((2, 2), dtype=np.float32))


def test_rasters_must_be_2d():
    with pytest.raises(DimensionError):
        as_complex_raster(np.zeros(4))
    with pytest.raises(DimensionError):
        as_complex_raster(np.zeros((0, 3)))


def test_real_raster_rejects_complex():
    with pytest.raises(TypeError):
        as_real_raster(np.zeros((2, 2), dtype=complex))


def test_phase_field_checks_unit_modulus():
    as_phase_field(np.exp(1j * np.linspace(0, 6, 16)).reshape(4, 4))
    with pytest.raises(ValueError):
        as_phase_field(np.full((2, 2), 1.0 + 1e-9))


def test_hadamard_shape_mismatch():
    with pytest.raises(DimensionError):
        hadamard(np.ones((2, 3)), np.ones((3, 2)))
    np.testing.assert_array_equal(hadamard(np.full((2, 2), 2.0), np.full((2, 2), 3j)), np.full((2, 2), 6j))


def test_phase_of_branch_and_zero():
    a = np.array([[-1 - 0j, complex(-1, -0.0)], [0j, 1j]])
    ph = phase_of(a)
    assert ph[0, 0] == np.pi and ph[0, 1] == np.pi
    assert ph[1, 0] == 0.0
    assert ph[1, 1] == pytest.approx(np.pi / 2)


@given(st.floats(-50, 50))
def test_wrap_phase_range(x):
    w = wrap_phase(np.array([[x]]))[0, 0]
    assert -np.pi < w <= np.pi
    assert np.cos(w) == pytest.approx(np.cos(x), abs=1e-9)
    assert np.sin(w) == pytest.approx(np.sin(x), abs=1e-9)


def test_frobenius_and_inner(rng):
    a = crandn(rng, (5, 7))
    b = crandn(rng, (5, 7))
    assert frobenius_norm(a) == pytest.approx(np.linalg.norm(a), rel=1e-14)
    assert inner(a, b) == pytest.approx(np.vdot(b, a), rel=1e-13)
    assert frobenius_norm(a) == frobenius_norm(a.copy())


def test_ratio_parse_and_band():
    r = ResolutionRatio.parse("1/16", "1")
    assert r.alpha == Fraction(1, 16) and r.beta == 1
    assert r.product == pytest.approx(1 / 16)
    assert r.band_shape((256, 256)) == (16, 256)
    assert str(r) == "1/16x1"


@pytest.mark.parametrize("alpha", ["0", "3/2", "-1/4", "abc"])
def test_ratio_rejects_out_of_range(alpha):
    with pytest.raises(RatioError):
        ResolutionRatio.parse(alpha, "1")


def test_ratio_non_integer_band():
    with pytest.raises(RatioError):
        ResolutionRatio.parse("1/3", "1").band_shape((32, 32))


def test_hadamard_examples(rng):
    x = crandn(rng, (2, 2))
    np.testing.assert_array_equal(hadamard(np.ones((2, 2)), x), x)
    u = np.exp(1j * rng.uniform(-3, 3, (3, 3)))
    np.testing.assert_allclose(hadamard(u, np.conj(u) / np.abs(u)), np.ones((3, 3)), atol=1e-15)
    y = crandn(rng, (2, 2))
    loop = np.array([[x[i, j] * y[i, j] for j in range(2)] for i in range(2)])
    np.testing.assert_allclose(hadamard(x, y), loop, rtol=1e-15)


def test_phase_and_norm_examples(rng):
    assert phase_of(np.array([[np.exp(1j * np.pi / 3)]]))[0, 0] == pytest.approx(np.pi / 3)
    assert phase_of(np.array([[-1.0]]))[0, 0] == np.pi
    assert frobenius_norm(np.zeros((3, 3))) == 0.0
    assert frobenius_norm(np.array([[3 + 4j]])) == 5.0
    x = crandn(rng, (64, 64))
    acc = 0.0
    for v in x.ravel():
        acc += v.real**2 + v.imag**2
    assert frobenius_norm(x) == pytest.approx(np.sqrt(acc), rel=1e-12)

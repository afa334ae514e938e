import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ncbinsar.errors import DimensionError, RatioError
from ncbinsar.operator import BandSelector, MeasurementOperator, lowpass_degrade, lowpass_indices, power_iteration
from ncbinsar.raster import ResolutionRatio
from ncbinsar.transforms import SparseTransform, dft2

from conftest import crandn, random_theta

RATIOS = [(a, b) for a in ("1", "1/2", "1/4") for b in ("1", "1/2", "1/4")]


def dense_oracle(theta, alpha, beta):
    """(I*J) x (N*L) matrix built from the DFT sum, row-major vec."""
    n, l = theta.shape
    i_idx = lowpass_indices(n, int(alpha * n))
    j_idx = lowpass_indices(l, int(beta * l))
    fn = np.exp(-2j * np.pi * np.outer(i_idx, np.arange(n)) / n) / np.sqrt(n)
    fl = np.exp(-2j * np.pi * np.outer(j_idx, np.arange(l)) / l) / np.sqrt(l)
    return np.kron(fn, fl) @ np.diag(theta.ravel()) / np.sqrt(alpha * beta)


def test_lowpass_indices_split():
    np.testing.assert_array_equal(lowpass_indices(16, 4), [0, 1, 14, 15])
    np.testing.assert_array_equal(lowpass_indices(16, 5), [0, 1, 2, 14, 15])
    np.testing.assert_array_equal(lowpass_indices(8, 8), np.arange(8))
    np.testing.assert_array_equal(lowpass_indices(8, 1), [0])


def test_band_extract_embed_roundtrip(rng):
    band = BandSelector((16, 8), (4, 8))
    y = crandn(rng, (4, 8))
    np.testing.assert_array_equal(band.extract(band.embed(y)), y)
    assert band.mask().sum() == 32
    with pytest.raises(DimensionError):
        BandSelector((4, 4), (8, 4))


@pytest.mark.parametrize("alpha,beta", [("1/2", "1/4"), ("1", "1/2"), ("1/4", "1")])
def test_forward_matches_dense_oracle(alpha, beta, rng):
    ratio = ResolutionRatio.parse(alpha, beta)
    theta = random_theta(rng, (8, 8))
    op = MeasurementOperator(theta, ratio)
    d = dense_oracle(theta, float(ratio.alpha), float(ratio.beta))
    np.testing.assert_allclose(op.dense(), d, atol=1e-12)
    u = crandn(rng, (8, 8))
    np.testing.assert_allclose(op.forward(u).ravel(), d @ u.ravel(), atol=1e-12)
    y = crandn(rng, op.measurement_shape)
    np.testing.assert_allclose(op.adjoint(y).ravel(), d.conj().T @ y.ravel(), atol=1e-12)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(RATIOS), st.integers(0, 2**32 - 1))
def test_adjointness(ab, seed):
    rng = np.random.default_rng(seed)
    op = MeasurementOperator(random_theta(rng, (32, 32)), ResolutionRatio.parse(*ab))
    u = crandn(rng, op.shape)
    y = crandn(rng, op.measurement_shape)
    hu = op.forward(u)
    lhs = np.vdot(y, hu)
    rhs = np.vdot(op.adjoint(y), u)
    assert abs(lhs - rhs) / (np.linalg.norm(hu) * np.linalg.norm(y)) <= 1e-10


def test_prop1_matches_explicit_circular_convolution(rng):
    n = l = 8
    theta = random_theta(rng, (n, l))
    u = crandn(rng, (n, l))
    ratio = ResolutionRatio.parse("1/2", "1/2")
    op = MeasurementOperator(theta, ratio)
    th, uh = dft2(theta), dft2(u)
    conv = np.zeros((n, l), complex)
    for a in range(n):
        for b in range(l):
            for p in range(n):
                for q in range(l):
                    conv[a, b] += th[(a - p) % n, (b - q) % l] * uh[p, q]
    conv /= np.sqrt(n * l)
    expected = op.band.extract(conv) / np.sqrt(ratio.product)
    np.testing.assert_allclose(op.prop1_forward(uh), expected, atol=1e-12)
    np.testing.assert_allclose(op.forward(u), expected, atol=1e-12)


@pytest.mark.parametrize("ab", [("1", "1"), ("1/4", "1/2"), ("1/8", "1/8")])
def test_h_h_star_is_scaled_identity(ab, rng):
    ratio = ResolutionRatio.parse(*ab)
    op = MeasurementOperator(random_theta(rng, (16, 16)), ratio)
    y = crandn(rng, op.measurement_shape)
    np.testing.assert_allclose(op.forward(op.adjoint(y)), y / ratio.product, atol=1e-12)


def test_operator_norm_and_dense_eigs(rng):
    ratio = ResolutionRatio.parse("1/4", "1/2")
    op = MeasurementOperator(random_theta(rng, (8, 8)), ratio)
    d = op.dense()
    top = np.linalg.eigvalsh(d.conj().T @ d)[-1]
    assert top == pytest.approx(1 / ratio.product, rel=1e-10)
    assert op.operator_norm() ** 2 == pytest.approx(top, rel=1e-8)


def test_power_iteration_diagonal():
    diag = np.arange(1.0, 17.0).reshape(4, 4)
    lam, its = power_iteration(lambda v: diag * v, (4, 4), max_iter=2000, rtol=1e-14)
    assert lam == pytest.approx(16.0, rel=1e-6)
    assert its <= 2000


def test_identity_band_is_unitary(rng):
    op = MeasurementOperator(random_theta(rng, (16, 8)), ResolutionRatio.parse("1", "1"))
    u = crandn(rng, (16, 8))
    assert np.linalg.norm(op.forward(u)) == pytest.approx(np.linalg.norm(u), rel=1e-13)


def test_sensing_pair_adjoint(rng):
    op = MeasurementOperator(random_theta(rng, (16, 16)), ResolutionRatio.parse("1/2", "1/4"))
    t = SparseTransform("db4")
    x = crandn(rng, (16, 16))
    y = crandn(rng, op.measurement_shape)
    assert np.vdot(y, op.sensing_forward(t, x)) == pytest.approx(np.vdot(op.sensing_adjoint(t, y), x), rel=1e-12)


def test_shape_errors(rng):
    op = MeasurementOperator(random_theta(rng, (8, 8)), ResolutionRatio.parse("1/2", "1"))
    with pytest.raises(DimensionError):
        op.forward(np.zeros((4, 8)))
    with pytest.raises(DimensionError):
        op.adjoint(np.zeros((8, 8)))
    with pytest.raises(RatioError):
        MeasurementOperator(random_theta(rng, (10, 8)), ResolutionRatio.parse("1/4", "1"))
    with pytest.raises(ValueError):
        MeasurementOperator(np.full((8, 8), 2.0), ResolutionRatio.parse("1", "1"))


def test_lowpass_degrade_equals_forward_with_flat_theta(rng):
    z = crandn(rng, (16, 16))
    ratio = ResolutionRatio.parse("1/4", "1")
    op = MeasurementOperator(np.ones((16, 16)), ratio)
    np.testing.assert_allclose(dft2(lowpass_degrade(z, ratio)), op.forward(z), atol=1e-12)
    np.testing.assert_allclose(lowpass_degrade(z, ResolutionRatio.parse("1", "1")), z, atol=1e-13)


def test_degrade_constant_hand_case():
    out = lowpass_degrade(np.ones((4, 4)), ResolutionRatio.parse("1/2", "1/2"))
    np.testing.assert_allclose(out, np.full((2, 2), 4.0), atol=1e-14)


def test_forward_constant_hand_case():
    op = MeasurementOperator(np.ones((4, 4)), ResolutionRatio.parse("1/2", "1/2"))
    y = op.forward(np.ones((4, 4)))
    assert y[0, 0] == pytest.approx(8.0)
    y[0, 0] = 0
    assert np.max(np.abs(y)) < 1e-14


def test_adjoint_flat_full_band_is_idft(rng):
    from ncbinsar.transforms import idft2

    op = MeasurementOperator(np.ones((8, 8)), ResolutionRatio.parse("1", "1"))
    y = crandn(rng, (8, 8))
    np.testing.assert_allclose(op.adjoint(y), idft2(y), atol=1e-15)


def test_sensing_examples(rng):
    ratio = ResolutionRatio.parse("1/4", "1/4")
    op = MeasurementOperator(random_theta(rng, (16, 16)), ratio)
    assert np.all(op.sensing_forward(SparseTransform("dct"), np.zeros((16, 16))) == 0)
    u = crandn(rng, (16, 16))
    np.testing.assert_array_equal(op.sensing_forward(SparseTransform("identity"), u), op.forward(u))
    from test_transforms import synthesis_matrix

    t = SparseTransform("db4")
    a = op.dense() @ synthesis_matrix(t, (16, 16))
    np.testing.assert_allclose(op.sensing_forward(t, u).ravel(), a @ u.ravel(), atol=1e-12)


def test_prop1_flat_theta_is_band_selection(rng):
    ratio = ResolutionRatio.parse("1/2", "1/4")
    op = MeasurementOperator(np.ones((8, 8)), ratio)
    uh = crandn(rng, (8, 8))
    np.testing.assert_allclose(op.prop1_forward(uh), op.band.extract(uh) / np.sqrt(ratio.product), atol=1e-14)


def test_prop1_dense_spectral_form(rng):
    # dense H conjugated by the DFT matrix equals the matrix of prop1_forward
    n = 8
    ratio = ResolutionRatio.parse("1/2", "1/2")
    theta = random_theta(rng, (n, n))
    op = MeasurementOperator(theta, ratio)
    f1 = np.exp(-2j * np.pi * np.outer(np.arange(n), np.arange(n)) / n) / np.sqrt(n)
    f = np.kron(f1, f1)
    cols = []
    e = np.zeros((n, n), complex)
    for j in range(n * n):
        e.flat[j] = 1
        cols.append(op.prop1_forward(e).ravel())
        e.flat[j] = 0
    np.testing.assert_allclose(np.stack(cols, axis=1), op.dense() @ f.conj().T, atol=1e-12)


def test_operator_norm_examples(rng):
    assert MeasurementOperator(random_theta(rng, (8, 8)), ResolutionRatio.parse("1", "1")).operator_norm() == \
        pytest.approx(1.0, abs=1e-6)
    op = MeasurementOperator(random_theta(rng, (16, 16)), ResolutionRatio.parse("1/4", "1/2"))
    assert op.operator_norm() == pytest.approx(np.sqrt(8.0), abs=1e-6)
    op8 = MeasurementOperator(random_theta(rng, (8, 8)), ResolutionRatio.parse("1/4", "1/2"))
    assert op8.operator_norm() == pytest.approx(np.linalg.svd(op8.dense(), compute_uv=False)[0], rel=1e-8)


def test_degrade_spectrum_relation(rng):
    z = crandn(rng, (16, 32))
    ratio = ResolutionRatio.parse("1/4", "1/2")
    band = BandSelector.from_ratio(z.shape, ratio)
    np.testing.assert_allclose(dft2(lowpass_degrade(z, ratio)), band.extract(dft2(z)) / np.sqrt(ratio.product),
                               atol=1e-13)
    assert lowpass_degrade(z, ratio).shape == (4, 16)

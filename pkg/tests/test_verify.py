import itertools
import math

import numpy as np
import pytest

from ncbinsar.errors import ConfigError, SizeError
from ncbinsar.operator import MeasurementOperator
from ncbinsar.verify import (
    VerifyConfig,
    dense_sensing_matrix,
    empirical_ric,
    tail_bound,
    lipschitz_check,
    median_concentration,
    random_phase_screen,
    run_verify,
    theorem1_frontier,
    theorem1_required_ratio,
)


def test_config_validation():
    with pytest.raises(ConfigError):
        VerifyConfig(rows=128, cols=64)
    with pytest.raises(ConfigError):
        VerifyConfig(trials=50)
    with pytest.raises(ConfigError):
        VerifyConfig(k=0)
    with pytest.raises(ConfigError):
        VerifyConfig(delta=1.5)
    with pytest.raises(ConfigError):
        VerifyConfig.from_dict({"bogus": 1})
    assert VerifyConfig.from_dict({"alpha": "1/2", "trials": 200}).ratio.product == 0.125


def test_median_concentration_quarter_band():
    res = median_concentration(VerifyConfig())
    assert 0.98 <= res.median <= 1.02
    assert np.all((res.medians > 0.98) & (res.medians < 1.02))
    # monotone tails
    assert np.all(np.diff(res.tail_freq, axis=1) <= 0)
    assert res.bound_respected()
    np.testing.assert_array_equal(res.tail_at(0.1), res.tail_freq[:, 1])


def test_unitary_band_is_exact():
    res = median_concentration(VerifyConfig(alpha="1", beta="1", trials=100))
    np.testing.assert_allclose(res.norms, 1.0, atol=1e-12)


def test_tail_bound_active_at_half_band():
    # at alpha = beta = 1/2 the bound drops below 1 inside (0, 1), so the check bites
    cfg = VerifyConfig(alpha="1/2", beta="1/2", trials=300)
    res = median_concentration(cfg)
    active = res.bound <= 1.0
    assert np.any(active & (res.deltas < 1.0))
    assert res.bound_respected()


def test_tail_bound_formula():
    assert tail_bound(0.5, 0.25, 0.01) == pytest.approx(4 * math.exp(-0.25 * 0.25 / 0.16))


def test_concentration_is_order_independent():
    cfg = VerifyConfig(trials=120, seed=7)
    a = median_concentration(cfg)
    # trial i must depend only on seed + i
    theta = random_phase_screen(cfg.shape, np.random.default_rng(7 + 119))
    from ncbinsar.verify import sparse_test_vectors

    u = sparse_test_vectors(cfg.shape, cfg.transform, cfg.k, cfg.n_vectors, cfg.seed)[0]
    op = MeasurementOperator(theta, cfg.ratio)
    assert a.norms[0, 119] == np.linalg.norm(op.forward(u))


def test_ric_identity_unitary():
    res = empirical_ric(VerifyConfig(rows=8, cols=8, alpha="1", beta="1", basis="identity", k=3, trials=100))
    assert res.exhaustive
    assert res.delta_k <= 1e-10


def test_ric_k1_matches_column_norms():
    cfg = VerifyConfig(rows=8, cols=8, alpha="1/2", beta="1/2", k=1, trials=100, seed=3)
    theta = random_phase_screen(cfg.shape, np.random.default_rng(3))
    a = dense_sensing_matrix(MeasurementOperator(theta, cfg.ratio), cfg.transform)
    norms2 = [np.linalg.norm(a[:, j]) ** 2 for j in range(a.shape[1])]
    expected = max(abs(n - 1) for n in norms2)
    assert empirical_ric(cfg, theta).delta_k == pytest.approx(expected, rel=1e-10)


def test_ric_matches_svd_oracle_k2():
    cfg = VerifyConfig(rows=4, cols=4, alpha="1/2", beta="1/2", k=2, trials=100, seed=1)
    theta = random_phase_screen(cfg.shape, np.random.default_rng(1))
    a = dense_sensing_matrix(MeasurementOperator(theta, cfg.ratio), cfg.transform)
    worst = 0.0
    for s in itertools.combinations(range(16), 2):
        sv = np.linalg.svd(a[:, s], compute_uv=False)
        worst = max(worst, abs(sv[0] ** 2 - 1), abs(1 - sv[-1] ** 2))
    assert empirical_ric(cfg, theta).delta_k == pytest.approx(worst, rel=1e-10)


def test_ric_nondecreasing_in_k():
    theta = random_phase_screen((8, 8), np.random.default_rng(0))
    vals = [empirical_ric(VerifyConfig(rows=8, cols=8, alpha="1/2", beta="1/2", k=k, trials=100), theta).delta_k
            for k in (1, 2, 3)]
    assert vals[0] <= vals[1] + 1e-12 <= vals[2] + 2e-12


def test_ric_sampled_is_labeled_lower_bound():
    res = empirical_ric(VerifyConfig(rows=16, cols=16, alpha="1/2", beta="1/2", k=2, trials=100))
    assert not res.exhaustive
    assert res.supports_checked == 10_000


def test_ric_nondegenerate_on_seeded_instances():
    for seed in range(20):
        res = empirical_ric(VerifyConfig(alpha="1/2", beta="1/2", k=2, seed=seed, trials=100))
        assert res.delta_k < 1.0


def test_dense_size_cap():
    op = MeasurementOperator(np.ones((128, 64)), VerifyConfig().ratio)
    with pytest.raises(SizeError):
        dense_sensing_matrix(op, VerifyConfig().transform)


@pytest.mark.parametrize("alpha,beta", [("1", "1"), ("1/2", "1/2"), ("1/4", "1/4"), ("1/8", "1/8")])
def test_lipschitz(alpha, beta):
    cfg = VerifyConfig(alpha=alpha, beta=beta)
    ab = cfg.ratio.product
    assert lipschitz_check(cfg) == pytest.approx(2 / ab, rel=1e-5)


def test_lipschitz_dense_cross_check():
    cfg = VerifyConfig(rows=8, cols=8, alpha="1/4", beta="1/2", trials=100)
    theta = random_phase_screen(cfg.shape, np.random.default_rng(cfg.seed))
    d = MeasurementOperator(theta, cfg.ratio).dense()
    assert lipschitz_check(cfg) == pytest.approx(2 * np.linalg.eigvalsh(d.conj().T @ d)[-1], rel=1e-8)


def test_theorem1_spot_value():
    # K = 1024, k = 4, delta = 0.5, eta = 0.1, ||W||^2 = 0.01
    bracket = 4 * math.log(math.e * 1024 / 4) + 4 * math.log(72) + math.log(40)
    assert bracket == pytest.approx(46.9763, abs=1e-4)
    assert theorem1_required_ratio(1024, 4, 0.5, 0.1, 0.01) == pytest.approx(576 * 0.01 / 0.25 * bracket)


def test_theorem1_monotone_and_linear():
    base = theorem1_required_ratio(1024, 2, 0.5, 0.1, 0.01)
    assert theorem1_required_ratio(1024, 3, 0.5, 0.1, 0.01) > base
    assert theorem1_required_ratio(1024, 2, 0.5, 0.1, 0.02) == pytest.approx(2 * base)
    f = theorem1_frontier(VerifyConfig(trials=100))
    assert f["configured_alpha_beta"] == 0.0625
    assert f["required_alpha_beta"] > 1.0   # the bound is loose at desk scale


def test_run_verify_report_shape():
    report = run_verify(VerifyConfig(trials=200))
    names = [c["check"] for c in report]
    assert "convolution_form_equivalence" in names and "lipschitz_constant" in names
    for c in report:
        assert set(c) == {"check", "measured", "expected", "tolerance", "pass"}
        assert c["pass"]

"""Smoke tests for the adpssl python module (built by CMake or pip)."""

import json

import numpy as np
import pytest

import adpssl


@pytest.fixture(scope="module")
def blobs():
    features, truth = adpssl.make_synthetic("blobs", 60, 3, noise=0.8, seed=1)
    return np.asarray(features), list(truth)


def test_graph_construction(blobs):
    features, _ = blobs
    graph = adpssl.build_knn_gaussian(features, k=5, k_sigma=7)
    w = np.asarray(graph.w)
    assert w.shape == (60, 60)
    assert np.array_equal(w, w.T)
    assert (w >= 0).all()
    assert np.all(np.diag(w) == 0)

    s = adpssl.symmetric_normalize(graph.w)
    eigs = np.linalg.eigvalsh(np.asarray(s.s))
    assert abs(eigs).max() <= 1 + 1e-8


def test_adp_classifies_blobs(blobs):
    features, truth = blobs
    graph = adpssl.build_knn_gaussian(features, k=5, k_sigma=7)
    y = adpssl.sample_labels(truth, 1, 0)
    cfg = adpssl.AdpConfig(alpha=0.9, beta=1e-2)
    res = adpssl.adp(graph, y, cfg)
    assert res.converged
    predictions = adpssl.predict(res.f)
    unlabeled = [i for i in range(60) if i not in set(y.labeled)]
    acc = adpssl.accuracy(predictions, truth, unlabeled)
    assert acc >= 0.9
    assert np.asarray(res.a.a).min() >= 0


def test_lgc_scale_relation(blobs):
    features, _ = blobs
    graph = adpssl.build_knn_gaussian(features, k=5, k_sigma=7)
    s = adpssl.symmetric_normalize(graph.w)
    y = adpssl.one_hot([0] + [adpssl.UNLABELED] * 58 + [1], 2)
    it = adpssl.lgc_iterate(s, y, 0.9, inner_tol=1e-12, max_iter=20000)
    cf = adpssl.lgc_closed_form(s, y, 0.9)
    np.testing.assert_allclose(np.asarray(it.f), 0.1 * np.asarray(cf.f), atol=1e-9)
    assert adpssl.predict(it) == adpssl.predict(cf)


def test_oracle_check():
    passed, max_gap = adpssl.oracle_check(max_n=5, cases=6, seed=2)
    assert passed
    assert max_gap <= 1e-6


def test_diffusion_fixed_point_scalar():
    s = adpssl.symmetric_normalize(np.ones((1, 1)))
    z = adpssl.label_similarity(np.ones((1, 1)))
    out = adpssl.diffuse_to_convergence(s, z, adpssl.DiffusionParams(0.5, 1e-12, 100))
    assert out.converged
    assert np.asarray(out.a)[0, 0] == pytest.approx(2.0, abs=1e-10)


def test_run_trials_reports_json(blobs):
    features, truth = blobs
    body = adpssl.run_trials(features, truth, "lgc", delta=1, trials=2, seed=3,
                             k=5, k_sigma=7)
    report = json.loads(body)
    assert report["format_version"] == 1
    assert len(report["trials"]) == 2
    assert 0.0 <= report["mean_accuracy"] <= 1.0
    again = adpssl.run_trials(features, truth, "lgc", delta=1, trials=2, seed=3,
                              k=5, k_sigma=7)
    assert body == again


def test_validation_errors_become_value_errors():
    with pytest.raises(ValueError):
        adpssl.one_hot([5], 2)
    with pytest.raises(ValueError):
        adpssl.build_knn_gaussian(np.zeros((3, 2)), k=5, k_sigma=2)

import json
import math

import numpy as np
import pytest

import _weylab as w


def test_grid_and_symbol_roundtrip():
    g = w.PhaseGrid(1, 8.0, 64)
    assert g.spacing() == pytest.approx(0.25)
    a = w.random_band_limited(g, 7)
    vals = a.values
    assert vals.shape == (64, 64)
    b = w.symbol_from_values(g, vals)
    assert np.array_equal(b.values, vals)


def test_hs_identity_and_schatten():
    g = w.PhaseGrid(1, 8.0, 64)
    a = w.random_band_limited(g, 1)
    assert w.hs_identity_gap(a) < 1e-10
    k = w.build_kernel(a, 0.5)
    s2 = w.schatten_norm(k, 2.0)
    ref = w.lp_norm(a, 2.0) / math.sqrt(2.0 * math.pi)
    assert s2 == pytest.approx(ref, rel=1e-10)
    sv = w.singular_values(k)
    assert sorted(sv, reverse=True) == sv


def test_gaussian_projector_spectrum():
    g = w.PhaseGrid(1, 8.0, 128)
    k = w.build_kernel(w.gaussian_symbol(g), 0.5)
    sv = w.singular_values(k)
    assert sv[0] == pytest.approx(1.0, abs=1e-2)
    assert sv[1] < 1e-2


def test_convert_quantization_invariance():
    g = w.PhaseGrid(1, 8.0, 64)
    a = w.random_band_limited(g, 3)
    s_ref = w.schatten_norm(w.build_kernel(a, 0.5), 2.0)
    for t in (0.0, 1.0):
        b = w.convert_quantization(a, 0.5, t)
        assert w.schatten_norm(w.build_kernel(b, t), 2.0) == pytest.approx(
            s_ref, rel=1e-9
        )


def test_class_helpers():
    spec = w.ClassSpec(0.0, 0.0, [1.0, 1.0], [0.0, 0.0])
    h = w.class_planck(spec, [3.0, 4.0])
    assert h == pytest.approx((1 + 9.0) ** -0.5 * (1 + 16.0) ** -0.5)
    assert w.kappa(1.0, 1) == 3
    assert w.kappa_prime(1.0, 1) == 2
    assert w.n_p(1.0, 1) == 1
    with pytest.raises(ValueError):
        w.ClassSpec(0.0, 0.0, [2.0, 1.0], [0.0, 0.0])


def test_bspline_and_modulation():
    assert w.bspline_eval(2, 1.0) == pytest.approx(1.0)
    g = w.PhaseGrid(1, 6.0, 32)
    a = w.random_band_limited(g, 5)
    win = w.gaussian_window(g)
    assert w.modulation_norm(a, 2.0, win) == pytest.approx(
        w.lp_norm(a, 2.0), rel=1e-9
    )


def test_run_suite_json():
    names = [name for name, _ in w.suite_catalog()]
    assert "hs-identity" in names
    out = json.loads(w.run_suite(json.dumps({"suite": "thresholds"})))
    assert out["passed"] is True
    with pytest.raises(Exception):
        w.run_suite(json.dumps({"suite": "bogus"}))

import numpy as np
import pytest

import vmafc


def texture(w, h, seed):
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:h, 0:w]
    base = 128 + 50 * np.sin(xx / 3.0 + seed) * np.cos(yy / 5.0)
    return np.clip(base + rng.integers(-8, 9, size=(h, w)), 0, 255).astype(np.uint8)


def frame(w, h, seed):
    return vmafc.Frame(texture(w, h, seed), texture(w // 2, h // 2, seed + 1),
                       texture(w // 2, h // 2, seed + 2))


def test_plane_metrics_identity():
    p = texture(64, 64, 3)
    assert vmafc.psnr(p, p) == 60.0
    assert vmafc.ssim(p, p) == pytest.approx(1.0, abs=1e-12)
    scales, overall = vmafc.vif(p, p)
    assert len(scales) == 4
    assert overall == pytest.approx(1.0, abs=1e-9)
    assert vmafc.adm(p, p)[1] == pytest.approx(1.0, abs=1e-12)


def test_geometry_errors_map_to_exception_hierarchy():
    with pytest.raises(vmafc.InputError):
        vmafc.psnr(texture(64, 64, 1), texture(32, 32, 1))
    assert issubclass(vmafc.GeometryError, vmafc.InputError)
    assert issubclass(vmafc.InputError, vmafc.Error)


def test_degrade_chroma_step_256_is_achromatic():
    f = vmafc.degrade_chroma_frame(frame(32, 32, 5), 256)
    assert (f.cb == 128).all() and (f.cr == 128).all()


def test_features_train_predict():
    ref = vmafc.Sequence([frame(64, 64, s) for s in range(2)])
    feats = vmafc.extract_features(ref, ref)
    pooled = vmafc.pool_features(feats)
    assert pooled["adm"] == pytest.approx(1.0, abs=1e-12)
    names = sorted(pooled)
    rng = np.random.default_rng(0)
    rows = rng.random((30, len(names))).tolist()
    targets = [20 + 60 * r[0] for r in rows]
    model = vmafc.train(names, rows, targets)
    assert model.n_support > 0
    assert 0.0 <= vmafc.predict_features(model, pooled) <= 100.0
    again = vmafc.Model.from_json(model.to_json())
    assert vmafc.predict(again, names, rows[0]) == vmafc.predict(model, names, rows[0])


def test_eval_and_rd_tools():
    x = [1.0, 2.0, 3.0, 4.0, 5.0]
    assert vmafc.srocc(x, x) == 1.0
    assert vmafc.plcc(x, [2 * v + 1 for v in x]) == pytest.approx(1.0, abs=1e-9)
    assert vmafc.chroma_qp(35) == (33, 33)
    curve = [(1000, 30), (2000, 34), (4000, 38), (8000, 41)]
    assert vmafc.bd_rate(curve, curve) == pytest.approx(0.0, abs=1e-9)
    assert vmafc.monotonicity_violations([[90, 85], [80, 70]]) == []

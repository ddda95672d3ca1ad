import math

import numpy as np
import pytest

import rocktex as rt


def random_image(seed, h=32, w=32):
    return np.random.default_rng(seed).integers(0, 256, size=(h, w, 3), dtype=np.uint8)


def test_hsv_reference_pixels():
    img = np.array([[[255, 0, 0], [128, 128, 128], [0, 0, 255]]] * 3, dtype=np.uint8)
    hsv = rt.rgb_to_hsv(img)
    assert hsv[0, 0].tolist() == [0, 255, 255]
    assert hsv[0, 1].tolist() == [0, 0, 128]
    assert hsv[0, 2].tolist() == [170, 255, 255]


def test_lbp_constant_plane_and_variants():
    codes = rt.lbp_map(np.full((5, 6), 3.0))
    assert codes.shape == (3, 4)
    assert (codes == 255).all()
    assert rt.bin_count(variant="ri") == 36
    assert rt.bin_count(variant="riu2") == 10
    with pytest.raises(rt.RocktexError):
        rt.lbp_map(np.zeros((5, 5)), variant="nope")


def test_descriptors_are_normalized():
    img = random_image(1)
    for vec, size in [
        (rt.rgb_histogram(img), 768),
        (rt.lbp_descriptor(img), 256),
        (rt.albpcsf(img), 768),
        (rt.g_albpcsf(img, wavelength=8.0, theta=45.0), 768),
        (rt.d_albpcsf(img, k=16), 768),
    ]:
        assert vec.shape == (size,)
        assert (vec >= 0).all()
        assert abs(vec.sum() - 1.0) < 1e-9


def test_dct_round_trip_and_constant():
    rng = np.random.default_rng(2)
    p = rng.uniform(0, 255, size=(12, 9))
    c = rt.dct2(p)
    assert np.allclose(rt.idct2(c), p, atol=1e-9)
    assert math.isclose((c**2).sum(), (p**2).sum(), rel_tol=1e-9)
    ones = rt.dct2(np.ones((2, 2)))
    assert math.isclose(ones[0, 0], 2.0)
    low = rt.lowpass(c, 1)
    assert np.allclose(rt.idct2(low), p.mean())


def test_gabor_bank_and_dc():
    assert rt.gabor_bank_size() == 40
    k = rt.gabor_kernel(0, 0)
    assert abs(k.sum()) < 1e-6 * abs(k).max()
    amp, phase = rt.gabor_filter(np.full((32, 32), 100.0), 2, 1)
    assert amp.max() < 1e-6 * 100.0 * abs(rt.gabor_kernel(2, 1)).sum()
    assert phase.shape == (32, 32)


def test_distances_worked_values():
    assert rt.hist_intersection([0.5, 0.5], [0.25, 0.75]) == 0.25
    assert math.isclose(rt.chi_square([0.5, 0.5], [0.25, 0.75]), 2.0 / 15.0, rel_tol=1e-15)
    with pytest.raises(rt.RocktexError):
        rt.hist_intersection([0.5, 0.6], [0.5, 0.5])


def test_reference_confusion_metrics():
    cm = np.array(
        [
            [4, 0, 0, 0, 1, 0, 0, 0],
            [0, 5, 0, 0, 0, 0, 0, 0],
            [0, 0, 5, 0, 0, 0, 0, 0],
            [0, 0, 0, 5, 0, 0, 0, 0],
            [0, 0, 0, 0, 5, 0, 0, 0],
            [1, 1, 0, 0, 0, 2, 0, 1],
            [0, 0, 0, 0, 0, 0, 4, 1],
            [1, 0, 0, 0, 2, 0, 0, 2],
        ]
    )
    assert rt.binary_tallies(cm) == {"vp": 32, "fp": 8, "vn": 272, "fn": 8}
    m = rt.metrics(cm)
    assert math.isclose(m["sensitivity"], 0.8)
    assert math.isclose(m["accuracy"], 0.95)
    granite = rt.per_class_report(cm)[1]
    assert math.isclose(granite["accuracy"], 0.975)
    assert rt.metrics(np.zeros((2, 2)))["accuracy"] is None


def test_classification_of_synthetic_images():
    descs, labels = [], []
    for cls in range(3):
        for i in range(3):
            img = rt.synth_image(5, cls, i, classes=3, per_class=3, size=64)
            descs.append(rt.d_albpcsf(img, k=16))
            labels.append(cls)
    cm = rt.confusion(descs, labels, metric="hi")
    assert cm.shape == (3, 3)
    assert cm.sum() == 9
    assert np.array_equal(cm.sum(axis=1), [3, 3, 3])


def test_png_round_trip(tmp_path):
    img = random_image(3, 7, 5)
    rt.write_png(tmp_path / "x.png", img)
    assert np.array_equal(rt.read_image(tmp_path / "x.png"), img)
    with pytest.raises(rt.RocktexError):
        rt.read_image(tmp_path / "missing.png")

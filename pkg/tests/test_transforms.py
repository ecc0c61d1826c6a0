"""Mode-3 DFT pair and orthonormal 3-D DCT pair, checked against explicit
transform-matrix oracles built independently of any FFT library."""

import numpy as np
import pytest

from srtd.errors import DimensionError, SpectralConsistencyError
from srtd.tensor_core import fro_norm, inner_product
from srtd.transforms import dct3, dft_mode3, idct3, idft_mode3


def _dft_matrix(n):
    k = np.arange(n)
    return np.exp(-2j * np.pi * np.outer(k, k) / n)


def _dct_matrix(n):
    # orthonormal DCT-II: C[k, j] = s_k * cos(pi * (2j+1) * k / (2n))
    k = np.arange(n)[:, None]
    j = np.arange(n)[None, :]
    c = np.cos(np.pi * (2 * j + 1) * k / (2 * n))
    c[0, :] *= np.sqrt(1.0 / n)
    c[1:, :] *= np.sqrt(2.0 / n)
    return c


def test_dft_single_slice_is_identity():
    rng = np.random.default_rng(0)
    a = rng.standard_normal((3, 4, 1))
    s = dft_mode3(a)
    assert s.dtype == np.complex128
    assert np.array_equal(s.real, a)
    assert np.all(s.imag == 0.0)


def test_dft_constant_tube():
    a = np.array([1.0, 1.0]).reshape(1, 1, 2)
    s = dft_mode3(a)
    assert np.allclose(s.ravel(), [2.0, 0.0], atol=1e-14)


def test_dft_impulse_tube():
    a = np.zeros((1, 1, 4))
    a[0, 0, 0] = 1.0
    assert np.allclose(dft_mode3(a).ravel(), np.ones(4), atol=1e-14)


def test_dft_matches_matrix_oracle():
    rng = np.random.default_rng(1)
    for n3 in (2, 3, 5):
        a = rng.standard_normal((3, 2, n3))
        oracle = a @ _dft_matrix(n3).T  # contract mode 3 against the DFT matrix
        assert np.allclose(dft_mode3(a), oracle, atol=1e-12)


def test_dft_conjugate_symmetry():
    rng = np.random.default_rng(2)
    for n3 in (2, 3, 4, 7):
        s = dft_mode3(rng.standard_normal((4, 3, n3)))
        for i in range(1, n3):
            assert np.abs(s[:, :, i] - np.conj(s[:, :, n3 - i])).max() <= 1e-12


def test_idft_roundtrip():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((3, 3, 5))
    assert np.abs(idft_mode3(dft_mode3(a)) - a).max() <= 1e-12


def test_idft_known_tube():
    s = np.array([2.0 + 0j, 0.0 + 0j]).reshape(1, 1, 2)
    assert np.allclose(idft_mode3(s), np.ones((1, 1, 2)), atol=1e-14)


def test_idft_zero_spectrum():
    assert np.array_equal(idft_mode3(np.zeros((2, 2, 3), dtype=complex)), np.zeros((2, 2, 3)))


def test_idft_rejects_inconsistent_spectrum():
    # spectrum of a real tensor must be conjugate-symmetric; this one is not
    s = np.zeros((1, 1, 2), dtype=complex)
    s[0, 0, 1] = 1j
    with pytest.raises(SpectralConsistencyError):
        idft_mode3(s)


def test_idft_rejects_non_third_order():
    with pytest.raises(DimensionError):
        idft_mode3(np.zeros((3, 3), dtype=complex))


def test_dct_constant_tensor_has_single_dc_coefficient():
    c = 2.5
    out = dct3(np.full((4, 4, 4), c))
    assert out[0, 0, 0] == pytest.approx(c * 8.0, rel=1e-12)
    rest = out.copy()
    rest[0, 0, 0] = 0.0
    assert np.abs(rest).max() <= 1e-12


def test_dct_scalar_identity():
    assert dct3(np.full((1, 1, 1), 3.7))[0, 0, 0] == pytest.approx(3.7, rel=1e-14)


def test_idct_of_dc_coefficient_is_constant():
    e = np.zeros((4, 4, 4))
    e[0, 0, 0] = 8.0
    assert np.abs(idct3(e) - 1.0).max() <= 1e-12


def test_dct_matches_separable_matrix_oracle():
    rng = np.random.default_rng(4)
    a = rng.standard_normal((3, 4, 5))
    c1, c2, c3 = _dct_matrix(3), _dct_matrix(4), _dct_matrix(5)
    for c in (c1, c2, c3):  # oracle matrices really are orthogonal
        assert np.abs(c @ c.T - np.eye(c.shape[0])).max() <= 1e-12
    oracle = np.einsum("ip,jq,kr,pqr->ijk", c1, c2, c3, a)
    assert np.abs(dct3(a) - oracle).max() <= 1e-12


def test_dct_parseval():
    rng = np.random.default_rng(5)
    for _ in range(100):
        a = rng.standard_normal(tuple(rng.integers(1, 7, size=3)))
        n = fro_norm(a)
        assert abs(fro_norm(dct3(a)) - n) <= 1e-10 * max(n, 1.0)


def test_dct_preserves_inner_products():
    rng = np.random.default_rng(6)
    a = rng.standard_normal((4, 5, 3))
    b = rng.standard_normal((4, 5, 3))
    assert inner_product(dct3(a), dct3(b)) == pytest.approx(inner_product(a, b), rel=1e-10)


def test_dct_linearity():
    rng = np.random.default_rng(7)
    a = rng.standard_normal((3, 4, 2))
    b = rng.standard_normal((3, 4, 2))
    lhs = dct3(1.7 * a - 0.4 * b)
    rhs = 1.7 * dct3(a) - 0.4 * dct3(b)
    assert np.abs(lhs - rhs).max() <= 1e-10


def test_dct_roundtrips_both_ways():
    rng = np.random.default_rng(8)
    a = rng.standard_normal((4, 5, 6))
    assert np.abs(idct3(dct3(a)) - a).max() <= 1e-10
    e = rng.standard_normal((4, 5, 6))
    assert np.abs(dct3(idct3(e)) - e).max() <= 1e-10


def test_dct_rejects_non_third_order():
    with pytest.raises(DimensionError):
        dct3(np.zeros((4, 4)))

"""t-product algebra: tensor-tensor product, T-SVD, tubal rank, nuclear norms
and the tensor singular value thresholding operator.

Everything is computed in the mode-3 Fourier domain: a t-product is a
matrix product per frequency slice, and the T-SVD is a complex SVD per
frequency slice. Real input has a conjugate-symmetric spectrum, so only the
first ``n3 // 2 + 1`` slices are ever touched (rfft/irfft); results are
identical to the full-spectrum route up to rounding.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DimensionError, ParameterError
from .tensor_core import Tensor3, astensor3, ttrace

_SV_ATOL = 1e-9  # orthonormality slack accepted by trace_bound_check preconditions


class TSvdFactors(NamedTuple):
    """T-SVD triple: ``u`` (n1,n1,n3) and ``v`` (n2,n2,n3) orthogonal,
    ``s`` (n1,n2,n3) f-diagonal with non-increasing spectral singular values."""

    u: Tensor3
    s: Tensor3
    v: Tensor3


def _spectral_stack(a: Tensor3) -> np.ndarray:
    """rfft along mode 3, frequency-major stack of frontal slices."""
    return np.moveaxis(np.fft.rfft(a, axis=2), 2, 0)


def _from_spectral_stack(stack: np.ndarray, n3: int) -> Tensor3:
    return np.fft.irfft(np.moveaxis(stack, 0, 2), n=n3, axis=2)


def tproduct(a: Tensor3, b: Tensor3) -> Tensor3:
    """Tensor-tensor product of (n1,n2,n3) by (n2,n4,n3) -> (n1,n4,n3)."""
    a = astensor3(a, "a")
    b = astensor3(b, "b")
    if a.shape[1] != b.shape[0] or a.shape[2] != b.shape[2]:
        raise DimensionError(f"tproduct needs (n1,n2,n3) by (n2,n4,n3), got {a.shape} and {b.shape}")
    fc = _spectral_stack(a) @ _spectral_stack(b)
    return _from_spectral_stack(fc, a.shape[2])


def tsvd(a: Tensor3) -> TSvdFactors:
    """Factor ``a`` as u * s * ttranspose(v) via per-frequency complex SVDs."""
    a = astensor3(a)
    n1, n2, n3 = a.shape
    fa = _spectral_stack(a)
    fu, sv, fvh = np.linalg.svd(fa, full_matrices=True)
    # Zero-frequency (and Nyquist, for even n3) slices are exactly real, but
    # a complex SVD may attach unit phases to their factors. Redo those few
    # slices in real arithmetic so u, s, v reassemble without imaginary dust.
    real_slices = [0] + ([fa.shape[0] - 1] if n3 % 2 == 0 else [])
    for i in real_slices:
        fu[i], sv[i], fvh[i] = np.linalg.svd(fa[i].real, full_matrices=True)
    fs = np.zeros(fa.shape, dtype=np.complex128)
    k = np.arange(min(n1, n2))
    fs[:, k, k] = sv
    return TSvdFactors(
        u=_from_spectral_stack(fu, n3),
        s=_from_spectral_stack(fs, n3),
        v=_from_spectral_stack(np.conjugate(np.swapaxes(fvh, -2, -1)), n3),
    )


def tubal_rank(a: Tensor3, tol: float = 1e-8) -> int:
    """Largest count, over frequency slices, of singular values above
    ``tol`` times the globally largest singular value."""
    a = astensor3(a)
    if tol < 0:
        raise ParameterError(f"tol must be >= 0, got {tol}")
    sv = np.linalg.svd(_spectral_stack(a), compute_uv=False)
    top = sv.max(initial=0.0)
    if top == 0.0:
        return 0
    return int((sv > tol * top).sum(axis=1).max())


def tnn(a: Tensor3) -> float:
    """Tensor nuclear norm, fast path: nuclear norm of the zero-frequency
    slice (which for a real tensor is just the sum of the frontal slices)."""
    a = astensor3(a)
    return float(np.linalg.svd(a.sum(axis=2), compute_uv=False).sum())


def tnn_via_tsvd(a: Tensor3) -> float:
    """Tensor nuclear norm, slow path: trace of the T-SVD core summed over
    its frontal slices. Kept as an independent oracle for :func:`tnn`."""
    s = tsvd(a).s
    return float(np.trace(s, axis1=0, axis2=1).sum())


def trace_pair(a: Tensor3, b: Tensor3) -> float:
    """Trace of the t-product a * b, evaluated in the Fourier domain as
    Re(tr(A(0) B(0))) with the zero-frequency slices."""
    a = astensor3(a, "a")
    b = astensor3(b, "b")
    if a.shape[1] != b.shape[0] or a.shape[2] != b.shape[2]:
        raise DimensionError(f"tproduct needs (n1,n2,n3) by (n2,n4,n3), got {a.shape} and {b.shape}")
    if b.shape[1] != a.shape[0]:
        raise DimensionError(f"trace needs square product slices, got {a.shape} by {b.shape}")
    return float(np.sum(a.sum(axis=2) * b.sum(axis=2).T))


def ttnn(a: Tensor3, r: int) -> float:
    """Truncated tensor nuclear norm: singular values of the zero-frequency
    slice beyond the first ``r``."""
    a = astensor3(a)
    kmax = min(a.shape[0], a.shape[1])
    if not 0 <= r <= kmax:
        raise ParameterError(f"truncation r must lie in [0, {kmax}], got {r}")
    sv = np.linalg.svd(a.sum(axis=2), compute_uv=False)
    return float(sv[r:].sum())


def svt(x: Tensor3, tau: float) -> Tensor3:
    """Tensor singular value thresholding: shrink every spectral singular
    value by ``tau`` (floored at zero) and reassemble.

    This is the proximal operator of ``tau * tnn``.
    """
    x = astensor3(x)
    if tau < 0:
        raise ParameterError(f"tau must be >= 0, got {tau}")
    fx = _spectral_stack(x)
    fu, sv, fvh = np.linalg.svd(fx, full_matrices=False)
    sv = np.maximum(sv - tau, 0.0)
    return _from_spectral_stack((fu * sv[:, None, :]) @ fvh, x.shape[2])


def trace_bound_check(x: np.ndarray, a: np.ndarray, b: np.ndarray) -> bool:
    """Whether tr(a x b^T) <= sum of the r largest singular values of x
    (plus 1e-8 slack), for row-orthonormal a (r x m) and b (r x n).

    Test-support only; raises :class:`ParameterError` when a or b is not
    row-orthonormal to 1e-9.
    """
    x = np.asarray(x, dtype=np.float64)
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if x.ndim != 2 or a.ndim != 2 or b.ndim != 2:
        raise DimensionError("trace_bound_check operates on matrices")
    r = a.shape[0]
    if b.shape[0] != r or a.shape[1] != x.shape[0] or b.shape[1] != x.shape[1]:
        raise DimensionError(
            f"shape mismatch: x {x.shape} needs a (r,{x.shape[0]}) and b (r,{x.shape[1]}), "
            f"got {a.shape} and {b.shape}"
        )
    for name, m in (("a", a), ("b", b)):
        if r and np.abs(m @ m.T - np.eye(r)).max() > _SV_ATOL:
            raise ParameterError(f"{name} is not row-orthonormal to {_SV_ATOL:.0e}")
    lhs = float(np.trace(a @ x @ b.T))
    sv = np.linalg.svd(x, compute_uv=False)
    return lhs <= float(sv[:r].sum()) + 1e-8

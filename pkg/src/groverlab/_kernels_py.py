"""NumPy implementations of the hot kernels.

Every function mutates its first argument in place and returns it.  Arrays
are complex128, either a single state of shape (N,) or a batch of states
stored as the columns of a C-contiguous (N, K) matrix.  The compiled
extension in ``_kernels_c.pyx`` implements the same contract; ``backend``
picks whichever is available.
"""

import threading

import numpy as np

BACKEND = "python"

_local = threading.local()


def _scratch(count: int) -> np.ndarray:
    buf = getattr(_local, "buf", None)
    if buf is None or buf.size < count:
        buf = np.empty(count, dtype=np.complex128)
        _local.buf = buf
    return buf


def hadamard_all(a):
    """Normalized Walsh-Hadamard butterfly along axis 0, in place.

    Runs radix-4 stages (two butterfly levels fused) over a reusable
    half-size scratch buffer; the arithmetic groups sums exactly like
    sequential radix-2 passes, so both backends agree bit for bit.
    """
    n_dim = a.shape[0]
    a2 = a.reshape(n_dim, -1)
    k = a2.shape[1]
    quarter = n_dim // 4 * k
    tmp = _scratch(max(2 * quarter, n_dim // 2 * k))
    h = 1
    while h * 4 <= n_dim:
        v = a2.reshape(-1, 2, 2, h, k)
        va, vb, vc, vd = v[:, 0, 0], v[:, 0, 1], v[:, 1, 0], v[:, 1, 1]
        t1 = tmp[:quarter].reshape(va.shape)
        t2 = tmp[quarter:2 * quarter].reshape(va.shape)
        np.add(va, vb, out=t1)
        np.subtract(va, vb, out=t2)
        np.subtract(vc, vd, out=vb)   # c - d
        np.add(vc, vd, out=vd)        # c + d
        np.add(t1, vd, out=va)
        np.subtract(t1, vd, out=vc)
        np.subtract(t2, vb, out=vd)
        np.add(t2, vb, out=vb)
        h *= 4
    if h < n_dim:  # one radix-2 stage left when the qubit count is odd
        v = a2.reshape(-1, 2, h, k)
        top, bot = v[:, 0], v[:, 1]
        t = tmp[:n_dim // 2 * k].reshape(top.shape)
        np.subtract(top, bot, out=t)
        np.add(top, bot, out=top)
        np.copyto(bot, t)
    a2 *= 1.0 / np.sqrt(n_dim)
    return a


def phase_rows(a, rows, phase):
    """Multiply the given rows by a scalar phase, in place."""
    a2 = a.reshape(a.shape[0], -1)
    a2[rows, :] *= phase
    return a


def reflect(a, axis, factor):
    """Rank-one update a += factor * axis (axis^dag a), in place.

    With factor = e^{i beta} - 1 this is the selective phase rotation of
    the component along ``axis``.
    """
    a2 = a.reshape(a.shape[0], -1)
    coef = axis.conj() @ a2
    coef *= factor
    tmp = _scratch(a2.size)[:a2.size].reshape(a2.shape)
    np.multiply(axis[:, None], coef[None, :], out=tmp)
    a2 += tmp
    return a


def scale(a, c):
    """Multiply the whole array by a scalar, in place."""
    a *= c
    return a


def marked_prob(a, rows):
    """Per-column probability mass on the given rows; returns shape (K,)."""
    a2 = a.reshape(a.shape[0], -1)
    sub = a2[rows, :]
    return np.einsum("ij,ij->j", sub.real, sub.real) + np.einsum(
        "ij,ij->j", sub.imag, sub.imag
    )

"""Pure numpy versions of the compiled kernels in ``_kernels.pyx``."""

import numpy as np


def _blocks(v, b):
    n = v.shape[0] // b
    if v.ndim == 1:
        return v.reshape(n, b)
    return v.reshape(n, b, n, b).transpose(0, 2, 1, 3).reshape(n, n, b * b)


def block_means(v, b):
    """Mean over each cell of side ``b`` samples."""
    v = np.asarray(v, dtype=complex)
    return _blocks(v, b).mean(axis=-1)


def block_oscillation(v, b, r):
    """``(mean |v - mean|^r)^{1/r}`` over each cell of side ``b`` samples."""
    v = np.asarray(v, dtype=complex)
    blk = _blocks(v, b)
    dev = np.abs(blk - blk.mean(axis=-1, keepdims=True))
    if r == 1:
        return dev.mean(axis=-1)
    if r == 2:
        return np.sqrt((dev * dev).mean(axis=-1))
    return ((dev**r).mean(axis=-1)) ** (1.0 / r)


_S = np.sqrt(0.5)


def haar_analysis(v):
    """Orthonormal Haar coefficients of a length ``2^J`` vector.

    Layout: ``out[0]`` is the scaling coefficient, ``out[2^l + k]`` the detail
    of cell ``k`` at level ``l`` (level 0 is the whole vector).
    """
    a = np.asarray(v, dtype=complex).copy()
    n = a.size
    out = np.empty(n, dtype=complex)
    while n > 1:
        even, odd = a[0:n:2], a[1:n:2]
        out[n // 2:n] = (even - odd) * _S
        a[: n // 2] = (even + odd) * _S
        n //= 2
    out[0] = a[0]
    return out


def haar_synthesis(c):
    c = np.asarray(c, dtype=complex)
    a = c[:1].copy()
    n = 1
    while n < c.size:
        d = c[n:2 * n]
        nxt = np.empty(2 * n, dtype=complex)
        nxt[0::2] = (a + d) * _S
        nxt[1::2] = (a - d) * _S
        a = nxt
        n *= 2
    return a

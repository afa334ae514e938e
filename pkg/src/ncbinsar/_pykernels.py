"""Pure numpy versions of the hot kernels.

Same signatures and semantics as the compiled ``_ckernels`` module; used
when the extension is not built or ``NCBINSAR_PURE_PYTHON`` is set.
"""

import numpy as np

SQRT3 = np.sqrt(3.0)
DB4_LO = np.array([1 + SQRT3, 3 + SQRT3, 3 - SQRT3, 1 - SQRT3]) / (4 * np.sqrt(2.0))
DB4_HI = np.array([DB4_LO[3], -DB4_LO[2], DB4_LO[1], -DB4_LO[0]])


def soft_threshold(v, kappa):
    v = np.asarray(v, dtype=np.complex128)
    mag = np.abs(v)
    keep = mag > kappa
    scale = np.zeros(v.shape)
    scale[keep] = (mag[keep] - kappa) / mag[keep]
    return v * scale


def db4_analyze_rows(x):
    """One periodic DB-4 analysis step along axis 1: ``[approx | detail]``."""
    x = np.asarray(x, dtype=np.float64)
    h, g = DB4_LO, DB4_HI
    xe = x[:, 0::2]
    xo = x[:, 1::2]
    xe1 = np.roll(xe, -1, axis=1)
    xo1 = np.roll(xo, -1, axis=1)
    a = h[0] * xe + h[1] * xo + h[2] * xe1 + h[3] * xo1
    d = g[0] * xe + g[1] * xo + g[2] * xe1 + g[3] * xo1
    return np.concatenate([a, d], axis=1)


def db4_synthesize_rows(c):
    """Inverse of :func:`db4_analyze_rows`."""
    c = np.asarray(c, dtype=np.float64)
    h, g = DB4_LO, DB4_HI
    half = c.shape[1] // 2
    a = c[:, :half]
    d = c[:, half:]
    a1 = np.roll(a, 1, axis=1)
    d1 = np.roll(d, 1, axis=1)
    out = np.empty(c.shape)
    out[:, 0::2] = h[0] * a + g[0] * d + h[2] * a1 + g[2] * d1
    out[:, 1::2] = h[1] * a + g[1] * d + h[3] * a1 + g[3] * d1
    return out

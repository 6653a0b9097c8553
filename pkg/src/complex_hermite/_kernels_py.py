"""Pure numpy implementations of the inner loops.

These mirror ``_kernels.pyx`` function for function and are used whenever
the compiled extension is unavailable.
"""
import numpy as np


def chp_table(z, nu, m_max, n_max):
    """Unscaled ``H[m, n] = H^nu_{m,n}(z)`` for ``m <= m_max``, ``n <= n_max``.

    Filled by the index recurrence ``H[m+1, n] = nu z H[m, n] - nu n H[m, n-1]``
    starting from ``H[0, n] = (nu conj(z))**n``.
    """
    z = complex(z)
    nu = float(nu)
    out = np.empty((m_max + 1, n_max + 1), dtype=np.complex128)
    out[0, 0] = 1.0
    nzb = nu * z.conjugate()
    for n in range(1, n_max + 1):
        out[0, n] = nzb * out[0, n - 1]
    nz = nu * z
    coef = nu * np.arange(1, n_max + 1, dtype=np.float64)
    for m in range(m_max):
        out[m + 1, 0] = nz * out[m, 0]
        out[m + 1, 1:] = nz * out[m, 1:] - coef * out[m, :-1]
    return out


def chp_points(m, n, zs, nu):
    """``H^nu_{m,n}`` at every point of the complex array ``zs``."""
    zs = np.asarray(zs, dtype=np.complex128)
    flat = zs.ravel()
    nu = float(nu)
    row = np.empty((n + 1, flat.size), dtype=np.complex128)
    row[0] = 1.0
    nzb = nu * np.conj(flat)
    for j in range(1, n + 1):
        row[j] = nzb * row[j - 1]
    nz = nu * flat
    coef = (nu * np.arange(1, n + 1, dtype=np.float64))[:, None]
    for _ in range(m):
        nxt = np.empty_like(row)
        nxt[0] = nz * row[0]
        nxt[1:] = nz * row[1:] - coef * row[:-1]
        row = nxt
    return row[n].reshape(zs.shape)


def chp_scaled_table(z, nu, order):
    """Scaled values ``h[m, n] = H^nu_{m,n}(z) / sqrt(nu**(m+n) m! n!)``.

    Each sub-diagonal ``m - n = d`` is a Laguerre family:
    ``h[n+d, n] = (-1)**n (sqrt(nu) z)**d / sqrt(d!) * lam_n`` where ``lam``
    runs the normalized Laguerre recurrence at ``x = nu |z|**2``.  The upper
    triangle follows from ``h[n, m] = conj(h[m, n])``.  Unlike the index
    recurrence, this stays accurate for orders in the hundreds.
    """
    z = complex(z)
    nu = float(nu)
    x = nu * abs(z) ** 2
    size = order + 1
    out = np.zeros((size, size), dtype=np.complex128)
    d = np.arange(size, dtype=np.float64)
    # prefactor (sqrt(nu) z)^d / sqrt(d!)
    step = np.sqrt(nu) * z / np.sqrt(np.maximum(d, 1.0))
    step[0] = 1.0
    pref = np.cumprod(step)
    lam_prev = np.zeros(size)
    lam = np.ones(size)
    sign = 1.0
    for n in range(size):
        count = size - n
        dd = d[:count]
        rows = np.arange(n, size)
        out[rows, n] = sign * pref[:count] * lam[:count]
        if n + 1 < size:
            nxt = ((2 * n + 1 + dd - x) * lam[:count]
                   - np.sqrt(n * (n + dd)) * lam_prev[:count]) / np.sqrt((n + 1) * (n + 1 + dd))
            lam_prev, lam = lam, np.concatenate([nxt, np.zeros(size - count)])
        sign = -sign
    upper = np.triu_indices(size, 1)
    out[upper] = np.conj(out.T[upper])
    return out


def hermite_function_table(x, order):
    """``psi[n] = H_n(x) / sqrt(2**n n!)`` for ``n <= order`` (physicists' H_n)."""
    x = float(x)
    out = np.empty(order + 1)
    out[0] = 1.0
    if order >= 1:
        out[1] = np.sqrt(2.0) * x
    for n in range(1, order):
        out[n + 1] = np.sqrt(2.0 / (n + 1)) * x * out[n] - np.sqrt(n / (n + 1)) * out[n - 1]
    return out

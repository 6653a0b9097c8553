"""Complex Hermite polynomials H^nu_{m,n}, their real and Laguerre relatives,
and the magnetic Laplacian acting exactly on polynomials.

``H^nu_{m,n}(z, zb) = (-1)**(m+n) exp(nu z zb) d^m/dzb^m d^n/dz^n exp(-nu z zb)``.
Reading off the ``u**m v**n`` coefficient of ``exp(nu (u z + v zb - u v))``
gives the finite sum used by :func:`chp_poly`::

    H^nu_{m,n} = sum_k (-1)**k k! C(m,k) C(n,k) nu**(m+n-k) z**(m-k) zb**(n-k)

and differentiating the same generating function in ``u`` gives the index
recurrence used by :func:`chp_eval`::

    H^nu_{m+1,n} = nu z H^nu_{m,n} - nu n H^nu_{m,n-1}
"""
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np

from . import _backend
from .errors import DomainError
from .tripoly import TriPoly


@dataclass(frozen=True)
class EvalPoint:
    """A point ``z`` together with the field strength ``nu > 0``."""

    z: complex
    nu: float

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "nu", float(self.nu))
        check_nu(self.nu)


def check_nu(nu, name="nu"):
    if not (np.isfinite(nu) and nu > 0):
        raise DomainError(f"{name} must be a positive real number, got {nu!r}")


def _check_indices(*idx):
    for i in idx:
        if int(i) != i or i < 0:
            raise DomainError(f"indices must be nonnegative integers, got {i!r}")


@lru_cache(maxsize=None)
def chp_poly(m: int, n: int) -> TriPoly:
    """Exact H^nu_{m,n} as a :class:`TriPoly` in ``z``, ``zb`` and ``nu``."""
    _check_indices(m, n)
    terms = {}
    for k in range(min(m, n) + 1):
        coef = (-1) ** k * math.factorial(k) * math.comb(m, k) * math.comb(n, k)
        terms[(m - k, n - k, m + n - k)] = coef
    return TriPoly(terms)


@lru_cache(maxsize=None)
def chp_rodrigues(m: int, n: int) -> TriPoly:
    """H^nu_{m,n} by literal Wirtinger differentiation of ``exp(-nu z zb)``.

    The running derivative is stored as ``P * exp(-nu z zb)`` with ``P``
    polynomial; ``d/dz`` maps ``P`` to ``P_z - nu zb P`` and ``d/dzb`` maps it
    to ``P_zb - nu z P``.  Quadratically slower than :func:`chp_poly`; kept as
    an independent construction for cross-checks.
    """
    _check_indices(m, n)
    p = TriPoly.constant(1)
    for _ in range(n):
        p = p.d_z() - p.shift(0, 1, 1)
    for _ in range(m):
        p = p.d_zbar() - p.shift(1, 0, 1)
    return p if (m + n) % 2 == 0 else -p


def chp_eval(m: int, n: int, z: complex, nu: float) -> complex:
    """Numerical H^nu_{m,n}(z, conj(z)) via the index recurrence.

    Accurate to a few ulps of :func:`chp_majorant` (the sum of absolute term
    values), which is the natural error scale near zeros of the polynomial.
    """
    _check_indices(m, n)
    check_nu(nu)
    return complex(_backend.chp_table(z, nu, m, n)[m, n])


def chp_table(z: complex, nu: float, m_max: int, n_max: int) -> np.ndarray:
    """All H^nu_{m,n}(z) for ``m <= m_max``, ``n <= n_max`` (index recurrence)."""
    _check_indices(m_max, n_max)
    check_nu(nu)
    return _backend.chp_table(z, nu, m_max, n_max)


def chp_eval_array(m: int, n: int, zs, nu: float) -> np.ndarray:
    """Vectorized :func:`chp_eval` over an array of points."""
    _check_indices(m, n)
    check_nu(nu)
    return _backend.chp_points(m, n, zs, nu)


def chp_scaled_table(z: complex, nu: float, order: int) -> np.ndarray:
    """``H^nu_{m,n}(z) / sqrt(nu**(m+n) m! n!)`` for ``m, n <= order``.

    Built from Laguerre recurrences along each diagonal, so it stays
    accurate at high order where the plain index recurrence loses all digits.
    This is the table every truncated double series sums over.
    """
    _check_indices(order)
    check_nu(nu)
    return _backend.chp_scaled_table(z, nu, order)


def chp_majorant(m: int, n: int, z: complex, nu: float) -> float:
    """Sum of the absolute values of the terms of H^nu_{m,n}(z)."""
    r2 = abs(complex(z)) ** 2
    total = 0.0
    for k in range(min(m, n) + 1):
        total += (math.factorial(k) * math.comb(m, k) * math.comb(n, k)
                  * nu ** (m + n - k) * r2 ** ((m + n - 2 * k) / 2))
    return total


def chp_zero_value(m: int, n: int, nu: float) -> complex:
    """H^nu_{m,n}(0) = (-nu)**m m! when ``m == n`` and 0 otherwise.

    The product is accumulated in the same order as the recurrence in
    :func:`chp_eval`, so the two agree bit for bit.
    """
    _check_indices(m, n)
    check_nu(nu)
    if m != n:
        return 0j
    value = complex(1.0)
    for k in range(1, m + 1):
        value = -((nu * k) * value)
    return value


def real_hermite_eval(n: int, x):
    """Physicists' Hermite polynomial H_n(x) by ``H_{k+1} = 2x H_k - 2k H_{k-1}``."""
    _check_indices(n)
    x = np.asarray(x, dtype=float)
    prev, cur = np.zeros_like(x), np.ones_like(x)
    for k in range(n):
        prev, cur = cur, 2 * x * cur - 2 * k * prev
    return cur if cur.ndim else float(cur)


def laguerre_eval(n: int, alpha: float, x):
    """Generalized Laguerre polynomial L^(alpha)_n(x) by the three-term recurrence."""
    _check_indices(n)
    x = np.asarray(x, dtype=float)
    prev, cur = np.zeros_like(x), np.ones_like(x)
    for k in range(n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur if cur.ndim else float(cur)


def magnetic_laplacian_apply(p: TriPoly) -> TriPoly:
    """``-d2/dz dzb + nu z d/dz`` applied exactly; the ``nu z`` factor bumps both exponents."""
    dz = p.d_z()
    return dz.shift(1, 0, 1) - dz.d_zbar()


def diagonal_laguerre_check(m: int, z: complex, nu: float) -> Tuple[complex, complex]:
    """``(H^nu_{m,m}(z), (-1)**m m! nu**m L_m(nu |z|**2))``; the two should agree."""
    _check_indices(m)
    check_nu(nu)
    lhs = chp_eval(m, m, z, nu)
    rhs = (-1) ** m * math.factorial(m) * nu ** m * laguerre_eval(m, 0.0, nu * abs(complex(z)) ** 2)
    return lhs, complex(rhs)


def diagonal_majorant(m: int, z: complex, nu: float) -> float:
    """Error scale for :func:`diagonal_laguerre_check`: ``m! nu**m L_m(-nu |z|**2)``."""
    return math.factorial(m) * nu ** m * laguerre_eval(m, 0.0, -nu * abs(complex(z)) ** 2)

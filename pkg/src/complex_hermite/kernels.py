"""Generating functions and Mehler-type kernels: closed forms and truncated series.

Every double series is summed over the square ``0 <= m, n <= M`` using the
scaled table ``h[m, n] = H^nu_{m,n} / sqrt(nu**(m+n) m! n!)``, which keeps the
terms bounded by ``exp(nu |z|**2 / 2)`` regardless of order.  The hermitian
pairing is ``<w, z> = w * conj(z)`` throughout.
"""
import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _backend
from .errors import ConvergenceError, DomainError
from .hermite_core import check_nu, chp_eval, chp_scaled_table

# series evaluators refuse parameters this close to a pole
MAX_SERIES_U = 0.95
MAX_SERIES_UV = 0.9


@dataclass(frozen=True)
class KernelArgs:
    u: complex = 0j
    v: complex = 0j
    z: complex = 0j
    w: complex = 0j
    nu: float = 1.0
    nu_prime: float = 1.0

    def __post_init__(self):
        for name in ("u", "v", "z", "w"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        object.__setattr__(self, "nu", float(self.nu))
        object.__setattr__(self, "nu_prime", float(self.nu_prime))
        check_nu(self.nu)
        check_nu(self.nu_prime, "nu_prime")


@dataclass(frozen=True)
class TruncationSpec:
    """Cutoff ``max_order`` for every summation index and the tail threshold.

    A series is accepted when its last shell of terms (those with
    ``max(m, n) == max_order``) is at most ``tail_tol * (1 + |sum|)``.
    """

    max_order: int = 40
    tail_tol: float = 1e-8

    def __post_init__(self):
        if int(self.max_order) != self.max_order or self.max_order < 1:
            raise DomainError(f"max_order must be a positive integer, got {self.max_order!r}")
        if not self.tail_tol > 0:
            raise DomainError(f"tail_tol must be positive, got {self.tail_tol!r}")


@dataclass(frozen=True)
class HeatArgs:
    t: float
    z: complex = 0j
    z0: complex = 0j
    nu: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "t", float(self.t))
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "z0", complex(self.z0))
        object.__setattr__(self, "nu", float(self.nu))
        check_nu(self.nu)
        if not self.t > 0:
            raise DomainError(f"t must be positive, got {self.t!r}")


class SeriesResult(NamedTuple):
    value: complex
    increment: float
    order: int

    def __complex__(self):
        return complex(self.value)


DEFAULT_TRUNC = TruncationSpec()


def _accept(value, increment, trunc, what):
    value = complex(value)
    increment = float(increment)
    if not np.isfinite(value.real) or not np.isfinite(value.imag) \
            or increment > trunc.tail_tol * (1.0 + abs(value)):
        raise ConvergenceError(
            f"{what}: last increment {increment:.3e} exceeds tolerance at order {trunc.max_order}",
            increment=increment, order=trunc.max_order)
    return SeriesResult(value, increment, trunc.max_order)


def _shell_sum(terms):
    """Sum of a square term array and the magnitude of its outermost shell."""
    total = terms.sum()
    inner = terms[:-1, :-1].sum()
    return total, abs(total - inner)


def _powers(x, order):
    return complex(x) ** np.arange(order + 1)


def _inv_sqrt_factorials(order):
    k = np.arange(order + 1)
    return np.exp(-0.5 * np.array([math.lgamma(i + 1) for i in k]))


# -- classical real Mehler kernel ------------------------------------------

def classical_mehler_closed(t: float, x: float, y: float) -> float:
    """``(1-t^2)^(-1/2) exp((-t^2 (x^2+y^2) + 2 t x y) / (1-t^2))``."""
    if not abs(t) < 1:
        raise DomainError(f"|t| must be < 1, got {t!r}")
    d = 1.0 - t * t
    return math.exp((-t * t * (x * x + y * y) + 2 * t * x * y) / d) / math.sqrt(d)


def classical_mehler_series(t: float, x: float, y: float, trunc: TruncationSpec = DEFAULT_TRUNC) -> SeriesResult:
    """``sum_n t^n H_n(x) H_n(y) / (2^n n!)`` with normalized Hermite recurrences."""
    if not abs(t) < 1:
        raise DomainError(f"|t| must be < 1, got {t!r}")
    order = trunc.max_order
    terms = (float(t) ** np.arange(order + 1)
             * _backend.hermite_function_table(x, order)
             * _backend.hermite_function_table(y, order))
    return _accept(terms.sum(), abs(terms[-1]), trunc, "classical Mehler series")


# -- exponential generating function --------------------------------------

def egf_closed(args: KernelArgs) -> complex:
    """``exp(nu (u z + v conj(z) - u v))``."""
    a = args
    return cmath.exp(a.nu * (a.u * a.z + a.v * a.z.conjugate() - a.u * a.v))


def egf_series(args: KernelArgs, trunc: TruncationSpec = DEFAULT_TRUNC) -> SeriesResult:
    """``sum u^m v^n / (m! n!) H^nu_{m,n}(z)``."""
    a = args
    order = trunc.max_order
    h = chp_scaled_table(a.z, a.nu, order)
    s = math.sqrt(a.nu)
    inv = _inv_sqrt_factorials(order)
    cu = _powers(s * a.u, order) * inv
    cv = _powers(s * a.v, order) * inv
    total, inc = _shell_sum(cu[:, None] * cv[None, :] * h)
    return _accept(total, inc, trunc, "EGF series")


# -- single-index generating function ------------------------------------

def gf_single_closed(m_prime: int, zeta: complex, w: complex, nu: float) -> complex:
    """``nu^m' (conj(w) - zeta)^m' exp(nu zeta w)``."""
    check_nu(nu)
    zeta, w = complex(zeta), complex(w)
    return nu ** m_prime * (w.conjugate() - zeta) ** m_prime * cmath.exp(nu * zeta * w)


def gf_single_series(m_prime: int, zeta: complex, w: complex, nu: float,
                     trunc: TruncationSpec = DEFAULT_TRUNC) -> SeriesResult:
    """``sum_n zeta^n / n! H^nu_{n,m'}(w)``."""
    check_nu(nu)
    order = max(trunc.max_order, m_prime)
    h = chp_scaled_table(w, nu, order)[: trunc.max_order + 1, m_prime]
    s = math.sqrt(nu)
    scale = s ** m_prime * math.sqrt(math.factorial(m_prime))
    terms = scale * _powers(s * complex(zeta), trunc.max_order) * _inv_sqrt_factorials(trunc.max_order) * h
    return _accept(terms.sum(), abs(terms[-1]), trunc, "single generating function series")


# -- partial Mehler sum (fixed m, m') ------------------------------------

def partial_mehler_closed(m: int, m_prime: int, z: complex, w: complex, nu: float) -> complex:
    """``(-1)^m' H^nu_{m,m'}(z - w) exp(nu w conj(z))``."""
    check_nu(nu)
    z, w = complex(z), complex(w)
    return (-1) ** m_prime * chp_eval(m, m_prime, z - w, nu) * cmath.exp(nu * w * z.conjugate())


def partial_mehler_series(m: int, m_prime: int, z: complex, w: complex, nu: float,
                          trunc: TruncationSpec = DEFAULT_TRUNC) -> SeriesResult:
    """``sum_n H^nu_{m,n}(z) conj(H^nu_{m',n}(w)) / (nu^n n!)``."""
    check_nu(nu)
    order = max(trunc.max_order, m, m_prime)
    hz = chp_scaled_table(z, nu, order)[m, : trunc.max_order + 1]
    hw = chp_scaled_table(w, nu, order)[m_prime, : trunc.max_order + 1]
    scale = math.sqrt(nu ** (m + m_prime) * math.factorial(m) * math.factorial(m_prime))
    terms = scale * hz * np.conj(hw)
    return _accept(terms.sum(), abs(terms[-1]), trunc, "partial Mehler series")


# -- first Mehler formula ------------------------------------------------

def _check_first(u):
    if not abs(u) < 1:
        raise DomainError(f"first Mehler kernel needs |u| < 1, got |u| = {abs(u):.6g}")


def mehler1_closed(args: KernelArgs) -> complex:
    """``exp(nu w conj(z)) / (1-u) * exp(-nu u |z-w|^2 / (1-u))``."""
    a = args
    _check_first(a.u)
    d = 1.0 - a.u
    return cmath.exp(a.nu * a.w * a.z.conjugate() - a.nu * a.u * abs(a.z - a.w) ** 2 / d) / d


def mehler1_series(args: KernelArgs, trunc: TruncationSpec = DEFAULT_TRUNC) -> SeriesResult:
    """``sum u^m H^nu_{m,n}(z) conj(H^nu_{m,n}(w)) / (nu^(m+n) m! n!)``."""
    a = args
    _check_first(a.u)
    if abs(a.u) > MAX_SERIES_U:
        raise DomainError(f"|u| = {abs(a.u):.6g} too close to the pole for series evaluation")
    order = trunc.max_order
    hz = chp_scaled_table(a.z, a.nu, order)
    hw = hz if a.w == a.z else chp_scaled_table(a.w, a.nu, order)
    terms = _powers(a.u, order)[:, None] * hz * np.conj(hw)
    total, inc = _shell_sum(terms)
    return _accept(total, inc, trunc, "first Mehler series")


def mehler1_laguerre(args: KernelArgs, trunc: TruncationSpec = DEFAULT_TRUNC) -> SeriesResult:
    """``exp(nu w conj(z)) sum_m u^m L_m(nu |z-w|^2)``, the diagonal Laguerre route."""
    a = args
    _check_first(a.u)
    order = trunc.max_order
    x = a.nu * abs(a.z - a.w) ** 2
    lag = np.empty(order + 1)
    prev, cur = 0.0, 1.0
    for k in range(order + 1):
        lag[k] = cur
        prev, cur = cur, ((2 * k + 1 - x) * cur - k * prev) / (k + 1)
    terms = cmath.exp(a.nu * a.w * a.z.conjugate()) * _powers(a.u, order) * lag
    return _accept(terms.sum(), abs(terms[-1]), trunc, "Laguerre generating series")


# -- second Mehler formula -----------------------------------------------

def _uv_product(u, v):
    uv = complex(u) * complex(v)
    if abs(uv.imag) > 1e-12 * max(1.0, abs(uv)):
        raise DomainError(f"second Mehler kernel needs u*v real, got {uv}")
    return uv.real


def _check_second(a):
    p = a.nu * a.nu_prime * _uv_product(a.u, a.v)
    if not p < 1:
        raise DomainError(f"second Mehler kernel needs nu nu' u v < 1, got {p:.6g}")
    return p


def mehler2_closed(args: KernelArgs) -> complex:
    """``E^{nu,nu'}_{u,v}(z, w)`` in closed form."""
    a = args
    p = _check_second(a)
    d = 1.0 - p
    uv = _uv_product(a.u, a.v)
    bracket = ((a.nu * abs(a.z) ** 2 + a.nu_prime * abs(a.w) ** 2) * uv
               - a.u * a.z * a.w - a.v * a.z.conjugate() * a.w.conjugate())
    return cmath.exp(-a.nu * a.nu_prime * bracket / d) / d


def _mehler2_terms(u, v, z, w, nu, nu_prime, order):
    g = math.sqrt(nu * nu_prime)
    hz = chp_scaled_table(z, nu, order)
    hw = hz if (w == z and nu == nu_prime) else chp_scaled_table(w, nu_prime, order)
    return _powers(g * u, order)[:, None] * _powers(g * v, order)[None, :] * hz * hw


def mehler2_series(args: KernelArgs, trunc: TruncationSpec = DEFAULT_TRUNC) -> SeriesResult:
    """``sum u^m v^n / (m! n!) H^nu_{m,n}(z) H^nu'_{m,n}(w)``."""
    a = args
    p = _check_second(a)
    if abs(p) > MAX_SERIES_UV:
        raise DomainError(f"|nu nu' u v| = {abs(p):.6g} too close to the pole for series evaluation")
    total, inc = _shell_sum(_mehler2_terms(a.u, a.v, a.z, a.w, a.nu, a.nu_prime, trunc.max_order))
    return _accept(total, inc, trunc, "second Mehler series")


def mehler_pc1_closed(u: complex, v: complex, z: complex, w: complex) -> complex:
    """The ``nu = nu' = 1`` kernel written out on its own."""
    u, v, z, w = map(complex, (u, v, z, w))
    uv = _uv_product(u, v)
    if not uv < 1:
        raise DomainError(f"needs u v < 1, got {uv:.6g}")
    num = u * z * w + v * z.conjugate() * w.conjugate() - (abs(z) ** 2 + abs(w) ** 2) * uv
    return cmath.exp(num / (1 - uv)) / (1 - uv)


# -- specializations of the second kernel -----------------------------------

MEHLER_SPECIALIZATIONS = ("MEHLER0", "MEHLER1", "MEHLER2", "MEHLER3")


def specialized_identity(identity: str, trunc: TruncationSpec = DEFAULT_TRUNC, **params):
    """Return ``(series side, closed side)`` for one specialization.

    MEHLER0: ``z, w, nu, nu_prime`` with ``nu nu' < 1`` (``u = v = 1``).
    MEHLER1: ``u, v, z, nu`` with ``nu^2 u v < 1``; sums ``|H|^2``.
    MEHLER2: ``u, v, z, nu`` with ``nu^2 u v < 1``; sums ``H^2``.
    MEHLER3: ``lam, z, nu`` with ``|lam nu| < 1``; diagonal sum of ``H_{m,m}``.
    """
    order = trunc.max_order
    if identity == "MEHLER0":
        z, w = complex(params["z"]), complex(params["w"])
        nu, nu_p = float(params["nu"]), float(params["nu_prime"])
        check_nu(nu)
        check_nu(nu_p, "nu_prime")
        p = nu * nu_p
        if not p < 1:
            raise DomainError(f"MEHLER0 needs nu nu' < 1, got {p:.6g}")
        if p > MAX_SERIES_UV:
            raise DomainError(f"nu nu' = {p:.6g} too close to the pole for series evaluation")
        total, inc = _shell_sum(_mehler2_terms(1.0, 1.0, z, w, nu, nu_p, order))
        series = _accept(total, inc, trunc, "MEHLER0 series").value
        closed = cmath.exp(-p / (1 - p) * (nu * abs(z) ** 2 + nu_p * abs(w) ** 2
                                           - 2 * (z * w).real)) / (1 - p)
        return series, closed
    if identity in ("MEHLER1", "MEHLER2"):
        u, v, z = complex(params["u"]), complex(params["v"]), complex(params["z"])
        nu = float(params["nu"])
        check_nu(nu)
        uv = _uv_product(u, v)
        p = nu * nu * uv
        if not p < 1:
            raise DomainError(f"{identity} needs nu^2 u v < 1, got {p:.6g}")
        if abs(p) > MAX_SERIES_UV:
            raise DomainError(f"|nu^2 u v| = {abs(p):.6g} too close to the pole for series evaluation")
        h = chp_scaled_table(z, nu, order)
        second = np.conj(h) if identity == "MEHLER1" else h
        terms = _powers(nu * u, order)[:, None] * _powers(nu * v, order)[None, :] * h * second
        total, inc = _shell_sum(terms)
        series = _accept(total, inc, trunc, f"{identity} series").value
        r2 = abs(z) ** 2
        if identity == "MEHLER1":
            expo = nu * nu * (u + v - 2 * nu * uv) / (1 - p) * r2
        else:
            expo = nu * nu / (1 - p) * (u * z * z + v * z.conjugate() ** 2 - 2 * nu * uv * r2)
        return series, cmath.exp(expo) / (1 - p)
    if identity == "MEHLER3":
        lam, z, nu = float(params["lam"]), complex(params["z"]), float(params["nu"])
        check_nu(nu)
        p = lam * nu
        if not abs(p) < 1:
            raise DomainError(f"MEHLER3 needs |lam nu| < 1, got {p:.6g}")
        if abs(p) > MAX_SERIES_UV:
            raise DomainError(f"|lam nu| = {abs(p):.6g} too close to the pole for series evaluation")
        # H_{m,m} / m! = nu^m h_{m,m}
        diag = np.diagonal(chp_scaled_table(z, nu, order))
        terms = _powers(p, order) * diag
        series = _accept(terms.sum(), abs(terms[-1]), trunc, "MEHLER3 series").value
        closed = cmath.exp(lam * nu * nu * abs(z) ** 2 / (1 + p)) / (1 + p)
        return series, closed
    raise DomainError(f"unknown specialization {identity!r}; expected one of {MEHLER_SPECIALIZATIONS}")


# -- heat kernel of the magnetic Laplacian -----------------------------------

def heat_kernel_closed(args: HeatArgs) -> complex:
    """``(nu/pi) * mehler1_closed(u = exp(-nu t), z, w = z0)``.

    Equivalently ``(nu/pi) exp(nu z0 conj(z)) / (1 - exp(-nu t))
    * exp(-nu |z - z0|^2 / (exp(nu t) - 1))``.
    """
    a = args
    u = math.exp(-a.nu * a.t)
    return a.nu / math.pi * mehler1_closed(KernelArgs(u=u, z=a.z, w=a.z0, nu=a.nu))


def heat_kernel_series(args: HeatArgs, trunc: TruncationSpec = DEFAULT_TRUNC) -> SeriesResult:
    """Spectral sum ``(nu/pi) sum exp(-m nu t) H(z) conj(H(z0)) / (nu^(m+n) m! n!)``."""
    a = args
    u = math.exp(-a.nu * a.t)
    if u > MAX_SERIES_U:
        raise DomainError(f"exp(-nu t) = {u:.6g} too close to 1 for series evaluation")
    res = mehler1_series(KernelArgs(u=u, z=a.z, w=a.z0, nu=a.nu), trunc)
    f = a.nu / math.pi
    return SeriesResult(f * res.value, f * res.increment, res.order)


def heat_kernel_printed(args: HeatArgs) -> complex:
    """Alternative closed form with a sign and scaling defect.

    ``(nu/pi) exp(nu (t + z0 conj(z))) / (1 - exp(nu t)) * exp(|z - z0|^2 / (exp(nu t) - 1))``.
    Its prefactor is negative for every ``t > 0`` while the spectral sum is
    positive on the diagonal; it exists only for the mismatch check.
    """
    a = args
    e = math.exp(a.nu * a.t)
    return (a.nu / math.pi * cmath.exp(a.nu * (a.t + a.z0 * a.z.conjugate())) / (1 - e)
            * math.exp(abs(a.z - a.z0) ** 2 / (e - 1)))

"""Catalog of identities with seeded samplers and residual reports.

Each entry knows how to draw parameters from a fixed region, how to evaluate
both sides, and the single tolerance its ``rel_err`` is compared against.
"""
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from . import hermite_core as hc
from . import kernels as kn
from . import quadrature as qd
from .errors import ConvergenceError, DomainError
from .report import IdentityReport

DEFAULT_SEED = 0


@dataclass(frozen=True)
class IdentityDescriptor:
    identity_id: str
    anchor: str
    tolerance: float
    region: str
    sampler: Callable[[np.random.Generator], Dict]
    runner: Callable
    trunc: Optional[kn.TruncationSpec] = None
    samples: int = 5
    expected_fail: bool = False


# -- samplers ---------------------------------------------------------------

def _disk(rng, r):
    return complex(r * math.sqrt(rng.random()) * np.exp(2j * math.pi * rng.random()))


def _unif(rng, a, b):
    return float(rng.uniform(a, b))


def _real_uv(rng, rmax, bound):
    """``u, v`` with ``u v`` real and ``|u v| <= bound``; phases opposite, sign random."""
    while True:
        theta = 2 * math.pi * rng.random()
        r, s = rng.uniform(0, rmax, size=2)
        sign = 1.0 if rng.random() < 0.5 else -1.0
        u = complex(r * np.exp(1j * theta))
        v = complex(sign * s * np.exp(-1j * theta))
        if abs(u * v) <= bound:
            return u, v


def _sample_mehler2(rng, same_nu=False):
    nu = _unif(rng, 0.25, 1.5)
    nu_p = nu if same_nu else _unif(rng, 0.25, 1.5)
    u, v = _real_uv(rng, 0.8, 0.5 / (nu * nu_p))
    return dict(u=u, v=v, z=_disk(rng, 1.5), w=_disk(rng, 1.5), nu=nu, nu_prime=nu_p)


def _sample_norm(rng):
    pairs = [(m, n) for m in range(5) for n in range(5) if m + n <= 4]
    a = pairs[rng.integers(len(pairs))]
    b = a if rng.random() < 0.5 else pairs[rng.integers(len(pairs))]
    return dict(m=a[0], n=a[1], p=b[0], q=b[1], nu=_unif(rng, 0.25, 2))


def _sample_zero(rng):
    m = int(rng.integers(0, 13))
    n = m if rng.random() < 0.5 else int(rng.integers(0, 13))
    return dict(m=m, n=n, nu=_unif(rng, 0.25, 4))


def _sample_int_rep(rng):
    while True:
        m, n = (int(i) for i in rng.integers(0, 9, size=2))
        if m + n <= 8:
            break
    nu = float(rng.choice([0.5, 1.0, 2.0]))
    mu = _unif(rng, 0.5, 2)
    rho = math.sqrt(mu * nu) * math.exp(_unif(rng, -0.3, 0.3))
    phi = 2 * math.pi * rng.random()
    alpha = complex(rho * np.exp(1j * phi))
    beta = complex(mu * nu / rho * np.exp(-1j * phi))
    return dict(m=m, n=n, z=_disk(rng, 2), mu=mu, alpha=alpha, beta=beta)


def _sample_reciprocity(rng):
    nu, nu_p = _unif(rng, 0.25, 2), _unif(rng, 0.25, 2)
    u, v = _real_uv(rng, 0.8, 0.5 / (nu * nu_p))
    j, k = (int(i) for i in rng.integers(0, 4, size=2))
    return dict(j=j, k=k, u=u, v=v, z=_disk(rng, 1), nu=nu, nu_prime=nu_p)


# -- runners (params, trunc, rule) -> (lhs, rhs, meta) ------------------------

def _series_meta(res):
    return {"max_order": res.order, "tail_increment": res.increment}


def _run_mehler_real(p, trunc, rule):
    res = kn.classical_mehler_series(p["t"], p["x"], p["y"], trunc)
    return res.value, kn.classical_mehler_closed(p["t"], p["x"], p["y"]), _series_meta(res)


def _run_egf(p, trunc, rule):
    a = kn.KernelArgs(u=p["u"], v=p["v"], z=p["z"], nu=p["nu"])
    res = kn.egf_series(a, trunc)
    return res.value, kn.egf_closed(a), _series_meta(res)


def _run_gf_single(p, trunc, rule):
    res = kn.gf_single_series(p["m_prime"], p["zeta"], p["w"], p["nu"], trunc)
    return res.value, kn.gf_single_closed(p["m_prime"], p["zeta"], p["w"], p["nu"]), _series_meta(res)


def _run_partial(p, trunc, rule):
    args = (p["m"], p["m_prime"], p["z"], p["w"], p["nu"])
    res = kn.partial_mehler_series(*args, trunc)
    return res.value, kn.partial_mehler_closed(*args), _series_meta(res)


def _run_mehler1(p, trunc, rule):
    a = kn.KernelArgs(u=p["u"], z=p["z"], w=p["w"], nu=p["nu"])
    res = kn.mehler1_series(a, trunc)
    meta = _series_meta(res)
    meta["laguerre_route"] = kn.mehler1_laguerre(a, trunc).value
    return res.value, kn.mehler1_closed(a), meta


def _run_mehler1_diag(p, trunc, rule):
    a = kn.KernelArgs(u=p["u"], z=p["z"], w=p["z"], nu=p["nu"])
    res = kn.mehler1_series(a, trunc)
    meta = _series_meta(res)
    meta["closed_form"] = kn.mehler1_closed(a)
    return res.value, math.exp(a.nu * abs(a.z) ** 2) / (1 - a.u), meta


def _run_laguerre_diag(p, trunc, rule):
    lhs, rhs = hc.diagonal_laguerre_check(p["m"], p["z"], p["nu"])
    scale = hc.diagonal_majorant(p["m"], p["z"], p["nu"])
    return lhs / scale, rhs / scale, {"normalized_by": scale, "raw_lhs": lhs, "raw_rhs": rhs}


def _run_eigen(p, trunc, rule):
    m, n = p["m"], p["n"]
    h = hc.chp_poly(m, n)
    left = hc.magnetic_laplacian_apply(h)
    right = (h * m).shift(0, 0, 1)
    z, nu = p["z"], p["nu"]
    lv = complex(*(float(c) for c in left.evaluate_exact(z, nu)))
    rv = complex(*(float(c) for c in right.evaluate_exact(z, nu)))
    return lv, rv, {"exact_equal": left == right, "terms": len(left)}


def _run_norm(p, trunc, rule):
    rule = rule or qd.QuadratureRule(64, p["nu"])
    lhs = qd.inner_product_quad(p["m"], p["n"], p["p"], p["q"], p["nu"], rule)
    diag = (p["m"], p["n"]) == (p["p"], p["q"])
    rhs = qd.norm_squared_closed(p["m"], p["n"], p["nu"]) if diag else 0.0
    return lhs, rhs, {"nodes_per_axis": rule.nodes_per_axis, "diagonal": diag}


def _run_heat(p, trunc, rule):
    a = kn.HeatArgs(p["t"], p["z"], p["z0"], p["nu"])
    res = kn.heat_kernel_series(a, trunc)
    return res.value, kn.heat_kernel_closed(a), _series_meta(res)


def _run_heat_printed(p, trunc, rule):
    a = kn.HeatArgs(p["t"], p["z"], p["z0"], p["nu"])
    series = kn.heat_kernel_series(a, trunc).value
    printed = kn.heat_kernel_printed(a)
    ratio = printed / series
    meta = {
        "printed_over_series": ratio,
        "series_positive": series.real > 0 and abs(series.imag) <= 1e-12 * abs(series),
        "printed_negative": printed.real < 0 and abs(printed.imag) <= 1e-12 * abs(printed),
        "sign_disagreement": ratio.real < 0 and abs(ratio.imag) <= 1e-9 * abs(ratio),
    }
    return printed, series, meta


def _run_mehler2(p, trunc, rule):
    a = kn.KernelArgs(**p)
    res = kn.mehler2_series(a, trunc)
    return res.value, kn.mehler2_closed(a), _series_meta(res)


def _run_pc1(p, trunc, rule):
    a = kn.KernelArgs(u=p["u"], v=p["v"], z=p["z"], w=p["w"], nu=1.0, nu_prime=1.0)
    res = kn.mehler2_series(a, trunc)
    return res.value, kn.mehler_pc1_closed(p["u"], p["v"], p["z"], p["w"]), _series_meta(res)


def _specialization(name):
    def run(p, trunc, rule):
        series, closed = kn.specialized_identity(name, trunc, **p)
        return series, closed, {"max_order": trunc.max_order}
    return run


def _run_zero(p, trunc, rule):
    return hc.chp_eval(p["m"], p["n"], 0j, p["nu"]), hc.chp_zero_value(p["m"], p["n"], p["nu"]), {}


def _run_reciprocity(p, trunc, rule):
    rep = qd.self_reciprocity_check(p["j"], p["k"], p["u"], p["v"], p["z"], p["nu"], p["nu_prime"], rule)
    return rep.lhs, rep.rhs, rep.meta


def _run_fourier(p, trunc, rule):
    rep = qd.fourier_eigen_check(p["j"], p["k"], p["z"], rule)
    return rep.lhs, rep.rhs, rep.meta


def _run_gauss(p, trunc, rule):
    rule = rule or qd.QuadratureRule(64, p["gamma"])
    lhs = qd.gaussian_integral_quad(p["gamma"], p["alpha"], p["beta"], rule)
    return lhs, qd.gaussian_integral_closed(p["gamma"], p["alpha"], p["beta"]), {"nodes_per_axis": rule.nodes_per_axis}


def _run_int_rep(p, trunc, rule):
    params = qd.IntegralRepParams(p["mu"], p["alpha"], p["beta"])
    rule = rule or qd.QuadratureRule(64, params.mu)
    lhs = qd.chp_integral_rep(p["m"], p["n"], p["z"], params, rule)
    return lhs, hc.chp_eval(p["m"], p["n"], p["z"], params.nu), {"nu": params.nu, "nodes_per_axis": rule.nodes_per_axis}


def _heat_sample(rng, z0_zero=False):
    return dict(t=float(rng.choice([0.5, 1.0, 2.0])), z=_disk(rng, 1),
                z0=0j if z0_zero else _disk(rng, 1), nu=float(rng.choice([0.5, 1.0, 2.0])))


_CATALOG = (
    IdentityDescriptor(
        "MEHLER_REAL", "sum t^n H_n(x) H_n(y) / (2^n n!) = (1-t^2)^(-1/2) exp((2txy - t^2(x^2+y^2)) / (1-t^2))",
        1e-10, "|t| <= 0.6, |x|, |y| <= 2",
        lambda r: dict(t=_unif(r, -0.6, 0.6), x=_unif(r, -2, 2), y=_unif(r, -2, 2)),
        _run_mehler_real, kn.TruncationSpec(80), samples=10),
    IdentityDescriptor(
        "EGF", "sum u^m v^n / (m! n!) H_{m,n}(z) = exp(nu (u z + v zb - u v))",
        1e-11, "|u|, |v| <= 0.5, |z| <= 2, nu in [0.25, 2]",
        lambda r: dict(u=_disk(r, 0.5), v=_disk(r, 0.5), z=_disk(r, 2), nu=_unif(r, 0.25, 2)),
        _run_egf, kn.TruncationSpec(30), samples=10),
    IdentityDescriptor(
        "GF_SINGLE", "sum_n zeta^n / n! H_{n,m'}(w) = nu^m' (wb - zeta)^m' exp(nu zeta w)",
        1e-10, "m' <= 4, |zeta| <= 1, |w| <= 1.5, nu in [0.25, 2]",
        lambda r: dict(m_prime=int(r.integers(0, 5)), zeta=_disk(r, 1), w=_disk(r, 1.5), nu=_unif(r, 0.25, 2)),
        _run_gf_single, kn.TruncationSpec(40)),
    IdentityDescriptor(
        "PARTIAL_MEHLER", "sum_n H_{m,n}(z) conj H_{m',n}(w) / (nu^n n!) = (-1)^m' H_{m,m'}(z-w) exp(nu w zb)",
        1e-9, "m, m' <= 3, |z|, |w| <= 1, nu in [0.25, 2]",
        lambda r: dict(m=int(r.integers(0, 4)), m_prime=int(r.integers(0, 4)), z=_disk(r, 1), w=_disk(r, 1),
                       nu=_unif(r, 0.25, 2)),
        _run_partial, kn.TruncationSpec(50)),
    IdentityDescriptor(
        "MEHLER1", "sum u^m H_{m,n}(z) conj H_{m,n}(w) / (nu^(m+n) m! n!) = exp(nu w zb) / (1-u) exp(-nu u |z-w|^2 / (1-u))",
        1e-9, "|u| <= 0.6, |z|, |w| <= 1.5, nu in [0.25, 2]",
        lambda r: dict(u=_disk(r, 0.6), z=_disk(r, 1.5), w=_disk(r, 1.5), nu=_unif(r, 0.25, 2)),
        _run_mehler1, kn.TruncationSpec(80)),
    IdentityDescriptor(
        "MEHLER1_DIAG", "sum u^m |H_{m,n}(z)|^2 / (nu^(m+n) m! n!) = exp(nu |z|^2) / (1-u)",
        1e-10, "|u| <= 0.6, |z| <= 1.5, nu in [0.25, 2]",
        lambda r: dict(u=_disk(r, 0.6), z=_disk(r, 1.5), nu=_unif(r, 0.25, 2)),
        _run_mehler1_diag, kn.TruncationSpec(80)),
    IdentityDescriptor(
        "LAGUERRE_DIAG", "H_{m,m}(z) = (-1)^m m! nu^m L_m(nu |z|^2)  (sides scaled by m! nu^m L_m(-nu |z|^2))",
        1e-11, "m <= 15, |z| <= 2, nu in [0.25, 2]",
        lambda r: dict(m=int(r.integers(0, 16)), z=_disk(r, 2), nu=_unif(r, 0.25, 2)),
        _run_laguerre_diag, samples=10),
    IdentityDescriptor(
        "EIGEN", "(-d^2/dz dzb + nu z d/dz) H_{m,n} = nu m H_{m,n}, exact polynomial identity",
        0.0, "m, n <= 10",
        lambda r: dict(m=int(r.integers(0, 11)), n=int(r.integers(0, 11)), z=_disk(r, 2), nu=_unif(r, 0.25, 2)),
        _run_eigen, samples=10),
    IdentityDescriptor(
        "NORM", "int H_{m,n} conj H_{p,q} exp(-nu |z|^2) = (pi/nu) nu^(m+n) m! n! delta",
        1e-10, "m+n, p+q <= 4, nu in [0.25, 2], 64 nodes",
        _sample_norm, _run_norm, samples=10),
    IdentityDescriptor(
        "HEAT", "heat kernel of the magnetic Laplacian: spectral sum = (nu/pi) first Mehler kernel at u = exp(-nu t)",
        1e-9, "t, nu in {0.5, 1, 2}, |z|, |z0| <= 1",
        _heat_sample, _run_heat, kn.TruncationSpec(160)),
    IdentityDescriptor(
        "HEAT_PRINTED_MISMATCH", "(nu/pi) exp(nu (t + z0 zb)) / (1 - exp(nu t)) exp(|z-z0|^2 / (exp(nu t)-1)) vs spectral sum",
        1e-9, "t in [0.5, 2], nu in [0.5, 2], |z| <= 1, z0 = 0",
        lambda r: dict(t=_unif(r, 0.5, 2), z=_disk(r, 1), z0=0j, nu=_unif(r, 0.5, 2)),
        _run_heat_printed, kn.TruncationSpec(160), samples=3, expected_fail=True),
    IdentityDescriptor(
        "MEHLER2", "sum u^m v^n / (m! n!) H^nu_{m,n}(z) H^nu'_{m,n}(w) = E^{nu,nu'}_{u,v}(z, w)",
        1e-9, "uv real, |nu nu' uv| <= 0.5, |u|, |v| <= 0.8, |z|, |w| <= 1.5, nu, nu' in [0.25, 1.5]",
        _sample_mehler2, _run_mehler2, kn.TruncationSpec(40), samples=10),
    IdentityDescriptor(
        "MEHLER_PC1", "sum u^m v^n / (m! n!) H_{m,n}(z) H_{m,n}(w) = exp((uzw + v zb wb - (|z|^2+|w|^2) uv) / (1-uv)) / (1-uv)",
        1e-9, "uv real, |uv| <= 0.5, |u|, |v| <= 0.8, |z|, |w| <= 1.5",
        lambda r: dict(zip(("u", "v"), _real_uv(r, 0.8, 0.5)), z=_disk(r, 1.5), w=_disk(r, 1.5)),
        _run_pc1, kn.TruncationSpec(40)),
    IdentityDescriptor(
        "COR_MEHLER0", "u = v = 1: sum H^nu_{m,n}(z) H^nu'_{m,n}(w) / (m! n!) = exp(-nu nu' (nu|z|^2 + nu'|w|^2 - 2 Re(zw)) / (1 - nu nu')) / (1 - nu nu')",
        1e-9, "nu nu' <= 0.5, nu in [0.25, 1.5], |z|, |w| <= 1.5",
        lambda r: (lambda nu: dict(z=_disk(r, 1.5), w=_disk(r, 1.5), nu=nu,
                                   nu_prime=_unif(r, 0.25, 0.5 / nu)))(_unif(r, 0.25, 1.5)),
        _specialization("MEHLER0"), kn.TruncationSpec(40)),
    IdentityDescriptor(
        "COR_MEHLER1", "w = zb: sum u^m v^n / (m! n!) |H_{m,n}(z)|^2 = exp(nu^2 (u + v - 2 nu uv) |z|^2 / (1 - nu^2 uv)) / (1 - nu^2 uv)",
        1e-9, "uv real, |nu^2 uv| <= 0.5, |u|, |v| <= 0.8, |z| <= 1.5, nu in [0.25, 1.5]",
        lambda r: (lambda d: dict(u=d["u"], v=d["v"], z=d["z"], nu=d["nu"]))(_sample_mehler2(r, same_nu=True)),
        _specialization("MEHLER1"), kn.TruncationSpec(40)),
    IdentityDescriptor(
        "COR_MEHLER2", "w = z: sum u^m v^n / (m! n!) H_{m,n}(z)^2 = exp(nu^2 (u z^2 + v zb^2 - 2 nu uv |z|^2) / (1 - nu^2 uv)) / (1 - nu^2 uv)",
        1e-9, "uv real, |nu^2 uv| <= 0.5, |u|, |v| <= 0.8, |z| <= 1.5, nu in [0.25, 1.5]",
        lambda r: (lambda d: dict(u=d["u"], v=d["v"], z=d["z"], nu=d["nu"]))(_sample_mehler2(r, same_nu=True)),
        _specialization("MEHLER2"), kn.TruncationSpec(40)),
    IdentityDescriptor(
        "COR_MEHLER3", "w = 0: sum lam^m / m! H_{m,m}(z) = exp(lam nu^2 |z|^2 / (1 + lam nu)) / (1 + lam nu)",
        1e-9, "|lam nu| <= 0.5, nu in [0.25, 2], |z| <= 1.5",
        lambda r: (lambda nu: dict(lam=_unif(r, -0.5, 0.5) / nu, z=_disk(r, 1.5), nu=nu))(_unif(r, 0.25, 2)),
        _specialization("MEHLER3"), kn.TruncationSpec(40)),
    IdentityDescriptor(
        "ZERO_VALUE", "H_{m,n}(0) = (-nu)^m m! delta_{m,n}",
        0.0, "m, n <= 12, nu in [0.25, 4]",
        _sample_zero, _run_zero, samples=10),
    IdentityDescriptor(
        "SELF_RECIPROCITY", "int exp((-nu'|w|^2 + nu nu' (u z w + v zb wb)) / (1 - nu nu' uv)) H^nu'_{k,j}(w) = "
        "pi nu'^(j+k-1) (1 - nu nu' uv) u^j v^k exp(nu^2 nu' uv |z|^2 / (1 - nu nu' uv)) H^nu_{j,k}(z)",
        qd.SELF_RECIPROCITY_TOL, "j, k <= 3, uv real, |nu nu' uv| <= 0.5, |z| <= 1, nu, nu' in [0.25, 2], 96 nodes",
        _sample_reciprocity, _run_reciprocity),
    IdentityDescriptor(
        "FOURIER_EIGEN", "int exp(i Re(zw)) exp(-|w|^2/2) H_{k,j}(w) = 2 pi i^(j+k) exp(-|z|^2/2) H_{j,k}(z)",
        qd.FOURIER_EIGEN_TOL, "j, k <= 4, |z| <= 2, 96 nodes at scale 1/2",
        lambda r: dict(j=int(r.integers(0, 5)), k=int(r.integers(0, 5)), z=_disk(r, 2)),
        _run_fourier),
    IdentityDescriptor(
        "GAUSS_INT", "int exp(-gamma |xi|^2 + alpha xi + beta xib) = (pi/gamma) exp(alpha beta / gamma)",
        1e-10, "gamma in {0.5, 1, 2}, |alpha|, |beta| <= 2, 64 nodes",
        lambda r: dict(gamma=float(r.choice([0.5, 1.0, 2.0])), alpha=_disk(r, 2), beta=_disk(r, 2)),
        _run_gauss, samples=10),
    IdentityDescriptor(
        "INT_REP", "H_{m,n}(z) = (mu/pi) (-alpha)^m beta^n int xi^m xib^n exp(nu|z|^2 - mu|xi|^2 + alpha xi zb - beta xib z)",
        1e-8, "m+n <= 8, |z| <= 2, nu in {0.5, 1, 2}, mu in [0.5, 2], 64 nodes",
        _sample_int_rep, _run_int_rep, samples=10),
)

_BY_ID = {d.identity_id: d for d in _CATALOG}


def catalog() -> List[IdentityDescriptor]:
    """All registered identities, in a fixed order."""
    return list(_CATALOG)


def get_descriptor(identity_id: str) -> IdentityDescriptor:
    try:
        return _BY_ID[identity_id]
    except KeyError:
        raise KeyError(f"unknown identity {identity_id!r}") from None


def run_identity(identity_id: str, params: Dict, trunc: kn.TruncationSpec = None,
                 rule: qd.QuadratureRule = None) -> IdentityReport:
    """Evaluate one identity; domain and convergence failures become failed reports."""
    desc = get_descriptor(identity_id)
    trunc = trunc or desc.trunc or kn.DEFAULT_TRUNC
    base = {"expected_fail": desc.expected_fail}
    try:
        lhs, rhs, meta = desc.runner(params, trunc, rule)
    except (DomainError, ConvergenceError, ValueError, OverflowError, ZeroDivisionError) as exc:
        return IdentityReport.failure(identity_id, params, exc, base)
    base.update(meta)
    report = IdentityReport.compare(identity_id, params, lhs, rhs, desc.tolerance, base)
    if meta.get("exact_equal") is False:
        report.passed = False
    return report


def report_ok(report: IdentityReport) -> bool:
    """True when the outcome is the expected one.

    Regular identities must pass.  Expected-failure entries must fail *and*
    show the sign disagreement they exist to demonstrate.
    """
    if report.meta.get("expected_fail"):
        return (not report.passed) and bool(report.meta.get("sign_disagreement"))
    return report.passed


def draw_params(identity_id: str, seed: int = DEFAULT_SEED, count: int = None) -> List[Dict]:
    """Reproducible parameter samples; each identity has its own seeded stream."""
    desc = get_descriptor(identity_id)
    idx = [d.identity_id for d in _CATALOG].index(identity_id)
    rng = np.random.default_rng([seed, idx])
    return [desc.sampler(rng) for _ in range(desc.samples if count is None else count)]


def run_suite(seed: int = DEFAULT_SEED, ids: Sequence[str] = None, samples: int = None) -> List[IdentityReport]:
    """One report per (identity, sample), sorted by identity then sample index."""
    chosen = [d.identity_id for d in _CATALOG] if ids is None else list(ids)
    for i in chosen:
        get_descriptor(i)
    reports = []
    for i in chosen:
        for k, params in enumerate(draw_params(i, seed, samples)):
            rep = run_identity(i, params)
            rep.meta["sample_index"] = k
            reports.append(rep)
    reports.sort(key=lambda r: (r.identity_id, r.meta["sample_index"]))
    return reports


def summarize(reports: Sequence[IdentityReport]) -> Dict[str, int]:
    ok = sum(report_ok(r) for r in reports)
    expected = sum(bool(r.meta.get("expected_fail")) for r in reports)
    return {"reports": len(reports), "ok": ok, "unexpected": len(reports) - ok, "expected_fail": expected}

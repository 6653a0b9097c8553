import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from complex_hermite import kernels as kn
from complex_hermite.errors import ConvergenceError, DomainError
from conftest import disk
from oracles import egf_mp, mehler1_mp, mehler2_mp

T40 = kn.TruncationSpec(max_order=40)


def rel(a, b):
    return abs(a - b) / (1 + max(abs(a), abs(b)))


def test_egf_examples():
    assert kn.egf_closed(kn.KernelArgs(z=5 - 2j, nu=3)) == 1
    assert kn.egf_closed(kn.KernelArgs(u=1, z=1, nu=1)) == pytest.approx(math.e, rel=1e-15)
    got = kn.egf_series(kn.KernelArgs(u=0.2, v=0.1, z=1 + 1j, nu=1), kn.TruncationSpec(30))
    assert rel(got.value, cmath.exp(0.28 + 0.1j)) <= 1e-12
    assert got.order == 30


def test_egf_series_against_mpmath():
    u, v, z, nu = 0.3 - 0.1j, -0.2 + 0.25j, 1.2 - 0.7j, 1.6
    ref = egf_mp(u, v, z, nu, 25)
    got = kn.egf_series(kn.KernelArgs(u=u, v=v, z=z, nu=nu), kn.TruncationSpec(25)).value
    assert rel(got, ref) <= 1e-13


def test_mehler1_examples():
    assert kn.mehler1_closed(kn.KernelArgs(u=0, z=1, w=1, nu=1)) == pytest.approx(math.e, rel=1e-15)
    assert kn.mehler1_closed(kn.KernelArgs(u=0.5, z=1, w=1, nu=1)) == pytest.approx(2 * math.e, rel=1e-15)
    assert kn.mehler1_closed(kn.KernelArgs(u=0.5, z=0, w=0, nu=2)) == pytest.approx(2.0, rel=1e-15)


def test_mehler1_series_against_mpmath():
    u, z, w, nu = 0.4 + 0.2j, 0.8 - 0.3j, -0.5 + 0.6j, 1.3
    ref = mehler1_mp(u, z, w, nu, 30)
    got = kn.mehler1_series(kn.KernelArgs(u=u, z=z, w=w, nu=nu), kn.TruncationSpec(30, 1e-4)).value
    assert rel(got, ref) <= 1e-13


def test_mehler1_three_routes(rng):
    for _ in range(20):
        a = kn.KernelArgs(u=disk(rng, 0.5), z=disk(rng, 1.5), w=disk(rng, 1.5), nu=rng.uniform(0.25, 2))
        closed = kn.mehler1_closed(a)
        assert rel(kn.mehler1_series(a, kn.TruncationSpec(80)).value, closed) <= 1e-10
        assert rel(kn.mehler1_laguerre(a, kn.TruncationSpec(80)).value, closed) <= 1e-10


def test_mehler1_hermitian_symmetry(rng):
    for _ in range(10):
        u, z, w, nu = rng.uniform(-0.6, 0.6), disk(rng, 2), disk(rng, 2), rng.uniform(0.25, 2)
        a = kn.mehler1_closed(kn.KernelArgs(u=u, z=z, w=w, nu=nu))
        b = kn.mehler1_closed(kn.KernelArgs(u=u, z=w, w=z, nu=nu))
        assert rel(a, b.conjugate()) <= 1e-14


def test_mehler1_domain():
    with pytest.raises(DomainError):
        kn.mehler1_closed(kn.KernelArgs(u=1.5))
    with pytest.raises(DomainError):
        kn.mehler1_series(kn.KernelArgs(u=0.97))


def test_mehler2_examples():
    assert kn.mehler2_closed(kn.KernelArgs(z=2, w=3j, nu=1, nu_prime=2)) == 1
    a = kn.KernelArgs(u=0.5, v=0.5, z=0, w=0, nu=1, nu_prime=1)
    assert kn.mehler2_closed(a) == pytest.approx(4 / 3, rel=1e-15)
    assert kn.mehler2_series(a, T40).value == pytest.approx(4 / 3, rel=1e-12)


def test_mehler2_series_against_mpmath():
    u, v, z, w, nu, nup = 0.5 * cmath.exp(0.7j), 0.4 * cmath.exp(-0.7j), 0.6 + 0.2j, -0.3 + 0.9j, 1.1, 0.7
    ref = mehler2_mp(u, v, z, w, nu, nup, 30)
    got = kn.mehler2_series(kn.KernelArgs(u, v, z, w, nu, nup), kn.TruncationSpec(30, 1e-3)).value
    assert rel(got, ref) <= 1e-13


def test_mehler2_swap_symmetry(rng):
    for _ in range(10):
        r, ph = rng.uniform(0.1, 0.6), rng.uniform(0, 2 * np.pi)
        u, v = r * np.exp(1j * ph), 0.8 * r * np.exp(-1j * ph)
        z, w, nu, nup = disk(rng, 1.5), disk(rng, 1.5), rng.uniform(0.5, 1.2), rng.uniform(0.5, 1.2)
        a = kn.mehler2_closed(kn.KernelArgs(u, v, z, w, nu, nup))
        b = kn.mehler2_closed(kn.KernelArgs(u, v, w, z, nup, nu))
        assert rel(a, b) <= 1e-14


def test_mehler2_domain():
    with pytest.raises(DomainError):
        kn.mehler2_closed(kn.KernelArgs(u=1, v=1j))
    with pytest.raises(DomainError):
        kn.mehler2_closed(kn.KernelArgs(u=2, v=1, nu=1, nu_prime=1))


def test_pc1_is_unit_case(rng):
    for _ in range(10):
        r, ph = rng.uniform(0, 0.8), rng.uniform(0, 2 * np.pi)
        u, v = r * np.exp(1j * ph), -0.5 * r * np.exp(-1j * ph)
        z, w = disk(rng, 2), disk(rng, 2)
        assert rel(kn.mehler_pc1_closed(u, v, z, w), kn.mehler2_closed(kn.KernelArgs(u, v, z, w, 1, 1))) <= 1e-14


@pytest.mark.parametrize("name,params", [
    ("MEHLER0", dict(z=0.4 - 0.2j, w=0.3 + 0.5j, nu=0.6, nu_prime=0.9)),
    ("MEHLER1", dict(u=0.3j, v=-0.2j, z=0.7 + 0.1j, nu=1.2)),
    ("MEHLER2", dict(u=0.25, v=0.3, z=-0.5 + 0.8j, nu=1.0)),
    ("MEHLER3", dict(lam=-0.4, z=1.1 - 0.6j, nu=1.5)),
])
def test_specializations(name, params):
    series, closed = kn.specialized_identity(name, T40, **params)
    assert rel(series, closed) <= 1e-9


def test_specialization_domain():
    with pytest.raises(DomainError):
        kn.specialized_identity("MEHLER3", T40, lam=0.8, z=0, nu=1.5)
    with pytest.raises(DomainError):
        kn.specialized_identity("MEHLER9", T40)


def test_specialization_mehler0_matches_mehler2():
    p = dict(z=0.4 - 0.2j, w=0.3 + 0.5j, nu=0.6, nu_prime=0.9)
    _, closed = kn.specialized_identity("MEHLER0", T40, **p)
    assert rel(closed, kn.mehler2_closed(kn.KernelArgs(1, 1, p["z"], p["w"], p["nu"], p["nu_prime"]))) <= 1e-14


def test_gf_single_and_partial(rng):
    for _ in range(10):
        mp_, zeta, w, nu = int(rng.integers(0, 6)), disk(rng, 1), disk(rng, 1.5), rng.uniform(0.25, 2)
        assert rel(kn.gf_single_series(mp_, zeta, w, nu, T40).value, kn.gf_single_closed(mp_, zeta, w, nu)) <= 1e-10
        m, z = int(rng.integers(0, 6)), disk(rng, 1.5)
        got = kn.partial_mehler_series(m, mp_, z, w, nu, kn.TruncationSpec(50)).value
        assert rel(got, kn.partial_mehler_closed(m, mp_, z, w, nu)) <= 1e-9


def test_gf_single_example():
    assert kn.gf_single_closed(0, 0, 1 + 1j, 2.0) == 1
    assert kn.gf_single_closed(1, 0.5, 1.0, 1.0) == pytest.approx(0.5 * math.exp(0.5), rel=1e-15)


def test_classical_mehler():
    assert kn.classical_mehler_closed(0.0, 0.3, -1.2) == 1
    for t, x, y in [(0.5, 1.0, -0.3), (-0.6, 2.0, 2.0), (0.2, -1.5, 0.4)]:
        got = kn.classical_mehler_series(t, x, y, kn.TruncationSpec(80)).value
        assert rel(got, kn.classical_mehler_closed(t, x, y)) <= 1e-10


def test_classical_mehler_domain():
    with pytest.raises(DomainError):
        kn.classical_mehler_closed(1.0, 0, 0)
    with pytest.raises(ConvergenceError):
        kn.classical_mehler_series(0.99, 0.5, 0.5, kn.TruncationSpec(10))


def test_heat_examples():
    a = kn.HeatArgs(t=1.0, z=0, z0=0, nu=1)
    assert kn.heat_kernel_closed(a) == pytest.approx(1 / (math.pi * (1 - math.exp(-1))), rel=1e-14)
    assert kn.heat_kernel_series(a, kn.TruncationSpec(160)).value == pytest.approx(kn.heat_kernel_closed(a), rel=1e-12)
    with pytest.raises(DomainError):
        kn.HeatArgs(t=0.0)


def test_heat_positive_on_diagonal_and_long_time(rng):
    for _ in range(10):
        z, nu = disk(rng, 3), rng.uniform(0.25, 2)
        k = kn.heat_kernel_closed(kn.HeatArgs(t=rng.uniform(0.05, 5), z=z, z0=z, nu=nu))
        assert k.real > 0 and abs(k.imag) <= 1e-15 * abs(k)
        far = kn.heat_kernel_closed(kn.HeatArgs(t=50 / nu, z=z, z0=0.3j, nu=nu))
        assert far == pytest.approx(nu / math.pi * cmath.exp(nu * 0.3j * z.conjugate()), rel=1e-12)


def test_heat_printed_differs():
    # the printed expression has the opposite sign everywhere
    a = kn.HeatArgs(t=0.7, z=0.4 + 0.1j, z0=-0.2j, nu=1.3)
    ratio = kn.heat_kernel_printed(a) / kn.heat_kernel_series(a, kn.TruncationSpec(160)).value
    assert ratio.real < 0
    assert kn.heat_kernel_printed(a).real < 0 < kn.heat_kernel_closed(a).real


def test_truncation_errors():
    with pytest.raises(DomainError):
        kn.TruncationSpec(max_order=0)
    with pytest.raises(DomainError):
        kn.TruncationSpec(tail_tol=-1)
    with pytest.raises(ConvergenceError) as info:
        kn.egf_series(kn.KernelArgs(u=2, v=2, z=3, nu=2), kn.TruncationSpec(5))
    assert info.value.order == 5 and info.value.increment > 0


@given(u=st.complex_numbers(max_magnitude=0.5), z=st.complex_numbers(max_magnitude=1.5),
       nu=st.floats(0.25, 2.0))
@settings(max_examples=40, deadline=None)
def test_mehler1_diagonal_property(u, z, nu):
    a = kn.KernelArgs(u=u, z=z, w=z, nu=nu)
    want = cmath.exp(nu * abs(z) ** 2) / (1 - u)
    assert rel(kn.mehler1_closed(a), want) <= 1e-13
    assert rel(kn.mehler1_series(a, kn.TruncationSpec(80)).value, want) <= 1e-10

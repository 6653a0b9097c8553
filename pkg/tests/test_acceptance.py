"""Acceptance criteria, one test per criterion.

Each test records a single PASS/FAIL line; the lines are echoed after the
run in the "acceptance criteria" section of the terminal summary.
"""
import csv
import io
import itertools
import math
import time

import numpy as np
import pytest

from complex_hermite import cli
from complex_hermite import hermite_core as hc
from complex_hermite import kernels as kn
from complex_hermite import quadrature as qd
from complex_hermite import verify as vf
from complex_hermite.report import IdentityReport, relative_error
from conftest import ACCEPTANCE_LINES

SEED = 2024


def record(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title} ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def disk(rng, r):
    return complex(r * math.sqrt(rng.random()) * np.exp(2j * math.pi * rng.random()))


def test_criterion_01_eigen_equation():
    hc.chp_poly.cache_clear()
    start = time.perf_counter()
    bad = []
    for m in range(11):
        for n in range(11):
            h = hc.chp_poly(m, n)
            if hc.magnetic_laplacian_apply(h) != (h * m).shift(0, 0, 1):
                bad.append((m, n))
    elapsed = time.perf_counter() - start
    record(1, "exact eigen-equation, 0 <= m, n <= 10", not bad and elapsed < 1.0,
           f"{121 - len(bad)}/121 exact, {elapsed:.3f} s")


def test_criterion_02_three_way_consistency():
    rng = np.random.default_rng([SEED, 2])
    zs = [0j, 2.0 + 0j, -2j, 1.2 - 1.6j] + [disk(rng, 2) for _ in range(4)]
    start = time.perf_counter()
    worst = 0.0
    count = 0
    for nu in (0.5, 1.0, 2.0):
        params = [qd.IntegralRepParams.for_nu(nu, 1.0), qd.IntegralRepParams(0.7, 0.9 + 0.4j, 0.7 * nu / (0.9 + 0.4j))]
        for z in zs:
            for m in range(9):
                for n in range(9 - m):
                    re, im = hc.chp_poly(m, n).evaluate_exact(z, nu)
                    exact = complex(float(re), float(im))
                    rec = hc.chp_eval(m, n, z, nu)
                    p = params[count % 2]
                    quad = qd.chp_integral_rep(m, n, z, p)
                    worst = max(worst, relative_error(exact, rec), relative_error(exact, quad),
                                relative_error(rec, quad))
                    count += 1
    elapsed = time.perf_counter() - start
    record(2, "explicit sum / recurrence / integral representation, m+n <= 8, |z| <= 2",
           worst <= 1e-8 and elapsed < 10.0, f"{count} triples, worst rel {worst:.2e}, {elapsed:.2f} s")


def test_criterion_03_egf():
    trunc = kn.TruncationSpec(30)
    reports = [vf.run_identity("EGF", p, trunc) for p in vf.draw_params("EGF", SEED, 50)]
    worst = max(r.rel_err for r in reports)
    record(3, "EGF series (M=30) vs closed form, 50 samples", all(r.passed for r in reports) and worst <= 1e-11,
           f"worst rel {worst:.2e}")


def test_criterion_04_first_mehler():
    rng = np.random.default_rng([SEED, 4])
    trunc = kn.TruncationSpec(40)
    worst = 0.0
    for _ in range(50):
        a = kn.KernelArgs(u=disk(rng, 0.6), z=disk(rng, 0.25), w=disk(rng, 0.25), nu=rng.uniform(0.25, 1.0))
        worst = max(worst, relative_error(kn.mehler1_series(a, trunc).value, kn.mehler1_closed(a)))
    # wider region, same identity, larger cutoff
    wide = [vf.run_identity("MEHLER1", p) for p in vf.draw_params("MEHLER1", SEED, 50)]
    worst_wide = max(r.rel_err for r in wide)
    # diagonal case
    diag_worst = 0.0
    for _ in range(50):
        u, z, nu = disk(rng, 0.6), disk(rng, 1.5), rng.uniform(0.25, 2)
        want = math.exp(nu * abs(z) ** 2) / (1 - u)
        a = kn.KernelArgs(u=u, z=z, w=z, nu=nu)
        diag_worst = max(diag_worst, relative_error(kn.mehler1_closed(a), want),
                         relative_error(kn.mehler1_series(a, kn.TruncationSpec(80)).value, want))
    ok = worst <= 1e-9 and worst_wide <= 1e-9 and diag_worst <= 1e-10
    record(4, "first Mehler formula, |u| <= 0.6, and its diagonal case", ok,
           f"M=40 worst {worst:.2e}; M=80 wide region worst {worst_wide:.2e}; diagonal worst {diag_worst:.2e}")


def test_criterion_05_second_mehler():
    reports = [vf.run_identity("MEHLER2", p, kn.TruncationSpec(40)) for p in vf.draw_params("MEHLER2", SEED, 50)]
    mixed = sum(1 for r in reports if r.params["nu"] != r.params["nu_prime"])
    in_region = all(abs((r.params["u"] * r.params["v"]).imag) < 1e-12
                    and r.params["nu"] * r.params["nu_prime"] * (r.params["u"] * r.params["v"]).real <= 0.5
                    for r in reports)
    worst = max(r.rel_err for r in reports)
    cor = {}
    for name in ("COR_MEHLER0", "COR_MEHLER1", "COR_MEHLER2", "COR_MEHLER3"):
        reps = [vf.run_identity(name, p) for p in vf.draw_params(name, SEED, 20)]
        cor[name] = (all(r.passed for r in reps), max(r.rel_err for r in reps))
    ok = all(r.passed for r in reports) and worst <= 1e-9 and mixed > 0 and in_region \
        and all(p and w <= 1e-9 for p, w in cor.values())
    detail = f"worst {worst:.2e}, {mixed}/50 with nu != nu'; " + ", ".join(
        f"{k[4:]} {w:.1e}" for k, (_, w) in cor.items())
    record(5, "second Mehler formula and four specializations", ok, detail)


def test_criterion_06_heat_kernel():
    rng = np.random.default_rng([SEED, 6])
    trunc = kn.TruncationSpec(160)
    worst = 0.0
    for t in (0.5, 1.0, 2.0):
        for nu in (0.5, 1.0, 2.0):
            for _ in range(4):
                a = kn.HeatArgs(t, disk(rng, 1), disk(rng, 1), nu)
                worst = max(worst, relative_error(kn.heat_kernel_series(a, trunc).value, kn.heat_kernel_closed(a)))
    mismatch = [vf.run_identity("HEAT_PRINTED_MISMATCH", p) for p in vf.draw_params("HEAT_PRINTED_MISMATCH", SEED, 5)]
    demo = vf.run_identity("HEAT_PRINTED_MISMATCH", dict(t=1.0, z=0.3 + 0j, z0=0j, nu=1.0))
    mismatch.append(demo)
    shown = any(r.meta["sign_disagreement"] for r in mismatch)
    expected_ok = all(vf.report_ok(r) for r in mismatch)
    record(6, "heat kernel spectral sum vs derived closed form; printed form sign mismatch",
           worst <= 1e-9 and shown and expected_ok,
           f"worst rel {worst:.2e}; printed/series ratio at t=1: {demo.meta['printed_over_series'].real:.3f}")


def test_criterion_07_gram_matrix():
    idx = [(m, n) for m in range(5) for n in range(5) if m + n <= 4]
    start = time.perf_counter()
    diag_worst, off_worst = 0.0, 0.0
    for nu in (0.5, 1.0, 2.0):
        g = qd.gram_matrix(idx, nu, qd.QuadratureRule(64, nu))
        closed = np.array([qd.norm_squared_closed(m, n, nu) for m, n in idx])
        diag_worst = max(diag_worst, float(np.max(np.abs(np.diag(g) - closed) / closed)))
        off = g - np.diag(np.diag(g))
        off_worst = max(off_worst, float(np.max(np.abs(off))))
    elapsed = time.perf_counter() - start
    record(7, "Gram matrix, m+n <= 4, 64 nodes",
           diag_worst <= 1e-8 and off_worst < 1e-10 and elapsed < 30,
           f"diag rel {diag_worst:.2e}, off-diag abs {off_worst:.2e}, {elapsed:.2f} s")


def test_criterion_08_self_reciprocity():
    samples = vf.draw_params("SELF_RECIPROCITY", SEED, 10)
    reports = []
    for p in samples:
        for j, k in itertools.product(range(4), repeat=2):
            reports.append(qd.self_reciprocity_check(j, k, p["u"], p["v"], p["z"], p["nu"], p["nu_prime"]))
    worst = max(r.rel_err for r in reports)
    printed = [r.meta["printed_rel_err"] for r in reports]
    # the printed coupling sign is tracked in every report
    record(8, "self-reciprocity, j, k <= 3, 10 samples", all(r.passed for r in reports) and worst <= 1e-6,
           f"{len(reports)} checks, worst rel {worst:.2e}; printed grouping worst {max(printed):.2e}")


def test_criterion_09_fourier_eigen():
    rng = np.random.default_rng([SEED, 9])
    zs = [disk(rng, 2) for _ in range(10)]
    reports = [qd.fourier_eigen_check(j, k, z) for z in zs for j in range(5) for k in range(5)]
    worst = max(r.rel_err for r in reports)
    record(9, "Fourier eigenfunction identity, j, k <= 4, 10 samples",
           all(r.passed for r in reports) and worst <= 1e-6, f"{len(reports)} checks, worst rel {worst:.2e}")


def test_criterion_10_classical_mehler():
    rng = np.random.default_rng([SEED, 10])
    grid = list(itertools.product(np.linspace(-0.6, 0.6, 7), np.linspace(-2, 2, 5), np.linspace(-2, 2, 5)))
    grid += [(rng.uniform(-0.6, 0.6), rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(50)]
    trunc = kn.TruncationSpec(80)
    worst = max(relative_error(kn.classical_mehler_series(t, x, y, trunc).value, kn.classical_mehler_closed(t, x, y))
                for t, x, y in grid)
    record(10, "classical Mehler formula, |t| <= 0.6, |x|, |y| <= 2", worst <= 1e-10,
           f"{len(grid)} points, worst rel {worst:.2e}")


def test_criterion_11_cli_contract(capsys, monkeypatch, tmp_path):
    codes = {}
    codes[0] = cli.main(["eval", "--m", "1", "--n", "1", "--z", "1+0i", "--nu", "2"])
    codes[1] = cli.main(["eval", "--m", "1", "--n", "1", "--z", "0", "--nu", "-1"])
    codes[2] = cli.main(["verify", "--id", "NOSUCH"])
    grid = tmp_path / "grid.csv"
    csv_code = cli.main(["heat-grid", "--t", "1", "--steps", "7", "--out", str(grid)])
    rows = list(csv.reader(grid.open()))
    csv_ok = csv_code == 0 and rows[0] == ["x", "y", "re", "im"] and len(rows) - 1 == 49
    start = time.perf_counter()
    all_code = cli.main(["verify", "--all"])
    elapsed = time.perf_counter() - start
    with monkeypatch.context() as mp:
        bad = IdentityReport.compare("EGF", {}, 1.0, 2.0, 1e-11, {"sample_index": 0})
        mp.setattr(cli.vf, "run_suite", lambda **kw: [bad])
        codes[3] = cli.main(["verify", "--id", "EGF"])
    capsys.readouterr()
    ok = all(code == want for want, code in codes.items()) and csv_ok and all_code == 0 and elapsed < 120
    record(11, "CLI exit codes, CSV rows, verify --all", ok,
           f"exit codes {[codes[i] for i in range(4)]}, csv rows {len(rows) - 1}, verify --all exit {all_code} in {elapsed:.2f} s")

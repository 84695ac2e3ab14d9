"""Exit criteria for the build, one test (or parametrised family) each.

Each test records a PASS/FAIL line shown in the pytest terminal summary.
"""

import csv
import math
import time
from dataclasses import replace

import numpy as np
import pytest

from casimir_diff.cli import EXIT_OK, main
from casimir_diff.constants import C, HBAR, KB, ZETA3
from casimir_diff.lifshitz import GapConfiguration, ThermalSpec, evaluate, thermal_length
from casimir_diff.materials import DRUDE, GOLD, PLASMA, Drude, Oscillator, Plasma, drude_table, kramers_kronig
from casimir_diff.pfa import ApparatusGeometry, delta_force, delta_force_gradient
from casimir_diff.strata import TE, TM, Layer, LayerStack, _compose, fresnel, kz, stack_reflection
from casimir_diff.validation import ideal_mirror_pressure

GEOM = ApparatusGeometry()


def ratio(a):
    d = delta_force(a, GEOM, ThermalSpec(prescription=DRUDE))
    p = delta_force(a, GEOM, ThermalSpec(prescription=PLASMA))
    return p / d


def test_1_ideal_mirror(record):
    a = 1e-6
    t0 = time.perf_counter()
    mirror = LayerStack(Plasma(1e4 * C / a))
    temperature = HBAR * C / (2 * math.pi * KB * 2e3 * a)  # thermal length 2000 a
    p = -evaluate(GapConfiguration(mirror, mirror, a), ThermalSpec(temperature, PLASMA), quantities=(1,)).pressure
    elapsed = time.perf_counter() - t0
    dev = abs(p / ideal_mirror_pressure(a) - 1)
    ok = record(1, dev < 5e-3 and elapsed < 10, f"ideal-mirror rel dev {dev:.2e} (<5e-3), {elapsed:.2f}s (<10s)")
    assert ok


def test_2_classical_limits(record):
    a, T = 10e-6, 300.0
    t0 = time.perf_counter()
    au = LayerStack(GOLD)
    cl = ZETA3 * KB * T / (8 * math.pi * a**3)
    pd = -evaluate(GapConfiguration(au, au, a), ThermalSpec(T, DRUDE), quantities=(1,)).pressure
    pp = -evaluate(GapConfiguration(au, au, a), ThermalSpec(T, PLASMA), quantities=(1,)).pressure
    elapsed = time.perf_counter() - t0
    dd, dp = abs(pd / cl - 1), abs(pp / (2 * cl) - 1)
    ok = record(2, dd < 0.02 and dp < 0.05 and elapsed < 30,
                f"Drude dev {dd:.2e} (<2%), plasma dev {dp:.2e} (<5%), {elapsed:.2f}s (<30s)")
    assert ok


def test_3_thermal_length(record):
    lt = thermal_length(300.0)
    dev = abs(lt / 1.2e-6 - 1)
    assert record(3, dev < 0.02, f"lambda_T(300 K) = {lt * 1e6:.4f} um, dev {dev:.2%} (<2%)")


def test_4_ratio_at_3um(record):
    t0 = time.perf_counter()
    r = ratio(3e-6)
    elapsed = time.perf_counter() - t0
    ok = record(4, abs(r / 14 - 1) <= 0.30 and elapsed < 120,
                f"|dF_plasma/dF_drude|(3 um) = {r:.3f} (14 +/- 30%), {elapsed:.2f}s (<120s)")
    assert ok


def test_5_ratio_at_4um(record):
    r3, r4 = ratio(3e-6), ratio(4e-6)
    ok = record(5, abs(r4 / 50 - 1) <= 0.40 and r4 > r3,
                f"ratio(4 um) = {r4:.2f} (50 +/- 40%), exceeds ratio(3 um) = {r3:.2f}")
    assert ok


@pytest.mark.parametrize("prescription", [DRUDE, PLASMA])
@pytest.mark.parametrize("perturbation", ["step_20nm", "delta_w_20nm"])
def test_6_robustness(record, perturbation, prescription):
    th = ThermalSpec(prescription=prescription)
    if perturbation == "step_20nm":
        perturbed = replace(GEOM, step_height=20e-9)
    else:
        # Si-side over-layer thicker by dw, exposed surfaces level
        perturbed = replace(GEOM, overlayer_thickness_si_side=GEOM.overlayer_thickness_au_side + 20e-9)
    base = delta_force(3e-6, GEOM, th)
    moved = delta_force(3e-6, perturbed, th)
    change = abs(moved - base) / abs(base)
    ok = record(6, change < 0.10, f"{perturbation} {prescription}: |dF| change at 3 um {change:.1%} (<10%)")
    assert ok


@pytest.mark.parametrize("a", [0.5e-6, 2e-6, 8e-6])
def test_7_derivative_consistency(record, a):
    h = a * 1e-4
    gap = lambda s: GapConfiguration(LayerStack(GOLD), GEOM.plate("si"), s)
    worst = {}
    for presc in (DRUDE, PLASMA):
        th = ThermalSpec(prescription=presc)
        mid, up, down = evaluate(gap(a), th), evaluate(gap(a + h), th), evaluate(gap(a - h), th)
        e_p = abs(-(up.free_energy - down.free_energy) / (2 * h) / mid.pressure - 1)
        e_g = abs((up.pressure - down.pressure) / (2 * h) / mid.pressure_gradient - 1)
        fd_df = (delta_force(a + h, GEOM, th) - delta_force(a - h, GEOM, th)) / (2 * h)
        e_d = abs(fd_df / delta_force_gradient(a, GEOM, th) - 1)
        for key, val in (("P", e_p), ("P'", e_g), ("dF'", e_d)):
            worst[key] = max(worst.get(key, 0.0), val)
    ok = worst["P"] < 1e-5 and worst["P'"] < 1e-4 and worst["dF'"] < 1e-4
    wp, wg, wd = worst["P"], worst["P'"], worst["dF'"]
    record(7, ok, f"a={a * 1e6:g} um: P vs FD(F) {wp:.1e} (<1e-5), P' vs FD(P) {wg:.1e} (<1e-4), "
                  f"dF' vs FD(dF) {wd:.1e} (<1e-4)")
    assert ok


def test_8_reflection_identities(record):
    rng = np.random.default_rng(20260101)
    n = 10_000
    eps = 10 ** rng.uniform(0, 4, size=(n, 3))
    xi = 10 ** rng.uniform(11, 17, n)
    k = 10 ** rng.uniform(3, 9, n)
    w = 10 ** rng.uniform(-10, -5, n)
    pols = rng.choice([TE, TM], n)
    failures = {"w->0": 0, "opaque": 0, "split": 0, "antisym": 0, "|r|<1": 0}
    tol = 1e-12  # |r| <= 1 sets the scale
    const = lambda e: Oscillator(e, e, 1e15)
    for i in range(n):
        pol, (e1, e2, e3) = pols[i], eps[i]
        r01 = fresnel(pol, 1.0, e1, xi[i], k[i])
        r12 = fresnel(pol, e1, e2, xi[i], k[i])
        r02 = fresnel(pol, 1.0, e2, xi[i], k[i])
        if abs(_compose(r01, 1.0, r12) - r02) > tol:
            failures["w->0"] += 1
        m1, m2, m3 = const(e1), const(e2), const(e3)
        opaque = stack_reflection(pol, LayerStack(m2, (Layer(m1, 1.0),)), xi[i], k[i])
        if abs(opaque - r01) > tol:
            failures["opaque"] += 1
        one = stack_reflection(pol, LayerStack(m2, (Layer(m1, w[i]),)), xi[i], k[i])
        two = stack_reflection(pol, LayerStack(m2, (Layer(m1, w[i] / 2), Layer(m1, w[i] / 2))), xi[i], k[i])
        if abs(one - two) > tol:
            failures["split"] += 1
        if abs(r12 + fresnel(pol, e2, e1, xi[i], k[i])) > tol:
            failures["antisym"] += 1
        three = stack_reflection(pol, LayerStack(m3, (Layer(m1, w[i]), Layer(m2, w[i]))), xi[i], k[i])
        if not (abs(r12) < 1 or e1 == e2) or not abs(one) <= 1 or not abs(three) <= 1:
            failures["|r|<1"] += 1
    total = sum(failures.values())
    assert record(8, total == 0, f"{n} random cases, failures {failures}")


def test_9_kramers_kronig(record):
    table = drude_table(GOLD, np.logspace(12, 18, 300))
    xi = np.logspace(13, 17, 81)
    dev = np.max(np.abs(kramers_kronig(table, xi) / GOLD.epsilon(xi) - 1))
    assert record(9, dev < 1e-3, f"KK vs closed-form Drude over [1e13, 1e17] rad/s: max rel dev {dev:.2e} (<1e-3)")


@pytest.fixture(scope="module")
def full_sweep(tmp_path_factory):
    d = tmp_path_factory.mktemp("sweep")
    out = d / "w1.csv"
    t0 = time.perf_counter()
    code = main(["-q", "sweep", "--out", str(out), "--workers", "1"])
    return code, out, time.perf_counter() - t0


def test_10_determinism(record, full_sweep, tmp_path):
    code, first, _ = full_sweep
    second = tmp_path / "w2.csv"
    code2 = main(["-q", "sweep", "--out", str(second), "--workers", "2"])
    same = code == code2 == EXIT_OK and first.read_bytes() == second.read_bytes()
    assert record(10, same, "byte-identical sweep CSV with --workers 1 and --workers 2")


def test_11_full_sweep(record, full_sweep):
    code, out, elapsed = full_sweep
    with open(out) as fh:
        rows = list(csv.DictReader(fh))
    a = np.array([float(r["a_um"]) for r in rows])
    mono = True
    for col in ("deltaF_fN_drude", "deltaF_fN_plasma"):
        v = np.abs([float(r[col]) for r in rows])[a > 1.5]
        mono &= bool(np.all(np.diff(v) < 0))
    ok = code == EXIT_OK and len(rows) == 26 and a[0] == 1 and a[-1] == 6 and elapsed < 600 and mono
    assert record(11, ok, f"26-point sweep 1-6 um in {elapsed:.1f}s (<600s), |dF| decreasing beyond 1.5 um: {mono}")

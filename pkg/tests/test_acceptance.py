"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Heavy Monte Carlo settings follow the stated trial counts; every run is
seeded, so outcomes are reproducible bit-for-bit.
"""

import dataclasses
import math

import numpy as np

from seqfuse import (
    Awgn,
    GroundTruth,
    LocalIncrements,
    QuantIndex,
    Rayleigh,
    SchemeConfig,
    SchemeKind,
    SensorModel,
    SensorState,
    UProcess,
    VProcess,
    awgn_stopping_time,
    calibrate_threshold,
    decode_message,
    encode_message,
    ks_test_standard_normal,
    measure_mean_interval,
    payload_bits,
    sensor_step,
)
from seqfuse.calibration import worst_case_x
from seqfuse.estimators import ObsBits, ULt, UUni, VFinal, VLt, VUni
from seqfuse.experiments import (
    ExperimentConfig,
    GridCell,
    build_scheme_config,
    build_world,
    calibrate_cell,
    run_cell,
    run_sweep,
    run_trial,
)
from seqfuse.figures import figure_sweeps
from seqfuse.rng import mix64, sensor_generator


def report(name, ok, detail):
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, f"{name}: {detail}"


def test_c01_awgn_stopping_grid():
    sensors = (SensorModel(1.0, Awgn(1 + 0j)),) * 5  # 0 dB
    got = [awgn_stopping_time(25.0 * 2 ** m, sensors) for m in range(6)]
    report("C1 stopping grid", got == [3, 5, 10, 20, 40, 80], f"t = {got}")


def test_c02_centralized_efficiency():
    # fixed-time MLE at t=10, K=5, 0 dB: variance * information in [0.97, 1.03]
    rng = np.random.default_rng(20_260_201)
    n, k, t = 100_000, 5, 10
    x = 2 + 2j
    h = np.ones((n, k, t), dtype=np.complex128)
    w = math.sqrt(0.5) * (rng.standard_normal((n, k, t))
                          + 1j * rng.standard_normal((n, k, t)))
    y = x * h + w
    v = (2.0 * (np.conj(h) * y).real).sum(axis=(1, 2))
    u = (2.0 * np.abs(h) ** 2).sum(axis=(1, 2))
    est = v / u
    ratio = est.var() * u[0]
    se = est.std() / math.sqrt(n)
    mean_ok = abs(est.mean() - x.real) <= 4 * se
    report("C2 centralized efficiency", 0.97 <= ratio <= 1.03 and mean_ok,
           f"var*U = {ratio:.4f}, |mean-x| = {abs(est.mean() - x.real):.2e} (4se = {4 * se:.2e})")


def test_c03_score_normality():
    # per trial: fresh fading channel path, S_t / sqrt(U_t) against N(0,1)
    rng = np.random.default_rng(31)
    n, k, t = 10_000, 5, 10
    x = 2 + 2j
    h = math.sqrt(0.5) * (rng.standard_normal((n, k, t))
                          + 1j * rng.standard_normal((n, k, t)))
    w = math.sqrt(0.5) * (rng.standard_normal((n, k, t))
                          + 1j * rng.standard_normal((n, k, t)))
    y = x * h + w
    v = (2.0 * (np.conj(h) * y).real).sum(axis=(1, 2))
    u = (2.0 * np.abs(h) ** 2).sum(axis=(1, 2))
    score = v - x.real * u
    res = ks_test_standard_normal(score / np.sqrt(u))
    report("C3 score normality", res.p_value > 0.01,
           f"KS stat = {res.statistic:.4f}, p = {res.p_value:.3f}")


def test_c04_stopping_sandwich():
    cfg = figure_sweeps(trials=10_000, master_seed=41)["fading_vs_mse"]
    g = 2  # info target 100
    cell = cfg.cells[g]
    world = build_world(cfg, cell)
    calib = calibrate_cell(cfg, g, cell, world)
    sconf = build_scheme_config(cfg, cell, world, calib, SchemeKind.LT_DSDMLE, g)
    slack = sum(sconf.e[k] + sconf.theta[k] * (2 ** (sconf.bits_u + 1) - 1)
                / 2 ** (sconf.bits_u + 1) for k in range(len(world.sensors)))
    worst_lo, worst_hi = math.inf, -math.inf
    violations = 0
    for i in range(10_000):
        r = run_trial(sconf, world, mix64(41, g, 0, i))
        worst_lo = min(worst_lo, r.u_tilde)
        worst_hi = max(worst_hi, r.u_tilde)
        if not cell.info_target <= r.u_tilde < cell.info_target + slack:
            violations += 1
    report("C4 stopping sandwich", violations == 0,
           f"u_tilde in [{worst_lo:.3f}, {worst_hi:.3f}] vs "
           f"[{cell.info_target}, {cell.info_target + slack:.3f}), {violations} violations")


def test_c05_fixed_gain_mse_ordering():
    cfg = figure_sweeps(trials=100_000, master_seed=51)["awgn_vs_stop_time"]
    keep = (0, 1, 2, 5)
    cfg = dataclasses.replace(cfg, schemes=("dmle", "lt-dmle"),
                              cells=tuple(cfg.cells[g] for g in keep))
    aggs = run_sweep(cfg, threads=2)
    lines = []
    ok = True
    for pos, g in enumerate(keep):
        by = {a.scheme: a for a in aggs[2 * pos:2 * pos + 2]}
        lt, dm = by["lt-dmle"], by["dmle"]
        if g != 5:
            sep = lt.mse + lt.mse_ci95 < dm.mse - dm.mse_ci95
        else:
            sep = dm.mse + dm.mse_ci95 < lt.mse - lt.mse_ci95
        ok = ok and sep
        lines.append(f"t={int(lt.mean_stop)}: lt={lt.mse:.5f} dmle={dm.mse:.5f}")
    report("C5 fixed-gain MSE ordering", ok, "; ".join(lines))


def test_c06_observation_baseline_flatness():
    # K=5, 0 dB fading, bound 5, coupled target grid; the sign-bit baseline
    # uses neither thresholds nor spans, only its inversion constants
    cfg = figure_sweeps(trials=10_000, master_seed=61)["fading_vs_mse"]
    cells = tuple(dataclasses.replace(c, x_bound=5.0) for c in cfg.cells)
    cfg = dataclasses.replace(cfg, schemes=("obs-mle",), cells=cells)
    mses = []
    for g in range(6):
        aggs, _ = run_cell(cfg, g)
        mses.append(aggs[0].mse)
    in_band = all(0.25 <= v <= 0.42 for v in mses)
    decrease = (mses[0] - mses[-1]) / mses[0]
    report("C6 observation-baseline flatness", in_band and decrease < 0.25,
           "mse = " + ", ".join(f"{v:.4f}" for v in mses) + f"; decrease = {decrease:.1%}")


def test_c07_overshoot_bound():
    # a million triggered messages, each overshoot below its last increment
    sensor = SensorModel(1.0, Rayleigh(1.0))
    truth = GroundTruth(worst_case_x(5.0), 5.0)
    rng = sensor_generator(71, 0)
    d = calibrate_threshold(VProcess(truth.x), sensor, 2.0, rng=rng)
    e = calibrate_threshold(UProcess(), sensor, 2.0, rng=rng)
    config = SchemeConfig(kind=SchemeKind.LT_DSDMLE, target_info=1.0, d=(d,), e=(e,),
                          phi=(40.0,), theta=(12.0,), bits_v=2, bits_u=2)
    from seqfuse.signal_model import IncrementStream
    stream = IncrementStream(truth.x, sensor, sensor_generator(72, 0))
    state = SensorState(0)
    triggers = 0
    violations = 0
    t = 0
    while triggers < 1_000_000:
        v, u = stream.take(1)
        t += 1
        prev_v_ref, prev_u_ref = state.v_ref, state.u_ref
        msgs = sensor_step(config, state, LocalIncrements(float(v[0]), 0.0, float(u[0])), t)
        for m in msgs:
            triggers += 1
            if isinstance(m, VLt):
                q = abs(state.v_acc - prev_v_ref) - d
                if not q < abs(float(v[0])):
                    violations += 1
            else:
                p = (state.u_acc - prev_u_ref) - e
                if not p < float(u[0]):
                    violations += 1
    report("C7 overshoot bound", violations == 0,
           f"{triggers} triggers, {violations} violations")


def test_c08_calibration_fidelity():
    sensor = SensorModel(1.0, Rayleigh(1.0))
    x = worst_case_x(5.0)
    ok = True
    details = []
    for target in (2.0, 5.0, 10.0):
        d = calibrate_threshold(VProcess(x), sensor, target,
                                rng=sensor_generator(81, int(target)), n_paths=16_000)
        got = measure_mean_interval(VProcess(x), sensor, d,
                                    sensor_generator(82, int(target)), n_paths=60_000)
        rel = abs(got - target) / target
        ok = ok and rel <= 0.02
        details.append(f"T={target:g}: achieved {got:.3f} ({rel:.2%})")
    d5 = calibrate_threshold(VProcess(x), sensor, 5.0, rng=sensor_generator(83, 0),
                             n_paths=16_000)
    base = measure_mean_interval(VProcess(x), sensor, d5, sensor_generator(84, 0),
                                 n_paths=60_000)
    double = measure_mean_interval(VProcess(x), sensor, 2 * d5, sensor_generator(84, 1),
                                   n_paths=60_000)
    factor = double / base
    ok = ok and 1.6 <= factor <= 2.4
    details.append(f"doubling factor {factor:.2f}")
    report("C8 calibration fidelity", ok, "; ".join(details))


def test_c09_codec_fuzz():
    rng = np.random.default_rng(91)
    config = SchemeConfig(kind=SchemeKind.LT_DSDMLE, target_info=10.0, d=(1.0,) * 8,
                          e=(1.0,) * 8, phi=(1.0,) * 8, theta=(1.0,) * 8,
                          bits_v=3, bits_u=2, bits_final=(5, 1, 9, 3, 7, 11, 2, 16))
    checked = 0
    bits_ok = True
    for _ in range(10_000):
        k = int(rng.integers(0, 8))
        pick = int(rng.integers(0, 6))
        if pick == 0:
            msg = VLt(k, 1, int(rng.choice((-1, 1))), QuantIndex(int(rng.integers(0, 4)), 2))
            expect = config.bits_v  # sign bit plus overshoot bits
        elif pick == 1:
            msg = ULt(k, 1, QuantIndex(int(rng.integers(0, 4)), 2))
            expect = config.bits_u
        elif pick == 2:
            msg = VUni(k, 1, QuantIndex(int(rng.integers(0, 8)), 3))
            expect = config.bits_v
        elif pick == 3:
            msg = UUni(k, 1, QuantIndex(int(rng.integers(0, 4)), 2))
            expect = config.bits_u
        elif pick == 4:
            w = config.bits_final[k]
            msg = VFinal(k, 1, QuantIndex(int(rng.integers(0, 2 ** w)), w))
            expect = w
        else:
            msg = ObsBits(k, 1, *(int(b) for b in rng.integers(0, 2, 4)))
            expect = 4
        blob, nbits = encode_message(msg, config)
        bits_ok = bits_ok and payload_bits(config, msg) == expect and nbits == 11 + expect
        if decode_message(blob, nbits, config, t=1) != msg:
            break
        checked += 1
    report("C9 codec fuzz", checked == 10_000 and bits_ok,
           f"{checked} messages round-tripped, declared widths consistent")


def test_c10_asymptotic_trend():
    # thresholds grown as 1.4^m against targets 25 * 2^m; the normalized error
    # sqrt(u_tilde) * (estimate - x) should approach unit variance
    cells = tuple(GridCell(25.0 * 2 ** m, 2.0 * 1.4 ** m, 2.0 * 1.4 ** m, 2, 0.0, 0.5)
                  for m in range(6))
    cfg = ExperimentConfig(schemes=("lt-dsdmle",), channel="rayleigh", cells=cells,
                           trials=10_000, master_seed=101, bits_v=2, bits_u=2)
    def stat_var(g):
        cell = cfg.cells[g]
        world = build_world(cfg, cell)
        calib = calibrate_cell(cfg, g, cell, world)
        sconf = build_scheme_config(cfg, cell, world, calib, SchemeKind.LT_DSDMLE, g)
        vals = [None] * cfg.trials
        for i in range(cfg.trials):
            r = run_trial(sconf, world, mix64(cfg.master_seed, g, 0, i))
            vals[i] = math.sqrt(r.u_tilde) * (r.estimate - r.true_x_re)
        return float(np.var(np.asarray(vals)))
    v0 = stat_var(0)
    v5 = stat_var(5)
    ok = 0.8 <= v5 <= 1.2 and abs(v5 - 1.0) < abs(v0 - 1.0)
    report("C10 asymptotic trend", ok, f"var(m=0) = {v0:.3f}, var(m=5) = {v5:.3f}")

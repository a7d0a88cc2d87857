"""Trial engine, Monte Carlo sweeps, aggregation, and CSV persistence.

One trial advances all sensors through synchronous time steps: each step every
sensor absorbs a fresh increment, triggers produce messages, the fusion
center applies the whole step's messages (ascending sensor id, U before V)
and then checks its stop rule.  The engine generates paths and locates
triggers in fixed 128-step blocks of numpy work but applies every message
with the same scalar state-machine operations the unit tests exercise, so a
trial is bit-identical to a naive step-by-step run and to any rerun of the
same (config, seed).

Seed derivation: trial_seed = mix64(master_seed, grid_index, scheme_index,
trial_index) with the splitmix64 folding documented in :mod:`seqfuse.rng`;
per-sensor streams are Philox-keyed by (trial_seed, sensor).  Results are
therefore independent of execution order and thread count.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .calibration import (
    CalibrationReport,
    UProcess,
    VProcess,
    calibrate_threshold,
    mean_trigger_count,
    measure_mean_interval,
    percentile_phi,
    percentile_theta,
    worst_case_x,
)
from .errors import ConfigError, NonTerminatingError
from .estimators import (
    FcState,
    ObsBits,
    SchemeConfig,
    SchemeKind,
    SensorState,
    ULt,
    UUni,
    VLt,
    VUni,
    _ltu_q,
    _ltv_q,
    _uniu_q,
    _univ_q,
    fc_apply,
    finalize,
)
from .quantization import MAX_BITS, quantize
from .rng import mix64, sensor_generator
from .signal_model import (
    DEFAULT_STEP_CAP,
    Awgn,
    GroundTruth,
    IncrementStream,
    Rayleigh,
    SensorModel,
    awgn_stopping_time,
    centralized_estimate,
)

_CAL_TAG = 0xCA11B7A6  # seed-domain separator for calibration streams


@dataclass(frozen=True)
class World:
    truth: GroundTruth
    sensors: tuple


@dataclass(frozen=True)
class GridCell:
    """One grid point: an explicit (info, T_V, T_U) pairing plus the world shape."""

    info_target: float
    t_v: float
    t_u: float
    n_sensors: int
    snr_db: float
    x_bound: float
    x_re: float | None = None
    x_im: float | None = None


@dataclass(frozen=True)
class ExperimentConfig:
    schemes: tuple
    channel: str  # "awgn" or "rayleigh"
    cells: tuple
    trials: int
    master_seed: int
    bits_v: int = 1
    bits_u: int = 1
    x_re: float | None = None
    x_im: float | None = None
    calibrate_x: str = "worst"  # "worst" (at the bound) or "actual"
    obs_theta: float | None = None
    obs_sigma: float | None = None
    calibration: CalibrationReport | None = None
    output_path: str | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if not self.cells:
            raise ConfigError("empty grid")
        if self.channel not in ("awgn", "rayleigh"):
            raise ConfigError(f"unknown channel {self.channel!r}")
        try:
            kinds = tuple(SchemeKind(s) for s in self.schemes)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if not kinds:
            raise ConfigError("no schemes configured")
        object.__setattr__(self, "schemes", tuple(k.value for k in kinds))
        if self.calibrate_x not in ("worst", "actual"):
            raise ConfigError("calibrate_x must be 'worst' or 'actual'")


def product_grid(info_pairs, sensors, snr_db, x_bound) -> tuple:
    """Cross product of the explicit (info, T_V, T_U) list with the other axes."""
    cells = []
    for (info, t_v, t_u), k, snr, xb in itertools.product(info_pairs, sensors, snr_db, x_bound):
        cells.append(GridCell(float(info), float(t_v), float(t_u), int(k), float(snr), float(xb)))
    return tuple(cells)


def build_world(cfg: ExperimentConfig, cell: GridCell) -> World:
    snr = 10.0 ** (cell.snr_db / 10.0)
    if cfg.channel == "awgn":
        sensor = SensorModel(noise_variance=1.0 / snr, channel=Awgn(1.0 + 0.0j))
    else:
        sensor = SensorModel(noise_variance=1.0 / snr, channel=Rayleigh(1.0))
    xr = cell.x_re if cell.x_re is not None else cfg.x_re
    xi = cell.x_im if cell.x_im is not None else cfg.x_im
    if xr is None or xi is None:
        c = cell.x_bound / math.sqrt(2.0)
        xr = c if xr is None else xr
        xi = c if xi is None else xi
    truth = GroundTruth(complex(xr, xi), cell.x_bound)
    return World(truth, (sensor,) * cell.n_sensors)


# ---------------------------------------------------------------------------
# trial engine

@dataclass(frozen=True)
class TrialResult:
    scheme: str
    seed: int
    estimate: float
    true_x_re: float
    stop_time: int
    bits_v: int
    bits_u: int
    bits_final: int
    u_tilde: float
    u_exact: float
    n_msgs_v: tuple
    n_msgs_u: tuple
    grid_id: int = -1


def _cumsum_from(prev: float, block: np.ndarray) -> np.ndarray:
    return np.cumsum(np.concatenate(([prev], block)))[1:]


def _fold_sensors(arrays) -> np.ndarray:
    total = arrays[0].copy()
    for a in arrays[1:]:
        total += a
    return total


def run_trial(config: SchemeConfig, world: World, seed: int, *,
              step_cap: int = DEFAULT_STEP_CAP, collect_messages: bool = False):
    """Simulate one trial; returns a TrialResult (plus the message transcript
    grouped by step when ``collect_messages`` is set)."""
    kind = config.kind
    sensors = world.sensors
    n = len(sensors)
    keep_raw = kind is SchemeKind.OBS_MLE
    streams = [IncrementStream(world.truth.x, s, sensor_generator(seed, k), keep_raw=keep_raw)
               for k, s in enumerate(sensors)]
    states = [SensorState(k) for k in range(n)]
    fc = FcState(n)
    block = IncrementStream.BLOCK
    transcript = {} if collect_messages else None
    v_exact = 0.0  # centralized control only
    t_base = 0
    stop_local = None

    while True:
        if t_base >= step_cap:
            raise NonTerminatingError(f"non-terminating run: no stop within {step_cap} steps")
        raws = [st.take(block) for st in streams]
        v_blocks = [r[0] for r in raws]
        u_blocks = [r[1] for r in raws]
        v_cums = [_cumsum_from(states[k].v_acc, v_blocks[k]) for k in range(n)]
        u_cums = [_cumsum_from(states[k].u_acc, u_blocks[k]) for k in range(n)]
        u_exact_cum = _cumsum_from(fc.u_exact, _fold_sensors(u_blocks))

        # --- U-side events (these alone decide the stop for the fading schemes)
        u_events = [[] for _ in range(n)]  # per sensor: (local_idx, message, new_ref)
        if config.uses_lt_u:
            for k in range(n):
                ref = states[k].u_ref
                e_k = config.e[k]
                qz = _ltu_q(config.theta[k], config.bits_u)
                cum = u_cums[k]
                pos = 0
                while pos < block:
                    cond = cum[pos:] - ref >= e_k
                    j = int(np.argmax(cond))
                    if not cond[j]:
                        break
                    i = pos + j
                    p = (cum[i] - ref) - e_k
                    msg = ULt(k, t_base + i + 1, quantize(qz, float(p)))
                    ref = float(cum[i])
                    u_events[k].append((i, msg, ref))
                    pos = i + 1
        elif config.uses_uni_u:
            period = config.period_u
            first = ((t_base // period) + 1) * period  # first multiple of period > t_base
            for k in range(n):
                ref = states[k].u_ref
                qz = _uniu_q(config.theta[k], period, config.bits_u)
                cum = u_cums[k]
                t_msg = first
                while t_msg <= t_base + block:
                    i = t_msg - t_base - 1
                    val = float(cum[i]) - ref
                    msg = UUni(k, t_msg, quantize(qz, val))
                    ref = float(cum[i])
                    u_events[k].append((i, msg, ref))
                    t_msg += period

        # --- stop decision
        if config.stops_on_exact_u:
            hits = np.nonzero(u_exact_cum >= config.target_info)[0]
            stop_local = int(hits[0]) if hits.size else None
        else:
            stop_local = None
            flat = sorted(((i, k, msg) for k in range(n) for i, msg, _ in u_events[k]),
                          key=lambda e: (e[0], e[1]))
            for i, group in itertools.groupby(flat, key=lambda e: e[0]):
                for _, _, msg in group:
                    fc_apply(config, fc, msg)
                    if collect_messages:
                        transcript.setdefault(msg.t, []).append(msg)
                if fc.u_tilde >= config.target_info:
                    stop_local = i
                    break

        limit = stop_local if stop_local is not None else block - 1

        # --- V-side events up to the stop (they never influence the stop rule)
        v_events = [[] for _ in range(n)]
        if config.uses_lt_v:
            for k in range(n):
                ref = states[k].v_ref
                d_k = config.d[k]
                qz = _ltv_q(config.phi[k], config.bits_v)
                cum = v_cums[k][:limit + 1]
                pos = 0
                while pos < limit + 1:
                    cond = np.abs(cum[pos:] - ref) >= d_k
                    j = int(np.argmax(cond))
                    if not cond[j]:
                        break
                    i = pos + j
                    diff = float(cum[i]) - ref
                    sign = 1 if diff > 0 else -1
                    msg = VLt(k, t_base + i + 1, sign, quantize(qz, abs(diff) - d_k))
                    ref = float(cum[i])
                    v_events[k].append((i, msg, ref))
                    pos = i + 1
        elif config.uses_uni_v:
            period = config.period_v
            first = ((t_base // period) + 1) * period
            for k in range(n):
                ref = states[k].v_ref
                qz = _univ_q(config.phi[k], period, config.bits_v)
                cum = v_cums[k]
                t_msg = first
                while t_msg - t_base - 1 <= limit:
                    i = t_msg - t_base - 1
                    val = float(cum[i]) - ref
                    msg = VUni(k, t_msg, quantize(qz, val))
                    ref = float(cum[i])
                    v_events[k].append((i, msg, ref))
                    t_msg += period
        flat_v = sorted(((i, k, msg) for k in range(n) for i, msg, _ in v_events[k]),
                        key=lambda e: (e[0], e[1]))
        for i, _, msg in flat_v:
            fc_apply(config, fc, msg)
            if collect_messages:
                transcript.setdefault(msg.t, []).append(msg)

        # --- observation sign bits
        if kind is SchemeKind.OBS_MLE:
            agree = np.zeros(limit + 1, dtype=np.int64)
            for k in range(n):
                _, _, y, h = raws[k]
                y = y[:limit + 1]
                h = h[:limit + 1]
                agree += ((y.real >= 0) == (h.real >= 0)).astype(np.int64)
                agree += ((y.imag >= 0) == (h.imag >= 0)).astype(np.int64)
                if collect_messages:
                    for i in range(limit + 1):
                        msg = ObsBits(k, t_base + i + 1, int(y[i].real >= 0), int(y[i].imag >= 0),
                                      int(h[i].real >= 0), int(h[i].imag >= 0))
                        transcript.setdefault(msg.t, []).append(msg)
            fc.n_agree += int(agree.sum())
            fc.bits_v += 4 * n * (limit + 1)

        # --- commit sensor and exact-information state
        s = stop_local if stop_local is not None else block - 1
        for k in range(n):
            st = states[k]
            st.v_acc = float(v_cums[k][s])
            st.u_acc = float(u_cums[k][s])
            kept_u = [(i, ref) for i, _, ref in u_events[k] if i <= s]
            if kept_u:
                st.u_ref = kept_u[-1][1]
                st.msg_count_u += len(kept_u)
            kept_v = [(i, ref) for i, _, ref in v_events[k] if i <= s]
            if kept_v:
                st.v_ref = kept_v[-1][1]
                st.msg_count_v += len(kept_v)
        fc.u_exact = float(u_exact_cum[s])
        if kind is SchemeKind.CENTRALIZED:
            v_exact = float(_cumsum_from(v_exact, _fold_sensors(v_blocks))[s])
        if stop_local is not None:
            fc.stopped_at = t_base + stop_local + 1
            break
        t_base += block

    stop_time = fc.stopped_at
    if kind is SchemeKind.CENTRALIZED:
        estimate = centralized_estimate(v_exact, fc.u_exact)
    else:
        estimate = finalize(config, fc, states, stop_time)
    result = TrialResult(
        scheme=kind.value, seed=seed, estimate=float(estimate),
        true_x_re=world.truth.x.real, stop_time=stop_time,
        bits_v=fc.bits_v, bits_u=fc.bits_u, bits_final=fc.bits_final,
        u_tilde=fc.u_tilde, u_exact=fc.u_exact,
        n_msgs_v=tuple(fc.n_msgs_v), n_msgs_u=tuple(fc.n_msgs_u))
    if collect_messages:
        steps = sorted(transcript.items())
        return result, steps
    return result


# ---------------------------------------------------------------------------
# calibration per grid cell

def _expected_stop(cell: GridCell, world: World) -> float:
    rate = 0.0
    for s in world.sensors:
        gain2 = abs(s.channel.gain) ** 2 if isinstance(s.channel, Awgn) else s.channel.gain_variance
        rate += 2.0 * gain2 / s.noise_variance
    if all(isinstance(s.channel, Awgn) for s in world.sensors):
        return float(awgn_stopping_time(cell.info_target, world.sensors))
    return cell.info_target / rate


def _needs(schemes) -> dict:
    kinds = {SchemeKind(s) for s in schemes}
    # dmle and lt-sdmle need d only to size their final-block bit budget at
    # parity with the level-triggered V stream
    return {
        "phi": bool(kinds - {SchemeKind.CENTRALIZED, SchemeKind.OBS_MLE}),
        "theta": bool(kinds & {SchemeKind.LT_SDMLE, SchemeKind.LT_DSDMLE,
                               SchemeKind.U_SDMLE, SchemeKind.U_DSDMLE}),
        "d": bool(kinds & {SchemeKind.LT_DMLE, SchemeKind.LT_DSDMLE,
                           SchemeKind.DMLE, SchemeKind.LT_SDMLE}),
        "e": bool(kinds & {SchemeKind.LT_SDMLE, SchemeKind.LT_DSDMLE}),
    }


def calibrate_cell(cfg: ExperimentConfig, grid_id: int, cell: GridCell, world: World,
                   n_percentile: int = 100_000) -> CalibrationReport:
    """Quantizer spans and thresholds for one grid cell (shared by its schemes)."""
    if cfg.calibration is not None:
        return cfg.calibration
    need = _needs(cfg.schemes)
    cal_x = world.truth.x if cfg.calibrate_x == "actual" else worst_case_x(cell.x_bound)
    phi, theta, d, e = [], [], [], []
    ach_v, ach_u = [], []
    memo = {}  # identical sensors within a cell share one calibration
    for k, sensor in enumerate(world.sensors):
        if sensor in memo:
            row = memo[sensor]
        else:
            rng = sensor_generator(mix64(cfg.master_seed, grid_id, _CAL_TAG), k)
            check = sensor_generator(mix64(cfg.master_seed, grid_id, _CAL_TAG, 1), k)
            row = {}
            if need["phi"]:
                # quantizer spans always anchor at the uncertainty bound;
                # calibrate_x moves only the sampling thresholds
                row["phi"] = percentile_phi(sensor, cell.x_bound, n_percentile, rng)
            if need["theta"]:
                row["theta"] = percentile_theta(sensor, n_percentile, rng)
            if need["d"]:
                row["d"] = calibrate_threshold(VProcess(cal_x), sensor, cell.t_v,
                                               rng=rng, n_paths=16_000)
                row["ach_v"] = measure_mean_interval(VProcess(cal_x), sensor, row["d"], check)
            if need["e"]:
                row["e"] = calibrate_threshold(UProcess(), sensor, cell.t_u,
                                               rng=rng, n_paths=16_000)
                row["ach_u"] = measure_mean_interval(UProcess(), sensor, row["e"], check)
            memo[sensor] = row
        if need["phi"]:
            phi.append(row["phi"])
        if need["theta"]:
            theta.append(row["theta"])
        if need["d"]:
            d.append(row["d"])
            ach_v.append(row["ach_v"])
        if need["e"]:
            e.append(row["e"])
            ach_u.append(row["ach_u"])
    return CalibrationReport(
        phi=tuple(phi) if phi else None, theta=tuple(theta) if theta else None,
        d=tuple(d) if d else None, e=tuple(e) if e else None,
        achieved_mean_interval_v=tuple(ach_v) if ach_v else None,
        achieved_mean_interval_u=tuple(ach_u) if ach_u else None,
        sample_count=n_percentile)


def _final_bits(cfg: ExperimentConfig, grid_id: int, cell: GridCell, world: World,
                calib: CalibrationReport, kind: SchemeKind) -> tuple:
    """Final-block bit budget: the average bit count a sequentially streamed V
    would have spent by the expected stop time (at least one bit)."""
    horizon = max(1, math.ceil(_expected_stop(cell, world)))
    out = []
    memo = {}
    for k, sensor in enumerate(world.sensors):
        if kind is SchemeKind.U_SDMLE:
            count = horizon // max(1, int(cell.t_v + 0.5))
        elif (sensor, calib.d[k]) in memo:
            count = memo[(sensor, calib.d[k])]
        else:
            cal_x = world.truth.x if cfg.calibrate_x == "actual" else worst_case_x(cell.x_bound)
            rng = sensor_generator(mix64(cfg.master_seed, grid_id, _CAL_TAG, 2), k)
            count = mean_trigger_count(VProcess(cal_x), sensor, calib.d[k], horizon, rng)
            memo[(sensor, calib.d[k])] = count
        out.append(min(MAX_BITS, max(1, int(cfg.bits_v * count + 0.5))))
    return tuple(out)


def build_scheme_config(cfg: ExperimentConfig, cell: GridCell, world: World,
                        calib: CalibrationReport, kind: SchemeKind,
                        grid_id: int = 0) -> SchemeConfig:
    args = dict(kind=kind, target_info=cell.info_target)
    if kind in (SchemeKind.LT_DMLE, SchemeKind.LT_DSDMLE):
        args.update(d=calib.d, phi=calib.phi, bits_v=cfg.bits_v)
    if kind in (SchemeKind.LT_SDMLE, SchemeKind.LT_DSDMLE):
        args.update(e=calib.e, theta=calib.theta, bits_u=cfg.bits_u)
    if kind in (SchemeKind.U_SDMLE, SchemeKind.U_DSDMLE):
        args.update(period_u=max(1, int(cell.t_u + 0.5)), theta=calib.theta, bits_u=cfg.bits_u)
    if kind is SchemeKind.U_DSDMLE:
        args.update(period_v=max(1, int(cell.t_v + 0.5)), phi=calib.phi, bits_v=cfg.bits_v)
    if kind in (SchemeKind.DMLE, SchemeKind.LT_SDMLE, SchemeKind.U_SDMLE):
        args.update(phi=calib.phi, bits_final=_final_bits(cfg, grid_id, cell, world, calib, kind))
    if kind is SchemeKind.OBS_MLE:
        sensor = world.sensors[0]
        sigma = cfg.obs_sigma if cfg.obs_sigma is not None else math.sqrt(sensor.noise_variance)
        if cfg.obs_theta is not None:
            theta = cfg.obs_theta
        elif isinstance(sensor.channel, Rayleigh):
            # theta/2 = E|Re h| under the fading law
            theta = 2.0 * math.sqrt(sensor.channel.gain_variance) / math.sqrt(math.pi)
        else:
            theta = 2.0 * abs(sensor.channel.gain.real)
        args.update(obs_theta=theta, obs_sigma=sigma)
    return SchemeConfig(**args)


# ---------------------------------------------------------------------------
# sweep and aggregation

@dataclass(frozen=True)
class Aggregate:
    scheme: str
    info_target: float
    n_sensors: int
    snr_db: float
    x_bound: float
    channel: str
    trials: int
    mse: float
    mse_ci95: float
    mean_stop: float
    stop_ci95: float
    bits_v: float
    bits_u: float
    bits_final: float
    seed: int


def _aggregate(cell: GridCell, channel: str, scheme: str, cell_seed: int,
               results) -> Aggregate:
    n = len(results)
    err2 = np.array([(r.estimate - r.true_x_re) ** 2 for r in results])
    stops = np.array([r.stop_time for r in results], dtype=float)
    half = lambda a: 1.96 * float(np.std(a, ddof=1)) / math.sqrt(n) if n > 1 else 0.0
    return Aggregate(
        scheme=scheme, info_target=cell.info_target, n_sensors=cell.n_sensors,
        snr_db=cell.snr_db, x_bound=cell.x_bound, channel=channel, trials=n,
        mse=float(np.mean(err2)), mse_ci95=half(err2),
        mean_stop=float(np.mean(stops)), stop_ci95=half(stops),
        bits_v=float(np.mean([r.bits_v for r in results])),
        bits_u=float(np.mean([r.bits_u for r in results])),
        bits_final=float(np.mean([r.bits_final for r in results])),
        seed=cell_seed)


def run_cell(cfg: ExperimentConfig, grid_id: int, schemes=None):
    """All trials of one grid cell; returns (aggregates, calibration report)."""
    cell = cfg.cells[grid_id]
    world = build_world(cfg, cell)
    calib = calibrate_cell(cfg, grid_id, cell, world)
    out = []
    for scheme_id, scheme in enumerate(cfg.schemes):
        if schemes is not None and scheme not in schemes:
            continue
        kind = SchemeKind(scheme)
        sconf = build_scheme_config(cfg, cell, world, calib, kind, grid_id)
        results = []
        for i in range(cfg.trials):
            seed = mix64(cfg.master_seed, grid_id, scheme_id, i)
            results.append(run_trial(sconf, world, seed))
        out.append(_aggregate(cell, cfg.channel, scheme, mix64(cfg.master_seed, grid_id, scheme_id),
                              results))
    return out, calib


def _run_cell_worker(args):
    cfg, grid_id, schemes = args
    return grid_id, run_cell(cfg, grid_id, schemes)


def run_sweep(cfg: ExperimentConfig, threads: int = 1, schemes=None, progress=None):
    """Run every (grid cell x scheme) and aggregate; deterministic for a given
    master seed regardless of ``threads``."""
    results = {}
    calibs = {}
    ids = list(range(len(cfg.cells)))
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for grid_id, (aggs, calib) in pool.map(_run_cell_worker,
                                                   [(cfg, g, schemes) for g in ids]):
                results[grid_id] = aggs
                calibs[grid_id] = calib
                if progress:
                    progress(grid_id)
    else:
        for g in ids:
            results[g], calibs[g] = run_cell(cfg, g, schemes)
            if progress:
                progress(g)
    aggregates = [a for g in ids for a in results[g]]
    if cfg.output_path:
        emit_csv(aggregates, cfg.output_path)
        root, _ = os.path.splitext(cfg.output_path)
        for g in ids:
            with open(f"{root}.cell{g}.calibration.txt", "w") as fh:
                fh.write(calibs[g].to_text())
    return aggregates


CSV_COLUMNS = ("scheme", "info_target", "K", "snr_db", "x_bound", "channel", "trials",
               "mse", "mse_ci95", "mean_stop", "stop_ci95", "bits_v", "bits_u",
               "bits_final", "seed")


def emit_csv(aggregates, path) -> None:
    """Write aggregates with the fixed 15-column schema (floats at 12 digits)."""
    g = lambda v: format(v, ".12g")
    with open(path, "w", newline="") as fh:
        fh.write(",".join(CSV_COLUMNS) + "\n")
        for a in aggregates:
            row = (a.scheme, g(a.info_target), str(a.n_sensors), g(a.snr_db), g(a.x_bound),
                   a.channel, str(a.trials), g(a.mse), g(a.mse_ci95), g(a.mean_stop),
                   g(a.stop_ci95), g(a.bits_v), g(a.bits_u), g(a.bits_final), str(a.seed))
            fh.write(",".join(row) + "\n")


def parse_csv(path):
    """Read an aggregates CSV back (inverse of emit_csv to 12 digits)."""
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        if tuple(header) != CSV_COLUMNS:
            raise ConfigError(f"unexpected CSV header {header}")
        out = []
        for line in fh:
            if not line.strip():
                continue
            p = line.strip().split(",")
            out.append(Aggregate(
                scheme=p[0], info_target=float(p[1]), n_sensors=int(p[2]), snr_db=float(p[3]),
                x_bound=float(p[4]), channel=p[5], trials=int(p[6]), mse=float(p[7]),
                mse_ci95=float(p[8]), mean_stop=float(p[9]), stop_ci95=float(p[10]),
                bits_v=float(p[11]), bits_u=float(p[12]), bits_final=float(p[13]),
                seed=int(p[14])))
    return out

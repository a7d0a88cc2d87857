"""Pre-built sweep configurations for the nine result figures.

Grids follow the benchmark setup: coupled targets info = 25 * 2^m with mean
sampling intervals 2 * 1.4^m, five sensors at 0 dB unless a sweep varies that
axis.  Sampling thresholds are calibrated at the simulated parameter (message
rates are observable), while quantizer spans are designed from the
uncertainty bound.  The fixed-gain family runs x = 2+2j inside the bound 5;
the fading family runs x = 1+1j with its bound at 1.5 so the span design
point sits near the simulated parameter, and the observation-bit baseline
uses theta = 4/sqrt(pi), twice the mean |Re h| span.
"""

from __future__ import annotations

import math

from .experiments import ExperimentConfig, GridCell

OBS_THETA = 4.0 / math.sqrt(math.pi)

COUPLED = tuple((25.0 * 2 ** m, 2.0 * 1.4 ** m, 2.0 * 1.4 ** m) for m in range(6))

AWGN_SCHEMES = ("centralized", "dmle", "lt-dmle")
FADING_ALL = ("centralized", "lt-sdmle", "lt-dsdmle", "u-sdmle", "u-dsdmle", "obs-mle")
FADING_DS = ("centralized", "lt-dsdmle", "u-dsdmle")

AWGN_X = 2.0      # per component, bound 5
FADING_X = 1.0    # per component, bound 1.5
FADING_BOUND = 1.5


def _awgn_fixed_stop(stop_time, t_v, k, snr_db, xb, x=None):
    # fixed-gain rate is 2*K*snr; pick the target so the stop lands exactly there
    snr = 10.0 ** (snr_db / 10.0)
    info = stop_time * 2.0 * k * snr
    xr, xi = (x.real, x.imag) if x is not None else (None, None)
    return GridCell(info, t_v, t_v, k, snr_db, xb, x_re=xr, x_im=xi)


def figure_sweeps(trials: int, master_seed: int) -> dict:
    """csv stem -> ExperimentConfig for all nine figure sweeps."""
    awgn = dict(trials=trials, master_seed=master_seed, channel="awgn",
                x_re=AWGN_X, x_im=AWGN_X, calibrate_x="actual")
    fading = dict(trials=trials, master_seed=master_seed, channel="rayleigh",
                  x_re=FADING_X, x_im=FADING_X, calibrate_x="actual")
    sweeps = {}

    cells = tuple(GridCell(info, tv, tu, 5, 0.0, 5.0) for info, tv, tu in COUPLED)
    sweeps["awgn_vs_stop_time"] = ExperimentConfig(
        schemes=AWGN_SCHEMES, cells=cells, bits_v=1, **awgn)

    for stem, bits in (("awgn_vs_sensors_rv1", 1), ("awgn_vs_sensors_rv2", 2)):
        cells = tuple(_awgn_fixed_stop(15, 5.0, k, 0.0, 5.0) for k in range(2, 11))
        sweeps[stem] = ExperimentConfig(schemes=AWGN_SCHEMES, cells=cells,
                                        bits_v=bits, **awgn)

    cells = tuple(_awgn_fixed_stop(15, 5.0, 5, snr, 5.0) for snr in range(-20, 31, 10))
    sweeps["awgn_vs_snr"] = ExperimentConfig(schemes=AWGN_SCHEMES, cells=cells,
                                             bits_v=1, **awgn)

    bounds = tuple(5.0 * math.sqrt(10.0 ** m) for m in range(-2, 3))
    cells = tuple(_awgn_fixed_stop(15, 5.0, 5, 0.0, xb,
                                   x=complex(xb * AWGN_X / 5.0, xb * AWGN_X / 5.0))
                  for xb in bounds)
    sweeps["awgn_vs_xbound"] = ExperimentConfig(schemes=AWGN_SCHEMES, cells=cells,
                                                bits_v=1, **awgn)

    cells = tuple(GridCell(info, tv, tu, 5, 0.0, FADING_BOUND) for info, tv, tu in COUPLED)
    sweeps["fading_vs_mse"] = ExperimentConfig(
        schemes=FADING_ALL, cells=cells, bits_v=1, bits_u=1,
        obs_theta=OBS_THETA, obs_sigma=1.0, **fading)

    # fading one-axis sweeps run at a fixed target (info = 100, intervals 3.92)
    def fading_cells(ks=(5,), snrs=(0.0,), xbs=(FADING_BOUND,), scale_x=False):
        out = []
        for k in ks:
            for snr in snrs:
                for xb in xbs:
                    xr = xb * FADING_X / FADING_BOUND if scale_x else None
                    out.append(GridCell(100.0, 3.92, 3.92, k, snr, xb, x_re=xr, x_im=xr))
        return tuple(out)

    sweeps["fading_vs_sensors"] = ExperimentConfig(
        schemes=FADING_DS, cells=fading_cells(ks=tuple(range(2, 11))),
        bits_v=2, bits_u=1, **fading)
    sweeps["fading_vs_snr"] = ExperimentConfig(
        schemes=FADING_DS, cells=fading_cells(snrs=tuple(range(-20, 21, 10))),
        bits_v=2, bits_u=1, **fading)
    sweeps["fading_vs_xbound"] = ExperimentConfig(
        schemes=FADING_DS, cells=fading_cells(xbs=bounds, scale_x=True),
        bits_v=2, bits_u=1, **fading)
    return sweeps

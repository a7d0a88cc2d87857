"""Figure manifest: which CSV, axes, and scheme series each figure uses."""

from __future__ import annotations

from dataclasses import dataclass

CSV_COLUMNS = ("scheme", "info_target", "K", "snr_db", "x_bound", "channel", "trials",
               "mse", "mse_ci95", "mean_stop", "stop_ci95", "bits_v", "bits_u",
               "bits_final", "seed")

# half-width column attached to each plottable quantity
CI_FOR = {"mse": "mse_ci95", "mean_stop": "stop_ci95"}

AWGN_SERIES = ("centralized", "dmle", "lt-dmle")
FADING_ALL = ("centralized", "lt-sdmle", "lt-dsdmle", "u-sdmle", "u-dsdmle", "obs-mle")
FADING_DS = ("centralized", "lt-dsdmle", "u-dsdmle")

LABELS = {
    "centralized": "centralized MLE",
    "dmle": "DMLE",
    "lt-dmle": "LT-DMLE",
    "lt-sdmle": "LT-sDMLE",
    "lt-dsdmle": "LT-dsDMLE",
    "u-sdmle": "U-sDMLE",
    "u-dsdmle": "U-dsDMLE",
    "obs-mle": "Obs-MLE",
}

AXIS_LABELS = {
    "mse": "MSE",
    "mean_stop": "average stopping time",
    "K": "number of sensors K",
    "snr_db": "SNR (dB)",
    "x_bound": "parameter bound",
}


@dataclass(frozen=True)
class FigureSpec:
    figure_id: str
    csv_name: str
    x_column: str
    y_column: str
    series: tuple
    log_x: bool = False
    log_y: bool = True
    title: str = ""

    def __post_init__(self):
        for col in (self.x_column, self.y_column):
            if col not in CSV_COLUMNS:
                raise ValueError(f"{self.figure_id}: column {col!r} not in the CSV schema")


FIGURES = {
    "fig1": FigureSpec("fig1", "awgn_vs_stop_time.csv", "mean_stop", "mse", AWGN_SERIES,
                       title="MSE vs stopping time (fixed gains, 1-bit messages)"),
    "fig2": FigureSpec("fig2", "awgn_vs_sensors_rv1.csv", "K", "mse", AWGN_SERIES,
                       title="MSE vs number of sensors (fixed gains, 1-bit messages)"),
    "fig3": FigureSpec("fig3", "awgn_vs_snr.csv", "snr_db", "mse", AWGN_SERIES,
                       title="MSE vs SNR (fixed gains)"),
    "fig4": FigureSpec("fig4", "awgn_vs_xbound.csv", "x_bound", "mse", AWGN_SERIES,
                       log_x=True, title="MSE vs parameter bound (fixed gains)"),
    "fig5": FigureSpec("fig5", "fading_vs_mse.csv", "mse", "mean_stop", FADING_ALL,
                       log_x=True,
                       title="Average stopping time vs MSE (fading)"),
    "fig6": FigureSpec("fig6", "fading_vs_sensors.csv", "K", "mean_stop", FADING_DS,
                       title="Average stopping time vs number of sensors (fading)"),
    "fig7": FigureSpec("fig7", "fading_vs_snr.csv", "snr_db", "mean_stop", FADING_DS,
                       title="Average stopping time vs SNR (fading)"),
    "fig8": FigureSpec("fig8", "fading_vs_xbound.csv", "x_bound", "mean_stop", FADING_DS,
                       log_x=True,
                       title="Average stopping time vs parameter bound (fading)"),
    "fig9": FigureSpec("fig9", "awgn_vs_sensors_rv2.csv", "K", "mse", AWGN_SERIES,
                       title="MSE vs number of sensors (fixed gains, 2-bit messages)"),
}

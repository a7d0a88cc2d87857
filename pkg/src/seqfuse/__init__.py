"""Sequential decentralized scalar estimation in sensor networks.

Centralized sequential MLE baseline plus six decentralized schemes built on
level-triggered or uniform sampling with bit-exact messaging, threshold
calibration, and a reproducible Monte Carlo harness.
"""

from .calibration import (
    CalibrationReport,
    UProcess,
    VProcess,
    calibrate_threshold,
    measure_mean_interval,
    percentile_phi,
    percentile_theta,
)
from .errors import CalibrationError, ConfigError, NonTerminatingError, ProtocolError
from .estimators import (
    FcState,
    Message,
    ObsBits,
    SchemeConfig,
    SchemeKind,
    SensorState,
    ULt,
    UUni,
    VFinal,
    VLt,
    VUni,
    decode_message,
    encode_message,
    fc_apply,
    fc_should_stop,
    finalize,
    obs_mle_estimate,
    payload_bits,
    read_transcript,
    sensor_step,
    write_transcript,
)
from .experiments import (
    Aggregate,
    ExperimentConfig,
    GridCell,
    TrialResult,
    World,
    build_scheme_config,
    build_world,
    calibrate_cell,
    emit_csv,
    parse_csv,
    product_grid,
    run_cell,
    run_sweep,
    run_trial,
)
from .quantization import (
    MidRiserQuantizer,
    QuantIndex,
    dequantize,
    final_v_quantizer,
    lt_u_overshoot_quantizer,
    lt_v_overshoot_quantizer,
    make_midriser,
    quantize,
    uniform_u_quantizer,
    uniform_v_quantizer,
)
from .rng import mix64, sensor_generator, sensor_generators, splitmix64
from .signal_model import (
    Awgn,
    CentralizedRun,
    GroundTruth,
    IncrementStream,
    LocalIncrements,
    Rayleigh,
    SensorModel,
    awgn_stopping_time,
    centralized_estimate,
    draw_channel_gain,
    draw_observation,
    local_increments,
    run_centralized,
)
from .statistics import (
    KsResult,
    kolmogorov_sf,
    ks_test_standard_normal,
    mean_ci95,
    normal_cdf,
    normal_quantile,
)

__version__ = "0.1.0"

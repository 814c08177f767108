"""Location-aided compressive-sensing beam alignment for mmWave ULAs."""

__version__ = "0.1.0"

from .arrays import ArrayConfig, Path, PathSet, array_response, build_channel, sample_paths, steering_matrix
from .beams import (
    MeasurementBeams,
    build_sector_beams,
    design_sector_beam,
    partition_range,
    random_measurement_beams,
)
from .codebook import (
    AngleGrid,
    Codebook,
    Dictionary,
    build_codebook,
    build_dictionary,
    codebook_weight,
    quantized_grid,
    vec,
)
from .config import ConfigError, SimConfig
from .cs import SparseEstimate, build_sensing_matrix, omp, simulate_measurements, support_to_angles
from .geometry import (
    AngleIndexRange,
    LocalizationError,
    Location,
    angular_range,
    combined_error,
    perturb_location,
)
from .harness import (
    CdfSeries,
    TrialRecord,
    emit_report,
    empirical_cdf,
    read_records,
    run_monte_carlo,
    summarize,
)
from .strategies import (
    AlignmentResult,
    Scenario,
    Strategy,
    bf_gain,
    exhaustive_search,
    run_cs_strategy,
    run_trial,
)

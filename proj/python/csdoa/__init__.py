# SPDX-License-Identifier: Apache-2.0
"""Compressed-sensing DOA estimation (OMP / CoSaMP) for uniform linear arrays."""

from ._core import (  # noqa: F401
    Algorithm,
    AlgorithmCurve,
    AlgorithmRun,
    AmplitudeModel,
    AngleGrid,
    AngleSpectrum,
    ArrayGeometry,
    CsdoaError,
    DoaErrors,
    DoaEstimate,
    MeasurementKind,
    MeasurementMatrix,
    MeasurementSetup,
    RmseCurve,
    Rng,
    Scenario,
    SensingSystem,
    SingleRun,
    Snapshot,
    SolverConfig,
    SourceSet,
    SparseEstimate,
    TrialRecord,
    angle_spectrum,
    build_manifold,
    compress,
    correlate,
    cosamp,
    default_measurements,
    draw_measurement_matrix,
    l0_oracle,
    least_squares,
    make_grid,
    make_scenario,
    make_sources,
    make_sweep,
    min_measurements,
    omp,
    pick_peaks,
    run_monte_carlo,
    run_single,
    simulation1_scenario,
    simulation2_scenario,
    simulation3_scenario,
    steering_vector,
    synthesize,
    trial_error,
    trial_seed,
)

NOISELESS = float("inf")

__version__ = "0.1.0"

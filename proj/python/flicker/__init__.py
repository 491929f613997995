"""Quantum lower bound on 1/f noise: geometric factor, noise magnitude, spectral identities."""

from ._flicker import (
    CovarianceModel,
    Material,
    MissingPiezoData,
    SampleGeometry,
    ValidityBound,
    corner_magnification,
    end_face_probes,
    geometric_factor,
    geometric_factor_transverse,
    kappa,
    load_catalog,
    log_log_slope,
    phonon_delta,
    power_spectrum_estimate,
    reproduce_tables,
    run_verification_suite,
    side_face_probes,
    sigma_spectrum,
    synthesize_power_law_noise,
    wk_identity_check,
)

__all__ = [
    "CovarianceModel",
    "Material",
    "MissingPiezoData",
    "SampleGeometry",
    "ValidityBound",
    "corner_magnification",
    "end_face_probes",
    "geometric_factor",
    "geometric_factor_transverse",
    "kappa",
    "load_catalog",
    "log_log_slope",
    "phonon_delta",
    "power_spectrum_estimate",
    "reproduce_tables",
    "run_verification_suite",
    "side_face_probes",
    "sigma_spectrum",
    "synthesize_power_law_noise",
    "wk_identity_check",
]

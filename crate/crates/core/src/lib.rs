//! Closed-form photon fields for a single photon scattering on two identical
//! qubits in an open one-dimensional waveguide.
//!
//! All quantities are SI: frequencies in rad/s, positions in m, times in s.
//! Field amplitudes carry the units of the incident amplitude `A`, so energies
//! are reported as `|field|²/A²`.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: sine, cosine and exponential integrals.
//! * [`model`]: scenario parameters, regime detection, collective rates `Γ±` and couplings `C±`.
//! * [`amplitudes`]: qubit amplitudes `β₁,₂(t)` and spectral photon amplitudes `γ(ω,t)`, `δ(ω,t)`.
//! * [`fields`]: space-time kernels, field assembly, steady states, spectra and resonance peaks.
//! * [`analysis`]: beat-frequency extraction from time series.
//! * [`oracle`]: brute-force references (quadrature, Markov ODE, discretized continuum).

// `!(a < b)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod amplitudes;
pub mod analysis;
pub mod error;
pub mod fields;
pub mod model;
pub mod oracle;
pub mod specfun;

/// Complex scalar used for every amplitude and field value.
pub type ComplexValue = num_complex::Complex64;

pub use amplitudes::{phi, qubit_amplitudes, spectral_amplitudes, QubitState, SpectralAmplitude};
pub use analysis::{beat_report, beating_series, BeatReport};
pub use error::{Result, WqedError};
pub use fields::{
    backward_field, forward_field, interqubit_field, nonmarkov_reflectance,
    nonmarkov_transmittance, reflectance, steady_backward, steady_forward, transmittance,
    Branch, Direction, E1Convention, FieldSlice, Region, SpaceTimeGrid,
};
pub use model::{
    classify_regime, collective_rates, rates_for, CollectiveRates, ModelParams, Regime, RegimeTag,
    DEFAULT_REGIME_TOL,
};

//! Space-time photon fields, steady states and spectra.

pub mod assembly;
pub mod grid;
pub mod kernels;
pub mod peaks;
pub mod spectra;

pub use assembly::{
    backward_at, backward_field, forward_at, forward_field, incident_wave, interqubit_at,
    interqubit_field, kernel_terms, scattered_wave, steady_backward, steady_forward,
    transients_converged, Branch, FieldSlice, KernelTerm,
};
pub use grid::{locate, Region, SpaceTimeGrid, EXCLUSION_FRACTION};
pub use kernels::{
    decay_kernel, decay_kernel_bwd, decay_kernel_fwd, drive_kernel_bwd, drive_kernel_fwd,
    kernel, kernel_parts, kernel_steady, resonant_kernel, Direction, E1Convention, KernelParts,
};
pub use spectra::{
    nonmarkov_reflectance, nonmarkov_transmittance, reflectance, reflectance_from_rates,
    spectrum_sweep, sup_differences, transmittance, transmittance_from_rates, SpectrumRow,
};

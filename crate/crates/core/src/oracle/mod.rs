//! Independent numerical references for the closed forms.

pub mod continuum;
pub mod kernel_quad;
pub mod markov_ode;
pub mod memory;
pub mod quadrature;

pub use continuum::{continuum_evolve, ContinuumGrid, ContinuumRun, ContinuumSpec, Coupling};
pub use kernel_quad::{
    quad_e1, quad_field, quad_kernel, quad_sigma, quad_spectral, resolve_e1_convention,
    ConventionReport, DefiningIntegral, QuadResult, QuadSpec,
};
pub use markov_ode::{integrate_markov, OdeSpec};
pub use memory::{memory_kernels, MemoryKernels};

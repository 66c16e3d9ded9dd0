//! Fully quantized treatment of electromagnetically induced transparency
//! (EIT) for a vapor of three-level Λ-type atoms coupled to two quantized
//! laser modes (probe and coupling).
//!
//! The Hilbert space splits into independent three-dimensional excitation
//! manifolds spanned by `{|1,n1,n2>, |2,n1-1,n2>, |3,n1-1,n2+1>}`. The crate
//! provides three views of the same physics:
//!
//! - [`dressed`]: closed-form dressed-state coefficients and energies to
//!   first order in the probe detuning, plus the exact dark state at
//!   resonance.
//! - [`fock`]: exact numerics on the truncated two-mode Fock space —
//!   per-manifold Hamiltonian blocks, exact eigensystems, norm-preserving
//!   time evolution under adiabatic switch-on, and the exact Poisson-weighted
//!   optical coherence used to validate the closed forms.
//! - [`response`]: the macroscopic optical response — susceptibility, group
//!   velocity, refractive-index change, and the giant Kerr and higher-order
//!   nonlinear coefficients with their series/resummation machinery.
//!
//! [`params`] holds the unit-safe configuration (SI everywhere; practical
//! units only at the presentation boundary) and [`config`] the on-disk
//! configuration document format. [`presets`] carries the built-in
//! slow-light reference scenario.
//!
//! With the default `parallel` feature the ensemble sweeps in [`fock`] run
//! data-parallel over manifolds via rayon; disabling the feature falls back
//! to sequential loops with identical results (the coherence reduction is
//! serialized in a fixed order either way, so outputs are bit-reproducible).

pub mod config;
pub mod dressed;
pub mod error;
pub mod fock;
pub mod params;
pub mod presets;
pub mod response;
pub mod sym3;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use params::{AtomMediumSpec, Constants, LaserSpec, Options, SystemConfig};

pub use num_complex;

/// Run `f` inside a dedicated thread pool of the given size (with the
/// `parallel` feature; otherwise `f` just runs on the caller's thread).
/// Results do not depend on the thread count — reductions happen in a fixed
/// chunk order — so this only controls resource usage.
#[cfg(feature = "parallel")]
pub fn run_with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool construction only fails on exotic configs")
        .install(f)
}

#[cfg(not(feature = "parallel"))]
pub fn run_with_threads<T: Send>(_threads: usize, f: impl FnOnce() -> T + Send) -> T {
    f()
}

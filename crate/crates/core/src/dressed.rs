//! Closed-form perturbative dressed states of one excitation manifold.
//!
//! Within the manifold `(n1, n2)` the basis is
//! `{|1,n1,n2>, |2,n1-1,n2>, |3,n1-1,n2+1>}` and the dressed states are
//!
//! ```text
//! |phi(i)> = a_i |1,n1,n2> + b_i |2,n1-1,n2> + c_i |3,n1-1,n2+1>,  i = +,-,0
//! ```
//!
//! with coefficients and energies expanded to first order in the probe
//! detuning. The zero branch at zero detuning is the exact dark state
//! `(Omega_2, 0, -Omega_1)/Omega`: no upper-level amplitude, no absorption.
//!
//! All functions are pure; they parallelize freely across manifolds.

use crate::error::{Error, Result};
use crate::params::SystemConfig;

/// Photon-pair index of one excitation manifold. `n1 >= 1` because the
/// basis contains `|2, n1-1, n2>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ManifoldIndex {
    n1: u64,
    n2: u64,
}

impl ManifoldIndex {
    pub fn new(n1: u64, n2: u64) -> Result<Self> {
        if n1 == 0 {
            return Err(Error::Validation(
                "manifold index requires n1 >= 1 (the basis contains |2,n1-1,n2>)".into(),
            ));
        }
        Ok(Self { n1, n2 })
    }

    pub fn n1(&self) -> u64 {
        self.n1
    }

    pub fn n2(&self) -> u64 {
        self.n2
    }
}

/// Dressed-branch label. `Zero` is the dark branch at zero detuning.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
    Zero,
}

impl Branch {
    pub const ALL: [Branch; 3] = [Branch::Plus, Branch::Minus, Branch::Zero];
}

/// One dressed state: amplitudes on the three basis kets, its energy
/// (in rad/s, energies divided by hbar), and the Rabi frequencies of the
/// manifold it lives in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedSolution {
    pub branch: Branch,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Branch energy over hbar (rad/s).
    pub energy: f64,
    pub rabi_probe: f64,
    pub rabi_coupling: f64,
    pub rabi_total: f64,
}

impl DressedSolution {
    pub fn amplitudes(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }
}

/// Per-manifold Rabi frequencies: `Omega_1 = 2 g_1 sqrt(n1)`,
/// `Omega_2 = 2 g_2 sqrt(n2 + 1)`, `Omega = sqrt(Omega_1^2 + Omega_2^2)`.
pub fn rabi_pair(cfg: &SystemConfig, idx: ManifoldIndex) -> (f64, f64, f64) {
    let omega1 = 2.0 * cfg.g_probe() * (idx.n1 as f64).sqrt();
    let omega2 = 2.0 * cfg.g_coupling() * (idx.n2 as f64 + 1.0).sqrt();
    (omega1, omega2, omega1.hypot(omega2))
}

/// Dressed-state coefficients to first order in the detuning.
///
/// Verbatim closed forms:
///
/// ```text
/// a± = Omega_1/(sqrt2 Omega) [1 ∓ (Omega_1² + 4 Omega_2²)/(2 Omega³) Delta]
/// b± = ±1/sqrt2              [1 ± Omega_1²/(2 Omega³) Delta]
/// c± = Omega_2/(sqrt2 Omega) [1 ± 3 Omega_1²/(2 Omega³) Delta]
/// a0 = Omega_2/Omega,  b0 = 2 Omega_1 Omega_2 Delta/Omega³,  c0 = -Omega_1/Omega
/// ```
///
/// Correctness of the transcription is delegated to the exact-eigensystem
/// comparison in [`crate::fock`].
pub fn coefficients_perturbative(
    rabi_probe: f64,
    rabi_coupling: f64,
    detuning: f64,
    branch: Branch,
) -> Result<DressedSolution> {
    let omega = rabi_probe.hypot(rabi_coupling);
    if omega <= 0.0 {
        return Err(Error::DegenerateManifold);
    }
    let o1 = rabi_probe;
    let o2 = rabi_coupling;
    let o3 = omega.powi(3);
    let sqrt2 = std::f64::consts::SQRT_2;

    let (a, b, c) = match branch {
        Branch::Plus => (
            o1 / (sqrt2 * omega) * (1.0 - (o1 * o1 + 4.0 * o2 * o2) / (2.0 * o3) * detuning),
            (1.0 / sqrt2) * (1.0 + o1 * o1 / (2.0 * o3) * detuning),
            o2 / (sqrt2 * omega) * (1.0 + 3.0 * o1 * o1 / (2.0 * o3) * detuning),
        ),
        Branch::Minus => (
            o1 / (sqrt2 * omega) * (1.0 + (o1 * o1 + 4.0 * o2 * o2) / (2.0 * o3) * detuning),
            -(1.0 / sqrt2) * (1.0 - o1 * o1 / (2.0 * o3) * detuning),
            o2 / (sqrt2 * omega) * (1.0 - 3.0 * o1 * o1 / (2.0 * o3) * detuning),
        ),
        Branch::Zero => (
            o2 / omega,
            2.0 * o1 * o2 * detuning / o3,
            -o1 / omega,
        ),
    };
    let energy = energies_perturbative(rabi_probe, rabi_coupling, detuning, branch)?;
    Ok(DressedSolution {
        branch,
        a,
        b,
        c,
        energy,
        rabi_probe,
        rabi_coupling,
        rabi_total: omega,
    })
}

/// Dressed-state energies to first order in the detuning (rad/s):
///
/// ```text
/// E± = (Omega_1² + 2 Omega_2²)/(2 Omega²) Delta ± Omega/2
/// E0 = Omega_1²/Omega² Delta
/// ```
pub fn energies_perturbative(
    rabi_probe: f64,
    rabi_coupling: f64,
    detuning: f64,
    branch: Branch,
) -> Result<f64> {
    let omega_sq = rabi_probe * rabi_probe + rabi_coupling * rabi_coupling;
    if omega_sq <= 0.0 {
        return Err(Error::DegenerateManifold);
    }
    let omega = omega_sq.sqrt();
    Ok(match branch {
        Branch::Plus => {
            (rabi_probe * rabi_probe + 2.0 * rabi_coupling * rabi_coupling) / (2.0 * omega_sq)
                * detuning
                + omega / 2.0
        }
        Branch::Minus => {
            (rabi_probe * rabi_probe + 2.0 * rabi_coupling * rabi_coupling) / (2.0 * omega_sq)
                * detuning
                - omega / 2.0
        }
        Branch::Zero => rabi_probe * rabi_probe / omega_sq * detuning,
    })
}

/// A basis state outside every three-dimensional manifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKet {
    /// `|1, 0, n2>`: ground state with no probe photon; the probe coupling
    /// annihilates it, so it is exactly stationary with energy zero.
    GroundNoProbe { n2: u64 },
    /// `|3, n1, 0>`: lower level |3> with no coupling photon; uncoupled, with
    /// energy Delta_1 from the bare Hamiltonian (zero at resonance).
    LowerNoCoupling { n1: u64 },
}

/// An uncoupled basis state and its exact energy (rad/s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeState {
    pub ket: EdgeKet,
    pub energy: f64,
}

/// Enumerate the uncoupled edge states of the truncated space
/// `n1 <= n1_max`, `n2 <= n2_max`. They have zero overlap with every
/// manifold block.
pub fn edge_states(cfg: &SystemConfig, n1_max: u64, n2_max: u64) -> Vec<EdgeState> {
    let detuning = cfg.atom().probe_detuning;
    let mut states = Vec::with_capacity((n2_max + n1_max + 2) as usize);
    for n2 in 0..=n2_max {
        states.push(EdgeState {
            ket: EdgeKet::GroundNoProbe { n2 },
            energy: 0.0,
        });
    }
    for n1 in 0..=n1_max {
        states.push(EdgeState {
            ket: EdgeKet::LowerNoCoupling { n1 },
            energy: detuning,
        });
    }
    states
}

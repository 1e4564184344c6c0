//! Quasicoherent-state geometry of noncommutative branes built on the CCR
//! algebra `[a, a⁺] = 1`.
//!
//! A brane is specified by two diagonal coherent-state symbols, a complex
//! `φ_A(β)` and a real `φ_{X³}(β)`, which encode the matrix configuration
//! `(X¹, X², X³)` through `A = X¹ + iX²`. For each point x near the
//! eigensurface the Dirac-type operator
//!
//! ```text
//!         ⎡ X³ − x³      A⁺ − ᾱ ⎤
//!   𝔻_x = ⎢                     ⎥ ,   α = x¹ + ix²,
//!         ⎣ A − α     −(X³ − x³) ⎦
//! ```
//!
//! has an approximate zero mode Λ(x), the quasicoherent state. On the
//! eigensurface Λ admits a closed coherent-state integral representation
//! whose weight involves only the symbol differences
//! `Δφ(β) = φ(α_A + β) − φ(α_A)`, and every geometric quantity of interest
//! (spin density matrix, Rényi entropy, deformation field, Berry connection
//! split into geometric, deformation and topological parts, the Λ–Λ*
//! coupling) becomes a Gaussian-type integral over the auxiliary β-plane.
//!
//! The crate provides:
//!
//! * [`coherent`]: truncated Fock space, coherent vectors, displacement
//!   matrices, and normal/anti-normal reordering of polynomial operators;
//! * [`diag`]: diagonal (anti-normal) symbols of operators and the Gaussian
//!   smoothing relation connecting them to expectation values;
//! * [`quad`]: deterministic quadrature over the weighted β-plane measure
//!   `dμ = |β|² e^{−|β|²} d²β/π` and over the bare plane;
//! * [`brane`]: the model catalog (plane, cylinder, Möbius strip, torus,
//!   Klein bottle) with charts, branch maps and analytic symbol partials;
//! * [`qcs`]: the quasicoherent-state engine (normalization, spin density
//!   matrix, entropy, deformation field, connection components, coupling);
//! * [`transport`]: abelian holonomies and non-abelian two-channel
//!   parallel transport along surface paths;
//! * [`oracle`]: an independent truncated-Fock-space spectral route to the
//!   same states (Dirac kernel vectors, expectation values, uncertainty
//!   identities) used to cross-validate the integral engine.
//!
//! Everything is deterministic: node tables are computed by Golub–Welsch
//! from symmetrized tridiagonal eigenproblems, reductions use a fixed-shape
//! pairwise tree, and no global state or threading is involved.

pub mod brane;
pub mod coherent;
pub mod diag;
pub mod error;
pub mod oracle;
pub mod qcs;
pub mod quad;
pub mod transport;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Imaginary unit, for readability at use sites.
pub const I: C64 = C64::new(0.0, 1.0);

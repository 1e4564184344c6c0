//! Diagonal (anti-normal) coherent-state symbols.
//!
//! An operator `X` with anti-normally ordered form `Σ c_{mn} aᵐ a⁺ⁿ` can be
//! written `X = ∫ φ_X(β) |β⟩⟨β| d²β/π` with the diagonal symbol
//! `φ_X(β) = Σ c_{mn} βᵐ β̄ⁿ`. Expectation values in coherent states then
//! follow from the symbol by Gaussian smoothing,
//!
//! ```text
//!   ⟨α|X|α⟩ = ∫ φ_X(β) e^{−|α−β|²} d²β/π ,
//! ```
//!
//! which is the identity the brane catalog rests on: the configuration is
//! specified through symbols, the truncated-operator oracle through
//! matrices, and this relation ties the two together. The inverse direction
//! (deconvolving expectation values into a symbol) is ill-posed and is
//! deliberately not provided.

use num_complex::Complex64 as C64;
use std::sync::Arc;

use crate::coherent::{coherent_vector, reorder, FockTruncation, OrderedPolynomial, Ordering};
use crate::error::Result;
use crate::quad::{integrate_plane, QuadratureSpec};

/// A diagonal symbol `β ↦ φ(β)` as an evaluable handle.
#[derive(Clone)]
pub struct DiagonalSymbol {
    f: Arc<dyn Fn(C64) -> C64 + Send + Sync>,
}

impl DiagonalSymbol {
    pub fn new(f: impl Fn(C64) -> C64 + Send + Sync + 'static) -> Self {
        Self { f: Arc::new(f) }
    }

    pub fn eval(&self, beta: C64) -> C64 {
        (self.f)(beta)
    }
}

impl std::fmt::Debug for DiagonalSymbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("DiagonalSymbol(..)")
    }
}

/// Diagonal symbol of a polynomial operator: reorder anti-normally, then
/// substitute `a → β`, `a⁺ → β̄`.
pub fn symbol_of(poly: &OrderedPolynomial) -> DiagonalSymbol {
    let anti = reorder(poly, Ordering::AntiNormal);
    DiagonalSymbol::new(move |beta: C64| {
        let mut acc = C64::new(0.0, 0.0);
        let bconj = beta.conj();
        for (&(m, n), &c) in &anti.terms {
            acc += c * beta.powu(m) * bconj.powu(n);
        }
        acc
    })
}

/// Diagonal symbol of the displacement operator `D(β₀)`:
/// `φ(α) = e^{+|β₀|²/2} e^{β₀ᾱ − β̄₀α}`.
///
/// The `+` in the prefactor is the anti-normal counterpart of the familiar
/// normal-ordered `e^{−|β₀|²/2}`; the two differ by the full `e^{|β₀|²}`
/// that Gaussian smoothing supplies.
pub fn symbol_of_displacement(beta0: C64) -> DiagonalSymbol {
    let pref = (0.5 * beta0.norm_sqr()).exp();
    DiagonalSymbol::new(move |alpha: C64| {
        pref * (beta0 * alpha.conj() - beta0.conj() * alpha).exp()
    })
}

/// Exact coherent expectation `⟨α|X|α⟩` of a polynomial operator, through
/// its normal form (`⟨α|a⁺ᵐ aⁿ|α⟩ = ᾱᵐ αⁿ`).
pub fn expectation_coherent(poly: &OrderedPolynomial, alpha: C64) -> C64 {
    let normal = reorder(poly, Ordering::Normal);
    let aconj = alpha.conj();
    let mut acc = C64::new(0.0, 0.0);
    for (&(m, n), &c) in &normal.terms {
        acc += c * aconj.powu(m) * alpha.powu(n);
    }
    acc
}

/// Residual of the smoothing identity for a polynomial operator at one α:
/// compares the truncated-matrix sandwich `⟨α|X|α⟩` against the Gaussian
/// smoothing of `symbol_of(X)`. Returns the absolute difference; the
/// truncation must hold the coherent state (small tail) for the comparison
/// to mean anything, which the caller controls through `truncation`.
pub fn smoothing_check(
    poly: &OrderedPolynomial,
    alpha: C64,
    truncation: FockTruncation,
    quad: &QuadratureSpec,
) -> Result<f64> {
    let v = coherent_vector(alpha, truncation);
    let m = poly.to_matrix(truncation);
    let sandwich = (v.amplitudes.adjoint() * &m * &v.amplitudes)[(0, 0)];

    let sym = symbol_of(poly);
    let smoothed = integrate_plane(
        |beta| sym.eval(beta) * C64::new((-(alpha - beta).norm_sqr()).exp(), 0.0),
        quad,
    )?;
    Ok((sandwich - smoothed.value).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_operator_symbol_is_shifted() {
        // a⁺a has anti-normal form a a⁺ − 1, symbol |β|² − 1.
        let p = OrderedPolynomial::monomial(Ordering::Normal, 1, 1, C64::new(1.0, 0.0));
        let sym = symbol_of(&p);
        let b = C64::new(0.7, -1.3);
        let want = C64::new(b.norm_sqr() - 1.0, 0.0);
        assert!((sym.eval(b) - want).norm() < 1e-14);
    }

    #[test]
    fn smoothing_holds_for_number_operator() {
        let p = OrderedPolynomial::monomial(Ordering::Normal, 1, 1, C64::new(1.0, 0.0));
        let trunc = FockTruncation::new(64).unwrap();
        let quad = QuadratureSpec {
            scheme: crate::quad::Scheme::TensorHermite,
            order: 60,
            ..Default::default()
        };
        let r = smoothing_check(&p, C64::new(1.1, 0.4), trunc, &quad).unwrap();
        assert!(r < 1e-9, "residual {r}");
    }
}

//! Truncated Fock space, coherent vectors and operator (re)ordering.
//!
//! Everything downstream works either with coherent-state integrals on the
//! β-plane or with finite matrices on the truncated Fock space
//! `span{e₀, …, e_{cutoff−1}}`. This module provides the shared ground
//! floor: coherent amplitudes with an explicit tail-mass record,
//! coherent-state overlaps, displacement matrices, ladder matrices, and
//! exact normal/anti-normal reordering of polynomial operators, which is
//! what connects an operator to its diagonal symbol.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// A finite Fock-space truncation with basis `e₀ … e_{cutoff−1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockTruncation {
    pub cutoff: usize,
}

impl FockTruncation {
    pub fn new(cutoff: usize) -> Result<Self> {
        if cutoff == 0 {
            return Err(Error::InvalidParameter(
                "Fock truncation cutoff must be at least 1".into(),
            ));
        }
        Ok(Self { cutoff })
    }

    /// Annihilation operator `a` on the truncation: `a e_n = √n e_{n−1}`.
    pub fn annihilation(&self) -> DMatrix<C64> {
        let c = self.cutoff;
        let mut m = DMatrix::zeros(c, c);
        for n in 1..c {
            m[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
        }
        m
    }

    /// Creation operator `a⁺ = aᵀ` on the truncation: `a⁺ e_n = √(n+1) e_{n+1}`.
    ///
    /// The top state is annihilated by truncation; all error analysis
    /// downstream accounts for that through tail masses.
    pub fn creation(&self) -> DMatrix<C64> {
        self.annihilation().transpose()
    }
}

/// Amplitudes of a coherent state `|α⟩` in a truncation, with the mass the
/// truncation dropped.
#[derive(Debug, Clone)]
pub struct CoherentVector {
    pub alpha: C64,
    pub truncation: FockTruncation,
    /// `⟨e_n|α⟩ = e^{−|α|²/2} αⁿ/√n!` for `n < cutoff`.
    pub amplitudes: DVector<C64>,
    /// `1 − Σ_{n<cutoff} |⟨e_n|α⟩|²`, clamped at 0 against roundoff.
    pub tail_mass: f64,
}

/// Coherent amplitudes `e^{−|α|²/2} αⁿ/√n!`, built by the stable recurrence
/// `c_{n+1} = c_n · α/√(n+1)`.
pub fn coherent_vector(alpha: C64, truncation: FockTruncation) -> CoherentVector {
    let c = truncation.cutoff;
    let mut amp = DVector::zeros(c);
    let mut cur = C64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    let mut mass = 0.0;
    for n in 0..c {
        amp[n] = cur;
        mass += cur.norm_sqr();
        cur *= alpha / ((n + 1) as f64).sqrt();
    }
    CoherentVector {
        alpha,
        truncation,
        amplitudes: amp,
        tail_mass: (1.0 - mass).max(0.0),
    }
}

/// Exact coherent-state overlap
/// `⟨β|α⟩ = e^{−|β−α|²/2} · e^{i Im(β̄α)}`.
pub fn overlap(beta: C64, alpha: C64) -> C64 {
    let d = beta - alpha;
    let phase = (beta.conj() * alpha).im;
    C64::from_polar((-0.5 * d.norm_sqr()).exp(), phase)
}

/// Displacement matrix `D(α) = exp(α a⁺ − ᾱ a)` on the truncation.
///
/// The generator is anti-Hermitian, so `D = e^{iH}` with
/// `H = −i(α a⁺ − ᾱ a)` Hermitian; exponentiating through the Hermitian
/// eigendecomposition keeps the result exactly unitary on the truncation.
pub fn displacement_matrix(alpha: C64, truncation: FockTruncation) -> DMatrix<C64> {
    let a = truncation.annihilation();
    let adag = truncation.creation();
    let i = C64::new(0.0, 1.0);
    // H = −i(α a⁺ − ᾱ a), Hermitian.
    let h = (&adag * alpha - &a * alpha.conj()) * (-i);
    let eig = nalgebra::SymmetricEigen::new(h);
    let c = truncation.cutoff;
    let mut phases = DMatrix::zeros(c, c);
    for k in 0..c {
        phases[(k, k)] = (i * eig.eigenvalues[k]).exp();
    }
    &eig.eigenvectors * phases * eig.eigenvectors.adjoint()
}

/// Which side the creation operators sit on in a canonically ordered word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ordering {
    /// All `a⁺` to the left: monomials `a⁺ᵐ aⁿ` keyed by `(m, n)`.
    Normal,
    /// All `a` to the left: monomials `aᵐ a⁺ⁿ` keyed by `(m, n)`.
    AntiNormal,
}

/// A finite complex-linear combination of canonically ordered monomials in
/// `a`, `a⁺`. The key `(m, n)` gives the power of the left factor first:
/// `a⁺ᵐ aⁿ` when normal, `aᵐ a⁺ⁿ` when anti-normal.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderedPolynomial {
    pub ordering: Ordering,
    pub terms: BTreeMap<(u32, u32), C64>,
}

impl OrderedPolynomial {
    pub fn new(ordering: Ordering) -> Self {
        Self {
            ordering,
            terms: BTreeMap::new(),
        }
    }

    /// Add `coeff · (monomial keyed by (m, n))`, merging with any existing
    /// term and dropping exact zeros.
    pub fn add_term(&mut self, m: u32, n: u32, coeff: C64) {
        let entry = self.terms.entry((m, n)).or_insert(C64::new(0.0, 0.0));
        *entry += coeff;
        if *entry == C64::new(0.0, 0.0) {
            self.terms.remove(&(m, n));
        }
    }

    pub fn monomial(ordering: Ordering, m: u32, n: u32, coeff: C64) -> Self {
        let mut p = Self::new(ordering);
        p.add_term(m, n, coeff);
        p
    }

    /// Realize the polynomial as a matrix on the truncation.
    pub fn to_matrix(&self, truncation: FockTruncation) -> DMatrix<C64> {
        let c = truncation.cutoff;
        let a = truncation.annihilation();
        let adag = truncation.creation();
        let mut out = DMatrix::<C64>::zeros(c, c);
        for (&(m, n), &coeff) in &self.terms {
            let (left, right) = match self.ordering {
                Ordering::Normal => (&adag, &a),
                Ordering::AntiNormal => (&a, &adag),
            };
            let mut term = DMatrix::<C64>::identity(c, c);
            for _ in 0..m {
                term = left * term;
            }
            for _ in 0..n {
                term *= right;
            }
            out += term * coeff;
        }
        out
    }

    /// Largest total degree `m + n` among the stored monomials.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|&(m, n)| m + n).max().unwrap_or(0)
    }
}

/// Binomial coefficient as f64; exact for every value that fits in 2⁵³.
fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for j in 0..k {
        acc = acc * (n - j) as f64 / (j + 1) as f64;
    }
    acc.round()
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(|j| j as f64).product()
}

/// Rewrite a polynomial in the requested ordering using the exact
/// finite reordering sums
///
/// ```text
///   aᵐ a⁺ⁿ = Σ_k C(m,k) C(n,k) k! · a⁺^{n−k} a^{m−k}
///   a⁺ⁿ aᵐ = Σ_k (−1)^k C(m,k) C(n,k) k! · a^{m−k} a⁺^{n−k}
/// ```
///
/// Coefficients are exact integers times the input coefficients as long as
/// `C(m,k)C(n,k)k!` stays below 2⁵³, which holds comfortably for the
/// polynomial degrees in use here.
pub fn reorder(poly: &OrderedPolynomial, target: Ordering) -> OrderedPolynomial {
    if poly.ordering == target {
        return poly.clone();
    }
    let mut out = OrderedPolynomial::new(target);
    for (&(m, n), &coeff) in &poly.terms {
        match poly.ordering {
            // a⁺ᵐ aⁿ → anti-normal: with (p, q) = (m, n) creators/annihilators,
            // a⁺ᵖ a^q = Σ_k (−1)^k C(q,k)C(p,k)k! a^{q−k} a⁺^{p−k}.
            Ordering::Normal => {
                let (p, q) = (m, n);
                for k in 0..=p.min(q) {
                    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                    let w = sign * binomial(q, k) * binomial(p, k) * factorial(k);
                    out.add_term(q - k, p - k, coeff * w);
                }
            }
            // aᵐ a⁺ⁿ → normal: aᵐ a⁺ⁿ = Σ_k C(m,k)C(n,k)k! a⁺^{n−k} a^{m−k}.
            Ordering::AntiNormal => {
                for k in 0..=m.min(n) {
                    let w = binomial(m, k) * binomial(n, k) * factorial(k);
                    out.add_term(n - k, m - k, coeff * w);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn a_adag_commutator_reorders_to_identity_shift() {
        // a a⁺ = a⁺ a + 1
        let p = OrderedPolynomial::monomial(Ordering::AntiNormal, 1, 1, c(1.0, 0.0));
        let n = reorder(&p, Ordering::Normal);
        assert_eq!(n.terms.len(), 2);
        assert_eq!(n.terms[&(1, 1)], c(1.0, 0.0));
        assert_eq!(n.terms[&(0, 0)], c(1.0, 0.0));
    }

    #[test]
    fn reorder_matches_matrix_realization() {
        let trunc = FockTruncation::new(24).unwrap();
        let mut p = OrderedPolynomial::new(Ordering::Normal);
        p.add_term(2, 1, c(0.5, -1.25));
        p.add_term(0, 3, c(-2.0, 0.75));
        p.add_term(3, 3, c(1.0, 1.0));
        let q = reorder(&p, Ordering::AntiNormal);
        let mp = p.to_matrix(trunc);
        let mq = q.to_matrix(trunc);
        // Truncation corrupts the top levels (creation leaks past the edge),
        // so compare the leading block only.
        let keep = trunc.cutoff - 8;
        let diff = (mp.view((0, 0), (keep, keep)) - mq.view((0, 0), (keep, keep))).norm();
        assert!(diff < 1e-9, "reordered matrices differ by {diff}");
    }
}

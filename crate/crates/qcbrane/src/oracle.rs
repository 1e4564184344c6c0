//! Truncated-Fock-space spectral oracle.
//!
//! An independent verification path that never touches the coherent-integral
//! engine: the Dirac operator
//!
//! ```text
//!   𝔻_x = [ X³ − x³      A† − ᾱ ]        α = x¹ + i x²,
//!         [ A − α      −(X³ − x³) ]
//! ```
//!
//! is assembled as a finite Hermitian matrix from operator realizations (or
//! from diagonal symbols by quadrature when no closed operator form exists),
//! its near-kernel states are extracted spectrally, and the localization and
//! uncertainty properties of quasicoherent states are checked from first
//! principles.  With σ_i the Pauli matrices, 𝔻_x = σ·(X − x), so
//!
//! ```text
//!   𝔻_x² = (X − x)² − σ·Θ̃,    Θ̃^k = ½ ε_{kij} Θ^{ij},  Θ^{ij} = −i[Xⁱ, Xʲ],
//! ```
//!
//! which gives the uncertainty identity ΔX² = ⟨𝔻²_{⟨X⟩}⟩ + ⟨σ·Θ̃⟩ as exact
//! matrix algebra at any truncation, for any state.
//!
//! Truncation honesty: a kernel claim requires the candidate's tail mass in
//! the top 10% of Fock levels to stay below 1e−6, otherwise the candidate is
//! flagged inconclusive.  The Λ* channel lies outside the Fock space, so the
//! truncated spectrum resolves only the Λ channel cleanly; the
//! second-smallest pair is reported without interpretation.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector, Matrix2};

use crate::brane::BraneModel;
use crate::coherent::FockTruncation;
use crate::diag::DiagonalSymbol;
use crate::error::{Error, Result};
use crate::quad::laguerre_nodes;
use crate::C64;

/// Matrix of an operator from its diagonal symbol:
/// `X_{mn} = ∫ φ(β) ⟨m|β⟩⟨β|n⟩ d²β/π`.
///
/// Origin-centered polar rule: Gauss–Laguerre of order cutoff+32 in
/// t = |β|² and 2·(cutoff+32) midpoint angles, so monomial symbols up to
/// the truncation degree are integrated exactly.  Each node contributes a
/// rank-1 update `w φ(β) v v†` with `v_m = β^m/√(m!)`.
pub fn operator_from_phi(sym: &DiagonalSymbol, trunc: FockTruncation) -> Result<DMatrix<C64>> {
    let c = trunc.cutoff;
    if c == 0 {
        return Err(Error::InvalidParameter("cutoff must be positive".into()));
    }
    let order = c + 32;
    let (nodes, ln_w) = laguerre_nodes(order);
    let m_ang = 2 * order;
    let mut x = DMatrix::<C64>::zeros(c, c);
    let mut v = vec![C64::new(0.0, 0.0); c];
    for (t, lw) in nodes.iter().zip(ln_w.iter()) {
        let r = t.sqrt();
        let w_rad = lw.exp() / m_ang as f64;
        for k in 0..m_ang {
            let theta = TAU * (k as f64 + 0.5) / m_ang as f64;
            let beta = C64::from_polar(r, theta);
            let f = sym.eval(beta);
            if !f.re.is_finite() || !f.im.is_finite() {
                return Err(Error::NanAtNode { re: beta.re, im: beta.im });
            }
            v[0] = C64::new(1.0, 0.0);
            for m in 1..c {
                v[m] = v[m - 1] * beta / (m as f64).sqrt();
            }
            let wf = f * w_rad;
            for m in 0..c {
                let row = wf * v[m];
                for n in 0..c {
                    x[(m, n)] += row * v[n].conj();
                }
            }
        }
    }
    Ok(x)
}

/// Assembled finite Dirac operator at a target point.
#[derive(Clone, Debug)]
pub struct DiracMatrix {
    /// Target point x ∈ ℝ³.
    pub x: [f64; 3],
    /// Operator block A on the truncation.
    pub a: DMatrix<C64>,
    /// Operator block X³ on the truncation (Hermitian).
    pub x3: DMatrix<C64>,
    /// 2·cutoff Hermitian matrix; rows [0, cutoff) are the spin-up block.
    pub matrix: DMatrix<C64>,
}

impl DiracMatrix {
    /// Fock cutoff (dimension of one spin block).
    pub fn cutoff(&self) -> usize {
        self.a.nrows()
    }
}

/// Builds 𝔻_x from the brane's exact operator realization, falling back to
/// symbol quadrature (`operator_from_phi`) for branes without a closed
/// operator form (the Klein bottle).
pub fn build_dirac(model: &BraneModel, x: [f64; 3], trunc: FockTruncation) -> Result<DiracMatrix> {
    let (a, x3) = match model.operator_realization(trunc) {
        Some(pair) => pair,
        None => (
            operator_from_phi(&model.phi_a_symbol(), trunc)?,
            operator_from_phi(&model.phi_x3_symbol(), trunc)?,
        ),
    };
    // X³ has a real symbol; strip the quadrature's O(1e−14) asymmetry so the
    // assembled matrix is Hermitian by construction.
    let x3 = (&x3 + x3.adjoint()) * C64::new(0.5, 0.0);
    let c = trunc.cutoff;
    let alpha = C64::new(x[0], x[1]);
    let mut m = DMatrix::<C64>::zeros(2 * c, 2 * c);
    for i in 0..c {
        for j in 0..c {
            let x3s = x3[(i, j)] - if i == j { C64::new(x[2], 0.0) } else { C64::new(0.0, 0.0) };
            let low = a[(i, j)] - if i == j { alpha } else { C64::new(0.0, 0.0) };
            let up = a[(j, i)].conj() - if i == j { alpha.conj() } else { C64::new(0.0, 0.0) };
            m[(i, j)] = x3s;
            m[(i + c, j + c)] = -x3s;
            m[(i, j + c)] = up;
            m[(i + c, j)] = low;
        }
    }
    let defect = (&m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    if defect > 1e-12 * (1.0 + m.iter().map(|z| z.norm()).fold(0.0f64, f64::max)) {
        return Err(Error::InvalidParameter(format!(
            "assembled Dirac matrix not Hermitian (defect {defect:.3e})"
        )));
    }
    Ok(DiracMatrix { x, a, x3, matrix: m })
}

/// Near-kernel candidate of a Dirac matrix.
#[derive(Clone, Debug)]
pub struct KernelCandidate {
    /// Smallest |eigenvalue| of 𝔻_x.
    pub sigma_min: f64,
    /// Second-smallest |eigenvalue| (reported without interpretation; the
    /// Λ* channel is not a Fock-space state).
    pub sigma_second: f64,
    /// Unit-norm candidate vector, phase-fixed.
    pub psi: DVector<C64>,
    /// Mass in the top 10% of Fock levels (both spin components).
    pub tail_mass: f64,
    /// Tail mass below 1e−6: the truncation supports the kernel claim.
    pub conclusive: bool,
}

/// Extracts the smallest-|eigenvalue| pair of 𝔻_x.
///
/// Dense Hermitian solve up to dimension 512; beyond that, shift-invert
/// inverse iteration targeting 0.  Deterministic tie-break among
/// near-degenerate pairs (within 1e−10): the vector maximizing
/// |⟨(1,0)⊗e₀, Ψ⟩| wins, then the first amplitude above 1e−12 is made real
/// positive.
pub fn kernel_state(dm: &DiracMatrix) -> Result<KernelCandidate> {
    let dim = dm.matrix.nrows();
    let (sigma_min, sigma_second, psi) = if dim <= 512 {
        dense_smallest(&dm.matrix)
    } else {
        shift_invert_smallest(&dm.matrix)?
    };
    let psi = fix_phase(psi);
    let c = dm.cutoff();
    let top = (9 * c).div_ceil(10);
    let mut tail = 0.0;
    for m in top..c {
        tail += psi[m].norm_sqr() + psi[m + c].norm_sqr();
    }
    Ok(KernelCandidate {
        sigma_min,
        sigma_second,
        psi,
        tail_mass: tail,
        conclusive: tail < 1e-6,
    })
}

/// Dense Hermitian route: full eigendecomposition, two smallest |λ|.
fn dense_smallest(m: &DMatrix<C64>) -> (f64, f64, DVector<C64>) {
    let eig = nalgebra::SymmetricEigen::new(m.clone());
    let mut idx: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    idx.sort_by(|&i, &j| {
        eig.eigenvalues[i]
            .abs()
            .partial_cmp(&eig.eigenvalues[j].abs())
            .unwrap()
            .then(i.cmp(&j))
    });
    let sigma_min = eig.eigenvalues[idx[0]].abs();
    let sigma_second = eig.eigenvalues[idx[1]].abs();
    // Tie-break among near-degenerate candidates by spin-up ground overlap.
    let mut best = idx[0];
    let mut best_score = eig.eigenvectors.column(idx[0])[0].norm();
    for &i in idx.iter().skip(1) {
        if eig.eigenvalues[i].abs() > sigma_min + 1e-10 {
            break;
        }
        let score = eig.eigenvectors.column(i)[0].norm();
        if score > best_score {
            best = i;
            best_score = score;
        }
    }
    (sigma_min, sigma_second, eig.eigenvectors.column(best).into_owned())
}

/// Shift-invert inverse iteration targeting eigenvalue 0, with one deflated
/// rerun for the second pair.
fn shift_invert_smallest(m: &DMatrix<C64>) -> Result<(f64, f64, DVector<C64>)> {
    let (l1, v1) = inverse_iterate(m, None)?;
    let (l2, _) = inverse_iterate(m, Some(&v1))?;
    Ok((l1.abs(), l2.abs(), v1))
}

/// One inverse-iteration run; `deflate` projects out an already-found
/// eigenvector.
fn inverse_iterate(m: &DMatrix<C64>, deflate: Option<&DVector<C64>>) -> Result<(f64, DVector<C64>)> {
    let dim = m.nrows();
    let scale = m.iter().map(|z| z.norm()).fold(0.0f64, f64::max).max(1.0);
    // Tiny regularizing shift keeps the factorization stable when 0 is an
    // exact eigenvalue.
    let mut shifted = m.clone();
    for i in 0..dim {
        shifted[(i, i)] += C64::new(1e-13 * scale, 0.0);
    }
    let lu = shifted.full_piv_lu();
    let mut v = DVector::<C64>::from_element(dim, C64::new(1.0 / (dim as f64).sqrt(), 0.0));
    if let Some(d) = deflate {
        let overlap = d.dotc(&v);
        v -= d * overlap;
    }
    let mut lambda = 0.0f64;
    for _ in 0..200 {
        let mut w = lu
            .solve(&v)
            .ok_or_else(|| Error::NoConvergence("inverse iteration: singular factorization".into()))?;
        if let Some(d) = deflate {
            let overlap = d.dotc(&w);
            w -= d * overlap;
        }
        let norm = w.norm();
        if norm == 0.0 {
            return Err(Error::NoConvergence("inverse iteration collapsed to zero".into()));
        }
        w /= C64::new(norm, 0.0);
        let next = w.dotc(&(m * &w)).re;
        let done = (next - lambda).abs() <= 1e-14 * (1.0 + next.abs());
        lambda = next;
        v = w;
        if done {
            return Ok((lambda, v));
        }
    }
    Err(Error::NoConvergence("inverse iteration did not settle in 200 sweeps".into()))
}

/// Lexicographic phase fix: first amplitude above 1e−12 made real positive.
fn fix_phase(mut psi: DVector<C64>) -> DVector<C64> {
    if let Some(z) = psi.iter().find(|z| z.norm() > 1e-12) {
        let phase = z / z.norm();
        let correction = phase.conj();
        for e in psi.iter_mut() {
            *e *= correction;
        }
    }
    psi
}

/// First-principles property report for a candidate state.
#[derive(Clone, Debug)]
pub struct PropsReport {
    /// ⟨⟨Xⁱ⟩⟩ over both spin components.
    pub x_mean: [f64; 3],
    /// ‖⟨⟨X⟩⟩ − x‖ against the Dirac target point.
    pub x_residual: f64,
    /// Spin vector ⟨σ_k ⊗ 1⟩.
    pub spin: [f64; 3],
    /// ΔX² = Σ_i (⟨(Xⁱ)²⟩ − ⟨Xⁱ⟩²).
    pub delta_sq: f64,
    /// ⟨σ·Θ̃⟩ = ½ ε_{kij} ⟨σ_k ⊗ Θ^{ij}⟩.
    pub sigma_theta: f64,
    /// ⟨𝔻²⟩ with the Dirac operator rebuilt at x = ⟨⟨X⟩⟩.
    pub dirac_sq_mean: f64,
    /// |ΔX² − ⟨𝔻²_{⟨X⟩}⟩ − ⟨σ·Θ̃⟩|: exact-algebra identity, roundoff only.
    pub identity_residual: f64,
    /// |ΔX² − ⟨σ·Θ̃⟩|: uncertainty saturation, small only for near-kernel
    /// states (it equals ⟨𝔻²_{⟨X⟩}⟩ by the identity).
    pub saturation_residual: f64,
}

/// Evaluates localization and uncertainty properties of `psi` against the
/// operator content of `dm`.
pub fn verify_props(dm: &DiracMatrix, psi: &DVector<C64>) -> Result<PropsReport> {
    let c = dm.cutoff();
    if psi.len() != 2 * c {
        return Err(Error::DimensionMismatch(format!(
            "state length {} vs Dirac dimension {}",
            psi.len(),
            2 * c
        )));
    }
    let half = C64::new(0.5, 0.0);
    let x1 = (&dm.a + dm.a.adjoint()) * half;
    let x2 = (&dm.a - dm.a.adjoint()) * C64::new(0.0, -0.5);
    let ops = [&x1, &x2, &dm.x3];

    let up = psi.rows(0, c).into_owned();
    let down = psi.rows(c, c).into_owned();
    let pair = |b: &DMatrix<C64>| -> (C64, C64, C64) {
        let bu = b * &up;
        let bd = b * &down;
        (up.dotc(&bu), down.dotc(&bd), up.dotc(&bd))
    };

    let mut x_mean = [0.0; 3];
    let mut second_moment = 0.0;
    for (i, op) in ops.iter().enumerate() {
        let (uu, dd, _) = pair(op);
        x_mean[i] = (uu + dd).re;
        let sq = *op * *op;
        let (suu, sdd, _) = pair(&sq);
        second_moment += (suu + sdd).re;
    }
    let delta_sq = second_moment - x_mean.iter().map(|v| v * v).sum::<f64>();

    // Spin vector and ⟨σ_k ⊗ Θ̃^k⟩ from the cross and diagonal sandwiches.
    let id = DMatrix::<C64>::identity(c, c);
    let (iu, idn, icross) = pair(&id);
    let spin = [2.0 * icross.re, 2.0 * icross.im, (iu - idn).re];

    let comm = |p: &DMatrix<C64>, q: &DMatrix<C64>| (p * q - q * p) * C64::new(0.0, -1.0);
    let thetas = [comm(&x2, &dm.x3), comm(&dm.x3, &x1), comm(&x1, &x2)];
    let mut sigma_theta = 0.0;
    for (k, th) in thetas.iter().enumerate() {
        let (uu, dd, ud) = pair(th);
        sigma_theta += match k {
            0 => 2.0 * ud.re,
            1 => 2.0 * ud.im,
            _ => (uu - dd).re,
        };
    }

    // 𝔻 rebuilt at ⟨⟨X⟩⟩; ⟨𝔻²⟩ = ‖𝔻ψ‖².
    let alpha = C64::new(x_mean[0], x_mean[1]);
    let au = (&dm.a.adjoint() * &down) - &down * alpha.conj()
        + (&dm.x3 * &up) - &up * C64::new(x_mean[2], 0.0);
    let ad = (&dm.a * &up) - &up * alpha
        - ((&dm.x3 * &down) - &down * C64::new(x_mean[2], 0.0));
    let dirac_sq_mean = au.norm_squared() + ad.norm_squared();

    let x_residual = x_mean
        .iter()
        .zip(dm.x.iter())
        .map(|(m, t)| (m - t) * (m - t))
        .sum::<f64>()
        .sqrt();
    Ok(PropsReport {
        x_mean,
        x_residual,
        spin,
        delta_sq,
        sigma_theta,
        dirac_sq_mean,
        identity_residual: (delta_sq - dirac_sq_mean - sigma_theta).abs(),
        saturation_residual: (delta_sq - sigma_theta).abs(),
    })
}

/// Reduced 2×2 spin density matrix of a doubled-space state, normalized.
pub fn reduced_spin_density(psi: &DVector<C64>) -> Matrix2<C64> {
    let c = psi.len() / 2;
    let up = psi.rows(0, c);
    let down = psi.rows(c, c);
    let uu = up.dotc(&up);
    let dd = down.dotc(&down);
    let du = down.dotc(&up);
    let norm = (uu + dd).re;
    Matrix2::new(uu / norm, du.conj() / norm, du / norm, dd / norm)
}

/// Fidelity |⟨a|b⟩|² / (‖a‖²‖b‖²).
pub fn fidelity(a: &DVector<C64>, b: &DVector<C64>) -> f64 {
    a.dotc(b).norm_sqr() / (a.norm_squared() * b.norm_squared())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brane::make_plane;
    use crate::coherent::coherent_vector;

    #[test]
    fn symbol_beta_rebuilds_annihilation() {
        let trunc = FockTruncation::new(32).unwrap();
        let sym = DiagonalSymbol::new(|b| b);
        let x = operator_from_phi(&sym, trunc).unwrap();
        let a = trunc.annihilation();
        let defect = (&x - &a).iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        assert!(defect < 1e-8, "defect {defect}");
    }

    #[test]
    fn symbol_one_rebuilds_identity() {
        let trunc = FockTruncation::new(24).unwrap();
        let sym = DiagonalSymbol::new(|_| C64::new(1.0, 0.0));
        let x = operator_from_phi(&sym, trunc).unwrap();
        let id = DMatrix::<C64>::identity(24, 24);
        let defect = (&x - &id).iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        assert!(defect < 1e-10, "defect {defect}");
    }

    #[test]
    fn symbol_number_rebuilds_number_operator() {
        let trunc = FockTruncation::new(24).unwrap();
        let sym = DiagonalSymbol::new(|b: C64| C64::new(b.norm_sqr() - 1.0, 0.0));
        let x = operator_from_phi(&sym, trunc).unwrap();
        let n = trunc.creation() * trunc.annihilation();
        let defect = (&x - &n).iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        assert!(defect < 1e-8, "defect {defect}");
    }

    #[test]
    fn plane_kernel_is_spin_up_coherent() {
        let big_l = 1.0;
        let model = make_plane(big_l).unwrap();
        let trunc = FockTruncation::new(48).unwrap();
        let alpha = C64::new(1.0, 0.0);
        let dm = build_dirac(&model, [alpha.re, alpha.im, 0.0], trunc).unwrap();
        let kc = kernel_state(&dm).unwrap();
        assert!(kc.sigma_min < 1e-8, "sigma_min {}", kc.sigma_min);
        assert!(kc.conclusive, "tail {}", kc.tail_mass);
        // Reference (1,0) ⊗ |α/L⟩.
        let coh = coherent_vector(alpha / big_l, trunc);
        let mut reference = DVector::<C64>::zeros(96);
        for m in 0..48 {
            reference[m] = coh.amplitudes[m];
        }
        let fid = fidelity(&kc.psi, &reference);
        assert!(fid > 1.0 - 1e-8, "fidelity {fid}");
        // Rayleigh consistency.
        let rayleigh = kc.psi.dotc(&(&dm.matrix * &kc.psi)).re.abs();
        assert!(rayleigh <= kc.sigma_min + 1e-10);
    }

    #[test]
    fn uncertainty_identity_holds_for_arbitrary_states() {
        let model = make_plane(0.7).unwrap();
        let trunc = FockTruncation::new(16).unwrap();
        let dm = build_dirac(&model, [0.3, -0.2, 0.5], trunc).unwrap();
        // Deterministic pseudo-random state.
        let mut state = DVector::<C64>::zeros(32);
        let mut seed = 0.37f64;
        for i in 0..32 {
            seed = (seed * 997.0 + 0.123).fract();
            let re = seed - 0.5;
            seed = (seed * 997.0 + 0.123).fract();
            state[i] = C64::new(re, seed - 0.5);
        }
        state /= C64::new(state.norm(), 0.0);
        let report = verify_props(&dm, &state).unwrap();
        assert!(
            report.identity_residual < 1e-8,
            "identity residual {}",
            report.identity_residual
        );
    }
}

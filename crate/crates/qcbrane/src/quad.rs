//! Deterministic quadrature on the auxiliary β-plane.
//!
//! Two measures appear throughout:
//!
//! * the weighted measure `dμ = |β|² e^{−|β|²} d²β/π` carried by every
//!   quasicoherent-state integral ([`integrate_mu`]);
//! * the bare plane `d²β/π`, where the integrand supplies its own decay
//!   ([`integrate_plane`]).
//!
//! Two node families are supported. The `Polar` scheme pairs a generalized
//! Gauss–Laguerre rule in `t = |β|²` with a uniform midpoint rule in
//! `arg β`; it is exact on homogeneous degree −2 integrands (the singular
//! kernels of this problem are exactly of that type at the origin) and
//! spectrally accurate in the angle. The `TensorHermite` scheme is a tensor
//! Gauss–Hermite product over `(Re β, Im β)`; it is the natural cross-check
//! family but converges slowly on integrands whose limit at β = 0 depends
//! on direction, so callers integrate a model-subtracted remainder when
//! they need it sharp (see the engine in [`crate::qcs`]).
//!
//! Determinism: node tables come from Golub–Welsch eigenvalues of the
//! symmetric Jacobi matrices, Newton-polished through renormalized
//! three-term recurrences, with ± node pairs mirrored exactly; every
//! reduction is a fixed-shape pairwise tree. No randomness, no threads.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Node family used by a quadrature rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Tensor Gauss–Hermite over `(Re β, Im β)`.
    TensorHermite,
    /// Gauss–Laguerre in `|β|²` times uniform midpoints in `arg β`.
    Polar,
}

/// Parameters of a two-level quadrature evaluation.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    pub scheme: Scheme,
    /// Nodes per axis (tensor) or radial nodes (polar; the angular rule
    /// then uses `2·order` midpoints).
    pub order: usize,
    /// Radius of the disks removed around caller-declared denominator
    /// zeros; skipped measure mass is reported, not silently dropped.
    pub exclusion_radius: f64,
    /// The refined level runs at `order × refine_factor`.
    pub refine_factor: usize,
    /// Convergence is declared when the two levels agree to this tolerance
    /// relative to `max(1, |value|)`.
    pub tolerance: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            scheme: Scheme::Polar,
            order: 120,
            exclusion_radius: 1e-3,
            refine_factor: 2,
            tolerance: 1e-8,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.order < 8 {
            return Err(Error::InvalidParameter(format!(
                "quadrature order must be ≥ 8, got {}",
                self.order
            )));
        }
        if self.refine_factor < 2 {
            return Err(Error::InvalidParameter(format!(
                "refine_factor must be ≥ 2, got {}",
                self.refine_factor
            )));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidParameter(
                "tolerance must be positive".into(),
            ));
        }
        if self.exclusion_radius < 0.0 {
            return Err(Error::InvalidParameter(
                "exclusion_radius must be nonnegative".into(),
            ));
        }
        Ok(())
    }
}

/// Outcome of a two-level quadrature.
#[derive(Debug, Clone, Copy)]
pub struct IntegralResult {
    /// Value at the refined level.
    pub value: C64,
    /// Absolute difference between the two levels.
    pub error_estimate: f64,
    /// `error_estimate ≤ tolerance · max(1, |value|)`.
    pub converged: bool,
    /// Measure mass of nodes removed by exclusion disks (refined level).
    pub excluded_mass: f64,
}

// ---------------------------------------------------------------------------
// Node tables
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Family {
    Hermite,
    /// Generalized Laguerre with the given integer α (0 or 1).
    Laguerre(u8),
}

#[derive(Debug)]
struct NodeTable {
    nodes: Vec<f64>,
    /// Natural log of the Gauss weights (weights underflow f64 long before
    /// their logs stop being useful).
    ln_weights: Vec<f64>,
}

/// Signed polynomial value tracked as `mantissa · e^{logscale}` so that
/// recurrences can run to arbitrary order without overflow.
#[derive(Clone, Copy)]
struct Scaled {
    prev: f64,
    cur: f64,
    logscale: f64,
}

impl Scaled {
    fn renorm(&mut self) {
        let m = self.cur.abs().max(self.prev.abs());
        if m > 1e150 {
            self.prev *= 1e-150;
            self.cur *= 1e-150;
            self.logscale += 150.0 * std::f64::consts::LN_10;
        } else if m > 0.0 && m < 1e-150 {
            self.prev *= 1e150;
            self.cur *= 1e150;
            self.logscale -= 150.0 * std::f64::consts::LN_10;
        }
    }
}

/// Hermite `H_k` values at `x` up to `k = n`, returning the scaled pair
/// `(H_{n−1}, H_n)`.
fn hermite_pair(n: usize, x: f64) -> Scaled {
    let mut s = Scaled {
        prev: 0.0,
        cur: 1.0,
        logscale: 0.0,
    };
    for k in 0..n {
        let next = 2.0 * x * s.cur - 2.0 * (k as f64) * s.prev;
        s.prev = s.cur;
        s.cur = next;
        s.renorm();
    }
    s
}

/// Generalized Laguerre `L^{(α)}_k` values at `x` up to `k = n`.
fn laguerre_pair(n: usize, alpha: f64, x: f64) -> Scaled {
    let mut s = Scaled {
        prev: 0.0,
        cur: 1.0,
        logscale: 0.0,
    };
    for k in 0..n {
        let kf = k as f64;
        let next = ((2.0 * kf + alpha + 1.0 - x) * s.cur - (kf + alpha) * s.prev) / (kf + 1.0);
        s.prev = s.cur;
        s.cur = next;
        s.renorm();
    }
    s
}

fn sorted_eigenvalues(diag: &[f64], off: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut j = DMatrix::<f64>::zeros(n, n);
    for (i, &d) in diag.iter().enumerate() {
        j[(i, i)] = d;
    }
    for (i, &b) in off.iter().enumerate() {
        j[(i, i + 1)] = b;
        j[(i + 1, i)] = b;
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(j).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

fn ln_factorial(n: usize) -> f64 {
    // Plain summation is exact enough here: the absolute error stays near
    // machine epsilon times the sum, far below quadrature tolerances.
    (1..=n).map(|k| (k as f64).ln()).sum()
}

/// Gauss–Hermite nodes (ascending, exactly ± mirrored) and log-weights for
/// weight `e^{−x²}` on ℝ.
fn build_hermite(n: usize) -> NodeTable {
    let diag = vec![0.0; n];
    let off: Vec<f64> = (1..n).map(|k| (k as f64 / 2.0).sqrt()).collect();
    let mut nodes = sorted_eigenvalues(&diag, &off);

    // Newton-polish the positive half on H_n, then mirror.
    for i in (n + 1) / 2..n {
        let mut x = nodes[i];
        for _ in 0..3 {
            let s = hermite_pair(n, x);
            let hn = s.cur;
            let dh = 2.0 * n as f64 * s.prev;
            if dh != 0.0 {
                x -= hn / dh;
            }
        }
        nodes[i] = x;
    }
    for i in 0..n / 2 {
        nodes[i] = -nodes[n - 1 - i];
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }

    // w_i = 2^{n−1} n! √π / (n² H_{n−1}(x_i)²), taken in logs.
    let ln_pref = (n as f64 - 1.0) * std::f64::consts::LN_2
        + ln_factorial(n)
        + 0.5 * std::f64::consts::PI.ln()
        - 2.0 * (n as f64).ln();
    let mut ln_w = vec![0.0; n];
    for i in (n - 1) / 2..n {
        let s = hermite_pair(n, nodes[i]);
        let ln_hm1 = s.prev.abs().ln() + s.logscale;
        ln_w[i] = ln_pref - 2.0 * ln_hm1;
        ln_w[n - 1 - i] = ln_w[i];
    }
    NodeTable {
        nodes,
        ln_weights: ln_w,
    }
}

/// Generalized Gauss–Laguerre nodes (ascending) and log-weights for weight
/// `t^α e^{−t}` on `[0, ∞)`, integer α.
fn build_laguerre(n: usize, alpha: u8) -> NodeTable {
    let a = alpha as f64;
    let diag: Vec<f64> = (0..n).map(|k| 2.0 * k as f64 + a + 1.0).collect();
    let off: Vec<f64> = (1..n).map(|k| (k as f64 * (k as f64 + a)).sqrt()).collect();
    let mut nodes = sorted_eigenvalues(&diag, &off);

    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let s = laguerre_pair(n, a, *x);
            // x L'_n = n L_n − (n+α) L_{n−1}
            let dl = (n as f64 * s.cur - (n as f64 + a) * s.prev) / *x;
            if dl != 0.0 {
                *x -= s.cur / dl;
            }
        }
    }

    // w_i = Γ(n+α+1) x_i / (n! (n+1)² L^{(α)}_{n+1}(x_i)²), in logs.
    let ln_gamma_ratio = match alpha {
        0 => 0.0,
        1 => ((n + 1) as f64).ln(),
        _ => unreachable!("only α ∈ {{0,1}} rules are built"),
    };
    let ln_pref = ln_gamma_ratio - 2.0 * ((n + 1) as f64).ln();
    let ln_w: Vec<f64> = nodes
        .iter()
        .map(|&x| {
            let s = laguerre_pair(n + 1, a, x);
            let ln_lnp1 = s.cur.abs().ln() + s.logscale;
            ln_pref + x.ln() - 2.0 * ln_lnp1
        })
        .collect();
    NodeTable {
        nodes,
        ln_weights: ln_w,
    }
}

fn table(family: Family, n: usize) -> Arc<NodeTable> {
    static CACHE: OnceLock<Mutex<HashMap<(Family, usize), Arc<NodeTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry((family, n))
        .or_insert_with(|| {
            Arc::new(match family {
                Family::Hermite => build_hermite(n),
                Family::Laguerre(a) => build_laguerre(n, a),
            })
        })
        .clone()
}

/// Gauss–Laguerre nodes and log-weights for `∫₀^∞ e^{−t} f(t) dt`, shared
/// with the spectral oracle's polar operator quadrature.
pub(crate) fn laguerre_nodes(n: usize) -> (Vec<f64>, Vec<f64>) {
    let tab = table(Family::Laguerre(0), n);
    (tab.nodes.clone(), tab.ln_weights.clone())
}

// ---------------------------------------------------------------------------
// Summation
// ---------------------------------------------------------------------------

/// Fixed-shape pairwise sum; the reduction tree depends only on the length.
pub fn pairwise_sum(v: &[C64]) -> C64 {
    match v.len() {
        0 => C64::new(0.0, 0.0),
        1 => v[0],
        n => pairwise_sum(&v[..n / 2]) + pairwise_sum(&v[n / 2..]),
    }
}

// ---------------------------------------------------------------------------
// Evaluation core
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq)]
enum Measure {
    /// `dμ = |β|² e^{−|β|²} d²β/π`; the weight lives in the rule.
    Mu,
    /// `d²β/π`; the integrand supplies its own decay.
    Plane,
}

/// Anisotropy-adapted reparametrization of the polar angular rule.
///
/// The midpoint rule runs in an auxiliary angle ψ and places rays at
/// `θ(ψ) = φ + arg(a cos ψ + i sin ψ)` with Jacobian
/// `θ'(ψ) = a/(a² cos²ψ + sin²ψ)`, which concentrates rays around the
/// directions `φ ± π/2`. For a kernel whose denominator is close to a
/// quadratic form `Q` with principal values `λ_big ≥ λ_small`, choosing
/// `a = √(λ_small/λ_big)` and `φ` perpendicular to the soft axis maps
/// `1/Q` to a constant of ψ, so the angular rule converges at the
/// isotropic rate no matter how narrow the ridge. `a = 1` reproduces the
/// unmapped rule exactly. The map sends ψ → ψ+π to the antipodal ray with
/// the same Jacobian, so the exact ± mirror pairing of nodes survives.
#[derive(Debug, Clone, Copy)]
pub struct AngularMap {
    /// Ridge aspect ratio in (0, 1]; 1 is the identity map.
    pub a: f64,
    /// Rotation: rays cluster around `phi ± π/2`.
    pub phi: f64,
}

impl AngularMap {
    pub const IDENTITY: AngularMap = AngularMap { a: 1.0, phi: 0.0 };

    /// Map adapted to the quadratic form `q₀x² + 2q₁xy + q₂y²`: rays
    /// cluster along its soft principal axis. Degenerate or indefinite
    /// forms fall back to the identity.
    pub fn for_quadratic(q: [f64; 3]) -> Self {
        let (l1, l2, c, s) = quadratic_eigen(q);
        if !(l1 > 0.0) || !(l2 > 0.0) {
            return Self::IDENTITY;
        }
        // Soft axis = smaller eigenvalue; u-axis is (c, s), v-axis (−s, c).
        let (a, soft_angle) = if l2 <= l1 {
            ((l2 / l1).sqrt(), c.atan2(-s))
        } else {
            ((l1 / l2).sqrt(), s.atan2(c))
        };
        Self {
            a: a.clamp(1e-8, 1.0),
            phi: soft_angle - std::f64::consts::FRAC_PI_2,
        }
    }

    /// Ray direction and Jacobian dθ/dψ at auxiliary angle ψ.
    fn ray(&self, psi: f64) -> (C64, f64) {
        let (sp, cp) = psi.sin_cos();
        let h2 = self.a * self.a * cp * cp + sp * sp;
        let raw = C64::new(self.a * cp, sp) / h2.sqrt();
        let rot = C64::new(self.phi.cos(), self.phi.sin());
        (rot * raw, self.a / h2)
    }
}

struct LevelOutcome {
    values: Vec<C64>,
    excluded_mass: f64,
}

/// Evaluate all `k` components of `f` at one node set.
fn eval_level<F>(
    f: &F,
    k: usize,
    scheme: Scheme,
    measure: Measure,
    order: usize,
    zeros: &[C64],
    eps: f64,
    map: AngularMap,
) -> Result<LevelOutcome>
where
    F: Fn(C64, &mut [C64]),
{
    let excluded = |beta: C64| -> bool {
        eps > 0.0 && zeros.iter().any(|z| (beta - z).norm() < eps)
    };
    let mut buf = vec![C64::new(0.0, 0.0); k];
    let mut contribs: Vec<Vec<C64>> = (0..k).map(|_| Vec::new()).collect();
    let mut excluded_mass = 0.0;

    match scheme {
        Scheme::Polar => {
            // Radial rule in t = |β|² on the α = 0 Laguerre nodes, keeping
            // the measure's own t factor explicit in the contribution:
            // for dμ the radial piece is ∫ t e^{−t} f dt ≈ Σ wᵢ tᵢ f(tᵢ),
            // which is exact whenever t·f is polynomial — in particular on
            // every homogeneous degree −2 kernel, whose radial profile is
            // 1/t. The bare plane folds e^{+t} into the log-weight and the
            // integrand supplies the decay. M = 2·order midpoint angles,
            // mirrored exactly.
            let tab = table(Family::Laguerre(0), order);
            let m = 2 * order;
            // Rays with their angular weights θ'(ψ)/M; the second half is
            // the exact antipode of the first with the same weight, so odd
            // integrands cancel in floating point.
            let mut dirs = Vec::with_capacity(m);
            for j in 0..m / 2 {
                let psi = (2 * j + 1) as f64 * std::f64::consts::PI / m as f64;
                let (d, jac) = map.ray(psi);
                dirs.push((d, jac));
            }
            for j in 0..m / 2 {
                let (d, jac) = dirs[j];
                dirs.push((-d, jac));
            }
            for (&t, &lnw) in tab.nodes.iter().zip(&tab.ln_weights) {
                let r = t.sqrt();
                // (1/π)∫dθ∫f·(measure)·r dr = (1/2π)∫dθ∫f·(measure) dt,
                // and the midpoint rule contributes 2π/M per angle.
                let wt = match measure {
                    Measure::Mu => lnw.exp() * t / m as f64,
                    Measure::Plane => (lnw + t).exp() / m as f64,
                };
                let mass_t = lnw.exp() * t / m as f64;
                for &(dir, jac) in &dirs {
                    let beta = dir * r;
                    let w = wt * jac;
                    if excluded(beta) {
                        // Report the dμ-style mass for the plane too:
                        // weight × t e^{−t} at the node.
                        excluded_mass += mass_t * jac;
                        continue;
                    }
                    f(beta, &mut buf);
                    for (c, &v) in buf.iter().enumerate() {
                        if !v.re.is_finite() || !v.im.is_finite() {
                            return Err(Error::NanAtNode {
                                re: beta.re,
                                im: beta.im,
                            });
                        }
                        contribs[c].push(v * w);
                    }
                }
            }
        }
        Scheme::TensorHermite => {
            let tab = table(Family::Hermite, order);
            for (&x, &lnwx) in tab.nodes.iter().zip(&tab.ln_weights) {
                for (&y, &lnwy) in tab.nodes.iter().zip(&tab.ln_weights) {
                    let beta = C64::new(x, y);
                    let w = match measure {
                        Measure::Mu => {
                            (lnwx + lnwy).exp() * (x * x + y * y) / std::f64::consts::PI
                        }
                        Measure::Plane => {
                            (lnwx + x * x + lnwy + y * y).exp() / std::f64::consts::PI
                        }
                    };
                    if excluded(beta) {
                        excluded_mass += match measure {
                            Measure::Mu => w,
                            Measure::Plane => {
                                (lnwx + lnwy).exp() * (x * x + y * y) / std::f64::consts::PI
                            }
                        };
                        continue;
                    }
                    if w == 0.0 {
                        // Weight underflowed: the node carries no mass.
                        continue;
                    }
                    f(beta, &mut buf);
                    for (c, &v) in buf.iter().enumerate() {
                        if !v.re.is_finite() || !v.im.is_finite() {
                            return Err(Error::NanAtNode {
                                re: beta.re,
                                im: beta.im,
                            });
                        }
                        contribs[c].push(v * w);
                    }
                }
            }
        }
    }

    Ok(LevelOutcome {
        values: contribs.iter().map(|c| pairwise_sum(c)).collect(),
        excluded_mass,
    })
}

fn two_level<F>(
    f: &F,
    k: usize,
    measure: Measure,
    zeros: &[C64],
    spec: &QuadratureSpec,
    map: AngularMap,
) -> Result<Vec<IntegralResult>>
where
    F: Fn(C64, &mut [C64]),
{
    spec.validate()?;
    let coarse = eval_level(
        f,
        k,
        spec.scheme,
        measure,
        spec.order,
        zeros,
        spec.exclusion_radius,
        map,
    )?;
    let fine = eval_level(
        f,
        k,
        spec.scheme,
        measure,
        spec.order * spec.refine_factor,
        zeros,
        spec.exclusion_radius,
        map,
    )?;
    Ok((0..k)
        .map(|c| {
            let value = fine.values[c];
            let err = (value - coarse.values[c]).norm();
            IntegralResult {
                value,
                error_estimate: err,
                converged: err <= spec.tolerance * value.norm().max(1.0),
                excluded_mass: fine.excluded_mass,
            }
        })
        .collect())
}

/// `∫ f(β) dμ` with `dμ = |β|² e^{−|β|²} d²β/π`.
pub fn integrate_mu<F>(f: F, spec: &QuadratureSpec) -> Result<IntegralResult>
where
    F: Fn(C64) -> C64,
{
    let wrapped = |beta: C64, out: &mut [C64]| out[0] = f(beta);
    Ok(two_level(&wrapped, 1, Measure::Mu, &[], spec, AngularMap::IDENTITY)?[0])
}

/// `∫ f(β) dμ` with disks of `spec.exclusion_radius` removed around the
/// declared denominator zeros; the skipped mass is reported.
pub fn integrate_mu_excluding<F>(
    f: F,
    zeros: &[C64],
    spec: &QuadratureSpec,
) -> Result<IntegralResult>
where
    F: Fn(C64) -> C64,
{
    let wrapped = |beta: C64, out: &mut [C64]| out[0] = f(beta);
    Ok(two_level(&wrapped, 1, Measure::Mu, zeros, spec, AngularMap::IDENTITY)?[0])
}

/// Batched `∫ fᵢ(β) dμ` sharing one node sweep: the closure fills `out`
/// with all `k` integrand values at β.
pub fn integrate_mu_many<F>(
    f: F,
    k: usize,
    zeros: &[C64],
    spec: &QuadratureSpec,
) -> Result<Vec<IntegralResult>>
where
    F: Fn(C64, &mut [C64]),
{
    two_level(&f, k, Measure::Mu, zeros, spec, AngularMap::IDENTITY)
}

/// Batched `∫ fᵢ(β) dμ` under the polar scheme with an anisotropy-adapted
/// angular map (see [`AngularMap`]); the tensor scheme ignores the map,
/// whose job the per-axis nodes already do.
pub fn integrate_mu_mapped<F>(
    f: F,
    k: usize,
    zeros: &[C64],
    map: AngularMap,
    spec: &QuadratureSpec,
) -> Result<Vec<IntegralResult>>
where
    F: Fn(C64, &mut [C64]),
{
    two_level(&f, k, Measure::Mu, zeros, spec, map)
}

/// `∫ f(β) d²β/π` for integrands carrying their own decay (coherent-state
/// overlap factors and the like).
pub fn integrate_plane<F>(f: F, spec: &QuadratureSpec) -> Result<IntegralResult>
where
    F: Fn(C64) -> C64,
{
    let wrapped = |beta: C64, out: &mut [C64]| out[0] = f(beta);
    Ok(two_level(&wrapped, 1, Measure::Plane, &[], spec, AngularMap::IDENTITY)?[0])
}

/// Batched variant of [`integrate_plane`].
pub fn integrate_plane_many<F>(f: F, k: usize, spec: &QuadratureSpec) -> Result<Vec<IntegralResult>>
where
    F: Fn(C64, &mut [C64]),
{
    two_level(&f, k, Measure::Plane, &[], spec, AngularMap::IDENTITY)
}

/// Radial shortcut for integrands homogeneous of degree −2:
/// `∫ f dμ = (1/2π) ∫₀^{2π} f(e^{iθ}) dθ`, evaluated by the midpoint rule
/// with `2·order` angles plus one refinement.
pub fn radial_shortcut<F>(f: F, spec: &QuadratureSpec) -> Result<IntegralResult>
where
    F: Fn(C64) -> C64,
{
    spec.validate()?;
    let level = |m: usize| -> Result<C64> {
        let mut contribs = Vec::with_capacity(m);
        for j in 0..m {
            let th = (2 * j + 1) as f64 * std::f64::consts::PI / m as f64;
            let beta = C64::new(th.cos(), th.sin());
            let v = f(beta);
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NanAtNode {
                    re: beta.re,
                    im: beta.im,
                });
            }
            contribs.push(v / m as f64);
        }
        Ok(pairwise_sum(&contribs))
    };
    let coarse = level(2 * spec.order)?;
    let fine = level(2 * spec.order * spec.refine_factor)?;
    let err = (fine - coarse).norm();
    Ok(IntegralResult {
        value: fine,
        error_estimate: err,
        converged: err <= spec.tolerance * fine.norm().max(1.0),
        excluded_mass: 0.0,
    })
}

// ---------------------------------------------------------------------------
// Closed-form Gaussian moments over quadratic denominators
// ---------------------------------------------------------------------------

/// `∫ dμ / Q` for the positive quadratic form
/// `Q = q[0]x² + 2q[1]xy + q[2]y²`: equals `1/√(λ₁λ₂)` in terms of the
/// eigenvalues of Q.
pub fn mu_inverse_quadratic(q: [f64; 3]) -> f64 {
    let (l1, l2, _, _) = quadratic_eigen(q);
    1.0 / (l1 * l2).sqrt()
}

/// `∫ (n20 x² + n11 xy + n02 y²)/Q² dμ` for positive `Q` as above, by
/// rotating the numerator into Q's principal axes and applying the
/// closed-form moments `∫u²/(λ₁u²+λ₂v²)² dμ = 1/(2λ₁^{3/2}λ₂^{1/2})`.
pub fn mu_quadratic_over_quadratic_sq(n20: C64, n11: C64, n02: C64, q: [f64; 3]) -> C64 {
    let (l1, l2, c, s) = quadratic_eigen(q);
    // x = c·u − s·v, y = s·u + c·v.
    let a_rot = n20 * (c * c) + n11 * (c * s) + n02 * (s * s);
    let c_rot = n20 * (s * s) - n11 * (c * s) + n02 * (c * c);
    a_rot / (2.0 * l1.powf(1.5) * l2.sqrt()) + c_rot / (2.0 * l1.sqrt() * l2.powf(1.5))
}

/// Eigenvalues `(λ₁, λ₂)` and principal-axis direction `(cos φ, sin φ)`
/// of `Q = a x² + 2b xy + c y²`.
fn quadratic_eigen(q: [f64; 3]) -> (f64, f64, f64, f64) {
    let [a, b, cc] = q;
    let half_tr = 0.5 * (a + cc);
    let disc = (0.5 * (a - cc)).hypot(b);
    let l1 = half_tr + disc;
    let l2 = half_tr - disc;
    let phi = 0.5 * f64::atan2(2.0 * b, a - cc);
    (l1, l2, phi.cos(), phi.sin())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Weight formulas vs raw Golub–Welsch eigenvector weights.
    #[test]
    fn weights_match_eigenvector_route() {
        for (family, n) in [
            (Family::Hermite, 25),
            (Family::Hermite, 24),
            (Family::Laguerre(0), 20),
            (Family::Laguerre(1), 20),
        ] {
            let tab = match family {
                Family::Hermite => build_hermite(n),
                Family::Laguerre(a) => build_laguerre(n, a),
            };
            // Independent route: weights from first eigenvector components.
            let (diag, off, mu0): (Vec<f64>, Vec<f64>, f64) = match family {
                Family::Hermite => (
                    vec![0.0; n],
                    (1..n).map(|k| (k as f64 / 2.0).sqrt()).collect(),
                    std::f64::consts::PI.sqrt(),
                ),
                Family::Laguerre(a) => (
                    (0..n).map(|k| 2.0 * k as f64 + a as f64 + 1.0).collect(),
                    (1..n)
                        .map(|k| (k as f64 * (k as f64 + a as f64)).sqrt())
                        .collect(),
                    if a == 0 { 1.0 } else { 1.0 },
                ),
            };
            let mut j = DMatrix::<f64>::zeros(n, n);
            for (i, &d) in diag.iter().enumerate() {
                j[(i, i)] = d;
            }
            for (i, &b) in off.iter().enumerate() {
                j[(i, i + 1)] = b;
                j[(i + 1, i)] = b;
            }
            let eig = SymmetricEigen::new(j);
            let mut pairs: Vec<(f64, f64)> = (0..n)
                .map(|k| (eig.eigenvalues[k], mu0 * eig.eigenvectors[(0, k)].powi(2)))
                .collect();
            pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            let w_max = pairs.iter().map(|p| p.1).fold(0.0f64, f64::max);
            for i in 0..n {
                let w_formula = tab.ln_weights[i].exp();
                let w_eig = pairs[i].1;
                // Skip extreme nodes: there the eigenvector first component
                // sits at the machine-noise floor and the eigen-route
                // weight itself is only good to a few percent. (The
                // aggregate exactness of the tail is covered by the moment
                // and mass tests.)
                if w_eig < 1e-12 * w_max {
                    continue;
                }
                assert!(
                    (w_formula - w_eig).abs() <= 1e-9 * w_eig,
                    "{family:?} n={n} node {i}: {w_formula} vs {w_eig}"
                );
            }
        }
    }

    /// End-to-end exactness of the node/weight pairs on Gauss moments.
    #[test]
    fn rules_integrate_moments_exactly() {
        let tab = build_hermite(25);
        // ∫ x^{2k} e^{−x²} dx = (2k−1)!! √π / 2^k, exact for 2k ≤ 49.
        let mut want = std::f64::consts::PI.sqrt();
        for k in 0..12 {
            let got: f64 = tab
                .nodes
                .iter()
                .zip(&tab.ln_weights)
                .map(|(&x, &lnw)| lnw.exp() * x.powi(2 * k))
                .sum();
            assert!(
                (got - want).abs() < 1e-12 * want,
                "hermite moment 2k={}: {got} vs {want}",
                2 * k
            );
            want *= (2 * k + 1) as f64 / 2.0;
        }
        for alpha in [0u8, 1u8] {
            let tab = build_laguerre(20, alpha);
            // ∫ t^k t^α e^{−t} dt = (k+α)!.
            let mut want = if alpha == 0 { 1.0 } else { 1.0 };
            for k in 0..12 {
                if k > 0 {
                    want *= (k + alpha as usize) as f64;
                }
                let got: f64 = tab
                    .nodes
                    .iter()
                    .zip(&tab.ln_weights)
                    .map(|(&t, &lnw)| lnw.exp() * t.powi(k as i32))
                    .sum();
                assert!(
                    (got - want).abs() < 1e-12 * want,
                    "laguerre α={alpha} moment {k}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn mu_total_mass_is_one() {
        // ∫ dμ = ∫ |β|² e^{−|β|²} d²β/π = 1.
        for scheme in [Scheme::Polar, Scheme::TensorHermite] {
            let spec = QuadratureSpec {
                scheme,
                order: 40,
                ..Default::default()
            };
            let r = integrate_mu(|_| C64::new(1.0, 0.0), &spec).unwrap();
            assert!(
                (r.value.re - 1.0).abs() < 1e-12 && r.value.im.abs() < 1e-14,
                "{scheme:?}: {:?}",
                r.value
            );
            assert!(r.converged);
        }
    }

    #[test]
    fn plane_gaussian_mass() {
        // ∫ e^{−|β−α|²} d²β/π = 1 for any center. Tensor Hermite is
        // spectral on entire integrands; the polar radial chart sees the
        // off-center Gaussian through a √t cusp and converges only
        // moderately, which is why high-accuracy plane integrals ride the
        // tensor scheme.
        let alpha = C64::new(1.3, -0.7);
        for (scheme, tol) in [(Scheme::TensorHermite, 1e-12), (Scheme::Polar, 1e-4)] {
            let spec = QuadratureSpec {
                scheme,
                order: 60,
                ..Default::default()
            };
            let r = integrate_plane(|b| C64::new((-(b - alpha).norm_sqr()).exp(), 0.0), &spec)
                .unwrap();
            assert!(
                (r.value.re - 1.0).abs() < tol,
                "{scheme:?}: {:?}",
                r.value
            );
        }
    }

    #[test]
    fn closed_form_moments_match_table() {
        // Diagonal Q reduces to the tabulated L, R rows.
        let (l, r) = (1.5f64, 0.8f64);
        let q = [l * l, 0.0, r * r];
        assert!((mu_inverse_quadratic(q) - 1.0 / (l * r)).abs() < 1e-14);
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let ixx = mu_quadratic_over_quadratic_sq(one, zero, zero, q);
        assert!((ixx.re - 1.0 / (2.0 * l.powi(3) * r)).abs() < 1e-14);
        let iyy = mu_quadratic_over_quadratic_sq(zero, zero, one, q);
        assert!((iyy.re - 1.0 / (2.0 * l * r.powi(3))).abs() < 1e-14);
        // Rotated Q against direct quadrature.
        let q2 = [2.0, 0.6, 1.1];
        let spec = QuadratureSpec {
            order: 80,
            ..Default::default()
        };
        let byquad = integrate_mu(
            |b| {
                let (x, y) = (b.re, b.im);
                let qv = q2[0] * x * x + 2.0 * q2[1] * x * y + q2[2] * y * y;
                C64::new((0.3 * x * x - 1.2 * x * y + 0.9 * y * y) / (qv * qv), 0.0)
            },
            &spec,
        )
        .unwrap();
        let closed = mu_quadratic_over_quadratic_sq(
            C64::new(0.3, 0.0),
            C64::new(-1.2, 0.0),
            C64::new(0.9, 0.0),
            q2,
        );
        assert!(
            (byquad.value - closed).norm() < 1e-9,
            "{} vs {}",
            byquad.value,
            closed
        );
    }

    #[test]
    fn angular_map_resolves_extreme_anisotropy() {
        // 1/(L²x² + R²y²) with R/L = 200: the unmapped angular rule would
        // need thousands of rays; the adapted map makes the profile exact.
        let (l, r) = (1.0, 200.0);
        let q = [l * l, 0.0, r * r];
        let map = AngularMap::for_quadratic(q);
        assert!(map.a < 0.01, "expected a strong map, got a = {}", map.a);
        let spec = QuadratureSpec {
            scheme: Scheme::Polar,
            ..QuadratureSpec::default()
        };
        let res = integrate_mu_mapped(
            |b, out| {
                let d = l * l * b.re * b.re + r * r * b.im * b.im;
                out[0] = C64::new(1.0 / d, 0.0);
                let num = b.re * b.re * b.im * b.im;
                out[1] = C64::new(num / (d * d), 0.0);
            },
            2,
            &[],
            map,
            &spec,
        )
        .unwrap();
        let exact0 = 1.0 / (l * r);
        let exact1 = 1.0 / (2.0 * l * r * (l + r) * (l + r));
        assert!(
            (res[0].value.re - exact0).abs() / exact0 < 1e-11 && res[0].converged,
            "1/D: {} vs {}",
            res[0].value.re,
            exact0
        );
        // The map trades ray density away from the hard axis, so a
        // numerator that suppresses the soft wedge (x² vanishes on it)
        // converges only at the percent level here; kernel numerators in
        // the engine all weight the soft wedge and do not see this.
        assert!(
            (res[1].value.re - exact1).abs() / exact1 < 1e-2,
            "x²y²/D²: {} vs {}",
            res[1].value.re,
            exact1
        );
        // A rotated copy of the same form must behave identically.
        let ang = 0.7f64;
        let (sn, cs) = ang.sin_cos();
        let qr = [
            l * l * cs * cs + r * r * sn * sn,
            (l * l - r * r) * cs * sn,
            l * l * sn * sn + r * r * cs * cs,
        ];
        let mapr = AngularMap::for_quadratic(qr);
        let resr = integrate_mu_mapped(
            |b, out| {
                let (x, y) = (cs * b.re + sn * b.im, -sn * b.re + cs * b.im);
                out[0] = C64::new(1.0 / (l * l * x * x + r * r * y * y), 0.0);
            },
            1,
            &[],
            mapr,
            &spec,
        )
        .unwrap();
        assert!(
            (resr[0].value.re - exact0).abs() / exact0 < 1e-11 && resr[0].converged,
            "rotated: {} vs {}",
            resr[0].value.re,
            exact0
        );
    }
}

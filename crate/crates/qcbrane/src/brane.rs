//! The brane catalog: symbols, charts, branch maps and operator
//! realizations for the five model surfaces.
//!
//! A brane is a pair of diagonal symbols — complex `φ_A(β)` and real
//! `φ_{X³}(β)` — together with a chart `(s¹, s²) ↦ α_A` into the β-plane
//! and the bookkeeping that makes the chart periodic (branch integers,
//! orientation twists). The eigensurface is the image
//!
//! ```text
//!   x(s) = (Re φ_A(α_A), Im φ_A(α_A), φ_{X³}(α_A)) .
//! ```
//!
//! All catalog symbols come with exact analytic partials (`∂/∂Re β`,
//! `∂/∂Im β`), which the engine chains into chart derivatives; a central
//! finite-difference fallback with one Richardson level is provided for
//! cross-checks and for symbols supplied without partials.
//!
//! Charts:
//!
//! * plane: Cartesian `(x¹, x²)`, `α_A = (s¹ + is²)/L`;
//! * cylinder and Möbius strip: `(u, θ)`, `α_A = u + iℓ(θ + 2πn)`;
//! * torus and Klein bottle: `(θ¹, θ²)`,
//!   `α_A = ℓ(θ¹ + 2πn¹) + iℓ(θ² + 2πn²)`.
//!
//! The Möbius identification is `(u, θ + 2π) ≡ (−u, θ)`; the Klein
//! identification is `(θ¹ + 2π, θ²) ≡ (θ¹, −θ²)`. Both act on the symbols
//! exactly (tested), so winding bookkeeping can be done in the chart.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::coherent::{displacement_matrix, FockTruncation};
use crate::diag::DiagonalSymbol;
use crate::error::{Error, Result};

/// Which `e^{±1/(8ℓ²)}` convention the cylinder radius carries.
///
/// The two conventions pair different operator realizations with the same
/// ℓ-label: `Dilated` goes with `A = R·D(−1/2ℓ)` (radius grows as the
/// noncommutativity coarsens), `Contracted` with `A = R e^{−1/(4ℓ²)}·D(−1/2ℓ)`
/// (radius shrinks, and the cylinder's spin weight κ → 0 as ℓ → 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CylinderRadius {
    Dilated,
    Contracted,
}

/// Catalog entry with its parameters.
#[derive(Debug, Clone, Copy)]
pub enum BraneKind {
    /// `φ_A = Lβ`, `φ_{X³} = 0`.
    Plane { big_l: f64 },
    /// `φ_A = R_ℓ e^{i Im β/ℓ}`, `φ_{X³} = L Re β`, with
    /// `R_ℓ = R e^{±1/(8ℓ²)}` per `radius`.
    Cylinder {
        r: f64,
        big_l: f64,
        ell: f64,
        radius: CylinderRadius,
    },
    /// `φ_A = (R + W Re β cos(Im β/2ℓ)) e^{i Im β/ℓ}`,
    /// `φ_{X³} = W Re β sin(Im β/2ℓ)`; `W` is the stored width coefficient
    /// (the scaled constructor uses `W = L̊/ℓ`).
    Mobius { r: f64, width: f64, ell: f64 },
    /// `φ_A = (R_ℓ + r′_ℓ cos(Im β/ℓ)) e^{i Re β/ℓ}`,
    /// `φ_{X³} = r_ℓ sin(Im β/ℓ)` with
    /// `R_ℓ = R e^{1/8ℓ²}`, `r_ℓ = r e^{1/8ℓ²}`, `r′_ℓ = r e^{1/4ℓ²}`.
    Torus { r_major: f64, r_minor: f64, ell: f64 },
    /// Figure-eight immersion with the orientation twist built into the
    /// symbols:
    /// `φ_A = (R + r cos(Re β/2ℓ) sin(Im β/ℓ) − r sin(Re β/2ℓ) sin(2 Im β/ℓ)) e^{i Re β/ℓ}`,
    /// `φ_{X³} = r sin(Re β/2ℓ) sin(Im β/ℓ) − r cos(Re β/2ℓ) sin(2 Im β/ℓ)`.
    Klein { r_major: f64, r_minor: f64, ell: f64 },
}

/// A point of a periodic chart: coordinates plus branch integers (the
/// lift's winding record; `n[1]` is unused for single-angle charts).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartPoint {
    pub s: [f64; 2],
    pub n: [i32; 2],
}

impl ChartPoint {
    pub fn new(s1: f64, s2: f64) -> Self {
        Self {
            s: [s1, s2],
            n: [0, 0],
        }
    }

    pub fn with_branch(s1: f64, s2: f64, n1: i32, n2: i32) -> Self {
        Self {
            s: [s1, s2],
            n: [n1, n2],
        }
    }
}

/// A resolved surface point.
#[derive(Debug, Clone, Copy)]
pub struct SurfacePoint {
    pub coords: ChartPoint,
    pub alpha_a: C64,
    pub x: [f64; 3],
}

/// Symbol values and first partials at one β.
#[derive(Debug, Clone, Copy)]
pub struct SymbolJet {
    pub a: C64,
    pub a_dx: C64,
    pub a_dy: C64,
    pub x3: f64,
    pub x3_dx: f64,
    pub x3_dy: f64,
}

/// Symbol differences `Δφ(β) = φ(α_A + β) − φ(α_A)` with chart partials.
#[derive(Debug, Clone, Copy)]
pub struct DeltaJet {
    pub a: C64,
    pub x3: f64,
    /// `∂Δφ_A/∂s_k` at fixed β.
    pub a_ds: [C64; 2],
    /// `∂Δφ_{X³}/∂s_k` at fixed β.
    pub x3_ds: [f64; 2],
}

#[derive(Debug, Clone, Copy)]
pub struct BraneModel {
    pub kind: BraneKind,
}

fn positive(v: f64, what: &str) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidParameter(format!(
            "{what} must be positive and finite, got {v}"
        )))
    }
}

/// Noncommutative plane of symbol slope `L`.
pub fn make_plane(big_l: f64) -> Result<BraneModel> {
    Ok(BraneModel {
        kind: BraneKind::Plane {
            big_l: positive(big_l, "plane slope L")?,
        },
    })
}

/// Cylinder of radius `R`, axial slope `L`, noncommutativity scale `ℓ`,
/// in the dilated-radius convention.
pub fn make_cylinder(r: f64, big_l: f64, ell: f64) -> Result<BraneModel> {
    make_cylinder_with_mode(r, big_l, ell, CylinderRadius::Dilated)
}

pub fn make_cylinder_with_mode(
    r: f64,
    big_l: f64,
    ell: f64,
    radius: CylinderRadius,
) -> Result<BraneModel> {
    Ok(BraneModel {
        kind: BraneKind::Cylinder {
            r: positive(r, "cylinder radius R")?,
            big_l: positive(big_l, "cylinder slope L")?,
            ell: positive(ell, "cylinder scale ell")?,
            radius,
        },
    })
}

/// Möbius strip of ring radius `R` and width parameter `L̊`, in the regime
/// where the strip half-width scales as `L̊/ℓ` (the regime in which the
/// closed-form geometry below is exact order by order in `1/ℓ`).
pub fn make_mobius(r: f64, l_ring: f64, ell: f64) -> Result<BraneModel> {
    let ell = positive(ell, "mobius scale ell")?;
    Ok(BraneModel {
        kind: BraneKind::Mobius {
            r: positive(r, "mobius radius R")?,
            width: positive(l_ring, "mobius width parameter")? / ell,
            ell,
        },
    })
}

/// Möbius strip with the width coefficient given literally (no `1/ℓ`
/// scaling); the operator realization is the natural companion here.
pub fn make_mobius_unscaled(r: f64, width: f64, ell: f64) -> Result<BraneModel> {
    Ok(BraneModel {
        kind: BraneKind::Mobius {
            r: positive(r, "mobius radius R")?,
            width: positive(width, "mobius width")?,
            ell: positive(ell, "mobius scale ell")?,
        },
    })
}

pub fn make_torus(r_major: f64, r_minor: f64, ell: f64) -> Result<BraneModel> {
    let r_major = positive(r_major, "torus major radius R")?;
    let r_minor = positive(r_minor, "torus minor radius r")?;
    if r_minor >= r_major {
        return Err(Error::InvalidParameter(format!(
            "torus needs r < R, got r = {r_minor}, R = {r_major}"
        )));
    }
    Ok(BraneModel {
        kind: BraneKind::Torus {
            r_major,
            r_minor,
            ell: positive(ell, "torus scale ell")?,
        },
    })
}

pub fn make_klein(r_major: f64, r_minor: f64, ell: f64) -> Result<BraneModel> {
    let r_major = positive(r_major, "klein radius R")?;
    let r_minor = positive(r_minor, "klein radius r")?;
    if r_minor >= r_major {
        return Err(Error::InvalidParameter(format!(
            "klein bottle needs r < R, got r = {r_minor}, R = {r_major}"
        )));
    }
    Ok(BraneModel {
        kind: BraneKind::Klein {
            r_major,
            r_minor,
            ell: positive(ell, "klein scale ell")?,
        },
    })
}

impl BraneModel {
    pub fn name(&self) -> &'static str {
        match self.kind {
            BraneKind::Plane { .. } => "plane",
            BraneKind::Cylinder { .. } => "cylinder",
            BraneKind::Mobius { .. } => "mobius",
            BraneKind::Torus { .. } => "torus",
            BraneKind::Klein { .. } => "klein",
        }
    }

    /// Symbol values and β-partials at one point of the β-plane.
    pub fn jet(&self, beta: C64) -> SymbolJet {
        let (x, y) = (beta.re, beta.im);
        let i = C64::new(0.0, 1.0);
        match self.kind {
            BraneKind::Plane { big_l } => SymbolJet {
                a: C64::new(big_l, 0.0) * beta,
                a_dx: C64::new(big_l, 0.0),
                a_dy: i * big_l,
                x3: 0.0,
                x3_dx: 0.0,
                x3_dy: 0.0,
            },
            BraneKind::Cylinder {
                r,
                big_l,
                ell,
                radius,
            } => {
                let rl = match radius {
                    CylinderRadius::Dilated => r * (1.0 / (8.0 * ell * ell)).exp(),
                    CylinderRadius::Contracted => r * (-1.0 / (8.0 * ell * ell)).exp(),
                };
                let a = C64::from_polar(rl, y / ell);
                SymbolJet {
                    a,
                    a_dx: C64::new(0.0, 0.0),
                    a_dy: i / ell * a,
                    x3: big_l * x,
                    x3_dx: big_l,
                    x3_dy: 0.0,
                }
            }
            BraneKind::Mobius { r, width, ell } => {
                let (sh, ch) = (y / (2.0 * ell)).sin_cos();
                let phase = C64::from_polar(1.0, y / ell);
                let a = (r + width * x * ch) * phase;
                SymbolJet {
                    a,
                    a_dx: width * ch * phase,
                    a_dy: (-width * x / (2.0 * ell) * sh) * phase + i / ell * a,
                    x3: width * x * sh,
                    x3_dx: width * sh,
                    x3_dy: width * x / (2.0 * ell) * ch,
                }
            }
            BraneKind::Torus {
                r_major,
                r_minor,
                ell,
            } => {
                let e8 = (1.0 / (8.0 * ell * ell)).exp();
                let rl = r_major * e8;
                let rsl = r_minor * e8;
                let rpl = r_minor * (1.0 / (4.0 * ell * ell)).exp();
                let (sy, cy) = (y / ell).sin_cos();
                let phase = C64::from_polar(1.0, x / ell);
                let a = (rl + rpl * cy) * phase;
                SymbolJet {
                    a,
                    a_dx: i / ell * a,
                    a_dy: (-rpl / ell * sy) * phase,
                    x3: rsl * sy,
                    x3_dx: 0.0,
                    x3_dy: rsl / ell * cy,
                }
            }
            BraneKind::Klein {
                r_major,
                r_minor,
                ell,
            } => {
                let r = r_minor;
                let (s1, c1) = (x / (2.0 * ell)).sin_cos();
                let (sy, cy) = (y / ell).sin_cos();
                let (s2y, c2y) = (2.0 * y / ell).sin_cos();
                let phase = C64::from_polar(1.0, x / ell);
                let bracket = r_major + r * c1 * sy - r * s1 * s2y;
                let bracket_dx = -r / (2.0 * ell) * s1 * sy - r / (2.0 * ell) * c1 * s2y;
                let bracket_dy = r / ell * c1 * cy - 2.0 * r / ell * s1 * c2y;
                let a = bracket * phase;
                SymbolJet {
                    a,
                    a_dx: bracket_dx * phase + i / ell * a,
                    a_dy: bracket_dy * phase,
                    x3: r * s1 * sy - r * c1 * s2y,
                    x3_dx: r / (2.0 * ell) * c1 * sy + r / (2.0 * ell) * s1 * s2y,
                    x3_dy: r / ell * s1 * cy - 2.0 * r / ell * c1 * c2y,
                }
            }
        }
    }

    pub fn phi_a(&self, beta: C64) -> C64 {
        self.jet(beta).a
    }

    pub fn phi_x3(&self, beta: C64) -> f64 {
        self.jet(beta).x3
    }

    /// The symbols as evaluable handles (for the operator oracle).
    pub fn phi_a_symbol(&self) -> DiagonalSymbol {
        let m = *self;
        DiagonalSymbol::new(move |b| m.phi_a(b))
    }

    pub fn phi_x3_symbol(&self) -> DiagonalSymbol {
        let m = *self;
        DiagonalSymbol::new(move |b| C64::new(m.phi_x3(b), 0.0))
    }

    /// Branch map: chart point (with winding integers) to `α_A`.
    pub fn alpha_a(&self, pt: ChartPoint) -> C64 {
        let tau = 2.0 * std::f64::consts::PI;
        match self.kind {
            BraneKind::Plane { big_l } => C64::new(pt.s[0], pt.s[1]) / big_l,
            BraneKind::Cylinder { ell, .. } | BraneKind::Mobius { ell, .. } => {
                C64::new(pt.s[0], ell * (pt.s[1] + tau * pt.n[0] as f64))
            }
            BraneKind::Torus { ell, .. } | BraneKind::Klein { ell, .. } => C64::new(
                ell * (pt.s[0] + tau * pt.n[0] as f64),
                ell * (pt.s[1] + tau * pt.n[1] as f64),
            ),
        }
    }

    /// Constant chart tangents `∂α_A/∂s_k`.
    pub fn ds_alpha(&self) -> [C64; 2] {
        match self.kind {
            BraneKind::Plane { big_l } => {
                [C64::new(1.0 / big_l, 0.0), C64::new(0.0, 1.0 / big_l)]
            }
            BraneKind::Cylinder { ell, .. } | BraneKind::Mobius { ell, .. } => {
                [C64::new(1.0, 0.0), C64::new(0.0, ell)]
            }
            BraneKind::Torus { ell, .. } | BraneKind::Klein { ell, .. } => {
                [C64::new(ell, 0.0), C64::new(0.0, ell)]
            }
        }
    }

    /// Chart periods per coordinate (None for noncompact directions).
    pub fn periods(&self) -> [Option<f64>; 2] {
        let tau = 2.0 * std::f64::consts::PI;
        match self.kind {
            BraneKind::Plane { .. } => [None, None],
            BraneKind::Cylinder { .. } | BraneKind::Mobius { .. } => [None, Some(tau)],
            BraneKind::Torus { .. } | BraneKind::Klein { .. } => [Some(tau), Some(tau)],
        }
    }

    /// Action of one full turn of periodic coordinate `k` on the remaining
    /// coordinates: the Möbius turn mirrors `u`, the Klein θ¹-turn mirrors
    /// θ², everything else acts trivially.
    pub fn turn_action(&self, k: usize, s: [f64; 2]) -> [f64; 2] {
        match (self.kind, k) {
            (BraneKind::Mobius { .. }, 1) => [-s[0], s[1]],
            (BraneKind::Klein { .. }, 0) => [s[0], -s[1]],
            _ => s,
        }
    }

    /// Resolve a chart point to the embedded surface point.
    pub fn resolve(&self, pt: ChartPoint) -> SurfacePoint {
        let alpha_a = self.alpha_a(pt);
        let j = self.jet(alpha_a);
        SurfacePoint {
            coords: pt,
            alpha_a,
            x: [j.a.re, j.a.im, j.x3],
        }
    }

    /// Point context for the integral engine: caches the base jet and
    /// chart tangents at `pt`.
    pub fn at(&self, pt: ChartPoint) -> PointContext<'_> {
        let alpha_a = self.alpha_a(pt);
        PointContext {
            model: self,
            alpha_a,
            base: self.jet(alpha_a),
            ds: self.ds_alpha(),
        }
    }

    /// Finite-difference chart partials of `Δφ` (central differences at
    /// `h` and `h/2` with one Richardson level); cross-check for the
    /// analytic route and fallback for symbols without partials.
    pub fn delta_jet_fd(&self, pt: ChartPoint, beta: C64, h: f64) -> DeltaJet {
        let ctx = self.at(pt);
        let (a, x3) = ctx.delta(beta);
        let mut a_ds = [C64::new(0.0, 0.0); 2];
        let mut x3_ds = [0.0; 2];
        for k in 0..2 {
            let shift = |step: f64| -> (C64, f64) {
                let mut s = pt.s;
                s[k] += step;
                let c = self.at(ChartPoint { s, n: pt.n });
                c.delta(beta)
            };
            let central = |step: f64| -> (C64, f64) {
                let (ap, xp) = shift(step);
                let (am, xm) = shift(-step);
                ((ap - am) / (2.0 * step), (xp - xm) / (2.0 * step))
            };
            let (a1, x1) = central(h);
            let (a2, x2) = central(h / 2.0);
            // One Richardson level for the O(h²) central stencil.
            a_ds[k] = (a2 * 4.0 - a1) / 3.0;
            x3_ds[k] = (4.0 * x2 - x1) / 3.0;
        }
        DeltaJet { a, x3, a_ds, x3_ds }
    }

    /// Truncated-operator realization `(A, X³)` where the catalog provides
    /// one in closed form; the Klein bottle goes through the numerical
    /// symbol-to-operator route instead (see [`crate::oracle`]).
    pub fn operator_realization(&self, trunc: FockTruncation) -> Option<(DMatrix<C64>, DMatrix<C64>)> {
        let c = trunc.cutoff;
        let zero = DMatrix::<C64>::zeros(c, c);
        match self.kind {
            BraneKind::Plane { big_l } => {
                let a_op = trunc.annihilation() * C64::new(big_l, 0.0);
                Some((a_op, zero))
            }
            BraneKind::Cylinder {
                r,
                big_l,
                ell,
                radius,
            } => {
                let scale = match radius {
                    CylinderRadius::Dilated => r,
                    CylinderRadius::Contracted => r * (-1.0 / (4.0 * ell * ell)).exp(),
                };
                let a_op =
                    displacement_matrix(C64::new(-1.0 / (2.0 * ell), 0.0), trunc) * C64::new(scale, 0.0);
                let x3 = (trunc.annihilation() + trunc.creation()) * C64::new(big_l / 2.0, 0.0);
                Some((a_op, x3))
            }
            BraneKind::Mobius { r, width, ell } => {
                let a = trunc.annihilation();
                let adag = trunc.creation();
                let e = |cc: f64| exp_lowering(cc, trunc) * exp_lowering(-cc, trunc).transpose();
                // E(c) = e^{c a} e^{−c a⁺}; the anti-normal symbol of the
                // word a·E(c) is β e^{2ic Im β}, of E(c)·a⁺ is β̄ e^{2ic Im β}.
                let e_half = e(1.0 / (2.0 * ell));
                let e3 = e(3.0 / (4.0 * ell));
                let e1 = e(1.0 / (4.0 * ell));
                let e1m = e(-1.0 / (4.0 * ell));
                let sum31 = &e3 + &e1;
                let a_op = e_half * C64::new(r, 0.0)
                    + (&a * &sum31 + &sum31 * &adag) * C64::new(width / 4.0, 0.0);
                let dif = &e1 - &e1m;
                let x3 = (&a * &dif + &dif * &adag) * C64::new(0.0, -width / 4.0);
                Some((a_op, x3))
            }
            BraneKind::Torus {
                r_major,
                r_minor,
                ell,
            } => {
                let d = |z: C64| displacement_matrix(z, trunc);
                let i = C64::new(0.0, 1.0);
                let a_op = d(i / (2.0 * ell)) * C64::new(r_major, 0.0)
                    + (d(C64::new(-1.0, 1.0) / (2.0 * ell)) + d(C64::new(1.0, 1.0) / (2.0 * ell)))
                        * C64::new(r_minor / 2.0, 0.0);
                let x3 = (d(C64::new(-1.0 / (2.0 * ell), 0.0)) - d(C64::new(1.0 / (2.0 * ell), 0.0)))
                    * (C64::new(r_minor / 2.0, 0.0) / i);
                Some((a_op, x3))
            }
            BraneKind::Klein { .. } => None,
        }
    }
}

/// `e^{c a}` on the truncation: the series terminates because `a` is
/// nilpotent there, so this is exact.
fn exp_lowering(c: f64, trunc: FockTruncation) -> DMatrix<C64> {
    let n = trunc.cutoff;
    let a = trunc.annihilation();
    let mut term = DMatrix::<C64>::identity(n, n);
    let mut acc = term.clone();
    for k in 1..n {
        term = (&a * term) * C64::new(c / k as f64, 0.0);
        acc += &term;
    }
    acc
}

/// Cached state for evaluating symbol differences at one chart point.
pub struct PointContext<'a> {
    pub model: &'a BraneModel,
    pub alpha_a: C64,
    base: SymbolJet,
    ds: [C64; 2],
}

impl PointContext<'_> {
    /// `(Δφ_A, Δφ_{X³})` at offset β.
    pub fn delta(&self, beta: C64) -> (C64, f64) {
        let j = self.model.jet(self.alpha_a + beta);
        (j.a - self.base.a, j.x3 - self.base.x3)
    }

    /// Symbol differences together with their chart partials.
    pub fn delta_jet(&self, beta: C64) -> DeltaJet {
        let j = self.model.jet(self.alpha_a + beta);
        let d_dx = j.a_dx - self.base.a_dx;
        let d_dy = j.a_dy - self.base.a_dy;
        let x_dx = j.x3_dx - self.base.x3_dx;
        let x_dy = j.x3_dy - self.base.x3_dy;
        let mut a_ds = [C64::new(0.0, 0.0); 2];
        let mut x3_ds = [0.0; 2];
        for k in 0..2 {
            let (tr, ti) = (self.ds[k].re, self.ds[k].im);
            a_ds[k] = d_dx * tr + d_dy * ti;
            x3_ds[k] = x_dx * tr + x_dy * ti;
        }
        DeltaJet {
            a: j.a - self.base.a,
            x3: j.x3 - self.base.x3,
            a_ds,
            x3_ds,
        }
    }

    /// `D(β) = |Δφ_A|² + Δφ_{X³}²`, the kernel denominator.
    pub fn d_weight(&self, beta: C64) -> f64 {
        let (da, dx) = self.delta(beta);
        da.norm_sqr() + dx * dx
    }

    pub fn ds(&self) -> [C64; 2] {
        self.ds
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_jet_matches_finite_differences() {
        let models = [
            make_plane(1.3).unwrap(),
            make_cylinder(1.0, 0.8, 1.7).unwrap(),
            make_mobius(1.0, 2.0, 9.0).unwrap(),
            make_torus(2.0, 1.0, 3.0).unwrap(),
            make_klein(2.0, 1.0, 2.0).unwrap(),
        ];
        let beta = C64::new(0.37, -0.81);
        for m in &models {
            let pt = ChartPoint::new(0.4, 1.1);
            let jet = m.at(pt).delta_jet(beta);
            let fd = m.delta_jet_fd(pt, beta, 1e-5);
            for k in 0..2 {
                assert!(
                    (jet.a_ds[k] - fd.a_ds[k]).norm() < 1e-8,
                    "{} coord {k}: {} vs {}",
                    m.name(),
                    jet.a_ds[k],
                    fd.a_ds[k]
                );
                assert!(
                    (jet.x3_ds[k] - fd.x3_ds[k]).abs() < 1e-8,
                    "{} coord {k} x3",
                    m.name()
                );
            }
        }
    }

    #[test]
    fn mobius_twist_is_exact_on_symbols() {
        let m = make_mobius_unscaled(1.5, 0.7, 2.0).unwrap();
        // φ(u + iℓ(θ+2π)) at chart (u, θ) equals φ(−u + iℓθ).
        let p_wound = ChartPoint::with_branch(0.6, 0.9, 1, 0);
        let p_mirror = ChartPoint::new(-0.6, 0.9);
        let a = m.resolve(p_wound);
        let b = m.resolve(p_mirror);
        for i in 0..3 {
            assert!((a.x[i] - b.x[i]).abs() < 1e-12, "component {i}");
        }
    }

    #[test]
    fn klein_twist_is_exact_on_symbols() {
        let m = make_klein(2.0, 1.0, 2.0).unwrap();
        let p_wound = ChartPoint::with_branch(0.7, 1.3, 1, 0);
        let p_twist = ChartPoint::new(0.7, -1.3);
        let a = m.resolve(p_wound);
        let b = m.resolve(p_twist);
        for i in 0..3 {
            assert!((a.x[i] - b.x[i]).abs() < 1e-12, "component {i}");
        }
    }
}

//! Adiabatic transport along paths drawn on eigensurfaces.
//!
//! A path is a polyline in chart coordinates, kept as a continuous lift:
//! winding accumulates in the coordinates (or in the branch integers) and is
//! never reduced mod 2π while integrating.  Along the path the two
//! quasicoherent channels (Λ, Λ*) transport with the Hermitian connection
//!
//! ```text
//!   𝐀 = [ A_geo + A_def + A_topo        conj C ]
//!       [ C                  A_geo + A_def − A_topo ]
//! ```
//!
//! pulled back to the path parameter.  `abelian_holonomy` integrates the
//! diagonal parts by composite trapezoid with Richardson extrapolation;
//! `nonabelian_transport` integrates dU/ds = −i 𝐀(s) U with a classical
//! 4th-order Runge–Kutta scheme on a shared grid of 2·steps+1 connection
//! samples (in the interaction picture of the scalar A_geo+A_def part,
//! which can wind by hundreds of radians per turn), and cross-checks the
//! result against the factored form
//!
//! ```text
//!   U = e^{−i∮(A_geo+A_def)} · e^{−i σ₃ ∮A_topo} · Pexp(−i∮C̃),
//!   C̃ = e^{−2i∫A_topo} C,
//! ```
//!
//! which is an exact identity (intermediate representation).  All phases are
//! reported for the factor convention U ~ e^{−i∮A}: the stored
//! `geometric_phase`/`topological_phase` are the phases of the transported
//! channel factors, i.e. −∮A reduced to [0, 2π).
//!
//! Twisted lifts are supported: a constant-u lift over an odd number of
//! Möbius turns ends at the mirror image of its start point and is therefore
//! not closed on the surface.  Pass `closed = false` for such lifts; the
//! line integrals over the open lift are returned unchanged.

use std::f64::consts::TAU;

use nalgebra::Matrix2;

use crate::brane::{BraneKind, BraneModel, ChartPoint};
use crate::error::{Error, Result};
use crate::qcs::{Channel, QcsEngine};
use crate::{C64, I};

/// Polyline path in chart coordinates, kept as a continuous lift.
#[derive(Clone, Debug)]
pub struct PathSpec {
    /// Ordered waypoints; consecutive pairs are straight chart segments.
    pub waypoints: Vec<ChartPoint>,
    /// Whether the endpoints are identified on the surface (possibly through
    /// a period or twist of the brane).
    pub closed: bool,
}

impl PathSpec {
    /// Builds a path from waypoints.  All waypoints must carry the same
    /// branch integers; the lift is continuous in the chart coordinates.
    pub fn new(waypoints: Vec<ChartPoint>, closed: bool) -> Result<Self> {
        if waypoints.is_empty() {
            return Err(Error::InvalidParameter("path needs at least one waypoint".into()));
        }
        let n0 = waypoints[0].n;
        if waypoints.iter().any(|w| w.n != n0) {
            return Err(Error::InvalidParameter(
                "path waypoints must share branch integers; wind in the coordinates instead".into(),
            ));
        }
        Ok(Self { waypoints, closed })
    }

    /// Straight segment between two chart points.
    pub fn line(from: ChartPoint, to: ChartPoint, closed: bool) -> Result<Self> {
        Self::new(vec![from, to], closed)
    }

    /// Constant-transverse lift winding `p` times around the brane's
    /// angular coordinate, starting at `start`.  The `closed` flag is set
    /// honestly by comparing the resolved endpoints: an odd-turn Möbius lift
    /// at u ≠ 0 ends at the mirrored point and is reported open.
    pub fn angular_lift(model: &BraneModel, start: ChartPoint, p: i32) -> Result<Self> {
        let k = angular_index(model).ok_or_else(|| {
            Error::InvalidParameter("brane has no angular coordinate to wind".into())
        })?;
        let mut end = start;
        end.s[k] += TAU * p as f64;
        let xa = model.resolve(start).x;
        let xb = model.resolve(end).x;
        let scale = 1.0 + xa.iter().map(|v| v * v).sum::<f64>().sqrt();
        let dist = xa
            .iter()
            .zip(xb.iter())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        Self::new(vec![start, end], dist <= 1e-9 * scale)
    }

    /// Number of turns of the lifted angular coordinate, branch shifts
    /// included; 0 for branes without an angular coordinate.
    pub fn turns(&self, model: &BraneModel) -> i32 {
        let Some(k) = angular_index(model) else { return 0 };
        let a = self.waypoints[0];
        let b = self.waypoints[self.waypoints.len() - 1];
        let lift = (b.s[k] + TAU * b.n[0] as f64) - (a.s[k] + TAU * a.n[0] as f64);
        (lift / TAU).round() as i32
    }

    /// Total length of the polyline in chart coordinates.
    pub fn chart_length(&self) -> f64 {
        self.segments().iter().map(|(_, v)| (v[0] * v[0] + v[1] * v[1]).sqrt()).sum()
    }

    /// Consecutive (start, vector) chart segments.
    fn segments(&self) -> Vec<(ChartPoint, [f64; 2])> {
        self.waypoints
            .windows(2)
            .map(|w| (w[0], [w[1].s[0] - w[0].s[0], w[1].s[1] - w[0].s[1]]))
            .collect()
    }

    /// Checks a declared closure against the embedding; errors when the
    /// path claims to be closed but its resolved endpoints differ.
    fn validate_closure(&self, model: &BraneModel) -> Result<()> {
        if !self.closed {
            return Ok(());
        }
        let a = model.resolve(self.waypoints[0]).x;
        let b = model.resolve(self.waypoints[self.waypoints.len() - 1]).x;
        let scale = 1.0 + a.iter().map(|v| v * v).sum::<f64>().sqrt();
        let dist =
            a.iter().zip(b.iter()).map(|(p, q)| (p - q) * (p - q)).sum::<f64>().sqrt();
        if dist > 1e-9 * scale {
            return Err(Error::InvalidParameter(format!(
                "path declared closed but endpoints resolve {dist:.3e} apart on the surface"
            )));
        }
        Ok(())
    }
}

/// Chart index of the angular (winding) coordinate, if any.
fn angular_index(model: &BraneModel) -> Option<usize> {
    match model.kind {
        BraneKind::Plane { .. } => None,
        BraneKind::Cylinder { .. } | BraneKind::Mobius { .. } => Some(1),
        BraneKind::Torus { .. } | BraneKind::Klein { .. } => Some(0),
    }
}

/// Result of an abelian or non-abelian transport along a path.
#[derive(Clone, Debug)]
pub struct HolonomyResult {
    /// ∮ A_geo over the lift.
    pub geo_integral: f64,
    /// ∮ A_def over the lift.
    pub def_integral: f64,
    /// ∮ A_topo over the lift (Λ channel sign).
    pub topo_integral: f64,
    /// ∮ C over the lift (coupling 1-form, diagnostic).
    pub coupling_integral: C64,
    /// Phase of the geometric factor e^{−i∮(A_geo+A_def)}, in [0, 2π).
    pub geometric_phase: f64,
    /// Phase of the Λ-channel topological factor e^{−i∮A_topo}, in [0, 2π).
    pub topological_phase: f64,
    /// Transport matrix in the (Λ, Λ*) basis.
    pub u: Matrix2<C64>,
    /// Factored intermediate-representation evaluation of the same matrix
    /// (non-abelian transport only).
    pub u_factored: Option<Matrix2<C64>>,
    /// [U]_{∘∘}: amplitude to stay in the Λ channel.
    pub amp_same: C64,
    /// [U]_{*∘}: amplitude to cross into the Λ* channel.
    pub amp_cross: C64,
    /// Survival probability of the equal superposition (Λ+Λ*)/√2.
    pub survival_probability: f64,
    /// ‖U†U − 1‖_max of the direct transport matrix.
    pub unitarity_defect: f64,
    /// max entrywise |U_direct − U_factored| (non-abelian transport only).
    pub factorization_defect: Option<f64>,
    /// Turns of the lifted angular coordinate.
    pub turns: i32,
    /// All connection samples converged and the path quadrature settled.
    pub converged: bool,
}

/// Survival probability of the equal-superposition state after a `p`-turn
/// loop on a cylinder of index `kappa`: cos²(2πκp).
pub fn survival_probability(kappa: f64, p: i32) -> f64 {
    let c = (TAU * kappa * p as f64).cos();
    c * c
}

/// Survival probability |⟨Ψ(0)|Ψ(T)⟩|² of the equal superposition
/// (|Λ⟩+|Λ*⟩)/√2 under the transport matrix `u`.
pub fn superposition_survival(u: &Matrix2<C64>) -> f64 {
    let amp = 0.5 * (u[(0, 0)] + u[(0, 1)] + u[(1, 0)] + u[(1, 1)]);
    amp.norm_sqr()
}

/// Relabels a state reference after `p` turns of the angular coordinate:
/// |Λ_n(…, ϑ+2πp)⟩ = |Λ_{n+p}(…, ϑ)⟩.  The angular coordinate is reduced by
/// 2πp while the branch integer absorbs the turns, so the branch map α_A is
/// exactly unchanged.  Composing with the brane's twist map afterwards gives
/// the fundamental-domain label (Möbius mirrors u on odd turns, the Klein
/// bottle mirrors θ²); the embedded point is identical either way.  Branes
/// without an angular coordinate are returned unchanged.
pub fn apply_winding(model: &BraneModel, pt: ChartPoint, p: i32) -> ChartPoint {
    let Some(k) = angular_index(model) else { return pt };
    let mut out = pt;
    out.s[k] -= TAU * p as f64;
    out.n[0] += p;
    out
}

/// Connection pulled back to a path node: components per unit of the local
/// segment parameter.
#[derive(Clone, Copy)]
struct NodeConn {
    geo: f64,
    def: f64,
    topo: f64,
    c: C64,
    converged: bool,
}

/// One polyline segment sampled on a uniform grid of 2n+1 nodes (RK4 stage
/// grid with step h = 1/n in the local parameter).
struct SampledSegment {
    h: f64,
    nodes: Vec<NodeConn>,
}

/// Samples the connection along the path with `steps` RK4 steps distributed
/// over the segments by chart length (2·steps+1 samples overall, stage
/// nodes shared between the integrators).
fn sample_path(engine: &QcsEngine, path: &PathSpec, steps: usize) -> Result<Vec<SampledSegment>> {
    let segs = path.segments();
    let total: f64 = path.chart_length();
    let mut out = Vec::new();
    for (start, vec) in segs {
        let len = (vec[0] * vec[0] + vec[1] * vec[1]).sqrt();
        if len == 0.0 {
            continue;
        }
        let share = if total > 0.0 { len / total } else { 1.0 };
        // Even step count so the trapezoid grids at strides 1, 2, 4 all exist.
        let n = (((steps as f64 * share / 2.0).round() as usize).max(1)) * 2;
        let mut nodes = Vec::with_capacity(2 * n + 1);
        for j in 0..=2 * n {
            let t = j as f64 / (2 * n) as f64;
            let pt = ChartPoint {
                s: [start.s[0] + t * vec[0], start.s[1] + t * vec[1]],
                n: start.n,
            };
            let cs = engine.connection(pt, Channel::Lambda)?;
            nodes.push(NodeConn {
                geo: cs.a_geo[0] * vec[0] + cs.a_geo[1] * vec[1],
                def: cs.a_def[0] * vec[0] + cs.a_def[1] * vec[1],
                topo: cs.a_topo[0] * vec[0] + cs.a_topo[1] * vec[1],
                c: cs.c[0] * vec[0] + cs.c[1] * vec[1],
                converged: cs.converged,
            });
        }
        out.push(SampledSegment { h: 1.0 / n as f64, nodes });
    }
    Ok(out)
}

/// Composite trapezoid at three nested spacings with two Richardson steps;
/// returns (integral, error estimate).  `h` is the fine grid spacing and
/// the node count must be ≡ 1 mod 4 so both coarser grids exist.
fn trapezoid_richardson(values: &[f64], h: f64) -> (f64, f64) {
    let trap = |stride: usize| {
        let m = values.len() - 1;
        let mut acc = 0.5 * (values[0] + values[m]);
        for j in (stride..m).step_by(stride) {
            acc += values[j];
        }
        acc * h * stride as f64
    };
    let r1 = (4.0 * trap(1) - trap(2)) / 3.0;
    let r2 = (4.0 * trap(2) - trap(4)) / 3.0;
    ((16.0 * r1 - r2) / 15.0, (r1 - r2).abs())
}

/// Phase of the factor e^{−iφ}, reduced to [0, 2π).
fn factor_phase(integral: f64) -> f64 {
    (-integral).rem_euclid(TAU)
}

/// Line integrals of the abelian connection parts over the path.
///
/// The trapezoid grid holds 2n+1 samples per segment with n proportional to
/// the segment's chart length (at least 128 intervals per turn overall).
/// For a path that claims to be closed the endpoints are checked against
/// the embedding first.  The returned transport matrix is the abelian
/// factor alone, diag(e^{−i∮A₊}, e^{−i∮A₋}); the coupling integral is
/// reported but not exponentiated.
pub fn abelian_holonomy(
    engine: &QcsEngine,
    path: &PathSpec,
) -> Result<HolonomyResult> {
    let model = engine.model;
    let p = path.turns(model);
    let steps = 128 * (p.unsigned_abs() as usize).max(1);
    abelian_holonomy_with(engine, path, steps)
}

/// `abelian_holonomy` with an explicit trapezoid interval count.
pub fn abelian_holonomy_with(
    engine: &QcsEngine,
    path: &PathSpec,
    steps: usize,
) -> Result<HolonomyResult> {
    let model = engine.model;
    path.validate_closure(model)?;
    let turns = path.turns(model);
    if path.chart_length() == 0.0 {
        return Ok(identity_result(turns));
    }
    let segs = sample_path(engine, path, steps)?;
    let mut geo = 0.0;
    let mut def = 0.0;
    let mut topo = 0.0;
    let mut coupling = C64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut conn_ok = true;
    for seg in &segs {
        let pull = |f: &dyn Fn(&NodeConn) -> f64| {
            let vals: Vec<f64> = seg.nodes.iter().map(f).collect();
            trapezoid_richardson(&vals, 0.5 * seg.h)
        };
        let (g, eg) = pull(&|n| n.geo);
        let (d, ed) = pull(&|n| n.def);
        let (t, et) = pull(&|n| n.topo);
        let (cr, ecr) = pull(&|n| n.c.re);
        let (ci, eci) = pull(&|n| n.c.im);
        geo += g;
        def += d;
        topo += t;
        coupling += C64::new(cr, ci);
        err += eg + ed + et + ecr + eci;
        conn_ok &= seg.nodes.iter().all(|n| n.converged);
    }
    let phase_g = geo + def;
    let u = Matrix2::new(
        (-I * phase_g).exp() * (-I * topo).exp(),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        (-I * phase_g).exp() * (I * topo).exp(),
    );
    let scale = 1.0 + geo.abs().max(topo.abs());
    Ok(HolonomyResult {
        geo_integral: geo,
        def_integral: def,
        topo_integral: topo,
        coupling_integral: coupling,
        geometric_phase: factor_phase(phase_g),
        topological_phase: factor_phase(topo),
        amp_same: u[(0, 0)],
        amp_cross: u[(1, 0)],
        survival_probability: superposition_survival(&u),
        unitarity_defect: unitarity_defect(&u),
        factorization_defect: None,
        u,
        u_factored: None,
        turns,
        converged: conn_ok && err <= 1e-8 * scale,
    })
}

/// max entrywise norm of U†U − 1.
fn unitarity_defect(u: &Matrix2<C64>) -> f64 {
    let g = u.adjoint() * u;
    let mut defect: f64 = 0.0;
    for r in 0..2 {
        for c in 0..2 {
            let id = if r == c { 1.0 } else { 0.0 };
            defect = defect.max((g[(r, c)] - C64::new(id, 0.0)).norm());
        }
    }
    defect
}

/// Identity transport for a zero-length path.
fn identity_result(turns: i32) -> HolonomyResult {
    let u = Matrix2::identity();
    HolonomyResult {
        geo_integral: 0.0,
        def_integral: 0.0,
        topo_integral: 0.0,
        coupling_integral: C64::new(0.0, 0.0),
        geometric_phase: 0.0,
        topological_phase: 0.0,
        amp_same: u[(0, 0)],
        amp_cross: u[(1, 0)],
        survival_probability: 1.0,
        unitarity_defect: 0.0,
        factorization_defect: Some(0.0),
        u,
        u_factored: Some(u),
        turns,
        converged: true,
    }
}

/// Path-ordered transport of the full 2×2 connection over the path.
///
/// Integrates dU/ds = −i 𝐀(s) U by classical RK4 on a shared stage grid of
/// 2·steps+1 connection samples (steps ≥ 100), then rebuilds U through the
/// exact factored form e^{−i∮A₊}·e^{−iσ₃∮A_topo}·Pexp(−i∮C̃) with the
/// dressed coupling C̃ = e^{−2i∫A_topo}C integrated on the same grid, and
/// reports the entrywise difference as `factorization_defect`.  A unitarity
/// defect beyond 1e−6 aborts with step-size advice.
pub fn nonabelian_transport(
    engine: &QcsEngine,
    path: &PathSpec,
    steps: usize,
) -> Result<HolonomyResult> {
    if steps < 100 {
        return Err(Error::InvalidParameter(format!(
            "nonabelian transport needs steps >= 100, got {steps}"
        )));
    }
    let model = engine.model;
    path.validate_closure(model)?;
    let turns = path.turns(model);
    if path.chart_length() == 0.0 {
        return Ok(identity_result(turns));
    }
    let segs = sample_path(engine, path, steps)?;

    // The abelian part A_geo+A_def is a scalar multiple of the identity in
    // 𝐀, so U(t) = e^{−i∫(A_geo+A_def)} W(t) exactly, with W driven by the
    // bounded generator [[A_topo, conj C], [C, −A_topo]].  Integrating W
    // instead of U keeps the RK4 step well inside its stability region even
    // when the geometric phase winds by hundreds of radians per turn.
    let mut w = Matrix2::<C64>::identity();
    let mut v = Matrix2::<C64>::identity();
    let mut i_topo = 0.0;
    let mut i_gd = 0.0;
    for seg in &segs {
        let h = seg.h;
        let n = (seg.nodes.len() - 1) / 2;
        for i in 0..n {
            let a = &seg.nodes[2 * i];
            let m = &seg.nodes[2 * i + 1];
            let b = &seg.nodes[2 * i + 2];
            w = rk4_step(w, h, &interaction_matrix(a), &interaction_matrix(m), &interaction_matrix(b));

            // Cumulative ∫A_topo and ∫(A_geo+A_def) on the half grid: open
            // Newton–Cotes to the midpoint, Simpson to the endpoint (both
            // O(h⁵) local).
            let i_mid = i_topo + h / 24.0 * (5.0 * a.topo + 8.0 * m.topo - b.topo);
            let i_end = i_topo + h / 6.0 * (a.topo + 4.0 * m.topo + b.topo);
            v = rk4_step(
                v,
                h,
                &dressed_coupling(a, i_topo),
                &dressed_coupling(m, i_mid),
                &dressed_coupling(b, i_end),
            );
            i_topo = i_end;
            let gd = |nd: &NodeConn| nd.geo + nd.def;
            i_gd += h / 6.0 * (gd(a) + 4.0 * gd(m) + gd(b));
        }
    }
    let u = w * (-I * i_gd).exp();

    let defect = unitarity_defect(&u);
    if defect > 1e-6 {
        return Err(Error::NoConvergence(format!(
            "transport matrix non-unitary (defect {defect:.3e}); increase steps beyond {steps}"
        )));
    }

    // Abelian pieces on the same grid for the report fields.
    let mut geo = 0.0;
    let mut def = 0.0;
    let mut topo = 0.0;
    let mut coupling = C64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut conn_ok = true;
    for seg in &segs {
        let pull = |f: &dyn Fn(&NodeConn) -> f64| {
            let vals: Vec<f64> = seg.nodes.iter().map(f).collect();
            trapezoid_richardson(&vals, 0.5 * seg.h)
        };
        let (g, eg) = pull(&|nd| nd.geo);
        let (d, ed) = pull(&|nd| nd.def);
        let (t, et) = pull(&|nd| nd.topo);
        let (cr, _) = pull(&|nd| nd.c.re);
        let (ci, _) = pull(&|nd| nd.c.im);
        geo += g;
        def += d;
        topo += t;
        coupling += C64::new(cr, ci);
        err += eg + ed + et;
        conn_ok &= seg.nodes.iter().all(|nd| nd.converged);
    }

    // Factored assembly shares the cumulative scalar phase, so the defect
    // isolates the σ₃/coupling splitting of the path-ordered factor.
    let sigma = Matrix2::new(
        (-I * i_topo).exp(),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        (I * i_topo).exp(),
    );
    let u_factored = sigma * v * (-I * i_gd).exp();
    let mut fact_defect: f64 = 0.0;
    for r in 0..2 {
        for c in 0..2 {
            fact_defect = fact_defect.max((u[(r, c)] - u_factored[(r, c)]).norm());
        }
    }

    let scale = 1.0 + geo.abs().max(topo.abs());
    Ok(HolonomyResult {
        geo_integral: geo,
        def_integral: def,
        topo_integral: topo,
        coupling_integral: coupling,
        geometric_phase: factor_phase(geo + def),
        topological_phase: factor_phase(topo),
        amp_same: u[(0, 0)],
        amp_cross: u[(1, 0)],
        survival_probability: superposition_survival(&u),
        unitarity_defect: defect,
        factorization_defect: Some(fact_defect),
        u,
        u_factored: Some(u_factored),
        turns,
        converged: conn_ok && err <= 1e-8 * scale,
    })
}

/// −i(𝐀 − (A_geo+A_def)·1) at a node: the traceless interaction-picture
/// generator [[A_topo, conj C], [C, −A_topo]] times −i.
fn interaction_matrix(nd: &NodeConn) -> Matrix2<C64> {
    let t = C64::new(nd.topo, 0.0);
    Matrix2::new(-I * t, -I * nd.c.conj(), -I * nd.c, I * t)
}

/// −i𝐂̃ at a node: off-diagonal coupling dressed by e^{−2i∫A_topo}.
fn dressed_coupling(nd: &NodeConn, i_topo: f64) -> Matrix2<C64> {
    let c = (-2.0 * I * i_topo).exp() * nd.c;
    Matrix2::new(C64::new(0.0, 0.0), -I * c.conj(), -I * c, C64::new(0.0, 0.0))
}

/// One RK4 step of U' = B(t)U from stage matrices at t, t+h/2, t+h.
fn rk4_step(
    u: Matrix2<C64>,
    h: f64,
    b0: &Matrix2<C64>,
    b_mid: &Matrix2<C64>,
    b1: &Matrix2<C64>,
) -> Matrix2<C64> {
    let k1 = b0 * u;
    let k2 = b_mid * (u + k1 * C64::new(0.5 * h, 0.0));
    let k3 = b_mid * (u + k2 * C64::new(0.5 * h, 0.0));
    let k4 = b1 * (u + k3 * C64::new(h, 0.0));
    u + (k1 + (k2 + k3) * C64::new(2.0, 0.0) + k4) * C64::new(h / 6.0, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brane::make_cylinder;
    use crate::quad::QuadratureSpec;

    #[test]
    fn survival_closed_form() {
        assert_eq!(survival_probability(0.3, 0), 1.0);
        assert!((survival_probability(0.5, 1) - 1.0).abs() < 1e-15);
        assert!(survival_probability(0.25, 1).abs() < 1e-15);
    }

    #[test]
    fn winding_preserves_branch_map() {
        let model = make_cylinder(1.5, 0.8, 1.2).unwrap();
        let lifted = ChartPoint::new(0.3, 0.9 + 2.0 * TAU);
        let wound = apply_winding(&model, lifted, 2);
        assert_eq!(wound.n[0], 2);
        let d = model.alpha_a(lifted) - model.alpha_a(wound);
        assert!(d.norm() < 1e-12);
    }

    #[test]
    fn contractible_cylinder_loop_has_trivial_topo_phase() {
        let model = make_cylinder(2.0, 1.0, 1.0).unwrap();
        let engine = QcsEngine::new(&model, QuadratureSpec::default());
        // Small u-θ rectangle, no winding.
        let pts = [
            ChartPoint::new(0.0, 0.2),
            ChartPoint::new(0.3, 0.2),
            ChartPoint::new(0.3, 0.6),
            ChartPoint::new(0.0, 0.6),
            ChartPoint::new(0.0, 0.2),
        ];
        let path = PathSpec::new(pts.to_vec(), true).unwrap();
        let hol = abelian_holonomy_with(&engine, &path, 64).unwrap();
        assert_eq!(hol.turns, 0);
        // A_topo,θ = −κ is u-independent and A_topo,u = 0, so the loop
        // integral cancels exactly between the two θ legs.
        assert!(hol.topo_integral.abs() < 1e-6, "topo {}", hol.topo_integral);
    }
}

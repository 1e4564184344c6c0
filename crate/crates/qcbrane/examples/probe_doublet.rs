//! Scratch probe: resolve the near-kernel ± doublet by minimizing ΔX² over
//! the 2-span, and compare reduced spin densities to the engine.

use nalgebra::{DMatrix, DVector};
use qcbrane::brane::{make_cylinder_with_mode, make_klein, ChartPoint, CylinderRadius};
use qcbrane::coherent::FockTruncation;
use qcbrane::oracle::{build_dirac, reduced_spin_density, DiracMatrix};
use qcbrane::qcs::{Channel, QcsEngine};
use qcbrane::quad::QuadratureSpec;
use qcbrane::C64;

fn two_smallest(dm: &DiracMatrix) -> (f64, f64, DVector<C64>, DVector<C64>) {
    let eig = nalgebra::SymmetricEigen::new(dm.matrix.clone());
    let mut idx: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    idx.sort_by(|&i, &j| {
        eig.eigenvalues[i]
            .abs()
            .partial_cmp(&eig.eigenvalues[j].abs())
            .unwrap()
            .then(i.cmp(&j))
    });
    (
        eig.eigenvalues[idx[0]],
        eig.eigenvalues[idx[1]],
        eig.eigenvectors.column(idx[0]).into_owned(),
        eig.eigenvectors.column(idx[1]).into_owned(),
    )
}

/// ΔX² of a unit state for the (X¹,X²,X³) built from dm blocks.
fn delta_sq(dm: &DiracMatrix, psi: &DVector<C64>) -> f64 {
    let c = dm.a.nrows();
    let half = C64::new(0.5, 0.0);
    let x1 = (&dm.a + dm.a.adjoint()) * half;
    let x2 = (&dm.a - dm.a.adjoint()) * C64::new(0.0, -0.5);
    let ops = [&x1, &x2, &dm.x3];
    let up = psi.rows(0, c).into_owned();
    let down = psi.rows(c, c).into_owned();
    let mut total = 0.0;
    for op in ops {
        let mu = (up.dotc(&(op * &up)) + down.dotc(&(op * &down))).re;
        let sq = op * op;
        let m2 = (up.dotc(&(&sq * &up)) + down.dotc(&(&sq * &down))).re;
        total += m2 - mu * mu;
    }
    total
}

fn minimize_uncertainty(
    dm: &DiracMatrix,
    v1: &DVector<C64>,
    v2: &DVector<C64>,
) -> (DVector<C64>, f64, f64, f64) {
    // Coarse grid over (t, phi), then local refinement.
    let state = |t: f64, phi: f64| -> DVector<C64> {
        let c1 = C64::new(t.cos(), 0.0);
        let c2 = C64::from_polar(t.sin(), phi);
        let mut s = v1 * c1 + v2 * c2;
        let n = s.norm();
        s /= C64::new(n, 0.0);
        s
    };
    let mut best = (0.0f64, 0.0f64, f64::INFINITY);
    for i in 0..48 {
        let t = std::f64::consts::FRAC_PI_2 * i as f64 / 47.0;
        for j in 0..64 {
            let phi = std::f64::consts::TAU * j as f64 / 64.0;
            let d = delta_sq(dm, &state(t, phi));
            if d < best.2 {
                best = (t, phi, d);
            }
        }
    }
    // Coordinate golden-section refinement.
    let mut t = best.0;
    let mut phi = best.1;
    let mut span_t = 0.08;
    let mut span_p = 0.2;
    for _ in 0..40 {
        let f = |tt: f64| delta_sq(dm, &state(tt, phi));
        let (mut a, mut b) = (t - span_t, t + span_t);
        for _ in 0..24 {
            let m1 = a + 0.382 * (b - a);
            let m2 = a + 0.618 * (b - a);
            if f(m1) < f(m2) {
                b = m2;
            } else {
                a = m1;
            }
        }
        t = 0.5 * (a + b);
        let g = |pp: f64| delta_sq(dm, &state(t, pp));
        let (mut a, mut b) = (phi - span_p, phi + span_p);
        for _ in 0..24 {
            let m1 = a + 0.382 * (b - a);
            let m2 = a + 0.618 * (b - a);
            if g(m1) < g(m2) {
                b = m2;
            } else {
                a = m1;
            }
        }
        phi = 0.5 * (a + b);
        span_t *= 0.5;
        span_p *= 0.5;
    }
    let s = state(t, phi);
    let d = delta_sq(dm, &s);
    (s, t, phi, d)
}

fn report(label: &str, dm: &DiracMatrix, psi: &DVector<C64>) {
    let rho = reduced_spin_density(psi);
    let resid = (&dm.matrix * psi).norm();
    let rayleigh = psi.dotc(&(&dm.matrix * psi)).re;
    println!(
        "{label}: rho [[{:.5}, {:.5}],[{:.5}, {:.5}]] |DΨ| {:.4e} <D> {:.4e} dX² {:.6}",
        rho[(0, 0)],
        rho[(0, 1)],
        rho[(1, 0)],
        rho[(1, 1)],
        resid,
        rayleigh,
        delta_sq(dm, psi)
    );
}

fn main() {
    // Cylinder ℓ=1.
    let model = make_cylinder_with_mode(1.0, 1.0, 1.0, CylinderRadius::Contracted).unwrap();
    let pt = ChartPoint::new(0.0, 0.0);
    let sp = model.resolve(pt);
    for cutoff in [96usize, 128] {
        let trunc = FockTruncation::new(cutoff).unwrap();
        let dm = build_dirac(&model, sp.x, trunc).unwrap();
        let (l1, l2, v1, v2) = two_smallest(&dm);
        println!("cylinder cutoff {cutoff}: lambda = {l1:.9e}, {l2:.9e}");
        report("  v1      ", &dm, &v1);
        report("  v2      ", &dm, &v2);
        let sym = (&v1 + &v2) * C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let anti = (&v1 - &v2) * C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        report("  sym     ", &dm, &sym);
        report("  anti    ", &dm, &anti);
        let (mstate, t, phi, d) = minimize_uncertainty(&dm, &v1, &v2);
        println!("  minimizer t={t:.6} phi={phi:.6} dX²={d:.8}");
        report("  min-dX² ", &dm, &mstate);
        // x_mean of the minimizer.
        let c = cutoff;
        let up = mstate.rows(0, c).into_owned();
        let down = mstate.rows(c, c).into_owned();
        let x1op = (&dm.a + dm.a.adjoint()) * C64::new(0.5, 0.0);
        let x = (up.dotc(&(&x1op * &up)) + down.dotc(&(&x1op * &down))).re;
        println!("  minimizer <X1> = {x:.6} (target {:.6})", sp.x[0]);
    }
    println!("engine golden kappa = 0.504995651593117");

    // Klein ℓ=2.
    let model = make_klein(2.0, 1.0, 2.0).unwrap();
    let pt = ChartPoint::new(0.7, 1.1);
    let sp = model.resolve(pt);
    let trunc = FockTruncation::new(96).unwrap();
    let dm = build_dirac(&model, sp.x, trunc).unwrap();
    let (l1, l2, v1, v2) = two_smallest(&dm);
    println!("klein: lambda = {l1:.9e}, {l2:.9e}");
    report("  v1      ", &dm, &v1);
    report("  v2      ", &dm, &v2);
    let (mstate, t, phi, d) = minimize_uncertainty(&dm, &v1, &v2);
    println!("  minimizer t={t:.6} phi={phi:.6} dX²={d:.8}");
    report("  min-dX² ", &dm, &mstate);
    let engine = QcsEngine { model: &model, quad: QuadratureSpec::default() };
    let kd = engine.density_matrix(pt, Channel::Lambda).unwrap();
    println!(
        "  engine rho [[{:.5}, {:.5}],[{:.5}, {:.5}]]",
        kd.rho[(0, 0)], kd.rho[(0, 1)], kd.rho[(1, 0)], kd.rho[(1, 1)]
    );

    // Cylinder ℓ=5 sanity: clean kernel?
    let model = make_cylinder_with_mode(1.0, 1.0, 5.0, CylinderRadius::Contracted).unwrap();
    let pt = ChartPoint::new(0.0, 0.0);
    let sp = model.resolve(pt);
    for cutoff in [32usize, 64, 128] {
        let trunc = FockTruncation::new(cutoff).unwrap();
        let dm = build_dirac(&model, sp.x, trunc).unwrap();
        let (l1, l2, _v1, _v2) = two_smallest(&dm);
        println!("cylinder l=5 cutoff {cutoff}: lambda = {l1:.6e}, {l2:.6e}");
    }
    let trunc = FockTruncation::new(128).unwrap();
    let dm = build_dirac(&model, sp.x, trunc).unwrap();
    let (_l1, _l2, v1, v2) = two_smallest(&dm);
    report("  l=5 v1  ", &dm, &v1);
    let (mstate, t, phi, d) = minimize_uncertainty(&dm, &v1, &v2);
    println!("  minimizer t={t:.6} phi={phi:.6} dX²={d:.8}");
    report("  min-dX² ", &dm, &mstate);
    let engine = QcsEngine { model: &model, quad: QuadratureSpec::default() };
    let kd = engine.density_matrix(pt, Channel::Lambda).unwrap();
    println!(
        "  engine rho l=5 [[{:.5}, {:.5}],[{:.5}, {:.5}]]",
        kd.rho[(0, 0)], kd.rho[(0, 1)], kd.rho[(1, 0)], kd.rho[(1, 1)]
    );

    let psi_rec = {
        let model = make_cylinder_with_mode(1.0, 1.0, 1.0, CylinderRadius::Contracted).unwrap();
        let engine = QcsEngine { model: &model, quad: QuadratureSpec::default() };
        engine
            .reconstruct_state(ChartPoint::new(0.0, 0.0), Channel::Lambda, FockTruncation::new(96).unwrap())
            .unwrap()
    };
    let _ = DMatrix::<C64>::zeros(1, 1);
    let n = psi_rec.norm();
    println!("reconstructed norm {n:.6}");
}

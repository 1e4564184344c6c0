//! Scratch probe: oracle cross-checks against the integral engine.

use qcbrane::brane::{make_cylinder_with_mode, make_klein, ChartPoint, CylinderRadius};
use qcbrane::coherent::FockTruncation;
use qcbrane::oracle::{build_dirac, kernel_state, reduced_spin_density, verify_props};
use qcbrane::qcs::{Channel, QcsEngine};
use qcbrane::quad::QuadratureSpec;

fn main() {
    // Cylinder ℓ=1 R/L=1 Contracted, point (0,0): reduced spin density from
    // the Fock kernel vs the frozen golden κ.
    let ell = 1.0;
    let model = make_cylinder_with_mode(1.0, 1.0, ell, CylinderRadius::Contracted).unwrap();
    let pt = ChartPoint::new(0.0, 0.0);
    let sp = model.resolve(pt);
    println!("cylinder x = {:?}", sp.x);
    for cutoff in [48usize, 96] {
        let trunc = FockTruncation::new(cutoff).unwrap();
        let dm = build_dirac(&model, sp.x, trunc).unwrap();
        let t0 = std::time::Instant::now();
        let kc = kernel_state(&dm).unwrap();
        let rho = reduced_spin_density(&kc.psi);
        let kappa_fock = rho[(0, 0)].re;
        println!(
            "cutoff {cutoff}: sigma_min {:.6e} second {:.6e} tail {:.3e} conclusive {} kappa_fock {:.12} offdiag {:.3e}  ({} ms)",
            kc.sigma_min,
            kc.sigma_second,
            kc.tail_mass,
            kc.conclusive,
            kappa_fock,
            rho[(0, 1)].norm(),
            t0.elapsed().as_millis()
        );
        let props = verify_props(&dm, &kc.psi).unwrap();
        println!(
            "  x_mean {:?} x_res {:.3e} spin {:?} identity {:.3e} saturation {:.3e}",
            props.x_mean, props.x_residual, props.spin, props.identity_residual, props.saturation_residual
        );
    }
    let golden = 0.504995651593117;
    println!("golden kappa {golden}");

    // σ_min monotone along the surface normal (cylinder point, 5 offsets).
    let trunc = FockTruncation::new(64).unwrap();
    let normal = [sp.x[0] / sp.x[0].hypot(sp.x[1]), sp.x[1] / sp.x[0].hypot(sp.x[1]), 0.0];
    let mut prev = -1.0f64;
    for k in 0..5 {
        let t = 0.05 * k as f64;
        let x = [sp.x[0] + t * normal[0], sp.x[1] + t * normal[1], sp.x[2]];
        let dm = build_dirac(&model, x, trunc).unwrap();
        let kc = kernel_state(&dm).unwrap();
        println!("offset {t:.2}: sigma_min {:.6e} (prev {prev:.6e})", kc.sigma_min);
        prev = kc.sigma_min;
    }

    // Klein bottle: symbol-quadrature Dirac at a moderate chart point,
    // cutoff 96, ℓ=2 vs engine density.
    let ell_k = 2.0;
    let model = make_klein(2.0, 1.0, ell_k).unwrap();
    let pt = ChartPoint::new(0.7, 1.1);
    let sp = model.resolve(pt);
    println!("klein x = {:?} alpha_A = {}", sp.x, sp.alpha_a);
    let t0 = std::time::Instant::now();
    let trunc = FockTruncation::new(96).unwrap();
    let dm = build_dirac(&model, sp.x, trunc).unwrap();
    println!("klein dirac built in {} ms", t0.elapsed().as_millis());
    let kc = kernel_state(&dm).unwrap();
    let rho_fock = reduced_spin_density(&kc.psi);
    println!(
        "klein sigma_min {:.6e} second {:.6e} tail {:.3e} conclusive {}",
        kc.sigma_min, kc.sigma_second, kc.tail_mass, kc.conclusive
    );
    let engine = QcsEngine { model: &model, quad: QuadratureSpec::default() };
    let kd = engine.density_matrix(pt, Channel::Lambda).unwrap();
    println!("engine rho conv {} excluded {:.3e}", kd.converged, kd.excluded_mass);
    let mut max_diff = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            let d = (rho_fock[(i, j)] - kd.rho[(i, j)]).norm();
            max_diff = max_diff.max(d);
        }
    }
    println!(
        "klein rho fock [[{:.6}, {:.6}],[{:.6}, {:.6}]]",
        rho_fock[(0, 0)], rho_fock[(0, 1)], rho_fock[(1, 0)], rho_fock[(1, 1)]
    );
    println!(
        "klein rho engine [[{:.6}, {:.6}],[{:.6}, {:.6}]]",
        kd.rho[(0, 0)], kd.rho[(0, 1)], kd.rho[(1, 0)], kd.rho[(1, 1)]
    );
    println!("klein max |diff| {max_diff:.6e}");
}

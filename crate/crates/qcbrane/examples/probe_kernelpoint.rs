//! Scratch probe: at which x is the engine-reconstructed cylinder state the
//! Dirac kernel?  Scans the radius of the target point.

use qcbrane::brane::{make_cylinder_with_mode, ChartPoint, CylinderRadius};
use qcbrane::coherent::FockTruncation;
use qcbrane::oracle::{build_dirac, kernel_state, reduced_spin_density, fidelity};
use qcbrane::qcs::{Channel, QcsEngine};
use qcbrane::quad::QuadratureSpec;

fn main() {
    let ell = 1.0;
    let model = make_cylinder_with_mode(1.0, 1.0, ell, CylinderRadius::Contracted).unwrap();
    let engine = QcsEngine { model: &model, quad: QuadratureSpec::default() };
    let pt = ChartPoint::new(0.0, 0.0);
    let trunc = FockTruncation::new(96).unwrap();
    let lam = engine.reconstruct_state(pt, Channel::Lambda, trunc).unwrap();
    println!("reconstructed norm = {:.12}", lam.norm());
    let rho = reduced_spin_density(&lam);
    println!(
        "reconstructed rho = [[{:.6}, {:.6}],[{:.6}, {:.6}]]",
        rho[(0, 0)], rho[(0, 1)], rho[(1, 0)], rho[(1, 1)]
    );
    // Tail mass.
    let c = 96;
    let mut tail = 0.0;
    for m in 87..c {
        tail += lam[m].norm_sqr() + lam[m + c].norm_sqr();
    }
    println!("tail mass (top 10%) = {:.3e}", tail);

    let norm = lam.norm();
    let unit = &lam / qcbrane::C64::new(norm, 0.0);
    // Scan the target radius.
    let r_emb = (-0.125f64).exp(); // symbol embedding radius
    let r_deep = (-0.375f64).exp(); // embedding * e^{-1/(4ℓ²)}
    for rho_t in [r_deep, 0.666, 0.70, 0.75, 0.80, r_emb, 0.9, 1.0] {
        let dm = build_dirac(&model, [rho_t, 0.0, 0.0], trunc).unwrap();
        let dv = &dm.matrix * &unit;
        println!("  x1 = {rho_t:.6}: |D Λ| = {:.6e}", dv.norm());
    }
    // Fine scan near the minimum.
    let mut best = (0.0, f64::INFINITY);
    for k in 0..81 {
        let rho_t = 0.60 + 0.005 * k as f64;
        let dm = build_dirac(&model, [rho_t, 0.0, 0.0], trunc).unwrap();
        let r = (&dm.matrix * &unit).norm();
        if r < best.1 {
            best = (rho_t, r);
        }
    }
    println!("best radius {:.4} residual {:.6e}", best.0, best.1);
    println!("r_emb = {r_emb:.6}, r_emb*e^-1/4 = {r_deep:.6}");

    // Overlap with the truncated kernel state at the embedding point and at
    // the best point.
    for rho_t in [r_emb, best.0] {
        let dm = build_dirac(&model, [rho_t, 0.0, 0.0], trunc).unwrap();
        let kc = kernel_state(&dm).unwrap();
        println!(
            "kernel at {rho_t:.4}: sigma_min {:.4e} fidelity with reconstructed {:.6}",
            kc.sigma_min,
            fidelity(&kc.psi, &unit)
        );
    }
}

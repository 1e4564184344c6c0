//! Scratch probe: transport accuracy and cost on cylinder and Möbius loops.

use std::f64::consts::{PI, TAU};
use std::time::Instant;

use qcbrane::brane::{make_cylinder, make_mobius, ChartPoint};
use qcbrane::qcs::QcsEngine;
use qcbrane::quad::QuadratureSpec;
use qcbrane::transport::{
    abelian_holonomy_with, nonabelian_transport, survival_probability, PathSpec,
};

fn main() {
    // Cylinder: survival vs closed form.
    let model = make_cylinder(5.0, 1.0, 1.0).unwrap();
    let engine = QcsEngine::new(&model, QuadratureSpec::default());
    let pt = ChartPoint::new(0.2, 0.7);
    let kd = engine.kappa_cylinder(pt).unwrap();
    let kappa = kd.rho[(0, 0)].re;
    println!("cylinder kappa = {:.12}", kappa);
    for p in [1i32, 2] {
        let path = PathSpec::angular_lift(&model, pt, p).unwrap();
        let t0 = Instant::now();
        let hol = nonabelian_transport(&engine, &path, 100 * p.unsigned_abs() as usize + 28).unwrap();
        let dt = t0.elapsed().as_secs_f64();
        println!(
            "p={p}: topo={:.10} (expect {:.10}) unit={:.2e} fact={:.2e} surv={:.10} (expect {:.10}) conv={} [{dt:.1}s]",
            hol.topo_integral,
            -TAU * kappa * p as f64,
            hol.unitarity_defect,
            hol.factorization_defect.unwrap(),
            hol.survival_probability,
            survival_probability(kappa, p),
            hol.converged,
        );
    }

    // Möbius: ∮A_topo closed form and factorization agreement.
    for ell in [20.0, 40.0] {
        let model = make_mobius(2.0, 1.0, ell).unwrap();
        let engine = QcsEngine::new(&model, QuadratureSpec::default());
        let (u0, th0) = (0.4, 0.9);
        for p in [1i32, 2] {
            let path = PathSpec::angular_lift(&model, ChartPoint::new(u0, th0), p).unwrap();
            let t0 = Instant::now();
            let hol = abelian_holonomy_with(&engine, &path, 128 * p.unsigned_abs() as usize).unwrap();
            let dt = t0.elapsed().as_secs_f64();
            let expect = -1.5 * PI * p as f64
                - (((-1.0f64).powi(p) - 1.0) / (4.0 * ell)) * (2.0 / 1.0) * u0 * (th0 / 2.0).sin();
            println!(
                "mobius ell={ell} p={p}: topo={:.8} expect={:.8} diff={:.2e} (tol {:.2e}) conv={} closed={} [{dt:.1}s]",
                hol.topo_integral,
                expect,
                (hol.topo_integral - expect).abs(),
                10.0 / (ell * ell),
                hol.converged,
                path.closed,
            );
        }
    }

    let model = make_mobius(2.0, 1.0, 100.0).unwrap();
    let engine = QcsEngine::new(&model, QuadratureSpec::default());
    let path = PathSpec::angular_lift(&model, ChartPoint::new(0.4, 0.9), 1).unwrap();
    let t0 = Instant::now();
    let hol = nonabelian_transport(&engine, &path, 150).unwrap();
    let dt = t0.elapsed().as_secs_f64();
    println!(
        "mobius ell=100 p=1: unit={:.2e} fact={:.2e} conv={} [{dt:.1}s]",
        hol.unitarity_defect,
        hol.factorization_defect.unwrap(),
        hol.converged,
    );
}

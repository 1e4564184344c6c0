//! Scratch probe: Klein bottle engine-vs-Fock comparison at a pole-like
//! point where the spin state is nearly pure, plus nearby points.

use qcbrane::brane::{make_klein, ChartPoint};
use qcbrane::coherent::FockTruncation;
use qcbrane::oracle::{build_dirac, kernel_state, reduced_spin_density, verify_props};
use qcbrane::qcs::{Channel, QcsEngine};
use qcbrane::quad::QuadratureSpec;

fn main() {
    let ell = 2.0;
    let model = make_klein(2.0, 1.0, ell).unwrap();
    let engine = QcsEngine { model: &model, quad: QuadratureSpec::default() };
    let trunc = FockTruncation::new(96).unwrap();
    for (s1, s2) in [
        (0.7f64, std::f64::consts::FRAC_PI_2),
        (0.3, std::f64::consts::FRAC_PI_2),
        (0.7, 1.2),
        (0.7, std::f64::consts::FRAC_PI_2 + 0.3),
        (0.0, std::f64::consts::FRAC_PI_2),
    ] {
        let pt = ChartPoint::new(s1, s2);
        let sp = model.resolve(pt);
        let kd = engine.density_matrix(pt, Channel::Lambda).unwrap();
        let dm = build_dirac(&model, sp.x, trunc).unwrap();
        let kc = kernel_state(&dm).unwrap();
        let rho_f = reduced_spin_density(&kc.psi);
        let mut max_diff = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                max_diff = max_diff.max((rho_f[(i, j)] - kd.rho[(i, j)]).norm());
            }
        }
        println!(
            "pt ({s1:.3},{s2:.3}): sigma_min {:.3e} second {:.3e} tail {:.1e}",
            kc.sigma_min, kc.sigma_second, kc.tail_mass
        );
        println!(
            "  engine [[{:.4}, {:.4}],[{:.4}, {:.4}]] conv {}",
            kd.rho[(0, 0)], kd.rho[(0, 1)], kd.rho[(1, 0)], kd.rho[(1, 1)], kd.converged
        );
        println!(
            "  fock   [[{:.4}, {:.4}],[{:.4}, {:.4}]]  max|diff| {:.4e}",
            rho_f[(0, 0)], rho_f[(0, 1)], rho_f[(1, 0)], rho_f[(1, 1)], max_diff
        );
        let props = verify_props(&dm, &kc.psi).unwrap();
        println!(
            "  x {:?} x_mean {:?} res {:.3e} spin ({:.3},{:.3},{:.3})",
            sp.x, props.x_mean, props.x_residual, props.spin[0], props.spin[1], props.spin[2]
        );
    }
}

use qcbrane::brane::{make_cylinder_with_mode, ChartPoint, CylinderRadius};
use qcbrane::qcs::{Channel, QcsEngine};
use qcbrane::quad::QuadratureSpec;

fn main() {
    let ells = [0.05, 0.1, 0.2, 0.35, 0.5, 0.7, 1.0, 1.5, 2.0, 3.0, 5.0];
    let tau = 2.0 * std::f64::consts::PI;
    for frac in [0.0f64, 0.125, 0.25] {
        println!("--- exclusion = max(1e-3, {frac} * 2πℓ) ---");
        for rl in [0.5, 1.0, 2.0] {
            print!("R/L={rl:3.1}: ");
            for &ell in &ells {
                let m = make_cylinder_with_mode(rl, 1.0, ell, CylinderRadius::Contracted).unwrap();
                let mut quad = QuadratureSpec::default();
                quad.exclusion_radius = (frac * tau * ell).max(1e-3);
                let eng = QcsEngine::new(&m, quad);
                let r = eng.density_matrix(ChartPoint::new(0.0, 0.0), Channel::Lambda).unwrap();
                print!("{:.4}{} ", r.rho[(0, 0)].re, if r.converged { "" } else { "*" });
            }
            println!();
        }
    }
}

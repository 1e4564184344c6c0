use qcbrane::brane::{make_cylinder_with_mode, ChartPoint, CylinderRadius};
use qcbrane::qcs::{Channel, QcsEngine};
use qcbrane::quad::QuadratureSpec;

fn main() {
    for ell in [1.0, 5.0, 20.0, 50.0, 100.0] {
        let m = make_cylinder_with_mode(1.0, 1.0, ell, CylinderRadius::Dilated).unwrap();
        let eng = QcsEngine::new(&m, QuadratureSpec::default());
        let r = eng
            .density_matrix(ChartPoint::new(0.2, 0.7), Channel::Lambda)
            .unwrap();
        let tr = r.rho.trace().re;
        println!(
            "ell={ell:7.2}  trace-1 = {:+.3e}  offdiag = {:.3e}  conv={} kappa={:.12}",
            tr - 1.0,
            r.rho[(0, 1)].norm(),
            r.converged,
            r.rho[(0, 0)].re
        );
    }
}

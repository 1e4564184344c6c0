use qcbrane::brane::{make_cylinder_with_mode, ChartPoint, CylinderRadius};
use qcbrane::qcs::{Channel, QcsEngine};
use qcbrane::quad::{QuadratureSpec, Scheme};

fn main() {
    let m = make_cylinder_with_mode(1.0, 1.0, 1.0, CylinderRadius::Contracted).unwrap();
    let pt = ChartPoint::new(0.0, 0.0);
    for (name, scheme, order, excl) in [
        ("polar-240", Scheme::Polar, 240usize, 0.05),
        ("tensor-240", Scheme::TensorHermite, 240, 0.05),
        ("polar-240-e1e-3", Scheme::Polar, 240, 1e-3),
        ("tensor-240-e1e-3", Scheme::TensorHermite, 240, 1e-3),
        ("polar-120", Scheme::Polar, 120, 0.05),
        ("tensor-120", Scheme::TensorHermite, 120, 0.05),
        ("tensor-400", Scheme::TensorHermite, 400, 0.05),
    ] {
        let quad = QuadratureSpec {
            scheme,
            order,
            exclusion_radius: excl,
            refine_factor: 2,
            tolerance: 1e-8,
        };
        let eng = QcsEngine::new(&m, quad);
        let r = eng.density_matrix(pt, Channel::Lambda).unwrap();
        println!(
            "{name:18} kappa = {:.15}  n_sq = {:.15}  conv={} excl_mass={:.3e} err_est_scale={:.3e}",
            r.rho[(0, 0)].re,
            r.n_sq,
            r.converged,
            r.excluded_mass,
            0.0
        );
    }
}

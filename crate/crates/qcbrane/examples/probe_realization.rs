//! Scratch probe: operator realizations vs symbol quadrature, leading block.

use nalgebra::DMatrix;
use qcbrane::brane::{
    make_cylinder_with_mode, make_klein, make_mobius, make_plane, make_torus, CylinderRadius,
};
use qcbrane::coherent::FockTruncation;
use qcbrane::oracle::operator_from_phi;
use qcbrane::C64;

fn block_diff(x: &DMatrix<C64>, y: &DMatrix<C64>, k: usize) -> f64 {
    let mut d = 0.0f64;
    for i in 0..k {
        for j in 0..k {
            d = d.max((x[(i, j)] - y[(i, j)]).norm());
        }
    }
    d
}

fn main() {
    let models = vec![
        ("plane", make_plane(1.3).unwrap()),
        (
            "cylinder-dil",
            make_cylinder_with_mode(1.0, 1.0, 1.0, CylinderRadius::Dilated).unwrap(),
        ),
        (
            "cylinder-con",
            make_cylinder_with_mode(1.0, 1.0, 1.0, CylinderRadius::Contracted).unwrap(),
        ),
        ("mobius", make_mobius(2.0, 1.0, 5.0).unwrap()),
        ("torus", make_torus(2.0, 1.0, 2.0).unwrap()),
        ("klein", make_klein(2.0, 1.0, 2.0).unwrap()),
    ];
    let big = FockTruncation::new(48).unwrap();
    let lead = 16;
    for (name, model) in &models {
        let a_q = operator_from_phi(&model.phi_a_symbol(), big).unwrap();
        let x_q = operator_from_phi(&model.phi_x3_symbol(), big).unwrap();
        match model.operator_realization(big) {
            Some((a_r, x_r)) => {
                println!(
                    "{name}: |A_real − A_quad| lead{lead} {:.3e}   |X3_real − X3_quad| {:.3e}",
                    block_diff(&a_r, &a_q, lead),
                    block_diff(&x_r, &x_q, lead)
                );
            }
            None => {
                println!(
                    "{name}: no realization; quad A[0..2,0..2] = [{:.4}, {:.4}; {:.4}, {:.4}]",
                    a_q[(0, 0)],
                    a_q[(0, 1)],
                    a_q[(1, 0)],
                    a_q[(1, 1)]
                );
                let herm = (&x_q - x_q.adjoint()).iter().map(|z| z.norm()).fold(0.0f64, f64::max);
                println!("  X3 hermiticity defect {herm:.3e}");
            }
        }
    }
}

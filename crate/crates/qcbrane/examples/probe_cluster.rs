//! Scratch probe: the low-|λ| eigenvalue cluster of the cylinder and Möbius
//! Dirac matrices and the spin structure of each member.

use nalgebra::DVector;
use qcbrane::brane::{make_cylinder_with_mode, make_mobius, ChartPoint, CylinderRadius};
use qcbrane::coherent::FockTruncation;
use qcbrane::oracle::{build_dirac, reduced_spin_density};
use qcbrane::qcs::{Channel, QcsEngine};
use qcbrane::quad::QuadratureSpec;
use qcbrane::C64;

fn main() {
    for (ell, cutoff) in [(1.0f64, 96usize), (5.0, 96)] {
        let model = make_cylinder_with_mode(1.0, 1.0, ell, CylinderRadius::Contracted).unwrap();
        let pt = ChartPoint::new(0.0, 0.0);
        let sp = model.resolve(pt);
        let trunc = FockTruncation::new(cutoff).unwrap();
        let dm = build_dirac(&model, sp.x, trunc).unwrap();
        let eig = nalgebra::SymmetricEigen::new(dm.matrix.clone());
        let mut idx: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        idx.sort_by(|&i, &j| {
            eig.eigenvalues[i]
                .abs()
                .partial_cmp(&eig.eigenvalues[j].abs())
                .unwrap()
        });
        println!("cylinder ell={ell} cutoff={cutoff} x=({:.4},0,0):", sp.x[0]);
        for &i in idx.iter().take(10) {
            let v: DVector<C64> = eig.eigenvectors.column(i).into_owned();
            let rho = reduced_spin_density(&v);
            let c = cutoff;
            let up = v.rows(0, c).into_owned();
            let down = v.rows(c, c).into_owned();
            let x1op = (&dm.a + dm.a.adjoint()) * C64::new(0.5, 0.0);
            let x1 = (up.dotc(&(&x1op * &up)) + down.dotc(&(&x1op * &down))).re;
            let x2op = (&dm.a - dm.a.adjoint()) * C64::new(0.0, -0.5);
            let x2 = (up.dotc(&(&x2op * &up)) + down.dotc(&(&x2op * &down))).re;
            let x3 = (up.dotc(&(&dm.x3 * &up)) + down.dotc(&(&dm.x3 * &down))).re;
            println!(
                "  λ {:+.6e}  |Ψ0| {:.3e}  ρ [[{:.4}, {:.4}],[{:.4}, {:.4}]]  <X> ({:.3},{:.3},{:.3})",
                eig.eigenvalues[i],
                v[0].norm(),
                rho[(0, 0)].re,
                rho[(0, 1)],
                rho[(1, 0)],
                rho[(1, 1)].re,
                x1,
                x2,
                x3
            );
        }
    }

    // Möbius at large ℓ: engine vs spectral.
    let ell = 20.0;
    let model = make_mobius(2.0, 1.0, ell).unwrap();
    let pt = ChartPoint::new(0.4, 0.9);
    let sp = model.resolve(pt);
    println!("mobius ell={ell} x = ({:.4},{:.4},{:.4})", sp.x[0], sp.x[1], sp.x[2]);
    let trunc = FockTruncation::new(96).unwrap();
    let dm = build_dirac(&model, sp.x, trunc).unwrap();
    let eig = nalgebra::SymmetricEigen::new(dm.matrix.clone());
    let mut idx: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    idx.sort_by(|&i, &j| {
        eig.eigenvalues[i]
            .abs()
            .partial_cmp(&eig.eigenvalues[j].abs())
            .unwrap()
    });
    for &i in idx.iter().take(4) {
        let v: DVector<C64> = eig.eigenvectors.column(i).into_owned();
        let rho = reduced_spin_density(&v);
        println!(
            "  λ {:+.6e}  |Ψ0| {:.3e}  ρ [[{:.4}, {:.4}],[{:.4}, {:.4}]]",
            eig.eigenvalues[i],
            v[0].norm(),
            rho[(0, 0)].re,
            rho[(0, 1)],
            rho[(1, 0)],
            rho[(1, 1)].re
        );
    }
    let engine = QcsEngine { model: &model, quad: QuadratureSpec::default() };
    let kd = engine.density_matrix(pt, Channel::Lambda).unwrap();
    println!(
        "  engine rho [[{:.4}, {:.4}],[{:.4}, {:.4}]]",
        kd.rho[(0, 0)], kd.rho[(0, 1)], kd.rho[(1, 0)], kd.rho[(1, 1)]
    );
}

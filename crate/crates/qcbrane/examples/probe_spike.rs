//! Scratch probe: look for connection spikes along a Möbius lift.

use std::f64::consts::TAU;

use qcbrane::brane::{make_mobius, ChartPoint};
use qcbrane::qcs::{Channel, QcsEngine};
use qcbrane::quad::QuadratureSpec;

fn main() {
    let model = make_mobius(2.0, 1.0, 100.0).unwrap();
    let engine = QcsEngine::new(&model, QuadratureSpec::default());
    for j in 0..=40 {
        let th = 0.9 + TAU * j as f64 / 40.0;
        let cs = engine.connection(ChartPoint::new(0.4, th), Channel::Lambda).unwrap();
        println!(
            "th={th:7.3} n_sq={:12.4e} a_topo=({:9.3e},{:9.3e}) c=({:9.2e},{:9.2e}) res={:8.2e} conv={}",
            cs.n_sq,
            cs.a_topo[0],
            cs.a_topo[1],
            cs.c[0].norm(),
            cs.c[1].norm(),
            cs.gauge_residual,
            cs.converged
        );
    }
}

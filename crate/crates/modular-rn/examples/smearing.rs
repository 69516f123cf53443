//! Smoothing elements: double-Gaussian averages of the two commuting
//! unitary flows, their quadrature metadata, and convergence to the
//! identity as the order grows.

use modular_rn::algebra::{BlockAlgebra, InvariancePair, PositiveElement, Weight};
use modular_rn::construct::{smear_element, smear_limit_diagnostics};

fn main() {
    let algebra = BlockAlgebra::new(&[2]).unwrap();
    let h = PositiveElement::from_diagonal(&algebra, &[vec![1.0, 2.0]]).unwrap();
    let phi = Weight::new(h);
    let delta = PositiveElement::from_diagonal(&algebra, &[vec![3.0, 1.0]]).unwrap();
    let pair = InvariancePair::exact(&phi, delta, &algebra).unwrap();

    let en = smear_element(&pair, 2).unwrap();
    println!(
        "order 2 quadrature: {} x {} nodes ({})",
        en.meta.x_nodes, en.meta.y_nodes, en.meta.rule
    );
    println!(
        "estimated quadrature error: {:.3e}",
        en.meta.estimated_error
    );
    println!("hermiticity defect: {:.3e}", en.value.hermiticity_defect());

    println!("\ndistance to the identity by order:");
    for (n, r) in smear_limit_diagnostics(&pair, &algebra, &[1, 2, 4, 8], None).unwrap() {
        println!("  n = {n}: {r:.6e}");
    }
}

//! Build a weight from a density, pick a commuting positive operator, and
//! construct the rescaled weight whose density is d^{1/2} h d^{1/2}.

use modular_rn::algebra::{BlockAlgebra, InvariancePair, PositiveElement, Weight};
use modular_rn::construct::ConstructedWeight;

fn main() {
    let algebra = BlockAlgebra::new(&[2]).unwrap();
    let h = PositiveElement::from_diagonal(&algebra, &[vec![1.0, 2.0]]).unwrap();
    let phi = Weight::new(h);
    let delta = PositiveElement::from_diagonal(&algebra, &[vec![3.0, 1.0]]).unwrap();

    // lambda = 1, delta commutes with the density: certified exactly
    let pair = InvariancePair::exact(&phi, delta, &algebra).unwrap();
    let cw = ConstructedWeight::new(&algebra, phi, pair).unwrap();

    let diag: Vec<f64> = cw
        .weight()
        .density()
        .value()
        .block(0)
        .diagonal()
        .iter()
        .map(|z| z.re)
        .collect();
    println!("new density (diagonal): {diag:?}");
    println!(
        "value on the identity:  {}",
        cw.weight().eval(&algebra.identity()).re
    );

    for t in [-1.0, 0.5, 2.0] {
        println!(
            "cocycle residual at t = {t:>4}: {:.3e}",
            cw.construction_cocycle_residual(t)
        );
    }
}

//! The unitary path comparing two weights: chain rule, inverse rule,
//! intertwining, and the balanced-weight corner cross-check.

use modular_rn::algebra::{BlockAlgebra, Weight};
use modular_rn::modular::{
    balanced_corner_residual, cocycle_chain_residual, cocycle_inverse_residual,
    intertwining_residual,
};
use modular_rn::testutil::seeded;

fn main() {
    let mut rng = seeded(5);
    let algebra = BlockAlgebra::new(&[3]).unwrap();
    // two non-commuting densities
    let phi = Weight::new(algebra.random_positive(&mut rng, 0.2));
    let psi = Weight::new(algebra.random_positive(&mut rng, 0.2));
    let x = algebra.random_element(&mut rng);

    for t in [-2.0, 0.5, 1.5] {
        println!("t = {t}");
        println!(
            "  chain (s = 0.7):  {:.3e}",
            cocycle_chain_residual(&psi, &phi, 0.7, t)
        );
        println!(
            "  inverse:          {:.3e}",
            cocycle_inverse_residual(&psi, &phi, t)
        );
        println!(
            "  intertwining:     {:.3e}",
            intertwining_residual(&psi, &phi, t, &x)
        );
        println!(
            "  balanced corner:  {:.3e}",
            balanced_corner_residual(&algebra, &psi, &phi, t).unwrap()
        );
    }
}

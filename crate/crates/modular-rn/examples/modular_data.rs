//! The modular objects of a weight on a block algebra: flow, KMS property,
//! and the polar pieces J and Delta acting on the image of the algebra.

use modular_rn::algebra::{c64, BlockAlgebra, Weight};
use modular_rn::modular::{kms_residual, modular_flow, GnsRealization};
use modular_rn::testutil::seeded;

fn main() {
    let mut rng = seeded(42);
    let algebra = BlockAlgebra::new(&[3]).unwrap();
    let phi = Weight::new(algebra.random_positive(&mut rng, 0.2));

    let x = algebra.random_element(&mut rng);
    let y = algebra.random_element(&mut rng);
    println!(
        "KMS residual phi(sigma_-i(x) y) - phi(y x): {:.3e}",
        kms_residual(&phi, &x, &y)
    );

    let gns = GnsRealization::new(&algebra, phi.clone()).unwrap();
    let xi = gns.lambda_map(&x);
    let s_direct = gns.s_op().apply(&xi);
    let s_polar = gns.j().apply(&gns.delta_power(c64(0.5, 0.0)).apply(&xi));
    println!(
        "polar decomposition defect:                 {:.3e}",
        (&s_direct - &s_polar).norm()
    );

    // the flow at t and -t composes to the identity
    let back = modular_flow(&phi, c64(-0.7, 0.0), &modular_flow(&phi, c64(0.7, 0.0), &x));
    println!(
        "flow round trip defect:                     {:.3e}",
        (&back - &x).norm()
    );
}

//! Fit the commuting generator pair (D, L) of a sampled unitary path
//! u_t = exp(i(tD + (t^2/2)L)) and split the path into its scaling and
//! derivative parts.

use modular_rn::algebra::BlockAlgebra;
use modular_rn::cocycle::{extract_pair, fit_generators, synth_path};
use modular_rn::testutil::seeded;

fn main() {
    let mut rng = seeded(9);
    let algebra = BlockAlgebra::new(&[3]).unwrap();
    let d = algebra.random_hermitian(&mut rng);
    // L must commute with D: take a polynomial in D
    let l = &(&d * &d).scale(0.25) - &d.scale(0.1);

    let times: Vec<f64> = (0..=40).map(|k| k as f64 * 0.05).collect();
    let path = synth_path(&algebra, &d, &l, &times).unwrap();

    let fit = fit_generators(&path).unwrap();
    println!("generator fit residual: {:.3e}", fit.fit_residual);
    println!("recovered D error:      {:.3e}", (&fit.d - &d).norm());
    println!("recovered L error:      {:.3e}", (&fit.l - &l).norm());

    let sub: Vec<f64> = (0..=20).map(|k| k as f64 * 0.05).collect();
    let pair = extract_pair(&path, &sub).unwrap();
    println!(
        "log of scaling part vs L: {:.3e}",
        (&pair.log_lambda - &l).norm()
    );
    println!(
        "log of derivative part vs D: {:.3e}",
        (&pair.log_delta - &d).norm()
    );
    if let Some(c) = pair.consistency {
        println!("half-offset consistency: {c:.3e}");
    }
}

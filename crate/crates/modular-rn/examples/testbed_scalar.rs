//! The discretized position/momentum testbed: exponential densities of the
//! two grid operators give a genuinely non-trivial scaling factor, and the
//! key identities hold on interior Gaussian probes.

use modular_rn::weyl::{
    build_grid, case_scenario, cocycle_residual, gaussian_probe, invariance_residual, CaseId,
};

fn main() {
    let grid = build_grid(128, 16.0).unwrap();
    let case = case_scenario(CaseId::Scalar, &grid).unwrap();
    let probe = gaussian_probe(&case).unwrap();

    println!(
        "grid: {} nodes, box length {}",
        case.grid.n, case.grid.l_box
    );
    println!("scaling factor: e^-1 (scalar)");
    for (s, t) in [(1.0, 1.0), (0.7, 1.3)] {
        println!(
            "invariance residual at (s, t) = ({s}, {t}): {:.3e}",
            invariance_residual(&case, s, t, &probe).unwrap()
        );
    }
    for t in [0.25, 0.5, 1.0] {
        println!(
            "construction cocycle residual at t = {t}: {:.3e}",
            cocycle_residual(&case, t, &probe).unwrap()
        );
    }
}

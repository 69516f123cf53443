//! Path-level cocycle analysis: generator fitting, the bicharacter
//! `w(s,t) = u_t^* u_s^* u_{s+t}`, commuting-flow tests, the eigenoperator
//! lemma, scalar relative invariance, pair extraction from a cocycle path,
//! and the three Radon-Nikodym theorem verifiers.

use std::collections::HashMap;

use crate::algebra::{
    c64, commutation_defect, AlgebraElement, BlockAlgebra, InvariancePair, Weight,
};
use crate::error::{Error, Result};
use crate::modular::{connes_cocycle, modular_flow};
use crate::numerics::{self, CMat, CVec};
use crate::report::{IdentityRecord, VerificationReport};

fn per_block<F>(x: &AlgebraElement, f: F) -> Result<AlgebraElement>
where
    F: Fn(&CMat) -> Result<CMat>,
{
    AlgebraElement::from_blocks(x.blocks().iter().map(&f).collect::<Result<Vec<_>>>()?)
}

/// `exp(i h)` for Hermitian `h`.
/// `exp(iH)` blockwise for hermitian `H`.
pub fn phase_exp_elem(h: &AlgebraElement) -> Result<AlgebraElement> {
    per_block(h, numerics::phase_exp)
}

/// `exp(h)` for Hermitian `h`.
fn herm_exp_elem(h: &AlgebraElement) -> Result<AlgebraElement> {
    per_block(h, |b| {
        let (vals, v) = numerics::hermitian_eig(b)?;
        let d = CMat::from_diagonal(&nalgebra::DVector::from_iterator(
            vals.len(),
            vals.iter().map(|&x| c64(x.exp(), 0.0)),
        ));
        Ok(&v * d * v.adjoint())
    })
}

fn principal_log_elem(u: &AlgebraElement) -> Result<AlgebraElement> {
    per_block(u, numerics::unitary_principal_log)
}

fn unitarity_defect_elem(u: &AlgebraElement) -> f64 {
    u.blocks()
        .iter()
        .map(numerics::unitarity_defect)
        .fold(0.0, f64::max)
}

fn check_hermitian(label: &str, x: &AlgebraElement) -> Result<()> {
    let defect = x.hermiticity_defect();
    if defect > 1e-10 * (1.0 + x.norm()) {
        return Err(Error::InvalidArgument(format!(
            "{label} is not Hermitian: defect {defect:.3e}"
        )));
    }
    Ok(())
}

/// A one-parameter family of unitaries `u_t` with `u_0 = 1`, either in the
/// closed generator form `u_t = exp(i(tD + (t^2/2)L))` for commuting Hermitian
/// `(D, L)`, or as samples on a time grid.
#[derive(Debug, Clone)]
pub enum CocyclePath {
    Generators {
        algebra: BlockAlgebra,
        d: AlgebraElement,
        l: AlgebraElement,
    },
    Samples {
        algebra: BlockAlgebra,
        times: Vec<f64>,
        values: Vec<AlgebraElement>,
    },
}

impl CocyclePath {
    pub fn from_generators(
        algebra: &BlockAlgebra,
        d: AlgebraElement,
        l: AlgebraElement,
    ) -> Result<Self> {
        check_hermitian("D", &d)?;
        check_hermitian("L", &l)?;
        let defect = commutation_defect(&d, &l)?;
        if defect > 1e-12 * (1.0 + d.norm()) * (1.0 + l.norm()) {
            return Err(Error::InvalidArgument(format!(
                "generators do not commute: defect {defect:.3e}"
            )));
        }
        Ok(Self::Generators {
            algebra: algebra.clone(),
            d,
            l,
        })
    }

    pub fn from_samples(
        algebra: &BlockAlgebra,
        times: Vec<f64>,
        values: Vec<AlgebraElement>,
    ) -> Result<Self> {
        if times.is_empty() || times.len() != values.len() {
            return Err(Error::ShapeMismatch("time grid / sample count".into()));
        }
        if !times.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(
                "time grid must be strictly increasing".into(),
            ));
        }
        let zero = times
            .iter()
            .position(|&t| t.abs() <= 1e-12)
            .ok_or_else(|| Error::InvalidArgument("time grid must contain t = 0".into()))?;
        if (&values[zero] - &algebra.identity()).norm() > 1e-8 {
            return Err(Error::InvalidArgument("u_0 must be the identity".into()));
        }
        for (t, u) in times.iter().zip(&values) {
            let defect = unitarity_defect_elem(u);
            if defect > 1e-10 {
                return Err(Error::InvalidArgument(format!(
                    "sample at t = {t} is not unitary: defect {defect:.3e}"
                )));
            }
        }
        Ok(Self::Samples {
            algebra: algebra.clone(),
            times,
            values,
        })
    }

    pub fn algebra(&self) -> &BlockAlgebra {
        match self {
            Self::Generators { algebra, .. } | Self::Samples { algebra, .. } => algebra,
        }
    }

    pub fn eval(&self, t: f64) -> Result<AlgebraElement> {
        match self {
            Self::Generators { d, l, .. } => {
                let herm = &d.scale(t) + &l.scale(0.5 * t * t);
                phase_exp_elem(&herm)
            }
            Self::Samples { times, values, .. } => times
                .iter()
                .position(|&tk| (tk - t).abs() <= 1e-9)
                .map(|k| values[k].clone())
                .ok_or_else(|| {
                    Error::InvalidArgument(format!("t = {t} is not on the sample grid"))
                }),
        }
    }
}

/// Sample `u_t = exp(i(tD + (t^2/2)L))` on a grid.
pub fn synth_path(
    algebra: &BlockAlgebra,
    d: &AlgebraElement,
    l: &AlgebraElement,
    t_grid: &[f64],
) -> Result<CocyclePath> {
    let gen = CocyclePath::from_generators(algebra, d.clone(), l.clone())?;
    let values = t_grid
        .iter()
        .map(|&t| gen.eval(t))
        .collect::<Result<Vec<_>>>()?;
    CocyclePath::from_samples(algebra, t_grid.to_vec(), values)
}

/// Accumulated Hermitian logs `A_k` with `u_k = exp(i A_k)`, built by
/// stepping the principal log multiplicatively from `t = 0` (branch safety
/// comes from the per-step guard).
fn accumulated_logs(
    algebra: &BlockAlgebra,
    times: &[f64],
    values: &[AlgebraElement],
) -> Result<Vec<AlgebraElement>> {
    let zero = times
        .iter()
        .position(|&t| t.abs() <= 1e-12)
        .ok_or_else(|| Error::InvalidArgument("grid must contain t = 0".into()))?;
    let mut logs: Vec<AlgebraElement> = vec![algebra.zero(); times.len()];
    for k in zero + 1..times.len() {
        let step = principal_log_elem(&(&values[k] * &values[k - 1].adjoint()))?;
        logs[k] = &logs[k - 1] + &step;
    }
    for k in (0..zero).rev() {
        let step = principal_log_elem(&(&values[k] * &values[k + 1].adjoint()))?;
        logs[k] = &logs[k + 1] + &step;
    }
    Ok(logs)
}

#[derive(Debug, Clone)]
pub struct GeneratorFit {
    pub d: AlgebraElement,
    pub l: AlgebraElement,
    /// `max_k norm(u_k - exp(i(t_k D + (t_k^2/2) L)))`.
    pub fit_residual: f64,
}

/// Least-squares recovery of `(D, L)` from a sampled path, solving
/// `-i Log(u_t) = tD + (t^2/2)L` along the phase-unwrapped logs.
pub fn fit_generators(path: &CocyclePath) -> Result<GeneratorFit> {
    let (algebra, times, values) = match path {
        CocyclePath::Generators { d, l, .. } => {
            return Ok(GeneratorFit {
                d: d.clone(),
                l: l.clone(),
                fit_residual: 0.0,
            });
        }
        CocyclePath::Samples {
            algebra,
            times,
            values,
        } => (algebra, times, values),
    };
    let mut distinct: Vec<f64> = times.iter().copied().filter(|t| t.abs() > 1e-12).collect();
    distinct.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
    if distinct.len() < 3 {
        return Err(Error::InvalidArgument(
            "generator fit needs at least 3 distinct nonzero time nodes".into(),
        ));
    }
    let logs = accumulated_logs(algebra, times, values)?;
    let (mut g11, mut g12, mut g22) = (0.0, 0.0, 0.0);
    let mut b1 = algebra.zero();
    let mut b2 = algebra.zero();
    for (&t, a) in times.iter().zip(&logs) {
        let c2 = 0.5 * t * t;
        g11 += t * t;
        g12 += t * c2;
        g22 += c2 * c2;
        b1 = &b1 + &a.scale(t);
        b2 = &b2 + &a.scale(c2);
    }
    let det = g11 * g22 - g12 * g12;
    if det <= 1e-12 * g11 * g22 {
        return Err(Error::InvalidArgument(
            "rank-deficient design: the grid cannot separate D from L".into(),
        ));
    }
    let d = &b1.scale(g22 / det) - &b2.scale(g12 / det);
    let l = &b2.scale(g11 / det) - &b1.scale(g12 / det);
    let model = CocyclePath::from_generators(algebra, hermitize(&d), hermitize(&l));
    // non-commuting LS output falls back to an unconstrained model evaluation
    let (d, l) = match &model {
        Ok(CocyclePath::Generators { d, l, .. }) => (d.clone(), l.clone()),
        _ => (hermitize(&d), hermitize(&l)),
    };
    let mut fit_residual: f64 = 0.0;
    for (&t, u) in times.iter().zip(values) {
        let synth = phase_exp_elem(&(&d.scale(t) + &l.scale(0.5 * t * t)))?;
        fit_residual = fit_residual.max((u - &synth).norm());
    }
    Ok(GeneratorFit { d, l, fit_residual })
}

fn hermitize(x: &AlgebraElement) -> AlgebraElement {
    (x + &x.adjoint()).scale(0.5)
}

/// Table of `w(s,t) = u_t^* u_s^* u_{s+t}` over a grid.
#[derive(Debug, Clone)]
pub struct BicharacterTable {
    pub algebra: BlockAlgebra,
    pub s_grid: Vec<f64>,
    pub t_grid: Vec<f64>,
    pub values: Vec<Vec<AlgebraElement>>,
}

pub fn bicharacter(path: &CocyclePath, s_grid: &[f64], t_grid: &[f64]) -> Result<BicharacterTable> {
    let mut values = Vec::with_capacity(s_grid.len());
    for &s in s_grid {
        let us = path.eval(s)?;
        let mut row = Vec::with_capacity(t_grid.len());
        for &t in t_grid {
            let ut = path.eval(t)?;
            let ust = path.eval(s + t).map_err(|_| {
                Error::InvalidArgument(format!(
                    "grid is not closed under the needed sums: {s} + {t} missing"
                ))
            })?;
            row.push(&(&ut.adjoint() * &us.adjoint()) * &ust);
        }
        values.push(row);
    }
    Ok(BicharacterTable {
        algebra: path.algebra().clone(),
        s_grid: s_grid.to_vec(),
        t_grid: t_grid.to_vec(),
        values,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct BicharacterDiagnostics {
    pub additivity_s: f64,
    pub additivity_t: f64,
    pub centrality: f64,
}

fn grid_index(grid: &[f64], x: f64) -> Option<usize> {
    grid.iter().position(|&g| (g - x).abs() <= 1e-9)
}

/// Max residuals of `w(s+s',t) = w(s,t)w(s',t)`, of the analogous law in the
/// second argument, and of centrality `[w(s,t), b] = 0` over an algebra
/// basis. Only grid pairs whose sum lands back on the grid contribute.
pub fn bicharacter_residuals(table: &BicharacterTable) -> BicharacterDiagnostics {
    let basis = table.algebra.basis();
    let (mut add_s, mut add_t, mut central): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for (i1, &s1) in table.s_grid.iter().enumerate() {
        for (i2, &s2) in table.s_grid.iter().enumerate() {
            let Some(i12) = grid_index(&table.s_grid, s1 + s2) else {
                continue;
            };
            for jt in 0..table.t_grid.len() {
                let lhs = &table.values[i12][jt];
                let rhs = &table.values[i1][jt] * &table.values[i2][jt];
                add_s = add_s.max((lhs - &rhs).norm());
            }
        }
    }
    for (j1, &t1) in table.t_grid.iter().enumerate() {
        for (j2, &t2) in table.t_grid.iter().enumerate() {
            let Some(j12) = grid_index(&table.t_grid, t1 + t2) else {
                continue;
            };
            for is in 0..table.s_grid.len() {
                let lhs = &table.values[is][j12];
                let rhs = &table.values[is][j1] * &table.values[is][j2];
                add_t = add_t.max((lhs - &rhs).norm());
            }
        }
    }
    for row in &table.values {
        for w in row {
            for b in &basis {
                central = central.max((&(w * b) - &(b * w)).norm());
            }
        }
    }
    BicharacterDiagnostics {
        additivity_s: add_s,
        additivity_t: add_t,
        centrality: central,
    }
}

/// Distance of `x` to the centre: per block, the norm of `x` minus its
/// normalized trace. Zero exactly on central elements; cheap enough for the
/// testbed where a basis scan is not.
pub fn centrality_defect(x: &AlgebraElement) -> f64 {
    x.blocks()
        .iter()
        .map(|b| {
            let n = b.nrows();
            let mean = b.diagonal().sum() / c64(n as f64, 0.0);
            numerics::operator_norm(&(b - CMat::identity(n, n) * mean))
        })
        .fold(0.0, f64::max)
}

/// `max_x norm(sigma_t^psi(sigma_s^phi(x)) - sigma_s^phi(sigma_t^psi(x)))`
/// over an algebra basis.
pub fn flows_commute_residual(
    algebra: &BlockAlgebra,
    phi: &Weight,
    psi: &Weight,
    s: f64,
    t: f64,
) -> f64 {
    let (zs, zt) = (c64(s, 0.0), c64(t, 0.0));
    algebra
        .basis()
        .iter()
        .map(|x| {
            let a = modular_flow(psi, zt, &modular_flow(phi, zs, x));
            let b = modular_flow(phi, zs, &modular_flow(psi, zt, x));
            (&a - &b).norm()
        })
        .fold(0.0, f64::max)
}

/// Both sides of the eigenoperator lemma for `a` with proposed eigenvalue
/// `lambda0`: `weight_side = max_x |phi(ax) - lambda0 phi(xa)|` over a basis,
/// `flow_side = max_t norm(sigma_t(a) - lambda0^{it} a)` on `t in [-2, 2]`.
pub fn eigenoperator_residual(
    algebra: &BlockAlgebra,
    phi: &Weight,
    a: &AlgebraElement,
    lambda0: f64,
) -> Result<(f64, f64)> {
    if lambda0 <= 0.0 {
        return Err(Error::InvalidArgument("lambda0 must be positive".into()));
    }
    let weight_side = algebra
        .basis()
        .iter()
        .map(|x| (phi.eval(&(a * x)) - phi.eval(&(x * a)) * lambda0).norm())
        .fold(0.0, f64::max);
    let mut flow_side: f64 = 0.0;
    let mut t = -2.0;
    while t <= 2.0 + 1e-12 {
        let lhs = modular_flow(phi, c64(t, 0.0), a);
        let rhs = a.scale_c(c64(0.0, t * lambda0.ln()).exp());
        flow_side = flow_side.max((&lhs - &rhs).norm());
        t += 0.5;
    }
    Ok((weight_side, flow_side))
}

/// Residuals of the scalar relative-invariance laws
/// `phi(sigma_t^psi(x)) = lambda0^t phi(x)` and
/// `psi(sigma_t^phi(x)) = lambda0^{-t} psi(x)`, max over a basis.
pub fn scalar_invariance_residual(
    algebra: &BlockAlgebra,
    phi: &Weight,
    psi: &Weight,
    lambda0: f64,
    t: f64,
) -> (f64, f64) {
    let zt = c64(t, 0.0);
    let mut r1: f64 = 0.0;
    let mut r2: f64 = 0.0;
    for x in algebra.basis() {
        r1 = r1.max((phi.eval(&modular_flow(psi, zt, &x)) - phi.eval(&x) * lambda0.powf(t)).norm());
        r2 =
            r2.max((psi.eval(&modular_flow(phi, zt, &x)) - psi.eval(&x) * lambda0.powf(-t)).norm());
    }
    (r1, r2)
}

/// The pair recovered from a cocycle path via
/// `lambda^{it} = u_t^* u_1^* u_{t+1}` and `delta^{it} = u_t lambda^{-it^2/2}`.
#[derive(Debug, Clone)]
pub struct ExtractedPair {
    pub lambda_path: CocyclePath,
    pub delta_path: CocyclePath,
    /// Hermitian `log lambda`.
    pub log_lambda: AlgebraElement,
    /// Hermitian `log delta`.
    pub log_delta: AlgebraElement,
    /// Cross-check of the extraction at half the reference offset:
    /// `max_t norm(u_t^* u_{1/2}^* u_{t+1/2} - lambda^{it/2})`, when the grid
    /// supports it.
    pub consistency: Option<f64>,
}

/// Single-column least squares `A_k ~ t_k G` over accumulated logs.
fn fit_linear_generator(
    algebra: &BlockAlgebra,
    times: &[f64],
    values: &[AlgebraElement],
) -> Result<AlgebraElement> {
    let logs = accumulated_logs(algebra, times, values)?;
    let mut denom = 0.0;
    let mut num = algebra.zero();
    for (&t, a) in times.iter().zip(&logs) {
        denom += t * t;
        num = &num + &a.scale(t);
    }
    if denom <= 1e-24 {
        return Err(Error::InvalidArgument("grid has no nonzero nodes".into()));
    }
    Ok(hermitize(&num.scale(1.0 / denom)))
}

pub fn extract_pair(path: &CocyclePath, t_grid: &[f64]) -> Result<ExtractedPair> {
    let algebra = path.algebra().clone();
    let u1 = path.eval(1.0)?;
    let mut lam_values = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let ut = path.eval(t)?;
        let ut1 = path.eval(t + 1.0)?;
        lam_values.push(&(&ut.adjoint() * &u1.adjoint()) * &ut1);
    }
    let lambda_path = CocyclePath::from_samples(&algebra, t_grid.to_vec(), lam_values.clone())?;
    let log_lambda = fit_linear_generator(&algebra, t_grid, &lam_values)?;

    let consistency = match path.eval(0.5) {
        Err(_) => None,
        Ok(uh) => {
            let mut worst: f64 = 0.0;
            let mut hits = 0usize;
            for &t in t_grid {
                let (Ok(ut), Ok(uth)) = (path.eval(t), path.eval(t + 0.5)) else {
                    continue;
                };
                let w2 = &(&ut.adjoint() * &uh.adjoint()) * &uth;
                let model = phase_exp_elem(&log_lambda.scale(0.5 * t))?;
                worst = worst.max((&w2 - &model).norm());
                hits += 1;
            }
            (hits > 0).then_some(worst)
        }
    };

    let mut del_values = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let phase = phase_exp_elem(&log_lambda.scale(-0.5 * t * t))?;
        del_values.push(&path.eval(t)? * &phase);
    }
    let delta_path = CocyclePath::from_samples(&algebra, t_grid.to_vec(), del_values.clone())?;
    let log_delta = fit_linear_generator(&algebra, t_grid, &del_values)?;

    Ok(ExtractedPair {
        lambda_path,
        delta_path,
        log_lambda,
        log_delta,
        consistency,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremKind {
    Rn1,
    Rn2,
    Rn3,
}

impl std::str::FromStr for TheoremKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rn1" => Ok(Self::Rn1),
            "rn2" => Ok(Self::Rn2),
            "rn3" => Ok(Self::Rn3),
            other => Err(Error::InvalidArgument(format!(
                "unknown theorem kind {other:?}; expected rn1, rn2 or rn3"
            ))),
        }
    }
}

/// Inputs for [`verify_theorem`]. `pair` is required for rn1, `lambda0` for
/// rn3. When `probe` is given (testbed scenarios), residuals are measured on
/// the probe vector instead of operator norms over a basis, keeping the cost
/// at matrix-vector level and suppressing boundary-wrap artifacts.
pub struct TheoremInputs<'a> {
    pub scenario: String,
    pub seed: u64,
    pub algebra: &'a BlockAlgebra,
    pub phi: &'a Weight,
    pub psi: &'a Weight,
    pub pair: Option<&'a InvariancePair>,
    pub lambda0: Option<f64>,
    pub probe: Option<(usize, CVec)>,
    pub tol: f64,
    pub t_grid: Vec<f64>,
}

struct MaxTrack {
    max: f64,
    at: String,
}

impl MaxTrack {
    fn new() -> Self {
        Self {
            max: 0.0,
            at: String::new(),
        }
    }

    fn observe(&mut self, value: f64, at: impl FnOnce() -> String) {
        if value > self.max || self.at.is_empty() {
            self.max = value;
            self.at = at();
        }
    }

    fn record(&self, id: &str, anchor: &str, grid: &str, tol: f64) -> IdentityRecord {
        let rec = IdentityRecord::bound(id, anchor, grid, self.max, tol);
        if rec.pass {
            rec
        } else {
            rec.with_counterexample(&self.at, self.max)
        }
    }
}

fn grid_label(t_grid: &[f64]) -> String {
    format!(
        "t in [{:.3}, {:.3}], {} nodes",
        t_grid.first().copied().unwrap_or(0.0),
        t_grid.last().copied().unwrap_or(0.0),
        t_grid.len()
    )
}

/// Operator norm of `a a^* - b b^*` for vectors `a`, `b`, from the 2x2
/// restriction to their span.
fn rank_one_diff_norm(a: &CVec, b: &CVec) -> f64 {
    let aa = a.dotc(a).re;
    let bb = b.dotc(b).re;
    let ab = a.dotc(b);
    let tr = aa - bb;
    let det = ab.norm_sqr() - aa * bb;
    let disc = (0.25 * tr * tr - det).max(0.0).sqrt();
    (0.5 * tr + disc).abs().max((0.5 * tr - disc).abs())
}

fn verify_rn1(inp: &TheoremInputs) -> Result<Vec<IdentityRecord>> {
    let pair = inp
        .pair
        .ok_or_else(|| Error::InvalidArgument("rn1 needs an invariance pair".into()))?;
    let (phi, psi) = (inp.phi, inp.psi);
    let grid = grid_label(&inp.t_grid);
    let coc = |t: f64| -> AlgebraElement {
        &pair.lambda.power(c64(0.0, 0.5 * t * t)) * &pair.delta.power(c64(0.0, t))
    };
    let mut density = MaxTrack::new();
    let mut cocycle = MaxTrack::new();
    let mut invariance = MaxTrack::new();
    let mut flow = MaxTrack::new();
    match &inp.probe {
        None => {
            let dhalf = pair.delta.power(c64(0.5, 0.0));
            let built = &(&dhalf * phi.density().value()) * &dhalf;
            let scale = psi.density().value().norm().max(1.0);
            density.observe((&built - psi.density().value()).norm() / scale, || {
                "density".into()
            });
            for &t in &inp.t_grid {
                cocycle.observe((&connes_cocycle(psi, phi, t) - &coc(t)).norm(), || {
                    format!("t = {t}")
                });
                for &s in &inp.t_grid {
                    invariance.observe(
                        crate::algebra::relative_invariance_residual(phi, pair, s, t),
                        || format!("(s, t) = ({s}, {t})"),
                    );
                }
                let u = coc(t);
                for x in inp.algebra.basis() {
                    let lhs = modular_flow(psi, c64(t, 0.0), &x);
                    let rhs = &(&u * &modular_flow(phi, c64(t, 0.0), &x)) * &u.adjoint();
                    flow.observe((&lhs - &rhs).norm(), || format!("t = {t}"));
                }
            }
        }
        Some((k, v)) => {
            let k = *k;
            let h = phi.density();
            // compare probe expectations through the spectral data only; both
            // the assembled density matrix and the three-factor product
            // amplify the probe's high-frequency rounding floor beyond the
            // signal when the spectra span many orders of magnitude
            let d = pair.delta.power_apply(c64(0.5, 0.0), k, v);
            let built = d.dotc(&phi.density().power_apply(c64(1.0, 0.0), k, &d)).re;
            let psv = v.dotc(&psi.density().power_apply(c64(1.0, 0.0), k, v)).re;
            let scale = built.abs().max(1e-300);
            density.observe((built - psv).abs() / scale, || "density (probe)".into());
            for &t in &inp.t_grid {
                // cocycle on the probe
                let uv_true =
                    psi.density()
                        .power_apply(c64(0.0, t), k, &h.power_apply(c64(0.0, -t), k, v));
                let dv = pair.delta.power_apply(c64(0.0, t), k, v);
                let uv_model = pair.lambda.power_apply(c64(0.0, 0.5 * t * t), k, &dv);
                cocycle.observe((&uv_true - &uv_model).norm(), || format!("t = {t}"));
                for &s in &inp.t_grid {
                    // sigma_t^phi(delta^{is}) v vs lambda^{ist} delta^{is} v
                    let a = h.power_apply(
                        c64(0.0, t),
                        k,
                        &pair
                            .delta
                            .power_apply(c64(0.0, s), k, &h.power_apply(c64(0.0, -t), k, v)),
                    );
                    let b = pair.lambda.power_apply(
                        c64(0.0, s * t),
                        k,
                        &pair.delta.power_apply(c64(0.0, s), k, v),
                    );
                    invariance.observe((&a - &b).norm(), || format!("(s, t) = ({s}, {t})"));
                }
                // flow identity on the rank-one probe element
                let a = psi.density().power_apply(c64(0.0, t), k, v);
                let hv = h.power_apply(c64(0.0, t), k, v);
                let b = pair.lambda.power_apply(
                    c64(0.0, 0.5 * t * t),
                    k,
                    &pair.delta.power_apply(c64(0.0, t), k, &hv),
                );
                flow.observe(rank_one_diff_norm(&a, &b), || format!("t = {t}"));
            }
        }
    }
    Ok(vec![
        density.record(
            "rn1-density",
            "density of psi equals delta^{1/2} h delta^{1/2}",
            "single comparison",
            inp.tol,
        ),
        cocycle.record(
            "rn1-cocycle",
            "[D psi : D phi]_t = lambda^{it^2/2} delta^{it}",
            &grid,
            inp.tol,
        ),
        invariance.record(
            "rn1-invariance",
            "sigma_t^phi(delta^{is}) = lambda^{ist} delta^{is}",
            &grid,
            inp.tol,
        ),
        flow.record(
            "rn1-flow",
            "sigma_t^psi = u_t sigma_t^phi(.) u_t^*",
            &grid,
            inp.tol,
        ),
    ])
}

fn verify_rn2(inp: &TheoremInputs) -> Result<Vec<IdentityRecord>> {
    let (phi, psi) = (inp.phi, inp.psi);
    let grid = grid_label(&inp.t_grid);
    let mut records = Vec::new();
    match &inp.probe {
        None => {
            let mut cache: HashMap<i64, AlgebraElement> = HashMap::new();
            let mut u = |t: f64| -> AlgebraElement {
                let key = (t * 1e9).round() as i64;
                cache
                    .entry(key)
                    .or_insert_with(|| connes_cocycle(psi, phi, t))
                    .clone()
            };
            let mut commute = MaxTrack::new();
            for &s in &inp.t_grid {
                for &t in &inp.t_grid {
                    commute.observe(flows_commute_residual(inp.algebra, phi, psi, s, t), || {
                        format!("(s, t) = ({s}, {t})")
                    });
                }
            }
            records.push(commute.record(
                "rn2-flows-commute",
                "sigma^phi and sigma^psi commute",
                &grid,
                inp.tol,
            ));

            let w = |u: &mut dyn FnMut(f64) -> AlgebraElement, s: f64, t: f64| {
                &(&u(t).adjoint() * &u(s).adjoint()) * &u(s + t)
            };
            let basis = inp.algebra.basis();
            let mut central = MaxTrack::new();
            let mut mult = MaxTrack::new();
            for &s in &inp.t_grid {
                for &t in &inp.t_grid {
                    let wst = w(&mut u, s, t);
                    for b in &basis {
                        central.observe((&(&wst * b) - &(b * &wst)).norm(), || {
                            format!("(s, t) = ({s}, {t})")
                        });
                    }
                    for &s2 in &inp.t_grid {
                        let lhs = w(&mut u, s + s2, t);
                        let rhs = &w(&mut u, s, t) * &w(&mut u, s2, t);
                        mult.observe((&lhs - &rhs).norm(), || {
                            format!("(s, s', t) = ({s}, {s2}, {t})")
                        });
                    }
                }
            }
            records.push(central.record(
                "rn2-centrality",
                "w(s,t) = u_t^* u_s^* u_{s+t} is central",
                &grid,
                inp.tol.max(1e-12),
            ));
            records.push(mult.record(
                "rn2-multiplicativity",
                "w(s+s',t) = w(s,t) w(s',t) and symmetrically in t",
                &grid,
                inp.tol,
            ));

            // constructive pipeline: extract lambda from w(1, .), cross-check
            // at half offset, then the v_t group law and the density identity
            let lam_samples: Vec<AlgebraElement> =
                inp.t_grid.iter().map(|&t| w(&mut u, 1.0, t)).collect();
            let log_lambda = fit_linear_generator(inp.algebra, &inp.t_grid, &lam_samples)?;
            let mut consist = MaxTrack::new();
            for &t in &inp.t_grid {
                let w2 = w(&mut u, 0.5, t);
                let model = phase_exp_elem(&log_lambda.scale(0.5 * t))?;
                consist.observe((&w2 - &model).norm(), || format!("t = {t}"));
            }
            records.push(consist.record(
                "rn2-lambda-consistency",
                "w(1/2, t) matches the lambda extracted from w(1, t)",
                &grid,
                inp.tol.max(1e-8),
            ));

            let v = |u: &mut dyn FnMut(f64) -> AlgebraElement, t: f64| -> Result<AlgebraElement> {
                Ok(&phase_exp_elem(&log_lambda.scale(-0.5 * t * t))? * &u(t))
            };
            let mut group = MaxTrack::new();
            for &s in &inp.t_grid {
                for &t in &inp.t_grid {
                    let lhs = v(&mut u, s + t)?;
                    let rhs = &v(&mut u, s)? * &v(&mut u, t)?;
                    group.observe((&lhs - &rhs).norm(), || format!("(s, t) = ({s}, {t})"));
                }
            }
            records.push(group.record(
                "rn2-group-law",
                "v_t = lambda^{-it^2/2} u_t is a one-parameter group",
                &grid,
                inp.tol,
            ));

            let del_samples: Vec<AlgebraElement> = inp
                .t_grid
                .iter()
                .map(|&t| v(&mut u, t))
                .collect::<Result<Vec<_>>>()?;
            let log_delta = fit_linear_generator(inp.algebra, &inp.t_grid, &del_samples)?;
            let dhalf = herm_exp_elem(&log_delta.scale(0.5))?;
            let built = &(&dhalf * phi.density().value()) * &dhalf;
            let scale = psi.density().value().norm().max(1.0);
            let mut density = MaxTrack::new();
            density.observe((&built - psi.density().value()).norm() / scale, || {
                "density".into()
            });
            records.push(density.record(
                "rn2-density",
                "density of psi equals delta^{1/2} h delta^{1/2} for the extracted delta",
                "single comparison",
                inp.tol,
            ));
        }
        Some((k, vv)) => {
            let k = *k;
            let h = phi.density();
            let d = psi.density();
            let uvec = |t: f64, x: &CVec| -> CVec {
                d.power_apply(c64(0.0, t), k, &h.power_apply(c64(0.0, -t), k, x))
            };
            let uvec_inv = |t: f64, x: &CVec| -> CVec {
                h.power_apply(c64(0.0, t), k, &d.power_apply(c64(0.0, -t), k, x))
            };
            let wvec =
                |s: f64, t: f64, x: &CVec| -> CVec { uvec_inv(t, &uvec_inv(s, &uvec(s + t, x))) };
            let mut commute = MaxTrack::new();
            let mut central = MaxTrack::new();
            let mut mult = MaxTrack::new();
            for &s in &inp.t_grid {
                for &t in &inp.t_grid {
                    let a = h.power_apply(c64(0.0, s), k, &d.power_apply(c64(0.0, t), k, vv));
                    let b = d.power_apply(c64(0.0, t), k, &h.power_apply(c64(0.0, s), k, vv));
                    commute.observe(rank_one_diff_norm(&a, &b), || {
                        format!("(s, t) = ({s}, {t})")
                    });
                    let wv = wvec(s, t, vv);
                    let scalar = vv.dotc(&wv) / vv.dotc(vv);
                    central.observe((&wv - vv * scalar).norm(), || {
                        format!("(s, t) = ({s}, {t})")
                    });
                    for &s2 in &inp.t_grid {
                        let lhs = wvec(s + s2, t, vv);
                        let rhs = wvec(s, t, &wvec(s2, t, vv));
                        mult.observe((&lhs - &rhs).norm(), || {
                            format!("(s, s', t) = ({s}, {s2}, {t})")
                        });
                    }
                }
            }
            records.push(commute.record(
                "rn2-flows-commute",
                "sigma^phi and sigma^psi commute (probe-compressed)",
                &grid,
                inp.tol,
            ));
            records.push(central.record(
                "rn2-centrality",
                "w(s,t) acts as a scalar on the probe",
                &grid,
                inp.tol,
            ));
            records.push(mult.record(
                "rn2-multiplicativity",
                "w(s+s',t) = w(s,t) w(s',t) on the probe",
                &grid,
                inp.tol,
            ));
        }
    }
    Ok(records)
}

fn verify_rn3(inp: &TheoremInputs) -> Result<Vec<IdentityRecord>> {
    let lambda0 = inp
        .lambda0
        .ok_or_else(|| Error::InvalidArgument("rn3 needs a scalar lambda0".into()))?;
    if lambda0 <= 0.0 {
        return Err(Error::InvalidArgument("lambda0 must be positive".into()));
    }
    let (phi, psi) = (inp.phi, inp.psi);
    let grid = grid_label(&inp.t_grid);
    let mut r1 = MaxTrack::new();
    let mut r2 = MaxTrack::new();
    let mut commute = MaxTrack::new();
    match &inp.probe {
        None => {
            for &t in &inp.t_grid {
                for x in inp.algebra.basis() {
                    let den1 = phi.eval(&x).norm().max(1.0);
                    r1.observe(
                        (phi.eval(&modular_flow(psi, c64(t, 0.0), &x))
                            - phi.eval(&x) * lambda0.powf(t))
                        .norm()
                            / den1,
                        || format!("t = {t}"),
                    );
                    let den2 = psi.eval(&x).norm().max(1.0);
                    r2.observe(
                        (psi.eval(&modular_flow(phi, c64(t, 0.0), &x))
                            - psi.eval(&x) * lambda0.powf(-t))
                        .norm()
                            / den2,
                        || format!("t = {t}"),
                    );
                }
            }
            let mut cache: HashMap<i64, AlgebraElement> = HashMap::new();
            let mut u = |t: f64| -> AlgebraElement {
                let key = (t * 1e9).round() as i64;
                cache
                    .entry(key)
                    .or_insert_with(|| connes_cocycle(psi, phi, t))
                    .clone()
            };
            for &s in &inp.t_grid.clone() {
                for &t in &inp.t_grid.clone() {
                    let phase = c64(0.0, s * t * lambda0.ln()).exp();
                    let lhs = u(s + t);
                    let rhs = (&u(s) * &u(t)).scale_c(phase);
                    commute.observe((&lhs - &rhs).norm(), || format!("(s, t) = ({s}, {t})"));
                }
            }
        }
        Some((k, v)) => {
            let k = *k;
            let h = phi.density();
            let d = psi.density();
            // quadratic forms through the spectral data: interior
            // expectations cancel catastrophically in the assembled density
            // matrix when its spectrum spans many orders of magnitude
            let phx =
                |w: &CVec| -> f64 { w.dotc(&phi.density().power_apply(c64(1.0, 0.0), k, w)).re };
            let psx =
                |w: &CVec| -> f64 { w.dotc(&psi.density().power_apply(c64(1.0, 0.0), k, w)).re };
            for &t in &inp.t_grid {
                let w1 = d.power_apply(c64(0.0, t), k, v);
                r1.observe(
                    (phx(&w1) - lambda0.powf(t) * phx(v)).abs() / phx(v).abs().max(1e-300),
                    || format!("t = {t}"),
                );
                let w2 = h.power_apply(c64(0.0, t), k, v);
                r2.observe(
                    (psx(&w2) - lambda0.powf(-t) * psx(v)).abs() / psx(v).abs().max(1e-300),
                    || format!("t = {t}"),
                );
            }
            let uvec = |t: f64, x: &CVec| -> CVec {
                d.power_apply(c64(0.0, t), k, &h.power_apply(c64(0.0, -t), k, x))
            };
            for &s in &inp.t_grid {
                for &t in &inp.t_grid {
                    let phase = c64(0.0, s * t * lambda0.ln()).exp();
                    let lhs = uvec(s + t, v);
                    let rhs = uvec(s, &uvec(t, v)) * phase;
                    commute.observe((&lhs - &rhs).norm(), || format!("(s, t) = ({s}, {t})"));
                }
            }
        }
    }
    Ok(vec![
        r1.record(
            "rn3-weight-scaling-1",
            "phi compose sigma_t^psi = lambda0^t phi",
            &grid,
            inp.tol,
        ),
        r2.record(
            "rn3-weight-scaling-2",
            "psi compose sigma_t^phi = lambda0^{-t} psi",
            &grid,
            inp.tol,
        ),
        commute.record(
            "rn3-cocycle-commutation",
            "u_{s+t} = lambda0^{ist} u_s u_t (equivalently v_t is a group)",
            &grid,
            inp.tol,
        ),
    ])
}

/// Check the equivalent conditions of one of the three Radon-Nikodym-type
/// theorems on finite grids. All conditions passing (or all failing) is a
/// coherent outcome; a mixed verdict is flagged with counterexamples.
pub fn verify_theorem(kind: TheoremKind, inp: &TheoremInputs) -> Result<VerificationReport> {
    let records = match kind {
        TheoremKind::Rn1 => verify_rn1(inp)?,
        TheoremKind::Rn2 => verify_rn2(inp)?,
        TheoremKind::Rn3 => verify_rn3(inp)?,
    };
    Ok(VerificationReport::new_equivalence(
        &inp.scenario,
        inp.seed,
        records,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PositiveElement;
    use crate::construct::ConstructedWeight;
    use crate::report::Verdict;
    use crate::testutil::seeded;
    use approx::assert_relative_eq;

    fn grid(a: f64, b: f64, step: f64) -> Vec<f64> {
        let mut g = Vec::new();
        let mut t = a;
        while t <= b + 1e-9 {
            g.push(if t.abs() < 1e-12 { 0.0 } else { t });
            t += step;
        }
        g
    }

    #[test]
    fn synth_oracles() {
        let a = BlockAlgebra::new(&[2]).unwrap();
        let tg = grid(0.0, 1.0, 0.25);
        // D = L = 0
        let p = synth_path(&a, &a.zero(), &a.zero(), &tg).unwrap();
        assert!((&p.eval(0.75).unwrap() - &a.identity()).norm() < 1e-14);
        // diagonal oracle
        let d = PositiveElement::from_diagonal(&a, &[vec![3.0, 1.0]])
            .unwrap()
            .log();
        let p = synth_path(&a, &d, &a.zero(), &tg).unwrap();
        let got = p.eval(0.5).unwrap();
        let want = AlgebraElement::single(CMat::from_diagonal(&CVec::from_vec(vec![
            c64(0.0, 0.5 * 3.0_f64.ln()).exp(),
            c64(1.0, 0.0),
        ])));
        assert!((&got - &want).norm() < 1e-14);
        // scalar phase
        let p = synth_path(&a, &a.zero(), &a.identity(), &tg).unwrap();
        let got = p.eval(1.0).unwrap();
        assert!((&got - &a.identity().scale_c(c64(0.0, 0.5).exp())).norm() < 1e-14);
    }

    #[test]
    fn path_validation() {
        let a = BlockAlgebra::new(&[2]).unwrap();
        // non-commuting generators rejected
        let mut rng = seeded(3);
        let d = a.random_hermitian(&mut rng).clone();
        let l = a.random_hermitian(&mut rng);
        assert!(CocyclePath::from_generators(&a, d, l).is_err());
        // samples must contain 0
        let u1 = a.identity();
        assert!(CocyclePath::from_samples(&a, vec![0.5], vec![u1.clone()]).is_err());
        // non-unitary sample rejected
        assert!(CocyclePath::from_samples(
            &a,
            vec![0.0, 1.0],
            vec![a.identity(), a.identity().scale(2.0)]
        )
        .is_err());
    }

    #[test]
    fn fit_recovers_generators() {
        let a = BlockAlgebra::new(&[2]).unwrap();
        let tg = grid(0.0, 1.0, 0.05);
        let d = PositiveElement::from_diagonal(&a, &[vec![3.0, 1.0]])
            .unwrap()
            .log();
        let l = a.identity().scale(0.2);
        let path = synth_path(&a, &d, &l, &tg).unwrap();
        let fit = fit_generators(&path).unwrap();
        assert!(
            (&fit.d - &d).norm() < 1e-10,
            "D error {}",
            (&fit.d - &d).norm()
        );
        assert!((&fit.l - &l).norm() < 1e-10);
        assert!(fit.fit_residual < 1e-10);
        // u == 1 -> (0, 0)
        let p1 = synth_path(&a, &a.zero(), &a.zero(), &tg).unwrap();
        let fit = fit_generators(&p1).unwrap();
        assert!(fit.d.norm() < 1e-12 && fit.l.norm() < 1e-12);
        // pure group path: L = 0
        let p2 = synth_path(&a, &d, &a.zero(), &tg).unwrap();
        let fit = fit_generators(&p2).unwrap();
        assert!((&fit.d - &d).norm() < 1e-10);
        assert!(fit.l.norm() < 1e-10);
        // rank-deficient grid {0, t}
        let bad = synth_path(&a, &d, &a.zero(), &[0.0, 0.5]).unwrap();
        assert!(fit_generators(&bad).is_err());
    }

    #[test]
    fn fit_nontrivial_offdiagonal_generators() {
        let a = BlockAlgebra::new(&[3]).unwrap();
        let mut rng = seeded(11);
        let d0 = a.random_hermitian(&mut rng);
        // L must commute with D: take a polynomial in D
        let l0 = &(&d0 * &d0).scale(0.3) - &d0.scale(0.1);
        // scale spectra into [-1, 1]
        let d = d0.scale(0.8 / d0.norm());
        let l = l0.scale(0.8 / l0.norm());
        let tg = grid(0.0, 1.0, 0.05);
        let path = synth_path(&a, &d, &l, &tg).unwrap();
        let fit = fit_generators(&path).unwrap();
        assert!((&fit.d - &d).norm() < 1e-8);
        assert!((&fit.l - &l).norm() < 1e-8);
    }

    #[test]
    fn bicharacter_oracles() {
        let a = BlockAlgebra::new(&[2]).unwrap();
        let sg = grid(-1.0, 1.0, 0.5);
        let full = grid(-2.0, 2.0, 0.5);
        let d = PositiveElement::from_diagonal(&a, &[vec![3.0, 1.0]])
            .unwrap()
            .log();
        // group homomorphism: w == 1
        let p = synth_path(&a, &d, &a.zero(), &full).unwrap();
        let table = bicharacter(&p, &sg, &sg).unwrap();
        for row in &table.values {
            for w in row {
                assert!((w - &a.identity()).norm() < 1e-13);
            }
        }
        // scalar L = beta: w(s,t) = e^{i s t beta}
        let beta = 0.7;
        let p = synth_path(&a, &d, &a.identity().scale(beta), &full).unwrap();
        let table = bicharacter(&p, &sg, &sg).unwrap();
        for (i, &s) in table.s_grid.iter().enumerate() {
            for (j, &t) in table.t_grid.iter().enumerate() {
                let want = a.identity().scale_c(c64(0.0, s * t * beta).exp());
                assert!((&table.values[i][j] - &want).norm() < 1e-12);
            }
        }
        // grid not closed under sums
        assert!(bicharacter(&p, &[0.0, 1.9], &[0.0, 1.9]).is_err());
    }

    #[test]
    fn bicharacter_centrality_cases() {
        // central lambda on the (2,3)-block algebra
        let a = BlockAlgebra::new(&[2, 3]).unwrap();
        let mut rng = seeded(5);
        let dblocks = a.random_positive(&mut rng, 0.5).log();
        let l = AlgebraElement::from_blocks(vec![
            CMat::identity(2, 2) * c64(0.3, 0.0),
            CMat::identity(3, 3) * c64(-0.1, 0.0),
        ])
        .unwrap();
        // D must commute with L; any D works since L is central
        let sg = grid(-1.0, 1.0, 0.5);
        let full = grid(-2.0, 2.0, 0.5);
        let p = synth_path(&a, &dblocks, &l, &full).unwrap();
        let diag = bicharacter_residuals(&bicharacter(&p, &sg, &sg).unwrap());
        assert!(diag.additivity_s <= 1e-10, "{}", diag.additivity_s);
        assert!(diag.additivity_t <= 1e-10);
        assert!(diag.centrality <= 1e-12);
        assert!(centrality_defect(&l) <= 1e-14);

        // non-central L on a single block
        let b = BlockAlgebra::new(&[2]).unwrap();
        let lnc = AlgebraElement::single(CMat::from_diagonal(&CVec::from_vec(vec![
            c64(0.3, 0.0),
            c64(-0.1, 0.0),
        ])));
        let p = synth_path(&b, &b.zero(), &lnc, &full).unwrap();
        let diag = bicharacter_residuals(&bicharacter(&p, &sg, &sg).unwrap());
        assert!(diag.centrality >= 0.1, "{}", diag.centrality);
        // direct oracle at (1,1): |e^{0.3i} - e^{-0.1i}|
        let w11 = &(&p.eval(1.0).unwrap().adjoint() * &p.eval(1.0).unwrap().adjoint())
            * &p.eval(2.0).unwrap();
        let e12 = b.matrix_unit(0, 0, 1);
        let comm = (&(&w11 * &e12) - &(&e12 * &w11)).norm();
        let oracle = (c64(0.0, 0.3).exp() - c64(0.0, -0.1).exp()).norm();
        assert_relative_eq!(comm, oracle, epsilon = 1e-12);
        assert!(centrality_defect(&w11) >= 0.1);
    }

    #[test]
    fn flows_commute_cases() {
        let a = BlockAlgebra::new(&[2]).unwrap();
        let phi = Weight::new(PositiveElement::from_diagonal(&a, &[vec![1.0, 2.0]]).unwrap());
        let psi = Weight::new(PositiveElement::from_diagonal(&a, &[vec![3.0, 1.0]]).unwrap());
        assert!(flows_commute_residual(&a, &phi, &psi, 1.0, 1.0) <= 1e-12);
        assert!(flows_commute_residual(&a, &phi, &phi, 0.7, -1.3) <= 1e-12);
        let mut rng = seeded(9);
        let psi_nc = Weight::new(a.random_positive(&mut rng, 0.3));
        assert!(flows_commute_residual(&a, &phi, &psi_nc, 1.0, 1.0) > 1e-3);
    }

    #[test]
    fn eigenoperator_cases() {
        let a = BlockAlgebra::new(&[2]).unwrap();
        let phi = Weight::new(PositiveElement::from_diagonal(&a, &[vec![1.0, 2.0]]).unwrap());
        let e12 = a.matrix_unit(0, 0, 1);
        let (w, f) = eigenoperator_residual(&a, &phi, &e12, 0.5).unwrap();
        assert!(w <= 1e-12 && f <= 1e-12);
        let (w, f) = eigenoperator_residual(&a, &phi, &a.identity(), 1.0).unwrap();
        assert!(w <= 1e-14 && f <= 1e-14);
        // wrong eigenvalue: hand value 1 on the weight side
        let (w, f) = eigenoperator_residual(&a, &phi, &e12, 1.0).unwrap();
        assert_relative_eq!(w, 1.0, epsilon = 1e-12);
        assert!(f > 0.1);
        assert!(eigenoperator_residual(&a, &phi, &e12, 0.0).is_err());
    }

    fn golden_constructed() -> (BlockAlgebra, Weight, InvariancePair, ConstructedWeight) {
        let a = BlockAlgebra::new(&[2]).unwrap();
        let phi = Weight::new(PositiveElement::from_diagonal(&a, &[vec![1.0, 2.0]]).unwrap());
        let delta = PositiveElement::from_diagonal(&a, &[vec![3.0, 1.0]]).unwrap();
        let pair = InvariancePair::exact(&phi, delta, &a).unwrap();
        let cw = ConstructedWeight::new(&a, phi.clone(), pair.clone()).unwrap();
        (a, phi, pair, cw)
    }

    #[test]
    fn scalar_invariance_cases() {
        let (a, phi, _pair, cw) = golden_constructed();
        let (r1, r2) = scalar_invariance_residual(&a, &phi, cw.weight(), 1.0, 0.8);
        assert!(r1 <= 1e-10 && r2 <= 1e-10);
        let (r1, _) = scalar_invariance_residual(&a, &phi, cw.weight(), 2.0, 1.0);
        assert!(r1 > 0.1, "rigidity: wrong scalar must be visible, got {r1}");
    }

    #[test]
    fn extract_pair_cases() {
        let a = BlockAlgebra::new(&[2]).unwrap();
        let tg = grid(0.0, 1.0, 0.25);
        // pure delta path: lambda == 1
        let d = PositiveElement::from_diagonal(&a, &[vec![3.0, 1.0]])
            .unwrap()
            .log();
        let p = CocyclePath::from_generators(&a, d.clone(), a.zero()).unwrap();
        let ex = extract_pair(&p, &tg).unwrap();
        assert!(ex.log_lambda.norm() < 1e-12);
        assert!((&ex.log_delta - &d).norm() < 1e-12);
        assert!(ex.consistency.unwrap() < 1e-12);
        // u == 1
        let p1 = CocyclePath::from_generators(&a, a.zero(), a.zero()).unwrap();
        let ex = extract_pair(&p1, &tg).unwrap();
        assert!(ex.log_lambda.norm() < 1e-13 && ex.log_delta.norm() < 1e-13);
        // synthetic with L = 0.2 I
        let l = a.identity().scale(0.2);
        let p2 = CocyclePath::from_generators(&a, d.clone(), l.clone()).unwrap();
        let ex = extract_pair(&p2, &tg).unwrap();
        assert!((&ex.log_lambda - &l).norm() < 1e-12);
        assert!((&ex.log_delta - &d).norm() < 1e-12);
        for &t in &tg {
            let want = phase_exp_elem(&l.scale(t)).unwrap();
            assert!((&ex.lambda_path.eval(t).unwrap() - &want).norm() < 1e-12);
            let wantd = phase_exp_elem(&d.scale(t)).unwrap();
            assert!((&ex.delta_path.eval(t).unwrap() - &wantd).norm() < 1e-12);
        }
    }

    #[test]
    fn verify_rn1_golden_passes() {
        let (a, phi, pair, cw) = golden_constructed();
        let inp = TheoremInputs {
            scenario: "golden-rn1".into(),
            seed: 0,
            algebra: &a,
            phi: &phi,
            psi: cw.weight(),
            pair: Some(&pair),
            lambda0: None,
            probe: None,
            tol: 1e-10,
            t_grid: grid(-1.0, 1.0, 0.25),
        };
        let rep = verify_theorem(TheoremKind::Rn1, &inp).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "{}", rep.to_text());
        assert_eq!(rep.records.len(), 4);
    }

    #[test]
    fn verify_rn1_mixed_flags_counterexample() {
        let (a, phi, pair, _cw) = golden_constructed();
        // psi that is NOT phi_delta: invariance holds for the pair but the
        // density and cocycle records fail -> mixed
        let psi = Weight::new(PositiveElement::from_diagonal(&a, &[vec![3.0, 5.0]]).unwrap());
        let inp = TheoremInputs {
            scenario: "mixed".into(),
            seed: 0,
            algebra: &a,
            phi: &phi,
            psi: &psi,
            pair: Some(&pair),
            lambda0: None,
            probe: None,
            tol: 1e-10,
            t_grid: grid(-1.0, 1.0, 0.5),
        };
        let rep = verify_theorem(TheoremKind::Rn1, &inp).unwrap();
        assert_eq!(rep.verdict, Verdict::Mixed);
        assert!(rep
            .records
            .iter()
            .any(|r| !r.pass && r.counterexample.is_some() || !r.pass && r.id == "rn1-density"));
    }

    #[test]
    fn verify_rn2_commuting_diagonals() {
        let a = BlockAlgebra::new(&[2]).unwrap();
        let phi = Weight::new(PositiveElement::from_diagonal(&a, &[vec![1.0, 2.0]]).unwrap());
        let psi = Weight::new(PositiveElement::from_diagonal(&a, &[vec![3.0, 2.0]]).unwrap());
        let inp = TheoremInputs {
            scenario: "rn2-diag".into(),
            seed: 0,
            algebra: &a,
            phi: &phi,
            psi: &psi,
            pair: None,
            lambda0: None,
            probe: None,
            tol: 1e-10,
            t_grid: grid(-1.0, 1.0, 0.25),
        };
        let rep = verify_theorem(TheoremKind::Rn2, &inp).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "{}", rep.to_text());
        assert!(rep.records.iter().any(|r| r.id == "rn2-density"));
    }

    #[test]
    fn verify_rn3_scalar_cases() {
        let (a, phi, _pair, cw) = golden_constructed();
        let inp = TheoremInputs {
            scenario: "rn3".into(),
            seed: 0,
            algebra: &a,
            phi: &phi,
            psi: cw.weight(),
            pair: None,
            lambda0: Some(1.0),
            probe: None,
            tol: 1e-10,
            t_grid: grid(-1.0, 1.0, 0.5),
        };
        let rep = verify_theorem(TheoremKind::Rn3, &inp).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "{}", rep.to_text());
        // a wrong scalar must fail coherently, not mixed
        let bad = TheoremInputs {
            lambda0: Some(2.0),
            ..inp
        };
        let rep = verify_theorem(TheoremKind::Rn3, &bad).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail, "{}", rep.to_text());
        let none = TheoremInputs {
            lambda0: None,
            ..bad
        };
        assert!(verify_theorem(TheoremKind::Rn3, &none).is_err());
    }
}

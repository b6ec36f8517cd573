//! Self-checks for one `(algebra, sigma, M)`: lattice congruences, torus sum,
//! cardinalities, the shift identity and the transform identities.

use std::fmt;

use num_bigint::BigUint;
use num_complex::Complex64;

use crate::counting::{burnside_count, closed_form};
use crate::error::{Error, Result};
use crate::grids::{
    check_level, congruence_general, congruence_simplified, dual_weights, point_set_with, tilde_sets, weight_set_with,
    weight_superset, LevelPolicy,
};
use crate::rootdata::{generalized_coxeter, rho_sigma, RootSystemData, SignHom};
use crate::transforms::{
    forward, gram_matrix, hartley_forward, hartley_gram_matrix, hartley_inverse_on_grid, inverse_on_grid,
    max_relative_error, plancherel_check, random_real_samples, random_samples, PlanOptions, TransformPlan,
};
use crate::weyl::DEFAULT_CAP;

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub policy: LevelPolicy,
    pub weyl_cap: u64,
    pub seed: u64,
    /// Adds one to the first orbit size after the grid is built.
    pub corrupt_eps: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            policy: LevelPolicy::Strict,
            weyl_cap: DEFAULT_CAP,
            seed: 0,
            corrupt_eps: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            writeln!(f, "{tag} {:<14} {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

fn outcome(name: &'static str, ok: bool, detail: String) -> CheckOutcome {
    CheckOutcome {
        name,
        status: if ok { Status::Pass } else { Status::Fail },
        detail,
    }
}

const TOL: f64 = 1e-9;

pub fn run_verify(data: &RootSystemData, sigma: SignHom, level: i64, opts: VerifyOptions) -> Result<VerifyReport> {
    check_level(data, sigma, level, opts.policy)?;
    let n = data.rank;
    let ms = generalized_coxeter(data, sigma)?;
    let mut checks = Vec::new();

    let mut mismatches = 0;
    let mut total = 0;
    for k in dual_weights(data, SignHom::Identity, level)? {
        total += 1;
        if congruence_general(data, k.tail()) != congruence_simplified(data, k.tail()) {
            mismatches += 1;
        }
    }
    checks.push(outcome("congruence", mismatches == 0, format!("{mismatches} of {total} candidates disagree")));

    let mut torus = point_set_with(data, SignHom::Identity, level, LevelPolicy::Relaxed)?;
    if opts.corrupt_eps {
        torus[0].eps += 1;
    }
    let sum: u128 = torus.iter().map(|p| p.eps).sum();
    let want = (level as u128).pow(n as u32);
    checks.push(outcome("torus-sum", sum == want, format!("sum eps = {sum}, M^n = {want}")));

    let strict = level > ms;
    if strict {
        let np = point_set_with(data, sigma, level, opts.policy)?.len();
        let nw = weight_set_with(data, sigma, level, opts.policy)?.len();
        let cf = closed_form(data, sigma, level)?;
        let bs = burnside_count(data, sigma, level)?;
        let ok = cf == bs && cf == BigUint::from(np) && cf == BigUint::from(nw);
        checks.push(outcome(
            "cardinality",
            ok,
            format!("points {np}, weights {nw}, closed form {cf}, burnside {bs}"),
        ));

        let rho = rho_sigma(data, sigma)?;
        let (plus, _) = tilde_sets(data, sigma, level - ms)?;
        let shifted: Vec<Vec<i64>> = plus
            .iter()
            .map(|k| k.coords.iter().zip(&rho).map(|(a, b)| a + b).collect())
            .collect();
        let got: Vec<Vec<i64>> = weight_set_with(data, sigma, level, opts.policy)?
            .into_iter()
            .map(|w| w.kac.coords)
            .collect();
        checks.push(outcome("rho-shift", got == shifted, format!("{} weights", got.len())));
    } else {
        for name in ["cardinality", "rho-shift"] {
            checks.push(CheckOutcome {
                name,
                status: Status::Skipped,
                detail: format!("M = {level} is not above {ms}"),
            });
        }
    }

    if data.minuscule.is_empty() {
        let ws: Vec<_> = weight_set_with(data, sigma, level, opts.policy)?.into_iter().map(|w| w.kac).collect();
        let sup = weight_superset(data, sigma, level)?;
        checks.push(outcome("centre-free", ws == sup, format!("{} weights", ws.len())));
    }

    let plan_opts = PlanOptions { policy: opts.policy, weyl_cap: opts.weyl_cap, ..Default::default() };
    match TransformPlan::with_options(data, sigma, level, plan_opts) {
        Err(Error::GroupTooLarge { order, cap }) => {
            for name in ["gram", "plancherel", "roundtrip", "hartley"] {
                checks.push(CheckOutcome {
                    name,
                    status: Status::Skipped,
                    detail: format!("Weyl group order {order} exceeds cap {cap}"),
                });
            }
        }
        Err(e) => return Err(e),
        Ok(mut plan) => {
            if opts.corrupt_eps && !plan.points.is_empty() {
                plan.points[0].eps += 1;
            }
            let norm = plan.norm();
            let g = gram_matrix(&plan);
            let mut dev: f64 = 0.0;
            for (i, row) in g.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    let want = if i == j { norm * plan.weights[i].h as f64 } else { 0.0 };
                    dev = dev.max((v - want).norm() / norm);
                }
            }
            checks.push(outcome("gram", dev <= TOL, format!("max relative deviation {dev:.3e}")));

            let f = random_samples(&plan, opts.seed);
            let c = forward(&plan, &f)?;
            let res = plancherel_check(&plan, &f, &c);
            checks.push(outcome("plancherel", res <= TOL, format!("relative residual {res:.3e}")));
            let back = inverse_on_grid(&plan, &c)?;
            let err = max_relative_error(&f.values, &back.values);
            checks.push(outcome("roundtrip", err <= 1e-10, format!("max relative error {err:.3e}")));

            let hg = hartley_gram_matrix(&plan);
            let mut hdev: f64 = 0.0;
            for (i, row) in hg.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    let want = if i == j { norm * plan.weights[i].h as f64 } else { 0.0 };
                    hdev = hdev.max((v - want).abs() / norm);
                }
            }
            let fr = random_real_samples(&plan, opts.seed);
            let hc = hartley_forward(&plan, &fr)?;
            let hb = hartley_inverse_on_grid(&plan, &hc)?;
            let to_c = |v: &[f64]| v.iter().map(|x| Complex64::new(*x, 0.0)).collect::<Vec<_>>();
            let herr = max_relative_error(&to_c(&fr.values), &to_c(&hb.values));
            checks.push(outcome(
                "hartley",
                hdev <= TOL && herr <= 1e-10,
                format!("gram deviation {hdev:.3e}, roundtrip error {herr:.3e}"),
            ));
        }
    }
    Ok(VerifyReport { checks })
}

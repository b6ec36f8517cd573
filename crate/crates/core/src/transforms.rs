//! Orbit functions and the discrete Fourier and Hartley transforms on the grids.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grids::{point_set_with, weight_set_with, GridPoint, GridWeight, LevelPolicy};
use crate::rootdata::{RootSystemData, SignHom};
use crate::weyl::{enumerate_weyl, sign_value, WeylElement, DEFAULT_CAP};

/// A point `(1/denom) sum_j q_j a_j^v` in simple-coroot coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoint {
    pub q: Vec<i64>,
    pub denom: i64,
}

impl RationalPoint {
    pub fn new(q: Vec<i64>, denom: i64) -> Self {
        assert!(denom > 0, "denominator must be positive");
        RationalPoint { q, denom }
    }
}

/// Function values on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleTable<V> {
    pub points: Vec<GridPoint>,
    pub values: Vec<V>,
}

/// Expansion coefficients, one per weight.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<V> {
    pub weights: Vec<GridWeight>,
    pub coeffs: Vec<V>,
}

#[derive(Debug, Clone, Copy)]
pub struct PlanOptions {
    pub policy: LevelPolicy,
    pub weyl_cap: u64,
    /// Largest `|weights| * |points|` for which the evaluation matrix is stored.
    pub materialize_limit: usize,
}

impl Default for PlanOptions {
    fn default() -> Self {
        PlanOptions {
            policy: LevelPolicy::Strict,
            weyl_cap: DEFAULT_CAP,
            materialize_limit: 100_000_000,
        }
    }
}

/// Everything needed to evaluate orbit functions and transforms for one
/// `(algebra, sigma, M)`.
#[derive(Debug, Clone)]
pub struct TransformPlan {
    pub data: RootSystemData,
    pub sigma: SignHom,
    pub level: i64,
    pub points: Vec<GridPoint>,
    pub weights: Vec<GridWeight>,
    group: Vec<(WeylElement, i64)>,
    orbits: Vec<Vec<(Vec<i64>, i64)>>,
    roots: Vec<Complex64>,
    matrix: Option<Vec<Complex64>>,
}

fn unit_roots(denom: i64) -> Vec<Complex64> {
    (0..denom)
        .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / denom as f64))
        .collect()
}

impl TransformPlan {
    pub fn new(data: &RootSystemData, sigma: SignHom, level: i64) -> Result<Self> {
        Self::with_options(data, sigma, level, PlanOptions::default())
    }

    pub fn with_options(data: &RootSystemData, sigma: SignHom, level: i64, opts: PlanOptions) -> Result<Self> {
        let points = point_set_with(data, sigma, level, opts.policy)?;
        let weights = weight_set_with(data, sigma, level, opts.policy)?;
        let group: Vec<(WeylElement, i64)> = enumerate_weyl(data, opts.weyl_cap)?
            .into_iter()
            .map(|w| {
                let s = i64::from(sign_value(data, sigma, &w));
                (w, s)
            })
            .collect();
        let mut plan = TransformPlan {
            data: data.clone(),
            sigma,
            level,
            points,
            weights,
            group,
            orbits: Vec::new(),
            roots: unit_roots(level),
            matrix: None,
        };
        plan.orbits = plan.weights.par_iter().map(|w| plan.signed_orbit(w.weight())).collect();
        if plan.weights.len() * plan.points.len() <= opts.materialize_limit {
            let cols = plan.points.len();
            let m: Vec<Complex64> = (0..plan.weights.len() * cols)
                .into_par_iter()
                .map(|idx| plan.stream_entry(idx / cols, idx % cols))
                .collect();
            plan.matrix = Some(m);
        }
        Ok(plan)
    }

    pub fn weyl_order(&self) -> u128 {
        self.data.weyl_order
    }

    /// `|W| M^n`.
    pub fn norm(&self) -> f64 {
        self.data.weyl_order as f64 * (self.level as f64).powi(self.data.rank as i32)
    }

    pub fn is_materialized(&self) -> bool {
        self.matrix.is_some()
    }

    /// Distinct images `w lambda` with the summed signs of the elements producing them.
    pub fn signed_orbit(&self, label: &[i64]) -> Vec<(Vec<i64>, i64)> {
        let mut acc: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (w, s) in &self.group {
            *acc.entry(w.apply(label)).or_insert(0) += s;
        }
        acc.into_iter().filter(|(_, c)| *c != 0).collect()
    }

    fn evaluate(&self, orbit: &[(Vec<i64>, i64)], q: &[i64], denom: i64, roots: &[Complex64]) -> Complex64 {
        let mut hist: BTreeMap<i64, i64> = BTreeMap::new();
        for (mu, c) in orbit {
            let k = self.data.pairing(mu, q).rem_euclid(denom);
            *hist.entry(k).or_insert(0) += c;
        }
        hist.into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(k, c)| {
                let z = if roots.is_empty() {
                    Complex64::from_polar(1.0, TAU * k as f64 / denom as f64)
                } else {
                    roots[k as usize]
                };
                z * c as f64
            })
            .sum()
    }

    fn stream_entry(&self, wi: usize, pj: usize) -> Complex64 {
        self.evaluate(&self.orbits[wi], &self.points[pj].q, self.level, &self.roots)
    }

    /// `phi_lambda(s)` for the `wi`-th weight at the `pj`-th grid point.
    pub fn phi_grid(&self, wi: usize, pj: usize) -> Complex64 {
        match &self.matrix {
            Some(m) => m[wi * self.points.len() + pj],
            None => self.stream_entry(wi, pj),
        }
    }

    /// Evaluation without the stored matrix.
    pub fn phi_grid_streamed(&self, wi: usize, pj: usize) -> Complex64 {
        self.stream_entry(wi, pj)
    }

    /// Orbit function for an arbitrary integral label at a rational point.
    pub fn phi(&self, label: &[i64], at: &RationalPoint) -> Complex64 {
        let orbit = self.signed_orbit(label);
        self.phi_orbit(&orbit, at)
    }

    fn phi_orbit(&self, orbit: &[(Vec<i64>, i64)], at: &RationalPoint) -> Complex64 {
        if at.denom == self.level {
            self.evaluate(orbit, &at.q, at.denom, &self.roots)
        } else if at.denom <= 1 << 16 {
            self.evaluate(orbit, &at.q, at.denom, &unit_roots(at.denom))
        } else {
            self.evaluate(orbit, &at.q, at.denom, &[])
        }
    }

    /// Hartley orbit function `Re phi + Im phi`.
    pub fn hartley(&self, label: &[i64], at: &RationalPoint) -> f64 {
        let z = self.phi(label, at);
        z.re + z.im
    }

    pub fn hartley_grid(&self, wi: usize, pj: usize) -> f64 {
        let z = self.phi_grid(wi, pj);
        z.re + z.im
    }

    fn check_grid<V>(&self, table: &SampleTable<V>) -> Result<()> {
        if table.values.len() != table.points.len() {
            return Err(Error::GridMismatch(format!(
                "{} values for {} points",
                table.values.len(),
                table.points.len()
            )));
        }
        if table.points.len() != self.points.len() {
            return Err(Error::GridMismatch(format!(
                "expected {} points, got {}",
                self.points.len(),
                table.points.len()
            )));
        }
        if let Some(i) = (0..self.points.len()).find(|&i| table.points[i].kac != self.points[i].kac) {
            return Err(Error::GridMismatch(format!(
                "point {i} is {:?}, expected {:?}",
                table.points[i].kac.coords, self.points[i].kac.coords
            )));
        }
        Ok(())
    }

    /// A table over this grid filled by `f`.
    pub fn tabulate<V>(&self, f: impl Fn(&GridPoint) -> V) -> SampleTable<V> {
        SampleTable {
            points: self.points.clone(),
            values: self.points.iter().map(f).collect(),
        }
    }
}

/// `sum_s eps(s) f(s) conj(g(s))`.
pub fn scalar_product(plan: &TransformPlan, f: &[Complex64], g: &[Complex64]) -> Complex64 {
    plan.points
        .iter()
        .zip(f.iter().zip(g))
        .map(|(p, (a, b))| a * b.conj() * p.eps as f64)
        .sum()
}

/// Gram matrix of the orbit functions under [`scalar_product`].
pub fn gram_matrix(plan: &TransformPlan) -> Vec<Vec<Complex64>> {
    let nw = plan.weights.len();
    let rows: Vec<Vec<Complex64>> = (0..nw)
        .map(|i| (0..plan.points.len()).map(|j| plan.phi_grid(i, j)).collect())
        .collect();
    (0..nw)
        .into_par_iter()
        .map(|i| (0..nw).map(|j| scalar_product(plan, &rows[i], &rows[j])).collect())
        .collect()
}

/// Gram matrix of the Hartley functions.
pub fn hartley_gram_matrix(plan: &TransformPlan) -> Vec<Vec<f64>> {
    let nw = plan.weights.len();
    let rows: Vec<Vec<f64>> = (0..nw)
        .map(|i| (0..plan.points.len()).map(|j| plan.hartley_grid(i, j)).collect())
        .collect();
    (0..nw)
        .into_par_iter()
        .map(|i| {
            (0..nw)
                .map(|j| {
                    plan.points
                        .iter()
                        .enumerate()
                        .map(|(k, p)| rows[i][k] * rows[j][k] * p.eps as f64)
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// Fourier coefficients `c_lambda = <f, phi_lambda> / (|W| M^n h(lambda))`.
pub fn forward(plan: &TransformPlan, f: &SampleTable<Complex64>) -> Result<Spectrum<Complex64>> {
    plan.check_grid(f)?;
    let norm = plan.norm();
    let coeffs = (0..plan.weights.len())
        .into_par_iter()
        .map(|i| {
            let s: Complex64 = (0..plan.points.len())
                .map(|j| f.values[j] * plan.phi_grid(i, j).conj() * plan.points[j].eps as f64)
                .sum();
            s / (norm * plan.weights[i].h as f64)
        })
        .collect();
    Ok(Spectrum { weights: plan.weights.clone(), coeffs })
}

fn check_spectrum<V>(plan: &TransformPlan, spectrum: &Spectrum<V>) -> Result<()> {
    if spectrum.coeffs.len() != plan.weights.len()
        || spectrum.weights.iter().zip(&plan.weights).any(|(a, b)| a.kac != b.kac)
    {
        return Err(Error::GridMismatch("spectrum weights differ from the plan".into()));
    }
    Ok(())
}

/// Interpolant `sum_lambda c_lambda phi_lambda(a)` at a rational point.
pub fn inverse(plan: &TransformPlan, spectrum: &Spectrum<Complex64>, at: &RationalPoint) -> Result<Complex64> {
    check_spectrum(plan, spectrum)?;
    Ok(plan
        .orbits
        .iter()
        .zip(&spectrum.coeffs)
        .map(|(o, c)| c * plan.phi_orbit(o, at))
        .sum())
}

/// Interpolant evaluated on the plan's own grid.
pub fn inverse_on_grid(plan: &TransformPlan, spectrum: &Spectrum<Complex64>) -> Result<SampleTable<Complex64>> {
    check_spectrum(plan, spectrum)?;
    let values = (0..plan.points.len())
        .into_par_iter()
        .map(|j| (0..plan.weights.len()).map(|i| spectrum.coeffs[i] * plan.phi_grid(i, j)).sum())
        .collect();
    Ok(SampleTable { points: plan.points.clone(), values })
}

/// Hartley coefficients of a real function.
pub fn hartley_forward(plan: &TransformPlan, f: &SampleTable<f64>) -> Result<Spectrum<f64>> {
    plan.check_grid(f)?;
    let norm = plan.norm();
    let coeffs = (0..plan.weights.len())
        .into_par_iter()
        .map(|i| {
            let s: f64 = (0..plan.points.len())
                .map(|j| f.values[j] * plan.hartley_grid(i, j) * plan.points[j].eps as f64)
                .sum();
            s / (norm * plan.weights[i].h as f64)
        })
        .collect();
    Ok(Spectrum { weights: plan.weights.clone(), coeffs })
}

pub fn hartley_inverse(plan: &TransformPlan, spectrum: &Spectrum<f64>, at: &RationalPoint) -> Result<f64> {
    check_spectrum(plan, spectrum)?;
    Ok(plan
        .orbits
        .iter()
        .zip(&spectrum.coeffs)
        .map(|(o, c)| {
            let z = plan.phi_orbit(o, at);
            c * (z.re + z.im)
        })
        .sum())
}

pub fn hartley_inverse_on_grid(plan: &TransformPlan, spectrum: &Spectrum<f64>) -> Result<SampleTable<f64>> {
    check_spectrum(plan, spectrum)?;
    let values = (0..plan.points.len())
        .into_par_iter()
        .map(|j| (0..plan.weights.len()).map(|i| spectrum.coeffs[i] * plan.hartley_grid(i, j)).sum())
        .collect();
    Ok(SampleTable { points: plan.points.clone(), values })
}

/// Relative Plancherel residual
/// `|sum eps |f|^2 - |W| M^n sum h |c|^2| / sum eps |f|^2`.
pub fn plancherel_check(plan: &TransformPlan, f: &SampleTable<Complex64>, spectrum: &Spectrum<Complex64>) -> f64 {
    let lhs: f64 = f.points.iter().zip(&f.values).map(|(p, v)| p.eps as f64 * v.norm_sqr()).sum();
    let rhs: f64 = plan.norm() * spectrum.weights.iter().zip(&spectrum.coeffs).map(|(w, c)| w.h as f64 * c.norm_sqr()).sum::<f64>();
    if lhs == 0.0 {
        rhs.abs()
    } else {
        (lhs - rhs).abs() / lhs
    }
}

/// Largest `|phi_{w lambda + M p}(s) - sigma(w) phi_lambda(s)|` over the grid.
pub fn label_symmetry_check(plan: &TransformPlan, label: &[i64], shift: &[i64], w: &WeylElement) -> f64 {
    let moved: Vec<i64> = w.apply(label).iter().zip(shift).map(|(a, p)| a + plan.level * p).collect();
    let sign = f64::from(sign_value(&plan.data, plan.sigma, w));
    plan.points
        .iter()
        .map(|pt| {
            let at = RationalPoint::new(pt.q.clone(), plan.level);
            (plan.phi(&moved, &at) - plan.phi(label, &at) * sign).norm()
        })
        .fold(0.0, f64::max)
}

/// Largest relative deviation `max |g - f| / max |f|`.
pub fn max_relative_error(f: &[Complex64], g: &[Complex64]) -> f64 {
    let scale = f.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let err = f.iter().zip(g).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        err
    } else {
        err / scale
    }
}

/// Pseudo-random complex samples with parts in `[-1, 1)`.
pub fn random_samples(plan: &TransformPlan, seed: u64) -> SampleTable<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = plan
        .points
        .iter()
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    SampleTable { points: plan.points.clone(), values }
}

/// Pseudo-random real samples in `[-1, 1)`.
pub fn random_real_samples(plan: &TransformPlan, seed: u64) -> SampleTable<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = plan.points.iter().map(|_| rng.gen_range(-1.0..1.0)).collect();
    SampleTable { points: plan.points.clone(), values }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::{gamma_group, is_lex_max};
    use crate::grids::weight_superset;
    use crate::rootdata::{build, generalized_coxeter};
    use crate::weyl::enumerate_weyl;
    use proptest::prelude::*;

    fn t(s: &str) -> RootSystemData {
        build(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn materialized_equals_streamed() {
        let r = t("C2");
        let plan = TransformPlan::new(&r, SignHom::Short, 7).unwrap();
        assert!(plan.is_materialized());
        for i in 0..plan.weights.len() {
            for j in 0..plan.points.len() {
                assert_eq!(plan.phi_grid(i, j), plan.phi_grid_streamed(i, j));
            }
        }
        let opts = PlanOptions { materialize_limit: 0, ..Default::default() };
        let lazy = TransformPlan::with_options(&r, SignHom::Short, 7, opts).unwrap();
        assert!(!lazy.is_materialized());
        let f = random_samples(&plan, 3);
        assert_eq!(forward(&plan, &f).unwrap(), forward(&lazy, &f).unwrap());
    }

    #[test]
    fn a2_gram_and_roundtrip() {
        let r = t("A2");
        let plan = TransformPlan::new(&r, SignHom::Identity, 7).unwrap();
        let g = gram_matrix(&plan);
        for (i, row) in g.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let want = if i == j { plan.norm() * plan.weights[i].h as f64 } else { 0.0 };
                assert!((v - want).norm() < 1e-9 * plan.norm(), "{i} {j} {v}");
            }
        }
        let f = random_samples(&plan, 11);
        let c = forward(&plan, &f).unwrap();
        let back = inverse_on_grid(&plan, &c).unwrap();
        assert!(max_relative_error(&f.values, &back.values) < 1e-10);
        assert!(plancherel_check(&plan, &f, &c) < 1e-10);
    }

    #[test]
    fn hartley_roundtrip() {
        for (name, s, m) in [("G2", "l", 6), ("B3", "s", 5), ("A3", "e", 7)] {
            let r = t(name);
            let plan = TransformPlan::new(&r, s.parse().unwrap(), m).unwrap();
            let g = hartley_gram_matrix(&plan);
            for (i, row) in g.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    let want = if i == j { plan.norm() * plan.weights[i].h as f64 } else { 0.0 };
                    assert!((v - want).abs() < 1e-9 * plan.norm(), "{name} {i} {j}");
                }
            }
            let f = random_real_samples(&plan, 5);
            let c = hartley_forward(&plan, &f).unwrap();
            let back = hartley_inverse_on_grid(&plan, &c).unwrap();
            for (a, b) in f.values.iter().zip(&back.values) {
                assert!((a - b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn grid_mismatch_is_reported() {
        let r = t("A2");
        let plan = TransformPlan::new(&r, SignHom::Identity, 7).unwrap();
        let mut f = random_samples(&plan, 1);
        f.points.swap(0, 1);
        assert!(matches!(forward(&plan, &f), Err(Error::GridMismatch(_))));
        f.points.pop();
        assert!(matches!(forward(&plan, &f), Err(Error::GridMismatch(_))));
    }

    #[test]
    fn vanishing_outside_sign_domain() {
        for (name, level) in [("A2", 7), ("C2", 8), ("G2", 9), ("B3", 9)] {
            let r = t(name);
            let group = gamma_group(&r);
            for sigma in SignHom::admissible(r.kind) {
                if level <= generalized_coxeter(&r, sigma).unwrap() {
                    continue;
                }
                let plan = TransformPlan::new(&r, sigma, level).unwrap();
                let kept: Vec<_> = plan.weights.iter().map(|w| w.kac.clone()).collect();
                for k in weight_superset(&r, SignHom::Identity, level).unwrap() {
                    if !is_lex_max(&group, &k) || kept.contains(&k) {
                        continue;
                    }
                    for p in &plan.points {
                        let v = plan.phi(k.tail(), &RationalPoint::new(p.q.clone(), level));
                        assert!(v.norm() < 1e-9 * plan.weyl_order() as f64, "{name} {sigma} {k:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn exponential_orthogonality() {
        // sum over (1/M)Q^v / Q^v of exp(2 pi i <mu, y>) is M^n on MP and 0 elsewhere
        for (name, level) in [("A2", 4), ("C2", 5), ("G2", 3)] {
            let r = t(name);
            let plan = TransformPlan::new(&r, SignHom::Identity, level).unwrap();
            for a in -6i64..6 {
                for b in -6i64..6 {
                    let mu = [a, b];
                    let mut s = Complex64::new(0.0, 0.0);
                    for x in 0..level {
                        for y in 0..level {
                            s += plan.roots[r.pairing(&mu, &[x, y]).rem_euclid(level) as usize];
                        }
                    }
                    let want = if a % level == 0 && b % level == 0 { (level * level) as f64 } else { 0.0 };
                    assert!((s - want).norm() < 1e-9);
                }
            }
        }
    }

    fn reflect_point(r: &RootSystemData, i: usize, at: &RationalPoint) -> RationalPoint {
        let s = r.coweight_coords(&at.q);
        let mut q = at.q.clone();
        q[i - 1] -= s[i - 1];
        RationalPoint::new(q, at.denom)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn interpolant_is_affine_symmetric(seed in 0u64..1000, raw in proptest::collection::vec(-40i64..40, 3), denom in 1i64..30, i in 1usize..4, sh in 0usize..3) {
            for (name, s, m) in [("A2", "e", 5), ("C2", "l", 6), ("B3", "1", 4)] {
                let r = t(name);
                let plan = TransformPlan::new(&r, s.parse().unwrap(), m).unwrap();
                let f = random_samples(&plan, seed);
                let c = forward(&plan, &f).unwrap();
                let n = r.rank;
                let at = RationalPoint::new(raw[..n].to_vec(), denom);
                let base = inverse(&plan, &c, &at).unwrap();
                let gen = 1 + (i - 1) % n;
                let refl = reflect_point(&r, gen, &at);
                let sign = f64::from(crate::weyl::sign_of_word(&r, plan.sigma, &[gen]));
                let v = inverse(&plan, &c, &refl).unwrap();
                prop_assert!((v - base * sign).norm() < 1e-9 * (1.0 + base.norm()));
                let mut moved = at.q.clone();
                moved[sh % n] += denom;
                let v = inverse(&plan, &c, &RationalPoint::new(moved, denom)).unwrap();
                prop_assert!((v - base).norm() < 1e-9 * (1.0 + base.norm()));
            }
        }

        #[test]
        fn labels_are_periodic(a in -8i64..8, b in -8i64..8, p in -2i64..3, q in -2i64..3, wi in 0usize..12) {
            let r = t("G2");
            let plan = TransformPlan::new(&r, SignHom::Long, 7).unwrap();
            let group = enumerate_weyl(&r, DEFAULT_CAP).unwrap();
            prop_assert!(label_symmetry_check(&plan, &[a, b], &[p, q], &group[wi]) < 1e-9);
        }
    }
}

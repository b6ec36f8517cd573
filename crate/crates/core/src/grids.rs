//! Finite point grids on the coroot side and finite weight sets on the root side.

use serde::{Deserialize, Serialize};

use crate::affine::{epsilon, KacVector};
use crate::error::{Error, Result};
use crate::gamma::{gamma_group, h_pm, is_lex_max, stab_all_plus, GammaGroup};
use crate::rootdata::{generalized_coxeter, point_lower_bounds, rho_sigma, Family, RootSystemData, SignHom};

/// A grid point with its simple-coroot coordinates `q` (the point is `q / M`) and
/// its orbit size `eps`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPoint {
    pub kac: KacVector,
    pub q: Vec<i64>,
    pub eps: u128,
}

/// A weight of the transform basis with its normalisation weight `h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridWeight {
    pub kac: KacVector,
    pub h: u128,
}

impl GridWeight {
    /// Fundamental-weight coordinates.
    pub fn weight(&self) -> &[i64] {
        self.kac.tail()
    }
}

/// Whether levels at or below the generalized Coxeter number are accepted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LevelPolicy {
    #[default]
    Strict,
    Relaxed,
}

/// Checks `M > m^sigma` (strict) or `M >= 1` (relaxed).
pub fn check_level(data: &RootSystemData, sigma: SignHom, level: i64, policy: LevelPolicy) -> Result<()> {
    let bound = match policy {
        LevelPolicy::Strict => generalized_coxeter(data, sigma)?,
        LevelPolicy::Relaxed => {
            sigma.check(data.kind)?;
            0
        }
    };
    if level <= bound {
        return Err(Error::LevelTooSmall { level, bound });
    }
    Ok(())
}

/// All integer vectors `x` with `x >= lower` and `x_0 + sum_i w_i x_i = level`,
/// in descending lexicographic order.
pub fn enumerate_kac(weights: &[i64], lower: &[i64], level: i64) -> Vec<Vec<i64>> {
    let n = weights.len();
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fn rec(i: usize, rem: i64, w: &[i64], lo: &[i64], cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == w.len() {
            if rem >= lo[0] {
                let mut v = Vec::with_capacity(w.len() + 1);
                v.push(rem);
                v.extend_from_slice(cur);
                out.push(v);
            }
            return;
        }
        let mut x = lo[i + 1];
        while w[i] * x <= rem - lo[0] {
            cur[i] = x;
            rec(i + 1, rem - w[i] * x, w, lo, cur, out);
            x += 1;
        }
    }
    if level >= 0 {
        rec(0, level, weights, lower, &mut cur, &mut out);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Membership of `sum_i (s_i / M) w_i` (fundamental coweights) in `(1/M) Q^v`,
/// tested through the rational inverse Cartan matrix.
pub fn congruence_general(data: &RootSystemData, s: &[i64]) -> bool {
    data.coroot_coords(s).is_some()
}

/// The same membership test through closed-form congruences.
pub fn congruence_simplified(data: &RootSystemData, s: &[i64]) -> bool {
    let n = data.rank;
    let at = |i: usize| s[i - 1];
    let odd_sum = |upto: usize| (1..=upto).step_by(2).map(at).sum::<i64>();
    match data.kind.family {
        Family::A => (1..=n).map(|i| i as i64 * at(i)).sum::<i64>().rem_euclid(n as i64 + 1) == 0,
        Family::B => odd_sum(n) % 2 == 0,
        Family::C => at(n) % 2 == 0,
        Family::D => match n % 4 {
            0 => odd_sum(n - 1) % 2 == 0 && (at(n - 1) + at(n)) % 2 == 0,
            1 => (2 * odd_sum(n - 2) + 3 * at(n - 1) + at(n)) % 4 == 0,
            2 => (odd_sum(n - 3) + at(n)) % 2 == 0 && (at(n - 1) + at(n)) % 2 == 0,
            _ => (2 * odd_sum(n - 2) + at(n - 1) + 3 * at(n)) % 4 == 0,
        },
        Family::E => match n {
            6 => (at(1) + 2 * at(2) + at(4) + 2 * at(5)) % 3 == 0,
            7 => (at(4) + at(6) + at(7)) % 2 == 0,
            _ => true,
        },
        Family::F | Family::G => true,
    }
}

/// Candidate points before the lattice congruence: the coroot-side domain at level
/// `M` with the sign pattern of `sigma`.
pub fn dual_weights(data: &RootSystemData, sigma: SignHom, level: i64) -> Result<Vec<KacVector>> {
    let lower = point_lower_bounds(data, sigma)?;
    Ok(enumerate_kac(&data.marks, &lower, level)
        .into_iter()
        .map(|c| KacVector::new(c, level))
        .collect())
}

/// Grid points for `sigma` at level `M`, strictly above the generalized Coxeter number.
pub fn point_set(data: &RootSystemData, sigma: SignHom, level: i64) -> Result<Vec<GridPoint>> {
    point_set_with(data, sigma, level, LevelPolicy::Strict)
}

pub fn point_set_with(
    data: &RootSystemData,
    sigma: SignHom,
    level: i64,
    policy: LevelPolicy,
) -> Result<Vec<GridPoint>> {
    check_level(data, sigma, level, policy)?;
    dual_weights(data, sigma, level)?
        .into_iter()
        .filter(|k| congruence_simplified(data, k.tail()))
        .map(|kac| {
            let q = data
                .coroot_coords(kac.tail())
                .expect("closed-form congruence accepted a non-lattice point");
            let eps = epsilon(data, &kac)?;
            Ok(GridPoint { kac, q, eps })
        })
        .collect()
}

/// Root-side Kac vectors with `lambda_i >= rho^sigma_i` at level `M`.
pub fn weight_superset(data: &RootSystemData, sigma: SignHom, level: i64) -> Result<Vec<KacVector>> {
    let lower = rho_sigma(data, sigma)?;
    Ok(enumerate_kac(&data.comarks, &lower, level)
        .into_iter()
        .map(|c| KacVector::new(c, level))
        .collect())
}

/// Transform weights for `sigma` at level `M`, strictly above the generalized Coxeter number.
pub fn weight_set(data: &RootSystemData, sigma: SignHom, level: i64) -> Result<Vec<GridWeight>> {
    weight_set_with(data, sigma, level, LevelPolicy::Strict)
}

pub fn weight_set_with(
    data: &RootSystemData,
    sigma: SignHom,
    level: i64,
    policy: LevelPolicy,
) -> Result<Vec<GridWeight>> {
    check_level(data, sigma, level, policy)?;
    let group = gamma_group(data);
    weight_superset(data, sigma, level)?
        .into_iter()
        .filter(|k| is_lex_max(&group, k) && stab_all_plus(&group, sigma, &k.coords))
        .map(|kac| {
            let h = h_pm(data, &group, &kac)?;
            Ok(GridWeight { kac, h })
        })
        .collect()
}

/// Orbit representatives at level `M` split by whether the centre stabilizer has
/// only `+1` signs under `sigma`: `(plus, minus)`.
pub fn tilde_sets(data: &RootSystemData, sigma: SignHom, level: i64) -> Result<(Vec<KacVector>, Vec<KacVector>)> {
    let group: GammaGroup = gamma_group(data);
    let (plus, minus) = weight_superset(data, SignHom::Identity, level)?
        .into_iter()
        .filter(|k| is_lex_max(&group, k))
        .partition(|k| stab_all_plus(&group, sigma, &k.coords));
    Ok((plus, minus))
}

//! Affine Weyl groups, Kac coordinates and stabilizers.
//!
//! Kac coordinates are stored magnified by the level `M`: a vector `[a_0, ..., a_n]`
//! of non-negative integers represents the rational point `[a_0/M, ..., a_n/M]`.
//! On the coroot side the coordinates are weighted by the marks, on the root side
//! by the comarks, with weight 1 for the affine entry.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};
use crate::rootdata::RootSystemData;
use crate::weyl::WeylElement;

/// Which fundamental domain a Kac vector refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Domain of the affine group generated by `W` and coroot-lattice translations.
    Coroot,
    /// Domain of the affine group generated by `W` and root-lattice translations.
    Root,
}

/// Kac coordinates magnified by `level`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KacVector {
    pub coords: Vec<i64>,
    pub level: i64,
}

impl KacVector {
    pub fn new(coords: Vec<i64>, level: i64) -> Self {
        KacVector { coords, level }
    }

    /// Indices of the zero entries.
    pub fn zero_nodes(&self) -> Vec<usize> {
        (0..self.coords.len()).filter(|&i| self.coords[i] == 0).collect()
    }

    /// The finite part `[a_1, ..., a_n]`.
    pub fn tail(&self) -> &[i64] {
        &self.coords[1..]
    }
}

fn weights(data: &RootSystemData, side: Side) -> &[i64] {
    match side {
        Side::Coroot => &data.marks,
        Side::Root => &data.comarks,
    }
}

/// Checks length, non-negativity and the weighted level sum.
pub fn check_kac(data: &RootSystemData, side: Side, kac: &KacVector) -> Result<()> {
    let n = data.rank;
    if kac.coords.len() != n + 1 {
        return Err(Error::MalformedKac(format!(
            "expected {} coordinates, got {}",
            n + 1,
            kac.coords.len()
        )));
    }
    if kac.level <= 0 {
        return Err(Error::MalformedKac(format!("level {} is not positive", kac.level)));
    }
    if let Some(x) = kac.coords.iter().find(|&&x| x < 0) {
        return Err(Error::MalformedKac(format!("negative coordinate {x}")));
    }
    let w = weights(data, side);
    let sum: i64 = kac.coords[0] + (0..n).map(|i| w[i] * kac.coords[i + 1]).sum::<i64>();
    if sum != kac.level {
        return Err(Error::MalformedKac(format!(
            "weighted sum {sum} differs from level {}",
            kac.level
        )));
    }
    Ok(())
}

/// Coroot-side Kac coordinates of the point `q / M` given in simple-coroot coordinates.
pub fn kac_of_point(data: &RootSystemData, q: &[i64], level: i64) -> Vec<i64> {
    let s = data.coweight_coords(q);
    let mut out = Vec::with_capacity(s.len() + 1);
    out.push(level - s.iter().zip(&data.marks).map(|(a, m)| a * m).sum::<i64>());
    out.extend(s);
    out
}

/// Result of moving a point into the fundamental domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedPoint {
    pub kac: KacVector,
    /// Simple-coroot coordinates of the reduced point, magnified by the level.
    pub q: Vec<i64>,
    /// The finite part of the affine map, on fundamental-weight coordinates.
    pub element: WeylElement,
    /// The same map on simple-coroot coordinates.
    pub coroot_linear: IntMatrix,
    /// Translation, magnified by the level; every entry is a multiple of it.
    pub shift: Vec<i64>,
}

impl ReducedPoint {
    /// Reconstructs the input: `coroot_linear * q + shift`.
    pub fn original(&self) -> Vec<i64> {
        linalg::mul_vec(&self.coroot_linear, &self.q)
            .iter()
            .zip(&self.shift)
            .map(|(a, b)| a + b)
            .collect()
    }
}

/// Moves `q / M` into the fundamental domain of the coroot-side affine group.
///
/// Coordinates are first reduced modulo `M`, then the most negative Kac coordinate
/// (lowest index on ties) is reflected away until none is negative.
pub fn reduce_point(data: &RootSystemData, q: &[i64], level: i64) -> ReducedPoint {
    assert!(level > 0);
    let n = data.rank;
    let c = &data.extended.highest_coroot;
    // highest root in fundamental-weight coordinates, and m^T C
    let highest: Vec<i64> = (0..n)
        .map(|k| (0..n).map(|i| data.marks[i] * data.cartan[i][k]).sum())
        .collect();

    let mut cur: Vec<i64> = q.iter().map(|x| x.rem_euclid(level)).collect();
    let mut shift: Vec<i64> = q.iter().zip(&cur).map(|(a, b)| a - b).collect();
    let mut lin = linalg::identity(n);
    let mut omega = linalg::identity(n);
    let mut steps = 0u64;
    loop {
        let kac = kac_of_point(data, &cur, level);
        let (j, &min) = kac
            .iter()
            .enumerate()
            .min_by_key(|&(i, &v)| (v, i))
            .expect("non-empty");
        if min >= 0 {
            return ReducedPoint {
                kac: KacVector::new(kac, level),
                q: cur,
                element: WeylElement { matrix: omega },
                coroot_linear: lin,
                shift,
            };
        }
        steps += 1;
        assert!(steps < 10_000_000, "alcove walk failed to terminate");
        let (s, r, t) = if j == 0 {
            let mut s = linalg::identity(n);
            let mut r = linalg::identity(n);
            for a in 0..n {
                for b in 0..n {
                    s[a][b] -= c[a] * highest[b];
                    r[a][b] -= highest[a] * c[b];
                }
            }
            (s, r, c.iter().map(|x| x * level).collect::<Vec<i64>>())
        } else {
            let mut s = linalg::identity(n);
            for b in 0..n {
                s[j - 1][b] -= data.cartan[j - 1][b];
            }
            (s, WeylElement::reflection(data, j).matrix, vec![0; n])
        };
        cur = linalg::mul_vec(&s, &cur).iter().zip(&t).map(|(a, b)| a + b).collect();
        lin = linalg::mul(&lin, &s);
        omega = linalg::mul(&omega, &r);
        let ht = linalg::mul_vec(&lin, &t);
        for (u, x) in shift.iter_mut().zip(ht) {
            *u -= x;
        }
    }
}

fn stabilizer(data: &RootSystemData, side: Side, kac: &KacVector) -> Result<u128> {
    check_kac(data, side, kac)?;
    let diagram = match side {
        Side::Coroot => &data.extended,
        Side::Root => &data.dual_extended,
    };
    diagram.subdiagram_weyl_order(&kac.zero_nodes())
}

/// Orbit size `|W| / |Stab(s)|` of a coroot-side point.
pub fn epsilon(data: &RootSystemData, kac: &KacVector) -> Result<u128> {
    let stab = stabilizer(data, Side::Coroot, kac)?;
    debug_assert_eq!(data.weyl_order % stab, 0);
    Ok(data.weyl_order / stab)
}

/// Order of the stabilizer of a root-side point in the affine group generated by
/// `W` and root-lattice translations.
pub fn dual_stab_order(data: &RootSystemData, kac: &KacVector) -> Result<u128> {
    stabilizer(data, Side::Root, kac)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::build;
    use crate::weyl::{enumerate_weyl, DEFAULT_CAP};
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn t(s: &str) -> RootSystemData {
        build(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn origin_has_full_stabilizer() {
        let r = t("A2");
        assert_eq!(epsilon(&r, &KacVector::new(vec![7, 0, 0], 7)).unwrap(), 1);
        assert_eq!(epsilon(&r, &KacVector::new(vec![5, 1, 1], 7)).unwrap(), 6);
        assert_eq!(dual_stab_order(&r, &KacVector::new(vec![7, 0, 0], 7)).unwrap(), 6);
    }

    #[test]
    fn malformed_vectors_are_rejected() {
        let r = t("A2");
        for (c, m) in [(vec![1, 1], 2), (vec![3, -1, 0], 2), (vec![1, 1, 1], 2)] {
            assert!(matches!(epsilon(&r, &KacVector::new(c, m)), Err(Error::MalformedKac(_))));
        }
    }

    // Orbit sizes on the torus (1/M)Q^v / Q^v computed directly from the group.
    fn torus_check(name: &str, level: i64) {
        let r = t(name);
        let n = r.rank;
        let group: Vec<IntMatrix> = enumerate_weyl(&r, DEFAULT_CAP)
            .unwrap()
            .iter()
            .map(|w| w.coroot_matrix())
            .collect();
        let total = (level as usize).pow(n as u32);
        for idx in 0..total {
            let mut q = vec![0i64; n];
            let mut x = idx as i64;
            for v in q.iter_mut() {
                *v = x % level;
                x /= level;
            }
            let orbit: HashSet<Vec<i64>> = group
                .iter()
                .map(|g| linalg::mul_vec(g, &q).iter().map(|v| v.rem_euclid(level)).collect())
                .collect();
            let red = reduce_point(&r, &q, level);
            assert_eq!(epsilon(&r, &red.kac).unwrap(), orbit.len() as u128, "{name} {q:?}");
        }
    }

    #[test]
    fn epsilon_matches_torus_orbits() {
        for (name, m) in [("A1", 5), ("A2", 6), ("C2", 6), ("G2", 7), ("A3", 4), ("B3", 4), ("C3", 3)] {
            torus_check(name, m);
        }
    }

    // Stabilizer of lambda/M in W with root-lattice translations, counted directly.
    #[test]
    fn dual_stabilizer_matches_group() {
        for (name, level) in [("A2", 6), ("C2", 5), ("G2", 6), ("B3", 4), ("C3", 4)] {
            let r = t(name);
            let n = r.rank;
            let group = enumerate_weyl(&r, DEFAULT_CAP).unwrap();
            let ct_inv = linalg::inverse(&linalg::transpose(&r.cartan)).unwrap();
            let mut stack = vec![(vec![], level)];
            while let Some((pre, rem)) = stack.pop() {
                if pre.len() == n {
                    let mut coords = vec![rem];
                    coords.extend(&pre);
                    let kac = KacVector::new(coords, level);
                    let direct = group
                        .iter()
                        .filter(|w| {
                            let d: Vec<i64> = w.apply(&pre).iter().zip(&pre).map(|(a, b)| a - b).collect();
                            (0..n).all(|i| {
                                let v: num_rational::Ratio<i64> = (0..n).map(|j| ct_inv[i][j] * d[j]).sum();
                                v.is_integer() && v.to_integer() % level == 0
                            })
                        })
                        .count();
                    assert_eq!(dual_stab_order(&r, &kac).unwrap(), direct as u128, "{name} {kac:?}");
                    continue;
                }
                let w = r.comarks[pre.len()];
                let mut v = 0;
                while w * v <= rem {
                    let mut p = pre.clone();
                    p.push(v);
                    stack.push((p, rem - w * v));
                    v += 1;
                }
            }
        }
    }

    proptest! {
        #[test]
        fn reduce_lands_in_domain(idx in 0usize..7, raw in proptest::collection::vec(-60i64..60, 4), level in 1i64..13) {
            let names = ["A1", "A3", "C2", "G2", "B3", "C4", "F4"];
            let r = t(names[idx]);
            let q: Vec<i64> = raw.iter().cycle().take(r.rank).cloned().collect();
            let red = reduce_point(&r, &q, level);
            prop_assert!(check_kac(&r, Side::Coroot, &red.kac).is_ok());
            prop_assert_eq!(red.original(), q);
            prop_assert!(red.shift.iter().all(|x| x % level == 0));
            let pairing = linalg::mul(&linalg::transpose(&red.element.matrix), &red.coroot_linear);
            prop_assert_eq!(pairing, linalg::identity(r.rank));
        }
    }
}

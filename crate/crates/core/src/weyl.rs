//! The finite Weyl group acting on weights in fundamental-weight coordinates.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};
use crate::rootdata::{RootSystemData, SignHom};

/// Default bound on the number of group elements materialised by [`enumerate_weyl`].
pub const DEFAULT_CAP: u64 = 1_000_000;

/// A weight in fundamental-weight coordinates.
pub type Weight = Vec<i64>;

/// A Weyl group element stored as its integer matrix on fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    pub matrix: IntMatrix,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement { matrix: linalg::identity(n) }
    }

    /// The simple reflection `r_i`, `1 <= i <= n`.
    pub fn reflection(data: &RootSystemData, i: usize) -> Self {
        let n = data.rank;
        let mut m = linalg::identity(n);
        for (j, row) in m.iter_mut().enumerate() {
            row[i - 1] -= data.cartan[i - 1][j];
        }
        WeylElement { matrix: m }
    }

    pub fn apply(&self, weight: &[i64]) -> Weight {
        linalg::mul_vec(&self.matrix, weight)
    }

    /// `self * other`, acting as `other` first.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement { matrix: linalg::mul(&self.matrix, &other.matrix) }
    }

    pub fn det(&self) -> i64 {
        linalg::det(&self.matrix)
    }

    /// Matrix of the same element acting on simple-coroot coordinates of points.
    pub fn coroot_matrix(&self) -> IntMatrix {
        // contragredient of an integral unimodular matrix
        let inv = linalg::inverse(&self.matrix).expect("Weyl matrices are invertible");
        let n = self.matrix.len();
        (0..n)
            .map(|i| (0..n).map(|j| inv[j][i].to_integer()).collect())
            .collect()
    }
}

/// `(r_i lambda)_j = lambda_j - lambda_i C_ij`.
pub fn reflect_weight(data: &RootSystemData, i: usize, weight: &[i64]) -> Weight {
    let li = weight[i - 1];
    weight
        .iter()
        .enumerate()
        .map(|(j, &x)| x - li * data.cartan[i - 1][j])
        .collect()
}

/// All elements of the Weyl group, in breadth-first order by length and then
/// lexicographically by matrix within a length.
pub fn enumerate_weyl(data: &RootSystemData, cap: u64) -> Result<Vec<WeylElement>> {
    if data.weyl_order > u128::from(cap) {
        return Err(Error::GroupTooLarge {
            order: u64::try_from(data.weyl_order).unwrap_or(u64::MAX),
            cap,
        });
    }
    let n = data.rank;
    let gens: Vec<WeylElement> = (1..=n).map(|i| WeylElement::reflection(data, i)).collect();
    let id = WeylElement::identity(n);
    let mut seen: HashSet<WeylElement> = HashSet::new();
    seen.insert(id.clone());
    let mut out = vec![id.clone()];
    let mut layer = vec![id];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for w in &layer {
            for g in &gens {
                let v = g.compose(w);
                if seen.insert(v.clone()) {
                    next.push(v);
                }
            }
        }
        next.sort();
        out.extend(next.iter().cloned());
        layer = next;
    }
    debug_assert_eq!(out.len() as u128, data.weyl_order);
    Ok(out)
}

/// A reduced word `[i_1, ..., i_k]` with `w = r_{i_1} ... r_{i_k}`.
pub fn factorize(data: &RootSystemData, w: &WeylElement) -> Vec<usize> {
    let mut v = w.apply(&vec![1; data.rank]);
    let mut word = Vec::new();
    while let Some(i) = v.iter().position(|&x| x < 0) {
        word.push(i + 1);
        v = reflect_weight(data, i + 1, &v);
    }
    word
}

pub fn length(data: &RootSystemData, w: &WeylElement) -> usize {
    factorize(data, w).len()
}

/// Value of a sign homomorphism on `w`.
pub fn sign_value(data: &RootSystemData, sigma: SignHom, w: &WeylElement) -> i8 {
    sign_of_word(data, sigma, &factorize(data, w))
}

/// Value of a sign homomorphism on the product of a word of simple reflections.
pub fn sign_of_word(data: &RootSystemData, sigma: SignHom, word: &[usize]) -> i8 {
    let odd = match sigma {
        SignHom::Identity => 0,
        SignHom::Det => word.len(),
        SignHom::Short => word.iter().filter(|&&i| data.short[i - 1]).count(),
        SignHom::Long => word.iter().filter(|&&i| !data.short[i - 1]).count(),
    };
    if odd % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Positive roots in simple-root coordinates, sorted by height then lexicographically.
pub fn positive_roots(data: &RootSystemData) -> Vec<Vec<i64>> {
    let n = data.rank;
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut frontier: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    seen.extend(frontier.iter().cloned());
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for r in &frontier {
            for j in 0..n {
                let p: i64 = (0..n).map(|i| r[i] * data.cartan[i][j]).sum();
                let mut nr = r.clone();
                nr[j] -= p;
                if nr.iter().all(|&x| x >= 0) && seen.insert(nr.clone()) {
                    next.push(nr);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Vec<i64>> = seen.into_iter().collect();
    out.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    out
}

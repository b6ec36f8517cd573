//! Root-system data for the compact simple Lie groups.
//!
//! Simple roots follow Bourbaki numbering for the classical series, `F4` and `G2`.
//! The exceptional `E` series uses a chain `1 - 2 - ... - (n-1)` with the
//! extra node `n` attached to node 3 (`E6`, `E7`) or node 5 (`E8`).

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix, RatMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A simple Lie algebra type such as `A2` or `E8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraType {
    pub family: Family,
    pub rank: usize,
}

impl AlgebraType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 3,
            Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidAlgebra(format!("{family:?}{rank}")));
        }
        Ok(AlgebraType { family, rank })
    }

    /// True when the root system has two root lengths.
    pub fn has_two_lengths(&self) -> bool {
        matches!(self.family, Family::B | Family::C | Family::F | Family::G)
    }
}

impl fmt::Display for AlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for AlgebraType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::InvalidAlgebra(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidAlgebra(s.to_string()))?;
        AlgebraType::new(family, rank)
    }
}

impl Serialize for AlgebraType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AlgebraType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The four sign homomorphisms of a Weyl group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignHom {
    Identity,
    Det,
    Short,
    Long,
}

impl SignHom {
    pub const ALL: [SignHom; 4] = [SignHom::Identity, SignHom::Det, SignHom::Short, SignHom::Long];

    /// The homomorphisms available for a type.
    pub fn admissible(kind: AlgebraType) -> Vec<SignHom> {
        if kind.has_two_lengths() {
            Self::ALL.to_vec()
        } else {
            vec![SignHom::Identity, SignHom::Det]
        }
    }

    pub fn check(self, kind: AlgebraType) -> Result<()> {
        if matches!(self, SignHom::Short | SignHom::Long) && !kind.has_two_lengths() {
            return Err(Error::InadmissibleSign {
                algebra: kind.to_string(),
                sigma: self.to_string(),
            });
        }
        Ok(())
    }

    pub fn short_name(self) -> &'static str {
        match self {
            SignHom::Identity => "1",
            SignHom::Det => "e",
            SignHom::Short => "s",
            SignHom::Long => "l",
        }
    }
}

impl fmt::Display for SignHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignHom::Identity => "identity",
            SignHom::Det => "det",
            SignHom::Short => "short",
            SignHom::Long => "long",
        })
    }
}

impl FromStr for SignHom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1" | "identity" | "id" => Ok(SignHom::Identity),
            "e" | "det" => Ok(SignHom::Det),
            "s" | "short" => Ok(SignHom::Short),
            "l" | "long" => Ok(SignHom::Long),
            other => Err(Error::Parse(format!("unknown sign homomorphism {other:?}"))),
        }
    }
}

/// Extended Dynkin diagram with the affine node at index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedDiagram {
    /// `(n+1) x (n+1)` Cartan matrix, entry `[i][j] = <a_i, a_j^v>`.
    pub cartan: IntMatrix,
    /// Coefficients of the highest root, with 1 prepended for the affine node.
    pub marks: Vec<i64>,
    /// Coroot of the highest root in simple-coroot coordinates.
    pub highest_coroot: Vec<i64>,
}

impl ExtendedDiagram {
    /// Builds the diagram from a finite Cartan matrix, highest-root coefficients and
    /// half squared root lengths.
    pub fn new(cartan: &IntMatrix, marks: &[i64], lengths: &[i64]) -> Self {
        let n = cartan.len();
        let dmax = *lengths.iter().max().unwrap();
        let mut ext = vec![vec![0i64; n + 1]; n + 1];
        ext[0][0] = 2;
        for i in 0..n {
            for j in 0..n {
                ext[i + 1][j + 1] = cartan[i][j];
            }
        }
        for j in 0..n {
            let pair: i64 = (0..n).map(|i| marks[i] * cartan[i][j]).sum();
            ext[0][j + 1] = -pair;
            assert_eq!(pair * lengths[j] % dmax, 0);
            ext[j + 1][0] = -pair * lengths[j] / dmax;
        }
        let highest_coroot = (0..n)
            .map(|i| {
                assert_eq!(marks[i] * lengths[i] % dmax, 0);
                marks[i] * lengths[i] / dmax
            })
            .collect();
        let mut all = vec![1];
        all.extend_from_slice(marks);
        ExtendedDiagram {
            cartan: ext,
            marks: all,
            highest_coroot,
        }
    }

    pub fn size(&self) -> usize {
        self.cartan.len()
    }

    /// Order of the Weyl group generated by the nodes in `nodes`.
    pub fn subdiagram_weyl_order(&self, nodes: &[usize]) -> Result<u128> {
        let sub: IntMatrix = nodes
            .iter()
            .map(|&i| nodes.iter().map(|&j| self.cartan[i][j]).collect())
            .collect();
        finite_weyl_order(&sub)
    }
}

/// Order of the Weyl group of a finite-type Cartan matrix, found by classifying
/// each connected component of its diagram.
pub fn finite_weyl_order(c: &IntMatrix) -> Result<u128> {
    let k = c.len();
    let mut seen = vec![false; k];
    let mut total: u128 = 1;
    for start in 0..k {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < comp.len() {
            let i = comp[head];
            head += 1;
            for j in 0..k {
                if !seen[j] && c[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
        }
        comp.sort_unstable();
        let sub: IntMatrix = comp
            .iter()
            .map(|&i| comp.iter().map(|&j| c[i][j]).collect())
            .collect();
        total = total
            .checked_mul(connected_order(&sub)?)
            .ok_or_else(|| Error::InvalidAlgebra("Weyl group order overflow".into()))?;
    }
    Ok(total)
}

fn not_finite(c: &IntMatrix) -> Error {
    Error::InvalidAlgebra(format!("Cartan matrix {c:?} is not of finite type"))
}

fn connected_order(c: &IntMatrix) -> Result<u128> {
    let k = c.len();
    if k == 1 {
        return Ok(2);
    }
    let mut degree = vec![0usize; k];
    let mut edges = 0;
    let mut triple = 0;
    let mut double = None;
    for i in 0..k {
        for j in i + 1..k {
            if c[i][j] == 0 && c[j][i] == 0 {
                continue;
            }
            match c[i][j] * c[j][i] {
                1 => {}
                2 => double = if double.is_none() { Some((i, j)) } else { return Err(not_finite(c)) },
                3 => triple += 1,
                _ => return Err(not_finite(c)),
            }
            degree[i] += 1;
            degree[j] += 1;
            edges += 1;
        }
    }
    if edges != k - 1 {
        return Err(not_finite(c));
    }
    if triple > 0 {
        return if k == 2 { Ok(12) } else { Err(not_finite(c)) };
    }
    if let Some((i, j)) = double {
        if degree.iter().any(|&d| d > 2) {
            return Err(not_finite(c));
        }
        if degree[i] == 1 || degree[j] == 1 {
            return family_order(Family::B, k);
        }
        return if k == 4 { Ok(1152) } else { Err(not_finite(c)) };
    }
    let branch: Vec<usize> = (0..k).filter(|&i| degree[i] >= 3).collect();
    match branch.as_slice() {
        [] => family_order(Family::A, k),
        [b] if degree[*b] == 3 => {
            let mut arms = Vec::new();
            for first in (0..k).filter(|&j| j != *b && c[*b][j] != 0) {
                let (mut prev, mut cur, mut len) = (*b, first, 1);
                loop {
                    if degree[cur] > 2 {
                        return Err(not_finite(c));
                    }
                    let next = (0..k).find(|&j| j != prev && j != cur && c[cur][j] != 0);
                    match next {
                        Some(nx) => {
                            prev = cur;
                            cur = nx;
                            len += 1;
                        }
                        None => break,
                    }
                }
                arms.push(len);
            }
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => family_order(Family::D, k),
                [1, 2, 2] => Ok(51_840),
                [1, 2, 3] => Ok(2_903_040),
                [1, 2, 4] => Ok(696_729_600),
                _ => Err(not_finite(c)),
            }
        }
        _ => Err(not_finite(c)),
    }
}

fn family_order(family: Family, k: usize) -> Result<u128> {
    let overflow = || Error::InvalidAlgebra(format!("Weyl group of rank {k} is too large"));
    let fact = (1..=k as u128).try_fold(1u128, |a, b| a.checked_mul(b)).ok_or_else(overflow)?;
    let two_pow = |e: usize| 1u128.checked_shl(e as u32).ok_or_else(overflow);
    Ok(match family {
        Family::A => fact.checked_mul(k as u128 + 1).ok_or_else(overflow)?,
        Family::B | Family::C => two_pow(k)?.checked_mul(fact).ok_or_else(overflow)?,
        Family::D => two_pow(k - 1)?.checked_mul(fact).ok_or_else(overflow)?,
        Family::E => match k {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        Family::F => 1152,
        Family::G => 12,
    })
}

/// Order of the Weyl group of `kind`.
pub fn weyl_order(kind: AlgebraType) -> Result<u128> {
    family_order(kind.family, kind.rank)
}

/// Everything the algorithms need about one root system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystemData {
    pub kind: AlgebraType,
    pub rank: usize,
    /// Entry `[i][j] = <a_i, a_j^v>`.
    pub cartan: IntMatrix,
    pub cartan_inv: RatMatrix,
    /// Highest-root coefficients `m_1..m_n`.
    pub marks: Vec<i64>,
    /// Highest-dual-root coefficients `m^v_1..m^v_n`.
    pub comarks: Vec<i64>,
    /// Half squared lengths of the simple roots, scaled to integers.
    pub lengths: Vec<i64>,
    pub short: Vec<bool>,
    pub coxeter: i64,
    /// Order of the centre, `det C`.
    pub connection_index: i64,
    /// Nodes `i >= 1` whose comark equals 1.
    pub minuscule: Vec<usize>,
    pub weyl_order: u128,
    /// Affine diagram for the coroot lattice side.
    pub extended: ExtendedDiagram,
    /// Affine diagram of the dual root system, for the root lattice side.
    pub dual_extended: ExtendedDiagram,
}

struct Table {
    lengths: Vec<i64>,
    edges: Vec<(usize, usize)>,
    marks: Vec<i64>,
    comarks: Vec<i64>,
}

fn chain(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i, i + 1)).collect()
}

fn table(kind: AlgebraType) -> Table {
    let n = kind.rank;
    match kind.family {
        Family::A => Table {
            lengths: vec![1; n],
            edges: chain(n),
            marks: vec![1; n],
            comarks: vec![1; n],
        },
        Family::B => {
            let mut lengths = vec![2; n];
            lengths[n - 1] = 1;
            let mut marks = vec![2; n];
            marks[0] = 1;
            let mut comarks = vec![2; n];
            comarks[n - 1] = 1;
            Table { lengths, edges: chain(n), marks, comarks }
        }
        Family::C => {
            let mut lengths = vec![1; n];
            lengths[n - 1] = 2;
            let mut marks = vec![2; n];
            marks[n - 1] = 1;
            let mut comarks = vec![2; n];
            comarks[0] = 1;
            Table { lengths, edges: chain(n), marks, comarks }
        }
        Family::D => {
            let mut edges = chain(n - 1);
            edges.push((n - 2, n));
            let mut marks = vec![2; n];
            marks[0] = 1;
            marks[n - 2] = 1;
            marks[n - 1] = 1;
            Table { lengths: vec![1; n], edges, comarks: marks.clone(), marks }
        }
        Family::E => {
            let mut edges = chain(n - 1);
            let marks = match n {
                6 => {
                    edges.push((3, 6));
                    vec![1, 2, 3, 2, 1, 2]
                }
                7 => {
                    edges.push((3, 7));
                    vec![2, 3, 4, 3, 2, 1, 2]
                }
                _ => {
                    edges.push((5, 8));
                    vec![2, 3, 4, 5, 6, 4, 2, 3]
                }
            };
            Table { lengths: vec![1; n], edges, comarks: marks.clone(), marks }
        }
        Family::F => Table {
            lengths: vec![2, 2, 1, 1],
            edges: chain(4),
            marks: vec![2, 3, 4, 2],
            comarks: vec![2, 4, 3, 2],
        },
        Family::G => Table {
            lengths: vec![1, 3],
            edges: chain(2),
            marks: vec![3, 2],
            comarks: vec![2, 3],
        },
    }
}

fn cartan_from(lengths: &[i64], edges: &[(usize, usize)]) -> IntMatrix {
    let n = lengths.len();
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(a, b) in edges {
        let (i, j) = (a - 1, b - 1);
        let (di, dj) = (lengths[i], lengths[j]);
        // <a_i, a_j^v> = 2 (a_i, a_j) / (a_j, a_j); the edge inner product is -max(d)
        let ip = -di.max(dj);
        c[i][j] = ip / dj;
        c[j][i] = ip / di;
    }
    c
}

/// Builds the data for a type from the embedded tables and checks it for consistency.
pub fn build(kind: AlgebraType) -> Result<RootSystemData> {
    let kind = AlgebraType::new(kind.family, kind.rank)?;
    let n = kind.rank;
    let t = table(kind);
    let cartan = cartan_from(&t.lengths, &t.edges);
    let cartan_inv = linalg::inverse(&cartan).expect("Cartan matrix is invertible");
    let dmax = *t.lengths.iter().max().unwrap();
    let short: Vec<bool> = t.lengths.iter().map(|&d| d < dmax).collect();
    let coxeter = 1 + t.marks.iter().sum::<i64>();
    let connection_index = linalg::det(&cartan);
    let minuscule: Vec<usize> = (0..n).filter(|&i| t.comarks[i] == 1).map(|i| i + 1).collect();
    let extended = ExtendedDiagram::new(&cartan, &t.marks, &t.lengths);
    let dual_lengths: Vec<i64> = t.lengths.iter().map(|&d| dmax / d).collect();
    let dual_extended = ExtendedDiagram::new(&linalg::transpose(&cartan), &t.comarks, &dual_lengths);

    let data = RootSystemData {
        kind,
        rank: n,
        cartan,
        cartan_inv,
        short,
        coxeter,
        connection_index,
        minuscule,
        weyl_order: weyl_order(kind)?,
        lengths: t.lengths,
        marks: t.marks,
        comarks: t.comarks,
        extended,
        dual_extended,
    };
    data.validate();
    Ok(data)
}

impl RootSystemData {
    fn validate(&self) {
        let n = self.rank;
        for i in 0..n {
            for j in 0..n {
                assert_eq!(
                    self.cartan[i][j] * self.lengths[j],
                    self.cartan[j][i] * self.lengths[i],
                    "{}: Cartan matrix is not symmetrisable",
                    self.kind
                );
            }
        }
        assert_eq!(self.coxeter, 1 + self.comarks.iter().sum::<i64>(), "{}: mark sums differ", self.kind);
        assert_eq!(
            self.connection_index,
            self.minuscule.len() as i64 + 1,
            "{}: centre order mismatch",
            self.kind
        );
        for diagram in [&self.extended, &self.dual_extended] {
            for j in 0..=n {
                let s: i64 = (0..=n).map(|k| diagram.marks[k] * diagram.cartan[k][j]).sum();
                assert_eq!(s, 0, "{}: marks are not a null vector of the affine diagram", self.kind);
            }
        }
    }

    /// Pairing of a weight (fundamental-weight coordinates) with a point given in
    /// simple-coroot coordinates.
    pub fn pairing(&self, weight: &[i64], q: &[i64]) -> i64 {
        weight.iter().zip(q).map(|(a, b)| a * b).sum()
    }

    /// Simple-coroot coordinates `q = C^{-1} s` of a point with coordinates `s`
    /// in the fundamental coweight basis. Returns `None` when `q` is not integral.
    pub fn coroot_coords(&self, s: &[i64]) -> Option<Vec<i64>> {
        let n = self.rank;
        (0..n)
            .map(|j| {
                let v: Ratio<i64> = (0..n).map(|i| self.cartan_inv[j][i] * s[i]).sum();
                v.is_integer().then(|| v.to_integer())
            })
            .collect()
    }

    /// Inverse of [`coroot_coords`](Self::coroot_coords): `s = C q`.
    pub fn coweight_coords(&self, q: &[i64]) -> Vec<i64> {
        linalg::mul_vec(&self.cartan, q)
    }
}

/// The shift vector of a sign homomorphism, with the affine entry at index 0.
pub fn rho_sigma(data: &RootSystemData, sigma: SignHom) -> Result<Vec<i64>> {
    sigma.check(data.kind)?;
    let mut out = Vec::with_capacity(data.rank + 1);
    out.push(match sigma {
        SignHom::Identity | SignHom::Long => 0,
        SignHom::Det | SignHom::Short => 1,
    });
    out.extend(data.short.iter().map(|&s| match sigma {
        SignHom::Identity => 0,
        SignHom::Det => 1,
        SignHom::Short => i64::from(s),
        SignHom::Long => i64::from(!s),
    }));
    Ok(out)
}

/// Lower bounds on the coroot-side Kac coordinates of a point in the domain
/// attached to `sigma`.
pub fn point_lower_bounds(data: &RootSystemData, sigma: SignHom) -> Result<Vec<i64>> {
    let mut b = rho_sigma(data, sigma)?;
    b[0] = i64::from(matches!(sigma, SignHom::Det | SignHom::Long));
    Ok(b)
}

/// Generalized Coxeter number `sum_i m^v_i rho_i` with `m^v_0 = 1`.
pub fn generalized_coxeter(data: &RootSystemData, sigma: SignHom) -> Result<i64> {
    let rho = rho_sigma(data, sigma)?;
    Ok(rho[0] + (0..data.rank).map(|i| data.comarks[i] * rho[i + 1]).sum::<i64>())
}

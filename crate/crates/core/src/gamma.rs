//! The centre group acting on root-side Kac coordinates by permutations of the
//! extended Dynkin diagram.

use std::collections::BTreeSet;

use crate::affine::{dual_stab_order, KacVector};
use crate::error::Result;
use crate::rootdata::{Family, RootSystemData, SignHom};

/// One group element. Acting on `b` gives `[b[perm[0]], ..., b[perm[n]]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaElement {
    pub label: String,
    pub perm: Vec<usize>,
    pub sign_det: i8,
    pub sign_short: Option<i8>,
    pub sign_long: Option<i8>,
}

impl GammaElement {
    fn identity(n: usize, two_lengths: bool) -> Self {
        let one = two_lengths.then_some(1);
        GammaElement {
            label: "id".into(),
            perm: (0..=n).collect(),
            sign_det: 1,
            sign_short: one,
            sign_long: one,
        }
    }

    pub fn act(&self, coords: &[i64]) -> Vec<i64> {
        self.perm.iter().map(|&p| coords[p]).collect()
    }

    pub fn sign(&self, sigma: SignHom) -> i8 {
        match sigma {
            SignHom::Identity => 1,
            SignHom::Det => self.sign_det,
            SignHom::Short => self.sign_short.unwrap_or(1),
            SignHom::Long => self.sign_long.unwrap_or(1),
        }
    }

    /// Acts by `self` after `first`.
    fn after(&self, first: &GammaElement) -> GammaElement {
        let mul = |a: Option<i8>, b: Option<i8>| a.zip(b).map(|(x, y)| x * y);
        GammaElement {
            label: String::new(),
            perm: self.perm.iter().map(|&i| first.perm[i]).collect(),
            sign_det: self.sign_det * first.sign_det,
            sign_short: mul(self.sign_short, first.sign_short),
            sign_long: mul(self.sign_long, first.sign_long),
        }
    }
}

/// The group, identity first, then in the order the listed elements are labelled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaGroup {
    pub elements: Vec<GammaElement>,
}

fn pm(odd: bool) -> i8 {
    if odd {
        -1
    } else {
        1
    }
}

fn row(label: String, perm: Vec<usize>, signs: (i8, Option<i8>, Option<i8>)) -> GammaElement {
    GammaElement {
        label,
        perm,
        sign_det: signs.0,
        sign_short: signs.1,
        sign_long: signs.2,
    }
}

/// Listed elements of the group and the indices of those that generate it.
fn listed(data: &RootSystemData) -> (Vec<GammaElement>, Vec<usize>) {
    let n = data.rank;
    let simple = |e: i8| (e, None, None);
    match data.kind.family {
        Family::A => {
            let rows = (1..=n)
                .map(|i| {
                    let perm = (0..=n).map(|k| (k + n + 1 - i) % (n + 1)).collect();
                    row(format!("γ_{i}"), perm, simple(pm(n * i % 2 == 1)))
                })
                .collect();
            (rows, vec![0])
        }
        Family::B => {
            let signs = (
                pm((n * (n + 1) / 2) % 2 == 1),
                Some(pm(n % 2 == 1)),
                Some(pm(((n - 1) * n / 2) % 2 == 1)),
            );
            (vec![row(format!("γ_{n}"), (0..=n).rev().collect(), signs)], vec![0])
        }
        Family::C => {
            let mut perm: Vec<usize> = (0..=n).collect();
            perm.swap(0, 1);
            (vec![row("γ_1".into(), perm, (-1, Some(1), Some(-1)))], vec![0])
        }
        Family::D => {
            let k = n / 2;
            let sk = pm(k % 2 == 1);
            let mut g1: Vec<usize> = (0..=n).collect();
            g1.swap(0, 1);
            g1.swap(n - 1, n);
            let g1 = row("γ_1".into(), g1, simple(1));
            if n.is_multiple_of(2) {
                let mut gm: Vec<usize> = vec![n - 1, n];
                gm.extend((2..=n - 2).map(|j| n - j));
                gm.extend([0, 1]);
                let gm = row(format!("γ_{}", n - 1), gm, simple(sk));
                let gn = row(format!("γ_{n}"), (0..=n).rev().collect(), simple(sk));
                (vec![g1, gm, gn], vec![0, 2])
            } else {
                let mut gm: Vec<usize> = (0..=n - 2).map(|j| n - j).collect();
                gm.extend([0, 1]);
                let gm = row(format!("γ_{}", n - 1), gm, simple(sk));
                let mut gn: Vec<usize> = vec![n - 1, n];
                gn.extend((2..=n - 1).map(|j| n - j));
                gn.push(0);
                let gn = row(format!("γ_{n}"), gn, simple(sk));
                (vec![g1, gm, gn], vec![1])
            }
        }
        Family::E if n == 6 => (
            vec![
                row("γ_1".into(), vec![1, 5, 4, 3, 6, 0, 2], simple(1)),
                row("γ_5".into(), vec![5, 0, 6, 3, 2, 1, 4], simple(1)),
            ],
            vec![0],
        ),
        Family::E if n == 7 => (
            vec![row("γ_6".into(), vec![6, 5, 4, 3, 2, 1, 0, 7], simple(-1))],
            vec![0],
        ),
        _ => (vec![], vec![]),
    }
}

/// Builds the group by closing the listed generators under composition and checks
/// the result against every listed element and against the extended diagram.
pub fn gamma_group(data: &RootSystemData) -> GammaGroup {
    let n = data.rank;
    let two = data.kind.has_two_lengths();
    let (rows, gens) = listed(data);
    let mut elements = vec![GammaElement::identity(n, two)];
    let mut head = 0;
    while head < elements.len() {
        let cur = elements[head].clone();
        head += 1;
        for &g in &gens {
            let next = rows[g].after(&cur);
            if !elements.iter().any(|e| e.perm == next.perm) {
                elements.push(next);
            }
        }
    }
    for e in elements.iter_mut().skip(1) {
        let r = rows
            .iter()
            .find(|r| r.perm == e.perm)
            .unwrap_or_else(|| panic!("{}: generated element {:?} is not listed", data.kind, e.perm));
        assert_eq!(
            (e.sign_det, e.sign_short, e.sign_long),
            (r.sign_det, r.sign_short, r.sign_long),
            "{}: sign table is not a homomorphism",
            data.kind
        );
        e.label = r.label.clone();
    }
    assert_eq!(elements.len() as i64, data.connection_index, "{}: group order", data.kind);
    let d = &data.dual_extended;
    for e in &elements {
        for i in 0..=n {
            assert_eq!(d.marks[e.perm[i]], d.marks[i], "{}: comarks not preserved", data.kind);
            for j in 0..=n {
                assert_eq!(d.cartan[e.perm[i]][e.perm[j]], d.cartan[i][j], "{}: not a diagram symmetry", data.kind);
            }
        }
    }
    let order = |e: &GammaElement| rows.iter().position(|r| r.perm == e.perm).map_or(0, |p| p + 1);
    elements.sort_by_key(order);
    GammaGroup { elements }
}

impl GammaGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

pub fn act(gamma: &GammaElement, kac: &KacVector) -> KacVector {
    KacVector::new(gamma.act(&kac.coords), kac.level)
}

/// Distinct orbit points in descending lexicographic order, and the indices of
/// the stabilizing elements.
pub fn orbit_and_stab(group: &GammaGroup, kac: &KacVector) -> (Vec<KacVector>, Vec<usize>) {
    let mut orbit = BTreeSet::new();
    let mut stab = Vec::new();
    for (i, g) in group.elements.iter().enumerate() {
        let image = g.act(&kac.coords);
        if image == kac.coords {
            stab.push(i);
        }
        orbit.insert(image);
    }
    let orbit = orbit.into_iter().rev().map(|c| KacVector::new(c, kac.level)).collect();
    (orbit, stab)
}

/// The lexicographically largest point of the orbit, comparing from index 0.
pub fn lex_max(group: &GammaGroup, kac: &KacVector) -> KacVector {
    let best = group
        .elements
        .iter()
        .map(|g| g.act(&kac.coords))
        .max()
        .expect("group contains the identity");
    KacVector::new(best, kac.level)
}

pub fn is_lex_max(group: &GammaGroup, kac: &KacVector) -> bool {
    group.elements.iter().all(|g| g.act(&kac.coords) <= kac.coords)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabSign {
    AllPlus,
    ContainsMinus,
}

pub fn sigma_on_stab(group: &GammaGroup, sigma: SignHom, stab: &[usize]) -> StabSign {
    if stab.iter().all(|&i| group.elements[i].sign(sigma) == 1) {
        StabSign::AllPlus
    } else {
        StabSign::ContainsMinus
    }
}

/// Stabilizer sign test without building the orbit.
pub fn stab_all_plus(group: &GammaGroup, sigma: SignHom, coords: &[i64]) -> bool {
    group
        .elements
        .iter()
        .all(|g| g.sign(sigma) == 1 || g.act(coords) != coords)
}

/// Normalisation weight of a weight: the order of its stabilizer in the affine group
/// generated by `W` and translations by the weight lattice.
pub fn h_pm(data: &RootSystemData, group: &GammaGroup, kac: &KacVector) -> Result<u128> {
    let base = dual_stab_order(data, kac)?;
    let (_, stab) = orbit_and_stab(group, kac);
    Ok(base * stab.len() as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::build;
    use crate::weyl::{enumerate_weyl, DEFAULT_CAP};

    fn t(s: &str) -> RootSystemData {
        build(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn every_table_is_consistent() {
        for name in [
            "A1", "A2", "A5", "A8", "B3", "B4", "B5", "B6", "B7", "C2", "C3", "C6", "D4", "D5", "D6", "D7", "D8",
            "D9", "D10", "E6", "E7", "E8", "F4", "G2",
        ] {
            let r = t(name);
            assert_eq!(gamma_group(&r).order() as i64, r.connection_index, "{name}");
        }
    }

    #[test]
    fn a2_action_and_lex_max() {
        let r = t("A2");
        let g = gamma_group(&r);
        assert_eq!(g.elements[1].label, "γ_1");
        let b = KacVector::new(vec![5, 1, 1], 7);
        assert_eq!(act(&g.elements[1], &b).coords, vec![1, 5, 1]);
        assert_eq!(lex_max(&g, &KacVector::new(vec![1, 5, 1], 7)), b);
        let (orbit, stab) = orbit_and_stab(&g, &KacVector::new(vec![2, 2, 2], 6));
        assert_eq!(orbit.len(), 1);
        assert_eq!(stab.len(), 3);
    }

    #[test]
    fn h_examples() {
        let r = t("A2");
        let g = gamma_group(&r);
        assert_eq!(h_pm(&r, &g, &KacVector::new(vec![7, 0, 0], 7)).unwrap(), 6);
        assert_eq!(h_pm(&r, &g, &KacVector::new(vec![2, 2, 2], 6)).unwrap(), 3);
        assert_eq!(h_pm(&r, &g, &KacVector::new(vec![5, 1, 1], 7)).unwrap(), 1);
    }

    // h counted directly as #{w : w lambda = lambda mod M P}.
    #[test]
    fn h_matches_weight_lattice_stabilizer() {
        for (name, level) in [("A2", 6), ("A3", 4), ("C2", 6), ("B3", 4), ("C3", 4), ("G2", 7), ("D4", 4)] {
            let r = t(name);
            let g = gamma_group(&r);
            let group = enumerate_weyl(&r, DEFAULT_CAP).unwrap();
            let n = r.rank;
            let mut stack = vec![(vec![], level)];
            while let Some((pre, rem)) = stack.pop() {
                if pre.len() == n {
                    let mut coords = vec![rem];
                    coords.extend(&pre);
                    let direct = group
                        .iter()
                        .filter(|w| w.apply(&pre).iter().zip(&pre).all(|(a, b)| (a - b) % level == 0))
                        .count();
                    let kac = KacVector::new(coords, level);
                    assert_eq!(h_pm(&r, &g, &kac).unwrap(), direct as u128, "{name} {kac:?}");
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
}

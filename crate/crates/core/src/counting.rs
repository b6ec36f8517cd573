//! Exact cardinalities of the weight and point sets.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gamma::gamma_group;
use crate::grids::{enumerate_kac, point_set, weight_set};
use crate::io::CountRow;
use crate::rootdata::{generalized_coxeter, Family, RootSystemData, SignHom};

/// `C(a, b)`, zero when `b < 0` or `a < b`.
pub fn binom(a: i64, b: i64) -> BigInt {
    if b < 0 || a < b {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut r = BigInt::one();
    for i in 0..b {
        r = r * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    r
}

fn totient(mut n: i64) -> i64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

fn divisors(n: i64) -> Vec<i64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

fn to_uint(v: BigInt) -> BigUint {
    match v.sign() {
        Sign::Minus => BigUint::zero(),
        _ => v.magnitude().clone(),
    }
}

/// Number of non-negative `x` with `x_0 + sum_i m^v_i x_i = M`.
pub fn denumerant(data: &RootSystemData, level: i64) -> BigUint {
    denumerant_coins(&data.comarks, level)
}

fn denumerant_coins(comarks: &[i64], level: i64) -> BigUint {
    if level < 0 {
        return BigUint::zero();
    }
    let m = level as usize;
    let mut ways = vec![BigUint::zero(); m + 1];
    ways[0] = BigUint::one();
    for &c in std::iter::once(&1).chain(comarks) {
        let c = c as usize;
        for x in c..=m {
            let prev = ways[x - c].clone();
            ways[x] += prev;
        }
    }
    ways[m].clone()
}

/// Number of binary necklaces with `n + 1` beads of one colour and `M` of the other.
pub fn necklace_crosscheck(n: i64, level: i64) -> BigUint {
    let total = n + 1 + level;
    let g = (n + 1).gcd(&level);
    let sum: BigInt = divisors(g)
        .into_iter()
        .map(|d| BigInt::from(totient(d)) * binom(total / d, (n + 1) / d))
        .sum();
    to_uint(sum / BigInt::from(total))
}

fn half(v: BigInt) -> BigInt {
    v.div_floor(&BigInt::from(2))
}

fn quarter(v: BigInt) -> BigInt {
    v.div_floor(&BigInt::from(4))
}

/// Orbit count at level `M` for the identity sign, by the family formulas.
fn identity_count(data: &RootSystemData, level: i64) -> BigInt {
    if level < 0 {
        return BigInt::zero();
    }
    let n = data.rank as i64;
    let c = binom;
    match data.kind.family {
        Family::A => {
            let total = n + 1 + level;
            let g = (n + 1).gcd(&level);
            let s: BigInt = divisors(g)
                .into_iter()
                .map(|d| BigInt::from(totient(d)) * c(total / d, (n + 1) / d))
                .sum();
            s / BigInt::from(total)
        }
        Family::B => {
            if level % 2 == 1 {
                return c(n + (level - 1) / 2, n);
            }
            let (k, l) = (level / 4, (level % 4) / 2);
            let m = n / 2;
            if n % 2 == 1 {
                half(c(2 * m + 2 * k + l + 1, 2 * m + 1) + c(2 * m + 2 * k + l, 2 * m + 1) + c(m + k, m))
            } else {
                half(c(2 * m + 2 * k + l, 2 * m) + c(2 * m + 2 * k + l - 1, 2 * m) + c(m + k, m) + c(m + k + l - 1, m))
            }
        }
        Family::C => c(n + level / 2, n),
        Family::D => {
            if level % 2 == 1 {
                let k = (level - 1) / 2;
                return c(n + k, n) + c(n + k - 1, n);
            }
            let k = level / 4;
            let m = n / 2;
            let six = BigInt::from(6);
            let two = BigInt::from(2);
            match (level % 4, n % 2) {
                (0, 1) => quarter(
                    c(2 * m + 2 * k + 1, 2 * m + 1)
                        + &six * c(2 * m + 2 * k, 2 * m + 1)
                        + c(2 * m - 1 + 2 * k, 2 * m + 1)
                        + c(2 * m - 1 + 2 * k, 2 * m - 1)
                        + &two * c(m + k - 1, m - 1),
                ),
                (_, 1) => quarter(
                    c(2 * m + 2 * k + 2, 2 * m + 1)
                        + &six * c(2 * m + 2 * k + 1, 2 * m + 1)
                        + c(2 * m + 2 * k, 2 * m + 1)
                        + c(2 * m + 2 * k, 2 * m - 1),
                ),
                (0, _) => quarter(
                    c(2 * m + 2 * k, 2 * m)
                        + &six * c(2 * m + 2 * k - 1, 2 * m)
                        + c(2 * m + 2 * k - 2, 2 * m)
                        + c(2 * m + 2 * k - 2, 2 * m - 2)
                        + &two * c(m + k, m)
                        + &six * c(m + k - 1, m),
                ),
                _ => quarter(
                    c(2 * m + 2 * k + 1, 2 * m)
                        + &six * c(2 * m + 2 * k, 2 * m)
                        + c(2 * m + 2 * k - 1, 2 * m)
                        + c(2 * m + 2 * k - 1, 2 * m - 2)
                        + &six * c(m + k, m)
                        + &two * c(m + k - 1, m),
                ),
            }
        }
        Family::E if n == 6 => {
            let all = BigInt::from(denumerant(data, level));
            let k = level / 6;
            let extra = match level % 6 {
                0 => BigInt::from(2) * c(k + 2, 2) + BigInt::from(2) * c(k + 1, 2),
                3 => BigInt::from(4) * c(k + 2, 2),
                _ => BigInt::zero(),
            };
            (all + extra) / BigInt::from(3)
        }
        Family::E if n == 7 => {
            let all = BigInt::from(denumerant(data, level));
            if level % 2 == 1 {
                return all / BigInt::from(2);
            }
            let (k, l) = (level / 12, ((level % 12) / 2) as usize);
            let extra: BigInt = (0..4).map(|i| BigInt::from(E7_D[l][i]) * c(4 - i as i64 + k, 4)).sum();
            half(all + extra)
        }
        _ => BigInt::from(denumerant(data, level)),
    }
}

const E7_D: [[i64; 4]; 6] = [
    [1, 34, 64, 9],
    [2, 46, 55, 5],
    [5, 55, 46, 2],
    [9, 64, 34, 1],
    [16, 67, 25, 0],
    [25, 67, 16, 0],
];

/// `|Lambda^sigma_{P,M}|` from the per-family closed formulas; requires `M > m^sigma`.
pub fn closed_form(data: &RootSystemData, sigma: SignHom, level: i64) -> Result<BigUint> {
    let ms = generalized_coxeter(data, sigma)?;
    if level <= ms {
        return Err(Error::LevelTooSmall { level, bound: ms });
    }
    let n = data.rank as i64;
    let c = binom;
    let id = |m: i64| identity_count(data, m);
    let v = match (data.kind.family, sigma) {
        (_, SignHom::Identity) => id(level),
        (Family::A, SignHom::Det) => {
            let g = (n + 1).gcd(&level);
            let s: BigInt = divisors(g)
                .into_iter()
                .map(|d| {
                    let sign = if ((n + 1) / d) % 2 == 0 { 1 } else { -1 };
                    BigInt::from(sign * totient(d)) * c(level / d, (n + 1) / d)
                })
                .sum();
            let v = s / BigInt::from(level);
            if (n + 1) % 2 == 0 {
                v
            } else {
                -v
            }
        }
        (Family::B, _) => {
            let (k, l) = (level / 4, (level % 4) / 2);
            let even = level % 2 == 0;
            match sigma {
                SignHom::Det if even && n % 4 == 1 => {
                    let m = n / 4;
                    half(c(2 * k + l, 4 * m + 1) + c(2 * k + l - 1, 4 * m + 1) - c(k + l - 1, 2 * m))
                }
                SignHom::Det if even && n % 4 == 2 => {
                    let m = n / 4;
                    half(
                        c(2 * k + l, 4 * m + 2) + c(2 * k + l - 1, 4 * m + 2)
                            - c(k, 2 * m + 1)
                            - c(k + l - 1, 2 * m + 1),
                    )
                }
                SignHom::Det => id(level - 2 * n),
                SignHom::Short if even && n % 2 == 1 => {
                    let m = n / 2;
                    half(
                        c(2 * m + 2 * k + l, 2 * m + 1) + c(2 * m + 2 * k + l - 1, 2 * m + 1)
                            - c(m + k + l - 1, m),
                    )
                }
                SignHom::Short => id(level - 2),
                SignHom::Long if even && n % 4 == 2 => {
                    let m = n / 4;
                    half(
                        c(2 * k + l + 1, 4 * m + 2) + c(2 * k + l, 4 * m + 2)
                            - c(k, 2 * m + 1)
                            - c(k + l, 2 * m + 1),
                    )
                }
                SignHom::Long if even && n % 4 == 3 => {
                    let m = n / 4;
                    half(c(2 * k + l + 1, 4 * m + 3) + c(2 * k + l, 4 * m + 3) - c(k, 2 * m + 1))
                }
                _ => id(level - 2 * n + 2),
            }
        }
        (Family::C, SignHom::Det) => id(level - 2 * n - 1),
        (Family::C, SignHom::Short) => id(level - 2 * n + 2),
        (Family::C, _) => id(level - 3),
        (Family::D, _) => {
            let k = level / 4;
            let six = BigInt::from(6);
            let two = BigInt::from(2);
            match (level % 4, n % 4) {
                (0, 3) => {
                    let m = n / 4;
                    quarter(
                        c(2 * k + 1, 4 * m + 3) + &six * c(2 * k, 4 * m + 3) + c(2 * k - 1, 4 * m + 3)
                            + c(2 * k - 1, 4 * m + 1)
                            - &two * c(k - 1, 2 * m),
                    )
                }
                (2, 2) => {
                    let m = n / 4;
                    quarter(
                        c(2 * k + 2, 4 * m + 2) + &six * c(2 * k + 1, 4 * m + 2) + c(2 * k, 4 * m + 2)
                            + c(2 * k, 4 * m)
                            - &two * c(k + 1, 2 * m + 1)
                            - &six * c(k, 2 * m + 1),
                    )
                }
                (0, 2) => {
                    let m = n / 4;
                    quarter(
                        c(2 * k + 1, 4 * m + 2) + &six * c(2 * k, 4 * m + 2) + c(2 * k - 1, 4 * m + 2)
                            + c(2 * k - 1, 4 * m)
                            - &six * c(k, 2 * m + 1)
                            - &two * c(k - 1, 2 * m + 1),
                    )
                }
                _ => id(level - 2 * n + 2),
            }
        }
        (Family::E, _) if n == 6 => id(level - 12),
        (Family::E, _) if n == 7 => {
            if level % 2 == 1 {
                id(level - 18)
            } else {
                let (k, l) = (level / 12, ((level % 12) / 2) as usize);
                let all = BigInt::from(denumerant(data, level - 18));
                let extra: BigInt = if l <= 2 {
                    (0..4).map(|i| BigInt::from(E7_D[l + 3][i]) * c(2 - i as i64 + k, 4)).sum()
                } else {
                    (0..4).map(|i| BigInt::from(E7_D[l - 3][i]) * c(3 - i as i64 + k, 4)).sum()
                };
                half(all - extra)
            }
        }
        _ => BigInt::from(denumerant(data, level - ms)),
    };
    Ok(to_uint(v))
}

/// `|Lambda^sigma_{P,M}|` by Burnside's lemma over the centre acting on level
/// `M - m^sigma`, discarding orbits whose stabilizer carries a `-1` sign.
pub fn burnside_count(data: &RootSystemData, sigma: SignHom, level: i64) -> Result<BigUint> {
    let ms = generalized_coxeter(data, sigma)?;
    if level <= ms {
        return Err(Error::LevelTooSmall { level, bound: ms });
    }
    let group = gamma_group(data);
    let lower = vec![0; data.rank + 1];
    let mut kept = 0u128;
    for x in enumerate_kac(&data.comarks, &lower, level - ms) {
        let fixing: Vec<_> = group.elements.iter().filter(|g| g.act(&x) == x).collect();
        if fixing.iter().all(|g| g.sign(sigma) == 1) {
            kept += fixing.len() as u128;
        }
    }
    let c = group.order() as u128;
    debug_assert_eq!(kept % c, 0);
    Ok(BigUint::from(kept / c))
}

/// Evaluates every counting route for one `(algebra, sigma, M)`. Enumeration is
/// skipped when `enumerate` is false.
pub fn count_row(data: &RootSystemData, sigma: SignHom, level: i64, enumerate: bool) -> Result<CountRow> {
    let cf = closed_form(data, sigma, level)?;
    let bs = burnside_count(data, sigma, level)?;
    let mut agree = cf == bs;
    let (mut ep, mut ew) = (String::new(), String::new());
    if enumerate {
        let np = BigUint::from(point_set(data, sigma, level)?.len());
        let nw = BigUint::from(weight_set(data, sigma, level)?.len());
        agree &= np == cf && nw == cf;
        ep = np.to_string();
        ew = nw.to_string();
    }
    Ok(CountRow {
        algebra: data.kind,
        sigma,
        level,
        closed_form: cf.to_string(),
        burnside: bs.to_string(),
        enum_points: ep,
        enum_weights: ew,
        agree,
    })
}

/// Saturating conversion for display and comparisons with enumeration sizes.
pub fn as_u128(v: &BigUint) -> u128 {
    v.to_u128().unwrap_or(u128::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use crate::rootdata::build;

    fn t(s: &str) -> RootSystemData {
        build(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binom(5, 2), BigInt::from(10));
        assert_eq!(binom(-1, 0), BigInt::zero());
        assert_eq!(binom(3, -1), BigInt::zero());
        assert_eq!(binom(0, 0), BigInt::one());
        assert!(!binom(60, 30).is_negative());
    }

    #[test]
    fn necklaces() {
        assert_eq!(necklace_crosscheck(1, 1), BigUint::from(1u32));
        assert_eq!(necklace_crosscheck(2, 7), BigUint::from(12u32));
    }

    // Canonical rotations of binary strings, counted directly.
    #[test]
    fn necklaces_match_direct_enumeration() {
        for n in 0..5i64 {
            for m in 0..7i64 {
                let len = (n + 1 + m) as u32;
                let mut reps = std::collections::HashSet::new();
                for bits in 0u32..(1 << len) {
                    if bits.count_ones() as i64 != n + 1 {
                        continue;
                    }
                    let mask = (1u32 << len) - 1;
                    let canon = (0..len).map(|r| ((bits << r) | (bits >> (len - r))) & mask).min().unwrap();
                    reps.insert(canon);
                }
                assert_eq!(necklace_crosscheck(n, m), BigUint::from(reps.len()), "{n} {m}");
            }
        }
    }

    #[test]
    fn examples() {
        assert_eq!(closed_form(&t("C2"), SignHom::Identity, 6).unwrap(), BigUint::from(10u32));
        assert_eq!(closed_form(&t("A2"), SignHom::Identity, 7).unwrap(), BigUint::from(12u32));
        assert_eq!(closed_form(&t("A2"), SignHom::Det, 7).unwrap(), BigUint::from(5u32));
        assert!(matches!(closed_form(&t("A2"), SignHom::Det, 3), Err(Error::LevelTooSmall { .. })));
    }

    #[test]
    fn a_series_is_a_necklace_count() {
        for n in 1..6 {
            let r = t(&format!("A{n}"));
            for m in 1..12 {
                assert_eq!(closed_form(&r, SignHom::Identity, m).unwrap(), necklace_crosscheck(n, m));
            }
        }
    }

    #[test]
    fn small_sweep_agrees() {
        for name in ["A1", "A2", "A3", "B3", "C2", "C3", "D4", "D5", "G2", "F4"] {
            let r = t(name);
            for sigma in SignHom::admissible(r.kind) {
                let ms = generalized_coxeter(&r, sigma).unwrap();
                for m in ms + 1..=ms + 6 {
                    let cf = closed_form(&r, sigma, m).unwrap();
                    let bs = burnside_count(&r, sigma, m).unwrap();
                    let np = BigUint::from(point_set(&r, sigma, m).unwrap().len());
                    let nw = BigUint::from(weight_set(&r, sigma, m).unwrap().len());
                    assert_eq!((&cf, &bs, &np), (&nw, &nw, &nw), "{name} {sigma} {m}");
                }
            }
        }
    }
}

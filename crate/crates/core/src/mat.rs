//! Small dense rational and integer matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type QMat = Vec<Vec<BigRational>>;
pub type ZMat = Vec<Vec<BigInt>>;

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn qfrac(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn from_ints(rows: &[&[i64]]) -> QMat {
    rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

pub fn from_fracs(rows: &[&[(i64, i64)]]) -> QMat {
    rows.iter().map(|r| r.iter().map(|&(n, d)| qfrac(n, d)).collect()).collect()
}

pub fn identity(n: usize) -> QMat {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()).collect()
}

pub fn mul(a: &QMat, b: &QMat) -> QMat {
    let (n, m, p) = (a.len(), b.len(), b.first().map_or(0, |r| r.len()));
    let mut out = vec![vec![BigRational::zero(); p]; n];
    for i in 0..n {
        for k in 0..m {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..p {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

pub fn transpose(a: &QMat) -> QMat {
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn inverse(a: &QMat) -> Option<QMat> {
    let n = a.len();
    let mut m = a.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        inv.swap(col, p);
        let pinv = m[col][col].recip();
        for j in 0..n {
            m[col][j] = &m[col][j] * &pinv;
            inv[col][j] = &inv[col][j] * &pinv;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in 0..n {
                let t = &f * &m[col][j];
                m[r][j] -= t;
                let t = &f * &inv[col][j];
                inv[r][j] -= t;
            }
        }
    }
    Some(inv)
}

pub fn scale(a: &QMat, k: &BigRational) -> QMat {
    a.iter().map(|r| r.iter().map(|x| x * k).collect()).collect()
}

pub fn is_identity(a: &QMat) -> bool {
    *a == identity(a.len())
}

/// Product of a word of matrices, left to right.
pub fn word_product(gens: &[QMat], word: &[usize]) -> QMat {
    let n = gens.first().map_or(4, |g| g.len());
    word.iter().fold(identity(n), |acc, &i| mul(&acc, &gens[i]))
}

pub fn to_integer(a: &QMat) -> Option<ZMat> {
    a.iter().map(|r| r.iter().map(|x| if x.is_integer() { Some(x.to_integer()) } else { None }).collect()).collect()
}

pub fn from_integer(a: &ZMat) -> QMat {
    a.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect()
}

/// Common denominator form: a = num / den.
pub fn common_denominator(a: &QMat) -> (ZMat, BigInt) {
    let den = a.iter().flatten().fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    let num = a
        .iter()
        .map(|r| r.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect())
        .collect();
    (num, den)
}

pub fn format(a: &QMat) -> String {
    let rows: Vec<String> =
        a.iter().map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let a = from_ints(&[&[2, 1, 0], &[1, 1, 0], &[0, 3, 5]]);
        let b = inverse(&a).unwrap();
        assert!(is_identity(&mul(&a, &b)));
        assert!(inverse(&from_ints(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn common_den() {
        let a = from_fracs(&[&[(1, 2), (1, 3)], &[(1, 1), (0, 1)]]);
        let (n, d) = common_denominator(&a);
        assert_eq!(d, BigInt::from(6));
        assert_eq!(n[0][1], BigInt::from(2));
    }
}

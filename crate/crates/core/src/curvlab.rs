//! Curvature censuses of packings: residue sets, the conjectured modulus,
//! the tables of observed residue sets, and primitivity.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::arrangement::external_tangencies;
use crate::circle::OrientedCircle;
use crate::packing::{generate_packing, PackingError, PackingKind, PackingOptions, PackingSource};
use crate::qint::{Disc, KPoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurvlabError {
    #[error("need at least two circles, got {0}")]
    TooFewCircles(usize),
    #[error("modulus must be positive")]
    BadModulus,
    #[error("modulus {modulus} does not resolve the table row for Δ = {disc}, which needs a multiple of {need}")]
    Unresolved { disc: i64, modulus: u64, need: u64 },
    #[error(transparent)]
    Packing(#[from] PackingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConjectureModulus {
    pub v2: u32,
    pub v3: u32,
    pub m: u64,
}

pub fn conjecture_modulus(disc: &Disc) -> ConjectureModulus {
    let d = disc.delta();
    let v2 = match d.rem_euclid(32) {
        28 => 3,
        8 | 12 | 20 | 24 => 2,
        0 | 4 | 16 => 1,
        _ => 0,
    };
    let v3 = match d.rem_euclid(12) {
        5 | 8 => 1,
        _ => 0,
    };
    ConjectureModulus { v2, v3, m: 2u64.pow(v2) * 3u64.pow(v3) }
}

/// Observed residue sets at the prime 2, as (modulus, alternatives).
/// None means no obstruction at 2.
pub fn table_row_2(disc: &Disc) -> Option<(u64, Vec<Vec<u64>>)> {
    let rows: Vec<Vec<u64>> = match disc.delta().rem_euclid(32) {
        0 | 4 | 16 => vec![vec![0, 1], vec![1]],
        8 | 24 => vec![vec![0, 2, 3], vec![0, 1, 2]],
        12 => vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
        20 => vec![vec![1], vec![3], vec![0, 1, 2, 3]],
        28 => vec![vec![0, 1, 4], vec![2, 3, 6, 7], vec![0, 4, 5]],
        _ => return None,
    };
    Some((2u64.pow(conjecture_modulus(disc).v2), rows))
}

/// Observed residue sets modulo 3; None means no obstruction at 3.
pub fn table_row_3(disc: &Disc) -> Option<(u64, Vec<Vec<u64>>)> {
    match disc.delta().rem_euclid(12) {
        5 | 8 => Some((3, vec![vec![0, 1], vec![0, 2]])),
        _ => None,
    }
}

/// Reduce a residue set modulo `from` to residues modulo `to` (to | from).
pub fn project(set: &BTreeSet<u64>, from: u64, to: u64) -> BTreeSet<u64> {
    debug_assert!(from.is_multiple_of(to));
    set.iter().map(|r| r % to).collect()
}

/// Whether an observed residue set modulo `modulus` is consistent with the
/// tables. A prime with a listed row must be resolved by the modulus and its
/// projection must equal one of the alternatives. A prime without an
/// obstruction is checked only when the modulus is divisible by it, and then
/// every class modulo that prime must appear.
pub fn table_membership(disc: &Disc, modulus: u64, observed: &BTreeSet<u64>) -> Result<bool, CurvlabError> {
    if modulus == 0 {
        return Err(CurvlabError::BadModulus);
    }
    let mut ok = true;
    for (p, row) in [(2u64, table_row_2(disc)), (3, table_row_3(disc))] {
        match row {
            Some((need, alts)) => {
                if !modulus.is_multiple_of(need) {
                    return Err(CurvlabError::Unresolved { disc: disc.delta(), modulus, need });
                }
                let s = project(observed, modulus, need);
                ok &= alts.iter().any(|a| a.iter().copied().collect::<BTreeSet<u64>>() == s);
            }
            None => {
                if modulus.is_multiple_of(p) {
                    ok &= project(observed, modulus, p).len() as u64 == p;
                }
            }
        }
    }
    Ok(ok)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueReport {
    pub disc: Disc,
    pub packing_id: String,
    pub modulus: u64,
    pub observed: BTreeSet<u64>,
    pub bound: u64,
    /// counts[r] is the number of circles with n ≡ r.
    pub counts: Vec<u64>,
}

impl ResidueReport {
    pub fn to_json(&self) -> Value {
        json!({
            "disc": self.disc.delta(),
            "packing": self.packing_id,
            "modulus": self.modulus,
            "bound": self.bound,
            "observed": self.observed.iter().collect::<Vec<_>>(),
            "counts": self.counts,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("residue,count\n");
        for (r, c) in self.counts.iter().enumerate() {
            s.push_str(&format!("{r},{c}\n"));
        }
        s
    }
}

/// Histogram of reduced curvatures modulo `modulus`. Circles are taken once
/// per point set; the curvature keeps the orientation the packing gave it.
pub fn residue_census(
    circles: &[OrientedCircle],
    modulus: u64,
    packing_id: &str,
    bound: u64,
) -> Result<ResidueReport, CurvlabError> {
    if modulus == 0 {
        return Err(CurvlabError::BadModulus);
    }
    let disc = match circles.first() {
        Some(c) => c.disc,
        None => Disc::new(-4).expect("valid"),
    };
    let mut seen = BTreeSet::new();
    let unique: Vec<&OrientedCircle> = circles.iter().filter(|c| seen.insert(c.unoriented())).collect();
    let m = BigInt::from(modulus);
    let counts = unique
        .par_chunks(4096)
        .map(|chunk| {
            let mut h = vec![0u64; modulus as usize];
            for c in chunk {
                let r = c.n.mod_floor(&m).to_usize().expect("residue fits");
                h[r] += 1;
            }
            h
        })
        .reduce(
            || vec![0u64; modulus as usize],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    let observed = (0..modulus).filter(|&r| counts[r as usize] > 0).collect();
    Ok(ResidueReport { disc, packing_id: packing_id.to_string(), modulus, observed, bound, counts })
}

/// Census of a fundamental packing at bound B.
pub fn packing_census(
    disc: Disc,
    kind: PackingKind,
    modulus: u64,
    bound: u64,
    saturate: bool,
) -> Result<ResidueReport, CurvlabError> {
    let src = PackingSource::fundamental(disc, kind);
    let opts = PackingOptions { saturate, ..PackingOptions::new(bound) };
    let p = generate_packing(&src, &opts)?;
    residue_census(&p.circles, modulus, &p.id, bound)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Saturation {
    pub at_bound: ResidueReport,
    pub at_double: ResidueReport,
}

impl Saturation {
    pub fn stable(&self) -> bool {
        self.at_bound.observed == self.at_double.observed
    }
}

/// Residue sets of a fundamental packing at B and at 2B.
pub fn saturation_check(disc: Disc, kind: PackingKind, modulus: u64, bound: u64) -> Result<Saturation, CurvlabError> {
    Ok(Saturation {
        at_bound: packing_census(disc, kind, modulus, bound, false)?,
        at_double: packing_census(disc, kind, modulus, bound.saturating_mul(2), false)?,
    })
}

/// Norm of the denominator ideal {b ∈ O_K : b·z ∈ O_K} of a point of K;
/// zero for ∞. For z = α/β with (α, β) = O_K this is N(β).
pub fn denominator_norm(disc: &Disc, z: &KPoint) -> BigInt {
    let z = match z {
        KPoint::Infinity => return BigInt::zero(),
        KPoint::Finite(z) => z,
    };
    // Columns: coordinates of z·1 and z·τ in the basis {1, τ}.
    let tau = disc.tau().to_knum();
    let cols = [z.clone(), z.mul(disc, &tau)];
    let d = cols.iter().fold(BigInt::from(1), |acc, c| acc.lcm(c.x.denom()).lcm(c.y.denom()));
    let ent = |q: &num_rational::BigRational| (q * num_rational::BigRational::from_integer(d.clone())).to_integer();
    // b·z ∈ O_K iff N·b ≡ 0 (mod d); the index of that sublattice is
    // d² / covol(⟨columns of N⟩ + dZ²).
    let gens = [
        [ent(&cols[0].x), ent(&cols[0].y)],
        [ent(&cols[1].x), ent(&cols[1].y)],
        [d.clone(), BigInt::zero()],
        [BigInt::zero(), d.clone()],
    ];
    let mut g = BigInt::zero();
    for i in 0..4 {
        for j in i + 1..4 {
            g = g.gcd(&(&gens[i][0] * &gens[j][1] - &gens[i][1] * &gens[j][0]));
        }
    }
    &d * &d / g
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Primitivity {
    pub gcd: BigInt,
    pub pairs_checked: usize,
    /// Tangent pairs where |n₁ + n₂| differs from the norm of the
    /// denominator of their common point.
    pub identity_failures: usize,
}

/// gcd of the reduced curvatures, with the tangency sum identity checked on
/// the externally tangent pairs among the `pair_limit` smallest circles.
pub fn primitivity(circles: &[OrientedCircle], pair_limit: usize) -> Result<Primitivity, CurvlabError> {
    if circles.len() < 2 {
        return Err(CurvlabError::TooFewCircles(circles.len()));
    }
    let gcd = circles.iter().fold(BigInt::zero(), |g, c| g.gcd(&c.n));
    let mut small: Vec<OrientedCircle> = circles.to_vec();
    small.sort();
    small.truncate(pair_limit);
    let pairs = external_tangencies(&small);
    let failures = pairs
        .par_iter()
        .filter(|&&(i, j)| match small[i].tangency_point(&small[j]) {
            Ok(x) => (&small[i].n + &small[j].n).abs() != denominator_norm(&small[i].disc, &x),
            Err(_) => true,
        })
        .count();
    Ok(Primitivity { gcd, pairs_checked: pairs.len(), identity_failures: failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qint::KNum;

    fn d(x: i64) -> Disc {
        Disc::new(x).unwrap()
    }

    #[test]
    fn moduli() {
        assert_eq!(conjecture_modulus(&d(-4)), ConjectureModulus { v2: 3, v3: 1, m: 24 });
        assert_eq!(conjecture_modulus(&d(-8)).m, 4);
        assert_eq!(conjecture_modulus(&d(-19)), ConjectureModulus { v2: 0, v3: 1, m: 3 });
        assert_eq!(conjecture_modulus(&d(-23)).m, 1);
    }

    #[test]
    fn membership_examples() {
        let s = |v: &[u64]| v.iter().copied().collect::<BTreeSet<u64>>();
        assert!(table_membership(&d(-8), 4, &s(&[0, 2, 3])).unwrap());
        assert!(!table_membership(&d(-8), 4, &s(&[1])).unwrap());
        assert!(table_membership(&d(-19), 3, &s(&[0, 2])).unwrap());
        assert!(matches!(table_membership(&d(-4), 4, &s(&[0, 1])), Err(CurvlabError::Unresolved { .. })));
        assert!(!table_membership(&d(-23), 6, &s(&[0, 2, 4])).unwrap());
    }

    #[test]
    fn denominators() {
        let k = d(-7);
        assert_eq!(denominator_norm(&k, &KPoint::Finite(KNum::from_ints(3, 0))), BigInt::from(1));
        assert_eq!(denominator_norm(&k, &KPoint::rational(1, 2)), BigInt::from(4));
        // 1/τ for τ² = τ − 2 has denominator τ of norm 2.
        let inv = k.tau().to_knum().inv(&k).unwrap();
        assert_eq!(denominator_norm(&k, &KPoint::Finite(inv)), BigInt::from(2));
    }

    #[test]
    fn census_modulus_one() {
        let k = d(-8);
        let c = vec![OrientedCircle::real_line(k), OrientedCircle::from_ints(k, 1, 0, (1, 0)).unwrap()];
        let r = residue_census(&c, 1, "t", 1).unwrap();
        assert_eq!(r.observed, [0].into_iter().collect());
        assert_eq!(r.counts, vec![2]);
    }
}

//! Tabulated matrices: base clusters, Gram matrices and generator lists.
//!
//! Cluster coordinate matrices are stored with rows (b′, b, r, m). The first
//! three rows are tabulated as multiples of a surd unit; `eta_divisor` records
//! how that unit relates to η = √|Δ| (tabulated value p means p·η/eta_divisor).

use num_rational::BigRational;

use crate::circle::MobiusMap;
use crate::mat::{self, QMat};
use crate::qint::{Disc, OKElem};

/// Parse "a b c; d e f" with entries like -3, 5/2.
pub fn parse(s: &str) -> QMat {
    s.split(';')
        .map(|row| {
            row.split_whitespace()
                .map(|e| match e.split_once('/') {
                    Some((n, d)) => {
                        BigRational::new(n.parse::<i64>().unwrap().into(), d.parse::<i64>().unwrap().into())
                    }
                    None => BigRational::from_integer(e.parse::<i64>().unwrap().into()),
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct TabulatedCluster {
    pub matrix: QMat,
    pub eta_divisor: i64,
}

impl TabulatedCluster {
    /// Rows as multiples of η (first three) and plain m.
    pub fn eta_coefficients(&self) -> QMat {
        let d = mat::q(self.eta_divisor);
        self.matrix
            .iter()
            .enumerate()
            .map(|(i, r)| r.iter().map(|x| if i < 3 { x / &d } else { x.clone() }).collect())
            .collect()
    }
}

pub const DESCARTES_R: &str = "1 -1 -1 -1; -1 1 -1 -1; -1 -1 1 -1; -1 -1 -1 1";

pub fn qi_base() -> TabulatedCluster {
    TabulatedCluster { matrix: parse("0 0 2 2; 0 2 0 2; 0 0 0 2; -1 1 1 1"), eta_divisor: 2 }
}

pub const QI_GENS: [&str; 4] = [
    "-1 0 0 0; 2 1 0 0; 2 0 1 0; 2 0 0 1",
    "1 2 0 0; 0 -1 0 0; 0 2 1 0; 0 2 0 1",
    "1 0 2 0; 0 1 2 0; 0 0 -1 0; 0 0 2 1",
    "1 0 0 2; 0 1 0 2; 0 0 1 2; 0 0 0 -1",
];

type Coords = [[(i64, i64); 2]; 2];

pub const QI_MOB: [Coords; 4] = [
    [[(1, 2), (-2, 0)], [(2, 0), (-1, 2)]],
    [[(-1, 0), (2, 0)], [(0, 0), (1, 0)]],
    [[(1, 0), (0, 0)], [(2, 0), (-1, 0)]],
    [[(-1, 0), (0, 0)], [(0, 0), (1, 0)]],
];

/// Eight cube circles, b′, b, r in units of √2 = η/2.
pub fn cube_base() -> TabulatedCluster {
    TabulatedCluster {
        matrix: parse("0 0 2 2 4 4 2 2; 0 2 4 2 4 2 0 2; 0 0 2 2 2 2 0 0; -1 1 3 1 5 3 1 3"),
        eta_divisor: 2,
    }
}

pub const CUBE_GRAM: &str = "1 -1 -3 -1 -5 -3 -1 -3; -1 1 -1 -3 -3 -5 -3 -1; -3 -1 1 -1 -1 -3 -5 -3; \
     -1 -3 -1 1 -3 -1 -3 -5; -5 -3 -1 -3 1 -1 -3 -1; -3 -5 -3 -1 -1 1 -1 -3; -1 -3 -5 -3 -3 -1 1 -1; \
     -3 -1 -3 -5 -1 -3 -1 1";

pub const CUBICLE_GRAM: &str = "1 -3 -3 -3; -3 1 -3 -3; -3 -3 1 -3; -3 -3 -3 1";

/// Cube circle indices (0-based) forming the cubicle used as columns.
pub const CUBICLE: [usize; 4] = [0, 2, 5, 7];

pub const CUBE_GENS: [&str; 6] = [
    "1 0 3 3; 0 1 3 3; 0 0 0 -1; 0 0 -1 0",
    "1 3 0 3; 0 0 0 -1; 0 3 1 3; 0 -1 0 0",
    "0 0 0 -1; 3 1 0 3; 3 0 1 3; -1 0 0 0",
    "1 3 3 0; 0 0 -1 0; 0 -1 0 0; 0 3 3 1",
    "0 0 -1 0; 3 1 3 0; -1 0 0 0; 3 0 3 1",
    "0 -1 0 0; -1 0 0 0; 3 3 1 0; 3 3 0 1",
];

pub const CUBE_MOB: [Coords; 6] = [
    [[(1, 0), (0, 0)], [(2, 0), (-1, 0)]],
    [[(-1, 0), (2, 0)], [(0, 0), (1, 0)]],
    [[(3, 2), (-4, 0)], [(4, 0), (-3, 2)]],
    [[(-1, 0), (0, 0)], [(0, 0), (1, 0)]],
    [[(1, 2), (-2, 0)], [(4, 0), (-1, 2)]],
    [[(1, 2), (-4, 0)], [(2, 0), (-1, 2)]],
];

pub fn tent7_base() -> TabulatedCluster {
    TabulatedCluster { matrix: parse("0 0 1 1 1; 1 0 1 1 0; 0 0 1 1/2 0; 1 -1 1 5/2 1"), eta_divisor: 1 }
}

pub const TENT7_GRAM5: &str =
    "1 -1 -5/2 -1 -5/2; -1 1 -1 -5/2 -1; -5/2 -1 1 -1 -5/2; -1 -5/2 -1 1 -1; -5/2 -1 -5/2 -1 1";

pub const TENT7_R: &str = "1 -1 -5/2 -1; -1 1 -1 -5/2; -5/2 -1 1 -1; -1 -5/2 -1 1";

pub const TENT7_GENS: [&str; 3] = [
    "0 1 0 0; 1 0 0 0; 0 0 0 1; 0 0 1 0",
    "-2 0 0 -1; 3 0 1 2; 0 1 0 -1; 3 0 0 2",
    "0 -1 0 1; 0 2 3 0; 0 -1 -2 0; 1 2 3 0",
];

/// Tabulated peak-swap maps for Q(√−7), no conjugation.
pub const TENT7_MOB_TABULATED: [Coords; 3] = [
    [[(0, 1), (1, -1)], [(1, 1), (0, -1)]],
    [[(-1, 0), (1, 1)], [(0, 0), (1, 0)]],
    [[(1, 0), (0, 0)], [(1, -1), (-1, 0)]],
];

/// Maps realising the tabulated algebraic generators in order.
pub const TENT7_MOB: [Coords; 3] = [
    [[(-1, 0), (0, 0)], [(-2, 1), (1, 0)]],
    [[(-1, 1), (2, -1)], [(0, 1), (1, -1)]],
    [[(-1, 0), (0, 1)], [(0, 0), (1, 0)]],
];

pub fn tent11_base() -> TabulatedCluster {
    TabulatedCluster {
        matrix: parse(
            "0 0 1 2 2 1 2 2 3 1; 0 1 2 3 2 1 1 2 2 0; 0 0 1/2 3/2 3/2 1 1/2 1/2 3/2 0; \
             -1 1 9/2 13/2 9/2 1 9/2 13/2 13/2 1",
        ),
        eta_divisor: 1,
    }
}

pub const TENT11_GRAM10: &str = "1 -1 -9/2 -13/2 -9/2 -1 -9/2 -13/2 -13/2 -1; \
     -1 1 -1 -9/2 -13/2 -9/2 -13/2 -9/2 -10 -9/2; \
     -9/2 -1 1 -1 -9/2 -13/2 -9/2 -1 -13/2 -13/2; \
     -13/2 -9/2 -1 1 -1 -9/2 -13/2 -9/2 -9/2 -10; \
     -9/2 -13/2 -9/2 -1 1 -1 -9/2 -13/2 -1 -13/2; \
     -1 -9/2 -13/2 -9/2 -1 1 -13/2 -10 -9/2 -9/2; \
     -9/2 -13/2 -9/2 -13/2 -9/2 -13/2 1 -1 -1 -1; \
     -13/2 -9/2 -1 -9/2 -13/2 -10 -1 1 -9/2 -9/2; \
     -13/2 -10 -13/2 -9/2 -1 -9/2 -1 -9/2 1 -9/2; \
     -1 -9/2 -13/2 -10 -13/2 -9/2 -1 -9/2 -9/2 1";

/// Tent columns as pairs of circle indices (0-based): v1+v4, v1+v8, v1+v9, v3+v9.
pub const TENT11_COLUMNS: [(usize, usize); 4] = [(0, 3), (0, 7), (0, 8), (2, 8)];

/// Gram matrix of the four tent columns (computed from the tabulated tent).
pub const TENT11_R: &str = "-11 -33/2 -33/2 -33/2; -33/2 -11 -33/2 -33/2; -33/2 -33/2 -11 -33/2; -33/2 -33/2 -33/2 -11";

pub const TENT11_GENS: [&str; 4] = [
    "1 3 3 3; 0 -1 0 0; 0 0 -1 0; 0 0 0 -1",
    "-1 0 0 0; 3 1 3 3; 0 0 -1 0; 0 0 0 -1",
    "-1 0 0 0; 0 -1 0 0; 3 3 1 3; 0 0 0 -1",
    "-1 0 0 0; 0 -1 0 0; 0 0 -1 0; 3 3 3 1",
];

pub const TENT11_MOB: [Coords; 4] = [
    [[(1, 1), (-2, 0)], [(3, 0), (-2, 1)]],
    [[(0, 1), (-2, 0)], [(2, 0), (-1, 1)]],
    [[(1, 1), (-3, 0)], [(2, 0), (-2, 1)]],
    [[(1, 2), (-4, 0)], [(4, 0), (-3, 2)]],
];

/// W_D⁰ (Δ ≡ 0 mod 4), entries of the first three rows in units of η.
pub fn wd0() -> TabulatedCluster {
    TabulatedCluster { matrix: parse("0 0 1 1; 0 1 0 1; 0 0 0 1; -1 1 1 1"), eta_divisor: 1 }
}

/// W_D¹ (Δ ≡ 1 mod 4).
pub fn wd1() -> TabulatedCluster {
    TabulatedCluster { matrix: parse("0 1 0 0; 0 0 1 0; 0 1/2 1/2 -1/2; -1 1/2 1/2 1/2"), eta_divisor: 1 }
}

/// W_D⁰ = W_D¹·S.
pub const S_CHANGE: &str = "1 0 0 0; 0 0 1 1; 0 1 0 1; 0 1 1 0";

pub fn r0(delta: i64) -> QMat {
    let h = mat::qfrac(delta, 2);
    let o = mat::q(1);
    let m = mat::q(-1);
    let a = &o + &h;
    vec![
        vec![o.clone(), m.clone(), m.clone(), m.clone()],
        vec![m.clone(), o.clone(), a.clone(), a.clone()],
        vec![m.clone(), a.clone(), o.clone(), a.clone()],
        vec![m, a.clone(), a, o],
    ]
}

pub fn r1(delta: i64) -> QMat {
    let o = mat::q(1);
    let mh = mat::qfrac(-1, 2);
    let dg = mat::qfrac(1 - delta, 4);
    let off = mat::qfrac(1 + delta, 4);
    vec![
        vec![o, mh.clone(), mh.clone(), mh.clone()],
        vec![mh.clone(), dg.clone(), off.clone(), off.clone()],
        vec![mh.clone(), off.clone(), dg.clone(), off.clone()],
        vec![mh, off.clone(), off, dg],
    ]
}

pub const KGENS0_S: [&str; 3] = [
    "1 2 0 0; 0 -1 0 0; 0 2 0 1; 0 2 1 0",
    "1 0 2 0; 0 0 2 1; 0 0 -1 0; 0 1 2 0",
    "1 0 0 2; 0 0 1 2; 0 1 0 2; 0 0 0 -1",
];

pub const KGENS1_S: [&str; 3] = [
    "1 -1 1 1; 0 -1 2 2; 0 0 0 1; 0 0 1 0",
    "1 1 -1 1; 0 0 0 1; 0 2 -1 2; 0 1 0 0",
    "1 1 1 -1; 0 0 1 0; 0 1 0 0; 0 2 2 -1",
];

/// The fourth matrix as tabulated for Δ ≡ 0 (mod 4).
pub fn kgens0_r_tabulated(delta: i64) -> QMat {
    let a = mat::q(1) + mat::qfrac(delta, 4);
    let (z, o) = (mat::q(0), mat::q(1));
    vec![
        vec![z.clone(), a.clone(), o.clone(), a.clone()],
        vec![z.clone(), o.clone(), z.clone(), z.clone()],
        vec![o.clone(), -a.clone(), z.clone(), -a],
        vec![z.clone(), z.clone(), z, o],
    ]
}

/// The fourth matrix as tabulated for Δ ≡ 1 (mod 4).
pub fn kgens1_r_tabulated(delta: i64) -> QMat {
    let p = mat::qfrac(delta + 3, 4);
    let m = mat::qfrac(delta - 1, 4);
    let (z, o) = (mat::q(0), mat::q(1));
    vec![
        vec![z.clone(), o.clone(), p.clone(), z.clone()],
        vec![o.clone(), o.clone(), -m, -o.clone()],
        vec![z.clone(), z.clone(), o.clone(), z.clone()],
        vec![o, z.clone(), -p, z],
    ]
}

/// γ₁, γ₂, γ₃ and the fourth map [[1, 1 − τ], [0, −1]].
pub const SIXMOB: [Coords; 4] = [
    [[(-1, 0), (2, 0)], [(-1, 0), (1, 0)]],
    [[(1, 0), (-1, 0)], [(2, 0), (-1, 0)]],
    [[(0, 0), (1, 0)], [(-1, 0), (0, 0)]],
    [[(1, 0), (1, -1)], [(0, 0), (-1, 0)]],
];

/// R̂ is sent to the base K-cluster circles by these maps.
pub const KBASE_MAPS: [Coords; 4] = [
    [[(1, 0), (0, 0)], [(0, 0), (1, 0)]],
    [[(-1, 0), (0, 1)], [(0, 0), (1, 0)]],
    [[(0, 0), (-1, 0)], [(-1, 0), (-1, 1)]],
    [[(1, 0), (1, -1)], [(1, 0), (0, -1)]],
];

pub fn mobius(disc: Disc, c: &Coords, conj: bool) -> MobiusMap {
    MobiusMap::from_coords(disc, *c, conj).expect("tabulated map has unit determinant")
}

pub fn okelem(p: (i64, i64)) -> OKElem {
    OKElem::new(p.0, p.1)
}

/// Topograph generators γ₁, γ₂, γ₃ and ρ₁, ρ₂, ρ₃ as integer matrices.
pub const GAMMA: [[[i64; 2]; 2]; 3] = [[[-1, 2], [-1, 1]], [[1, -1], [2, -1]], [[0, 1], [-1, 0]]];
pub const RHO: [[[i64; 2]; 2]; 3] = [[[-1, 0], [0, 1]], [[-1, 2], [0, 1]], [[-1, 0], [2, 1]]];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_fracs() {
        let m = parse("1 -5/2; 0 3");
        assert_eq!(m[0][1], mat::qfrac(-5, 2));
        assert_eq!(m.len(), 2);
    }

    #[test]
    fn change_of_variables() {
        for d in [-15i64, -19, -23] {
            let s = parse(S_CHANGE);
            let lhs = mat::mul(&mat::mul(&mat::transpose(&s), &r1(d)), &s);
            assert_eq!(lhs, r0(d));
        }
        let s = parse(S_CHANGE);
        assert_eq!(mat::mul(&wd1().matrix, &s), wd0().matrix);
    }
}

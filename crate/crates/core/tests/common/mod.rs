//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's arithmetic.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use kapollo::circle::MobiusMap;
use kapollo::qint::{Disc, OKElem};

pub const DISCS: [i64; 9] = [-4, -8, -7, -11, -15, -19, -20, -23, -24];

/// u + vτ as a pair, with τ² = ετ + (Δ − ε)/4.
pub fn mul(delta: i64, x: (i64, i64), y: (i64, i64)) -> (i64, i64) {
    let eps = delta.rem_euclid(4);
    let c = (delta - eps) / 4;
    let vv = x.1 * y.1;
    (x.0 * y.0 + c * vv, x.0 * y.1 + x.1 * y.0 + eps * vv)
}

pub fn conj(delta: i64, x: (i64, i64)) -> (i64, i64) {
    let eps = delta.rem_euclid(4);
    (x.0 + eps * x.1, -x.1)
}

pub fn norm(delta: i64, x: (i64, i64)) -> i64 {
    mul(delta, x, conj(delta, x)).0
}

/// x / y when it lies in O_K.
pub fn div_exact(delta: i64, x: (i64, i64), y: (i64, i64)) -> Option<(i64, i64)> {
    let n = norm(delta, y);
    if n == 0 {
        return None;
    }
    let t = mul(delta, x, conj(delta, y));
    (t.0 % n == 0 && t.1 % n == 0).then(|| (t.0 / n, t.1 / n))
}

/// Some (γ, δ) with coordinates in [−r, r] and αδ − βγ = 1.
pub fn brute_bezout(delta: i64, a: (i64, i64), b: (i64, i64), r: i64) -> Option<((i64, i64), (i64, i64))> {
    for g0 in -r..=r {
        for g1 in -r..=r {
            let g = (g0, g1);
            let bg = mul(delta, b, g);
            if let Some(d) = div_exact(delta, (1 + bg.0, bg.1), a) {
                if d.0.abs() <= r && d.1.abs() <= r {
                    return Some((g, d));
                }
            }
        }
    }
    None
}

/// A Möbius map built as a word in z ↦ z + 1, z ↦ z + τ, z ↦ −1/z and
/// complex conjugation.
pub fn mobius_word(disc: Disc, word: &[u8]) -> MobiusMap {
    let gens = [
        MobiusMap::translation(disc, OKElem::new(1, 0)),
        MobiusMap::translation(disc, OKElem::new(0, 1)),
        MobiusMap::from_ints(disc, [[0, -1], [1, 0]], false).unwrap(),
        MobiusMap::from_ints(disc, [[1, 0], [0, 1]], true).unwrap(),
        MobiusMap::translation(disc, OKElem::new(-1, 0)),
    ];
    word.iter().fold(MobiusMap::identity(disc), |m, &i| m.compose(&gens[i as usize % gens.len()]))
}

/// A circle of a Q(i) strip packing in real coordinates: curvature b and
/// a = b·centre for circles, the unit normal for lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Disk {
    pub b: i64,
    pub a: (i64, i64),
}

impl Disk {
    fn shifted(&self, t: i64) -> Disk {
        Disk { b: self.b, a: (self.a.0 + self.b * t, self.a.1) }
    }

    /// Translate so the centre has real part in [0, 1).
    pub fn canonical(&self) -> Disk {
        if self.b == 0 {
            return *self;
        }
        self.shifted(-self.a.0.div_euclid(self.b))
    }
}

fn complex_sq(z: (i64, i64)) -> (i64, i64) {
    (z.0 * z.0 - z.1 * z.1, 2 * z.0 * z.1)
}

/// Both Descartes relations: (Σb)² = 2Σb² and (Σa)² = 2Σa².
pub fn descartes_holds(q: &[Disk; 4]) -> bool {
    let sb: i64 = q.iter().map(|d| d.b).sum();
    let sb2: i64 = q.iter().map(|d| d.b * d.b).sum();
    let sa = q.iter().fold((0, 0), |s, d| (s.0 + d.a.0, s.1 + d.a.1));
    let sa2 = q.iter().fold((0, 0), |s, d| {
        let x = complex_sq(d.a);
        (s.0 + x.0, s.1 + x.1)
    });
    let l = complex_sq(sa);
    sb * sb == 2 * sb2 && l == (2 * sa2.0, 2 * sa2.1)
}

fn quad_key(q: &[Disk; 4]) -> Vec<Disk> {
    let mut best: Option<Vec<Disk>> = None;
    for d in q.iter().filter(|d| d.b != 0) {
        let t = -d.a.0.div_euclid(d.b);
        let mut k: Vec<Disk> = q.iter().map(|x| x.shifted(t)).collect();
        k.sort();
        if best.as_ref().is_none_or(|b| k < *b) {
            best = Some(k);
        }
    }
    best.unwrap_or_else(|| {
        let mut k = q.to_vec();
        k.sort();
        k
    })
}

pub struct Soddy {
    /// Reduced curvature (b/2) of each circle with b ≤ 2·bound, one entry
    /// per circle modulo translation by 1.
    pub curvatures: BTreeMap<i64, usize>,
    pub quadruples: usize,
    pub all_descartes: bool,
}

/// BFS over Descartes quadruples of the strip packing bounded by the lines
/// Im z = 0 and Im z = 1, using d′ = 2(a + b + c) − d on curvatures and on
/// curvature-centres, modulo horizontal translation.
pub fn soddy_strip(bound: i64) -> Soddy {
    let start =
        [Disk { b: 0, a: (0, 1) }, Disk { b: 0, a: (0, -1) }, Disk { b: 2, a: (0, 1) }, Disk { b: 2, a: (2, 1) }];
    let mut seen = BTreeSet::new();
    let mut circles = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(quad_key(&start));
    queue.push_back(start);
    let mut all_descartes = true;
    while let Some(q) = queue.pop_front() {
        all_descartes &= descartes_holds(&q);
        for d in &q {
            if d.b <= 2 * bound {
                circles.insert(d.canonical());
            }
        }
        for i in 0..4 {
            let others = (0..4).filter(|&j| j != i);
            let b = 2 * others.clone().map(|j| q[j].b).sum::<i64>() - q[i].b;
            let a0 = 2 * others.clone().map(|j| q[j].a.0).sum::<i64>() - q[i].a.0;
            let a1 = 2 * others.map(|j| q[j].a.1).sum::<i64>() - q[i].a.1;
            if b > 2 * bound {
                continue;
            }
            let mut next = q;
            next[i] = Disk { b, a: (a0, a1) };
            if seen.insert(quad_key(&next)) {
                queue.push_back(next);
            }
        }
    }
    let mut curvatures = BTreeMap::new();
    for c in &circles {
        *curvatures.entry(c.b / 2).or_insert(0) += 1;
    }
    Soddy { curvatures, quadruples: seen.len(), all_descartes }
}

//! Oriented K-Bianchi circles, Möbius maps over O_K, the Pedoe embedding
//! into Minkowski space and the exceptional isomorphism ρ.
//!
//! A circle is stored as (n, n′, w): curvature n√|Δ|, co-curvature n′√|Δ|
//! and curvature-centre i·w, with n·n′·|Δ| = N(w) − 1. Its Hermitian matrix
//! scaled by |Δ|/√|Δ| is H = [[n′|Δ|, w·s], [conj(w·s), n|Δ|]] with s = √Δ,
//! which has entries in O_K, so the Möbius action g·H·g† is integral.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::qint::{int, Disc, ExtRat, KNum, KPoint, OKElem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircleError {
    #[error("determinant {0} is not a unit")]
    NonUnitDet(String),
    #[error("circles are not tangent (2<C1,C2> = {0})")]
    NotTangent(String),
    #[error("the two circles coincide as point sets")]
    SameCircle,
    #[error("datum violates n n' |D| = N(w) - 1")]
    BadDatum,
    #[error("point is not on the circle")]
    NotOnCircle,
    #[error("circle has no witness matrix")]
    NoWitness,
    #[error("discriminants differ")]
    DiscMismatch,
}

/// z ↦ (a·z' + b)/(c·z' + d) with z' = z̄ when `conj` is set. Entries lie in
/// O_K and N(ad − bc) = 1; the matrix is normalised by a unit so equal maps
/// compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MobiusMap {
    pub disc: Disc,
    pub a: OKElem,
    pub b: OKElem,
    pub c: OKElem,
    pub d: OKElem,
    pub conj: bool,
}

impl MobiusMap {
    pub fn new(disc: Disc, a: OKElem, b: OKElem, c: OKElem, d: OKElem, conj: bool) -> Result<MobiusMap, CircleError> {
        let det = disc.mul(&a, &d) - disc.mul(&b, &c);
        if !disc.is_unit(&det) {
            return Err(CircleError::NonUnitDet(det.to_string()));
        }
        let mut m = MobiusMap { disc, a, b, c, d, conj };
        m.normalize();
        Ok(m)
    }

    /// Build from integer coordinate pairs [[a, b], [c, d]], each (u, v).
    pub fn from_coords(disc: Disc, e: [[(i64, i64); 2]; 2], conj: bool) -> Result<MobiusMap, CircleError> {
        let f = |p: (i64, i64)| OKElem::new(p.0, p.1);
        MobiusMap::new(disc, f(e[0][0]), f(e[0][1]), f(e[1][0]), f(e[1][1]), conj)
    }

    pub fn from_ints(disc: Disc, e: [[i64; 2]; 2], conj: bool) -> Result<MobiusMap, CircleError> {
        MobiusMap::from_coords(disc, [[(e[0][0], 0), (e[0][1], 0)], [(e[1][0], 0), (e[1][1], 0)]], conj)
    }

    pub fn identity(disc: Disc) -> MobiusMap {
        MobiusMap::from_ints(disc, [[1, 0], [0, 1]], false).unwrap()
    }

    /// V = [[1, τ], [0, −1]].
    pub fn v_map(disc: Disc) -> MobiusMap {
        MobiusMap::from_coords(disc, [[(1, 0), (0, 1)], [(0, 0), (-1, 0)]], false).unwrap()
    }

    pub fn translation(disc: Disc, t: OKElem) -> MobiusMap {
        MobiusMap::new(disc, disc.one(), t, disc.zero(), disc.one(), false).unwrap()
    }

    fn normalize(&mut self) {
        let first =
            [&self.a, &self.b, &self.c, &self.d].into_iter().find(|x| !x.is_zero()).cloned().expect("nonzero matrix");
        let best = self
            .disc
            .units()
            .into_iter()
            .max_by(|u1, u2| self.disc.mul(&first, u1).cmp(&self.disc.mul(&first, u2)))
            .unwrap();
        if best != self.disc.one() {
            let k = &self.disc;
            self.a = k.mul(&self.a, &best);
            self.b = k.mul(&self.b, &best);
            self.c = k.mul(&self.c, &best);
            self.d = k.mul(&self.d, &best);
        }
    }

    pub fn det(&self) -> OKElem {
        self.disc.mul(&self.a, &self.d) - self.disc.mul(&self.b, &self.c)
    }

    fn entries_conj(&self) -> [OKElem; 4] {
        let k = &self.disc;
        [k.conj(&self.a), k.conj(&self.b), k.conj(&self.c), k.conj(&self.d)]
    }

    /// self ∘ other.
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        let k = &self.disc;
        let [oa, ob, oc, od] = if self.conj {
            other.entries_conj()
        } else {
            [other.a.clone(), other.b.clone(), other.c.clone(), other.d.clone()]
        };
        MobiusMap::new(
            *k,
            k.mul(&self.a, &oa) + k.mul(&self.b, &oc),
            k.mul(&self.a, &ob) + k.mul(&self.b, &od),
            k.mul(&self.c, &oa) + k.mul(&self.d, &oc),
            k.mul(&self.c, &ob) + k.mul(&self.d, &od),
            self.conj ^ other.conj,
        )
        .expect("product of unit-determinant maps")
    }

    pub fn inverse(&self) -> MobiusMap {
        let k = &self.disc;
        let dinv = k.conj(&self.det());
        let (a, b, c, d) =
            (k.mul(&self.d, &dinv), -k.mul(&self.b, &dinv), -k.mul(&self.c, &dinv), k.mul(&self.a, &dinv));
        let m = MobiusMap::new(*k, a, b, c, d, false).unwrap();
        if self.conj {
            let [a, b, c, d] = m.entries_conj();
            MobiusMap::new(*k, a, b, c, d, true).unwrap()
        } else {
            m
        }
    }

    pub fn apply_point(&self, z: &KPoint) -> KPoint {
        let k = &self.disc;
        let z = if self.conj {
            match z {
                KPoint::Finite(x) => KPoint::Finite(x.conj(k)),
                KPoint::Infinity => KPoint::Infinity,
            }
        } else {
            z.clone()
        };
        let (x, y) = z.homogeneous();
        let num = k.mul(&self.a, &x) + k.mul(&self.b, &y);
        let den = k.mul(&self.c, &x) + k.mul(&self.d, &y);
        KPoint::from_ratio(k, &num, &den)
    }

    /// The image of R̂, with this map as witness.
    pub fn circle(&self) -> OrientedCircle {
        OrientedCircle::real_line(self.disc).apply(self)
    }
}

impl fmt::Display for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]{}", self.a, self.b, self.c, self.d, if self.conj { "∘conj" } else { "" })
    }
}

/// Scaled reduced coordinates (n′, n, v, 2m) of a vector of Minkowski space,
/// where the Pedoe vector is (n′η, nη, −vη/2, m) and η = √|Δ|. Linear
/// combinations of Pedoe vectors correspond to the same combinations here.
pub type RVec = [BigInt; 4];

/// Möbius action on an arbitrary vector in scaled reduced coordinates,
/// through the Hermitian matrix 2H, which has O_K entries when
/// 2m ≡ εv (mod 2). Returns None off that lattice.
pub fn apply_rvec(g: &MobiusMap, x: &RVec) -> Option<RVec> {
    let k = &g.disc;
    let e = BigInt::from(k.eps());
    let two_u = &x[3] - &e * &x[2];
    let a = BigInt::from(k.abs());
    let w2 = OKElem::from_big(two_u, BigInt::from(2) * &x[2]);
    let ws = k.mul(&w2, &k.sqrt_delta());
    let mut h = [
        [OKElem::from_big(BigInt::from(2) * &x[0] * &a, BigInt::zero()), ws.clone()],
        [k.conj(&ws), OKElem::from_big(BigInt::from(2) * &x[1] * &a, BigInt::zero())],
    ];
    if g.conj {
        for row in h.iter_mut() {
            for e in row.iter_mut() {
                *e = k.conj(e);
            }
        }
    }
    let m = [[&g.a, &g.b], [&g.c, &g.d]];
    let mut mh: [[OKElem; 2]; 2] = Default::default();
    for i in 0..2 {
        for j in 0..2 {
            mh[i][j] = k.mul(m[i][0], &h[0][j]) + k.mul(m[i][1], &h[1][j]);
        }
    }
    let ent = |i: usize, j: usize| k.mul(&mh[i][0], &k.conj(m[j][0])) + k.mul(&mh[i][1], &k.conj(m[j][1]));
    let two_a = BigInt::from(2) * &a;
    let (h00, h11) = (ent(0, 0), ent(1, 1));
    let p = k.mul(&ent(0, 1), &k.conj(&k.sqrt_delta()));
    if !h00.u.is_multiple_of(&two_a)
        || !h11.u.is_multiple_of(&two_a)
        || !p.u.is_multiple_of(&a)
        || !p.v.is_multiple_of(&two_a)
    {
        return None;
    }
    let v = &p.v / &two_a;
    let m2 = &p.u / &a + &e * &v;
    Some([&h00.u / &two_a, &h11.u / &two_a, v, m2])
}

/// 4·⟨x, y⟩ in scaled reduced coordinates (integral).
pub fn gram4(disc: &Disc, x: &RVec, y: &RVec) -> BigInt {
    let a = BigInt::from(disc.abs());
    -BigInt::from(2) * &a * (&x[0] * &y[1] + &x[1] * &y[0]) + &a * &x[2] * &y[2] + &x[3] * &y[3]
}

#[derive(Debug, Clone)]
pub struct OrientedCircle {
    pub disc: Disc,
    pub n: BigInt,
    pub nprime: BigInt,
    pub w: OKElem,
    pub witness: Option<MobiusMap>,
}

impl PartialEq for OrientedCircle {
    fn eq(&self, o: &Self) -> bool {
        self.disc == o.disc && self.n == o.n && self.nprime == o.nprime && self.w == o.w
    }
}
impl Eq for OrientedCircle {}
impl Hash for OrientedCircle {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.disc.hash(h);
        self.n.hash(h);
        self.nprime.hash(h);
        self.w.hash(h);
    }
}
impl PartialOrd for OrientedCircle {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for OrientedCircle {
    /// Output order (|n|, n, u, v, n′).
    fn cmp(&self, o: &Self) -> Ordering {
        self.disc
            .cmp(&o.disc)
            .then(self.n.abs().cmp(&o.n.abs()))
            .then(self.n.cmp(&o.n))
            .then(self.w.u.cmp(&o.w.u))
            .then(self.w.v.cmp(&o.w.v))
            .then(self.nprime.cmp(&o.nprime))
    }
}

impl fmt::Display for OrientedCircle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, n'={}, w={})", self.n, self.nprime, self.w)
    }
}

impl OrientedCircle {
    pub fn new(disc: Disc, n: BigInt, nprime: BigInt, w: OKElem) -> Result<OrientedCircle, CircleError> {
        let c = OrientedCircle { disc, n, nprime, w, witness: None };
        if c.invariant_holds() {
            Ok(c)
        } else {
            Err(CircleError::BadDatum)
        }
    }

    pub fn from_ints(disc: Disc, n: i64, nprime: i64, w: (i64, i64)) -> Result<OrientedCircle, CircleError> {
        OrientedCircle::new(disc, n.into(), nprime.into(), OKElem::new(w.0, w.1))
    }

    /// R̂ with its positive orientation (interior = upper half-plane).
    pub fn real_line(disc: Disc) -> OrientedCircle {
        OrientedCircle {
            disc,
            n: BigInt::zero(),
            nprime: BigInt::zero(),
            w: disc.one(),
            witness: Some(MobiusMap::identity(disc)),
        }
    }

    pub fn with_witness(mut self, m: MobiusMap) -> OrientedCircle {
        self.witness = Some(m);
        self
    }

    pub fn without_witness(&self) -> OrientedCircle {
        OrientedCircle { witness: None, ..self.clone() }
    }

    pub fn invariant_holds(&self) -> bool {
        &self.n * &self.nprime * BigInt::from(self.disc.abs()) == self.disc.norm(&self.w) - BigInt::one()
    }

    pub fn is_line(&self) -> bool {
        self.n.is_zero()
    }

    /// The same point set with the opposite orientation.
    pub fn reversed(&self) -> OrientedCircle {
        OrientedCircle {
            disc: self.disc,
            n: -&self.n,
            nprime: -&self.nprime,
            w: -&self.w,
            witness: self
                .witness
                .as_ref()
                .map(|m| m.compose(&MobiusMap::from_ints(m.disc, [[-1, 0], [0, 1]], false).unwrap())),
        }
    }

    /// Canonical representative of the unoriented circle.
    pub fn unoriented(&self) -> OrientedCircle {
        let r = self.reversed().without_witness();
        let s = self.without_witness();
        if r < s {
            r
        } else {
            s
        }
    }

    pub fn same_set(&self, o: &OrientedCircle) -> bool {
        self == o || self.reversed() == *o
    }

    pub fn rvec(&self) -> RVec {
        let e = BigInt::from(self.disc.eps());
        [self.nprime.clone(), self.n.clone(), self.w.v.clone(), BigInt::from(2) * &self.w.u + e * &self.w.v]
    }

    pub fn from_rvec(disc: Disc, x: &RVec) -> Result<OrientedCircle, CircleError> {
        let num = &x[3] - BigInt::from(disc.eps()) * &x[2];
        if num.is_odd() {
            return Err(CircleError::BadDatum);
        }
        OrientedCircle::new(disc, x[1].clone(), x[0].clone(), OKElem::from_big(num / 2, x[2].clone()))
    }

    fn hermitian(&self) -> [[OKElem; 2]; 2] {
        let k = &self.disc;
        let a = BigInt::from(k.abs());
        let ws = k.mul(&self.w, &k.sqrt_delta());
        [
            [OKElem::from_big(&self.nprime * &a, BigInt::zero()), ws.clone()],
            [k.conj(&ws), OKElem::from_big(&self.n * &a, BigInt::zero())],
        ]
    }

    /// g·C; the witness becomes g ∘ witness when present.
    pub fn apply(&self, g: &MobiusMap) -> OrientedCircle {
        let k = &self.disc;
        assert_eq!(*k, g.disc, "discriminants differ");
        let mut h = self.hermitian();
        if g.conj {
            for row in h.iter_mut() {
                for e in row.iter_mut() {
                    *e = k.conj(e);
                }
            }
        }
        let m = [[&g.a, &g.b], [&g.c, &g.d]];
        let mut mh: [[OKElem; 2]; 2] = Default::default();
        for i in 0..2 {
            for j in 0..2 {
                mh[i][j] = k.mul(m[i][0], &h[0][j]) + k.mul(m[i][1], &h[1][j]);
            }
        }
        // (M H M†)_{ij} = Σ_l (MH)_{il} conj(M_{jl})
        let e = |i: usize, j: usize| k.mul(&mh[i][0], &k.conj(m[j][0])) + k.mul(&mh[i][1], &k.conj(m[j][1]));
        let a = BigInt::from(k.abs());
        let h00 = e(0, 0);
        let h01 = e(0, 1);
        let h11 = e(1, 1);
        let p = k.mul(&h01, &k.conj(&k.sqrt_delta()));
        let out = OrientedCircle {
            disc: *k,
            n: h11.u.div_floor(&a),
            nprime: h00.u.div_floor(&a),
            w: OKElem::from_big(p.u / &a, p.v / &a),
            witness: self.witness.as_ref().map(|w| g.compose(w)),
        };
        debug_assert!(out.invariant_holds());
        out
    }

    /// 2·⟨C1, C2⟩ = Tr(w1·w̄2) − |Δ|(n1′n2 + n1n2′), an integer.
    pub fn pedoe2(&self, o: &OrientedCircle) -> BigInt {
        if let Some(v) = self.pedoe2_small(o) {
            return BigInt::from(v);
        }
        let k = &self.disc;
        k.trace_form(&self.w, &o.w) - BigInt::from(k.abs()) * (&self.nprime * &o.n + &self.n * &o.nprime)
    }

    fn pedoe2_small(&self, o: &OrientedCircle) -> Option<i128> {
        let g = |x: &BigInt| x.to_i64().map(|v| v as i128);
        let (u1, v1, u2, v2) = (g(&self.w.u)?, g(&self.w.v)?, g(&o.w.u)?, g(&o.w.v)?);
        let (n1, p1, n2, p2) = (g(&self.n)?, g(&self.nprime)?, g(&o.n)?, g(&o.nprime)?);
        let e = self.disc.eps() as i128;
        let c2 = 2 * self.disc.tau_norm() as i128;
        let a = self.disc.abs() as i128;
        let t = (2 * u1).checked_mul(u2)?;
        let t = t.checked_add(e.checked_mul(u1.checked_mul(v2)?.checked_add(v1.checked_mul(u2)?)?)?)?;
        let t = t.checked_add(c2.checked_mul(v1.checked_mul(v2)?)?)?;
        let s = p1.checked_mul(n2)?.checked_add(n1.checked_mul(p2)?)?;
        t.checked_sub(a.checked_mul(s)?)
    }

    pub fn pedoe_product(&self, o: &OrientedCircle) -> BigRational {
        BigRational::new(self.pedoe2(o), BigInt::from(2))
    }

    pub fn pedoe_embed(&self) -> MinkVec {
        let d = self.disc.abs();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        MinkVec([
            ExtRat::surd(BigRational::from_integer(self.nprime.clone()), d),
            ExtRat::surd(BigRational::from_integer(self.n.clone()), d),
            ExtRat::surd(-BigRational::from_integer(self.w.v.clone()) * &half, d),
            ExtRat::rat(
                BigRational::from_integer(self.w.u.clone())
                    + BigRational::from_integer(self.w.v.clone() * BigInt::from(self.disc.eps())) * &half,
                d,
            ),
        ])
    }

    /// E(z)/√|Δ| = n·N(z) + n′ + v(w·z̄) at finite z, and n at ∞. Negative
    /// exactly on the interior.
    pub fn e_value(&self, z: &KPoint) -> BigRational {
        let k = &self.disc;
        match z {
            KPoint::Infinity => BigRational::from_integer(self.n.clone()),
            KPoint::Finite(z) => {
                let wz = self.w.to_knum().mul(k, &z.conj(k));
                BigRational::from_integer(self.n.clone()) * z.norm(k)
                    + BigRational::from_integer(self.nprime.clone())
                    + wz.y
            }
        }
    }

    pub fn interior_sign(&self, z: &KPoint) -> Side {
        let e = self.e_value(z);
        if e.is_negative() {
            Side::Interior
        } else if e.is_zero() {
            Side::On
        } else {
            Side::Exterior
        }
    }

    pub fn contains_point(&self, z: &KPoint) -> bool {
        self.e_value(z).is_zero()
    }

    /// Centre a/b = w·s/(n|Δ|) for bounded circles.
    pub fn center(&self) -> Option<KNum> {
        if self.n.is_zero() {
            return None;
        }
        let k = &self.disc;
        let ws = k.mul(&self.w, &k.sqrt_delta()).to_knum();
        Some(ws.scale(&BigRational::new(BigInt::one(), &self.n * BigInt::from(k.abs()))))
    }

    /// Squared radius 1/(n²|Δ|) for bounded circles.
    pub fn radius_sq(&self) -> Option<BigRational> {
        if self.n.is_zero() {
            return None;
        }
        Some(BigRational::new(BigInt::one(), &self.n * &self.n * BigInt::from(self.disc.abs())))
    }

    /// Two distinct K-points of the circle.
    pub fn sample_points(&self) -> [KPoint; 2] {
        let k = &self.disc;
        match self.center() {
            Some(c) => {
                // c ± i·r with i·r = s/(|n||Δ|)
                let s = k.sqrt_delta().to_knum();
                let off = s.scale(&BigRational::new(BigInt::one(), self.n.abs() * BigInt::from(k.abs())));
                [KPoint::Finite(c.add(&off)), KPoint::Finite(c.sub(&off))]
            }
            None => {
                // foot of the perpendicular from 0: a·b′/2 = w·n′·s/2
                let s = k.sqrt_delta().to_knum();
                let z0 = self.w.to_knum().mul(k, &s).scale(&BigRational::new(self.nprime.clone(), BigInt::from(2)));
                [KPoint::Infinity, KPoint::Finite(z0)]
            }
        }
    }

    /// The common point of two tangent circles.
    pub fn tangency_point(&self, o: &OrientedCircle) -> Result<KPoint, CircleError> {
        if self.disc != o.disc {
            return Err(CircleError::DiscMismatch);
        }
        if self.same_set(o) {
            return Err(CircleError::SameCircle);
        }
        let p = self.pedoe2(o);
        let sgn = if p == BigInt::from(-2) {
            1
        } else if p == BigInt::from(2) {
            -1
        } else {
            return Err(CircleError::NotTangent(p.to_string()));
        };
        let k = &self.disc;
        let (w, n) = if sgn == 1 { (&self.w + &o.w, &self.n + &o.n) } else { (&self.w - &o.w, &self.n - &o.n) };
        if n.is_zero() {
            return Ok(KPoint::Infinity);
        }
        let ws = k.mul(&w, &k.sqrt_delta()).to_knum();
        Ok(KPoint::Finite(ws.scale(&BigRational::new(BigInt::one(), n * BigInt::from(k.abs())))))
    }

    /// Which side of `self` the circle `o` lies on, assuming they do not
    /// cross. Returns Both when o has points on each side.
    pub fn side_of(&self, o: &OrientedCircle) -> Option<Side> {
        if self.same_set(o) {
            return None;
        }
        let mut seen = Vec::new();
        for z in o.sample_points() {
            let s = self.interior_sign(&z);
            if s != Side::On {
                seen.push(s);
            }
        }
        match (seen.first(), seen.iter().any(|s| Some(s) != seen.first())) {
            (None, _) => None,
            (Some(_), true) => Some(Side::Both),
            (Some(s), false) => Some(*s),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Interior,
    On,
    Exterior,
    Both,
}

/// A vector (b′, b, r, m) of Minkowski space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MinkVec(pub [ExtRat; 4]);

impl MinkVec {
    pub fn from_rvec(disc: &Disc, x: &RVec) -> MinkVec {
        let d = disc.abs();
        let q = |v: &BigInt, num: i64, den: i64| BigRational::new(v * BigInt::from(num), BigInt::from(den));
        MinkVec([
            ExtRat::surd(q(&x[0], 1, 1), d),
            ExtRat::surd(q(&x[1], 1, 1), d),
            ExtRat::surd(q(&x[2], -1, 2), d),
            ExtRat::rat(q(&x[3], 1, 2), d),
        ])
    }

    /// Scaled reduced coordinates when the vector lies in the Q-span used by
    /// circles (b′, b, r ∈ Q·√|Δ|, m ∈ Q) with integral results.
    pub fn to_rvec(&self, disc: &Disc) -> Option<RVec> {
        let d = disc.abs();
        let sqrt_part = |e: &ExtRat| -> Option<BigRational> {
            if d == 4 {
                e.as_rational().map(|p| p / int(2))
            } else if e.p.is_zero() {
                Some(e.q.clone())
            } else {
                None
            }
        };
        let np = sqrt_part(&self.0[0])?;
        let n = sqrt_part(&self.0[1])?;
        let v = -sqrt_part(&self.0[2])? * int(2);
        let m2 = self.0[3].as_rational()? * int(2);
        let all = [np, n, v, m2];
        if all.iter().all(|x| x.is_integer()) {
            Some([all[0].to_integer(), all[1].to_integer(), all[2].to_integer(), all[3].to_integer()])
        } else {
            None
        }
    }

    pub fn neg(&self) -> MinkVec {
        MinkVec(self.0.clone().map(|e| -e))
    }

    /// ⟨x, y⟩ = −(b′₁b₂ + b₁b′₂)/2 + r₁r₂ + m₁m₂.
    pub fn dot(&self, o: &MinkVec) -> ExtRat {
        let d = self.0[0].radicand();
        let half = ExtRat::rat(BigRational::new((-1).into(), 2.into()), d);
        let cross = &(&self.0[0] * &o.0[1]) + &(&self.0[1] * &o.0[0]);
        &(&(&half * &cross) + &(&self.0[2] * &o.0[2])) + &(&self.0[3] * &o.0[3])
    }
}

/// 4×4 matrix over Q(√|Δ|).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MinkMat(pub Vec<Vec<ExtRat>>);

impl MinkMat {
    pub fn identity(d: i64) -> MinkMat {
        MinkMat((0..4).map(|i| (0..4).map(|j| ExtRat::int((i == j) as i64, d)).collect()).collect())
    }

    pub fn from_columns(cols: &[MinkVec]) -> MinkMat {
        let n = cols.len();
        MinkMat((0..4).map(|i| (0..n).map(|j| cols[j].0[i].clone()).collect()).collect())
    }

    pub fn from_rational(d: i64, m: &[Vec<BigRational>]) -> MinkMat {
        MinkMat(m.iter().map(|row| row.iter().map(|x| ExtRat::rat(x.clone(), d)).collect()).collect())
    }

    pub fn column(&self, j: usize) -> MinkVec {
        MinkVec([self.0[0][j].clone(), self.0[1][j].clone(), self.0[2][j].clone(), self.0[3][j].clone()])
    }

    pub fn rows(&self) -> usize {
        self.0.len()
    }

    pub fn cols(&self) -> usize {
        self.0.first().map_or(0, |r| r.len())
    }

    fn radicand(&self) -> i64 {
        self.0[0][0].radicand()
    }

    pub fn mul(&self, o: &MinkMat) -> MinkMat {
        let d = self.radicand();
        let (n, m, p) = (self.rows(), self.cols(), o.cols());
        let mut out = vec![vec![ExtRat::zero(d); p]; n];
        for i in 0..n {
            for k in 0..m {
                if self.0[i][k].is_zero() {
                    continue;
                }
                for j in 0..p {
                    let t = &self.0[i][k] * &o.0[k][j];
                    out[i][j] = &out[i][j] + &t;
                }
            }
        }
        MinkMat(out)
    }

    pub fn transpose(&self) -> MinkMat {
        let (n, m) = (self.rows(), self.cols());
        MinkMat((0..m).map(|j| (0..n).map(|i| self.0[i][j].clone()).collect()).collect())
    }

    pub fn inverse(&self) -> Option<MinkMat> {
        let n = self.rows();
        let d = self.radicand();
        let mut a = self.0.clone();
        let mut inv = MinkMat::identity(d).0;
        if n != 4 {
            inv = (0..n).map(|i| (0..n).map(|j| ExtRat::int((i == j) as i64, d)).collect()).collect();
        }
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, p);
            inv.swap(col, p);
            let pinv = a[col][col].inv()?;
            for j in 0..n {
                a[col][j] = &a[col][j] * &pinv;
                inv[col][j] = &inv[col][j] * &pinv;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] = &a[r][j] - &t;
                    let t = &f * &inv[col][j];
                    inv[r][j] = &inv[r][j] - &t;
                }
            }
        }
        Some(MinkMat(inv))
    }

    pub fn mul_vec(&self, v: &MinkVec) -> MinkVec {
        let d = self.radicand();
        let mut out: [ExtRat; 4] = std::array::from_fn(|_| ExtRat::zero(d));
        for (i, o) in out.iter_mut().enumerate() {
            for j in 0..4 {
                *o = &*o + &(&self.0[i][j] * &v.0[j]);
            }
        }
        MinkVec(out)
    }

    /// Entries as rationals when all are rational.
    pub fn to_rational(&self) -> Option<Vec<Vec<BigRational>>> {
        self.0.iter().map(|r| r.iter().map(|e| e.as_rational()).collect()).collect()
    }

    /// Mᵀ·G_M·M.
    pub fn gram(&self) -> MinkMat {
        self.transpose().mul(&g_m(self.radicand())).mul(self)
    }

    /// Membership in O_M: Mᵀ G_M M = G_M.
    pub fn in_o_m(&self) -> bool {
        self.gram() == g_m(self.radicand())
    }

    /// Orthochronous: preserves the sign of the time-like coordinate b + b′.
    pub fn orthochronous(&self) -> bool {
        let d = self.radicand();
        let t = MinkVec([ExtRat::int(1, d), ExtRat::int(1, d), ExtRat::zero(d), ExtRat::zero(d)]);
        let im = self.mul_vec(&t);
        (&im.0[0] + &im.0[1]).signum() > 0
    }
}

/// G_M with ⟨x, y⟩ = xᵀ G_M y.
pub fn g_m(d: i64) -> MinkMat {
    let h = ExtRat::rat(BigRational::new((-1).into(), 2.into()), d);
    let z = ExtRat::zero(d);
    let o = ExtRat::one(d);
    MinkMat(vec![
        vec![z.clone(), h.clone(), z.clone(), z.clone()],
        vec![h, z.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), o.clone(), z.clone()],
        vec![z.clone(), z.clone(), z, o],
    ])
}

#[derive(Clone, Debug)]
struct CExt {
    re: ExtRat,
    im: ExtRat,
}

impl CExt {
    fn of(disc: &Disc, x: &OKElem) -> CExt {
        let d = disc.abs();
        let re = BigRational::from_integer(&x.u * 2 + &x.v * BigInt::from(disc.eps())) / int(2);
        CExt { re: ExtRat::rat(re, d), im: ExtRat::surd(BigRational::new(x.v.clone(), 2.into()), d) }
    }
    fn conj(&self) -> CExt {
        CExt { re: self.re.clone(), im: -&self.im }
    }
    fn mul(&self, o: &CExt) -> CExt {
        CExt { re: &(&self.re * &o.re) - &(&self.im * &o.im), im: &(&self.re * &o.im) + &(&self.im * &o.re) }
    }
    fn add(&self, o: &CExt) -> CExt {
        CExt { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

/// The exceptional isomorphism: the matrix of T ↦ g·T·g† (with T̄ first when
/// g carries conjugation) on the Hermitian basis of Minkowski space.
pub fn rho(g: &MobiusMap) -> MinkMat {
    let disc = g.disc;
    let d = disc.abs();
    let z = ExtRat::zero(d);
    let one = ExtRat::one(d);
    let c = |re: &ExtRat, im: &ExtRat| CExt { re: re.clone(), im: im.clone() };
    let zc = c(&z, &z);
    let oc = c(&one, &z);
    let ic = c(&z, &one);
    let mic = c(&z, &-&one);
    // Hermitian basis e_b′, e_b, e_r, e_m
    let basis = [
        [[oc.clone(), zc.clone()], [zc.clone(), zc.clone()]],
        [[zc.clone(), zc.clone()], [zc.clone(), oc.clone()]],
        [[zc.clone(), oc.clone()], [oc.clone(), zc.clone()]],
        [[zc.clone(), ic], [mic, zc.clone()]],
    ];
    let m = [[CExt::of(&disc, &g.a), CExt::of(&disc, &g.b)], [CExt::of(&disc, &g.c), CExt::of(&disc, &g.d)]];
    let mut cols = Vec::new();
    for e in basis.iter() {
        let t: Vec<Vec<CExt>> =
            e.iter().map(|row| row.iter().map(|x| if g.conj { x.conj() } else { x.clone() }).collect()).collect();
        let mut mt = vec![vec![zc.clone(); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                mt[i][j] = m[i][0].mul(&t[0][j]).add(&m[i][1].mul(&t[1][j]));
            }
        }
        let entry = |i: usize, j: usize| mt[i][0].mul(&m[j][0].conj()).add(&mt[i][1].mul(&m[j][1].conj()));
        let e00 = entry(0, 0);
        let e11 = entry(1, 1);
        let e01 = entry(0, 1);
        cols.push(MinkVec([e00.re, e11.re, e01.re, e01.im]));
    }
    MinkMat::from_columns(&cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(x: i64) -> Disc {
        Disc::new(x).unwrap()
    }

    #[test]
    fn matrix_examples() {
        let k = d(-7);
        let c = MobiusMap::identity(k).circle();
        assert_eq!(c, OrientedCircle::from_ints(k, 0, 0, (1, 0)).unwrap());
        assert_eq!(c.pedoe_embed().0[3], ExtRat::one(7));
        let v = MobiusMap::v_map(k).circle();
        assert_eq!(v, OrientedCircle::from_ints(k, 0, 1, (-1, 0)).unwrap());
        let s = MobiusMap::from_ints(k, [[0, -1], [1, 0]], false).unwrap().circle();
        assert_eq!(s, c);
        let m = MobiusMap::from_coords(k, [[(0, 0), (1, 0)], [(1, 0), (0, 1)]], false).unwrap();
        assert_eq!(m.circle().n, BigInt::one());
    }

    #[test]
    fn pedoe_examples() {
        let k = d(-8);
        let r = OrientedCircle::real_line(k);
        let v = MobiusMap::v_map(k).circle();
        assert_eq!(r.pedoe_product(&v), BigRational::from_integer((-1).into()));
        let c = OrientedCircle::from_ints(k, 1, 1, (1, 2)).unwrap();
        let e = c.pedoe_embed();
        assert_eq!(e.0[1], ExtRat::surd(int(1), 8));
        assert_eq!(e.0[2], ExtRat::surd(int(-1), 8));
        assert_eq!(e.dot(&e), ExtRat::one(8));
        assert_eq!(r.reversed().pedoe_embed(), r.pedoe_embed().neg());
    }

    #[test]
    fn interior_examples() {
        let k = d(-4);
        let r = OrientedCircle::real_line(k);
        assert_eq!(r.interior_sign(&KPoint::Finite(KNum::from_ints(0, 1))), Side::Interior);
        assert_eq!(r.interior_sign(&KPoint::Finite(KNum::from_ints(0, 0))), Side::On);
        assert_eq!(r.interior_sign(&KPoint::Finite(KNum::from_ints(0, -1))), Side::Exterior);
        let c = OrientedCircle::from_ints(k, 1, 0, (1, 0)).unwrap();
        assert_eq!(c.interior_sign(&KPoint::Finite(c.center().unwrap())), Side::Interior);
        assert_eq!(c.interior_sign(&KPoint::Infinity), Side::Exterior);
    }

    #[test]
    fn tangency_examples() {
        let k = d(-15);
        let r = OrientedCircle::real_line(k);
        let v = MobiusMap::v_map(k).circle();
        assert_eq!(r.tangency_point(&v), Ok(KPoint::Infinity));
        assert_eq!(r.tangency_point(&r.reversed()), Err(CircleError::SameCircle));
        let m = MobiusMap::from_ints(k, [[0, -1], [1, 0]], false).unwrap().compose(&MobiusMap::v_map(k));
        let c0 = m.circle();
        assert_eq!(c0.n, BigInt::one());
        assert_eq!(r.tangency_point(&c0), Ok(KPoint::rational(0, 1)));
    }

    #[test]
    fn rho_identity_and_equivariance() {
        let k = d(-11);
        assert_eq!(rho(&MobiusMap::identity(k)), MinkMat::identity(11));
        let g = MobiusMap::from_coords(k, [[(1, 1), (-2, 0)], [(3, 0), (-2, 1)]], true).unwrap();
        let r = rho(&g);
        assert!(r.in_o_m());
        let c = OrientedCircle::from_ints(k, 1, 0, (1, 0)).unwrap();
        assert_eq!(r.mul_vec(&c.pedoe_embed()), c.apply(&g).pedoe_embed());
    }
}

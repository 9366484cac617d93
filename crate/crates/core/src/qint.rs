//! Arithmetic in the ring of integers O_K = Z + Z·τ of an imaginary quadratic
//! field, in K itself, and in the real quadratic field Q(√|Δ|).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiscError {
    #[error("discriminant {0} is not negative")]
    NotNegative(i64),
    #[error("discriminant -3 is excluded")]
    Minus3,
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
}

/// A fundamental discriminant Δ < 0, Δ ≠ −3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Disc {
    delta: i64,
}

fn squarefree(mut m: i64) -> bool {
    let mut p = 2i64;
    while p * p <= m {
        if m % (p * p) == 0 {
            return false;
        }
        if m % p == 0 {
            m /= p;
        }
        p += 1;
    }
    true
}

impl Disc {
    pub fn new(delta: i64) -> Result<Disc, DiscError> {
        if delta >= 0 {
            return Err(DiscError::NotNegative(delta));
        }
        if delta == -3 {
            return Err(DiscError::Minus3);
        }
        let a = -delta;
        let ok = match a % 4 {
            3 => squarefree(a),
            0 => {
                let m = a / 4;
                (m % 4 == 1 || m % 4 == 2) && squarefree(m)
            }
            _ => false,
        };
        if ok {
            Ok(Disc { delta })
        } else {
            Err(DiscError::NotFundamental(delta))
        }
    }

    pub fn delta(&self) -> i64 {
        self.delta
    }

    /// |Δ|.
    pub fn abs(&self) -> i64 {
        -self.delta
    }

    /// ε = Tr(τ) ∈ {0, 1}.
    pub fn eps(&self) -> i64 {
        self.delta.rem_euclid(4)
    }

    /// N(τ) = (ε − Δ)/4.
    pub fn tau_norm(&self) -> i64 {
        (self.eps() - self.delta) / 4
    }

    pub fn zero(&self) -> OKElem {
        OKElem::new(0, 0)
    }

    pub fn one(&self) -> OKElem {
        OKElem::new(1, 0)
    }

    pub fn tau(&self) -> OKElem {
        OKElem::new(0, 1)
    }

    /// √Δ = 2τ − ε, the element with square Δ and positive imaginary part.
    pub fn sqrt_delta(&self) -> OKElem {
        OKElem::new(-self.eps(), 2)
    }

    pub fn units(&self) -> Vec<OKElem> {
        if self.delta == -4 {
            vec![OKElem::new(1, 0), OKElem::new(0, 1), OKElem::new(-1, 0), OKElem::new(0, -1)]
        } else {
            vec![OKElem::new(1, 0), OKElem::new(-1, 0)]
        }
    }

    pub fn mul(&self, x: &OKElem, y: &OKElem) -> OKElem {
        let c = BigInt::from(self.tau_norm());
        let e = BigInt::from(self.eps());
        let vv = &x.v * &y.v;
        OKElem { u: &x.u * &y.u - &c * &vv, v: &x.u * &y.v + &x.v * &y.u + e * vv }
    }

    pub fn norm(&self, x: &OKElem) -> BigInt {
        &x.u * &x.u + BigInt::from(self.eps()) * &x.u * &x.v + BigInt::from(self.tau_norm()) * &x.v * &x.v
    }

    pub fn trace(&self, x: &OKElem) -> BigInt {
        BigInt::from(2) * &x.u + BigInt::from(self.eps()) * &x.v
    }

    pub fn conj(&self, x: &OKElem) -> OKElem {
        OKElem { u: &x.u + BigInt::from(self.eps()) * &x.v, v: -&x.v }
    }

    /// Tr(x·ȳ), the polarisation of the norm form.
    pub fn trace_form(&self, x: &OKElem, y: &OKElem) -> BigInt {
        BigInt::from(2) * &x.u * &y.u
            + BigInt::from(self.eps()) * (&x.u * &y.v + &x.v * &y.u)
            + BigInt::from(2 * self.tau_norm()) * &x.v * &y.v
    }

    pub fn is_unit(&self, x: &OKElem) -> bool {
        self.norm(x).is_one()
    }

    /// Exact quotient x / y when it lies in O_K.
    pub fn div_exact(&self, x: &OKElem, y: &OKElem) -> Option<OKElem> {
        let n = self.norm(y);
        if n.is_zero() {
            return None;
        }
        let p = self.mul(x, &self.conj(y));
        if p.u.is_multiple_of(&n) && p.v.is_multiple_of(&n) {
            Some(OKElem { u: p.u / &n, v: p.v / &n })
        } else {
            None
        }
    }

    pub fn ext(&self, p: BigRational, q: BigRational) -> ExtRat {
        ExtRat::new(p, q, self.abs())
    }

    /// Solve αδ − βγ = 1 over O_K. Returns None exactly when (α) + (β) ≠ (1).
    ///
    /// The four unknown coordinates of (γ, δ) satisfy a 2×4 integer linear
    /// system; it is solved through a Hermite normal form, and the particular
    /// solution is reduced modulo the HNF of the kernel lattice so the answer
    /// is canonical.
    pub fn bezout(&self, alpha: &OKElem, beta: &OKElem) -> Option<(OKElem, OKElem)> {
        assert!(!(alpha.is_zero() && beta.is_zero()), "bezout of (0, 0)");
        let t = self.tau();
        let cols = [-beta.clone(), -self.mul(beta, &t), alpha.clone(), self.mul(alpha, &t)];
        // rows of A^T: the image of each unknown
        let at: Vec<Vec<BigInt>> = cols.iter().map(|c| vec![c.u.clone(), c.v.clone()]).collect();
        let (h, u) = hnf_rows(&at);
        let h00 = &h[0][0];
        let h01 = &h[0][1];
        let h11 = &h[1][1];
        if h00.is_zero() || h11.is_zero() || !h00.is_one() {
            return None;
        }
        // A U^T = H^T, lower triangular; solve H^T y = (1, 0)
        let num = -h01;
        if !num.is_multiple_of(h11) {
            return None;
        }
        let y1 = num / h11;
        let mut x: Vec<BigInt> = (0..4).map(|j| &u[0][j] + &y1 * &u[1][j]).collect();
        let kernel = vec![u[2].clone(), u[3].clone()];
        let (kh, _) = hnf_rows(&kernel);
        for row in &kh {
            if let Some(c) = row.iter().position(|e| !e.is_zero()) {
                let q = x[c].div_floor(&row[c]);
                for j in 0..4 {
                    x[j] -= &q * &row[j];
                }
            }
        }
        let gamma = OKElem { u: x[0].clone(), v: x[1].clone() };
        let delta = OKElem { u: x[2].clone(), v: x[3].clone() };
        debug_assert!((self.mul(alpha, &delta) - self.mul(beta, &gamma)) == self.one(), "bezout post-condition");
        Some((gamma, delta))
    }

    pub fn coprime(&self, alpha: &OKElem, beta: &OKElem) -> bool {
        self.bezout(alpha, beta).is_some()
    }

    /// Elements x with N(x) ≤ bound, ordered by (N, u, v).
    pub fn elements_up_to_norm(&self, bound: i64) -> Vec<OKElem> {
        let mut out = Vec::new();
        if bound < 0 {
            return out;
        }
        // N = (u + vε/2)² + v²|Δ|/4, so v² ≤ 4·bound/|Δ|
        let vmax = ((4 * bound) as f64 / self.abs() as f64).sqrt() as i64 + 1;
        let smax = (bound as f64).sqrt() as i64 + 2;
        for v in -vmax..=vmax {
            for u in (-smax - v.abs())..=(smax + v.abs()) {
                let x = OKElem::new(u, v);
                if self.norm(&x) <= BigInt::from(bound) {
                    out.push(x);
                }
            }
        }
        out.sort_by(|a, b| self.norm(a).cmp(&self.norm(b)).then(a.cmp(b)));
        out
    }
}

impl fmt::Display for Disc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.delta)
    }
}

/// Row Hermite normal form with transform: returns (H, U) with U·A = H,
/// U unimodular, H in row echelon form with positive pivots and reduced
/// entries above each pivot.
pub fn hnf_rows(a: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut h: Vec<Vec<BigInt>> = a.to_vec();
    let mut u: Vec<Vec<BigInt>> =
        (0..m).map(|i| (0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        loop {
            let piv = (row..m)
                .filter(|&i| !h[i][col].is_zero())
                .min_by(|&i, &j| h[i][col].abs().cmp(&h[j][col].abs()).then(i.cmp(&j)));
            let Some(p) = piv else { break };
            h.swap(row, p);
            u.swap(row, p);
            let mut clean = true;
            for i in row + 1..m {
                if h[i][col].is_zero() {
                    continue;
                }
                let q = h[i][col].div_floor(&h[row][col]);
                for j in 0..n {
                    let t = &q * &h[row][j];
                    h[i][j] -= t;
                }
                for j in 0..m {
                    let t = &q * &u[row][j];
                    u[i][j] -= t;
                }
                if !h[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[row][col].is_zero() {
            continue;
        }
        if h[row][col].is_negative() {
            for e in h[row].iter_mut() {
                *e = -&*e;
            }
            for e in u[row].iter_mut() {
                *e = -&*e;
            }
        }
        for i in 0..row {
            let q = h[i][col].div_floor(&h[row][col]);
            if q.is_zero() {
                continue;
            }
            for j in 0..n {
                let t = &q * &h[row][j];
                h[i][j] -= t;
            }
            for j in 0..m {
                let t = &q * &u[row][j];
                u[i][j] -= t;
            }
        }
        row += 1;
    }
    (h, u)
}

/// An element u + v·τ of O_K. The discriminant is carried by the [`Disc`]
/// passed to multiplicative operations.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OKElem {
    pub u: BigInt,
    pub v: BigInt,
}

impl OKElem {
    pub fn new(u: i64, v: i64) -> OKElem {
        OKElem { u: BigInt::from(u), v: BigInt::from(v) }
    }

    pub fn from_big(u: BigInt, v: BigInt) -> OKElem {
        OKElem { u, v }
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn scale(&self, k: &BigInt) -> OKElem {
        OKElem { u: &self.u * k, v: &self.v * k }
    }

    pub fn to_knum(&self) -> KNum {
        KNum { x: BigRational::from_integer(self.u.clone()), y: BigRational::from_integer(self.v.clone()) }
    }
}

impl fmt::Display for OKElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}τ", self.u, self.v)
    }
}

impl Add for OKElem {
    type Output = OKElem;
    fn add(self, o: OKElem) -> OKElem {
        OKElem { u: self.u + o.u, v: self.v + o.v }
    }
}
impl<'a> Add<&'a OKElem> for &'a OKElem {
    type Output = OKElem;
    fn add(self, o: &OKElem) -> OKElem {
        OKElem { u: &self.u + &o.u, v: &self.v + &o.v }
    }
}
impl Sub for OKElem {
    type Output = OKElem;
    fn sub(self, o: OKElem) -> OKElem {
        OKElem { u: self.u - o.u, v: self.v - o.v }
    }
}
impl<'a> Sub<&'a OKElem> for &'a OKElem {
    type Output = OKElem;
    fn sub(self, o: &OKElem) -> OKElem {
        OKElem { u: &self.u - &o.u, v: &self.v - &o.v }
    }
}
impl Neg for OKElem {
    type Output = OKElem;
    fn neg(self) -> OKElem {
        OKElem { u: -self.u, v: -self.v }
    }
}
impl Neg for &OKElem {
    type Output = OKElem;
    fn neg(self) -> OKElem {
        OKElem { u: -&self.u, v: -&self.v }
    }
}

/// An element x + y·τ of K with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KNum {
    pub x: BigRational,
    pub y: BigRational,
}

impl KNum {
    pub fn zero() -> KNum {
        KNum { x: BigRational::zero(), y: BigRational::zero() }
    }

    pub fn new(x: BigRational, y: BigRational) -> KNum {
        KNum { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> KNum {
        KNum { x: BigRational::from_integer(x.into()), y: BigRational::from_integer(y.into()) }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn add(&self, o: &KNum) -> KNum {
        KNum { x: &self.x + &o.x, y: &self.y + &o.y }
    }

    pub fn sub(&self, o: &KNum) -> KNum {
        KNum { x: &self.x - &o.x, y: &self.y - &o.y }
    }

    pub fn scale(&self, k: &BigRational) -> KNum {
        KNum { x: &self.x * k, y: &self.y * k }
    }

    pub fn mul(&self, d: &Disc, o: &KNum) -> KNum {
        let c = BigRational::from_integer(d.tau_norm().into());
        let e = BigRational::from_integer(d.eps().into());
        let yy = &self.y * &o.y;
        KNum { x: &self.x * &o.x - &c * &yy, y: &self.x * &o.y + &self.y * &o.x + e * yy }
    }

    pub fn conj(&self, d: &Disc) -> KNum {
        KNum { x: &self.x + BigRational::from_integer(d.eps().into()) * &self.y, y: -&self.y }
    }

    pub fn norm(&self, d: &Disc) -> BigRational {
        &self.x * &self.x
            + BigRational::from_integer(d.eps().into()) * &self.x * &self.y
            + BigRational::from_integer(d.tau_norm().into()) * &self.y * &self.y
    }

    /// Tr(x·ȳ) for rational coordinates.
    pub fn trace_form(&self, d: &Disc, o: &KNum) -> BigRational {
        let two = BigRational::from_integer(2.into());
        &two * &self.x * &o.x
            + BigRational::from_integer(d.eps().into()) * (&self.x * &o.y + &self.y * &o.x)
            + BigRational::from_integer((2 * d.tau_norm()).into()) * &self.y * &o.y
    }

    pub fn inv(&self, d: &Disc) -> Option<KNum> {
        let n = self.norm(d);
        if n.is_zero() {
            return None;
        }
        let c = self.conj(d);
        Some(KNum { x: c.x / &n, y: c.y / n })
    }

    pub fn div(&self, d: &Disc, o: &KNum) -> Option<KNum> {
        o.inv(d).map(|i| self.mul(d, &i))
    }

    /// Real part x + yε/2.
    pub fn re(&self, d: &Disc) -> BigRational {
        &self.x + &self.y * BigRational::new(d.eps().into(), 2.into())
    }

    /// Imaginary part divided by √|Δ|, i.e. y/2.
    pub fn im_over_eta(&self) -> BigRational {
        &self.y / BigRational::from_integer(2.into())
    }

    pub fn to_complex_f64(&self, d: &Disc) -> (f64, f64) {
        let re = self.re(d).to_f64().unwrap_or(f64::NAN);
        let im = self.im_over_eta().to_f64().unwrap_or(f64::NAN) * (d.abs() as f64).sqrt();
        (re, im)
    }

    pub fn to_okelem(&self) -> Option<OKElem> {
        if self.x.is_integer() && self.y.is_integer() {
            Some(OKElem { u: self.x.to_integer(), v: self.y.to_integer() })
        } else {
            None
        }
    }
}

impl fmt::Display for KNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})+({})τ", self.x, self.y)
    }
}

/// A point of K̂ = K ∪ {∞}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KPoint {
    Finite(KNum),
    Infinity,
}

impl KPoint {
    pub fn from_ratio(d: &Disc, a: &OKElem, b: &OKElem) -> KPoint {
        if b.is_zero() {
            KPoint::Infinity
        } else {
            KPoint::Finite(a.to_knum().div(d, &b.to_knum()).expect("nonzero"))
        }
    }

    pub fn rational(p: i64, q: i64) -> KPoint {
        if q == 0 {
            KPoint::Infinity
        } else {
            KPoint::Finite(KNum { x: BigRational::new(p.into(), q.into()), y: BigRational::zero() })
        }
    }

    /// (X, Y) ∈ O_K² with z = X/Y; Y is a positive integer for finite points.
    pub fn homogeneous(&self) -> (OKElem, OKElem) {
        match self {
            KPoint::Infinity => (OKElem::new(1, 0), OKElem::new(0, 0)),
            KPoint::Finite(z) => {
                let den = z.x.denom().lcm(z.y.denom());
                let x = (&z.x * BigRational::from_integer(den.clone())).to_integer();
                let y = (&z.y * BigRational::from_integer(den.clone())).to_integer();
                (OKElem { u: x, v: y }, OKElem { u: den, v: BigInt::zero() })
            }
        }
    }
}

impl fmt::Display for KPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KPoint::Infinity => write!(f, "∞"),
            KPoint::Finite(z) => write!(f, "{}", z),
        }
    }
}

fn int_sqrt(n: i64) -> Option<i64> {
    let r = (n as f64).sqrt().round() as i64;
    (r - 1..=r + 1).find(|&s| s >= 0 && s * s == n)
}

/// p + q·√d for a fixed positive non-square-free-checked radicand d. When d
/// is a perfect square the value is folded into p, so zero iff p = q = 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtRat {
    pub p: BigRational,
    pub q: BigRational,
    d: i64,
}

impl ExtRat {
    pub fn new(p: BigRational, q: BigRational, d: i64) -> ExtRat {
        match int_sqrt(d) {
            Some(s) => ExtRat { p: p + q * BigRational::from_integer(s.into()), q: BigRational::zero(), d },
            None => ExtRat { p, q, d },
        }
    }

    pub fn rat(p: BigRational, d: i64) -> ExtRat {
        ExtRat { p, q: BigRational::zero(), d }
    }

    pub fn int(p: i64, d: i64) -> ExtRat {
        ExtRat::rat(BigRational::from_integer(p.into()), d)
    }

    pub fn zero(d: i64) -> ExtRat {
        ExtRat::int(0, d)
    }

    pub fn one(d: i64) -> ExtRat {
        ExtRat::int(1, d)
    }

    /// q·√d.
    pub fn surd(q: BigRational, d: i64) -> ExtRat {
        ExtRat::new(BigRational::zero(), q, d)
    }

    pub fn radicand(&self) -> i64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn conj(&self) -> ExtRat {
        ExtRat { p: self.p.clone(), q: -&self.q, d: self.d }
    }

    /// (p + q√d)(p − q√d) = p² − q²d.
    pub fn field_norm(&self) -> BigRational {
        &self.p * &self.p - &self.q * &self.q * BigRational::from_integer(self.d.into())
    }

    pub fn inv(&self) -> Option<ExtRat> {
        let n = self.field_norm();
        if n.is_zero() {
            return None;
        }
        Some(ExtRat { p: &self.p / &n, q: -&self.q / &n, d: self.d })
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.q.is_zero() {
            Some(self.p.clone())
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.p.to_f64().unwrap_or(f64::NAN) + self.q.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }

    /// Sign of the real number p + q√d (exact).
    pub fn signum(&self) -> i32 {
        let sp = sign(&self.p);
        let sq = sign(&self.q);
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return if sp == 0 { sq } else { sp };
        }
        // opposite signs: compare p² with q²d
        let lhs = &self.p * &self.p;
        let rhs = &self.q * &self.q * BigRational::from_integer(self.d.into());
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => sp,
            std::cmp::Ordering::Less => sq,
            std::cmp::Ordering::Equal => 0,
        }
    }

    fn check(&self, o: &ExtRat) {
        debug_assert_eq!(self.d, o.d, "mixed radicands");
    }
}

fn sign(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            write!(f, "{}", self.p)
        } else if self.p.is_zero() {
            write!(f, "{}√{}", self.q, self.d)
        } else {
            write!(f, "{}{:+}√{}", self.p, self.q, self.d)
        }
    }
}

impl<'a> Add<&'a ExtRat> for &'a ExtRat {
    type Output = ExtRat;
    fn add(self, o: &ExtRat) -> ExtRat {
        self.check(o);
        ExtRat { p: &self.p + &o.p, q: &self.q + &o.q, d: self.d }
    }
}
impl Add for ExtRat {
    type Output = ExtRat;
    fn add(self, o: ExtRat) -> ExtRat {
        &self + &o
    }
}
impl<'a> Sub<&'a ExtRat> for &'a ExtRat {
    type Output = ExtRat;
    fn sub(self, o: &ExtRat) -> ExtRat {
        self.check(o);
        ExtRat { p: &self.p - &o.p, q: &self.q - &o.q, d: self.d }
    }
}
impl Sub for ExtRat {
    type Output = ExtRat;
    fn sub(self, o: ExtRat) -> ExtRat {
        &self - &o
    }
}
impl<'a> Mul<&'a ExtRat> for &'a ExtRat {
    type Output = ExtRat;
    fn mul(self, o: &ExtRat) -> ExtRat {
        self.check(o);
        let d = BigRational::from_integer(self.d.into());
        ExtRat { p: &self.p * &o.p + &self.q * &o.q * d, q: &self.p * &o.q + &self.q * &o.p, d: self.d }
    }
}
impl Mul for ExtRat {
    type Output = ExtRat;
    fn mul(self, o: ExtRat) -> ExtRat {
        &self * &o
    }
}
impl Neg for ExtRat {
    type Output = ExtRat;
    fn neg(self) -> ExtRat {
        ExtRat { p: -self.p, q: -self.q, d: self.d }
    }
}
impl Neg for &ExtRat {
    type Output = ExtRat;
    fn neg(self) -> ExtRat {
        ExtRat { p: -&self.p, q: -&self.q, d: self.d }
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(x: i64) -> Disc {
        Disc::new(x).unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(Disc::new(-3), Err(DiscError::Minus3));
        assert!(Disc::new(-12).is_err());
        assert!(Disc::new(-16).is_err());
        assert!(Disc::new(-5).is_err());
        assert!(Disc::new(4).is_err());
        for x in [-4, -7, -8, -11, -15, -19, -20, -23, -24, -35, -40, -163] {
            assert!(Disc::new(x).is_ok(), "{x}");
        }
    }

    #[test]
    fn tau_squared() {
        let k = d(-8);
        assert_eq!(k.mul(&k.tau(), &k.tau()), OKElem::new(-2, 0));
        let k = d(-7);
        assert_eq!(k.mul(&k.tau(), &k.conj(&k.tau())), OKElem::new(2, 0));
        assert_eq!(k.norm(&k.tau()), BigInt::from(2));
        let k = d(-15);
        assert_eq!(k.norm(&k.tau()), BigInt::from(4));
        let k = d(-4);
        assert_eq!(k.norm(&k.tau()), BigInt::from(1));
        let k = d(-8);
        assert_eq!(k.trace(&OKElem::new(3, 2)), BigInt::from(6));
        for x in [-4, -7, -8, -15] {
            let k = d(x);
            let s = k.sqrt_delta();
            assert_eq!(k.mul(&s, &s), OKElem::new(x, 0));
        }
    }

    #[test]
    fn bezout_examples() {
        let k = d(-4);
        assert_eq!(k.bezout(&OKElem::new(1, 0), &OKElem::new(0, 0)), Some((OKElem::new(0, 0), OKElem::new(1, 0))));
        assert_eq!(k.bezout(&k.tau(), &OKElem::new(2, 0)), Some((OKElem::new(0, 0), OKElem::new(0, -1))));
        let k = d(-8);
        assert_eq!(k.bezout(&OKElem::new(2, 0), &k.tau()), None);
    }

    #[test]
    fn ext_rat() {
        let a = ExtRat::new(rat(3, 2), rat(-1, 3), 7);
        let b = a.conj();
        assert_eq!((&a * &b).as_rational(), Some(a.field_norm()));
        assert_eq!((&a * &a.inv().unwrap()), ExtRat::one(7));
        let s = ExtRat::surd(int(1), 4);
        assert_eq!(s.as_rational(), Some(int(2)));
        assert!(ExtRat::new(int(-2), int(1), 4).is_zero());
        assert_eq!(ExtRat::new(int(3), int(-1), 8).signum(), 1);
        assert_eq!(ExtRat::new(int(2), int(-1), 8).signum(), -1);
    }

    #[test]
    fn hnf_small() {
        let a = vec![vec![BigInt::from(4), BigInt::from(6)], vec![BigInt::from(6), BigInt::from(9)]];
        let (h, u) = hnf_rows(&a);
        assert_eq!(h[0][0], BigInt::from(2));
        for i in 0..2 {
            for j in 0..2 {
                let s: BigInt = (0..2).map(|k| &u[i][k] * &a[k][j]).sum();
                assert_eq!(s, h[i][j]);
            }
        }
    }
}

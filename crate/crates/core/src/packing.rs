//! K-Apollonian packings by breadth-first search over clusters.
//!
//! Children are right multiples X·g by the swap generators. Strip packings
//! are invariant under an integer translation z ↦ z + p lying in the group,
//! so clusters are stored modulo that translation. Arithmetic runs on i128
//! with overflow checks and restarts on BigInt when a value does not fit.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::circle::{MobiusMap, OrientedCircle, RVec};
use crate::clusters::{self, Cluster, ClusterError, ClusterFlavor, ClusterSpaceSpec};
use crate::mat::{self, ZMat};
use crate::qint::Disc;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PackingError {
    #[error("base cluster is not a valid {0} cluster")]
    InvalidBase(&'static str),
    #[error("cluster cap of {0} reached before the search closed")]
    CapReached(usize),
    #[error("generator is not integral")]
    BadGenerator,
    #[error(transparent)]
    Cluster(#[from] ClusterError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PackingKind {
    /// The packing containing R̂ and the line above it, reported modulo 1.
    Strip,
    /// The image of the strip packing under z ↦ 1/(z + τ); its outer circle
    /// has reduced curvature −1.
    Bounded,
}

impl PackingKind {
    pub fn name(&self) -> &'static str {
        match self {
            PackingKind::Strip => "strip",
            PackingKind::Bounded => "bounded",
        }
    }
}

#[derive(Debug, Clone)]
pub struct PackingOptions {
    pub max_curv: u64,
    /// Children are expanded when a new circle has |n| ≤ slack·max_curv.
    pub slack: u64,
    pub cluster_cap: usize,
    pub keep_clusters: bool,
    /// Double the slack until the circles with |n| ≤ max_curv stop changing.
    pub saturate: bool,
}

impl PackingOptions {
    pub fn new(max_curv: u64) -> PackingOptions {
        PackingOptions { max_curv, slack: 2, cluster_cap: 4_000_000, keep_clusters: false, saturate: false }
    }
}

/// Everything the search needs: cluster space, generators, base and the
/// translation period (None disables translation reduction).
#[derive(Debug, Clone)]
pub struct PackingSource {
    pub id: String,
    pub spec: ClusterSpaceSpec,
    pub gens: Vec<ZMat>,
    pub base: Cluster,
    pub period: Option<i64>,
}

impl PackingSource {
    pub fn new(id: &str, spec: ClusterSpaceSpec, gens: Vec<ZMat>, base: Cluster, period: Option<i64>) -> PackingSource {
        PackingSource { id: id.to_string(), spec, gens, base, period }
    }

    /// Source for the fundamental packing of the field's cluster type.
    pub fn fundamental(disc: Disc, kind: PackingKind) -> PackingSource {
        let flavor = ClusterFlavor::for_disc(&disc);
        let spec = ClusterSpaceSpec::for_flavor(flavor, disc);
        let gens = clusters::generators(flavor, &disc)
            .iter()
            .map(|g| mat::to_integer(g).expect("integral generator"))
            .collect();
        let base = clusters::base_for(flavor, &disc);
        match kind {
            PackingKind::Strip => PackingSource::new("fundamental-strip", spec, gens, base, Some(flavor.period())),
            PackingKind::Bounded => {
                let j = MobiusMap::from_coords(disc, [[(0, 0), (1, 0)], [(1, 0), (0, 1)]], false).expect("unit det");
                PackingSource::new("fundamental-bounded", spec, gens, base.apply_mobius(&j), None)
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Packing {
    pub disc: Disc,
    pub id: String,
    pub flavor: ClusterFlavor,
    pub max_curv: u64,
    /// Sorted by the circle order; strip packings list one circle per
    /// translation class.
    pub circles: Vec<OrientedCircle>,
    pub clusters_visited: usize,
    pub period: Option<i64>,
    pub clusters: Vec<Cluster>,
    /// Slack factor of the run that produced this result.
    pub slack: u64,
}

impl Packing {
    pub fn curvatures(&self) -> Vec<BigInt> {
        self.circles.iter().map(|c| c.n.clone()).collect()
    }
}

pub fn fundamental_packing(disc: Disc, kind: PackingKind, max_curv: u64) -> Result<Packing, PackingError> {
    generate_packing(&PackingSource::fundamental(disc, kind), &PackingOptions::new(max_curv))
}

#[derive(Debug)]
enum Fail {
    Overflow,
    Hard(PackingError),
}

trait Ent: Clone + Eq + Ord + Hash + Send + Sync + Debug {
    fn from_big(b: &BigInt) -> Result<Self, Fail>;
    fn to_big(&self) -> BigInt;
    fn add(&self, o: &Self) -> Result<Self, Fail>;
    fn mul(&self, o: &Self) -> Result<Self, Fail>;
    fn neg(&self) -> Result<Self, Fail>;
    fn sub(&self, o: &Self) -> Result<Self, Fail> {
        self.add(&o.neg()?)
    }
    /// (floor(self / d), self mod d)
    fn div_mod_floor(&self, d: &Self) -> (Self, Self);
    fn is_zero(&self) -> bool;
    fn abs_le(&self, b: u64) -> bool;
    fn small(x: i64) -> Self;
}

impl Ent for i128 {
    fn from_big(b: &BigInt) -> Result<Self, Fail> {
        b.to_i128().ok_or(Fail::Overflow)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn add(&self, o: &Self) -> Result<Self, Fail> {
        self.checked_add(*o).ok_or(Fail::Overflow)
    }
    fn mul(&self, o: &Self) -> Result<Self, Fail> {
        self.checked_mul(*o).ok_or(Fail::Overflow)
    }
    fn neg(&self) -> Result<Self, Fail> {
        self.checked_neg().ok_or(Fail::Overflow)
    }
    fn div_mod_floor(&self, d: &Self) -> (Self, Self) {
        Integer::div_mod_floor(self, d)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_le(&self, b: u64) -> bool {
        self.unsigned_abs() <= b as u128
    }
    fn small(x: i64) -> Self {
        x as i128
    }
}

impl Ent for BigInt {
    fn from_big(b: &BigInt) -> Result<Self, Fail> {
        Ok(b.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn add(&self, o: &Self) -> Result<Self, Fail> {
        Ok(self + o)
    }
    fn mul(&self, o: &Self) -> Result<Self, Fail> {
        Ok(self * o)
    }
    fn neg(&self) -> Result<Self, Fail> {
        Ok(-self)
    }
    fn div_mod_floor(&self, d: &Self) -> (Self, Self) {
        Integer::div_mod_floor(self, d)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_le(&self, b: u64) -> bool {
        self.abs() <= BigInt::from(b)
    }
    fn small(x: i64) -> Self {
        BigInt::from(x)
    }
}

type V<T> = [T; 4];
type Frame<T> = [V<T>; 4];
/// A child frame with the circles it introduces.
type Child<T> = (Frame<T>, Vec<V<T>>);

/// Translation z ↦ z + t on a vector (n′, n, v, 2m).
fn translate<T: Ent>(x: &V<T>, t: &T) -> Result<V<T>, Fail> {
    let two = T::small(2);
    let v = x[2].sub(&two.mul(&x[1])?.mul(t)?)?;
    let np = x[0].sub(&t.mul(&x[2])?)?.add(&x[1].mul(&t.mul(t)?)?)?;
    Ok([np, x[1].clone(), v, x[3].clone()])
}

/// Shift s with the centre of x (n ≠ 0) moved to real part in [0, p).
fn shift_into<T: Ent>(x: &V<T>, p: i64) -> Result<T, Fail> {
    // real part of the centre is −v/(2n)
    let num = x[2].neg()?;
    let den = T::small(2).mul(&x[1])?.mul(&T::small(p))?;
    let (num, den) = if den < T::small(0) { (num.neg()?, den.neg()?) } else { (num, den) };
    let (k, _) = num.div_mod_floor(&den);
    k.mul(&T::small(-p))
}

/// Representative of a vector modulo translation by Z: circles get their
/// centre into [0, 1), slanted lines get n′ into [0, |v|).
fn reduce_mod_one<T: Ent>(x: &V<T>) -> Result<V<T>, Fail> {
    if !x[1].is_zero() {
        let s = shift_into(x, 1)?;
        translate(x, &s)
    } else if !x[2].is_zero() {
        let v = &x[2];
        let av = if *v < T::small(0) { v.neg()? } else { v.clone() };
        let (_, r) = x[0].div_mod_floor(&av);
        let (s, _) = x[0].sub(&r)?.div_mod_floor(v);
        translate(x, &s)
    } else {
        Ok(x.clone())
    }
}

struct Ctx<'a, T> {
    gens: Vec<[[T; 4]; 4]>,
    coeffs: Vec<[T; 4]>,
    den: T,
    period: Option<i64>,
    bound: u64,
    limit: u64,
    src: &'a PackingSource,
}

impl<T: Ent> Ctx<'_, T> {
    fn right_mul(&self, x: &Frame<T>, g: &[[T; 4]; 4]) -> Result<Frame<T>, Fail> {
        let mut out: Frame<T> = std::array::from_fn(|_| std::array::from_fn(|_| T::small(0)));
        for j in 0..4 {
            for i in 0..4 {
                let mut s = T::small(0);
                for k in 0..4 {
                    if !g[k][j].is_zero() {
                        s = s.add(&x[k][i].mul(&g[k][j])?)?;
                    }
                }
                out[j][i] = s;
            }
        }
        Ok(out)
    }

    fn circles(&self, x: &Frame<T>) -> Result<Vec<V<T>>, Fail> {
        self.coeffs
            .iter()
            .map(|row| {
                let mut out: V<T> = std::array::from_fn(|_| T::small(0));
                for (i, o) in out.iter_mut().enumerate() {
                    let mut s = T::small(0);
                    for j in 0..4 {
                        if !row[j].is_zero() {
                            s = s.add(&row[j].mul(&x[j][i])?)?;
                        }
                    }
                    let (q, r) = s.div_mod_floor(&self.den);
                    if !r.is_zero() {
                        return Err(Fail::Hard(PackingError::Cluster(ClusterError::NotIntegral)));
                    }
                    *o = q;
                }
                Ok(out)
            })
            .collect()
    }

    fn canonical(&self, x: Frame<T>) -> Result<Frame<T>, Fail> {
        let Some(p) = self.period else { return Ok(x) };
        let mut sum: V<T> = std::array::from_fn(|_| T::small(0));
        for c in &x {
            for i in 0..4 {
                sum[i] = sum[i].add(&c[i])?;
            }
        }
        let anchor =
            if !sum[1].is_zero() { sum } else { x.iter().find(|c| !c[1].is_zero()).expect("frame spans").clone() };
        let s = shift_into(&anchor, p)?;
        if s.is_zero() {
            return Ok(x);
        }
        let mut out = x.clone();
        for c in out.iter_mut() {
            *c = translate(c, &s)?;
        }
        Ok(out)
    }

    /// Children worth expanding, with their circles.
    fn expand(&self, x: &Frame<T>, parent_circles: &[V<T>]) -> Result<Vec<Child<T>>, Fail> {
        let mut out = Vec::new();
        let limit = self.limit;
        for g in &self.gens {
            let child = self.right_mul(x, g)?;
            let cc = self.circles(&child)?;
            let fresh = cc.iter().any(|c| !parent_circles.contains(c) && c[1].abs_le(limit));
            if fresh {
                let canon = self.canonical(child)?;
                let cc = if self.period.is_some() { self.circles(&canon)? } else { cc };
                out.push((canon, cc));
            }
        }
        Ok(out)
    }
}

fn lift<T: Ent>(m: &ZMat) -> Result<[[T; 4]; 4], Fail> {
    let mut out: [[T; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| T::small(0)));
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = T::from_big(&m[i][j])?;
        }
    }
    Ok(out)
}

fn run<T: Ent>(src: &PackingSource, opts: &PackingOptions) -> Result<Packing, Fail> {
    let (num, den) = mat::common_denominator(&src.spec.coeffs);
    let coeffs = num
        .iter()
        .map(|r| Ok([T::from_big(&r[0])?, T::from_big(&r[1])?, T::from_big(&r[2])?, T::from_big(&r[3])?]))
        .collect::<Result<Vec<_>, Fail>>()?;
    let gens = src.gens.iter().map(lift::<T>).collect::<Result<Vec<_>, Fail>>()?;
    let ctx = Ctx {
        gens,
        coeffs,
        den: T::from_big(&den)?,
        period: src.period,
        bound: opts.max_curv,
        limit: opts.slack.saturating_mul(opts.max_curv),
        src,
    };

    let mut base: Frame<T> = std::array::from_fn(|_| std::array::from_fn(|_| T::small(0)));
    for j in 0..4 {
        for i in 0..4 {
            base[j][i] = T::from_big(&src.base.cols[j][i])?;
        }
    }
    let base = ctx.canonical(base)?;
    let base_circles = ctx.circles(&base)?;

    let mut seen: HashSet<Frame<T>> = HashSet::new();
    seen.insert(base.clone());
    let mut order: Vec<Frame<T>> = vec![base.clone()];
    let mut circle_vecs: BTreeSet<V<T>> = BTreeSet::new();
    let mut frontier = vec![(base, base_circles)];
    while !frontier.is_empty() {
        for (_, cc) in &frontier {
            for c in cc {
                if c[1].abs_le(ctx.bound) {
                    let r = if ctx.period.is_some() { reduce_mod_one(c)? } else { c.clone() };
                    circle_vecs.insert(r);
                }
            }
        }
        let children: Vec<Result<Vec<Child<T>>, Fail>> = frontier.par_iter().map(|(x, cc)| ctx.expand(x, cc)).collect();
        let mut next = Vec::new();
        for ch in children {
            for (x, cc) in ch? {
                if seen.insert(x.clone()) {
                    if opts.keep_clusters {
                        order.push(x.clone());
                    }
                    next.push((x, cc));
                }
            }
        }
        if seen.len() > opts.cluster_cap {
            return Err(Fail::Hard(PackingError::CapReached(opts.cluster_cap)));
        }
        frontier = next;
    }

    let disc = ctx.src.base.disc;
    let to_rvec = |v: &V<T>| -> RVec { std::array::from_fn(|i| v[i].to_big()) };
    let mut circles: Vec<OrientedCircle> = circle_vecs
        .iter()
        .map(|v| OrientedCircle::from_rvec(disc, &to_rvec(v)))
        .collect::<Result<_, _>>()
        .map_err(|e| Fail::Hard(PackingError::Cluster(e.into())))?;
    circles.sort();
    let clusters = if opts.keep_clusters {
        order.iter().map(|f| Cluster::new(disc, std::array::from_fn(|j| to_rvec(&f[j])))).collect()
    } else {
        Vec::new()
    };
    Ok(Packing {
        disc,
        id: src.id.clone(),
        flavor: src.spec.flavor,
        max_curv: opts.max_curv,
        circles,
        clusters_visited: seen.len(),
        period: src.period,
        clusters,
        slack: opts.slack,
    })
}

/// Breadth-first search from the base cluster. A child X·g is expanded when
/// one of the circles it adds has |n| ≤ slack·B; the result holds the
/// circles with |n| ≤ B.
///
/// Some fields (Δ = −15 is the worst of the supported ones) have circles of
/// curvature ≤ B that are only reached through clusters with much larger
/// circles, so slack 2 can miss a few. With `saturate` the slack is doubled
/// until two consecutive runs agree.
pub fn generate_packing(src: &PackingSource, opts: &PackingOptions) -> Result<Packing, PackingError> {
    if !src.base.is_valid(&src.spec) {
        return Err(PackingError::InvalidBase(src.spec.flavor.name()));
    }
    src.base.circle_vectors(&src.spec)?;
    if !opts.saturate {
        return run_any(src, opts);
    }
    let mut o = opts.clone();
    o.slack = o.slack.max(1);
    let mut prev = run_any(src, &o)?;
    loop {
        o.slack = o.slack.saturating_mul(2);
        let next = run_any(src, &o)?;
        if next.circles == prev.circles {
            return Ok(prev);
        }
        prev = next;
    }
}

fn run_any(src: &PackingSource, opts: &PackingOptions) -> Result<Packing, PackingError> {
    match run::<i128>(src, opts) {
        Ok(p) => Ok(p),
        Err(Fail::Hard(e)) => Err(e),
        Err(Fail::Overflow) => match run::<BigInt>(src, opts) {
            Ok(p) => Ok(p),
            Err(Fail::Hard(e)) => Err(e),
            Err(Fail::Overflow) => unreachable!("BigInt arithmetic does not overflow"),
        },
    }
}

/// Reduce a circle modulo translation by Z, as strip packings report them.
pub fn reduce_circle(c: &OrientedCircle) -> OrientedCircle {
    let v = c.rvec();
    let r = reduce_mod_one::<BigInt>(&v).expect("BigInt");
    OrientedCircle::from_rvec(c.disc, &r).expect("translation preserves the datum")
}

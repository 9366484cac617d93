//! Truncated Schmidt arrangements, immediate tangency, tangency graphs and
//! the Δ = −15 ghost chain.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::circle::{CircleError, MobiusMap, OrientedCircle, Side};
use crate::geom::Window;
use crate::qint::{rat, Disc, KNum, KPoint, OKElem};

pub use crate::packing::{fundamental_packing, generate_packing, Packing, PackingError, PackingKind, PackingOptions};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("α and β are not coprime")]
    NotCoprime,
    #[error("ghost chain is only defined for discriminant -15 (got {0})")]
    WrongDisc(i64),
    #[error(transparent)]
    Circle(#[from] CircleError),
}

#[derive(Debug, Clone)]
pub struct ArrangementQuery {
    pub disc: Disc,
    pub max_reduced_curv: u64,
    pub window: Window,
}

impl ArrangementQuery {
    pub fn fundamental(disc: Disc, max_reduced_curv: u64) -> ArrangementQuery {
        ArrangementQuery { disc, max_reduced_curv, window: Window::fundamental(&disc) }
    }
}

/// Smallest N with 3N² ≥ 4B²|Δ|, i.e. N = ⌈2B√|Δ|/√3⌉.
pub fn denominator_bound(disc: &Disc, b: u64) -> i64 {
    let target = 4 * (b as i128) * (b as i128) * disc.abs() as i128;
    let mut n = ((target as f64 / 3.0).sqrt()) as i128;
    while n > 0 && 3 * (n - 1) * (n - 1) >= target {
        n -= 1;
    }
    while 3 * n * n < target {
        n += 1;
    }
    n as i64
}

/// The k-th member of the u-family of circles through α/β:
/// M = [[α, uγ + kτα], [β, uδ + kτβ]].
pub fn tangent_family(
    disc: Disc,
    alpha: &OKElem,
    beta: &OKElem,
    u: &OKElem,
    k: i64,
) -> Result<OrientedCircle, ArrangementError> {
    let (g, d) = disc.bezout(alpha, beta).ok_or(ArrangementError::NotCoprime)?;
    Ok(family_member(disc, alpha, beta, &g, &d, u, k).circle())
}

fn family_member(disc: Disc, alpha: &OKElem, beta: &OKElem, g: &OKElem, d: &OKElem, u: &OKElem, k: i64) -> MobiusMap {
    let kt = OKElem::new(0, k);
    let b = disc.mul(u, g) + disc.mul(&kt, alpha);
    let dd = disc.mul(u, d) + disc.mul(&kt, beta);
    MobiusMap::new(disc, alpha.clone(), b, beta.clone(), dd, false).expect("unit determinant")
}

/// Reduced curvature of the k = 0 member: −v(β·conj(uδ)).
fn family_base_curv(disc: &Disc, beta: &OKElem, u: &OKElem, delta: &OKElem) -> BigInt {
    -disc.mul(beta, &disc.conj(&disc.mul(u, delta))).v
}

/// Determinants allowed for witnesses: ±1. For Q(i) a determinant ±i would
/// give the second copy of the arrangement, rotated by a right angle.
fn witness_dets(disc: &Disc) -> [OKElem; 2] {
    [disc.one(), -disc.one()]
}

/// Representative of β modulo units: the largest of its associates.
fn unit_canonical(disc: &Disc, x: &OKElem) -> OKElem {
    disc.units().iter().map(|u| disc.mul(u, x)).max().unwrap()
}

/// Integer points α with α/β in the τ-coordinate box [x0, x1] × [y0, y1].
fn alphas_in_box(disc: &Disc, beta: &OKElem, bx: &(BigRational, BigRational, BigRational, BigRational)) -> Vec<OKElem> {
    let bt = disc.mul(beta, &disc.tau());
    let mut lo = [None::<BigRational>, None];
    let mut hi = [None::<BigRational>, None];
    for x in [&bx.0, &bx.1] {
        for y in [&bx.2, &bx.3] {
            let cu = x * BigRational::from_integer(beta.u.clone()) + y * BigRational::from_integer(bt.u.clone());
            let cv = x * BigRational::from_integer(beta.v.clone()) + y * BigRational::from_integer(bt.v.clone());
            for (i, c) in [cu, cv].into_iter().enumerate() {
                if lo[i].as_ref().is_none_or(|l| c < *l) {
                    lo[i] = Some(c.clone());
                }
                if hi[i].as_ref().is_none_or(|h| c > *h) {
                    hi[i] = Some(c);
                }
            }
        }
    }
    let (u0, u1) = (lo[0].as_ref().unwrap().floor().to_integer(), hi[0].as_ref().unwrap().ceil().to_integer());
    let (v0, v1) = (lo[1].as_ref().unwrap().floor().to_integer(), hi[1].as_ref().unwrap().ceil().to_integer());
    let mut out = Vec::new();
    let mut v = v0;
    while v <= v1 {
        let mut u = u0.clone();
        while u <= u1 {
            out.push(OKElem::from_big(u.clone(), v.clone()));
            u += 1;
        }
        v += 1;
    }
    out
}

/// Every oriented K-Bianchi circle with |n| ≤ B meeting the window, sorted
/// by (|n|, n, u, v, n′). Each circle carries a witness.
pub fn enumerate_arrangement(q: &ArrangementQuery) -> Vec<OrientedCircle> {
    let disc = q.disc;
    let b = BigInt::from(q.max_reduced_curv);
    let nb = denominator_bound(&disc, q.max_reduced_curv);
    let units = witness_dets(&disc);

    let (x0, x1, y0, y1) = q.window.bbox();
    // a circle of reduced curvature n ≥ 1 lies within 2/√|Δ| of each of its points
    let margin_sq = rat(4, disc.abs());
    let margin_f = 4.0 / disc.abs() as f64;
    let fw = q.window.float_view(&disc);
    let f = |x: &BigInt| x.to_f64().unwrap_or(f64::NAN);
    let root = (disc.abs() as f64).sqrt().floor() as i64;
    let mre = rat(2, root);
    let my = rat(4, disc.abs());
    let mx = &mre + &my * rat(disc.eps(), 2);
    let bx = (x0 - &mx, x1 + &mx, y0 - &my, y1 + &my);

    let mut betas: Vec<OKElem> =
        disc.elements_up_to_norm(nb).into_iter().filter(|x| !x.is_zero()).map(|x| unit_canonical(&disc, &x)).collect();
    betas.dedup();
    let mut seen_b = std::collections::HashSet::new();
    betas.retain(|x| seen_b.insert(x.clone()));

    let finite: Vec<Vec<OrientedCircle>> = betas
        .par_iter()
        .map(|beta| {
            let nbeta = disc.norm(beta);
            let mut out = Vec::new();
            for alpha in alphas_in_box(&disc, beta, &bx) {
                let (a, bf) = (fw.point(f(&alpha.u), f(&alpha.v)), fw.point(f(&beta.u), f(&beta.v)));
                let nb2 = bf.0 * bf.0 + bf.1 * bf.1;
                let zf = ((a.0 * bf.0 + a.1 * bf.1) / nb2, (a.1 * bf.0 - a.0 * bf.1) / nb2);
                let far = fw.farther_than(zf, margin_f).unwrap_or_else(|| {
                    let z = alpha.to_knum().div(&disc, &beta.to_knum()).unwrap();
                    q.window.dist_sq(&disc, &z) > margin_sq
                });
                if far {
                    continue;
                }
                let (g, d) = match disc.bezout(&alpha, beta) {
                    Some(p) => p,
                    None => continue,
                };
                for u in &units {
                    let n0 = family_base_curv(&disc, beta, u, &d);
                    // |n0 + k N(β)| ≤ B
                    let kmin = (-&b - &n0).div_ceil(&nbeta);
                    let kmax = (&b - &n0).div_floor(&nbeta);
                    let mut k = kmin;
                    while k <= kmax {
                        let m = family_member(disc, &alpha, beta, &g, &d, u, k.to_i64().unwrap());
                        let c = m.circle();
                        if q.window.meets_with(&disc, &fw, &c) {
                            out.push(c);
                        }
                        k += 1;
                    }
                }
            }
            out
        })
        .collect();

    let mut found: BTreeMap<OrientedCircle, OrientedCircle> = BTreeMap::new();
    for c in lines_through_infinity(&disc, &q.window).into_iter().chain(finite.into_iter().flatten()) {
        found.entry(c.without_witness()).or_insert(c);
    }
    found.into_values().collect()
}

/// Lines through ∞ meeting the window: [[1, kτ], [0, u]](R̂).
fn lines_through_infinity(disc: &Disc, window: &Window) -> Vec<OrientedCircle> {
    let (x0, x1, y0, y1) = window.bbox();
    let ext = [x0, x1, y0, y1].iter().map(|v| v.abs().ceil().to_integer()).max().unwrap();
    let kmax = ext.to_i64().unwrap_or(i64::MAX / 4) + 2;
    let mut out = Vec::new();
    for u in witness_dets(disc) {
        for k in -kmax..=kmax {
            let m = MobiusMap::new(*disc, disc.one(), OKElem::new(0, k), disc.zero(), u.clone(), false).unwrap();
            let c = m.circle();
            if window.meets(disc, &c) {
                out.push(c);
            }
        }
    }
    out
}

fn holomorphic_witness(c: &OrientedCircle) -> Result<MobiusMap, CircleError> {
    let m = c.witness.clone().ok_or(CircleError::NoWitness)?;
    if !m.conj {
        return Ok(m);
    }
    // M∘conj(R̂) = M(−R̂) = M·diag(−1, 1)(R̂)
    let plain = MobiusMap::new(m.disc, m.a.clone(), m.b.clone(), m.c.clone(), m.d.clone(), false).unwrap();
    Ok(plain.compose(&MobiusMap::from_ints(m.disc, [[-1, 0], [0, 1]], false).unwrap()))
}

/// The unique oriented circle immediately tangent to C at the K-point x.
pub fn immediate_tangent(c: &OrientedCircle, x: &KPoint) -> Result<OrientedCircle, CircleError> {
    let disc = c.disc;
    if !c.contains_point(x) {
        return Err(CircleError::NotOnCircle);
    }
    let m = holomorphic_witness(c)?;
    let y = m.inverse().apply_point(x);
    let (p, q) = match &y {
        KPoint::Infinity => (BigInt::from(1), BigInt::zero()),
        KPoint::Finite(z) if z.y.is_zero() => (z.x.numer().clone(), z.x.denom().clone()),
        _ => return Err(CircleError::NotOnCircle),
    };
    let eg = p.extended_gcd(&q);
    debug_assert!(eg.gcd == BigInt::from(1) || eg.gcd == BigInt::from(-1));
    let (s, r) = if eg.gcd == BigInt::from(1) { (eg.x, -eg.y) } else { (-eg.x, eg.y) };
    let el = |a: &BigInt| OKElem::from_big(a.clone(), BigInt::zero());
    let n = MobiusMap::new(disc, el(&p), el(&r), el(&q), el(&s), false)?;
    let mp = m.compose(&n).compose(&MobiusMap::v_map(disc));
    Ok(mp.circle())
}

/// Search for a witness matrix M with M(R̂) = C among K-points α/β of C with
/// N(β) ≤ max_norm.
pub fn find_witness(c: &OrientedCircle, max_norm: i64) -> Option<MobiusMap> {
    let disc = c.disc;
    let units = witness_dets(&disc);
    if c.is_line() {
        let kmax = c.nprime.abs().to_i64()? + 2;
        for u in &units {
            for k in -kmax..=kmax {
                let m = MobiusMap::new(disc, disc.one(), OKElem::new(0, k), disc.zero(), u.clone(), false).unwrap();
                if m.circle() == *c {
                    return Some(m);
                }
            }
        }
    }
    let ctr = c.center().unwrap_or_else(KNum::zero);
    let root = (disc.abs() as f64).sqrt().floor() as i64;
    let (rx, ry) = if c.is_line() {
        (BigRational::from_integer(BigInt::from(max_norm + 2)), BigRational::from_integer(BigInt::from(max_norm + 2)))
    } else {
        let r = BigRational::new(BigInt::from(1), c.n.abs() * BigInt::from(root));
        (&r + &r, &r * rat(2, 1))
    };
    let bx = (&ctr.x - &rx, &ctr.x + &rx, &ctr.y - &ry, &ctr.y + &ry);
    for beta in disc.elements_up_to_norm(max_norm) {
        if beta.is_zero() {
            continue;
        }
        let nbeta = disc.norm(&beta);
        for alpha in alphas_in_box(&disc, &beta, &bx) {
            let z = KPoint::Finite(alpha.to_knum().div(&disc, &beta.to_knum()).unwrap());
            if !c.contains_point(&z) {
                continue;
            }
            let (g, d) = match disc.bezout(&alpha, &beta) {
                Some(p) => p,
                None => continue,
            };
            for u in &units {
                let n0 = family_base_curv(&disc, &beta, u, &d);
                let diff = &c.n - &n0;
                if !diff.is_multiple_of(&nbeta) {
                    continue;
                }
                let k = (diff / &nbeta).to_i64()?;
                let m = family_member(disc, &alpha, &beta, &g, &d, u, k);
                if m.circle() == *c {
                    return Some(m);
                }
            }
        }
    }
    None
}

/// Whether some circle of P has points inside C and some has points outside.
pub fn straddles(p: &[OrientedCircle], c: &OrientedCircle) -> bool {
    let mut inside = false;
    let mut outside = false;
    for d in p {
        match c.side_of(d) {
            Some(Side::Interior) => inside = true,
            Some(Side::Exterior) => outside = true,
            Some(Side::Both) => return true,
            _ => {}
        }
    }
    inside && outside
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFlavor {
    AllTangencies,
    ImmediateOnly,
}

#[derive(Debug, Clone)]
pub struct TangencyGraph {
    pub vertices: Vec<OrientedCircle>,
    pub edges: Vec<(usize, usize, KPoint)>,
    pub flavor: GraphFlavor,
}

impl TangencyGraph {
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|(a, b, _)| *a == v || *b == v).count()
    }
}

/// Pairs (i, j), i < j, with Pedoe product exactly −1.
pub fn external_tangencies(circles: &[OrientedCircle]) -> Vec<(usize, usize)> {
    let small: Option<Vec<[i64; 5]>> = circles
        .iter()
        .map(|c| Some([c.n.to_i64()?, c.nprime.to_i64()?, c.w.u.to_i64()?, c.w.v.to_i64()?, 0]))
        .collect();
    let n = circles.len();
    let rows: Vec<Vec<(usize, usize)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            for j in i + 1..n {
                let p = match &small {
                    Some(s) if circles[i].disc == circles[j].disc => pedoe2_i64(&circles[i].disc, &s[i], &s[j]),
                    _ => None,
                };
                let p = match p {
                    Some(v) => v == -2,
                    None => circles[i].pedoe2(&circles[j]) == BigInt::from(-2),
                };
                if p {
                    out.push((i, j));
                }
            }
            out
        })
        .collect();
    rows.into_iter().flatten().collect()
}

fn pedoe2_i64(disc: &Disc, a: &[i64; 5], b: &[i64; 5]) -> Option<i128> {
    let (n1, p1, u1, v1) = (a[0] as i128, a[1] as i128, a[2] as i128, a[3] as i128);
    let (n2, p2, u2, v2) = (b[0] as i128, b[1] as i128, b[2] as i128, b[3] as i128);
    let e = disc.eps() as i128;
    let c2 = 2 * disc.tau_norm() as i128;
    let t = (2 * u1).checked_mul(u2)?;
    let t = t.checked_add(e.checked_mul(u1.checked_mul(v2)?.checked_add(v1.checked_mul(u2)?)?)?)?;
    let t = t.checked_add(c2.checked_mul(v1.checked_mul(v2)?)?)?;
    let s = p1.checked_mul(n2)?.checked_add(n1.checked_mul(p2)?)?;
    t.checked_sub((disc.abs() as i128).checked_mul(s)?)
}

/// Tangency graph on the given circles. The immediate flavour keeps an
/// externally tangent pair when one circle is the immediate tangent of the
/// other at their common point; circles without witnesses get one from
/// [`find_witness`].
pub fn build_graph(circles: &[OrientedCircle], flavor: GraphFlavor) -> TangencyGraph {
    let mut vertices: Vec<OrientedCircle> = circles.to_vec();
    vertices.sort();
    vertices.dedup();
    if flavor == GraphFlavor::ImmediateOnly {
        vertices.par_iter_mut().for_each(|c| {
            if c.witness.is_none() {
                let bound = (c.n.abs().to_i64().unwrap_or(0) + 1) * 4;
                c.witness = find_witness(c, bound);
            }
        });
    }
    let pairs = external_tangencies(&vertices);
    let edges: Vec<Option<(usize, usize, KPoint)>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let x = vertices[i].tangency_point(&vertices[j]).ok()?;
            if flavor == GraphFlavor::ImmediateOnly {
                let t = immediate_tangent(&vertices[i], &x).ok()?;
                if t != vertices[j] {
                    return None;
                }
            }
            Some((i, j, x))
        })
        .collect();
    TangencyGraph { vertices, edges: edges.into_iter().flatten().collect(), flavor }
}

/// A fundamental system of cycles, each a closed vertex path; empty iff the
/// graph is a forest.
pub fn cycle_check(g: &TangencyGraph) -> Vec<Vec<usize>> {
    let n = g.vertices.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    let mut forest: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut closing = Vec::new();
    for (a, b, _) in &g.edges {
        let (ra, rb) = (find(&mut parent, *a), find(&mut parent, *b));
        if ra == rb {
            closing.push((*a, *b));
        } else {
            parent[ra] = rb;
            forest[*a].push(*b);
            forest[*b].push(*a);
        }
    }
    closing
        .into_iter()
        .map(|(a, b)| {
            // path a → b in the spanning forest
            let mut prev = vec![usize::MAX; n];
            prev[a] = a;
            let mut queue = VecDeque::from([a]);
            while let Some(x) = queue.pop_front() {
                if x == b {
                    break;
                }
                for &y in &forest[x] {
                    if prev[y] == usize::MAX {
                        prev[y] = x;
                        queue.push_back(y);
                    }
                }
            }
            let mut path = vec![b];
            let mut x = b;
            while x != a {
                x = prev[x];
                path.push(x);
            }
            path.reverse();
            path
        })
        .collect()
}

/// G: centre 1/2 − 7√−15/30, radius 1/√15, as the datum (1, 1, −3 − τ).
pub fn ghost_base(disc: &Disc) -> Result<OrientedCircle, ArrangementError> {
    if disc.delta() != -15 {
        return Err(ArrangementError::WrongDisc(disc.delta()));
    }
    Ok(OrientedCircle::from_ints(*disc, 1, 1, (-3, -1))?)
}

/// {G′ + k, G″ + k : 0 ≤ k ≤ count} where G′ is the reflection of G in R̂ and
/// G″ = G + τ − 1. The first two entries are G′ and G″.
pub fn ghost_chain(disc: &Disc, count: u32) -> Result<Vec<OrientedCircle>, ArrangementError> {
    let g = ghost_base(disc)?;
    let g1 = g.apply(&MobiusMap::from_ints(*disc, [[1, 0], [0, 1]], true).unwrap());
    let g2 = g.apply(&MobiusMap::translation(*disc, OKElem::new(-1, 1)));
    debug_assert_eq!(g1.tangency_point(&g2).ok(), Some(KPoint::Finite(KNum::new(rat(0, 1), rat(1, 2)))));
    let mut out = Vec::new();
    for k in 0..=count as i64 {
        let t = MobiusMap::translation(*disc, OKElem::new(k, 0));
        out.push(g1.apply(&t));
        out.push(g2.apply(&t));
    }
    Ok(out)
}

/// Whether two circles share a point (|⟨C1, C2⟩| ≤ 1).
pub fn circles_meet(a: &OrientedCircle, b: &OrientedCircle) -> bool {
    a.pedoe2(b).abs() <= BigInt::from(2)
}

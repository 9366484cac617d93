//! Topographical groups, the topograph, and registries of Apollonian groups
//! with their geometric (Möbius) and algebraic (right multiplication)
//! generators.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arrangement::immediate_tangent;
use crate::circle::{gram4, MinkMat, MobiusMap, OrientedCircle, RVec};
use crate::clusters::{self, Cluster, ClusterFlavor, ClusterSpaceSpec};
use crate::data;
use crate::mat::{self, QMat, ZMat};
use crate::qint::{Disc, DiscError, KPoint, OKElem};

pub type IntMat2 = [[i64; 2]; 2];

pub fn mul2(a: &IntMat2, b: &IntMat2) -> IntMat2 {
    let mut o = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            o[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    o
}

/// Equality in PGL₂(Z).
pub fn proj_eq(a: &IntMat2, b: &IntMat2) -> bool {
    *a == *b || *a == [[-b[0][0], -b[0][1]], [-b[1][0], -b[1][1]]]
}

/// (γ₁, γ₂, γ₃) and (ρ₁, ρ₂, ρ₃).
pub fn topograph_generators() -> ([IntMat2; 3], [IntMat2; 3]) {
    (data::GAMMA, data::RHO)
}

/// A point of Q̂ as a primitive vector (p, q) with q > 0, or (1, 0) for ∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPoint(pub i64, pub i64);

impl QPoint {
    pub fn new(p: i64, q: i64) -> QPoint {
        let g = num_integer::gcd(p, q);
        assert!(g != 0, "0/0 is not a point");
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        QPoint(p, q)
    }

    pub fn infinity() -> QPoint {
        QPoint(1, 0)
    }

    pub fn to_kpoint(&self) -> KPoint {
        if self.1 == 0 {
            KPoint::Infinity
        } else {
            KPoint::rational(self.0, self.1)
        }
    }
}

impl std::fmt::Display for QPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QPoint(_, 0) => write!(f, "inf"),
            QPoint(p, 1) => write!(f, "{p}"),
            QPoint(p, q) => write!(f, "{p}/{q}"),
        }
    }
}

/// Three points of Q̂, pairwise unimodular, kept sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Superbasis(pub [QPoint; 3]);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("points are not pairwise unimodular")]
    NotSuperbasis,
    #[error("generator index {0} out of range")]
    BadGenerator(usize),
    #[error(transparent)]
    Disc(#[from] DiscError),
}

impl Superbasis {
    pub fn new(points: [QPoint; 3]) -> Result<Superbasis, GroupError> {
        let det = |a: &QPoint, b: &QPoint| a.0 * b.1 - a.1 * b.0;
        let [a, b, c] = points;
        if det(&a, &b).abs() != 1 || det(&b, &c).abs() != 1 || det(&a, &c).abs() != 1 {
            return Err(GroupError::NotSuperbasis);
        }
        let mut p = points;
        p.sort();
        Ok(Superbasis(p))
    }

    /// {0, 1, ∞}.
    pub fn base() -> Superbasis {
        Superbasis::new([QPoint::new(0, 1), QPoint::new(1, 1), QPoint::infinity()]).unwrap()
    }

    /// φ(g) = {g·e₁, g·e₂, g·(e₁ + e₂)}.
    pub fn of_matrix(g: &IntMat2) -> Superbasis {
        let a = QPoint::new(g[0][0], g[1][0]);
        let b = QPoint::new(g[0][1], g[1][1]);
        let c = QPoint::new(g[0][0] + g[0][1], g[1][0] + g[1][1]);
        Superbasis::new([a, b, c]).expect("unimodular matrix")
    }

    /// A matrix g in SL₂(Z) with φ(g) = self; the identity for {0, 1, ∞}.
    pub fn matrix(&self) -> IntMat2 {
        let [a, b, c] = self.0;
        for (x, y, z) in [(a, b, c), (b, a, c), (a, c, b), (c, a, b), (b, c, a), (c, b, a)] {
            for sx in [1, -1] {
                for sy in [1, -1] {
                    let g = [[sx * x.0, sy * y.0], [sx * x.1, sy * y.1]];
                    if g[0][0] * g[1][1] - g[0][1] * g[1][0] == 1
                        && QPoint::new(g[0][0] + g[0][1], g[1][0] + g[1][1]) == z
                    {
                        return g;
                    }
                }
            }
        }
        unreachable!("superbasis always has a compatible sign choice")
    }

    pub fn points(&self) -> [QPoint; 3] {
        self.0
    }

    pub fn shares(&self, o: &Superbasis) -> usize {
        self.0.iter().filter(|p| o.0.contains(p)).count()
    }
}

impl std::fmt::Display for Superbasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// Right multiplication by γ_{w₁}γ_{w₂}… starting from a matrix for `start`.
pub fn topograph_walk(start: &Superbasis, word: &[usize]) -> Result<Superbasis, GroupError> {
    let mut g = start.matrix();
    for &i in word {
        let gi = data::GAMMA.get(i).ok_or(GroupError::BadGenerator(i))?;
        g = mul2(&g, gi);
    }
    Ok(Superbasis::of_matrix(&g))
}

#[derive(Debug, Clone)]
pub struct TopographGraph {
    pub vertices: Vec<Superbasis>,
    pub edges: Vec<(usize, usize)>,
    pub depth: Vec<usize>,
}

impl TopographGraph {
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn is_tree(&self) -> bool {
        let n = self.vertices.len();
        if self.edges.len() + 1 != n {
            return false;
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn edge_set(&self) -> BTreeSet<(Superbasis, Superbasis)> {
        self.edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (self.vertices[a], self.vertices[b]);
                if x < y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect()
    }
}

/// Breadth-first search over the Cayley graph of ⟨γ₁, γ₂, γ₃⟩ from {0,1,∞}.
/// Every edge discovered is kept, so a repeated superbasis would show up as
/// a cycle.
pub fn topograph_bfs(depth: usize) -> TopographGraph {
    let start = Superbasis::base();
    let mut index: HashMap<Superbasis, usize> = HashMap::new();
    let mut g = TopographGraph { vertices: vec![start], edges: Vec::new(), depth: vec![0] };
    index.insert(start, 0);
    let mut queue = VecDeque::from([(0usize, start.matrix(), None::<usize>)]);
    while let Some((v, m, came)) = queue.pop_front() {
        if g.depth[v] == depth {
            continue;
        }
        for (i, gi) in data::GAMMA.iter().enumerate() {
            if Some(i) == came {
                continue;
            }
            let child = mul2(&m, gi);
            let sb = Superbasis::of_matrix(&child);
            let w = match index.get(&sb) {
                Some(&w) => w,
                None => {
                    let w = g.vertices.len();
                    g.vertices.push(sb);
                    g.depth.push(g.depth[v] + 1);
                    index.insert(sb, w);
                    queue.push_back((w, child, Some(i)));
                    w
                }
            };
            g.edges.push((v, w));
        }
    }
    g
}

/// Superbases adjacent to s: those sharing two of its points.
pub fn superbasis_neighbours(s: &Superbasis) -> Vec<Superbasis> {
    let p = s.0;
    let mut out = Vec::new();
    for (a, b, c) in [(p[0], p[1], p[2]), (p[0], p[2], p[1]), (p[1], p[2], p[0])] {
        // the two points completing {a, b} are a ± b
        for sg in [1, -1] {
            let q = QPoint::new(a.0 + sg * b.0, a.1 + sg * b.1);
            if q != c {
                out.push(Superbasis::new([a, b, q]).unwrap());
            }
        }
    }
    out.sort();
    out
}

/// R̂ oriented with the upper half-plane as exterior, the orientation it
/// carries in the fundamental packings, with witness z ↦ −z.
pub fn packing_real_line(disc: Disc) -> OrientedCircle {
    let m = MobiusMap::from_ints(disc, [[-1, 0], [0, 1]], false).unwrap();
    let c = m.circle();
    debug_assert_eq!(c, OrientedCircle::real_line(disc).reversed());
    c
}

/// The packing's R̂ followed by the circles immediately tangent to it at
/// the points of a superbasis.
pub fn prong(disc: Disc, s: &Superbasis) -> Vec<OrientedCircle> {
    let r = packing_real_line(disc);
    let mut out = vec![r.clone()];
    for p in s.points() {
        out.push(immediate_tangent(&r, &p.to_kpoint()).expect("rational points lie on R̂"));
    }
    out
}

#[derive(Debug, Clone)]
pub struct GroupRegistryEntry {
    pub name: String,
    pub disc: Disc,
    pub flavor: ClusterFlavor,
    pub spec: ClusterSpaceSpec,
    pub geometric: Vec<MobiusMap>,
    pub algebraic: Vec<QMat>,
    pub base: Cluster,
    /// Words (0-based generator indices) that must act trivially.
    pub relations: Vec<Vec<usize>>,
    /// Whether the group is the free product of its order-2 generators.
    pub free_product: bool,
}

impl GroupRegistryEntry {
    pub fn r(&self) -> &QMat {
        &self.spec.r
    }

    pub fn algebraic_int(&self) -> Vec<ZMat> {
        self.algebraic.iter().map(|g| mat::to_integer(g).expect("integral generator")).collect()
    }

    pub fn geometric_word(&self, word: &[usize]) -> MobiusMap {
        word.iter().fold(MobiusMap::identity(self.disc), |m, &i| m.compose(&self.geometric[i]))
    }

    pub fn algebraic_word(&self, word: &[usize]) -> QMat {
        mat::word_product(&self.algebraic, word)
    }
}

fn entry(name: &str, disc: Disc, flavor: ClusterFlavor, geometric: Vec<MobiusMap>) -> GroupRegistryEntry {
    let spec = ClusterSpaceSpec::for_flavor(flavor, disc);
    let algebraic = clusters::generators(flavor, &disc);
    let base = clusters::base_for(flavor, &disc);
    let k = algebraic.len();
    let mut relations: Vec<Vec<usize>> = (0..k).map(|i| vec![i, i]).collect();
    let free_product = flavor != ClusterFlavor::GeneralK;
    if !free_product {
        relations.push(vec![3, 0, 1, 2, 3, 0, 1, 2]);
    }
    GroupRegistryEntry {
        name: name.to_string(),
        disc,
        flavor,
        spec,
        geometric,
        algebraic,
        base,
        relations,
        free_product,
    }
}

fn maps(disc: Disc, coords: &[[[(i64, i64); 2]; 2]], conj: bool) -> Vec<MobiusMap> {
    coords.iter().map(|c| data::mobius(disc, c, conj)).collect()
}

fn general_entry(disc: Disc) -> GroupRegistryEntry {
    let name = if disc.delta() == -4 { "A0_Q(i)".to_string() } else { format!("A0_K({})", disc.delta()) };
    entry(&name, disc, ClusterFlavor::GeneralK, maps(disc, &data::SIXMOB, false))
}

/// Every group the registry knows for a discriminant. Q(i) carries both its
/// Descartes group and the general K-cluster group.
pub fn registry_entries(disc: Disc) -> Vec<GroupRegistryEntry> {
    match disc.delta() {
        -4 => {
            vec![entry("A_Q(i)", disc, ClusterFlavor::Descartes, maps(disc, &data::QI_MOB, true)), general_entry(disc)]
        }
        -8 => vec![entry("A_Q(sqrt-2)", disc, ClusterFlavor::Cube, maps(disc, &data::CUBE_MOB, true))],
        -7 => vec![entry("A_Q(sqrt-7)", disc, ClusterFlavor::Tent7, maps(disc, &data::TENT7_MOB, false))],
        -11 => vec![entry("A_Q(sqrt-11)", disc, ClusterFlavor::Tent11, maps(disc, &data::TENT11_MOB, true))],
        _ => vec![general_entry(disc)],
    }
}

/// The primary group for a discriminant.
pub fn registry(disc: Disc) -> GroupRegistryEntry {
    registry_entries(disc).remove(0)
}

/// The discriminants exercised by the verification suite.
pub const SUPPORTED: [i64; 9] = [-4, -8, -7, -11, -15, -19, -20, -23, -24];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Check {
        Check { name: name.to_string(), passed, detail: detail.into() }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

/// g² = I and gᵀRg = R for every algebraic generator.
pub fn check_generators(e: &GroupRegistryEntry) -> Check {
    let bad: Vec<usize> = e
        .algebraic
        .iter()
        .enumerate()
        .filter(|(_, g)| !clusters::is_involution(g) || !clusters::preserves(g, e.r()))
        .map(|(i, _)| i + 1)
        .collect();
    Check::new(
        "generators",
        bad.is_empty(),
        if bad.is_empty() { "all involutions in O_R".into() } else { format!("failing generators {bad:?}") },
    )
}

/// σ_W(ρ(g_i)) = alg_i, then dual-path agreement on random words.
pub fn check_correspondence(e: &GroupRegistryEntry, words: usize, max_len: usize, seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    let bad: Vec<usize> = e
        .geometric
        .iter()
        .zip(&e.algebraic)
        .enumerate()
        .filter(|(_, (g, a))| clusters::sigma(&e.base, g) != **a)
        .map(|(i, _)| i + 1)
        .collect();
    out.push(Check::new(
        "index alignment",
        bad.is_empty() && e.geometric.len() == e.algebraic.len(),
        if bad.is_empty() { "sigma(rho(g_i)) = alg_i".into() } else { format!("mismatched generators {bad:?}") },
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ints = e.algebraic_int();
    let k = e.geometric.len();
    let mut failures = 0;
    for _ in 0..words {
        let len = rng.gen_range(0..=max_len);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..k)).collect();
        let geo = e.base.apply_mobius(&e.geometric_word(&word));
        let alg = word.iter().fold(e.base.clone(), |x, &i| x.right_mul(&ints[i]));
        if geo != alg {
            failures += 1;
        }
    }
    out.push(Check::new(
        "dual path",
        failures == 0,
        format!("{words} random words of length <= {max_len}, {failures} disagreements"),
    ));
    out
}

fn int_mul(a: &[[i128; 4]; 4], b: &[[i128; 4]; 4]) -> Option<[[i128; 4]; 4]> {
    let mut o = [[0i128; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut s: i128 = 0;
            for k in 0..4 {
                s = s.checked_add(a[i][k].checked_mul(b[k][j])?)?;
            }
            o[i][j] = s;
        }
    }
    Some(o)
}

fn to_i128(m: &ZMat) -> [[i128; 4]; 4] {
    std::array::from_fn(|i| std::array::from_fn(|j| i128::try_from(&m[i][j]).expect("small generator entry")))
}

type M4 = [[i128; 4]; 4];

const I4: M4 = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];

/// Visit the products of all reduced words (no letter repeated twice in a
/// row) of length 1..=max_len. The callback sees the word and its matrix.
pub fn for_reduced_words(gens: &[ZMat], max_len: usize, mut f: impl FnMut(&[usize], &[[i128; 4]; 4])) -> bool {
    let g: Vec<[[i128; 4]; 4]> = gens.iter().map(to_i128).collect();
    let mut word = Vec::new();
    fn rec(
        g: &[[[i128; 4]; 4]],
        m: &[[i128; 4]; 4],
        word: &mut Vec<usize>,
        max_len: usize,
        f: &mut dyn FnMut(&[usize], &M4),
    ) -> bool {
        if word.len() == max_len {
            return true;
        }
        for i in 0..g.len() {
            if word.last() == Some(&i) {
                continue;
            }
            let Some(next) = int_mul(m, &g[i]) else {
                return false;
            };
            word.push(i);
            f(word, &next);
            let ok = rec(g, &next, word, max_len, f);
            word.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    rec(&g, &I4, &mut word, max_len, &mut f)
}

/// Orders of the generators, the listed relations, and for free products
/// the absence of relations among reduced words of length ≤ max_len.
pub fn check_presentation(e: &GroupRegistryEntry, max_len: usize) -> Vec<Check> {
    let mut out = vec![check_generators(e)];
    let bad: Vec<String> =
        e.relations.iter().filter(|w| !mat::is_identity(&e.algebraic_word(w))).map(|w| format!("{w:?}")).collect();
    out.push(Check::new(
        "relations",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} relations hold", e.relations.len())
        } else {
            format!("failing {}", bad.join(", "))
        },
    ));
    if e.flavor == ClusterFlavor::GeneralK {
        let lhs = e.algebraic_word(&[3, 0, 1, 2]);
        let rhs = e.algebraic_word(&[2, 1, 0, 3]);
        out.push(Check::new("r s1 s2 s3 = s3 s2 s1 r", lhs == rhs, "exact 4x4 identity"));
    }
    if e.free_product {
        let mut trivial = Vec::new();
        let mut count = 0usize;
        let complete = for_reduced_words(&e.algebraic_int(), max_len, |w, m| {
            count += 1;
            if *m == I4 {
                trivial.push(w.to_vec());
            }
        });
        out.push(Check::new(
            "no short relations",
            complete && trivial.is_empty(),
            if !complete {
                "overflow while multiplying words".to_string()
            } else if trivial.is_empty() {
                format!("{count} reduced words of length <= {max_len} act nontrivially")
            } else {
                format!("trivial words {:?}", &trivial[..trivial.len().min(5)])
            },
        ));
    }
    out
}

/// z ↦ z + t for some integer t ≠ 0, as a geometric word of length ≤ max_len.
pub fn find_translation_word(e: &GroupRegistryEntry, max_len: usize) -> Option<(Vec<usize>, i64)> {
    let k = e.geometric.len();
    let mut frontier: Vec<(Vec<usize>, MobiusMap)> = vec![(vec![], MobiusMap::identity(e.disc))];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (w, m) in &frontier {
            for i in 0..k {
                if w.last() == Some(&i) {
                    continue;
                }
                let n = m.compose(&e.geometric[i]);
                let mut w2 = w.clone();
                w2.push(i);
                if let Some(t) = integer_translation(&n) {
                    return Some((w2, t));
                }
                next.push((w2, n));
            }
        }
        frontier = next;
    }
    None
}

fn integer_translation(m: &MobiusMap) -> Option<i64> {
    if m.conj || !m.c.is_zero() || m.a != m.d {
        return None;
    }
    let one = OKElem::new(1, 0);
    let minus = OKElem::new(-1, 0);
    let s: i64 = if m.a == one {
        1
    } else if m.a == minus {
        -1
    } else {
        return None;
    };
    if !m.b.v.is_zero() || m.b.u.is_zero() {
        return None;
    }
    i64::try_from(&m.b.u).ok().map(|t| s * t)
}

fn unoriented(c: &OrientedCircle) -> OrientedCircle {
    c.unoriented().without_witness()
}

fn circle_set(cl: &Cluster, spec: &ClusterSpaceSpec) -> Option<BTreeSet<OrientedCircle>> {
    cl.circles(spec).ok().map(|v| v.iter().map(unoriented).collect())
}

fn contains_all(set: &BTreeSet<OrientedCircle>, circles: &[OrientedCircle]) -> bool {
    circles.iter().all(|c| set.contains(&unoriented(c)))
}

/// Gram matrix of a prong up to orientation: entries |4⟨·,·⟩| with the
/// centre first.
fn prong_signature(disc: &Disc, circles: &[OrientedCircle]) -> Vec<Vec<BigInt>> {
    let v: Vec<RVec> = circles.iter().map(|c| c.rvec()).collect();
    (0..v.len()).map(|i| (0..v.len()).map(|j| gram4(disc, &v[i], &v[j]).abs()).collect()).collect()
}

/// Whether the cluster contains a three-prong centred on `centre`, i.e. the
/// centre and three circles with the base prong's Pedoe products.
fn has_prong_centred(e: &GroupRegistryEntry, cl: &Cluster, centre: &OrientedCircle, reference: &[Vec<BigInt>]) -> bool {
    let Ok(cs) = cl.circles(&e.spec) else {
        return false;
    };
    let Some(ci) = cs.iter().position(|c| c.same_set(centre)) else {
        return false;
    };
    let others: Vec<usize> = (0..cs.len()).filter(|&i| i != ci).collect();
    for a in 0..others.len() {
        for b in a + 1..others.len() {
            for c in b + 1..others.len() {
                let pick = [cs[ci].clone(), cs[others[a]].clone(), cs[others[b]].clone(), cs[others[c]].clone()];
                if prong_signature(&e.disc, &pick) == reference {
                    return true;
                }
            }
        }
    }
    false
}

fn orbit_ball(e: &GroupRegistryEntry, radius: usize) -> Vec<(Vec<usize>, Cluster)> {
    let ints = e.algebraic_int();
    let mut out = vec![(vec![], e.base.clone())];
    let mut frontier = out.clone();
    for _ in 0..radius {
        let mut next = Vec::new();
        for (w, x) in &frontier {
            for (i, g) in ints.iter().enumerate() {
                if w.last() == Some(&i) {
                    continue;
                }
                let mut w2 = w.clone();
                w2.push(i);
                next.push((w2, x.right_mul(g)));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Clusters containing all of `fixed` circles, found by solving for the
/// columns from every placement of the prong into the cluster positions.
fn completions(e: &GroupRegistryEntry, fixed: &[OrientedCircle]) -> (BTreeSet<BTreeSet<OrientedCircle>>, usize) {
    let n = e.spec.n_circles();
    let mut found = BTreeSet::new();
    let mut undetermined = 0;
    let vecs: Vec<RVec> = fixed.iter().map(|c| c.rvec()).collect();
    let mut pos = [0usize; 4];
    fn placements(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !cur.contains(&i) {
                cur.push(i);
                placements(n, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut all = Vec::new();
    placements(n, 4, &mut Vec::new(), &mut all);
    for p in all {
        pos.copy_from_slice(&p);
        let sub: QMat = pos.iter().map(|&t| e.spec.coeffs[t].clone()).collect();
        let Some(inv) = mat::inverse(&sub) else {
            undetermined += 1;
            continue;
        };
        for signs in 0..16u32 {
            let mut q: QMat = vec![vec![BigRational::zero(); 4]; 4];
            for j in 0..4 {
                for i in 0..4 {
                    q[i][j] = (0..4)
                        .map(|t| {
                            let s = if signs >> t & 1 == 1 { -BigInt::one() } else { BigInt::one() };
                            &inv[j][t] * BigRational::from_integer(s * &vecs[t][i])
                        })
                        .sum();
                }
            }
            let Ok(cl) = Cluster::from_qmat(e.disc, &q) else {
                continue;
            };
            if !cl.is_valid(&e.spec) {
                continue;
            }
            if let Some(set) = circle_set(&cl, &e.spec) {
                found.insert(set);
            }
        }
    }
    (found, undetermined)
}

/// Items i–vii of the sufficiency theorem, as far as they are finitely
/// checkable. Items v and vi are truncated at `depth`.
pub fn sufficiency_audit(e: &GroupRegistryEntry, depth: usize) -> Vec<Check> {
    let disc = e.disc;
    let mut out = Vec::new();
    let base_circles = match e.base.circles(&e.spec) {
        Ok(c) => c,
        Err(err) => {
            out.push(Check::new("base cluster", false, err.to_string()));
            return out;
        }
    };
    let base_prong = prong(disc, &Superbasis::base());
    let reference = prong_signature(&disc, &base_prong);

    // (i) chains of immediate tangencies from R̂
    let mut reached = vec![packing_real_line(disc)];
    let mut pending: Vec<OrientedCircle> = base_circles.iter().filter(|c| !c.same_set(&reached[0])).cloned().collect();
    let mut progress = true;
    while progress && !pending.is_empty() {
        progress = false;
        let mut i = 0;
        while i < pending.len() {
            let c = &pending[i];
            let hit = reached.iter().find_map(|d| {
                let x = c.tangency_point(d).ok()?;
                let t = immediate_tangent(d, &x).ok()?;
                t.same_set(c).then_some(t)
            });
            if let Some(t) = hit {
                reached.push(t);
                pending.remove(i);
                progress = true;
            } else {
                i += 1;
            }
        }
    }
    out.push(Check::new(
        "(i) base cluster in the packing of R-hat",
        pending.is_empty(),
        format!(
            "{} of {} circles reached by immediate tangency",
            base_circles.len() - pending.len(),
            base_circles.len()
        ),
    ));

    // (ii) unique completion of the base prong
    let base_set: BTreeSet<OrientedCircle> = base_circles.iter().map(unoriented).collect();
    let (found, undetermined) = completions(e, &base_prong);
    let unique = found.len() == 1 && found.contains(&base_set) && contains_all(&base_set, &base_prong);
    out.push(Check::new(
        "(ii) base cluster is the unique completion of the base prong",
        unique,
        format!(
            "{} completion(s) by exact linear solve; {} placements not determined by the prong",
            found.len(),
            undetermined
        ),
    ));

    // (iii) clusters over the three superbases adjacent to {0,1,∞}
    let ball = orbit_ball(e, 3);
    let sets: Vec<Option<BTreeSet<OrientedCircle>>> = ball.iter().map(|(_, c)| circle_set(c, &e.spec)).collect();
    let mut detail = Vec::new();
    let mut ok3 = true;
    for sb in superbasis_neighbours(&Superbasis::base()) {
        let p = prong(disc, &sb);
        let hit = ball.iter().zip(&sets).find(|(_, s)| s.as_ref().is_some_and(|s| contains_all(s, &p)));
        match hit {
            Some(((w, _), _)) => detail.push(format!("{sb} by word of length {}", w.len())),
            None => {
                ok3 = false;
                detail.push(format!("{sb} not reached"));
            }
        }
    }
    out.push(Check::new("(iii) adjacent superbases", ok3, detail.join("; ")));

    // (iv) prongs centred on the circles immediately tangent at 0, 1, ∞
    let mut ok4 = true;
    let mut detail = Vec::new();
    for (k, name) in [(1usize, "0"), (2, "1"), (3, "inf")] {
        let centre = &base_prong[k];
        let hit = ball.iter().find(|(_, c)| has_prong_centred(e, c, centre, &reference));
        match hit {
            Some((w, _)) => detail.push(format!("{name}: word of length {}", w.len())),
            None => {
                ok4 = false;
                detail.push(format!("{name}: none within length 3"));
            }
        }
    }
    out.push(Check::new("(iv) prongs centred on the tangent circles", ok4, detail.join("; ")));

    // (v) no automorphism of the base cluster, to finite depth
    let mut autos = 0usize;
    let mut count = 0usize;
    let ints = e.algebraic_int();
    let base_rows = e.base.qmat();
    let complete = for_reduced_words(&ints, depth, |_, m| {
        if *m == I4 {
            return;
        }
        count += 1;
        let z: ZMat = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let x = Cluster::from_qmat(disc, &base_rows).unwrap().right_mul(&z);
        if circle_set(&x, &e.spec).as_ref() == Some(&base_set) {
            autos += 1;
        }
    });
    out.push(Check::new(
        "(v) no automorphism of the base cluster",
        complete && autos == 0,
        format!("finite check: {count} nontrivial reduced words of length <= {depth}, {autos} automorphisms"),
    ));

    // (vi) clusters through disjoint prongs on R̂ share only R̂, to finite depth
    let rhat = unoriented(&OrientedCircle::real_line(disc));
    let mut entries: Vec<(BTreeSet<OrientedCircle>, Vec<BTreeSet<OrientedCircle>>)> = Vec::new();
    let mut seen_sets = HashSet::new();
    for s in sets.iter().flatten() {
        if !s.contains(&rhat) || !seen_sets.insert(s.clone()) {
            continue;
        }
        let v: Vec<OrientedCircle> = s.iter().cloned().collect();
        let mut prongs = Vec::new();
        for a in 0..v.len() {
            for b in a + 1..v.len() {
                for c in b + 1..v.len() {
                    let pick = [rhat.clone(), v[a].clone(), v[b].clone(), v[c].clone()];
                    if pick[1..].iter().all(|x| *x != rhat) && prong_signature(&disc, &pick) == reference {
                        prongs.push(pick[1..].iter().cloned().collect::<BTreeSet<_>>());
                    }
                }
            }
        }
        entries.push((s.clone(), prongs));
    }
    let mut violations = 0usize;
    let mut pairs = 0usize;
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            let disjoint = entries[i].1.iter().any(|p| entries[j].1.iter().any(|q| p.is_disjoint(q)));
            if disjoint {
                pairs += 1;
                if entries[i].0.intersection(&entries[j].0).any(|c| *c != rhat) {
                    violations += 1;
                }
            }
        }
    }
    out.push(Check::new(
        "(vi) clusters on disjoint prongs share only the centre",
        violations == 0,
        format!("finite check over the word ball of radius 3: {pairs} pairs, {violations} violations"),
    ));

    out.push(Check::new(
        "(vii) base cluster tangency connected",
        clusters::tangency_connected(&base_circles),
        "all-tangency graph of the base circles",
    ));
    out
}

/// The orbit of R̂ under ⟨PSL₂(Z), z ↦ z + τ⟩ to the given depth; each new
/// circle is checked to equal or touch the circle it was reached from, so the
/// orbit is tangency connected to R̂.
pub fn e2_orbit_check(disc: Disc, depth: usize) -> Check {
    let gens = [
        MobiusMap::from_ints(disc, [[0, -1], [1, 0]], false).unwrap(),
        MobiusMap::from_ints(disc, [[1, 1], [0, 1]], false).unwrap(),
        MobiusMap::from_ints(disc, [[1, -1], [0, 1]], false).unwrap(),
        MobiusMap::from_coords(disc, [[(1, 0), (0, 1)], [(0, 0), (1, 0)]], false).unwrap(),
        MobiusMap::from_coords(disc, [[(1, 0), (0, -1)], [(0, 0), (1, 0)]], false).unwrap(),
    ];
    let r = OrientedCircle::real_line(disc);
    let mut seen: HashSet<OrientedCircle> = HashSet::from([unoriented(&r)]);
    let mut frontier = vec![MobiusMap::identity(disc)];
    let mut bad = 0usize;
    for _ in 0..depth {
        let mut next = Vec::new();
        for m in &frontier {
            let parent = r.apply(m);
            for g in &gens {
                let mg = m.compose(g);
                let c = r.apply(&mg);
                let touches = c.same_set(&parent) || c.pedoe2(&parent).abs() == BigInt::from(2);
                if !touches {
                    bad += 1;
                }
                seen.insert(unoriented(&c));
                next.push(mg);
            }
        }
        frontier = next;
    }
    Check::new(
        "E2 orbit tangency connected",
        bad == 0,
        format!("{} circles to depth {depth}, {bad} non-touching steps", seen.len()),
    )
}

/// Tabulated base clusters of the field against their Gram matrices: the
/// Descartes quadruple, the cube and its cubicle, the tents, and the
/// general K-cluster W_D⁰ or W_D¹.
pub fn tabulated_gram_checks(disc: Disc) -> Vec<Check> {
    use crate::clusters::{tabulated_mink, verify_cluster};
    let mut out = Vec::new();
    let mut push = |name: &str, w: MinkMat, r: QMat| {
        let ok = verify_cluster(&w, &r);
        out.push(Check::new(name, ok, format!("{} columns", w.cols())));
    };
    match disc.delta() {
        -4 => push("tabulated base quadruple", tabulated_mink(&disc, &data::qi_base()), data::parse(data::DESCARTES_R)),
        -8 => {
            let cube = tabulated_mink(&disc, &data::cube_base());
            let cubicle = MinkMat::from_columns(&data::CUBICLE.map(|j| cube.column(j)));
            push("tabulated base cube", cube, data::parse(data::CUBE_GRAM));
            push("tabulated cubicle", cubicle, data::parse(data::CUBICLE_GRAM));
        }
        -7 => push("tabulated base tent", tabulated_mink(&disc, &data::tent7_base()), data::parse(data::TENT7_GRAM5)),
        -11 => {
            push("tabulated base tent", tabulated_mink(&disc, &data::tent11_base()), data::parse(data::TENT11_GRAM10))
        }
        _ => {}
    }
    if disc.delta().rem_euclid(4) == 0 {
        push("tabulated W_D^0", tabulated_mink(&disc, &data::wd0()), data::r0(disc.delta()));
    } else {
        push("tabulated W_D^1", tabulated_mink(&disc, &data::wd1()), data::r1(disc.delta()));
    }
    out
}

/// Every geometric generator maps the strip packing (modulo translation)
/// into itself at the given bound.
pub fn packing_invariance(e: &GroupRegistryEntry, bound: u64) -> Check {
    use crate::packing::{generate_packing, reduce_circle, PackingOptions, PackingSource};
    let src =
        PackingSource::new("registry", e.spec.clone(), e.algebraic_int(), e.base.clone(), Some(e.flavor.period()));
    let opts = PackingOptions { saturate: true, ..PackingOptions::new(bound) };
    let p = match generate_packing(&src, &opts) {
        Ok(p) => p,
        Err(err) => return Check::new("packing invariance", false, err.to_string()),
    };
    let set: HashSet<OrientedCircle> = p.circles.iter().map(unoriented).collect();
    let b = BigInt::from(bound);
    let mut missing = 0usize;
    let mut tested = 0usize;
    for g in &e.geometric {
        for c in &p.circles {
            let im = c.apply(g);
            if im.n.abs() <= b {
                tested += 1;
                if !set.contains(&unoriented(&reduce_circle(&im))) {
                    missing += 1;
                }
            }
        }
    }
    Check::new(
        "packing invariance",
        missing == 0,
        format!("{tested} images with |n| <= {bound}, {missing} outside the packing"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_product_is_borel() {
        let (g, _) = topograph_generators();
        assert_eq!(mul2(&mul2(&g[0], &g[1]), &g[2]), [[1, 3], [0, 1]]);
        for gi in g {
            assert!(proj_eq(&mul2(&gi, &gi), &[[1, 0], [0, 1]]));
        }
    }

    #[test]
    fn one_step_neighbours() {
        let s = Superbasis::base();
        let n: BTreeSet<Superbasis> = (0..3).map(|i| topograph_walk(&s, &[i]).unwrap()).collect();
        let want: BTreeSet<Superbasis> = superbasis_neighbours(&s).into_iter().collect();
        assert_eq!(n, want);
        assert!(want.contains(&Superbasis::new([QPoint::new(0, 1), QPoint::new(1, 2), QPoint::new(1, 1)]).unwrap()));
        assert_eq!(topograph_walk(&s, &[]).unwrap(), s);
    }

    #[test]
    fn base_matrix_is_identity() {
        assert_eq!(Superbasis::base().matrix(), [[1, 0], [0, 1]]);
        let s = Superbasis::new([QPoint::new(1, 2), QPoint::new(1, 3), QPoint::new(2, 5)]).unwrap();
        assert_eq!(Superbasis::of_matrix(&s.matrix()), s);
    }

    #[test]
    fn bfs_counts() {
        let g = topograph_bfs(4);
        assert_eq!(g.vertices.len(), 46);
        assert!(g.is_tree());
        assert_eq!(topograph_bfs(0).vertices.len(), 1);
    }

    #[test]
    fn registry_shapes() {
        let d = |x| Disc::new(x).unwrap();
        assert_eq!(registry(d(-4)).algebraic.len(), 4);
        assert_eq!(registry(d(-11)).flavor, ClusterFlavor::Tent11);
        assert_eq!(registry(d(-20)).flavor, ClusterFlavor::GeneralK);
        assert_eq!(registry_entries(d(-4)).len(), 2);
    }
}

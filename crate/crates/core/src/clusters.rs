//! Cluster spaces: Descartes quadruples, K-clusters, cubes, tents, and their
//! swaps.
//!
//! A cluster is stored through four column vectors in scaled reduced
//! coordinates (see [`RVec`]); its circles are fixed rational combinations
//! of the columns. Swaps are right multiplications of the column matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::circle::{apply_rvec, gram4, CircleError, MinkMat, MinkVec, MobiusMap, OrientedCircle, RVec};
use crate::data::{self, TabulatedCluster};
use crate::mat::{self, QMat, ZMat};
use crate::qint::{Disc, ExtRat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClusterError {
    #[error("Gram matrix does not match the cluster space")]
    BadGram,
    #[error("cluster circle is not integral")]
    NotIntegral,
    #[error("index {0} out of range")]
    BadIndex(usize),
    #[error("cluster columns are linearly dependent")]
    Singular,
    #[error("wrong number of circles: expected {expected}, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error(transparent)]
    Circle(#[from] CircleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClusterFlavor {
    Descartes,
    Cube,
    Tent7,
    Tent11,
    GeneralK,
}

impl ClusterFlavor {
    pub fn name(&self) -> &'static str {
        match self {
            ClusterFlavor::Descartes => "descartes",
            ClusterFlavor::Cube => "cube",
            ClusterFlavor::Tent7 => "tent7",
            ClusterFlavor::Tent11 => "tent11",
            ClusterFlavor::GeneralK => "general-k",
        }
    }

    /// Cluster type used for the field's fundamental packing.
    pub fn for_disc(disc: &Disc) -> ClusterFlavor {
        match disc.delta() {
            -4 => ClusterFlavor::Descartes,
            -8 => ClusterFlavor::Cube,
            -7 => ClusterFlavor::Tent7,
            -11 => ClusterFlavor::Tent11,
            _ => ClusterFlavor::GeneralK,
        }
    }

    /// p such that z ↦ z + p lies in the group generated by the swaps.
    pub fn period(&self) -> i64 {
        match self {
            ClusterFlavor::Descartes | ClusterFlavor::Cube | ClusterFlavor::Tent7 => 2,
            ClusterFlavor::Tent11 | ClusterFlavor::GeneralK => 3,
        }
    }
}

/// R is the Gram matrix of the four columns; `coeffs` (n × 4) expresses the
/// circles in terms of the columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterSpaceSpec {
    pub flavor: ClusterFlavor,
    pub disc: Disc,
    pub r: QMat,
    pub coeffs: QMat,
}

impl ClusterSpaceSpec {
    pub fn n_circles(&self) -> usize {
        self.coeffs.len()
    }

    pub fn descartes(disc: Disc) -> ClusterSpaceSpec {
        ClusterSpaceSpec {
            flavor: ClusterFlavor::Descartes,
            disc,
            r: data::parse(data::DESCARTES_R),
            coeffs: mat::identity(4),
        }
    }

    /// K-clusters for any discriminant, in the column convention of W_D⁰
    /// (Δ ≡ 0) or W_D¹ (Δ ≡ 1).
    pub fn general(disc: Disc) -> ClusterSpaceSpec {
        let d = disc.delta();
        if disc.eps() == 0 {
            ClusterSpaceSpec { flavor: ClusterFlavor::GeneralK, disc, r: data::r0(d), coeffs: mat::identity(4) }
        } else {
            let s = data::parse(data::S_CHANGE);
            ClusterSpaceSpec { flavor: ClusterFlavor::GeneralK, disc, r: data::r1(d), coeffs: mat::transpose(&s) }
        }
    }

    pub fn cube(disc: Disc) -> ClusterSpaceSpec {
        // 2v2 = v1 + v3 − v6 + v8 and siblings, in cubicle coordinates
        let coeffs = data::parse(
            "1 0 0 0; 1/2 1/2 -1/2 1/2; 0 1 0 0; 1/2 1/2 1/2 -1/2; -1/2 1/2 1/2 1/2; 0 0 1 0; 1/2 -1/2 1/2 1/2; 0 0 0 1",
        );
        ClusterSpaceSpec { flavor: ClusterFlavor::Cube, disc, r: data::parse(data::CUBICLE_GRAM), coeffs }
    }

    pub fn tent7(disc: Disc) -> ClusterSpaceSpec {
        // v5 = 2(v2 + v4) − v1 − v3
        let coeffs = data::parse("1 0 0 0; 0 1 0 0; 0 0 1 0; 0 0 0 1; -1 2 -1 2");
        ClusterSpaceSpec { flavor: ClusterFlavor::Tent7, disc, r: data::parse(data::TENT7_R), coeffs }
    }

    /// Coefficients are solved exactly from the tabulated ten-circle tent.
    pub fn tent11(disc: Disc) -> ClusterSpaceSpec {
        let full = tabulated_columns_q(&data::tent11_base());
        let cols = tent11_columns_q(&full);
        let inv = mat::inverse(&cols).expect("tent columns independent");
        let coeffs = mat::transpose(&mat::mul(&inv, &full));
        ClusterSpaceSpec { flavor: ClusterFlavor::Tent11, disc, r: data::parse(data::TENT11_R), coeffs }
    }

    pub fn for_flavor(flavor: ClusterFlavor, disc: Disc) -> ClusterSpaceSpec {
        match flavor {
            ClusterFlavor::Descartes => ClusterSpaceSpec::descartes(disc),
            ClusterFlavor::Cube => ClusterSpaceSpec::cube(disc),
            ClusterFlavor::Tent7 => ClusterSpaceSpec::tent7(disc),
            ClusterFlavor::Tent11 => ClusterSpaceSpec::tent11(disc),
            ClusterFlavor::GeneralK => ClusterSpaceSpec::general(disc),
        }
    }

    /// 4R, which must be integral (it equals the integral 4·Gram form).
    pub fn r4(&self) -> ZMat {
        mat::to_integer(&mat::scale(&self.r, &mat::q(4))).expect("4R integral")
    }
}

/// Tabulated cluster as a rational matrix in scaled reduced coordinates
/// (rows n′, n, v, 2m).
pub fn tabulated_columns_q(p: &TabulatedCluster) -> QMat {
    let e = p.eta_coefficients();
    vec![
        e[0].clone(),
        e[1].clone(),
        e[2].iter().map(|x| x * mat::q(-2)).collect(),
        e[3].iter().map(|x| x * mat::q(2)).collect(),
    ]
}

fn tent11_columns_q(full: &QMat) -> QMat {
    (0..4).map(|i| data::TENT11_COLUMNS.iter().map(|&(a, b)| &full[i][a] + &full[i][b]).collect()).collect()
}

/// Tabulated cluster columns as Pedoe vectors.
pub fn tabulated_mink(disc: &Disc, p: &TabulatedCluster) -> MinkMat {
    let e = p.eta_coefficients();
    let d = disc.abs();
    let n = e[0].len();
    let cols: Vec<MinkVec> = (0..n)
        .map(|j| {
            MinkVec([
                ExtRat::surd(e[0][j].clone(), d),
                ExtRat::surd(e[1][j].clone(), d),
                ExtRat::surd(e[2][j].clone(), d),
                ExtRat::rat(e[3][j].clone(), d),
            ])
        })
        .collect();
    MinkMat::from_columns(&cols)
}

fn qcol_to_rvec(m: &QMat, j: usize) -> Option<RVec> {
    let get = |i: usize| {
        if m[i][j].is_integer() {
            Some(m[i][j].to_integer())
        } else {
            None
        }
    };
    Some([get(0)?, get(1)?, get(2)?, get(3)?])
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cluster {
    pub disc: Disc,
    pub cols: [RVec; 4],
}

impl Cluster {
    pub fn new(disc: Disc, cols: [RVec; 4]) -> Cluster {
        Cluster { disc, cols }
    }

    /// Columns from a 4 × 4 rational matrix whose columns are integral.
    pub fn from_qmat(disc: Disc, m: &QMat) -> Result<Cluster, ClusterError> {
        let c = |j| qcol_to_rvec(m, j).ok_or(ClusterError::NotIntegral);
        Ok(Cluster { disc, cols: [c(0)?, c(1)?, c(2)?, c(3)?] })
    }

    /// Rows n′, n, v, 2m; columns are the cluster columns.
    pub fn qmat(&self) -> QMat {
        (0..4).map(|i| (0..4).map(|j| BigRational::from_integer(self.cols[j][i].clone())).collect()).collect()
    }

    pub fn mink(&self) -> MinkMat {
        let cols: Vec<MinkVec> = self.cols.iter().map(|c| MinkVec::from_rvec(&self.disc, c)).collect();
        MinkMat::from_columns(&cols)
    }

    pub fn gram4(&self) -> ZMat {
        (0..4).map(|i| (0..4).map(|j| gram4(&self.disc, &self.cols[i], &self.cols[j])).collect()).collect()
    }

    pub fn is_valid(&self, spec: &ClusterSpaceSpec) -> bool {
        self.gram4() == spec.r4()
    }

    pub fn circle_vectors(&self, spec: &ClusterSpaceSpec) -> Result<Vec<RVec>, ClusterError> {
        let (num, den) = mat::common_denominator(&spec.coeffs);
        num.iter()
            .map(|row| {
                let mut out: RVec = Default::default();
                for (i, o) in out.iter_mut().enumerate() {
                    let s: BigInt = (0..4).map(|j| &row[j] * &self.cols[j][i]).sum();
                    if !s.is_multiple_of(&den) {
                        return Err(ClusterError::NotIntegral);
                    }
                    *o = s / &den;
                }
                Ok(out)
            })
            .collect()
    }

    pub fn circles(&self, spec: &ClusterSpaceSpec) -> Result<Vec<OrientedCircle>, ClusterError> {
        self.circle_vectors(spec)?
            .iter()
            .map(|v| OrientedCircle::from_rvec(self.disc, v).map_err(ClusterError::from))
            .collect()
    }

    /// X ↦ X·g.
    pub fn right_mul(&self, g: &ZMat) -> Cluster {
        let cols = std::array::from_fn(|j| std::array::from_fn(|i| (0..4).map(|k| &self.cols[k][i] * &g[k][j]).sum()));
        Cluster { disc: self.disc, cols }
    }

    /// X ↦ ρ(g)·X.
    pub fn apply_mobius(&self, g: &MobiusMap) -> Cluster {
        let cols = std::array::from_fn(|j| apply_rvec(g, &self.cols[j]).expect("cluster column on the circle lattice"));
        Cluster { disc: self.disc, cols }
    }

    pub fn neg(&self) -> Cluster {
        Cluster { disc: self.disc, cols: self.cols.clone().map(|c| c.map(|x| -x)) }
    }

    /// Sorted circle keys: equality of unordered clusters.
    pub fn unordered_key(&self, spec: &ClusterSpaceSpec) -> Result<Vec<RVec>, ClusterError> {
        let mut v = self.circle_vectors(spec)?;
        v.sort();
        Ok(v)
    }

    /// Build columns from a full ordered list of circles.
    pub fn from_circles(spec: &ClusterSpaceSpec, circles: &[OrientedCircle]) -> Result<Cluster, ClusterError> {
        if circles.len() != spec.n_circles() {
            return Err(ClusterError::WrongCount { expected: spec.n_circles(), got: circles.len() });
        }
        // pick four circles whose coefficient rows are independent
        let n = circles.len();
        let mut chosen: Vec<usize> = Vec::new();
        for i in 0..n {
            let mut trial = chosen.clone();
            trial.push(i);
            if rank(&trial.iter().map(|&t| spec.coeffs[t].clone()).collect::<Vec<_>>()) == trial.len() {
                chosen = trial;
            }
            if chosen.len() == 4 {
                break;
            }
        }
        if chosen.len() < 4 {
            return Err(ClusterError::Singular);
        }
        let csub: QMat = chosen.iter().map(|&t| spec.coeffs[t].clone()).collect();
        let inv = mat::inverse(&csub).ok_or(ClusterError::Singular)?;
        // circle_t = Σ_j coeffs[t][j] col_j  ⇒  col_j = Σ_t inv[j][t] circle_t
        let vecs: Vec<RVec> = chosen.iter().map(|&t| circles[t].rvec()).collect();
        let mut q: QMat = vec![vec![BigRational::zero(); 4]; 4];
        for j in 0..4 {
            for i in 0..4 {
                q[i][j] = (0..4).map(|t| &inv[j][t] * BigRational::from_integer(vecs[t][i].clone())).sum();
            }
        }
        let c = Cluster::from_qmat(circles[0].disc, &q)?;
        let back = c.circles(spec)?;
        if back != circles || !c.is_valid(spec) {
            return Err(ClusterError::BadGram);
        }
        Ok(c)
    }
}

fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        if let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) {
            m.swap(r, p);
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = &m[i][c] / &m[r][c];
                    for k in 0..cols {
                        let t = &f * &m[r][k];
                        m[i][k] -= t;
                    }
                }
            }
            r += 1;
        }
    }
    r
}

/// Exact check WᵀG_M W = R.
pub fn verify_cluster(w: &MinkMat, r: &QMat) -> bool {
    let d = w.0[0][0].radicand();
    w.gram() == MinkMat::from_rational(d, r)
}

/// (a + b + c + d)² = 2(a² + b² + c² + d²).
pub fn descartes_check(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> bool {
    let s = a + b + c + d;
    &s * &s == BigInt::from(2) * (a * a + b * b + c * c + d * d)
}

/// d′ = 2(a + b + c) − d.
pub fn soddy_swap(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> BigInt {
    BigInt::from(2) * (a + b + c) - d
}

/// 2(a² + b² + c² + d²) − (a + b + c + d)² − (Δ + 4)a² = 0, with a the
/// central curvature.
pub fn k_descartes_check(disc: &Disc, a: &ExtRat, b: &ExtRat, c: &ExtRat, d: &ExtRat) -> bool {
    let r = a.radicand();
    let two = ExtRat::int(2, r);
    let sq = |x: &ExtRat| x * x;
    let s = &(&(a + b) + c) + d;
    let lhs = &two * &(&(&(&sq(a) + &sq(b)) + &sq(c)) + &sq(d));
    let k = ExtRat::int(disc.delta() + 4, r);
    (&(&lhs - &sq(&s)) - &(&k * &sq(a))).is_zero()
}

/// The eight cube circles from a cubicle (v1, v3, v6, v8).
pub fn cube_from_cubicle(cubicle: &[MinkVec; 4]) -> Result<[MinkVec; 8], ClusterError> {
    let d = cubicle[0].0[0].radicand();
    let w = MinkMat::from_columns(cubicle);
    if !verify_cluster(&w, &data::parse(data::CUBICLE_GRAM)) {
        return Err(ClusterError::BadGram);
    }
    let half = ExtRat::rat(mat::qfrac(1, 2), d);
    let comb = |s: [i64; 4]| {
        let mut out: [ExtRat; 4] = std::array::from_fn(|_| ExtRat::zero(d));
        for (k, c) in cubicle.iter().enumerate() {
            let f = ExtRat::int(s[k], d);
            for (i, o) in out.iter_mut().enumerate() {
                *o = &*o + &(&f * &c.0[i]);
            }
        }
        MinkVec(out.map(|x| &half * &x))
    };
    let [c1, c3, c6, c8] = cubicle.clone();
    Ok([c1, comb([1, 1, -1, 1]), c3, comb([1, 1, 1, -1]), comb([-1, 1, 1, 1]), c6, comb([1, -1, 1, 1]), c8])
}

fn int_gen(s: &str) -> ZMat {
    mat::to_integer(&data::parse(s)).expect("integral generator")
}

/// Swap across face 1..6 of a cube.
pub fn cube_swap(cube: &Cluster, face: usize) -> Result<Cluster, ClusterError> {
    if !(1..=6).contains(&face) {
        return Err(ClusterError::BadIndex(face));
    }
    if !cube.is_valid(&ClusterSpaceSpec::cube(cube.disc)) {
        return Err(ClusterError::BadGram);
    }
    Ok(cube.right_mul(&int_gen(data::CUBE_GENS[face - 1])))
}

/// Peaks v1, v3, v5 of a tent.
pub fn peaks(tent: &Cluster) -> Result<Vec<OrientedCircle>, ClusterError> {
    let c = tent.circles(&ClusterSpaceSpec::tent7(tent.disc))?;
    Ok(vec![c[0].clone(), c[2].clone(), c[4].clone()])
}

/// The belt left after removing peak 1, 3 or 5, in cyclic order.
pub fn belt(tent: &Cluster, peak: usize) -> Result<Vec<OrientedCircle>, ClusterError> {
    let c = tent.circles(&ClusterSpaceSpec::tent7(tent.disc))?;
    let order: [usize; 4] = match peak {
        1 => [1, 4, 3, 2],
        3 => [0, 1, 4, 3],
        5 => [0, 1, 2, 3],
        _ => return Err(ClusterError::BadIndex(peak)),
    };
    Ok(order.iter().map(|&i| c[i].clone()).collect())
}

/// Swap out peak 1, 3 or 5 by the generator that keeps its belt.
pub fn tent_swap_7(tent: &Cluster, peak: usize) -> Result<Cluster, ClusterError> {
    let spec = ClusterSpaceSpec::tent7(tent.disc);
    if !tent.is_valid(&spec) {
        return Err(ClusterError::BadGram);
    }
    let keep = belt(tent, peak)?;
    for g in data::TENT7_GENS {
        let t = tent.right_mul(&int_gen(g));
        let c = t.circles(&spec)?;
        if keep.iter().all(|k| c.contains(k)) && t != *tent {
            return Ok(t);
        }
    }
    Err(ClusterError::BadGram)
}

/// The four belts of a Q(√−11) tent, each a list of 6 circles, in column
/// order: belt j consists of the circle pairs summing to column j.
pub fn belts(tent: &Cluster) -> Result<Vec<Vec<OrientedCircle>>, ClusterError> {
    let spec = ClusterSpaceSpec::tent11(tent.disc);
    let v = tent.circle_vectors(&spec)?;
    let circles = tent.circles(&spec)?;
    let mut out = Vec::new();
    for col in &tent.cols {
        let mut belt = Vec::new();
        for a in 0..v.len() {
            for b in a + 1..v.len() {
                let s: RVec = std::array::from_fn(|i| &v[a][i] + &v[b][i]);
                if s == *col {
                    belt.push(circles[a].clone());
                    belt.push(circles[b].clone());
                }
            }
        }
        out.push(belt);
    }
    Ok(out)
}

/// Swap keeping belt 1..4.
pub fn tent_swap_11(tent: &Cluster, belt_index: usize) -> Result<Cluster, ClusterError> {
    if !(1..=4).contains(&belt_index) {
        return Err(ClusterError::BadIndex(belt_index));
    }
    if !tent.is_valid(&ClusterSpaceSpec::tent11(tent.disc)) {
        return Err(ClusterError::BadGram);
    }
    Ok(tent.right_mul(&int_gen(data::TENT11_GENS[belt_index - 1])))
}

/// Right multiplication by generator 1..4 of the general K-Apollonian group.
pub fn kcluster_swap(cluster: &Cluster, gen_index: usize) -> Result<Cluster, ClusterError> {
    let gens = general_generators(&cluster.disc);
    if !(1..=gens.len()).contains(&gen_index) {
        return Err(ClusterError::BadIndex(gen_index));
    }
    if !cluster.is_valid(&ClusterSpaceSpec::general(cluster.disc)) {
        return Err(ClusterError::BadGram);
    }
    Ok(cluster.right_mul(&mat::to_integer(&gens[gen_index - 1]).expect("integral")))
}

/// s₁, s₂, s₃ as tabulated and r = σ(ρ([[1, 1 − τ], [0, −1]])).
pub fn general_generators(disc: &Disc) -> Vec<QMat> {
    let s = if disc.eps() == 0 { data::KGENS0_S } else { data::KGENS1_S };
    let mut gens: Vec<QMat> = s.iter().map(|x| data::parse(x)).collect();
    let base = general_base(disc);
    let r_geo = data::mobius(*disc, &data::SIXMOB[3], false);
    gens.push(sigma(&base, &r_geo));
    gens
}

/// σ_W(ρ(g)) = X⁻¹·ρ_red(g)·X in scaled reduced coordinates.
pub fn sigma(base: &Cluster, g: &MobiusMap) -> QMat {
    let x = base.qmat();
    let gx = base.apply_mobius(g).qmat();
    mat::mul(&mat::inverse(&x).expect("cluster basis"), &gx)
}

/// Base K-cluster: W_D⁰ or W_D¹.
pub fn general_base(disc: &Disc) -> Cluster {
    let p = if disc.eps() == 0 { data::wd0() } else { data::wd1() };
    Cluster::from_qmat(*disc, &tabulated_columns_q(&p)).expect("integral base")
}

pub fn descartes_base(disc: &Disc) -> Cluster {
    Cluster::from_qmat(*disc, &tabulated_columns_q(&data::qi_base())).expect("integral base")
}

pub fn cube_base(disc: &Disc) -> Cluster {
    let full = tabulated_columns_q(&data::cube_base());
    let cols: QMat = full.iter().map(|r| data::CUBICLE.iter().map(|&j| r[j].clone()).collect()).collect();
    Cluster::from_qmat(*disc, &cols).expect("integral base")
}

pub fn tent7_base(disc: &Disc) -> Cluster {
    let full = tabulated_columns_q(&data::tent7_base());
    let cols: QMat = full.iter().map(|r| r[..4].to_vec()).collect();
    Cluster::from_qmat(*disc, &cols).expect("integral base")
}

pub fn tent11_base(disc: &Disc) -> Cluster {
    let full = tabulated_columns_q(&data::tent11_base());
    Cluster::from_qmat(*disc, &tent11_columns_q(&full)).expect("integral base")
}

pub fn base_for(flavor: ClusterFlavor, disc: &Disc) -> Cluster {
    match flavor {
        ClusterFlavor::Descartes => descartes_base(disc),
        ClusterFlavor::Cube => cube_base(disc),
        ClusterFlavor::Tent7 => tent7_base(disc),
        ClusterFlavor::Tent11 => tent11_base(disc),
        ClusterFlavor::GeneralK => general_base(disc),
    }
}

/// Algebraic swap generators of a cluster type.
pub fn generators(flavor: ClusterFlavor, disc: &Disc) -> Vec<QMat> {
    let p = |v: &[&str]| v.iter().map(|s| data::parse(s)).collect();
    match flavor {
        ClusterFlavor::Descartes => p(&data::QI_GENS),
        ClusterFlavor::Cube => p(&data::CUBE_GENS),
        ClusterFlavor::Tent7 => p(&data::TENT7_GENS),
        ClusterFlavor::Tent11 => p(&data::TENT11_GENS),
        ClusterFlavor::GeneralK => general_generators(disc),
    }
}

/// All 48 ordered, oriented representations of a Descartes quadruple: 24
/// orderings times a global orientation sign.
pub fn descartes_representations(c: &Cluster) -> Vec<Cluster> {
    let mut out = Vec::new();
    let idx = [0usize, 1, 2, 3];
    for p in permutations(&idx) {
        let cols: [RVec; 4] = std::array::from_fn(|j| c.cols[p[j]].clone());
        let x = Cluster::new(c.disc, cols);
        out.push(x.neg());
        out.push(x);
    }
    out
}

fn permutations(v: &[usize]) -> Vec<Vec<usize>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Reduced curvatures of the circles of a cluster.
pub fn curvatures(c: &Cluster, spec: &ClusterSpaceSpec) -> Result<Vec<BigInt>, ClusterError> {
    Ok(c.circle_vectors(spec)?.into_iter().map(|v| v[1].clone()).collect())
}

/// Whether the circles of a cluster form a connected tangency graph.
pub fn tangency_connected(circles: &[OrientedCircle]) -> bool {
    let n = circles.len();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && circles[i].pedoe2(&circles[j]).abs() == BigInt::from(2) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

pub fn is_involution(g: &QMat) -> bool {
    mat::is_identity(&mat::mul(g, g))
}

pub fn preserves(g: &QMat, r: &QMat) -> bool {
    mat::mul(&mat::mul(&mat::transpose(g), r), g) == *r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(x: i64) -> Disc {
        Disc::new(x).unwrap()
    }

    #[test]
    fn descartes_examples() {
        let b = |x: i64| BigInt::from(x);
        assert!(descartes_check(&b(0), &b(0), &b(2), &b(2)));
        assert!(descartes_check(&b(-1), &b(2), &b(2), &b(3)));
        assert_eq!(soddy_swap(&b(2), &b(2), &b(3), &b(-1)), b(15));
        assert!(!descartes_check(&b(1), &b(1), &b(1), &b(1)));
    }

    #[test]
    fn bases_are_valid() {
        assert!(descartes_base(&d(-4)).is_valid(&ClusterSpaceSpec::descartes(d(-4))));
        assert!(cube_base(&d(-8)).is_valid(&ClusterSpaceSpec::cube(d(-8))));
        assert!(tent7_base(&d(-7)).is_valid(&ClusterSpaceSpec::tent7(d(-7))));
        assert!(tent11_base(&d(-11)).is_valid(&ClusterSpaceSpec::tent11(d(-11))));
        for x in [-4, -7, -8, -15, -20, -23] {
            assert!(general_base(&d(x)).is_valid(&ClusterSpaceSpec::general(d(x))), "{x}");
        }
    }

    #[test]
    fn perturbed_base_fails() {
        let mut b = descartes_base(&d(-4));
        b.cols[1][1] += 1;
        assert!(!b.is_valid(&ClusterSpaceSpec::descartes(d(-4))));
    }

    #[test]
    fn from_circles_roundtrip() {
        let k = d(-11);
        let spec = ClusterSpaceSpec::tent11(k);
        let t = tent11_base(&k);
        let c = t.circles(&spec).unwrap();
        assert_eq!(Cluster::from_circles(&spec, &c).unwrap(), t);
    }
}

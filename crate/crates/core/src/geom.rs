//! Convex polygons with vertices in K, used as enumeration windows.

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::circle::OrientedCircle;
use crate::qint::{Disc, KNum, KPoint};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub vertices: Vec<KNum>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WindowError {
    #[error("window needs at least three vertices")]
    TooFew,
    #[error("window is degenerate or not convex")]
    NotConvex,
}

impl Window {
    pub fn new(disc: &Disc, vertices: Vec<KNum>) -> Result<Window, WindowError> {
        if vertices.len() < 3 {
            return Err(WindowError::TooFew);
        }
        let w = Window { vertices };
        let n = w.vertices.len();
        let signs: Vec<i32> = (0..n)
            .map(|i| {
                let (a, b, c) = (&w.vertices[i], &w.vertices[(i + 1) % n], &w.vertices[(i + 2) % n]);
                cross_sign(disc, &b.sub(a), &c.sub(b))
            })
            .collect();
        if signs.iter().all(|&s| s > 0) || signs.iter().all(|&s| s < 0) {
            Ok(w)
        } else {
            Err(WindowError::NotConvex)
        }
    }

    /// Closed parallelogram with vertices 0, 1, 1 + τ, τ.
    pub fn fundamental(disc: &Disc) -> Window {
        let v = vec![KNum::from_ints(0, 0), KNum::from_ints(1, 0), KNum::from_ints(1, 1), KNum::from_ints(0, 1)];
        Window::new(disc, v).unwrap()
    }

    /// Rectangle [re0, re1] × [t0·η/2, t1·η/2], η = √|Δ|.
    pub fn rectangle(
        disc: &Disc,
        re0: BigRational,
        re1: BigRational,
        t0: BigRational,
        t1: BigRational,
    ) -> Result<Window, WindowError> {
        if re0 >= re1 || t0 >= t1 {
            return Err(WindowError::NotConvex);
        }
        let half_eps = BigRational::new(disc.eps().into(), 2.into());
        let pt = |re: &BigRational, t: &BigRational| KNum::new(re - t * &half_eps, t.clone());
        Window::new(disc, vec![pt(&re0, &t0), pt(&re1, &t0), pt(&re1, &t1), pt(&re0, &t1)])
    }

    pub fn contains(&self, disc: &Disc, z: &KNum) -> bool {
        let n = self.vertices.len();
        let signs: Vec<i32> = (0..n)
            .map(|i| {
                let (a, b) = (&self.vertices[i], &self.vertices[(i + 1) % n]);
                cross_sign(disc, &b.sub(a), &z.sub(a))
            })
            .collect();
        signs.iter().all(|&s| s >= 0) || signs.iter().all(|&s| s <= 0)
    }

    /// Closest point of the closed polygon to z.
    pub fn nearest(&self, disc: &Disc, z: &KNum) -> KNum {
        if self.contains(disc, z) {
            return z.clone();
        }
        let n = self.vertices.len();
        let mut best: Option<(BigRational, KNum)> = None;
        for i in 0..n {
            let (p, q) = (&self.vertices[i], &self.vertices[(i + 1) % n]);
            let e = q.sub(p);
            let mut t = z.sub(p).trace_form(disc, &e) / (e.norm(disc) * BigRational::from_integer(2.into()));
            if t.is_negative() {
                t = BigRational::zero();
            } else if t > BigRational::one() {
                t = BigRational::one();
            }
            let pt = p.add(&e.scale(&t));
            let d = z.sub(&pt).norm(disc);
            if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
                best = Some((d, pt));
            }
        }
        best.unwrap().1
    }

    pub fn dist_sq(&self, disc: &Disc, z: &KNum) -> BigRational {
        z.sub(&self.nearest(disc, z)).norm(disc)
    }

    /// Whether dist_sq(z) > bound. Decided in floating point when the margin
    /// is clear, exactly otherwise.
    pub fn farther_than(&self, disc: &Disc, z: &KNum, bound: &BigRational) -> bool {
        match self.float_view(disc).farther_than(z.to_complex_f64(disc), bound.to_f64().unwrap_or(f64::NAN)) {
            Some(b) => b,
            None => self.dist_sq(disc, z) > *bound,
        }
    }

    pub fn float_view(&self, disc: &Disc) -> FloatWindow {
        FloatWindow {
            v: self.vertices.iter().map(|v| v.to_complex_f64(disc)).collect(),
            eta: (disc.abs() as f64).sqrt(),
            eps: disc.eps() as f64,
        }
    }

    /// Exact test whether the circle's point set meets the closed polygon.
    pub fn meets(&self, disc: &Disc, c: &OrientedCircle) -> bool {
        self.meets_with(disc, &self.float_view(disc), c)
    }

    /// `meets` with a precomputed float view of this window.
    pub fn meets_with(&self, disc: &Disc, f: &FloatWindow, c: &OrientedCircle) -> bool {
        match f.meets(c) {
            Some(b) => b,
            None => self.meets_exact(disc, c),
        }
    }

    fn meets_exact(&self, disc: &Disc, c: &OrientedCircle) -> bool {
        let mut pts: Vec<KNum> = self.vertices.clone();
        if let Some(ctr) = c.center() {
            pts.push(self.nearest(disc, &ctr));
        }
        let vals: Vec<BigRational> = pts.into_iter().map(|p| c.e_value(&KPoint::Finite(p))).collect();
        let min = vals.iter().min().unwrap();
        let max = vals.iter().max().unwrap();
        !min.is_positive() && !max.is_negative()
    }

    /// Bounding box (x0, x1, y0, y1) in τ-coordinates.
    pub fn bbox(&self) -> (BigRational, BigRational, BigRational, BigRational) {
        let xs = self.vertices.iter().map(|v| v.x.clone());
        let ys = self.vertices.iter().map(|v| v.y.clone());
        (xs.clone().min().unwrap(), xs.max().unwrap(), ys.clone().min().unwrap(), ys.max().unwrap())
    }
}

/// Window vertices as complex floats, for fast filters that defer to the
/// exact tests when a decision is within rounding distance.
#[derive(Debug, Clone)]
pub struct FloatWindow {
    v: Vec<(f64, f64)>,
    eta: f64,
    eps: f64,
}

impl FloatWindow {
    /// u + vτ as a complex float.
    pub fn point(&self, u: f64, v: f64) -> (f64, f64) {
        (u + v * self.eps / 2.0, v * self.eta / 2.0)
    }

    fn nearest(&self, z: (f64, f64)) -> (f64, f64) {
        let v = &self.v;
        let n = v.len();
        let cross = |a: (f64, f64), b: (f64, f64)| a.0 * b.1 - a.1 * b.0;
        let signs: Vec<f64> = (0..n)
            .map(|i| cross((v[(i + 1) % n].0 - v[i].0, v[(i + 1) % n].1 - v[i].1), (z.0 - v[i].0, z.1 - v[i].1)))
            .collect();
        if signs.iter().all(|&s| s >= 0.0) || signs.iter().all(|&s| s <= 0.0) {
            return z;
        }
        let mut best = (f64::INFINITY, z);
        for i in 0..n {
            let (p, q) = (v[i], v[(i + 1) % n]);
            let e = (q.0 - p.0, q.1 - p.1);
            let t = (((z.0 - p.0) * e.0 + (z.1 - p.1) * e.1) / (e.0 * e.0 + e.1 * e.1)).clamp(0.0, 1.0);
            let pt = (p.0 + t * e.0, p.1 + t * e.1);
            let d = (z.0 - pt.0).powi(2) + (z.1 - pt.1).powi(2);
            if d < best.0 {
                best = (d, pt);
            }
        }
        best.1
    }

    /// Whether the squared distance from z to the polygon exceeds `bound`;
    /// None when too close to call.
    pub fn farther_than(&self, z: (f64, f64), bound: f64) -> Option<bool> {
        let d = self.nearest(z);
        let d2 = (z.0 - d.0).powi(2) + (z.1 - d.1).powi(2);
        let tol = 1e-9 * (1.0 + bound + z.0 * z.0 + z.1 * z.1);
        if !d2.is_finite() || !bound.is_finite() {
            None
        } else if d2 > bound + tol {
            Some(true)
        } else if d2 < bound - tol {
            Some(false)
        } else {
            None
        }
    }

    /// Whether the circle meets the polygon; None when too close to call.
    pub fn meets(&self, c: &OrientedCircle) -> Option<bool> {
        let n = c.n.to_f64()?;
        let np = c.nprime.to_f64()?;
        let w = self.point(c.w.u.to_f64()?, c.w.v.to_f64()?);
        let eta = self.eta;
        let e = |z: (f64, f64)| {
            let im = w.1 * z.0 - w.0 * z.1;
            let terms = [n * (z.0 * z.0 + z.1 * z.1), np, 2.0 * im / eta];
            (terms.iter().sum::<f64>(), terms.iter().map(|t| t.abs()).sum::<f64>())
        };
        let mut pts = self.v.clone();
        if n != 0.0 {
            // centre i·w/(nη)
            pts.push(self.nearest((-w.1 / (n * eta), w.0 / (n * eta))));
        }
        let vals: Vec<(f64, f64)> = pts.into_iter().map(e).collect();
        let tol = 1e-9 * (1.0 + vals.iter().map(|v| v.1).fold(0.0, f64::max));
        let min = vals.iter().map(|v| v.0).fold(f64::INFINITY, f64::min);
        let max = vals.iter().map(|v| v.0).fold(f64::NEG_INFINITY, f64::max);
        if !min.is_finite() || !max.is_finite() {
            None
        } else if min > tol || max < -tol {
            Some(false)
        } else if min < -tol && max > tol {
            Some(true)
        } else {
            None
        }
    }
}

/// Sign of Im(ā·b).
fn cross_sign(disc: &Disc, a: &KNum, b: &KNum) -> i32 {
    let y = a.conj(disc).mul(disc, b).y;
    if y.is_positive() {
        1
    } else if y.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qint::rat;

    #[test]
    fn fundamental_window() {
        let d = Disc::new(-7).unwrap();
        let w = Window::fundamental(&d);
        assert!(w.contains(&d, &KNum::new(rat(1, 2), rat(1, 2))));
        assert!(w.contains(&d, &KNum::from_ints(1, 1)));
        assert!(!w.contains(&d, &KNum::new(rat(3, 2), rat(1, 2))));
        assert_eq!(w.nearest(&d, &KNum::from_ints(-1, 0)), KNum::from_ints(0, 0));
        assert_eq!(w.dist_sq(&d, &KNum::from_ints(2, 0)), rat(7, 8));
        assert!(w.meets(&d, &OrientedCircle::real_line(d)));
        assert!(w.farther_than(&d, &KNum::from_ints(2, 0), &rat(6, 8)));
        assert!(!w.farther_than(&d, &KNum::from_ints(2, 0), &rat(7, 8)));
    }

    #[test]
    fn float_and_exact_meets_agree() {
        let d = Disc::new(-7).unwrap();
        let w = Window::fundamental(&d);
        let circles = crate::arrangement::enumerate_arrangement(&crate::arrangement::ArrangementQuery {
            disc: d,
            max_reduced_curv: 4,
            window: Window::rectangle(&d, rat(-2, 1), rat(3, 1), rat(-2, 1), rat(3, 1)).unwrap(),
        });
        let mut hits = 0;
        for c in &circles {
            let exact = w.meets_exact(&d, c);
            if let Some(f) = w.float_view(&d).meets(c) {
                assert_eq!(f, exact, "{c:?}");
            }
            hits += exact as usize;
        }
        assert!(hits > 0 && hits < circles.len());
    }

    #[test]
    fn rectangle_rejects_degenerate() {
        let d = Disc::new(-4).unwrap();
        assert!(Window::rectangle(&d, rat(1, 1), rat(1, 1), rat(0, 1), rat(1, 1)).is_err());
        let r = Window::rectangle(&d, rat(0, 1), rat(1, 1), rat(0, 1), rat(1, 1)).unwrap();
        assert_eq!(r, Window::fundamental(&d));
    }
}

//! SVG output. Geometry is exact up to this point; coordinates are converted
//! to floats here and printed with 12 significant digits.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::circle::OrientedCircle;
use crate::qint::{Disc, KNum, KPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Circle,
    Ghost,
}

#[derive(Debug, Clone)]
pub struct Item {
    pub circle: OrientedCircle,
    pub style: Style,
}

/// View rectangle re ∈ [re0, re1], im ∈ [im0·η, im1·η] with η = √|Δ|.
#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    pub disc: Disc,
    pub re0: BigRational,
    pub re1: BigRational,
    pub im0: BigRational,
    pub im1: BigRational,
    pub width_px: u32,
    /// Stroke is stroke_scale/|n| pixels, at least min_stroke.
    pub stroke_scale: f64,
    pub min_stroke: f64,
    pub labels: bool,
    /// Outline drawn under the circles, e.g. the enumeration window.
    pub outline: Vec<KNum>,
    /// Also draw translates by ±1, for packings reported modulo 1.
    pub periodic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RenderError {
    #[error("view rectangle is degenerate")]
    Degenerate,
}

impl RenderSpec {
    pub fn new(
        disc: Disc,
        re: (BigRational, BigRational),
        im: (BigRational, BigRational),
    ) -> Result<RenderSpec, RenderError> {
        if re.0 >= re.1 || im.0 >= im.1 {
            return Err(RenderError::Degenerate);
        }
        Ok(RenderSpec {
            disc,
            re0: re.0,
            re1: re.1,
            im0: im.0,
            im1: im.1,
            width_px: 800,
            stroke_scale: 2.0,
            min_stroke: 0.2,
            labels: false,
            outline: Vec::new(),
            periodic: false,
        })
    }

    /// Bounding rectangle of some points, widened by `margin` of its size.
    pub fn around(disc: Disc, pts: &[KNum], margin: BigRational) -> Result<RenderSpec, RenderError> {
        let res: Vec<BigRational> = pts.iter().map(|p| p.re(&disc)).collect();
        let ims: Vec<BigRational> = pts.iter().map(|p| p.im_over_eta()).collect();
        let (r0, r1) = (res.iter().min().cloned(), res.iter().max().cloned());
        let (i0, i1) = (ims.iter().min().cloned(), ims.iter().max().cloned());
        let (r0, r1, i0, i1) = match (r0, r1, i0, i1) {
            (Some(a), Some(b), Some(c), Some(d)) => (a, b, c, d),
            _ => return Err(RenderError::Degenerate),
        };
        let pad_re = (&r1 - &r0) * &margin;
        let pad_im = (&i1 - &i0) * &margin;
        RenderSpec::new(disc, (&r0 - &pad_re, &r1 + &pad_re), (&i0 - &pad_im, &i1 + &pad_im))
    }
}

/// Fixed-point text with 12 significant digits and no trailing zeros.
pub fn num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".into();
    }
    let e = x.abs().log10().floor() as i32;
    let dec = (11 - e).max(0) as usize;
    let mut s = format!("{:.*}", dec, x);
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

struct Frame {
    re0: f64,
    im1: f64,
    scale: f64,
    eta: f64,
}

impl Frame {
    fn pt(&self, re: f64, im: f64) -> (f64, f64) {
        ((re - self.re0) * self.scale, (self.im1 - im) * self.scale)
    }
}

fn knum_f(disc: &Disc, z: &KNum, eta: f64) -> (f64, f64) {
    (z.re(disc).to_f64().unwrap_or(f64::NAN), z.im_over_eta().to_f64().unwrap_or(f64::NAN) * eta)
}

fn stroke_of(spec: &RenderSpec, c: &OrientedCircle) -> f64 {
    let n = c.n.abs().to_f64().unwrap_or(f64::INFINITY);
    if n == 0.0 {
        spec.stroke_scale
    } else {
        (spec.stroke_scale / n).max(spec.min_stroke)
    }
}

fn colour(c: &OrientedCircle, style: Style) -> &'static str {
    match style {
        Style::Ghost => "#e8c500",
        Style::Circle if c.n.is_negative() => "#1f4e9c",
        Style::Circle => "#000000",
    }
}

fn draw(out: &mut String, spec: &RenderSpec, f: &Frame, c: &OrientedCircle, style: Style, shift: f64) {
    let disc = &spec.disc;
    let sw = num(stroke_of(spec, c));
    let col = colour(c, style);
    let fill = if style == Style::Ghost { "#fff3a0" } else { "none" };
    match c.center() {
        Some(z) => {
            let (re, im) = knum_f(disc, &z, f.eta);
            let r = 1.0 / (c.n.abs().to_f64().unwrap_or(f64::INFINITY) * f.eta);
            let (x, y) = f.pt(re + shift, im);
            out.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{fill}\" stroke=\"{col}\" stroke-width=\"{sw}\"/>\n",
                num(x),
                num(y),
                num(r * f.scale)
            ));
            if spec.labels && style == Style::Circle {
                let text = c.n.to_string();
                let mut size = (r * f.scale * 1.2 / (text.len() as f64).max(1.5)).min(40.0);
                let (mut x, mut y) = (x, y);
                if c.n.is_negative() {
                    // the outer circle is labelled outside it, top left
                    size = size.min(24.0);
                    x -= 0.85 * r * f.scale;
                    y -= 0.85 * r * f.scale;
                }
                if size >= 3.0 {
                    out.push_str(&format!(
                        "<text x=\"{}\" y=\"{}\" font-size=\"{}\" text-anchor=\"middle\" dominant-baseline=\"central\">{text}</text>\n",
                        num(x),
                        num(y),
                        num(size)
                    ));
                }
            }
        }
        None => {
            // a line through z0 in direction w
            let z0 = match &c.sample_points()[1] {
                KPoint::Finite(z) => knum_f(disc, z, f.eta),
                KPoint::Infinity => return,
            };
            let dir = knum_f(disc, &c.w.to_knum(), f.eta);
            let len = (dir.0 * dir.0 + dir.1 * dir.1).sqrt();
            let reach = 4.0
                * ((spec.re1.clone() - spec.re0.clone()).to_f64().unwrap_or(1.0)
                    + (spec.im1.clone() - spec.im0.clone()).to_f64().unwrap_or(1.0) * f.eta)
                + (z0.0.abs() + z0.1.abs());
            let (dx, dy) = (dir.0 / len * reach, dir.1 / len * reach);
            let (x1, y1) = f.pt(z0.0 - dx + shift, z0.1 - dy);
            let (x2, y2) = f.pt(z0.0 + dx + shift, z0.1 + dy);
            out.push_str(&format!(
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{col}\" stroke-width=\"{sw}\"/>\n",
                num(x1),
                num(y1),
                num(x2),
                num(y2)
            ));
        }
    }
}

pub fn render(spec: &RenderSpec, items: &[Item]) -> String {
    let eta = (spec.disc.abs() as f64).sqrt();
    let re0 = spec.re0.to_f64().unwrap_or(0.0);
    let re1 = spec.re1.to_f64().unwrap_or(1.0);
    let im0 = spec.im0.to_f64().unwrap_or(0.0) * eta;
    let im1 = spec.im1.to_f64().unwrap_or(1.0) * eta;
    let scale = spec.width_px as f64 / (re1 - re0);
    let f = Frame { re0, im1, scale, eta };
    let w = spec.width_px as f64;
    let h = (im1 - im0) * scale;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        num(w),
        num(h),
        num(w),
        num(h)
    ));
    out.push_str(&format!(
        "<defs><clipPath id=\"view\"><rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\"/></clipPath></defs>\n",
        num(w),
        num(h)
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n<g clip-path=\"url(#view)\">\n");
    if !spec.outline.is_empty() {
        let pts: Vec<String> = spec
            .outline
            .iter()
            .map(|z| {
                let (re, im) = knum_f(&spec.disc, z, eta);
                let (x, y) = f.pt(re, im);
                format!("{},{}", num(x), num(y))
            })
            .collect();
        out.push_str(&format!(
            "<polygon points=\"{}\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n",
            pts.join(" ")
        ));
    }
    let shifts: &[f64] = if spec.periodic { &[-1.0, 0.0, 1.0] } else { &[0.0] };
    for style in [Style::Ghost, Style::Circle] {
        for it in items.iter().filter(|i| i.style == style) {
            for &s in shifts {
                draw(&mut out, spec, &f, &it.circle, style, s);
            }
        }
    }
    out.push_str("</g>\n</svg>\n");
    out
}

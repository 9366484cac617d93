//! Fundamental K-Apollonian packings: the strip packing containing R̂ and
//! its bounded image, listed by reduced curvature.

use kapollo::packing::{fundamental_packing, PackingKind};
use kapollo::qint::Disc;

fn main() {
    let d: i64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(-8);
    let k = Disc::new(d).expect("discriminant");
    for kind in [PackingKind::Strip, PackingKind::Bounded] {
        let p = fundamental_packing(k, kind, 40).unwrap();
        let curv: Vec<String> = p.curvatures().iter().map(|n| n.to_string()).collect();
        println!("{} packing of {k} ({} clusters visited):", kind.name(), p.clusters_visited);
        println!("  {}", curv.join(" "));
    }
}

//! Group registry: generators as Möbius maps and as matrices in O_R, the
//! correspondence between them, and the presentation checks.

use kapollo::groups::{self, registry_entries};
use kapollo::qint::Disc;

fn main() {
    let d: i64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(-19);
    let k = Disc::new(d).expect("discriminant");
    for e in registry_entries(k) {
        println!("{} ({} cluster, {} generators)", e.name, e.flavor.name(), e.algebraic.len());
        for (g, a) in e.geometric.iter().zip(&e.algebraic) {
            println!("  {g}  ->  {}", kapollo::mat::format(a));
        }
        let mut checks = groups::check_presentation(&e, 6);
        checks.extend(groups::check_correspondence(&e, 20, 6, 1));
        for c in checks {
            println!("  [{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
        }
    }
    let t = groups::topograph_bfs(3);
    println!("topograph to depth 3: {} superbases, tree = {}", t.vertices.len(), t.is_tree());
}

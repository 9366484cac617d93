//! Residues of reduced curvatures and the tables of observed residue sets.

use kapollo::curvlab::{conjecture_modulus, packing_census, table_membership};
use kapollo::groups::SUPPORTED;
use kapollo::packing::PackingKind;
use kapollo::qint::Disc;

fn main() {
    let bound = 500;
    for d in SUPPORTED {
        let k = Disc::new(d).unwrap();
        let m = conjecture_modulus(&k);
        let modulus = m.m * 6 / num_integer::gcd(m.m, 6);
        for kind in [PackingKind::Strip, PackingKind::Bounded] {
            let r = packing_census(k, kind, modulus, bound, false).unwrap();
            let s_m: Vec<u64> =
                r.observed.iter().map(|x| x % m.m).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
            println!(
                "Δ = {d:4} {:8} M = {:2}  S_M = {s_m:?}  in table: {}",
                kind.name(),
                m.m,
                table_membership(&k, modulus, &r.observed).unwrap()
            );
        }
    }
}

//! Write SVG figures: a Schmidt arrangement and a labelled packing.

use kapollo::commands::{arrange, pack, ArrangeArgs, BaseArg, OutFormat, PackArgs};
use kapollo::packing::PackingKind;

fn main() {
    let dir = std::env::temp_dir();
    let a = arrange(&ArrangeArgs {
        disc: -4,
        max_curv: 20,
        window: None,
        out: OutFormat::Svg,
        ghosts: false,
        labels: false,
    })
    .unwrap();
    let p = pack(&PackArgs {
        disc: -8,
        base: BaseArg::Fundamental,
        kind: PackingKind::Bounded,
        max_curv: 50,
        out: OutFormat::Svg,
        labels: true,
        saturate: false,
    })
    .unwrap();
    for (name, out) in [("arrangement-4.svg", a), ("packing-8.svg", p)] {
        let path = dir.join(name);
        std::fs::write(&path, out.text).unwrap();
        println!("wrote {}", path.display());
    }
}

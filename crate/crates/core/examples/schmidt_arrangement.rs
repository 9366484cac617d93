//! The truncated Schmidt arrangement of Q(√−15), its immediate-tangency
//! forest, and the ghost circles separating it.

use kapollo::arrangement::{
    build_graph, circles_meet, cycle_check, enumerate_arrangement, ghost_chain, ArrangementQuery, GraphFlavor,
};
use kapollo::qint::Disc;

fn main() {
    let k = Disc::new(-15).unwrap();
    let circles = enumerate_arrangement(&ArrangementQuery::fundamental(k, 12));
    println!("{} oriented circles with |n| ≤ 12 meet the fundamental parallelogram", circles.len());

    let positive: Vec<_> = circles.iter().filter(|c| c.n.sign() != num_bigint::Sign::Minus).cloned().collect();
    let g = build_graph(&positive, GraphFlavor::ImmediateOnly);
    println!(
        "immediate tangency graph: {} vertices, {} edges, {} cycles",
        g.vertices.len(),
        g.edges.len(),
        cycle_check(&g).len()
    );

    let ghosts = ghost_chain(&k, 1).unwrap();
    let hits = ghosts.iter().filter(|gh| circles.iter().any(|c| circles_meet(gh, c))).count();
    println!("ghost circles G′, G″ tangent at {}", ghosts[0].tangency_point(&ghosts[1]).unwrap());
    println!("ghosts meeting an arrangement circle: {hits}");
}

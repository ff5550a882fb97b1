//! Zero-divisor graphs, recognition of K_n and K_n + 1, and DOT output.

use zdsemi::{build_zd_graph, recognize_target, MulTable, TargetGraph};

fn main() -> zdsemi::Result<()> {
    // K_3 plus an end vertex: a1..a3 at 1..3, x1 at 4.
    // a2 x1 = a3 x1 = a1, x1^2 = a1, every a_i^2 = 0.
    let mut t = MulTable::zero(4);
    t.set(2, 4, 1)?;
    t.set(3, 4, 1)?;
    t.set(4, 4, 1)?;
    assert!(t.is_zd_semigroup());

    let g = build_zd_graph(&t);
    let edges: Vec<_> = g.edges().collect();
    println!("edges: {edges:?}");

    let r = recognize_target(&g).expect("one of the target families");
    println!(
        "recognized {} with (pendant, neighbor) = {:?}",
        r.target, r.pendant
    );
    print!("{}", g.to_dot("example", r.pendant.map(|(p, _)| p)));

    // The families themselves in the standard layout.
    for target in [
        TargetGraph::CompleteK { n: 4 },
        TargetGraph::CompletePlusEnd { n: 4 },
    ] {
        let g = target.graph();
        println!("{target}: {} edges, slug {}", g.edge_count(), target.slug());
    }

    // A path on four vertices is neither.
    let mut p4 = MulTable::zero(4);
    for (u, v) in [(1, 3), (1, 4), (2, 4)] {
        p4.set(u, v, 1)?;
    }
    println!(
        "P4-like graph recognized: {:?}",
        recognize_target(&build_zd_graph(&p4))
    );
    Ok(())
}

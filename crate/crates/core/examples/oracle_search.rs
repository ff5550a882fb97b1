//! The brute-force oracle: every labeled table realizing a target graph.

use std::time::Instant;

use zdsemi::enumerate::{enumerate_with_stats, oracle_classes, seed_partial_table, EnumOptions};
use zdsemi::TargetGraph;

fn main() -> zdsemi::Result<()> {
    for target in [
        TargetGraph::CompleteK { n: 3 },
        TargetGraph::CompleteK { n: 5 },
        TargetGraph::CompletePlusEnd { n: 3 },
        TargetGraph::CompletePlusEnd { n: 4 },
    ] {
        let spec = seed_partial_table(target)?;
        let sizes: Vec<usize> = spec.slots.iter().map(|s| s.domain.len()).collect();
        println!(
            "{target}: {} free cells {sizes:?}, raw space {}",
            spec.slots.len(),
            spec.space_size()
        );

        for prune in [false, true] {
            if !prune && !spec.within_desk_budget() {
                continue;
            }
            let opts = EnumOptions {
                prune,
                ..EnumOptions::default()
            };
            let start = Instant::now();
            let stats = enumerate_with_stats(target, &opts, |_| {})?;
            println!(
                "  prune={prune:<5} assignments {:>9} accepted {:>4} in {:?}",
                stats.assignments,
                stats.accepted,
                start.elapsed()
            );
        }
        let classes = oracle_classes(target, &EnumOptions::default())?;
        println!("  {} isomorphism classes", classes.class_count());
    }

    // Pinning x1^2 restricts the search to one root branch.
    let opts = EnumOptions {
        x1_square: Some(1),
        ..EnumOptions::default()
    };
    let mut squares = Vec::new();
    enumerate_with_stats(TargetGraph::CompletePlusEnd { n: 3 }, &opts, |t| {
        squares.push((t.product(2, 2), t.product(3, 3)));
    })?;
    println!("K_3+1 with x1^2 = a1: (a2^2, a3^2) in {squares:?}");
    Ok(())
}

//! Compare associativity with the structure-theorem conditions over every
//! table that has the forced zero pattern.

use zdsemi::audit::{ideal_violations, scan_complete, scan_pendant};
use zdsemi::enumerate::{enumerate_labeled, EnumOptions};
use zdsemi::formulas::NeighborRule;
use zdsemi::{canonical_form, TargetGraph};

fn main() -> zdsemi::Result<()> {
    for n in 1..=5 {
        let t = scan_complete(n)?;
        println!(
            "K_{n}: {} tables, {} associative, {} counterexamples",
            t.tables,
            t.associative,
            t.counterexamples()
        );
    }

    for n in [3, 4] {
        for rule in [NeighborRule::AsStated, NeighborRule::Complete] {
            println!("K_{n}+1, neighbor rule {rule:?}");
            for (case, t) in scan_pendant(n, rule)? {
                println!(
                    "  {case:<8} {:>7} tables {:>4} associative {:>3} missed {:>3} spurious",
                    t.tables, t.associative, t.missed, t.spurious
                );
                for w in &t.missed_samples {
                    println!("    missed {}", canonical_form(w));
                }
            }
        }

        let mut violations = 0;
        let accepted = enumerate_labeled(
            TargetGraph::CompletePlusEnd { n },
            &EnumOptions::default(),
            |t| {
                violations += ideal_violations(t, n).len();
            },
        )?;
        println!("  ideal property: {violations} violations in {accepted} tables");
    }
    Ok(())
}

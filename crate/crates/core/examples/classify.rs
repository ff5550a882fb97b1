//! Canonical keys, class catalogs and square profiles.

use zdsemi::classify::{canonical_labeling, square_profile};
use zdsemi::enumerate::{collect_labeled, EnumOptions};
use zdsemi::{canonical_form, ClassCatalog, TargetGraph};

fn main() -> zdsemi::Result<()> {
    let tables = collect_labeled(TargetGraph::CompleteK { n: 3 }, &EnumOptions::default())?;
    println!("{} labeled K_3 tables", tables.len());

    // Relabeling does not change the key.
    let t = &tables[5];
    let (key, perm) = canonical_labeling(t);
    println!("key {key}, relabeling {perm:?}");
    let swapped = t.permute(&[0, 2, 1, 3])?;
    assert_eq!(canonical_form(&swapped), key);
    assert_eq!(t.permute(&perm)?, key.to_table());

    let catalog: ClassCatalog = tables.into_iter().collect();
    println!(
        "{} classes, {} labeled tables",
        catalog.class_count(),
        catalog.labeled_count()
    );
    for e in catalog.entries() {
        let p = square_profile(&e.representative)?;
        println!(
            "  {} x{:<2} k={} t={} mu={:?}",
            e.key,
            e.multiplicity,
            p.k(),
            p.t(),
            p.mu
        );
    }

    let json = catalog.to_json();
    assert_eq!(ClassCatalog::from_json(&json)?, catalog);
    Ok(())
}

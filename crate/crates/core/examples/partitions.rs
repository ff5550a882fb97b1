//! Partitions into exactly i parts and the K_n class count s(n).

use zdsemi::formulas::{gen_complete, p_exact, partitions_exact, s_of_n};

fn main() -> zdsemi::Result<()> {
    println!("p(j, i) for j <= 8:");
    for j in 0..=8 {
        let row: Vec<String> = (0..=j).map(|i| format!("{:>2}", p_exact(j, i))).collect();
        println!("  j={j}: {}", row.join(" "));
    }
    println!("partitions of 7 into 3 parts: {:?}", partitions_exact(7, 3));

    println!("  n  s(n)  profile generator");
    for n in 1..=8 {
        let g = gen_complete(n)?;
        println!(
            "  {n}  {:>4}  {:>4} ({} rejected)",
            s_of_n(n),
            g.class_count(),
            g.rejected.len()
        );
    }
    Ok(())
}

//! Build small commutative tables by hand and test them.
//!
//! Run with `cargo run --example associativity`.

use zdsemi::{ElementId, MulTable};

fn diagonal(squares: &[usize]) -> MulTable {
    let mut t = MulTable::zero(squares.len());
    for (i, &s) in squares.iter().enumerate() {
        t.set(i + 1, i + 1, s).expect("square in range");
    }
    t
}

fn main() -> zdsemi::Result<()> {
    // {0, a1, a2} with a1 a2 = 0, a1^2 = 0, a2^2 = a1.
    let good = diagonal(&[0, 1]);
    println!("{good:?}");
    println!("associative: {}", good.is_associative());
    println!("zero-divisor semigroup: {}", good.is_zd_semigroup());
    let a2 = ElementId(2);
    println!("a2 * a2 = {:?}", good.mul(a2, a2)?);

    // a1^2 = a2 and a2^2 = a2 breaks associativity.
    let bad = diagonal(&[2, 2]);
    if let Some(w) = bad.check_associativity() {
        let (x, y, z) = w.triple;
        println!(
            "({} {}) {} = {} but {} ({} {}) = {}",
            x.0, y.0, z.0, w.lhs.0, x.0, y.0, z.0, w.rhs.0
        );
    }

    // JSON uses the full grid.
    let json = good.to_json();
    println!("{json}");
    assert_eq!(MulTable::from_json(&json)?, good);

    // Asymmetric grids are rejected.
    let bad_json = r#"{"m":2,"entries":[[0,0,0],[0,0,1],[0,0,0]]}"#;
    println!("{}", MulTable::from_json(bad_json).unwrap_err());
    Ok(())
}

use crate::error::{Error, Result};
use crate::graph::TargetGraph;
use crate::table::MulTable;

use super::partition::partitions_exact;
use super::Generated;

/// Square conditions for a table on `{0, a_1..a_n}` whose off-diagonal
/// products are zero: each `a_i^2` is `0`, `a_i`, or some `a_j` (`j != i`)
/// with `a_j^2 = 0`.
pub fn check_complete(t: &MulTable) -> Result<bool> {
    let n = t.m();
    for u in 1..=n {
        for v in u + 1..=n {
            if t.product(u, v) != 0 {
                return Err(Error::usage(format!(
                    "off-diagonal product a{u} a{v} is not zero"
                )));
            }
        }
    }
    Ok((1..=n).all(|i| match t.product(i, i) {
        0 => true,
        s if s == i => true,
        s => t.product(s, s) == 0,
    }))
}

/// One table per square profile: `k` nilpotents, `t` idempotents and the
/// pointer multiplicities given by a partition of `n - t` into `k` parts
/// (each part counts its nilpotent plus the pointers onto it), followed by
/// the all-idempotent table.
///
/// Layout: nilpotents first, each followed by its pointers, then the
/// idempotents.
pub fn kn_profile_tables(n: usize) -> Vec<MulTable> {
    let mut out = Vec::new();
    for k in 1..=n {
        for idem in 0..=n - k {
            for parts in partitions_exact(n - idem, k) {
                let mut t = MulTable::zero(n);
                let mut next = 1;
                for &d in &parts {
                    let nil = next;
                    next += 1;
                    for _ in 1..d {
                        t.set_unchecked(next, next, nil);
                        next += 1;
                    }
                }
                for _ in 0..idem {
                    t.set_unchecked(next, next, next);
                    next += 1;
                }
                debug_assert_eq!(next, n + 1);
                out.push(t);
            }
        }
    }
    let mut all_idem = MulTable::zero(n);
    for i in 1..=n {
        all_idem.set_unchecked(i, i, i);
    }
    out.push(all_idem);
    out
}

/// Profile-driven generator for `K_n`.
pub fn gen_complete(n: usize) -> Result<Generated> {
    if n == 0 {
        return Err(Error::usage("K_n needs n >= 1"));
    }
    Ok(Generated::from_tables(
        TargetGraph::CompleteK { n },
        kn_profile_tables(n),
    ))
}

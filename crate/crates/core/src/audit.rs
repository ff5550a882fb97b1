//! Exhaustive audits of the structure theorems over the raw search space:
//! for every table with the forced zero pattern, associativity is compared
//! with the theorem's conditions, and accepted pendant tables are checked
//! for the ideal property of the clique.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::census::PendantCase;
use crate::enumerate::{for_each_assignment, seed_partial_table};
use crate::error::{Error, Result};
use crate::formulas::{
    check_clique_case, check_complete, check_idempotent_case, check_neighbor_case,
    check_neighbor_stated, check_nil_case, NeighborRule,
};
use crate::graph::TargetGraph;
use crate::table::MulTable;

/// Counterexample tables kept per direction; the counts are always exact.
pub const SAMPLE_LIMIT: usize = 64;

/// Associativity against theorem conditions on one slice of the space.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EquivalenceTally {
    pub tables: u64,
    pub associative: u64,
    pub conditions_hold: u64,
    /// Associative tables the conditions reject.
    pub missed: u64,
    /// Tables the conditions accept that are not associative.
    pub spurious: u64,
    pub missed_samples: Vec<MulTable>,
    pub spurious_samples: Vec<MulTable>,
}

impl EquivalenceTally {
    fn record(&mut self, t: &MulTable, associative: bool, holds: bool) {
        self.tables += 1;
        self.associative += associative as u64;
        self.conditions_hold += holds as u64;
        match (associative, holds) {
            (true, false) => {
                self.missed += 1;
                if self.missed_samples.len() < SAMPLE_LIMIT {
                    self.missed_samples.push(t.clone());
                }
            }
            (false, true) => {
                self.spurious += 1;
                if self.spurious_samples.len() < SAMPLE_LIMIT {
                    self.spurious_samples.push(t.clone());
                }
            }
            _ => {}
        }
    }

    pub fn counterexamples(&self) -> u64 {
        self.missed + self.spurious
    }

    pub fn is_exact(&self) -> bool {
        self.counterexamples() == 0
    }
}

/// Scan all `(n + 1)^n` diagonals of `K_n` against the square conditions.
pub fn scan_complete(n: usize) -> Result<EquivalenceTally> {
    let spec = seed_partial_table(TargetGraph::CompleteK { n })?;
    let mut tally = EquivalenceTally::default();
    let mut err = None;
    for_each_assignment(&spec, |t| match check_complete(t) {
        Ok(holds) => tally.record(t, t.is_associative(), holds),
        Err(e) => err = Some(e),
    });
    match err {
        Some(e) => Err(e),
        None => Ok(tally),
    }
}

/// Scan the whole `K_n + 1` space, each table judged by the conditions of
/// its `x_1^2` case. `rule` picks the condition set for `x_1^2 = a_1`.
pub fn scan_pendant(
    n: usize,
    rule: NeighborRule,
) -> Result<BTreeMap<PendantCase, EquivalenceTally>> {
    if n < 3 {
        return Err(Error::usage(format!(
            "pendant audit needs n >= 3 (got {n})"
        )));
    }
    let spec = seed_partial_table(TargetGraph::CompletePlusEnd { n })?;
    let mut out: BTreeMap<PendantCase, EquivalenceTally> = PendantCase::ALL
        .into_iter()
        .map(|c| (c, Default::default()))
        .collect();
    let mut err = None;
    for_each_assignment(&spec, |t| {
        let Some(case) = PendantCase::of(t, n) else {
            return;
        };
        let holds = match case {
            PendantCase::Nil => check_nil_case(t, n),
            PendantCase::Idempotent => check_idempotent_case(t, n),
            PendantCase::Neighbor => match rule {
                NeighborRule::AsStated => check_neighbor_stated(t, n),
                NeighborRule::Complete => check_neighbor_case(t, n),
            },
            PendantCase::Clique => check_clique_case(t, n),
        };
        match holds {
            Ok(h) => out.get_mut(&case).unwrap().record(t, t.is_associative(), h),
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Products `a_i s` that leave `{0, a_1..a_n}`, as `(i, s)` pairs.
pub fn ideal_violations(t: &MulTable, n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for s in 0..=t.m() {
            if t.product(i, s) > n {
                out.push((i, s));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_conditions_are_exact() {
        for n in 1..=4 {
            let tally = scan_complete(n).unwrap();
            assert_eq!(tally.tables, (n as u64 + 1).pow(n as u32));
            assert!(tally.is_exact(), "n = {n}: {tally:?}");
        }
    }

    #[test]
    fn pendant_conditions_at_n3() {
        let stated = scan_pendant(3, NeighborRule::AsStated).unwrap();
        let total: u64 = stated.values().map(|t| t.tables).sum();
        assert_eq!(total, 10_000);
        for (case, tally) in &stated {
            if *case == PendantCase::Neighbor {
                // a2^2, a3^2 in {0, a1}, not all zero.
                assert_eq!((tally.missed, tally.spurious), (3, 0));
            } else {
                assert!(tally.is_exact(), "{case}: {tally:?}");
            }
        }
        let complete = scan_pendant(3, NeighborRule::Complete).unwrap();
        assert!(complete.values().all(EquivalenceTally::is_exact));
    }

    #[test]
    fn ideal_check_flags_escape() {
        let mut t = MulTable::zero(4);
        t.set(2, 4, 4).unwrap();
        assert_eq!(ideal_violations(&t, 3), vec![(2, 4)]);
    }
}

//! Bookkeeping for `K_n` plus an end vertex: classes split by the value of
//! `x_1^2`, and the idempotent case further split by how many clique
//! elements `x_1` fixes.
//!
//! All helpers here assume the standard layout: `a_1..a_n` at `1..=n`,
//! `x_1` at `n + 1`, and `a_1 x_1 = 0`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classify::{canonical_form, CanonicalKey, ClassCatalog};
use crate::table::MulTable;

/// The four possible shapes of `x_1^2` up to symmetry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PendantCase {
    /// `x_1^2 = 0`
    Nil,
    /// `x_1^2 = x_1`
    Idempotent,
    /// `x_1^2 = a_1`, the neighbor of the end vertex
    Neighbor,
    /// `x_1^2 = a_j` for some `j >= 2`
    Clique,
}

impl PendantCase {
    pub const ALL: [PendantCase; 4] = [
        PendantCase::Nil,
        PendantCase::Idempotent,
        PendantCase::Neighbor,
        PendantCase::Clique,
    ];

    /// Classify a labeled table; `None` if `x_1^2` is out of range.
    pub fn of(t: &MulTable, n: usize) -> Option<PendantCase> {
        let x = n + 1;
        match t.product(x, x) {
            0 => Some(PendantCase::Nil),
            s if s == x => Some(PendantCase::Idempotent),
            1 => Some(PendantCase::Neighbor),
            s if (2..=n).contains(&s) => Some(PendantCase::Clique),
            _ => None,
        }
    }

    /// Stable short name, also used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            PendantCase::Nil => "0",
            PendantCase::Idempotent => "x1",
            PendantCase::Neighbor => "a1",
            PendantCase::Clique => "a2",
        }
    }

    pub fn parse(s: &str) -> Option<PendantCase> {
        PendantCase::ALL.into_iter().find(|c| c.name() == s)
    }
}

impl fmt::Display for PendantCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x1^2={}", self.name())
    }
}

/// `r = #{ i >= 2 : a_i x_1 = a_i }`.
pub fn fixed_count(t: &MulTable, n: usize) -> usize {
    let x = n + 1;
    (2..=n).filter(|&i| t.product(i, x) == i).count()
}

/// Classes of `K_n + 1` semigroups broken down by case and stratum.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PendantCensus {
    pub n: usize,
    pub cases: BTreeMap<PendantCase, ClassCatalog>,
    /// Idempotent-case classes keyed by `r`.
    pub strata: BTreeMap<usize, ClassCatalog>,
}

impl PendantCensus {
    pub fn new(n: usize) -> Self {
        let mut cases = BTreeMap::new();
        for c in PendantCase::ALL {
            cases.insert(c, ClassCatalog::new());
        }
        PendantCensus {
            n,
            cases,
            strata: BTreeMap::new(),
        }
    }

    /// Insert a labeled table in the standard layout. Tables whose `x_1^2`
    /// is out of range are ignored and reported with `false`.
    pub fn insert(&mut self, t: &MulTable) -> bool {
        let Some(case) = PendantCase::of(t, self.n) else {
            return false;
        };
        let key = canonical_form(t);
        if case == PendantCase::Idempotent {
            self.strata
                .entry(fixed_count(t, self.n))
                .or_default()
                .insert_keyed(key.clone());
        }
        self.cases.get_mut(&case).unwrap().insert_keyed(key);
        true
    }

    pub fn merge(&mut self, other: PendantCensus) {
        for (c, cat) in other.cases {
            self.cases.entry(c).or_default().merge(cat);
        }
        for (r, cat) in other.strata {
            self.strata.entry(r).or_default().merge(cat);
        }
    }

    pub fn case(&self, c: PendantCase) -> &ClassCatalog {
        &self.cases[&c]
    }

    pub fn case_count(&self, c: PendantCase) -> usize {
        self.cases.get(&c).map_or(0, ClassCatalog::class_count)
    }

    /// Number of idempotent-case classes.
    pub fn k2(&self) -> usize {
        self.case_count(PendantCase::Idempotent)
    }

    pub fn stratum_count(&self, r: usize) -> usize {
        self.strata.get(&r).map_or(0, ClassCatalog::class_count)
    }

    pub fn total(&self) -> usize {
        self.cases.values().map(ClassCatalog::class_count).sum()
    }

    /// Union of all four case catalogs.
    pub fn all(&self) -> ClassCatalog {
        let mut c = ClassCatalog::new();
        for cat in self.cases.values() {
            c.merge(cat.clone());
        }
        c
    }

    pub fn all_keys(&self) -> Vec<CanonicalKey> {
        self.all().keys().cloned().collect()
    }

    /// Keys occurring in more than one case catalog.
    pub fn overlapping_keys(&self) -> Vec<CanonicalKey> {
        let mut seen: BTreeMap<&CanonicalKey, usize> = BTreeMap::new();
        for cat in self.cases.values() {
            for k in cat.keys() {
                *seen.entry(k).or_default() += 1;
            }
        }
        seen.into_iter()
            .filter(|&(_, c)| c > 1)
            .map(|(k, _)| k.clone())
            .collect()
    }
}

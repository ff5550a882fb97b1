//! `K_n` plus an end vertex, case by case on `x_1^2`.
//!
//! Tables use the standard layout: `a_1..a_n` at `1..=n`, `x_1` at `n + 1`,
//! `a_i a_j = 0` for `i != j`, `a_1 x_1 = 0` and `a_i x_1 != 0` for `i >= 2`.
//! Below, `f(i)` is `a_i x_1` and `sq(i)` is `a_i^2`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::census::{fixed_count, PendantCase, PendantCensus};
use crate::classify::ClassCatalog;
use crate::error::{Error, Result};
use crate::graph::TargetGraph;
use crate::table::MulTable;

use super::partition::s_of_n;
use super::Generated;

fn require_n(n: usize) -> Result<()> {
    if n < 3 {
        Err(Error::usage(format!(
            "the K_n+1 structure theorems need n >= 3 (got {n})"
        )))
    } else {
        Ok(())
    }
}

/// Whether `t` has the forced zero pattern of `K_n + 1` in the standard
/// layout.
pub fn pendant_layout_ok(t: &MulTable, n: usize) -> bool {
    if t.m() != n + 1 {
        return false;
    }
    let x = n + 1;
    let clique = (1..=n).all(|u| (u + 1..=n).all(|v| t.product(u, v) == 0));
    clique && t.product(1, x) == 0 && (2..=n).all(|i| t.product(i, x) != 0)
}

fn require_layout(t: &MulTable, n: usize, case: Option<PendantCase>) -> Result<()> {
    if !pendant_layout_ok(t, n) {
        return Err(Error::usage(format!(
            "table does not have the K_{n}+1 zero pattern"
        )));
    }
    match (case, PendantCase::of(t, n)) {
        (Some(want), Some(got)) if want != got => {
            Err(Error::usage(format!("expected {want}, table has {got}")))
        }
        _ => Ok(()),
    }
}

/// `x_1^2 = 0`: `sq(1) = 0`, and for `i >= 2`: `f(i) = a_1`,
/// `sq(i) in {0, a_1}`.
pub fn check_nil_case(t: &MulTable, n: usize) -> Result<bool> {
    require_layout(t, n, Some(PendantCase::Nil))?;
    let x = n + 1;
    Ok(t.product(1, 1) == 0
        && (2..=n).all(|i| t.product(i, x) == 1 && matches!(t.product(i, i), 0 | 1)))
}

/// `x_1^2 = x_1`.
///
/// 1. `f(i) in {a_2..a_n}` for `i >= 2`, with at least one fixed point.
/// 2. If `f(i) = a_j`, `j != i`: `f(j) = a_j`, `sq(j) = 0`, `sq(i) in {0, a_1}`.
/// 3. If `f(r) = a_r`: `sq(r) in {0, a_r, a_j (2 <= j != r)}`; when
///    `sq(r) = a_j` also `f(j) = a_j` and `sq(j) = 0`.
/// 4. `sq(1) in {0, a_1}`, and `sq(1) = 0` whenever some `sq(i) = a_1`.
pub fn check_idempotent_case(t: &MulTable, n: usize) -> Result<bool> {
    require_layout(t, n, Some(PendantCase::Idempotent))?;
    Ok(idempotent_holds(t, n))
}

fn idempotent_holds(t: &MulTable, n: usize) -> bool {
    let x = n + 1;
    let f = |i: usize| t.product(i, x);
    let sq = |i: usize| t.product(i, i);
    let clique = 2..=n;

    // (1)
    if !(2..=n).all(|i| clique.contains(&f(i))) || !(2..=n).any(|i| f(i) == i) {
        return false;
    }
    for i in 2..=n {
        let j = f(i);
        if j != i {
            // (2)
            if f(j) != j || sq(j) != 0 || !matches!(sq(i), 0 | 1) {
                return false;
            }
        } else {
            // (3)
            let s = sq(i);
            if s == 0 || s == i {
                continue;
            }
            if !clique.contains(&s) || f(s) != s || sq(s) != 0 {
                return false;
            }
        }
    }
    // (4)
    match sq(1) {
        0 => true,
        1 => (2..=n).all(|i| sq(i) != 1),
        _ => false,
    }
}

/// `x_1^2 = a_1`: `f(r) = a_1` for `r >= 2` and every square is zero.
pub fn check_neighbor_stated(t: &MulTable, n: usize) -> Result<bool> {
    require_layout(t, n, Some(PendantCase::Neighbor))?;
    let x = n + 1;
    Ok((2..=n).all(|r| t.product(r, x) == 1) && (1..=n).all(|i| t.product(i, i) == 0))
}

/// `x_1^2 = a_1` without the restriction on squares: `sq(1) = 0`, and for
/// `r >= 2`: `f(r) = a_1`, `sq(r) in {0, a_1}`.
///
/// Every such table is associative: `a_r^2 x_1 = a_r (a_r x_1) = a_r a_1 = 0`
/// only forces `a_r^2` to annihilate `x_1`, which `a_1` does. This is the
/// condition set the generator pipeline uses; [`check_neighbor_stated`] is strictly
/// narrower.
pub fn check_neighbor_case(t: &MulTable, n: usize) -> Result<bool> {
    require_layout(t, n, Some(PendantCase::Neighbor))?;
    let x = n + 1;
    Ok(t.product(1, 1) == 0
        && (2..=n).all(|r| t.product(r, x) == 1 && matches!(t.product(r, r), 0 | 1)))
}

/// The three mutually exclusive shapes of `a_p x_1` when `x_1^2 = a_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CliqueSubcase {
    /// `a_p x_1 = a_1`, `a_p^2 = 0`
    A,
    /// `a_p x_1 = a_p`, `a_p^2 = a_p`
    B,
    /// `a_p x_1 = a_r` (`r != 1, p`), `a_p^2 = a_1`, `a_r^2 = 0`
    C,
}

/// `x_1^2 = a_p` with `p >= 2` (stated for `p = 2`; any other `p` is the
/// same up to relabeling the clique).
///
/// 1. `sq(1) = 0`; for `i >= 2`, `i != p`: `f(i) = a_1`, `sq(i) in {0, a_1}`.
/// 2. Exactly one of the subcases in [`CliqueSubcase`].
pub fn check_clique_case(t: &MulTable, n: usize) -> Result<bool> {
    require_layout(t, n, Some(PendantCase::Clique))?;
    Ok(clique_subcase(t, n).is_some())
}

fn clique_subcase(t: &MulTable, n: usize) -> Option<CliqueSubcase> {
    let x = n + 1;
    let p = t.product(x, x);
    let f = |i: usize| t.product(i, x);
    let sq = |i: usize| t.product(i, i);
    let others_ok = sq(1) == 0
        && (2..=n)
            .filter(|&i| i != p)
            .all(|i| f(i) == 1 && matches!(sq(i), 0 | 1));
    if !others_ok {
        return None;
    }
    match f(p) {
        1 if sq(p) == 0 => Some(CliqueSubcase::A),
        r if r == p && sq(p) == p => Some(CliqueSubcase::B),
        r if (2..=n).contains(&r) && r != p && sq(p) == 1 && sq(r) == 0 => Some(CliqueSubcase::C),
        _ => None,
    }
}

/// Dispatch to the condition set matching the table's `x_1^2`.
pub fn check_pendant(t: &MulTable, n: usize) -> Result<bool> {
    require_layout(t, n, None)?;
    match PendantCase::of(t, n) {
        Some(PendantCase::Nil) => check_nil_case(t, n),
        Some(PendantCase::Idempotent) => check_idempotent_case(t, n),
        Some(PendantCase::Neighbor) => check_neighbor_stated(t, n),
        Some(PendantCase::Clique) => check_clique_case(t, n),
        None => Ok(false),
    }
}

fn base_table(n: usize, x1_square: usize) -> MulTable {
    let mut t = MulTable::zero(n + 1);
    t.set_unchecked(n + 1, n + 1, x1_square);
    t
}

/// Catalog split into strata by an isomorphism invariant.
#[derive(Clone, Debug, Default)]
pub struct Stratified<K: Ord> {
    pub generated: Generated,
    pub strata: BTreeMap<K, ClassCatalog>,
}

impl<K: Ord> Stratified<K> {
    pub fn class_count(&self) -> usize {
        self.generated.class_count()
    }

    pub fn stratum_count(&self, k: &K) -> usize {
        self.strata.get(k).map_or(0, ClassCatalog::class_count)
    }
}

/// `x_1^2 = 0`: the family with `f(i) = a_1` for `i >= 2`, all squares zero
/// except `a_2^2 = .. = a_{c+1}^2 = a_1`, for `c = 0..n-1`.
pub fn gen_nil_case(n: usize) -> Result<Generated> {
    require_n(n)?;
    let x = n + 1;
    let tables = (0..n)
        .map(|c| {
            let mut t = base_table(n, 0);
            for i in 2..=n {
                t.set_unchecked(i, x, 1);
            }
            for j in 2..=c + 1 {
                t.set_unchecked(j, j, 1);
            }
            t
        })
        .collect();
    Ok(Generated::from_tables(
        TargetGraph::CompletePlusEnd { n },
        tables,
    ))
}

/// `x_1^2 = x_1`: every labeled table satisfying [`check_idempotent_case`], with
/// classes stratified by `r`, the number of `i >= 2` fixed by `x_1`.
pub fn gen_idempotent_case(n: usize) -> Result<Stratified<usize>> {
    require_n(n)?;
    let x = n + 1;
    let mut candidates = Vec::new();

    // Pendant maps f: {2..n} -> {2..n} that are idempotent (f(f(i)) = f(i))
    // and have a fixed point; these are exactly conditions (1) and the f-part
    // of (2).
    let mut f = vec![0usize; n + 1];
    let mut maps = Vec::new();
    fn rec_maps(i: usize, n: usize, f: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i > n {
            let idempotent = (2..=n).all(|k| f[f[k]] == f[k]);
            if idempotent && (2..=n).any(|k| f[k] == k) {
                out.push(f.clone());
            }
            return;
        }
        for v in 2..=n {
            f[i] = v;
            rec_maps(i + 1, n, f, out);
        }
    }
    rec_maps(2, n, &mut f, &mut maps);

    for f in maps {
        let domains: Vec<Vec<usize>> = (1..=n)
            .map(|i| {
                if i == 1 || f[i] != i {
                    vec![0, 1]
                } else {
                    let mut d = vec![0, i];
                    d.extend((2..=n).filter(|&j| j != i && f[j] == j));
                    d
                }
            })
            .collect();
        let mut t = base_table(n, x);
        for (i, &fi) in f.iter().enumerate().skip(2) {
            t.set_unchecked(i, x, fi);
        }
        for_each_choice(&domains, &mut |choice| {
            for (i, &s) in choice.iter().enumerate() {
                t.set_unchecked(i + 1, i + 1, s);
            }
            if idempotent_holds(&t, n) {
                candidates.push(t.clone());
            }
        });
    }

    let generated = Generated::from_tables(TargetGraph::CompletePlusEnd { n }, candidates);
    let mut strata: BTreeMap<usize, ClassCatalog> = BTreeMap::new();
    for t in &generated.tables {
        strata.entry(fixed_count(t, n)).or_default().insert(t);
    }
    Ok(Stratified { generated, strata })
}

fn for_each_choice(domains: &[Vec<usize>], visit: &mut dyn FnMut(&[usize])) {
    fn rec(domains: &[Vec<usize>], cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if cur.len() == domains.len() {
            visit(cur);
            return;
        }
        for &v in &domains[cur.len()] {
            cur.push(v);
            rec(domains, cur, visit);
            cur.pop();
        }
    }
    rec(domains, &mut Vec::with_capacity(domains.len()), visit);
}

/// `x_1^2 = a_1`: the single table.
pub fn gen_neighbor_stated(n: usize) -> Result<Generated> {
    require_n(n)?;
    let mut t = base_table(n, 1);
    for r in 2..=n {
        t.set_unchecked(r, n + 1, 1);
    }
    Ok(Generated::from_tables(
        TargetGraph::CompletePlusEnd { n },
        vec![t],
    ))
}

/// `x_1^2 = a_1`: `f(r) = a_1` for `r >= 2`, `a_2^2 = .. = a_{c+1}^2 = a_1`
/// and the remaining squares zero, for `c = 0..n-1`. Contains the single
/// table of [`gen_neighbor_stated`] as `c = 0`.
pub fn gen_neighbor_case(n: usize) -> Result<Generated> {
    require_n(n)?;
    let x = n + 1;
    let tables = (0..n)
        .map(|c| {
            let mut t = base_table(n, 1);
            for r in 2..=n {
                t.set_unchecked(r, x, 1);
            }
            for j in 2..=c + 1 {
                t.set_unchecked(j, j, 1);
            }
            t
        })
        .collect();
    Ok(Generated::from_tables(
        TargetGraph::CompletePlusEnd { n },
        tables,
    ))
}

/// `x_1^2 = a_2`: every labeled table satisfying [`check_clique_case`],
/// stratified by subcase.
pub fn gen_clique_case(n: usize) -> Result<Stratified<CliqueSubcase>> {
    require_n(n)?;
    let x = n + 1;
    let mut candidates = Vec::new();
    for f2 in 1..=n {
        let mut domains: Vec<Vec<usize>> = vec![vec![0]];
        domains.push(match f2 {
            1 => vec![0],
            2 => vec![2],
            _ => vec![1],
        });
        for i in 3..=n {
            domains.push(if i == f2 { vec![0] } else { vec![0, 1] });
        }
        let mut t = base_table(n, 2);
        t.set_unchecked(2, x, f2);
        for i in 3..=n {
            t.set_unchecked(i, x, 1);
        }
        for_each_choice(&domains, &mut |choice| {
            for (i, &s) in choice.iter().enumerate() {
                t.set_unchecked(i + 1, i + 1, s);
            }
            if clique_subcase(&t, n).is_some() {
                candidates.push(t.clone());
            }
        });
    }
    let generated = Generated::from_tables(TargetGraph::CompletePlusEnd { n }, candidates);
    let mut strata: BTreeMap<CliqueSubcase, ClassCatalog> = BTreeMap::new();
    for t in &generated.tables {
        let sub = clique_subcase(t, n).expect("generated tables satisfy the conditions");
        strata.entry(sub).or_default().insert(t);
    }
    Ok(Stratified { generated, strata })
}

/// Which condition set to use for the `x_1^2 = a_1` case.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NeighborRule {
    /// All squares zero ([`gen_neighbor_stated`]).
    AsStated,
    /// Squares of `a_2..a_n` in `{0, a_1}` ([`gen_neighbor_case`]).
    Complete,
}

/// Census of the four case generators plus the tables they produced that
/// failed validation.
#[derive(Clone, Debug, Default)]
pub struct GeneratorCensus {
    pub census: PendantCensus,
    pub rejected: Vec<MulTable>,
}

/// All four case generators combined into one census, using the complete
/// neighbor-case family.
pub fn generator_census(n: usize) -> Result<GeneratorCensus> {
    generator_census_with(n, NeighborRule::Complete)
}

pub fn generator_census_with(n: usize, rule: NeighborRule) -> Result<GeneratorCensus> {
    let neighbor = match rule {
        NeighborRule::AsStated => gen_neighbor_stated(n)?,
        NeighborRule::Complete => gen_neighbor_case(n)?,
    };
    let families = [
        gen_nil_case(n)?,
        gen_idempotent_case(n)?.generated,
        neighbor,
        gen_clique_case(n)?.generated,
    ];
    let mut out = GeneratorCensus {
        census: PendantCensus::new(n),
        rejected: Vec::new(),
    };
    for g in families {
        for t in &g.tables {
            out.census.insert(t);
        }
        out.rejected.extend(g.rejected);
    }
    Ok(out)
}

/// Per-case class counts for `K_n + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PendantCaseCount {
    pub n: usize,
    pub nil: usize,
    pub idempotent: usize,
    pub neighbor: usize,
    pub clique: usize,
    pub k2_by_r: BTreeMap<usize, usize>,
}

impl PendantCaseCount {
    pub fn from_census(c: &PendantCensus) -> Self {
        PendantCaseCount {
            n: c.n,
            nil: c.case_count(PendantCase::Nil),
            idempotent: c.case_count(PendantCase::Idempotent),
            neighbor: c.case_count(PendantCase::Neighbor),
            clique: c.case_count(PendantCase::Clique),
            k2_by_r: c
                .strata
                .iter()
                .map(|(&r, cat)| (r, cat.class_count()))
                .collect(),
        }
    }

    pub fn total(&self) -> usize {
        self.nil + self.idempotent + self.neighbor + self.clique
    }

    pub fn k2(&self) -> usize {
        self.k2_by_r.values().sum()
    }
}

/// Class count for `K_n + 1` assembled from the closed per-case values:
/// `n + sum_r k2(n, r) + 1 + (3n - 4)`.
pub fn formula_total_kn1(n: usize) -> Result<u64> {
    require_n(n)?;
    let mut k2 = 0;
    for r in 1..n {
        k2 += k2_partial(n, r)?;
    }
    Ok(k2 + 4 * n as u64 - 3)
}

/// `k2(n)` from the closed per-stratum values of [`k2_partial`].
pub fn formula_k2(n: usize) -> Result<u64> {
    require_n(n)?;
    (1..n).map(|r| k2_partial(n, r)).sum()
}

/// `k2(n, r)`: the closed value where one is known (`r = 1`: `n`;
/// `r = 2`: `3`, `3(n-1)`, `4(n-1)` for `n = 3`, `4`, `>= 5`;
/// `r = n - 1`: `2 s(n-1)`), otherwise the generator's stratum count.
///
/// At `n = 3` the `r = 2` and `r = n - 1` rules overlap and disagree; the
/// `r = 2` value is returned.
pub fn k2_partial(n: usize, r: usize) -> Result<u64> {
    require_n(n)?;
    if r == 0 || r > n - 1 {
        return Err(Error::usage(format!("r = {r} outside 1..={}", n - 1)));
    }
    Ok(match r {
        1 => n as u64,
        2 => match n {
            3 => 3,
            4 => 3 * (4 - 1),
            _ => 4 * (n as u64 - 1),
        },
        r if r == n - 1 => 2 * s_of_n(n - 1),
        r => gen_idempotent_case(n)?.stratum_count(&r) as u64,
    })
}

/// Total classes for `K_n + 1`: `k2(n) + 4n - 3`, with `k2(n)` from the
/// generator.
pub fn total_kn1(n: usize) -> Result<u64> {
    require_n(n)?;
    Ok(gen_idempotent_case(n)?.class_count() as u64 + 4 * n as u64 - 3)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Standard-layout table from `x_1^2`, `f(2..=n)` and `sq(1..=n)`.
    fn pendant(n: usize, x1sq: usize, f: &[usize], sq: &[usize]) -> MulTable {
        assert_eq!(f.len(), n - 1);
        assert_eq!(sq.len(), n);
        let mut t = base_table(n, x1sq);
        for (k, &v) in f.iter().enumerate() {
            t.set(k + 2, n + 1, v).unwrap();
        }
        for (k, &v) in sq.iter().enumerate() {
            t.set(k + 1, k + 1, v).unwrap();
        }
        t
    }

    #[test]
    fn idempotent_examples() {
        // f = (a2, a2), all squares zero.
        assert!(check_idempotent_case(&pendant(3, 4, &[2, 2], &[0, 0, 0]), 3).unwrap());
        // a2 x1 = a1 is excluded.
        assert!(!check_idempotent_case(&pendant(3, 4, &[1, 3], &[0, 0, 0]), 3).unwrap());
        // a2 x1 = a3 but a3^2 = a3.
        let t = pendant(3, 4, &[3, 3], &[0, 0, 3]);
        assert!(!check_idempotent_case(&t, 3).unwrap());
        assert!(t.check_associativity().is_some());
    }

    #[test]
    fn idempotent_precondition() {
        let t = pendant(3, 0, &[1, 1], &[0, 0, 0]);
        assert!(matches!(check_idempotent_case(&t, 3), Err(Error::Usage(_))));
        let mut t = pendant(3, 4, &[2, 2], &[0, 0, 0]);
        t.set(1, 4, 2).unwrap();
        assert!(check_idempotent_case(&t, 3).is_err());
    }

    #[test]
    fn nil_case_family() {
        for n in 3..=5 {
            let g = gen_nil_case(n).unwrap();
            assert!(g.rejected.is_empty());
            assert_eq!(g.class_count(), n);
            for t in &g.tables {
                assert!(check_nil_case(t, n).unwrap());
            }
        }
    }

    #[test]
    fn neighbor_case_single_table() {
        for n in [3, 5] {
            let g = gen_neighbor_stated(n).unwrap();
            assert!(g.rejected.is_empty());
            assert_eq!(g.class_count(), 1);
            assert!(g.tables[0].check_associativity().is_none());
        }
    }

    #[test]
    fn neighbor_case_complete_family() {
        for n in 3..=5 {
            let g = gen_neighbor_case(n).unwrap();
            assert!(g.rejected.is_empty());
            assert_eq!(g.class_count(), n);
            for t in &g.tables {
                assert!(check_neighbor_case(t, n).unwrap());
            }
            // Only the first member meets the all-squares-zero rule.
            let stated: Vec<bool> = g
                .tables
                .iter()
                .map(|t| check_neighbor_stated(t, n).unwrap())
                .collect();
            assert_eq!(stated.iter().filter(|&&b| b).count(), 1);
            assert!(stated[0]);
        }
    }

    #[test]
    fn formula_totals() {
        assert_eq!(formula_total_kn1(3).unwrap(), 15);
        assert_eq!(formula_total_kn1(4).unwrap(), 40);
        assert_eq!(formula_k2(4).unwrap(), 27);
    }

    #[test]
    fn clique_case_counts() {
        for n in 3..=5 {
            let g = gen_clique_case(n).unwrap();
            assert!(g.generated.rejected.is_empty());
            assert_eq!(g.class_count(), 3 * n - 4, "n = {n}");
            assert_eq!(g.stratum_count(&CliqueSubcase::A), n - 1);
            assert_eq!(g.stratum_count(&CliqueSubcase::B), n - 1);
            assert_eq!(g.stratum_count(&CliqueSubcase::C), n - 2);
        }
    }

    #[test]
    fn usage_errors_below_three() {
        assert!(gen_nil_case(2).is_err());
        assert!(gen_idempotent_case(2).is_err());
        assert!(gen_neighbor_stated(2).is_err());
        assert!(gen_clique_case(2).is_err());
        assert!(k2_partial(4, 0).is_err());
        assert!(k2_partial(4, 4).is_err());
    }

    #[test]
    fn k2_partial_closed_values() {
        assert_eq!(k2_partial(4, 1).unwrap(), 4);
        assert_eq!(k2_partial(4, 3).unwrap(), 14);
        assert_eq!(k2_partial(4, 2).unwrap(), 9);
        assert_eq!(k2_partial(3, 2).unwrap(), 3);
    }

    #[test]
    fn idempotent_case_n4() {
        let g = gen_idempotent_case(4).unwrap();
        assert!(g.generated.rejected.is_empty());
        assert_eq!(g.class_count(), 27);
        assert_eq!(g.stratum_count(&1), 4);
        assert_eq!(g.stratum_count(&2), 9);
        assert_eq!(g.stratum_count(&3), 14);
        let total: usize = g.strata.values().map(ClassCatalog::class_count).sum();
        assert_eq!(total, g.class_count());
    }

    #[test]
    fn census_totals() {
        let g = generator_census_with(4, NeighborRule::AsStated).unwrap();
        assert!(g.rejected.is_empty());
        let c = g.census;
        assert_eq!(c.total(), 40);
        assert_eq!(generator_census(4).unwrap().census.total(), 43);
        assert!(c.overlapping_keys().is_empty());
        let counts = PendantCaseCount::from_census(&c);
        assert_eq!(counts.total(), 40);
        assert_eq!(counts.k2(), 27);
        assert_eq!(total_kn1(4).unwrap(), 40);
    }
}

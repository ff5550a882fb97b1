//! Brute-force oracle: every labeled zero-divisor semigroup table realizing a
//! target graph, found by depth-first assignment of the free table cells.
//!
//! The edges of the target force their products to zero and the non-edges
//! forbid zero; nothing else is assumed. In particular the pendant products
//! `a_i x_1` may take the value `x_1` and squares may land anywhere, so every
//! structural claim about these semigroups has to be earned by the
//! associativity check.

use rayon::prelude::*;

use crate::census::PendantCensus;
use crate::classify::ClassCatalog;
use crate::error::{Error, Result};
use crate::graph::{build_zd_graph, recognize_target, TargetGraph};
use crate::table::MulTable;

/// Largest unpruned search space (product of domain sizes) the oracle runs
/// without an explicit long-run opt-in.
pub const DESK_BUDGET: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slot {
    pub cell: (usize, usize),
    pub domain: Vec<usize>,
}

/// The free cells of a partial table and their admissible values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub target: TargetGraph,
    pub slots: Vec<Slot>,
}

impl SearchSpec {
    /// Number of complete assignments without pruning.
    pub fn space_size(&self) -> u128 {
        self.slots.iter().map(|s| s.domain.len() as u128).product()
    }

    pub fn within_desk_budget(&self) -> bool {
        self.space_size() <= DESK_BUDGET
    }
}

/// Free cells for `target` in the standard layout.
///
/// `K_n`: the squares `a_i^2`. `K_n + 1`: `x_1^2`, then `a_i x_1` for
/// `i >= 2` (nonzero, since a zero would add an edge), then the squares
/// `a_i^2`. Squares range over every element because loops are not edges.
pub fn seed_partial_table(target: TargetGraph) -> Result<SearchSpec> {
    let target = target.validate()?;
    let m = target.element_count();
    let all: Vec<usize> = (0..=m).collect();
    let nonzero: Vec<usize> = (1..=m).collect();
    let mut slots = Vec::new();
    if let TargetGraph::CompletePlusEnd { n } = target {
        let x = n + 1;
        slots.push(Slot {
            cell: (x, x),
            domain: all.clone(),
        });
        for i in 2..=n {
            slots.push(Slot {
                cell: (i, x),
                domain: nonzero.clone(),
            });
        }
    }
    for i in 1..=target.n() {
        slots.push(Slot {
            cell: (i, i),
            domain: all.clone(),
        });
    }
    Ok(SearchSpec { target, slots })
}

#[derive(Clone, Debug)]
pub struct EnumOptions {
    /// Check completed triples after every assignment.
    pub prune: bool,
    /// Split root branches across the rayon pool.
    pub parallel: bool,
    /// Pin `x_1^2` to this element (pendant targets only).
    pub x1_square: Option<usize>,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            prune: true,
            parallel: true,
            x1_square: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumStats {
    /// Cell assignments made, including ones pruned immediately.
    pub assignments: u64,
    pub accepted: u64,
}

impl EnumStats {
    fn add(&mut self, o: EnumStats) {
        self.assignments += o.assignments;
        self.accepted += o.accepted;
    }
}

struct Worker<'a> {
    spec: &'a SearchSpec,
    table: MulTable,
    known: Vec<bool>,
    prune: bool,
    stats: EnumStats,
}

impl<'a> Worker<'a> {
    fn new(spec: &'a SearchSpec, prune: bool) -> Self {
        let m = spec.target.element_count();
        let mut known = vec![true; (m + 1) * (m + 1)];
        for s in &spec.slots {
            let (u, v) = s.cell;
            known[u * (m + 1) + v] = false;
            known[v * (m + 1) + u] = false;
        }
        Worker {
            spec,
            table: MulTable::zero(m),
            known,
            prune,
            stats: EnumStats::default(),
        }
    }

    #[inline]
    fn is_known(&self, u: usize, v: usize) -> bool {
        self.known[u * (self.table.m() + 1) + v]
    }

    fn set_known(&mut self, (u, v): (usize, usize), k: bool) {
        let w = self.table.m() + 1;
        self.known[u * w + v] = k;
        self.known[v * w + u] = k;
    }

    /// False iff the triple is fully determined and non-associative.
    #[inline]
    fn triple_ok(&self, u: usize, v: usize, w: usize) -> bool {
        let t = &self.table;
        if !self.is_known(u, v) || !self.is_known(v, w) {
            return true;
        }
        let uv = t.product(u, v);
        let vw = t.product(v, w);
        if !self.is_known(uv, w) || !self.is_known(u, vw) {
            return true;
        }
        t.product(uv, w) == t.product(u, vw)
    }

    /// Check every triple whose evaluation reads the cell `{p, q}`. A triple
    /// becomes determined exactly when its last unknown cell is assigned, so
    /// this covers all newly determined triples.
    fn consistent_after(&self, p: usize, q: usize) -> bool {
        let m = self.table.m();
        for z in 1..=m {
            if !self.triple_ok(p, q, z)
                || !self.triple_ok(q, p, z)
                || !self.triple_ok(z, p, q)
                || !self.triple_ok(z, q, p)
            {
                return false;
            }
        }
        for a in 1..=m {
            for b in 1..=m {
                if !self.is_known(a, b) {
                    continue;
                }
                let ab = self.table.product(a, b);
                // (ab) q with ab = p, and a (b ...) forms with bc = p.
                if ab == p && (!self.triple_ok(a, b, q) || !self.triple_ok(q, a, b)) {
                    return false;
                }
                if ab == q && (!self.triple_ok(a, b, p) || !self.triple_ok(p, a, b)) {
                    return false;
                }
            }
        }
        true
    }

    fn accepts(&self) -> bool {
        if !self.table.is_zd_semigroup() {
            return false;
        }
        recognize_target(&build_zd_graph(&self.table)).map(|r| r.target) == Some(self.spec.target)
    }

    fn run(&mut self, depth: usize, visit: &mut dyn FnMut(&MulTable)) {
        if depth == self.spec.slots.len() {
            if self.accepts() {
                self.stats.accepted += 1;
                visit(&self.table);
            }
            return;
        }
        let slot = &self.spec.slots[depth];
        let (u, v) = slot.cell;
        for &val in &slot.domain {
            self.assign(depth, val);
            if !self.prune || self.consistent_after(u, v) {
                self.run(depth + 1, visit);
            }
        }
        self.set_known((u, v), false);
        self.table.set_unchecked(u, v, 0);
    }

    fn assign(&mut self, depth: usize, val: usize) {
        let cell = self.spec.slots[depth].cell;
        self.stats.assignments += 1;
        self.table.set_unchecked(cell.0, cell.1, val);
        self.set_known(cell, true);
    }
}

fn root_values(spec: &SearchSpec, opts: &EnumOptions) -> Result<Vec<usize>> {
    let Some(first) = spec.slots.first() else {
        return Ok(vec![]);
    };
    match (opts.x1_square, spec.target) {
        (None, _) => Ok(first.domain.clone()),
        (Some(s), TargetGraph::CompletePlusEnd { n }) if s <= n + 1 => Ok(vec![s]),
        (Some(s), TargetGraph::CompletePlusEnd { n }) => {
            Err(Error::usage(format!("x1^2 = {s} is outside 0..={}", n + 1)))
        }
        (Some(_), TargetGraph::CompleteK { .. }) => {
            Err(Error::usage("x1^2 can only be pinned for K_n+1 targets"))
        }
    }
}

/// Run the oracle, handing every accepted table to `visit` in the order of
/// the sequential search. Returns the search statistics.
pub fn enumerate_with_stats(
    target: TargetGraph,
    opts: &EnumOptions,
    mut visit: impl FnMut(&MulTable),
) -> Result<EnumStats> {
    let spec = seed_partial_table(target)?;
    let roots = root_values(&spec, opts)?;

    let run_root = |val: usize| -> (EnumStats, Vec<MulTable>) {
        let mut w = Worker::new(&spec, opts.prune);
        let mut found = Vec::new();
        let (u, v) = spec.slots[0].cell;
        w.assign(0, val);
        if !opts.prune || w.consistent_after(u, v) {
            w.run(1, &mut |t| found.push(t.clone()));
        }
        (w.stats, found)
    };

    let mut stats = EnumStats::default();
    if roots.is_empty() {
        return Ok(stats);
    }
    if opts.parallel {
        let results: Vec<_> = roots.par_iter().map(|&v| run_root(v)).collect();
        for (s, tables) in results {
            stats.add(s);
            tables.iter().for_each(&mut visit);
        }
    } else {
        for v in roots {
            let (s, tables) = run_root(v);
            stats.add(s);
            tables.iter().for_each(&mut visit);
        }
    }
    Ok(stats)
}

/// Visit every complete assignment of the free cells, last slot varying
/// fastest. No pruning and no acceptance test: this is the raw space that
/// [`SearchSpec::space_size`] counts.
pub fn for_each_assignment(spec: &SearchSpec, mut visit: impl FnMut(&MulTable)) {
    fn rec(spec: &SearchSpec, depth: usize, t: &mut MulTable, visit: &mut dyn FnMut(&MulTable)) {
        let Some(slot) = spec.slots.get(depth) else {
            visit(t);
            return;
        };
        let (u, v) = slot.cell;
        for &val in &slot.domain {
            t.set_unchecked(u, v, val);
            rec(spec, depth + 1, t, visit);
        }
    }
    let mut t = MulTable::zero(spec.target.element_count());
    rec(spec, 0, &mut t, &mut visit);
}

/// Count of accepted labeled tables.
pub fn enumerate_labeled(
    target: TargetGraph,
    opts: &EnumOptions,
    visit: impl FnMut(&MulTable),
) -> Result<u64> {
    Ok(enumerate_with_stats(target, opts, visit)?.accepted)
}

/// All accepted labeled tables, in search order.
pub fn collect_labeled(target: TargetGraph, opts: &EnumOptions) -> Result<Vec<MulTable>> {
    let mut out = Vec::new();
    enumerate_with_stats(target, opts, |t| out.push(t.clone()))?;
    Ok(out)
}

/// Isomorphism classes of the oracle's tables.
pub fn oracle_classes(target: TargetGraph, opts: &EnumOptions) -> Result<ClassCatalog> {
    let tables = collect_labeled(target, opts)?;
    Ok(catalog_of(&tables, opts.parallel))
}

/// Oracle classes for `K_n + 1`, split by case and stratum.
pub fn oracle_census(n: usize, opts: &EnumOptions) -> Result<PendantCensus> {
    let tables = collect_labeled(TargetGraph::CompletePlusEnd { n }, opts)?;
    let census = if opts.parallel {
        tables
            .par_chunks(256)
            .map(|chunk| {
                let mut c = PendantCensus::new(n);
                chunk.iter().for_each(|t| {
                    c.insert(t);
                });
                c
            })
            .reduce(
                || PendantCensus::new(n),
                |mut a, b| {
                    a.merge(b);
                    a
                },
            )
    } else {
        let mut c = PendantCensus::new(n);
        tables.iter().for_each(|t| {
            c.insert(t);
        });
        c
    };
    Ok(census)
}

pub(crate) fn catalog_of(tables: &[MulTable], parallel: bool) -> ClassCatalog {
    if parallel {
        tables
            .par_chunks(256)
            .map(|chunk| chunk.iter().cloned().collect::<ClassCatalog>())
            .reduce(ClassCatalog::new, |mut a, b| {
                a.merge(b);
                a
            })
    } else {
        tables.iter().cloned().collect()
    }
}

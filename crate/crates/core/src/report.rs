//! Count reports, catalog export and the verification matrix behind the
//! command-line tool.
//!
//! Output is deterministic: maps are ordered, catalogs iterate in key order
//! and no timings are recorded, so repeated runs give identical bytes.
//!
//! Exit policy: only a disagreement between two constructive methods
//! (generator vs oracle) is a failure. A count that differs from a closed
//! form or a published value is a finding and is reported with witnesses.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::audit::{ideal_violations, scan_complete, scan_pendant};
use crate::census::{PendantCase, PendantCensus};
use crate::classify::{canonical_form, square_profile, CanonicalKey, ClassCatalog};
use crate::enumerate::{
    enumerate_labeled, oracle_census, oracle_classes, seed_partial_table, EnumOptions, DESK_BUDGET,
};
use crate::error::{Error, Result};
use crate::formulas::{
    formula_total_kn1, gen_complete, generator_census, k2_partial, p_exact, partitions_exact,
    published, s_of_n, NeighborRule, PendantCaseCount,
};
use crate::graph::{build_zd_graph, recognize_target, TargetGraph};
use crate::table::MulTable;

/// Witnesses listed per discrepancy in the text rendering; JSON has all.
const TEXT_WITNESSES: usize = 6;

/// Version tag stored with cached results.
pub const CODE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Formula,
    Generator,
    Oracle,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Formula, Method::Generator, Method::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Method::Formula => "formula",
            Method::Generator => "generator",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Spread oracle branches over the rayon pool.
    pub parallel: bool,
    /// Run the oracle even when its raw space exceeds [`DESK_BUDGET`].
    pub allow_long_run: bool,
    pub cache_dir: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            parallel: true,
            allow_long_run: false,
            cache_dir: None,
        }
    }
}

impl RunConfig {
    fn enum_options(&self) -> EnumOptions {
        EnumOptions {
            parallel: self.parallel,
            ..EnumOptions::default()
        }
    }
}

/// Targets the command-line surface accepts: `K_n` for `n >= 1`, `K_n + 1`
/// for `n >= 3`.
pub fn check_target(target: TargetGraph) -> Result<TargetGraph> {
    let target = target.validate()?;
    match target {
        TargetGraph::CompletePlusEnd { n } if n < 3 => Err(Error::usage(format!(
            "{target} is not supported: the end-vertex family needs n >= 3"
        ))),
        t => Ok(t),
    }
}

/// Refuse oracle runs whose raw space exceeds the desk budget unless the
/// long-run flag is set.
pub fn check_oracle_budget(target: TargetGraph, cfg: &RunConfig) -> Result<()> {
    let spec = seed_partial_table(target)?;
    if spec.within_desk_budget() || cfg.allow_long_run {
        return Ok(());
    }
    Err(Error::usage(format!(
        "the {target} oracle ranges over {} raw assignments, above the desk budget of {DESK_BUDGET}; \
         pass --allow-long-run to run it anyway, or use --method generator",
        spec.space_size()
    )))
}

pub fn oracle_fits_budget(target: TargetGraph, cfg: &RunConfig) -> bool {
    check_oracle_budget(target, cfg).is_ok()
}

/// Classes found by a constructive method.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classes {
    Complete(ClassCatalog),
    Pendant(PendantCensus),
}

impl Classes {
    /// All classes in one catalog.
    pub fn catalog(&self) -> ClassCatalog {
        match self {
            Classes::Complete(c) => c.clone(),
            Classes::Pendant(p) => p.all(),
        }
    }

    pub fn class_count(&self) -> usize {
        match self {
            Classes::Complete(c) => c.class_count(),
            Classes::Pendant(p) => p.total(),
        }
    }

    pub fn census(&self) -> Option<&PendantCensus> {
        match self {
            Classes::Complete(_) => None,
            Classes::Pendant(p) => Some(p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodRun {
    pub classes: Classes,
    /// Keys of generated tables that failed validation.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rejected: Vec<CanonicalKey>,
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    target: TargetGraph,
    method: Method,
    version: String,
    run: MethodRun,
}

fn cache_path(dir: &Path, target: TargetGraph, method: Method) -> PathBuf {
    dir.join(format!("{}-{}-{CODE_VERSION}.json", target.slug(), method))
}

/// A cache file that is missing, unreadable or for other inputs is ignored.
fn cache_load(dir: &Path, target: TargetGraph, method: Method) -> Option<MethodRun> {
    let text = fs::read_to_string(cache_path(dir, target, method)).ok()?;
    let e: CacheEntry = serde_json::from_str(&text).ok()?;
    (e.target == target && e.method == method && e.version == CODE_VERSION).then_some(e.run)
}

fn cache_store(dir: &Path, target: TargetGraph, method: Method, run: &MethodRun) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let entry = CacheEntry {
        target,
        method,
        version: CODE_VERSION.to_string(),
        run: run.clone(),
    };
    write_file(
        &cache_path(dir, target, method),
        &serde_json::to_string(&entry)?,
    )
}

/// Run the generator or the oracle, through the cache when configured.
pub fn run_method(target: TargetGraph, method: Method, cfg: &RunConfig) -> Result<MethodRun> {
    let target = check_target(target)?;
    if method == Method::Oracle {
        check_oracle_budget(target, cfg)?;
    }
    if let Some(dir) = &cfg.cache_dir {
        if let Some(run) = cache_load(dir, target, method) {
            return Ok(run);
        }
    }
    let keys = |ts: &[MulTable]| ts.iter().map(canonical_form).collect::<Vec<_>>();
    let run = match (method, target) {
        (Method::Formula, _) => {
            return Err(Error::usage(
                "the formula method yields counts, not classes",
            ))
        }
        (Method::Generator, TargetGraph::CompleteK { n }) => {
            let g = gen_complete(n)?;
            MethodRun {
                rejected: keys(&g.rejected),
                classes: Classes::Complete(g.catalog),
            }
        }
        (Method::Generator, TargetGraph::CompletePlusEnd { n }) => {
            let g = generator_census(n)?;
            MethodRun {
                rejected: keys(&g.rejected),
                classes: Classes::Pendant(g.census),
            }
        }
        (Method::Oracle, TargetGraph::CompleteK { .. }) => MethodRun {
            classes: Classes::Complete(oracle_classes(target, &cfg.enum_options())?),
            rejected: vec![],
        },
        (Method::Oracle, TargetGraph::CompletePlusEnd { n }) => MethodRun {
            classes: Classes::Pendant(oracle_census(n, &cfg.enum_options())?),
            rejected: vec![],
        },
    };
    if let Some(dir) = &cfg.cache_dir {
        cache_store(dir, target, method, &run)?;
    }
    Ok(run)
}

/// Closed-form class count: `s(n)` for `K_n`, the per-case sum for `K_n + 1`.
pub fn formula_count(target: TargetGraph) -> Result<u64> {
    match check_target(target)? {
        TargetGraph::CompleteK { n } => Ok(s_of_n(n)),
        TargetGraph::CompletePlusEnd { n } => formula_total_kn1(n),
    }
}

/// Closed per-case values for `K_n + 1`: `n`, `k2(n, r)`, `1`, `3n - 4`.
pub fn formula_cases(n: usize) -> Result<PendantCaseCount> {
    check_target(TargetGraph::CompletePlusEnd { n })?;
    let mut k2_by_r = BTreeMap::new();
    for r in 1..n {
        k2_by_r.insert(r, k2_partial(n, r)? as usize);
    }
    Ok(PendantCaseCount {
        n,
        nil: n,
        idempotent: k2_by_r.values().sum(),
        neighbor: 1,
        clique: 3 * n - 4,
        k2_by_r,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscrepancyKind {
    /// A computed count differs from a closed-form or published value.
    Finding,
    /// Two constructive methods disagree.
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub kind: DiscrepancyKind,
    pub description: String,
    /// Closed-form or published value; absent for method mismatches.
    pub published_value: Option<u64>,
    pub computed_value: u64,
    /// Canonical keys of the classes behind the difference.
    pub witnesses: Vec<CanonicalKey>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub target: TargetGraph,
    pub method_counts: BTreeMap<Method, u64>,
    /// Published total for this target, when there is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub published: Option<u64>,
    /// Per-case and per-`r` counts for `K_n + 1`.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub strata: BTreeMap<Method, PendantCaseCount>,
    pub discrepancies: Vec<Discrepancy>,
}

impl CountReport {
    /// No method-vs-method mismatch.
    pub fn is_consistent(&self) -> bool {
        self.mismatches().next().is_none()
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &Discrepancy> {
        self.discrepancies
            .iter()
            .filter(|d| d.kind == DiscrepancyKind::Mismatch)
    }

    pub fn findings(&self) -> impl Iterator<Item = &Discrepancy> {
        self.discrepancies
            .iter()
            .filter(|d| d.kind == DiscrepancyKind::Finding)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{}", self.target).unwrap();
        for (m, c) in &self.method_counts {
            writeln!(s, "  {:<10} {c}", m.name()).unwrap();
        }
        if let Some(p) = self.published {
            writeln!(s, "  {:<10} {p}", "published").unwrap();
        }
        if !self.strata.is_empty() {
            let methods: Vec<&Method> = self.strata.keys().collect();
            let header: Vec<String> = methods
                .iter()
                .map(|m| format!("{:>10}", m.name()))
                .collect();
            writeln!(s, "  {:<10} {}", "case", header.join("")).unwrap();
            let mut line = |label: String, f: &dyn Fn(&PendantCaseCount) -> usize| {
                let cells: String = methods
                    .iter()
                    .map(|m| format!("{:>10}", f(&self.strata[m])))
                    .collect();
                writeln!(s, "  {label:<10} {cells}").unwrap();
            };
            line(PendantCase::Nil.to_string(), &|c| c.nil);
            line(PendantCase::Idempotent.to_string(), &|c| c.idempotent);
            let rs: Vec<usize> = self
                .strata
                .values()
                .flat_map(|c| c.k2_by_r.keys().copied())
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            for r in rs {
                line(format!("  r={r}"), &|c| {
                    c.k2_by_r.get(&r).copied().unwrap_or(0)
                });
            }
            line(PendantCase::Neighbor.to_string(), &|c| c.neighbor);
            line(PendantCase::Clique.to_string(), &|c| c.clique);
        }
        for d in &self.discrepancies {
            let kind = match d.kind {
                DiscrepancyKind::Finding => "finding",
                DiscrepancyKind::Mismatch => "MISMATCH",
            };
            writeln!(s, "  {kind}: {}", d.description).unwrap();
            for w in d.witnesses.iter().take(TEXT_WITNESSES) {
                writeln!(s, "    witness {w}").unwrap();
            }
            if d.witnesses.len() > TEXT_WITNESSES {
                writeln!(s, "    ... {} more", d.witnesses.len() - TEXT_WITNESSES).unwrap();
            }
        }
        s
    }
}

/// The discrepancy list is built against a reference run: the oracle when
/// present, else the generator.
struct ReportBuilder {
    report: CountReport,
}

impl ReportBuilder {
    fn push(
        &mut self,
        kind: DiscrepancyKind,
        description: String,
        published_value: Option<u64>,
        computed_value: u64,
        witnesses: Vec<CanonicalKey>,
    ) {
        self.report.discrepancies.push(Discrepancy {
            kind,
            description,
            published_value,
            computed_value,
            witnesses,
        });
    }

    fn finding(&mut self, description: String, stated: u64, computed: u64, w: Vec<CanonicalKey>) {
        self.push(
            DiscrepancyKind::Finding,
            description,
            Some(stated),
            computed,
            w,
        );
    }
}

fn key_diff(a: &ClassCatalog, b: &ClassCatalog) -> Vec<CanonicalKey> {
    let mut out: Vec<CanonicalKey> = a
        .keys()
        .filter(|k| !b.contains(k))
        .chain(b.keys().filter(|k| !a.contains(k)))
        .cloned()
        .collect();
    out.sort();
    out
}

/// A case of `x_1^2`, or a stratum `r` of the idempotent case.
type Section = (PendantCase, Option<usize>);

fn section_label((case, r): Section) -> String {
    match r {
        Some(r) => format!("{case} r={r}"),
        None => case.to_string(),
    }
}

/// The four cases and the strata `r = 1..n-1` (plus any other stratum that
/// occurs), each with its catalog.
fn census_sections(c: &PendantCensus) -> BTreeMap<Section, ClassCatalog> {
    let mut out = BTreeMap::new();
    for case in PendantCase::ALL {
        out.insert((case, None), c.case(case).clone());
    }
    for r in 1..c.n {
        out.insert((PendantCase::Idempotent, Some(r)), ClassCatalog::new());
    }
    for (&r, cat) in &c.strata {
        out.insert((PendantCase::Idempotent, Some(r)), cat.clone());
    }
    out
}

fn section_value(f: &PendantCaseCount, (case, r): Section) -> usize {
    match (case, r) {
        (PendantCase::Idempotent, Some(r)) => f.k2_by_r.get(&r).copied().unwrap_or(0),
        (PendantCase::Nil, _) => f.nil,
        (PendantCase::Idempotent, None) => f.idempotent,
        (PendantCase::Neighbor, _) => f.neighbor,
        (PendantCase::Clique, _) => f.clique,
    }
}

/// Build the count report for `target` from the requested methods.
pub fn count_report(
    target: TargetGraph,
    methods: &[Method],
    cfg: &RunConfig,
) -> Result<CountReport> {
    let target = check_target(target)?;
    if methods.contains(&Method::Oracle) {
        check_oracle_budget(target, cfg)?;
    }
    let mut methods = methods.to_vec();
    methods.sort();
    methods.dedup();

    let mut runs: BTreeMap<Method, MethodRun> = BTreeMap::new();
    let mut b = ReportBuilder {
        report: CountReport {
            target,
            method_counts: BTreeMap::new(),
            published: None,
            strata: BTreeMap::new(),
            discrepancies: vec![],
        },
    };
    for &m in &methods {
        let count = if m == Method::Formula {
            formula_count(target)?
        } else {
            let run = run_method(target, m, cfg)?;
            let c = run.classes.class_count() as u64;
            runs.insert(m, run);
            c
        };
        b.report.method_counts.insert(m, count);
    }

    let reference = runs
        .get(&Method::Oracle)
        .map(|r| (Method::Oracle, r))
        .or_else(|| runs.get(&Method::Generator).map(|r| (Method::Generator, r)));

    // Method against method.
    if let (Some(g), Some(o)) = (runs.get(&Method::Generator), runs.get(&Method::Oracle)) {
        match (&g.classes, &o.classes) {
            (Classes::Complete(gc), Classes::Complete(oc)) => {
                let diff = key_diff(gc, oc);
                if !diff.is_empty() {
                    b.push(
                        DiscrepancyKind::Mismatch,
                        format!(
                            "generator finds {} classes, oracle {}",
                            gc.class_count(),
                            oc.class_count()
                        ),
                        None,
                        oc.class_count() as u64,
                        diff,
                    );
                }
            }
            (Classes::Pendant(gc), Classes::Pendant(oc)) => {
                let (gs, os) = (census_sections(gc), census_sections(oc));
                let mut sections: Vec<Section> = gs.keys().chain(os.keys()).copied().collect();
                sections.sort();
                sections.dedup();
                let empty = ClassCatalog::new();
                for sec in sections {
                    let g = gs.get(&sec).unwrap_or(&empty);
                    let o = os.get(&sec).unwrap_or(&empty);
                    let diff = key_diff(g, o);
                    if !diff.is_empty() {
                        b.push(
                            DiscrepancyKind::Mismatch,
                            format!(
                                "{}: generator finds {} classes, oracle {}",
                                section_label(sec),
                                g.class_count(),
                                o.class_count()
                            ),
                            None,
                            o.class_count() as u64,
                            diff,
                        );
                    }
                }
            }
            _ => unreachable!("both runs are for the same target"),
        }
    }
    for (m, run) in &runs {
        if let Some(c) = run.classes.census() {
            let overlap = c.overlapping_keys();
            if !overlap.is_empty() {
                b.push(
                    DiscrepancyKind::Mismatch,
                    format!(
                        "{m}: {} classes occur under two values of x1^2",
                        overlap.len()
                    ),
                    None,
                    overlap.len() as u64,
                    overlap,
                );
            }
        }
        if !run.rejected.is_empty() {
            b.push(
                DiscrepancyKind::Finding,
                format!(
                    "{m}: {} constructed tables are not zero-divisor semigroups with graph {target}",
                    run.rejected.len()
                ),
                None,
                run.rejected.len() as u64,
                run.rejected.clone(),
            );
        }
    }

    match target {
        TargetGraph::CompleteK { n } => {
            b.report.published = published::lookup(published::S, n);
            if let Some((rm, run)) = reference {
                let cat = run.classes.catalog();
                let computed = cat.class_count() as u64;
                let witnesses: Vec<CanonicalKey> = cat.keys().cloned().collect();
                if let Some(&f) = b.report.method_counts.get(&Method::Formula) {
                    if f != computed {
                        b.finding(
                            format!("s({n}) = {f} but the {rm} finds {computed} classes"),
                            f,
                            computed,
                            witnesses.clone(),
                        );
                    }
                }
                if let Some(p) = b.report.published {
                    if p != computed {
                        b.finding(
                            format!("published count {p} differs from the {rm} count {computed}"),
                            p,
                            computed,
                            witnesses,
                        );
                    }
                }
            }
        }
        TargetGraph::CompletePlusEnd { n } => {
            b.report.published = published::lookup(published::TOTAL_KN1, n);
            let closed = formula_cases(n)?;
            if methods.contains(&Method::Formula) {
                b.report.strata.insert(Method::Formula, closed.clone());
            }
            for (m, run) in &runs {
                let c = run.classes.census().expect("pendant target");
                b.report.strata.insert(*m, PendantCaseCount::from_census(c));
            }
            if let Some((rm, run)) = reference {
                let census = run.classes.census().expect("pendant target");
                let mut deviating: Vec<CanonicalKey> = Vec::new();
                for (sec, cat) in census_sections(census) {
                    let stated = section_value(&closed, sec) as u64;
                    let computed = cat.class_count() as u64;
                    if stated != computed {
                        let w: Vec<CanonicalKey> = cat.keys().cloned().collect();
                        b.finding(
                            format!(
                                "{}: closed form gives {stated}, the {rm} finds {computed}",
                                section_label(sec)
                            ),
                            stated,
                            computed,
                            w.clone(),
                        );
                        if sec.1.is_none() {
                            deviating.extend(w);
                        }
                    }
                }
                deviating.sort();
                deviating.dedup();
                let computed = census.total() as u64;
                if let Some(&f) = b.report.method_counts.get(&Method::Formula) {
                    if f != computed {
                        b.finding(
                            format!("closed-form total {f} differs from the {rm} total {computed}"),
                            f,
                            computed,
                            deviating.clone(),
                        );
                    }
                }
                if let Some(p) = b.report.published {
                    if p != computed {
                        b.finding(
                            format!("published total {p} differs from the {rm} total {computed}"),
                            p,
                            computed,
                            deviating.clone(),
                        );
                    }
                }
                if let Some(p) = published::lookup(published::K2, n) {
                    let k2 = census.k2() as u64;
                    if p != k2 {
                        let w = census
                            .case(PendantCase::Idempotent)
                            .keys()
                            .cloned()
                            .collect();
                        b.finding(
                            format!("published k2({n}) = {p} differs from the {rm} value {k2}"),
                            p,
                            k2,
                            w,
                        );
                    }
                }
            }
        }
    }
    if let (Some(&f), Some(p)) = (
        b.report.method_counts.get(&Method::Formula),
        b.report.published,
    ) {
        if f != p {
            b.finding(
                format!("closed-form count {f} differs from the published count {p}"),
                p,
                f,
                vec![],
            );
        }
    }
    Ok(b.report)
}

/// Write `contents` to `path`, or to stdout when `path` is `None`.
pub fn emit(path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        Some(p) => write_file(p, contents),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(contents.as_bytes())
                .map_err(|e| Error::io("<stdout>", e))
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// `count`: run the methods, optionally write the JSON report.
pub fn cmd_count(
    target: TargetGraph,
    methods: &[Method],
    cfg: &RunConfig,
    out: Option<&Path>,
) -> Result<CountReport> {
    let report = count_report(target, methods, cfg)?;
    if let Some(p) = out {
        write_file(p, &report.to_json())?;
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Clone, Debug)]
pub struct EnumerateRequest {
    pub target: TargetGraph,
    /// Generator or oracle.
    pub method: Method,
    pub format: Format,
    /// Keep only classes with this value of `x_1^2` (`K_n + 1` only).
    pub x1_square: Option<PendantCase>,
}

/// Classes selected by an enumerate request, with the case and stratum of
/// each pendant class.
#[derive(Clone, Debug)]
pub struct Selection {
    pub target: TargetGraph,
    pub catalog: ClassCatalog,
    pub labels: BTreeMap<CanonicalKey, (PendantCase, Option<usize>)>,
}

pub fn select_classes(req: &EnumerateRequest, cfg: &RunConfig) -> Result<Selection> {
    let target = check_target(req.target)?;
    if req.method == Method::Formula {
        return Err(Error::usage("enumerate needs --method generator or oracle"));
    }
    if req.x1_square.is_some() && matches!(target, TargetGraph::CompleteK { .. }) {
        return Err(Error::usage("--x1-square applies to kn1 targets only"));
    }
    let run = run_method(target, req.method, cfg)?;
    let mut labels = BTreeMap::new();
    let catalog = match &run.classes {
        Classes::Complete(c) => c.clone(),
        Classes::Pendant(census) => {
            for case in PendantCase::ALL {
                for k in census.case(case).keys() {
                    labels.insert(k.clone(), (case, None));
                }
            }
            for (&r, cat) in &census.strata {
                for k in cat.keys() {
                    labels.insert(k.clone(), (PendantCase::Idempotent, Some(r)));
                }
            }
            match req.x1_square {
                Some(c) => census.case(c).clone(),
                None => census.all(),
            }
        }
    };
    Ok(Selection {
        target,
        catalog,
        labels,
    })
}

#[derive(Serialize)]
struct CsvRow {
    target: String,
    n: usize,
    class_id: usize,
    x1_square_case: String,
    r: String,
    k: String,
    t: String,
    mu: String,
    multiplicity: u64,
}

/// One CSV row per class. Columns that do not apply to the target are empty.
pub fn render_csv(sel: &Selection) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for (id, e) in sel.catalog.entries().enumerate() {
        let mut row = CsvRow {
            target: sel.target.slug(),
            n: sel.target.n(),
            class_id: id,
            x1_square_case: String::new(),
            r: String::new(),
            k: String::new(),
            t: String::new(),
            mu: String::new(),
            multiplicity: e.multiplicity,
        };
        match sel.target {
            TargetGraph::CompleteK { .. } => {
                let p = square_profile(&e.representative)?;
                row.k = p.k().to_string();
                row.t = p.t().to_string();
                row.mu =
                    p.mu.iter()
                        .map(usize::to_string)
                        .collect::<Vec<_>>()
                        .join(" ");
            }
            TargetGraph::CompletePlusEnd { .. } => {
                let (case, r) = sel.labels[&e.key];
                row.x1_square_case = case.name().to_string();
                row.r = r.map(|r| r.to_string()).unwrap_or_default();
            }
        }
        w.serialize(row)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::io("<csv buffer>", e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// The target graph once, preceded by one comment line per class.
pub fn render_dot(sel: &Selection) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "// {}: {} classes",
        sel.target,
        sel.catalog.class_count()
    )
    .unwrap();
    for (id, e) in sel.catalog.entries().enumerate() {
        write!(
            s,
            "// class {id} key={} multiplicity={}",
            e.key, e.multiplicity
        )
        .unwrap();
        if let Some((case, r)) = sel.labels.get(&e.key) {
            write!(s, " {case}").unwrap();
            if let Some(r) = r {
                write!(s, " r={r}").unwrap();
            }
        }
        s.push('\n');
    }
    s.push_str(
        &sel.target
            .graph()
            .to_dot(&sel.target.slug(), sel.target.pendant_index()),
    );
    s
}

pub fn render_selection(sel: &Selection, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => {
            let mut j = sel.catalog.to_json();
            j.push('\n');
            j
        }
        Format::Csv => render_csv(sel)?,
        Format::Dot => render_dot(sel),
    })
}

/// `enumerate`: write the selected class representatives. Returns the
/// number of classes written.
pub fn cmd_enumerate(req: &EnumerateRequest, cfg: &RunConfig, out: Option<&Path>) -> Result<usize> {
    let sel = select_classes(req, cfg)?;
    emit(out, &render_selection(&sel, req.format)?)?;
    Ok(sel.catalog.class_count())
}

/// Newline-delimited JSON of every labeled table the oracle accepts, in
/// search order. Returns the number of lines.
pub fn dump_labeled(
    target: TargetGraph,
    x1_square: Option<PendantCase>,
    cfg: &RunConfig,
    path: &Path,
) -> Result<u64> {
    let target = check_target(target)?;
    check_oracle_budget(target, cfg)?;
    let mut buf = String::new();
    let mut lines = 0;
    enumerate_labeled(target, &cfg.enum_options(), |t| {
        let keep = match (x1_square, target) {
            (Some(c), TargetGraph::CompletePlusEnd { n }) => PendantCase::of(t, n) == Some(c),
            _ => true,
        };
        if keep {
            buf.push_str(&t.to_json());
            buf.push('\n');
            lines += 1;
        }
    })?;
    write_file(path, &buf)?;
    Ok(lines)
}

/// `export-dot`: the target graph, or the zero-divisor graph of a table
/// read from a JSON file.
pub fn cmd_export_dot(target: Option<TargetGraph>, table: Option<&Path>) -> Result<String> {
    match (target, table) {
        (_, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            let t = MulTable::from_json(&text)?;
            let g = build_zd_graph(&t);
            let (name, pendant) = match recognize_target(&g) {
                Some(r) => (r.target.slug(), r.pendant.map(|(p, _)| p)),
                None => ("zd".to_string(), None),
            };
            Ok(g.to_dot(&name, pendant))
        }
        (Some(target), None) => {
            let target = target.validate()?;
            Ok(target
                .graph()
                .to_dot(&target.slug(), target.pendant_index()))
        }
        (None, None) => Err(Error::usage("export-dot needs --graph/--n or --table")),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// Internally consistent, but a stated value or condition set is off.
    Finding,
    Fail,
    /// Not run: over budget or out of range.
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Finding => "finding",
            Status::Fail => "FAIL",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub check: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
    pub reports: Vec<CountReport>,
}

impl VerifyReport {
    /// No internal cross-check failed.
    pub fn is_ok(&self) -> bool {
        self.rows.iter().all(|r| r.status != Status::Fail)
    }

    fn row(&mut self, check: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.rows.push(VerifyRow {
            check: check.into(),
            status,
            detail: detail.into(),
        });
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn render_text(&self) -> String {
        let width = self.rows.iter().map(|r| r.check.len()).max().unwrap_or(0);
        let mut s = String::new();
        for r in &self.rows {
            writeln!(
                s,
                "{:<width$}  {:<8} {}",
                r.check,
                r.status.to_string(),
                r.detail
            )
            .unwrap();
        }
        s
    }
}

/// Parse `lo..hi` (inclusive) or a single `n`.
pub fn parse_range(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::usage(format!("bad range {s:?}: expected N or LO..HI"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ),
        None => {
            let n = s.trim().parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn count_status(r: &CountReport) -> Status {
    if !r.is_consistent() {
        Status::Fail
    } else if r.findings().next().is_some() {
        Status::Finding
    } else {
        Status::Pass
    }
}

fn count_detail(r: &CountReport, oracle_skipped: bool) -> String {
    let mut parts: Vec<String> = r
        .method_counts
        .iter()
        .map(|(m, c)| format!("{m} {c}"))
        .collect();
    if let Some(p) = r.published {
        parts.push(format!("published {p}"));
    }
    if oracle_skipped {
        parts.push("oracle skipped (budget)".into());
    }
    let findings = r.findings().count();
    if findings > 0 {
        parts.push(format!("{findings} findings"));
    }
    parts.join(", ")
}

fn partition_check() -> (Status, String) {
    // Brute force: weakly increasing sequences, enumerated by the lister, are
    // counted against the recurrence.
    for j in 0..=25 {
        for i in 0..=j {
            if partitions_exact(j, i).len() as u64 != p_exact(j, i) {
                return (Status::Fail, format!("p({j}, {i}) disagrees"));
            }
        }
    }
    (
        Status::Pass,
        "p(j, i) recurrence matches enumeration for j <= 25".into(),
    )
}

/// Deterministic relabelings of `1..=m`: reversal and a rotation.
fn test_permutations(m: usize) -> Vec<Vec<usize>> {
    let rev = std::iter::once(0).chain((1..=m).rev()).collect();
    let rot = std::iter::once(0)
        .chain((1..=m).map(|i| i % m + 1))
        .collect();
    vec![rev, rot]
}

/// `verify`: every check whose budget fits, for each `n` in `lo..=hi`.
pub fn cmd_verify(lo: usize, hi: usize, cfg: &RunConfig) -> Result<VerifyReport> {
    if lo == 0 || lo > hi {
        return Err(Error::usage(format!("bad range {lo}..{hi}")));
    }
    let mut v = VerifyReport::default();
    let (st, detail) = partition_check();
    v.row("partition recurrence", st, detail);

    for n in lo..=hi {
        let mut targets = vec![TargetGraph::CompleteK { n }];
        if n >= 3 {
            targets.push(TargetGraph::CompletePlusEnd { n });
        }
        for target in targets {
            let oracle_ok = oracle_fits_budget(target, cfg);
            let mut methods = vec![Method::Formula, Method::Generator];
            if oracle_ok {
                methods.push(Method::Oracle);
            }
            let report = count_report(target, &methods, cfg)?;
            v.row(
                format!("{target} counts"),
                count_status(&report),
                count_detail(&report, !oracle_ok),
            );
            v.reports.push(report);

            if !oracle_ok {
                v.row(
                    format!("{target} condition equivalence"),
                    Status::Skipped,
                    "over budget",
                );
                v.row(
                    format!("{target} relabeling invariance"),
                    Status::Skipped,
                    "over budget",
                );
                if n >= 3 && matches!(target, TargetGraph::CompletePlusEnd { .. }) {
                    v.row(
                        format!("{target} clique is an ideal"),
                        Status::Skipped,
                        "over budget",
                    );
                }
                continue;
            }
            verify_equivalence(&mut v, target)?;
            verify_relabeling(&mut v, target, cfg)?;
            if let TargetGraph::CompletePlusEnd { n } = target {
                let mut bad = 0u64;
                let mut seen = 0u64;
                enumerate_labeled(target, &cfg.enum_options(), |t| {
                    seen += 1;
                    bad += !ideal_violations(t, n).is_empty() as u64;
                })?;
                let st = if bad == 0 { Status::Pass } else { Status::Fail };
                v.row(
                    format!("{target} clique is an ideal"),
                    st,
                    format!("{bad} violations in {seen} accepted tables"),
                );
            }
        }
    }
    Ok(v)
}

fn verify_equivalence(v: &mut VerifyReport, target: TargetGraph) -> Result<()> {
    match target {
        TargetGraph::CompleteK { n } => {
            let t = scan_complete(n)?;
            let st = if t.is_exact() {
                Status::Pass
            } else {
                Status::Finding
            };
            v.row(
                format!("{target} condition equivalence"),
                st,
                format!(
                    "{} tables, {} associative, {} counterexamples",
                    t.tables,
                    t.associative,
                    t.counterexamples()
                ),
            );
        }
        TargetGraph::CompletePlusEnd { n } => {
            for (rule, tag) in [
                (NeighborRule::AsStated, "stated"),
                (NeighborRule::Complete, "extended"),
            ] {
                let scan = scan_pendant(n, rule)?;
                for (case, t) in scan {
                    if rule == NeighborRule::Complete && case != PendantCase::Neighbor {
                        continue;
                    }
                    let st = if t.is_exact() {
                        Status::Pass
                    } else {
                        Status::Finding
                    };
                    let mut detail = format!(
                        "{} tables, {} associative, {} missed, {} spurious",
                        t.tables, t.associative, t.missed, t.spurious
                    );
                    if let Some(w) = t.missed_samples.first().or(t.spurious_samples.first()) {
                        write!(detail, ", e.g. {}", canonical_form(w)).unwrap();
                    }
                    v.row(format!("{target} {case} conditions ({tag})"), st, detail);
                }
            }
        }
    }
    Ok(())
}

fn verify_relabeling(v: &mut VerifyReport, target: TargetGraph, cfg: &RunConfig) -> Result<()> {
    let mut checked = 0u64;
    let mut bad = 0u64;
    let perms = test_permutations(target.element_count());
    let mut err = None;
    enumerate_labeled(target, &cfg.enum_options(), |t| {
        let k = canonical_form(t);
        for p in &perms {
            checked += 1;
            match t.permute(p) {
                Ok(u) => bad += (canonical_form(&u) != k) as u64,
                Err(e) => err = Some(e),
            }
        }
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    let st = if bad == 0 { Status::Pass } else { Status::Fail };
    v.row(
        format!("{target} relabeling invariance"),
        st,
        format!("{bad} key changes in {checked} relabelings"),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq() -> RunConfig {
        RunConfig {
            parallel: false,
            ..RunConfig::default()
        }
    }

    #[test]
    fn complete_four_agrees_everywhere() {
        let r = count_report(TargetGraph::CompleteK { n: 4 }, &Method::ALL, &seq()).unwrap();
        assert!(r.method_counts.values().all(|&c| c == 12));
        assert_eq!(r.published, Some(12));
        assert!(r.discrepancies.is_empty(), "{r:?}");
    }

    #[test]
    fn single_vertex_is_a_finding_not_a_failure() {
        let r = count_report(TargetGraph::CompleteK { n: 1 }, &Method::ALL, &seq()).unwrap();
        assert_eq!(r.method_counts[&Method::Formula], 2);
        assert_eq!(r.method_counts[&Method::Oracle], 1);
        assert!(r.is_consistent());
        assert!(r.findings().count() >= 1);
    }

    #[test]
    fn pendant_three_report() {
        let r = count_report(TargetGraph::CompletePlusEnd { n: 3 }, &Method::ALL, &seq()).unwrap();
        assert!(r.is_consistent());
        assert_eq!(
            r.method_counts[&Method::Generator],
            r.method_counts[&Method::Oracle]
        );
        assert_eq!(r.published, Some(15));
        let f = r
            .findings()
            .find(|d| d.description.starts_with("published total"))
            .unwrap();
        assert_eq!(f.published_value, Some(15));
        assert!(!f.witnesses.is_empty());
    }

    #[test]
    fn oracle_budget_refusal() {
        let err = count_report(
            TargetGraph::CompletePlusEnd { n: 5 },
            &[Method::Oracle],
            &seq(),
        );
        assert!(matches!(err, Err(Error::Usage(_))));
    }

    #[test]
    fn reports_are_reproducible() {
        let a = count_report(
            TargetGraph::CompletePlusEnd { n: 3 },
            &Method::ALL,
            &RunConfig::default(),
        )
        .unwrap();
        let b = count_report(TargetGraph::CompletePlusEnd { n: 3 }, &Method::ALL, &seq()).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.render_text(), b.render_text());
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = RunConfig {
            cache_dir: Some(dir.path().to_path_buf()),
            ..seq()
        };
        let target = TargetGraph::CompletePlusEnd { n: 3 };
        let a = run_method(target, Method::Oracle, &cfg).unwrap();
        assert!(cache_path(dir.path(), target, Method::Oracle).exists());
        let b = run_method(target, Method::Oracle, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("3..4").unwrap(), (3, 4));
        assert_eq!(parse_range("5").unwrap(), (5, 5));
        assert!(parse_range("4..3").is_err());
        assert!(parse_range("0..2").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn csv_columns() {
        let req = EnumerateRequest {
            target: TargetGraph::CompleteK { n: 3 },
            method: Method::Oracle,
            format: Format::Csv,
            x1_square: None,
        };
        let sel = select_classes(&req, &seq()).unwrap();
        let csv = render_csv(&sel).unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "target,n,class_id,x1_square_case,r,k,t,mu,multiplicity"
        );
        assert_eq!(lines.count(), 7);
    }
}

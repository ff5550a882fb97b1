//! Isomorphism classes of multiplication tables.
//!
//! Two tables on `{0, .., m}` are isomorphic when a relabeling of the nonzero
//! elements carries one onto the other. The canonical key of a table is the
//! lexicographically smallest row-major upper triangle over all `m!`
//! relabelings. It is found by branch and bound: entries are fixed in key
//! order, a new label is only branched on when an entry needs an unlabeled
//! row or column, and a product that lands on an unlabeled element always
//! takes the smallest free label (any other choice makes that entry larger).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::table::MulTable;

/// Upper triangle of the lexicographically minimal relabeling.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    m: usize,
    key: Vec<u8>,
}

impl CanonicalKey {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.key
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.key)
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let key = hex::decode(s).map_err(|e| Error::usage(format!("bad key {s:?}: {e}")))?;
        let m = triangle_side(key.len())
            .ok_or_else(|| Error::usage(format!("key length {} is not triangular", key.len())))?;
        Ok(CanonicalKey { m, key })
    }

    /// The table in canonical labeling.
    pub fn to_table(&self) -> MulTable {
        let mut t = MulTable::zero(self.m);
        let mut it = self.key.iter();
        for u in 1..=self.m {
            for v in u..=self.m {
                t.set_unchecked(u, v, *it.next().unwrap() as usize);
            }
        }
        t
    }
}

fn triangle_side(len: usize) -> Option<usize> {
    (0..=64).find(|m| m * (m + 1) / 2 == len)
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalKey {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for CanonicalKey {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CanonicalKey::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

const NONE: u8 = u8::MAX;

struct Search<'a> {
    table: &'a MulTable,
    positions: Vec<(usize, usize)>,
    /// new label -> old element
    sigma: Vec<u8>,
    /// old element -> new label
    pi: Vec<u8>,
    buf: Vec<u8>,
    best: Option<Vec<u8>>,
    best_sigma: Vec<u8>,
    version: u64,
}

impl Search<'_> {
    fn smallest_free_label(&self) -> usize {
        (1..self.sigma.len())
            .find(|&l| self.sigma[l] == NONE)
            .expect("a free label exists while an element is unlabeled")
    }

    /// `tight` means `buf[..pos] == best[..pos]`; otherwise the current
    /// prefix is already strictly smaller (or there is no best yet).
    fn go(&mut self, pos: usize, mut tight: bool) {
        if pos == self.positions.len() {
            if !tight {
                self.best = Some(self.buf.clone());
                self.best_sigma.clone_from(&self.sigma);
                self.version += 1;
            }
            return;
        }
        let (i, j) = self.positions[pos];
        for slot in [i, j] {
            if self.sigma[slot] == NONE {
                for old in 1..self.pi.len() {
                    if self.pi[old] != NONE {
                        continue;
                    }
                    self.sigma[slot] = old as u8;
                    self.pi[old] = slot as u8;
                    let before = self.version;
                    self.go(pos, tight);
                    if self.version != before {
                        tight = true;
                    }
                    self.pi[old] = NONE;
                    self.sigma[slot] = NONE;
                }
                return;
            }
        }

        let old_val = self
            .table
            .product(self.sigma[i] as usize, self.sigma[j] as usize);
        let mut forced = None;
        let val = if self.pi[old_val] == NONE {
            let l = self.smallest_free_label();
            self.sigma[l] = old_val as u8;
            self.pi[old_val] = l as u8;
            forced = Some(l);
            l as u8
        } else {
            self.pi[old_val]
        };

        let child_tight = match (&self.best, tight) {
            (Some(best), true) => match val.cmp(&best[pos]) {
                std::cmp::Ordering::Greater => None,
                std::cmp::Ordering::Equal => Some(true),
                std::cmp::Ordering::Less => Some(false),
            },
            _ => Some(false),
        };
        if let Some(child_tight) = child_tight {
            self.buf[pos] = val;
            self.go(pos + 1, child_tight);
        }

        if let Some(l) = forced {
            self.sigma[l] = NONE;
            self.pi[old_val] = NONE;
        }
    }
}

/// Canonical key together with the relabeling `perm[old] = new` that
/// produces it.
pub fn canonical_labeling(t: &MulTable) -> (CanonicalKey, Vec<usize>) {
    let m = t.m();
    let positions: Vec<(usize, usize)> =
        (1..=m).flat_map(|u| (u..=m).map(move |v| (u, v))).collect();
    let mut sigma = vec![NONE; m + 1];
    let mut pi = vec![NONE; m + 1];
    sigma[0] = 0;
    pi[0] = 0;
    let mut search = Search {
        table: t,
        buf: vec![0; positions.len()],
        positions,
        sigma,
        pi,
        best: None,
        best_sigma: Vec::new(),
        version: 0,
    };
    search.go(0, false);

    let key = search.best.unwrap_or_default();
    let mut perm = vec![0; m + 1];
    if m > 0 {
        for (new, &old) in search.best_sigma.iter().enumerate() {
            perm[old as usize] = new;
        }
    }
    (CanonicalKey { m, key }, perm)
}

pub fn canonical_form(t: &MulTable) -> CanonicalKey {
    canonical_labeling(t).0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub key: CanonicalKey,
    /// Class representative in canonical labeling.
    pub representative: MulTable,
    /// Number of labeled tables inserted into this class.
    pub multiplicity: u64,
}

/// Isomorphism classes keyed by canonical form, iterated in key order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassCatalog {
    entries: BTreeMap<CanonicalKey, CatalogEntry>,
}

impl ClassCatalog {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns true when `t` opened a new class.
    pub fn insert(&mut self, t: &MulTable) -> bool {
        self.insert_key(canonical_form(t), 1)
    }

    /// Insert by a key already computed with [`canonical_form`].
    pub fn insert_keyed(&mut self, key: CanonicalKey) -> bool {
        self.insert_key(key, 1)
    }

    fn insert_key(&mut self, key: CanonicalKey, multiplicity: u64) -> bool {
        match self.entries.get_mut(&key) {
            Some(e) => {
                e.multiplicity += multiplicity;
                false
            }
            None => {
                let representative = key.to_table();
                self.entries.insert(
                    key.clone(),
                    CatalogEntry {
                        key,
                        representative,
                        multiplicity,
                    },
                );
                true
            }
        }
    }

    /// Key-wise union with multiplicities added.
    pub fn merge(&mut self, other: ClassCatalog) {
        for (key, e) in other.entries {
            self.insert_key(key, e.multiplicity);
        }
    }

    pub fn class_count(&self) -> usize {
        self.entries.len()
    }

    pub fn labeled_count(&self) -> u64 {
        self.entries.values().map(|e| e.multiplicity).sum()
    }

    pub fn contains(&self, key: &CanonicalKey) -> bool {
        self.entries.contains_key(key)
    }

    pub fn keys(&self) -> impl Iterator<Item = &CanonicalKey> {
        self.entries.keys()
    }

    pub fn entries(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.values()
    }

    pub fn get(&self, key: &CanonicalKey) -> Option<&CatalogEntry> {
        self.entries.get(key)
    }

    /// Serialized as a JSON array sorted by key.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("catalog serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    fn from_entries(list: Vec<CatalogEntry>) -> Result<Self> {
        let mut c = ClassCatalog::new();
        for e in list {
            if canonical_form(&e.representative) != e.key {
                return Err(Error::InvalidTable(format!(
                    "representative of {} is not in canonical labeling",
                    e.key
                )));
            }
            c.insert_key(e.key, e.multiplicity);
        }
        Ok(c)
    }
}

impl Serialize for ClassCatalog {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.entries.values())
    }
}

impl<'de> Deserialize<'de> for ClassCatalog {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let list = Vec::<CatalogEntry>::deserialize(d)?;
        ClassCatalog::from_entries(list).map_err(serde::de::Error::custom)
    }
}

impl FromIterator<MulTable> for ClassCatalog {
    fn from_iter<I: IntoIterator<Item = MulTable>>(iter: I) -> Self {
        let mut c = ClassCatalog::new();
        for t in iter {
            c.insert(&t);
        }
        c
    }
}

/// Nilpotent / idempotent / pointer decomposition of a `K_n` semigroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SquareProfile {
    /// `a_i^2 = 0`
    pub nilpotent: Vec<usize>,
    /// `a_i^2 = a_i`
    pub idempotent: Vec<usize>,
    /// `a_i^2 = a_j` for some nilpotent `a_j`, `j != i`
    pub pointer: Vec<usize>,
    /// For each nilpotent, the number of pointers squaring onto it; sorted.
    pub mu: Vec<usize>,
}

impl SquareProfile {
    pub fn k(&self) -> usize {
        self.nilpotent.len()
    }

    pub fn t(&self) -> usize {
        self.idempotent.len()
    }

    /// The shifted multiplicities `mu_i + 1`: a partition of `n - t` into
    /// `k` parts.
    pub fn parts(&self) -> Vec<usize> {
        self.mu.iter().map(|l| l + 1).collect()
    }

    /// The isomorphism invariant `(k, t, mu)`.
    pub fn signature(&self) -> (usize, usize, Vec<usize>) {
        (self.k(), self.t(), self.mu.clone())
    }
}

/// Read off the square profile of a table realizing `K_n` (off-diagonal
/// products all zero, squares obeying the nilpotent / idempotent / pointer
/// trichotomy).
pub fn square_profile(t: &MulTable) -> Result<SquareProfile> {
    let n = t.m();
    for u in 1..=n {
        for v in u + 1..=n {
            if t.product(u, v) != 0 {
                return Err(Error::usage(format!(
                    "not a K_{n} table: a{u} a{v} = {}",
                    t.product(u, v)
                )));
            }
        }
    }
    let mut p = SquareProfile {
        nilpotent: vec![],
        idempotent: vec![],
        pointer: vec![],
        mu: vec![],
    };
    for i in 1..=n {
        match t.product(i, i) {
            0 => p.nilpotent.push(i),
            s if s == i => p.idempotent.push(i),
            s if t.product(s, s) == 0 => p.pointer.push(i),
            s => {
                return Err(Error::usage(format!(
                    "not a K_{n} semigroup: a{i}^2 = a{s} but a{s}^2 != 0"
                )))
            }
        }
    }
    let mut mu: Vec<usize> = p
        .nilpotent
        .iter()
        .map(|&j| p.pointer.iter().filter(|&&c| t.product(c, c) == j).count())
        .collect();
    mu.sort_unstable();
    p.mu = mu;
    Ok(p)
}

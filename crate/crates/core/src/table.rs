//! Finite commutative multiplication tables with a zero element.
//!
//! Elements are dense indices `0..=m`; index 0 is the zero. For the pendant
//! family the layout is `0, a_1..a_n, x_1` with `x_1` at index `n + 1`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of an element of a finite semigroup; `ElementId(0)` is the zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(pub u8);

impl ElementId {
    pub const ZERO: ElementId = ElementId(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl From<usize> for ElementId {
    fn from(i: usize) -> Self {
        debug_assert!(i <= u8::MAX as usize);
        ElementId(i as u8)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Largest number of nonzero elements a table may carry.
pub const MAX_ELEMENTS: usize = 16;

/// Dense symmetric multiplication table on `{0, 1, .., m}`.
///
/// Invariants: row and column 0 are all zero, and `entries[u][v] ==
/// entries[v][u]`. Every mutator preserves both.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TableRepr", into = "TableRepr")]
pub struct MulTable {
    m: usize,
    cells: Vec<u8>,
}

/// A failing associativity triple: `(u v) w = lhs` but `u (v w) = rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssocWitness {
    pub triple: (ElementId, ElementId, ElementId),
    pub lhs: ElementId,
    pub rhs: ElementId,
}

impl MulTable {
    /// The null table on `m` nonzero elements: every product is zero.
    pub fn zero(m: usize) -> Self {
        assert!(m <= MAX_ELEMENTS, "table too large: {m}");
        MulTable {
            m,
            cells: vec![0; (m + 1) * (m + 1)],
        }
    }

    /// Build from a full `(m+1) x (m+1)` grid, rejecting anything that breaks
    /// the zero-row or symmetry invariants.
    pub fn from_grid(m: usize, grid: &[Vec<ElementId>]) -> Result<Self> {
        if m > MAX_ELEMENTS {
            return Err(Error::InvalidTable(format!(
                "m = {m} exceeds the supported maximum of {MAX_ELEMENTS}"
            )));
        }
        if grid.len() != m + 1 || grid.iter().any(|row| row.len() != m + 1) {
            return Err(Error::InvalidTable(format!(
                "expected a {0}x{0} grid",
                m + 1
            )));
        }
        let mut table = MulTable::zero(m);
        for (u, row) in grid.iter().enumerate() {
            for (v, &val) in row.iter().enumerate() {
                if val.index() > m {
                    return Err(Error::InvalidTable(format!(
                        "entry ({u},{v}) = {val} is out of range 0..={m}"
                    )));
                }
                if (u == 0 || v == 0) && !val.is_zero() {
                    return Err(Error::InvalidTable(format!(
                        "zero does not absorb: entry ({u},{v}) = {val}"
                    )));
                }
                if grid[v][u] != val {
                    return Err(Error::InvalidTable(format!(
                        "table is not commutative at ({u},{v})"
                    )));
                }
                table.cells[u * (m + 1) + v] = val.0;
            }
        }
        Ok(table)
    }

    /// Number of nonzero elements.
    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// Raw product on indices. Panics when out of range.
    #[inline]
    pub fn product(&self, u: usize, v: usize) -> usize {
        self.cells[u * (self.m + 1) + v] as usize
    }

    /// Checked product.
    pub fn mul(&self, u: ElementId, v: ElementId) -> Result<ElementId> {
        if u.index() > self.m || v.index() > self.m {
            return Err(Error::usage(format!(
                "element out of range: ({u}, {v}) with m = {}",
                self.m
            )));
        }
        Ok(ElementId(self.cells[u.index() * (self.m + 1) + v.index()]))
    }

    /// Set `u v = v u = value`.
    pub fn set(&mut self, u: usize, v: usize, value: usize) -> Result<()> {
        if u > self.m || v > self.m || value > self.m {
            return Err(Error::usage(format!(
                "set({u}, {v}) = {value} out of range for m = {}",
                self.m
            )));
        }
        if (u == 0 || v == 0) && value != 0 {
            return Err(Error::usage("products with zero are fixed at zero"));
        }
        self.set_unchecked(u, v, value);
        Ok(())
    }

    #[inline]
    pub(crate) fn set_unchecked(&mut self, u: usize, v: usize, value: usize) {
        let w = self.m + 1;
        self.cells[u * w + v] = value as u8;
        self.cells[v * w + u] = value as u8;
    }

    /// Row-major copy of the full grid.
    pub fn grid(&self) -> Vec<Vec<ElementId>> {
        (0..=self.m)
            .map(|u| {
                (0..=self.m)
                    .map(|v| ElementId(self.product(u, v) as u8))
                    .collect()
            })
            .collect()
    }

    /// Scan nonzero triples in lexicographic order and return the first one
    /// on which `(uv)w != u(vw)`.
    pub fn check_associativity(&self) -> Option<AssocWitness> {
        let m = self.m;
        for u in 1..=m {
            for v in 1..=m {
                let uv = self.product(u, v);
                for w in 1..=m {
                    let lhs = self.product(uv, w);
                    let rhs = self.product(u, self.product(v, w));
                    if lhs != rhs {
                        return Some(AssocWitness {
                            triple: (u.into(), v.into(), w.into()),
                            lhs: lhs.into(),
                            rhs: rhs.into(),
                        });
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.check_associativity().is_none()
    }

    /// Nonzero `u` with some nonzero `v` (possibly `u` itself) and `uv = 0`.
    pub fn zero_divisors(&self) -> BTreeSet<ElementId> {
        (1..=self.m)
            .filter(|&u| (1..=self.m).any(|v| self.product(u, v) == 0))
            .map(ElementId::from)
            .collect()
    }

    fn all_nonzero_are_zero_divisors(&self) -> bool {
        (1..=self.m).all(|u| (1..=self.m).any(|v| self.product(u, v) == 0))
    }

    /// Associative, and every nonzero element is a zero divisor.
    pub fn is_zd_semigroup(&self) -> bool {
        self.all_nonzero_are_zero_divisors() && self.is_associative()
    }

    /// Relabel through `perm`, where `perm[old] = new` and `perm[0] = 0`.
    pub fn permute(&self, perm: &[usize]) -> Result<MulTable> {
        check_permutation(perm, self.m)?;
        let mut out = MulTable::zero(self.m);
        for u in 1..=self.m {
            for v in u..=self.m {
                out.set_unchecked(perm[u], perm[v], perm[self.product(u, v)]);
            }
        }
        Ok(out)
    }

    /// Upper triangle of the nonzero block, row-major: `m(m+1)/2` entries.
    pub fn upper_triangle(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.m * (self.m + 1) / 2);
        for u in 1..=self.m {
            for v in u..=self.m {
                out.push(self.product(u, v) as u8);
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("table serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

fn check_permutation(perm: &[usize], m: usize) -> Result<()> {
    if perm.len() != m + 1 || perm[0] != 0 {
        return Err(Error::usage(
            "permutation must have length m+1 and fix the zero element",
        ));
    }
    let mut seen = vec![false; m + 1];
    for &p in perm {
        if p > m || seen[p] {
            return Err(Error::usage("not a permutation of 0..=m"));
        }
        seen[p] = true;
    }
    Ok(())
}

impl fmt::Debug for MulTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MulTable(m = {})", self.m)?;
        for u in 0..=self.m {
            let row: Vec<String> = (0..=self.m)
                .map(|v| self.product(u, v).to_string())
                .collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    m: usize,
    entries: Vec<Vec<ElementId>>,
}

impl TryFrom<TableRepr> for MulTable {
    type Error = Error;

    fn try_from(repr: TableRepr) -> Result<Self> {
        MulTable::from_grid(repr.m, &repr.entries)
    }
}

impl From<MulTable> for TableRepr {
    fn from(t: MulTable) -> Self {
        TableRepr {
            m: t.m,
            entries: t.grid(),
        }
    }
}

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Graded Betti numbers `β_{i,j}` of a cyclic module `S/I` over a polynomial
/// ring in `n` variables.
///
/// Only nonzero entries are stored. The entry `β_{0,0} = 1` is always present
/// and is the only entry in homological degree 0. Rows `1..=p` are all
/// nonempty, where `p` is the projective dimension.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedBettiTable {
    n: usize,
    entries: BTreeMap<(usize, u32), u64>,
}

impl GradedBettiTable {
    /// Builds a table from `(i, j, β_{i,j})` triples. Duplicate positions
    /// are rejected.
    pub fn new<I>(n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, u32, u64)>,
    {
        let mut map = BTreeMap::new();
        for (i, j, value) in entries {
            if value == 0 {
                return Err(Error::InvalidTable(format!(
                    "entry ({i}, {j}) is zero; absent entries are zero"
                )));
            }
            if map.insert((i, j), value).is_some() {
                return Err(Error::InvalidTable(format!("duplicate entry ({i}, {j})")));
            }
        }
        Self::from_map(n, map)
    }

    pub(crate) fn from_map(n: usize, entries: BTreeMap<(usize, u32), u64>) -> Result<Self> {
        if entries.get(&(0, 0)) != Some(&1) {
            return Err(Error::InvalidTable("β_{0,0} must equal 1".into()));
        }
        if let Some(((_, j), _)) = entries.iter().find(|((i, j), _)| *i == 0 && *j != 0) {
            return Err(Error::InvalidTable(format!(
                "homological degree 0 has an entry in internal degree {j}"
            )));
        }
        if entries.values().any(|v| *v == 0) {
            return Err(Error::InvalidTable("zero multiplicity stored".into()));
        }
        let p = entries.keys().map(|(i, _)| *i).max().unwrap_or(0);
        if p > n {
            return Err(Error::InvalidTable(format!(
                "projective dimension {p} exceeds the {n} ring variables"
            )));
        }
        for i in 1..=p {
            if entries.range((i, 0)..=(i, u32::MAX)).next().is_none() {
                return Err(Error::InvalidTable(format!(
                    "row {i} is empty but row {p} is not"
                )));
            }
        }
        Ok(Self { n, entries })
    }

    /// The table of `S` itself (the zero ideal): only `β_{0,0} = 1`.
    pub fn trivial(n: usize) -> Self {
        Self {
            n,
            entries: BTreeMap::from([((0, 0), 1)]),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Largest homological index with a nonzero entry.
    pub fn projdim(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    pub fn get(&self, i: usize, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries `(i, j, β_{i,j})` with `i` ascending, then `j` ascending.
    pub fn entries(&self) -> impl Iterator<Item = (usize, u32, u64)> + '_ {
        self.entries.iter().map(|((i, j), v)| (*i, *j, *v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nonzero entries `(j, β_{i,j})` of row `i`.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.entries
            .range((i, 0)..=(i, u32::MAX))
            .map(|((_, j), v)| (*j, *v))
    }

    /// Total Betti number `β_i`.
    pub fn total(&self, i: usize) -> u64 {
        self.row(i).map(|(_, v)| v).sum()
    }

    /// `(β_1, ..., β_p)`.
    pub fn totals(&self) -> Vec<u64> {
        (1..=self.projdim()).map(|i| self.total(i)).collect()
    }

    /// Same entries in a ring with `n` variables.
    pub fn with_n(&self, n: usize) -> Result<Self> {
        Self::from_map(n, self.entries.clone())
    }
}

impl fmt::Debug for GradedBettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "betti {}", self.n)?;
        for (i, j, v) in self.entries() {
            write!(f, "; {i} {j} {v}")?;
        }
        Ok(())
    }
}

//! Pure diagrams and greedy Boij-Söderberg decomposition.
//!
//! A Betti diagram of a Cohen-Macaulay module is decomposed by repeatedly
//! taking the strand of minimal shifts `d = (m_1, ..., m_p)` of the current
//! remainder, subtracting the largest multiple of the pure diagram `π(d)`
//! that keeps the remainder nonnegative, and continuing until nothing is
//! left. Each step clears at least one entry of the strand, so the strands
//! form a chain that is strictly increasing coefficientwise.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bounds::{g2_lower, g3_upper};
use crate::error::{Error, Result};
use crate::ideal::RingInvariants;
use crate::table::GradedBettiTable;
use crate::Rational;

/// `π(d)`: the diagram with `π(d)_{i,d_i} = Π_{k<i} d_k/(d_i-d_k) · Π_{k>i} d_k/(d_k-d_i)`
/// and `β_{0,0} = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PureDiagram {
    d: Vec<u32>,
    values: Vec<Rational>,
}

impl PureDiagram {
    pub fn new(d: &[u32]) -> Result<Self> {
        if d.is_empty() || d[0] == 0 || d.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotStrictlyIncreasing(d.to_vec()));
        }
        let p = d.len();
        let values = (0..p)
            .map(|i| {
                let mut value = Rational::one();
                for k in 0..i {
                    value *= Rational::new(d[k].into(), (d[i] - d[k]).into());
                }
                for k in i + 1..p {
                    value *= Rational::new(d[k].into(), (d[k] - d[i]).into());
                }
                value
            })
            .collect();
        Ok(Self {
            d: d.to_vec(),
            values,
        })
    }

    pub fn shifts(&self) -> &[u32] {
        &self.d
    }

    /// `π(d)_{i,d_i}` for `i = 1..=p`.
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn p(&self) -> usize {
        self.d.len()
    }

    /// `d_k = d_1 + (k - 1)` for every `k`.
    pub fn is_linear(&self) -> bool {
        self.d
            .iter()
            .enumerate()
            .all(|(k, dk)| *dk as usize == self.d[0] as usize + k)
    }
}

impl fmt::Debug for PureDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "π{:?}", self.d)
    }
}

pub fn pure_diagram(d: &[u32]) -> Result<PureDiagram> {
    PureDiagram::new(d)
}

/// Coefficientwise comparison `d ≤ d'`.
pub fn diagram_leq(d: &[u32], other: &[u32]) -> Result<bool> {
    if d.len() != other.len() {
        return Err(Error::InvalidArgument(format!(
            "cannot compare shift sequences of lengths {} and {}",
            d.len(),
            other.len()
        )));
    }
    Ok(d.iter().zip(other).all(|(a, b)| a <= b))
}

/// A Betti diagram with rational entries, `(i, j) ↦ β_{i,j}`, including the
/// `β_{0,0}` strand. Zero entries are not stored.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct RationalDiagram {
    entries: BTreeMap<(usize, u32), Rational>,
}

impl RationalDiagram {
    pub fn from_table(table: &GradedBettiTable) -> Self {
        Self {
            entries: table
                .entries()
                .map(|(i, j, v)| ((i, j), Rational::from_integer(BigInt::from(v))))
                .collect(),
        }
    }

    /// `Σ λ π(d)` over the given terms.
    pub fn combination<'a, I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (&'a Rational, &'a PureDiagram)>,
    {
        let mut out = Self::default();
        for (lambda, pi) in terms {
            out.add(0, 0, lambda.clone());
            for (k, (dk, v)) in pi.shifts().iter().zip(pi.values()).enumerate() {
                out.add(k + 1, *dk, lambda * v);
            }
        }
        out
    }

    pub fn get(&self, i: usize, j: u32) -> Rational {
        self.entries
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add(&mut self, i: usize, j: u32, value: Rational) {
        let slot = self.entries.entry((i, j)).or_insert_with(Rational::zero);
        *slot += value;
        if slot.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, u32, &Rational)> + '_ {
        self.entries.iter().map(|((i, j), v)| (*i, *j, v))
    }

    pub fn projdim(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// Smallest `j` with `β_{i,j} ≠ 0`.
    pub fn min_degree(&self, i: usize) -> Option<u32> {
        self.entries
            .range((i, 0)..=(i, u32::MAX))
            .next()
            .map(|((_, j), _)| *j)
    }

    pub fn total(&self, i: usize) -> Rational {
        self.entries
            .range((i, 0)..=(i, u32::MAX))
            .map(|(_, v)| v.clone())
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Debug for RationalDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(
                self.entries
                    .iter()
                    .map(|((i, j), v)| ((i, j), v.to_string())),
            )
            .finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionTerm {
    pub lambda: Rational,
    pub diagram: PureDiagram,
}

/// `target = Σ λ π(d)` over a chain of pure diagrams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub terms: Vec<DecompositionTerm>,
    pub target: RationalDiagram,
}

impl Decomposition {
    pub fn reconstruct(&self) -> RationalDiagram {
        RationalDiagram::combination(self.terms.iter().map(|t| (&t.lambda, &t.diagram)))
    }

    pub fn lambda_sum(&self) -> Rational {
        self.terms.iter().map(|t| t.lambda.clone()).sum()
    }

    /// Consecutive strands are strictly increasing coefficientwise.
    pub fn is_chain(&self) -> bool {
        self.terms.windows(2).all(|w| {
            let (a, b) = (w[0].diagram.shifts(), w[1].diagram.shifts());
            a != b && a.iter().zip(b).all(|(x, y)| x <= y)
        })
    }

    pub fn p(&self) -> usize {
        self.terms.first().map_or(0, |t| t.diagram.p())
    }
}

/// Why the greedy loop stopped, with the remainder at that point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionFailure {
    pub reason: String,
    pub terms: Vec<DecompositionTerm>,
    pub remainder: RationalDiagram,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecomposeOutcome {
    Success(Decomposition),
    Failure(DecompositionFailure),
}

impl DecomposeOutcome {
    pub fn success(&self) -> Option<&Decomposition> {
        match self {
            DecomposeOutcome::Success(d) => Some(d),
            DecomposeOutcome::Failure(_) => None,
        }
    }
}

pub fn decompose(table: &GradedBettiTable) -> Result<DecomposeOutcome> {
    decompose_diagram(&RationalDiagram::from_table(table))
}

/// Greedy decomposition of a rational diagram with `β_{0,0}` and rows
/// `1..=p`.
pub fn decompose_diagram(target: &RationalDiagram) -> Result<DecomposeOutcome> {
    let p = target.projdim();
    if p == 0 {
        return Err(Error::InvalidTable(
            "projective dimension 0 has no pure decomposition".into(),
        ));
    }
    if target.entries().any(|(i, j, _)| i == 0 && j != 0) {
        return Err(Error::InvalidTable("β_0 strand outside degree 0".into()));
    }
    let cap = target.entries().filter(|(i, _, _)| *i >= 1).count() + 1;
    let mut remainder = target.clone();
    let mut terms: Vec<DecompositionTerm> = Vec::new();
    let fail = |reason: String, terms: Vec<DecompositionTerm>, remainder: RationalDiagram| {
        Ok(DecomposeOutcome::Failure(DecompositionFailure {
            reason,
            terms,
            remainder,
        }))
    };
    loop {
        let negative = remainder
            .entries()
            .find(|(_, _, v)| v.is_negative())
            .map(|(i, j, v)| format!("negative remainder β_{{{i},{j}}} = {v}"));
        if let Some(reason) = negative {
            return fail(reason, terms, remainder);
        }
        if remainder.entries().all(|(i, _, _)| i == 0) {
            let rest = remainder.get(0, 0);
            if rest.is_zero() {
                return Ok(DecomposeOutcome::Success(Decomposition {
                    terms,
                    target: target.clone(),
                }));
            }
            let reason = format!("coefficients sum to {}, not 1", Rational::one() - rest);
            return fail(reason, terms, remainder);
        }
        if terms.len() >= cap {
            return fail(format!("iteration cap {cap} reached"), terms, remainder);
        }
        let mut strand = Vec::with_capacity(p);
        for i in 1..=p {
            match remainder.min_degree(i) {
                Some(j) => strand.push(j),
                None => {
                    let reason = format!("row {i} is exhausted while other rows remain");
                    return fail(reason, terms, remainder);
                }
            }
        }
        let pi = match PureDiagram::new(&strand) {
            Ok(pi) => pi,
            Err(_) => {
                let reason = format!("minimal strand {strand:?} is not strictly increasing");
                return fail(reason, terms, remainder);
            }
        };
        let lambda = (1..=p)
            .map(|i| remainder.get(i, strand[i - 1]) / &pi.values()[i - 1])
            .min()
            .expect("p >= 1");
        remainder.add(0, 0, -lambda.clone());
        for i in 1..=p {
            remainder.add(i, strand[i - 1], -(&lambda * &pi.values()[i - 1]));
        }
        terms.push(DecompositionTerm {
            lambda,
            diagram: pi,
        });
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexRow {
    pub i: usize,
    pub beta: Rational,
    pub upper: Rational,
    pub lower: Rational,
    pub upper_holds: bool,
    pub lower_holds: bool,
    pub upper_equality: bool,
    pub lower_equality: bool,
}

/// Upper `Π_{j≠i} M_j(D) / ((i-1)!(p-i)!)` and lower
/// `Π_{j<i} m_j(D)/(M_i(D)-m_j(D)) · Π_{j>i} m_j(D)/(M_j(D)-m_i(D))` for a
/// convex combination `D`, where `M_i(D)` and `m_i(D)` are the extreme
/// `d_i` over the strands with nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexBoundsCheck {
    pub min_shifts: Vec<u32>,
    pub max_shifts: Vec<u32>,
    pub rows: Vec<ConvexRow>,
    /// `D` is a single pure diagram.
    pub is_pure: bool,
    /// `D` is a single linear diagram.
    pub is_linear: bool,
}

impl ConvexBoundsCheck {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.upper_holds && r.lower_holds)
    }

    pub fn all_upper_equal(&self) -> bool {
        self.rows.iter().all(|r| r.upper_equality)
    }

    pub fn all_lower_equal(&self) -> bool {
        self.rows.iter().all(|r| r.lower_equality)
    }
}

pub fn convex_bounds_check(dec: &Decomposition) -> ConvexBoundsCheck {
    let p = dec.p();
    let active: Vec<&DecompositionTerm> =
        dec.terms.iter().filter(|t| !t.lambda.is_zero()).collect();
    let extreme = |pick: fn(u32, u32) -> u32| -> Vec<u32> {
        (0..p)
            .map(|k| {
                active
                    .iter()
                    .map(|t| t.diagram.shifts()[k])
                    .reduce(pick)
                    .unwrap_or(0)
            })
            .collect()
    };
    let min_shifts = extreme(std::cmp::min);
    let max_shifts = extreme(std::cmp::max);
    let rows = (1..=p)
        .map(|i| {
            let beta: Rational = active
                .iter()
                .map(|t| &t.lambda * &t.diagram.values()[i - 1])
                .sum();
            let upper = g3_upper(i, &max_shifts).expect("index in range");
            // m(D) < M(D) entrywise across indices for any chain of strands.
            let lower = g2_lower(i, &min_shifts, &max_shifts)
                .expect("strand extremes of a convex combination are admissible");
            ConvexRow {
                i,
                upper_holds: beta <= upper,
                lower_holds: beta >= lower,
                upper_equality: beta == upper,
                lower_equality: beta == lower,
                beta,
                upper,
                lower,
            }
        })
        .collect();
    let is_pure = active.len() == 1;
    ConvexBoundsCheck {
        is_linear: is_pure && active[0].diagram.is_linear(),
        is_pure,
        min_shifts,
        max_shifts,
        rows,
    }
}

/// Cohen-Macaulay of codimension 2, or Gorenstein of codimension 3.
pub fn low_codimension_applicable(invariants: &RingInvariants, gorenstein: bool) -> bool {
    (invariants.is_cohen_macaulay && invariants.codim == 2) || (gorenstein && invariants.codim == 3)
}

//! Monomials and monomial ideals.
//!
//! Variables are indexed from 1, so `x1` is the first variable. Exponent
//! vectors are stored densely with length equal to the number of ring
//! variables `n`. A [`MonomialIdeal`] always holds its unique minimal
//! generating set `G(I)`; the zero ideal is the ideal with no generators.
//! The unit ideal is not representable: any constructor that would produce
//! it fails with [`Error::UnitIdeal`].

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::table::GradedBettiTable;

/// Largest ring for which the height of an ideal is computed by exhaustive
/// vertex-cover search.
pub const MAX_COVER_VARIABLES: usize = 16;

/// A monomial `x^u` given by its exponent vector `u`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        let degree = exponents.iter().sum();
        Self { exponents, degree }
    }

    /// The constant monomial `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        Self::new(vec![0; n])
    }

    /// The variable `x_index` (1-based) in a ring with `n` variables.
    pub fn var(n: usize, index: usize) -> Result<Self> {
        if index == 0 || index > n {
            return Err(Error::InvalidArgument(format!(
                "variable index {index} out of range 1..={n}"
            )));
        }
        let mut exponents = vec![0; n];
        exponents[index - 1] = 1;
        Ok(Self::new(exponents))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Number of ring variables.
    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Exponent of `x_index` (1-based).
    pub fn exponent(&self, index: usize) -> u32 {
        self.exponents[index - 1]
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Multiplies by `x_index` (1-based).
    pub fn times_var(&self, index: usize) -> Monomial {
        let mut exponents = self.exponents.clone();
        exponents[index - 1] += 1;
        Monomial::new(exponents)
    }

    /// `(x^u / x_from) * x_to`, or `None` when `x_from` does not divide `x^u`.
    pub fn exchange(&self, from: usize, to: usize) -> Option<Monomial> {
        if self.exponents[from - 1] == 0 {
            return None;
        }
        let mut exponents = self.exponents.clone();
        exponents[from - 1] -= 1;
        exponents[to - 1] += 1;
        Some(Monomial::new(exponents))
    }

    /// Bitmask of the variables occurring in the monomial (bit `k` is `x_{k+1}`).
    pub fn support_mask(&self) -> u64 {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .fold(0u64, |acc, (k, _)| acc | (1 << k))
    }

    /// `m(u)`: the largest index of a variable dividing `x^u`.
    pub fn max_index(&self) -> Result<usize> {
        self.exponents
            .iter()
            .rposition(|e| *e > 0)
            .map(|k| k + 1)
            .ok_or(Error::ConstantMonomial)
    }
}

impl Ord for Monomial {
    /// Degree first, then lexicographically with `x1` largest first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.exponents.cmp(&self.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (k, e) in self.exponents.iter().enumerate() {
            if *e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", k + 1)?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All monomials of degree `k` in `n` variables, `x1`-heaviest first.
pub fn monomials_of_degree(n: usize, k: u32) -> Vec<Monomial> {
    fn fill(pos: usize, left: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos + 1 == current.len() {
            current[pos] = left;
            out.push(Monomial::new(current.clone()));
            return;
        }
        for e in (0..=left).rev() {
            current[pos] = e;
            fill(pos + 1, left - e, current, out);
        }
        current[pos] = 0;
    }
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    fill(0, k, &mut vec![0; n], &mut out);
    out
}

/// A monomial ideal stored by its minimal generators `G(I)`, sorted by
/// degree and then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Reduces a generating set to the divisibility-minimal subset.
    pub fn minimalize<I>(gens: I, n: usize) -> Result<Self>
    where
        I: IntoIterator<Item = Monomial>,
    {
        if n == 0 {
            return Err(Error::NoVariables);
        }
        let mut unique = BTreeSet::new();
        for g in gens {
            if g.n() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: g.n(),
                });
            }
            if g.degree() == 0 {
                return Err(Error::UnitIdeal);
            }
            unique.insert(g);
        }
        // Sorted by degree, so a divisor of g always precedes g.
        let mut generators: Vec<Monomial> = Vec::with_capacity(unique.len());
        for g in unique {
            if !generators.iter().any(|h| h.divides(&g)) {
                generators.push(g);
            }
        }
        Ok(Self { n, generators })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            generators: Vec::new(),
        }
    }

    /// `(x_1, ..., x_n)^a`.
    pub fn power_of_maximal_ideal(n: usize, a: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoVariables);
        }
        if a == 0 {
            return Err(Error::UnitIdeal);
        }
        Self::minimalize(monomials_of_degree(n, a), n)
    }

    /// The smallest strongly stable ideal containing the given monomials.
    pub fn borel_closure<I>(monomials: I, n: usize) -> Result<Self>
    where
        I: IntoIterator<Item = Monomial>,
    {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<Monomial> = monomials.into_iter().collect();
        while let Some(u) = stack.pop() {
            if u.n() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: u.n(),
                });
            }
            if !seen.insert(u.clone()) {
                continue;
            }
            for i in 2..=n {
                if let Some(v) = u.exchange(i, i - 1) {
                    if !seen.contains(&v) {
                        stack.push(v);
                    }
                }
            }
        }
        Self::minimalize(seen, n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.generators.iter().map(Monomial::degree).min()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.generators.iter().map(Monomial::degree).max()
    }

    /// Membership by divisibility against `G(I)`.
    pub fn contains(&self, u: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(u))
    }

    /// For every generator `u`, every `x_i | u` and every `j < i`, checks
    /// `(u / x_i) x_j ∈ I`.
    pub fn is_strongly_stable(&self) -> bool {
        self.strong_stability_witness().is_none()
    }

    /// A generator and exchange that leave the ideal, if any.
    pub fn strong_stability_witness(&self) -> Option<(Monomial, usize, usize)> {
        for u in &self.generators {
            for i in 1..=self.n {
                for j in 1..i {
                    if let Some(v) = u.exchange(i, j) {
                        if !self.contains(&v) {
                            return Some((u.clone(), i, j));
                        }
                    }
                }
            }
        }
        None
    }

    /// `I_<k>`: the ideal generated by the degree-`k` monomials of `I`.
    pub fn component_ideal(&self, k: u32) -> Self {
        if k == 0 || self.is_zero() {
            return Self::zero(self.n);
        }
        let generators = monomials_of_degree(self.n, k)
            .into_iter()
            .filter(|u| self.contains(u))
            .collect::<Vec<_>>();
        Self::minimalize(generators, self.n).expect("degree k > 0 monomials in n variables")
    }

    /// `I_{>=b}`: the ideal generated by the monomials of `I` of degree at least `b`.
    pub fn truncate_at(&self, b: u32) -> Self {
        let mut gens = Vec::new();
        for g in &self.generators {
            if g.degree() >= b {
                gens.push(g.clone());
            } else {
                for h in monomials_of_degree(self.n, b - g.degree()) {
                    gens.push(g.mul(&h));
                }
            }
        }
        Self::minimalize(gens, self.n).expect("generators of I have positive degree")
    }

    /// True iff the generators have pairwise disjoint supports, i.e. form a
    /// monomial regular sequence.
    pub fn is_monomial_regular_sequence(&self) -> bool {
        let mut seen = 0u64;
        for g in &self.generators {
            let s = g.support_mask();
            if seen & s != 0 {
                return false;
            }
            seen |= s;
        }
        true
    }

    /// Height of the ideal: the minimum number of variables meeting the
    /// support of every generator.
    pub fn codim(&self) -> Result<usize> {
        if self.is_zero() {
            return Ok(0);
        }
        if self.n > MAX_COVER_VARIABLES {
            return Err(Error::TooManyVariables(self.n));
        }
        let supports: Vec<u64> = self.generators.iter().map(Monomial::support_mask).collect();
        let covers = |mask: u64| supports.iter().all(|s| s & mask != 0);
        // The full variable set is always a cover.
        Ok((0u64..1 << self.n)
            .filter(|mask| covers(*mask))
            .map(|mask| mask.count_ones() as usize)
            .min()
            .unwrap_or(self.n))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {} variables", self.n)
    }
}

/// Dimension-theoretic invariants of `S/I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RingInvariants {
    pub dim: usize,
    pub codim: usize,
    pub depth: usize,
    pub projdim: usize,
    pub is_cohen_macaulay: bool,
}

/// Combines the height of `I` with the projective dimension read off the
/// Betti table of `S/I` (depth by Auslander-Buchsbaum).
pub fn ring_invariants(ideal: &MonomialIdeal, table: &GradedBettiTable) -> Result<RingInvariants> {
    let n = ideal.n();
    let codim = ideal.codim()?;
    let projdim = table.projdim();
    if projdim > n {
        return Err(Error::InvalidTable(format!(
            "projective dimension {projdim} exceeds {n} variables"
        )));
    }
    let dim = n - codim;
    let depth = n - projdim;
    Ok(RingInvariants {
        dim,
        codim,
        depth,
        projdim,
        is_cohen_macaulay: dim == depth,
    })
}

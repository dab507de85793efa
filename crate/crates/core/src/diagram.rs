//! Shape analysis of a single Betti table: shifts, purity classes,
//! Peskine-Szpiro residuals, the Herzog-Kühl formulas and the multiplicity
//! read off the Hilbert numerator.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::table::GradedBettiTable;
use crate::Rational;

/// Minimal and maximal shifts `m_i`, `M_i` for `1 ≤ i ≤ p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftProfile {
    pub p: usize,
    /// `m_1, ..., m_p`
    pub min: Vec<u32>,
    /// `M_1, ..., M_p`
    pub max: Vec<u32>,
}

impl ShiftProfile {
    /// `m_i` (1-based).
    pub fn m(&self, i: usize) -> u32 {
        self.min[i - 1]
    }

    /// `M_i` (1-based).
    pub fn big_m(&self, i: usize) -> u32 {
        self.max[i - 1]
    }
}

pub fn shifts(table: &GradedBettiTable) -> ShiftProfile {
    let p = table.projdim();
    let mut min = Vec::with_capacity(p);
    let mut max = Vec::with_capacity(p);
    for i in 1..=p {
        // Rows 1..=p are nonempty by construction of the table.
        let degrees: Vec<u32> = table.row(i).map(|(j, _)| j).collect();
        min.push(degrees[0]);
        max.push(degrees[degrees.len() - 1]);
    }
    ShiftProfile { p, min, max }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolutionClass {
    pub is_pure: bool,
    pub is_linear: bool,
    pub is_quasi_pure: bool,
    pub is_strictly_quasi_pure: bool,
}

/// Pure: `m_i = M_i`. Linear: pure with `M_i = M_1 + i - 1`. Quasi-pure:
/// `m_i ≥ M_{i-1}`; strictly: `m_i > M_{i-1}`, with `M_0 = 0`.
pub fn classify(table: &GradedBettiTable) -> ResolutionClass {
    classify_shifts(&shifts(table))
}

pub fn classify_shifts(s: &ShiftProfile) -> ResolutionClass {
    let is_pure = s.min == s.max;
    let is_linear = is_pure
        && s.max
            .iter()
            .enumerate()
            .all(|(k, mk)| *mk as usize == s.max[0] as usize + k);
    let prev_max = |k: usize| if k == 0 { 0 } else { s.max[k - 1] };
    let is_quasi_pure = (0..s.p).all(|k| s.min[k] >= prev_max(k));
    let is_strictly_quasi_pure = (0..s.p).all(|k| s.min[k] > prev_max(k));
    ResolutionClass {
        is_pure,
        is_linear,
        is_quasi_pure,
        is_strictly_quasi_pure,
    }
}

/// Residuals of the Peskine-Szpiro equations: entry 0 is
/// `Σ_{i≥1} (-1)^i β_i + 1`, entry `k` for `1 ≤ k ≤ p-1` is
/// `Σ_{i≥1} (-1)^i Σ_j j^k β_{i,j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeskineSzpiro {
    pub residuals: Vec<BigInt>,
}

impl PeskineSzpiro {
    pub fn all_zero(&self) -> bool {
        self.residuals.iter().all(Zero::is_zero)
    }
}

pub fn peskine_szpiro_check(table: &GradedBettiTable) -> PeskineSzpiro {
    let p = table.projdim();
    let moment = |k: u32| -> BigInt {
        table
            .entries()
            .filter(|(i, _, _)| *i >= 1)
            .map(|(i, j, v)| {
                let term = BigInt::from(j).pow(k) * BigInt::from(v);
                if i % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum()
    };
    let mut residuals = Vec::with_capacity(p.max(1));
    residuals.push(moment(0) + BigInt::one());
    for k in 1..p {
        residuals.push(moment(k as u32));
    }
    PeskineSzpiro { residuals }
}

/// Multiplicity and total Betti numbers forced by a pure resolution with
/// shifts `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HerzogKuhl {
    pub multiplicity: Rational,
    pub betti: Vec<Rational>,
}

/// `e = (1/p!) Π d_i` and `β_i = (-1)^{i+1} Π_{j≠i} d_j / (d_j - d_i)`.
pub fn herzog_kuhl(d: &[u32]) -> Result<HerzogKuhl> {
    if d.is_empty() || d[0] == 0 || d.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NotStrictlyIncreasing(d.to_vec()));
    }
    let p = d.len();
    let multiplicity = Rational::new(d.iter().map(|x| BigInt::from(*x)).product(), factorial(p));
    let betti = (0..p)
        .map(|i| {
            let mut num = BigInt::one();
            let mut den = BigInt::one();
            for j in (0..p).filter(|j| *j != i) {
                num *= BigInt::from(d[j]);
                den *= BigInt::from(d[j] as i64 - d[i] as i64);
            }
            // i is 0-based, so (-1)^{(i+1)+1} = (-1)^i.
            let value = Rational::new(num, den);
            if i % 2 == 0 {
                value
            } else {
                -value
            }
        })
        .collect();
    Ok(HerzogKuhl {
        multiplicity,
        betti,
    })
}

/// Hilbert numerator `N(t) = Σ (-1)^i β_{i,j} t^j`, its quotient by
/// `(1-t)^codim`, and the multiplicity `e` (the quotient at `t = 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    /// Coefficients of `N(t)`, constant term first.
    pub numerator: Vec<BigInt>,
    /// Coefficients of `N(t) / (1-t)^codim`.
    pub quotient: Vec<BigInt>,
    pub codim: usize,
    pub multiplicity: Rational,
}

pub fn hilbert_numerator(table: &GradedBettiTable) -> Vec<BigInt> {
    let top = table.entries().map(|(_, j, _)| j).max().unwrap_or(0) as usize;
    let mut coeffs = vec![BigInt::zero(); top + 1];
    for (i, j, v) in table.entries() {
        if i % 2 == 0 {
            coeffs[j as usize] += v;
        } else {
            coeffs[j as usize] -= v;
        }
    }
    coeffs
}

pub fn hilbert_multiplicity(table: &GradedBettiTable, codim: usize) -> Result<HilbertData> {
    if codim > table.n() {
        return Err(Error::CodimInconsistent {
            codim,
            reason: format!("exceeds the {} ring variables", table.n()),
        });
    }
    let numerator = hilbert_numerator(table);
    let mut quotient = numerator.clone();
    for step in 0..codim {
        // N = (1 - t) Q  ⟺  Q has coefficients the prefix sums of N and N(1) = 0.
        let total: BigInt = quotient.iter().sum();
        if !total.is_zero() || quotient.len() < 2 {
            return Err(Error::CodimInconsistent {
                codim,
                reason: format!("numerator is divisible by (1-t)^{step} only"),
            });
        }
        let mut acc = BigInt::zero();
        let mut next = Vec::with_capacity(quotient.len() - 1);
        for c in &quotient[..quotient.len() - 1] {
            acc += c;
            next.push(acc.clone());
        }
        quotient = next;
    }
    let value: BigInt = quotient.iter().sum();
    if !value.is_positive() {
        return Err(Error::CodimInconsistent {
            codim,
            reason: "quotient vanishes at t = 1, the codimension is larger".into(),
        });
    }
    Ok(HilbertData {
        numerator,
        quotient,
        codim,
        multiplicity: Rational::from_integer(value),
    })
}

/// The multiplicity conjecture window `Π m_i / p! ≤ e ≤ Π M_i / p!`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityCheck {
    pub lower: Rational,
    pub upper: Rational,
    pub multiplicity: Rational,
    pub lower_holds: bool,
    pub upper_holds: bool,
    pub lower_equality: bool,
    pub upper_equality: bool,
}

pub fn multiplicity_conjecture_check(
    table: &GradedBettiTable,
    codim: usize,
) -> Result<MultiplicityCheck> {
    let p = table.projdim();
    if p != codim {
        return Err(Error::NotCohenMacaulayShape { projdim: p, codim });
    }
    let s = shifts(table);
    let product = |v: &[u32]| -> BigInt { v.iter().map(|x| BigInt::from(*x)).product() };
    let lower = Rational::new(product(&s.min), factorial(p));
    let upper = Rational::new(product(&s.max), factorial(p));
    let multiplicity = hilbert_multiplicity(table, codim)?.multiplicity;
    Ok(MultiplicityCheck {
        lower_holds: lower <= multiplicity,
        upper_holds: multiplicity <= upper,
        lower_equality: lower == multiplicity,
        upper_equality: upper == multiplicity,
        lower,
        upper,
        multiplicity,
    })
}

/// `n!`
pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

#[cfg(test)]
/// Exact `a / b` for integers with `b ≠ 0`.
pub(crate) fn ratio(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

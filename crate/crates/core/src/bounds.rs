//! Shift-based bounds on total Betti numbers.
//!
//! Six families are evaluated as exact rationals:
//!
//! | family     | formula for index `i` |
//! |------------|-----------------------|
//! | `G1_upper` | `Π_{j<i} M_j/(M_i-M_j) · Π_{j>i} M_j/(M_j-M_i)` |
//! | `G1_lower` | the same with `m` |
//! | `G2_upper` | `Π_{j<i} M_j/(m_i-M_j) · Π_{j>i} M_j/(m_j-M_i)` |
//! | `G2_lower` | `Π_{j<i} m_j/(M_i-m_j) · Π_{j>i} m_j/(M_j-m_i)` |
//! | `G3_upper` | `Π_{j≠i} M_j / ((i-1)! (p-i)!)` |
//! | `CWL_upper`| `C(i+M_1-2, i-1) · C(p+M_1-1, p-i)` |
//!
//! A bound whose formula has a non-positive denominator is *inapplicable*,
//! which is reported separately from a bound that is violated.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::diagram::{classify, factorial, shifts, ResolutionClass, ShiftProfile};
use crate::error::{Error, Result};
use crate::resolution::{has_linear_resolution, mapping_cone_adjoin};
use crate::table::GradedBettiTable;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inapplicable {
    pub reason: String,
}

impl fmt::Display for Inapplicable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "inapplicable({})", self.reason)
    }
}

pub type BoundValue = std::result::Result<Rational, Inapplicable>;

fn inapplicable(reason: impl Into<String>) -> Inapplicable {
    Inapplicable {
        reason: reason.into(),
    }
}

fn check_index(i: usize, p: usize) -> std::result::Result<(), Inapplicable> {
    if i == 0 || i > p {
        Err(inapplicable(format!("index {i} outside 1..={p}")))
    } else {
        Ok(())
    }
}

fn strictly_increasing(name: &str, seq: &[u32]) -> std::result::Result<(), Inapplicable> {
    match seq.windows(2).position(|w| w[0] >= w[1]) {
        Some(k) => Err(inapplicable(format!(
            "{name}_{} = {} < {name}_{} = {} fails",
            k + 1,
            seq[k],
            k + 2,
            seq[k + 1]
        ))),
        None => Ok(()),
    }
}

/// `Π_{j≠i} num(j) / den(j)` where each `den(j)` must be positive; `label(j)`
/// names the denominator in the reason when it is not.
fn shift_product(
    i: usize,
    p: usize,
    num: impl Fn(usize) -> i64,
    den: impl Fn(usize) -> i64,
    label: impl Fn(usize) -> String,
) -> BoundValue {
    let mut n = BigInt::one();
    let mut d = BigInt::one();
    for j in (1..=p).filter(|j| *j != i) {
        let dj = den(j);
        if dj <= 0 {
            return Err(inapplicable(format!(
                "denominator {} = {dj} is not positive",
                label(j)
            )));
        }
        n *= num(j);
        d *= dj;
    }
    Ok(Rational::new(n, d))
}

/// `Π_{j<i} M_j/(M_i-M_j) · Π_{j>i} M_j/(M_j-M_i)`; needs `M` strictly increasing.
pub fn g1_upper(i: usize, max: &[u32]) -> BoundValue {
    pure_shape_bound(i, max, "M")
}

/// `Π_{j<i} m_j/(m_i-m_j) · Π_{j>i} m_j/(m_j-m_i)`; needs `m` strictly increasing.
pub fn g1_lower(i: usize, min: &[u32]) -> BoundValue {
    pure_shape_bound(i, min, "m")
}

fn pure_shape_bound(i: usize, s: &[u32], name: &str) -> BoundValue {
    let p = s.len();
    check_index(i, p)?;
    strictly_increasing(name, s)?;
    let x = |k: usize| s[k - 1] as i64;
    shift_product(
        i,
        p,
        x,
        |j| if j < i { x(i) - x(j) } else { x(j) - x(i) },
        |j| {
            if j < i {
                format!("{name}_{i} - {name}_{j}")
            } else {
                format!("{name}_{j} - {name}_{i}")
            }
        },
    )
}

/// `Π_{j<i} M_j/(m_i-M_j) · Π_{j>i} M_j/(m_j-M_i)`; needs a strictly
/// quasi-pure shape `m_k > M_{k-1}`.
pub fn g2_upper(i: usize, min: &[u32], max: &[u32]) -> BoundValue {
    let p = max.len();
    check_index(i, p)?;
    if min.len() != p {
        return Err(inapplicable("shift sequences of different lengths"));
    }
    if let Some(k) = (1..p).find(|k| min[*k] <= max[k - 1]) {
        return Err(inapplicable(format!(
            "not strictly quasi-pure: m_{} = {} <= M_{} = {}",
            k + 1,
            min[k],
            k,
            max[k - 1]
        )));
    }
    let lo = |k: usize| min[k - 1] as i64;
    let hi = |k: usize| max[k - 1] as i64;
    shift_product(
        i,
        p,
        hi,
        |j| if j < i { lo(i) - hi(j) } else { lo(j) - hi(i) },
        |j| {
            if j < i {
                format!("m_{i} - M_{j}")
            } else {
                format!("m_{j} - M_{i}")
            }
        },
    )
}

/// `Π_{j<i} m_j/(M_i-m_j) · Π_{j>i} m_j/(M_j-m_i)`; needs `m` strictly
/// increasing and positive denominators.
pub fn g2_lower(i: usize, min: &[u32], max: &[u32]) -> BoundValue {
    let p = min.len();
    check_index(i, p)?;
    if max.len() != p {
        return Err(inapplicable("shift sequences of different lengths"));
    }
    strictly_increasing("m", min)?;
    let lo = |k: usize| min[k - 1] as i64;
    let hi = |k: usize| max[k - 1] as i64;
    shift_product(
        i,
        p,
        lo,
        |j| if j < i { hi(i) - lo(j) } else { hi(j) - lo(i) },
        |j| {
            if j < i {
                format!("M_{i} - m_{j}")
            } else {
                format!("M_{j} - m_{i}")
            }
        },
    )
}

/// `Π_{j≠i} M_j / ((i-1)! (p-i)!)` with `p = max.len()`.
pub fn g3_upper(i: usize, max: &[u32]) -> BoundValue {
    let p = max.len();
    check_index(i, p)?;
    let product: BigInt = (1..=p)
        .filter(|j| *j != i)
        .map(|j| BigInt::from(max[j - 1]))
        .product();
    Ok(Rational::new(product, factorial(i - 1) * factorial(p - i)))
}

/// `C(a, b)`, zero unless `0 ≤ b ≤ a`.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if b < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for k in 0..b {
        acc = acc * BigInt::from(a - k) / BigInt::from(k + 1);
    }
    acc
}

/// `C(i+M_1-2, i-1) · C(p+M_1-1, p-i)`.
pub fn cwl_upper(i: usize, m1: u32, p: usize) -> BigInt {
    let (i, m1, p) = (i as i64, m1 as i64, p as i64);
    binomial(i + m1 - 2, i - 1) * binomial(p + m1 - 1, p - i)
}

/// `Σ_{j=i}^n C(j-1, i-1) C(j+M_1-2, M_1-1) = C(i+M_1-2, i-1) C(n+M_1-1, n-i)`.
pub fn binomial_identity_check(i: usize, n: usize, m1: u32) -> bool {
    let lhs: BigInt = (i..=n)
        .map(|j| {
            binomial(j as i64 - 1, i as i64 - 1) * binomial(j as i64 + m1 as i64 - 2, m1 as i64 - 1)
        })
        .sum();
    lhs == cwl_upper(i, m1, n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundFamily {
    G1Upper,
    G1Lower,
    G2Upper,
    G2Lower,
    G3Upper,
    CwlUpper,
}

impl BoundFamily {
    pub const ALL: [BoundFamily; 6] = [
        BoundFamily::G1Upper,
        BoundFamily::G1Lower,
        BoundFamily::G2Upper,
        BoundFamily::G2Lower,
        BoundFamily::G3Upper,
        BoundFamily::CwlUpper,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundFamily::G1Upper => "G1_upper",
            BoundFamily::G1Lower => "G1_lower",
            BoundFamily::G2Upper => "G2_upper",
            BoundFamily::G2Lower => "G2_lower",
            BoundFamily::G3Upper => "G3_upper",
            BoundFamily::CwlUpper => "CWL_upper",
        }
    }

    pub fn is_upper(self) -> bool {
        !matches!(self, BoundFamily::G1Lower | BoundFamily::G2Lower)
    }
}

impl fmt::Display for BoundFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Hypotheses under which some of the bound families are proven.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Guarantee {
    /// Complete intersections.
    CompleteIntersection,
    /// Cohen-Macaulay with a strictly quasi-pure resolution.
    StrictlyQuasiPureCm,
    /// Cohen-Macaulay of codimension 2 or Gorenstein of codimension 3.
    LowCodimension,
    /// Componentwise linear and Cohen-Macaulay.
    ComponentwiseLinearCm,
    /// Componentwise linear.
    ComponentwiseLinear,
}

impl Guarantee {
    pub fn name(self) -> &'static str {
        match self {
            Guarantee::CompleteIntersection => "complete_intersection",
            Guarantee::StrictlyQuasiPureCm => "strictly_quasi_pure_cm",
            Guarantee::LowCodimension => "low_codimension",
            Guarantee::ComponentwiseLinearCm => "componentwise_linear_cm",
            Guarantee::ComponentwiseLinear => "componentwise_linear",
        }
    }

    /// Families proven under the hypothesis.
    pub fn families(self) -> &'static [BoundFamily] {
        use BoundFamily::*;
        match self {
            Guarantee::CompleteIntersection | Guarantee::ComponentwiseLinearCm => {
                &[G1Upper, G1Lower, G2Lower, G3Upper]
            }
            Guarantee::StrictlyQuasiPureCm => &[G2Upper, G2Lower, G3Upper],
            Guarantee::LowCodimension => &[G2Lower, G3Upper],
            Guarantee::ComponentwiseLinear => &[CwlUpper],
        }
    }
}

impl fmt::Display for Guarantee {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Structural facts about `S/I` that cannot be read off a Betti table.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assumptions {
    pub cohen_macaulay: bool,
    pub gorenstein: bool,
    pub complete_intersection: bool,
    pub componentwise_linear: bool,
    pub codim: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundRecord {
    pub family: BoundFamily,
    pub value: BoundValue,
    pub satisfied: bool,
    pub equality: bool,
    pub guaranteed: bool,
}

impl BoundRecord {
    pub fn applicable(&self) -> bool {
        self.value.is_ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexReport {
    pub i: usize,
    pub beta: u64,
    pub bounds: Vec<BoundRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    /// Projective dimension.
    pub p: usize,
    pub codim: Option<usize>,
    pub shifts: ShiftProfile,
    pub class: ResolutionClass,
    pub assumptions: Assumptions,
    pub guarantees: BTreeSet<Guarantee>,
    pub indices: Vec<IndexReport>,
}

impl BoundsReport {
    pub fn record(&self, i: usize, family: BoundFamily) -> &BoundRecord {
        self.indices[i - 1]
            .bounds
            .iter()
            .find(|r| r.family == family)
            .expect("every family is evaluated at every index")
    }

    /// Equality at every index (false when `p = 0`).
    pub fn all_equal(&self, family: BoundFamily) -> bool {
        self.p > 0 && (1..=self.p).all(|i| self.record(i, family).equality)
    }

    pub fn all_satisfied(&self, family: BoundFamily) -> bool {
        (1..=self.p).all(|i| self.record(i, family).satisfied)
    }

    /// Guaranteed bounds that fail, as `(i, family)`.
    pub fn guaranteed_violations(&self) -> Vec<(usize, BoundFamily)> {
        self.indices
            .iter()
            .flat_map(|ix| {
                ix.bounds
                    .iter()
                    .filter(|r| r.guaranteed && !r.satisfied)
                    .map(move |r| (ix.i, r.family))
            })
            .collect()
    }
}

fn cor42_hypothesis(cohen_macaulay: bool, gorenstein: bool, codim: Option<usize>) -> bool {
    (cohen_macaulay && codim == Some(2)) || (gorenstein && codim == Some(3))
}

/// Evaluates every bound family at every index `1..=p` and records which
/// hypotheses the assumptions and the shape of the table bring into force.
///
/// `CWL_upper` is evaluated with `p` the projective dimension.
pub fn evaluate_report(
    table: &GradedBettiTable,
    assumptions: &Assumptions,
) -> Result<BoundsReport> {
    let p = table.projdim();
    let totals = table.totals();
    let cm =
        assumptions.cohen_macaulay || assumptions.gorenstein || assumptions.complete_intersection;
    let codim = match (assumptions.codim, cm) {
        (Some(c), true) if c != p => {
            return Err(Error::InconsistentAssumptions(format!(
                "Cohen-Macaulay requires projdim = codim, got {p} and {c}"
            )))
        }
        (Some(c), _) if c > table.n() => {
            return Err(Error::InconsistentAssumptions(format!(
                "codim {c} exceeds the {} ring variables",
                table.n()
            )))
        }
        (Some(c), _) if c > p => {
            return Err(Error::InconsistentAssumptions(format!(
                "codim {c} exceeds projdim {p}"
            )))
        }
        (Some(c), _) => Some(c),
        (None, true) => Some(p),
        (None, false) => None,
    };
    if assumptions.gorenstein && p > 0 && totals[p - 1] != 1 {
        return Err(Error::InconsistentAssumptions(format!(
            "Gorenstein requires β_p = 1, got {}",
            totals[p - 1]
        )));
    }
    if assumptions.complete_intersection {
        if let Some(i) =
            (1..=p).find(|i| BigInt::from(totals[i - 1]) != binomial(p as i64, *i as i64))
        {
            return Err(Error::InconsistentAssumptions(format!(
                "complete intersection requires β_{i} = C({p}, {i}), got {}",
                totals[i - 1]
            )));
        }
    }

    let s = shifts(table);
    let class = classify(table);
    let mut guarantees = BTreeSet::new();
    if assumptions.complete_intersection {
        guarantees.insert(Guarantee::CompleteIntersection);
    }
    if cm && class.is_strictly_quasi_pure {
        guarantees.insert(Guarantee::StrictlyQuasiPureCm);
    }
    if cor42_hypothesis(cm, assumptions.gorenstein, codim) {
        guarantees.insert(Guarantee::LowCodimension);
    }
    if assumptions.componentwise_linear && cm {
        guarantees.insert(Guarantee::ComponentwiseLinearCm);
    }
    if assumptions.componentwise_linear {
        guarantees.insert(Guarantee::ComponentwiseLinear);
    }
    let guaranteed: BTreeSet<BoundFamily> = guarantees
        .iter()
        .flat_map(|t| t.families().iter().copied())
        .collect();

    let indices = (1..=p)
        .map(|i| {
            let beta = totals[i - 1];
            let bounds = BoundFamily::ALL
                .iter()
                .map(|&family| {
                    let value = match family {
                        BoundFamily::G1Upper => g1_upper(i, &s.max),
                        BoundFamily::G1Lower => g1_lower(i, &s.min),
                        BoundFamily::G2Upper => g2_upper(i, &s.min, &s.max),
                        BoundFamily::G2Lower => g2_lower(i, &s.min, &s.max),
                        BoundFamily::G3Upper => g3_upper(i, &s.max),
                        BoundFamily::CwlUpper => {
                            Ok(Rational::from_integer(cwl_upper(i, s.big_m(1), p)))
                        }
                    };
                    let b = Rational::from_integer(BigInt::from(beta));
                    let (satisfied, equality) = match &value {
                        Ok(v) if family.is_upper() => (b <= *v, b == *v),
                        Ok(v) => (b >= *v, b == *v),
                        Err(_) => (false, false),
                    };
                    BoundRecord {
                        family,
                        value,
                        satisfied,
                        equality,
                        guaranteed: guaranteed.contains(&family),
                    }
                })
                .collect();
            IndexReport { i, beta, bounds }
        })
        .collect();

    Ok(BoundsReport {
        p,
        codim,
        shifts: s,
        class,
        assumptions: assumptions.clone(),
        guarantees,
        indices,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeRow {
    pub i: usize,
    pub beta: u64,
    pub bound: Rational,
    pub satisfied: bool,
    pub equality: bool,
}

/// Outcome of adjoining a non-zero divisor of degree `d` to a table that
/// satisfies `G3_upper` everywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypersurfaceSectionCheck {
    pub cone: GradedBettiTable,
    pub d: u32,
    pub rows: Vec<ConeRow>,
    pub all_satisfied: bool,
    pub all_equal: bool,
    /// `d = 1` and both the ideal and its extension have 1-linear resolutions.
    pub predicted_equality: bool,
    /// The input has `p = 0`; the bound is then `1 = β_1` for every `d` and
    /// the equality characterization does not apply.
    pub degenerate: bool,
}

pub fn hypersurface_section_check(
    table: &GradedBettiTable,
    d: u32,
) -> Result<HypersurfaceSectionCheck> {
    let p = table.projdim();
    let s = shifts(table);
    for (i, beta) in table.totals().into_iter().enumerate() {
        let bound = g3_upper(i + 1, &s.max).expect("index in range");
        if Rational::from_integer(BigInt::from(beta)) > bound {
            return Err(Error::HypothesisFailure(format!(
                "β_{} = {beta} exceeds the G3 bound {bound}",
                i + 1
            )));
        }
    }
    let cone = mapping_cone_adjoin(table, d)?;
    let cs = shifts(&cone);
    let rows: Vec<ConeRow> = cone
        .totals()
        .into_iter()
        .enumerate()
        .map(|(k, beta)| {
            let bound = g3_upper(k + 1, &cs.max).expect("index in range");
            let b = Rational::from_integer(BigInt::from(beta));
            ConeRow {
                i: k + 1,
                beta,
                satisfied: b <= bound,
                equality: b == bound,
                bound,
            }
        })
        .collect();
    Ok(HypersurfaceSectionCheck {
        all_satisfied: rows.iter().all(|r| r.satisfied),
        all_equal: rows.iter().all(|r| r.equality),
        predicted_equality: d == 1
            && has_linear_resolution(table, 1)
            && has_linear_resolution(&cone, 1),
        degenerate: p == 0,
        cone,
        d,
        rows,
    })
}

//! Graded Betti tables of `S/I`.
//!
//! Three independent routes are provided: the Eliahou-Kervaire formula for
//! strongly stable ideals, the Koszul complex for complete intersections,
//! and reduced homology of upper Koszul simplicial complexes for arbitrary
//! monomial ideals. The last one is slow but makes no structural
//! assumption, which makes it the reference the other two are checked
//! against.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::binomial;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ideal::{Monomial, MonomialIdeal};
use crate::linalg;
use crate::table::GradedBettiTable;

/// Default generator cap for [`homology_betti`].
pub const DEFAULT_MAX_GENERATORS: usize = 32;

/// Betti table of `S/I` for a strongly stable ideal via
/// `β_{i,i+j} = Σ_{u ∈ G(I), deg u = j+1} C(m(u)-1, i-1)`.
pub fn ek_betti(ideal: &MonomialIdeal) -> Result<GradedBettiTable> {
    if let Some((u, i, j)) = ideal.strong_stability_witness() {
        return Err(Error::NotStronglyStable(format!(
            "({u} / x{i}) * x{j} is not in the ideal"
        )));
    }
    let mut entries = BTreeMap::from([((0usize, 0u32), 1u64)]);
    for u in ideal.generators() {
        let m = u.max_index()?;
        for i in 1..=m {
            let count = binomial((m - 1) as u64, (i - 1) as u64);
            *entries.entry((i, u.degree() + i as u32 - 1)).or_default() += count;
        }
    }
    GradedBettiTable::from_map(ideal.n(), entries)
}

/// Betti table of `S/(f_1, ..., f_p)` for a regular sequence with the given
/// degrees: `β_{i,j}` counts the `i`-subsets of the degrees summing to `j`.
pub fn koszul_betti(degrees: &[u32]) -> Result<GradedBettiTable> {
    if degrees.is_empty() {
        return Err(Error::InvalidArgument("empty degree list".into()));
    }
    if let Some(d) = degrees.iter().find(|d| **d == 0) {
        return Err(Error::InvalidArgument(format!(
            "degree {d} is not positive"
        )));
    }
    let p = degrees.len();
    if p >= 32 {
        return Err(Error::InvalidArgument(format!("{p} degrees is too many")));
    }
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut entries = BTreeMap::new();
    for subset in 0u32..1 << p {
        let i = subset.count_ones() as usize;
        let j: u32 = (0..p)
            .filter(|k| subset & (1 << k) != 0)
            .map(|k| sorted[k])
            .sum();
        *entries.entry((i, j)).or_default() += 1;
    }
    GradedBettiTable::from_map(p, entries)
}

/// [`homology_betti_with_cap`] with [`DEFAULT_MAX_GENERATORS`].
pub fn homology_betti(ideal: &MonomialIdeal) -> Result<GradedBettiTable> {
    homology_betti_with_cap(ideal, DEFAULT_MAX_GENERATORS)
}

/// Betti table of `S/I` from the upper Koszul simplicial complexes
/// `K^b(I) = {σ ⊆ supp(b) : x^{b-σ} ∈ I}`: `β_{i+1,b}(S/I) = dim H̃_{i-1}(K^b(I))`,
/// over the multidegrees `b` in the lcm lattice of `G(I)`.
pub fn homology_betti_with_cap(ideal: &MonomialIdeal, cap: usize) -> Result<GradedBettiTable> {
    let gens = ideal.generators();
    if gens.len() > cap {
        return Err(Error::TooLarge {
            generators: gens.len(),
            cap,
        });
    }
    if ideal.n() > 30 {
        return Err(Error::InvalidArgument(format!(
            "{} variables is too many for the simplicial method",
            ideal.n()
        )));
    }
    let lattice: Vec<Monomial> = lcm_lattice(gens).into_iter().collect();
    let contributions: Vec<Vec<(usize, u32, u64)>> = lattice
        .par_iter()
        .map(|b| multidegree_betti(ideal, b))
        .collect();
    let mut entries = BTreeMap::from([((0usize, 0u32), 1u64)]);
    for (i, j, v) in contributions.into_iter().flatten() {
        *entries.entry((i, j)).or_default() += v;
    }
    GradedBettiTable::from_map(ideal.n(), entries)
}

/// All lcms of nonempty subsets of `gens`.
fn lcm_lattice(gens: &[Monomial]) -> BTreeSet<Monomial> {
    let mut lattice: BTreeSet<Monomial> = gens.iter().cloned().collect();
    let mut frontier: Vec<Monomial> = gens.to_vec();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in gens {
                let l = x.lcm(g);
                if !lattice.contains(&l) {
                    lattice.insert(l.clone());
                    next.push(l);
                }
            }
        }
        frontier = next;
    }
    lattice
}

/// Nonzero `(i, deg b, β_{i,b}(S/I))` for a single multidegree.
fn multidegree_betti(ideal: &MonomialIdeal, b: &Monomial) -> Vec<(usize, u32, u64)> {
    let support: Vec<usize> = (0..b.n()).filter(|&k| b.exponents()[k] > 0).collect();
    let s = support.len();
    // Faces as bitmasks over positions in `support`, grouped by size.
    let mut faces: Vec<Vec<u32>> = vec![Vec::new(); s + 1];
    for mask in 0u32..1 << s {
        let mut e = b.exponents().to_vec();
        for (pos, var) in support.iter().enumerate() {
            if mask & (1 << pos) != 0 {
                e[*var] -= 1;
            }
        }
        if ideal.contains(&Monomial::new(e)) {
            faces[mask.count_ones() as usize].push(mask);
        }
    }
    // rank of ∂_k : C_k → C_{k-1} where C_k is spanned by faces with k vertices.
    let ranks: Vec<usize> = (0..=s + 1)
        .map(|k| {
            if k == 0 || k > s || faces[k].is_empty() || faces[k - 1].is_empty() {
                0
            } else {
                linalg::rank(&boundary_matrix(&faces[k - 1], &faces[k]))
            }
        })
        .collect();
    let mut out = Vec::new();
    for k in 0..=s {
        let h = faces[k].len() - ranks[k] - ranks[k + 1];
        if h > 0 {
            out.push((k + 1, b.degree(), h as u64));
        }
    }
    out
}

/// Matrix of the simplicial boundary from `upper` faces to `lower` faces.
fn boundary_matrix(lower: &[u32], upper: &[u32]) -> Vec<Vec<i64>> {
    let index: BTreeMap<u32, usize> = lower.iter().enumerate().map(|(r, f)| (*f, r)).collect();
    let mut m = vec![vec![0i64; upper.len()]; lower.len()];
    for (c, face) in upper.iter().enumerate() {
        let mut sign = 1;
        let mut bits = *face;
        while bits != 0 {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            if let Some(r) = index.get(&(face & !(1 << v))) {
                m[*r][c] = sign;
            }
            sign = -sign;
        }
    }
    m
}

/// Resolution of `S/(I, f)` for a non-zero divisor `f` of degree `d`:
/// `G_{i,j} = F_{i,j} + F_{i-1,j-d}`.
///
/// The ambient variable count is raised to `p + 1` when necessary so that the
/// result is again a valid table.
pub fn mapping_cone_adjoin(table: &GradedBettiTable, d: u32) -> Result<GradedBettiTable> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    let mut entries: BTreeMap<(usize, u32), u64> = BTreeMap::new();
    for (i, j, v) in table.entries() {
        *entries.entry((i, j)).or_default() += v;
        *entries.entry((i + 1, j + d)).or_default() += v;
    }
    let n = table.n().max(table.projdim() + 1);
    GradedBettiTable::from_map(n, entries)
}

/// True iff every nonzero `β_{i,j}` with `i ≥ 1` has `j = i + k - 1`, i.e.
/// the ideal has a `k`-linear resolution.
pub fn has_linear_resolution(table: &GradedBettiTable, k: u32) -> bool {
    table
        .entries()
        .filter(|(i, _, _)| *i >= 1)
        .all(|(i, j, _)| j as i64 == i as i64 + k as i64 - 1)
}

/// Betti table by Eliahou-Kervaire when the ideal is strongly stable and by
/// simplicial homology otherwise.
pub fn betti_auto(ideal: &MonomialIdeal, cap: usize) -> Result<GradedBettiTable> {
    if ideal.is_strongly_stable() {
        ek_betti(ideal)
    } else {
        homology_betti_with_cap(ideal, cap)
    }
}

/// `I_<k>` has a `k`-linear resolution for every `k`.
///
/// Degrees below the smallest generator degree give the zero ideal, and for
/// `k` at or above the largest generator degree `I_<k+1> = m I_<k>` inherits
/// linearity, so only the generator degree range is checked.
pub fn is_componentwise_linear(ideal: &MonomialIdeal, cap: usize) -> Result<bool> {
    let (Some(lo), Some(hi)) = (ideal.min_degree(), ideal.max_degree()) else {
        return Ok(true);
    };
    for k in lo..=hi {
        let component = ideal.component_ideal(k);
        if component.is_zero() {
            continue;
        }
        if !has_linear_resolution(&betti_auto(&component, cap)?, k) {
            return Ok(false);
        }
    }
    Ok(true)
}

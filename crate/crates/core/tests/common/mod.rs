#![allow(dead_code)]

use bettibound::{Monomial, MonomialIdeal};
use proptest::prelude::*;

/// Borel closure of up to three random monomials, kept when it has at most
/// `max_gens` generators.
pub fn borel_ideal(
    max_n: usize,
    max_deg: u32,
    max_gens: usize,
) -> impl Strategy<Value = MonomialIdeal> {
    (1..=max_n)
        .prop_flat_map(move |n| {
            let mono = proptest::collection::vec(0..=max_deg, n).prop_filter(
                "nonconstant, bounded degree",
                move |e| {
                    let d: u32 = e.iter().sum();
                    d >= 1 && d <= max_deg
                },
            );
            (Just(n), proptest::collection::vec(mono, 1..=3))
        })
        .prop_filter_map("too many generators", move |(n, seeds)| {
            let ideal =
                MonomialIdeal::borel_closure(seeds.into_iter().map(Monomial::new), n).ok()?;
            (ideal.generators().len() <= max_gens).then_some(ideal)
        })
}

/// Monomials with pairwise disjoint supports in `n` variables.
pub fn regular_sequence() -> impl Strategy<Value = MonomialIdeal> {
    (1usize..=6)
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec(0..n, n),
                proptest::collection::vec(0u32..=2, n),
            )
        })
        .prop_filter_map("empty", |(n, group, extra)| {
            let mut gens: Vec<Vec<u32>> = vec![vec![0; n]; n];
            for v in 0..n {
                gens[group[v]][v] = 1 + extra[v];
            }
            let gens: Vec<Monomial> = gens
                .into_iter()
                .filter(|e| e.iter().any(|x| *x > 0))
                .map(Monomial::new)
                .collect();
            MonomialIdeal::minimalize(gens, n).ok()
        })
}

/// Strictly increasing sequences of length `1..=max_len` with entries in `1..=top`.
pub fn increasing(max_len: usize, top: u32) -> impl Strategy<Value = Vec<u32>> {
    proptest::sample::subsequence((1..=top).collect::<Vec<_>>(), 1..=max_len)
}

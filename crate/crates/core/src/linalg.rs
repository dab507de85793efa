//! Exact rank of integer matrices by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Rank over the rationals of a dense integer matrix given by rows.
///
/// Every intermediate entry is a minor of the input, so each division by the
/// previous pivot is exact and no fractions are formed.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|x| BigInt::from(*x)).collect())
        .collect();
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(pivot) = (r..nrows).find(|&k| !a[k][c].is_zero()) else {
            continue;
        };
        a.swap(r, pivot);
        for k in r + 1..nrows {
            let factor = a[k][c].clone();
            for col in c + 1..ncols {
                let v = (&a[r][c] * &a[k][col] - &factor * &a[r][col]) / &prev;
                a[k][col] = v;
            }
            a[k][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

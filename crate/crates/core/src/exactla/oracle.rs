//! Naive dense elimination, used only as a test oracle.

use super::Rational;

/// Rank by textbook Gauss-Jordan elimination on a dense array.
pub(crate) fn dense_rank(rows: usize, cols: usize, entries: &[(usize, usize, Rational)]) -> usize {
    let mut a = vec![vec![Rational::ZERO; cols]; rows];
    for (r, c, v) in entries {
        a[*r][*c] = v.clone();
    }
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] / &a[rank][c];
                for k in 0..cols {
                    let t = &a[r][k] - &(&f * &a[rank][k]);
                    a[r][k] = t;
                }
            }
        }
        rank += 1;
    }
    rank
}

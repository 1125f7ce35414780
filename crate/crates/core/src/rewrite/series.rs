//! Power-series arithmetic for Hilbert series.

use crate::error::{Error, Result};
use crate::exactla::Rational;

/// First `n + 1` coefficients of `1 / p(-t)`. Requires `p_0 = 1`.
pub fn series_inverse(p: &[Rational], n: usize) -> Result<Vec<Rational>> {
    if p.first() != Some(&Rational::ONE) {
        return Err(Error::NotApplicable("series inversion needs constant term 1".into()));
    }
    // q = p(-t); c = 1/q, c_m = -Σ_{j≥1} q_j c_{m-j}
    let q: Vec<Rational> =
        p.iter().enumerate().map(|(j, x)| if j % 2 == 1 { -x } else { x.clone() }).collect();
    let mut c: Vec<Rational> = Vec::with_capacity(n + 1);
    c.push(Rational::ONE);
    for m in 1..=n {
        let mut acc = Rational::ZERO;
        for j in 1..=m.min(q.len() - 1) {
            acc = acc.sub_mul(&q[j], &c[m - j]);
        }
        c.push(acc);
    }
    Ok(c)
}

/// Integer convenience wrapper for [`series_inverse`].
pub fn series_inverse_int(p: &[i128], n: usize) -> Result<Vec<Rational>> {
    let p: Vec<Rational> = p.iter().map(|x| Rational::from_int128(*x)).collect();
    series_inverse(&p, n)
}

/// `Σ (-1)^j p_j c_{m-j} = [m = 0]` for all `m < c.len()`.
pub fn check_inverse(p: &[Rational], c: &[Rational]) -> bool {
    (0..c.len()).all(|m| {
        let mut acc = Rational::ZERO;
        for j in 0..=m.min(p.len().saturating_sub(1)) {
            let t = &p[j] * &c[m - j];
            acc = if j % 2 == 1 { &acc - &t } else { &acc + &t };
        }
        acc == if m == 0 { Rational::ONE } else { Rational::ZERO }
    })
}

/// Product of two polynomials.
pub fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// `p(-t)`.
pub fn alternate(p: &[Rational]) -> Vec<Rational> {
    p.iter().enumerate().map(|(j, x)| if j % 2 == 1 { -x } else { x.clone() }).collect()
}

/// Coefficients of `P(t)·P^!(-t)` in degrees `0..=maxdeg`.
pub fn koszul_product(p: &[Rational], p_dual: &[Rational], maxdeg: usize) -> Vec<Rational> {
    let mut prod = poly_mul(p, &alternate(p_dual));
    prod.resize(maxdeg + 1, Rational::ZERO);
    prod
}

//! Closed-form divisor-count combinatorics: the extremal monomial m(n,d,k),
//! the divisor count C(n,d,k), the threshold N(n,d,k), optimality witnesses,
//! the N = HF + n identity, and the summary table over (n, 2d) cases.

use crate::ideals::{hf_monomial, MonomialIdeal};
use crate::monomial::{enumerate_monomials, Monomial, MonomialOrder};
use crate::{binom, dim_forms, Error, Result};

/// All derived quantities for one parameter triple (n, d, k).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundData {
    pub n: usize,
    pub d: usize,
    pub k: usize,
    /// quotient and remainder of k by d-1
    pub q: usize,
    pub r: usize,
    /// the degree-k monomial with the fewest degree-d divisors among those
    /// not divisible by any x_i^d
    pub extremal: Monomial,
    /// number of degree-d divisors of the extremal monomial
    pub c: usize,
    /// minimal generator count forcing HF_k = 0
    pub n_threshold: usize,
}

fn check_params(n: usize, d: usize, k: usize) -> Result<()> {
    if n < 1 {
        return Err(Error::Domain("need n >= 1".into()));
    }
    if d < 2 {
        // d = 1 makes C and N undefined; the ideal then contains all the
        // variables and every claim is trivial
        return Err(Error::Domain("need d >= 2 (d = 1 is rejected as trivial)".into()));
    }
    if k < d || k > n * (d - 1) {
        return Err(Error::Domain(format!(
            "k = {} outside the range d <= k <= n(d-1) = {}",
            k,
            n * (d - 1)
        )));
    }
    Ok(())
}

/// Compute (q, r, m(n,d,k), C(n,d,k), N(n,d,k)).
pub fn bound_data(n: usize, d: usize, k: usize) -> Result<BoundData> {
    check_params(n, d, k)?;
    let q = k / (d - 1);
    let r = k % (d - 1);
    // x_1^{d-1} ... x_q^{d-1} x_{q+1}^r; at k = n(d-1) we get q = n and
    // r = 0, so the last factor is dropped
    let mut exps = vec![0u32; n];
    for e in exps.iter_mut().take(q) {
        *e = (d - 1) as u32;
    }
    if r > 0 {
        exps[q] = r as u32;
    }
    let extremal = Monomial::new(exps);
    let c = binom(q + d, d) - binom(q + d - r - 1, q) - q;
    let n_threshold = dim_forms(n, d) - c + 1;
    Ok(BoundData {
        n,
        d,
        k,
        q,
        r,
        extremal,
        c,
        n_threshold,
    })
}

/// Exhaustive count of degree-d monomial divisors; the independent check of
/// the closed formula for C.
pub fn divisor_count_oracle(m: &Monomial, d: usize) -> usize {
    assert!(d <= m.degree());
    enumerate_monomials(m.nvars(), d, MonomialOrder::Lex)
        .iter()
        .filter(|c| c.divides(m).unwrap())
        .count()
}

/// The ideal generated by the N-1 degree-d monomials not dividing the
/// extremal monomial; it contains every x_i^d and leaves HF_k >= 1.
pub fn witness_ideal(n: usize, d: usize, k: usize) -> Result<MonomialIdeal> {
    let bd = bound_data(n, d, k)?;
    let gens: Vec<Monomial> = enumerate_monomials(n, d, MonomialOrder::Lex)
        .into_iter()
        .filter(|m| !m.divides(&bd.extremal).unwrap())
        .collect();
    debug_assert_eq!(gens.len(), bd.n_threshold - 1);
    MonomialIdeal::new(n, gens)
}

/// Verify N(n,d,k) = HF_k(<x_1^d..x_n^d>) + n on the valid range
/// max{n(d-1)-d, d} < k <= n(d-1).
pub fn hf_identity_check(n: usize, d: usize, k: usize) -> Result<bool> {
    check_params(n, d, k)?;
    let lo = std::cmp::max(n * (d - 1) - d.min(n * (d - 1)), d);
    if k <= lo {
        return Err(Error::Domain(format!(
            "k = {} outside the identity's range ({}, {}]",
            k,
            lo,
            n * (d - 1)
        )));
    }
    let powers = MonomialIdeal::new(n, (0..n).map(|i| Monomial::var_pow(n, i, d as u32)).collect())?;
    let hf = hf_monomial(&powers, k);
    Ok(bound_data(n, d, k)?.n_threshold == hf + n)
}

/// Static Pythagoras-number bounds keyed by (n, 2d), as published.
pub fn pythagoras_bounds(n: usize, two_d: usize) -> Option<(usize, usize)> {
    match (n, two_d) {
        (3, 6) => Some((4, 4)),
        (4, 4) => Some((5, 5)),
        (4, 6) => Some((8, 11)),
        (5, 4) => Some((7, 11)),
        (6, 4) => Some((11, 15)),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct BoundTableRow {
    pub n: usize,
    pub two_d: usize,
    /// N(n, d, 2d) - 1: rank bound over the Gram spectrahedron
    pub n_minus_one: usize,
    /// dim H_{n,d}
    pub dim: usize,
    pub pythagoras_lower: Option<usize>,
    pub pythagoras_upper: Option<usize>,
}

/// The (n, 2d) summary rows; Pythagoras columns are data, not computation.
pub fn table_n(cases: &[(usize, usize)]) -> Result<Vec<BoundTableRow>> {
    cases
        .iter()
        .map(|&(n, two_d)| {
            if two_d % 2 != 0 {
                return Err(Error::Domain(format!("degree {} is odd", two_d)));
            }
            let d = two_d / 2;
            let bd = bound_data(n, d, two_d)?;
            let py = pythagoras_bounds(n, two_d);
            Ok(BoundTableRow {
                n,
                two_d,
                n_minus_one: bd.n_threshold - 1,
                dim: dim_forms(n, d),
                pythagoras_lower: py.map(|p| p.0),
                pythagoras_upper: py.map(|p| p.1),
            })
        })
        .collect()
}

pub const TABLE_CASES: [(usize, usize); 5] = [(3, 6), (4, 4), (4, 6), (5, 4), (6, 4)];

pub fn table_n_text(rows: &[BoundTableRow]) -> String {
    let mut s = String::from("  n   2d   N(n,d,2d)-1   dim H_{n,d}   p(n,2d) >=   p(n,2d) <=\n");
    for r in rows {
        let fmt = |o: Option<usize>| o.map(|v| v.to_string()).unwrap_or_default();
        s.push_str(&format!(
            "{:>3} {:>4} {:>13} {:>13} {:>12} {:>12}\n",
            r.n,
            r.two_d,
            r.n_minus_one,
            r.dim,
            fmt(r.pythagoras_lower),
            fmt(r.pythagoras_upper)
        ));
    }
    s
}

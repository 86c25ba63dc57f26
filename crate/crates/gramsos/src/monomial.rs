//! Monomials as fixed-length exponent vectors and the lex term order.

use crate::{binom, Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A monomial in `n` variables, stored as its exponent vector.
///
/// The natural `Ord` on equal-degree monomials coincides with the
/// lexicographic order with precedence `x1 > x2 > ... > xn`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    exps: Vec<u32>,
}

/// Monomial orders on equal-degree monomials. Only lex is needed anywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    #[default]
    Lex,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    /// x_i^e with zero-based variable index.
    pub fn var_pow(n: usize, i: usize, e: u32) -> Self {
        let mut exps = vec![0; n];
        exps[i] = e;
        Monomial { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    /// Componentwise divisibility: does `self` divide `other`?
    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        if self.nvars() != other.nvars() {
            return Err(Error::Dimension(format!(
                "monomials in {} and {} variables",
                self.nvars(),
                other.nvars()
            )));
        }
        Ok(self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Exact quotient; `None` if `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if self.nvars() != other.nvars() {
            return None;
        }
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial { exps })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

/// All monomials of degree `d` in `n` variables, strictly descending in the
/// given order. Length is binom(n+d-1, d).
pub fn enumerate_monomials(n: usize, d: usize, _order: MonomialOrder) -> Vec<Monomial> {
    assert!(n >= 1);
    let mut out = Vec::with_capacity(binom(n + d - 1, d));
    let mut cur = vec![0u32; n];
    rec(&mut out, &mut cur, 0, d as u32);
    out
}

fn rec(out: &mut Vec<Monomial>, cur: &mut Vec<u32>, idx: usize, rem: u32) {
    if idx == cur.len() - 1 {
        cur[idx] = rem;
        out.push(Monomial::new(cur.clone()));
        cur[idx] = 0;
        return;
    }
    for e in (0..=rem).rev() {
        cur[idx] = e;
        rec(out, cur, idx + 1, rem - e);
        cur[idx] = 0;
    }
}

/// Position of `m` in `enumerate_monomials(m.nvars(), m.degree(), order)`.
pub fn monomial_index(m: &Monomial, order: MonomialOrder) -> usize {
    // small dimensions everywhere; a linear scan through the enumeration
    // would also do, but this is used in inner loops
    let _ = order;
    let n = m.nvars();
    let mut idx = 0usize;
    let mut rem = m.degree();
    for i in 0..n - 1 {
        let e = m.exp(i) as usize;
        // monomials with larger exponent at position i come first
        for bigger in (e + 1)..=rem {
            idx += binom((n - 1 - i) + (rem - bigger) - 1, rem - bigger);
        }
        rem -= e;
    }
    idx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerate_tiny_lex() {
        let ms = enumerate_monomials(2, 3, MonomialOrder::Lex);
        let strs: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
        assert_eq!(strs, vec!["x1^3", "x1^2*x2", "x1*x2^2", "x2^3"]);
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(enumerate_monomials(4, 3, MonomialOrder::Lex).len(), 20);
        assert_eq!(enumerate_monomials(5, 2, MonomialOrder::Lex).len(), 15);
        for n in 1..=6 {
            for d in 0..=6 {
                assert_eq!(
                    enumerate_monomials(n, d, MonomialOrder::Lex).len(),
                    binom(n + d - 1, d)
                );
            }
        }
    }

    #[test]
    fn enumerate_strictly_descending() {
        for (n, d) in [(3, 4), (4, 3), (5, 2)] {
            let ms = enumerate_monomials(n, d, MonomialOrder::Lex);
            for w in ms.windows(2) {
                assert!(w[0] > w[1]);
            }
        }
    }

    #[test]
    fn degree_zero_is_the_constant() {
        let ms = enumerate_monomials(3, 0, MonomialOrder::Lex);
        assert_eq!(ms, vec![Monomial::one(3)]);
    }

    #[test]
    fn divides_examples() {
        let a = Monomial::new(vec![2, 0, 0]);
        let b = Monomial::new(vec![2, 2, 2]);
        assert!(a.divides(&b).unwrap());
        let c = Monomial::new(vec![3, 0, 0]);
        assert!(!c.divides(&b).unwrap());
        let bad = Monomial::new(vec![1, 1]);
        assert!(bad.divides(&b).is_err());
    }

    #[test]
    fn degree3_divisors_of_x2y2z2_in_4_vars() {
        // divisor count behind C(4,3,6) = 7
        let m = Monomial::new(vec![2, 2, 2, 0]);
        let count = enumerate_monomials(4, 3, MonomialOrder::Lex)
            .iter()
            .filter(|c| c.divides(&m).unwrap())
            .count();
        assert_eq!(count, 7);
    }

    #[test]
    fn monomial_index_agrees_with_enumeration() {
        for (n, d) in [(2, 3), (3, 3), (4, 2), (5, 2)] {
            let ms = enumerate_monomials(n, d, MonomialOrder::Lex);
            for (i, m) in ms.iter().enumerate() {
                assert_eq!(monomial_index(m, MonomialOrder::Lex), i);
            }
        }
    }
}

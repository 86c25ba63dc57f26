//! Sparse homogeneous multivariate polynomials with exact rational
//! coefficients, plus the text grammar used by the CLI and the registry.
//!
//! Grammar (whitespace insignificant):
//! term list joined by `+`/`-`; term = [coefficient][`*`]monomial;
//! coefficient = integer or `p/q`; monomial = product of `xi` or `xi^e`
//! factors joined by optional `*`. For n <= 4 the aliases `x,y,z,w` map
//! positionally to `x1..x4`.

use crate::monomial::Monomial;
use crate::{Error, Rat, Result};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A homogeneous polynomial of fixed degree. The zero polynomial carries an
/// explicit degree so arithmetic stays well-typed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    n: usize,
    degree: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    pub fn zero(n: usize, degree: usize) -> Self {
        Polynomial {
            n,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(m: Monomial, c: Rat) -> Self {
        let mut p = Polynomial::zero(m.nvars(), m.degree());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Build from (monomial, coefficient) pairs; all must share degree and n.
    pub fn from_terms(n: usize, degree: usize, it: impl IntoIterator<Item = (Monomial, Rat)>) -> Result<Self> {
        let mut p = Polynomial::zero(n, degree);
        for (m, c) in it {
            if m.nvars() != n {
                return Err(Error::Dimension(format!("monomial in {} vars, expected {}", m.nvars(), n)));
            }
            if m.degree() != degree {
                return Err(Error::NonHomogeneous(degree, m.degree()));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Terms in strictly descending lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter().rev()
    }

    /// Leading (lex-largest) monomial, if nonzero.
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compat(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compat(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    fn check_compat(&self, other: &Polynomial) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Dimension(format!("{} vs {} variables", self.n, other.n)));
        }
        if self.degree != other.degree {
            return Err(Error::Degree {
                expected: self.degree,
                got: other.degree,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.n != other.n {
            return Err(Error::Dimension(format!("{} vs {} variables", self.n, other.n)));
        }
        let mut out = Polynomial::zero(self.n, self.degree + other.degree);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        let mut out = Polynomial::zero(self.n, self.degree + m.degree());
        for (m1, c1) in &self.terms {
            out.terms.insert(m1.mul(m), c1.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n, self.degree);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-Rat::one())
    }

    pub fn square(&self) -> Polynomial {
        self.mul(self).expect("same polynomial")
    }

    /// Evaluate at a floating point; exactness is not needed here.
    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.n);
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = rat_to_f64(c);
            for (i, &e) in m.exps().iter().enumerate() {
                t *= x[i].powi(e as i32);
            }
            acc += t;
        }
        acc
    }

    /// Gradient at a floating point.
    pub fn grad_f64(&self, x: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; self.n];
        for (m, c) in &self.terms {
            let cf = rat_to_f64(c);
            for (j, &ej) in m.exps().iter().enumerate() {
                if ej == 0 {
                    continue;
                }
                let mut t = cf * ej as f64;
                for (i, &e) in m.exps().iter().enumerate() {
                    let p = if i == j { e - 1 } else { e };
                    t *= x[i].powi(p as i32);
                }
                g[j] += t;
            }
        }
        g
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    let num = r.numer();
    let den = r.denom();
    // exact for everything in range; falls back to string conversion on
    // magnitudes beyond i128
    match (i128::try_from(num.clone()), i128::try_from(den.clone())) {
        (Ok(a), Ok(b)) => a as f64 / b as f64,
        _ => {
            let a: f64 = num.to_string().parse().unwrap_or(f64::NAN);
            let b: f64 = den.to_string().parse().unwrap_or(f64::NAN);
            a / b
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = abs.is_one();
            let constant = m.degree() == 0;
            if !unit_coeff || constant {
                write!(f, "{}", abs)?;
                if !constant {
                    write!(f, "*")?;
                }
            }
            if !constant {
                write!(f, "{}", m)?;
            }
        }
        Ok(())
    }
}

/// Render in the exact grammar accepted by [`parse_poly`].
pub fn format_poly(p: &Polynomial) -> String {
    p.to_string()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn integer(&mut self) -> Result<crate::Int> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    /// One term: optional coefficient, optional monomial factors.
    fn term(&mut self) -> Result<(Monomial, Rat)> {
        let mut coeff = Rat::one();
        let mut saw_coeff = false;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let num = self.integer()?;
            let mut r = Rat::from_integer(num);
            if self.peek() == Some(b'/') {
                self.bump();
                let den = self.integer()?;
                if den.is_zero() {
                    return self.err("zero denominator");
                }
                r /= Rat::from_integer(den);
            }
            coeff = r;
            saw_coeff = true;
            if self.peek() == Some(b'*') {
                self.bump();
            }
        }
        let mut exps = vec![0u32; self.n];
        let mut saw_var = false;
        loop {
            match self.peek() {
                Some(c @ (b'x' | b'y' | b'z' | b'w')) => {
                    self.bump();
                    let idx = if c == b'x' {
                        // `x` followed by digits is an indexed variable;
                        // a bare `x` is the alias for x1 (n <= 4 only)
                        if matches!(self.src.get(self.pos), Some(d) if d.is_ascii_digit()) {
                            let i = self.integer()?;
                            let i: usize = i.to_string().parse().map_err(|_| Error::Parse {
                                pos: self.pos,
                                msg: "variable index too large".into(),
                            })?;
                            if i == 0 || i > self.n {
                                return self.err(format!("variable x{} out of range 1..={}", i, self.n));
                            }
                            i - 1
                        } else {
                            self.alias_index(0)?
                        }
                    } else {
                        let k = match c {
                            b'y' => 1,
                            b'z' => 2,
                            _ => 3,
                        };
                        self.alias_index(k)?
                    };
                    let e = if self.peek() == Some(b'^') {
                        self.bump();
                        let e = self.integer()?;
                        e.to_string().parse().map_err(|_| Error::Parse {
                            pos: self.pos,
                            msg: "exponent too large".into(),
                        })?
                    } else {
                        1u32
                    };
                    exps[idx] += e;
                    saw_var = true;
                    if self.peek() == Some(b'*') {
                        self.bump();
                        // a `*` must be followed by another factor
                        match self.peek() {
                            Some(b'x' | b'y' | b'z' | b'w') => continue,
                            _ => return self.err("expected variable after `*`"),
                        }
                    }
                }
                _ => break,
            }
        }
        if !saw_coeff && !saw_var {
            return self.err("expected term");
        }
        Ok((Monomial::new(exps), coeff))
    }

    fn alias_index(&self, k: usize) -> Result<usize> {
        if self.n > 4 {
            return Err(Error::Parse {
                pos: self.pos,
                msg: "aliases x,y,z,w are only accepted for n <= 4".into(),
            });
        }
        if k >= self.n {
            return Err(Error::Parse {
                pos: self.pos,
                msg: format!("alias refers to variable {} but n = {}", k + 1, self.n),
            });
        }
        Ok(k)
    }
}

/// Parse the grammar; rejects non-homogeneous input.
pub fn parse_poly(text: &str, n: usize) -> Result<Polynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        n,
    };
    let mut sign = Rat::one();
    if p.peek() == Some(b'-') {
        p.bump();
        sign = -sign;
    } else if p.peek() == Some(b'+') {
        p.bump();
    }
    let mut terms: Vec<(Monomial, Rat)> = Vec::new();
    loop {
        let (m, c) = p.term()?;
        terms.push((m, c * &sign));
        match p.peek() {
            None => break,
            Some(b'+') => {
                p.bump();
                sign = Rat::one();
            }
            Some(b'-') => {
                p.bump();
                sign = -Rat::one();
            }
            Some(c) => {
                return p.err(format!("unexpected character `{}`", c as char));
            }
        }
    }
    let degree = terms[0].0.degree();
    for (m, _) in &terms {
        if m.degree() != degree {
            return Err(Error::NonHomogeneous(degree, m.degree()));
        }
    }
    Polynomial::from_terms(n, degree, terms)
}

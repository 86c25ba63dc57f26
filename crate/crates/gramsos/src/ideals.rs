//! Hilbert functions of graded ideals, lex-plus-powers constructions,
//! leading-term extraction in the generating degree, parameter-sequence
//! tests and colon-ideal graded components.
//!
//! Polynomial ideals are handled degree by degree: the degree-k component
//! of an ideal generated in degree d is spanned by monomial multiples of
//! the generators, and its dimension is an exact rank computation. No
//! Groebner machinery is needed for any result used here.

use crate::matrix::RatMatrix;
use crate::monomial::{enumerate_monomials, monomial_index, Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::{dim_forms, Error, Rat, Result};
use num_traits::Zero;

/// A monomial ideal given by generators of arbitrary degrees. Generators are
/// minimalized on construction (pairwise non-dividing).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(n: usize, generators: Vec<Monomial>) -> Result<Self> {
        for g in &generators {
            if g.nvars() != n {
                return Err(Error::Dimension(format!(
                    "generator in {} variables, expected {}",
                    g.nvars(),
                    n
                )));
            }
            if g.degree() == 0 {
                return Err(Error::Domain("degree-0 generator in an ideal".into()));
            }
        }
        let mut minimal: Vec<Monomial> = Vec::new();
        let mut sorted = generators;
        sorted.sort_by_key(|m| m.degree());
        for g in sorted {
            if !minimal.iter().any(|m| m.divides(&g).unwrap()) {
                minimal.push(g);
            }
        }
        Ok(MonomialIdeal {
            n,
            generators: minimal,
        })
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m).unwrap())
    }
}

/// Generators of a polynomial ideal, all homogeneous of one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealGens {
    n: usize,
    d: usize,
    generators: Vec<Polynomial>,
}

impl IdealGens {
    pub fn new(n: usize, d: usize, generators: Vec<Polynomial>) -> Result<Self> {
        if d == 0 {
            return Err(Error::Domain("degree-0 generators are rejected".into()));
        }
        for g in &generators {
            if g.nvars() != n {
                return Err(Error::Dimension(format!(
                    "generator in {} variables, expected {}",
                    g.nvars(),
                    n
                )));
            }
            if g.degree() != d {
                return Err(Error::Degree {
                    expected: d,
                    got: g.degree(),
                });
            }
            if g.is_zero() {
                return Err(Error::Domain("zero generator in an ideal".into()));
            }
        }
        Ok(IdealGens { n, d, generators })
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Re-encode a monomial ideal whose generators share one degree.
    pub fn from_monomial(m: &MonomialIdeal) -> Result<Self> {
        let d = m
            .generators()
            .first()
            .map(|g| g.degree())
            .ok_or_else(|| Error::Domain("empty monomial ideal".into()))?;
        if m.generators().iter().any(|g| g.degree() != d) {
            return Err(Error::Degree {
                expected: d,
                got: m
                    .generators()
                    .iter()
                    .find(|g| g.degree() != d)
                    .unwrap()
                    .degree(),
            });
        }
        let gens = m
            .generators()
            .iter()
            .map(|g| Polynomial::monomial(g.clone(), crate::rat_int(1)))
            .collect();
        IdealGens::new(m.nvars(), d, gens)
    }

    /// Coordinate vector of `p` in the descending-lex monomial basis of its
    /// degree.
    pub fn coeff_vector(p: &Polynomial) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); dim_forms(p.nvars(), p.degree())];
        for (m, c) in p.terms() {
            v[monomial_index(m, MonomialOrder::Lex)] = c.clone();
        }
        v
    }

    /// Coefficient matrix of the generators (rows) in the degree-d basis.
    pub fn coeff_matrix(&self) -> RatMatrix {
        RatMatrix::from_rows(self.generators.iter().map(Self::coeff_vector).collect())
    }
}

/// Exact basis of the degree-k graded component I_k in rref, with its pivot
/// (lex-leading) monomials.
#[derive(Debug, Clone)]
pub struct GradedBasis {
    pub k: usize,
    pub basis: RatMatrix,
    pub pivots: Vec<usize>,
    pub leading: Vec<Monomial>,
}

impl GradedBasis {
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// Residual of a degree-k coordinate vector modulo the row span.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut v = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            if v[pc].is_zero() {
                continue;
            }
            let f = v[pc].clone();
            for j in 0..v.len() {
                let t = &self.basis[(i, j)] * &f;
                v[j] -= t;
            }
        }
        v
    }

    pub fn contains_vector(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }
}

/// HF_k of a monomial ideal: count of degree-k monomials outside the ideal.
pub fn hf_monomial(ideal: &MonomialIdeal, k: usize) -> usize {
    enumerate_monomials(ideal.nvars(), k, MonomialOrder::Lex)
        .iter()
        .filter(|m| !ideal.contains(m))
        .count()
}

/// The lex-plus-powers ideal generated by the pure powers x_i^d plus the
/// minimal number of lex-first degree-s monomials (outside the powers ideal)
/// so that HF_s equals `target_hf`.
pub fn lpp_ideal(n: usize, d: usize, s: usize, target_hf: usize) -> Result<MonomialIdeal> {
    if n < 1 || d < 2 || s < d {
        return Err(Error::Domain(format!(
            "lpp_ideal requires n >= 1, d >= 2, s >= d; got ({}, {}, {})",
            n, d, s
        )));
    }
    let mut gens: Vec<Monomial> = (0..n).map(|i| Monomial::var_pow(n, i, d as u32)).collect();
    let powers = MonomialIdeal::new(n, gens.clone())?;
    let hf_powers = hf_monomial(&powers, s);
    if target_hf > hf_powers {
        return Err(Error::Domain(format!(
            "target HF_{} = {} exceeds HF of the powers ideal ({})",
            s, target_hf, hf_powers
        )));
    }
    // each added degree-s monomial outside the ideal lowers HF_s by one
    let mut need = hf_powers - target_hf;
    for m in enumerate_monomials(n, s, MonomialOrder::Lex) {
        if need == 0 {
            break;
        }
        if !powers.contains(&m) {
            gens.push(m);
            need -= 1;
        }
    }
    if need > 0 {
        return Err(Error::Domain(format!("unreachable target HF_s = {}", target_hf)));
    }
    MonomialIdeal::new(n, gens)
}

/// Multiply every generator by the monomials of degree k-d, stack the
/// coefficient rows and reduce exactly.
pub fn graded_basis(ideal: &IdealGens, k: usize) -> GradedBasis {
    assert!(k >= ideal.degree(), "graded_basis needs k >= d");
    let n = ideal.nvars();
    let shift = k - ideal.degree();
    let mut rows = Vec::new();
    for g in ideal.generators() {
        for m in enumerate_monomials(n, shift, MonomialOrder::Lex) {
            rows.push(IdealGens::coeff_vector(&g.mul_monomial(&m)));
        }
    }
    let stacked = RatMatrix::from_rows(rows);
    let (basis, pivots, _) = stacked.rref();
    let monoms = enumerate_monomials(n, k, MonomialOrder::Lex);
    let leading = pivots.iter().map(|&c| monoms[c].clone()).collect();
    GradedBasis {
        k,
        basis,
        pivots,
        leading,
    }
}

/// HF_k of a polynomial ideal generated in degree d.
pub fn hf_poly(ideal: &IdealGens, k: usize) -> usize {
    if k < ideal.degree() {
        return dim_forms(ideal.nvars(), k);
    }
    dim_forms(ideal.nvars(), k) - graded_basis(ideal, k).dim()
}

/// Pivot monomials of the degree-d component.
pub fn leading_monomials_d(ideal: &IdealGens) -> Vec<Monomial> {
    graded_basis(ideal, ideal.degree()).leading
}

/// Does Lt(I)_d contain all pure powers x_i^d? Exact for ideals generated in
/// degree d, where Lt(I)_d is precisely the pivot set of I_d.
pub fn is_leading_powers(ideal: &IdealGens) -> bool {
    let leading = leading_monomials_d(ideal);
    let n = ideal.nvars();
    let d = ideal.degree() as u32;
    (0..n).all(|i| leading.contains(&Monomial::var_pow(n, i, d)))
}

/// Does the ideal contain a sequence of parameters of degree d?
///
/// Tested as HF_{n(d-1)+1}(I) = 0: the Hilbert function of any ideal
/// containing a parameter sequence is dominated by the complete
/// intersection's, which vanishes beyond the socle degree n(d-1), and
/// conversely vanishing there forces the radical to be the irrelevant ideal.
pub fn contains_sop(ideal: &IdealGens) -> bool {
    let n = ideal.nvars();
    let d = ideal.degree();
    hf_poly(ideal, n * (d - 1) + 1) == 0
}

/// Degree-t component of the colon ideal (J : I) for J contained in I, both
/// generated in degree d. Returns `(dim (J:I)_t, HF_t(J:I))`.
pub fn colon_component(colon_by: &IdealGens, inside: &IdealGens, t: usize) -> Result<(usize, usize)> {
    let j = colon_by;
    let i = inside;
    if j.nvars() != i.nvars() || j.degree() != i.degree() {
        return Err(Error::Dimension("colon_component needs matching (n, d)".into()));
    }
    let n = j.nvars();
    let d = j.degree();
    // containment J subset I, checked in the generating degree
    let i_d = graded_basis(i, d);
    for g in j.generators() {
        if !i_d.contains_vector(&IdealGens::coeff_vector(g)) {
            return Err(Error::Containment(format!(
                "generator {} of J does not lie in I",
                g
            )));
        }
    }
    let dim_t = dim_forms(n, t);
    if t == 0 {
        // constants: 1 in (J:I) iff every generator of I lies in J
        let j_d = graded_basis(j, d);
        let all_in = i
            .generators()
            .iter()
            .all(|g| j_d.contains_vector(&IdealGens::coeff_vector(g)));
        let dim = if all_in { 1 } else { 0 };
        return Ok((dim, dim_t - dim));
    }
    let j_td = graded_basis(j, t + d);
    let basis_t = enumerate_monomials(n, t, MonomialOrder::Lex);
    // rows: residual coordinates of g_i * x^alpha modulo J_{t+d}, one block
    // per generator of I; kernel = (J:I)_t
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let resid_len = dim_forms(n, t + d);
    for g in i.generators() {
        let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(dim_t);
        for alpha in &basis_t {
            let prod = g.mul_monomial(alpha);
            cols.push(j_td.reduce(&IdealGens::coeff_vector(&prod)));
        }
        for r in 0..resid_len {
            if cols.iter().all(|c| c[r].is_zero()) {
                continue;
            }
            rows.push(cols.iter().map(|c| c[r].clone()).collect());
        }
    }
    let dim = if rows.is_empty() {
        dim_t
    } else {
        dim_t - RatMatrix::from_rows(rows).rank()
    };
    Ok((dim, dim_t - dim))
}

/// A Hilbert-function table for presentation and serialization.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct HilbertTable {
    pub ideal: String,
    pub values: Vec<(usize, usize)>,
}

impl HilbertTable {
    pub fn hf(&self, k: usize) -> Option<usize> {
        self.values.iter().find(|&&(kk, _)| kk == k).map(|&(_, v)| v)
    }

    pub fn row(&self) -> Vec<usize> {
        self.values.iter().map(|&(_, v)| v).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ideal": self.ideal,
            "values": self.values,
        })
    }

    /// Aligned two-row text table.
    pub fn to_text(&self) -> String {
        let widths: Vec<usize> = self
            .values
            .iter()
            .map(|(k, v)| k.to_string().len().max(v.to_string().len()))
            .collect();
        let mut top = String::from("k  |");
        let mut bot = String::from("HF |");
        for ((k, v), w) in self.values.iter().zip(&widths) {
            top.push_str(&format!(" {:>w$}", k, w = w));
            bot.push_str(&format!(" {:>w$}", v, w = w));
        }
        format!("{}\n{}\n", top, bot)
    }
}

/// Table for a monomial ideal.
pub fn hilbert_table_monomial(ideal: &MonomialIdeal, kmax: usize) -> HilbertTable {
    HilbertTable {
        ideal: ideal
            .generators()
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join(", "),
        values: (0..=kmax).map(|k| (k, hf_monomial(ideal, k))).collect(),
    }
}

/// Table for a polynomial ideal.
pub fn hilbert_table_poly(ideal: &IdealGens, kmax: usize) -> HilbertTable {
    HilbertTable {
        ideal: ideal
            .generators()
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(", "),
        values: (0..=kmax).map(|k| (k, hf_poly(ideal, k))).collect(),
    }
}

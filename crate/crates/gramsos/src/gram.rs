//! Gram-spectrahedron parametrization: particular Gram matrices from SOS
//! decompositions, the exact kernel of the quadratic-expansion map, and the
//! conversion of PSD matrices back to decompositions.

use crate::matrix::RatMatrix;
use crate::monomial::{enumerate_monomials, monomial_index, Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::sdp::{eigen_sym, SymMatF};
use crate::{dim_forms, Error, Rat, Result};
use num_traits::{One, Signed, Zero};

/// A weighted sum-of-squares decomposition: f = sum w_i p_i^2 with w_i > 0
/// rational. Plain decompositions have all weights 1; exact congruence
/// diagonalization produces genuinely rational weights, which keeps the
/// round trip exact where square roots would not be rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SosDecomposition {
    pub n: usize,
    pub d: usize,
    pub polys: Vec<Polynomial>,
    pub weights: Vec<Rat>,
}

impl SosDecomposition {
    pub fn new(polys: Vec<Polynomial>) -> Result<Self> {
        let weights = vec![Rat::one(); polys.len()];
        Self::weighted(polys, weights)
    }

    pub fn weighted(polys: Vec<Polynomial>, weights: Vec<Rat>) -> Result<Self> {
        let first = polys
            .first()
            .ok_or_else(|| Error::Domain("empty SOS decomposition".into()))?;
        let (n, d) = (first.nvars(), first.degree());
        for p in &polys {
            if p.nvars() != n || p.degree() != d {
                return Err(Error::Dimension("mixed (n, d) in SOS decomposition".into()));
            }
        }
        if weights.len() != polys.len() || weights.iter().any(|w| !w.is_positive()) {
            return Err(Error::Domain("weights must be positive, one per polynomial".into()));
        }
        Ok(SosDecomposition { n, d, polys, weights })
    }
}

/// The ordered degree-d monomial basis in which all Gram matrices are stated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramFrame {
    pub n: usize,
    pub d: usize,
    pub basis: Vec<Monomial>,
}

impl GramFrame {
    pub fn new(n: usize, d: usize) -> Self {
        GramFrame {
            n,
            d,
            basis: enumerate_monomials(n, d, MonomialOrder::Lex),
        }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// v^T Q v as an exact polynomial of degree 2d.
    pub fn quadratic_form(&self, q: &RatMatrix) -> Polynomial {
        let m = self.len();
        assert_eq!((q.rows(), q.cols()), (m, m));
        let mut terms: Vec<(Monomial, Rat)> = Vec::new();
        for a in 0..m {
            for b in 0..m {
                if !q[(a, b)].is_zero() {
                    terms.push((self.basis[a].mul(&self.basis[b]), q[(a, b)].clone()));
                }
            }
        }
        Polynomial::from_terms(self.n, 2 * self.d, terms).expect("homogeneous by construction")
    }
}

/// An affine parametrization of the Gram spectrahedron of f: a particular
/// symmetric solution Q0 of v^T Q v = f plus a basis of the kernel
/// directions, all exact.
#[derive(Debug, Clone)]
pub struct GramParam {
    pub frame: GramFrame,
    pub f: Polynomial,
    pub q0: RatMatrix,
    pub directions: Vec<RatMatrix>,
}

/// Expand a weighted SOS decomposition exactly.
pub fn expand_sos(s: &SosDecomposition) -> Polynomial {
    let mut acc = Polynomial::zero(s.n, 2 * s.d);
    for (p, w) in s.polys.iter().zip(&s.weights) {
        acc = acc.add(&p.square().scale(w)).expect("degrees agree");
    }
    acc
}

/// Q0 = sum w_i c_i c_i^T over the coefficient vectors of the p_i, plus the
/// exact rank of the decomposition (the number of linearly independent p_i).
pub fn gram_from_sos(s: &SosDecomposition) -> (RatMatrix, usize) {
    let m = dim_forms(s.n, s.d);
    let mut q = RatMatrix::zeros(m, m);
    let mut coeff_rows = Vec::with_capacity(s.polys.len());
    for (p, w) in s.polys.iter().zip(&s.weights) {
        let c = crate::ideals::IdealGens::coeff_vector(p);
        for a in 0..m {
            if c[a].is_zero() {
                continue;
            }
            for b in 0..m {
                if !c[b].is_zero() {
                    q[(a, b)] += &c[a] * &c[b] * w;
                }
            }
        }
        coeff_rows.push(c);
    }
    let rank = RatMatrix::from_rows(coeff_rows).rank();
    (q, rank)
}

fn splits_of(mu: &Monomial, d: usize, frame: &GramFrame) -> Vec<(usize, usize)> {
    // unordered pairs (a <= b of frame indices) with basis[a]*basis[b] = mu
    let mut out = Vec::new();
    for (a, ma) in frame.basis.iter().enumerate() {
        if let Some(rest) = mu.div(ma) {
            if rest.degree() == d {
                let b = monomial_index(&rest, MonomialOrder::Lex);
                if b >= a {
                    out.push((a, b));
                }
            }
        }
    }
    out
}

/// Exact canonical basis of {B symmetric : v^T B v = 0}. Its size is
/// m(m+1)/2 - dim H_{n,2d}; the expansion map is onto because every
/// degree-2d monomial splits as a product of two degree-d monomials.
pub fn kernel_directions(frame: &GramFrame) -> Vec<RatMatrix> {
    let m = frame.len();
    let d = frame.d;
    let mut vecs: Vec<Vec<Rat>> = Vec::new();
    let tri = m * (m + 1) / 2;
    let tri_index = |a: usize, b: usize| -> usize {
        // a <= b, row-major upper triangle
        a * m - a * (a + 1) / 2 + b
    };
    for mu in enumerate_monomials(frame.n, 2 * d, MonomialOrder::Lex) {
        let splits = splits_of(&mu, d, frame);
        if splits.len() < 2 {
            continue;
        }
        // contribution of split (a,b) to the coefficient of mu is 2 for
        // off-diagonal placements and 1 on the diagonal
        let weight = |(a, b): (usize, usize)| if a == b { Rat::one() } else { crate::rat(1, 2) };
        let (a0, b0) = splits[0];
        for &(a, b) in &splits[1..] {
            let mut v = vec![Rat::zero(); tri];
            v[tri_index(a, b)] = weight((a, b));
            v[tri_index(a0, b0)] = -weight((a0, b0));
            vecs.push(v);
        }
    }
    if vecs.is_empty() {
        return Vec::new();
    }
    // canonical form: rref over the upper-triangle coordinates
    let (r, _, rank) = RatMatrix::from_rows(vecs).rref();
    let mut out = Vec::with_capacity(rank);
    for i in 0..rank {
        let mut b = RatMatrix::zeros(m, m);
        for a in 0..m {
            for c in a..m {
                let v = r[(i, tri_index(a, c))].clone();
                if !v.is_zero() {
                    b[(a, c)] = v.clone();
                    b[(c, a)] = v;
                }
            }
        }
        out.push(b);
    }
    out
}

/// Build a GramParam from a decomposition.
pub fn spectrahedron_from_sos(s: &SosDecomposition) -> GramParam {
    let frame = GramFrame::new(s.n, s.d);
    let f = expand_sos(s);
    let (q0, _) = gram_from_sos(s);
    let directions = kernel_directions(&frame);
    GramParam {
        frame,
        f,
        q0,
        directions,
    }
}

/// Build a GramParam from a polynomial of even degree; the particular
/// solution places each coefficient on a canonical split, which is an exact
/// solution of the (surjective) expansion system.
pub fn spectrahedron_from_poly(f: &Polynomial) -> Result<GramParam> {
    if f.degree() % 2 != 0 {
        return Err(Error::Domain(format!(
            "polynomial degree {} is odd; a Gram matrix needs even degree",
            f.degree()
        )));
    }
    let d = f.degree() / 2;
    let frame = GramFrame::new(f.nvars(), d);
    let mut q0 = RatMatrix::zeros(frame.len(), frame.len());
    for (mu, c) in f.terms() {
        let splits = splits_of(mu, d, &frame);
        let &(a, b) = splits.first().expect("every even-degree monomial splits");
        if a == b {
            q0[(a, a)] = c.clone();
        } else {
            let half = c / crate::rat_int(2);
            q0[(a, b)] = half.clone();
            q0[(b, a)] = half;
        }
    }
    let directions = kernel_directions(&frame);
    Ok(GramParam {
        frame,
        f: f.clone(),
        q0,
        directions,
    })
}

/// Exact congruence diagonalization of a rational PSD matrix into a weighted
/// SOS decomposition. Fails with `NotPsd` when a negative pivot or an
/// inconsistent zero row shows up.
pub fn sos_from_psd_exact(q: &RatMatrix, frame: &GramFrame) -> Result<SosDecomposition> {
    let m = frame.len();
    assert_eq!((q.rows(), q.cols()), (m, m));
    let mut a = q.clone();
    let mut polys = Vec::new();
    let mut weights = Vec::new();
    for i in 0..m {
        let pivot = a[(i, i)].clone();
        if pivot.is_zero() {
            // for a PSD matrix a zero diagonal entry forces a zero row
            if (i..m).any(|j| !a[(i, j)].is_zero()) {
                return Err(Error::NotPsd(format!("zero diagonal with nonzero row {}", i)));
            }
            continue;
        }
        if pivot.is_negative() {
            return Err(Error::NotPsd(format!("negative pivot at {}", i)));
        }
        // row i of the factor: p(x) = sum_j (a_ij / a_ii) x^basis_j
        let coeffs: Vec<Rat> = (0..m).map(|j| &a[(i, j)] / &pivot).collect();
        let terms: Vec<(Monomial, Rat)> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (frame.basis[j].clone(), c.clone()))
            .collect();
        let mut weight = pivot.clone();
        let mut poly = Polynomial::from_terms(frame.n, frame.d, terms)?;
        // fold perfect-square weights into the polynomial
        if let Some(s) = rat_sqrt(&weight) {
            poly = poly.scale(&s);
            weight = Rat::one();
        }
        polys.push(poly);
        weights.push(weight);
        // symmetric rank-one update: A <- A - (1/pivot) a_i a_i^T
        for r in i + 1..m {
            let f = &a[(i, r)] / &pivot;
            if f.is_zero() {
                continue;
            }
            for c in i + 1..m {
                let t = &a[(i, c)] * &f;
                a[(r, c)] -= t;
            }
        }
        for r in i + 1..m {
            a[(r, i)] = Rat::zero();
            a[(i, r)] = Rat::zero();
        }
    }
    SosDecomposition::weighted(polys, weights)
}

/// sqrt of a rational if it is a perfect square.
fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(Rat::new(ns, ds))
    } else {
        None
    }
}

/// Numeric conversion: eigen-factorize and keep the eigenvalues above
/// `tol_rank` (relative to the largest). Coefficients are rationalized
/// exactly from their f64 values.
pub fn sos_from_psd_numeric(q: &SymMatF, frame: &GramFrame, tol_rank: f64) -> Result<SosDecomposition> {
    let (vals, vecs) = eigen_sym(q);
    let m = frame.len();
    let lam_max = vals.last().copied().unwrap_or(0.0).max(0.0);
    let tol = tol_rank * lam_max.max(1e-300);
    if let Some(&lam_min) = vals.first() {
        if lam_min < -tol {
            return Err(Error::NotPsd(format!("lambda_min = {:.3e} below -tol", lam_min)));
        }
    }
    let mut polys = Vec::new();
    for (idx, &lam) in vals.iter().enumerate() {
        if lam <= tol {
            continue;
        }
        let s = lam.sqrt();
        let terms: Vec<(Monomial, Rat)> = (0..m)
            .filter_map(|j| {
                let c = s * vecs[(j, idx)];
                if c == 0.0 {
                    None
                } else {
                    Some((frame.basis[j].clone(), f64_to_rat(c)))
                }
            })
            .collect();
        if terms.is_empty() {
            continue;
        }
        polys.push(Polynomial::from_terms(frame.n, frame.d, terms)?);
    }
    if polys.is_empty() {
        return Err(Error::Domain("numerically zero matrix".into()));
    }
    SosDecomposition::new(polys)
}

/// Exact rational value of an f64.
pub fn f64_to_rat(x: f64) -> Rat {
    Rat::from_float(x).expect("finite float")
}

//! High-level spectrahedron analyses: boundary membership, strict
//! positivity on the sphere, maximum rank, uniqueness of the Gram matrix,
//! and exact dual certificates built from moment matrices.

use crate::gram::{spectrahedron_from_sos, GramParam, SosDecomposition};
use crate::ideals::IdealGens;
use crate::matrix::{same_row_span, RatMatrix};
use crate::monomial::{enumerate_monomials, monomial_index, Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::sdp::{
    eigen_sym, max_min_eig, numeric_rank, LmiModel, SdpOptions, SdpOutcome, SdpStatus, SymMatF,
};
use crate::{dim_forms, Error, Int, Rat, Result};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};

/// Default tolerance for declaring a max-min eigenvalue "zero" (boundary).
pub const TOL_BOUNDARY: f64 = 1e-6;
/// Default tolerance on per-direction widths.
pub const TOL_WIDTH: f64 = 1e-6;
/// Positivity floor for the sphere minimum.
pub const TOL_POSITIVE: f64 = 1e-4;

/// Three-valued verdict for boundary membership, so that a value outside
/// both tolerance windows is reported as ambiguous instead of guessed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryStatus {
    Interior,
    Boundary,
    Ambiguous,
}

#[derive(Debug, Clone)]
pub struct SpectraReport {
    pub f: Polynomial,
    pub t_star: f64,
    pub boundary_status: BoundaryStatus,
    pub on_boundary: bool,
    pub sphere_min: f64,
    pub strictly_positive: bool,
    pub max_rank: usize,
    pub unique_point: bool,
    /// per-direction [min, max] of <B_j, Q> over the sampled feasible points
    pub widths: Vec<[f64; 2]>,
    pub seed: u64,
}

impl SpectraReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "f": self.f.to_string(),
            "t_star": self.t_star,
            "boundary_status": match self.boundary_status {
                BoundaryStatus::Interior => "interior",
                BoundaryStatus::Boundary => "boundary",
                BoundaryStatus::Ambiguous => "ambiguous",
            },
            "on_boundary": self.on_boundary,
            "sphere_min": self.sphere_min,
            "strictly_positive": self.strictly_positive,
            "max_rank": self.max_rank,
            "unique_point": self.unique_point,
            "widths": self.widths,
            "seed": self.seed,
        })
    }
}

/// Exact dual certificate: a functional l on degree-2d forms whose moment
/// matrix is PSD with kernel exactly the span of the decomposition.
#[derive(Debug, Clone)]
pub struct DualCertificate {
    pub n: usize,
    pub d: usize,
    /// coordinates of l over the degree-2d monomial basis
    pub l: Vec<Rat>,
    pub q_l: RatMatrix,
    pub kernel: Vec<Vec<Rat>>,
    pub psd_proved: bool,
}

fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl DualCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        let mat: Vec<Vec<String>> = (0..self.q_l.rows())
            .map(|i| (0..self.q_l.cols()).map(|j| rat_str(&self.q_l[(i, j)])).collect())
            .collect();
        serde_json::json!({
            "n": self.n,
            "d": self.d,
            "l": self.l.iter().map(rat_str).collect::<Vec<_>>(),
            "q_l": mat,
            "kernel": self.kernel.iter()
                .map(|v| v.iter().map(rat_str).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "psd_proved": self.psd_proved,
        })
    }

    /// Human-readable proof transcript: the functional's coordinates and
    /// the exact sign pattern of the characteristic polynomial.
    pub fn transcript(&self) -> String {
        let basis = enumerate_monomials(self.n, 2 * self.d, MonomialOrder::Lex);
        let mut s = String::new();
        s.push_str("dual functional l on the degree-");
        s.push_str(&(2 * self.d).to_string());
        s.push_str(" monomial basis:\n");
        for (m, c) in basis.iter().zip(&self.l) {
            if !c.is_zero() {
                s.push_str(&format!("  l({}) = {}\n", m, rat_str(c)));
            }
        }
        let coeffs = char_poly_int(&clear_denominators(&self.q_l));
        let m = self.q_l.rows();
        s.push_str("characteristic polynomial signs ((-1)^(m-i) c_i >= 0):\n");
        for (i, c) in coeffs.iter().enumerate() {
            let signed = if (m - i) % 2 == 0 { c.clone() } else { -c.clone() };
            s.push_str(&format!("  i = {:>2}: {}\n", i, if signed.is_negative() { "NEGATIVE" } else { "ok" }));
        }
        s.push_str(&format!(
            "kernel dimension {} matches the input span: {}\n",
            self.kernel.len(),
            self.psd_proved
        ));
        s
    }
}

/// Exact basis of the functionals l on degree-2d forms with l(p_i * q) = 0
/// for every generator p_i and every degree-d monomial q, as the nullspace
/// of the stacked product-coefficient matrix.
pub fn functional_space(polys: &[Polynomial], n: usize, d: usize) -> Result<Vec<Vec<Rat>>> {
    let d2 = dim_forms(n, 2 * d);
    if polys.is_empty() {
        return Ok(RatMatrix::zeros(1, d2).nullspace());
    }
    let mut rows = Vec::new();
    for p in polys {
        if p.nvars() != n || p.degree() != d {
            return Err(Error::Dimension(format!(
                "generator of degree {} in {} vars; expected degree {} in {}",
                p.degree(),
                p.nvars(),
                d,
                n
            )));
        }
        for q in enumerate_monomials(n, d, MonomialOrder::Lex) {
            rows.push(IdealGens::coeff_vector(&p.mul_monomial(&q)));
        }
    }
    Ok(RatMatrix::from_rows(rows).nullspace())
}

/// Moment matrix of a functional over the degree-d frame:
/// (Q_l)_{ab} = l(x^{basis_a + basis_b}).
pub fn moment_matrix(l: &[Rat], n: usize, d: usize) -> RatMatrix {
    assert_eq!(l.len(), dim_forms(n, 2 * d));
    let basis = enumerate_monomials(n, d, MonomialOrder::Lex);
    let m = basis.len();
    RatMatrix::from_fn(m, m, |a, b| {
        l[monomial_index(&basis[a].mul(&basis[b]), MonomialOrder::Lex)].clone()
    })
}

/// Clear denominators: the integer matrix c * Q for the lcm c of all
/// denominators; PSD-ness is invariant under positive scaling.
fn clear_denominators(q: &RatMatrix) -> Vec<Vec<Int>> {
    let mut lcm = Int::one();
    for i in 0..q.rows() {
        for j in 0..q.cols() {
            lcm = lcm.lcm(q[(i, j)].denom());
        }
    }
    (0..q.rows())
        .map(|i| {
            (0..q.cols())
                .map(|j| q[(i, j)].numer() * (&lcm / q[(i, j)].denom()))
                .collect()
        })
        .collect()
}

/// Coefficients c_0..c_m of det(xI - A) = x^m + c_{m-1} x^{m-1} + ... + c_0
/// by the Faddeev-LeVerrier recursion; all divisions are exact over the
/// integers.
fn char_poly_int(a: &[Vec<Int>]) -> Vec<Int> {
    let m = a.len();
    let mut coeffs = vec![Int::zero(); m + 1];
    coeffs[m] = Int::one();
    if m == 0 {
        return coeffs;
    }
    // M_1 = A, c_{m-1} = -tr(M_1); M_k = A(M_{k-1} + c_{m-k+1} I)
    let mut mk: Vec<Vec<Int>> = a.to_vec();
    for k in 1..=m {
        if k > 1 {
            let shift = coeffs[m - k + 1].clone();
            let mut shifted = mk;
            for (i, row) in shifted.iter_mut().enumerate() {
                row[i] += &shift;
            }
            let mut prod = vec![vec![Int::zero(); m]; m];
            for i in 0..m {
                for l in 0..m {
                    if a[i][l].is_zero() {
                        continue;
                    }
                    for j in 0..m {
                        if !shifted[l][j].is_zero() {
                            prod[i][j] += &a[i][l] * &shifted[l][j];
                        }
                    }
                }
            }
            mk = prod;
        }
        let tr: Int = (0..m).map(|i| mk[i][i].clone()).sum();
        let (quot, rem) = (-tr).div_rem(&Int::from(k));
        debug_assert!(rem.is_zero(), "Faddeev-LeVerrier division must be exact");
        coeffs[m - k] = quot;
    }
    coeffs
}

/// Exact PSD test for a rational symmetric matrix: all eigenvalues are real,
/// so Q is PSD iff the characteristic polynomial coefficients satisfy
/// (-1)^(m-i) c_i >= 0 for every i.
pub fn psd_exact(q: &RatMatrix) -> bool {
    assert_eq!(q.rows(), q.cols());
    let coeffs = char_poly_int(&clear_denominators(q));
    let m = q.rows();
    coeffs.iter().enumerate().all(|(i, c)| {
        let signed = if (m - i) % 2 == 0 { c.clone() } else { -c.clone() };
        !signed.is_negative()
    })
}

/// Search for an exact dual certificate: for each probe monomial, compute
/// the functional space of the generators plus the probe; keep probes where
/// it is one-dimensional and the generator's moment matrix is PSD up to
/// sign; sum the kept functionals and verify the kernel exactly.
pub fn certificate_search(polys: &[Polynomial], probes: &[Monomial]) -> Result<DualCertificate> {
    let first = polys
        .first()
        .ok_or_else(|| Error::Domain("no generators".into()))?;
    let (n, d) = (first.nvars(), first.degree());
    let d2 = dim_forms(n, 2 * d);
    let mut total = vec![Rat::zero(); d2];
    let mut kept = 0usize;
    for probe in probes {
        let mut augmented = polys.to_vec();
        augmented.push(Polynomial::monomial(probe.clone(), Rat::one()));
        let space = functional_space(&augmented, n, d)?;
        if space.len() != 1 {
            continue;
        }
        let l = &space[0];
        let q = moment_matrix(l, n, d);
        let signed = if psd_exact(&q) {
            Some(l.clone())
        } else {
            let neg: Vec<Rat> = l.iter().map(|x| -x.clone()).collect();
            if psd_exact(&moment_matrix(&neg, n, d)) {
                Some(neg)
            } else {
                None
            }
        };
        if let Some(l) = signed {
            for (t, x) in total.iter_mut().zip(&l) {
                *t += x;
            }
            kept += 1;
        }
    }
    if kept == 0 {
        return Err(Error::SearchFailed(
            "no probe produced a one-dimensional PSD functional".into(),
        ));
    }
    let q_l = moment_matrix(&total, n, d);
    let psd_proved = psd_exact(&q_l);
    if !psd_proved {
        return Err(Error::CertificateInvalid(
            "summed moment matrix is not PSD".into(),
        ));
    }
    let kernel = q_l.nullspace();
    let span_rows: Vec<Vec<Rat>> = polys.iter().map(IdealGens::coeff_vector).collect();
    let kernel_mat = RatMatrix::from_rows(kernel.clone());
    let span_mat = RatMatrix::from_rows(span_rows);
    if !same_row_span(&kernel_mat, &span_mat)? {
        return Err(Error::CertificateInvalid(format!(
            "kernel dimension {} does not span the input polynomials (rank {})",
            kernel.len(),
            span_mat.rank()
        )));
    }
    Ok(DualCertificate {
        n,
        d,
        l: total,
        q_l,
        kernel,
        psd_proved,
    })
}

/// Multistart projected-gradient minimization of a homogeneous form on the
/// unit sphere; deterministic given the seed.
pub fn strict_positivity(f: &Polynomial, restarts: usize, seed: u64) -> f64 {
    let n = f.nvars();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut best = f64::INFINITY;
    for _ in 0..restarts.max(1) {
        let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < 1e-9 {
            x[0] = 1.0;
        } else {
            for v in &mut x {
                *v /= norm;
            }
        }
        let mut fx = f.eval_f64(&x);
        let mut step = 0.1f64;
        for _ in 0..500 {
            let g = f.grad_f64(&x);
            let gx: f64 = g.iter().zip(&x).map(|(a, b)| a * b).sum();
            let gt: Vec<f64> = g.iter().zip(&x).map(|(gi, xi)| gi - gx * xi).collect();
            let gnorm: f64 = gt.iter().map(|v| v * v).sum::<f64>().sqrt();
            if gnorm <= 1e-12 * fx.abs().max(1.0) {
                break;
            }
            let mut improved = false;
            for _ in 0..40 {
                let mut trial: Vec<f64> = x
                    .iter()
                    .zip(&gt)
                    .map(|(xi, gi)| xi - step * gi)
                    .collect();
                let tn: f64 = trial.iter().map(|v| v * v).sum::<f64>().sqrt();
                if tn < 1e-12 {
                    break;
                }
                for v in &mut trial {
                    *v /= tn;
                }
                let ft = f.eval_f64(&trial);
                if ft < fx {
                    x = trial;
                    fx = ft;
                    step = (step * 1.5).min(1.0);
                    improved = true;
                    break;
                }
                step *= 0.5;
            }
            if !improved || step < 1e-15 {
                break;
            }
        }
        best = best.min(fx);
    }
    best
}

/// Numeric model of a Gram parametrization.
pub fn lmi_model(param: &GramParam) -> LmiModel {
    LmiModel::new(
        SymMatF::from_rat(&param.q0),
        param.directions.iter().map(SymMatF::from_rat).collect(),
    )
}

fn average(points: &[SymMatF]) -> SymMatF {
    let mut avg = SymMatF::zeros(points[0].n());
    let w = 1.0 / points.len() as f64;
    for p in points {
        avg.add_scaled(p, w);
    }
    avg
}

/// Sample feasible points: the max-min-eigenvalue point plus `r` linear
/// probes with seeded random objectives.
fn sample_points(
    model: &LmiModel,
    phase1: &SdpOutcome,
    r: usize,
    opts: &SdpOptions,
) -> Vec<SymMatF> {
    let m = model.a0.n();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(opts.seed);
    let mut points = vec![phase1.q.clone()];
    for _ in 0..r {
        let entries: Vec<f64> = (0..m * m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let c = SymMatF::from_fn(m, |i, j| entries[i * m + j]);
        let out = crate::sdp::optimize_linear_with_phase(model, &c, phase1, opts);
        if out.status == SdpStatus::Optimal {
            points.push(out.q);
        }
    }
    points
}

/// Dimension of the feasible-direction space at a relative-interior point:
/// directions c with (sum c_j B_j) u = 0 for every numeric kernel vector u
/// of the point. Zero dimension means the spectrahedron is a single point.
fn face_dimension(model: &LmiModel, point: &SymMatF, opts: &SdpOptions) -> usize {
    let s = model.dirs.len();
    if s == 0 {
        return 0;
    }
    let m = point.n();
    let (vals, vecs) = eigen_sym(point);
    let lam_max = vals.last().copied().unwrap_or(0.0);
    let cut = opts.tol_rank * lam_max.max(1.0);
    let kernel: Vec<Vec<f64>> = vals
        .iter()
        .enumerate()
        .filter(|(_, &v)| v <= cut)
        .map(|(k, _)| (0..m).map(|i| vecs[(i, k)]).collect())
        .collect();
    if kernel.is_empty() {
        return s; // interior point: every direction is feasible
    }
    // rows of the constraint matrix: for each kernel vector u and each
    // coordinate a, the map c |-> (sum c_j B_j u)_a
    let rows = kernel.len() * m;
    let mut mat = vec![0.0f64; rows * s];
    for (ku, u) in kernel.iter().enumerate() {
        for (j, b) in model.dirs.iter().enumerate() {
            for a in 0..m {
                let mut v = 0.0;
                for t in 0..m {
                    v += b[(a, t)] * u[t];
                }
                mat[(ku * m + a) * s + j] = v;
            }
        }
    }
    // rank via the spectrum of the s x s Gram matrix of the columns
    let mut gram = SymMatF::zeros(s);
    for i in 0..s {
        for j in i..s {
            let mut v = 0.0;
            for r in 0..rows {
                v += mat[r * s + i] * mat[r * s + j];
            }
            gram[(i, j)] = v;
            gram[(j, i)] = v;
        }
    }
    let (gvals, _) = eigen_sym(&gram);
    let gmax = gvals.last().copied().unwrap_or(0.0);
    let sv_cut = 1e-4 * gmax.max(1e-12).sqrt();
    let rank = gvals.iter().filter(|&&v| v.max(0.0).sqrt() > sv_cut).count();
    s - rank
}

/// Estimate the maximum rank over the spectrahedron: average the sampled
/// feasible points (a convex combination has rank at least each sample's)
/// and report the numeric rank of the average.
pub fn max_rank_estimate(param: &GramParam, r: usize, opts: &SdpOptions) -> usize {
    let model = lmi_model(param);
    let phase1 = max_min_eig(&model, opts);
    let points = sample_points(&model, &phase1, r, opts);
    numeric_rank(&average(&points), opts.tol_rank)
}

/// Full spectrahedron analysis of a sum-of-squares decomposition.
pub fn analyze(input: &SosDecomposition, opts: &SdpOptions, restarts: usize) -> Result<SpectraReport> {
    let param = spectrahedron_from_sos(input);
    let model = lmi_model(&param);
    let phase1 = max_min_eig(&model, opts);
    if phase1.status != SdpStatus::Optimal {
        return Err(Error::Solver(format!(
            "max-min eigenvalue solve ended with status {:?}",
            phase1.status
        )));
    }
    let t_star = phase1.value;
    let boundary_status = if t_star > TOL_BOUNDARY {
        BoundaryStatus::Interior
    } else if t_star.abs() <= TOL_BOUNDARY {
        BoundaryStatus::Boundary
    } else {
        BoundaryStatus::Ambiguous
    };
    let sphere_min = strict_positivity(&param.f, 100, opts.seed);
    let points = sample_points(&model, &phase1, restarts, opts);
    let avg = average(&points);
    let face_dim = face_dimension(&model, &avg, opts);
    let unique_point = face_dim == 0;
    // for a singleton spectrahedron the max-min-eigenvalue point is the
    // point, and its rank is the exact answer; otherwise take the average
    let max_rank = if unique_point {
        numeric_rank(&phase1.q, opts.tol_rank)
    } else {
        numeric_rank(&avg, opts.tol_rank)
    };
    let widths: Vec<[f64; 2]> = model
        .dirs
        .iter()
        .map(|b| {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for p in &points {
                let v = b.dot(p);
                lo = lo.min(v);
                hi = hi.max(v);
            }
            [lo, hi]
        })
        .collect();
    Ok(SpectraReport {
        f: param.f.clone(),
        t_star,
        boundary_status,
        on_boundary: boundary_status == BoundaryStatus::Boundary,
        sphere_min,
        strictly_positive: sphere_min > TOL_POSITIVE,
        max_rank,
        unique_point,
        widths,
        seed: opts.seed,
    })
}

/// Drop every term involving one of the given variables (evaluation at 0),
/// used for checking common zeros with some coordinates set to zero.
pub fn restrict_vanishing(p: &Polynomial, zero_vars: &[usize]) -> Polynomial {
    let terms: Vec<(Monomial, Rat)> = p
        .terms()
        .filter(|(m, _)| zero_vars.iter().all(|&v| m.exp(v) == 0))
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect();
    Polynomial::from_terms(p.nvars(), p.degree(), terms).expect("subset of valid terms")
}

/// Reduce modulo x_i^2 + x_j^2: rewrite x_i^2 -> -x_j^2 until the exponent
/// of x_i is below 2. Evaluating at x_i = I x_j (I^2 = -1) gives zero iff
/// the reduction is zero for polynomials in x_i, x_j only.
pub fn reduce_imaginary_pair(p: &Polynomial, i: usize, j: usize) -> Polynomial {
    let mut terms: Vec<(Monomial, Rat)> = Vec::new();
    for (m, c) in p.terms() {
        let e = m.exp(i);
        let k = e / 2;
        let mut exps: Vec<u32> = (0..p.nvars()).map(|v| m.exp(v)).collect();
        exps[i] = e % 2;
        exps[j] += 2 * k;
        let sign = if k % 2 == 0 { c.clone() } else { -c.clone() };
        terms.push((Monomial::new(exps), sign));
    }
    Polynomial::from_terms(p.nvars(), p.degree(), terms).expect("degree preserved")
}

/// Do all the generators vanish at a point with the given coordinates set
/// to zero and x_i = I x_j (a common complex root)?
pub fn vanishes_at_imaginary_point(
    polys: &[Polynomial],
    zero_vars: &[usize],
    i: usize,
    j: usize,
) -> bool {
    polys.iter().all(|p| {
        let r = reduce_imaginary_pair(&restrict_vanishing(p, zero_vars), i, j);
        r.is_zero()
    })
}

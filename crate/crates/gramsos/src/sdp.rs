//! Small dense semidefinite solver: cyclic Jacobi eigendecomposition, a
//! log-barrier Newton path-following scheme for the max-min-eigenvalue
//! problem over an affine matrix family, and linear optimization over a
//! spectrahedron. Everything is double precision and deterministic.

use serde::{Deserialize, Serialize};

/// Dense symmetric matrix in f64, full row-major storage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymMatF {
    n: usize,
    data: Vec<f64>,
}

impl SymMatF {
    pub fn zeros(n: usize) -> Self {
        SymMatF {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SymMatF::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Symmetrizes the generator: stores (f(i,j) + f(j,i)) / 2.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = SymMatF::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = 0.5 * (f(i, j) + f(j, i));
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        m
    }

    pub fn from_rat(a: &crate::matrix::RatMatrix) -> Self {
        assert_eq!(a.rows(), a.cols());
        SymMatF::from_fn(a.rows(), |i, j| crate::poly::rat_to_f64(&a[(i, j)]))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn scale(&self, s: f64) -> SymMatF {
        SymMatF {
            n: self.n,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &SymMatF, s: f64) {
        assert_eq!(self.n, other.n);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    /// Trace inner product <A, B> = sum_ij A_ij B_ij.
    pub fn dot(&self, other: &SymMatF) -> f64 {
        assert_eq!(self.n, other.n);
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    pub fn norm_max(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Cholesky factor L (lower, row-major) of a positive definite matrix.
    pub fn cholesky(&self) -> Option<Vec<f64>> {
        let n = self.n;
        let mut l = vec![0.0f64; n * n];
        for i in 0..n {
            for j in 0..=i {
                let mut s = self[(i, j)];
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k];
                }
                if i == j {
                    if s <= 0.0 || !s.is_finite() {
                        return None;
                    }
                    l[i * n + i] = s.sqrt();
                } else {
                    l[i * n + j] = s / l[j * n + j];
                }
            }
        }
        Some(l)
    }

    /// Inverse via the Cholesky factor; the caller guarantees PD.
    fn inverse_from_chol(&self, l: &[f64]) -> SymMatF {
        let n = self.n;
        let mut inv = SymMatF::zeros(n);
        let mut col = vec![0.0f64; n];
        for c in 0..n {
            for (i, x) in col.iter_mut().enumerate() {
                *x = if i == c { 1.0 } else { 0.0 };
            }
            chol_solve_in_place(l, n, &mut col);
            for i in 0..n {
                inv[(i, c)] = col[i];
            }
        }
        // symmetrize against rounding
        for i in 0..n {
            for j in i + 1..n {
                let v = 0.5 * (inv[(i, j)] + inv[(j, i)]);
                inv[(i, j)] = v;
                inv[(j, i)] = v;
            }
        }
        inv
    }

    /// Plain matrix product (result need not be symmetric); row-major dense.
    fn mul_full(&self, other: &SymMatF) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0f64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for SymMatF {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for SymMatF {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

fn chol_solve_in_place(l: &[f64], n: usize, b: &mut [f64]) {
    // forward: L y = b
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[i * n + k] * b[k];
        }
        b[i] = s / l[i * n + i];
    }
    // backward: L^T x = y
    for i in (0..n).rev() {
        let mut s = b[i];
        for k in i + 1..n {
            s -= l[k * n + i] * b[k];
        }
        b[i] = s / l[i * n + i];
    }
}

fn chol_logdet(l: &[f64], n: usize) -> f64 {
    (0..n).map(|i| l[i * n + i].ln()).sum::<f64>() * 2.0
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps with
/// off-diagonal threshold 1e-13 * ||A||. Returns eigenvalues ascending and
/// the matching orthonormal eigenvectors as columns.
pub fn eigen_sym(a: &SymMatF) -> (Vec<f64>, SymMatF) {
    let n = a.n;
    let mut m = a.clone();
    let mut v = SymMatF::identity(n);
    let norm = a.norm_fro().max(1e-300);
    let thresh = 1e-13 * norm;
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off += m[(p, q)] * m[(p, q)];
            }
        }
        if (2.0 * off).sqrt() <= thresh {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // rotate rows/cols p and q of M
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].partial_cmp(&m[(j, j)]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| m[(i, i)]).collect();
    let vectors = SymMatF::from_raw(n, |i, j| v[(i, order[j])]);
    (values, vectors)
}

impl SymMatF {
    /// Like from_fn but without symmetrization (used for eigenvector tables,
    /// which are orthogonal rather than symmetric).
    fn from_raw(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut m = SymMatF::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }
}

/// Count of eigenvalues above tol * max(1, lambda_max).
pub fn numeric_rank(q: &SymMatF, tol_rank: f64) -> usize {
    let (vals, _) = eigen_sym(q);
    let lam_max = vals.last().copied().unwrap_or(0.0);
    let cut = tol_rank * lam_max.max(1.0);
    vals.iter().filter(|&&v| v > cut).count()
}

/// Affine matrix family A0 + sum lambda_j A_j, all symmetric m x m.
#[derive(Debug, Clone)]
pub struct LmiModel {
    pub a0: SymMatF,
    pub dirs: Vec<SymMatF>,
}

impl LmiModel {
    pub fn new(a0: SymMatF, dirs: Vec<SymMatF>) -> Self {
        for d in &dirs {
            assert_eq!(d.n(), a0.n());
        }
        LmiModel { a0, dirs }
    }

    pub fn at(&self, lambda: &[f64]) -> SymMatF {
        assert_eq!(lambda.len(), self.dirs.len());
        let mut s = self.a0.clone();
        for (d, &l) in self.dirs.iter().zip(lambda) {
            s.add_scaled(d, l);
        }
        s
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SdpOptions {
    pub eps_gap: f64,
    pub eps_feas: f64,
    pub tol_rank: f64,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for SdpOptions {
    fn default() -> Self {
        SdpOptions {
            eps_gap: 1e-9,
            eps_feas: 1e-8,
            tol_rank: 1e-6,
            max_iter: 200,
            seed: 42,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SdpStatus {
    Optimal,
    Infeasible,
    MaxIter,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SdpOutcome {
    pub status: SdpStatus,
    pub lambda: Vec<f64>,
    pub value: f64,
    pub q: SymMatF,
    pub eigenvalues: Vec<f64>,
}

struct BarrierRun {
    y: Vec<f64>,
    mu_end: f64,
    #[allow(dead_code)]
    steps: usize,
    diverged: bool,
    finished: bool,
}

/// Maximize b . y + mu log det(A0 + sum y_i M_i) along a decreasing mu
/// schedule, by damped Newton steps. The first `ridge_dims` coordinates get
/// a quadratic penalty proportional to mu, so that flat optimal faces
/// (where the barrier otherwise drifts without bound) stay at moderate
/// coordinates while the bias vanishes as mu shrinks.
const RIDGE_C: f64 = 1e-4;

fn solve_barrier(
    a0: &SymMatF,
    mats: &[SymMatF],
    b: &[f64],
    y0: Vec<f64>,
    ridge_dims: usize,
    opts: &SdpOptions,
) -> BarrierRun {
    let m = a0.n();
    let p = mats.len();
    assert_eq!(b.len(), p);
    let scale = a0.norm_max().max(1.0);
    let mut y = y0;
    let mut mu = scale;
    // The centered point can drift O(sqrt(mu)) along directions where the
    // feasible set pinches quadratically, so rank detection at tol_rank
    // needs mu pushed below (tol_rank)^2, not just below the gap target.
    let mu_min = (opts.eps_gap / m as f64)
        .min(opts.tol_rank * opts.tol_rank / 64.0)
        * scale;
    let mut steps = 0usize;

    let assemble = |y: &[f64]| {
        let mut f = a0.clone();
        for (mat, &c) in mats.iter().zip(y) {
            f.add_scaled(mat, c);
        }
        f
    };
    let phi = |y: &[f64], mu: f64| -> Option<f64> {
        let ridge = RIDGE_C * mu;
        let f = assemble(y);
        let l = f.cholesky()?;
        let mut obj = mu * chol_logdet(&l, m);
        for i in 0..p {
            obj += b[i] * y[i];
        }
        for yi in y.iter().take(ridge_dims) {
            obj -= ridge * yi * yi;
        }
        Some(obj)
    };

    debug_assert!(phi(&y, mu).is_some(), "barrier start must be strictly feasible");

    loop {
        // center for the current mu
        for _inner in 0..50 {
            if steps >= opts.max_iter {
                return BarrierRun {
                    y,
                    mu_end: mu,
                    steps,
                    diverged: false,
                    finished: false,
                };
            }
            let f = assemble(&y);
            let Some(l) = f.cholesky() else {
                // can only happen through rounding at the feasibility edge
                return BarrierRun {
                    y,
                    mu_end: mu,
                    steps,
                    diverged: false,
                    finished: false,
                };
            };
            let ridge = RIDGE_C * mu;
            let w = f.inverse_from_chol(&l);
            let t: Vec<Vec<f64>> = mats.iter().map(|mi| w.mul_full(mi)).collect();
            let mut g = vec![0.0f64; p];
            for i in 0..p {
                let tr: f64 = (0..m).map(|k| t[i][k * m + k]).sum();
                g[i] = b[i] + mu * tr;
                if i < ridge_dims {
                    g[i] -= 2.0 * ridge * y[i];
                }
            }
            let mut h = SymMatF::zeros(p);
            for i in 0..p {
                for j in i..p {
                    let mut s = 0.0;
                    for a in 0..m {
                        for c in 0..m {
                            s += t[i][a * m + c] * t[j][c * m + a];
                        }
                    }
                    let mut v = mu * s;
                    if i == j && i < ridge_dims {
                        v += 2.0 * ridge;
                    }
                    h[(i, j)] = v;
                    h[(j, i)] = v;
                }
            }
            let hl = match h.cholesky() {
                Some(hl) => hl,
                None => {
                    // jitter against rounding on nearly singular Hessians
                    let tr: f64 = (0..p).map(|i| h[(i, i)]).sum();
                    for i in 0..p {
                        h[(i, i)] += 1e-12 * tr.max(1e-300);
                    }
                    match h.cholesky() {
                        Some(hl) => hl,
                        None => {
                            return BarrierRun {
                                y,
                                mu_end: mu,
                                steps,
                                diverged: false,
                                finished: false,
                            }
                        }
                    }
                }
            };
            let mut delta = g.clone();
            chol_solve_in_place(&hl, p, &mut delta);
            let dec: f64 = g.iter().zip(&delta).map(|(a, b)| a * b).sum();
            if dec <= 0.1 * mu {
                break;
            }
            // backtracking line search keeping strict feasibility
            let phi0 = phi(&y, mu).expect("current iterate feasible");
            let mut alpha = 1.0f64;
            let mut accepted = false;
            for _bt in 0..60 {
                let trial: Vec<f64> = y
                    .iter()
                    .zip(&delta)
                    .map(|(yi, di)| yi + alpha * di)
                    .collect();
                if let Some(val) = phi(&trial, mu) {
                    if val >= phi0 + 0.01 * alpha * dec {
                        y = trial;
                        accepted = true;
                        break;
                    }
                }
                alpha *= 0.5;
            }
            steps += 1;
            if !accepted {
                break; // stalled at numerical precision for this mu
            }
            if y.iter().any(|v| v.abs() > 1e8) {
                return BarrierRun {
                    y,
                    mu_end: mu,
                    steps,
                    diverged: true,
                    finished: false,
                };
            }
        }
        if mu <= mu_min {
            return BarrierRun {
                y,
                mu_end: mu,
                steps,
                diverged: false,
                finished: true,
            };
        }
        mu = (mu * 0.2).max(mu_min);
    }
}

/// Maximize t subject to A0 + sum lambda_j A_j - t I >= 0. The reported
/// `value` is t plus the residual barrier gap, an upper-bracket estimate of
/// the optimum accurate to eps_gap for well-conditioned inputs.
pub fn max_min_eig(model: &LmiModel, opts: &SdpOptions) -> SdpOutcome {
    let m = model.a0.n();
    let s = model.dirs.len();
    let mut mats = model.dirs.clone();
    mats.push(SymMatF::identity(m).scale(-1.0));
    let mut b = vec![0.0; s + 1];
    b[s] = 1.0;
    let (ev0, _) = eigen_sym(&model.a0);
    let lam0 = ev0.first().copied().unwrap_or(0.0);
    let mut y0 = vec![0.0; s + 1];
    y0[s] = lam0 - lam0.abs().max(1.0);
    let run = solve_barrier(&model.a0, &mats, &b, y0, s, opts);
    let lambda = run.y[..s].to_vec();
    let t_hat = run.y[s];
    let q = model.at(&lambda);
    let (eigenvalues, _) = eigen_sym(&q);
    let status = if run.finished {
        SdpStatus::Optimal
    } else {
        SdpStatus::MaxIter
    };
    let value = if run.finished {
        t_hat + run.mu_end * m as f64
    } else {
        t_hat
    };
    SdpOutcome {
        status,
        lambda,
        value,
        q,
        eigenvalues,
    }
}

/// Maximize <C, A0 + sum lambda_j A_j> over the PSD constraint. Phase 1 is a
/// max_min_eig call. When the phase-1 margin is too small for a plain
/// barrier (empty interior up to numerics) the constraint is relaxed to
/// A0 + delta I, and the returned point is blended back toward the phase-1
/// point until lambda_min of the unrelaxed matrix clears -eps_feas * scale.
pub fn optimize_linear(model: &LmiModel, c: &SymMatF, opts: &SdpOptions) -> SdpOutcome {
    let phase1 = max_min_eig(model, opts);
    optimize_linear_with_phase(model, c, &phase1, opts)
}

/// optimize_linear with a precomputed phase-1 outcome, so a batch of probe
/// objectives over the same spectrahedron pays for feasibility only once.
pub fn optimize_linear_with_phase(
    model: &LmiModel,
    c: &SymMatF,
    phase1: &SdpOutcome,
    opts: &SdpOptions,
) -> SdpOutcome {
    let m = model.a0.n();
    let s = model.dirs.len();
    let scale = model.a0.norm_max().max(1.0);
    if phase1.status == SdpStatus::Optimal && phase1.value < -opts.eps_feas * scale {
        return SdpOutcome {
            status: SdpStatus::Infeasible,
            ..phase1.clone()
        };
    }
    if phase1.status != SdpStatus::Optimal {
        return phase1.clone();
    }
    let t_hat = *phase1.eigenvalues.first().expect("nonempty matrix");
    let margin = 1e-7 * scale;
    let delta = (margin - t_hat).max(0.0);
    let mut a0 = model.a0.clone();
    a0.add_scaled(&SymMatF::identity(m), delta);
    let b: Vec<f64> = model.dirs.iter().map(|d| c.dot(d)).collect();
    let run = solve_barrier(&a0, &model.dirs, &b, phase1.lambda.clone(), s, opts);
    if run.diverged {
        return SdpOutcome {
            status: SdpStatus::MaxIter,
            lambda: run.y.clone(),
            value: f64::NAN,
            q: model.at(&run.y),
            eigenvalues: Vec::new(),
        };
    }
    let mut lambda = run.y;
    // blend toward the strictly safer phase-1 point until the unrelaxed
    // matrix is feasible; lambda_min is concave along the segment
    let feas_floor = -opts.eps_feas * scale;
    let target = (0.5 * feas_floor).max(2.0 * t_hat.min(0.0));
    let lam_min_of = |lam: &[f64]| -> f64 {
        let (ev, _) = eigen_sym(&model.at(lam));
        ev[0]
    };
    if lam_min_of(&lambda) < target {
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..50 {
            let mid = 0.5 * (lo + hi);
            let blend: Vec<f64> = lambda
                .iter()
                .zip(&phase1.lambda)
                .map(|(a, p)| (1.0 - mid) * a + mid * p)
                .collect();
            if lam_min_of(&blend) >= target {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        for (a, p) in lambda.iter_mut().zip(&phase1.lambda) {
            *a = (1.0 - hi) * *a + hi * p;
        }
    }
    let q = model.at(&lambda);
    let (eigenvalues, _) = eigen_sym(&q);
    let value = c.dot(&q);
    let status = if run.finished {
        SdpStatus::Optimal
    } else {
        SdpStatus::MaxIter
    };
    SdpOutcome {
        status,
        lambda,
        value,
        q,
        eigenvalues,
    }
}

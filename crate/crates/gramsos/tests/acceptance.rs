//! End-to-end acceptance suite. Each test prints one `criterion N: pass/fail`
//! line so the whole gate can be read off the test output directly.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use gramsos::analyze::{analyze, certificate_search, functional_space, psd_exact, SpectraReport};
use gramsos::bounds::{bound_data, divisor_count_oracle, hf_identity_check, table_n, witness_ideal, TABLE_CASES};
use gramsos::ideals::{
    colon_component, contains_sop, hf_monomial, hf_poly, hilbert_table_monomial, lpp_ideal,
    IdealGens, MonomialIdeal,
};
use gramsos::monomial::{enumerate_monomials, Monomial, MonomialOrder};
use gramsos::poly::Polynomial;
use gramsos::registry::registry;
use gramsos::sdp::SdpOptions;
use gramsos::{dim_forms, rat_int, Rat};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gate(name: &str, limit: Duration, body: impl FnOnce() + std::panic::UnwindSafe) {
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(body);
    let elapsed = start.elapsed();
    let timely = elapsed <= limit;
    let status = if outcome.is_ok() && timely { "pass" } else { "fail" };
    println!("{}: {} ({:.2?})", name, status, elapsed);
    if let Err(e) = outcome {
        std::panic::resume_unwind(e);
    }
    assert!(timely, "{} exceeded the {:?} budget: {:?}", name, limit, elapsed);
}

fn opts_for(seed: u64) -> SdpOptions {
    SdpOptions {
        tol_rank: 1e-6,
        eps_feas: 1e-8,
        seed,
        ..SdpOptions::default()
    }
}

/// Shared per-seed analysis reports so criteria 5, 6 and 9 pay for the
/// solver runs once.
fn reports_for(seed: u64) -> Arc<Vec<(String, SpectraReport)>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<(String, SpectraReport)>>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(r) = guard.get(&seed) {
        return r.clone();
    }
    let opts = opts_for(seed);
    let reports: Vec<(String, SpectraReport)> = registry()
        .iter()
        .map(|e| {
            let report = analyze(&e.decomposition, &opts, 8)
                .unwrap_or_else(|err| panic!("{} failed to analyze: {}", e.key, err));
            (e.key.to_string(), report)
        })
        .collect();
    let arc = Arc::new(reports);
    guard.insert(seed, arc.clone());
    arc
}

#[test]
fn criterion_1_summary_table() {
    gate("criterion 1 (summary table)", Duration::from_secs(1), || {
        let rows = table_n(&TABLE_CASES).unwrap();
        let expect = [
            (3, 6, 3, 10, 4, 4),
            (4, 4, 4, 10, 5, 5),
            (4, 6, 13, 20, 8, 11),
            (5, 4, 9, 15, 7, 11),
            (6, 4, 15, 21, 11, 15),
        ];
        assert_eq!(rows.len(), expect.len());
        for (row, &(n, two_d, bound, dim, plo, phi)) in rows.iter().zip(&expect) {
            assert_eq!((row.n, row.two_d), (n, two_d));
            assert_eq!(row.n_minus_one, bound, "({}, {})", n, two_d);
            assert_eq!(row.dim, dim, "({}, {})", n, two_d);
            assert_eq!(row.pythagoras_lower, Some(plo));
            assert_eq!(row.pythagoras_upper, Some(phi));
        }
    });
}

#[test]
fn criterion_2_hilbert_tables() {
    gate("criterion 2 (Hilbert tables)", Duration::from_secs(1), || {
        let powers = |n: usize, d: u32| {
            MonomialIdeal::new(n, (0..n).map(|i| Monomial::var_pow(n, i, d)).collect()).unwrap()
        };
        assert_eq!(
            hilbert_table_monomial(&powers(3, 3), 6).row(),
            vec![1, 3, 6, 7, 6, 3, 1]
        );
        let mut gens: Vec<Monomial> = (0..3).map(|i| Monomial::var_pow(3, i, 3)).collect();
        gens.push(Monomial::new(vec![2, 1, 0]));
        let with_extra = MonomialIdeal::new(3, gens).unwrap();
        assert_eq!(
            hilbert_table_monomial(&with_extra, 6).row(),
            vec![1, 3, 6, 6, 4, 1, 0]
        );
        assert_eq!(
            hilbert_table_monomial(&powers(4, 3), 8).row(),
            vec![1, 4, 10, 16, 19, 16, 10, 4, 1]
        );
    });
}

#[test]
fn criterion_3_bound_formula_oracle() {
    gate("criterion 3 (bound formula oracle)", Duration::from_secs(30), || {
        for n in 1..=6 {
            for d in 2..=4usize {
                for k in d..=n * (d - 1) {
                    let bd = bound_data(n, d, k).unwrap();
                    assert_eq!(
                        bd.c,
                        divisor_count_oracle(&bd.extremal, d),
                        "C mismatch at ({}, {}, {})",
                        n,
                        d,
                        k
                    );
                    assert_eq!(
                        bd.n_threshold + bd.c,
                        dim_forms(n, d) + 1,
                        "N + C mismatch at ({}, {}, {})",
                        n,
                        d,
                        k
                    );
                }
            }
        }
    });
}

#[test]
fn criterion_4_threshold_equals_hilbert_value() {
    gate("criterion 4 (N = HF + n identity)", Duration::from_secs(30), || {
        let mut checked = 0;
        for n in 1..=6usize {
            for d in 2..=4usize {
                let socle = n * (d - 1);
                let lo = std::cmp::max(socle.saturating_sub(d), d);
                for k in lo + 1..=socle {
                    assert!(
                        hf_identity_check(n, d, k).unwrap(),
                        "identity fails at ({}, {}, {})",
                        n,
                        d,
                        k
                    );
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);
    });
}

#[test]
fn criterion_5_example_ranks_three_seeds() {
    gate("criterion 5 (example ranks, 3 seeds)", Duration::from_secs(600), || {
        let expected: HashMap<&str, _> = registry()
            .iter()
            .map(|e| (e.key, e.expected.clone()))
            .collect();
        for seed in [42u64, 7, 2024] {
            let reports = reports_for(seed);
            for (key, report) in reports.iter() {
                let exp = &expected[key.as_str()];
                assert_eq!(report.max_rank, exp.max_rank, "{} rank, seed {}", key, seed);
                assert_eq!(
                    report.unique_point, exp.unique_point,
                    "{} uniqueness, seed {}",
                    key, seed
                );
                assert_eq!(
                    report.strictly_positive, exp.strictly_positive,
                    "{} positivity, seed {}",
                    key, seed
                );
            }
        }
    });
}

#[test]
fn criterion_6_boundary_membership() {
    gate("criterion 6 (boundary membership)", Duration::from_secs(600), || {
        for (key, report) in reports_for(42).iter() {
            assert!(
                report.t_star >= 0.0 && report.t_star <= 1e-6,
                "{}: t_star = {:e}",
                key,
                report.t_star
            );
            assert!(report.on_boundary, "{} not reported on the boundary", key);
        }
    });
}

#[test]
fn criterion_7_exact_certificates() {
    gate("criterion 7 (exact certificates)", Duration::from_secs(120), || {
        let by_key: HashMap<&str, _> = registry()
            .iter()
            .map(|e| (e.key, e.decomposition.clone()))
            .collect();
        let cubes: Vec<Monomial> = (0..4).map(|i| Monomial::var_pow(4, i, 3)).collect();

        let reznick = &by_key["reznick46"];
        assert_eq!(functional_space(&reznick.polys, 4, 3).unwrap().len(), 10);
        let mut with_cube = reznick.polys.clone();
        with_cube.push(Polynomial::monomial(Monomial::var_pow(4, 0, 3), rat_int(1)));
        assert_eq!(functional_space(&with_cube, 4, 3).unwrap().len(), 1);

        for key in ["reznick46", "ex2:46"] {
            let cert = certificate_search(&by_key[key].polys, &cubes)
                .unwrap_or_else(|e| panic!("{}: {}", key, e));
            assert!(cert.psd_proved, "{} certificate not verified", key);
            assert!(psd_exact(&cert.q_l), "{} moment matrix not PSD", key);
            assert_eq!(cert.kernel.len(), by_key[key].polys.len(), "{} kernel", key);
        }
    });
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Polynomial {
    let terms: Vec<(Monomial, Rat)> = enumerate_monomials(n, d, MonomialOrder::Lex)
        .into_iter()
        .map(|m| (m, rat_int(rng.gen_range(-3..=3))))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    Polynomial::from_terms(n, d, terms).unwrap_or_else(|_| Polynomial::zero(n, d))
}

/// A random coefficient sequence p_i = x_i^d + (mixed terms), retried until
/// the quotient is Artinian.
fn random_sop(rng: &mut ChaCha8Rng, n: usize, d: usize) -> IdealGens {
    loop {
        let gens: Vec<Polynomial> = (0..n)
            .map(|i| {
                let power = Polynomial::monomial(Monomial::var_pow(n, i, d as u32), rat_int(1));
                let mixed: Vec<(Monomial, Rat)> = enumerate_monomials(n, d, MonomialOrder::Lex)
                    .into_iter()
                    .filter(|m| m.exps().iter().all(|&e| e < d as u32))
                    .map(|m| (m, rat_int(rng.gen_range(-2..=2))))
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                power
                    .add(&Polynomial::from_terms(n, d, mixed).unwrap_or_else(|_| Polynomial::zero(n, d)))
                    .unwrap()
            })
            .collect();
        let ideal = IdealGens::new(n, d, gens).unwrap();
        if contains_sop(&ideal) {
            return ideal;
        }
    }
}

fn random_monomial_ideal_with_powers(rng: &mut ChaCha8Rng, n: usize, d: usize) -> MonomialIdeal {
    let all = enumerate_monomials(n, d, MonomialOrder::Lex);
    let mut gens: Vec<Monomial> = (0..n).map(|i| Monomial::var_pow(n, i, d as u32)).collect();
    for m in all {
        if !gens.contains(&m) && rng.gen_bool(0.3) {
            gens.push(m);
        }
    }
    MonomialIdeal::new(n, gens).unwrap()
}

#[test]
fn criterion_8_property_suites() {
    gate("criterion 8 (property suites)", Duration::from_secs(600), || {
        suite_gorenstein_symmetry();
        suite_lex_plus_powers_domination();
        suite_threshold_vanishing_and_witness();
        suite_hilbert_one_then_zero();
        suite_colon_ideal_identity();
    });
}

/// Hilbert functions of Artinian quotients by parameter sequences are
/// symmetric about half the socle degree, with a one-dimensional socle.
fn suite_gorenstein_symmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(8001);
    let shapes = [(2usize, 2usize), (2, 3), (3, 2), (4, 2), (3, 3)];
    for case in 0..100 {
        let (n, d) = shapes[case % shapes.len()];
        let ideal = if case % 5 == 0 {
            // pure powers
            IdealGens::from_monomial(
                &MonomialIdeal::new(n, (0..n).map(|i| Monomial::var_pow(n, i, d as u32)).collect())
                    .unwrap(),
            )
            .unwrap()
        } else {
            random_sop(&mut rng, n, d)
        };
        let socle = n * (d - 1);
        let hf: Vec<usize> = (0..=socle).map(|k| hf_poly(&ideal, k)).collect();
        assert_eq!(hf[socle], 1, "case {}: socle dimension", case);
        for k in 0..=socle {
            assert_eq!(hf[k], hf[socle - k], "case {}: symmetry at {}", case, k);
        }
    }
}

/// The matched lex-plus-powers ideal dominates the Hilbert function of any
/// monomial ideal containing the pure powers, from the matching degree on.
fn suite_lex_plus_powers_domination() {
    let mut rng = ChaCha8Rng::seed_from_u64(8002);
    let shapes = [(2usize, 2usize), (2, 3), (3, 2), (3, 3), (4, 2), (4, 3)];
    for case in 0..200 {
        let (n, d) = shapes[case % shapes.len()];
        let m = random_monomial_ideal_with_powers(&mut rng, n, d);
        let s = d + rng.gen_range(0..=1);
        let target = hf_monomial(&m, s);
        let j = lpp_ideal(n, d, s, target).unwrap();
        for k in s..=n * (d - 1) {
            assert!(
                hf_monomial(&m, k) <= hf_monomial(&j, k),
                "case {} ({}, {}): domination fails at degree {}",
                case,
                n,
                d,
                k
            );
        }
    }
}

/// Any N(n,d,k) degree-d monomials containing the powers force vanishing at
/// degree k; the N-1 witness ideal never does.
fn suite_threshold_vanishing_and_witness() {
    let mut rng = ChaCha8Rng::seed_from_u64(8003);
    let mut triples = Vec::new();
    for n in 1..=6usize {
        for d in 2..=4usize {
            for k in d..=n * (d - 1) {
                triples.push((n, d, k));
            }
        }
    }
    for case in 0..200 {
        let &(n, d, k) = &triples[rng.gen_range(0..triples.len())];
        let bd = bound_data(n, d, k).unwrap();
        let mut pool: Vec<Monomial> = enumerate_monomials(n, d, MonomialOrder::Lex)
            .into_iter()
            .filter(|m| m.exps().iter().all(|&e| e < d as u32))
            .collect();
        let mut gens: Vec<Monomial> = (0..n).map(|i| Monomial::var_pow(n, i, d as u32)).collect();
        for _ in n..bd.n_threshold {
            let pick = rng.gen_range(0..pool.len());
            gens.push(pool.swap_remove(pick));
        }
        let ideal = MonomialIdeal::new(n, gens).unwrap();
        assert_eq!(hf_monomial(&ideal, k), 0, "case {} at ({}, {}, {})", case, n, d, k);
    }
    for &(n, d, k) in &triples {
        let w = witness_ideal(n, d, k).unwrap();
        assert!(hf_monomial(&w, k) >= 1, "witness vanishes at ({}, {}, {})", n, d, k);
    }
}

/// Once the Hilbert function of an ideal with an Artinian quotient reaches 1
/// before degree d(n-1), it drops to 0 in the next degree.
fn suite_hilbert_one_then_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(8004);
    let shapes = [(2usize, 2usize), (2, 3), (3, 2), (3, 3), (4, 2)];
    let mut found = 0;
    let mut attempts = 0;
    while found < 100 {
        attempts += 1;
        assert!(attempts < 5000, "could not assemble 100 instances");
        let (n, d) = shapes[attempts % shapes.len()];
        let mut gens = random_sop(&mut rng, n, d).generators().to_vec();
        for _ in 0..rng.gen_range(0..=2usize) {
            let p = random_poly(&mut rng, n, d);
            if !p.is_zero() {
                gens.push(p);
            }
        }
        let ideal = IdealGens::new(n, d, gens).unwrap();
        for k in d..d * (n - 1) {
            if hf_poly(&ideal, k) == 1 {
                assert_eq!(
                    hf_poly(&ideal, k + 1),
                    0,
                    "attempt {} ({}, {}): HF stays positive after 1 at degree {}",
                    attempts,
                    n,
                    d,
                    k
                );
                found += 1;
                break;
            }
        }
    }
}

/// For a parameter-sequence ideal J inside a larger ideal I, the Hilbert
/// functions satisfy HF_t(J) = HF_t(I) + HF_{socle - t}(J : I).
fn suite_colon_ideal_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(8005);
    let shapes = [(2usize, 2usize), (2, 3), (3, 2), (3, 3)];
    for case in 0..50 {
        let (n, d) = shapes[case % shapes.len()];
        let j = random_sop(&mut rng, n, d);
        let mut gens = j.generators().to_vec();
        for _ in 0..rng.gen_range(0..=2usize) {
            let p = random_poly(&mut rng, n, d);
            if !p.is_zero() {
                gens.push(p);
            }
        }
        let i = IdealGens::new(n, d, gens).unwrap();
        let socle = n * (d - 1);
        let t = rng.gen_range(0..=socle);
        let (_, hf_colon) = colon_component(&j, &i, socle - t).unwrap();
        assert_eq!(
            hf_poly(&j, t),
            hf_poly(&i, t) + hf_colon,
            "case {} ({}, {}): identity fails at t = {}",
            case,
            n,
            d,
            t
        );
    }
}

#[test]
fn criterion_9_rank_bound_compliance() {
    gate("criterion 9 (rank bound compliance)", Duration::from_secs(600), || {
        let by_key: HashMap<&str, (usize, usize)> = registry()
            .iter()
            .map(|e| (e.key, (e.decomposition.n, e.decomposition.d)))
            .collect();
        for seed in [42u64, 7, 2024] {
            for (key, report) in reports_for(seed).iter() {
                let (n, d) = by_key[key.as_str()];
                let bound = bound_data(n, d, 2 * d).unwrap().n_threshold - 1;
                assert!(
                    report.max_rank <= bound,
                    "{} (seed {}): rank {} exceeds bound {}",
                    key,
                    seed,
                    report.max_rank,
                    bound
                );
            }
        }
    });
}

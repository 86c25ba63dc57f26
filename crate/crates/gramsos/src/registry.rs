//! Named example registry: the sum-of-squares decompositions studied for
//! the (5,4), (4,6) and (6,4) cases, with their published verdicts
//! (boundary membership, strict positivity, maximum rank, uniqueness).

use crate::gram::SosDecomposition;
use crate::poly::parse_poly;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Expected {
    pub on_boundary: bool,
    pub strictly_positive: bool,
    pub max_rank: usize,
    pub unique_point: bool,
}

#[derive(Debug, Clone)]
pub struct ExampleEntry {
    pub key: &'static str,
    pub description: &'static str,
    pub decomposition: SosDecomposition,
    pub expected: Expected,
}

fn entry(
    key: &'static str,
    description: &'static str,
    n: usize,
    polys: &[&str],
    max_rank: usize,
    unique_point: bool,
) -> ExampleEntry {
    let parsed = polys
        .iter()
        .map(|s| parse_poly(s, n).expect("registry polynomial parses"))
        .collect();
    ExampleEntry {
        key,
        description,
        decomposition: SosDecomposition::new(parsed).expect("registry decomposition is valid"),
        expected: Expected {
            on_boundary: true,
            strictly_positive: true,
            max_rank,
            unique_point,
        },
    }
}

const P54_BASE: [&str; 4] = [
    "x1^2 - x4^2",
    "x2^2 - x4^2",
    "x3^2 - x4^2",
    "-x1^2 - x1*x2 - x1*x3 + x1*x4 - x2*x3 + x2*x4 + x3*x4",
];

const P46_BASE: [&str; 4] = [
    "3/2*x1^3 - x1*x2^2 - x1*x3^2 - x1*x4^2",
    "3/2*x2^3 - x1^2*x2 - x2*x3^2 - x2*x4^2",
    "3/2*x3^3 - x1^2*x3 - x2^2*x3 - x3*x4^2",
    "3/2*x4^3 - x1^2*x4 - x2^2*x4 - x3^2*x4",
];

fn with_extra(base: &[&'static str], extra: &[&'static str]) -> Vec<&'static str> {
    base.iter().chain(extra).copied().collect()
}

/// All registered examples, in a stable order.
pub fn registry() -> Vec<ExampleEntry> {
    vec![
        entry(
            "ex1:54",
            "five squares in five variables with a unique rank-5 Gram matrix",
            5,
            &with_extra(&P54_BASE, &["x5^2"]),
            5,
            true,
        ),
        entry(
            "ex2:54",
            "six squares in five variables reaching the maximal rank 9",
            5,
            &with_extra(&P54_BASE, &["x5^2", "x4*x5"]),
            9,
            false,
        ),
        entry(
            "ex3:54",
            "six squares in five variables with a unique rank-6 Gram matrix",
            5,
            &with_extra(&P54_BASE, &["x5^2", "x1*x5 + x4*x5"]),
            6,
            true,
        ),
        entry(
            "reznick46",
            "four symmetric cubics in four variables with a unique decomposition",
            4,
            &P46_BASE,
            4,
            true,
        ),
        entry(
            "ex1:46",
            "perturbation of the symmetric cubics preserving uniqueness",
            4,
            &[
                "3/2*x1^3 - x1*x2^2 - x1*x3^2 - x1*x4^2",
                "3/2*x2^3 - x1^2*x2 - x2*x3^2 - x2*x4^2",
                "3/2*x3^3 - x2^2*x3 - x3*x4^2",
                "x4^3 - x1^2*x4 - x3^2*x4",
            ],
            4,
            true,
        ),
        entry(
            "ex2:46",
            "five squares in four variables with a unique rank-5 Gram matrix",
            4,
            &with_extra(&P46_BASE, &["x2*x3*x4"]),
            5,
            true,
        ),
        entry(
            "ex3:46",
            "five squares in four variables with maximal rank 8",
            4,
            &with_extra(&P46_BASE, &["x2^2*x3"]),
            8,
            false,
        ),
        entry(
            "ex4:46",
            "five squares in four variables reaching the rank bound 13",
            4,
            &with_extra(&P46_BASE, &["x3^3"]),
            13,
            false,
        ),
        entry(
            "ex1:64",
            "five squares in six variables with a complex common root",
            6,
            &with_extra(&P54_BASE, &["x5^2 + x6^2"]),
            // (x5^2 + x6^2)^2 = (x5^2)^2 + (x6^2)^2 + 2 (x5 x6)^2 opens a
            // one-parameter family, whose interior points have rank 7
            7,
            false,
        ),
        entry(
            "ex2:64a",
            "five squares in six variables with a unique rank-5 Gram matrix",
            6,
            &with_extra(&P54_BASE, &["x5^2 + x6^2 - x4^2"]),
            5,
            true,
        ),
        entry(
            "ex2:64b",
            "six squares in six variables with a unique rank-6 Gram matrix",
            6,
            &with_extra(&P54_BASE, &["x5^2 - x4^2", "x6^2"]),
            6,
            true,
        ),
        entry(
            "ex2:64c",
            "seven squares in six variables with maximal rank 11",
            6,
            &with_extra(&P54_BASE, &["x5^2", "x6^2", "x5*x6 + x1*x5"]),
            11,
            false,
        ),
        entry(
            "ex2:64d",
            "eight squares in six variables reaching the rank bound 15",
            6,
            &with_extra(&P54_BASE, &["x5^2", "x6^2", "x5*x6 + x1*x5", "x2*x6"]),
            15,
            false,
        ),
    ]
}

/// Look up one registry entry by key.
pub fn get(key: &str) -> Result<ExampleEntry> {
    registry()
        .into_iter()
        .find(|e| e.key == key)
        .ok_or_else(|| Error::Domain(format!("unknown example key '{}'", key)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gram::{expand_sos, gram_from_sos};

    #[test]
    fn thirteen_unique_keys() {
        let r = registry();
        assert_eq!(r.len(), 13);
        let mut keys: Vec<&str> = r.iter().map(|e| e.key).collect();
        keys.sort_unstable();
        keys.dedup();
        assert_eq!(keys.len(), 13);
    }

    #[test]
    fn lookup_known_and_unknown() {
        assert_eq!(get("ex2:54").unwrap().expected.max_rank, 9);
        assert!(get("nope").is_err());
    }

    #[test]
    fn decompositions_expand_exactly() {
        for e in registry() {
            let f = expand_sos(&e.decomposition);
            assert!(!f.is_zero(), "{}", e.key);
            assert_eq!(f.degree(), 2 * e.decomposition.d, "{}", e.key);
        }
    }

    #[test]
    fn base_gram_rank_of_first_example() {
        let e = get("ex1:54").unwrap();
        let (_, rank) = gram_from_sos(&e.decomposition);
        assert_eq!(rank, 5);
    }

    #[test]
    fn symmetric_cubics_leading_coefficient() {
        let e = get("reznick46").unwrap();
        let f = expand_sos(&e.decomposition);
        let m = crate::monomial::Monomial::var_pow(4, 0, 6);
        assert_eq!(f.coeff(&m), crate::rat(9, 4));
    }

    #[test]
    fn complex_root_example_vanishes() {
        let e = get("ex1:64").unwrap();
        assert!(crate::analyze::vanishes_at_imaginary_point(
            &e.decomposition.polys,
            &[0, 1, 2, 3],
            4,
            5
        ));
    }
}

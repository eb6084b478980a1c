//! Witness permutations with known fertility, one family per pattern, and
//! their explicit preimage lists.
//!
//! Families for 123, 312 and 213 are written out directly. The other three
//! are the complements of those, since complementing both the pattern and
//! the permutation preserves fertility.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{Pattern3, Permutation};

/// A parameterized target `π(n)` of length `n + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ConstructionFamily {
    pub sigma: Pattern3,
}

impl ConstructionFamily {
    pub fn new(sigma: Pattern3) -> Self {
        ConstructionFamily { sigma }
    }

    pub fn min_n(&self) -> usize {
        if is_213_like(self.sigma) {
            6
        } else {
            1
        }
    }

    pub fn expected_fertility(&self, n: usize) -> u64 {
        if is_213_like(self.sigma) {
            n as u64 - 1
        } else {
            n as u64
        }
    }

    pub fn target(&self, n: usize) -> Result<Permutation> {
        construct(self.sigma, n)
    }

    pub fn preimages(&self, n: usize) -> Result<Vec<Permutation>> {
        construct_preimages(self.sigma, n)
    }
}

fn is_213_like(sigma: Pattern3) -> bool {
    sigma == Pattern3::P213 || sigma == Pattern3::P231
}

/// The directly written family that `sigma`'s family is derived from, and
/// whether a complement is needed.
fn base_pattern(sigma: Pattern3) -> (Pattern3, bool) {
    match sigma {
        Pattern3::P123 | Pattern3::P312 | Pattern3::P213 => (sigma, false),
        other => (other.complement(), true),
    }
}

fn check_n(sigma: Pattern3, n: usize) -> Result<()> {
    let min = ConstructionFamily::new(sigma).min_n();
    if n < min {
        return Err(Error::invalid(format!(
            "the {sigma} family needs n >= {min}, got n = {n}"
        )));
    }
    Ok(())
}

fn perm(entries: Vec<u32>) -> Permutation {
    Permutation::from_vec_unchecked(entries)
}

fn base_target(sigma: Pattern3, n: u32) -> Vec<u32> {
    match sigma {
        // n (n-1) ... 2 1 (n+1)
        Pattern3::P123 => (1..=n).rev().chain([n + 1]).collect(),
        // 1 2 ... (n-1) (n+1) n
        Pattern3::P312 => (1..n).chain([n + 1, n]).collect(),
        // 1 2 ... (n-4) (n-2) (n-3) (n-1) n (n+1)
        Pattern3::P213 => (1..=n - 4).chain([n - 2, n - 3, n - 1, n, n + 1]).collect(),
        _ => unreachable!("not a base family"),
    }
}

fn base_preimages(sigma: Pattern3, n: u32) -> Vec<Vec<u32>> {
    match sigma {
        // (n+1) n ... (n-m+1) 1 2 ... (n-m), m = 0..n-1
        Pattern3::P123 => (0..n)
            .map(|m| {
                [n + 1]
                    .into_iter()
                    .chain((n - m + 1..=n).rev())
                    .chain(1..=n - m)
                    .collect()
            })
            .collect(),
        // n m (m-1) ... 1 (n+1) (n-1) ... (m+1), m = 0..n-1
        Pattern3::P312 => (0..n)
            .map(|m| {
                [n].into_iter()
                    .chain((1..=m).rev())
                    .chain([n + 1])
                    .chain((m + 1..n).rev())
                    .collect()
            })
            .collect(),
        Pattern3::P213 => {
            let head = || [n + 1].into_iter().chain(1..=n - 4);
            let mut out = vec![head().chain([n - 2, n, n - 3, n - 1]).collect()];
            let base: Vec<u32> = head().chain([n - 2, n - 1, n - 3]).collect();
            let limit = base.iter().position(|&x| x == n - 1).expect("n-1 present");
            for slot in 1..=limit {
                let mut tau = base.clone();
                tau.insert(slot, n);
                out.push(tau);
            }
            out
        }
        _ => unreachable!("not a base family"),
    }
}

/// The family's target permutation of length `n + 1`.
pub fn construct(sigma: Pattern3, n: usize) -> Result<Permutation> {
    check_n(sigma, n)?;
    let (base, flip) = base_pattern(sigma);
    let target = perm(base_target(base, n as u32));
    Ok(if flip { target.complement() } else { target })
}

/// Explicit preimages of [`construct`]`(sigma, n)`, sorted.
pub fn construct_preimages(sigma: Pattern3, n: usize) -> Result<Vec<Permutation>> {
    check_n(sigma, n)?;
    let (base, flip) = base_pattern(sigma);
    let mut list: Vec<Permutation> = base_preimages(base, n as u32)
        .into_iter()
        .map(|v| {
            let p = perm(v);
            if flip {
                p.complement()
            } else {
                p
            }
        })
        .collect();
    list.sort_unstable();
    Ok(list)
}

/// Some permutation whose fertility under `sigma` is exactly `f >= 1`.
pub fn small_witness(sigma: Pattern3, f: usize) -> Result<Permutation> {
    if f == 0 {
        return Err(Error::invalid("witnesses exist only for fertility f >= 1"));
    }
    if !is_213_like(sigma) {
        return construct(sigma, f);
    }
    if f >= 5 {
        return construct(sigma, f + 1);
    }
    let table = ["4321", "1243", "13524", "1234"];
    let p: Permutation = table[f - 1].parse().expect("valid literal");
    Ok(if sigma == Pattern3::P231 {
        p.complement()
    } else {
        p
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// The table's printed forms for the complement rows, written out
    /// literally rather than via `complement`.
    fn printed_target(sigma: Pattern3, n: u32) -> Vec<u32> {
        match sigma {
            // 2 3 ... n (n+1) 1
            Pattern3::P321 => (2..=n + 1).chain([1]).collect(),
            // (n+1) n ... 3 1 2
            Pattern3::P132 => (3..=n + 1).rev().chain([1, 2]).collect(),
            // (n+1) n ... 6 4 5 3 2 1
            Pattern3::P231 => (6..=n + 1).rev().chain([4, 5, 3, 2, 1]).collect(),
            _ => unreachable!(),
        }
    }

    #[test]
    fn table_rows() {
        assert_eq!(construct(Pattern3::P123, 3).unwrap(), p("3214"));
        assert_eq!(construct(Pattern3::P321, 3).unwrap(), p("2341"));
        assert_eq!(construct(Pattern3::P312, 3).unwrap(), p("1243"));
        assert_eq!(construct(Pattern3::P132, 3).unwrap(), p("4312"));
        assert_eq!(construct(Pattern3::P213, 6).unwrap(), p("1243567"));
        assert_eq!(construct(Pattern3::P231, 6).unwrap(), p("7645321"));
        assert_eq!(construct(Pattern3::P123, 1).unwrap(), p("12"));
        assert_eq!(construct(Pattern3::P312, 1).unwrap(), p("21"));
    }

    #[test]
    fn complement_rows_match_printed_forms() {
        for sigma in [Pattern3::P321, Pattern3::P132] {
            for n in 2..=12 {
                let got = construct(sigma, n).unwrap();
                assert_eq!(
                    got.entries(),
                    printed_target(sigma, n as u32),
                    "{sigma} n={n}"
                );
            }
        }
        for n in 6..=12 {
            let got = construct(Pattern3::P231, n).unwrap();
            assert_eq!(got.entries(), printed_target(Pattern3::P231, n as u32));
        }
    }

    #[test]
    fn complement_coherence() {
        for sigma in Pattern3::ALL {
            let fam = ConstructionFamily::new(sigma);
            for n in fam.min_n()..=10 {
                let a = construct(sigma, n).unwrap();
                let b = construct(sigma.complement(), n).unwrap();
                assert_eq!(a, b.complement());
                let mut la: Vec<_> = construct_preimages(sigma.complement(), n)
                    .unwrap()
                    .iter()
                    .map(Permutation::complement)
                    .collect();
                la.sort();
                assert_eq!(la, construct_preimages(sigma, n).unwrap());
                assert_eq!(a.len(), n + 1);
                assert_eq!(la.len() as u64, fam.expected_fertility(n));
            }
        }
    }

    #[test]
    fn explicit_lists_small_n() {
        assert_eq!(
            construct_preimages(Pattern3::P123, 3).unwrap(),
            vec![p("4123"), p("4312"), p("4321")]
        );
        assert_eq!(
            construct_preimages(Pattern3::P312, 3).unwrap(),
            vec![p("3142"), p("3214"), p("3421")]
        );
        let l = construct_preimages(Pattern3::P213, 6).unwrap();
        assert_eq!(l.len(), 5);
        assert!(l.contains(&p("7124635")));
        assert!(l.contains(&p("7124653")));
        assert!(l.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn below_minimum_is_rejected() {
        for sigma in [Pattern3::P213, Pattern3::P231] {
            let err = construct(sigma, 5).unwrap_err();
            assert!(err.to_string().contains("n >= 6"), "{err}");
            assert!(construct_preimages(sigma, 5).is_err());
        }
        assert!(construct(Pattern3::P123, 0).is_err());
        assert!(small_witness(Pattern3::P123, 0).is_err());
    }

    #[test]
    fn small_witness_lookup() {
        assert_eq!(small_witness(Pattern3::P213, 1).unwrap(), p("4321"));
        assert_eq!(small_witness(Pattern3::P213, 3).unwrap(), p("13524"));
        assert_eq!(small_witness(Pattern3::P231, 1).unwrap(), p("1234"));
        assert_eq!(small_witness(Pattern3::P213, 5).unwrap(), p("1243567"));
        assert_eq!(small_witness(Pattern3::P123, 3).unwrap(), p("3214"));
    }
}

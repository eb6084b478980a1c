//! Reproducibility harness: each claim is an executable check over an
//! exhaustive range of inputs, reported as pass or fail with the first
//! counterexample found.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{construct, construct_preimages, small_witness, ConstructionFamily};
use crate::error::{Error, Result};
use crate::fertility::{fertility, preimages, spectrum, EnumerationOptions};
use crate::machine::{cro, sc_map, sc_trace, MachineTrace};
use crate::perm::{all_permutations, factorial, Pattern3, Permutation};

pub const MIN_MAX_N: usize = 3;
pub const MAX_MAX_N: usize = 9;

/// Claims in report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClaimId {
    Figure1,
    Lemma1,
    Lemma5,
    Lemma23,
    Theorem1,
    Corollary1,
    Theorem3,
    Theorem4,
    Theorem5,
    Lemma4Order,
    TableSmall213,
    FertilityNumbers,
}

impl ClaimId {
    pub const ALL: [ClaimId; 12] = [
        ClaimId::Figure1,
        ClaimId::Lemma1,
        ClaimId::Lemma5,
        ClaimId::Lemma23,
        ClaimId::Theorem1,
        ClaimId::Corollary1,
        ClaimId::Theorem3,
        ClaimId::Theorem4,
        ClaimId::Theorem5,
        ClaimId::Lemma4Order,
        ClaimId::TableSmall213,
        ClaimId::FertilityNumbers,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::Figure1 => "figure1",
            ClaimId::Lemma1 => "lemma1",
            ClaimId::Lemma5 => "lemma5",
            ClaimId::Lemma23 => "lemma23",
            ClaimId::Theorem1 => "theorem1",
            ClaimId::Corollary1 => "corollary1",
            ClaimId::Theorem3 => "theorem3",
            ClaimId::Theorem4 => "theorem4",
            ClaimId::Theorem5 => "theorem5",
            ClaimId::Lemma4Order => "lemma4_order",
            ClaimId::TableSmall213 => "table_small_213",
            ClaimId::FertilityNumbers => "fertility_numbers",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str() == s.trim())
            .ok_or_else(|| Error::invalid(format!("unknown claim identifier `{s}`")))
    }
}

impl Serialize for ClaimId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// `all` or a comma-separated list of claim identifiers.
pub fn parse_selection(s: &str) -> Result<BTreeSet<ClaimId>> {
    if s.trim() == "all" {
        return Ok(ClaimId::ALL.into_iter().collect());
    }
    let set: BTreeSet<ClaimId> = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect::<Result<_>>()?;
    if set.is_empty() {
        return Err(Error::invalid("no claims selected"));
    }
    Ok(set)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub inputs: String,
    pub observed: String,
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimResult {
    pub claim_id: ClaimId,
    pub scope: String,
    pub status: Status,
    pub counterexample: Option<Counterexample>,
}

impl ClaimResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

type Check = std::result::Result<(), Counterexample>;

fn mismatch(
    inputs: impl fmt::Display,
    observed: impl fmt::Display,
    expected: impl fmt::Display,
) -> Counterexample {
    Counterexample {
        inputs: inputs.to_string(),
        observed: observed.to_string(),
        expected: expected.to_string(),
    }
}

fn finish(claim_id: ClaimId, scope: String, check: Check) -> ClaimResult {
    match check {
        Ok(()) => ClaimResult {
            claim_id,
            scope,
            status: Status::Pass,
            counterexample: None,
        },
        Err(c) => ClaimResult {
            claim_id,
            scope,
            status: Status::Fail,
            counterexample: Some(c),
        },
    }
}

/// Runs `check` over every `(σ, τ)` with `τ ∈ S_n`, `n ∈ lengths`, stopping
/// at the first failure.
fn exhaustive<F>(lengths: std::ops::RangeInclusive<usize>, check: F) -> Check
where
    F: Fn(Pattern3, &Permutation) -> Check + Sync,
{
    for n in lengths {
        Pattern3::ALL
            .par_iter()
            .map(|&sigma| all_permutations(n).try_for_each(|tau| check(sigma, &tau)))
            .collect::<Vec<_>>()
            .into_iter()
            .collect::<Check>()?;
    }
    Ok(())
}

fn runs(lengths: std::ops::RangeInclusive<usize>) -> u64 {
    6 * lengths.map(factorial).sum::<u64>()
}

fn fmt_values(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn fmt_list(v: &[Permutation]) -> String {
    let items: Vec<String> = v.iter().map(Permutation::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

/// The worked example: `SC_213(52413) = 21345`, CRO 2, pattern pops 2 then 1.
/// `run` supplies the traces, so a mutated machine can be checked too.
pub fn check_figure1_with<F>(run: F) -> ClaimResult
where
    F: Fn(Pattern3, &Permutation) -> MachineTrace,
{
    let tau: Permutation = "52413".parse().expect("literal");
    let t = run(Pattern3::P213, &tau);
    let observed = format!(
        "output {}, CRO {}, pattern pops ({})",
        t.output,
        t.cro(),
        fmt_values(&t.sigma_pop_values())
    );
    let expected = "output 21345, CRO 2, pattern pops (2,1)";
    let check = if observed == expected {
        Ok(())
    } else {
        Err(mismatch("sigma=213 tau=52413", observed, expected))
    };
    finish(ClaimId::Figure1, "sigma=213, tau=52413".into(), check)
}

fn lemma1(max_n: usize) -> ClaimResult {
    let check = exhaustive(1..=max_n, |sigma, tau| {
        sc_trace(sigma, tau)
            .check_invariants()
            .map_err(|e| mismatch(format!("sigma={sigma} tau={tau}"), e, "consistent trace"))
    });
    finish(
        ClaimId::Lemma1,
        format!(
            "trace invariants, all sigma, n=1..={max_n} ({} traces)",
            runs(1..=max_n)
        ),
        check,
    )
}

fn lemma5(max_n: usize) -> ClaimResult {
    let check = exhaustive(2..=max_n, |sigma, tau| {
        let out = sc_map(sigma, tau);
        if out.last() == tau.first() {
            Ok(())
        } else {
            Err(mismatch(
                format!("sigma={sigma} tau={tau}"),
                format!("last output entry {}", out.last()),
                format!("{}", tau.first()),
            ))
        }
    });
    finish(
        ClaimId::Lemma5,
        format!("all sigma, n=2..={max_n} ({} runs)", runs(2..=max_n)),
        check,
    )
}

fn lemma23(max_n: usize) -> ClaimResult {
    let check = exhaustive(1..=max_n, |sigma, tau| {
        let t = sc_trace(sigma, tau);
        let k = t.cro();
        let reversed = t.output == tau.reverse();
        if (k == 0) != reversed {
            return Err(mismatch(
                format!("sigma={sigma} tau={tau}"),
                format!("CRO {k}, output {}", t.output),
                "CRO = 0 exactly when output = reverse(tau)",
            ));
        }
        let mut combination = t.combination_view(k).expect("k <= pops").entries;
        combination.reverse();
        if t.output.entries()[k..] != combination[..] {
            return Err(mismatch(
                format!("sigma={sigma} tau={tau}"),
                format!("output suffix {}", fmt_values(&t.output.entries()[k..])),
                format!("reversed combination {}", fmt_values(&combination)),
            ));
        }
        Ok(())
    });
    finish(
        ClaimId::Lemma23,
        format!(
            "CRO=0 iff reverse, and post-CRO suffix = reversed combination; all sigma, n=1..={max_n}"
        ),
        check,
    )
}

fn theorem1(max_n: usize) -> ClaimResult {
    let check = exhaustive(1..=max_n, |sigma, tau| {
        let lhs = sc_map(sigma.complement(), &tau.complement());
        let rhs = sc_map(sigma, tau).complement();
        if lhs == rhs {
            Ok(())
        } else {
            Err(mismatch(format!("sigma={sigma} tau={tau}"), lhs, rhs))
        }
    });
    finish(
        ClaimId::Theorem1,
        format!(
            "SC_comp(sigma)(comp tau) = comp SC_sigma(tau); all sigma, n=1..={max_n} ({} pairs)",
            runs(1..=max_n)
        ),
        check,
    )
}

fn corollary1(max_n: usize) -> ClaimResult {
    let check = (1..=max_n).try_for_each(|n| {
        let tables: Vec<_> = Pattern3::ALL
            .par_iter()
            .map(|&s| spectrum(s, n, false).expect("n within limit"))
            .collect();
        for (i, sigma) in Pattern3::ALL.into_iter().enumerate() {
            let j = Pattern3::ALL
                .iter()
                .position(|&s| s == sigma.complement())
                .expect("complement is a pattern");
            for (pi, f) in tables[i].iter() {
                let g = tables[j].fertility_of(&pi.complement()).expect("same n");
                if f != g {
                    return Err(mismatch(
                        format!("sigma={sigma} pi={pi}"),
                        format!("fertility {f} vs complement {g}"),
                        "equal",
                    ));
                }
            }
        }
        Ok(())
    });
    finish(
        ClaimId::Corollary1,
        format!("fertility(sigma, pi) = fertility(comp sigma, comp pi); all sigma, all pi, n=1..={max_n}"),
        check,
    )
}

/// `fertility(σ, construct(σ, n))` and the brute-force preimage set against
/// the explicit list.
fn family_check(sigma: Pattern3, n: usize) -> Check {
    let fam = ConstructionFamily::new(sigma);
    let target = construct(sigma, n).expect("n >= min_n");
    let inputs = format!("sigma={sigma} n={n} pi={target}");
    let found = preimages(sigma, &target, EnumerationOptions::default())
        .expect("within limit")
        .preimages
        .expect("list requested");
    let expected = fam.expected_fertility(n);
    if found.len() as u64 != expected {
        return Err(mismatch(
            inputs,
            format!("fertility {}", found.len()),
            expected,
        ));
    }
    let listed = construct_preimages(sigma, n).expect("n >= min_n");
    if found != listed {
        return Err(mismatch(inputs, fmt_list(&found), fmt_list(&listed)));
    }
    Ok(())
}

fn family_claim(claim: ClaimId, patterns: [Pattern3; 2], ns: Vec<usize>) -> ClaimResult {
    let scope = format!(
        "sigma in {{{}, {}}}, n in {}..={}, brute force vs explicit list",
        patterns[0],
        patterns[1],
        ns.first().copied().unwrap_or(0),
        ns.last().copied().unwrap_or(0)
    );
    let check = patterns
        .into_iter()
        .flat_map(|s| ns.iter().map(move |&n| (s, n)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(s, n)| family_check(s, n))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    finish(claim, scope, check)
}

fn lemma4_order() -> ClaimResult {
    let check = [Pattern3::P213, Pattern3::P231]
        .into_iter()
        .flat_map(|s| [6, 7].map(|n| (s, n)))
        .try_for_each(|(sigma, n)| {
            let pi = construct(sigma, n).expect("n >= 6");
            let list = preimages(sigma, &pi, EnumerationOptions::default())
                .expect("within limit")
                .preimages
                .expect("list requested");
            list.iter().try_for_each(|tau| {
                let k = cro(sigma, tau);
                let pos = tau.positions();
                let idx: Vec<usize> = pi.entries()[..k]
                    .iter()
                    .map(|&v| pos[v as usize - 1])
                    .collect();
                if idx.windows(2).all(|w| w[0] < w[1]) {
                    Ok(())
                } else {
                    Err(mismatch(
                        format!("sigma={sigma} pi={pi} tau={tau} CRO={k}"),
                        format!("positions {:?}", idx),
                        "increasing",
                    ))
                }
            })
        });
    finish(
        ClaimId::Lemma4Order,
        "sigma in {213, 231}, n in {6, 7}, every brute-force preimage".into(),
        check,
    )
}

fn table_small_213() -> ClaimResult {
    let cases = [("4321", 1u64), ("1243", 2), ("13524", 3), ("1234", 4)];
    let check = cases.iter().try_for_each(|&(s, f)| {
        let pi: Permutation = s.parse().expect("literal");
        let got = fertility(Pattern3::P213, &pi).expect("small");
        if got == f {
            Ok(())
        } else {
            Err(mismatch(format!("sigma=213 pi={pi}"), got, f))
        }
    });
    finish(
        ClaimId::TableSmall213,
        "sigma=213, pi in {4321, 1243, 13524, 1234}".into(),
        check,
    )
}

fn fertility_numbers(max_f: usize) -> ClaimResult {
    let jobs: Vec<(Pattern3, usize)> = Pattern3::ALL
        .into_iter()
        .flat_map(|s| (1..=max_f).map(move |f| (s, f)))
        .collect();
    let check = jobs
        .into_par_iter()
        .map(|(sigma, f)| {
            let pi = small_witness(sigma, f).expect("f >= 1");
            let got = fertility(sigma, &pi).expect("within limit");
            if got == f as u64 {
                Ok(())
            } else {
                Err(mismatch(format!("sigma={sigma} f={f} pi={pi}"), got, f))
            }
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    finish(
        ClaimId::FertilityNumbers,
        format!("every sigma has a witness of fertility f for f=1..={max_f}"),
        check,
    )
}

fn run_one(claim: ClaimId, max_n: usize) -> ClaimResult {
    match claim {
        ClaimId::Figure1 => check_figure1_with(sc_trace),
        ClaimId::Lemma1 => lemma1(max_n),
        ClaimId::Lemma5 => lemma5(max_n),
        ClaimId::Lemma23 => lemma23(max_n),
        ClaimId::Theorem1 => theorem1(max_n),
        ClaimId::Corollary1 => corollary1(max_n),
        ClaimId::Theorem3 => family_claim(
            ClaimId::Theorem3,
            [Pattern3::P123, Pattern3::P321],
            (1..max_n).collect(),
        ),
        ClaimId::Theorem4 => family_claim(
            ClaimId::Theorem4,
            [Pattern3::P312, Pattern3::P132],
            (1..max_n).collect(),
        ),
        ClaimId::Theorem5 => family_claim(
            ClaimId::Theorem5,
            [Pattern3::P213, Pattern3::P231],
            vec![6, 7],
        ),
        ClaimId::Lemma4Order => lemma4_order(),
        ClaimId::TableSmall213 => table_small_213(),
        ClaimId::FertilityNumbers => fertility_numbers(max_n),
    }
}

/// Evaluates the selected claims. Results come back in [`ClaimId::ALL`]
/// order regardless of scheduling.
pub fn run_claims(max_n: usize, selection: &BTreeSet<ClaimId>) -> Result<Vec<ClaimResult>> {
    if !(MIN_MAX_N..=MAX_MAX_N).contains(&max_n) {
        return Err(Error::invalid(format!(
            "max_n must lie in {MIN_MAX_N}..={MAX_MAX_N}, got {max_n}"
        )));
    }
    let mut results: Vec<ClaimResult> = selection.par_iter().map(|&c| run_one(c, max_n)).collect();
    results.sort_by_key(|r| r.claim_id);
    Ok(results)
}

/// Human-readable table, one row per claim.
pub fn render_text(results: &[ClaimResult]) -> String {
    let width = results
        .iter()
        .map(|r| r.claim_id.as_str().len())
        .max()
        .unwrap_or(5)
        .max(5);
    let mut out = format!("{:<width$}  STATUS  SCOPE\n", "CLAIM");
    for r in results {
        let status = match r.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
        };
        out.push_str(&format!(
            "{:<width$}  {:<6}  {}\n",
            r.claim_id.as_str(),
            status,
            r.scope
        ));
        if let Some(c) = &r.counterexample {
            out.push_str(&format!(
                "{:width$}  counterexample: {}; observed {}; expected {}\n",
                "", c.inputs, c.observed, c.expected
            ));
        }
    }
    let failed = results.iter().filter(|r| !r.passed()).count();
    out.push_str(&format!("{} claims, {} failed\n", results.len(), failed));
    out
}

pub fn render_json(results: &[ClaimResult]) -> String {
    serde_json::to_string_pretty(results).expect("plain data serializes")
}

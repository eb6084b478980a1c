//! Preimage enumeration and fertility numbers.
//!
//! Everything here is brute force over `S_n` in lexicographic order. Two
//! facts keep it affordable:
//!
//! * the last output entry of `SC_σ` is always the first input entry, so a
//!   preimage search can fix `τ₁ = π_n` and sweep only `(n-1)!` inputs;
//! * [`Machine::maps_to`] abandons a run at the first popped entry that
//!   disagrees with the target.
//!
//! Work is split by input prefix across rayon workers. Each worker sweeps
//! its block in lexicographic order and blocks are concatenated in prefix
//! order, so results are identical to a single-threaded run.

use std::collections::BTreeMap;
use std::io;
use std::sync::atomic::{AtomicU32, Ordering};

use rayon::prelude::*;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::machine::Machine;
use crate::perm::{factorial, lex_rank, next_permutation, Pattern3, Permutation};

/// Largest `n` enumerated without an explicit override (`11! ≈ 4·10⁷` runs).
pub const ENUMERATION_LIMIT: usize = 11;

/// Below this length the sweep runs on the calling thread.
const PARALLEL_THRESHOLD: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Restrict the sweep to inputs starting with the target's last entry.
    pub prune: bool,
    /// Allow `n` above [`ENUMERATION_LIMIT`].
    pub force: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            prune: true,
            force: false,
        }
    }
}

impl EnumerationOptions {
    pub fn unpruned() -> Self {
        EnumerationOptions {
            prune: false,
            ..Self::default()
        }
    }

    pub fn forced(mut self, force: bool) -> Self {
        self.force = force;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FertilityReport {
    pub sigma: Pattern3,
    pub target: Permutation,
    pub count: u64,
    /// Sorted lexicographically when present.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preimages: Option<Vec<Permutation>>,
}

fn check_limit(n: usize, force: bool) -> Result<()> {
    if n > ENUMERATION_LIMIT && !force {
        return Err(Error::ResourceLimit {
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    if n > 20 {
        return Err(Error::invalid(format!(
            "n = {n} is beyond what exhaustive enumeration can address"
        )));
    }
    Ok(())
}

/// Calls `visit` on every permutation of `1..=n` that starts with `prefix`,
/// in lexicographic order, reusing one buffer.
fn sweep_prefix<F: FnMut(&[u32])>(n: usize, prefix: &[u32], mut visit: F) {
    let mut buf = Vec::with_capacity(n);
    buf.extend_from_slice(prefix);
    buf.extend((1..=n as u32).filter(|x| !prefix.contains(x)));
    let k = prefix.len();
    loop {
        visit(&buf);
        if !next_permutation(&mut buf[k..]) {
            break;
        }
    }
}

/// Prefixes that split the sweep into independent blocks, in
/// lexicographic order. `base` is an already-fixed prefix.
fn blocks(n: usize, base: &[u32]) -> Vec<Vec<u32>> {
    if n < PARALLEL_THRESHOLD || base.len() >= n {
        return vec![base.to_vec()];
    }
    (1..=n as u32)
        .filter(|x| !base.contains(x))
        .map(|x| {
            let mut p = base.to_vec();
            p.push(x);
            p
        })
        .collect()
}

fn search_prefix(pi: &Permutation, prune: bool) -> Vec<u32> {
    if prune {
        vec![pi.last()]
    } else {
        Vec::new()
    }
}

/// Every `τ` with `SC_σ(τ) = π`, sorted.
pub fn preimages(
    sigma: Pattern3,
    pi: &Permutation,
    opts: EnumerationOptions,
) -> Result<FertilityReport> {
    let n = pi.len();
    check_limit(n, opts.force)?;
    let target = pi.entries();
    let per_block: Vec<Vec<Permutation>> = blocks(n, &search_prefix(pi, opts.prune))
        .into_par_iter()
        .map(|prefix| {
            let mut machine = Machine::new(sigma);
            let mut found = Vec::new();
            sweep_prefix(n, &prefix, |tau| {
                if machine.maps_to(tau, target) {
                    found.push(Permutation::from_vec_unchecked(tau.to_vec()));
                }
            });
            found
        })
        .collect();
    let mut list: Vec<Permutation> = per_block.into_iter().flatten().collect();
    list.sort_unstable();
    debug_assert!(list
        .iter()
        .all(|tau| crate::machine::sc_map(sigma, tau) == *pi));
    Ok(FertilityReport {
        sigma,
        target: pi.clone(),
        count: list.len() as u64,
        preimages: Some(list),
    })
}

/// `|SC_σ⁻¹(π)|`; zero when `π` is not an image.
pub fn fertility(sigma: Pattern3, pi: &Permutation) -> Result<u64> {
    fertility_with(sigma, pi, EnumerationOptions::default())
}

pub fn fertility_with(sigma: Pattern3, pi: &Permutation, opts: EnumerationOptions) -> Result<u64> {
    let n = pi.len();
    check_limit(n, opts.force)?;
    let target = pi.entries();
    let total = blocks(n, &search_prefix(pi, opts.prune))
        .into_par_iter()
        .map(|prefix| {
            let mut machine = Machine::new(sigma);
            let mut count = 0u64;
            sweep_prefix(n, &prefix, |tau| {
                count += machine.maps_to(tau, target) as u64;
            });
            count
        })
        .sum();
    Ok(total)
}

/// Fertility of every permutation in `S_n`, gathered by one forward sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumTable {
    pub sigma: Pattern3,
    pub n: usize,
    /// Indexed by lexicographic rank.
    counts: Vec<u32>,
    histogram: BTreeMap<u64, u64>,
}

pub fn spectrum(sigma: Pattern3, n: usize, force: bool) -> Result<SpectrumTable> {
    if n == 0 {
        return Err(Error::invalid("spectrum needs n >= 1"));
    }
    check_limit(n, force)?;
    let size = factorial(n) as usize;
    let counts: Vec<AtomicU32> = (0..size).map(|_| AtomicU32::new(0)).collect();
    blocks(n, &[]).into_par_iter().for_each(|prefix| {
        let mut machine = Machine::new(sigma);
        let mut out = Vec::with_capacity(n);
        sweep_prefix(n, &prefix, |tau| {
            machine.map_into(tau, &mut out);
            counts[lex_rank(&out)].fetch_add(1, Ordering::Relaxed);
        });
    });
    let counts: Vec<u32> = counts.into_iter().map(AtomicU32::into_inner).collect();
    let mut histogram = BTreeMap::new();
    for &c in &counts {
        *histogram.entry(c as u64).or_insert(0) += 1;
    }
    Ok(SpectrumTable {
        sigma,
        n,
        counts,
        histogram,
    })
}

impl SpectrumTable {
    pub fn fertility_of(&self, pi: &Permutation) -> Option<u64> {
        (pi.len() == self.n).then(|| self.counts[lex_rank(pi.entries())] as u64)
    }

    /// Fertility by lexicographic rank.
    pub fn counts_by_rank(&self) -> &[u32] {
        &self.counts
    }

    /// `(permutation, fertility)` over `S_n` in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (Permutation, u64)> + '_ {
        crate::perm::all_permutations(self.n)
            .zip(self.counts.iter())
            .map(|(p, &c)| (p, c as u64))
    }

    /// Fertility value to number of permutations attaining it, zero included.
    pub fn histogram(&self) -> &BTreeMap<u64, u64> {
        &self.histogram
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }

    /// `permutation,fertility` CSV.
    pub fn write_counts_csv<W: io::Write>(&self, w: W) -> Result<(), csv::Error> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(["permutation", "fertility"])?;
        for (p, c) in self.iter() {
            wtr.write_record([p.to_string(), c.to_string()])?;
        }
        wtr.flush()?;
        Ok(())
    }

    /// `fertility,count` CSV.
    pub fn write_histogram_csv<W: io::Write>(&self, w: W) -> Result<(), csv::Error> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(["fertility", "count"])?;
        for (f, c) in &self.histogram {
            wtr.write_record([f.to_string(), c.to_string()])?;
        }
        wtr.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }
}

struct CountsMap<'a>(&'a SpectrumTable);
struct HistogramMap<'a>(&'a BTreeMap<u64, u64>);

impl Serialize for CountsMap<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.counts.len()))?;
        for (p, c) in self.0.iter() {
            map.serialize_entry(&p.to_string(), &c)?;
        }
        map.end()
    }
}

impl Serialize for HistogramMap<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (f, c) in self.0 {
            map.serialize_entry(&f.to_string(), c)?;
        }
        map.end()
    }
}

impl Serialize for SpectrumTable {
    /// `{sigma, n, counts: {perm: fertility}, histogram: {fertility: count}}`,
    /// both maps in ascending key order.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("SpectrumTable", 4)?;
        st.serialize_field("sigma", &self.sigma)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("counts", &CountsMap(self))?;
        st.serialize_field("histogram", &HistogramMap(&self.histogram))?;
        st.end()
    }
}

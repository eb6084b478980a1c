//! Consecutive-pattern-avoiding stack-sorting maps `SC_σ` for `σ ∈ S₃`.
//!
//! * [`perm`]: permutations, patterns and the elementary transforms.
//! * [`machine`]: the stack machine, its event traces and the CRO statistic.
//! * [`fertility`]: exhaustive preimage enumeration and fertility spectra.
//! * [`constructions`]: witness families with known fertility.
//! * [`verify`]: executable checks of the structural and numeric claims.
//! * [`cli`]: the `scsort` command-line front end.

pub mod cli;
pub mod constructions;
pub mod error;
pub mod fertility;
pub mod machine;
pub mod perm;
pub mod verify;

pub use constructions::{construct, construct_preimages, small_witness, ConstructionFamily};
pub use error::{Error, Result};
pub use fertility::{
    fertility, fertility_with, preimages, spectrum, EnumerationOptions, FertilityReport,
    SpectrumTable, ENUMERATION_LIMIT,
};
pub use machine::{
    cro, sc_map, sc_trace, sc_trace_with_rule, CombinationView, EventKind, Machine, MachineEvent,
    MachineTrace,
};
pub use perm::{standardize, Pattern3, Permutation};

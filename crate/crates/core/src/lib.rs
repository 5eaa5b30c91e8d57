//! Explicit sets of permutations whose pairwise longest common subsequences
//! are short, together with exact checkers for the bounds they satisfy.
//!
//! * [`perm`]: permutations, permutation sets and the PERMLINE/PERMSET text formats.
//! * [`subseq`]: patience-sorting LIS/LDS, pairwise LCS and a quadratic DP oracle.
//! * [`algebraic`]: the modular lattice construction with LCS at most `32 (nk)^{1/3}`.
//! * [`hadamard`]: the Hadamard outer-product construction with LCS at most `s^{k/2-1}`.
//! * [`bounds`]: random baselines and lower-bound checkers.
//! * [`codes`]: deletion distance and code parameters of a permutation set.
//! * [`bench`]: grid runs comparing observed LCS with the bounds.

pub mod algebraic;
pub mod bench;
pub mod bounds;
pub mod codes;
pub mod error;
pub mod hadamard;
pub mod numeric;
pub mod perm;
pub mod prime;
pub mod report;
pub mod subseq;

pub use error::{Error, Result};
pub use perm::{PermSet, Permutation, Provenance};
pub use subseq::{lcs_all_pairs, lcs_pair, lcs_pair_dp, lds, lis, LcsMatrix};

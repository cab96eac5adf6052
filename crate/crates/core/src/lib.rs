//! Exact vertex-isoperimetry on Johnson graphs.
//!
//! Vertices of `J(n, m)` are the `m`-subsets of `{1, …, n}`; two are adjacent
//! when they share `m - 1` elements. For a family `S` of vertices the
//! boundary is the set of outside vertices with a neighbour in `S`, and
//! `μ_{n,m}(k)` is the least boundary over families of size `k`.
//!
//! ```
//! use johnson_iso::{solve, SearchMode};
//!
//! let r = solve(6, 3, 10, Some(SearchMode::Exhaustive), 10_000_000).unwrap();
//! assert_eq!(r.mu, 9);
//! assert!(r.certified);
//! ```

pub mod bounds;
pub mod combinatorics;
pub mod compression;
pub mod error;
pub mod johnson;
pub mod solver;

pub use bounds::{
    counterexample, f_bound, g_value, lambda_sequence, CounterexampleReport, LambdaSeq,
};
pub use combinatorics::{
    binomial_representation, colex_compare, colex_rank, colex_unrank, initial_segment, is_critical,
    BinomialRep, Subset,
};
pub use compression::{compress, is_compressed, shift};
pub use error::{Error, Result};
pub use johnson::{ball, boundary, lower_shadow, upper_shadow, Family};
pub use solver::{mu_exact, solve, Method, MuResult, SearchMode};

// Runs the guide's code blocks as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/colex.md")]
    mod colex {}
    #[doc = include_str!("../../../book/src/johnson.md")]
    mod johnson {}
    #[doc = include_str!("../../../book/src/compression.md")]
    mod compression {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/verify.md")]
    mod verify {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

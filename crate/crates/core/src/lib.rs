//! Weight enumerators of codes over Galois rings and MacWilliams-type
//! identities for tuples of codes, computed with exact cyclotomic arithmetic.
//!
//! ```
//! use macwilliams::{codes::LinearCode, enumerators, Limits};
//!
//! let lim = Limits::default();
//! let c1 = LinearCode::named("C1", &lim).unwrap();
//! let w = enumerators::hamming_we(&[c1.clone(), c1.dual(&lim).unwrap()], &lim).unwrap();
//! assert_eq!(w.eval_ones(), macwilliams::cyclotomic::CyclotomicInt::from_integer(w.field(), 8 * 8));
//! ```

pub mod cli;
pub mod codes;
pub mod cyclotomic;
pub mod enumerators;
pub mod error;
pub mod galois_ring;
pub mod polynomials;
pub mod transforms;
mod util;

pub use error::{Error, Result};
pub use util::{big_pow, gaussian_binomial};

/// Work caps shared by every enumerator, scan and substitution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest explicit code (number of codewords).
    pub max_words: u64,
    /// Largest brute-force scan of `R^N` when computing a dual.
    pub max_scan: u64,
    /// Largest number of codeword tuples an enumerator may visit.
    pub max_tuples: u64,
    /// Largest variable registry.
    pub max_registry: usize,
    /// Largest intermediate polynomial a staged transform may expand into.
    pub max_terms: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_words: 1 << 16,
            max_scan: 1 << 24,
            max_tuples: 1 << 24,
            max_registry: polynomials::DEFAULT_MAX_REGISTRY,
            max_terms: 1 << 22,
        }
    }
}

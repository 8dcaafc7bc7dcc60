//! Exact equivariant cohomology of homogeneous vector bundles on towers of
//! Grassmann bundles, computed by iterating Bott's theorem level by level.
//!
//! Modules, bottom up:
//! - [`weights`]: weights, `ρ`, Bott regularization;
//! - [`schur`]: characters, Schur decomposition, Littlewood-Richardson, plethysm;
//! - [`tower`]: tower spaces, the bundle expression language, layered normal form;
//! - [`cohomology`]: pushforward, cohomology and Ext tables, collection checks;
//! - [`lescheck`]: Euler-characteristic and long-exact-sequence bookkeeping.

pub mod cohomology;
pub mod error;
pub mod lescheck;
pub mod schur;
pub mod tower;
pub mod weights;

pub use error::{Error, Result};

/// Size bounds for symmetric-function work.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest dimension of a module that a Schur functor is applied to.
    pub max_inner_dim: usize,
    /// Largest `|outer|` accepted by the standalone [`schur::plethysm`] operation.
    pub max_outer_size: usize,
    /// Largest number of monomials in any intermediate character.
    pub max_terms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_inner_dim: 32, max_outer_size: 6, max_terms: 4_000_000 }
    }
}

impl Limits {
    /// Defaults, with `max_inner_dim` read from `VERIFY_MAX_DIM` when set.
    pub fn from_env() -> std::result::Result<Self, Error> {
        let mut l = Limits::default();
        if let Ok(v) = std::env::var("VERIFY_MAX_DIM") {
            l.max_inner_dim = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("VERIFY_MAX_DIM={v:?} is not a positive integer")))?;
        }
        Ok(l)
    }
}

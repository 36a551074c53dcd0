//! Symmetric complete sum-free subsets of the cyclic groups Z_n.
//!
//! * [`zn`] holds the bit-vector set type and the three defining predicates.
//! * [`st`] and [`special`] cover the large sets `S_T` and the t-special sets
//!   that parametrize them.
//! * [`interval_ap`] builds the `(±A) ∪ (±B) ∪ C` family whose sizes form an
//!   arithmetic progression, reaching every density in `[0, 1/3]`.
//! * [`oracle`] is brute-force ground truth for small moduli.
//! * [`applications`] has Cayley graphs, dioid partitions and a simulator for
//!   Cameron's random sum-free process.

mod bits;
pub mod error;

pub mod applications;
pub mod interval_ap;
pub mod oracle;
pub mod primes;
pub mod special;
pub mod st;
pub mod zn;

pub use error::{Error, Result};
pub use zn::{CyclicSet, SetProperties};

/// Upper limit on the number of candidates an exhaustive search may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(u64);

impl Budget {
    pub const fn new(limit: u64) -> Self {
        Budget(limit)
    }

    pub const fn limit(&self) -> u64 {
        self.0
    }

    pub fn check(&self, required: u128) -> Result<()> {
        if required <= self.0 as u128 {
            Ok(())
        } else {
            Err(Error::BudgetExceeded {
                required,
                limit: self.0,
            })
        }
    }
}

//! Exact inversion, descent and double-descent statistics on finite Coxeter
//! groups.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, caching and the
//! command-line front end live in the `coxstat` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod elements;
pub mod error;
pub mod groups;
pub mod interplab;
pub mod limits;
pub mod moments;
pub mod numeric;
pub mod polynomials;
pub mod rootsys;

use core::fmt;
use core::str::FromStr;

pub use error::{ElementError, GroupError, InterpError, LimitError, MomentError, PolyError, RootSystemError};
pub use groups::{CoxeterDescriptor, Family, IrreducibleLabel};
pub use polynomials::ExactPolynomial;

/// Default refusal threshold for full enumeration.
pub const DEFAULT_ENUMERATION_CAP: u64 = 100_000_000;

/// The three statistics of interest, plus inverse descents on their own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Statistic {
    Inv,
    Des,
    Ides,
    DesPlusIdes,
}

impl Statistic {
    pub fn name(self) -> &'static str {
        match self {
            Statistic::Inv => "inv",
            Statistic::Des => "des",
            Statistic::Ides => "ides",
            Statistic::DesPlusIdes => "des+ides",
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statistic {
    type Err = alloc::string::String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inv" => Ok(Statistic::Inv),
            "des" => Ok(Statistic::Des),
            "ides" => Ok(Statistic::Ides),
            "des+ides" | "desides" | "des_plus_ides" => Ok(Statistic::DesPlusIdes),
            other => Err(alloc::format!("unknown statistic '{other}'")),
        }
    }
}

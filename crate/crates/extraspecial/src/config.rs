//! Run-wide configuration: the prime, the symplectic rank, degree guard.

use crate::error::{Error, Result};
use crate::fp::PrimeField;
use serde::{Deserialize, Serialize};

pub const SUPPORTED_PRIMES: [u32; 4] = [2, 3, 5, 7];
pub const DEFAULT_DEGREE_CAP: u32 = 64;

/// Global parameters shared by every object in one computation.
///
/// `iota` is 1 at p = 2 and p otherwise; it is the exponent twist that
/// turns degree-2 generators into the polynomial part uniformly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalConfig {
    pub p: u32,
    pub n: u32,
    pub degree_cap: u32,
}

impl GlobalConfig {
    pub fn new(p: u32, n: u32) -> Result<Self> {
        if !SUPPORTED_PRIMES.contains(&p) {
            return Err(Error::UnsupportedPrime(p));
        }
        if n < 1 {
            return Err(Error::InvalidRank(n));
        }
        Ok(GlobalConfig {
            p,
            n,
            degree_cap: DEFAULT_DEGREE_CAP,
        })
    }

    pub fn with_degree_cap(mut self, cap: u32) -> Self {
        self.degree_cap = cap;
        self
    }

    pub fn iota(&self) -> u32 {
        if self.p == 2 {
            1
        } else {
            self.p
        }
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p as u8).expect("validated at construction")
    }

    pub fn check_degree(&self, degree: u32) -> Result<()> {
        if degree > self.degree_cap {
            Err(Error::DegreeCapExceeded {
                degree,
                cap: self.degree_cap,
            })
        } else {
            Ok(())
        }
    }
}

//! Arithmetic in the prime fields F_2, F_3, F_5, F_7.
//!
//! Elements are reduced representatives stored in a byte.  The field object
//! carries the modulus together with a precomputed inverse table, so the
//! hot paths never branch on the prime.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A reduced residue.  Interpretation requires the matching [`PrimeField`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fp(pub u8);

impl Fp {
    pub const ZERO: Fp = Fp(0);
    pub const ONE: Fp = Fp(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u8,
    inverses: [u8; 8],
}

impl PrimeField {
    pub fn new(p: u8) -> Result<Self> {
        if ![2, 3, 5, 7].contains(&p) {
            return Err(Error::UnsupportedPrime(p as u32));
        }
        let mut inverses = [0u8; 8];
        for a in 1..p {
            for b in 1..p {
                if (a as u16 * b as u16) % p as u16 == 1 {
                    inverses[a as usize] = b;
                }
            }
        }
        Ok(PrimeField { p, inverses })
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn add(&self, a: Fp, b: Fp) -> Fp {
        let s = a.0 + b.0;
        Fp(if s >= self.p { s - self.p } else { s })
    }

    pub fn sub(&self, a: Fp, b: Fp) -> Fp {
        Fp(if a.0 >= b.0 {
            a.0 - b.0
        } else {
            a.0 + self.p - b.0
        })
    }

    pub fn neg(&self, a: Fp) -> Fp {
        Fp(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    pub fn mul(&self, a: Fp, b: Fp) -> Fp {
        Fp(((a.0 as u16 * b.0 as u16) % self.p as u16) as u8)
    }

    pub fn inv(&self, a: Fp) -> Result<Fp> {
        if a.is_zero() {
            return Err(Error::Invalid("inverse of zero".into()));
        }
        Ok(Fp(self.inverses[a.0 as usize]))
    }

    pub fn pow(&self, a: Fp, mut e: u64) -> Fp {
        let mut base = a;
        let mut acc = Fp::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Reduce a signed integer.
    pub fn from_i64(&self, v: i64) -> Fp {
        let p = self.p as i64;
        Fp(v.rem_euclid(p) as u8)
    }

    /// Fold a decimal digit string into a residue without ever widening
    /// past a machine word; arbitrarily long literals are fine.
    pub fn from_decimal_str(&self, digits: &str) -> Result<Fp> {
        let p = self.p as u32;
        let mut acc: u32 = 0;
        if digits.is_empty() {
            return Err(Error::Invalid("empty integer literal".into()));
        }
        for ch in digits.chars() {
            let d = ch
                .to_digit(10)
                .ok_or_else(|| Error::Invalid(format!("bad digit `{ch}`")))?;
            acc = (acc * 10 + d) % p;
        }
        Ok(Fp(acc as u8))
    }

    pub fn elements(&self) -> impl Iterator<Item = Fp> {
        (0..self.p).map(Fp)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fp> {
        (1..self.p).map(Fp)
    }
}

/// Every vector in F_p^len, ordered with the last coordinate varying
/// fastest.  Intended for the small spaces that show up here (p^len stays
/// well under a few thousand).
pub fn all_vectors(p: u8, len: usize) -> Vec<Vec<Fp>> {
    let total = (p as u64).pow(len as u32);
    assert!(total <= 1 << 20, "vector space too large to enumerate");
    let mut out = Vec::with_capacity(total as usize);
    for idx in 0..total {
        let mut v = vec![Fp::ZERO; len];
        let mut rest = idx;
        for slot in v.iter_mut().rev() {
            *slot = Fp((rest % p as u64) as u8);
            rest /= p as u64;
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_exhaustive() {
        for p in [2u8, 3, 5, 7] {
            let f = PrimeField::new(p).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    for c in f.elements() {
                        let left = f.mul(a, f.add(b, c));
                        let right = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(left, right, "distributivity at p={p}");
                    }
                }
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Fp::ONE);
                }
                // Fermat: a^p = a, so Frobenius fixes coefficients.
                assert_eq!(f.pow(a, p as u64), a);
            }
        }
    }

    #[test]
    fn decimal_folding_handles_huge_literals() {
        let f = PrimeField::new(7).unwrap();
        // 10^30 mod 7: 10 = 3 mod 7, ord(3) = 6, 30 = 0 mod 6, so 1.
        let digits = format!("1{}", "0".repeat(30));
        assert_eq!(f.from_decimal_str(&digits).unwrap(), Fp(1));
    }

    #[test]
    fn rejects_bad_modulus() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(11).is_err());
    }

    #[test]
    fn vector_enumeration_counts_and_order() {
        let v = all_vectors(3, 2);
        assert_eq!(v.len(), 9);
        assert_eq!(v[0], vec![Fp(0), Fp(0)]);
        assert_eq!(v[1], vec![Fp(0), Fp(1)]);
        assert_eq!(v[3], vec![Fp(1), Fp(0)]);
        assert_eq!(v[8], vec![Fp(2), Fp(2)]);
        assert_eq!(all_vectors(2, 0), vec![Vec::<Fp>::new()]);
        assert_eq!(all_vectors(7, 3).len(), 343);
    }
}

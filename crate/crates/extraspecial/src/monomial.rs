//! Monomials under the graded reverse-lexicographic order.
//!
//! The order is fixed once for the whole crate: higher total degree wins,
//! and ties go to the monomial with the *smaller* exponent at the last
//! position where they differ.  `Ord` sorts ascending in that sense, so
//! descending iteration gives the display and pivot order used everywhere.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }

    pub fn pow(&self, k: u16) -> Monomial {
        Monomial(self.0.iter().map(|&a| a * k).collect())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            match a.cmp(b) {
                Ordering::Equal => continue,
                // Same degree: larger exponent late in the tuple means
                // grevlex-smaller.
                Ordering::Less => return std::cmp::Ordering::Greater,
                Ordering::Greater => return std::cmp::Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

/// All monomials of total degree `d` in `nvars` variables, listed in
/// descending order (the display and column order).
pub fn monomial_basis(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial(vec![]));
        }
        return out;
    }
    let mut current = vec![0u16; nvars];
    fill(&mut out, &mut current, 0, d);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn fill(out: &mut Vec<Monomial>, current: &mut Vec<u16>, pos: usize, remaining: u32) {
    if pos + 1 == current.len() {
        current[pos] = remaining as u16;
        out.push(Monomial(current.clone()));
        current[pos] = 0;
        return;
    }
    for e in 0..=remaining {
        current[pos] = e as u16;
        fill(out, current, pos + 1, remaining - e);
    }
    current[pos] = 0;
}

/// Binomial count of `monomial_basis(nvars, d)`, used as a cross-check and
/// for sizing matrices without enumerating.
pub fn basis_size(nvars: usize, d: u32) -> usize {
    if nvars == 0 {
        return if d == 0 { 1 } else { 0 };
    }
    // C(d + nvars - 1, nvars - 1)
    let k = nvars - 1;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (d as u128) + (k as u128) - (i as u128);
        den *= (i as u128) + 1;
    }
    (num / den) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_basics() {
        // y1 > y2 in grevlex.
        let y1 = Monomial(vec![1, 0]);
        let y2 = Monomial(vec![0, 1]);
        assert!(y1 > y2);
        // t1^2 > t1 t2 > t2^2.
        let a = Monomial(vec![2, 0]);
        let b = Monomial(vec![1, 1]);
        let c = Monomial(vec![0, 2]);
        assert!(a > b && b > c);
        // Degree dominates.
        assert!(Monomial(vec![0, 3]) > Monomial(vec![2, 0]));
    }

    #[test]
    fn grevlex_three_vars_classic_case() {
        // x y z > x^3 is false (degrees 3 = 3, last diff pos: z-exponent
        // 1 > 0 so xyz is smaller); standard grevlex has x^3 > xyz... check:
        let x3 = Monomial(vec![3, 0, 0]);
        let xyz = Monomial(vec![1, 1, 1]);
        assert!(x3 > xyz);
        // and x^2 z < x y^2 (last diff: z exponent).
        let x2z = Monomial(vec![2, 0, 1]);
        let xy2 = Monomial(vec![1, 2, 0]);
        assert!(xy2 > x2z);
    }

    #[test]
    fn basis_is_descending_and_counted_by_binomial() {
        let basis = monomial_basis(2, 2);
        assert_eq!(
            basis,
            vec![
                Monomial(vec![2, 0]),
                Monomial(vec![1, 1]),
                Monomial(vec![0, 2])
            ]
        );
        for (nvars, d) in [(1usize, 5u32), (2, 7), (3, 6), (4, 16), (6, 10)] {
            let b = monomial_basis(nvars, d);
            assert_eq!(b.len(), basis_size(nvars, d));
            for w in b.windows(2) {
                assert!(w[0] > w[1], "descending order violated");
            }
        }
        // The count the degree-16 rank-2 model matrix relies on.
        assert_eq!(basis_size(4, 16), 969);
    }
}

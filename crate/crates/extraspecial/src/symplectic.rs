//! The symplectic F_p-space E = F_p^{2n} underneath an extraspecial
//! group, its Lagrangian subspaces, and the finite group acting on it.
//!
//! The bilinear form pairs coordinates in hyperbolic blocks
//! (1,2), (3,4), ...  For odd p the acting group is Sp_{2n}(F_p) and a
//! Lagrangian is a maximal totally isotropic subspace.  For p = 2 the
//! quadratic form q = sum y_{2i-1} y_{2i} refines the bilinear form; the
//! acting group is its stabilizer O^+_{2n}(F_2) and "Lagrangian" means
//! maximal totally singular.  Counts:
//!
//!   p odd: prod_{i=1..n} (p^i + 1)        p = 2: prod_{i=0..n-1} (2^i + 1)
//!
//! Subspaces are represented by their unique reduced-echelon basis and
//! listed in lexicographic order of that basis matrix, so every tuple
//! indexed by Lagrangians is deterministic.

use crate::error::{Error, Result};
use crate::fp::{all_vectors, Fp, PrimeField};
use crate::matrix::FpMatrix;
use crate::subst::LinearSubstitution;
use crate::vars::VariableContext;
use std::collections::HashSet;
use std::sync::Arc;

#[derive(Clone, Copy)]
pub struct SymplecticSpace {
    field: PrimeField,
    n: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lagrangian {
    /// Reduced-echelon basis, n rows of length 2n.
    pub basis: Vec<Vec<Fp>>,
}

impl Lagrangian {
    /// Restriction of coordinate functions: y_i pulls back to
    /// sum_k basis[k][i] t_k, where t_k is dual to the k-th basis row.
    pub fn restriction(
        &self,
        ambient: Arc<VariableContext>,
        local: Arc<VariableContext>,
        field: PrimeField,
    ) -> Result<LinearSubstitution> {
        let dim = self.basis.first().map_or(0, Vec::len);
        let mut rows = vec![vec![Fp::ZERO; self.basis.len()]; dim];
        for (k, b) in self.basis.iter().enumerate() {
            for (i, &c) in b.iter().enumerate() {
                rows[i][k] = c;
            }
        }
        LinearSubstitution::from_matrix(ambient, local, field, &rows)
    }

    pub fn contains(&self, v: &[Fp], field: PrimeField) -> bool {
        let mut rem = v.to_vec();
        for b in &self.basis {
            let lead = b.iter().position(|c| !c.is_zero()).expect("nonzero row");
            let coeff = rem[lead];
            if !coeff.is_zero() {
                for (r, &bc) in rem.iter_mut().zip(b.iter()) {
                    *r = field.sub(*r, field.mul(coeff, bc));
                }
            }
        }
        rem.iter().all(|c| c.is_zero())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self
            .basis
            .iter()
            .map(|row| row.iter().map(|c| c.0).collect::<Vec<u8>>())
            .collect::<Vec<_>>())
    }
}

impl SymplecticSpace {
    pub fn new(field: PrimeField, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRank(0));
        }
        Ok(SymplecticSpace { field, n })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n as usize
    }

    /// The alternating form with hyperbolic blocks (y1,y2), (y3,y4), ...
    pub fn bilinear(&self, u: &[Fp], v: &[Fp]) -> Fp {
        let f = self.field;
        let mut acc = Fp::ZERO;
        for b in 0..self.n as usize {
            let (i, j) = (2 * b, 2 * b + 1);
            acc = f.add(acc, f.mul(u[i], v[j]));
            acc = f.sub(acc, f.mul(u[j], v[i]));
        }
        acc
    }

    /// The quadratic refinement q = sum y_{2i-1} y_{2i}; meaningful for
    /// p = 2, where its polarization is the bilinear form.
    pub fn quadratic(&self, v: &[Fp]) -> Fp {
        let f = self.field;
        let mut acc = Fp::ZERO;
        for b in 0..self.n as usize {
            acc = f.add(acc, f.mul(v[2 * b], v[2 * b + 1]));
        }
        acc
    }

    pub fn gram_matrix(&self) -> FpMatrix {
        let d = self.dim();
        let mut j = FpMatrix::zeros(self.field, d, d);
        for b in 0..self.n as usize {
            j.set(2 * b, 2 * b + 1, Fp::ONE);
            j.set(2 * b + 1, 2 * b, self.field.neg(Fp::ONE));
        }
        j
    }

    pub fn lagrangian_count(&self) -> u64 {
        let p = self.field.p() as u64;
        if p == 2 {
            (0..self.n).map(|i| (1u64 << i) + 1).product()
        } else {
            (1..=self.n).map(|i| p.pow(i) + 1).product()
        }
    }

    fn is_lagrangian_basis(&self, rows: &[Vec<Fp>]) -> bool {
        for (a, u) in rows.iter().enumerate() {
            if self.field.p() == 2 && !self.quadratic(u).is_zero() {
                return false;
            }
            for v in rows.iter().skip(a + 1) {
                if !self.bilinear(u, v).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// All Lagrangians, in lexicographic order of their echelon basis.
    pub fn enumerate_lagrangians(&self) -> Vec<Lagrangian> {
        let d = self.dim();
        let k = self.n as usize;
        let p = self.field.p();
        let mut out = Vec::new();
        for pivots in combinations(d, k) {
            let pivot_set: Vec<bool> = {
                let mut s = vec![false; d];
                for &c in &pivots {
                    s[c] = true;
                }
                s
            };
            // Free slots: to the right of each pivot, outside pivot columns.
            let mut slots = Vec::new();
            for (row, &pc) in pivots.iter().enumerate() {
                for col in pc + 1..d {
                    if !pivot_set[col] {
                        slots.push((row, col));
                    }
                }
            }
            for filling in all_vectors(p, slots.len()) {
                let mut rows = vec![vec![Fp::ZERO; d]; k];
                for (row, &pc) in pivots.iter().enumerate() {
                    rows[row][pc] = Fp::ONE;
                }
                for (&(row, col), &val) in slots.iter().zip(filling.iter()) {
                    rows[row][col] = val;
                }
                if self.is_lagrangian_basis(&rows) {
                    out.push(Lagrangian { basis: rows });
                }
            }
        }
        out.sort_unstable();
        debug_assert_eq!(out.len() as u64, self.lagrangian_count());
        out
    }

    /// Generators of the acting group: Sp_{2n}(F_p) for odd p, the
    /// stabilizer O^+ of the quadratic form for p = 2.
    pub fn group_generators(&self) -> Vec<FpMatrix> {
        let d = self.dim();
        let mut gens = Vec::new();
        if self.field.p() == 2 {
            // Transvections along every vector of q-value 1, plus the
            // hyperbolic block swaps (rank 2 needs them; they are cheap
            // insurance elsewhere).
            for v in all_vectors(2, d) {
                if self.quadratic(&v) == Fp::ONE {
                    gens.push(self.transvection(&v));
                }
            }
            for a in 0..self.n as usize {
                for b in a + 1..self.n as usize {
                    let mut m = FpMatrix::identity(self.field, d);
                    for off in 0..2 {
                        m.set(2 * a + off, 2 * a + off, Fp::ZERO);
                        m.set(2 * b + off, 2 * b + off, Fp::ZERO);
                        m.set(2 * a + off, 2 * b + off, Fp::ONE);
                        m.set(2 * b + off, 2 * a + off, Fp::ONE);
                    }
                    gens.push(m);
                }
            }
        } else {
            // Symplectic transvections along the coordinate vectors and
            // along sums of first-block coordinates.
            for i in 0..d {
                let mut v = vec![Fp::ZERO; d];
                v[i] = Fp::ONE;
                gens.push(self.transvection(&v));
            }
            for a in 0..self.n as usize {
                for b in a + 1..self.n as usize {
                    let mut v = vec![Fp::ZERO; d];
                    v[2 * a] = Fp::ONE;
                    v[2 * b] = Fp::ONE;
                    gens.push(self.transvection(&v));
                }
            }
        }
        gens
    }

    /// w -> w + B(w, v) v as a matrix on column vectors.
    pub fn transvection(&self, v: &[Fp]) -> FpMatrix {
        let d = self.dim();
        let f = self.field;
        let j = self.gram_matrix();
        // Row vector v^T J.
        let vj: Vec<Fp> = (0..d)
            .map(|b| {
                let mut acc = Fp::ZERO;
                for c in 0..d {
                    acc = f.add(acc, f.mul(v[c], j.get(c, b)));
                }
                acc
            })
            .collect();
        let mut m = FpMatrix::identity(f, d);
        for a in 0..d {
            for b in 0..d {
                let cur = m.get(a, b);
                m.set(a, b, f.sub(cur, f.mul(v[a], vj[b])));
            }
        }
        m
    }

    pub fn group_order(&self) -> u64 {
        let p = self.field.p() as u64;
        let n = self.n;
        if p == 2 {
            let mut o = 2 * (1u64 << (n * (n - 1))) * ((1 << n) - 1);
            for i in 1..n {
                o *= (1 << (2 * i)) - 1;
            }
            o
        } else {
            let mut o = p.pow(n * n);
            for i in 1..=n {
                o *= p.pow(2 * i) - 1;
            }
            o
        }
    }

    /// Image of a Lagrangian, re-echelonized.
    pub fn transform_lagrangian(&self, g: &FpMatrix, l: &Lagrangian) -> Result<Lagrangian> {
        let rows: Result<Vec<Vec<Fp>>> = l.basis.iter().map(|b| g.mul_vec(b)).collect();
        let mut m = FpMatrix::from_rows(self.field, &rows?)?;
        let pivots = m.rref();
        if pivots.len() != l.basis.len() {
            return Err(Error::Invalid("transform collapsed a subspace".into()));
        }
        let basis = (0..pivots.len())
            .map(|i| (0..self.dim()).map(|j| m.get(i, j)).collect())
            .collect();
        Ok(Lagrangian { basis })
    }

    /// Pullback of coordinate functions along g: y_i -> sum_j g_{ij} y_j.
    pub fn pullback(&self, g: &FpMatrix, ctx: &Arc<VariableContext>) -> Result<LinearSubstitution> {
        let d = self.dim();
        if g.rows() != d || g.cols() != d {
            return Err(Error::Dimension(format!(
                "group element is {}x{}, space has dimension {d}",
                g.rows(),
                g.cols()
            )));
        }
        let rows: Vec<Vec<Fp>> = (0..d)
            .map(|i| (0..d).map(|j| g.get(i, j)).collect())
            .collect();
        LinearSubstitution::from_matrix(Arc::clone(ctx), Arc::clone(ctx), self.field, &rows)
    }

    /// Breadth-first closure of the generator set; only sensible when the
    /// group is small enough to hold in memory.
    pub fn group_closure(&self, cap: usize) -> Result<HashSet<Vec<u8>>> {
        let gens = self.group_generators();
        let id = FpMatrix::identity(self.field, self.dim());
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        seen.insert(id.data().to_vec());
        let mut frontier = vec![id];
        while let Some(g) = frontier.pop() {
            for h in &gens {
                let next = g.matmul(h)?;
                if seen.insert(next.data().to_vec()) {
                    if seen.len() > cap {
                        return Err(Error::Invalid(format!(
                            "group closure exceeded cap {cap}"
                        )));
                    }
                    frontier.push(next);
                }
            }
        }
        Ok(seen)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        for c in start..=n.saturating_sub(need) {
            cur.push(c);
            rec(c + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(p: u8, n: u32) -> SymplecticSpace {
        SymplecticSpace::new(PrimeField::new(p).unwrap(), n).unwrap()
    }

    #[test]
    fn lagrangian_counts_match_the_product_formula() {
        for (p, n, expect) in [
            (2u8, 1u32, 2u64),
            (2, 2, 6),
            (2, 3, 30),
            (3, 1, 4),
            (3, 2, 40),
            (5, 1, 6),
            (7, 1, 8),
            (3, 3, 1120),
        ] {
            let s = space(p, n);
            assert_eq!(s.lagrangian_count(), expect, "formula p={p} n={n}");
            assert_eq!(
                s.enumerate_lagrangians().len() as u64,
                expect,
                "enumeration p={p} n={n}"
            );
        }
    }

    #[test]
    fn enumerated_subspaces_are_isotropic_sorted_and_distinct() {
        let s = space(3, 2);
        let ls = s.enumerate_lagrangians();
        let mut seen = HashSet::new();
        for l in &ls {
            assert!(seen.insert(l.clone()), "duplicate {l:?}");
            for u in &l.basis {
                for v in &l.basis {
                    assert!(s.bilinear(u, v).is_zero());
                }
            }
        }
        let mut sorted = ls.clone();
        sorted.sort();
        assert_eq!(ls, sorted);

        let s2 = space(2, 2);
        for l in s2.enumerate_lagrangians() {
            for u in &l.basis {
                assert!(s2.quadratic(u).is_zero());
            }
        }
    }

    #[test]
    fn group_orders_by_closure() {
        for (p, n, order) in [
            (2u8, 1u32, 2u64),
            (2, 2, 72),
            (3, 1, 24),
            (5, 1, 120),
            (7, 1, 336),
        ] {
            let s = space(p, n);
            assert_eq!(s.group_order(), order, "formula p={p} n={n}");
            let closure = s.group_closure(order as usize + 8).unwrap();
            assert_eq!(closure.len() as u64, order, "closure p={p} n={n}");
        }
    }

    #[test]
    fn group_orders_by_closure_large() {
        for (p, n, order) in [(3u8, 2u32, 51840u64), (2, 3, 40320)] {
            let s = space(p, n);
            assert_eq!(s.group_order(), order);
            let closure = s.group_closure(order as usize + 8).unwrap();
            assert_eq!(closure.len() as u64, order, "closure p={p} n={n}");
        }
    }

    #[test]
    fn generators_preserve_the_forms() {
        for (p, n) in [(2u8, 2u32), (3, 2), (5, 1), (2, 3)] {
            let s = space(p, n);
            let vectors = all_vectors(p, s.dim());
            for g in s.group_generators() {
                for u in vectors.iter().take(40) {
                    let gu = g.mul_vec(u).unwrap();
                    if p == 2 {
                        assert_eq!(s.quadratic(&gu), s.quadratic(u));
                    }
                    for v in vectors.iter().take(40) {
                        let gv = g.mul_vec(v).unwrap();
                        assert_eq!(s.bilinear(&gu, &gv), s.bilinear(u, v));
                    }
                }
            }
        }
    }

    #[test]
    fn group_permutes_the_lagrangians() {
        for (p, n) in [(2u8, 2u32), (3, 1), (3, 2), (5, 1)] {
            let s = space(p, n);
            let ls = s.enumerate_lagrangians();
            let set: HashSet<Lagrangian> = ls.iter().cloned().collect();
            for g in s.group_generators() {
                let mut images = HashSet::new();
                for l in &ls {
                    let t = s.transform_lagrangian(&g, l).unwrap();
                    assert!(set.contains(&t), "image left the set, p={p} n={n}");
                    images.insert(t);
                }
                assert_eq!(images.len(), ls.len(), "not injective, p={p} n={n}");
            }
        }
    }

    #[test]
    fn restriction_sends_coordinates_to_the_dual_pairing() {
        let s = space(3, 1);
        let ls = s.enumerate_lagrangians();
        let ambient = VariableContext::ambient(1);
        let local = VariableContext::local(1);
        // A line spanned by (a, b) restricts y1 -> a t1, y2 -> b t1.
        for l in &ls {
            let sub = l
                .restriction(Arc::clone(&ambient), Arc::clone(&local), s.field())
                .unwrap();
            let images = sub.images();
            for (i, im) in images.iter().enumerate() {
                let expect = crate::poly::MultiPoly::var(Arc::clone(&local), s.field(), 0)
                    .scale(l.basis[0][i]);
                assert_eq!(*im, expect);
            }
        }
    }

    #[test]
    fn contains_agrees_with_span() {
        let s = space(3, 2);
        let l = &s.enumerate_lagrangians()[7];
        let f = s.field();
        for c in all_vectors(3, 2) {
            let mut v = vec![Fp::ZERO; 4];
            for (k, b) in l.basis.iter().enumerate() {
                for (i, &bc) in b.iter().enumerate() {
                    v[i] = f.add(v[i], f.mul(c[k], bc));
                }
            }
            assert!(l.contains(&v, f));
        }
        // A vector pairing nontrivially with the subspace cannot lie in it.
        let outside = (0..4)
            .map(|i| {
                let mut e = vec![Fp::ZERO; 4];
                e[i] = Fp::ONE;
                e
            })
            .find(|e| l.basis.iter().any(|b| !s.bilinear(b, e).is_zero()))
            .expect("some coordinate vector pairs nontrivially");
        assert!(!l.contains(&outside, f));
    }
}

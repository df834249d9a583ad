//! Dickson invariants Q_{m,s} and the Mui form V_m.
//!
//! V_m is always built directly as the product of the p^{m-1} linear
//! forms it is defined by; the Q_{m,s} then come from the recursion
//!
//!   Q_{m,s} = Q_{m-1,s} V_m^{p-1} + Q_{m-1,s-1}^p,   Q_{m,m} = 1,
//!
//! with the two ingredients computed independently.  That keeps the
//! product construction available as an oracle for everything downstream.

use crate::error::{Error, Result};
use crate::fp::{all_vectors, Fp, PrimeField};
use crate::poly::MultiPoly;
use crate::vars::VariableContext;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

pub struct DicksonTable {
    field: PrimeField,
    degree_cap: u32,
    q_cache: Mutex<HashMap<(u32, u32), MultiPoly>>,
    v_cache: Mutex<HashMap<u32, MultiPoly>>,
    ctx_cache: Mutex<HashMap<u32, Arc<VariableContext>>>,
}

impl DicksonTable {
    pub fn new(field: PrimeField, degree_cap: u32) -> Self {
        DicksonTable {
            field,
            degree_cap,
            q_cache: Mutex::new(HashMap::new()),
            v_cache: Mutex::new(HashMap::new()),
            ctx_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// The shared t1..tm context, one instance per rank.
    pub fn ctx(&self, m: u32) -> Arc<VariableContext> {
        let mut cache = self.ctx_cache.lock().unwrap();
        Arc::clone(
            cache
                .entry(m)
                .or_insert_with(|| VariableContext::local(m)),
        )
    }

    fn check_cap(&self, m: u32) -> Result<()> {
        let top = (self.field.p() as u64)
            .checked_pow(m)
            .unwrap_or(u64::MAX)
            .saturating_sub(1);
        if top > self.degree_cap as u64 {
            return Err(Error::DegreeCapExceeded {
                degree: top.min(u32::MAX as u64) as u32,
                cap: self.degree_cap,
            });
        }
        Ok(())
    }

    /// The product of lambda . (t1..t_{m-1}) + t_m over all lambda.
    pub fn mui_v(&self, m: u32) -> Result<MultiPoly> {
        if m == 0 {
            return Err(Error::Invalid("mui_v needs rank at least 1".into()));
        }
        self.check_cap(m)?;
        if let Some(v) = self.v_cache.lock().unwrap().get(&m) {
            return Ok(v.clone());
        }
        let ctx = self.ctx(m);
        let mut v = MultiPoly::one(Arc::clone(&ctx), self.field);
        for lambda in all_vectors(self.field.p(), m as usize - 1) {
            let mut coeffs = lambda;
            coeffs.push(Fp::ONE);
            let form = MultiPoly::linear_form(Arc::clone(&ctx), self.field, &coeffs);
            v = v.mul(&form)?;
        }
        self.v_cache.lock().unwrap().insert(m, v.clone());
        Ok(v)
    }

    /// Q_{m,s} in the rank-m context, for 0 <= s <= m.
    pub fn q(&self, m: u32, s: u32) -> Result<MultiPoly> {
        if s > m {
            return Err(Error::Invalid(format!("q({m},{s}) needs s <= m")));
        }
        self.check_cap(m)?;
        if s == m {
            return Ok(MultiPoly::one(self.ctx(m), self.field));
        }
        if let Some(q) = self.q_cache.lock().unwrap().get(&(m, s)) {
            return Ok(q.clone());
        }
        // Here m >= 1 and s < m.
        let ctx = self.ctx(m);
        let p = self.field.p() as u32;
        let prev = self.q(m - 1, s)?.promote(Arc::clone(&ctx))?;
        let v_pow = self.mui_v(m)?.pow(p - 1);
        let mut out = prev.mul(&v_pow)?;
        if s > 0 {
            let lower = self.q(m - 1, s - 1)?.promote(Arc::clone(&ctx))?;
            out = out.add(&lower.frobenius(1))?;
        }
        self.q_cache.lock().unwrap().insert((m, s), out.clone());
        Ok(out)
    }

    pub fn all_q(&self, m: u32) -> Result<Vec<MultiPoly>> {
        (0..=m).map(|s| self.q(m, s)).collect()
    }

    /// Substitute `last` for the extra variable in the expansion
    /// (-1)^m sum_s (-1)^s Q_{m,s} last^{p^s}.  The rank-m context must
    /// embed into the context of `last` by labels.
    pub fn v_expansion(&self, m: u32, last: &MultiPoly) -> Result<MultiPoly> {
        let target = Arc::clone(last.ctx());
        let p = self.field.p() as u32;
        let mut acc = MultiPoly::zero(Arc::clone(&target), self.field);
        for s in 0..=m {
            let sign = if (m + s) % 2 == 0 { 1 } else { -1 };
            let q = self.q(m, s)?.promote(Arc::clone(&target))?;
            let term = q.mul(&last.pow(p.pow(s)))?.scale(self.field.from_i64(sign));
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Product of lambda . t over every nonzero lambda in F_p^m.
    pub fn euler_product(&self, m: u32) -> Result<MultiPoly> {
        if m == 0 {
            return Err(Error::Invalid("euler_product needs rank at least 1".into()));
        }
        self.check_cap(m)?;
        let ctx = self.ctx(m);
        let mut e = MultiPoly::one(Arc::clone(&ctx), self.field);
        for lambda in all_vectors(self.field.p(), m as usize) {
            if lambda.iter().all(|c| c.is_zero()) {
                continue;
            }
            let form = MultiPoly::linear_form(Arc::clone(&ctx), self.field, &lambda);
            e = e.mul(&form)?;
        }
        Ok(e)
    }
}

/// What `check_v_expansion` verified, with the observed sign relating the
/// full product over nonzero vectors to Q_{m,0}.
#[derive(Debug, Clone, serde::Serialize)]
pub struct VExpansionReport {
    pub p: u8,
    pub m: u32,
    pub expansion_holds: bool,
    pub euler_matches_q0: bool,
    /// euler_product(m) == euler_sign * Q_{m,0}
    pub euler_sign: i8,
}

/// Check V_{m+1} against the alternating Q-expansion, and the full Euler
/// product against Q_{m,0} up to the expected sign (-1)^((p^m-1)/(p-1)).
pub fn check_v_expansion(table: &DicksonTable, m: u32) -> Result<VExpansionReport> {
    let field = table.field();
    let p = field.p();
    let big = table.ctx(m + 1);
    let last = MultiPoly::var(Arc::clone(&big), field, m as usize);
    let expanded = table.v_expansion(m, &last)?;
    let direct = table.mui_v(m + 1)?;
    let expansion_holds = expanded == direct;

    let exponent = ((p as u64).pow(m) - 1) / (p as u64 - 1).max(1);
    let sign: i8 = if p == 2 || exponent % 2 == 0 { 1 } else { -1 };
    let euler = table.euler_product(m)?;
    let q0 = table.q(m, 0)?;
    let euler_matches_q0 = euler == q0.scale(field.from_i64(sign as i64));

    Ok(VExpansionReport {
        p,
        m,
        expansion_holds,
        euler_matches_q0,
        euler_sign: sign,
    })
}

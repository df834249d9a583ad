//! Sparse multivariate polynomials over a prime field.
//!
//! Values are immutable: every operation builds a new polynomial.  Terms
//! live in a `BTreeMap` keyed by the global grevlex order, so iteration
//! is always canonical and `.rev()` gives display order.  No zero
//! coefficient is ever stored.

use crate::error::{Error, Result};
use crate::fp::{Fp, PrimeField};
use crate::monomial::Monomial;
use crate::vars::VariableContext;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

pub struct MultiPoly {
    ctx: Arc<VariableContext>,
    field: PrimeField,
    terms: BTreeMap<Monomial, Fp>,
    homog: OnceLock<Option<u32>>,
}

impl Clone for MultiPoly {
    fn clone(&self) -> Self {
        let homog = OnceLock::new();
        if let Some(h) = self.homog.get() {
            let _ = homog.set(*h);
        }
        MultiPoly {
            ctx: Arc::clone(&self.ctx),
            field: self.field,
            terms: self.terms.clone(),
            homog,
        }
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.terms == other.terms
    }
}
impl Eq for MultiPoly {}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl MultiPoly {
    pub fn zero(ctx: Arc<VariableContext>, field: PrimeField) -> Self {
        MultiPoly {
            ctx,
            field,
            terms: BTreeMap::new(),
            homog: OnceLock::new(),
        }
    }

    pub fn constant(ctx: Arc<VariableContext>, field: PrimeField, c: Fp) -> Self {
        let mut p = MultiPoly::zero(ctx, field);
        if !c.is_zero() {
            let one = Monomial::one(p.ctx.len());
            p.terms.insert(one, c);
        }
        p
    }

    pub fn one(ctx: Arc<VariableContext>, field: PrimeField) -> Self {
        MultiPoly::constant(ctx, field, Fp::ONE)
    }

    pub fn var(ctx: Arc<VariableContext>, field: PrimeField, i: usize) -> Self {
        let m = Monomial::var(ctx.len(), i);
        MultiPoly::monomial_term(ctx, field, m, Fp::ONE)
    }

    pub fn monomial_term(
        ctx: Arc<VariableContext>,
        field: PrimeField,
        m: Monomial,
        c: Fp,
    ) -> Self {
        assert_eq!(m.nvars(), ctx.len(), "monomial width must match context");
        let mut p = MultiPoly::zero(ctx, field);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Homogeneous linear combination of the context variables.
    pub fn linear_form(ctx: Arc<VariableContext>, field: PrimeField, coeffs: &[Fp]) -> Self {
        assert_eq!(coeffs.len(), ctx.len());
        let mut p = MultiPoly::zero(ctx, field);
        for (i, &c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(Monomial::var(p.ctx.len(), i), c);
            }
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Fp)>>(
        ctx: Arc<VariableContext>,
        field: PrimeField,
        terms: I,
    ) -> Self {
        let mut p = MultiPoly::zero(ctx, field);
        for (m, c) in terms {
            p.accumulate(m, c);
        }
        p
    }

    pub fn ctx(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, Fp)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    /// Terms in descending grevlex order (display order).
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, Fp)> {
        self.terms.iter().rev().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> Fp {
        self.terms.get(m).copied().unwrap_or(Fp::ZERO)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// `Some(d)` when every term has total degree d.  The zero polynomial
    /// reports `Some(0)`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        *self.homog.get_or_init(|| {
            let mut iter = self.terms.keys();
            let first = match iter.next() {
                None => return Some(0),
                Some(m) => m.degree(),
            };
            for m in iter {
                if m.degree() != first {
                    return None;
                }
            }
            Some(first)
        })
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.is_zero() || self.homogeneous_degree() == Some(d)
    }

    fn accumulate(&mut self, m: Monomial, c: Fp) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.field.add(*e.get(), c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_ctx(&self, other: &MultiPoly) -> Result<()> {
        if self.ctx.compatible(&other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                left: self.ctx.to_string(),
                right: other.ctx.to_string(),
            })
        }
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ctx(other)?;
        let mut out = self.clone_fresh();
        for (m, c) in other.terms() {
            out.accumulate(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ctx(other)?;
        let mut out = self.clone_fresh();
        for (m, c) in other.terms() {
            out.accumulate(m.clone(), self.field.neg(c));
        }
        Ok(out)
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = MultiPoly::zero(Arc::clone(&self.ctx), self.field);
        for (m, c) in self.terms() {
            out.terms.insert(m.clone(), self.field.neg(c));
        }
        out
    }

    pub fn scale(&self, c: Fp) -> MultiPoly {
        let mut out = MultiPoly::zero(Arc::clone(&self.ctx), self.field);
        if c.is_zero() {
            return out;
        }
        for (m, a) in self.terms() {
            out.terms.insert(m.clone(), self.field.mul(a, c));
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ctx(other)?;
        let mut out = MultiPoly::zero(Arc::clone(&self.ctx), self.field);
        // Iterate the smaller operand outside for locality.
        let (small, big) = if self.num_terms() <= other.num_terms() {
            (self, other)
        } else {
            (other, self)
        };
        for (ms, cs) in small.terms() {
            for (mb, cb) in big.terms() {
                out.accumulate(ms.mul(mb), self.field.mul(cs, cb));
            }
        }
        Ok(out)
    }

    pub fn mul_monomial(&self, m: &Monomial, c: Fp) -> MultiPoly {
        let mut out = MultiPoly::zero(Arc::clone(&self.ctx), self.field);
        if c.is_zero() {
            return out;
        }
        for (mm, cc) in self.terms() {
            out.terms.insert(mm.mul(m), self.field.mul(cc, c));
        }
        out
    }

    /// Raise every exponent by the k-th Frobenius power.  Coefficients are
    /// fixed because a^p = a in F_p.
    pub fn frobenius(&self, k: u32) -> MultiPoly {
        if k == 0 {
            return self.clone();
        }
        let q = (self.field.p() as u64).pow(k) as u16;
        let mut out = MultiPoly::zero(Arc::clone(&self.ctx), self.field);
        for (m, c) in self.terms() {
            out.terms.insert(m.pow(q), c);
        }
        out
    }

    /// Binary exponentiation, with p-power factors of the exponent peeled
    /// off through the Frobenius shortcut.
    pub fn pow(&self, e: u32) -> MultiPoly {
        if e == 0 {
            return MultiPoly::one(Arc::clone(&self.ctx), self.field);
        }
        let p = self.field.p() as u32;
        let mut rest = e;
        let mut frob = 0u32;
        while rest % p == 0 {
            rest /= p;
            frob += 1;
        }
        let mut acc = MultiPoly::one(Arc::clone(&self.ctx), self.field);
        let mut base = self.clone();
        let mut k = rest;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same context");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same context");
            }
        }
        acc.frobenius(frob)
    }

    /// Substitute `images[i]` for variable i.  All images must share one
    /// target context.  Powers of the images are cached per variable.
    pub fn map_variables(
        &self,
        images: &[MultiPoly],
        target: Arc<VariableContext>,
    ) -> Result<MultiPoly> {
        if images.len() != self.ctx.len() {
            return Err(Error::Dimension(format!(
                "substitution needs {} images, got {}",
                self.ctx.len(),
                images.len()
            )));
        }
        for im in images {
            if !im.ctx.compatible(&target) {
                return Err(Error::ContextMismatch {
                    left: im.ctx.to_string(),
                    right: target.to_string(),
                });
            }
        }
        let mut cache: HashMap<(usize, u16), MultiPoly> = HashMap::new();
        let mut out = MultiPoly::zero(Arc::clone(&target), self.field);
        for (m, c) in self.terms() {
            let mut term = MultiPoly::constant(Arc::clone(&target), self.field, c);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = power_cached(&mut cache, images, &target, self.field, i, e);
                term = term.mul(&pw)?;
                if term.is_zero() {
                    break;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Reinterpret in a wider context, matching variables by label.
    pub fn promote(&self, target: Arc<VariableContext>) -> Result<MultiPoly> {
        let mut map = Vec::with_capacity(self.ctx.len());
        for l in self.ctx.labels() {
            let idx = target.index_of(l).ok_or_else(|| Error::ContextMismatch {
                left: self.ctx.to_string(),
                right: target.to_string(),
            })?;
            map.push(idx);
        }
        let mut out = MultiPoly::zero(Arc::clone(&target), self.field);
        for (m, c) in self.terms() {
            let mut e = vec![0u16; target.len()];
            for (i, &exp) in m.0.iter().enumerate() {
                e[map[i]] = exp;
            }
            out.terms.insert(Monomial(e), c);
        }
        Ok(out)
    }

    /// View the polynomial as a polynomial in variable `var`: exponent of
    /// `var` mapped to the coefficient (which keeps the full context with
    /// that exponent zeroed).
    pub fn coefficients_in(&self, var: usize) -> BTreeMap<u16, MultiPoly> {
        let mut out: BTreeMap<u16, MultiPoly> = BTreeMap::new();
        for (m, c) in self.terms() {
            let e = m.0[var];
            let mut rest = m.clone();
            rest.0[var] = 0;
            out.entry(e)
                .or_insert_with(|| MultiPoly::zero(Arc::clone(&self.ctx), self.field))
                .accumulate(rest, c);
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Coefficient vector over a descending-ordered monomial basis.
    pub fn coeff_vector(&self, index: &HashMap<Monomial, usize>, len: usize) -> Result<Vec<Fp>> {
        let mut v = vec![Fp::ZERO; len];
        for (m, c) in self.terms() {
            let &i = index
                .get(m)
                .ok_or_else(|| Error::Invalid(format!("monomial outside basis: {m:?}")))?;
            v[i] = c;
        }
        Ok(v)
    }

    pub fn from_coeff_vector(
        ctx: Arc<VariableContext>,
        field: PrimeField,
        basis: &[Monomial],
        coeffs: &[Fp],
    ) -> Self {
        assert_eq!(basis.len(), coeffs.len());
        let mut p = MultiPoly::zero(ctx, field);
        for (m, &c) in basis.iter().zip(coeffs) {
            if !c.is_zero() {
                p.terms.insert(m.clone(), c);
            }
        }
        p
    }

    fn clone_fresh(&self) -> MultiPoly {
        MultiPoly {
            ctx: Arc::clone(&self.ctx),
            field: self.field,
            terms: self.terms.clone(),
            homog: OnceLock::new(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms_desc()
            .map(|(m, c)| {
                serde_json::json!({
                    "m": m.0,
                    "c": c.0,
                })
            })
            .collect();
        serde_json::json!({
            "vars": self.ctx.labels(),
            "terms": terms,
        })
    }

    pub fn from_json(value: &serde_json::Value, field: PrimeField) -> Result<MultiPoly> {
        let bad = |m: &str| Error::Invalid(format!("polynomial json: {m}"));
        let vars = value
            .get("vars")
            .and_then(|v| v.as_array())
            .ok_or_else(|| bad("missing vars"))?;
        let labels: Vec<String> = vars
            .iter()
            .map(|v| {
                v.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| bad("non-string var"))
            })
            .collect::<Result<_>>()?;
        let ctx = VariableContext::custom(labels)?;
        let terms = value
            .get("terms")
            .and_then(|v| v.as_array())
            .ok_or_else(|| bad("missing terms"))?;
        let mut out = MultiPoly::zero(ctx, field);
        for t in terms {
            let m = t
                .get("m")
                .and_then(|v| v.as_array())
                .ok_or_else(|| bad("missing m"))?;
            if m.len() != out.ctx.len() {
                return Err(bad("exponent width mismatch"));
            }
            let exps: Vec<u16> = m
                .iter()
                .map(|e| {
                    e.as_u64()
                        .filter(|&e| e <= u16::MAX as u64)
                        .map(|e| e as u16)
                        .ok_or_else(|| bad("bad exponent"))
                })
                .collect::<Result<_>>()?;
            let c = t
                .get("c")
                .and_then(|v| v.as_u64())
                .ok_or_else(|| bad("bad coefficient"))?;
            let c = field.from_i64((c % field.p() as u64) as i64);
            out.accumulate(Monomial(exps), c);
        }
        Ok(out)
    }
}

fn power_cached(
    cache: &mut HashMap<(usize, u16), MultiPoly>,
    images: &[MultiPoly],
    target: &Arc<VariableContext>,
    field: PrimeField,
    i: usize,
    e: u16,
) -> MultiPoly {
    if e == 0 {
        return MultiPoly::one(Arc::clone(target), field);
    }
    if e == 1 {
        return images[i].clone();
    }
    if let Some(p) = cache.get(&(i, e)) {
        return p.clone();
    }
    let half = power_cached(cache, images, target, field, i, e / 2);
    let mut out = half.mul(&half).expect("same context");
    if e % 2 == 1 {
        out = out.mul(&images[i]).expect("same context");
    }
    cache.insert((i, e), out.clone());
    out
}

// ---------------------------------------------------------------------------
// Text form.
//
//   poly   := ['+'|'-'] term (('+'|'-') term)*
//   term   := coeff | [coeff '*'] factor ('*' factor)*
//   factor := var ['^' exp]
//   var    := [a-z][0-9]*
//
// Whitespace is insignificant.  Formatting always emits coefficients
// reduced to [1, p), exponent 1 elided, terms in descending grevlex order
// joined by " + ".  The zero polynomial prints as "0".
// ---------------------------------------------------------------------------

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms_desc() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            if c != Fp::ONE || m.is_one() {
                factors.push(format!("{}", c.0));
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ctx.label(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.ctx.label(i), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

pub fn format_poly(p: &MultiPoly) -> String {
    p.to_string()
}

pub fn parse_poly(
    text: &str,
    ctx: &Arc<VariableContext>,
    field: PrimeField,
) -> Result<MultiPoly> {
    Parser {
        bytes: text.as_bytes(),
        pos: 0,
        ctx,
        field,
    }
    .parse()
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    ctx: &'a Arc<VariableContext>,
    field: PrimeField,
}

impl<'a> Parser<'a> {
    fn parse(mut self) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(Arc::clone(self.ctx), self.field);
        self.skip_ws();
        if self.pos == self.bytes.len() {
            return Err(self.err("empty input"));
        }
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let term = self.term()?;
            let term = if sign { term.neg() } else { term };
            out = out.add(&term)?;
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => {
                    sign = false;
                    self.pos += 1;
                }
                Some(b'-') => {
                    sign = true;
                    self.pos += 1;
                }
                Some(c) => {
                    return Err(self.err(&format!("expected `+` or `-`, found `{}`", c as char)))
                }
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        self.skip_ws();
        let mut coeff = Fp::ONE;
        let mut exponents = vec![0u32; self.ctx.len()];

        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let digits = self.digits()?;
            coeff = self.field.from_decimal_str(&digits)?;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                // A bare constant.
                return Ok(MultiPoly::constant(
                    Arc::clone(self.ctx),
                    self.field,
                    coeff,
                ));
            }
        }

        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_lowercase() => {
                    let (idx, e) = self.factor()?;
                    exponents[idx] = exponents[idx]
                        .checked_add(e)
                        .ok_or_else(|| self.err("exponent overflow"))?;
                }
                _ => return Err(self.err("expected a variable")),
            }
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        for &e in &exponents {
            if e > u16::MAX as u32 {
                return Err(self.err("exponent too large"));
            }
        }
        let m = Monomial(exponents.into_iter().map(|e| e as u16).collect());
        Ok(MultiPoly::monomial_term(
            Arc::clone(self.ctx),
            self.field,
            m,
            coeff,
        ))
    }

    fn factor(&mut self) -> Result<(usize, u32)> {
        let start = self.pos;
        let mut name = String::new();
        name.push(self.bytes[self.pos] as char);
        self.pos += 1;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            name.push(self.bytes[self.pos] as char);
            self.pos += 1;
        }
        let idx = self
            .ctx
            .index_of(&name)
            .ok_or_else(|| Error::UnknownVariable {
                name: name.clone(),
                position: start,
            })?;
        self.skip_ws();
        let mut exp = 1u32;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let digits = self.digits()?;
            exp = digits
                .parse::<u32>()
                .map_err(|_| self.err("exponent too large"))?;
        }
        Ok((idx, exp))
    }

    fn digits(&mut self) -> Result<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected digits"));
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("digits are ascii")
            .to_string())
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn err(&self, message: &str) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::monomial_basis;

    fn f3() -> PrimeField {
        PrimeField::new(3).unwrap()
    }

    fn y(n: u32) -> Arc<VariableContext> {
        VariableContext::ambient(n)
    }

    #[test]
    fn product_over_f3() {
        let ctx = y(1);
        let field = f3();
        let a = parse_poly("y1 + y2", &ctx, field).unwrap();
        let b = parse_poly("y1 + 2*y2", &ctx, field).unwrap();
        let prod = a.mul(&b).unwrap();
        assert_eq!(format_poly(&prod), "y1^2 + 2*y2^2");
    }

    #[test]
    fn add_cancels_to_zero() {
        let ctx = y(1);
        let field = f3();
        let a = parse_poly("y1 + 2*y2", &ctx, field).unwrap();
        let b = parse_poly("2*y1 + y2", &ctx, field).unwrap();
        let s = a.add(&b).unwrap();
        assert!(s.is_zero());
        assert_eq!(format_poly(&s), "0");
    }

    #[test]
    fn parse_rejects_unknown_variable_and_reports_position() {
        let ctx = y(1);
        let e = parse_poly("y1 + t3", &ctx, f3()).unwrap_err();
        match e {
            Error::UnknownVariable { name, position } => {
                assert_eq!(name, "t3");
                assert_eq!(position, 5);
            }
            other => panic!("wrong error {other:?}"),
        }
    }

    #[test]
    fn parse_accepts_signs_constants_and_big_coefficients() {
        let ctx = y(1);
        let field = f3();
        let p = parse_poly("-y1 + 4*y2 - 2", &ctx, field).unwrap();
        assert_eq!(format_poly(&p), "2*y1 + y2 + 1");
        let q = parse_poly("123456789123456789123456789*y1", &ctx, field).unwrap();
        // Digit sum of that literal is 9*(1+...+9) = 405, divisible by 3.
        assert!(q.is_zero());
        assert_eq!(format_poly(&parse_poly("0", &ctx, field).unwrap()), "0");
    }

    #[test]
    fn display_orders_terms_descending() {
        let ctx = y(1);
        let field = f3();
        let p = parse_poly("y2^2 + y1*y2 + y1^2 + y2 + 1", &ctx, field).unwrap();
        assert_eq!(format_poly(&p), "y1^2 + y1*y2 + y2^2 + y2 + 1");
    }

    #[test]
    fn frobenius_and_pow_agree() {
        let ctx = y(1);
        let field = f3();
        let p = parse_poly("y1 + 2*y2", &ctx, field).unwrap();
        let cubed = p.pow(3);
        assert_eq!(cubed, p.frobenius(1));
        assert_eq!(format_poly(&cubed), "y1^3 + 2*y2^3");
        let ninth = p.pow(9);
        assert_eq!(ninth, p.frobenius(2));
        // Mixed exponent: 6 = 3 * 2.
        let sixth = p.pow(6);
        assert_eq!(sixth, p.mul(&p).unwrap().frobenius(1));
    }

    #[test]
    fn map_variables_substitutes_with_cache() {
        let ctx = y(1);
        let field = f3();
        let p = parse_poly("y1^2*y2 + y2^3", &ctx, field).unwrap();
        let t = VariableContext::local(1);
        let images = vec![
            MultiPoly::var(Arc::clone(&t), field, 0),
            MultiPoly::var(Arc::clone(&t), field, 0).scale(Fp(2)),
        ];
        let q = p.map_variables(&images, Arc::clone(&t)).unwrap();
        // t^2 * 2t + (2t)^3 = 2 t^3 + 8 t^3 = 10 t^3 = t^3.
        assert_eq!(format_poly(&q), "t1^3");
    }

    #[test]
    fn promote_into_wider_context() {
        let small = VariableContext::local(2);
        let big = VariableContext::local(3).adjoin(&["w"]).unwrap();
        let field = f3();
        let p = parse_poly("t1^2 + t2", &small, field).unwrap();
        let q = p.promote(Arc::clone(&big)).unwrap();
        assert_eq!(format_poly(&q), "t1^2 + t2");
        assert_eq!(q.ctx().len(), 4);
    }

    #[test]
    fn coefficients_in_adjoined_variable() {
        let ctx = VariableContext::local(1).adjoin(&["w"]).unwrap();
        let field = f3();
        let p = parse_poly("t1^2*w + 2*w^3 + t1", &ctx, field).unwrap();
        let by_w = p.coefficients_in(1);
        assert_eq!(format_poly(&by_w[&0]), "t1");
        assert_eq!(format_poly(&by_w[&1]), "t1^2");
        assert_eq!(format_poly(&by_w[&3]), "2");
    }

    #[test]
    fn json_round_trip() {
        let ctx = y(1);
        let field = f3();
        let p = parse_poly("y1^2 + 2*y1*y2 + 2", &ctx, field).unwrap();
        let v = p.to_json();
        let q = MultiPoly::from_json(&v, field).unwrap();
        assert_eq!(p.terms.len(), q.terms.len());
        assert_eq!(format_poly(&p), format_poly(&q));
    }

    #[test]
    fn coeff_vector_round_trip() {
        let ctx = y(1);
        let field = f3();
        let basis = monomial_basis(2, 4);
        let index: HashMap<_, _> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let p = parse_poly("y1^4 + 2*y1^2*y2^2 + y2^4", &ctx, field).unwrap();
        let v = p.coeff_vector(&index, basis.len()).unwrap();
        let q = MultiPoly::from_coeff_vector(Arc::clone(&ctx), field, &basis, &v);
        assert_eq!(p, q);
    }

    #[test]
    fn homogeneity_tracking() {
        let ctx = y(1);
        let field = f3();
        let h = parse_poly("y1^2 + y1*y2", &ctx, field).unwrap();
        assert_eq!(h.homogeneous_degree(), Some(2));
        let m = parse_poly("y1^2 + y2", &ctx, field).unwrap();
        assert_eq!(m.homogeneous_degree(), None);
        let z = MultiPoly::zero(ctx, field);
        assert_eq!(z.homogeneous_degree(), Some(0));
        assert!(z.is_homogeneous_of(17));
    }
}

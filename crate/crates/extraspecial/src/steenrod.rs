//! Steenrod operations on polynomial generators, and the multiplicative
//! norm that raises an index-p layer.
//!
//! The total operation is the ring endomorphism x -> x + x^p applied to
//! every variable.  For a homogeneous argument of degree d the i-th
//! operation is the graded piece of the total image in degree d + i(p-1);
//! for p = 2 that is Sq^i, for odd p it is P^i on the polynomial part
//! (the Bockstein acts by zero there).
//!
//! The norm of a homogeneous f with respect to a chosen variable v is
//!
//!   N(f) = sum_i (-1)^(d-i) P^i(f) v^((d-i)(p-1)).
//!
//! Three facts make this the right normalization, and all are enforced by
//! tests: N(y) = prod_{a in F_p} (y + a v); N is exactly multiplicative;
//! and N kills multiples of v, so it is well defined on the quotient by v.

use crate::dickson::DicksonTable;
use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use std::sync::Arc;

/// Image of f under the ring endomorphism sending every variable x to
/// x + x^p.
pub fn total_operation(f: &MultiPoly) -> MultiPoly {
    let ctx = Arc::clone(f.ctx());
    let field = f.field();
    let p = field.p() as u32;
    let images: Vec<MultiPoly> = (0..ctx.len())
        .map(|i| {
            let x = MultiPoly::var(Arc::clone(&ctx), field, i);
            x.add(&x.pow(p)).expect("same context")
        })
        .collect();
    f.map_variables(&images, ctx).expect("same context")
}

/// The graded piece of `g` in total degree `d`.
pub fn graded_piece(g: &MultiPoly, d: u32) -> MultiPoly {
    MultiPoly::from_terms(
        Arc::clone(g.ctx()),
        g.field(),
        g.terms()
            .filter(|(m, _)| m.degree() == d)
            .map(|(m, c)| (m.clone(), c)),
    )
}

/// P^i (Sq^i when p = 2) of a homogeneous polynomial.
pub fn steenrod_operation(f: &MultiPoly, i: u32) -> Result<MultiPoly> {
    let d = f
        .homogeneous_degree()
        .ok_or_else(|| Error::NotHomogeneous("steenrod operation".into()))?;
    let p = f.field().p() as u32;
    if i > d {
        // Instability: everything above the top operation vanishes.
        return Ok(MultiPoly::zero(Arc::clone(f.ctx()), f.field()));
    }
    Ok(graded_piece(&total_operation(f), d + i * (p - 1)))
}

/// Norm of a homogeneous polynomial with respect to the variable at
/// `v_index`.  The argument may involve that variable; multiples of it
/// are sent to zero.
pub fn norm(f: &MultiPoly, v_index: usize) -> Result<MultiPoly> {
    if v_index >= f.ctx().len() {
        return Err(Error::Dimension(format!(
            "norm variable index {v_index} out of range for {}",
            f.ctx()
        )));
    }
    let d = f
        .homogeneous_degree()
        .ok_or_else(|| Error::NotHomogeneous("norm".into()))?;
    if f.is_zero() {
        return Ok(f.clone());
    }
    let field = f.field();
    let p = field.p() as u32;
    let ctx = Arc::clone(f.ctx());
    let total = total_operation(f);
    let v = MultiPoly::var(Arc::clone(&ctx), field, v_index);
    let mut out = MultiPoly::zero(Arc::clone(&ctx), field);
    for i in 0..=d {
        let piece = graded_piece(&total, d + i * (p - 1));
        if piece.is_zero() {
            continue;
        }
        let sign = if (d - i) % 2 == 0 { 1 } else { -1 };
        let term = piece
            .mul(&v.pow((d - i) * (p - 1)))?
            .scale(field.from_i64(sign));
        out = out.add(&term)?;
    }
    Ok(out)
}

/// The closed form that the norm of a Dickson invariant must match:
///
///   sum_{i=r}^{m} (-1)^i Q_{m,i}^p x^(p^(i+1) - p^(r+1))
///   - [ sum_{i=r+1}^{m} (-1)^i Q_{m,i} x^(p^i - p^(r+1)) ]
///     * [ sum_{i=0}^{m} (-1)^i Q_{m,i} x^(p^i) ]^(p-1)
///
/// where x is a polynomial in a context containing t1..tm.
pub fn dickson_norm_rhs(
    table: &DicksonTable,
    m: u32,
    r: u32,
    x: &MultiPoly,
) -> Result<MultiPoly> {
    if r > m {
        return Err(Error::Invalid(format!(
            "dickson_norm_rhs needs r <= m, got r={r} m={m}"
        )));
    }
    let field = table.field();
    let p = field.p() as u32;
    let target = Arc::clone(x.ctx());
    let pw = |e: u32| (p as u64).pow(e);
    let sign = |i: u32| field.from_i64(if i % 2 == 0 { 1 } else { -1 });

    let mut first = MultiPoly::zero(Arc::clone(&target), field);
    for i in r..=m {
        let q = table.q(m, i)?.promote(Arc::clone(&target))?;
        let e = (pw(i + 1) - pw(r + 1)) as u32;
        let term = q.frobenius(1).mul(&x.pow(e))?.scale(sign(i));
        first = first.add(&term)?;
    }

    let mut second = MultiPoly::zero(Arc::clone(&target), field);
    for i in r + 1..=m {
        let q = table.q(m, i)?.promote(Arc::clone(&target))?;
        let e = (pw(i) - pw(r + 1)) as u32;
        let term = q.mul(&x.pow(e))?.scale(sign(i));
        second = second.add(&term)?;
    }

    let mut third = MultiPoly::zero(Arc::clone(&target), field);
    for i in 0..=m {
        let q = table.q(m, i)?.promote(Arc::clone(&target))?;
        let term = q.mul(&x.pow(pw(i) as u32))?.scale(sign(i));
        third = third.add(&term)?;
    }

    first.sub(&second.mul(&third.pow(p - 1))?)
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct NormDicksonReport {
    pub p: u8,
    pub m: u32,
    /// One entry per r in 0..=m: does (-1)^r N_x(Q_{m,r}) equal the
    /// closed form?
    pub holds: Vec<bool>,
}

impl NormDicksonReport {
    pub fn all_hold(&self) -> bool {
        self.holds.iter().all(|&b| b)
    }
}

/// Check (-1)^r N_x(Q_{m,r}) against `dickson_norm_rhs` for every r.
/// The norm variable is a fresh x adjoined above t1..tm.
pub fn norm_dickson_check(table: &DicksonTable, m: u32) -> Result<NormDicksonReport> {
    let field = table.field();
    let ctx = table.ctx(m).adjoin(&["x"])?;
    let x = MultiPoly::var(Arc::clone(&ctx), field, m as usize);
    let mut holds = Vec::new();
    for r in 0..=m {
        let q = table.q(m, r)?.promote(Arc::clone(&ctx))?;
        let lhs = norm(&q, m as usize)?
            .scale(field.from_i64(if r % 2 == 0 { 1 } else { -1 }));
        let rhs = dickson_norm_rhs(table, m, r, &x)?;
        holds.push(lhs == rhs);
    }
    Ok(NormDicksonReport {
        p: field.p(),
        m,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::PrimeField;
    use crate::poly::{format_poly, parse_poly};
    use crate::vars::VariableContext;

    fn setup(p: u8, n: u32) -> (Arc<VariableContext>, PrimeField) {
        (VariableContext::ambient(n), PrimeField::new(p).unwrap())
    }

    #[test]
    fn squares_on_f2() {
        let (ctx, field) = setup(2, 1);
        let f = parse_poly("y1*y2", &ctx, field).unwrap();
        let sq0 = steenrod_operation(&f, 0).unwrap();
        assert_eq!(sq0, f);
        let sq1 = steenrod_operation(&f, 1).unwrap();
        assert_eq!(format_poly(&sq1), "y1^2*y2 + y1*y2^2");
        let sq2 = steenrod_operation(&f, 2).unwrap();
        assert_eq!(format_poly(&sq2), "y1^2*y2^2");
        assert!(steenrod_operation(&f, 3).unwrap().is_zero());
    }

    #[test]
    fn power_operations_on_f3() {
        let (ctx, field) = setup(3, 1);
        let y1 = MultiPoly::var(Arc::clone(&ctx), field, 0);
        assert_eq!(steenrod_operation(&y1, 0).unwrap(), y1);
        assert_eq!(format_poly(&steenrod_operation(&y1, 1).unwrap()), "y1^3");
        let f = parse_poly("y1^2*y2", &ctx, field).unwrap();
        // Top operation is the p-th power.
        let top = steenrod_operation(&f, 3).unwrap();
        assert_eq!(top, f.pow(3));
    }

    #[test]
    fn total_operation_is_multiplicative() {
        let (ctx, field) = setup(3, 1);
        let f = parse_poly("y1^2 + y1*y2", &ctx, field).unwrap();
        let g = parse_poly("y2^3 + 2*y1^2*y2", &ctx, field).unwrap();
        let lhs = total_operation(&f.mul(&g).unwrap());
        let rhs = total_operation(&f).mul(&total_operation(&g)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mixed_degrees_are_rejected() {
        let (ctx, field) = setup(2, 1);
        let f = parse_poly("y1^2 + y2", &ctx, field).unwrap();
        assert!(matches!(
            steenrod_operation(&f, 1),
            Err(Error::NotHomogeneous(_))
        ));
        assert!(matches!(norm(&f, 1), Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn norm_of_a_variable_is_the_orbit_product() {
        for p in [2u8, 3, 5, 7] {
            let (ctx, field) = setup(p, 1);
            let y1 = MultiPoly::var(Arc::clone(&ctx), field, 0);
            let y2 = MultiPoly::var(Arc::clone(&ctx), field, 1);
            let n = norm(&y1, 1).unwrap();
            let mut product = MultiPoly::one(Arc::clone(&ctx), field);
            for a in field.elements() {
                product = product.mul(&y1.add(&y2.scale(a)).unwrap()).unwrap();
            }
            assert_eq!(n, product, "p={p}");
        }
    }

    #[test]
    fn norm_anchors() {
        let (ctx, field) = setup(3, 1);
        let y1 = MultiPoly::var(Arc::clone(&ctx), field, 0);
        assert_eq!(format_poly(&norm(&y1, 1).unwrap()), "y1^3 + 2*y1*y2^2");
        let (ctx2, f2) = setup(2, 1);
        let z = MultiPoly::var(Arc::clone(&ctx2), f2, 0);
        assert_eq!(format_poly(&norm(&z, 1).unwrap()), "y1^2 + y1*y2");
    }

    #[test]
    fn norm_is_multiplicative_and_respects_powers() {
        for p in [2u8, 3, 5] {
            let field = PrimeField::new(p).unwrap();
            let ctx = VariableContext::ambient(2); // y1..y4, norm var y4
            let f = parse_poly("y1 + 2*y2", &ctx, field).unwrap();
            let g = parse_poly("y2 + y3", &ctx, field).unwrap();
            let v = 3usize;
            let nfg = norm(&f.mul(&g).unwrap(), v).unwrap();
            let nf_ng = norm(&f, v).unwrap().mul(&norm(&g, v).unwrap()).unwrap();
            assert_eq!(nfg, nf_ng, "p={p}");
            let npow = norm(&f.pow(p as u32), v).unwrap();
            assert_eq!(npow, norm(&f, v).unwrap().pow(p as u32), "p={p}");
        }
    }

    #[test]
    fn norm_kills_multiples_of_the_norm_variable() {
        for p in [2u8, 3, 5] {
            let field = PrimeField::new(p).unwrap();
            let ctx = VariableContext::ambient(1);
            let g = parse_poly("y1^2 + y1*y2", &ctx, field).unwrap();
            let y2 = MultiPoly::var(Arc::clone(&ctx), field, 1);
            let killed = norm(&y2.mul(&g).unwrap(), 1).unwrap();
            assert!(killed.is_zero(), "p={p}");
            // Same-degree lifts have the same norm.
            let f = parse_poly("y1^3", &ctx, field).unwrap();
            let lift = f.add(&y2.mul(&g).unwrap()).unwrap();
            assert_eq!(norm(&lift, 1).unwrap(), norm(&f, 1).unwrap(), "p={p}");
        }
    }

    #[test]
    fn dickson_norms_match_the_closed_form() {
        for (p, m) in [(2u8, 1u32), (2, 2), (3, 1), (3, 2), (5, 1)] {
            let table = DicksonTable::new(PrimeField::new(p).unwrap(), 400);
            let report = norm_dickson_check(&table, m).unwrap();
            assert!(
                report.all_hold(),
                "p={p} m={m} results={:?}",
                report.holds
            );
        }
    }
}

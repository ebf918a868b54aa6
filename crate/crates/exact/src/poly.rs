//! Univariate polynomials over a number field.
//!
//! The free functions work on raw ascending coefficient vectors and are what
//! field arithmetic itself is built on; [`Polynomial`] is the owned wrapper
//! used everywhere else.

use std::fmt;

use num_traits::One;

use crate::error::AlgebraError;
use crate::field::{FieldElement, NumberField, Rational};

pub fn trim(k: &NumberField, mut v: Vec<FieldElement>) -> Vec<FieldElement> {
    while v.last().is_some_and(|c| k.is_zero(c)) {
        v.pop();
    }
    v
}

pub fn add(k: &NumberField, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => k.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        });
    }
    trim(k, out)
}

pub fn sub(k: &NumberField, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => k.sub(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => k.neg(y),
            (None, None) => unreachable!(),
        });
    }
    trim(k, out)
}

pub fn mul(k: &NumberField, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![k.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if k.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if k.is_zero(y) {
                continue;
            }
            out[i + j] = k.add(&out[i + j], &k.mul(x, y));
        }
    }
    trim(k, out)
}

pub fn scale(k: &NumberField, a: &[FieldElement], c: &FieldElement) -> Vec<FieldElement> {
    if k.is_zero(c) {
        return Vec::new();
    }
    trim(k, a.iter().map(|x| k.mul(x, c)).collect())
}

/// Remainder modulo a monic polynomial.
pub fn rem_monic(k: &NumberField, a: Vec<FieldElement>, m: &[FieldElement]) -> Vec<FieldElement> {
    let mut a = trim(k, a);
    let dm = m.len() - 1;
    while a.len() > dm {
        let top = a.pop().unwrap();
        if k.is_zero(&top) {
            continue;
        }
        let shift = a.len() - dm;
        for (i, c) in m[..dm].iter().enumerate() {
            if !k.is_zero(c) {
                a[shift + i] = k.sub(&a[shift + i], &k.mul(&top, c));
            }
        }
    }
    trim(k, a)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(
    k: &NumberField,
    a: &[FieldElement],
    b: &[FieldElement],
) -> Result<(Vec<FieldElement>, Vec<FieldElement>), AlgebraError> {
    let b = trim(k, b.to_vec());
    if b.is_empty() {
        return Err(AlgebraError::DivisionByZero);
    }
    let mut r = trim(k, a.to_vec());
    let db = b.len() - 1;
    if r.len() < b.len() {
        return Ok((Vec::new(), r));
    }
    let lc_inv = k.inv(b.last().unwrap())?;
    let mut q = vec![k.zero(); r.len() - db];
    while r.len() >= b.len() {
        let top = r.pop().unwrap();
        if k.is_zero(&top) {
            continue;
        }
        let coef = k.mul(&top, &lc_inv);
        let shift = r.len() - db;
        for (i, c) in b[..db].iter().enumerate() {
            if !k.is_zero(c) {
                r[shift + i] = k.sub(&r[shift + i], &k.mul(&coef, c));
            }
        }
        q[shift] = coef;
    }
    Ok((trim(k, q), trim(k, r)))
}

/// Extended gcd: returns `(g, s, t)` with `s a + t b = g` and `g` monic
/// (or zero when both inputs vanish).
pub fn xgcd(
    k: &NumberField,
    a: &[FieldElement],
    b: &[FieldElement],
) -> (Vec<FieldElement>, Vec<FieldElement>, Vec<FieldElement>) {
    let mut r0 = trim(k, a.to_vec());
    let mut r1 = trim(k, b.to_vec());
    let mut s0 = vec![k.one()];
    let mut s1 = Vec::new();
    let mut t0 = Vec::new();
    let mut t1 = vec![k.one()];
    while !r1.is_empty() {
        let (q, r) = divrem(k, &r0, &r1).expect("nonzero divisor");
        let s2 = sub(k, &s0, &mul(k, &q, &s1));
        let t2 = sub(k, &t0, &mul(k, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if let Some(lc) = r0.last().cloned() {
        let inv = k.inv(&lc).expect("nonzero leading coefficient");
        (scale(k, &r0, &inv), scale(k, &s0, &inv), scale(k, &t0, &inv))
    } else {
        (r0, s0, t0)
    }
}

pub fn render(k: &NumberField, coeffs: &[FieldElement], var: &str) -> String {
    let mut parts: Vec<(bool, String)> = Vec::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if k.is_zero(c) {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let cs = k.render(c);
        let simple = !cs[1..].contains([' ', '+']) && !cs[1..].contains(" - ");
        let (neg, body) = if simple && cs.starts_with('-') {
            (true, cs[1..].to_string())
        } else {
            (false, cs)
        };
        let term = if mono.is_empty() {
            if simple { body } else { format!("({body})") }
        } else if body == "1" {
            mono
        } else if simple {
            format!("{body}*{mono}")
        } else {
            format!("({body})*{mono}")
        };
        parts.push((neg, term));
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (neg, t)) in parts.into_iter().enumerate() {
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&t);
    }
    out
}

/// A univariate polynomial with coefficients in `field`.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    pub field: NumberField,
    /// Ascending coefficients, no trailing zeros.
    pub coeffs: Vec<FieldElement>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.field, &self.coeffs, "x"))
    }
}

impl Polynomial {
    pub fn new(field: &NumberField, coeffs: Vec<FieldElement>) -> Self {
        Polynomial { coeffs: trim(field, coeffs), field: field.clone() }
    }

    pub fn zero(field: &NumberField) -> Self {
        Polynomial { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &NumberField) -> Self {
        Self::constant(field, field.one())
    }

    pub fn x(field: &NumberField) -> Self {
        Polynomial::new(field, vec![field.zero(), field.one()])
    }

    pub fn constant(field: &NumberField, c: FieldElement) -> Self {
        Polynomial::new(field, vec![c])
    }

    pub fn from_ints(field: &NumberField, c: &[i64]) -> Self {
        Polynomial::new(field, c.iter().map(|&n| field.from_int(n)).collect())
    }

    pub fn from_rationals(field: &NumberField, c: &[Rational]) -> Self {
        Polynomial::new(field, c.iter().map(|r| field.from_rational(r.clone())).collect())
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, o: &Polynomial) -> Polynomial {
        Polynomial { field: self.field.clone(), coeffs: add(&self.field, &self.coeffs, &o.coeffs) }
    }

    pub fn sub(&self, o: &Polynomial) -> Polynomial {
        Polynomial { field: self.field.clone(), coeffs: sub(&self.field, &self.coeffs, &o.coeffs) }
    }

    pub fn mul(&self, o: &Polynomial) -> Polynomial {
        Polynomial { field: self.field.clone(), coeffs: mul(&self.field, &self.coeffs, &o.coeffs) }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| self.field.neg(c)).collect() }
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        Polynomial { field: self.field.clone(), coeffs: scale(&self.field, &self.coeffs, c) }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn divrem(&self, o: &Polynomial) -> Result<(Polynomial, Polynomial), AlgebraError> {
        let (q, r) = divrem(&self.field, &self.coeffs, &o.coeffs)?;
        Ok((Polynomial { field: self.field.clone(), coeffs: q }, Polynomial { field: self.field.clone(), coeffs: r }))
    }

    pub fn rem(&self, o: &Polynomial) -> Result<Polynomial, AlgebraError> {
        Ok(self.divrem(o)?.1)
    }

    /// Exact division; errors if `o` does not divide `self`.
    pub fn div_exact(&self, o: &Polynomial) -> Result<Polynomial, AlgebraError> {
        let (q, r) = self.divrem(o)?;
        if !r.is_zero() {
            return Err(AlgebraError::InvalidInput("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn monic(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(&self.leading()).expect("nonzero");
        self.scale(&inv)
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.field.is_one(&self.leading())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Polynomial) -> Polynomial {
        let (g, _, _) = xgcd(&self.field, &self.coeffs, &o.coeffs);
        Polynomial { field: self.field.clone(), coeffs: g }
    }

    pub fn xgcd(&self, o: &Polynomial) -> (Polynomial, Polynomial, Polynomial) {
        let (g, s, t) = xgcd(&self.field, &self.coeffs, &o.coeffs);
        let w = |c| Polynomial { field: self.field.clone(), coeffs: c };
        (w(g), w(s), w(t))
    }

    pub fn derivative(&self) -> Polynomial {
        let k = &self.field;
        let c = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| k.scale_rational(c, &Rational::from_integer((i as i64).into()))).collect();
        Polynomial::new(k, c)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let k = &self.field;
        let mut acc = k.zero();
        for c in self.coeffs.iter().rev() {
            acc = k.add(&k.mul(&acc, x), c);
        }
        acc
    }

    /// Evaluates at an element of an extension `ext` of the coefficient field.
    pub fn eval_in(&self, ext: &NumberField, x: &FieldElement) -> Result<FieldElement, AlgebraError> {
        let mut acc = ext.zero();
        for c in self.coeffs.iter().rev() {
            acc = ext.add(&ext.mul(&acc, x), &ext.embed_from(&self.field, c)?);
        }
        Ok(acc)
    }

    /// Substitutes another polynomial for the variable.
    pub fn compose(&self, g: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Polynomial::constant(&self.field, c.clone()));
        }
        acc
    }

    /// `p(x + c)`.
    pub fn shift(&self, c: &FieldElement) -> Polynomial {
        self.compose(&Polynomial::new(&self.field, vec![c.clone(), self.field.one()]))
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Polynomial) -> Result<Polynomial, AlgebraError> {
        let mut base = self.rem(m)?;
        let mut acc = Polynomial::one(&self.field).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            base = base.mul(&base).rem(m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Resultant by the Euclidean remainder sequence.
    pub fn resultant(&self, o: &Polynomial) -> FieldElement {
        let k = &self.field;
        if self.is_zero() || o.is_zero() {
            return k.zero();
        }
        let mut a = self.clone();
        let mut b = o.clone();
        let mut acc = k.one();
        loop {
            let da = a.deg() as u64;
            let db = b.deg() as u64;
            if db == 0 {
                return k.mul(&acc, &k.pow(&b.leading(), da));
            }
            let r = a.rem(&b).expect("nonzero");
            if r.is_zero() {
                return k.zero();
            }
            let dr = r.deg() as u64;
            if da % 2 == 1 && db % 2 == 1 {
                acc = k.neg(&acc);
            }
            acc = k.mul(&acc, &k.pow(&b.leading(), da - dr));
            a = b;
            b = r;
        }
    }

    pub fn discriminant_nonzero(&self) -> bool {
        self.gcd(&self.derivative()).deg() == 0
    }

    pub fn is_squarefree(&self) -> bool {
        self.deg() <= 0 || self.discriminant_nonzero()
    }

    /// Squarefree decomposition (Yun): pairs `(f_i, i)` with `self = lc * prod f_i^i`.
    pub fn squarefree_decomposition(&self) -> Vec<(Polynomial, usize)> {
        let mut out = Vec::new();
        if self.deg() <= 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).unwrap();
        let mut c = df.div_exact(&a0).unwrap();
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.deg() > 0 {
            let a = b.gcd(&d);
            if a.deg() > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).unwrap();
            c = d.div_exact(&a).unwrap();
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> Polynomial {
        let f = self.monic();
        if f.deg() <= 0 {
            return f;
        }
        f.div_exact(&f.gcd(&f.derivative())).unwrap()
    }

    /// Applies a map to every coefficient, landing in `target`.
    pub fn map_coeffs(&self, target: &NumberField, f: impl Fn(&FieldElement) -> FieldElement) -> Polynomial {
        Polynomial::new(target, self.coeffs.iter().map(f).collect())
    }

    /// Embeds the coefficients into an extension field of the same tower.
    pub fn embed(&self, target: &NumberField) -> Result<Polynomial, AlgebraError> {
        let c = self.coeffs.iter().map(|c| target.embed_from(&self.field, c)).collect::<Result<Vec<_>, _>>()?;
        Ok(Polynomial::new(target, c))
    }

    /// Rational coefficients, if all coefficients lie in `Q`.
    pub fn rational_coeffs(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(|c| c.as_rational()).collect()
    }

    pub fn render(&self, var: &str) -> String {
        render(&self.field, &self.coeffs, var)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }
}

pub fn rational_is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_reconstructs() {
        let q = NumberField::rationals();
        let a = Polynomial::from_ints(&q, &[1, 2, 3, 4, 5]);
        let b = Polynomial::from_ints(&q, &[-1, 0, 2]);
        let (qq, r) = a.divrem(&b).unwrap();
        assert_eq!(qq.mul(&b).add(&r), a);
        assert!(r.deg() < b.deg());
    }

    #[test]
    fn resultant_matches_root_product() {
        // res(x^2 - 2, x - 3) = (3)^2 - 2 up to sign conventions: prod over roots of g
        let q = NumberField::rationals();
        let f = Polynomial::from_ints(&q, &[-2, 0, 1]);
        let g = Polynomial::from_ints(&q, &[-3, 1]);
        assert_eq!(f.resultant(&g), q.from_int(7));
        assert_eq!(g.resultant(&f), q.from_int(7));
    }

    #[test]
    fn yun_decomposition() {
        let q = NumberField::rationals();
        let a = Polynomial::from_ints(&q, &[1, 1]);
        let b = Polynomial::from_ints(&q, &[-2, 0, 1]);
        let f = a.pow(3).mul(&b);
        let sf = f.squarefree_decomposition();
        assert_eq!(sf, vec![(b, 1), (a, 3)]);
    }

    #[test]
    fn render_polynomial() {
        let q = NumberField::rationals();
        assert_eq!(Polynomial::from_ints(&q, &[-2, 0, 1]).to_string(), "x^2 - 2");
        assert_eq!(Polynomial::from_ints(&q, &[1, -3, 0, 2]).to_string(), "2*x^3 - 3*x + 1");
    }
}

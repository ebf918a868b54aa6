//! Polynomial factorization over number field towers.
//!
//! Over `Q` the Zassenhaus algorithm is used. Over an extension `K(a)` the
//! polynomial is shifted until its norm down to `K` is squarefree, the norm
//! is factored over `K` recursively and the factors are recovered by gcds.

pub mod modp;
pub mod zassenhaus;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::AlgebraError;
use crate::field::{FieldElement, NumberField, Rational};
use crate::poly::Polynomial;

/// `f = unit * prod(g_i^{e_i})` with monic irreducible `g_i`.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Polynomial, usize)>,
}

impl Factorization {
    pub fn expand(&self, field: &NumberField) -> Polynomial {
        let mut acc = Polynomial::constant(field, self.unit.clone());
        for (g, e) in &self.factors {
            acc = acc.mul(&g.pow(*e as u32));
        }
        acc
    }
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted by degree and then by printed form.
pub fn factor(f: &Polynomial) -> Result<Factorization, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::InvalidInput("cannot factor the zero polynomial".into()));
    }
    let unit = f.leading();
    let mut factors = Vec::new();
    for (g, e) in f.squarefree_decomposition() {
        for h in factor_squarefree(&g)? {
            factors.push((h, e));
        }
    }
    factors.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then_with(|| a.0.to_string().cmp(&b.0.to_string())));
    Ok(Factorization { unit, factors })
}

/// Monic irreducible factors of a squarefree polynomial.
pub fn factor_squarefree(f: &Polynomial) -> Result<Vec<Polynomial>, AlgebraError> {
    let f = f.monic();
    if f.deg() <= 1 {
        return Ok(if f.deg() == 1 { vec![f] } else { Vec::new() });
    }
    if f.field.is_rationals() {
        Ok(factor_squarefree_rational(&f))
    } else if f.field.depth() == 1 {
        factor_squarefree_extension(&f)
    } else {
        // one norm down to Q from an absolute presentation is far cheaper
        // than a chain of norms through every level of the tower
        let abs = crate::tower::cached_absolutization(&f.field)?;
        let g = abs.to_absolute.apply_poly(&f);
        let mut out = Vec::new();
        for h in factor_squarefree(&g)? {
            out.push(abs.from_absolute.apply_poly(&h).monic());
        }
        Ok(out)
    }
}

pub fn is_irreducible(f: &Polynomial) -> Result<bool, AlgebraError> {
    if f.deg() <= 0 {
        return Ok(false);
    }
    if !f.is_squarefree() {
        return Ok(false);
    }
    Ok(factor_squarefree(f)?.len() == 1)
}

/// Distinct roots lying in the coefficient field.
pub fn roots(f: &Polynomial) -> Result<Vec<FieldElement>, AlgebraError> {
    let k = &f.field;
    Ok(factor(f)?.factors.iter().filter(|(g, _)| g.deg() == 1).map(|(g, _)| k.neg(&g.coeffs[0])).collect())
}

fn factor_squarefree_rational(f: &Polynomial) -> Vec<Polynomial> {
    let q = &f.field;
    let rats = f.rational_coeffs().expect("rational coefficients");
    let den = rats.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| (r * Rational::from_integer(den.clone())).to_integer()).collect();
    zassenhaus::factor_squarefree_z(&ints)
        .into_iter()
        .map(|g| {
            let lc = g.last().unwrap().clone();
            let c: Vec<FieldElement> =
                g.iter().map(|x| q.from_rational(Rational::new(x.clone(), lc.clone()))).collect();
            Polynomial::new(q, c)
        })
        .collect()
}

/// Newton interpolation over `k` through `(xs[i], ys[i])`.
pub fn interpolate(k: &NumberField, xs: &[FieldElement], ys: &[FieldElement]) -> Result<Polynomial, AlgebraError> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = k.sub(&dd[i], &dd[i - 1]);
            let den = k.sub(&xs[i], &xs[i - j]);
            dd[i] = k.div(&num, &den)?;
        }
    }
    let mut acc = Polynomial::constant(k, dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = Polynomial::new(k, vec![k.neg(&xs[i]), k.one()]);
        acc = acc.mul(&lin).add(&Polynomial::constant(k, dd[i].clone()));
    }
    Ok(acc)
}

/// Norm of `g` from `K(a)` down to `K`, i.e. `Res_y(m(y), g(x, y))`.
pub fn norm(g: &Polynomial) -> Result<Polynomial, AlgebraError> {
    let k = &g.field;
    let base = k.base().ok_or_else(|| AlgebraError::InvalidInput("norm over Q".into()))?;
    let m = Polynomial::new(base, k.minpoly().unwrap().to_vec());
    let total = g.deg().max(0) as usize * k.degree();
    let mut xs = Vec::with_capacity(total + 1);
    let mut ys = Vec::with_capacity(total + 1);
    for i in 0..=total {
        let x0 = k.from_int(i as i64);
        let v = g.eval(&x0);
        let gy = Polynomial::new(base, k.coefficients(&v));
        xs.push(base.from_int(i as i64));
        ys.push(m.resultant(&gy));
    }
    interpolate(base, &xs, &ys)
}

fn factor_squarefree_extension(f: &Polynomial) -> Result<Vec<Polynomial>, AlgebraError> {
    let k = &f.field;
    let alpha = k.generator().unwrap();
    for step in 0..64i64 {
        let s = if step % 2 == 0 { -(step / 2) } else { step / 2 + 1 };
        let sa = k.scale_rational(&alpha, &Rational::from_integer(s.into()));
        // g(x) = f(x - s a)
        let g = f.shift(&k.neg(&sa));
        let n = norm(&g)?;
        if !n.is_squarefree() {
            continue;
        }
        let mut out = Vec::new();
        for ni in factor_squarefree(&n)? {
            let h = g.gcd(&ni.embed(k)?);
            if h.deg() > 0 {
                out.push(h.shift(&sa).monic());
            }
        }
        return Ok(out);
    }
    Err(AlgebraError::NonConvergence("no shift gives a squarefree norm".into()))
}

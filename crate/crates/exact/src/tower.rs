//! Checked field construction, field homomorphisms and absolute presentations.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;

use crate::error::AlgebraError;
use crate::factor;
use crate::field::{FieldElement, NumberField, Rational, RootSelector};
use crate::matrix::Matrix;
use crate::numeric;
use crate::poly::Polynomial;

/// A field homomorphism determined by the images of the tower generators of
/// `source` (bottom-up) in `target`.
#[derive(Clone, Debug)]
pub struct FieldMap {
    pub source: NumberField,
    pub target: NumberField,
    pub gen_images: Vec<FieldElement>,
}

impl FieldMap {
    /// The inclusion of a subfield of the same tower.
    pub fn inclusion(sub: &NumberField, sup: &NumberField) -> Result<Self, AlgebraError> {
        let mut images = Vec::new();
        for f in sub.tower().iter().skip(1) {
            images.push(sup.embed_from(f, &f.generator().unwrap())?);
        }
        Ok(FieldMap { source: sub.clone(), target: sup.clone(), gen_images: images })
    }

    pub fn identity(k: &NumberField) -> Self {
        FieldMap::inclusion(k, k).expect("identity")
    }

    pub fn apply(&self, x: &FieldElement) -> FieldElement {
        self.apply_at(&self.source, x, self.source.depth())
    }

    fn apply_at(&self, level: &NumberField, x: &FieldElement, depth: usize) -> FieldElement {
        let t = &self.target;
        match level.base() {
            None => t.from_rational(x.as_rational().expect("rational element")),
            Some(base) => {
                let img = &self.gen_images[depth - 1];
                let mut acc = t.zero();
                for c in level.coefficients(x).iter().rev() {
                    acc = t.add(&t.mul(&acc, img), &self.apply_at(base, c, depth - 1));
                }
                acc
            }
        }
    }

    pub fn apply_poly(&self, p: &Polynomial) -> Polynomial {
        p.map_coeffs(&self.target, |c| self.apply(c))
    }

    pub fn apply_matrix(&self, m: &Matrix) -> Matrix {
        m.map_entries(&self.target, |c| self.apply(c))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FieldMap) -> FieldMap {
        FieldMap {
            source: self.source.clone(),
            target: other.target.clone(),
            gen_images: self.gen_images.iter().map(|g| other.apply(g)).collect(),
        }
    }
}

/// Adjoins a root of `minpoly` to `base` after checking irreducibility.
/// A linear polynomial returns `base` itself with the identity embedding.
pub fn field_adjoin(
    base: &NumberField,
    minpoly: &Polynomial,
    name: &str,
    selector: Option<RootSelector>,
) -> Result<(NumberField, FieldMap), AlgebraError> {
    if minpoly.field != *base {
        return Err(AlgebraError::FieldMismatch);
    }
    if minpoly.deg() < 1 || !minpoly.is_monic() {
        return Err(AlgebraError::InvalidInput("minimal polynomial must be monic of degree >= 1".into()));
    }
    if minpoly.deg() == 1 {
        return Ok((base.clone(), FieldMap::identity(base)));
    }
    if !factor::is_irreducible(minpoly)? {
        return Err(AlgebraError::ReduciblePolynomial);
    }
    let ext = NumberField::extend_unchecked(base, minpoly.coeffs.clone(), name, selector)?;
    let emb = FieldMap::inclusion(base, &ext)?;
    Ok((ext, emb))
}

/// Characteristic polynomial over `Q` of multiplication by `x` on `k`,
/// computed as an iterated norm of `t - x`.
pub fn absolute_charpoly(k: &NumberField, x: &FieldElement) -> Result<Polynomial, AlgebraError> {
    let mut p = Polynomial::new(k, vec![k.neg(x), k.one()]);
    while !p.field.is_rationals() {
        p = factor::norm(&p)?;
    }
    Ok(p)
}

/// Minimal polynomial over `Q` of an element.
pub fn absolute_minpoly(k: &NumberField, x: &FieldElement) -> Result<Polynomial, AlgebraError> {
    let cp = absolute_charpoly(k, x)?;
    Ok(cp.squarefree_part())
}

/// An absolute presentation `Q(θ)` of a tower together with inverse maps.
#[derive(Clone, Debug)]
pub struct Absolutization {
    pub field: NumberField,
    /// The primitive element as an element of the tower.
    pub primitive: FieldElement,
    pub to_absolute: FieldMap,
    pub from_absolute: FieldMap,
}

/// Picks a selector for the root of `p` closest to `z` with a radius that
/// isolates it from the other roots.
pub fn isolating_selector(p: &Polynomial, z: Complex64) -> RootSelector {
    let q = &p.field;
    let roots = numeric::roots_over(q, &p.coeffs);
    let mut sep = f64::INFINITY;
    for (i, a) in roots.iter().enumerate() {
        for b in &roots[i + 1..] {
            sep = sep.min((a - b).norm());
        }
    }
    let radius = if sep.is_finite() { (sep * 0.4).max(1e-12) } else { 1.0 };
    RootSelector { approx: z, radius }
}

fn build_absolute(k: &NumberField, theta: &FieldElement, minpoly: Polynomial, name: &str) -> Result<Absolutization, AlgebraError> {
    let q = NumberField::rationals();
    let n = k.absolute_degree();
    let z = k.to_complex(theta);
    let sel = isolating_selector(&minpoly, z);
    let l = NumberField::extend_unchecked(&q, minpoly.coeffs.clone(), name, Some(sel))?;
    // columns: flattened powers of θ
    let mut cols = Vec::with_capacity(n);
    let mut pw = k.one();
    for _ in 0..n {
        cols.push(k.flatten(&pw).into_iter().map(|r| q.from_rational(r)).collect::<Vec<_>>());
        pw = k.mul(&pw, theta);
    }
    let p = Matrix::from_columns(&q, n, &cols);
    let mut images = Vec::new();
    for f in k.tower().iter().skip(1) {
        let g = k.embed_from(f, &f.generator().unwrap())?;
        let v: Vec<FieldElement> = k.flatten(&g).into_iter().map(|r| q.from_rational(r)).collect();
        let c = p.solve_vec(&v)?;
        images.push(l.from_coefficients(c));
    }
    let to_absolute = FieldMap { source: k.clone(), target: l.clone(), gen_images: images };
    let from_absolute = FieldMap { source: l.clone(), target: k.clone(), gen_images: vec![theta.clone()] };
    Ok(Absolutization { field: l, primitive: theta.clone(), to_absolute, from_absolute })
}

fn small_ints() -> impl Iterator<Item = i64> {
    (1..).flat_map(|c| [c, -c])
}

/// Finds a primitive element of the tower of the form `α_r + c θ_{r-1}`
/// and presents the field as `Q(θ)`.
pub fn absolutize(k: &NumberField, name: &str) -> Result<Absolutization, AlgebraError> {
    if k.absolute_degree() == 1 {
        let q = NumberField::rationals();
        let images = k
            .tower()
            .iter()
            .skip(1)
            .map(|f| q.from_rational(f.flatten(&f.generator().unwrap())[0].clone()))
            .collect();
        let to = FieldMap { source: k.clone(), target: q.clone(), gen_images: images };
        let from = FieldMap { source: q.clone(), target: k.clone(), gen_images: vec![] };
        return Ok(Absolutization { field: q, primitive: k.one(), to_absolute: to, from_absolute: from });
    }
    let theta = primitive_element(k)?;
    let mp = absolute_charpoly(k, &theta)?;
    build_absolute(k, &theta, mp, name)
}

static ABS_CACHE: OnceLock<Mutex<HashMap<u64, Absolutization>>> = OnceLock::new();

/// [`absolutize`] memoized per field.
pub fn cached_absolutization(k: &NumberField) -> Result<Absolutization, AlgebraError> {
    let cache = ABS_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(a) = cache.lock().unwrap().get(&k.id()) {
        return Ok(a.clone());
    }
    let a = absolutize(k, "theta")?;
    cache.lock().unwrap().insert(k.id(), a.clone());
    Ok(a)
}

/// A primitive element of the tower over `Q`.
pub fn primitive_element(k: &NumberField) -> Result<FieldElement, AlgebraError> {
    let base = k.base().expect("extension");
    let alpha = k.generator().unwrap();
    if base.is_rationals() {
        return Ok(alpha);
    }
    let lower = k.embed_base(&primitive_element(base)?);
    if is_primitive(k, &alpha)? {
        return Ok(alpha);
    }
    for c in small_ints() {
        let t = k.add(&alpha, &k.scale_rational(&lower, &Rational::from_integer(c.into())));
        if is_primitive(k, &t)? {
            return Ok(t);
        }
    }
    unreachable!()
}

pub fn is_primitive(k: &NumberField, x: &FieldElement) -> Result<bool, AlgebraError> {
    Ok(absolute_charpoly(k, x)?.is_squarefree())
}

fn coefficient_size(p: &Polynomial) -> (u64, usize) {
    let rats = p.rational_coeffs().unwrap();
    let bits = rats.iter().map(|r| r.numer().bits() + r.denom().bits() - 1).sum();
    let terms = rats.iter().filter(|r| !num_traits::Zero::is_zero(*r)).count();
    (bits, terms)
}

/// Like [`absolutize`] but searches small monomials in the tower generators
/// (halved and thirded as well, and sums of two of them) for a primitive element whose minimal polynomial
/// has the smallest coefficients.
pub fn absolutize_simplified(k: &NumberField, name: &str) -> Result<Absolutization, AlgebraError> {
    if k.absolute_degree() == 1 {
        return absolutize(k, name);
    }
    let mut candidates = vec![primitive_element(k)?];
    let monos = monomials(k);
    for m in &monos {
        candidates.push(m.clone());
        for d in [2, 3] {
            candidates.push(k.scale_rational(m, &crate::field::rat(1, d)));
        }
    }
    for (i, a) in monos.iter().enumerate() {
        for b in &monos[i + 1..] {
            candidates.push(k.add(a, b));
            candidates.push(k.sub(a, b));
        }
    }
    let mut best: Option<((u64, usize), FieldElement, Polynomial)> = None;
    for c in candidates {
        if k.is_zero(&c) {
            continue;
        }
        let cp = absolute_charpoly(k, &c)?;
        if !cp.is_squarefree() {
            continue;
        }
        let size = coefficient_size(&cp);
        if best.as_ref().is_none_or(|(s, _, _)| size < *s) {
            best = Some((size, c, cp));
        }
    }
    let (_, theta, mp) = best.expect("primitive element exists");
    build_absolute(k, &theta, mp, name)
}

/// Monomials `∏ α_i^{e_i}` with `0 <= e_i < deg_i`, excluding 1.
fn monomials(k: &NumberField) -> Vec<FieldElement> {
    let tower = k.tower();
    let gens: Vec<(FieldElement, usize)> = tower
        .iter()
        .skip(1)
        .map(|f| (k.embed_from(f, &f.generator().unwrap()).unwrap(), f.degree()))
        .collect();
    let mut out = vec![k.one()];
    for (g, d) in gens {
        let mut next = Vec::new();
        for m in &out {
            let mut p = m.clone();
            for _ in 0..d {
                next.push(p.clone());
                p = k.mul(&p, &g);
            }
        }
        out = next;
    }
    out.into_iter().filter(|m| !k.is_one(m)).collect()
}

//! Towers of simple algebraic extensions of the rationals.
//!
//! A [`NumberField`] is either `Q` or `K(a)` where `K` is another number field
//! and `a` is a root of a monic irreducible polynomial over `K`. Elements are
//! plain values ([`FieldElement`]); all arithmetic goes through the field that
//! owns them, so elements stay small and cheap to clone.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::AlgebraError;
use crate::poly;

/// Exact rational number, always kept in lowest terms with positive denominator.
pub type Rational = BigRational;

static NEXT_FIELD_ID: AtomicU64 = AtomicU64::new(1);

/// An element of a number field tower.
///
/// At the bottom of the tower (`Q`) an element is a rational. In a simple
/// extension `K(a)` it is the residue `c_0 + c_1 a + ... + c_{d-1} a^{d-1}`
/// stored as its coefficient list over `K` with trailing zeros removed, so
/// structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FieldElement {
    Rat(Rational),
    Ext(Vec<FieldElement>),
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rat(r) => r.is_zero(),
            FieldElement::Ext(c) => c.is_empty(),
        }
    }

    /// Returns the rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            FieldElement::Rat(r) => Some(r.clone()),
            FieldElement::Ext(c) => match c.len() {
                0 => Some(Rational::zero()),
                1 => c[0].as_rational(),
                _ => None,
            },
        }
    }
}

/// Numeric embedding choice for a generator: the root of the minimal
/// polynomial closest to `approx`, which must be the only root within `radius`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSelector {
    pub approx: Complex64,
    pub radius: f64,
}

impl RootSelector {
    pub fn real(x: f64) -> Self {
        RootSelector { approx: Complex64::new(x, 0.0), radius: 1e-2 }
    }
}

struct Ext {
    base: NumberField,
    /// Monic minimal polynomial over `base`, ascending coefficients.
    minpoly: Vec<FieldElement>,
    name: String,
    selector: Option<RootSelector>,
    /// Numeric value of the generator under the chosen embedding.
    numeric_root: Complex64,
}

struct Inner {
    id: u64,
    ext: Option<Ext>,
    absolute_degree: usize,
    depth: usize,
}

/// A number field given as a tower of simple extensions over `Q`.
#[derive(Clone)]
pub struct NumberField(Arc<Inner>);

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) || self.0.id == other.0.id {
            return true;
        }
        match (&self.0.ext, &other.0.ext) {
            (None, None) => true,
            (Some(a), Some(b)) => a.name == b.name && a.minpoly == b.minpoly && a.base == b.base,
            _ => false,
        }
    }
}

impl Eq for NumberField {}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self.describe())
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

impl NumberField {
    pub fn rationals() -> Self {
        NumberField(Arc::new(Inner {
            id: NEXT_FIELD_ID.fetch_add(1, Ordering::Relaxed),
            ext: None,
            absolute_degree: 1,
            depth: 0,
        }))
    }

    /// Builds `base(a)` with `a` a root of `minpoly` without checking
    /// irreducibility. Use [`crate::tower::field_adjoin`] for the checked version.
    pub fn extend_unchecked(
        base: &NumberField,
        minpoly: Vec<FieldElement>,
        name: &str,
        selector: Option<RootSelector>,
    ) -> Result<Self, AlgebraError> {
        let minpoly = poly::trim(base, minpoly);
        if minpoly.len() < 2 {
            return Err(AlgebraError::InvalidInput("minimal polynomial must have degree >= 1".into()));
        }
        if !base.is_one(minpoly.last().unwrap()) {
            return Err(AlgebraError::InvalidInput("minimal polynomial must be monic".into()));
        }
        let numeric_root = crate::numeric::select_root(base, &minpoly, selector.as_ref())?;
        let degree = minpoly.len() - 1;
        Ok(NumberField(Arc::new(Inner {
            id: NEXT_FIELD_ID.fetch_add(1, Ordering::Relaxed),
            absolute_degree: base.absolute_degree() * degree,
            depth: base.depth() + 1,
            ext: Some(Ext { base: base.clone(), minpoly, name: name.to_string(), selector, numeric_root }),
        })))
    }

    /// Process-unique identifier of this field object.
    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn is_rationals(&self) -> bool {
        self.0.ext.is_none()
    }

    pub fn base(&self) -> Option<&NumberField> {
        self.0.ext.as_ref().map(|e| &e.base)
    }

    /// Degree over the immediate base field.
    pub fn degree(&self) -> usize {
        self.0.ext.as_ref().map_or(1, |e| e.minpoly.len() - 1)
    }

    pub fn absolute_degree(&self) -> usize {
        self.0.absolute_degree
    }

    /// Number of simple extensions between `Q` and this field.
    pub fn depth(&self) -> usize {
        self.0.depth
    }

    pub fn minpoly(&self) -> Option<&[FieldElement]> {
        self.0.ext.as_ref().map(|e| e.minpoly.as_slice())
    }

    pub fn generator_name(&self) -> Option<&str> {
        self.0.ext.as_ref().map(|e| e.name.as_str())
    }

    pub fn root_selector(&self) -> Option<&RootSelector> {
        self.0.ext.as_ref().and_then(|e| e.selector.as_ref())
    }

    pub fn numeric_root(&self) -> Option<Complex64> {
        self.0.ext.as_ref().map(|e| e.numeric_root)
    }

    /// The chain of fields `[Q, K_1, ..., self]`.
    pub fn tower(&self) -> Vec<NumberField> {
        let mut out = vec![self.clone()];
        let mut cur = self.clone();
        while let Some(b) = cur.base().cloned() {
            out.push(b.clone());
            cur = b;
        }
        out.reverse();
        out
    }

    /// Generator names from the bottom of the tower upwards.
    pub fn generator_names(&self) -> Vec<String> {
        self.tower().iter().filter_map(|f| f.generator_name().map(str::to_string)).collect()
    }

    pub fn describe(&self) -> String {
        match &self.0.ext {
            None => "Q".to_string(),
            Some(e) => {
                let p = poly::render(&e.base, &e.minpoly, "x");
                format!("{}[{}: {}]", e.base.describe(), e.name, p)
            }
        }
    }

    // ----- constructors of elements -----

    pub fn zero(&self) -> FieldElement {
        match self.0.ext {
            None => FieldElement::Rat(Rational::zero()),
            Some(_) => FieldElement::Ext(Vec::new()),
        }
    }

    pub fn from_rational(&self, r: Rational) -> FieldElement {
        match &self.0.ext {
            None => FieldElement::Rat(r),
            Some(e) => {
                if r.is_zero() {
                    FieldElement::Ext(Vec::new())
                } else {
                    FieldElement::Ext(vec![e.base.from_rational(r)])
                }
            }
        }
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(&self, n: i64, d: i64) -> FieldElement {
        self.from_rational(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// The generator of the top extension.
    pub fn generator(&self) -> Option<FieldElement> {
        let e = self.0.ext.as_ref()?;
        if e.minpoly.len() == 2 {
            // degree one extension: generator equals -c0
            return Some(FieldElement::Ext(poly::trim(&e.base, vec![e.base.neg(&e.minpoly[0])])));
        }
        Some(FieldElement::Ext(vec![e.base.zero(), e.base.one()]))
    }

    /// The generator of the tower level named `name`, embedded into this field.
    pub fn generator_by_name(&self, name: &str) -> Option<FieldElement> {
        let e = self.0.ext.as_ref()?;
        if e.name == name {
            return self.generator();
        }
        let below = e.base.generator_by_name(name)?;
        Some(self.embed_base(&below))
    }

    /// Embeds an element of the immediate base field.
    pub fn embed_base(&self, x: &FieldElement) -> FieldElement {
        match &self.0.ext {
            None => x.clone(),
            Some(e) => FieldElement::Ext(poly::trim(&e.base, vec![x.clone()])),
        }
    }

    /// Embeds an element of any field lower in the same tower.
    pub fn embed_from(&self, sub: &NumberField, x: &FieldElement) -> Result<FieldElement, AlgebraError> {
        if sub == self {
            return Ok(x.clone());
        }
        match &self.0.ext {
            None => Err(AlgebraError::FieldMismatch),
            Some(e) => {
                let y = e.base.embed_from(sub, x)?;
                Ok(self.embed_base(&y))
            }
        }
    }

    /// Residue coefficients over the base (length exactly `degree`).
    pub fn coefficients(&self, x: &FieldElement) -> Vec<FieldElement> {
        match (&self.0.ext, x) {
            (Some(e), FieldElement::Ext(c)) => {
                let mut v = c.clone();
                v.resize(self.degree(), e.base.zero());
                v
            }
            _ => vec![x.clone()],
        }
    }

    pub fn from_coefficients(&self, c: Vec<FieldElement>) -> FieldElement {
        match &self.0.ext {
            None => c.into_iter().next().unwrap_or_else(|| self.zero()),
            Some(e) => {
                let r = poly::rem_monic(&e.base, c, &e.minpoly);
                FieldElement::Ext(r)
            }
        }
    }

    /// Coordinates over `Q` in the monomial basis of the tower
    /// (lowest generator varies fastest).
    pub fn flatten(&self, x: &FieldElement) -> Vec<Rational> {
        match &self.0.ext {
            None => vec![match x {
                FieldElement::Rat(r) => r.clone(),
                FieldElement::Ext(_) => panic!("element does not belong to Q"),
            }],
            Some(e) => {
                let mut out = Vec::with_capacity(self.absolute_degree());
                for c in self.coefficients(x) {
                    out.extend(e.base.flatten(&c));
                }
                out
            }
        }
    }

    pub fn unflatten(&self, v: &[Rational]) -> FieldElement {
        match &self.0.ext {
            None => FieldElement::Rat(v[0].clone()),
            Some(e) => {
                let step = e.base.absolute_degree();
                let coeffs = v.chunks(step).map(|c| e.base.unflatten(c)).collect();
                FieldElement::Ext(poly::trim(&e.base, coeffs))
            }
        }
    }

    // ----- arithmetic -----

    pub fn is_zero(&self, x: &FieldElement) -> bool {
        x.is_zero()
    }

    pub fn is_one(&self, x: &FieldElement) -> bool {
        match (&self.0.ext, x) {
            (None, FieldElement::Rat(r)) => r.is_one(),
            (Some(e), FieldElement::Ext(c)) => c.len() == 1 && e.base.is_one(&c[0]),
            _ => false,
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (&self.0.ext, a, b) {
            (None, FieldElement::Rat(x), FieldElement::Rat(y)) => FieldElement::Rat(x + y),
            (Some(e), FieldElement::Ext(x), FieldElement::Ext(y)) => FieldElement::Ext(poly::add(&e.base, x, y)),
            _ => panic!("element/field level mismatch in add"),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (&self.0.ext, a, b) {
            (None, FieldElement::Rat(x), FieldElement::Rat(y)) => FieldElement::Rat(x - y),
            (Some(e), FieldElement::Ext(x), FieldElement::Ext(y)) => FieldElement::Ext(poly::sub(&e.base, x, y)),
            _ => panic!("element/field level mismatch in sub"),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        match (&self.0.ext, a) {
            (None, FieldElement::Rat(x)) => FieldElement::Rat(-x),
            (Some(e), FieldElement::Ext(x)) => FieldElement::Ext(x.iter().map(|c| e.base.neg(c)).collect()),
            _ => panic!("element/field level mismatch in neg"),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (&self.0.ext, a, b) {
            (None, FieldElement::Rat(x), FieldElement::Rat(y)) => FieldElement::Rat(x * y),
            (Some(e), FieldElement::Ext(x), FieldElement::Ext(y)) => {
                if x.is_empty() || y.is_empty() {
                    return FieldElement::Ext(Vec::new());
                }
                let prod = poly::mul(&e.base, x, y);
                FieldElement::Ext(poly::rem_monic(&e.base, prod, &e.minpoly))
            }
            _ => panic!("element/field level mismatch in mul"),
        }
    }

    /// Multiplies by an element of `Q` without a full polynomial product.
    pub fn scale_rational(&self, a: &FieldElement, r: &Rational) -> FieldElement {
        match (&self.0.ext, a) {
            (None, FieldElement::Rat(x)) => FieldElement::Rat(x * r),
            (Some(e), FieldElement::Ext(x)) => {
                if r.is_zero() {
                    return FieldElement::Ext(Vec::new());
                }
                FieldElement::Ext(x.iter().map(|c| e.base.scale_rational(c, r)).collect())
            }
            _ => panic!("element/field level mismatch in scale"),
        }
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, AlgebraError> {
        if a.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        match (&self.0.ext, a) {
            (None, FieldElement::Rat(x)) => Ok(FieldElement::Rat(x.recip())),
            (Some(e), FieldElement::Ext(x)) => {
                if x.len() == 1 {
                    return Ok(FieldElement::Ext(vec![e.base.inv(&x[0])?]));
                }
                // s*x + t*m = g with g a nonzero constant since m is irreducible
                let (g, s, _t) = poly::xgcd(&e.base, x, &e.minpoly);
                if g.len() != 1 {
                    return Err(AlgebraError::NotAField);
                }
                let ginv = e.base.inv(&g[0])?;
                let s = poly::scale(&e.base, &s, &ginv);
                Ok(FieldElement::Ext(poly::rem_monic(&e.base, s, &e.minpoly)))
            }
            _ => panic!("element/field level mismatch in inv"),
        }
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, AlgebraError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn powi(&self, a: &FieldElement, e: i64) -> Result<FieldElement, AlgebraError> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(&self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// Numeric value under the embedding fixed by the root selectors.
    pub fn to_complex(&self, x: &FieldElement) -> Complex64 {
        match (&self.0.ext, x) {
            (None, FieldElement::Rat(r)) => Complex64::new(rational_to_f64(r), 0.0),
            (Some(e), FieldElement::Ext(c)) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for coef in c.iter().rev() {
                    acc = acc * e.numeric_root + e.base.to_complex(coef);
                }
                acc
            }
            _ => panic!("element/field level mismatch"),
        }
    }

    /// Largest denominator/numerator size, a rough height used for sampling heuristics.
    pub fn height(&self, x: &FieldElement) -> u64 {
        self.flatten(x)
            .iter()
            .map(|r| r.numer().bits().max(r.denom().bits()))
            .max()
            .unwrap_or(0)
    }

    // ----- text form -----

    /// Renders an element as an expanded polynomial in the generator names,
    /// e.g. `1//2*sqrt2 + 3`.
    pub fn render(&self, x: &FieldElement) -> String {
        let names = self.generator_names();
        let mut terms: Vec<(Vec<usize>, Rational)> = Vec::new();
        self.collect_monomials(x, &mut Vec::new(), &mut terms);
        // highest top-generator exponent first
        terms.sort_by(|a, b| {
            let ka: Vec<usize> = a.0.iter().rev().cloned().collect();
            let kb: Vec<usize> = b.0.iter().rev().cloned().collect();
            kb.cmp(&ka)
        });
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (exps, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
                .collect();
            if mono.is_empty() {
                out.push_str(&render_rational(&a));
            } else {
                if !a.is_one() {
                    out.push_str(&render_rational(&a));
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }

    fn collect_monomials(&self, x: &FieldElement, prefix: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, Rational)>) {
        match (&self.0.ext, x) {
            (None, FieldElement::Rat(r)) => {
                if !r.is_zero() {
                    // prefix holds exponents from the top down; store bottom-up
                    let mut e = prefix.clone();
                    e.reverse();
                    out.push((e, r.clone()));
                }
            }
            (Some(e), FieldElement::Ext(c)) => {
                for (k, coef) in c.iter().enumerate() {
                    prefix.push(k);
                    e.base.collect_monomials(coef, prefix, out);
                    prefix.pop();
                }
            }
            _ => panic!("element/field level mismatch"),
        }
    }

    /// Parses an arithmetic expression in the generator names of this tower.
    pub fn parse(&self, s: &str) -> Result<FieldElement, AlgebraError> {
        crate::expr::parse_element(self, s)
    }
}

pub fn render_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}//{}", r.numer(), r.denom())
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // scale down huge numerators/denominators
    let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(900) as usize;
    let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
    n / d
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

//! Certified numerics for the Perron-Frobenius eigenvalue of nonnegative
//! integer matrices.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::AlgebraError;
use crate::field::{rational_to_f64, NumberField, Rational};
use crate::matrix::Matrix;
use crate::poly::Polynomial;

/// Sturm sequence of a squarefree rational polynomial.
pub struct Sturm {
    seq: Vec<Vec<Rational>>,
}

fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

impl Sturm {
    pub fn new(p: &Polynomial) -> Self {
        let mut seq = vec![p.clone(), p.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]).expect("nonzero");
            if r.is_zero() {
                break;
            }
            seq.push(r.neg());
        }
        Sturm { seq: seq.iter().map(|s| s.rational_coeffs().expect("rational polynomial")).collect() }
    }

    fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for s in &self.seq {
            let v = eval(s, x);
            let sg = if v.is_positive() { 1 } else if v.is_negative() { -1 } else { 0 };
            if sg != 0 {
                if last != 0 && sg != last {
                    count += 1;
                }
                last = sg;
            }
        }
        count
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

fn to_rational(x: f64) -> Rational {
    Rational::from_float(x).unwrap_or_else(Rational::zero)
}

/// Largest real root of a nonzero rational polynomial, isolated to width
/// `tol` by Sturm bisection, starting near `guess` when it is useful.
pub fn largest_real_root(p: &Polynomial, guess: Option<f64>, tol: f64) -> Result<f64, AlgebraError> {
    let p = p.squarefree_part();
    if p.deg() < 1 {
        return Err(AlgebraError::InvalidInput("constant polynomial has no roots".into()));
    }
    let c = p.rational_coeffs().expect("rational polynomial");
    let lc = c.last().unwrap().abs();
    let bound = c[..c.len() - 1].iter().fold(Rational::zero(), |m, x| if x.abs() > m { x.abs() } else { m }) / lc
        + Rational::from_integer(BigInt::from(1));
    let sturm = Sturm::new(&p);
    let mut lo = -bound.clone();
    let hi = bound;
    if sturm.count(&lo, &hi) == 0 {
        return Err(AlgebraError::InvalidInput("polynomial has no real roots".into()));
    }
    // tighten the lower end with the floating-point estimate when it is valid
    if let Some(g) = guess {
        let cand = to_rational(g - tol.max(1e-6));
        if cand > lo && sturm.count(&cand, &hi) >= 1 {
            lo = cand;
        }
    }
    let tol_r = to_rational(tol);
    let mut a = lo;
    let mut b = hi.clone();
    for _ in 0..400 {
        if &b - &a <= tol_r {
            return Ok(rational_to_f64(&((a + b) / Rational::from_integer(BigInt::from(2)))));
        }
        let mid = (&a + &b) / Rational::from_integer(BigInt::from(2));
        if sturm.count(&mid, &hi) >= 1 {
            a = mid;
        } else {
            b = mid;
        }
    }
    Err(AlgebraError::NonConvergence("bisection budget exhausted".into()))
}

/// Perron-Frobenius eigenvalue of a nonnegative integer matrix, to within `tol`.
pub fn dominant_eigenvalue_numeric(m: &[Vec<i64>], tol: f64) -> Result<f64, AlgebraError> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return Err(AlgebraError::DimensionMismatch("square matrix required".into()));
    }
    if m.iter().flatten().any(|&x| x < 0) {
        return Err(AlgebraError::InvalidInput("matrix entries must be nonnegative".into()));
    }
    // power iteration on M + I, which has the same Perron vector and avoids periodicity
    let mut v = vec![1.0f64; n];
    let mut lambda = 0.0;
    let mut converged = false;
    for _ in 0..10_000 {
        let mut w = vec![0.0; n];
        for i in 0..n {
            w[i] = v[i] + (0..n).map(|j| m[i][j] as f64 * v[j]).sum::<f64>();
        }
        let norm = w.iter().cloned().fold(0.0, f64::max);
        if norm == 0.0 {
            break;
        }
        for x in w.iter_mut() {
            *x /= norm;
        }
        let next = norm - 1.0;
        let delta = (next - lambda).abs();
        lambda = next;
        v = w;
        if delta < tol * 1e-3 {
            converged = true;
            break;
        }
    }
    let q = NumberField::rationals();
    let rows: Vec<&[i64]> = m.iter().map(|r| r.as_slice()).collect();
    let cp = Matrix::from_ints(&q, &rows).charpoly()?;
    let guess = if converged { Some(lambda) } else { None };
    largest_real_root(&cp, guess, tol)
}

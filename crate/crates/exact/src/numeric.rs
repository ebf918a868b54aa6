//! Floating-point root finding used to fix embeddings of generators.

use num_complex::Complex64;

use crate::error::AlgebraError;
use crate::field::{FieldElement, NumberField, RootSelector};

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// All complex roots of a polynomial with complex coefficients (ascending),
/// by Aberth iteration followed by Newton polishing.
pub fn complex_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lc = coeffs[n];
    let c: Vec<Complex64> = coeffs.iter().map(|a| a / lc).collect();
    // Cauchy bound for the initial circle
    let bound = 1.0 + c[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(bound * 0.5 + 0.1, t)
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner(&c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 0.0 {
                        s += 1.0 / d;
                    }
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..5 {
            let (p, dp) = horner(&c, *zi);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.is_finite() {
                break;
            }
            *zi -= step;
        }
    }
    z
}

/// Numeric roots of a polynomial over `base`, using the fixed embedding of `base`.
pub fn roots_over(base: &NumberField, coeffs: &[FieldElement]) -> Vec<Complex64> {
    let c: Vec<Complex64> = coeffs.iter().map(|x| base.to_complex(x)).collect();
    complex_roots(&c)
}

/// Chooses the numeric value of a new generator. Without a selector the root
/// with the largest real part is taken (ties broken by larger imaginary part).
pub fn select_root(
    base: &NumberField,
    minpoly: &[FieldElement],
    selector: Option<&RootSelector>,
) -> Result<Complex64, AlgebraError> {
    let roots = roots_over(base, minpoly);
    match selector {
        None => {
            let mut best = roots[0];
            for &r in &roots[1..] {
                let tol = 1e-9 * (1.0 + r.norm());
                if r.re > best.re + tol || ((r.re - best.re).abs() <= tol && r.im > best.im) {
                    best = r;
                }
            }
            Ok(best)
        }
        Some(sel) => {
            let near: Vec<Complex64> = roots.iter().copied().filter(|r| (r - sel.approx).norm() <= sel.radius).collect();
            if near.len() == 1 {
                Ok(near[0])
            } else {
                Err(AlgebraError::AmbiguousRoot(format!(
                    "{} roots within {} of {}",
                    near.len(),
                    sel.radius,
                    sel.approx
                )))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_x8_plus_1() {
        let mut c = vec![Complex64::new(0.0, 0.0); 9];
        c[0] = Complex64::new(1.0, 0.0);
        c[8] = Complex64::new(1.0, 0.0);
        let r = complex_roots(&c);
        assert_eq!(r.len(), 8);
        for z in r {
            assert!((z.powu(8) + 1.0).norm() < 1e-10);
        }
    }
}

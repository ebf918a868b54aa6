//! Multiplication tables and global consistency checks for a list of central simples.

use exact_algebra::Matrix;

use super::{fpdim_object, fpdims, smatrix, tensor_center, Center, CenterObject, CenterSimples, HomMethod};
use crate::error::{FusionError, Result};

/// `N_{ij}^k = dim Hom(Z_k, Z_i ⊗ Z_j) / dim End(Z_k)`.
pub fn mult_table(center: &Center, simples: &[CenterObject], end_dims: &[usize]) -> Result<Vec<Vec<Vec<usize>>>> {
    let m = simples.len();
    let mut table = vec![vec![vec![0; m]; m]; m];
    for i in 0..m {
        for j in 0..m {
            let t = tensor_center(&center.cat, &simples[i], &simples[j])?;
            for kk in 0..m {
                let h = center.hom_with(&simples[kk], &t, HomMethod::Direct)?.len();
                table[i][j][kk] = h / end_dims[kk];
            }
        }
    }
    Ok(table)
}

/// Result of the global checks; `violations` is empty when everything holds.
#[derive(Clone, Debug)]
pub struct GlobalReport {
    pub fpdim_sum: f64,
    pub fpdim_expected: f64,
    pub dim_sum: Option<exact_algebra::FieldElement>,
    pub smatrix: Matrix,
    pub violations: Vec<String>,
}

/// (a) `Σ FPdim(Z)² / dim End(Z) = FPdim(C)²`, (b) `Σ dim(Z)² = dim(C)²` when all
/// simples are scalar, (c) `S` symmetric, (d) `S` invertible when split.
pub fn verify_global(center: &Center, simples: &[CenterObject], end_dims: &[usize]) -> Result<GlobalReport> {
    let cat = &center.cat;
    let k = &cat.field;
    let fp = fpdims(cat)?;
    let fp_c: f64 = fp.iter().map(|d| d * d).sum();
    let fpdim_sum: f64 = simples
        .iter()
        .zip(end_dims)
        .map(|(s, &e)| fpdim_object(&fp, &s.object).powi(2) / e as f64)
        .sum();
    let mut violations = Vec::new();
    let tol = 1e-9 * fp_c * fp_c;
    if (fpdim_sum - fp_c * fp_c).abs() > tol.max(1e-9) {
        violations.push(format!("FPdim sum {} differs from FPdim(C)^2 = {}", fpdim_sum, fp_c * fp_c));
    }
    let split = end_dims.iter().all(|&e| e == 1);
    let mut dim_sum = None;
    if split {
        let mut acc = k.zero();
        for s in simples {
            let d = s.dim(cat)?;
            acc = k.add(&acc, &k.mul(&d, &d));
        }
        let dc = cat.dim_category();
        if acc != k.mul(&dc, &dc) {
            violations.push(format!("sum of squared dimensions {} differs from dim(C)^2 = {}", k.render(&acc), k.render(&k.mul(&dc, &dc))));
        }
        dim_sum = Some(acc);
    }
    let s = smatrix(cat, simples)?;
    if s.transpose() != s {
        violations.push("S-matrix is not symmetric".into());
    }
    if split && s.rows > 0 && s.inverse().is_err() {
        violations.push("S-matrix is singular".into());
    }
    Ok(GlobalReport { fpdim_sum, fpdim_expected: fp_c * fp_c, dim_sum, smatrix: s, violations })
}

/// Accepts simples whose simplicity rests on an exhausted budget only if the
/// global checks pass; otherwise the run is inconclusive.
pub fn certify(center: &Center, res: &CenterSimples) -> Result<()> {
    if res.certified.iter().all(|&c| c) {
        return Ok(());
    }
    let rep = verify_global(center, &res.simples, &res.end_dims)?;
    if rep.violations.is_empty() {
        Ok(())
    } else {
        Err(FusionError::Inconclusive(format!("uncertified simples fail the global checks: {}", rep.violations.join("; "))))
    }
}

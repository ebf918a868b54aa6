//! Scalar extension and splitting of non-split central simples.

use exact_algebra::factor::factor;
use exact_algebra::{field_adjoin, FieldMap, NumberField, Polynomial};

pub use crate::center::{fpdim_object, fpdims};
use crate::center::{decompose, Center, CenterObject, DecomposeOptions, Decomposition, Summand};
use crate::error::{FusionError, Result};
use crate::fusion::FusionData;

/// Iteration bound for [`split_all`].
pub const MAX_SPLIT_STEPS: usize = 8;

fn check_source(k: &NumberField, e: &FieldMap) -> Result<()> {
    if *k != e.source {
        return Err(FusionError::FieldMismatch(format!(
            "extension starts at {} but the data lives over {}",
            e.source.describe(),
            k.describe()
        )));
    }
    Ok(())
}

pub fn extend_scalars(cat: &FusionData, e: &FieldMap) -> Result<FusionData> {
    check_source(&cat.field, e)?;
    cat.map_field(&e.target, |x| e.apply(x))
}

pub fn extend_center_object(z: &CenterObject, e: &FieldMap) -> Result<CenterObject> {
    check_source(z.braiding.components[0].field(), e)?;
    Ok(z.map_field(&e.target, |x| e.apply(x)))
}

pub fn extend_center(center: &Center, e: &FieldMap) -> Result<Center> {
    let cat = extend_scalars(&center.cat, e)?;
    center.map_field(cat, |x| e.apply(x))
}

/// Result of splitting a family of central simples.
#[derive(Clone, Debug)]
pub struct SplitResult {
    /// Minimal polynomials adjoined, each over the previous field.
    pub tower: Vec<Polynomial>,
    /// Embedding of the original field into the final one.
    pub embedding: FieldMap,
    pub center: Center,
    /// One decomposition per input, over the final field.
    pub parts: Vec<Decomposition>,
}

impl SplitResult {
    pub fn field(&self) -> &NumberField {
        &self.embedding.target
    }

    /// All split simples, in input order.
    pub fn simples(&self) -> Vec<&Summand> {
        self.parts.iter().flat_map(|d| d.summands.iter()).collect()
    }
}

/// First irreducible factor of degree > 1 of the minimal polynomial of an
/// End basis element, scanning the basis in order.
fn splitting_polynomial(center: &Center, z: &CenterObject) -> Result<Option<Polynomial>> {
    for b in center.hom(z, z)? {
        let m = b.block_diagonal().minpoly()?;
        if m.deg() > 1 {
            let fac = factor(&m)?;
            if let Some((p, _)) = fac.factors.into_iter().find(|(p, _)| p.deg() > 1) {
                return Ok(Some(p));
            }
        }
    }
    Ok(None)
}

/// Adjoins roots of endomorphism minimal polynomials until every summand has
/// scalar endomorphisms, re-decomposing after each extension.
pub fn split_all(center: &Center, simples: &[CenterObject], opts: &DecomposeOptions) -> Result<SplitResult> {
    let mut parts = Vec::with_capacity(simples.len());
    for z in simples {
        let end_dim = center.hom(z, z)?.len();
        if end_dim == 0 {
            return Err(FusionError::NotSimple);
        }
        parts.push(Decomposition {
            summands: vec![Summand { object: z.clone(), multiplicity: 1, end_dim, certified: true }],
        });
    }
    let mut cur = center.clone();
    let mut embedding = FieldMap::identity(center.field());
    let mut tower = Vec::new();
    loop {
        let pending = parts.iter().flat_map(|d| d.summands.iter()).find(|s| s.end_dim > 1);
        let Some(s) = pending else { break };
        if tower.len() == MAX_SPLIT_STEPS {
            return Err(FusionError::Inconclusive(format!("not split after {} extensions", MAX_SPLIT_STEPS)));
        }
        let p = splitting_polynomial(&cur, &s.object)?.ok_or_else(|| {
            FusionError::Inconclusive("non-trivial End algebra without a non-scalar basis element".into())
        })?;
        let name = format!("w{}", tower.len() + 1);
        let (_, e) = field_adjoin(cur.field(), &p, &name, None)?;
        let next = extend_center(&cur, &e)?;
        let mut new_parts = Vec::with_capacity(parts.len());
        for d in &parts {
            let mut summands = Vec::new();
            for s in &d.summands {
                let obj = extend_center_object(&s.object, &e)?;
                if s.end_dim == 1 {
                    summands.push(Summand { object: obj, ..s.clone() });
                    continue;
                }
                for t in decompose(&next, &obj, opts)?.summands {
                    summands.push(Summand { multiplicity: t.multiplicity * s.multiplicity, ..t });
                }
            }
            new_parts.push(Decomposition { summands });
        }
        parts = new_parts;
        embedding = embedding.then(&e);
        tower.push(p);
        cur = next;
    }
    Ok(SplitResult { tower, embedding, center: cur, parts })
}

pub fn split(center: &Center, z: &CenterObject, opts: &DecomposeOptions) -> Result<SplitResult> {
    split_all(center, std::slice::from_ref(z), opts)
}

/// `Σ FPdim(X_i)²` over the simples of a split category.
pub fn fpdim_category(cat: &FusionData) -> Result<f64> {
    Ok(fpdims(cat)?.iter().map(|d| d * d).sum())
}

/// `Σ FPdim(Z)² / dim End(Z)` over central simples.
pub fn fpdim_center(cat: &FusionData, simples: &[CenterObject], end_dims: &[usize]) -> Result<f64> {
    let fp = fpdims(cat)?;
    Ok(simples
        .iter()
        .zip(end_dims)
        .map(|(s, &e)| fpdim_object(&fp, &s.object).powi(2) / e as f64)
        .sum())
}

#[derive(Clone, Debug)]
pub struct SplitCheck {
    pub multiplicities: Vec<usize>,
    pub fpdims: Vec<f64>,
    pub fpdim_input: f64,
    /// `Σ multiplicity · FPdim` over the summands.
    pub fpdim_total: f64,
    pub holds: bool,
}

/// Splits `z` and checks that all summands share one multiplicity and one FPdim.
pub fn check_prop_5_1(center: &Center, z: &CenterObject, opts: &DecomposeOptions) -> Result<(SplitResult, SplitCheck)> {
    let res = split(center, z, opts)?;
    let fp = fpdims(&center.cat)?;
    let summands = &res.parts[0].summands;
    let multiplicities: Vec<usize> = summands.iter().map(|s| s.multiplicity).collect();
    let dims: Vec<f64> = summands.iter().map(|s| fpdim_object(&fp, &s.object.object)).collect();
    let fpdim_input = fpdim_object(&fp, &z.object);
    let fpdim_total: f64 = multiplicities.iter().zip(&dims).map(|(&m, d)| m as f64 * d).sum();
    let holds = multiplicities.iter().all(|&m| m == multiplicities[0])
        && dims.iter().all(|d| (d - dims[0]).abs() <= 1e-9)
        && (fpdim_total - fpdim_input).abs() <= 1e-9 * fpdim_input.max(1.0);
    Ok((res, SplitCheck { multiplicities, fpdims: dims, fpdim_input, fpdim_total, holds }))
}

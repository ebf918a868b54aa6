//! The induction functor `I: C -> Z(C)` and its two adjunctions with the forgetful functor.

use exact_algebra::{FieldElement, Matrix};
use rayon::prelude::*;

use super::{check_half_braiding, is_central, CenterObject};
use crate::error::{FusionError, Result};
use crate::fusion::FusionData;
use crate::morphism::{direct_sum, hom_basis, Morphism, Object};

/// Normalization of the dual bases in the induced half-braiding: a basis
/// element pair `(f, g)` of the `(i, j)` block is scaled so that the
/// closed pairing equals `d_i/d_j`, `1` or `d_j/d_i` respectively.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pairing {
    Ratio,
    Unit,
    InverseRatio,
}

impl Pairing {
    pub const ALL: [Pairing; 3] = [Pairing::Ratio, Pairing::Unit, Pairing::InverseRatio];

    fn multiplier(self, cat: &FusionData, i: usize, j: usize) -> FieldElement {
        let k = &cat.field;
        let (di, dj) = (cat.dim_simple(i), cat.dim_simple(j));
        match self {
            Pairing::Ratio => k.div(&di, &dj).expect("nonzero dimensions"),
            Pairing::Unit => k.one(),
            Pairing::InverseRatio => k.div(&dj, &di).expect("nonzero dimensions"),
        }
    }
}

/// `I(V)` with the summand structure `⊕_i (X_i ⊗ V) ⊗ X_i*`.
#[derive(Clone, Debug)]
pub struct Induced {
    pub v: Object,
    pub center: CenterObject,
    pub summands: Vec<Object>,
    pub inj: Vec<Morphism>,
    pub proj: Vec<Morphism>,
}

/// Scalar `λ` with `ev_j ∘ (g ⊗ id) ∘ a^{-1} ∘ (id ⊗ f) = λ · ev_i`.
fn pairing_value(cat: &FusionData, i: usize, j: usize, w: &Object, f: &Morphism, g: &Morphism) -> Result<FieldElement> {
    let k = &cat.field;
    let xj = cat.simple(j);
    let xis = cat.simple(cat.dual[i]);
    let closed = cat
        .ev(j)
        .compose(&cat.tensor_id(g, &xj)?)?
        .compose(&cat.associator_inverse(&xis, w, &xj)?)?
        .compose(&cat.id_tensor(&xis, f)?)?;
    let v = closed.blocks[cat.unit].get(0, 0).clone();
    Ok(k.div(&v, cat.ev_scalar(i))?)
}

/// Block `γ(W)_{ij}: ((X_i ⊗ V) ⊗ X_i*) ⊗ W -> W ⊗ ((X_j ⊗ V) ⊗ X_j*)`.
fn induced_block(cat: &FusionData, v: &Object, w: &Object, i: usize, j: usize, pairing: Pairing) -> Result<Option<Morphism>> {
    let k = &cat.field;
    let (xi, xj) = (cat.simple(i), cat.simple(j));
    let (xis, xjs) = (cat.simple(cat.dual[i]), cat.simple(cat.dual[j]));
    let wxj = cat.tensor_objects(w, &xj)?;
    let bf = hom_basis(k, &xi, &wxj);
    if bf.is_empty() {
        return Ok(None);
    }
    let xisw = cat.tensor_objects(&xis, w)?;
    let bg = hom_basis(k, &xisw, &xjs);
    if bg.len() != bf.len() {
        return Err(FusionError::InvalidData("duality does not match fusion multiplicities".into()));
    }
    let d = bf.len();
    let mut gram = Matrix::zeros(k, d, d);
    for (a, f) in bf.iter().enumerate() {
        for (b, g) in bg.iter().enumerate() {
            gram.set(a, b, pairing_value(cat, i, j, w, f, g)?);
        }
    }
    let ginv = gram
        .inverse()
        .map_err(|_| FusionError::InvalidData(format!("degenerate pairing at ({}, {})", i + 1, j + 1)))?;
    let m = pairing.multiplier(cat, i, j);
    let xiv = cat.tensor_objects(&xi, v)?;
    let mut middle: Option<Morphism> = None;
    for (a, f) in bf.iter().enumerate() {
        // g'_a = Σ_b g_b (G^{-1})_{ba}, scaled by the multiplier
        let mut g = Morphism::zero(k, &xisw, &xjs);
        for (b, gb) in bg.iter().enumerate() {
            let c = ginv.get(b, a);
            if !c.is_zero() {
                g = g.add(&gb.scale(c))?;
            }
        }
        let g = g.scale(&m);
        let term = cat.tensor_morphisms(&cat.tensor_id(f, v)?, &g)?;
        middle = Some(match middle {
            None => term,
            Some(acc) => acc.add(&term)?,
        });
    }
    let middle = middle.expect("nonempty basis");
    let xjv = cat.tensor_objects(&xj, v)?;
    let block = cat
        .associator(w, &xjv, &xjs)?
        .compose(&cat.tensor_id(&cat.associator(w, &xj, v)?, &xjs)?)?
        .compose(&middle)?
        .compose(&cat.associator(&xiv, &xis, w)?)?;
    Ok(Some(block))
}

/// `I(V)` with the half-braiding assembled blockwise from dual bases.
pub fn induction_with(cat: &FusionData, v: &Object, pairing: Pairing) -> Result<Induced> {
    let n = cat.rank();
    let k = &cat.field;
    let summands: Vec<Object> = (0..n)
        .map(|i| {
            let xiv = cat.tensor_objects(&cat.simple(i), v)?;
            cat.tensor_objects(&xiv, &cat.simple(cat.dual[i]))
        })
        .collect::<Result<_>>()?;
    let (total, inj, proj) = direct_sum(k, &summands);
    let mut comps = Vec::with_capacity(n);
    for kk in 0..n {
        let w = cat.simple(kk);
        let mut acc = Morphism::zero(k, &cat.tensor_objects(&total, &w)?, &cat.tensor_objects(&w, &total)?);
        for i in 0..n {
            if summands[i].is_zero() {
                continue;
            }
            let pi = cat.tensor_id(&proj[i], &w)?;
            for j in 0..n {
                if summands[j].is_zero() {
                    continue;
                }
                if let Some(b) = induced_block(cat, v, &w, i, j, pairing)? {
                    let term = cat.id_tensor(&w, &inj[j])?.compose(&b)?.compose(&pi)?;
                    acc = acc.add(&term)?;
                }
            }
        }
        comps.push(acc);
    }
    let center = CenterObject::new(cat, total, comps)?;
    Ok(Induced { v: v.clone(), center, summands, inj, proj })
}

/// `φ_i(f): (X_i ⊗ V) ⊗ X_i* -> Y` for `f: V -> Y`.
fn phi_left(cat: &FusionData, y: &CenterObject, f: &Morphism, i: usize) -> Result<Morphism> {
    let xi = cat.simple(i);
    let xis = cat.simple(cat.dual[i]);
    let right_ev = cat.ev(cat.dual[i]).scale(&cat.spherical[i]);
    let inv = y.braiding.inverse_component(i);
    cat.id_tensor(&y.object, &right_ev)?
        .compose(&cat.associator(&y.object, &xi, &xis)?)?
        .compose(&cat.tensor_id(inv, &xis)?)?
        .compose(&cat.tensor_id(&cat.id_tensor(&xi, f)?, &xis)?)
}

/// `σ_i(f): Y -> (X_i ⊗ V) ⊗ X_i*` for `f: Y -> V`.
fn sigma_right(cat: &FusionData, y: &CenterObject, f: &Morphism, i: usize) -> Result<Morphism> {
    let xi = cat.simple(i);
    let xis = cat.simple(cat.dual[i]);
    cat.tensor_id(&cat.id_tensor(&xi, f)?, &xis)?
        .compose(&cat.tensor_id(y.gamma(i), &xis)?)?
        .compose(&cat.associator_inverse(&y.object, &xi, &xis)?)?
        .compose(&cat.id_tensor(&y.object, &cat.coev(i))?)
}

fn raw_left(cat: &FusionData, ind: &Induced, y: &CenterObject, f: &Morphism) -> Result<Morphism> {
    let k = &cat.field;
    if f.domain != ind.v || f.codomain != y.object {
        return Err(FusionError::ShapeMismatch("adjoint_left expects f: V -> Y".into()));
    }
    let mut acc = Morphism::zero(k, &ind.center.object, &y.object);
    for i in 0..cat.rank() {
        if ind.summands[i].is_zero() {
            continue;
        }
        let term = phi_left(cat, y, f, i)?.compose(&ind.proj[i])?.scale(&cat.dim_simple(i));
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

fn raw_right(cat: &FusionData, ind: &Induced, y: &CenterObject, f: &Morphism) -> Result<Morphism> {
    let k = &cat.field;
    if f.domain != y.object || f.codomain != ind.v {
        return Err(FusionError::ShapeMismatch("adjoint_right expects f: Y -> V".into()));
    }
    let mut acc = Morphism::zero(k, &y.object, &ind.center.object);
    for i in 0..cat.rank() {
        if ind.summands[i].is_zero() {
            continue;
        }
        acc = acc.add(&ind.inj[i].compose(&sigma_right(cat, y, f, i)?)?)?;
    }
    Ok(acc)
}

/// A category together with the inductions of a center-generating family.
#[derive(Clone, Debug)]
pub struct Center {
    pub cat: FusionData,
    pub pairing: Pairing,
    pub generators: Vec<usize>,
    pub induced: Vec<Induced>,
    left_scale: FieldElement,
    right_scale: FieldElement,
}

impl Center {
    pub fn new(cat: FusionData) -> Result<Self> {
        Self::with_jobs(cat, 1)
    }

    /// Builds the inductions of the generators, `jobs` at a time.
    pub fn with_jobs(cat: FusionData, jobs: usize) -> Result<Self> {
        let generators = center_generating_simples(&cat);
        let k = cat.field.clone();
        let mut failures = Vec::new();
        for pairing in Pairing::ALL {
            let build = |&s: &usize| induction_with(&cat, &cat.simple(s), pairing);
            let induced: Vec<Induced> = if jobs > 1 {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build()
                    .map_err(|e| FusionError::InvalidData(e.to_string()))?;
                pool.install(|| generators.par_iter().map(build).collect::<Result<_>>())?
            } else {
                generators.iter().map(build).collect::<Result<_>>()?
            };
            let mut center = Center {
                cat: cat.clone(),
                pairing,
                generators: generators.clone(),
                induced,
                left_scale: k.one(),
                right_scale: k.one(),
            };
            match center.calibrate() {
                Ok(()) => return Ok(center),
                Err(e) => failures.push(format!("{:?}: {}", pairing, e)),
            }
        }
        Err(FusionError::InvalidData(format!("no pairing normalization yields a valid induction ({})", failures.join("; "))))
    }

    /// Checks the induced half-braidings and the centrality of both adjunctions
    /// on every generator, then fixes the round-trip scalars.
    fn calibrate(&mut self) -> Result<()> {
        let cat = &self.cat;
        let k = &cat.field;
        for ind in &self.induced {
            if let Some(v) = check_half_braiding(cat, &ind.center.object, &ind.center.braiding.components)? {
                return Err(FusionError::NotCentral(v));
            }
        }
        let mut left = None;
        let mut right = None;
        for ind in &self.induced {
            let y = &ind.center;
            for f in hom_basis(k, &ind.v, &y.object) {
                let g = raw_left(cat, ind, y, &f)?;
                if !is_central(cat, &ind.center, y, &g)? {
                    return Err(FusionError::NotCentral("left adjunction".into()));
                }
                if left.is_none() {
                    left = Some(round_trip_scalar(&f, &g.compose(&ind.inj[cat.unit])?)?);
                }
            }
            for f in hom_basis(k, &y.object, &ind.v) {
                let g = raw_right(cat, ind, y, &f)?;
                if !is_central(cat, y, &ind.center, &g)? {
                    return Err(FusionError::NotCentral("right adjunction".into()));
                }
                if right.is_none() {
                    right = Some(round_trip_scalar(&f, &ind.proj[cat.unit].compose(&g)?)?);
                }
            }
        }
        self.left_scale = left.unwrap_or_else(|| k.one());
        self.right_scale = right.unwrap_or_else(|| k.one());
        Ok(())
    }

    pub fn field(&self) -> &exact_algebra::NumberField {
        &self.cat.field
    }

    pub fn induce(&self, v: &Object) -> Result<Induced> {
        induction_with(&self.cat, v, self.pairing)
    }

    /// `f: V -> Y` to the central morphism `I(V) -> (Y, γ)`.
    pub fn adjoint_left(&self, ind: &Induced, y: &CenterObject, f: &Morphism) -> Result<Morphism> {
        let g = raw_left(&self.cat, ind, y, f)?;
        Ok(g.scale(&self.cat.field.inv(&self.left_scale)?))
    }

    /// `g ↦ g ∘ ι_𝟙`.
    pub fn adjoint_left_inv(&self, ind: &Induced, g: &Morphism) -> Result<Morphism> {
        g.compose(&ind.inj[self.cat.unit])
    }

    /// `f: Y -> V` to the central morphism `(Y, γ) -> I(V)`.
    pub fn adjoint_right(&self, ind: &Induced, y: &CenterObject, f: &Morphism) -> Result<Morphism> {
        let g = raw_right(&self.cat, ind, y, f)?;
        Ok(g.scale(&self.cat.field.inv(&self.right_scale)?))
    }

    /// `g ↦ p_𝟙 ∘ g`.
    pub fn adjoint_right_inv(&self, ind: &Induced, g: &Morphism) -> Result<Morphism> {
        ind.proj[self.cat.unit].compose(g)
    }

    /// Basis of `End(I(V))` as the image of `Hom(V, FI(V))` under the left adjunction.
    pub fn induced_endomorphisms(&self, ind: &Induced) -> Result<Vec<Morphism>> {
        hom_basis(&self.cat.field, &ind.v, &ind.center.object)
            .iter()
            .map(|f| self.adjoint_left(ind, &ind.center, f))
            .collect()
    }

    /// Scalars `(left, right)` divided out of the adjunction round trips.
    pub fn normalization(&self) -> (&FieldElement, &FieldElement) {
        (&self.left_scale, &self.right_scale)
    }

    /// Base change along a field embedding. The inductions and scalars are
    /// mapped entrywise; the hexagon and adjunction identities are polynomial
    /// in the entries, so no recalibration is needed.
    pub fn map_field(&self, cat: FusionData, f: impl Fn(&FieldElement) -> FieldElement) -> Result<Center> {
        if cat.fusion != self.cat.fusion {
            return Err(FusionError::InvalidData("extended category has different fusion rules".into()));
        }
        let target = cat.field.clone();
        let mf = |m: &Morphism| m.map_field(&target, &f);
        let induced = self
            .induced
            .iter()
            .map(|ind| Induced {
                v: ind.v.clone(),
                center: ind.center.map_field(&target, &f),
                summands: ind.summands.clone(),
                inj: ind.inj.iter().map(mf).collect(),
                proj: ind.proj.iter().map(mf).collect(),
            })
            .collect();
        Ok(Center {
            cat,
            pairing: self.pairing,
            generators: self.generators.clone(),
            induced,
            left_scale: f(&self.left_scale),
            right_scale: f(&self.right_scale),
        })
    }
}

/// `c` with `back = c · f`, for a nonzero `f`.
fn round_trip_scalar(f: &Morphism, back: &Morphism) -> Result<FieldElement> {
    let k = f.field().clone();
    let fv = f.to_vector();
    let bv = back.to_vector();
    let pos = fv.iter().position(|x| !x.is_zero()).ok_or_else(|| FusionError::InvalidData("zero morphism".into()))?;
    let c = k.div(&bv[pos], &fv[pos])?;
    if fv.iter().zip(&bv).any(|(a, b)| k.mul(a, &c) != *b) {
        return Err(FusionError::NotCentral("adjunction round trip is not a scalar multiple".into()));
    }
    if c.is_zero() {
        return Err(FusionError::NotCentral("adjunction round trip vanishes".into()));
    }
    Ok(c)
}

/// One representative per orbit of `X ↦ J ⊗ X ⊗ J*` over invertible `J`.
pub fn center_generating_simples(cat: &FusionData) -> Vec<usize> {
    cat.conjugation_classes().iter().map(|c| c[0]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{vec_g, CayleyTable};
    use exact_algebra::NumberField;

    fn c3() -> FusionData {
        vec_g(&CayleyTable::cyclic(3).unwrap(), &NumberField::rationals()).unwrap()
    }

    #[test]
    fn induced_unit_is_regular_sum() {
        let cat = c3();
        let c = Center::new(cat.clone()).unwrap();
        assert_eq!(c.generators, vec![0, 1, 2]);
        let ind = c.induce(&cat.unit_object()).unwrap();
        assert_eq!(ind.center.object, Object(vec![3, 0, 0]));
        assert_eq!(c.induced_endomorphisms(&ind).unwrap().len(), 3);
    }

    #[test]
    fn every_pairing_gives_a_half_braiding_on_groups() {
        let cat = c3();
        for p in Pairing::ALL {
            let ind = induction_with(&cat, &cat.simple(1), p).unwrap();
            assert_eq!(check_half_braiding(&cat, &ind.center.object, &ind.center.braiding.components).unwrap(), None);
        }
    }

    #[test]
    fn adjunctions_round_trip() {
        let cat = c3();
        let k = cat.field.clone();
        let c = Center::new(cat.clone()).unwrap();
        let ind = c.induce(&cat.simple(2)).unwrap();
        let y = &ind.center;
        for f in hom_basis(&k, &ind.v, &y.object) {
            let g = c.adjoint_left(&ind, y, &f).unwrap();
            assert!(is_central(&cat, &ind.center, y, &g).unwrap());
            assert_eq!(c.adjoint_left_inv(&ind, &g).unwrap(), f);
        }
        for f in hom_basis(&k, &y.object, &ind.v) {
            let g = c.adjoint_right(&ind, y, &f).unwrap();
            assert_eq!(c.adjoint_right_inv(&ind, &g).unwrap(), f);
        }
    }

    #[test]
    fn map_field_rejects_other_rules() {
        let c = Center::new(c3()).unwrap();
        let other = vec_g(&CayleyTable::cyclic(2).unwrap(), &NumberField::rationals()).unwrap();
        assert!(c.map_field(other, |x| x.clone()).is_err());
        let same = c.map_field(c3(), |x| x.clone()).unwrap();
        assert_eq!(same.induced[1].center, c.induced[1].center);
    }
}

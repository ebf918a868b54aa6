//! The Drinfeld center `Z(C)` of a spherical fusion category.
//!
//! A central object is a pair `(Z, γ)` where `γ(X_i): Z ⊗ X_i -> X_i ⊗ Z`
//! is given on every simple `X_i`; the braiding with a non-simple object is
//! assembled from these components.

mod decompose;
mod global;
mod hom;
mod induction;

pub use decompose::{center_simples, decompose, CenterSimples, DecomposeOptions, Decomposition, Summand};
pub use global::{certify, mult_table, verify_global, GlobalReport};
pub use hom::{hom_direct, hom_projection, projection_e, HomMethod};
pub use induction::{center_generating_simples, induction_with, Center, Induced, Pairing};

use exact_algebra::{FieldElement, Matrix, NumberField};

use crate::error::{FusionError, Result};
use crate::fusion::FusionData;
use crate::morphism::{hom_basis, Morphism, Object};

#[derive(Clone, Debug, PartialEq)]
pub struct HalfBraiding {
    pub carrier: Object,
    pub components: Vec<Morphism>,
    inverses: Vec<Morphism>,
}

impl HalfBraiding {
    /// Checks shapes and invertibility; the hexagon is checked separately.
    pub fn new(cat: &FusionData, carrier: Object, components: Vec<Morphism>) -> Result<Self> {
        if components.len() != cat.rank() {
            return Err(FusionError::ShapeMismatch(format!(
                "{} components for {} simples",
                components.len(),
                cat.rank()
            )));
        }
        let mut inverses = Vec::with_capacity(components.len());
        for (i, c) in components.iter().enumerate() {
            let xi = cat.simple(i);
            let dom = cat.tensor_objects(&carrier, &xi)?;
            let cod = cat.tensor_objects(&xi, &carrier)?;
            if c.domain != dom || c.codomain != cod {
                return Err(FusionError::ShapeMismatch(format!("component {} has the wrong shape", i + 1)));
            }
            let inv = c
                .inverse()
                .map_err(|_| FusionError::NotCentral(format!("component {} is not invertible", i + 1)))?;
            inverses.push(inv);
        }
        Ok(HalfBraiding { carrier, components, inverses })
    }

    /// Identity components on a multiple of the unit.
    pub fn trivial(cat: &FusionData, copies: usize) -> Self {
        let carrier = cat.unit_object().scale(copies);
        let components: Vec<Morphism> = (0..cat.rank())
            .map(|i| {
                let x = cat.tensor_objects(&carrier, &cat.simple(i)).expect("simple objects");
                Morphism::identity(&cat.field, &x)
            })
            .collect();
        HalfBraiding { carrier, inverses: components.clone(), components }
    }

    pub fn component(&self, i: usize) -> &Morphism {
        &self.components[i]
    }

    pub fn inverse_component(&self, i: usize) -> &Morphism {
        &self.inverses[i]
    }

    /// `γ(W): Z ⊗ W -> W ⊗ Z` for an arbitrary object `W`, copy by copy.
    pub fn at(&self, cat: &FusionData, w: &Object) -> Morphism {
        self.assemble(cat, w, false)
    }

    /// `γ(W)^{-1}: W ⊗ Z -> Z ⊗ W`.
    pub fn inverse_at(&self, cat: &FusionData, w: &Object) -> Morphism {
        self.assemble(cat, w, true)
    }

    fn assemble(&self, cat: &FusionData, w: &Object, inverse: bool) -> Morphism {
        let n = cat.rank();
        let z = &self.carrier;
        let zw = cat.layout(z, w);
        let wz = cat.layout(w, z);
        let parts = if inverse { &self.inverses } else { &self.components };
        let mut out = if inverse {
            Morphism::zero(&cat.field, &wz.object, &zw.object)
        } else {
            Morphism::zero(&cat.field, &zw.object, &wz.object)
        };
        for i in 0..n {
            if w.0[i] == 0 {
                continue;
            }
            let xi = cat.simple(i);
            let zx = cat.layout(z, &xi);
            let xz = cat.layout(&xi, z);
            for c in 0..w.0[i] {
                for l in 0..n {
                    let block = &parts[i].blocks[l];
                    if block.rows == 0 {
                        continue;
                    }
                    // (small index, index inside the tensor with W)
                    let mut zside = Vec::new();
                    let mut wside = Vec::new();
                    for a in 0..n {
                        for ca in 0..z.0[a] {
                            for al in 0..cat.fusion[a][i][l] {
                                zside.push((zx.index(l, a, ca, i, 0, al), zw.index(l, a, ca, i, c, al)));
                            }
                            for al in 0..cat.fusion[i][a][l] {
                                wside.push((xz.index(l, i, 0, a, ca, al), wz.index(l, i, c, a, ca, al)));
                            }
                        }
                    }
                    let (rows, cols) = if inverse { (&zside, &wside) } else { (&wside, &zside) };
                    for &(sr, br) in rows {
                        for &(sc, bc) in cols {
                            let v = block.get(sr, sc);
                            if !v.is_zero() {
                                out.blocks[l].set(br, bc, v.clone());
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn map_field(&self, target: &NumberField, f: impl Fn(&FieldElement) -> FieldElement) -> HalfBraiding {
        HalfBraiding {
            carrier: self.carrier.clone(),
            components: self.components.iter().map(|c| c.map_field(target, &f)).collect(),
            inverses: self.inverses.iter().map(|c| c.map_field(target, &f)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CenterObject {
    pub object: Object,
    pub braiding: HalfBraiding,
}

impl CenterObject {
    pub fn new(cat: &FusionData, object: Object, components: Vec<Morphism>) -> Result<Self> {
        let braiding = HalfBraiding::new(cat, object.clone(), components)?;
        Ok(CenterObject { object, braiding })
    }

    pub fn from_braiding(braiding: HalfBraiding) -> Self {
        CenterObject { object: braiding.carrier.clone(), braiding }
    }

    pub fn unit(cat: &FusionData) -> Self {
        Self::from_braiding(HalfBraiding::trivial(cat, 1))
    }

    pub fn gamma(&self, i: usize) -> &Morphism {
        self.braiding.component(i)
    }

    pub fn dim(&self, cat: &FusionData) -> Result<FieldElement> {
        cat.dim_object(&self.object)
    }

    pub fn map_field(&self, target: &NumberField, f: impl Fn(&FieldElement) -> FieldElement) -> CenterObject {
        CenterObject { object: self.object.clone(), braiding: self.braiding.map_field(target, f) }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CenterMorphism {
    pub domain: CenterObject,
    pub codomain: CenterObject,
    pub underlying: Morphism,
}

impl CenterMorphism {
    pub fn new(cat: &FusionData, domain: CenterObject, codomain: CenterObject, underlying: Morphism) -> Result<Self> {
        if underlying.domain != domain.object || underlying.codomain != codomain.object {
            return Err(FusionError::ShapeMismatch("underlying morphism does not match central objects".into()));
        }
        if let Some(i) = central_violation(cat, &domain, &codomain, &underlying)? {
            return Err(FusionError::NotCentral(format!("square fails at simple {}", i + 1)));
        }
        Ok(CenterMorphism { domain, codomain, underlying })
    }
}

/// First simple `X_i` at which `γ_Y(X_i) ∘ (f ⊗ id) = (id ⊗ f) ∘ γ_X(X_i)` fails.
pub fn central_violation(cat: &FusionData, x: &CenterObject, y: &CenterObject, f: &Morphism) -> Result<Option<usize>> {
    for i in 0..cat.rank() {
        let xi = cat.simple(i);
        let lhs = y.gamma(i).compose(&cat.tensor_id(f, &xi)?)?;
        let rhs = cat.id_tensor(&xi, f)?.compose(x.gamma(i))?;
        if lhs != rhs {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

pub fn is_central(cat: &FusionData, x: &CenterObject, y: &CenterObject, f: &Morphism) -> Result<bool> {
    Ok(central_violation(cat, x, y, f)?.is_none())
}

/// Checks invertibility, `γ(𝟙) = id` and the hexagon
/// `a_{i,j,Z} ∘ (t ⊗ id) ∘ γ(X_k) = (id ⊗ γ(X_j)) ∘ a_{i,Z,j} ∘ (γ(X_i) ⊗ id) ∘ a^{-1}_{Z,i,j} ∘ (id ⊗ t)`
/// for all `t` in a basis of `Hom(X_k, X_i ⊗ X_j)`. Returns the first violation.
pub fn check_half_braiding(cat: &FusionData, z: &Object, components: &[Morphism]) -> Result<Option<String>> {
    let n = cat.rank();
    let k = &cat.field;
    if components.len() != n {
        return Err(FusionError::ShapeMismatch("wrong number of components".into()));
    }
    for (i, c) in components.iter().enumerate() {
        let xi = cat.simple(i);
        if c.domain != cat.tensor_objects(z, &xi)? || c.codomain != cat.tensor_objects(&xi, z)? {
            return Err(FusionError::ShapeMismatch(format!("component {} has the wrong shape", i + 1)));
        }
        if c.inverse().is_err() {
            return Ok(Some(format!("component {} is not invertible", i + 1)));
        }
    }
    if !components[cat.unit].is_identity() {
        return Ok(Some("component at the unit is not the identity".into()));
    }
    let id_z = Morphism::identity(k, z);
    for i in 0..n {
        let xi = cat.simple(i);
        for j in 0..n {
            let xj = cat.simple(j);
            let xij = cat.tensor_objects(&xi, &xj)?;
            let right_fixed = cat
                .id_tensor(&xi, &components[j])?
                .compose(&cat.associator(&xi, z, &xj)?)?
                .compose(&cat.tensor_id(&components[i], &xj)?)?
                .compose(&cat.associator_inverse(z, &xi, &xj)?)?;
            let a_ijz = cat.associator(&xi, &xj, z)?;
            for kk in 0..n {
                if cat.fusion[i][j][kk] == 0 {
                    continue;
                }
                let xk = cat.simple(kk);
                for t in hom_basis(k, &xk, &xij) {
                    let lhs = a_ijz.compose(&cat.tensor_morphisms(&t, &id_z)?)?.compose(&components[kk])?;
                    let rhs = right_fixed.compose(&cat.tensor_morphisms(&id_z, &t)?)?;
                    if lhs != rhs {
                        return Ok(Some(format!("hexagon fails at ({}, {}, {})", i + 1, j + 1, kk + 1)));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Half-braiding on a stable subobject `ι: W -> Z` with retraction `p`:
/// `γ_W(X) = (id ⊗ p) ∘ γ_Z(X) ∘ (ι ⊗ id)`.
pub fn restrict_half_braiding(
    cat: &FusionData,
    gamma: &HalfBraiding,
    iota: &Morphism,
    p: &Morphism,
) -> Result<HalfBraiding> {
    if !p.compose(iota)?.is_identity() {
        return Err(FusionError::ShapeMismatch("p ∘ ι is not the identity".into()));
    }
    let w = iota.domain.clone();
    let mut comps = Vec::with_capacity(cat.rank());
    for i in 0..cat.rank() {
        let xi = cat.simple(i);
        let into = gamma.component(i).compose(&cat.tensor_id(iota, &xi)?)?;
        let c = cat.id_tensor(&xi, p)?.compose(&into)?;
        // stability: γ_Z ∘ (ι ⊗ id) factors through id ⊗ ι
        if cat.id_tensor(&xi, iota)?.compose(&c)? != into {
            return Err(FusionError::NotStable(format!("subobject is not stable at simple {}", i + 1)));
        }
        comps.push(c);
    }
    HalfBraiding::new(cat, w, comps)
}

/// `γ_{X ⊗ Y}(W) = a_{W,X,Y} ∘ (γ_X(W) ⊗ id) ∘ a^{-1}_{X,W,Y} ∘ (id ⊗ γ_Y(W)) ∘ a_{X,Y,W}`.
pub fn tensor_center(cat: &FusionData, x: &CenterObject, y: &CenterObject) -> Result<CenterObject> {
    let xy = cat.tensor_objects(&x.object, &y.object)?;
    let mut comps = Vec::with_capacity(cat.rank());
    for i in 0..cat.rank() {
        let w = cat.simple(i);
        let c = cat
            .associator(&w, &x.object, &y.object)?
            .compose(&cat.tensor_id(x.gamma(i), &y.object)?)?
            .compose(&cat.associator_inverse(&x.object, &w, &y.object)?)?
            .compose(&cat.id_tensor(&x.object, y.gamma(i))?)?
            .compose(&cat.associator(&x.object, &y.object, &w)?)?;
        comps.push(c);
    }
    CenterObject::new(cat, xy, comps)
}

/// Direct sum of central objects with its injections and projections.
pub fn direct_sum_center(cat: &FusionData, parts: &[CenterObject]) -> Result<(CenterObject, Vec<Morphism>, Vec<Morphism>)> {
    let objs: Vec<Object> = parts.iter().map(|p| p.object.clone()).collect();
    let (sum, inj, proj) = crate::morphism::direct_sum(&cat.field, &objs);
    let mut comps = Vec::with_capacity(cat.rank());
    for i in 0..cat.rank() {
        let xi = cat.simple(i);
        let mut acc = Morphism::zero(&cat.field, &cat.tensor_objects(&sum, &xi)?, &cat.tensor_objects(&xi, &sum)?);
        for (t, part) in parts.iter().enumerate() {
            let term = cat
                .id_tensor(&xi, &inj[t])?
                .compose(part.gamma(i))?
                .compose(&cat.tensor_id(&proj[t], &xi)?)?;
            acc = acc.add(&term)?;
        }
        comps.push(acc);
    }
    Ok((CenterObject::new(cat, sum, comps)?, inj, proj))
}

/// Braiding `c_{X,Y} = γ_X(F Y): X ⊗ Y -> Y ⊗ X`.
pub fn braiding(cat: &FusionData, x: &CenterObject, y: &CenterObject) -> Morphism {
    x.braiding.at(cat, &y.object)
}

/// `S_{ij} = Tr(c_{Z_j,Z_i} ∘ c_{Z_i,Z_j})`.
pub fn smatrix(cat: &FusionData, simples: &[CenterObject]) -> Result<Matrix> {
    let m = simples.len();
    let k = &cat.field;
    let mut s = Matrix::zeros(k, m, m);
    for a in 0..m {
        for b in 0..m {
            let double = braiding(cat, &simples[b], &simples[a]).compose(&braiding(cat, &simples[a], &simples[b]))?;
            s.set(a, b, cat.trace(&double)?);
        }
    }
    Ok(s)
}

/// `Σ_l m_l FPdim(X_l)` for a multiplicity vector, from the Perron eigenvalues of the fusion matrices.
pub fn fpdims(cat: &FusionData) -> Result<Vec<f64>> {
    (0..cat.rank())
        .map(|i| Ok(exact_algebra::dominant_eigenvalue_numeric(&cat.fusion_matrix(i), 1e-12)?))
        .collect()
}

pub fn fpdim_object(fp: &[f64], x: &Object) -> f64 {
    x.0.iter().zip(fp).map(|(&m, d)| m as f64 * d).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{vec_g, CayleyTable};

    fn c2() -> FusionData {
        vec_g(&CayleyTable::cyclic(2).unwrap(), &NumberField::rationals()).unwrap()
    }

    /// `δ_e` with `γ(δ_g) = c`.
    fn character(cat: &FusionData, c: i64) -> Vec<Morphism> {
        let k = &cat.field;
        (0..2).map(|i| Morphism::scalar(k, &cat.simple(i), &k.from_int(if i == 0 { 1 } else { c }))).collect()
    }

    #[test]
    fn trivial_braiding_is_valid() {
        let cat = c2();
        let t = HalfBraiding::trivial(&cat, 2);
        assert_eq!(check_half_braiding(&cat, &t.carrier, &t.components).unwrap(), None);
    }

    #[test]
    fn sign_character_passes_and_scaling_fails() {
        let cat = c2();
        let e = cat.unit_object();
        assert_eq!(check_half_braiding(&cat, &e, &character(&cat, -1)).unwrap(), None);
        let bad = check_half_braiding(&cat, &e, &character(&cat, 2)).unwrap().unwrap();
        assert!(bad.contains("hexagon"), "{}", bad);
    }

    #[test]
    fn unit_component_must_be_identity() {
        let cat = c2();
        let k = &cat.field;
        let mut comps = character(&cat, 1);
        comps[0] = Morphism::scalar(k, &cat.simple(0), &k.from_int(-1));
        let msg = check_half_braiding(&cat, &cat.unit_object(), &comps).unwrap().unwrap();
        assert!(msg.contains("unit"));
    }

    #[test]
    fn singular_component_is_rejected() {
        let cat = c2();
        let r = HalfBraiding::new(&cat, cat.unit_object(), character(&cat, 0));
        assert!(matches!(r, Err(FusionError::NotCentral(_))));
    }

    #[test]
    fn tensor_of_sign_with_itself_is_trivial() {
        let cat = c2();
        let s = CenterObject::new(&cat, cat.unit_object(), character(&cat, -1)).unwrap();
        let ss = tensor_center(&cat, &s, &s).unwrap();
        assert_eq!(ss, CenterObject::unit(&cat));
    }

    #[test]
    fn braiding_is_central() {
        let cat = c2();
        let s = CenterObject::new(&cat, cat.unit_object(), character(&cat, -1)).unwrap();
        let u = CenterObject::unit(&cat);
        let (sum, _, _) = direct_sum_center(&cat, &[s.clone(), u]).unwrap();
        let xy = tensor_center(&cat, &sum, &s).unwrap();
        let yx = tensor_center(&cat, &s, &sum).unwrap();
        assert!(is_central(&cat, &xy, &yx, &braiding(&cat, &sum, &s)).unwrap());
    }

    #[test]
    fn restriction_recovers_summand() {
        let cat = c2();
        let k = &cat.field;
        let s = CenterObject::new(&cat, cat.unit_object(), character(&cat, -1)).unwrap();
        let u = CenterObject::unit(&cat);
        let (sum, inj, proj) = direct_sum_center(&cat, &[s.clone(), u]).unwrap();
        let r = restrict_half_braiding(&cat, &sum.braiding, &inj[0], &proj[0]).unwrap();
        assert_eq!(r, s.braiding);
        // the diagonal line is not stable
        let e = cat.unit_object();
        let iota = Morphism::from_vector(k, &e, &sum.object, &[k.one(), k.one()]).unwrap();
        let p = Morphism::from_vector(k, &sum.object, &e, &[k.one(), k.zero()]).unwrap();
        assert!(matches!(
            restrict_half_braiding(&cat, &sum.braiding, &iota, &p),
            Err(FusionError::NotStable(_))
        ));
    }

    #[test]
    fn central_morphism_checks_square() {
        let cat = c2();
        let k = &cat.field;
        let s = CenterObject::new(&cat, cat.unit_object(), character(&cat, -1)).unwrap();
        let u = CenterObject::unit(&cat);
        let id = Morphism::identity(k, &cat.unit_object());
        assert!(CenterMorphism::new(&cat, u.clone(), u.clone(), id.clone()).is_ok());
        assert!(matches!(CenterMorphism::new(&cat, s, u, id), Err(FusionError::NotCentral(_))));
    }
}

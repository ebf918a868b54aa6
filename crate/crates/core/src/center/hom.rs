//! Hom-spaces in the center, computed three ways.

use exact_algebra::{EchelonBasis, Matrix, NumberField};

use super::{CenterObject, Center};
use crate::error::{FusionError, Result};
use crate::fusion::FusionData;
use crate::morphism::{hom_basis, hom_dim, Morphism};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomMethod {
    /// Composites through the inductions of the generators.
    Induction,
    /// Kernel of the linear centrality conditions.
    Direct,
    /// Image of the averaging projection.
    Projection,
}

/// Linearly independent subfamily, in order.
pub(crate) fn independent(k: &NumberField, morphs: impl IntoIterator<Item = Morphism>) -> Vec<Morphism> {
    let mut out = Vec::new();
    let mut eb: Option<EchelonBasis> = None;
    for m in morphs {
        let v = m.to_vector();
        let basis = eb.get_or_insert_with(|| EchelonBasis::new(k, v.len()));
        if basis.insert(v).is_none() {
            out.push(m);
        }
    }
    out
}

/// Solves `γ_Y(X_l) ∘ (f ⊗ id) = (id ⊗ f) ∘ γ_X(X_l)` for all `l`. Each basis
/// matrix unit contributes column and row copies of the braiding blocks, so
/// the system is assembled without multiplying matrices.
pub fn hom_direct(cat: &FusionData, x: &CenterObject, y: &CenterObject) -> Result<Vec<Morphism>> {
    let k = &cat.field;
    let n = cat.rank();
    let (xo, yo) = (&x.object, &y.object);
    let unknowns = hom_dim(xo, yo);
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    // residual coordinates: for each l, Hom(X ⊗ X_l, X_l ⊗ Y) block by block
    struct Part {
        lx: crate::fusion::TensorLayout,
        ly: crate::fusion::TensorLayout,
        rx: crate::fusion::TensorLayout,
        ry: crate::fusion::TensorLayout,
        offsets: Vec<usize>,
    }
    let mut parts = Vec::with_capacity(n);
    let mut total = 0;
    for l in 0..n {
        let xl = cat.simple(l);
        let lx = cat.layout(xo, &xl);
        let ly = cat.layout(yo, &xl);
        let rx = cat.layout(&xl, xo);
        let ry = cat.layout(&xl, yo);
        let mut offsets = Vec::with_capacity(n);
        for m in 0..n {
            offsets.push(total);
            total += ry.object.0[m] * lx.object.0[m];
        }
        parts.push(Part { lx, ly, rx, ry, offsets });
    }
    let mut system = Matrix::zeros(k, total, unknowns);
    let mut col = 0;
    for a in 0..n {
        for r in 0..yo.0[a] {
            for c in 0..xo.0[a] {
                // f = E_{rc} in block a
                for (l, p) in parts.iter().enumerate() {
                    let gy = y.gamma(l);
                    let gx = x.gamma(l);
                    for m in 0..n {
                        let cols = p.lx.object.0[m];
                        let base = p.offsets[m];
                        for al in 0..cat.fusion[a][l][m] {
                            let dx = p.lx.index(m, a, c, l, 0, al);
                            let dy = p.ly.index(m, a, r, l, 0, al);
                            for row in 0..p.ry.object.0[m] {
                                let v = gy.blocks[m].get(row, dy);
                                if !v.is_zero() {
                                    let e = system.get(base + row * cols + dx, col).clone();
                                    system.set(base + row * cols + dx, col, k.add(&e, v));
                                }
                            }
                        }
                        for al in 0..cat.fusion[l][a][m] {
                            let ry = p.ry.index(m, l, 0, a, r, al);
                            let rx = p.rx.index(m, l, 0, a, c, al);
                            for cc in 0..cols {
                                let v = gx.blocks[m].get(rx, cc);
                                if !v.is_zero() {
                                    let e = system.get(base + ry * cols + cc, col).clone();
                                    system.set(base + ry * cols + cc, col, k.sub(&e, v));
                                }
                            }
                        }
                    }
                }
                col += 1;
            }
        }
    }
    system
        .kernel()
        .iter()
        .map(|v| Morphism::from_vector(k, xo, yo, v))
        .collect()
}

/// `E_{X,Y}(t) = dim(C)^{-1} Σ_i d_i φ_i(t)`.
pub fn projection_e(cat: &FusionData, x: &CenterObject, y: &CenterObject, t: &Morphism) -> Result<Morphism> {
    let k = &cat.field;
    if t.domain != x.object || t.codomain != y.object {
        return Err(FusionError::ShapeMismatch("E expects t: X -> Y".into()));
    }
    let mut acc = Morphism::zero(k, &x.object, &y.object);
    for i in 0..cat.rank() {
        let xi = cat.simple(i);
        let xis = cat.simple(cat.dual[i]);
        let phi = cat
            .tensor_id(&cat.ev(cat.dual[i]), &y.object)?
            .compose(&cat.associator_inverse(&xi, &xis, &y.object)?)?
            .compose(&cat.id_tensor(&xi, y.gamma(cat.dual[i]))?.scale(&cat.spherical[i]))?
            .compose(&cat.associator(&xi, &y.object, &xis)?)?
            .compose(&cat.tensor_id(&cat.id_tensor(&xi, t)?, &xis)?)?
            .compose(&cat.tensor_id(x.gamma(i), &xis)?)?
            .compose(&cat.associator_inverse(&x.object, &xi, &xis)?)?
            .compose(&cat.id_tensor(&x.object, &cat.coev(i))?)?;
        acc = acc.add(&phi.scale(&cat.dim_simple(i)))?;
    }
    Ok(acc.scale(&k.inv(&cat.dim_category())?))
}

pub fn hom_projection(cat: &FusionData, x: &CenterObject, y: &CenterObject) -> Result<Vec<Morphism>> {
    let images = hom_basis(&cat.field, &x.object, &y.object)
        .iter()
        .map(|t| projection_e(cat, x, y, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(independent(&cat.field, images))
}

impl Center {
    pub fn hom(&self, x: &CenterObject, y: &CenterObject) -> Result<Vec<Morphism>> {
        self.hom_with(x, y, HomMethod::Induction)
    }

    pub fn hom_with(&self, x: &CenterObject, y: &CenterObject, method: HomMethod) -> Result<Vec<Morphism>> {
        match method {
            HomMethod::Induction => self.hom_induction(x, y),
            HomMethod::Direct => hom_direct(&self.cat, x, y),
            HomMethod::Projection => hom_projection(&self.cat, x, y),
        }
    }

    fn hom_induction(&self, x: &CenterObject, y: &CenterObject) -> Result<Vec<Morphism>> {
        let k = self.field();
        if hom_dim(&x.object, &y.object) == 0 {
            return Ok(Vec::new());
        }
        let mut all = Vec::new();
        for ind in &self.induced {
            let outs = independent(
                k,
                hom_basis(k, &ind.v, &y.object)
                    .iter()
                    .map(|f| self.adjoint_left(ind, y, f))
                    .collect::<Result<Vec<_>>>()?,
            );
            if outs.is_empty() {
                continue;
            }
            let ins = independent(
                k,
                hom_basis(k, &x.object, &ind.v)
                    .iter()
                    .map(|f| self.adjoint_right(ind, x, f))
                    .collect::<Result<Vec<_>>>()?,
            );
            for p in &outs {
                for i in &ins {
                    all.push(p.compose(i)?);
                }
            }
        }
        Ok(independent(k, all))
    }

    /// Isomorphism witness between simple central objects, if any.
    pub fn is_isomorphic(&self, x: &CenterObject, y: &CenterObject) -> Result<Option<Morphism>> {
        if x.object != y.object {
            return Ok(None);
        }
        let h = self.hom(x, y)?;
        match h.first() {
            None => Ok(None),
            Some(f) => {
                f.inverse().map_err(|_| FusionError::NotSimple)?;
                Ok(Some(f.clone()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{vec_g, CayleyTable};

    #[test]
    fn three_methods_agree_in_dimension() {
        let cat = vec_g(&CayleyTable::cyclic(2).unwrap(), &NumberField::rationals()).unwrap();
        let c = Center::new(cat.clone()).unwrap();
        let ind: Vec<_> = c.induced.iter().map(|i| i.center.clone()).collect();
        for x in &ind {
            for y in &ind {
                let d: Vec<usize> = [HomMethod::Induction, HomMethod::Direct, HomMethod::Projection]
                    .iter()
                    .map(|&m| c.hom_with(x, y, m).unwrap().len())
                    .collect();
                assert!(d.iter().all(|&v| v == d[0]), "{:?}", d);
            }
        }
        // I(δ_e) = (e,+) ⊕ (e,-), I(δ_g) = (g,+) ⊕ (g,-)
        assert_eq!(c.hom(&ind[0], &ind[0]).unwrap().len(), 2);
        assert_eq!(c.hom(&ind[0], &ind[1]).unwrap().len(), 0);
    }

    #[test]
    fn isomorphism_witness_is_central() {
        let cat = vec_g(&CayleyTable::cyclic(2).unwrap(), &NumberField::rationals()).unwrap();
        let c = Center::new(cat.clone()).unwrap();
        let x = &c.induced[0].center;
        let w = c.is_isomorphic(x, x).unwrap().unwrap();
        assert!(crate::center::is_central(&cat, x, x, &w).unwrap());
        assert!(c.is_isomorphic(x, &c.induced[1].center).unwrap().is_none());
    }
}

//! Objects as multiplicity vectors and morphisms as per-simple blocks.

use std::fmt;

use exact_algebra::{FieldElement, Matrix, NumberField};

use crate::error::{FusionError, Result};

/// `⊕ m_i X_i`, stored as the multiplicities `m_i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Object(pub Vec<usize>);

impl Object {
    pub fn zero(n: usize) -> Self {
        Object(vec![0; n])
    }

    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Object(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Total number of simple summands counted with multiplicity.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&m| m == 0)
    }

    pub fn add(&self, o: &Object) -> Object {
        Object(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: usize) -> Object {
        Object(self.0.iter().map(|a| a * c).collect())
    }

    /// Render with the given simple names, e.g. `1 + 2·X`.
    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, &m)| if m == 1 { names[i].clone() } else { format!("{}·{}", m, names[i]) })
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ⊕ ")
        }
    }
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|m| m.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

/// A morphism `domain -> codomain`; block `l` is a `codomain[l] x domain[l]` matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Morphism {
    pub domain: Object,
    pub codomain: Object,
    pub blocks: Vec<Matrix>,
}

impl Morphism {
    pub fn new(domain: Object, codomain: Object, blocks: Vec<Matrix>) -> Result<Self> {
        if domain.rank() != codomain.rank() || blocks.len() != domain.rank() {
            return Err(FusionError::ParentMismatch);
        }
        for (l, b) in blocks.iter().enumerate() {
            if b.rows != codomain.0[l] || b.cols != domain.0[l] {
                return Err(FusionError::ShapeMismatch(format!(
                    "block {} is {}x{}, expected {}x{}",
                    l, b.rows, b.cols, codomain.0[l], domain.0[l]
                )));
            }
        }
        Ok(Morphism { domain, codomain, blocks })
    }

    pub fn zero(k: &NumberField, domain: &Object, codomain: &Object) -> Self {
        let blocks = domain.0.iter().zip(&codomain.0).map(|(&d, &c)| Matrix::zeros(k, c, d)).collect();
        Morphism { domain: domain.clone(), codomain: codomain.clone(), blocks }
    }

    pub fn identity(k: &NumberField, x: &Object) -> Self {
        Self::scalar(k, x, &k.one())
    }

    pub fn scalar(k: &NumberField, x: &Object, c: &FieldElement) -> Self {
        let blocks = x.0.iter().map(|&d| Matrix::scalar(k, d, c)).collect();
        Morphism { domain: x.clone(), codomain: x.clone(), blocks }
    }

    pub fn field(&self) -> &NumberField {
        &self.blocks[0].field
    }

    pub fn is_endomorphism(&self) -> bool {
        self.domain == self.codomain
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &Morphism) -> Result<Morphism> {
        if g.codomain != self.domain {
            return Err(FusionError::ShapeMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.domain, self.codomain, g.domain, g.codomain
            )));
        }
        let blocks = self.blocks.iter().zip(&g.blocks).map(|(a, b)| a.mul(b)).collect::<std::result::Result<_, _>>()?;
        Ok(Morphism { domain: g.domain.clone(), codomain: self.codomain.clone(), blocks })
    }

    fn check_parallel(&self, o: &Morphism) -> Result<()> {
        if self.domain != o.domain || self.codomain != o.codomain {
            return Err(FusionError::ShapeMismatch("morphisms are not parallel".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Morphism) -> Result<Morphism> {
        self.check_parallel(o)?;
        let blocks = self.blocks.iter().zip(&o.blocks).map(|(a, b)| a.add(b)).collect::<std::result::Result<_, _>>()?;
        Ok(Morphism { domain: self.domain.clone(), codomain: self.codomain.clone(), blocks })
    }

    pub fn sub(&self, o: &Morphism) -> Result<Morphism> {
        self.check_parallel(o)?;
        let blocks = self.blocks.iter().zip(&o.blocks).map(|(a, b)| a.sub(b)).collect::<std::result::Result<_, _>>()?;
        Ok(Morphism { domain: self.domain.clone(), codomain: self.codomain.clone(), blocks })
    }

    pub fn scale(&self, c: &FieldElement) -> Morphism {
        Morphism {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            blocks: self.blocks.iter().map(|b| b.scale(c)).collect(),
        }
    }

    pub fn neg(&self) -> Morphism {
        Morphism {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            blocks: self.blocks.iter().map(|b| b.neg()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_endomorphism() && self.blocks.iter().all(|b| b.is_identity())
    }

    pub fn inverse(&self) -> Result<Morphism> {
        if self.domain != self.codomain {
            return Err(FusionError::Algebra(exact_algebra::AlgebraError::Singular));
        }
        let blocks = self.blocks.iter().map(|b| b.inverse()).collect::<std::result::Result<_, _>>()?;
        Ok(Morphism { domain: self.codomain.clone(), codomain: self.domain.clone(), blocks })
    }

    /// Entries of all blocks, block by block in row-major order.
    pub fn to_vector(&self) -> Vec<FieldElement> {
        self.blocks.iter().flat_map(|b| b.data.iter().cloned()).collect()
    }

    pub fn from_vector(k: &NumberField, domain: &Object, codomain: &Object, v: &[FieldElement]) -> Result<Self> {
        if v.len() != hom_dim(domain, codomain) {
            return Err(FusionError::ShapeMismatch("coordinate vector has wrong length".into()));
        }
        let mut pos = 0;
        let mut blocks = Vec::with_capacity(domain.rank());
        for (&d, &c) in domain.0.iter().zip(&codomain.0) {
            blocks.push(Matrix { field: k.clone(), rows: c, cols: d, data: v[pos..pos + c * d].to_vec() });
            pos += c * d;
        }
        Ok(Morphism { domain: domain.clone(), codomain: codomain.clone(), blocks })
    }

    pub fn trace_blocks(&self) -> Result<Vec<FieldElement>> {
        if !self.is_endomorphism() {
            return Err(FusionError::NotEndomorphism);
        }
        Ok(self.blocks.iter().map(|b| b.trace()).collect())
    }

    /// All blocks on the diagonal of one square matrix.
    pub fn block_diagonal(&self) -> Matrix {
        Matrix::block_diag(self.field(), &self.blocks)
    }

    pub fn map_field(&self, target: &NumberField, f: impl Fn(&FieldElement) -> FieldElement) -> Morphism {
        Morphism {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            blocks: self.blocks.iter().map(|b| b.map_entries(target, &f)).collect(),
        }
    }
}

pub fn hom_dim(x: &Object, y: &Object) -> usize {
    x.0.iter().zip(&y.0).map(|(a, b)| a * b).sum()
}

/// Matrix-unit basis of `Hom(x, y)`, ordered by block then row-major.
pub fn hom_basis(k: &NumberField, x: &Object, y: &Object) -> Vec<Morphism> {
    let d = hom_dim(x, y);
    (0..d)
        .map(|t| {
            let mut v = vec![k.zero(); d];
            v[t] = k.one();
            Morphism::from_vector(k, x, y, &v).expect("basis vector")
        })
        .collect()
}

/// Direct sum with injections and projections; in every block the copies of
/// `parts[0]` come first, then those of `parts[1]`, and so on.
pub fn direct_sum(k: &NumberField, parts: &[Object]) -> (Object, Vec<Morphism>, Vec<Morphism>) {
    let n = parts.first().map_or(0, |p| p.rank());
    let mut sum = Object::zero(n);
    for p in parts {
        sum = sum.add(p);
    }
    let mut inj = Vec::new();
    let mut proj = Vec::new();
    let mut offset = vec![0usize; n];
    for p in parts {
        let mut ib = Vec::with_capacity(n);
        let mut pb = Vec::with_capacity(n);
        for l in 0..n {
            let mut i = Matrix::zeros(k, sum.0[l], p.0[l]);
            let mut q = Matrix::zeros(k, p.0[l], sum.0[l]);
            for c in 0..p.0[l] {
                i.set(offset[l] + c, c, k.one());
                q.set(c, offset[l] + c, k.one());
            }
            offset[l] += p.0[l];
            ib.push(i);
            pb.push(q);
        }
        inj.push(Morphism { domain: p.clone(), codomain: sum.clone(), blocks: ib });
        proj.push(Morphism { domain: sum.clone(), codomain: p.clone(), blocks: pb });
    }
    (sum, inj, proj)
}

/// Kernel object with its monomorphism into the domain of `f`.
pub fn kernel(f: &Morphism) -> (Object, Morphism) {
    let k = f.field().clone();
    let mut obj = Vec::new();
    let mut blocks = Vec::new();
    for (l, b) in f.blocks.iter().enumerate() {
        let ker = b.kernel();
        obj.push(ker.len());
        blocks.push(Matrix::from_columns(&k, f.domain.0[l], &ker));
    }
    let o = Object(obj);
    (o.clone(), Morphism { domain: o, codomain: f.domain.clone(), blocks })
}

/// Image object with its monomorphism into the codomain of `f`.
pub fn image(f: &Morphism) -> (Object, Morphism) {
    let k = f.field().clone();
    let mut obj = Vec::new();
    let mut blocks = Vec::new();
    for (l, b) in f.blocks.iter().enumerate() {
        let im = b.image_basis();
        obj.push(im.len());
        blocks.push(Matrix::from_columns(&k, f.codomain.0[l], &im));
    }
    let o = Object(obj);
    (o.clone(), Morphism { domain: o, codomain: f.codomain.clone(), blocks })
}

/// Splits an idempotent `e` of `X` as `e = ι ∘ p` with `p ∘ ι = id`.
pub fn split_idempotent(e: &Morphism) -> Result<(Object, Morphism, Morphism)> {
    if !e.is_endomorphism() {
        return Err(FusionError::NotEndomorphism);
    }
    let (w, iota) = image(e);
    let mut pb = Vec::new();
    for (l, b) in e.blocks.iter().enumerate() {
        // ι_l has full column rank, so ι_l p_l = e_l determines p_l
        pb.push(iota.blocks[l].solve(b)?);
    }
    let p = Morphism { domain: e.domain.clone(), codomain: w.clone(), blocks: pb };
    Ok((w, iota, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_sum_identities() {
        let k = NumberField::rationals();
        let a = Object(vec![1, 0, 2]);
        let b = Object(vec![0, 1, 1]);
        let (s, inj, proj) = direct_sum(&k, &[a.clone(), b.clone()]);
        assert_eq!(s, Object(vec![1, 1, 3]));
        assert!(proj[0].compose(&inj[0]).unwrap().is_identity());
        assert!(proj[1].compose(&inj[0]).unwrap().is_zero());
        let total = inj[0].compose(&proj[0]).unwrap().add(&inj[1].compose(&proj[1]).unwrap()).unwrap();
        assert!(total.is_identity());
    }

    #[test]
    fn vector_round_trip() {
        let k = NumberField::rationals();
        let x = Object(vec![2, 1]);
        let y = Object(vec![1, 3]);
        let basis = hom_basis(&k, &x, &y);
        assert_eq!(basis.len(), 5);
        let v: Vec<_> = (0..5).map(|i| k.from_int(i as i64 - 2)).collect();
        let f = Morphism::from_vector(&k, &x, &y, &v).unwrap();
        assert_eq!(f.to_vector(), v);
    }

    #[test]
    fn idempotent_split() {
        let k = NumberField::rationals();
        let x = Object(vec![2]);
        let e = Morphism::new(x.clone(), x.clone(), vec![Matrix::from_ints(&k, &[&[1, 1], &[0, 0]])]).unwrap();
        let (w, i, p) = split_idempotent(&e).unwrap();
        assert_eq!(w, Object(vec![1]));
        assert!(p.compose(&i).unwrap().is_identity());
        assert_eq!(i.compose(&p).unwrap(), e);
    }
}

//! Skeletal spherical fusion categories given by fusion rules and 6j data.
//!
//! Copies of `X_l` inside `A ⊗ B` are ordered lexicographically by
//! `(a, copy of a in A, b, copy of b in B, channel)` where the channel runs
//! over `N[a][b][l]`. Every tensor and associator computation uses this order.
//!
//! The associator block of a simple triple `(i, j, k)` at target `l` maps the
//! basis `(m, α, β)` of `(X_i ⊗ X_j) ⊗ X_k` (`α` a channel of `N[i][j][m]`,
//! `β` of `N[m][k][l]`) to the basis `(n, γ, δ)` of `X_i ⊗ (X_j ⊗ X_k)`
//! (`γ` of `N[j][k][n]`, `δ` of `N[i][n][l]`).

use std::collections::BTreeMap;

use exact_algebra::{FieldElement, Matrix, NumberField};

use crate::error::{FusionError, Result};
use crate::morphism::{Morphism, Object};

/// Sparse associator data: `(i, j, k) -> one matrix per target simple`.
pub type AssociatorData = BTreeMap<(usize, usize, usize), Vec<Matrix>>;

#[derive(Clone, Debug)]
pub struct FusionData {
    pub names: Vec<String>,
    pub field: NumberField,
    pub fusion: Vec<Vec<Vec<usize>>>,
    pub unit: usize,
    pub associators: AssociatorData,
    pub spherical: Vec<FieldElement>,
    pub dual: Vec<usize>,
    blocks: Vec<Matrix>,
    inverse_blocks: Vec<Option<Matrix>>,
    ev: Vec<FieldElement>,
    coev: Vec<FieldElement>,
}

/// Positions of the simple summands of `A ⊗ B`.
#[derive(Clone, Debug)]
pub struct TensorLayout {
    off_a: Vec<usize>,
    off_b: Vec<usize>,
    tot_b: usize,
    starts: Vec<Vec<usize>>,
    pub object: Object,
}

impl TensorLayout {
    pub fn new(fusion: &[Vec<Vec<usize>>], a: &Object, b: &Object) -> Self {
        let n = fusion.len();
        let prefix = |x: &Object| {
            let mut off = Vec::with_capacity(n);
            let mut s = 0;
            for &m in &x.0 {
                off.push(s);
                s += m;
            }
            (off, s)
        };
        let (off_a, tot_a) = prefix(a);
        let (off_b, tot_b) = prefix(b);
        let mut starts = vec![vec![0; tot_a * tot_b]; n];
        let mut dims = vec![0; n];
        for l in 0..n {
            let mut pos = 0;
            for i in 0..n {
                for ci in 0..a.0[i] {
                    for j in 0..n {
                        for cj in 0..b.0[j] {
                            starts[l][(off_a[i] + ci) * tot_b + off_b[j] + cj] = pos;
                            pos += fusion[i][j][l];
                        }
                    }
                }
            }
            dims[l] = pos;
        }
        TensorLayout { off_a, off_b, tot_b, starts, object: Object(dims) }
    }

    /// Index of channel `alpha` of copy `(i, ci) ⊗ (j, cj)` inside block `l`.
    pub fn index(&self, l: usize, i: usize, ci: usize, j: usize, cj: usize, alpha: usize) -> usize {
        self.starts[l][(self.off_a[i] + ci) * self.tot_b + self.off_b[j] + cj] + alpha
    }
}

fn block_index(n: usize, i: usize, j: usize, k: usize, l: usize) -> usize {
    ((i * n + j) * n + k) * n + l
}

impl FusionData {
    pub fn new(
        names: Vec<String>,
        field: NumberField,
        fusion: Vec<Vec<Vec<usize>>>,
        unit: usize,
        associators: AssociatorData,
        spherical: Vec<FieldElement>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 || unit >= n {
            return Err(FusionError::InvalidData("need at least one simple and a valid unit".into()));
        }
        if fusion.len() != n || fusion.iter().any(|r| r.len() != n || r.iter().any(|c| c.len() != n)) {
            return Err(FusionError::InvalidData("fusion tensor must be n x n x n".into()));
        }
        if spherical.len() != n {
            return Err(FusionError::InvalidData("one spherical scalar per simple required".into()));
        }
        let mut dual = Vec::with_capacity(n);
        for i in 0..n {
            let d: Vec<usize> = (0..n).filter(|&j| fusion[i][j][unit] == 1 && fusion[j][i][unit] == 1).collect();
            if d.len() != 1 || (0..n).any(|j| fusion[i][j][unit] > 1) {
                return Err(FusionError::NoDual(i));
            }
            dual.push(d[0]);
        }
        let mut c = FusionData {
            names,
            field: field.clone(),
            fusion,
            unit,
            associators,
            spherical,
            dual,
            blocks: Vec::new(),
            inverse_blocks: Vec::new(),
            ev: Vec::new(),
            coev: Vec::new(),
        };
        if !c.grothendieck_associativity().is_empty() {
            return Err(FusionError::InvalidData("fusion rules are not associative".into()));
        }
        for ((i, j, k), mats) in &c.associators {
            if *i >= n || *j >= n || *k >= n || mats.len() != n {
                return Err(FusionError::InvalidData(format!("associator ({}, {}, {}) malformed", i + 1, j + 1, k + 1)));
            }
            for (l, m) in mats.iter().enumerate() {
                let d = c.block_dim(*i, *j, *k, l);
                if m.rows != d || m.cols != d {
                    return Err(FusionError::InvalidData(format!(
                        "associator ({}, {}, {}) at {} must be {}x{}",
                        i + 1,
                        j + 1,
                        k + 1,
                        l + 1,
                        d,
                        d
                    )));
                }
                if m.field != field {
                    return Err(FusionError::InvalidData("associator entries over the wrong field".into()));
                }
            }
        }
        let mut blocks = Vec::with_capacity(n * n * n * n);
        let mut inverse_blocks = Vec::with_capacity(n * n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let m = match c.associators.get(&(i, j, k)) {
                            Some(v) => v[l].clone(),
                            None => Matrix::identity(&field, c.block_dim(i, j, k, l)),
                        };
                        inverse_blocks.push(m.inverse().ok());
                        blocks.push(m);
                    }
                }
            }
        }
        c.blocks = blocks;
        c.inverse_blocks = inverse_blocks;
        c.compute_duality()?;
        Ok(c)
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn n(&self, i: usize, j: usize, k: usize) -> usize {
        self.fusion[i][j][k]
    }

    pub fn block_dim(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        (0..self.rank()).map(|m| self.fusion[i][j][m] * self.fusion[m][k][l]).sum()
    }

    /// Column labels `(m, α, β)` of the associator block.
    pub fn source_labels(&self, i: usize, j: usize, k: usize, l: usize) -> Vec<(usize, usize, usize)> {
        let mut v = Vec::new();
        for m in 0..self.rank() {
            for a in 0..self.fusion[i][j][m] {
                for b in 0..self.fusion[m][k][l] {
                    v.push((m, a, b));
                }
            }
        }
        v
    }

    /// Row labels `(n, γ, δ)` of the associator block.
    pub fn target_labels(&self, i: usize, j: usize, k: usize, l: usize) -> Vec<(usize, usize, usize)> {
        let mut v = Vec::new();
        for m in 0..self.rank() {
            for g in 0..self.fusion[j][k][m] {
                for d in 0..self.fusion[i][m][l] {
                    v.push((m, g, d));
                }
            }
        }
        v
    }

    pub fn associator_block(&self, i: usize, j: usize, k: usize, l: usize) -> &Matrix {
        &self.blocks[block_index(self.rank(), i, j, k, l)]
    }

    pub fn associator_inverse_block(&self, i: usize, j: usize, k: usize, l: usize) -> Result<&Matrix> {
        self.inverse_blocks[block_index(self.rank(), i, j, k, l)]
            .as_ref()
            .ok_or_else(|| FusionError::InvalidData(format!("associator ({}, {}, {}) is singular", i + 1, j + 1, k + 1)))
    }

    fn compute_duality(&mut self) -> Result<()> {
        let n = self.rank();
        let k = self.field.clone();
        let u = self.unit;
        let mut ev = Vec::with_capacity(n);
        for i in 0..n {
            let d = self.dual[i];
            let cols = self.source_labels(i, d, i, i);
            let rows = self.target_labels(i, d, i, i);
            let c = cols.iter().position(|&(m, _, _)| m == u).expect("unit channel");
            let r = rows.iter().position(|&(m, _, _)| m == u).expect("unit channel");
            let entry = self.associator_block(i, d, i, i).get(r, c);
            let e = k
                .inv(entry)
                .map_err(|_| FusionError::InvalidData(format!("zig-zag for simple {} degenerates", i + 1)))?;
            ev.push(e);
        }
        self.ev = ev;
        self.coev = vec![k.one(); n];
        Ok(())
    }

    pub fn object(&self, mult: Vec<usize>) -> Object {
        Object(mult)
    }

    pub fn simple(&self, i: usize) -> Object {
        Object::simple(self.rank(), i)
    }

    pub fn unit_object(&self) -> Object {
        self.simple(self.unit)
    }

    fn check(&self, x: &Object) -> Result<()> {
        if x.rank() != self.rank() {
            return Err(FusionError::ParentMismatch);
        }
        Ok(())
    }

    pub fn tensor_objects(&self, x: &Object, y: &Object) -> Result<Object> {
        self.check(x)?;
        self.check(y)?;
        let n = self.rank();
        let mut z = vec![0; n];
        for i in 0..n {
            for j in 0..n {
                if x.0[i] * y.0[j] == 0 {
                    continue;
                }
                for l in 0..n {
                    z[l] += x.0[i] * y.0[j] * self.fusion[i][j][l];
                }
            }
        }
        Ok(Object(z))
    }

    pub fn layout(&self, x: &Object, y: &Object) -> TensorLayout {
        TensorLayout::new(&self.fusion, x, y)
    }

    pub fn tensor_morphisms(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        self.check(&f.domain)?;
        self.check(&g.domain)?;
        let k = &self.field;
        let n = self.rank();
        let dom = self.layout(&f.domain, &g.domain);
        let cod = self.layout(&f.codomain, &g.codomain);
        let mut blocks: Vec<Matrix> = (0..n).map(|l| Matrix::zeros(k, cod.object.0[l], dom.object.0[l])).collect();
        for a in 0..n {
            let fa = &f.blocks[a];
            for b in 0..n {
                let gb = &g.blocks[b];
                for l in 0..n {
                    let nn = self.fusion[a][b][l];
                    if nn == 0 {
                        continue;
                    }
                    for ca in 0..fa.cols {
                        for ra in 0..fa.rows {
                            let x = fa.get(ra, ca);
                            if x.is_zero() {
                                continue;
                            }
                            for cb in 0..gb.cols {
                                for rb in 0..gb.rows {
                                    let y = gb.get(rb, cb);
                                    if y.is_zero() {
                                        continue;
                                    }
                                    let v = k.mul(x, y);
                                    for al in 0..nn {
                                        let r = cod.index(l, a, ra, b, rb, al);
                                        let c = dom.index(l, a, ca, b, cb, al);
                                        blocks[l].set(r, c, v.clone());
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(Morphism { domain: dom.object, codomain: cod.object, blocks })
    }

    /// `id_X ⊗ f`.
    pub fn id_tensor(&self, x: &Object, f: &Morphism) -> Result<Morphism> {
        self.tensor_morphisms(&Morphism::identity(&self.field, x), f)
    }

    /// `f ⊗ id_X`.
    pub fn tensor_id(&self, f: &Morphism, x: &Object) -> Result<Morphism> {
        self.tensor_morphisms(f, &Morphism::identity(&self.field, x))
    }

    /// `a_{X,Y,Z}: (X ⊗ Y) ⊗ Z -> X ⊗ (Y ⊗ Z)`.
    pub fn associator(&self, x: &Object, y: &Object, z: &Object) -> Result<Morphism> {
        self.associator_impl(x, y, z, false)
    }

    /// `a_{X,Y,Z}^{-1}: X ⊗ (Y ⊗ Z) -> (X ⊗ Y) ⊗ Z`.
    pub fn associator_inverse(&self, x: &Object, y: &Object, z: &Object) -> Result<Morphism> {
        self.associator_impl(x, y, z, true)
    }

    fn associator_impl(&self, x: &Object, y: &Object, z: &Object, inverse: bool) -> Result<Morphism> {
        self.check(x)?;
        self.check(y)?;
        self.check(z)?;
        let k = &self.field;
        let n = self.rank();
        let xy = self.layout(x, y);
        let xy_z = self.layout(&xy.object, z);
        let yz = self.layout(y, z);
        let x_yz = self.layout(x, &yz.object);
        let left = xy_z.object.clone();
        let right = x_yz.object.clone();
        let mut blocks: Vec<Matrix> = (0..n)
            .map(|l| if inverse { Matrix::zeros(k, left.0[l], right.0[l]) } else { Matrix::zeros(k, right.0[l], left.0[l]) })
            .collect();
        for i in 0..n {
            for j in 0..n {
                for kk in 0..n {
                    if x.0[i] * y.0[j] * z.0[kk] == 0 {
                        continue;
                    }
                    for l in 0..n {
                        let cols = self.source_labels(i, j, kk, l);
                        if cols.is_empty() {
                            continue;
                        }
                        let rows = self.target_labels(i, j, kk, l);
                        let a = if inverse {
                            self.associator_inverse_block(i, j, kk, l)?
                        } else {
                            self.associator_block(i, j, kk, l)
                        };
                        for ci in 0..x.0[i] {
                            for cj in 0..y.0[j] {
                                for ck in 0..z.0[kk] {
                                    let src: Vec<usize> = cols
                                        .iter()
                                        .map(|&(m, al, be)| {
                                            let cm = xy.index(m, i, ci, j, cj, al);
                                            xy_z.index(l, m, cm, kk, ck, be)
                                        })
                                        .collect();
                                    let tgt: Vec<usize> = rows
                                        .iter()
                                        .map(|&(m, ga, de)| {
                                            let cm = yz.index(m, j, cj, kk, ck, ga);
                                            x_yz.index(l, i, ci, m, cm, de)
                                        })
                                        .collect();
                                    // forward blocks map source labels to target labels, inverse blocks the reverse
                                    let (out_idx, in_idx) = if inverse { (&src, &tgt) } else { (&tgt, &src) };
                                    for (r, &o) in out_idx.iter().enumerate() {
                                        for (c, &ii) in in_idx.iter().enumerate() {
                                            let v = a.get(r, c);
                                            if !v.is_zero() {
                                                blocks[l].set(o, ii, v.clone());
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        if inverse {
            Ok(Morphism { domain: right, codomain: left, blocks })
        } else {
            Ok(Morphism { domain: left, codomain: right, blocks })
        }
    }
}

impl FusionData {
    /// `ev_i: X_{i*} ⊗ X_i -> 𝟙` as a scalar on the unique unit channel.
    pub fn ev_scalar(&self, i: usize) -> &FieldElement {
        &self.ev[i]
    }

    /// `coev_i: 𝟙 -> X_i ⊗ X_{i*}` as a scalar on the unique unit channel.
    pub fn coev_scalar(&self, i: usize) -> &FieldElement {
        &self.coev[i]
    }

    pub fn ev(&self, i: usize) -> Morphism {
        let dom = self.tensor_objects(&self.simple(self.dual[i]), &self.simple(i)).expect("simple objects");
        let mut f = Morphism::zero(&self.field, &dom, &self.unit_object());
        f.blocks[self.unit].set(0, 0, self.ev[i].clone());
        f
    }

    pub fn coev(&self, i: usize) -> Morphism {
        let cod = self.tensor_objects(&self.simple(i), &self.simple(self.dual[i])).expect("simple objects");
        let mut f = Morphism::zero(&self.field, &self.unit_object(), &cod);
        f.blocks[self.unit].set(0, 0, self.coev[i].clone());
        f
    }

    /// `(i*, ev_i, coev_i)`.
    pub fn dual_data(&self, i: usize) -> Result<(usize, Morphism, Morphism)> {
        if i >= self.rank() {
            return Err(FusionError::NoDual(i));
        }
        Ok((self.dual[i], self.ev(i), self.coev(i)))
    }

    pub fn left_dim(&self, i: usize) -> FieldElement {
        let k = &self.field;
        k.mul(&k.mul(&self.spherical[i], &self.ev[self.dual[i]]), &self.coev[i])
    }

    pub fn right_dim(&self, i: usize) -> FieldElement {
        let k = &self.field;
        let inv = k.inv(&self.spherical[i]).expect("spherical scalars are nonzero");
        k.mul(&k.mul(&inv, &self.ev[i]), &self.coev[self.dual[i]])
    }

    pub fn dim_simple(&self, i: usize) -> FieldElement {
        self.left_dim(i)
    }

    pub fn dims(&self) -> Vec<FieldElement> {
        (0..self.rank()).map(|i| self.left_dim(i)).collect()
    }

    pub fn trace(&self, f: &Morphism) -> Result<FieldElement> {
        let t = f.trace_blocks()?;
        let k = &self.field;
        Ok(t.iter().enumerate().fold(k.zero(), |acc, (i, x)| k.add(&acc, &k.mul(x, &self.left_dim(i)))))
    }

    pub fn right_trace(&self, f: &Morphism) -> Result<FieldElement> {
        let t = f.trace_blocks()?;
        let k = &self.field;
        Ok(t.iter().enumerate().fold(k.zero(), |acc, (i, x)| k.add(&acc, &k.mul(x, &self.right_dim(i)))))
    }

    pub fn dim_object(&self, x: &Object) -> Result<FieldElement> {
        self.check(x)?;
        self.trace(&Morphism::identity(&self.field, x))
    }

    pub fn dim_category(&self) -> FieldElement {
        let k = &self.field;
        self.dims().iter().fold(k.zero(), |acc, d| k.add(&acc, &k.mul(d, d)))
    }

    /// `⊕_i X_i ⊗ X_i*`.
    pub fn coend(&self) -> Object {
        let mut c = Object::zero(self.rank());
        for i in 0..self.rank() {
            c = c.add(&self.tensor_objects(&self.simple(i), &self.simple(self.dual[i])).expect("simples"));
        }
        c
    }

    pub fn invertible_simples(&self) -> Vec<usize> {
        (0..self.rank())
            .filter(|&i| {
                self.tensor_objects(&self.simple(i), &self.simple(self.dual[i])).expect("simples") == self.unit_object()
            })
            .collect()
    }

    fn simple_index(&self, x: &Object) -> Option<usize> {
        if x.total() == 1 {
            x.0.iter().position(|&m| m == 1)
        } else {
            None
        }
    }

    /// Orbits of `X ↦ J ⊗ X ⊗ J*` over invertible `J`, each sorted, ordered by least element.
    pub fn conjugation_classes(&self) -> Vec<Vec<usize>> {
        let inv = self.invertible_simples();
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut orbit = vec![s];
            seen[s] = true;
            let mut idx = 0;
            while idx < orbit.len() {
                let x = orbit[idx];
                idx += 1;
                for &j in &inv {
                    let jx = self.tensor_objects(&self.simple(j), &self.simple(x)).expect("simples");
                    let y = self.tensor_objects(&jx, &self.simple(self.dual[j])).expect("simples");
                    let y = self.simple_index(&y).expect("conjugate of a simple by an invertible is simple");
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort();
            classes.push(orbit);
        }
        classes
    }

    /// Violations of `Σ_m N_ij^m N_mk^l = Σ_n N_jk^n N_in^l`.
    pub fn grothendieck_associativity(&self) -> Vec<String> {
        let n = self.rank();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        if self.block_dim(i, j, k, l)
                            != (0..n).map(|m| self.fusion[j][k][m] * self.fusion[i][m][l]).sum::<usize>()
                        {
                            out.push(format!(
                                "fusion rules not associative at ({}, {}, {}) -> {}",
                                i + 1,
                                j + 1,
                                k + 1,
                                l + 1
                            ));
                        }
                    }
                }
            }
        }
        out
    }

    /// Both pentagon routes `((ij)k)h -> i(j(kh))` for one simple 4-tuple.
    pub fn pentagon_routes(&self, i: usize, j: usize, k: usize, h: usize) -> Result<(Morphism, Morphism)> {
        let (xi, xj, xk, xh) = (self.simple(i), self.simple(j), self.simple(k), self.simple(h));
        self.pentagon_routes_objects(&xi, &xj, &xk, &xh)
    }

    pub fn pentagon_routes_objects(&self, xi: &Object, xj: &Object, xk: &Object, xh: &Object) -> Result<(Morphism, Morphism)> {
        let k = &self.field;
        let ij = self.tensor_objects(xi, xj)?;
        let jk = self.tensor_objects(xj, xk)?;
        let kh = self.tensor_objects(xk, xh)?;
        let left = self.associator(xi, xj, &kh)?.compose(&self.associator(&ij, xk, xh)?)?;
        let r1 = self.tensor_morphisms(&self.associator(xi, xj, xk)?, &Morphism::identity(k, xh))?;
        let r2 = self.associator(xi, &jk, xh)?;
        let r3 = self.tensor_morphisms(&Morphism::identity(k, xi), &self.associator(xj, xk, xh)?)?;
        let right = r3.compose(&r2)?.compose(&r1)?;
        Ok((left, right))
    }

    /// Zig-zag composites for simple `i`; both are the identity in a rigid category.
    pub fn snakes(&self, i: usize) -> Result<(Morphism, Morphism)> {
        let k = &self.field;
        let d = self.dual[i];
        let (xi, xd) = (self.simple(i), self.simple(d));
        let first = self
            .tensor_morphisms(&Morphism::identity(k, &xi), &self.ev(i))?
            .compose(&self.associator(&xi, &xd, &xi)?)?
            .compose(&self.tensor_morphisms(&self.coev(i), &Morphism::identity(k, &xi))?)?;
        let second = self
            .tensor_morphisms(&self.ev(i), &Morphism::identity(k, &xd))?
            .compose(&self.associator_inverse(&xd, &xi, &xd)?)?
            .compose(&self.tensor_morphisms(&Morphism::identity(k, &xd), &self.coev(i))?)?;
        Ok((first, second))
    }

    /// All structural checks; returns the list of violated constraints.
    pub fn validate(&self) -> Vec<String> {
        let n = self.rank();
        let k = &self.field;
        let mut out = self.grothendieck_associativity();
        if !out.is_empty() {
            return out;
        }
        for j in 0..n {
            for l in 0..n {
                let unit_left = self.fusion[self.unit][j][l] == usize::from(j == l);
                let unit_right = self.fusion[j][self.unit][l] == usize::from(j == l);
                if !unit_left || !unit_right {
                    out.push(format!("unit is not strict for simple {}", j + 1));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for kk in 0..n {
                    if !(i == self.unit || j == self.unit || kk == self.unit) {
                        continue;
                    }
                    for l in 0..n {
                        if !self.associator_block(i, j, kk, l).is_identity() {
                            out.push(format!(
                                "associator ({}, {}, {}) involving the unit is not the identity",
                                i + 1,
                                j + 1,
                                kk + 1
                            ));
                            break;
                        }
                    }
                }
            }
        }
        for (t, b) in self.inverse_blocks.iter().enumerate() {
            if b.is_none() {
                out.push(format!("associator block {} is singular", t));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for i in 0..n {
            match self.snakes(i) {
                Ok((a, b)) => {
                    if !a.is_identity() || !b.is_identity() {
                        out.push(format!("zig-zag identities fail for simple {}", i + 1));
                    }
                }
                Err(e) => out.push(format!("zig-zag for simple {}: {}", i + 1, e)),
            }
        }
        'pent: for i in 0..n {
            for j in 0..n {
                for kk in 0..n {
                    for h in 0..n {
                        match self.pentagon_routes(i, j, kk, h) {
                            Ok((l, r)) if l == r => {}
                            Ok(_) => {
                                out.push(format!("pentagon fails at ({}, {}, {}, {})", i + 1, j + 1, kk + 1, h + 1));
                                if out.len() > 20 {
                                    break 'pent;
                                }
                            }
                            Err(e) => out.push(format!("pentagon at ({}, {}, {}, {}): {}", i + 1, j + 1, kk + 1, h + 1, e)),
                        }
                    }
                }
            }
        }
        for i in 0..n {
            if self.spherical[i].is_zero() {
                out.push(format!("spherical scalar of simple {} is zero", i + 1));
                continue;
            }
            if self.left_dim(i) != self.right_dim(i) {
                out.push(format!("left and right dimensions of simple {} differ", i + 1));
            }
            if self.left_dim(i).is_zero() {
                out.push(format!("simple {} has dimension zero", i + 1));
            }
        }
        if k.is_zero(&self.dim_category()) {
            out.push("dim(C) = 0".into());
        }
        out
    }

    /// The same data over a larger field.
    pub fn map_field(&self, target: &NumberField, f: impl Fn(&FieldElement) -> FieldElement) -> Result<FusionData> {
        let assoc = self
            .associators
            .iter()
            .map(|(key, mats)| (*key, mats.iter().map(|m| m.map_entries(target, &f)).collect()))
            .collect();
        FusionData::new(
            self.names.clone(),
            target.clone(),
            self.fusion.clone(),
            self.unit,
            assoc,
            self.spherical.iter().map(&f).collect(),
        )
    }

    /// Integer matrix of left multiplication by `X_i` on the Grothendieck ring.
    pub fn fusion_matrix(&self, i: usize) -> Vec<Vec<i64>> {
        let n = self.rank();
        (0..n).map(|l| (0..n).map(|j| self.fusion[i][j][l] as i64).collect()).collect()
    }
}

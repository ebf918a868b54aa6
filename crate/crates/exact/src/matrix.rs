//! Dense matrices over a number field.

use std::fmt;

use crate::error::AlgebraError;
use crate::field::{FieldElement, NumberField};
use crate::poly::Polynomial;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    pub field: NumberField,
    pub rows: usize,
    pub cols: usize,
    /// Row-major entries.
    pub data: Vec<FieldElement>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}{}", self.rows, self.cols, self)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|r| {
                let e: Vec<String> = (0..self.cols).map(|c| self.field.render(self.get(r, c))).collect();
                format!("[{}]", e.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl Matrix {
    pub fn zeros(field: &NumberField, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &NumberField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn scalar(field: &NumberField, n: usize, c: &FieldElement) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_rows(field: &NumberField, rows: Vec<Vec<FieldElement>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(AlgebraError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { field: field.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_ints(field: &NumberField, rows: &[&[i64]]) -> Self {
        let v = rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect();
        Self::from_rows(field, v).expect("rectangular")
    }

    /// Matrix with the given column vectors.
    pub fn from_columns(field: &NumberField, rows: usize, cols: &[Vec<FieldElement>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<FieldElement> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<FieldElement>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| if i == j { self.field.is_one(self.get(i, j)) } else { self.get(i, j).is_zero() })
            })
    }

    /// Returns `Some(c)` if the matrix is `c` times the identity.
    pub fn as_scalar(&self) -> Option<FieldElement> {
        if !self.is_square() {
            return None;
        }
        if self.rows == 0 {
            return Some(self.field.zero());
        }
        let c = self.get(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if (i == j && *v != c) || (i != j && !v.is_zero()) {
                    return None;
                }
            }
        }
        Some(c)
    }

    fn check_same(&self, o: &Matrix) -> Result<(), AlgebraError> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Matrix) -> Result<Matrix, AlgebraError> {
        self.check_same(o)?;
        let k = &self.field;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| k.add(a, b)).collect();
        Ok(Matrix { field: k.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, o: &Matrix) -> Result<Matrix, AlgebraError> {
        self.check_same(o)?;
        let k = &self.field;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| k.sub(a, b)).collect();
        Ok(Matrix { field: k.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &FieldElement) -> Matrix {
        let k = &self.field;
        Matrix { field: k.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| k.mul(a, c)).collect() }
    }

    pub fn neg(&self) -> Matrix {
        let k = &self.field;
        Matrix { field: k.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| k.neg(a)).collect() }
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix, AlgebraError> {
        if self.cols != o.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let k = &self.field;
        let mut out = Matrix::zeros(k, self.rows, o.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(l, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] = k.add(&out.data[idx], &k.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>, AlgebraError> {
        if v.len() != self.cols {
            return Err(AlgebraError::DimensionMismatch("vector length".into()));
        }
        let k = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = k.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = k.add(&acc, &k.mul(a, x));
                    }
                }
                acc
            })
            .collect())
    }

    pub fn pow(&self, e: u32) -> Result<Matrix, AlgebraError> {
        let mut acc = Matrix::identity(&self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> FieldElement {
        let k = &self.field;
        (0..self.rows.min(self.cols)).fold(k.zero(), |acc, i| k.add(&acc, self.get(i, i)))
    }

    /// Kronecker product `self ⊗ o`, row index `(i, k)` and column `(j, l)` lexicographic.
    pub fn kronecker(&self, o: &Matrix) -> Matrix {
        let k = &self.field;
        let mut out = Matrix::zeros(k, self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for p in 0..o.rows {
                    for q in 0..o.cols {
                        let b = o.get(p, q);
                        if !b.is_zero() {
                            out.set(i * o.rows + p, j * o.cols + q, k.mul(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(&self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, idx.len(), self.cols);
        for (ni, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                out.set(ni, j, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows, idx.len());
        for i in 0..self.rows {
            for (nj, &j) in idx.iter().enumerate() {
                out.set(i, nj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn hstack(&self, o: &Matrix) -> Result<Matrix, AlgebraError> {
        if self.rows != o.rows {
            return Err(AlgebraError::DimensionMismatch("hstack".into()));
        }
        let mut out = Matrix::zeros(&self.field, self.rows, self.cols + o.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, o);
        Ok(out)
    }

    pub fn vstack(&self, o: &Matrix) -> Result<Matrix, AlgebraError> {
        if self.cols != o.cols {
            return Err(AlgebraError::DimensionMismatch("vstack".into()));
        }
        let mut out = Matrix::zeros(&self.field, self.rows + o.rows, self.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, 0, o);
        Ok(out)
    }

    /// Block-diagonal matrix.
    pub fn block_diag(field: &NumberField, blocks: &[Matrix]) -> Matrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn map_entries(&self, target: &NumberField, f: impl Fn(&FieldElement) -> FieldElement) -> Matrix {
        Matrix { field: target.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let k = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = k.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = k.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let prj = m.get(r, j);
                    if prj.is_zero() {
                        continue;
                    }
                    let v = k.sub(m.get(i, j), &k.mul(&f, prj));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel as column vectors.
    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        let k = &self.field;
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![k.zero(); self.cols];
                v[f] = k.one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = k.neg(m.get(r, f));
                }
                v
            })
            .collect()
    }

    /// A basis of the column space, taken from the pivot columns.
    pub fn image_basis(&self) -> Vec<Vec<FieldElement>> {
        let (_, pivots) = self.rref();
        pivots.iter().map(|&c| self.column(c)).collect()
    }

    /// Solves `self * X = b` for `X`; returns one particular solution.
    pub fn solve(&self, b: &Matrix) -> Result<Matrix, AlgebraError> {
        if b.rows != self.rows {
            return Err(AlgebraError::DimensionMismatch("solve".into()));
        }
        let k = &self.field;
        let aug = self.hstack(b)?;
        let (m, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Err(AlgebraError::NoSolution);
        }
        let mut x = Matrix::zeros(k, self.cols, b.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, m.get(r, self.cols + j).clone());
            }
        }
        Ok(x)
    }

    pub fn solve_vec(&self, b: &[FieldElement]) -> Result<Vec<FieldElement>, AlgebraError> {
        let bm = Matrix::from_columns(&self.field, self.rows, &[b.to_vec()]);
        Ok(self.solve(&bm)?.column(0))
    }

    pub fn inverse(&self) -> Result<Matrix, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let aug = self.hstack(&Matrix::identity(&self.field, n))?;
        let (m, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(AlgebraError::Singular);
        }
        Ok(m.submatrix(0, n, n, n))
    }

    pub fn det(&self) -> Result<FieldElement, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::DimensionMismatch("determinant of non-square matrix".into()));
        }
        let k = &self.field;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = k.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else { return Ok(k.zero()) };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = k.neg(&det);
            }
            let piv = m.get(c, c).clone();
            det = k.mul(&det, &piv);
            let inv = k.inv(&piv)?;
            for i in c + 1..n {
                let f = k.mul(m.get(i, c), &inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = k.sub(m.get(i, j), &k.mul(&f, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Minimal polynomial, found as the first linear dependency among powers.
    pub fn minpoly(&self) -> Result<Polynomial, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::DimensionMismatch("minpoly of non-square matrix".into()));
        }
        let n = self.rows;
        let mut basis = EchelonBasis::new(&self.field, n * n);
        let mut power = Matrix::identity(&self.field, n);
        loop {
            if let Some(coeffs) = basis.insert(power.data.clone()) {
                let k = &self.field;
                let mut c: Vec<FieldElement> = coeffs.iter().map(|x| k.neg(x)).collect();
                c.push(k.one());
                return Ok(Polynomial::new(k, c));
            }
            power = power.mul(self)?;
        }
    }

    /// Characteristic polynomial `det(x I - A)` via Hessenberg reduction.
    pub fn charpoly(&self) -> Result<Polynomial, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::DimensionMismatch("charpoly of non-square matrix".into()));
        }
        let k = &self.field;
        let n = self.rows;
        let mut h = self.clone();
        // reduce to upper Hessenberg form by similarity
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else { continue };
            if i != m {
                for j in 0..n {
                    h.data.swap(i * n + j, m * n + j);
                }
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + m);
                }
            }
            let inv = k.inv(h.get(m, m - 1))?;
            for r in m + 1..n {
                let u = k.mul(h.get(r, m - 1), &inv);
                if u.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = k.sub(h.get(r, j), &k.mul(&u, h.get(m, j)));
                    h.set(r, j, v);
                }
                for rr in 0..n {
                    let v = k.add(h.get(rr, m), &k.mul(&u, h.get(rr, r)));
                    h.set(rr, m, v);
                }
            }
        }
        // p_0 = 1, p_m = (x - h_mm) p_{m-1} - sum_{i<m} h_{im} * prod(h_{j,j-1}) p_{i-1}
        let mut p: Vec<Polynomial> = vec![Polynomial::one(k)];
        for m in 0..n {
            let x_minus = Polynomial::new(k, vec![k.neg(h.get(m, m)), k.one()]);
            let mut pm = x_minus.mul(&p[m]);
            let mut t = k.one();
            for i in (0..m).rev() {
                t = k.mul(&t, h.get(i + 1, i));
                let c = k.mul(&t, h.get(i, m));
                if !c.is_zero() {
                    pm = pm.sub(&p[i].scale(&c));
                }
            }
            p.push(pm);
        }
        Ok(p.pop().unwrap())
    }
}

/// Incrementally maintained echelon basis of a subspace of `K^n` that also
/// records how each reduced vector is expressed in the inserted ones.
#[derive(Clone)]
pub struct EchelonBasis {
    field: NumberField,
    dim: usize,
    /// (pivot column, reduced row with 1 at pivot, combination of inserted vectors)
    rows: Vec<(usize, Vec<FieldElement>, Vec<FieldElement>)>,
    inserted: usize,
}

impl EchelonBasis {
    pub fn new(field: &NumberField, dim: usize) -> Self {
        EchelonBasis { field: field.clone(), dim, rows: Vec::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the basis, returning the residue and the
    /// combination of inserted vectors that was subtracted.
    fn reduce(&self, mut v: Vec<FieldElement>) -> (Vec<FieldElement>, Vec<FieldElement>) {
        let k = &self.field;
        let mut comb = vec![k.zero(); self.inserted];
        for (p, row, c) in &self.rows {
            let f = v[*p].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if !row[j].is_zero() {
                    v[j] = k.sub(&v[j], &k.mul(&f, &row[j]));
                }
            }
            for (j, cj) in c.iter().enumerate() {
                if !cj.is_zero() {
                    comb[j] = k.add(&comb[j], &k.mul(&f, cj));
                }
            }
        }
        (v, comb)
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        self.reduce(v.to_vec()).0.iter().all(|x| x.is_zero())
    }

    /// Inserts `v`. If `v` is already in the span, returns its coordinates
    /// with respect to the previously inserted independent vectors (indexed
    /// by insertion order among accepted vectors) and does not change the basis.
    pub fn insert(&mut self, v: Vec<FieldElement>) -> Option<Vec<FieldElement>> {
        let k = self.field.clone();
        let (r, comb) = self.reduce(v);
        match r.iter().position(|x| !x.is_zero()) {
            None => Some(comb),
            Some(p) => {
                let inv = k.inv(&r[p]).unwrap();
                let row: Vec<FieldElement> = r.iter().map(|x| k.mul(x, &inv)).collect();
                // new row = (v - comb.previous) * inv
                let mut c: Vec<FieldElement> = comb.iter().map(|x| k.neg(&k.mul(x, &inv))).collect();
                c.push(inv);
                for (_, _, oc) in self.rows.iter_mut() {
                    oc.push(k.zero());
                }
                self.inserted += 1;
                // keep other rows reduced at the new pivot
                for idx in 0..self.rows.len() {
                    let f = self.rows[idx].1[p].clone();
                    if f.is_zero() {
                        continue;
                    }
                    for j in 0..self.dim {
                        if !row[j].is_zero() {
                            let v = k.sub(&self.rows[idx].1[j], &k.mul(&f, &row[j]));
                            self.rows[idx].1[j] = v;
                        }
                    }
                    for j in 0..c.len() {
                        if !c[j].is_zero() {
                            let v = k.sub(&self.rows[idx].2[j], &k.mul(&f, &c[j]));
                            self.rows[idx].2[j] = v;
                        }
                    }
                }
                self.rows.push((p, row, c));
                None
            }
        }
    }

    /// Coordinates of `v` in terms of accepted vectors, if `v` is in the span.
    pub fn coordinates(&self, v: &[FieldElement]) -> Option<Vec<FieldElement>> {
        let (r, comb) = self.reduce(v.to_vec());
        if r.iter().all(|x| x.is_zero()) {
            Some(comb)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_det() {
        let q = NumberField::rationals();
        let a = Matrix::from_ints(&q, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert_eq!(a.det().unwrap(), q.from_int(18));
    }

    #[test]
    fn kernel_is_annihilated() {
        let q = NumberField::rationals();
        let a = Matrix::from_ints(&q, &[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let ker = a.kernel();
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(a.mul_vec(&v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn minpoly_and_charpoly() {
        let q = NumberField::rationals();
        // diag(2, 2, 3): minpoly (x-2)(x-3), charpoly (x-2)^2 (x-3)
        let a = Matrix::from_ints(&q, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        assert_eq!(a.minpoly().unwrap(), Polynomial::from_ints(&q, &[6, -5, 1]));
        assert_eq!(a.charpoly().unwrap(), Polynomial::from_ints(&q, &[-12, 16, -7, 1]));
        let b = Matrix::from_ints(&q, &[&[0, 1, 5], &[2, 0, 1], &[1, 1, 1]]);
        let cp = b.charpoly().unwrap();
        // Cayley-Hamilton
        let mut acc = Matrix::zeros(&q, 3, 3);
        for (i, c) in cp.coeffs.iter().enumerate() {
            acc = acc.add(&b.pow(i as u32).unwrap().scale(c)).unwrap();
        }
        assert!(acc.is_zero());
    }
}

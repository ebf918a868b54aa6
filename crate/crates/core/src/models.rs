//! Built-in categories: `Vec_G` for small groups, Ising, and the Haagerup fusion ring.

use exact_algebra::{FieldElement, Matrix, NumberField};

use crate::error::{FusionError, Result};
use crate::fusion::{AssociatorData, FusionData};
use crate::morphism::Object;

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    pub names: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

impl CayleyTable {
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let g = CayleyTable { names, table, identity };
        g.check()?;
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == self.identity).expect("validated group")
    }

    fn check(&self) -> Result<()> {
        let m = self.table.len();
        if m == 0 || self.names.len() != m || self.identity >= m {
            return Err(FusionError::InvalidGroup("order, names and identity disagree".into()));
        }
        for row in &self.table {
            if row.len() != m || row.iter().any(|&x| x >= m) {
                return Err(FusionError::InvalidGroup("table is not square".into()));
            }
        }
        for a in 0..m {
            let mut row_seen = vec![false; m];
            let mut col_seen = vec![false; m];
            for b in 0..m {
                row_seen[self.table[a][b]] = true;
                col_seen[self.table[b][a]] = true;
            }
            if row_seen.iter().any(|s| !s) || col_seen.iter().any(|s| !s) {
                return Err(FusionError::InvalidGroup(format!("row or column {} is not a permutation", a + 1)));
            }
            if self.table[self.identity][a] != a || self.table[a][self.identity] != a {
                return Err(FusionError::InvalidGroup("identity element is not neutral".into()));
            }
        }
        if m <= 64 {
            for a in 0..m {
                for b in 0..m {
                    for c in 0..m {
                        if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]] {
                            return Err(FusionError::InvalidGroup(format!(
                                "not associative at ({}, {}, {})",
                                a + 1,
                                b + 1,
                                c + 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Text format: `order m`, `identity e`, then `m` rows of 1-based indices.
    pub fn parse(text: &str) -> Result<Self> {
        let mut order = None;
        let mut identity = None;
        let mut rows = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            match words.clone().next() {
                Some("order") => {
                    words.next();
                    order = words.next().and_then(|w| w.parse::<usize>().ok());
                }
                Some("identity") => {
                    words.next();
                    identity = words.next().and_then(|w| w.parse::<usize>().ok());
                }
                _ => {
                    let row = words
                        .map(|w| w.parse::<usize>().ok().filter(|&x| x >= 1).map(|x| x - 1))
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| FusionError::InvalidGroup(format!("bad row '{}'", line)))?;
                    rows.push(row);
                }
            }
        }
        let m = order.ok_or_else(|| FusionError::InvalidGroup("missing order".into()))?;
        let e = identity.filter(|&e| e >= 1).ok_or_else(|| FusionError::InvalidGroup("missing identity".into()))? - 1;
        if rows.len() != m {
            return Err(FusionError::InvalidGroup(format!("expected {} rows, found {}", m, rows.len())));
        }
        CayleyTable::new((1..=m).map(|i| format!("g{}", i)).collect(), rows, e)
    }

    pub fn trivial() -> Self {
        CayleyTable::new(vec!["e".into()], vec![vec![0]], 0).expect("trivial group")
    }

    pub fn cyclic(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(FusionError::InvalidGroup("order must be positive".into()));
        }
        let table = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
        CayleyTable::new((0..m).map(|a| format!("c{}", a)).collect(), table, 0)
    }

    /// `S_3` with elements `(), (123), (132), (12), (13), (23)`; products act
    /// left to right, so `(12)(13) = (123)`.
    pub fn s3() -> Self {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [2, 1, 0], [0, 2, 1]];
        let names = ["()", "(123)", "(132)", "(12)", "(13)", "(23)"];
        let find = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed");
        let table = (0..6)
            .map(|a| {
                (0..6)
                    .map(|b| {
                        let (p, q) = (perms[a], perms[b]);
                        find([q[p[0]], q[p[1]], q[p[2]]])
                    })
                    .collect()
            })
            .collect();
        CayleyTable::new(names.iter().map(|s| s.to_string()).collect(), table, 0).expect("S3")
    }

    /// Quaternion group with elements `1, -1, i, -i, j, -j, k, -k`.
    pub fn q8() -> Self {
        // unit quaternions as (sign, axis) with axis 0 = 1, 1 = i, 2 = j, 3 = k
        let elems: [(i8, usize); 8] = [(1, 0), (-1, 0), (1, 1), (-1, 1), (1, 2), (-1, 2), (1, 3), (-1, 3)];
        let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];
        let axis_mul = |a: usize, b: usize| -> (i8, usize) {
            match (a, b) {
                (0, x) | (x, 0) => (1, x),
                (x, y) if x == y => (-1, 0),
                (1, 2) => (1, 3),
                (2, 3) => (1, 1),
                (3, 1) => (1, 2),
                (2, 1) => (-1, 3),
                (3, 2) => (-1, 1),
                (1, 3) => (-1, 2),
                _ => unreachable!(),
            }
        };
        let table = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (sa, xa) = elems[a];
                        let (sb, xb) = elems[b];
                        let (s, x) = axis_mul(xa, xb);
                        let prod = (sa * sb * s, x);
                        elems.iter().position(|e| *e == prod).expect("closed")
                    })
                    .collect()
            })
            .collect();
        CayleyTable::new(names.iter().map(|s| s.to_string()).collect(), table, 0).expect("Q8")
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "s3" => Ok(Self::s3()),
            "q8" => Ok(Self::q8()),
            "trivial" | "1" => Ok(Self::trivial()),
            other => {
                if let Some(m) = other.strip_prefix('c').or_else(|| other.strip_prefix("z")) {
                    let m: usize = m.parse().map_err(|_| FusionError::InvalidGroup(format!("unknown group '{}'", name)))?;
                    return Self::cyclic(m);
                }
                Err(FusionError::InvalidGroup(format!("unknown group '{}'", name)))
            }
        }
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let m = self.order();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for x in 0..m {
            if seen[x] {
                continue;
            }
            let mut class: Vec<usize> = (0..m).map(|g| self.mul(self.mul(g, x), self.inverse(g))).collect();
            class.sort();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            out.push(class);
        }
        out
    }
}

/// `Vec_G` over `field`: simples `δ_g`, `δ_g ⊗ δ_h = δ_{gh}`, trivial associators.
pub fn vec_g(group: &CayleyTable, field: &NumberField) -> Result<FusionData> {
    let m = group.order();
    let mut fusion = vec![vec![vec![0; m]; m]; m];
    for g in 0..m {
        for h in 0..m {
            fusion[g][h][group.mul(g, h)] = 1;
        }
    }
    FusionData::new(
        group.names.clone(),
        field.clone(),
        fusion,
        group.identity,
        AssociatorData::new(),
        vec![field.one(); m],
    )
}

fn ising_fusion() -> Vec<Vec<Vec<usize>>> {
    // simples: 0 = 𝟙, 1 = χ, 2 = X
    let mut n = vec![vec![vec![0; 3]; 3]; 3];
    let table: [(usize, usize, &[usize]); 9] = [
        (0, 0, &[0]),
        (0, 1, &[1]),
        (0, 2, &[2]),
        (1, 0, &[1]),
        (1, 1, &[0]),
        (1, 2, &[2]),
        (2, 0, &[2]),
        (2, 1, &[2]),
        (2, 2, &[0, 1]),
    ];
    for (i, j, ks) in table {
        for &k in ks {
            n[i][j][k] = 1;
        }
    }
    n
}

/// Ising category over `field` with `a² = 2`.
pub fn ising(field: &NumberField, a: &FieldElement) -> Result<FusionData> {
    let k = field;
    if k.mul(a, a) != k.from_int(2) {
        return Err(FusionError::BadSquareRoot);
    }
    let z = |r: usize| Matrix::zeros(k, r, r);
    let one = |x: i64| Matrix::from_ints(k, &[&[x]]);
    let mut assoc = AssociatorData::new();
    assoc.insert((1, 2, 1), vec![z(0), z(0), one(-1)]);
    assoc.insert((2, 1, 2), vec![one(1), one(-1), z(0)]);
    let inv = k.inv(a).map_err(|_| FusionError::BadSquareRoot)?;
    let h = Matrix::from_ints(k, &[&[1, 1], &[1, -1]]).scale(&inv);
    assoc.insert((2, 2, 2), vec![z(0), z(0), h]);
    FusionData::new(
        vec!["𝟙".into(), "χ".into(), "X".into()],
        k.clone(),
        ising_fusion(),
        0,
        assoc,
        vec![k.one(); 3],
    )
}

/// Fusion rules without associator data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    pub names: Vec<String>,
    pub fusion: Vec<Vec<Vec<usize>>>,
    pub unit: usize,
}

impl FusionRing {
    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn tensor(&self, x: &Object, y: &Object) -> Object {
        let n = self.rank();
        let mut z = vec![0; n];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    z[l] += x.0[i] * y.0[j] * self.fusion[i][j][l];
                }
            }
        }
        Object(z)
    }

    pub fn simple(&self, i: usize) -> Object {
        Object::simple(self.rank(), i)
    }

    pub fn is_associative(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    let l = self.tensor(&self.tensor(&self.simple(i), &self.simple(j)), &self.simple(k));
                    let r = self.tensor(&self.simple(i), &self.tensor(&self.simple(j), &self.simple(k)));
                    l == r
                })
            })
        })
    }

    pub fn duals(&self) -> Option<Vec<usize>> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).find(|&j| self.fusion[i][j][self.unit] == 1 && self.fusion[j][i][self.unit] == 1))
            .collect()
    }
}

/// Fusion rules of the Haagerup category with six simples.
pub fn haagerup_fusion_ring() -> FusionRing {
    // 0 = 𝟙, 1 = α, 2 = α*, 3 = ρ, 4 = αρ, 5 = α*ρ
    let names = ["𝟙", "α", "α*", "ρ", "αρ", "α*ρ"];
    let mut n = vec![vec![vec![0; 6]; 6]; 6];
    let group = [[0, 1, 2], [1, 2, 0], [2, 0, 1]];
    for g in 0..3 {
        for h in 0..3 {
            n[g][h][group[g][h]] = 1;
            // g ⊗ (h ρ) = (gh) ρ, (h ρ) ⊗ g = (h g*) ρ
            n[g][3 + h][3 + group[g][h]] = 1;
            n[3 + h][g][3 + group[h][[0, 2, 1][g]]] = 1;
        }
    }
    for a in 0..3 {
        for b in 0..3 {
            // aρ ⊗ bρ = a b* ⊕ ρ ⊕ αρ ⊕ α*ρ
            let g = group[a][[0, 2, 1][b]];
            n[3 + a][3 + b][g] = 1;
            for r in 3..6 {
                n[3 + a][3 + b][r] = 1;
            }
        }
    }
    FusionRing { names: names.iter().map(|s| s.to_string()).collect(), fusion: n, unit: 0 }
}

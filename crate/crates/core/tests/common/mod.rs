#![allow(dead_code)]

use exact_algebra::{field_adjoin, FieldElement, Matrix, NumberField, Polynomial, RootSelector};
use fusion_center::center::{CenterObject, HalfBraiding};
use fusion_center::models::{ising, vec_g, CayleyTable};
use fusion_center::{FusionData, Morphism, Object};

pub fn sqrt2() -> (NumberField, FieldElement) {
    let q = NumberField::rationals();
    let (k, _) = field_adjoin(&q, &Polynomial::from_ints(&q, &[-2, 0, 1]), "a", Some(RootSelector::real(1.414))).unwrap();
    let a = k.generator().unwrap();
    (k, a)
}

pub fn ising_sqrt2() -> FusionData {
    let (k, a) = sqrt2();
    ising(&k, &a).unwrap()
}

/// `Q(z)` with `z^2 + z + 1 = 0`.
pub fn xi3() -> NumberField {
    let q = NumberField::rationals();
    field_adjoin(&q, &Polynomial::from_ints(&q, &[1, 1, 1]), "z", None).unwrap().0
}

pub fn s3(k: &NumberField) -> FusionData {
    vec_g(&CayleyTable::s3(), k).unwrap()
}

pub fn q8() -> FusionData {
    vec_g(&CayleyTable::q8(), &NumberField::rationals()).unwrap()
}

/// Columns of the S3 table in the order `(12), (13), (23), (123), (132)`.
pub const S3_COLUMNS: [&str; 5] = ["(12)", "(13)", "(23)", "(123)", "(132)"];

/// One row of the hand-written S3 table: the summands of the underlying
/// object in the table's order and one square matrix per column.
pub struct TableRow {
    pub summands: &'static [&'static str],
    pub columns: [&'static [&'static [&'static str]]; 5],
}

const T: &[&str] = &["(23)", "(12)", "(13)"];
const C: &[&str] = &["(132)", "(123)"];

pub const S3_TABLE: [TableRow; 8] = [
    TableRow { summands: &["()"], columns: [&[&["1"]], &[&["1"]], &[&["1"]], &[&["1"]], &[&["1"]]] },
    TableRow { summands: &["()"], columns: [&[&["-1"]], &[&["-1"]], &[&["-1"]], &[&["1"]], &[&["1"]]] },
    TableRow {
        summands: &["()", "()"],
        columns: [
            &[&["1", "0"], &["-1", "-1"]],
            &[&["0", "1"], &["1", "0"]],
            &[&["-1", "-1"], &["0", "1"]],
            &[&["-1", "-1"], &["1", "0"]],
            &[&["0", "1"], &["-1", "-1"]],
        ],
    },
    TableRow {
        summands: T,
        columns: [
            &[&["0", "0", "1"], &["0", "1", "0"], &["1", "0", "0"]],
            &[&["0", "1", "0"], &["1", "0", "0"], &["0", "0", "1"]],
            &[&["1", "0", "0"], &["0", "0", "1"], &["0", "1", "0"]],
            &[&["0", "1", "0"], &["0", "0", "1"], &["1", "0", "0"]],
            &[&["0", "0", "1"], &["1", "0", "0"], &["0", "1", "0"]],
        ],
    },
    TableRow {
        summands: T,
        columns: [
            &[&["0", "0", "-1"], &["0", "-1", "0"], &["-1", "0", "0"]],
            &[&["0", "1", "0"], &["1", "0", "0"], &["0", "0", "-1"]],
            &[&["-1", "0", "0"], &["0", "0", "1"], &["0", "1", "0"]],
            &[&["0", "-1", "0"], &["0", "0", "-1"], &["1", "0", "0"]],
            &[&["0", "0", "1"], &["-1", "0", "0"], &["0", "-1", "0"]],
        ],
    },
    TableRow {
        summands: C,
        columns: [
            &[&["0", "1"], &["1", "0"]],
            &[&["0", "1"], &["1", "0"]],
            &[&["0", "1"], &["1", "0"]],
            &[&["1", "0"], &["0", "1"]],
            &[&["1", "0"], &["0", "1"]],
        ],
    },
    TableRow {
        summands: C,
        columns: [
            &[&["0", "z"], &["z^2", "0"]],
            &[&["0", "1"], &["1", "0"]],
            &[&["0", "z^2"], &["z", "0"]],
            &[&["0", "z^2"], &["z", "0"]],
            &[&["0", "z"], &["z^2", "0"]],
        ],
    },
    TableRow {
        summands: C,
        columns: [
            &[&["0", "z^2"], &["z", "0"]],
            &[&["0", "1"], &["1", "0"]],
            &[&["0", "z"], &["z^2", "0"]],
            &[&["0", "z"], &["z^2", "0"]],
            &[&["0", "z^2"], &["z", "0"]],
        ],
    },
];

/// Translates a table row into components `γ(δ_y)` for every group element.
/// Entry `(r, c)` maps summand `c` of `Z ⊗ δ_y` (degree `x_c y`) to summand
/// `r` of `δ_y ⊗ Z` (degree `y x_r`); within a degree, copies are ordered
/// by group element, then by occurrence in the row.
pub fn table_components(cat: &FusionData, row: &TableRow) -> Result<(Object, Vec<Morphism>), String> {
    let k = &cat.field;
    let n = cat.rank();
    let idx = |name: &str| cat.names.iter().position(|s| s == name).unwrap();
    let mul = |a: usize, b: usize| (0..n).find(|&d| cat.fusion[a][b][d] == 1).unwrap();
    let elems: Vec<usize> = row.summands.iter().map(|s| idx(s)).collect();
    // copy number of each summand among equal elements
    let copies: Vec<usize> = (0..elems.len()).map(|p| elems[..p].iter().filter(|&&e| e == elems[p]).count()).collect();
    let mut z = Object::zero(n);
    for &e in &elems {
        z.0[e] += 1;
    }
    let mut comps = Vec::with_capacity(n);
    for y in 0..n {
        let mut blocks: Vec<Matrix> = (0..n).map(|_| Matrix::zeros(k, 0, 0)).collect();
        let src = cat.tensor_objects(&z, &cat.simple(y)).unwrap();
        let dst = cat.tensor_objects(&cat.simple(y), &z).unwrap();
        for d in 0..n {
            blocks[d] = Matrix::zeros(k, dst.0[d], src.0[d]);
        }
        let position = |p: usize, left: bool| {
            let d = if left { mul(y, elems[p]) } else { mul(elems[p], y) };
            let rank = (0..elems.len())
                .filter(|&q| {
                    let dq = if left { mul(y, elems[q]) } else { mul(elems[q], y) };
                    dq == d && (elems[q], copies[q]) < (elems[p], copies[p])
                })
                .count();
            (d, rank)
        };
        let col = S3_COLUMNS.iter().position(|c| idx(c) == y);
        for c in 0..elems.len() {
            for r in 0..elems.len() {
                let entry = match col {
                    None => if r == c { k.one() } else { k.zero() },
                    Some(t) => k.parse(row.columns[t][r][c]).unwrap(),
                };
                if entry.is_zero() {
                    continue;
                }
                let (ds, cs) = position(c, false);
                let (dt, rt) = position(r, true);
                if ds != dt {
                    return Err(format!("column {}: entry ({}, {}) joins different degrees", cat.names[y], r + 1, c + 1));
                }
                blocks[ds].set(rt, cs, entry);
            }
        }
        comps.push(Morphism::new(src, dst, blocks).unwrap());
    }
    Ok((z, comps))
}

pub fn table_object(cat: &FusionData, row: &TableRow) -> Result<CenterObject, String> {
    let (z, comps) = table_components(cat, row)?;
    if let Some(v) = fusion_center::center::check_half_braiding(cat, &z, &comps).map_err(|e| e.to_string())? {
        return Err(v);
    }
    HalfBraiding::new(cat, z, comps).map(CenterObject::from_braiding).map_err(|e| e.to_string())
}

/// A permutation `p` with `b[p[i]][p[j]][p[k]] = a[i][j][k]`, if any.
pub fn match_tables(a: &[Vec<Vec<usize>>], b: &[Vec<Vec<usize>>]) -> Vec<Vec<usize>> {
    let n = a.len();
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(t: usize, a: &[Vec<Vec<usize>>], b: &[Vec<Vec<usize>>], perm: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = a.len();
        if t == n {
            out.push(perm.clone());
            return;
        }
        for c in 0..n {
            if used[c] {
                continue;
            }
            perm[t] = c;
            let ok = (0..=t).all(|i| (0..=t).all(|j| (0..=t).all(|k| b[perm[i]][perm[j]][perm[k]] == a[i][j][k])));
            if ok {
                used[c] = true;
                rec(t + 1, a, b, perm, used, out);
                used[c] = false;
            }
        }
        perm[t] = usize::MAX;
    }
    rec(0, a, b, &mut perm, &mut used, &mut out);
    out
}

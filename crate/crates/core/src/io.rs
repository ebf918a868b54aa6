//! Category files and text rendering of results.
//!
//! A category file is a sequence of `key: body;` statements; `#` starts a
//! comment. Simple indices are 1-based.
//!
//! ```text
//! version: 1;
//! field: a [-2, 0, 1] root 1.4142135623730951;
//! simples: 𝟙, χ, X;
//! unit: 1;
//! fusion: 1 1 1 1, 1 2 2 1, 1 3 3 1, 2 1 2 1, 2 2 1 1, 2 3 3 1, 3 1 3 1, 3 2 3 1, 3 3 1 1, 3 3 2 1;
//! associator: 2 3 2 3 [[-1]];
//! associator: 3 2 3 2 [[-1]];
//! associator: 3 3 3 3 [[1//2*a, 1//2*a], [1//2*a, -1//2*a]];
//! spherical: 1, 1, 1;
//! ```
//!
//! Each `field` statement adjoins a root of the listed monic polynomial
//! (ascending coefficients, over the field built so far). `fusion` lists
//! `i j k N_ij^k` with omitted entries zero. `associator` gives the block
//! `(i, j, k)` at target `l`; omitted blocks are identities.

use std::fmt::Write as _;

use exact_algebra::{field_adjoin, Complex64, FieldElement, Matrix, NumberField, Polynomial, RootSelector};

use crate::center::CenterObject;
use crate::error::{FusionError, Result};
use crate::fusion::{AssociatorData, FusionData};

pub const FORMAT_VERSION: u32 = 1;

struct Source {
    text: String,
    line_starts: Vec<usize>,
}

impl Source {
    fn new(raw: &str) -> Self {
        // blank out comments so offsets keep pointing at the original columns
        let mut text = String::with_capacity(raw.len());
        for line in raw.split_inclusive('\n') {
            match line.find('#') {
                Some(p) => {
                    text.push_str(&line[..p]);
                    text.extend(line[p..].chars().map(|c| if c == '\n' { '\n' } else { ' ' }));
                }
                None => text.push_str(line),
            }
        }
        let mut line_starts = vec![0];
        line_starts.extend(text.match_indices('\n').map(|(i, _)| i + 1));
        Source { text, line_starts }
    }

    fn err(&self, offset: usize, msg: impl Into<String>) -> FusionError {
        let line = self.line_starts.partition_point(|&s| s <= offset);
        let start = self.line_starts[line - 1];
        let col = self.text[start..offset].chars().count() + 1;
        FusionError::Parse { line, col, msg: msg.into() }
    }

    fn offset(&self, sub: &str) -> usize {
        sub.as_ptr() as usize - self.text.as_ptr() as usize
    }
}

/// Splits at top-level `sep` (outside brackets and parentheses); pieces are trimmed.
fn split_list(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            _ if c == sep && depth == 0 => {
                out.push(s[start..i].trim());
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    let last = s[start..].trim();
    if !last.is_empty() || !out.is_empty() {
        out.push(last);
    }
    out
}

fn strip_brackets<'a>(src: &Source, s: &'a str) -> Result<&'a str> {
    s.strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| src.err(src.offset(s), "expected a bracketed list"))
}

fn parse_index(src: &Source, s: &str, n: usize) -> Result<usize> {
    let v: usize = s.parse().map_err(|_| src.err(src.offset(s), format!("expected an index, got `{}`", s)))?;
    if v == 0 || v > n {
        return Err(src.err(src.offset(s), format!("index {} out of range 1..{}", v, n)));
    }
    Ok(v - 1)
}

fn parse_element(src: &Source, k: &NumberField, s: &str) -> Result<FieldElement> {
    k.parse(s).map_err(|e| src.err(src.offset(s), e.to_string()))
}

fn parse_matrix(src: &Source, k: &NumberField, s: &str, dim: usize) -> Result<Matrix> {
    let rows = split_list(strip_brackets(src, s)?, ',');
    if rows.len() != dim {
        return Err(src.err(src.offset(s), format!("expected {} rows, got {}", dim, rows.len())));
    }
    let mut m = Matrix::zeros(k, dim, dim);
    for (r, row) in rows.iter().enumerate() {
        let entries = split_list(strip_brackets(src, row)?, ',');
        if entries.len() != dim {
            return Err(src.err(src.offset(row), format!("expected {} entries, got {}", dim, entries.len())));
        }
        for (c, e) in entries.iter().enumerate() {
            m.set(r, c, parse_element(src, k, e)?);
        }
    }
    Ok(m)
}

/// Parses a category file. With `validate`, pentagon and rigidity failures are errors.
pub fn parse_category(text: &str, validate: bool) -> Result<FusionData> {
    let src = Source::new(text);
    let mut field = NumberField::rationals();
    let mut version = None;
    let mut names: Option<Vec<String>> = None;
    let mut unit = None;
    let mut fusion: Option<Vec<Vec<Vec<usize>>>> = None;
    let mut blocks: Vec<(usize, usize, usize, usize, Matrix)> = Vec::new();
    let mut spherical: Option<Vec<FieldElement>> = None;
    let statements: Vec<&str> = src.text.split(';').collect();
    let last = statements.len() - 1;
    for (idx, raw) in statements.into_iter().enumerate() {
        let stmt = raw.trim();
        if stmt.is_empty() {
            continue;
        }
        if idx == last {
            return Err(src.err(src.offset(stmt), "statement is missing its terminating `;`"));
        }
        let (key, body) = stmt.split_once(':').ok_or_else(|| src.err(src.offset(stmt), "expected `key: value`"))?;
        let (key, body) = (key.trim(), body.trim());
        if version.is_none() && key != "version" {
            return Err(src.err(src.offset(stmt), "the file must start with `version:`"));
        }
        let need_n = |names: &Option<Vec<String>>| {
            names.as_ref().map(|v| v.len()).ok_or_else(|| src.err(src.offset(stmt), "`simples` must come first"))
        };
        match key {
            "version" => {
                let v: u32 = body.parse().map_err(|_| src.err(src.offset(body), "expected a version number"))?;
                if v != FORMAT_VERSION {
                    return Err(src.err(src.offset(body), format!("unsupported version {}", v)));
                }
                version = Some(v);
            }
            "field" => {
                let open = body.find('[').ok_or_else(|| src.err(src.offset(body), "expected `name [coefficients]`"))?;
                let close = body.rfind(']').ok_or_else(|| src.err(src.offset(body), "unclosed coefficient list"))?;
                let name = body[..open].trim();
                if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                    return Err(src.err(src.offset(body), "invalid generator name"));
                }
                let coeffs = split_list(&body[open + 1..close], ',')
                    .into_iter()
                    .map(|c| parse_element(&src, &field, c))
                    .collect::<Result<Vec<_>>>()?;
                let tail: Vec<&str> = body[close + 1..].split_whitespace().collect();
                let selector = match tail.as_slice() {
                    [] => None,
                    ["root", re] | ["root", re, _] => {
                        let num = |s: &str| {
                            s.parse::<f64>().map_err(|_| src.err(src.offset(body), format!("bad number `{}`", s)))
                        };
                        let im = if tail.len() == 3 { num(tail[2])? } else { 0.0 };
                        let mut sel = RootSelector::real(num(re)?);
                        sel.approx = Complex64::new(sel.approx.re, im);
                        Some(sel)
                    }
                    _ => return Err(src.err(src.offset(body), "expected `root re [im]` after the coefficients")),
                };
                let poly = Polynomial::new(&field, coeffs);
                let (ext, _) = field_adjoin(&field, &poly, name, selector)
                    .map_err(|e| src.err(src.offset(body), e.to_string()))?;
                field = ext;
            }
            "simples" => {
                let v: Vec<String> = split_list(body, ',').into_iter().map(String::from).collect();
                if v.is_empty() || v.iter().any(|s| s.is_empty()) {
                    return Err(src.err(src.offset(body), "empty simple name"));
                }
                names = Some(v);
            }
            "unit" => unit = Some(parse_index(&src, body, need_n(&names)?)?),
            "fusion" => {
                let n = need_n(&names)?;
                let mut f = vec![vec![vec![0; n]; n]; n];
                for entry in split_list(body, ',') {
                    let p: Vec<&str> = entry.split_whitespace().collect();
                    if p.len() != 4 {
                        return Err(src.err(src.offset(entry), "expected `i j k multiplicity`"));
                    }
                    let (i, j, k) = (parse_index(&src, p[0], n)?, parse_index(&src, p[1], n)?, parse_index(&src, p[2], n)?);
                    f[i][j][k] = p[3].parse().map_err(|_| src.err(src.offset(p[3]), "expected a multiplicity"))?;
                }
                fusion = Some(f);
            }
            "associator" => {
                let n = need_n(&names)?;
                let f = fusion.as_ref().ok_or_else(|| src.err(src.offset(stmt), "`fusion` must precede `associator`"))?;
                let open = body.find('[').ok_or_else(|| src.err(src.offset(body), "expected `i j k l [[...]]`"))?;
                let p: Vec<&str> = body[..open].split_whitespace().collect();
                if p.len() != 4 {
                    return Err(src.err(src.offset(body), "expected four indices before the matrix"));
                }
                let ix: Vec<usize> = p.iter().map(|s| parse_index(&src, s, n)).collect::<Result<_>>()?;
                let dim: usize = (0..n).map(|m| f[ix[0]][ix[1]][m] * f[m][ix[2]][ix[3]]).sum();
                let m = parse_matrix(&src, &field, body[open..].trim(), dim)?;
                blocks.push((ix[0], ix[1], ix[2], ix[3], m));
            }
            "spherical" => {
                let v = split_list(body, ',')
                    .into_iter()
                    .map(|e| parse_element(&src, &field, e))
                    .collect::<Result<Vec<_>>>()?;
                spherical = Some(v);
            }
            other => return Err(src.err(src.offset(key), format!("unknown section `{}`", other))),
        }
    }
    let end = src.text.len();
    let names = names.ok_or_else(|| src.err(end, "missing `simples`"))?;
    let n = names.len();
    let fusion = fusion.ok_or_else(|| src.err(end, "missing `fusion`"))?;
    let spherical = spherical.ok_or_else(|| src.err(end, "missing `spherical`"))?;
    let unit = unit.ok_or_else(|| src.err(end, "missing `unit`"))?;
    let mut associators = AssociatorData::new();
    for (i, j, k, l, m) in blocks {
        let entry = associators.entry((i, j, k)).or_insert_with(|| {
            (0..n)
                .map(|t| Matrix::identity(&field, (0..n).map(|m| fusion[i][j][m] * fusion[m][k][t]).sum()))
                .collect()
        });
        entry[l] = m;
    }
    let cat = FusionData::new(names, field, fusion, unit, associators, spherical)?;
    if validate {
        let v = cat.validate();
        if !v.is_empty() {
            return Err(FusionError::Validation(v));
        }
    }
    Ok(cat)
}

/// Serializes a category; non-identity associator blocks only.
pub fn write_category(cat: &FusionData) -> String {
    let k = &cat.field;
    let n = cat.rank();
    let mut out = String::new();
    let _ = writeln!(out, "version: {};", FORMAT_VERSION);
    for level in k.tower().iter().skip(1) {
        let base = level.base().expect("extension");
        let coeffs: Vec<String> = level.minpoly().expect("extension").iter().map(|c| base.render(c)).collect();
        let _ = write!(out, "field: {} [{}]", level.generator_name().unwrap_or("a"), coeffs.join(", "));
        if let Some(sel) = level.root_selector() {
            let _ = write!(out, " root {:?} {:?}", sel.approx.re, sel.approx.im);
        }
        out.push_str(";\n");
    }
    let _ = writeln!(out, "simples: {};", cat.names.join(", "));
    let _ = writeln!(out, "unit: {};", cat.unit + 1);
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                if cat.fusion[i][j][l] > 0 {
                    entries.push(format!("{} {} {} {}", i + 1, j + 1, l + 1, cat.fusion[i][j][l]));
                }
            }
        }
    }
    let _ = writeln!(out, "fusion: {};", entries.join(", "));
    for i in 0..n {
        for j in 0..n {
            for kk in 0..n {
                for l in 0..n {
                    let b = cat.associator_block(i, j, kk, l);
                    if b.rows == 0 || b.is_identity() {
                        continue;
                    }
                    let _ = writeln!(out, "associator: {} {} {} {} {};", i + 1, j + 1, kk + 1, l + 1, render_matrix_inline(k, b));
                }
            }
        }
    }
    let sph: Vec<String> = cat.spherical.iter().map(|s| k.render(s)).collect();
    let _ = writeln!(out, "spherical: {};", sph.join(", "));
    out
}

pub fn render_matrix_inline(k: &NumberField, m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows)
        .map(|r| {
            let e: Vec<String> = (0..m.cols).map(|c| k.render(m.get(r, c))).collect();
            format!("[{}]", e.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

/// Column-aligned matrix, one row per line.
pub fn render_matrix(k: &NumberField, m: &Matrix) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows).map(|r| (0..m.cols).map(|c| k.render(m.get(r, c))).collect()).collect();
    let widths: Vec<usize> = (0..m.cols)
        .map(|c| cells.iter().map(|row| row[c].chars().count()).max().unwrap_or(1))
        .collect();
    let mut out = String::new();
    for row in &cells {
        let padded: Vec<String> = row.iter().zip(&widths).map(|(s, &w)| format!("{:>w$}", s, w = w)).collect();
        let _ = writeln!(out, "[ {} ]", padded.join("  "));
    }
    out
}

/// One block per central simple: underlying object, dimension, End dimension,
/// then `γ(X_l)` for every non-unit simple `X_l`, block by block.
pub fn render_center(cat: &FusionData, simples: &[CenterObject], end_dims: &[usize]) -> Result<String> {
    let k = &cat.field;
    let mut out = String::new();
    for (t, (z, e)) in simples.iter().zip(end_dims).enumerate() {
        let _ = writeln!(
            out,
            "[{}] {}    dim {}    End {}",
            t + 1,
            z.object.render(&cat.names),
            k.render(&z.dim(cat)?),
            e
        );
        for l in (0..cat.rank()).filter(|&l| l != cat.unit) {
            let g = z.gamma(l);
            let parts: Vec<String> = g
                .blocks
                .iter()
                .enumerate()
                .filter(|(_, b)| b.rows > 0)
                .map(|(m, b)| format!("{}: {}", cat.names[m], render_matrix_inline(k, b)))
                .collect();
            let _ = writeln!(out, "    γ({}) = {}", cat.names[l], parts.join("  "));
        }
    }
    Ok(out)
}

/// `Z_a ⊗ Z_b` as a formal sum of central simples `Z_1, …`.
pub fn render_sum(coeffs: &[usize]) -> String {
    let parts: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, &c)| if c == 1 { format!("Z{}", i + 1) } else { format!("{}·Z{}", c, i + 1) })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// The upper triangle of the multiplication table, one product per line.
pub fn render_mult_table(table: &[Vec<Vec<usize>>]) -> String {
    let mut out = String::new();
    for a in 0..table.len() {
        for b in a..table.len() {
            let _ = writeln!(out, "Z{} ⊗ Z{} = {}", a + 1, b + 1, render_sum(&table[a][b]));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{ising, vec_g, CayleyTable};

    fn sqrt2_ising() -> FusionData {
        let q = NumberField::rationals();
        let (k, _) =
            field_adjoin(&q, &Polynomial::from_ints(&q, &[-2, 0, 1]), "a", Some(RootSelector::real(1.414))).unwrap();
        let a = k.generator().unwrap();
        ising(&k, &a).unwrap()
    }

    fn same_data(a: &FusionData, b: &FusionData) -> bool {
        let n = a.rank();
        if a.fusion != b.fusion || a.names != b.names || a.unit != b.unit {
            return false;
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let (x, y) = (a.associator_block(i, j, k, l), b.associator_block(i, j, k, l));
                        if render_matrix_inline(&a.field, x) != render_matrix_inline(&b.field, y) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    #[test]
    fn ising_round_trips() {
        let cat = sqrt2_ising();
        let text = write_category(&cat);
        let back = parse_category(&text, true).unwrap();
        assert!(same_data(&cat, &back));
        assert_eq!(write_category(&back), text);
    }

    #[test]
    fn documented_example_parses() {
        let doc = "version: 1;\nfield: a [-2, 0, 1] root 1.4142135623730951;\nsimples: 𝟙, χ, X;\nunit: 1;\n\
            fusion: 1 1 1 1, 1 2 2 1, 1 3 3 1, 2 1 2 1, 2 2 1 1, 2 3 3 1, 3 1 3 1, 3 2 3 1, 3 3 1 1, 3 3 2 1;\n\
            associator: 2 3 2 3 [[-1]];\n\
            associator: 3 2 3 2 [[-1]];\n\
            associator: 3 3 3 3 [[1//2*a, 1//2*a], [1//2*a, -1//2*a]];  # a^-1 = a/2\n\
            spherical: 1, 1, 1;\n";
        let cat = parse_category(doc, true).unwrap();
        assert!(same_data(&cat, &sqrt2_ising()));
    }

    #[test]
    fn one_simple_file_is_vec() {
        let cat = parse_category("version: 1; simples: e; unit: 1; fusion: 1 1 1 1; spherical: 1;", true).unwrap();
        assert_eq!(cat.rank(), 1);
        assert!(cat.field.is_rationals());
        assert!(cat.field.is_one(&cat.dim_category()));
    }

    #[test]
    fn non_associative_fusion_is_rejected() {
        // X ⊗ X = 1 + X + Y, Y ⊗ Y = 1, everything else forced by the unit
        let text = "version: 1; simples: 1, X, Y; unit: 1;\n\
            fusion: 1 1 1 1, 1 2 2 1, 1 3 3 1, 2 1 2 1, 3 1 3 1, 2 2 1 1, 2 2 2 1, 2 2 3 1, 3 3 1 1, 2 3 2 1, 3 2 2 1;\n\
            spherical: 1, 1, 1;";
        assert!(parse_category(text, true).is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let text = "version: 1;\nsimples: 1, g;\nunit: 1;\nfusion: 1 1 1 1, 1 2 2 1, 2 1 2 1, 2 2 1 1;\nspherical: 1, 1 +;\n";
        match parse_category(text, true) {
            Err(FusionError::Parse { line, col, .. }) => assert_eq!((line, col), (5, 15)),
            other => panic!("unexpected {:?}", other),
        }
        match parse_category("version: 1;\nsimples: 1; unit: 3;", true) {
            Err(FusionError::Parse { line, col, .. }) => assert_eq!((line, col), (2, 19)),
            other => panic!("unexpected {:?}", other),
        }
        assert!(matches!(parse_category("version: 1; simples: 1", true), Err(FusionError::Parse { .. })));
    }

    #[test]
    fn bad_pentagon_is_a_validation_error() {
        let cat = sqrt2_ising();
        let text = write_category(&cat).replace("associator: 2 3 2 3 [[-1]];", "associator: 2 3 2 3 [[1]];");
        assert!(matches!(parse_category(&text, true), Err(FusionError::Validation(_))));
        assert!(parse_category(&text, false).is_ok());
    }

    #[test]
    fn group_categories_round_trip() {
        let q = NumberField::rationals();
        let cat = vec_g(&CayleyTable::s3(), &q).unwrap();
        let text = write_category(&cat);
        assert!(!text.contains("associator"));
        assert!(same_data(&parse_category(&text, true).unwrap(), &cat));
    }
}

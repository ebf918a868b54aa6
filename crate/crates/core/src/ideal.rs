//! The quadratic polynomial system whose solutions are the half-braidings of a fixed object.
//!
//! `γ_Z(X_l)` is written as `Σ_r x_{l,r} g^l_r` in the matrix-unit basis of
//! `Hom(Z ⊗ X_l, X_l ⊗ Z)`. For every pair of non-unit simples `(i, j)`,
//! every `k` and every basis element `t` of `Hom(X_k, X_i ⊗ X_j)`, the two
//! sides of the hexagon are compared coordinatewise in
//! `Hom(Z ⊗ X_k, X_i ⊗ (X_j ⊗ Z))`. Triples with `i` or `j` the unit are
//! implied by `γ_Z(𝟙) = id`, which is appended as linear generators.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use exact_algebra::field::render_rational;
use exact_algebra::{FieldElement, NumberField, Rational};

use crate::center::CenterObject;
use crate::error::{FusionError, Result};
use crate::fusion::FusionData;
use crate::morphism::{hom_basis, Morphism, Object};

/// Sorted `(variable, exponent)` pairs.
pub type Monomial = Vec<(usize, u32)>;

/// Multivariate polynomial with variables indexed from 0.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MPoly {
    pub terms: BTreeMap<Monomial, FieldElement>,
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out: BTreeMap<usize, u32> = a.iter().cloned().collect();
    for &(v, e) in b {
        *out.entry(v).or_insert(0) += e;
    }
    out.into_iter().collect()
}

fn degree(m: &Monomial) -> u32 {
    m.iter().map(|&(_, e)| e).sum()
}

impl MPoly {
    pub fn var(k: &NumberField, v: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![(v, 1)], k.one());
        MPoly { terms }
    }

    pub fn add_term(&mut self, k: &NumberField, m: Monomial, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&m) {
            Some(old) => k.add(old, c),
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(degree).max().unwrap_or(0)
    }

    pub fn variables(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.keys().flat_map(|m| m.iter().map(|&(x, _)| x)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn eval(&self, k: &NumberField, point: &[FieldElement]) -> FieldElement {
        let mut acc = k.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m {
                t = k.mul(&t, &k.pow(&point[v], e as u64));
            }
            acc = k.add(&acc, &t);
        }
        acc
    }

    /// Renames variables through `f`.
    pub fn relabel(&self, k: &NumberField, f: impl Fn(usize) -> usize) -> MPoly {
        let mut out = MPoly::default();
        for (m, c) in &self.terms {
            let mut nm: Vec<(usize, u32)> = m.iter().map(|&(v, e)| (f(v), e)).collect();
            nm.sort_unstable();
            out.add_term(k, nm, c);
        }
        out
    }

    /// Terms ordered by degree with the constant last, e.g. `x1 - x4^2`.
    fn ordered_terms(&self) -> Vec<(&Monomial, &FieldElement)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by_key(|(m, _)| (m.is_empty(), degree(m), (*m).clone()));
        t
    }

    fn render_with(&self, k: &NumberField, rational: impl Fn(&Rational) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.ordered_terms().into_iter().enumerate() {
            let mono: Vec<String> = m
                .iter()
                .map(|&(v, e)| if e == 1 { format!("x{}", v + 1) } else { format!("x{}^{}", v + 1, e) })
                .collect();
            let mono = mono.join("*");
            let (neg, coef) = match c.as_rational() {
                Some(r) => {
                    let a = num_abs(&r);
                    let s = if m.is_empty() || a != Rational::from_integer(1.into()) { Some(rational(&a)) } else { None };
                    (r < Rational::from_integer(0.into()), s)
                }
                None => (false, Some(format!("({})", k.render(c)))),
            };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match (coef, mono.is_empty()) {
                (Some(c), true) => out.push_str(&c),
                (Some(c), false) => {
                    let _ = write!(out, "{}*{}", c, mono);
                }
                (None, _) => out.push_str(&mono),
            }
        }
        out
    }

    /// Plain rendering; rationals as `p//q`, other coefficients parenthesized.
    pub fn render(&self, k: &NumberField) -> String {
        self.render_with(k, render_rational)
    }
}

fn num_abs(r: &Rational) -> Rational {
    if *r < Rational::from_integer(0.into()) {
        -r.clone()
    } else {
        r.clone()
    }
}

/// Variable `x_{m+1}` is the coefficient of the `index`-th basis element of
/// `Hom(Z ⊗ X_simple, X_simple ⊗ Z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VarInfo {
    pub simple: usize,
    pub index: usize,
}

#[derive(Clone, Debug)]
pub struct PolynomialIdeal {
    pub field: NumberField,
    pub object: Object,
    pub vars: Vec<VarInfo>,
    pub generators: Vec<MPoly>,
    /// Number of trailing generators that encode `γ_Z(𝟙) = id`.
    pub normalization: usize,
}

pub fn halfbraiding_ideal(cat: &FusionData, z: &Object) -> Result<PolynomialIdeal> {
    let k = &cat.field;
    let n = cat.rank();
    let mut bases = Vec::with_capacity(n);
    let mut offsets = Vec::with_capacity(n);
    let mut vars = Vec::new();
    for l in 0..n {
        let xl = cat.simple(l);
        let b = hom_basis(k, &cat.tensor_objects(z, &xl)?, &cat.tensor_objects(&xl, z)?);
        offsets.push(vars.len());
        vars.extend((0..b.len()).map(|index| VarInfo { simple: l, index }));
        bases.push(b);
    }
    let x = |l: usize, r: usize| offsets[l] + r;
    let mut generators = Vec::new();
    for i in (0..n).filter(|&i| i != cat.unit) {
        let xi = cat.simple(i);
        for j in (0..n).filter(|&j| j != cat.unit) {
            let xj = cat.simple(j);
            let xij = cat.tensor_objects(&xi, &xj)?;
            let a_ijz = cat.associator(&xi, &xj, z)?;
            let a_izj = cat.associator(&xi, z, &xj)?;
            let a_zij_inv = cat.associator_inverse(z, &xi, &xj)?;
            for kk in 0..n {
                if cat.fusion[i][j][kk] == 0 {
                    continue;
                }
                let xk = cat.simple(kk);
                for t in hom_basis(k, &xk, &xij) {
                    let tz = cat.tensor_id(&t, z)?;
                    let phi: Vec<Vec<FieldElement>> = bases[kk]
                        .iter()
                        .map(|g| Ok(a_ijz.compose(&tz)?.compose(g)?.to_vector()))
                        .collect::<Result<_>>()?;
                    let front = a_zij_inv.compose(&cat.id_tensor(z, &t)?)?;
                    let mids: Vec<Morphism> = bases[i]
                        .iter()
                        .map(|g| a_izj.compose(&cat.tensor_id(g, &xj)?)?.compose(&front))
                        .collect::<Result<_>>()?;
                    let mut psi = Vec::new();
                    for (r, mid) in mids.iter().enumerate() {
                        for (s, h) in bases[j].iter().enumerate() {
                            psi.push((r, s, cat.id_tensor(&xi, h)?.compose(mid)?.to_vector()));
                        }
                    }
                    let dim = phi.first().map(|v| v.len()).or_else(|| psi.first().map(|p| p.2.len())).unwrap_or(0);
                    for c in 0..dim {
                        let mut p = MPoly::default();
                        for (r, v) in phi.iter().enumerate() {
                            p.add_term(k, vec![(x(kk, r), 1)], &v[c]);
                        }
                        for (r, s, v) in &psi {
                            let m = mono_mul(&vec![(x(i, *r), 1)], &vec![(x(j, *s), 1)]);
                            p.add_term(k, m, &k.neg(&v[c]));
                        }
                        if !p.is_zero() {
                            generators.push(p);
                        }
                    }
                }
            }
        }
    }
    let u = cat.unit;
    let id = Morphism::identity(k, z).to_vector();
    for (r, c) in id.iter().enumerate() {
        let mut p = MPoly::var(k, x(u, r));
        p.add_term(k, vec![], &k.neg(c));
        generators.push(p);
    }
    Ok(PolynomialIdeal { field: k.clone(), object: z.clone(), vars, generators, normalization: id.len() })
}

impl PolynomialIdeal {
    pub fn var_count(&self) -> usize {
        self.vars.len()
    }

    /// Coordinates of a central object's half-braiding in the ideal's variables.
    pub fn assignment(&self, z: &CenterObject) -> Result<Vec<FieldElement>> {
        if z.object != self.object {
            return Err(FusionError::ShapeMismatch("central object has a different underlying object".into()));
        }
        let n = z.object.rank();
        Ok((0..n).flat_map(|l| z.gamma(l).to_vector()).collect())
    }

    pub fn verify_solution(&self, point: &[FieldElement]) -> Result<bool> {
        if point.len() != self.vars.len() {
            return Err(FusionError::ShapeMismatch(format!(
                "assignment has {} values for {} variables",
                point.len(),
                self.vars.len()
            )));
        }
        Ok(self.generators.iter().all(|g| g.eval(&self.field, point).is_zero()))
    }

    /// Indices of generators that do not vanish at `point`.
    pub fn violated(&self, point: &[FieldElement]) -> Vec<usize> {
        (0..self.generators.len()).filter(|&g| !self.generators[g].eval(&self.field, point).is_zero()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    /// `vars: x1..xm` header, then one generator per line.
    Plain,
    /// msolve input: variable line, characteristic line, comma-separated generators.
    Msolve,
}

pub fn export_ideal(ideal: &PolynomialIdeal, format: ExportFormat) -> Result<String> {
    let k = &ideal.field;
    let m = ideal.vars.len();
    let mut out = String::new();
    match format {
        ExportFormat::Plain => {
            if m == 0 {
                out.push_str("vars:\n");
            } else {
                let _ = writeln!(out, "vars: x1..x{}", m);
            }
            for g in &ideal.generators {
                out.push_str(&g.render(k));
                out.push('\n');
            }
        }
        ExportFormat::Msolve => {
            if !k.is_rationals() {
                return Err(FusionError::UnsupportedField(format!(
                    "solver input needs rational coefficients, got {}",
                    k.describe()
                )));
            }
            let names: Vec<String> = (1..=m).map(|v| format!("x{}", v)).collect();
            let _ = writeln!(out, "{}", names.join(","));
            out.push_str("0\n");
            let gens: Vec<String> = ideal
                .generators
                .iter()
                .map(|g| g.render_with(k, |r| render_rational(r).replace("//", "/")))
                .collect();
            out.push_str(&gens.join(",\n"));
            out.push('\n');
        }
    }
    Ok(out)
}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> FusionError {
    FusionError::Parse { line, col, msg: msg.into() }
}

/// Splits `s` at top-level occurrences of any of `seps`, keeping each
/// separator with the piece it starts.
fn split_top<'a>(s: &'a str, seps: &[char]) -> Vec<&'a str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ if depth == 0 && seps.contains(&c) && i > start => {
                out.push(&s[start..i]);
                start = i;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn col_of(text: &str, sub: &str) -> usize {
    sub.as_ptr() as usize - text.as_ptr() as usize + 1
}

fn parse_generator(k: &NumberField, text: &str, line: usize, nvars: usize) -> Result<MPoly> {
    let mut p = MPoly::default();
    for term in split_top(text, &['+', '-']) {
        let t = term.trim();
        let (neg, body) = match t.chars().next() {
            Some('-') => (true, t[1..].trim()),
            Some('+') => (false, t[1..].trim()),
            _ => (false, t),
        };
        if body.is_empty() {
            return Err(parse_err(line, col_of(text, term), "empty term"));
        }
        let mut coef = k.one();
        let mut mono: Monomial = Vec::new();
        for factor in split_top(body, &['*']) {
            let f = factor.trim_start_matches('*').trim();
            let col = col_of(text, f);
            if let Some(rest) = f.strip_prefix('x').filter(|r| r.starts_with(|c: char| c.is_ascii_digit())) {
                let (v, e) = match rest.split_once('^') {
                    Some((v, e)) => (v, e.parse::<u32>().map_err(|_| parse_err(line, col, "bad exponent"))?),
                    None => (rest, 1),
                };
                let v: usize = v.parse().map_err(|_| parse_err(line, col, "bad variable"))?;
                if v == 0 || v > nvars {
                    return Err(parse_err(line, col, format!("variable x{} out of range", v)));
                }
                mono = mono_mul(&mono, &vec![(v - 1, e)]);
            } else {
                let c = k.parse(f).map_err(|e| parse_err(line, col, e.to_string()))?;
                coef = k.mul(&coef, &c);
            }
        }
        if neg {
            coef = k.neg(&coef);
        }
        p.add_term(k, mono, &coef);
    }
    Ok(p)
}

/// Reads the plain format back: `(number of variables, generators)`.
pub fn parse_ideal(k: &NumberField, text: &str) -> Result<(usize, Vec<MPoly>)> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, 1, "missing vars header"))?;
    let rest = header
        .trim()
        .strip_prefix("vars:")
        .ok_or_else(|| parse_err(hl + 1, 1, "expected `vars:`"))?
        .trim();
    let nvars = if rest.is_empty() {
        0
    } else {
        rest.strip_prefix("x1..x")
            .and_then(|m| m.parse::<usize>().ok())
            .ok_or_else(|| parse_err(hl + 1, 7, "expected `x1..xm`"))?
    };
    let mut gens = Vec::new();
    for (ln, l) in lines {
        gens.push(parse_generator(k, l.trim(), ln + 1, nvars)?);
    }
    Ok((nvars, gens))
}

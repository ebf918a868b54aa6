//! Acceptance run: one PASS/FAIL line per criterion. Randomized steps are
//! retried with seeds 1..=5 and a criterion passes if any attempt verifies.

mod common;
mod suite;

use std::time::{Duration, Instant};

use common::*;
use exact_algebra::factor::factor;
use exact_algebra::field::rational_to_f64;
use exact_algebra::{absolutize_simplified, field_adjoin, EchelonBasis, FieldElement, Matrix, NumberField, Polynomial};
use fusion_center::center::*;
use fusion_center::ideal::halfbraiding_ideal;
use fusion_center::models::{haagerup_fusion_ring, FusionRing};
use fusion_center::splitting::{check_prop_5_1, extend_center, extend_center_object, split_all, SplitResult};
use fusion_center::{FusionData, Object};

const SEEDS: std::ops::RangeInclusive<u64> = 1..=5;
/// Tolerance for floating-point Frobenius-Perron identities.
const FP_TOL: f64 = 1e-9;

struct Report {
    pass: bool,
    lines: Vec<String>,
}

impl Report {
    fn new() -> Self {
        Report { pass: true, lines: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        self.lines.push(format!("{} {}", if ok { "ok  " } else { "FAIL" }, what));
        self.pass &= ok;
    }

    fn note(&mut self, what: impl Into<String>) {
        self.lines.push(format!("     {}", what.into()));
    }
}

/// Runs `f` with each seed until one attempt passes.
fn las_vegas(f: impl Fn(u64) -> Result<Report, String>) -> Report {
    let mut last = Report::new();
    for seed in SEEDS {
        match f(seed) {
            Ok(r) if r.pass => {
                let mut r = r;
                r.lines.insert(0, format!("     seed {}", seed));
                return r;
            }
            Ok(r) => last = r,
            Err(e) => {
                last = Report::new();
                last.check(false, format!("seed {}: {}", seed, e));
            }
        }
    }
    last.lines.insert(0, format!("     no seed in {:?} verified; last attempt:", SEEDS));
    last
}

fn opts(seed: u64) -> DecomposeOptions {
    DecomposeOptions { seed, ..Default::default() }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn multiset_eq(k: &NumberField, a: &[FieldElement], b: &[FieldElement]) -> bool {
    let mut rest: Vec<&FieldElement> = b.iter().collect();
    a.len() == b.len()
        && a.iter().all(|x| match rest.iter().position(|y| k.sub(x, y).is_zero()) {
            Some(p) => {
                rest.remove(p);
                true
            }
            None => false,
        })
}

// ---------------------------------------------------------------------------
// Ising printed data, simples ordered 𝟙, 𝟙̄, χ², 𝟙+χ, X⁴

fn ising_table() -> Vec<Vec<Vec<usize>>> {
    let v = |c: [usize; 5]| c.to_vec();
    let mut t = vec![vec![vec![0; 5]; 5]; 5];
    let entries: [(usize, usize, [usize; 5]); 15] = [
        (0, 0, [1, 0, 0, 0, 0]),
        (0, 1, [0, 1, 0, 0, 0]),
        (0, 2, [0, 0, 1, 0, 0]),
        (0, 3, [0, 0, 0, 1, 0]),
        (0, 4, [0, 0, 0, 0, 1]),
        (1, 1, [1, 0, 0, 0, 0]),
        (1, 2, [0, 0, 1, 0, 0]),
        (1, 3, [0, 0, 0, 1, 0]),
        (1, 4, [0, 0, 0, 0, 1]),
        (2, 2, [2, 2, 0, 0, 0]),
        (2, 3, [0, 0, 0, 2, 0]),
        (2, 4, [0, 0, 0, 0, 2]),
        (3, 3, [1, 1, 1, 0, 0]),
        (3, 4, [0, 0, 0, 0, 2]),
        (4, 4, [4, 4, 4, 8, 0]),
    ];
    for (i, j, c) in entries {
        t[i][j] = v(c);
        t[j][i] = v(c);
    }
    t
}

const ISING_S: [[&str; 5]; 5] = [
    ["1", "1", "2", "2", "4*a"],
    ["1", "1", "2", "2", "-4*a"],
    ["2", "2", "4", "-4", "0"],
    ["2", "2", "-4", "0", "0"],
    ["4*a", "-4*a", "0", "0", "0"],
];

struct IsingRun {
    center: Center,
    simples: CenterSimples,
}

fn ising_center(seed: u64) -> Result<IsingRun, String> {
    let center = Center::new(ising_sqrt2()).map_err(e)?;
    let simples = center_simples(&center, &opts(seed)).map_err(e)?;
    Ok(IsingRun { center, simples })
}

fn criterion_1() -> Report {
    las_vegas(|seed| {
        let t = Instant::now();
        let run = ising_center(seed)?;
        let c = &run.center;
        let k = c.field().clone();
        let zs = &run.simples.simples;
        let mut r = Report::new();
        r.check(zs.len() == 5, format!("{} simples (expected 5)", zs.len()));
        let mut distinct = true;
        for i in 0..zs.len() {
            for j in i + 1..zs.len() {
                distinct &= c.is_isomorphic(&zs[i], &zs[j]).map_err(e)?.is_none();
            }
        }
        r.check(distinct, "pairwise non-isomorphic");
        let dims: Vec<FieldElement> = zs.iter().map(|z| z.dim(&c.cat)).collect::<Result<_, _>>().map_err(e)?;
        let expected: Vec<FieldElement> =
            ["1", "1", "2", "2", "4*a"].iter().map(|s| k.parse(s)).collect::<Result<_, _>>().map_err(e)?;
        r.check(
            multiset_eq(&k, &dims, &expected),
            format!("dims {{{}}}", dims.iter().map(|d| k.render(d)).collect::<Vec<_>>().join(", ")),
        );
        let el = t.elapsed();
        r.check(el < Duration::from_secs(600), format!("runtime {:.2?} < 10 min", el));
        Ok(r)
    })
}

/// Permutations matching the computed Ising fusion table to the printed one.
fn ising_matchings(run: &IsingRun) -> Result<Vec<Vec<usize>>, String> {
    let mt = mult_table(&run.center, &run.simples.simples, &run.simples.end_dims).map_err(e)?;
    Ok(match_tables(&mt, &ising_table()))
}

fn criterion_2() -> Report {
    las_vegas(|seed| {
        let run = ising_center(seed)?;
        let mut r = Report::new();
        let perms = ising_matchings(&run)?;
        r.check(!perms.is_empty(), format!("{} permutation(s) match the printed table", perms.len()));
        if let Some(p) = perms.first() {
            r.note(format!("computed -> printed: {:?}", p));
            let mt = mult_table(&run.center, &run.simples.simples, &run.simples.end_dims).map_err(e)?;
            let x4 = p.iter().position(|&q| q == 4).unwrap();
            let mut printed = vec![0; 5];
            for (t, &m) in mt[x4][x4].iter().enumerate() {
                printed[p[t]] = m;
            }
            r.check(printed == vec![4, 4, 4, 8, 0], format!("X4 ⊗ X4 = {:?} in printed order", printed));
        }
        Ok(r)
    })
}

fn criterion_3() -> Report {
    las_vegas(|seed| {
        let run = ising_center(seed)?;
        let c = &run.center;
        let k = c.field().clone();
        let zs = &run.simples.simples;
        let s = smatrix(&c.cat, zs).map_err(e)?;
        let printed: Vec<Vec<FieldElement>> = ISING_S
            .iter()
            .map(|row| row.iter().map(|x| k.parse(x)).collect::<Result<_, _>>())
            .collect::<Result<_, _>>()
            .map_err(e)?;
        let mut r = Report::new();
        let perms = ising_matchings(&run)?;
        let hit = perms.iter().find(|p| (0..5).all(|i| (0..5).all(|j| k.sub(s.get(i, j), &printed[p[i]][p[j]]).is_zero())));
        r.check(hit.is_some(), format!("S equals the printed matrix under a table matching ({} candidate(s))", perms.len()));
        let unit = zs.iter().position(|z| *z == CenterObject::unit(&c.cat)).ok_or("unit not found")?;
        let dims_ok = (0..5).all(|j| k.sub(s.get(unit, j), &zs[j].dim(&c.cat).unwrap()).is_zero());
        r.check(dims_ok, "row of the unit equals the dimension vector");
        Ok(r)
    })
}

fn ising_split(seed: u64) -> Result<(IsingRun, SplitResult), String> {
    let run = ising_center(seed)?;
    let s = split_all(&run.center, &run.simples.simples, &opts(seed)).map_err(e)?;
    Ok((run, s))
}

fn criterion_4() -> Report {
    las_vegas(|seed| {
        let t = Instant::now();
        let (_, s) = ising_split(seed)?;
        let l = s.field().clone();
        let mut r = Report::new();
        let simples = s.simples();
        let scalar = simples.iter().all(|x| x.end_dim == 1 && x.multiplicity == 1);
        r.check(simples.len() == 9 && scalar, format!("{} split simples, all scalar: {}", simples.len(), scalar));
        r.note(format!("tower: {}", s.tower.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ; ")));
        let abs = absolutize_simplified(&l, "t").map_err(e)?;
        r.check(abs.field.degree() == 8, format!("absolute field {} of degree {}", abs.field.describe(), abs.field.degree()));
        let q = NumberField::rationals();
        let x8 = Polynomial::from_ints(&q, &[1, 0, 0, 0, 0, 0, 0, 0, 1]).embed(&abs.field).map_err(e)?;
        let f = factor(&x8).map_err(e)?;
        let root = f.factors.iter().any(|(p, _)| p.deg() == 1);
        r.check(root, "x^8 + 1 has a root in the absolute field");
        let mut sum = l.zero();
        for x in &simples {
            let d = x.object.dim(&s.center.cat).map_err(e)?;
            sum = l.add(&sum, &l.mul(&d, &d));
        }
        r.check(sum == l.from_int(16), format!("Σ dim² = {}", l.render(&sum)));
        let el = t.elapsed();
        r.check(el < Duration::from_secs(1200), format!("runtime {:.2?} < 20 min", el));
        Ok(r)
    })
}

/// Rows 7 and 8 with their off-diagonal 3-cycle entries moved to the diagonal.
fn diagonal_reading(row: &TableRow) -> TableRow {
    let mut columns = row.columns;
    for c in [3, 4] {
        let m = row.columns[c];
        let d: &'static [&'static [&'static str]] =
            Box::leak(vec![&*Box::leak(vec![m[0][1], "0"].into_boxed_slice()), &*Box::leak(vec!["0", m[1][0]].into_boxed_slice())].into_boxed_slice());
        columns[c] = d;
    }
    TableRow { summands: row.summands, columns }
}

fn criterion_5() -> Report {
    las_vegas(|seed| {
        let t = Instant::now();
        let k = xi3();
        let cat = s3(&k);
        let c = Center::new(cat.clone()).map_err(e)?;
        let res = center_simples(&c, &opts(seed)).map_err(e)?;
        let zs = &res.simples;
        let mut r = Report::new();
        r.check(zs.len() == 8, format!("{} simples (expected 8)", zs.len()));
        let unit = cat.unit_object();
        let transp = Object(vec![0, 0, 0, 1, 1, 1]);
        let cycles = Object(vec![0, 1, 1, 0, 0, 0]);
        let mut objs: Vec<Object> = zs.iter().map(|z| z.object.clone()).collect();
        let mut want = vec![unit.clone(), unit.clone(), unit.scale(2), transp.clone(), transp, cycles.clone(), cycles.clone(), cycles];
        objs.sort();
        want.sort();
        r.check(objs == want, "underlying objects match the figure's first column");
        let mut sum = k.zero();
        for z in zs {
            let d = z.dim(&cat).map_err(e)?;
            sum = k.add(&sum, &k.mul(&d, &d));
        }
        r.check(sum == k.from_int(36), format!("Σ dim² = {}", k.render(&sum)));

        let mut rows = Vec::new();
        for (i, row) in S3_TABLE.iter().enumerate() {
            match table_object(&cat, row) {
                Ok(o) => rows.push((i, o)),
                Err(msg) => r.note(format!("figure row {} rejected: {}", i + 1, msg)),
            }
        }
        let mut unmatched = Vec::new();
        for (t, z) in zs.iter().enumerate() {
            let mut hit = None;
            for (i, o) in &rows {
                if c.is_isomorphic(z, o).map_err(e)?.is_some() {
                    hit = Some(*i);
                    break;
                }
            }
            match hit {
                Some(i) => r.note(format!("computed #{} ≅ figure row {}", t + 1, i + 1)),
                None => unmatched.push(t),
            }
        }
        r.check(
            unmatched.is_empty(),
            format!("every computed simple is isomorphic to a figure row (unmatched: {:?})", unmatched.iter().map(|t| t + 1).collect::<Vec<_>>()),
        );
        if !unmatched.is_empty() {
            // diagnostic only, does not affect the verdict
            for i in [6, 7] {
                let fixed = diagonal_reading(&S3_TABLE[i]);
                match table_object(&cat, &fixed) {
                    Ok(o) => {
                        let m = zs.iter().position(|z| c.is_isomorphic(z, &o).unwrap().is_some());
                        r.note(format!("row {} read with diagonal 3-cycle columns: valid, ≅ computed #{}", i + 1, m.map_or(0, |m| m + 1)));
                    }
                    Err(msg) => r.note(format!("row {} read with diagonal 3-cycle columns: {}", i + 1, msg)),
                }
            }
        }
        let el = t.elapsed();
        r.check(el < Duration::from_secs(120), format!("runtime {:.2?} < 2 min", el));
        Ok(r)
    })
}

fn criterion_6() -> Report {
    las_vegas(|seed| {
        let q = NumberField::rationals();
        let cat = s3(&q);
        let z = Object(vec![0, 0, 0, 1, 1, 1]);
        let id = halfbraiding_ideal(&cat, &z).map_err(e)?;
        let mut r = Report::new();
        r.check(
            id.generators.len() == 78 && id.var_count() == 18,
            format!("{} generators in {} variables", id.generators.len(), id.var_count()),
        );
        let c = Center::new(cat.clone()).map_err(e)?;
        let res = center_simples(&c, &opts(seed)).map_err(e)?;
        let sols: Vec<&CenterObject> = res.simples.iter().filter(|s| s.object == z).collect();
        r.check(sols.len() == 2, format!("{} rational simples over Z", sols.len()));
        let ok = sols.iter().all(|s| id.verify_solution(&id.assignment(s).unwrap()).unwrap());
        r.check(ok, "both satisfy every generator");
        Ok(r)
    })
}

fn global_check(r: &mut Report, name: &str, c: &Center, simples: &[CenterObject], end_dims: &[usize]) -> Result<(), String> {
    let rep = verify_global(c, simples, end_dims).map_err(e)?;
    let fp_ok = (rep.fpdim_sum - rep.fpdim_expected).abs() <= FP_TOL * rep.fpdim_expected.max(1.0);
    r.check(
        rep.violations.is_empty() && fp_ok,
        format!("{}: Σ FPdim²/dim End = {:.12} vs {:.12}, violations {:?}", name, rep.fpdim_sum, rep.fpdim_expected, rep.violations),
    );
    Ok(())
}

fn criterion_7() -> Report {
    las_vegas(|seed| {
        let mut r = Report::new();
        let (run, s) = ising_split(seed)?;
        global_check(&mut r, "Ising over Q(√2)", &run.center, &run.simples.simples, &run.simples.end_dims)?;
        let split: Vec<CenterObject> = s.simples().iter().map(|x| x.object.clone()).collect();
        global_check(&mut r, "Ising over the splitting field", &s.center, &split, &vec![1; split.len()])?;
        for (name, cat) in [("Vec_S3 over Q", s3(&NumberField::rationals())), ("Vec_S3 over Q(ξ3)", s3(&xi3())), ("Vec_Q8 over Q", q8())] {
            let c = Center::new(cat).map_err(e)?;
            let res = center_simples(&c, &opts(seed)).map_err(e)?;
            global_check(&mut r, name, &c, &res.simples, &res.end_dims)?;
        }
        Ok(r)
    })
}

/// Signature `(positive, negative)` of a real symmetric matrix, from the
/// signs of its characteristic polynomial (Descartes' rule is exact when
/// every root is real).
fn signature(m: &Matrix) -> Result<(usize, usize), String> {
    let p = m.charpoly().map_err(e)?;
    let k = &p.field;
    let coeffs: Vec<f64> = (0..=p.deg() as usize)
        .map(|i| rational_to_f64(&k.coefficients(&p.coeff(i))[0].as_rational().unwrap()))
        .collect();
    let changes = |c: &[f64]| {
        let s: Vec<f64> = c.iter().copied().filter(|x| *x != 0.0).collect();
        s.windows(2).filter(|w| w[0].signum() != w[1].signum()).count()
    };
    let neg: Vec<f64> = coeffs.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { *c }).collect();
    Ok((changes(&coeffs), changes(&neg)))
}

/// `End(Z) ⊗ R ≅ H` iff the trace form `tr(L_x L_y)` has signature (1, 3);
/// then `End(Z)` has no zero divisors.
fn is_definite_quaternion(c: &Center, z: &CenterObject) -> Result<bool, String> {
    let basis = c.hom(z, z).map_err(e)?;
    let k = c.field().clone();
    let n = basis.len();
    if n != 4 {
        return Ok(false);
    }
    let mut eb = EchelonBasis::new(&k, basis[0].to_vector().len());
    for b in &basis {
        eb.insert(b.to_vector());
    }
    let left: Vec<Matrix> = basis
        .iter()
        .map(|x| {
            let cols: Vec<Vec<FieldElement>> =
                basis.iter().map(|y| eb.coordinates(&x.compose(y).unwrap().to_vector()).unwrap()).collect();
            Matrix::from_columns(&k, n, &cols)
        })
        .collect();
    let mut g = Matrix::zeros(&k, n, n);
    for i in 0..n {
        for j in 0..n {
            g.set(i, j, left[i].mul(&left[j]).map_err(e)?.trace());
        }
    }
    Ok(signature(&g)? == (1, 3))
}

fn criterion_8() -> Report {
    las_vegas(|seed| {
        let t = Instant::now();
        let cat = q8();
        let c = Center::new(cat.clone()).map_err(e)?;
        let res = center_simples(&c, &opts(seed)).map_err(e)?;
        let mut r = Report::new();
        let four_e = cat.unit_object().scale(4);
        let z = res
            .simples
            .iter()
            .zip(&res.end_dims)
            .find(|(s, &d)| s.object == four_e && d == 4)
            .map(|(s, _)| s.clone())
            .ok_or("no simple over 4·δ_e with 4-dimensional End")?;
        r.check(true, "simple over 4·δ_e with dim End = 4");
        r.check(is_definite_quaternion(&c, &z)?, "End is a definite quaternion algebra, hence a division algebra");
        let q = NumberField::rationals();
        let (_, emb) = field_adjoin(&q, &Polynomial::from_ints(&q, &[1, 0, 1]), "i", None).map_err(e)?;
        let ci = extend_center(&c, &emb).map_err(e)?;
        let zi = extend_center_object(&z, &emb).map_err(e)?;
        let d = decompose(&ci, &zi, &opts(seed)).map_err(e)?;
        let shape: Vec<(usize, usize)> = d.summands.iter().map(|s| (s.multiplicity, s.end_dim)).collect();
        r.check(shape == vec![(2, 1)], format!("over Q(i): (multiplicity, dim End) = {:?}", shape));
        let (_, chk) = check_prop_5_1(&c, &z, &opts(seed)).map_err(e)?;
        r.check(chk.holds, format!("equal multiplicities {:?} and FPdims {:?}", chk.multiplicities, chk.fpdims));
        let el = t.elapsed();
        r.check(el < Duration::from_secs(900), format!("runtime {:.2?} < 15 min", el));
        Ok(r)
    })
}

fn criterion_9() -> Report {
    let mut r = Report::new();
    for (name, p) in suite::PROPERTIES {
        match suite::check(p) {
            Ok(n) => r.check(true, format!("{}: {} cases over {} categories", name, n, suite::MODELS.len())),
            Err(msg) => r.check(false, format!("{}: {}", name, msg)),
        }
    }
    r
}

/// Figure 1 as printed: row `a`, column `b` lists `a ⊗ b`.
/// Order 𝟙, α, α*, ρ, αρ, α*ρ.
const HAAGERUP_FIGURE: [[&[usize]; 6]; 6] = [
    [&[0], &[1], &[2], &[3], &[4], &[5]],
    [&[1], &[2], &[0], &[4], &[5], &[3]],
    [&[2], &[0], &[1], &[5], &[3], &[4]],
    [&[3], &[5], &[4], &[0, 3, 4, 5], &[1, 3, 4, 5], &[2, 3, 4, 5]],
    [&[4], &[5], &[3], &[1, 3, 4, 5], &[0, 3, 4, 5], &[2, 3, 4, 5]],
    [&[5], &[3], &[4], &[2, 3, 4, 5], &[1, 3, 4, 5], &[0, 3, 4, 5]],
];

fn figure_ring() -> FusionRing {
    let mut fusion = vec![vec![vec![0; 6]; 6]; 6];
    for a in 0..6 {
        for b in 0..6 {
            for &c in HAAGERUP_FIGURE[a][b] {
                fusion[a][b][c] += 1;
            }
        }
    }
    FusionRing { names: haagerup_fusion_ring().names, fusion, unit: 0 }
}

fn failing_triples(r: &FusionRing) -> usize {
    let n = r.rank();
    let mut bad = 0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (x, y, z) = (r.simple(i), r.simple(j), r.simple(k));
                if r.tensor(&r.tensor(&x, &y), &z) != r.tensor(&x, &r.tensor(&y, &z)) {
                    bad += 1;
                }
            }
        }
    }
    bad
}

fn criterion_10() -> Report {
    let mut r = Report::new();
    r.note("disclosure: the center of the Haagerup category (12 simples) is not reproduced; its 6j data is not part of this work");
    let builtin = haagerup_fusion_ring();
    r.check(builtin.is_associative(), "built-in Haagerup fusion ring is associative");
    r.check(builtin.duals().is_some(), "built-in Haagerup fusion ring has duals");
    let fig = figure_ring();
    let bad = failing_triples(&fig);
    r.check(fig.is_associative(), format!("printed table is associative ({} of 216 simple triples fail)", bad));
    let diff: Vec<String> = (0..6)
        .flat_map(|a| (0..6).map(move |b| (a, b)))
        .filter(|&(a, b)| fig.fusion[a][b] != builtin.fusion[a][b])
        .map(|(a, b)| format!("{}⊗{}", builtin.names[a], builtin.names[b]))
        .collect();
    r.note(format!("entries where the printed table differs from the built-in ring: {}", diff.join(", ")));
    r
}

fn main() {
    let criteria: [(&str, fn() -> Report); 10] = [
        ("Ising center over Q(√2): five simples, dims 1, 1, 2, 2, 4√2", criterion_1),
        ("Ising multiplication table", criterion_2),
        ("Ising S-matrix", criterion_3),
        ("Ising splitting over Q(ξ16)", criterion_4),
        ("Vec_S3 center over Q(ξ3) against the printed table", criterion_5),
        ("Half-braiding ideal for (23)+(12)+(13)", criterion_6),
        ("Dimension identities", criterion_7),
        ("Quaternion non-split example", criterion_8),
        ("Property suites", criterion_9),
        ("Haagerup scope and fusion ring", criterion_10),
    ];
    let mut failed = Vec::new();
    for (n, (title, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        println!("[{}] criterion {:>2}: {} ({:.2?})", if r.pass { "PASS" } else { "FAIL" }, n + 1, title, t.elapsed());
        for l in &r.lines {
            println!("        {}", l);
        }
        if !r.pass {
            failed.push(n + 1);
        }
    }
    println!();
    if failed.is_empty() {
        println!("acceptance: all 10 criteria pass");
    } else {
        println!("acceptance: {} of 10 criteria pass; failing: {:?}", 10 - failed.len(), failed);
        std::process::exit(1);
    }
}

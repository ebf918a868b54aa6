//! Randomized invariants shared by the property tests and the acceptance run.

use std::sync::LazyLock;

use crate::common::*;
use exact_algebra::{FieldElement, Matrix, NumberField};
use fusion_center::center::*;
use fusion_center::models::{ising, vec_g, CayleyTable};
use fusion_center::morphism::hom_basis;
use fusion_center::{FusionData, Morphism, Object};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub const CASES: u32 = 10;

pub struct Model {
    pub name: &'static str,
    pub center: Center,
    pub simples: Vec<CenterObject>,
}

impl Model {
    pub fn cat(&self) -> &FusionData {
        &self.center.cat
    }
}

pub static MODELS: LazyLock<Vec<Model>> = LazyLock::new(|| {
    let (k, a) = sqrt2();
    let q = NumberField::rationals();
    let cats: Vec<(&'static str, FusionData)> = vec![
        ("ising", ising(&k, &a).unwrap()),
        ("ising-", ising(&k, &k.neg(&a)).unwrap()),
        ("s3/Q", s3(&q)),
        ("s3/Q(xi3)", s3(&xi3())),
        ("q8", q8()),
        ("c4", vec_g(&CayleyTable::cyclic(4).unwrap(), &q).unwrap()),
    ];
    cats.into_iter()
        .map(|(name, cat)| {
            let center = Center::new(cat).unwrap();
            let simples = center_simples(&center, &DecomposeOptions::default()).unwrap().simples;
            Model { name, center, simples }
        })
        .collect()
});

/// Draws small choices from a fixed random tape.
#[derive(Clone, Debug)]
pub struct Tape {
    picks: Vec<u8>,
    coeffs: Vec<i64>,
    p: usize,
    c: usize,
}

impl Tape {
    fn pick(&mut self, n: usize) -> usize {
        let v = self.picks[self.p % self.picks.len()] as usize % n;
        self.p += 1;
        v
    }

    fn coeff(&mut self, k: &NumberField) -> FieldElement {
        let v = self.coeffs[self.c % self.coeffs.len()];
        self.c += 1;
        k.from_int(v)
    }

    /// An object with total multiplicity between 1 and `max`.
    fn object(&mut self, rank: usize, max: usize) -> Object {
        let mut o = Object::zero(rank);
        for _ in 0..1 + self.pick(max) {
            o.0[self.pick(rank)] += 1;
        }
        o
    }

    fn morphism(&mut self, k: &NumberField, x: &Object, y: &Object) -> Morphism {
        let mut f = Morphism::zero(k, x, y);
        for b in hom_basis(k, x, y) {
            f = f.add(&b.scale(&self.coeff(k))).unwrap();
        }
        f
    }

    /// Unitriangular, hence invertible, automorphism of `x`.
    fn automorphism(&mut self, k: &NumberField, x: &Object) -> Morphism {
        let blocks = x
            .0
            .iter()
            .map(|&m| {
                let mut b = Matrix::identity(k, m);
                for r in 0..m {
                    for c in r + 1..m {
                        b.set(r, c, self.coeff(k));
                    }
                }
                if m > 1 {
                    let l = self.coeff(k);
                    let lower = Matrix::identity(k, m).add(&{
                        let mut e = Matrix::zeros(k, m, m);
                        e.set(m - 1, 0, l);
                        e
                    });
                    b = lower.unwrap().mul(&b).unwrap();
                }
                b
            })
            .collect();
        Morphism::new(x.clone(), x.clone(), blocks).unwrap()
    }
}

fn tape() -> impl Strategy<Value = Tape> {
    (prop::collection::vec(any::<u8>(), 64), prop::collection::vec(-3i64..=3, 64))
        .prop_map(|(picks, coeffs)| Tape { picks, coeffs, p: 0, c: 0 })
}

pub type Property = fn(&Model, &mut Tape) -> Result<(), TestCaseError>;

pub const PROPERTIES: [(&str, Property); 7] = [
    ("pentagon on random objects", pentagon),
    ("snakes", snakes),
    ("hexagon on sums and tensors", hexagon),
    ("adjunction round trips", adjunction),
    ("E^2 = E", averaging),
    ("three-way Hom agreement", hom_methods),
    ("decompose reassembly", reassembly),
];

/// Runs `CASES` random instances on every model; returns the number of cases run.
pub fn check(p: Property) -> Result<usize, String> {
    let mut total = 0;
    for m in MODELS.iter() {
        let mut runner = TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() });
        runner.run(&tape(), |mut t| p(m, &mut t)).map_err(|e| format!("{}: {}", m.name, e))?;
        total += CASES as usize;
    }
    Ok(total)
}

fn pentagon(m: &Model, t: &mut Tape) -> Result<(), TestCaseError> {
    let n = m.cat().rank();
    let os: Vec<Object> = (0..4).map(|_| t.object(n, 2)).collect();
    let (l, r) = m.cat().pentagon_routes_objects(&os[0], &os[1], &os[2], &os[3]).unwrap();
    prop_assert_eq!(l, r);
    Ok(())
}

fn snakes(m: &Model, t: &mut Tape) -> Result<(), TestCaseError> {
    let i = t.pick(m.cat().rank());
    let (a, b) = m.cat().snakes(i).unwrap();
    prop_assert!(a.is_identity() && b.is_identity());
    Ok(())
}

fn random_central(m: &Model, t: &mut Tape) -> CenterObject {
    let cat = m.cat();
    let a = m.simples[t.pick(m.simples.len())].clone();
    let b = m.simples[t.pick(m.simples.len())].clone();
    if t.pick(2) == 0 {
        direct_sum_center(cat, &[a, b]).unwrap().0
    } else {
        tensor_center(cat, &a, &b).unwrap()
    }
}

fn hexagon(m: &Model, t: &mut Tape) -> Result<(), TestCaseError> {
    let z = random_central(m, t);
    prop_assert_eq!(check_half_braiding(m.cat(), &z.object, &z.braiding.components).unwrap(), None);
    Ok(())
}

fn adjunction(m: &Model, t: &mut Tape) -> Result<(), TestCaseError> {
    let c = &m.center;
    let k = c.field();
    let ind = &c.induced[t.pick(c.induced.len())];
    let y = &m.simples[t.pick(m.simples.len())];
    let f = t.morphism(k, &ind.v, &y.object);
    let g = c.adjoint_left(ind, y, &f).unwrap();
    prop_assert!(is_central(m.cat(), &ind.center, y, &g).unwrap());
    prop_assert_eq!(c.adjoint_left_inv(ind, &g).unwrap(), f);
    let f = t.morphism(k, &y.object, &ind.v);
    let g = c.adjoint_right(ind, y, &f).unwrap();
    prop_assert!(is_central(m.cat(), y, &ind.center, &g).unwrap());
    prop_assert_eq!(c.adjoint_right_inv(ind, &g).unwrap(), f);
    Ok(())
}

fn averaging(m: &Model, t: &mut Tape) -> Result<(), TestCaseError> {
    let k = m.center.field();
    let x = &m.simples[t.pick(m.simples.len())];
    let y = &m.simples[t.pick(m.simples.len())];
    let f = t.morphism(k, &x.object, &y.object);
    let e = projection_e(m.cat(), x, y, &f).unwrap();
    prop_assert!(is_central(m.cat(), x, y, &e).unwrap());
    prop_assert_eq!(projection_e(m.cat(), x, y, &e).unwrap(), e);
    Ok(())
}

fn hom_methods(m: &Model, t: &mut Tape) -> Result<(), TestCaseError> {
    let x = random_central(m, t);
    let y = if t.pick(2) == 0 { random_central(m, t) } else { m.simples[t.pick(m.simples.len())].clone() };
    let dims: Vec<usize> = [HomMethod::Induction, HomMethod::Direct, HomMethod::Projection]
        .iter()
        .map(|&h| m.center.hom_with(&x, &y, h).unwrap().len())
        .collect();
    prop_assert!(dims.iter().all(|&d| d == dims[0]), "{:?}", dims);
    Ok(())
}

fn reassembly(m: &Model, t: &mut Tape) -> Result<(), TestCaseError> {
    let cat = m.cat();
    let c = &m.center;
    let parts: Vec<usize> = (0..2 + t.pick(2)).map(|_| t.pick(m.simples.len())).collect();
    let objs: Vec<CenterObject> = parts.iter().map(|&p| m.simples[p].clone()).collect();
    let (sum, _, _) = direct_sum_center(cat, &objs).unwrap();
    let p = t.automorphism(c.field(), &sum.object);
    let pinv = p.inverse().unwrap();
    let comps = (0..cat.rank())
        .map(|i| {
            let xi = cat.simple(i);
            cat.id_tensor(&xi, &p).unwrap().compose(sum.gamma(i)).unwrap().compose(&cat.tensor_id(&pinv, &xi).unwrap()).unwrap()
        })
        .collect();
    let z = CenterObject::new(cat, sum.object.clone(), comps).unwrap();
    let d = decompose(c, &z, &DecomposeOptions { seed: t.pick(1000) as u64, ..Default::default() }).unwrap();
    let mut total = Object::zero(cat.rank());
    for s in &d.summands {
        total = total.add(&s.object.object.scale(s.multiplicity));
        let src = m.simples.iter().position(|x| c.is_isomorphic(x, &s.object).unwrap().is_some());
        prop_assert!(src.is_some());
        let count = parts.iter().filter(|&&q| q == src.unwrap()).count();
        prop_assert_eq!(count, s.multiplicity);
    }
    prop_assert_eq!(total, sum.object);
    Ok(())
}

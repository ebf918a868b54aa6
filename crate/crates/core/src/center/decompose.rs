//! Las Vegas decomposition of central objects by splitting their endomorphism algebras.

use exact_algebra::factor::factor;
use exact_algebra::{rat, Matrix, Polynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::hom::independent;
use super::{fpdim_object, fpdims, restrict_half_braiding, Center, CenterObject, Induced};
use crate::error::{FusionError, Result};
use crate::morphism::{hom_dim, image, kernel, split_idempotent, Morphism, Object};

#[derive(Clone, Debug)]
pub struct DecomposeOptions {
    pub seed: u64,
    /// Random elements tried per summand after the deterministic candidates.
    pub budget: usize,
    pub jobs: usize,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions { seed: 1, budget: 40, jobs: 1 }
    }
}

/// A simple summand with its multiplicity and endomorphism dimension.
/// `certified` is false when simplicity rests on an exhausted budget.
#[derive(Clone, Debug)]
pub struct Summand {
    pub object: CenterObject,
    pub multiplicity: usize,
    pub end_dim: usize,
    pub certified: bool,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
}

struct Piece {
    object: CenterObject,
    end: Vec<Morphism>,
}

/// `p(a)` for an endomorphism `a`.
pub(crate) fn poly_at(p: &Polynomial, a: &Morphism) -> Result<Morphism> {
    let k = a.field().clone();
    let mut acc = Morphism::zero(&k, &a.domain, &a.codomain);
    for c in p.coeffs.iter().rev() {
        acc = acc.compose(a)?.add(&Morphism::scalar(&k, &a.domain, c))?;
    }
    Ok(acc)
}

/// A retraction `q` with `q ∘ ι = id` for a monomorphism `ι`.
pub(crate) fn left_inverse(iota: &Morphism) -> Result<Morphism> {
    let k = iota.field().clone();
    let mut blocks = Vec::with_capacity(iota.blocks.len());
    for b in &iota.blocks {
        let (_, pivots) = b.transpose().rref();
        if pivots.len() != b.cols {
            return Err(FusionError::ShapeMismatch("not a monomorphism".into()));
        }
        let square = b.select_rows(&pivots).inverse()?;
        let mut q = Matrix::zeros(&k, b.cols, b.rows);
        for (t, &r) in pivots.iter().enumerate() {
            for c in 0..b.cols {
                q.set(c, r, square.get(c, t).clone());
            }
        }
        blocks.push(q);
    }
    Morphism::new(iota.codomain.clone(), iota.domain.clone(), blocks)
}

/// Candidate elements: the basis, then sums and differences of pairs, then
/// random combinations with growing coefficient height.
struct Sampler {
    rng: ChaCha8Rng,
    step: usize,
}

impl Sampler {
    fn next(&mut self, basis: &[Morphism]) -> Result<Morphism> {
        let n = basis.len();
        let t = self.step;
        self.step += 1;
        if t < n {
            return Ok(basis[t].clone());
        }
        let pairs = if n <= 16 { n * (n - 1) } else { 0 };
        if t < n + pairs {
            let s = t - n;
            let (idx, sign) = (s / 2, s % 2);
            let (mut i, mut j) = (0, idx);
            while j >= n - 1 - i {
                j -= n - 1 - i;
                i += 1;
            }
            let j = i + 1 + j;
            return Ok(if sign == 0 { basis[i].add(&basis[j])? } else { basis[i].sub(&basis[j])? });
        }
        let k = basis[0].field().clone();
        let h = 7 + 2 * ((t - n - pairs) / 10) as i64;
        let mut acc = Morphism::zero(&k, &basis[0].domain, &basis[0].codomain);
        for b in basis {
            let num = self.rng.gen_range(-h..=h);
            let den = self.rng.gen_range(1..=h);
            acc = acc.add(&b.scale(&k.from_rational(rat(num, den))))?;
        }
        Ok(acc)
    }
}

enum Step {
    Split(Vec<Piece>),
    Simple(bool),
}

impl Center {
    fn sub_piece(&self, z: &Piece, iota: &Morphism, p: &Morphism, from_idempotent: bool) -> Result<Piece> {
        let k = self.field();
        let gamma = restrict_half_braiding(&self.cat, &z.object.braiding, iota, p)?;
        let object = CenterObject::from_braiding(gamma);
        let end = if from_idempotent {
            let images = z
                .end
                .iter()
                .map(|b| p.compose(b)?.compose(iota))
                .collect::<Result<Vec<_>>>()?;
            independent(k, images)
        } else {
            self.hom(&object, &object)?
        };
        Ok(Piece { object, end })
    }

    fn split_step(&self, piece: &Piece, sampler: &mut Sampler, budget: usize) -> Result<Step> {
        let basis = &piece.end;
        let d = basis.len();
        if d == 1 {
            return Ok(Step::Simple(true));
        }
        let deterministic = d + if d <= 16 { d * (d - 1) } else { 0 };
        sampler.step = 0;
        for _ in 0..deterministic + budget {
            let a = sampler.next(basis)?;
            if a.is_zero() {
                continue;
            }
            let m = a.block_diagonal().minpoly()?;
            let fac = factor(&m)?;
            if fac.factors.len() >= 2 {
                // coprime split m = f·g, e = u(a) f(a) with u f + v g = 1
                let (g1, e1) = &fac.factors[0];
                let f = g1.pow(*e1 as u32);
                let g = m.div_exact(&f)?;
                let (_, u, _) = f.xgcd(&g);
                let e = poly_at(&u.mul(&f), &a)?;
                let one_minus = Morphism::identity(self.field(), &a.domain).sub(&e)?;
                let mut pieces = Vec::new();
                for idem in [e, one_minus] {
                    let (_, iota, p) = split_idempotent(&idem)?;
                    pieces.push(self.sub_piece(piece, &iota, &p, true)?);
                }
                return Ok(Step::Split(pieces));
            }
            let (g1, e1) = &fac.factors[0];
            if *e1 > 1 {
                // g1(a) is a nonzero nilpotent: split along its kernel and image
                let x = poly_at(g1, &a)?;
                let mut pieces = Vec::new();
                for (_, iota) in [kernel(&x), image(&x)] {
                    let q = left_inverse(&iota)?;
                    pieces.push(self.sub_piece(piece, &iota, &q, false)?);
                }
                return Ok(Step::Split(pieces));
            }
            if g1.deg() as usize == d {
                return Ok(Step::Simple(true));
            }
        }
        Ok(Step::Simple(false))
    }

    fn decompose_inner(
        &self,
        z: &CenterObject,
        end: Vec<Morphism>,
        mult: &dyn Fn(&CenterObject) -> Result<usize>,
        opts: &DecomposeOptions,
    ) -> Result<Decomposition> {
        let mut sampler = Sampler { rng: ChaCha8Rng::seed_from_u64(opts.seed), step: 0 };
        let mut todo = vec![Piece { object: z.clone(), end }];
        let mut found: Vec<(Piece, bool)> = Vec::new();
        while let Some(piece) = todo.pop() {
            if piece.object.object.is_zero() {
                continue;
            }
            match self.split_step(&piece, &mut sampler, opts.budget)? {
                Step::Split(parts) => todo.extend(parts),
                Step::Simple(cert) => found.push((piece, cert)),
            }
        }
        let mut summands: Vec<Summand> = Vec::new();
        for (piece, cert) in found {
            let mut dup = false;
            for s in summands.iter_mut() {
                if self.is_isomorphic(&s.object, &piece.object)?.is_some() {
                    s.certified &= cert;
                    dup = true;
                    break;
                }
            }
            if dup {
                continue;
            }
            let end_dim = piece.end.len();
            let h = mult(&piece.object)?;
            if h % end_dim != 0 {
                return Err(FusionError::Inconclusive(format!(
                    "Hom dimension {} is not a multiple of End dimension {}",
                    h, end_dim
                )));
            }
            summands.push(Summand { object: piece.object, multiplicity: h / end_dim, end_dim, certified: cert });
        }
        let mut total = Object::zero(self.cat.rank());
        for s in &summands {
            total = total.add(&s.object.object.scale(s.multiplicity));
        }
        if total != z.object {
            return Err(FusionError::Inconclusive(format!(
                "summands reassemble to {} instead of {}",
                total, z.object
            )));
        }
        Ok(Decomposition { summands })
    }

    /// Decomposes an induced object; `End(I(V))` and `Hom(S, I(V))` come from the adjunctions.
    pub fn decompose_induced(&self, ind: &Induced, opts: &DecomposeOptions) -> Result<Decomposition> {
        let end = self.induced_endomorphisms(ind)?;
        let v = ind.v.clone();
        self.decompose_inner(&ind.center, end, &|s: &CenterObject| Ok(hom_dim(&s.object, &v)), opts)
    }
}

/// Simple summands of `z` with multiplicities.
pub fn decompose(center: &Center, z: &CenterObject, opts: &DecomposeOptions) -> Result<Decomposition> {
    let end = center.hom(z, z)?;
    center.decompose_inner(z, end, &|s: &CenterObject| Ok(center.hom(s, z)?.len()), opts)
}

/// Simple objects of the center in canonical order.
#[derive(Clone, Debug)]
pub struct CenterSimples {
    pub simples: Vec<CenterObject>,
    pub end_dims: Vec<usize>,
    pub certified: Vec<bool>,
}

/// Inducts every generator, decomposes, and admits a summand only if it
/// contains none of the previously processed generators.
pub fn center_simples(center: &Center, opts: &DecomposeOptions) -> Result<CenterSimples> {
    let run = |t: usize| {
        let o = DecomposeOptions { seed: opts.seed.wrapping_add(t as u64 * 0x9e37_79b9), ..opts.clone() };
        center.decompose_induced(&center.induced[t], &o)
    };
    let idx: Vec<usize> = (0..center.generators.len()).collect();
    let parts: Vec<Decomposition> = if opts.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| FusionError::InvalidData(e.to_string()))?;
        pool.install(|| idx.par_iter().map(|&t| run(t)).collect::<Result<_>>())?
    } else {
        idx.iter().map(|&t| run(t)).collect::<Result<_>>()?
    };
    let mut out: Vec<Summand> = Vec::new();
    for (t, dec) in parts.into_iter().enumerate() {
        for s in dec.summands {
            if center.generators[..t].iter().all(|&u| s.object.object.0[u] == 0) {
                out.push(s);
            }
        }
    }
    let fp = fpdims(&center.cat)?;
    let k = center.field();
    let key = |s: &Summand| {
        let unit_first = !(s.object.object == center.cat.unit_object()
            && s.object.braiding.components.iter().all(|c| c.is_identity()));
        let rendered: Vec<String> = s
            .object
            .braiding
            .components
            .iter()
            .flat_map(|c| c.to_vector())
            .map(|x| k.render(&x))
            .collect();
        (unit_first, s.object.object.total(), fpdim_object(&fp, &s.object.object), s.object.object.0.clone(), rendered)
    };
    let mut keyed: Vec<_> = out.into_iter().map(|s| (key(&s), s)).collect();
    keyed.sort_by(|a, b| {
        let (ka, kb) = (&a.0, &b.0);
        ka.0.cmp(&kb.0)
            .then(ka.1.cmp(&kb.1))
            .then(ka.2.total_cmp(&kb.2))
            .then(ka.3.cmp(&kb.3))
            .then(ka.4.cmp(&kb.4))
    });
    let mut res = CenterSimples { simples: Vec::new(), end_dims: Vec::new(), certified: Vec::new() };
    for (_, s) in keyed {
        res.simples.push(s.object);
        res.end_dims.push(s.end_dim);
        res.certified.push(s.certified);
    }
    Ok(res)
}

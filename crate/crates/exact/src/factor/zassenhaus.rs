//! Factorization of squarefree integer polynomials: modular factorization,
//! quadratic Hensel lifting and subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{Fp, PolyP};

pub type ZPoly = Vec<BigInt>;

fn trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

pub fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive(a: &[BigInt]) -> ZPoly {
    let c = content(a);
    if c.is_zero() {
        return Vec::new();
    }
    let c = if a.last().unwrap().is_negative() { -c } else { c };
    a.iter().map(|x| x / &c).collect()
}

fn modp(a: &[BigInt], p: u64) -> PolyP {
    let pb = BigInt::from(p);
    let v: PolyP = a
        .iter()
        .map(|c| {
            let r = c.mod_floor(&pb);
            let (_, d) = r.to_u64_digits();
            d.first().copied().unwrap_or(0)
        })
        .collect();
    Fp::new(p).trim(v)
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn zreduce(a: &[BigInt], m: &BigInt) -> ZPoly {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zsymmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m >> 1;
    trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half { r - m } else { r }
            })
            .collect(),
    )
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()).collect())
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default()).collect())
}

/// Division by a monic polynomial modulo `m`.
fn zdivrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let mut r = zreduce(a, m);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() >= b.len() {
        let top = r.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = r.len() - db;
        for (i, bi) in b[..db].iter().enumerate() {
            r[shift + i] = (&r[shift + i] - &top * bi).mod_floor(m);
        }
        q[shift] = top;
    }
    (trim(q), trim(r))
}

/// Exact division over `Z`; `None` if `b` does not divide `a`.
pub fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lc = b.last().unwrap();
    if r.len() < b.len() {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() >= b.len() {
        let top = r.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        let shift = r.len() - db;
        for (i, bi) in b[..db].iter().enumerate() {
            r[shift + i] -= &c * bi;
        }
        q[shift] = c;
    }
    if trim(r).is_empty() { Some(trim(q)) } else { None }
}

fn lift_to_z(a: &[u64]) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// One quadratic Hensel step: from `f = g h mod m`, `s g + t h = 1 mod m`
/// to the same identities modulo `m^2`. `h` is monic.
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = zreduce(&zsub(f, &zmul(g, h)), &m2);
    let (q, r) = zdivrem_monic(&zmul(s, &e), h, &m2);
    let g1 = zreduce(&zadd(&zadd(g, &zmul(t, &e)), &zmul(&q, g)), &m2);
    let h1 = zreduce(&zadd(h, &r), &m2);
    let b = zreduce(&zsub(&zadd(&zmul(s, &g1), &zmul(t, &h1)), &[BigInt::one()]), &m2);
    let (c, d) = zdivrem_monic(&zmul(s, &b), &h1, &m2);
    let s1 = zreduce(&zsub(s, &d), &m2);
    let t1 = zreduce(&zsub(&zsub(t, &zmul(t, &b)), &zmul(&c, &g1)), &m2);
    (g1, h1, s1, t1)
}

/// Lifts `f = lc * prod(u_i) mod p` to a factorization modulo a power of `p`
/// at least `bound`. Returns monic lifted factors and the final modulus.
fn hensel_lift(f: &[BigInt], factors: &[PolyP], p: u64, bound: &BigInt) -> (Vec<ZPoly>, BigInt) {
    let fp = Fp::new(p);
    let pb = BigInt::from(p);
    let mut steps = 0;
    let mut m = pb.clone();
    while &m < bound {
        m = &m * &m;
        steps += 1;
    }
    let modulus = m;
    let mut out = Vec::new();
    let mut cur = f.to_vec();
    let mut remaining: Vec<PolyP> = factors.to_vec();
    while remaining.len() > 1 {
        let u = remaining.remove(0);
        let lc = modp(&[cur.last().unwrap().clone()], p).first().copied().unwrap_or(0);
        let rest = remaining.iter().fold(vec![lc], |acc, v| fp.mul(&acc, v));
        let (_, s, t) = fp.xgcd(&rest, &u);
        let mut g = lift_to_z(&rest);
        let mut h = lift_to_z(&u);
        let mut s = lift_to_z(&s);
        let mut t = lift_to_z(&t);
        let mut m = pb.clone();
        for _ in 0..steps {
            let r = hensel_step(&cur, &g, &h, &s, &t, &m);
            g = r.0;
            h = r.1;
            s = r.2;
            t = r.3;
            m = &m * &m;
        }
        out.push(h);
        cur = g;
    }
    // the last factor is lc * u_r mod modulus; make it monic
    let lc = cur.last().unwrap().clone();
    let inv = mod_inverse(&lc, &modulus);
    out.push(zreduce(&cur.iter().map(|c| c * &inv).collect::<Vec<_>>(), &modulus));
    (out, modulus)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    e.x.mod_floor(m)
}

fn norm2_ceil(a: &[BigInt]) -> BigInt {
    let s: BigInt = a.iter().map(|c| c * c).sum();
    s.sqrt() + 1
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Irreducible factors over `Z` of a squarefree primitive polynomial with
/// positive leading coefficient, each primitive with positive leading coefficient.
pub fn factor_squarefree_z(f: &[BigInt]) -> Vec<ZPoly> {
    let f = primitive(f);
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f];
    }
    if f[0].is_zero() {
        let rest: ZPoly = f[1..].to_vec();
        let mut out = vec![vec![BigInt::zero(), BigInt::one()]];
        out.extend(factor_squarefree_z(&rest));
        return out;
    }
    let lc = f.last().unwrap().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    // try several good primes and keep the one with the fewest modular factors
    let mut best: Option<(u64, Vec<PolyP>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = Fp::new(p);
        let fm = modp(&f, p);
        if fm.len() != f.len() || !fp.is_squarefree(&fm) {
            continue;
        }
        let ddf = fp.distinct_degree(&fp.monic(&fm));
        let count: usize = ddf.iter().map(|(g, d)| (g.len() - 1) / d).sum();
        if count == 1 {
            return vec![f];
        }
        if best.as_ref().is_none_or(|(_, v)| count < v.len()) {
            let mut facs = Vec::new();
            for (g, d) in ddf {
                facs.extend(fp.equal_degree(&g, d, &mut rng));
            }
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 12 {
            break;
        }
    }
    let (p, modular) = best.expect("a good prime exists");
    // coefficients of any factor times lc are bounded by |lc| * 2^n * ||f||_2
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm2_ceil(&f) + 1;
    let (lifted, m) = hensel_lift(&f, &modular, p, &bound);
    recombine(f, lifted, &m)
}

fn recombine(mut f: ZPoly, mut factors: Vec<ZPoly>, m: &BigInt) -> Vec<ZPoly> {
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= factors.len() {
        let mut found = false;
        let r = factors.len();
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let lc = f.last().unwrap().clone();
            // constant-term pretest
            let c0 = subset.iter().fold(lc.clone(), |acc, &i| (acc * &factors[i][0]).mod_floor(m));
            let c0 = if c0 > (m >> 1) { c0 - m } else { c0 };
            let pass = !c0.is_zero() && (&lc * &f[0]).is_multiple_of(&c0);
            if pass {
                let g = subset.iter().fold(vec![lc.clone()], |acc, &i| zsymmetric(&zmul(&acc, &factors[i]), m));
                let g = primitive(&g);
                if let Some(q) = zdiv_exact(&f, &g) {
                    out.push(g);
                    f = q;
                    for &i in subset.iter().rev() {
                        factors.remove(i);
                    }
                    found = true;
                    break;
                }
            }
            if !next_subset(&mut subset, r) {
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if f.len() > 1 {
        out.push(primitive(&f));
    }
    out
}

fn next_subset(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

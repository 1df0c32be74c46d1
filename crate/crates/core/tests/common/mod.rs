//! Naive reference arithmetic shared by the integration tests. Uses only the
//! modulus, generator and basis published by the context; every product,
//! logarithm and membership test is recomputed here from scratch.

#![allow(dead_code)]

use charsum::{FieldCtx, Poly};

pub struct NaiveField {
    pub p: u32,
    pub deg: usize,
    pub size: u32,
    pub n: u64,
    modulus: Vec<u32>,
    log: Vec<u64>,
    pub base: Vec<u32>,
    pub basis: Vec<u32>,
}

impl NaiveField {
    pub fn new(ctx: &FieldCtx) -> Self {
        let p = ctx.p() as u32;
        let modulus = ctx.modulus().to_vec();
        let deg = modulus.len() - 1;
        let size = p.pow(deg as u32);
        let mut f = NaiveField {
            p,
            deg,
            size,
            n: size as u64 - 1,
            modulus,
            log: vec![u64::MAX; size as usize],
            base: Vec::new(),
            basis: ctx.basis().iter().map(|e| e.0).collect(),
        };
        let g = ctx.generator().0;
        let mut x = 1u32;
        for e in 0..f.n {
            assert_eq!(f.log[x as usize], u64::MAX, "generator has order < n");
            f.log[x as usize] = e;
            x = f.mul(x, g);
        }
        assert_eq!(x, 1);
        let q = ctx.q();
        f.base = (0..size).filter(|&y| f.pow(y, q) == y).collect();
        f
    }

    fn digits(&self, mut x: u32) -> Vec<u32> {
        let mut d = vec![0; self.deg];
        for slot in d.iter_mut() {
            *slot = x % self.p;
            x /= self.p;
        }
        d
    }

    fn pack(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.pack(&s)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.digits(a), self.digits(b));
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * self.deg];
        for (i, &u) in x.iter().enumerate() {
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u as u64 * v as u64) % p;
            }
        }
        for top in (self.deg..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for (i, &m) in self.modulus.iter().enumerate() {
                let idx = top - self.deg + i;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
        }
        let low: Vec<u32> = prod[..self.deg].iter().map(|&c| c as u32).collect();
        self.pack(&low)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn log(&self, x: u32) -> Option<u64> {
        (x != 0).then(|| self.log[x as usize])
    }

    pub fn eval(&self, f: &Poly, x: u32) -> u32 {
        f.coeffs().iter().rev().fold(0, |acc, c| self.add(self.mul(acc, x), c.0))
    }

    /// `Σ c_i α_i` for digit indices `c_i` into the sorted base field.
    pub fn combine(&self, coords: &[u32]) -> u32 {
        coords
            .iter()
            .zip(&self.basis)
            .fold(0, |acc, (&c, &alpha)| self.add(acc, self.mul(self.base[c as usize], alpha)))
    }

    /// Every coordinate vector in `F_q^r`, last coordinate fastest.
    pub fn all_coords(&self) -> Vec<Vec<u32>> {
        let q = self.base.len() as u32;
        let r = self.basis.len();
        let mut out = vec![vec![]];
        for _ in 0..r {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..q).map(move |c| {
                        let mut w = v.clone();
                        w.push(c);
                        w
                    })
                })
                .collect();
        }
        out
    }
}

/// Exact tally `(counts, zero_hits)` of `Σ_{x∈S} χ_j(f(x))`.
pub fn naive_tally(field: &NaiveField, j: u64, f: &Poly, elements: &[u32]) -> (Vec<u64>, u64) {
    let n = field.n;
    let d = n / gcd(j, n);
    let mut counts = vec![0u64; d as usize];
    let mut zero = 0;
    for &x in elements {
        match field.log(field.eval(f, x)) {
            None => zero += 1,
            Some(l) => counts[((j as u128 * l as u128 % n as u128) as u64 / (n / d)) as usize] += 1,
        }
    }
    (counts, zero)
}

/// `|Σ exp(2πi t/d) counts[t]|` in plain `f64`.
pub fn naive_magnitude(counts: &[u64]) -> f64 {
    let d = counts.len() as f64;
    let (mut re, mut im) = (0.0f64, 0.0f64);
    for (t, &c) in counts.iter().enumerate() {
        let a = 2.0 * std::f64::consts::PI * t as f64 / d;
        re += c as f64 * a.cos();
        im += c as f64 * a.sin();
    }
    re.hypot(im)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

//! Dense polynomials over the prime field, used only while building a tower:
//! modulus search and generator order checks. Coefficients low-to-high.

pub(crate) type FpPoly = Vec<u32>;

pub(crate) fn trim(a: &mut FpPoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    crate::bounds::nt::pow_mod(a as u64, p as u64 - 2, p as u64) as u32
}

pub(crate) fn degree(a: &FpPoly) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// Remainder of `a` modulo `m` (any nonzero `m`).
pub(crate) fn rem(a: &FpPoly, m: &FpPoly, p: u32) -> FpPoly {
    let dm = degree(m).expect("modulus must be nonzero");
    let lead_inv = inv_mod(m[dm], p) as u64;
    let mut r = a.clone();
    trim(&mut r);
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let factor = (r[dr] as u64 * lead_inv) % p as u64;
        let shift = dr - dm;
        for (i, &mc) in m.iter().enumerate().take(dm + 1) {
            let sub = (factor * mc as u64) % p as u64;
            let cell = &mut r[i + shift];
            *cell = ((*cell as u64 + p as u64 - sub) % p as u64) as u32;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul(a: &FpPoly, b: &FpPoly, p: u32) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let mut out: FpPoly = out.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

pub(crate) fn mul_mod(a: &FpPoly, b: &FpPoly, m: &FpPoly, p: u32) -> FpPoly {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn pow_mod(base: &FpPoly, mut e: u64, m: &FpPoly, p: u32) -> FpPoly {
    let mut acc: FpPoly = vec![1];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        e >>= 1;
    }
    rem(&acc, m, p)
}

pub(crate) fn sub(a: &FpPoly, b: &FpPoly, p: u32) -> FpPoly {
    let mut out = vec![0u32; a.len().max(b.len())];
    for (i, c) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *c = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

pub(crate) fn gcd(a: &FpPoly, b: &FpPoly, p: u32) -> FpPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(d) = degree(&x) {
        let inv = inv_mod(x[d], p) as u64;
        for c in x.iter_mut() {
            *c = ((*c as u64 * inv) % p as u64) as u32;
        }
    }
    x
}

/// Ben-Or test: monic `f` of degree `n` is irreducible iff
/// `gcd(f, x^{p^i} − x) = 1` for every `1 ≤ i ≤ n/2`.
pub(crate) fn is_irreducible(f: &FpPoly, p: u32) -> bool {
    let n = match degree(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    let x: FpPoly = vec![0, 1];
    let mut h = rem(&x, f, p);
    for _ in 1..=n / 2 {
        h = pow_mod(&h, p as u64, f, p);
        let g = gcd(f, &sub(&h, &x, p), p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_irreducibles() {
        // x^2 + 1 over F_3, x^4 + x + 1 over F_2
        assert!(is_irreducible(&vec![1, 0, 1], 3));
        assert!(is_irreducible(&vec![1, 1, 0, 0, 1], 2));
        // x^2 + 1 = (x + 1)^2 over F_2; x^4 + x^2 + 1 = (x^2 + x + 1)^2
        assert!(!is_irreducible(&vec![1, 0, 1], 2));
        assert!(!is_irreducible(&vec![1, 0, 1, 0, 1], 2));
    }

    #[test]
    fn count_of_irreducibles_matches_necklace_formula() {
        // Monic irreducibles of degree 4 over F_3: (3^4 − 3^2)/4 = 18.
        let count = (0..81u32)
            .filter(|t| {
                let mut f: FpPoly = (0..4).map(|i| (t / 3u32.pow(i)) % 3).collect();
                f.push(1);
                is_irreducible(&f, 3)
            })
            .count();
        assert_eq!(count, 18);
    }
}

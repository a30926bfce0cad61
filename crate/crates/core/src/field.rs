//! Ground fields as explicit contexts.
//!
//! Matrix and polynomial code never manipulates raw element types directly;
//! every arithmetic operation goes through a [`Field`] value.  This makes a
//! runtime-chosen prime modulus possible (the modulus lives in the field
//! value, not in the element type) and keeps the rationals interchangeable
//! with prime fields everywhere.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use rand::Rng;
use rand::RngCore;

use crate::poly;
use crate::{Error, Result};

/// An exact field given as an explicit context value.
pub trait Field: Clone + PartialEq + std::fmt::Debug {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; panics on zero (callers check first).
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    /// A random element, used by randomized searches (seeded by callers).
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;
    fn fmt_elem(&self, a: &Self::Elem) -> String;

    /// All distinct roots in the field of the polynomial with coefficients
    /// `coeffs` (low degree first, not all zero).  Exact: returns every root
    /// the field contains, or `Err(RootSearch)` if exhaustive extraction is
    /// infeasible for these coefficients.
    fn poly_roots(&self, coeffs: &[Self::Elem], rng: &mut dyn RngCore) -> Result<Vec<Self::Elem>>;
}

/// Deterministic Miller–Rabin for u64 (the chosen base set is exact below
/// 3.3 * 10^24, far above the allowed modulus range).
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The prime field F_p with runtime modulus.  Elements are canonical
/// residues in `0..p`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Panics unless `p` is a prime below 2^31 (keeps products in u128 and
    /// residue scans cheap).
    pub fn new(p: u64) -> Self {
        assert!(p < (1 << 31), "modulus too large: {p}");
        assert!(is_prime_u64(p), "modulus must be prime, got {p}");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, n: i64) -> u64 {
        let p = self.p as i64;
        (n.rem_euclid(p)) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        // Fermat: a^(p-2).
        let mut acc = 1u64;
        let mut base = *a;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn random(&self, rng: &mut dyn RngCore) -> u64 {
        (&mut *rng).gen_range(0..self.p)
    }
    fn fmt_elem(&self, a: &u64) -> String {
        a.to_string()
    }

    fn poly_roots(&self, coeffs: &[u64], rng: &mut dyn RngCore) -> Result<Vec<u64>> {
        let f = poly::trim(self, coeffs.to_vec());
        assert!(!f.is_empty(), "root search on the zero polynomial");
        if f.len() == 1 {
            return Ok(vec![]);
        }
        if self.p <= 4096 {
            // Direct scan: evaluate at every residue.
            let mut roots = vec![];
            for r in 0..self.p {
                if self.is_zero(&poly::eval(self, &f, &r)) {
                    roots.push(r);
                }
            }
            return Ok(roots);
        }
        // Large modulus: split off the product of distinct linear factors as
        // gcd(f, t^p - t), then extract roots by equal-degree splitting.
        let fm = poly::monic(self, &f);
        let tp = poly::pow_x_mod(self, self.p, &fm);
        // t^p - t  (mod f)
        let mut tpt = tp;
        while tpt.len() < 2 {
            tpt.push(0);
        }
        tpt[1] = self.sub(&tpt[1], &self.one());
        let tpt = poly::trim(self, tpt);
        let g = if tpt.is_empty() {
            fm.clone()
        } else {
            poly::gcd(self, &fm, &tpt)
        };
        let mut roots = vec![];
        self.split_linear(&g, rng, &mut roots, 0)?;
        roots.sort_unstable();
        Ok(roots)
    }
}

impl PrimeField {
    /// Equal-degree splitting of a monic squarefree product of linear
    /// factors; pushes all roots.
    fn split_linear(
        &self,
        g: &[u64],
        rng: &mut dyn RngCore,
        out: &mut Vec<u64>,
        depth: usize,
    ) -> Result<()> {
        if depth > 128 {
            return Err(Error::RootSearch("splitting recursion too deep".into()));
        }
        let g = poly::trim(self, g.to_vec());
        if g.len() <= 1 {
            return Ok(());
        }
        if g.len() == 2 {
            // monic t + c0  ->  root -c0
            let lead_inv = self.inv(&g[1]);
            out.push(self.neg(&self.mul(&g[0], &lead_inv)));
            return Ok(());
        }
        // If 0 is a root, strip it first so (t+a)^((p-1)/2) splitting applies.
        let mut g = poly::monic(self, &g);
        if self.is_zero(&g[0]) {
            out.push(0);
            g.remove(0);
            return self.split_linear(&g, rng, out, depth + 1);
        }
        for _ in 0..64 {
            let a = self.random(rng);
            // w = (t + a)^((p-1)/2) - 1 mod g
            let base = vec![a, 1];
            let w = poly::pow_mod(self, &base, (self.p - 1) / 2, &g);
            let mut w = w;
            if w.is_empty() {
                w.push(0);
            }
            w[0] = self.sub(&w[0], &self.one());
            let w = poly::trim(self, w);
            if w.is_empty() {
                continue;
            }
            let h = poly::gcd(self, &g, &w);
            if h.len() > 1 && h.len() < g.len() {
                let (q, r) = poly::divrem(self, &g, &h);
                assert!(r.is_empty(), "gcd must divide");
                self.split_linear(&h, rng, out, depth + 1)?;
                self.split_linear(&q, rng, out, depth + 1)?;
                return Ok(());
            }
        }
        Err(Error::RootSearch(
            "equal-degree splitting failed to find a divisor".into(),
        ))
    }
}

/// The rational numbers (arbitrary precision).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn random(&self, rng: &mut dyn RngCore) -> BigRational {
        // Small integers keep randomized searches exact and fast; the
        // Schwartz–Zippel bound only needs a large enough sample set.
        let n: i64 = (&mut *rng).gen_range(-1000..=1000);
        self.from_i64(n)
    }
    fn fmt_elem(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn poly_roots(&self, coeffs: &[BigRational], _rng: &mut dyn RngCore) -> Result<Vec<BigRational>> {
        let f = poly::trim(self, coeffs.to_vec());
        assert!(!f.is_empty(), "root search on the zero polynomial");
        if f.len() == 1 {
            return Ok(vec![]);
        }
        // Clear denominators to an integer polynomial.
        let mut denom_lcm = BigInt::one();
        for c in &f {
            denom_lcm = num::integer::lcm(denom_lcm, c.denom().clone());
        }
        let ints: Vec<BigInt> = f
            .iter()
            .map(|c| {
                let scaled = c * BigRational::from_integer(denom_lcm.clone());
                assert!(scaled.denom().is_one());
                scaled.numer().clone()
            })
            .collect();
        // Strip t^k (roots at zero).
        let mut roots = vec![];
        let mut ints = ints;
        while ints.first().map(|c| c.is_zero()).unwrap_or(false) {
            ints.remove(0);
            if !roots.contains(&BigRational::zero()) {
                roots.push(BigRational::zero());
            }
        }
        if ints.len() <= 1 {
            return Ok(roots);
        }
        let a0 = ints.first().unwrap().abs();
        let ad = ints.last().unwrap().abs();
        let num_divs = divisors(&a0)?;
        let den_divs = divisors(&ad)?;
        if num_divs.len().saturating_mul(den_divs.len()) > 200_000 {
            return Err(Error::RootSearch("too many divisor candidates".into()));
        }
        for nd in &num_divs {
            for dd in &den_divs {
                for sign in [1i64, -1] {
                    let cand = BigRational::new(nd * BigInt::from(sign), dd.clone());
                    if roots.contains(&cand) {
                        continue;
                    }
                    let mut acc = BigRational::zero();
                    for c in ints.iter().rev() {
                        acc = acc * &cand + BigRational::from_integer(c.clone());
                    }
                    if acc.is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        Ok(roots)
    }
}

/// All positive divisors of a nonzero BigInt, or an error when factoring by
/// trial division is infeasible.
fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    assert!(!n.is_zero());
    let n: u128 = n
        .abs()
        .try_into()
        .map_err(|_| Error::RootSearch("coefficient too large to factor".into()))?;
    let mut factors: Vec<(u128, u32)> = vec![];
    let mut m = n;
    let mut d: u128 = 2;
    let mut steps = 0u64;
    while d * d <= m {
        steps += 1;
        if steps > 2_000_000 {
            return Err(Error::RootSearch("trial division too slow".into()));
        }
        if m % d == 0 {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        factors.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = vec![];
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= BigInt::from(p);
            }
        }
        next.sort();
        next.dedup();
        divs = next;
        if divs.len() > 100_000 {
            return Err(Error::RootSearch("too many divisors".into()));
        }
    }
    Ok(divs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(101);
        assert_eq!(f.add(&100, &5), 4);
        assert_eq!(f.sub(&3, &7), 97);
        assert_eq!(f.mul(&20, &6), 19);
        assert_eq!(f.mul(&f.inv(&37), &37), 1);
        assert_eq!(f.from_i64(-1), 100);
        assert_eq!(f.neg(&0), 0);
    }

    #[test]
    #[should_panic]
    fn composite_modulus_rejected() {
        PrimeField::new(91);
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(101));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(91));
        assert!(!is_prime_u64(1_000_000_006));
    }

    #[test]
    fn roots_small_prime() {
        let f = PrimeField::new(101);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        // (t - 3)(t - 5)(t^2 + 1); t^2+1 has roots iff -1 is a QR mod 101 (101 ≡ 1 mod 4, it is).
        // Build (t-3)(t-5) = t^2 - 8t + 15.
        let quad = vec![15, f.from_i64(-8), 1];
        let mut roots = f.poly_roots(&quad, &mut rng).unwrap();
        roots.sort_unstable();
        assert_eq!(roots, vec![3, 5]);
        // t^2 + 1 over F_101: 10^2 = 100 = -1, roots 10 and 91.
        let roots = f.poly_roots(&[1, 0, 1], &mut rng).unwrap();
        assert_eq!(roots, vec![10, 91]);
        // t^2 + 1 over F_103 (103 ≡ 3 mod 4): no roots.
        let f3 = PrimeField::new(103);
        let roots = f3.poly_roots(&[1, 0, 1], &mut rng).unwrap();
        assert!(roots.is_empty());
    }

    #[test]
    fn roots_large_prime_uses_splitting() {
        let p = 1_000_000_007u64;
        let f = PrimeField::new(p);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        // (t - 123456)(t - 999)(t - 1)
        let a = 123456u64;
        let b = 999u64;
        let c = 1u64;
        let mut poly = vec![1u64];
        for r in [a, b, c] {
            // multiply by (t - r)
            let mut next = vec![0; poly.len() + 1];
            for (i, co) in poly.iter().enumerate() {
                next[i + 1] = f.add(&next[i + 1], co);
                next[i] = f.sub(&next[i], &f.mul(co, &r));
            }
            poly = next;
        }
        let roots = f.poly_roots(&poly, &mut rng).unwrap();
        assert_eq!(roots, vec![1, 999, 123456]);
    }

    #[test]
    fn rational_roots() {
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        // (2t - 3)(t + 4) = 2t^2 + 5t - 12
        let f = vec![q.from_i64(-12), q.from_i64(5), q.from_i64(2)];
        let roots = q.poly_roots(&f, &mut rng).unwrap();
        let expect = vec![q.from_i64(-4), BigRational::new(3.into(), 2.into())];
        assert_eq!(roots, expect);
        // t^2 - 2: no rational roots.
        let f = vec![q.from_i64(-2), q.zero(), q.one()];
        assert!(q.poly_roots(&f, &mut rng).unwrap().is_empty());
        // t^3: root 0 only.
        let f = vec![q.zero(), q.zero(), q.zero(), q.one()];
        assert_eq!(q.poly_roots(&f, &mut rng).unwrap(), vec![q.zero()]);
    }
}

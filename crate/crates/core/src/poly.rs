//! Dense univariate polynomial helpers over a [`Field`] context.
//!
//! A polynomial is a `Vec` of coefficients, low degree first.  The zero
//! polynomial is the empty vector; all functions keep results trimmed.

use crate::field::Field;

pub fn trim<K: Field>(k: &K, mut f: Vec<K::Elem>) -> Vec<K::Elem> {
    while f.last().map(|c| k.is_zero(c)).unwrap_or(false) {
        f.pop();
    }
    f
}

pub fn deg<K: Field>(f: &[K::Elem]) -> Option<usize> {
    if f.is_empty() {
        None
    } else {
        Some(f.len() - 1)
    }
}

pub fn add<K: Field>(k: &K, f: &[K::Elem], g: &[K::Elem]) -> Vec<K::Elem> {
    let n = f.len().max(g.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let a = f.get(i).cloned().unwrap_or_else(|| k.zero());
        let b = g.get(i).cloned().unwrap_or_else(|| k.zero());
        out.push(k.add(&a, &b));
    }
    trim(k, out)
}

pub fn scale<K: Field>(k: &K, c: &K::Elem, f: &[K::Elem]) -> Vec<K::Elem> {
    trim(k, f.iter().map(|a| k.mul(c, a)).collect())
}

pub fn mul<K: Field>(k: &K, f: &[K::Elem], g: &[K::Elem]) -> Vec<K::Elem> {
    if f.is_empty() || g.is_empty() {
        return vec![];
    }
    let mut out = vec![k.zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if k.is_zero(a) {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            out[i + j] = k.add(&out[i + j], &k.mul(a, b));
        }
    }
    trim(k, out)
}

/// Quotient and remainder of `f / g`; `g` must be nonzero.
pub fn divrem<K: Field>(k: &K, f: &[K::Elem], g: &[K::Elem]) -> (Vec<K::Elem>, Vec<K::Elem>) {
    let g = trim(k, g.to_vec());
    assert!(!g.is_empty(), "division by zero polynomial");
    let mut r = trim(k, f.to_vec());
    if r.len() < g.len() {
        return (vec![], r);
    }
    let lead_inv = k.inv(g.last().unwrap());
    let mut q = vec![k.zero(); r.len() - g.len() + 1];
    while r.len() >= g.len() {
        let shift = r.len() - g.len();
        let c = k.mul(r.last().unwrap(), &lead_inv);
        q[shift] = c.clone();
        for (i, gc) in g.iter().enumerate() {
            let idx = shift + i;
            r[idx] = k.sub(&r[idx], &k.mul(&c, gc));
        }
        r = trim(k, r);
        if r.is_empty() {
            break;
        }
    }
    (trim(k, q), r)
}

pub fn monic<K: Field>(k: &K, f: &[K::Elem]) -> Vec<K::Elem> {
    let f = trim(k, f.to_vec());
    assert!(!f.is_empty());
    let li = k.inv(f.last().unwrap());
    scale(k, &li, &f)
}

/// Monic gcd.
pub fn gcd<K: Field>(k: &K, f: &[K::Elem], g: &[K::Elem]) -> Vec<K::Elem> {
    let mut a = trim(k, f.to_vec());
    let mut b = trim(k, g.to_vec());
    while !b.is_empty() {
        let (_, r) = divrem(k, &a, &b);
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        monic(k, &a)
    }
}

/// Extended gcd: returns (d, u, v) monic with u*f + v*g = d.
pub fn egcd<K: Field>(
    k: &K,
    f: &[K::Elem],
    g: &[K::Elem],
) -> (Vec<K::Elem>, Vec<K::Elem>, Vec<K::Elem>) {
    let mut r0 = trim(k, f.to_vec());
    let mut r1 = trim(k, g.to_vec());
    let mut s0 = vec![k.one()];
    let mut s1: Vec<K::Elem> = vec![];
    let mut t0: Vec<K::Elem> = vec![];
    let mut t1 = vec![k.one()];
    while !r1.is_empty() {
        let (q, r) = divrem(k, &r0, &r1);
        let s = sub_poly(k, &s0, &mul(k, &q, &s1));
        let t = sub_poly(k, &t0, &mul(k, &q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    assert!(!r0.is_empty(), "egcd of two zero polynomials");
    let li = k.inv(r0.last().unwrap());
    (scale(k, &li, &r0), scale(k, &li, &s0), scale(k, &li, &t0))
}

fn sub_poly<K: Field>(k: &K, f: &[K::Elem], g: &[K::Elem]) -> Vec<K::Elem> {
    add(k, f, &scale(k, &k.from_i64(-1), g))
}

pub fn eval<K: Field>(k: &K, f: &[K::Elem], x: &K::Elem) -> K::Elem {
    let mut acc = k.zero();
    for c in f.iter().rev() {
        acc = k.add(&k.mul(&acc, x), c);
    }
    acc
}

/// `base^e mod m` by square and multiply; `m` nonconstant.
pub fn pow_mod<K: Field>(k: &K, base: &[K::Elem], mut e: u64, m: &[K::Elem]) -> Vec<K::Elem> {
    assert!(m.len() >= 2, "modulus must be nonconstant");
    let mut acc = vec![k.one()];
    let (_, mut b) = divrem(k, base, m);
    while e > 0 {
        if e & 1 == 1 {
            let prod = mul(k, &acc, &b);
            acc = divrem(k, &prod, m).1;
        }
        let sq = mul(k, &b, &b);
        b = divrem(k, &sq, m).1;
        e >>= 1;
    }
    acc
}

/// `t^e mod m`.
pub fn pow_x_mod<K: Field>(k: &K, e: u64, m: &[K::Elem]) -> Vec<K::Elem> {
    pow_mod(k, &[k.zero(), k.one()], e, m)
}

/// Multiplicity of `root` in `f`.
pub fn root_multiplicity<K: Field>(k: &K, f: &[K::Elem], root: &K::Elem) -> usize {
    let lin = vec![k.neg(root), k.one()];
    let mut f = trim(k, f.to_vec());
    let mut m = 0;
    loop {
        let (q, r) = divrem(k, &f, &lin);
        if r.is_empty() && !q.is_empty() {
            m += 1;
            f = q;
        } else {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    #[test]
    fn divrem_roundtrip() {
        let k = PrimeField::new(101);
        let f = vec![3, 1, 4, 1, 5];
        let g = vec![2, 7, 1];
        let (q, r) = divrem(&k, &f, &g);
        let back = add(&k, &mul(&k, &q, &g), &r);
        assert_eq!(back, trim(&k, f));
        assert!(r.len() < g.len());
    }

    #[test]
    fn egcd_bezout() {
        let k = PrimeField::new(101);
        // f = (t-1)(t-2), g = (t-1)(t-3); gcd = t-1
        let f = mul(&k, &[k.from_i64(-1), 1], &[k.from_i64(-2), 1]);
        let g = mul(&k, &[k.from_i64(-1), 1], &[k.from_i64(-3), 1]);
        let (d, u, v) = egcd(&k, &f, &g);
        assert_eq!(d, vec![k.from_i64(-1), 1]);
        let lhs = add(&k, &mul(&k, &u, &f), &mul(&k, &v, &g));
        assert_eq!(lhs, d);
    }

    #[test]
    fn multiplicity() {
        let q = Rationals;
        // (t-1)^2 (t+2)
        let f = mul(
            &q,
            &mul(&q, &[q.from_i64(-1), q.one()], &[q.from_i64(-1), q.one()]),
            &[q.from_i64(2), q.one()],
        );
        assert_eq!(root_multiplicity(&q, &f, &q.one()), 2);
        assert_eq!(root_multiplicity(&q, &f, &q.from_i64(-2)), 1);
        assert_eq!(root_multiplicity(&q, &f, &q.from_i64(5)), 0);
    }

    proptest! {
        #[test]
        fn prop_divrem(fc in proptest::collection::vec(0u64..101, 0..8),
                       gc in proptest::collection::vec(0u64..101, 1..5)) {
            let k = PrimeField::new(101);
            let g = trim(&k, gc);
            prop_assume!(!g.is_empty());
            let (q, r) = divrem(&k, &fc, &g);
            let back = add(&k, &mul(&k, &q, &g), &r);
            prop_assert_eq!(back, trim(&k, fc));
            prop_assert!(r.len() < g.len());
        }

        #[test]
        fn prop_gcd_divides(fc in proptest::collection::vec(0u64..101, 1..7),
                            gc in proptest::collection::vec(0u64..101, 1..7)) {
            let k = PrimeField::new(101);
            let f = trim(&k, fc);
            let g = trim(&k, gc);
            prop_assume!(!f.is_empty() && !g.is_empty());
            let d = gcd(&k, &f, &g);
            prop_assert!(divrem(&k, &f, &d).1.is_empty());
            prop_assert!(divrem(&k, &g, &d).1.is_empty());
            let (d2, u, v) = egcd(&k, &f, &g);
            prop_assert_eq!(&d, &d2);
            let lhs = add(&k, &mul(&k, &u, &f), &mul(&k, &v, &g));
            prop_assert_eq!(lhs, d);
        }
    }
}

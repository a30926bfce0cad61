//! Subspaces and quotient spaces of k^n in canonical form.
//!
//! A [`Subspace`] stores its basis as the nonzero rows of a reduced row
//! echelon form, so two subspaces are equal as sets exactly when the structs
//! compare equal.  A [`QuotientSpace`] fixes the complement spanned by the
//! non-pivot coordinates as a canonical section, which gives every coset a
//! unique representative and coordinates.

use crate::field::Field;
use crate::mat::Mat;

#[derive(Clone, PartialEq, Debug)]
pub struct Subspace<K: Field> {
    pub ambient: usize,
    /// rows = basis vectors, in RREF with zero rows dropped
    pub basis: Mat<K>,
    pub pivots: Vec<usize>,
}

impl<K: Field> Subspace<K> {
    pub fn zero(field: &K, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::zeros(field, 0, ambient),
            pivots: vec![],
        }
    }

    pub fn full(field: &K, ambient: usize) -> Self {
        Self::from_span(&Mat::identity(field, ambient))
    }

    /// Span of the rows of `m`.
    pub fn from_span(m: &Mat<K>) -> Self {
        let (r, pivots) = m.rref();
        let rows: Vec<usize> = (0..pivots.len()).collect();
        let cols: Vec<usize> = (0..m.cols).collect();
        Subspace {
            ambient: m.cols,
            basis: r.submatrix(&rows, &cols),
            pivots,
        }
    }

    /// Span of the columns of `m`.
    pub fn from_col_span(m: &Mat<K>) -> Self {
        Self::from_span(&m.transpose())
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn field(&self) -> &K {
        &self.basis.field
    }

    /// Reduce `v` modulo the subspace: subtracts the unique combination of
    /// basis rows matching `v` on the pivot coordinates.  The result is zero
    /// iff `v` lies in the subspace; its nonpivot coordinates are the
    /// canonical coset coordinates.
    pub fn reduce(&self, v: &[K::Elem]) -> Vec<K::Elem> {
        assert_eq!(v.len(), self.ambient);
        let k = self.field().clone();
        let mut v = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = v[p].clone();
            if k.is_zero(&c) {
                continue;
            }
            for j in 0..self.ambient {
                v[j] = k.sub(&v[j], &k.mul(&c, self.basis.at(i, j)));
            }
        }
        v
    }

    pub fn contains(&self, v: &[K::Elem]) -> bool {
        let k = self.field();
        self.reduce(v).iter().all(|x| k.is_zero(x))
    }

    pub fn contains_subspace(&self, other: &Subspace<K>) -> bool {
        (0..other.dim()).all(|i| self.contains(&other.basis.row(i)))
    }

    /// Coordinates of `v` in the subspace basis, if `v` belongs to it.
    pub fn coords(&self, v: &[K::Elem]) -> Option<Vec<K::Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &Subspace<K>) -> Subspace<K> {
        assert_eq!(self.ambient, other.ambient);
        Self::from_span(&self.basis.vstack(&other.basis))
    }

    pub fn intersect(&self, other: &Subspace<K>) -> Subspace<K> {
        assert_eq!(self.ambient, other.ambient);
        // Zassenhaus-lite: v in both spans <=> v = x^T A = y^T B; solve for
        // combinations with equal values.  Kernel of [A^T | -B^T].
        let k = self.field().clone();
        let at = self.basis.transpose();
        let bt = other.basis.transpose().neg();
        let stacked = at.hstack(&bt);
        let ker = stacked.kernel(); // columns: (x, y)
        let mut rows = vec![];
        for c in 0..ker.cols {
            let col = ker.col(c);
            let x = &col[..self.dim()];
            let mut v = vec![k.zero(); self.ambient];
            for (i, xi) in x.iter().enumerate() {
                for j in 0..self.ambient {
                    v[j] = k.add(&v[j], &k.mul(xi, self.basis.at(i, j)));
                }
            }
            rows.push(v);
        }
        Self::from_span(&Mat::from_rows(&k, if rows.is_empty() {
            vec![vec![]; 0]
        } else {
            rows
        }).pad_cols(&k, self.ambient))
    }
}

// Helper used when `rows` may be empty and the column count is lost.
trait PadCols<K: Field> {
    fn pad_cols(self, field: &K, cols: usize) -> Mat<K>;
}

impl<K: Field> PadCols<K> for Mat<K> {
    fn pad_cols(self, field: &K, cols: usize) -> Mat<K> {
        if self.rows == 0 {
            Mat::zeros(field, 0, cols)
        } else {
            assert_eq!(self.cols, cols);
            self
        }
    }
}

/// The quotient of k^ambient by a subspace, with the canonical section
/// spanned by the non-pivot coordinates.
#[derive(Clone, PartialEq, Debug)]
pub struct QuotientSpace<K: Field> {
    pub field: K,
    pub ambient: usize,
    pub sub: Subspace<K>,
    /// Non-pivot coordinate indices; they index the quotient coordinates.
    pub section: Vec<usize>,
}

impl<K: Field> QuotientSpace<K> {
    pub fn new(field: &K, sub: Subspace<K>) -> Self {
        let ambient = sub.ambient;
        let pivot_set: std::collections::BTreeSet<usize> = sub.pivots.iter().copied().collect();
        let section = (0..ambient).filter(|c| !pivot_set.contains(c)).collect();
        QuotientSpace {
            field: field.clone(),
            ambient,
            sub,
            section,
        }
    }

    pub fn dim(&self) -> usize {
        self.section.len()
    }

    /// Coset coordinates of an ambient vector.
    pub fn project(&self, v: &[K::Elem]) -> Vec<K::Elem> {
        let red = self.sub.reduce(v);
        self.section.iter().map(|&c| red[c].clone()).collect()
    }

    /// The canonical representative of quotient coordinates: supported on the
    /// section coordinates.  `project(representative(c)) == c`.
    pub fn representative(&self, coords: &[K::Elem]) -> Vec<K::Elem> {
        assert_eq!(coords.len(), self.dim());
        let mut v = vec![self.field.zero(); self.ambient];
        for (i, &c) in self.section.iter().enumerate() {
            v[c] = coords[i].clone();
        }
        v
    }

    pub fn is_zero_coset(&self, v: &[K::Elem]) -> bool {
        self.sub.contains(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn canonical_equality() {
        let k = PrimeField::new(101);
        let a = Subspace::from_span(&Mat::from_i64(&k, &[&[1, 1, 0], &[0, 0, 1]]));
        let b = Subspace::from_span(&Mat::from_i64(&k, &[&[2, 2, 2], &[0, 0, 5], &[1, 1, 1]]));
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn sum_intersect_dims() {
        let k = PrimeField::new(101);
        let u = Subspace::from_span(&Mat::from_i64(&k, &[&[1, 0, 0], &[0, 1, 0]]));
        let w = Subspace::from_span(&Mat::from_i64(&k, &[&[0, 1, 0], &[0, 0, 1]]));
        let s = u.sum(&w);
        let i = u.intersect(&w);
        assert_eq!(s.dim(), 3);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[k.zero(), k.one(), k.zero()]));
    }

    #[test]
    fn quotient_roundtrip() {
        let k = PrimeField::new(101);
        let sub = Subspace::from_span(&Mat::from_i64(&k, &[&[1, 2, 3]]));
        let q = QuotientSpace::new(&k, sub);
        assert_eq!(q.dim(), 2);
        let v = vec![k.from_i64(5), k.from_i64(7), k.from_i64(9)];
        let c = q.project(&v);
        let r = q.representative(&c);
        // v - r must lie in the subspace
        let diff: Vec<u64> = v.iter().zip(&r).map(|(a, b)| k.sub(a, b)).collect();
        assert!(q.sub.contains(&diff));
        assert_eq!(q.project(&r), c);
    }

    proptest! {
        #[test]
        fn prop_dim_formula(seed in 0u64..500, du in 0usize..4, dw in 0usize..4) {
            let k = PrimeField::new(101);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = 5;
            let u = Subspace::from_span(&Mat::random(&k, du, n, &mut rng));
            let w = Subspace::from_span(&Mat::random(&k, dw, n, &mut rng));
            let s = u.sum(&w);
            let i = u.intersect(&w);
            prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
            prop_assert!(s.contains_subspace(&u));
            prop_assert!(s.contains_subspace(&w));
            prop_assert!(u.contains_subspace(&i));
            prop_assert!(w.contains_subspace(&i));
        }

        #[test]
        fn prop_projection_linear(seed in 0u64..500) {
            let k = PrimeField::new(101);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = 6;
            let sub = Subspace::from_span(&Mat::random(&k, 3, n, &mut rng));
            let q = QuotientSpace::new(&k, sub);
            let v = Mat::random(&k, 1, n, &mut rng).row(0);
            let w = Mat::random(&k, 1, n, &mut rng).row(0);
            let vw: Vec<u64> = v.iter().zip(&w).map(|(a, b)| k.add(a, b)).collect();
            let pv = q.project(&v);
            let pw = q.project(&w);
            let pvw = q.project(&vw);
            let sum: Vec<u64> = pv.iter().zip(&pw).map(|(a, b)| k.add(a, b)).collect();
            prop_assert_eq!(pvw, sum);
            // kernel of projection is exactly the subspace
            prop_assert_eq!(q.project(&q.sub.reduce(&v)) == pv, true);
        }
    }
}

//! Representations of a presented algebra and the linear algebra of
//! morphisms between them.
//!
//! A representation assigns a vector space dimension to every vertex and a
//! matrix to every arrow `a : s → t` of shape `dims[t] × dims[s]`.  A path
//! acts by composing its arrow matrices in traversal order, and a
//! representation is a module exactly when every relation acts as zero.
//!
//! All constructions are methods on [`Presentation`] (the algebra is the
//! context, mirroring the field-as-context design).

use rand::RngCore;

use crate::fdalg::{fitting_split, FDAlgebra};
use crate::field::Field;
use crate::mat::Mat;
use crate::quiver::{Path, Presentation};
use crate::subspace::{QuotientSpace, Subspace};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Rep<K: Field> {
    pub dims: Vec<usize>,
    /// Per arrow `a : s → t`: a `dims[t] × dims[s]` matrix.
    pub maps: Vec<Mat<K>>,
}

impl<K: Field> Rep<K> {
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }
}

/// A morphism of representations: one block per vertex, `N_v × M_v`.
#[derive(Clone, Debug, PartialEq)]
pub struct RepMap<K: Field> {
    pub blocks: Vec<Mat<K>>,
}

impl<K: Field> RepMap<K> {
    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn flatten(&self) -> Vec<K::Elem> {
        self.blocks.iter().flat_map(|b| b.flatten()).collect()
    }
}

/// The hom space between two representations, with a canonical basis (rows
/// of an echelonized flat space) usable for coordinates.
#[derive(Clone, Debug)]
pub struct HomSpace<K: Field> {
    pub maps: Vec<RepMap<K>>,
    pub space: Subspace<K>,
    src_dims: Vec<usize>,
    tgt_dims: Vec<usize>,
}

impl<K: Field> HomSpace<K> {
    pub fn dim(&self) -> usize {
        self.maps.len()
    }

    pub fn coords_of(&self, f: &RepMap<K>) -> Vec<K::Elem> {
        self.space
            .coords(&f.flatten())
            .expect("map does not lie in the hom space")
    }

    pub fn from_coords(&self, field: &K, coords: &[K::Elem]) -> RepMap<K> {
        assert_eq!(coords.len(), self.dim());
        let flat_len = self.space.ambient;
        let mut flat = vec![field.zero(); flat_len];
        for (i, c) in coords.iter().enumerate() {
            let row = self.space.basis.row(i);
            for j in 0..flat_len {
                flat[j] = field.add(&flat[j], &field.mul(c, &row[j]));
            }
        }
        unflatten_map(field, &self.src_dims, &self.tgt_dims, &flat)
    }
}

pub fn unflatten_map<K: Field>(
    field: &K,
    src_dims: &[usize],
    tgt_dims: &[usize],
    flat: &[K::Elem],
) -> RepMap<K> {
    let mut blocks = vec![];
    let mut off = 0;
    for v in 0..src_dims.len() {
        let sz = tgt_dims[v] * src_dims[v];
        let data = flat[off..off + sz].to_vec();
        blocks.push(Mat::from_flat(field, tgt_dims[v], src_dims[v], data));
        off += sz;
    }
    assert_eq!(off, flat.len());
    RepMap { blocks }
}

impl<K: Field> Presentation<K> {
    pub fn zero_rep(&self) -> Rep<K> {
        let nv = self.num_vertices();
        Rep {
            dims: vec![0; nv],
            maps: self
                .quiver
                .arrows
                .iter()
                .map(|_| Mat::zeros(&self.field, 0, 0))
                .collect(),
        }
    }

    pub fn simple(&self, v: usize) -> Rep<K> {
        let nv = self.num_vertices();
        let mut dims = vec![0; nv];
        dims[v] = 1;
        let maps = self
            .quiver
            .arrows
            .iter()
            .map(|a| Mat::zeros(&self.field, dims[a.target], dims[a.source]))
            .collect();
        Rep { dims, maps }
    }

    /// Evaluate a path on a representation (identity for the trivial path).
    pub fn eval_path(&self, m: &Rep<K>, p: &Path) -> Mat<K> {
        assert!(p.is_valid(&self.quiver));
        let mut cur = Mat::identity(&self.field, m.dims[p.source]);
        for &a in &p.arrows {
            cur = m.maps[a].matmul(&cur);
        }
        cur
    }

    /// A representation is a module iff all relations act as zero.
    pub fn rep_is_valid(&self, m: &Rep<K>) -> bool {
        if m.dims.len() != self.num_vertices() || m.maps.len() != self.quiver.arrows.len() {
            return false;
        }
        for (i, a) in self.quiver.arrows.iter().enumerate() {
            if m.maps[i].rows != m.dims[a.target] || m.maps[i].cols != m.dims[a.source] {
                return false;
            }
        }
        for r in &self.relations {
            let s = r.source();
            let t = r.target(&self.quiver);
            let mut acc = Mat::zeros(&self.field, m.dims[t], m.dims[s]);
            for (c, p) in &r.terms {
                acc = acc.add(&self.eval_path(m, p).scale(c));
            }
            if !acc.is_zero() {
                return false;
            }
        }
        true
    }

    pub fn identity_map(&self, m: &Rep<K>) -> RepMap<K> {
        RepMap {
            blocks: m.dims.iter().map(|&d| Mat::identity(&self.field, d)).collect(),
        }
    }

    pub fn zero_map(&self, m: &Rep<K>, n: &Rep<K>) -> RepMap<K> {
        RepMap {
            blocks: (0..m.dims.len())
                .map(|v| Mat::zeros(&self.field, n.dims[v], m.dims[v]))
                .collect(),
        }
    }

    /// g ∘ f where f : M → N and g : N → L.
    pub fn compose_maps(&self, f: &RepMap<K>, g: &RepMap<K>) -> RepMap<K> {
        RepMap {
            blocks: f
                .blocks
                .iter()
                .zip(&g.blocks)
                .map(|(fb, gb)| gb.matmul(fb))
                .collect(),
        }
    }

    pub fn add_maps(&self, f: &RepMap<K>, g: &RepMap<K>) -> RepMap<K> {
        RepMap {
            blocks: f.blocks.iter().zip(&g.blocks).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale_map(&self, c: &K::Elem, f: &RepMap<K>) -> RepMap<K> {
        RepMap {
            blocks: f.blocks.iter().map(|b| b.scale(c)).collect(),
        }
    }

    pub fn map_is_iso(&self, f: &RepMap<K>) -> bool {
        f.blocks.iter().all(|b| b.is_invertible())
    }

    /// Basis of Hom(M, N): solutions of the commuting-square equations.
    pub fn hom(&self, m: &Rep<K>, n: &Rep<K>) -> HomSpace<K> {
        let k = &self.field;
        let nv = self.num_vertices();
        // unknowns: per vertex v a block f_v (n_v × m_v), flattened
        let offsets: Vec<usize> = {
            let mut o = vec![0];
            for v in 0..nv {
                o.push(o[v] + n.dims[v] * m.dims[v]);
            }
            o
        };
        let total = offsets[nv];
        let mut rows: Vec<Vec<K::Elem>> = vec![];
        for (ai, a) in self.quiver.arrows.iter().enumerate() {
            let (s, t) = (a.source, a.target);
            // f_t * M_a - N_a * f_s = 0 : one equation per (row in n_t, col in m_s)
            for r in 0..n.dims[t] {
                for c in 0..m.dims[s] {
                    let mut row = vec![k.zero(); total];
                    // (f_t * M_a)[r][c] = sum_j f_t[r][j] * M_a[j][c]
                    for j in 0..m.dims[t] {
                        let idx = offsets[t] + r * m.dims[t] + j;
                        row[idx] = k.add(&row[idx], m.maps[ai].at(j, c));
                    }
                    // -(N_a * f_s)[r][c] = -sum_j N_a[r][j] * f_s[j][c]
                    for j in 0..n.dims[s] {
                        let idx = offsets[s] + j * m.dims[s] + c;
                        row[idx] = k.sub(&row[idx], n.maps[ai].at(r, j));
                    }
                    rows.push(row);
                }
            }
        }
        let coeff = if rows.is_empty() {
            Mat::zeros(k, 0, total)
        } else {
            Mat::from_rows(k, rows)
        };
        let ker = coeff.kernel();
        let space = Subspace::from_col_span(&ker);
        let maps = (0..space.dim())
            .map(|i| unflatten_map(k, &m.dims, &n.dims, &space.basis.row(i)))
            .collect();
        HomSpace {
            maps,
            space,
            src_dims: m.dims.clone(),
            tgt_dims: n.dims.clone(),
        }
    }

    pub fn direct_sum(&self, parts: &[&Rep<K>]) -> (Rep<K>, Vec<RepMap<K>>, Vec<RepMap<K>>) {
        let k = &self.field;
        let nv = self.num_vertices();
        let mut dims = vec![0; nv];
        for p in parts {
            for v in 0..nv {
                dims[v] += p.dims[v];
            }
        }
        let mut maps = vec![];
        for (ai, a) in self.quiver.arrows.iter().enumerate() {
            let mut big = Mat::zeros(k, dims[a.target], dims[a.source]);
            let mut ro = 0;
            let mut co = 0;
            for p in parts {
                for r in 0..p.dims[a.target] {
                    for c in 0..p.dims[a.source] {
                        big.set(ro + r, co + c, p.maps[ai].at(r, c).clone());
                    }
                }
                ro += p.dims[a.target];
                co += p.dims[a.source];
            }
            maps.push(big);
        }
        let sum = Rep { dims, maps };
        let mut injections = vec![];
        let mut projections = vec![];
        let mut offset = vec![0; nv];
        for p in parts {
            let mut inj_blocks = vec![];
            let mut proj_blocks = vec![];
            for v in 0..nv {
                let mut inj = Mat::zeros(k, sum.dims[v], p.dims[v]);
                let mut proj = Mat::zeros(k, p.dims[v], sum.dims[v]);
                for i in 0..p.dims[v] {
                    inj.set(offset[v] + i, i, k.one());
                    proj.set(i, offset[v] + i, k.one());
                }
                inj_blocks.push(inj);
                proj_blocks.push(proj);
            }
            injections.push(RepMap { blocks: inj_blocks });
            projections.push(RepMap { blocks: proj_blocks });
            for v in 0..nv {
                offset[v] += p.dims[v];
            }
        }
        (sum, injections, projections)
    }

    /// Subrepresentation on given per-vertex subspaces (must be invariant);
    /// returns the rep and its inclusion.
    pub fn subrep(&self, m: &Rep<K>, spans: &[Subspace<K>]) -> (Rep<K>, RepMap<K>) {
        let k = &self.field;
        let nv = self.num_vertices();
        assert_eq!(spans.len(), nv);
        for (v, s) in spans.iter().enumerate() {
            assert_eq!(s.ambient, m.dims[v]);
        }
        let dims: Vec<usize> = spans.iter().map(|s| s.dim()).collect();
        let mut maps = vec![];
        for (ai, a) in self.quiver.arrows.iter().enumerate() {
            // restrict: columns = images of source basis vectors, in target basis coords
            let mut mm = Mat::zeros(k, dims[a.target], dims[a.source]);
            for j in 0..dims[a.source] {
                let x = spans[a.source].basis.row(j);
                let img = m.maps[ai].apply(&x);
                let coords = spans[a.target]
                    .coords(&img)
                    .expect("subspaces not arrow-invariant");
                for (i, c) in coords.iter().enumerate() {
                    mm.set(i, j, c.clone());
                }
            }
            maps.push(mm);
        }
        let incl = RepMap {
            blocks: (0..nv)
                .map(|v| spans[v].basis.transpose())
                .collect(),
        };
        (Rep { dims, maps }, incl)
    }

    /// Quotient representation by an invariant family of subspaces; returns
    /// the rep and the projection.
    pub fn quotient_rep(&self, m: &Rep<K>, spans: &[Subspace<K>]) -> (Rep<K>, RepMap<K>) {
        let k = &self.field;
        let nv = self.num_vertices();
        let quots: Vec<QuotientSpace<K>> = spans
            .iter()
            .map(|s| QuotientSpace::new(k, s.clone()))
            .collect();
        let dims: Vec<usize> = quots.iter().map(|q| q.dim()).collect();
        let mut maps = vec![];
        for (ai, a) in self.quiver.arrows.iter().enumerate() {
            let mut mm = Mat::zeros(k, dims[a.target], dims[a.source]);
            for j in 0..dims[a.source] {
                let mut ej = vec![k.zero(); dims[a.source]];
                ej[j] = k.one();
                let rep_v = quots[a.source].representative(&ej);
                let img = m.maps[ai].apply(&rep_v);
                let coords = quots[a.target].project(&img);
                for (i, c) in coords.iter().enumerate() {
                    mm.set(i, j, c.clone());
                }
            }
            maps.push(mm);
        }
        let proj = RepMap {
            blocks: (0..nv)
                .map(|v| {
                    Mat::from_fn(k, dims[v], m.dims[v], |i, j| {
                        let mut ej = vec![k.zero(); m.dims[v]];
                        ej[j] = k.one();
                        quots[v].project(&ej)[i].clone()
                    })
                })
                .collect(),
        };
        // well-definedness: spans must be invariant
        for (ai, a) in self.quiver.arrows.iter().enumerate() {
            for bi in 0..spans[a.source].dim() {
                let x = spans[a.source].basis.row(bi);
                let img = m.maps[ai].apply(&x);
                assert!(
                    spans[a.target].contains(&img),
                    "subspaces not arrow-invariant"
                );
            }
        }
        (Rep { dims, maps }, proj)
    }

    /// Image of a morphism as a subrepresentation of its target.
    pub fn image_spans(&self, f: &RepMap<K>) -> Vec<Subspace<K>> {
        f.blocks.iter().map(Subspace::from_col_span).collect()
    }

    /// Kernel of a morphism as per-vertex subspaces of its source.
    pub fn kernel_spans(&self, f: &RepMap<K>) -> Vec<Subspace<K>> {
        f.blocks
            .iter()
            .map(|b| Subspace::from_col_span(&b.kernel()))
            .collect()
    }

    /// Per-vertex radical subspaces: sums of incoming arrow images.
    pub fn radical_spans(&self, m: &Rep<K>) -> Vec<Subspace<K>> {
        let k = &self.field;
        let nv = self.num_vertices();
        (0..nv)
            .map(|v| {
                let mut s = Subspace::zero(k, m.dims[v]);
                for &a in &self.quiver.arrows_into(v) {
                    s = s.sum(&Subspace::from_col_span(&m.maps[a]));
                }
                s
            })
            .collect()
    }

    /// Per-vertex socle subspaces: intersections of outgoing arrow kernels.
    pub fn socle_spans(&self, m: &Rep<K>) -> Vec<Subspace<K>> {
        let k = &self.field;
        let nv = self.num_vertices();
        (0..nv)
            .map(|v| {
                let mut s = Subspace::full(k, m.dims[v]);
                for &a in &self.quiver.arrows_from(v) {
                    s = s.intersect(&Subspace::from_col_span(&m.maps[a].kernel()));
                }
                s
            })
            .collect()
    }

    /// Dual module over the opposite presentation (dims preserved, arrow
    /// matrices transposed).  `opp` must be `self.opposite()`.
    pub fn dual_rep(&self, m: &Rep<K>) -> Rep<K> {
        Rep {
            dims: m.dims.clone(),
            maps: m.maps.iter().map(|b| b.transpose()).collect(),
        }
    }

    /// Dual of a morphism: if f : M → N over `self`, then D(f) : D(N) → D(M)
    /// over the opposite presentation.
    pub fn dual_map(&self, f: &RepMap<K>) -> RepMap<K> {
        RepMap {
            blocks: f.blocks.iter().map(|b| b.transpose()).collect(),
        }
    }

    /// The indecomposable projective at a vertex, read off the path basis:
    /// class spaces of paths out of `v`, arrows acting by extension.
    pub fn projective(&self, pb: &crate::quiver::PathBasis<K>, v: usize) -> Rep<K> {
        let nv = self.num_vertices();
        let dims: Vec<usize> = (0..nv).map(|w| pb.dim(v, w)).collect();
        let maps: Vec<Mat<K>> = (0..self.quiver.arrows.len())
            .map(|a| pb.ext_matrix(v, a).clone())
            .collect();
        Rep { dims, maps }
    }

    /// Projective cover: P(M) = ⊕_v P(v)^{top_v} with a lift of a basis of
    /// the top.  Returns (P, cover map, per-vertex multiplicities).
    pub fn projective_cover(
        &self,
        pb: &crate::quiver::PathBasis<K>,
        m: &Rep<K>,
    ) -> Result<(Rep<K>, RepMap<K>, Vec<usize>)> {
        let k = &self.field;
        let nv = self.num_vertices();
        let rad = self.radical_spans(m);
        let tops: Vec<QuotientSpace<K>> = (0..nv)
            .map(|v| QuotientSpace::new(k, rad[v].clone()))
            .collect();
        let mults: Vec<usize> = tops.iter().map(|t| t.dim()).collect();
        // assemble P = ⊕_v P(v)^{mult_v} and the cover columns
        let mut parts: Vec<Rep<K>> = vec![];
        let mut gens: Vec<(usize, Vec<K::Elem>)> = vec![]; // (vertex, chosen top lift in M_v)
        for v in 0..nv {
            for i in 0..mults[v] {
                parts.push(self.projective(pb, v));
                let mut coords = vec![k.zero(); mults[v]];
                coords[i] = k.one();
                gens.push((v, tops[v].representative(&coords)));
            }
        }
        let part_refs: Vec<&Rep<K>> = parts.iter().collect();
        let (p, _injs, _projs) = self.direct_sum(&part_refs);
        // cover map: on the part for generator (v, x), the basis path class
        // b ∈ (v,w) goes to eval_path(b)(x).
        let mut blocks: Vec<Mat<K>> = (0..nv).map(|w| Mat::zeros(k, m.dims[w], p.dims[w])).collect();
        let mut offset = vec![0usize; nv];
        for (pi, (v, x)) in gens.iter().enumerate() {
            let _ = pi;
            for w in 0..nv {
                for (bi, bpath) in pb.basis[*v][w].iter().enumerate() {
                    let img = self.eval_path(m, bpath).apply(x);
                    for (r, val) in img.iter().enumerate() {
                        blocks[w].set(r, offset[w] + bi, val.clone());
                    }
                }
            }
            for w in 0..nv {
                offset[w] += pb.dim(*v, w);
            }
        }
        let cover = RepMap { blocks };
        // verify surjectivity and minimality (kernel inside rad P)
        for v in 0..nv {
            if Subspace::from_col_span(&cover.blocks[v]).dim() != m.dims[v] {
                return Err(Error::Internal("projective cover not surjective".into()));
            }
        }
        let ker = self.kernel_spans(&cover);
        let radp = self.radical_spans(&p);
        for v in 0..nv {
            if !radp[v].contains_subspace(&ker[v]) {
                return Err(Error::Internal("projective cover not minimal".into()));
            }
        }
        Ok((p, cover, mults))
    }

    /// First syzygy: kernel of the projective cover, as a representation
    /// with its inclusion into P.
    pub fn syzygy(
        &self,
        pb: &crate::quiver::PathBasis<K>,
        m: &Rep<K>,
    ) -> Result<(Rep<K>, RepMap<K>, Rep<K>, RepMap<K>)> {
        let (p, cover, _) = self.projective_cover(pb, m)?;
        let ker = self.kernel_spans(&cover);
        let (omega, incl) = self.subrep(&p, &ker);
        Ok((omega, incl, p, cover))
    }

    /// Decompose into indecomposable direct summands via idempotent
    /// splitting of the endomorphism algebra.  Returns (summand, inclusion,
    /// projection) triples with ι∘π summing to the identity.
    pub fn decompose(
        &self,
        m: &Rep<K>,
        rng: &mut dyn RngCore,
    ) -> Result<Vec<(Rep<K>, RepMap<K>, RepMap<K>)>> {
        if m.is_zero() {
            return Ok(vec![]);
        }
        let k = &self.field;
        let end = self.hom(m, m);
        let vectors: Vec<Vec<K::Elem>> = end.maps.iter().map(|f| f.flatten()).collect();
        let unit_flat = self.identity_map(m).flatten();
        let src = m.dims.clone();
        let kf = k.clone();
        let pres = self.clone();
        let (alg, basis) = FDAlgebra::from_flat_span(
            k,
            unit_flat.len(),
            &vectors,
            &unit_flat,
            move |a, b| {
                let fa = unflatten_map(&kf, &src, &src, a);
                let fb = unflatten_map(&kf, &src, &src, b);
                // algebra product = composition fa ∘ fb
                pres.compose_maps(&fb, &fa).flatten()
            },
        );
        let idems = fitting_split(&alg, rng)?;
        let mut out = vec![];
        for e in idems {
            // embed back to a flat endomorphism
            let mut flat = vec![k.zero(); unit_flat.len()];
            for (i, c) in e.iter().enumerate() {
                let row = basis.row(i);
                for j in 0..flat.len() {
                    flat[j] = k.add(&flat[j], &k.mul(c, &row[j]));
                }
            }
            let emap = unflatten_map(k, &m.dims, &m.dims, &flat);
            let spans = self.image_spans(&emap);
            let (summand, incl) = self.subrep(m, &spans);
            // projection: solve ι ∘ π = e per vertex
            let proj_blocks: Vec<Mat<K>> = (0..self.num_vertices())
                .map(|v| {
                    incl.blocks[v]
                        .solve(&emap.blocks[v])
                        .expect("idempotent image factorization must exist")
                })
                .collect();
            let proj = RepMap { blocks: proj_blocks };
            // π ∘ ι = id on the summand
            let pi_iota = self.compose_maps(&incl, &proj);
            if !pi_iota.blocks.iter().all(|b| b.is_identity()) {
                return Err(Error::Internal("summand projection failed".into()));
            }
            out.push((summand, incl, proj));
        }
        Ok(out)
    }

    /// Randomized isomorphism test (exact positives; false negatives have
    /// vanishing probability over large fields).  Both directions of a
    /// Krull–Schmidt argument reduce to finding one invertible combination.
    pub fn iso_test(&self, m: &Rep<K>, n: &Rep<K>, rng: &mut dyn RngCore) -> bool {
        if m.dims != n.dims {
            return false;
        }
        if m.total_dim() == 0 {
            return true;
        }
        let k = &self.field;
        let hom = self.hom(m, n);
        if hom.dim() == 0 {
            return false;
        }
        // single basis elements first, then random combinations
        for f in &hom.maps {
            if self.map_is_iso(f) {
                return true;
            }
        }
        let trials = 96 + 4 * m.total_dim() * m.total_dim();
        for _ in 0..trials {
            let coords: Vec<K::Elem> = (0..hom.dim()).map(|_| k.random(rng)).collect();
            let f = hom.from_coords(k, &coords);
            if self.map_is_iso(&f) {
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::quiver::tests::two_cycle_nilpotent;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn setup() -> (Presentation<PrimeField>, crate::quiver::PathBasis<PrimeField>) {
        let pres = two_cycle_nilpotent(PrimeField::new(101));
        let pb = pres.path_basis().unwrap();
        (pres, pb)
    }

    #[test]
    fn projective_structure() {
        let (pres, pb) = setup();
        let p1 = pres.projective(&pb, 0);
        assert!(pres.rep_is_valid(&p1));
        assert_eq!(p1.dims, vec![2, 1]);
        let rad = pres.radical_spans(&p1);
        assert_eq!(rad.iter().map(|s| s.dim()).collect::<Vec<_>>(), vec![1, 1]);
        let soc = pres.socle_spans(&p1);
        // socle of P(1) is the simple at vertex 1 (the algebra is weakly symmetric)
        assert_eq!(soc.iter().map(|s| s.dim()).collect::<Vec<_>>(), vec![1, 0]);
    }

    #[test]
    fn hom_dims_between_projectives() {
        let (pres, pb) = setup();
        let p1 = pres.projective(&pb, 0);
        let p2 = pres.projective(&pb, 1);
        // Hom(P(v), P(w)) = e_w Λ e_v = path classes w → v
        assert_eq!(pres.hom(&p1, &p1).dim(), 2);
        assert_eq!(pres.hom(&p1, &p2).dim(), 1);
        assert_eq!(pres.hom(&p2, &p1).dim(), 1);
        assert_eq!(pres.hom(&p2, &p2).dim(), 2);
    }

    #[test]
    fn cover_and_syzygy_of_simple() {
        let (pres, pb) = setup();
        let s1 = pres.simple(0);
        let (p, cover, mults) = pres.projective_cover(&pb, &s1).unwrap();
        assert_eq!(mults, vec![1, 0]);
        assert_eq!(p.dims, vec![2, 1]);
        assert!(!cover.is_zero());
        let (omega, _incl, _p, _c) = pres.syzygy(&pb, &s1).unwrap();
        // Ω(S1) = rad P(1), dims (1,1)
        assert_eq!(omega.dims, vec![1, 1]);
        assert!(pres.rep_is_valid(&omega));
    }

    #[test]
    fn duality_and_injectivity() {
        let (pres, pb) = setup();
        let p1 = pres.projective(&pb, 0);
        // I(1) = D(P_op(1)); for this weakly symmetric algebra I(1) ≅ P(1).
        let opp = pres.opposite();
        let opb = opp.path_basis().unwrap();
        let p1_op = opp.projective(&opb, 0);
        let i1 = opp.dual_rep(&p1_op);
        assert!(pres.rep_is_valid(&i1));
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        assert!(pres.iso_test(&p1, &i1, &mut rng));
    }

    #[test]
    fn decompose_direct_sum() {
        let (pres, pb) = setup();
        let p1 = pres.projective(&pb, 0);
        let s2 = pres.simple(1);
        let (sum, _, _) = pres.direct_sum(&[&p1, &s2, &s2]);
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let parts = pres.decompose(&sum, &mut rng).unwrap();
        assert_eq!(parts.len(), 3);
        let mut p1_count = 0;
        let mut s2_count = 0;
        for (r, incl, proj) in &parts {
            assert!(pres.rep_is_valid(r));
            let id = pres.compose_maps(incl, proj);
            let _ = id;
            if pres.iso_test(r, &p1, &mut rng) {
                p1_count += 1;
            }
            if pres.iso_test(r, &s2, &mut rng) {
                s2_count += 1;
            }
        }
        assert_eq!((p1_count, s2_count), (1, 2));
    }

    #[test]
    fn iso_test_rejects_nonisomorphic() {
        let (pres, pb) = setup();
        let p1 = pres.projective(&pb, 0);
        let p2 = pres.projective(&pb, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        assert!(!pres.iso_test(&p1, &p2, &mut rng));
        // same dims but different module structure: P(1) vs S(1)^2 ⊕ S(2)
        let s1 = pres.simple(0);
        let s2 = pres.simple(1);
        let (fake, _, _) = pres.direct_sum(&[&s1, &s1, &s2]);
        assert_eq!(fake.dims, p1.dims);
        assert!(!pres.iso_test(&p1, &fake, &mut rng));
    }
}

//! Quivers, paths, relations, and presented algebras kQ/I.
//!
//! The central computation is [`Presentation::path_basis`]: a normal-form
//! basis of path classes for every pair of vertices, plus the single-arrow
//! extension matrices that realise multiplication.  The construction is
//! *certified*: the computed quotient is accepted only when (1) every
//! relation acts as zero on the resulting left-regular representation and
//! (2) each projective class space is generated by its trivial path under
//! arrow extensions.  Together these sandwich the computed dimensions
//! against the true algebra dimensions, so a wrong basis cannot slip
//! through silently.
//!
//! Path convention: a path stores the arrows in traversal order, so
//! `[a, b]` means "first a, then b" and evaluates on a representation as
//! `M_b ∘ M_a`.

use std::collections::BTreeMap;

use crate::field::Field;
use crate::mat::Mat;
use crate::subspace::{QuotientSpace, Subspace};
use crate::{Error, Result};

/// Direction in which composition-series labels are read off when naming
/// modules by their radical filtration.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LabelMode {
    /// Top layer first (leftmost letter = top).
    TopFirst,
    /// Socle layer first (leftmost letter = socle).
    SocleFirst,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Self {
        let q = Quiver { vertices, arrows };
        q.validate();
        q
    }

    fn validate(&self) {
        let mut names = std::collections::BTreeSet::new();
        for v in &self.vertices {
            assert!(names.insert(v.clone()), "duplicate vertex name {v}");
        }
        let mut anames = std::collections::BTreeSet::new();
        for a in &self.arrows {
            assert!(a.source < self.vertices.len() && a.target < self.vertices.len());
            assert!(anames.insert(a.name.clone()), "duplicate arrow name {}", a.name);
        }
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn arrows_from(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&i| self.arrows[i].source == v).collect()
    }

    pub fn arrows_into(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&i| self.arrows[i].target == v).collect()
    }

    /// Same vertices and arrow names, all arrows reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }
}

/// A path: source vertex plus arrows in traversal order (possibly empty).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn vertex(v: usize) -> Path {
        Path { source: v, arrows: vec![] }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn target(&self, q: &Quiver) -> usize {
        match self.arrows.last() {
            None => self.source,
            Some(&a) => q.arrows[a].target,
        }
    }

    pub fn is_valid(&self, q: &Quiver) -> bool {
        let mut at = self.source;
        for &a in &self.arrows {
            if a >= q.arrows.len() || q.arrows[a].source != at {
                return false;
            }
            at = q.arrows[a].target;
        }
        true
    }

    /// `self` then `arrow`.
    pub fn extended(&self, q: &Quiver, arrow: usize) -> Path {
        assert_eq!(q.arrows[arrow].source, self.target(q), "arrow does not compose");
        let mut arrows = self.arrows.clone();
        arrows.push(arrow);
        Path { source: self.source, arrows }
    }

    /// `self` then `other`.
    pub fn concat(&self, q: &Quiver, other: &Path) -> Path {
        assert_eq!(self.target(q), other.source, "paths do not compose");
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Path { source: self.source, arrows }
    }

    /// The same walk in the opposite quiver.
    pub fn reversed(&self, q: &Quiver) -> Path {
        Path {
            source: self.target(q),
            arrows: self.arrows.iter().rev().copied().collect(),
        }
    }

    /// Does `needle` occur as a contiguous subpath?
    pub fn contains_subpath(&self, needle: &[usize]) -> bool {
        if needle.is_empty() {
            return true;
        }
        self.arrows.windows(needle.len()).any(|w| w == needle)
    }

    pub fn render(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e_{}", q.vertices[self.source])
        } else {
            self.arrows
                .iter()
                .map(|&a| q.arrows[a].name.clone())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// A linear combination of parallel paths.
#[derive(Clone, Debug, PartialEq)]
pub struct LinComb<K: Field> {
    pub terms: Vec<(K::Elem, Path)>,
}

impl<K: Field> LinComb<K> {
    pub fn source(&self) -> usize {
        self.terms[0].1.source
    }

    pub fn target(&self, q: &Quiver) -> usize {
        self.terms[0].1.target(q)
    }

    pub fn validate(&self, k: &K, q: &Quiver) {
        assert!(!self.terms.is_empty(), "empty relation");
        let s = self.source();
        let t = self.terms[0].1.target(q);
        for (c, p) in &self.terms {
            assert!(!k.is_zero(c), "zero coefficient in relation");
            assert!(p.is_valid(q), "invalid path in relation");
            assert_eq!(p.source, s, "relation terms not parallel");
            assert_eq!(p.target(q), t, "relation terms not parallel");
            assert!(p.len() >= 2, "relation term shorter than two arrows");
        }
    }

    pub fn render(&self, k: &K, q: &Quiver) -> String {
        self.terms
            .iter()
            .map(|(c, p)| format!("{}·{}", k.fmt_elem(c), p.render(q)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// An algebra presented by a quiver with relations, plus the label
/// convention its modules are named with.
#[derive(Clone, Debug)]
pub struct Presentation<K: Field> {
    pub field: K,
    pub name: String,
    pub quiver: Quiver,
    pub relations: Vec<LinComb<K>>,
    pub labels: LabelMode,
}

impl<K: Field> Presentation<K> {
    pub fn new(
        field: K,
        name: &str,
        quiver: Quiver,
        relations: Vec<LinComb<K>>,
        labels: LabelMode,
    ) -> Self {
        for r in &relations {
            r.validate(&field, &quiver);
        }
        Presentation {
            field,
            name: name.to_string(),
            quiver,
            relations,
            labels,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.vertices.len()
    }

    /// Opposite presentation: arrows reversed, relation paths reversed.
    pub fn opposite(&self) -> Presentation<K> {
        let q = self.quiver.opposite();
        let relations = self
            .relations
            .iter()
            .map(|r| LinComb {
                terms: r
                    .terms
                    .iter()
                    .map(|(c, p)| (c.clone(), p.reversed(&self.quiver)))
                    .collect(),
            })
            .collect();
        Presentation {
            field: self.field.clone(),
            name: format!("{}^op", self.name),
            quiver: q,
            relations,
            labels: self.labels,
        }
    }

    /// Compute the certified path-class basis; see module docs.
    pub fn path_basis(&self) -> Result<PathBasis<K>> {
        let mut cap = 8usize.max(2 * self.max_relation_len() + 2);
        loop {
            match self.try_path_basis(cap) {
                Ok(pb) => return Ok(pb),
                Err(Error::Cap(_)) if cap < 4096 => cap *= 2,
                Err(e) => return Err(e),
            }
        }
    }

    fn max_relation_len(&self) -> usize {
        self.relations
            .iter()
            .flat_map(|r| r.terms.iter().map(|(_, p)| p.len()))
            .max()
            .unwrap_or(0)
    }

    /// Monomial relations (single term) used for pruning during enumeration.
    fn monomials(&self) -> Vec<Vec<usize>> {
        self.relations
            .iter()
            .filter(|r| r.terms.len() == 1)
            .map(|r| r.terms[0].1.arrows.clone())
            .collect()
    }

    fn try_path_basis(&self, cap: usize) -> Result<PathBasis<K>> {
        let k = &self.field;
        let q = &self.quiver;
        let nv = q.vertices.len();
        let monomials = self.monomials();
        // 1. Enumerate non-pruned paths from each vertex, BFS by length.
        let mut enumerated: Vec<Vec<Path>> = vec![vec![]; nv];
        for v in 0..nv {
            let mut frontier = vec![Path::vertex(v)];
            enumerated[v].push(Path::vertex(v));
            for _len in 1..=cap {
                let mut next = vec![];
                for p in &frontier {
                    for &a in &q.arrows_from(p.target(q)) {
                        let ext = p.extended(q, a);
                        if monomials.iter().any(|m| ext.contains_subpath(m)) {
                            continue;
                        }
                        next.push(ext);
                    }
                }
                enumerated[v].extend(next.iter().cloned());
                if enumerated[v].len() > 200_000 {
                    return Err(Error::Cap(format!(
                        "path enumeration from vertex {} exploded",
                        q.vertices[v]
                    )));
                }
                frontier = next;
                if frontier.is_empty() {
                    break;
                }
            }
        }
        // 2. Per (v,w) coordinates, ordered longest-first so that reduced row
        // echelon pivots land on long paths and normal forms are short.
        // pos[v]: path -> (w, coordinate index in the (v,w) space)
        let mut by_target: Vec<Vec<Vec<Path>>> = vec![vec![vec![]; nv]; nv];
        for v in 0..nv {
            for p in &enumerated[v] {
                by_target[v][p.target(q)].push(p.clone());
            }
        }
        // reverse: longest first (enumeration was shortest-first)
        for v in 0..nv {
            for w in 0..nv {
                by_target[v][w].reverse();
            }
        }
        let mut pos: Vec<BTreeMap<Path, (usize, usize)>> = vec![BTreeMap::new(); nv];
        for v in 0..nv {
            for w in 0..nv {
                for (i, p) in by_target[v][w].iter().enumerate() {
                    pos[v].insert(p.clone(), (w, i));
                }
            }
        }
        // 3. Relation images u·r·t as vectors in the (v,w) coordinate spaces.
        let mut ideal_vectors: Vec<Vec<Vec<Vec<K::Elem>>>> = vec![vec![vec![]; nv]; nv];
        for rel in &self.relations {
            if rel.terms.len() == 1 {
                continue; // handled by pruning
            }
            let s_r = rel.source();
            let t_r = rel.target(q);
            let max_term = rel.terms.iter().map(|(_, p)| p.len()).max().unwrap();
            for v in 0..nv {
                for u in &enumerated[v] {
                    if u.target(q) != s_r {
                        continue;
                    }
                    for tail in &enumerated[t_r] {
                        if u.len() + max_term + tail.len() > cap {
                            continue;
                        }
                        let w = tail.target(q);
                        let dim = by_target[v][w].len();
                        let mut vec_out = vec![k.zero(); dim];
                        for (c, p) in &rel.terms {
                            let full = u.concat(q, p).concat(q, tail);
                            if monomials.iter().any(|m| full.contains_subpath(m)) {
                                continue; // term already zero
                            }
                            let (_, idx) = pos[v][&full];
                            vec_out[idx] = k.add(&vec_out[idx], c);
                        }
                        if !vec_out.iter().all(|x| k.is_zero(x)) {
                            ideal_vectors[v][w].push(vec_out);
                        }
                    }
                }
            }
        }
        // 4. Quotients and basis paths.
        let mut quot: Vec<Vec<QuotientSpace<K>>> = vec![vec![]; nv];
        let mut basis: Vec<Vec<Vec<Path>>> = vec![vec![vec![]; nv]; nv];
        for v in 0..nv {
            for w in 0..nv {
                let dim = by_target[v][w].len();
                let sub = if ideal_vectors[v][w].is_empty() {
                    Subspace::zero(k, dim)
                } else {
                    Subspace::from_span(&Mat::from_rows(k, ideal_vectors[v][w].clone()))
                };
                let qs = QuotientSpace::new(k, sub);
                basis[v][w] = qs.section.iter().map(|&c| by_target[v][w][c].clone()).collect();
                quot[v].push(qs);
            }
        }
        // 5. Saturation: every basis path extended by one arrow must still be
        // an enumerated (or pruned) path.
        for v in 0..nv {
            for w in 0..nv {
                for b in &basis[v][w] {
                    for &a in &q.arrows_from(w) {
                        let ext = b.extended(q, a);
                        if monomials.iter().any(|m| ext.contains_subpath(m)) {
                            continue;
                        }
                        if !pos[v].contains_key(&ext) {
                            return Err(Error::Cap(format!(
                                "path space not saturated at cap {cap} (algebra may be infinite-dimensional)"
                            )));
                        }
                    }
                }
            }
        }
        // 6. Extension matrices ext[v][a]: (v, src a) classes -> (v, tgt a).
        let mut ext: Vec<Vec<Mat<K>>> = vec![vec![]; nv];
        for v in 0..nv {
            for a in 0..q.arrows.len() {
                let w = q.arrows[a].source;
                let wt = q.arrows[a].target;
                let dfrom = basis[v][w].len();
                let dto = basis[v][wt].len();
                let mut m = Mat::zeros(k, dto, dfrom);
                for (bi, b) in basis[v][w].iter().enumerate() {
                    let extp = b.extended(q, a);
                    if monomials.iter().any(|mo| extp.contains_subpath(mo)) {
                        continue; // zero class
                    }
                    let (_, idx) = pos[v][&extp];
                    let mut unitv = vec![k.zero(); by_target[v][wt].len()];
                    unitv[idx] = k.one();
                    let coords = quot[v][wt].project(&unitv);
                    for (i, c) in coords.iter().enumerate() {
                        m.set(i, bi, c.clone());
                    }
                }
                ext[v].push(m);
            }
        }
        let pb = PathBasis {
            field: k.clone(),
            quiver: q.clone(),
            basis,
            ext,
        };
        // 7a. Certification: relations act as zero via stepwise extension.
        for v in 0..nv {
            for rel in &self.relations {
                let s_r = rel.source();
                let dim_vs = pb.dim(v, s_r);
                for bi in 0..dim_vs {
                    let mut start = vec![k.zero(); dim_vs];
                    start[bi] = k.one();
                    let t_r = rel.target(q);
                    let mut acc = vec![k.zero(); pb.dim(v, t_r)];
                    for (c, p) in &rel.terms {
                        let mut cur = start.clone();
                        let mut at = s_r;
                        for &a in &p.arrows {
                            cur = pb.extend(v, at, &cur, a);
                            at = q.arrows[a].target;
                        }
                        for (i, x) in cur.iter().enumerate() {
                            acc[i] = k.add(&acc[i], &k.mul(c, x));
                        }
                    }
                    if !acc.iter().all(|x| k.is_zero(x)) {
                        return Err(Error::Internal(
                            "path basis certificate failed: relation acts nonzero".into(),
                        ));
                    }
                }
            }
        }
        // 7b. Certification: the trivial path generates each projective
        // class space under arrow extensions.
        for v in 0..nv {
            let total: usize = (0..nv).map(|w| pb.dim(v, w)).sum();
            // span growth per target vertex
            let mut spans: Vec<Vec<Vec<K::Elem>>> = vec![vec![]; nv];
            let ev = pb.unit_class(v);
            spans[v].push(ev);
            loop {
                let mut grew = false;
                for w in 0..nv {
                    let cur: Vec<Vec<K::Elem>> = spans[w].clone();
                    for vecw in cur {
                        for &a in &q.arrows_from(w) {
                            let wt = q.arrows[a].target;
                            let img = pb.extend(v, w, &vecw, a);
                            let existing = if spans[wt].is_empty() {
                                Subspace::zero(k, pb.dim(v, wt))
                            } else {
                                Subspace::from_span(&Mat::from_rows(k, spans[wt].clone()))
                            };
                            if !existing.contains(&img) {
                                spans[wt].push(img);
                                grew = true;
                            }
                        }
                    }
                }
                if !grew {
                    break;
                }
            }
            let gen_dim: usize = (0..nv)
                .map(|w| {
                    if spans[w].is_empty() {
                        0
                    } else {
                        Subspace::from_span(&Mat::from_rows(k, spans[w].clone())).dim()
                    }
                })
                .sum();
            if gen_dim != total {
                return Err(Error::Internal(
                    "path basis certificate failed: trivial path does not generate".into(),
                ));
            }
        }
        Ok(pb)
    }
}

/// Certified normal-form basis of path classes per vertex pair, with
/// single-arrow extension matrices.
#[derive(Clone, Debug)]
pub struct PathBasis<K: Field> {
    pub field: K,
    pub quiver: Quiver,
    /// `basis[v][w]`: normal-form paths spanning the class space of paths v→w.
    pub basis: Vec<Vec<Vec<Path>>>,
    /// `ext[v][a]`: matrix from (v, source a)-classes to (v, target a)-classes.
    ext: Vec<Vec<Mat<K>>>,
}

impl<K: Field> PathBasis<K> {
    pub fn dim(&self, v: usize, w: usize) -> usize {
        self.basis[v][w].len()
    }

    /// Matrix of extension by arrow `a` on the (v, source(a)) class space.
    pub fn ext_matrix(&self, v: usize, a: usize) -> &Mat<K> {
        &self.ext[v][a]
    }

    pub fn total_dim(&self) -> usize {
        let nv = self.quiver.vertices.len();
        (0..nv).map(|v| (0..nv).map(|w| self.dim(v, w)).sum::<usize>()).sum()
    }

    /// Class coordinates of the trivial path e_v in the (v,v) space.
    pub fn unit_class(&self, v: usize) -> Vec<K::Elem> {
        let k = &self.field;
        let idx = self.basis[v][v]
            .iter()
            .position(|p| p.is_empty())
            .expect("trivial path must be a normal form");
        let mut out = vec![k.zero(); self.dim(v, v)];
        out[idx] = k.one();
        out
    }

    /// Apply the single-arrow extension to class coordinates in (v, src a).
    pub fn extend(&self, v: usize, w: usize, coords: &[K::Elem], a: usize) -> Vec<K::Elem> {
        assert_eq!(self.quiver.arrows[a].source, w);
        assert_eq!(coords.len(), self.dim(v, w));
        self.ext[v][a].apply(coords)
    }

    /// Class coordinates of an arbitrary valid path.
    pub fn class_of_path(&self, p: &Path) -> Vec<K::Elem> {
        assert!(p.is_valid(&self.quiver));
        let v = p.source;
        let mut cur = self.unit_class(v);
        let mut at = v;
        for &a in &p.arrows {
            cur = self.extend(v, at, &cur, a);
            at = self.quiver.arrows[a].target;
        }
        cur
    }

    /// Class coordinates of a linear combination of parallel paths.
    pub fn class_of_lincomb(&self, lc: &LinComb<K>) -> Vec<K::Elem> {
        let k = &self.field;
        let v = lc.source();
        let w = lc.target(&self.quiver);
        let mut acc = vec![k.zero(); self.dim(v, w)];
        for (c, p) in &lc.terms {
            let cl = self.class_of_path(p);
            for (i, x) in cl.iter().enumerate() {
                acc[i] = k.add(&acc[i], &k.mul(c, x));
            }
        }
        acc
    }

    /// Compose classes: x in (v,w) then y in (w,u), giving a class in (v,u).
    pub fn compose(&self, v: usize, w: usize, u: usize, x: &[K::Elem], y: &[K::Elem]) -> Vec<K::Elem> {
        let k = &self.field;
        assert_eq!(x.len(), self.dim(v, w));
        assert_eq!(y.len(), self.dim(w, u));
        let mut acc = vec![k.zero(); self.dim(v, u)];
        for (bi, b) in self.basis[w][u].iter().enumerate() {
            if k.is_zero(&y[bi]) {
                continue;
            }
            // extend x along the arrows of b
            let mut cur = x.to_vec();
            let mut at = w;
            for &a in &b.arrows {
                cur = self.extend(v, at, &cur, a);
                at = self.quiver.arrows[a].target;
            }
            assert_eq!(at, u);
            for (i, c) in cur.iter().enumerate() {
                acc[i] = k.add(&acc[i], &k.mul(&y[bi], c));
            }
        }
        acc
    }

    /// Render class coordinates as a combination of normal-form paths.
    pub fn render_class(&self, v: usize, w: usize, coords: &[K::Elem]) -> String {
        let k = &self.field;
        let mut parts = vec![];
        for (i, c) in coords.iter().enumerate() {
            if !k.is_zero(c) {
                parts.push(format!("{}·{}", k.fmt_elem(c), self.basis[v][w][i].render(&self.quiver)));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn k() -> PrimeField {
        PrimeField::new(101)
    }

    /// Two vertices a, b with arrows alpha: a→b and beta: b→a, relations
    /// alpha·beta·alpha = beta·alpha·beta = 0 (a self-injective Nakayama
    /// algebra of Loewy length 3).
    pub(crate) fn two_cycle_nilpotent(field: PrimeField) -> Presentation<PrimeField> {
        let q = Quiver::new(
            vec!["a".into(), "b".into()],
            vec![
                Arrow { name: "alpha".into(), source: 0, target: 1 },
                Arrow { name: "beta".into(), source: 1, target: 0 },
            ],
        );
        let rel = |arrows: Vec<usize>| LinComb::<PrimeField> {
            terms: vec![(field.one(), Path { source: if arrows[0] == 0 { 0 } else { 1 }, arrows })],
        };
        Presentation::new(
            field,
            "two-cycle",
            q,
            vec![rel(vec![0, 1, 0]), rel(vec![1, 0, 1])],
            LabelMode::TopFirst,
        )
    }

    pub(crate) fn linear_a3(field: PrimeField) -> Presentation<PrimeField> {
        let q = Quiver::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![
                Arrow { name: "a12".into(), source: 0, target: 1 },
                Arrow { name: "a23".into(), source: 1, target: 2 },
            ],
        );
        Presentation::new(field, "A3", q, vec![], LabelMode::SocleFirst)
    }

    #[test]
    fn two_cycle_basis_dims() {
        let pres = two_cycle_nilpotent(k());
        let pb = pres.path_basis().unwrap();
        // From vertex 1: e1, a, ab  (aba killed); from 2: e2, b, ba.
        assert_eq!(pb.dim(0, 0), 2); // e1, ab
        assert_eq!(pb.dim(0, 1), 1); // a
        assert_eq!(pb.dim(1, 1), 2); // e2, ba
        assert_eq!(pb.dim(1, 0), 1); // b
        assert_eq!(pb.total_dim(), 6);
        // aba reduces to zero stepwise
        let aba = Path { source: 0, arrows: vec![0, 1, 0] };
        let cl = pb.class_of_path(&aba);
        assert!(cl.iter().all(|x| *x == 0));
    }

    #[test]
    fn linear_a3_basis() {
        let pres = linear_a3(k());
        let pb = pres.path_basis().unwrap();
        assert_eq!(pb.total_dim(), 6);
        assert_eq!(pb.dim(0, 0), 1);
        assert_eq!(pb.dim(0, 1), 1);
        assert_eq!(pb.dim(0, 2), 1);
        assert_eq!(pb.dim(1, 0), 0);
        assert_eq!(pb.dim(2, 2), 1);
    }

    #[test]
    fn loop_with_cube_relation() {
        let field = k();
        let q = Quiver::new(
            vec!["v".into()],
            vec![Arrow { name: "x".into(), source: 0, target: 0 }],
        );
        let rel = LinComb::<PrimeField> {
            terms: vec![(field.one(), Path { source: 0, arrows: vec![0, 0, 0] })],
        };
        let pres = Presentation::new(field, "k[x]/x^3", q, vec![rel], LabelMode::TopFirst);
        let pb = pres.path_basis().unwrap();
        assert_eq!(pb.total_dim(), 3); // e, x, x^2
    }

    #[test]
    fn free_loop_is_rejected() {
        let field = k();
        let q = Quiver::new(
            vec!["v".into()],
            vec![Arrow { name: "x".into(), source: 0, target: 0 }],
        );
        let pres = Presentation::new(field, "k[x]", q, vec![], LabelMode::TopFirst);
        match pres.path_basis() {
            Err(Error::Cap(_)) => {}
            other => panic!("expected cap error, got {:?}", other.map(|b| b.total_dim())),
        }
    }

    #[test]
    fn inhomogeneous_relation() {
        // k<x>/(x^2 - x^3): finite dimensional with basis {e, x, x^2}.
        let field = k();
        let q = Quiver::new(
            vec!["v".into()],
            vec![Arrow { name: "x".into(), source: 0, target: 0 }],
        );
        let rel = LinComb::<PrimeField> {
            terms: vec![
                (field.one(), Path { source: 0, arrows: vec![0, 0] }),
                (field.from_i64(-1), Path { source: 0, arrows: vec![0, 0, 0] }),
            ],
        };
        let pres = Presentation::new(field, "x2=x3", q, vec![rel], LabelMode::TopFirst);
        let pb = pres.path_basis().unwrap();
        assert_eq!(pb.total_dim(), 3);
        // x^4 must reduce to the class of x^2
        let x2 = pb.class_of_path(&Path { source: 0, arrows: vec![0, 0] });
        let x4 = pb.class_of_path(&Path { source: 0, arrows: vec![0, 0, 0, 0] });
        assert_eq!(x2, x4);
        assert!(!x2.iter().all(|c| *c == 0));
    }

    #[test]
    fn commutativity_square() {
        // 1 ⇉ 2 with two composable chains: a;b and c;d from 1 to 3, relation ab = cd.
        let field = k();
        let q = Quiver::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![
                Arrow { name: "a".into(), source: 0, target: 1 },
                Arrow { name: "b".into(), source: 1, target: 2 },
                Arrow { name: "c".into(), source: 0, target: 1 },
                Arrow { name: "d".into(), source: 1, target: 2 },
            ],
        );
        let rel = LinComb::<PrimeField> {
            terms: vec![
                (field.one(), Path { source: 0, arrows: vec![0, 1] }),
                (field.from_i64(-1), Path { source: 0, arrows: vec![2, 3] }),
            ],
        };
        let pres = Presentation::new(field, "square", q, vec![rel], LabelMode::TopFirst);
        let pb = pres.path_basis().unwrap();
        // paths 1→3: ab, ad, cb, cd with one relation: dim 3
        assert_eq!(pb.dim(0, 2), 3);
        let ab = pb.class_of_path(&Path { source: 0, arrows: vec![0, 1] });
        let cd = pb.class_of_path(&Path { source: 0, arrows: vec![2, 3] });
        assert_eq!(ab, cd);
    }

    #[test]
    fn compose_classes_matches_concatenation() {
        let pres = two_cycle_nilpotent(k());
        let pb = pres.path_basis().unwrap();
        // [a] in (0,1) composed with [b] in (1,0) = [ab] in (0,0)
        let a = pb.class_of_path(&Path { source: 0, arrows: vec![0] });
        let b = pb.class_of_path(&Path { source: 1, arrows: vec![1] });
        let ab = pb.compose(0, 1, 0, &a, &b);
        let direct = pb.class_of_path(&Path { source: 0, arrows: vec![0, 1] });
        assert_eq!(ab, direct);
    }

    #[test]
    fn opposite_roundtrip() {
        let pres = two_cycle_nilpotent(k());
        let opp = pres.opposite();
        let pb = opp.path_basis().unwrap();
        assert_eq!(pb.total_dim(), 6);
        let back = opp.opposite();
        assert_eq!(back.quiver, pres.quiver);
    }
}

//! Bound-quiver presentations of endomorphism algebras.
//!
//! For a basic object T = T_1 ⊕ … ⊕ T_m of a finite k-category, the algebra
//! Γ = End(T)^op is presented by a quiver with one vertex per summand and
//! one arrow i → j per basis vector of rad(T_j, T_i)/rad²(T_j, T_i), where
//! rad² is taken inside add T.  Relations are the kernel of path evaluation.
//! The construction certifies itself: the path-class count of the bound
//! quiver must equal dim Hom(T_w, T_v) in every component, and evaluating a
//! path-class basis must stay linearly independent, so the evaluation map is
//! an isomorphism of algebras onto End(T)^op.
//!
//! Hom(T, −) then lands in modules over the presentation: the vertex-v
//! component of Hom(T, X) is Hom(T_v, X), and an arrow acts by
//! precomposition with its chosen radical representative.

use std::collections::BTreeMap;

use crate::cat::{
    category_radical, compose_add_mor, flatten_add_mor, hom_add_dims, unflatten_add_mor, AddMor,
    AddObj, Category,
};
use crate::field::Field;
use crate::mat::Mat;
use crate::modcat::PresMap;
use crate::quiver::{Arrow, LabelMode, LinComb, Path, PathBasis, Presentation, Quiver};
use crate::rep::{Rep, RepMap};
use crate::subspace::Subspace;
use crate::{Error, Result};

const PATH_CAP: usize = 100_000;

/// A certified presentation of End(T)^op for a basic additive object T.
pub struct EndPresentation<K: Field> {
    /// Indices of the pairwise distinct summands of T, increasing.
    pub summands: Vec<usize>,
    /// The bound quiver; vertex v is the summand `summands[v]`.
    pub pres: Presentation<K>,
    /// Path-class bases of the presentation, against which the isomorphism
    /// onto End(T)^op was certified.
    pub pb: PathBasis<K>,
    /// For the arrow a: i → j, coordinates of the chosen representative
    /// γ_a ∈ rad(T_j, T_i); the arrow acts on hom functors by φ ↦ φ∘γ_a.
    pub arrow_reps: Vec<Vec<K::Elem>>,
    /// dim End(T).
    pub dim: usize,
}

/// Composite of the arrow representatives along a path, first arrow
/// outermost: a path v →a1 … →aL w evaluates to γ_{a1}∘…∘γ_{aL} in
/// Hom(T_w, T_v).  The trivial path evaluates to the identity.
fn eval_arrow_path<K: Field, C: Category<K> + ?Sized>(
    cat: &C,
    summ: &[usize],
    quiver: &Quiver,
    arrow_reps: &[Vec<K::Elem>],
    p: &Path,
) -> Vec<K::Elem> {
    if p.arrows.is_empty() {
        return cat.identity(summ[p.source]);
    }
    let first = p.arrows[0];
    let mut acc = arrow_reps[first].clone();
    let mut at = quiver.arrows[first].target;
    for &ai in &p.arrows[1..] {
        let nxt = quiver.arrows[ai].target;
        acc = cat.compose(summ[nxt], summ[at], summ[p.source], &arrow_reps[ai], &acc);
        at = nxt;
    }
    acc
}

pub fn end_presentation<K: Field + 'static, C: Category<K> + ?Sized>(
    cat: &C,
    t: &AddObj,
    name: &str,
) -> Result<EndPresentation<K>> {
    if t.0.is_empty() {
        return Err(Error::Descriptor("T must have at least one summand".into()));
    }
    for w in t.0.windows(2) {
        if w[0] == w[1] {
            return Err(Error::Descriptor(
                "T must be basic: drop repeated summands, they do not change add T".into(),
            ));
        }
    }
    let k = cat.field().clone();
    let summ = t.0.clone();
    let m = summ.len();

    let radical = category_radical(cat)?;
    let rad = |a: usize, b: usize| -> &Subspace<K> { &radical.spaces[summ[a]][summ[b]] };

    // span of the composites of two radical maps routed through a summand —
    // the square of rad Γ, which may be smaller than the square of the
    // radical of the ambient category
    let square_in_t = |left: &dyn Fn(usize, usize) -> Subspace<K>| -> Vec<Vec<Subspace<K>>> {
        (0..m)
            .map(|a| {
                (0..m)
                    .map(|b| {
                        let mut vecs = vec![];
                        for z in 0..m {
                            let first = left(a, z);
                            let second = rad(z, b);
                            for i in 0..first.dim() {
                                for j in 0..second.dim() {
                                    vecs.push(cat.compose(
                                        summ[a],
                                        summ[z],
                                        summ[b],
                                        &first.basis.row(i),
                                        &second.basis.row(j),
                                    ));
                                }
                            }
                        }
                        if vecs.is_empty() {
                            Subspace::zero(&k, cat.hom_dim(summ[a], summ[b]))
                        } else {
                            Subspace::from_span(&Mat::from_rows(&k, vecs))
                        }
                    })
                    .collect()
            })
            .collect()
    };
    let rad2 = square_in_t(&|a, b| rad(a, b).clone());

    // arrows i → j: a basis of rad(T_j, T_i) modulo rad²(T_j, T_i)
    let mut quiver_arrows: Vec<Arrow> = vec![];
    let mut arrow_reps: Vec<Vec<K::Elem>> = vec![];
    for i in 0..m {
        for j in 0..m {
            let full = rad(j, i);
            let mut acc = rad2[j][i].clone();
            for r in 0..full.dim() {
                let row = full.basis.row(r);
                if acc.contains(&row) {
                    continue;
                }
                quiver_arrows.push(Arrow {
                    name: format!("g{}", quiver_arrows.len()),
                    source: i,
                    target: j,
                });
                acc = acc.sum(&Subspace::from_span(&Mat::from_rows(&k, vec![row.clone()])));
                arrow_reps.push(row);
            }
        }
    }
    let quiver = Quiver::new(
        summ.iter().map(|&s| cat.object_label(s)).collect(),
        quiver_arrows,
    );

    // nilpotency degree of rad Γ
    let mut npow: Vec<Vec<Subspace<K>>> =
        (0..m).map(|a| (0..m).map(|b| rad(a, b).clone()).collect()).collect();
    let mut nilp = 1usize;
    let rad_total: usize = (0..m).flat_map(|a| (0..m).map(move |b| (a, b)))
        .map(|(a, b)| rad(a, b).dim())
        .sum();
    while npow.iter().flatten().map(|s| s.dim()).sum::<usize>() > 0 {
        let prev = npow;
        npow = square_in_t(&|a, b| prev[a][b].clone());
        nilp += 1;
        if nilp > rad_total + 2 {
            return Err(Error::Internal(
                "radical powers of the endomorphism algebra do not vanish".into(),
            ));
        }
    }

    let ev = |p: &Path| -> Vec<K::Elem> { eval_arrow_path(cat, &summ, &quiver, &arrow_reps, p) };

    // relations: per vertex pair, the kernel of evaluation on all paths of
    // length 2..=nilp (length-nilp composites already vanish, and longer
    // paths lie in the ideal these generate)
    let mut outgoing: Vec<Vec<usize>> = vec![vec![]; m];
    for (ai, a) in quiver.arrows.iter().enumerate() {
        outgoing[a.source].push(ai);
    }
    let mut by_pair: BTreeMap<(usize, usize), Vec<Path>> = BTreeMap::new();
    let mut total_paths = 0usize;
    for v in 0..m {
        let mut frontier: Vec<(usize, Vec<usize>)> = vec![(v, vec![])];
        while let Some((at, arrows)) = frontier.pop() {
            if arrows.len() >= 2 {
                total_paths += 1;
                if total_paths > PATH_CAP {
                    return Err(Error::Cap(format!(
                        "more than {PATH_CAP} paths while presenting the endomorphism algebra"
                    )));
                }
                by_pair
                    .entry((v, at))
                    .or_default()
                    .push(Path { source: v, arrows: arrows.clone() });
            }
            if arrows.len() == nilp {
                continue;
            }
            for &ai in &outgoing[at] {
                let mut next = arrows.clone();
                next.push(ai);
                frontier.push((quiver.arrows[ai].target, next));
            }
        }
    }
    let mut relations: Vec<LinComb<K>> = vec![];
    for ((v, w), paths) in &by_pair {
        let hom = cat.hom_dim(summ[*w], summ[*v]);
        let mut a = Mat::zeros(&k, hom, paths.len());
        for (c, p) in paths.iter().enumerate() {
            for (r, val) in ev(p).into_iter().enumerate() {
                a.set(r, c, val);
            }
        }
        let ker = a.kernel();
        for c in 0..ker.cols {
            let terms: Vec<(K::Elem, Path)> = (0..ker.rows)
                .filter(|&r| !k.is_zero(ker.at(r, c)))
                .map(|r| (ker.at(r, c).clone(), paths[r].clone()))
                .collect();
            relations.push(LinComb { terms });
        }
    }
    let pres = Presentation::new(k.clone(), name, quiver.clone(), relations, LabelMode::TopFirst);

    // certificate: the evaluation map from path classes is an isomorphism
    let pb = pres.path_basis()?;
    let mut dim = 0usize;
    for v in 0..m {
        for w in 0..m {
            let want = cat.hom_dim(summ[w], summ[v]);
            dim += want;
            if pb.dim(v, w) != want {
                return Err(Error::Unsupported(format!(
                    "quiver presentation of the endomorphism algebra failed its certificate: \
                     {} path classes vs hom dimension {} between {} and {}",
                    pb.dim(v, w),
                    want,
                    pres.quiver.vertices[v],
                    pres.quiver.vertices[w],
                )));
            }
            if want > 0 {
                let rows: Vec<Vec<K::Elem>> = pb.basis[v][w].iter().map(&ev).collect();
                if Mat::from_rows(&k, rows).rank() != want {
                    return Err(Error::Unsupported(
                        "path-class basis of the endomorphism algebra evaluates to a \
                         degenerate family"
                            .into(),
                    ));
                }
            }
        }
    }

    Ok(EndPresentation { summands: summ, pres, pb, arrow_reps, dim })
}

impl<K: Field> EndPresentation<K> {
    fn vertex_of(&self, summand: usize) -> Option<usize> {
        self.summands.iter().position(|&s| s == summand)
    }

    /// Evaluate a quiver path at the arrow representatives; the result lies
    /// in Hom(T_w, T_v) for a path v → w.
    pub fn ev_path<C: Category<K> + ?Sized>(&self, cat: &C, p: &Path) -> Vec<K::Elem> {
        eval_arrow_path(cat, &self.summands, &self.pres.quiver, &self.arrow_reps, p)
    }

    /// Evaluate a path class between vertices v and w, given by coordinates
    /// in `pb.basis[v][w]`.
    pub fn ev_class<C: Category<K> + ?Sized>(
        &self,
        cat: &C,
        v: usize,
        w: usize,
        coords: &[K::Elem],
    ) -> Vec<K::Elem> {
        let k = cat.field();
        assert_eq!(coords.len(), self.pb.dim(v, w));
        let mut acc = vec![k.zero(); cat.hom_dim(self.summands[w], self.summands[v])];
        for (i, c) in coords.iter().enumerate() {
            if k.is_zero(c) {
                continue;
            }
            let img = self.ev_path(cat, &self.pb.basis[v][w][i]);
            for (t, x) in img.iter().enumerate() {
                acc[t] = k.add(&acc[t], &k.mul(c, x));
            }
        }
        acc
    }

    /// Realize a symbolic map between sums of vertex projectives as a
    /// morphism between the corresponding sums of summands of T.  Under
    /// Hom(T, −) the result induces exactly the realized symbolic map, so
    /// minimal projective presentations in the module category lift to
    /// morphisms in the source category.
    pub fn lift_presmap<C: Category<K> + ?Sized>(&self, cat: &C, pm: &PresMap<K>) -> AddMor<K> {
        assert!(
            pm.src.windows(2).all(|w| w[0] <= w[1]) && pm.tgt.windows(2).all(|w| w[0] <= w[1]),
            "projective summands must be listed in vertex order"
        );
        let src = AddObj::new(pm.src.iter().map(|&v| self.summands[v]).collect());
        let tgt = AddObj::new(pm.tgt.iter().map(|&w| self.summands[w]).collect());
        let blocks = pm
            .tgt
            .iter()
            .enumerate()
            .map(|(i, &wi)| {
                pm.src
                    .iter()
                    .enumerate()
                    .map(|(j, &vj)| self.ev_class(cat, wi, vj, &pm.entries[i][j]))
                    .collect()
            })
            .collect();
        AddMor { src, tgt, blocks }
    }

    /// Hom(T, x) as a module over the presentation.
    pub fn hom_rep<C: Category<K> + ?Sized>(&self, cat: &C, x: usize) -> Rep<K> {
        self.hom_rep_add(cat, &AddObj::new(vec![x]))
    }

    /// Hom(T, X) for a formal sum X; vertex-v coordinates are the flat
    /// coordinates of Hom(T_v, X).
    pub fn hom_rep_add<C: Category<K> + ?Sized>(&self, cat: &C, x: &AddObj) -> Rep<K> {
        let k = cat.field();
        let dims: Vec<usize> = self
            .summands
            .iter()
            .map(|&s| hom_add_dims(cat, &AddObj::new(vec![s]), x))
            .collect();
        let maps: Vec<Mat<K>> = self
            .pres
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let src_obj = AddObj::new(vec![self.summands[a.source]]);
                let tgt_obj = AddObj::new(vec![self.summands[a.target]]);
                let gamma = unflatten_add_mor(cat, &tgt_obj, &src_obj, &self.arrow_reps[ai]);
                let mut mat = Mat::zeros(k, dims[a.target], dims[a.source]);
                for t in 0..dims[a.source] {
                    let mut e = vec![k.zero(); dims[a.source]];
                    e[t] = k.one();
                    let phi = unflatten_add_mor(cat, &src_obj, x, &e);
                    let img = compose_add_mor(cat, &gamma, &phi);
                    for (r, val) in flatten_add_mor(cat, &img).into_iter().enumerate() {
                        mat.set(r, t, val);
                    }
                }
                mat
            })
            .collect();
        let rep = Rep { dims, maps };
        assert!(self.pres.rep_is_valid(&rep), "hom functor broke a relation");
        rep
    }

    /// The module map Hom(T, f) for a morphism f between formal sums.
    pub fn hom_map_add<C: Category<K> + ?Sized>(&self, cat: &C, f: &AddMor<K>) -> RepMap<K> {
        let k = cat.field();
        let blocks: Vec<Mat<K>> = self
            .summands
            .iter()
            .map(|&s| {
                let sv = AddObj::new(vec![s]);
                let d_in = hom_add_dims(cat, &sv, &f.src);
                let d_out = hom_add_dims(cat, &sv, &f.tgt);
                let mut mat = Mat::zeros(k, d_out, d_in);
                for t in 0..d_in {
                    let mut e = vec![k.zero(); d_in];
                    e[t] = k.one();
                    let phi = unflatten_add_mor(cat, &sv, &f.src, &e);
                    let img = compose_add_mor(cat, &phi, f);
                    for (r, val) in flatten_add_mor(cat, &img).into_iter().enumerate() {
                        mat.set(r, t, val);
                    }
                }
                mat
            })
            .collect();
        RepMap { blocks }
    }

    /// The module map Hom(T, f) for f: x → y given in hom coordinates.
    pub fn hom_map<C: Category<K> + ?Sized>(&self, cat: &C, x: usize, y: usize, f: &[K::Elem]) -> RepMap<K> {
        let xo = AddObj::new(vec![x]);
        let yo = AddObj::new(vec![y]);
        self.hom_map_add(cat, &unflatten_add_mor(cat, &xo, &yo, f))
    }

    /// Hom(T, T_v) is the projective at v; its coordinates can be compared
    /// against the vertex projective of the presentation by dimensions.
    pub fn projective_dims_match<C: Category<K> + ?Sized>(&self, cat: &C) -> bool {
        (0..self.summands.len()).all(|v| {
            let hv = self.hom_rep(cat, self.summands[v]);
            (0..self.summands.len()).all(|w| hv.dims[w] == self.pb.dim(v, w))
        })
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.pres.quiver.vertices[v]
    }

    pub fn summand_vertex(&self, summand: usize) -> usize {
        self.vertex_of(summand).expect("object is a summand of T")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::mesh::MeshCategory;
    use crate::modcat::ModuleCategory;
    use crate::quiver::tests::two_cycle_nilpotent;
    use crate::stable::StableCategory;

    fn stable_41() -> StableCategory<PrimeField> {
        let pres = two_cycle_nilpotent(PrimeField::new(101));
        let mc = ModuleCategory::build(pres, 64).unwrap();
        StableCategory::new(mc).unwrap()
    }

    #[test]
    fn two_vertex_hereditary_presentation() {
        let sc = stable_41();
        let ib = sc.stable_index_of_label("b").unwrap();
        let iba = sc.stable_index_of_label("ba").unwrap();
        let t = AddObj::new(vec![ib, iba]);
        let ep = end_presentation(&sc, &t, "end(ba+b)").unwrap();
        assert_eq!(ep.dim, 3);
        assert_eq!(ep.pres.quiver.vertices, vec!["b", "ba"]);
        assert_eq!(ep.pres.quiver.arrows.len(), 1);
        assert_eq!(ep.pres.quiver.arrows[0].source, 0);
        assert_eq!(ep.pres.quiver.arrows[0].target, 1);
        assert!(ep.pres.relations.is_empty());
        assert!(ep.projective_dims_match(&sc));
        // hom functor dimension vectors on the four stable objects
        let dims_of = |label: &str| {
            let x = sc.stable_index_of_label(label).unwrap();
            ep.hom_rep(&sc, x).dims
        };
        assert_eq!(dims_of("a"), vec![0, 0]);
        assert_eq!(dims_of("b"), vec![1, 1]);
        assert_eq!(dims_of("ab"), vec![1, 0]);
        assert_eq!(dims_of("ba"), vec![0, 1]);
        // on Hom(T, b) the arrow acts by precomposition with an irreducible
        // map, which is nonzero in the stable category
        let hb = ep.hom_rep(&sc, sc.stable_index_of_label("b").unwrap());
        assert_eq!(hb.maps[0].rank(), 1);
    }

    #[test]
    fn minimal_presentation_lifts_to_the_irreducible_map() {
        use crate::cat::add_mor_is_zero;
        use rand::SeedableRng;
        use rand_chacha::ChaCha8Rng;

        let sc = stable_41();
        let ib = sc.stable_index_of_label("b").unwrap();
        let iba = sc.stable_index_of_label("ba").unwrap();
        let iab = sc.stable_index_of_label("ab").unwrap();
        let t = AddObj::new(vec![ib, iba]);
        let ep = end_presentation(&sc, &t, "end(ba+b)").unwrap();
        let m = ep.hom_rep(&sc, iab);
        let mp = crate::modcat::minimal_presentation(&ep.pres, &ep.pb, &m).unwrap();
        let f = ep.lift_presmap(&sc, &mp.sym);
        assert_eq!(f.src.0, vec![iba]);
        assert_eq!(f.tgt.0, vec![ib]);
        assert!(!add_mor_is_zero(&sc, &f));
        // Hom(T, f) must present the module we started from
        let fh = ep.hom_map_add(&sc, &f);
        let tgt_rep = ep.hom_rep_add(&sc, &f.tgt);
        let (cok, _) = ep.pres.quotient_rep(&tgt_rep, &ep.pres.image_spans(&fh));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        assert!(ep.pres.iso_test(&cok, &m, &mut rng));
    }

    #[test]
    fn linear_a3_from_orbit_summands() {
        let mc = MeshCategory::new(
            PrimeField::new(101),
            3,
            &[(0, true)],
            Some((0, true)),
            &[
                ((0, 1), "3"),
                ((0, 2), "32"),
                ((0, 3), "321"),
                ((1, 1), "2"),
                ((1, 2), "21"),
                ((2, 1), "1"),
            ]
            .iter()
            .map(|&(v, s)| (v, s.to_string()))
            .collect(),
        )
        .unwrap();
        let id = |s: &str| mc.index_of_name(s).unwrap();
        let t = AddObj::new(vec![id("3"), id("32"), id("321")]);
        let ep = end_presentation(&mc, &t, "end(T)").unwrap();
        assert_eq!(ep.dim, 6);
        assert_eq!(ep.pres.quiver.vertices, vec!["3", "32", "321"]);
        assert_eq!(ep.pres.quiver.arrows.len(), 2);
        assert!(ep.pres.relations.is_empty());
        let mut ends: Vec<(usize, usize)> = ep
            .pres
            .quiver
            .arrows
            .iter()
            .map(|a| (a.source, a.target))
            .collect();
        ends.sort();
        assert_eq!(ends, vec![(1, 0), (2, 1)]);
        // a repeated summand is rejected
        let bad = AddObj::new(vec![id("3"), id("3")]);
        assert!(end_presentation(&mc, &bad, "x").is_err());
    }
}

//! A uniform interface for the finite k-categories the workbench handles:
//! a finite list of pairwise non-isomorphic indecomposable objects, hom
//! spaces given by published coordinate bases, and bilinear composition.
//!
//! Morphisms between additive (direct-sum) objects are block matrices of
//! coordinate vectors.  Endomorphism algebras of additive objects are
//! realized as structure-constant algebras so that idempotent splitting and
//! radicals are available.

use crate::fdalg::FDAlgebra;
use crate::field::Field;
use crate::mat::Mat;
use crate::subspace::Subspace;
use crate::{Error, Result};

pub trait Category<K: Field> {
    fn field(&self) -> &K;
    fn num_objects(&self) -> usize;
    fn object_label(&self, x: usize) -> String;
    fn hom_dim(&self, x: usize, y: usize) -> usize;
    /// Coordinates of g∘f, where f ∈ Hom(x,y), g ∈ Hom(y,z).
    fn compose(&self, x: usize, y: usize, z: usize, f: &[K::Elem], g: &[K::Elem])
        -> Vec<K::Elem>;
    fn identity(&self, x: usize) -> Vec<K::Elem>;
}

/// A formal finite direct sum of indecomposables, by index (sorted).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AddObj(pub Vec<usize>);

impl AddObj {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable();
        AddObj(parts)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(&x)
    }

    /// Distinct indecomposable indices, in order.
    pub fn support(&self) -> Vec<usize> {
        let mut s = self.0.clone();
        s.dedup();
        s
    }

    pub fn label<K: Field>(&self, cat: &(impl Category<K> + ?Sized)) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        self.0
            .iter()
            .map(|&i| cat.object_label(i))
            .collect::<Vec<_>>()
            .join("+")
    }
}

/// A morphism between additive objects: `blocks[i][j]` are the coordinates
/// of the component src.0[j] → tgt.0[i].
#[derive(Clone, Debug, PartialEq)]
pub struct AddMor<K: Field> {
    pub src: AddObj,
    pub tgt: AddObj,
    pub blocks: Vec<Vec<Vec<K::Elem>>>,
}

pub fn zero_add_mor<K: Field>(cat: &(impl Category<K> + ?Sized), src: &AddObj, tgt: &AddObj) -> AddMor<K> {
    let k = cat.field();
    AddMor {
        src: src.clone(),
        tgt: tgt.clone(),
        blocks: tgt
            .0
            .iter()
            .map(|&t| {
                src.0
                    .iter()
                    .map(|&s| vec![k.zero(); cat.hom_dim(s, t)])
                    .collect()
            })
            .collect(),
    }
}

pub fn identity_add_mor<K: Field>(cat: &(impl Category<K> + ?Sized), x: &AddObj) -> AddMor<K> {
    let mut m = zero_add_mor(cat, x, x);
    for i in 0..x.0.len() {
        m.blocks[i][i] = cat.identity(x.0[i]);
    }
    m
}

/// g∘f for f: X→Y, g: Y→Z.
pub fn compose_add_mor<K: Field>(
    cat: &(impl Category<K> + ?Sized),
    f: &AddMor<K>,
    g: &AddMor<K>,
) -> AddMor<K> {
    assert_eq!(f.tgt, g.src);
    let k = cat.field();
    let mut out = zero_add_mor(cat, &f.src, &g.tgt);
    for (i, &zi) in g.tgt.0.iter().enumerate() {
        for (j, &xj) in f.src.0.iter().enumerate() {
            let mut acc = vec![k.zero(); cat.hom_dim(xj, zi)];
            for (l, &yl) in f.tgt.0.iter().enumerate() {
                let c = cat.compose(xj, yl, zi, &f.blocks[l][j], &g.blocks[i][l]);
                for (t, v) in c.iter().enumerate() {
                    acc[t] = k.add(&acc[t], v);
                }
            }
            out.blocks[i][j] = acc;
        }
    }
    out
}

pub fn add_add_mor<K: Field>(cat: &(impl Category<K> + ?Sized), f: &AddMor<K>, g: &AddMor<K>) -> AddMor<K> {
    assert_eq!(f.src, g.src);
    assert_eq!(f.tgt, g.tgt);
    let k = cat.field();
    let mut out = f.clone();
    for i in 0..out.blocks.len() {
        for j in 0..out.blocks[i].len() {
            for t in 0..out.blocks[i][j].len() {
                out.blocks[i][j][t] = k.add(&out.blocks[i][j][t], &g.blocks[i][j][t]);
            }
        }
    }
    out
}

pub fn add_mor_is_zero<K: Field>(cat: &(impl Category<K> + ?Sized), f: &AddMor<K>) -> bool {
    let k = cat.field();
    f.blocks
        .iter()
        .flatten()
        .flatten()
        .all(|c| k.is_zero(c))
}

/// Flat coordinate layout of Hom(X, Y) between additive objects: blocks in
/// row-major (target-major) order.
pub fn hom_add_dims<K: Field>(cat: &(impl Category<K> + ?Sized), x: &AddObj, y: &AddObj) -> usize {
    x.0.iter()
        .map(|&s| y.0.iter().map(|&t| cat.hom_dim(s, t)).sum::<usize>())
        .sum()
}

pub fn flatten_add_mor<K: Field>(cat: &(impl Category<K> + ?Sized), f: &AddMor<K>) -> Vec<K::Elem> {
    let _ = cat;
    let mut out = vec![];
    for row in &f.blocks {
        for b in row {
            out.extend(b.iter().cloned());
        }
    }
    out
}

pub fn unflatten_add_mor<K: Field>(
    cat: &(impl Category<K> + ?Sized),
    src: &AddObj,
    tgt: &AddObj,
    flat: &[K::Elem],
) -> AddMor<K> {
    let mut f = zero_add_mor(cat, src, tgt);
    let mut off = 0;
    for i in 0..tgt.0.len() {
        for j in 0..src.0.len() {
            let d = f.blocks[i][j].len();
            f.blocks[i][j] = flat[off..off + d].to_vec();
            off += d;
        }
    }
    assert_eq!(off, flat.len());
    f
}

/// The endomorphism algebra of an additive object, with multiplication
/// m(x, y) = y∘x (the opposite-of-composition convention used for
/// endomorphism algebras acting on hom functors).  Returns the algebra and
/// the flat coordinates of each algebra basis element.
pub fn end_algebra_op<K: Field + 'static>(
    cat: &(impl Category<K> + ?Sized),
    x: &AddObj,
) -> (FDAlgebra<K>, Vec<AddMor<K>>) {
    let k = cat.field().clone();
    let n = x.0.len();
    // basis: for each ordered block pair (j → i), each hom basis element
    let mut basis_maps: Vec<AddMor<K>> = vec![];
    for i in 0..n {
        for j in 0..n {
            let d = cat.hom_dim(x.0[j], x.0[i]);
            for t in 0..d {
                let mut m = zero_add_mor(cat, x, x);
                m.blocks[i][j][t] = k.one();
                basis_maps.push(m);
            }
        }
    }
    let dim = basis_maps.len();
    let flat: Vec<Vec<K::Elem>> = basis_maps
        .iter()
        .map(|m| flatten_add_mor(cat, m))
        .collect();
    let mut mult = vec![vec![vec![k.zero(); dim]; dim]; dim];
    // coordinates in this basis are just the flat coordinates (basis = unit vectors)
    for a in 0..dim {
        for b in 0..dim {
            // m(e_a, e_b) = e_b ∘ e_a
            let prod = compose_add_mor(cat, &basis_maps[a], &basis_maps[b]);
            mult[a][b] = flatten_add_mor(cat, &prod);
        }
    }
    let unit = flatten_add_mor(cat, &identity_add_mor(cat, x));
    let alg = FDAlgebra::from_table(&k, mult, unit);
    let _ = flat;
    (alg, basis_maps)
}

/// Per-ordered-pair radical subspaces of the category: all of Hom(x,y) when
/// x ≠ y (objects are pairwise non-isomorphic), rad End(x) on the diagonal.
pub struct CategoryRadical<K: Field> {
    pub spaces: Vec<Vec<Subspace<K>>>,
}

pub fn category_radical<K: Field + 'static>(cat: &(impl Category<K> + ?Sized)) -> Result<CategoryRadical<K>> {
    let k = cat.field().clone();
    let n = cat.num_objects();
    let mut spaces = vec![];
    for x in 0..n {
        let mut row = vec![];
        for y in 0..n {
            if x != y {
                row.push(Subspace::full(&k, cat.hom_dim(x, y)));
            } else {
                let obj = AddObj::new(vec![x]);
                let (alg, _) = end_algebra_op(cat, &obj);
                let rad = alg.radical()?;
                row.push(rad);
            }
        }
        spaces.push(row);
    }
    Ok(CategoryRadical { spaces })
}

impl<K: Field> CategoryRadical<K> {
    /// Square of the radical: spans of composites through every middle object.
    pub fn square(&self, cat: &(impl Category<K> + ?Sized)) -> Vec<Vec<Subspace<K>>> {
        let k = cat.field();
        let n = cat.num_objects();
        let mut out = vec![];
        for x in 0..n {
            let mut row = vec![];
            for y in 0..n {
                let mut vecs: Vec<Vec<K::Elem>> = vec![];
                for z in 0..n {
                    let a = &self.spaces[x][z];
                    let b = &self.spaces[z][y];
                    for i in 0..a.dim() {
                        for j in 0..b.dim() {
                            vecs.push(cat.compose(x, z, y, &a.basis.row(i), &b.basis.row(j)));
                        }
                    }
                }
                let dim = cat.hom_dim(x, y);
                if vecs.is_empty() {
                    row.push(Subspace::zero(k, dim));
                } else {
                    row.push(Subspace::from_span(&Mat::from_rows(k, vecs)));
                }
            }
            out.push(row);
        }
        out
    }
}

/// Is a coordinate endomorphism invertible?  (Left multiplication in the
/// endomorphism algebra must be invertible.)
pub fn end_is_invertible<K: Field + 'static>(
    cat: &(impl Category<K> + ?Sized),
    x: usize,
    f: &[K::Elem],
) -> bool {
    let obj = AddObj::new(vec![x]);
    let (alg, _) = end_algebra_op(cat, &obj);
    alg.left_mul_matrix(f).is_invertible()
}

/// Verify associativity and identity laws on all triple compositions of
/// hom-basis elements — the sanity certificate every backend must pass.
pub fn verify_composition_laws<K: Field>(cat: &(impl Category<K> + ?Sized), max_objects: usize) -> Result<()> {
    let k = cat.field();
    let n = cat.num_objects().min(max_objects);
    for x in 0..n {
        for y in 0..n {
            let dxy = cat.hom_dim(x, y);
            for t in 0..dxy {
                let mut f = vec![k.zero(); dxy];
                f[t] = k.one();
                // identities
                let lhs = cat.compose(x, x, y, &cat.identity(x), &f);
                let rhs = cat.compose(x, y, y, &f, &cat.identity(y));
                if lhs != f || rhs != f {
                    return Err(Error::Internal(format!(
                        "identity law fails on Hom({},{})",
                        cat.object_label(x),
                        cat.object_label(y)
                    )));
                }
                for z in 0..n {
                    let dyz = cat.hom_dim(y, z);
                    for s in 0..dyz {
                        let mut g = vec![k.zero(); dyz];
                        g[s] = k.one();
                        for w in 0..n {
                            let dzw = cat.hom_dim(z, w);
                            for r in 0..dzw {
                                let mut h = vec![k.zero(); dzw];
                                h[r] = k.one();
                                let gf = cat.compose(x, y, z, &f, &g);
                                let hg = cat.compose(y, z, w, &g, &h);
                                let a = cat.compose(x, z, w, &gf, &h);
                                let b = cat.compose(x, y, w, &f, &hg);
                                if a != b {
                                    return Err(Error::Internal(format!(
                                        "associativity fails at ({},{},{},{})",
                                        x, y, z, w
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// A candidate triangle x → y → z → Σx with every leg given explicitly.
#[derive(Clone, Debug)]
pub struct DeclaredTriangle<K: Field> {
    pub x: AddObj,
    pub y: AddObj,
    pub z: AddObj,
    pub f: AddMor<K>,
    pub g: AddMor<K>,
    pub h: AddMor<K>,
}

/// Matrix of the linear map Hom(dom.0, dom.1) → Hom(cod.0, cod.1) obtained
/// by pushing each hom-basis element through `apply`.
fn add_hom_matrix<K: Field>(
    cat: &(impl Category<K> + ?Sized),
    dom: (&AddObj, &AddObj),
    cod: (&AddObj, &AddObj),
    apply: impl Fn(&AddMor<K>) -> AddMor<K>,
) -> Mat<K> {
    let k = cat.field();
    let d_in = hom_add_dims(cat, dom.0, dom.1);
    let d_out = hom_add_dims(cat, cod.0, cod.1);
    let mut m = Mat::zeros(k, d_out, d_in);
    for t in 0..d_in {
        let mut flat = vec![k.zero(); d_in];
        flat[t] = k.one();
        let phi = unflatten_add_mor(cat, dom.0, dom.1, &flat);
        let img = apply(&phi);
        assert_eq!(img.src, *cod.0);
        assert_eq!(img.tgt, *cod.1);
        for (r, v) in flatten_add_mor(cat, &img).into_iter().enumerate() {
            m.set(r, t, v);
        }
    }
    m
}

fn add_rank_exact<K: Field>(mats: &[Mat<K>], tag: &str) -> Result<()> {
    for i in 1..mats.len() {
        let prev = &mats[i - 1];
        let cur = &mats[i];
        if !cur.matmul(prev).is_zero() {
            return Err(Error::Descriptor(format!(
                "{tag}: consecutive induced maps do not compose to zero at slot {i}"
            )));
        }
        if prev.rank() + cur.rank() != cur.cols {
            return Err(Error::Descriptor(format!(
                "{tag}: homology at slot {i} is nonzero ({} + {} ≠ {})",
                prev.rank(),
                cur.rank(),
                cur.cols
            )));
        }
    }
    Ok(())
}

/// Certify a declared triangle by rank-exactness of the five-term hom
/// sequences x → y → z → Σx → Σy under Hom(W, −) and Hom(−, W) for every
/// indecomposable W.  `suspend_obj`/`suspend_mor` supply the Σ action.
///
/// This is a necessary condition satisfied by every genuine triangle; it is
/// strong enough to reject wrong connecting maps in the categories handled
/// here, where hom spaces are small and exactness pins down ranks.
pub fn verify_add_triangle<K: Field>(
    cat: &(impl Category<K> + ?Sized),
    tri: &DeclaredTriangle<K>,
    suspend_obj: impl Fn(usize) -> usize,
    suspend_mor: impl Fn(&AddMor<K>) -> AddMor<K>,
    tag: &str,
) -> Result<()> {
    let sx = AddObj::new(tri.x.0.iter().map(|&i| suspend_obj(i)).collect());
    if tri.f.src != tri.x
        || tri.f.tgt != tri.y
        || tri.g.src != tri.y
        || tri.g.tgt != tri.z
        || tri.h.src != tri.z
        || tri.h.tgt != sx
    {
        return Err(Error::Descriptor(format!(
            "{tag}: morphism endpoints do not match the declared objects"
        )));
    }
    let sf = suspend_mor(&tri.f);
    if sf.src != sx {
        return Err(Error::Internal(format!(
            "{tag}: suspended first leg has unexpected source"
        )));
    }
    let chain: [&AddObj; 5] = [&tri.x, &tri.y, &tri.z, &sf.src, &sf.tgt];
    let maps: [&AddMor<K>; 4] = [&tri.f, &tri.g, &tri.h, &sf];
    for w in 0..cat.num_objects() {
        let wobj = AddObj::new(vec![w]);
        let cov: Vec<Mat<K>> = (0..4)
            .map(|s| {
                add_hom_matrix(cat, (&wobj, chain[s]), (&wobj, chain[s + 1]), |phi| {
                    compose_add_mor(cat, phi, maps[s])
                })
            })
            .collect();
        add_rank_exact(&cov, &format!("{tag}, maps out of {}", cat.object_label(w)))?;
        let con: Vec<Mat<K>> = (0..4)
            .rev()
            .map(|s| {
                add_hom_matrix(cat, (chain[s + 1], &wobj), (chain[s], &wobj), |psi| {
                    compose_add_mor(cat, maps[s], psi)
                })
            })
            .collect();
        add_rank_exact(&con, &format!("{tag}, maps into {}", cat.object_label(w)))?;
    }
    Ok(())
}

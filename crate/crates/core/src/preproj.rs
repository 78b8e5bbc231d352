//! The graded preprojective algebra on a finite window of the repetition
//! quiver `ℤQ`, its indecomposable injective modules, and q-characters of
//! fundamental and standard modules as generating functions of submodule
//! Grassmannians.
//!
//! Window vertices are the pairs `(i, r)` with `r ≡ ξ_i (mod 2)`. Every arrow
//! lowers `r` by one: `(a, r) → (b, r − 1)` for adjacent `a, b`. The mesh
//! relation at `(i, r)` is the sum of the length-two paths to `(i, r − 2)`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{inconsistent, invalid, Error, Result};
use crate::linalg::{self, integral_left_nullspace, IntMatrix, Matrix, Rationals};
use crate::quiverrep::{EulerEvidence, FieldSpec, GrassmannianOracle, Quiver, QuiverRep};
use crate::ymono::{a_monomial_unchecked, y, CartanData, YMonomial, YPolynomial};

/// A mesh relation: the paths `from → mid → to` for every intermediate vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeshRelation {
    pub from: usize,
    pub to: usize,
    /// Pairs of arrow indices `(from → mid, mid → to)`.
    pub paths: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct ZQWindow {
    pub cartan: CartanData,
    pub r_lo: i64,
    pub r_hi: i64,
    pub vertices: Vec<(usize, i64)>,
    index: HashMap<(usize, i64), usize>,
    pub quiver: Quiver,
    pub relations: Vec<MeshRelation>,
}

impl ZQWindow {
    pub fn index_of(&self, i: usize, r: i64) -> Option<usize> {
        self.index.get(&(i, r)).copied()
    }

    pub fn relation_at(&self, v: usize) -> Option<&MeshRelation> {
        self.relations.iter().find(|rel| rel.from == v)
    }
}

pub fn build_window(c: &CartanData, r_lo: i64, r_hi: i64) -> Result<ZQWindow> {
    if r_lo >= r_hi {
        return invalid(format!("empty window [{r_lo}, {r_hi}]"));
    }
    let mut vertices = Vec::new();
    for r in r_lo..=r_hi {
        for i in c.nodes() {
            if c.in_lattice(i, r) {
                vertices.push((i, r));
            }
        }
    }
    let index: HashMap<(usize, i64), usize> = vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let mut arrows = Vec::new();
    let mut arrow_index = HashMap::new();
    for (k, &(a, r)) in vertices.iter().enumerate() {
        for b in c.neighbors(a) {
            if let Some(&t) = index.get(&(b, r - 1)) {
                arrow_index.insert((k, t), arrows.len());
                arrows.push((k, t));
            }
        }
    }
    let mut relations = Vec::new();
    for (k, &(i, r)) in vertices.iter().enumerate() {
        let Some(&to) = index.get(&(i, r - 2)) else { continue };
        let paths = c
            .neighbors(i)
            .into_iter()
            .filter_map(|j| {
                let mid = *index.get(&(j, r - 1))?;
                Some((arrow_index[&(k, mid)], arrow_index[&(mid, to)]))
            })
            .collect();
        relations.push(MeshRelation { from: k, to, paths });
    }
    let quiver = Quiver::new(vertices.len(), arrows)?;
    Ok(ZQWindow { cartan: c.clone(), r_lo, r_hi, vertices, index, quiver, relations })
}

/// A finite-dimensional module over the window's preprojective algebra.
#[derive(Clone, Debug)]
pub struct PreprojModule {
    pub labels: Vec<(usize, i64)>,
    pub rep: QuiverRep,
}

impl PreprojModule {
    pub fn dim_at(&self, i: usize, r: i64) -> usize {
        self.labels
            .iter()
            .position(|&l| l == (i, r))
            .map_or(0, |k| self.rep.dims[k])
    }

    pub fn total_dim(&self) -> usize {
        self.rep.total_dim()
    }

    /// Nonzero graded pieces `((i, r), dim)`.
    pub fn support(&self) -> Vec<((usize, i64), usize)> {
        self.labels
            .iter()
            .zip(&self.rep.dims)
            .filter(|(_, &d)| d > 0)
            .map(|(&l, &d)| (l, d))
            .collect()
    }

    /// True when every mesh relation acts as zero.
    pub fn satisfies_relations(&self, w: &ZQWindow) -> bool {
        w.relations.iter().all(|rel| {
            let (s, t) = (self.rep.dims[rel.from], self.rep.dims[rel.to]);
            let mut acc = IntMatrix::zeros(t, s);
            for &(a1, a2) in &rel.paths {
                let prod = self.rep.maps[a2].int_mul(&self.rep.maps[a1]);
                for (x, y) in acc.data.iter_mut().zip(prod.data) {
                    *x += y;
                }
            }
            acc.is_zero()
        })
    }

    pub fn direct_sum(&self, other: &PreprojModule) -> Result<PreprojModule> {
        if self.labels != other.labels {
            return invalid("direct sum needs modules on the same window");
        }
        Ok(PreprojModule { labels: self.labels.clone(), rep: self.rep.direct_sum(&other.rep)? })
    }

    /// Dimension of the socle, i.e. of the common kernel of all outgoing maps.
    pub fn socle_dim(&self) -> usize {
        let q = &self.rep.quiver;
        (0..q.n)
            .map(|v| {
                let d = self.rep.dims[v];
                let outs: Vec<&IntMatrix> = q.outgoing(v).map(|a| &self.rep.maps[a]).collect();
                if outs.is_empty() || d == 0 {
                    return d;
                }
                let stacked = Matrix::vstack(&outs, d);
                d - linalg::rank(&Rationals, &stacked.over(&Rationals))
            })
            .sum()
    }
}

/// The injective hull `Δ_{i,r}` of the simple module at `(i, r)`.
///
/// Its piece at `y` is the dual of the space of paths `y → (i, r)` modulo the
/// mesh relations. That space is built degree by degree: paths leaving `y`
/// start with an arrow `y → y'`, and the only new relation is the mesh
/// relation at `y` followed by an arbitrary path.
pub fn injective_module(w: &ZQWindow, i: usize, r: i64) -> Result<PreprojModule> {
    let c = &w.cartan;
    c.check_node(i)?;
    let x = w
        .index_of(i, r)
        .ok_or_else(|| Error::InvalidInput(format!("({i}, {r}) is not a vertex of the window")))?;
    let q = &w.quiver;
    let n = q.n;
    let mut dims = vec![0usize; n];
    // prefix[a] for a: y → y' is the map (paths y' → x) → (paths y → x)
    let mut prefix: Vec<Option<IntMatrix>> = vec![None; q.arrows.len()];
    dims[x] = 1;
    let mut order: Vec<usize> = (0..n).filter(|&v| w.vertices[v].1 > r).collect();
    order.sort_by_key(|&v| w.vertices[v].1);
    for y in order {
        let outs: Vec<usize> = q.outgoing(y).collect();
        let total: usize = outs.iter().map(|&a| dims[q.arrows[a].1]).sum();
        let relation = w.relation_at(y).filter(|rel| dims[rel.to] > 0);
        let projection = match relation {
            Some(rel) => {
                // the image of U_{y''} inside ⊕ U_{y'} under the mesh relation
                let mut blocks: Vec<IntMatrix> = Vec::new();
                for &a in &outs {
                    let mid = q.arrows[a].1;
                    let second = rel.paths.iter().find(|p| p.0 == a).map(|p| p.1);
                    let block = match second {
                        Some(a2) if dims[mid] > 0 => prefix[a2].clone().expect("lower degrees first"),
                        _ => IntMatrix::zeros(dims[mid], dims[rel.to]),
                    };
                    blocks.push(block);
                }
                let refs: Vec<&IntMatrix> = blocks.iter().collect();
                integral_left_nullspace(&Matrix::vstack(&refs, dims[rel.to]))
            }
            None => IntMatrix::identity(total),
        };
        dims[y] = projection.rows;
        let mut offset = 0;
        for &a in &outs {
            let width = dims[q.arrows[a].1];
            prefix[a] = Some(projection.column_block(offset, offset + width));
            offset += width;
        }
    }
    for (v, &(_, rv)) in w.vertices.iter().enumerate() {
        if rv == w.r_hi && dims[v] > 0 {
            return Err(Error::WindowTooSmall { lo: w.r_lo, hi: w.r_hi });
        }
    }
    let maps = q
        .arrows
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| match &prefix[a] {
            Some(p) if dims[s] > 0 && dims[t] > 0 => p.transpose(),
            _ => IntMatrix::zeros(dims[t], dims[s]),
        })
        .collect();
    let rep = QuiverRep::new(q.clone(), FieldSpec::Rationals, dims, maps)?;
    let module = PreprojModule { labels: w.vertices.clone(), rep };
    if !module.satisfies_relations(w) {
        return inconsistent(format!("Δ_({i},{r}) violates a mesh relation"));
    }
    Ok(module)
}

/// `Y_{i,r} Σ_d χ(Gr(d, Δ)) ∏ A_{j,s+1}^{-d(j,s)}` generalized to any module
/// with a chosen highest monomial.
pub fn qchar_of_module(c: &CartanData, top: &YMonomial, module: &PreprojModule) -> Result<YPolynomial> {
    Ok(qchar_of_module_with_evidence(c, top, module)?.0)
}

/// [`qchar_of_module`] together with the interpolation data of every
/// Grassmannian it evaluated.
pub fn qchar_of_module_with_evidence(
    c: &CartanData,
    top: &YMonomial,
    module: &PreprojModule,
) -> Result<(YPolynomial, EulerEvidence)> {
    let oracle = GrassmannianOracle::new(&module.rep)?;
    let dvecs = candidate_dimension_vectors(module);
    let evidence = dvecs
        .par_iter()
        .map(|d| oracle.euler(d).map(|e| (d.clone(), e)))
        .collect::<Result<Vec<_>>>()?;
    let mut out = YPolynomial::zero();
    for (d, e) in &evidence {
        if e.euler.is_zero() {
            continue;
        }
        let mut m = top.clone();
        for (v, &dv) in d.iter().enumerate() {
            if dv > 0 {
                let (j, s) = module.labels[v];
                m = &m * &a_monomial_unchecked(c, j, s + 1).pow(-dv);
            }
        }
        out.add_term(m, e.euler.clone());
    }
    Ok((out, evidence))
}

/// Dimension vectors that can be submodule dimensions: a submodule's piece
/// at `y` lies in the preimage of its pieces at the targets, so
/// `d_y ≤ dim ker(out maps at y) + Σ_{y → y'} d_{y'}`.
fn candidate_dimension_vectors(module: &PreprojModule) -> Vec<Vec<i64>> {
    let rep = &module.rep;
    let q = &rep.quiver;
    let order = q.targets_first_order().expect("window quivers are acyclic");
    let order: Vec<usize> = order.into_iter().filter(|&v| rep.dims[v] > 0).collect();
    let kernel_dim: Vec<usize> = (0..q.n)
        .map(|v| {
            let d = rep.dims[v];
            let outs: Vec<&IntMatrix> = q.outgoing(v).map(|a| &rep.maps[a]).collect();
            if d == 0 || outs.is_empty() {
                return d;
            }
            d - linalg::rank(&Rationals, &Matrix::vstack(&outs, d).over(&Rationals))
        })
        .collect();
    let mut out = Vec::new();
    let mut cur = vec![0i64; q.n];
    fn rec(
        pos: usize,
        order: &[usize],
        q: &Quiver,
        dims: &[usize],
        kernel_dim: &[usize],
        cur: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        let Some(&v) = order.get(pos) else {
            out.push(cur.clone());
            return;
        };
        let reach: i64 = q.outgoing(v).map(|a| cur[q.arrows[a].1]).sum();
        let bound = (dims[v] as i64).min(kernel_dim[v] as i64 + reach);
        for dv in 0..=bound {
            cur[v] = dv;
            rec(pos + 1, order, q, dims, kernel_dim, cur, out);
        }
        cur[v] = 0;
    }
    rec(0, &order, q, &rep.dims, &kernel_dim, &mut cur, &mut out);
    out
}

fn fundamental_window(c: &CartanData, lo: i64, hi: i64) -> Result<ZQWindow> {
    build_window(c, lo, hi + c.coxeter_number())
}

/// `χ_q(L(Y_{i,q^r}))`.
pub fn fundamental_qchar(c: &CartanData, i: usize, r: i64) -> Result<YPolynomial> {
    Ok(fundamental_qchar_with_evidence(c, i, r)?.0)
}

/// [`fundamental_qchar`] together with the interpolation data.
pub fn fundamental_qchar_with_evidence(c: &CartanData, i: usize, r: i64) -> Result<(YPolynomial, EulerEvidence)> {
    c.check_node(i)?;
    if !c.in_lattice(i, r) {
        return invalid(format!("Y_({i},{r}) has the wrong parity: need r ≡ ξ_{i} (mod 2)"));
    }
    let w = fundamental_window(c, r, r)?;
    let delta = injective_module(&w, i, r)?;
    qchar_of_module_with_evidence(c, &y(i, r), &delta)
}

/// A graded dimension datum: `(i, r) ↦ multiplicity`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedSpace(pub BTreeMap<(usize, i64), u64>);

/// Graded on the vertices `(i, r)` with `r ≡ ξ_i`.
pub type GradedW = GradedSpace;
/// Graded on the shifted vertices `(i, r)` with `r ≡ ξ_i + 1`.
pub type GradedV = GradedSpace;

impl GradedSpace {
    pub fn get(&self, i: usize, r: i64) -> i64 {
        self.0.get(&(i, r)).copied().unwrap_or(0) as i64
    }

    pub fn from_pairs<I: IntoIterator<Item = ((usize, i64), u64)>>(pairs: I) -> Self {
        let mut m = BTreeMap::new();
        for (k, v) in pairs {
            *m.entry(k).or_insert(0) += v;
        }
        m.retain(|_, v| *v > 0);
        GradedSpace(m)
    }
}

/// `Y^W = ∏ Y_{i,r}^{W_i(r)}`.
pub fn y_of_w(w: &GradedW) -> YMonomial {
    YMonomial::from_pairs(w.0.iter().map(|(&k, &m)| (k, m as i64)))
}

/// `A^V = ∏ A_{j,s}^{-V_j(s)}`.
pub fn a_of_v(c: &CartanData, v: &GradedV) -> YMonomial {
    v.0.iter().fold(YMonomial::one(), |acc, (&(j, s), &m)| {
        &acc * &a_monomial_unchecked(c, j, s).pow(-(m as i64))
    })
}

/// Checks `d_i(r) = W_i(r) − V_i(r+1) − V_i(r−1) − Σ_{j≠i} a_{ij} V_j(r) ≥ 0`
/// on every vertex `(i, r)` with `r ≡ ξ_i`.
pub fn is_l_dominant(c: &CartanData, w: &GradedW, v: &GradedV) -> bool {
    let mut points: Vec<(usize, i64)> = w.0.keys().copied().collect();
    for &(j, s) in v.0.keys() {
        points.push((j, s + 1));
        points.push((j, s - 1));
        points.extend(c.neighbors(j).into_iter().map(|i| (i, s)));
    }
    points.into_iter().filter(|&(i, r)| c.in_lattice(i, r)).all(|(i, r)| {
        let mut d = w.get(i, r) - v.get(i, r + 1) - v.get(i, r - 1);
        for j in c.neighbors(i) {
            d += v.get(j, r);
        }
        d >= 0
    })
}

/// `Δ_W = ⊕ Δ_{i,r}^{W_i(r)}` on a window covering every summand.
pub fn standard_module(c: &CartanData, w: &GradedW) -> Result<(ZQWindow, PreprojModule)> {
    if w.0.is_empty() {
        return invalid("W must be nonzero");
    }
    for &(i, r) in w.0.keys() {
        c.check_node(i)?;
        if !c.in_lattice(i, r) {
            return invalid(format!("W has a component at ({i}, {r}) of the wrong parity"));
        }
    }
    let lo = w.0.keys().map(|k| k.1).min().expect("nonempty");
    let hi = w.0.keys().map(|k| k.1).max().expect("nonempty");
    let win = fundamental_window(c, lo, hi)?;
    let mut total: Option<PreprojModule> = None;
    for (&(i, r), &m) in &w.0 {
        let delta = injective_module(&win, i, r)?;
        for _ in 0..m {
            total = Some(match total {
                None => delta.clone(),
                Some(t) => t.direct_sum(&delta)?,
            });
        }
    }
    Ok((win, total.expect("nonempty")))
}

/// q-character of the standard module with Drinfeld datum `W`.
pub fn standard_qchar(c: &CartanData, w: &GradedW) -> Result<YPolynomial> {
    let (_, module) = standard_module(c, w)?;
    qchar_of_module(c, &y_of_w(w), &module)
}

/// Total dimension check used by callers that want plain numbers.
pub fn dimension(p: &YPolynomial) -> BigInt {
    p.coefficient_sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_shape() {
        let d4 = CartanData::parse("D4").unwrap();
        let w = build_window(&d4, 0, 6).unwrap();
        let v = w.index_of(3, 2).unwrap();
        assert_eq!(w.quiver.incoming(v).count(), 3);
        assert_eq!(w.quiver.outgoing(v).count(), 3);
        let a3 = CartanData::parse("A3").unwrap();
        let w = build_window(&a3, 0, 5).unwrap();
        assert_eq!(&w.vertices[..5], &[(1, 0), (3, 0), (2, 1), (1, 2), (3, 2)]);
        for (k, &(_, r)) in w.vertices.iter().enumerate() {
            let has = w.relation_at(k).is_some();
            assert_eq!(has, r - 2 >= 0);
        }
    }

    #[test]
    fn d4_injective() {
        let d4 = CartanData::parse("D4").unwrap();
        let w = build_window(&d4, 0, 6).unwrap();
        let delta = injective_module(&w, 3, 0).unwrap();
        assert_eq!(delta.total_dim(), 10);
        assert_eq!(delta.dim_at(3, 2), 2);
        assert_eq!(delta.support().len(), 9);
        assert_eq!(delta.socle_dim(), 1);
    }

    #[test]
    fn small_window_is_rejected() {
        let d4 = CartanData::parse("D4").unwrap();
        let w = build_window(&d4, 0, 3).unwrap();
        assert!(matches!(injective_module(&w, 3, 0), Err(Error::WindowTooSmall { .. })));
    }

    #[test]
    fn type_a_injectives_are_uniserial() {
        for n in 1..=5 {
            let c = CartanData::parse(&format!("A{n}")).unwrap();
            let w = build_window(&c, 0, c.coxeter_number()).unwrap();
            let delta = injective_module(&w, 1, 0).unwrap();
            assert_eq!(delta.total_dim(), n);
            assert!(delta.support().iter().all(|&(_, d)| d == 1));
        }
    }

    #[test]
    fn l_dominance_basics() {
        let a2 = CartanData::parse("A2").unwrap();
        let w = GradedSpace::from_pairs([((1, 0), 1)]);
        assert!(is_l_dominant(&a2, &w, &GradedSpace::default()));
        let v = GradedSpace::from_pairs([((1, 1), 1)]);
        assert!(!is_l_dominant(&a2, &GradedSpace::default(), &v));
    }
}

//! Representations of Dynkin quivers: roots, indecomposables, Hom and Ext,
//! generic decompositions, and quiver Grassmannians.
//!
//! Vertices are 0-based here; vertex `k` stands for Dynkin node `k + 1`.
//! Arrow maps are integer matrices of shape `dim(target) × dim(source)`, read
//! over `ℚ` or reduced modulo a prime according to [`FieldSpec`].

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{inconsistent, invalid, Error, Result};
use crate::linalg::{self, integral_left_nullspace, Field, IntMatrix, Matrix, PrimeField, Rationals};
use crate::ymono::CartanData;

/// Coefficients in the basis of simple roots (or per-vertex dimensions).
pub type DimensionVector = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    pub n: usize,
    pub arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(n: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if arrows.iter().any(|&(s, t)| s >= n || t >= n || s == t) {
            return invalid("arrow endpoints out of range or loop");
        }
        Ok(Quiver { n, arrows })
    }

    /// The orientation with every arrow running from a `ξ = 1` node to a
    /// `ξ = 0` node.
    pub fn sink_source(c: &CartanData) -> Self {
        let arrows = c
            .edges()
            .into_iter()
            .map(|(i, j)| if c.xi(i) == 1 { (i - 1, j - 1) } else { (j - 1, i - 1) })
            .collect();
        Quiver { n: c.rank(), arrows }
    }

    pub fn outgoing(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].0 == v)
    }

    pub fn incoming(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].1 == v)
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.outgoing(v).next().is_none()
    }

    /// Reverses every arrow at `k`, keeping arrow indices.
    pub fn reflect_at(&self, k: usize) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|&(s, t)| if s == k || t == k { (t, s) } else { (s, t) })
            .collect();
        Quiver { n: self.n, arrows }
    }

    /// Vertices ordered so that every arrow goes from a later to an earlier
    /// vertex (targets first); `None` if the quiver has a cycle.
    pub fn targets_first_order(&self) -> Option<Vec<usize>> {
        let mut out_deg: Vec<usize> = (0..self.n).map(|v| self.outgoing(v).count()).collect();
        let mut ready: Vec<usize> = (0..self.n).filter(|&v| out_deg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for a in self.incoming(v) {
                let s = self.arrows[a].0;
                out_deg[s] -= 1;
                if out_deg[s] == 0 {
                    ready.push(s);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    /// A sequence `k_1, …, k_n` with `k_t` a sink of `σ_{k_{t-1}}⋯σ_{k_1} Q`.
    fn admissible_sinks(&self) -> Result<Vec<usize>> {
        let mut q = self.clone();
        let mut seq = Vec::with_capacity(self.n);
        let mut used = vec![false; self.n];
        for _ in 0..self.n {
            let k = (0..self.n)
                .find(|&v| !used[v] && q.is_sink(v))
                .ok_or_else(|| Error::InvalidInput("quiver has an oriented cycle".into()))?;
            used[k] = true;
            seq.push(k);
            q = q.reflect_at(k);
        }
        Ok(seq)
    }

    /// `⟨d, e⟩ = Σ d_i e_i − Σ_{i→j} d_i e_j`.
    pub fn euler_form(&self, d: &[i64], e: &[i64]) -> i64 {
        let diag: i64 = d.iter().zip(e).map(|(a, b)| a * b).sum();
        diag - self.arrows.iter().map(|&(s, t)| d[s] * e[t]).sum::<i64>()
    }

    /// Symmetric Cartan matrix of the underlying graph.
    fn graph_cartan(&self) -> Vec<Vec<i64>> {
        let mut a = vec![vec![0; self.n]; self.n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(s, t) in &self.arrows {
            a[s][t] -= 1;
            a[t][s] -= 1;
        }
        a
    }
}

fn reflect_vector(cartan: &[Vec<i64>], k: usize, x: &[i64]) -> Vec<i64> {
    let mut y = x.to_vec();
    y[k] -= (0..x.len()).map(|j| cartan[k][j] * x[j]).sum::<i64>();
    y
}

fn roots_from_cartan(cartan: &[Vec<i64>]) -> Vec<DimensionVector> {
    let n = cartan.len();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut stack: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    while let Some(r) = stack.pop() {
        if !seen.insert(r.clone()) {
            continue;
        }
        for k in 0..n {
            let s = reflect_vector(cartan, k, &r);
            if s.iter().all(|&x| x >= 0) && s.iter().any(|&x| x > 0) && !seen.contains(&s) {
                stack.push(s);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
    roots.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| a.cmp(b)));
    roots
}

pub fn height(d: &[i64]) -> i64 {
    d.iter().sum()
}

/// Positive roots sorted by height, then lexicographically.
pub fn positive_roots(c: &CartanData) -> Vec<DimensionVector> {
    roots_from_cartan(c.matrix())
}

pub fn is_positive_root(c: &CartanData, d: &[i64]) -> bool {
    positive_roots(c).iter().any(|r| r.as_slice() == d)
}

/// `(∏_{i ∈ I_1} s_i) β`; the reflections commute because `I_1` has no edges.
pub fn reflect_i1(c: &CartanData, beta: &[i64]) -> DimensionVector {
    let mut x = beta.to_vec();
    for i in c.i1() {
        x = reflect_vector(c.matrix(), i - 1, &x);
    }
    x
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverRep {
    pub quiver: Quiver,
    pub field: FieldSpec,
    pub dims: Vec<usize>,
    pub maps: Vec<IntMatrix>,
}

impl QuiverRep {
    pub fn new(quiver: Quiver, field: FieldSpec, dims: Vec<usize>, maps: Vec<IntMatrix>) -> Result<Self> {
        if dims.len() != quiver.n || maps.len() != quiver.arrows.len() {
            return invalid("dimension or map count does not match the quiver");
        }
        for (a, &(s, t)) in quiver.arrows.iter().enumerate() {
            if maps[a].rows != dims[t] || maps[a].cols != dims[s] {
                return invalid(format!("map on arrow {a} has the wrong shape"));
            }
        }
        if let FieldSpec::Prime(p) = field {
            if !is_prime(p) {
                return invalid(format!("{p} is not prime"));
            }
        }
        Ok(QuiverRep { quiver, field, dims, maps })
    }

    pub fn zero(quiver: &Quiver) -> Self {
        let maps = quiver.arrows.iter().map(|_| IntMatrix::zeros(0, 0)).collect();
        QuiverRep { quiver: quiver.clone(), field: FieldSpec::Rationals, dims: vec![0; quiver.n], maps }
    }

    pub fn simple(quiver: &Quiver, k: usize) -> Self {
        let mut dims = vec![0; quiver.n];
        dims[k] = 1;
        let maps = quiver
            .arrows
            .iter()
            .map(|&(s, t)| IntMatrix::zeros(dims[t], dims[s]))
            .collect();
        QuiverRep { quiver: quiver.clone(), field: FieldSpec::Rationals, dims, maps }
    }

    pub fn dim_vector(&self) -> DimensionVector {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// The same integer matrices read over `F_p`.
    pub fn reduce_mod(&self, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return invalid(format!("{p} is not prime"));
        }
        let f = PrimeField::new(p);
        let maps = self.maps.iter().map(|m| m.map(|x| BigInt::from(f.from_int(x)))).collect();
        Ok(QuiverRep { maps, field: FieldSpec::Prime(p), ..self.clone() })
    }

    pub fn direct_sum(&self, other: &QuiverRep) -> Result<QuiverRep> {
        if self.quiver != other.quiver || self.field != other.field {
            return invalid("direct sum needs the same quiver and field");
        }
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| block_diag(a, b))
            .collect();
        Ok(QuiverRep { dims, maps, ..self.clone() })
    }
}

fn block_diag(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut m = IntMatrix::zeros(a.rows + b.rows, a.cols + b.cols);
    for r in 0..a.rows {
        for c in 0..a.cols {
            m.set(r, c, a.get(r, c).clone());
        }
    }
    for r in 0..b.rows {
        for c in 0..b.cols {
            m.set(a.rows + r, a.cols + c, b.get(r, c).clone());
        }
    }
    m
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Applies the BGP reflection `S_k^-` at a source `k` of `rep.quiver`,
/// producing a representation of the quiver with the arrows at `k` reversed.
fn reflect_source(rep: &QuiverRep, k: usize) -> QuiverRep {
    let q = &rep.quiver;
    let out: Vec<usize> = q.outgoing(k).collect();
    let blocks: Vec<&IntMatrix> = out.iter().map(|&a| &rep.maps[a]).collect();
    let total: usize = out.iter().map(|&a| rep.dims[q.arrows[a].1]).sum();
    let phi = if blocks.is_empty() {
        IntMatrix::zeros(0, rep.dims[k])
    } else {
        Matrix::vstack(&blocks, rep.dims[k])
    };
    debug_assert_eq!(phi.rows, total);
    let coker = integral_left_nullspace(&phi);
    let new_q = q.reflect_at(k);
    let mut dims = rep.dims.clone();
    dims[k] = coker.rows;
    let mut maps = rep.maps.clone();
    let mut offset = 0;
    for &a in &out {
        let width = rep.dims[q.arrows[a].1];
        maps[a] = coker.column_block(offset, offset + width);
        offset += width;
    }
    QuiverRep { quiver: new_q, field: rep.field, dims, maps }
}

/// The indecomposable representation with dimension vector `beta`, built
/// over `ℚ` from a simple by reflection functors.
pub fn indecomposable_rep(q: &Quiver, beta: &[i64]) -> Result<QuiverRep> {
    let cartan = q.graph_cartan();
    if beta.len() != q.n || !roots_from_cartan(&cartan).iter().any(|r| r.as_slice() == beta) {
        return invalid(format!("{beta:?} is not a positive root"));
    }
    let seq = q.admissible_sinks()?;
    let mut steps: Vec<usize> = Vec::new();
    let mut cur = q.clone();
    let mut gamma = beta.to_vec();
    let limit = 4 * q.n * q.n + 16;
    let base = loop {
        let k = seq[steps.len() % q.n];
        let is_simple = gamma.iter().enumerate().all(|(v, &x)| x == i64::from(v == k));
        if is_simple {
            break k;
        }
        gamma = reflect_vector(&cartan, k, &gamma);
        if gamma.iter().any(|&x| x < 0) || steps.len() > limit {
            return inconsistent(format!("reflection sequence for {beta:?} left the positive roots"));
        }
        steps.push(k);
        cur = cur.reflect_at(k);
    };
    let mut rep = QuiverRep::simple(&cur, base);
    for &k in steps.iter().rev() {
        rep = reflect_source(&rep, k);
    }
    debug_assert_eq!(rep.quiver, *q);
    if rep.dim_vector() != beta {
        return inconsistent(format!("reflection functors produced {:?} instead of {beta:?}", rep.dims));
    }
    if hom_dim(&rep, &rep)? != 1 {
        return inconsistent(format!("representation for {beta:?} is decomposable"));
    }
    Ok(rep)
}

fn hom_dim_over<F: Field>(f: &F, m: &QuiverRep, n: &QuiverRep) -> usize {
    let q = &m.quiver;
    let mut offsets = Vec::with_capacity(q.n);
    let mut unknowns = 0;
    for v in 0..q.n {
        offsets.push(unknowns);
        unknowns += n.dims[v] * m.dims[v];
    }
    let var = |v: usize, r: usize, c: usize| offsets[v] + r * m.dims[v] + c;
    let mut rows: Vec<Vec<F::E>> = Vec::new();
    for (a, &(s, t)) in q.arrows.iter().enumerate() {
        let (ma, na) = (m.maps[a].over(f), n.maps[a].over(f));
        // N_a f_s − f_t M_a = 0, entry (r, c)
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                let mut row = vec![f.zero(); unknowns];
                for k in 0..n.dims[s] {
                    let x = var(s, k, c);
                    row[x] = f.add(&row[x], na.get(r, k));
                }
                for k in 0..m.dims[t] {
                    let x = var(t, r, k);
                    row[x] = f.sub(&row[x], ma.get(k, c));
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return unknowns;
    }
    unknowns - linalg::rank(f, &Matrix::from_rows(rows, unknowns))
}

pub fn hom_dim(m: &QuiverRep, n: &QuiverRep) -> Result<usize> {
    if m.quiver != n.quiver || m.field != n.field {
        return invalid("Hom needs representations of the same quiver over the same field");
    }
    Ok(match m.field {
        FieldSpec::Rationals => hom_dim_over(&Rationals, m, n),
        FieldSpec::Prime(p) => hom_dim_over(&PrimeField::new(p), m, n),
    })
}

/// `dim Ext^1(M, N) = dim Hom(M, N) − ⟨dim M, dim N⟩` (hereditary algebra).
pub fn ext1_dim(m: &QuiverRep, n: &QuiverRep) -> Result<usize> {
    let h = hom_dim(m, n)? as i64;
    let e = h - m.quiver.euler_form(&m.dim_vector(), &n.dim_vector());
    usize::try_from(e).map_err(|_| Error::Consistency("negative Ext dimension".into()))
}

/// Indecomposables for every positive root with their Ext table.
#[derive(Clone, Debug)]
pub struct RootCatalog {
    pub quiver: Quiver,
    /// Roots in decreasing height.
    pub roots: Vec<DimensionVector>,
    pub reps: Vec<QuiverRep>,
    /// `ext[a][b] = dim Ext^1(M[roots[a]], M[roots[b]])`.
    pub ext: Vec<Vec<usize>>,
}

impl RootCatalog {
    pub fn new(q: &Quiver) -> Result<Self> {
        let mut roots = roots_from_cartan(&q.graph_cartan());
        roots.reverse();
        let reps = roots
            .par_iter()
            .map(|r| indecomposable_rep(q, r))
            .collect::<Result<Vec<_>>>()?;
        let ext = reps
            .par_iter()
            .map(|a| reps.iter().map(|b| ext1_dim(a, b)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(RootCatalog { quiver: q.clone(), roots, reps, ext })
    }

    pub fn index_of(&self, beta: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r.as_slice() == beta)
    }

    pub fn rep(&self, beta: &[i64]) -> Option<&QuiverRep> {
        self.index_of(beta).map(|k| &self.reps[k])
    }

    /// The unique Ext-orthogonal multiset of roots summing to `d`.
    pub fn generic_decomposition(&self, d: &[i64]) -> Result<Vec<DimensionVector>> {
        if d.len() != self.quiver.n || d.iter().any(|&x| x < 0) {
            return invalid("dimension vector must be nonnegative with one entry per vertex");
        }
        let mut solutions: Vec<Vec<usize>> = Vec::new();
        let mut chosen = Vec::new();
        self.search(d.to_vec(), 0, &mut chosen, &mut solutions);
        match solutions.len() {
            1 => Ok(solutions[0].iter().map(|&k| self.roots[k].clone()).collect()),
            0 => inconsistent(format!("no Ext-orthogonal decomposition of {d:?}")),
            n => inconsistent(format!("{n} Ext-orthogonal decompositions of {d:?}")),
        }
    }

    fn search(&self, rest: Vec<i64>, from: usize, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.iter().all(|&x| x == 0) {
            out.push(chosen.clone());
            return;
        }
        for k in from..self.roots.len() {
            let r = &self.roots[k];
            if r.iter().zip(&rest).any(|(a, b)| a > b) {
                continue;
            }
            let orthogonal = self.ext[k][k] == 0
                && chosen.iter().all(|&j| self.ext[j][k] == 0 && self.ext[k][j] == 0);
            if !orthogonal {
                continue;
            }
            let next: Vec<i64> = rest.iter().zip(r).map(|(a, b)| a - b).collect();
            chosen.push(k);
            self.search(next, k, chosen, out);
            chosen.pop();
        }
    }
}

pub fn generic_decomposition(q: &Quiver, d: &[i64]) -> Result<Vec<DimensionVector>> {
    RootCatalog::new(q)?.generic_decomposition(d)
}

/// `[k choose m]_p`, the number of `m`-dimensional subspaces of `F_p^k`.
pub fn gaussian_binomial(k: usize, m: usize, p: u64) -> BigInt {
    if m > k {
        return BigInt::zero();
    }
    let p = BigInt::from(p);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..m {
        num *= p.pow((k - i) as u32) - 1;
        den *= p.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Bases (as rows) of all `m`-dimensional subspaces of `F_p^k`, via reduced
/// row echelon forms.
fn subspaces(f: &PrimeField, k: usize, m: usize) -> Vec<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(m);
    pivot_sets(k, m, 0, &mut pivots, &mut |piv| {
        let free: Vec<(usize, usize)> = (0..m)
            .flat_map(|r| ((piv[r] + 1)..k).filter(|c| !piv.contains(c)).map(move |c| (r, c)))
            .collect();
        let total = (f.p as u128).pow(free.len() as u32);
        for code in 0..total {
            let mut rows = vec![vec![0u64; k]; m];
            for (r, &c) in piv.iter().enumerate() {
                rows[r][c] = 1;
            }
            let mut x = code;
            for &(r, c) in &free {
                rows[r][c] = (x % f.p as u128) as u64;
                x /= f.p as u128;
            }
            out.push(rows);
        }
    });
    out
}

fn pivot_sets(k: usize, m: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == m {
        f(cur);
        return;
    }
    for c in start..k {
        if k - c < m - cur.len() {
            break;
        }
        cur.push(c);
        pivot_sets(k, m, c + 1, cur, f);
        cur.pop();
    }
}

/// Counts `F_p`-points of quiver Grassmannians of one representation.
struct FqCounter<'a> {
    rep: &'a QuiverRep,
    field: PrimeField,
    maps: Vec<Matrix<u64>>,
    order: Vec<usize>,
}

impl<'a> FqCounter<'a> {
    fn new(rep: &'a QuiverRep, p: u64) -> Result<Self> {
        let order = rep
            .quiver
            .targets_first_order()
            .ok_or_else(|| Error::InvalidInput("quiver has an oriented cycle".into()))?;
        let field = PrimeField::new(p);
        let maps = rep.maps.iter().map(|m| m.over(&field)).collect();
        Ok(FqCounter { rep, field, maps, order })
    }

    fn count(&self, nu: &[usize]) -> BigInt {
        let mut ann: Vec<Option<Matrix<u64>>> = vec![None; self.rep.quiver.n];
        self.step(0, nu, &mut ann)
    }

    fn step(&self, pos: usize, nu: &[usize], ann: &mut Vec<Option<Matrix<u64>>>) -> BigInt {
        let Some(&v) = self.order.get(pos) else {
            return BigInt::one();
        };
        let f = &self.field;
        let q = &self.rep.quiver;
        let dv = self.rep.dims[v];
        // allowed subspace: K = {x : ann(X_t) M_a x = 0 for all a: v → t}
        let mut constraints: Vec<Matrix<u64>> = Vec::new();
        for a in q.outgoing(v) {
            let t = q.arrows[a].1;
            let at = ann[t].as_ref().expect("targets are processed first");
            if at.rows > 0 {
                constraints.push(linalg::mat_mul(f, at, &self.maps[a]));
            }
        }
        let kernel: Vec<Vec<u64>> = if constraints.is_empty() {
            (0..dv)
                .map(|i| (0..dv).map(|j| u64::from(i == j)).collect())
                .collect()
        } else {
            let refs: Vec<&Matrix<u64>> = constraints.iter().collect();
            linalg::nullspace(f, &Matrix::vstack(&refs, dv))
        };
        let k = kernel.len();
        if nu[v] > k {
            return BigInt::zero();
        }
        if q.incoming(v).next().is_none() {
            ann[v] = Some(Matrix::filled(0, dv, 0));
            return gaussian_binomial(k, nu[v], f.p) * self.step(pos + 1, nu, ann);
        }
        let kmat = Matrix::from_rows(kernel, dv);
        let mut total = BigInt::zero();
        for basis in subspaces(f, k, nu[v]) {
            let coords = Matrix::from_rows(basis, k);
            let x = linalg::mat_mul(f, &coords, &kmat);
            let annihilator = Matrix::from_rows(linalg::nullspace(f, &x), dv);
            ann[v] = Some(annihilator);
            total += self.step(pos + 1, nu, ann);
        }
        ann[v] = None;
        total
    }
}

fn as_usize_vec(rep: &QuiverRep, nu: &[i64]) -> Result<Vec<usize>> {
    if nu.len() != rep.dims.len() {
        return invalid("sub-dimension vector has the wrong length");
    }
    nu.iter()
        .zip(&rep.dims)
        .map(|(&x, &d)| match usize::try_from(x) {
            Ok(x) if x <= d => Ok(x),
            _ => invalid(format!("sub-dimension vector {nu:?} exceeds {:?}", rep.dims)),
        })
        .collect()
}

/// Number of subrepresentations of dimension `nu` over `F_p`.
pub fn grassmannian_count_fq(m: &QuiverRep, nu: &[i64], p: u64) -> Result<BigInt> {
    let rep = match m.field {
        FieldSpec::Rationals => m.reduce_mod(p)?,
        FieldSpec::Prime(q) if q == p => m.clone(),
        FieldSpec::Prime(q) => return invalid(format!("representation is over F_{q}, not F_{p}")),
    };
    let nu = as_usize_vec(&rep, nu)?;
    Ok(FqCounter::new(&rep, p)?.count(&nu))
}

/// Euler characteristic of a quiver Grassmannian with the evidence used to
/// obtain it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerComputation {
    pub degree_bound: usize,
    pub primes: Vec<u64>,
    pub counts: Vec<BigInt>,
    /// Coefficients of the counting polynomial, constant term first.
    pub coefficients: Vec<BigInt>,
    pub euler: BigInt,
}

/// Euler characteristics of the Grassmannians of one fixed representation.
///
/// A prime is admissible when every rank that the subspace constraints
/// depend on is the same mod `p` as over `ℚ`: the rank of each map, and the
/// joint ranks of every set of arrows leaving or entering a common vertex.
pub struct GrassmannianOracle {
    rep: QuiverRep,
    rank_checks: Vec<(IntMatrix, usize)>,
    primes: std::sync::Mutex<Vec<u64>>,
}

impl GrassmannianOracle {
    pub fn new(rep: &QuiverRep) -> Result<Self> {
        if rep.field != FieldSpec::Rationals {
            return invalid("Euler characteristics are computed from a representation over ℚ");
        }
        if rep.quiver.targets_first_order().is_none() {
            return invalid("quiver has an oriented cycle");
        }
        let q = &rep.quiver;
        let mut checks = Vec::new();
        for v in 0..q.n {
            let outs: Vec<usize> = q.outgoing(v).collect();
            let ins: Vec<usize> = q.incoming(v).collect();
            for mask in 1u32..(1 << outs.len()) {
                let parts: Vec<&IntMatrix> = bits(mask, &outs).map(|a| &rep.maps[a]).collect();
                checks.push(Matrix::vstack(&parts, rep.dims[v]));
            }
            for mask in 1u32..(1 << ins.len()) {
                let parts: Vec<&IntMatrix> = bits(mask, &ins).map(|a| &rep.maps[a]).collect();
                checks.push(Matrix::hstack(&parts, rep.dims[v]));
            }
        }
        let rank_checks = checks
            .into_iter()
            .filter(|m| m.rows > 0 && m.cols > 0)
            .map(|m| {
                let r = linalg::rank(&Rationals, &m.over(&Rationals));
                (m, r)
            })
            .collect();
        Ok(GrassmannianOracle { rep: rep.clone(), rank_checks, primes: std::sync::Mutex::new(Vec::new()) })
    }

    pub fn rep(&self) -> &QuiverRep {
        &self.rep
    }

    fn admissible(&self, p: u64) -> bool {
        let f = PrimeField::new(p);
        self.rank_checks.iter().all(|(m, r)| linalg::rank(&f, &m.over(&f)) == *r)
    }

    /// The first `count` admissible primes.
    pub fn good_primes(&self, count: usize) -> Vec<u64> {
        let mut cache = self.primes.lock().expect("prime cache poisoned");
        let mut p = cache.last().map_or(1, |&p| p);
        while cache.len() < count {
            p += 1;
            if is_prime(p) && self.admissible(p) {
                cache.push(p);
            }
        }
        cache[..count].to_vec()
    }

    /// Counts over `D + 2` admissible primes, interpolates a polynomial of
    /// degree `≤ D = Σ ν_i (d_i − ν_i)` through `D + 1` of them, checks it on
    /// the last one and evaluates it at `1`.
    pub fn euler(&self, nu: &[i64]) -> Result<EulerComputation> {
        let nu_u = as_usize_vec(&self.rep, nu)?;
        let degree_bound: usize = nu_u.iter().zip(&self.rep.dims).map(|(a, d)| a * (d - a)).sum();
        let primes = self.good_primes(degree_bound + 2);
        let counts = primes
            .iter()
            .map(|&p| {
                let reduced = self.rep.reduce_mod(p)?;
                Ok(FqCounter::new(&reduced, p)?.count(&nu_u))
            })
            .collect::<Result<Vec<BigInt>>>()?;
        let coefficients = interpolate(&primes[..=degree_bound], &counts[..=degree_bound])
            .ok_or_else(|| Error::Consistency(format!("point counts for ν = {nu:?} are not an integer polynomial")))?;
        let last = evaluate(&coefficients, primes[degree_bound + 1]);
        if last != counts[degree_bound + 1] {
            return inconsistent(format!(
                "point counts for ν = {nu:?} do not fit a polynomial of degree ≤ {degree_bound}"
            ));
        }
        let euler = coefficients.iter().sum();
        Ok(EulerComputation { degree_bound, primes, counts, coefficients, euler })
    }
}

fn bits(mask: u32, items: &[usize]) -> impl Iterator<Item = usize> + '_ {
    items
        .iter()
        .enumerate()
        .filter(move |(k, _)| mask & (1 << k) != 0)
        .map(|(_, &a)| a)
}

/// Lagrange interpolation over `ℚ`; `None` unless all coefficients are integers.
fn interpolate(xs: &[u64], ys: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = xs.len();
    let mut coeffs = vec![BigRational::zero(); n];
    for (j, (&xj, yj)) in xs.iter().zip(ys).enumerate() {
        // basis polynomial ∏_{m≠j} (x − x_m)/(x_j − x_m)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (m, &xm) in xs.iter().enumerate() {
            if m == j {
                continue;
            }
            let xm = BigRational::from_integer(BigInt::from(xm));
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * &xm;
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(xj)) - xm;
        }
        let scale = BigRational::from_integer(yj.clone()) / denom;
        for (d, c) in basis.iter().enumerate() {
            coeffs[d] += c * &scale;
        }
    }
    coeffs
        .into_iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect()
}

fn evaluate(coeffs: &[BigInt], x: u64) -> BigInt {
    let x = BigInt::from(x);
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
}

pub fn grassmannian_euler(m: &QuiverRep, nu: &[i64]) -> Result<EulerComputation> {
    GrassmannianOracle::new(m)?.euler(nu)
}

/// All sub-dimension vectors `0 ≤ ν ≤ d`.
pub fn sub_dimension_vectors(d: &[usize]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::with_capacity(d.len())];
    for &di in d {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=di).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x as i64);
                    v
                })
            })
            .collect();
    }
    out
}

/// Every Euler characteristic behind a polynomial, keyed by dimension vector.
pub type EulerEvidence = Vec<(Vec<i64>, EulerComputation)>;

/// `Σ_ν χ(Gr_ν(M)) v^ν` as a polynomial in the vertex variables (1-based,
/// matching Dynkin nodes).
pub fn grassmannian_polynomial(oracle: &GrassmannianOracle) -> Result<crate::laurent::Laurent<usize>> {
    Ok(grassmannian_polynomial_with_evidence(oracle)?.0)
}

/// [`grassmannian_polynomial`] together with the interpolation data.
pub fn grassmannian_polynomial_with_evidence(
    oracle: &GrassmannianOracle,
) -> Result<(crate::laurent::Laurent<usize>, EulerEvidence)> {
    let rep = oracle.rep();
    let nus = sub_dimension_vectors(&rep.dims);
    let evidence = nus
        .par_iter()
        .map(|nu| oracle.euler(nu).map(|e| (nu.clone(), e)))
        .collect::<Result<Vec<_>>>()?;
    let mut out = crate::laurent::Laurent::zero();
    for (nu, e) in &evidence {
        let m = crate::laurent::Monomial::from_pairs(nu.iter().enumerate().map(|(v, &x)| (v + 1, x)));
        out.add_term(m, e.euler.clone());
    }
    Ok((out, evidence))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> (CartanData, Quiver) {
        let c = CartanData::parse("A2").unwrap();
        // ξ_1 = 0, ξ_2 = 1: the arrow runs 2 → 1
        let q = Quiver::sink_source(&c);
        (c, q)
    }

    #[test]
    fn root_counts() {
        for (label, n) in [("A2", 3), ("A3", 6), ("D4", 12), ("E6", 36), ("E8", 120)] {
            let c = CartanData::parse(label).unwrap();
            assert_eq!(positive_roots(&c).len(), n, "{label}");
        }
        let d4 = CartanData::parse("D4").unwrap();
        assert!(positive_roots(&d4).contains(&vec![1, 1, 2, 1]));
    }

    #[test]
    fn a2_homs_and_exts() {
        let (_, q) = a2();
        assert_eq!(q.arrows, vec![(1, 0)]);
        let s1 = QuiverRep::simple(&q, 0);
        let s2 = QuiverRep::simple(&q, 1);
        assert_eq!(hom_dim(&s2, &s2).unwrap(), 1);
        assert_eq!(ext1_dim(&s2, &s2).unwrap(), 0);
        assert_eq!(ext1_dim(&s1, &s2).unwrap(), 0);
        assert_eq!(ext1_dim(&s2, &s1).unwrap(), 1);
        let m = indecomposable_rep(&q, &[1, 1]).unwrap();
        assert_eq!(m.maps[0].data.len(), 1);
        assert!(!m.maps[0].data[0].is_zero());
    }

    #[test]
    fn a2_generic_decompositions() {
        let (_, q) = a2();
        assert_eq!(generic_decomposition(&q, &[1, 1]).unwrap(), vec![vec![1, 1]]);
        assert_eq!(generic_decomposition(&q, &[2, 1]).unwrap(), vec![vec![1, 1], vec![1, 0]]);
        assert!(generic_decomposition(&q, &[0, 0]).unwrap().is_empty());
    }

    #[test]
    fn d4_highest_root() {
        let c = CartanData::parse("D4").unwrap();
        let q = Quiver::sink_source(&c);
        let m = indecomposable_rep(&q, &[1, 1, 2, 1]).unwrap();
        assert_eq!(m.dims, vec![1, 1, 2, 1]);
        let images: Vec<Vec<BigInt>> = m.maps.iter().map(|a| a.data.clone()).collect();
        for (a, img) in images.iter().enumerate() {
            assert!(img.iter().any(|x| !x.is_zero()), "arrow {a} is zero");
            for other in &images[a + 1..] {
                let det = &img[0] * &other[1] - &img[1] * &other[0];
                assert!(!det.is_zero(), "two images coincide");
            }
        }
    }

    #[test]
    fn grassmannian_examples() {
        let (_, q) = a2();
        let m = indecomposable_rep(&q, &[1, 1]).unwrap();
        assert_eq!(grassmannian_count_fq(&m, &[0, 1], 5).unwrap(), BigInt::zero());
        assert_eq!(grassmannian_count_fq(&m, &[1, 0], 5).unwrap(), BigInt::one());
        let s = QuiverRep::simple(&q, 0);
        let plane = s.direct_sum(&s).unwrap();
        for p in [2, 3, 7] {
            assert_eq!(grassmannian_count_fq(&plane, &[1, 0], p).unwrap(), BigInt::from(p + 1));
        }
        let e = grassmannian_euler(&plane, &[1, 0]).unwrap();
        assert_eq!(e.euler, BigInt::from(2));
        assert_eq!(e.coefficients, vec![BigInt::one(), BigInt::one()]);
        assert_eq!(grassmannian_euler(&plane, &[0, 0]).unwrap().euler, BigInt::one());
        assert_eq!(grassmannian_euler(&plane, &[2, 0]).unwrap().euler, BigInt::one());
        assert!(grassmannian_euler(&plane, &[3, 0]).is_err());
    }

    #[test]
    fn reflections_through_i1() {
        let c = CartanData::parse("A3").unwrap();
        assert_eq!(reflect_i1(&c, &[0, 1, 0]), vec![0, -1, 0]);
        assert_eq!(reflect_i1(&c, &[1, 1, 0]), vec![1, 0, 0]);
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(2, 1, 3), BigInt::from(4));
        assert_eq!(gaussian_binomial(4, 2, 2), BigInt::from(35));
        assert_eq!(gaussian_binomial(3, 0, 5), BigInt::one());
        assert_eq!(subspaces(&PrimeField::new(2), 4, 2).len(), 35);
    }
}

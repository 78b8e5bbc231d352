//! Skew-symmetric cluster algebras with frozen variables.
//!
//! A seed keeps a full square skew-symmetric matrix `b` with
//! `b[u][v] = #(u → v) − #(v → u)`, one row and column per vertex, frozen or
//! not. Cluster variables are stored as Laurent polynomials in the initial
//! variables, indexed by vertex.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{inconsistent, invalid, Error, Result};
use crate::laurent::{Laurent, Monomial};
use crate::ymono::CartanData;

/// A Laurent polynomial in the initial cluster, variables indexed by vertex.
pub type ClusterPoly = Laurent<usize>;

/// Default bound on the number of clusters explored.
pub const DEFAULT_CAP: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    /// `(i, r)` for each vertex of `Γ_ℓ`.
    pub labels: Vec<(usize, i64)>,
    pub frozen: Vec<bool>,
    pub b: Vec<Vec<i64>>,
    pub vars: Vec<ClusterPoly>,
}

impl Seed {
    /// A seed with the initial variables `x_v` at each vertex.
    pub fn new(labels: Vec<(usize, i64)>, frozen: Vec<bool>, b: Vec<Vec<i64>>) -> Result<Self> {
        let n = labels.len();
        if frozen.len() != n || b.len() != n || b.iter().any(|row| row.len() != n) {
            return invalid("seed data have inconsistent sizes");
        }
        for u in 0..n {
            for v in 0..n {
                if b[u][v] != -b[v][u] {
                    return invalid("exchange matrix is not skew-symmetric");
                }
            }
        }
        let vars = (0..n).map(ClusterPoly::var).collect();
        Ok(Seed { labels, frozen, b, vars })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn mutable_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| !self.frozen[v]).collect()
    }

    pub fn frozen_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.frozen[v]).collect()
    }

    pub fn vertex_of(&self, label: (usize, i64)) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }
}

/// The initial seed on `Γ_ℓ`: vertices `(i, ξ_i + 2k)` for `0 ≤ k ≤ ℓ`,
/// arrows of `ℤQ` between them plus up-arrows `(i, r) → (i, r + 2)`, and the
/// bottom row `(i, ξ_i)` frozen. Arrows between two frozen vertices never
/// influence mutation and are left out.
///
/// Vertices are listed row by row (`k` first, then node), so for `ℓ = 1`
/// the mutable vertex of node `i` sits at position `n + i − 1`.
pub fn gamma_seed(c: &CartanData, ell: u32) -> Seed {
    let mut labels = Vec::new();
    for k in 0..=i64::from(ell) {
        for i in c.nodes() {
            labels.push((i, c.xi(i) + 2 * k));
        }
    }
    let n = labels.len();
    let pos: HashMap<(usize, i64), usize> = labels.iter().enumerate().map(|(p, &l)| (l, p)).collect();
    let frozen: Vec<bool> = labels.iter().map(|&(i, r)| r == c.xi(i)).collect();
    let mut b = vec![vec![0i64; n]; n];
    let mut arrow = |u: usize, v: usize| {
        if !(frozen[u] && frozen[v]) {
            b[u][v] += 1;
            b[v][u] -= 1;
        }
    };
    for (u, &(a, r)) in labels.iter().enumerate() {
        for j in c.neighbors(a) {
            if let Some(&v) = pos.get(&(j, r - 1)) {
                arrow(u, v);
            }
        }
        if let Some(&v) = pos.get(&(a, r + 2)) {
            arrow(u, v);
        }
    }
    Seed::new(labels, frozen, b).expect("Γ_ℓ is skew-symmetric by construction")
}

fn mutate_matrix(b: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    let n = b.len();
    let mut out = b.to_vec();
    for i in 0..n {
        for j in 0..n {
            out[i][j] = if i == k || j == k {
                -b[i][j]
            } else {
                b[i][j] + b[i][k].max(0) * b[k][j].max(0) - (-b[i][k]).max(0) * (-b[k][j]).max(0)
            };
        }
    }
    out
}

/// `x_k x_k' = ∏ x_i^{[b_ik]_+} + ∏ x_i^{[-b_ik]_+}`, solved exactly for `x_k'`.
fn exchange(b: &[Vec<i64>], vars: &[ClusterPoly], k: usize) -> Result<ClusterPoly> {
    let mut plus = ClusterPoly::one();
    let mut minus = ClusterPoly::one();
    for (i, row) in b.iter().enumerate() {
        let e = row[k];
        if e > 0 {
            plus = &plus * &vars[i].pow(e as u32);
        } else if e < 0 {
            minus = &minus * &vars[i].pow((-e) as u32);
        }
    }
    (&plus + &minus)
        .exact_div(&vars[k])
        .ok_or_else(|| Error::Consistency(format!("exchange at vertex {k} is not a Laurent polynomial")))
}

pub fn mutate(s: &Seed, k: usize) -> Result<Seed> {
    if k >= s.len() {
        return invalid(format!("vertex {k} out of range"));
    }
    if s.frozen[k] {
        return invalid(format!("vertex {k} is frozen"));
    }
    let mut vars = s.vars.clone();
    vars[k] = exchange(&s.b, &s.vars, k)?;
    Ok(Seed { labels: s.labels.clone(), frozen: s.frozen.clone(), b: mutate_matrix(&s.b, k), vars })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterVariable {
    pub id: usize,
    /// Vertex holding the variable at the end of `path`.
    pub vertex: usize,
    /// Mutation sequence from the initial seed at which the variable appears.
    pub path: Vec<usize>,
    /// A second, different mutation sequence reaching the same variable,
    /// with the vertex it sits at afterwards.
    pub alt_path: Option<(Vec<usize>, usize)>,
    pub expansion: ClusterPoly,
    /// `d_j = −(lowest exponent of the j-th mutable initial variable)`.
    pub denominator: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    pub initial: Seed,
    /// Mutable vertices of the initial seed; denominators follow this order.
    pub mutable: Vec<usize>,
    pub variables: Vec<ClusterVariable>,
    /// Each cluster as a sorted list of variable ids.
    pub clusters: Vec<Vec<usize>>,
    /// Exchange-graph edges between cluster indices.
    pub edges: BTreeSet<(usize, usize)>,
    compatible: HashSet<(usize, usize)>,
}

impl ClusterVariable {
    /// The same variable described through its second path, if one was seen.
    pub fn via_alt_path(&self) -> Option<ClusterVariable> {
        let (path, vertex) = self.alt_path.clone()?;
        Some(ClusterVariable { path, vertex, alt_path: None, ..self.clone() })
    }
}

impl ExchangeGraph {
    pub fn rank(&self) -> usize {
        self.mutable.len()
    }

    /// True when the two variables occur together in some cluster.
    pub fn compatible(&self, a: usize, b: usize) -> bool {
        a == b || self.compatible.contains(&(a.min(b), a.max(b)))
    }

    pub fn neighbors(&self, cluster: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| match (a == cluster, b == cluster) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect()
    }

    pub fn variable(&self, id: usize) -> &ClusterVariable {
        &self.variables[id]
    }
}

fn denominator_vector(expansion: &ClusterPoly, mutable: &[usize]) -> Vec<i64> {
    mutable
        .iter()
        .map(|v| -expansion.exponent_range(v).map_or(0, |(lo, _)| lo))
        .collect()
}

struct Node {
    b: Vec<Vec<i64>>,
    ids: Vec<Option<usize>>,
    path: Vec<usize>,
    cluster: usize,
}

/// Breadth-first closure of the seed under mutation, clusters identified by
/// their sets of variables.
pub fn enumerate_exchange_graph(s: &Seed, cap: usize) -> Result<ExchangeGraph> {
    let mutable = s.mutable_vertices();
    let mut variables: Vec<ClusterVariable> = Vec::new();
    let mut intern: HashMap<ClusterPoly, usize> = HashMap::new();
    let mut ids = vec![None; s.len()];
    for &v in &mutable {
        let id = variables.len();
        variables.push(ClusterVariable {
            id,
            vertex: v,
            path: Vec::new(),
            alt_path: None,
            expansion: s.vars[v].clone(),
            denominator: denominator_vector(&s.vars[v], &mutable),
        });
        intern.insert(s.vars[v].clone(), id);
        ids[v] = Some(id);
    }
    let key = |ids: &[Option<usize>]| -> Vec<usize> {
        let mut k: Vec<usize> = ids.iter().flatten().copied().collect();
        k.sort_unstable();
        k
    };
    let mut clusters = vec![key(&ids)];
    let mut cluster_index: HashMap<Vec<usize>, usize> = HashMap::from([(clusters[0].clone(), 0)]);
    let mut edges = BTreeSet::new();
    let mut queue = VecDeque::from([Node { b: s.b.clone(), ids, path: Vec::new(), cluster: 0 }]);

    while let Some(node) = queue.pop_front() {
        let vars: Vec<ClusterPoly> = (0..s.len())
            .map(|v| match node.ids[v] {
                Some(id) => variables[id].expansion.clone(),
                None => s.vars[v].clone(),
            })
            .collect();
        for &k in &mutable {
            if node.path.last() == Some(&k) {
                continue; // mutating back returns the parent
            }
            let expansion = exchange(&node.b, &vars, k)?;
            let mut path = node.path.clone();
            path.push(k);
            let id = match intern.get(&expansion) {
                Some(&id) => {
                    let var = &mut variables[id];
                    if var.alt_path.is_none() && var.path != path {
                        var.alt_path = Some((path.clone(), k));
                    }
                    id
                }
                None => {
                    let id = variables.len();
                    variables.push(ClusterVariable {
                        id,
                        vertex: k,
                        path: path.clone(),
                        alt_path: None,
                        denominator: denominator_vector(&expansion, &mutable),
                        expansion: expansion.clone(),
                    });
                    intern.insert(expansion, id);
                    id
                }
            };
            let mut new_ids = node.ids.clone();
            new_ids[k] = Some(id);
            let ck = key(&new_ids);
            let target = match cluster_index.get(&ck) {
                Some(&c) => c,
                None => {
                    if clusters.len() >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    let c = clusters.len();
                    clusters.push(ck.clone());
                    cluster_index.insert(ck, c);
                    queue.push_back(Node { b: mutate_matrix(&node.b, k), ids: new_ids, path, cluster: c });
                    c
                }
            };
            edges.insert((node.cluster.min(target), node.cluster.max(target)));
        }
    }
    let mut compatible = HashSet::new();
    for cl in &clusters {
        for (a, &x) in cl.iter().enumerate() {
            for &y in &cl[a + 1..] {
                compatible.insert((x.min(y), x.max(y)));
            }
        }
    }
    Ok(ExchangeGraph { initial: s.clone(), mutable, variables, clusters, edges, compatible })
}

/// Replays `path` from `s`, returning the final seed.
pub fn mutate_along(s: &Seed, path: &[usize]) -> Result<Seed> {
    path.iter().try_fold(s.clone(), |seed, &k| mutate(&seed, k))
}

/// The principal-coefficient extension of the mutable part of `s`: vertices
/// `0..m` are the mutable vertices, `m..2m` the coefficients `y_j`, with
/// `b[m + j][j] = −1`.
fn principal_seed(s: &Seed, mutable: &[usize]) -> Seed {
    let m = mutable.len();
    let mut b = vec![vec![0i64; 2 * m]; 2 * m];
    for (a, &u) in mutable.iter().enumerate() {
        for (c, &v) in mutable.iter().enumerate() {
            b[a][c] = s.b[u][v];
        }
        b[m + a][a] = -1;
        b[a][m + a] = 1;
    }
    let labels = (0..2 * m).map(|k| (k, 0)).collect();
    let frozen = (0..2 * m).map(|k| k >= m).collect();
    Seed::new(labels, frozen, b).expect("principal extension is skew-symmetric")
}

/// F-polynomial (in `v_0..v_{m-1}`, one per mutable position) and g-vector of
/// a cluster variable, by replaying its mutation path with principal
/// coefficients.
///
/// With coefficient rows `−I`, the grading `deg x_j = e_j`,
/// `deg y_j = column j of B` makes every variable homogeneous.
pub fn f_polynomial_and_gvector(s0: &Seed, x: &ClusterVariable) -> Result<(Laurent<usize>, Vec<i64>)> {
    let mutable = s0.mutable_vertices();
    let position = |v: usize| {
        mutable
            .iter()
            .position(|&u| u == v)
            .ok_or_else(|| Error::InvalidInput(format!("vertex {v} is frozen")))
    };
    let replayed = mutate_along(s0, &x.path)?;
    if replayed.vars[x.vertex] != x.expansion {
        return invalid("variable is not reached by its recorded path");
    }
    let m = mutable.len();
    let principal_path = x.path.iter().map(|&v| position(v)).collect::<Result<Vec<_>>>()?;
    let final_seed = mutate_along(&principal_seed(s0, &mutable), &principal_path)?;
    let xv = &final_seed.vars[position(x.vertex)?];
    let f = xv.specialize(|&v| (v >= m).then(|| Monomial::var(v - m)));
    let degree = |mono: &Monomial<usize>| {
        let mut g = vec![0i64; m];
        for (&v, e) in mono.iter() {
            if v < m {
                g[v] += e;
            } else {
                for (a, ga) in g.iter_mut().enumerate() {
                    *ga += e * s0.b[mutable[a]][mutable[v - m]];
                }
            }
        }
        g
    };
    let mut monos = xv.monomials();
    let g = degree(monos.next().expect("cluster variables are nonzero"));
    if monos.any(|mono| degree(mono) != g) {
        return inconsistent("cluster variable with principal coefficients is not homogeneous");
    }
    if f.coefficient(&Monomial::one()) != BigInt::one() {
        return inconsistent("F-polynomial has constant term different from 1");
    }
    Ok((f, g))
}

/// The unique variable with the given denominator vector.
pub fn variable_by_denominator<'a>(graph: &'a ExchangeGraph, beta: &[i64]) -> Result<&'a ClusterVariable> {
    let mut hits = graph.variables.iter().filter(|v| v.denominator == beta);
    match (hits.next(), hits.next()) {
        (Some(v), None) => Ok(v),
        (None, _) => inconsistent(format!("no cluster variable has denominator {beta:?}")),
        _ => inconsistent(format!("several cluster variables have denominator {beta:?}")),
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Identifies a finite cluster type by `(rank, #variables, #clusters)`.
pub fn identify_type(rank: usize, variables: usize, clusters: usize) -> Option<String> {
    let n = rank as u64;
    let (v, c) = (variables as u64, clusters as u64);
    if n == 0 {
        return None;
    }
    if v == n * (n + 3) / 2 && c == binomial(2 * n + 2, n + 1) / (n + 2) {
        return Some(format!("A{n}"));
    }
    if n >= 4 && v == n * n && c == (3 * n - 2) * binomial(2 * n - 2, n - 1) / n {
        return Some(format!("D{n}"));
    }
    match (n, v, c) {
        (6, 42, 833) => Some("E6".into()),
        (7, 70, 4160) => Some("E7".into()),
        (8, 128, 25080) => Some("E8".into()),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Finite { label: String, variables: usize, clusters: usize },
    /// Finite exchange graph whose counts match no Dynkin fingerprint.
    Unrecognized { variables: usize, clusters: usize },
    InfiniteOrLarge { cap: usize },
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Classification::Finite { label, .. } => write!(f, "{label}"),
            Classification::Unrecognized { variables, clusters } => {
                write!(f, "unrecognized ({variables} variables, {clusters} clusters)")
            }
            Classification::InfiniteOrLarge { .. } => write!(f, "infinite-or-large"),
        }
    }
}

pub fn classify_finite_type(c: &CartanData, ell: u32, cap: usize) -> Result<Classification> {
    if ell == 0 {
        return invalid("classification needs ℓ ≥ 1");
    }
    let seed = gamma_seed(c, ell);
    match enumerate_exchange_graph(&seed, cap) {
        Ok(g) => {
            let (variables, clusters) = (g.variables.len(), g.clusters.len());
            Ok(match identify_type(g.rank(), variables, clusters) {
                Some(label) => Classification::Finite { label, variables, clusters },
                None => Classification::Unrecognized { variables, clusters },
            })
        }
        Err(Error::CapExceeded(cap)) => Ok(Classification::InfiniteOrLarge { cap }),
        Err(e) => Err(e),
    }
}

/// True when every term has a positive coefficient.
pub fn has_positive_coefficients(p: &ClusterPoly) -> bool {
    p.iter().all(|(_, c)| *c > BigInt::zero())
}

//! Cross-checks between the q-character side and the cluster side:
//! Kirillov–Reshetikhin classes through the T-system, the level-one
//! correspondence between cluster variables and simple modules, truncated
//! q-characters through quiver Grassmannians, and tensor factorization of
//! level-one simple modules.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::cluster::{
    self, enumerate_exchange_graph, f_polynomial_and_gvector, gamma_seed, ExchangeGraph, Seed,
};
use crate::error::{inconsistent, invalid, Error, Result};
use crate::laurent::Laurent;
use crate::preproj::fundamental_qchar;
use crate::quiverrep::{
    grassmannian_polynomial, is_positive_root, reflect_i1, DimensionVector, GrassmannianOracle, Quiver,
    RootCatalog,
};
use crate::ymono::{
    dominant_terms, from_v_polynomial, is_dominant, shift, y, CartanData, YMonomial, YPolynomial,
};

/// `W^{(i)}_{k, q^s}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KRLabel {
    pub node: usize,
    pub k: u32,
    pub s: i64,
}

/// `∏_{j<k} Y_{i, s+2j}`.
pub fn kr_highest_monomial(lbl: KRLabel) -> YMonomial {
    (0..i64::from(lbl.k)).fold(YMonomial::one(), |m, j| &m * &y(lbl.node, lbl.s + 2 * j))
}

/// Memoized KR q-characters: fundamentals from the preprojective algebra,
/// higher ones from the T-system solved for `W_{k+1}` by exact division.
pub struct KrCalculator {
    cartan: CartanData,
    fundamentals: Vec<YPolynomial>,
    cache: HashMap<KRLabel, YPolynomial>,
}

impl KrCalculator {
    pub fn new(c: &CartanData) -> Result<Self> {
        let fundamentals = c
            .nodes()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&i| fundamental_qchar(c, i, c.xi(i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(KrCalculator { cartan: c.clone(), fundamentals, cache: HashMap::new() })
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    /// `χ_q(W^{(i)}_{k,q^s})`. Labels off the lattice `s ≡ ξ_i` are
    /// accepted and give the copy shifted by one step.
    pub fn kr(&mut self, lbl: KRLabel) -> Result<YPolynomial> {
        let c = &self.cartan;
        c.check_node(lbl.node)?;
        if let Some(p) = self.cache.get(&lbl) {
            return Ok(p.clone());
        }
        let p = match lbl.k {
            0 => YPolynomial::one(),
            1 => shift(&self.fundamentals[lbl.node - 1], lbl.s - c.xi(lbl.node)),
            k => {
                let prev = |s| KRLabel { node: lbl.node, k: k - 1, s };
                let a = self.kr(prev(lbl.s))?;
                let b = self.kr(prev(lbl.s + 2))?;
                let mut product = YPolynomial::one();
                for j in self.cartan.neighbors(lbl.node) {
                    product = &product * &self.kr(KRLabel { node: j, k: k - 1, s: lbl.s + 1 })?;
                }
                let den = self.kr(KRLabel { node: lbl.node, k: k - 2, s: lbl.s + 2 })?;
                let num = &(&a * &b) - &product;
                num.exact_div(&den).ok_or_else(|| {
                    Error::Consistency(format!("T-system division leaves a remainder for {lbl:?}"))
                })?
            }
        };
        self.cache.insert(lbl, p.clone());
        Ok(p)
    }

    /// Both sides of the T-system at `(i, k, s)`, plus the q-character
    /// sanity of every class involved: positive coefficients and a single
    /// dominant monomial equal to the expected highest monomial.
    pub fn tsystem_sides(&mut self, i: usize, k: u32, s: i64) -> Result<(YPolynomial, YPolynomial, bool)> {
        if k == 0 {
            return invalid("the T-system starts at k = 1");
        }
        let lbl = |node, k, s| KRLabel { node, k, s };
        let lhs = &self.kr(lbl(i, k, s))? * &self.kr(lbl(i, k, s + 2))?;
        let mut rhs = &self.kr(lbl(i, k + 1, s))? * &self.kr(lbl(i, k - 1, s + 2))?;
        let mut product = YPolynomial::one();
        for j in self.cartan.neighbors(i) {
            product = &product * &self.kr(lbl(j, k, s + 1))?;
        }
        rhs += &product;
        let mut sane = true;
        for l in [lbl(i, k, s), lbl(i, k + 1, s), lbl(i, k, s + 2)] {
            sane &= is_minuscule_qchar(&self.kr(l)?, &kr_highest_monomial(l));
        }
        Ok((lhs, rhs, sane))
    }

    pub fn verify_tsystem(&mut self, i: usize, k: u32, s: i64) -> Result<bool> {
        let (lhs, rhs, sane) = self.tsystem_sides(i, k, s)?;
        Ok(lhs == rhs && sane)
    }
}

/// Positive coefficients and exactly one dominant monomial, equal to `top`
/// with coefficient one.
pub fn is_minuscule_qchar(p: &YPolynomial, top: &YMonomial) -> bool {
    let dom = dominant_terms(p);
    p.all_coefficients_positive() && dom.len() == 1 && dom.coefficient(top).is_one()
}

pub fn kr_qchar(c: &CartanData, lbl: KRLabel) -> Result<YPolynomial> {
    KrCalculator::new(c)?.kr(lbl)
}

pub fn verify_tsystem(c: &CartanData, i: usize, k: u32, s: i64) -> Result<bool> {
    KrCalculator::new(c)?.verify_tsystem(i, k, s)
}

/// `Y^α`: `∏ Y_{i,3ξ_i}^{a_i}` for a positive root, `Y_{i,2−ξ_i}` for `−α_i`.
pub fn y_alpha(c: &CartanData, alpha: &[i64]) -> Result<YMonomial> {
    if alpha.len() != c.rank() {
        return invalid("root has the wrong length");
    }
    if alpha.iter().all(|&a| a >= 0) && is_positive_root(c, alpha) {
        return Ok(YMonomial::from_pairs(
            alpha.iter().enumerate().map(|(k, &a)| ((k + 1, 3 * c.xi(k + 1)), a)),
        ));
    }
    match negative_simple(alpha) {
        Some(i) => Ok(y(i, 2 - c.xi(i))),
        None => invalid(format!("{alpha:?} is neither a positive root nor a negative simple root")),
    }
}

/// `Some(i)` when `alpha = −α_i`.
fn negative_simple(alpha: &[i64]) -> Option<usize> {
    let mut it = alpha.iter().enumerate().filter(|(_, &a)| a != 0);
    match (it.next(), it.next()) {
        (Some((k, &-1)), None) => Some(k + 1),
        _ => None,
    }
}

/// Monomial attached to `z[β]`: `Y^α` with `α = (∏_{i∈I_1} s_i) β`.
///
/// The negative branch only ever meets `i ∈ I_1`; anything else is reported
/// as a consistency failure.
pub fn root_monomial(c: &CartanData, beta: &[i64]) -> Result<YMonomial> {
    let alpha = reflect_i1(c, beta);
    if let Some(i) = negative_simple(&alpha) {
        if c.xi(i) != 1 {
            return inconsistent(format!("β = {beta:?} reflects to −α_{i} with {i} ∉ I_1"));
        }
    }
    y_alpha(c, &alpha)
}

/// `Σ_ν χ(Gr_ν(M)) v^ν` with variables indexed by Dynkin node.
pub fn grassmannian_f(rep: &crate::quiverrep::QuiverRep) -> Result<Laurent<usize>> {
    grassmannian_polynomial(&GrassmannianOracle::new(rep)?)
}

/// Truncated q-character of `L(Y^α)` for a positive root `β`, computed from
/// the quiver Grassmannians of the indecomposable `M[β]`.
pub fn simple_trunc_qchar_c1(c: &CartanData, beta: &[i64]) -> Result<YPolynomial> {
    if !is_positive_root(c, beta) {
        return invalid(format!("{beta:?} is not a positive root"));
    }
    let q = Quiver::sink_source(c);
    let rep = crate::quiverrep::indecomposable_rep(&q, beta)?;
    let f = grassmannian_f(&rep)?;
    Ok(from_v_polynomial(c, &root_monomial(c, beta)?, &f))
}

/// A prime factor of a level-one simple module.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    /// The frozen KR module `L(Y_{i,ξ_i} Y_{i,ξ_i+2})`.
    Frozen(usize),
    /// The cluster variable `z[β]` for an almost positive root `β`.
    Variable(DimensionVector),
}

/// Everything needed to move between level-one simple modules and cluster
/// monomials.
pub struct LevelOne {
    pub cartan: CartanData,
    pub seed: Seed,
    pub graph: ExchangeGraph,
    pub catalog: RootCatalog,
    /// Almost positive root of each variable (its denominator vector).
    pub roots: Vec<DimensionVector>,
    /// Highest monomial attached to each variable.
    pub monomials: Vec<YMonomial>,
    /// F-polynomial of each variable in the node variables `v_i`.
    pub f_polys: Vec<Laurent<usize>>,
    pub g_vectors: Vec<Vec<i64>>,
}

impl LevelOne {
    pub fn new(c: &CartanData, cap: usize) -> Result<Self> {
        let seed = gamma_seed(c, 1);
        let graph = enumerate_exchange_graph(&seed, cap)?;
        let catalog = RootCatalog::new(&Quiver::sink_source(c))?;
        let node_of: Vec<usize> = graph.mutable.iter().map(|&v| seed.labels[v].0).collect();
        let mut roots = Vec::new();
        let mut monomials = Vec::new();
        let fg = graph
            .variables
            .par_iter()
            .map(|var| f_polynomial_and_gvector(&seed, var))
            .collect::<Result<Vec<_>>>()?;
        let mut f_polys = Vec::new();
        let mut g_vectors = Vec::new();
        for (var, (f, g)) in graph.variables.iter().zip(fg) {
            // denominators are indexed by mutable position; reorder by node
            let mut beta = vec![0i64; c.rank()];
            for (pos, &d) in var.denominator.iter().enumerate() {
                beta[node_of[pos] - 1] = d;
            }
            let mono = match negative_simple(&beta) {
                Some(i) => y(i, c.xi(i) + 2),
                None => root_monomial(c, &beta)?,
            };
            roots.push(beta);
            monomials.push(mono);
            f_polys.push(f.map_vars(|&pos| node_of[pos]));
            g_vectors.push(g);
        }
        Ok(LevelOne { cartan: c.clone(), seed, graph, catalog, roots, monomials, f_polys, g_vectors })
    }

    pub fn variable_for_root(&self, beta: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r.as_slice() == beta)
    }

    pub fn frozen_monomial(&self, i: usize) -> YMonomial {
        let x = self.cartan.xi(i);
        &y(i, x) * &y(i, x + 2)
    }

    pub fn factor_monomial(&self, f: &Factor) -> Result<YMonomial> {
        match f {
            Factor::Frozen(i) => Ok(self.frozen_monomial(*i)),
            Factor::Variable(beta) => self
                .variable_for_root(beta)
                .map(|id| self.monomials[id].clone())
                .ok_or_else(|| Error::InvalidInput(format!("{beta:?} is not an almost positive root"))),
        }
    }

    /// Image of an initial-seed vertex: frozen `(i, ξ_i)` goes to
    /// `Y_{i,ξ_i} Y_{i,ξ_i+2}`, mutable `(i, ξ_i+2)` to `Y_{i,ξ_i+2}`.
    pub fn vertex_image(&self, v: usize) -> YMonomial {
        let (i, r) = self.seed.labels[v];
        if self.seed.frozen[v] {
            self.frozen_monomial(i)
        } else {
            y(i, r)
        }
    }

    /// The cluster side: `Y^α F_β(v)` for variable `id`.
    pub fn cluster_side(&self, id: usize) -> YPolynomial {
        from_v_polynomial(&self.cartan, &self.monomials[id], &self.f_polys[id])
    }

    /// The Laurent expansion with every initial variable replaced by its
    /// image; equals [`Self::cluster_side`] because the map is a ring
    /// homomorphism.
    pub fn substituted_expansion(&self, id: usize) -> YPolynomial {
        self.graph.variables[id].expansion.substitute(|&v| self.vertex_image(v))
    }

    /// The representation side for a positive root: `Y^α Σ_ν χ(Gr_ν(M[β])) v^ν`.
    pub fn grassmannian_side(&self, beta: &[i64]) -> Result<YPolynomial> {
        let id = self
            .variable_for_root(beta)
            .ok_or_else(|| Error::InvalidInput(format!("{beta:?} is not a positive root")))?;
        let rep = self
            .catalog
            .rep(beta)
            .ok_or_else(|| Error::InvalidInput(format!("{beta:?} is not a positive root")))?;
        Ok(from_v_polynomial(&self.cartan, &self.monomials[id], &grassmannian_f(rep)?))
    }

    /// Checks that `m` lies in the level-one monoid: dominant, in the
    /// variables `Y_{i,ξ_i}` and `Y_{i,ξ_i+2}` only.
    pub fn check_level_one(&self, m: &YMonomial) -> Result<()> {
        let c = &self.cartan;
        for (&(i, s), _) in m.iter() {
            if i == 0 || i > c.rank() || (s != c.xi(i) && s != c.xi(i) + 2) {
                return invalid(format!("Y_({i},{s}) is outside the level-one variables"));
            }
        }
        if !is_dominant(m) {
            return invalid("monomial is not dominant");
        }
        Ok(())
    }

    /// Prime factorization of `L(m)`: the unique multiset of frozen factors
    /// and pairwise compatible cluster variables whose monomials multiply to
    /// `m`. The positive roots among them are checked against the generic
    /// decomposition of their sum.
    pub fn factor(&self, m: &YMonomial) -> Result<Vec<Factor>> {
        self.check_level_one(m)?;
        let c = &self.cartan;
        let mut candidates: Vec<(Factor, YMonomial, Option<usize>)> = c
            .nodes()
            .map(|i| (Factor::Frozen(i), self.frozen_monomial(i), None))
            .collect();
        for (id, beta) in self.roots.iter().enumerate() {
            candidates.push((Factor::Variable(beta.clone()), self.monomials[id].clone(), Some(id)));
        }
        let mut solutions: Vec<Vec<usize>> = Vec::new();
        let mut chosen: Vec<usize> = Vec::new();
        self.cover(m.clone(), &candidates, 0, &mut chosen, &mut solutions);
        let picked = match solutions.len() {
            1 => solutions.pop().expect("one solution"),
            0 => return inconsistent(format!("no factorization of {m}")),
            n => return inconsistent(format!("{n} different factorizations of {m}")),
        };
        let mut factors: Vec<Factor> = picked.iter().map(|&k| candidates[k].0.clone()).collect();
        factors.sort();
        let positive: Vec<DimensionVector> = factors
            .iter()
            .filter_map(|f| match f {
                Factor::Variable(b) if b.iter().all(|&x| x >= 0) => Some(b.clone()),
                _ => None,
            })
            .collect();
        let mut total = vec![0i64; c.rank()];
        for b in &positive {
            for (t, x) in total.iter_mut().zip(b) {
                *t += x;
            }
        }
        let mut generic = self.catalog.generic_decomposition(&total)?;
        generic.sort();
        let mut mine = positive;
        mine.sort();
        if generic != mine {
            return inconsistent(format!("factorization of {m} disagrees with the generic decomposition"));
        }
        Ok(factors)
    }

    /// Exhaustive search; candidates are used in nondecreasing index order
    /// so each multiset is produced once.
    fn cover(
        &self,
        rest: YMonomial,
        candidates: &[(Factor, YMonomial, Option<usize>)],
        from: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if rest.is_one() {
            out.push(chosen.clone());
            return;
        }
        for k in from..candidates.len() {
            let (_, mono, id) = &candidates[k];
            let next = rest.div(mono);
            if !next.is_nonnegative() {
                continue;
            }
            if let Some(a) = id {
                let ok = chosen
                    .iter()
                    .filter_map(|&j| candidates[j].2)
                    .all(|b| self.graph.compatible(*a, b));
                if !ok {
                    continue;
                }
            }
            chosen.push(k);
            self.cover(next, candidates, k, chosen, out);
            chosen.pop();
        }
    }

    /// Truncated q-character of `L(m)` as the product over its prime factors.
    pub fn trunc_qchar(&self, m: &YMonomial) -> Result<YPolynomial> {
        let mut out = YPolynomial::one();
        for f in self.factor(m)? {
            let piece = match &f {
                Factor::Variable(beta) if beta.iter().all(|&x| x >= 0) => self.grassmannian_side(beta)?,
                _ => YPolynomial::from_monomial(self.factor_monomial(&f)?),
            };
            out = &out * &piece;
        }
        Ok(out)
    }

    /// Product of the factor monomials, for round trips.
    pub fn product_monomial(&self, factors: &[Factor]) -> Result<YMonomial> {
        factors
            .iter()
            .try_fold(YMonomial::one(), |acc, f| Ok(&acc * &self.factor_monomial(f)?))
    }
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckEntry {
    pub case: String,
    pub pass: bool,
    pub lhs: YPolynomial,
    pub rhs: YPolynomial,
}

#[derive(Clone, Debug)]
pub struct L1Report {
    pub label: String,
    pub entries: Vec<CheckEntry>,
    /// Highest monomials of all non-frozen cluster variables.
    pub monomials: Vec<YMonomial>,
    pub monomials_distinct_and_dominant: bool,
}

impl L1Report {
    pub fn all_pass(&self) -> bool {
        self.monomials_distinct_and_dominant && self.entries.iter().all(|e| e.pass)
    }
}

pub fn format_root(beta: &[i64]) -> String {
    let parts: Vec<String> = beta.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

/// For every positive root, compares the mutation-side `Y^α F_β(v)` with
/// the Grassmannian side and with the substituted Laurent expansion.
pub fn verify_l1_with(ctx: &LevelOne) -> Result<L1Report> {
    let c = &ctx.cartan;
    let positive: Vec<(usize, &DimensionVector)> = ctx
        .roots
        .iter()
        .enumerate()
        .filter(|(_, b)| b.iter().all(|&x| x >= 0))
        .collect();
    let grass = positive
        .par_iter()
        .map(|(_, beta)| ctx.grassmannian_side(beta))
        .collect::<Result<Vec<_>>>()?;
    let mut entries = Vec::new();
    for ((id, beta), rhs) in positive.iter().zip(grass) {
        let lhs = ctx.cluster_side(*id);
        entries.push(CheckEntry {
            case: format!("F-polynomial {}", format_root(beta)),
            pass: lhs == rhs,
            lhs: lhs.clone(),
            rhs,
        });
        let substituted = ctx.substituted_expansion(*id);
        entries.push(CheckEntry {
            case: format!("substitution {}", format_root(beta)),
            pass: substituted == lhs,
            lhs: substituted,
            rhs: lhs,
        });
    }
    let mut sorted = ctx.monomials.clone();
    sorted.sort();
    sorted.dedup();
    let distinct = sorted.len() == ctx.monomials.len() && ctx.monomials.iter().all(is_dominant);
    entries.push(CheckEntry {
        case: "distinct dominant monomials".into(),
        pass: distinct,
        lhs: YPolynomial::from_terms(ctx.monomials.iter().map(|m| (m.clone(), BigInt::one()))),
        rhs: YPolynomial::from_terms(sorted.iter().map(|m| (m.clone(), BigInt::one()))),
    });
    Ok(L1Report {
        label: c.label(),
        entries,
        monomials: ctx.monomials.clone(),
        monomials_distinct_and_dominant: distinct,
    })
}

pub fn verify_l1(c: &CartanData) -> Result<L1Report> {
    verify_l1_with(&LevelOne::new(c, cluster::DEFAULT_CAP)?)
}

pub fn factor_simple_c1(c: &CartanData, m: &YMonomial) -> Result<Vec<Factor>> {
    LevelOne::new(c, cluster::DEFAULT_CAP)?.factor(m)
}

/// One mutation of the initial seed under the level-`ℓ` assignment.
#[derive(Clone, Debug)]
pub struct IotaEntry {
    pub vertex: (usize, i64),
    pub image: KRLabel,
    pub mutated_highest: Option<YMonomial>,
    /// The exchange binomial built from the images.
    pub exchange: YPolynomial,
    /// The image times the quotient, zero when the division fails.
    pub product: YPolynomial,
    pub pass: bool,
}

/// Experimental check of the level-`ℓ` assignment
/// `z_{(i, ξ_i+2k)} ↦ W^{(i)}_{ℓ+1−k, q^{ξ_i+2k}}`: every single mutation of
/// the initial seed must turn the images into an honest q-character (exact
/// division, positive coefficients, one dominant monomial).
pub fn iota_check(c: &CartanData, ell: u32) -> Result<Vec<IotaEntry>> {
    if ell == 0 {
        return invalid("ℓ must be at least 1");
    }
    let seed = gamma_seed(c, ell);
    let mut kr = KrCalculator::new(c)?;
    let label_of = |(i, r): (usize, i64)| {
        let k = ((r - c.xi(i)) / 2) as u32;
        KRLabel { node: i, k: ell + 1 - k, s: r }
    };
    let images = seed
        .labels
        .iter()
        .map(|&l| kr.kr(label_of(l)))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for v in seed.mutable_vertices() {
        let mut plus = YPolynomial::one();
        let mut minus = YPolynomial::one();
        for (u, img) in images.iter().enumerate() {
            let e = seed.b[u][v];
            if e > 0 {
                plus = &plus * &img.pow(e as u32);
            } else if e < 0 {
                minus = &minus * &img.pow((-e) as u32);
            }
        }
        let exchange = &plus + &minus;
        let mutated = exchange.exact_div(&images[v]);
        let product = mutated.as_ref().map(|p| p * &images[v]).unwrap_or_else(YPolynomial::zero);
        let (pass, highest) = match &mutated {
            Some(p) => {
                let dom = dominant_terms(p);
                let top = dom.iter().next_back().map(|(m, _)| m.clone());
                let ok = p.all_coefficients_positive()
                    && dom.len() == 1
                    && dom.iter().all(|(_, k)| k.is_one());
                (ok, top)
            }
            None => (false, None),
        };
        out.push(IotaEntry { vertex: seed.labels[v], image: label_of(seed.labels[v]), mutated_highest: highest, exchange, product, pass });
    }
    Ok(out)
}

/// Dominant monomials of a truncated q-character, with multiplicities.
pub fn dominant_monomials(p: &YPolynomial) -> BTreeMap<YMonomial, BigInt> {
    dominant_terms(p).iter().map(|(m, k)| (m.clone(), k.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2::kr_qchar_sl2;
    use crate::ymono::y_monomial;

    #[test]
    fn sl2_tsystem_matches_closed_form() {
        let a1 = CartanData::parse("A1").unwrap();
        let mut kr = KrCalculator::new(&a1).unwrap();
        for k in 0..=6 {
            for s in [0, 2] {
                assert_eq!(kr.kr(KRLabel { node: 1, k, s }).unwrap(), kr_qchar_sl2(k, s));
            }
        }
    }

    #[test]
    fn y_alpha_examples() {
        let d4 = CartanData::parse("D4").unwrap();
        assert_eq!(y_alpha(&d4, &[0, 0, 1, 0]).unwrap(), y(3, 0));
        let a3 = CartanData::parse("A3").unwrap();
        assert_eq!(y_alpha(&a3, &[0, -1, 0]).unwrap(), y(2, 1));
        assert_eq!(y_alpha(&a3, &[1, 1, 0]).unwrap(), y_monomial([(1, 0, 1), (2, 3, 1)]));
        assert!(y_alpha(&a3, &[1, 0, 1]).is_err());
        assert!(y_alpha(&a3, &[-1, -1, 0]).is_err());
    }

    #[test]
    fn a3_kr_two_is_minuscule() {
        let a3 = CartanData::parse("A3").unwrap();
        let p = kr_qchar(&a3, KRLabel { node: 1, k: 2, s: 0 }).unwrap();
        assert!(is_minuscule_qchar(&p, &y_monomial([(1, 0, 1), (1, 2, 1)])));
    }

    #[test]
    fn simple_root_in_i1() {
        let a3 = CartanData::parse("A3").unwrap();
        let p = simple_trunc_qchar_c1(&a3, &[0, 1, 0]).unwrap();
        let expected = &YPolynomial::from_monomial(y(2, 1))
            + &YPolynomial::from_monomial(&y(2, 1) * &crate::ymono::v_monomial(&a3, 2));
        assert_eq!(p, expected);
    }
}

//! The q-character ring: Laurent polynomials in `Y_{i,q^s}` with `s ∈ ℤ`.
//!
//! Nodes are 1-based as in the usual Dynkin labellings. The bipartition
//! `ξ: I → {0,1}` fixes which spectral exponents are "even" for each node:
//! `Y_{i,s}` lives in the integral subcategory when `s ≡ ξ_i (mod 2)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{invalid, Error, Result};
use crate::laurent::{Laurent, Monomial};

/// A variable `Y_{i,q^s}`: `(node, s)`.
pub type YKey = (usize, i64);
pub type YMonomial = Monomial<YKey>;
pub type YPolynomial = Laurent<YKey>;

/// The variable `Y_{i,q^s}` as a monomial.
pub fn y(i: usize, s: i64) -> YMonomial {
    Monomial::var((i, s))
}

/// Builds a monomial from `(i, s, exponent)` triples.
pub fn y_monomial<I: IntoIterator<Item = (usize, i64, i64)>>(triples: I) -> YMonomial {
    Monomial::from_pairs(triples.into_iter().map(|(i, s, e)| ((i, s), e)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DynkinKind {
    A,
    D,
    E,
}

/// A simply-laced Cartan matrix with a chosen bipartition of its nodes.
///
/// Labellings: `A_n` is the path `1-2-…-n`; `D_n` has the branch node `3`
/// with legs `1`, `2` and the tail `4-…-n`; `E_n` follows Bourbaki
/// (`1-3-4-5-…-n` with `2` attached to `4`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanData {
    kind: DynkinKind,
    n: usize,
    cartan: Vec<Vec<i64>>,
    xi: Vec<u8>,
}

impl CartanData {
    pub fn new(kind: DynkinKind, n: usize) -> Result<Self> {
        let edges: Vec<(usize, usize)> = match kind {
            DynkinKind::A if n >= 1 => (1..n).map(|i| (i, i + 1)).collect(),
            DynkinKind::D if n >= 4 => {
                let mut e = vec![(1, 3), (2, 3)];
                e.extend((3..n).map(|i| (i, i + 1)));
                e
            }
            DynkinKind::E if (6..=8).contains(&n) => {
                let mut e = vec![(1, 3), (3, 4), (2, 4)];
                e.extend((4..n).map(|i| (i, i + 1)));
                e
            }
            _ => return invalid(format!("no Dynkin diagram {kind:?}{n}")),
        };
        let mut cartan = vec![vec![0i64; n]; n];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(a, b) in &edges {
            cartan[a - 1][b - 1] = -1;
            cartan[b - 1][a - 1] = -1;
        }
        let root = match kind {
            DynkinKind::D => 3,
            _ => 1,
        };
        let xi = bipartition(&cartan, root);
        Ok(CartanData { kind, n, cartan, xi })
    }

    /// Parses labels such as `A3`, `D4`, `E6` (case-insensitive, optional `_`).
    pub fn parse(label: &str) -> Result<Self> {
        let t = label.trim();
        let mut chars = t.chars();
        let kind = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => DynkinKind::A,
            Some('D') => DynkinKind::D,
            Some('E') => DynkinKind::E,
            _ => return invalid(format!("unknown type label `{label}`")),
        };
        let rest = chars.as_str().trim_start_matches('_');
        let n: usize = rest
            .parse()
            .map_err(|_| Error::InvalidInput(format!("unknown type label `{label}`")))?;
        Self::new(kind, n)
    }

    /// Replaces the bipartition; `xi[i-1]` is `ξ_i`. Adjacent nodes must
    /// receive different values.
    pub fn with_xi(mut self, xi: Vec<u8>) -> Result<Self> {
        if xi.len() != self.n || xi.iter().any(|&x| x > 1) {
            return invalid("bipartition must assign 0 or 1 to every node");
        }
        for i in 1..=self.n {
            for j in self.neighbors(i) {
                if xi[i - 1] == xi[j - 1] {
                    return invalid(format!("nodes {i} and {j} are adjacent but share ξ"));
                }
            }
        }
        self.xi = xi;
        Ok(self)
    }

    pub fn kind(&self) -> DynkinKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> String {
        format!("{:?}{}", self.kind, self.n)
    }

    /// Entry `a_{ij}` (1-based).
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.cartan[i - 1][j - 1]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn xi(&self, i: usize) -> i64 {
        i64::from(self.xi[i - 1])
    }

    pub fn nodes(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (1..=self.n).filter(|&j| j != i && self.a(i, j) == -1).collect()
    }

    /// Edges `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                if self.a(i, j) == -1 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Nodes with `ξ_i = 0` (sinks of the sink-source orientation).
    pub fn i0(&self) -> Vec<usize> {
        self.nodes().filter(|&i| self.xi(i) == 0).collect()
    }

    /// Nodes with `ξ_i = 1` (sources).
    pub fn i1(&self) -> Vec<usize> {
        self.nodes().filter(|&i| self.xi(i) == 1).collect()
    }

    pub fn coxeter_number(&self) -> i64 {
        let n = self.n as i64;
        match (self.kind, self.n) {
            (DynkinKind::A, _) => n + 1,
            (DynkinKind::D, _) => 2 * n - 2,
            (DynkinKind::E, 6) => 12,
            (DynkinKind::E, 7) => 18,
            _ => 30,
        }
    }

    /// True when `Y_{i,s}` has the parity of the integral subcategory.
    pub fn in_lattice(&self, i: usize, s: i64) -> bool {
        (s - self.xi(i)).rem_euclid(2) == 0
    }

    pub(crate) fn check_node(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            return invalid(format!("node {i} out of range 1..={}", self.n));
        }
        Ok(())
    }
}

fn bipartition(cartan: &[Vec<i64>], root: usize) -> Vec<u8> {
    let n = cartan.len();
    let mut xi = vec![u8::MAX; n];
    xi[root - 1] = 0;
    let mut stack = vec![root - 1];
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if cartan[v][w] == -1 && xi[w] == u8::MAX {
                xi[w] = 1 - xi[v];
                stack.push(w);
            }
        }
    }
    xi
}

/// `A_{i,q^s} = Y_{i,s+1} Y_{i,s-1} ∏_{j ~ i} Y_{j,s}^{-1}`.
pub fn a_monomial(c: &CartanData, i: usize, s: i64) -> Result<YMonomial> {
    c.check_node(i)?;
    if c.in_lattice(i, s) {
        return invalid(format!("A_{{{i},{s}}} needs s ≡ ξ_{i} + 1 (mod 2)"));
    }
    Ok(a_monomial_unchecked(c, i, s))
}

pub(crate) fn a_monomial_unchecked(c: &CartanData, i: usize, s: i64) -> YMonomial {
    let mut pairs = vec![((i, s + 1), 1), ((i, s - 1), 1)];
    pairs.extend(c.neighbors(i).into_iter().map(|j| ((j, s), -1)));
    Monomial::from_pairs(pairs)
}

/// `v_i = A_{i, q^{ξ_i+1}}^{-1}`, the level-one truncation variables.
pub fn v_monomial(c: &CartanData, i: usize) -> YMonomial {
    a_monomial_unchecked(c, i, c.xi(i) + 1).inv()
}

pub fn is_dominant(m: &YMonomial) -> bool {
    m.is_nonnegative()
}

/// Multiset of `(i, s)` with multiplicities.
pub type AFactorization = BTreeMap<(usize, i64), u64>;

/// Finds the multiset `V` with `upper / lower = ∏ A_{i,s}^{v_{i,s}}`, i.e.
/// `lower = upper · ∏ A^{-v}` so that `lower ≤ upper` in the dominance order.
///
/// Returns `None` when no such nonnegative factorization exists.
pub fn a_factorize(c: &CartanData, upper: &YMonomial, lower: &YMonomial) -> Option<AFactorization> {
    let ratio = upper.div(lower);
    if ratio.is_one() {
        return Some(AFactorization::new());
    }
    if ratio.vars().any(|&(i, _)| i == 0 || i > c.rank()) {
        return None;
    }
    let tmin = ratio.vars().map(|&(_, s)| s).min()?;
    let tmax = ratio.vars().map(|&(_, s)| s).max()?;
    // Only A_{i,t} with tmin < t < tmax can occur. The top exponents force
    // v_{i,tmax-1}, and the recursion
    //   r_{i,t} = v_{i,t-1} + v_{i,t+1} - Σ_{j~i} v_{j,t}
    // determines every lower layer.
    let mut v: BTreeMap<(usize, i64), i64> = BTreeMap::new();
    let get = |v: &BTreeMap<(usize, i64), i64>, i: usize, t: i64| v.get(&(i, t)).copied().unwrap_or(0);
    let mut t = tmax;
    while t >= tmin + 2 {
        for i in c.nodes() {
            let mut val = ratio.exponent(&(i, t)) - get(&v, i, t + 1);
            for j in c.neighbors(i) {
                val += get(&v, j, t);
            }
            if val != 0 {
                v.insert((i, t - 1), val);
            }
        }
        t -= 1;
    }
    let mut out = AFactorization::new();
    let mut product = YMonomial::one();
    for (&(i, s), &e) in &v {
        if e < 0 || c.in_lattice(i, s) {
            return None;
        }
        product = &product * &a_monomial_unchecked(c, i, s).pow(e);
        out.insert((i, s), e as u64);
    }
    (product == ratio).then_some(out)
}

/// Coefficients of a weight in the basis of fundamental weights.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(pub BTreeMap<usize, i64>);

impl WeightVector {
    pub fn coeff(&self, i: usize) -> i64 {
        self.0.get(&i).copied().unwrap_or(0)
    }

    pub fn add_scaled(&mut self, i: usize, k: i64) {
        let e = self.0.entry(i).or_insert(0);
        *e += k;
        if *e == 0 {
            self.0.remove(&i);
        }
    }

    /// The simple root `α_i` in fundamental-weight coordinates.
    pub fn simple_root(c: &CartanData, i: usize) -> Self {
        let mut w = WeightVector::default();
        for j in c.nodes() {
            w.add_scaled(j, c.a(j, i));
        }
        w
    }

    /// Simple reflection `s_i(λ) = λ - λ_i α_i`.
    pub fn reflect(&self, c: &CartanData, i: usize) -> Self {
        let k = self.coeff(i);
        let mut out = self.clone();
        for j in c.nodes() {
            out.add_scaled(j, -k * c.a(j, i));
        }
        out
    }
}

pub fn weight(m: &YMonomial) -> WeightVector {
    let mut w = WeightVector::default();
    for (&(i, _), e) in m.iter() {
        w.add_scaled(i, e);
    }
    w
}

/// The ordinary character: weight multiplicities of a q-character.
pub fn character(p: &YPolynomial) -> BTreeMap<WeightVector, BigInt> {
    let mut out: BTreeMap<WeightVector, BigInt> = BTreeMap::new();
    for (m, c) in p.iter() {
        *out.entry(weight(m)).or_insert_with(BigInt::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// True when the weight multiplicities are invariant under every simple
/// reflection, as the character of a finite-dimensional module must be.
pub fn is_weyl_invariant(c: &CartanData, p: &YPolynomial) -> bool {
    let ch = character(p);
    ch.iter().all(|(w, mult)| {
        c.nodes()
            .all(|i| ch.get(&w.reflect(c, i)).is_some_and(|m2| m2 == mult))
    })
}

pub fn dominant_terms(p: &YPolynomial) -> YPolynomial {
    p.filter(is_dominant)
}

/// Shifts every spectral exponent by `k`.
pub fn shift_monomial(m: &YMonomial, k: i64) -> YMonomial {
    m.map_vars(|&(i, s)| (i, s + k))
}

pub fn shift(p: &YPolynomial, k: i64) -> YPolynomial {
    p.substitute(|&(i, s)| y(i, s + k))
}

/// The unique monomial that dominates every other monomial of `p`, if any.
pub fn highest_monomial(c: &CartanData, p: &YPolynomial) -> Option<YMonomial> {
    let candidates: Vec<&YMonomial> = p.monomials().collect();
    let top = candidates
        .iter()
        .find(|m| candidates.iter().all(|o| a_factorize(c, m, o).is_some()))?;
    Some((*top).clone())
}

/// Keeps the terms `top · ∏ v_i^{ν_i}`, i.e. those whose `A`-factorization
/// against `top` uses only `A_{i, q^{ξ_i+1}}`.
pub fn truncate_c1(c: &CartanData, p: &YPolynomial, top: &YMonomial) -> Result<YPolynomial> {
    let mut out = YPolynomial::zero();
    for (m, coeff) in p.iter() {
        let f = a_factorize(c, top, m)
            .ok_or_else(|| Error::InvalidInput(format!("term {m} is not below {top}")))?;
        if f.keys().all(|&(i, s)| s == c.xi(i) + 1) {
            out.add_term(m.clone(), coeff.clone());
        }
    }
    Ok(out)
}

/// Reads a truncated polynomial as `top · F(v)` and returns `F` in the
/// variables `v_1..v_n` (indexed by node).
pub fn to_v_polynomial(c: &CartanData, p: &YPolynomial, top: &YMonomial) -> Result<Laurent<usize>> {
    let mut out = Laurent::zero();
    for (m, coeff) in p.iter() {
        let f = a_factorize(c, top, m)
            .ok_or_else(|| Error::InvalidInput(format!("term {m} is not below {top}")))?;
        if f.keys().any(|&(i, s)| s != c.xi(i) + 1) {
            return invalid(format!("term {m} lies outside the level-one truncation"));
        }
        let vm = Monomial::from_pairs(f.into_iter().map(|((i, _), e)| (i, e as i64)));
        out.add_term(vm, coeff.clone());
    }
    Ok(out)
}

/// Inverse of [`to_v_polynomial`]: substitutes `v_i = A_{i,ξ_i+1}^{-1}` and
/// multiplies by `top`.
pub fn from_v_polynomial(c: &CartanData, top: &YMonomial, f: &Laurent<usize>) -> YPolynomial {
    f.substitute(|&i| v_monomial(c, i)).mul_monomial(top)
}

/// Canonical JSON of a monomial: `[[i, s, e], …]` sorted by `(i, s)`.
pub fn monomial_to_json(m: &YMonomial) -> Value {
    Value::Array(m.iter().map(|(&(i, s), e)| json!([i, s, e])).collect())
}

pub fn monomial_from_json(v: &Value) -> Result<YMonomial> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::InvalidInput("monomial must be a JSON array of [i, s, e]".into()))?;
    let mut triples = Vec::with_capacity(arr.len());
    for t in arr {
        let parts = t.as_array().filter(|a| a.len() == 3 || a.len() == 2);
        let parts = parts.ok_or_else(|| Error::InvalidInput(format!("bad monomial entry {t}")))?;
        let i = parts[0].as_u64().filter(|&i| i > 0);
        let s = parts[1].as_i64();
        let e = parts.get(2).map_or(Some(1), |e| e.as_i64());
        match (i, s, e) {
            (Some(i), Some(s), Some(e)) => triples.push((i as usize, s, e)),
            _ => return invalid(format!("bad monomial entry {t}")),
        }
    }
    Ok(y_monomial(triples))
}

/// Canonical JSON: `{"terms":[{"Y":[[i,s,e],…],"c":coeff},…]}`, terms sorted
/// by their `Y` lists.
pub fn poly_to_json(p: &YPolynomial) -> Value {
    let mut terms: Vec<(Vec<(usize, i64, i64)>, &BigInt)> = p
        .iter()
        .map(|(m, c)| (m.iter().map(|(&(i, s), e)| (i, s, e)).collect(), c))
        .collect();
    terms.sort();
    let terms: Vec<Value> = terms
        .into_iter()
        .map(|(ys, c)| {
            let ys: Vec<Value> = ys.into_iter().map(|(i, s, e)| json!([i, s, e])).collect();
            json!({"Y": ys, "c": bigint_json(c)})
        })
        .collect();
    json!({ "terms": terms })
}

pub fn poly_from_json(v: &Value) -> Result<YPolynomial> {
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidInput("polynomial JSON needs a `terms` array".into()))?;
    let mut p = YPolynomial::zero();
    for t in terms {
        let m = monomial_from_json(t.get("Y").unwrap_or(&Value::Null))?;
        let c = match t.get("c") {
            Some(Value::Number(n)) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| Error::InvalidInput(format!("bad coefficient {n}")))?,
            Some(Value::String(s)) => s
                .parse::<BigInt>()
                .map_err(|_| Error::InvalidInput(format!("bad coefficient {s}")))?,
            _ => return invalid("term needs a coefficient `c`"),
        };
        p.add_term(m, c);
    }
    Ok(p)
}

/// Small integers stay JSON numbers; huge ones become decimal strings.
pub fn bigint_json(c: &BigInt) -> Value {
    match i64::try_from(c) {
        Ok(x) => json!(x),
        Err(_) => json!(c.to_string()),
    }
}

/// Plain-text rendering, e.g. `Y[1,0] Y[2,3]^-1`.
pub struct TextMonomial<'a>(pub &'a YMonomial);

impl fmt::Display for TextMonomial<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_one() {
            return write!(f, "1");
        }
        for (k, (&(i, s), e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "Y[{i},{s}]")?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

pub fn latex_monomial(m: &YMonomial) -> String {
    if m.is_one() {
        return "1".into();
    }
    let mut out = String::new();
    for (&(i, s), e) in m.iter() {
        out.push_str(&format!("Y_{{{i},{s}}}"));
        if e != 1 {
            out.push_str(&format!("^{{{e}}}"));
        }
    }
    out
}

fn render_poly(p: &YPolynomial, mono: impl Fn(&YMonomial) -> String) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.iter().rev().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        if m.is_one() {
            out.push_str(&a.to_string());
        } else {
            if !a.is_one() {
                out.push_str(&a.to_string());
                out.push(' ');
            }
            out.push_str(&mono(m));
        }
    }
    out
}

/// Text rendering with the highest monomials first.
pub fn poly_to_text(p: &YPolynomial) -> String {
    render_poly(p, |m| TextMonomial(m).to_string())
}

pub fn poly_to_latex(p: &YPolynomial) -> String {
    render_poly(p, latex_monomial)
}

/// Renders a polynomial in the truncation variables, e.g. `1 + v1 + v1 v2`.
pub fn v_poly_to_text(f: &Laurent<usize>) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<(Vec<(usize, i64)>, &BigInt)> = f
        .iter()
        .map(|(m, c)| (m.iter().map(|(&i, e)| (i, e)).collect(), c))
        .collect();
    terms.sort_by(|a, b| {
        let deg = |t: &Vec<(usize, i64)>| t.iter().map(|p| p.1).sum::<i64>();
        deg(&a.0).cmp(&deg(&b.0)).then(a.0.cmp(&b.0))
    });
    let parts: Vec<String> = terms
        .into_iter()
        .map(|(m, c)| {
            let vars: Vec<String> = m
                .iter()
                .map(|&(i, e)| if e == 1 { format!("v{i}") } else { format!("v{i}^{e}") })
                .collect();
            match (vars.is_empty(), c.is_one()) {
                (true, _) => c.to_string(),
                (false, true) => vars.join(" "),
                (false, false) => format!("{c} {}", vars.join(" ")),
            }
        })
        .collect();
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3() -> CartanData {
        CartanData::parse("A3").unwrap()
    }

    #[test]
    fn labels_and_bipartitions() {
        let d4 = CartanData::parse("D4").unwrap();
        assert_eq!(d4.i0(), vec![3]);
        assert_eq!(d4.neighbors(3), vec![1, 2, 4]);
        assert_eq!(a3().i0(), vec![1, 3]);
        let e8 = CartanData::parse("e_8").unwrap();
        assert_eq!(e8.neighbors(4), vec![2, 3, 5]);
        assert_eq!(e8.coxeter_number(), 30);
        assert!(CartanData::parse("D3").is_err());
        assert!(CartanData::parse("F4").is_err());
        assert!(a3().with_xi(vec![0, 0, 1]).is_err());
        assert_eq!(a3().with_xi(vec![1, 0, 1]).unwrap().i0(), vec![2]);
    }

    #[test]
    fn a_monomials() {
        let a1 = CartanData::parse("A1").unwrap();
        assert_eq!(a_monomial(&a1, 1, 1).unwrap(), y_monomial([(1, 0, 1), (1, 2, 1)]));
        assert_eq!(
            a_monomial(&a3(), 2, 2).unwrap(),
            y_monomial([(2, 1, 1), (2, 3, 1), (1, 2, -1), (3, 2, -1)])
        );
        assert!(a_monomial(&a3(), 2, 1).is_err());
        assert!(a_monomial(&a3(), 4, 1).is_err());
    }

    #[test]
    fn factorization_examples() {
        let a1 = CartanData::parse("A1").unwrap();
        let f = a_factorize(&a1, &y(1, 0), &y(1, 2).inv()).unwrap();
        assert_eq!(f, AFactorization::from([((1, 1), 1)]));
        assert_eq!(a_factorize(&a1, &y(1, 0), &y(1, 0)), Some(AFactorization::new()));
        assert_eq!(a_factorize(&a1, &y(1, 0), &y(1, 0).inv()), None);
        // the wrong direction is not a factorization
        assert_eq!(a_factorize(&a1, &y(1, 2).inv(), &y(1, 0)), None);
    }

    #[test]
    fn json_round_trip() {
        let p = &YPolynomial::from_monomial(y(1, 0)) + &YPolynomial::term(y(2, 3).inv(), 2);
        let v = poly_to_json(&p);
        assert_eq!(poly_from_json(&v).unwrap(), p);
        assert_eq!(
            v.to_string(),
            r#"{"terms":[{"Y":[[1,0,1]],"c":1},{"Y":[[2,3,-1]],"c":2}]}"#
        );
    }

    #[test]
    fn truncation_of_single_monomial() {
        let m = y_monomial([(1, 0, 1), (2, 3, 1)]);
        let p = YPolynomial::from_monomial(m.clone());
        assert_eq!(truncate_c1(&a3(), &p, &m).unwrap(), p);
    }
}

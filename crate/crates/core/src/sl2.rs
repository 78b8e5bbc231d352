//! Closed forms for the loop algebra of `sl_2`: Kirillov–Reshetikhin
//! q-characters, the segment factorization of simple modules, and the
//! trigonometric R-matrix with an exact Yang–Baxter check.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{inconsistent, invalid, Error, Result};
use crate::ymono::{y, YMonomial, YPolynomial};

/// `χ_q(W_{k,q^s})`: the `k+1` terms
/// `∏_{t<k-j} Y_{s+2t} · ∏_{k-j<t≤k} Y_{s+2t}^{-1}` for `j = 0..=k`.
pub fn kr_qchar_sl2(k: u32, s: i64) -> YPolynomial {
    let k = i64::from(k);
    let mut p = YPolynomial::zero();
    for j in 0..=k {
        let mut m = YMonomial::one();
        for t in 0..k - j {
            m = &m * &y(1, s + 2 * t);
        }
        for t in k - j + 1..=k {
            m = m.div(&y(1, s + 2 * t));
        }
        p.add_term(m, BigInt::one());
    }
    p
}

/// The string `{q^s, q^{s+2}, …, q^{s+2k-2}}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub origin: i64,
    pub length: u32,
}

impl Segment {
    pub fn new(origin: i64, length: u32) -> Result<Self> {
        if length == 0 {
            return invalid("segments have length at least 1");
        }
        Ok(Segment { origin, length })
    }

    /// Exponent of the last point.
    pub fn end(&self) -> i64 {
        self.origin + 2 * (i64::from(self.length) - 1)
    }

    pub fn points(&self) -> impl Iterator<Item = i64> {
        let o = self.origin;
        (0..i64::from(self.length)).map(move |t| o + 2 * t)
    }

    pub fn contains(&self, other: &Segment) -> bool {
        self.origin <= other.origin && other.end() <= self.end()
            && (other.origin - self.origin) % 2 == 0
    }

    /// Neither contains the other and the union is again a segment.
    pub fn in_special_position(&self, other: &Segment) -> bool {
        if self.contains(other) || other.contains(self) {
            return false;
        }
        if (self.origin - other.origin).rem_euclid(2) != 0 {
            return false;
        }
        let (lo, hi) = if self.origin <= other.origin { (self, other) } else { (other, self) };
        // union is a string iff hi starts at most one step after lo ends
        hi.origin <= lo.end() + 2
    }

    pub fn highest_monomial(&self) -> YMonomial {
        self.points().fold(YMonomial::one(), |m, s| &m * &y(1, s))
    }

    pub fn qchar(&self) -> YPolynomial {
        kr_qchar_sl2(self.length, self.origin)
    }
}

/// Splits a dominant monomial in the `Y_{1,s}` into the unique multiset of
/// segments that are pairwise in general position.
pub fn canonical_segments(m: &YMonomial) -> Result<Vec<Segment>> {
    let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
    for (&(i, s), e) in m.iter() {
        if i != 1 {
            return invalid(format!("sl2 monomials use node 1 only, found node {i}"));
        }
        if e < 0 {
            return invalid("monomial is not dominant");
        }
        counts.insert(s, e);
    }
    let mut segments = Vec::new();
    while let Some((&start, _)) = counts.iter().find(|(_, &c)| c > 0) {
        let mut len = 0u32;
        let mut s = start;
        while counts.get(&s).is_some_and(|&c| c > 0) {
            *counts.get_mut(&s).expect("present") -= 1;
            len += 1;
            s += 2;
        }
        segments.push(Segment { origin: start, length: len });
        counts.retain(|_, c| *c > 0);
    }
    segments.sort();
    for (a, sa) in segments.iter().enumerate() {
        for sb in &segments[a + 1..] {
            if sa.in_special_position(sb) {
                return inconsistent(format!("segments {sa:?} and {sb:?} are in special position"));
            }
        }
    }
    Ok(segments)
}

/// q-character of the simple module with highest monomial `m`, as the product
/// of the KR q-characters of its canonical segments.
pub fn simple_qchar_sl2(m: &YMonomial) -> Result<YPolynomial> {
    Ok(canonical_segments(m)?
        .iter()
        .fold(YPolynomial::one(), |acc, seg| &acc * &seg.qchar()))
}

type Q = BigRational;

/// A square matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    pub dim: usize,
    pub entries: Vec<Q>,
}

impl RMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Q::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Q::one();
        }
        RMatrix { dim, entries }
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.entries[r * self.dim + c]
    }

    pub fn mul(&self, other: &RMatrix) -> RMatrix {
        let n = self.dim;
        let mut entries = vec![Q::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        RMatrix { dim: n, entries }
    }
}

fn check_pole(u: &Q, q: &Q) -> Result<()> {
    if q.is_zero() {
        return invalid("q must be nonzero");
    }
    let q2 = q * q;
    if *u == q2 || *u == q2.recip() {
        return Err(Error::Singularity(u.to_string()));
    }
    Ok(())
}

/// The six-vertex R-matrix on `V⊗V`, basis `e1⊗e1, e1⊗e2, e2⊗e1, e2⊗e2`.
pub fn r_matrix_sl2(u: &Q, q: &Q) -> Result<RMatrix> {
    check_pole(u, q)?;
    let one = Q::one();
    let q2 = q * q;
    let den = u - &q2;
    let diag = q * (u - &one) / &den;
    let off = (&one - &q2) / &den;
    let mut r = RMatrix::identity(4);
    r.entries[5] = diag.clone();
    r.entries[6] = off.clone();
    r.entries[9] = u * &off;
    r.entries[10] = diag;
    Ok(r)
}

/// Embeds a 4×4 operator into `V⊗V⊗V` acting on the factors `a < b`.
fn embed(r: &RMatrix, a: usize, b: usize) -> RMatrix {
    let mut out = RMatrix { dim: 8, entries: vec![Q::zero(); 64] };
    let bit = |idx: usize, f: usize| (idx >> (2 - f)) & 1;
    for row in 0..8 {
        for col in 0..8 {
            let spectator = (0..3).filter(|&f| f != a && f != b).all(|f| bit(row, f) == bit(col, f));
            if !spectator {
                continue;
            }
            let rr = bit(row, a) * 2 + bit(row, b);
            let cc = bit(col, a) * 2 + bit(col, b);
            out.entries[row * 8 + col] = r.get(rr, cc).clone();
        }
    }
    out
}

/// Checks `R12(u) R13(uv) R23(v) = R23(v) R13(uv) R12(u)` exactly.
pub fn verify_yang_baxter(u: &Q, v: &Q, q: &Q) -> Result<bool> {
    let uv = u * v;
    let r12 = embed(&r_matrix_sl2(u, q)?, 0, 1);
    let r13 = embed(&r_matrix_sl2(&uv, q)?, 0, 2);
    let r23 = embed(&r_matrix_sl2(v, q)?, 1, 2);
    let lhs = r12.mul(&r13).mul(&r23);
    let rhs = r23.mul(&r13).mul(&r12);
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ymono::y_monomial;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn kr_small_cases() {
        assert!(kr_qchar_sl2(0, 5).is_one());
        let w1 = &YPolynomial::from_monomial(y(1, 0)) + &YPolynomial::from_monomial(y(1, 2).inv());
        assert_eq!(kr_qchar_sl2(1, 0), w1);
        let w2 = [
            y_monomial([(1, 0, 1), (1, 2, 1)]),
            y_monomial([(1, 0, 1), (1, 4, -1)]),
            y_monomial([(1, 2, -1), (1, 4, -1)]),
        ]
        .into_iter()
        .fold(YPolynomial::zero(), |acc, m| &acc + &YPolynomial::from_monomial(m));
        assert_eq!(kr_qchar_sl2(2, 0), w2);
    }

    #[test]
    fn segment_examples() {
        let seg = |o, l| Segment { origin: o, length: l };
        assert_eq!(canonical_segments(&y_monomial([(1, 0, 1), (1, 2, 1)])).unwrap(), vec![seg(0, 2)]);
        assert_eq!(
            canonical_segments(&y_monomial([(1, 0, 1), (1, 4, 1)])).unwrap(),
            vec![seg(0, 1), seg(4, 1)]
        );
        assert_eq!(canonical_segments(&y_monomial([(1, 0, 2)])).unwrap(), vec![seg(0, 1), seg(0, 1)]);
        assert!(canonical_segments(&y(1, 0).inv()).is_err());
        assert!(seg(0, 1).in_special_position(&seg(2, 1)));
        assert!(!seg(0, 1).in_special_position(&seg(4, 1)));
        assert!(!seg(0, 3).in_special_position(&seg(2, 1)));
        assert!(!seg(0, 1).in_special_position(&seg(1, 1)));
    }

    #[test]
    fn r_matrix_at_one_is_the_flip() {
        let r = r_matrix_sl2(&Q::one(), &q(3, 2)).unwrap();
        let mut p = RMatrix::identity(4);
        p.entries[5] = Q::zero();
        p.entries[10] = Q::zero();
        p.entries[6] = Q::one();
        p.entries[9] = Q::one();
        assert_eq!(r, p);
    }

    #[test]
    fn poles_are_reported() {
        let qq = q(2, 1);
        assert!(matches!(r_matrix_sl2(&q(4, 1), &qq), Err(Error::Singularity(_))));
        assert!(matches!(r_matrix_sl2(&q(1, 4), &qq), Err(Error::Singularity(_))));
        assert!(matches!(verify_yang_baxter(&q(2, 1), &q(2, 1), &qq), Err(Error::Singularity(_))));
    }

    #[test]
    fn yang_baxter_fixed_points() {
        assert!(verify_yang_baxter(&q(3, 1), &q(5, 1), &q(2, 1)).unwrap());
        assert!(verify_yang_baxter(&Q::one(), &Q::one(), &q(7, 3)).unwrap());
    }
}

//! Sparse Laurent monomials and polynomials with arbitrary-precision integer
//! coefficients.
//!
//! Both the q-character ring (variables `Y_{i,q^s}`) and the cluster algebra
//! (one variable per quiver vertex) are built on these two types, so they are
//! generic over the variable type `V`.
//!
//! Monomials are totally ordered by a *group* order: two monomials are
//! compared at the smallest variable where their exponents differ, the larger
//! exponent winning. Because the order is compatible with multiplication, the
//! leading term of a product is the product of the leading terms, which is
//! what [`Laurent::exact_div`] relies on.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A Laurent monomial `∏ v^e`, stored as a sorted list of nonzero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial<V> {
    exps: Vec<(V, i64)>,
}

impl<V: Ord + Clone> Monomial<V> {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: V) -> Self {
        Monomial { exps: vec![(v, 1)] }
    }

    /// Builds a monomial from `(variable, exponent)` pairs; repeated variables
    /// are merged and zero exponents dropped.
    pub fn from_pairs<I: IntoIterator<Item = (V, i64)>>(pairs: I) -> Self {
        let mut map: BTreeMap<V, i64> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial {
            exps: map.into_iter().filter(|&(_, e)| e != 0).collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Number of variables with a nonzero exponent.
    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, v: &V) -> i64 {
        match self.exps.binary_search_by(|(w, _)| w.cmp(v)) {
            Ok(pos) => self.exps[pos].1,
            Err(_) => 0,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&V, i64)> + '_ {
        self.exps.iter().map(|(v, e)| (v, *e))
    }

    pub fn vars(&self) -> impl Iterator<Item = &V> + '_ {
        self.exps.iter().map(|(v, _)| v)
    }

    /// True when no exponent is negative.
    pub fn is_nonnegative(&self) -> bool {
        self.exps.iter().all(|&(_, e)| e > 0)
    }

    pub fn inv(&self) -> Self {
        Monomial {
            exps: self.exps.iter().map(|(v, e)| (v.clone(), -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return Self::one();
        }
        Monomial {
            exps: self.exps.iter().map(|(v, e)| (v.clone(), e * k)).collect(),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.merge(other, -1)
    }

    fn merge(&self, other: &Self, sign: i64) -> Self {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.exps, &other.exps);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => unreachable!(),
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0.clone(), sign * b[j].1));
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + sign * b[j].1;
                    if e != 0 {
                        out.push((a[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Monomial { exps: out }
    }

    /// Renames variables; distinct variables may be identified.
    pub fn map_vars<W: Ord + Clone>(&self, mut f: impl FnMut(&V) -> W) -> Monomial<W> {
        Monomial::from_pairs(self.exps.iter().map(|(v, e)| (f(v), *e)))
    }

    /// Substitutes a monomial for every variable.
    pub fn substitute<W: Ord + Clone>(&self, mut f: impl FnMut(&V) -> Monomial<W>) -> Monomial<W> {
        self.exps
            .iter()
            .fold(Monomial::one(), |acc, (v, e)| &acc * &f(v).pow(*e))
    }
}

impl<V: Ord + Clone> Default for Monomial<V> {
    fn default() -> Self {
        Self::one()
    }
}

impl<'a, V: Ord + Clone> Mul<&'a Monomial<V>> for &'a Monomial<V> {
    type Output = Monomial<V>;
    fn mul(self, rhs: &'a Monomial<V>) -> Monomial<V> {
        self.merge(rhs, 1)
    }
}

impl<V: Ord + Clone> Mul for Monomial<V> {
    type Output = Monomial<V>;
    fn mul(self, rhs: Monomial<V>) -> Monomial<V> {
        self.merge(&rhs, 1)
    }
}

impl<V: Ord> PartialOrd for Monomial<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<V: Ord> Ord for Monomial<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.exps, &other.exps);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(x), None) => return x.1.cmp(&0),
                (None, Some(y)) => return 0.cmp(&y.1),
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    Ordering::Less => return x.1.cmp(&0),
                    Ordering::Greater => return 0.cmp(&y.1),
                    Ordering::Equal => {
                        if x.1 != y.1 {
                            return x.1.cmp(&y.1);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

/// A finite `ℤ`-linear combination of Laurent monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Laurent<V> {
    terms: BTreeMap<Monomial<V>, BigInt>,
}

impl<V: Ord + Clone> Default for Laurent<V> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<V: Ord + Clone> Laurent<V> {
    pub fn zero() -> Self {
        Laurent { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_monomial(Monomial::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(v: V) -> Self {
        Self::from_monomial(Monomial::var(v))
    }

    pub fn from_monomial(m: Monomial<V>) -> Self {
        Self::term(m, 1)
    }

    pub fn term(m: Monomial<V>, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c.into());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial<V>, BigInt)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    /// Number of distinct monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Monomial<V>, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial<V>> + '_ {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &Monomial<V>) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Sum of all coefficients (the dimension, for a q-character).
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn all_coefficients_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    pub fn add_term(&mut self, m: Monomial<V>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Leading term in the monomial group order.
    pub fn leading_term(&self) -> Option<(&Monomial<V>, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn mul_monomial(&self, m: &Monomial<V>) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(k, c)| (k * m, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(k, x)| (k.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Monomial<V>) -> bool) -> Self {
        Laurent {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Smallest and largest exponent of `v` over all terms (absent counts as 0).
    pub fn exponent_range(&self, v: &V) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|m| m.exponent(v));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    pub fn variables(&self) -> std::collections::BTreeSet<V> {
        self.terms.keys().flat_map(|m| m.vars().cloned()).collect()
    }

    /// Substitutes a monomial for every variable.
    pub fn substitute<W: Ord + Clone>(&self, mut f: impl FnMut(&V) -> Monomial<W>) -> Laurent<W> {
        let mut out = Laurent::zero();
        for (m, c) in &self.terms {
            out.add_term(m.substitute(&mut f), c.clone());
        }
        out
    }

    /// Renames the variables of every term.
    pub fn map_vars<W: Ord + Clone>(&self, mut f: impl FnMut(&V) -> W) -> Laurent<W> {
        let mut out = Laurent::zero();
        for (m, c) in &self.terms {
            out.add_term(m.map_vars(&mut f), c.clone());
        }
        out
    }

    /// Substitutes either `1` (`None`) or a monomial for every variable.
    pub fn specialize<W: Ord + Clone>(&self, mut f: impl FnMut(&V) -> Option<Monomial<W>>) -> Laurent<W> {
        self.substitute(|v| f(v).unwrap_or_else(Monomial::one))
    }

    /// Exact division in the Laurent ring.
    ///
    /// Returns `None` when `divisor` does not divide `self`. The candidate
    /// quotient is confined to the exponent box forced by the lowest and
    /// highest degrees in each variable, which makes the loop terminate on
    /// non-divisible input as well.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (lead_m, lead_c) = divisor.leading_term()?;
        let (lead_m, lead_c) = (lead_m.clone(), lead_c.clone());
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        let mut vars = self.variables();
        vars.extend(divisor.variables());
        let mut bounds: BTreeMap<V, (i64, i64)> = BTreeMap::new();
        for v in vars {
            let (nlo, nhi) = self.exponent_range(&v).unwrap_or((0, 0));
            let (dlo, dhi) = divisor.exponent_range(&v).unwrap_or((0, 0));
            if nlo - dlo > nhi - dhi {
                return None;
            }
            bounds.insert(v, (nlo - dlo, nhi - dhi));
        }
        let in_box = |m: &Monomial<V>| {
            m.iter().all(|(v, e)| {
                bounds
                    .get(v)
                    .is_some_and(|&(lo, hi)| lo <= e && e <= hi)
            }) && bounds
                .iter()
                .all(|(v, &(lo, hi))| m.exponent(v) != 0 || (lo <= 0 && 0 <= hi))
        };

        let mut rem = self.clone();
        let mut quotient = Self::zero();
        while let Some((m, c)) = rem.leading_term() {
            let (q, r) = c.div_rem(&lead_c);
            if !r.is_zero() {
                return None;
            }
            let t = m.div(&lead_m);
            if !in_box(&t) {
                return None;
            }
            for (dm, dc) in &divisor.terms {
                rem.add_term(&t * dm, -(dc * &q));
            }
            quotient.add_term(t, q);
        }
        Some(quotient)
    }
}

impl<'a, V: Ord + Clone> Add<&'a Laurent<V>> for &'a Laurent<V> {
    type Output = Laurent<V>;
    fn add(self, rhs: &'a Laurent<V>) -> Laurent<V> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<V: Ord + Clone> Add for Laurent<V> {
    type Output = Laurent<V>;
    fn add(mut self, rhs: Laurent<V>) -> Laurent<V> {
        self += &rhs;
        self
    }
}

impl<'a, V: Ord + Clone> AddAssign<&'a Laurent<V>> for Laurent<V> {
    fn add_assign(&mut self, rhs: &'a Laurent<V>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<'a, V: Ord + Clone> SubAssign<&'a Laurent<V>> for Laurent<V> {
    fn sub_assign(&mut self, rhs: &'a Laurent<V>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl<'a, V: Ord + Clone> Sub<&'a Laurent<V>> for &'a Laurent<V> {
    type Output = Laurent<V>;
    fn sub(self, rhs: &'a Laurent<V>) -> Laurent<V> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<V: Ord + Clone> Sub for Laurent<V> {
    type Output = Laurent<V>;
    fn sub(mut self, rhs: Laurent<V>) -> Laurent<V> {
        self -= &rhs;
        self
    }
}

impl<V: Ord + Clone> Neg for Laurent<V> {
    type Output = Laurent<V>;
    fn neg(self) -> Laurent<V> {
        Laurent {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<'a, V: Ord + Clone> Mul<&'a Laurent<V>> for &'a Laurent<V> {
    type Output = Laurent<V>;
    fn mul(self, rhs: &'a Laurent<V>) -> Laurent<V> {
        let mut out = Laurent::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma * mb, ca * cb);
            }
        }
        out
    }
}

impl<V: Ord + Clone> Mul for Laurent<V> {
    type Output = Laurent<V>;
    fn mul(self, rhs: Laurent<V>) -> Laurent<V> {
        &self * &rhs
    }
}

impl<V: Ord + Clone + fmt::Debug> fmt::Display for Monomial<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v:?}")?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Laurent<u8>;

    fn x(v: u8) -> P {
        P::var(v)
    }

    #[test]
    fn order_is_multiplicative() {
        let a = Monomial::from_pairs([(0u8, 1), (1, -2)]);
        let b = Monomial::from_pairs([(0u8, 1), (1, -3)]);
        let c = Monomial::from_pairs([(1u8, 5), (2, -1)]);
        assert!(a > b);
        assert!(&a * &c > &b * &c);
        assert!(Monomial::var(0u8) > Monomial::one());
        assert!(Monomial::var(0u8).inv() < Monomial::one());
    }

    #[test]
    fn exact_division_recovers_factor() {
        let f = &(&x(0) + &x(1)) * &(&x(2) - &P::one());
        let g = &x(0) + &x(1);
        assert_eq!(f.exact_div(&g), Some(&x(2) - &P::one()));
    }

    #[test]
    fn exact_division_with_negative_exponents() {
        let inv = P::from_monomial(Monomial::var(1).inv());
        let d = &x(0) + &inv;
        let q = &(&x(2) + &P::constant(3)) * &inv;
        assert_eq!((&d * &q).exact_div(&d), Some(q));
    }

    #[test]
    fn inexact_division_is_rejected() {
        let f = &x(0) + &P::one();
        assert_eq!(f.exact_div(&(&x(0) - &P::one())), None);
        assert_eq!(x(0).exact_div(&P::constant(2)), None);
        assert_eq!(P::one().exact_div(&(&x(0) + &x(1))), None);
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = &x(0) - &x(0);
        assert!(p.is_zero());
        let m = Monomial::var(3u8);
        assert!((&m * &m.inv()).is_one());
    }
}

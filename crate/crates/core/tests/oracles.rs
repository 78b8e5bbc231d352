//! Library results against independent brute-force oracles written here.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use qloop::engine::KrCalculator;
use qloop::engine::KRLabel;
use qloop::preproj::{fundamental_qchar, standard_qchar, GradedW};
use qloop::quiverrep::{grassmannian_count_fq, indecomposable_rep, sub_dimension_vectors, Quiver, QuiverRep};
use qloop::sl2::{canonical_segments, Segment};
use qloop::ymono::{
    a_factorize, a_monomial, character, y, y_monomial, CartanData, WeightVector, YMonomial, YPolynomial,
};

// ---------------------------------------------------------------------------
// A-factorization by exhaustive search over a box of exponents

fn a_keys(c: &CartanData, lo: i64, hi: i64) -> Vec<(usize, i64)> {
    let mut keys = Vec::new();
    for i in c.nodes() {
        for s in lo..=hi {
            if c.in_lattice(i, s - 1) {
                keys.push((i, s));
            }
        }
    }
    keys
}

fn apply(c: &CartanData, top: &YMonomial, keys: &[(usize, i64)], v: &[u64]) -> YMonomial {
    let mut m = top.clone();
    for (&(i, s), &e) in keys.iter().zip(v) {
        m = m.div(&a_monomial(c, i, s).unwrap().pow(e as i64));
    }
    m
}

fn all_vectors(len: usize, max: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| (0..=max).map(move |e| [v.clone(), vec![e]].concat()))
            .collect();
    }
    out
}

#[test]
fn a_factorize_matches_exhaustive_search() {
    for (label, top) in [
        ("A2", y_monomial([(1, 0, 1), (2, 1, 1)])),
        ("A3", y_monomial([(2, 1, 2)])),
    ] {
        let c = CartanData::parse(label).unwrap();
        let keys = a_keys(&c, 1, 4);
        let vectors = all_vectors(keys.len(), 2);
        let mut images: BTreeMap<YMonomial, Vec<Vec<u64>>> = BTreeMap::new();
        for v in &vectors {
            images.entry(apply(&c, &top, &keys, v)).or_default().push(v.clone());
        }
        for (lower, sols) in &images {
            assert_eq!(sols.len(), 1, "A-monomials are independent");
            let expected: BTreeMap<(usize, i64), u64> =
                keys.iter().zip(&sols[0]).filter(|(_, &e)| e > 0).map(|(&k, &e)| (k, e)).collect();
            assert_eq!(a_factorize(&c, &top, lower), Some(expected));
            // a weight shift can never be absorbed
            let off = lower * &y(1, 0);
            assert_eq!(a_factorize(&c, &top, &off), None);
        }
    }
}

// ---------------------------------------------------------------------------
// Subrepresentation counts by listing every subspace as a set of vectors

type Vector = Vec<u64>;

fn space(dim: usize, p: u64) -> Vec<Vector> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out.into_iter().flat_map(|v: Vector| (0..p).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

/// Every subset of `F_p^dim` closed under addition and scaling.
fn subspaces(dim: usize, p: u64) -> Vec<BTreeSet<Vector>> {
    let vecs = space(dim, p);
    let n = vecs.len();
    assert!(n <= 16, "oracle only for tiny spaces");
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let set: BTreeSet<Vector> = (0..n).filter(|b| mask >> b & 1 == 1).map(|b| vecs[b].clone()).collect();
        if !set.contains(&vec![0; dim]) {
            continue;
        }
        let closed = set.iter().all(|a| {
            set.iter().all(|b| set.contains(&a.iter().zip(b).map(|(x, y)| (x + y) % p).collect::<Vector>()))
                && (0..p).all(|k| set.contains(&a.iter().map(|x| x * k % p).collect::<Vector>()))
        });
        if closed {
            out.push(set);
        }
    }
    out
}

fn log_p(n: usize, p: u64) -> i64 {
    let mut k = 0;
    let mut m = 1usize;
    while m < n {
        m *= p as usize;
        k += 1;
    }
    k
}

fn apply_map(m: &QuiverRep, arrow: usize, v: &Vector, p: u64) -> Vector {
    let mat = &m.maps[arrow];
    let pi = BigInt::from(p);
    (0..mat.rows)
        .map(|r| {
            let s: BigInt = (0..mat.cols).map(|c| mat.get(r, c) * BigInt::from(v[c])).sum();
            s.mod_floor(&pi).to_u64().unwrap()
        })
        .collect()
}

/// Number of subrepresentations per dimension vector.
fn brute_counts(m: &QuiverRep, p: u64) -> BTreeMap<Vec<i64>, u64> {
    let per_vertex: Vec<Vec<BTreeSet<Vector>>> = m.dims.iter().map(|&d| subspaces(d, p)).collect();
    let mut counts = BTreeMap::new();
    let mut choice = vec![0usize; m.dims.len()];
    loop {
        let ok = m.quiver.arrows.iter().enumerate().all(|(a, &(s, t))| {
            per_vertex[s][choice[s]].iter().all(|v| per_vertex[t][choice[t]].contains(&apply_map(m, a, v, p)))
        });
        if ok {
            let nu: Vec<i64> = choice.iter().enumerate().map(|(v, &k)| log_p(per_vertex[v][k].len(), p)).collect();
            *counts.entry(nu).or_insert(0) += 1;
        }
        let mut v = 0;
        loop {
            if v == choice.len() {
                return counts;
            }
            choice[v] += 1;
            if choice[v] < per_vertex[v].len() {
                break;
            }
            choice[v] = 0;
            v += 1;
        }
    }
}

fn check_counts(m: &QuiverRep) {
    for p in [2u64, 3] {
        if m.dims.iter().any(|&d| p.pow(d as u32) > 16) {
            continue;
        }
        let brute = brute_counts(m, p);
        let mut total = 0u64;
        for nu in sub_dimension_vectors(&m.dims) {
            let fast = grassmannian_count_fq(m, &nu, p).unwrap();
            let expected = brute.get(&nu).copied().unwrap_or(0);
            assert_eq!(fast, BigInt::from(expected), "dims {:?} ν {:?} p {}", m.dims, nu, p);
            total += expected;
        }
        assert_eq!(total, brute.values().sum::<u64>(), "per-ν split covers every subrepresentation");
    }
}

#[test]
fn subrepresentation_counts_match_enumeration() {
    for (label, beta) in [
        ("A2", vec![1, 1]),
        ("A3", vec![1, 1, 1]),
        ("A3", vec![0, 1, 1]),
        ("A4", vec![1, 1, 1, 1]),
        ("D4", vec![1, 1, 2, 1]),
        ("D4", vec![1, 1, 1, 1]),
    ] {
        let c = CartanData::parse(label).unwrap();
        let rep = indecomposable_rep(&Quiver::sink_source(&c), &beta).unwrap();
        check_counts(&rep);
    }
}

#[test]
fn subrepresentation_counts_of_direct_sums() {
    let c = CartanData::parse("A2").unwrap();
    let q = Quiver::sink_source(&c);
    let s1 = QuiverRep::simple(&q, 0);
    let plane = s1.direct_sum(&s1).unwrap();
    check_counts(&plane);
    let m = indecomposable_rep(&q, &[1, 1]).unwrap();
    check_counts(&m.direct_sum(&s1).unwrap());
    check_counts(&m.direct_sum(&QuiverRep::simple(&q, 1)).unwrap());
}

// ---------------------------------------------------------------------------
// Segments: general-position multisets are unique per highest monomial

fn points(s: &Segment) -> BTreeSet<i64> {
    (0..i64::from(s.length)).map(|t| s.origin + 2 * t).collect()
}

/// Union of the two point sets is a string strictly larger than each.
fn special(a: &Segment, b: &Segment) -> bool {
    let (pa, pb) = (points(a), points(b));
    let u: Vec<i64> = pa.union(&pb).copied().collect();
    let string = u.windows(2).all(|w| w[1] - w[0] == 2);
    string && u.len() > pa.len() && u.len() > pb.len()
}

#[test]
fn segment_decomposition_is_the_unique_general_position_one() {
    let mut all = Vec::new();
    for o in [0i64, 2, 4, 6] {
        for l in 1..=3u32 {
            all.push(Segment::new(o, l).unwrap());
        }
    }
    let mut by_monomial: BTreeMap<YMonomial, BTreeSet<Vec<Segment>>> = BTreeMap::new();
    let n = all.len();
    // b == n or d == n stands for "no further segment"
    for a in 0..n {
        for b in a..=n {
            for d in b..=n {
                let mut segs: Vec<Segment> = [a, b, d].iter().filter(|&&x| x < n).map(|&x| all[x]).collect();
                segs.sort();
                let general = segs.iter().enumerate().all(|(x, s)| segs[x + 1..].iter().all(|t| !special(s, t)));
                if general {
                    let m = segs.iter().fold(YMonomial::one(), |m, s| &m * &s.highest_monomial());
                    by_monomial.entry(m).or_default().insert(segs);
                }
            }
        }
    }
    assert!(by_monomial.len() > 50);
    for (m, options) in by_monomial {
        assert_eq!(options.len(), 1, "{m}");
        let mut got = canonical_segments(&m).unwrap();
        got.sort();
        assert_eq!(&got, options.iter().next().unwrap());
    }
}

// ---------------------------------------------------------------------------
// Type A: KR modules restrict to rectangular irreducibles, whose characters
// are counted by semistandard tableaux

fn increasing_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for rest in increasing_subsets(n, k - 1) {
            if rest.first().is_none_or(|&r| r > first) {
                out.push([vec![first], rest].concat());
            }
        }
    }
    out
}

/// Weight multiplicities of `V(k ϖ_i)` for `sl_{n+1}`: tableaux of shape
/// `i × k` filled with `1..=n+1`, weakly increasing along rows.
fn tableaux_character(n: usize, i: usize, k: usize) -> BTreeMap<WeightVector, BigInt> {
    let cols = increasing_subsets(n + 1, i);
    let mut tableaux: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for t in &tableaux {
            for col in &cols {
                if t.last().is_none_or(|prev: &Vec<usize>| prev.iter().zip(col).all(|(a, b)| a <= b)) {
                    let mut t2 = t.clone();
                    t2.push(col.clone());
                    next.push(t2);
                }
            }
        }
        tableaux = next;
    }
    let mut out: BTreeMap<WeightVector, BigInt> = BTreeMap::new();
    for t in tableaux {
        let mut content = vec![0i64; n + 2];
        for col in &t {
            for &e in col {
                content[e] += 1;
            }
        }
        let mut w = WeightVector::default();
        for j in 1..=n {
            w.add_scaled(j, content[j] - content[j + 1]);
        }
        *out.entry(w).or_insert_with(BigInt::zero) += 1;
    }
    out
}

#[test]
fn type_a_kr_restricts_to_rectangular_irreducible() {
    for (label, n, kmax) in [("A1", 1, 5u32), ("A2", 2, 3), ("A3", 3, 2)] {
        let c = CartanData::parse(label).unwrap();
        let mut kr = KrCalculator::new(&c).unwrap();
        for i in 1..=n {
            for k in 1..=kmax {
                let p = kr.kr(KRLabel { node: i, k, s: c.xi(i) }).unwrap();
                assert_eq!(character(&p), tableaux_character(n, i, k as usize), "{label} W({i})_{k}");
            }
        }
    }
}

// ---------------------------------------------------------------------------
// The D4 fundamental restricts to the adjoint representation plus a trivial one

#[test]
fn d4_fundamental_restricts_to_adjoint_plus_trivial() {
    let c = CartanData::parse("D4").unwrap();
    let p = fundamental_qchar(&c, 3, 0).unwrap();
    let ch = character(&p);
    let dominant: Vec<(&WeightVector, &BigInt)> = ch.iter().filter(|(w, _)| w.0.values().all(|&x| x >= 0)).collect();
    // so(8): highest weight ϖ_3 (the adjoint weight), zero weight of multiplicity 4, plus the trivial summand
    assert_eq!(dominant.len(), 2);
    assert_eq!(ch[&WeightVector::default()], BigInt::from(5));
    assert_eq!(ch[&WeightVector([(3, 1)].into())], BigInt::from(1));
    // 24 roots, each of multiplicity one
    let roots: usize = ch.iter().filter(|(w, _)| !w.0.is_empty()).map(|(_, m)| m.to_usize().unwrap()).sum();
    assert_eq!(roots, 24);
}

// ---------------------------------------------------------------------------
// Standard modules are products of fundamentals

fn w(pairs: &[((usize, i64), u64)]) -> GradedW {
    GradedW::from_pairs(pairs.iter().copied())
}

#[test]
fn standard_modules_factor_into_fundamentals() {
    for (label, pairs) in [
        ("A1", vec![((1, 0), 1), ((1, 2), 1)]),
        ("A1", vec![((1, 0), 3)]),
        ("A2", vec![((1, 0), 1), ((2, 1), 1)]),
        ("A2", vec![((1, 0), 2), ((1, 2), 1)]),
        ("A3", vec![((2, 1), 1), ((1, 2), 1)]),
    ] {
        let c = CartanData::parse(label).unwrap();
        let mut expected = YPolynomial::one();
        for &((i, r), d) in &pairs {
            expected = &expected * &fundamental_qchar(&c, i, r).unwrap().pow(d as u32);
        }
        assert_eq!(standard_qchar(&c, &w(&pairs)).unwrap(), expected, "{label} {pairs:?}");
    }
}

#[test]
fn sl2_standard_module_on_one_vertex_has_binomial_multiplicities() {
    let c = CartanData::parse("A1").unwrap();
    for d in 1..=4u64 {
        let p = standard_qchar(&c, &w(&[((1, 0), d)])).unwrap();
        // Y_0^{d-k} Y_2^{-k} with multiplicity C(d, k)
        for k in 0..=d as i64 {
            let m = y_monomial([(1, 0, d as i64 - k), (1, 2, -k)]);
            let binom = (0..k).fold(BigInt::from(1), |acc, j| acc * (d as i64 - j) / (j + 1));
            assert_eq!(p.coefficient(&m), binom);
        }
        assert_eq!(p.len(), d as usize + 1);
    }
}

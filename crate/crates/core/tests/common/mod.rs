//! Shared fixtures for the integration tests.
#![allow(dead_code)]

use qloop::ymono::{a_monomial, y, CartanData, YMonomial, YPolynomial};

/// `∏ A_{i,s}^{-e}` from `(i, s, e)` triples.
pub fn v_product(c: &CartanData, factors: &[(usize, i64, i64)]) -> YMonomial {
    factors
        .iter()
        .fold(YMonomial::one(), |m, &(i, s, e)| m.div(&a_monomial(c, i, s).unwrap().pow(e)))
}

/// `top · Σ coeff · ∏ v_{i,s}^e`.
pub fn expand(c: &CartanData, top: &YMonomial, terms: &[(i64, Vec<(usize, i64, i64)>)]) -> YPolynomial {
    let mut p = YPolynomial::zero();
    for (k, f) in terms {
        p.add_term(top * &v_product(c, f), (*k).into());
    }
    p
}

/// The worked D4 example: `χ_q(L(Y_{3,0}))` written as `Y_{3,0}` times a
/// sum of products of `v_{i,s} = A_{i,s}^{-1}`, one entry per displayed term.
pub fn d4_fundamental_terms() -> Vec<(i64, Vec<(usize, i64, i64)>)> {
    let base = [(3, 1, 1), (1, 2, 1), (2, 2, 1), (4, 2, 1)];
    let with = |extra: &[(usize, i64, i64)]| -> Vec<(usize, i64, i64)> {
        let mut v = base.to_vec();
        v.extend_from_slice(extra);
        v
    };
    vec![
        (1, vec![]),
        (1, vec![(3, 1, 1)]),
        (1, vec![(3, 1, 1), (1, 2, 1)]),
        (1, vec![(3, 1, 1), (2, 2, 1)]),
        (1, vec![(3, 1, 1), (4, 2, 1)]),
        (1, vec![(3, 1, 1), (1, 2, 1), (2, 2, 1)]),
        (1, vec![(3, 1, 1), (1, 2, 1), (4, 2, 1)]),
        (1, vec![(3, 1, 1), (2, 2, 1), (4, 2, 1)]),
        (1, base.to_vec()),
        (1, vec![(3, 1, 1), (1, 2, 1), (2, 2, 1), (3, 3, 1)]),
        (1, vec![(3, 1, 1), (1, 2, 1), (4, 2, 1), (3, 3, 1)]),
        (1, vec![(3, 1, 1), (2, 2, 1), (4, 2, 1), (3, 3, 1)]),
        (2, with(&[(3, 3, 1)])),
        (1, vec![(3, 1, 1), (1, 2, 1), (2, 2, 1), (3, 3, 1), (4, 4, 1)]),
        (1, vec![(3, 1, 1), (1, 2, 1), (4, 2, 1), (3, 3, 1), (2, 4, 1)]),
        (1, vec![(3, 1, 1), (2, 2, 1), (4, 2, 1), (3, 3, 1), (1, 4, 1)]),
        (1, with(&[(3, 3, 2)])),
        (1, with(&[(3, 3, 1), (1, 4, 1)])),
        (1, with(&[(3, 3, 1), (2, 4, 1)])),
        (1, with(&[(3, 3, 1), (4, 4, 1)])),
        (1, with(&[(3, 3, 2), (1, 4, 1)])),
        (1, with(&[(3, 3, 2), (2, 4, 1)])),
        (1, with(&[(3, 3, 2), (4, 4, 1)])),
        (1, with(&[(3, 3, 2), (1, 4, 1), (2, 4, 1)])),
        (1, with(&[(3, 3, 2), (1, 4, 1), (4, 4, 1)])),
        (1, with(&[(3, 3, 2), (2, 4, 1), (4, 4, 1)])),
        (1, with(&[(3, 3, 2), (1, 4, 1), (2, 4, 1), (4, 4, 1)])),
        (1, with(&[(3, 3, 2), (1, 4, 1), (2, 4, 1), (4, 4, 1), (3, 5, 1)])),
    ]
}

pub fn d4_fundamental_expected() -> YPolynomial {
    let c = CartanData::parse("D4").unwrap();
    expand(&c, &y(3, 0), &d4_fundamental_terms())
}

/// The two displayed type-A3 fundamentals.
pub fn a3_fundamentals_expected() -> (YPolynomial, YPolynomial) {
    let c = CartanData::parse("A3").unwrap();
    let first = expand(
        &c,
        &y(1, 0),
        &[
            (1, vec![]),
            (1, vec![(1, 1, 1)]),
            (1, vec![(1, 1, 1), (2, 2, 1)]),
            (1, vec![(1, 1, 1), (2, 2, 1), (3, 3, 1)]),
        ],
    );
    let second = expand(
        &c,
        &y(2, 1),
        &[
            (1, vec![]),
            (1, vec![(2, 2, 1)]),
            (1, vec![(2, 2, 1), (1, 3, 1)]),
            (1, vec![(2, 2, 1), (3, 3, 1)]),
            (1, vec![(2, 2, 1), (1, 3, 1), (3, 3, 1)]),
            (1, vec![(2, 2, 1), (1, 3, 1), (3, 3, 1), (2, 4, 1)]),
        ],
    );
    (first, second)
}

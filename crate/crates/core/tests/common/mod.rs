#![allow(dead_code)]

use hitprob::monomial::monomials_of_degree;
use hitprob::{Monomial, Polynomial};
use proptest::prelude::*;

pub fn cases(n: u32) -> ProptestConfig {
    ProptestConfig { cases: n, failure_persistence: None, ..ProptestConfig::default() }
}

/// Homogeneous polynomial from indices into the monomials of one degree.
pub fn poly_of(k: usize, n: u32, picks: &[usize]) -> Polynomial {
    let all: Vec<Monomial> = monomials_of_degree(k, n).collect();
    Polynomial::from_terms(k, picks.iter().map(|&i| all[i % all.len()].clone())).unwrap()
}

pub fn monomial(max_k: usize, max_exp: u32) -> impl Strategy<Value = Monomial> {
    (1..=max_k).prop_flat_map(move |k| prop::collection::vec(0..=max_exp, k)).prop_map(|e| Monomial::new(&e))
}

pub fn monomial_in(k: usize, max_exp: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_exp, k).prop_map(|e| Monomial::new(&e))
}

/// `(k, polynomial)` with a few terms of one degree.
pub fn polynomial(max_k: usize, max_n: u32) -> impl Strategy<Value = Polynomial> {
    (1..=max_k, 0..=max_n, prop::collection::vec(any::<usize>(), 1..4)).prop_map(|(k, n, p)| poly_of(k, n, &p))
}

pub fn polynomial_in(k: usize, max_n: u32) -> impl Strategy<Value = Polynomial> {
    (0..=max_n, prop::collection::vec(any::<usize>(), 1..4)).prop_map(move |(n, p)| poly_of(k, n, &p))
}

/// Monomial with every exponent read as `X_{i,j}` products: weight `(k-2)|^len`.
pub fn flat(k: usize, pairs: &[(usize, usize)]) -> Monomial {
    let d = pairs.len();
    let mut e = vec![0u32; k];
    for (t, &(i, j)) in pairs.iter().enumerate() {
        for (v, x) in e.iter_mut().enumerate() {
            if v + 1 != i && v + 1 != j {
                *x += 1 << (d - 1 - t);
            }
        }
    }
    Monomial::new(&e)
}

pub fn pair(k: usize) -> impl Strategy<Value = (usize, usize)> {
    (1..k).prop_flat_map(move |i| (Just(i), i + 1..=k))
}

//! Tabulated monomials of weight `(3)|^d` in `P_4` and `P_5`.
//!
//! Exponents are stored symbolically as either a constant or `2^d-c`.

use std::sync::OnceLock;

use serde::Deserialize;

use crate::error::{invalid, Result};
use crate::monomial::Monomial;

#[derive(Deserialize)]
struct Entry {
    index: usize,
    exps: Vec<String>,
}

#[derive(Deserialize)]
struct Listed {
    a2: Vec<Vec<u32>>,
    a3_extra: Vec<Vec<u32>>,
    a4_extra: Vec<Vec<u32>>,
}

#[derive(Deserialize)]
struct Tables {
    w: Vec<Entry>,
    a: Vec<Entry>,
    listed: Listed,
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| serde_json::from_str(include_str!("../fixtures/tables.json")).expect("shipped tables parse"))
}

/// Evaluates `"c"` or `"2^d-c"` at `d`.
pub fn eval_exponent(text: &str, d: u32) -> Result<u32> {
    let bad = || invalid(format!("exponent {text:?} at d = {d}"));
    match text.strip_prefix("2^d-") {
        Some(c) => {
            let c: u64 = c.parse().map_err(|_| bad())?;
            let top = 1u64.checked_shl(d).ok_or_else(bad)?;
            top.checked_sub(c).and_then(|v| u32::try_from(v).ok()).ok_or_else(bad)
        }
        None => text.parse().map_err(|_| bad()),
    }
}

fn instantiate(entries: &[Entry], d: u32, upto: usize) -> Result<Vec<Monomial>> {
    entries
        .iter()
        .filter(|e| e.index <= upto)
        .map(|e| {
            let exps = e.exps.iter().map(|x| eval_exponent(x, d)).collect::<Result<Vec<_>>>()?;
            Ok(Monomial::new(&exps))
        })
        .collect()
}

/// `w_{d,u}` for `1 <= u <= 11`, monomials of `P_4`.
pub fn w_table(d: u32) -> Result<Vec<Monomial>> {
    instantiate(&tables().w, d, usize::MAX)
}

/// `a_{d,t}` for `1 <= t <= upto`, monomials of `P_5`.
pub fn a_table(d: u32, upto: usize) -> Result<Vec<Monomial>> {
    instantiate(&tables().a, d, upto)
}

fn owned(v: &[Vec<u32>]) -> Vec<Monomial> {
    v.iter().map(|e| Monomial::new(e)).collect()
}

/// The fifteen listed monomials of weight `(3,3)` in `P_5`.
pub fn listed_weight_33() -> Vec<Monomial> {
    owned(&tables().listed.a2)
}

/// The seventy candidates of weight `(3,3,3)` in `P_5`: `a_{3,t}` for
/// `t <= 50` from the table and twenty listed monomials.
pub fn candidates_weight_333() -> Vec<Monomial> {
    let mut v = a_table(3, 50).expect("table instantiates at d = 3");
    v.extend(owned(&tables().listed.a3_extra));
    v
}

/// The ninety-four candidates of weight `(3,3,3,3)` in `P_5`: `a_{4,t}`
/// for `t <= 89` from the table and five listed monomials.
pub fn candidates_weight_3333() -> Vec<Monomial> {
    let mut v = a_table(4, 89).expect("table instantiates at d = 4");
    v.extend(owned(&tables().listed.a4_extra));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::{omega, WeightVector};

    #[test]
    fn exponents() {
        assert_eq!(eval_exponent("2^d-3", 5).unwrap(), 29);
        assert_eq!(eval_exponent("7", 2).unwrap(), 7);
        assert!(eval_exponent("2^d-11", 3).is_err());
    }

    #[test]
    fn weights_and_sizes() {
        let w3 = WeightVector::repeat(3, 3);
        let c3 = candidates_weight_333();
        assert_eq!(c3.len(), 70);
        assert!(c3.iter().all(|m| omega(m) == w3));
        let c4 = candidates_weight_3333();
        assert_eq!(c4.len(), 94);
        assert!(c4.iter().all(|m| omega(m) == WeightVector::repeat(3, 4)));
        let l2 = listed_weight_33();
        assert_eq!(l2.len(), 15);
        assert!(l2.iter().all(|m| omega(m) == WeightVector::repeat(3, 2)));
        for d in 5..8 {
            let a = a_table(d, 90).unwrap();
            assert_eq!(a.len(), 90);
            assert!(a.iter().all(|m| omega(m) == WeightVector::repeat(3, d as usize)));
            let w = w_table(d).unwrap();
            assert_eq!(w.len(), 11);
            assert!(w.iter().all(|m| omega(m) == WeightVector::repeat(3, d as usize)));
        }
    }
}

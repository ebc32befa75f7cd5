//! Weight vectors, the weight-first monomial order, `mu(n)` and spikes.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::monomial::{monomials_of_degree, Monomial};

/// A weight vector, stored without trailing zeros.
///
/// The derived order is left-lexicographic; because trailing zeros are
/// trimmed, a proper prefix compares smaller, which agrees with zero padding.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(from = "Vec<u32>", into = "Vec<u32>")]
pub struct WeightVector(Vec<u32>);

impl From<Vec<u32>> for WeightVector {
    fn from(mut v: Vec<u32>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        WeightVector(v)
    }
}

impl From<WeightVector> for Vec<u32> {
    fn from(w: WeightVector) -> Self {
        w.0
    }
}

impl WeightVector {
    pub fn new(entries: &[u32]) -> Self {
        Self::from(entries.to_vec())
    }

    /// `(a)|^b`: the entry `a` repeated `b` times.
    pub fn repeat(a: u32, b: usize) -> Self {
        Self::from(vec![a; b])
    }

    /// Concatenation `self | other`, with `self` zero-padded to `width`.
    pub fn concat(&self, width: usize, other: &WeightVector) -> Self {
        let mut v = self.0.clone();
        v.resize(width.max(v.len()), 0);
        v.extend_from_slice(&other.0);
        Self::from(v)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `omega_i`, 1-based; zero past the end.
    pub fn get(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// Length after trimming, `max{i : omega_i > 0}`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, &w)| w << i).sum()
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

pub fn omega(x: &Monomial) -> WeightVector {
    let top = x.exponents().iter().copied().max().unwrap_or(0);
    let bits = (32 - top.leading_zeros()) as usize;
    let v: Vec<u32> = (0..bits).map(|i| x.exponents().iter().filter(|&&a| a >> i & 1 == 1).count() as u32).collect();
    WeightVector::from(v)
}

/// Comparison in the weight-first order: weight vectors first, then
/// exponent vectors, both left-lexicographically.
pub fn compare_monomials(x: &Monomial, y: &Monomial) -> Result<Ordering> {
    if x.k() != y.k() {
        return Err(Error::DimensionMismatch(x.k(), y.k()));
    }
    if x.degree() != y.degree() {
        return Err(Error::DegreeMismatch(x.degree(), y.degree()));
    }
    Ok(cmp_order(x, y))
}

pub(crate) fn cmp_order(x: &Monomial, y: &Monomial) -> Ordering {
    omega(x).cmp(&omega(y)).then_with(|| x.exponents().cmp(y.exponents()))
}

/// All monomials of degree `n` in `k` variables, sorted descending in the
/// weight-first order. Position in this list is the canonical column index.
pub fn ordered_monomials(k: usize, n: u32) -> Vec<Monomial> {
    ordered_filtered(k, n, |_, _| true)
}

pub(crate) fn ordered_filtered(k: usize, n: u32, keep: impl Fn(&Monomial, &WeightVector) -> bool) -> Vec<Monomial> {
    let mut keyed: Vec<(WeightVector, Monomial)> = monomials_of_degree(k, n)
        .filter_map(|m| {
            let w = omega(&m);
            keep(&m, &w).then_some((w, m))
        })
        .collect();
    keyed.sort_unstable_by(|a, b| b.0.cmp(&a.0).then_with(|| b.1.exponents().cmp(a.1.exponents())));
    keyed.into_iter().map(|(_, m)| m).collect()
}

pub fn alpha(a: u32) -> u32 {
    a.count_ones()
}

pub fn zeta(a: u32) -> u32 {
    a.trailing_zeros()
}

/// `a - alpha(a) - zeta(a)`.
pub fn delta(a: u32) -> Result<u32> {
    if a == 0 {
        return Err(invalid("delta needs a >= 1"));
    }
    Ok(a - alpha(a) - zeta(a))
}

/// The decomposition `n = sum (2^{d_i} - 1)` with the fewest terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpikeDecomposition {
    pub s: u32,
    pub d: Vec<u32>,
}

/// `mu(n)`: the fewest terms `2^u - 1` (`u > 0`) summing to `n`.
///
/// Equals the least `r` with `alpha(n + r) <= r`; the binary expansion of
/// `n + r` then gives the largest feasible leading terms.
pub fn mu(n: u32) -> Result<u32> {
    if n == 0 {
        return Err(invalid("mu needs n >= 1"));
    }
    Ok((1..).find(|&r| alpha(n + r) <= r).expect("r = n always works"))
}

pub fn decomposition(n: u32) -> Result<SpikeDecomposition> {
    let s = mu(n)?;
    let total = n + s;
    let mut d: Vec<u32> = (0..32).rev().filter(|&b| total >> b & 1 == 1).collect();
    while (d.len() as u32) < s {
        let e = d.pop().expect("nonempty");
        d.push(e - 1);
        d.push(e - 1);
    }
    debug_assert!(d.iter().all(|&e| e > 0));
    Ok(SpikeDecomposition { s, d })
}

/// The minimal spike `prod x_i^{2^{d_i} - 1}` of degree `n` in `k` variables.
pub fn minimal_spike(n: u32, k: usize) -> Result<Monomial> {
    if n == 0 {
        return Ok(Monomial::unit(k));
    }
    let dec = decomposition(n)?;
    if dec.s as usize > k {
        return Err(Error::NoSpike { n, k, mu: dec.s });
    }
    let mut e = vec![0u32; k];
    for (i, &d) in dec.d.iter().enumerate() {
        e[i] = (1 << d) - 1;
    }
    Ok(Monomial::new(&e))
}

pub fn is_spike(x: &Monomial) -> bool {
    x.exponents().iter().all(|&a| (a + 1).is_power_of_two())
}

fn check_degree(x: &Monomial, w: &WeightVector) -> Result<()> {
    if x.degree() != w.degree() {
        return Err(Error::DegreeMismatch(x.degree(), w.degree()));
    }
    Ok(())
}

/// `x` spans part of `P_k^-(omega)`: `omega(x) < omega`.
pub fn in_p_minus(x: &Monomial, w: &WeightVector) -> Result<bool> {
    check_degree(x, w)?;
    Ok(omega(x) < *w)
}

/// `x` spans part of `P_k(omega)`: `omega(x) <= omega`.
pub fn in_p(x: &Monomial, w: &WeightVector) -> Result<bool> {
    check_degree(x, w)?;
    Ok(omega(x) <= *w)
}

/// Prefix sum `sum_{j <= h} 2^{j-1} omega_j(x)`, which equals the sum of
/// the exponents reduced mod `2^h`.
pub fn prefix_weight(x: &Monomial, h: u32) -> u64 {
    let mask = if h >= 32 { u32::MAX } else { (1u32 << h) - 1 };
    x.exponents().iter().map(|&a| (a & mask) as u64).sum()
}

/// Membership in the span of monomials some of whose prefix-weighted sums
/// fall strictly below those of the minimal spike of the same degree.
pub fn in_script_p(x: &Monomial) -> Result<bool> {
    let z = minimal_spike(x.degree(), x.k())?;
    Ok(script_p_against(x, &z))
}

pub(crate) fn script_p_against(x: &Monomial, z: &Monomial) -> bool {
    let top = x.exponents().iter().chain(z.exponents()).copied().max().unwrap_or(0);
    let bits = 32 - top.leading_zeros();
    (1..=bits).any(|h| prefix_weight(x, h) < prefix_weight(z, h))
}

/// `beta_k` iterated: `beta_k(t) = (t - k + 2) / 2` when that is an even
/// non-negative number, otherwise 0.
pub fn beta(k: u32, t: u32, iterations: u32) -> u32 {
    let mut t = t as i64;
    for _ in 0..iterations {
        let u = t - k as i64 + 2;
        t = if u >= 0 && u % 2 == 0 { u / 2 } else { 0 };
    }
    t as u32
}

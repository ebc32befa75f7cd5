//! Monomials and polynomials over F2 in `k` variables.
//!
//! Variable indices in the public API are 1-based, so `x_1` is the first
//! variable. Exponent vectors are 0-based slices.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub(crate) type Exps = SmallVec<[u32; 8]>;

/// A monomial `x_1^{a_1} ... x_k^{a_k}`.
///
/// The derived ordering is plain lexicographic order on exponent vectors.
/// The weight-first order used for admissibility lives in [`crate::weight`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<u32>", into = "Vec<u32>")]
pub struct Monomial {
    exps: Exps,
}

impl From<Vec<u32>> for Monomial {
    fn from(v: Vec<u32>) -> Self {
        Monomial { exps: Exps::from_vec(v) }
    }
}

impl From<Monomial> for Vec<u32> {
    fn from(m: Monomial) -> Self {
        m.exps.into_vec()
    }
}

impl Monomial {
    pub fn new(exps: &[u32]) -> Self {
        Monomial { exps: Exps::from_slice(exps) }
    }

    pub(crate) fn from_exps(exps: Exps) -> Self {
        Monomial { exps }
    }

    pub fn unit(k: usize) -> Self {
        Monomial { exps: smallvec::smallvec![0; k] }
    }

    /// The variable `x_i`, 1-based.
    pub fn var(k: usize, i: usize) -> Result<Self> {
        check_index(i, k)?;
        let mut m = Self::unit(k);
        m.exps[i - 1] = 1;
        Ok(m)
    }

    pub fn k(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// Exponent of `x_i`, 1-based.
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i - 1]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&a| a == 0)
    }

    /// True when every exponent is positive.
    pub fn is_positive(&self) -> bool {
        self.exps.iter().all(|&a| a > 0)
    }

    pub fn multiply(&self, other: &Monomial) -> Result<Monomial> {
        if self.k() != other.k() {
            return Err(Error::DimensionMismatch(self.k(), other.k()));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { exps }
    }

    pub fn power(&self, e: u32) -> Monomial {
        Monomial { exps: self.exps.iter().map(|a| a * e).collect() }
    }

    /// `self^(2^s)`.
    pub fn frobenius(&self, s: u32) -> Monomial {
        Monomial { exps: self.exps.iter().map(|a| a << s).collect() }
    }

    /// Product of `x_j` over `j` not in `omit` (1-based).
    pub fn x_complement(k: usize, omit: &[usize]) -> Result<Monomial> {
        let mut exps: Exps = smallvec::smallvec![1; k];
        for &j in omit {
            check_index(j, k)?;
            exps[j - 1] = 0;
        }
        Ok(Monomial { exps })
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut first = true;
        for (j, &a) in self.exps.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if a == 1 {
                write!(f, "x{}", j + 1)?;
            } else {
                write!(f, "x{}^{}", j + 1, a)?;
            }
        }
        Ok(())
    }
}

pub(crate) fn check_index(i: usize, k: usize) -> Result<()> {
    if i == 0 || i > k {
        Err(Error::IndexOutOfRange { index: i, k })
    } else {
        Ok(())
    }
}

/// All monomials of degree `n` in `k` variables, in descending
/// lexicographic order of exponent vectors.
pub fn monomials_of_degree(k: usize, n: u32) -> MonomialsOfDegree {
    let mut cur: Exps = smallvec::smallvec![0; k];
    let done = if k == 0 {
        n != 0
    } else {
        cur[0] = n;
        false
    };
    MonomialsOfDegree { cur, done }
}

/// Number of monomials of degree `n` in `k` variables.
pub fn count_of_degree(k: usize, n: u32) -> u64 {
    if k == 0 {
        return u64::from(n == 0);
    }
    binomial(n as u64 + k as u64 - 1, k as u64 - 1)
}

pub(crate) fn binomial(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

pub struct MonomialsOfDegree {
    cur: Exps,
    done: bool,
}

impl Iterator for MonomialsOfDegree {
    type Item = Monomial;

    fn next(&mut self) -> Option<Monomial> {
        if self.done {
            return None;
        }
        let out = Monomial { exps: self.cur.clone() };
        let k = self.cur.len();
        if k <= 1 {
            self.done = true;
            return Some(out);
        }
        let last = self.cur[k - 1];
        self.cur[k - 1] = 0;
        match (0..k - 1).rev().find(|&i| self.cur[i] > 0) {
            Some(i) => {
                self.cur[i] -= 1;
                self.cur[i + 1] = last + 1;
            }
            None => self.done = true,
        }
        Some(out)
    }
}

/// A homogeneous polynomial over F2: a set of monomials of one degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    k: usize,
    terms: BTreeSet<Monomial>,
}

impl Polynomial {
    pub fn zero(k: usize) -> Self {
        Polynomial { k, terms: BTreeSet::new() }
    }

    pub fn one(k: usize) -> Self {
        Self::from(Monomial::unit(k))
    }

    /// Builds a polynomial from a list of terms; repeated terms cancel in pairs.
    pub fn from_terms(k: usize, terms: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let mut p = Polynomial::zero(k);
        let mut degree = None;
        for m in terms {
            if m.k() != k {
                return Err(Error::DimensionMismatch(k, m.k()));
            }
            let d = m.degree();
            match degree {
                None => degree = Some(d),
                Some(e) if e != d => return Err(Error::DegreeMismatch(e, d)),
                _ => {}
            }
            p.toggle(m);
        }
        Ok(p)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Degree of the nonzero polynomial; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().next().map(Monomial::degree)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.terms.iter()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    /// Adds a single monomial (XOR) without homogeneity checks.
    pub(crate) fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &Polynomial) {
        for m in &other.terms {
            self.toggle(m.clone());
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.k != other.k {
            return Err(Error::DimensionMismatch(self.k, other.k));
        }
        if let (Some(a), Some(b)) = (self.degree(), other.degree()) {
            if a != b {
                return Err(Error::DegreeMismatch(a, b));
            }
        }
        let mut out = self.clone();
        out.add_assign_unchecked(other);
        Ok(out)
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.k != other.k {
            return Err(Error::DimensionMismatch(self.k, other.k));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.k);
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.mul_unchecked(b));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Result<Polynomial> {
        if self.k != m.k() {
            return Err(Error::DimensionMismatch(self.k, m.k()));
        }
        Ok(Polynomial { k: self.k, terms: self.terms.iter().map(|a| a.mul_unchecked(m)).collect() })
    }

    /// `self^(2^s)`, computed term-wise.
    pub fn frobenius(&self, s: u32) -> Polynomial {
        Polynomial { k: self.k, terms: self.terms.iter().map(|m| m.frobenius(s)).collect() }
    }

    pub fn to_vec(&self) -> Vec<Monomial> {
        self.terms.iter().cloned().collect()
    }
}

impl From<Monomial> for Polynomial {
    fn from(m: Monomial) -> Self {
        let k = m.k();
        let mut terms = BTreeSet::new();
        terms.insert(m);
        Polynomial { k, terms }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.terms.iter()).finish()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, m) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter())
    }
}

/// An algebra map `P_source -> P_target` sending each variable to a sum of
/// target variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubstitution {
    source_k: usize,
    target_k: usize,
    images: Vec<Vec<usize>>,
}

impl LinearSubstitution {
    /// `images[u]` lists the 1-based target variables whose sum is the image
    /// of `x_{u+1}`. Empty images are rejected unless `allow_zero`.
    pub fn new(target_k: usize, images: Vec<Vec<usize>>, allow_zero: bool) -> Result<Self> {
        let mut clean = Vec::with_capacity(images.len());
        for (u, img) in images.into_iter().enumerate() {
            let mut set = BTreeSet::new();
            for t in img {
                check_index(t, target_k)?;
                if !set.remove(&t) {
                    set.insert(t);
                }
            }
            if set.is_empty() && !allow_zero {
                return Err(Error::InvalidArgument(format!("variable x{} maps to zero", u + 1)));
            }
            clean.push(set.into_iter().collect());
        }
        Ok(LinearSubstitution { source_k: clean.len(), target_k, images: clean })
    }

    pub fn identity(k: usize) -> Self {
        LinearSubstitution { source_k: k, target_k: k, images: (1..=k).map(|u| vec![u]).collect() }
    }

    pub fn source_k(&self) -> usize {
        self.source_k
    }

    pub fn target_k(&self) -> usize {
        self.target_k
    }

    /// Image of `x_u`, 1-based.
    pub fn image(&self, u: usize) -> &[usize] {
        &self.images[u - 1]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearSubstitution) -> Result<LinearSubstitution> {
        if inner.target_k != self.source_k {
            return Err(Error::DimensionMismatch(inner.target_k, self.source_k));
        }
        let images = inner
            .images
            .iter()
            .map(|img| img.iter().flat_map(|&v| self.images[v - 1].iter().copied()).collect())
            .collect();
        LinearSubstitution::new(self.target_k, images, true)
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Result<Polynomial> {
        if m.k() != self.source_k {
            return Err(Error::DimensionMismatch(self.source_k, m.k()));
        }
        let mut acc = Polynomial::one(self.target_k);
        for (u, &a) in m.exponents().iter().enumerate() {
            let mut bits = a;
            while bits != 0 {
                let b = bits.trailing_zeros();
                bits &= bits - 1;
                let form = &self.images[u];
                let mut next = Polynomial::zero(self.target_k);
                for term in &acc.terms {
                    for &t in form {
                        let mut exps = term.exps.clone();
                        exps[t - 1] += 1 << b;
                        next.toggle(Monomial { exps });
                    }
                }
                acc = next;
            }
        }
        Ok(acc)
    }

    pub fn substitute(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.k() != self.source_k {
            return Err(Error::DimensionMismatch(self.source_k, f.k()));
        }
        let mut out = Polynomial::zero(self.target_k);
        for m in f.terms() {
            out.add_assign_unchecked(&self.apply_monomial(m)?);
        }
        Ok(out)
    }
}

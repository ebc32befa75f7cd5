//! Steenrod squares acting on `P_k` through the Cartan formula.

use crate::monomial::{count_of_degree, monomials_of_degree, Exps, Monomial, MonomialsOfDegree, Polynomial};

/// Terms of `Sq^i(x)` for a monomial `x`.
///
/// Each admissible composition `i = i_1 + ... + i_k` contributes a distinct
/// monomial, so no cancellation occurs within a single monomial. By Lucas,
/// `C(a, b)` is odd iff the bits of `b` are a subset of those of `a`.
pub fn sq_monomial(i: u32, x: &Monomial) -> Vec<Monomial> {
    let exps = x.exponents();
    let k = exps.len();
    if i == 0 {
        return vec![x.clone()];
    }
    if i > x.degree() {
        return Vec::new();
    }
    // suffix[j] = sum of exponents from j on, the most the tail can absorb
    let mut suffix = vec![0u32; k + 1];
    for j in (0..k).rev() {
        suffix[j] = suffix[j + 1] + exps[j];
    }
    let mut out = Vec::new();
    let mut cur: Exps = Exps::from_slice(exps);
    descend(exps, &suffix, 0, i, &mut cur, &mut out);
    out
}

fn descend(exps: &[u32], suffix: &[u32], j: usize, rem: u32, cur: &mut Exps, out: &mut Vec<Monomial>) {
    if j == exps.len() {
        if rem == 0 {
            out.push(Monomial::from_exps(cur.clone()));
        }
        return;
    }
    let a = exps[j];
    let floor = rem.saturating_sub(suffix[j + 1]);
    let mut b = a;
    loop {
        if b <= rem && b >= floor {
            cur[j] = a + b;
            descend(exps, suffix, j + 1, rem - b, cur, out);
        }
        if b == 0 {
            break;
        }
        b = (b - 1) & a;
    }
    cur[j] = a;
}

/// `Sq^i(f)`.
pub fn sq(i: u32, f: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(f.k());
    for m in f.terms() {
        for t in sq_monomial(i, m) {
            out.toggle(t);
        }
    }
    out
}

/// `Sq^i(f^(2^s))` via `Sq^{r 2^s}(f^{2^s}) = (Sq^r f)^{2^s}`, zero when
/// `2^s` does not divide `i`.
pub fn sq_on_power(i: u32, f: &Polynomial, s: u32) -> Polynomial {
    let step = 1u32 << s;
    if !i.is_multiple_of(step) {
        return Polynomial::zero(f.k());
    }
    sq(i / step, f).frobenius(s)
}

/// Composite `Sq^{a_1} Sq^{a_2} ... Sq^{a_r}(f)`, applied right to left.
pub fn sq_word(word: &[u32], f: &Polynomial) -> Polynomial {
    word.iter().rev().fold(f.clone(), |acc, &a| sq(a, &acc))
}

/// A hit generator `Sq^{2^j}(source)`.
#[derive(Clone, Debug)]
pub struct HitGenerator {
    pub j: u32,
    pub source: Monomial,
    pub image: Polynomial,
}

/// Exponents `j` with `2^(j+1) <= n`, cut to `j <= s_bound - 1` when bounded.
pub fn generator_indices(n: u32, s_bound: Option<u32>) -> Vec<u32> {
    let mut js = Vec::new();
    let mut j = 0u32;
    while j < 31 && (2u64 << j) <= n as u64 {
        if s_bound.is_some_and(|s| j + 1 > s) {
            break;
        }
        js.push(j);
        j += 1;
    }
    js
}

/// Lazy stream of `Sq^{2^j}(m)` over all monomials `m` of degree `n - 2^j`.
///
/// The row space spans `A^+ P_k` in degree `n`, or `A(s-1)^+ P_k` when
/// `s_bound = Some(s)`.
pub fn hit_generators(k: usize, n: u32, s_bound: Option<u32>) -> HitGenerators {
    HitGenerators { k, n, js: generator_indices(n, s_bound).into_iter().rev().collect(), current: None }
}

pub struct HitGenerators {
    k: usize,
    n: u32,
    js: Vec<u32>,
    current: Option<(u32, MonomialsOfDegree)>,
}

impl HitGenerators {
    /// Number of generators per index `j`, in increasing `j`.
    pub fn sizes(k: usize, n: u32, s_bound: Option<u32>) -> Vec<(u32, u64)> {
        generator_indices(n, s_bound).into_iter().map(|j| (j, count_of_degree(k, n - (1 << j)))).collect()
    }
}

impl Iterator for HitGenerators {
    type Item = HitGenerator;

    fn next(&mut self) -> Option<HitGenerator> {
        loop {
            if let Some((j, it)) = &mut self.current {
                if let Some(source) = it.next() {
                    let j = *j;
                    let image =
                        Polynomial::from_terms(self.k, sq_monomial(1 << j, &source)).expect("Sq image is homogeneous");
                    return Some(HitGenerator { j, source, image });
                }
            }
            let j = self.js.pop()?;
            self.current = Some((j, monomials_of_degree(self.k, self.n - (1 << j))));
        }
    }
}

/// Generators for a single `j`, restricted to a slice of the source
/// enumeration; disjoint slices can be processed independently.
pub fn hit_generator_batch(k: usize, n: u32, j: u32, skip: usize, take: usize) -> impl Iterator<Item = HitGenerator> {
    monomials_of_degree(k, n - (1 << j)).skip(skip).take(take).map(move |source| {
        let image = Polynomial::from_terms(k, sq_monomial(1 << j, &source)).expect("Sq image is homogeneous");
        HitGenerator { j, source, image }
    })
}

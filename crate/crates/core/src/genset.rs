//! Pair sequences, the monomials `X_(I,J)`, compatible sets and the
//! generating set of the kernel of Kameko's squaring operation.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::kameko::{target_degree, KamekoMatrix};
use crate::linalg::EchelonBasis;
use crate::monomial::{Monomial, Polynomial};
use crate::quotient::{Augment, Engine, HitSpace, HitSpaceSpec};
use crate::weight::WeightVector;

/// Total length of all runs of `s` after the first.
pub fn reduced_length(s: &[usize]) -> Result<usize> {
    let first = *s.first().ok_or_else(|| invalid("reduced length of an empty sequence"))?;
    Ok(s.iter().position(|&x| x != first).map_or(0, |p| s.len() - p))
}

/// `(I, J)` with `1 <= i_t < j_t <= k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PairSeq {
    #[serde(rename = "I")]
    pub i: Vec<usize>,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
}

impl PairSeq {
    pub fn new(k: usize, i: Vec<usize>, j: Vec<usize>) -> Result<Self> {
        let p = PairSeq { i, j };
        p.validate(k)?;
        Ok(p)
    }

    pub fn validate(&self, k: usize) -> Result<()> {
        if self.i.len() != self.j.len() {
            return Err(invalid(format!("sequence lengths differ: {} vs {}", self.i.len(), self.j.len())));
        }
        for (&a, &b) in self.i.iter().zip(&self.j) {
            if !(1 <= a && a < b && b <= k) {
                return Err(invalid(format!("pair ({a}, {b}) outside 1 <= i < j <= {k}")));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.i.len()
    }

    pub fn is_empty(&self) -> bool {
        self.i.is_empty()
    }

    pub fn min_i(&self) -> usize {
        self.i.iter().copied().min().unwrap_or(0)
    }

    pub fn min_j(&self) -> usize {
        self.j.iter().copied().min().unwrap_or(0)
    }

    /// Both sequences non-decreasing.
    pub fn is_increasing(&self) -> bool {
        self.i.windows(2).all(|w| w[0] <= w[1]) && self.j.windows(2).all(|w| w[0] <= w[1])
    }

    /// `X_(I,J) = prod_t X_{i_t,j_t}^{2^(d-t)}`.
    pub fn monomial(&self, k: usize) -> Monomial {
        let d = self.len();
        let mut e = vec![0u32; k];
        for t in 0..d {
            let bit = 1u32 << (d - 1 - t);
            for (v, x) in e.iter_mut().enumerate() {
                if v + 1 != self.i[t] && v + 1 != self.j[t] {
                    *x |= bit;
                }
            }
        }
        Monomial::new(&e)
    }

    /// Inverse of [`Self::monomial`] for monomials of weight `(k-2)|^d`.
    pub fn decode(x: &Monomial, d: usize) -> Option<PairSeq> {
        let e = x.exponents();
        if e.iter().any(|&a| a >> d != 0) {
            return None;
        }
        let (mut i, mut j) = (Vec::with_capacity(d), Vec::with_capacity(d));
        for t in 0..d {
            let bit = 1u32 << (d - 1 - t);
            let zeros: Vec<usize> = (0..e.len()).filter(|&v| e[v] & bit == 0).map(|v| v + 1).collect();
            if zeros.len() != 2 {
                return None;
            }
            i.push(zeros[0]);
            j.push(zeros[1]);
        }
        Some(PairSeq { i, j })
    }

    /// All of `PSeq_k^d`, in lexicographic order of the position pairs.
    pub fn all(k: usize, d: usize) -> Vec<PairSeq> {
        let pairs: Vec<(usize, usize)> = (1..=k).flat_map(|a| (a + 1..=k).map(move |b| (a, b))).collect();
        let mut out = vec![PairSeq { i: vec![], j: vec![] }];
        for _ in 0..d {
            out = out
                .into_iter()
                .flat_map(|p| {
                    pairs.iter().map(move |&(a, b)| {
                        let mut q = p.clone();
                        q.i.push(a);
                        q.j.push(b);
                        q
                    })
                })
                .collect();
        }
        out
    }

    /// All of `PInc_k^d`.
    pub fn all_increasing(k: usize, d: usize) -> Vec<PairSeq> {
        PairSeq::all(k, d).into_iter().filter(PairSeq::is_increasing).collect()
    }
}

/// Candidate compatible set for `(k-2)|^{d0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatibleSet {
    pub k: usize,
    pub d0: usize,
    pub pairs: BTreeSet<PairSeq>,
}

impl CompatibleSet {
    pub fn new(k: usize, d0: usize, pairs: impl IntoIterator<Item = PairSeq>) -> Result<Self> {
        let pairs: BTreeSet<PairSeq> = pairs.into_iter().collect();
        for p in &pairs {
            p.validate(k)?;
            if p.len() != d0 {
                return Err(invalid(format!("pair sequence of length {} in a set for d0 = {d0}", p.len())));
            }
        }
        Ok(CompatibleSet { k, d0, pairs })
    }

    /// The pairs of the admissible monomials of weight `(k-2)|^{d0}`.
    pub fn from_admissible(engine: &Engine, k: usize, d0: usize) -> Result<Self> {
        let basis = engine.weight_basis(k, &WeightVector::repeat(k as u32 - 2, d0))?;
        let pairs = basis
            .monomials()
            .iter()
            .map(|m| PairSeq::decode(m, d0).ok_or_else(|| invalid(format!("{m} is not of the form X_(I,J)"))))
            .collect::<Result<Vec<_>>>()?;
        CompatibleSet::new(k, d0, pairs)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs violating membership in `PInc` or the reduced-length bound.
    pub fn shape_violations(&self) -> Vec<PairSeq> {
        let bound = self.d0.saturating_sub(2);
        self.pairs
            .iter()
            .filter(|p| {
                !p.is_increasing()
                    || reduced_length(&p.i).unwrap_or(0) > bound
                    || reduced_length(&p.j).unwrap_or(0) > bound
            })
            .cloned()
            .collect()
    }

    pub fn without(&self, p: &PairSeq) -> Self {
        let mut out = self.clone();
        out.pairs.remove(p);
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CompatibilityReport {
    pub k: usize,
    pub d0: usize,
    pub size: usize,
    pub degree: u32,
    /// `d0 > 2`, every pair increasing with reduced lengths at most `d0 - 2`.
    pub shape_ok: bool,
    pub shape_violations: Vec<PairSeq>,
    /// Number of `(H, K)` tested.
    pub targets: usize,
    pub failing: Vec<PairSeq>,
    pub compatible: bool,
}

/// Checks both conditions of compatibility with `(k-2)|^{d0}`. The second
/// asks, for each `(H, K)`, that `X_(H,K)` lie in the span of the `X_(I,J)`
/// with `min I = min H` and `min H < min J <= min K`, modulo
/// `A(d0-1)^+P_k`, lower weight and the Walker–Wood subspace.
pub fn check_compatible(engine: &Engine, set: &CompatibleSet) -> Result<CompatibilityReport> {
    CompatibilityChecker::new(engine, set.k, set.d0)?.check(set)
}

/// One elimination in degree `(k-2)(2^{d0}-1)`, reusable across sets.
pub struct CompatibilityChecker {
    k: usize,
    d0: usize,
    space: Option<HitSpace>,
}

impl CompatibilityChecker {
    pub fn new(engine: &Engine, k: usize, d0: usize) -> Result<Self> {
        if k < 3 {
            return Err(invalid("compatibility needs k >= 3"));
        }
        let space = if d0 > 2 {
            let w = WeightVector::repeat(k as u32 - 2, d0);
            let spec = HitSpaceSpec::new(k, w.degree())
                .bounded(d0 as u32)
                .with(Augment::LowerWeight(w))
                .with(Augment::WalkerWood);
            Some(engine.hit_space(&spec)?)
        } else {
            None
        };
        Ok(CompatibilityChecker { k, d0, space })
    }

    pub fn check(&self, set: &CompatibleSet) -> Result<CompatibilityReport> {
        let (k, d0) = (self.k, self.d0);
        if set.k != k || set.d0 != d0 {
            return Err(invalid(format!("set is for k = {}, d0 = {}", set.k, set.d0)));
        }
        let shape_violations = set.shape_violations();
        let shape_ok = d0 > 2 && shape_violations.is_empty();
        let mut report = CompatibilityReport {
            k,
            d0,
            size: set.len(),
            degree: (k as u32 - 2) * ((1 << d0) - 1),
            shape_ok,
            shape_violations,
            targets: 0,
            failing: Vec::new(),
            compatible: false,
        };
        let Some(space) = &self.space else {
            return Ok(report);
        };
        let cols = space.columns();
        let reduce = |p: &PairSeq| space.echelon().reduce(&cols.row_of(&Polynomial::from(p.monomial(k))));

        let targets = PairSeq::all(k, d0);
        let mut groups: BTreeMap<(usize, usize), Vec<&PairSeq>> = BTreeMap::new();
        for t in &targets {
            groups.entry((t.min_i(), t.min_j())).or_default().push(t);
        }
        for ((h, kk), members) in groups {
            let mut span = EchelonBasis::new(cols.len());
            for p in set.pairs.iter().filter(|p| p.min_i() == h && h < p.min_j() && p.min_j() <= kk) {
                span.insert(&reduce(p)?)?;
            }
            for t in members {
                if !span.contains(&reduce(t)?)? {
                    report.failing.push(t.clone());
                }
            }
        }
        report.targets = targets.len();
        report.compatible = shape_ok && report.failing.is_empty();
        Ok(report)
    }
}

/// `f_(i,j)`: inserts zero exponents at positions `i` and `j` of `P_k`.
pub fn insert_pair(y: &Monomial, i: usize, j: usize) -> Monomial {
    let mut e = y.exponents().to_vec();
    e.insert(i - 1, 0);
    e.insert(j - 1, 0);
    Monomial::new(&e)
}

/// Degrees attached to `d_1 > ... > d_{k-3} >= d_{k-2} = d >= d0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelDegrees {
    pub k: usize,
    pub d_list: Vec<u32>,
    pub d: u32,
    /// `sum_i (2^{d_i} - 1)`.
    pub n: u32,
    /// `sum_{i <= k-3} (2^{d_i - d} - 1)`.
    pub m: u32,
}

impl KernelDegrees {
    pub fn new(k: usize, d_list: &[u32], d0: usize) -> Result<Self> {
        if k < 3 || d_list.len() != k - 2 {
            return Err(invalid(format!("expected {} exponents for k = {k}", k.saturating_sub(2))));
        }
        let d = *d_list.last().expect("non-empty");
        let head = &d_list[..k - 3];
        if head.windows(2).any(|w| w[0] <= w[1]) || head.last().is_some_and(|&x| x < d) {
            return Err(invalid(format!("exponents {d_list:?} must satisfy d_1 > ... > d_(k-3) >= d_(k-2)")));
        }
        if (d as usize) < d0 || d0 <= 2 {
            return Err(invalid(format!("need d_(k-2) = {d} >= d0 = {d0} > 2")));
        }
        if d_list[0] >= 31 {
            return Err(invalid("exponent too large"));
        }
        let n = d_list.iter().map(|&x| (1u32 << x) - 1).sum();
        let m = head.iter().map(|&x| (1u32 << (x - d)) - 1).sum();
        Ok(KernelDegrees { k, d_list: d_list.to_vec(), d, n, m })
    }
}

/// The generating set `X_(I,J) X_{i,j}^{2^d - 2^{d0}} f_(i,j)(y)^{2^d}` for
/// `y` admissible of degree `m` in `P_{k-2}`.
pub fn build_generating_set(engine: &Engine, set: &CompatibleSet, degrees: &KernelDegrees) -> Result<Vec<Monomial>> {
    let (k, d, d0) = (set.k, degrees.d, set.d0 as u32);
    if degrees.k != k {
        return Err(invalid("variable counts differ"));
    }
    let ys = small_basis(engine, k - 2, degrees.m)?;
    let mut out = Vec::with_capacity(set.len() * ys.len());
    for p in &set.pairs {
        let (i, j) = (p.i[0], p.j[0]);
        let xij = PairSeq { i: vec![i], j: vec![j] }.monomial(k).power((1 << d) - (1 << d0));
        let base = p.monomial(k).multiply(&xij)?;
        for y in &ys {
            out.push(base.multiply(&insert_pair(y, i, j).power(1 << d))?);
        }
    }
    Ok(out)
}

fn small_basis(engine: &Engine, k: usize, m: u32) -> Result<Vec<Monomial>> {
    Ok(engine.admissible_basis(k, m)?.monomials().to_vec())
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelBoundReport {
    pub k: usize,
    pub n: u32,
    pub m: u32,
    pub set_size: usize,
    pub quotient_dim: usize,
    pub upper_bound: usize,
    /// Present when the kernel was computed directly.
    pub kernel_dim: Option<usize>,
    pub within_bound: Option<bool>,
    /// The classes of the generating set lie in the kernel and span it.
    pub generates_kernel: Option<bool>,
}

/// `|B| dim (QP_{k-2})_m`. With `direct`, also computes the kernel and
/// checks that the generating set spans it.
pub fn kernel_bound_report(
    engine: &Engine,
    set: &CompatibleSet,
    degrees: &KernelDegrees,
    direct: bool,
) -> Result<KernelBoundReport> {
    let quotient_dim = small_basis(engine, set.k - 2, degrees.m)?.len();
    let upper_bound = set.len() * quotient_dim;
    let mut report = KernelBoundReport {
        k: set.k,
        n: degrees.n,
        m: degrees.m,
        set_size: set.len(),
        quotient_dim,
        upper_bound,
        kernel_dim: None,
        within_bound: None,
        generates_kernel: None,
    };
    if direct {
        let source = engine.admissible_basis(set.k, degrees.n)?;
        let target = engine.admissible_basis(set.k, target_degree(set.k, degrees.n)?)?;
        let matrix = KamekoMatrix::from_bases(&source, &target)?;
        let kernel_dim = matrix.kernel_dim();
        let mut span = EchelonBasis::new(source.len());
        let mut inside = true;
        for g in build_generating_set(engine, set, degrees)? {
            let c = source.coordinates(&Polynomial::from(g))?;
            let ones: Vec<usize> = (0..c.len()).filter(|&b| c[b]).collect();
            inside &= matrix.image(&ones).is_zero();
            span.insert_sparse(&ones);
        }
        report.kernel_dim = Some(kernel_dim);
        report.within_bound = Some(kernel_dim <= upper_bound);
        report.generates_kernel = Some(inside && span.rank() == kernel_dim);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::omega;

    #[test]
    fn reduced_lengths() {
        assert_eq!(reduced_length(&[2, 2, 3, 1, 1, 1]).unwrap(), 4);
        assert_eq!(reduced_length(&[4, 4, 4]).unwrap(), 0);
        assert_eq!(reduced_length(&[1, 2, 1, 2]).unwrap(), 3);
        assert!(reduced_length(&[]).is_err());
    }

    #[test]
    fn x_monomials() {
        let p = PairSeq::new(5, vec![1], vec![2]).unwrap();
        assert_eq!(p.monomial(5), Monomial::new(&[0, 0, 1, 1, 1]));
        let q = PairSeq::new(5, vec![1, 1], vec![2, 2]).unwrap();
        assert_eq!(q.monomial(5), Monomial::new(&[0, 0, 3, 3, 3]));
        assert!(PairSeq::new(5, vec![2], vec![2]).is_err());
        assert!(PairSeq::new(5, vec![1, 2], vec![3]).is_err());
    }

    #[test]
    fn all_weight_three_pairs() {
        let all = PairSeq::all(5, 3);
        assert_eq!(all.len(), 1000);
        let w = WeightVector::repeat(3, 3);
        for p in &all {
            let x = p.monomial(5);
            assert_eq!(omega(&x), w);
            assert_eq!(x.degree(), 21);
            assert_eq!(PairSeq::decode(&x, 3).as_ref(), Some(p));
        }
    }

    #[test]
    fn degree_bookkeeping() {
        let g = KernelDegrees::new(5, &[5, 4, 3], 3).unwrap();
        assert_eq!((g.n, g.m, g.d), (31 + 15 + 7, 3 + 1, 3));
        assert!(KernelDegrees::new(4, &[4, 2], 3).is_err());
        assert!(KernelDegrees::new(5, &[4, 4, 3], 3).is_err());
        assert!(KernelDegrees::new(4, &[4, 3], 2).is_err());
        let t = KernelDegrees::new(3, &[4], 3).unwrap();
        assert_eq!(t.m, 0);
    }

    #[test]
    fn removal_leaves_a_witness() {
        let e = Engine::new();
        let set = CompatibleSet::from_admissible(&e, 4, 4).unwrap();
        let r = check_compatible(&e, &set).unwrap();
        assert_eq!(r.shape_violations.len(), 1);
        assert!(r.failing.is_empty() && !r.compatible);
        let p = set.pairs.iter().nth(7).unwrap().clone();
        let r = check_compatible(&e, &set.without(&p)).unwrap();
        assert!(r.failing.contains(&p));
    }

    #[test]
    fn weight_33_fails_shape() {
        let e = Engine::new();
        let set = CompatibleSet::from_admissible(&e, 5, 2).unwrap();
        assert_eq!(set.len(), 55);
        let r = check_compatible(&e, &set).unwrap();
        assert!(!r.shape_ok && !r.compatible && r.targets == 0);
    }
}

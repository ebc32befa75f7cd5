//! Hit spaces, admissible bases and the equivalence relations on `P_k`.
//!
//! Columns are monomials of one degree in descending weight-first order, so
//! the leading term of a hit row is its largest monomial and a monomial is
//! admissible iff its column carries no pivot.
//!
//! Augmenting a hit space by the span of a set of monomials is realised by
//! deleting their columns: the quotient by that span is the same space, and
//! pivot structure on the surviving columns is unchanged. When the hit space
//! is the whole of `A^+P_k` in that degree, monomials already known to be
//! hit (the Walker–Wood subspace) are deleted the same way.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::PathBuf;

use serde::Serialize;

use crate::cache;
use crate::error::{invalid, Error, Result};
use crate::linalg::{BitRow, EchelonBasis};
use crate::monomial::{binomial, check_index, LinearSubstitution, Monomial, Polynomial};
use crate::steenrod::{generator_indices, hit_generators};
use crate::weight::{minimal_spike, mu, omega, ordered_filtered, script_p_against, WeightVector};

/// Default cap on estimated pivot storage: 4 GiB.
pub const DEFAULT_BUDGET: u64 = 4 << 30;

/// A span of monomials added to a hit space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Augment {
    /// All monomials of weight below the given vector.
    LowerWeight(WeightVector),
    /// All monomials in the Walker–Wood subspace of the degree.
    WalkerWood,
    /// An explicit list of monomials.
    Monomials(BTreeSet<Monomial>),
}

impl Augment {
    fn key(&self) -> String {
        match self {
            Augment::LowerWeight(w) => format!("lower{w}"),
            Augment::WalkerWood => "ww".into(),
            Augment::Monomials(ms) => {
                let list: Vec<_> = ms.iter().map(|m| format!("{m:?}")).collect();
                format!("mono[{}]", list.join(";"))
            }
        }
    }
}

/// Monomials of one degree kept as columns, in descending order.
#[derive(Clone, Debug)]
pub struct ColumnSpace {
    k: usize,
    n: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl ColumnSpace {
    pub fn full(k: usize, n: u32) -> Self {
        Self::filtered(k, n, |_, _| true)
    }

    pub(crate) fn filtered(k: usize, n: u32, keep: impl Fn(&Monomial, &WeightVector) -> bool) -> Self {
        let monomials = ordered_filtered(k, n, keep);
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        ColumnSpace { k, n, monomials, index }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn column_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn monomial(&self, c: usize) -> &Monomial {
        &self.monomials[c]
    }

    /// The row of `f`, dropping terms whose columns were deleted.
    pub fn row_of(&self, f: &Polynomial) -> BitRow {
        BitRow::from_columns(self.len(), f.terms().filter_map(|m| self.column_of(m)))
    }

    pub fn polynomial_of(&self, row: &BitRow) -> Polynomial {
        Polynomial::from_terms(self.k, row.ones().map(|c| self.monomials[c].clone())).expect("homogeneous")
    }
}

/// Description of a hit space: `A(s-1)^+P_k` (or `A^+P_k`) in degree `n`
/// plus the spans of some monomial sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HitSpaceSpec {
    pub k: usize,
    pub n: u32,
    pub s_bound: Option<u32>,
    pub augment: Vec<Augment>,
}

impl HitSpaceSpec {
    pub fn new(k: usize, n: u32) -> Self {
        HitSpaceSpec { k, n, s_bound: None, augment: Vec::new() }
    }

    pub fn bounded(mut self, s: u32) -> Self {
        self.s_bound = Some(s);
        self
    }

    pub fn with(mut self, a: Augment) -> Self {
        self.augment.push(a);
        self
    }

    /// True when the generators used equal those of the whole algebra in
    /// this degree.
    pub fn is_full_algebra(&self) -> bool {
        generator_indices(self.n, self.s_bound) == generator_indices(self.n, None)
    }

    /// Stable text key, used for cache file names.
    pub fn key(&self, prune: bool) -> String {
        let s = self.s_bound.map_or("all".to_string(), |s| s.to_string());
        let mut aug: Vec<String> = self.augment.iter().map(Augment::key).collect();
        aug.sort();
        format!("k{}-n{}-s{}-p{}-{}", self.k, self.n, s, u8::from(prune), aug.join("+"))
    }

    fn spike(&self) -> Option<Monomial> {
        if self.n == 0 {
            return Some(Monomial::unit(self.k));
        }
        minimal_spike(self.n, self.k).ok()
    }

    pub fn columns(&self, prune: bool) -> Result<ColumnSpace> {
        let mut lower: Option<WeightVector> = None;
        let mut ww = prune && self.is_full_algebra();
        let mut explicit: BTreeSet<Monomial> = BTreeSet::new();
        for a in &self.augment {
            match a {
                Augment::LowerWeight(w) => {
                    if w.degree() != self.n {
                        return Err(Error::DegreeMismatch(w.degree(), self.n));
                    }
                    lower = Some(lower.map_or(w.clone(), |l| l.max(w.clone())));
                }
                Augment::WalkerWood => {
                    if self.n > 0 {
                        minimal_spike(self.n, self.k)?;
                    }
                    ww = true;
                }
                Augment::Monomials(ms) => {
                    for m in ms {
                        if m.k() != self.k {
                            return Err(Error::DimensionMismatch(self.k, m.k()));
                        }
                        explicit.insert(m.clone());
                    }
                }
            }
        }
        let z = if ww { self.spike() } else { None };
        Ok(ColumnSpace::filtered(self.k, self.n, |m, w| {
            if lower.as_ref().is_some_and(|l| w < l) {
                return false;
            }
            if z.as_ref().is_some_and(|z| script_p_against(m, z)) {
                return false;
            }
            !explicit.contains(m)
        }))
    }

    fn weight_floor(&self) -> Option<WeightVector> {
        self.augment
            .iter()
            .filter_map(|a| match a {
                Augment::LowerWeight(w) => Some(w.clone()),
                _ => None,
            })
            .max()
    }

    /// Runs the elimination.
    pub fn build(&self, budget: u64, prune: bool) -> Result<HitSpace> {
        let columns = self.columns(prune)?;
        let needed = EchelonBasis::estimated_bytes(columns.len());
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let mut echelon = EchelonBasis::new(columns.len());
        // Sq^i with i > 0 strictly lowers the weight vector, so a source whose
        // weight is already at or below the floor only produces deleted terms.
        let floor = self.weight_floor();
        let mut cols = Vec::new();
        for g in hit_generators(self.k, self.n, self.s_bound) {
            if floor.as_ref().is_some_and(|f| omega(&g.source) <= *f) {
                continue;
            }
            cols.clear();
            cols.extend(g.image.terms().filter_map(|m| columns.column_of(m)));
            if !cols.is_empty() {
                echelon.insert_sparse(&cols);
            }
        }
        Ok(HitSpace { spec: self.clone(), columns, echelon })
    }

    /// Pairs a previously computed echelon form with this description.
    pub fn assemble(&self, echelon: EchelonBasis, prune: bool) -> Result<HitSpace> {
        let columns = self.columns(prune)?;
        if columns.len() != echelon.ncols() {
            return Err(Error::Snapshot(format!("column count {} does not match {}", echelon.ncols(), columns.len())));
        }
        Ok(HitSpace { spec: self.clone(), columns, echelon })
    }
}

/// A hit space in reduced echelon form over its column space.
#[derive(Clone, Debug)]
pub struct HitSpace {
    spec: HitSpaceSpec,
    columns: ColumnSpace,
    echelon: EchelonBasis,
}

impl HitSpace {
    pub fn spec(&self) -> &HitSpaceSpec {
        &self.spec
    }

    pub fn columns(&self) -> &ColumnSpace {
        &self.columns
    }

    pub fn echelon(&self) -> &EchelonBasis {
        &self.echelon
    }

    fn check(&self, f: &Polynomial) -> Result<()> {
        if f.k() != self.spec.k {
            return Err(Error::DimensionMismatch(self.spec.k, f.k()));
        }
        match f.degree() {
            Some(d) if d != self.spec.n => Err(Error::DegreeMismatch(d, self.spec.n)),
            _ => Ok(()),
        }
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.check(f)?;
        self.echelon.contains(&self.columns.row_of(f))
    }

    /// Reduced form of `f`: a sum of non-pivot monomials congruent to `f`.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        let r = self.echelon.reduce(&self.columns.row_of(f))?;
        Ok(self.columns.polynomial_of(&r))
    }

    /// Non-pivot monomials in ascending order.
    pub fn non_pivot_monomials(&self) -> Vec<Monomial> {
        let mut v: Vec<Monomial> =
            self.echelon.non_pivot_columns().into_iter().map(|c| self.columns.monomial(c).clone()).collect();
        v.reverse();
        v
    }

    pub fn is_leading(&self, m: &Monomial) -> bool {
        match self.columns.column_of(m) {
            Some(c) => self.echelon.is_pivot(c),
            None => true,
        }
    }
}

/// Basis of a quotient of `P_k` in one degree by admissible monomials.
#[derive(Clone, Debug)]
pub struct AdmissibleBasis {
    pub k: usize,
    pub n: u32,
    /// Set when the basis is of `QP_k(omega)`.
    pub omega: Option<WeightVector>,
    monomials: Vec<Monomial>,
    space: HitSpace,
}

impl AdmissibleBasis {
    /// Admissible monomials in ascending order.
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.monomials.binary_search_by(|x| crate::weight::cmp_order(x, m)).is_ok()
    }

    pub fn positive(&self) -> Vec<Monomial> {
        self.monomials.iter().filter(|m| m.is_positive()).cloned().collect()
    }

    pub fn zero_part(&self) -> Vec<Monomial> {
        self.monomials.iter().filter(|m| !m.is_positive()).cloned().collect()
    }

    pub fn by_weight(&self) -> BTreeMap<WeightVector, Vec<Monomial>> {
        let mut out: BTreeMap<WeightVector, Vec<Monomial>> = BTreeMap::new();
        for m in &self.monomials {
            out.entry(omega(m)).or_default().push(m.clone());
        }
        out
    }

    pub fn hit_space(&self) -> &HitSpace {
        &self.space
    }

    pub fn echelon(&self) -> &EchelonBasis {
        self.space.echelon()
    }

    /// Coordinates of the class of `f` against [`Self::monomials`].
    pub fn coordinates(&self, f: &Polynomial) -> Result<Vec<bool>> {
        let nf = self.space.normal_form(f)?;
        let mut coords = vec![false; self.monomials.len()];
        for m in nf.terms() {
            let pos = self
                .monomials
                .binary_search_by(|x| crate::weight::cmp_order(x, m))
                .map_err(|_| invalid(format!("class of the polynomial leaves the basis at {m}")))?;
            coords[pos] = true;
        }
        Ok(coords)
    }

    pub fn export(&self) -> BasisExport {
        BasisExport { k: self.k, n: self.n, omega: self.omega.clone(), monomials: self.monomials.clone() }
    }
}

/// Basis export document.
#[derive(Clone, Debug, Serialize, serde::Deserialize, PartialEq, Eq)]
pub struct BasisExport {
    pub k: usize,
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub omega: Option<WeightVector>,
    pub monomials: Vec<Monomial>,
}

impl BasisExport {
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for m in &self.monomials {
            let e: Vec<String> = m.exponents().iter().map(u32::to_string).collect();
            s.push_str(&e.join(","));
            s.push('\n');
        }
        s
    }
}

/// One row of [`DecompositionCheck`]: `C(k, s)` copies of `QP_s^+(omega)`.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionRow {
    pub s: usize,
    pub multiplicity: u64,
    pub positive_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionCheck {
    pub k: usize,
    pub omega: WeightVector,
    pub direct_dim: usize,
    pub direct_positive: usize,
    pub rows: Vec<DecompositionRow>,
    pub sum: u64,
    /// `sum` restricted to `s < k`: the dimension of the zero part.
    pub zero_part: u64,
    pub consistent: bool,
}

/// Configuration shared by the high-level computations.
#[derive(Clone, Debug)]
pub struct Engine {
    budget: u64,
    cache_dir: Option<PathBuf>,
    prune: bool,
}

impl Default for Engine {
    fn default() -> Self {
        Engine { budget: DEFAULT_BUDGET, cache_dir: None, prune: true }
    }
}

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_budget(mut self, bytes: u64) -> Self {
        self.budget = bytes;
        self
    }

    pub fn with_cache(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache_dir = Some(dir.into());
        self
    }

    /// Disables deletion of Walker–Wood columns, so every elimination is a
    /// plain row reduction of the generator stream.
    pub fn without_pruning(mut self) -> Self {
        self.prune = false;
        self
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn hit_space(&self, spec: &HitSpaceSpec) -> Result<HitSpace> {
        if let Some(dir) = &self.cache_dir {
            let key = spec.key(self.prune);
            if let Some(echelon) = cache::load(dir, &key, spec.k, spec.n)? {
                if let Ok(space) = spec.assemble(echelon, self.prune) {
                    return Ok(space);
                }
            }
            let space = spec.build(self.budget, self.prune)?;
            cache::store(dir, &key, spec.k, spec.n, space.echelon())?;
            return Ok(space);
        }
        spec.build(self.budget, self.prune)
    }

    /// `B_k(n)`.
    pub fn admissible_basis(&self, k: usize, n: u32) -> Result<AdmissibleBasis> {
        let space = self.hit_space(&HitSpaceSpec::new(k, n))?;
        let monomials = space.non_pivot_monomials();
        Ok(AdmissibleBasis { k, n, omega: None, monomials, space })
    }

    /// `B_k(omega)`, from an elimination restricted to columns of weight at
    /// least `omega`.
    pub fn weight_basis(&self, k: usize, w: &WeightVector) -> Result<AdmissibleBasis> {
        let n = w.degree();
        let space = self.hit_space(&HitSpaceSpec::new(k, n).with(Augment::LowerWeight(w.clone())))?;
        let monomials = space.non_pivot_monomials().into_iter().filter(|m| omega(m) == *w).collect();
        Ok(AdmissibleBasis { k, n, omega: Some(w.clone()), monomials, space })
    }

    pub fn is_hit(&self, f: &Polynomial) -> Result<bool> {
        let Some(n) = f.degree() else { return Ok(true) };
        self.hit_space(&HitSpaceSpec::new(f.k(), n))?.contains(f)
    }

    fn sum_for(f: &Polynomial, g: &Polynomial, n: Option<u32>) -> Result<(Polynomial, Option<u32>)> {
        let sum = f.add(g)?;
        let deg = f.degree().or(g.degree());
        if let (Some(n), Some(d)) = (n, deg) {
            if n != d {
                return Err(Error::DegreeMismatch(d, n));
            }
        }
        Ok((sum, deg.or(n)))
    }

    /// `f ≡ g`: `f + g` is hit.
    pub fn equiv(&self, f: &Polynomial, g: &Polynomial) -> Result<bool> {
        let (sum, _) = Self::sum_for(f, g, None)?;
        self.is_hit(&sum)
    }

    /// `f ≡_omega g`: `f + g ∈ A^+P_k + P_k^-(omega)`.
    pub fn equiv_omega(&self, f: &Polynomial, g: &Polynomial, w: &WeightVector) -> Result<bool> {
        self.membership(f, g, None, w, false)
    }

    /// `f ≃_(s,omega) g`: `f + g ∈ A(s-1)^+P_k + P_k^-(omega)`, optionally
    /// also modulo the Walker–Wood subspace.
    pub fn equiv_s_omega(
        &self,
        f: &Polynomial,
        g: &Polynomial,
        s: u32,
        w: &WeightVector,
        mod_ww: bool,
    ) -> Result<bool> {
        self.membership(f, g, Some(s), w, mod_ww)
    }

    fn membership(
        &self,
        f: &Polynomial,
        g: &Polynomial,
        s: Option<u32>,
        w: &WeightVector,
        mod_ww: bool,
    ) -> Result<bool> {
        let (sum, _) = Self::sum_for(f, g, Some(w.degree()))?;
        if sum.is_zero() {
            return Ok(true);
        }
        let mut spec = HitSpaceSpec::new(f.k(), w.degree()).with(Augment::LowerWeight(w.clone()));
        spec.s_bound = s;
        if mod_ww {
            spec = spec.with(Augment::WalkerWood);
        }
        self.hit_space(&spec)?.contains(&sum)
    }

    /// Compares `dim QP_k(omega)` with `sum_s C(k, s) dim QP_s^+(omega)`.
    pub fn dim_decomposition_check(&self, w: &WeightVector, k: usize) -> Result<DecompositionCheck> {
        let n = w.degree();
        let direct = self.weight_basis(k, w)?;
        let lo = if n == 0 { 0 } else { mu(n)? as usize };
        let mut rows = Vec::new();
        let (mut sum, mut zero_part) = (0u64, 0u64);
        for s in lo.max(1)..=k {
            let positive_dim = self.weight_basis(s, w)?.positive().len();
            let multiplicity = binomial(k as u64, s as u64);
            sum += multiplicity * positive_dim as u64;
            if s < k {
                zero_part += multiplicity * positive_dim as u64;
            }
            rows.push(DecompositionRow { s, multiplicity, positive_dim });
        }
        Ok(DecompositionCheck {
            k,
            omega: w.clone(),
            direct_dim: direct.len(),
            direct_positive: direct.positive().len(),
            consistent: sum == direct.len() as u64,
            rows,
            sum,
            zero_part,
        })
    }

    /// Whether `x_i^{2^d - 1} f_i(w)` is admissible in `P_{k}` with
    /// `k = w.k() + 1`.
    pub fn mothebe_check(&self, i: usize, d: u32, w: &Monomial) -> Result<bool> {
        let x = lift_by_variable(i, d, w)?;
        Ok(self.weight_basis(x.k(), &omega(&x))?.contains(&x))
    }
}

/// `x_i^{2^d - 1} f_i(w)` as a monomial of `P_{k}`, `k = w.k() + 1`.
pub fn lift_by_variable(i: usize, d: u32, w: &Monomial) -> Result<Monomial> {
    let k = w.k() + 1;
    check_index(i, k)?;
    let mut e = Vec::with_capacity(k);
    e.extend_from_slice(&w.exponents()[..i - 1]);
    e.push((1 << d) - 1);
    e.extend_from_slice(&w.exponents()[i - 1..]);
    Ok(Monomial::new(&e))
}

/// `B_k(n)` with default settings.
pub fn admissible_basis(k: usize, n: u32) -> Result<AdmissibleBasis> {
    Engine::default().admissible_basis(k, n)
}

/// `B_k(omega)` with default settings.
pub fn weight_basis(k: usize, w: &WeightVector) -> Result<AdmissibleBasis> {
    Engine::default().weight_basis(k, w)
}

pub fn is_hit(f: &Polynomial) -> Result<bool> {
    Engine::default().is_hit(f)
}

/// `f_i: P_{k-1} -> P_k`, skipping `x_i`.
pub fn hom_f(i: usize, k: usize) -> Result<LinearSubstitution> {
    check_index(i, k)?;
    let images = (1..k).map(|u| vec![if u < i { u } else { u + 1 }]).collect();
    LinearSubstitution::new(k, images, false)
}

/// `f_(i,j) = f_i f_{j-1}: P_{k-2} -> P_k` for `i < j`.
pub fn hom_f_pair(i: usize, j: usize, k: usize) -> Result<LinearSubstitution> {
    if !(1 <= i && i < j && j <= k) {
        return Err(invalid(format!("need 1 <= i < j <= k, got i={i}, j={j}, k={k}")));
    }
    hom_f(i, k)?.compose(&hom_f(j - 1, k - 1)?)
}

/// `theta_J: P_s -> P_k`, `x_u -> x_{j_u}` for increasing `J`.
pub fn hom_theta(j: &[usize], k: usize) -> Result<LinearSubstitution> {
    if j.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid("indices must increase"));
    }
    LinearSubstitution::new(k, j.iter().map(|&t| vec![t]).collect(), false)
}

/// `p_(i;I): P_k -> P_{k-1}` for `i < i_1 < ... < i_r <= k`.
pub fn hom_p(i: usize, set: &[usize], k: usize) -> Result<LinearSubstitution> {
    check_index(i, k)?;
    if set.iter().any(|&t| t <= i || t > k) || set.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid(format!("need {i} < i_1 < ... <= {k}")));
    }
    let images = (1..=k)
        .map(|j| match j.cmp(&i) {
            std::cmp::Ordering::Less => vec![j],
            std::cmp::Ordering::Equal => set.iter().map(|t| t - 1).collect(),
            std::cmp::Ordering::Greater => vec![j - 1],
        })
        .collect();
    LinearSubstitution::new(k - 1, images, true)
}

/// Image of `f` under `sub`, as coordinates in `target`.
pub fn reduce_to_basis(sub: &LinearSubstitution, f: &Polynomial, target: &AdmissibleBasis) -> Result<Vec<bool>> {
    target.coordinates(&sub.substitute(f)?)
}

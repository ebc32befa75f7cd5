//! Inadmissibility certificates and their propagation.
//!
//! A certificate records a relation
//! `target = sum(smaller) + sum_j Sq^j(h_j) + g` modulo `P_k^-(omega)`,
//! where every smaller monomial has weight `omega` and precedes the target,
//! each `j` lies in `1..2^s`, and `g` (strong kind only) lies in the
//! Walker–Wood subspace. Verification is plain polynomial arithmetic.
//!
//! When `omega = (k-2)|^d`, residual monomials with fewer than `k` odd
//! exponents and some weight beyond position `d` are also accepted: such a
//! monomial lies in `P_k^-(omega) + A(d-1)^+ P_k`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, Polynomial};
use crate::quotient::Engine;
use crate::steenrod::sq;
use crate::weight::{cmp_order, in_script_p, omega, WeightVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    Strict,
    Strong,
}

/// A transcription fix: `printed` was replaced by `used`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Correction {
    pub printed: Monomial,
    pub used: Monomial,
}

/// One `Sq^j(h)` summand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteenrodTerm {
    pub j: u32,
    pub h: Vec<Monomial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCertificate {
    pub name: String,
    #[serde(default)]
    pub locus: String,
    pub kind: CertificateKind,
    pub k: usize,
    pub omega: WeightVector,
    pub s: u32,
    pub target: Monomial,
    #[serde(default)]
    pub smaller: Vec<Monomial>,
    #[serde(default)]
    pub steenrod: Vec<SteenrodTerm>,
    #[serde(default)]
    pub remainder_g: Vec<Monomial>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub corrections: Vec<Correction>,
}

/// Whether `x` falls in the absorbed tail for weight `w` in `P_k`:
/// `w = (k-2)|^d`, `omega_1(x) < k` and `omega_r(x) > 0` for some `r > d`.
pub fn absorbed_tail(x: &Monomial, w: &WeightVector) -> bool {
    let k = x.k();
    if k < 3 || w.is_empty() || w.entries().iter().any(|&v| v as usize != k - 2) {
        return false;
    }
    let wx = omega(x);
    (wx.get(1) as usize) < k && wx.len() > w.len()
}

fn sum_of(k: usize, terms: &[Monomial]) -> Polynomial {
    let mut p = Polynomial::zero(k);
    for m in terms {
        p.toggle(m.clone());
    }
    p
}

impl RelationCertificate {
    fn fail(&self, reason: impl Into<String>) -> Error {
        Error::Certificate { name: self.name.clone(), reason: reason.into() }
    }

    pub fn degree(&self) -> u32 {
        self.target.degree()
    }

    /// Checks the structural invariants; a violation names the offending item.
    pub fn check_structure(&self) -> Result<()> {
        let n = self.degree();
        let k = self.k;
        let same_k = |m: &Monomial, what: &str| -> Result<()> {
            if m.k() != k {
                return Err(self.fail(format!("{what} {m} has {} variables, expected {k}", m.k())));
            }
            Ok(())
        };
        same_k(&self.target, "target")?;
        if omega(&self.target) != self.omega {
            return Err(self.fail(format!(
                "target {} has weight {}, declared {}",
                self.target,
                omega(&self.target),
                self.omega
            )));
        }
        if self.s as usize != self.omega.len() {
            return Err(self.fail(format!("s = {} but the weight has length {}", self.s, self.omega.len())));
        }
        for m in &self.smaller {
            same_k(m, "smaller term")?;
            if omega(m) != self.omega {
                return Err(self.fail(format!("smaller term {m} has weight {}", omega(m))));
            }
            if cmp_order(m, &self.target) != Ordering::Less {
                return Err(self.fail(format!("smaller term {m} does not precede {}", self.target)));
            }
        }
        let bound = 1u64 << self.s.min(63);
        for t in &self.steenrod {
            if t.j == 0 || u64::from(t.j) >= bound {
                return Err(self.fail(format!("Sq^{} outside 1..{bound}", t.j)));
            }
            for m in &t.h {
                same_k(m, "Steenrod argument")?;
                if m.degree() + t.j != n {
                    return Err(self.fail(format!("Sq^{}({m}) does not have degree {n}", t.j)));
                }
            }
        }
        match self.kind {
            CertificateKind::Strict if !self.remainder_g.is_empty() => {
                return Err(self.fail("strict certificate carries a remainder"));
            }
            _ => {}
        }
        for m in &self.remainder_g {
            same_k(m, "remainder term")?;
            if m.degree() != n {
                return Err(self.fail(format!("remainder term {m} does not have degree {n}")));
            }
            if !in_script_p(m)? {
                return Err(self.fail(format!("remainder term {m} is outside the Walker–Wood subspace")));
            }
        }
        Ok(())
    }

    /// `target + sum(smaller) + sum Sq^j(h_j) + g`.
    pub fn residual(&self) -> Polynomial {
        let mut r = sum_of(self.k, &self.smaller);
        r.toggle(self.target.clone());
        for t in &self.steenrod {
            r.add_assign_unchecked(&sq(t.j, &sum_of(self.k, &t.h)));
        }
        r.add_assign_unchecked(&sum_of(self.k, &self.remainder_g));
        r
    }

    /// Residual terms of weight not below `omega`, split into those in the
    /// absorbed tail and the rest.
    pub fn classify_residual(&self) -> (Vec<Monomial>, Vec<Monomial>) {
        self.residual().terms().filter(|m| omega(m) >= self.omega).cloned().partition(|m| absorbed_tail(m, &self.omega))
    }

    /// Residual terms that are neither of lower weight nor absorbed.
    pub fn offending_terms(&self) -> Vec<Monomial> {
        self.classify_residual().1
    }

    /// `true` iff every residual term has weight below `omega` or lies in
    /// the absorbed tail.
    ///
    /// Structural violations are errors rather than `false`.
    pub fn verify(&self) -> Result<bool> {
        self.check_structure()?;
        Ok(self.offending_terms().is_empty())
    }

    /// Confirms `target ≡ sum(smaller)` by elimination: modulo
    /// `A(s-1)^+ P_k + P_k^-(omega)`, and also modulo the Walker–Wood
    /// subspace for strong certificates.
    pub fn cross_check(&self, engine: &Engine) -> Result<bool> {
        let lhs = Polynomial::from(self.target.clone());
        let rhs = sum_of(self.k, &self.smaller);
        let mod_ww = self.kind == CertificateKind::Strong;
        engine.equiv_s_omega(&lhs, &rhs, self.s, &self.omega, mod_ww)
    }

    /// The same relation under a new name and kind.
    pub fn retagged(&self, kind: CertificateKind) -> Self {
        RelationCertificate { kind, ..self.clone() }
    }

    fn require_verified(&self) -> Result<()> {
        if !self.verify()? {
            return Err(self.fail("input certificate does not verify"));
        }
        if !self.classify_residual().0.is_empty() {
            return Err(self.fail("input residual uses the absorbed tail, which does not survive propagation"));
        }
        Ok(())
    }

    /// Carries the relation over to `x * T^{2^r} * y^{2^(r+s)}` where `T`
    /// is the target, shifting every Steenrod index by `2^r`.
    fn lift(&self, x: &Monomial, r: u32, y: &Monomial, name: String, remainder: Vec<Monomial>) -> Result<Self> {
        let s = self.s;
        let big_y = y.frobenius(r + s);
        let wrap = |m: &Monomial| x.mul_unchecked(&m.frobenius(r)).mul_unchecked(&big_y);
        let target = wrap(&self.target);
        let w = omega(&target);
        let steenrod =
            self.steenrod.iter().map(|t| SteenrodTerm { j: t.j << r, h: t.h.iter().map(&wrap).collect() }).collect();
        let out = RelationCertificate {
            name,
            locus: self.locus.clone(),
            kind: self.kind,
            k: self.k,
            s: w.len() as u32,
            omega: w,
            smaller: self.smaller.iter().map(&wrap).collect(),
            steenrod,
            remainder_g: remainder,
            corrections: Vec::new(),
            target,
        };
        if !out.verify()? {
            return Err(out.fail("propagated relation does not verify"));
        }
        Ok(out)
    }

    fn check_k(&self, m: &Monomial) -> Result<()> {
        if m.k() != self.k {
            return Err(Error::DimensionMismatch(m.k(), self.k));
        }
        Ok(())
    }

    /// Certificate for `x * w^{2^r} * y^{2^(r+s)}` from one for `w`.
    ///
    /// Requires every exponent of `x` to be below `2^r`.
    pub fn propagate_strict(&self, x: &Monomial, y: &Monomial, r: u32) -> Result<Self> {
        self.check_k(x)?;
        self.check_k(y)?;
        if self.kind != CertificateKind::Strict {
            return Err(self.fail("strict propagation needs a strict certificate"));
        }
        if x.exponents().iter().any(|&a| u64::from(a) >= 1u64 << r) {
            return Err(self.fail(format!("{x} has weight beyond position {r}")));
        }
        self.require_verified()?;
        if x.is_unit() && y.is_unit() && r == 0 {
            return Ok(self.clone());
        }
        let name = format!("{}*[{x};{r};{y}]", self.name);
        self.lift(x, r, y, name, Vec::new())
    }

    /// Certificate for `u * w^{2^c} * y^{2^(c+d)}` from a strong one for `w`,
    /// where `u`, `w`, `y` have constant weight `k - 2` of lengths `c`, `d`
    /// and some `e`.
    pub fn propagate_strong(&self, u: &Monomial, y: &Monomial, c: u32, d: u32) -> Result<Self> {
        self.check_k(u)?;
        self.check_k(y)?;
        let level = self.k.checked_sub(2).ok_or_else(|| self.fail("needs at least two variables"))? as u32;
        let flat = |m: &Monomial, len: u32, what: &str| -> Result<()> {
            let w = omega(m);
            if w.len() as u32 != len || w.entries().iter().any(|&v| v != level) {
                return Err(self.fail(format!("{what} {m} has weight {w}, expected ({level})|^{len}")));
            }
            Ok(())
        };
        flat(u, c, "u")?;
        flat(&self.target, d, "w")?;
        let e = omega(y).len() as u32;
        flat(y, e, "y")?;
        if d != self.s {
            return Err(self.fail(format!("d = {d} but the certificate has s = {}", self.s)));
        }
        self.require_verified()?;
        if u.is_unit() && y.is_unit() && c == 0 {
            return Ok(self.retagged(CertificateKind::Strong));
        }
        let big_y = y.frobenius(c + d);
        let remainder =
            self.remainder_g.iter().map(|g| u.mul_unchecked(&g.frobenius(c)).mul_unchecked(&big_y)).collect();
        let name = format!("{}*[{u};{c};{y}]", self.name);
        let mut out = self.lift(u, c, y, name, remainder)?;
        out.kind = CertificateKind::Strong;
        Ok(out)
    }
}

/// Named certificates with unique names.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CertificateCorpus {
    pub entries: Vec<RelationCertificate>,
}

impl CertificateCorpus {
    pub fn new(entries: Vec<RelationCertificate>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for c in &entries {
            if !seen.insert(c.name.as_str()) {
                return Err(Error::Corpus { origin: c.name.clone(), message: "duplicate name".into() });
            }
        }
        Ok(CertificateCorpus { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&RelationCertificate> {
        self.entries.iter().find(|c| c.name == name)
    }

    /// Parses a JSON array of certificates.
    pub fn parse(origin: &str, text: &str) -> Result<Vec<RelationCertificate>> {
        serde_json::from_str(text).map_err(|e| Error::Corpus {
            origin: origin.to_string(),
            message: format!("line {} column {}: {e}", e.line(), e.column()),
        })
    }

    /// Loads one file, or every `*.json` file of a directory in name order.
    pub fn load(path: &Path) -> Result<Self> {
        let mut files = Vec::new();
        if path.is_dir() {
            for entry in std::fs::read_dir(path)? {
                let p = entry?.path();
                if p.extension().is_some_and(|e| e == "json") {
                    files.push(p);
                }
            }
            files.sort();
        } else {
            files.push(path.to_path_buf());
        }
        let mut entries = Vec::new();
        for f in files {
            let text = std::fs::read_to_string(&f)?;
            entries.extend(Self::parse(&f.display().to_string(), &text)?);
        }
        Self::new(entries)
    }

    /// The relations shipped with the crate.
    pub fn builtin() -> Self {
        let mut entries = Vec::new();
        for (origin, text) in BUILTIN {
            entries.extend(Self::parse(origin, text).expect("shipped corpus parses"));
        }
        Self::new(entries).expect("shipped corpus has unique names")
    }

    pub fn verify(&self) -> CorpusReport {
        let entries: Vec<EntryReport> = self.entries.iter().map(EntryReport::of).collect();
        let passed = entries.iter().filter(|e| e.verified).count();
        let errors = entries.iter().filter(|e| e.error.is_some()).count();
        CorpusReport { total: entries.len(), passed, failed: entries.len() - passed - errors, errors, entries }
    }
}

const BUILTIN: [(&str, &str); 6] = [
    ("bdk1.json", include_str!("../fixtures/certificates/bdk1.json")),
    ("bdd30.json", include_str!("../fixtures/certificates/bdd30.json")),
    ("bdd31.json", include_str!("../fixtures/certificates/bdd31.json")),
    ("bdd41.json", include_str!("../fixtures/certificates/bdd41.json")),
    ("bdd42.json", include_str!("../fixtures/certificates/bdd42.json")),
    ("bdd51.json", include_str!("../fixtures/certificates/bdd51.json")),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryReport {
    pub name: String,
    pub locus: String,
    pub kind: CertificateKind,
    pub k: usize,
    pub degree: u32,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub offending: Vec<Monomial>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub absorbed: Vec<Monomial>,
    pub corrections: usize,
}

impl EntryReport {
    fn of(c: &RelationCertificate) -> Self {
        let (verified, error, absorbed, offending) = match c.check_structure() {
            Err(e) => (false, Some(e.to_string()), Vec::new(), Vec::new()),
            Ok(()) => {
                let (tail, bad) = c.classify_residual();
                (bad.is_empty(), None, tail, bad)
            }
        };
        EntryReport {
            name: c.name.clone(),
            locus: c.locus.clone(),
            kind: c.kind,
            k: c.k,
            degree: c.degree(),
            verified,
            error,
            offending,
            absorbed,
            corrections: c.corrections.len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub entries: Vec<EntryReport>,
}

impl CorpusReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }
}

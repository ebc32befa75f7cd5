//! Kameko's squaring operation `(QP_k)_n -> (QP_k)_{(n-k)/2}`.

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::linalg::{BitRow, EchelonBasis};
use crate::monomial::{Monomial, Polynomial};
use crate::quotient::{AdmissibleBasis, Engine};

/// `y` when `x = x_1 ... x_k y^2`, otherwise `None`.
pub fn phi(x: &Monomial) -> Option<Monomial> {
    let e = x.exponents();
    if e.iter().any(|&a| a % 2 == 0) {
        return None;
    }
    Some(Monomial::new(&e.iter().map(|&a| (a - 1) / 2).collect::<Vec<_>>()))
}

/// `x_1 ... x_k y^2`.
pub fn psi(y: &Monomial) -> Monomial {
    Monomial::new(&y.exponents().iter().map(|&a| 2 * a + 1).collect::<Vec<_>>())
}

/// `phi` extended linearly.
pub fn phi_polynomial(f: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(f.k());
    for m in f.terms() {
        if let Some(y) = phi(m) {
            out.toggle(y);
        }
    }
    out
}

/// Target degree `(n - k) / 2`, rejecting odd or negative differences.
pub fn target_degree(k: usize, n: u32) -> Result<u32> {
    let k = k as u32;
    if n < k || !(n - k).is_multiple_of(2) {
        return Err(invalid(format!("n - k must be even and non-negative (k = {k}, n = {n})")));
    }
    Ok((n - k) / 2)
}

/// Matrix of the induced map; column `b` holds the target coordinates of
/// the class of `phi(b)` for the `b`-th source basis monomial.
#[derive(Clone, Debug)]
pub struct KamekoMatrix {
    pub k: usize,
    pub n: u32,
    pub target_n: u32,
    source: Vec<Monomial>,
    target: Vec<Monomial>,
    columns: Vec<BitRow>,
    rank: usize,
    kernel: Vec<BitRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KamekoReport {
    pub k: usize,
    pub n: u32,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub surjective: bool,
}

impl KamekoMatrix {
    pub fn from_bases(source: &AdmissibleBasis, target: &AdmissibleBasis) -> Result<Self> {
        let (k, n) = (source.k, source.n);
        let target_n = target_degree(k, n)?;
        if target.k != k || target.n != target_n {
            return Err(invalid("target basis does not match the source"));
        }
        let (s, t) = (source.len(), target.len());
        let mut columns = Vec::with_capacity(s);
        // rows [image | unit vector]; rows whose image part vanishes span the kernel
        let mut ech = EchelonBasis::new(t + s);
        for (b, m) in source.monomials().iter().enumerate() {
            let coords = match phi(m) {
                Some(y) => target.coordinates(&Polynomial::from(y))?,
                None => vec![false; t],
            };
            let col = BitRow::from_columns(t, coords.iter().enumerate().filter(|(_, &c)| c).map(|(i, _)| i));
            let mut aug: Vec<usize> = col.ones().collect();
            aug.push(t + b);
            ech.insert_sparse(&aug);
            columns.push(col);
        }
        let mut rank = 0;
        let mut kernel = Vec::new();
        for (pivot, row) in ech.rows() {
            if pivot < t {
                rank += 1;
            } else {
                kernel.push(BitRow::from_columns(s, row.ones().map(|c| c - t)));
            }
        }
        Ok(KamekoMatrix {
            k,
            n,
            target_n,
            source: source.monomials().to_vec(),
            target: target.monomials().to_vec(),
            columns,
            rank,
            kernel,
        })
    }

    pub fn source(&self) -> &[Monomial] {
        &self.source
    }

    pub fn target(&self) -> &[Monomial] {
        &self.target
    }

    /// Target coordinates of the image of the `b`-th source monomial.
    pub fn column(&self, b: usize) -> &BitRow {
        &self.columns[b]
    }

    /// Target coordinates of the image of a sum of source basis monomials.
    pub fn image(&self, source_indices: &[usize]) -> BitRow {
        let mut out = BitRow::zeros(self.target.len());
        for &b in source_indices {
            out.xor(&self.columns[b]);
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn kernel_dim(&self) -> usize {
        self.source.len() - self.rank
    }

    pub fn is_surjective(&self) -> bool {
        self.rank == self.target.len()
    }

    /// Kernel basis as sums of source basis monomials.
    pub fn kernel_basis(&self) -> Vec<Vec<Monomial>> {
        self.kernel.iter().map(|r| r.ones().map(|b| self.source[b].clone()).collect()).collect()
    }

    /// Source basis monomials sent to zero.
    pub fn zero_columns(&self) -> Vec<Monomial> {
        (0..self.source.len()).filter(|&b| self.columns[b].is_zero()).map(|b| self.source[b].clone()).collect()
    }

    pub fn report(&self) -> KamekoReport {
        KamekoReport {
            k: self.k,
            n: self.n,
            source_dim: self.source.len(),
            target_dim: self.target.len(),
            rank: self.rank,
            kernel_dim: self.kernel_dim(),
            surjective: self.is_surjective(),
        }
    }
}

impl Engine {
    pub fn kameko_matrix(&self, k: usize, n: u32) -> Result<KamekoMatrix> {
        let m = target_degree(k, n)?;
        let source = self.admissible_basis(k, n)?;
        let target = self.admissible_basis(k, m)?;
        KamekoMatrix::from_bases(&source, &target)
    }
}

//! Sufficient conditions for a monomial or product to be hit.
//!
//! Every test answers `Hit` or `Unknown`; none of them can prove a
//! monomial is not hit.

use serde::Serialize;

use crate::error::Result;
use crate::monomial::{Monomial, Polynomial};
use crate::weight::{minimal_spike, mu, omega, script_p_against};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HitStatus {
    Hit,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    Singer,
    Silverman,
    WalkerWood,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HitVerdict {
    pub status: HitStatus,
    pub reason: Criterion,
}

impl HitVerdict {
    fn new(hit: bool, reason: Criterion) -> Self {
        let status = if hit { HitStatus::Hit } else { HitStatus::Unknown };
        HitVerdict { status, reason }
    }

    pub fn is_hit(&self) -> bool {
        self.status == HitStatus::Hit
    }
}

/// Hit when `omega(x)` is below the weight of the minimal spike.
pub fn singer_test(x: &Monomial) -> Result<HitVerdict> {
    let z = minimal_spike(x.degree(), x.k())?;
    Ok(HitVerdict::new(omega(x) < omega(&z), Criterion::Singer))
}

/// Hit when `deg f < (2^m - 1) mu(deg g)` for `p = f g^{2^m}`.
pub fn silverman_test(f: &Polynomial, g: &Polynomial, m: u32) -> Result<HitVerdict> {
    let deg_f = f.degree().unwrap_or(0) as u64;
    let deg_g = g.degree().unwrap_or(0);
    let mu_g = if deg_g == 0 { 0 } else { mu(deg_g)? as u64 };
    let bound = ((1u64 << m) - 1) * mu_g;
    Ok(HitVerdict::new(deg_f < bound, Criterion::Silverman))
}

/// Hit when some prefix-weighted sum of `omega(x)` drops below that of the
/// minimal spike.
pub fn walker_wood_test(x: &Monomial) -> Result<HitVerdict> {
    let z = minimal_spike(x.degree(), x.k())?;
    Ok(HitVerdict::new(script_p_against(x, &z), Criterion::WalkerWood))
}

//! Recomputation of published values at desk scale.

use std::collections::BTreeSet;

use hitprob::genset::{check_compatible, CompatibleSet};
use hitprob::quotient::Engine;
use hitprob::tables::{candidates_weight_333, candidates_weight_3333, listed_weight_33};
use hitprob::{Monomial, Result, WeightVector};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Md52,
    Mdd532,
    Mdd41,
    Qp3,
    Kameko315,
    Compat45,
    Dl20,
}

const IDS: [(&str, Target); 13] = [
    ("md52", Target::Md52),
    ("weight-3", Target::Md52),
    ("mdd532", Target::Mdd532),
    ("weight-333", Target::Mdd532),
    ("mdd41", Target::Mdd41),
    ("weight-3333", Target::Mdd41),
    ("qp3-21", Target::Qp3),
    ("qp3", Target::Qp3),
    ("kameko-3-15", Target::Kameko315),
    ("compat-4-5", Target::Compat45),
    ("dl20", Target::Dl20),
    ("bound", Target::Dl20),
    ("3255", Target::Dl20),
];

pub fn parse_id(s: &str) -> std::result::Result<Target, String> {
    IDS.iter().find(|(id, _)| *id == s).map(|p| p.1).ok_or_else(|| {
        let known: Vec<&str> = IDS.iter().map(|p| p.0).collect();
        format!("unknown table id {s:?}; known: {}", known.join(", "))
    })
}

#[derive(Debug, Serialize)]
pub struct Comparison {
    pub id: &'static str,
    pub description: &'static str,
    pub expected: Value,
    pub computed: Value,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn set(v: &[Monomial]) -> BTreeSet<Monomial> {
    v.iter().cloned().collect()
}

pub fn run(target: Target, engine: &Engine) -> Result<Comparison> {
    Ok(match target {
        Target::Md52 => {
            let one = engine.weight_basis(5, &WeightVector::repeat(3, 1))?;
            let two = engine.weight_basis(5, &WeightVector::repeat(3, 2))?;
            let listed = set(&two.positive()) == set(&listed_weight_33());
            let computed = [one.len(), two.len()];
            Comparison {
                id: "md52",
                description:
                    "dimensions of QP_5((3)) and QP_5((3,3)); positive part of the second against the listed 15",
                expected: json!({ "dims": [10, 55], "zero_part": 40, "listed_positive": true }),
                computed: json!({ "dims": computed, "zero_part": two.zero_part().len(), "listed_positive": listed }),
                ok: computed == [10, 55] && two.zero_part().len() == 40 && listed,
                note: None,
            }
        }
        Target::Mdd532 => {
            let b = engine.weight_basis(5, &WeightVector::repeat(3, 3))?;
            let cand = set(&candidates_weight_333());
            let subset = b.positive().iter().all(|m| cand.contains(m));
            let zero = b.zero_part().len();
            Comparison {
                id: "mdd532",
                description: "positive admissible monomials of weight (3,3,3) in P_5 among the 70 candidates",
                expected: json!({ "subset": true, "zero_part": 60 }),
                computed: json!({ "subset": subset, "zero_part": zero, "positive": b.positive().len() }),
                ok: subset && zero == 60,
                note: None,
            }
        }
        Target::Mdd41 => {
            let b = engine.weight_basis(5, &WeightVector::repeat(3, 4))?;
            let cand = set(&candidates_weight_3333());
            let subset = b.positive().iter().all(|m| cand.contains(m));
            Comparison {
                id: "mdd41",
                description: "positive admissible monomials of weight (3,3,3,3) in P_5 among the 94 candidates",
                expected: json!({ "subset": true }),
                computed: json!({ "subset": subset, "positive": b.positive().len() }),
                ok: subset,
                note: None,
            }
        }
        Target::Qp3 => {
            let mut dims = Vec::new();
            for (s, t) in [(2u32, 2u32), (2, 3), (3, 2)] {
                let m = (1 << (s + t)) + (1 << s) - 2;
                dims.push(json!({ "m": m, "dim": engine.admissible_basis(3, m)?.len() }));
            }
            let ok = dims.iter().all(|d| d["dim"] == json!(21));
            Comparison {
                id: "qp3-21",
                description: "dim (QP_3)_m for m = 2^(s+t) + 2^s - 2",
                expected: json!([{ "m": 18, "dim": 21 }, { "m": 34, "dim": 21 }, { "m": 38, "dim": 21 }]),
                computed: json!(dims),
                ok,
                note: None,
            }
        }
        Target::Kameko315 => {
            let r = engine.kameko_matrix(3, 15)?.report();
            Comparison {
                id: "kameko-3-15",
                description: "kernel of the induced Kameko map from degree 15 in three variables",
                expected: json!({ "kernel_dim": 7, "surjective": true }),
                computed: json!({ "kernel_dim": r.kernel_dim, "surjective": r.surjective }),
                ok: r.kernel_dim == 7 && r.surjective,
                note: None,
            }
        }
        Target::Compat45 => {
            let set = CompatibleSet::from_admissible(engine, 4, 5)?;
            let r = check_compatible(engine, &set)?;
            Comparison {
                id: "compat-4-5",
                description: "admissible pair sequences of weight (2)|^5 in P_4 are compatible",
                expected: json!({ "compatible": true }),
                computed: json!({ "compatible": r.compatible, "size": r.size, "targets": r.targets }),
                ok: r.compatible,
                note: None,
            }
        }
        Target::Dl20 => {
            let dim = engine.admissible_basis(3, 18)?.len();
            let bound = 155 * dim;
            let product = 7 * 15 * 31;
            Comparison {
                id: "dl20",
                description: "upper bound 3255 for the kernel in five variables",
                expected: json!({ "bound": 3255, "factor": 155, "dim_qp3": 21, "total": 13020 }),
                computed: json!({ "bound": bound, "dim_qp3": dim, "product_7_15_31": product, "total": 4 * bound }),
                ok: dim == 21 && bound == 3255 && bound == product && 4 * bound == 13020,
                note: Some(format!(
                    "out of desk scale; bound arithmetic only: 155*{dim}={bound}. The kernel lives in degrees of \
                     at least 2^14, where the elimination is far beyond a desk budget; 155 is cited, {dim} is computed"
                )),
            }
        }
    })
}

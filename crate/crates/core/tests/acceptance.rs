//! One PASS/FAIL line per acceptance criterion, with time limits pinned here.
//! Runs without the libtest harness so the lines always reach stdout.
//!
//! The test fails when the set of failing criteria differs from
//! `EXPECTED_UNMET`, so an unmet criterion is reported rather than hidden and
//! a newly met or newly broken one is noticed.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use hitprob::certificate::CertificateCorpus;
use hitprob::criteria::{singer_test, walker_wood_test};
use hitprob::genset::{check_compatible, CompatibleSet};
use hitprob::kameko::phi_polynomial;
use hitprob::linalg::EchelonBasis;
use hitprob::monomial::monomials_of_degree;
use hitprob::quotient::{Augment, Engine, HitSpaceSpec};
use hitprob::steenrod::{sq, sq_monomial};
use hitprob::tables::{candidates_weight_333, candidates_weight_3333, listed_weight_33};
use hitprob::weight::{decomposition, mu, omega, ordered_monomials};
use hitprob::{Monomial, Polynomial, WeightVector};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

/// Criteria known not to hold; each has a ledger entry.
const EXPECTED_UNMET: [u32; 1] = [7];

const LIMIT_1: Duration = Duration::from_secs(1);
const LIMIT_2: Duration = Duration::from_secs(5);
const LIMIT_3: Duration = Duration::from_secs(120);
const LIMIT_4: Duration = Duration::from_secs(2 * 3600);
const LIMIT_5_EACH: Duration = Duration::from_secs(10);
const LIMIT_6: Duration = Duration::from_secs(5);
const LIMIT_7: Duration = Duration::from_secs(300);
const LIMIT_8: Duration = Duration::from_secs(3600);
const PROPERTY_CASES: usize = 200;

type Check = fn(&Engine) -> Outcome;

struct Outcome {
    ok: bool,
    detail: String,
}

fn timed(limit: Duration, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let t = Instant::now();
    let (ok, detail) = f();
    let took = t.elapsed();
    let in_time = took <= limit;
    let timing = format!("{:.2}s of {:.0}s", took.as_secs_f64(), limit.as_secs_f64());
    Outcome { ok: ok && in_time, detail: format!("{detail}; {timing}{}", if in_time { "" } else { " EXCEEDED" }) }
}

fn sorted(v: &[Monomial]) -> BTreeSet<Monomial> {
    v.iter().cloned().collect()
}

fn x_pairs(k: usize) -> BTreeSet<Monomial> {
    let mut out = BTreeSet::new();
    for a in 1..=k {
        for b in a + 1..=k {
            let e: Vec<u32> = (1..=k).map(|v| u32::from(v != a && v != b)).collect();
            out.insert(Monomial::new(&e));
        }
    }
    out
}

fn criterion_1(engine: &Engine) -> Outcome {
    timed(LIMIT_1, || {
        let b = engine.weight_basis(5, &WeightVector::repeat(3, 1)).unwrap();
        let ok = b.len() == 10 && sorted(b.monomials()) == x_pairs(5);
        (ok, format!("dim QP_5((3)) = {}, basis is the ten X_(a,b): {ok}", b.len()))
    })
}

fn criterion_2(engine: &Engine) -> Outcome {
    timed(LIMIT_2, || {
        let b = engine.weight_basis(5, &WeightVector::repeat(3, 2)).unwrap();
        let zero = b.zero_part().len();
        let listed = sorted(&b.positive()) == sorted(&listed_weight_33());
        let ok = b.len() == 55 && zero == 40 && listed;
        (ok, format!("dim = {}, zero part = {zero}, positive part equals the 15 listed: {listed}", b.len()))
    })
}

fn criterion_3(engine: &Engine) -> Outcome {
    timed(LIMIT_3, || {
        let b = engine.weight_basis(5, &WeightVector::repeat(3, 3)).unwrap();
        let cand = sorted(&candidates_weight_333());
        let pos = b.positive();
        let subset = pos.iter().all(|m| cand.contains(m));
        let zero = b.zero_part().len();
        let ok = subset && zero == 60 && cand.len() == 70;
        (ok, format!("|B+| = {} within the 70 candidates: {subset}, zero part = {zero}", pos.len()))
    })
}

fn criterion_4(engine: &Engine) -> Outcome {
    timed(LIMIT_4, || {
        let b = engine.weight_basis(5, &WeightVector::repeat(3, 4)).unwrap();
        let cand = sorted(&candidates_weight_3333());
        let pos = b.positive();
        let subset = pos.iter().all(|m| cand.contains(m));
        let ok = subset && cand.len() == 94;
        (ok, format!("|B+| = {} within the 94 candidates: {subset}", pos.len()))
    })
}

fn criterion_5(engine: &Engine) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (s, t) in [(2u32, 2u32), (2, 3), (3, 2)] {
        let m = (1 << (s + t)) + (1 << s) - 2;
        let o = timed(LIMIT_5_EACH, || {
            let d = engine.admissible_basis(3, m).unwrap().len();
            (d == 21, format!("m = {m}: {d}"))
        });
        ok &= o.ok;
        parts.push(o.detail);
    }
    Outcome { ok, detail: parts.join(" | ") }
}

fn criterion_6(engine: &Engine) -> Outcome {
    timed(LIMIT_6, || {
        let m = engine.kameko_matrix(3, 15).unwrap();
        let ok = m.kernel_dim() == 7 && m.is_surjective();
        (ok, format!("kernel dim = {} (7 expected), surjective = {}", m.kernel_dim(), m.is_surjective()))
    })
}

fn criterion_7(engine: &Engine) -> Outcome {
    timed(LIMIT_7, || {
        let corpus = CertificateCorpus::builtin();
        let report = corpus.verify();
        let failing: Vec<String> = report
            .entries
            .iter()
            .filter(|e| !e.verified)
            .map(|e| format!("{} ({})", e.name, e.error.clone().unwrap_or_else(|| format!("{:?}", e.offending))))
            .collect();
        let mut agree = 0;
        let mut checked = 0;
        for c in corpus.entries.iter().filter(|c| c.degree() <= 45) {
            checked += 1;
            if c.cross_check(engine).unwrap() {
                agree += 1;
            }
        }
        let small: Vec<_> = corpus.entries.iter().filter(|c| c.degree() <= 21).collect();
        let small_agree = small.iter().all(|c| c.cross_check(engine).unwrap());
        // targets of the failing entries are still leading terms of the bounded elimination
        let mut still_leading = true;
        for e in report.entries.iter().filter(|e| !e.verified) {
            let c = corpus.get(&e.name).unwrap();
            let spec = HitSpaceSpec::new(c.k, c.degree()).bounded(c.s).with(Augment::LowerWeight(c.omega.clone()));
            still_leading &= engine.hit_space(&spec).unwrap().is_leading(&c.target);
        }
        let ok = report.all_passed() && small_agree;
        (
            ok,
            format!(
                "{}/{} relations verify; elimination agrees on {agree}/{checked} targets of degree <= 45 \
                 (degree <= 21: {}); unverified: [{}], whose targets elimination still finds inadmissible: {still_leading}",
                report.passed,
                report.total,
                if small_agree { "all" } else { "NOT all" },
                failing.join("; ")
            ),
        )
    })
}

fn criterion_8(engine: &Engine) -> Outcome {
    timed(LIMIT_8, || {
        let set = CompatibleSet::from_admissible(engine, 4, 5).unwrap();
        let r = check_compatible(engine, &set).unwrap();
        (
            r.compatible,
            format!(
                "|B_4| = {}, {} targets, {} failing, compatible = {}",
                r.size,
                r.targets,
                r.failing.len(),
                r.compatible
            ),
        )
    })
}

fn random_monomial(rng: &mut StdRng, k: usize, max: u32) -> Monomial {
    Monomial::new(&(0..k).map(|_| rng.gen_range(0..=max)).collect::<Vec<_>>())
}

fn random_poly(rng: &mut StdRng, k: usize, max_n: u32) -> Polynomial {
    let n = rng.gen_range(0..=max_n);
    let all: Vec<Monomial> = monomials_of_degree(k, n).collect();
    let picks = (0..rng.gen_range(1..4)).map(|_| all.choose(rng).unwrap().clone());
    Polynomial::from_terms(k, picks).unwrap()
}

fn criterion_9(engine: &Engine) -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut results: Vec<(&str, bool)> = Vec::new();

    let cartan = (0..PROPERTY_CASES).all(|_| {
        let (f, g) = (random_poly(&mut rng, 3, 5), random_poly(&mut rng, 3, 5));
        let n = rng.gen_range(0..12);
        let mut rhs = Polynomial::zero(3);
        for i in 0..=n {
            rhs = rhs.add(&sq(i, &f).mul(&sq(n - i, &g)).unwrap()).unwrap();
        }
        sq(n, &f.mul(&g).unwrap()) == rhs
    });
    results.push(("cartan", cartan));

    let unstable = (0..PROPERTY_CASES).all(|_| {
        let f = random_poly(&mut rng, 4, 9);
        let d = f.degree().unwrap_or(0);
        let over = rng.gen_range(1..5);
        sq(d + over, &f).is_zero() && sq(d, &f) == f.frobenius(1) && sq(0, &f) == f
    });
    results.push(("unstable", unstable));

    let drop = (0..PROPERTY_CASES).all(|_| {
        let x = random_monomial(&mut rng, 5, 63);
        let s = rng.gen_range(1..7);
        let n = rng.gen_range(1..(1u32 << s));
        let wx = omega(&x);
        sq_monomial(n, &x).iter().all(|v| {
            let wv = omega(v);
            wv < wx && (1..=s as usize).any(|i| wv.get(i) < wx.get(i))
        })
    });
    results.push(("weight drop", drop));

    let phi_sq = (0..PROPERTY_CASES).all(|_| {
        let f = random_poly(&mut rng, 4, 13);
        let t = rng.gen_range(0..=8);
        phi_polynomial(&sq(2 * t, &f)) == sq(t, &phi_polynomial(&f)) && phi_polynomial(&sq(2 * t + 1, &f)).is_zero()
    });
    results.push(("phi and squares", phi_sq));

    // fewest terms 2^u - 1 by dynamic programming, then uniqueness of the shape
    let limit = 10_000usize;
    let mut best = vec![u32::MAX; limit + 1];
    best[0] = 0;
    for n in 1..=limit {
        for u in 1..15 {
            let p = (1usize << u) - 1;
            if p <= n && best[n - p] != u32::MAX {
                best[n] = best[n].min(best[n - p] + 1);
            }
        }
    }
    let spikes = (1..=limit as u32).all(|n| {
        let s = mu(n).unwrap();
        let d = decomposition(n).unwrap();
        let shaped =
            d.d.windows(2).enumerate().all(|(i, w)| if i + 2 == d.d.len() { w[0] >= w[1] } else { w[0] > w[1] });
        let sum: u32 = d.d.iter().map(|&e| (1u32 << e) - 1).sum();
        s == best[n as usize] && (n - s).is_multiple_of(2) && shaped && sum == n && d.d.len() as u32 == s
    });
    results.push(("mu and decomposition", spikes));

    let brute = Engine::new().without_pruning();
    let mut sound = true;
    for k in 1..=5 {
        for n in 1..=21 {
            let space = brute.hit_space(&HitSpaceSpec::new(k, n)).unwrap();
            for x in monomials_of_degree(k, n) {
                let flagged = matches!(singer_test(&x), Ok(v) if v.is_hit())
                    || matches!(walker_wood_test(&x), Ok(v) if v.is_hit());
                if flagged && !space.contains(&Polynomial::from(x)).unwrap() {
                    sound = false;
                }
            }
        }
    }
    results.push(("criteria soundness", sound));

    let mut greedy = true;
    for k in 1..=3 {
        for n in 1..=12 {
            let basis = engine.admissible_basis(k, n).unwrap();
            let ordered = ordered_monomials(k, n);
            for (pos, x) in ordered.iter().enumerate() {
                let smaller = ordered[pos + 1..].iter().cloned().collect();
                let spec = HitSpaceSpec::new(k, n).with(Augment::Monomials(smaller));
                let inadmissible = brute.hit_space(&spec).unwrap().contains(&Polynomial::from(x.clone())).unwrap();
                greedy &= inadmissible != basis.contains(x);
            }
        }
    }
    results.push(("greedy admissibility", greedy));

    let rref = (0..PROPERTY_CASES).all(|_| {
        let ncols = rng.gen_range(1..120);
        let mut rows: Vec<Vec<usize>> = (0..rng.gen_range(0..50))
            .map(|_| (0..rng.gen_range(0..6)).map(|_| rng.gen_range(0..ncols)).collect())
            .collect();
        let build = |rows: &[Vec<usize>]| {
            let mut e = EchelonBasis::new(ncols);
            for r in rows {
                e.insert_sparse(r);
            }
            e.rows()
        };
        let a = build(&rows);
        rows.shuffle(&mut rng);
        a == build(&rows)
    });
    results.push(("rref determinism", rref));

    let ok = results.iter().all(|r| r.1);
    let detail = results.iter().map(|(n, b)| format!("{n}: {}", if *b { "ok" } else { "FAILED" })).collect::<Vec<_>>();
    Outcome { ok, detail: format!("{} ({PROPERTY_CASES} random cases where randomized)", detail.join(", ")) }
}

fn criterion_10(engine: &Engine) -> Outcome {
    let dim = engine.admissible_basis(3, 18).unwrap().len();
    let bound = 155 * dim;
    let product = (8 - 1) * (16 - 1) * (32 - 1);
    let ok = dim == 21 && bound == 3255 && bound == product && 4 * bound == 13020;
    Outcome {
        ok,
        detail: format!(
            "not reproduced: the kernel dimension 3255 and the total 13020 live in degrees of at least 2^14; \
             only the bound arithmetic is checked: 155 * {dim} = {bound} = 7 * 15 * 31 = {product}, \
             with 155 cited and {dim} computed"
        ),
    }
}

fn main() {
    let cache = tempfile::tempdir().unwrap();
    let engine = Engine::new().with_cache(cache.path());
    let criteria: Vec<(u32, &str, Check)> = vec![
        (1, "weight (3) in P_5", criterion_1),
        (2, "weight (3,3) in P_5", criterion_2),
        (3, "weight (3,3,3) in P_5", criterion_3),
        (4, "weight (3,3,3,3) in P_5", criterion_4),
        (5, "(QP_3)_m", criterion_5),
        (6, "Kameko kernel k=3 n=15", criterion_6),
        (7, "relation corpus", criterion_7),
        (8, "compatibility k=4 d0=5", criterion_8),
        (9, "property suites", criterion_9),
        (10, "out-of-scale statement", criterion_10),
    ];
    let mut unmet = Vec::new();
    for (id, name, run) in criteria {
        // criteria 1-6 and 8 are timed cold: each gets a fresh engine without a cache
        let o = if id == 7 { run(&engine) } else { run(&Engine::new()) };
        println!("{} criterion {id} [{name}]: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        if !o.ok {
            unmet.push(id);
        }
    }
    if unmet != EXPECTED_UNMET {
        eprintln!("unmet criteria {unmet:?} differ from the documented set {EXPECTED_UNMET:?}");
        std::process::exit(1);
    }
    println!("unmet criteria match the documented set {EXPECTED_UNMET:?}");
}

//! Parsing of command-line values.

use hitprob::{Error, Monomial, Polynomial, Result, WeightVector};

pub fn parse_weight(s: &str) -> std::result::Result<WeightVector, String> {
    let entries: std::result::Result<Vec<u32>, _> = s.split(',').map(|t| t.trim().parse::<u32>()).collect();
    match entries {
        Ok(e) if !e.is_empty() => Ok(WeightVector::new(&e)),
        _ => Err(format!("expected comma-separated non-negative integers, got {s:?}")),
    }
}

/// Byte count with an optional `K`, `M` or `G` suffix (powers of 1024).
pub fn parse_bytes(s: &str) -> std::result::Result<u64, String> {
    let t = s.trim();
    let (digits, shift) = match t.chars().last().map(|c| c.to_ascii_uppercase()) {
        Some('K') => (&t[..t.len() - 1], 10),
        Some('M') => (&t[..t.len() - 1], 20),
        Some('G') => (&t[..t.len() - 1], 30),
        _ => (t, 0),
    };
    let n: u64 = digits.parse().map_err(|_| format!("bad byte count {s:?}"))?;
    n.checked_mul(1 << shift).ok_or_else(|| format!("byte count {s:?} overflows"))
}

enum Term {
    Exponents(Vec<u32>),
    Factors(Vec<(usize, u32)>),
}

fn parse_term(t: &str) -> Result<Term> {
    let bad = || Error::InvalidArgument(format!("cannot read the term {t:?}"));
    let t = t.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if t.contains(',') || t.chars().all(|c| c.is_ascii_digit()) {
        if !t.contains(',') && t != "1" {
            return Err(bad());
        }
        if t == "1" {
            return Ok(Term::Factors(Vec::new()));
        }
        let e: std::result::Result<Vec<u32>, _> = t.split(',').map(|a| a.trim().parse()).collect();
        return e.map(Term::Exponents).map_err(|_| bad());
    }
    let mut factors = Vec::new();
    for f in t.split(|c: char| c.is_whitespace() || c == '*').filter(|f| !f.is_empty()) {
        let rest = f.strip_prefix('x').ok_or_else(bad)?;
        let (i, e) = match rest.split_once('^') {
            Some((i, e)) => (i, e.parse::<u32>().map_err(|_| bad())?),
            None => (rest, 1),
        };
        let i: usize = i.parse().map_err(|_| bad())?;
        if i == 0 {
            return Err(bad());
        }
        factors.push((i, e));
    }
    Ok(Term::Factors(factors))
}

/// Homogeneous polynomial from `+`-separated terms.
pub fn parse_polynomial(s: &str, k: Option<usize>) -> Result<Polynomial> {
    let terms: Vec<Term> = s.split('+').map(parse_term).collect::<Result<_>>()?;
    let needed = terms
        .iter()
        .map(|t| match t {
            Term::Exponents(e) => e.len(),
            Term::Factors(f) => f.iter().map(|p| p.0).max().unwrap_or(0),
        })
        .max()
        .unwrap_or(0);
    let k = match k {
        Some(k) if k < needed => {
            return Err(Error::InvalidArgument(format!("a term needs {needed} variables but k = {k}")));
        }
        Some(k) => k,
        None => needed.max(1),
    };
    let mut monomials = Vec::new();
    for t in terms {
        let mut e = vec![0u32; k];
        match t {
            Term::Exponents(v) => {
                if v.len() != k {
                    return Err(Error::DimensionMismatch(k, v.len()));
                }
                e = v;
            }
            Term::Factors(f) => {
                for (i, a) in f {
                    e[i - 1] += a;
                }
            }
        }
        monomials.push(Monomial::new(&e));
    }
    Polynomial::from_terms(k, monomials)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_term_notations() {
        let f = parse_polynomial("x1^2 x3 + 0,1,2", None).unwrap();
        assert_eq!(f.k(), 3);
        assert_eq!(f.len(), 2);
        assert!(parse_polynomial("x1 + x2^2", None).is_err());
        assert!(parse_polynomial("1,2 + x3", Some(2)).is_err());
        assert_eq!(parse_polynomial("x2*x2", Some(2)).unwrap().to_string(), "x2^2");
    }

    #[test]
    fn byte_suffixes() {
        assert_eq!(parse_bytes("4G"), Ok(4 << 30));
        assert_eq!(parse_bytes("512k"), Ok(512 << 10));
        assert!(parse_bytes("lots").is_err());
    }
}

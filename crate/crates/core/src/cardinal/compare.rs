//! Sound comparison of cardinal expressions.
//!
//! `prove_lt`/`prove_le` search for a derivation from a fixed rule list:
//! finite arithmetic, `ℵ0` is the least infinite cardinal, index order of
//! `ℵ` and `ℶ`, `ℵ_i ≤ ℶ_i`, successor (`ℵ_{i+1} ≤ κ` when `ℵ_i < κ`),
//! Cantor (`μ < 2^μ`), König (`κ < κ^cf(κ)`) with known cofinalities,
//! monotonicity of `+ · ^`, and `ℶ`-level bounds. A statement no rule
//! derives is reported `Unknown`, never guessed.

use num_bigint::BigUint;

use super::normalize::{at_least_two, is_infinite, is_nonzero, is_zero, normalize_traced};
use super::{CardinalExpr, Index, TriBool};
use crate::error::{Error, Result};

pub(super) const PROOF_DEPTH: usize = 6;

fn succ_lo(i: Index) -> Index {
    match i {
        Index::Finite(n) => Index::Finite(n + 1),
        Index::Omega => Index::Omega,
    }
}

fn succ_hi(i: Option<Index>) -> Option<Index> {
    match i? {
        Index::Finite(n) => Some(Index::Finite(n + 1)),
        Index::Omega => None,
    }
}

/// `(lo, hi)` with `ℶ_lo ≤ e ≤ ℶ_hi` (`hi = None`: no upper bound known).
fn levels(e: &CardinalExpr) -> Option<(Index, Option<Index>)> {
    use CardinalExpr::*;
    match e {
        Finite(_) => None,
        Aleph(i) => Some((Index::Finite(0), Some(*i))),
        Beth(i) => Some((*i, Some(*i))),
        Var(_) => Some((Index::Finite(0), None)),
        Power(a, b) => {
            if let Finite(_) = **a {
                if !at_least_two(a) || is_infinite(b) != Some(true) {
                    return None;
                }
                let (lo, hi) = levels(b)?;
                return Some((succ_lo(lo), succ_hi(hi)));
            }
            if is_infinite(a) != Some(true) {
                return None;
            }
            let (la, ha) = levels(a)?;
            match is_infinite(b) {
                Some(false) if is_nonzero(b) => Some((la, ha)),
                Some(true) => {
                    let (lb, hb) = levels(b)?;
                    let hi = match (ha, hb) {
                        (Some(x), Some(y)) => succ_hi(Some(x.max(y))),
                        _ => None,
                    };
                    Some((la.max(succ_lo(lb)), hi))
                }
                _ => None,
            }
        }
        Sum(xs) | Product(xs) => {
            if matches!(e, Product(_)) && xs.iter().any(|x| !is_nonzero(x)) {
                return None;
            }
            let inf: Vec<_> = xs.iter().filter(|x| is_infinite(x) == Some(true)).collect();
            if inf.is_empty() || inf.len() + xs.iter().filter(|x| x.as_finite().is_some()).count() != xs.len() {
                return None;
            }
            let mut lo = Index::Finite(0);
            let mut hi = Some(Index::Finite(0));
            for x in inf {
                let (l, h) = levels(x)?;
                lo = lo.max(l);
                hi = match (hi, h) {
                    (Some(a), Some(b)) => Some(a.max(b)),
                    _ => None,
                };
            }
            Some((lo, hi))
        }
    }
}

/// Cofinality where it is determined outright.
pub(super) fn known_cofinality(e: &CardinalExpr) -> Option<CardinalExpr> {
    use CardinalExpr::*;
    match e {
        Finite(n) if *n == BigUint::from(0u32) => Some(CardinalExpr::finite(0)),
        Finite(_) => Some(CardinalExpr::finite(1)),
        Aleph(Index::Finite(n)) => Some(CardinalExpr::aleph(*n)),
        Aleph(Index::Omega) | Beth(Index::Omega) => Some(CardinalExpr::aleph0()),
        Beth(Index::Finite(0)) => Some(CardinalExpr::aleph0()),
        _ => None,
    }
}

fn product_nonzero(xs: &[CardinalExpr]) -> bool {
    xs.iter().all(is_nonzero)
}

/// A derivation of `a < b`, described by its last rule.
pub(super) fn lt_raw(a: &CardinalExpr, b: &CardinalExpr, depth: usize) -> Option<String> {
    use CardinalExpr::*;
    if depth == 0 {
        return None;
    }
    let d = depth - 1;
    match (a.as_finite(), b.as_finite()) {
        (Some(x), Some(y)) => return (x < y).then(|| "finite arithmetic".into()),
        (Some(_), None) if is_infinite(b) == Some(true) => return Some("finite < infinite".into()),
        (_, Some(_)) => return None,
        _ => {}
    }
    if let (Some((_, Some(h))), Some((l, _))) = (levels(a), levels(b)) {
        if h < l {
            return Some(format!("ℶ-levels: {a} ≤ ℶ{} < ℶ{} ≤ {b}", idx(h), idx(l)));
        }
    }
    match (a, b) {
        (Aleph(i), Aleph(j)) | (Beth(i), Beth(j)) if i < j => {
            return Some("index order".into());
        }
        _ => {}
    }
    if let Power(k, m) = b {
        if at_least_two(k) && le_raw(a, m, d).is_some() {
            return Some(format!("Cantor: {a} ≤ {m} < 2^{m} ≤ {b}"));
        }
        if is_infinite(k) == Some(true) {
            if let Some(cf) = known_cofinality(k) {
                if le_raw(&cf, m, d).is_some() && le_raw(a, k, d).is_some() {
                    return Some(format!("König: cf({k}) = {cf} ≤ {m}, so {k} < {k}^{cf} ≤ {b}"));
                }
            }
        }
    }
    if let Sum(xs) | Product(xs) = a {
        if is_infinite(b) == Some(true) && xs.iter().all(|x| lt_raw(x, b, d).is_some()) {
            return Some("every term is smaller".into());
        }
    }
    match b {
        Sum(ys) => {
            if ys.iter().any(|y| lt_raw(a, y, d).is_some()) {
                return Some("monotonicity of +".into());
            }
        }
        Product(ys) if product_nonzero(ys) && ys.iter().any(|y| lt_raw(a, y, d).is_some()) => {
            return Some("monotonicity of ·".into());
        }
        _ => {}
    }
    None
}

fn idx(i: Index) -> String {
    match i {
        Index::Finite(n) => n.to_string(),
        Index::Omega => "ω".into(),
    }
}

/// A derivation of `a ≤ b`.
pub(super) fn le_raw(a: &CardinalExpr, b: &CardinalExpr, depth: usize) -> Option<String> {
    use CardinalExpr::*;
    if a == b {
        return Some("reflexivity".into());
    }
    if depth == 0 {
        return None;
    }
    let d = depth - 1;
    if let (Some(x), Some(y)) = (a.as_finite(), b.as_finite()) {
        return (x <= y).then(|| "finite arithmetic".into());
    }
    if let Some(p) = lt_raw(a, b, d) {
        return Some(p);
    }
    if let (Some((_, Some(h))), Some((l, _))) = (levels(a), levels(b)) {
        if h <= l {
            return Some(format!("ℶ-levels: {a} ≤ ℶ{} ≤ {b}", idx(h)));
        }
    }
    if *a == CardinalExpr::aleph0() && is_infinite(b) == Some(true) {
        return Some("ℵ0 is the least infinite cardinal".into());
    }
    match (a, b) {
        (Aleph(i), Aleph(j)) if i <= j => return Some("index order".into()),
        (Aleph(Index::Finite(n)), _) if *n > 0 && lt_raw(&CardinalExpr::aleph(n - 1), b, d).is_some() => {
            return Some(format!("successor: ℵ{} < {b}", n - 1));
        }
        _ => {}
    }
    if let Sum(xs) | Product(xs) = a {
        if is_infinite(b) == Some(true) && xs.iter().all(|x| le_raw(x, b, d).is_some()) {
            return Some("every term is at most the bound".into());
        }
    }
    match b {
        Sum(ys) => {
            if ys.iter().any(|y| le_raw(a, y, d).is_some()) {
                return Some("monotonicity of +".into());
            }
        }
        Product(ys) if product_nonzero(ys) && ys.iter().any(|y| le_raw(a, y, d).is_some()) => {
            return Some("monotonicity of ·".into());
        }
        _ => {}
    }
    if let Power(k2, m2) = b {
        if is_nonzero(m2) && is_nonzero(k2) && le_raw(a, k2, d).is_some() {
            return Some("κ ≤ κ^μ".into());
        }
        if let Power(k, m) = a {
            if !is_zero(m) && le_raw(k, k2, d).is_some() && le_raw(m, m2, d).is_some() {
                return Some("monotonicity of ^".into());
            }
            // k^m ≤ (2^m)^m = 2^m ≤ 2^m2.
            if at_least_two(k2)
                && is_infinite(m) == Some(true)
                && le_raw(k, &CardinalExpr::pow(CardinalExpr::finite(2), (**m).clone()), d).is_some()
                && le_raw(m, m2, d).is_some()
            {
                return Some("κ^μ ≤ 2^μ when κ ≤ 2^μ".into());
            }
        }
    }
    None
}

pub fn prove_lt(a: &CardinalExpr, b: &CardinalExpr) -> Option<String> {
    let (a, _) = normalize_traced(a);
    let (b, _) = normalize_traced(b);
    lt_raw(&a, &b, PROOF_DEPTH)
}

pub fn prove_le(a: &CardinalExpr, b: &CardinalExpr) -> Option<String> {
    let (a, _) = normalize_traced(a);
    let (b, _) = normalize_traced(b);
    le_raw(&a, &b, PROOF_DEPTH)
}

/// Verdicts for `a < b`, `a = b`, `a ≤ b` with the reasoning used.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Comparison {
    pub lt: TriBool,
    pub eq: TriBool,
    pub le: TriBool,
    pub trace: Vec<String>,
}

pub fn compare(a: &CardinalExpr, b: &CardinalExpr) -> Comparison {
    let (na, ta) = normalize_traced(a);
    let (nb, tb) = normalize_traced(b);
    let mut trace: Vec<String> = ta.iter().chain(&tb).map(|s| s.to_string()).collect();
    trace.push(format!("normal forms: {na} and {nb}"));
    let ab_lt = lt_raw(&na, &nb, PROOF_DEPTH);
    let ba_lt = lt_raw(&nb, &na, PROOF_DEPTH);
    let ab_le = le_raw(&na, &nb, PROOF_DEPTH);
    let ba_le = le_raw(&nb, &na, PROOF_DEPTH);
    for (label, proof) in [
        ("a < b", &ab_lt),
        ("b < a", &ba_lt),
        ("a ≤ b", &ab_le),
        ("b ≤ a", &ba_le),
    ] {
        if let Some(p) = proof {
            trace.push(format!("{label} by {p}"));
        }
    }
    let tri = |yes: bool, no: bool| {
        debug_assert!(!(yes && no), "contradictory derivations");
        if yes {
            TriBool::True
        } else if no {
            TriBool::False
        } else {
            TriBool::Unknown
        }
    };
    Comparison {
        lt: tri(ab_lt.is_some(), ba_le.is_some()),
        eq: tri(
            na == nb || (ab_le.is_some() && ba_le.is_some()),
            ab_lt.is_some() || ba_lt.is_some(),
        ),
        le: tri(ab_le.is_some(), ba_lt.is_some()),
        trace,
    }
}

/// `cf(e)` when determined, `None` for unknown.
pub fn cofinality(e: &CardinalExpr) -> Option<CardinalExpr> {
    known_cofinality(&normalize_traced(e).0)
}

/// Verdict on `λ^ℵ0 = λ` with a short reason and the rule trace.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Stability {
    pub verdict: TriBool,
    pub reason: String,
    pub trace: Vec<String>,
}

impl Stability {
    /// `true`, `false (König)`, `unknown (CH)` and the like.
    pub fn summary(&self) -> String {
        let tag = if self.reason.starts_with("König") {
            Some("König")
        } else if self.reason.starts_with("Cantor") {
            Some("Cantor")
        } else if self.reason.contains("continuum hypothesis") {
            Some("CH")
        } else {
            None
        };
        match tag {
            Some(t) if self.verdict != TriBool::True => format!("{} ({t})", self.verdict),
            _ => self.verdict.to_string(),
        }
    }
}

pub fn stability_predicate(lambda: &CardinalExpr) -> Result<Stability> {
    let (l, mut steps) = normalize_traced(lambda);
    if is_infinite(&l) != Some(true) {
        return Err(Error::FiniteCardinal(lambda.to_string()));
    }
    let (p, psteps) = normalize_traced(&CardinalExpr::pow(l.clone(), CardinalExpr::aleph0()));
    steps.extend(psteps);
    let mut trace: Vec<String> = steps.iter().map(|s| s.to_string()).collect();
    trace.push(format!("{l}^ℵ0 normalizes to {p}"));
    let (verdict, reason) = if p == l {
        (TriBool::True, format!("{l}^ℵ0 = {l} by the rewrite rules"))
    } else if let Some(proof) = lt_raw(&l, &p, PROOF_DEPTH) {
        (TriBool::False, proof)
    } else {
        let mut reason = format!("no rule decides {p} = {l}");
        if l == CardinalExpr::aleph(1) && p == CardinalExpr::pow(CardinalExpr::finite(2), CardinalExpr::aleph0()) {
            reason.push_str("; this is the continuum hypothesis, independent of ZFC");
        }
        (TriBool::Unknown, reason)
    };
    trace.push(reason.clone());
    Ok(Stability {
        verdict,
        reason,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> CardinalExpr {
        CardinalExpr::parse(s).unwrap()
    }

    #[test]
    fn compare_examples() {
        let k = compare(&c("beth(ω)"), &c("beth(ω)^aleph0"));
        assert_eq!(k.lt, TriBool::True);
        assert_eq!(compare(&c("aleph1"), &c("2^aleph0")).eq, TriBool::Unknown);
        assert_eq!(compare(&c("aleph1"), &c("2^aleph0")).le, TriBool::True);
        assert_eq!(compare(&c("aleph0"), &c("2^aleph0")).lt, TriBool::True);
        assert_eq!(compare(&c("2^aleph0"), &c("aleph0")).le, TriBool::False);
    }

    #[test]
    fn stability_examples() {
        let s = stability_predicate(&c("beth(ω)")).unwrap();
        assert_eq!(s.verdict, TriBool::False);
        assert_eq!(s.summary(), "false (König)");
        assert_eq!(stability_predicate(&c("2^aleph0")).unwrap().verdict, TriBool::True);
        let a1 = stability_predicate(&c("aleph1")).unwrap();
        assert_eq!(a1.verdict, TriBool::Unknown);
        assert_eq!(a1.summary(), "unknown (CH)");
        assert!(matches!(stability_predicate(&c("5")), Err(Error::FiniteCardinal(_))));
    }

    #[test]
    fn cofinality_examples() {
        assert_eq!(cofinality(&c("beth(ω)")), Some(CardinalExpr::aleph0()));
        assert_eq!(cofinality(&c("aleph1")), Some(CardinalExpr::aleph(1)));
        assert_eq!(cofinality(&c("2^aleph0")), None);
    }
}

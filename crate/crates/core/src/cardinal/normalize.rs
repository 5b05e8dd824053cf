//! Rewrite rules and normalization strategies.
//!
//! Rules (each a one-step rewrite at a single node):
//! `ℶ0 → ℵ0`, `ℶ(n+1) → 2^ℶn`; finite arithmetic; additive and
//! multiplicative identities and zero; flattening, sorting and
//! deduplication of sums and products of infinite terms; dropping
//! summands/factors provably dominated by another; `(κ^μ)^ν → κ^(μ·ν)`;
//! `κ^n → κ` for infinite `κ` and finite `n ≥ 1`; and the squeeze
//! `2 ≤ κ ≤ 2^μ, μ infinite ⟹ κ^μ → 2^μ`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use super::compare::{le_raw, PROOF_DEPTH};
use super::{CardinalExpr, Index};

/// One applied rule, with the rewritten subterm before and after.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RewriteStep {
    pub rule: &'static str,
    pub before: String,
    pub after: String,
}

impl std::fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {} → {}", self.rule, self.before, self.after)
    }
}

/// `Some(true)` when provably infinite, `Some(false)` when provably finite.
pub fn is_infinite(e: &CardinalExpr) -> Option<bool> {
    use CardinalExpr::*;
    match e {
        Finite(_) => Some(false),
        Aleph(_) | Beth(_) | Var(_) => Some(true),
        Sum(xs) => {
            let flags: Vec<Option<bool>> = xs.iter().map(is_infinite).collect();
            if flags.contains(&Some(true)) {
                Some(true)
            } else if flags.iter().all(|f| *f == Some(false)) {
                Some(false)
            } else {
                None
            }
        }
        Product(xs) => {
            if xs.iter().any(is_zero) {
                return Some(false);
            }
            let flags: Vec<Option<bool>> = xs.iter().map(is_infinite).collect();
            if flags.iter().all(|f| *f == Some(false)) {
                Some(false)
            } else if flags.contains(&Some(true)) && xs.iter().all(is_nonzero) {
                Some(true)
            } else {
                None
            }
        }
        Power(a, b) => {
            if is_zero(b) || is_one(a) || (is_zero(a) && is_nonzero(b)) {
                return Some(false);
            }
            match (is_infinite(a), is_infinite(b)) {
                (Some(false), Some(false)) => Some(false),
                (Some(true), _) if is_nonzero(b) => Some(true),
                (_, Some(true)) if at_least_two(a) => Some(true),
                _ => None,
            }
        }
    }
}

pub(super) fn is_zero(e: &CardinalExpr) -> bool {
    matches!(e, CardinalExpr::Finite(n) if n.is_zero())
}

fn is_one(e: &CardinalExpr) -> bool {
    matches!(e, CardinalExpr::Finite(n) if n.is_one())
}

pub(super) fn is_nonzero(e: &CardinalExpr) -> bool {
    match e {
        CardinalExpr::Finite(n) => !n.is_zero(),
        _ => is_infinite(e) == Some(true),
    }
}

pub(super) fn at_least_two(e: &CardinalExpr) -> bool {
    match e {
        CardinalExpr::Finite(n) => *n >= BigUint::from(2u32),
        _ => is_infinite(e) == Some(true),
    }
}

const MAX_FINITE_BITS: u64 = 1 << 14;

fn finite_pow(a: &BigUint, b: &BigUint) -> Option<BigUint> {
    let e = b.to_u64()?;
    if a.bits().saturating_mul(e) > MAX_FINITE_BITS {
        return None;
    }
    Some(num_traits::pow(a.clone(), e as usize))
}

fn two() -> CardinalExpr {
    CardinalExpr::finite(2)
}

/// Drops a term when another term provably dominates it; among provably
/// equal terms the one with the smaller ASCII form survives.
fn dominated(xs: &[CardinalExpr]) -> Option<usize> {
    for i in 0..xs.len() {
        if is_infinite(&xs[i]) != Some(true) {
            continue;
        }
        for j in 0..xs.len() {
            if i == j || is_infinite(&xs[j]) != Some(true) {
                continue;
            }
            if le_raw(&xs[i], &xs[j], PROOF_DEPTH).is_some() {
                let back = le_raw(&xs[j], &xs[i], PROOF_DEPTH).is_some();
                if !back || xs[i].ascii() > xs[j].ascii() {
                    return Some(i);
                }
            }
        }
    }
    None
}

fn sorted(xs: &[CardinalExpr]) -> bool {
    xs.windows(2).all(|w| w[0].ascii() <= w[1].ascii())
}

/// Common rules for sums (`additive`) and products.
fn rewrite_assoc(xs: &[CardinalExpr], additive: bool) -> Option<(CardinalExpr, &'static str)> {
    use CardinalExpr::*;
    let wrap = |v: Vec<CardinalExpr>| if additive { Sum(v) } else { Product(v) };
    let same_kind = |x: &CardinalExpr| {
        if additive {
            matches!(x, Sum(_))
        } else {
            matches!(x, Product(_))
        }
    };
    if xs.iter().any(same_kind) {
        let flat = xs
            .iter()
            .flat_map(|x| match x {
                Sum(ys) | Product(ys) if same_kind(x) => ys.clone(),
                other => vec![other.clone()],
            })
            .collect();
        return Some((wrap(flat), "associativity"));
    }
    match xs.len() {
        0 => return Some((CardinalExpr::finite(if additive { 0 } else { 1 }), "empty operation")),
        1 => return Some((xs[0].clone(), "singleton")),
        _ => {}
    }
    if !additive && xs.iter().any(is_zero) {
        return Some((CardinalExpr::finite(0), "zero factor"));
    }
    let identity = |x: &CardinalExpr| if additive { is_zero(x) } else { is_one(x) };
    if xs.iter().any(identity) {
        let rest = xs.iter().filter(|x| !identity(x)).cloned().collect();
        return Some((wrap(rest), "identity element"));
    }
    let finite: Vec<usize> = (0..xs.len()).filter(|&i| xs[i].as_finite().is_some()).collect();
    if finite.len() >= 2 {
        let mut acc = BigUint::from(if additive { 0u32 } else { 1u32 });
        for &i in &finite {
            let v = xs[i].as_finite().unwrap();
            acc = if additive { acc + v } else { acc * v };
        }
        let mut rest: Vec<CardinalExpr> = (0..xs.len())
            .filter(|i| !finite.contains(i))
            .map(|i| xs[i].clone())
            .collect();
        rest.push(Finite(acc));
        return Some((wrap(rest), "finite arithmetic"));
    }
    if finite.len() == 1 && xs.iter().any(|x| is_infinite(x) == Some(true)) {
        let rest = xs.iter().filter(|x| x.as_finite().is_none()).cloned().collect();
        return Some((wrap(rest), "absorption of finite term"));
    }
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if xs[i] == xs[j] && is_infinite(&xs[i]) == Some(true) {
                let mut rest = xs.to_vec();
                rest.remove(j);
                return Some((wrap(rest), "idempotence κ+κ = κ·κ = κ"));
            }
        }
    }
    if let Some(i) = dominated(xs) {
        let mut rest = xs.to_vec();
        rest.remove(i);
        return Some((wrap(rest), "dominated term"));
    }
    if !sorted(xs) {
        let mut v = xs.to_vec();
        v.sort_by_key(|x| x.ascii());
        return Some((wrap(v), "canonical order"));
    }
    None
}

/// A single rewrite at the root of `e`, if any rule applies.
pub(super) fn rewrite_root(e: &CardinalExpr) -> Option<(CardinalExpr, &'static str)> {
    use CardinalExpr::*;
    match e {
        Beth(Index::Finite(0)) => Some((Aleph(Index::Finite(0)), "ℶ0 = ℵ0")),
        Beth(Index::Finite(n)) => Some((
            CardinalExpr::pow(two(), Beth(Index::Finite(n - 1))),
            "ℶ recursion",
        )),
        Sum(xs) => rewrite_assoc(xs, true),
        Product(xs) => rewrite_assoc(xs, false),
        Power(a, b) => {
            if is_zero(b) {
                return Some((CardinalExpr::finite(1), "κ^0 = 1"));
            }
            if is_one(b) {
                return Some(((**a).clone(), "κ^1 = κ"));
            }
            if is_one(a) {
                return Some((CardinalExpr::finite(1), "1^μ = 1"));
            }
            if is_zero(a) && is_nonzero(b) {
                return Some((CardinalExpr::finite(0), "0^μ = 0"));
            }
            if let (Finite(x), Finite(y)) = (&**a, &**b) {
                return finite_pow(x, y).map(|v| (Finite(v), "finite arithmetic"));
            }
            if let Power(k, m) = &**a {
                return Some((
                    CardinalExpr::pow((**k).clone(), Product(vec![(**m).clone(), (**b).clone()])),
                    "exponent law (κ^μ)^ν = κ^(μ·ν)",
                ));
            }
            if is_infinite(a) == Some(true) && is_infinite(b) == Some(false) && is_nonzero(b) {
                return Some(((**a).clone(), "κ^n = κ for infinite κ"));
            }
            if is_infinite(b) == Some(true)
                && **a != two()
                && at_least_two(a)
                && le_raw(a, &CardinalExpr::pow(two(), (**b).clone()), PROOF_DEPTH).is_some()
            {
                return Some((
                    CardinalExpr::pow(two(), (**b).clone()),
                    "squeeze 2 ≤ κ ≤ 2^μ ⟹ κ^μ = 2^μ",
                ));
            }
            None
        }
        Finite(_) | Aleph(_) | Beth(Index::Omega) | Var(_) => None,
    }
}

fn children(e: &CardinalExpr) -> Vec<&CardinalExpr> {
    match e {
        CardinalExpr::Sum(xs) | CardinalExpr::Product(xs) => xs.iter().collect(),
        CardinalExpr::Power(a, b) => vec![a, b],
        _ => vec![],
    }
}

fn child_mut(e: &mut CardinalExpr, i: usize) -> &mut CardinalExpr {
    match e {
        CardinalExpr::Sum(xs) | CardinalExpr::Product(xs) => &mut xs[i],
        CardinalExpr::Power(a, b) => {
            if i == 0 {
                a
            } else {
                b
            }
        }
        _ => unreachable!("atoms have no children"),
    }
}

fn at_path<'a>(e: &'a mut CardinalExpr, path: &[usize]) -> &'a mut CardinalExpr {
    path.iter().fold(e, |node, &i| child_mut(node, i))
}

/// Every position with an applicable rule, children before parents.
fn redexes(e: &CardinalExpr, path: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, CardinalExpr, &'static str)>) {
    for (i, c) in children(e).into_iter().enumerate() {
        path.push(i);
        redexes(c, path, out);
        path.pop();
    }
    if let Some((new, rule)) = rewrite_root(e) {
        out.push((path.clone(), new, rule));
    }
}

/// First redex in post-order, or `None` at a normal form.
fn first_redex(e: &CardinalExpr, path: &mut Vec<usize>) -> Option<(Vec<usize>, CardinalExpr, &'static str)> {
    for (i, c) in children(e).into_iter().enumerate() {
        path.push(i);
        if let Some(r) = first_redex(c, path) {
            return Some(r);
        }
        path.pop();
    }
    rewrite_root(e).map(|(new, rule)| (path.clone(), new, rule))
}

const MAX_STEPS: usize = 100_000;

fn apply(e: &mut CardinalExpr, path: &[usize], new: CardinalExpr, rule: &'static str, trace: &mut Vec<RewriteStep>) {
    let slot = at_path(e, path);
    trace.push(RewriteStep {
        rule,
        before: slot.unicode(),
        after: new.unicode(),
    });
    *slot = new;
}

/// Innermost-leftmost normalization with the list of rules applied.
pub fn normalize_traced(e: &CardinalExpr) -> (CardinalExpr, Vec<RewriteStep>) {
    let mut cur = e.clone();
    let mut trace = Vec::new();
    for _ in 0..MAX_STEPS {
        match first_redex(&cur, &mut Vec::new()) {
            Some((path, new, rule)) => apply(&mut cur, &path, new, rule, &mut trace),
            None => break,
        }
    }
    (cur, trace)
}

pub fn normalize(e: &CardinalExpr) -> CardinalExpr {
    normalize_traced(e).0
}

/// Normalization that picks a uniformly random redex at every step. Equal
/// results across strategies witness confluence on the given input.
pub fn normalize_randomized<R: Rng>(e: &CardinalExpr, rng: &mut R) -> CardinalExpr {
    let mut cur = e.clone();
    let mut trace = Vec::new();
    for _ in 0..MAX_STEPS {
        let mut all = Vec::new();
        redexes(&cur, &mut Vec::new(), &mut all);
        if all.is_empty() {
            break;
        }
        let (path, new, rule) = all.swap_remove(rng.gen_range(0..all.len()));
        apply(&mut cur, &path, new, rule, &mut trace);
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> String {
        normalize(&CardinalExpr::parse(s).unwrap()).unicode()
    }

    #[test]
    fn examples() {
        assert_eq!(n("(2^aleph0)^aleph0"), "2^ℵ0");
        assert_eq!(n("aleph0 + aleph0"), "ℵ0");
        assert_eq!(n("3^aleph0"), "2^ℵ0");
        assert_eq!(n("beth2"), "2^(2^ℵ0)");
        assert_eq!(n("aleph1^aleph0"), "2^ℵ0");
        assert_eq!(n("beth(ω)^aleph0"), "ℶω^ℵ0");
        assert_eq!(n("lambda * aleph0 + 7"), "λ");
        assert_eq!(n("2^3 + 4*5"), "28");
        assert_eq!(n("aleph2 + aleph1*aleph0"), "ℵ2");
        assert_eq!(n("(lambda^aleph0)^aleph0"), "λ^ℵ0");
        assert_eq!(n("aleph0^5"), "ℵ0");
        assert_eq!(n("0^lambda + 1^lambda"), "1");
    }

    #[test]
    fn idempotent() {
        for s in ["beth3 * lambda + aleph(ω)", "(kappa + 2^lambda)^aleph1"] {
            let once = normalize(&CardinalExpr::parse(s).unwrap());
            assert_eq!(normalize(&once), once);
        }
    }
}

//! Descending chains `φ_0[M] ⊇ φ_1[M] ⊇ …` of pp-definable subgroups.

use num_bigint::BigInt;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::formula::PpFormula;
use crate::group::{CyclicSum, Element};
use crate::ppsolve::evaluate;
use crate::subgroup::Subgroup;

/// A chain of unary formulas given by a template in which every `{n}` is
/// replaced by the level, e.g. `"E y . x = 2^{n}*y"`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormulaChain {
    template: String,
    low_head: bool,
}

impl FormulaChain {
    pub fn new(template: &str) -> Result<FormulaChain> {
        let mut chain = FormulaChain {
            template: template.to_string(),
            low_head: false,
        };
        chain.low_head = chain.at(0)?.is_low()?;
        Ok(chain)
    }

    pub fn template(&self) -> &str {
        &self.template
    }

    /// Whether `φ_0` is low.
    pub fn low_head(&self) -> bool {
        self.low_head
    }

    pub fn at(&self, n: u64) -> Result<PpFormula> {
        let f = PpFormula::parse(&self.template.replace("{n}", &n.to_string()))?;
        if f.arity() != 1 {
            return Err(Error::Arity(f.arity()));
        }
        Ok(f)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainEvaluation {
    pub levels: Vec<Subgroup>,
    /// First `n` with `φ_{n+1}[M] ⊄ φ_n[M]`.
    pub first_non_descent: Option<usize>,
}

impl ChainEvaluation {
    pub fn is_descending(&self) -> bool {
        self.first_non_descent.is_none()
    }
}

pub fn evaluate_chain(c: &FormulaChain, m: &CyclicSum, n_max: u64) -> Result<ChainEvaluation> {
    let levels = (0..=n_max)
        .map(|n| Ok(evaluate(&c.at(n)?, m)))
        .collect::<Result<Vec<_>>>()?;
    let mut first_non_descent = None;
    for (i, w) in levels.windows(2).enumerate() {
        if !w[1].is_subgroup_of(&w[0])? {
            first_non_descent = Some(i);
            break;
        }
    }
    Ok(ChainEvaluation {
        levels,
        first_non_descent,
    })
}

/// Least `n0 < n_max` with `φ_{n0}[M] = … = φ_{n_max}[M]`; `None` when the
/// last two levels already differ, so stabilization is not observed.
pub fn stabilization_index(c: &FormulaChain, m: &CyclicSum, n_max: u64) -> Result<Option<u64>> {
    let levels = evaluate_chain(c, m, n_max)?.levels;
    let last = levels.len() - 1;
    let mut n0 = last;
    while n0 > 0 && levels[n0 - 1] == levels[last] {
        n0 -= 1;
    }
    Ok((n0 < last).then_some(n0 as u64))
}

/// `B = ⊕_{m ≤ M0} (Z/p^m)^k`, each summand's `k` copies adjacent.
pub fn truncated_b(p: u64, m0: u32, k: usize) -> CyclicSum {
    let moduli = (1..=m0)
        .flat_map(|m| std::iter::repeat_n(BigInt::from(p).pow(m), k))
        .collect();
    CyclicSum::new(moduli)
}

/// `φ_n(x) := p·x = 0 ∧ ∃y. x = p^n·y` together with the truncation of `B`.
pub fn witness_chain(p: u64, m0: u32, k: usize) -> Result<(FormulaChain, CyclicSum)> {
    if !crate::arith::is_prime_u64(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let chain = FormulaChain::new(&format!("{p}*x = 0 & E y . x = {p}^{{n}}*y"))?;
    Ok((chain, truncated_b(p, m0, k)))
}

/// Strict-descent witnesses in `B = ⊕_{m ≤ M0} Z/p^m`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WitnessElements {
    /// `a_n ∈ φ_n[B] \ φ_{n+1}[B]` for `n < M0`.
    pub a: Vec<Element>,
    /// `b_n = a_0 + … + a_{n-1}` for `n ≤ M0`.
    pub b: Vec<Element>,
}

pub fn witness_b_elements(p: u64, m0: u32) -> Result<WitnessElements> {
    let (chain, b_group) = witness_chain(p, m0, 1)?;
    let levels = evaluate_chain(&chain, &b_group, m0 as u64)?.levels;
    let pb = BigInt::from(p);
    let mut a = Vec::new();
    for n in 0..m0 as usize {
        // p^n times the generator of the Z/p^{n+1} summand.
        let mut v = vec![BigInt::from(0); b_group.ngens()];
        v[n] = pb.clone().pow(n as u32);
        let an = b_group.reduce(v);
        if !levels[n].contains(&an) || levels[n + 1].contains(&an) {
            return Err(Error::Membership(format!("a_{n} = {an} does not witness strict descent")));
        }
        a.push(an);
    }
    let mut b = vec![b_group.zero()];
    for an in &a {
        let next = b_group.add(b.last().unwrap(), an);
        b.push(next);
    }
    Ok(WitnessElements { a, b })
}

/// `[φ_n[B] : φ_{n+1}[B]]` for consecutive levels.
pub fn consecutive_indices(levels: &[Subgroup]) -> Result<Vec<Option<BigInt>>> {
    levels
        .windows(2)
        .map(|w| w[1].index_in(&w[0]))
        .collect()
}

/// The closed form `p^k` of the consecutive index below `M0`.
pub fn expected_index(p: u64, k: usize) -> BigInt {
    let mut x = BigInt::one();
    for _ in 0..k {
        x *= p;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::big;

    fn orders(levels: &[Subgroup]) -> Vec<BigInt> {
        levels.iter().map(|h| h.order().unwrap()).collect()
    }

    #[test]
    fn power_chain_on_z8() {
        let c = FormulaChain::new("E y . x = 2^{n}*y").unwrap();
        assert!(!c.low_head());
        let z8 = CyclicSum::cyclic(8);
        let ev = evaluate_chain(&c, &z8, 4).unwrap();
        assert!(ev.is_descending());
        assert_eq!(orders(&ev.levels), [8, 4, 2, 1, 1].map(big));
        assert_eq!(stabilization_index(&c, &z8, 4).unwrap(), Some(3));
        assert_eq!(stabilization_index(&c, &z8, 3).unwrap(), None);
    }

    #[test]
    fn trivial_cases() {
        let c = FormulaChain::new("x = 0").unwrap();
        assert!(c.low_head());
        let m = CyclicSum::cyclic(6);
        assert!(evaluate_chain(&c, &m, 3).unwrap().levels.iter().all(|h| h.is_trivial()));
        let zero = CyclicSum::trivial();
        let d = FormulaChain::new("E y . x = 3^{n}*y").unwrap();
        assert_eq!(stabilization_index(&d, &zero, 2).unwrap(), Some(0));
    }

    #[test]
    fn non_descending_is_flagged() {
        let c = FormulaChain::new("{n}*x = 0").unwrap();
        let ev = evaluate_chain(&c, &CyclicSum::cyclic(4), 3).unwrap();
        assert_eq!(ev.first_non_descent, Some(1));
    }

    #[test]
    fn witness_chain_small() {
        let (c, b) = witness_chain(2, 3, 1).unwrap();
        assert!(c.low_head());
        let ev = evaluate_chain(&c, &b, 4).unwrap();
        assert_eq!(orders(&ev.levels), [8, 4, 2, 1, 1].map(big));
        let (c, b) = witness_chain(2, 8, 2).unwrap();
        let ev = evaluate_chain(&c, &b, 9).unwrap();
        let idx = consecutive_indices(&ev.levels).unwrap();
        assert!(idx[..8].iter().all(|i| *i == Some(big(4))));
        assert_eq!(stabilization_index(&c, &b, 9).unwrap(), Some(8));
    }

    #[test]
    fn witness_elements() {
        let w = witness_b_elements(2, 3).unwrap();
        assert_eq!(w.a[0].to_string(), "(1,0,0)");
        assert_eq!(w.a[1].to_string(), "(0,2,0)");
        assert!(w.b[0].is_zero());
        assert_eq!(w.b[2].to_string(), "(1,2,0)");
    }
}

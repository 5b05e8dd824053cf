//! Ulm-style invariants `α_{p,n} = dim_{F_p}((p^{n-1}G)[p] / (p^nG)[p])`
//! and `γ_p = dim_{F_p}(D(G)[p])`, and reconstruction from them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Pow, ToPrimitive, Zero};

use crate::arith::{factorize, log_exact};
use crate::cardinal::CardinalExpr;
use crate::error::{Error, Result};
use crate::group::{CyclicSum, FgGroup};
use crate::subgroup::Subgroup;

/// Nonzero entries only; absent keys are zero.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UlmInvariants {
    pub alpha: BTreeMap<(u64, u32), CardinalExpr>,
    pub gamma: BTreeMap<u64, CardinalExpr>,
}

impl UlmInvariants {
    pub fn alpha(&self, p: u64, n: u32) -> CardinalExpr {
        self.alpha.get(&(p, n)).cloned().unwrap_or_else(|| CardinalExpr::finite(0))
    }

    pub fn set_alpha(&mut self, p: u64, n: u32, value: CardinalExpr) {
        if value == CardinalExpr::finite(0) {
            self.alpha.remove(&(p, n));
        } else {
            self.alpha.insert((p, n), value);
        }
    }

    /// Entrywise sum, the invariants of a direct sum.
    pub fn add(&self, other: &UlmInvariants) -> UlmInvariants {
        fn merge<K: Ord + Clone>(a: &BTreeMap<K, CardinalExpr>, b: &BTreeMap<K, CardinalExpr>) -> BTreeMap<K, CardinalExpr> {
            let mut out = a.clone();
            for (k, v) in b {
                let sum = match out.remove(k) {
                    Some(w) => crate::cardinal::normalize(&CardinalExpr::sum(vec![w, v.clone()])),
                    None => v.clone(),
                };
                out.insert(k.clone(), sum);
            }
            out
        }
        UlmInvariants {
            alpha: merge(&self.alpha, &other.alpha),
            gamma: merge(&self.gamma, &other.gamma),
        }
    }
}

impl fmt::Display for UlmInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.alpha.iter().map(|((p, n), v)| format!("α({p},{n}) = {v}")).collect();
        parts.extend(self.gamma.iter().map(|(p, v)| format!("γ({p}) = {v}")));
        if parts.is_empty() {
            f.write_str("all zero")
        } else {
            f.write_str(&parts.join(", "))
        }
    }
}

pub fn ulm_invariants(g: &FgGroup) -> Result<UlmInvariants> {
    if !g.is_finite() {
        return Err(Error::Infinite(g.to_string()));
    }
    let m = g.cyclic_sum();
    let whole = Subgroup::whole(&m);
    let mut inv = UlmInvariants::default();
    for (p, e) in factorize(&g.exponent())? {
        let pb = BigInt::from(p);
        let socle_order = |k: u32| -> BigInt {
            whole
                .scale(&pb.clone().pow(k))
                .n_torsion(&pb)
                .order()
                .expect("finite group")
        };
        for n in 1..=e {
            let ratio = socle_order(n - 1) / socle_order(n);
            let dim = log_exact(&ratio, p).expect("socle quotient is a p-group");
            inv.set_alpha(p, n, CardinalExpr::finite(dim as u64));
        }
    }
    Ok(inv)
}

/// `⊕_{p,n} (Z/p^n)^{α_{p,n}}`.
pub fn reconstruct(inv: &UlmInvariants) -> Result<FgGroup> {
    if let Some((p, v)) = inv.gamma.iter().find(|(_, v)| !v.as_finite().is_some_and(|x| x.is_zero())) {
        return Err(Error::InfiniteMultiplicity(format!("γ({p}) = {v}")));
    }
    let mut orders = Vec::new();
    for ((p, n), v) in &inv.alpha {
        let count = v
            .as_finite()
            .and_then(BigUint::to_usize)
            .filter(|&c| c <= 1 << 16)
            .ok_or_else(|| Error::InfiniteMultiplicity(format!("α({p},{n}) = {v}")))?;
        orders.extend(std::iter::repeat_n(BigInt::from(*p).pow(*n), count));
    }
    Ok(CyclicSum::new(orders).canonical())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(s: &str) -> UlmInvariants {
        ulm_invariants(&FgGroup::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(inv("Z/4 + Z/2").to_string(), "α(2,1) = 1, α(2,2) = 1");
        assert_eq!(inv("Z/7").to_string(), "α(7,1) = 1");
        assert_eq!(inv("Z/6").to_string(), "α(2,1) = 1, α(3,1) = 1");
        assert_eq!(inv("0").to_string(), "all zero");
        assert!(matches!(ulm_invariants(&FgGroup::parse("Z").unwrap()), Err(Error::Infinite(_))));
    }

    #[test]
    fn reconstruction() {
        let mut i = UlmInvariants::default();
        i.set_alpha(3, 2, CardinalExpr::finite(2));
        assert!(reconstruct(&i).unwrap().is_isomorphic(&FgGroup::parse("Z/9 + Z/9").unwrap()));
        assert!(reconstruct(&UlmInvariants::default()).unwrap().is_isomorphic(&FgGroup::trivial()));
        let g = FgGroup::parse("Z/2 + Z/4").unwrap();
        assert!(reconstruct(&ulm_invariants(&g).unwrap()).unwrap().is_isomorphic(&g));
        i.set_alpha(2, 1, CardinalExpr::var("lambda"));
        assert!(matches!(reconstruct(&i), Err(Error::InfiniteMultiplicity(_))));
    }
}

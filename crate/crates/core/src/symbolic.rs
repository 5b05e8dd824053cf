//! Symbolic abelian groups built from cyclic, Prüfer, p-adic and rational
//! atoms with cardinal multiplicities, and the limit-model templates.

use std::fmt;

use crate::arith::is_prime_u64;
use crate::cardinal::{normalize, stability_predicate, CardinalExpr, TriBool};
use crate::error::{Error, Result};

/// A prime or exponent that is either fixed or the bound index of an
/// enclosing `Π_p`, `⊕_p` or `⊕_n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Slot<T> {
    Bound,
    Fixed(T),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum SymbolicGroup {
    /// `Z(p^n)^(mult)`
    Cyclic { p: Slot<u64>, n: Slot<u32>, mult: CardinalExpr },
    /// `Z(p^∞)^(mult)`
    Prufer { p: Slot<u64>, mult: CardinalExpr },
    /// `J_p^(mult)`, the p-adic integers
    PAdic { p: Slot<u64>, mult: CardinalExpr },
    /// `Q^(mult)`
    Rationals { mult: CardinalExpr },
    TorsionOf(Box<SymbolicGroup>),
    PEOf(Box<SymbolicGroup>),
    ProductOverPrimes(Box<SymbolicGroup>),
    SumOverPrimes(Box<SymbolicGroup>),
    SumOverN(Box<SymbolicGroup>),
    /// `G^(κ)`, a direct sum of `κ` copies
    DirectPower(Box<SymbolicGroup>, CardinalExpr),
    DirectSum(Vec<SymbolicGroup>),
}

fn is_zero(c: &CardinalExpr) -> bool {
    *c == CardinalExpr::finite(0)
}

impl SymbolicGroup {
    pub fn zero() -> SymbolicGroup {
        SymbolicGroup::DirectSum(Vec::new())
    }

    pub fn torsion_of(self) -> SymbolicGroup {
        SymbolicGroup::TorsionOf(Box::new(self))
    }

    pub fn pe_of(self) -> SymbolicGroup {
        SymbolicGroup::PEOf(Box::new(self))
    }

    pub fn product_over_primes(self) -> SymbolicGroup {
        SymbolicGroup::ProductOverPrimes(Box::new(self))
    }

    pub fn sum_over_primes(self) -> SymbolicGroup {
        SymbolicGroup::SumOverPrimes(Box::new(self))
    }

    pub fn sum_over_n(self) -> SymbolicGroup {
        SymbolicGroup::SumOverN(Box::new(self))
    }

    pub fn direct_power(self, k: CardinalExpr) -> SymbolicGroup {
        SymbolicGroup::DirectPower(Box::new(self), k)
    }

    pub fn is_zero(&self) -> bool {
        *self == SymbolicGroup::zero()
    }

    /// Canonical form: multiplicities normalized, zero atoms and empty
    /// sums dropped, sums flattened, `t` pushed through direct sums and
    /// applied to atoms (`t` of p-adic or rational atoms is `0`).
    pub fn normalized(&self) -> SymbolicGroup {
        use SymbolicGroup::*;
        let wrap = |inner: SymbolicGroup, f: fn(Box<SymbolicGroup>) -> SymbolicGroup| {
            if inner.is_zero() {
                inner
            } else {
                f(Box::new(inner))
            }
        };
        match self {
            Cyclic { p, n, mult } => {
                let mult = normalize(mult);
                if is_zero(&mult) {
                    return SymbolicGroup::zero();
                }
                Cyclic { p: *p, n: *n, mult }
            }
            Prufer { p, mult } => {
                let mult = normalize(mult);
                if is_zero(&mult) {
                    return SymbolicGroup::zero();
                }
                Prufer { p: *p, mult }
            }
            PAdic { p, mult } => {
                let mult = normalize(mult);
                if is_zero(&mult) {
                    return SymbolicGroup::zero();
                }
                PAdic { p: *p, mult }
            }
            Rationals { mult } => {
                let mult = normalize(mult);
                if is_zero(&mult) {
                    return SymbolicGroup::zero();
                }
                Rationals { mult }
            }
            TorsionOf(x) => match x.normalized() {
                DirectSum(xs) => DirectSum(xs.into_iter().map(|y| y.torsion_of()).collect()).normalized(),
                c @ (Cyclic { .. } | Prufer { .. }) => c,
                PAdic { .. } | Rationals { .. } => SymbolicGroup::zero(),
                t @ TorsionOf(_) => t,
                other => other.torsion_of(),
            },
            PEOf(x) => wrap(x.normalized(), PEOf),
            ProductOverPrimes(x) => wrap(x.normalized(), ProductOverPrimes),
            SumOverPrimes(x) => wrap(x.normalized(), SumOverPrimes),
            SumOverN(x) => wrap(x.normalized(), SumOverN),
            DirectPower(x, k) => {
                let k = normalize(k);
                let inner = x.normalized();
                if is_zero(&k) || inner.is_zero() {
                    SymbolicGroup::zero()
                } else if k == CardinalExpr::finite(1) {
                    inner
                } else {
                    DirectPower(Box::new(inner), k)
                }
            }
            DirectSum(xs) => {
                let mut flat = Vec::new();
                for x in xs {
                    match x.normalized() {
                        DirectSum(ys) => flat.extend(ys),
                        y => flat.push(y),
                    }
                }
                if flat.len() == 1 {
                    flat.pop().unwrap()
                } else {
                    DirectSum(flat)
                }
            }
        }
    }

    pub fn unicode(&self) -> String {
        render(self, true)
    }

    pub fn ascii(&self) -> String {
        render(self, false)
    }
}

fn prime_str(p: Slot<u64>) -> String {
    match p {
        Slot::Bound => "p".into(),
        Slot::Fixed(q) => q.to_string(),
    }
}

fn mult_str(m: &CardinalExpr, unicode: bool) -> String {
    if *m == CardinalExpr::finite(1) {
        String::new()
    } else if unicode {
        format!("^({})", m.unicode())
    } else {
        format!("^({})", m.ascii())
    }
}

fn render(g: &SymbolicGroup, unicode: bool) -> String {
    use SymbolicGroup::*;
    let r = |x: &SymbolicGroup| render(x, unicode);
    let op = |u: &str, a: &str, x: &SymbolicGroup| {
        if unicode {
            format!("{u} {}", r(x))
        } else {
            format!("{a}({})", r(x))
        }
    };
    match g {
        Cyclic { p, n, mult } => {
            let n = match n {
                Slot::Bound => "n".to_string(),
                Slot::Fixed(k) => k.to_string(),
            };
            format!("Z({}^{n}){}", prime_str(*p), mult_str(mult, unicode))
        }
        Prufer { p, mult } => format!(
            "Z({}^{}){}",
            prime_str(*p),
            if unicode { "∞" } else { "inf" },
            mult_str(mult, unicode)
        ),
        PAdic { p, mult } => format!("J({}){}", prime_str(*p), mult_str(mult, unicode)),
        Rationals { mult } => format!("Q{}", mult_str(mult, unicode)),
        TorsionOf(x) => format!("t({})", r(x)),
        PEOf(x) => format!("PE({})", r(x)),
        ProductOverPrimes(x) => op("Π_p", "Prod_p", x),
        SumOverPrimes(x) => op("⊕_p", "Sum_p", x),
        SumOverN(x) => op("⊕_n", "Sum_n", x),
        DirectPower(x, k) => {
            let inner = r(x);
            let inner = match **x {
                TorsionOf(_) | PEOf(_) => inner,
                _ if !unicode && matches!(**x, ProductOverPrimes(_) | SumOverPrimes(_) | SumOverN(_)) => inner,
                _ => format!("({inner})"),
            };
            format!("{inner}{}", mult_str(k, unicode))
        }
        DirectSum(xs) if xs.is_empty() => "0".into(),
        DirectSum(xs) => xs
            .iter()
            .map(|x| match x {
                DirectSum(_) => format!("({})", r(x)),
                _ => r(x),
            })
            .collect::<Vec<_>>()
            .join(if unicode { " ⊕ " } else { " + " }),
    }
}

impl fmt::Display for SymbolicGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.unicode())
    }
}

/// Cofinality class of the length of the chain defining the limit model.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CofinalityClass {
    /// `cf = ω`
    Countable,
    /// `cf ≥ ω1`
    Uncountable,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Variant {
    /// Torsion groups with pure embeddings.
    Torsion,
    /// Abelian p-groups with pure embeddings.
    PGroup(u64),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LimitModel {
    pub group: SymbolicGroup,
    /// Set when stability of `λ` could not be decided.
    pub warning: Option<String>,
}

/// The limit model of the given class at `λ`: `t(Π_p PE(⊕_n Z(p^n)^(λ)))
/// ⊕ ⊕_p Z(p^∞)^(λ)`, its p-group analogue, and for countable
/// cofinality the first summand raised to `^(ℵ0)`.
pub fn limit_model_template(lambda: &CardinalExpr, cof: CofinalityClass, variant: Variant) -> Result<LimitModel> {
    let stability = stability_predicate(lambda)?;
    let warning = match stability.verdict {
        TriBool::False => {
            return Err(Error::Unstable {
                cardinal: lambda.to_string(),
                reason: stability.reason,
            })
        }
        TriBool::Unknown => Some(format!(
            "stability of {lambda} is undecided ({}); limit models exist only if {lambda}^ℵ0 = {lambda}",
            stability.reason
        )),
        TriBool::True => None,
    };
    let lambda = normalize(lambda);
    let p = match variant {
        Variant::Torsion => Slot::Bound,
        Variant::PGroup(q) if is_prime_u64(q) => Slot::Fixed(q),
        Variant::PGroup(q) => return Err(Error::NotPrime(q.to_string())),
    };
    let homogeneous = SymbolicGroup::Cyclic {
        p,
        n: Slot::Bound,
        mult: lambda.clone(),
    }
    .sum_over_n()
    .pe_of();
    let prufer = SymbolicGroup::Prufer { p, mult: lambda };
    let (reduced, divisible) = match variant {
        Variant::Torsion => (homogeneous.product_over_primes().torsion_of(), prufer.sum_over_primes()),
        Variant::PGroup(_) => (homogeneous.torsion_of(), prufer),
    };
    let reduced = match cof {
        CofinalityClass::Uncountable => reduced,
        CofinalityClass::Countable => reduced.direct_power(CardinalExpr::aleph0()),
    };
    Ok(LimitModel {
        group: SymbolicGroup::DirectSum(vec![reduced, divisible]),
        warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lm(cof: CofinalityClass, v: Variant) -> LimitModel {
        limit_model_template(&CardinalExpr::var("lambda"), cof, v).unwrap()
    }

    #[test]
    fn templates() {
        use CofinalityClass::*;
        let a = lm(Uncountable, Variant::Torsion);
        assert_eq!(a.group.unicode(), "t(Π_p PE(⊕_n Z(p^n)^(λ))) ⊕ ⊕_p Z(p^∞)^(λ)");
        assert_eq!(
            a.group.ascii(),
            "t(Prod_p(PE(Sum_n(Z(p^n)^(lambda))))) + Sum_p(Z(p^inf)^(lambda))"
        );
        assert!(a.warning.is_some());
        assert_eq!(
            lm(Countable, Variant::Torsion).group.unicode(),
            "t(Π_p PE(⊕_n Z(p^n)^(λ)))^(ℵ0) ⊕ ⊕_p Z(p^∞)^(λ)"
        );
        assert_eq!(
            lm(Uncountable, Variant::PGroup(2)).group.unicode(),
            "t(PE(⊕_n Z(2^n)^(λ))) ⊕ Z(2^∞)^(λ)"
        );
    }

    #[test]
    fn stable_and_unstable() {
        let c = CardinalExpr::parse("2^aleph0").unwrap();
        let m = limit_model_template(&c, CofinalityClass::Uncountable, Variant::Torsion).unwrap();
        assert!(m.warning.is_none());
        assert!(m.group.unicode().contains("^(2^ℵ0)"));
        let b = CardinalExpr::parse("beth(ω)").unwrap();
        assert!(matches!(
            limit_model_template(&b, CofinalityClass::Uncountable, Variant::Torsion),
            Err(Error::Unstable { .. })
        ));
        assert!(limit_model_template(&c, CofinalityClass::Uncountable, Variant::PGroup(4)).is_err());
    }

    #[test]
    fn torsion_extraction() {
        let one = CardinalExpr::finite(1);
        let g = SymbolicGroup::DirectSum(vec![
            SymbolicGroup::Cyclic { p: Slot::Fixed(3), n: Slot::Fixed(2), mult: one.clone() },
            SymbolicGroup::PAdic { p: Slot::Fixed(3), mult: one.clone() },
            SymbolicGroup::Rationals { mult: CardinalExpr::aleph0() },
        ])
        .torsion_of();
        assert_eq!(g.normalized().unicode(), "Z(3^2)");
        let q = SymbolicGroup::Rationals { mult: one }.torsion_of();
        assert!(q.normalized().is_zero());
    }
}

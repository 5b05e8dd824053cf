//! Symbolic cardinal arithmetic with a conservative three-valued engine.
//!
//! Variables denote arbitrary infinite cardinals. Indices of `ℵ` and `ℶ`
//! are natural numbers or `ω`.

mod compare;
mod normalize;
mod parse;

use std::fmt;

use num_bigint::BigUint;

pub use compare::{cofinality, compare, prove_le, prove_lt, stability_predicate, Comparison, Stability};
pub use normalize::{is_infinite, normalize, normalize_randomized, normalize_traced, RewriteStep};

use crate::error::Result;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Index {
    Finite(u32),
    Omega,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum CardinalExpr {
    Finite(BigUint),
    Aleph(Index),
    Beth(Index),
    Var(String),
    Sum(Vec<CardinalExpr>),
    Product(Vec<CardinalExpr>),
    Power(Box<CardinalExpr>, Box<CardinalExpr>),
}

/// Answer of the decision engine: `Unknown` whenever no rule settles it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TriBool {
    True,
    False,
    Unknown,
}

impl TriBool {
    pub fn as_str(self) -> &'static str {
        match self {
            TriBool::True => "true",
            TriBool::False => "false",
            TriBool::Unknown => "unknown",
        }
    }
}

impl fmt::Display for TriBool {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl CardinalExpr {
    pub fn parse(text: &str) -> Result<CardinalExpr> {
        parse::parse_cardinal(text)
    }

    pub fn finite(n: u64) -> CardinalExpr {
        CardinalExpr::Finite(BigUint::from(n))
    }

    pub fn aleph0() -> CardinalExpr {
        CardinalExpr::Aleph(Index::Finite(0))
    }

    pub fn aleph(n: u32) -> CardinalExpr {
        CardinalExpr::Aleph(Index::Finite(n))
    }

    pub fn beth(i: Index) -> CardinalExpr {
        CardinalExpr::Beth(i)
    }

    pub fn var(name: &str) -> CardinalExpr {
        CardinalExpr::Var(name.to_string())
    }

    pub fn pow(base: CardinalExpr, exp: CardinalExpr) -> CardinalExpr {
        CardinalExpr::Power(Box::new(base), Box::new(exp))
    }

    pub fn sum(terms: Vec<CardinalExpr>) -> CardinalExpr {
        CardinalExpr::Sum(terms)
    }

    pub fn product(terms: Vec<CardinalExpr>) -> CardinalExpr {
        CardinalExpr::Product(terms)
    }

    pub fn as_finite(&self) -> Option<&BigUint> {
        match self {
            CardinalExpr::Finite(n) => Some(n),
            _ => None,
        }
    }

    /// Plain-ASCII rendering, also used as the canonical sort key.
    pub fn ascii(&self) -> String {
        render(self, false)
    }

    pub fn unicode(&self) -> String {
        render(self, true)
    }

    pub fn depth(&self) -> usize {
        match self {
            CardinalExpr::Sum(xs) | CardinalExpr::Product(xs) => {
                1 + xs.iter().map(|x| x.depth()).max().unwrap_or(0)
            }
            CardinalExpr::Power(a, b) => 1 + a.depth().max(b.depth()),
            _ => 0,
        }
    }
}

fn index_str(i: Index, unicode: bool) -> String {
    match (i, unicode) {
        (Index::Finite(n), _) => n.to_string(),
        (Index::Omega, true) => "ω".into(),
        (Index::Omega, false) => "(omega)".into(),
    }
}

fn var_str(name: &str, unicode: bool) -> String {
    if !unicode {
        return name.to_string();
    }
    match name {
        "lambda" => "λ",
        "kappa" => "κ",
        "mu" => "μ",
        "nu" => "ν",
        "theta" => "θ",
        other => other,
    }
    .to_string()
}

fn is_atom(e: &CardinalExpr) -> bool {
    !matches!(
        e,
        CardinalExpr::Sum(_) | CardinalExpr::Product(_) | CardinalExpr::Power(..)
    )
}

fn render(e: &CardinalExpr, unicode: bool) -> String {
    let wrap = |x: &CardinalExpr, ok: bool| {
        let s = render(x, unicode);
        if ok {
            s
        } else {
            format!("({s})")
        }
    };
    match e {
        CardinalExpr::Finite(n) => n.to_string(),
        CardinalExpr::Aleph(i) if unicode => format!("ℵ{}", index_str(*i, true)),
        CardinalExpr::Aleph(i) => format!("aleph{}", index_str(*i, false)),
        CardinalExpr::Beth(i) if unicode => format!("ℶ{}", index_str(*i, true)),
        CardinalExpr::Beth(i) => format!("beth{}", index_str(*i, false)),
        CardinalExpr::Var(v) => var_str(v, unicode),
        CardinalExpr::Sum(xs) => xs
            .iter()
            .map(|x| wrap(x, !matches!(x, CardinalExpr::Sum(_))))
            .collect::<Vec<_>>()
            .join(" + "),
        CardinalExpr::Product(xs) => xs
            .iter()
            .map(|x| wrap(x, !matches!(x, CardinalExpr::Sum(_) | CardinalExpr::Product(_))))
            .collect::<Vec<_>>()
            .join(if unicode { "·" } else { "*" }),
        CardinalExpr::Power(a, b) => format!("{}^{}", wrap(a, is_atom(a)), wrap(b, is_atom(b))),
    }
}

impl fmt::Display for CardinalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.unicode())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering() {
        let e = CardinalExpr::parse("(2^aleph0)^aleph1 + beth(ω)*lambda").unwrap();
        assert_eq!(e.unicode(), "(2^ℵ0)^ℵ1 + ℶω·λ");
        assert_eq!(e.ascii(), "(2^aleph0)^aleph1 + beth(omega)*lambda");
        assert_eq!(CardinalExpr::parse(&e.ascii()).unwrap(), e);
        assert_eq!(CardinalExpr::parse(&e.unicode()).unwrap(), e);
        let f = CardinalExpr::parse("2^2^aleph0").unwrap();
        assert_eq!(f.unicode(), "2^(2^ℵ0)");
    }
}

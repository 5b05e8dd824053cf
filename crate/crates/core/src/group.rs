//! Finitely generated abelian groups, in two guises.
//!
//! [`CyclicSum`] is a concrete coordinate system `Z/d_1 + ... + Z/d_k` with
//! the factors in any order (`d = 0` stands for `Z`); elements are coordinate
//! vectors over it. [`FgGroup`] is the isomorphism type in invariant-factor
//! form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{factorize, lcm};
use crate::error::{Error, Result};
use crate::matrix::{smith_normal_form, IntMatrix};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Element(Vec<BigInt>);

impl Element {
    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CyclicSum {
    moduli: Vec<BigInt>,
}

impl CyclicSum {
    /// Moduli of absolute value 1 are dropped; 0 means an infinite cyclic factor.
    pub fn new(moduli: Vec<BigInt>) -> Self {
        CyclicSum {
            moduli: moduli
                .into_iter()
                .map(|m| m.abs())
                .filter(|m| !m.is_one())
                .collect(),
        }
    }

    pub fn from_moduli(moduli: &[i64]) -> Self {
        Self::new(moduli.iter().map(|&m| BigInt::from(m)).collect())
    }

    pub fn trivial() -> Self {
        CyclicSum { moduli: Vec::new() }
    }

    pub fn cyclic(n: i64) -> Self {
        Self::from_moduli(&[n])
    }

    pub fn parse(text: &str) -> Result<Self> {
        GroupParser::new(text).parse()
    }

    pub fn moduli(&self) -> &[BigInt] {
        &self.moduli
    }

    /// Number of coordinates.
    pub fn ngens(&self) -> usize {
        self.moduli.len()
    }

    pub fn free_rank(&self) -> usize {
        self.moduli.iter().filter(|m| m.is_zero()).count()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.moduli.is_empty()
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.moduli.iter().product())
    }

    /// Exponent of the torsion part (1 for torsion-free groups).
    pub fn torsion_exponent(&self) -> BigInt {
        self.moduli
            .iter()
            .filter(|m| !m.is_zero())
            .fold(BigInt::one(), |acc, m| lcm(&acc, m))
    }

    pub fn direct_sum(&self, other: &CyclicSum) -> CyclicSum {
        let mut moduli = self.moduli.clone();
        moduli.extend(other.moduli.iter().cloned());
        CyclicSum { moduli }
    }

    /// `self^k`, laid out as k consecutive copies of the coordinates.
    pub fn power(&self, k: usize) -> CyclicSum {
        CyclicSum {
            moduli: (0..k).flat_map(|_| self.moduli.iter().cloned()).collect(),
        }
    }

    /// Row-lattice of relations `d_c e_c` for the torsion coordinates.
    pub fn relations(&self) -> IntMatrix {
        let n = self.ngens();
        let rows = self
            .moduli
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(c, m)| {
                let mut r = vec![BigInt::zero(); n];
                r[c] = m.clone();
                r
            })
            .collect();
        IntMatrix::from_rows(n, rows)
    }

    pub fn canonical(&self) -> FgGroup {
        FgGroup::from_presentation(&self.relations(), self.ngens())
    }

    pub fn is_isomorphic(&self, other: &CyclicSum) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn zero(&self) -> Element {
        Element(vec![BigInt::zero(); self.ngens()])
    }

    /// Unit vector of coordinate `c`.
    pub fn generator(&self, c: usize) -> Element {
        let mut v = vec![BigInt::zero(); self.ngens()];
        v[c] = BigInt::one();
        self.reduce(v)
    }

    pub fn reduce(&self, mut coords: Vec<BigInt>) -> Element {
        debug_assert_eq!(coords.len(), self.ngens());
        for (x, m) in coords.iter_mut().zip(&self.moduli) {
            if !m.is_zero() {
                *x = x.mod_floor(m);
            }
        }
        Element(coords)
    }

    pub fn element(&self, coords: Vec<BigInt>) -> Result<Element> {
        if coords.len() != self.ngens() {
            return Err(Error::Dimension {
                expected: self.ngens(),
                found: coords.len(),
            });
        }
        Ok(self.reduce(coords))
    }

    pub fn element_i64(&self, coords: &[i64]) -> Result<Element> {
        self.element(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn check(&self, a: &Element) -> Result<()> {
        if a.len() != self.ngens() {
            return Err(Error::Dimension {
                expected: self.ngens(),
                found: a.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &Element) -> Element {
        self.reduce(a.0.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, k: &BigInt, a: &Element) -> Element {
        self.reduce(a.0.iter().map(|x| x * k).collect())
    }

    /// Least `n >= 1` with `n a = 0`, or `None` when `a` has infinite order.
    pub fn element_order(&self, a: &Element) -> Result<Option<BigInt>> {
        self.check(a)?;
        let mut order = BigInt::one();
        for (x, m) in a.0.iter().zip(&self.moduli) {
            if m.is_zero() {
                if !x.is_zero() {
                    return Ok(None);
                }
            } else {
                order = lcm(&order, &(m / x.gcd(m)));
            }
        }
        Ok(Some(order))
    }

    /// All elements of a finite group in mixed-radix order.
    pub fn elements(&self) -> Result<Vec<Element>> {
        let order = self
            .order()
            .ok_or_else(|| Error::Infinite(self.to_string()))?;
        let count = order
            .to_usize()
            .filter(|&c| c <= 1 << 24)
            .ok_or_else(|| Error::TooLarge(order.to_string()))?;
        let radix: Vec<usize> = self.moduli.iter().map(|m| m.to_usize().unwrap()).collect();
        let mut out = Vec::with_capacity(count);
        let mut digits = vec![0usize; radix.len()];
        for _ in 0..count {
            out.push(Element(digits.iter().map(|&d| BigInt::from(d)).collect()));
            for (d, r) in digits.iter_mut().zip(&radix).rev() {
                *d += 1;
                if *d < *r {
                    break;
                }
                *d = 0;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for CyclicSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moduli.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.moduli.len() {
            let m = &self.moduli[i];
            let mut j = i;
            while j < self.moduli.len() && &self.moduli[j] == m {
                j += 1;
            }
            let base = if m.is_zero() {
                "Z".to_string()
            } else {
                format!("Z/{m}")
            };
            parts.push(match (j - i, m.is_zero()) {
                (1, _) => base,
                (k, true) => format!("Z^{k}"),
                (k, false) => format!("({base})^{k}"),
            });
            i = j;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Isomorphism type of a finitely generated abelian group:
/// `Z/d_1 + ... + Z/d_k + Z^r` with `d_1 | d_2 | ... | d_k`, each `d_i >= 2`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FgGroup {
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
}

impl FgGroup {
    /// `Z^ngens` modulo the row span of `rel`.
    pub fn from_presentation(rel: &IntMatrix, ngens: usize) -> FgGroup {
        assert_eq!(rel.cols(), ngens, "relation matrix must have ngens columns");
        let snf = smith_normal_form(rel);
        let invariant_factors = snf
            .invariants()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        FgGroup {
            invariant_factors,
            free_rank: ngens - snf.rank,
        }
    }

    /// The group `Z/orders[0] + ... + Z^free_rank`, canonicalized.
    pub fn from_cyclic_orders(orders: &[BigInt], free_rank: usize) -> FgGroup {
        let mut moduli = orders.to_vec();
        moduli.extend(std::iter::repeat_n(BigInt::zero(), free_rank));
        CyclicSum::new(moduli).canonical()
    }

    pub fn parse(text: &str) -> Result<FgGroup> {
        Ok(CyclicSum::parse(text)?.canonical())
    }

    pub fn trivial() -> FgGroup {
        FgGroup {
            invariant_factors: Vec::new(),
            free_rank: 0,
        }
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.invariant_factors.iter().product())
    }

    pub fn exponent(&self) -> BigInt {
        self.invariant_factors
            .last()
            .cloned()
            .unwrap_or_else(BigInt::one)
    }

    pub fn is_isomorphic(&self, other: &FgGroup) -> bool {
        self == other
    }

    /// Coordinates: the invariant factors in order, then the free part.
    pub fn cyclic_sum(&self) -> CyclicSum {
        let mut moduli = self.invariant_factors.clone();
        moduli.extend(std::iter::repeat_n(BigInt::zero(), self.free_rank));
        CyclicSum { moduli }
    }

    pub fn direct_sum(&self, other: &FgGroup) -> FgGroup {
        self.cyclic_sum().direct_sum(&other.cyclic_sum()).canonical()
    }
}

impl fmt::Display for FgGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.cyclic_sum().fmt(f)
    }
}

fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every abelian group of order `n`, one per isomorphism class.
pub fn groups_of_order(n: u64) -> Vec<FgGroup> {
    let factors = factorize(&BigInt::from(n)).expect("order fits in u64");
    let mut acc: Vec<Vec<BigInt>> = vec![Vec::new()];
    for (p, e) in factors {
        let mut next = Vec::new();
        for partial in &acc {
            for part in partitions(e) {
                let mut orders = partial.clone();
                orders.extend(part.iter().map(|&k| BigInt::from(p).pow(k)));
                next.push(orders);
            }
        }
        acc = next;
    }
    let mut out: Vec<FgGroup> = acc
        .iter()
        .map(|orders| FgGroup::from_cyclic_orders(orders, 0))
        .collect();
    out.sort();
    out
}

/// Every abelian group of order at most `n`, ascending by order.
pub fn groups_up_to_order(n: u64) -> Vec<FgGroup> {
    (1..=n).flat_map(groups_of_order).collect()
}

struct GroupParser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> GroupParser<'a> {
    fn new(src: &'a str) -> Self {
        GroupParser { src, pos: 0 }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let before = &self.src[..self.pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let text = &self.src[start..self.pos];
        text.parse()
            .map_err(|_| Error::MalformedInteger(text.to_string()))
    }

    fn parse(mut self) -> Result<CyclicSum> {
        let g = self.sum()?;
        if self.peek().is_some() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(CyclicSum::new(g))
    }

    fn sum(&mut self) -> Result<Vec<BigInt>> {
        let mut moduli = self.power()?;
        while self.eat('+') {
            moduli.extend(self.power()?);
        }
        Ok(moduli)
    }

    fn power(&mut self) -> Result<Vec<BigInt>> {
        let base = self.factor()?;
        if self.eat('^') {
            let k = self.integer()?;
            let k = k
                .to_usize()
                .filter(|&k| k <= 4096)
                .ok_or_else(|| Error::TooLarge(k.to_string()))?;
            return Ok((0..k).flat_map(|_| base.iter().cloned()).collect());
        }
        Ok(base)
    }

    fn factor(&mut self) -> Result<Vec<BigInt>> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some('Z') | Some('ℤ') => {
                let c = self.peek().unwrap();
                self.pos += c.len_utf8();
                if self.eat('/') {
                    let n = self.integer()?;
                    if n.is_zero() {
                        return Err(self.error("modulus must be positive"));
                    }
                    Ok(vec![n])
                } else {
                    Ok(vec![BigInt::zero()])
                }
            }
            Some('0') => {
                self.pos += 1;
                Ok(Vec::new())
            }
            _ => Err(self.error("expected `Z`, `Z/n`, `0` or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::big;

    #[test]
    fn presentation_examples() {
        let g = FgGroup::from_presentation(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]), 2);
        assert_eq!(g, FgGroup::parse("Z/6").unwrap());
        let z = FgGroup::from_presentation(&IntMatrix::zeros(0, 1), 1);
        assert_eq!((z.invariant_factors().len(), z.free_rank()), (0, 1));
        let g4 = FgGroup::from_presentation(&IntMatrix::from_i64(&[&[4]]), 1);
        assert_eq!(g4.invariant_factors(), &[big(4)]);
    }

    #[test]
    fn element_orders() {
        let z8 = CyclicSum::cyclic(8);
        assert_eq!(z8.element_order(&z8.element_i64(&[2]).unwrap()).unwrap(), Some(big(4)));
        let g = CyclicSum::from_moduli(&[2, 3]);
        assert_eq!(g.element_order(&g.element_i64(&[1, 1]).unwrap()).unwrap(), Some(big(6)));
        let z = CyclicSum::from_moduli(&[0]);
        assert_eq!(z.element_order(&z.element_i64(&[1]).unwrap()).unwrap(), None);
        assert!(z.element_order(&g.zero()).is_err());
    }

    #[test]
    fn isomorphism() {
        let a = FgGroup::parse("Z/6").unwrap();
        let b = FgGroup::parse("Z/2 + Z/3").unwrap();
        assert!(a.is_isomorphic(&b));
        assert!(!FgGroup::parse("Z/4").unwrap().is_isomorphic(&FgGroup::parse("Z/2+Z/2").unwrap()));
    }

    #[test]
    fn dsl_round_trip() {
        let g = CyclicSum::parse("(Z/4)^3 + Z/2 + Z^2").unwrap();
        assert_eq!(g.moduli(), &[4, 4, 4, 2, 0, 0].map(big));
        assert_eq!(g.to_string(), "(Z/4)^3 + Z/2 + Z^2");
        assert_eq!(CyclicSum::parse(&g.to_string()).unwrap(), g);
        assert_eq!(CyclicSum::parse("0").unwrap(), CyclicSum::trivial());
        assert!(matches!(CyclicSum::parse("Z/"), Err(Error::Syntax { .. })));
        assert!(matches!(CyclicSum::parse("Z + ?"), Err(Error::Syntax { column: 5, .. })));
    }

    #[test]
    fn group_counts() {
        // a(n) for n = 1..16: number of abelian groups of order n.
        let counts: Vec<usize> = (1..=16).map(|n| groups_of_order(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]);
        assert_eq!(groups_of_order(64).len(), 11);
        for g in groups_of_order(72) {
            assert_eq!(g.order(), Some(big(72)));
        }
    }
}

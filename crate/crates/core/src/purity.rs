//! Purity, the torsion radical, primary components, direct-sum complements
//! and bounded-order patterns in products of homogeneous groups.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{factorize, is_prime, lcm};
use crate::error::{Error, Result};
use crate::group::{CyclicSum, Element};
use crate::matrix::{solve_left, IntMatrix};
use crate::subgroup::{all_subgroups, quotient, Subgroup};

/// Why a subgroup fails to be pure: `element ∈ nM ∩ H` but `∉ nH`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PurityWitness {
    pub n: BigInt,
    pub element: Element,
}

impl std::fmt::Display for PurityWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} lies in {}M ∩ H but not in {}H", self.element, self.n, self.n)
    }
}

/// Prime powers `p^k` dividing `e`, ascending.
fn prime_powers(e: &BigInt) -> Result<Vec<BigInt>> {
    let mut out = Vec::new();
    for (p, k) in factorize(e)? {
        let mut q = BigInt::one();
        for _ in 0..k {
            q *= p;
            out.push(q.clone());
        }
    }
    out.sort();
    Ok(out)
}

/// Searches for a failure of `nM ∩ H = nH`.
///
/// Only `n = p^k` dividing `exp(tM) · exp(t(M/H))` need checking: for larger
/// prime powers both sides are governed by the free parts, which is where
/// `exp(tM)` alone would miss e.g. `2Z ≤ Z`.
pub fn purity_witness(h: &Subgroup) -> Result<Option<PurityWitness>> {
    let m = h.ambient();
    let e = lcm(&m.torsion_exponent(), &quotient(h).exponent());
    let whole = Subgroup::whole(m);
    for n in prime_powers(&e)? {
        let lhs = whole.scale(&n).intersect(h)?;
        let rhs = h.scale(&n);
        if let Some(w) = lhs.witness_outside(&rhs) {
            return Ok(Some(PurityWitness { n, element: w }));
        }
    }
    Ok(None)
}

pub fn is_pure(h: &Subgroup) -> Result<bool> {
    Ok(purity_witness(h)?.is_none())
}

/// `t(M)`: the elements of finite order.
pub fn torsion_radical(m: &CyclicSum) -> Subgroup {
    let gens: Vec<Element> = (0..m.ngens())
        .filter(|&c| !m.moduli()[c].is_zero())
        .map(|c| m.generator(c))
        .collect();
    Subgroup::generated_by(m, &gens).expect("dimensions agree")
}

/// The `p`-primary part of a torsion group.
pub fn primary_component(m: &CyclicSum, p: &BigInt) -> Result<Subgroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if !m.is_finite() {
        return Err(Error::NotTorsion(m.to_string()));
    }
    let gens: Vec<Element> = m
        .moduli()
        .iter()
        .enumerate()
        .map(|(c, d)| {
            let mut coprime = d.clone();
            while (&coprime % p).is_zero() {
                coprime /= p;
            }
            let mut v = vec![BigInt::zero(); m.ngens()];
            v[c] = coprime;
            m.reduce(v)
        })
        .collect();
    Subgroup::generated_by(m, &gens)
}

/// Some `h ∈ H` with `o·h = target`, if one exists.
fn solve_multiple(h: &Subgroup, o: &BigInt, target: &Element) -> Option<Element> {
    let m = h.ambient();
    let basis = h.lattice();
    let rel = m.relations();
    let mut rows: Vec<Vec<BigInt>> = basis
        .row_vecs()
        .into_iter()
        .map(|r| r.into_iter().map(|x| x * o).collect())
        .collect();
    rows.extend(rel.row_vecs());
    let a = IntMatrix::from_rows(m.ngens(), rows);
    let u = solve_left(&a, target.coords())?;
    Some(m.reduce(basis.left_apply(&u[..basis.rows()])))
}

/// Splits `M → M/H` by lifting each quotient generator to an element of the
/// same order. Succeeds exactly when the sequence splits.
fn greedy_complement(h: &Subgroup) -> Option<Subgroup> {
    let m = h.ambient();
    let qm = h.quotient_map();
    let q = qm.quotient().clone();
    let mut gens = Vec::new();
    for c in 0..q.ngens() {
        let o = q.moduli()[c].clone();
        let x = qm.lift(&q.generator(c));
        let target = m.neg(&m.scale(&o, &x));
        let y = solve_multiple(h, &o, &target)?;
        gens.push(m.add(&x, &y));
    }
    Some(Subgroup::generated_by(m, &gens).expect("dimensions agree"))
}

const EXHAUSTIVE_LIMIT: u32 = 64;

/// A subgroup `K` with `H ⊕ K = M`, for finite `M`.
pub fn complement(h: &Subgroup) -> Result<Option<Subgroup>> {
    let m = h.ambient();
    let order = m.order().ok_or_else(|| Error::Infinite(m.to_string()))?;
    if let Some(k) = greedy_complement(h) {
        debug_assert!(k.intersect(h)?.is_trivial() && k.sum(h)?.is_whole());
        return Ok(Some(k));
    }
    if order > BigInt::from(EXHAUSTIVE_LIMIT) {
        return Ok(None);
    }
    let h_order = h.order().expect("finite");
    for k in all_subgroups(m)? {
        if k.order().expect("finite") * &h_order == order && k.intersect(h)?.is_trivial() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// The order sequence of an element `(b_n)` of `Π_{n≥1} B_n`, where `B_n` is
/// homogeneous of type `Z(p^n)`; `b_n` has order `p^{e_n}` with `e_n ≤ n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OrderPattern {
    /// `e_n = exponents[n-1]` for listed terms and 0 afterwards.
    FinitelySupported(Vec<u32>),
    /// Listed prefix, then `e_n = value` forever (clipped to `n`).
    EventuallyConstant { prefix: Vec<u32>, value: u32 },
    /// `e_n = clamp(⌊num·n/den⌋ + offset, 0, n)`.
    Linear { num: u32, den: u32, offset: i64 },
}

impl OrderPattern {
    fn validate(&self) -> Result<()> {
        let check_prefix = |xs: &[u32]| -> Result<()> {
            for (i, &e) in xs.iter().enumerate() {
                if e as usize > i + 1 {
                    return Err(Error::InvalidPattern(format!(
                        "component {} has exponent {e} > {}",
                        i + 1,
                        i + 1
                    )));
                }
            }
            Ok(())
        };
        match self {
            OrderPattern::FinitelySupported(xs) => check_prefix(xs),
            OrderPattern::EventuallyConstant { prefix, .. } => check_prefix(prefix),
            OrderPattern::Linear { den, .. } if *den == 0 => {
                Err(Error::InvalidPattern("zero denominator".into()))
            }
            OrderPattern::Linear { .. } => Ok(()),
        }
    }

    /// `e_n` for `n ≥ 1`.
    pub fn exponent(&self, n: u64) -> u64 {
        let raw = match self {
            OrderPattern::FinitelySupported(xs) => {
                xs.get(n as usize - 1).copied().unwrap_or(0) as u64
            }
            OrderPattern::EventuallyConstant { prefix, value } => {
                prefix.get(n as usize - 1).copied().unwrap_or(*value) as u64
            }
            OrderPattern::Linear { num, den, offset } => {
                let v = (*num as i128 * n as i128) / *den as i128 + *offset as i128;
                v.max(0) as u64
            }
        };
        raw.min(n)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            OrderPattern::FinitelySupported(xs) => xs.iter().all(|&e| e == 0),
            OrderPattern::EventuallyConstant { prefix, value } => {
                *value == 0 && prefix.iter().all(|&e| e == 0)
            }
            OrderPattern::Linear { num, offset, .. } => *num == 0 && !offset.is_positive(),
        }
    }
}

/// Whether the element lies in `t(PE(B))`: exactly when its orders are bounded.
pub fn in_torsion_of_pe(pattern: &OrderPattern) -> Result<bool> {
    pattern.validate()?;
    Ok(match pattern {
        OrderPattern::FinitelySupported(_) | OrderPattern::EventuallyConstant { .. } => true,
        OrderPattern::Linear { num, .. } => *num == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::big;

    fn sub(m: &CyclicSum, gens: &[&[i64]]) -> Subgroup {
        let gens: Vec<Element> = gens.iter().map(|g| m.element_i64(g).unwrap()).collect();
        Subgroup::generated_by(m, &gens).unwrap()
    }

    #[test]
    fn purity_examples() {
        let z4 = CyclicSum::cyclic(4);
        let w = purity_witness(&sub(&z4, &[&[2]])).unwrap().unwrap();
        assert_eq!((w.n.clone(), w.element.to_string()), (big(2), "(2)".to_string()));
        let m = CyclicSum::from_moduli(&[2, 4]);
        assert!(is_pure(&sub(&m, &[&[1, 0]])).unwrap());
        let m = CyclicSum::from_moduli(&[4, 2]);
        assert!(is_pure(&sub(&m, &[&[1, 1]])).unwrap());
        let z = CyclicSum::from_moduli(&[0]);
        assert!(!is_pure(&sub(&z, &[&[2]])).unwrap());
        assert!(is_pure(&sub(&z, &[&[1]])).unwrap());
    }

    #[test]
    fn torsion_examples() {
        let m = CyclicSum::parse("Z^2 + Z/6").unwrap();
        assert_eq!(torsion_radical(&m), sub(&m, &[&[0, 0, 1]]));
        assert!(torsion_radical(&CyclicSum::from_moduli(&[0])).is_trivial());
        let m = CyclicSum::parse("Z + Z/4 + Z/2").unwrap();
        assert_eq!(torsion_radical(&m).structure().0.to_string(), "Z/2 + Z/4");
    }

    #[test]
    fn primary_examples() {
        let z6 = CyclicSum::cyclic(6);
        assert_eq!(primary_component(&z6, &big(2)).unwrap(), sub(&z6, &[&[3]]));
        assert!(primary_component(&z6, &big(5)).unwrap().is_trivial());
        let m = CyclicSum::from_moduli(&[4, 9]);
        assert_eq!(primary_component(&m, &big(3)).unwrap(), sub(&m, &[&[0, 1]]));
        assert!(matches!(primary_component(&z6, &big(4)), Err(Error::NotPrime(_))));
        assert!(matches!(
            primary_component(&CyclicSum::parse("Z").unwrap(), &big(2)),
            Err(Error::NotTorsion(_))
        ));
    }

    #[test]
    fn complement_examples() {
        let m = CyclicSum::from_moduli(&[4, 2]);
        let h = sub(&m, &[&[1, 1]]);
        let k = complement(&h).unwrap().unwrap();
        assert_eq!(k, sub(&m, &[&[0, 1]]));
        let z4 = CyclicSum::cyclic(4);
        assert_eq!(complement(&sub(&z4, &[&[2]])).unwrap(), None);
        assert!(complement(&Subgroup::whole(&m)).unwrap().unwrap().is_trivial());
    }

    #[test]
    fn order_patterns() {
        use OrderPattern::*;
        assert!(in_torsion_of_pe(&EventuallyConstant { prefix: vec![1, 2], value: 3 }).unwrap());
        assert!(!in_torsion_of_pe(&Linear { num: 1, den: 1, offset: 0 }).unwrap());
        assert!(in_torsion_of_pe(&FinitelySupported(vec![])).unwrap());
        assert!(in_torsion_of_pe(&FinitelySupported(vec![2])).is_err());
        assert_eq!(Linear { num: 1, den: 2, offset: -1 }.exponent(7), 2);
    }
}

//! Evaluating pp-formulas in finitely generated abelian groups, indices of
//! pp-definable subgroups, and pp-types over a pure parameter subgroup.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{divisors, lcm};
use crate::error::{Error, Result};
use crate::formula::PpFormula;
use crate::group::{groups_up_to_order, CyclicSum, Element};
use crate::purity::purity_witness;
use crate::subgroup::{Homomorphism, Subgroup};

/// `f[M] ≤ M^n` where `n` is the arity of `f`.
///
/// Coordinates of `M^n` are variable-major: variable `j`, coordinate `c` of
/// `M` sits at index `j·k + c`. Since `M = ⊕ Z/d_c` and pp-formulas commute
/// with direct sums, the solution set is the sum over `c` of the lifted
/// solution lattice of the system modulo `d_c`.
pub fn evaluate(f: &PpFormula, m: &CyclicSum) -> Subgroup {
    let n = f.arity();
    let k = m.ngens();
    let power = m.power(n);
    let mf = f.matrix_form();
    let mut gens = Vec::new();
    let mut cache: Vec<(BigInt, Vec<Vec<BigInt>>)> = Vec::new();
    for (c, d) in m.moduli().iter().enumerate() {
        let rows = match cache.iter().find(|(e, _)| e == d) {
            Some((_, rows)) => rows.clone(),
            None => {
                let rows = mf.solution_lattice(d).row_vecs();
                cache.push((d.clone(), rows.clone()));
                rows
            }
        };
        for row in rows {
            let mut v = vec![BigInt::zero(); n * k];
            for (j, x) in row.into_iter().enumerate() {
                v[j * k + c] = x;
            }
            gens.push(power.reduce(v));
        }
    }
    Subgroup::generated_by(&power, &gens).expect("dimensions agree")
}

/// `[f[M] : g[M]]`, `None` when infinite. Fails with a witness when
/// `g[M] ⊄ f[M]`.
pub fn index(f: &PpFormula, g: &PpFormula, m: &CyclicSum) -> Result<Option<BigInt>> {
    if f.arity() != g.arity() {
        return Err(Error::Arity(g.arity()));
    }
    evaluate(g, m).index_in(&evaluate(f, m))
}

/// A parameter group `P` together with a pure embedding `ι: P → N`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParameterEmbedding {
    embedding: Homomorphism,
}

impl ParameterEmbedding {
    /// Checks that `N` is finite and `ι` is injective with pure image.
    pub fn new(embedding: Homomorphism) -> Result<Self> {
        let n = embedding.target();
        if !n.is_finite() {
            return Err(Error::Infinite(n.to_string()));
        }
        if !embedding.is_injective()? {
            return Err(Error::NotInjective);
        }
        let image = embedding.image(&Subgroup::whole(embedding.source()))?;
        if let Some(w) = purity_witness(&image)? {
            return Err(Error::NotPure {
                witness: w.to_string(),
            });
        }
        Ok(ParameterEmbedding { embedding })
    }

    /// `H ≤ N` parametrized by its canonical structure isomorphism.
    pub fn from_subgroup(h: &Subgroup) -> Result<Self> {
        let (group, gens) = h.structure();
        Self::new(Homomorphism::new(&group.cyclic_sum(), h.ambient(), gens)?)
    }

    /// The zero parameter group inside `N`.
    pub fn trivial(n: &CyclicSum) -> Result<Self> {
        Self::new(Homomorphism::new(&CyclicSum::trivial(), n, vec![])?)
    }

    pub fn parameters(&self) -> &CyclicSum {
        self.embedding.source()
    }

    pub fn target(&self) -> &CyclicSum {
        self.embedding.target()
    }

    pub fn map(&self) -> &Homomorphism {
        &self.embedding
    }
}

/// A satisfied condition `s | (c·x − ι(m))`, i.e. `∃y. c·x − ι(m) = s·y`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Condition {
    pub s: BigInt,
    pub c: BigInt,
    pub m: Element,
}

/// The pp-type of `a` over the parameters, encoded by the conditions it
/// satisfies for `s | e` and `c ∈ Z/e`.
///
/// Over `Z` every pp-formula in `x` with parameters is equivalent to a finite
/// conjunction of such divisibility conditions (diagonalize the bound part),
/// and in a group of exponent dividing `e` only `s | e` and `c mod e` matter.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PpTypeDescriptor {
    embedding: ParameterEmbedding,
    element: Element,
    modulus: BigInt,
    satisfied: BTreeSet<Condition>,
}

impl PpTypeDescriptor {
    pub fn embedding(&self) -> &ParameterEmbedding {
        &self.embedding
    }

    pub fn element(&self) -> &Element {
        &self.element
    }

    /// The `e` bounding `s` and `c`.
    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn satisfied(&self) -> &BTreeSet<Condition> {
        &self.satisfied
    }
}

/// `x ∈ sN`, coordinatewise: `gcd(s, d) | x_c`.
fn divisible_by(n: &CyclicSum, x: &Element, s: &BigInt) -> bool {
    x.coords()
        .iter()
        .zip(n.moduli())
        .all(|(v, d)| (v % s.gcd(d)).is_zero())
}

fn descriptor_with_modulus(
    embedding: &ParameterEmbedding,
    a: &Element,
    e: &BigInt,
) -> Result<PpTypeDescriptor> {
    let n = embedding.target();
    n.check(a)?;
    let params = embedding.parameters().elements()?;
    let images: Vec<Element> = params
        .iter()
        .map(|p| embedding.map().apply(p))
        .collect::<Result<_>>()?;
    let e_small = e
        .to_u64()
        .ok_or_else(|| Error::TooLarge(e.to_string()))?;
    let mut satisfied = BTreeSet::new();
    for s in divisors(e)? {
        let mut ca = n.zero();
        for c in 0..e_small {
            for (p, img) in params.iter().zip(&images) {
                if divisible_by(n, &n.sub(&ca, img), &s) {
                    satisfied.insert(Condition {
                        s: s.clone(),
                        c: BigInt::from(c),
                        m: p.clone(),
                    });
                }
            }
            ca = n.add(&ca, a);
        }
    }
    Ok(PpTypeDescriptor {
        embedding: embedding.clone(),
        element: a.clone(),
        modulus: e.clone(),
        satisfied,
    })
}

pub fn pp_type_descriptor(embedding: &ParameterEmbedding, a: &Element) -> Result<PpTypeDescriptor> {
    let e = embedding.target().torsion_exponent();
    descriptor_with_modulus(embedding, a, &e)
}

/// Equality of pp-types over a common parameter group. Descriptors built
/// with different moduli are recomputed over their lcm.
pub fn pp_type_equal(d1: &PpTypeDescriptor, d2: &PpTypeDescriptor) -> Result<bool> {
    if d1.embedding.parameters() != d2.embedding.parameters() {
        return Err(Error::AmbientMismatch);
    }
    if d1.modulus == d2.modulus {
        return Ok(d1.satisfied == d2.satisfied);
    }
    let e = lcm(&d1.modulus, &d2.modulus);
    let w1 = descriptor_with_modulus(&d1.embedding, &d1.element, &e)?;
    let w2 = descriptor_with_modulus(&d2.embedding, &d2.element, &e)?;
    Ok(w1.satisfied == w2.satisfied)
}

/// Every pure embedding of `p` into `n`, by search over generator images.
pub fn pure_embeddings(p: &CyclicSum, n: &CyclicSum) -> Result<Vec<ParameterEmbedding>> {
    let candidates: Vec<Vec<Element>> = p
        .moduli()
        .iter()
        .map(|d| {
            Ok(n.elements()?
                .into_iter()
                .filter(|x| n.element_order(x).ok().flatten().as_ref() == Some(d))
                .collect())
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut choice = vec![0usize; candidates.len()];
    if candidates.iter().any(|c| c.is_empty()) {
        return Ok(out);
    }
    loop {
        let images = choice
            .iter()
            .zip(&candidates)
            .map(|(&i, c)| c[i].clone())
            .collect();
        if let Ok(emb) = ParameterEmbedding::new(Homomorphism::new(p, n, images)?) {
            out.push(emb);
        }
        let mut pos = candidates.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < candidates[pos].len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// Number of distinct pp-types over `M` realized by some `a ∈ N` with
/// `M ≤_p N` finite and `|N| ≤ bound`.
pub fn count_types(m: &CyclicSum, bound: u64) -> Result<usize> {
    let m_order = m.order().ok_or_else(|| Error::Infinite(m.to_string()))?;
    let mut classes: Vec<(BigInt, PpTypeDescriptor)> = Vec::new();
    for g in groups_up_to_order(bound) {
        let n = g.cyclic_sum();
        let n_order = n.order().expect("finite");
        if !(&n_order % &m_order).is_zero() {
            continue;
        }
        for emb in pure_embeddings(m, &n)? {
            for a in n.elements()? {
                let order = n.element_order(&a)?.expect("finite");
                let d = pp_type_descriptor(&emb, &a)?;
                let mut new = true;
                for (o, rep) in &classes {
                    if *o == order && pp_type_equal(rep, &d)? {
                        new = false;
                        break;
                    }
                }
                if new {
                    classes.push((order, d));
                }
            }
        }
    }
    Ok(classes.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::big;

    fn p(s: &str) -> PpFormula {
        PpFormula::parse(s).unwrap()
    }

    fn elems(h: &Subgroup) -> Vec<String> {
        h.elements().unwrap().iter().map(|e| e.to_string()).collect()
    }

    #[test]
    fn evaluate_examples() {
        let z4 = CyclicSum::cyclic(4);
        assert_eq!(elems(&evaluate(&p("E y. x=2*y"), &z4)), ["(0)", "(2)"]);
        let m = CyclicSum::parse("Z/4 + Z/6 + Z").unwrap();
        assert!(evaluate(&p("x=x"), &m).is_whole());
        let z16 = CyclicSum::cyclic(16);
        assert_eq!(elems(&evaluate(&p("2*x=0 & E y. x=4*y"), &z16)), ["(0)", "(8)"]);
        let z12 = CyclicSum::cyclic(12);
        let f = crate::formula::scalar_formula(&big(2), &p("E y. x=3*y")).unwrap();
        assert_eq!(elems(&evaluate(&f, &z12)), ["(0)", "(6)"]);
    }

    #[test]
    fn evaluate_binary_formula() {
        // x = 2y in Z/4: pairs (2y, y).
        let z4 = CyclicSum::cyclic(4);
        let h = evaluate(&p("x = 2*y"), &z4);
        assert_eq!(elems(&h), ["(0,0)", "(0,2)", "(2,1)", "(2,3)"]);
    }

    #[test]
    fn index_examples() {
        let z4 = CyclicSum::cyclic(4);
        assert_eq!(index(&p("x=x"), &p("E y. x=2*y"), &z4).unwrap(), Some(big(2)));
        assert_eq!(index(&p("x=x"), &p("x=x"), &z4).unwrap(), Some(big(1)));
        assert!(matches!(
            index(&p("E y. x=2*y"), &p("x=x"), &z4),
            Err(Error::Inclusion { .. })
        ));
        let z = CyclicSum::parse("Z").unwrap();
        assert_eq!(index(&p("x=x"), &p("x=0"), &z).unwrap(), None);
    }

    #[test]
    fn type_examples() {
        let z4 = CyclicSum::cyclic(4);
        let z2 = CyclicSum::cyclic(2);
        let e4 = ParameterEmbedding::trivial(&z4).unwrap();
        let e2 = ParameterEmbedding::trivial(&z2).unwrap();
        let one4 = z4.element_i64(&[1]).unwrap();
        let two4 = z4.element_i64(&[2]).unwrap();
        let one2 = z2.element_i64(&[1]).unwrap();
        let d = |e: &ParameterEmbedding, a: &Element| pp_type_descriptor(e, a).unwrap();
        assert!(!pp_type_equal(&d(&e4, &one4), &d(&e2, &one2)).unwrap());
        assert!(!pp_type_equal(&d(&e4, &two4), &d(&e2, &one2)).unwrap());
        assert!(pp_type_equal(&d(&e4, &one4), &d(&e4, &one4)).unwrap());
        let three4 = z4.element_i64(&[3]).unwrap();
        assert!(pp_type_equal(&d(&e4, &one4), &d(&e4, &three4)).unwrap());
    }

    #[test]
    fn impure_parameters_rejected() {
        let z4 = CyclicSum::cyclic(4);
        let h = Subgroup::generated_by(&z4, &[z4.element_i64(&[2]).unwrap()]).unwrap();
        assert!(matches!(
            ParameterEmbedding::from_subgroup(&h),
            Err(Error::NotPure { .. })
        ));
    }

    #[test]
    fn count_types_examples() {
        let zero = CyclicSum::trivial();
        assert_eq!(count_types(&zero, 1).unwrap(), 1);
        assert_eq!(count_types(&zero, 2).unwrap(), 2);
        assert_eq!(count_types(&zero, 4).unwrap(), 5);
    }
}

//! Subgroups in canonical form, quotients and homomorphisms.
//!
//! A subgroup `H` of `M = Z^n / R` is stored as the Hermite normal form of its
//! full preimage `L ⊇ R` in `Z^n`. The HNF of a lattice is unique, so two
//! generating sets of the same subgroup canonicalize to equal values and
//! subgroup equality is structural equality.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{CyclicSum, Element, FgGroup};
use crate::matrix::{
    hermite_normal_form, hnf_coordinates, lattice_index, left_kernel, smith_normal_form,
    IntMatrix,
};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Subgroup {
    ambient: CyclicSum,
    lattice: IntMatrix,
    pivots: Vec<usize>,
}

impl Subgroup {
    pub(crate) fn from_lattice_rows(ambient: &CyclicSum, rows: IntMatrix) -> Subgroup {
        let stacked = rows.vstack(&ambient.relations());
        let hnf = hermite_normal_form(&stacked);
        Subgroup {
            ambient: ambient.clone(),
            lattice: hnf.basis(),
            pivots: hnf.pivots,
        }
    }

    pub fn generated_by(ambient: &CyclicSum, gens: &[Element]) -> Result<Subgroup> {
        for g in gens {
            ambient.check(g)?;
        }
        let rows = gens.iter().map(|g| g.coords().to_vec()).collect();
        Ok(Self::from_lattice_rows(
            ambient,
            IntMatrix::from_rows(ambient.ngens(), rows),
        ))
    }

    pub fn trivial(ambient: &CyclicSum) -> Subgroup {
        Self::from_lattice_rows(ambient, IntMatrix::zeros(0, ambient.ngens()))
    }

    pub fn whole(ambient: &CyclicSum) -> Subgroup {
        Self::from_lattice_rows(ambient, IntMatrix::identity(ambient.ngens()))
    }

    pub fn ambient(&self) -> &CyclicSum {
        &self.ambient
    }

    /// Canonical (HNF) basis of the preimage lattice in `Z^n`.
    pub fn lattice(&self) -> &IntMatrix {
        &self.lattice
    }

    pub fn contains(&self, a: &Element) -> bool {
        a.len() == self.ambient.ngens()
            && hnf_coordinates(&self.lattice, &self.pivots, a.coords()).is_some()
    }

    fn same_ambient(&self, other: &Subgroup) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    /// Whether `self ⊆ other`.
    pub fn is_subgroup_of(&self, other: &Subgroup) -> Result<bool> {
        self.same_ambient(other)?;
        Ok(self.generators().iter().all(|g| other.contains(g)))
    }

    /// A generator of `self` outside `other`, if any.
    pub fn witness_outside(&self, other: &Subgroup) -> Option<Element> {
        self.generators().into_iter().find(|g| !other.contains(g))
    }

    /// Nonzero reduced rows of the canonical basis.
    pub fn generators(&self) -> Vec<Element> {
        (0..self.lattice.rows())
            .map(|i| self.ambient.reduce(self.lattice.row(i).to_vec()))
            .filter(|e| !e.is_zero())
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators().is_empty()
    }

    pub fn is_whole(&self) -> bool {
        *self == Subgroup::whole(&self.ambient)
    }

    pub fn sum(&self, other: &Subgroup) -> Result<Subgroup> {
        self.same_ambient(other)?;
        Ok(Self::from_lattice_rows(
            &self.ambient,
            self.lattice.vstack(&other.lattice),
        ))
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        self.same_ambient(other)?;
        // u L1 + v L2 = 0  =>  u L1 ∈ L1 ∩ L2.
        let stacked = self.lattice.vstack(&other.lattice);
        let kernel = left_kernel(&stacked);
        let r1 = self.lattice.rows();
        let rows = (0..kernel.rows())
            .map(|k| {
                let u = &kernel.row(k)[..r1];
                self.lattice.left_apply(u)
            })
            .collect();
        Ok(Self::from_lattice_rows(
            &self.ambient,
            IntMatrix::from_rows(self.ambient.ngens(), rows),
        ))
    }

    /// `n H`.
    pub fn scale(&self, n: &BigInt) -> Subgroup {
        let rows = (0..self.lattice.rows())
            .map(|i| self.lattice.row(i).iter().map(|x| x * n).collect())
            .collect();
        Self::from_lattice_rows(
            &self.ambient,
            IntMatrix::from_rows(self.ambient.ngens(), rows),
        )
    }

    /// `H[n] = { h in H : n h = 0 }`.
    pub fn n_torsion(&self, n: &BigInt) -> Subgroup {
        self.intersect(&socle(&self.ambient, n))
            .expect("same ambient")
    }

    pub fn order(&self) -> Option<BigInt> {
        lattice_index(&self.ambient.relations(), &self.lattice)
    }

    /// `[sup : self]`, `None` when infinite.
    pub fn index_in(&self, sup: &Subgroup) -> Result<Option<BigInt>> {
        if !self.is_subgroup_of(sup)? {
            let w = self.witness_outside(sup).expect("some generator escapes");
            return Err(Error::Inclusion {
                witness: w.to_string(),
            });
        }
        Ok(lattice_index(&self.lattice, &sup.lattice))
    }

    /// Isomorphism type of `H` together with generators of `H` matching the
    /// coordinates of `FgGroup::cyclic_sum()`.
    pub fn structure(&self) -> (FgGroup, Vec<Element>) {
        let rel = self.ambient.relations();
        let r = self.lattice.rows();
        let coords: Vec<Vec<BigInt>> = (0..rel.rows())
            .map(|i| {
                hnf_coordinates(&self.lattice, &self.pivots, rel.row(i))
                    .expect("relations lie in every preimage lattice")
            })
            .collect();
        let rmat = IntMatrix::from_rows(r, coords);
        let snf = smith_normal_form(&rmat);
        let mut torsion = Vec::new();
        let mut torsion_gens = Vec::new();
        let mut free_gens = Vec::new();
        for i in 0..r {
            let g = self
                .ambient
                .reduce(self.lattice.left_apply(snf.v_inv.row(i)));
            if i < snf.rank {
                let s = snf.s[(i, i)].clone();
                if !s.is_one() {
                    torsion.push(s);
                    torsion_gens.push(g);
                }
            } else {
                free_gens.push(g);
            }
        }
        let group = FgGroup::from_cyclic_orders(&torsion, free_gens.len());
        debug_assert_eq!(group.invariant_factors(), &torsion[..]);
        torsion_gens.extend(free_gens);
        (group, torsion_gens)
    }

    /// All elements of a finite subgroup, sorted.
    pub fn elements(&self) -> Result<Vec<Element>> {
        let (group, gens) = self.structure();
        let cs = group.cyclic_sum();
        let mut out: Vec<Element> = cs
            .elements()?
            .into_iter()
            .map(|c| {
                let mut acc = self.ambient.zero();
                for (k, g) in c.coords().iter().zip(&gens) {
                    acc = self.ambient.add(&acc, &self.ambient.scale(k, g));
                }
                acc
            })
            .collect();
        out.sort();
        Ok(out)
    }

    pub fn quotient_map(&self) -> QuotientMap {
        QuotientMap::new(self)
    }
}

/// `M[n]`: elements of the ambient group killed by `n`.
pub fn socle(ambient: &CyclicSum, n: &BigInt) -> Subgroup {
    let gens: Vec<Element> = ambient
        .moduli()
        .iter()
        .enumerate()
        .filter(|(_, m)| !m.is_zero())
        .map(|(c, m)| {
            let mut v = vec![BigInt::zero(); ambient.ngens()];
            v[c] = m / m.gcd(n);
            ambient.reduce(v)
        })
        .collect();
    Subgroup::generated_by(ambient, &gens).expect("dimensions agree")
}

/// Projection `M -> M/H` with the quotient in invariant-factor coordinates.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    source: CyclicSum,
    quotient: CyclicSum,
    v: IntMatrix,
    v_inv: IntMatrix,
    /// SNF positions that survive (non-unit diagonal or free).
    kept: Vec<usize>,
}

impl QuotientMap {
    fn new(h: &Subgroup) -> QuotientMap {
        let n = h.ambient.ngens();
        let snf = smith_normal_form(&h.lattice);
        let mut kept = Vec::new();
        let mut moduli = Vec::new();
        for i in 0..n {
            if i < snf.rank {
                let s = &snf.s[(i, i)];
                if !s.is_one() {
                    kept.push(i);
                    moduli.push(s.clone());
                }
            } else {
                kept.push(i);
                moduli.push(BigInt::zero());
            }
        }
        QuotientMap {
            source: h.ambient.clone(),
            quotient: CyclicSum::new(moduli),
            v: snf.v,
            v_inv: snf.v_inv,
            kept,
        }
    }

    pub fn quotient(&self) -> &CyclicSum {
        &self.quotient
    }

    pub fn project(&self, a: &Element) -> Element {
        let xv = self.v.left_apply(a.coords());
        self.quotient
            .reduce(self.kept.iter().map(|&i| xv[i].clone()).collect())
    }

    /// Some preimage of a quotient element.
    pub fn lift(&self, q: &Element) -> Element {
        let mut full = vec![BigInt::zero(); self.source.ngens()];
        for (k, &i) in self.kept.iter().enumerate() {
            full[i] = q.coords()[k].clone();
        }
        self.source.reduce(self.v_inv.left_apply(&full))
    }
}

/// `M/H` in invariant-factor form.
pub fn quotient(h: &Subgroup) -> FgGroup {
    FgGroup::from_presentation(h.lattice(), h.ambient().ngens())
}

/// A homomorphism given by the images of the source coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Homomorphism {
    source: CyclicSum,
    target: CyclicSum,
    images: Vec<Element>,
}

impl Homomorphism {
    pub fn new(source: &CyclicSum, target: &CyclicSum, images: Vec<Element>) -> Result<Self> {
        if images.len() != source.ngens() {
            return Err(Error::Dimension {
                expected: source.ngens(),
                found: images.len(),
            });
        }
        for (img, d) in images.iter().zip(source.moduli()) {
            target.check(img)?;
            if !d.is_zero() && !target.scale(d, img).is_zero() {
                return Err(Error::IllDefinedHom(format!(
                    "generator of order {d} sent to {img}, and {d}·{img} ≠ 0"
                )));
            }
        }
        let images = images
            .into_iter()
            .map(|i| target.reduce(i.into_coords()))
            .collect();
        Ok(Homomorphism {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn source(&self) -> &CyclicSum {
        &self.source
    }

    pub fn target(&self) -> &CyclicSum {
        &self.target
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn apply(&self, a: &Element) -> Result<Element> {
        self.source.check(a)?;
        let mut acc = self.target.zero();
        for (k, img) in a.coords().iter().zip(&self.images) {
            if !k.is_zero() {
                acc = self.target.add(&acc, &self.target.scale(k, img));
            }
        }
        Ok(acc)
    }

    pub fn image(&self, h: &Subgroup) -> Result<Subgroup> {
        if h.ambient() != &self.source {
            return Err(Error::AmbientMismatch);
        }
        let gens = h
            .generators()
            .iter()
            .map(|g| self.apply(g))
            .collect::<Result<Vec<_>>>()?;
        Subgroup::generated_by(&self.target, &gens)
    }

    /// Injectivity for finite sources.
    pub fn is_injective(&self) -> Result<bool> {
        let order = self
            .source
            .order()
            .ok_or_else(|| Error::Infinite(self.source.to_string()))?;
        let img = self.image(&Subgroup::whole(&self.source))?;
        Ok(img.order() == Some(order))
    }
}

/// Every subgroup of a finite group, sorted canonically.
pub fn all_subgroups(ambient: &CyclicSum) -> Result<Vec<Subgroup>> {
    let elements = ambient.elements()?;
    let mut cyclic: Vec<Subgroup> = elements
        .iter()
        .map(|e| Subgroup::generated_by(ambient, std::slice::from_ref(e)).expect("dims"))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    cyclic.sort();
    let mut seen: BTreeSet<Subgroup> = BTreeSet::new();
    let mut queue = VecDeque::new();
    let zero = Subgroup::trivial(ambient);
    seen.insert(zero.clone());
    queue.push_back(zero);
    while let Some(s) = queue.pop_front() {
        for c in &cyclic {
            if c.is_subgroup_of(&s)? {
                continue;
            }
            let t = s.sum(c)?;
            if seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

impl Subgroup {
    /// Reads `<(1,1),(0,2)>`; `<>` is the trivial subgroup.
    pub fn parse(text: &str, ambient: &CyclicSum) -> Result<Subgroup> {
        let syntax = |column: usize, message: &str| Error::Syntax {
            line: 1,
            column,
            message: message.to_string(),
        };
        let t = text.trim();
        let inner = t
            .strip_prefix('<')
            .and_then(|r| r.strip_suffix('>'))
            .ok_or_else(|| syntax(1, "expected `<(...), ...>`"))?;
        let offset = text.find('<').unwrap_or(0) + 2;
        let mut gens = Vec::new();
        let mut rest = inner;
        loop {
            rest = rest.trim_start();
            if rest.is_empty() {
                break;
            }
            let column = offset + inner.len() - rest.len();
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| syntax(column, "expected `(`"))?;
            let close = body.find(')').ok_or_else(|| syntax(column, "unclosed `(`"))?;
            let coords = body[..close]
                .split(',')
                .map(|c| {
                    let c = c.trim();
                    c.parse::<BigInt>()
                        .map_err(|_| Error::MalformedInteger(c.to_string()))
                })
                .collect::<Result<Vec<_>>>()?;
            gens.push(ambient.element(coords)?);
            rest = body[close + 1..].trim_start();
            if let Some(r) = rest.strip_prefix(',') {
                rest = r;
            } else if !rest.is_empty() {
                return Err(syntax(offset + inner.len() - rest.len(), "expected `,` or `>`"));
            }
        }
        Subgroup::generated_by(ambient, &gens)
    }
}

/// Canonical generators in the `<(…),(…)>` syntax.
impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators().iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", gens.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::big;

    fn el(g: &CyclicSum, c: &[i64]) -> Element {
        g.element_i64(c).unwrap()
    }

    #[test]
    fn canonical_form_is_generator_independent() {
        let m = CyclicSum::from_moduli(&[4, 2]);
        let a = Subgroup::generated_by(&m, &[el(&m, &[1, 1])]).unwrap();
        let b = Subgroup::generated_by(&m, &[el(&m, &[3, 1]), el(&m, &[2, 0]), el(&m, &[1, 1])])
            .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.order(), Some(big(4)));
    }

    #[test]
    fn quotient_examples() {
        let z4 = CyclicSum::cyclic(4);
        let h = Subgroup::generated_by(&z4, &[el(&z4, &[2])]).unwrap();
        assert_eq!(quotient(&h), FgGroup::parse("Z/2").unwrap());
        let m = CyclicSum::parse("Z/4 + Z/6 + Z").unwrap();
        assert_eq!(quotient(&Subgroup::trivial(&m)), m.canonical());
        assert_eq!(quotient(&Subgroup::whole(&m)), FgGroup::trivial());
    }

    #[test]
    fn quotient_map_projects_and_lifts() {
        let m = CyclicSum::parse("Z/4 + Z/2 + Z").unwrap();
        let h = Subgroup::generated_by(&m, &[el(&m, &[1, 1, 2])]).unwrap();
        let qm = h.quotient_map();
        assert_eq!(qm.quotient().canonical(), quotient(&h));
        for g in h.generators() {
            assert!(qm.project(&g).is_zero());
        }
        let q = qm.quotient().clone();
        for c in 0..q.ngens() {
            let gen = q.generator(c);
            assert_eq!(qm.project(&qm.lift(&gen)), gen);
        }
    }

    #[test]
    fn intersection_and_sum() {
        let m = CyclicSum::cyclic(12);
        let a = Subgroup::generated_by(&m, &[el(&m, &[2])]).unwrap();
        let b = Subgroup::generated_by(&m, &[el(&m, &[3])]).unwrap();
        assert_eq!(a.intersect(&b).unwrap(), Subgroup::generated_by(&m, &[el(&m, &[6])]).unwrap());
        assert!(a.sum(&b).unwrap().is_whole());
        assert_eq!(a.index_in(&Subgroup::whole(&m)).unwrap(), Some(big(2)));
        assert!(matches!(Subgroup::whole(&m).index_in(&a), Err(Error::Inclusion { .. })));
    }

    #[test]
    fn structure_of_subgroup() {
        let m = CyclicSum::parse("Z/4 + Z/2 + Z").unwrap();
        let h = Subgroup::generated_by(&m, &[el(&m, &[2, 1, 0]), el(&m, &[0, 0, 3])]).unwrap();
        let (g, gens) = h.structure();
        assert_eq!(g, FgGroup::parse("Z/2 + Z").unwrap());
        assert_eq!(Subgroup::generated_by(&m, &gens).unwrap(), h);
    }

    #[test]
    fn subgroup_counts() {
        // Z/2 + Z/2 has 5 subgroups, Z/4 + Z/2 has 8, (Z/2)^3 has 16.
        assert_eq!(all_subgroups(&CyclicSum::from_moduli(&[2, 2])).unwrap().len(), 5);
        assert_eq!(all_subgroups(&CyclicSum::from_moduli(&[4, 2])).unwrap().len(), 8);
        assert_eq!(all_subgroups(&CyclicSum::from_moduli(&[2, 2, 2])).unwrap().len(), 16);
    }

    #[test]
    fn homomorphisms() {
        let z4 = CyclicSum::cyclic(4);
        let z2 = CyclicSum::cyclic(2);
        assert!(Homomorphism::new(&z2, &z4, vec![el(&z4, &[1])]).is_err());
        let f = Homomorphism::new(&z2, &z4, vec![el(&z4, &[2])]).unwrap();
        assert!(f.is_injective().unwrap());
        let g = Homomorphism::new(&z4, &z2, vec![el(&z2, &[1])]).unwrap();
        assert!(!g.is_injective().unwrap());
        assert_eq!(g.apply(&el(&z4, &[3])).unwrap(), el(&z2, &[1]));
    }

    #[test]
    fn subgroup_syntax() {
        let m = CyclicSum::from_moduli(&[4, 2]);
        let h = Subgroup::parse("<(1,1), (0,2)>", &m).unwrap();
        assert_eq!(h.order(), Some(BigInt::from(4)));
        assert_eq!(Subgroup::parse(&h.to_string(), &m).unwrap(), h);
        assert!(Subgroup::parse("<>", &m).unwrap().is_trivial());
        assert!(Subgroup::parse("<(1)>", &m).is_err());
        assert!(Subgroup::parse("(1,1)", &m).is_err());
        assert!(Subgroup::parse("<(1,x)>", &m).is_err());
    }
}

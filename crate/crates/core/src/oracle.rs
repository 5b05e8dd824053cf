//! Brute-force oracles over small finite groups.
//!
//! Everything here works on explicit element tables with `u64` arithmetic
//! and shares no code with the lattice algorithms it is meant to check.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::formula::PpFormula;
use crate::group::{CyclicSum, Element};
use crate::matrix::smith_normal_form;

/// A finite group `⊕ Z/d_i` with elements numbered in mixed radix.
#[derive(Clone, Debug)]
pub struct Table {
    moduli: Vec<u64>,
    order: u64,
}

impl Table {
    pub fn new(moduli: &[u64]) -> Table {
        Table {
            moduli: moduli.to_vec(),
            order: moduli.iter().product(),
        }
    }

    /// `None` for infinite or oversized groups.
    pub fn of(m: &CyclicSum) -> Option<Table> {
        let moduli: Option<Vec<u64>> = m
            .moduli()
            .iter()
            .map(|d| d.to_u64().filter(|&d| d > 0))
            .collect();
        let moduli = moduli?;
        let mut order: u64 = 1;
        for d in &moduli {
            order = order.checked_mul(*d).filter(|&o| o <= 1 << 24)?;
        }
        Some(Table::new(&moduli))
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn power(&self, k: usize) -> Table {
        let moduli: Vec<u64> = (0..k).flat_map(|_| self.moduli.iter().copied()).collect();
        Table::new(&moduli)
    }

    pub fn encode(&self, coords: &[u64]) -> u64 {
        coords
            .iter()
            .zip(&self.moduli)
            .fold(0, |acc, (x, d)| acc * d + x % d)
    }

    pub fn decode(&self, mut index: u64) -> Vec<u64> {
        let mut out = vec![0; self.moduli.len()];
        for (x, d) in out.iter_mut().zip(&self.moduli).rev() {
            *x = index % d;
            index /= d;
        }
        out
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (x, y) = (self.decode(a), self.decode(b));
        let s: Vec<u64> = x
            .iter()
            .zip(&y)
            .zip(&self.moduli)
            .map(|((p, q), d)| (p + q) % d)
            .collect();
        self.encode(&s)
    }

    pub fn scale(&self, k: u64, a: u64) -> u64 {
        let x = self.decode(a);
        let s: Vec<u64> = x
            .iter()
            .zip(&self.moduli)
            .map(|(p, d)| ((*p as u128 * k as u128) % *d as u128) as u64)
            .collect();
        self.encode(&s)
    }

    pub fn element_order(&self, a: u64) -> u64 {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.add(x, a);
            k += 1;
        }
        k
    }

    /// Membership bitmap of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u64]) -> Vec<bool> {
        let mut member = vec![false; self.order as usize];
        member[0] = true;
        let mut list = vec![0u64];
        for &g in gens {
            if member[g as usize] {
                continue;
            }
            let base = list.clone();
            let mut shift = g;
            while !member[shift as usize] {
                for &b in &base {
                    let x = self.add(b, shift);
                    if !member[x as usize] {
                        member[x as usize] = true;
                        list.push(x);
                    }
                }
                shift = self.add(shift, g);
            }
        }
        member
    }

    pub fn from_element(&self, e: &Element) -> u64 {
        let coords: Vec<u64> = e
            .coords()
            .iter()
            .zip(&self.moduli)
            .map(|(x, d)| {
                let d = BigInt::from(*d);
                (((x % &d) + &d) % &d).to_u64().unwrap()
            })
            .collect();
        self.encode(&coords)
    }
}

/// Coefficient reduced into `[0, d)`.
fn residue(c: &BigInt, d: u64) -> u64 {
    let d = BigInt::from(d);
    (((c % &d) + &d) % &d).to_u64().unwrap()
}

/// `f[M]` as a membership bitmap over `M^n`, found by enumerating every
/// tuple `x̄` and testing `C x̄ ∈ D[M^b]`, the latter built as an explicit set.
pub fn brute_force_evaluate(f: &PpFormula, m: &Table) -> Vec<bool> {
    let mf = f.matrix_form();
    let (e, n, b) = (mf.c.rows(), mf.c.cols(), mf.d.cols());
    let k = m.moduli().len();
    let target = m.power(e);
    // Images of the unit vectors of M^b under D, then the generated set.
    let mut gens = Vec::new();
    for var in 0..b {
        for c in 0..k {
            let d = m.moduli()[c];
            let mut coords = vec![0u64; e * k];
            for row in 0..e {
                coords[row * k + c] = residue(&mf.d[(row, var)], d);
            }
            gens.push(target.encode(&coords));
        }
    }
    let image = target.closure(&gens);
    let tuples = m.power(n);
    let mut out = vec![false; tuples.order() as usize];
    for (idx, slot) in out.iter_mut().enumerate() {
        let x = tuples.decode(idx as u64);
        let mut coords = vec![0u64; e * k];
        for row in 0..e {
            for c in 0..k {
                let d = m.moduli()[c];
                let mut acc: u128 = 0;
                for var in 0..n {
                    acc += residue(&mf.c[(row, var)], d) as u128 * x[var * k + c] as u128;
                }
                coords[row * k + c] = (acc % d as u128) as u64;
            }
        }
        *slot = image[target.encode(&coords) as usize];
    }
    out
}

/// Bitmap of a subgroup given by generators, for comparison with
/// [`brute_force_evaluate`].
pub fn bitmap_of(table: &Table, gens: &[Element]) -> Vec<bool> {
    let gens: Vec<u64> = gens.iter().map(|g| table.from_element(g)).collect();
    table.closure(&gens)
}

/// Whether some homomorphism `N1 → N2` satisfies every `v ↦ w` constraint.
/// Backtracks over images of the generators, checking a constraint as soon
/// as all generators in its support are assigned.
pub fn hom_exists(n1: &Table, n2: &Table, constraints: &[(Vec<u64>, u64)]) -> bool {
    let k = n1.moduli().len();
    // Constraint `i` can be checked after generator `ready[i]`.
    let ready: Vec<Option<usize>> = constraints
        .iter()
        .map(|(v, _)| v.iter().rposition(|&x| x != 0))
        .collect();
    for (i, (_, w)) in constraints.iter().enumerate() {
        if ready[i].is_none() && *w != 0 {
            return false;
        }
    }
    let candidates: Vec<Vec<u64>> = n1
        .moduli()
        .iter()
        .map(|&d| (0..n2.order()).filter(|&x| n2.scale(d, x) == 0).collect())
        .collect();
    let mut images = vec![0u64; k];
    fn search(
        pos: usize,
        n2: &Table,
        candidates: &[Vec<u64>],
        images: &mut Vec<u64>,
        constraints: &[(Vec<u64>, u64)],
        ready: &[Option<usize>],
    ) -> bool {
        if pos == candidates.len() {
            return true;
        }
        for &x in &candidates[pos] {
            images[pos] = x;
            let ok = constraints.iter().zip(ready).all(|((v, w), r)| {
                if *r != Some(pos) {
                    return true;
                }
                let mut acc = 0;
                for (j, &coef) in v.iter().enumerate().take(pos + 1) {
                    acc = n2.add(acc, n2.scale(coef, images[j]));
                }
                acc == *w
            });
            if ok && search(pos + 1, n2, candidates, images, constraints, ready) {
                return true;
            }
        }
        false
    }
    search(0, n2, &candidates, &mut images, constraints, &ready)
}

/// A pointed extension of the parameter group: `N`, the images of the
/// parameter generators, and the distinguished element, all as coordinates.
#[derive(Clone, Debug)]
pub struct PointedExtension {
    pub table: Table,
    pub parameter_images: Vec<Vec<u64>>,
    pub element: Vec<u64>,
}

/// pp-type equality through homomorphisms both ways fixing the parameters
/// and exchanging the distinguished elements.
pub fn types_equivalent(x: &PointedExtension, y: &PointedExtension) -> bool {
    let one_way = |s: &PointedExtension, t: &PointedExtension| {
        let mut constraints: Vec<(Vec<u64>, u64)> = s
            .parameter_images
            .iter()
            .zip(&t.parameter_images)
            .map(|(v, w)| (v.clone(), t.table.encode(w)))
            .collect();
        constraints.push((s.element.clone(), t.table.encode(&t.element)));
        hom_exists(&s.table, &t.table, &constraints)
    };
    one_way(x, y) && one_way(y, x)
}

/// Every subgroup of a finite group as a membership bitmap.
pub fn all_subgroup_bitmaps(t: &Table) -> Vec<Vec<bool>> {
    let cyclic: Vec<Vec<bool>> = {
        let mut v: Vec<Vec<bool>> = (0..t.order()).map(|g| t.closure(&[g])).collect();
        v.sort();
        v.dedup();
        v
    };
    let elements_of = |bm: &[bool]| -> Vec<u64> {
        bm.iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i as u64)
            .collect()
    };
    let mut seen: std::collections::BTreeSet<Vec<bool>> = std::collections::BTreeSet::new();
    let mut queue = vec![t.closure(&[])];
    seen.insert(queue[0].clone());
    while let Some(s) = queue.pop() {
        for c in &cyclic {
            let mut gens = elements_of(&s);
            gens.extend(elements_of(c));
            let joined = t.closure(&gens);
            if seen.insert(joined.clone()) {
                queue.push(joined);
            }
        }
    }
    seen.into_iter().collect()
}

fn count(bm: &[bool]) -> u64 {
    bm.iter().filter(|&&b| b).count() as u64
}

/// Whether `H` has a complement, by scanning all subgroups.
pub fn complement_exists(t: &Table, h: &[bool], subgroups: &[Vec<bool>]) -> bool {
    let nh = count(h);
    subgroups.iter().any(|k| {
        count(k) * nh == t.order() && k.iter().zip(h).filter(|(a, b)| **a && **b).count() == 1
    })
}

/// `nM ∩ H = nH` for every `n ≤ |M|`, by explicit sets.
pub fn is_pure_by_sets(t: &Table, h: &[bool]) -> bool {
    for n in 1..=t.order() {
        let mut nm = vec![false; t.order() as usize];
        let mut nh = vec![false; t.order() as usize];
        for x in 0..t.order() {
            let y = t.scale(n, x) as usize;
            nm[y] = true;
            if h[x as usize] {
                nh[y] = true;
            }
        }
        for x in 0..t.order() as usize {
            if (nm[x] && h[x]) != nh[x] {
                return false;
            }
        }
    }
    true
}

fn ceil_norm(row: &[BigInt]) -> BigInt {
    let sq: BigInt = row.iter().map(|x| x * x).sum();
    let r = sq.sqrt();
    if &r * &r == sq {
        r
    } else {
        r + 1
    }
}

/// `d ≥ 0` with `ψ[Z] = dZ`, by testing `a = 1, 2, …, B` for an integer
/// solution `y` of `D y = −C a`. `B` bounds the torsion of `coker D`
/// (Hadamard), so the least positive solution, if any, is at most `B`.
pub fn lowness_by_search(f: &PpFormula) -> Option<BigInt> {
    if f.arity() != 1 {
        return None;
    }
    let mf = f.matrix_form();
    let e = mf.c.rows();
    let bound: BigInt = (0..e)
        .map(|i| ceil_norm(mf.d.row(i)).max(BigInt::from(1)))
        .product();
    let snf = smith_normal_form(&mf.d);
    let c: Vec<BigInt> = (0..e).map(|i| mf.c[(i, 0)].clone()).collect();
    // D y = r  ⟺  S z = U r with z = V^{-1} y.
    let solvable = |a: &BigInt| -> bool {
        let r: Vec<BigInt> = c.iter().map(|x| -(x * a)).collect();
        let ur = snf.u.transpose().left_apply(&r);
        ur.iter().enumerate().all(|(i, x)| {
            if i < snf.rank {
                (x % &snf.s[(i, i)]).is_zero()
            } else {
                x.is_zero()
            }
        })
    };
    let mut a = BigInt::from(1);
    while a <= bound {
        if solvable(&a) {
            return Some(a);
        }
        a += 1;
    }
    Some(BigInt::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_orders() {
        let t = Table::new(&[4, 2]);
        assert_eq!(t.closure(&[t.encode(&[1, 1])]).iter().filter(|&&b| b).count(), 4);
        assert_eq!(t.element_order(t.encode(&[2, 1])), 2);
        assert_eq!(all_subgroup_bitmaps(&t).len(), 8);
    }

    #[test]
    fn brute_force_examples() {
        let f = PpFormula::parse("2*x=0 & E y. x=4*y").unwrap();
        let t = Table::new(&[16]);
        let set: Vec<usize> = brute_force_evaluate(&f, &t)
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
            .collect();
        assert_eq!(set, [0, 8]);
    }

    #[test]
    fn hom_oracle_examples() {
        let z4 = Table::new(&[4]);
        let z2 = Table::new(&[2]);
        let pt = |t: &Table, a: u64| PointedExtension {
            table: t.clone(),
            parameter_images: vec![],
            element: vec![a],
        };
        assert!(!types_equivalent(&pt(&z4, 1), &pt(&z2, 1)));
        assert!(!types_equivalent(&pt(&z4, 2), &pt(&z2, 1)));
        assert!(types_equivalent(&pt(&z4, 1), &pt(&z4, 3)));
    }

    #[test]
    fn lowness_search() {
        for (s, d) in [("2*x = 0", 0), ("E y . x = 2*y", 2), ("E y z . 2*x = 3*y & x = 5*z", 15)] {
            let f = PpFormula::parse(s).unwrap();
            assert_eq!(lowness_by_search(&f), Some(BigInt::from(d)), "{s}");
        }
    }
}

//! Positive-primitive formulas over `Z`: existentially quantified finite
//! systems of homogeneous linear equations.

mod parse;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{hermite_normal_form, right_kernel, IntMatrix};

/// A pp-formula `∃ bound . ⋀ equations`.
///
/// Each equation is a coefficient vector over `free_vars ++ bound_vars`
/// meaning `Σ c_i v_i = 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PpFormula {
    free_vars: Vec<String>,
    bound_vars: Vec<String>,
    equations: Vec<Vec<BigInt>>,
}

/// `C x + D y = 0`: columns of `c` are free variables, columns of `d` bound ones.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixForm {
    pub c: IntMatrix,
    pub d: IntMatrix,
}

impl PpFormula {
    pub fn new(
        free_vars: Vec<String>,
        bound_vars: Vec<String>,
        equations: Vec<Vec<BigInt>>,
    ) -> Result<PpFormula> {
        let width = free_vars.len() + bound_vars.len();
        for (i, v) in free_vars.iter().chain(&bound_vars).enumerate() {
            if free_vars.iter().chain(&bound_vars).skip(i + 1).any(|w| w == v) {
                return Err(Error::VariableClash(v.clone()));
            }
        }
        for eq in &equations {
            if eq.len() != width {
                return Err(Error::Dimension {
                    expected: width,
                    found: eq.len(),
                });
            }
        }
        Ok(PpFormula {
            free_vars,
            bound_vars,
            equations,
        })
    }

    /// Convenience constructor with `i64` coefficients.
    pub fn from_i64(free: &[&str], bound: &[&str], equations: &[&[i64]]) -> Result<PpFormula> {
        Self::new(
            free.iter().map(|s| s.to_string()).collect(),
            bound.iter().map(|s| s.to_string()).collect(),
            equations
                .iter()
                .map(|e| e.iter().map(|&c| BigInt::from(c)).collect())
                .collect(),
        )
    }

    pub fn parse(text: &str) -> Result<PpFormula> {
        parse::parse_formula(text)
    }

    pub fn free_vars(&self) -> &[String] {
        &self.free_vars
    }

    pub fn bound_vars(&self) -> &[String] {
        &self.bound_vars
    }

    pub fn equations(&self) -> &[Vec<BigInt>] {
        &self.equations
    }

    pub fn arity(&self) -> usize {
        self.free_vars.len()
    }

    pub fn matrix_form(&self) -> MatrixForm {
        let f = self.free_vars.len();
        let b = self.bound_vars.len();
        let c = IntMatrix::from_rows(f, self.equations.iter().map(|e| e[..f].to_vec()).collect());
        let d = IntMatrix::from_rows(b, self.equations.iter().map(|e| e[f..].to_vec()).collect());
        MatrixForm { c, d }
    }

    fn require_unary(&self) -> Result<()> {
        if self.free_vars.len() != 1 {
            return Err(Error::Arity(self.free_vars.len()));
        }
        Ok(())
    }

    /// The `d >= 0` with `ψ[Z] = dZ`, for a formula in one free variable.
    pub fn integer_solution_generator(&self) -> Result<BigInt> {
        self.require_unary()?;
        let lattice = self.matrix_form().solution_lattice(&BigInt::zero());
        Ok(if lattice.rows() == 0 {
            BigInt::zero()
        } else {
            lattice[(0, 0)].abs()
        })
    }

    /// Low means the solution set in `Z` itself is `{0}`.
    pub fn is_low(&self) -> Result<bool> {
        Ok(self.integer_solution_generator()?.is_zero())
    }

    /// Same equations with fresh variable names.
    fn renamed(&self, free: &[String], bound_prefix: &str) -> PpFormula {
        PpFormula {
            free_vars: free.to_vec(),
            bound_vars: (1..=self.bound_vars.len())
                .map(|i| format!("{bound_prefix}{i}"))
                .collect(),
            equations: self.equations.clone(),
        }
    }
}

impl MatrixForm {
    /// Lattice (HNF rows in `Z^f`) of free-variable values `x` for which
    /// `C x + D y ≡ 0 (mod modulus)` has an integer solution `y`; modulus 0
    /// means solving over `Z`. This is the solution set in `Z/modulus`, lifted.
    pub fn solution_lattice(&self, modulus: &BigInt) -> IntMatrix {
        let e = self.c.rows();
        let f = self.c.cols();
        let b = self.d.cols();
        let slack = if modulus.is_zero() { 0 } else { e };
        let width = f + b + slack;
        let mut a = IntMatrix::zeros(e, width);
        for i in 0..e {
            for j in 0..f {
                a[(i, j)] = self.c[(i, j)].clone();
            }
            for j in 0..b {
                a[(i, f + j)] = self.d[(i, j)].clone();
            }
            if slack > 0 {
                a[(i, f + b + i)] = modulus.clone();
            }
        }
        let kernel = if e == 0 {
            IntMatrix::identity(width)
        } else {
            right_kernel(&a)
        };
        let projected = IntMatrix::from_rows(
            f,
            (0..kernel.rows())
                .map(|k| kernel.row(k)[..f].to_vec())
                .collect(),
        );
        hermite_normal_form(&projected).basis()
    }
}

/// `∃y ∃z (ψ1(y) ∧ ψ2(z) ∧ x = y + z)`.
pub fn sum_formulas(f1: &PpFormula, f2: &PpFormula) -> Result<PpFormula> {
    f1.require_unary()?;
    f2.require_unary()?;
    let (eq1, b1) = (&f1.equations, f1.bound_vars.len());
    let (eq2, b2) = (&f2.equations, f2.bound_vars.len());
    let a = f1.renamed(&["y".into()], "u");
    let b = f2.renamed(&["z".into()], "v");
    // Columns: x | y z | u.. | v..
    let width = 3 + b1 + b2;
    let mut equations = Vec::new();
    for eq in eq1 {
        let mut row = vec![BigInt::zero(); width];
        row[1] = eq[0].clone();
        row[3..3 + b1].clone_from_slice(&eq[1..1 + b1]);
        equations.push(row);
    }
    for eq in eq2 {
        let mut row = vec![BigInt::zero(); width];
        row[2] = eq[0].clone();
        for k in 0..b2 {
            row[3 + b1 + k] = eq[1 + k].clone();
        }
        equations.push(row);
    }
    let mut link = vec![BigInt::zero(); width];
    link[0] = BigInt::one();
    link[1] = -BigInt::one();
    link[2] = -BigInt::one();
    equations.push(link);
    let mut bound = vec!["y".to_string(), "z".to_string()];
    bound.extend(a.bound_vars);
    bound.extend(b.bound_vars);
    PpFormula::new(vec!["x".into()], bound, equations)
}

/// `∃y (ψ(y) ∧ x = r y)`.
pub fn scalar_formula(r: &BigInt, f: &PpFormula) -> Result<PpFormula> {
    f.require_unary()?;
    let b = f.bound_vars.len();
    let width = 2 + b;
    let mut equations: Vec<Vec<BigInt>> = f
        .equations
        .iter()
        .map(|eq| {
            let mut row = vec![BigInt::zero(); width];
            row[1] = eq[0].clone();
            row[2..2 + b].clone_from_slice(&eq[1..1 + b]);
            row
        })
        .collect();
    let mut link = vec![BigInt::zero(); width];
    link[0] = BigInt::one();
    link[1] = -r;
    equations.push(link);
    let mut bound = vec!["y".to_string()];
    bound.extend(f.renamed(&["y".into()], "u").bound_vars);
    PpFormula::new(vec!["x".into()], bound, equations)
}

impl fmt::Display for PpFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        parse::print_formula(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::big;

    fn p(s: &str) -> PpFormula {
        PpFormula::parse(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        let f = p("E y . x = 2*y");
        assert_eq!(f, PpFormula::from_i64(&["x"], &["y"], &[&[1, -2]]).unwrap());
        assert_eq!(p("2*x = 0"), PpFormula::from_i64(&["x"], &[], &[&[2]]).unwrap());
        let g = p("E y . (x = 2*y & 3*y = 0)");
        assert_eq!(
            g,
            PpFormula::from_i64(&["x"], &["y"], &[&[1, -2], &[0, 3]]).unwrap()
        );
    }

    #[test]
    fn normalize_examples() {
        let m = p("E y . x = 2*y").matrix_form();
        assert_eq!(m.c, IntMatrix::from_i64(&[&[1]]));
        assert_eq!(m.d, IntMatrix::from_i64(&[&[-2]]));
        let m = p("x = x").matrix_form();
        assert_eq!(m.c, IntMatrix::from_i64(&[&[0]]));
        assert_eq!(m.d.cols(), 0);
        let m = p("E y . (x = 2*y & 3*y = 0)").matrix_form();
        assert_eq!(m.c, IntMatrix::from_i64(&[&[1], &[0]]));
        assert_eq!(m.d, IntMatrix::from_i64(&[&[-2], &[3]]));
    }

    #[test]
    fn lowness_examples() {
        assert!(p("2*x = 0").is_low().unwrap());
        assert!(!p("E y . x = 2*y").is_low().unwrap());
        assert_eq!(p("E y . x = 2*y").integer_solution_generator().unwrap(), big(2));
        assert!(p("E y . (x = 2*y & 3*y = 0)").is_low().unwrap());
        assert!(!p("x = x").is_low().unwrap());
        assert!(matches!(p("x = y").is_low(), Err(Error::Arity(2))));
    }

    #[test]
    fn closure_constructions() {
        let s = sum_formulas(&p("2*x=0"), &p("3*x=0")).unwrap();
        assert_eq!(s, p("E y z . 2*y = 0 & 3*z = 0 & x = y + z"));
        assert!(s.is_low().unwrap());
        let t = scalar_formula(&big(0), &p("x=x")).unwrap();
        assert_eq!(t, p("E y . 0*y = 0 & x = 0*y"));
        assert!(t.is_low().unwrap());
        let u = scalar_formula(&big(2), &p("E y. x=3*y")).unwrap();
        assert_eq!(u, p("E y u1 . y = 3*u1 & x = 2*y"));
        assert_eq!(u.integer_solution_generator().unwrap(), big(6));
    }

    #[test]
    fn solution_lattice_mod_n() {
        // E y. x = 2y over Z/4: x ∈ {0, 2}, lifted lattice 2Z.
        let m = p("E y . x = 2*y").matrix_form();
        assert_eq!(m.solution_lattice(&big(4)), IntMatrix::from_i64(&[&[2]]));
        // ... and over Z/3 every x works.
        assert_eq!(m.solution_lattice(&big(3)), IntMatrix::from_i64(&[&[1]]));
    }
}

//! Lexer, recursive-descent parser and canonical printer for the formula DSL.
//!
//! ```text
//! formula := ["E" var+ "."] conj
//! conj    := item ("&" item)*
//! item    := "E" var+ "." conj | atom
//! atom    := lincomb "=" lincomb | "(" conj ")"
//! lincomb := ["-"] term (("+"|"-") term)*
//! term    := [coef "*"] var | coef        coef := int ["^" int]
//! ```
//!
//! A quantifier inside a conjunction scopes over everything to its right.
//! `∃` and `∧` are accepted as aliases of `E` and `&`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::PpFormula;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(String),
    Exists,
    Dot,
    And,
    Eq,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        let single = match c {
            '.' => Some(Tok::Dot),
            '&' | '∧' => Some(Tok::And),
            '=' => Some(Tok::Eq),
            '+' => Some(Tok::Plus),
            '-' | '−' => Some(Tok::Minus),
            '*' | '·' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '∃' => Some(Tok::Exists),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, line: l0, column: c0 });
            i += 1;
            column += 1;
        } else if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
        } else if c.is_whitespace() {
            i += 1;
            column += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            column += i - start;
            if !word.chars().all(|d| d.is_ascii_digit()) {
                return Err(Error::MalformedInteger(word));
            }
            out.push(Token { tok: Tok::Int(word), line: l0, column: c0 });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            column += i - start;
            let tok = if word == "E" { Tok::Exists } else { Tok::Ident(word) };
            out.push(Token { tok, line: l0, column: c0 });
        } else {
            return Err(Error::Syntax {
                line: l0,
                column: c0,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

/// Surface syntax tree; variables are still names.
enum Node {
    /// `lhs - rhs = 0` as (variable or constant, coefficient) terms.
    Equation(Vec<(Option<String>, BigInt)>),
    Conj(Vec<Node>),
    Exists(Vec<String>, Box<Node>),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let t = &self.toks[self.pos];
        Err(Error::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            self.error(format!("expected {what}, found {}", describe(self.peek())))
        }
    }

    fn quantifier(&mut self) -> Result<Node> {
        self.expect(Tok::Exists, "`E`")?;
        let mut vars = Vec::new();
        while let Tok::Ident(name) = self.peek().clone() {
            self.next();
            vars.push(name);
        }
        if vars.is_empty() {
            return self.error("expected a variable after `E`");
        }
        self.expect(Tok::Dot, "`.`")?;
        let body = self.conj()?;
        Ok(Node::Exists(vars, Box::new(body)))
    }

    fn conj(&mut self) -> Result<Node> {
        let mut items = Vec::new();
        loop {
            if *self.peek() == Tok::Exists {
                // The quantifier swallows the rest of the conjunction.
                items.push(self.quantifier()?);
                break;
            }
            items.push(self.atom()?);
            if *self.peek() == Tok::And {
                self.next();
            } else {
                break;
            }
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Node::Conj(items)
        })
    }

    fn atom(&mut self) -> Result<Node> {
        if *self.peek() == Tok::LParen {
            self.next();
            let inner = self.conj()?;
            self.expect(Tok::RParen, "`)`")?;
            return Ok(inner);
        }
        let mut terms = self.lincomb()?;
        self.expect(Tok::Eq, "`=`")?;
        for (v, c) in self.lincomb()? {
            terms.push((v, -c));
        }
        Ok(Node::Equation(terms))
    }

    fn lincomb(&mut self) -> Result<Vec<(Option<String>, BigInt)>> {
        let mut terms = Vec::new();
        let mut sign = BigInt::one();
        if *self.peek() == Tok::Minus {
            self.next();
            sign = -sign;
        }
        loop {
            let (v, c) = self.term()?;
            terms.push((v, sign * c));
            match self.peek() {
                Tok::Plus => sign = BigInt::one(),
                Tok::Minus => sign = -BigInt::one(),
                _ => break,
            }
            self.next();
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<(Option<String>, BigInt)> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.next();
                if *self.peek() == Tok::Star {
                    return Err(Error::UnboundCoefficient(name));
                }
                Ok((Some(name), BigInt::one()))
            }
            Tok::Int(_) => {
                let c = self.coefficient()?;
                if *self.peek() != Tok::Star {
                    return Ok((None, c));
                }
                self.next();
                match self.peek().clone() {
                    Tok::Ident(name) => {
                        self.next();
                        Ok((Some(name), c))
                    }
                    other => self.error(format!("expected a variable, found {}", describe(&other))),
                }
            }
            other => self.error(format!("expected a term, found {}", describe(&other))),
        }
    }

    fn coefficient(&mut self) -> Result<BigInt> {
        let base = self.int()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.next();
        let exp = self.int()?;
        let e = exp
            .to_u32()
            .filter(|&e| e <= 1 << 16)
            .ok_or_else(|| Error::MalformedInteger(format!("{base}^{exp}")))?;
        Ok(num_traits::pow(base, e as usize))
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek().clone() {
            Tok::Int(digits) => {
                self.next();
                digits
                    .parse::<BigInt>()
                    .map_err(|_| Error::MalformedInteger(digits))
            }
            other => self.error(format!("expected an integer, found {}", describe(&other))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(s) => format!("`{s}`"),
        Tok::Exists => "`E`".into(),
        Tok::Dot => "`.`".into(),
        Tok::And => "`&`".into(),
        Tok::Eq => "`=`".into(),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

enum Column {
    Free(String),
    Bound(String),
}

/// Resolves scopes into columns and collects equations.
struct Flattener {
    columns: Vec<Column>,
    free_index: HashMap<String, usize>,
    equations: Vec<HashMap<usize, BigInt>>,
    scopes: Vec<(String, usize)>,
}

impl Flattener {
    fn walk(&mut self, node: &Node) -> Result<()> {
        match node {
            Node::Equation(terms) => {
                let mut eq: HashMap<usize, BigInt> = HashMap::new();
                let mut constant = BigInt::zero();
                for (v, c) in terms {
                    match v {
                        None => constant += c,
                        Some(name) => {
                            let col = self.resolve(name);
                            *eq.entry(col).or_insert_with(BigInt::zero) += c;
                        }
                    }
                }
                if !constant.is_zero() {
                    return Err(Error::NonHomogeneous(constant.to_string()));
                }
                self.equations.push(eq);
            }
            Node::Conj(items) => {
                for item in items {
                    self.walk(item)?;
                }
            }
            Node::Exists(vars, body) => {
                let depth = self.scopes.len();
                for v in vars {
                    if self.scopes[depth..].iter().any(|(n, _)| n == v) {
                        return Err(Error::VariableClash(v.clone()));
                    }
                    self.columns.push(Column::Bound(v.clone()));
                    self.scopes.push((v.clone(), self.columns.len() - 1));
                }
                self.walk(body)?;
                self.scopes.truncate(depth);
            }
        }
        Ok(())
    }

    fn resolve(&mut self, name: &str) -> usize {
        if let Some((_, col)) = self.scopes.iter().rev().find(|(n, _)| n == name) {
            return *col;
        }
        if let Some(&col) = self.free_index.get(name) {
            return col;
        }
        self.columns.push(Column::Free(name.to_string()));
        self.free_index.insert(name.to_string(), self.columns.len() - 1);
        self.columns.len() - 1
    }
}

pub(super) fn parse_formula(text: &str) -> Result<PpFormula> {
    let mut parser = Parser { toks: lex(text)?, pos: 0 };
    let node = if *parser.peek() == Tok::Exists {
        parser.quantifier()?
    } else {
        parser.conj()?
    };
    if *parser.peek() != Tok::End {
        return parser.error(format!("unexpected {}", describe(parser.peek())));
    }
    let mut fl = Flattener {
        columns: Vec::new(),
        free_index: HashMap::new(),
        equations: Vec::new(),
        scopes: Vec::new(),
    };
    fl.walk(&node)?;

    let mut free_cols = Vec::new();
    let mut bound_cols = Vec::new();
    for (i, c) in fl.columns.iter().enumerate() {
        match c {
            Column::Free(_) => free_cols.push(i),
            Column::Bound(_) => bound_cols.push(i),
        }
    }
    let free_vars: Vec<String> = free_cols
        .iter()
        .map(|&i| match &fl.columns[i] {
            Column::Free(n) | Column::Bound(n) => n.clone(),
        })
        .collect();
    // Bound names shadowing a free name or each other get a numeric suffix.
    let mut taken: BTreeSet<String> = free_vars.iter().cloned().collect();
    let all_names: BTreeSet<String> = fl
        .columns
        .iter()
        .map(|c| match c {
            Column::Free(n) | Column::Bound(n) => n.clone(),
        })
        .collect();
    let mut bound_vars = Vec::new();
    for &i in &bound_cols {
        let Column::Bound(name) = &fl.columns[i] else { unreachable!() };
        let mut candidate = name.clone();
        let mut k = 1;
        while taken.contains(&candidate) || (candidate != *name && all_names.contains(&candidate)) {
            candidate = format!("{name}_{k}");
            k += 1;
        }
        taken.insert(candidate.clone());
        bound_vars.push(candidate);
    }
    let order: Vec<usize> = free_cols.iter().chain(&bound_cols).copied().collect();
    let equations = fl
        .equations
        .iter()
        .map(|eq| {
            order
                .iter()
                .map(|col| eq.get(col).cloned().unwrap_or_else(BigInt::zero))
                .collect()
        })
        .collect();
    PpFormula::new(free_vars, bound_vars, equations)
}

fn write_term(out: &mut String, first: bool, coef: &BigInt, var: &str) {
    let neg = coef.is_negative();
    let mag = coef.abs();
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if !mag.is_one() {
        out.push_str(&format!("{mag}*"));
    }
    out.push_str(var);
}

fn write_side(terms: &[(&BigInt, &str)]) -> String {
    let mut s = String::new();
    for (i, (c, v)) in terms.iter().enumerate() {
        write_term(&mut s, i == 0, c, v);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Canonical printing. Positive terms go left and negative terms (negated)
/// go right. If that would change the first-appearance order of the free
/// variables, the first equation lists every free variable on the left.
pub(super) fn print_formula(f: &PpFormula, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let names: Vec<&str> = f
        .free_vars
        .iter()
        .chain(&f.bound_vars)
        .map(String::as_str)
        .collect();
    let nfree = f.free_vars.len();
    let mut seen = Vec::new();
    for eq in &f.equations {
        for (j, c) in eq.iter().enumerate().take(nfree) {
            if !c.is_zero() && !seen.contains(&j) {
                seen.push(j);
            }
        }
    }
    let natural = seen == (0..nfree).collect::<Vec<_>>();
    let mut eqs: Vec<Vec<BigInt>> = f.equations.clone();
    if eqs.is_empty() && nfree > 0 {
        eqs.push(vec![BigInt::zero(); names.len()]);
    }

    if !f.bound_vars.is_empty() {
        write!(out, "E {} . ", f.bound_vars.join(" "))?;
    }
    for (i, eq) in eqs.iter().enumerate() {
        if i > 0 {
            write!(out, " & ")?;
        }
        let mut left: Vec<(BigInt, &str)> = Vec::new();
        let mut right: Vec<(BigInt, &str)> = Vec::new();
        for (j, c) in eq.iter().enumerate() {
            // The fallback lists every free variable on the left of equation 0.
            if (i == 0 && !natural && j < nfree) || c.is_positive() {
                left.push((c.clone(), names[j]));
            } else if c.is_negative() {
                right.push((-c, names[j]));
            }
        }
        let l: Vec<(&BigInt, &str)> = left.iter().map(|(c, v)| (c, *v)).collect();
        let r: Vec<(&BigInt, &str)> = right.iter().map(|(c, v)| (c, *v)).collect();
        write!(out, "{} = {}", write_side(&l), write_side(&r))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(s: &str) -> PpFormula {
        let f = PpFormula::parse(s).unwrap();
        let printed = f.to_string();
        let g = PpFormula::parse(&printed).unwrap_or_else(|e| panic!("{printed}: {e}"));
        assert_eq!(f, g, "printed as {printed}");
        f
    }

    #[test]
    fn printer_roundtrips() {
        for s in [
            "E y . x = 2*y",
            "x = x",
            "2*x = 0",
            "E y . (x = 2*y & 3*y = 0)",
            "y = 2*x",
            "x - y = 0 & z = z",
            "2*x=0 & E y. x=4*y",
            "E y. x = 2^3*y",
            "-x = 3*z",
        ] {
            roundtrip(s);
        }
        assert_eq!(PpFormula::parse("E y . x = 2*y").unwrap().to_string(), "E y . x = 2*y");
        assert_eq!(PpFormula::parse("x = x").unwrap().to_string(), "0*x = 0");
    }

    #[test]
    fn scoping_and_renaming() {
        let f = PpFormula::parse("x = 2*y & E x . y = 3*x").unwrap();
        assert_eq!(f.free_vars(), ["x", "y"]);
        assert_eq!(f.bound_vars(), ["x_1"]);
        let g = PpFormula::parse("E y . x = y & (E y . y = 2*x)").unwrap();
        assert_eq!(g.bound_vars(), ["y", "y_1"]);
        roundtrip("x = 2*y & E x . y = 3*x");
    }

    #[test]
    fn errors() {
        assert!(matches!(
            PpFormula::parse("x = 2*"),
            Err(Error::Syntax { line: 1, column: 7, .. })
        ));
        assert!(matches!(
            PpFormula::parse("x =\n  + y"),
            Err(Error::Syntax { line: 2, column: 3, .. })
        ));
        assert!(matches!(PpFormula::parse("y*x = 0"), Err(Error::UnboundCoefficient(_))));
        assert!(matches!(PpFormula::parse("2a*x = 0"), Err(Error::MalformedInteger(_))));
        assert!(matches!(PpFormula::parse("x = 1"), Err(Error::NonHomogeneous(_))));
        assert!(matches!(PpFormula::parse("E y y . x = y"), Err(Error::VariableClash(_))));
        assert!(PpFormula::parse("x = 3 - 3").is_ok());
    }
}

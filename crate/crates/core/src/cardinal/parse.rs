//! Cardinal expression syntax.
//!
//! ```text
//! expr  := prod ("+" prod)*
//! prod  := power (("*" | "·") power)*
//! power := atom ["^" power]                   right associative
//! atom  := int | aleph | beth | ident | "(" expr ")"
//! aleph := ("aleph" | "ℵ") (digits | "_" digits | "(" idx ")" | "ω" | "_ω")
//! idx   := digits | "ω" | "omega" | "w"
//! ```
//!
//! `λ κ μ ν θ` are read as the variables `lambda kappa mu nu theta`.

use num_bigint::BigUint;

use super::{CardinalExpr, Index};
use crate::error::{Error, Result};

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            line: 1,
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
            && !is_subscript_digit(self.chars[self.pos])
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn expr(&mut self) -> Result<CardinalExpr> {
        let mut terms = vec![self.prod()?];
        while self.eat('+') {
            terms.push(self.prod()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            CardinalExpr::Sum(terms)
        })
    }

    fn prod(&mut self) -> Result<CardinalExpr> {
        let mut terms = vec![self.power()?];
        while self.eat('*') || self.eat('·') {
            terms.push(self.power()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            CardinalExpr::Product(terms)
        })
    }

    fn power(&mut self) -> Result<CardinalExpr> {
        let base = self.atom()?;
        if self.eat('^') {
            let exp = self.power()?;
            return Ok(CardinalExpr::pow(base, exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<CardinalExpr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.error("expected `)`");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                Ok(CardinalExpr::Finite(digits.parse::<BigUint>().map_err(|_| Error::MalformedInteger(digits))?))
            }
            Some('ℵ') => {
                self.pos += 1;
                Ok(CardinalExpr::Aleph(self.index_suffix()?))
            }
            Some('ℶ') => {
                self.pos += 1;
                Ok(CardinalExpr::Beth(self.index_suffix()?))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                let w = self.word();
                for (prefix, aleph) in [("aleph", true), ("beth", false)] {
                    if let Some(rest) = w.strip_prefix(prefix) {
                        let idx = if rest.is_empty() {
                            self.index_suffix()?
                        } else if let Some(i) = parse_index_word(rest.trim_start_matches('_')) {
                            i
                        } else {
                            continue;
                        };
                        return Ok(if aleph {
                            CardinalExpr::Aleph(idx)
                        } else {
                            CardinalExpr::Beth(idx)
                        });
                    }
                }
                if w.is_empty() {
                    self.pos = start;
                    return self.error("expected a cardinal");
                }
                Ok(CardinalExpr::Var(
                    match w.as_str() {
                        "λ" => "lambda",
                        "κ" => "kappa",
                        "μ" => "mu",
                        "ν" => "nu",
                        "θ" => "theta",
                        other => other,
                    }
                    .to_string(),
                ))
            }
            Some(c) => self.error(format!("unexpected `{c}`")),
            None => self.error("unexpected end of input"),
        }
    }

    /// Index after `aleph`/`ℵ`: digits, subscript digits, `_n`, `(idx)` or `ω`.
    fn index_suffix(&mut self) -> Result<Index> {
        if self.pos < self.chars.len() && self.chars[self.pos] == '_' {
            self.pos += 1;
        }
        if self.pos < self.chars.len() && self.chars[self.pos] == '(' {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos] != ')' {
                self.pos += 1;
            }
            let inner: String = self.chars[start..self.pos].iter().collect();
            if !self.eat(')') {
                return self.error("expected `)`");
            }
            return parse_index_word(inner.trim()).map_or_else(|| self.error(format!("bad index `{inner}`")), Ok);
        }
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_ascii_digit()
                || is_subscript_digit(self.chars[self.pos])
                || self.chars[self.pos] == 'ω')
        {
            self.pos += 1;
        }
        let word: String = self.chars[start..self.pos].iter().collect();
        parse_index_word(&word).map_or_else(|| self.error("expected an index"), Ok)
    }
}

fn is_subscript_digit(c: char) -> bool {
    ('₀'..='₉').contains(&c)
}

fn parse_index_word(w: &str) -> Option<Index> {
    match w {
        "ω" | "omega" | "w" => return Some(Index::Omega),
        "" => return None,
        _ => {}
    }
    let digits: String = w
        .chars()
        .map(|c| {
            if is_subscript_digit(c) {
                char::from_digit(c as u32 - '₀' as u32, 10).unwrap()
            } else {
                c
            }
        })
        .collect();
    digits.parse::<u32>().ok().map(Index::Finite)
}

pub(super) fn parse_cardinal(text: &str) -> Result<CardinalExpr> {
    let mut cur = Cursor {
        chars: text.chars().collect(),
        pos: 0,
    };
    let e = cur.expr()?;
    if cur.peek().is_some() {
        return cur.error("trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spellings() {
        let a0 = CardinalExpr::aleph0();
        for s in ["aleph0", "aleph_0", "aleph(0)", "ℵ0", "ℵ₀", "ℵ_0"] {
            assert_eq!(parse_cardinal(s).unwrap(), a0, "{s}");
        }
        let bw = CardinalExpr::Beth(Index::Omega);
        for s in ["beth(ω)", "beth(omega)", "bethω", "ℶ_ω", "ℶω", "beth(w)"] {
            assert_eq!(parse_cardinal(s).unwrap(), bw, "{s}");
        }
        assert_eq!(parse_cardinal("λ").unwrap(), CardinalExpr::var("lambda"));
        assert_eq!(
            parse_cardinal("2^aleph0").unwrap(),
            CardinalExpr::pow(CardinalExpr::finite(2), a0)
        );
        assert!(parse_cardinal("2^").is_err());
        assert!(parse_cardinal("aleph(x)").is_err());
    }
}

//! Parser for the textual Laurent expression grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*      divisors must be unit monomials
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' exponent)?
//! atom   := integer | name | '(' expr ')'
//! exponent := '-'? integer | '(' '-'? integer ')'
//! ```

use num_bigint::BigInt;

use super::{LaurentError, LaurentPoly, Var};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Name(String),
    Sym(char),
}

struct Lexer<'a> {
    src: &'a str,
    tokens: Vec<(usize, Token)>,
}

impl<'a> Lexer<'a> {
    fn run(src: &'a str) -> Result<Vec<(usize, Token)>, LaurentError> {
        let mut lexer = Lexer { src, tokens: Vec::new() };
        let bytes = src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_ascii_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = lexer.src[start..i].parse().expect("digits");
                lexer.tokens.push((start, Token::Int(n)));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                lexer.tokens.push((start, Token::Name(lexer.src[start..i].to_string())));
            } else if "+-*/^()".contains(c) {
                lexer.tokens.push((i, Token::Sym(c)));
                i += 1;
            } else {
                return Err(error(i, format!("unexpected character {c:?}")));
            }
        }
        Ok(lexer.tokens)
    }
}

fn error(pos: usize, msg: impl Into<String>) -> LaurentError {
    LaurentError::Parse { pos, msg: msg.into() }
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let at = self.offset();
                let divisor = self.unary()?;
                if divisor.as_unit_monomial().is_none() {
                    return Err(error(at, "division is only allowed by monomials"));
                }
                acc = acc.div_exact(&divisor)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<LaurentPoly, LaurentError> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<LaurentPoly, LaurentError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let at = self.offset();
        let exp = self.exponent()?;
        base.pow(exp)
            .map_err(|_| error(at, "negative exponent on a non-monomial base"))
    }

    fn exponent(&mut self) -> Result<i64, LaurentError> {
        let parenthesized = self.eat('(');
        let negative = self.eat('-');
        let at = self.offset();
        let value = match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                i64::try_from(n).map_err(|_| error(at, "exponent out of range"))?
            }
            _ => return Err(error(at, "expected integer exponent")),
        };
        if parenthesized && !self.eat(')') {
            return Err(error(self.offset(), "expected ')'"));
        }
        Ok(if negative { -value } else { value })
    }

    fn atom(&mut self) -> Result<LaurentPoly, LaurentError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(LaurentPoly::constant(n))
            }
            Some(Token::Name(name)) => {
                self.pos += 1;
                Ok(LaurentPoly::var(Var::new(&name)?))
            }
            Some(Token::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(error(self.offset(), "expected ')'"));
                }
                Ok(inner)
            }
            Some(t) => Err(error(at, format!("unexpected token {t:?}"))),
            None => Err(error(at, "unexpected end of input")),
        }
    }
}

pub(super) fn parse(src: &str) -> Result<LaurentPoly, LaurentError> {
    let tokens = Lexer::run(src)?;
    let mut parser = Parser { tokens, pos: 0, end: src.len() };
    let value = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(error(parser.offset(), "trailing input"));
    }
    Ok(value)
}

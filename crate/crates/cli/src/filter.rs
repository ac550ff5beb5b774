//! Boolean filter expressions over class profiles, as accepted by
//! `inspect scan --filter`.
//!
//! ```text
//! expr   := or
//! or     := and ( ("||" | "or") and )*
//! and    := unary ( ("&&" | "and") unary )*
//! unary  := ("!" | "not") unary | "(" expr ")" | flag | value cmp value
//! value  := integer | field
//! field  := delta | abs | h | amb | D | f
//! flag   := two_elementary | almost_two_elementary | fundamental
//! ```

use std::fmt;

use smdiff::Profile;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Field {
    Delta,
    Abs,
    H,
    Ambiguous,
    Fundamental,
    Conductor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Flag {
    TwoElementary,
    AlmostTwoElementary,
    Fundamental,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Cmp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Value {
    Lit(i64),
    Field(Field),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Expr {
    True,
    Flag(Flag),
    Cmp(Value, Cmp, Value),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    pub position: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid filter at offset {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    Int(i64),
    Op(&'static str),
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if src[i..].starts_with("2-elementary") {
            i += "2-elementary".len();
            out.push((Token::Ident("2-elementary".into()), start));
        } else if c == '(' || c == ')' {
            out.push((if c == '(' { Token::LParen } else { Token::RParen }, start));
            i += 1;
        } else if c.is_ascii_digit() || (c == '-' && bytes.get(i + 1).is_some_and(|b| b.is_ascii_digit())) {
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let v = src[start..i]
                .parse()
                .map_err(|_| ParseError { message: "integer out of range".into(), position: start })?;
            out.push((Token::Int(v), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Token::Ident(src[start..i].to_owned()), start));
        } else {
            let op = ["&&", "||", "==", "!=", "<=", ">=", "<", ">", "!", "="]
                .into_iter()
                .find(|op| src[i..].starts_with(op))
                .ok_or_else(|| ParseError { message: format!("unexpected character {c:?}"), position: start })?;
            i += op.len();
            out.push((Token::Op(if op == "=" { "==" } else { op }), start));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(_, o)| *o)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { message: message.into(), position: self.offset() })
    }

    fn eat_keyword(&mut self, symbol: &str, word: &str) -> bool {
        let hit = match self.peek() {
            Some(Token::Op(op)) => *op == symbol,
            Some(Token::Ident(id)) => id == word,
            _ => false,
        };
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn or(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.and()?;
        while self.eat_keyword("||", "or") {
            lhs = Expr::Or(Box::new(lhs), Box::new(self.and()?));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat_keyword("&&", "and") {
            lhs = Expr::And(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat_keyword("!", "not") {
            return Ok(Expr::Not(Box::new(self.unary()?)));
        }
        if self.peek() == Some(&Token::LParen) {
            self.pos += 1;
            let e = self.or()?;
            if self.peek() != Some(&Token::RParen) {
                return self.error("expected ')'");
            }
            self.pos += 1;
            return Ok(e);
        }
        if let Some(Token::Ident(id)) = self.peek() {
            if let Some(flag) = flag(id) {
                self.pos += 1;
                return Ok(Expr::Flag(flag));
            }
        }
        let lhs = self.value()?;
        let cmp = match self.peek() {
            Some(Token::Op("==")) => Cmp::Eq,
            Some(Token::Op("!=")) => Cmp::Ne,
            Some(Token::Op("<")) => Cmp::Lt,
            Some(Token::Op("<=")) => Cmp::Le,
            Some(Token::Op(">")) => Cmp::Gt,
            Some(Token::Op(">=")) => Cmp::Ge,
            _ => return self.error("expected a comparison operator"),
        };
        self.pos += 1;
        let rhs = self.value()?;
        Ok(Expr::Cmp(lhs, cmp, rhs))
    }

    fn value(&mut self) -> Result<Value, ParseError> {
        let v = match self.peek() {
            Some(Token::Int(v)) => Value::Lit(*v),
            Some(Token::Ident(id)) => match field(id) {
                Some(f) => Value::Field(f),
                None => return self.error(format!("unknown field {id:?}")),
            },
            _ => return self.error("expected a field or an integer"),
        };
        self.pos += 1;
        Ok(v)
    }
}

fn field(name: &str) -> Option<Field> {
    Some(match name {
        "delta" => Field::Delta,
        "abs" => Field::Abs,
        "h" => Field::H,
        "amb" | "ambiguous" => Field::Ambiguous,
        "D" | "fund" => Field::Fundamental,
        "f" | "conductor" => Field::Conductor,
        _ => return None,
    })
}

fn flag(name: &str) -> Option<Flag> {
    Some(match name {
        "two_elementary" | "2-elementary" => Flag::TwoElementary,
        "almost_two_elementary" | "almost" => Flag::AlmostTwoElementary,
        "fundamental" => Flag::Fundamental,
        _ => return None,
    })
}

/// A parsed filter expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filter(Expr);

impl Filter {
    /// Parses `src`; an empty expression accepts everything.
    pub fn parse(src: &str) -> Result<Filter, ParseError> {
        let tokens = tokenize(src)?;
        if tokens.is_empty() {
            return Ok(Filter(Expr::True));
        }
        let mut p = Parser { tokens, pos: 0, end: src.len() };
        let e = p.or()?;
        if p.pos != p.tokens.len() {
            return p.error("unexpected trailing input");
        }
        Ok(Filter(e))
    }

    pub fn matches(&self, p: &Profile) -> bool {
        self.0.eval(p)
    }
}

impl Expr {
    fn eval(&self, p: &Profile) -> bool {
        match self {
            Expr::True => true,
            Expr::Flag(Flag::TwoElementary) => p.two_elementary,
            Expr::Flag(Flag::AlmostTwoElementary) => p.almost_two_elementary,
            Expr::Flag(Flag::Fundamental) => p.delta.is_fundamental(),
            Expr::Cmp(l, c, r) => {
                let (l, r) = (value(*l, p), value(*r, p));
                match c {
                    Cmp::Eq => l == r,
                    Cmp::Ne => l != r,
                    Cmp::Lt => l < r,
                    Cmp::Le => l <= r,
                    Cmp::Gt => l > r,
                    Cmp::Ge => l >= r,
                }
            }
            Expr::Not(e) => !e.eval(p),
            Expr::And(a, b) => a.eval(p) && b.eval(p),
            Expr::Or(a, b) => a.eval(p) || b.eval(p),
        }
    }
}

fn value(v: Value, p: &Profile) -> i64 {
    match v {
        Value::Lit(x) => x,
        Value::Field(Field::Delta) => p.value(),
        Value::Field(Field::Abs) => p.delta.abs() as i64,
        Value::Field(Field::H) => p.h as i64,
        Value::Field(Field::Ambiguous) => p.ambiguous_count as i64,
        Value::Field(Field::Fundamental) => p.delta.fundamental(),
        Value::Field(Field::Conductor) => p.delta.conductor(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use smdiff::discriminants::{class_profile, factor_discriminant};

    fn profile(d: i64) -> Profile {
        class_profile(&factor_discriminant(d).unwrap())
    }

    #[test]
    fn flags_and_comparisons() {
        let e = Filter::parse("two_elementary && h <= 16").unwrap();
        assert!(e.matches(&profile(-7392)));
        assert!(!e.matches(&profile(-23)));
        let e = Filter::parse("not fundamental and (f == 8 || D = -4)").unwrap();
        assert!(e.matches(&profile(-192)));
        assert!(e.matches(&profile(-16)));
        assert!(!e.matches(&profile(-4)));
        assert!(Filter::parse("delta > -100").unwrap().matches(&profile(-99)));
        assert!(Filter::parse("").unwrap().matches(&profile(-3)));
        assert!(Filter::parse("almost and !2-elementary").unwrap().matches(&profile(-39)));
    }

    #[test]
    fn precedence() {
        // and binds tighter than or
        let e = Filter::parse("h == 1 || h == 2 && abs > 400").unwrap();
        assert!(e.matches(&profile(-163)));
        assert!(!e.matches(&profile(-15)));
        assert!(e.matches(&profile(-427)));
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(Filter::parse("h <=").unwrap_err().position, 4);
        assert_eq!(Filter::parse("x == 1").unwrap_err().position, 0);
        assert!(Filter::parse("(h == 1").is_err());
        assert!(Filter::parse("h == 1 h").is_err());
        assert!(Filter::parse("h ~ 1").is_err());
    }
}

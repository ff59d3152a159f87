//! Problem files and polynomial expressions.
//!
//! ```text
//! # the standard example
//! ring(x, y)
//! field Q
//! I = [x^2, y^3 - x*y]
//! J = [ ]            # optional, defaults to (0)
//! a = [x, y]         # optional, defaults to the maximal ideal
//! ```
//!
//! Polynomials are sums of signed terms built from `*`, `^`, parentheses,
//! variables, integers and integer fractions such as `2/4`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Coeff, Field, Polynomial, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Eq,
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump(&mut chars);
            }
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                bump(&mut chars);
            }
            Tok::Int(s.parse().expect("digits"))
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                s.push(d);
                bump(&mut chars);
            }
            Tok::Ident(s)
        } else {
            bump(&mut chars);
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                '=' => Tok::Eq,
                other => {
                    return Err(Error::Syntax {
                        line: l,
                        column: col,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            }
        };
        out.push(Token {
            tok,
            line: l,
            column: col,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    names: &'a [String],
    ring: Ring,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let t = &self.tokens[self.pos];
        Err(Error::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() != tok {
            return self.error(format!("expected {what}"));
        }
        self.next();
        Ok(())
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.ring);
        let mut negate = match self.peek() {
            Tok::Plus => {
                self.next();
                false
            }
            Tok::Minus => {
                self.next();
                true
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            acc = if negate { acc.sub(&t)? } else { acc.add(&t)? };
            negate = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(acc),
            };
            self.next();
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.next();
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.next();
        match self.next().tok {
            Tok::Int(n) => {
                let n: u32 = n.try_into().map_err(|_| Error::Syntax {
                    line: self.tokens[self.pos - 1].line,
                    column: self.tokens[self.pos - 1].column,
                    message: "exponent too large".into(),
                })?;
                Ok(base.pow(n))
            }
            _ => {
                self.pos -= 1;
                self.error("expected an integer exponent")
            }
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let field = self.ring.field;
        match self.peek().clone() {
            Tok::Int(num) => {
                self.next();
                let mut den = BigInt::from(1);
                if *self.peek() == Tok::Slash {
                    self.next();
                    match self.next().tok {
                        Tok::Int(d) => den = d,
                        _ => {
                            self.pos -= 1;
                            return self.error("expected an integer denominator");
                        }
                    }
                }
                let c: Coeff = field.from_ratio(&num, &den).or_else(|e| self.error(e.to_string()))?;
                Ok(Polynomial::constant(self.ring, c))
            }
            Tok::Ident(name) => {
                self.next();
                let i = self
                    .names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or(Error::UnknownVariable(name))?;
                Polynomial::var(self.ring, i)
            }
            Tok::LParen => {
                self.next();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            _ => self.error("expected a number, a variable or `(`"),
        }
    }
}

/// Parses a single polynomial over `ring` whose variables are named `names`.
pub fn parse_polynomial(text: &str, names: &[String], ring: Ring) -> Result<Polynomial> {
    if names.len() != ring.nvars() {
        return Err(Error::Dimension {
            expected: ring.nvars(),
            found: names.len(),
        });
    }
    let mut p = Parser {
        tokens: lex(text)?,
        pos: 0,
        names,
        ring,
    };
    let f = p.expr()?;
    if *p.peek() != Tok::Eof {
        return p.error("trailing input after polynomial");
    }
    Ok(f)
}

/// A parsed problem: the ambient ring, the field and generators of I, J and 𝔞.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    pub variables: Vec<String>,
    pub field: Field,
    pub generators_i: Vec<Polynomial>,
    pub generators_j: Vec<Polynomial>,
    /// `None` means the maximal ideal (x₁, …, x_s).
    pub generators_a: Option<Vec<Polynomial>>,
}

#[derive(Serialize)]
struct SpecSummary<'a> {
    variables: &'a [String],
    field: String,
    i: Vec<String>,
    j: Vec<String>,
    a: Option<Vec<String>>,
}

impl ProblemSpec {
    /// Validates and assembles a problem. Generators must be nonzero, use the
    /// ring's variables and lie in the maximal ideal.
    pub fn new(
        variables: Vec<String>,
        field: Field,
        generators_i: Vec<Polynomial>,
        generators_j: Vec<Polynomial>,
        generators_a: Option<Vec<Polynomial>>,
    ) -> Result<ProblemSpec> {
        if variables.is_empty() {
            return Err(Error::InvalidArgument("ring needs at least one variable".into()));
        }
        for (i, v) in variables.iter().enumerate() {
            if variables[..i].contains(v) {
                return Err(Error::InvalidArgument(format!("variable `{v}` declared twice")));
            }
        }
        let ring = Ring::local(field, variables.len());
        let spec = ProblemSpec {
            variables,
            field,
            generators_i: generators_i.into_iter().map(|g| g.with_order(ring.order)).collect::<Result<_>>()?,
            generators_j: generators_j.into_iter().map(|g| g.with_order(ring.order)).collect::<Result<_>>()?,
            generators_a: generators_a
                .map(|a| a.into_iter().map(|g| g.with_order(ring.order)).collect::<Result<_>>())
                .transpose()?,
        };
        let all = spec
            .generators_i
            .iter()
            .chain(&spec.generators_j)
            .chain(spec.generators_a.iter().flatten());
        for g in all {
            if g.ring() != ring {
                return Err(Error::ContextMismatch);
            }
            if g.is_zero() {
                return Err(Error::InvalidArgument("zero generator".into()));
            }
            if g.ord().finite() == Some(0) {
                return Err(Error::UnitGenerator(spec.show(g)));
            }
        }
        if spec.generators_i.is_empty() {
            return Err(Error::InvalidArgument("I needs at least one generator".into()));
        }
        Ok(spec)
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    /// The local ring 𝕜[x]_(x) under the local degree-lex order.
    pub fn ring(&self) -> Ring {
        Ring::local(self.field, self.nvars())
    }

    /// Generators of 𝔞, defaulting to the variables.
    pub fn a_generators(&self) -> Vec<Polynomial> {
        match &self.generators_a {
            Some(a) => a.clone(),
            None => (0..self.nvars())
                .map(|i| Polynomial::var(self.ring(), i).expect("index in range"))
                .collect(),
        }
    }

    pub fn show(&self, f: &Polynomial) -> String {
        f.display_with(&self.variables).to_string()
    }

    /// Serializes back to the problem-file grammar.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let list = |gens: &[Polynomial]| gens.iter().map(|g| self.show(g)).collect::<Vec<_>>().join(", ");
        writeln!(out, "ring({})", self.variables.join(", ")).unwrap();
        writeln!(out, "field {}", self.field).unwrap();
        writeln!(out, "I = [{}]", list(&self.generators_i)).unwrap();
        if !self.generators_j.is_empty() {
            writeln!(out, "J = [{}]", list(&self.generators_j)).unwrap();
        }
        if let Some(a) = &self.generators_a {
            writeln!(out, "a = [{}]", list(a)).unwrap();
        }
        out
    }

    pub fn summary_json(&self) -> serde_json::Value {
        let list = |gens: &[Polynomial]| gens.iter().map(|g| self.show(g)).collect::<Vec<_>>();
        serde_json::to_value(SpecSummary {
            variables: &self.variables,
            field: self.field.to_string(),
            i: list(&self.generators_i),
            j: list(&self.generators_j),
            a: self.generators_a.as_deref().map(list),
        })
        .expect("summary serializes")
    }
}

/// Parses a problem file.
pub fn parse_problem(text: &str) -> Result<ProblemSpec> {
    let tokens = lex(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        names: &[],
        ring: Ring::local(Field::Rationals, 0),
    };

    match p.next().tok {
        Tok::Ident(s) if s == "ring" => {}
        _ => {
            p.pos = 0;
            return p.error("expected `ring(...)` declaration");
        }
    }
    p.expect(Tok::LParen, "`(`")?;
    let mut variables = Vec::new();
    loop {
        match p.next().tok {
            Tok::Ident(s) => variables.push(s),
            _ => {
                p.pos -= 1;
                return p.error("expected a variable name");
            }
        }
        match p.next().tok {
            Tok::Comma => continue,
            Tok::RParen => break,
            _ => {
                p.pos -= 1;
                return p.error("expected `,` or `)`");
            }
        }
    }

    if matches!(p.peek(), Tok::Ident(s) if s == "ring") {
        return Err(Error::DuplicateSection("ring".into()));
    }
    match p.next().tok {
        Tok::Ident(s) if s == "field" => {}
        _ => {
            p.pos -= 1;
            return p.error("expected `field` declaration");
        }
    }
    let field = match p.next().tok {
        Tok::Ident(s) if s == "Q" => Field::Rationals,
        Tok::Ident(s) if s == "Fp" => match p.next().tok {
            Tok::Int(n) => {
                let n: u64 = n.try_into().map_err(|_| Error::NonPrimeModulus(u64::MAX))?;
                Field::prime(n)?
            }
            _ => {
                p.pos -= 1;
                return p.error("expected a prime modulus after `Fp`");
            }
        },
        _ => {
            p.pos -= 1;
            return p.error("expected `Q` or `Fp <prime>`");
        }
    };

    let ring = Ring::local(field, variables.len());
    let names = variables.clone();
    let mut p = Parser {
        tokens: p.tokens,
        pos: p.pos,
        names: &names,
        ring,
    };
    let mut sections: [Option<Vec<Polynomial>>; 3] = [None, None, None];
    loop {
        let head = p.next();
        let slot = match &head.tok {
            Tok::Eof => break,
            Tok::Ident(s) if s == "I" => 0,
            Tok::Ident(s) if s == "J" => 1,
            Tok::Ident(s) if s == "a" => 2,
            Tok::Ident(s) if s == "ring" || s == "field" => return Err(Error::DuplicateSection(s.clone())),
            _ => {
                p.pos -= 1;
                return p.error("expected an ideal declaration `I = [...]`, `J = [...]` or `a = [...]`");
            }
        };
        if sections[slot].is_some() {
            return Err(Error::DuplicateSection(["I", "J", "a"][slot].into()));
        }
        p.expect(Tok::Eq, "`=`")?;
        p.expect(Tok::LBracket, "`[`")?;
        let mut gens = Vec::new();
        if *p.peek() != Tok::RBracket {
            loop {
                gens.push(p.expr()?);
                match p.next().tok {
                    Tok::Comma => continue,
                    Tok::RBracket => break,
                    _ => {
                        p.pos -= 1;
                        return p.error("expected `,` or `]`");
                    }
                }
            }
        } else {
            p.next();
        }
        sections[slot] = Some(gens);
    }
    let [i, j, a] = sections;
    let i = match i {
        Some(i) if !i.is_empty() => i,
        _ => return p.error("missing ideal declaration `I = [...]`"),
    };
    ProblemSpec::new(variables, field, i, j.unwrap_or_default(), a)
}

//! Tokenizer, recursive-descent parser and printer for the expression grammar.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// Line and column, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

impl Op {
    fn prec(self) -> u8 {
        match self {
            Op::Add | Op::Sub => 1,
            Op::Mul | Op::Div => 2,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Op::Add => " + ",
            Op::Sub => " - ",
            Op::Mul => "*",
            Op::Div => "/",
        }
    }
}

/// Syntax tree. Identifier positions are kept for error reporting and
/// ignored by equality.
#[derive(Clone, Debug)]
pub enum Ast {
    Int(BigInt),
    Ident(String, Pos),
    Zeta,
    Neg(Box<Ast>),
    Bin(Op, Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, i64),
    Cor(Vec<Ast>),
    II(Box<Ast>, Vec<Ast>, Box<Ast>),
    Li { n0: Option<u32>, idx: Vec<u32>, args: Vec<Ast> },
}

impl PartialEq for Ast {
    fn eq(&self, o: &Ast) -> bool {
        use Ast::*;
        match (self, o) {
            (Int(a), Int(b)) => a == b,
            (Ident(a, _), Ident(b, _)) => a == b,
            (Zeta, Zeta) => true,
            (Neg(a), Neg(b)) => a == b,
            (Bin(p, a, b), Bin(q, c, d)) => p == q && a == c && b == d,
            (Pow(a, e), Pow(b, f)) => e == f && a == b,
            (Cor(a), Cor(b)) => a == b,
            (II(a, m, b), II(c, n, d)) => a == c && m == n && b == d,
            (Li { n0: a, idx: i, args: x }, Li { n0: b, idx: j, args: y }) => a == b && i == j && x == y,
            _ => false,
        }
    }
}

impl Eq for Ast {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, Pos)>,
}

fn syntax(p: Pos, msg: impl Into<String>) -> Error {
    Error::Syntax { line: p.line, col: p.col, msg: msg.into() }
}

impl Lexer {
    fn run(src: &str) -> Result<Lexer> {
        let mut toks = Vec::new();
        let chars: Vec<char> = src.chars().collect();
        let (mut line, mut col) = (1, 1);
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let pos = Pos { line, col };
            if c == '\n' {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            if c.is_whitespace() {
                i += 1;
                col += 1;
                continue;
            }
            if c == '#' {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            let start = i;
            if c.is_ascii_digit() {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                toks.push((Tok::Int(s.parse().expect("digits")), pos));
            } else if c.is_alphabetic() || c == '_' {
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), pos));
            } else if "+-*/^(),;[]".contains(c) {
                i += 1;
                toks.push((Tok::Sym(c), pos));
            } else {
                return Err(syntax(pos, format!("unexpected character `{c}`")));
            }
            col += i - start;
        }
        toks.push((Tok::End, Pos { line, col }));
        Ok(Lexer { toks })
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected `{c}`, found {}", describe(self.peek()))))
        }
    }

    fn sum(&mut self) -> Result<Ast> {
        let mut lhs = self.prod()?;
        loop {
            let op = match self.peek() {
                Tok::Sym('+') => Op::Add,
                Tok::Sym('-') => Op::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.prod()?;
            lhs = Ast::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn prod(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Sym('*') => Op::Mul,
                Tok::Sym('/') => Op::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Ast::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        if self.eat('-') {
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast> {
        let mut base = self.atom()?;
        while self.eat('^') {
            let neg = self.eat('-');
            let p = self.pos();
            let e = match self.bump().0 {
                Tok::Int(n) => i64::try_from(n).map_err(|_| syntax(p, "exponent too large"))?,
                t => return Err(syntax(p, format!("expected integer exponent, found {}", describe(&t)))),
            };
            base = Ast::Pow(Box::new(base), if neg { -e } else { e });
        }
        Ok(base)
    }

    fn list(&mut self, close: char, stop: char) -> Result<Vec<Ast>> {
        let mut out = Vec::new();
        if *self.peek() == Tok::Sym(close) || *self.peek() == Tok::Sym(stop) {
            return Ok(out);
        }
        loop {
            out.push(self.sum()?);
            if !self.eat(',') {
                return Ok(out);
            }
        }
    }

    fn uint(&mut self) -> Result<u32> {
        let p = self.pos();
        match self.bump().0 {
            Tok::Int(n) => u32::try_from(n).map_err(|_| syntax(p, "index too large")),
            t => Err(syntax(p, format!("expected nonnegative integer, found {}", describe(&t)))),
        }
    }

    fn atom(&mut self) -> Result<Ast> {
        let (t, p) = self.bump();
        match t {
            Tok::Int(n) => Ok(Ast::Int(n)),
            Tok::Sym('(') => {
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "zeta" => Ok(Ast::Zeta),
                "cor" => {
                    self.expect('(')?;
                    let xs = self.list(')', ')')?;
                    self.expect(')')?;
                    if xs.len() < 2 {
                        return Err(Error::Arity(format!(
                            "{}:{}: cor needs at least 2 entries, got {}",
                            p.line,
                            p.col,
                            xs.len()
                        )));
                    }
                    Ok(Ast::Cor(xs))
                }
                "II" => {
                    self.expect('(')?;
                    let lo = self.sum()?;
                    if !self.eat(';') {
                        return Err(Error::Arity(format!("{}:{}: II needs two boundary points", p.line, p.col)));
                    }
                    let mid = self.list(';', ';')?;
                    self.expect(';')?;
                    let hi = self.sum()?;
                    self.expect(')')?;
                    Ok(Ast::II(Box::new(lo), mid, Box::new(hi)))
                }
                "Li" => {
                    self.expect('[')?;
                    let mut idx = vec![self.uint()?];
                    let mut n0 = None;
                    if self.eat(';') {
                        n0 = Some(idx[0]);
                        idx = vec![self.uint()?];
                    }
                    while self.eat(',') {
                        idx.push(self.uint()?);
                    }
                    self.expect(']')?;
                    self.expect('(')?;
                    let args = self.list(')', ')')?;
                    self.expect(')')?;
                    if idx.contains(&0) {
                        return Err(Error::Arity(format!("{}:{}: Li indices must be positive", p.line, p.col)));
                    }
                    if args.len() != idx.len() {
                        return Err(Error::Arity(format!(
                            "{}:{}: Li with {} indices takes {} arguments, got {}",
                            p.line,
                            p.col,
                            idx.len(),
                            idx.len(),
                            args.len()
                        )));
                    }
                    Ok(Ast::Li { n0, idx, args })
                }
                _ => Ok(Ast::Ident(name, p)),
            },
            t => Err(syntax(p, format!("unexpected {}", describe(&t)))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("`{n}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::End => "end of input".into(),
    }
}

/// Parses one expression.
pub fn parse(src: &str) -> Result<Ast> {
    let toks = Lexer::run(src)?.toks;
    let mut p = Parser { toks, at: 0 };
    let e = p.sum()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.pos(), format!("unexpected {}", describe(p.peek()))));
    }
    Ok(e)
}

impl Ast {
    fn prec(&self) -> u8 {
        match self {
            Ast::Bin(op, ..) => op.prec(),
            Ast::Neg(_) => 3,
            Ast::Pow(..) => 4,
            _ => 5,
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, xs: &[Ast]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

fn write_wrapped(f: &mut fmt::Formatter<'_>, e: &Ast, paren: bool) -> fmt::Result {
    if paren {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ast::Int(n) => write!(f, "{n}"),
            Ast::Ident(s, _) => write!(f, "{s}"),
            Ast::Zeta => write!(f, "zeta"),
            Ast::Neg(e) => {
                write!(f, "-")?;
                write_wrapped(f, e, e.prec() < 3)
            }
            Ast::Bin(op, a, b) => {
                write_wrapped(f, a, a.prec() < op.prec())?;
                write!(f, "{}", op.symbol())?;
                write_wrapped(f, b, b.prec() <= op.prec())
            }
            Ast::Pow(b, e) => {
                write_wrapped(f, b, b.prec() < 4)?;
                write!(f, "^{e}")
            }
            Ast::Cor(xs) => {
                write!(f, "cor(")?;
                write_list(f, xs)?;
                write!(f, ")")
            }
            Ast::II(a, m, b) => {
                write!(f, "II({a}; ")?;
                write_list(f, m)?;
                write!(f, "; {b})")
            }
            Ast::Li { n0, idx, args } => {
                write!(f, "Li[")?;
                if let Some(n0) = n0 {
                    write!(f, "{n0}; ")?;
                }
                let s: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
                write!(f, "{}](", s.join(", "))?;
                write_list(f, args)?;
                write!(f, ")")
            }
        }
    }
}

//! Form expressions.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | wedge
//! wedge := atom ('^' atom)*
//! atom  := INT | INT '/' INT | 'i' | 'w' | dz<k> | dzb<k> | e[<ints>] | '(' expr ')'
//! ```
//!
//! `*` multiplies by a function or a constant, so one operand must have
//! degree zero. `^` is the wedge product.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::form::{mono_name, Form, Mono};
use crate::scalar::{Ring, Scalar};
use crate::torus::{FourierForm, Mode, ModeSet};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expr {
    Num(BigRational),
    I,
    Omega,
    Dz(usize),
    Dzb(usize),
    Char(Mode),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Wedge(Box<Expr>, Box<Expr>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut pos = 0;
    while pos < chars.len() {
        let c = chars[pos];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            pos += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            pos += 1;
            continue;
        }
        let start = pos;
        let tok = if c.is_ascii_digit() {
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let digits: String = chars[start..pos].iter().collect();
            Tok::Int(digits.parse().expect("ascii digits"))
        } else if c.is_ascii_alphabetic() {
            while pos < chars.len() && chars[pos].is_ascii_alphanumeric() {
                pos += 1;
            }
            Tok::Ident(chars[start..pos].iter().collect())
        } else if "+-*^/()[],".contains(c) {
            pos += 1;
            Tok::Sym(c)
        } else {
            return Err(syntax(l0, c0, format!("unexpected character '{c}'")));
        };
        column += pos - start;
        out.push(Token {
            tok,
            line: l0,
            column: c0,
        });
    }
    out.push(Token {
        tok: Tok::Sym('$'),
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    n: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn at(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        let t = self.next();
        if t.tok == Tok::Sym(c) {
            Ok(())
        } else {
            Err(syntax(t.line, t.column, format!("expected '{c}', found {}", describe(&t.tok))))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.at('+') {
                self.next();
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.at('-') {
                self.next();
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.at('*') {
            self.next();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.at('-') {
            self.next();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let mut lhs = self.atom()?;
        while self.at('^') {
            self.next();
            lhs = Expr::Wedge(Box::new(lhs), Box::new(self.atom()?));
        }
        Ok(lhs)
    }

    fn index(&self, digits: &str, t: &Token) -> Result<usize> {
        let k: usize = digits
            .parse()
            .map_err(|_| syntax(t.line, t.column, format!("bad index in '{digits}'")))?;
        if k == 0 || k > self.n {
            return Err(Error::IndexOutOfRange {
                index: k,
                max: self.n,
                line: t.line,
                column: t.column,
            });
        }
        Ok(k)
    }

    fn atom(&mut self) -> Result<Expr> {
        let t = self.next();
        match &t.tok {
            Tok::Int(num) => {
                if self.at('/') {
                    self.next();
                    let d = self.next();
                    let Tok::Int(den) = d.tok else {
                        return Err(syntax(d.line, d.column, "expected a denominator"));
                    };
                    if den.is_zero() {
                        return Err(syntax(d.line, d.column, "zero denominator"));
                    }
                    Ok(Expr::Num(BigRational::new(num.clone(), den)))
                } else {
                    Ok(Expr::Num(BigRational::from_integer(num.clone())))
                }
            }
            Tok::Ident(name) => match name.as_str() {
                "i" => Ok(Expr::I),
                "w" => Ok(Expr::Omega),
                "e" => self.character(&t),
                _ => {
                    if let Some(k) = name.strip_prefix("dzb").filter(|s| !s.is_empty()) {
                        Ok(Expr::Dzb(self.index(k, &t)?))
                    } else if let Some(k) = name.strip_prefix("dz").filter(|s| !s.is_empty()) {
                        Ok(Expr::Dz(self.index(k, &t)?))
                    } else {
                        Err(syntax(t.line, t.column, format!("unknown symbol '{name}'")))
                    }
                }
            },
            Tok::Sym('(') => {
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            other => Err(syntax(t.line, t.column, format!("unexpected {}", describe(other)))),
        }
    }

    fn character(&mut self, head: &Token) -> Result<Expr> {
        self.expect('[')?;
        let mut k = Vec::new();
        loop {
            let negative = self.at('-');
            if negative {
                self.next();
            }
            let t = self.next();
            let Tok::Int(v) = t.tok else {
                return Err(syntax(t.line, t.column, "expected an integer mode entry"));
            };
            let v: i64 = i64::try_from(if negative { -v } else { v })
                .map_err(|_| syntax(t.line, t.column, "mode entry does not fit in 64 bits"))?;
            k.push(v);
            if self.at(',') {
                self.next();
                continue;
            }
            self.expect(']')?;
            break;
        }
        if k.len() != 2 * self.n {
            return Err(syntax(
                head.line,
                head.column,
                format!("character needs {} entries, found {}", 2 * self.n, k.len()),
            ));
        }
        Ok(Expr::Char(k))
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(v) => format!("integer {v}"),
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Sym('$') => "end of input".into(),
        Tok::Sym(c) => format!("'{c}'"),
    }
}

/// Parses `src` for complex dimension `n`.
pub fn parse_form(src: &str, n: usize) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        n,
    };
    let e = p.expr()?;
    let t = p.peek();
    if t.tok != Tok::Sym('$') {
        return Err(syntax(t.line, t.column, format!("unexpected {}", describe(&t.tok))));
    }
    Ok(e)
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Wedge(..) => 4,
            Expr::Num(q) if q.is_negative() => 3,
            _ => 5,
        }
    }

    fn write_at(&self, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.write_at(0, f)?;
            return write!(f, ")");
        }
        match self {
            Expr::Num(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Expr::I => write!(f, "i"),
            Expr::Omega => write!(f, "w"),
            Expr::Dz(k) => write!(f, "dz{k}"),
            Expr::Dzb(k) => write!(f, "dzb{k}"),
            Expr::Char(k) => {
                let parts: Vec<String> = k.iter().map(i64::to_string).collect();
                write!(f, "e[{}]", parts.join(","))
            }
            Expr::Neg(x) => {
                write!(f, "-")?;
                x.write_at(3, f)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write_at(1, f)?;
                write!(f, " {} ", if matches!(self, Expr::Add(..)) { '+' } else { '-' })?;
                b.write_at(2, f)
            }
            Expr::Mul(a, b) => {
                a.write_at(2, f)?;
                write!(f, "*")?;
                b.write_at(3, f)
            }
            Expr::Wedge(a, b) => {
                a.write_at(4, f)?;
                write!(f, "^")?;
                b.write_at(5, f)
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(0, f)
    }
}

/// What an expression is evaluated against.
#[derive(Clone, Copy)]
pub struct Env<'a> {
    pub n: usize,
    pub omega: Option<&'a Form>,
    pub modes: &'a ModeSet,
}

impl Expr {
    pub fn eval(&self, env: &Env<'_>) -> Result<FourierForm> {
        let n = env.n;
        let constant = |phi: Form| FourierForm::constant(phi);
        Ok(match self {
            Expr::Num(q) => constant(Form::constant(n, Scalar::real(q.clone()))),
            Expr::I => constant(Form::constant(n, Scalar::i())),
            Expr::Omega => match env.omega {
                Some(w) => constant(w.clone()),
                None => return Err(Error::Expression("'w' is not available here".into())),
            },
            Expr::Dz(k) => constant(Form::dz(n, *k)),
            Expr::Dzb(k) => constant(Form::dzb(n, *k)),
            Expr::Char(k) => {
                if !env.modes.contains(k) {
                    return Err(Error::ModeOverflow(k.clone()));
                }
                FourierForm::single(k.clone(), Form::one(n))
            }
            Expr::Neg(x) => -x.eval(env)?,
            Expr::Add(a, b) => a.eval(env)? + b.eval(env)?,
            Expr::Sub(a, b) => a.eval(env)? - b.eval(env)?,
            Expr::Mul(a, b) => {
                let (x, y) = (a.eval(env)?, b.eval(env)?);
                if !x.is_of_degree(0) && !y.is_of_degree(0) {
                    return Err(Error::Expression(format!("'*' needs a degree-zero operand in {self}")));
                }
                x.try_wedge(&y, env.modes)?
            }
            Expr::Wedge(a, b) => a.eval(env)?.try_wedge(&b.eval(env)?, env.modes)?,
        })
    }
}

/// Evaluates to a constant form, rejecting any nonconstant mode.
pub fn eval_constant(e: &Expr, env: &Env<'_>) -> Result<Form> {
    let x = e.eval(env)?;
    if !x.is_constant() {
        return Err(Error::Expression(format!("{e} is not a constant form")));
    }
    Ok(x.mean())
}

fn coefficient(c: &Scalar) -> String {
    let s = c.to_string();
    if s.starts_with('-') {
        format!("({s})")
    } else {
        s
    }
}

fn render_form(phi: &Form) -> String {
    if phi.is_zero() {
        return "0".into();
    }
    let n = phi.dim();
    let mut out = String::new();
    for (idx, (m, c)) in phi.terms().enumerate() {
        let (neg, mag) = if c.re().is_negative() || (c.re().is_zero() && c.im().is_negative()) {
            (true, -c.clone())
        } else {
            (false, c.clone())
        };
        match (idx, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let name = mono_name(n, *m);
        if *m == Mono::ONE {
            out.push_str(&coefficient(&mag));
        } else if mag == Scalar::one() {
            out.push_str(&name);
        } else {
            out.push_str(&format!("{}*{name}", coefficient(&mag)));
        }
    }
    out
}

/// Writes a Fourier form in the expression grammar, so that parsing and
/// evaluating the string gives back the same form.
pub fn render(x: &FourierForm) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (k, phi) in x.modes() {
        let body = render_form(phi);
        if k.iter().all(|&a| a == 0) {
            parts.push(body);
        } else {
            let entries: Vec<String> = k.iter().map(i64::to_string).collect();
            parts.push(format!("e[{}]*({body})", entries.join(",")));
        }
    }
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::standard_kahler_form;

    fn env(modes: &ModeSet) -> Env<'_> {
        Env {
            n: 2,
            omega: None,
            modes,
        }
    }

    #[test]
    fn standard_kahler_expression() {
        let modes = ModeSet::cube(2, 0).unwrap();
        let e = parse_form("i*(dz1^dzb1 + dz2^dzb2)", 2).unwrap();
        assert_eq!(eval_constant(&e, &env(&modes)).unwrap(), standard_kahler_form(2));
        let z = parse_form("dz1^dz1", 2).unwrap();
        assert!(z.eval(&env(&modes)).unwrap().is_zero());
    }

    #[test]
    fn diagnostics_carry_positions() {
        assert!(matches!(
            parse_form("dz1 +\n  dz3", 2),
            Err(Error::IndexOutOfRange { index: 3, max: 2, line: 2, column: 3 })
        ));
        assert!(matches!(parse_form("dz1 + ", 2), Err(Error::Syntax { line: 1, column: 7, .. })));
        assert!(matches!(parse_form("e[1,0]", 2), Err(Error::Syntax { .. })));
        assert!(matches!(parse_form("3/0", 2), Err(Error::Syntax { .. })));
        assert!(matches!(parse_form("dz1 # 2", 2), Err(Error::Syntax { column: 5, .. })));
    }

    #[test]
    fn star_needs_a_function() {
        let modes = ModeSet::cube(2, 1).unwrap();
        let ok = parse_form("e[1,0,0,0]*dz1 - 2*dzb2", 2).unwrap();
        assert!(ok.eval(&env(&modes)).is_ok());
        let bad = parse_form("dz1*dzb1", 2).unwrap();
        assert!(matches!(bad.eval(&env(&modes)), Err(Error::Expression(_))));
        let far = parse_form("e[1,0,0,0]^e[1,0,0,0]", 2).unwrap();
        assert!(matches!(far.eval(&env(&modes)), Err(Error::ModeOverflow(_))));
    }

    #[test]
    fn printing_round_trips() {
        for src in [
            "1 - (2 - 3)",
            "-(dz1 + dz2)^dzb1",
            "--dz1",
            "(1/2 - 3*i)*e[1,-1,0,0]^dz1^dzb2",
            "2*(3*i)",
            "w^w - w",
        ] {
            let e = parse_form(src, 2).unwrap();
            assert_eq!(parse_form(&e.to_string(), 2).unwrap(), e, "{src} -> {e}");
        }
    }

    #[test]
    fn rendered_forms_reparse() {
        let modes = ModeSet::cube(2, 1).unwrap();
        let e = parse_form("(1/2 - 3*i)*e[1,-1,0,0]*dz1^dzb2 - i + -2*i*dzb1", 2).unwrap();
        let x = e.eval(&env(&modes)).unwrap();
        let back = parse_form(&render(&x), 2).unwrap().eval(&env(&modes)).unwrap();
        assert_eq!(back, x);
    }
}

//! Literal grammars for the CLI: series, polynomials, field descriptors.
//!
//! Series terms look like `coeff '*'? 't' '^' '(' rational ')'` joined by
//! `+`/`-`, with an optional trailing `+ O(t^(rational))`. Coefficients are
//! integers (reduced mod p), the extension-field generator `g`, or
//! `s`-rational-function literals in brackets. Polynomials join series
//! coefficients with `*X^k`. General subexpressions with parentheses and
//! division are accepted; division is carried out to the working precision.

use crate::descriptor::FieldDescriptor;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::fq::Fq;
use crate::group::ValueGroupDesc;
use crate::poly::Poly;
use crate::residue::{ResElem, ResidueField};
use crate::series::{Ctx, Series};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(u64),
    Ident(char),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    End,
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Lexer {
    fn new(input: &str) -> Result<Lexer> {
        let mut toks = Vec::new();
        let bytes: Vec<char> = input.chars().collect();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            let start = i;
            match c {
                ' ' | '\t' | '\n' => {
                    i += 1;
                    continue;
                }
                '0'..='9' => {
                    let mut v: u64 = 0;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        v = v
                            .checked_mul(10)
                            .and_then(|v| v.checked_add(bytes[i] as u64 - '0' as u64))
                            .ok_or(Error::ParseError {
                                pos: start,
                                msg: "integer literal too large".into(),
                            })?;
                        i += 1;
                    }
                    toks.push((start, Tok::Int(v)));
                    continue;
                }
                't' | 's' | 'g' | 'X' | 'O' => toks.push((start, Tok::Ident(c))),
                '+' => toks.push((start, Tok::Plus)),
                '-' | '−' => toks.push((start, Tok::Minus)),
                '*' => toks.push((start, Tok::Star)),
                '/' => toks.push((start, Tok::Slash)),
                '^' => toks.push((start, Tok::Caret)),
                '(' => toks.push((start, Tok::LParen)),
                ')' => toks.push((start, Tok::RParen)),
                '[' => toks.push((start, Tok::LBracket)),
                ']' => toks.push((start, Tok::RBracket)),
                _ => {
                    return Err(Error::ParseError {
                        pos: start,
                        msg: format!("unexpected character `{c}`"),
                    })
                }
            }
            i += 1;
        }
        toks.push((bytes.len(), Tok::End));
        Ok(Lexer { toks, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn here(&self) -> usize {
        self.toks[self.pos].0
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.next();
            Ok(())
        } else {
            Err(Error::ParseError { pos: self.here(), msg: format!("expected {what}") })
        }
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::ParseError { pos: self.here(), msg: msg.into() })
    }
}

/// Values during expression evaluation: a series or a polynomial in X.
#[derive(Clone)]
enum Value {
    S(Series),
    P(Poly),
}

struct ExprParser<'a> {
    lex: Lexer,
    ctx: &'a Ctx,
    work: Exponent,
    allow_x: bool,
}

impl<'a> ExprParser<'a> {
    fn promote(&self, v: Value) -> Poly {
        match v {
            Value::P(p) => p,
            Value::S(s) => Poly::new(self.ctx, vec![s]),
        }
    }

    fn add(&self, a: Value, b: Value) -> Result<Value> {
        Ok(match (a, b) {
            (Value::S(x), Value::S(y)) => Value::S(x.add(&y)?),
            (a, b) => Value::P(self.promote(a).add(&self.promote(b))?),
        })
    }

    fn mul(&self, a: Value, b: Value) -> Result<Value> {
        Ok(match (a, b) {
            (Value::S(x), Value::S(y)) => Value::S(x.mul(&y)?),
            (a, b) => Value::P(self.promote(a).mul(&self.promote(b))?),
        })
    }

    fn neg(&self, a: Value) -> Value {
        match a {
            Value::S(x) => Value::S(x.neg()),
            Value::P(x) => Value::P(x.neg()),
        }
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = if *self.lex.peek() == Tok::Minus {
            self.lex.next();
            let t = self.term()?;
            self.neg(t)
        } else {
            self.term()?
        };
        loop {
            match self.lex.peek() {
                Tok::Plus => {
                    self.lex.next();
                    let t = self.term()?;
                    acc = self.add(acc, t)?;
                }
                Tok::Minus => {
                    self.lex.next();
                    let t = self.term()?;
                    let t = self.neg(t);
                    acc = self.add(acc, t)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.factor()?;
        loop {
            match self.lex.peek() {
                Tok::Star => {
                    self.lex.next();
                    let f = self.factor()?;
                    acc = self.mul(acc, f)?;
                }
                Tok::Slash => {
                    self.lex.next();
                    let f = self.factor()?;
                    let den = match f {
                        Value::S(s) => s,
                        Value::P(_) => return self.lex.err("cannot divide by a polynomial"),
                    };
                    let inv = den.invert_to(&self.work)?;
                    acc = self.mul(acc, Value::S(inv))?;
                }
                // implicit multiplication: `2t^3`, `(1+t)X`
                Tok::Ident(_) | Tok::LParen | Tok::LBracket => {
                    let f = self.factor()?;
                    acc = self.mul(acc, f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Value> {
        let base = self.primary()?;
        if *self.lex.peek() != Tok::Caret {
            return Ok(base);
        }
        self.lex.next();
        match base {
            Value::S(s) => {
                // t (a bare uniformizer power) accepts rational exponents
                if s == Series::uniformizer_pow(self.ctx, Exponent::from_int(1)) {
                    let e = self.exponent_atom()?;
                    if !self.ctx.group.contains(&e) {
                        return Err(Error::GroupTooSmall(e));
                    }
                    return Ok(Value::S(Series::uniformizer_pow(self.ctx, e)));
                }
                let e = self.nonneg_int_exponent()?;
                Ok(Value::S(s.pow(e)?))
            }
            Value::P(p) => {
                let e = self.nonneg_int_exponent()?;
                let mut acc = Poly::new(self.ctx, vec![Series::one(self.ctx)]);
                for _ in 0..e {
                    acc = acc.mul(&p)?;
                }
                Ok(Value::P(acc))
            }
        }
    }

    fn nonneg_int_exponent(&mut self) -> Result<u64> {
        let e = self.exponent_atom()?;
        match e.to_i64() {
            Some(k) if k >= 0 => Ok(k as u64),
            _ => self.lex.err("exponent here must be a nonnegative integer"),
        }
    }

    /// `(rational)` or a bare (possibly negated) integer.
    fn exponent_atom(&mut self) -> Result<Exponent> {
        let parens = *self.lex.peek() == Tok::LParen;
        if parens {
            self.lex.next();
        }
        let neg = if *self.lex.peek() == Tok::Minus {
            self.lex.next();
            true
        } else {
            false
        };
        let num = match self.lex.next() {
            Tok::Int(v) => v as i64,
            _ => return self.lex.err("expected an integer in exponent"),
        };
        let den = if parens && *self.lex.peek() == Tok::Slash {
            self.lex.next();
            match self.lex.next() {
                Tok::Int(v) if v > 0 => v as i64,
                _ => return self.lex.err("expected a positive denominator"),
            }
        } else {
            1
        };
        if parens {
            self.lex.expect(Tok::RParen, "`)` after exponent")?;
        }
        Ok(Exponent::new(if neg { -num } else { num }, den))
    }

    fn primary(&mut self) -> Result<Value> {
        match self.lex.peek().clone() {
            Tok::Int(v) => {
                self.lex.next();
                Ok(Value::S(Series::from_i64(self.ctx, v as i64)))
            }
            Tok::Ident('t') => {
                self.lex.next();
                Ok(Value::S(Series::uniformizer_pow(self.ctx, Exponent::from_int(1))))
            }
            Tok::Ident('s') => {
                self.lex.next();
                match &self.ctx.residue {
                    ResidueField::RatFns(k) => Ok(Value::S(Series::constant(
                        self.ctx,
                        ResElem::RatFn(k.var_elem()),
                    ))),
                    _ => self.lex.err("`s` needs an F_q(s) residue field"),
                }
            }
            Tok::Ident('g') => {
                self.lex.next();
                match &self.ctx.residue {
                    ResidueField::Fq(k) | ResidueField::AlgClosure(k) if k.degree() > 1 => Ok(
                        Value::S(Series::constant(self.ctx, ResElem::Fq(k.gen()))),
                    ),
                    _ => self.lex.err("`g` needs an extension residue field"),
                }
            }
            Tok::Ident('X') => {
                self.lex.next();
                if !self.allow_x {
                    return self.lex.err("`X` is only valid in polynomial literals");
                }
                Ok(Value::P(Poly::x_power(self.ctx, 1)))
            }
            Tok::Ident('O') => {
                self.lex.next();
                self.lex.expect(Tok::LParen, "`(` after O")?;
                match self.lex.next() {
                    Tok::Ident('t') => {}
                    _ => return self.lex.err("expected `t` inside O(...)"),
                }
                self.lex.expect(Tok::Caret, "`^` inside O(...)")?;
                let e = self.exponent_atom()?;
                self.lex.expect(Tok::RParen, "`)` closing O(...)")?;
                Ok(Value::S(Series::o_term(self.ctx, e)))
            }
            Tok::LParen => {
                self.lex.next();
                let v = self.expr()?;
                self.lex.expect(Tok::RParen, "`)`")?;
                Ok(v)
            }
            Tok::LBracket => {
                self.lex.next();
                let c = self.residue_literal()?;
                self.lex.expect(Tok::RBracket, "`]`")?;
                Ok(Value::S(Series::constant(self.ctx, c)))
            }
            _ => self.lex.err("expected a term"),
        }
    }

    /// Bracketed residue-field literal: an expression in `s` (or `g`) and
    /// integers, evaluated in the residue field.
    fn residue_literal(&mut self) -> Result<ResElem> {
        self.res_expr()
    }

    fn res_expr(&mut self) -> Result<ResElem> {
        let res = self.ctx.residue.clone();
        let mut acc = if *self.lex.peek() == Tok::Minus {
            self.lex.next();
            res.neg(&self.res_term()?)
        } else {
            self.res_term()?
        };
        loop {
            match self.lex.peek() {
                Tok::Plus => {
                    self.lex.next();
                    let t = self.res_term()?;
                    acc = res.add(&acc, &t);
                }
                Tok::Minus => {
                    self.lex.next();
                    let t = self.res_term()?;
                    acc = res.sub(&acc, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn res_term(&mut self) -> Result<ResElem> {
        let res = self.ctx.residue.clone();
        let mut acc = self.res_factor()?;
        loop {
            match self.lex.peek() {
                Tok::Star => {
                    self.lex.next();
                    let f = self.res_factor()?;
                    acc = res.mul(&acc, &f);
                }
                Tok::Slash => {
                    self.lex.next();
                    let f = self.res_factor()?;
                    if res.is_zero(&f) {
                        return self.lex.err("division by zero in residue literal");
                    }
                    acc = res.mul(&acc, &res.inv(&f));
                }
                Tok::Ident(_) | Tok::LParen => {
                    let f = self.res_factor()?;
                    acc = res.mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn res_factor(&mut self) -> Result<ResElem> {
        let res = self.ctx.residue.clone();
        let base = self.res_primary()?;
        if *self.lex.peek() != Tok::Caret {
            return Ok(base);
        }
        self.lex.next();
        let e = self.nonneg_int_exponent()?;
        Ok(res.pow(&base, e))
    }

    fn res_primary(&mut self) -> Result<ResElem> {
        let res = self.ctx.residue.clone();
        match self.lex.peek().clone() {
            Tok::Int(v) => {
                self.lex.next();
                Ok(res.from_i64(v as i64))
            }
            Tok::Ident('s') => {
                self.lex.next();
                match &res {
                    ResidueField::RatFns(k) => Ok(ResElem::RatFn(k.var_elem())),
                    _ => self.lex.err("`s` needs an F_q(s) residue field"),
                }
            }
            Tok::Ident('g') => {
                self.lex.next();
                match &res {
                    ResidueField::Fq(k) | ResidueField::AlgClosure(k) if k.degree() > 1 => {
                        Ok(ResElem::Fq(k.gen()))
                    }
                    _ => self.lex.err("`g` needs an extension residue field"),
                }
            }
            Tok::LParen => {
                self.lex.next();
                let v = self.res_expr()?;
                self.lex.expect(Tok::RParen, "`)`")?;
                Ok(v)
            }
            _ => self.lex.err("expected a residue-field term"),
        }
    }
}

pub fn parse_series(input: &str, ctx: &Ctx, work_precision: &Exponent) -> Result<Series> {
    let mut p = ExprParser {
        lex: Lexer::new(input)?,
        ctx,
        work: work_precision.clone(),
        allow_x: false,
    };
    let v = p.expr()?;
    p.lex.expect(Tok::End, "end of input")?;
    match v {
        Value::S(s) => Ok(s),
        Value::P(_) => unreachable!("X disabled in series context"),
    }
}

pub fn parse_poly(input: &str, ctx: &Ctx, work_precision: &Exponent) -> Result<Poly> {
    let mut p = ExprParser {
        lex: Lexer::new(input)?,
        ctx,
        work: work_precision.clone(),
        allow_x: true,
    };
    let v = p.expr()?;
    p.lex.expect(Tok::End, "end of input")?;
    Ok(match v {
        Value::P(f) => f,
        Value::S(s) => Poly::new(ctx, vec![s]),
    })
}

/// Field descriptor names: `F3((t))`, `F2(s)((t))`, `F3(t) t-adic`,
/// `perfect-hull F2`, `trivial F4`, `hahn F5 Q`, `hahn AC2 Q`.
pub fn parse_field(input: &str) -> Result<FieldDescriptor> {
    let s = input.trim();
    let unknown = || Error::UnknownField(s.to_string());

    if let Some(rest) = s.strip_prefix("perfect-hull") {
        let q = parse_fq_name(rest.trim()).ok_or_else(unknown)?;
        return FieldDescriptor::perfect_hull(q);
    }
    if let Some(rest) = s.strip_prefix("trivial") {
        let q = parse_fq_name(rest.trim()).ok_or_else(unknown)?;
        return FieldDescriptor::trivial(q);
    }
    if let Some(rest) = s.strip_prefix("hahn") {
        let mut parts = rest.trim().split_whitespace();
        let res_name = parts.next().ok_or_else(unknown)?;
        let grp_name = parts.next().ok_or_else(unknown)?;
        if parts.next().is_some() {
            return Err(unknown());
        }
        let residue = if let Some(p) = res_name.strip_prefix("AC") {
            let p: u64 = p.parse().map_err(|_| unknown())?;
            ResidueField::AlgClosure(Fq::with_order(p)?)
        } else {
            let q = parse_fq_name(res_name).ok_or_else(unknown)?;
            ResidueField::Fq(Fq::with_order(q)?)
        };
        let p = residue.p();
        let group = match grp_name {
            "Q" => ValueGroupDesc::Rationals,
            "Z" => ValueGroupDesc::integers(),
            g if g == format!("Z[1/{p}]") => ValueGroupDesc::PAdicDivisible(p),
            _ => return Err(unknown()),
        };
        return Ok(FieldDescriptor::hahn(residue, group));
    }
    // F<q>(s)((t)) | F<q>((t)) | F<q>(t) [t-adic] | F<q>
    if let Some(rest) = s.strip_prefix('F') {
        let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return Err(unknown());
        }
        let q: u64 = digits.parse().map_err(|_| unknown())?;
        let tail = rest[digits.len()..].trim();
        return match tail {
            "((t))" => FieldDescriptor::laurent(q),
            "(s)((t))" => FieldDescriptor::laurent_ratfn(q),
            "(t)" | "(t) t-adic" => FieldDescriptor::function_field(q),
            "" => FieldDescriptor::trivial(q),
            _ => Err(unknown()),
        };
    }
    Err(unknown())
}

fn parse_fq_name(s: &str) -> Option<u64> {
    s.strip_prefix('F')?.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::laurent_ctx;

    fn work() -> Exponent {
        Exponent::from_int(40)
    }

    #[test]
    fn spec_example_literal() {
        let ctx = crate::series::FieldCtx::new(
            ResidueField::Fq(Fq::prime(7)),
            ValueGroupDesc::Rationals,
            't',
        );
        let x = parse_series("1 + 2*t^(1/3) - t^2 + O(t^(5))", &ctx, &work()).unwrap();
        assert_eq!(x.terms().len(), 3);
        assert_eq!(x.precision(), Some(&Exponent::from_int(5)));
        assert_eq!(x.terms()[1].0, Exponent::new(1, 3));
        // round-trip through Display
        let y = parse_series(&x.to_string(), &ctx, &work()).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn division_to_precision() {
        let ctx = laurent_ctx(5).unwrap();
        let x = parse_series("1/(1 - t) + O(t^(3))", &ctx, &work()).unwrap();
        assert_eq!(x.to_string(), "1 + t^(1) + t^(2) + O(t^(3))");
    }

    #[test]
    fn poly_literals() {
        let ctx = laurent_ctx(3).unwrap();
        let f = parse_poly("X^2 - t", &ctx, &work()).unwrap();
        assert_eq!(f.degree(), 2);
        assert!(f.is_monic());
        let g = parse_poly("X^3 + (t^(1))*X + (2 + O(t^(4)))", &ctx, &work()).unwrap();
        assert_eq!(g.degree(), 3);
        assert_eq!(g.coeff(0).precision(), Some(&Exponent::from_int(4)));
    }

    #[test]
    fn bracketed_ratfn_coefficients() {
        let ctx = crate::series::rational_function_residue_ctx(2).unwrap();
        let x = parse_series("[s/(s+1)]*t^(2) + [s^2+1]", &ctx, &work()).unwrap();
        assert_eq!(x.terms().len(), 2);
        let y = parse_series(&x.to_string(), &ctx, &work()).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn extension_generator_coefficient() {
        let ctx = laurent_ctx(4).unwrap();
        let x = parse_series("g*t^(1) + g^2", &ctx, &work()).unwrap();
        assert_eq!(x.terms().len(), 2);
        let y = parse_series(&x.to_string(), &ctx, &work()).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn field_names() {
        assert_eq!(parse_field("F3((t))").unwrap().name, "F3((t))");
        assert_eq!(parse_field("F2(s)((t))").unwrap().name, "F2(s)((t))");
        assert_eq!(parse_field("perfect-hull F2").unwrap().name, "perfect-hull F2");
        assert_eq!(parse_field("F3(t) t-adic").unwrap().name, "F3(t) t-adic");
        assert_eq!(parse_field("trivial F4").unwrap().name, "trivial F4");
        assert_eq!(parse_field("hahn AC2 Q").unwrap().name, "hahn AC2 Q");
        assert_eq!(parse_field("hahn F5 Q").unwrap().name, "hahn F5 Q");
        assert!(matches!(parse_field("E8"), Err(Error::UnknownField(_))));
    }

    #[test]
    fn group_membership_enforced() {
        let ctx = laurent_ctx(3).unwrap();
        assert!(matches!(
            parse_series("t^(1/2)", &ctx, &work()),
            Err(Error::GroupTooSmall(_))
        ));
    }

    #[test]
    fn parse_error_position() {
        let ctx = laurent_ctx(3).unwrap();
        match parse_series("1 + ?", &ctx, &work()) {
            Err(Error::ParseError { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}

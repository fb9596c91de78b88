//! Expression grammar.
//!
//! ```text
//! input     := [rat '*'] head '(' list ',' list (';' | ',') arg ')'
//!            | 'rec' ':' field (';' field)*          fields u0, A, B
//! head      := <p>F<q> | F                           F alone is the script-F form
//! list      := '[' [param (',' param)*] ']'
//! param     := signed sum of rationals and at most one integer multiple of an atom
//! atom      := sqrt(<int>) | root(<poly>, <rat>, <rat>) | allroots(<poly>)
//! arg       := [rat ['*']] x ['/' int]
//! poly      := polynomial in n or t with implicit multiplication and ^
//! ```

use std::fmt;

use hypalg_core::exact::{int, PolyQ, Rational};
use hypalg_core::params::Form;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::InputError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Sqrt(u64),
    Root { poly: PolyQ, lo: Rational, hi: Rational },
    AllRoots(PolyQ),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Sqrt(n) => write!(f, "sqrt({n})"),
            Atom::Root { poly, lo, hi } => write!(f, "root({poly}, {lo}, {hi})"),
            Atom::AllRoots(poly) => write!(f, "allroots({poly})"),
        }
    }
}

/// `offset + k·atom`, or a plain rational when `term` is `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamExpr {
    pub offset: Rational,
    pub term: Option<(BigInt, Atom)>,
}

impl ParamExpr {
    pub fn rational(r: Rational) -> Self {
        ParamExpr { offset: r, term: None }
    }

    /// Number of parameters this entry stands for.
    pub fn arity(&self) -> usize {
        match &self.term {
            Some((_, Atom::AllRoots(p))) => p.deg(),
            _ => 1,
        }
    }
}

impl fmt::Display for ParamExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some((k, atom)) = &self.term else {
            return write!(f, "{}", self.offset);
        };
        let mag = k.abs();
        let scaled = if mag.is_one() { atom.to_string() } else { format!("{mag}*{atom}") };
        match (self.offset.is_zero(), k.is_negative()) {
            (true, false) => f.write_str(&scaled),
            (true, true) => write!(f, "-{scaled}"),
            (false, false) => write!(f, "{} + {scaled}", self.offset),
            (false, true) => write!(f, "{} - {scaled}", self.offset),
        }
    }
}

/// A parsed input, before any validation of the parameters themselves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputDocument {
    Hypergeometric { form: Form, top: Vec<ParamExpr>, bottom: Vec<ParamExpr>, scale: Rational, u0: Rational },
    Recurrence { a: PolyQ, b: PolyQ, u0: Rational },
}

fn list(ps: &[ParamExpr]) -> String {
    ps.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn arg(scale: &Rational) -> String {
    if scale.is_one() {
        "x".to_string()
    } else if *scale == -Rational::one() {
        "-x".to_string()
    } else {
        format!("{scale}*x")
    }
}

/// Prints the canonical expression; [`parse_expression`] reads it back to
/// an identical document.
impl fmt::Display for InputDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputDocument::Hypergeometric { form, top, bottom, scale, u0 } => {
                if !u0.is_one() {
                    write!(f, "{u0}*")?;
                }
                let head = match form {
                    Form::F => format!(
                        "{}F{}",
                        top.iter().map(ParamExpr::arity).sum::<usize>(),
                        bottom.iter().map(ParamExpr::arity).sum::<usize>()
                    ),
                    Form::ScriptF => "F".to_string(),
                };
                write!(f, "{head}([{}], [{}]; {})", list(top), list(bottom), arg(scale))
            }
            InputDocument::Recurrence { a, b, u0 } => {
                write!(f, "rec: u0={u0}; A={}; B={}", a.display_with("n"), b.display_with("n"))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    /// `<p>F<q>`
    Head(usize, usize),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, InputError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let err = |line, column, message: String| InputError::Syntax { line, column, message };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' {
                return Err(err(l0, c0 + i - start, "floating-point literals are not accepted; write p/q".into()));
            }
            let digits: String = chars[start..i].iter().collect();
            // `3F2`: digits, F, digits
            if i + 1 < chars.len() && chars[i] == 'F' && chars[i + 1].is_ascii_digit() {
                let mut j = i + 1;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let q: String = chars[i + 1..j].iter().collect();
                let bad = || err(l0, c0, "parameter count too large".into());
                let head = Tok::Head(digits.parse().map_err(|_| bad())?, q.parse().map_err(|_| bad())?);
                i = j;
                head
            } else {
                Tok::Num(digits.parse().expect("ascii digits"))
            }
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else {
            i += 1;
            match c {
                '−' => Tok::Sym('-'),
                '(' | ')' | '[' | ']' | ',' | ';' | ':' | '=' | '+' | '-' | '*' | '/' | '^' => Tok::Sym(c),
                _ => return Err(err(l0, c0, format!("unexpected character `{c}`"))),
            }
        };
        col += i - start;
        out.push(Token { tok, line: l0, column: c0 });
    }
    out.push(Token { tok: Tok::End, line, column: col });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, InputError> {
        Ok(Parser { toks: lex(text)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> InputError {
        let t = &self.toks[self.pos];
        InputError::Syntax { line: t.line, column: t.column, message: message.into() }
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Num(n) => format!("`{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Head(p, q) => format!("`{p}F{q}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of input".to_string(),
        }
    }

    fn is_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    fn eat(&mut self, c: char) -> bool {
        let hit = self.is_sym(c);
        if hit {
            self.next();
        }
        hit
    }

    fn expect(&mut self, c: char) -> Result<(), InputError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`, found {}", self.describe())))
        }
    }

    fn expect_end(&self) -> Result<(), InputError> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => Err(self.error(format!("unexpected {} after the end of the expression", self.describe()))),
        }
    }

    /// `num ['/' num]`
    fn unsigned_rational(&mut self) -> Result<Rational, InputError> {
        let Tok::Num(n) = self.peek().clone() else {
            return Err(self.error(format!("expected a number, found {}", self.describe())));
        };
        self.next();
        if self.is_sym('/') && matches!(self.peek_at(1), Tok::Num(_)) {
            self.next();
            let Tok::Num(d) = self.next() else { unreachable!() };
            if d.is_zero() {
                return Err(self.error("zero denominator"));
            }
            return Ok(Rational::new(n, d));
        }
        Ok(Rational::from_integer(n))
    }

    fn signed_rational(&mut self) -> Result<Rational, InputError> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let r = self.unsigned_rational()?;
        Ok(if neg { -r } else { r })
    }

    // ---- polynomials ----

    fn poly(&mut self) -> Result<PolyQ, InputError> {
        let mut acc = if self.eat('-') {
            -&self.poly_term()?
        } else {
            self.eat('+');
            self.poly_term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.poly_term()?;
            } else if self.eat('-') {
                acc = &acc - &self.poly_term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Num(_) | Tok::Ident(_)) || self.is_sym('(')
    }

    fn poly_term(&mut self) -> Result<PolyQ, InputError> {
        let mut acc = self.poly_power()?;
        loop {
            // an explicit `*` or juxtaposition
            if !self.eat('*') && !self.starts_factor() {
                return Ok(acc);
            }
            acc = &acc * &self.poly_power()?;
        }
    }

    fn poly_power(&mut self) -> Result<PolyQ, InputError> {
        let base = self.poly_primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.next() {
            Tok::Num(e) => {
                let e =
                    usize::try_from(e).ok().filter(|&e| e <= 512).ok_or_else(|| self.error("exponent too large"))?;
                Ok(base.pow(e))
            }
            _ => Err(self.error("expected a nonnegative integer exponent")),
        }
    }

    fn poly_primary(&mut self) -> Result<PolyQ, InputError> {
        match self.peek().clone() {
            Tok::Num(_) => Ok(PolyQ::constant(self.unsigned_rational()?)),
            Tok::Ident(v) if v == "n" || v == "t" => {
                self.next();
                Ok(PolyQ::from_ints(&[0, 1]))
            }
            Tok::Ident(v) => Err(self.error(format!("unknown variable `{v}`; polynomials use n or t"))),
            Tok::Sym('(') => {
                self.next();
                let p = self.poly()?;
                self.expect(')')?;
                Ok(p)
            }
            _ => Err(self.error(format!("expected a polynomial term, found {}", self.describe()))),
        }
    }

    // ---- parameters ----

    fn atom(&mut self) -> Result<Atom, InputError> {
        let (line, column) = (self.toks[self.pos].line, self.toks[self.pos].column);
        let Tok::Ident(name) = self.next() else {
            return Err(self.error("expected sqrt, root or allroots"));
        };
        match name.as_str() {
            "sqrt" => {
                self.expect('(')?;
                let Tok::Num(n) = self.next() else {
                    return Err(self.error("sqrt takes a positive integer"));
                };
                self.expect(')')?;
                let n = u64::try_from(n).map_err(|_| self.error("sqrt argument too large"))?;
                let r = num_integer::Roots::sqrt(&n);
                if n == 0 || r * r == n {
                    return Err(InputError::Syntax {
                        line,
                        column,
                        message: format!("sqrt({n}) is rational; write {r} instead"),
                    });
                }
                Ok(Atom::Sqrt(n))
            }
            "root" => {
                self.expect('(')?;
                let poly = self.poly()?;
                self.expect(',')?;
                let lo = self.signed_rational()?;
                self.expect(',')?;
                let hi = self.signed_rational()?;
                self.expect(')')?;
                Ok(Atom::Root { poly, lo, hi })
            }
            "allroots" => {
                self.expect('(')?;
                let poly = self.poly()?;
                self.expect(')')?;
                if poly.is_constant() {
                    return Err(InputError::Syntax { line, column, message: "allroots of a constant".into() });
                }
                Ok(Atom::AllRoots(poly))
            }
            _ => Err(InputError::NonAlgebraicParameter { name, line, column }),
        }
    }

    fn param(&mut self) -> Result<ParamExpr, InputError> {
        let mut offset = Rational::zero();
        let mut term: Option<(BigInt, Atom)> = None;
        let mut first = true;
        loop {
            let neg = if self.eat('-') {
                true
            } else if first || self.is_sym('+') {
                self.eat('+');
                false
            } else {
                break;
            };
            first = false;
            let (coef, atom) = match self.peek() {
                Tok::Num(_) => {
                    let r = self.unsigned_rational()?;
                    let has_atom = self.eat('*') || matches!(self.peek(), Tok::Ident(_));
                    if !has_atom {
                        offset += if neg { -r } else { r };
                        continue;
                    }
                    if !r.is_integer() {
                        return Err(self.error("only integer multiples of sqrt, root and allroots are allowed"));
                    }
                    (r.to_integer(), self.atom()?)
                }
                Tok::Ident(_) => (BigInt::one(), self.atom()?),
                _ => return Err(self.error(format!("expected a parameter, found {}", self.describe()))),
            };
            let coef = if neg { -coef } else { coef };
            term = match term {
                None => Some((coef, atom)),
                Some((k, a)) if a == atom => Some((k + coef, a)),
                Some(_) => return Err(self.error("a parameter may involve only one irrational atom")),
            };
        }
        let term = term.filter(|(k, _)| !k.is_zero());
        Ok(ParamExpr { offset, term })
    }

    fn param_list(&mut self) -> Result<Vec<ParamExpr>, InputError> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.eat(']') {
            return Ok(out);
        }
        loop {
            out.push(self.param()?);
            if self.eat(']') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    /// `[rat ['*']] x ['/' int]`
    fn argument(&mut self) -> Result<Rational, InputError> {
        let neg = self.eat('-');
        let mut scale = if matches!(self.peek(), Tok::Num(_)) {
            let r = self.unsigned_rational()?;
            self.eat('*');
            r
        } else {
            Rational::one()
        };
        match self.next() {
            Tok::Ident(x) if x == "x" => {}
            _ => return Err(self.error("expected the argument in the form c*x")),
        }
        if self.eat('/') {
            let d = self.unsigned_rational()?;
            if d.is_zero() {
                return Err(self.error("division by zero"));
            }
            scale /= d;
        }
        if scale.is_zero() {
            return Err(self.error("the argument scale must be nonzero"));
        }
        Ok(if neg { -scale } else { scale })
    }

    fn hypergeometric(&mut self) -> Result<InputDocument, InputError> {
        let u0 = if matches!(self.peek(), Tok::Num(_)) || self.is_sym('-') {
            let r = self.signed_rational()?;
            self.expect('*')?;
            r
        } else {
            Rational::one()
        };
        let head_at = self.pos;
        let (form, counts) = match self.next() {
            Tok::Head(p, q) => (Form::F, Some((p, q))),
            Tok::Ident(f) if f == "F" => (Form::ScriptF, None),
            _ => {
                self.pos = head_at;
                return Err(self.error(format!("expected pFq, F or rec:, found {}", self.describe())));
            }
        };
        self.expect('(')?;
        let top = self.param_list()?;
        self.expect(',')?;
        let bottom = self.param_list()?;
        if !self.eat(';') {
            self.expect(',')?;
        }
        let scale = self.argument()?;
        self.expect(')')?;
        self.expect_end()?;
        if let Some((p, q)) = counts {
            let head = format!("{p}F{q}");
            for (side, expected, got) in [("top", p, &top), ("bottom", q, &bottom)] {
                let got = got.iter().map(ParamExpr::arity).sum();
                if got != expected {
                    return Err(InputError::Arity { head: head.clone(), side, expected, got });
                }
            }
        }
        Ok(InputDocument::Hypergeometric { form, top, bottom, scale, u0 })
    }

    fn recurrence(&mut self) -> Result<InputDocument, InputError> {
        let (mut a, mut b, mut u0) = (None, None, None);
        loop {
            let Tok::Ident(name) = self.next() else {
                return Err(self.error("expected u0=, A= or B="));
            };
            self.expect('=')?;
            let slot_taken = match name.as_str() {
                "u0" => u0.replace(self.signed_rational()?).is_some(),
                "A" => a.replace(self.poly()?).is_some(),
                "B" => b.replace(self.poly()?).is_some(),
                _ => return Err(self.error(format!("unknown recurrence field `{name}`"))),
            };
            if slot_taken {
                return Err(self.error(format!("`{name}` given twice")));
            }
            if !self.eat(';') {
                break;
            }
            if *self.peek() == Tok::End {
                break;
            }
        }
        self.expect_end()?;
        let missing = |f: &str| self.error(format!("recurrence is missing `{f}`"));
        Ok(InputDocument::Recurrence {
            a: a.ok_or_else(|| missing("A"))?,
            b: b.ok_or_else(|| missing("B"))?,
            u0: u0.unwrap_or_else(|| int(1)),
        })
    }
}

/// Parses the expression form of an input.
pub fn parse_expression(text: &str) -> Result<InputDocument, InputError> {
    let mut p = Parser::new(text)?;
    if matches!(p.peek(), Tok::Ident(r) if r == "rec") && *p.peek_at(1) == Tok::Sym(':') {
        p.next();
        p.next();
        return p.recurrence();
    }
    p.hypergeometric()
}

/// Parses a single parameter such as `1 - 2*sqrt(3)`.
pub fn parse_param(text: &str) -> Result<ParamExpr, InputError> {
    let mut p = Parser::new(text)?;
    let e = p.param()?;
    p.expect_end()?;
    Ok(e)
}

/// Parses a polynomial in `n` or `t`.
pub fn parse_poly(text: &str) -> Result<PolyQ, InputError> {
    let mut p = Parser::new(text)?;
    let e = p.poly()?;
    p.expect_end()?;
    Ok(e)
}

/// Parses an exact rational `p/q`, `-p/q` or an integer.
pub fn parse_rational(text: &str) -> Result<Rational, InputError> {
    let mut p = Parser::new(text)?;
    let r = p.signed_rational()?;
    p.expect_end()?;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hypalg_core::exact::rat;

    #[test]
    fn param_forms() {
        let p = parse_param("1 - sqrt(2)").unwrap();
        assert_eq!(p, ParamExpr { offset: int(1), term: Some((BigInt::from(-1), Atom::Sqrt(2))) });
        assert_eq!(p.to_string(), "1 - sqrt(2)");
        assert_eq!(parse_param("sqrt(2)+1/2").unwrap().to_string(), "1/2 + sqrt(2)");
        assert_eq!(parse_param("-2sqrt(3)").unwrap().to_string(), "-2*sqrt(3)");
        assert_eq!(parse_param("3/4").unwrap(), ParamExpr::rational(rat(3, 4)));
        assert_eq!(parse_param("sqrt(2) - sqrt(2) + 1").unwrap(), ParamExpr::rational(int(1)));
        assert_eq!(parse_param("allroots(n^2+3)").unwrap().arity(), 2);
        assert!(parse_param("sqrt(2)+sqrt(3)").is_err());
        assert!(parse_param("sqrt(4)").is_err());
        assert!(parse_param("1/2*sqrt(2)").is_err());
    }

    #[test]
    fn polynomials() {
        let p = parse_poly("(14n+1)(14n+3)").unwrap();
        assert_eq!(p, PolyQ::from_ints(&[3, 56, 196]));
        assert_eq!(parse_poly("2*n^2 - 1/2").unwrap(), PolyQ::new(vec![rat(-1, 2), int(0), int(2)]));
        assert_eq!(parse_poly("-(n-1)^2").unwrap(), PolyQ::from_ints(&[-1, 2, -1]));
        let q = PolyQ::new(vec![rat(-9, 2), int(-10), rat(108, 7), int(112)]);
        assert_eq!(parse_poly(&q.display_with("n")).unwrap(), q);
    }

    #[test]
    fn heads_and_arguments() {
        let doc = parse_expression("3F2([1/2, 1+sqrt(2), 1-sqrt(2)], [sqrt(2), -sqrt(2)]; 4*x)").unwrap();
        let InputDocument::Hypergeometric { form, top, scale, u0, .. } = &doc else { panic!() };
        assert_eq!((*form, top.len(), scale.clone(), u0.clone()), (Form::F, 3, int(4), int(1)));
        let doc = parse_expression("F([1/3,1/2,2,4],[3/2,3,1,1]; x)").unwrap();
        assert!(matches!(doc, InputDocument::Hypergeometric { form: Form::ScriptF, .. }));
        let doc = parse_expression("2*2F1([1,1],[2]; x/4)").unwrap();
        assert!(
            matches!(&doc, InputDocument::Hypergeometric { u0, scale, .. } if *u0 == int(2) && *scale == rat(1, 4))
        );
        let doc = parse_expression("2F1([1,1],[2], -3x)").unwrap();
        assert!(matches!(&doc, InputDocument::Hypergeometric { scale, .. } if *scale == int(-3)));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_expression("2F1([pi,1],[2]; x)") {
            Err(InputError::NonAlgebraicParameter { name, line, column }) => {
                assert_eq!((name.as_str(), line, column), ("pi", 1, 6));
            }
            other => panic!("{other:?}"),
        }
        match parse_expression("2F1([1,1],\n  [2; x)") {
            Err(InputError::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expression("2F1([1],[2]; x)"), Err(InputError::Arity { side: "top", .. })));
        assert!(matches!(parse_expression("2F1([0.5,1],[2]; x)"), Err(InputError::Syntax { .. })));
    }

    #[test]
    fn recurrence() {
        let doc = parse_expression("rec: u0=1; A=2(2n+1)(n^2+2n-1); B=(n+1)(n^2-2)").unwrap();
        let InputDocument::Recurrence { a, b, u0 } = &doc else { panic!() };
        assert_eq!(*u0, int(1));
        assert_eq!(a.leading(), int(4));
        assert_eq!(b, &PolyQ::from_ints(&[-2, -2, 1, 1]));
        assert_eq!(parse_expression(&doc.to_string()).unwrap(), doc);
    }

    #[test]
    fn printing_round_trips() {
        for text in [
            "3F2([1/2, 1+sqrt(2), 1-sqrt(2)], [sqrt(2), -sqrt(2)]; 4*x)",
            "F([1/3,1/2,2,4],[3/2,3,1,1]; x)",
            "-3/2*5F4([1, 2*root(t^3-t-1, 1, 2) - 1/3, allroots(n^2+n+1), 1/2], [1, 2, 3, 4]; -x/7)",
            "F([], []; 2x)",
        ] {
            let doc = parse_expression(text).unwrap();
            assert_eq!(parse_expression(&doc.to_string()).unwrap(), doc, "{text}");
        }
    }
}

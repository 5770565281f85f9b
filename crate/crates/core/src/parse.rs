//! Recursive-descent parser for the expression grammar
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('+' | '-') unary | power
//! power := atom ('^' integer)?
//! atom  := integer | 'a' | variable | '(' expr ')'
//! ```
//!
//! `a` denotes the field generator. Values are exact; `/` between
//! polynomials produces a rational function.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::poly1::Poly1;
use crate::poly2::Poly2;
use crate::ratfunc::RatFunc;
use crate::var::Var;
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Poly1(Poly1),
    Poly2(Poly2),
    RatFunc(RatFunc),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Gen,
    Var(Var),
    Op(char),
    LParen,
    RParen,
}

fn tokenize(text: &str, allowed: &[Var]) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            let mut s = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                s.push(chars[i]);
                i += 1;
            }
            out.push((start, Tok::Int(s.parse().expect("digits"))));
            continue;
        } else if c == 'a' {
            Tok::Gen
        } else if c.is_ascii_lowercase() {
            let v = Var::new(c)?;
            if !allowed.contains(&v) {
                return Err(Error::Syntax {
                    pos: i,
                    msg: format!("variable '{c}' not allowed here"),
                });
            }
            Tok::Var(v)
        } else if "+-*/^".contains(c) {
            Tok::Op(c)
        } else if c == '(' {
            Tok::LParen
        } else if c == ')' {
            Tok::RParen
        } else {
            return Err(Error::Syntax {
                pos: i,
                msg: format!("unexpected character '{c}'"),
            });
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

/// Quotient of bivariate polynomials in fixed slot variables.
#[derive(Clone)]
struct Frac {
    num: Poly2,
    den: Poly2,
}

impl Frac {
    fn poly(p: Poly2) -> Frac {
        let den = Poly2::constant(p.field().one(), p.vars(), p.field());
        Frac { num: p, den }
    }

    fn reduce(num: Poly2, den: Poly2) -> Frac {
        if den.is_constant() {
            let inv = den.coeff(0, 0).inv().expect("nonzero");
            let vars = num.vars();
            let field = num.field().clone();
            return Frac {
                num: num.scale(&inv),
                den: Poly2::constant(field.one(), vars, &field),
            };
        }
        if let Some(q) = num.exact_div(&den) {
            return Frac::poly(q);
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        Frac { num, den }
    }

    fn add(&self, o: &Frac, sign: bool) -> Frac {
        let rhs = if sign { o.num.clone() } else { -&o.num };
        if self.den == o.den {
            return Frac::reduce(&self.num + &rhs, self.den.clone());
        }
        Frac::reduce(
            &(&self.num * &o.den) + &(&rhs * &self.den),
            &self.den * &o.den,
        )
    }

    fn mul(&self, o: &Frac) -> Frac {
        Frac::reduce(&self.num * &o.num, &self.den * &o.den)
    }

    fn pow(&self, e: u32) -> Frac {
        Frac {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: (Var, Var),
    field: &'a Field,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax {
            pos: self.here(),
            msg: msg.to_string(),
        })
    }

    fn constant(&self, c: FieldElem) -> Frac {
        Frac::poly(Poly2::constant(c, self.vars, self.field))
    }

    fn expr(&mut self) -> Result<Frac> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek() {
            let plus = *c == '+';
            self.pos += 1;
            let rhs = self.term()?;
            acc = acc.add(&rhs, plus);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Frac> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek() {
            let mul = *c == '*';
            let at = self.here();
            self.pos += 1;
            let rhs = self.unary()?;
            if mul {
                acc = acc.mul(&rhs);
            } else {
                if rhs.num.is_zero() {
                    return Err(Error::Syntax {
                        pos: at,
                        msg: "division by the zero polynomial".into(),
                    });
                }
                acc = acc.mul(&Frac {
                    num: rhs.den,
                    den: rhs.num,
                });
                acc = Frac::reduce(acc.num, acc.den);
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Frac> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                let v = self.unary()?;
                Ok(Frac {
                    num: -&v.num,
                    den: v.den,
                })
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Frac> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let Some(Tok::Int(n)) = self.peek().cloned() else {
                return self.err("expected a nonnegative integer exponent");
            };
            let Ok(e) = u32::try_from(n) else {
                return self.err("exponent too large");
            };
            self.pos += 1;
            if let Some(Tok::Op('^')) = self.peek() {
                return self.err("chained exponents need parentheses");
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Frac> {
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of input");
        };
        match tok {
            Tok::Int(n) => {
                self.pos += 1;
                let c = FieldElem::from_rat(num_rational::BigRational::from_integer(n), self.field);
                Ok(self.constant(c))
            }
            Tok::Gen => {
                let g = match self.field.generator() {
                    Ok(g) => g,
                    Err(_) => return self.err("generator 'a' requires a quadratic field"),
                };
                self.pos += 1;
                Ok(self.constant(g))
            }
            Tok::Var(v) => {
                self.pos += 1;
                let p = if v == self.vars.0 {
                    Poly2::x(self.vars, self.field)
                } else {
                    Poly2::y(self.vars, self.field)
                };
                Ok(Frac::poly(p))
            }
            Tok::LParen => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Tok::RParen | Tok::Op(_) => self.err("expected a number, variable or '('"),
        }
    }
}

/// Parses into a quotient over the slot variables `vars`.
fn parse_frac(text: &str, vars: (Var, Var), allowed: &[Var], field: &Field) -> Result<Frac> {
    if text.trim().is_empty() {
        return Err(Error::Syntax {
            pos: 0,
            msg: "empty expression".into(),
        });
    }
    let toks = tokenize(text, allowed)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.chars().count(),
        vars,
        field,
    };
    let v = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(v)
}

fn slot_pair(used: &[Var]) -> (Var, Var) {
    match used {
        [] => (Var::T, Var::S),
        [v] => (*v, if *v == Var::S { Var::T } else { Var::S }),
        [v, w, ..] => (*v, *w),
    }
}

fn to_poly1(p: &Poly2, var: Var) -> Poly1 {
    // second slot is unused
    let cols = p.as_poly_in_y();
    cols.first()
        .cloned()
        .unwrap_or_else(|| Poly1::zero(var, p.field()))
        .with_var(var)
}

/// Parses with variables drawn from `allowed`; the result kind follows the
/// variables that occur and whether a nontrivial denominator remains.
pub fn parse_expression(text: &str, allowed: &[Var], field: &Field) -> Result<Parsed> {
    let toks = tokenize(text, allowed)?;
    let mut used: Vec<Var> = Vec::new();
    for v in allowed {
        if toks.iter().any(|t| t.1 == Tok::Var(*v)) {
            used.push(*v);
        }
    }
    if used.len() > 2 {
        return Err(Error::Invalid("more than two variables".into()));
    }
    let vars = slot_pair(&used);
    let f = parse_frac(text, vars, allowed, field)?;
    if used.len() == 2 {
        if !f.den.is_constant() {
            return Err(Error::Invalid(
                "rational functions of two variables are not supported".into(),
            ));
        }
        return Ok(Parsed::Poly2(f.num));
    }
    let var = used.first().copied().or(allowed.first().copied()).unwrap_or(Var::T);
    let num = to_poly1(&f.num, var);
    let den = to_poly1(&f.den, var);
    if den.is_constant() {
        return Ok(Parsed::Poly1(num.scale(&den.lc().inv().expect("nonzero"))));
    }
    Ok(Parsed::RatFunc(RatFunc::new(num, den)?))
}

pub fn parse_poly1(text: &str, var: Var, field: &Field) -> Result<Poly1> {
    match parse_expression(text, &[var], field)? {
        Parsed::Poly1(p) => Ok(p.with_var(var)),
        _ => Err(Error::Invalid(format!("'{text}' is not a polynomial in {var}"))),
    }
}

pub fn parse_ratfunc(text: &str, var: Var, field: &Field) -> Result<RatFunc> {
    match parse_expression(text, &[var], field)? {
        Parsed::Poly1(p) => Ok(RatFunc::from_poly(p.with_var(var))),
        Parsed::RatFunc(r) => Ok(r),
        Parsed::Poly2(_) => Err(Error::Invalid(format!("'{text}' is not univariate"))),
    }
}

pub fn parse_poly2(text: &str, vars: (Var, Var), field: &Field) -> Result<Poly2> {
    let f = parse_frac(text, vars, &[vars.0, vars.1], field)?;
    if !f.den.is_constant() {
        return Err(Error::Invalid(format!("'{text}' is not a polynomial")));
    }
    Ok(f.num.with_vars(vars))
}

pub fn parse_field_elem(text: &str, field: &Field) -> Result<FieldElem> {
    let p = parse_poly1(text, Var::T, field)?;
    if !p.is_constant() {
        return Err(Error::Invalid(format!("'{text}' is not a constant")));
    }
    Ok(p.coeff(0))
}

/// `Q` for `"Q"`, `"rationals"` or an empty string; otherwise a quadratic
/// minimal polynomial such as `t^2+t+1` in any single variable.
pub fn parse_field(text: &str) -> Result<Field> {
    let text = text.trim();
    if text.is_empty() || text == "Q" || text == "rationals" {
        return Ok(Field::rationals());
    }
    let letter = text
        .chars()
        .find(|c| c.is_ascii_lowercase())
        .ok_or_else(|| Error::Invalid(format!("'{text}' has no variable")))?;
    let var = Var::new(letter)?;
    let p = parse_poly1(text, var, &Field::rationals())?;
    if p.deg() != 2 {
        return Err(Error::Invalid(format!(
            "minimal polynomial must be quadratic, got degree {}",
            p.deg()
        )));
    }
    let m = p.monic();
    let c = |i: usize| m.coeff(i).as_rational().cloned().expect("rational coefficients");
    Field::quadratic(c(0), c(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gundersen_function() {
        let q = parse_ratfunc("(t+1)/(t-1)^2", Var::T, &Field::rationals()).unwrap();
        assert_eq!(q.num().to_string(), "t+1");
        assert_eq!(q.den().to_string(), "t^2-2*t+1");
        assert_eq!(q.to_string(), "(t+1)/(t^2-2*t+1)");
    }

    #[test]
    fn quadric_text() {
        let k = parse_poly2("4*x^2+2*1*x*y+y^2-8*x", (Var::X, Var::Y), &Field::rationals()).unwrap();
        assert_eq!(k.to_string(), "4*x^2+2*x*y+y^2-8*x");
    }

    #[test]
    fn syntax_error_position() {
        let e = parse_poly1("t^", Var::T, &Field::rationals()).unwrap_err();
        assert_eq!(
            e,
            Error::Syntax {
                pos: 2,
                msg: "expected a nonnegative integer exponent".into()
            }
        );
        assert!(parse_poly1("t/0", Var::T, &Field::rationals()).is_err());
        assert!(parse_poly1("(t+1", Var::T, &Field::rationals()).is_err());
        assert!(parse_poly1("a*t", Var::T, &Field::rationals()).is_err());
    }

    #[test]
    fn field_elements() {
        let f = Field::eisenstein();
        let e = parse_field_elem("1/2+5/3*a", &f).unwrap();
        assert_eq!(e.to_string(), "1/2+5/3*a");
        let i3 = parse_field_elem("2*a+1", &f).unwrap();
        assert_eq!(i3.pow(2), f.int(-3));
        assert_eq!(parse_field_elem("-3/4", &f).unwrap(), f.frac(-3, 4));
    }

    #[test]
    fn precedence() {
        let f = Field::rationals();
        assert_eq!(parse_poly1("-t^2", Var::T, &f).unwrap().to_string(), "-t^2");
        assert_eq!(parse_poly1("2-3-4", Var::T, &f).unwrap().to_string(), "-5");
        assert_eq!(parse_poly1("12/3/2", Var::T, &f).unwrap().to_string(), "2");
        assert_eq!(parse_poly1("(t^2-1)/(t-1)", Var::T, &f).unwrap().to_string(), "t+1");
    }

    #[test]
    fn field_spec() {
        assert!(parse_field("Q").unwrap().is_rationals());
        assert_eq!(parse_field("t^2+t+1").unwrap(), Field::eisenstein());
        assert_eq!(parse_field("2*x^2+2").unwrap(), Field::gaussian());
        assert!(matches!(parse_field("t^2-1"), Err(Error::ReducibleMinpoly(_))));
        assert!(parse_field("t^3+2").is_err());
    }
}

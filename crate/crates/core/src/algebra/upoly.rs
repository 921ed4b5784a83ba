//! Dense univariate polynomials over ℚ, stored low degree first.
//!
//! These are the coordinate polynomials behind number field elements and the
//! text format for minimal polynomials and field elements.

use num_traits::{One, Zero};

use super::rational::{fmt_rational, is_negative, parse_rational, Rational};
use crate::error::{Error, Result};

pub(crate) type Poly = Vec<Rational>;

pub(crate) fn trim(p: &mut Poly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn degree(p: &Poly) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(&mut out);
    out
}

pub(crate) fn neg(a: &Poly) -> Poly {
    a.iter().map(|c| -c).collect()
}

pub(crate) fn sub(a: &Poly, b: &Poly) -> Poly {
    add(a, &neg(b))
}

pub(crate) fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by a nonzero `b`.
pub(crate) fn divrem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut r = a.clone();
    trim(&mut r);
    let mut q = vec![Rational::zero(); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let f = &r[dr] / &lead;
        let shift = dr - db;
        for (i, c) in b.iter().enumerate().take(db + 1) {
            r[shift + i] -= &f * c;
        }
        q[shift] = f;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// Returns `(g, s)` with `g = gcd(a, m)` monic and `s·a ≡ g (mod m)`.
pub(crate) fn gcd_cofactor(a: &Poly, m: &Poly) -> (Poly, Poly) {
    let (mut r0, mut r1) = (m.clone(), a.clone());
    let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![Rational::one()]);
    trim(&mut r1);
    while degree(&r1).is_some() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    let lead = r0[degree(&r0).expect("gcd of nonzero inputs")].clone();
    let g = r0.iter().map(|c| c / &lead).collect();
    let s = s0.iter().map(|c| c / &lead).collect();
    (g, s)
}

/// Renders `p` in the variable `var`, highest degree first, e.g. `2*a^2 + 4*a + 2`.
pub(crate) fn format(p: &Poly, var: &str) -> String {
    let mut out = String::new();
    for (k, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let negative = is_negative(c);
        let mag = if negative { -c } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if mono.is_empty() {
            out.push_str(&fmt_rational(&mag));
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}*{mono}", fmt_rational(&mag)));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parses a polynomial expression in one variable with rational coefficients.
///
/// Accepts `+ - * / ^` and parentheses; division only by nonzero constants.
pub(crate) fn parse(text: &str, var: &str) -> Result<Poly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        var,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    var: &'a str,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at offset {} in `{}`",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' {
                add(&acc, &rhs)
            } else {
                sub(&acc, &rhs)
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            if c == b'*' {
                acc = mul(&acc, &rhs);
            } else {
                match degree(&rhs) {
                    Some(0) => {
                        let d = rhs[0].clone();
                        acc = acc.iter().map(|x| x / &d).collect();
                    }
                    None => return Err(self.err("division by zero")),
                    Some(_) => return Err(self.err("division by a non-constant")),
                }
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(neg(&self.unary()?))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .ok()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| self.err("expected exponent"))?;
            let mut out = vec![Rational::one()];
            for _ in 0..e {
                out = mul(&out, &base);
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
                let q = parse_rational(s).ok_or_else(|| self.err("bad number"))?;
                let mut p = vec![q];
                trim(&mut p);
                Ok(p)
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii ident");
                if name != self.var {
                    self.pos = start;
                    return Err(self.err(&format!("unknown symbol `{name}`")));
                }
                Ok(vec![Rational::zero(), Rational::one()])
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{rat, ratio};

    #[test]
    fn parse_and_format() {
        let p = parse("x^3 + x^2 + x - 1", "x").unwrap();
        assert_eq!(p, vec![rat(-1), rat(1), rat(1), rat(1)]);
        assert_eq!(format(&p, "x"), "x^3 + x^2 + x - 1");
        let q = parse("-a - a^2", "a").unwrap();
        assert_eq!(format(&q, "a"), "-a^2 - a");
        let r = parse("(2*a + 1)/2 - 3/4", "a").unwrap();
        assert_eq!(r, vec![ratio(-1, 4), rat(1)]);
        assert!(parse("a + b", "a").is_err());
        assert!(parse("1/a", "a").is_err());
        assert_eq!(format(&Vec::new(), "a"), "0");
    }

    #[test]
    fn divrem_and_gcd() {
        let a = parse("x^3 - 1", "x").unwrap();
        let b = parse("x - 1", "x").unwrap();
        let (q, r) = divrem(&a, &b);
        assert_eq!(q, parse("x^2 + x + 1", "x").unwrap());
        assert!(r.is_empty());
        let m = parse("x^2 - 2*x - 1", "x").unwrap();
        let (g, s) = gcd_cofactor(&b, &m);
        assert_eq!(g, vec![rat(1)]);
        let (_, check) = divrem(&mul(&s, &b), &m);
        assert_eq!(check, vec![rat(1)]);
    }
}

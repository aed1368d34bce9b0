//! Plain-text format for polynomials and ideals.
//!
//! A document is a header line followed by one polynomial per line:
//!
//! ```text
//! ring GF(32003)[x0..x3] order grevlex
//! x0*x2 - x1^2
//! x0*x3 - x1*x2
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Printing then
//! parsing reproduces the same polynomials exactly.

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Poly;
use crate::ring::Ring;
use std::fmt::Write as _;
use std::sync::Arc;

/// Renders a polynomial with symmetric coefficients.
pub fn format_poly(f: &Poly) -> String {
    let ring = f.ring();
    let fp = ring.field();
    if f.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, &(m, c)) in f.terms().iter().enumerate() {
        let c = fp.to_signed(c);
        let (neg, a) = (c < 0, c.unsigned_abs());
        if k == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mut factors = Vec::new();
        if a != 1 || m == Monomial::ONE {
            factors.push(a.to_string());
        }
        for i in 0..ring.nvars() {
            match m.exp(i) {
                0 => {}
                1 => factors.push(ring.var_name(i).to_string()),
                e => factors.push(format!("{}^{}", ring.var_name(i), e)),
            }
        }
        s.push_str(&factors.join("*"));
    }
    s
}

fn order_name(o: &MonomialOrder) -> String {
    match o {
        MonomialOrder::Grevlex => "grevlex".into(),
        MonomialOrder::Lex => "lex".into(),
        MonomialOrder::Weighted(w) => {
            let ws: Vec<String> = w.iter().map(|x| x.to_string()).collect();
            format!("weights({})", ws.join(","))
        }
        MonomialOrder::Block(k) => format!("block({k})"),
    }
}

/// Header line describing a ring.
pub fn format_header(ring: &Ring) -> String {
    let n = ring.nvars();
    format!(
        "ring GF({})[x0..x{}] order {}",
        ring.field().p(),
        n.saturating_sub(1),
        order_name(ring.order())
    )
}

/// Serializes an ideal given by generators.
pub fn write_ideal(ring: &Ring, gens: &[Poly]) -> String {
    let mut s = format_header(ring);
    s.push('\n');
    for g in gens {
        let _ = writeln!(s, "{}", format_poly(g));
    }
    s
}

/// Parses a header line into a ring.
pub fn parse_header(line: &str) -> Result<Arc<Ring>> {
    let err = |m: &str| Error::Parse(format!("bad header `{line}`: {m}"));
    let rest = line.trim().strip_prefix("ring").ok_or_else(|| err("missing `ring`"))?.trim();
    let rest = rest.strip_prefix("GF(").ok_or_else(|| err("missing `GF(`"))?;
    let close = rest.find(')').ok_or_else(|| err("unclosed `GF(`"))?;
    let p: u32 = rest[..close].trim().parse().map_err(|_| err("bad prime"))?;
    let rest = rest[close + 1..].trim();
    let rest = rest.strip_prefix("[x0..x").ok_or_else(|| err("expected `[x0..x`"))?;
    let close = rest.find(']').ok_or_else(|| err("unclosed `[`"))?;
    let last: usize = rest[..close].trim().parse().map_err(|_| err("bad variable range"))?;
    let rest = rest[close + 1..].trim();
    let order = match rest.strip_prefix("order") {
        None if rest.is_empty() => MonomialOrder::Grevlex,
        None => return Err(err("expected `order`")),
        Some(o) => {
            let o = o.trim();
            if o == "grevlex" {
                MonomialOrder::Grevlex
            } else if o == "lex" {
                MonomialOrder::Lex
            } else if let Some(w) = o.strip_prefix("weights(").and_then(|w| w.strip_suffix(')')) {
                let ws: std::result::Result<Vec<u32>, _> =
                    w.split(',').map(|x| x.trim().parse::<u32>()).collect();
                MonomialOrder::Weighted(ws.map_err(|_| err("bad weights"))?)
            } else if let Some(k) = o.strip_prefix("block(").and_then(|w| w.strip_suffix(')')) {
                MonomialOrder::Block(k.trim().parse().map_err(|_| err("bad block size"))?)
            } else {
                return Err(err("unknown order"));
            }
        }
    };
    Ring::with_order(Fp::new(p)?, last + 1, order, None)
}

/// Parses a document into its ring and generators.
pub fn read_ideal(text: &str) -> Result<(Arc<Ring>, Vec<Poly>)> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("empty document".into()))?;
    let ring = parse_header(header)?;
    let gens = lines.map(|l| parse_poly(&ring, l)).collect::<Result<Vec<_>>>()?;
    Ok((ring, gens))
}

/// Parses one polynomial. Accepts integers, variables `x<i>`, parentheses
/// and the operators `+ - * ^`.
pub fn parse_poly(ring: &Arc<Ring>, s: &str) -> Result<Poly> {
    let mut p = Parser { ring, s: s.as_bytes(), pos: 0 };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.error("trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, m: &str) -> Error {
        Error::Parse(format!(
            "{m} at column {} in `{}`",
            self.pos + 1,
            String::from_utf8_lossy(self.s)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u128> {
        let start = self.pos;
        let mut v: u128 = 0;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add((self.s[self.pos] - b'0') as u128))
                .ok_or_else(|| self.error("integer too large"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected integer"));
        }
        Ok(v)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let f = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(f)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                let p = self.ring.field().p() as u128;
                Ok(Poly::constant(self.ring, (v % p) as u32))
            }
            Some(b'x') => {
                self.pos += 1;
                let i = self.integer()? as usize;
                if i >= self.ring.nvars() {
                    return Err(self.error("variable index out of range"));
                }
                Ok(Poly::var(self.ring, i))
            }
            _ => Err(self.error("unexpected token")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_twisted_cubic() {
        let doc = "ring GF(32003)[x0..x3] order grevlex\nx0*x2 - x1^2\nx0*x3 - x1*x2\nx1*x3 - x2^2\n";
        let (ring, gens) = read_ideal(doc).unwrap();
        assert_eq!(ring.nvars(), 4);
        assert_eq!(gens.len(), 3);
        let printed = write_ideal(&ring, &gens);
        assert!(printed.contains("-x1^2 + x0*x2"));
        let (ring2, gens2) = read_ideal(&printed).unwrap();
        assert_eq!(ring, ring2);
        assert_eq!(gens, gens2);
        assert_eq!(write_ideal(&ring2, &gens2), printed);
    }

    #[test]
    fn parses_expressions() {
        let ring = parse_header("ring GF(7)[x0..x1] order lex").unwrap();
        let f = parse_poly(&ring, "(x0 + x1)^2 - 2*x0*x1 + 15").unwrap();
        let g = parse_poly(&ring, "x0^2 + x1^2 + 1").unwrap();
        assert_eq!(f, g);
        assert_eq!(format_poly(&parse_poly(&ring, "6*x0").unwrap()), "-x0");
        assert!(parse_poly(&ring, "x2").is_err());
        assert!(parse_poly(&ring, "x0 +").is_err());
        assert!(parse_header("ring GF(8)[x0..x1]").is_err());
    }
}

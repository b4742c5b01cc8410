//! Element expressions: sums of signed terms `c`, `c s`, `c s^e`, `s^e`
//! where `s` is the ring symbol (`a` for cyclotomic, `t` for quadratic).
//! An optional `*` may separate a coefficient from the symbol.

use std::fmt;
use std::sync::Arc;

use kummerlab_core::cyclotomic::{CycElt, CycRing};
use kummerlab_core::exact::integer::Integer;
use kummerlab_core::quad::{QuadElt, QuadOrder};
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: expected {}, found {}", self.column, self.expected.join(" or "), self.found)
    }
}

impl std::error::Error for ParseError {}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    sym: char,
}

impl Parser {
    fn new(src: &str, sym: char) -> Self {
        Parser { chars: src.chars().collect(), pos: 0, sym }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn error(&mut self, expected: &[&str]) -> ParseError {
        let found = match self.peek() {
            Some(c) => format!("'{c}'"),
            None => "end of input".to_string(),
        };
        ParseError { column: self.pos + 1, expected: expected.iter().map(|s| s.to_string()).collect(), found }
    }

    fn number(&mut self) -> Option<Integer> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        (self.pos > start).then(|| {
            let s: String = self.chars[start..self.pos].iter().collect();
            s.parse().expect("ascii digits")
        })
    }

    fn power(&mut self) -> Result<u64, ParseError> {
        // symbol already consumed
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.pos += 1;
        let n = self.number().ok_or_else(|| self.error(&["exponent"]))?;
        u64::try_from(n).map_err(|_| ParseError {
            column: self.pos,
            expected: vec!["exponent below 2^64".into()],
            found: "larger exponent".into(),
        })
    }

    fn term(&mut self) -> Result<(Integer, u64), ParseError> {
        let sym = self.sym;
        let sym_name = format!("'{sym}'");
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = self.number().expect("digit ahead");
                if self.peek() == Some('*') {
                    self.pos += 1;
                    if self.peek() != Some(sym) {
                        return Err(self.error(&[&sym_name]));
                    }
                }
                if self.peek() == Some(sym) {
                    self.pos += 1;
                    Ok((c, self.power()?))
                } else {
                    Ok((c, 0))
                }
            }
            Some(c) if c == sym => {
                self.pos += 1;
                Ok((Integer::one(), self.power()?))
            }
            _ => Err(self.error(&["integer", &sym_name])),
        }
    }

    fn terms(&mut self) -> Result<Vec<(Integer, u64)>, ParseError> {
        let mut out = Vec::new();
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    false
                }
                Some('-') => {
                    self.pos += 1;
                    true
                }
                None if !first => break,
                _ if first => false,
                _ => return Err(self.error(&["'+'", "'-'", "end of input"])),
            };
            let (c, e) = self.term()?;
            out.push((if neg { -c } else { c }, e));
            first = false;
        }
        Ok(out)
    }
}

/// Signed `(coefficient, exponent)` terms of an expression in `sym`.
pub fn parse_terms(src: &str, sym: char) -> Result<Vec<(Integer, u64)>, ParseError> {
    Parser::new(src, sym).terms()
}

/// An element of `Z[a]`; exponents are reduced with `a^n = 1`.
pub fn parse_cyclotomic(src: &str, ring: &Arc<CycRing>) -> Result<CycElt, ParseError> {
    let n = ring.conductor();
    let mut coeffs = vec![Integer::zero(); n as usize];
    for (c, e) in parse_terms(src, 'a')? {
        coeffs[(e % n) as usize] += c;
    }
    Ok(CycElt::from_poly(ring, coeffs))
}

/// An element `x + y t` of a quadratic order.
pub fn parse_quad(src: &str, order: &Arc<QuadOrder>) -> Result<QuadElt, ParseError> {
    let t = QuadElt::from_i64(order, 0, 1);
    let mut acc = QuadElt::from_i64(order, 0, 0);
    for (c, e) in parse_terms(src, 't')? {
        let e = u32::try_from(e).map_err(|_| ParseError {
            column: src.len(),
            expected: vec!["exponent below 2^32".into()],
            found: e.to_string(),
        })?;
        let term = t.pow(e).mul(&QuadElt::new(order, c, Integer::zero()));
        acc = acc.add(&term);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use kummerlab_core::exact::integer::int;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let r = CycRing::new(5).unwrap();
        let x = parse_cyclotomic("1 - a + 2a^3", &r).unwrap();
        assert_eq!(x, CycElt::from_i64(&r, &[1, -1, 0, 2]));
        assert_eq!(parse_cyclotomic("a^5", &r).unwrap(), CycElt::one(&r));
        assert_eq!(parse_cyclotomic("a^4", &r).unwrap(), CycElt::from_i64(&r, &[-1, -1, -1, -1]));
        assert_eq!(parse_cyclotomic("-3*a^2 + a^2", &r).unwrap(), CycElt::from_i64(&r, &[0, 0, -2]));
        let o = QuadOrder::new(0, 3).unwrap();
        let y = parse_quad("2 + t", &o).unwrap();
        assert_eq!((y.x().clone(), y.y().clone()), (int(2), int(1)));
        let y = parse_quad("t^2", &o).unwrap();
        assert_eq!((y.x().clone(), y.y().clone()), (int(-3), int(0)));
    }

    #[test]
    fn errors_carry_position_and_expectation() {
        let r = CycRing::new(5).unwrap();
        let e = parse_cyclotomic("1 + + a", &r).unwrap_err();
        assert_eq!(e.column, 5);
        assert_eq!(e.expected, vec!["integer", "'a'"]);
        let e = parse_cyclotomic("2a^", &r).unwrap_err();
        assert_eq!((e.column, e.found.as_str()), (4, "end of input"));
        let e = parse_cyclotomic("2a 3", &r).unwrap_err();
        assert_eq!(e.expected, vec!["'+'", "'-'", "end of input"]);
        assert!(parse_cyclotomic("", &r).is_err());
        assert!(parse_cyclotomic("x", &r).is_err());
        assert!(parse_cyclotomic("3*", &r).is_err());
        assert!(e.to_string().contains("column"));
    }

    proptest! {
        #[test]
        fn cyclotomic_round_trip(l in prop::sample::select(vec![3u64, 5, 7, 11]), seed in prop::collection::vec(-50i64..50, 10)) {
            let r = CycRing::new(l).unwrap();
            let x = CycElt::from_i64(&r, &seed[..(l as usize - 1)]);
            let shown = x.to_string();
            let back = parse_cyclotomic(&shown, &r).unwrap();
            prop_assert_eq!(back.to_string(), shown);
            prop_assert_eq!(back, x);
        }

        #[test]
        fn quad_round_trip(u in -3i64..3, v in 1i64..30, x in -100i64..100, y in -100i64..100) {
            let o = QuadOrder::new(u, v);
            prop_assume!(o.is_ok());
            let o = o.unwrap();
            let e = QuadElt::from_i64(&o, x, y);
            let back = parse_quad(&e.to_string(), &o).unwrap();
            prop_assert_eq!(back, e);
        }
    }
}

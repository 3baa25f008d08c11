//! Text forms of functions.
//!
//! ```text
//! fn    := "const" ext
//!        | "split" "(" fn "," fn ")"
//!        | "ramp" "(" bit ";" [ext ("," ext)*] ";" poly ")"
//! poly  := "poly" "[" rat ("," rat)* "]"          coefficients low to high
//! flat  := "flat" "d" "=" int "[" ext ("," ext)* "]"
//! ext   := rat | "+inf" | "-inf"
//! ```
//!
//! Whitespace is insignificant. Printing always yields the canonical form, and
//! parsing then printing canonicalizes.

use crate::error::{Error, Result};
use crate::extreal::ExtReal;
use crate::func::{Poly, TreeFn};
use crate::iso::FlatFn;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Tree(TreeFn),
    Flat(FlatFn),
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Tree(t) => t.fmt(f),
            Value::Flat(x) => x.fmt(f),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T> {
        Err(Error::Parse { pos: self.pos, expected: expected.iter().map(|s| s.to_string()).collect() })
    }

    fn peek_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        self.src[self.pos..].starts_with(kw.as_bytes())
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.peek_keyword(tok) {
            self.pos += tok.len();
            Ok(())
        } else {
            self.fail(&[tok])
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.peek_keyword(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn number_token(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            if c.is_ascii_alphanumeric() || c == b'/' || ((c == b'-' || c == b'+') && self.pos == start) {
                self.pos += 1;
            } else {
                break;
            }
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii slice")
    }

    fn ext(&mut self) -> Result<ExtReal> {
        self.skip_ws();
        let start = self.pos;
        let tok = self.number_token();
        tok.parse::<ExtReal>().map_err(|_| Error::Parse {
            pos: start,
            expected: vec!["integer".into(), "p/q".into(), "+inf".into(), "-inf".into()],
        })
    }

    fn rational(&mut self) -> Result<num_rational::BigRational> {
        self.skip_ws();
        let start = self.pos;
        match self.ext()? {
            ExtReal::Finite(q) => Ok(q),
            _ => Err(Error::Parse { pos: start, expected: vec!["integer".into(), "p/q".into()] }),
        }
    }

    fn bit(&mut self) -> Result<bool> {
        if self.eat("0") {
            Ok(false)
        } else if self.eat("1") {
            Ok(true)
        } else {
            self.fail(&["0", "1"])
        }
    }

    fn poly(&mut self) -> Result<Poly> {
        self.expect("poly")?;
        self.expect("[")?;
        let mut coeffs = vec![self.rational()?];
        while self.eat(",") {
            coeffs.push(self.rational()?);
        }
        self.expect("]")?;
        Ok(Poly::new(coeffs))
    }

    fn tree(&mut self) -> Result<TreeFn> {
        if self.eat("const") {
            return Ok(TreeFn::constant(self.ext()?));
        }
        if self.eat("split") {
            self.expect("(")?;
            let a = self.tree()?;
            self.expect(",")?;
            let b = self.tree()?;
            self.expect(")")?;
            return Ok(TreeFn::split(a, b));
        }
        if self.eat("ramp") {
            self.expect("(")?;
            let dir = self.bit()?;
            self.expect(";")?;
            let mut prefix = Vec::new();
            if !self.peek_keyword(";") {
                prefix.push(self.ext()?);
                while self.eat(",") {
                    prefix.push(self.ext()?);
                }
            }
            self.expect(";")?;
            let poly = self.poly()?;
            self.expect(")")?;
            return Ok(TreeFn::ramp(dir, prefix, poly));
        }
        self.fail(&["const", "split", "ramp"])
    }

    fn flat(&mut self) -> Result<FlatFn> {
        self.expect("flat")?;
        self.expect("d")?;
        self.expect("=")?;
        self.skip_ws();
        let start = self.pos;
        let depth: usize =
            self.number_token().parse().map_err(|_| Error::Parse { pos: start, expected: vec!["depth".into()] })?;
        self.expect("[")?;
        let mut values = vec![self.ext()?];
        while self.eat(",") {
            values.push(self.ext()?);
        }
        let end = self.pos;
        self.expect("]")?;
        FlatFn::new(depth, values)
            .map_err(|_| Error::Parse { pos: end, expected: vec![format!("{} values", 1usize << depth.min(63))] })
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            self.fail(&["end of input"])
        }
    }
}

pub fn parse_tree(text: &str) -> Result<TreeFn> {
    let mut p = Parser::new(text);
    let t = p.tree()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_flat(text: &str) -> Result<FlatFn> {
    let mut p = Parser::new(text);
    let t = p.flat()?;
    p.finish()?;
    Ok(t)
}

/// Parses either a tree function or a flat function.
pub fn parse(text: &str) -> Result<Value> {
    let mut p = Parser::new(text);
    if p.peek_keyword("flat") {
        let f = p.flat()?;
        p.finish()?;
        return Ok(Value::Flat(f));
    }
    let t = p.tree()?;
    p.finish()?;
    Ok(Value::Tree(t))
}

pub fn print(v: &Value) -> String {
    v.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stone::BranchPoint;

    #[test]
    fn parse_examples() {
        assert_eq!(parse_tree("const 3").unwrap(), TreeFn::constant(ExtReal::int(3)));
        let t = parse_tree("split(const -inf, ramp(1; ; poly[0,1]))").unwrap();
        assert_eq!(t.eval_point(&BranchPoint::parse("0(1)^w").unwrap()), ExtReal::NegInf);
        assert_eq!(t.eval_point(&BranchPoint::parse("(1)^w").unwrap()), ExtReal::PosInf);
        assert_eq!(t.eval_point(&BranchPoint::parse("1110(0)^w").unwrap()), ExtReal::int(2));
        assert!(matches!(parse_tree("const 3/0"), Err(Error::Parse { pos: 6, .. })));
    }

    #[test]
    fn errors_carry_position_and_expectations() {
        match parse_tree("split(const 1 const 2)") {
            Err(Error::Parse { pos, expected }) => {
                assert_eq!(pos, 14);
                assert_eq!(expected, vec![",".to_string()]);
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse_tree("lamp(1;;poly[1])") {
            Err(Error::Parse { pos: 0, expected }) => assert_eq!(expected.len(), 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_tree("ramp(1; ; poly[+inf])").is_err());
        assert!(parse_tree("const 1 trailing").is_err());
    }

    #[test]
    fn canonical_printing() {
        let t = parse_tree("split( const 2 , const 2 )").unwrap();
        assert_eq!(t.to_string(), "const 2");
        let r = parse_tree("ramp(1;;poly[2,-1/3,1])").unwrap();
        assert_eq!(r.to_string(), "ramp(1; ; poly[2, -1/3, 1])");
        // a constant tail is locally constant at the branch point
        let e = parse_tree("ramp(0; 5; poly[7])").unwrap();
        assert_eq!(e.to_string(), "split(const 7, const 5)");
        // ramps root as high as the tree allows
        let a = parse_tree("split(const 5, ramp(1; ; poly[0, 1]))").unwrap();
        assert_eq!(a.to_string(), "ramp(1; 5; poly[-1, 1])");
        for s in ["const +inf", "split(const 0, ramp(0; -inf; poly[1, 0, -2]))", "ramp(1; 5; poly[-1, 1])"] {
            assert_eq!(parse_tree(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn flat_forms() {
        let f = parse("flat d=1 [2, +inf]").unwrap();
        assert_eq!(f.to_string(), "flat d=1 [2, +inf]");
        assert!(parse("flat d=1 [2]").is_err());
    }
}

//! Canonical text form of [`StructuredSet`].
//!
//! ```text
//! set    := tail(center=VEC, r=NUM, start=INT)
//!         | sphere(center=VEC, r=NUM, start=INT)
//!         | ball(center=VEC, r=NUM, start=INT)
//!         | finite([VEC, VEC, ...])
//!         | union(set, set, ...)
//! VEC    := [NUM, NUM, ...]        dense coordinates from index 1
//! ```
//!
//! Keyword arguments may appear in any order. [`StructuredSet`]'s `Display`
//! prints the canonical order with shortest round-trip floats, so printing
//! and parsing are inverse.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::lp::SparseVector;
use crate::sets::{FinitePointSet, StructuredSet, Tail};

impl fmt::Display for StructuredSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructuredSet::TailFamily(t) => write_tail(f, "tail", t),
            StructuredSet::SphereTail(t) => write_tail(f, "sphere", t),
            StructuredSet::BallTail(t) => write_tail(f, "ball", t),
            StructuredSet::Finite(points) => {
                f.write_str("finite([")?;
                for (i, v) in points.points().iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write_dense(f, v)?;
                }
                f.write_str("])")
            }
            StructuredSet::Union(parts) => {
                f.write_str("union(")?;
                for (i, c) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

fn write_tail(f: &mut fmt::Formatter<'_>, name: &str, t: &Tail) -> fmt::Result {
    write!(f, "{name}(center=")?;
    write_dense(f, &t.center)?;
    write!(f, ", r={}, start={})", t.radius, t.tail_start)
}

fn write_dense(f: &mut fmt::Formatter<'_>, v: &SparseVector) -> fmt::Result {
    f.write_str("[")?;
    for (i, x) in v.to_dense().iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("]")
}

impl FromStr for StructuredSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_set(s)
    }
}

/// Parses a set expression and validates the resulting set.
pub fn parse_set(input: &str) -> Result<StructuredSet> {
    let mut p = Parser { src: input, pos: 0 };
    let set = p.set()?;
    p.skip_ws();
    if p.pos != input.len() {
        return Err(p.error("trailing input"));
    }
    Ok(set)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> Result<&str> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.error("expected a name"));
        }
        let start = self.pos;
        self.pos += len;
        Ok(&self.src[start..self.pos])
    }

    fn number(&mut self) -> Result<f64> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_digit() || matches!(c, '+' | '-' | '.' | 'e' | 'E')))
            .unwrap_or(self.rest().len());
        let text = &self.rest()[..len];
        let x: f64 = text
            .parse()
            .map_err(|_| self.error(format!("invalid number '{text}'")))?;
        if !x.is_finite() {
            return Err(self.error("number must be finite"));
        }
        self.pos += len;
        Ok(x)
    }

    fn integer(&mut self) -> Result<usize> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        let text = &self.rest()[..len];
        let n = text
            .parse()
            .map_err(|_| self.error(format!("invalid integer '{text}'")))?;
        self.pos += len;
        Ok(n)
    }

    fn vector(&mut self) -> Result<SparseVector> {
        self.expect('[')?;
        let mut values = Vec::new();
        if !self.eat(']') {
            loop {
                values.push(self.number()?);
                if self.eat(']') {
                    break;
                }
                self.expect(',')?;
            }
        }
        Ok(SparseVector::from_dense(&values))
    }

    fn set(&mut self) -> Result<StructuredSet> {
        let at = {
            self.skip_ws();
            self.pos
        };
        let name = self.ident()?.to_string();
        self.expect('(')?;
        let located = |e: Error| match e {
            Error::Parse { .. } => e,
            other => Error::Parse {
                position: at,
                message: other.to_string(),
            },
        };
        let set = match name.as_str() {
            "tail" | "sphere" | "ball" => {
                let tail = self.tail_args()?;
                let build = match name.as_str() {
                    "tail" => StructuredSet::tail,
                    "sphere" => StructuredSet::sphere,
                    _ => StructuredSet::ball,
                };
                build(tail.center, tail.radius, tail.tail_start).map_err(located)?
            }
            "finite" => {
                self.expect('[')?;
                let mut points = Vec::new();
                if !self.eat(']') {
                    loop {
                        points.push(self.vector()?);
                        if self.eat(']') {
                            break;
                        }
                        self.expect(',')?;
                    }
                }
                StructuredSet::Finite(
                    FinitePointSet::new(points, crate::lp::DEFAULT_TOL).map_err(located)?,
                )
            }
            "union" => {
                let mut parts = alloc::vec![self.set()?];
                while self.eat(',') {
                    parts.push(self.set()?);
                }
                StructuredSet::union(parts).map_err(located)?
            }
            other => {
                self.pos = at;
                return Err(self.error(format!(
                    "unknown set constructor '{other}' (expected tail, sphere, ball, finite or union)"
                )));
            }
        };
        self.expect(')')?;
        Ok(set)
    }

    fn tail_args(&mut self) -> Result<Tail> {
        let (mut center, mut radius, mut start) = (None, None, None);
        loop {
            let key_at = {
                self.skip_ws();
                self.pos
            };
            let key = self.ident()?.to_string();
            self.expect('=')?;
            let dup = match key.as_str() {
                "center" => center.replace(self.vector()?).is_some(),
                "r" | "radius" => radius.replace(self.number()?).is_some(),
                "start" => start.replace(self.integer()?).is_some(),
                _ => {
                    self.pos = key_at;
                    return Err(self.error(format!("unknown argument '{key}'")));
                }
            };
            if dup {
                self.pos = key_at;
                return Err(self.error(format!("duplicate argument '{key}'")));
            }
            if !self.eat(',') {
                break;
            }
        }
        self.skip_ws();
        if !self.rest().starts_with(')') {
            return Err(self.error("expected ',' or ')'"));
        }
        let missing = |what: &str| self.error(format!("missing argument '{what}'"));
        Ok(Tail {
            center: center.unwrap_or_default(),
            radius: radius.ok_or_else(|| missing("r"))?,
            tail_start: start.ok_or_else(|| missing("start"))?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn parses_the_documented_forms() {
        let s = parse_set("tail(center=[], r=1, start=1)").unwrap();
        assert_eq!(
            s,
            StructuredSet::tail(SparseVector::zero(), 1.0, 1).unwrap()
        );
        let s = parse_set(" sphere( r = 0.6, start=2, center=[0.8] ) ").unwrap();
        assert_eq!(
            s,
            StructuredSet::sphere(SparseVector::basis(1).scaled(0.8), 0.6, 2).unwrap()
        );
        let s = parse_set("finite([[1,0]])").unwrap();
        assert_eq!(
            s,
            StructuredSet::finite(alloc::vec![SparseVector::basis(1)]).unwrap()
        );
        let s =
            parse_set("union(tail(center=[], r=1, start=1), ball(center=[0,0.5], r=0.1, start=3))")
                .unwrap();
        assert!(matches!(s, StructuredSet::Union(ref v) if v.len() == 2));
    }

    #[test]
    fn canonical_printing() {
        let s =
            parse_set("union(tail(start=4, r=0.5, center=[0.25,0,-1e-3]), finite([[1],[0,2]]))")
                .unwrap();
        assert_eq!(
            s.to_string(),
            "union(tail(center=[0.25,0,-0.001], r=0.5, start=4), finite([[1],[0,2]]))"
        );
        assert_eq!(parse_set(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_set("tail(center=[], r=1 start=1)").unwrap_err();
        assert!(matches!(err, Error::Parse { position: 20, .. }), "{err:?}");
        assert!(err.to_string().contains("expected ',' or ')'"));
        let err = parse_set("cone(r=1)").unwrap_err();
        assert!(matches!(err, Error::Parse { position: 0, .. }));
        let err = parse_set("tail(center=[1], r=1, start=1)").unwrap_err();
        assert!(matches!(err, Error::Parse { position: 0, .. }), "{err:?}");
        let err = parse_set("tail(center=[], r=1)").unwrap_err();
        assert!(err.to_string().contains("missing argument 'start'"));
        let err = parse_set("tail(center=[], r=1, r=2, start=1)").unwrap_err();
        assert!(err.to_string().contains("duplicate"));
        assert!(parse_set("finite([])").is_err());
        assert!(parse_set("tail(center=[], r=1, start=1) x").is_err());
    }
}

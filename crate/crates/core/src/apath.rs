//! A-path text: `word ( '|' edge word )*` with `edge` one of `e`, `E`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Vertex elements as raw text with the edge signs between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawAPath {
    pub elements: Vec<String>,
    pub signs: Vec<i8>,
}

impl RawAPath {
    pub fn parse(text: &str) -> Result<RawAPath> {
        let mut elements = Vec::new();
        let mut signs = Vec::new();
        let mut offset = 0;
        for (k, chunk) in text.split('|').enumerate() {
            if k == 0 {
                elements.push(chunk.trim().to_string());
            } else {
                let trimmed = chunk.trim_start();
                let lead = chunk.len() - trimmed.len();
                let mut it = trimmed.splitn(2, char::is_whitespace);
                let edge = it.next().unwrap_or("");
                let sign = match edge {
                    "e" => 1,
                    "E" => -1,
                    _ => {
                        return Err(Error::Parse {
                            position: offset + lead,
                            token: edge.to_string(),
                            reason: "expected edge token e or E after '|'",
                        })
                    }
                };
                signs.push(sign);
                elements.push(it.next().unwrap_or("").trim().to_string());
            }
            offset += chunk.len() + 1;
        }
        Ok(RawAPath { elements, signs })
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }
}

impl fmt::Display for RawAPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: &str| if s.is_empty() { "1".to_string() } else { s.to_string() };
        write!(f, "{}", show(&self.elements[0]))?;
        for (k, s) in self.signs.iter().enumerate() {
            let e = if *s > 0 { "e" } else { "E" };
            write!(f, " | {e} {}", show(&self.elements[k + 1]))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn parse_and_print() {
        let p = RawAPath::parse("x1 x2 | e X1 | E").unwrap();
        assert_eq!(p.signs, [1, -1]);
        assert_eq!(p.elements, ["x1 x2", "X1", ""]);
        assert_eq!(p.to_string(), "x1 x2 | e X1 | E 1");
        assert_eq!(RawAPath::parse(&p.to_string()).unwrap().signs, p.signs);
    }

    #[test]
    fn bad_edge() {
        match RawAPath::parse("x1 | f x2") {
            Err(Error::Parse { position, token, .. }) => {
                assert_eq!(position, 5);
                assert_eq!(token, "f");
            }
            other => panic!("{other:?}"),
        }
    }
}

//! Command-line value syntax: brace set literals such as `{{},{{}}}`, and Ackermann codes
//! written `#N`. Codes may also appear as members inside braces.

use hfkit::hf::{self, AckCode, HfSet};

pub fn parse_set_literal(text: &str) -> Result<HfSet, String> {
    let mut p = Parser {
        s: text.as_bytes(),
        i: 0,
    };
    let set = p.set()?;
    p.skip_ws();
    if p.i != p.s.len() {
        return Err(format!("trailing input at byte {} of {text:?}", p.i));
    }
    Ok(set)
}

/// A set given either as a brace literal or as `#N`.
pub fn parse_set(text: &str) -> Result<HfSet, String> {
    let t = text.trim();
    if t.starts_with('#') {
        return Ok(hf::decode(&parse_code(t)?));
    }
    parse_set_literal(t)
}

/// A code given as `#N`, bare `N`, or a brace literal.
pub fn parse_code(text: &str) -> Result<AckCode, String> {
    let t = text.trim();
    if t.starts_with('{') {
        return hf::encode(&parse_set_literal(t)?).map_err(|e| e.to_string());
    }
    t.strip_prefix('#').unwrap_or(t).parse()
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.s.get(self.i).is_some_and(u8::is_ascii_whitespace) {
            self.i += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), String> {
        self.skip_ws();
        if self.s.get(self.i) == Some(&c) {
            self.i += 1;
            Ok(())
        } else {
            Err(format!("expected '{}' at byte {}", c as char, self.i))
        }
    }

    fn element(&mut self) -> Result<HfSet, String> {
        self.skip_ws();
        if self.s.get(self.i) != Some(&b'#') {
            return self.set();
        }
        self.i += 1;
        let start = self.i;
        while self.s.get(self.i).is_some_and(u8::is_ascii_digit) {
            self.i += 1;
        }
        let digits = std::str::from_utf8(&self.s[start..self.i]).expect("ascii");
        if digits.is_empty() {
            return Err(format!("expected digits after '#' at byte {start}"));
        }
        Ok(hf::decode(&digits.parse::<AckCode>()?))
    }

    fn set(&mut self) -> Result<HfSet, String> {
        self.expect(b'{')?;
        let mut children = Vec::new();
        self.skip_ws();
        if self.s.get(self.i) == Some(&b'}') {
            self.i += 1;
            return Ok(HfSet::empty());
        }
        loop {
            children.push(self.element()?);
            self.skip_ws();
            match self.s.get(self.i) {
                Some(b',') => self.i += 1,
                Some(b'}') => {
                    self.i += 1;
                    return Ok(HfSet::from_children(children));
                }
                _ => return Err(format!("expected ',' or '}}' at byte {}", self.i)),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(t: &str) -> u64 {
        parse_code(t).unwrap().to_u64().unwrap()
    }

    #[test]
    fn literals() {
        assert_eq!(parse_set_literal("{}").unwrap(), HfSet::empty());
        assert_eq!(code("{{},{}}"), 1);
        assert_eq!(code("{{{}}}"), 2);
        assert_eq!(code("{{},{{}}}"), 3);
        assert_eq!(code(" { {} , { {} } } "), 3);
        assert_eq!(code("{#0,#1,#3}"), 11);
        assert_eq!(code("#11"), 11);
    }

    #[test]
    fn malformed() {
        for t in ["", "{", "{}}", "{,}", "{{}", "{#}", "x"] {
            assert!(parse_set_literal(t).is_err(), "{t:?}");
        }
    }
}

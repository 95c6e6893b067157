//! Symmetry expressions.
//!
//! ```text
//! expr   := factor+              juxtaposition, applied right to left
//! factor := atom ('^' integer)?
//! atom   := 'E' | 'd' | 'H' | 'H1' | 'D' | 'V' | 'W' | 'F'
//!         | 'r[' digits ']'      row permutation, image array
//!         | 'c[' digits ']'      column permutation, d r d
//! ```
//!
//! `r[987654321] d r[987654321]` is the anti-diagonal reflection `D`.

use crate::error::{Error, Result};
use crate::perm::{BandPermutation, BoxSize};
use crate::symmetry::{GridSymmetry, NamedSymmetry};

pub fn parse_expr(text: &str, size: BoxSize) -> Result<GridSymmetry> {
    let mut parser = Parser {
        chars: text.char_indices().collect(),
        pos: 0,
        len: text.len(),
        size,
    };
    let mut factors = Vec::new();
    loop {
        parser.skip_ws();
        if parser.peek().is_none() {
            break;
        }
        factors.push(parser.factor()?);
    }
    if factors.is_empty() {
        return Err(Error::Expr {
            position: 0,
            message: "empty expression".into(),
        });
    }
    Ok(factors.iter().fold(GridSymmetry::identity(size), |acc, f| {
        acc.compose_unchecked(f)
    }))
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
    size: BoxSize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(o, _)| o)
    }

    fn error<T>(&self, at: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Expr {
            position: at,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn factor(&mut self) -> Result<GridSymmetry> {
        let atom = self.atom()?;
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(atom);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.offset();
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.pos += 1;
        }
        match digits.parse::<u32>() {
            Ok(k) => Ok(atom.pow(k)),
            Err(_) => self.error(start, "expected exponent after '^'"),
        }
    }

    fn atom(&mut self) -> Result<GridSymmetry> {
        let start = self.offset();
        let Some(c) = self.peek() else {
            return self.error(start, "expected a symmetry");
        };
        self.pos += 1;
        let named = |n: NamedSymmetry| {
            GridSymmetry::named(n, self.size).map_err(|e| Error::Expr {
                position: start,
                message: e.to_string(),
            })
        };
        match c {
            'E' => Ok(GridSymmetry::identity(self.size)),
            'd' => Ok(GridSymmetry::transpose(self.size)),
            'H' if self.peek() == Some('1') => {
                self.pos += 1;
                named(NamedSymmetry::H1)
            }
            'H' => named(NamedSymmetry::H),
            'D' => named(NamedSymmetry::D),
            'V' => named(NamedSymmetry::V),
            'W' => named(NamedSymmetry::W),
            'F' => named(NamedSymmetry::F),
            'r' | 'c' => {
                let perm = self.literal(start)?;
                Ok(if c == 'r' {
                    GridSymmetry::row_permutation(perm)
                } else {
                    GridSymmetry::column_permutation(perm)
                })
            }
            other => self.error(start, format!("unexpected character {other:?}")),
        }
    }

    fn literal(&mut self, start: usize) -> Result<BandPermutation> {
        if self.peek() != Some('[') {
            return self.error(self.offset(), "expected '['");
        }
        self.pos += 1;
        let body_start = self.offset();
        let mut body = String::new();
        loop {
            match self.peek() {
                Some(']') => {
                    self.pos += 1;
                    break;
                }
                Some(c) => {
                    body.push(c);
                    self.pos += 1;
                }
                None => return self.error(self.offset(), "unterminated permutation literal"),
            }
        }
        BandPermutation::from_digits(&body, self.size).map_err(|e| Error::Expr {
            position: match e {
                Error::BadCharacter { position, .. } => body_start + position,
                _ => start,
            },
            message: e.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const S: BoxSize = BoxSize::SUDOKU;

    fn named(n: NamedSymmetry) -> GridSymmetry {
        GridSymmetry::named(n, S).unwrap()
    }

    #[test]
    fn literal_word_is_d() {
        let g = parse_expr("r[987654321] d r[987654321]", S).unwrap();
        assert_eq!(g, named(NamedSymmetry::D));
    }

    #[test]
    fn powers_and_names() {
        assert!(parse_expr("V^4", S).unwrap().is_identity());
        assert!(parse_expr("d d", S).unwrap().is_identity());
        assert!(parse_expr("dd", S).unwrap().is_identity());
        assert_eq!(parse_expr("V^3", S).unwrap(), named(NamedSymmetry::W));
        assert_eq!(parse_expr("H1", S).unwrap(), named(NamedSymmetry::H1));
        assert_eq!(
            parse_expr("d r[987654321] d", S).unwrap(),
            named(NamedSymmetry::H1)
        );
        assert_eq!(
            parse_expr("c[987654321]", S).unwrap(),
            named(NamedSymmetry::H1)
        );
        assert_eq!(parse_expr("E", S).unwrap(), GridSymmetry::identity(S));
        assert_eq!(parse_expr("V ^ 2", S).unwrap(), named(NamedSymmetry::F));
    }

    #[test]
    fn right_to_left() {
        // d r applies r first, then transposes: V.
        assert_eq!(
            parse_expr("d r[987654321]", S).unwrap(),
            named(NamedSymmetry::V)
        );
        assert_eq!(
            parse_expr("r[987654321] d", S).unwrap(),
            named(NamedSymmetry::W)
        );
    }

    #[test]
    fn display_roundtrips() {
        let g = parse_expr("r[546123789] d c[132798456]", S).unwrap();
        assert_eq!(parse_expr(&g.to_string(), S).unwrap(), g);
    }

    #[test]
    fn errors_carry_positions() {
        let err = |s: &str| match parse_expr(s, S) {
            Err(Error::Expr { position, .. }) => position,
            other => panic!("expected error, got {other:?}"),
        };
        assert_eq!(err(""), 0);
        assert_eq!(err("d x"), 2);
        assert_eq!(err("V^"), 2);
        assert_eq!(err("r[98765432"), 10);
        assert_eq!(err("d r[98x654321]"), 6);
        assert_eq!(err("r[124356789]"), 0);
    }

    #[test]
    fn shidoku_literals() {
        let s = BoxSize::SHIDOKU;
        let g = parse_expr("r[3412] d", s).unwrap();
        assert!(g.is_transposed());
        assert!(parse_expr("H", s).is_err());
    }
}

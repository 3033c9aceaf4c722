//! Integer affine forms over the case parameters `m`, `t` and `s`.
//!
//! Grammar (whitespace-free): `expr := term (('+'|'-') term)*`,
//! `term := [int] (var | '(' expr ')')? ` where at least one part is present.
//! So `3t+1`, `2m-t+2`, `4(m-1)+2` and `-3` all parse.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    M,
    T,
    S,
}

impl Var {
    fn from_char(c: char) -> Option<Var> {
        match c {
            'm' => Some(Var::M),
            't' => Some(Var::T),
            's' => Some(Var::S),
            _ => None,
        }
    }

    fn slot(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> char {
        match self {
            Var::M => 'm',
            Var::T => 't',
            Var::S => 's',
        }
    }
}

/// Variable assignment; unset variables make evaluation fail.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Env {
    values: [Option<i64>; 3],
}

impl Env {
    pub fn with(mut self, var: Var, value: i64) -> Self {
        self.values[var.slot()] = Some(value);
        self
    }

    pub fn get(&self, var: Var) -> Option<i64> {
        self.values[var.slot()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Affine {
    coef: [i64; 3],
    constant: i64,
}

impl Affine {
    pub const fn constant(c: i64) -> Self {
        Affine { coef: [0; 3], constant: c }
    }

    pub fn var(v: Var) -> Self {
        let mut a = Affine::default();
        a.coef[v.slot()] = 1;
        a
    }

    pub fn coefficient(&self, v: Var) -> i64 {
        self.coef[v.slot()]
    }

    pub fn constant_term(&self) -> i64 {
        self.constant
    }

    pub fn uses(&self, v: Var) -> bool {
        self.coef[v.slot()] != 0
    }

    /// `None` when a variable with nonzero coefficient is unbound.
    pub fn eval(&self, env: &Env) -> Option<i64> {
        let mut acc = self.constant;
        for v in [Var::M, Var::T, Var::S] {
            let c = self.coef[v.slot()];
            if c != 0 {
                acc += c * env.get(v)?;
            }
        }
        Some(acc)
    }

    fn add(self, other: Affine, sign: i64) -> Affine {
        let mut out = self;
        for i in 0..3 {
            out.coef[i] += sign * other.coef[i];
        }
        out.constant += sign * other.constant;
        out
    }

    fn scale(self, k: i64) -> Affine {
        let mut out = self;
        for c in &mut out.coef {
            *c *= k;
        }
        out.constant *= k;
        out
    }

    pub fn parse(src: &str) -> Result<Affine, String> {
        let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err("empty expression".into());
        }
        let mut parser = Parser { chars: &chars, pos: 0 };
        let expr = parser.expr()?;
        if parser.pos != chars.len() {
            return Err(format!("unexpected `{}` in `{src}`", chars[parser.pos]));
        }
        Ok(expr)
    }
}

struct Parser<'a> {
    chars: &'a [char],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Affine, String> {
        let mut sign = 1;
        if let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            sign = if c == '-' { -1 } else { 1 };
        }
        let mut acc = self.term()?.scale(sign);
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = acc.add(t, if c == '-' { -1 } else { 1 });
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Affine, String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let number: Option<i64> = if self.pos > start {
            let digits: String = self.chars[start..self.pos].iter().collect();
            Some(digits.parse().map_err(|_| format!("bad integer `{digits}`"))?)
        } else {
            None
        };
        let factor = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err("missing `)`".into());
                }
                self.pos += 1;
                Some(inner)
            }
            Some(c) => match Var::from_char(c) {
                Some(v) => {
                    self.pos += 1;
                    Some(Affine::var(v))
                }
                None => None,
            },
            None => None,
        };
        match (number, factor) {
            (Some(k), Some(f)) => Ok(f.scale(k)),
            (None, Some(f)) => Ok(f),
            (Some(k), None) => Ok(Affine::constant(k)),
            (None, None) => Err(match self.peek() {
                Some(c) => format!("unexpected `{c}`"),
                None => "expression ends early".into(),
            }),
        }
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for v in [Var::M, Var::T, Var::S] {
            let c = self.coef[v.slot()];
            if c == 0 {
                continue;
            }
            if c < 0 {
                f.write_str("-")?;
            } else if wrote {
                f.write_str("+")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "{}", v.symbol())?;
            wrote = true;
        }
        if !wrote {
            write!(f, "{}", self.constant)
        } else if self.constant > 0 {
            write!(f, "+{}", self.constant)
        } else if self.constant < 0 {
            write!(f, "{}", self.constant)
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ev(src: &str, m: i64, t: i64) -> i64 {
        Affine::parse(src).unwrap().eval(&Env::default().with(Var::M, m).with(Var::T, t)).unwrap()
    }

    #[test]
    fn parses_case_expressions() {
        assert_eq!(ev("3t+1", 0, 4), 13);
        assert_eq!(ev("2m-t+2", 5, 3), 9);
        assert_eq!(ev("4(m-1)+2", 4, 0), 14);
        assert_eq!(ev("-3", 0, 0), -3);
        assert_eq!(ev("6m-3", 3, 0), 15);
        assert_eq!(ev("2m-1-t", 3, 1), 4);
        assert_eq!(ev("m", 7, 0), 7);
    }

    #[test]
    fn rejects_garbage() {
        assert!(Affine::parse("").is_err());
        assert!(Affine::parse("3x").is_err());
        assert!(Affine::parse("3(m").is_err());
        assert!(Affine::parse("m+").is_err());
        assert!(Affine::parse("m)").is_err());
    }

    #[test]
    fn unbound_variable_fails() {
        assert_eq!(Affine::parse("s+1").unwrap().eval(&Env::default()), None);
        assert_eq!(Affine::parse("0s+1").unwrap().eval(&Env::default()), Some(1));
    }

    proptest! {
        #[test]
        fn display_round_trips(cm in -9i64..9, ct in -9i64..9, cs in -9i64..9, c0 in -20i64..20) {
            let a = Affine { coef: [cm, ct, cs], constant: c0 };
            let back = Affine::parse(&a.to_string()).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}

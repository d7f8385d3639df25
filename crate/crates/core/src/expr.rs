//! A small language for naming groups.
//!
//! ```text
//! expr    := wreath (("x" | "×") wreath)*
//! wreath  := atom ("wr" atom)*            left associative
//! atom    := "(" expr ")"
//!          | "S" n | "A" n | "C" n | "D" n  (n even, n >= 6: dihedral of order n)
//!          | "SL(2," q ")" | "PSL(2," q ")"
//!          | "<" perm ("," perm)* [";" degree] ">"
//! ```
//!
//! `wr` binds tighter than `x`. Whitespace is free between tokens.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::{parse_cycles_at, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupExpr {
    Symmetric(usize),
    Alternating(usize),
    Cyclic(usize),
    /// Dihedral group of the given order.
    Dihedral(usize),
    Sl2(u64),
    Psl2(u64),
    Generators {
        gens: Vec<Permutation>,
        /// Degree as written after `;`, if any.
        degree: Option<usize>,
    },
    Product(Vec<GroupExpr>),
    Wreath(Box<GroupExpr>, Box<GroupExpr>),
}

impl GroupExpr {
    pub fn parse(text: &str) -> Result<GroupExpr> {
        let mut p = Parser { text, pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < text.len() {
            return Err(Error::syntax(p.pos, "unexpected trailing input"));
        }
        Ok(e)
    }

    fn write_factor(&self, f: &mut fmt::Formatter<'_>, parens: bool) -> fmt::Result {
        if parens {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl FromStr for GroupExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupExpr::parse(s)
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Symmetric(n) => write!(f, "S{n}"),
            GroupExpr::Alternating(n) => write!(f, "A{n}"),
            GroupExpr::Cyclic(n) => write!(f, "C{n}"),
            GroupExpr::Dihedral(n) => write!(f, "D{n}"),
            GroupExpr::Sl2(q) => write!(f, "SL(2,{q})"),
            GroupExpr::Psl2(q) => write!(f, "PSL(2,{q})"),
            GroupExpr::Generators { gens, degree } => {
                f.write_str("<")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{g}")?;
                }
                if let Some(d) = degree {
                    write!(f, "; {d}")?;
                }
                f.write_str(">")
            }
            GroupExpr::Product(factors) => {
                for (i, e) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    e.write_factor(f, matches!(e, GroupExpr::Product(_)))?;
                }
                Ok(())
            }
            GroupExpr::Wreath(base, top) => {
                base.write_factor(f, matches!(**base, GroupExpr::Product(_)))?;
                f.write_str(" wr ")?;
                top.write_factor(f, matches!(**top, GroupExpr::Product(_) | GroupExpr::Wreath(..)))
            }
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(Error::syntax(self.pos, format!("expected `{token}`")))
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(Error::syntax(self.pos, "expected a number"));
        }
        let at = self.pos;
        self.pos += digits;
        self.text[at..self.pos]
            .parse()
            .map_err(|_| Error::syntax(at, "number too large"))
    }

    fn expr(&mut self) -> Result<GroupExpr> {
        let mut factors = vec![self.wreath()?];
        while self.eat("x") || self.eat("×") {
            factors.push(self.wreath()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            GroupExpr::Product(factors)
        })
    }

    fn wreath(&mut self) -> Result<GroupExpr> {
        let mut e = self.atom()?;
        while self.eat("wr") {
            let top = self.atom()?;
            e = GroupExpr::Wreath(Box::new(e), Box::new(top));
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<GroupExpr> {
        self.skip_ws();
        let at = self.pos;
        if self.eat("(") {
            let e = self.expr()?;
            self.expect(")")?;
            return Ok(e);
        }
        if self.eat("<") {
            return self.generators(at);
        }
        for (prefix, psl) in [("PSL(", true), ("SL(", false)] {
            if self.eat(prefix) {
                let two_at = self.pos;
                if self.number()? != 2 {
                    return Err(Error::syntax(two_at, "only 2x2 matrix groups are supported"));
                }
                self.expect(",")?;
                let q = self.number()?;
                self.expect(")")?;
                return Ok(if psl { GroupExpr::Psl2(q) } else { GroupExpr::Sl2(q) });
            }
        }
        let kind = self.rest().chars().next();
        let make: fn(usize) -> GroupExpr = match kind {
            Some('S') => GroupExpr::Symmetric,
            Some('A') => GroupExpr::Alternating,
            Some('C') => GroupExpr::Cyclic,
            Some('D') => GroupExpr::Dihedral,
            _ => return Err(Error::syntax(at, "expected a group")),
        };
        self.pos += 1;
        let n_at = self.pos;
        if !self.rest().starts_with(|c: char| c.is_ascii_digit()) {
            return Err(Error::syntax(n_at, "expected a number"));
        }
        let n = self.number()? as usize;
        if n == 0 {
            return Err(Error::syntax(n_at, "degree must be positive"));
        }
        if kind == Some('D') && (n % 2 == 1 || n < 6) {
            return Err(Error::syntax(n_at, "dihedral order must be even and at least 6"));
        }
        Ok(make(n))
    }

    fn generators(&mut self, open: usize) -> Result<GroupExpr> {
        let body_start = self.pos;
        let close = self.rest().find('>').map(|i| self.pos + i).ok_or_else(|| Error::syntax(open, "unclosed `<`"))?;
        let body = &self.text[body_start..close];
        let (list, degree_text) = match body.find(';') {
            Some(i) => (&body[..i], Some((body_start + i + 1, &body[i + 1..]))),
            None => (body, None),
        };

        // split at commas outside parentheses
        let mut pieces: Vec<(usize, &str)> = Vec::new();
        let (mut depth, mut from) = (0i32, 0);
        for (i, c) in list.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    pieces.push((from, &list[from..i]));
                    from = i + 1;
                }
                _ => {}
            }
        }
        pieces.push((from, &list[from..]));

        let mut cycles = Vec::new();
        for (offset, piece) in pieces {
            let base = body_start + offset;
            if piece.trim().is_empty() {
                return Err(Error::syntax(base, "empty generator"));
            }
            cycles.push((base, parse_cycles_at(piece, base)?));
        }
        let degree = match degree_text {
            Some((at, t)) => {
                let lead = t.len() - t.trim_start().len();
                Some(t.trim().parse::<usize>().map_err(|_| Error::syntax(at + lead, "expected a degree"))?)
            }
            None => None,
        };
        let largest = cycles
            .iter()
            .flat_map(|(_, cs)| cs.iter().flatten().copied())
            .max()
            .unwrap_or(1);
        let n = degree.unwrap_or(largest);
        if n < largest {
            return Err(Error::syntax(body_start, format!("point {largest} exceeds degree {n}")));
        }
        let gens = cycles
            .iter()
            .map(|(at, cs)| Permutation::from_cycles(n, cs).map_err(|e| Error::syntax(*at, e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        self.pos = close + 1;
        Ok(GroupExpr::Generators { gens, degree })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn atoms_and_combinators() {
        assert_eq!(GroupExpr::parse("A5").unwrap(), GroupExpr::Alternating(5));
        assert_eq!(GroupExpr::parse(" SL( 2 , 8 ) ").unwrap(), GroupExpr::Sl2(8));
        assert_eq!(
            GroupExpr::parse("S3 x C2").unwrap(),
            GroupExpr::Product(vec![GroupExpr::Symmetric(3), GroupExpr::Cyclic(2)])
        );
        assert_eq!(
            GroupExpr::parse("(C3 wr C3)").unwrap(),
            GroupExpr::Wreath(Box::new(GroupExpr::Cyclic(3)), Box::new(GroupExpr::Cyclic(3)))
        );
        assert_eq!(GroupExpr::parse("S3xC2").unwrap(), GroupExpr::parse("S3 × C2").unwrap());
        let e = GroupExpr::parse("C2 wr C2 wr C2").unwrap();
        assert_eq!(e.to_string(), "C2 wr C2 wr C2");
        let e = GroupExpr::parse("C2 wr (C2 wr C2)").unwrap();
        assert_eq!(e.to_string(), "C2 wr (C2 wr C2)");
        let e = GroupExpr::parse("<(1 2 3), (1,2)>").unwrap();
        assert_eq!(e.to_string(), "<(1 2 3), (1 2)>");
        let e = GroupExpr::parse("<(1 2); 4>").unwrap();
        assert_eq!(e, GroupExpr::Generators { gens: vec![Permutation::parse("(1 2)", 4).unwrap()], degree: Some(4) });
        assert_eq!(GroupExpr::parse("<()>").unwrap().to_string(), "<()>");
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        let offset = |s: &str| match GroupExpr::parse(s) {
            Err(Error::Syntax { offset, .. }) => offset,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(offset("A"), 1);
        assert_eq!(offset("S3 x"), 4);
        assert_eq!(offset("S3 x Q8"), 5);
        assert_eq!(offset("(S3"), 3);
        assert_eq!(offset("D7"), 1);
        assert_eq!(offset("SL(3,4)"), 3);
        assert_eq!(offset("S3 S4"), 3);
        assert_eq!(offset("<(1 2), (2 2)>"), 11);
        assert_eq!(offset("<(1 2); x>"), 8);
        assert_eq!(offset("<(1 5); 3>"), 1);
        assert_eq!(offset("<(1 2)"), 0);
        assert_eq!(offset("C0"), 1);
    }

    fn atom() -> impl Strategy<Value = GroupExpr> {
        prop_oneof![
            (1usize..13).prop_map(GroupExpr::Symmetric),
            (1usize..13).prop_map(GroupExpr::Alternating),
            (1usize..13).prop_map(GroupExpr::Cyclic),
            (3usize..9).prop_map(|n| GroupExpr::Dihedral(2 * n)),
            proptest::sample::select(vec![2u64, 3, 4, 5, 7, 8]).prop_map(GroupExpr::Sl2),
            proptest::sample::select(vec![4u64, 5, 7, 8, 9]).prop_map(GroupExpr::Psl2),
            (proptest::sample::subsequence(vec![1usize, 2, 3, 4, 5], 2..=5), proptest::option::of(5usize..8))
                .prop_map(|(pts, degree)| GroupExpr::Generators {
                    gens: vec![Permutation::from_cycles(degree.unwrap_or(5), &[pts]).unwrap()],
                    degree,
                }),
        ]
    }

    fn expr() -> impl Strategy<Value = GroupExpr> {
        atom().prop_recursive(3, 12, 3, |inner| {
            prop_oneof![
                proptest::collection::vec(inner.clone(), 2..4).prop_map(GroupExpr::Product),
                (inner.clone(), inner).prop_map(|(a, b)| GroupExpr::Wreath(Box::new(a), Box::new(b))),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn print_then_parse_round_trips(e in expr()) {
            let text = e.to_string();
            let back = GroupExpr::parse(&text).unwrap();
            prop_assert_eq!(back.to_string(), text);
        }
    }
}

//! Group construction recipes.
//!
//! A recipe is a small expression over named constructors combined with
//! direct products (`x`) and central products (`*`):
//!
//! ```text
//! spec := atom | spec "x" atom | spec "*" atom
//! atom := "C(" int ")" | "D(" int ")" | "Q(" int ")" | "EA(" int ")"
//!       | "ESP(" int ")" | "ESM(" int ")" | "ESC4(" int ")" | "(" spec ")"
//! ```
//!
//! Constructor parameters are always the group order. Whitespace is
//! insignificant and `∗` is accepted as an alias for `*`.

use std::fmt;

use crate::error::{GroupError, ParseError};

/// Abstract syntax of a group construction recipe.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    /// Cyclic group of order `n`.
    Cyclic(usize),
    /// Dihedral group of order `n` (so `n/2` rotations), `n` even, `n >= 6`.
    Dihedral(usize),
    /// Generalized quaternion (dicyclic) group of order `n`, `n ≡ 0 mod 4`, `n >= 8`.
    Quaternion(usize),
    /// Elementary abelian 2-group of order `n = 2^k`.
    ElementaryAbelian(usize),
    /// Extraspecial 2-group of plus type, order an odd power of two `>= 8`.
    ExtraspecialPlus(usize),
    /// Extraspecial 2-group of minus type, order an odd power of two `>= 8`.
    ExtraspecialMinus(usize),
    /// Central product of an extraspecial 2-group with a cyclic group of
    /// order 4, identifying the central involutions; order `2^(2k+2)`, `k >= 1`.
    ExtraspecialC4(usize),
    /// Direct product.
    Direct(Box<GroupSpec>, Box<GroupSpec>),
    /// Central product, identifying each factor's designated central involution.
    Central(Box<GroupSpec>, Box<GroupSpec>),
}

impl GroupSpec {
    /// Order of the group the recipe describes.
    pub fn order(&self) -> usize {
        match self {
            GroupSpec::Cyclic(n)
            | GroupSpec::Dihedral(n)
            | GroupSpec::Quaternion(n)
            | GroupSpec::ElementaryAbelian(n)
            | GroupSpec::ExtraspecialPlus(n)
            | GroupSpec::ExtraspecialMinus(n)
            | GroupSpec::ExtraspecialC4(n) => *n,
            GroupSpec::Direct(a, b) => a.order() * b.order(),
            GroupSpec::Central(a, b) => a.order() * b.order() / 2,
        }
    }

    /// Check every constructor parameter against its domain.
    pub fn validate(&self) -> Result<(), GroupError> {
        let bad = |msg: String| Err(GroupError::SpecDomain(msg));
        match self {
            GroupSpec::Cyclic(n) => {
                if *n < 1 {
                    return bad(format!("C({n}): order must be at least 1"));
                }
            }
            GroupSpec::Dihedral(n) => {
                if *n % 2 != 0 || *n < 6 {
                    return bad(format!("D({n}): order must be even and at least 6"));
                }
            }
            GroupSpec::Quaternion(n) => {
                if *n % 4 != 0 || *n < 8 {
                    return bad(format!(
                        "Q({n}): order must be divisible by 4 and at least 8"
                    ));
                }
            }
            GroupSpec::ElementaryAbelian(n) => {
                if !n.is_power_of_two() || *n < 2 {
                    return bad(format!("EA({n}): order must be a power of 2, at least 2"));
                }
            }
            GroupSpec::ExtraspecialPlus(n) | GroupSpec::ExtraspecialMinus(n) => {
                if !n.is_power_of_two() || n.trailing_zeros() % 2 == 0 || *n < 8 {
                    return bad(format!(
                        "extraspecial order {n} must be an odd power of 2, at least 8"
                    ));
                }
            }
            GroupSpec::ExtraspecialC4(n) => {
                if !n.is_power_of_two() || n.trailing_zeros() % 2 == 1 || *n < 16 {
                    return bad(format!(
                        "ESC4({n}): order must be an even power of 2, at least 16"
                    ));
                }
            }
            GroupSpec::Direct(a, b) => {
                a.validate()?;
                b.validate()?;
            }
            GroupSpec::Central(a, b) => {
                a.validate()?;
                b.validate()?;
                // The real "has a designated central involution" check happens
                // at build time; orders must at least be even.
                if a.order() % 2 != 0 || b.order() % 2 != 0 {
                    return bad(
                        "central product operands must have even order".to_string(),
                    );
                }
            }
        }
        Ok(())
    }

    /// Canonical text form; [`GroupSpec::parse`] round-trips it.
    pub fn canonical(&self) -> String {
        self.to_string()
    }

    /// Parse a recipe, reporting byte offsets and expected-token hints on error.
    pub fn parse(input: &str) -> Result<GroupSpec, ParseError> {
        Parser::new(input).parse_full()
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn write_node(
            f: &mut fmt::Formatter<'_>,
            node: &GroupSpec,
            parent_op: Option<char>,
            right_operand: bool,
        ) -> fmt::Result {
            let own_op = match node {
                GroupSpec::Direct(..) => Some('x'),
                GroupSpec::Central(..) => Some('*'),
                _ => None,
            };
            // A product as a right operand always needs parentheses (the
            // grammar is left-associative); a left operand only when the
            // operator changes, where bare text would still reparse the same
            // but reads ambiguously.
            let parens = match (own_op, parent_op) {
                (Some(op), Some(pop)) => right_operand || op != pop,
                _ => false,
            };
            if parens {
                f.write_str("(")?;
            }
            match node {
                GroupSpec::Cyclic(n) => write!(f, "C({n})")?,
                GroupSpec::Dihedral(n) => write!(f, "D({n})")?,
                GroupSpec::Quaternion(n) => write!(f, "Q({n})")?,
                GroupSpec::ElementaryAbelian(n) => write!(f, "EA({n})")?,
                GroupSpec::ExtraspecialPlus(n) => write!(f, "ESP({n})")?,
                GroupSpec::ExtraspecialMinus(n) => write!(f, "ESM({n})")?,
                GroupSpec::ExtraspecialC4(n) => write!(f, "ESC4({n})")?,
                GroupSpec::Direct(a, b) => {
                    write_node(f, a, Some('x'), false)?;
                    f.write_str("x")?;
                    write_node(f, b, Some('x'), true)?;
                }
                GroupSpec::Central(a, b) => {
                    write_node(f, a, Some('*'), false)?;
                    f.write_str("*")?;
                    write_node(f, b, Some('*'), true)?;
                }
            }
            if parens {
                f.write_str(")")?;
            }
            Ok(())
        }
        write_node(f, self, None, false)
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GroupSpec::parse(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Name(String),
    Int(usize),
    LParen,
    RParen,
    Direct,
    Central,
    Bad(char),
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Name(s) => format!("name `{s}`"),
            Token::Int(n) => format!("integer `{n}`"),
            Token::LParen => "`(`".to_string(),
            Token::RParen => "`)`".to_string(),
            Token::Direct => "`x`".to_string(),
            Token::Central => "`*`".to_string(),
            Token::Bad(c) => format!("character `{c}`"),
        }
    }
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(input: &str) -> Self {
        let mut tokens = Vec::new();
        let mut chars = input.char_indices().peekable();
        while let Some(&(off, c)) = chars.peek() {
            match c {
                c if c.is_whitespace() => {
                    chars.next();
                }
                '(' => {
                    chars.next();
                    tokens.push((Token::LParen, off));
                }
                ')' => {
                    chars.next();
                    tokens.push((Token::RParen, off));
                }
                '*' | '∗' => {
                    chars.next();
                    tokens.push((Token::Central, off));
                }
                'x' => {
                    chars.next();
                    tokens.push((Token::Direct, off));
                }
                '0'..='9' => {
                    let mut n: usize = 0;
                    let mut overflow = false;
                    while let Some(&(_, d)) = chars.peek() {
                        if let Some(v) = d.to_digit(10) {
                            n = n
                                .checked_mul(10)
                                .and_then(|n| n.checked_add(v as usize))
                                .unwrap_or_else(|| {
                                    overflow = true;
                                    n
                                });
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    if overflow {
                        tokens.push((Token::Bad('9'), off));
                        break;
                    }
                    tokens.push((Token::Int(n), off));
                }
                c if c.is_ascii_uppercase() => {
                    let mut name = String::new();
                    while let Some(&(_, d)) = chars.peek() {
                        if d.is_ascii_uppercase() || name_takes_digit(&name, d) {
                            name.push(d);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    tokens.push((Token::Name(name), off));
                }
                other => {
                    chars.next();
                    tokens.push((Token::Bad(other), off));
                    break;
                }
            }
        }
        let end = input.len();
        Parser { tokens, pos: 0, end }
    }

    fn peek(&self) -> Option<&(Token, usize)> {
        self.tokens.get(self.pos)
    }

    fn err_here(&self, expected: &str) -> ParseError {
        match self.peek() {
            Some((tok, off)) => ParseError {
                offset: *off,
                expected: expected.to_string(),
                found: tok.describe(),
            },
            None => ParseError {
                offset: self.end,
                expected: expected.to_string(),
                found: "end of input".to_string(),
            },
        }
    }

    fn parse_full(mut self) -> Result<GroupSpec, ParseError> {
        let spec = self.parse_spec()?;
        if let Some((tok, off)) = self.peek() {
            return Err(ParseError {
                offset: *off,
                expected: "`x`, `*`, or end of input".to_string(),
                found: tok.describe(),
            });
        }
        Ok(spec)
    }

    fn parse_spec(&mut self) -> Result<GroupSpec, ParseError> {
        let mut node = self.parse_atom()?;
        loop {
            match self.peek() {
                Some((Token::Direct, _)) => {
                    self.pos += 1;
                    let rhs = self.parse_atom()?;
                    node = GroupSpec::Direct(Box::new(node), Box::new(rhs));
                }
                Some((Token::Central, _)) => {
                    self.pos += 1;
                    let rhs = self.parse_atom()?;
                    node = GroupSpec::Central(Box::new(node), Box::new(rhs));
                }
                _ => return Ok(node),
            }
        }
    }

    fn parse_atom(&mut self) -> Result<GroupSpec, ParseError> {
        match self.peek().cloned() {
            Some((Token::LParen, _)) => {
                self.pos += 1;
                let inner = self.parse_spec()?;
                match self.peek() {
                    Some((Token::RParen, _)) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.err_here("`)`")),
                }
            }
            Some((Token::Name(name), off)) => {
                self.pos += 1;
                let ctor: fn(usize) -> GroupSpec = match name.as_str() {
                    "C" => GroupSpec::Cyclic,
                    "D" => GroupSpec::Dihedral,
                    "Q" => GroupSpec::Quaternion,
                    "EA" => GroupSpec::ElementaryAbelian,
                    "ESP" => GroupSpec::ExtraspecialPlus,
                    "ESM" => GroupSpec::ExtraspecialMinus,
                    "ESC4" => GroupSpec::ExtraspecialC4,
                    _ => {
                        return Err(ParseError {
                            offset: off,
                            expected: "one of C, D, Q, EA, ESP, ESM, ESC4".to_string(),
                            found: format!("name `{name}`"),
                        })
                    }
                };
                match self.peek() {
                    Some((Token::LParen, _)) => self.pos += 1,
                    _ => return Err(self.err_here("`(`")),
                }
                let n = match self.peek() {
                    Some((Token::Int(n), _)) => {
                        let n = *n;
                        self.pos += 1;
                        n
                    }
                    _ => return Err(self.err_here("an integer")),
                };
                match self.peek() {
                    Some((Token::RParen, _)) => self.pos += 1,
                    _ => return Err(self.err_here("`)`")),
                }
                Ok(ctor(n))
            }
            _ => Err(self.err_here("a constructor name or `(`")),
        }
    }
}

/// `ESC4` is the only constructor name containing a digit; allow digits to
/// continue a name only while the accumulated text is a prefix of it.
fn name_takes_digit(acc: &str, c: char) -> bool {
    c.is_ascii_digit() && matches!(acc, "ESC") && c == '4'
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(s: &str) -> String {
        GroupSpec::parse(s).unwrap().to_string()
    }

    #[test]
    fn parses_atoms() {
        assert_eq!(GroupSpec::parse("C(5)").unwrap(), GroupSpec::Cyclic(5));
        assert_eq!(GroupSpec::parse("D(26)").unwrap(), GroupSpec::Dihedral(26));
        assert_eq!(GroupSpec::parse("Q(16)").unwrap(), GroupSpec::Quaternion(16));
        assert_eq!(
            GroupSpec::parse("EA(32)").unwrap(),
            GroupSpec::ElementaryAbelian(32)
        );
        assert_eq!(
            GroupSpec::parse("ESC4(64)").unwrap(),
            GroupSpec::ExtraspecialC4(64)
        );
    }

    #[test]
    fn products_are_left_associative() {
        let spec = GroupSpec::parse("C(2)xC(2)xC(2)").unwrap();
        assert_eq!(
            spec,
            GroupSpec::Direct(
                Box::new(GroupSpec::Direct(
                    Box::new(GroupSpec::Cyclic(2)),
                    Box::new(GroupSpec::Cyclic(2)),
                )),
                Box::new(GroupSpec::Cyclic(2)),
            )
        );
    }

    #[test]
    fn parenthesized_and_mixed_operators() {
        let spec = GroupSpec::parse("(D(8)*Q(8))xC(2)").unwrap();
        assert_eq!(spec.order(), 64);
        assert_eq!(spec.to_string(), "(D(8)*Q(8))xC(2)");
        // Without parentheses the left-associative parse is identical.
        assert_eq!(GroupSpec::parse("D(8)*Q(8)xC(2)").unwrap(), spec);
    }

    #[test]
    fn unicode_star_alias_and_whitespace() {
        assert_eq!(roundtrip("D(8) ∗ Q(8)"), "D(8)*Q(8)");
        assert_eq!(roundtrip("  C( 5 ) "), "C(5)");
    }

    #[test]
    fn canonical_form_is_idempotent() {
        for s in [
            "C(5)",
            "D(8)xC(2)",
            "D(8)*Q(8)",
            "(D(8)*Q(8))xC(2)",
            "C(2)xC(2)xC(2)",
            "ESP(512)",
            "C(4)*D(8)",
            "(C(2)xC(2))*Q(8)",
        ] {
            let once = roundtrip(s);
            assert_eq!(roundtrip(&once), once, "not idempotent for {s}");
        }
    }

    #[test]
    fn orders() {
        assert_eq!(GroupSpec::parse("D(8)xC(2)").unwrap().order(), 16);
        assert_eq!(GroupSpec::parse("D(8)*Q(8)").unwrap().order(), 32);
        assert_eq!(GroupSpec::parse("(D(8)*Q(8))xC(2)").unwrap().order(), 64);
        assert_eq!(GroupSpec::parse("ESC4(16)").unwrap().order(), 16);
    }

    #[test]
    fn errors_carry_offset_and_hints() {
        let err = GroupSpec::parse("C(5)y").unwrap_err();
        assert_eq!(err.offset, 4);
        assert!(err.expected.contains("end of input"), "{err}");

        let err = GroupSpec::parse("C(").unwrap_err();
        assert_eq!(err.offset, 2);
        assert!(err.expected.contains("integer"), "{err}");

        let err = GroupSpec::parse("W(5)").unwrap_err();
        assert_eq!(err.offset, 0);
        assert!(err.expected.contains("ESC4"), "{err}");

        let err = GroupSpec::parse("C(3)x").unwrap_err();
        assert_eq!(err.offset, 5);
        assert!(err.found.contains("end of input"), "{err}");
    }

    #[test]
    fn domain_validation() {
        assert!(GroupSpec::parse("D(7)").unwrap().validate().is_err());
        assert!(GroupSpec::parse("D(4)").unwrap().validate().is_err());
        assert!(GroupSpec::parse("Q(10)").unwrap().validate().is_err());
        assert!(GroupSpec::parse("EA(12)").unwrap().validate().is_err());
        assert!(GroupSpec::parse("ESP(16)").unwrap().validate().is_err());
        assert!(GroupSpec::parse("ESM(64)").unwrap().validate().is_err());
        assert!(GroupSpec::parse("ESC4(32)").unwrap().validate().is_err());
        assert!(GroupSpec::parse("ESC4(8)").unwrap().validate().is_err());
        assert!(GroupSpec::parse("C(3)*C(3)").unwrap().validate().is_err());

        assert!(GroupSpec::parse("D(6)").unwrap().validate().is_ok());
        assert!(GroupSpec::parse("Q(8)").unwrap().validate().is_ok());
        assert!(GroupSpec::parse("ESP(8)").unwrap().validate().is_ok());
        assert!(GroupSpec::parse("ESM(512)").unwrap().validate().is_ok());
        assert!(GroupSpec::parse("ESC4(16)").unwrap().validate().is_ok());
    }
}

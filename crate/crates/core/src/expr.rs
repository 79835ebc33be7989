//! Expression language for elements: parser, printer and evaluator.
//!
//! Grammar, loosest to tightest: addition and subtraction, multiplication
//! (explicit `*` or juxtaposition), power `^` with a nonnegative integer
//! exponent, unary minus, atoms. Atoms are integer literals, `p/q`
//! rational literals, generators (`x2`, `y1`; bare `x`/`y` alias index 1
//! when `n = 1`), the matrix-unit sugar `E[i,j]` / `E[(a,b),(c,d)]`, and
//! parenthesized expressions. Whitespace is insignificant, and `xy`
//! tokenizes as the two generators `x`, `y`.

use std::fmt;
use std::str::FromStr;

use num::BigInt;

use crate::element::Element;
use crate::monomial::{EIndex, Exp as ExpDeg};
use crate::ring::RingSpec;
use crate::Error;

/// Evaluation context shared by the parser and the verification suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub n: usize,
    pub ring: RingSpec,
    pub max_deg: ExpDeg,
    pub seed: u64,
    pub output: OutputFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            n: 1,
            ring: RingSpec::Rational,
            max_deg: 8,
            seed: 42,
            output: OutputFormat::Text,
        }
    }
}

/// Abstract syntax of the expression language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Rational(BigInt, BigInt),
    GenX(usize),
    GenY(usize),
    EUnit(Vec<ExpDeg>, Vec<ExpDeg>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, ExpDeg),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Gen { is_x: bool, index: Option<usize> },
    EName,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokenize(input: &'a str) -> Result<Vec<(Token, usize)>, Error> {
        let mut lx = Lexer {
            src: input.as_bytes(),
            pos: 0,
        };
        let mut out = Vec::new();
        while lx.pos < lx.src.len() {
            let start = lx.pos;
            let c = lx.src[lx.pos];
            match c {
                b' ' | b'\t' | b'\n' | b'\r' => {
                    lx.pos += 1;
                    continue;
                }
                b'0'..=b'9' => {
                    let digits = lx.take_digits();
                    let v = BigInt::from_str(&digits).expect("digit run parses");
                    out.push((Token::Int(v), start));
                }
                b'x' | b'y' => {
                    lx.pos += 1;
                    let digits = lx.take_digits();
                    let index = if digits.is_empty() {
                        None
                    } else {
                        Some(digits.parse().map_err(|_| Error::Parse {
                            position: start,
                            message: "generator index too large".to_string(),
                        })?)
                    };
                    out.push((
                        Token::Gen {
                            is_x: c == b'x',
                            index,
                        },
                        start,
                    ));
                }
                b'E' => {
                    lx.pos += 1;
                    out.push((Token::EName, start));
                }
                b'+' => lx.push_symbol(&mut out, Token::Plus),
                b'-' => lx.push_symbol(&mut out, Token::Minus),
                b'*' => lx.push_symbol(&mut out, Token::Star),
                b'^' => lx.push_symbol(&mut out, Token::Caret),
                b'/' => lx.push_symbol(&mut out, Token::Slash),
                b'(' => lx.push_symbol(&mut out, Token::LParen),
                b')' => lx.push_symbol(&mut out, Token::RParen),
                b'[' => lx.push_symbol(&mut out, Token::LBracket),
                b']' => lx.push_symbol(&mut out, Token::RBracket),
                b',' => lx.push_symbol(&mut out, Token::Comma),
                _ => {
                    return Err(Error::Parse {
                        position: start,
                        message: format!("unexpected character `{}`", c as char),
                    })
                }
            }
        }
        Ok(out)
    }

    fn take_digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn push_symbol(&mut self, out: &mut Vec<(Token, usize)>, t: Token) {
        out.push((t, self.pos));
        self.pos += 1;
    }
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    n: usize,
    input_len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(_, p)| *p)
            .unwrap_or(self.input_len)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Token, what: &str) -> Result<(), Error> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn error(&self, message: String) -> Error {
        Error::Parse {
            position: self.here(),
            message,
        }
    }

    fn parse_expr(&mut self) -> Result<Expr, Error> {
        let mut lhs = self.parse_term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    let rhs = self.parse_term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    let rhs = self.parse_term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Expr, Error> {
        let mut lhs = self.parse_power()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    let rhs = self.parse_power()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                // juxtaposition: any token that can start an atom
                Some(Token::Int(_))
                | Some(Token::Gen { .. })
                | Some(Token::EName)
                | Some(Token::LParen) => {
                    let rhs = self.parse_power()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_power(&mut self) -> Result<Expr, Error> {
        let mut base = self.parse_unary()?;
        while self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.bump() {
                Some(Token::Int(v)) => {
                    let e: ExpDeg = v.try_into().map_err(|_| {
                        self.error("exponent out of range".to_string())
                    })?;
                    base = Expr::Pow(Box::new(base), e);
                }
                _ => return Err(self.error("expected nonnegative integer exponent".to_string())),
            }
        }
        Ok(base)
    }

    fn parse_unary(&mut self) -> Result<Expr, Error> {
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            let inner = self.parse_unary()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.parse_atom()
    }

    fn parse_atom(&mut self) -> Result<Expr, Error> {
        let pos = self.here();
        match self.bump() {
            Some(Token::Int(v)) => {
                // rational literal p/q
                if self.peek() == Some(&Token::Slash) {
                    self.pos += 1;
                    match self.bump() {
                        Some(Token::Int(q)) => Ok(Expr::Rational(v, q)),
                        _ => Err(self.error("expected denominator after `/`".to_string())),
                    }
                } else {
                    Ok(Expr::Int(v))
                }
            }
            Some(Token::Gen { is_x, index }) => {
                let index = match index {
                    Some(i) => i,
                    None if self.n == 1 => 1,
                    None => {
                        return Err(Error::Parse {
                            position: pos,
                            message: format!(
                                "bare generator needs an index when n = {} (write x1..x{})",
                                self.n, self.n
                            ),
                        })
                    }
                };
                if index == 0 || index > self.n {
                    return Err(Error::Parse {
                        position: pos,
                        message: format!("generator index {index} out of range 1..={}", self.n),
                    });
                }
                Ok(if is_x {
                    Expr::GenX(index)
                } else {
                    Expr::GenY(index)
                })
            }
            Some(Token::EName) => self.parse_e_sugar(),
            Some(Token::LParen) => {
                let inner = self.parse_expr()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(Error::Parse {
                position: pos,
                message: "expected a literal, generator, E[..] or `(`".to_string(),
            }),
        }
    }

    fn parse_e_sugar(&mut self) -> Result<Expr, Error> {
        self.expect(Token::LBracket, "`[` after E")?;
        if self.peek() == Some(&Token::LParen) {
            let alpha = self.parse_index_tuple()?;
            self.expect(Token::Comma, "`,` between index tuples")?;
            let beta = self.parse_index_tuple()?;
            self.expect(Token::RBracket, "`]`")?;
            if alpha.len() != self.n || beta.len() != self.n {
                return Err(self.error(format!(
                    "E index tuples must have length n = {}",
                    self.n
                )));
            }
            Ok(Expr::EUnit(alpha, beta))
        } else {
            let a = self.parse_index()?;
            self.expect(Token::Comma, "`,` between E indices")?;
            let b = self.parse_index()?;
            self.expect(Token::RBracket, "`]`")?;
            if self.n != 1 {
                return Err(
                    self.error("scalar E[i,j] needs n = 1; use E[(..),(..)]".to_string())
                );
            }
            Ok(Expr::EUnit(vec![a], vec![b]))
        }
    }

    fn parse_index_tuple(&mut self) -> Result<Vec<ExpDeg>, Error> {
        self.expect(Token::LParen, "`(`")?;
        let mut out = vec![self.parse_index()?];
        while self.peek() == Some(&Token::Comma) {
            self.pos += 1;
            out.push(self.parse_index()?);
        }
        self.expect(Token::RParen, "`)`")?;
        Ok(out)
    }

    fn parse_index(&mut self) -> Result<ExpDeg, Error> {
        match self.bump() {
            Some(Token::Int(v)) => v
                .try_into()
                .map_err(|_| self.error("index out of range".to_string())),
            _ => Err(self.error("expected a nonnegative integer index".to_string())),
        }
    }
}

/// Parse an expression against the configured `n`.
pub fn parse(input: &str, cfg: &Config) -> Result<Expr, Error> {
    let tokens = Lexer::tokenize(input)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        n: cfg.n,
        input_len: input.len(),
    };
    let expr = parser.parse_expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error("trailing input".to_string()));
    }
    Ok(expr)
}

/// Evaluate to a normal-form element over the configured ring.
pub fn eval(e: &Expr, cfg: &Config) -> Result<Element, Error> {
    let ring = cfg.ring;
    let n = cfg.n;
    Ok(match e {
        Expr::Int(v) => Element::scalar(n, ring.from_bigint(v.clone())),
        Expr::Rational(p, q) => {
            let c = ring.parse_coeff(&format!("{p}/{q}"))?;
            Element::scalar(n, c)
        }
        Expr::GenX(i) => Element::gen_x(*i, n, ring),
        Expr::GenY(i) => Element::gen_y(*i, n, ring),
        Expr::EUnit(alpha, beta) => {
            Element::e_unit(&EIndex::new(alpha.clone(), beta.clone()), ring)
        }
        Expr::Neg(inner) => eval(inner, cfg)?.neg(),
        Expr::Add(a, b) => eval(a, cfg)?.add(&eval(b, cfg)?),
        Expr::Sub(a, b) => eval(a, cfg)?.sub(&eval(b, cfg)?),
        Expr::Mul(a, b) => eval(a, cfg)?.mul(&eval(b, cfg)?),
        Expr::Pow(a, e) => eval(a, cfg)?.pow(*e),
    })
}

/// Parse and evaluate in one step.
pub fn eval_str(input: &str, cfg: &Config) -> Result<Element, Error> {
    eval(&parse(input, cfg)?, cfg)
}

// Precedence levels for the printer; parenthesize a child whose level is
// below what its position requires.
fn level(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) => 2,
        Expr::Pow(..) => 3,
        Expr::Neg(..) => 4,
        _ => 5,
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
            if level(e) < min {
                write!(f, "(")?;
                write!(f, "{e}")?;
                write!(f, ")")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            Expr::Int(v) => write!(f, "{v}"),
            Expr::Rational(p, q) => write!(f, "{p}/{q}"),
            Expr::GenX(i) => write!(f, "x{i}"),
            Expr::GenY(i) => write!(f, "y{i}"),
            Expr::EUnit(alpha, beta) => {
                if alpha.len() == 1 {
                    write!(f, "E[{},{}]", alpha[0], beta[0])
                } else {
                    let a: Vec<String> = alpha.iter().map(|v| v.to_string()).collect();
                    let b: Vec<String> = beta.iter().map(|v| v.to_string()).collect();
                    write!(f, "E[({}),({})]", a.join(","), b.join(","))
                }
            }
            Expr::Neg(inner) => {
                write!(f, "-")?;
                child(f, inner, 4)
            }
            Expr::Add(a, b) => {
                child(f, a, 1)?;
                write!(f, " + ")?;
                child(f, b, 2)
            }
            Expr::Sub(a, b) => {
                child(f, a, 1)?;
                write!(f, " - ")?;
                child(f, b, 2)
            }
            Expr::Mul(a, b) => {
                child(f, a, 2)?;
                write!(f, "*")?;
                child(f, b, 3)
            }
            Expr::Pow(a, e) => {
                child(f, a, 4)?;
                write!(f, "^{e}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg_n(n: usize) -> Config {
        Config {
            n,
            ..Config::default()
        }
    }

    #[test]
    fn parses_basic_arithmetic() {
        let cfg = cfg_n(1);
        let e = parse("y*x - 1", &cfg).unwrap();
        assert!(eval(&e, &cfg).unwrap().is_zero());
    }

    #[test]
    fn juxtaposition_and_aliases() {
        let cfg = cfg_n(1);
        // xy multiplies the two generators
        let a = eval_str("xy", &cfg).unwrap();
        let b = eval_str("x*y", &cfg).unwrap();
        assert_eq!(a, b);
        let c = eval_str("2x", &cfg).unwrap();
        assert_eq!(c, Element::gen_x(1, 1, cfg.ring).scale(&cfg.ring.from_i64(2)));
        let d = eval_str("(x-1)(x+1)", &cfg).unwrap();
        assert_eq!(d, eval_str("x^2 - 1", &cfg).unwrap());
    }

    #[test]
    fn e_sugar_both_forms() {
        let cfg = cfg_n(1);
        let e00 = eval_str("E[0,0]", &cfg).unwrap();
        assert_eq!(e00, eval_str("1 - x*y", &cfg).unwrap());
        let cfg2 = cfg_n(2);
        let e = eval_str("E[(0,0),(0,0)]", &cfg2).unwrap();
        assert_eq!(e.num_terms(), 4);
        assert!(parse("E[0,0]", &cfg2).is_err());
    }

    #[test]
    fn left_normality_identity_evaluates_to_zero() {
        let cfg = cfg_n(1);
        let e = eval_str("(x-1)*y - (1-(x-1)*y)*(x-1)", &cfg).unwrap();
        assert!(e.is_zero());
    }

    #[test]
    fn unary_minus_binds_tighter_than_power() {
        let cfg = cfg_n(1);
        let e = parse("-x^2", &cfg).unwrap();
        assert_eq!(
            e,
            Expr::Pow(Box::new(Expr::Neg(Box::new(Expr::GenX(1)))), 2)
        );
        // so -1^2 evaluates to 1
        assert_eq!(eval_str("-1^2", &cfg).unwrap(), Element::one(1, cfg.ring));
    }

    #[test]
    fn index_range_errors() {
        let cfg = cfg_n(2);
        assert!(parse("x3", &cfg).is_err());
        assert!(parse("x", &cfg).is_err());
        assert!(parse("x0", &cfg).is_err());
        assert!(parse("x2", &cfg).is_ok());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let cfg = cfg_n(1);
        match parse("x + ", &cfg) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse("x ^ y", &cfg).is_err());
        assert!(parse("(x", &cfg).is_err());
        assert!(parse("x )", &cfg).is_err());
    }

    #[test]
    fn rational_literals() {
        let cfg = cfg_n(1);
        let e = eval_str("1/2 x", &cfg).unwrap();
        let expected = Element::gen_x(1, 1, cfg.ring)
            .scale(&cfg.ring.parse_coeff("1/2").unwrap());
        assert_eq!(e, expected);
        // fractions are rejected over Z
        let zcfg = Config {
            ring: RingSpec::Integer,
            ..cfg_n(1)
        };
        assert!(eval_str("1/2", &zcfg).is_err());
    }

    fn arb_expr(n: usize) -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0i64..50).prop_map(|v| Expr::Int(BigInt::from(v))),
            ((1i64..20), (1i64..20))
                .prop_map(|(p, q)| Expr::Rational(BigInt::from(p), BigInt::from(q))),
            (1..=n).prop_map(Expr::GenX),
            (1..=n).prop_map(Expr::GenY),
            (
                prop::collection::vec(0u32..4, n),
                prop::collection::vec(0u32..4, n)
            )
                .prop_map(|(a, b)| Expr::EUnit(a, b)),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
                (inner.clone(), 0u32..4).prop_map(|(a, e)| Expr::Pow(Box::new(a), e)),
                inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(
            (n, e) in (1usize..=2).prop_flat_map(|n| (Just(n), arb_expr(n)))
        ) {
            // the printed form must parse back to the identical tree
            let cfg = cfg_n(n);
            let printed = e.to_string();
            let reparsed = parse(&printed, &cfg).unwrap();
            prop_assert_eq!(reparsed, e);
        }

        #[test]
        fn eval_is_multiplicative(seed in 0u64..200) {
            use rand::SeedableRng;
            let cfg = cfg_n(1);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let a = crate::sample::random_element(&mut rng, 1, cfg.ring, 3, 2);
            let b = crate::sample::random_element(&mut rng, 1, cfg.ring, 3, 2);
            // feed the displayed elements back through the parser
            let ea = eval_str(&a.to_string(), &cfg).unwrap();
            let eb = eval_str(&b.to_string(), &cfg).unwrap();
            prop_assert_eq!(&ea, &a);
            prop_assert_eq!(&eb, &b);
            prop_assert_eq!(ea.mul(&eb), a.mul(&b));
        }
    }
}

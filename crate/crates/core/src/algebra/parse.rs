//! Expression parser for chain inputs.
//!
//! The accepted grammar, whitespace insensitive:
//!
//! ```text
//! chain   := [sign] term (('+' | '-') term)*
//! term    := ['-'] [scalar '*'] product
//! product := primary ('(x)' primary)*
//! primary := '0' | '1' | pPart qPart? | qPart | wPart | '(' product ')'
//! scalar  := int ['/' int]
//! pPart   := 'p[' int (',' int)* ']'     (likewise qPart; 'w[]' is the
//!                                         free unit)
//! ```
//!
//! An expression is either a semigroup chain or a free-word chain; the two
//! monomial families cannot be mixed. Bare `1` and `0` are neutral and an
//! expression containing nothing else parses as a semigroup chain.
//! Adjacent factors without a `(x)` separator are a syntax error, reported
//! with a byte position as every other syntax error is.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::Scalar;
use crate::chains::{Chain, ElementaryTensor};
use crate::error::{Error, ParseError, Result};
use crate::semigroup::{CuntzMonomial, FreeWord, Word};

/// A parsed chain, tagged by the coefficient algebra it lives over.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Parsed {
    Cuntz(Chain<CuntzMonomial>),
    Free(Chain<FreeWord>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Token {
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Tensor,
    Int(String),
    Mono(char, Vec<u32>),
}

fn err(position: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        position,
        message: message.into(),
    }
}

fn lex(input: &str) -> std::result::Result<Vec<(usize, Token)>, ParseError> {
    let bytes = input.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' => {
                out.push((i, Token::Plus));
                i += 1;
            }
            b'-' => {
                out.push((i, Token::Minus));
                i += 1;
            }
            b'*' => {
                out.push((i, Token::Star));
                i += 1;
            }
            b'/' => {
                out.push((i, Token::Slash));
                i += 1;
            }
            b')' => {
                out.push((i, Token::RParen));
                i += 1;
            }
            b'(' => {
                // '(' ws 'x' ws ')' is the tensor separator, any other
                // parenthesis opens a group
                let mut j = i + 1;
                while j < bytes.len() && bytes[j].is_ascii_whitespace() {
                    j += 1;
                }
                if j < bytes.len() && bytes[j] == b'x' {
                    let mut k = j + 1;
                    while k < bytes.len() && bytes[k].is_ascii_whitespace() {
                        k += 1;
                    }
                    if k < bytes.len() && bytes[k] == b')' {
                        out.push((i, Token::Tensor));
                        i = k + 1;
                        continue;
                    }
                }
                out.push((i, Token::LParen));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Token::Int(input[start..i].to_string())));
            }
            c @ (b'p' | b'q' | b'w') => {
                let start = i;
                i += 1;
                if i >= bytes.len() || bytes[i] != b'[' {
                    return Err(err(i, format!("expected '[' after '{}'", c as char)));
                }
                i += 1;
                let mut indices = Vec::new();
                loop {
                    while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                        i += 1;
                    }
                    if indices.is_empty() && i < bytes.len() && bytes[i] == b']' {
                        break;
                    }
                    let num_start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i == num_start {
                        return Err(err(i, "expected a generator index"));
                    }
                    let value: u32 = input[num_start..i]
                        .parse()
                        .map_err(|_| err(num_start, "generator index out of range"))?;
                    if value == 0 {
                        return Err(err(num_start, "generator indices start at 1"));
                    }
                    indices.push(value);
                    while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                        i += 1;
                    }
                    if i < bytes.len() && bytes[i] == b',' {
                        i += 1;
                        continue;
                    }
                    break;
                }
                if i >= bytes.len() || bytes[i] != b']' {
                    return Err(err(i, "expected ']'"));
                }
                i += 1;
                if indices.is_empty() && c != b'w' {
                    return Err(err(
                        start,
                        format!("'{}[]' has no indices; the unit is written '1'", c as char),
                    ));
                }
                out.push((start, Token::Mono(c as char, indices)));
            }
            _ => {
                let c = input[i..].chars().next().unwrap();
                return Err(err(i, format!("unexpected character '{c}'")));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum RawFactor {
    Unit,
    Zero,
    Pq(Word, Word),
    Free(Word),
}

struct RawTerm {
    coeff: Scalar,
    factors: Vec<(usize, RawFactor)>,
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn peek_at(&self, offset: usize) -> Option<&Token> {
        self.tokens.get(self.pos + offset).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<(usize, Token)> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect_int(&mut self) -> std::result::Result<BigInt, ParseError> {
        match self.bump() {
            Some((_, Token::Int(digits))) => {
                Ok(BigInt::from_str(&digits).expect("lexer emits digit strings"))
            }
            Some((p, _)) => Err(err(p, "expected an integer")),
            None => Err(err(self.end, "expected an integer")),
        }
    }

    /// `['-'] [scalar '*'] product`
    fn term(&mut self) -> std::result::Result<RawTerm, ParseError> {
        let mut coeff = Scalar::one();
        if matches!(self.peek(), Some(Token::Minus)) {
            self.bump();
            coeff = -coeff;
        }
        // A leading integer is a coefficient when '*' (or '/') follows;
        // otherwise it must itself be the monomial 0 or 1.
        if matches!(self.peek(), Some(Token::Int(_)))
            && matches!(self.peek_at(1), Some(Token::Star) | Some(Token::Slash))
        {
            let numer = self.expect_int()?;
            let denom = if matches!(self.peek(), Some(Token::Slash)) {
                self.bump();
                let pos = self.here();
                let d = self.expect_int()?;
                if d == BigInt::from(0) {
                    return Err(err(pos, "zero denominator"));
                }
                d
            } else {
                BigInt::one()
            };
            match self.bump() {
                Some((_, Token::Star)) => {}
                Some((p, _)) => return Err(err(p, "expected '*' after coefficient")),
                None => return Err(err(self.end, "expected '*' after coefficient")),
            }
            coeff *= Scalar::new(numer, denom);
        }
        let factors = self.product()?;
        Ok(RawTerm { coeff, factors })
    }

    /// `primary ('(x)' primary)*`
    fn product(&mut self) -> std::result::Result<Vec<(usize, RawFactor)>, ParseError> {
        let mut factors = Vec::new();
        self.primary(&mut factors)?;
        while matches!(self.peek(), Some(Token::Tensor)) {
            self.bump();
            self.primary(&mut factors)?;
        }
        Ok(factors)
    }

    fn primary(
        &mut self,
        out: &mut Vec<(usize, RawFactor)>,
    ) -> std::result::Result<(), ParseError> {
        match self.bump() {
            Some((p, Token::Int(digits))) => match digits.as_str() {
                "1" => out.push((p, RawFactor::Unit)),
                "0" => out.push((p, RawFactor::Zero)),
                _ => return Err(err(p, "only '0' and '1' may stand alone as factors")),
            },
            Some((p, Token::Mono('p', alpha))) => {
                let beta = match self.peek() {
                    Some(Token::Mono('q', _)) => {
                        let Some((_, Token::Mono(_, beta))) = self.bump() else {
                            unreachable!()
                        };
                        beta
                    }
                    _ => Vec::new(),
                };
                out.push((
                    p,
                    RawFactor::Pq(Word::from_indices(&alpha), Word::from_indices(&beta)),
                ));
            }
            Some((p, Token::Mono('q', beta))) => {
                out.push((p, RawFactor::Pq(Word::empty(), Word::from_indices(&beta))));
            }
            Some((p, Token::Mono(_, word))) => {
                out.push((p, RawFactor::Free(Word::from_indices(&word))));
            }
            Some((_, Token::LParen)) => {
                let inner = self.product()?;
                match self.bump() {
                    Some((_, Token::RParen)) => out.extend(inner),
                    Some((p, _)) => return Err(err(p, "expected ')'")),
                    None => return Err(err(self.end, "expected ')'")),
                }
            }
            Some((p, _)) => return Err(err(p, "expected a factor")),
            None => return Err(err(self.end, "expected a factor")),
        }
        Ok(())
    }
}

/// Parse an expression into a chain.
///
/// `degree` fixes the expected tensor degree; every term must match it and
/// a bare `0` adopts it. With `None` the degree is inferred from the first
/// term (a lone `0` parses as a degree-0 chain).
pub fn parse_chain(input: &str, degree: Option<usize>) -> Result<Parsed> {
    let tokens = lex(input)?;
    if tokens.is_empty() {
        return Err(err(0, "empty expression").into());
    }
    let end = input.len();
    let mut parser = Parser { tokens, pos: 0, end };

    let mut sign = Scalar::one();
    if matches!(parser.peek(), Some(Token::Plus)) {
        parser.bump();
    }
    // a leading '-' belongs to the first term and is handled there
    let mut terms = Vec::new();
    loop {
        let mut term = parser.term()?;
        term.coeff *= &sign;
        terms.push(term);
        match parser.bump() {
            None => break,
            Some((_, Token::Plus)) => sign = Scalar::one(),
            Some((_, Token::Minus)) => sign = -Scalar::one(),
            Some((p, _)) => {
                return Err(err(p, "expected '+', '-', '(x)', or end of expression").into())
            }
        }
    }

    // one coefficient algebra per expression
    let mut free_mode: Option<bool> = None;
    for t in &terms {
        for (p, f) in &t.factors {
            let this = match f {
                RawFactor::Pq(..) => Some(false),
                RawFactor::Free(..) => Some(true),
                _ => None,
            };
            if let Some(this) = this {
                match free_mode {
                    None => free_mode = Some(this),
                    Some(seen) if seen != this => {
                        return Err(err(
                            *p,
                            "free words and semigroup monomials cannot be mixed",
                        )
                        .into());
                    }
                    _ => {}
                }
            }
        }
    }

    // a lone '0' is degree agnostic; every other term fixes a degree shape
    let shape_of = |t: &RawTerm| -> Option<usize> {
        if t.factors.len() == 1 && matches!(t.factors[0].1, RawFactor::Zero) {
            None
        } else {
            Some(t.factors.len() - 1)
        }
    };
    let mut expected = degree;
    for t in &terms {
        let Some(found) = shape_of(t) else { continue };
        match expected {
            None => expected = Some(found),
            Some(n) if n != found => {
                return Err(Error::DegreeMismatch { expected: n, found })
            }
            _ => {}
        }
    }
    let chain_degree = expected.unwrap_or(0);

    if free_mode == Some(true) {
        let mut chain: Chain<FreeWord> = Chain::zero(chain_degree);
        for t in &terms {
            let Some(factors) = build_factors(&t.factors, |f| match f {
                RawFactor::Unit => Some(FreeWord::unit()),
                RawFactor::Free(w) => Some(FreeWord::new(w.clone())),
                RawFactor::Zero => None,
                RawFactor::Pq(..) => unreachable!("mode checked above"),
            }) else {
                continue;
            };
            chain.add_term(ElementaryTensor::new(factors), t.coeff.clone());
        }
        Ok(Parsed::Free(chain))
    } else {
        let mut chain: Chain<CuntzMonomial> = Chain::zero(chain_degree);
        for t in &terms {
            let Some(factors) = build_factors(&t.factors, |f| match f {
                RawFactor::Unit => Some(CuntzMonomial::unit()),
                RawFactor::Pq(a, b) => Some(CuntzMonomial::new(a.clone(), b.clone())),
                RawFactor::Zero => None,
                RawFactor::Free(..) => unreachable!("mode checked above"),
            }) else {
                continue;
            };
            chain.add_term(ElementaryTensor::new(factors), t.coeff.clone());
        }
        Ok(Parsed::Cuntz(chain))
    }
}

/// `None` when the term contains a zero factor and therefore vanishes.
fn build_factors<B>(
    raw: &[(usize, RawFactor)],
    mut f: impl FnMut(&RawFactor) -> Option<B>,
) -> Option<Vec<B>> {
    raw.iter().map(|(_, r)| f(r)).collect()
}

/// Parse an expression known to be over the semigroup algebra.
pub fn parse_cuntz(input: &str, degree: Option<usize>) -> Result<Chain<CuntzMonomial>> {
    match parse_chain(input, degree)? {
        Parsed::Cuntz(c) => Ok(c),
        Parsed::Free(_) => Err(err(0, "expected a semigroup expression, found free words").into()),
    }
}

/// Parse an expression known to be over the free tensor algebra.
pub fn parse_free(input: &str, degree: Option<usize>) -> Result<Chain<FreeWord>> {
    match parse_chain(input, degree)? {
        Parsed::Free(c) => Ok(c),
        Parsed::Cuntz(c) => {
            // unit-only expressions are neutral and convert freely
            if c.terms()
                .iter()
                .all(|(t, _)| t.factors().iter().all(|m| m.is_unit()))
            {
                let mut out = Chain::zero(c.degree());
                for (t, coeff) in c.terms().iter() {
                    out.add_term(ElementaryTensor::units(t.degree()), coeff.clone());
                }
                return Ok(out);
            }
            Err(err(0, "expected a free-word expression, found semigroup monomials").into())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{scalar, scalar_int};

    fn pq(alpha: &[u32], beta: &[u32]) -> CuntzMonomial {
        CuntzMonomial::new(Word::from_indices(alpha), Word::from_indices(beta))
    }

    fn cuntz(input: &str) -> Chain<CuntzMonomial> {
        parse_cuntz(input, None).unwrap()
    }

    fn syntax_error(input: &str) -> ParseError {
        match parse_chain(input, None) {
            Err(Error::Parse(e)) => e,
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn single_tensor() {
        let x = cuntz("p[1] (x) q[1]");
        let t = ElementaryTensor::new(vec![pq(&[1], &[]), pq(&[], &[1])]);
        assert_eq!(x, Chain::from_tensor(t));
        assert_eq!(x.degree(), 1);
    }

    #[test]
    fn merged_monomial_and_whitespace() {
        assert_eq!(cuntz("p[1,2]q[3]"), cuntz("  p[ 1 , 2 ] q[3]  "));
        let x = cuntz("p[1,2]q[3]");
        assert_eq!(
            x,
            Chain::from_tensor(ElementaryTensor::new(vec![pq(&[1, 2], &[3])]))
        );
    }

    #[test]
    fn sums_scalars_and_signs() {
        let x = cuntz("3/2 * (p[1] (x) q[1]) + -1 * (1 (x) 1)");
        let mut expect = Chain::zero(1);
        expect.add_term(
            ElementaryTensor::new(vec![pq(&[1], &[]), pq(&[], &[1])]),
            scalar(3, 2),
        );
        expect.add_term(ElementaryTensor::units(1), scalar_int(-1));
        assert_eq!(x, expect);

        let y = cuntz("-1 * (q[1] (x) p[1])");
        assert_eq!(
            y,
            Chain::from_tensor(ElementaryTensor::new(vec![pq(&[], &[1]), pq(&[1], &[])]))
                .scaled(&scalar_int(-1))
        );

        assert_eq!(cuntz("1 - p[1]q[1]"), &Chain::units(0) - &cuntz("p[1]q[1]"));
    }

    #[test]
    fn zero_chains_and_degree_hints() {
        let z = parse_cuntz("0", Some(2)).unwrap();
        assert_eq!(z, Chain::zero(2));
        assert_eq!(cuntz("0"), Chain::zero(0));
        let via_term = parse_cuntz("p[1] (x) q[1] - p[1] (x) q[1]", None).unwrap();
        assert_eq!(via_term, Chain::zero(1));
        assert!(matches!(
            parse_cuntz("p[1] (x) q[1]", Some(2)),
            Err(Error::DegreeMismatch {
                expected: 2,
                found: 1
            })
        ));
        assert!(matches!(
            parse_cuntz("p[1] + q[1] (x) 1", None),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn free_words_and_unit() {
        let x = parse_free("w[1,2] (x) w[]", None).unwrap();
        assert_eq!(
            x,
            Chain::from_tensor(ElementaryTensor::new(vec![
                FreeWord::from_indices(&[1, 2]),
                FreeWord::unit(),
            ]))
        );
        // unit-only expressions convert to either algebra
        assert_eq!(parse_free("1 (x) 1", None).unwrap(), Chain::units(1));
        let e = syntax_error("w[1] (x) p[1]");
        assert_eq!(e.position, 9);
    }

    #[test]
    fn grouping_flattens() {
        assert_eq!(
            cuntz("(p[1] (x) q[1]) (x) 1"),
            cuntz("p[1] (x) (q[1] (x) 1)")
        );
        assert_eq!(cuntz("2 * (p[1] (x) q[1])").degree(), 1);
    }

    #[test]
    fn juxtaposition_is_rejected() {
        let e = syntax_error("q[1] p[1]");
        assert_eq!(e.position, 5);
        assert!(e.message.contains("(x)"));
        syntax_error("p[1] p[2]");
        syntax_error("1 1");
    }

    #[test]
    fn malformed_inputs_report_positions() {
        assert_eq!(syntax_error("").position, 0);
        assert_eq!(syntax_error("p[0]").position, 2);
        assert_eq!(syntax_error("p[]").position, 0);
        assert_eq!(syntax_error("p[1] (x)").position, 8);
        assert_eq!(syntax_error("2 p[1]").position, 0);
        assert_eq!(syntax_error("1/2").position, 3);
        assert_eq!(syntax_error("(p[1] (x) q[1]").position, 14);
        assert_eq!(syntax_error("p[1] @").position, 5);
        assert_eq!(syntax_error("1/0 * p[1]").position, 2);
    }

    #[test]
    fn format_then_parse_round_trips() {
        for text in [
            "p[1] (x) q[1]",
            "-1 * (q[1] (x) p[1])",
            "1 - p[1]q[1]",
            "3/2 * (p[1] (x) q[1]) + 1 (x) p[2]q[2]",
            "1 (x) 1",
            "p[1,2]q[3] (x) 1 (x) q[2]",
        ] {
            let x = cuntz(text);
            let printed = x.to_string();
            assert_eq!(cuntz(&printed), x, "round trip through {printed:?}");
        }
        let w = parse_free("w[1,2] (x) w[] - 2 * (w[2] (x) w[1])", None).unwrap();
        assert_eq!(parse_free(&w.to_string(), None).unwrap(), w);
    }

    #[test]
    fn scalar_parsing_edge_cases() {
        assert_eq!(cuntz("-1"), Chain::units(0).scaled(&scalar_int(-1)));
        assert_eq!(cuntz("- 2 * 1"), Chain::units(0).scaled(&scalar_int(-2)));
        assert_eq!(cuntz("7/14 * 1"), Chain::units(0).scaled(&scalar(1, 2)));
        assert_eq!(
            cuntz("p[1] - -1 * q[1]"),
            &cuntz("p[1]") + &cuntz("q[1]")
        );
    }
}

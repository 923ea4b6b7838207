//! Canonical text form: descending graded-lex terms, explicit rational
//! coefficients, `*`-joined factors, e.g. `3/2*s2^-1*s3 - s1^2`.

use std::fmt;

use super::context::Context;
use super::polynomial::SparsePolynomial;
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let ctx = self.context();
        for (k, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let factors: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, &e)| if e == 1 { ctx.name(i).to_string() } else { format!("{}^{}", ctx.name(i), e) })
                .collect();
            if factors.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{a}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Parses the canonical text form (and mild variations in spacing and
/// factor order) into a polynomial over `ctx`.
pub fn parse_polynomial(ctx: &Context, text: &str) -> Result<SparsePolynomial> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut terms = Vec::new();
    let bytes = cleaned.as_bytes();
    let mut start = 0;
    let mut sign = 1i64;
    if bytes[0] == b'-' || bytes[0] == b'+' {
        sign = if bytes[0] == b'-' { -1 } else { 1 };
        start = 1;
    }
    let mut i = start;
    while i <= bytes.len() {
        let at_split = i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && i > start && bytes[i - 1] != b'^');
        if at_split {
            let chunk = &cleaned[start..i];
            terms.push(parse_term(ctx, chunk, sign)?);
            if i < bytes.len() {
                sign = if bytes[i] == b'-' { -1 } else { 1 };
            }
            start = i + 1;
        }
        i += 1;
    }
    SparsePolynomial::from_terms(ctx, terms)
}

fn parse_term(ctx: &Context, chunk: &str, sign: i64) -> Result<(Vec<i16>, ExactScalar)> {
    if chunk.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let mut coeff = ExactScalar::from_int(sign);
    let mut exps = vec![0i16; ctx.arity()];
    for factor in chunk.split('*') {
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in `{chunk}`")));
        }
        if factor.as_bytes()[0].is_ascii_digit() {
            coeff = coeff * factor.parse::<ExactScalar>()?;
            continue;
        }
        let (name, e) = match factor.split_once('^') {
            Some((n, e)) => (n, e.parse::<i16>().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?),
            None => (factor, 1),
        };
        let v = ctx.index_of(name)?;
        exps[v] += e;
    }
    Ok((exps, coeff))
}

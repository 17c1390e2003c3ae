//! Ideal input formats.
//!
//! Two formats are accepted everywhere an ideal is read:
//!
//! * structured JSON: `{"n":5,"gens":[[3,0,0,0,0],[0,2,0,0,0]]}`
//! * human syntax: `"x1^3, x2^2, x1*x5"`, with an optional `n=5;` prefix
//!   fixing the ambient variable count (otherwise the largest mentioned
//!   variable index is used). `1` denotes the unit ideal, `0` the zero
//!   ideal.

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

/// Parses either format, sniffing JSON by a leading `{`.
pub fn ideal_from_str(text: &str) -> Result<MonomialIdeal> {
    if text.trim_start().starts_with('{') {
        ideal_from_json(text)
    } else {
        ideal_from_human(text)
    }
}

pub fn ideal_from_json(text: &str) -> Result<MonomialIdeal> {
    Ok(serde_json::from_str(text)?)
}

pub fn ideal_to_json(ideal: &MonomialIdeal) -> String {
    serde_json::to_string(ideal).expect("ideal serialization cannot fail")
}

/// Parses the human syntax.
pub fn ideal_from_human(text: &str) -> Result<MonomialIdeal> {
    let text = text.trim();
    let (declared_n, body) = match text.strip_prefix("n=") {
        Some(rest) => {
            let (num, body) = rest.split_once(';').ok_or_else(|| {
                Error::Parse("expected ';' after the n=<count> prefix".into())
            })?;
            let n: usize = num
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("invalid variable count {:?}", num.trim())))?;
            (Some(n), body)
        }
        None => (None, text),
    };

    let mut gens_raw: Vec<Vec<(usize, u32)>> = Vec::new();
    let mut saw_unit = false;
    let mut max_index = 0usize;
    for part in body.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        if part == "0" {
            // contributes nothing
            continue;
        }
        let mut factors = Vec::new();
        let mut constant_one = true;
        for factor in part.split('*') {
            let factor = factor.trim();
            if factor == "1" {
                continue;
            }
            constant_one = false;
            let (idx, exp) = parse_factor(factor)?;
            max_index = max_index.max(idx);
            factors.push((idx, exp));
        }
        if constant_one {
            saw_unit = true;
        } else {
            gens_raw.push(factors);
        }
    }

    let n = match declared_n {
        Some(n) => {
            if max_index > n {
                return Err(Error::Parse(format!(
                    "variable x{max_index} exceeds the declared count n={n}"
                )));
            }
            n
        }
        None => {
            if max_index == 0 {
                return Err(Error::Parse(
                    "cannot infer the variable count; use an n=<count>; prefix".into(),
                ));
            }
            max_index
        }
    };

    let mut gens = Vec::with_capacity(gens_raw.len() + usize::from(saw_unit));
    if saw_unit {
        gens.push(Monomial::one(n));
    }
    for factors in gens_raw {
        let mut exps = vec![0u32; n];
        for (idx, exp) in factors {
            exps[idx - 1] = exps[idx - 1].saturating_add(exp);
        }
        gens.push(Monomial::new(exps));
    }
    MonomialIdeal::new(n, gens)
}

/// One factor: `x<idx>` or `x<idx>^<exp>`.
fn parse_factor(factor: &str) -> Result<(usize, u32)> {
    let rest = factor
        .strip_prefix('x')
        .ok_or_else(|| Error::Parse(format!("expected a variable, found {factor:?}")))?;
    let (idx_str, exp_str) = match rest.split_once('^') {
        Some((i, e)) => (i.trim(), Some(e.trim())),
        None => (rest.trim(), None),
    };
    let idx: usize = idx_str
        .parse()
        .map_err(|_| Error::Parse(format!("invalid variable index in {factor:?}")))?;
    if idx == 0 {
        return Err(Error::Parse("variables are 1-indexed".into()));
    }
    let exp: u32 = match exp_str {
        Some(e) => e
            .parse()
            .map_err(|_| Error::Parse(format!("invalid exponent in {factor:?}")))?,
        None => 1,
    };
    Ok((idx, exp))
}

//! Text grammar for representations: `2*xi^3 + sigma`, `xihat^2`,
//! `chi(1,0,2)`, `triv`, or `0` for the zero representation.

use super::{IrredLabel, RealRep, RepFamily};
use crate::error::{Error, Result};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_int(s: &str, what: &str) -> Result<i64> {
    s.trim().parse::<i64>().map_err(|_| parse_err(format!("expected an integer {what}, found {s:?}")))
}

fn exponent(rest: &str) -> Result<i64> {
    let rest = rest.trim();
    if rest.is_empty() {
        return Ok(1);
    }
    match rest.strip_prefix('^') {
        Some(e) => parse_int(e, "exponent"),
        None => Err(parse_err(format!("unexpected {rest:?} after label"))),
    }
}

pub fn parse_rep(family: RepFamily, n: u64, s: &str) -> Result<RealRep> {
    let mut v = RealRep::zero(family, n)?;
    if s.trim() == "0" {
        return Ok(v);
    }
    for term in s.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(parse_err(format!("empty term in {s:?}")));
        }
        let (mult, atom) = match term.split_once('*') {
            Some((c, a)) => {
                let c = parse_int(c, "coefficient")?;
                if c < 0 {
                    return Err(parse_err(format!("negative coefficient in {term:?}")));
                }
                (c as u64, a.trim())
            }
            None => (1, term),
        };
        if let Some(rest) = atom.strip_prefix("xihat") {
            v.add_xihat(exponent(rest)?, mult)?;
        } else if let Some(rest) = atom.strip_prefix("xi") {
            v.add_xi(exponent(rest)?, mult)?;
        } else if let Some(rest) = atom.strip_prefix("chi(") {
            let inner = rest.strip_suffix(')').ok_or_else(|| parse_err(format!("unclosed chi in {term:?}")))?;
            let c = inner
                .split(',')
                .map(|x| parse_int(x, "character exponent").and_then(|a| u64::try_from(a).map_err(|_| parse_err("negative character exponent"))))
                .collect::<Result<Vec<u64>>>()?;
            v.add(IrredLabel::ExtChar(c), mult)?;
        } else {
            let label = match atom {
                "triv" | "1" => IrredLabel::Triv,
                "sigma" => IrredLabel::Sign,
                _ => return Err(parse_err(format!("unknown representation label {atom:?}"))),
            };
            v.add(label, mult)?;
        }
    }
    Ok(v)
}

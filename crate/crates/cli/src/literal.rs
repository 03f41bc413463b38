//! Element literals such as `2*[a3] + 1/2*[a0] - [a1]`.
//!
//! A term is an optional coefficient followed by `*` and a bracketed arrow
//! id (`[a3]` or `[3]`). Whitespace is ignored.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, ensure, Context, Result};
use hyperq::{AlgebraElement, ExtNat};
use num::{BigInt, BigRational};

/// Splits a literal into signed `(coefficient text, arrow)` terms.
fn terms(text: &str) -> Result<Vec<(bool, Option<String>, usize)>> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() || s == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut rest = s.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let negative = match rest.as_bytes()[0] {
            b'+' => {
                rest = &rest[1..];
                false
            }
            b'-' => {
                rest = &rest[1..];
                true
            }
            _ if first => false,
            _ => bail!("expected '+' or '-' before {rest:?}"),
        };
        first = false;
        let open = rest.find('[').ok_or_else(|| anyhow!("missing '[' in term {rest:?}"))?;
        let close = rest.find(']').ok_or_else(|| anyhow!("missing ']' in term {rest:?}"))?;
        ensure!(open < close, "malformed term {rest:?}");
        let coeff = &rest[..open];
        let coeff = match coeff.strip_suffix('*') {
            Some(c) => Some(c.to_string()),
            None if coeff.is_empty() => None,
            None => bail!("coefficient {coeff:?} must be followed by '*'"),
        };
        let id = &rest[open + 1..close];
        let id = id.strip_prefix('a').unwrap_or(id);
        let arrow = id.parse().with_context(|| format!("bad arrow id {id:?}"))?;
        out.push((negative, coeff, arrow));
        rest = &rest[close + 1..];
    }
    Ok(out)
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let (num, den) = s.split_once('/').unwrap_or((s, "1"));
    let num: BigInt = num.parse().with_context(|| format!("bad coefficient {s:?}"))?;
    let den: BigInt = den.parse().with_context(|| format!("bad coefficient {s:?}"))?;
    ensure!(den != BigInt::from(0), "zero denominator in {s:?}");
    Ok(BigRational::new(num, den))
}

pub fn parse_element(text: &str) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero();
    for (negative, coeff, arrow) in terms(text)? {
        let c = match coeff {
            Some(c) => parse_rational(&c)?,
            None => BigRational::from_integer(1.into()),
        };
        out.add_term(arrow, if negative { -c } else { c });
    }
    Ok(out)
}

/// A function from arrows to extended naturals; coefficients are naturals
/// or `inf`, and repeated arrows add up.
pub fn parse_ext_function(text: &str) -> Result<BTreeMap<usize, ExtNat>> {
    let mut out: BTreeMap<usize, ExtNat> = BTreeMap::new();
    for (negative, coeff, arrow) in terms(text)? {
        ensure!(!negative, "extended naturals cannot be negative");
        let v = match coeff {
            Some(c) => c.parse::<ExtNat>().with_context(|| format!("bad extended natural {c:?}"))?,
            None => ExtNat::ONE,
        };
        let slot = out.entry(arrow).or_default();
        *slot = *slot + v;
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

//! Shared plain-text rendering of series terms.

use super::ring::parse_rational;

pub(crate) fn power(var: &str, e: i64) -> String {
    match e {
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

/// Returns `(negative, body)` for one `c·var^e` term.
pub(crate) fn term(coeff: &str, var: &str, e: i64) -> (bool, String) {
    if parse_rational(coeff).is_ok() {
        let (neg, abs) = match coeff.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, coeff),
        };
        let body = match (abs, e) {
            (_, 0) => abs.to_string(),
            ("1", _) => power(var, e),
            _ => format!("{abs}*{}", power(var, e)),
        };
        (neg, body)
    } else if e == 0 {
        (false, format!("({coeff})"))
    } else {
        (false, format!("({coeff})*{}", power(var, e)))
    }
}

pub(crate) fn join(parts: Vec<(bool, String)>) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (neg, body)) in parts.into_iter().enumerate() {
        match (idx, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

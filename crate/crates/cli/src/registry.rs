//! Named builtin contexts.

use crate::document::{parse_mctx, ContextDocument};
use crate::error::CliError;

pub const AVAILABLE: &str =
    "full:<n>, ks:<n>:<s>, tri:<n>,<m>, zero:<n>,<m>, paper:ex2.4, paper:ex2.8, paper:ex2.12";

/// The standard battery used by the acceptance checks.
pub const BATTERY: [&str; 18] = [
    "full:2",
    "full:3",
    "full:4",
    "full:5",
    "full:6",
    "ks:4:2",
    "ks:6:0",
    "ks:6:1",
    "ks:6:2",
    "ks:6:3",
    "ks:6:4",
    "ks:6:5",
    "tri:4,2",
    "zero:2,2",
    "zero:2,4",
    "paper:ex2.4",
    "paper:ex2.8",
    "paper:ex2.12",
];

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Whether `name` uses builtin syntax (as opposed to a file path).
pub fn looks_builtin(name: &str) -> bool {
    ["full:", "ks:", "tri:", "zero:", "paper:"].iter().any(|p| name.starts_with(p))
}

fn text_for(name: &str) -> Option<String> {
    let modulus = |s: &str| s.parse::<usize>().ok().filter(|&n| n >= 2);
    let pair = |s: &str| {
        let (a, b) = s.split_once(',')?;
        Some((modulus(a)?, modulus(b)?))
    };
    if let Some(n) = name.strip_prefix("full:").and_then(modulus) {
        return Some(format!(
            "context {name}\nbase zn {n}\nR all\nS all\nV all\nW all\nproduct VW inherited\nproduct WV inherited\n"
        ));
    }
    if let Some(rest) = name.strip_prefix("ks:") {
        let (n, s) = rest.split_once(':')?;
        let (n, s) = (modulus(n)?, s.parse::<usize>().ok()?);
        if s >= n {
            return None;
        }
        return Some(format!("context {name}\nbase zn {n}\nR all\nS all\nV all\nW all\nscalar s {s}\n"));
    }
    if let Some((n, m)) = name.strip_prefix("tri:").and_then(pair) {
        return Some(format!(
            "context {name}\nR zn {n}\nS zn {m}\nV zn {}\nW zero\nproduct VW zero\nproduct WV zero\n",
            gcd(n, m)
        ));
    }
    if let Some((n, m)) = name.strip_prefix("zero:").and_then(pair) {
        return Some(format!(
            "context {name}\nR zn {n}\nS zn {m}\nV zero\nW zero\nproduct VW zero\nproduct WV zero\n"
        ));
    }
    let text = match name {
        "paper:ex2.4" => concat!(
            "context paper:ex2.4\nbase zn 8\nR all\nS all\nV all\nW all\n",
            "product VW inherited\nproduct WV inherited\n",
            "ideal U right 0,4 / 0,4 / all / all\n",
        ),
        "paper:ex2.8" => concat!(
            "context paper:ex2.8\nbase zn 6\nR all\nS all\nV subset 0,2,4\nW subset 0,3\n",
            "product VW inherited\nproduct WV inherited\n",
            "ideal H two 0,3 / all / all / 0,2,4\n",
        ),
        "paper:ex2.12" => concat!(
            "context paper:ex2.12\nbase zn 4\nR all\nS all\nV subset 0,2\nW subset 0,2\n",
            "product VW inherited\nproduct WV inherited\n",
            "ideal H two 0,2 / all / all / zero\n",
        ),
        _ => return None,
    };
    Some(text.to_string())
}

/// Looks up a builtin context by name.
pub fn builtin_registry(name: &str) -> Result<ContextDocument, CliError> {
    let text = text_for(name).ok_or_else(|| CliError::UnknownBuiltin {
        name: name.to_string(),
        available: AVAILABLE.to_string(),
    })?;
    parse_mctx(&text).map_err(|error| CliError::Parse {
        src: name.to_string(),
        error,
    })
}

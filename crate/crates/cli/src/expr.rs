//! Divisor input: raw ray coefficients, basis coordinates, or integer
//! combinations of named classes such as `-K-2H` or `3*eta0 + E`.

use std::collections::BTreeMap;

use toric_nl::toric::WeilDivisor;

/// Parse comma-separated integers, e.g. `-4,0,0,0`.
pub fn parse_ints(text: &str) -> Option<Vec<i64>> {
    text.split(',').map(|t| t.trim().parse::<i64>().ok()).collect()
}

fn lookup(name: &str, named: &BTreeMap<String, WeilDivisor>, rays: usize) -> Result<WeilDivisor, String> {
    if let Some(d) = named.get(name) {
        return Ok(d.clone());
    }
    if let Some(i) = name.strip_prefix('D').and_then(|s| s.parse::<usize>().ok()) {
        if i < rays {
            return Ok(WeilDivisor::prime(rays, i));
        }
        return Err(format!("prime divisor D{i} out of range: the fan has {rays} rays"));
    }
    let known: Vec<&str> = named.keys().map(String::as_str).collect();
    Err(format!("unknown divisor name {name:?}; known names: {}, D0..D{}", known.join(", "), rays - 1))
}

/// Evaluate an integer combination of named divisors. `D<i>` always names
/// the `i`-th torus-invariant prime divisor.
pub fn parse_expression(text: &str, named: &BTreeMap<String, WeilDivisor>, rays: usize) -> Result<WeilDivisor, String> {
    let s: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty divisor expression".into());
    }
    let mut total = WeilDivisor::zero(rays);
    let mut i = 0;
    while i < s.len() {
        let mut sign = 1;
        if s[i] == '+' || s[i] == '-' {
            sign = if s[i] == '-' { -1 } else { 1 };
            i += 1;
        } else if i > 0 {
            return Err(format!("expected '+' or '-' at position {i} in {text:?}"));
        }
        let start = i;
        while i < s.len() && s[i].is_ascii_digit() {
            i += 1;
        }
        let coeff: Option<i64> = if i > start {
            Some(
                s[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| format!("coefficient too large in {text:?}"))?,
            )
        } else {
            None
        };
        if i < s.len() && s[i] == '*' {
            if coeff.is_none() {
                return Err(format!("'*' without a coefficient in {text:?}"));
            }
            i += 1;
        }
        let name_start = i;
        if i < s.len() && s[i].is_ascii_alphabetic() {
            while i < s.len() && (s[i].is_ascii_alphanumeric() || s[i] == '_') {
                i += 1;
            }
        }
        let name: String = s[name_start..i].iter().collect();
        let term = match (coeff, name.is_empty()) {
            (Some(0), true) => WeilDivisor::zero(rays),
            (_, true) => return Err(format!("expected a divisor name at position {name_start} in {text:?}")),
            (c, false) => lookup(&name, named, rays)?.scale(c.unwrap_or(1)),
        };
        total = &total + &term.scale(sign);
    }
    Ok(total)
}

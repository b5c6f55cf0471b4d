// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Exact rational durations and weights.
//!
//! Every weight, duration factor and accumulated time in this crate is an
//! exact rational. Floating point never enters the cost arithmetic; seconds
//! only appear when a report multiplies a unit count by the environment's
//! time unit.

pub type Time = num_rational::Rational64;

/// Shorthand for an integer time value.
pub fn time(n: i64) -> Time {
    Time::from_integer(n)
}

/// Parses a rational from integer (`38`), decimal (`0.001`), scientific
/// (`1e-4`) or fraction (`3/7`) notation. The text is converted exactly,
/// without a float round trip.
pub fn parse_time(text: &str) -> Result<Time, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty number".into());
    }
    if let Some((n, d)) = s.split_once('/') {
        let numer: i64 = n
            .trim()
            .parse()
            .map_err(|_| format!("bad fraction numerator `{n}`"))?;
        let denom: i64 = d
            .trim()
            .parse()
            .map_err(|_| format!("bad fraction denominator `{d}`"))?;
        if denom == 0 {
            return Err(format!("zero denominator in `{s}`"));
        }
        return Ok(Time::new(numer, denom));
    }
    let (mantissa, exponent) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i32 = e.parse().map_err(|_| format!("bad exponent `{e}`"))?;
            (m, exp)
        }
        None => (s, 0),
    };
    let (mantissa, negative) = match mantissa.strip_prefix('-') {
        Some(rest) => (rest, true),
        None => (mantissa.strip_prefix('+').unwrap_or(mantissa), false),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(format!("no digits in `{text}`"));
    }
    let digits: String = format!("{int_part}{frac_part}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(format!("bad number `{text}`"));
    }
    if digits.len() > 18 {
        return Err(format!("too many digits in `{text}`"));
    }
    let value: i64 = digits.parse().unwrap_or(0);
    let net_exp = exponent - frac_part.len() as i32;
    if net_exp.unsigned_abs() > 18 {
        return Err(format!("exponent out of range in `{text}`"));
    }
    let pow = 10i64.pow(net_exp.unsigned_abs());
    let (numer, denom) = if net_exp >= 0 {
        match value.checked_mul(pow) {
            Some(v) => (v, 1),
            None => return Err(format!("number out of range `{text}`")),
        }
    } else {
        (value, pow)
    };
    let t = Time::new(numer, denom);
    Ok(if negative { -t } else { t })
}

/// Renders a rational canonically: integers as plain digits, values whose
/// denominator is of the form 2^a 5^b as exact decimals with trailing zeros
/// trimmed, everything else as `numer/denom`.
pub fn format_time(t: &Time) -> String {
    let numer = *t.numer();
    let denom = *t.denom();
    if denom == 1 {
        return numer.to_string();
    }
    let mut rest = denom;
    let mut twos = 0u32;
    let mut fives = 0u32;
    while rest % 2 == 0 {
        rest /= 2;
        twos += 1;
    }
    while rest % 5 == 0 {
        rest /= 5;
        fives += 1;
    }
    if rest != 1 {
        return format!("{numer}/{denom}");
    }
    let digits = twos.max(fives);
    let scale = 10i128.pow(digits) / denom as i128;
    let scaled = numer as i128 * scale;
    let sign = if scaled < 0 { "-" } else { "" };
    let magnitude = scaled.unsigned_abs();
    let base = 10u128.pow(digits);
    let int_part = magnitude / base;
    let mut frac = format!("{:0width$}", magnitude % base, width = digits as usize);
    while frac.ends_with('0') {
        frac.pop();
    }
    if frac.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac}")
    }
}

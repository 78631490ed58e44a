//! Exact integer/rational helpers and the text encodings shared by every
//! serialized type: rationals as `"a/b"` strings, reals as 17-significant-digit
//! decimal strings, integers as JSON numbers (strings past the i64 range).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rational = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Int::from(n), Int::from(d))
}

pub fn rat_int(n: &Int) -> Rational {
    Rational::from_integer(n.clone())
}

/// Extended Euclid: returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b) >= 0`.
///
/// The coefficients are the ones produced by the classical remainder
/// sequence, which are minimal in absolute value (`|x| <= |b|/g`,
/// `|y| <= |a|/g`) whenever both inputs are nonzero.
pub fn ext_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Int::one(), Int::zero());
    let (mut t0, mut t1) = (Int::zero(), Int::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Inverse of `a` modulo `m > 0` in `[0, m)`, if it exists.
pub fn mod_inverse(a: &Int, m: &Int) -> Option<Int> {
    if !m.is_positive() {
        return None;
    }
    if m.is_one() {
        return Some(Int::zero());
    }
    let (g, x, _) = ext_gcd(&a.mod_floor(m), m);
    g.is_one().then(|| x.mod_floor(m))
}

/// Largest integer `<= r`.
pub fn floor(r: &Rational) -> Int {
    r.numer().div_floor(r.denom())
}

pub fn rat_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Outside f64's direct conversion range; go through the quotient.
        r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
    })
}

/// Parses `"a/b"`, `"a"` or a decimal literal such as `"-1.25e-3"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: Int = n.trim().parse().map_err(|_| bad())?;
        let d: Int = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: Int = format!("{whole}{frac}0").parse::<Int>().map_err(|_| bad())? / 10;
    let scale = exponent - frac.len() as i32;
    let ten = Int::from(10u32);
    let mut value = if scale >= 0 {
        Rational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        value = -value;
    }
    Ok(value)
}

pub fn parse_int(s: &str) -> Result<Int> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

/// Formats a real with exactly 17 significant digits. Plain notation is used
/// for decimal exponents in `[-5, 16]`, scientific otherwise.
pub fn fmt_real(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.16e}");
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if x == 0.0 {
        return "0.0000000000000000".to_string();
    }
    if (-5..=16).contains(&exp) {
        let decimals = (16 - exp) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}

pub fn parse_real(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("not a real number: {s:?}")))
}

/// serde adapter: `Rational` as `"a/b"`.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match &v {
            serde_json::Value::String(s) => parse_rational(s).map_err(de::Error::custom),
            serde_json::Value::Number(n) => parse_rational(&n.to_string()).map_err(de::Error::custom),
            _ => Err(de::Error::custom("expected a rational string")),
        }
    }
}

/// serde adapter: `f64` as a 17-significant-digit decimal string.
pub mod real_str {
    use super::*;

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_real(*x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match &v {
            serde_json::Value::String(s) => parse_real(s).map_err(de::Error::custom),
            serde_json::Value::Number(n) => n
                .as_f64()
                .ok_or_else(|| de::Error::custom("number out of range")),
            _ => Err(de::Error::custom("expected a decimal string")),
        }
    }
}

/// serde adapter: `Vec<f64>` as decimal strings.
pub mod real_vec_str {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(xs: &[f64], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&fmt_real(*x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<f64>, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        v.iter()
            .map(|s| parse_real(s).map_err(de::Error::custom))
            .collect()
    }
}

/// serde adapter: `Int` as a JSON number (or a string when it exceeds i64).
pub mod int_json {
    use super::*;

    pub fn serialize<S: Serializer>(n: &Int, s: S) -> std::result::Result<S::Ok, S::Error> {
        match n.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&n.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Int, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        value_to_int(&v).map_err(de::Error::custom)
    }

    pub(crate) fn value_to_int(v: &serde_json::Value) -> Result<Int> {
        match v {
            serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => parse_int(&n.to_string()),
            serde_json::Value::String(s) => parse_int(s),
            _ => Err(Error::Parse(format!("expected an integer, got {v}"))),
        }
    }
}

/// serde adapter: `[Int; 2]` as a two-element JSON array.
pub mod int_pair {
    use super::*;
    use serde::ser::SerializeSeq;

    pub struct Wrap<'a>(pub &'a Int);

    impl serde::Serialize for Wrap<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
            int_json::serialize(self.0, s)
        }
    }

    pub fn serialize<S: Serializer>(xy: &(Int, Int), s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&Wrap(&xy.0))?;
        seq.serialize_element(&Wrap(&xy.1))?;
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<(Int, Int), D::Error> {
        let v: Vec<serde_json::Value> = Vec::deserialize(d)?;
        if v.len() != 2 {
            return Err(de::Error::custom("expected a two-element integer array"));
        }
        let x = int_json::value_to_int(&v[0]).map_err(de::Error::custom)?;
        let y = int_json::value_to_int(&v[1]).map_err(de::Error::custom)?;
        Ok((x, y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_gcd_bezout() {
        for a in -30i64..=30 {
            for b in -30i64..=30 {
                let (g, x, y) = ext_gcd(&int(a), &int(b));
                assert_eq!(&int(a) * &x + &int(b) * &y, g);
                assert_eq!(g, int(a).gcd(&int(b)));
            }
        }
    }

    #[test]
    fn inverse_mod() {
        assert_eq!(mod_inverse(&int(2), &int(7)), Some(int(4)));
        assert_eq!(mod_inverse(&int(-2), &int(7)), Some(int(3)));
        assert_eq!(mod_inverse(&int(2), &int(8)), None);
        assert_eq!(mod_inverse(&int(5), &int(1)), Some(int(0)));
    }

    #[test]
    fn floor_negative() {
        assert_eq!(floor(&rat(-1, 2)), int(-1));
        assert_eq!(floor(&rat(-2, 1)), int(-2));
        assert_eq!(floor(&rat(7, 3)), int(2));
        assert_eq!(floor(&rat(0, 5)), int(0));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), rat(-4, 1));
        assert_eq!(parse_rational("1.25").unwrap(), rat(5, 4));
        assert_eq!(parse_rational("-0.5e1").unwrap(), rat(-5, 1));
        assert_eq!(parse_rational("2e-2").unwrap(), rat(1, 50));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn real_format_has_17_digits() {
        assert_eq!(fmt_real(1.0), "1.0000000000000000");
        assert_eq!(fmt_real(std::f64::consts::SQRT_2), "1.4142135623730951");
        assert_eq!(fmt_real(-0.001), "-0.0010000000000000000");
        assert_eq!(fmt_real(0.0), "0.0000000000000000");
        assert_eq!(fmt_real(1e-300), "1.0000000000000000e-300");
        for x in [std::f64::consts::PI, 1e-7, 123456.789, -2.5e20, 0.1] {
            assert_eq!(parse_real(&fmt_real(x)).unwrap(), x);
        }
    }
}

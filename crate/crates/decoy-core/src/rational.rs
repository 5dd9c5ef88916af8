//! Exact-rational scalar support: conversions, certified exponentials, and
//! decimal-string serialization for module boundaries.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational scalar; always in canonical reduced form
/// with a positive denominator.
pub type Rational = BigRational;

/// A rational value together with a rigorous bound on its distance from the
/// mathematically exact quantity it approximates.
#[derive(Debug, Clone, PartialEq)]
pub struct Certified {
    pub value: Rational,
    pub error_bound: Rational,
}

impl Certified {
    pub fn exact(value: Rational) -> Self {
        Certified { value, error_bound: Rational::zero() }
    }

    pub fn lower(&self) -> Rational {
        &self.value - &self.error_bound
    }

    pub fn upper(&self) -> Rational {
        &self.value + &self.error_bound
    }

    pub fn value_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }
}

/// Converts a finite f64 to the rational it represents exactly.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn rational_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// 10^-digits as a rational, handy as a relative tolerance.
pub fn pow10_inverse(digits: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10u32).pow(digits))
}

/// Partial sum of exp(x) for x >= 0 with a certified tail bound.
///
/// Terms x^k/k! are accumulated until the geometric majorant of the
/// remainder, t_{K+1} / (1 - x/(K+2)), drops below `rel_tol` times the
/// partial sum. The bound requires x/(K+2) <= 1/2, which the loop
/// guarantees before testing.
pub fn exp_certified(x: &Rational, rel_tol: &Rational) -> Certified {
    assert!(!x.is_negative(), "exp_certified requires a non-negative argument");
    let mut sum = Rational::one();
    let mut term = Rational::one();
    let mut k: u64 = 0;
    loop {
        k += 1;
        term = &term * x / rational_int(k as i64);
        sum += &term;
        let gate = rational_int((k + 2) as i64);
        if x * rational_int(2) <= gate {
            let next = &term * x / rational_int((k + 1) as i64);
            let tail = &next / (Rational::one() - x / gate);
            if tail <= (rel_tol * &sum) {
                return Certified { value: sum, error_bound: tail };
            }
        }
        assert!(k < 100_000, "exp_certified failed to converge");
    }
}

/// Formats a rational as a plain decimal string with the given number of
/// significant digits (round half away from zero).
pub fn decimal_string(value: &Rational, significant_digits: usize) -> String {
    assert!(significant_digits > 0);
    if value.is_zero() {
        return "0".to_string();
    }
    let negative = value.is_negative();
    let abs = value.abs();
    let int_part = abs.to_integer();

    // Number of fractional digits needed to carry `significant_digits`
    // significant ones.
    let frac_digits: i64 = if !int_part.is_zero() {
        significant_digits as i64 - int_part.to_string().len() as i64
    } else {
        let mut leading_zeros: i64 = 0;
        let mut scaled = abs.clone();
        let ten = rational_int(10);
        loop {
            scaled = &scaled * &ten;
            if !scaled.to_integer().is_zero() {
                break;
            }
            leading_zeros += 1;
            assert!(leading_zeros < 100_000, "value too small to format");
        }
        leading_zeros + significant_digits as i64
    };

    let digits = if frac_digits >= 0 {
        let scale = BigInt::from(10u32).pow(frac_digits as u32);
        let scaled = &abs * Rational::from_integer(scale);
        let rounded = round_half_away(&scaled);
        render(&rounded, frac_digits as usize)
    } else {
        // Rounding left of the decimal point.
        let scale = BigInt::from(10u32).pow((-frac_digits) as u32);
        let scaled = &abs / Rational::from_integer(scale.clone());
        let rounded = round_half_away(&scaled) * scale;
        rounded.to_string()
    };
    if negative {
        format!("-{digits}")
    } else {
        digits
    }
}

fn round_half_away(x: &Rational) -> BigInt {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    (x + half).floor().to_integer()
}

fn render(int_digits: &BigInt, frac_digits: usize) -> String {
    let s = int_digits.to_string();
    if frac_digits == 0 {
        return s;
    }
    if s.len() <= frac_digits {
        let pad = "0".repeat(frac_digits - s.len());
        format!("0.{pad}{s}")
    } else {
        let split = s.len() - frac_digits;
        format!("{}.{}", &s[..split], &s[split..])
    }
}

/// Parses a plain decimal string ("-12.0345", "0.5", "3") into a rational.
pub fn parse_decimal(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (sign, body) = match text.strip_prefix('-') {
        Some(rest) => (Sign::Minus, rest),
        None => (Sign::Plus, text.strip_prefix('+').unwrap_or(text)),
    };
    if body.is_empty() {
        return None;
    }
    let (int_text, frac_text) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if !int_text.chars().all(|c| c.is_ascii_digit())
        || !frac_text.chars().all(|c| c.is_ascii_digit())
        || (int_text.is_empty() && frac_text.is_empty())
    {
        return None;
    }
    let joined = format!("{int_text}{frac_text}");
    let numer = joined.parse::<BigInt>().ok()?;
    let numer = if sign == Sign::Minus { -numer } else { numer };
    let denom = BigInt::from(10u32).pow(frac_text.len() as u32);
    Some(Rational::new(numer, denom))
}

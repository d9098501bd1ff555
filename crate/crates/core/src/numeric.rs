//! Exact summation helpers.

use num_bigint::BigInt;

/// Correctly rounded sum of `values` (Shewchuk's partials).
pub fn exact_sum(values: &[f64]) -> f64 {
    let mut partials: Vec<f64> = Vec::new();
    for &x in values {
        let mut x = x;
        let mut i = 0;
        for j in 0..partials.len() {
            let mut y = partials[j];
            if x.abs() < y.abs() {
                std::mem::swap(&mut x, &mut y);
            }
            let hi = x + y;
            let lo = y - (hi - x);
            if lo != 0.0 {
                partials[i] = lo;
                i += 1;
            }
            x = hi;
        }
        partials.truncate(i);
        partials.push(x);
    }
    partials.iter().sum()
}

/// A decimal literal held exactly as `mantissa * 10^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decimal {
    mantissa: BigInt,
    exponent: i32,
}

impl Decimal {
    /// Parses `[+-]digits[.digits][(e|E)[+-]digits]`.
    pub fn parse(text: &str) -> Option<Decimal> {
        let (body, exp) = match text.find(['e', 'E']) {
            Some(i) => (&text[..i], text[i + 1..].parse::<i32>().ok()?),
            None => (text, 0),
        };
        let (negative, body) = match body.as_bytes().first()? {
            b'-' => (true, &body[1..]),
            b'+' => (false, &body[1..]),
            _ => (false, body),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() && frac.is_empty() {
            return None;
        }
        if !int.bytes().chain(frac.bytes()).all(|c| c.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{int}{frac}");
        let mut mantissa: BigInt = digits.parse().ok()?;
        if negative {
            mantissa = -mantissa;
        }
        Some(Decimal { mantissa, exponent: exp - frac.len() as i32 })
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == BigInt::from(0)
    }
}

/// Exact sum of decimals.
pub fn decimal_sum(values: &[Decimal]) -> Decimal {
    let Some(exponent) = values.iter().map(|d| d.exponent).min() else {
        return Decimal { mantissa: BigInt::from(0), exponent: 0 };
    };
    let mantissa = values
        .iter()
        .map(|d| &d.mantissa * BigInt::from(10).pow((d.exponent - exponent) as u32))
        .sum();
    Decimal { mantissa, exponent }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_sum_cancels() {
        assert_eq!(exact_sum(&[1e100, 1.0, -1e100]), 1.0);
        assert_eq!(exact_sum(&[3.0, -1.5, -1.5]), 0.0);
        assert_ne!(exact_sum(&[0.1, 0.2, -0.3]), 0.0);
    }

    #[test]
    fn decimal_sum_is_exact() {
        let ds: Vec<_> = ["0.1", "0.2", "-0.3"].iter().map(|s| Decimal::parse(s).unwrap()).collect();
        assert!(decimal_sum(&ds).is_zero());
        let ds: Vec<_> = ["1e-3", "-0.001", "+2.50", "-2.5"].iter().map(|s| Decimal::parse(s).unwrap()).collect();
        assert!(decimal_sum(&ds).is_zero());
        let ds: Vec<_> = ["1", "-0.9999999999999999999"].iter().map(|s| Decimal::parse(s).unwrap()).collect();
        assert!(!decimal_sum(&ds).is_zero());
    }

    #[test]
    fn decimal_parse_rejects_garbage() {
        assert!(Decimal::parse("").is_none());
        assert!(Decimal::parse("-").is_none());
        assert!(Decimal::parse("1.2.3").is_none());
        assert!(Decimal::parse("abc").is_none());
        assert!(Decimal::parse(".5").is_some());
    }
}

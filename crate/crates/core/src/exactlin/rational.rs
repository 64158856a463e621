use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational scalar. `Ratio` keeps the invariants we
/// rely on everywhere: reduced fraction, positive denominator.
pub type Rat = num_rational::Ratio<BigInt>;

/// Shorthand for small rational constants in code and tests.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"`, `"-p"` or `"p/q"` exactly; used by fixture loading so no
/// float ever enters the pipeline.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| alloc::format!("bad rational numerator {:?}", s))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| alloc::format!("bad rational denominator {:?}", s))?;
    if d.is_zero() {
        return Err(alloc::format!("zero denominator in {:?}", s));
    }
    Ok(Rat::new(n, d))
}

/// Canonical text form, `p` or `p/q` with positive `q`.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

/// Bit-length of numerator times denominator; the pivot-size heuristic.
pub(crate) fn rat_size(r: &Rat) -> u64 {
    r.numer().abs().bits() + r.denom().bits()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_normalize() {
        assert_eq!(parse_rat("2/4").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rat(" 7 ").unwrap(), rat(7, 1));
        assert_eq!(rat_to_string(&rat(-3, 2)), "-3/2");
        assert_eq!(rat_to_string(&rat(5, 1)), "5");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}

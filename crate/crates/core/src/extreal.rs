//! Exact extended rationals: `Q ∪ {-inf, +inf}`.
//!
//! Multiplication is total with the measure-theoretic convention `0 · ±inf = 0`.
//! Addition is partial: `+inf + -inf` is an error rather than a saturated value,
//! since such sums only make sense through the dense-set extension in
//! [`crate::func`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact scalar in `[-inf, +inf]`.
///
/// The derived order is the natural one: `NegInf < Finite(_) < PosInf`, with
/// finite values compared as rationals. `BigRational` keeps itself in lowest
/// terms, so structural equality is numeric equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtReal {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl ExtReal {
    pub fn zero() -> Self {
        ExtReal::Finite(BigRational::zero())
    }

    pub fn one() -> Self {
        ExtReal::Finite(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        ExtReal::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`; panics when `den == 0`.
    pub fn frac(num: i64, den: i64) -> Self {
        ExtReal::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtReal::Finite(q) if q.is_zero())
    }

    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            ExtReal::Finite(q) => Some(q),
            _ => None,
        }
    }

    /// Sign as -1, 0 or 1.
    pub fn signum(&self) -> i8 {
        match self {
            ExtReal::NegInf => -1,
            ExtReal::PosInf => 1,
            ExtReal::Finite(q) => {
                if q.is_zero() {
                    0
                } else if q.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            ExtReal::NegInf => ExtReal::PosInf,
            ExtReal::PosInf => ExtReal::NegInf,
            ExtReal::Finite(q) => ExtReal::Finite(-q),
        }
    }

    /// `±inf` with the given sign; `sign == 0` yields zero.
    pub fn inf_with_sign(sign: i8) -> Self {
        match sign.cmp(&0) {
            Ordering::Less => ExtReal::NegInf,
            Ordering::Equal => ExtReal::zero(),
            Ordering::Greater => ExtReal::PosInf,
        }
    }
}

impl From<BigRational> for ExtReal {
    fn from(q: BigRational) -> Self {
        ExtReal::Finite(q)
    }
}

/// Partial sum; `+inf + -inf` is [`Error::UndefinedSum`].
pub fn xr_add(a: &ExtReal, b: &ExtReal) -> Result<ExtReal> {
    use ExtReal::*;
    match (a, b) {
        (Finite(x), Finite(y)) => Ok(Finite(x + y)),
        (PosInf, NegInf) | (NegInf, PosInf) => Err(Error::UndefinedSum),
        (PosInf, _) | (_, PosInf) => Ok(PosInf),
        (NegInf, _) | (_, NegInf) => Ok(NegInf),
    }
}

/// Total product with `0 · ±inf = 0`.
pub fn xr_mul(a: &ExtReal, b: &ExtReal) -> ExtReal {
    match (a, b) {
        (ExtReal::Finite(x), ExtReal::Finite(y)) => ExtReal::Finite(x * y),
        _ => ExtReal::inf_with_sign(a.signum() * b.signum()),
    }
}

pub fn xr_cmp(a: &ExtReal, b: &ExtReal) -> Ordering {
    a.cmp(b)
}

pub fn xr_min(a: &ExtReal, b: &ExtReal) -> ExtReal {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn xr_max(a: &ExtReal, b: &ExtReal) -> ExtReal {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => f.write_str("-inf"),
            ExtReal::PosInf => f.write_str("+inf"),
            ExtReal::Finite(q) => write!(f, "{q}"),
        }
    }
}

/// Parses `"3"`, `"-1/3"`, `"+inf"`, `"-inf"`. A zero denominator is rejected.
impl FromStr for ExtReal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad =
            || Error::Parse { pos: 0, expected: vec!["integer".into(), "p/q".into(), "+inf".into(), "-inf".into()] };
        let s = s.trim();
        match s {
            "+inf" => return Ok(ExtReal::PosInf),
            "-inf" => return Ok(ExtReal::NegInf),
            _ => {}
        }
        let int = |t: &str| -> Result<BigInt> {
            let digits = t.strip_prefix('-').unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        match s.split_once('/') {
            None => Ok(ExtReal::Finite(BigRational::from_integer(int(s)?))),
            Some((p, q)) => {
                let p = int(p)?;
                if q.starts_with('-') {
                    return Err(bad());
                }
                let q = int(q)?;
                if q.is_zero() {
                    return Err(bad());
                }
                Ok(ExtReal::Finite(BigRational::new(p, q)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(s: &str) -> ExtReal {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(xr_add(&x("3/2"), &x("-1/2")).unwrap(), x("1"));
        assert_eq!(xr_add(&ExtReal::PosInf, &x("5")).unwrap(), ExtReal::PosInf);
        assert_eq!(xr_add(&ExtReal::PosInf, &ExtReal::NegInf), Err(Error::UndefinedSum));
        assert_eq!(xr_add(&ExtReal::NegInf, &ExtReal::PosInf), Err(Error::UndefinedSum));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(xr_mul(&x("0"), &ExtReal::PosInf), x("0"));
        assert_eq!(xr_mul(&ExtReal::NegInf, &x("0")), x("0"));
        assert_eq!(xr_mul(&x("-2"), &ExtReal::PosInf), ExtReal::NegInf);
        assert_eq!(xr_mul(&x("2/3"), &x("3/4")), x("1/2"));
        assert_eq!(xr_mul(&ExtReal::NegInf, &ExtReal::NegInf), ExtReal::PosInf);
    }

    #[test]
    fn order_examples() {
        assert_eq!(xr_cmp(&ExtReal::NegInf, &x("7")), Ordering::Less);
        assert_eq!(xr_max(&ExtReal::PosInf, &x("3")), ExtReal::PosInf);
        assert_eq!(xr_min(&x("1/3"), &x("1/4")), x("1/4"));
    }

    #[test]
    fn text_forms() {
        assert_eq!(x("4/2").to_string(), "2");
        assert_eq!(x("-2/6").to_string(), "-1/3");
        assert_eq!(x("+inf").to_string(), "+inf");
        assert!("3/0".parse::<ExtReal>().is_err());
        assert!("inf".parse::<ExtReal>().is_err());
        assert!("1/-2".parse::<ExtReal>().is_err());
        assert!("".parse::<ExtReal>().is_err());
    }

    fn arb() -> impl Strategy<Value = ExtReal> {
        prop_oneof![
            1 => Just(ExtReal::PosInf),
            1 => Just(ExtReal::NegInf),
            6 => (-20i64..20, 1i64..7).prop_map(|(p, q)| ExtReal::frac(p, q)),
        ]
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(a in arb()) {
            prop_assert_eq!(a.to_string().parse::<ExtReal>().unwrap(), a);
        }

        #[test]
        fn add_commutes_and_associates(a in arb(), b in arb(), c in arb()) {
            prop_assert_eq!(xr_add(&a, &b), xr_add(&b, &a));
            let left = xr_add(&a, &b).and_then(|s| xr_add(&s, &c));
            let right = xr_add(&b, &c).and_then(|s| xr_add(&a, &s));
            if let (Ok(l), Ok(r)) = (left, right) {
                prop_assert_eq!(l, r);
            }
        }

        #[test]
        fn mul_laws(a in arb(), b in arb(), c in arb()) {
            prop_assert_eq!(xr_mul(&a, &b), xr_mul(&b, &a));
            prop_assert_eq!(xr_mul(&xr_mul(&a, &b), &c), xr_mul(&a, &xr_mul(&b, &c)));
            if a.is_finite() {
                if let Ok(s) = xr_add(&b, &c) {
                    prop_assert_eq!(
                        xr_mul(&a, &s),
                        xr_add(&xr_mul(&a, &b), &xr_mul(&a, &c)).unwrap()
                    );
                }
            }
        }

        #[test]
        fn min_max_lattice(a in arb(), b in arb(), c in arb()) {
            prop_assert_eq!(xr_min(&a, &xr_max(&a, &b)), a.clone());
            prop_assert_eq!(xr_max(&a, &xr_min(&a, &b)), a.clone());
            prop_assert_eq!(
                xr_min(&a, &xr_max(&b, &c)),
                xr_max(&xr_min(&a, &b), &xr_min(&a, &c))
            );
        }
    }
}

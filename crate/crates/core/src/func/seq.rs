//! Eventually-polynomial sequences of extended rationals.
//!
//! A ramp leaf assigns the value `r(k)` to its `k`-th subcell. The sequences
//! used here are a finite prefix of arbitrary [`ExtReal`]s followed by a tail
//! that is either a rational polynomial in `k` or constantly `±inf`. The class
//! is closed under sums, products, scaling and eventual min/max, and every
//! member has an exactly computable limit.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::extreal::{xr_add, xr_max, xr_min, xr_mul, ExtReal};

/// A polynomial in the ramp index `k` with rational coefficients, low degree
/// first, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::new(vec![c])
    }

    /// Convenience for tests and generators.
    pub fn from_ints(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, k: usize) -> BigRational {
        let x = BigRational::from_integer(BigInt::from(k));
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    pub fn eval_at(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        Poly::new((0..n).map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &BigRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// The polynomial `k ↦ q(k + s)`.
    pub fn shift(&self, s: i64) -> Poly {
        let lin = Poly::new(vec![BigRational::from_integer(s.into()), BigRational::one()]);
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| acc.mul(&lin).add(&Poly::constant(c.clone())))
    }

    /// Sign of the leading coefficient; 0 for the zero polynomial.
    pub fn eventual_sign(&self) -> i8 {
        match self.leading() {
            None => 0,
            Some(c) if c.is_positive() => 1,
            Some(_) => -1,
        }
    }

    /// An index `N` such that every integer `k >= N` has `q(k) != 0` with the
    /// sign of the leading coefficient. Uses the Cauchy root bound.
    pub fn crossover(&self) -> usize {
        let Some(lead) = self.leading() else { return 0 };
        let n = self.coeffs.len() - 1;
        if n == 0 {
            return 0;
        }
        let max_ratio = self.coeffs[..n].iter().map(|c| (c / lead).abs()).max().unwrap_or_else(BigRational::zero);
        let bound = (BigRational::one() + max_ratio).ceil();
        bound.to_integer().to_usize().expect("crossover index fits in usize")
    }

    /// `lim_{k→∞} q(k)`.
    pub fn limit(&self) -> ExtReal {
        match self.degree() {
            None => ExtReal::zero(),
            Some(0) => ExtReal::Finite(self.coeffs[0].clone()),
            Some(_) => ExtReal::inf_with_sign(self.eventual_sign()),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("poly[")?;
        if self.coeffs.is_empty() {
            f.write_str("0")?;
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

/// How a sequence behaves from the end of its prefix on.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tail {
    Poly(Poly),
    PosInf,
    NegInf,
}

impl Tail {
    pub fn value(&self, k: usize) -> ExtReal {
        match self {
            Tail::Poly(q) => ExtReal::Finite(q.eval(k)),
            Tail::PosInf => ExtReal::PosInf,
            Tail::NegInf => ExtReal::NegInf,
        }
    }

    pub fn limit(&self) -> ExtReal {
        match self {
            Tail::Poly(q) => q.limit(),
            Tail::PosInf => ExtReal::PosInf,
            Tail::NegInf => ExtReal::NegInf,
        }
    }

    /// Constant from the start of the tail on; such a sequence is locally
    /// constant at its branch point.
    pub fn is_eventually_constant(&self) -> bool {
        match self {
            Tail::Poly(q) => q.degree().is_none_or(|d| d == 0),
            _ => true,
        }
    }

    fn constant(v: &ExtReal) -> Tail {
        match v {
            ExtReal::Finite(q) => Tail::Poly(Poly::constant(q.clone())),
            ExtReal::PosInf => Tail::PosInf,
            ExtReal::NegInf => Tail::NegInf,
        }
    }

    fn shift(&self, s: i64) -> Tail {
        match self {
            Tail::Poly(q) => Tail::Poly(q.shift(s)),
            t => t.clone(),
        }
    }

    fn neg(&self) -> Tail {
        match self {
            Tail::Poly(q) => Tail::Poly(q.neg()),
            Tail::PosInf => Tail::NegInf,
            Tail::NegInf => Tail::PosInf,
        }
    }
}

/// Pointwise binary operations on sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Mul,
    Min,
    Max,
}

impl BinOp {
    pub fn scalar(self, a: &ExtReal, b: &ExtReal) -> Result<ExtReal> {
        match self {
            BinOp::Add => xr_add(a, b),
            BinOp::Mul => Ok(xr_mul(a, b)),
            BinOp::Min => Ok(xr_min(a, b)),
            BinOp::Max => Ok(xr_max(a, b)),
        }
    }

    /// The combined tail and the index from which it is valid (on top of the
    /// operands' own prefixes).
    fn tail(self, a: &Tail, b: &Tail) -> Result<(Tail, usize)> {
        use Tail::*;
        Ok(match (self, a, b) {
            (BinOp::Add, Poly(p), Poly(q)) => (Poly(p.add(q)), 0),
            (BinOp::Add, PosInf, NegInf) | (BinOp::Add, NegInf, PosInf) => return Err(Error::UndefinedSum),
            (BinOp::Add, PosInf, _) | (BinOp::Add, _, PosInf) => (PosInf, 0),
            (BinOp::Add, NegInf, _) | (BinOp::Add, _, NegInf) => (NegInf, 0),

            (BinOp::Mul, Poly(p), Poly(q)) => (Poly(p.mul(q)), 0),
            (BinOp::Mul, Poly(p), inf) | (BinOp::Mul, inf, Poly(p)) => {
                if p.is_zero() {
                    (Poly(self::Poly::zero()), 0)
                } else {
                    let t = if (p.eventual_sign() > 0) == (*inf == PosInf) { PosInf } else { NegInf };
                    (t, p.crossover())
                }
            }
            (BinOp::Mul, x, y) => (if x == y { PosInf } else { NegInf }, 0),

            (BinOp::Min | BinOp::Max, Poly(p), Poly(q)) => {
                let d = p.sub(q);
                if d.is_zero() {
                    (Poly(p.clone()), 0)
                } else {
                    let p_larger = d.eventual_sign() > 0;
                    let pick_p = p_larger == (self == BinOp::Max);
                    (Poly(if pick_p { p.clone() } else { q.clone() }), d.crossover())
                }
            }
            (BinOp::Min, x, y) => (extreme_tail(x, y, false), 0),
            (BinOp::Max, x, y) => (extreme_tail(x, y, true), 0),
        })
    }
}

/// Min or max of two tails when at least one is infinite.
fn extreme_tail(x: &Tail, y: &Tail, max: bool) -> Tail {
    let (absorbing, neutral) = if max { (Tail::PosInf, Tail::NegInf) } else { (Tail::NegInf, Tail::PosInf) };
    if *x == absorbing || *y == absorbing {
        absorbing
    } else if *x == neutral {
        y.clone()
    } else {
        x.clone()
    }
}

/// `r(k) = prefix[k]` for `k < prefix.len()`, `tail(k)` afterwards.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Seq {
    prefix: Vec<ExtReal>,
    tail: Tail,
}

impl Seq {
    /// Builds a sequence and strips redundant prefix entries, so the prefix
    /// length is the least index from which the tail formula holds.
    pub fn new(prefix: Vec<ExtReal>, tail: Tail) -> Self {
        let mut s = Seq { prefix, tail };
        s.minimize();
        s
    }

    pub fn constant(v: &ExtReal) -> Self {
        Seq { prefix: Vec::new(), tail: Tail::constant(v) }
    }

    pub fn prefix(&self) -> &[ExtReal] {
        &self.prefix
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    /// Index where the tail formula starts.
    pub fn start(&self) -> usize {
        self.prefix.len()
    }

    fn minimize(&mut self) {
        while let Some(last) = self.prefix.last() {
            if *last == self.tail.value(self.prefix.len() - 1) {
                self.prefix.pop();
            } else {
                break;
            }
        }
    }

    pub fn value(&self, k: usize) -> ExtReal {
        match self.prefix.get(k) {
            Some(v) => v.clone(),
            None => self.tail.value(k),
        }
    }

    pub fn limit(&self) -> ExtReal {
        self.tail.limit()
    }

    /// A genuine singularity: the sequence is not eventually constant.
    pub fn is_singular(&self) -> bool {
        !self.tail.is_eventually_constant()
    }

    /// The sequence `k ↦ r(k + 1)`.
    pub fn advance(&self) -> Seq {
        if self.prefix.is_empty() {
            Seq { prefix: Vec::new(), tail: self.tail.shift(1) }
        } else {
            Seq { prefix: self.prefix[1..].to_vec(), tail: self.tail.shift(1) }
        }
    }

    /// The sequence `c, r(0), r(1), …`.
    pub fn prepend(&self, c: ExtReal) -> Seq {
        let mut prefix = Vec::with_capacity(self.prefix.len() + 1);
        prefix.push(c);
        prefix.extend(self.prefix.iter().cloned());
        Seq::new(prefix, self.tail.shift(-1))
    }

    /// Pointwise combination. On failure reports the first offending index.
    pub fn zip(&self, other: &Seq, op: BinOp) -> std::result::Result<Seq, (usize, Error)> {
        let base = self.start().max(other.start());
        let (tail, from) = op.tail(&self.tail, &other.tail).map_err(|e| (base, e))?;
        let n = base.max(from);
        let prefix = (0..n)
            .map(|k| op.scalar(&self.value(k), &other.value(k)).map_err(|e| (k, e)))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Seq::new(prefix, tail))
    }

    pub fn map_scale(&self, s: &BigRational) -> Seq {
        let sx = ExtReal::Finite(s.clone());
        let tail = match &self.tail {
            Tail::Poly(q) => Tail::Poly(q.scale(s)),
            _ if s.is_zero() => Tail::Poly(Poly::zero()),
            t => t.clone(),
        };
        Seq::new(self.prefix.iter().map(|v| xr_mul(&sx, v)).collect(), tail)
    }

    pub fn neg(&self) -> Seq {
        Seq::new(self.prefix.iter().map(ExtReal::neg).collect(), self.tail.neg())
    }

    /// `sup_{k >= from} r(k)`, exact.
    pub fn sup_from(&self, from: usize) -> ExtReal {
        self.extreme_from(from, Ordering::Greater)
    }

    /// `inf_{k >= from} r(k)`, exact.
    pub fn inf_from(&self, from: usize) -> ExtReal {
        self.extreme_from(from, Ordering::Less)
    }

    fn extreme_from(&self, from: usize, want: Ordering) -> ExtReal {
        let pick = |a: ExtReal, b: ExtReal| if a.cmp(&b) == want { a } else { b };
        let head = (from..self.start().max(from)).map(|k| self.value(k)).reduce(&pick);
        let start = self.start().max(from);
        let tail = match &self.tail {
            Tail::PosInf => ExtReal::PosInf,
            Tail::NegInf => ExtReal::NegInf,
            Tail::Poly(q) => {
                let toward = q.eventual_sign() > 0;
                let unbounded = q.degree().is_some_and(|d| d >= 1) && toward == (want == Ordering::Greater);
                if unbounded {
                    ExtReal::inf_with_sign(if toward { 1 } else { -1 })
                } else {
                    // Past the derivative's crossover the tail is monotone
                    // away from the wanted direction, so a finite scan suffices.
                    let deriv = q.shift(1).sub(q);
                    let stop = start.max(deriv.crossover()) + 1;
                    (start..=stop).map(|k| ExtReal::Finite(q.eval(k))).reduce(&pick).expect("non-empty scan")
                }
            }
        };
        match head {
            Some(h) => pick(h, tail),
            None => tail,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn poly_eval_and_shift() {
        let p = Poly::new(vec![q(2, 1), q(-1, 3), q(1, 1)]);
        assert_eq!(p.eval(3), q(2 - 1 + 9, 1));
        let s = p.shift(2);
        for k in 0..10 {
            assert_eq!(s.eval(k), p.eval(k + 2));
        }
        assert_eq!(p.shift(-1).shift(1), p);
        assert_eq!(p.to_string(), "poly[2, -1/3, 1]");
        assert_eq!(Poly::zero().to_string(), "poly[0]");
    }

    #[test]
    fn crossover_bounds_roots() {
        // (k - 7)(k - 2) = k^2 - 9k + 14
        let p = Poly::from_ints(&[14, -9, 1]);
        let n = p.crossover();
        assert!(n >= 8);
        for k in n..n + 50 {
            assert!(p.eval(k) > BigRational::zero());
        }
        let r = Poly::from_ints(&[5, -1]);
        for k in r.crossover()..r.crossover() + 20 {
            assert!(r.eval(k) < BigRational::zero());
        }
    }

    #[test]
    fn limits() {
        assert_eq!(Poly::from_ints(&[0, 1]).limit(), ExtReal::PosInf);
        assert_eq!(Poly::from_ints(&[2, -3]).limit(), ExtReal::NegInf);
        assert_eq!(Poly::from_ints(&[4]).limit(), ExtReal::int(4));
        assert_eq!(Poly::zero().limit(), ExtReal::zero());
    }

    #[test]
    fn minimize_strips_to_least_start() {
        let s = Seq::new(vec![ExtReal::int(9), ExtReal::int(1), ExtReal::int(2)], Tail::Poly(Poly::from_ints(&[0, 1])));
        assert_eq!(s.start(), 1);
        assert_eq!(s.value(0), ExtReal::int(9));
        assert_eq!(s.value(5), ExtReal::int(5));
    }

    #[test]
    fn min_of_identity_and_ten() {
        let k = Seq::new(vec![], Tail::Poly(Poly::from_ints(&[0, 1])));
        let ten = Seq::constant(&ExtReal::int(10));
        let m = k.zip(&ten, BinOp::Min).unwrap();
        for i in 0..40 {
            assert_eq!(m.value(i), ExtReal::int(i.min(10) as i64));
        }
        assert_eq!(m.start(), 10);
        assert_eq!(m.limit(), ExtReal::int(10));
    }

    #[test]
    fn sum_resolves_opposite_infinities() {
        let a = Seq::new(vec![], Tail::Poly(Poly::from_ints(&[0, -1])));
        let b = Seq::new(vec![], Tail::Poly(Poly::from_ints(&[0, 2])));
        assert_eq!(a.limit(), ExtReal::NegInf);
        assert_eq!(b.limit(), ExtReal::PosInf);
        let s = a.zip(&b, BinOp::Add).unwrap();
        assert_eq!(s, Seq::new(vec![], Tail::Poly(Poly::from_ints(&[0, 1]))));
        assert_eq!(s.limit(), ExtReal::PosInf);
    }

    #[test]
    fn product_with_infinity_respects_zero() {
        let k = Seq::new(vec![], Tail::Poly(Poly::from_ints(&[0, 1])));
        let p = k.zip(&Seq::constant(&ExtReal::PosInf), BinOp::Mul).unwrap();
        assert_eq!(p.value(0), ExtReal::zero());
        for i in 1..20 {
            assert_eq!(p.value(i), ExtReal::PosInf);
        }
        assert!(!p.is_singular());
    }

    #[test]
    fn infinite_tails_min_max() {
        let k = Seq::new(vec![], Tail::Poly(Poly::from_ints(&[0, 1])));
        let neg = Seq::constant(&ExtReal::NegInf);
        let pos = Seq::constant(&ExtReal::PosInf);
        assert_eq!(k.zip(&neg, BinOp::Min).unwrap(), neg);
        assert_eq!(k.zip(&neg, BinOp::Max).unwrap(), k);
        assert_eq!(k.zip(&pos, BinOp::Min).unwrap(), k);
        assert_eq!(k.zip(&pos, BinOp::Max).unwrap(), pos);
        assert_eq!(neg.zip(&pos, BinOp::Max).unwrap(), pos);
        assert!(matches!(neg.zip(&pos, BinOp::Add), Err((0, Error::UndefinedSum))));
    }

    #[test]
    fn advance_and_prepend_are_inverse() {
        let s = Seq::new(vec![ExtReal::PosInf, ExtReal::int(-2)], Tail::Poly(Poly::from_ints(&[1, -1, 1])));
        assert_eq!(s.advance().prepend(s.value(0)), s);
        for k in 0..12 {
            assert_eq!(s.advance().value(k), s.value(k + 1));
        }
    }

    #[test]
    fn sup_and_inf_from() {
        // 5 - (k-3)^2 = -k^2 + 6k - 4, peaks at k = 3 with value 5
        let s = Seq::new(vec![], Tail::Poly(Poly::from_ints(&[-4, 6, -1])));
        assert_eq!(s.sup_from(0), ExtReal::int(5));
        assert_eq!(s.sup_from(4), ExtReal::int(4));
        assert_eq!(s.inf_from(0), ExtReal::NegInf);
        let t = Seq::new(vec![ExtReal::PosInf], Tail::Poly(Poly::from_ints(&[3, -1])));
        assert_eq!(t.sup_from(0), ExtReal::PosInf);
        assert_eq!(t.sup_from(1), ExtReal::int(2));
    }
}

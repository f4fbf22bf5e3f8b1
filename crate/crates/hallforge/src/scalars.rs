//! Exact arithmetic in the quadratic field Q(sqrt(q)).
//!
//! Every coefficient produced by the Hall-algebra layers lives in Q(sqrt(q))
//! for the working prime q. An element is stored as `a + b*sqrt(q)` with
//! exact rational coordinates. The square root `v = sqrt(q)` is the quantum
//! parameter, so `v^2 = q` and `v^{-1} = v/q`.
//!
//! Quantum integers, factorials and binomials are defined through balanced
//! powers of `v`:
//!
//! ```text
//! [n] = (v^n - v^{-n}) / (v - v^{-1}),   [n]! = [n][n-1]...[1],
//! qbinom(m, r) = [m][m-1]...[m-r+1] / [r]!
//! ```
//!
//! `[n]` is defined for all integers (`[-n] = -[n]`), and `qbinom` accepts
//! negative upper arguments; both are exact elements of Q(sqrt(q)).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element `a + b*sqrt(q)` of Q(sqrt(q)).
///
/// The field marker `q` travels with the value; arithmetic between scalars
/// attached to different fields is a programming error and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coeff {
    q: u64,
    a: BigRational,
    b: BigRational,
}

impl Coeff {
    pub fn new(q: u64, a: BigRational, b: BigRational) -> Self {
        Coeff { q, a, b }
    }

    pub fn zero(q: u64) -> Self {
        Coeff::new(q, BigRational::zero(), BigRational::zero())
    }

    pub fn one(q: u64) -> Self {
        Coeff::new(q, BigRational::one(), BigRational::zero())
    }

    pub fn from_int(q: u64, n: i64) -> Self {
        Coeff::new(q, BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn from_bigint(q: u64, n: BigInt) -> Self {
        Coeff::new(q, BigRational::from_integer(n), BigRational::zero())
    }

    pub fn from_rational(q: u64, r: BigRational) -> Self {
        Coeff::new(q, r, BigRational::zero())
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Rational and sqrt(q) coordinates, in that order.
    pub fn parts(&self) -> (&BigRational, &BigRational) {
        (&self.a, &self.b)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// Multiplicative inverse: `(a + b*sqrt(q))^{-1} = (a - b*sqrt(q)) / (a^2 - q b^2)`.
    /// The norm `a^2 - q b^2` vanishes only at zero because sqrt(q) is
    /// irrational for prime q. Returns `None` for zero.
    pub fn checked_inv(&self) -> Option<Coeff> {
        if self.is_zero() {
            return None;
        }
        let qr = BigRational::from_integer(self.q.into());
        let norm = &self.a * &self.a - &qr * &self.b * &self.b;
        debug_assert!(!norm.is_zero(), "norm of a nonzero quadratic scalar is nonzero");
        Some(Coeff::new(self.q, &self.a / &norm, -&self.b / &norm))
    }

    fn same_field(&self, other: &Coeff) {
        assert_eq!(
            self.q, other.q,
            "cannot mix scalars from Q(sqrt({})) and Q(sqrt({}))",
            self.q, other.q
        );
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        self.same_field(rhs);
        Coeff::new(self.q, &self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        self.same_field(rhs);
        Coeff::new(self.q, &self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        self.same_field(rhs);
        let qr = BigRational::from_integer(self.q.into());
        // (a1 + b1 v)(a2 + b2 v) with v^2 = q.
        Coeff::new(
            self.q,
            &self.a * &rhs.a + &qr * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff::new(self.q, -&self.a, -&self.b)
    }
}

impl Div for &Coeff {
    type Output = Coeff;
    fn div(self, rhs: &Coeff) -> Coeff {
        let inv = rhs
            .checked_inv()
            .unwrap_or_else(|| panic!("division by zero in Q(sqrt({}))", self.q));
        self * &inv
    }
}

macro_rules! forward_value_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for Coeff {
            type Output = Coeff;
            fn $method(self, rhs: Coeff) -> Coeff {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&Coeff> for Coeff {
            type Output = Coeff;
            fn $method(self, rhs: &Coeff) -> Coeff {
                $trait::$method(&self, rhs)
            }
        }
    )*};
}
forward_value_ops!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

impl AddAssign<&Coeff> for Coeff {
    fn add_assign(&mut self, rhs: &Coeff) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Coeff> for Coeff {
    fn sub_assign(&mut self, rhs: &Coeff) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Coeff> for Coeff {
    fn mul_assign(&mut self, rhs: &Coeff) {
        *self = &*self * rhs;
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}*sqrt({}))", self.a, self.b, self.q)
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if !self.a.is_zero() {
            write!(f, "{}", self.a)?;
            first = false;
        }
        if !self.b.is_zero() {
            if !first {
                write!(f, " {} ", if self.b < BigRational::zero() { "-" } else { "+" })?;
                let mag = if self.b < BigRational::zero() { -&self.b } else { self.b.clone() };
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
            } else if !self.b.is_one() {
                write!(f, "{}*", self.b)?;
            }
            write!(f, "v")?;
        }
        Ok(())
    }
}

/// JSON form of a scalar: both coordinates as exact rational strings.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CoeffJson {
    pub a: String,
    pub b: String,
}

impl Coeff {
    pub fn to_json(&self) -> CoeffJson {
        CoeffJson {
            a: self.a.to_string(),
            b: self.b.to_string(),
        }
    }

    pub fn from_json(q: u64, json: &CoeffJson) -> Result<Coeff> {
        let parse = |s: &str| {
            BigRational::from_str(s)
                .map_err(|e| Error::Schema(format!("bad rational {s:?}: {e}")))
        };
        Ok(Coeff::new(q, parse(&json.a)?, parse(&json.b)?))
    }
}

/// `q^n` as an exact rational, for any integer `n`.
pub fn q_rat_pow(q: u64, n: i64) -> BigRational {
    let base = BigInt::from(q);
    if n >= 0 {
        BigRational::from_integer(base.pow(n as u32))
    } else {
        BigRational::new(BigInt::one(), base.pow((-n) as u32))
    }
}

/// `v^n` where `v = sqrt(q)`: rational for even `n`, a pure sqrt(q) term for
/// odd `n`.
pub fn v_pow(q: u64, n: i64) -> Coeff {
    if n.rem_euclid(2) == 0 {
        Coeff::from_rational(q, q_rat_pow(q, n / 2))
    } else {
        // v^n = q^{(n-1)/2} * v; for negative odd n this still holds with
        // floor division, e.g. v^{-1} = q^{-1} v.
        Coeff::new(q, BigRational::zero(), q_rat_pow(q, (n - 1).div_euclid(2)))
    }
}

/// Balanced quantum integer `[n] = v^{n-1} + v^{n-3} + ... + v^{1-n}`,
/// extended to all integers by `[-n] = -[n]`.
pub fn qint(q: u64, n: i64) -> Coeff {
    if n == 0 {
        return Coeff::zero(q);
    }
    if n < 0 {
        return -qint(q, -n);
    }
    let mut acc = Coeff::zero(q);
    let mut e = n - 1;
    while e >= 1 - n {
        acc += &v_pow(q, e);
        e -= 2;
    }
    acc
}

/// Quantum factorial `[n]! = [n][n-1]...[1]`, with `[0]! = 1`.
pub fn qfact(q: u64, n: u64) -> Coeff {
    let mut acc = Coeff::one(q);
    for j in 1..=n {
        acc *= &qint(q, j as i64);
    }
    acc
}

/// Quantum binomial `[m; r] = [m][m-1]...[m-r+1] / [r]!` for any integer `m`
/// and `r >= 0`. Vanishes when `0 <= m < r`; nonzero for negative `m`.
pub fn qbinom(q: u64, m: i64, r: u64) -> Coeff {
    let mut acc = Coeff::one(q);
    for j in 1..=r as i64 {
        // Multiply by [m - j + 1] / [j]; the running product stays in the
        // field and the final value is the balanced Gaussian binomial.
        acc *= &qint(q, m - j + 1);
        acc = acc / qint(q, j);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(p: i64, r: i64) -> BigRational {
        BigRational::new(p.into(), r.into())
    }

    fn c(q: u64, a: (i64, i64), b: (i64, i64)) -> Coeff {
        Coeff::new(q, rat(a.0, a.1), rat(b.0, b.1))
    }

    #[test]
    fn v_powers_match_hand_values() {
        assert_eq!(v_pow(2, 0), Coeff::one(2));
        assert_eq!(v_pow(2, 2), Coeff::from_int(2, 2));
        assert_eq!(v_pow(2, 1), c(2, (0, 1), (1, 1)));
        assert_eq!(v_pow(2, -1), c(2, (0, 1), (1, 2)));
        assert_eq!(v_pow(3, -3), c(3, (0, 1), (1, 9)));
        assert_eq!(v_pow(5, 4), Coeff::from_int(5, 25));
    }

    #[test]
    fn quantum_integers_match_hand_values() {
        assert!(qint(2, 0).is_zero());
        assert!(qint(7, 1).is_one());
        // [2] = v + v^{-1} = (3/2) sqrt(2) at q = 2.
        assert_eq!(qint(2, 2), c(2, (0, 1), (3, 2)));
        // [3] = v^2 + 1 + v^{-2} = 7/2 at q = 2.
        assert_eq!(qint(2, 3), c(2, (7, 2), (0, 1)));
        assert_eq!(qint(2, -2), -qint(2, 2));
    }

    #[test]
    fn quantum_factorials_match_hand_values() {
        assert!(qfact(5, 0).is_one());
        // [2]! = (4/3) sqrt(3) at q = 3.
        assert_eq!(qfact(3, 2), c(3, (0, 1), (4, 3)));
        // [3]! = [3][2] = (7/2)(3/2) sqrt(2) = (21/4) sqrt(2) at q = 2.
        assert_eq!(qfact(2, 3), c(2, (0, 1), (21, 4)));
    }

    #[test]
    fn quantum_binomials_match_hand_values() {
        assert!(qbinom(2, 2, 2).is_one());
        assert!(qbinom(3, 0, 0).is_one());
        assert!(qbinom(3, 1, 2).is_zero());
        // [4 choose 2] at q = 2: classical count 35 balanced by v^{-4} = 1/4.
        assert_eq!(qbinom(2, 4, 2), c(2, (35, 4), (0, 1)));
        // Negative upper argument: [-1 choose 2] = [-1][-2]/[2]! = [1][2]/[2]! = 1.
        assert!(qbinom(2, -1, 2).is_one());
    }

    #[test]
    fn inverse_and_division() {
        let x = c(2, (1, 1), (1, 1)); // 1 + sqrt(2)
        let inv = x.checked_inv().unwrap();
        assert_eq!(&x * &inv, Coeff::one(2));
        // (1 + sqrt(2))^{-1} = -1 + sqrt(2).
        assert_eq!(inv, c(2, (-1, 1), (1, 1)));
        assert!(Coeff::zero(2).checked_inv().is_none());
        assert_eq!(&x / &x, Coeff::one(2));
    }

    #[test]
    #[should_panic(expected = "cannot mix scalars")]
    fn mixing_fields_panics() {
        let _ = Coeff::one(2) + Coeff::one(3);
    }

    #[test]
    fn json_round_trip() {
        let x = c(5, (-3, 7), (11, 2));
        let j = x.to_json();
        assert_eq!(j.a, "-3/7");
        assert_eq!(j.b, "11/2");
        assert_eq!(Coeff::from_json(5, &j).unwrap(), x);
        assert!(Coeff::from_json(5, &CoeffJson { a: "x".into(), b: "0".into() }).is_err());
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(Coeff::zero(2).to_string(), "0");
        assert_eq!(c(2, (3, 2), (0, 1)).to_string(), "3/2");
        assert_eq!(c(2, (0, 1), (3, 2)).to_string(), "3/2*v");
        assert_eq!(c(2, (1, 1), (-1, 2)).to_string(), "1 - 1/2*v");
    }

    fn arb_coeff(q: u64) -> impl Strategy<Value = Coeff> {
        (-8i64..=8, 1i64..=4, -8i64..=8, 1i64..=4)
            .prop_map(move |(an, ad, bn, bd)| c(q, (an, ad), (bn, bd)))
    }

    fn arb_q() -> impl Strategy<Value = u64> {
        prop_oneof![Just(2u64), Just(3), Just(5)]
    }

    proptest! {
        #[test]
        fn field_axioms(q in arb_q(), seed in any::<u64>()) {
            // Derive three scalars from the seed deterministically.
            let mk = |s: u64| c(q, ((s % 17) as i64 - 8, 1 + (s % 3) as i64),
                                   ((s / 17 % 17) as i64 - 8, 1 + (s / 51 % 3) as i64));
            let (x, y, z) = (mk(seed), mk(seed / 7 + 1), mk(seed / 13 + 2));
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x + &Coeff::zero(q), x.clone());
            prop_assert_eq!(&x * &Coeff::one(q), x.clone());
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.checked_inv().unwrap(), Coeff::one(q));
            }
        }

        #[test]
        fn v_pow_is_a_character(q in arb_q(), m in -8i64..=8, n in -8i64..=8) {
            prop_assert_eq!(v_pow(q, m + n), &v_pow(q, m) * &v_pow(q, n));
        }

        #[test]
        fn qint_satisfies_defining_identity(q in arb_q(), n in -9i64..=9) {
            // [n] (v - v^{-1}) = v^n - v^{-n}.
            let lhs = &qint(q, n) * &(&v_pow(q, 1) - &v_pow(q, -1));
            let rhs = &v_pow(q, n) - &v_pow(q, -n);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn qbinom_times_factorial_is_falling_product(q in arb_q(), m in -6i64..=6, r in 0u64..=4) {
            let mut falling = Coeff::one(q);
            for j in 0..r as i64 {
                falling *= &qint(q, m - j);
            }
            prop_assert_eq!(&qbinom(q, m, r) * &qfact(q, r), falling);
        }

        #[test]
        fn arbitrary_coeff_roundtrips_json(x in arb_coeff(2)) {
            prop_assert_eq!(Coeff::from_json(2, &x.to_json()).unwrap(), x);
        }
    }
}

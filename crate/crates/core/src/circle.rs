//! Exact roots of unity, written additively as elements of Q/Z.

use std::fmt;
use std::ops::{Mul, MulAssign};
use std::str::FromStr;

use crate::error::Error;

/// `exp(2πi · num/den)` with `0 ≤ num < den` and `gcd(num, den) = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CircleValue {
    num: u64,
    den: u64,
}

fn gcd(a: u128, b: u128) -> u128 {
    match (u64::try_from(a), u64::try_from(b)) {
        (Ok(a), Ok(b)) => gcd64(a, b) as u128,
        _ => {
            let (mut a, mut b) = (a, b);
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a
        }
    }
}

/// Denominators below this multiply through lookup tables.
const SMALL: usize = 128;

const fn small_gcds() -> [[u8; SMALL]; SMALL] {
    let mut t = [[0u8; SMALL]; SMALL];
    let mut a = 0;
    while a < SMALL {
        let mut b = 0;
        while b < SMALL {
            let (mut x, mut y) = (a, b);
            while y != 0 {
                (x, y) = (y, x % y);
            }
            t[a][b] = x as u8;
            b += 1;
        }
        a += 1;
    }
    t
}

const fn small_reciprocals() -> [u32; SMALL] {
    let mut t = [0u32; SMALL];
    let mut d = 1;
    while d < SMALL {
        t[d] = 65536u32.div_ceil(d as u32);
        d += 1;
    }
    t
}

static SMALL_GCD: [[u8; SMALL]; SMALL] = small_gcds();
static SMALL_RECIPROCAL: [u32; SMALL] = small_reciprocals();

/// `n / d` for `n, d < SMALL`, exact since `n·d < 2^16`.
#[inline]
fn small_div(n: usize, d: usize) -> usize {
    (n * SMALL_RECIPROCAL[d] as usize) >> 16
}

fn gcd64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 || b == 0 {
        return a | b;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            (a, b) = (b, a);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl CircleValue {
    pub const ONE: CircleValue = CircleValue { num: 0, den: 1 };
    pub const MINUS_ONE: CircleValue = CircleValue { num: 1, den: 2 };

    /// `exp(2πi · num/den)`; `den` must be positive.
    pub fn new(num: i64, den: u64) -> CircleValue {
        assert!(den > 0, "zero denominator");
        if (den as usize) < SMALL {
            let n = num.rem_euclid(den as i64) as usize;
            let h = SMALL_GCD[n][den as usize] as usize;
            return CircleValue {
                num: small_div(n, h) as u64,
                den: small_div(den as usize, h) as u64,
            };
        }
        let d = den as i128;
        let n = (num as i128).rem_euclid(d);
        Self::reduce(n as u128, den as u128)
    }

    fn reduce(num: u128, den: u128) -> CircleValue {
        if num == 0 {
            return Self::ONE;
        }
        let g = gcd(num, den).max(1);
        let (num, den) = (num / g, den / g);
        let den = u64::try_from(den).expect("root of unity order overflows u64");
        CircleValue { num: num as u64, den }
    }

    /// `(-1)^n`.
    pub fn sign(n: u64) -> CircleValue {
        if n.is_multiple_of(2) {
            Self::ONE
        } else {
            Self::MINUS_ONE
        }
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    pub fn denominator(self) -> u64 {
        self.den
    }

    /// Multiplicative order.
    pub fn order(self) -> u64 {
        self.den
    }

    pub fn is_one(self) -> bool {
        self.num == 0
    }

    pub fn inv(self) -> CircleValue {
        if self.num == 0 {
            self
        } else {
            CircleValue {
                num: self.den - self.num,
                den: self.den,
            }
        }
    }

    pub fn pow(self, e: u64) -> CircleValue {
        let n = (self.num as u128 * e as u128) % self.den as u128;
        Self::reduce(n, self.den as u128)
    }

    fn mul_wide(self, rhs: CircleValue) -> CircleValue {
        let (a, b) = (self.den as u128, rhs.den as u128);
        let l = a / gcd(a, b) * b;
        let n = (self.num as u128 * (l / a) + rhs.num as u128 * (l / b)) % l;
        Self::reduce(n, l)
    }

    fn mul_small(self, rhs: CircleValue) -> Option<CircleValue> {
        let (a, b) = (self.den as usize, rhs.den as usize);
        if a >= SMALL || b >= SMALL {
            return None;
        }
        let g = SMALL_GCD[a][b] as usize;
        let (ga, gb) = (small_div(a, g), small_div(b, g));
        let l = ga * b;
        if l >= SMALL {
            return None;
        }
        let mut n = self.num as usize * gb + rhs.num as usize * ga;
        if n >= l {
            n -= l;
        }
        let h = SMALL_GCD[n][l] as usize;
        Some(CircleValue {
            num: small_div(n, h) as u64,
            den: small_div(l, h) as u64,
        })
    }

    /// `Some(±1)` for real values, `None` otherwise.
    pub fn as_real_sign(self) -> Option<i64> {
        match self.den {
            1 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }
}

impl Default for CircleValue {
    fn default() -> Self {
        Self::ONE
    }
}

impl Mul for CircleValue {
    type Output = CircleValue;

    fn mul(self, rhs: CircleValue) -> CircleValue {
        if rhs.num == 0 {
            return self;
        }
        if self.num == 0 {
            return rhs;
        }
        self.mul_small(rhs).unwrap_or_else(|| self.mul_wide(rhs))
    }
}

impl MulAssign for CircleValue {
    fn mul_assign(&mut self, rhs: CircleValue) {
        *self = *self * rhs;
    }
}

impl std::iter::Product for CircleValue {
    fn product<I: Iterator<Item = CircleValue>>(iter: I) -> CircleValue {
        iter.fold(CircleValue::ONE, |a, b| a * b)
    }
}

impl fmt::Display for CircleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for CircleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({}/{})", self.num, self.den)
    }
}

impl FromStr for CircleValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse {
            line: 0,
            message: format!("malformed circle value `{s}`"),
        };
        let (p, q) = s.split_once('/').ok_or_else(bad)?;
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: u64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        Ok(CircleValue::new(p, q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn table_products_match_wide_arithmetic() {
        for a in 1..SMALL as u64 {
            for b in 1..SMALL as u64 {
                for (x, y) in [(1, 1), (a - 1, b - 1), (a / 2, b / 3)] {
                    let (u, v) = (CircleValue::new(x as i64, a), CircleValue::new(y as i64, b));
                    if let Some(p) = u.mul_small(v) {
                        assert_eq!(p, u.mul_wide(v), "{u} * {v}");
                    }
                }
                let r = CircleValue::new(1, a);
                assert_eq!(r, CircleValue::reduce(1 % a as u128, a as u128));
            }
        }
    }

    #[test]
    fn reduction_and_identity() {
        assert_eq!(CircleValue::new(0, 7), CircleValue::ONE);
        assert_eq!(CircleValue::new(2, 4), CircleValue::MINUS_ONE);
        assert_eq!(CircleValue::new(-1, 4), CircleValue::new(3, 4));
        assert_eq!(CircleValue::new(1, 4) * CircleValue::new(1, 4), CircleValue::MINUS_ONE);
        assert_eq!(CircleValue::MINUS_ONE.as_real_sign(), Some(-1));
        assert_eq!(CircleValue::new(1, 3).as_real_sign(), None);
        assert_eq!(CircleValue::new(1, 6).order(), 6);
        assert_eq!("3/6".parse::<CircleValue>().unwrap(), CircleValue::MINUS_ONE);
        assert_eq!(CircleValue::new(5, 12).to_string(), "5/12");
    }

    fn value() -> impl Strategy<Value = CircleValue> {
        (0i64..1000, 1u64..60).prop_map(|(p, q)| CircleValue::new(p, q))
    }

    proptest! {
        #[test]
        fn group_laws(a in value(), b in value(), c in value()) {
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * b, b * a);
            prop_assert_eq!(a * a.inv(), CircleValue::ONE);
            prop_assert_eq!(a.pow(a.order()), CircleValue::ONE);
            prop_assert!(a.numerator() < a.denominator());
        }
    }
}

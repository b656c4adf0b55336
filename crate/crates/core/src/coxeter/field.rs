//! Exact arithmetic in the real field `Q(√2, √3, √5)`.
//!
//! An element is a rational vector over the basis `√r` for the eight
//! square-free radicands `r ∈ {1, 2, 3, 6, 5, 10, 15, 30}`. Basis index `b` is
//! a bitmask over the primes `[2, 3, 5]`, so `√r_a · √r_b = p(a & b) · √r_(a ^ b)`
//! where `p(m)` is the product of the primes selected by `m`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::Order;
use super::CoxeterError;

const PRIMES: [i64; 3] = [2, 3, 5];
const DIM: usize = 8;

fn prime_product(mask: usize) -> i64 {
    (0..3).filter(|&k| mask & (1 << k) != 0).map(|k| PRIMES[k]).product()
}

/// An element of `Q(√2, √3, √5)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    coords: [BigRational; DIM],
}

impl Surd {
    pub fn zero() -> Self {
        Surd { coords: std::array::from_fn(|_| BigRational::zero()) }
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(q: BigRational) -> Self {
        let mut s = Self::zero();
        s.coords[0] = q;
        s
    }

    pub fn int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den · √radicand` for a square-free radicand dividing 30.
    pub fn term(num: i64, den: i64, radicand: i64) -> Self {
        let idx =
            (0..DIM).find(|&b| prime_product(b) == radicand).expect("radicand must be a square-free divisor of 30");
        let mut s = Self::zero();
        s.coords[idx] = BigRational::new(num.into(), den.into());
        s
    }

    pub fn coords(&self) -> &[BigRational; DIM] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// `cos(π/m)`; `m = ∞` gives 1.
    pub fn cos_pi_over(order: Order) -> Result<Self, CoxeterError> {
        Ok(match order {
            Order::Infinite => Self::one(),
            Order::Finite(1) => -Self::one(),
            Order::Finite(2) => Self::zero(),
            Order::Finite(3) => Self::term(1, 2, 1),
            Order::Finite(4) => Self::term(1, 2, 2),
            Order::Finite(5) => &Self::term(1, 4, 1) + &Self::term(1, 4, 5),
            Order::Finite(6) => Self::term(1, 2, 3),
            Order::Finite(m) => return Err(CoxeterError::UnsupportedOrder(m)),
        })
    }

    /// Sign as -1, 0 or 1, decided exactly by descending the tower of
    /// quadratic extensions.
    pub fn signum(&self) -> i32 {
        sign_in(&self.coords, 3)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let v = inverse_in(&self.coords, 3);
        Some(Surd { coords: v.try_into().expect("dimension") })
    }

    pub fn to_f64(&self) -> f64 {
        self.coords
            .iter()
            .enumerate()
            .map(|(b, q)| {
                let qf = q.numer().to_string().parse::<f64>().unwrap_or(f64::NAN)
                    / q.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
                qf * (prime_product(b) as f64).sqrt()
            })
            .sum()
    }
}

fn mul_slices(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len();
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let scale = prime_product(i & j);
            let term = x * y;
            out[i ^ j] += if scale == 1 { term } else { term * BigInt::from(scale) };
        }
    }
    out
}

/// Sign of `u + v√p` where `p` is the top prime of the level.
fn sign_in(c: &[BigRational], level: usize) -> i32 {
    if level == 0 {
        return if c[0].is_positive() {
            1
        } else if c[0].is_negative() {
            -1
        } else {
            0
        };
    }
    let half = c.len() / 2;
    let (u, v) = c.split_at(half);
    let su = sign_in(u, level - 1);
    let sv = sign_in(v, level - 1);
    if sv == 0 {
        return su;
    }
    if su == 0 || su == sv {
        return sv;
    }
    // opposite signs: compare u² with p·v²
    let p = BigInt::from(PRIMES[level - 1]);
    let uu = mul_slices(u, u);
    let vv = mul_slices(v, v);
    let diff: Vec<BigRational> = uu.iter().zip(&vv).map(|(x, y)| x - y * &p).collect();
    su * sign_in(&diff, level - 1)
}

fn inverse_in(c: &[BigRational], level: usize) -> Vec<BigRational> {
    if level == 0 {
        return vec![c[0].recip()];
    }
    let half = c.len() / 2;
    let (u, v) = c.split_at(half);
    if v.iter().all(Zero::is_zero) {
        let mut out = inverse_in(u, level - 1);
        out.extend(std::iter::repeat_n(BigRational::zero(), half));
        return out;
    }
    let p = BigInt::from(PRIMES[level - 1]);
    let uu = mul_slices(u, u);
    let vv = mul_slices(v, v);
    let norm: Vec<BigRational> = uu.iter().zip(&vv).map(|(x, y)| x - y * &p).collect();
    let ninv = inverse_in(&norm, level - 1);
    let mut out = mul_slices(u, &ninv);
    out.extend(mul_slices(v, &ninv).into_iter().map(|x| -x));
    out
}

impl Add for &Surd {
    type Output = Surd;
    fn add(self, rhs: &Surd) -> Surd {
        Surd { coords: std::array::from_fn(|i| &self.coords[i] + &rhs.coords[i]) }
    }
}

impl Sub for &Surd {
    type Output = Surd;
    fn sub(self, rhs: &Surd) -> Surd {
        Surd { coords: std::array::from_fn(|i| &self.coords[i] - &rhs.coords[i]) }
    }
}

impl Mul for &Surd {
    type Output = Surd;
    fn mul(self, rhs: &Surd) -> Surd {
        let v = mul_slices(&self.coords, &rhs.coords);
        Surd { coords: v.try_into().expect("dimension") }
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd { coords: self.coords.map(|x| -x) }
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        -(self.clone())
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (b, q) in self.coords.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match prime_product(b) {
                1 => write!(f, "{q}")?,
                r => write!(f, "{q}√{r}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_table() {
        let s2 = Surd::term(1, 1, 2);
        let s3 = Surd::term(1, 1, 3);
        let s6 = Surd::term(1, 1, 6);
        assert_eq!(&s2 * &s2, Surd::int(2));
        assert_eq!(&s2 * &s3, s6);
        assert_eq!(&s6 * &s3, Surd::term(3, 1, 2));
        let s30 = Surd::term(1, 1, 30);
        assert_eq!(&s30 * &s30, Surd::int(30));
    }

    #[test]
    fn exact_signs() {
        // √2 + √3 - √10 ≈ -0.016 < 0
        let x = &(&Surd::term(1, 1, 2) + &Surd::term(1, 1, 3)) - &Surd::term(1, 1, 10);
        assert_eq!(x.signum(), -1);
        // 5 - 2√6 ≈ 0.101 > 0
        let y = &Surd::int(5) - &Surd::term(2, 1, 6);
        assert_eq!(y.signum(), 1);
        assert_eq!(Surd::zero().signum(), 0);
        // golden ratio identity: φ² - φ - 1 = 0
        let phi = &Surd::term(1, 2, 1) + &Surd::term(1, 2, 5);
        let z = &(&(&phi * &phi) - &phi) - &Surd::one();
        assert!(z.is_zero());
    }

    #[test]
    fn inverses() {
        let x = &(&Surd::term(3, 2, 2) + &Surd::term(-1, 1, 15)) + &Surd::term(2, 7, 30);
        let inv = x.inverse().unwrap();
        assert_eq!(&x * &inv, Surd::one());
        assert!(Surd::zero().inverse().is_none());
    }

    #[test]
    fn cosines_match_floats() {
        for m in 2..=6u32 {
            let c = Surd::cos_pi_over(Order::Finite(m)).unwrap();
            assert!((c.to_f64() - (std::f64::consts::PI / m as f64).cos()).abs() < 1e-12);
        }
        assert!(Surd::cos_pi_over(Order::Finite(7)).is_err());
    }
}

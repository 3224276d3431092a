//! Dyadic interval arithmetic with outward rounding.
//!
//! An [`Interval`] at precision `b` is the closed range `[lo / 2^b, hi / 2^b]`
//! with integer endpoints. Every operation rounds `lo` down and `hi` up, so the
//! true value always stays enclosed.

use alloc::collections::BTreeMap;
use core::cell::RefCell;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Sign;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

impl Interval {
    pub fn zero(bits: u32) -> Self {
        Interval { lo: BigInt::zero(), hi: BigInt::zero(), bits }
    }

    pub fn from_int(v: i64, bits: u32) -> Self {
        let x = BigInt::from(v) << bits;
        Interval { lo: x.clone(), hi: x, bits }
    }

    fn unit(&self) -> BigInt {
        BigInt::one() << self.bits
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn lo(&self) -> BigRational {
        BigRational::new(self.lo.clone(), self.unit())
    }

    pub fn hi(&self) -> BigRational {
        BigRational::new(self.hi.clone(), self.unit())
    }

    pub fn width(&self) -> BigRational {
        BigRational::new(&self.hi - &self.lo, self.unit())
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.lo() <= *x && *x <= self.hi()
    }

    pub fn add(&self, other: &Interval) -> Interval {
        assert_eq!(self.bits, other.bits);
        Interval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi, bits: self.bits }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo, bits: self.bits }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        assert_eq!(self.bits, other.bits);
        let products = [&self.lo * &other.lo, &self.lo * &other.hi, &self.hi * &other.lo, &self.hi * &other.hi];
        let min = products.iter().min().unwrap();
        let max = products.iter().max().unwrap();
        let u = self.unit();
        Interval { lo: floor_div(min, &u), hi: ceil_div(max, &u), bits: self.bits }
    }

    pub fn mul_int(&self, k: &BigInt) -> Interval {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if k.is_negative() {
            Interval { lo: b, hi: a, bits: self.bits }
        } else {
            Interval { lo: a, hi: b, bits: self.bits }
        }
    }

    pub fn div_int(&self, k: &BigInt) -> Interval {
        assert!(!k.is_zero(), "interval division by zero");
        if k.is_negative() {
            return self.neg().div_int(&-k);
        }
        Interval { lo: floor_div(&self.lo, k), hi: ceil_div(&self.hi, k), bits: self.bits }
    }

    pub fn mul_rational(&self, c: &BigRational) -> Interval {
        self.mul_int(c.numer()).div_int(c.denom())
    }

    /// Grows both ends by `ulps` units of the last place.
    pub fn widen(&self, ulps: &BigInt) -> Interval {
        Interval { lo: &self.lo - ulps, hi: &self.hi + ulps, bits: self.bits }
    }

    /// `Some(sign)` when the interval excludes zero.
    pub fn strict_sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Positive)
        } else if self.hi.is_negative() {
            Some(Sign::Negative)
        } else {
            None
        }
    }

    pub fn midpoint_f64(&self) -> f64 {
        BigRational::new(&self.lo + &self.hi, self.unit() << 1u32).to_f64().unwrap_or(f64::NAN)
    }
}

/// `arctan(1/k)` for an integer `k >= 2`.
fn atan_inv(k: u32, bits: u32) -> Interval {
    let unit = BigInt::one() << bits;
    let k = BigInt::from(k);
    let k2 = &k * &k;
    let mut acc = Interval::zero(bits);
    let mut power = k.clone();
    let mut i: u64 = 0;
    loop {
        let denom = &power * BigInt::from(2 * i + 1);
        if denom > unit {
            // alternating, decreasing: the tail is below this term, itself under one ulp
            return acc.widen(&BigInt::one());
        }
        let term = Interval { lo: floor_div(&unit, &denom), hi: ceil_div(&unit, &denom), bits };
        acc = if i.is_multiple_of(2) { acc.add(&term) } else { acc.sub(&term) };
        power *= &k2;
        i += 1;
    }
}

/// Enclosure of `π` by Machin's formula.
pub fn pi(bits: u32) -> Interval {
    atan_inv(5, bits).mul_int(&BigInt::from(16)).sub(&atan_inv(239, bits).mul_int(&BigInt::from(4)))
}

/// `(cos φ, sin φ)` for `0 <= φ < π/2` given as an interval.
fn cos_sin_first_quadrant(phi: &Interval) -> (Interval, Interval) {
    let bits = phi.bits;
    let phi2 = phi.mul(phi);
    let series = |first: Interval, offset: u64| {
        let mut acc = Interval::zero(bits);
        let mut term = first;
        let mut k: u64 = 0;
        loop {
            acc = if k.is_multiple_of(2) { acc.add(&term) } else { acc.sub(&term) };
            k += 1;
            let a = 2 * k - 1 + offset;
            term = term.mul(&phi2).div_int(&BigInt::from(a * (a + 1)));
            // terms are decreasing from here on, so the tail is bounded by the next one
            if term.hi <= BigInt::one() && k >= 2 {
                let bound = term.hi.clone().max(BigInt::zero());
                return acc.widen(&bound);
            }
        }
    };
    let cos = series(Interval::from_int(1, bits), 0);
    let sin = series(phi.clone(), 1);
    (cos, sin)
}

/// Enclosures of `cos(2πk/N)` and `sin(2πk/N)`, cached per `k`.
pub struct RootTable {
    modulus: u32,
    pi: Interval,
    cache: RefCell<BTreeMap<u32, (Interval, Interval)>>,
}

impl RootTable {
    pub fn new(modulus: u32, bits: u32) -> Self {
        RootTable { modulus, pi: pi(bits), cache: RefCell::new(BTreeMap::new()) }
    }

    pub fn cos_sin(&self, k: u32) -> (Interval, Interval) {
        let n = u64::from(self.modulus);
        let k = u64::from(k) % n;
        if let Some(hit) = self.cache.borrow().get(&(k as u32)) {
            return hit.clone();
        }
        // 2πk/N = quadrant·π/2 + φ with φ = π(4k - quadrant·N) / 2N
        let quadrant = 4 * k / n;
        let rem = 4 * k - quadrant * n;
        let phi = self.pi.mul_int(&BigInt::from(rem)).div_int(&BigInt::from(2 * n));
        let (c, s) = cos_sin_first_quadrant(&phi);
        let out = match quadrant {
            0 => (c, s),
            1 => (s.neg(), c),
            2 => (c.neg(), s.neg()),
            _ => (s, c.neg()),
        };
        self.cache.borrow_mut().insert(k as u32, out.clone());
        out
    }
}

#[cfg(test)]
mod tests {
    extern crate std;
    use super::*;

    #[test]
    fn pi_encloses_known_digits() {
        let p = pi(200);
        let approx = BigRational::new(
            BigInt::parse_bytes(b"314159265358979323846264338327950288419716939937510", 10).unwrap(),
            BigInt::from(10).pow(50),
        );
        let eps = BigRational::new(BigInt::one(), BigInt::from(10).pow(49));
        assert!(p.lo() <= &approx + &eps && &approx - &eps <= p.hi());
        assert!(p.width() < BigRational::new(BigInt::one(), BigInt::one() << 190u32));
    }

    #[test]
    fn cos_sin_match_float() {
        for n in [12u32, 20, 40, 60, 96] {
            let table = RootTable::new(n, 96);
            for k in 0..n {
                let (c, s) = table.cos_sin(k);
                let theta = 2.0 * std::f64::consts::PI * f64::from(k) / f64::from(n);
                assert!((c.midpoint_f64() - theta.cos()).abs() < 1e-14);
                assert!((s.midpoint_f64() - theta.sin()).abs() < 1e-14);
                assert!(c.width() < BigRational::new(BigInt::one(), BigInt::one() << 80u32));
            }
        }
    }

    #[test]
    fn exact_points_are_enclosed() {
        let table = RootTable::new(24, 128);
        // cos(2π·4/24) = 1/2 and sin(2π·6/24) = 1
        assert!(table.cos_sin(4).0.contains(&BigRational::new(1.into(), 2.into())));
        assert!(table.cos_sin(6).1.contains(&BigRational::one()));
        assert!(table.cos_sin(12).0.contains(&-BigRational::one()));
    }
}

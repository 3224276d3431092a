//! Exact arithmetic in the cyclotomic field `Q(ζ)` with `ζ = exp(2πi/4r)`.
//!
//! A [`RootChoice`] `(r, t)` fixes `q^{1/4} := ζ^t`, so `q = ζ^{4t}` is a
//! primitive `r`-th root of unity. Every element is stored in the power basis
//! `1, ζ, …, ζ^{φ(4r)-1}` reduced modulo the cyclotomic polynomial, so two
//! elements are equal exactly when their coefficient vectors are.

mod field;
pub mod interval;

use alloc::{sync::Arc, vec::Vec};
use core::{fmt, ops};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use field::CycloField;
pub use interval::Interval;

use crate::error::{Error, Result};

/// Largest supported order of `q`. Keeps `4r` comfortably inside `u32` and
/// the field degree small enough for dense arithmetic.
pub const MAX_ORDER: u32 = 1000;

/// Initial working precision (bits) for sign decisions.
pub const SIGN_START_BITS: u32 = 64;
/// Hard cap on the working precision for sign decisions.
pub const SIGN_CAP_BITS: u32 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootChoice {
    r: u32,
    t: u32,
}

impl RootChoice {
    pub fn new(r: u32, t: u32) -> Result<Self> {
        if r < 3 {
            return Err(Error::InvalidRoot { r, t, reason: "r must be at least 3" });
        }
        if r > MAX_ORDER {
            return Err(Error::InvalidRoot { r, t, reason: "r exceeds the supported maximum" });
        }
        let n = 4 * r;
        if t == 0 || t >= n {
            return Err(Error::InvalidRoot { r, t, reason: "t must satisfy 1 <= t < 4r" });
        }
        if t.gcd(&n) != 1 {
            return Err(Error::InvalidRoot { r, t, reason: "t must be coprime to 4r" });
        }
        Ok(RootChoice { r, t })
    }

    /// Every valid `t` for this `r`, in increasing order.
    pub fn all(r: u32) -> Result<Vec<RootChoice>> {
        RootChoice::new(r, 1)?;
        let n = 4 * r;
        Ok((1..n).filter(|t| t.gcd(&n) == 1).map(|t| RootChoice { r, t }).collect())
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// `N = 4r`, the order of `ζ`.
    pub fn modulus(&self) -> u32 {
        4 * self.r
    }

    /// Exponent `e` with `q^{num/den} = ζ^e`, reduced into `0..4r`.
    pub fn zeta_exponent(&self, num: i64, den: u32) -> Result<u32> {
        if !matches!(den, 1 | 2 | 4) {
            return Err(Error::InvalidDenominator(den));
        }
        Ok(self.quarter_exponent(num * i64::from(4 / den)))
    }

    /// Exponent `e` with `q^{k/4} = ζ^e`.
    pub(crate) fn quarter_exponent(&self, k: i64) -> u32 {
        let n = i64::from(self.modulus());
        // t < n <= 4000, so the product only overflows for absurd k
        let e = (k % n) * i64::from(self.t);
        e.rem_euclid(n) as u32
    }

    /// Angle of `q = exp(iθ)` as the fraction `θ / 2π = j / r` in lowest terms.
    pub fn q_angle_fraction(&self) -> (u32, u32) {
        let j = self.t % self.r;
        (j, self.r)
    }
}

impl fmt::Display for RootChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(r={}, t={})", self.r, self.t)
    }
}

/// Sign of a real algebraic number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

/// An exact element of `Q(ζ_N)`.
#[derive(Clone)]
pub struct CycloElem {
    field: Arc<CycloField>,
    coeffs: Vec<BigRational>,
}

impl CycloElem {
    pub(crate) fn from_coeffs(field: Arc<CycloField>, mut coeffs: Vec<BigRational>) -> Self {
        coeffs.resize(field.degree(), BigRational::zero());
        CycloElem { field, coeffs }
    }

    /// Builds an element from an arbitrary-length coefficient vector in powers
    /// of `ζ`, reducing modulo the cyclotomic polynomial.
    pub fn from_power_coeffs(field: &Arc<CycloField>, coeffs: &[BigRational]) -> Self {
        let mut acc = alloc::vec![BigRational::zero(); field.degree()];
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                field.add_power_into(&mut acc, k, c);
            }
        }
        CycloElem { field: field.clone(), coeffs: acc }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn modulus(&self) -> u32 {
        self.field.modulus()
    }

    /// Coefficients in the power basis `1, ζ, …, ζ^{φ(N)-1}`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// `Some(c)` when the element is the rational number `c`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    /// The Galois map `ζ ↦ ζ^{-1}`, which sends `q` to `q^{-1}` and acts as
    /// complex conjugation under every embedding.
    pub fn conj_q(&self) -> CycloElem {
        let n = self.field.modulus() as usize;
        let mut acc = alloc::vec![BigRational::zero(); self.field.degree()];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                self.field.add_power_into(&mut acc, (n - k) % n, c);
            }
        }
        CycloElem { field: self.field.clone(), coeffs: acc }
    }

    pub fn is_real(&self) -> bool {
        self.conj_q() == *self
    }

    pub fn inverse(&self) -> Result<CycloElem> {
        let inv = self.field.invert(&self.coeffs).ok_or(Error::NotInvertible)?;
        Ok(CycloElem { field: self.field.clone(), coeffs: inv })
    }

    pub fn pow(&self, exp: i64) -> Result<CycloElem> {
        let mut base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = self.field.one_elem();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &BigRational) -> CycloElem {
        CycloElem { field: self.field.clone(), coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Rigorous enclosure of the real and imaginary parts under the standard
    /// embedding `ζ ↦ exp(2πi/N)`, at `bits` bits of working precision.
    pub fn embed(&self, bits: u32) -> (Interval, Interval) {
        let table = interval::RootTable::new(self.field.modulus(), bits);
        let mut re = Interval::zero(bits);
        let mut im = Interval::zero(bits);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (cos, sin) = table.cos_sin(k as u32);
            re = re.add(&cos.mul_rational(c));
            im = im.add(&sin.mul_rational(c));
        }
        (re, im)
    }

    /// Advisory floating-point value under the standard embedding.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let (re, im) = self.embed(128);
        (re.midpoint_f64(), im.midpoint_f64())
    }

    /// Sign of a real element.
    ///
    /// Exact zero test first; otherwise the embedding is evaluated with
    /// interval arithmetic, doubling the precision until the enclosure
    /// excludes zero.
    pub fn sign_real(&self) -> Result<Sign> {
        if !self.is_real() {
            return Err(Error::NotReal);
        }
        if self.is_zero() {
            return Ok(Sign::Zero);
        }
        if let Some(c) = self.as_rational() {
            return Ok(if c.is_positive() { Sign::Positive } else { Sign::Negative });
        }
        let mut bits = SIGN_START_BITS;
        loop {
            let table = interval::RootTable::new(self.field.modulus(), bits);
            let mut re = Interval::zero(bits);
            for (k, c) in self.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    re = re.add(&table.cos_sin(k as u32).0.mul_rational(c));
                }
            }
            if let Some(sign) = re.strict_sign() {
                return Ok(sign);
            }
            if bits >= SIGN_CAP_BITS {
                return Err(Error::PrecisionExhausted { cap: SIGN_CAP_BITS });
            }
            bits = (bits * 2).min(SIGN_CAP_BITS);
        }
    }

    fn check_same_field(&self, other: &CycloElem) {
        assert_eq!(self.field.modulus(), other.field.modulus(), "cyclotomic elements from different fields");
    }
}

impl PartialEq for CycloElem {
    fn eq(&self, other: &Self) -> bool {
        self.field.modulus() == other.field.modulus() && self.coeffs == other.coeffs
    }
}

impl Eq for CycloElem {}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{}", a)?,
                _ if a.is_one() => write!(f, "z^{}", k)?,
                _ => write!(f, "{}*z^{}", a, k)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " [N={}]", self.field.modulus())
    }
}

impl<'a> ops::Add<&'a CycloElem> for &'a CycloElem {
    type Output = CycloElem;
    fn add(self, rhs: &'a CycloElem) -> CycloElem {
        self.check_same_field(rhs);
        CycloElem { field: self.field.clone(), coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> ops::Sub<&'a CycloElem> for &'a CycloElem {
    type Output = CycloElem;
    fn sub(self, rhs: &'a CycloElem) -> CycloElem {
        self.check_same_field(rhs);
        CycloElem { field: self.field.clone(), coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl<'a> ops::Mul<&'a CycloElem> for &'a CycloElem {
    type Output = CycloElem;
    fn mul(self, rhs: &'a CycloElem) -> CycloElem {
        self.check_same_field(rhs);
        CycloElem { field: self.field.clone(), coeffs: self.field.mul(&self.coeffs, &rhs.coeffs) }
    }
}

impl ops::Neg for &CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        CycloElem { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl ops::$tr<CycloElem> for CycloElem {
            type Output = CycloElem;
            fn $m(self, rhs: CycloElem) -> CycloElem { ops::$tr::$m(&self, &rhs) }
        }
        impl<'a> ops::$tr<&'a CycloElem> for CycloElem {
            type Output = CycloElem;
            fn $m(self, rhs: &'a CycloElem) -> CycloElem { ops::$tr::$m(&self, rhs) }
        }
        impl<'a> ops::$tr<CycloElem> for &'a CycloElem {
            type Output = CycloElem;
            fn $m(self, rhs: CycloElem) -> CycloElem { ops::$tr::$m(self, &rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl ops::Neg for CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        -&self
    }
}

/// The field `Q(ζ_{4r})` together with the choice `q^{1/4} = ζ^t`.
///
/// Cheap to clone; the reduction tables are shared.
#[derive(Clone, Debug)]
pub struct RootField {
    field: Arc<CycloField>,
    root: RootChoice,
}

impl RootField {
    pub fn new(root: RootChoice) -> Self {
        RootField { field: CycloField::new(root.modulus()), root }
    }

    /// Reuses an existing field of the right modulus.
    pub fn with_field(field: Arc<CycloField>, root: RootChoice) -> Result<Self> {
        if field.modulus() != root.modulus() {
            return Err(Error::invalid("field modulus does not match the root choice"));
        }
        Ok(RootField { field, root })
    }

    pub fn root(&self) -> RootChoice {
        self.root
    }

    pub fn r(&self) -> u32 {
        self.root.r
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn zero(&self) -> CycloElem {
        CycloElem::from_coeffs(self.field.clone(), Vec::new())
    }

    pub fn one(&self) -> CycloElem {
        self.field.one_elem()
    }

    pub fn int(&self, v: i64) -> CycloElem {
        self.rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn rational(&self, v: BigRational) -> CycloElem {
        CycloElem::from_coeffs(self.field.clone(), alloc::vec![v])
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(&self, k: i64) -> CycloElem {
        let n = i64::from(self.field.modulus());
        self.field.power_elem(k.rem_euclid(n) as usize)
    }

    /// `q^{num/den}` for `den ∈ {1, 2, 4}`.
    pub fn qpow(&self, num: i64, den: u32) -> Result<CycloElem> {
        let e = self.root.zeta_exponent(num, den)?;
        Ok(self.field.power_elem(e as usize))
    }

    /// `q^{k/4}`.
    pub fn q_quarter(&self, k: i64) -> CycloElem {
        self.field.power_elem(self.root.quarter_exponent(k) as usize)
    }

    /// `q^{k/2}`.
    pub fn q_half(&self, k: i64) -> CycloElem {
        self.q_quarter(2 * k)
    }

    /// `q^k`.
    pub fn q(&self, k: i64) -> CycloElem {
        self.q_quarter(4 * k)
    }

    /// `q^{num/den}` for an arbitrary rational exponent, provided it is a
    /// multiple of `1/4`.
    pub fn q_rational(&self, num: i64, den: i64) -> Result<CycloElem> {
        if den == 0 || (4 * num) % den != 0 {
            return Err(Error::NonQuarterExponent { num, den });
        }
        Ok(self.q_quarter(4 * num / den))
    }

    /// Quantum integer `[n] = (q^{n/2} - q^{-n/2}) / (q^{1/2} - q^{-1/2})`,
    /// evaluated as the division-free sum `Σ_{i<n} q^{(n-1-2i)/2}`.
    pub fn qint(&self, n: i64) -> CycloElem {
        if n < 0 {
            return -self.qint(-n);
        }
        let mut acc = alloc::vec![BigRational::zero(); self.field.degree()];
        let one = BigRational::one();
        for i in 0..n {
            let e = self.root.quarter_exponent(2 * (n - 1 - 2 * i));
            self.field.add_power_into(&mut acc, e as usize, &one);
        }
        CycloElem::from_coeffs(self.field.clone(), acc)
    }

    /// `(-1)^k` as a field element.
    pub fn sign_pow(&self, k: i64) -> CycloElem {
        if k.rem_euclid(2) == 0 {
            self.one()
        } else {
            -self.one()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(r: u32, t: u32) -> RootField {
        RootField::new(RootChoice::new(r, t).unwrap())
    }

    #[test]
    fn root_choice_validation() {
        assert!(RootChoice::new(2, 1).is_err());
        assert!(RootChoice::new(5, 0).is_err());
        assert!(RootChoice::new(5, 20).is_err());
        assert!(RootChoice::new(5, 5).is_err());
        assert!(RootChoice::new(10, 3).is_ok());
        assert_eq!(RootChoice::all(5).unwrap().len(), 8);
    }

    #[test]
    fn zeta_and_q_orders() {
        for r in 3..=24 {
            for root in RootChoice::all(r).unwrap() {
                let f = RootField::new(root);
                let z = f.q_quarter(1);
                let n = 4 * r;
                for k in 1..n {
                    assert!(!z.pow(i64::from(k)).unwrap().is_one(), "zeta order below 4r");
                }
                assert!(z.pow(i64::from(n)).unwrap().is_one());
                let q = f.q(1);
                for k in 1..r {
                    assert!(!q.pow(i64::from(k)).unwrap().is_one(), "q order below r");
                }
                assert!(q.pow(i64::from(r)).unwrap().is_one());
            }
        }
    }

    #[test]
    fn qpow_examples() {
        let f = rf(5, 3);
        assert!(f.qpow(0, 1).unwrap().is_one());
        assert!(f.qpow(5, 1).unwrap().is_one());
        let g = rf(10, 3);
        assert_eq!(g.qpow(5, 1).unwrap(), -g.one());
        assert!(matches!(f.qpow(1, 3), Err(Error::InvalidDenominator(3))));
        assert_eq!(f.qpow(3, 4).unwrap() * f.qpow(2, 4).unwrap(), f.qpow(5, 4).unwrap());
    }

    #[test]
    fn qint_examples() {
        let f = rf(5, 1);
        assert!(f.qint(1).is_one());
        assert_eq!(f.qint(2), f.q_half(1) + f.q_half(-1));
        assert!(f.qint(5).is_zero());
        assert!(f.qint(0).is_zero());
        assert_eq!(f.qint(-3), -f.qint(3));
    }

    #[test]
    fn qint_recurrence_and_conjugation() {
        for r in 3..=12 {
            for root in RootChoice::all(r).unwrap() {
                let f = RootField::new(root);
                let two = f.qint(2);
                for n in 0..=20 {
                    assert_eq!(f.qint(n + 1), &two * &f.qint(n) - f.qint(n - 1));
                }
                for n in 0..=10 {
                    assert_eq!(f.qint(n).conj_q(), f.qint(n));
                }
            }
        }
    }

    #[test]
    fn conj_examples() {
        let f = rf(7, 3);
        assert!(f.one().conj_q().is_one());
        assert_eq!(f.q(1).conj_q(), f.q(-1));
        assert_eq!(f.q_quarter(3).conj_q(), f.q_quarter(-3));
    }

    #[test]
    fn inverse_roundtrip() {
        let f = rf(10, 3);
        let x = f.qint(2) + f.q_quarter(5) - f.int(3);
        let y = x.inverse().unwrap();
        assert!((&x * &y).is_one());
        assert!(matches!(f.zero().inverse(), Err(Error::NotInvertible)));
        assert_eq!(f.qint(3).pow(-2).unwrap() * f.qint(3).pow(2).unwrap(), f.one());
    }

    #[test]
    fn sign_examples() {
        let f = rf(10, 3);
        assert_eq!(f.zero().sign_real().unwrap(), Sign::Zero);
        let two = f.qint(2);
        assert_eq!((&two * &two).sign_real().unwrap(), Sign::Positive);
        let x = (f.q(1) - f.q(-1)) * (f.q(2) - f.q(-2));
        assert_eq!(x.sign_real().unwrap(), Sign::Positive);
        let (re, im) = x.to_complex_f64();
        assert!((re - 5f64.sqrt()).abs() < 1e-12, "{re}");
        assert!(im.abs() < 1e-12);
        assert_eq!((-x).sign_real().unwrap(), Sign::Negative);
        assert!(matches!(f.q(1).sign_real(), Err(Error::NotReal)));
    }

    #[test]
    fn display_is_readable() {
        let f = rf(3, 1);
        let s = alloc::format!("{}", f.int(2) - f.zeta_pow(1));
        assert!(s.starts_with("2 - z^1"), "{s}");
    }
}

use alloc::{sync::Arc, vec, vec::Vec};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::CycloElem;

/// Reduction data for `Q[x] / Φ_N(x)`.
#[derive(Debug)]
pub struct CycloField {
    modulus: u32,
    /// `Φ_N`, ascending coefficients, monic.
    phi: Vec<BigInt>,
    /// `powers[k] = x^k mod Φ_N` for `0 <= k < N`.
    powers: Vec<Vec<BigInt>>,
}

impl CycloField {
    pub fn new(modulus: u32) -> Arc<Self> {
        assert!(modulus >= 1);
        let phi = cyclotomic_polynomial(modulus as usize);
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(modulus as usize);
        let mut cur = vec![BigInt::zero(); degree];
        if degree > 0 {
            cur[0] = BigInt::one();
        }
        for _ in 0..modulus {
            powers.push(cur.clone());
            // multiply by x and reduce with the monic Φ
            let top = cur.pop().unwrap_or_default();
            cur.insert(0, BigInt::zero());
            if !top.is_zero() {
                for (c, p) in cur.iter_mut().zip(&phi) {
                    *c -= &top * p;
                }
            }
        }
        Arc::new(CycloField { modulus, phi, powers })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// `φ(N)`.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Coefficients of the cyclotomic polynomial, ascending.
    pub fn cyclotomic_polynomial(&self) -> &[BigInt] {
        &self.phi
    }

    pub(crate) fn one_elem(self: &Arc<Self>) -> CycloElem {
        self.power_elem(0)
    }

    pub(crate) fn power_elem(self: &Arc<Self>, k: usize) -> CycloElem {
        let coeffs = self.powers[k % self.modulus as usize].iter().map(|c| BigRational::from_integer(c.clone())).collect();
        CycloElem::from_coeffs(self.clone(), coeffs)
    }

    /// `acc += c * x^k` with reduction.
    pub(crate) fn add_power_into(&self, acc: &mut [BigRational], k: usize, c: &BigRational) {
        let row = &self.powers[k % self.modulus as usize];
        for (a, p) in acc.iter_mut().zip(row) {
            if !p.is_zero() {
                *a += c * BigRational::from_integer(p.clone());
            }
        }
    }

    pub(crate) fn mul(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let d = self.degree();
        let mut prod = vec![BigRational::zero(); 2 * d];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let high = prod.split_off(d);
        for (k, c) in high.into_iter().enumerate() {
            if !c.is_zero() {
                self.add_power_into(&mut prod, d + k, &c);
            }
        }
        prod
    }

    /// Inverse modulo `Φ_N` by the extended Euclidean algorithm over `Q`.
    pub(crate) fn invert(&self, a: &[BigRational]) -> Option<Vec<BigRational>> {
        let mut r0: Vec<BigRational> = self.phi.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let mut r1 = trim(a.to_vec());
        if r1.is_empty() {
            return None;
        }
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !r1.is_empty() {
            let (quot, rem) = poly_divmod(&r0, &r1);
            let next = poly_sub(&s0, &poly_mul(&quot, &s1));
            r0 = core::mem::replace(&mut r1, rem);
            s0 = core::mem::replace(&mut s1, next);
        }
        // Φ is irreducible, so the gcd is a nonzero constant
        if r0.len() != 1 {
            return None;
        }
        let c = r0[0].clone();
        let mut out = vec![BigRational::zero(); self.degree()];
        for (k, v) in s0.iter().enumerate() {
            if !v.is_zero() {
                self.add_power_into(&mut out, k, &(v / &c));
            }
        }
        Some(out)
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / lead;
        for (i, y) in b.iter().enumerate() {
            rem[shift + i] -= &c * y;
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

/// `Φ_n(x)` with integer coefficients, ascending.
fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    // Φ_d for every divisor d, ascending; x^d - 1 = Π_{e | d} Φ_e
    let divisors: Vec<usize> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut known: Vec<(usize, Vec<BigInt>)> = Vec::with_capacity(divisors.len());
    for &d in &divisors {
        let mut p = vec![BigInt::zero(); d + 1];
        p[0] = -BigInt::one();
        p[d] = BigInt::one();
        for (e, phi_e) in &known {
            if d % e == 0 {
                p = exact_div_monic(&p, phi_e);
            }
        }
        known.push((d, p));
    }
    known.pop().map(|(_, p)| p).unwrap_or_default()
}

fn exact_div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for shift in (0..quot.len()).rev() {
        let c = rem[shift + db].clone();
        if c.is_zero() {
            continue;
        }
        for (i, y) in b.iter().enumerate() {
            rem[shift + i] -= &c * y;
        }
        quot[shift] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(20), ints(&[1, 0, -1, 0, 1, 0, -1, 0, 1]));
        assert_eq!(CycloField::new(40).degree(), 16);
    }

    #[test]
    fn powers_wrap() {
        let f = CycloField::new(12);
        let z = f.power_elem(1);
        let mut acc = f.one_elem();
        for _ in 0..12 {
            acc = &acc * &z;
        }
        assert!(acc.is_one());
        assert_eq!(f.power_elem(6), -f.one_elem());
    }
}

//! Exact arithmetic in small cyclotomic fields `Q(ζ_m)`.
//!
//! Elements are dense coefficient vectors on the power basis
//! `1, ζ, ..., ζ^{φ(m)-1}`, reduced modulo the m-th cyclotomic polynomial.
//! Conjugation is `ζ ↦ ζ^{-1}`. Binary operations lift both sides to the
//! lcm conductor, which is capped by [`crate::MAX_CONDUCTOR`].

use num::bigint::BigInt;
use num::{One, Zero};

use crate::exact::{fmt_q, qi, Q};
use crate::{Error, Result, MAX_CONDUCTOR};

pub fn phi(m: i64) -> i64 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Monic integer coefficients of `Φ_m`, ascending degree.
pub fn cyclotomic_poly(m: i64) -> Vec<BigInt> {
    assert!(m >= 1);
    // x^m - 1 divided by the product of Φ_d over proper divisors d | m
    let mut num: Vec<BigInt> = vec![BigInt::zero(); (m + 1) as usize];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_poly(d);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    num
}

/// Exact division of integer polynomials (ascending coefficients).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let nd = rem.len() - 1;
    assert!(nd >= dd);
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for (i, dc) in den.iter().enumerate() {
            rem[k + i] -= &c * dc;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division not exact");
    quot
}

/// Reduce a rational polynomial modulo `Φ_m`, returning `φ(m)` coefficients.
fn reduce_mod_phi(mut poly: Vec<Q>, m: i64) -> Vec<Q> {
    let modulus = cyclotomic_poly(m);
    let deg = modulus.len() - 1;
    while poly.len() > deg {
        let k = poly.len() - 1;
        let c = poly[k].clone();
        if !c.is_zero() {
            for (i, mc) in modulus.iter().enumerate() {
                let term = &c * Q::from_integer(mc.clone());
                poly[k - deg + i] -= term;
            }
        }
        poly.pop();
    }
    poly.resize(deg, Q::zero());
    poly
}

/// An element of `Q(ζ_m)`.
#[derive(Clone, Debug)]
pub struct Cyc {
    m: i64,
    c: Vec<Q>,
}

impl Cyc {
    pub fn rational(q: Q) -> Cyc {
        Cyc { m: 1, c: vec![q] }
    }

    pub fn int(n: i64) -> Cyc {
        Cyc::rational(qi(n))
    }

    pub fn zero() -> Cyc {
        Cyc::int(0)
    }

    pub fn one() -> Cyc {
        Cyc::int(1)
    }

    /// `ζ_m^k`.
    pub fn root_of_unity(m: i64, k: i64) -> Result<Cyc> {
        if m > MAX_CONDUCTOR {
            return Err(Error::ConductorTooLarge(m));
        }
        let k = k.rem_euclid(m);
        if m == 1 {
            return Ok(Cyc::one());
        }
        let mut poly = vec![Q::zero(); (k + 1) as usize];
        poly[k as usize] = Q::one();
        Ok(Cyc { m, c: reduce_mod_phi(poly, m) }.normalized())
    }

    pub fn conductor(&self) -> i64 {
        self.m
    }

    fn lift(&self, big_m: i64) -> Cyc {
        if self.m == big_m {
            return self.clone();
        }
        assert_eq!(big_m % self.m, 0);
        let s = (big_m / self.m) as usize;
        let mut poly = vec![Q::zero(); (self.c.len() - 1) * s + 1];
        for (j, coef) in self.c.iter().enumerate() {
            poly[j * s] = coef.clone();
        }
        Cyc { m: big_m, c: reduce_mod_phi(poly, big_m) }
    }

    fn common(&self, other: &Cyc) -> Result<(Cyc, Cyc, i64)> {
        let m = num::integer::lcm(self.m, other.m);
        if m > MAX_CONDUCTOR {
            return Err(Error::ConductorTooLarge(m));
        }
        Ok((self.lift(m), other.lift(m), m))
    }

    pub fn add(&self, other: &Cyc) -> Result<Cyc> {
        let (a, b, m) = self.common(other)?;
        let c = a.c.iter().zip(b.c.iter()).map(|(x, y)| x + y).collect();
        Ok(Cyc { m, c }.normalized())
    }

    pub fn sub(&self, other: &Cyc) -> Result<Cyc> {
        let (a, b, m) = self.common(other)?;
        let c = a.c.iter().zip(b.c.iter()).map(|(x, y)| x - y).collect();
        Ok(Cyc { m, c }.normalized())
    }

    pub fn mul(&self, other: &Cyc) -> Result<Cyc> {
        let (a, b, m) = self.common(other)?;
        let mut poly = vec![Q::zero(); a.c.len() + b.c.len()];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        Ok(Cyc { m, c: reduce_mod_phi(poly, m) }.normalized())
    }

    pub fn scale(&self, q: &Q) -> Cyc {
        Cyc { m: self.m, c: self.c.iter().map(|x| x * q).collect() }.normalized()
    }

    pub fn neg(&self) -> Cyc {
        self.scale(&qi(-1))
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Cyc {
        if self.m == 1 {
            return self.clone();
        }
        let mut acc = vec![Q::zero(); self.m as usize];
        for (j, coef) in self.c.iter().enumerate() {
            if !coef.is_zero() {
                let e = ((self.m - j as i64) % self.m) as usize;
                acc[e] += coef;
            }
        }
        Cyc { m: self.m, c: reduce_mod_phi(acc, self.m) }.normalized()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn as_rational(&self) -> Option<Q> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    pub fn expect_rational(&self) -> Result<Q> {
        self.as_rational().ok_or(Error::NotRational)
    }

    /// Drop to conductor 1 when the value is rational.
    fn normalized(self) -> Cyc {
        if self.m != 1 {
            if let Some(q) = self.as_rational() {
                return Cyc::rational(q);
            }
        }
        self
    }

    pub fn eq(&self, other: &Cyc) -> bool {
        match self.common(other) {
            Ok((a, b, _)) => a.c == b.c,
            Err(_) => false,
        }
    }

    /// Deterministic encoding used for sorting table rows.
    pub fn sort_key(&self) -> (i64, Vec<(BigInt, BigInt)>) {
        (
            self.m,
            self.c
                .iter()
                .map(|q| (q.numer().clone(), q.denom().clone()))
                .collect(),
        )
    }
}

impl std::fmt::Display for Cyc {
    /// `p/q` for rationals, otherwise a sum of `c z{m}^k` terms.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", fmt_q(&q));
        }
        let mut parts = Vec::new();
        for (k, coef) in self.c.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let body = if k == 0 {
                fmt_q(coef)
            } else {
                let z = if k == 1 {
                    format!("z{}", self.m)
                } else {
                    format!("z{}^{}", self.m, k)
                };
                if coef.is_one() {
                    z
                } else if *coef == qi(-1) {
                    format!("-{z}")
                } else {
                    format!("{}*{}", fmt_q(coef), z)
                }
            };
            parts.push(body);
        }
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i > 0 && !p.starts_with('-') {
                out.push('+');
            }
            out.push_str(p);
        }
        write!(f, "{out}")
    }
}

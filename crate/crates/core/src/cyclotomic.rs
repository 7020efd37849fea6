//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! A value is stored in the power basis `1, ζ_n, …, ζ_n^(φ(n)-1)` of its
//! smallest field: every operation reduces modulo the cyclotomic polynomial
//! and then lowers the conductor as far as the value allows, so two values
//! are equal exactly when their representations are.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

type Q = BigRational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<Q>,
}

pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|&k| k.gcd(&n) == 1).count() as u32
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Arc<[i64]> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<[i64]>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        let divisor = cyclotomic_polynomial(d);
        let dd = divisor.len() - 1;
        let mut quotient = vec![0i64; poly.len() - dd];
        for i in (0..quotient.len()).rev() {
            let c = poly[i + dd];
            quotient[i] = c;
            for (j, &q) in divisor.iter().enumerate() {
                poly[i + j] -= c * q;
            }
        }
        debug_assert!(poly.iter().all(|&c| c == 0));
        poly = quotient;
    }
    let result: Arc<[i64]> = poly.into();
    cache.lock().unwrap().insert(n, result.clone());
    result
}

/// Reduces a polynomial in ζ_n (exponents taken mod n) to the power basis of
/// length φ(n).
fn reduce(n: u32, mut poly: Vec<Q>) -> Vec<Q> {
    let n_us = n as usize;
    if poly.len() > n_us {
        for i in n_us..poly.len() {
            let c = std::mem::take(&mut poly[i]);
            if !c.is_zero() {
                poly[i % n_us] += c;
            }
        }
        poly.truncate(n_us);
    }
    let phi_poly = cyclotomic_polynomial(n);
    let deg = phi_poly.len() - 1;
    if poly.len() > deg {
        for i in (deg..poly.len()).rev() {
            if poly[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut poly[i]);
            for (j, &q) in phi_poly[..deg].iter().enumerate() {
                if q != 0 {
                    poly[i - deg + j] -= &c * Q::from_integer(BigInt::from(q));
                }
            }
        }
    }
    poly.resize(deg, Q::zero());
    poly
}

/// Exact solve of a small dense system, returning `None` when inconsistent.
/// `columns[j]` is the j-th column; all have the same length.
fn solve_columns(columns: &[Vec<Q>], rhs: &[Q]) -> Option<Vec<Q>> {
    let rows = rhs.len();
    let cols = columns.len();
    let mut m: Vec<Vec<Q>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Q> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, pv) in row[c..=cols].iter_mut().zip(&pivot_row[c..=cols]) {
                    *x -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

impl Cyclotomic {
    pub fn zero() -> Cyclotomic {
        Cyclotomic::from_rational(Q::zero())
    }

    pub fn one() -> Cyclotomic {
        Cyclotomic::from_integer(1)
    }

    pub fn from_integer(v: i64) -> Cyclotomic {
        Cyclotomic::from_rational(Q::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(v: Q) -> Cyclotomic {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![v],
        }
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Cyclotomic {
        assert!(n > 0);
        let e = k.rem_euclid(n as i64) as usize;
        let mut poly = vec![Q::zero(); n as usize];
        poly[e] = Q::one();
        Cyclotomic::normalize(n, reduce(n, poly))
    }

    pub fn zeta(n: u32) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, 1)
    }

    /// `Σ_k multiplicities[k] · ζ_n^k` for `k < n`.
    pub fn from_root_multiplicities(n: u32, multiplicities: &[i64]) -> Cyclotomic {
        assert_eq!(multiplicities.len(), n as usize);
        let poly = multiplicities.iter().map(|&m| Q::from_integer(BigInt::from(m))).collect();
        Cyclotomic::normalize(n, reduce(n, poly))
    }

    /// Builds a value from power-basis coefficients in `Q(ζ_n)`.
    pub fn from_coefficients(n: u32, coeffs: Vec<Q>) -> Cyclotomic {
        assert!(n > 0);
        Cyclotomic::normalize(n, reduce(n, coeffs))
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coefficients(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_one()
    }

    pub fn to_rational(&self) -> Option<Q> {
        (self.conductor == 1).then(|| self.coeffs[0].clone())
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|z| z.to_i64())
    }

    /// Coefficients of `self` in the power basis of `Q(ζ_m)`, `m` a multiple
    /// of the conductor.
    fn lift(&self, m: u32) -> Vec<Q> {
        if m == self.conductor {
            return self.coeffs.clone();
        }
        debug_assert_eq!(m % self.conductor, 0);
        let step = (m / self.conductor) as usize;
        let mut poly = vec![Q::zero(); m as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[k * step] = c.clone();
        }
        reduce(m, poly)
    }

    /// Image under the automorphism `ζ_n ↦ ζ_n^k` of `Q(ζ_n)`, `n` the conductor.
    fn galois_raw(n: u32, coeffs: &[Q], k: u32) -> Vec<Q> {
        let mut poly = vec![Q::zero(); n as usize];
        for (j, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[(j as u64 * k as u64 % n as u64) as usize] += c;
            }
        }
        reduce(n, poly)
    }

    /// Applies `ζ ↦ ζ^k` for `k` coprime to the conductor.
    pub fn galois(&self, k: i64) -> Cyclotomic {
        let n = self.conductor;
        let k = k.rem_euclid(n as i64) as u32;
        assert_eq!(k.gcd(&n), 1, "exponent must be coprime to the conductor");
        Cyclotomic {
            conductor: n,
            coeffs: Cyclotomic::galois_raw(n, &self.coeffs, k),
        }
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Cyclotomic {
        if self.conductor == 1 {
            return self.clone();
        }
        self.galois(-1)
    }

    /// Puts a reduced value of `Q(ζ_n)` into its smallest field.
    fn normalize(n: u32, coeffs: Vec<Q>) -> Cyclotomic {
        if n == 1 || coeffs[1..].iter().all(Q::is_zero) {
            return Cyclotomic {
                conductor: 1,
                coeffs: vec![coeffs.into_iter().next().unwrap_or_else(Q::zero)],
            };
        }
        for f in divisors(n) {
            if f == 1 || f == n || f % 4 == 2 {
                continue;
            }
            let fixed = (1..n)
                .filter(|&k| k % f == 1 && k.gcd(&n) == 1)
                .all(|k| Cyclotomic::galois_raw(n, &coeffs, k) == coeffs);
            if !fixed {
                continue;
            }
            let step = (n / f) as usize;
            let columns: Vec<Vec<Q>> = (0..euler_phi(f) as usize)
                .map(|j| {
                    let mut poly = vec![Q::zero(); n as usize];
                    poly[j * step] = Q::one();
                    reduce(n, poly)
                })
                .collect();
            let down = solve_columns(&columns, &coeffs).expect("Galois-fixed value lies in the subfield");
            return Cyclotomic::normalize(f, down);
        }
        Cyclotomic { conductor: n, coeffs }
    }

    fn combine(&self, other: &Cyclotomic, op: impl Fn(&mut Q, &Q)) -> Cyclotomic {
        let m = self.conductor.lcm(&other.conductor);
        let mut a = self.lift(m);
        let b = other.lift(m);
        for (x, y) in a.iter_mut().zip(&b) {
            op(x, y);
        }
        Cyclotomic::normalize(m, a)
    }

    pub fn scale(&self, q: &Q) -> Cyclotomic {
        if q.is_zero() {
            return Cyclotomic::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn mul_ref(&self, other: &Cyclotomic) -> Cyclotomic {
        if self.conductor == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.conductor == 1 {
            return self.scale(&other.coeffs[0]);
        }
        let m = self.conductor.lcm(&other.conductor);
        let a = self.lift(m);
        let b = other.lift(m);
        let mut poly = vec![Q::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        Cyclotomic::normalize(m, reduce(m, poly))
    }

    /// Field norm down to `Q` together with the product of the non-trivial
    /// conjugates, so that `self · cofactor = norm`.
    fn norm_and_cofactor(&self) -> (Q, Cyclotomic) {
        let n = self.conductor;
        let mut cofactor = Cyclotomic::one();
        for k in 2..n {
            if k.gcd(&n) == 1 {
                cofactor = cofactor.mul_ref(&self.galois(k as i64));
            }
        }
        let norm = self.mul_ref(&cofactor).to_rational().expect("norm is rational");
        (norm, cofactor)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Cyclotomic> {
        if self.is_zero() {
            return None;
        }
        if self.conductor == 1 {
            return Some(Cyclotomic::from_rational(self.coeffs[0].recip()));
        }
        let (norm, cofactor) = self.norm_and_cofactor();
        Some(cofactor.scale(&norm.recip()))
    }

    /// Total order used for deterministic sorting: conductor, then
    /// coefficients lexicographically.
    pub fn canonical_cmp(&self, other: &Cyclotomic) -> std::cmp::Ordering {
        self.conductor
            .cmp(&other.conductor)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.combine(rhs, |x, y| *x += y)
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.combine(rhs, |x, y| *x -= y)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.mul_ref(rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl From<i64> for Cyclotomic {
    fn from(v: i64) -> Self {
        Cyclotomic::from_integer(v)
    }
}

impl fmt::Display for Cyclotomic {
    /// GAP-style text: `2`, `-1/2`, `E(3)+2*E(3)^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conductor == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            f.write_str(sign)?;
            let root = match k {
                0 => String::new(),
                1 => format!("E({})", self.conductor),
                _ => format!("E({})^{}", self.conductor, k),
            };
            if root.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&root)?;
            } else {
                write!(f, "{mag}*{root}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    conductor: u32,
    coeffs: Vec<String>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        Wire {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = Wire::deserialize(deserializer)?;
        if wire.conductor == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let coeffs = wire
            .coeffs
            .iter()
            .map(|s| s.parse::<Q>().map_err(|_| D::Error::custom(format!("bad rational {s:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.len() > wire.conductor as usize {
            return Err(D::Error::custom("too many coefficients for the conductor"));
        }
        Ok(Cyclotomic::from_coefficients(wire.conductor, coeffs))
    }
}

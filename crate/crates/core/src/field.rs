//! Arithmetic in GF(q), q = p^m.
//!
//! An element is stored as its canonical integer in `[0, q)`: the base-p
//! digits of the integer, least significant first, are the coefficients of
//! the residue polynomial modulo the field's defining polynomial. For prime
//! fields this is just the residue mod p.
//!
//! Multiplication goes through exp/log tables built from a primitive element;
//! inverses are tabulated with the extended Euclidean algorithm on
//! polynomials.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Canonical integer encoding of a field element.
pub type FieldElement = u32;

/// Shared handle to a field; matrices and codes hold one of these.
pub type FieldRef = Arc<Field>;

pub const MAX_ORDER: u64 = 1 << 16;

/// Largest q for which odd-characteristic extension fields get a full
/// addition table.
const ADD_TABLE_MAX_ORDER: u32 = 256;

#[derive(Clone)]
pub struct Field {
    p: u32,
    m: u32,
    q: u32,
    /// Monic defining polynomial, coefficients low-to-high, length m + 1.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    inv: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

/// Builds GF(q) with the smallest monic irreducible modulus of degree m,
/// ordering candidates by the canonical integer of their lower coefficients.
pub fn make_field(q: u64) -> Result<FieldRef> {
    let (p, m) = prime_power(q)?;
    let modulus = smallest_irreducible(p, m);
    Ok(Arc::new(Field::build(p, m, modulus)))
}

impl Field {
    /// Builds GF(p^m) from an explicit modulus (low-to-high coefficients).
    ///
    /// For m = 1 the modulus must be the placeholder `x` (`[0, 1]`).
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<FieldRef> {
        if p < 2 || !is_prime(p) {
            return Err(Error::InvalidModulus(format!("characteristic {p} is not prime")));
        }
        if modulus.len() < 2 {
            return Err(Error::InvalidModulus("modulus must have degree >= 1".into()));
        }
        let m = (modulus.len() - 1) as u32;
        let q = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
        if q > MAX_ORDER as u128 {
            return Err(Error::UnsupportedOrder(q.min(u64::MAX as u128) as u64));
        }
        if let Some(&c) = modulus.iter().find(|&&c| c >= p) {
            return Err(Error::InvalidModulus(format!("coefficient {c} is not reduced mod {p}")));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidModulus("modulus is not monic".into()));
        }
        let p = p as u32;
        let coeffs: Vec<u32> = modulus.iter().map(|&c| c as u32).collect();
        if m == 1 {
            if coeffs != [0, 1] {
                return Err(Error::InvalidModulus("prime fields use the placeholder modulus \"0 1\"".into()));
            }
        } else if !is_irreducible(p, &coeffs) {
            return Err(Error::InvalidModulus(format!("{coeffs:?} is reducible over GF({p})")));
        }
        Ok(Arc::new(Field::build(p, m, coeffs)))
    }

    fn build(p: u32, m: u32, modulus: Vec<u32>) -> Field {
        let q = p.pow(m);
        let mut f = Field {
            p,
            m,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            inv: Vec::new(),
            neg: Vec::new(),
            add_table: None,
        };
        f.neg = (0..q).map(|a| f.neg_slow(a)).collect();
        if p != 2 && m > 1 && q <= ADD_TABLE_MAX_ORDER {
            let mut table = vec![0; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = f.add_slow(a, b);
                }
            }
            f.add_table = Some(table);
        }
        f.build_log_tables();
        f.inv = (0..q).map(|a| if a == 0 { 0 } else { f.inverse_euclid(a) }).collect();
        f
    }

    fn build_log_tables(&mut self) {
        let q = self.q as usize;
        let order = q - 1;
        for g in 1..self.q {
            let mut exp = Vec::with_capacity(2 * order);
            let mut seen = vec![false; q];
            let mut x = 1u32;
            let mut primitive = true;
            for _ in 0..order {
                if seen[x as usize] {
                    primitive = false;
                    break;
                }
                seen[x as usize] = true;
                exp.push(x);
                x = self.mul_slow(x, g);
            }
            if !primitive || x != 1 {
                continue;
            }
            let mut log = vec![0u32; q];
            for (i, &e) in exp.iter().enumerate() {
                log[e as usize] = i as u32;
            }
            exp.extend_from_within(..order);
            self.exp = exp;
            self.log = log;
            return;
        }
        unreachable!("every finite field has a primitive element");
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Validates a raw integer as an element of this field.
    pub fn element(&self, value: u64) -> Result<FieldElement> {
        if value < self.q as u64 {
            Ok(value as u32)
        } else {
            Err(Error::InvalidElement { value, q: self.q })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        0..self.q
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a < self.q && b < self.q);
        if self.p == 2 {
            a ^ b
        } else if self.m == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if let Some(t) = &self.add_table {
            t[(a * self.q + b) as usize]
        } else {
            self.add_slow(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a < self.q && b < self.q);
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.inv[a as usize])
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.q - 1) as u64;
        let l = (self.log[a as usize] as u64 * (e % order)) % order;
        self.exp[l as usize]
    }

    /// Inverse of a nonzero element; panics on zero. For hot loops that have
    /// already excluded zero.
    #[inline]
    pub(crate) fn inv_nonzero(&self, a: FieldElement) -> FieldElement {
        assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.m as usize);
        for _ in 0..self.m {
            d.push(a % self.p);
            a /= self.p;
        }
        d
    }

    fn compose_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.compose_digits(&s)
    }

    fn neg_slow(&self, a: u32) -> u32 {
        let d: Vec<u32> = self.digits(a).iter().map(|&x| (self.p - x) % self.p).collect();
        self.compose_digits(&d)
    }

    /// Polynomial product reduced by the modulus (integer product for m = 1).
    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let prod = poly::mul(self.p, &self.digits(a), &self.digits(b));
        let mut r = poly::rem(self.p, &prod, &self.modulus);
        r.resize(self.m as usize, 0);
        self.compose_digits(&r)
    }

    fn inverse_euclid(&self, a: u32) -> u32 {
        if self.m == 1 {
            return poly::inv_mod_int(a, self.p);
        }
        let mut r = poly::inverse(self.p, &self.digits(a), &self.modulus)
            .expect("nonzero residue of an irreducible modulus is invertible");
        r.resize(self.m as usize, 0);
        self.compose_digits(&r)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}) [{}]", self.q, self)
    }
}

/// `p m c0 c1 ... cm`
impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.p, self.m)?;
        for c in &self.modulus {
            write!(f, " {c}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let nums = s
            .split_whitespace()
            .map(|t| t.parse::<u64>().map_err(|e| Error::InvalidModulus(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        if nums.len() < 2 {
            return Err(Error::InvalidModulus("expected \"p m c0 .. cm\"".into()));
        }
        let (p, m) = (nums[0], nums[1]);
        if nums.len() as u64 != m + 3 {
            return Err(Error::InvalidModulus(format!(
                "degree {m} needs {} coefficients, got {}",
                m + 1,
                nums.len() - 2
            )));
        }
        let f = Field::with_modulus(p, &nums[2..])?;
        Ok(Arc::try_unwrap(f).unwrap_or_else(|a| (*a).clone()))
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn prime_power(q: u64) -> Result<(u32, u32)> {
    if !(2..=MAX_ORDER).contains(&q) {
        return Err(Error::UnsupportedOrder(q));
    }
    let f = factorize(q);
    if f.len() != 1 {
        let factorization = f
            .iter()
            .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect::<Vec<_>>()
            .join(" * ");
        return Err(Error::NotPrimePower { q, factorization: format!("{q} = {factorization}") });
    }
    Ok((f[0].0 as u32, f[0].1))
}

fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    if m == 1 {
        return vec![0, 1];
    }
    let lower = p.pow(m);
    for t in 0..lower {
        let mut c: Vec<u32> = (0..m).map(|i| (t / p.pow(i)) % p).collect();
        c.push(1);
        if is_irreducible(p, &c) {
            return c;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(p: u32, f: &[u32]) -> bool {
    let deg = f.len() - 1;
    if f[0] == 0 {
        return false;
    }
    for k in 1..=deg / 2 {
        for t in 0..p.pow(k as u32) {
            let mut g: Vec<u32> = (0..k).map(|i| (t / p.pow(i as u32)) % p).collect();
            g.push(1);
            if poly::rem(p, f, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Dense polynomials over GF(p), coefficients low-to-high; the zero
/// polynomial is the empty vector.
mod poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn inv_mod_int(a: u32, p: u32) -> u32 {
        let (mut r0, mut r1) = (p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let qt = r0 / r1;
            (r0, r1) = (r1, r0 - qt * r1);
            (t0, t1) = (t1, t0 - qt * t1);
        }
        debug_assert_eq!(r0, 1);
        t0.rem_euclid(p as i64) as u32
    }

    pub fn mul(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|c| c as u32).collect())
    }

    fn sub(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    /// Quotient and remainder of `a` by nonzero `b`.
    pub fn divmod(p: u32, a: &[u32], b: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let b = trim(b.to_vec());
        assert!(!b.is_empty(), "polynomial division by zero");
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lead_inv = inv_mod_int(*b.last().unwrap(), p);
        let mut quot = vec![0u32; r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
            quot[shift] = c;
            for (i, &bi) in b.iter().enumerate() {
                let t = (c as u64 * bi as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
            r = trim(r);
        }
        (trim(quot), r)
    }

    pub fn rem(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
        divmod(p, a, b).1
    }

    /// Inverse of `a` modulo `f` by the extended Euclidean algorithm.
    pub fn inverse(p: u32, a: &[u32], f: &[u32]) -> Option<Vec<u32>> {
        let (mut r0, mut r1) = (trim(f.to_vec()), rem(p, a, f));
        let (mut s0, mut s1): (Vec<u32>, Vec<u32>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (qt, r) = divmod(p, &r0, &r1);
            let s = sub(p, &s0, &mul(p, &qt, &s1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = inv_mod_int(r0[0], p);
        Some(mul(p, &s0, &[c]))
    }
}

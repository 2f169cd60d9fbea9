//! Closed-form bounds for locally repairable codes, evaluated exactly.
//!
//! Every quantity is an integer or an exact rational; nothing here uses
//! floating point except for display.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{precondition, Result};

fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

/// Right-hand side of the Singleton-type bound, `n - k - ceil(k/r) + 2`.
pub fn singleton_type_bound(n: u64, k: u64, r: u64) -> Result<i64> {
    if k < 1 || r < 1 {
        return Err(precondition(format!("Singleton-type bound needs k >= 1 and r >= 1 (k={k}, r={r})")));
    }
    Ok(n as i64 - k as i64 - ceil_div(k, r) as i64 + 2)
}

/// Extra redundancy beyond the local parities, `d - 2 - floor((d-2)/(r+1))`.
pub fn extra_redundancy(d: u64, r: u64) -> u64 {
    let t = d - 2;
    t - t / (r + 1)
}

fn check_divisible(n: u64, r: u64) -> Result<()> {
    if r < 1 {
        return Err(precondition("locality r must be >= 1"));
    }
    if n == 0 || !n.is_multiple_of(r + 1) {
        return Err(precondition(format!("(r+1) = {} must divide n = {n}", r + 1)));
    }
    Ok(())
}

/// Redundancy `n - k` forced on a code meeting the Singleton-type bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Redundancy {
    Value(u64),
    /// No dimension meets the bound with equality at these parameters.
    NotAttainable,
}

/// `n/(r+1) + d - 2 - floor((d-2)/(r+1))`, checked against the
/// Singleton-type bound: the value is reported only when `k = n - value`
/// meets the bound with equality.
pub fn optimal_redundancy(n: u64, d: u64, r: u64) -> Result<Redundancy> {
    check_divisible(n, r)?;
    if d < 2 {
        return Err(precondition("optimal_redundancy needs d >= 2"));
    }
    let value = n / (r + 1) + extra_redundancy(d, r);
    if value >= n {
        return Ok(Redundancy::NotAttainable);
    }
    let k = n - value;
    if singleton_type_bound(n, k, r)? == d as i64 {
        Ok(Redundancy::Value(value))
    } else {
        Ok(Redundancy::NotAttainable)
    }
}

/// Whether there are enough local groups to force disjoint recovery sets:
/// `n/(r+1) >= h(3r+2) + floor((d-2)/(r+1)) + 1`.
pub fn disjoint_condition(n: u64, d: u64, r: u64) -> Result<bool> {
    check_divisible(n, r)?;
    if d < 2 {
        return Err(precondition("disjoint_condition needs d >= 2"));
    }
    let h = extra_redundancy(d, r);
    Ok(n / (r + 1) > h * (3 * r + 2) + (d - 2) / (r + 1))
}

/// Upper bound on the redundancy when (r+1) need not divide n:
/// `ceil(n/(r+1)) + d - 2 - floor((d-2)/(r+1))`.
pub fn nondiv_redundancy_bound(n: u64, d: u64, r: u64) -> Result<u64> {
    if r < 1 || d < 2 {
        return Err(precondition("nondiv_redundancy_bound needs r >= 1 and d >= 2"));
    }
    Ok(ceil_div(n, r + 1) + extra_redundancy(d, r))
}

/// `q^(num/den)` as an exact rational when the root is exact, otherwise the
/// integer root rounded up so the result never under-reports.
fn rational_power_upper(q: u64, num: u64, den: u64) -> (BigRational, bool) {
    let g = num.gcd(&den);
    let (num, den) = (num / g, den / g);
    let base = BigUint::from(q).pow(num as u32);
    if den == 1 {
        return (BigRational::from_integer(base.into()), true);
    }
    let root = base.nth_root(den as u32);
    if BigUint::pow(&root, den as u32) == base {
        (BigRational::from_integer(root.into()), true)
    } else {
        (BigRational::from_integer((root + 1u32).into()), false)
    }
}

/// Exact length bound for optimal LRCs with d >= 5 (assumes (r+1) | n and
/// the disjoint-recovery condition). Writing d = 4*d1 + a with 1 <= a <= 4:
///
/// * a in {1,2}: `n <= (r+1)/r * (d-a)/(4(q-1)) * q^(4(d-2)/(d-a))`
/// * a in {3,4}: `n <= (r+1)/r * ((d-a)/(4(q-1)) * q^(4(d-3)/(d-a)) + 1)`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthBound {
    pub value: BigRational,
    /// False when the fractional power was rounded up.
    pub exact: bool,
    pub a: u64,
    /// Exponent of q as a reduced fraction (numerator, denominator).
    pub exponent: (u64, u64),
}

pub fn length_upper_bound(q: u64, d: u64, r: u64) -> Result<LengthBound> {
    if d <= 4 {
        return Err(precondition("no length bound for d <= 4: optimal LRCs of unbounded length exist"));
    }
    if q < 2 || r < 1 {
        return Err(precondition("length_upper_bound needs q >= 2 and r >= 1"));
    }
    let a = match d % 4 {
        0 => 4,
        x => x,
    };
    let span = d - a;
    let exp_num = if a <= 2 { 4 * (d - 2) } else { 4 * (d - 3) };
    let (power, exact) = rational_power_upper(q, exp_num, span);
    let coeff = BigRational::new(BigInt::from(span), BigInt::from(4 * (q - 1)));
    let mut inner = coeff * power;
    if a >= 3 {
        inner += BigRational::one();
    }
    let value = BigRational::new(BigInt::from(r + 1), BigInt::from(r)) * inner;
    let g = exp_num.gcd(&span);
    Ok(LengthBound { value, exact, a, exponent: (exp_num / g, span / g) })
}

/// Hamming (sphere-packing) bound: `q^k * sum_{i <= (d-1)/2} C(n,i)(q-1)^i <= q^n`.
pub fn hamming_bound_holds(n: u64, k: u64, d: u64, q: u64) -> Result<bool> {
    if k > n || d < 1 || q < 2 {
        return Err(precondition("hamming_bound_holds needs n >= k, d >= 1, q >= 2"));
    }
    let radius = (d - 1) / 2;
    let qb = BigUint::from(q);
    let mut ball = BigUint::zero();
    let mut binom = BigUint::one();
    let mut pw = BigUint::one();
    for i in 0..=radius.min(n) {
        if i > 0 {
            binom = binom * BigUint::from(n - i + 1) / BigUint::from(i);
            pw *= BigUint::from(q - 1);
        }
        ball += &binom * &pw;
    }
    Ok(qb.clone().pow(k as u32) * ball <= qb.pow(n as u32))
}

/// Distance bound for optimal LRCs, `q (r^2 + 2r + 3) / r`.
pub fn distance_upper_bound(q: u64, r: u64) -> Result<BigRational> {
    if r < 1 {
        return Err(precondition("distance_upper_bound needs r >= 1"));
    }
    Ok(BigRational::new(BigInt::from(q * (r * r + 2 * r + 3)), BigInt::from(r)))
}

/// Formats an exact rational: integers plainly, others with two decimals
/// (rounded half up) followed by the exact fraction.
pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        return x.to_integer().to_string();
    }
    let num = x.numer();
    let den = x.denom();
    let scaled = (num * BigInt::from(200) + den) / (den * BigInt::from(2));
    let neg = scaled.is_negative();
    let abs = scaled.abs();
    let (int, frac) = abs.div_rem(&BigInt::from(100));
    format!("{}{}.{:02}", if neg { "-" } else { "" }, int, frac.to_u64().unwrap_or(0))
}

/// Parameters for a [`BoundReport`]; `n` and `k` are optional.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundParams {
    pub q: u64,
    pub d: u64,
    pub r: u64,
    pub n: Option<u64>,
    pub k: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable(String),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail => write!(f, "fail"),
            Verdict::NotApplicable(why) => write!(f, "not applicable ({why})"),
        }
    }
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// One evaluated line of a report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundLine {
    pub name: &'static str,
    pub value: String,
    pub verdict: Verdict,
}

/// Every applicable bound evaluated at one parameter tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub params: BoundParams,
    pub singleton_rhs: Option<i64>,
    pub redundancy: Option<Redundancy>,
    pub redundancy_identity_holds: Option<bool>,
    pub nondiv_redundancy: Option<u64>,
    pub disjoint_condition_holds: Option<bool>,
    pub length_bound: Option<LengthBound>,
    pub distance_bound: BigRational,
    pub hamming_holds: Option<bool>,
    pub lines: Vec<BoundLine>,
}

impl BoundReport {
    pub fn evaluate(params: BoundParams) -> Result<BoundReport> {
        let BoundParams { q, d, r, n, k } = params;
        if q < 2 || d < 2 || r < 1 {
            return Err(precondition("bounds need q >= 2, d >= 2, r >= 1"));
        }
        if let (Some(n), Some(k)) = (n, k) {
            if k > n {
                return Err(precondition(format!("k = {k} exceeds n = {n}")));
            }
        }
        let mut lines = Vec::new();
        let na = |why: &str| Verdict::NotApplicable(why.to_string());

        let singleton_rhs = match (n, k) {
            (Some(n), Some(k)) if k >= 1 => Some(singleton_type_bound(n, k, r)?),
            _ => None,
        };
        lines.push(match singleton_rhs {
            Some(rhs) => {
                BoundLine { name: "singleton_type_bound", value: rhs.to_string(), verdict: verdict(d as i64 <= rhs) }
            }
            None => BoundLine { name: "singleton_type_bound", value: "-".into(), verdict: na("needs n and k >= 1") },
        });

        let divisible = n.is_some_and(|n| n > 0 && n % (r + 1) == 0);
        let redundancy = match n {
            Some(n) if divisible => Some(optimal_redundancy(n, d, r)?),
            _ => None,
        };
        let redundancy_identity_holds = match (redundancy, n, k) {
            (Some(Redundancy::Value(v)), Some(n), Some(k)) => Some(n - k == v),
            (Some(Redundancy::NotAttainable), Some(_), Some(_)) => Some(false),
            _ => None,
        };
        lines.push(match (redundancy, redundancy_identity_holds) {
            (Some(Redundancy::Value(v)), Some(h)) => {
                BoundLine { name: "optimal_redundancy", value: v.to_string(), verdict: verdict(h) }
            }
            (Some(Redundancy::Value(v)), None) => {
                BoundLine { name: "optimal_redundancy", value: v.to_string(), verdict: na("needs k") }
            }
            (Some(Redundancy::NotAttainable), h) => BoundLine {
                name: "optimal_redundancy",
                value: "not attainable".into(),
                verdict: h.map_or_else(|| na("needs k"), |_| Verdict::Fail),
            },
            (None, _) => {
                BoundLine { name: "optimal_redundancy", value: "-".into(), verdict: na("needs n divisible by r+1") }
            }
        });

        let nondiv_redundancy = n.map(|n| nondiv_redundancy_bound(n, d, r)).transpose()?;
        lines.push(match (nondiv_redundancy, n, k) {
            (Some(b), Some(n), Some(k)) => {
                BoundLine { name: "nondiv_redundancy_bound", value: b.to_string(), verdict: verdict(n - k <= b) }
            }
            (Some(b), _, _) => {
                BoundLine { name: "nondiv_redundancy_bound", value: b.to_string(), verdict: na("needs k") }
            }
            _ => BoundLine { name: "nondiv_redundancy_bound", value: "-".into(), verdict: na("needs n") },
        });

        let disjoint_condition_holds = match n {
            Some(n) if divisible => Some(disjoint_condition(n, d, r)?),
            _ => None,
        };
        lines.push(match disjoint_condition_holds {
            Some(h) => BoundLine {
                name: "disjoint_condition",
                value: h.to_string(),
                verdict: if h { Verdict::Pass } else { na("too few local groups; informational") },
            },
            None => {
                BoundLine { name: "disjoint_condition", value: "-".into(), verdict: na("needs n divisible by r+1") }
            }
        });

        let length_bound = if d >= 5 { Some(length_upper_bound(q, d, r)?) } else { None };
        lines.push(match (&length_bound, n) {
            (None, _) => {
                BoundLine { name: "length_upper_bound", value: "none".into(), verdict: na("unbounded per d≤4") }
            }
            (Some(lb), Some(n)) => BoundLine {
                name: "length_upper_bound",
                value: format_rational(&lb.value),
                verdict: if disjoint_condition_holds == Some(true) {
                    verdict(BigRational::from_integer(BigInt::from(n)) <= lb.value)
                } else {
                    na("needs (r+1) | n and the disjoint-recovery condition")
                },
            },
            (Some(lb), None) => {
                BoundLine { name: "length_upper_bound", value: format_rational(&lb.value), verdict: na("needs n") }
            }
        });

        let distance_bound = distance_upper_bound(q, r)?;
        lines.push(BoundLine {
            name: "distance_upper_bound",
            value: format_rational(&distance_bound),
            verdict: verdict(BigRational::from_integer(BigInt::from(d)) <= distance_bound),
        });

        let hamming_holds = match (n, k) {
            (Some(n), Some(k)) => Some(hamming_bound_holds(n, k, d, q)?),
            _ => None,
        };
        lines.push(match hamming_holds {
            Some(h) => BoundLine { name: "hamming_bound", value: h.to_string(), verdict: verdict(h) },
            None => BoundLine { name: "hamming_bound", value: "-".into(), verdict: na("needs n and k") },
        });

        Ok(BoundReport {
            params,
            singleton_rhs,
            redundancy,
            redundancy_identity_holds,
            nondiv_redundancy,
            disjoint_condition_holds,
            length_bound,
            distance_bound,
            hamming_holds,
            lines,
        })
    }

    /// True when no evaluated bound failed.
    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(|l| l.verdict != Verdict::Fail)
    }
}

/// One `name = value / verdict` line per bound; non-integral values are
/// shown as `name ≈ decimal (exact fraction) / verdict`.
impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        let opt = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
        writeln!(f, "params = q={} d={} r={} n={} k={}", p.q, p.d, p.r, opt(p.n), opt(p.k))?;
        for line in &self.lines {
            let exact = match line.name {
                "length_upper_bound" => self.length_bound.as_ref().map(|b| &b.value),
                "distance_upper_bound" => Some(&self.distance_bound),
                _ => None,
            };
            match exact {
                Some(x) if !x.is_integer() => writeln!(f, "{} ≈ {} ({}) / {}", line.name, line.value, x, line.verdict)?,
                _ => writeln!(f, "{} = {} / {}", line.name, line.value, line.verdict)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn singleton_examples() {
        assert_eq!(singleton_type_bound(12, 6, 3).unwrap(), 6);
        assert_eq!(singleton_type_bound(8, 4, 2).unwrap(), 4);
        for n in 5..20 {
            for k in 1..n {
                assert_eq!(singleton_type_bound(n, k, k).unwrap(), (n - k + 1) as i64);
            }
        }
        assert!(singleton_type_bound(5, 0, 1).is_err());
    }

    #[test]
    fn optimal_redundancy_examples() {
        assert_eq!(optimal_redundancy(12, 6, 3).unwrap(), Redundancy::Value(6));
        assert_eq!(optimal_redundancy(6, 3, 2).unwrap(), Redundancy::Value(3));
        assert_eq!(optimal_redundancy(8, 2, 3).unwrap(), Redundancy::Value(2));
        // d - 2 = r: the bound cannot be met
        assert_eq!(optimal_redundancy(8, 5, 3).unwrap(), Redundancy::NotAttainable);
        assert!(optimal_redundancy(7, 3, 2).is_err());
    }

    #[test]
    fn disjoint_condition_examples() {
        assert!(disjoint_condition(136, 5, 3).unwrap());
        assert!(!disjoint_condition(132, 5, 3).unwrap());
        for r in 1..6 {
            assert!(disjoint_condition(r + 1, 2, r).unwrap());
        }
        assert!(disjoint_condition(27, 3, 2).unwrap());
        assert!(!disjoint_condition(24, 3, 2).unwrap());
    }

    #[test]
    fn length_bound_examples() {
        let b = length_upper_bound(16, 5, 3).unwrap();
        assert_eq!(b.value, rat(4 * 4 * 4096, 3 * 60));
        assert!(b.exact);
        assert_eq!(format_rational(&b.value), "364.09");
        assert_eq!(b.exponent, (3, 1));
        let b8 = length_upper_bound(9, 8, 3).unwrap();
        assert_eq!(b8.a, 4);
        assert_eq!(b8.value, rat(4, 3) * (rat(59049, 8) + rat(1, 1)));
        assert_eq!(
            length_upper_bound(3, 5, 2).unwrap().value,
            rat(81, 4) // 20.25
        );
        assert!(length_upper_bound(5, 4, 2).is_err());
    }

    #[test]
    fn length_bound_d5_is_q_cubed_over_q_minus_one() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 32, 64] {
            for r in 1..8 {
                let b = length_upper_bound(q, 5, r).unwrap();
                let expected = rat((r + 1) as i64, r as i64) * rat((q * q * q) as i64, (q - 1) as i64);
                assert_eq!(b.value - expected, BigRational::zero());
            }
        }
    }

    #[test]
    fn fractional_exponent_rounds_up() {
        // d = 9: a = 1, exponent 28/8 = 7/2
        let b = length_upper_bound(3, 9, 2).unwrap();
        assert_eq!(b.exponent, (7, 2));
        assert!(!b.exact);
        // ceil(sqrt(3^7)) = ceil(46.76) = 47
        assert_eq!(b.value, rat(3, 2) * rat(8, 8) * rat(47, 1));
        let exact = length_upper_bound(4, 9, 2).unwrap();
        assert!(exact.exact); // 4^(7/2) = 128
        assert_eq!(exact.value, rat(3, 2) * rat(8, 12) * rat(128, 1));
    }

    #[test]
    fn hamming_examples() {
        assert!(hamming_bound_holds(7, 4, 3, 2).unwrap());
        assert!(!hamming_bound_holds(7, 5, 3, 2).unwrap());
        for q in 2..6 {
            for n in 1..10 {
                assert!(hamming_bound_holds(n, n, 1, q).unwrap());
            }
        }
    }

    #[test]
    fn distance_bound_examples() {
        assert_eq!(distance_upper_bound(4, 2).unwrap(), rat(22, 1));
        assert_eq!(distance_upper_bound(2, 1).unwrap(), rat(12, 1));
        let r = 3;
        let base = distance_upper_bound(1, r).unwrap();
        for q in 2..20 {
            assert_eq!(distance_upper_bound(q, r).unwrap(), base.clone() * rat(q as i64, 1));
        }
    }

    #[test]
    fn nondiv_examples() {
        assert_eq!(nondiv_redundancy_bound(13, 5, 3).unwrap(), 7);
        assert_eq!(nondiv_redundancy_bound(7, 3, 2).unwrap(), 4);
        assert_eq!(
            Redundancy::Value(nondiv_redundancy_bound(12, 6, 3).unwrap()),
            optimal_redundancy(12, 6, 3).unwrap()
        );
    }

    #[test]
    fn report_lines() {
        let rep = BoundReport::evaluate(BoundParams { q: 16, d: 5, r: 3, n: None, k: None }).unwrap();
        let text = rep.to_string();
        assert!(text.contains("length_upper_bound ≈ 364.09"), "{text}");
        let rep = BoundReport::evaluate(BoundParams { q: 4, d: 3, r: 2, n: None, k: None }).unwrap();
        let text = rep.to_string();
        assert!(text.contains("distance_upper_bound = 22"), "{text}");
        assert!(text.contains("not applicable (unbounded per d≤4)"), "{text}");
        let rep = BoundReport::evaluate(BoundParams { q: 3, d: 3, r: 2, n: Some(6), k: Some(3) }).unwrap();
        assert_eq!(rep.singleton_rhs, Some(3));
        assert_eq!(rep.redundancy_identity_holds, Some(true));
        assert!(rep.all_pass());
    }
}

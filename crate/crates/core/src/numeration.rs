//! Rational base numeration systems.
//!
//! A base `p/q` with `p > q >= 1` gives every word of integer digits a value
//!
//! ```text
//! a_n ... a_1 a_0  ↦  Σ (a_i / q) (p/q)^i
//! ```
//!
//! and every natural number a unique representation over `0..p` without
//! leading zero, computed right to left by the modified Euclidean division
//! `q·N_i = p·N_{i+1} + a_i`. When `q = 1` this is ordinary radix `p`.
//!
//! All arithmetic is exact and unbounded. Operations always use the reduced
//! fraction `p'/q'`; the unreduced pair is kept because rhythms need it.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The base `p/q` of a numeration system, together with its reduced form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalBase {
    p: u64,
    q: u64,
    p_reduced: u64,
    q_reduced: u64,
}

impl RationalBase {
    /// Accepts any `p > q >= 1`, coprime or not.
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if q == 0 || p <= q {
            return Err(Error::InvalidBase { p, q });
        }
        let g = p.gcd(&q);
        Ok(RationalBase {
            p,
            q,
            p_reduced: p / g,
            q_reduced: q / g,
        })
    }

    /// Like [`RationalBase::new`] but rejects non-coprime pairs.
    pub fn coprime(p: u64, q: u64) -> Result<Self> {
        let base = Self::new(p, q)?;
        if !base.is_reduced() {
            return Err(Error::NotCoprime { p, q });
        }
        Ok(base)
    }

    /// The integer base `p`, i.e. `p/1`.
    pub fn integer(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn p_reduced(&self) -> u64 {
        self.p_reduced
    }

    pub fn q_reduced(&self) -> u64 {
        self.q_reduced
    }

    pub fn is_reduced(&self) -> bool {
        self.p == self.p_reduced
    }

    pub fn is_integer_base(&self) -> bool {
        self.q_reduced == 1
    }

    /// The same base written as `p'/q'`.
    pub fn reduced(&self) -> RationalBase {
        RationalBase {
            p: self.p_reduced,
            q: self.q_reduced,
            ..*self
        }
    }

    /// Evaluates `w` in this base. See [`evaluate`].
    pub fn evaluate(&self, w: &DigitWord) -> ExactRational {
        evaluate(self, w)
    }

    /// Canonical representation of `n`. See [`represent`].
    pub fn represent<N: Into<BigUint>>(&self, n: N) -> DigitWord {
        represent(self, n)
    }
}

impl fmt::Display for RationalBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for RationalBase {
    type Err = Error;

    /// Parses `P/Q`, or a bare integer `P` for an integer base.
    fn from_str(s: &str) -> Result<Self> {
        let parse_err = || Error::Parse {
            what: "base",
            input: s.to_string(),
        };
        let s = s.trim();
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let p = p.parse::<u64>().map_err(|_| parse_err())?;
        let q = q.parse::<u64>().map_err(|_| parse_err())?;
        RationalBase::new(p, q)
    }
}

/// A finite word of signed integer digits, most significant digit first.
///
/// The empty word represents 0.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DigitWord(Vec<i64>);

impl DigitWord {
    pub fn new(digits: Vec<i64>) -> Self {
        DigitWord(digits)
    }

    pub fn empty() -> Self {
        DigitWord(Vec::new())
    }

    pub fn digits(&self) -> &[i64] {
        &self.0
    }

    pub fn into_digits(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, digit: i64) {
        self.0.push(digit);
    }

    pub fn extend_from(&mut self, other: &DigitWord) {
        self.0.extend_from_slice(&other.0);
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &DigitWord) -> DigitWord {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    /// `self` repeated `times` times.
    pub fn power(&self, times: usize) -> DigitWord {
        DigitWord(self.0.repeat(times))
    }

    /// True when every digit is a single decimal digit, so the word can be
    /// written without separators.
    pub fn is_compact(&self) -> bool {
        self.0.iter().all(|d| (0..=9).contains(d))
    }

    /// Comma-separated rendering, always unambiguous.
    pub fn to_comma_string(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        parts.join(",")
    }

    /// Radix order: shorter words first, then lexicographic by numeric digit.
    pub fn radix_cmp(&self, other: &DigitWord) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl From<Vec<i64>> for DigitWord {
    fn from(digits: Vec<i64>) -> Self {
        DigitWord(digits)
    }
}

impl From<&[i64]> for DigitWord {
    fn from(digits: &[i64]) -> Self {
        DigitWord(digits.to_vec())
    }
}

impl FromIterator<i64> for DigitWord {
    fn from_iter<I: IntoIterator<Item = i64>>(iter: I) -> Self {
        DigitWord(iter.into_iter().collect())
    }
}

impl fmt::Display for DigitWord {
    /// `ε` for the empty word, a bare digit string when every digit is in
    /// `0..=9`, comma-separated digits otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("ε");
        }
        if self.is_compact() {
            for d in &self.0 {
                write!(f, "{d}")?;
            }
            Ok(())
        } else {
            f.write_str(&self.to_comma_string())
        }
    }
}

impl FromStr for DigitWord {
    type Err = Error;

    /// Accepts `2,1,0`, `-2,0,2`, the shorthand `210`, and `ε` or the empty
    /// string for the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_err = || Error::Parse {
            what: "digit word",
            input: s.to_string(),
        };
        if s.is_empty() || s == "ε" {
            return Ok(DigitWord::empty());
        }
        if s.contains(',') || s.starts_with('-') || s.starts_with('+') {
            return s
                .split(',')
                .map(|part| part.trim().parse::<i64>().map_err(|_| parse_err()))
                .collect();
        }
        if s.bytes().all(|b| b.is_ascii_digit()) {
            return Ok(s.bytes().map(|b| i64::from(b - b'0')).collect());
        }
        Err(parse_err())
    }
}

/// An exact rational number, always kept in lowest terms with a positive
/// denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numerator: BigInt, denominator: BigInt) -> Self {
        ExactRational(BigRational::new(numerator, denominator))
    }

    pub fn from_integer<N: Into<BigInt>>(n: N) -> Self {
        ExactRational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    /// The value as a natural number, if it is one.
    pub fn to_natural(&self) -> Option<BigUint> {
        self.to_integer().and_then(|n| n.to_biguint())
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.to_integer().and_then(|n| n.to_u64())
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Always `num/den`, even for integers.
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.numerator(), self.denominator())
    }
}

impl fmt::Display for ExactRational {
    /// Integers print bare, other values as `num/den`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "{}/{}", self.numerator(), self.denominator())
        }
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = || Error::Parse {
            what: "rational",
            input: s.to_string(),
        };
        let s = s.trim();
        let (n, d) = s.split_once('/').unwrap_or((s, "1"));
        let n: BigInt = n.trim().parse().map_err(|_| parse_err())?;
        let d: BigInt = d.trim().parse().map_err(|_| parse_err())?;
        if d.is_zero() {
            return Err(parse_err());
        }
        Ok(ExactRational::new(n, d))
    }
}

/// Serialized as the string `num/den`.
impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_fraction_string())
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Value of `w` in base `p'/q'`: `Σ (a_i/q') (p'/q')^i`.
///
/// Any integer digits are accepted, negative ones included.
pub fn evaluate(base: &RationalBase, w: &DigitWord) -> ExactRational {
    let p = BigInt::from(base.p_reduced);
    let q = BigInt::from(base.q_reduced);
    // Horner with a common denominator: after k digits the value is
    // numerator / q^k.
    let mut numerator = BigInt::zero();
    let mut q_pow = BigInt::one();
    for &digit in w.digits() {
        numerator = numerator * &p + BigInt::from(digit) * &q_pow;
        q_pow *= &q;
    }
    ExactRational::new(numerator, q_pow)
}

/// The canonical representation of `n` in base `p'/q'`: digits in `0..p'`,
/// no leading zero, `ε` for 0.
pub fn represent<N: Into<BigUint>>(base: &RationalBase, n: N) -> DigitWord {
    let p = BigUint::from(base.p_reduced);
    let q = BigUint::from(base.q_reduced);
    let mut current: BigUint = n.into();
    let mut digits = Vec::new();
    while !current.is_zero() {
        let (next, digit) = (&current * &q).div_rem(&p);
        digits.push(digit.to_i64().expect("digit is below p"));
        current = next;
    }
    digits.reverse();
    DigitWord(digits)
}

/// The digit `a` such that `n --a--> m` in the representation tree of base
/// `p'/q'`, i.e. `q'm - p'n` when it lies in `0..p'`.
pub fn arc_digit(base: &RationalBase, n: u64, m: u64) -> Option<i64> {
    let a = i128::from(base.q_reduced) * i128::from(m) - i128::from(base.p_reduced) * i128::from(n);
    (0..i128::from(base.p_reduced))
        .contains(&a)
        .then_some(a as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn base(p: u64, q: u64) -> RationalBase {
        RationalBase::new(p, q).unwrap()
    }

    fn word(digits: &[i64]) -> DigitWord {
        DigitWord::from(digits)
    }

    /// Direct sum of `(a_i/q)(p/q)^i`, term by term.
    fn evaluate_by_sum(p: i64, q: i64, w: &[i64]) -> BigRational {
        let z = BigRational::new(p.into(), q.into());
        let mut total = BigRational::zero();
        for (i, &a) in w.iter().rev().enumerate() {
            let term = BigRational::new(a.into(), q.into()) * num_traits::pow(z.clone(), i);
            total += term;
        }
        total
    }

    #[test]
    fn base_construction() {
        assert!(RationalBase::new(3, 3).is_err());
        assert!(RationalBase::new(2, 3).is_err());
        assert!(RationalBase::new(3, 0).is_err());
        let b = base(10, 6);
        assert_eq!((b.p_reduced(), b.q_reduced()), (5, 3));
        assert!(!b.is_integer_base());
        assert!(base(6, 3).is_integer_base());
        assert_eq!(RationalBase::coprime(10, 6), Err(Error::NotCoprime { p: 10, q: 6 }));
        assert_eq!("3/2".parse::<RationalBase>().unwrap(), base(3, 2));
        assert_eq!("5".parse::<RationalBase>().unwrap(), base(5, 1));
        assert!("3/".parse::<RationalBase>().is_err());
    }

    #[test]
    fn evaluate_examples() {
        let b = base(3, 2);
        assert_eq!(evaluate(&b, &DigitWord::empty()), ExactRational::zero());
        assert_eq!(evaluate(&b, &word(&[2, 1])), ExactRational::from_integer(2));
        let v = evaluate(&b, &word(&[2, 2]));
        assert_eq!(v, ExactRational::new(5.into(), 2.into()));
        assert!(!v.is_integer());
        assert_eq!(v.to_string(), "5/2");
    }

    #[test]
    fn evaluate_uses_reduced_pair() {
        // 10/6 behaves as 5/3.
        let w = word(&[3, 1, -2, 4]);
        assert_eq!(evaluate(&base(10, 6), &w), evaluate(&base(5, 3), &w));
    }

    #[test]
    fn represent_examples() {
        let b = base(3, 2);
        assert_eq!(represent(&b, 0u32), DigitWord::empty());
        assert_eq!(represent(&b, 5u32), word(&[2, 1, 0, 1]));
        assert_eq!(represent(&base(2, 1), 6u32), word(&[1, 1, 0]));
    }

    #[test]
    fn arc_digit_examples() {
        let b = base(3, 2);
        assert_eq!(arc_digit(&b, 1, 2), Some(1));
        assert_eq!(arc_digit(&b, 1, 3), None);
        assert_eq!(arc_digit(&b, 0, 0), Some(0));
        assert_eq!(arc_digit(&b, 2, 1), None);
    }

    #[test]
    fn right_extendable() {
        for (p, q) in [(3, 2), (5, 3), (7, 4), (4, 1), (10, 4)] {
            let b = base(p, q);
            let (pr, qr) = (b.p_reduced(), b.q_reduced());
            for n in 0..500u64 {
                let found = (0..pr).any(|a| {
                    (n * pr + a) % qr == 0 && arc_digit(&b, n, (n * pr + a) / qr) == Some(a as i64)
                });
                assert!(found, "{n} has no extension in base {b}");
            }
        }
    }

    #[test]
    fn integer_base_matches_radix() {
        for p in 2..=10u64 {
            let b = base(p, 1);
            for n in 0..2000u64 {
                let mut expected = Vec::new();
                let mut k = n;
                while k > 0 {
                    expected.push((k % p) as i64);
                    k /= p;
                }
                expected.reverse();
                assert_eq!(represent(&b, n).into_digits(), expected);
            }
        }
    }

    #[test]
    fn big_values_round_trip() {
        let b = base(7, 4);
        let n: BigUint = "123456789012345678901234567890".parse().unwrap();
        let w = represent(&b, n.clone());
        assert_eq!(evaluate(&b, &w).to_natural(), Some(n));
    }

    #[test]
    fn word_text_formats() {
        assert_eq!("2,1,0".parse::<DigitWord>().unwrap(), word(&[2, 1, 0]));
        assert_eq!("210".parse::<DigitWord>().unwrap(), word(&[2, 1, 0]));
        assert_eq!("-2,0,2".parse::<DigitWord>().unwrap(), word(&[-2, 0, 2]));
        assert_eq!("-2".parse::<DigitWord>().unwrap(), word(&[-2]));
        assert_eq!("ε".parse::<DigitWord>().unwrap(), DigitWord::empty());
        assert_eq!("".parse::<DigitWord>().unwrap(), DigitWord::empty());
        assert!("2a".parse::<DigitWord>().is_err());
        assert!("1,,2".parse::<DigitWord>().is_err());
        assert_eq!(word(&[2, 1, 0, 1]).to_string(), "2101");
        assert_eq!(word(&[0, 3, 10]).to_string(), "0,3,10");
        assert_eq!(word(&[-2, 0]).to_string(), "-2,0");
        assert_eq!(DigitWord::empty().to_string(), "ε");
    }

    #[test]
    fn radix_order() {
        assert_eq!(word(&[9]).radix_cmp(&word(&[1, 0])), Ordering::Less);
        assert_eq!(word(&[-2, 5]).radix_cmp(&word(&[1, 0])), Ordering::Less);
        assert_eq!(word(&[1, 2]).radix_cmp(&word(&[1, 2])), Ordering::Equal);
    }

    fn any_base() -> impl Strategy<Value = RationalBase> {
        (1u64..12, 1u64..12).prop_map(|(q, extra)| base(q + extra, q))
    }

    proptest! {
        #[test]
        fn round_trip(b in any_base(), n in 0u64..1_000_000) {
            let w = represent(&b, n);
            prop_assert_eq!(evaluate(&b, &w).to_u64(), Some(n));
            if n > 0 {
                prop_assert_ne!(w.digits()[0], 0);
            }
            prop_assert!(w.digits().iter().all(|&d| (0..b.p_reduced() as i64).contains(&d)));
        }

        #[test]
        fn prefix_closed(b in any_base(), n in 1u64..1_000_000) {
            let w = represent(&b, n);
            let prefix = DigitWord::from(&w.digits()[..w.len() - 1]);
            let k = evaluate(&b, &prefix).to_u64().expect("prefix is a natural number");
            prop_assert!(k < n);
            prop_assert_eq!(represent(&b, k), prefix);
        }

        #[test]
        fn evaluate_matches_direct_sum(
            (p, q) in (1i64..9, 1i64..9).prop_map(|(q, e)| (q + e, q)),
            w in proptest::collection::vec(-20i64..20, 0..12),
        ) {
            let b = base(p as u64, q as u64);
            let g = p.gcd(&q);
            let expected = evaluate_by_sum(p / g, q / g, &w);
            prop_assert_eq!(evaluate(&b, &DigitWord::new(w)).0, expected);
        }
    }
}

//! Exact sparse polynomials in the symbolic weight base `w`.
//!
//! Every edge weight and every crossing total in the toolkit is an
//! [`OmegaPoly`]: a finite sum of rational multiples of powers of `w`.
//! Comparison "at large `w`" is lexicographic by descending exponent, which
//! agrees with the numeric order once `w` exceeds a Cauchy-style bound.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Sparse polynomial in `w` with exact rational coefficients.
///
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct OmegaPoly {
    terms: BTreeMap<u32, BigRational>,
}

pub(crate) fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl OmegaPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(BigRational::from_integer(c.into()), 0)
    }

    /// `w^exp`.
    pub fn pow(exp: u32) -> Self {
        Self::monomial(BigRational::one(), exp)
    }

    /// `(num/den) * w^exp`.
    pub fn term(num: i64, den: i64, exp: u32) -> Self {
        Self::monomial(ratio(num, den), exp)
    }

    pub fn monomial(coef: BigRational, exp: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(exp, coef);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, BigRational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: u32, coef: BigRational) {
        if coef.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigRational::zero);
        *slot += coef;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `w^exp` (zero when absent).
    pub fn coeff(&self, exp: u32) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Terms in descending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigRational)> + '_ {
        self.terms.iter().rev().map(|(e, c)| (*e, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.terms.values().next_back()
    }

    /// Integer value if the polynomial is a constant integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                (*e == 0 && c.is_integer()).then(|| c.to_integer())
            }
            _ => None,
        }
    }

    /// Part of the polynomial with exponents `>= min_exp`.
    pub fn truncate_below(&self, min_exp: u32) -> Self {
        Self {
            terms: self.terms.range(min_exp..).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    /// Substitute `w := base` (a polynomial), used for `w := ω^4` style rewrites.
    pub fn compose_pow(&self, factor: u32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e * factor, c.clone())).collect(),
        }
    }

    /// Exact value at `w = omega`.
    pub fn eval(&self, omega: &BigInt) -> BigRational {
        let mut acc = BigRational::zero();
        let mut last = 0u32;
        let mut power = BigInt::one();
        for (e, c) in &self.terms {
            power *= num_traits::pow(omega.clone(), (*e - last) as usize);
            last = *e;
            acc += c * BigRational::from_integer(power.clone());
        }
        acc
    }

    pub fn eval_u64(&self, omega: u64) -> BigRational {
        self.eval(&BigInt::from(omega))
    }

    /// Order for all sufficiently large `w`.
    pub fn cmp_large_omega(&self, other: &Self) -> Ordering {
        let diff = self - other;
        match diff.leading_coefficient() {
            None => Ordering::Equal,
            Some(c) if c.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    /// Positive at large `w`.
    pub fn is_positive(&self) -> bool {
        self.leading_coefficient().is_some_and(|c| c.is_positive())
    }

    /// A `w0` such that the sign of `self(w)` equals the sign of the leading
    /// coefficient for every `w > w0` (Cauchy bound `1 + max|c_i / c_lead|`).
    pub fn sign_bound(&self) -> BigInt {
        let Some(lead) = self.leading_coefficient() else {
            return BigInt::zero();
        };
        let lead = lead.abs();
        let mut best = BigRational::zero();
        for (_, c) in self.terms().skip(1) {
            let q = c.abs() / &lead;
            if q > best {
                best = q;
            }
        }
        (best + BigRational::one()).ceil().to_integer()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Lowest common denominator of all coefficients.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl PartialOrd for OmegaPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order = order at large `w`.
impl Ord for OmegaPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_large_omega(other)
    }
}

impl From<i64> for OmegaPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl Add<&OmegaPoly> for &OmegaPoly {
    type Output = OmegaPoly;
    fn add(self, rhs: &OmegaPoly) -> OmegaPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for OmegaPoly {
    type Output = OmegaPoly;
    fn add(mut self, rhs: OmegaPoly) -> OmegaPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&OmegaPoly> for OmegaPoly {
    fn add_assign(&mut self, rhs: &OmegaPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl AddAssign for OmegaPoly {
    fn add_assign(&mut self, rhs: OmegaPoly) {
        *self += &rhs;
    }
}

impl Neg for &OmegaPoly {
    type Output = OmegaPoly;
    fn neg(self) -> OmegaPoly {
        OmegaPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for OmegaPoly {
    type Output = OmegaPoly;
    fn neg(self) -> OmegaPoly {
        -&self
    }
}

impl Sub<&OmegaPoly> for &OmegaPoly {
    type Output = OmegaPoly;
    fn sub(self, rhs: &OmegaPoly) -> OmegaPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for OmegaPoly {
    type Output = OmegaPoly;
    fn sub(mut self, rhs: OmegaPoly) -> OmegaPoly {
        self -= &rhs;
        self
    }
}

impl SubAssign<&OmegaPoly> for OmegaPoly {
    fn sub_assign(&mut self, rhs: &OmegaPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl Mul<&OmegaPoly> for &OmegaPoly {
    type Output = OmegaPoly;
    fn mul(self, rhs: &OmegaPoly) -> OmegaPoly {
        let mut out = OmegaPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for OmegaPoly {
    type Output = OmegaPoly;
    fn mul(self, rhs: OmegaPoly) -> OmegaPoly {
        &self * &rhs
    }
}

impl Sum for OmegaPoly {
    fn sum<I: Iterator<Item = OmegaPoly>>(iter: I) -> Self {
        iter.fold(OmegaPoly::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a OmegaPoly> for OmegaPoly {
    fn sum<I: Iterator<Item = &'a OmegaPoly>>(iter: I) -> Self {
        let mut acc = OmegaPoly::zero();
        for p in iter {
            acc += p;
        }
        acc
    }
}

impl fmt::Display for OmegaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let unit = mag.is_one();
            match (e, unit) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) if mag.is_integer() => write!(f, "{mag}*")?,
                (_, false) => write!(f, "({mag})*")?,
            }
            match e {
                0 => {}
                1 => write!(f, "w")?,
                _ => write!(f, "w^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for OmegaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OmegaPoly({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    terms: Vec<(u32, i64, i64)>,
}

impl Serialize for OmegaPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::Error as _;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in self.terms() {
            let num = c.numer().to_i64().ok_or_else(|| S::Error::custom("coefficient overflows i64"))?;
            let den = c.denom().to_i64().ok_or_else(|| S::Error::custom("coefficient overflows i64"))?;
            terms.push((e, num, den));
        }
        PolyRepr { terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for OmegaPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        let mut p = OmegaPoly::zero();
        for (e, num, den) in repr.terms {
            if den == 0 {
                return Err(D::Error::custom("zero denominator"));
            }
            p.add_term(e, ratio(num, den));
        }
        Ok(p)
    }
}

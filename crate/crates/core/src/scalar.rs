//! Exact coefficient arithmetic: Gaussian rationals and Laurent polynomials
//! in the formal deformation parameter `theta`.
//!
//! Every quantity in the engine is built over [`Scalar`], a finite sum of
//! `theta^n` terms (n may be negative) with [`GaussianRational`] coefficients.
//! There is no floating point anywhere; equality is structural after
//! normalization (no stored zero terms, rationals in lowest terms).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("divisor must be a single theta-monomial, got {0} terms")]
    NotMonomial(usize),
    #[error("invalid rational literal `{0}`")]
    BadRational(String),
}

/// A complex number with rational real and imaginary parts.
///
/// `num_rational::BigRational` keeps both parts in lowest terms with a
/// positive denominator, so structural equality is canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        GaussianRational::new(BigRational::one(), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// Exact rational `num/den`; panics on `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussianRational::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn from_rational(r: BigRational) -> Self {
        GaussianRational::new(r, BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// Squared modulus `re^2 + im^2` as a rational.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact multiplicative inverse.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.norm_sq();
        Ok(GaussianRational::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self * &other.inv()?)
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    /// Textual form `a/b + c/d*i`, collapsing zero parts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let im_part = |im: &BigRational| -> String {
            if im.is_one() {
                "i".to_string()
            } else if (-im).is_one() {
                "-i".to_string()
            } else {
                format!("{}*i", fmt_rational(im))
            }
        };
        if self.im.is_zero() {
            write!(f, "{}", fmt_rational(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}", im_part(&self.im))
        } else if self.im.is_negative() {
            write!(f, "{} - {}", fmt_rational(&self.re), im_part(&-self.im.clone()))
        } else {
            write!(f, "{} + {}", fmt_rational(&self.re), im_part(&self.im))
        }
    }
}

/// Parses `p`, `-p`, or `p/q` into a real Gaussian rational.
impl FromStr for GaussianRational {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ScalarError::BadRational(s.to_string());
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(GaussianRational::from_rational(BigRational::new(n, d)))
            }
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(GaussianRational::from_rational(BigRational::from_integer(n)))
            }
        }
    }
}

/// Laurent polynomial in `theta` over the Gaussian rationals.
///
/// `terms` maps the theta exponent (possibly negative) to a nonzero
/// coefficient; the empty map is zero. All operations normalize, so derived
/// equality is exact structural equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Scalar {
    terms: BTreeMap<i64, GaussianRational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Scalar::gaussian(GaussianRational::one())
    }

    /// The imaginary unit as a scalar.
    pub fn i() -> Self {
        Scalar::gaussian(GaussianRational::i())
    }

    /// `theta^n` with unit coefficient.
    pub fn theta_pow(n: i64) -> Self {
        Scalar::monomial(n, GaussianRational::one())
    }

    /// `i * theta`, the ubiquitous commutator prefactor.
    pub fn i_theta() -> Self {
        Scalar::monomial(1, GaussianRational::i())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::gaussian(GaussianRational::from_int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::gaussian(GaussianRational::from_ratio(num, den))
    }

    pub fn gaussian(g: GaussianRational) -> Self {
        Scalar::monomial(0, g)
    }

    /// Single term `g * theta^n`.
    pub fn monomial(n: i64, g: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !g.is_zero() {
            terms.insert(n, g);
        }
        Scalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map(|g| g.is_one()).unwrap_or(false)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &GaussianRational)> {
        self.terms.iter()
    }

    /// Coefficient of `theta^n` (zero when absent).
    pub fn coeff(&self, n: i64) -> GaussianRational {
        self.terms.get(&n).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn min_theta_power(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_theta_power(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn insert_add(terms: &mut BTreeMap<i64, GaussianRational>, n: i64, g: GaussianRational) {
        if g.is_zero() {
            return;
        }
        match terms.get_mut(&n) {
            Some(c) => {
                let sum = &*c + &g;
                if sum.is_zero() {
                    terms.remove(&n);
                } else {
                    *c = sum;
                }
            }
            None => {
                terms.insert(n, g);
            }
        }
    }

    /// Shift every theta exponent by `n`.
    pub fn mul_theta_pow(&self, n: i64) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(k, g)| (k + n, g.clone())).collect(),
        }
    }

    pub fn scale(&self, g: &GaussianRational) -> Scalar {
        if g.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(k, c)| (*k, c * g)).collect(),
        }
    }

    /// Keep only the `theta^0` part (the classical limit of a coefficient).
    pub fn truncate_to_constant(&self) -> Scalar {
        Scalar::monomial(0, self.coeff(0))
    }

    /// True when some term has an odd (resp. even) theta exponent.
    pub fn has_theta_parity(&self, odd: bool) -> bool {
        self.terms.keys().any(|k| (k.rem_euclid(2) == 1) == odd)
    }

    /// Exact division by a single-term scalar.
    pub fn divide_monomial(&self, divisor: &Scalar) -> Result<Scalar, ScalarError> {
        if divisor.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if divisor.terms.len() != 1 {
            return Err(ScalarError::NotMonomial(divisor.terms.len()));
        }
        let (n, g) = divisor.terms.iter().next().unwrap();
        let ginv = g.inv()?;
        Ok(Scalar {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k - n, c * &ginv))
                .collect(),
        })
    }

    /// Inverse of a single-term scalar.
    pub fn monomial_inverse(&self) -> Result<Scalar, ScalarError> {
        Scalar::one().divide_monomial(self)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: Self) -> Scalar {
        let mut terms = self.terms.clone();
        for (n, g) in &rhs.terms {
            Scalar::insert_add(&mut terms, *n, g.clone());
        }
        Scalar { terms }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Self) -> Scalar {
        self + &-rhs
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Self) -> Scalar {
        let mut terms = BTreeMap::new();
        for (n1, g1) in &self.terms {
            for (n2, g2) in &rhs.terms {
                Scalar::insert_add(&mut terms, n1 + n2, g1 * g2);
            }
        }
        Scalar { terms }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(n, g)| (*n, -g)).collect(),
        }
    }
}

impl fmt::Display for Scalar {
    /// Terms in ascending theta power, e.g. `1/2*i + 2*theta^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (n, g) in &self.terms {
            let txt = term_text(g, *n);
            if first {
                write!(f, "{}", txt)?;
                first = false;
            } else if let Some(rest) = txt.strip_prefix('-') {
                write!(f, " - {}", rest)?;
            } else {
                write!(f, " + {}", txt)?;
            }
        }
        Ok(())
    }
}

/// Renders `g * theta^n` as a product string, omitting unit factors.
pub(crate) fn term_text(g: &GaussianRational, n: i64) -> String {
    let theta = match n {
        0 => None,
        1 => Some("theta".to_string()),
        _ => Some(format!("theta^{}", n)),
    };
    let coeff = if !g.re.is_zero() && !g.im.is_zero() {
        // Mixed coefficients are parenthesized when joined to other factors,
        // so the term reads back as a product.
        if n == 0 {
            Some(format!("{}", g))
        } else {
            Some(format!("({})", g))
        }
    } else if g.is_one() {
        None
    } else if (-g).is_one() {
        Some("-1".to_string())
    } else {
        Some(format!("{}", g))
    };
    match (coeff, theta) {
        (None, None) => "1".to_string(),
        (None, Some(t)) => t,
        (Some(c), None) => c,
        (Some(c), Some(t)) => {
            if c == "-1" {
                format!("-{}", t)
            } else {
                format!("{}*{}", c, t)
            }
        }
    }
}

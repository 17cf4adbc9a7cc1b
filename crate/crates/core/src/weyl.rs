//! The polynomial sector of the four-dimensional Moyal algebra.
//!
//! [`WeylElement`] is a sparse polynomial in `q1, q2, p1, p2` over [`Scalar`].
//! On polynomials the theta-expansion of the star product terminates, so
//! [`WeylElement::star`] is exact: it sums the bidifferential operators
//! `D_k` built from the symplectic pairing of `(q_a, p_a)` with multinomial
//! weights and prefactor `(i*theta/2)^k / k!`.
//!
//! [`WeylElement::star_recursive`] is an independent route to the same
//! product. It only uses the one-generator rules
//! `q_a * f = q_a f + (i theta/2) df/dp_a` (and the `p_a` analogues),
//! peeling one generator at a time, and exists purely as a cross-check for
//! the bidifferential expansion.

use crate::scalar::{GaussianRational, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Phase-space coordinate, in the fixed order `q1, q2, p1, p2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    Q1,
    Q2,
    P1,
    P2,
}

pub const VARS: [Var; 4] = [Var::Q1, Var::Q2, Var::P1, Var::P2];

impl Var {
    pub fn index(self) -> usize {
        match self {
            Var::Q1 => 0,
            Var::Q2 => 1,
            Var::P1 => 2,
            Var::P2 => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Q1 => "q1",
            Var::Q2 => "q2",
            Var::P1 => "p1",
            Var::P2 => "p2",
        }
    }

    /// Symplectic partner: `q_a <-> p_a`.
    pub fn conjugate(self) -> Var {
        match self {
            Var::Q1 => Var::P1,
            Var::P1 => Var::Q1,
            Var::Q2 => Var::P2,
            Var::P2 => Var::Q2,
        }
    }

    /// Sign in the one-generator rule `x * f = x f + s (i theta/2) df/dconj(x)`.
    fn left_rule_sign(self) -> i64 {
        match self {
            Var::Q1 | Var::Q2 => 1,
            Var::P1 | Var::P2 => -1,
        }
    }
}

/// Exponent multi-index for `(q1, q2, p1, p2)`.
///
/// Ordering is graded lexicographic, which fixes the canonical term order
/// for printing and equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mono(pub [u8; 4]);

impl Mono {
    pub const ONE: Mono = Mono([0, 0, 0, 0]);

    pub fn var(v: Var) -> Mono {
        let mut e = [0u8; 4];
        e[v.index()] = 1;
        Mono(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut e = [0u8; 4];
        for k in 0..4 {
            e[k] = self.0[k]
                .checked_add(other.0[k])
                .expect("monomial exponent overflow");
        }
        Mono(e)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), self.0).cmp(&(other.degree(), other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in the four phase-space coordinates over [`Scalar`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeylElement {
    terms: BTreeMap<Mono, Scalar>,
}

impl WeylElement {
    pub fn zero() -> Self {
        WeylElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        WeylElement::constant(Scalar::one())
    }

    pub fn constant(s: Scalar) -> Self {
        WeylElement::monomial(Mono::ONE, s)
    }

    pub fn var(v: Var) -> Self {
        WeylElement::monomial(Mono::var(v), Scalar::one())
    }

    pub fn monomial(m: Mono, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        WeylElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Term with the graded-lex largest monomial.
    pub fn leading_term(&self) -> Option<(&Mono, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// The coefficient of the constant monomial.
    pub fn constant_part(&self) -> Scalar {
        self.terms.get(&Mono::ONE).cloned().unwrap_or_else(Scalar::zero)
    }

    /// `Some(c)` when the element is `c * 1` (including zero).
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Mono::ONE).cloned(),
            _ => None,
        }
    }

    fn insert_add(terms: &mut BTreeMap<Mono, Scalar>, m: Mono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, s: &Scalar) -> WeylElement {
        if s.is_zero() {
            return WeylElement::zero();
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            Self::insert_add(&mut terms, *m, c * s);
        }
        WeylElement { terms }
    }

    pub fn scale_ratio(&self, num: i64, den: i64) -> WeylElement {
        self.scale(&Scalar::from_ratio(num, den))
    }

    /// Exact formal derivative with respect to one coordinate.
    pub fn partial(&self, v: Var) -> WeylElement {
        let idx = v.index();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut reduced = *m;
            reduced.0[idx] = e - 1;
            Self::insert_add(&mut terms, reduced, c.scale(&GaussianRational::from_int(e as i64)));
        }
        WeylElement { terms }
    }

    /// Commutative (pointwise) product.
    pub fn mul_pointwise(&self, other: &WeylElement) -> WeylElement {
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                Self::insert_add(&mut terms, m1.mul(m2), c1 * c2);
            }
        }
        WeylElement { terms }
    }

    /// Commutative power.
    pub fn pow_pointwise(&self, n: u32) -> WeylElement {
        let mut acc = WeylElement::one();
        for _ in 0..n {
            acc = acc.mul_pointwise(self);
        }
        acc
    }

    /// Classical Poisson bracket for `omega = dq_a ^ dp_a`.
    pub fn poisson(&self, other: &WeylElement) -> WeylElement {
        let mut acc = WeylElement::zero();
        for (q, p) in [(Var::Q1, Var::P1), (Var::Q2, Var::P2)] {
            acc = &acc + &self.partial(q).mul_pointwise(&other.partial(p));
            acc = &acc - &self.partial(p).mul_pointwise(&other.partial(q));
        }
        acc
    }

    /// Exact Moyal star product via the terminating bidifferential expansion.
    pub fn star(&self, other: &WeylElement) -> WeylElement {
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                star_monomials(m1, m2, &(c1 * c2), &mut terms);
            }
        }
        WeylElement { terms }
    }

    /// Star power `f * f * ... * f` (n factors).
    pub fn star_pow(&self, n: u32) -> WeylElement {
        let mut acc = WeylElement::one();
        for _ in 0..n {
            acc = acc.star(self);
        }
        acc
    }

    /// Star commutator `[f, g] = f*g - g*f`.
    pub fn commutator(&self, other: &WeylElement) -> WeylElement {
        &self.star(other) - &other.star(self)
    }

    /// Star anticommutator `f*g + g*f`.
    pub fn anticommutator(&self, other: &WeylElement) -> WeylElement {
        &self.star(other) + &other.star(self)
    }

    /// Star product by repeatedly peeling one generator off the left factor.
    ///
    /// For a coordinate `x` with symplectic partner `y`,
    /// `x * h = x h + s (i theta/2) dh/dy` and
    /// `(x m) * g = x * (m * g) - s (i theta/2) (dm/dy) * g`,
    /// which recurses on strictly smaller left degree. Shares no code with
    /// the bidifferential route in [`WeylElement::star`].
    pub fn star_recursive(&self, other: &WeylElement) -> WeylElement {
        let mut acc = WeylElement::zero();
        for (m, c) in &self.terms {
            acc = &acc + &star_recursive_mono(m, other).scale(c);
        }
        acc
    }

    /// Drops all positive theta powers in every coefficient: the classical
    /// limit of a star product.
    pub fn truncate_theta_zero(&self) -> WeylElement {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            Self::insert_add(&mut terms, *m, c.truncate_to_constant());
        }
        WeylElement { terms }
    }

    /// True when some coefficient carries a theta power of the given parity.
    pub fn has_theta_parity(&self, odd: bool) -> bool {
        self.terms.values().any(|c| c.has_theta_parity(odd))
    }

    /// Largest theta exponent appearing in any coefficient.
    pub fn max_theta_power(&self) -> Option<i64> {
        self.terms.values().filter_map(|c| c.max_theta_power()).max()
    }
}

fn falling(e: u8, j: u8) -> BigInt {
    let mut acc = BigInt::one();
    for k in 0..j {
        acc *= BigInt::from((e - k) as u64);
    }
    acc
}

fn factorial(j: u8) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=j {
        acc *= BigInt::from(k as u64);
    }
    acc
}

/// `i^k` as a Gaussian rational.
fn i_pow(k: u32) -> GaussianRational {
    match k % 4 {
        0 => GaussianRational::one(),
        1 => GaussianRational::i(),
        2 => GaussianRational::from_int(-1),
        _ => -&GaussianRational::i(),
    }
}

/// Accumulates `c * (m1 star m2)` into `terms`.
///
/// The contraction multi-index `(j1, j2, j3, j4)` counts how many times each
/// of the four symplectic pairings `dq1 (x) dp1`, `-dp1 (x) dq1`,
/// `dq2 (x) dp2`, `-dp2 (x) dq2` acts; exponent bounds make the sum finite.
fn star_monomials(m1: &Mono, m2: &Mono, c: &Scalar, terms: &mut BTreeMap<Mono, Scalar>) {
    // Index layout per Var::index: 0 = q1, 1 = q2, 2 = p1, 3 = p2.
    let (q1, q2, p1, p2) = (0usize, 1usize, 2usize, 3usize);
    let b1 = m1.0[q1].min(m2.0[p1]);
    let b2 = m1.0[p1].min(m2.0[q1]);
    let b3 = m1.0[q2].min(m2.0[p2]);
    let b4 = m1.0[p2].min(m2.0[q2]);
    for j1 in 0..=b1 {
        for j2 in 0..=b2 {
            for j3 in 0..=b3 {
                for j4 in 0..=b4 {
                    let k = (j1 + j2 + j3 + j4) as u32;
                    let mut num = falling(m1.0[q1], j1) * falling(m2.0[p1], j1);
                    num *= falling(m1.0[p1], j2) * falling(m2.0[q1], j2);
                    num *= falling(m1.0[q2], j3) * falling(m2.0[p2], j3);
                    num *= falling(m1.0[p2], j4) * falling(m2.0[q2], j4);
                    if (j2 + j4) % 2 == 1 {
                        num = -num;
                    }
                    let den = factorial(j1) * factorial(j2) * factorial(j3) * factorial(j4)
                        * BigInt::from(2u64).pow(k);
                    let weight = GaussianRational::from_rational(BigRational::new(num, den));
                    let coeff = &i_pow(k) * &weight;
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut left = *m1;
                    left.0[q1] -= j1;
                    left.0[p1] -= j2;
                    left.0[q2] -= j3;
                    left.0[p2] -= j4;
                    let mut right = *m2;
                    right.0[p1] -= j1;
                    right.0[q1] -= j2;
                    right.0[p2] -= j3;
                    right.0[q2] -= j4;
                    let contribution = c.scale(&coeff).mul_theta_pow(k as i64);
                    WeylElement::insert_add(terms, left.mul(&right), contribution);
                }
            }
        }
    }
}

/// One-generator left star: `x * f`.
fn left_star_var(v: Var, f: &WeylElement) -> WeylElement {
    let half_i_theta = Scalar::monomial(1, GaussianRational::from_ratio(1, 2))
        .scale(&GaussianRational::i());
    let correction = f
        .partial(v.conjugate())
        .scale(&half_i_theta)
        .scale_ratio(v.left_rule_sign(), 1);
    &WeylElement::var(v).mul_pointwise(f) + &correction
}

fn star_recursive_mono(m: &Mono, g: &WeylElement) -> WeylElement {
    let Some(v) = VARS.into_iter().find(|v| m.0[v.index()] > 0) else {
        return g.clone();
    };
    let mut rest = *m;
    rest.0[v.index()] -= 1;
    let rest_poly = WeylElement::monomial(rest, Scalar::one());
    // (x m') * g = x * (m' * g) - s (i theta/2) (dm'/dy) * g
    let inner = star_recursive_mono(&rest, g);
    let head = left_star_var(v, &inner);
    let half_i_theta = Scalar::monomial(1, GaussianRational::from_ratio(1, 2))
        .scale(&GaussianRational::i());
    let tail = rest_poly
        .partial(v.conjugate())
        .star_recursive(g)
        .scale(&half_i_theta)
        .scale_ratio(v.left_rule_sign(), 1);
    &head - &tail
}

impl Add for &WeylElement {
    type Output = WeylElement;
    fn add(self, rhs: Self) -> WeylElement {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            WeylElement::insert_add(&mut terms, *m, c.clone());
        }
        WeylElement { terms }
    }
}

impl Sub for &WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: Self) -> WeylElement {
        self + &-rhs
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        WeylElement {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

/// Pointwise (commutative) product; the star product is a named method.
impl Mul for &WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: Self) -> WeylElement {
        self.mul_pointwise(rhs)
    }
}

impl fmt::Display for WeylElement {
    /// Canonical form: monomials in descending graded-lex order, theta
    /// powers ascending inside each coefficient, e.g. `q1*p1 + 1/2*i*theta`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            for (n, g) in c.terms() {
                let txt = term_with_mono(g, *n, m);
                if first {
                    write!(f, "{}", txt)?;
                    first = false;
                } else if let Some(rest) = txt.strip_prefix('-') {
                    write!(f, " - {}", rest)?;
                } else {
                    write!(f, " + {}", txt)?;
                }
            }
        }
        Ok(())
    }
}

fn mono_text(m: &Mono) -> Option<String> {
    if m.degree() == 0 {
        return None;
    }
    let mut parts = Vec::new();
    for v in VARS {
        let e = m.0[v.index()];
        match e {
            0 => {}
            1 => parts.push(v.name().to_string()),
            _ => parts.push(format!("{}^{}", v.name(), e)),
        }
    }
    Some(parts.join("*"))
}

fn term_with_mono(g: &GaussianRational, theta_pow: i64, m: &Mono) -> String {
    let head = crate::scalar::term_text(g, theta_pow);
    match mono_text(m) {
        None => head,
        Some(vars) => {
            if head == "1" {
                vars
            } else if head == "-1" {
                format!("-{}", vars)
            } else if head.contains(" + ") || head.contains(" - ") {
                format!("({})*{}", head, vars)
            } else {
                format!("{}*{}", head, vars)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q1() -> WeylElement {
        WeylElement::var(Var::Q1)
    }
    fn q2() -> WeylElement {
        WeylElement::var(Var::Q2)
    }
    fn p1() -> WeylElement {
        WeylElement::var(Var::P1)
    }
    fn p2() -> WeylElement {
        WeylElement::var(Var::P2)
    }
    fn i_theta() -> Scalar {
        Scalar::i_theta()
    }

    #[test]
    fn star_of_commuting_coordinates_is_pointwise() {
        assert_eq!(q1().star(&q2()), q1().mul_pointwise(&q2()));
        assert_eq!(p1().star(&p2()), p1().mul_pointwise(&p2()));
        assert_eq!(q1().star(&p2()), q1().mul_pointwise(&p2()));
    }

    #[test]
    fn star_q1_p1_has_half_i_theta() {
        // q1 * p1 = q1 p1 + (i theta / 2)
        let expect = &q1().mul_pointwise(&p1())
            + &WeylElement::constant(Scalar::monomial(1, GaussianRational::from_ratio(1, 2)).scale(&GaussianRational::i()));
        assert_eq!(q1().star(&p1()), expect);
    }

    #[test]
    fn canonical_commutation_relations() {
        let it = WeylElement::constant(i_theta());
        assert_eq!(q1().commutator(&p1()), it);
        assert_eq!(q2().commutator(&p2()), it);
        assert!(q1().commutator(&q2()).is_zero());
        assert!(p1().commutator(&p2()).is_zero());
        assert!(q1().commutator(&p2()).is_zero());
        assert!(q2().commutator(&p1()).is_zero());
    }

    #[test]
    fn unit_is_central() {
        let f = &q1().star(&p1()) + &q2().pow_pointwise(3);
        assert!(f.commutator(&WeylElement::one()).is_zero());
    }

    #[test]
    fn recursive_rule_p1_q1() {
        // p1 * q1 = q1 p1 - (i theta / 2)
        let expect = &q1().mul_pointwise(&p1())
            - &WeylElement::constant(Scalar::monomial(1, GaussianRational::from_ratio(1, 2)).scale(&GaussianRational::i()));
        assert_eq!(p1().star_recursive(&q1()), expect);
        assert_eq!(p1().star(&q1()), expect);
    }

    #[test]
    fn recursive_unit_left_factor() {
        let f = &q1().pow_pointwise(2) + &p2().mul_pointwise(&q2());
        assert_eq!(WeylElement::one().star_recursive(&f), f);
    }

    #[test]
    fn recursive_matches_star_on_squares() {
        let a = q1().pow_pointwise(2);
        let b = p1().pow_pointwise(2);
        assert_eq!(a.star_recursive(&b), a.star(&b));
        // Exact value: q1^2 p1^2 + 2 i theta q1 p1 - theta^2 / 2.
        let expect = &(&a.mul_pointwise(&b)
            + &q1().mul_pointwise(&p1()).scale(&Scalar::i_theta().scale(&GaussianRational::from_int(2))))
            + &WeylElement::constant(Scalar::monomial(2, GaussianRational::from_ratio(-1, 2)));
        assert_eq!(a.star(&b), expect);
    }

    #[test]
    fn partial_derivative_basics() {
        // d(q1^2 p2)/dq1 = 2 q1 p2
        let f = q1().pow_pointwise(2).mul_pointwise(&p2());
        let expect = q1().mul_pointwise(&p2()).scale_ratio(2, 1);
        assert_eq!(f.partial(Var::Q1), expect);
        assert!(WeylElement::one().partial(Var::Q1).is_zero());
    }

    #[test]
    fn poisson_darboux() {
        assert_eq!(q1().poisson(&p1()), WeylElement::one());
        assert!(q1().poisson(&p2()).is_zero());
    }

    #[test]
    fn commutator_reduces_to_poisson_on_quadratics() {
        // [f, g] = i theta {f, g} whenever f has degree <= 2.
        let f = &q1().mul_pointwise(&p1()) + &q2().pow_pointwise(2);
        let g = &p2().pow_pointwise(4) + &q1().pow_pointwise(3).mul_pointwise(&p1());
        let lhs = f.commutator(&g);
        let rhs = f.poisson(&g).scale(&i_theta());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_canonical() {
        assert_eq!(q1().star(&p1()).to_string(), "q1*p1 + 1/2*i*theta");
        assert_eq!(WeylElement::zero().to_string(), "0");
        assert_eq!(
            WeylElement::constant(Scalar::i_theta()).to_string(),
            "i*theta"
        );
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_coeff() -> impl Strategy<Value = Scalar> {
            (-6i64..7, 1i64..4, 0i64..2).prop_map(|(n, d, t)| {
                if n == 0 {
                    Scalar::from_int(1)
                } else {
                    Scalar::monomial(t, GaussianRational::from_ratio(n, d))
                }
            })
        }

        fn arb_mono(max_deg: u8) -> impl Strategy<Value = Mono> {
            (0..=max_deg, 0..=max_deg, 0..=max_deg, 0..=max_deg)
                .prop_map(|(a, b, c, d)| Mono([a, b, c, d]))
                .prop_filter("bounded degree", move |m| m.degree() <= max_deg as u32)
        }

        fn arb_poly(max_deg: u8, max_terms: usize) -> impl Strategy<Value = WeylElement> {
            proptest::collection::vec((arb_mono(max_deg), arb_coeff()), 1..=max_terms).prop_map(
                |v| {
                    let mut w = WeylElement::zero();
                    for (m, c) in v {
                        w = &w + &WeylElement::monomial(m, c);
                    }
                    w
                },
            )
        }

        // Rational-coefficient polynomials (no theta in coefficients), for
        // the parity checks.
        fn arb_poly_plain(max_deg: u8, max_terms: usize) -> impl Strategy<Value = WeylElement> {
            proptest::collection::vec((arb_mono(max_deg), -6i64..7, 1i64..4), 1..=max_terms)
                .prop_map(|v| {
                    let mut w = WeylElement::zero();
                    for (m, n, d) in v {
                        w = &w + &WeylElement::monomial(m, Scalar::from_ratio(n.max(1), d));
                    }
                    w
                })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn star_is_associative(
                f in arb_poly(4, 3),
                g in arb_poly(4, 3),
                h in arb_poly(4, 3),
            ) {
                prop_assert_eq!(f.star(&g).star(&h), f.star(&g.star(&h)));
            }

            #[test]
            fn star_matches_recursive_route(
                f in arb_poly(6, 3),
                g in arb_poly(6, 3),
            ) {
                prop_assert_eq!(f.star(&g), f.star_recursive(&g));
            }

            #[test]
            fn classical_limit_is_pointwise_product(
                f in arb_poly_plain(4, 3),
                g in arb_poly_plain(4, 3),
            ) {
                prop_assert_eq!(f.star(&g).truncate_theta_zero(), f.mul_pointwise(&g));
            }

            #[test]
            fn commutator_parity(
                f in arb_poly_plain(4, 3),
                g in arb_poly_plain(4, 3),
            ) {
                // Commutators carry only odd theta powers, anticommutators
                // only even ones.
                prop_assert!(!f.commutator(&g).has_theta_parity(false));
                prop_assert!(!f.anticommutator(&g).has_theta_parity(true));
            }

            #[test]
            fn jacobi_identity(
                f in arb_poly(3, 2),
                g in arb_poly(3, 2),
                h in arb_poly(3, 2),
            ) {
                let total = &(&f.commutator(&g.commutator(&h))
                    + &g.commutator(&h.commutator(&f)))
                    + &h.commutator(&f.commutator(&g));
                prop_assert!(total.is_zero());
            }

            #[test]
            fn schwarz_mixed_partials(f in arb_poly(5, 4)) {
                prop_assert_eq!(
                    f.partial(Var::Q1).partial(Var::P2),
                    f.partial(Var::P2).partial(Var::Q1)
                );
            }

            #[test]
            fn bracket_is_i_theta_poisson_on_low_degree(
                f in arb_poly_plain(2, 3),
                g in arb_poly_plain(5, 3),
            ) {
                let lhs = f.commutator(&g);
                let rhs = f.poisson(&g).scale(&Scalar::i_theta());
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}

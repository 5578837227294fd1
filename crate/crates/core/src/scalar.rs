//! The coefficient field ℚ(q).
//!
//! [`LaurentPoly`] holds finite Laurent polynomials in `q` with rational
//! coefficients and [`Scalar`] is their fraction field, always kept in a
//! canonical reduced form so that equality is structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A Laurent polynomial `Σ c_k q^k`.
///
/// Stored densely from the lowest exponent; the first and last stored
/// coefficients are nonzero, the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i32, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: exp, coeffs: vec![c] }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i32, Rational)>>(terms: I) -> Self {
        let terms: Vec<(i32, Rational)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let low = terms.iter().map(|t| t.0).min().unwrap();
        let high = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![Rational::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += c;
        }
        Self::from_dense(low, coeffs)
    }

    fn from_dense(low: i32, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead_zeros);
        LaurentPoly {
            low: low + lead_zeros as i32,
            coeffs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent (0 for the zero polynomial).
    pub fn low_exp(&self) -> i32 {
        self.low
    }

    pub fn high_exp(&self) -> i32 {
        self.low + self.coeffs.len() as i32 - 1
    }

    pub fn coeff(&self, exp: i32) -> Rational {
        let idx = exp - self.low;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            Rational::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i32, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn evaluate(&self, q0: &Rational) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        // Horner on the dense part, then the shift.
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q0 + c;
        }
        acc * rational_pow(q0, self.low)
    }

    fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.high_exp().max(other.high_exp());
        let mut coeffs = vec![Rational::zero(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[(other.low - low) as usize + i] += c;
        }
        Self::from_dense(low, coeffs)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::from_dense(self.low + other.low, coeffs)
    }

    fn neg_ref(&self) -> Self {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

fn rational_pow(x: &Rational, e: i32) -> Rational {
    match e.cmp(&0) {
        Ordering::Equal => Rational::one(),
        Ordering::Greater => num_traits::pow(x.clone(), e as usize),
        Ordering::Less => num_traits::pow(x.recip(), (-e) as usize),
    }
}

// Dense polynomial helpers (index = exponent, no shift) used by gcd.

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db {
        let k = r.len() - 1 - db;
        let factor = r.last().unwrap() / &lead;
        for (i, c) in b.iter().enumerate() {
            r[k + i] -= &factor * c;
        }
        trim(&mut r);
    }
    r
}

fn poly_div_exact(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return vec![];
    }
    let mut quot = vec![Rational::zero(); r.len() - db];
    let lead = b[db].clone();
    while r.len() > db {
        let k = r.len() - 1 - db;
        let factor = r.last().unwrap() / &lead;
        for (i, c) in b.iter().enumerate() {
            r[k + i] -= &factor * c;
        }
        quot[k] = factor;
        r.pop();
        trim(&mut r);
    }
    quot
}

fn make_monic(p: &mut [Rational]) {
    let lead = p.last().unwrap().clone();
    if !lead.is_one() {
        for c in p.iter_mut() {
            *c /= &lead;
        }
    }
}

fn poly_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        make_monic(&mut y);
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    make_monic(&mut x);
    x
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> Self {
        self.neg_ref()
    }
}

impl fmt::Display for LaurentPoly {
    /// Terms in decreasing exponent order, e.g. `q^2 - 1/2*q + 3 - q^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let unit = abs.is_one();
            match (e, unit) {
                (0, _) => write!(f, "{}", abs)?,
                (_, true) => write_qpow(f, e)?,
                (_, false) => {
                    write!(f, "{}*", abs)?;
                    write_qpow(f, e)?
                }
            }
        }
        Ok(())
    }
}

fn write_qpow(f: &mut fmt::Formatter<'_>, e: i32) -> fmt::Result {
    if e == 1 {
        write!(f, "q")
    } else {
        write!(f, "q^{}", e)
    }
}

/// An element of ℚ(q) in canonical form.
///
/// The denominator has no factor of `q`, a nonzero constant term and
/// leading coefficient 1; numerator and denominator are coprime.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar {
            num: LaurentPoly::one(),
            den: LaurentPoly::one(),
        }
    }

    /// The deformation parameter `q`.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn q_pow(k: i32) -> Self {
        Self::from_poly(LaurentPoly::monomial(k, Rational::one()))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Scalar {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    /// `q - q^-1`, the default normalization constant.
    pub fn lambda() -> Self {
        Self::q() - Self::q_pow(-1)
    }

    /// The canonical representative of `num / den`.
    pub fn normalize(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        if den.coeffs.len() == 1 {
            // Monomial denominator: a unit times a power of q.
            let c = den.coeffs[0].recip();
            return Ok(Self::from_poly(num.shift(-den.low).scale(&c)));
        }
        let num_shift = num.low - den.low;
        let g = poly_gcd(&num.coeffs, &den.coeffs);
        let (n, mut d) = if g.len() > 1 {
            (poly_div_exact(&num.coeffs, &g), poly_div_exact(&den.coeffs, &g))
        } else {
            (num.coeffs.clone(), den.coeffs.clone())
        };
        let lead = d.last().unwrap().clone();
        let n: Vec<Rational> = n.into_iter().map(|c| c / &lead).collect();
        make_monic(&mut d);
        let num = LaurentPoly::from_dense(num_shift, n);
        let den = LaurentPoly::from_dense(0, d);
        // `den` may still carry a factor q^k if its constant term vanished;
        // that can only happen when the input denominator did, which the
        // dense trimming above already removed.
        debug_assert_eq!(den.low, 0);
        Ok(Scalar { num, den })
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::normalize(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// The rational number obtained by substituting `q = q0`.
    pub fn evaluate_at(&self, q0: &Rational) -> Result<Rational> {
        if q0.is_zero() {
            return Err(Error::ZeroSpecialization);
        }
        let d = self.den.evaluate(q0);
        if d.is_zero() {
            return Err(Error::Pole(q0.to_string()));
        }
        Ok(self.num.evaluate(q0) / d)
    }

    /// The constant value if the scalar does not depend on `q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.den.is_one() && (self.num.is_zero() || (self.num.low == 0 && self.num.coeffs.len() == 1)) {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    fn add_ref(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(self.num.add_ref(&o.num));
        }
        if self.den == o.den {
            return Self::normalize(self.num.add_ref(&o.num), self.den.clone()).unwrap();
        }
        let n = self.num.mul_ref(&o.den).add_ref(&o.num.mul_ref(&self.den));
        Self::normalize(n, self.den.mul_ref(&o.den)).unwrap()
    }

    fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(self.num.mul_ref(&o.num));
        }
        Self::normalize(self.num.mul_ref(&o.num), self.den.mul_ref(&o.den)).unwrap()
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(c: Rational) -> Self {
        Self::from_rational(c)
    }
}

impl From<LaurentPoly> for Scalar {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$imp(rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$imp(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$imp(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$imp(&rhs)
            }
        }
    };
}

impl Scalar {
    fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&-o)
    }
    fn div_ref(&self, o: &Self) -> Self {
        self.checked_div(o).expect("Scalar division by zero")
    }
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
// Panics on a zero divisor; use `checked_div` where zero is possible.
forward_binop!(Div, div, div_ref);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg_ref(),
            den: self.den,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg_ref(),
            den: self.den.clone(),
        }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = self.add_ref(rhs);
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = self.add_ref(&rhs);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = self.sub_ref(rhs);
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self = self.sub_ref(&rhs);
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = self.mul_ref(rhs);
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::expr::parse(s)?.to_scalar()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Scalar {
        Scalar::q()
    }

    fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, int(c))))
    }

    #[test]
    fn normalize_cancels_common_factor() {
        let s = Scalar::normalize(lp(&[(2, 1), (0, -1)]), lp(&[(1, 1), (0, -1)])).unwrap();
        assert_eq!(s, q() + Scalar::one());
        assert!(s.is_laurent());
    }

    #[test]
    fn normalize_zero_numerator() {
        let s = Scalar::normalize(LaurentPoly::zero(), lp(&[(3, 1)])).unwrap();
        assert!(s.is_zero());
        assert_eq!(s, Scalar::zero());
    }

    #[test]
    fn normalize_already_canonical() {
        let s = Scalar::normalize(lp(&[(1, 1), (-1, -1)]), LaurentPoly::one()).unwrap();
        assert_eq!(s, Scalar::lambda());
        assert!(s.denominator().is_one());
    }

    #[test]
    fn normalize_rejects_zero_denominator() {
        assert_eq!(
            Scalar::normalize(LaurentPoly::one(), LaurentPoly::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn difference_of_squares() {
        let s = (q() + q().inv().unwrap()) * Scalar::lambda();
        assert_eq!(s, Scalar::q_pow(2) - Scalar::q_pow(-2));
    }

    #[test]
    fn inverse_round_trip() {
        let inv = Scalar::one().checked_div(&Scalar::lambda()).unwrap();
        assert!(!inv.is_laurent());
        assert_eq!(inv * Scalar::lambda(), Scalar::one());
        assert_eq!(Scalar::one().checked_div(&Scalar::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn evaluation() {
        assert_eq!(Scalar::lambda().evaluate_at(&int(2)).unwrap(), rat(3, 2));
        let s = Scalar::normalize(lp(&[(2, 1), (0, -1)]), lp(&[(1, 1), (0, -1)])).unwrap();
        assert_eq!(s.evaluate_at(&int(3)).unwrap(), int(4));
        let pole = Scalar::one() / (q() - Scalar::one());
        assert!(matches!(pole.evaluate_at(&int(1)), Err(Error::Pole(_))));
        assert_eq!(q().evaluate_at(&int(0)), Err(Error::ZeroSpecialization));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::lambda().to_string(), "q - q^-1");
        let s = (Scalar::lambda()) / (Scalar::q_pow(2) + Scalar::one());
        assert_eq!(s.to_string(), "(q - q^-1)/(q^2 + 1)");
        assert_eq!(Scalar::from_rational(rat(-3, 2)).to_string(), "-3/2");
        let t = Scalar::from_poly(lp(&[(-1, 2), (3, -1)]));
        assert_eq!(t.to_string(), "-q^3 + 2*q^-1");
    }

    #[test]
    fn equal_fractions_compare_equal() {
        let a = Scalar::normalize(lp(&[(2, 2), (0, -2)]), lp(&[(2, 4), (0, 4)])).unwrap();
        let b = Scalar::normalize(lp(&[(1, 1), (-1, -1)]), lp(&[(1, 2), (-1, 2)])).unwrap();
        assert_eq!(a, b);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
            prop::collection::vec((-3i32..4, -4i64..5), 0..4)
                .prop_map(|ts| LaurentPoly::from_terms(ts.into_iter().map(|(e, c)| (e, int(c)))))
        }

        fn arb_scalar() -> impl Strategy<Value = Scalar> {
            (arb_poly(), arb_poly()).prop_filter_map("zero denominator", |(n, d)| Scalar::normalize(n, d).ok())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert!((&a - &a).is_zero());
                if !a.is_zero() {
                    prop_assert!((&a * &a.inv().unwrap()).is_one());
                }
            }

            #[test]
            fn canonical_form_is_unique(a in arb_scalar(), k in arb_poly()) {
                prop_assume!(!k.is_zero());
                let scaled = Scalar::normalize(
                    a.numerator().clone() * k.clone(),
                    a.denominator().clone() * k,
                ).unwrap();
                prop_assert_eq!(&scaled, &a);
                prop_assert_eq!(scaled.to_string(), a.to_string());
            }

            #[test]
            fn evaluation_is_a_homomorphism(a in arb_scalar(), b in arb_scalar(), x in 2i64..7) {
                let x = int(x);
                if let (Ok(va), Ok(vb)) = (a.evaluate_at(&x), b.evaluate_at(&x)) {
                    prop_assert_eq!((&a + &b).evaluate_at(&x).unwrap(), &va + &vb);
                    prop_assert_eq!((&a * &b).evaluate_at(&x).unwrap(), &va * &vb);
                }
            }

            #[test]
            fn display_parses_back(a in arb_scalar()) {
                let back: Scalar = a.to_string().parse().unwrap();
                prop_assert_eq!(back, a);
            }
        }
    }
}

//! Exact coefficients: Gaussian rationals times integer powers of the formal
//! deformation parameter `k` (kappa).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("expected a single-term scalar, got {0} terms")]
    NotMonomial(usize),
    #[error("division by zero")]
    ZeroDivision,
    #[error("term with positive kappa exponent {0} diverges in the classical limit")]
    DivergentLimit(i32),
}

/// An element `re + i*im` of Q(i).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_ints(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        GaussianRational {
            re: BigRational::new(re_num.into(), re_den.into()),
            im: BigRational::new(im_num.into(), im_den.into()),
        }
    }

    pub fn real(r: BigRational) -> Self {
        GaussianRational { re: r, im: BigRational::zero() }
    }

    pub fn zero() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Self::real(BigRational::one())
    }

    pub fn i() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn inverse(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::ZeroDivision);
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Ok(GaussianRational { re: &self.re / &norm, im: -(&self.im / &norm) })
    }

    /// True when the leading nonzero component is negative; used to pull a
    /// sign out when rendering.
    fn is_negative(&self) -> bool {
        if !self.re.is_zero() {
            self.re.is_negative()
        } else {
            self.im.is_negative()
        }
    }

    /// Rendering of a nonnegative-led value, without the outer sign.
    fn render_abs(&self) -> String {
        let g = if self.is_negative() { -self.clone() } else { self.clone() };
        match (g.re.is_zero(), g.im.is_zero()) {
            (_, true) => render_rational(&g.re),
            (true, false) => render_imag(&g.im),
            (false, false) => {
                let sign = if g.im.is_negative() { "-" } else { "+" };
                format!("({} {} {})", render_rational(&g.re), sign, render_imag(&g.im.abs()))
            }
        }
    }
}

fn render_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("({}/{})", r.numer(), r.denom())
    }
}

fn render_imag(r: &BigRational) -> String {
    let num = r.numer();
    let den = r.denom();
    let head = if num.is_one() { "i".to_string() } else { format!("{num}*i") };
    if den.is_one() {
        if num.is_one() {
            head
        } else {
            format!("({head})")
        }
    } else {
        format!("({head}/{den})")
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

/// A Laurent polynomial in `k` with coefficients in Q(i).
///
/// Stored as a sparse map from exponent to coefficient; zero coefficients are
/// never stored, so the zero scalar has an empty map.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Scalar {
    terms: BTreeMap<i32, GaussianRational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Self::monomial(GaussianRational::one(), 0)
    }

    pub fn i() -> Self {
        Self::monomial(GaussianRational::i(), 0)
    }

    /// The deformation parameter `k`.
    pub fn kappa() -> Self {
        Self::monomial(GaussianRational::one(), 1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::monomial(GaussianRational::real(BigRational::from_integer(BigInt::from(n))), 0)
    }

    pub fn rational(num: i64, den: i64) -> Self {
        Self::monomial(GaussianRational::from_ints(num, den, 0, 1), 0)
    }

    /// `(re_num/re_den + i*im_num/im_den) * k^exp`
    pub fn gaussian(re_num: i64, re_den: i64, im_num: i64, im_den: i64, exp: i32) -> Self {
        Self::monomial(GaussianRational::from_ints(re_num, re_den, im_num, im_den), exp)
    }

    /// `i * num/den * k^exp`, the shape of almost every deformation coefficient.
    pub fn imag(num: i64, den: i64, exp: i32) -> Self {
        Self::gaussian(0, 1, num, den, exp)
    }

    pub fn monomial(c: GaussianRational, exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Scalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &GaussianRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, exp: i32, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(old) => {
                let sum = &*old + c;
                if sum.is_zero() {
                    self.terms.remove(&exp);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(exp, c.clone());
            }
        }
    }

    pub fn scale_int(&self, n: i64) -> Scalar {
        self * &Scalar::from_int(n)
    }

    pub fn invert_monomial(&self) -> Result<Scalar, ScalarError> {
        match self.terms.len() {
            0 => Err(ScalarError::ZeroDivision),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                Ok(Scalar::monomial(c.inverse()?, -e))
            }
            n => Err(ScalarError::NotMonomial(n)),
        }
    }

    /// Limit `1/k -> 0`: negative powers vanish, positive powers diverge.
    pub fn classical_limit(&self) -> Result<Scalar, ScalarError> {
        if let Some((&e, _)) = self.terms.iter().next_back().filter(|(e, _)| **e > 0) {
            return Err(ScalarError::DivergentLimit(e));
        }
        Ok(self.drop_negative_powers())
    }

    /// Deletes every term with a negative power of `k`.
    pub fn drop_negative_powers(&self) -> Scalar {
        Scalar { terms: self.terms.range(0..).map(|(e, c)| (*e, c.clone())).collect() }
    }

    /// Canonical rendering used when the scalar multiplies something else:
    /// returns the sign separately so callers can join terms with `+`/`-`.
    pub(crate) fn render_signed_coefficient(&self) -> (bool, Option<String>) {
        if self.terms.len() == 1 {
            let (&e, c) = self.terms.iter().next().unwrap();
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            let body = match (abs.is_one(), e) {
                (true, 0) => None,
                (true, _) => Some(render_power(e)),
                (false, 0) => Some(abs.render_abs()),
                (false, _) => Some(format!("{}*{}", abs.render_abs(), render_power(e))),
            };
            (neg, body)
        } else {
            (false, Some(format!("({self})")))
        }
    }
}

fn render_power(e: i32) -> String {
    if e == 1 {
        "k".to_string()
    } else {
        format!("k^{e}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest power first reads naturally: `1 - (i/2)*k^-1`.
        for (n, (&e, c)) in self.terms.iter().rev().enumerate() {
            let single = Scalar::monomial(c.clone(), e);
            let (neg, body) = single.render_signed_coefficient();
            let body = body.unwrap_or_else(|| "1".to_string());
            match (n, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, o: Scalar) -> Scalar {
        self += &o;
        self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        for (e, c) in &o.terms {
            self.add_term(*e, c);
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o.clone())
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number, always kept in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Element of Q(i).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussRational {
            re,
            im: Rational::zero(),
        }
    }

    pub fn int(n: i64) -> Self {
        Self::real(q(n))
    }

    pub fn i() -> Self {
        GaussRational {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn zero() -> Self {
        GaussRational {
            re: Rational::zero(),
            im: Rational::zero(),
        }
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// |z|^2
    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sq();
        Some(GaussRational {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GaussRational {
            re: &self.re * r,
            im: &self.im * r,
        }
    }

    pub fn mul_i(&self) -> Self {
        GaussRational {
            re: -self.im.clone(),
            im: self.re.clone(),
        }
    }
}

impl From<Rational> for GaussRational {
    fn from(r: Rational) -> Self {
        GaussRational::real(r)
    }
}

impl From<i64> for GaussRational {
    fn from(n: i64) -> Self {
        GaussRational::int(n)
    }
}

impl<'a, 'b> Add<&'b GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn add(self, o: &'b GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl<'a, 'b> Sub<&'b GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn sub(self, o: &'b GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl<'a, 'b> Mul<&'b GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn mul(self, o: &'b GaussRational) -> GaussRational {
        match (self.im.is_zero(), o.im.is_zero()) {
            (true, true) => GaussRational::real(&self.re * &o.re),
            (true, false) => GaussRational {
                re: &self.re * &o.re,
                im: &self.re * &o.im,
            },
            (false, true) => GaussRational {
                re: &self.re * &o.re,
                im: &self.im * &o.re,
            },
            (false, false) => GaussRational {
                re: &self.re * &o.re - &self.im * &o.im,
                im: &self.re * &o.im + &self.im * &o.re,
            },
        }
    }
}

impl<'a, 'b> Div<&'b GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn div(self, o: &'b GaussRational) -> GaussRational {
        let inv = o.inv().expect("division by zero in Q(i)");
        self * &inv
    }
}

impl<'a> Neg for &'a GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussRational> for GaussRational {
            type Output = GaussRational;
            fn $m(self, o: GaussRational) -> GaussRational {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a GaussRational> for GaussRational {
            type Output = GaussRational;
            fn $m(self, o: &'a GaussRational) -> GaussRational {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl<'a> AddAssign<&'a GaussRational> for GaussRational {
    fn add_assign(&mut self, o: &'a GaussRational) {
        self.re += &o.re;
        if !o.im.is_zero() {
            self.im += &o.im;
        }
    }
}

impl<'a> SubAssign<&'a GaussRational> for GaussRational {
    fn sub_assign(&mut self, o: &'a GaussRational) {
        self.re -= &o.re;
        if !o.im.is_zero() {
            self.im -= &o.im;
        }
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// Least common multiple of the denominators of a row.
pub fn denominator_lcm<'a>(row: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    let mut l = BigInt::one();
    for r in row {
        if !r.denom().is_one() {
            l = num_integer::Integer::lcm(&l, r.denom());
        }
    }
    l
}

/// Square root of a non-negative rational when it is a perfect square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

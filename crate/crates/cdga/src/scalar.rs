//! Exact scalars: arbitrary-precision rationals, optionally extended by √3.
//!
//! Every value is `rat + surd·√3` with both parts exact rationals. The field
//! tag records whether the value lives in Q or in Q(√3); binary operations
//! take the join of the operand tags, so Q promotes silently into Q(√3) but a
//! √3 component never leaks into a computation tagged rational.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Field tag for an [`ExactScalar`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Sqrt3,
}

impl Field {
    pub fn join(self, other: Field) -> Field {
        if self == Field::Sqrt3 || other == Field::Sqrt3 {
            Field::Sqrt3
        } else {
            Field::Rational
        }
    }
}

/// An exact element of Q or Q(√3). Equality is componentwise on the value;
/// the field tag is bookkeeping and does not take part in comparisons.
#[derive(Clone, Debug)]
pub struct ExactScalar {
    rat: BigRational,
    surd: BigRational,
    field: Field,
}

impl PartialEq for ExactScalar {
    fn eq(&self, other: &Self) -> bool {
        // a + b√3 = a' + b'√3 iff a = a' and b = b' (√3 is irrational).
        self.rat == other.rat && self.surd == other.surd
    }
}

impl Eq for ExactScalar {}

impl ExactScalar {
    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        ExactScalar {
            rat: BigRational::from_integer(BigInt::from(n)),
            surd: BigRational::zero(),
            field: Field::Rational,
        }
    }

    /// p/q. Panics if q = 0.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        ExactScalar {
            rat: BigRational::new(BigInt::from(p), BigInt::from(q)),
            surd: BigRational::zero(),
            field: Field::Rational,
        }
    }

    pub fn from_big(r: BigRational) -> Self {
        ExactScalar {
            rat: r,
            surd: BigRational::zero(),
            field: Field::Rational,
        }
    }

    /// √3 itself.
    pub fn sqrt3() -> Self {
        ExactScalar {
            rat: BigRational::zero(),
            surd: BigRational::one(),
            field: Field::Sqrt3,
        }
    }

    /// a + b√3 for rational a, b; tagged Q(√3).
    pub fn with_sqrt3(rat: ExactScalar, surd: ExactScalar) -> Self {
        assert!(
            rat.surd.is_zero() && surd.surd.is_zero(),
            "components must be rational"
        );
        ExactScalar {
            rat: rat.rat,
            surd: surd.rat,
            field: Field::Sqrt3,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.surd.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rat.is_one() && self.surd.is_zero()
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn sqrt3_part(&self) -> &BigRational {
        &self.surd
    }

    /// The value as a rational, if the √3 component is zero.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.surd.is_zero() {
            Some(&self.rat)
        } else {
            None
        }
    }

    /// The value as an integer, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.surd.is_zero() && self.rat.is_integer() {
            Some(self.rat.to_integer())
        } else {
            None
        }
    }

    pub fn checked_inv(&self) -> Option<ExactScalar> {
        if self.is_zero() {
            return None;
        }
        if self.surd.is_zero() {
            return Some(ExactScalar {
                rat: self.rat.recip(),
                surd: BigRational::zero(),
                field: self.field,
            });
        }
        // (a + b√3)^{-1} = (a - b√3) / (a² - 3b²); the norm a² - 3b² is
        // nonzero because √3 is irrational.
        let three = BigRational::from_integer(BigInt::from(3));
        let norm = &self.rat * &self.rat - three * &self.surd * &self.surd;
        Some(ExactScalar {
            rat: &self.rat / &norm,
            surd: -(&self.surd / &norm),
            field: Field::Sqrt3,
        })
    }

    pub fn abs(&self) -> ExactScalar {
        // Only meaningful for rational values; √3 values keep their sign
        // via the numeric embedding √3 > 0. We only ever need the rational case.
        if self.surd.is_zero() {
            ExactScalar {
                rat: self.rat.abs(),
                surd: BigRational::zero(),
                field: self.field,
            }
        } else {
            self.clone()
        }
    }
}

impl Default for ExactScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar {
            rat: &self.rat + &rhs.rat,
            surd: &self.surd + &rhs.surd,
            field: self.field.join(rhs.field),
        }
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar {
            rat: &self.rat - &rhs.rat,
            surd: &self.surd - &rhs.surd,
            field: self.field.join(rhs.field),
        }
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        // (a + b√3)(c + d√3) = (ac + 3bd) + (ad + bc)√3
        let three = BigRational::from_integer(BigInt::from(3));
        ExactScalar {
            rat: &self.rat * &rhs.rat + three * &self.surd * &rhs.surd,
            surd: &self.rat * &rhs.surd + &self.surd * &rhs.rat,
            field: self.field.join(rhs.field),
        }
    }
}

impl Div for &ExactScalar {
    type Output = ExactScalar;
    #[allow(clippy::suspicious_arithmetic_impl)] // division is multiplication by the inverse
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        let inv = rhs.checked_inv().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            rat: -&self.rat,
            surd: -&self.surd,
            field: self.field,
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surd.is_zero() {
            return write!(f, "{}", fmt_rational(&self.rat));
        }
        let surd_str = if self.surd.is_one() {
            "sqrt3".to_string()
        } else if (-&self.surd).is_one() {
            "-sqrt3".to_string()
        } else {
            format!("{}*sqrt3", fmt_rational(&self.surd))
        };
        if self.rat.is_zero() {
            write!(f, "{surd_str}")
        } else if self.surd.is_negative() {
            write!(f, "{}{}", fmt_rational(&self.rat), surd_str)
        } else {
            write!(f, "{}+{}", fmt_rational(&self.rat), surd_str)
        }
    }
}

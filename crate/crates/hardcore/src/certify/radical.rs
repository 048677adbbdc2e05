//! Arithmetic in the quadratic extension Q(alpha, beta, gamma, delta)[S]
//! with S^2 = D, used to reduce the radical expressions of the Hessian
//! analysis to pairs of exact polynomials: every element is written as
//! (a + b S) / den with polynomial a, b, den.

use super::poly::Poly;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RadicalError {
    #[error("division by an element of norm zero")]
    NormZero,
    #[error("expression did not reduce to polynomials over the declared denominator")]
    NotReducible,
}

/// a + b·S where S² = D.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RadExpr {
    pub a: Poly,
    pub b: Poly,
}

impl RadExpr {
    pub fn from_poly(p: Poly) -> Self {
        RadExpr {
            a: p,
            b: Poly::zero(),
        }
    }

    pub fn radical() -> Self {
        RadExpr {
            a: Poly::zero(),
            b: Poly::one(),
        }
    }

    pub fn add(&self, other: &RadExpr) -> RadExpr {
        RadExpr {
            a: self.a.add(&other.a),
            b: self.b.add(&other.b),
        }
    }

    pub fn sub(&self, other: &RadExpr) -> RadExpr {
        RadExpr {
            a: self.a.sub(&other.a),
            b: self.b.sub(&other.b),
        }
    }

    pub fn neg(&self) -> RadExpr {
        RadExpr {
            a: self.a.neg(),
            b: self.b.neg(),
        }
    }

    pub fn conjugate(&self) -> RadExpr {
        RadExpr {
            a: self.a.clone(),
            b: self.b.neg(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

/// The extension ring; holds the discriminant polynomial D.
pub struct Ring {
    pub d: Poly,
}

impl Ring {
    pub fn new(d: Poly) -> Self {
        Ring { d }
    }

    pub fn mul_expr(&self, x: &RadExpr, y: &RadExpr) -> RadExpr {
        RadExpr {
            a: x.a.mul(&y.a).add(&x.b.mul(&y.b).mul(&self.d)),
            b: x.a.mul(&y.b).add(&x.b.mul(&y.a)),
        }
    }

    /// Norm a·a − b·b·D, a pure polynomial.
    pub fn norm(&self, x: &RadExpr) -> Poly {
        x.a.mul(&x.a).sub(&x.b.mul(&x.b).mul(&self.d))
    }
}

/// (a + b S)/den. The denominator is kept radical-free by conjugate
/// normalization whenever a division happens.
#[derive(Clone, Debug)]
pub struct RadRat {
    pub num: RadExpr,
    pub den: Poly,
}

impl RadRat {
    pub fn from_poly(p: Poly) -> Self {
        RadRat {
            num: RadExpr::from_poly(p),
            den: Poly::one(),
        }
    }

    pub fn from_expr(e: RadExpr) -> Self {
        RadRat {
            num: e,
            den: Poly::one(),
        }
    }

    pub fn radical() -> Self {
        RadRat {
            num: RadExpr::radical(),
            den: Poly::one(),
        }
    }

    /// p / q with polynomial numerator and denominator.
    pub fn fraction(p: Poly, q: Poly) -> Self {
        RadRat { num: RadExpr::from_poly(p), den: q }
    }

    /// Split into exact polynomial coordinates (P1, P2) with
    /// self = P1 + P2·S, failing if the denominator does not divide out.
    pub fn split(&self) -> Result<(Poly, Poly), RadicalError> {
        let p1 = self.num.a.div_exact(&self.den).ok_or(RadicalError::NotReducible)?;
        let p2 = self.num.b.div_exact(&self.den).ok_or(RadicalError::NotReducible)?;
        Ok((p1, p2))
    }
}

impl Ring {
    pub fn add(&self, x: &RadRat, y: &RadRat) -> RadRat {
        if x.den == y.den {
            return RadRat {
                num: x.num.add(&y.num),
                den: x.den.clone(),
            };
        }
        RadRat {
            num: self
                .mul_expr(&x.num, &RadExpr::from_poly(y.den.clone()))
                .add(&self.mul_expr(&y.num, &RadExpr::from_poly(x.den.clone()))),
            den: x.den.mul(&y.den),
        }
    }

    pub fn sub(&self, x: &RadRat, y: &RadRat) -> RadRat {
        self.add(x, &RadRat { num: y.num.neg(), den: y.den.clone() })
    }

    pub fn mul(&self, x: &RadRat, y: &RadRat) -> RadRat {
        RadRat {
            num: self.mul_expr(&x.num, &y.num),
            den: x.den.mul(&y.den),
        }
    }

    pub fn inv(&self, x: &RadRat) -> Result<RadRat, RadicalError> {
        let norm = self.norm(&x.num);
        if norm.is_zero() {
            return Err(RadicalError::NormZero);
        }
        Ok(RadRat {
            num: self.mul_expr(&x.num.conjugate(), &RadExpr::from_poly(x.den.clone())),
            den: norm,
        })
    }

    pub fn div(&self, x: &RadRat, y: &RadRat) -> Result<RadRat, RadicalError> {
        Ok(self.mul(x, &self.inv(y)?))
    }
}

//! Exact multivariate polynomials over the rationals in the four overlap
//! variables (alpha, beta, gamma, delta).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub const VARS: [&str; 4] = ["alpha", "beta", "gamma", "delta"];

/// Monomial exponent vector, one entry per variable.
pub type Exps = [u8; 4];

/// A polynomial in canonical form: lexicographically sorted monomials with
/// nonzero exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Exps, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert([0; 4], c);
        }
        Poly { terms }
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(BigRational::from_integer(n.into()))
    }

    /// The rational n/d as a constant polynomial.
    pub fn frac(n: i64, d: i64) -> Self {
        Poly::constant(BigRational::new(n.into(), d.into()))
    }

    pub fn var(index: usize) -> Self {
        assert!(index < 4);
        let mut exps = [0u8; 4];
        exps[index] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps, BigRational::one());
        Poly { terms }
    }

    /// Build from a list of (numerator, denominator, exponents) triples.
    pub fn from_terms(list: &[(i64, i64, Exps)]) -> Self {
        let mut p = Poly::zero();
        for &(n, d, e) in list {
            p.add_term(e, BigRational::new(n.into(), d.into()));
        }
        p
    }

    fn add_term(&mut self, exps: Exps, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &BigRational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let mut e = *e1;
                for k in 0..4 {
                    e[k] = e[k]
                        .checked_add(e2[k])
                        .expect("monomial degree overflow");
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn partial(&self, index: usize) -> Poly {
        assert!(index < 4);
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            if e[index] > 0 {
                let mut ne = *e;
                ne[index] -= 1;
                out.add_term(ne, c * BigRational::from_integer(BigInt::from(e[index])));
            }
        }
        out
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn eval_f64(&self, x: &[f64; 4]) -> f64 {
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut t = rational_to_f64(c);
            for k in 0..4 {
                for _ in 0..e[k] {
                    t *= x[k];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_rational(&self, x: &[BigRational; 4]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for k in 0..4 {
                for _ in 0..e[k] {
                    t *= &x[k];
                }
            }
            acc += t;
        }
        acc
    }

    fn leading(&self) -> Option<(&Exps, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Exact division: returns `Some(q)` with `self = q * d` when the
    /// division leaves no remainder, `None` otherwise.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (d_exps, d_coeff) = d.leading()?;
        let (d_exps, d_coeff) = (*d_exps, d_coeff.clone());
        let mut r = self.clone();
        let mut q = Poly::zero();
        while let Some((r_exps, r_coeff)) = r.leading() {
            let mut t_exps = [0u8; 4];
            for k in 0..4 {
                t_exps[k] = r_exps[k].checked_sub(d_exps[k])?;
            }
            let t_coeff = r_coeff / &d_coeff;
            let mut t = Poly::zero();
            t.add_term(t_exps, t_coeff);
            r = r.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::add(self, rhs)
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::sub(self, rhs)
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs)
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for k in 0..4 {
                match e[k] {
                    0 => {}
                    1 => write!(f, "*{}", VARS[k])?,
                    n => write!(f, "*{}^{}", VARS[k], n)?,
                }
            }
        }
        Ok(())
    }
}

//! Outward-rounded interval arithmetic for rigorous polynomial enclosures.
//!
//! Rust gives no access to the FPU rounding mode, so directed rounding is
//! simulated by widening every arithmetic result one ulp in each direction
//! with `next_down`/`next_up`. This over-approximates true directed
//! rounding and therefore stays sound.

use super::poly::{rational_to_f64, Poly};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn zero() -> Self {
        Interval::point(0.0)
    }

    fn widened(lo: f64, hi: f64) -> Self {
        Interval {
            lo: lo.next_down(),
            hi: hi.next_up(),
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    /// Largest absolute value attained on the interval.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval::widened(self.lo + other.lo, self.hi + other.hi)
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval::widened(self.lo - other.hi, self.hi - other.lo)
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let candidates = [
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        ];
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for c in candidates {
            lo = lo.min(c);
            hi = hi.max(c);
        }
        Interval::widened(lo, hi)
    }

    pub fn scale(&self, c: f64) -> Interval {
        if c >= 0.0 {
            Interval::widened(self.lo * c, self.hi * c)
        } else {
            Interval::widened(self.hi * c, self.lo * c)
        }
    }

    /// x^n with the tight power rule (not repeated multiplication), so even
    /// powers of sign-crossing intervals stay nonnegative.
    pub fn pow(&self, n: u8) -> Interval {
        match n {
            0 => Interval::point(1.0),
            1 => *self,
            _ => {
                let (plo, phi) = (self.lo.powi(n as i32), self.hi.powi(n as i32));
                if n % 2 == 1 {
                    Interval::widened(plo, phi)
                } else if self.lo >= 0.0 {
                    Interval::widened(plo, phi)
                } else if self.hi <= 0.0 {
                    Interval::widened(phi, plo)
                } else {
                    // zero is attained exactly, no downward widening needed
                    Interval {
                        lo: 0.0,
                        hi: plo.max(phi).next_up(),
                    }
                }
            }
        }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }
}

/// Cell of the subdivision: one interval per variable.
pub type Box4 = [Interval; 4];

/// Plain term-by-term interval evaluation (Horner is not worthwhile in four
/// sparse variables).
pub fn eval_direct(p: &Poly, cell: &Box4) -> Interval {
    let mut acc = Interval::zero();
    for (exps, coeff) in p.terms() {
        let mut term = Interval::point(1.0);
        for (k, &e) in exps.iter().enumerate() {
            if e > 0 {
                term = term.mul(&cell[k].pow(e));
            }
        }
        acc = acc.add(&term.scale(rational_to_f64(coeff)));
    }
    acc
}

/// Mean-value form: p(m) + sum_k dp/dx_k(cell) * (x_k - m_k). Needs the
/// partials, which the caller caches. The midpoint evaluation itself must be
/// an interval evaluation to remain sound.
pub fn eval_mean_value(p: &Poly, partials: &[Poly; 4], cell: &Box4) -> Interval {
    let mid: Box4 = std::array::from_fn(|k| Interval::point(cell[k].midpoint()));
    let mut acc = eval_direct(p, &mid);
    for k in 0..4 {
        let dev = cell[k].sub(&mid[k]);
        if dev.lo == 0.0 && dev.hi == 0.0 {
            continue;
        }
        acc = acc.add(&eval_direct(&partials[k], cell).mul(&dev));
    }
    acc
}

/// Intersection of the direct and mean-value enclosures; both are sound, so
/// their intersection is a sound and usually tighter enclosure.
pub fn enclose(p: &Poly, partials: &[Poly; 4], cell: &Box4) -> Interval {
    let direct = eval_direct(p, cell);
    let mv = eval_mean_value(p, partials, cell);
    direct
        .intersect(&mv)
        .expect("two sound enclosures of the same polynomial must intersect")
}

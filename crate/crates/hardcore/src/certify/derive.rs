//! Symbolic derivation of every polynomial the certifier reasons about.
//!
//! All quantities are derived in exact rational arithmetic from their
//! defining expressions in the quadratic extension by S = sqrt(D), where
//! D is the discriminant of the epsilon elimination. Nothing here is
//! transcribed from a printed expansion; the test module holds independent
//! transcriptions and checks the derived forms against them term by term.

use std::sync::OnceLock;

use super::poly::Poly;
use super::radical::{RadExpr, RadRat, Ring};

/// The derived polynomial inventory, computed once per process.
pub struct Quantities {
    /// Extension ring carrying the discriminant D.
    pub ring: Ring,
    /// (1-α)²δ + β²(2α-1-γ), the sign witness for W₁₁ ≥ 1.
    pub c1: Poly,
    /// (1-β)²γ + α²(2β-1-δ), the sign witness for W₂₁ ≥ 1.
    pub c2: Poly,
    /// Radical-free and radical components of
    /// W₃ = (α-γ-ε̂)ε̂(1-2α+γ) - η̂(α-γ)².
    pub w31: Poly,
    pub w32: Poly,
    /// Same for the (β, δ) mirror W₄.
    pub w41: Poly,
    pub w42: Poly,
    /// Components of the cleared form of -R₁+R₂+R₃.
    pub p11: Poly,
    pub p12: Poly,
    /// -(p11² - p12²D) / ((β-δ)²(α-γ)³), positive exactly where
    /// -R₁+R₂+R₃ is negative.
    pub p21: Poly,
    /// Components of the cleared form of
    /// ((-R₁+R₂+R₃)(-R₁-R₈-R₉) - R₁²) / sqrt(D).
    pub p51: Poly,
    pub p52: Poly,
    /// Cleared form of 1/γ + 1/δ - R₁₁/(1-2α+γ) - R₁₁/(1-2β+δ);
    /// radical-free after clearing, a plain polynomial.
    pub s1: Poly,
    /// Components of the cleared determinant cross term P₇.
    pub p71: Poly,
    pub p72: Poly,
    /// p71² - p72²D, the norm deciding the sign of P₇.
    pub tp1: Poly,
    /// D - (γ+δ-α-β-(1-α-β)²)², deciding 1-α-β-ε̂-η̂ > (1-α-β)².
    pub tp2: Poly,
    /// (1-2α)(1-β)² + α²(1-2β+δ), the cleared numerator of 1-2α+γ_min.
    pub ineq_x: Poly,
    /// 18δ(β-δ)(1-β)² + (δ-3β)·ineq_x, the cleared bracket whose
    /// positivity gates the final inequality.
    pub ineq_t: Poly,
    /// 4βδ²·ineq_x² - (3β-2δ)·ineq_t², the final inequality with the
    /// stronger constant.
    pub ineq_strong: Poly,
    /// Same with the weaker constant (2β-2δ)/β.
    pub ineq_weak: Poly,
}

fn var(i: usize) -> Poly {
    Poly::var(i)
}

fn rneg(x: &RadRat) -> RadRat {
    RadRat {
        num: x.num.neg(),
        den: x.den.clone(),
    }
}

fn build() -> Quantities {
    let a = var(0);
    let b = var(1);
    let g = var(2);
    let dl = var(3);
    let one = Poly::one();
    let two = Poly::int(2);
    let half = Poly::frac(1, 2);

    let om = &(&one - &a) - &b; // 1-α-β
    let ag = &a - &g; // α-γ
    let bd = &b - &dl; // β-δ
    let u = &(&one - &(&two * &a)) + &g; // 1-2α+γ
    let ub = &(&one - &(&two * &b)) + &dl; // 1-2β+δ

    let d = &(&om * &om) + &(&Poly::int(4) * &(&ag * &bd));
    let ring = Ring::new(d.clone());

    // ε̂ = (1+α-β-2γ-S)/2, η̂ = (1+β-α-2δ-S)/2.
    let eps = RadExpr {
        a: &half * &(&(&(&one + &a) - &b) - &(&two * &g)),
        b: half.neg(),
    };
    let eta = RadExpr {
        a: &half * &(&(&(&one + &b) - &a) - &(&two * &dl)),
        b: half.neg(),
    };
    // α-γ-ε̂ = ((α+β-1)+S)/2 and 1-β-γ-ε̂ = ((1-α-β)+S)/2.
    let x1 = RadExpr::from_poly(ag.clone()).sub(&eps);
    let x2 = RadExpr::from_poly(bd.clone()).sub(&eta);
    let y1 = RadExpr::from_poly(&(&one - &b) - &g).sub(&eps);

    let c1 = &(&(&one - &a).pow(2) * &dl) + &(&b.pow(2) * &(&(&(&two * &a) - &one) - &g));
    let c2 = &(&(&one - &b).pow(2) * &g) + &(&a.pow(2) * &(&(&(&two * &b) - &one) - &dl));

    // W₃ = (α-γ-ε̂)·ε̂·(1-2α+γ) - η̂·(α-γ)².
    let w3 = ring
        .mul_expr(&ring.mul_expr(&x1, &eps), &RadExpr::from_poly(u.clone()))
        .sub(&ring.mul_expr(&eta, &RadExpr::from_poly(ag.pow(2))));
    // W₄ = (β-δ-η̂)·η̂·(1-2β+δ) - ε̂·(β-δ)².
    let w4 = ring
        .mul_expr(&ring.mul_expr(&x2, &eta), &RadExpr::from_poly(ub.clone()))
        .sub(&ring.mul_expr(&eps, &RadExpr::from_poly(bd.pow(2))));

    // P₁ = (-R₁+R₂+R₃)·ε̂η̂(1-2α+γ)(α-γ)(α-γ-ε̂), expanded by clearing
    // each of the six partial fractions against the common multiplier.
    let p1 = {
        let s = RadExpr::radical();
        let pe = |p: &Poly| RadExpr::from_poly(p.clone());
        let prod = |xs: &[&RadExpr]| {
            xs.iter()
                .skip(1)
                .fold(xs[0].clone(), |acc, x| ring.mul_expr(&acc, x))
        };
        let t_bd = prod(&[
            &pe(&bd),
            &prod(&[&eps, &eta, &pe(&u), &pe(&ag)])
                .neg()
                .sub(&prod(&[&eps, &pe(&u), &pe(&ag), &x1]))
                .add(&prod(&[&eta, &pe(&u), &pe(&ag), &x1])),
        ]);
        let t_s = prod(&[
            &s,
            &prod(&[&eta, &pe(&u), &pe(&ag), &x1])
                .neg()
                .add(&prod(&[&eps, &eta, &pe(&ag), &x1]))
                .add(&prod(&[&pe(&two), &eps, &eta, &pe(&u), &x1])),
        ]);
        t_bd.add(&t_s)
    };
    let (p11, p12) = (p1.a.clone(), p1.b.clone());

    let p21 = {
        let norm = &p11.pow(2) - &(&p12.pow(2) * &d);
        norm.neg()
            .div_exact(&(&bd.pow(2) * &ag.pow(3)))
            .expect("norm of P1 must factor through (beta-delta)^2 (alpha-gamma)^3")
    };

    // The R quantities as exact elements of the extension field.
    let r1 = ring
        .div(
            &RadRat::from_poly(om.clone()),
            // 1-α-β-ε̂-η̂ = (γ+δ-α-β) + S
            &RadRat::from_expr(RadExpr {
                a: &(&g + &dl) - &(&a + &b),
                b: one.clone(),
            }),
        )
        .expect("1-alpha-beta-eps-eta has nonzero norm");
    let r2 = RadRat {
        num: RadExpr::radical(),
        den: u.clone(),
    };
    // 2(α-γ-ε̂) = (α+β-1)+S.
    let r3 = RadRat {
        num: RadExpr {
            a: om.neg(),
            b: one.clone(),
        },
        den: ag.clone(),
    };
    let r4 = RadRat {
        num: RadExpr::radical(),
        den: g.clone(),
    };
    let r6 = RadRat {
        num: RadExpr::radical(),
        den: ub.clone(),
    };
    let r8 = RadRat {
        num: RadExpr::radical(),
        den: dl.clone(),
    };
    // 2(1-β-γ-ε̂) = (1-α-β)+S.
    let r9 = RadRat {
        num: RadExpr {
            a: om.clone(),
            b: one.clone(),
        },
        den: bd.clone(),
    };
    let r11 = RadRat::fraction(&(&one - &a) * &(&one - &b), &a * &b);

    // P₅ = ((-R₁+R₂+R₃)(-R₁-R₈-R₉) - R₁²)·δ(α-γ)ε̂η̂(1-2α+γ)(α-γ-ε̂)/S.
    let (p51, p52) = {
        let t1 = ring.add(&ring.add(&rneg(&r1), &r2), &r3);
        let t2 = rneg(&ring.add(&ring.add(&r1, &r8), &r9));
        let e0 = ring.sub(&ring.mul(&t1, &t2), &ring.mul(&r1, &r1));
        let m = ring.mul_expr(
            &ring.mul_expr(&ring.mul_expr(&eps, &eta), &x1),
            &RadExpr::from_poly(&(&dl * &ag) * &u),
        );
        let p5 = ring
            .div(
                &ring.mul(&e0, &RadRat::from_expr(m)),
                &RadRat::radical(),
            )
            .expect("sqrt(D) has nonzero norm");
        p5.split().expect("P5 reduces to polynomials")
    };

    // s₁ = (-R₂R₁₁ - R₆R₁₁ + R₄ + R₈)/S · αβγδ(1-2α+γ)(1-2β+δ),
    // which is radical free.
    let s1 = {
        let e = ring.add(
            &rneg(&ring.add(&ring.mul(&r2, &r11), &ring.mul(&r6, &r11))),
            &ring.add(&r4, &r8),
        );
        let cleared = ring
            .div(&e, &RadRat::radical())
            .expect("sqrt(D) has nonzero norm");
        let m = RadRat::from_poly(&(&(&a * &b) * &(&g * &dl)) * &(&u * &ub));
        let (s_a, s_b) = ring.mul(&cleared, &m).split().expect("s1 reduces to polynomials");
        assert!(s_b.is_zero(), "s1 must be radical free");
        s_a
    };

    // P₇ = (R₁₁/(1-2α+γ) - (α-γ-ε̂)/((α-γ)η̂)·(R₁₁ - R₁₀))·αβη̂(α-γ)(1-2α+γ).
    let (p71, p72) = {
        let t1 = RadRat::fraction(&(&one - &a) * &(&one - &b), &(&u * &a) * &b);
        let t2 = ring
            .div(
                &RadRat::from_expr(x1.clone()),
                &RadRat::from_expr(ring.mul_expr(&RadExpr::from_poly(ag.clone()), &eta)),
            )
            .expect("(alpha-gamma) eta has nonzero norm");
        let r10 = ring
            .div(&RadRat::from_expr(y1.clone()), &RadRat::from_expr(x1.clone()))
            .expect("alpha-gamma-eps has nonzero norm");
        let inner = ring.sub(&r11, &r10);
        let m = RadRat::from_expr(ring.mul_expr(
            &eta,
            &RadExpr::from_poly(&(&a * &b) * &(&ag * &u)),
        ));
        let p7 = ring.mul(&ring.sub(&t1, &ring.mul(&t2, &inner)), &m);
        p7.split().expect("P7 reduces to polynomials")
    };

    let tp1 = &p71.pow(2) - &(&p72.pow(2) * &d);
    let tp2 = {
        let w = &(&(&g + &dl) - &(&a + &b)) - &om.pow(2);
        &d - &w.pow(2)
    };

    let ineq_x = &(&(&one - &(&two * &a)) * &(&one - &b).pow(2)) + &(&a.pow(2) * &ub);
    let ineq_t = &(&(&Poly::int(18) * &(&dl * &bd)) * &(&one - &b).pow(2))
        + &(&(&dl - &(&Poly::int(3) * &b)) * &ineq_x);
    let lead = &(&Poly::int(4) * &b) * &(&dl.pow(2) * &ineq_x.pow(2));
    let ineq_strong = &lead - &(&(&(&Poly::int(3) * &b) - &(&two * &dl)) * &ineq_t.pow(2));
    let ineq_weak = &lead - &(&(&(&two * &b) - &(&two * &dl)) * &ineq_t.pow(2));

    Quantities {
        ring,
        c1,
        c2,
        w31: w3.a,
        w32: w3.b,
        w41: w4.a,
        w42: w4.b,
        p11,
        p12,
        p21,
        p51,
        p52,
        s1,
        p71,
        p72,
        tp1,
        tp2,
        ineq_x,
        ineq_t,
        ineq_strong,
        ineq_weak,
    }
}

pub fn quantities() -> &'static Quantities {
    static CELL: OnceLock<Quantities> = OnceLock::new();
    CELL.get_or_init(build)
}

//! Interval branch-and-bound certification of strict polynomial signs on
//! semialgebraic boxes.
//!
//! A claim is a polynomial together with a sign and a region. The region is
//! a box intersected with polynomial constraints; strict constraints are
//! shrunk by a margin so the certified statement is "the sign holds on the
//! margin-shrunk region", which sidesteps the inevitable sign degeneracy on
//! the region boundary. Falsification is only ever reported after the
//! offending point has been re-checked in exact rational arithmetic.

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::interval::{enclose, eval_direct, Box4, Interval};
use super::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rel {
    Gt,
    Ge,
    Lt,
    Le,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub poly: Poly,
    pub rel: Rel,
}

impl Constraint {
    pub fn new(poly: Poly, rel: Rel) -> Self {
        Constraint { poly, rel }
    }
}

/// Box with polynomial side constraints.
#[derive(Clone, Debug)]
pub struct RegionSpec {
    pub bounds: [(f64, f64); 4],
    pub constraints: Vec<Constraint>,
}

/// Claimed strict sign of the target polynomial on the region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sign {
    Positive,
    Negative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Certified,
    Falsified,
    Undecided,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    /// Coordinates of the counterexample (exactly representable doubles).
    pub point: [f64; 4],
    /// Value of the claimed polynomial there, rounded from the exact value.
    pub value: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub status: Status,
    pub witness: Option<Witness>,
    pub cells_processed: u64,
    pub cells_certified: u64,
    pub cells_infeasible: u64,
    pub undecided_cells: u64,
    pub max_depth_reached: u32,
    pub margin: f64,
    /// A sample cell the search could not decide, for diagnostics.
    pub first_undecided: Option<[(f64, f64); 4]>,
    /// True when the search stopped on the cell budget rather than depth.
    pub budget_exhausted: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct CertifyOptions {
    pub margin: f64,
    pub max_depth: u32,
    pub cell_budget: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            margin: 0.01,
            max_depth: 24,
            cell_budget: 4_000_000,
        }
    }
}

struct Prepared {
    target: Poly,
    target_partials: [Poly; 4],
    sign: Sign,
    constraints: Vec<(Constraint, [Poly; 4])>,
    has_equality: bool,
    margin: f64,
}

fn partials(p: &Poly) -> [Poly; 4] {
    std::array::from_fn(|k| p.partial(k))
}

impl Prepared {
    /// True if the constraint provably fails everywhere on the enclosure.
    fn infeasible(&self, rel: Rel, enc: &Interval) -> bool {
        match rel {
            Rel::Gt => enc.hi < self.margin,
            Rel::Ge => enc.hi < 0.0,
            Rel::Lt => enc.lo > -self.margin,
            Rel::Le => enc.lo > 0.0,
            Rel::Eq => !enc.contains(0.0),
        }
    }

    /// True if the constraint provably holds everywhere on the enclosure.
    fn satisfied(&self, rel: Rel, enc: &Interval) -> bool {
        match rel {
            Rel::Gt => enc.lo >= self.margin,
            Rel::Ge => enc.lo >= 0.0,
            Rel::Lt => enc.hi <= -self.margin,
            Rel::Le => enc.hi <= 0.0,
            // an equality is never provable on a fat cell
            Rel::Eq => false,
        }
    }

    fn sign_proved(&self, enc: &Interval) -> bool {
        match self.sign {
            Sign::Positive => enc.lo > 0.0,
            Sign::Negative => enc.hi < 0.0,
        }
    }

    fn sign_impossible(&self, enc: &Interval) -> bool {
        match self.sign {
            Sign::Positive => enc.hi <= 0.0,
            Sign::Negative => enc.lo >= 0.0,
        }
    }

    /// Exact feasibility of a point for the margin-shrunk constraints.
    fn feasible_exact(&self, x: &[BigRational; 4]) -> bool {
        let margin = BigRational::from_float(self.margin).expect("finite margin");
        self.constraints.iter().all(|(c, _)| {
            let v = c.poly.eval_rational(x);
            match c.rel {
                Rel::Gt => v >= margin,
                Rel::Ge => v >= BigRational::zero(),
                Rel::Lt => v <= -margin.clone(),
                Rel::Le => v <= BigRational::zero(),
                Rel::Eq => v.is_zero(),
            }
        })
    }

    /// Exact check whether the claimed sign fails at the point.
    fn violates_exact(&self, x: &[BigRational; 4]) -> Option<f64> {
        let v = self.target.eval_rational(x);
        let bad = match self.sign {
            Sign::Positive => v <= BigRational::zero(),
            Sign::Negative => v >= BigRational::zero(),
        };
        bad.then(|| super::poly::rational_to_f64(&v))
    }
}

fn exact_point(x: &[f64; 4]) -> [BigRational; 4] {
    std::array::from_fn(|k| BigRational::from_float(x[k]).expect("finite coordinate"))
}

enum Outcome {
    Certified,
    Infeasible,
    Undecided(Box4),
    Falsified(Witness),
    Split(Cell, Cell),
}

#[derive(Clone)]
struct Cell {
    cube: Box4,
    depth: u32,
}

fn split_cell(prep: &Prepared, cell: &Cell, unsatisfied: &[usize]) -> (Cell, Cell) {
    // Bisect the variable with the largest width-scaled gradient magnitude.
    // Constraints that are not yet provably satisfied count as well: a cell
    // can also be retired by proving infeasibility, and that may hinge on
    // variables the target does not even mention.
    let mut best = 0;
    let mut best_score = -1.0;
    for k in 0..4 {
        let w = cell.cube[k].width();
        if w <= 0.0 {
            continue;
        }
        let mut grad = eval_direct(&prep.target_partials[k], &cell.cube).mag();
        for &ci in unsatisfied {
            let (_, dp) = &prep.constraints[ci];
            grad += eval_direct(&dp[k], &cell.cube).mag();
        }
        let score = w * (grad + 1e-30);
        if score > best_score {
            best_score = score;
            best = k;
        }
    }
    let mid = cell.cube[best].midpoint();
    let mut lo_cube = cell.cube;
    let mut hi_cube = cell.cube;
    lo_cube[best] = Interval::new(cell.cube[best].lo, mid);
    hi_cube[best] = Interval::new(mid, cell.cube[best].hi);
    (
        Cell {
            cube: lo_cube,
            depth: cell.depth + 1,
        },
        Cell {
            cube: hi_cube,
            depth: cell.depth + 1,
        },
    )
}

fn process_cell(prep: &Prepared, cell: &Cell, max_depth: u32) -> Outcome {
    let mut unsatisfied = Vec::new();
    for (ci, (c, dp)) in prep.constraints.iter().enumerate() {
        let enc = enclose(&c.poly, dp, &cell.cube);
        if prep.infeasible(c.rel, &enc) {
            return Outcome::Infeasible;
        }
        if !prep.satisfied(c.rel, &enc) {
            unsatisfied.push(ci);
        }
    }
    let enc = enclose(&prep.target, &prep.target_partials, &cell.cube);
    if prep.sign_proved(&enc) {
        return Outcome::Certified;
    }

    // Try an exact counterexample when the claim provably fails somewhere on
    // the cell, or as a last resort at the depth limit. The midpoint need not
    // be feasible (the cell may only straddle the region), so feasibility is
    // re-checked exactly as well. With an equality constraint no exact point
    // can be produced at all, so falsification is structurally out of reach
    // and those claims end Undecided instead.
    let at_leaf = cell.depth >= max_depth;
    if !prep.has_equality && (prep.sign_impossible(&enc) || at_leaf) {
        let mid: [f64; 4] = std::array::from_fn(|k| cell.cube[k].midpoint());
        // cheap screen before paying for exact arithmetic
        let approx = prep.target.eval_f64(&mid);
        let promising = match prep.sign {
            Sign::Positive => approx <= 1e-12,
            Sign::Negative => approx >= -1e-12,
        };
        if promising {
            let x = exact_point(&mid);
            if prep.feasible_exact(&x) {
                if let Some(value) = prep.violates_exact(&x) {
                    return Outcome::Falsified(Witness { point: mid, value });
                }
            }
        }
    }

    if at_leaf {
        Outcome::Undecided(cell.cube)
    } else {
        let (a, b) = split_cell(prep, cell, &unsatisfied);
        Outcome::Split(a, b)
    }
}

pub fn certify_sign(
    target: &Poly,
    sign: Sign,
    region: &RegionSpec,
    opts: &CertifyOptions,
) -> CertificateReport {
    let prep = Prepared {
        target: target.clone(),
        target_partials: partials(target),
        sign,
        constraints: region
            .constraints
            .iter()
            .map(|c| (c.clone(), partials(&c.poly)))
            .collect(),
        has_equality: region.constraints.iter().any(|c| c.rel == Rel::Eq),
        margin: opts.margin,
    };

    let root = Cell {
        cube: std::array::from_fn(|k| Interval::new(region.bounds[k].0, region.bounds[k].1)),
        depth: 0,
    };

    let mut report = CertificateReport {
        status: Status::Certified,
        witness: None,
        cells_processed: 0,
        cells_certified: 0,
        cells_infeasible: 0,
        undecided_cells: 0,
        max_depth_reached: 0,
        margin: opts.margin,
        first_undecided: None,
        budget_exhausted: false,
    };

    let mut frontier = vec![root];
    while !frontier.is_empty() {
        if report.cells_processed >= opts.cell_budget {
            report.budget_exhausted = true;
            report.undecided_cells += frontier.len() as u64;
            if report.first_undecided.is_none() {
                let c = &frontier[0].cube;
                report.first_undecided = Some(std::array::from_fn(|k| (c[k].lo, c[k].hi)));
            }
            break;
        }
        report.cells_processed += frontier.len() as u64;
        report.max_depth_reached = report
            .max_depth_reached
            .max(frontier.iter().map(|c| c.depth).max().unwrap_or(0));

        let outcomes: Vec<Outcome> = frontier
            .par_iter()
            .map(|cell| process_cell(&prep, cell, opts.max_depth))
            .collect();

        let mut next = Vec::new();
        for outcome in outcomes {
            match outcome {
                Outcome::Certified => report.cells_certified += 1,
                Outcome::Infeasible => report.cells_infeasible += 1,
                Outcome::Undecided(cube) => {
                    report.undecided_cells += 1;
                    if report.first_undecided.is_none() {
                        report.first_undecided =
                            Some(std::array::from_fn(|k| (cube[k].lo, cube[k].hi)));
                    }
                }
                Outcome::Falsified(w) => {
                    report.status = Status::Falsified;
                    report.witness = Some(w);
                    return report;
                }
                Outcome::Split(a, b) => {
                    next.push(a);
                    next.push(b);
                }
            }
        }
        frontier = next;
    }

    if report.undecided_cells > 0 {
        report.status = Status::Undecided;
    }
    report
}

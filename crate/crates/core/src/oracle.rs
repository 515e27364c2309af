//! Brute-force cross-checks.
//!
//! [`brute_solve`] enumerates a box of classes and evaluates the quadratic
//! form directly. [`sweep_solver`] compares it with the closed-form solvers,
//! and [`sweep_theorem`] compares the congruence-based classifier with the
//! obstruction classes actually present in each lattice.

use std::fmt;

use serde::Serialize;

use crate::classifier::{classify, Case, ClassificationResult, Exception, PicardDescription, Quadrics};
use crate::error::{Error, Result};
use crate::lattice::arith::{congruent, congruent_pm};
use crate::lattice::{CurveQuery, DivisorClass, GramLattice, RankOneWitness};
use crate::obstruction::{
    c_obstructions, cubics_needed, h_birationally_very_ample, h_very_ample, solve_vs_c, solve_vs_h, ClassSet, Criterion,
};

pub const DEFAULT_N_MAX: i64 = 12;
pub const DEFAULT_D_MAX: i64 = 40;

/// Targets checked against `H`: `(E^2, E.H)`.
pub const H_TARGETS: [(i64, i64); 4] = [(0, 1), (0, 2), (0, 3), (-2, 0)];
/// Targets checked against `C`: `(E^2, E.C)`.
pub const C_TARGETS: [(i64, i64); 1] = [(0, 1)];

const GENEROUS_N_MAX: i64 = 6;
const GENEROUS_D_MAX: i64 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Against {
    H,
    C,
}

impl fmt::Display for Against {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Every nonzero `(x, y)` with `|x| <= x_bound`, `|y| <= y_bound`,
/// `E^2 = e` and `E.H = m` (or `E.C = m`).
pub fn brute_solve(l: &GramLattice, e: i64, m: i64, against: Against, x_bound: i64, y_bound: i64) -> Result<ClassSet> {
    if x_bound < 0 || y_bound < 0 {
        return Err(Error::Domain(format!("bounds must be non-negative, got ({x_bound}, {y_bound})")));
    }
    let axis = match against {
        Against::H => DivisorClass::H,
        Against::C => DivisorClass::C,
    };
    let mut out = ClassSet::new();
    for x in -x_bound..=x_bound {
        for y in -y_bound..=y_bound {
            let class = DivisorClass::new(x, y);
            if class.is_zero() {
                continue;
            }
            if l.pair(class, axis)? == m && l.self_int(class)? == e {
                out.insert(class);
            }
        }
    }
    Ok(out)
}

/// Box guaranteed to contain every solution, from `2n E^2 = (E.H)^2 - lambda y^2`
/// (or its mirror for `C`) with `lambda >= 1`.
pub fn derived_bounds(l: &GramLattice, e: i64, m: i64, against: Against) -> (i64, i64) {
    let (n, d, g) = (l.n(), l.d(), l.g());
    match against {
        Against::H => {
            let y = (m * m - 2 * n * e).max(0).isqrt();
            let x = (m.abs() + d * y) / (2 * n) + 1;
            (x, y)
        }
        Against::C if g == 1 => {
            let x = m.abs();
            (x, e.abs() + 2 * n * x * x + 1)
        }
        Against::C => {
            let c2 = 2 * (g - 1);
            let x = (m * m - c2 * e).max(0).isqrt();
            let y = (m.abs() + d * x) / c2.abs() + 1;
            (x, y)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub n: i64,
    pub d: i64,
    pub g: i64,
    pub check: String,
    pub expected: String,
    pub actual: String,
    pub witness: Option<DivisorClass>,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(n={}, d={}, g={}) {}: expected {}, got {}",
            self.n, self.d, self.g, self.check, self.expected, self.actual
        )?;
        if let Some(w) = self.witness {
            write!(f, " [witness {w}]")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub name: &'static str,
    pub n_max: i64,
    pub d_max: i64,
    pub g_policy: &'static str,
    pub triples_checked: usize,
    pub checks: usize,
    pub mismatches: Vec<Mismatch>,
}

impl SweepReport {
    fn new(name: &'static str, n_max: i64, d_max: i64) -> Self {
        SweepReport {
            name,
            n_max,
            d_max,
            g_policy: "0 <= g <= floor(d^2/4n) + 1",
            triples_checked: 0,
            checks: 0,
            mismatches: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn expect<T: PartialEq + fmt::Debug>(
        &mut self,
        l: &GramLattice,
        check: impl Into<String>,
        expected: T,
        actual: T,
        witness: Option<DivisorClass>,
    ) {
        self.checks += 1;
        if expected != actual {
            self.mismatches.push(Mismatch {
                n: l.n(),
                d: l.d(),
                g: l.g(),
                check: check.into(),
                expected: format!("{expected:?}"),
                actual: format!("{actual:?}"),
                witness,
            });
        }
    }

    fn record_error(&mut self, n: i64, d: i64, g: i64, check: &str, err: Error) {
        self.checks += 1;
        self.mismatches.push(Mismatch {
            n,
            d,
            g,
            check: check.to_string(),
            expected: "no error".to_string(),
            actual: err.to_string(),
            witness: None,
        });
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: n <= {}, d <= {}, {}: {} triples, {} checks, {} mismatches",
            self.name,
            self.n_max,
            self.d_max,
            self.g_policy,
            self.triples_checked,
            self.checks,
            self.mismatches.len()
        )
    }
}

/// `(n, d, g)` for `2 <= n <= n_max`, `1 <= d <= d_max`,
/// `0 <= g <= floor(d^2 / 4n) + 1`, in lexicographic order.
pub fn sweep_triples(n_max: i64, d_max: i64) -> impl Iterator<Item = (i64, i64, i64)> {
    (2..=n_max).flat_map(move |n| (1..=d_max).flat_map(move |d| (0..=d * d / (4 * n) + 1).map(move |g| (n, d, g))))
}

/// Closed-form solvers against brute-force enumeration.
pub fn sweep_solver(n_max: i64, d_max: i64) -> SweepReport {
    let mut report = SweepReport::new("sweep_solver", n_max, d_max);
    for (n, d, g) in sweep_triples(n_max, d_max) {
        report.triples_checked += 1;
        if let Err(err) = check_solver_triple(&mut report, n, d, g) {
            report.record_error(n, d, g, "solver", err);
        }
    }
    report
}

fn check_solver_triple(report: &mut SweepReport, n: i64, d: i64, g: i64) -> Result<()> {
    let l = GramLattice::from_triple(n, d, g)?;
    if l.lambda() <= 0 {
        let rejected = matches!(solve_vs_h(&l, 0, 1), Err(Error::NotHyperbolic(_)));
        report.expect(&l, "solver rejects lambda <= 0", true, rejected, None);
        return Ok(());
    }
    let generous = n <= GENEROUS_N_MAX && d <= GENEROUS_D_MAX;
    let targets =
        H_TARGETS.iter().map(|&(e, m)| (Against::H, e, m)).chain(C_TARGETS.iter().map(|&(e, m)| (Against::C, e, m)));
    for (against, e, m) in targets {
        let closed = match against {
            Against::H => solve_vs_h(&l, e, m)?,
            Against::C => solve_vs_c(&l, e, m)?,
        };
        let (xb, yb) = derived_bounds(&l, e, m, against);
        let brute = brute_solve(&l, e, m, against, xb, yb)?;
        let witness = closed.symmetric_difference(&brute).next().copied();
        report.expect(&l, format!("solve_vs_{against}(e={e}, m={m}) vs brute force"), &brute, &closed, witness);
        if generous {
            let wide = brute_solve(&l, e, m, against, 3 * d, 3 * d)?;
            let outside = wide.difference(&brute).next().copied();
            report.expect(
                &l,
                format!("no solution of (e={e}, m={m}) vs {against} outside the derived box"),
                None,
                outside,
                outside,
            );
        }
    }
    Ok(())
}

/// Congruence-based classification against the obstruction classes found in
/// the lattice.
pub fn sweep_theorem(n_max: i64, d_max: i64) -> SweepReport {
    let mut report = SweepReport::new("sweep_theorem", n_max, d_max);
    for (n, d, g) in sweep_triples(n_max, d_max) {
        report.triples_checked += 1;
        if let Err(err) = check_theorem_triple(&mut report, n, d, g) {
            report.record_error(n, d, g, "theorem", err);
        }
    }
    report
}

/// Independent of `case_i_witnesses`: walks every `k <= n` and checks the
/// rank-1 lattice reproduces the intersection numbers.
fn rank_one_oracle(n: i64, d: i64, g: i64) -> Vec<RankOneWitness> {
    (1..=n)
        .filter(|k| n % (k * k) == 0)
        .map(|k| RankOneWitness { k, m: n / (k * k) })
        .filter(|w| (w.k, w.m) != (2, 1))
        .filter(|w| {
            // D^2 = 2m, H = kD, C = (dk / 2n) D.
            let c_coeff_num = d * w.k;
            if c_coeff_num % (2 * n) != 0 {
                return false;
            }
            let c_coeff = c_coeff_num / (2 * n);
            let d2 = 2 * w.m;
            w.k * w.k * d2 == 2 * n && w.k * c_coeff * d2 == d && c_coeff * c_coeff * d2 == 2 * (g - 1)
        })
        .collect()
}

fn has(reports: &[crate::obstruction::ObstructionReport], criterion: Criterion) -> Option<&ClassSet> {
    reports.iter().find(|r| r.criterion == criterion).map(|r| &r.witnesses)
}

fn check_theorem_triple(report: &mut SweepReport, n: i64, d: i64, g: i64) -> Result<()> {
    let q = CurveQuery::new(n, d, g)?;
    let l = GramLattice::from_triple(n, d, g)?;
    let emb = classify(&q)?;
    let bir = classify(&q.birational())?;
    let lambda = l.lambda();
    report.expect(&l, "case follows lambda", Case::from_lambda(n, lambda), emb.case, None);

    match emb.case {
        Case::HodgeViolation => {
            report.expect(&l, "hodge violation never exists", (false, false), (emb.exists, bir.exists), None);
            return Ok(());
        }
        Case::CaseI => {
            let radical = DivisorClass::new(d, -2 * n);
            let in_radical = l.pair(radical, DivisorClass::H)? == 0 && l.pair(radical, DivisorClass::C)? == 0;
            report.expect(&l, "lambda = 0 iff dH - 2nC is numerically trivial", true, in_radical, Some(radical));
            let oracle = rank_one_oracle(n, d, g);
            let found = match &emb.picard {
                PicardDescription::RankOne(w) => w.clone(),
                other => {
                    report.expect(&l, "case I has rank one", 1, other.rank(), None);
                    Vec::new()
                }
            };
            report.expect(&l, "rank one witnesses", &oracle, &found, None);
            report.expect(&l, "case I exists iff a witness exists", !oracle.is_empty(), emb.exists, None);
            report.expect(&l, "case I mode independent", emb.exists, bir.exists, None);
            return Ok(());
        }
        _ => {
            let radical = DivisorClass::new(d, -2 * n);
            let in_radical = l.pair(radical, DivisorClass::H)? == 0 && l.pair(radical, DivisorClass::C)? == 0;
            report.expect(&l, "lambda != 0 leaves dH - 2nC nontrivial", false, in_radical, Some(radical));
        }
    }

    check_quadric_classes(report, &l, &emb)?;

    if emb.case == Case::CaseIV && g == 0 {
        report.expect(&l, "rational curves exist", (true, true), (emb.exists, bir.exists), None);
        return Ok(());
    }

    let va = h_very_ample(&l)?;
    let bva = h_birationally_very_ample(&l)?;
    let c_obs = c_obstructions(&l)?;
    let embedded_obstructed = va.is_obstructed() || !c_obs.is_empty();
    // A contracted (-2)-curve meeting C twice makes the image of every
    // member of |C| singular, even though H itself is birationally fine.
    let mut singular_image = false;
    for gamma in solve_vs_h(&l, -2, 0)? {
        singular_image |= l.pair(gamma, DivisorClass::C)?.abs() == 2;
    }
    let birational_obstructed = bva.is_obstructed() || !c_obs.is_empty() || singular_image;
    report.expect(&l, "embedded existence iff no obstruction class", !embedded_obstructed, emb.exists, None);
    report.expect(&l, "birational existence iff no obstruction class", !birational_obstructed, bir.exists, None);

    match emb.case {
        Case::CaseII => {
            report.expect(
                &l,
                "exceptions nonempty iff obstructed",
                embedded_obstructed,
                !emb.exceptions.is_empty(),
                None,
            );
            let only_contracts = va.reports().iter().all(|r| r.criterion == Criterion::HContracts)
                && va.is_obstructed()
                && c_obs.is_empty()
                && lambda == n;
            let only_c = !emb.exceptions.is_empty() && emb.exceptions.iter().all(|e| *e == Exception::C);
            report.expect(
                &l,
                "exceptions = {c} iff only contracted curves with lambda = n",
                only_contracts,
                only_c,
                None,
            );
            if let Some(contracted) = has(va.reports(), Criterion::HContracts) {
                for gamma in contracted {
                    let gc = l.pair(*gamma, DivisorClass::C)?.abs();
                    report.expect(&l, "contracted curve meets C once (lambda = n)", 1, gc, Some(*gamma));
                }
            }
        }
        Case::CaseIII => {
            let contracted = solve_vs_h(&l, -2, 0)?;
            let divisible = d % (2 * n) == 0;
            report.expect(&l, "2n | d iff a contracted (-2)-class exists", divisible, !contracted.is_empty(), None);
            if divisible {
                let gamma = DivisorClass::new(d / (2 * n), -1);
                report.expect(&l, "(d/2n)H - C is contracted", true, contracted.contains(&gamma), Some(gamma));
            }
            for gamma in &contracted {
                let gc = l.pair(*gamma, DivisorClass::C)?.abs();
                report.expect(&l, "contracted curve meets C twice (lambda = 4n)", 2, gc, Some(*gamma));
            }
            report.expect(&l, "case III mode independent", emb.exists, bir.exists, None);
        }
        Case::CaseIV => {
            let special = d == 2 * n + 1 && g == n + 1;
            report.expect(&l, "C obstructions iff (d, g) = (2n+1, n+1)", special, !c_obs.is_empty(), None);
            report.expect(&l, "H very ample for lambda > 4n", false, va.is_obstructed(), None);
            if special {
                let gamma = DivisorClass::new(-1, 1);
                let numbers = (l.self_int(gamma)?, l.pair(gamma, DivisorClass::C)?, l.pair(gamma, DivisorClass::H)?);
                report.expect(&l, "C - H has (E^2, E.C, E.H) = (-2, -1, 1)", (-2, -1, 1), numbers, Some(gamma));
                let witnessed = has(&c_obs, Criterion::CNotNef).is_some_and(|w| w.contains(&gamma));
                report.expect(&l, "C - H witnesses C not nef", true, witnessed, Some(gamma));
            }
        }
        _ => unreachable!("cases I and hodge return early"),
    }
    Ok(())
}

fn check_quadric_classes(report: &mut SweepReport, l: &GramLattice, emb: &ClassificationResult) -> Result<()> {
    let (n, d, lambda) = (l.n(), l.d(), l.lambda());
    let two_n = 2 * n;

    let hyperelliptic = !solve_vs_h(l, 0, 2)?.is_empty();
    let predicted = (lambda == 1
        && (congruent_pm(d, 1, two_n) || congruent(d, n + 1, two_n) || congruent(d, n - 1, two_n)))
        || (lambda == 4 && congruent_pm(d, 2, two_n));
    report.expect(l, "hyperelliptic class iff congruence", predicted, hyperelliptic, None);

    let cubics = cubics_needed(l)?;
    let predicted = (lambda == 1 && congruent_pm(3 * d, 3, two_n)) || (lambda == 9 && congruent_pm(d, 3, two_n));
    report.expect(l, "degree 3 isotropic class iff congruence", predicted, !cubics.is_empty(), None);

    if n >= 4 && emb.exists {
        let needs_cubics = emb.quadrics == Quadrics::QuadricsAndCubics;
        report.expect(
            l,
            "quadrics status matches degree 3 class",
            !cubics.is_empty(),
            needs_cubics,
            cubics.first().copied(),
        );
    }
    Ok(())
}

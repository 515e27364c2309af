//! Closed-form search for obstruction classes in `Z H + Z C`.
//!
//! Every Saint-Donat style criterion used here asks for a class `E` with a
//! prescribed `E^2` and a prescribed pairing against `H` (or `C`). On the
//! rank-2 lattice this is a line meeting a conic, and the identity
//!
//! ```text
//! 2n E^2 = (E.H)^2 - lambda y^2        (E = xH + yC)
//! ```
//!
//! pins `y` down to at most two values. `x` then follows from
//! `E.H = 2nx + dy`. No floating point is involved.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::arith;
use crate::lattice::{DivisorClass, GramLattice};

pub type ClassSet = BTreeSet<DivisorClass>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Criterion {
    /// `E^2 = 0`, `E.H = 1`: `|H|` has base points.
    HNotBpf,
    /// `E^2 = 0`, `E.H = 2`: `|H|` is hyperelliptic.
    HHyperelliptic,
    /// `E^2 = -2`, `E.H = 0`: `H` contracts a (-2)-curve.
    HContracts,
    /// `E^2 = -2`, `E.C < 0`: `C` is not nef.
    CNotNef,
    /// `E^2 = 0`, `E.C = 1`: `|C|` has base points.
    CNotBpf,
    /// `E^2 = 0`, `E.H = 3`: the ideal of the surface needs cubics.
    CubicsNeeded,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A failed criterion together with the classes that witness the failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub criterion: Criterion,
    pub witnesses: ClassSet,
}

impl ObstructionReport {
    fn from_witnesses(criterion: Criterion, witnesses: ClassSet) -> Option<Self> {
        (!witnesses.is_empty()).then_some(ObstructionReport { criterion, witnesses })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VeryAmpleness {
    VeryAmple,
    Obstructed(Vec<ObstructionReport>),
}

impl VeryAmpleness {
    pub fn is_obstructed(&self) -> bool {
        matches!(self, VeryAmpleness::Obstructed(_))
    }

    pub fn reports(&self) -> &[ObstructionReport] {
        match self {
            VeryAmpleness::VeryAmple => &[],
            VeryAmpleness::Obstructed(r) => r,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BirationalAmpleness {
    Birational,
    Obstructed(Vec<ObstructionReport>),
}

impl BirationalAmpleness {
    pub fn is_obstructed(&self) -> bool {
        matches!(self, BirationalAmpleness::Obstructed(_))
    }
}

fn check_target(l: &GramLattice, e: i64) -> Result<()> {
    if l.lambda() <= 0 {
        return Err(Error::NotHyperbolic(l.lambda()));
    }
    if e % 2 != 0 {
        return Err(Error::OddSelfIntersection(e));
    }
    Ok(())
}

/// Non-negative `s` with `lambda * s^2 = target`, if any.
fn scaled_square_root(target: i64, lambda: i64) -> Option<i64> {
    if target < 0 {
        return None;
    }
    arith::exact_div(target, lambda).and_then(arith::exact_sqrt)
}

fn signs(s: i64) -> impl Iterator<Item = i64> {
    let neg = (s != 0).then_some(-s);
    std::iter::once(s).chain(neg)
}

/// All nonzero classes `E` with `E^2 = e` and `E.H = m`.
pub fn solve_vs_h(l: &GramLattice, e: i64, m: i64) -> Result<ClassSet> {
    check_target(l, e)?;
    let two_n = arith::mul(2, l.n(), "solve_vs_h")?;
    // lambda y^2 = m^2 - 2n e
    let target = arith::sub(arith::mul(m, m, "solve_vs_h")?, arith::mul(two_n, e, "solve_vs_h")?, "solve_vs_h")?;
    let mut out = ClassSet::new();
    let Some(s) = scaled_square_root(target, l.lambda()) else {
        return Ok(out);
    };
    for y in signs(s) {
        let num = arith::sub(m, arith::mul(l.d(), y, "solve_vs_h")?, "solve_vs_h")?;
        if let Some(x) = arith::exact_div(num, two_n) {
            let class = DivisorClass::new(x, y);
            if !class.is_zero() {
                debug_assert_eq!(l.self_int(class), Ok(e));
                debug_assert_eq!(l.pair(class, DivisorClass::H), Ok(m));
                out.insert(class);
            }
        }
    }
    Ok(out)
}

/// All nonzero classes `E` with `E^2 = e` and `E.C = c`.
///
/// For `g != 1` this mirrors [`solve_vs_h`] through
/// `2(g-1) E^2 = (E.C)^2 - lambda x^2`. For `g = 1` the class `C` is
/// isotropic and `E.C = dx`, so `x` is read off directly; the case `c = 0`,
/// `e = 0` then has infinitely many solutions `yC` and is an error.
pub fn solve_vs_c(l: &GramLattice, e: i64, c: i64) -> Result<ClassSet> {
    check_target(l, e)?;
    let mut out = ClassSet::new();
    let c2 = arith::mul(2, l.g() - 1, "solve_vs_c")?;
    if c2 == 0 {
        let Some(x) = arith::exact_div(c, l.d()) else {
            return Ok(out);
        };
        if x == 0 {
            if e == 0 {
                return Err(Error::Unbounded("every multiple of an isotropic C solves E^2 = 0, E.C = 0".into()));
            }
            return Ok(out);
        }
        // e = 2n x^2 + 2d x y
        let rest = arith::sub(e, arith::mul(2 * l.n(), arith::mul(x, x, "solve_vs_c")?, "solve_vs_c")?, "solve_vs_c")?;
        if let Some(y) = arith::exact_div(rest, arith::mul(2 * l.d(), x, "solve_vs_c")?) {
            out.insert(DivisorClass::new(x, y));
        }
        return Ok(out);
    }
    // lambda x^2 = c^2 - 2(g-1) e
    let target = arith::sub(arith::mul(c, c, "solve_vs_c")?, arith::mul(c2, e, "solve_vs_c")?, "solve_vs_c")?;
    let Some(s) = scaled_square_root(target, l.lambda()) else {
        return Ok(out);
    };
    for x in signs(s) {
        let num = arith::sub(c, arith::mul(l.d(), x, "solve_vs_c")?, "solve_vs_c")?;
        if let Some(y) = arith::exact_div(num, c2) {
            let class = DivisorClass::new(x, y);
            if !class.is_zero() {
                debug_assert_eq!(l.self_int(class), Ok(e));
                debug_assert_eq!(l.pair(class, DivisorClass::C), Ok(c));
                out.insert(class);
            }
        }
    }
    Ok(out)
}

/// Very ampleness of `H` by conditions (I) and (III).
///
/// Condition (II), `H ~ 2E` with `E^2 = 2`, cannot hold: `H = (1, 0)` is a
/// primitive basis vector of the lattice.
pub fn h_very_ample(l: &GramLattice) -> Result<VeryAmpleness> {
    let mut reports = Vec::new();
    if 2 * l.n() < 4 {
        return Ok(VeryAmpleness::Obstructed(reports));
    }
    for (criterion, e, m) in
        [(Criterion::HNotBpf, 0, 1), (Criterion::HHyperelliptic, 0, 2), (Criterion::HContracts, -2, 0)]
    {
        reports.extend(ObstructionReport::from_witnesses(criterion, solve_vs_h(l, e, m)?));
    }
    Ok(if reports.is_empty() { VeryAmpleness::VeryAmple } else { VeryAmpleness::Obstructed(reports) })
}

/// Like [`h_very_ample`] but contracted (-2)-curves are allowed.
pub fn h_birationally_very_ample(l: &GramLattice) -> Result<BirationalAmpleness> {
    let mut reports = Vec::new();
    for (criterion, e, m) in [(Criterion::HNotBpf, 0, 1), (Criterion::HHyperelliptic, 0, 2)] {
        reports.extend(ObstructionReport::from_witnesses(criterion, solve_vs_h(l, e, m)?));
    }
    Ok(if reports.is_empty() { BirationalAmpleness::Birational } else { BirationalAmpleness::Obstructed(reports) })
}

/// Reasons `|C|` cannot contain a smooth irreducible member, given `H` nef.
///
/// `C - H` is a (-2)-class with `(C - H).C = -1` exactly when
/// `(d, g) = (2n + 1, n + 1)`; otherwise `C` is nef and can only fail to be
/// base point free through an isotropic `E` with `E.C = 1`.
pub fn c_obstructions(l: &GramLattice) -> Result<Vec<ObstructionReport>> {
    if l.g() < 1 {
        return Err(Error::Domain(format!("C obstructions need g >= 1, got g = {}", l.g())));
    }
    if l.lambda() <= 0 {
        return Err(Error::NotHyperbolic(l.lambda()));
    }
    let mut reports = Vec::new();
    if l.d() == 2 * l.n() + 1 && l.g() == l.n() + 1 {
        let gamma = DivisorClass::new(-1, 1);
        debug_assert_eq!(l.self_int(gamma), Ok(-2));
        debug_assert_eq!(l.pair(gamma, DivisorClass::C), Ok(-1));
        reports.push(ObstructionReport { criterion: Criterion::CNotNef, witnesses: ClassSet::from([gamma]) });
    }
    reports.extend(ObstructionReport::from_witnesses(Criterion::CNotBpf, solve_vs_c(l, 0, 1)?));
    Ok(reports)
}

/// Isotropic classes of degree 3; nonempty iff the ideal needs cubics
/// (meaningful for `n >= 4`).
pub fn cubics_needed(l: &GramLattice) -> Result<ClassSet> {
    solve_vs_h(l, 0, 3)
}

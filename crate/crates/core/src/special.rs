//! Non-specialty of `O_C(k)` and the complete-intersection K3 families.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classifier::{classify, ClassificationResult, Quadrics};
use crate::error::{Error, Result};
use crate::lattice::arith;
use crate::lattice::{CurveQuery, DivisorClass, GramLattice};

fn check_nonspecial_domain(n: i64, d: i64, g: i64, k: i64) -> Result<()> {
    if k < 1 {
        return Err(Error::Domain(format!("k must be at least 1, got {k}")));
    }
    if n < 1 || d < 1 || g < 0 {
        return Err(Error::Domain(format!("need n >= 1, d >= 1, g >= 0, got n = {n}, d = {d}, g = {g}")));
    }
    Ok(())
}

/// `h^1(O_C'(k)) = 0` for every `C'` in `|C|`: `d <= 2nk` or `dk > nk^2 + g`.
pub fn nonspecial(n: i64, d: i64, g: i64, k: i64) -> Result<bool> {
    check_nonspecial_domain(n, d, g, k)?;
    let two_nk = arith::mul(arith::mul(2, n, "2nk")?, k, "2nk")?;
    let dk = arith::mul(d, k, "dk")?;
    let bound = arith::add(arith::mul(n, arith::mul(k, k, "nk^2")?, "nk^2")?, g, "nk^2 + g")?;
    Ok(d <= two_nk || dk > bound)
}

/// The same condition read on the lattice: `h^0(C - kH) = 0` unless
/// `(C - kH).H > 0` and `(C - kH)^2 >= -2`.
pub fn nonspecial_lattice_equiv(n: i64, d: i64, g: i64, k: i64) -> Result<bool> {
    check_nonspecial_domain(n, d, g, k)?;
    let l = GramLattice::raw(n, d, g)?;
    let residual = DivisorClass::new(-k, 1);
    let degree = l.pair(residual, DivisorClass::H)?;
    let square = l.self_int(residual)?;
    Ok(!(degree > 0 && square >= -2))
}

/// Both sides of the two non-specialty inequalities, for display.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonSpecialReport {
    pub nonspecial: bool,
    pub d: i64,
    pub two_nk: i64,
    pub dk: i64,
    pub nk2_plus_g: i64,
    /// `None` when `n = 1`, where the triple cannot be classified.
    pub triple_exists: Option<bool>,
}

/// [`nonspecial`] with both sides of each inequality. Logs a warning when the
/// triple is not realized by any surface; the inequality is still reported.
pub fn nonspecial_report(n: i64, d: i64, g: i64, k: i64) -> Result<NonSpecialReport> {
    let value = nonspecial(n, d, g, k)?;
    let triple_exists = match CurveQuery::new(n, d, g) {
        Ok(q) => Some(classify(&q)?.exists),
        Err(_) => None,
    };
    if triple_exists != Some(true) {
        log::warn!("no smooth curve with (n, d, g) = ({n}, {d}, {g}); the non-specialty statement is vacuous here");
    }
    Ok(NonSpecialReport {
        nonspecial: value,
        d,
        two_nk: 2 * n * k,
        dk: d * k,
        nk2_plus_g: n * k * k + g,
        triple_exists,
    })
}

/// Smooth complete-intersection K3 surfaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CiFamily {
    /// Quartic in `P^3`, `n = 2`.
    QuarticP3,
    /// Type `(2, 3)` in `P^4`, `n = 3`.
    Type23P4,
    /// Type `(2, 2, 2)` in `P^5`, `n = 4`.
    Type222P5,
}

impl CiFamily {
    pub const ALL: [CiFamily; 3] = [CiFamily::QuarticP3, CiFamily::Type23P4, CiFamily::Type222P5];

    pub fn n(&self) -> i64 {
        match self {
            CiFamily::QuarticP3 => 2,
            CiFamily::Type23P4 => 3,
            CiFamily::Type222P5 => 4,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            CiFamily::QuarticP3 => "quartic",
            CiFamily::Type23P4 => "23",
            CiFamily::Type222P5 => "222",
        }
    }
}

impl fmt::Display for CiFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for CiFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CiFamily::ALL
            .into_iter()
            .find(|f| f.label() == s)
            .ok_or_else(|| Error::Domain(format!("unknown family {s:?}, expected quartic, 23 or 222")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CiClassification {
    pub family: CiFamily,
    /// The general classification for `n = family.n()`, embedded mode.
    pub classification: ClassificationResult,
    /// Whether a surface of this family carries the curve. Differs from
    /// `classification.exists` only for `(2, 2, 2)`, where a surface that
    /// needs cubics is not a complete intersection.
    pub exists: bool,
    /// Set when `C` and `H` are dependent: `C` is cut out by a hypersurface
    /// of degree `d / 2n`.
    pub hypersurface_degree: Option<i64>,
}

pub fn ci_classify(family: CiFamily, d: i64, g: i64) -> Result<CiClassification> {
    let n = family.n();
    let classification = classify(&CurveQuery::new(n, d, g)?)?;
    let exists = classification.exists && classification.quadrics != Quadrics::QuadricsAndCubics;
    let hypersurface_degree = (exists && classification.lambda == 0).then(|| d / (2 * n));
    Ok(CiClassification { family, classification, exists, hypersurface_degree })
}

//! Closed-form existence criteria for smooth curves on K3 surfaces.
//!
//! With `lambda = d^2 - 4n(g-1)` the classification splits into
//!
//! | lambda        | case | exists iff                                    |
//! |---------------|------|-----------------------------------------------|
//! | `< 0`         | -    | never (Hodge index)                           |
//! | `= 0`         | I    | a rank-1 witness `(k, m)` exists              |
//! | `(0, 4n)`     | II   | none of the exceptions (a)-(d) applies        |
//! | `= 4n`        | III  | `2n` does not divide `d`                      |
//! | `> 4n`        | IV   | `(d, g) != (2n + 1, n + 1)`                   |
//!
//! In birational mode exception (c) is dropped; nothing else changes.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::arith::{congruent, congruent_pm, divides};
use crate::lattice::{make_lattice, CurveQuery, Mode, RankOneWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Case {
    #[serde(rename = "I")]
    CaseI,
    #[serde(rename = "II")]
    CaseII,
    #[serde(rename = "III")]
    CaseIII,
    #[serde(rename = "IV")]
    CaseIV,
    #[serde(rename = "hodge")]
    HodgeViolation,
}

impl Case {
    pub fn from_lambda(n: i64, lambda: i64) -> Case {
        let four_n = 4 * n;
        match lambda {
            l if l < 0 => Case::HodgeViolation,
            0 => Case::CaseI,
            l if l < four_n => Case::CaseII,
            l if l == four_n => Case::CaseIII,
            _ => Case::CaseIV,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Case::CaseI => "I",
            Case::CaseII => "II",
            Case::CaseIII => "III",
            Case::CaseIV => "IV",
            Case::HodgeViolation => "hodge",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A triggered exclusion. `A`-`D` are the case (ii) clauses; the others are
/// the single exclusions of cases (i), (iii) and (iv).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Exception {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "c")]
    C,
    #[serde(rename = "d")]
    D,
    /// Case I without any admissible `(k, m)`.
    #[serde(rename = "rank1")]
    RankOneFail,
    /// Case III with `2n | d`.
    #[serde(rename = "div2n")]
    DDivisible,
    /// Case IV with `(d, g) = (2n + 1, n + 1)`.
    #[serde(rename = "2n+1")]
    Exceptional2n1,
}

impl Exception {
    pub fn label(&self) -> &'static str {
        match self {
            Exception::A => "a",
            Exception::B => "b",
            Exception::C => "c",
            Exception::D => "d",
            Exception::RankOneFail => "rank1",
            Exception::DDivisible => "div2n",
            Exception::Exceptional2n1 => "2n+1",
        }
    }

    pub fn from_label(s: &str) -> Option<Exception> {
        [
            Exception::A,
            Exception::B,
            Exception::C,
            Exception::D,
            Exception::RankOneFail,
            Exception::DDivisible,
            Exception::Exceptional2n1,
        ]
        .into_iter()
        .find(|e| e.label() == s)
    }
}

impl fmt::Display for Exception {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Quadrics {
    QuadricsOnly,
    QuadricsAndCubics,
    NotApplicable,
}

impl fmt::Display for Quadrics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Generators of the Picard group of the constructed surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PicardDescription {
    /// `Pic X = Z D` with `H = kD`; every admissible `(k, m)`, ascending `k`.
    RankOne(Vec<RankOneWitness>),
    /// `Pic X = Z H + Z C`.
    RankTwo,
    /// The intersection numbers violate the Hodge index theorem.
    Unrealizable,
}

impl PicardDescription {
    pub fn rank(&self) -> u8 {
        match self {
            PicardDescription::RankOne(_) => 1,
            PicardDescription::RankTwo => 2,
            PicardDescription::Unrealizable => 0,
        }
    }

    /// The minimal-`k` witness, if any.
    pub fn canonical_witness(&self) -> Option<RankOneWitness> {
        match self {
            PicardDescription::RankOne(w) => w.first().copied(),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationResult {
    pub query: CurveQuery,
    pub exists: bool,
    pub case: Case,
    pub lambda: i64,
    /// Every triggered clause, not only the first.
    pub exceptions: BTreeSet<Exception>,
    pub picard: PicardDescription,
    pub quadrics: Quadrics,
    /// Case II with exceptions exactly `{c}`: realizable only on a
    /// birational model. Independent of the query mode.
    pub birational_only: bool,
}

/// Admissible rank-1 witnesses: `n = k^2 m`, `(k, m) != (2, 1)`, `2n | kd`.
pub fn case_i_witnesses(n: i64, d: i64) -> Result<Vec<RankOneWitness>> {
    if n < 2 || d < 1 {
        return Err(Error::Domain(format!("need n >= 2 and d >= 1, got n = {n}, d = {d}")));
    }
    let mut out = Vec::new();
    let mut k = 1i64;
    while k * k <= n {
        let k2 = k * k;
        if n % k2 == 0 {
            let m = n / k2;
            let kd = k.checked_mul(d).ok_or(Error::Overflow("k d"))?;
            if (k, m) != (2, 1) && kd % (2 * n) == 0 {
                out.push(RankOneWitness { k, m });
            }
        }
        k += 1;
    }
    Ok(out)
}

/// The clauses (a)-(d) whose conditions hold, each evaluated as stated.
pub fn exceptions_ii(n: i64, d: i64, g: i64) -> Result<BTreeSet<Exception>> {
    let lambda = make_lattice(&CurveQuery::new(n, d, g)?)?.lambda();
    if !(0 < lambda && lambda < 4 * n) {
        return Err(Error::Domain(format!(
            "case (ii) exceptions need 0 < lambda < 4n, got lambda = {lambda} for n = {n}"
        )));
    }
    let two_n = 2 * n;
    let mut out = BTreeSet::new();
    if congruent_pm(d, 1, two_n) || congruent_pm(d, 2, two_n) {
        out.insert(Exception::A);
    }
    if lambda == 1 && (congruent(d, n + 1, two_n) || congruent(d, n - 1, two_n)) {
        out.insert(Exception::B);
    }
    if lambda == n && congruent(d, n, two_n) {
        out.insert(Exception::C);
    }
    if lambda == 1 && (divides(d - 1, two_n) || divides(d + 1, two_n)) {
        out.insert(Exception::D);
    }
    Ok(out)
}

pub fn classify(q: &CurveQuery) -> Result<ClassificationResult> {
    let (n, d, g) = (q.n(), q.d(), q.g());
    let lambda = make_lattice(q)?.lambda();
    let case = Case::from_lambda(n, lambda);
    let mut exceptions = BTreeSet::new();
    let mut birational_only = false;
    let mut picard = PicardDescription::RankTwo;

    let exists = match case {
        Case::HodgeViolation => {
            picard = PicardDescription::Unrealizable;
            false
        }
        Case::CaseI => {
            let witnesses = case_i_witnesses(n, d)?;
            if witnesses.is_empty() {
                exceptions.insert(Exception::RankOneFail);
            }
            picard = PicardDescription::RankOne(witnesses);
            exceptions.is_empty()
        }
        Case::CaseII => {
            exceptions = exceptions_ii(n, d, g)?;
            birational_only = exceptions.len() == 1 && exceptions.contains(&Exception::C);
            match q.mode() {
                Mode::Embedded => exceptions.is_empty(),
                Mode::Birational => exceptions.iter().all(|e| *e == Exception::C),
            }
        }
        Case::CaseIII => {
            // Fails birationally too: the contracted (-2)-curve meets C twice.
            if d % (2 * n) == 0 {
                exceptions.insert(Exception::DDivisible);
            }
            exceptions.is_empty()
        }
        Case::CaseIV => {
            if d == 2 * n + 1 && g == n + 1 {
                exceptions.insert(Exception::Exceptional2n1);
            }
            exceptions.is_empty()
        }
    };

    let quadrics = if n < 4 || !exists {
        Quadrics::NotApplicable
    } else if case == Case::CaseII
        && ((lambda == 1 && congruent_pm(3 * d, 3, 2 * n)) || (lambda == 9 && congruent_pm(d, 3, 2 * n)))
    {
        Quadrics::QuadricsAndCubics
    } else {
        Quadrics::QuadricsOnly
    };

    Ok(ClassificationResult { query: *q, exists, case, lambda, exceptions, picard, quadrics, birational_only })
}

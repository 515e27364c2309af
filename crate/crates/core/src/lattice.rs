//! Exact integer arithmetic on the rank-2 lattice `Z H + Z C`.
//!
//! A triple `(n, d, g)` fixes the intersection numbers `H^2 = 2n`,
//! `H.C = d` and `C^2 = 2(g - 1)`. Everything here is `i64` with checked
//! operations; any overflow surfaces as [`Error::Overflow`] instead of
//! wrapping. Inputs with `n, d <= 10^6` and `g <= d^2/4n + 1` stay far inside
//! the representable range for every class the solvers touch.

use std::fmt;
use std::ops::Neg;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which kind of projective model the surface is allowed to be.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `H` must be very ample: a smooth surface embedded in `P^(n+1)`.
    #[default]
    Embedded,
    /// `H` need only be birationally very ample; the image may have
    /// rational double points.
    Birational,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Embedded => f.write_str("embedded"),
            Mode::Birational => f.write_str("birational"),
        }
    }
}

/// The question "is there a smooth curve of degree `d` and genus `g` on a
/// K3 surface of degree `2n`?".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CurveQuery {
    n: i64,
    d: i64,
    g: i64,
    mode: Mode,
}

impl CurveQuery {
    /// Embedded-mode query. Requires `n >= 2`, `d >= 1`, `g >= 0`.
    pub fn new(n: i64, d: i64, g: i64) -> Result<Self> {
        Self::with_mode(n, d, g, Mode::Embedded)
    }

    pub fn with_mode(n: i64, d: i64, g: i64, mode: Mode) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("n must be at least 2, got {n}")));
        }
        if d < 1 {
            return Err(Error::Domain(format!("d must be positive, got {d}")));
        }
        if g < 0 {
            return Err(Error::Domain(format!("g must be non-negative, got {g}")));
        }
        Ok(CurveQuery { n, d, g, mode })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn g(&self) -> i64 {
        self.g
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn birational(self) -> Self {
        CurveQuery { mode: Mode::Birational, ..self }
    }
}

impl fmt::Display for CurveQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, d={}, g={}, {})", self.n, self.d, self.g, self.mode)
    }
}

/// A divisor class `x H + y C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct DivisorClass {
    pub x: i64,
    pub y: i64,
}

impl DivisorClass {
    pub const H: DivisorClass = DivisorClass { x: 1, y: 0 };
    pub const C: DivisorClass = DivisorClass { x: 0, y: 1 };
    pub const ZERO: DivisorClass = DivisorClass { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        DivisorClass { x, y }
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn checked_add(self, other: DivisorClass) -> Result<DivisorClass> {
        Ok(DivisorClass { x: arith::add(self.x, other.x, "class sum")?, y: arith::add(self.y, other.y, "class sum")? })
    }

    pub fn checked_scale(self, k: i64) -> Result<DivisorClass> {
        Ok(DivisorClass { x: arith::mul(self.x, k, "class multiple")?, y: arith::mul(self.y, k, "class multiple")? })
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;

    fn neg(self) -> DivisorClass {
        DivisorClass { x: -self.x, y: -self.y }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Rank-1 Picard lattice `Z D` with `D^2 = 2m`, `H = kD`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RankOneWitness {
    pub k: i64,
    pub m: i64,
}

impl fmt::Display for RankOneWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.k, self.m)
    }
}

/// The even lattice with Gram matrix `[[2n, d], [d, 2(g-1)]]` in the basis
/// `(H, C)`, together with `lambda = d^2 - 4n(g-1)`, the negated determinant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GramLattice {
    n: i64,
    d: i64,
    g: i64,
    gram: [[i64; 2]; 2],
    lambda: i64,
}

/// Builds the lattice of a validated query.
pub fn make_lattice(q: &CurveQuery) -> Result<GramLattice> {
    GramLattice::raw(q.n, q.d, q.g)
}

impl GramLattice {
    /// Validates `(n, d, g)` as a [`CurveQuery`] and builds its lattice.
    pub fn from_triple(n: i64, d: i64, g: i64) -> Result<Self> {
        make_lattice(&CurveQuery::new(n, d, g)?)
    }

    /// No domain check beyond overflow. Used where the intersection numbers
    /// are meaningful for `n = 1` as well.
    pub(crate) fn raw(n: i64, d: i64, g: i64) -> Result<Self> {
        let h2 = arith::mul(2, n, "H^2")?;
        let c2 = arith::mul(2, arith::sub(g, 1, "C^2")?, "C^2")?;
        let gram = [[h2, d], [d, c2]];
        let lambda = arith::sub(arith::mul(d, d, "lambda")?, arith::mul(h2, c2, "lambda")?, "lambda")?;
        Ok(GramLattice { n, d, g, gram, lambda })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn g(&self) -> i64 {
        self.g
    }

    pub fn gram(&self) -> [[i64; 2]; 2] {
        self.gram
    }

    /// `d^2 - 4n(g-1) = |disc(H, C)|`.
    pub fn lambda(&self) -> i64 {
        self.lambda
    }

    /// `E^2 = 2n x^2 + 2d xy + 2(g-1) y^2`.
    pub fn self_int(&self, e: DivisorClass) -> Result<i64> {
        self.pair(e, e)
    }

    pub fn pair(&self, a: DivisorClass, b: DivisorClass) -> Result<i64> {
        const WHAT: &str = "intersection pairing";
        let [[h2, hc], [_, c2]] = self.gram;
        let xx = arith::mul(h2, arith::mul(a.x, b.x, WHAT)?, WHAT)?;
        let mixed = arith::add(arith::mul(a.x, b.y, WHAT)?, arith::mul(a.y, b.x, WHAT)?, WHAT)?;
        let xy = arith::mul(hc, mixed, WHAT)?;
        let yy = arith::mul(c2, arith::mul(a.y, b.y, WHAT)?, WHAT)?;
        arith::add(arith::add(xx, xy, WHAT)?, yy, WHAT)
    }

    /// Picard-Lefschetz reflection `D -> D + (D.root) root` in a (-2)-class.
    pub fn reflect(&self, class: DivisorClass, root: DivisorClass) -> Result<DivisorClass> {
        let root_sq = self.self_int(root)?;
        if root_sq != -2 {
            return Err(Error::NotARoot(root_sq));
        }
        let t = self.pair(class, root)?;
        class.checked_add(root.checked_scale(t)?)
    }
}

impl fmt::Display for GramLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [_, c]] = self.gram;
        write!(f, "[[{a}, {b}], [{b}, {c}]] (lambda = {})", self.lambda)
    }
}

/// Checked `i64` helpers shared by the solvers.
pub(crate) mod arith {
    use crate::error::{Error, Result};

    pub fn mul(a: i64, b: i64, what: &'static str) -> Result<i64> {
        a.checked_mul(b).ok_or(Error::Overflow(what))
    }

    pub fn add(a: i64, b: i64, what: &'static str) -> Result<i64> {
        a.checked_add(b).ok_or(Error::Overflow(what))
    }

    pub fn sub(a: i64, b: i64, what: &'static str) -> Result<i64> {
        a.checked_sub(b).ok_or(Error::Overflow(what))
    }

    /// `Some(r)` with `r >= 0` and `r * r == v`, if `v` is a perfect square.
    pub fn exact_sqrt(v: i64) -> Option<i64> {
        if v < 0 {
            return None;
        }
        let r = v.isqrt();
        (r * r == v).then_some(r)
    }

    /// `a | b`, where `0 | b` only for `b = 0`.
    pub fn divides(a: i64, b: i64) -> bool {
        if a == 0 {
            b == 0
        } else {
            b % a == 0
        }
    }

    /// Exact quotient `num / den`, or `None` if `den` does not divide `num`.
    pub fn exact_div(num: i64, den: i64) -> Option<i64> {
        if den != 0 && num % den == 0 {
            Some(num / den)
        } else {
            None
        }
    }

    /// `a ≡ ±r (mod m)`.
    pub fn congruent_pm(a: i64, r: i64, m: i64) -> bool {
        (a - r).rem_euclid(m) == 0 || (a + r).rem_euclid(m) == 0
    }

    /// `a ≡ r (mod m)`.
    pub fn congruent(a: i64, r: i64, m: i64) -> bool {
        (a - r).rem_euclid(m) == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lat(n: i64, d: i64, g: i64) -> GramLattice {
        GramLattice::from_triple(n, d, g).unwrap()
    }

    #[test]
    fn gram_and_lambda() {
        let l = lat(2, 5, 3);
        assert_eq!(l.gram(), [[4, 5], [5, 4]]);
        assert_eq!(l.lambda(), 9);

        let l = lat(2, 1, 0);
        assert_eq!(l.gram(), [[4, 1], [1, -2]]);
        assert_eq!(l.lambda(), 9);

        let l = lat(9, 6, 2);
        assert_eq!(l.gram(), [[18, 6], [6, 2]]);
        assert_eq!(l.lambda(), 0);
    }

    #[test]
    fn rejects_out_of_domain() {
        assert!(matches!(CurveQuery::new(1, 5, 3), Err(Error::Domain(_))));
        assert!(matches!(CurveQuery::new(2, 0, 3), Err(Error::Domain(_))));
        assert!(matches!(CurveQuery::new(2, 5, -1), Err(Error::Domain(_))));
        assert!(GramLattice::from_triple(2, -5, 3).is_err());
    }

    #[test]
    fn self_intersection_and_pairing() {
        let l = lat(2, 5, 3);
        let gamma = DivisorClass::new(-1, 1);
        assert_eq!(l.self_int(DivisorClass::H).unwrap(), 4);
        assert_eq!(l.self_int(DivisorClass::C).unwrap(), 4);
        assert_eq!(l.self_int(gamma).unwrap(), -2);
        assert_eq!(l.pair(DivisorClass::H, DivisorClass::C).unwrap(), 5);
        assert_eq!(l.pair(gamma, DivisorClass::C).unwrap(), -1);
        assert_eq!(l.pair(gamma, DivisorClass::H).unwrap(), 1);
    }

    #[test]
    fn reflection_examples() {
        let l = lat(2, 5, 3);
        let gamma = DivisorClass::new(-1, 1);
        assert_eq!(l.reflect(DivisorClass::H, gamma).unwrap(), DivisorClass::C);
        assert_eq!(l.reflect(gamma, gamma).unwrap(), DivisorClass::new(1, -1));
        // H.gamma = 1 and C.gamma = -1, so H + C is orthogonal to gamma.
        let fixed = DivisorClass::new(1, 1);
        assert_eq!(l.pair(fixed, gamma).unwrap(), 0);
        assert_eq!(l.reflect(fixed, gamma).unwrap(), fixed);
    }

    #[test]
    fn reflection_rejects_non_roots() {
        let l = lat(2, 5, 3);
        assert_eq!(l.reflect(DivisorClass::H, DivisorClass::H), Err(Error::NotARoot(4)));
    }

    #[test]
    fn overflow_is_reported() {
        let l = lat(1_000_000, 1_000_000, 3);
        let huge = DivisorClass::new(i64::MAX / 2, 1);
        assert!(matches!(l.self_int(huge), Err(Error::Overflow(_))));
        assert!(GramLattice::raw(i64::MAX, 1, 0).is_err());
    }

    #[test]
    fn quadratic_identities_exhaustive() {
        for (n, d, g) in [(2, 5, 3), (3, 7, 5), (5, 3, 1), (12, 40, 34), (9, 6, 2), (4, 1, 0)] {
            let l = lat(n, d, g);
            for x in -10..=10 {
                for y in -10..=10 {
                    let e = DivisorClass::new(x, y);
                    let sq = l.self_int(e).unwrap();
                    let eh = l.pair(e, DivisorClass::H).unwrap();
                    let ec = l.pair(e, DivisorClass::C).unwrap();
                    assert_eq!(sq % 2, 0);
                    assert_eq!(2 * n * sq, eh * eh - l.lambda() * y * y);
                    if g == 1 {
                        assert_eq!(ec, d * x);
                    } else {
                        assert_eq!(2 * (g - 1) * sq, ec * ec - l.lambda() * x * x);
                    }
                }
            }
        }
    }

    fn lattice_strategy() -> impl Strategy<Value = GramLattice> {
        (2i64..200, 1i64..500, 0i64..2000).prop_map(|(n, d, g)| lat(n, d, g))
    }

    fn class_strategy() -> impl Strategy<Value = DivisorClass> {
        (-1000i64..1000, -1000i64..1000).prop_map(|(x, y)| DivisorClass::new(x, y))
    }

    proptest! {
        #[test]
        fn determinant_identity(l in lattice_strategy()) {
            let hc = l.pair(DivisorClass::H, DivisorClass::C).unwrap();
            let hh = l.self_int(DivisorClass::H).unwrap();
            let cc = l.self_int(DivisorClass::C).unwrap();
            let [[a, b], [c, e]] = l.gram();
            prop_assert_eq!(l.lambda(), hc * hc - hh * cc);
            prop_assert_eq!(l.lambda(), -(a * e - b * c));
            prop_assert_eq!(a % 2, 0);
            prop_assert_eq!(e % 2, 0);
        }

        #[test]
        fn lambda_identities(l in lattice_strategy(), e in class_strategy()) {
            let sq = l.self_int(e).unwrap();
            let eh = l.pair(e, DivisorClass::H).unwrap();
            let ec = l.pair(e, DivisorClass::C).unwrap();
            prop_assert_eq!(sq % 2, 0);
            prop_assert_eq!(2 * l.n() * sq, eh * eh - l.lambda() * e.y * e.y);
            prop_assert_eq!(2 * (l.g() - 1) * sq, ec * ec - l.lambda() * e.x * e.x);
        }

        #[test]
        fn pairing_is_bilinear(l in lattice_strategy(), a in class_strategy(), b in class_strategy(), c in class_strategy()) {
            let ab = l.pair(a, b).unwrap();
            prop_assert_eq!(ab, l.pair(b, a).unwrap());
            let sum = a.checked_add(c).unwrap();
            prop_assert_eq!(l.pair(sum, b).unwrap(), ab + l.pair(c, b).unwrap());
            prop_assert_eq!(l.pair(a, a).unwrap(), l.self_int(a).unwrap());
        }

        // C - H is a (-2)-class on every (2n+1, n+1) lattice.
        #[test]
        fn reflection_is_isometric_involution(n in 2i64..100, a in class_strategy(), b in class_strategy()) {
            let l = lat(n, 2 * n + 1, n + 1);
            let root = DivisorClass::new(-1, 1);
            let ra = l.reflect(a, root).unwrap();
            let rb = l.reflect(b, root).unwrap();
            prop_assert_eq!(l.reflect(ra, root).unwrap(), a);
            prop_assert_eq!(l.pair(ra, rb).unwrap(), l.pair(a, b).unwrap());
        }
    }

    #[test]
    fn arith_helpers() {
        assert_eq!(arith::exact_sqrt(0), Some(0));
        assert_eq!(arith::exact_sqrt(49), Some(7));
        assert_eq!(arith::exact_sqrt(50), None);
        assert_eq!(arith::exact_sqrt(-4), None);
        assert!(arith::divides(0, 0));
        assert!(!arith::divides(0, 4));
        assert!(arith::divides(3, -6));
        assert!(arith::congruent_pm(7, 1, 6));
        assert!(arith::congruent_pm(5, 1, 6));
        assert!(!arith::congruent_pm(3, 1, 6));
    }
}

//! Q-divisor intersection theory on the Hirzebruch surface F_1 and the
//! classification of maximal orders on it by ramification data: the
//! del Pezzo criterion and the generic fiber type.
//!
//! The Picard lattice is Z·H + Z·E with H² = 1, H·E = 0, E² = -1, where H
//! pulls back the hyperplane class and E is the exceptional curve. The nef
//! cone is spanned by the fiber f = H - E and the section C_0 = E.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("order degree must be at least 1")]
    ZeroDegree,
    #[error("ramification index must be at least 2 when the ramification class is nonzero")]
    TrivialRamificationIndex,
}

/// Q-divisor on F_1 in the (H, E) basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorF1 {
    pub coeff_h: BigRational,
    pub coeff_e: BigRational,
}

impl DivisorF1 {
    pub fn new(coeff_h: BigRational, coeff_e: BigRational) -> Self {
        DivisorF1 { coeff_h, coeff_e }
    }

    pub fn from_int(h: i64, e: i64) -> Self {
        DivisorF1 {
            coeff_h: BigRational::from_integer(BigInt::from(h)),
            coeff_e: BigRational::from_integer(BigInt::from(e)),
        }
    }

    pub fn zero() -> Self {
        Self::from_int(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeff_h.is_zero() && self.coeff_e.is_zero()
    }

    /// Intersection number D1 · D2 = h1 h2 - e1 e2.
    pub fn intersect(&self, other: &DivisorF1) -> BigRational {
        &self.coeff_h * &other.coeff_h - &self.coeff_e * &other.coeff_e
    }

    pub fn neg(&self) -> DivisorF1 {
        DivisorF1 {
            coeff_h: -self.coeff_h.clone(),
            coeff_e: -self.coeff_e.clone(),
        }
    }

    pub fn add(&self, other: &DivisorF1) -> DivisorF1 {
        DivisorF1 {
            coeff_h: &self.coeff_h + &other.coeff_h,
            coeff_e: &self.coeff_e + &other.coeff_e,
        }
    }

    pub fn scale(&self, factor: &BigRational) -> DivisorF1 {
        DivisorF1 {
            coeff_h: &self.coeff_h * factor,
            coeff_e: &self.coeff_e * factor,
        }
    }
}

impl std::fmt::Display for DivisorF1 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})H", self.coeff_h)?;
        if self.coeff_e.is_negative() {
            write!(f, " - ({})E", -self.coeff_e.clone())
        } else {
            write!(f, " + ({})E", self.coeff_e)
        }
    }
}

/// Generators of the nef (Mori-Kleiman) cone: the fiber f = H - E of the
/// ruling and the section C_0 = E, from p*(H) = C_0 + f and E = C_0.
pub fn cone_generators() -> (DivisorF1, DivisorF1) {
    (DivisorF1::from_int(1, -1), DivisorF1::from_int(0, 1))
}

/// Canonical class of F_1 itself: -3H + E.
pub fn canonical_f1() -> DivisorF1 {
    DivisorF1::from_int(-3, 1)
}

/// A maximal order on F_1, reduced to the data that enters the divisor
/// computations: its degree, the class of its ramification curve, and the
/// (uniform) ramification index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderSpec {
    pub degree: usize,
    pub ramification_class: DivisorF1,
    pub ramification_index: usize,
}

impl OrderSpec {
    pub fn new(
        degree: usize,
        ramification_class: DivisorF1,
        ramification_index: usize,
    ) -> Result<Self, GeometryError> {
        if degree == 0 {
            return Err(GeometryError::ZeroDegree);
        }
        if !ramification_class.is_zero() && ramification_index < 2 {
            return Err(GeometryError::TrivialRamificationIndex);
        }
        Ok(OrderSpec {
            degree,
            ramification_class,
            ramification_index,
        })
    }

    /// The order of degree m ramified on (the pullback of) a cubic curve
    /// with index m. Degree 1 is the trivial order: it is unramified, so the
    /// ramification class is empty.
    pub fn cubic(degree: usize) -> Result<Self, GeometryError> {
        if degree == 0 {
            return Err(GeometryError::ZeroDegree);
        }
        if degree == 1 {
            Self::new(1, DivisorF1::zero(), 1)
        } else {
            Self::new(degree, DivisorF1::from_int(3, 0), degree)
        }
    }

    /// Canonical class of the order:
    /// K_A = K_F1 + (1 - 1/e) · (ramification class).
    pub fn order_canonical(&self) -> DivisorF1 {
        let mut k = canonical_f1();
        if !self.ramification_class.is_zero() {
            let e = BigRational::from_integer(BigInt::from(self.ramification_index as i64));
            let weight = BigRational::one() - BigRational::one() / e;
            k = k.add(&self.ramification_class.scale(&weight));
        }
        k
    }

    /// Kleiman test for -K_A ample: intersect -K_A with the extremal rays f
    /// and C_0 of the nef cone and require both numbers strictly positive.
    pub fn is_del_pezzo(&self) -> DelPezzoReport {
        let minus_k = self.order_canonical().neg();
        let (fiber, section) = cone_generators();
        let against_fiber = minus_k.intersect(&fiber);
        let against_section = minus_k.intersect(&section);
        let is_del_pezzo = against_fiber.is_positive() && against_section.is_positive();
        DelPezzoReport {
            minus_k_dot_fiber: against_fiber,
            minus_k_dot_section: against_section,
            is_del_pezzo,
        }
    }

    /// Classify the order restricted to a generic fiber of the ruling by
    /// its ramification pattern. The number of ramification points on the
    /// fiber is the intersection number of the ramification class with f.
    pub fn generic_fiber_type(&self) -> FiberReport {
        let (fiber, _) = cone_generators();
        let points = self.ramification_class.intersect(&fiber);
        let three = BigRational::from_integer(BigInt::from(3));
        let two = BigRational::from_integer(BigInt::from(2));
        let fiber_type = if self.degree == 2 && points == three && self.ramification_index == 2 {
            FiberType::HalfRuled
        } else if self.degree == 3 && points == three && self.ramification_index == 3 {
            FiberType::Elliptic
        } else if points == two && !self.ramification_class.is_zero() {
            // interpreted as: exactly two ramification points of equal index
            FiberType::Ruled
        } else {
            FiberType::Other
        };
        FiberReport {
            degree: self.degree,
            points,
            index: self.ramification_index,
            fiber_type,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberType {
    Ruled,
    HalfRuled,
    Elliptic,
    Other,
}

impl std::fmt::Display for FiberType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            FiberType::Ruled => "ruled",
            FiberType::HalfRuled => "half-ruled",
            FiberType::Elliptic => "elliptic",
            FiberType::Other => "other",
        };
        write!(f, "{name}")
    }
}

/// Outcome of the Kleiman positivity test, with both intersection numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelPezzoReport {
    pub minus_k_dot_fiber: BigRational,
    pub minus_k_dot_section: BigRational,
    pub is_del_pezzo: bool,
}

impl DelPezzoReport {
    /// Positivity convention used by the test. Ampleness needs strict
    /// positivity on the extremal rays of the closed cone, so a zero
    /// intersection number is rejected even though nef-ness alone would
    /// allow it.
    pub const CRITERION: &'static str =
        "del Pezzo iff -K_A · f > 0 and -K_A · C_0 > 0 (strict; a zero value is not ample)";
}

impl std::fmt::Display for DelPezzoReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "-K_A . f   = {}", self.minus_k_dot_fiber)?;
        writeln!(f, "-K_A . C_0 = {}", self.minus_k_dot_section)?;
        writeln!(f, "del Pezzo:   {}", if self.is_del_pezzo { "yes" } else { "no" })?;
        write!(f, "criterion:   {}", Self::CRITERION)
    }
}

/// Ramification pattern of the order over the generic point of the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberReport {
    pub degree: usize,
    pub points: BigRational,
    pub index: usize,
    pub fiber_type: FiberType,
}

impl FiberReport {
    /// The `ruled` verdict reads the pattern "(e, e)" as exactly two
    /// ramification points carrying the same index; this is an
    /// interpretation of the pattern notation, recorded here.
    pub const RULED_NOTE: &'static str =
        "ruled = two ramification points of equal index on the generic fiber (interpreted)";
}

impl std::fmt::Display for FiberReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "degree:      {}", self.degree)?;
        writeln!(f, "points:      {}", self.points)?;
        writeln!(f, "index:       {}", self.index)?;
        write!(f, "fiber type:  {}", self.fiber_type)
    }
}

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::RiemannError;
use crate::exact::{Polynomial, Rational};

/// The genus-2 curve `y² = f(x)` with `f` monic, squarefree, of degree 6.
#[derive(Clone, PartialEq, Eq)]
pub struct Curve {
    f: Arc<Polynomial>,
}

impl Curve {
    pub fn new(f: Polynomial) -> Result<Self, RiemannError> {
        if f.degree() != Some(6) || !f.is_monic() {
            return Err(RiemannError::NotMonicSextic(f.to_string()));
        }
        if !f.is_squarefree() {
            return Err(RiemannError::NotSquarefree(f.to_string()));
        }
        Ok(Curve { f: Arc::new(f) })
    }

    /// `y² = x(x−1)(x−2)(x−3)(x−4)(x−5)`.
    pub fn default_curve() -> Self {
        let roots: Vec<Rational> = (0..6).map(Rational::from).collect();
        Curve::new(Polynomial::from_roots(&roots)).expect("default curve is valid")
    }

    pub fn from_roots(roots: &[Rational]) -> Result<Self, RiemannError> {
        Curve::new(Polynomial::from_roots(roots))
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub(crate) fn f_arc(&self) -> &Arc<Polynomial> {
        &self.f
    }

    pub fn genus(&self) -> usize {
        2
    }

    /// Rational roots of `f`, in increasing order.
    pub fn rational_roots(&self) -> Vec<Rational> {
        rational_roots(&self.f)
    }

    /// The six branch points, when they are all rational.
    pub fn branch_points(&self) -> Option<Vec<Rational>> {
        let r = self.rational_roots();
        (r.len() == 6).then_some(r)
    }

    /// Checks that a point lies on this curve.
    pub fn validate_point(&self, p: &PointSpec) -> Result<(), RiemannError> {
        match p {
            PointSpec::Affine { x, y } => {
                if y.is_zero() || y * y != self.f.eval(x) {
                    return Err(RiemannError::BadPoint(p.to_string()));
                }
            }
            PointSpec::Branch(e) => {
                if !self.f.eval(e).is_zero() {
                    return Err(RiemannError::BadPoint(p.to_string()));
                }
            }
            PointSpec::InfPlus | PointSpec::InfMinus => {}
        }
        Ok(())
    }
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Curve(y^2 = {})", self.f)
    }
}

impl Serialize for Curve {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            f: &'a [Rational],
        }
        Repr { f: self.f.coeffs() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Curve {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            f: Vec<Rational>,
        }
        let r = Repr::deserialize(deserializer)?;
        Curve::new(Polynomial::new(r.f)).map_err(serde::de::Error::custom)
    }
}

/// A point of the curve. Affine points are non-branch points `(x₀, y₀)` with
/// `y₀ ≠ 0`; `InfPlus`/`InfMinus` are the two points over `x = ∞`, where
/// `y/x³ → +1` and `−1` respectively.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointSpec {
    Affine { x: Rational, y: Rational },
    Branch(Rational),
    InfPlus,
    InfMinus,
}

impl PointSpec {
    pub fn is_infinite(&self) -> bool {
        matches!(self, PointSpec::InfPlus | PointSpec::InfMinus)
    }

    /// Image under the hyperelliptic involution `y ↦ −y`.
    pub fn conjugate(&self) -> PointSpec {
        match self {
            PointSpec::Affine { x, y } => PointSpec::Affine {
                x: x.clone(),
                y: -y,
            },
            PointSpec::Branch(e) => PointSpec::Branch(e.clone()),
            PointSpec::InfPlus => PointSpec::InfMinus,
            PointSpec::InfMinus => PointSpec::InfPlus,
        }
    }

    /// x-coordinate of a finite point.
    pub fn x(&self) -> Option<&Rational> {
        match self {
            PointSpec::Affine { x, .. } | PointSpec::Branch(x) => Some(x),
            _ => None,
        }
    }
}

impl fmt::Display for PointSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointSpec::Affine { x, y } => write!(f, "affine:{x},{y}"),
            PointSpec::Branch(e) => write!(f, "branch:{e}"),
            PointSpec::InfPlus => write!(f, "inf+"),
            PointSpec::InfMinus => write!(f, "inf-"),
        }
    }
}

impl fmt::Debug for PointSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PointSpec {
    type Err = RiemannError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RiemannError::BadPoint(s.to_string());
        match s.trim() {
            "inf+" => Ok(PointSpec::InfPlus),
            "inf-" => Ok(PointSpec::InfMinus),
            other => {
                if let Some(e) = other.strip_prefix("branch:") {
                    Ok(PointSpec::Branch(e.parse().map_err(|_| bad())?))
                } else if let Some(xy) = other.strip_prefix("affine:") {
                    let (x, y) = xy.split_once(',').ok_or_else(bad)?;
                    Ok(PointSpec::Affine {
                        x: x.parse().map_err(|_| bad())?,
                        y: y.parse().map_err(|_| bad())?,
                    })
                } else {
                    Err(bad())
                }
            }
        }
    }
}

impl Serialize for PointSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PointSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let other = &n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

/// Distinct rational roots by the rational root test.
pub fn rational_roots(p: &Polynomial) -> Vec<Rational> {
    let mut roots = Vec::new();
    let mut p = p.clone();
    while p.degree().is_some_and(|d| d > 0) && p.coeff(0).is_zero() {
        if !roots.contains(&Rational::zero()) {
            roots.push(Rational::zero());
        }
        p = p.div_rem(&Polynomial::x()).0;
    }
    if p.degree().is_none_or(|d| d == 0) {
        roots.sort();
        return roots;
    }
    let lcm = Rational::common_denominator(p.coeffs());
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * &Rational::from(lcm.clone())).numer().clone())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let a0 = &ints[0] / &g;
    let an = &ints[ints.len() - 1] / &g;
    for num in positive_divisors(&a0) {
        for den in positive_divisors(&an) {
            for sign in [1, -1] {
                let r = Rational::new(&num * sign, den.clone());
                if !roots.contains(&r) && p.eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

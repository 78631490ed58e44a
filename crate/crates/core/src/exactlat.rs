//! Exact rational lattice geometry on a flat 2-torus `R^2 / Z^2` whose metric
//! is given by a rational Gram matrix on the fixed basis `e1, e2`.
//!
//! Everything here is exact. Lengths appear only squared; square roots are
//! taken downstream in [`crate::cylinder`].

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, ext_gcd, floor, Int, Rational};
use crate::error::{Error, Result};

/// Squared lengths and inner product of the basis `e1, e2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GramMatrix {
    #[serde(with = "arith::rational_str")]
    pub g11: Rational,
    #[serde(with = "arith::rational_str")]
    pub g12: Rational,
    #[serde(with = "arith::rational_str")]
    pub g22: Rational,
}

impl GramMatrix {
    pub fn new(g11: Rational, g12: Rational, g22: Rational) -> Self {
        GramMatrix { g11, g12, g22 }
    }

    pub fn det(&self) -> Rational {
        &self.g11 * &self.g22 - &self.g12 * &self.g12
    }

    pub fn is_positive_definite(&self) -> bool {
        self.g11.is_positive() && self.det().is_positive()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Orientation {
    #[default]
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> i32 {
        match self {
            Orientation::Positive => 1,
            Orientation::Negative => -1,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }

    pub fn from_sign(sign: i64) -> Result<Self> {
        match sign {
            1 => Ok(Orientation::Positive),
            -1 => Ok(Orientation::Negative),
            _ => Err(Error::Parse(format!("orientation must be +1 or -1, got {sign}"))),
        }
    }
}

impl Serialize for Orientation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i32(self.sign())
    }
}

impl<'de> Deserialize<'de> for Orientation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Orientation::from_sign(v).map_err(serde::de::Error::custom)
    }
}

/// An oriented flat torus. The base point is immaterial (the torus is
/// homogeneous) and is not stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlatTorus {
    gram: GramMatrix,
    #[serde(default)]
    orientation: Orientation,
}

/// Coordinates of a lattice vector in the basis `e1, e2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    pub x: Int,
    pub y: Int,
}

impl Serialize for LatticeVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        arith::int_pair::serialize(&(self.x.clone(), self.y.clone()), s)
    }
}

impl<'de> Deserialize<'de> for LatticeVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (x, y) = arith::int_pair::deserialize(d)?;
        Ok(LatticeVector { x, y })
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl LatticeVector {
    pub fn new(x: impl Into<Int>, y: impl Into<Int>) -> Self {
        LatticeVector { x: x.into(), y: y.into() }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_primitive(&self) -> bool {
        self.x.gcd(&self.y).is_one()
    }

    pub fn check_primitive(&self) -> Result<()> {
        if self.is_primitive() {
            Ok(())
        } else {
            Err(Error::NonPrimitive(self.x.to_string(), self.y.to_string()))
        }
    }

    /// `det(self, other) = x1*y2 - y1*x2`.
    pub fn det(&self, other: &LatticeVector) -> Int {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn add_multiple(&self, n: &Int, other: &LatticeVector) -> LatticeVector {
        LatticeVector {
            x: &self.x + n * &other.x,
            y: &self.y + n * &other.y,
        }
    }

    pub fn scaled(&self, n: &Int) -> LatticeVector {
        LatticeVector { x: n * &self.x, y: n * &self.y }
    }

    /// `a*u + b*w`.
    pub fn combination(a: &Int, u: &LatticeVector, b: &Int, w: &LatticeVector) -> LatticeVector {
        LatticeVector {
            x: a * &u.x + b * &w.x,
            y: a * &u.y + b * &w.y,
        }
    }

    pub fn same_line(&self, other: &LatticeVector) -> bool {
        self.det(other).is_zero()
    }
}

impl std::ops::Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector { x: -&self.x, y: -&self.y }
    }
}

impl std::ops::Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector { x: &self.x - &rhs.x, y: &self.y - &rhs.y }
    }
}

/// An oriented lattice basis `{v, vhat}` with its twist
/// `theta = <v, vhat> / |v|^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Marking {
    pub v: LatticeVector,
    pub vhat: LatticeVector,
    #[serde(with = "arith::rational_str")]
    pub theta: Rational,
}

impl Marking {
    pub fn is_normalized(&self) -> bool {
        !self.theta.is_negative() && self.theta < Rational::one()
    }
}

/// Squared boundary length, twist and squared translation length of the
/// twisted cylinder attached to a normalized marking.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkingParams {
    #[serde(with = "arith::rational_str")]
    pub r_sq: Rational,
    #[serde(with = "arith::rational_str")]
    pub theta: Rational,
    #[serde(with = "arith::rational_str")]
    pub t_sq: Rational,
}

/// Integer matrix `[[a, b], [c, d]]` with determinant +1. Its columns are the
/// new basis vectors written in the old basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Unimodular {
    pub a: Int,
    pub b: Int,
    pub c: Int,
    pub d: Int,
}

impl Unimodular {
    pub fn new(a: impl Into<Int>, b: impl Into<Int>, c: impl Into<Int>, d: impl Into<Int>) -> Result<Self> {
        let m = Unimodular { a: a.into(), b: b.into(), c: c.into(), d: d.into() };
        let det = m.det();
        if det.is_one() {
            Ok(m)
        } else {
            Err(Error::NotUnimodular(det.to_string()))
        }
    }

    pub fn identity() -> Self {
        Unimodular { a: Int::one(), b: Int::zero(), c: Int::zero(), d: Int::one() }
    }

    pub fn det(&self) -> Int {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn mul(&self, o: &Unimodular) -> Unimodular {
        Unimodular {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn inverse(&self) -> Unimodular {
        Unimodular { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        LatticeVector {
            x: &self.a * &v.x + &self.b * &v.y,
            y: &self.c * &v.x + &self.d * &v.y,
        }
    }

    /// New coordinates of a vector after the basis change: `U^-1 v`.
    pub fn transform(&self, v: &LatticeVector) -> LatticeVector {
        self.inverse().apply(v)
    }
}

impl FlatTorus {
    pub fn new(gram: GramMatrix, orientation: Orientation) -> Result<Self> {
        if !gram.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(FlatTorus { gram, orientation })
    }

    pub fn from_gram(g11: Rational, g12: Rational, g22: Rational) -> Result<Self> {
        FlatTorus::new(GramMatrix::new(g11, g12, g22), Orientation::Positive)
    }

    pub fn unit_square() -> Self {
        FlatTorus::rectangular(Rational::one(), Rational::one()).unwrap()
    }

    /// `S^1_{r1} x S^1_{r2}` given the squared circle lengths.
    pub fn rectangular(r1_sq: Rational, r2_sq: Rational) -> Result<Self> {
        FlatTorus::from_gram(r1_sq, Rational::zero(), r2_sq)
    }

    pub fn gram(&self) -> &GramMatrix {
        &self.gram
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn with_orientation(&self, orientation: Orientation) -> FlatTorus {
        FlatTorus { gram: self.gram.clone(), orientation }
    }

    pub fn is_rectangular(&self) -> bool {
        self.gram.g12.is_zero()
    }

    /// `<u, w> = u^T G w`.
    pub fn inner(&self, u: &LatticeVector, w: &LatticeVector) -> Rational {
        let g = &self.gram;
        let ux = arith::rat_int(&u.x);
        let uy = arith::rat_int(&u.y);
        let wx = arith::rat_int(&w.x);
        let wy = arith::rat_int(&w.y);
        &g.g11 * &ux * &wx + &g.g12 * (&ux * &wy + &uy * &wx) + &g.g22 * &uy * &wy
    }

    pub fn norm_sq(&self, u: &LatticeVector) -> Rational {
        self.inner(u, u)
    }

    /// Squared covolume `det G`.
    pub fn covolume_sq(&self) -> Rational {
        self.gram.det()
    }

    /// `theta(v, w) = <v, w> / |v|^2`.
    pub fn twist(&self, v: &LatticeVector, w: &LatticeVector) -> Rational {
        self.inner(v, w) / self.norm_sq(v)
    }

    /// The unique oriented marking `{v, vhat}` with twist in `[0, 1)`.
    ///
    /// Any `w` with `det(v, w) = orientation` works as a starting point; the
    /// shift `vhat = w - floor(theta(v, w)) v` removes the choice.
    pub fn normalized_marking(&self, v: &LatticeVector) -> Result<Marking> {
        v.check_primitive()?;
        let (g, alpha, beta) = ext_gcd(&v.x, &v.y);
        debug_assert!(g.is_one());
        // x*alpha + y*beta = 1, so det(v, (-beta, alpha)) = 1.
        let sign = Int::from(self.orientation.sign());
        let w = LatticeVector { x: -beta * &sign, y: alpha * &sign };
        let theta0 = self.twist(v, &w);
        let shift = floor(&theta0);
        let vhat = w.add_multiple(&-&shift, v);
        let theta = theta0 - arith::rat_int(&shift);
        Ok(Marking { v: v.clone(), vhat, theta })
    }

    /// `(|v|^2, theta, |vhat - theta v|^2)`; satisfies `r_sq * t_sq = det G`.
    pub fn marking_params(&self, m: &Marking) -> Result<MarkingParams> {
        if !m.is_normalized() {
            return Err(Error::NotNormalized(m.theta.to_string()));
        }
        let r_sq = self.norm_sq(&m.v);
        // |vhat - theta v|^2 = |vhat|^2 - theta^2 |v|^2 since theta |v|^2 = <v, vhat>.
        let t_sq = self.norm_sq(&m.vhat) - &m.theta * &m.theta * &r_sq;
        Ok(MarkingParams { r_sq, theta: m.theta.clone(), t_sq })
    }

    /// Re-coordinatizes the torus on the basis given by the columns of `u`.
    /// Gram becomes `U^T G U`; vectors move by [`Unimodular::transform`].
    pub fn change_of_basis(&self, u: &Unimodular) -> FlatTorus {
        let e1 = LatticeVector { x: u.a.clone(), y: u.c.clone() };
        let e2 = LatticeVector { x: u.b.clone(), y: u.d.clone() };
        FlatTorus {
            gram: GramMatrix::new(self.norm_sq(&e1), self.inner(&e1, &e2), self.norm_sq(&e2)),
            orientation: self.orientation,
        }
    }
}

/// Checks a would-be basis change matrix and applies it.
pub fn change_of_basis(torus: &FlatTorus, a: i64, b: i64, c: i64, d: i64) -> Result<FlatTorus> {
    Ok(torus.change_of_basis(&Unimodular::new(a, b, c, d)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn half_gram() -> FlatTorus {
        FlatTorus::from_gram(rat(1, 1), rat(1, 2), rat(1, 1)).unwrap()
    }

    fn lv(x: i64, y: i64) -> LatticeVector {
        LatticeVector::new(x, y)
    }

    #[test]
    fn inner_examples() {
        let sq = FlatTorus::unit_square();
        assert_eq!(sq.inner(&lv(1, 0), &lv(0, 1)), rat(0, 1));
        assert_eq!(half_gram().inner(&lv(1, 0), &lv(0, 1)), rat(1, 2));
        assert_eq!(sq.inner(&lv(2, 1), &lv(1, 1)), rat(3, 1));
    }

    #[test]
    fn covolume_examples() {
        assert_eq!(FlatTorus::unit_square().covolume_sq(), rat(1, 1));
        assert_eq!(half_gram().covolume_sq(), rat(3, 4));
        let rect = FlatTorus::rectangular(rat(4, 1), rat(9, 4)).unwrap();
        assert_eq!(rect.covolume_sq(), rat(9, 1));
    }

    #[test]
    fn rejects_indefinite() {
        assert_eq!(
            FlatTorus::from_gram(rat(1, 1), rat(1, 1), rat(1, 1)),
            Err(Error::NotPositiveDefinite)
        );
        assert!(FlatTorus::from_gram(rat(-1, 1), rat(0, 1), rat(-1, 1)).is_err());
    }

    #[test]
    fn marking_examples() {
        let sq = FlatTorus::unit_square();
        let m = sq.normalized_marking(&lv(1, 0)).unwrap();
        assert_eq!((m.vhat, m.theta), (lv(0, 1), rat(0, 1)));

        let m = half_gram().normalized_marking(&lv(1, 0)).unwrap();
        assert_eq!((m.vhat, m.theta), (lv(0, 1), rat(1, 2)));

        let m = sq.normalized_marking(&lv(2, 1)).unwrap();
        assert_eq!((m.vhat, m.theta), (lv(1, 1), rat(3, 5)));

        for q in 1..=20i64 {
            let m = sq.normalized_marking(&lv(q, 1)).unwrap();
            assert_eq!(m.vhat, lv(q - 1, 1));
            assert_eq!(m.theta, rat(q * q - q + 1, q * q + 1));
        }
    }

    #[test]
    fn marking_at_q_zero_is_normalized() {
        // (q-1, 1) at q = 0 would have twist 1; the normalized partner is (-1, 0).
        let m = FlatTorus::unit_square().normalized_marking(&lv(0, 1)).unwrap();
        assert_eq!((m.vhat, m.theta), (lv(-1, 0), rat(0, 1)));
    }

    #[test]
    fn marking_rejects_non_primitive() {
        let sq = FlatTorus::unit_square();
        assert!(matches!(sq.normalized_marking(&lv(2, 4)), Err(Error::NonPrimitive(..))));
        assert!(matches!(sq.normalized_marking(&lv(0, 0)), Err(Error::NonPrimitive(..))));
        assert!(matches!(sq.normalized_marking(&lv(0, 3)), Err(Error::NonPrimitive(..))));
    }

    #[test]
    fn axis_vectors_take_the_same_path() {
        let sq = FlatTorus::unit_square();
        for v in [lv(1, 0), lv(-1, 0), lv(0, 1), lv(0, -1)] {
            let m = sq.normalized_marking(&v).unwrap();
            assert_eq!(v.det(&m.vhat), int(1));
            assert!(m.is_normalized());
        }
    }

    #[test]
    fn negative_orientation_marking() {
        let t = FlatTorus::unit_square().with_orientation(Orientation::Negative);
        let m = t.normalized_marking(&lv(1, 0)).unwrap();
        assert_eq!(m.vhat, lv(0, -1));
        assert_eq!(lv(1, 0).det(&m.vhat), int(-1));
    }

    #[test]
    fn params_examples() {
        let sq = FlatTorus::unit_square();
        let m = sq.normalized_marking(&lv(1, 0)).unwrap();
        let p = sq.marking_params(&m).unwrap();
        assert_eq!((p.r_sq, p.theta, p.t_sq), (rat(1, 1), rat(0, 1), rat(1, 1)));

        let m = sq.normalized_marking(&lv(1, 1)).unwrap();
        assert_eq!(m.vhat, lv(0, 1));
        let p = sq.marking_params(&m).unwrap();
        assert_eq!((p.r_sq, p.theta, p.t_sq), (rat(2, 1), rat(1, 2), rat(1, 2)));

        let t = half_gram();
        let m = t.normalized_marking(&lv(1, 0)).unwrap();
        let p = t.marking_params(&m).unwrap();
        assert_eq!((p.r_sq, p.theta, p.t_sq), (rat(1, 1), rat(1, 2), rat(3, 4)));
    }

    #[test]
    fn params_reject_unnormalized() {
        let sq = FlatTorus::unit_square();
        let m = Marking { v: lv(1, 0), vhat: lv(1, 1), theta: rat(1, 1) };
        assert!(matches!(sq.marking_params(&m), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn change_of_basis_examples() {
        let sq = FlatTorus::unit_square();
        assert_eq!(sq.change_of_basis(&Unimodular::identity()), sq);
        let t = change_of_basis(&sq, 1, 1, 0, 1).unwrap();
        assert_eq!(t.gram(), &GramMatrix::new(rat(1, 1), rat(1, 1), rat(2, 1)));
        assert!(matches!(change_of_basis(&sq, 2, 0, 0, 1), Err(Error::NotUnimodular(_))));
        assert!(matches!(change_of_basis(&sq, 0, 1, 1, 0), Err(Error::NotUnimodular(_))));
    }

    #[test]
    fn change_of_basis_preserves_geometry() {
        let t = half_gram();
        let u = Unimodular::new(2, 1, 1, 1).unwrap();
        let t2 = t.change_of_basis(&u);
        let (a, b) = (lv(3, -1), lv(2, 5));
        assert_eq!(t.inner(&a, &b), t2.inner(&u.transform(&a), &u.transform(&b)));
        assert_eq!(t.covolume_sq(), t2.covolume_sq());
    }

    #[test]
    fn serde_shapes() {
        let t = half_gram();
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"gram":{"g11":"1","g12":"1/2","g22":"1"},"orientation":1}"#);
        let back: FlatTorus = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
        let v: LatticeVector = serde_json::from_str("[3, -2]").unwrap();
        assert_eq!(v, lv(3, -2));
        assert_eq!(serde_json::to_string(&v).unwrap(), "[3,-2]");
    }
}

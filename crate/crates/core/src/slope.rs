//! Algebraic slope of one closed-geodesic foliation of a flat torus with
//! respect to another, and the relative slope class `[q/p] = {±q/p, ∓b/p}`.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, Int, Rational};
use crate::error::{Error, Result};
use crate::exactlat::{FlatTorus, LatticeVector, Marking};

/// Coordinates of the second normalized marking in the first:
/// `v2 = q v1 + p vhat1`, `vhat2 = a v1 + b vhat1`, with `bq - ap = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SlopeData {
    #[serde(with = "arith::int_json")]
    pub q: Int,
    #[serde(with = "arith::int_json")]
    pub p: Int,
    #[serde(with = "arith::int_json")]
    pub a: Int,
    #[serde(with = "arith::int_json")]
    pub b: Int,
}

impl SlopeData {
    pub fn new(q: impl Into<Int>, p: impl Into<Int>, a: impl Into<Int>, b: impl Into<Int>) -> Self {
        SlopeData { q: q.into(), p: p.into(), a: a.into(), b: b.into() }
    }

    /// `q/p`, the slope of the second foliation with respect to the first.
    pub fn slope(&self) -> Rational {
        Rational::new(self.q.clone(), self.p.clone())
    }

    /// `-b/p`, the slope of the first foliation with respect to the second.
    pub fn reverse_slope(&self) -> Rational {
        Rational::new(-&self.b, self.p.clone())
    }

    pub fn bezout(&self) -> Int {
        &self.b * &self.q - &self.a * &self.p
    }

    /// Slope data of the pair taken in the opposite order.
    pub fn reverse(&self) -> SlopeData {
        SlopeData {
            q: self.b.clone(),
            p: -&self.p,
            a: -&self.a,
            b: self.q.clone(),
        }
    }

    /// Effect of reversing the torus orientation (`vhat_i -> -vhat_i`):
    /// slopes become `-q/p` and `b/p`.
    pub fn orientation_flip(&self) -> SlopeData {
        SlopeData {
            q: self.q.clone(),
            p: -&self.p,
            a: -&self.a,
            b: self.b.clone(),
        }
    }

    pub fn class(&self) -> SlopeClass {
        SlopeClass::unordered(self.slope(), self.reverse_slope())
    }

    pub fn signed_class(&self) -> SlopeClass {
        SlopeClass::signed(self.slope(), self.reverse_slope())
    }
}

impl fmt::Display for SlopeData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={} p={} a={} b={}", self.q, self.p, self.a, self.b)
    }
}

/// A coupled-sign pair `{(s1, s2), (-s1, -s2)}` stored in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SlopeClass {
    #[serde(with = "arith::rational_str")]
    pub s1: Rational,
    #[serde(with = "arith::rational_str")]
    pub s2: Rational,
}

impl SlopeClass {
    fn is_positive_rep(s1: &Rational, s2: &Rational) -> bool {
        s1.is_positive() || (s1.is_zero() && !s2.is_negative())
    }

    fn pick(candidates: Vec<(Rational, Rational)>) -> SlopeClass {
        let (s1, s2) = candidates
            .into_iter()
            .filter(|(a, b)| Self::is_positive_rep(a, b))
            .min()
            .expect("one of each sign pair is a positive representative");
        SlopeClass { s1, s2 }
    }

    /// Class of the pair up to a global sign only.
    pub fn signed(s1: Rational, s2: Rational) -> SlopeClass {
        Self::pick(vec![(-&s1, -&s2), (s1, s2)])
    }

    /// Class up to a global sign and the exchange of the two foliations.
    pub fn unordered(s1: Rational, s2: Rational) -> SlopeClass {
        Self::pick(vec![(-&s1, -&s2), (-&s2, -&s1), (s2.clone(), s1.clone()), (s1, s2)])
    }
}

impl fmt::Display for SlopeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{±{}, ∓{}}}", self.s1, -&self.s2)
    }
}

pub fn slope_class(s: &SlopeData) -> SlopeClass {
    s.class()
}

/// Solves `F2 = q v1 + p vhat1`, `vhat2 = a v1 + b vhat1` against the
/// normalized markings of both foliations.
pub fn slope_of(torus: &FlatTorus, f1: &LatticeVector, f2: &LatticeVector) -> Result<SlopeData> {
    f1.check_primitive()?;
    f2.check_primitive()?;
    if f1.same_line(f2) {
        return Err(Error::EqualFoliations);
    }
    let m1 = torus.normalized_marking(f1)?;
    let m2 = torus.normalized_marking(f2)?;
    Ok(slope_between(&m1, &m2))
}

/// Coordinates of `m2` in the basis `m1`. Both markings share the
/// determinant sign, so the Bezout identity holds for either orientation.
pub fn slope_between(m1: &Marking, m2: &Marking) -> SlopeData {
    let sign = m1.v.det(&m1.vhat);
    debug_assert!(sign.abs() == Int::from(1));
    let coords = |w: &LatticeVector| (w.det(&m1.vhat) * &sign, m1.v.det(w) * &sign);
    let (q, p) = coords(&m2.v);
    let (a, b) = coords(&m2.vhat);
    SlopeData { q, p, a, b }
}

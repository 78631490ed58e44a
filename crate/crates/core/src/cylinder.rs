//! Twisted cylinders `(D x R) / <g>` with `g(x, s) = (R_theta(x), s + t)`
//! and their dictionary with foliated flat tori.

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, mod_inverse, rat_to_f64, Int, Rational};
use crate::error::{Error, Result};
use crate::exactlat::{FlatTorus, GramMatrix, LatticeVector, MarkingParams, Orientation};
use crate::slope::{slope_of, SlopeData};

/// Boundary length `r`, rotation fraction `theta` and translation length `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CylinderParams {
    #[serde(with = "arith::real_str")]
    pub r: f64,
    #[serde(with = "arith::real_str")]
    pub theta: f64,
    #[serde(with = "arith::real_str")]
    pub t: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<MarkingParams>,
}

impl CylinderParams {
    pub fn new(r: f64, theta: f64, t: f64) -> Result<Self> {
        if !(r > 0.0 && t > 0.0 && r.is_finite() && t.is_finite()) {
            return Err(Error::OutOfRange(format!("cylinder needs r, t > 0, got r = {r}, t = {t}")));
        }
        if !(0.0..1.0).contains(&theta) {
            return Err(Error::OutOfRange(format!("twist {theta} is outside [0, 1)")));
        }
        Ok(CylinderParams { r, theta, t, exact: None })
    }

    pub fn from_exact(mp: MarkingParams) -> Self {
        CylinderParams {
            r: rat_to_f64(&mp.r_sq).sqrt(),
            theta: rat_to_f64(&mp.theta),
            t: rat_to_f64(&mp.t_sq).sqrt(),
            exact: Some(mp),
        }
    }

    fn squared(&self) -> MarkingParams {
        match &self.exact {
            Some(mp) => mp.clone(),
            None => MarkingParams {
                r_sq: exact_f64(self.r * self.r),
                theta: exact_f64(self.theta),
                t_sq: exact_f64(self.t * self.t),
            },
        }
    }

    /// Area of the boundary torus, `r * t`.
    pub fn covolume(&self) -> f64 {
        self.r * self.t
    }
}

fn exact_f64(x: f64) -> Rational {
    Rational::from_float(x).expect("finite float")
}

pub fn cylinder_from_foliation(torus: &FlatTorus, f: &LatticeVector) -> Result<CylinderParams> {
    let m = torus.normalized_marking(f)?;
    Ok(CylinderParams::from_exact(torus.marking_params(&m)?))
}

/// Flat torus `(S^1_r x R) / <g>` in the basis `(v, vhat)`.
pub fn boundary_torus(c: &CylinderParams) -> Result<FlatTorus> {
    let MarkingParams { r_sq, theta, t_sq } = c.squared();
    let g12 = &theta * &r_sq;
    let g22 = &theta * &g12 + t_sq;
    FlatTorus::new(GramMatrix::new(r_sq, g12, g22), Orientation::Positive)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleReport {
    /// `<v1, v2> / (|v1| |v2|)` from the Gram matrix.
    #[serde(with = "arith::real_str")]
    pub cos_alpha: f64,
    /// `(q + p theta1) r1 / r2`.
    #[serde(with = "arith::real_str")]
    pub via_first: f64,
    /// `(b - p theta2) r2 / r1`.
    #[serde(with = "arith::real_str")]
    pub via_second: f64,
    #[serde(with = "arith::real_vec_str")]
    pub residuals: Vec<f64>,
}

fn sqrt_ratio(num: &Rational, den: &Rational) -> f64 {
    rat_to_f64(&(num / den)).sqrt()
}

pub fn angle_between(torus: &FlatTorus, f1: &LatticeVector, f2: &LatticeVector) -> Result<AngleReport> {
    let s = slope_of(torus, f1, f2)?;
    let m1 = torus.normalized_marking(f1)?;
    let m2 = torus.normalized_marking(f2)?;
    let r1_sq = torus.norm_sq(f1);
    let r2_sq = torus.norm_sq(f2);
    let p = arith::rat_int(&s.p);

    let inner = torus.inner(f1, f2);
    let cos_sq = &inner * &inner / (&r1_sq * &r2_sq);
    let cos_alpha = rat_to_f64(&cos_sq).sqrt() * sign(&inner);

    let first = arith::rat_int(&s.q) + &p * &m1.theta;
    let via_first = rat_to_f64(&first) * sqrt_ratio(&r1_sq, &r2_sq);
    let second = arith::rat_int(&s.b) - &p * &m2.theta;
    let via_second = rat_to_f64(&second) * sqrt_ratio(&r2_sq, &r1_sq);

    Ok(AngleReport {
        cos_alpha,
        via_first,
        via_second,
        residuals: vec![cos_alpha - via_first, cos_alpha - via_second],
    })
}

fn sign(r: &Rational) -> f64 {
    if r.is_negative() {
        -1.0
    } else {
        1.0
    }
}

/// The two cylinders of the lens-space metric with orthogonal nullity
/// foliations in the component of slope `q/p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrthogonalConfiguration {
    pub first: CylinderParams,
    pub second: CylinderParams,
    pub slope: SlopeData,
}

impl OrthogonalConfiguration {
    /// Core torus in the basis `(v1, vhat1)`; the foliations are `(1, 0)` and `(q, p)`.
    pub fn torus(&self) -> Result<FlatTorus> {
        let theta1 = Rational::new(-&self.slope.q, self.slope.p.clone());
        let c = CylinderParams {
            exact: Some(MarkingParams {
                r_sq: exact_f64(self.first.r * self.first.r),
                theta: theta1,
                t_sq: exact_f64(self.first.t * self.first.t),
            }),
            ..self.first.clone()
        };
        boundary_torus(&c)
    }

    pub fn foliations(&self) -> (LatticeVector, LatticeVector) {
        (
            LatticeVector::new(1, 0),
            LatticeVector { x: self.slope.q.clone(), y: self.slope.p.clone() },
        )
    }
}

pub fn orthogonal_configuration(q: impl Into<Int>, p: impl Into<Int>, t1: f64, r1: f64) -> Result<OrthogonalConfiguration> {
    let (mut q, mut p) = (q.into(), p.into());
    if p.is_zero() || !num_integer::Integer::gcd(&q, &p).is_one() {
        return Err(Error::NotCoprime(q.to_string(), p.to_string()));
    }
    if p.is_negative() {
        q = -q;
        p = -p;
    }
    let theta1 = Rational::new(-&q, p.clone());
    if theta1.is_negative() || theta1 >= Rational::one() {
        return Err(Error::SlopeOutOfRange(format!("{q}/{p}")));
    }
    let b = if p.is_one() { Int::zero() } else { mod_inverse(&q, &p).expect("coprime") };
    let a = (&b * &q - Int::one()) / &p;
    let theta2 = Rational::new(b.clone(), p.clone());
    let pf = p.to_f64().unwrap_or(f64::INFINITY);
    let first = CylinderParams::new(r1, rat_to_f64(&theta1), t1)?;
    let second = CylinderParams::new(pf * t1, rat_to_f64(&theta2), r1 / pf)?;
    Ok(OrthogonalConfiguration { first, second, slope: SlopeData { q, p, a, b } })
}

/// Second cylinder of the 3-sphere metric with core the unit square,
/// first foliation `(1, 0)` and second `(q, 1)`.
pub fn s3_family(q: i64) -> Result<CylinderParams> {
    if q < 1 {
        return Err(Error::OutOfRange(format!("q must be at least 1, got {q}")));
    }
    let q = Int::from(q);
    let n = Int::one() + &q * &q;
    Ok(CylinderParams::from_exact(MarkingParams {
        r_sq: arith::rat_int(&n),
        theta: Rational::new(&n - &q, n.clone()),
        t_sq: Rational::new(Int::one(), n),
    }))
}

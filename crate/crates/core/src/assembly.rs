//! Whole-manifold descriptions: a flat core torus with two twisted cylinders
//! attached (two-sided core), or one cylinder whose boundary is folded onto a
//! Klein bottle (one-sided core).

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, Int, Rational};
use crate::cylinder::{angle_between, cylinder_from_foliation, AngleReport, CylinderParams};
use crate::error::{Error, Result};
use crate::exactlat::{FlatTorus, GramMatrix, LatticeVector, Orientation, Unimodular};
use crate::slope::{slope_of, SlopeClass, SlopeData};
use crate::spaceform::{lens_normalize, PrismType, SpaceForm};

fn is_positive_orientation(o: &Orientation) -> bool {
    *o == Orientation::Positive
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GgmDescription {
    TwoSided {
        gram: GramMatrix,
        #[serde(default, skip_serializing_if = "is_positive_orientation")]
        orientation: Orientation,
        f1: LatticeVector,
        f2: LatticeVector,
        #[serde(default, with = "arith::real_str")]
        collar: f64,
    },
    OneSided {
        #[serde(with = "arith::rational_str")]
        r1: Rational,
        #[serde(with = "arith::rational_str")]
        r2: Rational,
        f: LatticeVector,
        #[serde(default, with = "arith::real_str")]
        collar: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sided {
    TwoSided,
    OneSided,
}

/// A failed hypothesis of a description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    NotPositiveDefinite,
    NonPrimitive { field: String, vector: LatticeVector },
    EqualFoliations,
    ReducibleFoliation,
    NonPositiveRadius { field: String },
    NegativeCollar,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotPositiveDefinite => write!(f, "core Gram matrix is not positive definite"),
            Violation::NonPrimitive { field, vector } => write!(f, "{field} = {vector} is not primitive"),
            Violation::EqualFoliations => write!(f, "the two foliations coincide"),
            Violation::ReducibleFoliation => write!(f, "foliation is parallel to a factor circle"),
            Violation::NonPositiveRadius { field } => write!(f, "{field} must be positive"),
            Violation::NegativeCollar => write!(f, "collar length is negative"),
        }
    }
}

impl GgmDescription {
    pub fn two_sided(torus: &FlatTorus, f1: LatticeVector, f2: LatticeVector, collar: f64) -> Self {
        GgmDescription::TwoSided {
            gram: torus.gram().clone(),
            orientation: torus.orientation(),
            f1,
            f2,
            collar,
        }
    }

    pub fn one_sided(r1: Rational, r2: Rational, f: LatticeVector, collar: f64) -> Self {
        GgmDescription::OneSided { r1, r2, f, collar }
    }

    pub fn sided(&self) -> Sided {
        match self {
            GgmDescription::TwoSided { .. } => Sided::TwoSided,
            GgmDescription::OneSided { .. } => Sided::OneSided,
        }
    }

    pub fn collar(&self) -> f64 {
        match self {
            GgmDescription::TwoSided { collar, .. } | GgmDescription::OneSided { collar, .. } => *collar,
        }
    }

    fn with_collar(&self, c: f64) -> Self {
        let mut out = self.clone();
        match &mut out {
            GgmDescription::TwoSided { collar, .. } | GgmDescription::OneSided { collar, .. } => *collar = c,
        }
        out
    }

    /// The core torus; for one-sided descriptions, the rectangular torus
    /// double covering the Klein bottle.
    pub fn torus(&self) -> Result<FlatTorus> {
        match self {
            GgmDescription::TwoSided { gram, orientation, .. } => FlatTorus::new(gram.clone(), *orientation),
            GgmDescription::OneSided { r1, r2, .. } => FlatTorus::rectangular(r1 * r1, r2 * r2),
        }
    }

    /// Re-coordinatizes a two-sided description; one-sided descriptions are
    /// returned unchanged since their basis is fixed by the Klein bottle.
    pub fn change_of_basis(&self, u: &Unimodular) -> Result<Self> {
        match self {
            GgmDescription::TwoSided { f1, f2, collar, .. } => {
                let t = self.torus()?.change_of_basis(u);
                Ok(GgmDescription::two_sided(&t, u.transform(f1), u.transform(f2), *collar))
            }
            GgmDescription::OneSided { .. } => Ok(self.clone()),
        }
    }
}

pub fn validate(g: &GgmDescription) -> Vec<Violation> {
    let mut out = Vec::new();
    if !(g.collar() >= 0.0) {
        out.push(Violation::NegativeCollar);
    }
    let primitive = |name: &str, v: &LatticeVector, out: &mut Vec<Violation>| {
        let ok = v.is_primitive();
        if !ok {
            out.push(Violation::NonPrimitive { field: name.to_string(), vector: v.clone() });
        }
        ok
    };
    match g {
        GgmDescription::TwoSided { gram, f1, f2, .. } => {
            if !gram.is_positive_definite() {
                out.push(Violation::NotPositiveDefinite);
            }
            let ok1 = primitive("f1", f1, &mut out);
            let ok2 = primitive("f2", f2, &mut out);
            if ok1 && ok2 && f1.same_line(f2) {
                out.push(Violation::EqualFoliations);
            }
        }
        GgmDescription::OneSided { r1, r2, f, .. } => {
            for (name, r) in [("r1", r1), ("r2", r2)] {
                if !r.is_positive() {
                    out.push(Violation::NonPositiveRadius { field: name.to_string() });
                }
            }
            if primitive("f", f, &mut out) && (f.x.is_zero() || f.y.is_zero()) {
                out.push(Violation::ReducibleFoliation);
            }
        }
    }
    out
}

fn ensure_valid(g: &GgmDescription) -> Result<()> {
    let v = validate(g);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::Invalid(v))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationResult {
    pub sided: Sided,
    pub spaceform: SpaceForm,
    pub slope: SlopeData,
    pub slope_class: SlopeClass,
    pub cylinders: Vec<CylinderParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle: Option<AngleReport>,
    pub core: FlatTorus,
}

/// `(|m|, |n|)`; the reflections of the rectangular torus are isometries.
fn positive_foliation(f: &LatticeVector) -> LatticeVector {
    LatticeVector { x: f.x.abs(), y: f.y.abs() }
}

pub fn classify(g: &GgmDescription) -> Result<ClassificationResult> {
    ensure_valid(g)?;
    let core = g.torus()?;
    match g {
        GgmDescription::TwoSided { f1, f2, .. } => {
            let slope = slope_of(&core, f1, f2)?;
            let spaceform = SpaceForm::Lens(lens_normalize(slope.p.clone(), slope.q.clone())?);
            Ok(ClassificationResult {
                sided: Sided::TwoSided,
                spaceform,
                slope_class: slope.class(),
                slope,
                cylinders: vec![cylinder_from_foliation(&core, f1)?, cylinder_from_foliation(&core, f2)?],
                angle: Some(angle_between(&core, f1, f2)?),
                core,
            })
        }
        GgmDescription::OneSided { f, .. } => {
            let f = positive_foliation(f);
            let slope = slope_of(&core, &LatticeVector::new(1, 0), &f)?;
            let spaceform = SpaceForm::Prism(PrismType::new(f.x.clone(), f.y.clone())?);
            Ok(ClassificationResult {
                sided: Sided::OneSided,
                spaceform,
                slope_class: slope.signed_class(),
                slope,
                cylinders: vec![cylinder_from_foliation(&core, &f)?],
                angle: None,
                core,
            })
        }
    }
}

/// A description with its flat slab moved into the disk realizations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AbsorbedDescription {
    pub description: GgmDescription,
    /// Flat collar length to attach to each cylinder's disk, in cylinder order.
    #[serde(with = "arith::real_vec_str")]
    pub disk_collars: Vec<f64>,
}

pub fn absorb_flat_slab(g: &GgmDescription) -> Result<AbsorbedDescription> {
    let c = g.collar();
    if !(c >= 0.0) {
        return Err(Error::Invalid(vec![Violation::NegativeCollar]));
    }
    let disk_collars = match g {
        GgmDescription::TwoSided { .. } => vec![c / 2.0, c / 2.0],
        GgmDescription::OneSided { .. } => vec![c],
    };
    Ok(AbsorbedDescription { description: g.with_collar(0.0), disk_collars })
}

/// Orientation double cover of a one-sided description, unwrapping the
/// Klein bottle involution `(z, w) -> (-z, conj(w))`.
pub fn double_cover(g: &GgmDescription) -> Result<GgmDescription> {
    ensure_valid(g)?;
    match g {
        GgmDescription::OneSided { f, collar, .. } => {
            let f1 = positive_foliation(f);
            let f2 = LatticeVector { x: f1.x.clone(), y: -&f1.y };
            Ok(GgmDescription::two_sided(&g.torus()?, f1, f2, *collar))
        }
        GgmDescription::TwoSided { .. } => {
            Err(Error::OutOfRange("double cover needs a one-sided description".into()))
        }
    }
}

/// `|det(F1, F2)|` for two-sided descriptions.
pub fn foliation_determinant(g: &GgmDescription) -> Option<Int> {
    match g {
        GgmDescription::TwoSided { f1, f2, .. } => Some(f1.det(f2).abs()),
        GgmDescription::OneSided { .. } => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::spaceform::{lens_equivalent, LensType};

    fn lv(x: i64, y: i64) -> LatticeVector {
        LatticeVector::new(x, y)
    }

    fn square(f1: LatticeVector, f2: LatticeVector) -> GgmDescription {
        GgmDescription::two_sided(&FlatTorus::unit_square(), f1, f2, 0.0)
    }

    fn one(r1: i64, r2: i64, f: LatticeVector) -> GgmDescription {
        GgmDescription::one_sided(rat(r1, 1), rat(r2, 1), f, 0.0)
    }

    fn lens_of(g: &GgmDescription) -> LensType {
        match classify(g).unwrap().spaceform {
            SpaceForm::Lens(l) => l,
            other => panic!("expected a lens space, got {other}"),
        }
    }

    #[test]
    fn validate_examples() {
        assert_eq!(validate(&square(lv(1, 0), lv(1, 0))), vec![Violation::EqualFoliations]);
        assert_eq!(validate(&one(1, 2, lv(1, 0))), vec![Violation::ReducibleFoliation]);
        assert!(validate(&one(1, 2, lv(3, 2))).is_empty());
        let bad = GgmDescription::one_sided(rat(0, 1), rat(1, 1), lv(2, 4), -1.0);
        assert_eq!(validate(&bad).len(), 3);
    }

    #[test]
    fn classify_examples() {
        for q in 0..6 {
            let c = classify(&square(lv(1, 0), lv(q, 1))).unwrap();
            assert_eq!(c.spaceform, SpaceForm::Lens(LensType::sphere()));
        }
        let c = classify(&square(lv(1, 0), lv(1, 2))).unwrap();
        assert_eq!(c.spaceform, SpaceForm::Lens(LensType::new(2, 1).unwrap()));
        assert_eq!((c.slope_class.s1.clone(), c.slope_class.s2.clone()), (rat(1, 2), rat(-1, 2)));
        let c = classify(&one(1, 2, lv(3, 2))).unwrap();
        assert_eq!(c.spaceform, SpaceForm::Prism(PrismType::new(3, 2).unwrap()));
        assert_eq!(c.spaceform.group_order(), 24.into());
        assert_eq!((c.slope.q.clone(), c.slope.p.clone()), (3.into(), 2.into()));
        let c = classify(&one(1, 2, lv(-3, 2))).unwrap();
        assert_eq!(c.spaceform, SpaceForm::Prism(PrismType::new(3, 2).unwrap()));
        assert!(matches!(classify(&one(1, 2, lv(0, 1))), Err(Error::Invalid(_))));
    }

    #[test]
    fn absorb_examples() {
        let g = square(lv(1, 0), lv(2, 7));
        let a = absorb_flat_slab(&g).unwrap();
        assert_eq!(a.description, g);
        let g1 = g.with_collar(1.0);
        let a = absorb_flat_slab(&g1).unwrap();
        assert_eq!(a.disk_collars, vec![0.5, 0.5]);
        assert_eq!(classify(&a.description).unwrap(), classify(&g1).unwrap());
        let o = GgmDescription::one_sided(rat(1, 1), rat(2, 1), lv(3, 2), 0.2);
        let a = absorb_flat_slab(&o).unwrap();
        assert_eq!(a.disk_collars, vec![0.2]);
        assert_eq!(a.description.collar(), 0.0);
    }

    #[test]
    fn double_cover_examples() {
        let c = double_cover(&one(1, 1, lv(1, 1))).unwrap();
        match &c {
            GgmDescription::TwoSided { f2, .. } => assert_eq!(f2, &lv(1, -1)),
            _ => panic!(),
        }
        assert_eq!(lens_of(&c), LensType::new(2, 1).unwrap());

        let c = double_cover(&one(1, 1, lv(3, 2))).unwrap();
        let s = classify(&c).unwrap().slope;
        assert_eq!((s.q, s.p), (5.into(), (-12).into()));
        let l = lens_of(&c);
        assert_eq!(l, LensType::new(12, 7).unwrap());
        assert!(lens_equivalent(&l, &LensType::new(12, 5).unwrap()));
    }

    #[test]
    fn isometry_invariance() {
        let t = FlatTorus::from_gram(rat(3, 2), rat(1, 3), rat(5, 7)).unwrap();
        let g = GgmDescription::two_sided(&t, lv(2, 3), lv(-1, 4), 0.0);
        let u = Unimodular::new(3, 1, 2, 1).unwrap();
        let h = g.change_of_basis(&u).unwrap();
        let (a, b) = (classify(&g).unwrap(), classify(&h).unwrap());
        assert_eq!(a.spaceform, b.spaceform);
        assert_eq!(a.slope, b.slope);
    }

    #[test]
    fn json_shapes() {
        let g = square(lv(1, 0), lv(1, 2));
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(
            s,
            r#"{"type":"two_sided","gram":{"g11":"1","g12":"0","g22":"1"},"f1":[1,0],"f2":[1,2],"collar":"0.0000000000000000"}"#
        );
        let back: GgmDescription = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        let o: GgmDescription =
            serde_json::from_str(r#"{"type":"one_sided","r1":"1","r2":"2","f":[3,2],"collar":"0"}"#).unwrap();
        assert_eq!(o, one(1, 2, lv(3, 2)));
        let v = serde_json::to_string(&Violation::EqualFoliations).unwrap();
        assert_eq!(v, r#"{"violation":"equal_foliations"}"#);
    }
}

//! Connected components of the moduli space of these metrics, labelled by
//! the slope read off at the unit-square normal form.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::Int;
use crate::assembly::{validate, GgmDescription};
use crate::error::{Error, Result};
use crate::exactlat::{FlatTorus, LatticeVector};
use crate::slope::{slope_of, SlopeClass, SlopeData};
use crate::spaceform::{LensType, PrismType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Two nonflat cylinders glued along a torus.
    LensType,
    /// One cylinder whose boundary is folded onto a Klein bottle.
    PrismType,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ComponentId {
    pub family: Family,
    pub slope_class: SlopeClass,
}

/// Slope data of `(1, 0)` against `(q, p)` on the unit square.
pub fn normal_form(q: &Int, p: &Int) -> Result<SlopeData> {
    slope_of(&FlatTorus::unit_square(), &LatticeVector::new(1, 0), &LatticeVector { x: q.clone(), y: p.clone() })
}

fn two_sided_class(s: &SlopeData) -> Result<SlopeClass> {
    // Orientations may be changed freely, so only |q|, |p| survive.
    Ok(normal_form(&s.q.abs(), &s.p.abs())?.class())
}

pub fn component_id(g: &GgmDescription) -> Result<ComponentId> {
    let violations = validate(g);
    if !violations.is_empty() {
        return Err(Error::Invalid(violations));
    }
    let torus = g.torus()?;
    match g {
        GgmDescription::TwoSided { f1, f2, .. } => {
            let s = slope_of(&torus, f1, f2)?;
            let forward = two_sided_class(&s)?;
            let backward = two_sided_class(&s.reverse())?;
            Ok(ComponentId { family: Family::LensType, slope_class: forward.min(backward) })
        }
        GgmDescription::OneSided { f, .. } => {
            let s = normal_form(&f.x.abs(), &f.y.abs())?;
            Ok(ComponentId { family: Family::PrismType, slope_class: s.signed_class() })
        }
    }
}

pub fn same_component(g1: &GgmDescription, g2: &GgmDescription) -> Result<bool> {
    Ok(component_id(g1)? == component_id(g2)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub family: Family,
    pub slope_class: SlopeClass,
    pub witness_description: GgmDescription,
}

/// Components of lens-type metrics on a space diffeomorphic to `lens`,
/// realized by normal forms `(1, 0), (q', p)` with `0 <= q' <= bound`.
pub fn enumerate_lens_components(lens: &LensType, bound: u64) -> Result<Vec<Component>> {
    let p = &lens.p;
    let residues = lens.equivalent_residues();
    let mut out: Vec<Component> = Vec::new();
    for q in 0..=bound {
        let q = Int::from(q);
        if !q.gcd(p).is_one() || !residues.contains(&q.mod_floor(p)) {
            continue;
        }
        if q.is_zero() && !p.is_one() {
            continue;
        }
        let witness = GgmDescription::two_sided(
            &FlatTorus::unit_square(),
            LatticeVector::new(1, 0),
            LatticeVector { x: q, y: p.clone() },
            0.0,
        );
        let id = component_id(&witness)?;
        if out.iter().all(|c| c.slope_class != id.slope_class) {
            out.push(Component { family: id.family, slope_class: id.slope_class, witness_description: witness });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentCount {
    Finite(u64),
    Infinite,
}

impl Serialize for ComponentCount {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ComponentCount::Finite(n) => s.serialize_u64(*n),
            ComponentCount::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for ComponentCount {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) if s == "infinite" => Ok(ComponentCount::Infinite),
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(ComponentCount::Finite)
                .ok_or_else(|| serde::de::Error::custom("expected a count")),
            v => Err(serde::de::Error::custom(format!("expected a count, got {v}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrismComponentReport {
    pub prism_type: ComponentCount,
    /// Present when the prism manifold is also a lens space, `m = 1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lens_type: Option<ComponentCount>,
}

impl PrismComponentReport {
    pub fn total(&self) -> ComponentCount {
        match (self.prism_type, self.lens_type) {
            (_, Some(ComponentCount::Infinite)) | (ComponentCount::Infinite, _) => ComponentCount::Infinite,
            (ComponentCount::Finite(a), Some(ComponentCount::Finite(b))) => ComponentCount::Finite(a + b),
            (ComponentCount::Finite(a), None) => ComponentCount::Finite(a),
        }
    }
}

pub fn prism_component_count(p: &PrismType) -> PrismComponentReport {
    PrismComponentReport {
        prism_type: ComponentCount::Finite(1),
        lens_type: p.m.is_one().then_some(ComponentCount::Infinite),
    }
}

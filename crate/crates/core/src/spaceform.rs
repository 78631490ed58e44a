//! Lens spaces `L(p, q)` and prism manifolds `P(m, n)`.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, mod_inverse, Int};
use crate::error::{Error, Result};

/// `L(p, q)` with `p > 0`, `0 <= q < p` and `gcd(p, q) = 1`; `L(1, 0)` is the 3-sphere.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LensType {
    #[serde(with = "arith::int_json")]
    pub p: Int,
    #[serde(with = "arith::int_json")]
    pub q: Int,
}

/// `P(m, n)` with `m, n > 0` coprime.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrismType {
    #[serde(with = "arith::int_json")]
    pub m: Int,
    #[serde(with = "arith::int_json")]
    pub n: Int,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SpaceForm {
    Lens(LensType),
    Prism(PrismType),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrismInvariants {
    #[serde(with = "arith::int_json")]
    pub group_order: Int,
    #[serde(with = "arith::int_json")]
    pub abelianization_order: Int,
    pub is_abelian: bool,
}

pub fn lens_normalize(p: impl Into<Int>, q: impl Into<Int>) -> Result<LensType> {
    let (mut p, mut q) = (p.into(), q.into());
    if p.is_zero() || !p.gcd(&q).is_one() {
        return Err(Error::NotCoprime(p.to_string(), q.to_string()));
    }
    if p.is_negative() {
        p = -p;
        q = -q;
    }
    let q = q.mod_floor(&p);
    Ok(LensType { p, q })
}

impl LensType {
    pub fn new(p: impl Into<Int>, q: impl Into<Int>) -> Result<Self> {
        lens_normalize(p, q)
    }

    pub fn sphere() -> Self {
        LensType { p: Int::one(), q: Int::zero() }
    }

    /// The residues `{±q, ±q^-1} mod p` of lens spaces diffeomorphic to this one.
    pub fn equivalent_residues(&self) -> Vec<Int> {
        if self.p.is_one() {
            return vec![Int::zero()];
        }
        let inv = mod_inverse(&self.q, &self.p).expect("normalized lens type has invertible q");
        let mut out: Vec<Int> = [self.q.clone(), -&self.q, inv.clone(), -inv]
            .into_iter()
            .map(|r| r.mod_floor(&self.p))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for LensType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.p, self.q)
    }
}

pub fn lens_equivalent(a: &LensType, b: &LensType) -> bool {
    a.p == b.p && a.equivalent_residues().contains(&b.q.mod_floor(&b.p))
}

impl PrismType {
    pub fn new(m: impl Into<Int>, n: impl Into<Int>) -> Result<Self> {
        let (m, n) = (m.into(), n.into());
        if !m.is_positive() || !n.is_positive() {
            return Err(Error::OutOfRange(format!("prism parameters must be positive, got ({m}, {n})")));
        }
        if !m.gcd(&n).is_one() {
            return Err(Error::NotCoprime(m.to_string(), n.to_string()));
        }
        Ok(PrismType { m, n })
    }

    /// `P(1, n)` is the lens space `L(4n, 2n - 1)`.
    pub fn as_lens(&self) -> Option<LensType> {
        if !self.m.is_one() {
            return None;
        }
        let two_n = &self.n * 2u32;
        Some(lens_normalize(&two_n * 2u32, two_n - 1u32).expect("4n and 2n - 1 are coprime"))
    }
}

impl fmt::Display for PrismType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({},{})", self.m, self.n)
    }
}

pub fn prism_invariants(p: &PrismType) -> PrismInvariants {
    PrismInvariants {
        group_order: Int::from(4u32) * &p.m * &p.n,
        abelianization_order: Int::from(4u32) * &p.n,
        is_abelian: p.m.is_one(),
    }
}

fn superscript(n: &Int) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| match c {
            '-' => '⁻',
            d => DIGITS[d.to_digit(10).unwrap() as usize],
        })
        .collect()
}

fn power(base: char, exp: &Int) -> String {
    if exp.is_one() {
        base.to_string()
    } else {
        format!("{base}{}", superscript(exp))
    }
}

/// `⟨a,b | bab⁻¹=a⁻¹, aᵐb²ⁿ=1⟩`.
pub fn prism_presentation(p: &PrismType) -> String {
    let two_n = &p.n * 2u32;
    format!("⟨a,b | bab⁻¹=a⁻¹, {}{}=1⟩", power('a', &p.m), power('b', &two_n))
}

pub fn spaceform_equivalent(a: &SpaceForm, b: &SpaceForm) -> bool {
    match (a, b) {
        (SpaceForm::Lens(x), SpaceForm::Lens(y)) => lens_equivalent(x, y),
        (SpaceForm::Prism(x), SpaceForm::Prism(y)) => x == y,
        (SpaceForm::Prism(x), SpaceForm::Lens(y)) | (SpaceForm::Lens(y), SpaceForm::Prism(x)) => {
            x.as_lens().is_some_and(|l| lens_equivalent(&l, y))
        }
    }
}

impl SpaceForm {
    /// Order of the fundamental group.
    pub fn group_order(&self) -> Int {
        match self {
            SpaceForm::Lens(l) => l.p.clone(),
            SpaceForm::Prism(p) => prism_invariants(p).group_order,
        }
    }
}

impl fmt::Display for SpaceForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceForm::Lens(l) => l.fmt(f),
            SpaceForm::Prism(p) => p.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lens(p: i64, q: i64) -> LensType {
        lens_normalize(p, q).unwrap()
    }

    fn prism(m: i64, n: i64) -> PrismType {
        PrismType::new(m, n).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(lens(1, 5), LensType::sphere());
        assert_eq!(lens(7, -2), LensType { p: 7.into(), q: 5.into() });
        assert_eq!(lens(2, 1), LensType { p: 2.into(), q: 1.into() });
        assert_eq!(lens(-12, 5), LensType { p: 12.into(), q: 7.into() });
        assert!(matches!(lens_normalize(6, 4), Err(Error::NotCoprime(..))));
        assert!(matches!(lens_normalize(0, 1), Err(Error::NotCoprime(..))));
    }

    #[test]
    fn equivalence_examples() {
        assert!(lens_equivalent(&lens(7, 2), &lens(7, 4)));
        assert!(!lens_equivalent(&lens(7, 2), &lens(7, 1)));
        for p in 2..20 {
            for q in 1..p {
                if num_integer::gcd(p, q) == 1 {
                    assert!(lens_equivalent(&lens(p, q), &lens(p, p - q)));
                }
            }
        }
        assert!(lens_equivalent(&lens(12, 7), &lens(12, 5)));
    }

    #[test]
    fn prism_invariant_examples() {
        let i = prism_invariants(&prism(3, 2));
        assert_eq!((i.group_order, i.abelianization_order, i.is_abelian), (24.into(), 8.into(), false));
        let i = prism_invariants(&prism(1, 1));
        assert_eq!((i.group_order, i.abelianization_order, i.is_abelian), (4.into(), 4.into(), true));
        let i = prism_invariants(&prism(5, 1));
        assert_eq!((i.group_order, i.abelianization_order, i.is_abelian), (20.into(), 4.into(), false));
        assert!(PrismType::new(2, 4).is_err());
        assert!(PrismType::new(0, 1).is_err());
    }

    #[test]
    fn presentation_examples() {
        assert_eq!(prism_presentation(&prism(3, 2)), "⟨a,b | bab⁻¹=a⁻¹, a³b⁴=1⟩");
        assert_eq!(prism_presentation(&prism(1, 1)), "⟨a,b | bab⁻¹=a⁻¹, ab²=1⟩");
        assert_eq!(prism_presentation(&prism(2, 3)), "⟨a,b | bab⁻¹=a⁻¹, a²b⁶=1⟩");
        assert_eq!(prism_presentation(&prism(11, 6)), "⟨a,b | bab⁻¹=a⁻¹, a¹¹b¹²=1⟩");
    }

    #[test]
    fn spaceform_examples() {
        let l = |p, q| SpaceForm::Lens(lens(p, q));
        let pr = |m, n| SpaceForm::Prism(prism(m, n));
        assert!(spaceform_equivalent(&pr(1, 2), &l(8, 3)));
        assert!(spaceform_equivalent(&l(8, 3), &pr(1, 2)));
        assert!(spaceform_equivalent(&pr(3, 2), &pr(3, 2)));
        assert!(!spaceform_equivalent(&pr(3, 2), &pr(2, 3)));
        assert!(spaceform_equivalent(&pr(1, 1), &l(4, 1)));
        assert!(!spaceform_equivalent(&pr(3, 1), &l(12, 5)));
    }

    #[test]
    fn serde_shape() {
        let s = serde_json::to_string(&SpaceForm::Lens(lens(2, 1))).unwrap();
        assert_eq!(s, r#"{"kind":"lens","p":2,"q":1}"#);
        let s = serde_json::to_string(&SpaceForm::Prism(prism(3, 2))).unwrap();
        assert_eq!(s, r#"{"kind":"prism","m":3,"n":2}"#);
        let back: SpaceForm = serde_json::from_str(&s).unwrap();
        assert_eq!(back, SpaceForm::Prism(prism(3, 2)));
    }
}

//! Group classes, their membership tests, and the poly-closure operator.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::catalog::{canonical_name, is_minimal_simple};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::group::GroupHandle;
use crate::oracle::Subgroup;
use crate::section::{composition_factors, FactorKind, Section};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupClass {
    Trivial,
    Abelian,
    Nilpotent,
    Soluble,
    All,
    /// Direct products of copies of a nonabelian simple group.
    D0(String),
    /// `D0(J) × soluble`, for a minimal simple `J`.
    D0xS(String),
    /// Groups with a subnormal series whose factors lie in the inner class.
    Poly(Box<GroupClass>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Closure {
    Subgroup,
    Quotient,
    Extension,
    NormalProduct,
    /// Residual closure (R₀).
    Residual,
    /// N₀-closure.
    N0,
    DirectProduct,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Characteristic {
    Full,
    Primes(Vec<u64>),
}

impl GroupClass {
    /// Parses a descriptor and checks that any `d0xS` group is minimal simple.
    pub fn parse(desc: &str) -> Result<Self> {
        let c = Self::parse_unchecked(desc)?;
        c.validate()?;
        Ok(c.normalize())
    }

    /// Parses a descriptor without the minimal-simple check.
    pub fn parse_unchecked(desc: &str) -> Result<Self> {
        let d = desc.trim();
        if let Some(rest) = d.strip_prefix("poly:") {
            return Ok(GroupClass::Poly(Box::new(Self::parse_unchecked(rest)?)));
        }
        if let Some(j) = d.strip_prefix("d0xS:") {
            return Ok(GroupClass::D0xS(simple_name(j)?));
        }
        if let Some(j) = d.strip_prefix("d0:") {
            return Ok(GroupClass::D0(simple_name(j)?));
        }
        match d {
            "trivial" => Ok(GroupClass::Trivial),
            "abelian" => Ok(GroupClass::Abelian),
            "nilpotent" => Ok(GroupClass::Nilpotent),
            "soluble" | "solvable" => Ok(GroupClass::Soluble),
            "all" => Ok(GroupClass::All),
            _ => Err(Error::Parse(format!("unknown class descriptor `{desc}`"))),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            GroupClass::D0xS(j) if !is_minimal_simple(j) => Err(Error::Parse(format!(
                "d0xS needs a minimal simple group, `{j}` is not one"
            ))),
            GroupClass::Poly(x) => x.validate(),
            _ => Ok(()),
        }
    }

    pub fn poly(x: GroupClass) -> Self {
        GroupClass::Poly(Box::new(x)).normalize()
    }

    /// Collapses nested and redundant closures.
    pub fn normalize(self) -> Self {
        match self {
            GroupClass::Poly(inner) => match inner.normalize() {
                GroupClass::Poly(x) => GroupClass::Poly(x),
                GroupClass::Soluble => GroupClass::Soluble,
                GroupClass::All => GroupClass::All,
                GroupClass::Trivial => GroupClass::Trivial,
                other => GroupClass::Poly(Box::new(other)),
            },
            other => other,
        }
    }

    pub fn extension_closure(&self) -> Self {
        GroupClass::poly(self.clone())
    }

    /// The class inside a poly-closure, or the class itself.
    pub fn base(&self) -> &GroupClass {
        match self {
            GroupClass::Poly(x) => x,
            other => other,
        }
    }

    pub fn characteristic(&self) -> Characteristic {
        match self {
            GroupClass::Trivial | GroupClass::D0(_) => Characteristic::Primes(vec![]),
            GroupClass::Poly(x) => x.characteristic(),
            _ => Characteristic::Full,
        }
    }

    pub fn declared_closures(&self) -> BTreeSet<Closure> {
        use Closure::*;
        let all = [
            Subgroup,
            Quotient,
            Extension,
            NormalProduct,
            Residual,
            N0,
            DirectProduct,
        ];
        let set: &[Closure] = match self {
            GroupClass::Trivial | GroupClass::Soluble | GroupClass::All => &all,
            GroupClass::Abelian => &[Subgroup, Quotient, Residual, DirectProduct],
            GroupClass::Nilpotent => &[
                Subgroup,
                Quotient,
                NormalProduct,
                Residual,
                N0,
                DirectProduct,
            ],
            GroupClass::D0(_) => &[Quotient, NormalProduct, Residual, N0, DirectProduct],
            GroupClass::D0xS(_) => &[
                Subgroup,
                Quotient,
                NormalProduct,
                Residual,
                N0,
                DirectProduct,
            ],
            GroupClass::Poly(x) => {
                let inner = x.declared_closures();
                if inner.contains(&Subgroup) && inner.contains(&Quotient) {
                    &all
                } else if inner.contains(&Quotient) {
                    &[Quotient, Extension]
                } else {
                    &[Extension]
                }
            }
        };
        set.iter().copied().collect()
    }

    /// Whether a nonabelian simple group with this table name lies in the class.
    pub fn admits_simple(&self, name: &str) -> bool {
        match self {
            GroupClass::Trivial
            | GroupClass::Abelian
            | GroupClass::Nilpotent
            | GroupClass::Soluble => false,
            GroupClass::All => true,
            GroupClass::D0(j) | GroupClass::D0xS(j) => canonical_name(j) == canonical_name(name),
            GroupClass::Poly(x) => x.admits_simple(name),
        }
    }

    /// The nonabelian simple group allowed by a `d0`-type class.
    pub fn simple_part(&self) -> Option<&str> {
        match self {
            GroupClass::D0(j) | GroupClass::D0xS(j) => Some(j),
            GroupClass::Poly(x) => x.simple_part(),
            _ => None,
        }
    }

    /// All soluble groups are members.
    pub fn contains_soluble(&self) -> bool {
        match self {
            GroupClass::Soluble | GroupClass::All | GroupClass::D0xS(_) => true,
            GroupClass::Poly(x) => !matches!(**x, GroupClass::Trivial | GroupClass::D0(_)),
            _ => false,
        }
    }
}

fn simple_name(j: &str) -> Result<String> {
    let j = j.trim();
    if j.is_empty() {
        return Err(Error::Parse("missing simple group name".into()));
    }
    Ok(canonical_name(j))
}

impl fmt::Display for GroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupClass::Trivial => f.write_str("trivial"),
            GroupClass::Abelian => f.write_str("abelian"),
            GroupClass::Nilpotent => f.write_str("nilpotent"),
            GroupClass::Soluble => f.write_str("soluble"),
            GroupClass::All => f.write_str("all"),
            GroupClass::D0(j) => write!(f, "d0:{j}"),
            GroupClass::D0xS(j) => write!(f, "d0xS:{j}"),
            GroupClass::Poly(x) => write!(f, "poly:{x}"),
        }
    }
}

impl FromStr for GroupClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl Serialize for GroupClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GroupClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        GroupClass::parse_unchecked(&s)
            .map(GroupClass::normalize)
            .map_err(serde::de::Error::custom)
    }
}

fn at_scale<T>(r: Result<T>, what: &str) -> Result<T> {
    r.map_err(|e| match e {
        Error::CapExceeded {
            what: w,
            order,
            cap,
        } => Error::Undecidable(format!("{what}: {w} of order {order} exceeds cap {cap}")),
        other => other,
    })
}

/// Membership of a whole group.
pub fn member(ctx: &Context, class: &GroupClass, g: &GroupHandle) -> Result<bool> {
    member_section(ctx, class, &Section::whole(g))
}

/// Membership of the factor group `T/B`.
pub fn member_section(ctx: &Context, class: &GroupClass, sec: &Section) -> Result<bool> {
    match class {
        GroupClass::Trivial => Ok(sec.is_trivial()),
        GroupClass::Abelian => Ok(sec.is_abelian()),
        GroupClass::Nilpotent => Ok(sec.is_nilpotent()),
        GroupClass::Soluble => Ok(sec.is_soluble()),
        GroupClass::All => Ok(true),
        GroupClass::D0(j) => {
            if sec.is_trivial() {
                return Ok(true);
            }
            at_scale(
                d0_decomposition(ctx, sec, j)
                    .map(|d| d.map(|d| d.radical_is_bottom).unwrap_or(false)),
                "d0",
            )
        }
        GroupClass::D0xS(j) => {
            if sec.is_soluble() {
                return Ok(true);
            }
            at_scale(d0_decomposition(ctx, sec, j).map(|d| d.is_some()), "d0xS")
        }
        GroupClass::Poly(x) => member_poly(ctx, x, sec),
    }
}

fn member_poly(ctx: &Context, x: &GroupClass, sec: &Section) -> Result<bool> {
    match x {
        GroupClass::Trivial => Ok(sec.is_trivial()),
        GroupClass::Abelian | GroupClass::Nilpotent | GroupClass::Soluble => Ok(sec.is_soluble()),
        GroupClass::All => Ok(true),
        GroupClass::Poly(inner) => member_poly(ctx, inner, sec),
        GroupClass::D0(_) | GroupClass::D0xS(_) => {
            let allow_cyclic = matches!(x, GroupClass::D0xS(_));
            if allow_cyclic && sec.is_soluble() {
                return Ok(true);
            }
            let factors = at_scale(composition_factors(ctx, sec), "composition factors")?;
            Ok(factors.iter().all(|f| match f.kind {
                FactorKind::Cyclic => allow_cyclic,
                FactorKind::NonabelianSimple => {
                    f.name.as_deref().is_some_and(|n| x.admits_simple(n))
                }
            }))
        }
    }
}

/// Membership in `poly(X)` from a caller-supplied subnormal series `1 = G₀ ⊴ … ⊴ G_r = G`.
pub fn member_by_series(ctx: &Context, x: &GroupClass, series: &[GroupHandle]) -> Result<bool> {
    let (first, last) = match (series.first(), series.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(Error::Parse("empty series".into())),
    };
    if !first.is_trivial() {
        return Err(Error::Parse(
            "series must start at the trivial group".into(),
        ));
    }
    let _ = last;
    for w in series.windows(2) {
        if !w[0].is_normal_in(&w[1]) {
            return Err(Error::Parse("series is not subnormal".into()));
        }
        if !member_section(
            ctx,
            x.base(),
            &Section::new_unchecked(w[1].clone(), w[0].clone()),
        )? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Soluble radical and the nonabelian part of the socle of a section, both above `B`.
struct Decomposition {
    radical_is_bottom: bool,
}

fn d0_decomposition(ctx: &Context, sec: &Section, j: &str) -> Result<Option<Decomposition>> {
    let normals = sec.normals_above(ctx)?;
    let bottom = normals[0].clone();
    let o = ctx.oracle(&sec.top)?;
    let sol: Vec<Subgroup> = normals
        .iter()
        .filter(|n| Section::new_unchecked(n.group.clone(), sec.bottom.clone()).is_soluble())
        .cloned()
        .collect();
    let r = o.join_all(&sol);
    let minimal: Vec<&Subgroup> = normals
        .iter()
        .filter(|n| n.order() > bottom.order())
        .filter(|n| {
            !normals
                .iter()
                .any(|m| m.order() > bottom.order() && m.order() < n.order() && m.le(n))
        })
        .collect();
    let nonab: Vec<Subgroup> = minimal
        .into_iter()
        .filter(|n| !Section::new_unchecked(n.group.clone(), sec.bottom.clone()).is_soluble())
        .cloned()
        .collect();
    let k = o.join_all(&nonab);
    let k = if k.le(&bottom) {
        bottom.clone()
    } else {
        o.join_all(&[bottom.clone(), k])
    };
    if k.set.intersection(&r.set) != bottom.set || k.order() * r.order() != o.len() * bottom.order()
    {
        return Ok(None);
    }
    let factors = composition_factors(
        ctx,
        &Section::new_unchecked(k.group.clone(), sec.bottom.clone()),
    )?;
    let target = canonical_name(j);
    if factors.iter().all(|f| {
        f.kind == FactorKind::NonabelianSimple && f.name.as_deref() == Some(target.as_str())
    }) {
        Ok(Some(Decomposition {
            radical_is_bottom: r.order() == bottom.order(),
        }))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{Caps, Execution};

    fn ctx() -> Context {
        Context::new(Caps::default(), Execution::Sequential).unwrap()
    }

    fn c(s: &str) -> GroupClass {
        GroupClass::parse(s).unwrap()
    }

    #[test]
    fn descriptors() {
        for s in [
            "trivial",
            "abelian",
            "nilpotent",
            "soluble",
            "all",
            "d0:A6",
            "d0xS:A5",
            "poly:d0xS:A5",
            "poly:nilpotent",
        ] {
            assert_eq!(c(s).to_string(), s);
        }
        assert_eq!(c("poly:poly:nilpotent"), c("poly:nilpotent"));
        assert_eq!(c("poly:soluble"), GroupClass::Soluble);
        assert_eq!(c("d0xS:PSL(2,4)"), c("d0xS:A5"));
        assert!(GroupClass::parse("d0xS:A6").is_err());
        assert!(GroupClass::parse_unchecked("d0xS:A6").is_ok());
        assert!(GroupClass::parse("nonsense").is_err());
        assert_eq!(c("nilpotent").extension_closure(), c("poly:nilpotent"));
        assert_eq!(c("soluble").extension_closure(), c("soluble"));
        assert_eq!(c("nilpotent").characteristic(), Characteristic::Full);
        assert_eq!(c("d0xS:A5").characteristic(), Characteristic::Full);
        assert_eq!(
            c("trivial").characteristic(),
            Characteristic::Primes(vec![])
        );
    }

    #[test]
    fn membership() {
        let cx = ctx();
        let s4 = GroupHandle::symmetric(4);
        let s5 = GroupHandle::symmetric(5);
        let a5 = GroupHandle::alternating(5);
        let a6 = GroupHandle::alternating(6);
        assert!(member(&cx, &c("soluble"), &s4).unwrap());
        assert!(!member(&cx, &c("nilpotent"), &s4).unwrap());
        assert!(member(&cx, &c("d0xS:A5"), &a5).unwrap());
        assert!(!member(&cx, &c("d0xS:A5"), &s5).unwrap());
        let a5c6 = GroupHandle::direct_product(&a5, &GroupHandle::cyclic(6), 64).unwrap();
        assert!(member(&cx, &c("d0xS:A5"), &a5c6).unwrap());
        assert!(!member(&cx, &c("d0:A5"), &a5c6).unwrap());
        let a5a5 = GroupHandle::direct_product(&a5, &a5, 64).unwrap();
        assert!(member(&cx, &c("d0:A5"), &a5a5).unwrap());
        let w = GroupHandle::wreath_product(&s5, &GroupHandle::cyclic(2), 64)
            .unwrap()
            .group;
        assert!(!member(&cx, &c("d0xS:A5"), &w).unwrap());
        assert!(member(&cx, &c("poly:d0xS:A5"), &w).unwrap());
        assert!(!member(&cx, &c("poly:d0xS:A5"), &a6).unwrap());
        assert!(!member(&cx, &c("poly:nilpotent"), &a5).unwrap());
    }

    #[test]
    fn series_witness() {
        let cx = ctx();
        let s4 = GroupHandle::symmetric(4);
        let mut series = s4.derived_series();
        series.reverse();
        assert!(member_by_series(&cx, &c("poly:abelian"), &series).unwrap());
        assert!(!member_by_series(&cx, &c("poly:trivial"), &series).unwrap());
    }
}

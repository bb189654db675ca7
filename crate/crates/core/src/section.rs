//! Sections `T/B` of a permutation group, handled inside `T` without forming quotients.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::bitset::Bitset;
use crate::context::Context;
use crate::error::{Error, Result};
use crate::group::GroupHandle;
use crate::oracle::{prime_factors, Subgroup};

/// The factor group `top / bottom`, where `bottom` is normal in `top`.
#[derive(Clone, Debug)]
pub struct Section {
    pub top: GroupHandle,
    pub bottom: GroupHandle,
}

impl Section {
    pub fn new(top: GroupHandle, bottom: GroupHandle) -> Result<Self> {
        if !bottom.is_normal_in(&top) {
            return Err(Error::NotInGroup(
                "bottom of a section must be normal in the top".into(),
            ));
        }
        Ok(Section { top, bottom })
    }

    pub(crate) fn new_unchecked(top: GroupHandle, bottom: GroupHandle) -> Self {
        Section { top, bottom }
    }

    pub fn whole(g: &GroupHandle) -> Self {
        Section {
            top: g.clone(),
            bottom: GroupHandle::trivial(g.degree()),
        }
    }

    pub fn order(&self) -> BigUint {
        self.top.order() / self.bottom.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.top.order() == self.bottom.order()
    }

    /// `T'B`, the preimage of the derived subgroup of `T/B`.
    pub fn rel_derived(&self) -> GroupHandle {
        self.top.derived_subgroup().join(&self.bottom)
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.top.generators();
        (0..g.len()).all(|i| {
            (i + 1..g.len()).all(|j| {
                self.bottom
                    .has(&crate::perm::Permutation::commutator(&g[i], &g[j]))
            })
        })
    }

    pub fn is_soluble(&self) -> bool {
        let mut d = self.top.clone();
        loop {
            if d.order() == self.bottom.order() {
                return true;
            }
            let next = d.derived_subgroup().join(&self.bottom);
            if next.order() == d.order() {
                return false;
            }
            d = next;
        }
    }

    /// Lower central series of `T/B` reaches the identity.
    pub fn is_nilpotent(&self) -> bool {
        let mut l = self.top.clone();
        loop {
            if l.order() == self.bottom.order() {
                return true;
            }
            let next = self.top.commutator_with(&l).join(&self.bottom);
            if next.order() == l.order() {
                return false;
            }
            l = next;
        }
    }

    /// Normal subgroups of `T` containing `B`, ascending by order.
    pub fn normals_above(&self, ctx: &Context) -> Result<Vec<Subgroup>> {
        let o = ctx.oracle(&self.top)?;
        let b = o.set_of(&self.bottom)?;
        Ok(o.normal_subgroups_with(ctx.exec)
            .iter()
            .filter(|n| b.is_subset(&n.set))
            .cloned()
            .collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorKind {
    Cyclic,
    NonabelianSimple,
}

/// One composition factor: a cyclic group of prime order or a nonabelian simple group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FactorDescriptor {
    pub kind: FactorKind,
    pub order: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl FactorDescriptor {
    pub fn cyclic(p: u64) -> Self {
        FactorDescriptor {
            kind: FactorKind::Cyclic,
            order: p,
            name: Some(format!("C{p}")),
        }
    }

    pub fn is_cyclic(&self) -> bool {
        self.kind == FactorKind::Cyclic
    }
}

impl fmt::Display for FactorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => f.write_str(n),
            None => write!(f, "unidentified nonabelian simple of order {}", self.order),
        }
    }
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |a, k| a * k)
}

/// `T` acts as the alternating group on its moved points, and that group is simple.
fn giant_alternating(t: &GroupHandle) -> Option<usize> {
    let k = t.moved_points().len();
    if k >= 5
        && t.order() * 2u32 == factorial(k as u64)
        && t.generators().iter().all(|g| g.is_even())
    {
        Some(k)
    } else {
        None
    }
}

fn to_u64(x: &BigUint, what: &'static str) -> Result<u64> {
    x.to_u64().ok_or_else(|| Error::CapExceeded {
        what,
        order: x.to_string(),
        cap: u64::MAX,
    })
}

/// Composition factors of `T/B`, sorted. Abelian layers come from `T/T'B`; a perfect layer
/// is split at a largest proper normal subgroup of `T` containing `B`.
pub fn composition_factors(ctx: &Context, sec: &Section) -> Result<Vec<FactorDescriptor>> {
    let mut out = Vec::new();
    let mut top = sec.top.clone();
    let bottom = &sec.bottom;
    while top.order() != bottom.order() {
        let d = top.derived_subgroup().join(bottom);
        if d.order() != top.order() {
            let index = to_u64(&(top.order() / d.order()), "abelian layer")?;
            out.extend(
                prime_factors(index)
                    .into_iter()
                    .map(FactorDescriptor::cyclic),
            );
            top = d;
            continue;
        }
        if bottom.is_trivial() {
            if let Some(k) = giant_alternating(&top) {
                let order = to_u64(top.order(), "alternating factor")?;
                let name = ctx
                    .table
                    .get(&format!("A{k}"))
                    .map(|r| r.name.clone())
                    .unwrap_or(format!("A{k}"));
                out.push(FactorDescriptor {
                    kind: FactorKind::NonabelianSimple,
                    order,
                    name: Some(name),
                });
                break;
            }
        }
        let o = ctx.oracle(&top)?;
        let b = o.set_of(bottom)?;
        let full = o.len();
        let m = o
            .normal_subgroups_with(ctx.exec)
            .iter()
            .filter(|n| b.is_subset(&n.set) && n.order() < full)
            .max_by_key(|n| n.order())
            .expect("the bottom itself qualifies")
            .clone();
        let order = (full / m.order()) as u64;
        out.push(identify_factor(ctx, &o, &m.set, order));
        top = m.group;
    }
    out.sort();
    Ok(out)
}

fn identify_factor(
    ctx: &Context,
    o: &crate::oracle::Oracle,
    m: &Bitset,
    order: u64,
) -> FactorDescriptor {
    let cands = ctx.table.with_order(order);
    let name = match cands.len() {
        0 => None,
        1 => Some(cands[0].name.clone()),
        _ => {
            let fp = element_orders_modulo(o, m);
            ctx.table
                .identify(order, Some(&fp))
                .ok()
                .map(|r| r.name.clone())
        }
    };
    FactorDescriptor {
        kind: FactorKind::NonabelianSimple,
        order,
        name,
    }
}

/// Sorted set of element orders of `G/M`.
pub fn element_orders_modulo(o: &crate::oracle::Oracle, m: &Bitset) -> Vec<u64> {
    let mut orders: Vec<u64> = (0..o.len() as u32).map(|x| o.order_modulo(x, m)).collect();
    orders.sort_unstable();
    orders.dedup();
    orders
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{Caps, Execution};

    fn ctx() -> Context {
        Context::new(Caps::default(), Execution::Sequential).unwrap()
    }

    fn names(f: &[FactorDescriptor]) -> Vec<String> {
        f.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn section_predicates() {
        let s4 = GroupHandle::symmetric(4);
        let a4 = s4.derived_subgroup();
        let v4 = a4.derived_subgroup();
        assert!(Section::new(s4.clone(), a4.clone()).unwrap().is_abelian());
        assert!(!Section::new(s4.clone(), v4.clone()).unwrap().is_abelian());
        assert!(!Section::new(s4.clone(), v4.clone()).unwrap().is_nilpotent());
        assert!(Section::new(a4.clone(), v4.clone()).unwrap().is_nilpotent());
        assert!(Section::whole(&s4).is_soluble());
        assert!(!Section::whole(&GroupHandle::alternating(5)).is_soluble());
        assert!(Section::new(v4, s4).is_err());
    }

    #[test]
    fn composition_factors_of_small_groups() {
        let c = ctx();
        let f = |g: &GroupHandle| names(&composition_factors(&c, &Section::whole(g)).unwrap());
        assert_eq!(f(&GroupHandle::cyclic(12)), vec!["C2", "C2", "C3"]);
        assert_eq!(f(&GroupHandle::alternating(5)), vec!["A5"]);
        assert_eq!(f(&GroupHandle::symmetric(8)), vec!["C2", "A8"]);
        let w =
            GroupHandle::wreath_product(&GroupHandle::symmetric(5), &GroupHandle::cyclic(2), 64)
                .unwrap()
                .group;
        assert_eq!(f(&w), vec!["C2", "C2", "C2", "A5", "A5"]);
        let l = GroupHandle::new(
            7,
            vec![
                crate::perm::Permutation::parse_cycles("(1 2 3 4 5 6 7)", 7, true).unwrap(),
                crate::perm::Permutation::parse_cycles("(2 3)(4 7)", 7, true).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(l.order_u64(), Some(168));
        assert_eq!(f(&l), vec!["PSL(2,7)"]);
    }

    #[test]
    fn factors_of_a_section() {
        let c = ctx();
        let a5 = GroupHandle::alternating(5);
        let g = GroupHandle::direct_product(&a5, &GroupHandle::cyclic(6), 64).unwrap();
        let z = crate::oracle::center(&g).unwrap();
        let sec = Section::new(g, z).unwrap();
        assert_eq!(names(&composition_factors(&c, &sec).unwrap()), vec!["A5"]);
    }
}

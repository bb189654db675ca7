//! Residuals and radicals for the built-in classes, their poly-closure towers, and the
//! inequality checks built on them.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::classes::{member_section, GroupClass};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::exact::{pow, Certificate, Rational};
use crate::group::GroupHandle;
use crate::oracle::{is_power_of, prime_divisors, Subgroup};
use crate::section::Section;

#[derive(Clone, Debug)]
pub struct ResidualResult {
    pub subgroup: GroupHandle,
    /// Strictly descending iterates, starting at the group and ending at `subgroup`.
    pub tower: Vec<GroupHandle>,
    pub class: GroupClass,
}

#[derive(Clone, Debug)]
pub struct RadicalResult {
    pub subgroup: GroupHandle,
    /// Strictly ascending terms, starting at the trivial group and ending at `subgroup`.
    pub tower: Vec<GroupHandle>,
}

fn trivial_of(g: &GroupHandle) -> GroupHandle {
    GroupHandle::trivial(g.degree())
}

/// Smallest normal subgroup with quotient in `class`. Abelian, nilpotent and soluble use
/// commutator series; other classes intersect the normal subgroups with a member quotient.
pub fn residual(ctx: &Context, g: &GroupHandle, class: &GroupClass) -> Result<ResidualResult> {
    let tower = match class {
        GroupClass::Trivial => vec![g.clone()],
        GroupClass::All => {
            if g.is_trivial() {
                vec![g.clone()]
            } else {
                vec![g.clone(), trivial_of(g)]
            }
        }
        GroupClass::Abelian => {
            let d = g.derived_subgroup();
            if d.order() == g.order() {
                vec![g.clone()]
            } else {
                vec![g.clone(), d]
            }
        }
        GroupClass::Nilpotent => g.lower_central_series(),
        GroupClass::Soluble => g.derived_series(),
        GroupClass::Poly(x) if matches!(**x, GroupClass::Abelian | GroupClass::Nilpotent) => {
            g.derived_series()
        }
        _ => return generic_residual(ctx, g, class),
    };
    Ok(ResidualResult {
        subgroup: tower.last().unwrap().clone(),
        tower,
        class: class.clone(),
    })
}

/// Intersection of the normal subgroups `N` with `G/N` in `class`.
pub fn generic_residual(
    ctx: &Context,
    g: &GroupHandle,
    class: &GroupClass,
) -> Result<ResidualResult> {
    let o = ctx.oracle(g)?;
    let mut keep: Vec<Subgroup> = Vec::new();
    for n in o.normal_subgroups_with(ctx.exec) {
        if member_section(
            ctx,
            class,
            &Section::new_unchecked(g.clone(), n.group.clone()),
        )? {
            keep.push(n.clone());
        }
    }
    let r = o.intersect_all(&keep);
    let tower = if r.order() == o.len() {
        vec![g.clone()]
    } else {
        vec![g.clone(), r.group.clone()]
    };
    Ok(ResidualResult {
        subgroup: r.group,
        tower,
        class: class.clone(),
    })
}

/// Residual of `T/B`, returned as its preimage in `T`.
pub fn section_residual(ctx: &Context, sec: &Section, class: &GroupClass) -> Result<GroupHandle> {
    let (t, b) = (&sec.top, &sec.bottom);
    let iterate = |step: &dyn Fn(&GroupHandle) -> GroupHandle| {
        let mut cur = t.clone();
        loop {
            let next = step(&cur).join(b);
            if next.order() == cur.order() {
                return cur;
            }
            cur = next;
        }
    };
    match class {
        GroupClass::Abelian => Ok(t.derived_subgroup().join(b)),
        GroupClass::Nilpotent => Ok(iterate(&|l| t.commutator_with(l))),
        GroupClass::Soluble => Ok(iterate(&|d| d.derived_subgroup())),
        _ => generic_section_residual(ctx, sec, class),
    }
}

pub fn generic_section_residual(
    ctx: &Context,
    sec: &Section,
    class: &GroupClass,
) -> Result<GroupHandle> {
    let o = ctx.oracle(&sec.top)?;
    let mut keep = Vec::new();
    for n in sec.normals_above(ctx)? {
        if member_section(
            ctx,
            class,
            &Section::new_unchecked(sec.top.clone(), n.group.clone()),
        )? {
            keep.push(n);
        }
    }
    Ok(o.intersect_all(&keep).group)
}

/// Largest normal subgroup in `class`. Nilpotent uses the product of the `O_p`, soluble the
/// iterated Fitting series; other classes join the normal member subgroups.
pub fn radical(ctx: &Context, g: &GroupHandle, class: &GroupClass) -> Result<RadicalResult> {
    match class {
        GroupClass::Trivial => Ok(RadicalResult {
            subgroup: trivial_of(g),
            tower: vec![trivial_of(g)],
        }),
        GroupClass::All => {
            let mut tower = vec![trivial_of(g)];
            if !g.is_trivial() {
                tower.push(g.clone());
            }
            Ok(RadicalResult {
                subgroup: g.clone(),
                tower,
            })
        }
        GroupClass::Abelian => Err(Error::Unsupported(
            "abelian groups are not closed under normal products".into(),
        )),
        GroupClass::Nilpotent => {
            let f = ctx.oracle(g)?.fitting().group;
            let mut tower = vec![trivial_of(g)];
            if !f.is_trivial() {
                tower.push(f.clone());
            }
            Ok(RadicalResult { subgroup: f, tower })
        }
        GroupClass::Soluble => {
            let o = ctx.oracle(g)?;
            let normals = o.normal_subgroups_with(ctx.exec);
            let mut cur = o.trivial();
            let mut tower = vec![cur.group.clone()];
            loop {
                let above: Vec<&Subgroup> = normals.iter().filter(|n| cur.le(n)).collect();
                let base = cur.order();
                let primes = prime_divisors((o.len() / base) as u64);
                let parts: Vec<Subgroup> = primes
                    .iter()
                    .flat_map(|&p| {
                        above
                            .iter()
                            .filter(move |n| is_power_of((n.order() / base) as u64, p))
                    })
                    .map(|n| (*n).clone())
                    .collect();
                let next = o.join_all(&parts);
                let next = o.join_all(&[cur.clone(), next]);
                if next.order() == cur.order() {
                    return Ok(RadicalResult {
                        subgroup: cur.group,
                        tower,
                    });
                }
                tower.push(next.group.clone());
                cur = next;
            }
        }
        GroupClass::Poly(x) => poly_radical(ctx, g, x),
        _ => generic_radical(ctx, g, class),
    }
}

/// Join of the normal subgroups that belong to `class`.
pub fn generic_radical(
    ctx: &Context,
    g: &GroupHandle,
    class: &GroupClass,
) -> Result<RadicalResult> {
    if matches!(class, GroupClass::Abelian) {
        return Err(Error::Unsupported(
            "abelian groups are not closed under normal products".into(),
        ));
    }
    let o = ctx.oracle(g)?;
    let mut keep = Vec::new();
    for n in o.normal_subgroups_with(ctx.exec) {
        if member_section(ctx, class, &Section::whole(&n.group))? {
            keep.push(n.clone());
        }
    }
    let r = o.join_all(&keep);
    let mut tower = vec![trivial_of(g)];
    if !r.is_trivial() {
        tower.push(r.group.clone());
    }
    Ok(RadicalResult {
        subgroup: r.group,
        tower,
    })
}

/// Radical of `T/B`, returned as its preimage in `T`.
pub fn section_radical(ctx: &Context, sec: &Section, class: &GroupClass) -> Result<GroupHandle> {
    if matches!(class, GroupClass::Abelian) {
        return Err(Error::Unsupported(
            "abelian groups are not closed under normal products".into(),
        ));
    }
    let o = ctx.oracle(&sec.top)?;
    let mut keep = Vec::new();
    for n in sec.normals_above(ctx)? {
        if member_section(
            ctx,
            class,
            &Section::new_unchecked(n.group.clone(), sec.bottom.clone()),
        )? {
            keep.push(n);
        }
    }
    let b = o.subgroup(&sec.bottom)?;
    keep.push(b);
    Ok(o.join_all(&keep).group)
}

/// Iterated residual `D₀ = G`, `D_{i+1} = (D_i)^X`; the terminal term is the residual for poly(X).
pub fn poly_residual(ctx: &Context, g: &GroupHandle, x: &GroupClass) -> Result<ResidualResult> {
    let x = x.base();
    let mut tower = vec![g.clone()];
    loop {
        let cur = tower.last().unwrap();
        let next = residual(ctx, cur, x)?.subgroup;
        if next.order() == cur.order() {
            break;
        }
        tower.push(next);
    }
    Ok(ResidualResult {
        subgroup: tower.last().unwrap().clone(),
        tower,
        class: GroupClass::poly(x.clone()),
    })
}

/// Ascending radical tower `R₀ = 1`, `R_{i+1}/R_i = (G/R_i)_X`.
pub fn poly_radical(ctx: &Context, g: &GroupHandle, x: &GroupClass) -> Result<RadicalResult> {
    let x = x.base();
    let mut tower = vec![trivial_of(g)];
    loop {
        let cur = tower.last().unwrap().clone();
        let next = section_radical(ctx, &Section::new_unchecked(g.clone(), cur.clone()), x)?;
        if next.order() == cur.order() {
            break;
        }
        tower.push(next);
    }
    Ok(RadicalResult {
        subgroup: tower.last().unwrap().clone(),
        tower,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
    HypothesisNotMet,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub group: String,
    pub class: String,
    pub order: String,
    pub residual_order: String,
    /// Certified upper bound `N/D` for the exponent.
    pub threshold: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Checks `|G^X̄| > |G|^γ` as `|G^X̄|^D > |G|^N` for the certified upper bound `N/D ≥ γ`.
/// A group with nontrivial X-radical does not meet the hypothesis.
pub fn main_inequality_check(
    ctx: &Context,
    name: &str,
    g: &GroupHandle,
    x: &GroupClass,
    gamma: &Certificate,
) -> Result<InequalityReport> {
    let x = x.base();
    let mut report = InequalityReport {
        group: name.to_string(),
        class: GroupClass::poly(x.clone()).to_string(),
        order: g.order().to_string(),
        residual_order: String::new(),
        threshold: gamma.upper.to_string(),
        verdict: Verdict::HypothesisNotMet,
        note: None,
    };
    if g.is_trivial() {
        report.note = Some("trivial group".into());
        return Ok(report);
    }
    let rad = radical(ctx, g, x)?.subgroup;
    if !rad.is_trivial() {
        report.note = Some(format!("{x}-radical has order {}", rad.order()));
        return Ok(report);
    }
    let r = poly_residual(ctx, g, x)?.subgroup;
    report.residual_order = r.order().to_string();
    report.verdict = inequality_verdict(r.order(), g.order(), gamma);
    Ok(report)
}

pub fn inequality_verdict(residual: &BigUint, order: &BigUint, gamma: &Certificate) -> Verdict {
    let exceeds = |q: Rational| pow(residual, q.den) > pow(order, q.num);
    if exceeds(gamma.upper) {
        Verdict::Pass
    } else if !exceeds(gamma.lower) {
        Verdict::Fail
    } else {
        Verdict::Inconclusive
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub lhs: u64,
    pub rhs: u64,
    pub holds: bool,
    pub equality: bool,
    /// Equality occurs exactly when the group is abelian.
    pub consistent: bool,
}

impl BoundCheck {
    fn new(lhs: u64, rhs: u64, abelian: bool) -> Self {
        BoundCheck {
            lhs,
            rhs,
            holds: lhs >= rhs,
            equality: lhs == rhs,
            consistent: (lhs == rhs) == abelian,
        }
    }

    pub fn ok(&self) -> bool {
        self.holds && self.consistent
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrattiniReport {
    pub group: String,
    pub order: u64,
    pub frattini_order: u64,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abelian: Option<bool>,
    /// `|G'|² ≥ (G : Z(G))`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derived_squared: Option<BoundCheck>,
    /// `|G'|·|G^N| ≥ (G : Z(G))`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derived_times_nilpotent: Option<BoundCheck>,
    /// `|G'|·|G^X| ≥ (G : Z(G))` for X abelian and X nilpotent.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub between: Vec<BoundCheck>,
}

/// Bounds on `(G : Z(G))` by commutator-type residuals, for groups with trivial Frattini subgroup.
pub fn frattini_bound_check(ctx: &Context, name: &str, g: &GroupHandle) -> Result<FrattiniReport> {
    let o = ctx.oracle(g)?;
    let order = o.len() as u64;
    let phi = o.frattini(&ctx.caps, ctx.exec)?;
    let mut report = FrattiniReport {
        group: name.to_string(),
        order,
        frattini_order: phi.order() as u64,
        verdict: Verdict::HypothesisNotMet,
        abelian: None,
        derived_squared: None,
        derived_times_nilpotent: None,
        between: vec![],
    };
    if !phi.is_trivial() {
        return Ok(report);
    }
    let abelian = g.is_abelian();
    let d = g.derived_subgroup().order_u64().expect("small order");
    let index = order / o.center().order() as u64;
    let res = |x: &GroupClass| -> Result<u64> {
        Ok(residual(ctx, g, x)?
            .subgroup
            .order_u64()
            .expect("small order"))
    };
    let nil = res(&GroupClass::Nilpotent)?;
    report.abelian = Some(abelian);
    report.derived_squared = Some(BoundCheck::new(d * d, index, abelian));
    report.derived_times_nilpotent = Some(BoundCheck::new(d * nil, index, abelian));
    report.between = [GroupClass::Abelian, GroupClass::Nilpotent]
        .iter()
        .map(|x| Ok(BoundCheck::new(d * res(x)?, index, abelian)))
        .collect::<Result<_>>()?;
    let all_ok = report.derived_squared.as_ref().unwrap().ok()
        && report.derived_times_nilpotent.as_ref().unwrap().ok()
        && report.between.iter().all(BoundCheck::ok);
    report.verdict = if all_ok { Verdict::Pass } else { Verdict::Fail };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{Caps, Execution};
    use crate::exact::{big, certify, LogRatio};
    use crate::perm::Permutation;

    fn ctx() -> Context {
        Context::new(Caps::default(), Execution::Sequential).unwrap()
    }

    fn c(s: &str) -> GroupClass {
        GroupClass::parse(s).unwrap()
    }

    fn order(g: &GroupHandle) -> u64 {
        g.order_u64().unwrap()
    }

    fn w() -> GroupHandle {
        GroupHandle::wreath_product(&GroupHandle::symmetric(5), &GroupHandle::cyclic(2), 64)
            .unwrap()
            .group
    }

    #[test]
    fn residuals() {
        let cx = ctx();
        let s5 = GroupHandle::symmetric(5);
        assert_eq!(
            order(&residual(&cx, &s5, &c("abelian")).unwrap().subgroup),
            60
        );
        assert_eq!(
            order(
                &residual(&cx, &GroupHandle::alternating(5), &c("soluble"))
                    .unwrap()
                    .subgroup
            ),
            60
        );
        assert_eq!(
            order(&residual(&cx, &w(), &c("soluble")).unwrap().subgroup),
            3600
        );
        let s4 = GroupHandle::symmetric(4);
        let pr = poly_residual(&cx, &s4, &c("nilpotent")).unwrap();
        assert_eq!(
            pr.tower.iter().map(order).collect::<Vec<_>>(),
            vec![24, 12, 4, 1]
        );
        assert_eq!(
            order(&poly_residual(&cx, &w(), &c("nilpotent")).unwrap().subgroup),
            3600
        );
        let a6 = GroupHandle::alternating(6);
        assert_eq!(
            order(&poly_residual(&cx, &a6, &c("d0xS:A5")).unwrap().subgroup),
            360
        );
        for g in [
            GroupHandle::symmetric(4),
            GroupHandle::symmetric(5),
            GroupHandle::cyclic(6),
        ] {
            for x in ["abelian", "nilpotent", "soluble"] {
                let fast = residual(&cx, &g, &c(x)).unwrap().subgroup;
                let slow = generic_residual(&cx, &g, &c(x)).unwrap().subgroup;
                assert!(fast.same_group(&slow), "{x} {g:?}");
            }
        }
    }

    #[test]
    fn radicals() {
        let cx = ctx();
        let s4 = GroupHandle::symmetric(4);
        assert_eq!(
            order(&radical(&cx, &s4, &c("nilpotent")).unwrap().subgroup),
            4
        );
        assert_eq!(
            order(
                &radical(&cx, &GroupHandle::alternating(5), &c("soluble"))
                    .unwrap()
                    .subgroup
            ),
            1
        );
        assert_eq!(
            order(&radical(&cx, &w(), &c("nilpotent")).unwrap().subgroup),
            1
        );
        // the socle A5 x A5 is itself a normal member
        assert_eq!(
            order(&radical(&cx, &w(), &c("d0xS:A5")).unwrap().subgroup),
            3600
        );
        assert_eq!(
            order(&poly_radical(&cx, &s4, &c("nilpotent")).unwrap().subgroup),
            24
        );
        let a5c6 =
            GroupHandle::direct_product(&GroupHandle::alternating(5), &GroupHandle::cyclic(6), 64)
                .unwrap();
        assert_eq!(
            order(&poly_radical(&cx, &a5c6, &c("nilpotent")).unwrap().subgroup),
            6
        );
        assert_eq!(
            order(
                &poly_radical(&cx, &GroupHandle::alternating(6), &c("d0xS:A5"))
                    .unwrap()
                    .subgroup
            ),
            1
        );
        assert!(radical(&cx, &s4, &c("abelian")).is_err());
        for g in [s4, a5c6, GroupHandle::symmetric(3)] {
            for x in ["nilpotent", "soluble"] {
                let fast = radical(&cx, &g, &c(x)).unwrap().subgroup;
                let slow = generic_radical(&cx, &g, &c(x)).unwrap().subgroup;
                assert!(fast.same_group(&slow), "{x} {g:?}");
            }
        }
    }

    #[test]
    fn inequality() {
        let cx = ctx();
        let gamma = certify(
            &LogRatio::new(big(60).pow(3), big(120).pow(3) * 24u32).unwrap(),
            1e-9,
        )
        .unwrap();
        let r = main_inequality_check(&cx, "W", &w(), &c("nilpotent"), &gamma).unwrap();
        assert_eq!(
            (r.verdict, r.residual_order.as_str()),
            (Verdict::Pass, "3600")
        );
        let a5 = GroupHandle::alternating(5);
        assert_eq!(
            main_inequality_check(&cx, "A5", &a5, &c("nilpotent"), &gamma)
                .unwrap()
                .verdict,
            Verdict::Pass
        );
        let s4 = GroupHandle::symmetric(4);
        assert_eq!(
            main_inequality_check(&cx, "S4", &s4, &c("nilpotent"), &gamma)
                .unwrap()
                .verdict,
            Verdict::HypothesisNotMet
        );
        assert_eq!(
            inequality_verdict(&big(10), &big(100), &gamma),
            Verdict::Fail
        );
    }

    #[test]
    fn frattini_bounds() {
        let cx = ctx();
        let s3 = GroupHandle::symmetric(3);
        let r = frattini_bound_check(&cx, "S3", &s3).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        let d = r.derived_squared.unwrap();
        assert_eq!((d.lhs, d.rhs, d.equality), (9, 6, false));
        let v4 = GroupHandle::new(
            4,
            vec![
                Permutation::parse_cycles("(0 1)(2 3)", 4, false).unwrap(),
                Permutation::parse_cycles("(0 2)(1 3)", 4, false).unwrap(),
            ],
        )
        .unwrap();
        let r = frattini_bound_check(&cx, "V4", &v4).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.derived_squared.unwrap().equality && r.derived_times_nilpotent.unwrap().equality);
        let q8 = GroupHandle::new(
            8,
            vec![
                Permutation::parse_cycles("(0 1 2 3)(4 5 6 7)", 8, false).unwrap(),
                Permutation::parse_cycles("(0 4 2 6)(1 7 3 5)", 8, false).unwrap(),
            ],
        )
        .unwrap();
        let r = frattini_bound_check(&cx, "Q8", &q8).unwrap();
        assert_eq!(
            (r.verdict, r.frattini_order),
            (Verdict::HypothesisNotMet, 2)
        );
    }
}

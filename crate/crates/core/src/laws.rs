//! Empirical checks of closure laws, residual and radical identities over a corpus.

use serde::{Deserialize, Serialize};

use crate::catalog::CorpusGroup;
use crate::classes::{member, member_section, Closure, GroupClass};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::group::GroupHandle;
use crate::par;
use crate::resrad::{poly_radical, radical, residual, section_radical, section_residual};
use crate::section::Section;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LawStatus {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawResult {
    pub law: String,
    pub status: LawStatus,
    /// Groups on which the law had content and was checked.
    pub checked: usize,
    /// Groups left out because they exceed a cap.
    pub skipped: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub class: String,
    pub corpus: Vec<String>,
    pub laws: Vec<LawResult>,
}

impl LawReport {
    pub fn ok(&self) -> bool {
        self.laws.iter().all(|l| l.status != LawStatus::Fail)
    }

    pub fn violations(&self) -> Vec<&LawResult> {
        self.laws
            .iter()
            .filter(|l| l.status == LawStatus::Fail)
            .collect()
    }
}

enum Check {
    Holds,
    Violated(String),
    Vacuous,
}

fn verdict(ok: bool, why: impl FnOnce() -> String) -> Check {
    if ok {
        Check::Holds
    } else {
        Check::Violated(why())
    }
}

type LawFn = fn(&Context, &GroupClass, &GroupHandle) -> Result<Check>;

struct Law {
    name: &'static str,
    needs: &'static [Closure],
    check: LawFn,
}

fn normals(ctx: &Context, g: &GroupHandle) -> Result<Vec<GroupHandle>> {
    ctx.normal_subgroups(g)
}

fn quotient(g: &GroupHandle, n: &GroupHandle) -> Section {
    Section::new_unchecked(g.clone(), n.clone())
}

pub fn is_subnormal(h: &GroupHandle, g: &GroupHandle) -> Result<bool> {
    let mut cur = g.clone();
    loop {
        if cur.order() == h.order() {
            return Ok(true);
        }
        let next = cur.normal_closure(h.generators())?;
        if next.order() == cur.order() {
            return Ok(false);
        }
        cur = next;
    }
}

fn residual_quotient(ctx: &Context, x: &GroupClass, g: &GroupHandle) -> Result<Check> {
    let r = residual(ctx, g, x)?.subgroup;
    for n in normals(ctx, g)? {
        let lhs = section_residual(ctx, &quotient(g, &n), x)?;
        if !lhs.same_group(&r.join(&n)) {
            return Ok(Check::Violated(format!(
                "quotient by a normal subgroup of order {}",
                n.order()
            )));
        }
    }
    Ok(Check::Holds)
}

fn residual_trivial_iff_member(ctx: &Context, x: &GroupClass, g: &GroupHandle) -> Result<Check> {
    let r = residual(ctx, g, x)?.subgroup;
    let m = member(ctx, x, g)?;
    Ok(verdict(r.is_trivial() == m, || {
        format!("residual order {}, member {m}", r.order())
    }))
}

fn residual_monotone(ctx: &Context, x: &GroupClass, g: &GroupHandle) -> Result<Check> {
    let small = residual(ctx, g, x)?.subgroup;
    let big = residual(ctx, g, &x.extension_closure())?.subgroup;
    Ok(verdict(big.is_subgroup_of(&small), || {
        "closure residual not inside the residual".into()
    }))
}

fn radical_contains_subnormal_members(
    ctx: &Context,
    x: &GroupClass,
    g: &GroupHandle,
) -> Result<Check> {
    let o = ctx.oracle(g)?;
    let lattice = o.lattice(&ctx.caps, ctx.exec)?;
    let rad = radical(ctx, g, x)?.subgroup;
    for e in &lattice.subgroups {
        let h = o.lattice_subgroup(e);
        if h.is_subgroup_of(&rad) || !is_subnormal(&h, g)? {
            continue;
        }
        if member(ctx, x, &h)? {
            return Ok(Check::Violated(format!(
                "subnormal member of order {} outside the radical",
                e.order
            )));
        }
    }
    Ok(Check::Holds)
}

fn radical_monotone(ctx: &Context, x: &GroupClass, g: &GroupHandle) -> Result<Check> {
    let poly = x.extension_closure();
    if !poly.declared_closures().contains(&Closure::NormalProduct) {
        return Ok(Check::Vacuous);
    }
    let small = radical(ctx, g, x)?.subgroup;
    let big = radical(ctx, g, &poly)?.subgroup;
    Ok(verdict(small.is_subgroup_of(&big), || {
        "radical not inside the closure radical".into()
    }))
}

fn direct_products(ctx: &Context, x: &GroupClass, g: &GroupHandle) -> Result<Check> {
    if !member(ctx, x, g)? {
        return Ok(Check::Vacuous);
    }
    let partners = [
        GroupHandle::cyclic(2),
        GroupHandle::symmetric(3),
        GroupHandle::alternating(5),
        g.clone(),
    ];
    let mut any = false;
    for h in &partners {
        let cap = ctx.caps.element_cap as f64;
        let fits = g
            .order_u64()
            .zip(h.order_u64())
            .is_some_and(|(a, b)| (a as f64) * (b as f64) <= cap);
        if !fits || g.degree() + h.degree() > ctx.caps.degree_cap || !member(ctx, x, h)? {
            continue;
        }
        any = true;
        let p = GroupHandle::direct_product(g, h, ctx.caps.degree_cap)?;
        if !member(ctx, x, &p)? {
            return Ok(Check::Violated(format!(
                "product with a member of order {}",
                h.order()
            )));
        }
    }
    Ok(if any { Check::Holds } else { Check::Vacuous })
}

fn residually_closed(ctx: &Context, x: &GroupClass, g: &GroupHandle) -> Result<Check> {
    let o = ctx.oracle(g)?;
    let mut good = Vec::new();
    for n in o.normal_subgroups_with(ctx.exec) {
        if member_section(ctx, x, &quotient(g, &n.group))? {
            good.push(n.clone());
        }
    }
    for (i, a) in good.iter().enumerate() {
        for b in &good[i + 1..] {
            let m = o.intersect_all(&[a.clone(), b.clone()]);
            if !member_section(ctx, x, &quotient(g, &m.group))? {
                return Ok(Check::Violated(format!(
                    "quotients by orders {} and {} are members, by their intersection not",
                    a.order(),
                    b.order()
                )));
            }
        }
    }
    Ok(Check::Holds)
}

fn normal_products(ctx: &Context, x: &GroupClass, g: &GroupHandle) -> Result<Check> {
    let mut good = Vec::new();
    for n in normals(ctx, g)? {
        if member(ctx, x, &n)? {
            good.push(n);
        }
    }
    for (i, a) in good.iter().enumerate() {
        for b in &good[i + 1..] {
            if !member(ctx, x, &a.join(b))? {
                return Ok(Check::Violated(format!(
                    "normal members of orders {} and {}",
                    a.order(),
                    b.order()
                )));
            }
        }
    }
    Ok(Check::Holds)
}

fn quotient_radical(ctx: &Context, x: &GroupClass, g: &GroupHandle) -> Result<Check> {
    let rad = radical(ctx, g, x)?.subgroup;
    let ext = x.declared_closures().contains(&Closure::Extension);
    for n in normals(ctx, g)? {
        let image = rad.join(&n);
        let qr = section_radical(ctx, &quotient(g, &n), x)?;
        if !image.is_subgroup_of(&qr) {
            return Ok(Check::Violated(format!(
                "image of the radical modulo order {} not in the quotient radical",
                n.order()
            )));
        }
        if ext && member(ctx, x, &n)? && !image.same_group(&qr) {
            return Ok(Check::Violated(format!(
                "strict inclusion modulo a normal member of order {}",
                n.order()
            )));
        }
    }
    Ok(Check::Holds)
}

fn radical_of_radical_quotient(ctx: &Context, x: &GroupClass, g: &GroupHandle) -> Result<Check> {
    let rad = radical(ctx, g, x)?.subgroup;
    let again = section_radical(ctx, &quotient(g, &rad), x)?;
    Ok(verdict(again.same_group(&rad), || {
        format!(
            "quotient by the radical has radical of order {}",
            again.order()
        )
    }))
}

fn extensions(ctx: &Context, x: &GroupClass, g: &GroupHandle) -> Result<Check> {
    let whole = member(ctx, x, g)?;
    for n in normals(ctx, g)? {
        if member(ctx, x, &n)? && member_section(ctx, x, &quotient(g, &n))? && !whole {
            return Ok(Check::Violated(format!(
                "extension by a normal member of order {}",
                n.order()
            )));
        }
    }
    Ok(Check::Holds)
}

fn control(ctx: &Context, x: &GroupClass, g: &GroupHandle) -> Result<Check> {
    if g.is_trivial() || !radical(ctx, g, x)?.subgroup.is_trivial() {
        return Ok(Check::Vacuous);
    }
    let m = member(ctx, &x.extension_closure(), g)?;
    Ok(verdict(!m, || {
        "nontrivial closure member with trivial radical".into()
    }))
}

fn radical_tower(ctx: &Context, x: &GroupClass, g: &GroupHandle) -> Result<Check> {
    let tower = poly_radical(ctx, g, x)?;
    let reaches = tower.subgroup.same_group(g);
    let m = member(ctx, &x.extension_closure(), g)?;
    if reaches != m {
        return Ok(Check::Violated(format!(
            "tower reaches the group: {reaches}, closure member: {m}"
        )));
    }
    let normal = tower.tower.iter().all(|t| t.is_normal_in(g));
    let ascending = tower
        .tower
        .windows(2)
        .all(|w| w[0].is_subgroup_of(&w[1]) && w[0].order() < w[1].order());
    Ok(verdict(normal && ascending, || {
        "tower term not normal or not strictly ascending".into()
    }))
}

fn subgroup_closure(ctx: &Context, x: &GroupClass, g: &GroupHandle) -> Result<Check> {
    if !member(ctx, x, g)? {
        return Ok(Check::Vacuous);
    }
    let o = ctx.oracle(g)?;
    let lattice = o.lattice(&ctx.caps, ctx.exec)?;
    for e in &lattice.subgroups {
        if !member(ctx, x, &o.lattice_subgroup(e))? {
            return Ok(Check::Violated(format!(
                "subgroup of order {} is not a member",
                e.order
            )));
        }
    }
    Ok(Check::Holds)
}

fn quotient_closure(ctx: &Context, x: &GroupClass, g: &GroupHandle) -> Result<Check> {
    if !member(ctx, x, g)? {
        return Ok(Check::Vacuous);
    }
    for n in normals(ctx, g)? {
        if !member_section(ctx, x, &quotient(g, &n))? {
            return Ok(Check::Violated(format!(
                "quotient by order {} is not a member",
                n.order()
            )));
        }
    }
    Ok(Check::Holds)
}

fn expansion(ctx: &Context, x: &GroupClass, g: &GroupHandle) -> Result<Check> {
    if !member(ctx, x, g)? {
        return Ok(Check::Vacuous);
    }
    Ok(verdict(member(ctx, &x.extension_closure(), g)?, || {
        "member outside the closure".into()
    }))
}

fn containment_chain(ctx: &Context, _x: &GroupClass, g: &GroupHandle) -> Result<Check> {
    let a = member(ctx, &GroupClass::Abelian, g)?;
    let n = member(ctx, &GroupClass::Nilpotent, g)?;
    let s = member(ctx, &GroupClass::Soluble, g)?;
    let poly_n = member(ctx, &GroupClass::poly(GroupClass::Nilpotent), g)?;
    if (a && !n) || (n && !s) || poly_n != s {
        return Ok(Check::Violated(format!(
            "abelian {a}, nilpotent {n}, soluble {s}, poly-nilpotent {poly_n}"
        )));
    }
    let ra = residual(ctx, g, &GroupClass::Abelian)?.subgroup;
    let rn = residual(ctx, g, &GroupClass::Nilpotent)?.subgroup;
    let rs = residual(ctx, g, &GroupClass::Soluble)?.subgroup;
    let fit = radical(ctx, g, &GroupClass::Nilpotent)?.subgroup;
    let sol = radical(ctx, g, &GroupClass::Soluble)?.subgroup;
    let ok = rs.is_subgroup_of(&rn) && rn.is_subgroup_of(&ra) && fit.is_subgroup_of(&sol);
    Ok(verdict(ok, || "residuals or radicals out of order".into()))
}

const LAWS: &[Law] = &[
    Law {
        name: "residual-of-quotient",
        needs: &[Closure::Quotient, Closure::Residual],
        check: residual_quotient,
    },
    Law {
        name: "residual-trivial-iff-member",
        needs: &[Closure::Residual],
        check: residual_trivial_iff_member,
    },
    Law {
        name: "residual-monotone",
        needs: &[Closure::Residual],
        check: residual_monotone,
    },
    Law {
        name: "radical-contains-subnormal-members",
        needs: &[Closure::NormalProduct],
        check: radical_contains_subnormal_members,
    },
    Law {
        name: "radical-monotone",
        needs: &[Closure::NormalProduct],
        check: radical_monotone,
    },
    Law {
        name: "direct-products",
        needs: &[Closure::NormalProduct],
        check: direct_products,
    },
    Law {
        name: "residually-closed",
        needs: &[Closure::Subgroup, Closure::DirectProduct],
        check: residually_closed,
    },
    Law {
        name: "normal-products",
        needs: &[Closure::Quotient, Closure::Extension],
        check: normal_products,
    },
    Law {
        name: "radical-of-quotient",
        needs: &[Closure::Quotient, Closure::NormalProduct],
        check: quotient_radical,
    },
    Law {
        name: "radical-of-radical-quotient",
        needs: &[Closure::NormalProduct, Closure::Extension],
        check: radical_of_radical_quotient,
    },
    Law {
        name: "extension-closed",
        needs: &[Closure::Extension],
        check: extensions,
    },
    Law {
        name: "trivial-radical-control",
        needs: &[Closure::NormalProduct],
        check: control,
    },
    Law {
        name: "radical-tower",
        needs: &[Closure::Quotient, Closure::NormalProduct],
        check: radical_tower,
    },
    Law {
        name: "subgroup-closed",
        needs: &[Closure::Subgroup],
        check: subgroup_closure,
    },
    Law {
        name: "quotient-closed",
        needs: &[Closure::Quotient],
        check: quotient_closure,
    },
    Law {
        name: "expansion",
        needs: &[],
        check: expansion,
    },
    Law {
        name: "containment-chain",
        needs: &[],
        check: containment_chain,
    },
];

pub fn law_names() -> Vec<&'static str> {
    LAWS.iter().map(|l| l.name).collect()
}

fn skippable(e: &Error) -> bool {
    e.is_scale() || matches!(e, Error::Undecidable(_))
}

/// Checks every law whose hypotheses the class declares, on each corpus group.
pub fn closure_property_report(
    ctx: &Context,
    class: &GroupClass,
    corpus: &[CorpusGroup],
) -> Result<LawReport> {
    let closures = class.declared_closures();
    let mut laws = Vec::new();
    for law in LAWS {
        if !law.needs.iter().all(|c| closures.contains(c)) {
            laws.push(LawResult {
                law: law.name.into(),
                status: LawStatus::Skip,
                checked: 0,
                skipped: corpus.len(),
                counterexample: None,
            });
            continue;
        }
        let outcomes = par::map(ctx.exec, corpus, |cg| (law.check)(ctx, class, &cg.group));
        let mut res = LawResult {
            law: law.name.into(),
            status: LawStatus::Pass,
            checked: 0,
            skipped: 0,
            counterexample: None,
        };
        for (cg, out) in corpus.iter().zip(outcomes) {
            match out {
                Ok(Check::Holds) => res.checked += 1,
                Ok(Check::Vacuous) => {}
                Ok(Check::Violated(why)) => {
                    res.checked += 1;
                    if res.counterexample.is_none() {
                        res.counterexample = Some(format!("{}: {why}", cg.name));
                    }
                    res.status = LawStatus::Fail;
                }
                Err(e) if skippable(&e) => res.skipped += 1,
                Err(e) => return Err(e),
            }
        }
        if res.status == LawStatus::Pass && res.checked == 0 {
            res.status = LawStatus::Skip;
        }
        laws.push(res);
    }
    Ok(LawReport {
        class: class.to_string(),
        corpus: corpus.iter().map(|c| c.name.clone()).collect(),
        laws,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::load_corpus;
    use crate::config::{Caps, Execution};

    #[test]
    fn subnormality() {
        let s4 = GroupHandle::symmetric(4);
        let v = s4
            .subgroup(vec![crate::perm::Permutation::parse_cycles(
                "(0 1)(2 3)",
                4,
                false,
            )
            .unwrap()])
            .unwrap();
        assert!(is_subnormal(&v, &s4).unwrap());
        let t = s4
            .subgroup(vec![crate::perm::Permutation::parse_cycles(
                "(0 1)", 4, false,
            )
            .unwrap()])
            .unwrap();
        assert!(!is_subnormal(&t, &s4).unwrap());
    }

    #[test]
    fn soluble_laws_on_small_groups() {
        let ctx = Context::new(Caps::default(), Execution::Parallel).unwrap();
        let corpus: Vec<CorpusGroup> = load_corpus(&ctx.data_dir, &ctx.caps)
            .unwrap()
            .into_iter()
            .filter(|c| c.group.order_u64().unwrap() <= 60)
            .collect();
        let rep = closure_property_report(&ctx, &GroupClass::Soluble, &corpus).unwrap();
        assert!(rep.ok(), "{:?}", rep.violations());
        assert!(
            rep.laws
                .iter()
                .filter(|l| l.status == LawStatus::Pass)
                .count()
                >= 15,
            "{rep:?}"
        );
    }
}

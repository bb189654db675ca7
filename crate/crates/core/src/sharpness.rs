//! The tower `W_r = Aut(S₀) wr L_r` showing the exponent γ cannot be improved.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::catalog::SimpleGroupRecord;
use crate::classes::{member, GroupClass};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::exact::{big, pow};
use crate::group::{GroupHandle, WreathProduct};
use crate::hp::Real;
use crate::resrad::{poly_residual, radical};

pub const LIMIT_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct SharpnessConfig {
    pub s0: SimpleGroupRecord,
    /// A faithful permutation realization of `Aut(S₀)`, when one is at hand.
    pub aut_group: Option<GroupHandle>,
    pub l: GroupHandle,
    pub levels: u32,
}

impl SharpnessConfig {
    pub fn new(
        s0: SimpleGroupRecord,
        aut_group: Option<GroupHandle>,
        l: GroupHandle,
        levels: u32,
    ) -> Result<Self> {
        if let Some(a) = &aut_group {
            if a.order_u64() != Some(s0.aut_order) {
                return Err(Error::Data(format!(
                    "Aut({}) realization has order {}, expected {}",
                    s0.name,
                    a.order(),
                    s0.aut_order
                )));
            }
        }
        if !l.is_transitive() {
            return Err(Error::Data("the top group must be transitive".into()));
        }
        Ok(SharpnessConfig {
            s0,
            aut_group,
            l,
            levels,
        })
    }

    pub fn nu(&self) -> u64 {
        self.l.degree() as u64
    }

    pub fn l_order(&self) -> u64 {
        self.l.order_u64().expect("small top group")
    }
}

/// `L_1 = L`, `L_k = L_{k−1} wr L`, acting on `ν^k` points.
pub fn build_l_tower(l: &GroupHandle, levels: u32, degree_cap: usize) -> Result<GroupHandle> {
    if levels == 0 {
        return Err(Error::Unsupported("levels must be at least 1".into()));
    }
    let mut cur = l.clone();
    for _ in 1..levels {
        cur = GroupHandle::wreath_product(&cur, l, degree_cap)?.group;
    }
    Ok(cur)
}

/// `|L|^((r−1)/(ν−1))` with `r = ν^levels`.
pub fn tower_order(l_order: u64, nu: u64, levels: u32) -> BigUint {
    let r = nu.pow(levels);
    pow(&big(l_order), (r - 1) / (nu - 1))
}

fn check_r(nu: u64, r: u64) -> Result<()> {
    let mut x = nu;
    while x < r {
        x *= nu;
    }
    if nu < 2 || x != r {
        return Err(Error::Unsupported(format!(
            "r = {r} is not a positive power of {nu}"
        )));
    }
    Ok(())
}

/// `γ_r = log|S₀| / log(|Aut(S₀)| · |L|^((r−1)/(r(ν−1))))`.
pub fn gamma_r(s0: &SimpleGroupRecord, l_order: u64, nu: u64, r: u64) -> Result<Real> {
    check_r(nu, r)?;
    let e = Real::ratio(r - 1, r * (nu - 1));
    let den = Real::ln_u64(s0.aut_order).add(&Real::ln_u64(l_order).mul(&e));
    Ok(Real::ln_u64(s0.order).div(&den))
}

/// The limit of `γ_r` as `r → ∞`.
pub fn gamma_limit(s0: &SimpleGroupRecord, l_order: u64, nu: u64) -> Real {
    let den = Real::ln_u64(s0.aut_order).add(&Real::ln_u64(l_order).div(&Real::from_u64(nu - 1)));
    Real::ln_u64(s0.order).div(&den)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaRow {
    pub level: u32,
    pub r: u64,
    pub gamma: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerRow {
    pub level: u32,
    pub degree: usize,
    pub order: String,
    pub expected: String,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceCheck {
    pub group: String,
    pub class: String,
    pub order: u64,
    pub copies: u32,
    pub radical_trivial: bool,
    /// No nontrivial normal subgroup lies in the class.
    pub no_normal_member: bool,
    pub residual_order: u64,
    pub residual_is_socle_power: bool,
}

impl InstanceCheck {
    pub fn ok(&self) -> bool {
        self.radical_trivial && self.no_normal_member && self.residual_is_socle_power
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharpnessReport {
    pub s0: String,
    pub l_order: u64,
    pub nu: u64,
    pub gamma: String,
    pub limit_gap: String,
    pub tolerance: String,
    /// Always false for this formula: the exponent of `|L|` grows with `r`.
    pub strictly_increasing: bool,
    pub strictly_decreasing: bool,
    /// Every `γ_r` exceeds the limit γ.
    pub above_limit: bool,
    pub converged: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub gamma_sequence: Vec<GammaRow>,
    pub tower: Vec<TowerRow>,
    pub instance_checks: Vec<InstanceCheck>,
}

impl SharpnessReport {
    pub fn ok(&self) -> bool {
        self.strictly_decreasing
            && self.above_limit
            && self.converged
            && self.tower.iter().all(|t| t.matches)
            && self.instance_checks.iter().all(InstanceCheck::ok)
    }

    pub fn limit_gap_f64(&self) -> f64 {
        self.limit_gap.parse().expect("decimal")
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("report serializes")
    }
}

/// `(W)_X = 1`, and `W^X̄` is the socle of the base group, a direct power of `S₀`.
pub fn verify_sharpness_instance(
    ctx: &Context,
    name: &str,
    w: &WreathProduct,
    x: &GroupClass,
    s0: &SimpleGroupRecord,
    copies: u32,
) -> Result<InstanceCheck> {
    let g = &w.group;
    let rad = radical(ctx, g, x)?.subgroup;
    let normals = ctx.normal_subgroups(g)?;
    let mut no_normal_member = true;
    for n in normals.iter().filter(|n| !n.is_trivial()) {
        if member(ctx, x, n)? {
            no_normal_member = false;
            break;
        }
    }
    let res = poly_residual(ctx, g, x)?.subgroup;
    let socle = ctx.oracle(&w.base)?.socle().group;
    let expected = pow(&big(s0.order), copies as u64);
    Ok(InstanceCheck {
        group: name.to_string(),
        class: x.to_string(),
        order: g.order_u64().expect("oracle scale"),
        copies,
        radical_trivial: rad.is_trivial(),
        no_normal_member,
        residual_order: res.order_u64().expect("oracle scale"),
        residual_is_socle_power: *res.order() == expected && res.same_group(&socle),
    })
}

/// The shipped instance `Aut(A₅) wr C₂ = S₅ wr C₂`: a transitive top group small enough
/// for exhaustive normal-subgroup checks.
pub fn shipped_instance(ctx: &Context) -> Result<WreathProduct> {
    GroupHandle::wreath_product(
        &GroupHandle::symmetric(5),
        &GroupHandle::cyclic(2),
        ctx.caps.degree_cap,
    )
}

/// `γ_r` for `r = ν, ν², …` up to `r_max`, with tower orders for the configured levels.
pub fn convergence_report(
    ctx: &Context,
    config: &SharpnessConfig,
    r_max: u64,
) -> Result<SharpnessReport> {
    let nu = config.nu();
    let l_order = config.l_order();
    let limit = gamma_limit(&config.s0, l_order, nu);
    let mut seq = Vec::new();
    let (mut r, mut level) = (nu, 1u32);
    while r <= r_max {
        seq.push((level, r, gamma_r(&config.s0, l_order, nu, r)?));
        r *= nu;
        level += 1;
    }
    let last = seq
        .last()
        .ok_or_else(|| Error::Unsupported(format!("r_max = {r_max} is below ν = {nu}")))?;
    let gap = limit.sub(&last.2).abs();
    let strictly_increasing = seq.windows(2).all(|w| w[0].2 < w[1].2);
    let strictly_decreasing = seq.windows(2).all(|w| w[0].2 > w[1].2);
    let above_limit = seq.iter().all(|s| s.2 > limit);
    let mut tower = Vec::new();
    for k in 1..=config.levels {
        let t = build_l_tower(&config.l, k, ctx.caps.degree_cap)?;
        let expected = tower_order(l_order, nu, k);
        tower.push(TowerRow {
            level: k,
            degree: t.degree(),
            order: t.order().to_string(),
            expected: expected.to_string(),
            matches: *t.order() == expected,
        });
    }
    Ok(SharpnessReport {
        s0: config.s0.name.clone(),
        l_order,
        nu,
        gamma: limit.fixed(50),
        limit_gap: gap.fixed(20),
        tolerance: format!("{LIMIT_TOLERANCE:e}"),
        strictly_increasing,
        strictly_decreasing,
        above_limit,
        converged: gap.to_f64() < LIMIT_TOLERANCE,
        note: None,
        gamma_sequence: seq
            .into_iter()
            .map(|(level, r, g)| GammaRow {
                level,
                r,
                gamma: g.fixed(50),
            })
            .collect(),
        tower,
        instance_checks: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{Caps, Execution};

    fn a5() -> SimpleGroupRecord {
        SimpleGroupRecord::new("A5", 60, 2, None)
    }

    #[test]
    fn tower_orders() {
        let caps = Caps::default();
        let s4 = GroupHandle::symmetric(4);
        assert_eq!(
            build_l_tower(&s4, 1, caps.degree_cap).unwrap().order_u64(),
            Some(24)
        );
        let t = build_l_tower(&s4, 2, caps.degree_cap).unwrap();
        assert_eq!((t.degree(), t.order_u64()), (16, Some(7_962_624)));
        let c2 = build_l_tower(&GroupHandle::cyclic(2), 3, caps.degree_cap).unwrap();
        assert_eq!((c2.degree(), c2.order_u64()), (8, Some(128)));
        assert_eq!(tower_order(24, 4, 2), big(24).pow(5));
        assert!(build_l_tower(&s4, 0, caps.degree_cap).is_err());
    }

    #[test]
    fn gamma_sequence() {
        let g4 = gamma_r(&a5(), 24, 4, 4).unwrap();
        let direct =
            Real::ln_u64(60).div(&Real::ln_u64(120).add(&Real::ln_u64(24).div(&Real::from_u64(4))));
        assert_eq!(g4.fixed(40), direct.fixed(40));
        assert_eq!(gamma_limit(&a5(), 24, 4).fixed(9), "0.700265861");
        let a6 = SimpleGroupRecord::new("A6", 360, 4, None);
        assert_eq!(gamma_limit(&a6, 120, 5).fixed(6), "0.694995");
        assert!(gamma_r(&a5(), 24, 4, 8).is_err());
        assert!(g4 > gamma_limit(&a5(), 24, 4));
    }

    #[test]
    fn convergence_and_instance() {
        let ctx = Context::new(Caps::default(), Execution::Parallel).unwrap();
        let cfg = SharpnessConfig::new(
            a5(),
            Some(GroupHandle::symmetric(5)),
            GroupHandle::symmetric(4),
            2,
        )
        .unwrap();
        let rep = convergence_report(&ctx, &cfg, 4u64.pow(10)).unwrap();
        assert_eq!(rep.gamma_sequence.len(), 10);
        assert!(
            rep.strictly_decreasing && rep.above_limit && rep.converged,
            "{rep:?}"
        );
        assert!(!rep.strictly_increasing);
        assert!(rep.limit_gap_f64() < 1e-6);
        assert!(rep.tower.iter().all(|t| t.matches));

        let w = shipped_instance(&ctx).unwrap();
        let chk = verify_sharpness_instance(&ctx, "S5 wr C2", &w, &GroupClass::Nilpotent, &a5(), 2)
            .unwrap();
        assert!(chk.ok(), "{chk:?}");
        assert_eq!((chk.order, chk.residual_order), (28800, 3600));
        let sol = verify_sharpness_instance(&ctx, "S5 wr C2", &w, &GroupClass::Soluble, &a5(), 2)
            .unwrap();
        assert_eq!(sol.residual_order, 3600);
        assert!(sol.residual_is_socle_power);

        let s5 =
            GroupHandle::wreath_product(&GroupHandle::symmetric(5), &GroupHandle::trivial(1), 64)
                .unwrap();
        let one =
            verify_sharpness_instance(&ctx, "S5", &s5, &GroupClass::Nilpotent, &a5(), 1).unwrap();
        assert!(one.ok());
        assert_eq!(one.residual_order, 60);
    }
}

//! The constants m₀, c₀, n₀, β, λ, γ induced by an extension-closed class.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::catalog::{PrimitiveCatalog, SimpleGroupRecord, SimpleTable};
use crate::classes::{member, GroupClass};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::exact::{big, certify, factorial, pow, Certificate, LogRatio};
use crate::group::GroupHandle;
use crate::hp::{simple_ratio, Real};
use crate::par;

/// Largest `m` tried when searching for the first alternating group outside the class.
const M0_SEARCH_LIMIT: u64 = 8;
/// Largest `n₀` for which β is found by enumerating all subgroups of `S_n`.
const BETA_DEGREE_LIMIT: u64 = 6;
const CERT_TOLERANCE: f64 = 1e-9;

/// The real number `base^(1/root)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Root {
    pub base: u64,
    pub root: u64,
}

impl Root {
    pub fn value(&self) -> Real {
        Real::from_u64(self.base).pow_ratio(1, self.root)
    }

    pub fn symbolic(&self) -> String {
        if self.root == 1 {
            self.base.to_string()
        } else {
            format!("{}^(1/{})", self.base, self.root)
        }
    }

    /// Exact comparison of `a^(1/r)` and `b^(1/s)` as `a^s` against `b^r`.
    pub fn cmp_exact(&self, o: &Root) -> Ordering {
        pow(&big(self.base), o.root).cmp(&pow(&big(o.base), self.root))
    }

    /// `x > self^e` for integer `x` and `e = num/1`, as `x^root > base^num`.
    pub fn power_exceeded_by(&self, x: u64, num: u64) -> bool {
        pow(&big(x), self.root) > pow(&big(self.base), num)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootReport {
    pub symbolic: String,
    pub base: u64,
    pub root: u64,
    pub decimal: String,
}

impl From<Root> for RootReport {
    fn from(r: Root) -> Self {
        RootReport {
            symbolic: r.symbolic(),
            base: r.base,
            root: r.root,
            decimal: r.value().fixed(50),
        }
    }
}

/// The class whose constants are computed. Only proper poly-closures of full
/// characteristic qualify; `soluble` is read as `poly:nilpotent`.
pub fn constants_class(class: &GroupClass) -> Result<(GroupClass, Option<String>)> {
    let (c, alias) = match class {
        GroupClass::Soluble => (
            GroupClass::poly(GroupClass::Nilpotent),
            Some("soluble".to_string()),
        ),
        GroupClass::Poly(_) => (class.clone(), None),
        other => (other.extension_closure(), Some(other.to_string())),
    };
    match &c {
        GroupClass::Poly(x)
            if matches!(
                **x,
                GroupClass::Abelian | GroupClass::Nilpotent | GroupClass::D0xS(_)
            ) =>
        {
            Ok((c, alias))
        }
        GroupClass::All => Err(Error::Unsupported(
            "class is its own extension-closure and contains every finite group".into(),
        )),
        _ => Err(Error::Unsupported(format!(
            "constants are defined for poly-closures of full characteristic; `{c}` is not supported"
        ))),
    }
}

/// Least `m ≥ 5` with `A_m` outside the class.
pub fn compute_m0(ctx: &Context, class: &GroupClass) -> Result<u64> {
    for m in 5..=M0_SEARCH_LIMIT {
        if !member(ctx, class, &GroupHandle::alternating(m as usize))? {
            return Ok(m);
        }
    }
    Err(Error::Unsupported(format!(
        "every A_m with m ≤ {M0_SEARCH_LIMIT} lies in the class"
    )))
}

/// `c₀ = ((m₀ − 1)!)^(1/(m₀ − 2))`.
pub fn compute_c0(m0: u64) -> Result<Root> {
    if !(5..=20).contains(&m0) {
        return Err(Error::Unsupported(format!("m0 = {m0} is outside 5..=20")));
    }
    Ok(Root {
        base: factorial(m0 - 1).try_into().expect("fits"),
        root: m0 - 2,
    })
}

/// Bounds on n₀ in terms of m₀ alone, for the cases not computed here.
pub fn n0_bounds(m0: u64) -> Option<(u64, u64)> {
    match m0 {
        6 => Some((6, 13)),
        7..=24 => Some((m0, m0 + 2)),
        m if m >= 25 => Some((m0, m0)),
        _ => None,
    }
}

/// Least `n ≥ 2` with `3^n ≤ c₀^(n−1)`, so that every primitive group of degree `n` other
/// than `A_n, S_n` is within the bound. `None` when `c₀ ≤ 3`.
pub fn analytic_tail(c0: &Root) -> Option<u64> {
    if pow(&big(3), c0.root) >= big(c0.base) {
        return None;
    }
    (2..).find(|&n| pow(&big(3), n * c0.root) <= pow(&big(c0.base), n - 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub degree: u64,
    pub label: String,
    pub order: u64,
    /// `|G| > c₀^(n−1)`, decided exactly.
    pub exceeds_bound: bool,
    /// Class membership, only computed when the bound is exceeded.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub member: Option<bool>,
    pub violates: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct N0Audit {
    pub n0: u64,
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_degree: Option<u64>,
    pub scanned_degrees: Vec<u64>,
    pub rows: Vec<ScanRow>,
}

fn scan_degree(
    ctx: &Context,
    class: &GroupClass,
    c0: &Root,
    catalog: &PrimitiveCatalog,
    n: u64,
) -> Result<Vec<ScanRow>> {
    let entries = catalog.degree(n as usize)?;
    let rows = par::map(ctx.exec, entries, |e| -> Result<ScanRow> {
        let exceeds = c0.power_exceeded_by(e.order, n - 1);
        let member = if exceeds {
            Some(member(ctx, class, &e.group)?)
        } else {
            None
        };
        Ok(ScanRow {
            degree: n,
            label: e.label.clone(),
            order: e.order,
            exceeds_bound: exceeds,
            member,
            violates: exceeds && member == Some(true),
        })
    });
    rows.into_iter().collect()
}

/// n₀: least `n ≥ m₀` such that no primitive member of degree at least `n` exceeds `c₀^(deg−1)`.
pub fn compute_n0(
    ctx: &Context,
    class: &GroupClass,
    m0: u64,
    c0: &Root,
    catalog: &PrimitiveCatalog,
) -> Result<N0Audit> {
    let soluble_only = matches!(class.base(), GroupClass::Abelian | GroupClass::Nilpotent);
    if m0 == 5 && soluble_only {
        // Soluble primitive groups obey the bound from degree 5 on; the catalog is an audit.
        let mut rows = Vec::new();
        let degrees: Vec<u64> = catalog
            .degrees
            .keys()
            .map(|&d| d as u64)
            .filter(|&d| d >= m0)
            .collect();
        for &n in &degrees {
            rows.extend(scan_degree(ctx, class, c0, catalog, n)?);
        }
        if let Some(bad) = rows.iter().find(|r| r.violates) {
            return Err(Error::Data(format!(
                "soluble primitive group {} of degree {} exceeds the bound",
                bad.label, bad.degree
            )));
        }
        return Ok(N0Audit {
            n0: m0,
            method: "soluble primitive groups of degree n >= 5 satisfy |G| <= 24^((n-1)/3); catalog audit".into(),
            tail_degree: None,
            scanned_degrees: degrees,
            rows,
        });
    }
    if m0 == 6 && member(ctx, class, &GroupHandle::alternating(7))? {
        return Err(Error::Unsupported(
            "m0 = 6 needs A7 outside the class".into(),
        ));
    }
    if m0 > 6 {
        let (lo, hi) = n0_bounds(m0).expect("m0 > 6");
        return Err(Error::Unsupported(format!(
            "n0 for m0 = {m0} is only bounded: {lo} <= n0 <= {hi}"
        )));
    }
    let tail = analytic_tail(c0)
        .ok_or_else(|| Error::Unsupported(format!("c0 = {} is not above 3", c0.symbolic())))?;
    let degrees: Vec<u64> = (m0..tail).collect();
    let mut rows = Vec::new();
    for &n in &degrees {
        rows.extend(scan_degree(ctx, class, c0, catalog, n)?);
    }
    let worst = rows.iter().filter(|r| r.violates).map(|r| r.degree).max();
    let n0 = worst.map_or(m0, |d| (d + 1).max(m0));
    Ok(N0Audit {
        n0,
        method:
            "catalog scan below the analytic tail; non-giant primitive groups satisfy |G| < 3^n"
                .into(),
        tail_degree: Some(tail),
        scanned_degrees: degrees,
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeBest {
    pub degree: u64,
    pub order: u64,
    pub subgroups: usize,
    pub members: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaResult {
    pub value: Root,
    pub witness_degree: u64,
    pub witness_order: u64,
    pub witness_generators: Vec<String>,
    pub per_degree: Vec<DegreeBest>,
}

/// β: the largest `|G|^(1/(n−1))` over members `G ≤ S_n`, `2 ≤ n ≤ n₀`, from full subgroup lattices.
/// Ties go to the smaller degree.
pub fn compute_beta(ctx: &Context, class: &GroupClass, n0: u64) -> Result<BetaResult> {
    if n0 > BETA_DEGREE_LIMIT {
        return Err(Error::Unsupported(format!(
            "beta needs subgroup lattices of S_n up to n = {n0}"
        )));
    }
    let mut best: Option<(Root, u64, GroupHandle)> = None;
    let mut per_degree = Vec::new();
    for n in 2..=n0 {
        let sn = GroupHandle::symmetric(n as usize);
        let o = ctx.oracle(&sn)?;
        let lattice = o.lattice(&ctx.caps, ctx.exec)?;
        let flags = par::map(ctx.exec, &lattice.subgroups, |e| -> Result<bool> {
            member(ctx, class, &o.lattice_subgroup(e))
        });
        let flags = flags.into_iter().collect::<Result<Vec<bool>>>()?;
        let top = lattice
            .subgroups
            .iter()
            .zip(&flags)
            .filter(|(_, &m)| m)
            .map(|(e, _)| e)
            .max_by_key(|e| e.order)
            .expect("the trivial subgroup is a member");
        per_degree.push(DegreeBest {
            degree: n,
            order: top.order as u64,
            subgroups: lattice.len(),
            members: flags.iter().filter(|&&m| m).count(),
        });
        let cand = Root {
            base: top.order as u64,
            root: n - 1,
        };
        if best
            .as_ref()
            .is_none_or(|(b, _, _)| cand.cmp_exact(b) == Ordering::Greater)
        {
            best = Some((cand, n, o.lattice_subgroup(top)));
        }
    }
    let (value, degree, g) =
        best.ok_or_else(|| Error::Unsupported("n0 must be at least 2".into()))?;
    Ok(BetaResult {
        value,
        witness_degree: degree,
        witness_order: value.base,
        witness_generators: g
            .generators()
            .iter()
            .map(|p| p.to_cycle_string(true))
            .collect(),
        per_degree,
    })
}

/// `f(x) = ln x / ln(β · log₂ x)`, a lower bound for the ratio of any simple group of order `x`.
pub fn tail_function(beta: &Root, x: u64) -> Real {
    let log2x = Real::ln_u64(x).div(&Real::ln_u64(2));
    Real::ln_u64(x).div(&beta.value().mul(&log2x).ln())
}

/// Least `B` with `f(x) > level` for every `x ≥ B`, given that `f` increases from 16 on.
pub fn tail_threshold(beta: &Root, level: &Real) -> u64 {
    let mut hi = 16u64;
    while tail_function(beta, hi) <= *level {
        hi *= 2;
    }
    let mut lo = 16u64;
    if tail_function(beta, lo) > *level {
        return lo;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if tail_function(beta, mid) > *level {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RivalRow {
    pub name: String,
    pub order: u64,
    pub out_order: u64,
    pub ratio: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaAudit {
    /// Least ratio over excluded table groups, rounded up to two decimals.
    pub level: String,
    pub threshold_b: u64,
    /// `β · log₂ B > e`, so `f` increases on `[B, ∞)`.
    pub monotone_symbolic: bool,
    pub monotone_sampled: bool,
    pub table_complete_through: u64,
    /// Table groups of order in `(60, B)`.
    pub groups_below_threshold: usize,
    /// Excluded groups below `B` other than the minimiser.
    pub rivals_other_than_s0: usize,
    pub rivals: Vec<RivalRow>,
}

#[derive(Clone, Debug)]
pub struct LambdaGamma {
    pub lambda: Real,
    pub gamma: Real,
    pub s0: SimpleGroupRecord,
    pub lambda_ratio: LogRatio,
    pub gamma_ratio: LogRatio,
    pub lambda_cert: Certificate,
    pub gamma_cert: Certificate,
    pub audit: LambdaAudit,
}

/// Level used for the tail bound: the least ratio in the table, rounded up to two decimals.
fn level_for(candidate: &Real) -> (u64, Real) {
    let hundredths = candidate.mul(&Real::from_u64(100)).floor_u64() + 1;
    (hundredths, Real::ratio(hundredths, 100))
}

pub fn compute_lambda_gamma(
    table: &SimpleTable,
    class: &GroupClass,
    beta: &Root,
) -> Result<LambdaGamma> {
    let excluded: Vec<&SimpleGroupRecord> = table
        .records
        .iter()
        .filter(|r| !class.admits_simple(&r.name))
        .collect();
    if excluded.is_empty() {
        return Err(Error::Data("no excluded simple group in the table".into()));
    }
    let ratio = |r: &SimpleGroupRecord| simple_ratio(r.order, r.out_order, beta.base, beta.root);
    let candidate = excluded
        .iter()
        .map(|r| ratio(r))
        .min_by(|a, b| a.partial_cmp(b).expect("finite"))
        .expect("nonempty");
    let (hundredths, level) = level_for(&candidate);
    let b = tail_threshold(beta, &level);
    let e = Real::from_u64(1).exp();
    let log2b = Real::ln_u64(b).div(&Real::ln_u64(2));
    let monotone_symbolic = beta.value().mul(&log2b) > e;
    let samples: Vec<Real> = (0..=1000u64)
        .map(|i| tail_function(beta, b + i * 9 * b / 1000))
        .collect();
    let monotone_sampled = samples.windows(2).all(|w| w[0] < w[1]);
    if table.complete_through < b {
        return Err(Error::Data(format!(
            "simple-group table is complete only through {}; orders in ({}, {b}] are missing",
            table.complete_through, table.complete_through
        )));
    }
    let rivals: Vec<(&SimpleGroupRecord, Real)> = excluded
        .iter()
        .filter(|r| r.order < b)
        .map(|r| (*r, ratio(r)))
        .collect();
    let mut sorted: Vec<&(&SimpleGroupRecord, Real)> = rivals.iter().collect();
    sorted.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("finite"));
    let (s0, lambda) = sorted[0];
    if let Some(second) = sorted.get(1) {
        if second.1.sub(lambda).to_f64() < 1e-30 {
            return Err(Error::Undecidable(format!(
                "{} and {} give equal ratios",
                s0.name, second.0.name
            )));
        }
    }
    let k = beta.root;
    let s_k = pow(&big(s0.order), k);
    let lambda_ratio = LogRatio::new(s_k.clone(), pow(&big(s0.out_order), k) * beta.base)?;
    let gamma_ratio = LogRatio::new(s_k, pow(&big(s0.aut_order), k) * beta.base)?;
    let gamma = lambda.div(&lambda.add(&Real::from_u64(1)));
    if gamma.fixed(12) != gamma_ratio.value().fixed(12) {
        return Err(Error::Data(
            "gamma = lambda/(1+lambda) disagrees with the direct formula".into(),
        ));
    }
    let audit = LambdaAudit {
        level: format!("{}.{:02}", hundredths / 100, hundredths % 100),
        threshold_b: b,
        monotone_symbolic,
        monotone_sampled,
        table_complete_through: table.complete_through,
        groups_below_threshold: table
            .records
            .iter()
            .filter(|r| r.order > 60 && r.order < b)
            .count(),
        rivals_other_than_s0: rivals.len() - 1,
        rivals: rivals
            .iter()
            .map(|(r, v)| RivalRow {
                name: r.name.clone(),
                order: r.order,
                out_order: r.out_order,
                ratio: v.fixed(10),
            })
            .collect(),
    };
    Ok(LambdaGamma {
        lambda: lambda.clone(),
        gamma,
        s0: (*s0).clone(),
        lambda_cert: certify(&lambda_ratio, CERT_TOLERANCE)?,
        gamma_cert: certify(&gamma_ratio, CERT_TOLERANCE)?,
        lambda_ratio,
        gamma_ratio,
        audit,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KohlReport {
    pub rows: usize,
    pub failures: Vec<String>,
    /// Table groups of order in `(60, 3960]`.
    pub census_low: usize,
    /// Table groups of order in `[168, 4529]` other than A6.
    pub census_high: usize,
    pub ok: bool,
}

/// Checks `|Out(S)| < log₂|S|` on every row, and the two small-order censuses.
pub fn kohl_sanity(table: &SimpleTable) -> KohlReport {
    let failures: Vec<String> = table
        .records
        .iter()
        .filter(|r| !r.kohl_holds())
        .map(|r| r.name.clone())
        .collect();
    let census_low = table
        .records
        .iter()
        .filter(|r| r.order > 60 && r.order <= 3960)
        .count();
    let census_high = table
        .records
        .iter()
        .filter(|r| (168..=4529).contains(&r.order) && r.name != "A6")
        .count();
    KohlReport {
        rows: table.records.len(),
        ok: failures.is_empty() && census_low == 8 && census_high == 8,
        failures,
        census_low,
        census_high,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaReport {
    pub symbolic: String,
    pub base: u64,
    pub root: u64,
    pub decimal: String,
    pub equals_c0: bool,
    pub witness_degree: u64,
    pub witness_order: u64,
    pub witness_generators: Vec<String>,
    /// The witness degree is recorded; minimality of that degree is not checked.
    pub degree_minimality_checked: bool,
    pub per_degree: Vec<DegreeBest>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct S0Report {
    pub name: String,
    pub order: u64,
    pub out_order: u64,
    pub aut_order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantsReport {
    pub class: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alias_of: Option<String>,
    pub m0: u64,
    pub n0: u64,
    pub lambda: String,
    pub gamma: String,
    pub lambda_symbolic: String,
    pub gamma_symbolic: String,
    pub gamma_rational_upper: String,
    pub gamma_rational_lower: String,
    pub lambda_rational_upper: String,
    pub lambda_rational_lower: String,
    pub threshold_b: u64,
    pub checked_groups: Vec<String>,
    pub c0: RootReport,
    pub beta: BetaReport,
    pub s0: S0Report,
    pub n0_audit: N0Audit,
    pub lambda_audit: LambdaAudit,
    pub kohl: KohlReport,
}

impl ConstantsReport {
    pub fn lambda_f64(&self) -> f64 {
        self.lambda.parse().expect("decimal")
    }

    pub fn gamma_f64(&self) -> f64 {
        self.gamma.parse().expect("decimal")
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("report serializes")
    }
}

/// Runs the whole pipeline for a class.
pub fn run_constants(ctx: &Context, class: &GroupClass) -> Result<(ConstantsReport, LambdaGamma)> {
    let (class, alias_of) = constants_class(class)?;
    let m0 = compute_m0(ctx, &class)?;
    let c0 = compute_c0(m0)?;
    let catalog = PrimitiveCatalog::load(&ctx.data_dir)?;
    let n0 = compute_n0(ctx, &class, m0, &c0, &catalog)?;
    let beta = compute_beta(ctx, &class, n0.n0)?;
    let lg = compute_lambda_gamma(&ctx.table, &class, &beta.value)?;
    let kohl = kohl_sanity(&ctx.table);
    if !kohl.failures.is_empty() {
        return Err(Error::Data(format!(
            "Kohl bound fails for {:?}",
            kohl.failures
        )));
    }
    let b = beta.value;
    let s0 = &lg.s0;
    let mut checked_groups: Vec<String> = n0
        .rows
        .iter()
        .map(|r| format!("{} (degree {})", r.label, r.degree))
        .collect();
    checked_groups.extend(lg.audit.rivals.iter().map(|r| r.name.clone()));
    let report = ConstantsReport {
        class: class.to_string(),
        alias_of,
        m0,
        n0: n0.n0,
        lambda: lg.lambda.fixed(50),
        gamma: lg.gamma.fixed(50),
        lambda_symbolic: format!(
            "log {} / log({} * {})",
            s0.order,
            s0.out_order,
            b.symbolic()
        ),
        gamma_symbolic: format!(
            "log {} / log({} * {})",
            s0.order,
            s0.aut_order,
            b.symbolic()
        ),
        gamma_rational_upper: lg.gamma_cert.upper.to_string(),
        gamma_rational_lower: lg.gamma_cert.lower.to_string(),
        lambda_rational_upper: lg.lambda_cert.upper.to_string(),
        lambda_rational_lower: lg.lambda_cert.lower.to_string(),
        threshold_b: lg.audit.threshold_b,
        checked_groups,
        c0: c0.into(),
        beta: BetaReport {
            symbolic: b.symbolic(),
            base: b.base,
            root: b.root,
            decimal: b.value().fixed(50),
            equals_c0: b.cmp_exact(&c0) == Ordering::Equal,
            witness_degree: beta.witness_degree,
            witness_order: beta.witness_order,
            witness_generators: beta.witness_generators.clone(),
            degree_minimality_checked: false,
            per_degree: beta.per_degree.clone(),
        },
        s0: S0Report {
            name: s0.name.clone(),
            order: s0.order,
            out_order: s0.out_order,
            aut_order: s0.aut_order,
        },
        n0_audit: n0,
        lambda_audit: lg.audit.clone(),
        kohl,
    };
    Ok((report, lg))
}

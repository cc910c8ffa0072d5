//! Verification sweeps.
//!
//! Each check sweeps a parameter range, compares two independently computed
//! values per case and keeps the first disagreement. Defaults reproduce the
//! acceptance bounds; [`Bounds`] overrides them uniformly:
//!
//! * `n_max` replaces the `n` bound of every check that has one;
//! * `m_max` replaces every `m` bound;
//! * `order` replaces the series truncation order and the Lagrange `p` bound.
//!
//! Reports are deterministic. Wall-clock times are recorded but only
//! serialized after [`VerificationReport::include_timings`].

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde::Serialize;

use crate::bijection::{phi, phi_forest, phi_inverse, phi_inverse_forest};
use crate::exact::{
    colored_ternary_count, colored_ternary_forest_count, forest_catalan, identity_side, k_catalan,
    Count, IdentityId, Side,
};
use crate::series::{
    build_f, build_g, f_equation_holds, g_equation_holds, g_power_expansion,
    lagrange_power_coefficients, solve_k_catalan_series, verify_eq31_series,
};
use crate::trees::{
    enumerate_binary, enumerate_colored_ternary, enumerate_colored_ternary_all, enumerate_forests,
    BinaryTree, ColoredTernaryTree, PlaneTree, SizeCap, SizeError,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Identities,
    Bijection,
    Series,
    Counts,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Bijection => "bijection",
            Suite::Series => "series",
            Suite::Counts => "counts",
            Suite::All => "all",
        }
    }

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Optional overrides of the default sweep bounds.
#[derive(Clone, Copy, Debug, Default)]
pub struct Bounds {
    pub n_max: Option<u64>,
    pub m_max: Option<u64>,
    pub order: Option<usize>,
    pub cap: SizeCap,
}

impl Bounds {
    fn n(&self, default: u64) -> u64 {
        self.n_max.unwrap_or(default)
    }

    fn m(&self, default: u64) -> u64 {
        self.m_max.unwrap_or(default)
    }

    fn order(&self, default: usize) -> usize {
        self.order.unwrap_or(default)
    }
}

/// First failing case of a check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub inputs: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub suite: Suite,
    /// Acceptance criterion number, when the check is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub criterion: Option<u8>,
    pub parameters: BTreeMap<&'static str, u64>,
    pub cases: u64,
    pub failures: u64,
    pub pass: bool,
    pub first_failure: Option<Failure>,
    #[serde(skip)]
    pub elapsed: Duration,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub pass: bool,
    pub cases: u64,
    pub failures: u64,
    pub checks: Vec<CheckResult>,
    #[serde(skip)]
    pub elapsed: Duration,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl VerificationReport {
    /// Adds wall-clock milliseconds to the serialized and printed report.
    pub fn include_timings(&mut self) {
        self.elapsed_ms = Some(self.elapsed.as_millis());
        for c in &mut self.checks {
            c.elapsed_ms = Some(c.elapsed.as_millis());
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<(&CheckResult, &Failure)> {
        self.checks
            .iter()
            .find_map(|c| c.first_failure.as_ref().map(|f| (c, f)))
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verify suite={}", self.suite)?;
        for c in &self.checks {
            let params: Vec<String> = c
                .parameters
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            let crit = c.criterion.map(|n| format!("#{n} ")).unwrap_or_default();
            write!(
                f,
                "[{}] {crit}{} ({}) {}: {} cases, {} failures",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.suite,
                params.join(" "),
                c.cases,
                c.failures
            )?;
            if let Some(ms) = c.elapsed_ms {
                write!(f, " [{ms} ms]")?;
            }
            writeln!(f)?;
            if let Some(fail) = &c.first_failure {
                writeln!(
                    f,
                    "    first failure at {}: {} != {}",
                    fail.inputs, fail.left, fail.right
                )?;
            }
        }
        write!(
            f,
            "overall: {} ({} checks, {} cases, {} failures)",
            if self.pass { "PASS" } else { "FAIL" },
            self.checks.len(),
            self.cases,
            self.failures
        )?;
        if let Some(ms) = self.elapsed_ms {
            write!(f, " [{ms} ms]")?;
        }
        writeln!(f)
    }
}

struct Check {
    result: CheckResult,
    started: Instant,
}

impl Check {
    fn new(
        name: &'static str,
        suite: Suite,
        criterion: Option<u8>,
        parameters: &[(&'static str, u64)],
    ) -> Self {
        Check {
            result: CheckResult {
                name,
                suite,
                criterion,
                parameters: parameters.iter().copied().collect(),
                cases: 0,
                failures: 0,
                pass: true,
                first_failure: None,
                elapsed: Duration::ZERO,
                elapsed_ms: None,
            },
            started: Instant::now(),
        }
    }

    fn case(&mut self, ok: bool, failure: impl FnOnce() -> Failure) {
        self.result.cases += 1;
        if !ok {
            self.result.failures += 1;
            if self.result.first_failure.is_none() {
                self.result.first_failure = Some(failure());
            }
        }
    }

    fn eq<T: PartialEq + fmt::Display>(
        &mut self,
        inputs: impl FnOnce() -> String,
        left: T,
        right: T,
    ) {
        let ok = left == right;
        self.case(ok, || Failure {
            inputs: inputs(),
            left: left.to_string(),
            right: right.to_string(),
        });
    }

    fn finish(mut self) -> CheckResult {
        self.result.pass = self.result.failures == 0;
        self.result.elapsed = self.started.elapsed();
        self.result
    }
}

fn show<T: fmt::Display, E: fmt::Display>(r: &Result<T, E>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn side(id: IdentityId, s: Side, n: u64, m: u64) -> String {
    show(&identity_side(id, s, n, m))
}

// ---------------------------------------------------------------------------
// identities

/// The colored ternary sum against the ordinary Catalan number and its own closed
/// right side.
pub fn check_eq1(n_max: u64) -> CheckResult {
    let mut c = Check::new(
        "eq1-catalan",
        Suite::Identities,
        Some(1),
        &[("n_max", n_max)],
    );
    for n in 0..=n_max {
        let lhs = side(IdentityId::Eq1, Side::Lhs, n, 1);
        c.eq(
            || format!("n={n}"),
            lhs.clone(),
            k_catalan(n, 2).to_string(),
        );
        c.eq(
            || format!("n={n} (rhs)"),
            lhs,
            side(IdentityId::Eq1, Side::Rhs, n, 1),
        );
    }
    c.finish()
}

fn check_two_sided(
    name: &'static str,
    criterion: u8,
    id: IdentityId,
    n_max: u64,
    m_max: u64,
) -> CheckResult {
    let mut c = Check::new(
        name,
        Suite::Identities,
        Some(criterion),
        &[("m_max", m_max), ("n_max", n_max)],
    );
    for m in 1..=m_max {
        for n in 0..=n_max {
            c.eq(
                || format!("n={n} m={m}"),
                side(id, Side::Lhs, n, m),
                side(id, Side::Rhs, n, m),
            );
        }
    }
    c.finish()
}

pub fn check_eq2(n_max: u64, m_max: u64) -> CheckResult {
    check_two_sided("eq2-forests", 2, IdentityId::Eq2, n_max, m_max)
}

pub fn check_eq31(n_max: u64, m_max: u64) -> CheckResult {
    check_two_sided("eq3.1-closed-forms", 3, IdentityId::Eq31, n_max, m_max)
}

pub fn check_eq32(n_max: u64) -> CheckResult {
    check_two_sided("eq3.2-closed-forms", 4, IdentityId::Eq32, n_max, 1)
}

/// The forest identity at `m = 1` coincides with the single-tree one term by term.
pub fn check_eq2_specializes(n_max: u64) -> CheckResult {
    let mut c = Check::new(
        "eq2-at-m1-is-eq1",
        Suite::Identities,
        None,
        &[("n_max", n_max)],
    );
    for n in 0..=n_max {
        c.eq(
            || format!("n={n}"),
            side(IdentityId::Eq2, Side::Lhs, n, 1),
            side(IdentityId::Eq1, Side::Lhs, n, 1),
        );
    }
    c.finish()
}

// ---------------------------------------------------------------------------
// bijection

/// `phi` maps the colored ternary trees of weight `n` one-to-one onto the
/// binary trees with `n` internal vertices, and both compositions are the
/// identity.
pub fn check_bijection(n_max: u64, cap: SizeCap) -> Result<CheckResult, SizeError> {
    cap.check(n_max)?;
    let mut c = Check::new("bijection", Suite::Bijection, Some(5), &[("n_max", n_max)]);
    for n in 0..=n_max {
        let binaries: Vec<BinaryTree> = enumerate_binary(n, cap)?.collect();
        let binary_set: HashSet<&BinaryTree> = binaries.iter().collect();
        let mut images = HashSet::new();
        let mut domain = 0u64;
        for t in enumerate_colored_ternary_all(n, cap)? {
            domain += 1;
            let b = phi(&t);
            let Ok(b) = b else {
                c.eq(
                    || format!("n={n} phi({t})"),
                    show(&b),
                    "a binary tree".into(),
                );
                continue;
            };
            c.eq(
                || format!("n={n} internal_count(phi({t}))"),
                b.internal_count(),
                n,
            );
            c.eq(
                || format!("n={n} phi_inverse(phi({t}))"),
                show(&phi_inverse(&b)),
                t.to_string(),
            );
            let fresh = images.insert(b.clone());
            c.case(fresh, || Failure {
                inputs: format!("n={n} phi({t})"),
                left: b.to_string(),
                right: "an image not hit before".into(),
            });
        }
        c.eq(
            || format!("n={n} |T_n|"),
            Count::from(domain),
            k_catalan(n, 2),
        );
        c.eq(
            || format!("n={n} |phi(T_n)|"),
            Count::from(images.len() as u64),
            k_catalan(n, 2),
        );
        let onto =
            images.iter().all(|b| binary_set.contains(b)) && images.len() == binary_set.len();
        c.case(onto, || Failure {
            inputs: format!("n={n}"),
            left: "phi(T_n)".into(),
            right: "B_n".into(),
        });
        for b in &binaries {
            let back = phi_inverse(b).and_then(|t| phi(&t));
            c.eq(
                || format!("n={n} phi(phi_inverse({b}))"),
                show(&back),
                b.to_string(),
            );
        }
    }
    Ok(c.finish())
}

/// Componentwise `phi` on plane forests, with both forest counts checked
/// against their closed forms.
pub fn check_forest_bijection(
    n_max: u64,
    m_max: u64,
    cap: SizeCap,
) -> Result<CheckResult, SizeError> {
    cap.check(n_max)?;
    let mut c = Check::new(
        "forest-bijection",
        Suite::Bijection,
        Some(6),
        &[("m_max", m_max), ("n_max", n_max)],
    );
    for m in 1..=m_max {
        for n in 0..=n_max {
            let inputs = || format!("n={n} m={m}");
            let binaries: HashSet<_> =
                enumerate_forests::<BinaryTree>(n, m as usize, cap)?.collect();
            c.eq(
                inputs,
                Count::from(binaries.len() as u64),
                forest_catalan(n, 2, m),
            );
            let mut images = HashSet::new();
            let mut domain = 0u64;
            for f in enumerate_forests::<ColoredTernaryTree>(n, m as usize, cap)? {
                domain += 1;
                match phi_forest(&f) {
                    Ok(g) => {
                        c.eq(inputs, g.weight(), n);
                        c.eq(
                            inputs,
                            show(&phi_inverse_forest(&g).map(|h| h == f)),
                            "true".into(),
                        );
                        images.insert(g);
                    }
                    Err(e) => c.eq(inputs, e.to_string(), "a binary forest".into()),
                }
            }
            let expected: Count = (0..=n / 2)
                .map(|p| colored_ternary_forest_count(n, p, m))
                .sum();
            c.eq(inputs, Count::from(domain), expected);
            c.eq(inputs, images.len() as u64, domain);
            c.case(images == binaries, || Failure {
                inputs: inputs(),
                left: "phi(colored-ternary forests)".into(),
                right: "binary forests".into(),
            });
        }
    }
    Ok(c.finish())
}

// ---------------------------------------------------------------------------
// series

/// `[x^n] F_5(x)^m` against both closed forms of the 5-ary identity.
pub fn check_eq31_series(n_max: u64, m_max: u64) -> CheckResult {
    let mut c = Check::new(
        "eq3.1-series",
        Suite::Series,
        Some(3),
        &[("m_max", m_max), ("n_max", n_max)],
    );
    for m in 1..=m_max {
        match verify_eq31_series(n_max, m) {
            Ok(mismatches) => {
                let bad: HashSet<u64> = mismatches.iter().map(|x| x.n).collect();
                for n in 0..=n_max {
                    let ok = !bad.contains(&n);
                    c.case(ok, || {
                        let x = mismatches.iter().find(|x| x.n == n).unwrap();
                        Failure {
                            inputs: format!("n={n} m={m}"),
                            left: format!("series {}", x.series),
                            right: format!("lhs {} rhs {}", x.lhs, x.rhs),
                        }
                    });
                }
            }
            Err(e) => c.eq(|| format!("m={m}"), e.to_string(), "values".into()),
        }
    }
    c.finish()
}

/// `G(x)` built by substitution equals `C_2(x)` solved from its own
/// functional equation.
pub fn check_g_equals_catalan(order: usize) -> CheckResult {
    let mut c = Check::new(
        "g-equals-c2",
        Suite::Series,
        Some(7),
        &[("order", order as u64)],
    );
    let g = build_g(order);
    let c2 = solve_k_catalan_series(2, order);
    for i in 0..=order {
        c.eq(|| format!("[x^{i}]"), g.coeff(i), c2.coeff(i));
    }
    let head: Vec<BigInt> = (0..5.min(order + 1)).map(|i| g.coeff(i)).collect();
    let expected: Vec<BigInt> = [1, 1, 2, 5, 14]
        .iter()
        .take(head.len())
        .map(|&v| BigInt::from(v))
        .collect();
    c.eq(
        || "leading coefficients".into(),
        format!("{head:?}"),
        format!("{expected:?}"),
    );
    c.case(g_equation_holds(&g), || Failure {
        inputs: format!("order={order}"),
        left: "(1-x)G".into(),
        right: "1 + x^2 G^3".into(),
    });
    c.finish()
}

/// `[x^p] C_k^m` from the series engine against `m/(kp+m) binom(kp+m, p)`.
pub fn check_lagrange(p_max: usize, m_max: u64) -> CheckResult {
    let mut c = Check::new(
        "lagrange-coefficients",
        Suite::Series,
        Some(8),
        &[("m_max", m_max), ("p_max", p_max as u64)],
    );
    for k in [2, 3, 5] {
        for m in 1..=m_max {
            let coeffs = lagrange_power_coefficients(k, m, p_max);
            for (p, v) in coeffs.iter().enumerate() {
                c.eq(
                    || format!("k={k} m={m} p={p}"),
                    v.clone(),
                    forest_catalan(p as u64, k, m).to_bigint(),
                );
            }
        }
    }
    c.finish()
}

pub fn check_k_catalan_series(order: usize) -> CheckResult {
    let mut c = Check::new(
        "k-catalan-series",
        Suite::Series,
        None,
        &[("order", order as u64)],
    );
    for k in [2, 3, 5] {
        let s = solve_k_catalan_series(k, order);
        for i in 0..=order {
            c.eq(
                || format!("k={k} i={i}"),
                s.coeff(i),
                k_catalan(i as u64, k).to_bigint(),
            );
        }
    }
    c.finish()
}

pub fn check_f_equation(order: usize) -> CheckResult {
    let mut c = Check::new(
        "f-functional-equation",
        Suite::Series,
        None,
        &[("order", order as u64)],
    );
    for k in [2, 3, 5] {
        let f = build_f(k, order);
        c.case(f_equation_holds(k, &f), || Failure {
            inputs: format!("k={k}"),
            left: "F(1 - x^(k-1) F^(k-1))".into(),
            right: "1 + xF".into(),
        });
    }
    c.finish()
}

/// `G^m` expanded in powers of `C_3` against the `m`-th power of `G`.
pub fn check_g_power_expansion(order: usize, m_max: u64) -> CheckResult {
    let mut c = Check::new(
        "g-power-expansion",
        Suite::Series,
        None,
        &[("m_max", m_max), ("order", order as u64)],
    );
    let g = build_g(order);
    for m in 1..=m_max {
        let expanded = g_power_expansion(m, order);
        let power = g.pow(m);
        for i in 0..=order {
            c.eq(
                || format!("m={m} [x^{i}]"),
                expanded.coeff(i),
                power.coeff(i),
            );
        }
    }
    c.finish()
}

// ---------------------------------------------------------------------------
// counts

/// Generator cardinalities against closed forms, with duplicate detection,
/// per-tree invariants and text round trips.
pub fn check_generator_counts(n_max: u64, cap: SizeCap) -> Result<CheckResult, SizeError> {
    cap.check(n_max)?;
    let mut c = Check::new(
        "generator-counts",
        Suite::Counts,
        Some(9),
        &[("n_max", n_max)],
    );
    for n in 0..=n_max {
        let mut seen = HashSet::new();
        let mut dup = None;
        for b in enumerate_binary(n, cap)? {
            let text = b.to_string();
            c.eq(
                || format!("n={n} parse({text})"),
                show(&text.parse::<BinaryTree>()),
                text.clone(),
            );
            if !seen.insert(text.clone()) && dup.is_none() {
                dup = Some(text);
            }
        }
        c.eq(
            || format!("binary n={n}"),
            Count::from(seen.len() as u64),
            k_catalan(n, 2),
        );
        c.case(dup.is_none(), || Failure {
            inputs: format!("binary n={n}"),
            left: dup.clone().unwrap_or_default(),
            right: "no duplicates".into(),
        });
        for p in 0..=n / 2 {
            let mut seen = HashSet::new();
            let mut dup = None;
            for t in enumerate_colored_ternary(n, p, cap)? {
                let text = t.to_string();
                c.eq(
                    || format!("n={n} p={p} internal_count({text})"),
                    t.internal_count(),
                    p,
                );
                c.eq(
                    || format!("n={n} p={p} color_sum({text})"),
                    t.color_sum(),
                    n - 2 * p,
                );
                c.eq(
                    || format!("n={n} parse({text})"),
                    show(&text.parse::<ColoredTernaryTree>()),
                    text.clone(),
                );
                if !seen.insert(text.clone()) && dup.is_none() {
                    dup = Some(text);
                }
            }
            c.eq(
                || format!("colored-ternary n={n} p={p}"),
                Count::from(seen.len() as u64),
                colored_ternary_count(n, p),
            );
            c.case(dup.is_none(), || Failure {
                inputs: format!("colored-ternary n={n} p={p}"),
                left: dup.clone().unwrap_or_default(),
                right: "no duplicates".into(),
            });
        }
    }
    Ok(c.finish())
}

/// The colored ternary counts over all `p` add up to the Catalan number.
pub fn check_colored_count_sum(n_max: u64) -> CheckResult {
    let mut c = Check::new(
        "colored-count-sum",
        Suite::Counts,
        None,
        &[("n_max", n_max)],
    );
    for n in 0..=n_max {
        let total: Count = (0..=n / 2).map(|p| colored_ternary_count(n, p)).sum();
        c.eq(|| format!("n={n}"), total, k_catalan(n, 2));
    }
    c.finish()
}

// Acceptance defaults.
pub const IDENTITY_N_MAX: u64 = 60;
pub const IDENTITY_M_MAX: u64 = 8;
pub const SERIES_EQ31_N_MAX: u64 = 40;
pub const SERIES_M_MAX: u64 = 6;
pub const SERIES_ORDER: usize = 64;
pub const LAGRANGE_P_MAX: usize = 32;
pub const BIJECTION_N_MAX: u64 = 8;
pub const FOREST_N_MAX: u64 = 6;
pub const FOREST_M_MAX: u64 = 4;
pub const COUNTS_N_MAX: u64 = 10;

/// Runs every check of `suite` in a fixed order.
pub fn run(suite: Suite, bounds: &Bounds) -> Result<VerificationReport, SizeError> {
    let started = Instant::now();
    let mut checks = Vec::new();
    if suite.includes(Suite::Identities) {
        let n = bounds.n(IDENTITY_N_MAX);
        let m = bounds.m(IDENTITY_M_MAX);
        checks.push(check_eq1(n));
        checks.push(check_eq2(n, m));
        checks.push(check_eq31(n, m));
        checks.push(check_eq32(n));
        checks.push(check_eq2_specializes(n));
    }
    if suite.includes(Suite::Bijection) {
        checks.push(check_bijection(bounds.n(BIJECTION_N_MAX), bounds.cap)?);
        checks.push(check_forest_bijection(
            bounds.n(FOREST_N_MAX),
            bounds.m(FOREST_M_MAX),
            bounds.cap,
        )?);
    }
    if suite.includes(Suite::Series) {
        let order = bounds.order(SERIES_ORDER);
        checks.push(check_eq31_series(
            bounds.n(SERIES_EQ31_N_MAX),
            bounds.m(SERIES_M_MAX),
        ));
        checks.push(check_g_equals_catalan(order));
        checks.push(check_lagrange(
            bounds.order(LAGRANGE_P_MAX),
            bounds.m(SERIES_M_MAX),
        ));
        checks.push(check_k_catalan_series(order));
        checks.push(check_f_equation(bounds.order(LAGRANGE_P_MAX)));
        checks.push(check_g_power_expansion(
            bounds.order(LAGRANGE_P_MAX),
            bounds.m(SERIES_M_MAX),
        ));
    }
    if suite.includes(Suite::Counts) {
        checks.push(check_generator_counts(bounds.n(COUNTS_N_MAX), bounds.cap)?);
        checks.push(check_colored_count_sum(bounds.n(IDENTITY_N_MAX)));
    }
    let cases = checks.iter().map(|c| c.cases).sum();
    let failures = checks.iter().map(|c| c.failures).sum();
    Ok(VerificationReport {
        suite,
        pass: failures == 0,
        cases,
        failures,
        checks,
        elapsed: started.elapsed(),
        elapsed_ms: None,
    })
}

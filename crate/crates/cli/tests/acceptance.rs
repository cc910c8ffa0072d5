//! Acceptance run: one PASS/FAIL line per criterion, each checked against
//! independent oracles at its stated bounds and time budget.

use std::collections::HashSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use fuss_forest::series::{build_f, build_g, lagrange_power_coefficients, solve_k_catalan_series};
use fuss_forest::trees::{
    enumerate_binary, enumerate_colored_ternary, enumerate_colored_ternary_all, enumerate_forests,
    PlaneTree,
};
use fuss_forest::{
    colored_ternary_count, forest_catalan, identity_side, k_catalan, phi, phi_forest, phi_inverse,
    phi_inverse_forest, BinaryTree, ColoredTernaryTree, Forest, IdentityId, Side, SizeCap,
};
use num_bigint::{BigInt, BigUint};

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Catalan numbers by the convolution recurrence.
fn catalan_table(n_max: usize) -> Vec<BigUint> {
    let mut c = vec![BigUint::from(1u8)];
    for n in 0..n_max {
        let next = (0..=n).map(|i| &c[i] * &c[n - i]).sum();
        c.push(next);
    }
    c
}

/// Coefficients of the m-th power of a sequence's generating function.
fn convolution_power(base: &[BigUint], m: u64) -> Vec<BigUint> {
    let mut acc = vec![BigUint::from(0u8); base.len()];
    acc[0] = BigUint::from(1u8);
    for _ in 0..m {
        let mut next = vec![BigUint::from(0u8); base.len()];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in base.iter().enumerate().take(base.len() - i) {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    acc
}

/// Pascal's triangle as a binomial oracle, zero outside `0..=n`.
struct Pascal(Vec<Vec<BigInt>>);

impl Pascal {
    fn new(rows: usize) -> Self {
        let mut t: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
        for n in 1..=rows {
            let prev = &t[n - 1];
            let row = (0..=n)
                .map(|k| {
                    let a = if k > 0 {
                        prev[k - 1].clone()
                    } else {
                        BigInt::from(0)
                    };
                    let b = if k < n {
                        prev[k].clone()
                    } else {
                        BigInt::from(0)
                    };
                    a + b
                })
                .collect();
            t.push(row);
        }
        Pascal(t)
    }

    fn c(&self, n: i64, k: i64) -> BigInt {
        if n < 0 || k < 0 || k > n {
            BigInt::from(0)
        } else {
            self.0[n as usize][k as usize].clone()
        }
    }
}

fn side(id: IdentityId, s: Side, n: u64, m: u64) -> Result<BigInt, String> {
    identity_side(id, s, n, m)
        .map(|c| c.to_bigint())
        .map_err(|e| e.to_string())
}

fn criterion_1() -> Outcome {
    let cat = catalan_table(60);
    for n in 0..=60u64 {
        let lhs = side(IdentityId::Eq1, Side::Lhs, n, 1)?;
        let rhs = side(IdentityId::Eq1, Side::Rhs, n, 1)?;
        let kc = k_catalan(n, 2).to_bigint();
        let oracle = BigInt::from(cat[n as usize].clone());
        ensure(lhs == kc && rhs == kc && kc == oracle, || {
            format!("n={n}: lhs {lhs} rhs {rhs} catalan {oracle}")
        })?;
    }
    Ok("n <= 60".into())
}

fn criterion_2() -> Outcome {
    let cat = catalan_table(60);
    for m in 1..=8u64 {
        let oracle = convolution_power(&cat, m);
        for n in 0..=60u64 {
            let lhs = side(IdentityId::Eq2, Side::Lhs, n, m)?;
            let rhs = side(IdentityId::Eq2, Side::Rhs, n, m)?;
            let o = BigInt::from(oracle[n as usize].clone());
            ensure(lhs == rhs && rhs == o, || {
                format!("n={n} m={m}: lhs {lhs} rhs {rhs} convolution {o}")
            })?;
        }
    }
    let anchor = side(IdentityId::Eq2, Side::Lhs, 2, 2)?;
    ensure(anchor == BigInt::from(5), || {
        format!("anchor n=2 m=2 gave {anchor}")
    })?;
    Ok("n <= 60, m <= 8; anchor 5 = 5".into())
}

fn criterion_3() -> Outcome {
    let pascal = Pascal::new(200);
    for m in 1..=8i64 {
        for n in 0..=60i64 {
            let lhs = side(IdentityId::Eq31, Side::Lhs, n as u64, m as u64)?;
            let rhs = side(IdentityId::Eq31, Side::Rhs, n as u64, m as u64)?;
            // direct termwise evaluation of both sides
            let l: BigInt = (0..=n / 4)
                .map(|p| {
                    let fc = BigInt::from(m) * pascal.c(5 * p + m, p) / BigInt::from(5 * p + m);
                    fc * pascal.c(m + n + p - 1, n - 4 * p)
                })
                .sum();
            let s: BigInt = (0..=n / 2)
                .map(|p| {
                    let t = pascal.c(m + n + p - 1, p) * pascal.c(m + 2 * n - 2 * p - 1, n - 2 * p);
                    if p % 2 == 0 {
                        t
                    } else {
                        -t
                    }
                })
                .sum();
            let r = BigInt::from(m) * s / BigInt::from(m + n);
            ensure(lhs == rhs && lhs == l && rhs == r, || {
                format!("n={n} m={m}: lhs {lhs} rhs {rhs} oracle {l} {r}")
            })?;
        }
    }
    let f = build_f(5, 40);
    for m in 1..=6u64 {
        let fm = f.pow(m);
        for n in 0..=40u64 {
            let lhs = side(IdentityId::Eq31, Side::Lhs, n, m)?;
            let rhs = side(IdentityId::Eq31, Side::Rhs, n, m)?;
            let coeff = fm.coeff(n as usize);
            ensure(coeff == lhs && coeff == rhs, || {
                format!("n={n} m={m}: series {coeff} lhs {lhs} rhs {rhs}")
            })?;
        }
    }
    Ok("n <= 60, m <= 8; series three-way n <= 40, m <= 6".into())
}

fn criterion_4() -> Outcome {
    let pascal = Pascal::new(200);
    for n in 0..=60i64 {
        let lhs = side(IdentityId::Eq32, Side::Lhs, n as u64, 1)?;
        let rhs = side(IdentityId::Eq32, Side::Rhs, n as u64, 1)?;
        let s: BigInt = (0..=n / 2)
            .map(|p| {
                let t = pascal.c(n + p, n) * pascal.c(2 * n - 2 * p, n);
                if p % 2 == 0 {
                    t
                } else {
                    -t
                }
            })
            .sum();
        let l: BigInt = (0..=n / 4)
            .map(|p| pascal.c(5 * p, p) / BigInt::from(4 * p + 1) * pascal.c(n + p, 5 * p))
            .sum();
        let r = s / BigInt::from(n + 1);
        ensure(lhs == rhs && lhs == l && rhs == r, || {
            format!("n={n}: lhs {lhs} rhs {rhs} oracle {l} {r}")
        })?;
    }
    let anchor = side(IdentityId::Eq32, Side::Rhs, 4, 1)?;
    ensure(anchor == BigInt::from(2), || {
        format!("anchor n=4 gave {anchor}")
    })?;
    Ok("n <= 60; anchor 2 = 14-15+3".into())
}

fn criterion_5() -> Outcome {
    let cat = catalan_table(8);
    let cap = SizeCap::default();
    for n in 0..=8u64 {
        let mut image = HashSet::new();
        for t in enumerate_colored_ternary_all(n, cap).map_err(|e| e.to_string())? {
            let b = phi(&t).map_err(|e| format!("phi({t}): {e}"))?;
            ensure(b.internal_count() == n, || {
                format!("phi({t}) = {b} has the wrong size")
            })?;
            let back = phi_inverse(&b).map_err(|e| format!("phi_inverse({b}): {e}"))?;
            ensure(back == t, || format!("phi_inverse(phi({t})) = {back}"))?;
            ensure(image.insert(b.clone()), || {
                format!("phi is not injective at {b}")
            })?;
        }
        let all: HashSet<BinaryTree> = enumerate_binary(n, cap)
            .map_err(|e| e.to_string())?
            .collect();
        ensure(
            BigUint::from(image.len()) == cat[n as usize] && image == all,
            || format!("n={n}: image has {} trees", image.len()),
        )?;
        for b in &all {
            let t = phi_inverse(b).map_err(|e| format!("phi_inverse({b}): {e}"))?;
            let again = phi(&t).map_err(|e| e.to_string())?;
            ensure(&again == b, || format!("phi(phi_inverse({b})) = {again}"))?;
        }
    }
    Ok("n <= 8; 1430 trees at n=8".into())
}

fn criterion_6() -> Outcome {
    let cap = SizeCap::default();
    let cat = catalan_table(6);
    for m in 1..=4u64 {
        let binary_oracle = convolution_power(&cat, m);
        for n in 0..=6u64 {
            let ternary: Vec<Forest<ColoredTernaryTree>> = enumerate_forests(n, m as usize, cap)
                .map_err(|e| e.to_string())?
                .collect();
            let binary: HashSet<Forest<BinaryTree>> = enumerate_forests(n, m as usize, cap)
                .map_err(|e| e.to_string())?
                .collect();
            let expected_t: BigUint = (0..=n / 2)
                .map(|p| {
                    forest_catalan(p, 3, m).into_biguint()
                        * fuss_forest::binomial(m + n + p - 1, (n - 2 * p) as i64).into_biguint()
                })
                .sum();
            ensure(BigUint::from(ternary.len()) == expected_t, || {
                format!("n={n} m={m}: {} ternary forests", ternary.len())
            })?;
            let expected_b = forest_catalan(n, 2, m).into_biguint();
            ensure(
                BigUint::from(binary.len()) == expected_b
                    && expected_b == binary_oracle[n as usize],
                || format!("n={n} m={m}: {} binary forests", binary.len()),
            )?;
            let mut image = HashSet::new();
            for f in &ternary {
                let g = phi_forest(f).map_err(|e| e.to_string())?;
                let back = phi_inverse_forest(&g).map_err(|e| e.to_string())?;
                ensure(&back == f, || format!("forest round trip failed:\n{f}"))?;
                ensure(image.insert(g), || {
                    format!("forest map not injective at\n{f}")
                })?;
            }
            ensure(image == binary, || {
                format!("n={n} m={m}: image differs from the binary forests")
            })?;
        }
    }
    Ok("n <= 6, m <= 4".into())
}

fn criterion_7() -> Outcome {
    let cat = catalan_table(64);
    let g = build_g(64);
    let c2 = solve_k_catalan_series(2, 64);
    for (i, c) in cat.iter().enumerate() {
        let o = BigInt::from(c.clone());
        ensure(g.coeff(i) == c2.coeff(i) && g.coeff(i) == o, || {
            format!("[x^{i}]: G {} C2 {}", g.coeff(i), c2.coeff(i))
        })?;
    }
    let head: Vec<BigInt> = (0..5).map(|i| g.coeff(i)).collect();
    let expected: Vec<BigInt> = [1, 1, 2, 5, 14].into_iter().map(BigInt::from).collect();
    ensure(head == expected, || {
        format!("leading coefficients {head:?}")
    })?;
    Ok("order 64; head 1,1,2,5,14".into())
}

fn criterion_8() -> Outcome {
    let pascal = Pascal::new(200);
    for k in [2i64, 3, 5] {
        for m in 1..=6i64 {
            let coeffs = lagrange_power_coefficients(k as u64, m as u64, 32);
            ensure(coeffs.len() == 33, || {
                format!("k={k} m={m}: {} coefficients", coeffs.len())
            })?;
            for (p, v) in coeffs.iter().enumerate() {
                let p = p as i64;
                let fc = forest_catalan(p as u64, k as u64, m as u64).to_bigint();
                let o = BigInt::from(m) * pascal.c(k * p + m, p) / BigInt::from(k * p + m);
                ensure(*v == fc && fc == o, || {
                    format!("k={k} m={m} p={p}: series {v} formula {fc}")
                })?;
            }
        }
    }
    Ok("k in {2,3,5}, m <= 6, p <= 32".into())
}

fn criterion_9() -> Outcome {
    let cap = SizeCap::default();
    let cat = catalan_table(10);
    for n in 0..=10u64 {
        let mut seen = HashSet::new();
        let mut count = 0u64;
        for t in enumerate_binary(n, cap).map_err(|e| e.to_string())? {
            ensure(seen.insert(t.to_string()), || {
                format!("duplicate binary tree {t}")
            })?;
            count += 1;
        }
        ensure(
            BigUint::from(count) == k_catalan(n, 2).into_biguint()
                && BigUint::from(count) == cat[n as usize],
            || format!("n={n}: {count} binary trees"),
        )?;
        for p in 0..=n / 2 {
            let mut seen = HashSet::new();
            let mut count = 0u64;
            for t in enumerate_colored_ternary(n, p, cap).map_err(|e| e.to_string())? {
                ensure(t.weight() == n && t.internal_count() == p, || {
                    format!("{t} has the wrong size")
                })?;
                ensure(seen.insert(t.to_string()), || {
                    format!("duplicate ternary tree {t}")
                })?;
                count += 1;
            }
            ensure(
                BigUint::from(count) == colored_ternary_count(n, p).into_biguint(),
                || format!("n={n} p={p}: {count} colored ternary trees"),
            )?;
        }
    }
    Ok("n <= 10".into())
}

fn criterion_10() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_fuss-forest"))
            .args(["verify", "--suite", "all"])
            .env_remove("FUSS_FOREST_MAX_N")
            .output()
            .map_err(|e| e.to_string())
    };
    let first = run()?;
    let second = run()?;
    ensure(first.status.success(), || {
        format!(
            "exit status {}: {}",
            first.status,
            String::from_utf8_lossy(&first.stderr)
        )
    })?;
    ensure(second.status.success(), || {
        format!("second run exit status {}", second.status)
    })?;
    ensure(first.stdout == second.stdout, || {
        "reports differ between runs".into()
    })?;
    let text = String::from_utf8_lossy(&first.stdout);
    for c in 1..=9 {
        ensure(text.contains(&format!("[PASS] #{c} ")), || {
            format!("report lacks a passing check for criterion {c}")
        })?;
    }
    Ok(format!(
        "{} report bytes identical across runs",
        first.stdout.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(u8, Criterion, Duration); 10] = [
        (1, criterion_1, Duration::from_secs(1)),
        (2, criterion_2, Duration::from_secs(2)),
        (3, criterion_3, Duration::from_secs(10)),
        (4, criterion_4, Duration::from_secs(1)),
        (5, criterion_5, Duration::from_secs(60)),
        (6, criterion_6, Duration::from_secs(60)),
        (7, criterion_7, Duration::from_secs(1)),
        (8, criterion_8, Duration::from_secs(5)),
        (9, criterion_9, Duration::from_secs(120)),
        (10, criterion_10, Duration::from_secs(300)),
    ];
    let mut failed = 0;
    for (id, f, budget) in criteria {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > budget => {
                Err(format!("{msg}, but took {elapsed:.2?} (budget {budget:?})"))
            }
            other => other,
        };
        match outcome {
            Ok(msg) => println!("criterion {id:>2}: PASS ({msg}; {elapsed:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("criterion {id:>2}: FAIL ({msg}; {elapsed:.2?})");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 10 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 10 criteria fail");
        ExitCode::FAILURE
    }
}
